//! Small hand-built games used across the test suites and the docs.

use crate::game::{Player, SPGame};
use crate::graph::{Digraph, VertexId};
use crate::rational::rat;

/// Two players on three vertices `s = v0`, `a = v1`, `t = v2`, with a return
/// edge closing a cycle:
///
/// ```text
///   e0: s -> a  costs (1,1)     e2: s -> t  costs (10,10)
///   e1: a -> t  costs (2,3)     e3: a -> s  costs (1,1)
/// ```
///
/// `s` belongs to player 1, `a` to player 2.
pub fn triangle() -> SPGame {
    let g = Digraph::new(
        3,
        VertexId(0),
        VertexId(2),
        vec![
            (VertexId(0), VertexId(1)),
            (VertexId(1), VertexId(2)),
            (VertexId(0), VertexId(2)),
            (VertexId(1), VertexId(0)),
        ],
    )
    .unwrap();
    SPGame::new(
        g,
        2,
        vec![Some(Player(0)), Some(Player(1)), None],
        vec![
            vec![rat(1), rat(2), rat(10), rat(1)],
            vec![rat(1), rat(3), rat(10), rat(1)],
        ],
    )
    .unwrap()
}

/// Two players on `s = v0`, `a = v1`, `t = v2` where player 2 can strand the
/// play: choosing `a -> s` leaves no route to the terminal.
///
/// ```text
///   e0: s -> a  costs (1,1)
///   e1: a -> s  costs (1,1)
///   e2: a -> t  costs (1,1)
/// ```
pub fn strandable() -> SPGame {
    let g = Digraph::new(
        3,
        VertexId(0),
        VertexId(2),
        vec![
            (VertexId(0), VertexId(1)),
            (VertexId(1), VertexId(0)),
            (VertexId(1), VertexId(2)),
        ],
    )
    .unwrap();
    SPGame::new(
        g,
        2,
        vec![Some(Player(0)), Some(Player(1)), None],
        vec![
            vec![rat(1), rat(1), rat(1)],
            vec![rat(1), rat(1), rat(1)],
        ],
    )
    .unwrap()
}
