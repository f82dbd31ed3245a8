//! Command implementations behind the binary's subcommands. Each returns the
//! process exit code: 0 when the check passes or holds, 2 when a violation
//! or counterexample was found, and errors bubble up as exit 1.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use serde_json::json;

use spg_core::bisp::{bisp_check, ne_bisp_equivalence, BiSPVerdict, TieMode};
use spg_core::game::{
    effective_cost, enumerate_ne, is_une, play, profile_space_size, NeMode, Play, SPGame,
    StrategyProfile, ProfileIter,
};
use spg_core::graph::{is_bidirected, Path as GamePath};
use spg_core::potential::{apply_potentials, check_condition_i, check_condition_ii, gallai_potential};
use spg_core::search::{
    run_campaign, CampaignConfig, CheckKind, FamilySpace, GenParams, InstanceSource,
};
use spg_core::{Budgets, Error};

use crate::document::GameDocument;
use crate::dot::export_dot;
use crate::records::{build_records, counterexample_file_name, to_lines};

pub fn parse_tie_mode(text: &str) -> Result<TieMode> {
    match text {
        "all-min" | "all_min" => Ok(TieMode::AllMin),
        "lex" | "lex-unique" | "lex_unique" => Ok(TieMode::LexUnique),
        other => bail!("unknown tie mode {other:?} (expected all-min or lex)"),
    }
}

pub fn parse_check_kind(text: &str) -> Result<CheckKind> {
    match text.replace('-', "_").as_str() {
        "bisp_strong" => Ok(CheckKind::BispStrong),
        "bisp_weak" => Ok(CheckKind::BispWeak),
        "ne_bisp_equiv" | "equiv" => Ok(CheckKind::NeBispEquiv),
        "ns_nperson" => Ok(CheckKind::NsNPerson),
        "ns_bidirected" => Ok(CheckKind::NsBidirected),
        "ne_free_une_free" => Ok(CheckKind::NeFreeUneFree),
        other => bail!("unknown campaign check {other:?}"),
    }
}

/// Inclusive "a..b" range, or a single number for "a..a".
pub fn parse_range(text: &str) -> Result<(u64, u64)> {
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), text.trim()),
    };
    let lo: u64 = a.parse().with_context(|| format!("bad range {text:?}"))?;
    let hi: u64 = b.parse().with_context(|| format!("bad range {text:?}"))?;
    Ok((lo, hi))
}

fn load_game_doc(path: &Path) -> Result<GameDocument> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read game file {}", path.display()))?;
    GameDocument::parse(&text)
}

fn fmt_profile(game: &SPGame, profile: &StrategyProfile) -> String {
    let parts: Vec<String> = game
        .graph()
        .non_terminal_vertices()
        .map(|v| format!("v{}->e{}", v.0, profile.choice(v).expect("covered").0))
        .collect();
    parts.join(" ")
}

fn fmt_play(game: &SPGame, profile: &StrategyProfile) -> String {
    let s = game.graph().s();
    let p = play(game, profile, s);
    let steps: Vec<String> = p.steps().iter().map(|e| format!("e{}", e.0)).collect();
    let costs: Vec<String> =
        effective_cost(game, &p).iter().map(|c| c.to_string()).collect();
    match p {
        Play::Terminal { .. } => format!("terminal [{}] costs ({})", steps.join(","), costs.join(",")),
        Play::Cyclic { cycle_start, .. } => format!(
            "cyclic [{}] (cycle from step {cycle_start}) costs ({})",
            steps.join(","),
            costs.join(",")
        ),
    }
}

fn fmt_path(path: &GamePath) -> String {
    let ids: Vec<String> = path.edges.iter().map(|e| format!("e{}", e.0)).collect();
    format!("[{}]", ids.join(","))
}

fn profile_json(game: &SPGame, profile: &StrategyProfile) -> serde_json::Value {
    json!(game
        .graph()
        .vertices()
        .map(|v| profile.choice(v).map(|e| e.0))
        .collect::<Vec<_>>())
}

pub fn cmd_check(game_path: &Path, check: &str, tie_mode: TieMode, budgets: Budgets) -> Result<i32> {
    let doc = load_game_doc(game_path)?;
    match check {
        "validate" => {
            let game = doc.to_game()?;
            let violations = game.validate();
            if violations.is_empty() {
                println!("valid: {} players, {} vertices, {} edges",
                    game.player_count(),
                    game.graph().vertex_count(),
                    game.graph().edge_count());
                Ok(0)
            } else {
                for v in &violations {
                    println!("violation: {v}");
                }
                let witness = json!({
                    "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                });
                println!("witness: {witness}");
                Ok(2)
            }
        }
        "normalize" => {
            let parts = doc.to_parts()?;
            match SPGame::normalized_from_parts(parts.graph, parts.n, parts.owner, parts.costs) {
                Ok((game, report)) => {
                    if report.is_trivial() {
                        println!("already normalized");
                    } else {
                        println!(
                            "repaired: merged {}, removed {}, deleted {} edges",
                            report.merged_vertices.len(),
                            report.removed_vertices.len(),
                            report.deleted_edges.len()
                        );
                    }
                    println!(
                        "result: {} vertices, {} edges",
                        game.graph().vertex_count(),
                        game.graph().edge_count()
                    );
                    Ok(0)
                }
                Err(Error::NoPath) => {
                    println!("unrepairable: no route from the source to the terminal");
                    println!("witness: {}", json!({ "unrepairable": "no_terminal_route" }));
                    Ok(2)
                }
                Err(e) => Err(anyhow!("{e}")),
            }
        }
        "ne" => {
            let game = doc.to_game()?;
            let s = game.graph().s();
            let found = enumerate_ne(&game, s, NeMode::First, budgets.profiles)
                .map_err(|e| anyhow!("{e}"))?;
            match found.first() {
                Some(profile) => {
                    println!("NE found: {}", fmt_profile(&game, profile));
                    println!("play: {}", fmt_play(&game, profile));
                    Ok(0)
                }
                None => {
                    println!("NE-free from the source position");
                    println!("witness: {}", json!({ "ne_free": true }));
                    Ok(2)
                }
            }
        }
        "une" => {
            let game = doc.to_game()?;
            let required = profile_space_size(&game);
            if required > budgets.profiles {
                bail!("{}", Error::BudgetExceeded { budget: budgets.profiles, required });
            }
            match ProfileIter::new(&game).find(|p| is_une(&game, p)) {
                Some(profile) => {
                    println!("uniform NE found: {}", fmt_profile(&game, &profile));
                    Ok(0)
                }
                None => {
                    println!("no uniform NE");
                    println!("witness: {}", json!({ "une_free": true }));
                    Ok(2)
                }
            }
        }
        "bisp" => {
            let game = doc.to_game()?;
            match bisp_check(&game, tie_mode, &budgets).map_err(|e| anyhow!("{e}"))? {
                BiSPVerdict::StrongIntersect { witness } => {
                    println!("strong intersection, witness {}", fmt_path(&witness));
                    Ok(0)
                }
                BiSPVerdict::WeakOnly => {
                    println!("weak only: the sets share nothing but the symbolic path");
                    println!("witness: {}", json!({ "verdict": "weak_only" }));
                    Ok(2)
                }
                BiSPVerdict::Empty => {
                    println!("empty: the sets share nothing, even counting the symbolic path");
                    println!("witness: {}", json!({ "verdict": "empty" }));
                    Ok(2)
                }
            }
        }
        "equiv" => {
            let game = doc.to_game()?;
            let report = ne_bisp_equivalence(&game, &budgets).map_err(|e| anyhow!("{e}"))?;
            if report.consistent() {
                println!(
                    "consistent: {} terminal NE, {} cyclic NE, verdict {}",
                    report.terminal_ne.len(),
                    report.cyclic_ne.len(),
                    match &report.verdict {
                        BiSPVerdict::StrongIntersect { .. } => "strong_intersect",
                        BiSPVerdict::WeakOnly => "weak_only",
                        BiSPVerdict::Empty => "empty",
                    }
                );
                Ok(0)
            } else {
                let detail = json!({
                    "verdict": match &report.verdict {
                        BiSPVerdict::StrongIntersect { witness } =>
                            json!({ "strong_intersect": witness.edges.iter().map(|e| e.0).collect::<Vec<_>>() }),
                        BiSPVerdict::WeakOnly => json!("weak_only"),
                        BiSPVerdict::Empty => json!("empty"),
                    },
                    "terminal_ne": report.terminal_ne.iter().map(|(p, path)| json!({
                        "profile": profile_json(&game, p),
                        "play": path.edges.iter().map(|e| e.0).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "cyclic_ne": report.cyclic_ne.iter().map(|p| profile_json(&game, p)).collect::<Vec<_>>(),
                    "missing_memberships": report.missing_memberships.iter().map(|(p, path)| json!({
                        "profile": profile_json(&game, p),
                        "play": path.edges.iter().map(|e| e.0).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                });
                println!("disagreement: {}", serde_json::to_string_pretty(&detail)?);
                println!("witness: {detail}");
                Ok(2)
            }
        }
        "gallai" => {
            let game = doc.to_game()?;
            for player in game.players() {
                let (ok, witness) = check_condition_ii(&game, player);
                if !ok {
                    let cycle = witness.expect("failing check carries a witness");
                    println!(
                        "{player}: cycle {} has non-positive total cost",
                        fmt_path(&cycle)
                    );
                    let witness = json!({
                        "player": player.number(),
                        "cycle": cycle.edges.iter().map(|e| e.0).collect::<Vec<_>>(),
                    });
                    println!("witness: {witness}");
                    return Ok(2);
                }
            }
            let potentials: Vec<_> = game
                .players()
                .map(|p| gallai_potential(&game, p))
                .collect::<spg_core::Result<_>>()
                .map_err(|e| anyhow!("{e}"))?;
            let transformed = apply_potentials(&game, &potentials).map_err(|e| anyhow!("{e}"))?;
            let (ok, _) = check_condition_i(&transformed);
            for p in &potentials {
                let xs: Vec<String> = p.x.iter().map(|x| x.to_string()).collect();
                println!("{}: x = [{}]", p.player, xs.join(", "));
            }
            if ok {
                println!("transformed costs are strictly positive");
                Ok(0)
            } else {
                bail!("potential failed to restore positivity");
            }
        }
        "bidirected" => {
            let game = doc.to_game()?;
            if is_bidirected(game.graph()) {
                println!("bidirected");
                Ok(0)
            } else {
                let missing: Vec<[usize; 2]> = game
                    .graph()
                    .edges()
                    .filter(|(_, e)| {
                        e.tail != game.graph().t()
                            && e.head != game.graph().t()
                            && !game
                                .graph()
                                .edges()
                                .any(|(_, r)| r.tail == e.head && r.head == e.tail)
                    })
                    .map(|(_, e)| [e.tail.0, e.head.0])
                    .collect();
                println!("not bidirected");
                println!("witness: {}", json!({ "missing_reverses": missing }));
                Ok(2)
            }
        }
        other => bail!("unknown check {other:?} (expected validate, normalize, ne, une, bisp, equiv, gallai or bidirected)"),
    }
}

/// Campaign configuration file, the flag-free way to run `spg campaign`.
#[derive(Debug, Deserialize)]
pub struct CampaignFile {
    pub check: String,
    pub source: SourceFile,
    #[serde(default)]
    pub tie_mode: Option<String>,
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub budget_profiles: Option<u64>,
    #[serde(default)]
    pub budget_paths: Option<usize>,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceFile {
    Random {
        n: usize,
        vertices: [usize; 2],
        out_degree: [usize; 2],
        costs: [i64; 2],
        #[serde(default)]
        bidirected: bool,
        #[serde(default)]
        bipartite: bool,
        seed: u64,
        count: u64,
    },
    Exhaustive {
        non_terminal: usize,
        max_out_degree: usize,
        costs: Vec<i64>,
        n: usize,
    },
}

impl CampaignFile {
    pub fn load(path: &Path) -> Result<CampaignFile> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        serde_json::from_str(&text).context("campaign config is not valid JSON")
    }

    pub fn to_config(&self, default_workers: usize) -> Result<(CampaignConfig, Option<PathBuf>)> {
        let check = parse_check_kind(&self.check)?;
        let tie_mode = match &self.tie_mode {
            Some(t) => parse_tie_mode(t)?,
            None => TieMode::AllMin,
        };
        let mut budgets = Budgets::default();
        if let Some(p) = self.budget_profiles {
            budgets.profiles = p as u128;
        }
        if let Some(p) = self.budget_paths {
            budgets.paths = p;
        }
        let source = match &self.source {
            SourceFile::Random { n, vertices, out_degree, costs, bidirected, bipartite, seed, count } => {
                InstanceSource::Random {
                    params: GenParams {
                        n: *n,
                        vertices: (vertices[0], vertices[1]),
                        out_degree: (out_degree[0], out_degree[1]),
                        costs: (costs[0], costs[1]),
                        bidirected: *bidirected,
                        bipartite: *bipartite,
                        seed: *seed,
                    },
                    count: *count,
                }
            }
            SourceFile::Exhaustive { non_terminal, max_out_degree, costs, n } => {
                InstanceSource::Exhaustive {
                    space: FamilySpace {
                        non_terminal: *non_terminal,
                        max_out_degree: *max_out_degree,
                        costs: costs.clone(),
                        n: *n,
                    },
                }
            }
        };
        let config = CampaignConfig {
            check,
            source,
            workers: self.workers.unwrap_or(default_workers),
            budgets,
            tie_mode,
        };
        Ok((config, self.out_dir.clone()))
    }
}

pub fn cmd_campaign(config: &CampaignConfig, out_dir: &Path) -> Result<i32> {
    let report = run_campaign(config).map_err(|e| anyhow!("{e}"))?;
    let code = write_campaign_outputs(&report, out_dir)?;
    println!(
        "check {} over {} instances in {:.2?}",
        report.check.name(),
        report.instances_run,
        report.elapsed
    );
    for (label, count) in &report.tallies {
        println!("  {label}: {count}");
    }
    println!(
        "records: {} ({} counterexample files)",
        out_dir.join("records.jsonl").display(),
        report.counterexamples.len()
    );
    Ok(code)
}

/// Writes the record stream plus one game document per counterexample.
/// Returns the campaign exit code: 2 when any counterexample artifact was
/// produced, 0 otherwise.
pub fn write_campaign_outputs(
    report: &spg_core::search::CampaignReport,
    out_dir: &Path,
) -> Result<i32> {
    fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create output directory {}", out_dir.display()))?;
    for ce in &report.counterexamples {
        let path = out_dir.join(counterexample_file_name(ce.index));
        fs::write(&path, GameDocument::from_game(&ce.game).to_json())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let records = build_records(report);
    let stream_path = out_dir.join("records.jsonl");
    fs::write(&stream_path, to_lines(&records))
        .with_context(|| format!("cannot write {}", stream_path.display()))?;
    Ok(if report.counterexamples.is_empty() { 0 } else { 2 })
}

pub fn cmd_generate(params: &GenParams, out: Option<&Path>) -> Result<i32> {
    let game = spg_core::search::gen_random_game(params).map_err(|e| anyhow!("{e}"))?;
    let text = GameDocument::from_game(&game).to_json();
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(0)
}

pub fn cmd_export_dot(game_path: &Path) -> Result<i32> {
    let doc = load_game_doc(game_path)?;
    let game = doc.to_game()?;
    print!("{}", export_dot(&game));
    Ok(0)
}

pub fn cmd_normalize(game_path: &Path, out: Option<&Path>) -> Result<i32> {
    let doc = load_game_doc(game_path)?;
    let parts = doc.to_parts()?;
    match SPGame::normalized_from_parts(parts.graph, parts.n, parts.owner, parts.costs) {
        Ok((game, report)) => {
            eprintln!(
                "merged {:?}, removed {:?}, deleted edges {:?}",
                report.merged_vertices, report.removed_vertices, report.deleted_edges
            );
            let text = GameDocument::from_game(&game).to_json();
            match out {
                Some(path) => fs::write(path, text)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Err(Error::NoPath) => {
            eprintln!("unrepairable: no route from the source to the terminal");
            Ok(2)
        }
        Err(e) => Err(anyhow!("{e}")),
    }
}
