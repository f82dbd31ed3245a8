use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use spg_cli::commands::{
    self, cmd_campaign, cmd_check, cmd_export_dot, cmd_generate, cmd_normalize, CampaignFile,
};
use spg_core::search::{CampaignConfig, FamilySpace, GenParams, InstanceSource};
use spg_core::Budgets;

/// Exact solver and conjecture-hunting campaigns for n-person shortest-path
/// games on digraphs.
#[derive(Parser)]
#[command(name = "spg", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one check on one game document
    Check {
        /// Game document (JSON)
        #[arg(long)]
        game: PathBuf,
        /// validate | normalize | ne | une | bisp | equiv | gallai | bidirected
        #[arg(long)]
        check: String,
        /// all-min | lex
        #[arg(long, default_value = "all-min")]
        tie_mode: String,
        /// Largest profile or strategy space the brute-force paths may enumerate
        #[arg(long, default_value_t = 1 << 20)]
        budget_profiles: u64,
        /// Largest number of simple paths an enumeration may produce
        #[arg(long, default_value_t = 1_000_000)]
        budget_paths: usize,
    },
    /// Run a seeded campaign and write its record stream
    Campaign {
        /// JSON campaign config; flags below are ignored when set
        #[arg(long)]
        config: Option<PathBuf>,
        /// bisp_strong | bisp_weak | ne_bisp_equiv | ns_nperson | ns_bidirected | ne_free_une_free
        #[arg(long)]
        check: Option<String>,
        #[arg(long, default_value_t = 2)]
        players: usize,
        /// Inclusive total vertex range, e.g. 3..7
        #[arg(long, default_value = "3..7")]
        vertices: String,
        /// Inclusive out-degree range, e.g. 1..3
        #[arg(long, default_value = "1..3")]
        out_degree: String,
        /// Inclusive integer cost range, e.g. 1..9
        #[arg(long, default_value = "1..9")]
        costs: String,
        #[arg(long)]
        bidirected: bool,
        #[arg(long)]
        bipartite: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Enumerate the exhaustive family instead of sampling
        #[arg(long)]
        exhaustive: bool,
        /// Family: number of non-terminal vertices
        #[arg(long, default_value_t = 2)]
        family_vertices: usize,
        /// Family: maximum out-degree
        #[arg(long, default_value_t = 2)]
        family_degree: usize,
        /// Family: comma-separated positive cost set
        #[arg(long, default_value = "1,2")]
        family_costs: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value = "campaign-out")]
        out_dir: PathBuf,
        /// all-min | lex
        #[arg(long, default_value = "all-min")]
        tie_mode: String,
        #[arg(long, default_value_t = 1 << 20)]
        budget_profiles: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget_paths: usize,
    },
    /// Generate one random game document
    Generate {
        #[arg(long, default_value_t = 2)]
        players: usize,
        #[arg(long, default_value = "3..7")]
        vertices: String,
        #[arg(long, default_value = "1..3")]
        out_degree: String,
        #[arg(long, default_value = "1..9")]
        costs: String,
        #[arg(long)]
        bidirected: bool,
        #[arg(long)]
        bipartite: bool,
        #[arg(long)]
        seed: u64,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a game document as Graphviz DOT
    ExportDot {
        #[arg(long)]
        game: PathBuf,
    },
    /// Normalize a game document and emit the repaired document
    Normalize {
        #[arg(long)]
        game: PathBuf,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn gen_params(
    players: usize,
    vertices: &str,
    out_degree: &str,
    costs: &str,
    bidirected: bool,
    bipartite: bool,
    seed: u64,
) -> Result<GenParams> {
    let vertices = commands::parse_range(vertices)?;
    let out_degree = commands::parse_range(out_degree)?;
    let costs = commands::parse_range(costs)?;
    Ok(GenParams {
        n: players,
        vertices: (vertices.0 as usize, vertices.1 as usize),
        out_degree: (out_degree.0 as usize, out_degree.1 as usize),
        costs: (costs.0 as i64, costs.1 as i64),
        bidirected,
        bipartite,
        seed,
    })
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { game, check, tie_mode, budget_profiles, budget_paths } => {
            let tie_mode = commands::parse_tie_mode(&tie_mode)?;
            let budgets = Budgets { profiles: budget_profiles as u128, paths: budget_paths };
            cmd_check(&game, &check, tie_mode, budgets)
        }
        Command::Campaign {
            config,
            check,
            players,
            vertices,
            out_degree,
            costs,
            bidirected,
            bipartite,
            seed,
            count,
            exhaustive,
            family_vertices,
            family_degree,
            family_costs,
            workers,
            out_dir,
            tie_mode,
            budget_profiles,
            budget_paths,
        } => {
            if let Some(path) = config {
                let file = CampaignFile::load(&path)?;
                let (config, file_out_dir) = file.to_config(workers)?;
                return cmd_campaign(&config, &file_out_dir.unwrap_or(out_dir));
            }
            let check = match check {
                Some(c) => commands::parse_check_kind(&c)?,
                None => anyhow::bail!("--check (or --config) is required"),
            };
            let source = if exhaustive {
                let costs: Vec<i64> = family_costs
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| anyhow::anyhow!("bad --family-costs: {e}"))?;
                InstanceSource::Exhaustive {
                    space: FamilySpace {
                        non_terminal: family_vertices,
                        max_out_degree: family_degree,
                        costs,
                        n: players,
                    },
                }
            } else {
                InstanceSource::Random {
                    params: gen_params(players, &vertices, &out_degree, &costs, bidirected, bipartite, seed)?,
                    count,
                }
            };
            let config = CampaignConfig {
                check,
                source,
                workers,
                budgets: Budgets { profiles: budget_profiles as u128, paths: budget_paths },
                tie_mode: commands::parse_tie_mode(&tie_mode)?,
            };
            cmd_campaign(&config, &out_dir)
        }
        Command::Generate { players, vertices, out_degree, costs, bidirected, bipartite, seed, out } => {
            let params = gen_params(players, &vertices, &out_degree, &costs, bidirected, bipartite, seed)?;
            cmd_generate(&params, out.as_deref())
        }
        Command::ExportDot { game } => cmd_export_dot(&game),
        Command::Normalize { game, out } => cmd_normalize(&game, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
