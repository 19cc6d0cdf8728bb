//! Command-line interface.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ecluster::ar_space::QuiverSpec;
use ecluster::cluster_sets::{Chart, ClusterDescription};
use ecluster::cpi_bridge::{self, ClusterOracleNR};
use ecluster::infinity_gon::{self, ArcSetDescription};
use ecluster::ordered_line::Ladder;
use ecluster::polygon_an::{self, Triangulation};
use serde_json::Value;

use crate::error::WbError;
use crate::ops::{self, Config, Explorable};
use crate::server::{self, AppState};
use crate::session::Store;

#[derive(Parser, Debug)]
#[command(name = "ecluster", version, about = "Explore E-clusters of interval modules over the real line")]
pub struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// `default` for the ladder on [0,1], or a JSON file {"lower":..,"upper":..}.
    #[arg(long, global = true, default_value = "default")]
    pub ladder: String,
    /// Sampling window `a,b` for verification.
    #[arg(long, global = true)]
    pub window: Option<String>,
    /// Number of candidate intervals drawn by verification.
    #[arg(long, global = true, default_value_t = 2000)]
    pub budget: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compatibility and exchange triangle of two intervals.
    Compat {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Build and query symbolic clusters.
    #[command(subcommand)]
    Cluster(ClusterCommand),
    /// Mutate a cluster at one element.
    Mutate {
        #[arg(long)]
        cluster: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Triangulations of the (n+3)-gon.
    Polygon(PolygonArgs),
    /// Arc sets of the infinity-gon.
    #[command(subcommand)]
    Infgon(InfgonCommand),
    /// Objects of the continuous cluster category C_pi.
    #[command(subcommand)]
    Cpi(CpiCommand),
    /// AR-space coordinates and derived classification.
    #[command(subcommand)]
    Arspace(ArspaceCommand),
    /// Serve sessions over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "sessions")]
        data_dir: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ClusterCommand {
    Build {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: Option<i64>,
    },
    Verify {
        #[arg(long)]
        cluster: PathBuf,
    },
    Member {
        #[arg(long)]
        cluster: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    Witness {
        #[arg(long)]
        cluster: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Args, Debug)]
pub struct PolygonArgs {
    #[arg(long)]
    pub n: i64,
    /// Comma separated diagonals such as `1-3,1-4`; the fan at 1 by default.
    #[arg(long)]
    pub triangulation: Option<String>,
    #[arg(long)]
    pub flip: Option<String>,
    #[arg(long)]
    pub enumerate: bool,
    #[arg(long)]
    pub embed: bool,
}

#[derive(Subcommand, Debug)]
pub enum InfgonCommand {
    Report {
        #[arg(long)]
        arcs: PathBuf,
    },
    Embed {
        #[arg(long)]
        arcs: PathBuf,
    },
    Mutate {
        #[arg(long)]
        arcs: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CpiCommand {
    Embed {
        #[arg(long)]
        oracle: PathBuf,
    },
    Compat {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    Fmap {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    Mutate {
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ChartArg {
    Real,
    Angle,
}

#[derive(Subcommand, Debug)]
pub enum ArspaceCommand {
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        interval: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long, value_enum, default_value_t = ChartArg::Real)]
        chart: ChartArg,
    },
    Classify {
        #[arg(long)]
        quiver: PathBuf,
    },
    Svg {
        #[arg(long)]
        cluster: PathBuf,
    },
}

/// What a command produced.
pub enum Output {
    Json(Value),
    Text(String),
    Served,
}

fn config(cli: &Cli) -> Result<Config, WbError> {
    let ladder = if cli.ladder == "default" { Ladder::default() } else { ops::read_json(cli.ladder.as_ref())? };
    let window = match &cli.window {
        Some(w) => ops::parse_window(w)?,
        None => Config::default().window,
    };
    Ok(Config { seed: cli.seed, budget: cli.budget, window, ladder })
}

fn cluster(path: &PathBuf) -> Result<ClusterDescription, WbError> {
    ops::read_json(path)
}

pub fn run(cli: &Cli) -> Result<Output, WbError> {
    let cfg = config(cli)?;
    let json = |v: Value| Ok(Output::Json(v));
    match &cli.command {
        Command::Compat { a, b } => json(ops::compat(&ops::parse_interval(a)?, &ops::parse_interval(b)?)?),
        Command::Cluster(c) => match c {
            ClusterCommand::Build { name, n } => json(ops::envelope(&ops::build_cluster(name, *n, &cfg.ladder)?)?),
            ClusterCommand::Verify { cluster: p } => json(ops::verify(&cluster(p)?, &cfg)?),
            ClusterCommand::Member { cluster: p, at } => json(ops::member(&cluster(p)?, &ops::parse_interval(at)?)?),
            ClusterCommand::Witness { cluster: p, at } => json(ops::witness(&cluster(p)?, &ops::parse_interval(at)?)?),
        },
        Command::Mutate { cluster: p, at } => json(ops::mutate_cluster(&cluster(p)?, at, &cfg.ladder)?),
        Command::Polygon(args) => polygon(args, &cfg),
        Command::Infgon(c) => {
            let (InfgonCommand::Report { arcs } | InfgonCommand::Embed { arcs } | InfgonCommand::Mutate { arcs, .. }) = c;
            let set: ArcSetDescription = ops::read_json(arcs)?;
            set.validate()?;
            match c {
                InfgonCommand::Report { .. } => json(ops::infgon_report(&set, &cfg.ladder)?),
                InfgonCommand::Embed { .. } => json(ops::envelope(&infinity_gon::embed_arc_set(&cfg.ladder, &set)?)?),
                InfgonCommand::Mutate { at, .. } => {
                    let (next, view) = Explorable::Infgon { arcs: set }.mutate(at, &cfg.ladder)?;
                    json(ops::mutation_document(&next, &view)?)
                }
            }
        }
        Command::Cpi(c) => match c {
            CpiCommand::Embed { oracle } => {
                let o: ClusterOracleNR = ops::read_json(oracle)?;
                json(ops::envelope(&cpi_bridge::build_ter(&o)?)?)
            }
            CpiCommand::Compat { u, v } => json(ops::cpi_compat(&ops::parse_cpi(u)?, &ops::parse_cpi(v)?)?),
            CpiCommand::Fmap { u } => json(ops::cpi_fmap(&ops::parse_cpi(u)?)?),
            CpiCommand::Mutate { oracle, at } => {
                let o: ClusterOracleNR = ops::read_json(oracle)?;
                o.validate()?;
                json(ops::cpi_mutate(&o, &ops::parse_cpi(at)?)?)
            }
        },
        Command::Arspace(c) => match c {
            ArspaceCommand::Gamma { interval, shift, chart } => {
                let chart = match chart {
                    ChartArg::Real => Chart::Real,
                    ChartArg::Angle => Chart::Angle,
                };
                json(ops::arspace_gamma(&ops::parse_interval(interval)?, *shift, chart)?)
            }
            ArspaceCommand::Classify { quiver } => {
                let q: QuiverSpec = ops::read_json(quiver)?;
                json(ops::arspace_classify(&q)?)
            }
            ArspaceCommand::Svg { cluster: p } => Ok(Output::Text(ops::strip_svg(&cluster(p)?, None))),
        },
        Command::Serve { port, data_dir } => {
            let state = Arc::new(AppState { store: Store::open(data_dir)?, ladder: cfg.ladder.clone() });
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(server::serve(state, *port))?;
            Ok(Output::Served)
        }
    }
}

fn polygon(args: &PolygonArgs, cfg: &Config) -> Result<Output, WbError> {
    if args.enumerate {
        return Ok(Output::Json(ops::polygon_enumerate(args.n)?));
    }
    let t = match &args.triangulation {
        Some(text) => Triangulation::parse(args.n, text)?,
        None => Triangulation::fan(args.n)?,
    };
    if let Some(d) = &args.flip {
        let (next, view) = Explorable::Polygon { triangulation: t }.mutate(d, &cfg.ladder)?;
        return Ok(Output::Json(ops::mutation_document(&next, &view)?));
    }
    if args.embed {
        return Ok(Output::Json(ops::envelope(&polygon_an::embed_triangulation(&cfg.ladder, &t))?));
    }
    Ok(Output::Json(ops::polygon_state(&t)?))
}
