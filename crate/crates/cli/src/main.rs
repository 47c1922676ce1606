use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use k3_cli::{
    cmd_build_geometry, cmd_classify, cmd_enumerate, cmd_involution, cmd_model, cmd_orbits, cmd_table, render_model, CliError,
    Degree5Mode, PipelineConfig,
};
use k3_core::models::DEFAULT_MAX_D;

#[derive(Parser)]
#[command(name = "k3models", version, about = "Double plane models of the supersingular K3 surface with Artin invariant 1 in characteristic 5")]
struct Cli {
    /// Directory for cached tables and results.
    #[arg(long, env = "K3MODELS_CACHE", default_value = "k3cache", global = true)]
    cache_dir: PathBuf,
    /// Worker threads for model construction.
    #[arg(long, env = "K3MODELS_THREADS", default_value_t = 1, global = true)]
    threads: usize,
    /// Suppress progress messages.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify lines, Gram matrix, Frobenius action and group.
    BuildGeometry,
    /// Enumerate the vectors of square 2 and degree D.
    Enumerate {
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        count_only: bool,
        /// Allow the disk-backed degree-5 run.
        #[arg(long)]
        acknowledge_cost: bool,
    },
    /// Decompose the degree-D shell into orbits.
    Orbits {
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        acknowledge_cost: bool,
    },
    /// Orbits, models and equivalence classes up to the given degree.
    Classify {
        #[arg(long, default_value_t = 4)]
        max_degree: i64,
        #[arg(long)]
        acknowledge_cost: bool,
        /// Largest d(h) for which a model is attempted.
        #[arg(long, default_value_t = DEFAULT_MAX_D)]
        max_d: u32,
    },
    /// Build the double plane model of one polarization.
    Model {
        /// 22 integers, space or comma separated.
        #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true)]
        h: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_D)]
        max_d: u32,
    },
    /// Render the class table produced by `classify`.
    Table,
    /// Construct the non-projective involution of the Fermat model.
    Involution,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = PipelineConfig::new(&cli.cache_dir);
    cfg.threads = cli.threads.max(1);
    cfg.verbose = !cli.quiet;
    match cli.command {
        Command::BuildGeometry => {
            let s = cmd_build_geometry(&cfg)?;
            println!("lines: {}\ndet: {}\ngroup order: {}", s.lines, s.det, s.group_order);
        }
        Command::Enumerate { degree, count_only, acknowledge_cost } => {
            cfg.acknowledge_cost = acknowledge_cost;
            println!("|V_{degree}| = {}", cmd_enumerate(&cfg, degree, count_only)?);
        }
        Command::Orbits { degree, acknowledge_cost } => {
            cfg.acknowledge_cost = acknowledge_cost;
            let recs = cmd_orbits(&cfg, degree)?;
            for (i, o) in recs.iter().enumerate() {
                let rt = o.rt.as_ref().map_or("-".to_string(), |t| t.to_string());
                println!("{i}\tsize {}\tstabilizer {}\tpolarization {}\tRT {rt}\tpartner {}", o.size, o.stabilizer, o.polarization, o.partner);
            }
            println!("{} orbits, {} polarizations", recs.len(), recs.iter().filter(|o| o.polarization).count());
        }
        Command::Classify { max_degree, acknowledge_cost, max_d } => {
            cfg.max_degree = max_degree;
            cfg.acknowledge_cost = acknowledge_cost;
            cfg.max_d = max_d;
            if max_degree >= 5 {
                cfg.degree5 = Degree5Mode::Full;
                if !acknowledge_cost {
                    return Err(CliError::Guard("classification at degree 5 needs --acknowledge-cost".into()));
                }
            }
            let c = cmd_classify(&cfg)?;
            for (d, recs) in &c.orbits {
                println!("degree {d}: {} orbits, {} polarizations", recs.len(), recs.iter().filter(|o| o.polarization).count());
            }
            println!("{} classes", c.classes.len());
        }
        Command::Model { h, max_d } => {
            cfg.max_d = max_d;
            let v: Vec<i64> = h
                .iter()
                .flat_map(|s| s.split_whitespace())
                .map(|t| t.parse().map_err(|_| CliError::Other(format!("bad integer {t:?}"))))
                .collect::<Result<_, _>>()?;
            print!("{}", render_model(&cmd_model(&cfg, &v)?));
        }
        Command::Table => print!("{}", cmd_table(&cfg)?),
        Command::Involution => {
            let g = cmd_involution(&cfg)?;
            println!("G² = I, G isometric, ⟨h_F·G, h_F⟩ = 4, G outside Aut(X, h_F)");
            for r in g {
                println!("{}", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("k3models: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
