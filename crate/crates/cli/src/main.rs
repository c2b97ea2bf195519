use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ucpoly::ehrhart::DEFAULT_BUDGET;
use ucpoly::{Budget, Error};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "ucpoly", version, about = "Unconditional reflexive polytopes from perfect graphs")]
struct Cli {
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    /// Search-node cap for each lattice-point count
    #[arg(long, global = true, env = "UCPOLY_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Allow long-running inputs (tables at n = 4, census at n = 7)
    #[arg(long, global = true)]
    stretch: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Perfectness, reflexivity, h* and volume data for a graph file
    AnalyzeGraph { file: PathBuf },
    /// Volumes and h* of the signed Birkhoff family (1 Pos, 2 BB, 3 C+, 4 C)
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Unlabeled graphs on n vertices and how many are perfect
    Census {
        #[arg(long)]
        n: usize,
        /// Also compute h* for every perfect class
        #[arg(long)]
        hstar: bool,
        /// Append-only record file reused across runs
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Perfect graphs maximizing the volume product with their complement
    Santalo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Quadratic Gröbner basis of a chain polytope or its signed lift
    Groebner {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_enum, default_value_t = commands::BasisFamily::Chain)]
        family: commands::BasisFamily,
        /// Add the bracket rendering of every binomial
        #[arg(long)]
        pretty: bool,
        /// Check S-pairs and the Hilbert function up to degree 3
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = ucpoly::groebner::DEFAULT_STEP_CAP)]
        step_cap: u64,
    },
    /// Maximal stable sets and maximal cliques of a perfect CIS graph
    Gale {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Lexicographic pulling triangulation of the stable-set polytope, lifted by signs
    Triangulate {
        #[arg(long)]
        graph: PathBuf,
        /// Keep the triangulation of the nonnegative piece
        #[arg(long)]
        base: bool,
        #[arg(long)]
        emit_heights: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::InvalidArgument(_) | Error::CyclicRelation => 2,
        Error::SizeLimit(_) | Error::StepCapExceeded(_) => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = commands::Context { budget: Budget::new(cli.budget), format: cli.format, stretch: cli.stretch };
    let result = match cli.command {
        Command::AnalyzeGraph { file } => commands::analyze_graph(&ctx, &file),
        Command::Tables { which, n_max } => commands::tables(&ctx, which, n_max),
        Command::Census { n, hstar, cache } => commands::census(&ctx, n, hstar, cache),
        Command::Santalo { n, cache } => commands::santalo(&ctx, n, cache),
        Command::Groebner { poset, family, pretty, verify, step_cap } => {
            commands::groebner(&ctx, &poset, family, pretty, verify, step_cap)
        }
        Command::Gale { graph } => commands::gale(&graph),
        Command::Triangulate { graph, base, emit_heights } => commands::triangulate(&graph, base, emit_heights),
    };
    match result.and_then(|r| r.render(ctx.format).map(|text| (text, r))) {
        Ok((text, report)) => {
            println!("{text}");
            if !report.verified {
                eprintln!("verification failed");
                ExitCode::from(4)
            } else if report.incomplete {
                eprintln!("size limit exceeded; skipped sections are marked in the report");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
