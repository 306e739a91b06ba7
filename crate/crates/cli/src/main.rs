use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use formalab_core::analyze::analyze;
use formalab_core::catalog::{catalog, extended_catalog, load_group};
use formalab_core::criticality::boundary_scan;
use formalab_core::suites::{run_named, Label, SuiteOptions, SUITES};
use formalab_core::{Error, Formation, Group, PrimeSet, DEFAULT_SUBGROUP_CAP};

const EXIT_LOAD: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_SUITE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "formalab",
    version,
    about = "Formation-theoretic analysis of small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the group catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Chief series, hypercentre and intersections of one group.
    Analyze {
        /// Catalog name or path to a JSON group spec.
        group: String,
        #[arg(long, default_value = "nil")]
        formation: Formation,
        /// Comma-separated primes or `all`.
        #[arg(long, default_value = "all", value_parser = parse_pi)]
        pi: PrimeSet,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite over the catalog; prints one JSON report per line.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        soluble_only: bool,
        /// Include every pairwise direct product of order below 128.
        #[arg(long)]
        extended: bool,
        /// Formation for the `hypercentre` and `boundary` suites.
        #[arg(long)]
        formation: Option<Formation>,
        #[arg(long, value_parser = parse_pi)]
        pi: Option<PrimeSet>,
    },
    /// Catalog groups outside F that are F(p)-critical, as JSON.
    HuntCritical {
        #[arg(long)]
        formation: Formation,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        soluble_only: bool,
        #[arg(long)]
        extended: bool,
    },
    /// Dump the subgroup lattice as JSON hex bitsets.
    Lattice {
        group: String,
        #[arg(long, default_value_t = DEFAULT_SUBGROUP_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entries with their order and tags.
    List {
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_pi(s: &str) -> Result<PrimeSet, String> {
    PrimeSet::parse(s).ok_or_else(|| format!("bad prime set `{s}`"))
}

fn exit_code(e: &Error) -> u8 {
    if e.is_cap() {
        return EXIT_CAP;
    }
    match e {
        Error::UnknownGroup(_)
        | Error::BadSpec(_)
        | Error::Json(_)
        | Error::Io(_)
        | Error::InvalidPermutation(_)
        | Error::InvalidTable(_)
        | Error::NotAutomorphism(_)
        | Error::NotActionHomomorphism
        | Error::RelationMismatch
        | Error::BadFormation(_)
        | Error::ConstructionFailed(_) => EXIT_LOAD,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Catalog {
            action: CatalogAction::List { extended, json },
        } => {
            let cat = if extended {
                extended_catalog()
            } else {
                catalog()
            };
            if json {
                println!("{}", serde_json::to_string_pretty(cat.entries())?);
            } else {
                for e in cat.entries() {
                    let t = e.tags;
                    let kind = if t.nilpotent {
                        "nilpotent"
                    } else if t.soluble {
                        "soluble"
                    } else {
                        "insoluble"
                    };
                    println!("{:<14} {:>4}  {kind}", e.name, t.order);
                }
            }
            Ok(0)
        }
        Command::Analyze {
            group,
            formation,
            pi,
            json,
        } => {
            let g = load_group(&group)?;
            let a = analyze(&g, &formation, &pi)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&a)?);
            } else {
                print!("{}", a.render_text());
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            max_order,
            soluble_only,
            extended,
            formation,
            pi,
        } => {
            let opts = SuiteOptions {
                max_order,
                soluble_only,
                extended,
            };
            let reports = run_named(&suite, formation.as_ref(), pi.as_ref(), &opts)?;
            let mut failed = false;
            for r in &reports {
                println!("{}", serde_json::to_string(r)?);
                if !r.passed {
                    let what = match r.label {
                        Label::Certified => "FAILED",
                        Label::Exploratory => "failed (exploratory)",
                    };
                    eprintln!("{}: {what} on {} group(s)", r.suite, r.failures.len());
                    failed |= r.label == Label::Certified;
                }
            }
            Ok(if failed { EXIT_SUITE } else { 0 })
        }
        Command::HuntCritical {
            formation,
            p,
            soluble_only,
            extended,
        } => {
            if !formalab_core::primes::is_prime(p) {
                return Err(Error::PreconditionViolated(format!("{p} is not prime")));
            }
            let cat = if extended {
                extended_catalog()
            } else {
                catalog()
            };
            let groups: Vec<&Group> = cat.groups().iter().collect();
            let soluble = |g: &Group| g.is_soluble();
            let universe: Option<&(dyn Fn(&Group) -> bool + Sync)> =
                if soluble_only { Some(&soluble) } else { None };
            let witnesses = boundary_scan(&formation, &PrimeSet::single(p), &groups, universe)?;
            println!("{}", serde_json::to_string_pretty(&witnesses)?);
            Ok(0)
        }
        Command::Lattice { group, cap } => {
            let g = load_group(&group)?;
            let lat = g.lattice_with_cap(cap)?;
            let subgroups: Vec<String> = lat.subgroups().iter().map(|s| s.to_hex()).collect();
            let out = json!({ "group": g.name(), "order": g.order(), "subgroups": subgroups });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
