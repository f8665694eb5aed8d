use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use homcob::catalog::catalog;
use homcob::cli::{csv_lines, reproduce, run, JobSpec, Op, SCHEMA};
use homcob::toricgenus::DEFAULT_SEED;
use homcob::Error;

#[derive(Parser)]
#[command(name = "homcob", version, about = "Cobordism invariants of homogeneous spaces G/H from root data")]
struct Cli {
    /// Emit the JSON document.
    #[arg(long, global = true, conflicts_with_all = ["csv", "plain"])]
    json: bool,
    /// Emit a CSV table.
    #[arg(long, global = true, conflicts_with = "plain")]
    csv: bool,
    /// Emit plain text (default).
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Catalog listing and per-space fixed-point tables.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Cobordism class, characteristic numbers and Hirzebruch genera.
    #[command(subcommand)]
    Genus(GenusCmd),
    /// The rigidity functional for a series f.
    #[command(subcommand)]
    Rigidity(RigidityCmd),
    /// SU-structures.
    #[command(subcommand)]
    Su(SuCmd),
    /// Twisted products over H/K -> G/K -> G/H.
    #[command(subcommand)]
    Fibration(FibrationCmd),
    /// Quaternionic projective bases.
    #[command(subcommand)]
    Hp(HpCmd),
    /// Run the acceptance table.
    Reproduce {
        /// A topic (classes, chi-y, rigidity, fibrations, structures, quaternionic, properties) or row ids "1,5".
        #[arg(long)]
        section: Option<String>,
    },
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Catalog name or JSON space file.
    #[arg(long)]
    space: Option<String>,
    /// standard, su, a preset name or a sign string.
    #[arg(long)]
    structure: Option<String>,
    /// Partition as exponents, e.g. "1,0,0,0,1,0".
    #[arg(long)]
    omega: Option<String>,
    /// Rigidity series, e.g. "u/(1+u^2)".
    #[arg(long)]
    series: Option<String>,
    /// Ordering vector, e.g. "4,3,2,1".
    #[arg(long)]
    ordering: Option<String>,
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// auto, symbolic, divdiff or eval.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Subcommand)]
enum SpaceCmd {
    List,
    Info(Common),
}

#[derive(Subcommand)]
enum GenusCmd {
    Class(Common),
    S(Common),
    ChiY(Common),
    Signature(Common),
    Todd(Common),
}

#[derive(Subcommand)]
enum RigidityCmd {
    Eval {
        #[command(flatten)]
        common: Common,
        /// Point u, e.g. "3,2,1,0".
        #[arg(long)]
        point: String,
    },
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    Independence {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        structure2: String,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum SuCmd {
    Find(Common),
}

#[derive(Subcommand)]
enum FibrationCmd {
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        group: String,
        /// H, the subgroup of the base G/H.
        #[arg(long)]
        base_subgroup: String,
        /// K, the subgroup of the total space G/K.
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        base_structure: Option<String>,
    },
}

#[derive(Subcommand)]
enum HpCmd {
    Restricted {
        /// sp-flag or cp-odd.
        #[arg(long, default_value = "sp-flag")]
        which: String,
        #[arg(long, default_value_t = 3)]
        max_index: usize,
    },
    Obstruction {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

enum Format {
    Plain,
    Json,
    Csv,
}

fn job(op: Op, c: Common) -> JobSpec {
    JobSpec {
        space: c.space,
        structure: c.structure,
        omega: c.omega,
        series: c.series,
        ordering: c.ordering,
        cutoff: c.cutoff,
        seed: c.seed,
        method: c.method,
        ..JobSpec::new(op)
    }
}

fn exit_for(e: &Error) -> ExitCode {
    eprintln!("homcob: {e}");
    match e {
        Error::Math(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("HOMCOB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let fmt = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Plain
    };
    let spec = match cli.cmd {
        Cmd::Space(SpaceCmd::List) => {
            let entries = catalog();
            match fmt {
                Format::Json => {
                    let v = json!({"schema": SCHEMA, "result": entries.iter().map(|e| e.to_json()).collect::<Vec<_>>()});
                    println!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
                }
                Format::Csv => {
                    let mut rows = vec![vec!["name".to_string(), "group".into(), "subgroup".into(), "presets".into()]];
                    for e in &entries {
                        let p: Vec<&str> = e.presets.iter().map(|p| p.name.as_str()).collect();
                        rows.push(vec![e.name.clone(), e.group.clone(), e.subgroup.clone(), p.join(" ")]);
                    }
                    print!("{}", csv_lines(&rows));
                }
                Format::Plain => {
                    for e in &entries {
                        let tail = e.obstruction.clone().unwrap_or_else(|| e.provenance.clone());
                        println!("{:<12} {:>6} / {:<18} {}", e.name, e.group, e.subgroup, tail);
                    }
                }
            }
            return ExitCode::SUCCESS;
        }
        Cmd::Reproduce { section } => {
            let report = match reproduce(section.as_deref()) {
                Ok(r) => r,
                Err(e) => return exit_for(&e),
            };
            match fmt {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap_or_default()),
                Format::Csv => print!("{}", report.to_csv()),
                Format::Plain => print!("{}", report.to_plain()),
            }
            return if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(3) };
        }
        Cmd::Space(SpaceCmd::Info(c)) => job(Op::Info, c),
        Cmd::Genus(g) => match g {
            GenusCmd::Class(c) => job(Op::Class, c),
            GenusCmd::S(c) => job(Op::S, c),
            GenusCmd::ChiY(c) => job(Op::ChiY, c),
            GenusCmd::Signature(c) => job(Op::Signature, c),
            GenusCmd::Todd(c) => job(Op::Todd, c),
        },
        Cmd::Rigidity(r) => match r {
            RigidityCmd::Eval { common, point } => JobSpec { point: Some(point), ..job(Op::RigidityEval, common) },
            RigidityCmd::Certify { common, samples } => JobSpec { samples, ..job(Op::RigidityCertify, common) },
            RigidityCmd::Independence { common, structure2, samples } => {
                JobSpec { structure2: Some(structure2), samples, ..job(Op::Independence, common) }
            }
        },
        Cmd::Su(SuCmd::Find(c)) => job(Op::SuFind, c),
        Cmd::Fibration(FibrationCmd::Check { common, group, base_subgroup, subgroup, base_structure }) => JobSpec {
            group: Some(group),
            base_subgroup: Some(base_subgroup),
            subgroup: Some(subgroup),
            base_structure,
            ..job(Op::FibrationCheck, common)
        },
        Cmd::Hp(HpCmd::Restricted { which, max_index }) => {
            JobSpec { which: Some(which), n: Some(max_index), ..JobSpec::new(Op::HpRestricted) }
        }
        Cmd::Hp(HpCmd::Obstruction { n }) => JobSpec { n: Some(n), ..JobSpec::new(Op::HpObstruction) },
    };
    match run(&spec) {
        Ok(doc) => {
            match fmt {
                Format::Json => println!("{}", serde_json::to_string_pretty(&doc.to_json()).unwrap_or_default()),
                Format::Csv => print!("{}", doc.to_csv()),
                Format::Plain => println!("{}", doc.outcome.plain),
            }
            ExitCode::SUCCESS
        }
        Err(e) => exit_for(&e),
    }
}
