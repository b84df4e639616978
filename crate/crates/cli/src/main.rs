use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sphclosure::criteria::{self, Answer, CriteriaError, Verdict};
use sphclosure::io::{self, CorpusEntry, InputError, TableFormat};
use sphclosure::orbits::{self, OrbitError};
use sphclosure::quotients::{self, QuotientError};
use sphclosure::rootsys::format_root;
use sphclosure::spherical::diagram;
use sphclosure::{Divisor, SphericalSystem};

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_NOINPUT: u8 = 66;
const EX_SOFTWARE: u8 = 70;

#[derive(Parser)]
#[command(name = "sphclosure", version, about = "Orbits of projective closures of spherical orbits")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Tex,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a spherical system against the axioms.
    Validate {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Orbit table of X_delta and its normalization.
    Orbits {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        divisor: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Is the normalization of X_delta bijective? Exit 0 yes, 1 no, 2 unknown.
    Bijective {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        divisor: String,
        /// Also run the orbit computation and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Quotient by a distinguished set of colors.
    Quotient {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        colors: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List the distinguished sets of colors.
    Distinguished {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Print the spherical diagram.
    Render {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Bundled example systems.
    Corpus {
        /// Replay every golden expectation.
        #[arg(long)]
        run_all: bool,
        /// Print the named entry as JSON.
        #[arg(long)]
        show: Option<String>,
    },
}

struct Fail(u8, String);

impl From<InputError> for Fail {
    fn from(e: InputError) -> Self {
        Fail(EX_DATAERR, e.to_string())
    }
}

impl From<OrbitError> for Fail {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::Inconsistency(_) => Fail(EX_SOFTWARE, e.to_string()),
            _ => Fail(EX_DATAERR, e.to_string()),
        }
    }
}

impl From<QuotientError> for Fail {
    fn from(e: QuotientError) -> Self {
        match e {
            QuotientError::FreenessViolation(_) => Fail(EX_SOFTWARE, e.to_string()),
            _ => Fail(EX_DATAERR, e.to_string()),
        }
    }
}

impl From<CriteriaError> for Fail {
    fn from(e: CriteriaError) -> Self {
        match e {
            CriteriaError::Orbit(o) => o.into(),
            e => Fail(EX_DATAERR, e.to_string()),
        }
    }
}

/// Reads a file; a missing path that names a bundled example falls back
/// to the bundled copy.
fn load(path: &Path) -> Result<CorpusEntry, Fail> {
    match std::fs::read(path) {
        Ok(bytes) => Ok(io::parse_input(&bytes)?),
        Err(err) => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            match io::corpus_source(stem) {
                Some(src) if path.parent().is_none_or(|p| p.as_os_str().is_empty()) => {
                    Ok(io::parse_input(src.as_bytes())?)
                }
                _ => Err(Fail(EX_NOINPUT, format!("{}: {err}", path.display()))),
            }
        }
    }
}

fn divisor(entry: &CorpusEntry, name: &str) -> Result<Divisor, Fail> {
    entry.divisor(name).ok_or_else(|| {
        let known: Vec<&str> = entry.divisors.keys().map(String::as_str).collect();
        Fail(EX_DATAERR, format!("unknown divisor {name}; known: {}", known.join(", ")))
    })
}

fn color_ids(sys: &SphericalSystem, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&i| sys.colors[i].id.clone()).collect()
}

fn table_format(f: Format) -> TableFormat {
    match f {
        Format::Table => TableFormat::Table,
        Format::Json => TableFormat::Json,
        Format::Tex => TableFormat::Tex,
    }
}

fn exit_for(a: Answer) -> u8 {
    match a {
        Answer::Yes => 0,
        Answer::No => 1,
        Answer::Unknown => 2,
    }
}

fn verdict_json(v: &Verdict) -> serde_json::Value {
    json!({ "bijective": v.bijective, "witnesses": v.witnesses })
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.cmd {
        Cmd::Validate { input } => {
            let bytes = std::fs::read(&input).map_err(|e| Fail(EX_NOINPUT, format!("{}: {e}", input.display())))?;
            match io::parse_input(&bytes) {
                Ok(entry) => {
                    let sys = &entry.system;
                    println!("valid: {} spherical roots, {} colors", sys.sigma.len(), sys.colors.len());
                    println!("strict: {}", sys.is_strict());
                    println!("spherically closed: {}", sys.is_spherically_closed());
                    Ok(0)
                }
                Err(InputError::Invalid(report)) => {
                    println!("invalid:\n{report}");
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Orbits { input, divisor: name, format } => {
            let entry = load(&input)?;
            let d = divisor(&entry, &name)?;
            let table = orbits::all_orbits(&entry.system, &d)?;
            if !table.faithfulness.is_faithful() {
                eprintln!("warning: unfaithful input");
            }
            print!("{}", io::emit_orbit_table(&table, table_format(format)));
            Ok(0)
        }
        Cmd::Bijective { input, divisor: name, cross_check } => {
            let entry = load(&input)?;
            let sys = &entry.system;
            let d = divisor(&entry, &name)?;
            if cross_check {
                let report = criteria::cross_check(sys, &d)?;
                let classes: Vec<_> = report
                    .table
                    .doubling_classes()
                    .iter()
                    .map(|c| {
                        json!({
                            "minimal": c.minimal.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "sigma_z": c.sigma_z.iter().map(|r| format_root(r)).collect::<Vec<_>>(),
                            "doubling": c.doubling.iter().map(|r| format_root(r)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let answer = report.final_answer();
                let out = json!({
                    "bijective": answer,
                    "strict": report.strict,
                    "closed_form": verdict_json(&report.closed_form),
                    "orbit_computation": if report.pipeline_bijective { Answer::Yes } else { Answer::No },
                    "consistent": report.consistent,
                    "witness_classes": classes,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
                if !report.consistent {
                    return Err(Fail(EX_SOFTWARE, "closed form and orbit computation disagree".into()));
                }
                Ok(exit_for(answer))
            } else {
                let v = if sys.is_strict() {
                    criteria::strict_bijectivity(sys, &d)?
                } else {
                    criteria::nonstrict_sufficient(sys, &d)
                };
                println!("{}", serde_json::to_string_pretty(&verdict_json(&v)).unwrap());
                Ok(exit_for(v.bijective))
            }
        }
        Cmd::Quotient { input, colors, format } => {
            let entry = load(&input)?;
            let sys = &entry.system;
            let mut set = BTreeSet::new();
            for id in &colors {
                let i = sys.color_index(id).ok_or_else(|| Fail(EX_DATAERR, format!("unknown color {id}")))?;
                set.insert(i);
            }
            let dsub = quotients::is_distinguished(sys, &set)
                .ok_or_else(|| Fail(EX_DATAERR, format!("{{{}}} is not distinguished", colors.join(", "))))?;
            let q = quotients::quotient_system(sys, &dsub)?;
            let out = CorpusEntry {
                name: format!("{}/{}", entry.name, colors.join(",")),
                model: false,
                system: q.result,
                divisors: Default::default(),
                expected: vec![],
            };
            match format {
                Format::Json => print!("{}", io::serialize(&out)),
                _ => print!("{}", diagram::render(&out.system)),
            }
            Ok(0)
        }
        Cmd::Distinguished { input, format } => {
            let entry = load(&input)?;
            let sys = &entry.system;
            let all = quotients::enumerate_distinguished(sys)?;
            let named: Vec<Vec<String>> = all.iter().map(|s| color_ids(sys, s)).collect();
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&named).unwrap()),
                _ => {
                    for s in named {
                        println!("{{{}}}", s.join(", "));
                    }
                }
            }
            Ok(0)
        }
        Cmd::Render { input } => {
            let entry = load(&input)?;
            print!("{}", diagram::render(&entry.system));
            Ok(0)
        }
        Cmd::Corpus { run_all, show } => {
            if let Some(name) = show {
                let src = io::corpus_source(&name).ok_or_else(|| Fail(EX_DATAERR, format!("no bundled entry {name}")))?;
                print!("{src}");
                return Ok(0);
            }
            if !run_all {
                for n in io::corpus_names() {
                    println!("{n}");
                }
                return Ok(0);
            }
            let mut bad = 0;
            for entry in io::corpus() {
                let failures = io::replay(&entry);
                if failures.is_empty() {
                    println!("ok    {}", entry.name);
                } else {
                    bad += 1;
                    println!("FAIL  {}", entry.name);
                    for f in failures {
                        println!("      {f}");
                    }
                }
            }
            Ok(if bad == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EX_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
