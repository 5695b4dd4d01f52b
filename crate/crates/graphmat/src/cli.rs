//! The `graphmat` command line.
//!
//! Exit codes: 0 when the command succeeds and every checked property
//! holds, 1 on a violated property or a refused reconstruction, 2 on usage
//! or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use graphmat_core::cofactor;
use graphmat_core::construct::{cofactor_packing, Family};
use graphmat_core::count::{self, CountMatroid, CountParams};
use graphmat_core::matroid::vertical_connectivity;
use graphmat_core::reconstruct::{reconstruct, FamilyOracle, FamilyTag, StarSearch};
use graphmat_core::MultiGraph;
use serde_json::json;

use crate::error::{Error, Result};
use crate::io;
use crate::suites::{self, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "graphmat", version, about = "Count and cofactor matroids of graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Predicate {
    Sparse,
    Rigid,
    Tight,
    Redundant,
    Mconnected,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank with a certificate: count matroid with --k/--l (scaled by --t
    /// if given), or the t-fold cofactor matroid with --t alone.
    Rank {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        l: Option<i64>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        input: PathBuf,
        /// Comma separated edge ids; all edges when absent.
        #[arg(long)]
        edges: Option<String>,
    },
    /// Test a count-matroid property of the whole graph.
    Check {
        #[arg(long, value_enum)]
        predicate: Predicate,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        #[arg(long)]
        input: PathBuf,
    },
    /// Components of the count matroid.
    Components {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        #[arg(long)]
        input: PathBuf,
    },
    /// Vertical connectivity with a witnessing separation.
    Vconn {
        #[arg(long)]
        input: PathBuf,
        /// graphic, bicircular, rigidity, count:K,L or cofactor:T
        #[arg(long)]
        family: String,
    },
    /// Build a named graph family.
    Construct {
        /// complete, cycle, path, wheel, parallel_pair, lovasz_yemini,
        /// cofactor_packing or disjoint_union
        #[arg(long)]
        family: String,
        /// Comma separated integers, e.g. "2,3".
        #[arg(long, default_value = "")]
        params: String,
        /// Graph files for disjoint_union.
        #[arg(long, num_args = 2, value_delimiter = ',')]
        inputs: Vec<PathBuf>,
        /// Write DOT instead of JSON.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover a graph from a labelled matroid file.
    Reconstruct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest star considered.
        #[arg(long)]
        d_max: Option<usize>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present_any = ["all", "list"])]
        suite: Option<String>,
        #[arg(long)]
        all: bool,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, alias = "n")]
        max_n: Option<usize>,
        /// Run the deliberately broken variant of each suite.
        #[arg(long)]
        mutant: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Parses arguments and runs the command, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn params(k: usize, l: i64) -> Result<CountParams> {
    Ok(CountParams::new(k, l)?)
}

fn load_graph(path: &Path) -> Result<MultiGraph> {
    io::read_graph(&io::read_file(path)?).map_err(|e| match e {
        Error::Format { location, msg } => Error::format(format!("{}: {location}", path.display()), msg),
        Error::Json { line, column, msg } => Error::Json {
            line,
            column,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    })
}

/// `graphic`, `bicircular`, `rigidity`, `count:K,L` or `cofactor:T`.
pub fn parse_family(s: &str) -> Result<FamilyTag> {
    let bad = || Error::Usage(format!("unknown family {s:?}; use graphic, bicircular, rigidity, count:K,L or cofactor:T"));
    let tag = match s {
        "graphic" => FamilyTag::Count(params(1, 1)?),
        "bicircular" => FamilyTag::Count(params(1, 0)?),
        "rigidity" => FamilyTag::Count(params(2, 3)?),
        _ => match s.split_once(':') {
            Some(("count", kl)) => {
                let (k, l) = kl.split_once(',').ok_or_else(bad)?;
                let k = k.trim().parse().map_err(|_| bad())?;
                let l = l.trim().parse().map_err(|_| bad())?;
                FamilyTag::Count(params(k, l)?)
            }
            Some(("cofactor", t)) => FamilyTag::Cofactor {
                t: t.trim().parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        },
    };
    Ok(tag)
}

fn int_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::Usage(format!("--params: {x:?} is not a nonnegative integer"))))
        .collect()
}

fn build_family(name: &str, params: &[usize], inputs: &[PathBuf]) -> Result<MultiGraph> {
    let want = |n: usize| -> Result<()> {
        if params.len() != n {
            return Err(Error::Usage(format!("family {name} takes {n} parameter(s), got {}", params.len())));
        }
        Ok(())
    };
    let family = match name {
        "complete" | "cycle" | "path" | "wheel" | "parallel_pair" => {
            want(1)?;
            let n = params[0];
            match name {
                "complete" => Family::Complete(n),
                "cycle" => Family::Cycle(n),
                "path" => Family::Path(n),
                "wheel" => Family::Wheel(n),
                _ => Family::ParallelPair(n),
            }
        }
        "lovasz_yemini" => {
            want(2)?;
            Family::LovaszYemini { k: params[0], l: params[1] }
        }
        "cofactor_packing" => {
            want(2)?;
            Family::CofactorPacking { n: params[0], t: params[1] }
        }
        "disjoint_union" => {
            want(0)?;
            if inputs.len() != 2 {
                return Err(Error::Usage("disjoint_union needs --inputs A,B".into()));
            }
            let a = load_graph(&inputs[0])?;
            let b = load_graph(&inputs[1])?;
            Family::DisjointUnion(Box::new(a), Box::new(b))
        }
        _ => return Err(Error::Usage(format!("unknown family {name:?}"))),
    };
    Ok(family.build()?)
}

fn emit(out: &mut dyn Write, target: Option<&PathBuf>, text: &str) -> Result<()> {
    match target {
        Some(path) => io::write_file(path, text),
        None => out.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn print_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    emit(out, None, &s)
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Rank { k, l, t, input, edges } => {
            let g = load_graph(&input)?;
            let set = match &edges {
                Some(list) => io::edge_list(&g, list)?,
                None => g.all_edges(),
            };
            let doc = match (k, l, t) {
                (Some(k), Some(l), t) => {
                    let p = params(k, l)?.scaled(t.unwrap_or(1));
                    let r = count::rank(&g, p, &set);
                    if set.is_empty() {
                        json!({"rank": 0, "F": [], "cover": []})
                    } else {
                        io::count_certificate_json(&g, r, &count::rank_certificate(&g, p, &set)?)
                    }
                }
                (None, None, Some(t)) => {
                    let (r, cert) = cofactor::rt(&g, &set, t)?;
                    io::cofactor_certificate_json(&g, r, &cert)
                }
                _ => return Err(Error::Usage("rank needs --k and --l, or --t alone for the cofactor matroid".into())),
            };
            print_json(out, &doc)?;
            Ok(EXIT_OK)
        }
        Command::Check { predicate, k, l, input } => {
            let g = load_graph(&input)?;
            let p = params(k, l)?;
            if g.vertex_count() < 2 {
                return Err(Error::Usage("check needs a graph with at least two vertices".into()));
            }
            let holds = match predicate {
                Predicate::Sparse => count::is_sparse(&g, p),
                Predicate::Rigid => count::is_rigid(&g, p),
                Predicate::Tight => count::is_tight(&g, p),
                Predicate::Redundant => count::is_redundant(&g, p),
                Predicate::Mconnected => count::is_m_connected(&g, p),
            };
            emit(out, None, &format!("{holds}\n"))?;
            Ok(if holds { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Components { k, l, input } => {
            let g = load_graph(&input)?;
            let comps: Vec<serde_json::Value> = count::m_components(&g, params(k, l)?)
                .iter()
                .map(|c| json!({"edges": g.edge_ids_of(&c.edges), "trivial": c.trivial}))
                .collect();
            print_json(out, &json!(comps))?;
            Ok(EXIT_OK)
        }
        Command::Vconn { input, family } => {
            let g = load_graph(&input)?;
            let oracle = match parse_family(&family)? {
                FamilyTag::Count(p) => FamilyOracle::Count(CountMatroid::new(&g, p)),
                FamilyTag::Cofactor { t } => FamilyOracle::Cofactor(cofactor::CofactorMatroid::new(&g, t)?),
            };
            let (v, sep) = vertical_connectivity(&oracle)?;
            let sep = sep.map(|s| json!({"E1": g.edge_ids_of(&s.e1), "E2": g.edge_ids_of(&s.e2), "order": s.order}));
            print_json(out, &json!({"vertical_connectivity": v, "separation": sep}))?;
            Ok(EXIT_OK)
        }
        Command::Construct { family, params, inputs, dot, out: target } => {
            let nums = int_list(&params)?;
            let g = build_family(&family, &nums, &inputs)?;
            let text = if dot { io::to_dot(&g) } else { io::write_graph(&g) };
            emit(out, target.as_ref(), &text)?;
            if family == "cofactor_packing" {
                let pack = cofactor_packing(nums[0], nums[1])?;
                for (i, part) in pack.parts.iter().enumerate() {
                    let _ = writeln!(err, "part {i}: {} edges", part.len());
                }
            }
            Ok(EXIT_OK)
        }
        Command::Reconstruct { input, out: target, d_max } => {
            let m = io::read_matroid(&io::read_file(&input)?)?;
            let mut opts = StarSearch::default();
            if let Some(d) = d_max {
                opts.d_max = d;
            }
            match reconstruct(&m, opts) {
                Ok(g) => {
                    emit(out, target.as_ref(), &io::write_graph(&g))?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    let _ = writeln!(err, "refused: {e}");
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        Command::Verify { suite, all, list, seed, samples, max_n, mutant, json } => {
            if list {
                for s in suites::SUITES {
                    emit(out, None, &format!("{:<28} {}\n", s.name, s.about))?;
                }
                return Ok(EXIT_OK);
            }
            let cfg = SuiteConfig { seed, samples, max_n, mutant };
            let reports = match (&suite, all) {
                (Some(name), false) => vec![suites::run(name, cfg)?],
                (None, true) => suites::run_all(cfg)?,
                _ => return Err(Error::Usage("give --suite NAME or --all".into())),
            };
            for r in &reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                emit(
                    out,
                    None,
                    &format!(
                        "{verdict} {}: {} cases, {} violations ({:.2}s)\n",
                        r.suite,
                        r.cases,
                        r.violation_count,
                        r.wall.as_secs_f64()
                    ),
                )?;
            }
            if let Some(path) = json {
                io::write_file(&path, &suites::reports_json(&reports))?;
            }
            Ok(if reports.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

