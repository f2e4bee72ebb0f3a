//! The `jacobi` command line.

use std::io::{Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::diagram::{Frame, LinComb};
use crate::error::{Error, Result};
use crate::maps::{chi, chi_inverse, comb, remove_circles, rho, sigma, theta, wheel, Root};
use crate::quotient::{QuotientSpace, DEFAULT_CAP};
use crate::skeleton::{Component, EdgeKind, Skeleton};
use crate::text::{parse, parse_frame, serialize, to_json};
use crate::tqft::{pair, TQFTVector};
use crate::weights::{check_data, eval_circle, eval_closed, eval_marked, CircleRep, WeightData};

#[derive(Parser, Debug)]
#[command(name = "jacobi", version, about = "Exact computation with Jacobi diagrams")]
pub struct Cli {
    /// Highest degree for which quotient bases are built.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count diagrams, relations rank and quotient dimension.
    Dim {
        #[arg(long)]
        skeleton: String,
        #[arg(long)]
        degree: usize,
    },
    /// Normal form of the input in its quotient.
    Reduce { input: Option<String> },
    /// Decide whether two inputs are equal in the quotient.
    Eq { first: String, second: String },
    /// Apply one of the structural maps.
    Map(MapArgs),
    /// Pair two states on the same chain graph.
    Pair {
        first: String,
        second: String,
        #[arg(long)]
        n: usize,
        /// Interval matching, e.g. `2,1` glues interval 1 to interval 2 of the second input.
        #[arg(long = "match", value_delimiter = ',')]
        matching: Option<Vec<usize>>,
    },
    /// Evaluate a weight system.
    Eval {
        #[arg(long)]
        data: String,
        /// `adjoint` or a representation file, for diagrams on circles.
        #[arg(long)]
        rep: Option<String>,
        input: Option<String>,
    },
    /// Evaluate all relations up to a degree.
    Check {
        #[arg(long)]
        data: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Print a wheel, a comb or the theta graph.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
pub struct MapArgs {
    #[arg(long, value_enum)]
    pub kind: MapKind,
    /// Circle removal parameter.
    #[arg(long)]
    pub n: Option<usize>,
    /// Expected number of intervals (labels for chi and chi-inv).
    #[arg(long)]
    pub g: Option<usize>,
    /// Root for sigma: `<tree edge>:<gap>`.
    #[arg(long)]
    pub root: Option<String>,
    pub input: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Chi,
    ChiInv,
    Rho,
    Sigma,
    Iota,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct GenArgs {
    #[arg(long)]
    pub wheel: Option<usize>,
    #[arg(long)]
    pub comb: Option<usize>,
    #[arg(long)]
    pub theta: bool,
}

fn read_input(path: Option<&str>) -> Result<String> {
    match path {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Io(e.to_string()))?;
            Ok(s)
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{p}: {e}"))),
    }
}

fn load_data(spec: &str) -> Result<WeightData> {
    if Path::new(spec).is_file() {
        WeightData::parse(&std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?)
    } else {
        WeightData::preset(spec)
    }
}

fn load_rep(spec: Option<&str>, w: &WeightData) -> Result<CircleRep> {
    match spec {
        None | Some("adjoint") => CircleRep::adjoint(w),
        Some(p) => CircleRep::parse(&std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{p}: {e}")))?),
    }
}

fn emit(x: &LinComb, json: bool) -> String {
    if json {
        to_json(x) + "\n"
    } else {
        serialize(x)
    }
}

fn parse_root(s: &Skeleton, spec: &str) -> Result<Root> {
    let (name, gap) = spec
        .rsplit_once(':')
        .ok_or_else(|| Error::syntax(1, 1, format!("root `{spec}` is not `<edge>:<gap>`")))?;
    let gap = gap
        .parse()
        .map_err(|_| Error::syntax(1, name.len() + 2, format!("bad gap in `{spec}`")))?;
    let tree: Vec<usize> = (0..s.edges().len()).filter(|&e| s.edges()[e].kind == EdgeKind::Tree).collect();
    let edge = tree
        .iter()
        .position(|&e| s.edges()[e].name == name)
        .ok_or_else(|| Error::UnknownComponent(name.to_string()))?;
    Ok(Root { edge, gap })
}

fn intervals_of(x: &LinComb) -> Result<usize> {
    match x.frame().as_skeleton() {
        Some(s) if s.all_intervals() => Ok(s.components().len()),
        _ => Err(Error::Unsupported(format!("`{}` is not a union of intervals", x.frame()))),
    }
}

fn check_g(expected: Option<usize>, actual: usize) -> Result<()> {
    match expected {
        Some(g) if g != actual => Err(Error::Unsupported(format!("expected {g} intervals, found {actual}"))),
        _ => Ok(()),
    }
}

fn run_map(args: &MapArgs, cap: usize, json: bool) -> Result<String> {
    let x = parse(&read_input(args.input.as_deref())?)?;
    let y = match args.kind {
        MapKind::Chi => {
            let Frame::Marked(g) = *x.frame() else {
                return Err(Error::Unsupported("chi takes labelled graphs".into()));
            };
            check_g(args.g, g)?;
            chi(&x)?
        }
        MapKind::ChiInv => {
            let g = intervals_of(&x)?;
            check_g(args.g, g)?;
            let iv = QuotientSpace::new(x.frame().clone(), cap);
            let marked = QuotientSpace::new(Frame::Marked(g), cap);
            chi_inverse(&x, &iv, &marked)?
        }
        MapKind::Rho => {
            check_g(args.g, intervals_of(&x)?)?;
            rho(&x, None)?
        }
        MapKind::Sigma => {
            let s = x
                .frame()
                .as_skeleton()
                .ok_or_else(|| Error::Unsupported("sigma takes a tree-closed skeleton".into()))?;
            let root = match &args.root {
                Some(r) => parse_root(s, r)?,
                None => Root::default(),
            };
            if let [Component::Closed(cg)] = s.components() {
                check_g(args.g, cg.intervals.len())?;
            }
            sigma(&x, root)?
        }
        MapKind::Iota => {
            let n = args
                .n
                .ok_or_else(|| Error::Unsupported("circle removal needs --n".into()))?;
            remove_circles(&x, n)?
        }
    };
    Ok(emit(&y, json))
}

fn dim_row(skeleton: &str, degree: usize, cap: usize, json: bool) -> Result<String> {
    let frame = parse_frame(skeleton)?;
    let q = QuotientSpace::new(frame.clone(), cap);
    let b = q.basis(degree)?;
    let name = match &frame {
        Frame::Skeleton(s) => s.to_string(),
        Frame::Marked(g) => format!("marked:g={g}"),
    };
    Ok(if json {
        json!({
            "skeleton": name,
            "degree": degree,
            "count": b.count(),
            "rank": b.rank(),
            "dim": b.dim(),
        })
        .to_string()
            + "\n"
    } else {
        format!("{name}\t{degree}\t{}\t{}\t{}\n", b.count(), b.rank(), b.dim())
    })
}

fn run_eval(data: &str, rep: Option<&str>, input: Option<&str>, json: bool) -> Result<String> {
    let w = load_data(data)?;
    let x = parse(&read_input(input)?)?;
    let ring = w.ring();
    match x.frame() {
        Frame::Marked(_) => {
            let t = eval_marked(&x, &w)?;
            let mut rows = Vec::new();
            for ((counts, idx), v) in t.entries() {
                let mut groups = Vec::new();
                let mut at = 0;
                for &c in counts {
                    groups.push(idx[at..at + c].to_vec());
                    at += c;
                }
                // antisymmetric: list increasing index tuples only
                if groups.iter().all(|g| g.windows(2).all(|p| p[0] < p[1])) {
                    rows.push((groups, ring.display(v).to_string()));
                }
            }
            if json {
                let entries: Vec<_> = rows
                    .iter()
                    .map(|(g, v)| {
                        let g: Vec<Vec<usize>> = g.iter().map(|x| x.iter().map(|i| i + 1).collect()).collect();
                        json!({"indices": g, "value": v})
                    })
                    .collect();
                Ok(json!({"labels": t.labels(), "entries": entries}).to_string() + "\n")
            } else {
                let mut out = String::new();
                for (g, v) in rows {
                    let g: Vec<String> = g
                        .iter()
                        .map(|x| x.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" "))
                        .collect();
                    out.push_str(&format!("[{}]\t{v}\n", g.join(" | ")));
                }
                if out.is_empty() {
                    out.push_str("0\n");
                }
                Ok(out)
            }
        }
        Frame::Skeleton(s) => {
            let v = if s.is_empty() {
                eval_closed(&x, &w)?
            } else if s.all_circles() {
                eval_circle(&x, &w, &[load_rep(rep, &w)?])?
            } else {
                return Err(Error::Unsupported(format!(
                    "weights evaluate closed graphs, labelled graphs or diagrams on circles, not `{s}`"
                )));
            };
            let text = ring.display(&v).to_string();
            Ok(if json {
                json!({ "value": text }).to_string() + "\n"
            } else {
                text + "\n"
            })
        }
    }
}

fn run_check(data: &str, degree: usize, rep: Option<&str>, cap: usize, json: bool) -> Result<String> {
    if degree > cap {
        return Err(Error::CapExceeded { degree, cap });
    }
    let w = load_data(data)?;
    let rep = rep.map(|r| load_rep(Some(r), &w)).transpose()?;
    let report = check_data(&w, degree, rep.as_ref())?;
    Ok(if json {
        let lines: Vec<_> = report
            .lines
            .iter()
            .map(|l| {
                json!({
                    "kind": l.kind,
                    "degree": l.degree,
                    "instances": l.instances,
                    "failures": l.failures,
                })
            })
            .collect();
        json!({"all_zero": report.all_zero(), "checks": lines}).to_string() + "\n"
    } else {
        report.to_string()
    })
}

/// Execute a parsed command, returning what goes to standard output.
pub fn execute(cli: &Cli) -> Result<String> {
    let (cap, json) = (cli.cap, cli.json);
    match &cli.command {
        Command::Dim { skeleton, degree } => dim_row(skeleton, *degree, cap, json),
        Command::Reduce { input } => {
            let x = parse(&read_input(input.as_deref())?)?;
            let q = QuotientSpace::new(x.frame().clone(), cap);
            Ok(emit(&q.normal_form(&x)?, json))
        }
        Command::Eq { first, second } => {
            let x = parse(&read_input(Some(first))?)?;
            let y = parse(&read_input(Some(second))?)?;
            if x.frame() != y.frame() {
                return Err(Error::FrameMismatch(format!("`{}` against `{}`", x.frame(), y.frame())));
            }
            let q = QuotientSpace::new(x.frame().clone(), cap);
            let eq = q.equal(&x, &y)?;
            Ok(if json {
                json!({ "equal": eq }).to_string() + "\n"
            } else {
                format!("{eq}\n")
            })
        }
        Command::Map(args) => run_map(args, cap, json),
        Command::Pair {
            first,
            second,
            n,
            matching,
        } => {
            let v1 = TQFTVector::new(parse(&read_input(Some(first))?)?)?;
            let v2 = TQFTVector::new(parse(&read_input(Some(second))?)?)?;
            let closed = QuotientSpace::new(Frame::empty(), cap);
            let m: Option<Vec<usize>> = match matching {
                Some(m) => Some(
                    m.iter()
                        .map(|&i| i.checked_sub(1).ok_or_else(|| Error::syntax(1, 1, "matching counts from 1")))
                        .collect::<Result<_>>()?,
                ),
                None => None,
            };
            Ok(emit(&pair(&v1, &v2, *n, m.as_deref(), &closed)?, json))
        }
        Command::Eval { data, rep, input } => run_eval(data, rep.as_deref(), input.as_deref(), json),
        Command::Check { data, degree, rep } => run_check(data, *degree, rep.as_deref(), cap, json),
        Command::Gen(g) => {
            let x = match (g.wheel, g.comb, g.theta) {
                (Some(l), _, _) => wheel(l)?,
                (_, Some(l), _) => comb(l)?,
                _ => theta(),
            };
            Ok(emit(&x, json))
        }
    }
}

/// Run with the given arguments and return the exit code: 0 on success,
/// 1 for domain errors, 2 for parse errors (including bad flags).
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_parse() {
                2
            } else {
                1
            }
        }
    }
}
