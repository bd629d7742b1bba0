//! The `coxperp` command line.

use std::collections::{BTreeSet, VecDeque};
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::coxeter::{CoxeterMatrix, Gen, GenSet};
use crate::decide::{
    corollary_check, decide, infinite_witness_family, CorollaryReport, Decision, Verdict, WitnessFamily,
};
use crate::error::{Error, Result};
use crate::format::parse;
use crate::graph::{cycle_core, Graph, ReducedPath};
use crate::oracle::{approx_eq, canonical_generators, DepthLimited, Order, Vector, DEFAULT_DEPTH};
use crate::perp::{
    available_moves, enumerate_generators, minimal_closed_move_sequence, presentation, GeneratorElement, Generators,
    Limits, Move, MoveKind, PerpPair,
};

#[derive(Parser, Debug)]
#[command(
    name = "coxperp",
    version,
    about = "Finite generation of reflection centralizers in Coxeter groups"
)]
pub struct Cli {
    /// Machine-readable JSON output (errors included).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the centralizer subgroup of x is finitely generated.
    Decide {
        #[command(flatten)]
        target: Target,
        /// Also list this many distinct generators when the answer is infinite.
        #[arg(long, default_value_t = 0)]
        witnesses: usize,
    },
    /// Enumerate the canonical generators.
    Generators {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Coxeter matrix of the canonical generators.
    Presentation {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Canonical generators found by brute-force root enumeration.
    Oracle {
        #[command(flatten)]
        target: Target,
        /// Word length bound for root enumeration.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Compare with the enumerated generators.
        #[arg(long)]
        compare: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Moves reachable from a pair "s,t".
    Moves {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        from: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// The odd Coxeter graph.
    OddGraph {
        file: PathBuf,
        /// DOT output.
        #[arg(long)]
        dot: bool,
        /// Show the full Coxeter graph, including even and infinite labels.
        #[arg(long)]
        full: bool,
    },
    /// Cycle core of the odd graph (of the odd component of x, if given).
    CycleCore {
        file: PathBuf,
        #[arg(short = 'x', long = "generator")]
        x: Option<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Run the built-in example suite.
    Selftest,
}

#[derive(Args, Debug)]
struct Target {
    /// Coxeter matrix file.
    file: PathBuf,
    /// The generator x.
    #[arg(short = 'x', long = "generator")]
    x: String,
}

#[derive(Args, Debug, Clone, Copy)]
struct LimitArgs {
    /// Longest representative path during generator enumeration.
    #[arg(long, default_value_t = 16)]
    max_path_len: usize,
    /// Largest number of generators before giving up.
    #[arg(long, default_value_t = 10_000)]
    max_states: usize,
}

impl From<LimitArgs> for Limits {
    fn from(a: LimitArgs) -> Self {
        Limits {
            max_path_len: a.max_path_len,
            max_states: a.max_states,
            ..Limits::default()
        }
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on input errors, 2 when independent computations disagree.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let json = cli.json;
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            if json {
                let v = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
                let _ = writeln!(err, "{v}");
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            if e.is_inconsistency() {
                2
            } else {
                1
            }
        }
    }
}

fn load(path: &PathBuf) -> Result<CoxeterMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    parse(&text)
}

fn load_target(t: &Target) -> Result<(CoxeterMatrix, Gen)> {
    let cm = load(&t.file)?;
    let x = cm.index_of(&t.x)?;
    Ok((cm, x))
}

fn set_str(cm: &CoxeterMatrix, s: &GenSet) -> String {
    format!("{{{}}}", cm.names_of(s).join(","))
}

fn path_names(cm: &CoxeterMatrix, p: &ReducedPath) -> Vec<String> {
    cm.names_of(p.vertices())
}

fn root_str(v: &Vector) -> String {
    let parts: Vec<String> = v.iter().map(|c| format!("{c:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

fn element_json(cm: &CoxeterMatrix, e: &GeneratorElement) -> Value {
    json!({
        "pair": [cm.name(e.pair.mover), cm.name(e.pair.support)],
        "path": path_names(cm, &e.path),
        "root": e.root.iter().copied().collect::<Vec<f64>>(),
        "word": cm.names_of(&e.word),
    })
}

fn move_json(cm: &CoxeterMatrix, m: &Move) -> Value {
    let kind = match m.kind {
        MoveKind::Sliding => json!("sliding"),
        MoveKind::Switching { at } => json!({"switching": cm.name(at)}),
    };
    json!({
        "kind": kind,
        "from": [cm.name(m.from.mover), cm.name(m.from.support)],
        "to": [cm.name(m.to.mover), cm.name(m.to.support)],
        "trace": path_names(cm, &m.trace),
    })
}

fn move_str(cm: &CoxeterMatrix, m: &Move) -> String {
    let kind = match m.kind {
        MoveKind::Sliding => "sliding".to_string(),
        MoveKind::Switching { at } => format!("switching at {}", cm.name(at)),
    };
    format!(
        "{} -> {}  {kind}, trace {}",
        m.from.display(cm),
        m.to.display(cm),
        path_names(cm, &m.trace).join("-")
    )
}

/// JSON for a verdict with its corollary checks and optional witnesses.
pub fn decide_report(
    cm: &CoxeterMatrix,
    v: &Verdict,
    cors: &[CorollaryReport],
    family: Option<&WitnessFamily>,
) -> Value {
    let mut j = serde_json::to_value(v).unwrap();
    j["corollaries"] = serde_json::to_value(cors).unwrap();
    if let Some(f) = family {
        j["witnesses"] = json!({
            "construction": f.construction,
            "loop": f.loop_path.as_ref().map(|p| path_names(cm, p)),
            "generators": f.elements.iter().map(|e| element_json(cm, e)).collect::<Vec<_>>(),
        });
    }
    j
}

pub fn generators_report(cm: &CoxeterMatrix, x: Gen, g: &Generators) -> Value {
    json!({
        "x": cm.name(x),
        "saturated": g.saturated,
        "truncation": g.truncation,
        "count": g.elements.len(),
        "generators": g.elements.iter().map(|e| element_json(cm, e)).collect::<Vec<_>>(),
    })
}

pub fn oracle_report(cm: &CoxeterMatrix, x: Gen, o: &DepthLimited<Vec<Vector>>) -> Value {
    json!({
        "x": cm.name(x),
        "depth": o.depth,
        "complete": o.complete,
        "count": o.value.len(),
        "roots": o.value.iter().map(|v| v.iter().copied().collect::<Vec<f64>>()).collect::<Vec<_>>(),
    })
}

fn order_json(o: Order) -> Value {
    serde_json::to_value(o).unwrap()
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let json = cli.json;
    let mut w = |s: String| -> Result<()> {
        writeln!(out, "{s}").map_err(|e| Error::Precondition(format!("write failed: {e}")))
    };
    match cli.command {
        Command::Decide { target, witnesses } => {
            let (cm, x) = load_target(&target)?;
            let v = decide(&cm, x)?;
            let cors = corollary_check(&cm, x, &v)?;
            let family = if witnesses > 0 && v.decision == Decision::Infinite {
                Some(infinite_witness_family(&cm, x, &v, witnesses)?)
            } else {
                None
            };
            if json {
                w(decide_report(&cm, &v, &cors, family.as_ref()).to_string())?;
            } else {
                let decision = match v.decision {
                    Decision::Finite => "finitely generated",
                    Decision::Infinite => "not finitely generated",
                };
                w(format!("x = {}: {decision}", v.x))?;
                w(format!(
                    "branch: {}",
                    serde_json::to_value(v.branch).unwrap().as_str().unwrap()
                ))?;
                if let Some(c) = &v.case {
                    w(format!("case: {c}"))?;
                }
                w(format!("O = {}", set_str(&cm, &v.sets.odd)))?;
                if let Some(k) = &v.core_set {
                    w(format!("K = {}", set_str(&cm, k)))?;
                }
                w(format!("E = {}", set_str(&cm, &v.sets.outer)))?;
                for (s, o2) in &v.sets.o2 {
                    w(format!("O2({}) = {}", cm.name(*s), set_str(&cm, o2)))?;
                }
                for c in &v.conditions {
                    let h = if c.holds { "holds" } else { "fails" };
                    w(format!("condition {}: {h} ({})", c.id, c.detail))?;
                }
                if let Some(viol) = &v.violation {
                    w(format!("violation: condition {}: {}", viol.condition, viol.detail))?;
                }
                if let Some(f) = &family {
                    w(format!("witnesses ({}):", f.construction))?;
                    for e in &f.elements {
                        w(format!("  {} {}", e.pair.display(&cm), root_str(&e.root)))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Generators { target, limits } => {
            let (cm, x) = load_target(&target)?;
            let g = enumerate_generators(&cm, x, limits.into())?;
            if json {
                w(generators_report(&cm, x, &g).to_string())?;
            } else {
                let status = if g.saturated {
                    "saturated".to_string()
                } else {
                    format!("truncated: {}", g.truncation.clone().unwrap_or_default())
                };
                w(format!("{} generators ({status})", g.elements.len()))?;
                for (i, e) in g.elements.iter().enumerate() {
                    w(format!(
                        "r{i} {} path {} root {} word {}",
                        e.pair.display(&cm),
                        path_names(&cm, &e.path).join("-"),
                        root_str(&e.root),
                        cm.names_of(&e.word).join(" ")
                    ))?;
                }
            }
            Ok(0)
        }
        Command::Presentation { target, limits } => {
            let (cm, x) = load_target(&target)?;
            let p = presentation(&cm, x, limits.into())?;
            if json {
                let m = |t: &Vec<Vec<Order>>| -> Vec<Vec<Value>> {
                    t.iter().map(|r| r.iter().map(|&o| order_json(o)).collect()).collect()
                };
                w(json!({
                    "x": cm.name(x),
                    "generators": p.generators.iter().map(|e| element_json(&cm, e)).collect::<Vec<_>>(),
                    "matrix": m(&p.chain),
                    "numeric": m(&p.numeric),
                })
                .to_string())?;
            } else {
                w(format!("{} generators", p.generators.len()))?;
                for (i, e) in p.generators.iter().enumerate() {
                    w(format!(
                        "r{i} = {} path {}",
                        e.pair.display(&cm),
                        path_names(&cm, &e.path).join("-")
                    ))?;
                }
                for row in &p.chain {
                    w(row.iter().map(|o| format!("{o:>4}")).collect::<String>())?;
                }
            }
            Ok(0)
        }
        Command::Oracle {
            target,
            depth,
            compare,
            limits,
        } => {
            let (cm, x) = load_target(&target)?;
            let o = canonical_generators(&cm, x, depth)?;
            let mut code = 0;
            let mut cmp = Value::Null;
            if compare {
                let g = enumerate_generators(&cm, x, limits.into())?;
                let missing = g
                    .elements
                    .iter()
                    .filter(|e| !o.value.iter().any(|r| approx_eq(r, &e.root)))
                    .count();
                let extra = o
                    .value
                    .iter()
                    .filter(|r| !g.elements.iter().any(|e| approx_eq(r, &e.root)))
                    .count();
                let agree = missing == 0 && extra == 0;
                if g.saturated && !agree {
                    code = 2;
                }
                cmp = json!({
                    "generators": g.elements.len(),
                    "saturated": g.saturated,
                    "missing_from_oracle": missing,
                    "oracle_only": extra,
                    "agree": agree,
                });
            }
            if json {
                let mut j = oracle_report(&cm, x, &o);
                if compare {
                    j["compare"] = cmp;
                }
                w(j.to_string())?;
            } else {
                let tag = if o.complete { "complete" } else { "depth-limited" };
                w(format!("{} canonical roots at depth {depth} ({tag})", o.value.len()))?;
                for v in &o.value {
                    w(format!("  {}", root_str(v)))?;
                }
                if compare {
                    w(format!("compare: {cmp}"))?;
                }
            }
            if code == 2 {
                return Err(Error::Inconsistency("oracle and generator enumeration disagree".into()));
            }
            Ok(code)
        }
        Command::Moves { target, from, limits } => {
            let (cm, x) = load_target(&target)?;
            let parts: Vec<&str> = from.split(',').map(str::trim).collect();
            let [a, b] = parts.as_slice() else {
                return Err(Error::Precondition(format!("--from expects \"s,t\", got `{from}`")));
            };
            let xi = PerpPair::new(cm.index_of(a)?, cm.index_of(b)?);
            let mut seen = BTreeSet::from([xi]);
            let mut queue = VecDeque::from([xi]);
            let mut all = Vec::new();
            while let Some(p) = queue.pop_front() {
                for m in available_moves(&cm, x, p)? {
                    if seen.insert(m.to) {
                        queue.push_back(m.to);
                    }
                    all.push(m);
                }
            }
            let closed = minimal_closed_move_sequence(&cm, x, xi, limits.into())?;
            if json {
                w(json!({
                    "from": [cm.name(xi.mover), cm.name(xi.support)],
                    "reachable": seen.iter().map(|p| [cm.name(p.mover), cm.name(p.support)]).collect::<Vec<_>>(),
                    "moves": all.iter().map(|m| move_json(&cm, m)).collect::<Vec<_>>(),
                    "closed_sequence": closed.as_ref().map(|c| json!({
                        "moves": c.moves.iter().map(|m| move_json(&cm, m)).collect::<Vec<_>>(),
                        "trace": path_names(&cm, &c.trace),
                        "winding": c.winding,
                    })),
                })
                .to_string())?;
            } else {
                w(format!("{} pairs reachable from {}", seen.len(), xi.display(&cm)))?;
                for m in &all {
                    w(format!("  {}", move_str(&cm, m)))?;
                }
                match closed {
                    None => w("no closed move sequence".into())?,
                    Some(c) => {
                        w(format!(
                            "shortest closed sequence: {} moves, trace {}",
                            c.moves.len(),
                            path_names(&cm, &c.trace).join("-")
                        ))?;
                        if let Some(k) = c.winding {
                            w(format!("winding number: {k}"))?;
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::OddGraph { file, dot, full } => {
            let cm = load(&file)?;
            let g = if full {
                cm.coxeter_graph()
            } else {
                cm.odd_graph(&cm.all())?
            };
            let core = all_cores(&cm.odd_graph(&cm.all())?)?;
            emit_graph(&cm, &g, &core, dot, json, &mut w)?;
            Ok(0)
        }
        Command::CycleCore { file, x, dot } => {
            let cm = load(&file)?;
            let g = match &x {
                Some(name) => cm.odd_graph(&cm.odd_component(cm.index_of(name)?)?)?,
                None => cm.odd_graph(&cm.all())?,
            };
            let core = all_cores(&g)?;
            if dot {
                emit_graph(&cm, &g.induced(&core), &core, true, false, &mut w)?;
            } else if json {
                w(json!({"K": cm.names_of(&core)}).to_string())?;
            } else {
                w(format!("K = {}", set_str(&cm, &core)))?;
            }
            Ok(0)
        }
        Command::Selftest => {
            let results = selftest();
            let failed = results.iter().filter(|(_, ok)| !ok).count();
            if json {
                w(json!({
                    "checks": results.iter().map(|(n, ok)| json!({"name": n, "ok": ok})).collect::<Vec<_>>(),
                    "failed": failed,
                })
                .to_string())?;
            } else {
                for (name, ok) in &results {
                    w(format!("{} {name}", if *ok { "ok  " } else { "FAIL" }))?;
                }
            }
            Ok(if failed == 0 { 0 } else { 2 })
        }
    }
}

/// Union of the cycle cores of the components that contain a cycle.
fn all_cores(g: &Graph) -> Result<GenSet> {
    let mut core = GenSet::new();
    for comp in g.components() {
        let h = g.induced(&comp);
        if h.has_cycle() {
            core.extend(cycle_core(&h)?);
        }
    }
    Ok(core)
}

fn emit_graph(
    cm: &CoxeterMatrix,
    g: &Graph,
    core: &GenSet,
    dot: bool,
    json: bool,
    w: &mut dyn FnMut(String) -> Result<()>,
) -> Result<()> {
    if dot {
        w("graph coxeter {".into())?;
        for v in g.vertices() {
            let attr = if core.contains(&v) {
                ", style=filled, fillcolor=lightblue"
            } else {
                ""
            };
            w(format!("  \"{}\" [label=\"{}\"{attr}];", cm.name(v), cm.name(v)))?;
        }
        for (a, b) in g.edges() {
            w(format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];",
                cm.name(a),
                cm.name(b),
                cm.m(a, b)
            ))?;
        }
        w("}".into())?;
    } else if json {
        let edges: Vec<Value> = g
            .edges()
            .map(|(a, b)| json!([cm.name(a), cm.name(b), cm.m(a, b).to_string()]))
            .collect();
        w(json!({
            "vertices": cm.names_of(&g.vertex_set()),
            "edges": edges,
            "core": cm.names_of(core),
        })
        .to_string())?;
    } else {
        for (a, b) in g.edges() {
            w(format!("{} -- {} ({})", cm.name(a), cm.name(b), cm.m(a, b)))?;
        }
        w(format!("core: {}", set_str(cm, core)))?;
    }
    Ok(())
}

/// Checks on the built-in examples; each entry is (name, passed).
pub fn selftest() -> Vec<(String, bool)> {
    use crate::testing::*;
    let mut out = Vec::new();
    let mut check = |name: &str, f: &dyn Fn() -> Result<bool>| {
        out.push((name.to_string(), f().unwrap_or(false)));
    };
    check("A3 is finite on the acyclic branch", &|| {
        Ok(decide(&a3(), 0)?.case.as_deref() == Some("always-finite"))
    });
    check("B2 has the single generator tst", &|| {
        let g = enumerate_generators(&b2(), 0, Limits::default())?;
        Ok(g.saturated && g.elements.len() == 1 && g.elements[0].word == vec![1, 0, 1])
    });
    check("diamond is finite by the bipyramid case", &|| {
        Ok(decide(&diamond(), 0)?.case.as_deref() == Some("1c"))
    });
    check("G4 is infinite by condition 4", &|| {
        let v = decide(&g4(), 0)?;
        Ok(v.violation.map(|v| v.condition) == Some(4))
    });
    check("affine cycles are finite by case 1b", &|| {
        Ok([4, 5].iter().all(|&n| {
            decide(&a_tilde(n), 0)
                .map(|v| v.case.as_deref() == Some("1b"))
                .unwrap_or(false)
        }))
    });
    for (name, cm) in [
        ("A3", a3()),
        ("B2", b2()),
        ("diamond", diamond()),
        ("affine A3", a_tilde(4)),
    ] {
        check(&format!("{name}: generators agree with the root oracle"), &|| {
            let g = enumerate_generators(&cm, 0, Limits::default())?;
            let o = canonical_generators(&cm, 0, 10)?;
            Ok(g.saturated
                && g.elements.len() == o.value.len()
                && g.elements.iter().all(|e| o.value.iter().any(|r| approx_eq(r, &e.root))))
        });
        check(&format!("{name}: presentation orders agree"), &|| {
            Ok(presentation(&cm, 0, Limits::default()).is_ok())
        });
    }
    check("G4 witness family is distinct", &|| {
        let v = decide(&g4(), 0)?;
        Ok(infinite_witness_family(&g4(), 0, &v, 8)?.elements.len() == 8)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().map(|s| s.to_string()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn missing_file_is_input_error() {
        let (code, _, err) = run_str(&["coxperp", "decide", "-x", "a", "/nonexistent.cox", "--json"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "parse");
    }

    #[test]
    fn bad_arguments_exit_one() {
        let (code, _, _) = run_str(&["coxperp", "frobnicate"]);
        assert_eq!(code, 1);
        let (code, out, _) = run_str(&["coxperp", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("decide"));
    }

    #[test]
    fn selftest_passes() {
        let (code, out, _) = run_str(&["coxperp", "selftest"]);
        assert_eq!(code, 0, "{out}");
    }
}
