//! Deciding whether `W^{⊥x}` is finitely generated.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::coxeter::{CoxeterMatrix, Gen, GenSet, Label, OuterSets};
use crate::error::{Error, Result};
use crate::graph::{chordless_cycles, cycle_core, Cycle, Graph, ReducedPath};
use crate::oracle::Vector;
use crate::perp::{available_moves, GeneratorElement, PerpContext, PerpPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Finite,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    WithCycle,
    Acyclic,
}

/// One condition of the applicable theorem, evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub id: u8,
    pub holds: bool,
    pub detail: String,
}

/// The first failing condition and its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: u8,
    /// Offending pair of generators, for conditions 1 and 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(String, String)>,
    /// Offending outside generator, for condition 4.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    pub detail: String,
    #[serde(skip)]
    pub pair_index: Option<(Gen, Gen)>,
    #[serde(skip)]
    pub vertex_index: Option<Gen>,
}

/// Outcome of [`decide`] with the sets it was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub x: String,
    pub decision: Decision,
    pub branch: Branch,
    /// `1a`, `1b` or `1c` when the cycle branch is finite, `always-finite`
    /// on the acyclic branch, absent when infinite.
    pub case: Option<String>,
    #[serde(rename = "O")]
    pub odd: Vec<String>,
    #[serde(rename = "K")]
    pub core: Option<Vec<String>>,
    #[serde(rename = "E")]
    pub outer: Vec<String>,
    #[serde(rename = "O2")]
    pub o2: BTreeMap<String, Vec<String>>,
    pub conditions: Vec<Condition>,
    pub violation: Option<Violation>,
    #[serde(skip)]
    pub sets: OuterSets,
    #[serde(skip)]
    pub core_set: Option<GenSet>,
}

impl Verdict {
    pub fn is_finite(&self) -> bool {
        self.decision == Decision::Finite
    }
}

fn names(cm: &CoxeterMatrix, set: &GenSet) -> Vec<String> {
    cm.names_of(set)
}

fn pair_names(cm: &CoxeterMatrix, (a, b): (Gen, Gen)) -> (String, String) {
    (cm.name(a).to_string(), cm.name(b).to_string())
}

/// Whether the odd graph has a cycle, computed both from chordless cycles
/// and from the edge count of a spanning forest.
fn has_cycle_checked(g: &Graph) -> Result<bool> {
    let by_edges = g.edge_count() + g.components().len() > g.vertex_count();
    let by_cycles = !chordless_cycles(g)?.is_empty();
    if by_edges != by_cycles {
        return Err(Error::Inconsistency(format!(
            "cycle detection disagrees: spanning forest says {by_edges}, chordless cycles say {by_cycles}"
        )));
    }
    Ok(by_edges)
}

/// Core shape for condition 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    ATilde,
    Bipyramid(Gen, Gen),
    Other,
}

fn shape(cm: &CoxeterMatrix, k: &GenSet) -> Shape {
    if k.len() >= 4 && cm.is_type_a_tilde(k) {
        Shape::ATilde
    } else if let Some((a, b)) = cm.bipyramid_apexes(k) {
        Shape::Bipyramid(a, b)
    } else {
        Shape::Other
    }
}

/// Condition 1: `Ok(case)` or `Err(first offending even pair)`.
fn condition_one(cm: &CoxeterMatrix, odd: &GenSet, k: &GenSet) -> std::result::Result<&'static str, (Gen, Gen)> {
    let even = cm.even_pairs(odd);
    if even.is_empty() {
        return Ok("1a");
    }
    match shape(cm, k) {
        Shape::ATilde => match even.iter().find(|(a, b)| !(k.contains(a) && k.contains(b))) {
            None => Ok("1b"),
            Some(&p) => Err(p),
        },
        Shape::Bipyramid(y1, y2) => match even.iter().find(|&&p| p != (y1.min(y2), y1.max(y2))) {
            None => Ok("1c"),
            Some(&p) => Err(p),
        },
        Shape::Other => Err(even[0]),
    }
}

fn condition_three(cm: &CoxeterMatrix, sets: &OuterSets) -> Option<(Gen, Gen)> {
    sets.odd.iter().find_map(|&y| {
        sets.outer
            .iter()
            .find(|&&s| !matches!(cm.m(y, s), Label::Finite(2) | Label::Infinite))
            .map(|&s| (y, s))
    })
}

fn condition_four(cm: &CoxeterMatrix, sets: &OuterSets, k: &GenSet) -> Result<Option<(Gen, String)>> {
    for (&s, o2) in &sets.o2 {
        if o2.is_empty() {
            return Ok(Some((s, format!("O2({}) is empty", cm.name(s)))));
        }
        let g = cm.odd_graph(o2)?;
        if !g.is_connected() {
            return Ok(Some((
                s,
                format!(
                    "odd graph on O2({}) has {} components",
                    cm.name(s),
                    g.components().len()
                ),
            )));
        }
        let missing: GenSet = k.difference(o2).copied().collect();
        if !missing.is_empty() {
            return Ok(Some((
                s,
                format!(
                    "O2({}) = {{{}}} does not contain K = {{{}}}",
                    cm.name(s),
                    names(cm, o2).join(","),
                    names(cm, k).join(",")
                ),
            )));
        }
    }
    Ok(None)
}

/// Decides finite generation of `W^{⊥x}`.
pub fn decide(cm: &CoxeterMatrix, x: Gen) -> Result<Verdict> {
    let sets = cm.outer_sets(x)?;
    let odd_graph = cm.odd_graph(&sets.odd)?;
    let with_cycle = has_cycle_checked(&odd_graph)?;
    let o2 = sets
        .o2
        .iter()
        .map(|(&s, v)| (cm.name(s).to_string(), names(cm, v)))
        .collect();
    let mut verdict = Verdict {
        x: cm.name(x).to_string(),
        decision: Decision::Finite,
        branch: if with_cycle { Branch::WithCycle } else { Branch::Acyclic },
        case: None,
        odd: names(cm, &sets.odd),
        core: None,
        outer: names(cm, &sets.outer),
        o2,
        conditions: Vec::new(),
        violation: None,
        sets: sets.clone(),
        core_set: None,
    };

    if !with_cycle {
        let even = cm.even_pairs(&sets.odd).len();
        let bad: usize = sets
            .outer
            .iter()
            .map(|&s| {
                sets.odd
                    .iter()
                    .filter(|&&y| !matches!(cm.m(y, s), Label::Finite(2) | Label::Infinite))
                    .count()
            })
            .sum();
        let mut comps = Vec::new();
        for (&s, set) in &sets.o2 {
            comps.push(format!("{}:{}", cm.name(s), cm.odd_graph(set)?.components().len()));
        }
        // Without a cycle nothing is required; the details are informational.
        verdict.conditions = vec![
            Condition {
                id: 1,
                holds: true,
                detail: format!("not required; {even} even pairs in O"),
            },
            Condition {
                id: 2,
                holds: true,
                detail: format!("|E| = {}", sets.outer.len()),
            },
            Condition {
                id: 3,
                holds: true,
                detail: format!("not required; {bad} pairs (y,s) with m not in {{2,inf}}"),
            },
            Condition {
                id: 4,
                holds: true,
                detail: format!("not required; components of odd graph on O2(s): [{}]", comps.join(", ")),
            },
        ];
        verdict.case = Some("always-finite".into());
        return Ok(verdict);
    }

    let k = cycle_core(&odd_graph)?;
    verdict.core = Some(names(cm, &k));
    verdict.core_set = Some(k.clone());

    let one = condition_one(cm, &sets.odd, &k);
    let three = condition_three(cm, &sets);
    let four = condition_four(cm, &sets, &k)?;

    verdict.conditions = vec![
        Condition {
            id: 1,
            holds: one.is_ok(),
            detail: match &one {
                Ok(case) => format!("case {case}"),
                Err(p) => format!("even pair ({},{})", cm.name(p.0), cm.name(p.1)),
            },
        },
        Condition {
            id: 2,
            holds: true,
            detail: format!("|E| = {}", sets.outer.len()),
        },
        Condition {
            id: 3,
            holds: three.is_none(),
            detail: match three {
                None => "all labels between O and E are 2 or inf".into(),
                Some((y, s)) => format!("m({},{}) = {}", cm.name(y), cm.name(s), cm.m(y, s)),
            },
        },
        Condition {
            id: 4,
            holds: four.is_none(),
            detail: match &four {
                None => "every O2(s) is connected and contains K".into(),
                Some((_, d)) => d.clone(),
            },
        },
    ];

    verdict.violation = if let Err(p) = one {
        Some(Violation {
            condition: 1,
            pair: Some(pair_names(cm, p)),
            vertex: None,
            detail: format!("m({},{}) = {} is even", cm.name(p.0), cm.name(p.1), cm.m(p.0, p.1)),
            pair_index: Some(p),
            vertex_index: None,
        })
    } else if let Some(p) = three {
        Some(Violation {
            condition: 3,
            pair: Some(pair_names(cm, p)),
            vertex: None,
            detail: format!("m({},{}) = {}", cm.name(p.0), cm.name(p.1), cm.m(p.0, p.1)),
            pair_index: Some(p),
            vertex_index: None,
        })
    } else {
        four.map(|(s, detail)| Violation {
            condition: 4,
            pair: None,
            vertex: Some(cm.name(s).to_string()),
            detail,
            pair_index: None,
            vertex_index: Some(s),
        })
    };
    match (&verdict.violation, one) {
        (None, Ok(case)) => verdict.case = Some(case.into()),
        _ => verdict.decision = Decision::Infinite,
    }
    Ok(verdict)
}

/// One corollary evaluated against a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub id: &'static str,
    pub applicable: bool,
    pub predicted: Option<Decision>,
    pub consistent: bool,
}

/// The leaf-pruning 2-core: repeatedly delete vertices of degree at most 1.
fn two_core(g: &Graph) -> GenSet {
    let mut alive: GenSet = g.vertex_set();
    let mut deg: BTreeMap<Gen, usize> = g.vertices().map(|v| (v, g.degree(v))).collect();
    let mut queue: VecDeque<Gen> = g.vertices().filter(|v| deg[v] <= 1).collect();
    while let Some(v) = queue.pop_front() {
        if !alive.remove(&v) {
            continue;
        }
        for w in g.neighbors(v) {
            if alive.contains(&w) {
                let d = deg.get_mut(&w).unwrap();
                *d -= 1;
                if *d == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    alive
}

/// Whether `W_I` is finite for `|I| = 3`, from the list of finite rank-3
/// types.
pub fn rank3_is_finite(labels: [Label; 3]) -> Result<bool> {
    let mut f = Vec::new();
    for l in labels {
        match l {
            Label::Finite(m) => f.push(m),
            Label::Infinite => return Ok(false),
        }
    }
    f.sort_unstable();
    let table = matches!(f.as_slice(), [2, 2, _] | [2, 3, 3] | [2, 3, 4] | [2, 3, 5]);
    let angles = f.iter().map(|&m| 1.0 / m as f64).sum::<f64>() > 1.0 + 1e-12;
    if table != angles {
        return Err(Error::Inconsistency(format!(
            "rank-3 finiteness disagrees for labels {f:?}"
        )));
    }
    Ok(table)
}

/// Evaluates the special-case criteria whose hypotheses `cm` satisfies and
/// compares them with `verdict`.
pub fn corollary_check(cm: &CoxeterMatrix, x: Gen, verdict: &Verdict) -> Result<Vec<CorollaryReport>> {
    let sets = cm.outer_sets(x)?;
    let g = cm.odd_graph(&sets.odd)?;
    let cyclic = g.has_cycle();
    let pairs: Vec<(Gen, Gen)> = cm
        .generators()
        .flat_map(|a| (a + 1..cm.rank()).map(move |b| (a, b)))
        .collect();
    let fin = |b: bool| if b { Decision::Finite } else { Decision::Infinite };
    let mut out = Vec::new();

    // Finitely generated W: recompute from the theorem with an independent core.
    let predicted = if !cyclic {
        Decision::Finite
    } else {
        let k = two_core(&g);
        let one = condition_one(cm, &sets.odd, &k).is_ok();
        let three = condition_three(cm, &sets).is_none();
        let four = sets.o2.values().all(|o2| {
            let h = cm.odd_graph(o2).unwrap();
            !o2.is_empty() && h.is_connected() && k.is_subset(o2)
        });
        fin(one && three && four)
    };
    out.push(("finitely-generated", true, Some(predicted)));

    let two_spherical = pairs.iter().all(|&(a, b)| cm.m(a, b).is_finite()) && cm.coxeter_graph().is_connected();
    out.push((
        "2-spherical",
        two_spherical,
        two_spherical.then(|| {
            let all_odd = pairs.iter().all(|&(a, b)| !cm.m(a, b).is_even());
            let a_tilde = cm.rank() >= 4 && cm.is_type_a_tilde(&cm.all());
            fin(all_odd || a_tilde || !cyclic)
        }),
    ));

    let even = pairs.iter().all(|&(a, b)| !cm.m(a, b).is_odd_edge());
    out.push(("even", even, even.then_some(Decision::Finite)));

    let free_product = cm.even_pairs(&sets.odd).is_empty()
        && sets.odd.iter().all(|&y| {
            cm.generators()
                .filter(|s| !sets.odd.contains(s))
                .all(|s| cm.m(y, s) == Label::Infinite)
        });
    let skew = cyclic && pairs.iter().all(|&(a, b)| !cm.m(a, b).is(2));
    out.push(("skew-angled", skew, skew.then(|| fin(free_product))));

    let mut two_dim = cyclic;
    'outer: for a in cm.generators() {
        for b in a + 1..cm.rank() {
            for c in b + 1..cm.rank() {
                if rank3_is_finite([cm.m(a, b), cm.m(a, c), cm.m(b, c)])? {
                    two_dim = false;
                    break 'outer;
                }
            }
        }
    }
    out.push(("2-dimensional", two_dim, two_dim.then(|| fin(free_product))));

    let mut reports = Vec::new();
    for (id, applicable, predicted) in out {
        let consistent = predicted.is_none_or(|p| p == verdict.decision);
        if !consistent {
            return Err(Error::Inconsistency(format!(
                "corollary {id} predicts {:?} but the verdict is {:?}",
                predicted.unwrap(),
                verdict.decision
            )));
        }
        reports.push(CorollaryReport {
            id,
            applicable,
            predicted,
            consistent,
        });
    }
    Ok(reports)
}

/// A family of distinct canonical generators exhibiting infinitude.
#[derive(Clone, Debug)]
pub struct WitnessFamily {
    pub pair: Option<PerpPair>,
    /// Closed path `P` at `ξ^o`; the family is `γ(ξ; p·P^k)`.
    pub loop_path: Option<ReducedPath>,
    pub elements: Vec<GeneratorElement>,
    /// Which argument guarantees distinctness, or why none applied.
    pub construction: String,
}

/// Whether some nontrivial closed path at `ξ^o` is realised by moves from
/// `ξ` back to `ξ`. Exact: the realised elements form the image of the
/// fundamental group of the move graph, generated by its non-tree edges.
pub fn realizes_nontrivial_loop(cm: &CoxeterMatrix, x: Gen, xi: PerpPair) -> Result<bool> {
    let mut trace_to: BTreeMap<PerpPair, ReducedPath> = BTreeMap::from([(xi, ReducedPath::identity(xi.mover))]);
    let mut queue = VecDeque::from([xi]);
    let mut edges = Vec::new();
    while let Some(p) = queue.pop_front() {
        for m in available_moves(cm, x, p)? {
            if trace_to.contains_key(&m.to) {
                edges.push(m);
            } else {
                let t = trace_to[&p].compose(&m.trace)?;
                trace_to.insert(m.to, t);
                queue.push_back(m.to);
            }
        }
    }
    for m in edges {
        let l = trace_to[&m.from]
            .compose(&m.trace)?
            .compose(&trace_to[&m.to].inverse())?;
        if !l.is_identity() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A closed path `P = Q·C·Q⁻¹` at `ξ^o` through a chordless cycle `C`, with
/// `ξ^†` off `P` but adjacent to it in the Coxeter graph.
pub fn adjacent_closed_path(
    cm: &CoxeterMatrix,
    odd_graph: &Graph,
    cycles: &[Cycle],
    xi: PerpPair,
) -> Option<ReducedPath> {
    let d = xi.support;
    for c in cycles {
        let cset = c.vertex_set();
        for avoid in [BTreeSet::from([d]), BTreeSet::new()] {
            let Some(q) = odd_graph.shortest_path_to_set(xi.mover, &cset, &avoid) else {
                continue;
            };
            let entry = *q.last().unwrap();
            let around = c.closed_path_from(entry)?;
            let q = ReducedPath::from_vertices(q).ok()?;
            let p = q.compose(&around).ok()?.compose(&q.inverse()).ok()?;
            let vs = p.vertex_set();
            if p.is_identity() || vs.contains(&d) {
                continue;
            }
            if vs.iter().any(|&v| !cm.m(v, d).is(2)) {
                return Some(p);
            }
        }
    }
    None
}

/// `count` distinct generators `γ(ξ; p·P^k)`, `k = 0, 1, …`, built from the
/// violated condition of an infinite verdict.
pub fn infinite_witness_family(cm: &CoxeterMatrix, x: Gen, verdict: &Verdict, count: usize) -> Result<WitnessFamily> {
    let none = |why: &str| WitnessFamily {
        pair: None,
        loop_path: None,
        elements: Vec::new(),
        construction: why.into(),
    };
    if verdict.decision != Decision::Infinite {
        return Err(Error::Precondition(
            "witness family requested for a finite verdict".into(),
        ));
    }
    let Some(v) = &verdict.violation else {
        return Ok(none("verdict carries no violation"));
    };
    let ctx = PerpContext::new(cm, x)?;
    let cycles = chordless_cycles(&ctx.odd_graph)?;
    if cycles.is_empty() {
        return Ok(none("odd component is acyclic"));
    }

    let any_loop = |xi: PerpPair| -> Result<ReducedPath> {
        let p = ctx.tree_path(xi.mover)?;
        let g = ctx
            .fundamental_loops()?
            .into_iter()
            .next()
            .expect("cyclic component has a loop");
        p.inverse().compose(&g)?.compose(&p)
    };

    let mut candidates: Vec<PerpPair> = Vec::new();
    match (v.condition, v.pair_index, v.vertex_index) {
        (1 | 3, Some((a, b)), _) => {
            candidates.push(PerpPair::new(a, b));
            if ctx.odd.contains(&b) {
                candidates.push(PerpPair::new(b, a));
            }
        }
        (4, _, Some(s)) => {
            candidates.extend(verdict.sets.o2[&s].iter().map(|&y| PerpPair::new(y, s)));
        }
        _ => {}
    }
    for &p in &ctx.pairs {
        if !candidates.contains(&p) {
            candidates.push(p);
        }
    }

    let mut chosen = None;
    for &xi in &candidates {
        if !cm.m(xi.mover, xi.support).is(2) || !realizes_nontrivial_loop(cm, x, xi)? {
            chosen = Some((
                xi,
                any_loop(xi)?,
                "no nontrivial loop is realised by moves from the pair",
            ));
            break;
        }
        if let Some(p) = adjacent_closed_path(cm, &ctx.odd_graph, &cycles, xi) {
            chosen = Some((xi, p, "support is adjacent to a closed path through the mover"));
            break;
        }
    }
    let (xi, p, construction) = match chosen {
        Some(c) => c,
        None => match candidates.first() {
            Some(&xi) => (xi, any_loop(xi)?, "numerical distinctness only"),
            None => return Ok(none("no even pair at the odd component")),
        },
    };

    let base = ctx.tree_path(xi.mover)?;
    let mut elements = Vec::with_capacity(count);
    for k in 0..count {
        let c = base.compose(&p.power(k as i64)?)?;
        elements.push(ctx.element(xi, c)?);
    }
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let diff: Vector = &elements[i].root - &elements[j].root;
            if diff.amax() <= 1e-4 {
                return Err(Error::Inconsistency(format!(
                    "witness roots {i} and {j} coincide for pair {}",
                    xi.display(cm)
                )));
            }
        }
    }
    Ok(WitnessFamily {
        pair: Some(xi),
        loop_path: Some(p),
        elements,
        construction: construction.into(),
    })
}
