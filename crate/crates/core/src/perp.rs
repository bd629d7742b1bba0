//! Generators of `W^{⊥x}` from paths in the odd Coxeter graph.
//!
//! A pair `ξ = (ξ^o, ξ^†)` with `m(ξ^o, ξ^†)` even and `ξ^o` in the odd
//! component `O` of `x`, together with a path `c` from `x` to `ξ^o` in the
//! odd graph, gives the root `γ(ξ; c) = π(c)·α̃_ξ`. Every canonical generator
//! of `W^{⊥x}` is the reflection along such a root, and two of them
//! coincide exactly when a sequence of moves relates them.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use nalgebra::DMatrix;

use crate::coxeter::{CoxeterMatrix, Gen, GenSet, Label};
use crate::error::{Error, Result};
use crate::graph::{chordless_cycles, winding_number, Graph, ReducedPath};
use crate::oracle::{order_of_product, BilinearForm, Order, RootSet, Vector};

/// An element `(ξ^o, ξ^†)` of the pair set: mover first, support second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PerpPair {
    pub mover: Gen,
    pub support: Gen,
}

impl PerpPair {
    pub fn new(mover: Gen, support: Gen) -> Self {
        PerpPair { mover, support }
    }

    pub fn swapped(self) -> Self {
        PerpPair::new(self.support, self.mover)
    }

    pub fn display<'a>(&self, cm: &'a CoxeterMatrix) -> PairDisplay<'a> {
        PairDisplay { cm, pair: *self }
    }
}

pub struct PairDisplay<'a> {
    cm: &'a CoxeterMatrix,
    pair: PerpPair,
}

impl fmt::Display for PairDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            self.cm.name(self.pair.mover),
            self.cm.name(self.pair.support)
        )
    }
}

/// Search limits for the path calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Longest representative path kept during generator enumeration.
    pub max_path_len: usize,
    /// Largest number of generator classes before giving up.
    pub max_states: usize,
    /// Largest number of search states for closed move sequences.
    pub max_moves: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_path_len: 16,
            max_states: 10_000,
            max_moves: 100_000,
        }
    }
}

/// The word of `π(p)`: each edge `(y, z)` with `m(y,z) = 2k+1` contributes
/// `(zy)^k`.
pub fn pi_word(cm: &CoxeterMatrix, p: &ReducedPath) -> Result<Vec<Gen>> {
    let mut word = Vec::new();
    for (y, z) in p.edges() {
        cm.check(y)?;
        cm.check(z)?;
        let m = match cm.m(y, z) {
            Label::Finite(m) if m % 2 == 1 && m >= 3 => m,
            _ => {
                return Err(Error::InvalidEntry(format!(
                    "edge ({},{}) has label {} and is not in the odd graph",
                    cm.name(y),
                    cm.name(z),
                    cm.m(y, z)
                )))
            }
        };
        for _ in 0..(m - 1) / 2 {
            word.push(z);
            word.push(y);
        }
    }
    Ok(word)
}

/// Matrix of `π(p)` acting on coefficient vectors.
pub fn pi_action(cm: &CoxeterMatrix, p: &ReducedPath) -> Result<DMatrix<f64>> {
    cm.check(p.start())?;
    let word = pi_word(cm, p)?;
    Ok(BilinearForm::new(cm).word_matrix(&word))
}

fn even_label(cm: &CoxeterMatrix, xi: PerpPair) -> Result<u32> {
    cm.check(xi.mover)?;
    cm.check(xi.support)?;
    match cm.m(xi.mover, xi.support) {
        Label::Finite(m) if m % 2 == 0 && xi.mover != xi.support => Ok(m),
        l => Err(Error::InvalidEntry(format!(
            "pair {} has label {l}, not an even number",
            xi.display(cm)
        ))),
    }
}

/// `α̃_ξ = (cos(π/m)·α_{ξ^o} + α_{ξ^†}) / sin(π/m)` for even `m = m(ξ^o, ξ^†)`.
pub fn tilde_alpha(cm: &CoxeterMatrix, xi: PerpPair) -> Result<Vector> {
    let m = even_label(cm, xi)?;
    let a = std::f64::consts::PI / m as f64;
    let mut v = Vector::zeros(cm.rank());
    if m == 2 {
        v[xi.support] = 1.0;
    } else {
        v[xi.mover] = a.cos() / a.sin();
        v[xi.support] = 1.0 / a.sin();
    }
    Ok(v)
}

/// The reflection `(ξ^† ξ^o)^{k-1} ξ^†` along `α̃_ξ`, where `m = 2k`.
pub fn tilde_word(cm: &CoxeterMatrix, xi: PerpPair) -> Result<Vec<Gen>> {
    let m = even_label(cm, xi)?;
    let mut w = Vec::new();
    for _ in 0..m / 2 - 1 {
        w.push(xi.support);
        w.push(xi.mover);
    }
    w.push(xi.support);
    Ok(w)
}

/// The pairs `(s, t)` with `s ∈ O`, `t ≠ s` and `m(s,t)` even, in
/// lexicographic order.
pub fn perp_pairs(cm: &CoxeterMatrix, x: Gen) -> Result<Vec<PerpPair>> {
    let odd = cm.odd_component(x)?;
    Ok(odd
        .iter()
        .flat_map(|&s| {
            cm.generators()
                .filter(move |&t| t != s && cm.m(s, t).is_even())
                .map(move |t| PerpPair::new(s, t))
        })
        .collect())
}

fn check_pair(cm: &CoxeterMatrix, x: Gen, xi: PerpPair) -> Result<()> {
    even_label(cm, xi)?;
    if !cm.odd_component(x)?.contains(&xi.mover) {
        return Err(Error::Precondition(format!(
            "mover of {} is not in the odd component of {}",
            xi.display(cm),
            cm.name(x)
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    Sliding,
    Switching { at: Gen },
}

/// An order-one identification `(ξ; c) ∼ (ζ; c·trace)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub from: PerpPair,
    pub to: PerpPair,
    pub trace: ReducedPath,
}

impl Move {
    pub fn inverse(&self) -> Move {
        Move {
            kind: self.kind,
            from: self.to,
            to: self.from,
            trace: self.trace.inverse(),
        }
    }
}

/// Slidings and switchings available from `ξ`, ordered by the third
/// vertex `z`.
pub fn available_moves(cm: &CoxeterMatrix, x: Gen, xi: PerpPair) -> Result<Vec<Move>> {
    check_pair(cm, x, xi)?;
    let (o, d) = (xi.mover, xi.support);
    if !cm.m(o, d).is(2) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for z in cm.generators().filter(|&z| z != o && z != d) {
        let (b, c) = (cm.m(o, z), cm.m(d, z));
        if b.is_odd_edge() && c.is(2) {
            out.push(Move {
                kind: MoveKind::Sliding,
                from: xi,
                to: PerpPair::new(z, d),
                trace: path(&[o, z]),
            });
        }
        if b.is(3) && c.is(3) {
            out.push(Move {
                kind: MoveKind::Switching { at: z },
                from: xi,
                to: xi.swapped(),
                trace: path(&[o, z, d]),
            });
        }
    }
    Ok(out)
}

fn path(vs: &[Gen]) -> ReducedPath {
    ReducedPath::from_vertices(vs.to_vec()).expect("local paths do not backtrack")
}

/// The eleven local configurations of three generators `{ξ^o, ξ^†, z}`
/// that produce a relation between generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Configuration {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
}

impl Configuration {
    pub const ALL: [Configuration; 11] = [
        Configuration::I,
        Configuration::II,
        Configuration::III,
        Configuration::IV,
        Configuration::V,
        Configuration::VI,
        Configuration::VII,
        Configuration::VIII,
        Configuration::IX,
        Configuration::X,
        Configuration::XI,
    ];

    /// Classifies the labels `a = m(ξ^o,ξ^†)`, `b = m(ξ^o,z)` and
    /// `c = m(ξ^†,z)`. The shared case `a = b = c = 2` is reported as (I).
    pub fn classify(a: Label, b: Label, c: Label) -> Option<Configuration> {
        use Configuration::*;
        let (Label::Finite(a), Label::Finite(b), Label::Finite(c)) = (a, b, c) else {
            return None;
        };
        Some(match (a, b, c) {
            (2, 2, _) => I,
            (2, b, 2) if b % 2 == 0 => II,
            (2, 4, 3) => III,
            (2, b, 2) if b % 2 == 1 => IV,
            (2, 3, 3) => V,
            (2, 3, 5) => VI,
            (2, 5, 3) => VII,
            (2, 3, 4) => VIII,
            (a, 2, 2) if a % 2 == 0 => IX,
            (4, 2, 3) => X,
            (4, 3, 2) => XI,
            _ => return None,
        })
    }

    pub fn roman(self) -> &'static str {
        use Configuration::*;
        match self {
            I => "I",
            II => "II",
            III => "III",
            IV => "IV",
            V => "V",
            VI => "VI",
            VII => "VII",
            VIII => "VIII",
            IX => "IX",
            X => "X",
            XI => "XI",
        }
    }
}

/// A relation `(ξ; c) ∼^k (ζ; c·q)` coming from the configuration on
/// `{ξ^o, ξ^†, z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub configuration: Configuration,
    pub z: Gen,
    pub zeta: PerpPair,
    pub q: ReducedPath,
    pub k: u32,
}

/// All relations at `ξ`, ordered by `z`.
pub fn relation_configurations(cm: &CoxeterMatrix, x: Gen, xi: PerpPair) -> Result<Vec<Relation>> {
    use Configuration::*;
    check_pair(cm, x, xi)?;
    let (o, d) = (xi.mover, xi.support);
    let mut out = Vec::new();
    for z in cm.generators().filter(|&z| z != o && z != d) {
        let (a, b, c) = (cm.m(o, d), cm.m(o, z), cm.m(d, z));
        let Some(conf) = Configuration::classify(a, b, c) else {
            continue;
        };
        let (zeta, q, k) = match conf {
            I => (PerpPair::new(o, z), path(&[o]), c.finite().unwrap()),
            II | IX => (PerpPair::new(o, z), path(&[o]), 2),
            III | X => (PerpPair::new(o, z), path(&[o]), 4),
            IV => (PerpPair::new(z, d), path(&[o, z]), 1),
            V => (xi.swapped(), path(&[o, z, d]), 1),
            VI | VII => (xi.swapped(), path(&[o, z, d]), 2),
            VIII | XI => (PerpPair::new(z, d), path(&[o, z]), 2),
        };
        out.push(Relation {
            configuration: conf,
            z,
            zeta,
            q,
            k,
        });
    }
    Ok(out)
}

/// A canonical generator `r(ξ; c)` with its root and an (unreduced) word.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorElement {
    pub pair: PerpPair,
    pub path: ReducedPath,
    pub root: Vector,
    pub word: Vec<Gen>,
}

/// Shared data for computations relative to a fixed `x`.
#[derive(Clone, Debug)]
pub struct PerpContext<'a> {
    pub cm: &'a CoxeterMatrix,
    pub x: Gen,
    pub odd: GenSet,
    pub odd_graph: Graph,
    pub form: BilinearForm,
    pub pairs: Vec<PerpPair>,
    parent: BTreeMap<Gen, Gen>,
    tilde: HashMap<PerpPair, Vector>,
}

impl<'a> PerpContext<'a> {
    pub fn new(cm: &'a CoxeterMatrix, x: Gen) -> Result<Self> {
        let odd = cm.odd_component(x)?;
        let odd_graph = cm.odd_graph(&odd)?;
        let parent = odd_graph.bfs_tree(x)?;
        let pairs = perp_pairs(cm, x)?;
        let tilde = pairs
            .iter()
            .map(|&p| Ok((p, tilde_alpha(cm, p)?)))
            .collect::<Result<_>>()?;
        Ok(PerpContext {
            cm,
            x,
            odd,
            odd_graph,
            form: BilinearForm::new(cm),
            pairs,
            parent,
            tilde,
        })
    }

    /// The path from `x` to `s` in the breadth-first spanning tree.
    pub fn tree_path(&self, s: Gen) -> Result<ReducedPath> {
        if !self.odd.contains(&s) {
            return Err(Error::Precondition(format!(
                "{} is not in the odd component of {}",
                self.cm.name(s),
                self.cm.name(self.x)
            )));
        }
        let mut vs = vec![s];
        let mut cur = s;
        while let Some(&p) = self.parent.get(&cur) {
            vs.push(p);
            cur = p;
        }
        vs.reverse();
        crate::graph::reduce_path(&self.odd_graph, &vs)
    }

    /// Free generators of the closed paths at `x`: one loop per edge of the
    /// odd component outside the spanning tree.
    pub fn fundamental_loops(&self) -> Result<Vec<ReducedPath>> {
        let mut loops = Vec::new();
        for (u, w) in self.odd_graph.edges() {
            if self.parent.get(&w) == Some(&u) || self.parent.get(&u) == Some(&w) {
                continue;
            }
            let edge = crate::graph::reduce_path(&self.odd_graph, &[u, w])?;
            let l = self
                .tree_path(u)?
                .compose(&edge)?
                .compose(&self.tree_path(w)?.inverse())?;
            loops.push(l);
        }
        Ok(loops)
    }

    fn tilde(&self, xi: PerpPair) -> Result<Vector> {
        match self.tilde.get(&xi) {
            Some(v) => Ok(v.clone()),
            None => tilde_alpha(self.cm, xi),
        }
    }

    /// `π(c)·v`.
    pub fn apply(&self, c: &ReducedPath, v: &Vector) -> Result<Vector> {
        let word = pi_word(self.cm, c)?;
        Ok(self.form.act_word(&word, v))
    }

    /// `γ(ξ; c) = π(c)·α̃_ξ` for a path `c` from `x` to `ξ^o`.
    pub fn gamma(&self, xi: PerpPair, c: &ReducedPath) -> Result<Vector> {
        if c.start() != self.x || c.end() != xi.mover {
            return Err(Error::Precondition(format!(
                "path must run from {} to {}",
                self.cm.name(self.x),
                self.cm.name(xi.mover)
            )));
        }
        self.apply(c, &self.tilde(xi)?)
    }

    /// The word `π(c)·w_ξ·π(c)⁻¹`.
    pub fn word(&self, xi: PerpPair, c: &ReducedPath) -> Result<Vec<Gen>> {
        let pw = pi_word(self.cm, c)?;
        let mut w = pw.clone();
        w.extend(tilde_word(self.cm, xi)?);
        w.extend(pw.iter().rev());
        Ok(w)
    }

    pub fn element(&self, xi: PerpPair, c: ReducedPath) -> Result<GeneratorElement> {
        Ok(GeneratorElement {
            pair: xi,
            root: self.gamma(xi, &c)?,
            word: self.word(xi, &c)?,
            path: c,
        })
    }

    /// `γ(ξ) = γ(ξ; p_{x,ξ^o})`.
    pub fn base_element(&self, xi: PerpPair) -> Result<GeneratorElement> {
        self.element(xi, self.tree_path(xi.mover)?)
    }
}

/// Outcome of generator enumeration.
#[derive(Clone, Debug)]
pub struct Generators {
    pub elements: Vec<GeneratorElement>,
    /// The orbit closed up within the limits, so `elements` is all of `R`.
    pub saturated: bool,
    /// Why the search stopped early, if it did.
    pub truncation: Option<String>,
    pub loops: Vec<ReducedPath>,
}

/// Breadth-first closure of the base roots `γ(ξ)` under the fundamental
/// loops at `x`, merging states whose roots coincide.
pub fn enumerate_generators(cm: &CoxeterMatrix, x: Gen, limits: Limits) -> Result<Generators> {
    let ctx = PerpContext::new(cm, x)?;
    enumerate_in(&ctx, limits)
}

pub fn enumerate_in(ctx: &PerpContext, limits: Limits) -> Result<Generators> {
    let loops = ctx.fundamental_loops()?;
    let mut steps = Vec::new();
    for l in &loops {
        steps.push(l.clone());
        steps.push(l.inverse());
    }
    let mut roots = RootSet::new();
    let mut elements: Vec<GeneratorElement> = Vec::new();
    let mut truncation = None;
    for &xi in &ctx.pairs {
        let e = ctx.base_element(xi)?;
        if roots.insert(e.root.clone()).1 {
            elements.push(e);
        }
    }
    let mut queue: VecDeque<usize> = (0..elements.len()).collect();
    'outer: while let Some(i) = queue.pop_front() {
        for g in &steps {
            let (xi, c) = (elements[i].pair, g.compose(&elements[i].path)?);
            let root = ctx.gamma(xi, &c)?;
            if roots.contains(&root) {
                continue;
            }
            if c.len() > limits.max_path_len {
                truncation.get_or_insert_with(|| format!("representative paths exceed length {}", limits.max_path_len));
                continue;
            }
            if elements.len() >= limits.max_states {
                truncation = Some(format!("more than {} generators", limits.max_states));
                break 'outer;
            }
            roots.insert(root.clone());
            queue.push_back(elements.len());
            elements.push(GeneratorElement {
                pair: xi,
                word: ctx.word(xi, &c)?,
                root,
                path: c,
            });
        }
    }
    Ok(Generators {
        saturated: truncation.is_none(),
        elements,
        truncation,
        loops,
    })
}

/// Coxeter matrix of the canonical generators, computed twice.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<GeneratorElement>,
    /// Orders from the relation table, transported along the orbit.
    pub chain: Vec<Vec<Order>>,
    /// Orders read off the angle between the two roots.
    pub numeric: Vec<Vec<Order>>,
}

/// The Coxeter presentation of `W^{⊥x}` on its canonical generators.
///
/// Fails with [`Error::NotSaturated`] when enumeration did not close up,
/// and with [`Error::Inconsistency`] when the relation table and the
/// numerical orders disagree.
pub fn presentation(cm: &CoxeterMatrix, x: Gen, limits: Limits) -> Result<Presentation> {
    let ctx = PerpContext::new(cm, x)?;
    let gens = enumerate_in(&ctx, limits)?;
    if !gens.saturated {
        return Err(Error::NotSaturated(gens.truncation.unwrap_or_default()));
    }
    let n = gens.elements.len();
    let mut roots = RootSet::new();
    for e in &gens.elements {
        roots.insert(e.root.clone());
    }
    let class_of = |xi: PerpPair, c: &ReducedPath| -> Result<usize> {
        let v = ctx.gamma(xi, c)?;
        roots.find(&v).ok_or_else(|| {
            Error::Inconsistency(format!(
                "root of {} along {:?} is outside the saturated generator set",
                xi.display(cm),
                c.vertices()
            ))
        })
    };

    let mut perms: Vec<Vec<usize>> = Vec::new();
    for l in &gens.loops {
        for g in [l.clone(), l.inverse()] {
            let p = gens
                .elements
                .iter()
                .map(|e| class_of(e.pair, &g.compose(&e.path)?))
                .collect::<Result<Vec<_>>>()?;
            perms.push(p);
        }
    }

    let mut chain = vec![vec![Order::Infinite; n]; n];
    for (i, row) in chain.iter_mut().enumerate() {
        row[i] = Order::Finite(1);
    }
    for &xi in &ctx.pairs {
        let p = ctx.tree_path(xi.mover)?;
        let a = class_of(xi, &p)?;
        for rel in relation_configurations(cm, x, xi)? {
            let b = class_of(rel.zeta, &p.compose(&rel.q)?)?;
            if rel.k == 1 {
                if a != b {
                    return Err(Error::Inconsistency(format!(
                        "configuration {} at {} should identify two generators",
                        rel.configuration.roman(),
                        xi.display(cm)
                    )));
                }
                continue;
            }
            if a == b {
                return Err(Error::Inconsistency(format!(
                    "configuration {} at {} relates a generator to itself",
                    rel.configuration.roman(),
                    xi.display(cm)
                )));
            }
            let mut seen = std::collections::HashSet::new();
            let mut queue = VecDeque::from([(a.min(b), a.max(b))]);
            seen.insert((a.min(b), a.max(b)));
            while let Some((i, j)) = queue.pop_front() {
                match chain[i][j] {
                    Order::Infinite => {
                        chain[i][j] = Order::Finite(rel.k);
                        chain[j][i] = Order::Finite(rel.k);
                    }
                    Order::Finite(k) if k == rel.k => {}
                    other => {
                        return Err(Error::Inconsistency(format!(
                            "generators {i} and {j} get orders {other} and {} from the relation table",
                            rel.k
                        )))
                    }
                }
                for p in &perms {
                    let (u, v) = (p[i], p[j]);
                    let key = (u.min(v), u.max(v));
                    if seen.insert(key) {
                        queue.push_back(key);
                    }
                }
            }
        }
    }

    let max_order = 2 * cm.max_finite_label().max(4);
    let numeric: Vec<Vec<Order>> = gens
        .elements
        .iter()
        .enumerate()
        .map(|(i, a)| {
            gens.elements
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    if i == j {
                        Order::Finite(1)
                    } else {
                        order_of_product(&ctx.form, &a.root, &b.root, max_order)
                    }
                })
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if chain[i][j] != numeric[i][j] {
                return Err(Error::Inconsistency(format!(
                    "generators {i} and {j}: relation table gives order {}, roots give {}",
                    chain[i][j], numeric[i][j]
                )));
            }
        }
    }
    Ok(Presentation {
        generators: gens.elements,
        chain,
        numeric,
    })
}

/// A shortest closed, non-backtracking sequence of moves from `ξ`.
#[derive(Clone, Debug)]
pub struct ClosedMoveSequence {
    pub moves: Vec<Move>,
    /// The element of the fundamental group at `ξ^o` realised by the moves.
    pub trace: ReducedPath,
    /// Winding number of the trace around the odd cycle, when the odd
    /// component has exactly one chordless cycle.
    pub winding: Option<i64>,
}

/// Breadth-first search for the shortest nonempty closed move sequence at
/// `ξ` in which no move undoes the one before it.
pub fn minimal_closed_move_sequence(
    cm: &CoxeterMatrix,
    x: Gen,
    xi: PerpPair,
    limits: Limits,
) -> Result<Option<ClosedMoveSequence>> {
    check_pair(cm, x, xi)?;
    let mut cache: HashMap<PerpPair, Vec<Move>> = HashMap::new();
    let mut moves_from = |p: PerpPair| -> Result<Vec<Move>> {
        if let Some(m) = cache.get(&p) {
            return Ok(m.clone());
        }
        let m = available_moves(cm, x, p)?;
        cache.insert(p, m.clone());
        Ok(m)
    };
    // nodes: (move, parent node)
    let mut nodes: Vec<(Move, Option<usize>)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    for m in moves_from(xi)? {
        seen.insert(m.clone());
        nodes.push((m, None));
        queue.push_back(nodes.len() - 1);
    }
    let mut found = None;
    while let Some(i) = queue.pop_front() {
        let last = nodes[i].0.clone();
        if last.to == xi {
            found = Some(i);
            break;
        }
        if nodes.len() > limits.max_moves {
            return Ok(None);
        }
        let back = last.inverse();
        for m in moves_from(last.to)? {
            if m != back && seen.insert(m.clone()) {
                nodes.push((m, Some(i)));
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    let Some(mut i) = found else { return Ok(None) };
    let mut moves = vec![nodes[i].0.clone()];
    while let Some(p) = nodes[i].1 {
        moves.push(nodes[p].0.clone());
        i = p;
    }
    moves.reverse();
    let mut trace = ReducedPath::identity(xi.mover);
    for m in &moves {
        trace = trace.compose(&m.trace)?;
    }
    let odd = cm.odd_component(x)?;
    let cycles = chordless_cycles(&cm.odd_graph(&odd)?)?;
    let winding = match cycles.as_slice() {
        [c] => Some(winding_number(&trace, c.vertices())),
        _ => None,
    };
    Ok(Some(ClosedMoveSequence { moves, trace, winding }))
}
