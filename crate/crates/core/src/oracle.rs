//! Brute-force root system of the geometric representation.
//!
//! Roots are enumerated as `w·α_s` over words of bounded length. Everything
//! here is independent of the path calculus in [`crate::perp`] and is used
//! to cross-check it.

use std::collections::HashMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::coxeter::{CoxeterMatrix, Gen, Label};
use crate::error::{Error, Result};

/// Coefficient vector in the basis of simple roots.
pub type Vector = DVector<f64>;

/// Absolute tolerance, scaled by `1 + max|coeff|` where vectors can grow.
pub const TOL: f64 = 1e-7;
pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_ROOT_CAP: usize = 1_000_000;

const GRID: f64 = 1e-6;

fn scale(v: &Vector) -> f64 {
    1.0 + v.amax()
}

/// Tolerance appropriate for comparing against `v`.
pub fn tol_for(v: &Vector) -> f64 {
    TOL * scale(v)
}

/// The symmetric bilinear form `⟨α_s, α_t⟩ = −cos(π/m(s,t))`, or `−1`
/// when `m = ∞`.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    gram: DMatrix<f64>,
}

impl BilinearForm {
    pub fn new(cm: &CoxeterMatrix) -> Self {
        let r = cm.rank();
        let gram = DMatrix::from_fn(r, r, |i, j| {
            if i == j {
                1.0
            } else {
                match cm.m(i, j) {
                    Label::Finite(2) => 0.0,
                    Label::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                    Label::Infinite => -1.0,
                }
            }
        });
        BilinearForm { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn pair(&self, u: &Vector, v: &Vector) -> f64 {
        u.dot(&(&self.gram * v))
    }

    pub fn simple(&self, s: Gen) -> Vector {
        let mut v = Vector::zeros(self.rank());
        v[s] = 1.0;
        v
    }

    /// `⟨α_s, v⟩`.
    pub fn pair_simple(&self, s: Gen, v: &Vector) -> f64 {
        self.gram.row(s).transpose().dot(v)
    }

    /// Action of the simple reflection `s` on `v`.
    pub fn reflect_simple(&self, s: Gen, v: &Vector) -> Vector {
        let mut out = v.clone();
        out[s] -= 2.0 * self.pair_simple(s, v);
        out
    }

    /// `s_γ·v = v − 2⟨γ,v⟩γ`; `γ` must be a unit vector.
    pub fn reflect(&self, gamma: &Vector, v: &Vector) -> Result<Vector> {
        let n = self.pair(gamma, gamma);
        // the norm is quadratic in the coefficients
        if (n - 1.0).abs() > TOL * scale(gamma).powi(2) {
            return Err(Error::Precondition(format!("reflection along a vector of norm {n}")));
        }
        Ok(v - gamma * (2.0 * self.pair(gamma, v)))
    }

    /// Action of the word `s_1 s_2 … s_k` (the rightmost letter acts first).
    pub fn act_word(&self, word: &[Gen], v: &Vector) -> Vector {
        word.iter()
            .rev()
            .fold(v.clone(), |acc, &s| self.reflect_simple(s, &acc))
    }

    /// Matrix of the word `s_1 … s_k` acting on coefficient vectors.
    pub fn word_matrix(&self, word: &[Gen]) -> DMatrix<f64> {
        let r = self.rank();
        let mut m = DMatrix::identity(r, r);
        for &s in word.iter().rev() {
            // left-multiply by the matrix of s: row s changes
            let row = self.gram.row(s) * &m;
            for j in 0..r {
                m[(s, j)] -= 2.0 * row[j];
            }
        }
        m
    }
}

/// Sign of a root: all coefficients nonnegative or all nonpositive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

/// The sign of `v` if its coefficients agree in sign up to tolerance.
pub fn sign(v: &Vector) -> Option<Sign> {
    let t = tol_for(v);
    let pos = v.iter().all(|&c| c >= -t);
    let neg = v.iter().all(|&c| c <= t);
    match (pos, neg) {
        (true, false) => Some(Sign::Positive),
        (false, true) => Some(Sign::Negative),
        _ => None,
    }
}

pub fn is_positive(v: &Vector) -> bool {
    sign(v) == Some(Sign::Positive)
}

/// Coefficientwise equality up to tolerance.
pub fn approx_eq(u: &Vector, v: &Vector) -> bool {
    u.len() == v.len() && (u - v).amax() <= TOL * (1.0 + u.amax().max(v.amax()))
}

/// A set of vectors deduplicated up to tolerance, kept in insertion order.
///
/// Lookups hash coefficients rounded to a grid of cell size `1e-6 · 2^e`,
/// where `2^e` bounds `1 + max|coeff|`, so the cell stays wider than the
/// tolerance however large roots grow. Coordinates close to a cell boundary
/// are also probed in the neighbouring cell, and neighbouring `e` are tried.
#[derive(Clone, Debug, Default)]
pub struct RootSet {
    items: Vec<Vector>,
    index: HashMap<(i32, Vec<i64>), Vec<usize>>,
}

impl RootSet {
    pub fn new() -> Self {
        RootSet::default()
    }

    fn exponent(v: &Vector) -> i32 {
        scale(v).log2().ceil().max(0.0) as i32
    }

    fn key(v: &Vector, e: i32) -> (i32, Vec<i64>) {
        let cell = GRID * 2f64.powi(e);
        (e, v.iter().map(|&c| (c / cell).round() as i64).collect())
    }

    fn candidate_keys(v: &Vector) -> Vec<(i32, Vec<i64>)> {
        let e0 = Self::exponent(v);
        let mut keys = Vec::new();
        for e in (e0 - 1).max(0)..=e0 + 1 {
            let cell = GRID * 2f64.powi(e);
            let t = tol_for(v) / cell;
            let first = keys.len();
            keys.push(Self::key(v, e));
            for (i, &c) in v.iter().enumerate() {
                let x = c / cell;
                let frac = x - x.floor();
                if (frac - 0.5).abs() > t {
                    continue;
                }
                let alt = if frac < 0.5 {
                    x.floor() as i64 + 1
                } else {
                    x.floor() as i64
                };
                for k in first..keys.len() {
                    let mut other = keys[k].clone();
                    if other.1[i] != alt {
                        other.1[i] = alt;
                        keys.push(other);
                    }
                }
            }
        }
        keys
    }

    /// Index of a stored vector equal to `v` up to tolerance.
    pub fn find(&self, v: &Vector) -> Option<usize> {
        Self::candidate_keys(v).iter().find_map(|k| {
            self.index
                .get(k)?
                .iter()
                .copied()
                .find(|&i| approx_eq(&self.items[i], v))
        })
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.find(v).is_some()
    }

    /// Inserts `v` unless an equal vector is present; returns its index and
    /// whether it was new.
    pub fn insert(&mut self, v: Vector) -> (usize, bool) {
        if let Some(i) = self.find(&v) {
            return (i, false);
        }
        let i = self.items.len();
        self.index.entry(Self::key(&v, Self::exponent(&v))).or_default().push(i);
        self.items.push(v);
        (i, true)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, i: usize) -> &Vector {
        &self.items[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vector> {
        self.items.iter()
    }

    pub fn into_vec(self) -> Vec<Vector> {
        self.items
    }
}

/// Result of a bounded enumeration.
///
/// `complete` is set only when the enumeration closed up before reaching
/// the depth bound, i.e. the root system is finite and fully listed.
#[derive(Clone, Debug)]
pub struct DepthLimited<T> {
    pub value: T,
    pub depth: usize,
    pub complete: bool,
}

/// All roots `w·α_s` with `ℓ(w) ≤ depth`, in breadth-first order.
pub fn enumerate_roots(cm: &CoxeterMatrix, depth: usize, cap: usize) -> Result<DepthLimited<Vec<Vector>>> {
    let form = BilinearForm::new(cm);
    let mut set = RootSet::new();
    let mut frontier = Vec::new();
    for s in cm.generators() {
        let (i, _) = set.insert(form.simple(s));
        frontier.push(i);
    }
    if set.len() > cap {
        return Err(Error::RootCap { cap });
    }
    let mut level = 0;
    while level < depth && !frontier.is_empty() {
        let images: Vec<Vector> = frontier
            .par_iter()
            .flat_map_iter(|&i| {
                let v = set.get(i);
                cm.generators().map(|s| form.reflect_simple(s, v)).collect::<Vec<_>>()
            })
            .collect();
        let mut next = Vec::new();
        for v in images {
            let (i, new) = set.insert(v);
            if new {
                next.push(i);
                if set.len() > cap {
                    return Err(Error::RootCap { cap });
                }
            }
        }
        frontier = next;
        level += 1;
    }
    Ok(DepthLimited {
        complete: frontier.is_empty(),
        value: set.into_vec(),
        depth,
    })
}

/// Positive enumerated roots orthogonal to `α_x`.
pub fn perp_positive_roots(cm: &CoxeterMatrix, x: Gen, depth: usize) -> Result<DepthLimited<Vec<Vector>>> {
    perp_positive_roots_capped(cm, x, depth, DEFAULT_ROOT_CAP)
}

pub fn perp_positive_roots_capped(
    cm: &CoxeterMatrix,
    x: Gen,
    depth: usize,
    cap: usize,
) -> Result<DepthLimited<Vec<Vector>>> {
    cm.check(x)?;
    let form = BilinearForm::new(cm);
    let all = enumerate_roots(cm, depth, cap)?;
    let value = all
        .value
        .into_iter()
        .filter(|v| is_positive(v) && form.pair_simple(x, v).abs() <= tol_for(v))
        .collect();
    Ok(DepthLimited {
        value,
        depth: all.depth,
        complete: all.complete,
    })
}

/// Roots of the canonical generators of `W^{⊥x}` visible at `depth`: the
/// perpendicular positive roots `γ` whose reflection keeps every other
/// perpendicular positive root positive.
///
/// With `complete == false` this is an upper bound for the candidates seen:
/// deeper enumeration can only remove members.
pub fn canonical_generators(cm: &CoxeterMatrix, x: Gen, depth: usize) -> Result<DepthLimited<Vec<Vector>>> {
    let perp = perp_positive_roots(cm, x, depth)?;
    let form = BilinearForm::new(cm);
    let roots = &perp.value;
    let keep: Vec<bool> = roots
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            roots
                .iter()
                .enumerate()
                .all(|(j, d)| i == j || is_positive(&(d - g * (2.0 * form.pair(g, d)))))
        })
        .collect();
    let value = roots
        .iter()
        .zip(keep)
        .filter(|&(_, k)| k)
        .map(|(g, _)| g.clone())
        .collect();
    Ok(DepthLimited {
        value,
        depth: perp.depth,
        complete: perp.complete,
    })
}

/// Order of an element, possibly infinite or not recognised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
    Unknown,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
            Order::Unknown => f.write_str("?"),
        }
    }
}

impl From<Label> for Order {
    fn from(l: Label) -> Self {
        match l {
            Label::Finite(m) => Order::Finite(m),
            Label::Infinite => Order::Infinite,
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(m) => s.serialize_u32(*m),
            Order::Infinite => s.serialize_str("inf"),
            Order::Unknown => s.serialize_str("unknown"),
        }
    }
}

/// Order of `s_γ s_δ`, recovered from the angle between the two roots.
pub fn order_of_product(form: &BilinearForm, gamma: &Vector, delta: &Vector, max_order: u32) -> Order {
    if approx_eq(gamma, delta) || approx_eq(gamma, &-delta) {
        return Order::Finite(1);
    }
    let c = form.pair(gamma, delta);
    let t = 1e-6;
    if c.abs() >= 1.0 - t {
        return Order::Infinite;
    }
    let theta = (-c).acos() / std::f64::consts::PI;
    for q in 2..=max_order.max(2) {
        let p = theta * q as f64;
        if (p - p.round()).abs() <= t * q as f64 && p.round() >= 1.0 {
            return Order::Finite(q);
        }
    }
    Order::Unknown
}
