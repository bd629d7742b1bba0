//! Coxeter matrices and the graphs and vertex sets derived from them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{connected_component, Graph, Vertex, VertexSet};

/// A generator, identified by its position in [`CoxeterMatrix::names`].
pub type Gen = Vertex;
pub type GenSet = VertexSet;

/// An entry `m(s,t)` of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn is_finite(self) -> bool {
        matches!(self, Label::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    /// Finite and even.
    pub fn is_even(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 0)
    }

    /// Finite, odd and at least 3: the labels kept in the odd Coxeter graph.
    pub fn is_odd_edge(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1 && m >= 3)
    }

    pub fn is(self, m: u32) -> bool {
        self == Label::Finite(m)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

/// A Coxeter matrix over a finite, ordered set of named generators.
///
/// Off-diagonal entries default to 2 and the matrix is symmetric by
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    names: Vec<String>,
    entries: Vec<Label>,
}

impl CoxeterMatrix {
    /// All off-diagonal entries set to 2.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == ',') {
                return Err(Error::InvalidEntry(format!("bad generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidEntry(format!("duplicate generator `{n}`")));
            }
        }
        let r = names.len();
        let mut entries = vec![Label::Finite(2); r * r];
        for i in 0..r {
            entries[i * r + i] = Label::Finite(1);
        }
        Ok(CoxeterMatrix { names, entries })
    }

    /// Builds a matrix from named entries; unspecified pairs are 2.
    pub fn from_entries<I, S>(names: I, entries: &[(&str, &str, Label)]) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut cm = CoxeterMatrix::new(names)?;
        for &(a, b, m) in entries {
            let (i, j) = (cm.index_of(a)?, cm.index_of(b)?);
            cm.set(i, j, m)?;
        }
        Ok(cm)
    }

    /// Rank-`n` matrix with generators named `0..n`.
    pub fn numbered(n: usize) -> Self {
        CoxeterMatrix::new((0..n).map(|i| i.to_string())).unwrap()
    }

    pub fn set(&mut self, i: Gen, j: Gen, m: Label) -> Result<()> {
        let r = self.rank();
        if i >= r {
            return Err(Error::UnknownVertex(i));
        }
        if j >= r {
            return Err(Error::UnknownVertex(j));
        }
        if i == j {
            return Err(Error::InvalidEntry(format!(
                "diagonal entry for `{}` is fixed to 1",
                self.names[i]
            )));
        }
        if let Label::Finite(v) = m {
            if v < 2 {
                return Err(Error::InvalidEntry(format!(
                    "m({},{}) = {v} but off-diagonal entries must be at least 2",
                    self.names[i], self.names[j]
                )));
            }
        }
        self.entries[i * r + j] = m;
        self.entries[j * r + i] = m;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> std::ops::Range<Gen> {
        0..self.rank()
    }

    pub fn all(&self) -> GenSet {
        self.generators().collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Gen) -> &str {
        &self.names[s]
    }

    pub fn index_of(&self, name: &str) -> Result<Gen> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn check(&self, s: Gen) -> Result<Gen> {
        if s < self.rank() {
            Ok(s)
        } else {
            Err(Error::UnknownVertex(s))
        }
    }

    pub fn check_set(&self, set: &GenSet) -> Result<()> {
        set.iter().try_for_each(|&s| self.check(s).map(|_| ()))
    }

    pub fn m(&self, s: Gen, t: Gen) -> Label {
        self.entries[s * self.rank() + t]
    }

    /// Largest finite label, or 2 if there is none.
    pub fn max_finite_label(&self) -> u32 {
        self.entries.iter().filter_map(|l| l.finite()).max().unwrap_or(2).max(2)
    }

    pub fn names_of<'a, I: IntoIterator<Item = &'a Gen>>(&self, set: I) -> Vec<String> {
        set.into_iter().map(|&s| self.names[s].clone()).collect()
    }

    /// The same system with generator `i` renamed to position `perm[i]`.
    pub fn permuted(&self, perm: &[Gen]) -> Result<Self> {
        let r = self.rank();
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Precondition("not a permutation".into()));
        }
        let mut names = vec![String::new(); r];
        for i in 0..r {
            names[perm[i]] = self.names[i].clone();
        }
        let mut out = CoxeterMatrix::new(names)?;
        for i in 0..r {
            for j in i + 1..r {
                out.set(perm[i], perm[j], self.m(i, j))?;
            }
        }
        Ok(out)
    }

    /// Restriction to the generators in `set` (the parabolic subsystem),
    /// with positions renumbered in increasing order.
    pub fn restricted(&self, set: &GenSet) -> Result<(Self, Vec<Gen>)> {
        self.check_set(set)?;
        let kept: Vec<Gen> = set.iter().copied().collect();
        let mut out = CoxeterMatrix::new(kept.iter().map(|&s| self.names[s].clone()))?;
        for (a, &s) in kept.iter().enumerate() {
            for (b, &t) in kept.iter().enumerate().skip(a + 1) {
                out.set(a, b, self.m(s, t))?;
            }
        }
        Ok((out, kept))
    }

    /// The Coxeter graph: an edge wherever `m ≥ 3`, including `∞`.
    pub fn coxeter_graph(&self) -> Graph {
        let mut g = Graph::with_vertices(self.generators());
        for s in self.generators() {
            for t in s + 1..self.rank() {
                if self.m(s, t) != Label::Finite(2) {
                    g.add_edge(s, t).unwrap();
                }
            }
        }
        g
    }

    /// The odd Coxeter graph on `set`: edges exactly where `m` is odd and
    /// at least 3.
    pub fn odd_graph(&self, set: &GenSet) -> Result<Graph> {
        self.check_set(set)?;
        let mut g = Graph::with_vertices(set.iter().copied());
        for &s in set {
            for &t in set.range(s + 1..) {
                if self.m(s, t).is_odd_edge() {
                    g.add_edge(s, t)?;
                }
            }
        }
        Ok(g)
    }

    /// The vertex set `O` of the odd-graph component containing `x`.
    pub fn odd_component(&self, x: Gen) -> Result<GenSet> {
        self.check(x)?;
        connected_component(&self.odd_graph(&self.all())?, x)
    }

    /// The sets `O`, `E` and `O₂(s)` attached to `x`.
    pub fn outer_sets(&self, x: Gen) -> Result<OuterSets> {
        let odd = self.odd_component(x)?;
        let outer: GenSet = self
            .generators()
            .filter(|s| !odd.contains(s))
            .filter(|&s| odd.iter().any(|&y| self.m(y, s).is_finite()))
            .collect();
        for &s in self
            .generators()
            .filter(|s| !odd.contains(s))
            .collect::<Vec<_>>()
            .iter()
        {
            for &y in &odd {
                let m = self.m(y, s);
                if !(m.is_even() || m == Label::Infinite) {
                    return Err(Error::Inconsistency(format!(
                        "m({},{}) = {m} is odd across the odd component boundary",
                        self.name(y),
                        self.name(s)
                    )));
                }
            }
        }
        let o2 = outer
            .iter()
            .map(|&s| {
                let set = odd.iter().copied().filter(|&y| self.m(y, s).is(2)).collect();
                (s, set)
            })
            .collect();
        Ok(OuterSets { odd, outer, o2 })
    }

    /// Whether `Γ` restricted to `k` is an `n`-cycle (`n = |k| ≥ 3`) with
    /// every cycle edge labelled 3 and all other pairs labelled 2.
    pub fn is_type_a_tilde(&self, k: &GenSet) -> bool {
        if k.len() < 3 || self.check_set(k).is_err() {
            return false;
        }
        let mut g = Graph::with_vertices(k.iter().copied());
        for &s in k {
            for &t in k.range(s + 1..) {
                match self.m(s, t) {
                    Label::Finite(2) => {}
                    Label::Finite(3) => g.add_edge(s, t).unwrap(),
                    _ => return false,
                }
            }
        }
        g.is_connected() && k.iter().all(|&s| g.degree(s) == 2)
    }

    /// If `k` (with `|k| ≥ 4`) is a bipyramid, its apex pair `(y1, y2)`:
    /// `m(y1,y2) = 2`, both apexes joined by 3 to every other vertex, and
    /// the other vertices pairwise `∞`.
    pub fn bipyramid_apexes(&self, k: &GenSet) -> Option<(Gen, Gen)> {
        if k.len() < 4 || self.check_set(k).is_err() {
            return None;
        }
        let found: Vec<(Gen, Gen)> = k
            .iter()
            .flat_map(|&a| k.range(a + 1..).map(move |&b| (a, b)))
            .filter(|&(a, b)| self.m(a, b).is(2))
            .filter(|&(a, b)| {
                let rim: Vec<Gen> = k.iter().copied().filter(|&s| s != a && s != b).collect();
                rim.iter().all(|&s| self.m(a, s).is(3) && self.m(b, s).is(3))
                    && rim
                        .iter()
                        .enumerate()
                        .all(|(i, &s)| rim[i + 1..].iter().all(|&t| self.m(s, t) == Label::Infinite))
            })
            .collect();
        match found.as_slice() {
            [pair] => Some(*pair),
            _ => None,
        }
    }

    /// Even pairs `{y, z}` inside `set`, in lexicographic order.
    pub fn even_pairs(&self, set: &GenSet) -> Vec<(Gen, Gen)> {
        set.iter()
            .flat_map(|&a| set.range(a + 1..).map(move |&b| (a, b)))
            .filter(|&(a, b)| self.m(a, b).is_even())
            .collect()
    }
}

/// The sets attached to a generator `x`: its odd component `O`, the set
/// `E` of outside generators joined to `O` by a finite label, and for each
/// `s ∈ E` the set `O₂(s)` of `y ∈ O` commuting with `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterSets {
    pub odd: GenSet,
    pub outer: GenSet,
    pub o2: BTreeMap<Gen, GenSet>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    #[test]
    fn labels() {
        assert!(Label::Finite(3).is_odd_edge());
        assert!(!Label::Finite(4).is_odd_edge());
        assert!(!Label::Infinite.is_odd_edge());
        assert!(Label::Finite(2).is_even());
        assert!(!Label::Infinite.is_even());
    }

    #[test]
    fn construction_errors() {
        let mut cm = CoxeterMatrix::numbered(2);
        assert!(cm.set(0, 1, Label::Finite(1)).is_err());
        assert!(cm.set(0, 0, Label::Finite(3)).is_err());
        assert!(cm.set(0, 2, Label::Finite(3)).is_err());
        assert!(CoxeterMatrix::new(["a", "a"]).is_err());
        assert!(CoxeterMatrix::new(["a b"]).is_err());
        assert_eq!(cm.index_of("z"), Err(Error::UnknownGenerator("z".into())));
    }

    #[test]
    fn odd_graph_examples() {
        let g = a3().odd_graph(&a3().all()).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let g = b2().odd_graph(&b2().all()).unwrap();
        assert_eq!(g.edge_count(), 0);
        let d = diamond();
        let g = d.odd_graph(&d.all()).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.vertices().all(|v| g.degree(v) == 2));
    }

    #[test]
    fn odd_component_examples() {
        assert_eq!(a3().odd_component(0).unwrap(), GenSet::from([0, 1, 2]));
        assert_eq!(b2().odd_component(0).unwrap(), GenSet::from([0]));
        assert_eq!(g4().odd_component(0).unwrap(), GenSet::from([0, 1, 2]));
        assert!(a3().odd_component(7).is_err());
    }

    #[test]
    fn outer_sets_examples() {
        let o = g4().outer_sets(0).unwrap();
        assert_eq!(o.odd, GenSet::from([0, 1, 2]));
        assert_eq!(o.outer, GenSet::from([3]));
        assert_eq!(o.o2[&3], GenSet::from([0]));

        let o = b2().outer_sets(0).unwrap();
        assert_eq!(o.odd, GenSet::from([0]));
        assert_eq!(o.outer, GenSet::from([1]));
        assert!(o.o2[&1].is_empty());

        let o = a3().outer_sets(0).unwrap();
        assert!(o.outer.is_empty());
    }

    #[test]
    fn type_a_tilde_examples() {
        assert!(a_tilde(4).is_type_a_tilde(&(0..4).collect()));
        assert!(!diamond().is_type_a_tilde(&(0..4).collect()));
        assert!(!a3().is_type_a_tilde(&(0..3).collect()));
        assert!(a_tilde(3).is_type_a_tilde(&(0..3).collect()));
    }

    #[test]
    fn bipyramid_examples() {
        assert_eq!(diamond().bipyramid_apexes(&(0..4).collect()), Some((0, 1)));
        assert_eq!(a_tilde(4).bipyramid_apexes(&(0..4).collect()), None);
        assert_eq!(bipyramid(3).bipyramid_apexes(&(0..5).collect()), Some((0, 1)));
        assert_eq!(a3().bipyramid_apexes(&(0..3).collect()), None);
    }

    #[test]
    fn permuted_and_restricted() {
        let cm = g4();
        let p = cm.permuted(&[3, 2, 1, 0]).unwrap();
        assert_eq!(p.m(3, 0), Label::Finite(2));
        assert_eq!(p.m(0, 2), Label::Infinite);
        assert_eq!(p.name(3), cm.name(0));
        let (r, kept) = cm.restricted(&GenSet::from([1, 2, 3])).unwrap();
        assert_eq!(kept, vec![1, 2, 3]);
        assert_eq!(r.m(1, 2), Label::Infinite);
        assert!(cm.permuted(&[0, 0, 1, 2]).is_err());
    }
}
