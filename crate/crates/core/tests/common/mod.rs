#![allow(dead_code)]

use coxeter_perp::{CoxeterMatrix, Graph, Label};
use rand::seq::SliceRandom;
use rand::Rng;

pub const LABELS: [Label; 6] = [
    Label::Finite(2),
    Label::Finite(3),
    Label::Finite(4),
    Label::Finite(5),
    Label::Finite(7),
    Label::Infinite,
];

/// Random matrix on `n` generators `g0 …`, labels drawn from [`LABELS`]
/// with extra weight on 2 and 3 so that odd cycles show up.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> CoxeterMatrix {
    let mut cm = CoxeterMatrix::numbered(n);
    for i in 0..n {
        for j in i + 1..n {
            let l = match rng.gen_range(0..10) {
                0..=2 => Label::Finite(2),
                3..=5 => Label::Finite(3),
                _ => *LABELS.choose(rng).unwrap(),
            };
            cm.set(i, j, l).unwrap();
        }
    }
    cm
}

/// Random connected graph on `n` vertices with at least one cycle.
pub fn random_cyclic_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    loop {
        let mut g = Graph::with_vertices(0..n);
        for v in 1..n {
            g.add_edge(v, rng.gen_range(0..v)).unwrap();
        }
        let extra = rng.gen_range(1..=3);
        for _ in 0..extra {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && !g.adjacent(a, b) {
                g.add_edge(a, b).unwrap();
            }
        }
        if g.has_cycle() {
            return g;
        }
    }
}

/// Random permutation of `0..n`.
pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
