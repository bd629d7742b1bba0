//! Small named Coxeter systems used throughout the tests and the `selftest`
//! subcommand.

use crate::coxeter::{CoxeterMatrix, Label};

const INF: Label = Label::Infinite;

fn build(names: &[&str], entries: &[(&str, &str, Label)]) -> CoxeterMatrix {
    CoxeterMatrix::from_entries(names.iter().copied(), entries).expect("fixture is well formed")
}

/// `A_3`: generators `1 2 3`, a path with labels 3.
pub fn a3() -> CoxeterMatrix {
    build(
        &["1", "2", "3"],
        &[("1", "2", Label::Finite(3)), ("2", "3", Label::Finite(3))],
    )
}

/// `I_2(4)` on `s t`.
pub fn b2() -> CoxeterMatrix {
    dihedral(4)
}

/// `I_2(m)` on `s t`.
pub fn dihedral(m: u32) -> CoxeterMatrix {
    build(&["s", "t"], &[("s", "t", Label::Finite(m))])
}

/// The diamond: apexes `y1, y2` commuting, rim `y3, y4` with `m = ∞`, and
/// every apex joined to every rim vertex by 3.
pub fn diamond() -> CoxeterMatrix {
    let three = Label::Finite(3);
    build(
        &["y1", "y2", "y3", "y4"],
        &[
            ("y1", "y3", three),
            ("y1", "y4", three),
            ("y2", "y3", three),
            ("y2", "y4", three),
            ("y3", "y4", INF),
        ],
    )
}

/// Odd triangle `a b c` with a fourth generator `d` commuting with `a` and
/// free against `b` and `c`.
pub fn g4() -> CoxeterMatrix {
    let three = Label::Finite(3);
    build(
        &["a", "b", "c", "d"],
        &[
            ("a", "b", three),
            ("b", "c", three),
            ("a", "c", three),
            ("b", "d", INF),
            ("c", "d", INF),
        ],
    )
}

/// Affine `Ã_{n-1}`: an `n`-cycle `y0 … y{n-1}` with labels 3, other pairs 2.
pub fn a_tilde(n: usize) -> CoxeterMatrix {
    let mut cm = CoxeterMatrix::new((0..n).map(|i| format!("y{i}"))).unwrap();
    for i in 0..n {
        let j = (i + 1) % n;
        if i != j {
            cm.set(i, j, Label::Finite(3)).unwrap();
        }
    }
    cm
}

/// Bipyramid over `rim` vertices: apexes `y1 y2` commuting, rim vertices
/// `r0 …` pairwise `∞`, each joined to both apexes by 3.
pub fn bipyramid(rim: usize) -> CoxeterMatrix {
    let mut names = vec!["y1".to_string(), "y2".to_string()];
    names.extend((0..rim).map(|i| format!("r{i}")));
    let mut cm = CoxeterMatrix::new(names).unwrap();
    for r in 2..rim + 2 {
        cm.set(0, r, Label::Finite(3)).unwrap();
        cm.set(1, r, Label::Finite(3)).unwrap();
        for t in r + 1..rim + 2 {
            cm.set(r, t, INF).unwrap();
        }
    }
    cm
}
