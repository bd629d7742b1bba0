//! The line-oriented Coxeter matrix format.
//!
//! ```text
//! # comments run to the end of the line
//! gens a b c d
//! m a b 3
//! m b d inf
//! ```
//!
//! Pairs without an `m` line commute (`m = 2`).

use std::collections::BTreeMap;

use crate::coxeter::{CoxeterMatrix, Gen, Label};
use crate::error::{Error, Result};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_label(tok: &str, line: usize) -> Result<Label> {
    match tok {
        "inf" | "infinity" | "∞" => Ok(Label::Infinite),
        _ => {
            let m: u32 = tok.parse().map_err(|_| err(line, format!("`{tok}` is not a label")))?;
            if m < 2 {
                return Err(err(line, format!("off-diagonal label {m} is below 2")));
            }
            Ok(Label::Finite(m))
        }
    }
}

pub fn parse(text: &str) -> Result<CoxeterMatrix> {
    let mut names: Vec<String> = Vec::new();
    let mut entries: BTreeMap<(Gen, Gen), (Label, usize)> = BTreeMap::new();
    let mut pending: Vec<(usize, String, String, Label)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["gens", rest @ ..] => {
                if rest.is_empty() {
                    return Err(err(line, "`gens` needs at least one generator"));
                }
                for &g in rest {
                    if names.iter().any(|n| n == g) {
                        return Err(err(line, format!("generator `{g}` declared twice")));
                    }
                    if g.contains(',') {
                        return Err(err(line, format!("generator name `{g}` contains a comma")));
                    }
                    names.push(g.to_string());
                }
            }
            ["m", a, b, v] => {
                let label = parse_label(v, line)?;
                pending.push((line, a.to_string(), b.to_string(), label));
            }
            ["m", ..] => return Err(err(line, "expected `m <gen> <gen> <label>`")),
            [kw, ..] => return Err(err(line, format!("unknown directive `{kw}`"))),
        }
    }
    if names.is_empty() {
        return Err(err(0, "no `gens` line"));
    }
    let mut cm = CoxeterMatrix::new(names.clone()).map_err(|e| err(0, e.to_string()))?;
    for (line, a, b, label) in pending {
        let i = cm
            .index_of(&a)
            .map_err(|_| err(line, format!("unknown generator `{a}`")))?;
        let j = cm
            .index_of(&b)
            .map_err(|_| err(line, format!("unknown generator `{b}`")))?;
        if i == j {
            return Err(err(line, format!("diagonal entry for `{a}` is fixed to 1")));
        }
        let key = (i.min(j), i.max(j));
        if let Some(&(prev, at)) = entries.get(&key) {
            if prev != label {
                return Err(err(
                    line,
                    format!("m({a},{b}) = {label} conflicts with {prev} on line {at}"),
                ));
            }
            continue;
        }
        entries.insert(key, (label, line));
        cm.set(i, j, label).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(cm)
}

/// Text that [`parse`] reads back to `cm`.
pub fn render(cm: &CoxeterMatrix) -> String {
    let mut out = format!("gens {}\n", cm.names().join(" "));
    for s in cm.generators() {
        for t in s + 1..cm.rank() {
            if !cm.m(s, t).is(2) {
                out.push_str(&format!("m {} {} {}\n", cm.name(s), cm.name(t), cm.m(s, t)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    #[test]
    fn parse_examples() {
        let cm = parse("gens s t\nm s t 4").unwrap();
        assert_eq!(cm, b2());
        let cm = parse("gens a b c\nm a b 3\nm b c 3").unwrap();
        assert_eq!(cm.m(0, 2), Label::Finite(2));
        assert_eq!(cm.m(1, 2), Label::Finite(3));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse("gens a b\nm a b 1").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse("gens a b\n\nm a c 3").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse("gens a b\nm a b 3\nm b a 4").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse("gens a b\nfoo").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse("gens a b\nm a b").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse("gens a b\nm a b x").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(parse("# nothing").is_err());
        assert!(parse("gens a a").is_err());
        assert!(parse("gens a b\nm a a 3").is_err());
    }

    #[test]
    fn comments_and_repeats() {
        let cm = parse("# header\ngens a b # two\nm a b inf\nm b a inf  # same value again\n").unwrap();
        assert_eq!(cm.m(0, 1), Label::Infinite);
    }

    #[test]
    fn render_round_trips() {
        for cm in [a3(), b2(), diamond(), g4(), a_tilde(5), bipyramid(3)] {
            assert_eq!(parse(&render(&cm)).unwrap(), cm);
        }
    }
}
