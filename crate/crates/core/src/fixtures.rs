//! Shipped example algebras and sign-flip mutants.

use crate::ainfty::AInftyAlgebra;
use crate::document::{parse, AlgebraDocument, Structure};
use crate::linfty::LInftyAlgebra;

/// `(file name, contents)` of every shipped fixture.
pub const FILES: &[(&str, &str)] = &[
    ("K.alg", include_str!("../fixtures/K.alg")),
    ("dual.alg", include_str!("../fixtures/dual.alg")),
    ("upper.alg", include_str!("../fixtures/upper.alg")),
    ("sl2.alg", include_str!("../fixtures/sl2.alg")),
    ("gl2.alg", include_str!("../fixtures/gl2.alg")),
    ("dga.alg", include_str!("../fixtures/dga.alg")),
    ("m3.alg", include_str!("../fixtures/m3.alg")),
    ("nonassoc.alg", include_str!("../fixtures/nonassoc.alg")),
];

/// The fixtures that define valid structures.
pub const VALID: &[&str] = &["K", "dual", "upper", "sl2", "gl2", "dga", "m3"];

pub fn source(name: &str) -> &'static str {
    let file = format!("{name}.alg");
    FILES
        .iter()
        .find(|(f, _)| *f == file)
        .map(|(_, s)| *s)
        .unwrap_or_else(|| panic!("no fixture named {name}"))
}

pub fn document(name: &str) -> AlgebraDocument {
    parse(source(name)).unwrap_or_else(|d| panic!("fixture {name} is invalid: {d:?}"))
}

pub fn structure(name: &str) -> Structure {
    Structure::from_document(&document(name)).expect("fixture converts")
}

pub fn ainfty(name: &str) -> AInftyAlgebra {
    document(name).to_ainfty().expect("fixture is an A∞ document")
}

pub fn linfty(name: &str) -> LInftyAlgebra {
    document(name).to_linfty().expect("fixture is an L∞ document")
}

/// Positions `(op, term)` of every structure constant.
pub fn constants(doc: &AlgebraDocument) -> Vec<(usize, usize)> {
    doc.ops
        .iter()
        .enumerate()
        .flat_map(|(i, op)| (0..op.output.len()).map(move |j| (i, j)))
        .collect()
}

/// `doc` with the signs of the constants at `flips` reversed.
pub fn flip_signs(doc: &AlgebraDocument, flips: &[(usize, usize)]) -> AlgebraDocument {
    let mut out = doc.clone();
    for &(i, j) in flips {
        let c = &mut out.ops[i].output[j].0;
        *c = match c.strip_prefix('-') {
            Some(rest) => rest.to_string(),
            None => format!("-{c}"),
        };
    }
    out
}

/// All nonempty sign-flip mutants, ordered by the number of flipped
/// constants and then lexicographically; at most `limit` of them.
pub fn sign_flip_mutants(doc: &AlgebraDocument, limit: usize) -> Vec<(Vec<(usize, usize)>, AlgebraDocument)> {
    let cs = constants(doc);
    let mut out = Vec::new();
    for size in 1..=cs.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if out.len() == limit {
                return out;
            }
            let flips: Vec<(usize, usize)> = idx.iter().map(|&i| cs[i]).collect();
            out.push((flips.clone(), flip_signs(doc, &flips)));
            // next combination
            let Some(p) = (0..size).rev().find(|&p| idx[p] < cs.len() - size + p) else {
                break;
            };
            idx[p] += 1;
            for q in p + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::WeightCap;
    use crate::document::check;

    #[test]
    fn every_fixture_parses() {
        for (f, s) in FILES {
            assert!(parse(s).is_ok(), "{f}");
        }
    }

    #[test]
    fn valid_fixtures_check_and_nonassoc_fails() {
        let cap = WeightCap::new(4, 6).unwrap();
        for name in VALID {
            assert!(check(&structure(name), &cap).holds, "{name}");
        }
        let r = check(&structure("nonassoc"), &cap);
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().word.len(), 3);
    }

    #[test]
    fn mutant_enumeration() {
        let doc = document("sl2");
        let all = sign_flip_mutants(&doc, usize::MAX);
        assert_eq!(all.len(), 7);
        assert_eq!(all[0].0, vec![(0, 0)]);
        assert_eq!(all[6].0.len(), 3);
        assert_eq!(flip_signs(&all[6].1, &all[6].0), doc);
        assert_eq!(sign_flip_mutants(&document("K"), 5).len(), 1);
    }
}
