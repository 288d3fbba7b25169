//! A∞-algebras as square-zero coderivations of `T^c A[1]`, and their cyclic
//! complex and cyclic homology.
//!
//! Structure maps are stored in the suspended convention: `m_k` has degree
//! `-1` as a map `A[1]^{⊗k} → A[1]`. An ordinary product is installed as
//! `m_2(sa, sb) = (-1)^{|a|} s(ab)` and a differential as `m_1(sa) = s(da)`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::coalgebra::{check_square_zero, Cochain, Coderivation, CoalgebraError, Flavor, SquareZero, Vector, WeightCap};
use crate::graded::{Element, GradedSpace, Word};
use crate::homology::{quotient_complex, BettiTable, ChainComplex, Homology, Quotient};
use crate::linalg::{SparseVector, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AInftyError {
    #[error("structure cochain must be of tensor flavor with degree -1")]
    NotAStructure,
    #[error("unit {0:?} must be a basis element of degree 0")]
    BadUnit(String),
    #[error("product is not associative: ({0} {1}) {2} ≠ {0} ({1} {2})")]
    NotAssociative(String, String, String),
    #[error("{0} is not a two-sided unit: fails against {1}")]
    NotUnital(String, String),
    #[error("d is not a derivation: d({0} {1}) ≠ d{0} {1} ± {0} d{1}")]
    NotLeibniz(String, String),
    #[error("d² ≠ 0 on {0}")]
    DSquared(String),
    #[error("operation {0} does not have the required degree")]
    Degree(String),
    #[error("{0} is not associative unital: it has operations other than a degree-0 product")]
    NotPlainAssociative(String),
    #[error("b² ≠ 0 on the cyclic complex in degree {0}")]
    NotSquareZero(usize),
    #[error("cap too small: no homological degree is free of truncation")]
    CapTooSmall,
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
}

/// A graded space with a tensor-flavor structure cochain `m` and an optional
/// strict unit.
#[derive(Debug, Clone)]
pub struct AInftyAlgebra {
    name: String,
    m: Cochain,
    unit: Option<u32>,
}

/// Products `a·b = Σ c x` of basis elements, in unsuspended form.
pub type ProductTable = Vec<((u32, u32), Vector)>;

impl AInftyAlgebra {
    pub fn new(name: impl Into<String>, m: Cochain, unit: Option<u32>) -> Result<Self, AInftyError> {
        if m.flavor() != Flavor::Tensor || m.parity() != -1 {
            return Err(AInftyError::NotAStructure);
        }
        if let Some(u) = unit {
            if u as usize >= m.space().dim() || m.space().degree(u as usize) != 0 {
                return Err(AInftyError::BadUnit(format!("#{u}")));
            }
        }
        Ok(Self {
            name: name.into(),
            m,
            unit,
        })
    }

    /// Installs an associative multiplication (checked, together with the
    /// unit when given).
    pub fn from_associative(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        mult: &ProductTable,
        unit: Option<u32>,
    ) -> Result<Self, AInftyError> {
        Self::from_dga(name, space, &[], mult, unit)
    }

    /// Installs a differential and a multiplication; checks associativity,
    /// the Leibniz rule, `d² = 0` and the unit.
    pub fn from_dga(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        d: &[(u32, Vector)],
        mult: &ProductTable,
        unit: Option<u32>,
    ) -> Result<Self, AInftyError> {
        let dense = DenseDga::new(&space, d, mult)?;
        dense.check(unit)?;
        let mut m = Cochain::new(space.clone(), Flavor::Tensor, -1);
        for (a, v) in d {
            m.add(&[*a], v)?;
        }
        for ((a, b), v) in mult {
            let sign = Scalar::sign(space.degree(*a as usize).rem_euclid(2) == 1);
            m.add(&[*a, *b], &v.scaled(&sign))?;
        }
        Self::new(name, m, unit)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.m.space()
    }

    pub fn m(&self) -> &Cochain {
        &self.m
    }

    pub fn unit(&self) -> Option<u32> {
        self.unit
    }

    pub fn coderivation(&self) -> Coderivation {
        Coderivation::new(self.m.clone())
    }

    /// True when only `m_2` is present and everything sits in degree 0.
    pub fn is_plain_associative(&self) -> bool {
        self.m.arities().all(|k| k == 2) && (0..self.space().dim()).all(|i| self.space().degree(i) == 0)
    }

    /// Unsuspended product `ab = (-1)^{|a|} m_2(sa, sb)`.
    pub fn product(&self, a: u32, b: u32) -> Vector {
        let sign = Scalar::sign(self.space().degree(a as usize).rem_euclid(2) == 1);
        self.m.eval(&[a, b]).scaled(&sign)
    }

    /// Strict unitality in the suspended convention: `m_2(1, a) = a`,
    /// `m_2(a, 1) = (-1)^{|a|} a`, and every other `m_k` vanishes as soon as
    /// one argument is the unit. Returns the first failing input.
    pub fn unit_violation(&self, max_arity: usize) -> Option<Word> {
        let u = self.unit?;
        let space = self.space();
        let n = space.dim() as u32;
        for a in 0..n {
            if self.m.eval(&[u, a]) != Vector::single(a, Scalar::one()) {
                return Some(vec![u, a]);
            }
            let sign = Scalar::sign(space.degree(a as usize).rem_euclid(2) == 1);
            if self.m.eval(&[a, u]) != Vector::single(a, sign) {
                return Some(vec![a, u]);
            }
        }
        if !self.m.eval(&[u]).is_zero() {
            return Some(vec![u]);
        }
        for k in self.m.arities().filter(|&k| k >= 3 && k <= max_arity) {
            for w in self.m.component_inputs(k) {
                if w.contains(&u) {
                    return Some(w);
                }
            }
        }
        None
    }
}

/// Result of [`check_stasheff`].
#[derive(Debug, Clone, PartialEq)]
pub enum StasheffOutcome {
    Certificate { cap: WeightCap, words_checked: usize },
    /// `δ_m²(word) = output ≠ 0`.
    Violation { word: Word, output: Element },
    /// The declared unit is not a strict unit; `word` is the failing input.
    UnitViolation { word: Word },
}

impl StasheffOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, StasheffOutcome::Certificate { .. })
    }
}

/// Evaluates `δ_m²` on every word inside `cap` (and the unit axioms when a
/// unit is declared).
pub fn check_stasheff(a: &AInftyAlgebra, cap: &WeightCap) -> StasheffOutcome {
    if let Some(word) = a.unit_violation(usize::MAX) {
        return StasheffOutcome::UnitViolation { word };
    }
    match check_square_zero(&a.coderivation(), cap) {
        SquareZero::Certificate { cap, words_checked } => StasheffOutcome::Certificate { cap, words_checked },
        SquareZero::Violation { word, output } => StasheffOutcome::Violation { word, output },
    }
}

/// Dense unsuspended multiplication and differential, for validating input
/// tables before they are converted.
struct DenseDga<'a> {
    space: &'a GradedSpace,
    d: HashMap<u32, Vector>,
    mult: HashMap<(u32, u32), Vector>,
}

impl<'a> DenseDga<'a> {
    fn new(space: &'a GradedSpace, d: &[(u32, Vector)], mult: &ProductTable) -> Result<Self, AInftyError> {
        let label = |i: u32| space.label(i as usize).to_string();
        let mut dm: HashMap<u32, Vector> = HashMap::new();
        for (a, v) in d {
            for (x, _) in v.iter() {
                if space.degree(*x as usize) != space.degree(*a as usize) - 1 {
                    return Err(AInftyError::Degree(format!("d({})", label(*a))));
                }
            }
            dm.entry(*a).or_default().add_scaled(v, &Scalar::one());
        }
        let mut mm: HashMap<(u32, u32), Vector> = HashMap::new();
        for ((a, b), v) in mult {
            for (x, _) in v.iter() {
                if space.degree(*x as usize) != space.degree(*a as usize) + space.degree(*b as usize) {
                    return Err(AInftyError::Degree(format!("{}·{}", label(*a), label(*b))));
                }
            }
            mm.entry((*a, *b)).or_default().add_scaled(v, &Scalar::one());
        }
        Ok(Self { space, d: dm, mult: mm })
    }

    fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (a, c) in x.iter() {
            for (b, e) in y.iter() {
                if let Some(v) = self.mult.get(&(*a, *b)) {
                    out.add_scaled(v, &(c * e));
                }
            }
        }
        out
    }

    fn diff(&self, x: &Vector) -> Vector {
        let mut out = Vector::new();
        for (a, c) in x.iter() {
            if let Some(v) = self.d.get(a) {
                out.add_scaled(v, c);
            }
        }
        out
    }

    fn check(&self, unit: Option<u32>) -> Result<(), AInftyError> {
        let n = self.space.dim() as u32;
        let e = |i: u32| Vector::single(i, Scalar::one());
        let label = |i: u32| self.space.label(i as usize).to_string();
        for a in 0..n {
            if !self.diff(&self.diff(&e(a))).is_zero() {
                return Err(AInftyError::DSquared(label(a)));
            }
            for b in 0..n {
                let ab = self.mul(&e(a), &e(b));
                let sign = Scalar::sign(self.space.degree(a as usize).rem_euclid(2) == 1);
                let mut leibniz = self.mul(&self.diff(&e(a)), &e(b));
                leibniz.add_scaled(&self.mul(&e(a), &self.diff(&e(b))), &sign);
                if self.diff(&ab) != leibniz {
                    return Err(AInftyError::NotLeibniz(label(a), label(b)));
                }
                for c in 0..n {
                    if self.mul(&ab, &e(c)) != self.mul(&e(a), &self.mul(&e(b), &e(c))) {
                        return Err(AInftyError::NotAssociative(label(a), label(b), label(c)));
                    }
                }
            }
        }
        if let Some(u) = unit {
            if u >= n || self.space.degree(u as usize) != 0 {
                return Err(AInftyError::BadUnit(format!("#{u}")));
            }
            for a in 0..n {
                if self.mul(&e(u), &e(a)) != e(a) || self.mul(&e(a), &e(u)) != e(a) {
                    return Err(AInftyError::NotUnital(label(u), label(a)));
                }
            }
        }
        Ok(())
    }
}

/// Signed cyclic rotation `λ(a_0,…,a_n) = ±(a_n, a_0,…,a_{n-1})`, with the
/// Koszul sign of moving `a_n` past the others (suspended degrees).
pub fn cyclic_lambda(space: &GradedSpace, w: &[u32]) -> (Word, Scalar) {
    let Some((&last, rest)) = w.split_last() else {
        return (Vec::new(), Scalar::one());
    };
    let odd = (space.suspended_degree(last as usize) * space.word_degree(rest)).rem_euclid(2) == 1;
    let mut out = Vec::with_capacity(w.len());
    out.push(last);
    out.extend_from_slice(rest);
    (out, Scalar::sign(odd))
}

/// The cyclic differential `b_m` on a word of `C_n = A[1]^{⊗(n+1)}`.
///
/// Segments not crossing the end are handled by the tensor coderivation
/// `δ_m`. A segment that starts at `a_j` (`j ≥ 1`) and wraps around is
/// brought to the front by the Koszul-signed rotation
/// `(a_j,…,a_n,a_0,…,a_{j-1})`, and `m_i` is applied to its first `i` letters.
pub fn cyclic_b(a: &AInftyAlgebra, w: &[u32]) -> Element {
    cyclic_b_with(&a.coderivation(), a.m(), w)
}

fn cyclic_b_with(delta: &Coderivation, m: &Cochain, w: &[u32]) -> Element {
    let space = m.space();
    // weight-0 outputs are not chains
    let mut out: Element = delta
        .apply_word(w)
        .iter()
        .filter(|(word, _)| !word.is_empty())
        .map(|(word, c)| (word.clone(), c.clone()))
        .collect();
    let len = w.len();
    for j in 1..len {
        let (head, tail) = w.split_at(j);
        let odd = (space.word_degree(head) * space.word_degree(tail)).rem_euclid(2) == 1;
        let sign = Scalar::sign(odd);
        let mut rot: Word = tail.to_vec();
        rot.extend_from_slice(head);
        for i in m.arities().filter(|&i| i > len - j && i <= len) {
            for (x, c) in m.eval(&rot[..i]).iter() {
                let mut word = Vec::with_capacity(len - i + 1);
                word.push(*x);
                word.extend_from_slice(&rot[i..]);
                out.add_term(word, c * &sign);
            }
        }
    }
    out
}

/// The truncated cyclic complex `C^λ`, graded by homological degree
/// `k = (total suspended degree) - 1`.
#[derive(Debug, Clone)]
pub struct CyclicComplex {
    /// Ambient words per homological degree.
    pub words: Vec<Vec<Word>>,
    /// `Im(1 - λ)` per degree and the induced quotient bases.
    pub quotients: Vec<Quotient>,
    /// `b_m` on the ambient words (images as coordinate vectors).
    pub ambient: Vec<Vec<SparseVector>>,
    pub complex: ChainComplex,
    /// Degrees whose chains were cut by the weight cap.
    pub truncated: Vec<bool>,
}

/// Words of exact total suspended degree `degree` and weight ≤ `max_weight`;
/// the flag reports whether longer words of that degree were dropped.
fn words_of_degree(space: &GradedSpace, degree: i64, max_weight: usize) -> (Vec<Word>, bool) {
    fn rec(space: &GradedSpace, left: i64, cur: &mut Word, max_w: usize, out: &mut Vec<Word>, cut: &mut bool) {
        if left == 0 && !cur.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..space.dim() as u32 {
            let d = space.suspended_degree(i as usize);
            if d > left {
                continue;
            }
            if cur.len() == max_w {
                *cut = true;
                return;
            }
            cur.push(i);
            rec(space, left - d, cur, max_w, out, cut);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cut = false;
    rec(space, degree, &mut Vec::new(), max_weight, &mut out, &mut cut);
    (out, cut)
}

/// Builds `C^λ` in homological degrees `0..=top`.
pub fn cyclic_complex(a: &AInftyAlgebra, top: usize, max_weight: usize) -> CyclicComplex {
    let space = a.space().clone();
    let delta = a.coderivation();
    let (words, truncated): (Vec<Vec<Word>>, Vec<bool>) = (0..=top)
        .map(|k| words_of_degree(&space, k as i64 + 1, max_weight))
        .unzip();
    let index: Vec<HashMap<&Word, usize>> = words
        .iter()
        .map(|ws| ws.iter().enumerate().map(|(i, w)| (w, i)).collect())
        .collect();
    let to_vector = |k: usize, e: &Element| -> SparseVector {
        SparseVector::from_pairs(e.iter().filter_map(|(w, c)| index[k].get(w).map(|i| (*i, c.clone()))))
    };
    let quotients: Vec<Quotient> = (0..=top)
        .into_par_iter()
        .map(|k| {
            let rels = words[k].iter().map(|w| {
                let (lw, s) = cyclic_lambda(&space, w);
                let mut e = Element::single(w.clone(), Scalar::one());
                e.add_term(lw, -s);
                to_vector(k, &e)
            });
            Quotient::new(Subspace::span(words[k].len(), rels))
        })
        .collect();
    let ambient: Vec<Vec<SparseVector>> = (0..=top)
        .into_par_iter()
        .map(|k| {
            words[k]
                .iter()
                .map(|w| {
                    if k == 0 {
                        SparseVector::new()
                    } else {
                        to_vector(k - 1, &cyclic_b_with(&delta, a.m(), w))
                    }
                })
                .collect()
        })
        .collect();
    let complex = quotient_complex(&ambient, &quotients);
    CyclicComplex {
        words,
        quotients,
        ambient,
        complex,
        truncated,
    }
}

impl CyclicComplex {
    pub fn homology(&self) -> Homology {
        self.complex.homology()
    }

    /// Degree `k` is exact when neither `C_k` nor `C_{k+1}` was truncated and
    /// `C_{k+1}` was built.
    pub fn is_exact(&self, k: usize) -> bool {
        k + 1 < self.words.len() && !self.truncated[k] && !self.truncated[k + 1]
    }
}

/// `HC_k(A, m)` for `k = 0..=cap.max_degree`. Chains are built through degree
/// `max_degree + 1`; degrees touched by the weight cap are flagged inexact.
pub fn cyclic_homology(a: &AInftyAlgebra, cap: &WeightCap) -> Result<BettiTable, AInftyError> {
    let top = cap.max_degree as usize;
    let cc = cyclic_complex(a, top + 1, cap.max_weight);
    if let Some((k, _)) = cc.complex.square_zero_violation() {
        return Err(AInftyError::NotSquareZero(k));
    }
    let dims = cc.homology().dims();
    let exact: Vec<bool> = (0..=top).map(|k| cc.is_exact(k)).collect();
    if !exact[0] {
        return Err(AInftyError::CapTooSmall);
    }
    Ok(BettiTable {
        dims: dims[..=top].to_vec(),
        exact,
        max_weight: cap.max_weight,
        max_degree: cap.max_degree,
    })
}
