//! L∞-algebras as square-zero coderivations of `Λ^c L`, their
//! Chevalley–Eilenberg complex, coinvariants under a degree-0 subalgebra,
//! derivations, and the coalgebra structure of the homology.
//!
//! Chains are canonical monomials of the coinvariant model, graded by total
//! suspended degree. For an ungraded `L` this is the exterior power degree.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::coalgebra::{
    bracket, check_square_zero, coproduct_sym, monomials_rec, Cochain, Coderivation, CoalgebraError, Flavor,
    SquareZero, Vector, WeightCap,
};
use crate::graded::{Element, GradedSpace, LinComb, Word};
use crate::homology::{quotient_complex, BettiTable, ChainComplex, Homology, Quotient};
use crate::linalg::{kernel_of_columns, SparseVector, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LInftyError {
    #[error("structure cochain must be of symmetric flavor with degree -1")]
    NotAStructure,
    #[error("bracket entry [{0}, {1}] is given twice")]
    DuplicateBracket(String, String),
    #[error("subalgebra element {0} does not lie in degree 0")]
    NotDegreeZero(usize),
    #[error("subalgebra element {0} has nonzero differential")]
    NotClosedUnderDifferential(usize),
    #[error("subalgebra is not closed under the bracket")]
    NotClosed,
    #[error("torus data is inconsistent: {0}")]
    Torus(String),
    #[error("δ² ≠ 0 on the Chevalley–Eilenberg complex in degree {0}")]
    NotSquareZero(usize),
    #[error("cap too small: no homological degree is free of truncation")]
    CapTooSmall,
    #[error("map does not send cycles to cycles in degree {0}")]
    NotAChainMap(usize),
    #[error("chain space in degree {degree} has {size} monomials, above the budget of {budget}")]
    Budget { degree: usize, size: usize, budget: usize },
    #[error("δ² ≠ 0, so the inner derivation is not a derivation")]
    InnerNotDerivation,
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
}

/// A graded space with a symmetric-flavor structure cochain `ℓ`.
#[derive(Debug, Clone)]
pub struct LInftyAlgebra {
    name: String,
    ell: Cochain,
}

impl LInftyAlgebra {
    pub fn new(name: impl Into<String>, ell: Cochain) -> Result<Self, LInftyError> {
        if ell.flavor() != Flavor::Symmetric || ell.parity() != -1 {
            return Err(LInftyError::NotAStructure);
        }
        Ok(Self { name: name.into(), ell })
    }

    /// A graded Lie algebra from unsuspended brackets `[x, y] = Σ c z`, one
    /// entry per unordered pair; installed as `ℓ_2(sx, sy) = (-1)^{|x|} s[x, y]`.
    pub fn from_lie(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        brackets: &[((u32, u32), Vector)],
    ) -> Result<Self, LInftyError> {
        let mut seen = BTreeSet::new();
        let mut ell = Cochain::new(space.clone(), Flavor::Symmetric, -1);
        for ((x, y), v) in brackets {
            if !seen.insert((*x.min(y), *x.max(y))) {
                return Err(LInftyError::DuplicateBracket(
                    space.label(*x as usize).into(),
                    space.label(*y as usize).into(),
                ));
            }
            let sign = Scalar::sign(space.degree(*x as usize).rem_euclid(2) == 1);
            ell.add(&[*x, *y], &v.scaled(&sign))?;
        }
        Self::new(name, ell)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.ell.space()
    }

    pub fn ell(&self) -> &Cochain {
        &self.ell
    }

    pub fn coderivation(&self) -> Coderivation {
        Coderivation::new(self.ell.clone())
    }

    /// `ℓ_2` extended bilinearly to vectors of `L[1]`.
    pub fn bracket2(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (a, c) in x.iter() {
            for (b, e) in y.iter() {
                out.add_scaled(&self.ell.eval(&[*a, *b]), &(c * e));
            }
        }
        out
    }

    /// The cochain `w ↦ ℓ_{k+1}(x, w)` (`k ≥ 1`) of the inner derivation of
    /// an element `x` of suspended degree 1.
    pub fn adjoint_cochain(&self, x: &Vector) -> Cochain {
        let space = self.space();
        let mut out = Cochain::new(space.clone(), Flavor::Symmetric, 0);
        let mut rests: BTreeSet<Word> = BTreeSet::new();
        for (input, _) in self.ell.canonical_table() {
            if input.len() < 2 {
                continue;
            }
            for (a, _) in x.iter() {
                if let Some(pos) = input.iter().position(|l| l == a) {
                    let mut rest = input.clone();
                    rest.remove(pos);
                    rests.insert(rest);
                }
            }
        }
        for rest in rests {
            let mut value = Vector::new();
            for (a, c) in x.iter() {
                let mut w = Vec::with_capacity(rest.len() + 1);
                w.push(*a);
                w.extend_from_slice(&rest);
                value.add_scaled(&self.ell.eval(&w), c);
            }
            if !value.is_zero() {
                out.add(&rest, &value).expect("adjoint action is homogeneous");
            }
        }
        out
    }
}

pub fn check_linfty(l: &LInftyAlgebra, cap: &WeightCap) -> SquareZero {
    check_square_zero(&l.coderivation(), cap)
}

/// A cochain certified to satisfy `[δ_ℓ, δ_d] = 0` inside a cap.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub cochain: Cochain,
    pub cap: WeightCap,
}

#[derive(Debug, Clone)]
pub enum DerivationOutcome {
    Derivation(Derivation),
    /// `[δ_ℓ, δ_d]` has this nonzero component on `word`.
    Violation { word: Word, value: Vector },
}

impl DerivationOutcome {
    pub fn is_derivation(&self) -> bool {
        matches!(self, DerivationOutcome::Derivation(_))
    }
}

pub fn check_derivation(l: &LInftyAlgebra, d: &Cochain, cap: &WeightCap) -> Result<DerivationOutcome, LInftyError> {
    let b = bracket(&l.coderivation(), &Coderivation::new(d.with_flavor(Flavor::Symmetric)), cap)?;
    Ok(match b.canonical_table().into_iter().next() {
        None => DerivationOutcome::Derivation(Derivation {
            cochain: d.with_flavor(Flavor::Symmetric),
            cap: *cap,
        }),
        Some((word, v)) => DerivationOutcome::Violation {
            word,
            value: v.into_iter().collect(),
        },
    })
}

/// The cochain of `[δ_ℓ, δ_{d'}]`, certified as a derivation.
pub fn make_inner(l: &LInftyAlgebra, d_prime: &Cochain, cap: &WeightCap) -> Result<Derivation, LInftyError> {
    let inner = bracket(&l.coderivation(), &Coderivation::new(d_prime.with_flavor(Flavor::Symmetric)), cap)?;
    match check_derivation(l, &inner, cap)? {
        DerivationOutcome::Derivation(d) => Ok(d),
        // [δ, [δ, x]] = [δ², x] vanishes whenever δ² does
        DerivationOutcome::Violation { .. } => Err(LInftyError::InnerNotDerivation),
    }
}

/// A degree-0 subalgebra `h ⊂ L` whose action is divided out.
#[derive(Debug, Clone)]
pub struct Coinvariants {
    /// Elements whose actions span `h·Λ^c L`: a basis of `h`, or Lie
    /// generators when a torus grading is supplied.
    generators: Vec<Vector>,
    torus: Option<Torus>,
}

/// Weights of a torus inside `h`: generator `toral[i]` acts on basis element
/// `b` by the scalar `weights[b][i]`, and every generator is a weight vector.
#[derive(Debug, Clone)]
pub struct Torus {
    pub weights: Vec<Vec<i64>>,
    pub toral: Vec<usize>,
}

impl Coinvariants {
    /// `h` spanned by `basis`; checks degree, `ℓ_1 = 0` on `h`, and closure
    /// under `ℓ_2`.
    pub fn subalgebra(l: &LInftyAlgebra, basis: Vec<Vector>) -> Result<Self, LInftyError> {
        Self::check_elements(l, &basis)?;
        let n = l.space().dim();
        let to_sparse = |v: &Vector| SparseVector::from_pairs(v.iter().map(|(i, c)| (*i as usize, c.clone())));
        let span = Subspace::span(n, basis.iter().map(to_sparse));
        for x in &basis {
            for y in &basis {
                if !span.contains(&to_sparse(&l.bracket2(x, y))) {
                    return Err(LInftyError::NotClosed);
                }
            }
        }
        Ok(Self {
            generators: basis,
            torus: None,
        })
    }

    /// `h` generated by `generators`, containing a torus described by
    /// `torus`; words of nonzero weight are then coinvariantly trivial and
    /// only weight-zero words are kept. The torus data is verified.
    pub fn with_torus(l: &LInftyAlgebra, generators: Vec<Vector>, torus: Torus) -> Result<Self, LInftyError> {
        Self::check_elements(l, &generators)?;
        let space = l.space();
        if torus.weights.len() != space.dim() {
            return Err(LInftyError::Torus("one weight per basis element is required".into()));
        }
        let rank = torus.weights.first().map_or(0, |w| w.len());
        if torus.toral.len() != rank || torus.toral.iter().any(|&t| t >= generators.len()) {
            return Err(LInftyError::Torus("toral generators do not match the weight rank".into()));
        }
        let weight_of = |v: &Vector| -> Option<Vec<i64>> {
            let mut ws = v.iter().map(|(i, _)| &torus.weights[*i as usize]);
            let first = ws.next()?.clone();
            ws.all(|w| *w == first).then_some(first)
        };
        for (gi, g) in generators.iter().enumerate() {
            let Some(alpha) = weight_of(g) else {
                return Err(LInftyError::Torus(format!("generator {gi} is not a weight vector")));
            };
            for b in 0..space.dim() as u32 {
                let image = l.bracket2(g, &Vector::single(b, Scalar::one()));
                if image.is_zero() {
                    continue;
                }
                let expected: Vec<i64> = alpha.iter().zip(&torus.weights[b as usize]).map(|(x, y)| x + y).collect();
                if weight_of(&image).as_ref() != Some(&expected) {
                    return Err(LInftyError::Torus(format!("generator {gi} does not shift weights")));
                }
            }
        }
        for (i, &t) in torus.toral.iter().enumerate() {
            for b in 0..space.dim() as u32 {
                let image = l.bracket2(&generators[t], &Vector::single(b, Scalar::one()));
                let expected = Vector::single(b, Scalar::from_int(torus.weights[b as usize][i]));
                if image != expected {
                    return Err(LInftyError::Torus(format!(
                        "toral generator {t} does not act by its weight on {}",
                        space.label(b as usize)
                    )));
                }
            }
        }
        // higher brackets with an element of h must also respect weights; this
        // holds whenever ℓ is weight-additive, which we check on the table
        for (input, out) in l.ell().canonical_table() {
            let mut w = vec![0i64; rank];
            for &x in &input {
                for (a, b) in w.iter_mut().zip(&torus.weights[x as usize]) {
                    *a += b;
                }
            }
            if out.iter().any(|(o, _)| torus.weights[*o as usize] != w) {
                return Err(LInftyError::Torus("structure maps are not weight-additive".into()));
            }
        }
        Ok(Self {
            generators,
            torus: Some(torus),
        })
    }

    fn check_elements(l: &LInftyAlgebra, elements: &[Vector]) -> Result<(), LInftyError> {
        for (i, x) in elements.iter().enumerate() {
            if x.iter().any(|(a, _)| l.space().degree(*a as usize) != 0) {
                return Err(LInftyError::NotDegreeZero(i));
            }
            let mut d = Vector::new();
            for (a, c) in x.iter() {
                d.add_scaled(&l.ell().eval(&[*a]), c);
            }
            if !d.is_zero() {
                return Err(LInftyError::NotClosedUnderDifferential(i));
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn torus(&self) -> Option<&Torus> {
        self.torus.as_ref()
    }
}

fn word_weight(torus: &Torus, w: &[u32]) -> Vec<i64> {
    let rank = torus.toral.len();
    let mut out = vec![0i64; rank];
    for &x in w {
        for (a, b) in out.iter_mut().zip(&torus.weights[x as usize]) {
            *a += b;
        }
    }
    out
}

/// Whether some monomial of exactly `degree` has weight above `max_weight`.
fn has_long_monomials(space: &GradedSpace, degree: i64, max_weight: usize) -> bool {
    if degree < 0 {
        return false;
    }
    let d = degree as usize;
    // reach[deg][wt]: a monomial of that degree and weight exists (weight capped at d)
    let mut reach = vec![vec![false; d + 1]; d + 1];
    reach[0][0] = true;
    for i in 0..space.dim() {
        let ld = space.suspended_degree(i);
        if ld <= 0 || ld as usize > d {
            continue;
        }
        let ld = ld as usize;
        let odd = space.is_odd(i);
        let prev = reach.clone();
        for deg in 0..=d {
            for wt in 0..=d {
                if !prev[deg][wt] {
                    continue;
                }
                let mut copies = 1;
                while deg + copies * ld <= d && wt + copies <= d {
                    reach[deg + copies * ld][wt + copies] = true;
                    if odd {
                        break;
                    }
                    copies += 1;
                }
            }
        }
    }
    (max_weight + 1..=d).any(|wt| reach[d][wt])
}

/// The truncated Chevalley–Eilenberg complex, optionally divided by the
/// action of a subalgebra.
#[derive(Debug, Clone)]
pub struct CeComplex {
    space: Arc<GradedSpace>,
    /// Ambient monomials per degree (weight zero only under a torus).
    pub words: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
    pub quotients: Vec<Quotient>,
    pub complex: ChainComplex,
    pub truncated: Vec<bool>,
    torus: Option<Torus>,
}

/// Builds the complex in degrees `0..=top`, words of weight ≤ `max_weight`.
pub fn ce_complex(
    l: &LInftyAlgebra,
    top: usize,
    max_weight: usize,
    coinvariants: Option<&Coinvariants>,
) -> Result<CeComplex, LInftyError> {
    ce_complex_with_budget(l, top, max_weight, coinvariants, None)
}

/// As [`ce_complex`], refusing degrees with more than `budget` monomials.
pub fn ce_complex_with_budget(
    l: &LInftyAlgebra,
    top: usize,
    max_weight: usize,
    coinvariants: Option<&Coinvariants>,
    budget: Option<usize>,
) -> Result<CeComplex, LInftyError> {
    let space = l.space().clone();
    let delta = l.coderivation();
    let torus = coinvariants.and_then(|c| c.torus.clone());
    let actions: Vec<(Coderivation, Option<Vec<i64>>)> = coinvariants
        .map(|c| {
            c.generators
                .iter()
                .enumerate()
                .filter(|(i, _)| torus.as_ref().map_or(true, |t| !t.toral.contains(i)))
                .map(|(_, g)| {
                    let weight = torus
                        .as_ref()
                        .map(|t| word_weight(t, &[g.iter().next().map(|(a, _)| *a).unwrap_or(0)]));
                    (Coderivation::new(l.adjoint_cochain(g)), weight)
                })
                .collect()
        })
        .unwrap_or_default();

    let per_degree: Vec<(Vec<Word>, Vec<SparseVector>, bool)> = (0..=top)
        .into_par_iter()
        .map(|k| {
            let mut all: Vec<Word> = Vec::new();
            monomials_rec(&space, 0, &mut Vec::new(), 0, max_weight, k as i64, &mut |w| {
                if space.word_degree(w) == k as i64 {
                    all.push(w.to_vec())
                }
            });
            if let Some(budget) = budget {
                if all.len() > budget {
                    return Err(LInftyError::Budget {
                        degree: k,
                        size: all.len(),
                        budget,
                    });
                }
            }
            let truncated = has_long_monomials(&space, k as i64, max_weight);
            let (kept, by_weight): (Vec<Word>, HashMap<Vec<i64>, Vec<Word>>) = match &torus {
                None => (all, HashMap::new()),
                Some(t) => {
                    let mut groups: HashMap<Vec<i64>, Vec<Word>> = HashMap::new();
                    for w in all {
                        groups.entry(word_weight(t, &w)).or_default().push(w);
                    }
                    let zero = vec![0i64; t.toral.len()];
                    (groups.remove(&zero).unwrap_or_default(), groups)
                }
            };
            let index: HashMap<&Word, usize> = kept.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let to_vec = |e: &Element| {
                SparseVector::from_pairs(e.iter().filter_map(|(w, c)| index.get(w).map(|i| (*i, c.clone()))))
            };
            let mut rels = Vec::new();
            for (act, weight) in &actions {
                let sources: Vec<&Word> = match weight {
                    None => kept.iter().collect(),
                    Some(alpha) => {
                        let neg: Vec<i64> = alpha.iter().map(|a| -a).collect();
                        by_weight.get(&neg).map(|ws| ws.iter().collect()).unwrap_or_default()
                    }
                };
                for w in sources {
                    let img = act.apply_word(w);
                    if !img.is_zero() {
                        rels.push(to_vec(&img));
                    }
                }
            }
            Ok((kept, rels, truncated))
        })
        .collect::<Result<_, _>>()?;

    let mut words = Vec::new();
    let mut quotients = Vec::new();
    let mut truncated = Vec::new();
    for (kept, rels, cut) in per_degree {
        quotients.push(Quotient::new(Subspace::span(kept.len(), rels)));
        words.push(kept);
        truncated.push(cut);
    }
    let index: Vec<HashMap<Word, usize>> = words
        .iter()
        .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
        .collect();
    let ambient: Vec<Vec<SparseVector>> = (0..=top)
        .into_par_iter()
        .map(|k| {
            words[k]
                .iter()
                .map(|w| {
                    if k == 0 {
                        return SparseVector::new();
                    }
                    let img = delta.apply_word(w);
                    SparseVector::from_pairs(
                        img.iter()
                            .filter_map(|(w2, c)| index[k - 1].get(w2).map(|i| (*i, c.clone()))),
                    )
                })
                .collect()
        })
        .collect();
    let complex = quotient_complex(&ambient, &quotients);
    Ok(CeComplex {
        space,
        words,
        index,
        quotients,
        complex,
        truncated,
        torus,
    })
}

impl CeComplex {
    pub fn top(&self) -> usize {
        self.words.len() - 1
    }

    pub fn is_exact(&self, k: usize) -> bool {
        k < self.top() && !self.truncated[k] && !self.truncated[k + 1]
    }

    /// Quotient coordinates of a chain of degree `k` given in monomials.
    /// Monomials of nonzero torus weight vanish in the coinvariants.
    pub fn project_element(&self, k: usize, e: &Element) -> SparseVector {
        let mut v = Vec::new();
        for (w, c) in e.iter() {
            match self.index[k].get(w) {
                Some(i) => v.push((*i, c.clone())),
                None => debug_assert!(
                    self.torus.as_ref().is_some_and(|t| word_weight(t, w).iter().any(|x| *x != 0))
                        || w.len() > self.words[k].iter().map(|x| x.len()).max().unwrap_or(0),
                    "chain {w:?} outside the complex"
                ),
            }
        }
        self.quotients[k].project(&SparseVector::from_pairs(v))
    }

    /// A monomial-level representative of a chain in quotient coordinates.
    pub fn lift(&self, k: usize, q: &SparseVector) -> Element {
        let amb = self.quotients[k].lift(q);
        amb.entries()
            .iter()
            .map(|(i, c)| (self.words[k][*i].clone(), c.clone()))
            .collect()
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }
}

/// Homology of a CE complex with representatives and its coalgebra structure.
#[derive(Debug, Clone)]
pub struct LieHomology {
    pub ce: CeComplex,
    pub homology: Homology,
    pub table: BettiTable,
}

/// Key `((p, i), (q, j))`: class `i` of `H_p` tensor class `j` of `H_q`.
pub type HTensor = LinComb<((usize, usize), (usize, usize))>;

pub fn lie_homology_full(
    l: &LInftyAlgebra,
    cap: &WeightCap,
    coinvariants: Option<&Coinvariants>,
) -> Result<LieHomology, LInftyError> {
    lie_homology_with_budget(l, cap, coinvariants, None)
}

pub fn lie_homology_with_budget(
    l: &LInftyAlgebra,
    cap: &WeightCap,
    coinvariants: Option<&Coinvariants>,
    budget: Option<usize>,
) -> Result<LieHomology, LInftyError> {
    let top = cap.max_degree as usize;
    let ce = ce_complex_with_budget(l, top + 1, cap.max_weight, coinvariants, budget)?;
    if let Some((k, _)) = ce.complex.square_zero_violation() {
        return Err(LInftyError::NotSquareZero(k));
    }
    let homology = ce.complex.homology();
    let exact: Vec<bool> = (0..=top).map(|k| ce.is_exact(k)).collect();
    if !exact[0] {
        return Err(LInftyError::CapTooSmall);
    }
    let table = BettiTable {
        dims: homology.dims()[..=top].to_vec(),
        exact,
        max_weight: cap.max_weight,
        max_degree: cap.max_degree,
    };
    Ok(LieHomology { ce, homology, table })
}

pub fn lie_homology(
    l: &LInftyAlgebra,
    cap: &WeightCap,
    coinvariants: Option<&Coinvariants>,
) -> Result<BettiTable, LInftyError> {
    Ok(lie_homology_full(l, cap, coinvariants)?.table)
}

impl LieHomology {
    pub fn max_degree(&self) -> usize {
        self.table.dims.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.homology.dim(k)
    }

    /// Monomial-level representative of class `i` in degree `k`.
    pub fn representative(&self, k: usize, i: usize) -> Element {
        self.ce.lift(k, self.homology.representative(k, i))
    }

    /// Class of a monomial-level cycle; `None` if it is not a cycle.
    pub fn class_of(&self, k: usize, z: &Element) -> Option<Vec<Scalar>> {
        self.homology.class_of(k, &self.ce.project_element(k, z))
    }

    /// Image of an arbitrary chain under the chain map `C_k → H_k`.
    pub fn project(&self, k: usize, e: &Element) -> Vec<Scalar> {
        self.homology.project(k, &self.ce.project_element(k, e))
    }

    /// `(π ⊗ π) Δ` applied to a monomial-level chain of degree `k`.
    pub fn coproduct_of_chain(&self, k: usize, z: &Element) -> HTensor {
        let space = self.ce.space().clone();
        let mut split: HashMap<(usize, usize), LinComb<(Word, Word)>> = HashMap::new();
        for (w, c) in z.iter() {
            let cop = coproduct_sym(&space, w).expect("representatives are canonical monomials");
            for ((a, b), x) in cop.iter() {
                let p = space.word_degree(a) as usize;
                let q = space.word_degree(b) as usize;
                debug_assert_eq!(p + q, k);
                split.entry((p, q)).or_default().add_term((a.clone(), b.clone()), c * x);
            }
        }
        let mut out = HTensor::new();
        for ((p, q), terms) in split {
            // group by left word, project right factors together
            let mut by_left: HashMap<Word, Element> = HashMap::new();
            for ((a, b), c) in terms.iter() {
                by_left.entry(a.clone()).or_default().add_term(b.clone(), c.clone());
            }
            let mut acc: HashMap<usize, Element> = HashMap::new();
            for (a, rights) in by_left {
                let pa = self.project(p, &Element::single(a, Scalar::one()));
                for (i, ca) in pa.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    acc.entry(i).or_default().add_scaled(&rights, ca);
                }
            }
            for (i, rights) in acc {
                for (j, cb) in self.project(q, &rights).into_iter().enumerate() {
                    if !cb.is_zero() {
                        out.add_term(((p, i), (q, j)), cb);
                    }
                }
            }
        }
        out
    }

    /// Coproduct of class `i` in degree `k`, counit terms included.
    pub fn coproduct(&self, k: usize, i: usize) -> HTensor {
        self.coproduct_of_chain(k, &self.representative(k, i))
    }

    /// Part of the coproduct in `H_p ⊗ H_q` with `p, q > 0`.
    pub fn reduced_coproduct(&self, k: usize, i: usize) -> HTensor {
        self.coproduct(k, i)
            .map_keys(|key| (key.0 .0 > 0 && key.1 .0 > 0).then(|| (key.clone(), Scalar::one())))
    }

    /// Primitive subspace of `H_k` (in class coordinates).
    pub fn primitives(&self, k: usize) -> Subspace {
        let n = self.dim(k);
        if k == 0 {
            return Subspace::zero(n);
        }
        let cols: Vec<HTensor> = (0..n).map(|i| self.reduced_coproduct(k, i)).collect();
        let mut keys: Vec<_> = cols.iter().flat_map(|c| c.iter().map(|(key, _)| key.clone())).collect();
        keys.sort();
        keys.dedup();
        let pos: HashMap<_, usize> = keys.iter().enumerate().map(|(i, key)| (key.clone(), i)).collect();
        let columns: Vec<SparseVector> = cols
            .iter()
            .map(|c| SparseVector::from_pairs(c.iter().map(|(key, x)| (pos[key], x.clone()))))
            .collect();
        kernel_of_columns(&columns)
    }

    pub fn primitive_dims(&self) -> Vec<usize> {
        (0..=self.max_degree()).map(|k| self.primitives(k).dim()).collect()
    }
}

/// Matrix (columns = images of classes) of the map induced on homology by a
/// derivation, per source degree.
#[derive(Debug, Clone)]
pub struct InducedMap {
    pub shift: i64,
    pub columns: Vec<(usize, Vec<Vec<Scalar>>)>,
}

impl InducedMap {
    pub fn is_zero(&self) -> bool {
        self.columns
            .iter()
            .all(|(_, cols)| cols.iter().all(|c| c.iter().all(|x| x.is_zero())))
    }
}

/// The map induced on `H_k` (`k ≤ cap.max_degree`) by a derivation.
pub fn induced_map(h: &LieHomology, d: &Derivation) -> Result<InducedMap, LInftyError> {
    let shift = d.cochain.parity();
    let coder = Coderivation::new(d.cochain.clone());
    let mut columns = Vec::new();
    for k in 0..=h.max_degree() {
        let target = k as i64 + shift;
        if target < 0 || target as usize > h.max_degree() {
            continue;
        }
        let target = target as usize;
        let mut cols = Vec::new();
        for i in 0..h.dim(k) {
            let img = coder.apply(&h.representative(k, i));
            let class = h.class_of(target, &img).ok_or(LInftyError::NotAChainMap(k))?;
            cols.push(class);
        }
        columns.push((k, cols));
    }
    Ok(InducedMap { shift, columns })
}

/// The induced map of the inner derivation `[δ_ℓ, δ_{d'}]` on `H_•(L)`.
pub fn inner_action_on_homology(
    l: &LInftyAlgebra,
    d_prime: &Cochain,
    cap: &WeightCap,
) -> Result<InducedMap, LInftyError> {
    let h = lie_homology_full(l, cap, None)?;
    let inner_cap = WeightCap::new(cap.max_weight, cap.max_degree + 1)?;
    let d = make_inner(l, d_prime, &inner_cap)?;
    induced_map(&h, &d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(i: u32) -> Vector {
        Vector::single(i, Scalar::one())
    }

    fn sl2() -> LInftyAlgebra {
        let space = Arc::new(GradedSpace::new([("e", 0), ("f", 0), ("h", 0)]).unwrap());
        let brackets = vec![
            ((0, 1), one(2)),
            ((2, 0), one(0).scaled(&Scalar::from_int(2))),
            ((2, 1), one(1).scaled(&Scalar::from_int(-2))),
        ];
        LInftyAlgebra::from_lie("sl2", space, &brackets).unwrap()
    }

    #[test]
    fn sl2_homology_and_primitives() {
        let l = sl2();
        let cap = WeightCap::new(4, 3).unwrap();
        assert!(check_linfty(&l, &cap).holds());
        let h = lie_homology_full(&l, &cap, None).unwrap();
        assert_eq!(h.table.dims, vec![1, 0, 0, 1]);
        assert_eq!(h.primitive_dims(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn non_jacobi_bracket_is_rejected() {
        let space = Arc::new(GradedSpace::new([("e", 0), ("f", 0), ("h", 0)]).unwrap());
        let brackets = vec![
            ((0, 1), one(2)),
            ((2, 0), one(0).scaled(&Scalar::from_int(-2))),
            ((2, 1), one(1).scaled(&Scalar::from_int(-2))),
        ];
        let l = LInftyAlgebra::from_lie("bad", space, &brackets).unwrap();
        match check_linfty(&l, &WeightCap::new(3, 3).unwrap()) {
            SquareZero::Violation { word, .. } => assert_eq!(word.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_dimensional_abelian() {
        let space = Arc::new(GradedSpace::new([("x", 0)]).unwrap());
        let l = LInftyAlgebra::new("ab", Cochain::new(space, Flavor::Symmetric, -1)).unwrap();
        let h = lie_homology_full(&l, &WeightCap::new(4, 3).unwrap(), None).unwrap();
        assert_eq!(h.table.dims, vec![1, 1, 0, 0]);
        assert_eq!(h.primitive_dims(), vec![0, 1, 0, 0]);
        let gl1 = Coinvariants::subalgebra(&l, vec![one(0)]).unwrap();
        assert_eq!(lie_homology(&l, &WeightCap::new(4, 3).unwrap(), Some(&gl1)).unwrap().dims, vec![1, 1, 0, 0]);
    }

    #[test]
    fn adjoint_action_is_a_derivation_and_sl2_coinvariants() {
        let l = sl2();
        let cap = WeightCap::new(4, 4).unwrap();
        for x in 0..3 {
            let d = l.adjoint_cochain(&one(x));
            assert!(check_derivation(&l, &d, &cap).unwrap().is_derivation());
        }
        let h = Coinvariants::subalgebra(&l, vec![one(0), one(1), one(2)]).unwrap();
        assert_eq!(lie_homology(&l, &WeightCap::new(4, 3).unwrap(), Some(&h)).unwrap().dims, vec![1, 0, 0, 1]);
        let torus = Torus {
            weights: vec![vec![2], vec![-2], vec![0]],
            toral: vec![2],
        };
        let ht = Coinvariants::with_torus(&l, vec![one(0), one(1), one(2)], torus).unwrap();
        assert_eq!(lie_homology(&l, &WeightCap::new(4, 3).unwrap(), Some(&ht)).unwrap().dims, vec![1, 0, 0, 1]);
    }

    #[test]
    fn inner_derivation_acts_trivially() {
        let l = sl2();
        let space = l.space().clone();
        let mut d = Cochain::new(space, Flavor::Symmetric, 0);
        d.add(&[0], &one(1).scaled(&Scalar::from_int(3))).unwrap();
        d.add(&[2], &one(2)).unwrap();
        let m = inner_action_on_homology(&l, &d, &WeightCap::new(4, 3).unwrap()).unwrap();
        assert!(m.is_zero());
        assert_eq!(m.shift, -1);
    }

    #[test]
    fn long_monomial_detection() {
        let space = GradedSpace::new([("a", 0), ("b", 1)]).unwrap();
        // suspended degrees 1 (odd) and 2 (even): degree 3 = a·b (weight 2) only
        assert!(!has_long_monomials(&space, 3, 2));
        assert!(has_long_monomials(&space, 3, 1));
        let ab = GradedSpace::new([("a", 0), ("c", 0)]).unwrap();
        assert!(has_long_monomials(&ab, 2, 1));
        assert!(!has_long_monomials(&ab, 3, 3));
    }
}
