//! New algebras from old: Lie-ification, tensoring with an associative
//! algebra, matrices `M_n(A)` and `gl_n(A)`, corner inclusions, the
//! interleaved block sum, and the trace.

use std::sync::Arc;

use crate::ainfty::{AInftyAlgebra, AInftyError};
use crate::coalgebra::{Cochain, Coderivation, Flavor, Vector, WeightCap};
use crate::graded::{symmetrizer_sum, Element, GradedSpace};
use crate::linalg::{SparseVector, Subspace};
use crate::linfty::{Coinvariants, LInftyAlgebra, LInftyError, Torus};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error("{0} must be an associative algebra concentrated in degree 0")]
    NotPlainAssociative(String),
    #[error("{0} has no unit, so gl_n(K) does not embed")]
    NoUnit(String),
    #[error("matrix size must be at least 1")]
    ZeroSize,
    #[error(transparent)]
    AInfty(#[from] AInftyError),
    #[error(transparent)]
    LInfty(#[from] LInftyError),
    #[error(transparent)]
    Coalgebra(#[from] crate::coalgebra::CoalgebraError),
}

/// `∏ r_i!` over runs of repeated letters of a word.
fn repetition_factor(w: &[u32]) -> i64 {
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    let mut out = 1i64;
    let mut run = 1i64;
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            run += 1;
            out *= run;
        } else {
            run = 1;
        }
    }
    out
}

/// The L∞ structure `ℓ_k(v) = Σ_σ ε m_k(σ v)` on the same space: the
/// weight-one part of `δ_m` transported along `[w] ↦ Σ_σ σ(w)`.
///
/// Each stored `m_k(u)` contributes to the monomial class of `u`, counted
/// once per permutation fixing `u`.
pub fn lie_ify(a: &AInftyAlgebra) -> LInftyAlgebra {
    let space = a.space().clone();
    let mut ell = Cochain::new(space.clone(), Flavor::Symmetric, -1);
    for (u, v) in a.m().canonical_table() {
        if crate::graded::canonical_monomial(&space, &u).is_none() {
            // repeated odd letter: the permutation sum cancels
            continue;
        }
        let v: Vector = v.into_iter().collect();
        ell.add(&u, &v.scaled(&Scalar::from_int(repetition_factor(&u))))
            .expect("same degrees as m");
    }
    LInftyAlgebra::new(format!("{}^Lie", a.name()), ell).expect("symmetric cochain of degree -1")
}

/// Lie-ification computed through the coalgebras: for every monomial `w` of
/// weight ≤ `max_arity`, `ℓ(w)` is the weight-one part of `δ_m(Σ_σ σ(w))`.
/// Slow; serves as a cross-check of [`lie_ify`].
pub fn lie_ify_via_coalgebra(a: &AInftyAlgebra, max_arity: usize, max_degree: i64) -> LInftyAlgebra {
    let space = a.space().clone();
    let delta = a.coderivation();
    let mut ell = Cochain::new(space.clone(), Flavor::Symmetric, -1);
    let cap = WeightCap::new(max_arity.max(1), max_degree).expect("valid cap");
    for w in cap.monomials(&space).into_iter().filter(|w| !w.is_empty()) {
        let image = delta.apply(&symmetrizer_sum(&space, &w));
        let value: Vector = image
            .iter()
            .filter(|(word, _)| word.len() == 1)
            .map(|(word, c)| (word[0], c.clone()))
            .collect();
        if !value.is_zero() {
            ell.add(&w, &value).expect("homogeneous");
        }
    }
    LInftyAlgebra::new(format!("{}^Lie", a.name()), ell).expect("symmetric cochain of degree -1")
}

/// `M_n(K)` with basis `e{i},{j}` (1-based) and `e_ij e_jk = e_ik`.
pub fn matrix_units(n: usize) -> Result<AInftyAlgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::ZeroSize);
    }
    let space = Arc::new(
        GradedSpace::new((0..n).flat_map(|i| (0..n).map(move |j| (format!("e{},{}", i + 1, j + 1), 0))))
            .expect("distinct labels"),
    );
    let idx = |i: usize, j: usize| (i * n + j) as u32;
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                mult.push(((idx(i, j), idx(j, k)), Vector::single(idx(i, k), Scalar::one())));
            }
        }
    }
    let unit = (n == 1).then_some(0);
    Ok(AInftyAlgebra::from_associative(format!("M{n}(K)"), space, &mult, unit)?)
}

/// `A ⊗ B` for an associative algebra `B` in degree 0:
/// `m'_k(a_1⊗b_1, …, a_k⊗b_k) = m_k(a_1,…,a_k) ⊗ b_1⋯b_k`.
/// Basis element `a ⊗ b` has index `b · dim A + a`.
pub fn tensor_with_associative(a: &AInftyAlgebra, b: &AInftyAlgebra) -> Result<AInftyAlgebra, ConstructionError> {
    if !b.is_plain_associative() {
        return Err(ConstructionError::NotPlainAssociative(b.name().to_string()));
    }
    let (sa, sb) = (a.space(), b.space());
    let da = sa.dim();
    let space = Arc::new(
        GradedSpace::new(
            (0..sb.dim()).flat_map(|j| (0..da).map(move |i| (format!("{}⊗{}", sa.label(i), sb.label(j)), sa.degree(i)))),
        )
        .expect("distinct labels"),
    );
    let letter = |x: u32, y: u32| y * da as u32 + x;
    let mut m = Cochain::new(space.clone(), Flavor::Tensor, -1);
    for (u, v) in a.m().canonical_table() {
        let v: Vector = v.into_iter().collect();
        // every tuple (b_1, …, b_k) with its product
        let mut partial: Vec<(Vec<u32>, Vector)> = (0..sb.dim() as u32)
            .map(|y| (vec![y], Vector::single(y, Scalar::one())))
            .collect();
        for _ in 1..u.len() {
            let mut next = Vec::new();
            for (ys, prod) in &partial {
                for y in 0..sb.dim() as u32 {
                    let mut p = Vector::new();
                    for (z, c) in prod.iter() {
                        p.add_scaled(&b.product(*z, y), c);
                    }
                    if !p.is_zero() {
                        let mut ys2 = ys.clone();
                        ys2.push(y);
                        next.push((ys2, p));
                    }
                }
            }
            partial = next;
        }
        for (ys, prod) in partial {
            let input: Vec<u32> = u.iter().zip(&ys).map(|(x, y)| letter(*x, *y)).collect();
            let mut value = Vector::new();
            for (x, c) in v.iter() {
                for (y, e) in prod.iter() {
                    value.add_term(letter(*x, *y), c * e);
                }
            }
            m.add(&input, &value)?;
        }
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(x), Some(y)) => Some(letter(x, y)),
        _ => None,
    };
    Ok(AInftyAlgebra::new(format!("{}⊗{}", a.name(), b.name()), m, unit)?)
}

/// `M_n(A)` together with its index bookkeeping.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    pub base: AInftyAlgebra,
    pub n: usize,
    pub algebra: AInftyAlgebra,
}

impl MatrixAlgebra {
    pub fn dim_base(&self) -> usize {
        self.base.space().dim()
    }

    /// Index of `E_ij ⊗ a` (0-based `i`, `j`).
    pub fn letter(&self, a: u32, i: usize, j: usize) -> u32 {
        matrix_letter(self.dim_base(), self.n, a, i, j)
    }

    /// `(a, i, j)` of a basis index.
    pub fn decode(&self, x: u32) -> (u32, usize, usize) {
        let da = self.dim_base() as u32;
        let (a, ij) = (x % da, (x / da) as usize);
        (a, ij / self.n, ij % self.n)
    }
}

fn matrix_letter(dim_a: usize, n: usize, a: u32, i: usize, j: usize) -> u32 {
    ((i * n + j) * dim_a) as u32 + a
}

pub fn matrix_algebra(a: &AInftyAlgebra, n: usize) -> Result<MatrixAlgebra, ConstructionError> {
    let mut algebra = tensor_with_associative(a, &matrix_units(n)?)?;
    if n == 1 {
        // M_1(A) is A; keep its unit
        algebra = AInftyAlgebra::new(format!("M1({})", a.name()), algebra.m().clone(), a.unit())?;
    } else {
        algebra = AInftyAlgebra::new(format!("M{n}({})", a.name()), algebra.m().clone(), None)?;
    }
    Ok(MatrixAlgebra {
        base: a.clone(),
        n,
        algebra,
    })
}

/// `gl_n(A)`: the Lie-ification of `M_n(A)`.
#[derive(Debug, Clone)]
pub struct Gl {
    pub matrices: MatrixAlgebra,
    pub lie: LInftyAlgebra,
}

pub fn gl(a: &AInftyAlgebra, n: usize) -> Result<Gl, ConstructionError> {
    let matrices = matrix_algebra(a, n)?;
    let lie = lie_ify(&matrices.algebra);
    let lie = LInftyAlgebra::new(format!("gl{n}({})", a.name()), lie.ell().clone())?;
    Ok(Gl { matrices, lie })
}

impl Gl {
    pub fn n(&self) -> usize {
        self.matrices.n
    }

    /// Coinvariants under `gl_n(K) = gl_n(K·1) ⊂ gl_n(A)`, generated by the
    /// diagonal units and the simple root vectors, with the diagonal torus.
    pub fn gl_k_coinvariants(&self) -> Result<Coinvariants, ConstructionError> {
        let base = &self.matrices.base;
        let u = base
            .unit()
            .ok_or_else(|| ConstructionError::NoUnit(base.name().to_string()))?;
        let n = self.n();
        let e = |i: usize, j: usize| Vector::single(self.matrices.letter(u, i, j), Scalar::one());
        let mut generators: Vec<Vector> = (0..n).map(|i| e(i, i)).collect();
        for i in 0..n.saturating_sub(1) {
            generators.push(e(i, i + 1));
            generators.push(e(i + 1, i));
        }
        let weights = (0..self.lie.space().dim() as u32)
            .map(|x| {
                let (_, i, j) = self.matrices.decode(x);
                let mut w = vec![0i64; n];
                w[i] += 1;
                w[j] -= 1;
                w
            })
            .collect();
        let torus = Torus {
            weights,
            toral: (0..n).collect(),
        };
        Ok(Coinvariants::with_torus(&self.lie, generators, torus)?)
    }

    /// Images of the basis under the corner inclusion `gl_n(A) → gl_m(A)`.
    pub fn corner_letters(&self, m: usize) -> Vec<u32> {
        assert!(m >= self.n());
        let da = self.matrices.dim_base();
        (0..self.lie.space().dim() as u32)
            .map(|x| {
                let (a, i, j) = self.matrices.decode(x);
                matrix_letter(da, m, a, i, j)
            })
            .collect()
    }
}

/// Letter maps of `x ⊕ y` for `x ∈ gl_p(A)`, `y ∈ gl_q(A)`: with 1-based
/// indices, `x_ij` goes to `(2i-1, 2j-1)` and `y_ij` to `(2i, 2j)` in
/// `gl_{2 max(p,q)}(A)`. Returns both maps and the target size.
pub fn block_plus_letters(p: usize, q: usize, dim_a: usize) -> (Vec<u32>, Vec<u32>, usize) {
    let t = 2 * p.max(q);
    let map = |size: usize, offset: usize| -> Vec<u32> {
        (0..size * size * dim_a)
            .map(|x| {
                let a = (x % dim_a) as u32;
                let ij = x / dim_a;
                let (i, j) = (ij / size, ij % size);
                matrix_letter(dim_a, t, a, 2 * i + offset, 2 * j + offset)
            })
            .collect()
    };
    (map(p, 0), map(q, 1), t)
}

/// `x ⊕ y` on elements, with the target matrix size.
pub fn block_plus(x: &Vector, p: usize, y: &Vector, q: usize, dim_a: usize) -> (Vector, usize) {
    let (fx, fy, t) = block_plus_letters(p, q, dim_a);
    let mut out = Vector::new();
    for (l, c) in x.iter() {
        out.add_term(fx[*l as usize], c.clone());
    }
    for (l, c) in y.iter() {
        out.add_term(fy[*l as usize], c.clone());
    }
    (out, t)
}

/// Sum of the diagonal entries of an element of `M_n(A)`, as an element of `A`.
pub fn trace(x: &Vector, n: usize, dim_a: usize) -> Vector {
    let mut out = Vector::new();
    for (l, c) in x.iter() {
        let a = *l % dim_a as u32;
        let ij = (*l / dim_a as u32) as usize;
        if ij / n == ij % n {
            out.add_term(a, c.clone());
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommutatorTest {
    /// `Tr x = 0`.
    pub by_trace: bool,
    /// `x` lies in the span of all `[E_ij, E_kl ⊗ a]`.
    pub by_solve: bool,
}

/// Membership of `x ∈ M_n(A)` in `[M_n(K), M_n(A)]`, by the trace criterion
/// and by explicit linear algebra.
pub fn in_commutator_subspace(x: &Vector, n: usize, dim_a: usize) -> CommutatorTest {
    let by_trace = trace(x, n, dim_a).is_zero();
    let dim = n * n * dim_a;
    let letter = |a: usize, i: usize, j: usize| matrix_letter(dim_a, n, a as u32, i, j) as usize;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for a in 0..dim_a {
                        // [E_ij, E_kl ⊗ a] = δ_jk E_il ⊗ a − δ_li E_kj ⊗ a
                        let mut v = Vec::new();
                        if j == k {
                            v.push((letter(a, i, l), Scalar::one()));
                        }
                        if l == i {
                            v.push((letter(a, k, j), Scalar::from_int(-1)));
                        }
                        gens.push(SparseVector::from_pairs(v));
                    }
                }
            }
        }
    }
    let span = Subspace::span(dim, gens);
    let xv = SparseVector::from_pairs(x.iter().map(|(l, c)| (*l as usize, c.clone())));
    CommutatorTest {
        by_trace,
        by_solve: span.contains(&xv),
    }
}

/// `L_1 ⊕ L_2` with componentwise structure; basis of `L_1` first.
pub fn direct_sum(l1: &LInftyAlgebra, l2: &LInftyAlgebra) -> LInftyAlgebra {
    let (s1, s2) = (l1.space(), l2.space());
    let space = Arc::new(
        GradedSpace::new(
            (0..s1.dim())
                .map(|i| (format!("{}'", s1.label(i)), s1.degree(i)))
                .chain((0..s2.dim()).map(|i| (format!("{}''", s2.label(i)), s2.degree(i)))),
        )
        .expect("primed labels are distinct"),
    );
    let shift = s1.dim() as u32;
    let mut ell = Cochain::new(space, Flavor::Symmetric, -1);
    for (w, v) in l1.ell().canonical_table() {
        ell.add(&w, &v.into_iter().collect()).expect("same degrees");
    }
    for (w, v) in l2.ell().canonical_table() {
        let w: Vec<u32> = w.iter().map(|x| x + shift).collect();
        let v: Vector = v.into_iter().map(|(x, c)| (x + shift, c)).collect();
        ell.add(&w, &v).expect("same degrees");
    }
    LInftyAlgebra::new(format!("{}⊕{}", l1.name(), l2.name()), ell).expect("structure")
}

/// Whether the letter map `f` intertwines the structure cochains on every
/// monomial inside `cap`: `f(ℓ(w)) = ℓ'(f(w))`.
pub fn is_strict_morphism(f: &[u32], src: &LInftyAlgebra, tgt: &LInftyAlgebra, cap: &WeightCap) -> bool {
    let max_arity = src.ell().max_arity().max(tgt.ell().max_arity());
    let cap = WeightCap::new(cap.max_weight.min(max_arity.max(1)), cap.max_degree).expect("valid cap");
    cap.monomials(src.space()).into_iter().filter(|w| !w.is_empty()).all(|w| {
        let lhs: Vector = src.ell().eval(&w).iter().map(|(x, c)| (f[*x as usize], c.clone())).collect();
        let fw: Vec<u32> = w.iter().map(|x| f[*x as usize]).collect();
        lhs == tgt.ell().eval(&fw)
    })
}

/// Applies a letter map to monomial-level chains (result canonicalized).
pub fn map_chain(space_tgt: &GradedSpace, f: &[u32], e: &Element) -> Element {
    let mut out = Element::new();
    for (w, c) in e.iter() {
        let fw: Vec<u32> = w.iter().map(|x| f[*x as usize]).collect();
        crate::graded::add_monomial(space_tgt, &mut out, &fw, c.clone());
    }
    out
}

/// `P δ_m(N w) − N(δ_ℓ w)` on a monomial, where `N w = Σ_σ σ(w)`; zero
/// exactly when `ℓ` is the Lie-ification of `m` on `w`.
pub fn transport_defect(a: &AInftyAlgebra, l: &LInftyAlgebra, w: &[u32]) -> Element {
    let space = a.space();
    let lhs = crate::coalgebra::project_p(space, &a.coderivation().apply(&symmetrizer_sum(space, w)));
    let rhs = crate::coalgebra::norm(space, &Coderivation::new(l.ell().clone()).apply_word(w));
    lhs.sub(&rhs)
}
