//! Truncated cofree coalgebras `T^c V[1]` and `Λ^c V = S^c V[1]`, cochains and
//! the coderivations they extend to.
//!
//! Two models of the symmetric coalgebra appear here. The *coinvariant* model
//! uses canonical sorted monomials (see [`canonical_monomial`]) with the
//! unshuffle coproduct; all homology computations use it. The *invariant*
//! model consists of symmetric tensors inside `T^c V[1]`; it is reached from
//! the coinvariant model by the coalgebra isomorphism [`norm`]
//! (`[w] ↦ Σ_σ σ(w)`), and the projection back is [`project_p`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::graded::{
    act, add_monomial, canonical_monomial, choose, koszul_parity, symmetrize,
    symmetrizer_sum, Element, GradedSpace, LinComb, Word,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoalgebraError {
    #[error("word of weight {weight} and degree {degree} exceeds cap (weight ≤ {max_weight}, degree ≤ {max_degree})")]
    ExceedsCap {
        weight: usize,
        degree: i64,
        max_weight: usize,
        max_degree: i64,
    },
    #[error("element is not symmetric")]
    NotSymmetric,
    #[error("flavor mismatch: {0:?} vs {1:?}")]
    FlavorMismatch(Flavor, Flavor),
    #[error("cochains live on different spaces")]
    SpaceMismatch,
    #[error("component f_{arity} on {input:?} is not homogeneous of degree {parity}")]
    NotHomogeneous {
        arity: usize,
        input: Word,
        parity: i64,
    },
    #[error("symmetric cochain assigns a nonzero value to the vanishing monomial {0:?}")]
    NotAntisymmetric(Word),
    #[error("invalid cap: max_weight must be at least 1")]
    InvalidCap,
}

/// Truncation of the coalgebras: words of weight ≤ `max_weight` and total
/// suspended degree ≤ `max_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct WeightCap {
    pub max_weight: usize,
    pub max_degree: i64,
}

impl WeightCap {
    pub fn new(max_weight: usize, max_degree: i64) -> Result<Self, CoalgebraError> {
        if max_weight == 0 || max_degree < 0 {
            return Err(CoalgebraError::InvalidCap);
        }
        Ok(Self {
            max_weight,
            max_degree,
        })
    }

    pub fn admits(&self, space: &GradedSpace, w: &[u32]) -> bool {
        w.len() <= self.max_weight && space.word_degree(w) <= self.max_degree
    }

    pub fn check(&self, space: &GradedSpace, w: &[u32]) -> Result<(), CoalgebraError> {
        if self.admits(space, w) {
            Ok(())
        } else {
            Err(CoalgebraError::ExceedsCap {
                weight: w.len(),
                degree: space.word_degree(w),
                max_weight: self.max_weight,
                max_degree: self.max_degree,
            })
        }
    }

    /// Every ordered word inside the cap, including the empty word.
    pub fn tensor_words(&self, space: &GradedSpace) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..self.max_weight {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..space.dim() as u32 {
                    let mut w2: Word = w.clone();
                    w2.push(i);
                    if space.word_degree(&w2) <= self.max_degree {
                        next.push(w2);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Every canonical monomial inside the cap, including the empty one.
    pub fn monomials(&self, space: &GradedSpace) -> Vec<Word> {
        let mut out = Vec::new();
        monomials_rec(space, 0, &mut Vec::new(), 0, self.max_weight, self.max_degree, &mut |w| {
            out.push(w.to_vec())
        });
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }
}

/// Visits canonical monomials (odd letters at most once) in lexicographic order.
pub(crate) fn monomials_rec(
    space: &GradedSpace,
    start: u32,
    cur: &mut Word,
    degree: i64,
    max_weight: usize,
    max_degree: i64,
    visit: &mut impl FnMut(&[u32]),
) {
    visit(cur);
    if cur.len() == max_weight {
        return;
    }
    for i in start..space.dim() as u32 {
        let d = space.suspended_degree(i as usize);
        if degree + d > max_degree {
            continue;
        }
        cur.push(i);
        let next = if space.is_odd(i as usize) { i + 1 } else { i };
        monomials_rec(space, next, cur, degree + d, max_weight, max_degree, visit);
        cur.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Flavor {
    /// Maps on `T^c V[1]`, extended by the deconcatenation rule.
    Tensor,
    /// Graded-antisymmetric maps on `Λ^c V`, extended by unshuffles.
    Symmetric,
}

/// Values of a cochain component: combination of basis vectors of `V[1]`.
pub type Vector = LinComb<u32>;

/// A family `f_k : V[1]^{⊗k} → V[1]` of homogeneous maps of common degree
/// `parity`, stored by sparse structure constants.
#[derive(Clone, Debug)]
pub struct Cochain {
    space: Arc<GradedSpace>,
    flavor: Flavor,
    parity: i64,
    components: BTreeMap<usize, HashMap<Word, Vector>>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.flavor == other.flavor
            && self.parity == other.parity
            && *self.space == *other.space
            && self.canonical_table() == other.canonical_table()
    }
}

impl Cochain {
    pub fn new(space: Arc<GradedSpace>, flavor: Flavor, parity: i64) -> Self {
        Self {
            space,
            flavor,
            parity,
            components: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn parity(&self) -> i64 {
        self.parity
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.components
            .iter()
            .filter(|(_, m)| !m.is_empty())
            .map(|(k, _)| *k)
    }

    pub fn max_arity(&self) -> usize {
        self.arities().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|m| m.is_empty())
    }

    /// Adds `value` to `f_k(input)`. For the symmetric flavor the input is
    /// canonicalized with its Koszul sign first.
    pub fn add(&mut self, input: &[u32], value: &Vector) -> Result<(), CoalgebraError> {
        let (key, sign) = match self.flavor {
            Flavor::Tensor => (input.to_vec(), Scalar::one()),
            Flavor::Symmetric => match canonical_monomial(&self.space, input) {
                Some((w, odd)) => (w, Scalar::sign(odd)),
                None => {
                    if value.is_zero() {
                        return Ok(());
                    }
                    return Err(CoalgebraError::NotAntisymmetric(input.to_vec()));
                }
            },
        };
        let in_degree = self.space.word_degree(input);
        for (i, _) in value.iter() {
            if self.space.suspended_degree(*i as usize) != in_degree + self.parity {
                return Err(CoalgebraError::NotHomogeneous {
                    arity: input.len(),
                    input: input.to_vec(),
                    parity: self.parity,
                });
            }
        }
        let slot = self
            .components
            .entry(input.len())
            .or_default()
            .entry(key.clone())
            .or_default();
        slot.add_scaled(value, &sign);
        if slot.is_zero() {
            self.components.get_mut(&input.len()).unwrap().remove(&key);
        }
        Ok(())
    }

    pub fn set_term(&mut self, input: &[u32], output: u32, coeff: Scalar) -> Result<(), CoalgebraError> {
        self.add(input, &Vector::single(output, coeff))
    }

    /// `f_k(input)`; zero when no structure constant is stored.
    pub fn eval(&self, input: &[u32]) -> Vector {
        let Some(table) = self.components.get(&input.len()) else {
            return Vector::new();
        };
        match self.flavor {
            Flavor::Tensor => table.get(input).cloned().unwrap_or_default(),
            Flavor::Symmetric => match canonical_monomial(&self.space, input) {
                Some((w, odd)) => table
                    .get(&w)
                    .map(|v| v.scaled(&Scalar::sign(odd)))
                    .unwrap_or_default(),
                None => Vector::new(),
            },
        }
    }

    /// Structure constants in canonical order.
    pub fn canonical_table(&self) -> Vec<(Word, Vec<(u32, Scalar)>)> {
        let mut out: Vec<(Word, Vec<(u32, Scalar)>)> = self
            .components
            .values()
            .flat_map(|m| m.iter())
            .filter(|(_, v)| !v.is_zero())
            .map(|(w, v)| (w.clone(), v.iter().map(|(i, c)| (*i, c.clone())).collect()))
            .collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
        out
    }

    pub fn component_inputs(&self, arity: usize) -> Vec<Word> {
        let mut v: Vec<Word> = self
            .components
            .get(&arity)
            .map(|m| m.keys().cloned().collect())
            .unwrap_or_default();
        v.sort();
        v
    }

    pub fn scaled(&self, c: &Scalar) -> Cochain {
        let mut out = Cochain::new(self.space.clone(), self.flavor, self.parity);
        for (w, v) in self.canonical_table() {
            let v: Vector = v.into_iter().collect();
            out.add(&w, &v.scaled(c)).expect("same degrees");
        }
        out
    }

    /// Drops every component except arity `k`.
    pub fn only_arity(&self, k: usize) -> Cochain {
        let mut out = Cochain::new(self.space.clone(), self.flavor, self.parity);
        if let Some(m) = self.components.get(&k) {
            out.components.insert(k, m.clone());
        }
        out
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Cochain {
        let mut out = Cochain::new(self.space.clone(), flavor, self.parity);
        for (w, v) in self.canonical_table() {
            let v: Vector = v.into_iter().collect();
            out.add(&w, &v).expect("same degrees");
        }
        out
    }

    /// For a symmetric cochain: checks that every stored value is consistent
    /// with graded antisymmetry. Always true by construction; tensor cochains
    /// are checked for invariance of `f_k` under the Koszul-signed action.
    pub fn is_graded_antisymmetric(&self) -> bool {
        match self.flavor {
            Flavor::Symmetric => true,
            Flavor::Tensor => self.components.values().all(|m| {
                m.keys().all(|w| {
                    crate::graded::Perm::all(w.len()).iter().all(|p| {
                        // f(σ·w) = ±f(w) with the sign of the action
                        let (pw, s) = act(&self.space, p, w).expect("sizes agree");
                        self.eval(&pw) == self.eval(w).scaled(&s)
                    })
                })
            }),
        }
    }
}

/// Deconcatenation coproduct on `T^c V[1]`: `n + 1` terms, counit terms included.
pub fn coproduct_tensor(w: &[u32]) -> Vec<(Word, Word)> {
    (0..=w.len())
        .map(|i| (w[..i].to_vec(), w[i..].to_vec()))
        .collect()
}

pub type TensorPair = LinComb<(Word, Word)>;

pub fn coproduct_tensor_element(e: &Element) -> TensorPair {
    let mut out = TensorPair::new();
    for (w, c) in e.iter() {
        for pair in coproduct_tensor(w) {
            out.add_term(pair, c.clone());
        }
    }
    out
}

/// Unshuffle coproduct on a canonical monomial of the coinvariant model:
/// `Σ_p Σ_{σ ∈ Sh(p, n-p)} σ Δ(v_1,…,v_n)`.
pub fn coproduct_sym(space: &GradedSpace, w: &[u32]) -> Result<TensorPair, CoalgebraError> {
    match canonical_monomial(space, w) {
        Some((c, false)) if c == w => {}
        _ => return Err(CoalgebraError::NotSymmetric),
    }
    let n = w.len();
    let mut out = TensorPair::new();
    for p in 0..=n {
        for (left, right, odd) in unshuffle_splits(space, w, p) {
            out.add_term((left, right), Scalar::sign(odd));
        }
    }
    Ok(out)
}

/// Coproduct of a combination of canonical monomials.
pub fn coproduct_sym_element(space: &GradedSpace, e: &Element) -> Result<TensorPair, CoalgebraError> {
    let mut out = TensorPair::new();
    for (w, c) in e.iter() {
        out.add_scaled(&coproduct_sym(space, w)?, c);
    }
    Ok(out)
}

/// All splittings of `w` into a chosen subsequence of length `p` (moved to the
/// front, order kept) and the remainder, with the parity of the Koszul sign.
pub(crate) fn unshuffle_splits(space: &GradedSpace, w: &[u32], p: usize) -> Vec<(Word, Word, bool)> {
    let n = w.len();
    let mut out = Vec::new();
    for subset in choose(n, p) {
        let mut images = vec![0; n];
        let mut in_subset = vec![false; n];
        for (slot, &j) in subset.iter().enumerate() {
            images[j] = slot;
            in_subset[j] = true;
        }
        let mut next = p;
        for (j, img) in images.iter_mut().enumerate() {
            if !in_subset[j] {
                *img = next;
                next += 1;
            }
        }
        let odd = koszul_parity(&images, |j| space.suspended_degree(w[j] as usize));
        let left: Word = subset.iter().map(|&j| w[j]).collect();
        let right: Word = (0..n).filter(|j| !in_subset[*j]).map(|j| w[j]).collect();
        out.push((left, right, odd));
    }
    out
}

/// Swaps tensor factors with the Koszul sign `(-1)^{|a||b|}`.
pub fn twist(space: &GradedSpace, t: &TensorPair) -> TensorPair {
    t.map_keys(|(a, b)| {
        let odd = (space.word_degree(a) * space.word_degree(b)).rem_euclid(2) == 1;
        Some(((b.clone(), a.clone()), Scalar::sign(odd)))
    })
}

/// Canonicalizes both tensor factors in the coinvariant model.
pub fn canonicalize_pair(space: &GradedSpace, t: &TensorPair) -> TensorPair {
    let mut out = TensorPair::new();
    for ((a, b), c) in t.iter() {
        if let (Some((a2, oa)), Some((b2, ob))) = (canonical_monomial(space, a), canonical_monomial(space, b)) {
            out.add_term((a2, b2), if oa ^ ob { -c } else { c.clone() });
        }
    }
    out
}

type BlockImages = Arc<Vec<(Word, Element)>>;

/// Coderivation determined by a cochain, evaluated lazily word by word.
#[derive(Debug)]
pub struct Coderivation {
    cochain: Cochain,
    cache: Mutex<HashMap<(i64, usize), BlockImages>>,
}

impl Clone for Coderivation {
    fn clone(&self) -> Self {
        Coderivation::new(self.cochain.clone())
    }
}

pub fn extend_coderivation(c: &Cochain, flavor: Flavor) -> Coderivation {
    Coderivation::new(c.with_flavor(flavor))
}

impl Coderivation {
    pub fn new(cochain: Cochain) -> Self {
        Self {
            cochain,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }

    pub fn flavor(&self) -> Flavor {
        self.cochain.flavor
    }

    pub fn parity(&self) -> i64 {
        self.cochain.parity
    }

    pub fn space(&self) -> &GradedSpace {
        &self.cochain.space
    }

    /// Evaluation with a cap check on the input word.
    pub fn apply_capped(&self, w: &[u32], cap: &WeightCap) -> Result<Element, CoalgebraError> {
        cap.check(self.space(), w)?;
        Ok(self.apply_word(w))
    }

    pub fn apply_word(&self, w: &[u32]) -> Element {
        match self.cochain.flavor {
            Flavor::Tensor => self.apply_tensor(w),
            Flavor::Symmetric => self.apply_symmetric(w),
        }
    }

    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::new();
        for (w, c) in e.iter() {
            out.add_scaled(&self.apply_word(w), c);
        }
        out
    }

    /// `Σ_k Σ_j (-1)^{p·(|v_1|+…+|v_{j-1}|)} (v_1,…,f_k(v_j,…,v_{j+k-1}),…,v_n)`.
    fn apply_tensor(&self, w: &[u32]) -> Element {
        let space = self.space();
        let mut out = Element::new();
        let n = w.len();
        for k in self.cochain.arities().filter(|&k| k <= n) {
            let mut prefix_degree = 0i64;
            for j in 0..=n - k {
                let value = self.cochain.eval(&w[j..j + k]);
                if !value.is_zero() {
                    let sign = Scalar::sign((self.cochain.parity * prefix_degree).rem_euclid(2) == 1);
                    for (x, c) in value.iter() {
                        let mut word = Vec::with_capacity(n - k + 1);
                        word.extend_from_slice(&w[..j]);
                        word.push(*x);
                        word.extend_from_slice(&w[j + k..]);
                        out.add_term(word, c * &sign);
                    }
                }
                if j < n {
                    prefix_degree += space.suspended_degree(w[j] as usize);
                }
            }
        }
        out
    }

    /// `Σ_k Σ_{unshuffles} ε [f_k(v_{σ(1)},…,v_{σ(k)}), v_{σ(k+1)},…]` on canonical monomials.
    fn apply_symmetric(&self, w: &[u32]) -> Element {
        let space = self.space();
        let mut out = Element::new();
        let Some((w, odd)) = canonical_monomial(space, w) else {
            return out;
        };
        let outer = Scalar::sign(odd);
        for k in self.cochain.arities().filter(|&k| k <= w.len()) {
            for (left, right, odd) in unshuffle_splits(space, &w, k) {
                let value = self.cochain.eval(&left);
                if value.is_zero() {
                    continue;
                }
                let sign = &outer * &Scalar::sign(odd);
                for (x, c) in value.iter() {
                    let mut word = Vec::with_capacity(right.len() + 1);
                    word.push(*x);
                    word.extend_from_slice(&right);
                    add_monomial(space, &mut out, &word, c * &sign);
                }
            }
        }
        out
    }

    /// Images of every canonical monomial of the given total degree and weight,
    /// memoized per `(degree, weight)`.
    pub fn block(&self, degree: i64, weight: usize) -> BlockImages {
        if let Some(b) = self.cache.lock().unwrap().get(&(degree, weight)) {
            return b.clone();
        }
        let space = self.space();
        let mut words = Vec::new();
        monomials_rec(space, 0, &mut Vec::new(), 0, weight, degree, &mut |w| {
            if w.len() == weight && space.word_degree(w) == degree {
                words.push(w.to_vec())
            }
        });
        let images: BlockImages = Arc::new(
            words
                .into_iter()
                .map(|w| {
                    let img = self.apply_word(&w);
                    (w, img)
                })
                .collect(),
        );
        self.cache
            .lock()
            .unwrap()
            .entry((degree, weight))
            .or_insert(images)
            .clone()
    }

    /// Checks `Δ δ = (δ ⊗ 1 + 1 ⊗ δ) Δ` on a single word (monomial for the
    /// symmetric flavor).
    pub fn satisfies_coleibniz(&self, w: &[u32]) -> bool {
        let space = self.space();
        let p = self.parity();
        let (lhs, delta_w) = match self.flavor() {
            Flavor::Tensor => {
                let dw = self.apply_word(w);
                (coproduct_tensor_element(&dw), coproduct_tensor(w).into_iter().map(|pr| (pr, Scalar::one())).collect::<TensorPair>())
            }
            Flavor::Symmetric => {
                let Some((m, odd)) = canonical_monomial(space, w) else {
                    return true;
                };
                let dw = self.apply_word(&m).scaled(&Scalar::sign(odd));
                let cop = coproduct_sym(space, &m).expect("canonical").scaled(&Scalar::sign(odd));
                (coproduct_sym_element(space, &dw).expect("canonical output"), cop)
            }
        };
        let mut rhs = TensorPair::new();
        for ((a, b), c) in delta_w.iter() {
            for (da, x) in self.apply_word(a).iter() {
                rhs.add_term((da.clone(), b.clone()), c * x);
            }
            let sign = Scalar::sign((p * space.word_degree(a)).rem_euclid(2) == 1);
            for (db, x) in self.apply_word(b).iter() {
                rhs.add_term((a.clone(), db.clone()), &(c * x) * &sign);
            }
        }
        match self.flavor() {
            Flavor::Tensor => lhs == rhs,
            Flavor::Symmetric => canonicalize_pair(space, &lhs) == canonicalize_pair(space, &rhs),
        }
    }
}

/// Graded commutator of two coderivations, read off as a cochain on every
/// word (or monomial) inside `cap`.
pub fn bracket(d1: &Coderivation, d2: &Coderivation, cap: &WeightCap) -> Result<Cochain, CoalgebraError> {
    if d1.flavor() != d2.flavor() {
        return Err(CoalgebraError::FlavorMismatch(d1.flavor(), d2.flavor()));
    }
    if d1.space() != d2.space() {
        return Err(CoalgebraError::SpaceMismatch);
    }
    let space = d1.cochain.space.clone();
    let (p1, p2) = (d1.parity(), d2.parity());
    let sign = Scalar::sign((p1 * p2).rem_euclid(2) == 1);
    let mut out = Cochain::new(space.clone(), d1.flavor(), p1 + p2);
    let inputs = match d1.flavor() {
        Flavor::Tensor => cap.tensor_words(&space),
        Flavor::Symmetric => cap.monomials(&space),
    };
    for w in inputs {
        let a = d1.apply(&d2.apply_word(&w));
        let b = d2.apply(&d1.apply_word(&w));
        let mut value = Vector::new();
        for (word, c) in a.iter().filter(|(word, _)| word.len() == 1) {
            value.add_term(word[0], c.clone());
        }
        for (word, c) in b.iter().filter(|(word, _)| word.len() == 1) {
            value.add_term(word[0], -(c * &sign));
        }
        if !value.is_zero() {
            out.add(&w, &value)?;
        }
    }
    Ok(out)
}

/// The composite of two coderivations evaluated on one word.
pub fn compose_on(d1: &Coderivation, d2: &Coderivation, w: &[u32]) -> Element {
    d1.apply(&d2.apply_word(w))
}

/// Symmetrization `p = P : T^c V[1] → Λ^c V` (invariant model).
pub fn project_p(space: &GradedSpace, e: &Element) -> Element {
    symmetrize(space, e)
}

/// Canonical inclusion of symmetric tensors into `T^c V[1]`.
pub fn include_i(space: &GradedSpace, x: &Element) -> Result<Element, CoalgebraError> {
    if symmetrize(space, x) != *x {
        return Err(CoalgebraError::NotSymmetric);
    }
    Ok(x.clone())
}

/// Coalgebra isomorphism from the coinvariant model to symmetric tensors:
/// `[w] ↦ Σ_σ σ(w)`.
pub fn norm(space: &GradedSpace, e: &Element) -> Element {
    let mut out = Element::new();
    for (w, c) in e.iter() {
        out.add_scaled(&symmetrizer_sum(space, w), c);
    }
    out
}

/// Inverse of [`norm`] on symmetric tensors.
pub fn denorm(space: &GradedSpace, x: &Element) -> Result<Element, CoalgebraError> {
    if symmetrize(space, x) != *x {
        return Err(CoalgebraError::NotSymmetric);
    }
    let mut out = Element::new();
    for (w, c) in x.iter() {
        if let Some((m, false)) = canonical_monomial(space, w) {
            if m == *w {
                // Σ_σ σ(w) has coefficient ∏ m_i! on w itself (repeated letters are even)
                let mut mult = 1i64;
                let mut run = 1i64;
                for pair in w.windows(2) {
                    if pair[0] == pair[1] {
                        run += 1;
                        mult *= run;
                    } else {
                        run = 1;
                    }
                }
                out.add_term(w.clone(), c * &Scalar::from_ratio(1, mult));
            }
        }
    }
    Ok(out)
}

/// `P ∘ δ_T` applied to a symmetric tensor: the block formula for the
/// symmetric extension of a cochain, evaluated through the tensor coalgebra.
pub fn block_formula(c: &Cochain, x: &Element) -> Result<Element, CoalgebraError> {
    let t = Coderivation::new(c.with_flavor(Flavor::Tensor));
    let space = c.space();
    let ix = include_i(space, x)?;
    Ok(project_p(space, &t.apply(&ix)))
}

/// Outcome of checking `δ² = 0` on every basis input inside a cap.
#[derive(Debug, Clone, PartialEq)]
pub enum SquareZero {
    Certificate {
        cap: WeightCap,
        words_checked: usize,
    },
    /// The lowest-weight input (first in canonical order) with `δ²(w) ≠ 0`.
    Violation { word: Word, output: Element },
}

impl SquareZero {
    pub fn holds(&self) -> bool {
        matches!(self, SquareZero::Certificate { .. })
    }
}

/// Evaluates `δ∘δ` on all words (tensor flavor) or monomials (symmetric
/// flavor) inside `cap`.
pub fn check_square_zero(d: &Coderivation, cap: &WeightCap) -> SquareZero {
    use rayon::prelude::*;
    let space = d.space();
    let inputs = match d.flavor() {
        Flavor::Tensor => cap.tensor_words(space),
        Flavor::Symmetric => cap.monomials(space),
    };
    let hit = inputs.par_iter().find_map_first(|w| {
        let out = d.apply(&d.apply_word(w));
        (!out.is_zero()).then(|| (w.clone(), out))
    });
    match hit {
        Some((word, output)) => SquareZero::Violation { word, output },
        None => SquareZero::Certificate {
            cap: *cap,
            words_checked: inputs.len(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(degrees: &[i64]) -> Arc<GradedSpace> {
        Arc::new(GradedSpace::new(degrees.iter().enumerate().map(|(i, d)| (format!("v{i}"), *d))).unwrap())
    }

    fn vec1(i: u32) -> Vector {
        Vector::single(i, Scalar::one())
    }

    #[test]
    fn deconcatenation_examples() {
        assert_eq!(coproduct_tensor(&[7]), vec![(vec![], vec![7]), (vec![7], vec![])]);
        assert_eq!(coproduct_tensor(&[1, 2]).len(), 3);
    }

    #[test]
    fn counit_recovers_word() {
        for w in [vec![], vec![0], vec![0, 1, 1, 2]] {
            let left: Vec<_> = coproduct_tensor(&w).into_iter().filter(|(a, _)| a.is_empty()).collect();
            let right: Vec<_> = coproduct_tensor(&w).into_iter().filter(|(_, b)| b.is_empty()).collect();
            assert_eq!(left, vec![(vec![], w.clone())]);
            assert_eq!(right, vec![(w.clone(), vec![])]);
        }
    }

    #[test]
    fn symmetric_coproduct_of_two_odd_letters() {
        let v = space(&[0, 0]);
        let d = coproduct_sym(&v, &[0, 1]).unwrap();
        let m1 = Scalar::from_int(-1);
        assert_eq!(d.len(), 4);
        assert_eq!(d.coeff(&(vec![], vec![0, 1])), Scalar::one());
        assert_eq!(d.coeff(&(vec![0], vec![1])), Scalar::one());
        assert_eq!(d.coeff(&(vec![1], vec![0])), m1);
        assert_eq!(d.coeff(&(vec![0, 1], vec![])), Scalar::one());
        assert_eq!(coproduct_sym(&v, &[1, 0]), Err(CoalgebraError::NotSymmetric));
        let single = coproduct_sym(&v, &[1]).unwrap();
        assert_eq!(single.len(), 2);
    }

    #[test]
    fn symmetric_coproduct_is_cocommutative() {
        let v = space(&[0, 1, 0]);
        for w in [vec![0, 1, 2], vec![0, 1, 1], vec![1, 1, 2]] {
            let d = coproduct_sym(&v, &w).unwrap();
            assert_eq!(canonicalize_pair(&v, &twist(&v, &d)), d, "{w:?}");
        }
    }

    #[test]
    fn linear_part_is_tensor_leibniz() {
        let v = space(&[0, 0]);
        let mut c = Cochain::new(v.clone(), Flavor::Tensor, 0);
        c.add(&[0], &vec1(1)).unwrap();
        let d = Coderivation::new(c);
        let out = d.apply_word(&[0, 0]);
        assert_eq!(out.coeff(&vec![1, 0]), Scalar::one());
        assert_eq!(out.coeff(&vec![0, 1]), Scalar::one());
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn binary_component_on_weight_two() {
        let v = space(&[0, 1]);
        let mut c = Cochain::new(v.clone(), Flavor::Tensor, -1);
        // suspended degrees 1 + 1 - 1 = 1
        c.add(&[0, 0], &vec1(0)).unwrap();
        let d = Coderivation::new(c);
        assert_eq!(d.apply_word(&[0, 0]), Element::single(vec![0], Scalar::one()));
    }

    #[test]
    fn homogeneity_is_enforced() {
        let v = space(&[0, 1]);
        let mut c = Cochain::new(v, Flavor::Tensor, -1);
        assert!(matches!(c.add(&[0, 0], &vec1(1)), Err(CoalgebraError::NotHomogeneous { .. })));
    }

    #[test]
    fn cap_errors() {
        let v = space(&[0]);
        let c = Cochain::new(v, Flavor::Tensor, -1);
        let d = Coderivation::new(c);
        let cap = WeightCap::new(2, 5).unwrap();
        assert!(d.apply_capped(&[0, 0, 0], &cap).is_err());
        assert!(d.apply_capped(&[0, 0], &cap).is_ok());
        assert_eq!(WeightCap::new(0, 1), Err(CoalgebraError::InvalidCap));
    }

    #[test]
    fn bracket_of_linear_maps_is_commutator() {
        let v = space(&[0, 0]);
        let mut a = Cochain::new(v.clone(), Flavor::Tensor, 0);
        a.add(&[0], &vec1(1)).unwrap();
        let mut b = Cochain::new(v.clone(), Flavor::Tensor, 0);
        b.add(&[1], &vec1(0)).unwrap();
        let cap = WeightCap::new(2, 4).unwrap();
        let br = bracket(&Coderivation::new(a), &Coderivation::new(b), &cap).unwrap();
        // [A,B] = AB - BA: e1 -> e1, e0 -> -e0
        assert_eq!(br.eval(&[1]), vec1(1));
        assert_eq!(br.eval(&[0]), vec1(0).scaled(&Scalar::from_int(-1)));
        assert_eq!(br.max_arity(), 1);
    }

    #[test]
    fn symmetric_extension_on_three_letters_matches_block_formula() {
        // an antisymmetric binary operation on three odd letters
        let v = space(&[0, 0, 0, 0]);
        let mut f = Cochain::new(v.clone(), Flavor::Symmetric, -1);
        f.add(&[0, 1], &vec1(3)).unwrap();
        f.add(&[1, 2], &vec1(3).scaled(&Scalar::from_int(2))).unwrap();
        f.add(&[2, 0], &vec1(3).scaled(&Scalar::from_int(3))).unwrap();
        let unshuffle = Coderivation::new(f.clone());
        // three unshuffle terms on [0,1,2]
        let out = unshuffle.apply_word(&[0, 1, 2]);
        assert_eq!(out.len(), 3);
        // block formula with f_2 / 2! matches the unshuffle form through norm
        let mut tensor_full = Cochain::new(v.clone(), Flavor::Tensor, -1);
        for w in [[0u32, 1], [1, 0], [1, 2], [2, 1], [0, 2], [2, 0]] {
            tensor_full.add(&w, &f.eval(&w).scaled(&Scalar::from_ratio(1, 2))).unwrap();
        }
        assert!(tensor_full.is_graded_antisymmetric());
        let word = vec![0u32, 1, 2];
        let lhs = block_formula(&tensor_full, &norm(&v, &Element::single(word.clone(), Scalar::one()))).unwrap();
        let rhs = norm(&v, &out);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn p_after_i_is_identity() {
        let v = space(&[0, 0, 1]);
        let x = norm(&v, &Element::single(vec![0, 1, 2], Scalar::from_int(2)));
        let ix = include_i(&v, &x).unwrap();
        assert_eq!(project_p(&v, &ix), x);
        let not_sym = Element::single(vec![0, 1], Scalar::one());
        assert!(include_i(&v, &not_sym).is_err());
        assert_eq!(project_p(&v, &not_sym), symmetrize(&v, &not_sym));
    }

    #[test]
    fn denorm_inverts_norm() {
        let v = space(&[0, 1, 1]);
        for w in [vec![0, 1, 1], vec![0, 1, 2], vec![1, 1, 1], vec![]] {
            let e = Element::single(w.clone(), Scalar::one());
            assert_eq!(denorm(&v, &norm(&v, &e)).unwrap(), e, "{w:?}");
        }
    }

    #[test]
    fn coleibniz_holds_for_both_flavors() {
        let v = space(&[0, 1, 0]);
        let mut f = Cochain::new(v.clone(), Flavor::Tensor, -1);
        f.add(&[0, 2], &vec1(0)).unwrap();
        f.add(&[1], &vec1(0)).unwrap();
        let t = Coderivation::new(f.clone());
        let s = Coderivation::new(f.with_flavor(Flavor::Symmetric));
        for w in WeightCap::new(4, 6).unwrap().tensor_words(&v) {
            assert!(t.satisfies_coleibniz(&w), "tensor {w:?}");
            assert!(s.satisfies_coleibniz(&w), "symmetric {w:?}");
        }
    }

    #[test]
    fn monomials_respect_cap() {
        let v = space(&[0, 1]);
        let cap = WeightCap::new(3, 4).unwrap();
        let ms = cap.monomials(&v);
        assert!(ms.contains(&vec![]));
        assert!(ms.contains(&vec![1, 1]));
        assert!(!ms.contains(&vec![0, 0]));
        assert!(ms.iter().all(|m| cap.admits(&v, m)));
        // 1; v0, v1; v0v1, v1v1 (v0v1v1 has degree 5)
        assert_eq!(ms.len(), 5);
    }
}
