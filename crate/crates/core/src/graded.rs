//! Graded vector spaces, tensor words and the Koszul-signed symmetric group action.
//!
//! Degrees stored on a [`GradedSpace`] are the unsuspended ones. Every sign in
//! this crate is computed from suspended degrees (`degree + 1`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradedError {
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("negative degree {degree} for basis label {label:?}")]
    NegativeDegree { label: String, degree: i64 },
    #[error("length mismatch: permutation of {perm} elements applied to {len} items")]
    LengthMismatch { perm: usize, len: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
}

/// Finite graded vector space given by labelled, homogeneous basis vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSpace {
    labels: Vec<String>,
    degrees: Vec<i64>,
    index: HashMap<String, usize>,
}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.labels.iter().zip(&self.degrees))
            .finish()
    }
}

impl GradedSpace {
    pub fn new<S: Into<String>>(basis: impl IntoIterator<Item = (S, i64)>) -> Result<Self, GradedError> {
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        for (label, degree) in basis {
            let label = label.into();
            if degree < 0 {
                return Err(GradedError::NegativeDegree { label, degree });
            }
            if index.insert(label.clone(), labels.len()).is_some() {
                return Err(GradedError::DuplicateLabel(label));
            }
            labels.push(label);
            degrees.push(degree);
        }
        Ok(Self {
            labels,
            degrees,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// Degree in `V[1]`.
    pub fn suspended_degree(&self, i: usize) -> i64 {
        self.degrees[i] + 1
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.suspended_degree(i).rem_euclid(2) == 1
    }

    pub fn word_degree(&self, w: &[u32]) -> i64 {
        w.iter().map(|&i| self.suspended_degree(i as usize)).sum()
    }

    pub fn suspension(&self) -> SuspendedSpace<'_> {
        SuspendedSpace { base: self }
    }
}

/// `V[1]`: same basis, every degree raised by one.
#[derive(Clone, Copy, Debug)]
pub struct SuspendedSpace<'a> {
    pub base: &'a GradedSpace,
}

impl SuspendedSpace<'_> {
    pub fn degree(&self, i: usize) -> i64 {
        self.base.suspended_degree(i)
    }
}

/// Ordered word of basis indices; the empty word is the counit component `1`.
pub type Word = Vec<u32>;

/// Formal linear combination of keys with no stored zeros, in canonical key order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

pub type Element = LinComb<Word>;

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, v)| (k, v))).finish()
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(key: K, coeff: Scalar) -> Self {
        let mut out = Self::new();
        out.add_term(key, coeff);
        out
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn sub(&self, other: &LinComb<K>) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<(K2, Scalar)>) -> LinComb<K2> {
        let mut out = LinComb::new();
        for (k, v) in &self.terms {
            if let Some((k2, c)) = f(k) {
                out.add_term(k2, v * &c);
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, v) in iter {
            out.add_term(k, v);
        }
        out
    }
}

impl Element {
    /// Keeps only words of the given weight.
    pub fn weight_component(&self, weight: usize) -> Element {
        self.iter()
            .filter(|(w, _)| w.len() == weight)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }
}

/// Permutation of `{0..n}` in one-line notation: `images[j] = σ(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self, GradedError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(GradedError::NotAPermutation(images));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    /// `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (j, &i) in self.images.iter().enumerate() {
            inv[i] = j;
        }
        Perm { images: inv }
    }

    /// Every permutation of `n` elements in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.images[a] > self.images[b] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }
}

/// Koszul sign of moving items with the given degrees by `perm`: the product over
/// inversion pairs `i < j` with `σ(i) > σ(j)` of `(-1)^{d_i d_j}`.
pub fn koszul_sign(perm: &Perm, degrees: &[i64]) -> Result<Scalar, GradedError> {
    if perm.len() != degrees.len() {
        return Err(GradedError::LengthMismatch {
            perm: perm.len(),
            len: degrees.len(),
        });
    }
    Ok(Scalar::sign(koszul_parity(perm.images(), |i| degrees[i])))
}

/// Parity of the Koszul sign for `σ` given per-position degrees.
pub(crate) fn koszul_parity(images: &[usize], degree: impl Fn(usize) -> i64) -> bool {
    let mut odd = false;
    for i in 0..images.len() {
        if degree(i).rem_euclid(2) == 0 {
            continue;
        }
        for j in i + 1..images.len() {
            if images[i] > images[j] && degree(j).rem_euclid(2) == 1 {
                odd = !odd;
            }
        }
    }
    odd
}

/// Left action `σ(v_1,…,v_n) = ±(v_{σ⁻¹(1)},…,v_{σ⁻¹(n)})` on a single word.
pub fn act(space: &GradedSpace, perm: &Perm, word: &[u32]) -> Result<(Word, Scalar), GradedError> {
    if perm.len() != word.len() {
        return Err(GradedError::LengthMismatch {
            perm: perm.len(),
            len: word.len(),
        });
    }
    let mut out = vec![0u32; word.len()];
    for (j, &x) in word.iter().enumerate() {
        out[perm.apply(j)] = x;
    }
    let odd = koszul_parity(perm.images(), |i| space.suspended_degree(word[i] as usize));
    Ok((out, Scalar::sign(odd)))
}

pub fn act_element(space: &GradedSpace, perm: &Perm, e: &Element) -> Result<Element, GradedError> {
    let mut out = Element::new();
    for (w, c) in e.iter() {
        let (w2, s) = act(space, perm, w)?;
        out.add_term(w2, s * c);
    }
    Ok(out)
}

/// Sum of `σ(w)` over all permutations, without the `1/n!` factor.
pub fn symmetrizer_sum(space: &GradedSpace, word: &[u32]) -> Element {
    let mut out = Element::new();
    for p in Perm::all(word.len()) {
        let (w, s) = act(space, &p, word).expect("sizes agree");
        out.add_term(w, s);
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `P(w) = (1/n!) Σ_σ σ(w)`, applied weight by weight.
pub fn symmetrize(space: &GradedSpace, e: &Element) -> Element {
    let mut out = Element::new();
    for (w, c) in e.iter() {
        let f = Scalar::from_ratio(1, factorial(w.len()));
        out.add_scaled(&symmetrizer_sum(space, w), &(c * &f));
    }
    out
}

/// All `(p,q)`-shuffles: permutations of `p+q` elements increasing on the
/// first `p` and on the last `q` slots.
pub fn shuffles(p: usize, q: usize) -> Vec<Perm> {
    let n = p + q;
    let mut out = Vec::new();
    for first in choose(n, p) {
        let mut images = vec![0; n];
        let mut rest = (0..n).filter(|i| !first.contains(i));
        for (j, slot) in images.iter_mut().enumerate() {
            *slot = if j < p { first[j] } else { rest.next().unwrap() };
        }
        out.push(Perm { images });
    }
    out
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Canonical representative of a word in the graded-symmetric (coinvariant)
/// model: indices sorted ascending, with the Koszul sign of the sort. Returns
/// `None` when an odd element repeats, since such a class is zero.
pub fn canonical_monomial(space: &GradedSpace, word: &[u32]) -> Option<(Word, bool)> {
    let mut w: Word = word.to_vec();
    let mut odd = false;
    // insertion sort, tracking swaps of odd neighbours
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            if space.is_odd(w[j - 1] as usize) && space.is_odd(w[j] as usize) {
                odd = !odd;
            }
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    for pair in w.windows(2) {
        if pair[0] == pair[1] && space.is_odd(pair[0] as usize) {
            return None;
        }
    }
    Some((w, odd))
}

/// Adds `coeff · [word]` to a combination of canonical monomials.
pub fn add_monomial(space: &GradedSpace, out: &mut Element, word: &[u32], coeff: Scalar) {
    if let Some((w, odd)) = canonical_monomial(space, word) {
        out.add_term(w, if odd { -coeff } else { coeff });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(degrees: &[i64]) -> GradedSpace {
        GradedSpace::new(degrees.iter().enumerate().map(|(i, d)| (format!("v{i}"), *d))).unwrap()
    }

    #[test]
    fn koszul_sign_examples() {
        let t = Perm::transposition(2, 0, 1);
        assert_eq!(koszul_sign(&t, &[1, 1]).unwrap(), Scalar::from_int(-1));
        assert_eq!(koszul_sign(&t, &[1, 2]).unwrap(), Scalar::one());
        assert_eq!(koszul_sign(&Perm::identity(3), &[1, 3, 5]).unwrap(), Scalar::one());
        assert!(koszul_sign(&t, &[1]).is_err());
    }

    #[test]
    fn act_swaps_odd_elements_with_sign() {
        // both basis vectors of degree 0 are odd after suspension
        let v = space(&[0, 0]);
        let (w, s) = act(&v, &Perm::transposition(2, 0, 1), &[0, 1]).unwrap();
        assert_eq!(w, vec![1, 0]);
        assert_eq!(s, Scalar::from_int(-1));
        let (w, s) = act(&v, &Perm::identity(2), &[0, 1]).unwrap();
        assert_eq!((w, s), (vec![0, 1], Scalar::one()));
    }

    #[test]
    fn three_cycle_sign_matches_two_transpositions() {
        // suspended degrees [1, 1, 2]
        let v = space(&[0, 0, 1]);
        let cycle = Perm::new(vec![1, 2, 0]).unwrap();
        let a = Perm::transposition(3, 0, 1);
        let b = Perm::transposition(3, 1, 2);
        assert_eq!(a.compose(&b), cycle);
        let direct = act(&v, &cycle, &[0, 1, 2]).unwrap();
        let (w1, s1) = act(&v, &b, &[0, 1, 2]).unwrap();
        let (w2, s2) = act(&v, &a, &w1).unwrap();
        assert_eq!(direct, (w2, s1 * s2));
        // the even element moves past both odd ones; the odd pair keeps its order
        assert_eq!(direct.0, vec![2, 0, 1]);
        assert_eq!(direct.1, Scalar::one());
    }

    #[test]
    fn symmetrize_weight_two() {
        let v = space(&[0, 1]); // suspended 1 and 2
        let e = Element::single(vec![0, 1], Scalar::one());
        let p = symmetrize(&v, &e);
        let half = Scalar::from_ratio(1, 2);
        assert_eq!(p.coeff(&vec![0, 1]), half);
        assert_eq!(p.coeff(&vec![1, 0]), half); // (-1)^{1*2} = +1
        let odd = space(&[0, 0]);
        let p = symmetrize(&odd, &e);
        assert_eq!(p.coeff(&vec![1, 0]), -half);
    }

    #[test]
    fn symmetrize_fixes_wedge_of_odd_elements() {
        let v = space(&[0, 0]);
        let mut x = Element::single(vec![0, 1], Scalar::one());
        x.add_term(vec![1, 0], Scalar::from_int(-1));
        assert_eq!(symmetrize(&v, &x), x);
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(1, 1).len(), 2);
        assert_eq!(shuffles(2, 1).len(), 3);
        let brute: Vec<Perm> = Perm::all(4)
            .into_iter()
            .filter(|p| p.apply(0) < p.apply(1) && p.apply(2) < p.apply(3))
            .collect();
        let mut fast = shuffles(2, 2);
        fast.sort();
        assert_eq!(fast, brute);
        assert_eq!(shuffles(0, 3), vec![Perm::identity(3)]);
    }

    #[test]
    fn canonical_monomial_signs() {
        let v = space(&[0, 0, 1]);
        assert_eq!(canonical_monomial(&v, &[1, 0]), Some((vec![0, 1], true)));
        assert_eq!(canonical_monomial(&v, &[2, 0]), Some((vec![0, 2], false)));
        assert_eq!(canonical_monomial(&v, &[0, 0]), None);
        assert_eq!(canonical_monomial(&v, &[2, 2]), Some((vec![2, 2], false)));
    }

    #[test]
    fn labels_validated() {
        assert!(matches!(
            GradedSpace::new([("a", 0), ("a", 1)]),
            Err(GradedError::DuplicateLabel(_))
        ));
        assert!(matches!(
            GradedSpace::new([("a", -1)]),
            Err(GradedError::NegativeDegree { .. })
        ));
    }
}
