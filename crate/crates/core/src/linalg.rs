//! Exact sparse linear algebra over the rationals.
//!
//! Elimination runs fraction-free on primitive integer rows; only the
//! final reduced echelon form of a [`Subspace`] is normalized to rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("subspace is not contained in the ambient subspace (witness vector {0})")]
    NotContained(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// Sparse vector with strictly increasing coordinates and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVector {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            *acc.entry(i).or_insert_with(Scalar::zero) += v;
        }
        Self {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Caller guarantees sorted, unique, nonzero entries.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        Self { entries }
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, Scalar::one())],
        }
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVector) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn sub(&self, other: &SparseVector) -> Self {
        self.axpy(&Scalar::from_int(-1), other)
    }

    pub fn add(&self, other: &SparseVector) -> Self {
        self.axpy(&Scalar::one(), other)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// Reindexes coordinates; entries mapped to `None` are dropped.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> Self {
        Self::from_pairs(
            self.entries
                .iter()
                .filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))),
        )
    }
}

/// Sparse matrix with entries in canonical row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, Scalar::one())).collect(),
        }
    }

    /// Duplicate coordinates are summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of range {rows}x{cols}");
            *acc.entry((r, c)).or_insert_with(Scalar::zero) += v;
        }
        Self {
            rows,
            cols,
            entries: acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((r, c), v)| (r, c, v))
                .collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_triplets(
            nrows,
            ncols,
            rows.iter().enumerate().flat_map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(move |(j, v)| (i, j, Scalar::from_int(*v)))
            }),
        )
    }

    pub fn from_columns(rows: usize, columns: &[SparseVector]) -> Self {
        Self::from_triplets(
            rows,
            columns.len(),
            columns.iter().enumerate().flat_map(|(j, col)| {
                col.entries().iter().map(move |(i, v)| (*i, j, v.clone()))
            }),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())),
        )
    }

    pub fn row_vectors(&self) -> Vec<SparseVector> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c, v.clone()));
        }
        out.into_iter().map(SparseVector::from_sorted_unchecked).collect()
    }

    pub fn column_vectors(&self) -> Vec<SparseVector> {
        let mut out = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            out[*c].push((*r, v.clone()));
        }
        out.into_iter().map(SparseVector::from_sorted_unchecked).collect()
    }

    pub fn mul_vec(&self, x: &SparseVector) -> SparseVector {
        SparseVector::from_pairs(
            self.entries
                .iter()
                .map(|(r, c, v)| (*r, v * &x.get(*c)))
                .filter(|(_, v)| !v.is_zero()),
        )
    }
}

/// Primitive integer row: sorted coordinates, gcd of entries 1, leading entry positive.
type IntRow = Vec<(usize, BigInt)>;

fn to_int_row(v: &SparseVector) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, x) in v.entries() {
        lcm = lcm.lcm(x.denom());
    }
    let row: IntRow = v
        .entries()
        .iter()
        .map(|(i, x)| (*i, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(row)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    if row.is_empty() {
        return row;
    }
    let mut g = BigInt::zero();
    for (_, x) in &row {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    row
}

/// `a * r - b * p` for primitive rows, re-normalized.
fn combine(a: &BigInt, r: &IntRow, b: &BigInt, p: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = p.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, a * &r[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &p[j].1)));
            j += 1;
        } else {
            let s = a * &r[i].1 - b * &p[j].1;
            if !s.is_zero() {
                out.push((ci, s));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(out)
}

/// Incremental fraction-free row echelon form.
#[derive(Default)]
struct Echelon {
    rows: Vec<IntRow>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    fn reduce(&self, mut r: IntRow) -> IntRow {
        let mut k = 0;
        while k < r.len() {
            let c = r[k].0;
            match self.pivot_row.get(&c) {
                Some(&pi) => {
                    let p = &self.rows[pi];
                    let g = p[0].1.gcd(&r[k].1);
                    let a = &p[0].1 / &g;
                    let b = &r[k].1 / &g;
                    // entries before k are untouched apart from scaling, so the
                    // sweep can resume at the same position
                    let prefix = k;
                    r = combine(&a, &r, &b, p);
                    k = prefix.min(r.len());
                    while k > 0 && r[k - 1].0 >= c {
                        k -= 1;
                    }
                }
                None => k += 1,
            }
        }
        r
    }

    /// Returns true when the row was independent of the current rows.
    fn insert(&mut self, row: IntRow) -> bool {
        let r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        let lead = r[0].0;
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Unique reduced row echelon form, rows ordered by pivot column.
    fn into_rref(self) -> Vec<SparseVector> {
        let mut by_pivot: Vec<(usize, SparseVector)> = Vec::with_capacity(self.rows.len());
        for (&c, &ri) in self.pivot_row.iter() {
            let row = &self.rows[ri];
            let lead = Scalar::from_bigint(row[0].1.clone());
            let inv = lead.inv();
            let v = SparseVector::from_sorted_unchecked(
                row.iter()
                    .map(|(i, x)| (*i, Scalar::from_bigint(x.clone()) * &inv))
                    .collect(),
            );
            by_pivot.push((c, v));
        }
        // back substitution from the last pivot upwards
        let pivots: Vec<usize> = by_pivot.iter().map(|(c, _)| *c).collect();
        let index_of: BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        for k in (0..by_pivot.len()).rev() {
            let mut v = by_pivot[k].1.clone();
            loop {
                let hit = v
                    .entries()
                    .iter()
                    .skip(1)
                    .find(|(c, _)| index_of.contains_key(c))
                    .map(|(c, x)| (*c, x.clone()));
                match hit {
                    Some((c, x)) => {
                        let other = &by_pivot[index_of[&c]].1;
                        v = v.axpy(&(-x), other);
                    }
                    None => break,
                }
            }
            by_pivot[k].1 = v;
        }
        by_pivot.into_iter().map(|(_, v)| v).collect()
    }
}

fn sorted_for_pivoting(vectors: impl IntoIterator<Item = SparseVector>) -> Vec<IntRow> {
    let mut rows: Vec<IntRow> = vectors
        .into_iter()
        .filter(|v| !v.is_zero())
        .map(|v| to_int_row(&v))
        .collect();
    // sparse rows with small entries first: keeps fill-in and coefficient growth down
    rows.sort_by_cached_key(|r| {
        let big = r.iter().map(|(_, x)| x.bits()).max().unwrap_or(0);
        (r.len(), big, r[0].0)
    });
    rows
}

/// A linear subspace of `K^n`, stored as its unique reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(SparseVector::unit).collect(),
        }
    }

    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVector>) -> Self {
        let mut ech = Echelon::default();
        for row in sorted_for_pivoting(vectors) {
            debug_assert!(row.last().map_or(true, |(i, _)| *i < ambient_dim));
            ech.insert(row);
        }
        Self {
            ambient_dim,
            basis: ech.into_rref(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVector] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().filter_map(|v| v.leading()).collect()
    }

    /// Normal form of `v` modulo this subspace: all pivot coordinates cleared.
    /// The map is the linear projection along the subspace onto the span of
    /// the non-pivot coordinate vectors.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut out = v.clone();
        for b in &self.basis {
            let c = b.leading().expect("nonzero basis vector");
            let x = out.get(c);
            if !x.is_zero() {
                out = out.axpy(&(-x), b);
            }
        }
        out
    }

    /// Coefficients of `v` in the echelon basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &SparseVector) -> Option<Vec<Scalar>> {
        let coeffs: Vec<Scalar> = self
            .basis
            .iter()
            .map(|b| v.get(b.leading().unwrap()))
            .collect();
        let mut rest = v.clone();
        for (b, c) in self.basis.iter().zip(&coeffs) {
            if !c.is_zero() {
                rest = rest.axpy(&(-c), b);
            }
        }
        rest.is_zero().then_some(coeffs)
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.ambient_dim.max(other.ambient_dim),
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    /// Recomputes the echelon form; the result is always identical to `self`.
    pub fn canonicalize(&self) -> Subspace {
        Subspace::span(self.ambient_dim, self.basis.iter().cloned())
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    rank_of_vectors(m.row_vectors())
}

pub fn rank_of_vectors(vectors: impl IntoIterator<Item = SparseVector>) -> usize {
    let mut ech = Echelon::default();
    for row in sorted_for_pivoting(vectors) {
        ech.insert(row);
    }
    ech.rank()
}

/// Kernel of the linear map whose `j`-th column is `columns[j]`, as a subspace of `K^{columns.len()}`.
pub fn kernel_of_columns(columns: &[SparseVector]) -> Subspace {
    let n = columns.len();
    let offset = columns
        .iter()
        .filter_map(|c| c.max_index())
        .max()
        .map_or(0, |m| m + 1);
    let mut ech = Echelon::default();
    let augmented: Vec<SparseVector> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut e = c.entries().to_vec();
            e.push((offset + j, Scalar::one()));
            SparseVector::from_sorted_unchecked(e)
        })
        .collect();
    for row in sorted_for_pivoting(augmented) {
        ech.insert(row);
    }
    let kernel_rows = ech.rows.into_iter().filter(|r| r[0].0 >= offset).map(|r| {
        SparseVector::from_sorted_unchecked(
            r.into_iter()
                .map(|(i, x)| (i - offset, Scalar::from_bigint(x)))
                .collect(),
        )
    });
    Subspace::span(n, kernel_rows)
}

pub fn kernel_basis(m: &SparseMatrix) -> Subspace {
    kernel_of_columns(&m.column_vectors())
}

/// `dim U - dim W` after checking `W ⊆ U`.
pub fn quotient_dim(u: &Subspace, w: &Subspace) -> Result<usize, LinalgError> {
    if u.ambient_dim != w.ambient_dim {
        return Err(LinalgError::Dimension {
            expected: u.ambient_dim,
            got: w.ambient_dim,
        });
    }
    if let Some(k) = w.basis.iter().position(|b| !u.contains(b)) {
        return Err(LinalgError::NotContained(k));
    }
    Ok(u.dim() - w.dim())
}
