//! Finite chain complexes in explicit coordinates, quotient complexes, and
//! homology with canonical class representatives.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{kernel_of_columns, SparseVector, Subspace};
use crate::scalar::Scalar;

/// Dimensions of homology per degree, with the range that is guaranteed
/// unaffected by truncation. Entries outside that range are lower bounds at
/// best and are flagged `exact = false`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub dims: Vec<usize>,
    pub exact: Vec<bool>,
    pub max_weight: usize,
    pub max_degree: i64,
}

impl BettiTable {
    pub fn get(&self, k: usize) -> Option<usize> {
        self.dims.get(k).copied()
    }

    pub fn is_exact(&self, k: usize) -> bool {
        self.exact.get(k).copied().unwrap_or(false)
    }

    /// Largest `k` such that degrees `0..=k` are all exact.
    pub fn exact_through(&self) -> Option<usize> {
        let n = self.exact.iter().take_while(|e| **e).count();
        n.checked_sub(1)
    }

    pub fn exact_dims(&self) -> Vec<usize> {
        self.dims
            .iter()
            .zip(&self.exact)
            .take_while(|(_, e)| **e)
            .map(|(d, _)| *d)
            .collect()
    }
}

/// Chain complex `C_0 ← C_1 ← … ← C_top` with explicit bases.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    dims: Vec<usize>,
    /// `diffs[k]` lists the images in `C_{k-1}` of the basis of `C_k`.
    diffs: Vec<Vec<SparseVector>>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, diffs: Vec<Vec<SparseVector>>) -> Self {
        assert_eq!(dims.len(), diffs.len());
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!(d.len(), dims[k], "differential out of degree {k} has wrong source size");
            if k == 0 {
                assert!(d.iter().all(|v| v.is_zero()), "nonzero differential out of degree 0");
            } else {
                assert!(
                    d.iter().all(|v| v.max_index().map_or(true, |m| m < dims[k - 1])),
                    "differential out of degree {k} leaves the target"
                );
            }
        }
        Self { dims, diffs }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, k: usize) -> &[SparseVector] {
        &self.diffs[k]
    }

    pub fn apply(&self, k: usize, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (j, c) in v.entries() {
            out = out.axpy(c, &self.diffs[k][*j]);
        }
        out
    }

    /// First basis vector of some `C_k` whose image under `d∘d` is nonzero.
    pub fn square_zero_violation(&self) -> Option<(usize, usize)> {
        (2..=self.top()).find_map(|k| {
            self.diffs[k]
                .iter()
                .position(|img| !self.apply(k - 1, img).is_zero())
                .map(|j| (k, j))
        })
    }

    /// Homology in degrees `0..=top`; degree `top` has no incoming boundaries
    /// and is therefore only a lower-bound-free upper estimate.
    pub fn homology(&self) -> Homology {
        let degrees: Vec<DegreeHomology> = (0..=self.top())
            .into_par_iter()
            .map(|k| {
                let cycles = if k == 0 {
                    Subspace::full(self.dims[0])
                } else {
                    kernel_of_columns(&self.diffs[k])
                };
                let boundaries = if k < self.top() {
                    Subspace::span(self.dims[k], self.diffs[k + 1].iter().cloned())
                } else {
                    Subspace::zero(self.dims[k])
                };
                debug_assert!(boundaries.is_subspace_of(&cycles));
                let reps = Subspace::span(
                    self.dims[k],
                    cycles.basis().iter().map(|z| boundaries.reduce(z)),
                );
                debug_assert_eq!(reps.dim() + boundaries.dim(), cycles.dim());
                DegreeHomology {
                    cycles,
                    boundaries,
                    reps,
                }
            })
            .collect();
        Homology { degrees }
    }
}

#[derive(Debug, Clone)]
pub struct DegreeHomology {
    pub cycles: Subspace,
    pub boundaries: Subspace,
    /// Echelon basis of a complement of the boundaries inside the cycles,
    /// each vector reduced modulo the boundaries.
    pub reps: Subspace,
}

#[derive(Debug, Clone)]
pub struct Homology {
    degrees: Vec<DegreeHomology>,
}

impl Homology {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.reps.dim()).collect()
    }

    pub fn degree(&self, k: usize) -> &DegreeHomology {
        &self.degrees[k]
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.reps.dim())
    }

    pub fn representative(&self, k: usize, i: usize) -> &SparseVector {
        &self.degrees[k].reps.basis()[i]
    }

    /// Coordinates of the class of a cycle in the representative basis;
    /// `None` when `z` is not a cycle.
    pub fn class_of(&self, k: usize, z: &SparseVector) -> Option<Vec<Scalar>> {
        let d = &self.degrees[k];
        if !d.cycles.contains(z) {
            return None;
        }
        d.reps.coordinates(&d.boundaries.reduce(z))
    }

    /// A linear map `C_k → H_k` vanishing on boundaries and restricting to the
    /// class map on cycles; applied to an arbitrary chain.
    pub fn project(&self, k: usize, v: &SparseVector) -> Vec<Scalar> {
        let d = &self.degrees[k];
        let z = v.sub(&d.cycles.reduce(v));
        self.class_of(k, &z).expect("cycle part of a chain is a cycle")
    }

    pub fn is_boundary(&self, k: usize, v: &SparseVector) -> bool {
        self.degrees[k].boundaries.contains(v)
    }
}

/// Quotient of a complex of coordinate spaces by a subcomplex given per degree.
///
/// The quotient basis in degree `k` consists of the coordinates that are not
/// pivots of the echelon basis of `relations[k]`.
#[derive(Debug, Clone)]
pub struct Quotient {
    relations: Subspace,
    kept: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Quotient {
    pub fn new(relations: Subspace) -> Self {
        let n = relations.ambient_dim();
        let mut is_pivot = vec![false; n];
        for p in relations.pivots() {
            is_pivot[p] = true;
        }
        let kept: Vec<usize> = (0..n).filter(|i| !is_pivot[*i]).collect();
        let mut position = vec![None; n];
        for (q, &a) in kept.iter().enumerate() {
            position[a] = Some(q);
        }
        Self {
            relations,
            kept,
            position,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Subspace::zero(n))
    }

    pub fn dim(&self) -> usize {
        self.kept.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Ambient coordinate of each quotient basis vector.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn project(&self, v: &SparseVector) -> SparseVector {
        self.relations
            .reduce(v)
            .remap(|i| self.position[i])
    }

    pub fn lift(&self, q: &SparseVector) -> SparseVector {
        q.remap(|i| Some(self.kept[i]))
    }
}

/// Builds the quotient complex from ambient differentials (images of every
/// ambient basis vector) and per-degree quotients.
pub fn quotient_complex(ambient_diffs: &[Vec<SparseVector>], quotients: &[Quotient]) -> ChainComplex {
    let dims: Vec<usize> = quotients.iter().map(|q| q.dim()).collect();
    let diffs: Vec<Vec<SparseVector>> = (0..quotients.len())
        .into_par_iter()
        .map(|k| {
            quotients[k]
                .kept()
                .iter()
                .map(|&a| {
                    if k == 0 {
                        SparseVector::new()
                    } else {
                        quotients[k - 1].project(&ambient_diffs[k][a])
                    }
                })
                .collect()
        })
        .collect();
    ChainComplex::new(dims, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVector {
        SparseVector::from_pairs(entries.iter().map(|(i, x)| (*i, Scalar::from_int(*x))))
    }

    /// Simplicial chains of the boundary of a triangle: a circle.
    fn circle() -> ChainComplex {
        // vertices 0,1,2; edges 01, 12, 02
        ChainComplex::new(
            vec![3, 3],
            vec![
                vec![SparseVector::new(); 3],
                vec![v(&[(0, -1), (1, 1)]), v(&[(1, -1), (2, 1)]), v(&[(0, -1), (2, 1)])],
            ],
        )
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        assert_eq!(c.square_zero_violation(), None);
        let h = c.homology();
        assert_eq!(h.dims(), vec![1, 1]);
        let loop_ = v(&[(0, 1), (1, 1), (2, -1)]);
        assert!(h.class_of(1, &loop_).is_some());
        assert!(h.class_of(1, &v(&[(0, 1)])).is_none());
        // all vertices are homologous
        assert_eq!(h.class_of(0, &v(&[(0, 1)])), h.class_of(0, &v(&[(2, 1)])));
        assert_eq!(h.project(1, &v(&[(0, 1)])).len(), 1);
    }

    #[test]
    fn quotient_by_subcomplex() {
        // relative chains of the circle modulo the vertex 2
        let c = circle();
        let qs = vec![
            Quotient::new(Subspace::span(3, [v(&[(2, 1)])])),
            Quotient::identity(3),
        ];
        let q = quotient_complex(&[c.differential(0).to_vec(), c.differential(1).to_vec()], &qs);
        assert_eq!(q.dims(), &[2, 3]);
        assert_eq!(q.homology().dims(), vec![0, 1]);
    }

    #[test]
    fn betti_exact_prefix() {
        let b = BettiTable {
            dims: vec![1, 0, 1],
            exact: vec![true, true, false],
            max_weight: 2,
            max_degree: 2,
        };
        assert_eq!(b.exact_through(), Some(1));
        assert_eq!(b.exact_dims(), vec![1, 0]);
    }
}
