//! Degree-by-degree comparison of the homology of matrix Lie algebras with
//! the free graded-commutative algebra on shifted cyclic homology.
//!
//! The left side is `H_•(gl_n(A))` computed on `gl_n(K)`-coinvariants, with
//! its coproduct, primitives, and the product induced by the block sum. The
//! right side is `Λ(HC_•(A)[1])`, built from the cyclic complex. The two
//! sides share no differential code.

use std::fmt::Write as _;

use serde::Serialize;

use crate::ainfty::{cyclic_homology, AInftyAlgebra, AInftyError};
use crate::coalgebra::WeightCap;
use crate::constructions::{block_plus_letters, gl, map_chain, ConstructionError, Gl};
use crate::graded::{add_monomial, Element};
use crate::homology::BettiTable;
use crate::linalg::{SparseVector, Subspace};
use crate::linfty::{lie_homology_with_budget, LInftyError, LieHomology};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LqtError {
    #[error("cyclic homology is not exact through degree {0}")]
    NotExact(usize),
    #[error("at least one matrix size is required")]
    NoSizes,
    #[error("resource budget exceeded at n = {n}: {source}")]
    Budget { n: usize, source: LInftyError },
    #[error(transparent)]
    AInfty(#[from] AInftyError),
    #[error(transparent)]
    LInfty(#[from] LInftyError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Dimensions of the free graded-commutative algebra on `hc_k` generators of
/// degree `k + 1`, through degree `max_degree`. Odd generators contribute
/// `1 + t^d`, even ones `1/(1 - t^d)`.
pub fn expand_exterior(hc: &BettiTable, max_degree: usize) -> Result<BettiTable, LqtError> {
    if max_degree > 0 {
        if let Some(k) = (0..max_degree).find(|&k| !hc.is_exact(k)) {
            return Err(LqtError::NotExact(k));
        }
    }
    let mut series = vec![0usize; max_degree + 1];
    series[0] = 1;
    for k in 0..max_degree {
        let d = k + 1;
        for _ in 0..hc.dims[k] {
            if d % 2 == 1 {
                for i in (d..=max_degree).rev() {
                    series[i] += series[i - d];
                }
            } else {
                for i in d..=max_degree {
                    series[i] += series[i - d];
                }
            }
        }
    }
    Ok(BettiTable {
        exact: vec![true; max_degree + 1],
        dims: series,
        max_weight: hc.max_weight,
        max_degree: max_degree as i64,
    })
}

/// `H_•(gl_n(A))` on `gl_n(K)`-coinvariants, with the algebra it came from.
pub struct MatrixHomology {
    pub gl: Gl,
    pub homology: LieHomology,
}

pub fn matrix_homology(
    a: &AInftyAlgebra,
    n: usize,
    max_degree: usize,
    budget: Option<usize>,
) -> Result<MatrixHomology, LqtError> {
    let g = gl(a, n)?;
    let coinv = g.gl_k_coinvariants()?;
    let cap = WeightCap::new(max_degree + 2, max_degree as i64).expect("valid cap");
    let homology = lie_homology_with_budget(&g.lie, &cap, Some(&coinv), budget).map_err(|e| match e {
        e @ LInftyError::Budget { .. } => LqtError::Budget { n, source: e },
        e => e.into(),
    })?;
    Ok(MatrixHomology { gl: g, homology })
}

/// The block-sum product on `H_•(gl_n(A))` and its checks.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct HopfReport {
    pub n: usize,
    pub max_degree: usize,
    /// Per degree: whether the corner map `H_k(gl_n) → H_k(gl_2n)` is invertible.
    pub stabilization_invertible: Vec<bool>,
    pub unit: bool,
    pub commutative: bool,
    pub pairs_checked: usize,
    pub associative: bool,
    pub triples_checked: usize,
    /// Triples skipped because an intermediate product could not be pulled
    /// back to `gl_n`.
    pub triples_skipped: usize,
    /// Nonzero structure constants `x_(p,i) · x_(q,j) = Σ c x_(p+q,k)`.
    pub table: Vec<ProductEntry>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ProductEntry {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub result: Vec<(usize, String)>,
}

struct Product<'a> {
    small: &'a MatrixHomology,
    big: &'a MatrixHomology,
    fx: Vec<u32>,
    fy: Vec<u32>,
    corner: Vec<u32>,
    /// Per degree: the corner map's columns spanning `H_k(gl_2n)`, if invertible.
    rho: Vec<Option<Subspace>>,
}

impl Product<'_> {
    fn chain_in_big(&self, k: usize, coords: &[Scalar]) -> Element {
        let mut out = Element::new();
        for (i, c) in coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.add_scaled(&self.small.homology.representative(k, i), c);
        }
        out
    }

    /// `x · y` as a class of `H_{p+q}(gl_2n)`.
    fn multiply(&self, p: usize, x: &[Scalar], q: usize, y: &[Scalar]) -> Vec<Scalar> {
        let space = self.big.gl.lie.space();
        let cx = map_chain(space, &self.fx, &self.chain_in_big(p, x));
        let cy = map_chain(space, &self.fy, &self.chain_in_big(q, y));
        let mut prod = Element::new();
        for (u, a) in cx.iter() {
            for (v, b) in cy.iter() {
                let mut w = u.clone();
                w.extend_from_slice(v);
                add_monomial(space, &mut prod, &w, a * b);
            }
        }
        self.big
            .homology
            .class_of(p + q, &prod)
            .expect("the block sum is a chain map")
    }

    /// `ρ(x)` for a class of `H_k(gl_n)`.
    fn stabilize(&self, k: usize, x: &[Scalar]) -> Vec<Scalar> {
        let chain = map_chain(self.big.gl.lie.space(), &self.corner, &self.chain_in_big(k, x));
        self.big.homology.class_of(k, &chain).expect("corner inclusion is a chain map")
    }

    /// `ρ^{-1}` of a class of `H_k(gl_2n)`.
    fn destabilize(&self, k: usize, z: &[Scalar]) -> Option<Vec<Scalar>> {
        let rho = self.rho[k].as_ref()?;
        let zv = SparseVector::from_pairs(z.iter().cloned().enumerate());
        // rho's basis is the echelon form of the images; express z in the
        // images of the unit classes instead
        let dim = self.small.homology.dim(k);
        let images: Vec<SparseVector> = (0..dim)
            .map(|i| {
                let e: Vec<Scalar> = (0..dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect();
                SparseVector::from_pairs(self.stabilize(k, &e).into_iter().enumerate())
            })
            .collect();
        debug_assert!(rho.contains(&zv));
        solve(&images, &zv, self.big.homology.dim(k))
    }
}

/// Coordinates `c` with `Σ c_i columns_i = target`, for independent columns.
fn solve(columns: &[SparseVector], target: &SparseVector, ambient: usize) -> Option<Vec<Scalar>> {
    // augment each column with a marker coordinate past the ambient space
    let aug: Vec<SparseVector> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| c.add(&SparseVector::unit(ambient + i)))
        .collect();
    let s = Subspace::span(ambient + columns.len(), aug);
    let residual = s.reduce(target);
    if residual.entries().iter().any(|(i, _)| *i < ambient) {
        return None;
    }
    // target − Σ c_i (col_i + e_i) reduces to −Σ c_i e_i
    Some((0..columns.len()).map(|i| -residual.get(ambient + i)).collect())
}

fn unit_vec(dim: usize, i: usize) -> Vec<Scalar> {
    (0..dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
}

fn scale_add(acc: &mut [Scalar], v: &[Scalar], c: &Scalar) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += c * x;
    }
}

pub fn hopf_product_on_homology(
    a: &AInftyAlgebra,
    n: usize,
    max_degree: usize,
    budget: Option<usize>,
) -> Result<HopfReport, LqtError> {
    let small = matrix_homology(a, n, max_degree, budget)?;
    let big = matrix_homology(a, 2 * n, max_degree, budget)?;
    hopf_from(&small, &big)
}

fn hopf_from(small: &MatrixHomology, big: &MatrixHomology) -> Result<HopfReport, LqtError> {
    let n = small.gl.n();
    let max_degree = small.homology.max_degree();
    let (fx, fy, _) = block_plus_letters(n, n, small.gl.matrices.dim_base());
    let corner = small.gl.corner_letters(2 * n);
    let mut prod = Product {
        small,
        big,
        fx,
        fy,
        corner,
        rho: Vec::new(),
    };
    let dims: Vec<usize> = (0..=max_degree).map(|k| small.homology.dim(k)).collect();
    let big_dims: Vec<usize> = (0..=max_degree).map(|k| big.homology.dim(k)).collect();
    prod.rho = (0..=max_degree)
        .map(|k| {
            let images = (0..dims[k])
                .map(|i| SparseVector::from_pairs(prod.stabilize(k, &unit_vec(dims[k], i)).into_iter().enumerate()));
            let s = Subspace::span(big_dims[k], images);
            (s.dim() == dims[k] && dims[k] == big_dims[k]).then_some(s)
        })
        .collect();
    let stabilization_invertible: Vec<bool> = prod.rho.iter().map(|r| r.is_some()).collect();

    // the unit is the class of the empty monomial
    let one = {
        let c = small
            .homology
            .class_of(0, &Element::single(Vec::new(), Scalar::one()))
            .expect("the empty monomial is a cycle");
        c
    };
    let mut unit = true;
    for k in 0..=max_degree {
        for i in 0..dims[k] {
            let x = unit_vec(dims[k], i);
            let r = prod.stabilize(k, &x);
            unit &= prod.multiply(k, &x, 0, &one) == r && prod.multiply(0, &one, k, &x) == r;
        }
    }

    let mut commutative = true;
    let mut pairs_checked = 0;
    let mut table = Vec::new();
    for p in 1..=max_degree {
        for q in 1..=max_degree - p {
            for i in 0..dims[p] {
                for j in 0..dims[q] {
                    let (x, y) = (unit_vec(dims[p], i), unit_vec(dims[q], j));
                    let xy = prod.multiply(p, &x, q, &y);
                    let yx = prod.multiply(q, &y, p, &x);
                    let sign = Scalar::sign(p * q % 2 == 1);
                    commutative &= xy.iter().zip(&yx).all(|(a, b)| *a == &sign * b);
                    pairs_checked += 1;
                    if p <= q {
                        let result: Vec<(usize, String)> = match prod.destabilize(p + q, &xy) {
                            Some(c) => c
                                .iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(k, c)| (k, c.to_string()))
                                .collect(),
                            None => xy
                                .iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(k, c)| (k, format!("{c} (in gl_{})", 2 * n)))
                                .collect(),
                        };
                        if !result.is_empty() {
                            table.push(ProductEntry {
                                left: (p, i),
                                right: (q, j),
                                result,
                            });
                        }
                    }
                }
            }
        }
    }

    let mut associative = true;
    let mut triples_checked = 0;
    let mut triples_skipped = 0;
    for p in 1..=max_degree {
        for q in 1..=max_degree - p {
            for r in 1..=max_degree.saturating_sub(p + q) {
                for i in 0..dims[p] {
                    for j in 0..dims[q] {
                        for l in 0..dims[r] {
                            let (x, y, z) = (unit_vec(dims[p], i), unit_vec(dims[q], j), unit_vec(dims[r], l));
                            let (Some(xy), Some(yz)) = (
                                prod.destabilize(p + q, &prod.multiply(p, &x, q, &y)),
                                prod.destabilize(q + r, &prod.multiply(q, &y, r, &z)),
                            ) else {
                                triples_skipped += 1;
                                continue;
                            };
                            let mut left = vec![Scalar::zero(); big_dims[p + q + r]];
                            scale_add(&mut left, &prod.multiply(p + q, &xy, r, &z), &Scalar::one());
                            let mut right = vec![Scalar::zero(); big_dims[p + q + r]];
                            scale_add(&mut right, &prod.multiply(p, &x, q + r, &yz), &Scalar::one());
                            associative &= left == right;
                            triples_checked += 1;
                        }
                    }
                }
            }
        }
    }

    Ok(HopfReport {
        n,
        max_degree,
        stabilization_invertible,
        unit,
        commutative,
        pairs_checked,
        associative,
        triples_checked,
        triples_skipped,
        table,
    })
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Match,
    Mismatch,
    Unstable,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SizeRow {
    pub n: usize,
    pub dims: Vec<usize>,
    pub exact: Vec<bool>,
    pub primitive_dims: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: usize,
    /// Smaller size of the first consecutive pair with equal dimensions.
    pub stable_from: Option<usize>,
    pub left: Option<usize>,
    pub right: usize,
    pub primitives: Option<usize>,
    /// `HC_{k-1}`, the expected primitive dimension (absent for `k = 0`).
    pub cyclic: Option<usize>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LqtReport {
    pub algebra: String,
    pub sizes: Vec<usize>,
    pub max_degree: usize,
    pub homology: Vec<SizeRow>,
    pub cyclic: Vec<usize>,
    pub exterior: Vec<usize>,
    pub degrees: Vec<DegreeRow>,
    pub hopf: Option<HopfReport>,
}

impl LqtReport {
    pub fn all_stable_match(&self) -> bool {
        self.degrees.iter().all(|d| d.verdict != Verdict::Mismatch)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra {}  sizes {:?}  degrees 0..={}", self.algebra, self.sizes, self.max_degree);
        let _ = write!(s, "{:<12}", "degree");
        for k in 0..=self.max_degree {
            let _ = write!(s, "{k:>6}");
        }
        s.push('\n');
        for row in &self.homology {
            let _ = write!(s, "{:<12}", format!("H gl_{}", row.n));
            for d in &row.dims {
                let _ = write!(s, "{d:>6}");
            }
            s.push('\n');
            let _ = write!(s, "{:<12}", format!("prim gl_{}", row.n));
            for d in &row.primitive_dims {
                let _ = write!(s, "{d:>6}");
            }
            s.push('\n');
        }
        let mut line = |name: &str, vals: Vec<String>| {
            let _ = write!(s, "{name:<12}");
            for v in vals {
                let _ = write!(s, "{v:>6}");
            }
            s.push('\n');
        };
        line("HC", self.cyclic.iter().map(|d| d.to_string()).collect());
        line("Λ(HC[1])", self.exterior.iter().map(|d| d.to_string()).collect());
        line(
            "verdict",
            self.degrees
                .iter()
                .map(|d| match d.verdict {
                    Verdict::Match => "MATCH",
                    Verdict::Mismatch => "MISM",
                    Verdict::Unstable => "UNST",
                }
                .to_string())
                .collect(),
        );
        if let Some(h) = &self.hopf {
            let _ = writeln!(
                s,
                "hopf (n = {}): unit {}  commutative {} ({} pairs)  associative {} ({} triples, {} skipped)",
                h.n, h.unit, h.commutative, h.pairs_checked, h.associative, h.triples_checked, h.triples_skipped
            );
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct LqtOptions {
    pub sizes: Vec<usize>,
    pub max_degree: usize,
    /// Also run the product checks at the smallest size.
    pub hopf: bool,
    /// Maximum number of monomials per chain degree.
    pub budget: Option<usize>,
}

pub fn verify_lqt(a: &AInftyAlgebra, opts: &LqtOptions) -> Result<LqtReport, LqtError> {
    let mut sizes = opts.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.is_empty() {
        return Err(LqtError::NoSizes);
    }
    let d = opts.max_degree;
    let results: Vec<MatrixHomology> = sizes
        .iter()
        .map(|&n| matrix_homology(a, n, d, opts.budget))
        .collect::<Result<_, _>>()?;
    let rows: Vec<SizeRow> = results
        .iter()
        .map(|m| SizeRow {
            n: m.gl.n(),
            dims: m.homology.table.dims.clone(),
            exact: m.homology.table.exact.clone(),
            primitive_dims: m.homology.primitive_dims(),
        })
        .collect();

    let hc = cyclic_homology(a, &WeightCap::new(d + 2, d as i64).expect("valid cap"))?;
    let exterior = expand_exterior(&hc, d)?;

    let degrees = (0..=d)
        .map(|k| {
            let right = exterior.dims[k];
            let cyclic = (k > 0).then(|| hc.dims[k - 1]);
            // a pair (n, n') is stable in degree k when both agree and n' ≥ k
            let stable = rows.windows(2).find(|w| {
                w[1].n >= k
                    && w[0].exact[k]
                    && w[1].exact[k]
                    && w[0].dims[k] == w[1].dims[k]
                    && w[0].primitive_dims[k] == w[1].primitive_dims[k]
            });
            match stable {
                None => DegreeRow {
                    degree: k,
                    stable_from: None,
                    left: None,
                    right,
                    primitives: None,
                    cyclic,
                    verdict: Verdict::Unstable,
                },
                Some(w) => {
                    let left = w[1].dims[k];
                    let prim = w[1].primitive_dims[k];
                    let ok = left == right && cyclic.map_or(prim == 0, |c| c == prim);
                    DegreeRow {
                        degree: k,
                        stable_from: Some(w[0].n),
                        left: Some(left),
                        right,
                        primitives: Some(prim),
                        cyclic,
                        verdict: if ok { Verdict::Match } else { Verdict::Mismatch },
                    }
                }
            }
        })
        .collect();

    let hopf = if opts.hopf {
        let big = matrix_homology(a, 2 * sizes[0], d, opts.budget)?;
        Some(hopf_from(&results[0], &big)?)
    } else {
        None
    };

    Ok(LqtReport {
        algebra: a.name().to_string(),
        sizes,
        max_degree: d,
        homology: rows,
        cyclic: hc.dims.clone(),
        exterior: exterior.dims,
        degrees,
        hopf,
    })
}
