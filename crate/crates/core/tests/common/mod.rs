//! Independent dense oracles. Nothing here uses the library's linear algebra,
//! coalgebras or complexes; the only shared piece is the document struct,
//! read field by field.
#![allow(dead_code)]

use std::collections::HashMap;

use lqt_core::document::{AlgebraDocument, Kind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn parse_q(s: &str) -> Q {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    Q::new(n.trim().parse().unwrap(), d.trim().parse().unwrap())
}

/// Rank of a dense matrix given by columns.
pub fn rank(columns: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = columns.iter().filter(|c| c.iter().any(|x| !x.is_zero())).cloned().collect();
    let rows = m.first().map_or(0, |c| c.len());
    let mut r = 0;
    for row in 0..rows {
        let Some(p) = (r..m.len()).find(|&j| !m[j][row].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][row].recip();
        let pivot: Vec<Q> = m[r].iter().map(|x| x * &inv).collect();
        for c in m.iter_mut().skip(r + 1) {
            if !c[row].is_zero() {
                let f = c[row].clone();
                for (x, y) in c.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        m[r] = pivot;
        r += 1;
    }
    r
}

/// Structure constants `mult[a][b][c]` of a finite-dimensional algebra.
#[derive(Clone)]
pub struct Table {
    pub dim: usize,
    pub mult: Vec<Vec<Vec<Q>>>,
}

impl Table {
    pub fn zero(dim: usize) -> Self {
        Table {
            dim,
            mult: vec![vec![vec![q(0); dim]; dim]; dim],
        }
    }

    pub fn product(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![q(0); self.dim];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (c, m) in self.mult[a][b].iter().enumerate() {
                    out[c] += xa * yb * m;
                }
            }
        }
        out
    }

    pub fn e(&self, i: usize) -> Vec<Q> {
        let mut v = vec![q(0); self.dim];
        v[i] = q(1);
        v
    }
}

fn index_map(doc: &AlgebraDocument) -> HashMap<&str, usize> {
    doc.basis.iter().enumerate().map(|(i, b)| (b.label.as_str(), i)).collect()
}

/// Arity-2 and arity-1 constants of a document, read literally.
pub fn tables(doc: &AlgebraDocument) -> (Table, Vec<Vec<Q>>) {
    let idx = index_map(doc);
    let n = doc.basis.len();
    let mut t = Table::zero(n);
    let mut d = vec![vec![q(0); n]; n];
    for op in &doc.ops {
        for (c, y) in &op.output {
            let c = parse_q(c);
            let y = idx[y.as_str()];
            match op.arity {
                2 => t.mult[idx[op.inputs[0].as_str()]][idx[op.inputs[1].as_str()]][y] += c,
                1 => d[idx[op.inputs[0].as_str()]][y] += c,
                _ => {}
            }
        }
    }
    (t, d)
}

/// Associativity, Leibniz, `d² = 0` and the unit, for an unsuspended dga
/// table (a plain associative algebra has `d = 0`).
pub fn dga_is_valid(doc: &AlgebraDocument) -> bool {
    let (t, d) = tables(doc);
    let deg: Vec<i64> = doc.basis.iter().map(|b| b.degree).collect();
    let n = t.dim;
    let apply_d = |x: &[Q]| -> Vec<Q> {
        let mut out = vec![q(0); n];
        for (a, xa) in x.iter().enumerate() {
            for (c, v) in d[a].iter().enumerate() {
                out[c] += xa * v;
            }
        }
        out
    };
    for a in 0..n {
        if apply_d(&apply_d(&t.e(a))).iter().any(|x| !x.is_zero()) {
            return false;
        }
        for b in 0..n {
            let ab = t.product(&t.e(a), &t.e(b));
            let sign = if deg[a] % 2 == 0 { q(1) } else { q(-1) };
            let lhs = apply_d(&ab);
            let r1 = t.product(&apply_d(&t.e(a)), &t.e(b));
            let r2 = t.product(&t.e(a), &apply_d(&t.e(b)));
            if (0..n).any(|i| lhs[i] != &r1[i] + &sign * &r2[i]) {
                return false;
            }
            for c in 0..n {
                if t.product(&ab, &t.e(c)) != t.product(&t.e(a), &t.product(&t.e(b), &t.e(c))) {
                    return false;
                }
            }
        }
    }
    if let Some(u) = &doc.unit {
        let u = index_map(doc)[u.as_str()];
        if apply_d(&t.e(u)).iter().any(|x| !x.is_zero()) {
            return false;
        }
        for a in 0..n {
            if t.product(&t.e(u), &t.e(a)) != t.e(a) || t.product(&t.e(a), &t.e(u)) != t.e(a) {
                return false;
            }
        }
    }
    true
}

/// Bracket of an ungraded Lie algebra from a `linfty` document; unordered
/// entries are antisymmetrized.
pub fn lie_table(doc: &AlgebraDocument) -> Table {
    let idx = index_map(doc);
    let mut t = Table::zero(doc.basis.len());
    for op in &doc.ops {
        assert_eq!(op.arity, 2);
        let (x, y) = (idx[op.inputs[0].as_str()], idx[op.inputs[1].as_str()]);
        for (c, z) in &op.output {
            let c = parse_q(c);
            let z = idx[z.as_str()];
            t.mult[x][y][z] += &c;
            if x != y {
                t.mult[y][x][z] -= &c;
            }
        }
    }
    t
}

pub fn jacobi_holds(t: &Table) -> bool {
    let n = t.dim;
    for x in 0..n {
        for y in 0..n {
            if (0..n).any(|z| !(&t.mult[x][y][z] + &t.mult[y][x][z]).is_zero()) {
                return false;
            }
            for z in 0..n {
                let (ex, ey, ez) = (t.e(x), t.e(y), t.e(z));
                let a = t.product(&ex, &t.product(&ey, &ez));
                let b = t.product(&ey, &t.product(&ez, &ex));
                let c = t.product(&ez, &t.product(&ex, &ey));
                if (0..n).any(|i| !(&a[i] + &b[i] + &c[i]).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Validity of a document by the classical axioms for its kind. For `ainfty`
/// documents only the "no composite can be nonzero" criterion is available;
/// `None` means the oracle cannot decide.
pub fn oracle_valid(doc: &AlgebraDocument) -> Option<bool> {
    match doc.kind {
        Kind::Associative | Kind::Dga => Some(dga_is_valid(doc)),
        Kind::Linfty => doc
            .basis
            .iter()
            .all(|b| b.degree == 0)
            .then(|| jacobi_holds(&lie_table(doc))),
        Kind::Ainfty => {
            let outputs: Vec<&String> = doc.ops.iter().flat_map(|o| o.output.iter().map(|(_, y)| y)).collect();
            let inputs_avoid = doc.ops.iter().all(|o| o.inputs.iter().all(|x| !outputs.contains(&x)));
            let no_unit = doc.unit.is_none();
            (inputs_avoid && no_unit).then_some(true)
        }
    }
}

/// Classical cyclic homology `HC_0..=HC_top` of an ungraded associative
/// algebra: `A^{⊗(n+1)}` modulo `1 − t`, `t(a_0,…,a_n) = (−1)^n (a_n,a_0,…)`,
/// with the Hochschild boundary `b`.
pub fn connes_hc(t: &Table, top: usize) -> Vec<usize> {
    let d = t.dim;
    let size = |n: usize| d.pow(n as u32 + 1);
    let digits = |mut w: usize, n: usize| -> Vec<usize> {
        let mut v = vec![0; n + 1];
        for i in (0..=n).rev() {
            v[i] = w % d;
            w /= d;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * d + x);

    let one_minus_t = |n: usize| -> Vec<Vec<Q>> {
        (0..size(n))
            .map(|w| {
                let v = digits(w, n);
                let mut col = vec![q(0); size(n)];
                col[w] += q(1);
                let mut r = vec![v[n]];
                r.extend_from_slice(&v[..n]);
                let s = if n % 2 == 0 { q(1) } else { q(-1) };
                col[encode(&r)] -= s;
                col
            })
            .collect()
    };
    let boundary = |n: usize| -> Vec<Vec<Q>> {
        (0..size(n))
            .map(|w| {
                let v = digits(w, n);
                let mut col = vec![q(0); size(n - 1)];
                for i in 0..n {
                    let s = if i % 2 == 0 { q(1) } else { q(-1) };
                    for (c, m) in t.mult[v[i]][v[i + 1]].iter().enumerate() {
                        if m.is_zero() {
                            continue;
                        }
                        let mut u = v[..i].to_vec();
                        u.push(c);
                        u.extend_from_slice(&v[i + 2..]);
                        col[encode(&u)] += &s * m;
                    }
                }
                let s = if n % 2 == 0 { q(1) } else { q(-1) };
                for (c, m) in t.mult[v[n]][v[0]].iter().enumerate() {
                    if m.is_zero() {
                        continue;
                    }
                    let mut u = vec![c];
                    u.extend_from_slice(&v[1..n]);
                    col[encode(&u)] += &s * m;
                }
                col
            })
            .collect()
    };

    let rel: Vec<Vec<Vec<Q>>> = (0..=top + 1).map(one_minus_t).collect();
    let rel_rank: Vec<usize> = rel.iter().map(|r| rank(r)).collect();
    // rank of b on the quotient: rank(b(C_n) + I_{n-1}) − rank(I_{n-1})
    let b_rank: Vec<usize> = (0..=top + 1)
        .map(|n| {
            if n == 0 {
                return 0;
            }
            let mut cols = boundary(n);
            cols.extend(rel[n - 1].iter().cloned());
            rank(&cols) - rel_rank[n - 1]
        })
        .collect();
    (0..=top)
        .map(|n| size(n) - rel_rank[n] - b_rank[n] - b_rank[n + 1])
        .collect()
}

/// Classical Chevalley–Eilenberg homology `H_0..=H_top` of an ungraded Lie
/// algebra on `Λ^k g` with
/// `d(x_1∧…∧x_k) = Σ_{i<j} (−1)^{i+j} [x_i,x_j]∧x_1∧…x̂_i…x̂_j…∧x_k`.
pub fn ce_homology(t: &Table, top: usize) -> Vec<usize> {
    let n = t.dim;
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    };
    let basis: Vec<Vec<Vec<usize>>> = (0..=top + 1).map(subsets).collect();
    let diff = |k: usize| -> Vec<Vec<Q>> {
        let target: HashMap<&Vec<usize>, usize> = basis[k - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        basis[k]
            .iter()
            .map(|s| {
                let mut col = vec![q(0); basis[k - 1].len()];
                for i in 0..k {
                    for j in i + 1..k {
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        let rest: Vec<usize> = (0..k).filter(|&p| p != i && p != j).map(|p| s[p]).collect();
                        for (z, c) in t.mult[s[i]][s[j]].iter().enumerate() {
                            if c.is_zero() || rest.contains(&z) {
                                continue;
                            }
                            // move z into sorted position within rest
                            let pos = rest.iter().filter(|&&r| r < z).count();
                            let mut w = rest.clone();
                            w.insert(pos, z);
                            let s2 = if pos % 2 == 0 { sign } else { -sign };
                            col[target[&w]] += c * q(s2);
                        }
                    }
                }
                col
            })
            .collect()
    };
    let ranks: Vec<usize> = (0..=top + 1).map(|k| if k == 0 || k > n { 0 } else { rank(&diff(k)) }).collect();
    (0..=top)
        .map(|k| basis[k].len() - ranks[k] - if k < top + 1 { ranks[k + 1] } else { 0 })
        .collect()
}

/// `M_n(A)` commutator Lie algebra, basis `(a, i, j)` at `(i·n + j)·dim + a`.
pub fn gl_table(a: &Table, n: usize) -> Table {
    let d = a.dim;
    let idx = |x: usize, i: usize, j: usize| (i * n + j) * d + x;
    let mut t = Table::zero(n * n * d);
    for x in 0..d {
        for y in 0..d {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            for z in 0..d {
                                let c = &a.mult[x][y][z];
                                if c.is_zero() {
                                    continue;
                                }
                                if j == k {
                                    t.mult[idx(x, i, j)][idx(y, k, l)][idx(z, i, l)] += c;
                                }
                            }
                            for z in 0..d {
                                let c = &a.mult[y][x][z];
                                if c.is_zero() {
                                    continue;
                                }
                                if l == i {
                                    t.mult[idx(x, i, j)][idx(y, k, l)][idx(z, k, j)] -= c;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    t
}
