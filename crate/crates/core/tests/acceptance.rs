//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion whose literal statement is unattainable is printed as FAIL
//! with the reason. The process still succeeds in that case as long as
//! everything that *can* be checked holds, and the independent oracle
//! confirms that the shortfall is mathematical (see the notes in the
//! README).

mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use common::*;
use lqt_core::ainfty::cyclic_homology;
use lqt_core::coalgebra::{coproduct_tensor, Cochain, Coderivation, Flavor, TensorPair, Vector, WeightCap};
use lqt_core::constructions::{gl, lie_ify};
use lqt_core::document::{check, Kind, Structure};
use lqt_core::fixtures;
use lqt_core::graded::{Element, GradedSpace, Word};
use lqt_core::linfty::{
    check_derivation, induced_map, inner_action_on_homology, lie_homology, lie_homology_full, DerivationOutcome,
    LInftyAlgebra,
};
use lqt_core::lqt::hopf_product_on_homology;
use lqt_core::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion.
enum Status {
    Pass,
    /// The literal criterion is not met, but only for reasons the oracle
    /// shows to be mathematical; every checkable part holds.
    Infeasible,
    Fail,
}

struct Report {
    hard_failures: usize,
}

impl Report {
    fn line(&mut self, id: usize, status: Status, secs: f64, detail: String) {
        let tag = match status {
            Status::Pass => "PASS",
            Status::Infeasible => "FAIL",
            Status::Fail => {
                self.hard_failures += 1;
                "FAIL"
            }
        };
        println!("{tag} criterion {id} ({secs:.2}s): {detail}");
    }
}

fn fixture_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn lqt(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lqt")).args(args).output().expect("binary runs")
}

// ---------------------------------------------------------------- criterion 1

fn criterion_1() -> (Status, String) {
    let cap = WeightCap::new(4, 8).unwrap();
    let mut details = Vec::new();
    let mut short = Vec::new();
    let mut broken = Vec::new();
    for name in fixtures::VALID.iter().copied() {
        let doc = fixtures::document(name);
        if !check(&fixtures::structure(name), &cap).holds {
            broken.push(format!("{name} itself rejected"));
        }
        let mutants = fixtures::sign_flip_mutants(&doc, usize::MAX);
        let mut failing = 0;
        let mut undecided = 0;
        for (flips, m) in &mutants {
            let r = check(&Structure::from_document(m).unwrap(), &cap);
            match oracle_valid(m) {
                Some(valid) if valid != r.holds => broken.push(format!("{name} {flips:?}: check {} oracle {valid}", r.holds)),
                None => undecided += 1,
                _ => {}
            }
            if !r.holds {
                // a witness must name a word of the algebra
                match &r.witness {
                    Some(w) if !w.word.is_empty() || m.kind != Kind::Ainfty => failing += 1,
                    _ => broken.push(format!("{name} {flips:?}: failure without witness")),
                }
            }
        }
        if undecided > 0 {
            broken.push(format!("{name}: oracle undecided on {undecided} mutants"));
        }
        details.push(format!("{name} {failing}/{}", mutants.len()));
        if failing < 5 {
            short.push(name);
        }
    }
    let detail = format!("failing sign-flip mutants per fixture: {}", details.join(", "));
    if !broken.is_empty() {
        (Status::Fail, format!("{detail}; {}", broken.join("; ")))
    } else if short.is_empty() {
        (Status::Pass, detail)
    } else {
        (
            Status::Infeasible,
            format!(
                "{detail}; fewer than 5 invalid sign flips exist for {} (every flip enumerated, check agrees with the oracle on all)",
                short.join(", ")
            ),
        )
    }
}

// ---------------------------------------------------------------- criterion 2

/// `Δ(δw) − (δ⊗1 + 1⊗δ)Δw` for the deconcatenation coproduct, assembled here
/// from `apply_word` alone.
fn coleibniz_defect_tensor(d: &Coderivation, space: &GradedSpace, w: &[u32]) -> TensorPair {
    let mut lhs = TensorPair::new();
    for (v, c) in d.apply_word(w).iter() {
        for pair in coproduct_tensor(v) {
            lhs.add_term(pair, c.clone());
        }
    }
    let p = d.parity();
    for (u, v) in coproduct_tensor(w) {
        for (du, c) in d.apply_word(&u).iter() {
            lhs.add_term((du.clone(), v.clone()), -c.clone());
        }
        let sign = Scalar::sign((p * space.word_degree(&u)).rem_euclid(2) == 1);
        for (dv, c) in d.apply_word(&v).iter() {
            lhs.add_term((u.clone(), dv.clone()), -(c * &sign));
        }
    }
    lhs
}

fn squares_to_zero(d: &Coderivation, words: &[Word]) -> bool {
    words.iter().all(|w| {
        let mut out = Element::new();
        for (v, c) in d.apply_word(w).iter() {
            out.add_scaled(&d.apply_word(v), c);
        }
        out.is_zero()
    })
}

fn criterion_2() -> (Status, String) {
    let cap = WeightCap::new(4, 64).unwrap();
    let mut bad = Vec::new();
    let mut words_checked = 0;
    let mut monomials_checked = 0;
    let mut symmetric: Vec<LInftyAlgebra> = vec![fixtures::linfty("sl2"), fixtures::linfty("gl2")];
    for name in ["K", "dual", "upper", "dga", "m3"] {
        let a = fixtures::ainfty(name);
        let d = a.coderivation();
        let words = cap.tensor_words(a.space());
        words_checked += words.len();
        if words.iter().any(|w| !coleibniz_defect_tensor(&d, a.space(), w).is_zero()) {
            bad.push(format!("{name}: tensor co-Leibniz"));
        }
        if !squares_to_zero(&d, &words) {
            bad.push(format!("{name}: δ_m² ≠ 0"));
        }
        symmetric.push(lie_ify(&a));
    }
    for l in &symmetric {
        let d = l.coderivation();
        let monomials = cap.monomials(l.space());
        monomials_checked += monomials.len();
        if monomials.iter().any(|w| !d.satisfies_coleibniz(w)) {
            bad.push(format!("{}: symmetric co-Leibniz", l.name()));
        }
        if !squares_to_zero(&d, &monomials) {
            bad.push(format!("{}: δ_ℓ² ≠ 0", l.name()));
        }
        // the same brackets read as a tensor cochain still extend to a coderivation
        let t = Coderivation::new(l.ell().with_flavor(Flavor::Tensor));
        let words = cap.tensor_words(l.space());
        words_checked += words.len();
        if words.iter().any(|w| !coleibniz_defect_tensor(&t, l.space(), w).is_zero()) {
            bad.push(format!("{}: tensor co-Leibniz", l.name()));
        }
    }
    let detail = format!(
        "{words_checked} tensor words and {monomials_checked} symmetric monomials of weight ≤ 4 across {} structures",
        5 + symmetric.len()
    );
    if bad.is_empty() {
        (Status::Pass, detail)
    } else {
        (Status::Fail, format!("{detail}; {}", bad.join("; ")))
    }
}

// ---------------------------------------------------------------- criterion 3

fn criterion_3() -> (Status, String) {
    let cap = WeightCap::new(5, 3).unwrap();
    let mut rows = Vec::new();
    let mut ok = true;
    for name in ["K", "dual", "upper"] {
        let (t, _) = tables(&fixtures::document(name));
        let oracle = connes_hc(&t, 3);
        let ours = cyclic_homology(&fixtures::ainfty(name), &cap).unwrap();
        ok &= ours.dims == oracle && ours.exact.iter().all(|e| *e);
        if name == "K" {
            ok &= oracle == vec![1, 0, 1, 0];
        }
        rows.push(format!("{name} {:?} vs oracle {:?}", ours.dims, oracle));
    }
    (if ok { Status::Pass } else { Status::Fail }, rows.join(", "))
}

// ---------------------------------------------------------------- criterion 4

fn criterion_4() -> (Status, String) {
    let cap = WeightCap::new(5, 3).unwrap();
    let mut rows = Vec::new();
    let mut ok = true;
    for name in ["sl2", "gl2"] {
        let oracle = ce_homology(&lie_table(&fixtures::document(name)), 3);
        let ours = lie_homology(&fixtures::linfty(name), &cap, None).unwrap();
        ok &= ours.dims == oracle;
        if name == "sl2" {
            ok &= oracle == vec![1, 0, 0, 1];
        }
        rows.push(format!("{name} {:?} vs oracle {:?}", ours.dims, oracle));
    }
    (if ok { Status::Pass } else { Status::Fail }, rows.join(", "))
}

// ---------------------------------------------------------------- criterion 5

/// A random `d'`: either `ι_x` for a random element `x` (so the inner
/// derivation is `ad x`, degree 0) or a random linear endomorphism (degree
/// −1 inner derivation).
fn random_d_prime(l: &LInftyAlgebra, rng: &mut ChaCha8Rng, adjoint: bool) -> Cochain {
    let space = l.space().clone();
    let n = space.dim() as u32;
    let rv = |rng: &mut ChaCha8Rng| -> Vector {
        let mut v = Vec::new();
        for i in 0..n {
            if rng.gen_bool(0.6) {
                v.push((i, Scalar::from_int(rng.gen_range(-3..=3))));
            }
        }
        v.into_iter().collect()
    };
    if adjoint {
        let mut d = Cochain::new(space, Flavor::Symmetric, 1);
        d.add(&[], &rv(rng)).unwrap();
        d
    } else {
        let mut d = Cochain::new(space, Flavor::Symmetric, 0);
        for i in 0..n {
            d.add(&[i], &rv(rng)).unwrap();
        }
        d
    }
}

fn criterion_5() -> (Status, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let cap = WeightCap::new(5, 3).unwrap();
    let algebras = [fixtures::linfty("sl2"), gl(&fixtures::ainfty("dual"), 2).unwrap().lie];
    let mut rows = Vec::new();
    let mut ok = true;
    for l in &algebras {
        let mut zero = 0;
        let mut nontrivial = 0;
        for trial in 0..10 {
            let d = random_d_prime(l, &mut rng, trial % 2 == 0);
            let m = inner_action_on_homology(l, &d, &cap).unwrap();
            if m.is_zero() {
                zero += 1;
            }
            nontrivial += m.columns.iter().filter(|(_, c)| c.iter().any(|col| !col.is_empty())).count();
        }
        ok &= zero == 10;
        rows.push(format!("{}: {zero}/10 zero ({nontrivial} nonempty blocks)", l.name()));
    }
    // control: x ↦ Tr(x)·(e11 + e22) on gl2 is a derivation but not inner
    let gl2 = fixtures::linfty("gl2");
    let centre: Vector = [(0, Scalar::one()), (3, Scalar::one())].into_iter().collect();
    let mut t = Cochain::new(gl2.space().clone(), Flavor::Symmetric, 0);
    t.add(&[0], &centre).unwrap();
    t.add(&[3], &centre).unwrap();
    let control = match check_derivation(&gl2, &t, &WeightCap::new(5, 4).unwrap()).unwrap() {
        DerivationOutcome::Derivation(der) => {
            let h = lie_homology_full(&gl2, &cap, None).unwrap();
            !induced_map(&h, &der).unwrap().is_zero()
        }
        _ => false,
    };
    ok &= control;
    rows.push(format!("control trace derivation on gl2 nonzero: {control}"));
    (if ok { Status::Pass } else { Status::Fail }, rows.join(", "))
}

// ---------------------------------------------------------------- criterion 6

fn criterion_6() -> (Status, String) {
    let cap = WeightCap::new(5, 3).unwrap();
    let mut rows = Vec::new();
    let mut ok = true;
    for name in ["K", "dual"] {
        let g = gl(&fixtures::ainfty(name), 2).unwrap();
        let full = lie_homology(&g.lie, &cap, None).unwrap();
        let reduced = lie_homology(&g.lie, &cap, Some(&g.gl_k_coinvariants().unwrap())).unwrap();
        ok &= full.dims == reduced.dims && full.exact.iter().chain(&reduced.exact).all(|e| *e);
        rows.push(format!("gl2({name}) {:?} vs coinvariants {:?}", full.dims, reduced.dims));
    }
    (if ok { Status::Pass } else { Status::Fail }, rows.join(", "))
}

// ---------------------------------------------------------------- criterion 7

fn criterion_7() -> (Status, String) {
    let mut rows = Vec::new();
    let mut ok = true;
    for (file, degree, expected) in [("K.alg", "4", vec![1, 1, 0, 1, 1]), ("dual.alg", "3", vec![1, 2, 1, 2])] {
        let out = lqt(&["lqt", &fixture_path(file), "--n", "3,4", "--max-degree", degree, "--format", "json"]);
        if !out.status.success() {
            ok = false;
            rows.push(format!("{file}: exit {:?}", out.status.code()));
            continue;
        }
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let verdicts: Vec<&str> = v["verdicts"].as_array().unwrap().iter().map(|d| d["verdict"].as_str().unwrap()).collect();
        let left: Vec<i64> = v["verdicts"].as_array().unwrap().iter().map(|d| d["left"].as_i64().unwrap_or(-1)).collect();
        let prim_ok = v["verdicts"].as_array().unwrap().iter().all(|d| match d["cyclic"].as_i64() {
            Some(c) => d["primitives"].as_i64() == Some(c),
            None => d["primitives"].as_i64() == Some(0),
        });
        let all_match = verdicts.iter().all(|s| *s == "MATCH");
        let dims_ok = left == expected.iter().map(|&x| x as i64).collect::<Vec<_>>();
        ok &= all_match && dims_ok && prim_ok;
        rows.push(format!("{file}: stable dims {left:?}, verdicts {verdicts:?}, primitives = HC_(k-1): {prim_ok}"));
    }
    (if ok { Status::Pass } else { Status::Fail }, rows.join("; "))
}

// ---------------------------------------------------------------- criterion 8

fn criterion_8() -> (Status, String) {
    let h = hopf_product_on_homology(&fixtures::ainfty("K"), 3, 4, None).unwrap();
    let ok = h.unit && h.commutative && h.associative && h.pairs_checked > 0 && h.triples_checked > 0 && h.triples_skipped == 0;
    (
        if ok { Status::Pass } else { Status::Fail },
        format!(
            "gl3(K), degrees ≤ 4: unit {}, commutative {} on {} pairs, associative {} on {} triples ({} skipped)",
            h.unit, h.commutative, h.pairs_checked, h.associative, h.triples_checked, h.triples_skipped
        ),
    )
}

// ---------------------------------------------------------------- criterion 9

fn criterion_9() -> (Status, String) {
    let runs: Vec<Vec<String>> = vec![
        vec!["check".into(), fixture_path("upper.alg")],
        vec!["check".into(), fixture_path("nonassoc.alg")],
        vec!["lieify".into(), fixture_path("dual.alg")],
        vec!["hc".into(), fixture_path("K.alg"), "--max-degree".into(), "4".into()],
        vec!["ce".into(), fixture_path("sl2.alg"), "--max-degree".into(), "3".into()],
        vec!["lqt".into(), fixture_path("K.alg"), "--n".into(), "2,3".into(), "--max-degree".into(), "3".into(), "--hopf".into()],
    ];
    let mut same = 0;
    for args in &runs {
        let mut a: Vec<&str> = args.iter().map(String::as_str).collect();
        a.extend(["--format", "json"]);
        let (x, y) = (lqt(&a), lqt(&a));
        if x.stdout == y.stdout && !x.stdout.is_empty() && serde_json::from_slice::<serde_json::Value>(&x.stdout).is_ok() {
            same += 1;
        }
    }
    (
        if same == runs.len() { Status::Pass } else { Status::Fail },
        format!("{same}/{} commands byte-identical across two runs", runs.len()),
    )
}

fn main() {
    // `cargo test -- <filter>` style arguments are accepted and ignored
    let mut report = Report { hard_failures: 0 };
    let criteria: [fn() -> (Status, String); 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    for (i, c) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (status, detail) = c();
        report.line(i + 1, status, t.elapsed().as_secs_f64(), detail);
    }
    if report.hard_failures > 0 {
        eprintln!("{} criterion(s) failed", report.hard_failures);
        std::process::exit(1);
    }
}
