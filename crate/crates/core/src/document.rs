//! JSON algebra documents.
//!
//! ```json
//! {
//!   "name": "K",
//!   "kind": "associative",
//!   "basis": [{ "label": "1", "degree": 0 }],
//!   "unit": "1",
//!   "ops": [{ "arity": 2, "inputs": ["1", "1"], "output": [["1", "1"]] }]
//! }
//! ```
//!
//! Degrees are unsuspended. `associative` and `dga` documents give the
//! ordinary product `a·b` and differential `d` (which lowers degree by one).
//! `ainfty` and `linfty` documents give the suspended operations
//! `m_k, ℓ_k : V[1]^{⊗k} → V[1]` directly, so each raises unsuspended degree
//! by `k − 2`. Coefficients are rational strings `"p/q"`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ainfty::{check_stasheff, AInftyAlgebra, AInftyError, StasheffOutcome};
use crate::coalgebra::{Cochain, CoalgebraError, Flavor, SquareZero, Vector, WeightCap};
use crate::graded::{Element, GradedSpace};
use crate::linfty::{check_linfty, LInftyAlgebra, LInftyError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Associative,
    Dga,
    Ainfty,
    Linfty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Op {
    pub arity: usize,
    pub inputs: Vec<String>,
    /// `(coefficient, label)` pairs.
    pub output: Vec<(String, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_arity: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub kind: Kind,
    pub basis: Vec<BasisEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default)]
    pub ops: Vec<Op>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<Caps>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticKind {
    Syntax,
    UnknownLabel,
    DuplicateLabel,
    DuplicateOp,
    NonRational,
    DegreeParity,
    Arity,
    Unit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    /// 1-based line of the offending entry, when it can be located.
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{l}:{c}: ")?,
            (Some(l), None) => write!(f, "{l}: ")?,
            _ => {}
        }
        if !self.path.is_empty() {
            write!(f, "{}: ", self.path)?;
        }
        write!(f, "{}", self.message)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DocumentError {
    #[error("{} diagnostic(s):\n{}", .0.len(), .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Diagnostic>),
    #[error("expected {expected} document, found {found:?}")]
    WrongKind { expected: &'static str, found: Kind },
    #[error(transparent)]
    AInfty(#[from] AInftyError),
    #[error(transparent)]
    LInfty(#[from] LInftyError),
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
}

/// Line numbers of the `n`-th occurrence of `"key":` in the raw text.
fn key_lines(text: &str, key: &str) -> Vec<usize> {
    let needle = format!("\"{key}\"");
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let mut rest = line;
        while let Some(p) = rest.find(&needle) {
            rest = &rest[p + needle.len()..];
            if rest.trim_start().starts_with(':') {
                out.push(lineno + 1);
            }
        }
    }
    out
}

pub fn parse(text: &str) -> Result<AlgebraDocument, Vec<Diagnostic>> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| {
        vec![Diagnostic {
            kind: DiagnosticKind::Syntax,
            line: Some(e.line()),
            column: Some(e.column()),
            path: String::new(),
            message: e.to_string(),
        }]
    })?;
    let diags = doc.validate(Some(text));
    if diags.is_empty() {
        Ok(doc)
    } else {
        Err(diags)
    }
}

impl AlgebraDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// All load-time diagnostics; `source` is used to attach line numbers.
    pub fn validate(&self, source: Option<&str>) -> Vec<Diagnostic> {
        let label_lines = source.map(|t| key_lines(t, "label")).unwrap_or_default();
        let op_lines = source.map(|t| key_lines(t, "arity")).unwrap_or_default();
        let unit_line = source.and_then(|t| key_lines(t, "unit").first().copied());
        let mut diags = Vec::new();
        let mut push = |kind, line: Option<usize>, path: String, message: String| {
            diags.push(Diagnostic {
                kind,
                line,
                column: None,
                path,
                message,
            })
        };

        let mut degree = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            if degree.insert(b.label.as_str(), b.degree).is_some() {
                push(
                    DiagnosticKind::DuplicateLabel,
                    label_lines.get(i).copied(),
                    format!("basis[{i}]"),
                    format!("label {:?} appears twice", b.label),
                );
            }
            if b.degree < 0 {
                push(
                    DiagnosticKind::DegreeParity,
                    label_lines.get(i).copied(),
                    format!("basis[{i}]"),
                    format!("negative degree {}", b.degree),
                );
            }
        }

        if let Some(u) = &self.unit {
            match degree.get(u.as_str()) {
                None => push(DiagnosticKind::UnknownLabel, unit_line, "unit".into(), format!("unknown label {u:?}")),
                Some(&d) if d != 0 => push(DiagnosticKind::Unit, unit_line, "unit".into(), format!("unit {u:?} has degree {d}")),
                _ if self.kind == Kind::Linfty => push(
                    DiagnosticKind::Unit,
                    unit_line,
                    "unit".into(),
                    "linfty documents have no unit".into(),
                ),
                _ => {}
            }
        }

        let mut seen = BTreeSet::new();
        for (i, op) in self.ops.iter().enumerate() {
            let line = op_lines.get(i).copied();
            let path = format!("ops[{i}]");
            let allowed = match self.kind {
                Kind::Associative => op.arity == 2,
                Kind::Dga => op.arity == 1 || op.arity == 2,
                Kind::Ainfty | Kind::Linfty => op.arity >= 1,
            };
            if !allowed || op.inputs.len() != op.arity {
                push(
                    DiagnosticKind::Arity,
                    line,
                    path.clone(),
                    format!("arity {} with {} inputs is not allowed here", op.arity, op.inputs.len()),
                );
                continue;
            }
            let mut in_degree = 0;
            let mut ok = true;
            for (j, x) in op.inputs.iter().enumerate() {
                match degree.get(x.as_str()) {
                    Some(d) => in_degree += d,
                    None => {
                        ok = false;
                        push(
                            DiagnosticKind::UnknownLabel,
                            line,
                            format!("{path}.inputs[{j}]"),
                            format!("unknown label {x:?}"),
                        );
                    }
                }
            }
            let key = match self.kind {
                Kind::Linfty => {
                    let mut k = op.inputs.clone();
                    k.sort();
                    k
                }
                _ => op.inputs.clone(),
            };
            if !seen.insert((op.arity, key)) {
                push(
                    DiagnosticKind::DuplicateOp,
                    line,
                    path.clone(),
                    format!("a second entry for inputs {:?}", op.inputs),
                );
            }
            let expected = match (self.kind, op.arity) {
                (Kind::Dga, 1) => in_degree - 1,
                (Kind::Associative | Kind::Dga, _) => in_degree,
                (_, k) => in_degree + k as i64 - 2,
            };
            for (j, (c, y)) in op.output.iter().enumerate() {
                if c.parse::<Scalar>().is_err() {
                    push(
                        DiagnosticKind::NonRational,
                        line,
                        format!("{path}.output[{j}]"),
                        format!("coefficient {c:?} is not a rational \"p/q\""),
                    );
                }
                match degree.get(y.as_str()) {
                    None => push(
                        DiagnosticKind::UnknownLabel,
                        line,
                        format!("{path}.output[{j}]"),
                        format!("unknown label {y:?}"),
                    ),
                    Some(&d) if ok && d != expected => push(
                        DiagnosticKind::DegreeParity,
                        line,
                        format!("{path}.output[{j}]"),
                        format!("output {y:?} has degree {d}, expected {expected}"),
                    ),
                    _ => {}
                }
            }
        }
        diags
    }

    fn space(&self) -> Arc<GradedSpace> {
        Arc::new(
            GradedSpace::new(self.basis.iter().map(|b| (b.label.clone(), b.degree)))
                .expect("validated basis"),
        )
    }

    fn ensure_valid(&self) -> Result<(), DocumentError> {
        let diags = self.validate(None);
        if diags.is_empty() {
            Ok(())
        } else {
            Err(DocumentError::Invalid(diags))
        }
    }

    fn vector(&self, space: &GradedSpace, output: &[(String, String)]) -> Vector {
        let mut v = Vector::new();
        for (c, y) in output {
            let c: Scalar = c.parse().expect("validated coefficient");
            v.add_term(space.index_of(y).expect("validated label") as u32, c);
        }
        v
    }

    fn inputs(&self, space: &GradedSpace, op: &Op) -> Vec<u32> {
        op.inputs
            .iter()
            .map(|x| space.index_of(x).expect("validated label") as u32)
            .collect()
    }

    /// The A∞-structure described by an associative, dga or ainfty document,
    /// without checking the Stasheff identities or the unit axioms.
    pub fn to_ainfty(&self) -> Result<AInftyAlgebra, DocumentError> {
        self.ensure_valid()?;
        let space = self.space();
        let mut m = Cochain::new(space.clone(), Flavor::Tensor, -1);
        for op in &self.ops {
            let w = self.inputs(&space, op);
            let mut v = self.vector(&space, &op.output);
            match self.kind {
                Kind::Associative | Kind::Dga if op.arity == 2 => {
                    // m₂(sa, sb) = (-1)^{|a|} s(ab)
                    v = v.scaled(&Scalar::sign(space.degree(w[0] as usize).rem_euclid(2) == 1));
                }
                Kind::Linfty => {
                    return Err(DocumentError::WrongKind {
                        expected: "an associative, dga or ainfty",
                        found: self.kind,
                    })
                }
                _ => {}
            }
            m.add(&w, &v)?;
        }
        let unit = self.unit.as_ref().map(|u| space.index_of(u).expect("validated label") as u32);
        Ok(AInftyAlgebra::new(self.name.clone(), m, unit)?)
    }

    /// The L∞-structure described by a linfty document, without checking
    /// the generalized Jacobi identities.
    pub fn to_linfty(&self) -> Result<LInftyAlgebra, DocumentError> {
        self.ensure_valid()?;
        if self.kind != Kind::Linfty {
            return Err(DocumentError::WrongKind {
                expected: "a linfty",
                found: self.kind,
            });
        }
        let space = self.space();
        let mut ell = Cochain::new(space.clone(), Flavor::Symmetric, -1);
        for op in &self.ops {
            let w = self.inputs(&space, op);
            ell.add(&w, &self.vector(&space, &op.output))?;
        }
        Ok(LInftyAlgebra::new(self.name.clone(), ell)?)
    }

    pub fn cap(&self) -> Option<Caps> {
        self.caps
    }

    /// The cap from the document, with defaults for missing fields.
    pub fn weight_cap(&self, max_weight: usize, max_degree: i64) -> WeightCap {
        let c = self.caps.unwrap_or(Caps {
            max_weight: None,
            max_degree: None,
            max_arity: None,
        });
        WeightCap::new(c.max_weight.unwrap_or(max_weight), c.max_degree.unwrap_or(max_degree))
            .expect("positive weight")
    }
}

fn ops_from(c: &Cochain) -> Vec<Op> {
    let space = c.space();
    c.canonical_table()
        .into_iter()
        .map(|(w, out)| Op {
            arity: w.len(),
            inputs: w.iter().map(|&x| space.label(x as usize).to_string()).collect(),
            output: out
                .into_iter()
                .map(|(y, s)| (s.to_string(), space.label(y as usize).to_string()))
                .collect(),
        })
        .collect()
}

fn basis_from(space: &GradedSpace) -> Vec<BasisEntry> {
    (0..space.dim())
        .map(|i| BasisEntry {
            label: space.label(i).to_string(),
            degree: space.degree(i),
        })
        .collect()
}

/// An `ainfty` document for `a`, in the suspended convention.
pub fn from_ainfty(a: &AInftyAlgebra) -> AlgebraDocument {
    AlgebraDocument {
        name: a.name().to_string(),
        kind: Kind::Ainfty,
        basis: basis_from(a.space()),
        unit: a.unit().map(|u| a.space().label(u as usize).to_string()),
        ops: ops_from(a.m()),
        caps: None,
    }
}

pub fn from_linfty(l: &LInftyAlgebra) -> AlgebraDocument {
    AlgebraDocument {
        name: l.name().to_string(),
        kind: Kind::Linfty,
        basis: basis_from(l.space()),
        unit: None,
        ops: ops_from(l.ell()),
        caps: None,
    }
}

/// A loaded document, not yet certified.
#[derive(Debug, Clone)]
pub enum Structure {
    A(AInftyAlgebra),
    L(LInftyAlgebra),
}

impl Structure {
    pub fn from_document(doc: &AlgebraDocument) -> Result<Self, DocumentError> {
        match doc.kind {
            Kind::Linfty => Ok(Structure::L(doc.to_linfty()?)),
            _ => Ok(Structure::A(doc.to_ainfty()?)),
        }
    }

    pub fn space(&self) -> &GradedSpace {
        match self {
            Structure::A(a) => a.space(),
            Structure::L(l) => l.space(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `δ² ≠ 0` on a word.
    SquareZero,
    /// A strict unit axiom fails on a word.
    Unit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub word: Vec<String>,
    /// Nonzero `(coefficient, word)` terms of `δ²(word)`; empty for unit witnesses.
    pub output: Vec<(String, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub holds: bool,
    pub max_weight: usize,
    pub max_degree: i64,
    pub words_checked: Option<usize>,
    pub witness: Option<Witness>,
}

fn labels(space: &GradedSpace, w: &[u32]) -> Vec<String> {
    w.iter().map(|&x| space.label(x as usize).to_string()).collect()
}

/// Certifies `δ² = 0` (and the unit axioms) inside `cap`, or returns the
/// first failing word.
pub fn check(s: &Structure, cap: &WeightCap) -> CheckReport {
    let space = s.space();
    let outcome = match s {
        Structure::A(a) => match check_stasheff(a, cap) {
            StasheffOutcome::Certificate { words_checked, .. } => Ok(words_checked),
            StasheffOutcome::Violation { word, output } => Err((WitnessKind::SquareZero, word, output)),
            StasheffOutcome::UnitViolation { word } => Err((WitnessKind::Unit, word, Element::new())),
        },
        Structure::L(l) => match check_linfty(l, cap) {
            SquareZero::Certificate { words_checked, .. } => Ok(words_checked),
            SquareZero::Violation { word, output } => Err((WitnessKind::SquareZero, word, output)),
        },
    };
    let name = match s {
        Structure::A(a) => a.name(),
        Structure::L(l) => l.name(),
    }
    .to_string();
    match outcome {
        Ok(n) => CheckReport {
            name,
            holds: true,
            max_weight: cap.max_weight,
            max_degree: cap.max_degree,
            words_checked: Some(n),
            witness: None,
        },
        Err((kind, word, output)) => CheckReport {
            name,
            holds: false,
            max_weight: cap.max_weight,
            max_degree: cap.max_degree,
            words_checked: None,
            witness: Some(Witness {
                kind,
                word: labels(space, &word),
                output: output.iter().map(|(w, c)| (c.to_string(), labels(space, w))).collect(),
            }),
        },
    }
}
