use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lqt_core::ainfty::{cyclic_homology, AInftyAlgebra, AInftyError};
use lqt_core::coalgebra::{Vector, WeightCap};
use lqt_core::constructions::{gl, lie_ify};
use lqt_core::document::{check, from_linfty, parse, AlgebraDocument, Structure};
use lqt_core::homology::BettiTable;
use lqt_core::linfty::{lie_homology_with_budget, Coinvariants, LInftyAlgebra, LInftyError};
use lqt_core::lqt::{verify_lqt, LqtError, LqtOptions};
use lqt_core::Scalar;

const EXIT_VALIDATION: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "lqt", version, about = "Exact homology of A∞ and L∞ algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Caps {
    /// Maximum number of tensor factors.
    #[arg(long)]
    max_weight: Option<usize>,
    /// Maximum (suspended) chain degree.
    #[arg(long)]
    max_degree: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Certify δ² = 0 (and the unit axioms) inside the cap.
    Check {
        file: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Emit the L∞ document of the Lie-ification of an A∞ input.
    Lieify {
        file: PathBuf,
        /// Certify the input up to this many tensor factors first.
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
    },
    /// Cyclic homology.
    Hc {
        file: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Chevalley–Eilenberg homology of an L∞ input, of the Lie-ification of
    /// an A∞ input, or of gl_n of an A∞ input with --n.
    Ce {
        file: PathBuf,
        #[command(flatten)]
        caps: Caps,
        #[arg(long)]
        n: Option<usize>,
        /// `gl` for gl_n(K) (requires --n), or a comma list of basis labels
        /// spanning a degree-0 subalgebra.
        #[arg(long)]
        coinvariants: Option<String>,
        /// Maximum number of chains per degree.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Compare H(gl_n(A)) with the free graded-commutative algebra on
    /// shifted cyclic homology.
    Lqt {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = vec![3, 4])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Also check the block-sum product at the smallest size.
        #[arg(long)]
        hopf: bool,
        #[arg(long)]
        budget: Option<usize>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(m: impl ToString) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: m.to_string(),
        }
    }
}

fn classify_linfty(e: LInftyError) -> Failure {
    let code = match e {
        LInftyError::Budget { .. } | LInftyError::CapTooSmall => EXIT_CAP,
        _ => EXIT_VALIDATION,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn classify_ainfty(e: AInftyError) -> Failure {
    let code = match e {
        AInftyError::CapTooSmall => EXIT_CAP,
        _ => EXIT_VALIDATION,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn classify_lqt(e: LqtError) -> Failure {
    match e {
        LqtError::LInfty(e) => classify_linfty(e),
        LqtError::AInfty(e) => classify_ainfty(e),
        e @ (LqtError::Budget { .. } | LqtError::NotExact(_)) => Failure {
            code: EXIT_CAP,
            message: e.to_string(),
        },
        e => Failure::validation(e),
    }
}

fn load(file: &PathBuf) -> Result<(AlgebraDocument, Structure), Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::validation(format!("{}: {e}", file.display())))?;
    let doc = parse(&text).map_err(|diags| {
        Failure::validation(
            diags
                .iter()
                .map(|d| format!("{}:{d}", file.display()))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    })?;
    let s = Structure::from_document(&doc).map_err(Failure::validation)?;
    Ok((doc, s))
}

/// Refuses to compute with an uncertified structure.
fn certify(s: &Structure, cap: &WeightCap) -> Result<(), Failure> {
    let r = check(s, cap);
    if r.holds {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VIOLATION,
            message: format!(
                "not a valid structure: {}",
                serde_json::to_string(&r.witness).expect("serializable")
            ),
        })
    }
}

fn betti_text(name: &str, t: &BettiTable) -> String {
    let mut s = format!("{name}\ndegree ");
    for k in 0..t.dims.len() {
        s += &format!("{k:>5}");
    }
    s += "\ndim    ";
    for (d, e) in t.dims.iter().zip(&t.exact) {
        s += &format!("{:>5}", if *e { d.to_string() } else { format!("≥{d}") });
    }
    s.push('\n');
    s
}

struct Output {
    json: Value,
    text: String,
    code: u8,
}

fn caps_json(cap: &WeightCap) -> Value {
    json!({ "max_weight": cap.max_weight, "max_degree": cap.max_degree })
}

fn inputs_json(file: &PathBuf, doc: &AlgebraDocument) -> Value {
    json!({ "file": file.display().to_string(), "algebra": doc.name, "kind": doc.kind })
}

fn ainfty_of(s: &Structure) -> Result<&AInftyAlgebra, Failure> {
    match s {
        Structure::A(a) => Ok(a),
        Structure::L(_) => Err(Failure::validation("this command needs an A∞ (associative, dga or ainfty) document")),
    }
}

fn subalgebra(l: &LInftyAlgebra, list: &str) -> Result<Coinvariants, Failure> {
    let basis = list
        .split(',')
        .map(|x| {
            l.space()
                .index_of(x.trim())
                .map(|i| Vector::single(i as u32, Scalar::one()))
                .ok_or_else(|| Failure::validation(format!("unknown label {x:?} in --coinvariants")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Coinvariants::subalgebra(l, basis).map_err(classify_linfty)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Check { file, caps } => {
            let (doc, s) = load(file)?;
            let base = doc.weight_cap(4, 8);
            let cap = WeightCap::new(caps.max_weight.unwrap_or(base.max_weight), caps.max_degree.unwrap_or(base.max_degree))
                .map_err(Failure::validation)?;
            let r = check(&s, &cap);
            let text = match &r.witness {
                None => format!(
                    "{}: valid on {} words (weight ≤ {}, degree ≤ {})\n",
                    r.name,
                    r.words_checked.unwrap_or(0),
                    cap.max_weight,
                    cap.max_degree
                ),
                Some(w) => format!(
                    "{}: violation ({:?}) on ({})\n{}\n",
                    r.name,
                    w.kind,
                    w.word.join(", "),
                    w.output
                        .iter()
                        .map(|(c, t)| format!("  {c} ({})", t.join(", ")))
                        .collect::<Vec<_>>()
                        .join("\n")
                ),
            };
            Ok(Output {
                json: json!({ "command": "check", "inputs": inputs_json(file, &doc), "caps": caps_json(&cap), "verdicts": r }),
                text,
                code: if r.holds { 0 } else { EXIT_VIOLATION },
            })
        }
        Command::Lieify { file, max_arity } => {
            let (_, s) = load(file)?;
            let a = ainfty_of(&s)?;
            let cap = WeightCap::new(*max_arity, i64::MAX / 4).map_err(Failure::validation)?;
            certify(&s, &cap)?;
            let out = from_linfty(&lie_ify(a));
            Ok(Output {
                json: serde_json::to_value(&out).expect("serializable"),
                text: out.to_json(),
                code: 0,
            })
        }
        Command::Hc { file, caps } => {
            let (doc, s) = load(file)?;
            let d = caps.max_degree.unwrap_or(doc.weight_cap(6, 4).max_degree);
            let cap = WeightCap::new(caps.max_weight.unwrap_or((d + 2).max(1) as usize), d).map_err(Failure::validation)?;
            certify(&s, &cap)?;
            let t = cyclic_homology(ainfty_of(&s)?, &cap).map_err(classify_ainfty)?;
            Ok(Output {
                text: betti_text(&format!("HC of {}", doc.name), &t),
                json: json!({ "command": "hc", "inputs": inputs_json(file, &doc), "caps": caps_json(&cap), "tables": { "cyclic": t } }),
                code: 0,
            })
        }
        Command::Ce {
            file,
            caps,
            n,
            coinvariants,
            budget,
        } => {
            let (doc, s) = load(file)?;
            let d = caps.max_degree.unwrap_or(doc.weight_cap(6, 4).max_degree);
            let cap = WeightCap::new(caps.max_weight.unwrap_or((d + 2).max(1) as usize), d).map_err(Failure::validation)?;
            certify(&s, &cap)?;
            let (l, coinv) = match (&s, n) {
                (Structure::A(a), Some(n)) => {
                    let g = gl(a, *n).map_err(Failure::validation)?;
                    let coinv = match coinvariants.as_deref() {
                        None => None,
                        Some("gl") => Some(g.gl_k_coinvariants().map_err(Failure::validation)?),
                        Some(list) => Some(subalgebra(&g.lie, list)?),
                    };
                    (g.lie, coinv)
                }
                (Structure::L(_), Some(_)) => {
                    return Err(Failure::validation("--n needs an A∞ document"));
                }
                (s, None) => {
                    let l = match s {
                        Structure::A(a) => lie_ify(a),
                        Structure::L(l) => l.clone(),
                    };
                    let coinv = match coinvariants.as_deref() {
                        None => None,
                        Some("gl") => return Err(Failure::validation("--coinvariants gl needs --n")),
                        Some(list) => Some(subalgebra(&l, list)?),
                    };
                    (l, coinv)
                }
            };
            let h = lie_homology_with_budget(&l, &cap, coinv.as_ref(), *budget).map_err(classify_linfty)?;
            let prim = h.primitive_dims();
            let mut text = betti_text(&format!("H of {}", l.name()), &h.table);
            text += "prim   ";
            for p in &prim {
                text += &format!("{p:>5}");
            }
            text.push('\n');
            Ok(Output {
                text,
                json: json!({
                    "command": "ce",
                    "inputs": { "file": file.display().to_string(), "algebra": l.name(), "n": n, "coinvariants": coinvariants },
                    "caps": caps_json(&cap),
                    "tables": { "homology": h.table, "primitives": prim },
                }),
                code: 0,
            })
        }
        Command::Lqt {
            file,
            n,
            max_degree,
            hopf,
            budget,
        } => {
            let (doc, s) = load(file)?;
            let cap = WeightCap::new(max_degree + 2, *max_degree as i64).map_err(Failure::validation)?;
            certify(&s, &cap)?;
            let a = ainfty_of(&s)?;
            let r = verify_lqt(
                a,
                &LqtOptions {
                    sizes: n.clone(),
                    max_degree: *max_degree,
                    hopf: *hopf,
                    budget: *budget,
                },
            )
            .map_err(classify_lqt)?;
            Ok(Output {
                text: r.to_text(),
                json: json!({
                    "command": "lqt",
                    "inputs": inputs_json(file, &doc),
                    "caps": { "max_degree": max_degree, "sizes": r.sizes, "budget": budget },
                    "tables": { "homology": r.homology, "cyclic": r.cyclic, "exterior": r.exterior, "hopf": r.hopf },
                    "verdicts": r.degrees,
                }),
                code: 0,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("--jobs: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
