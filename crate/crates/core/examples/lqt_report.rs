//! H(gl_n(A)) on gl_n(K)-coinvariants against the free graded-commutative
//! algebra on cyclic homology shifted up by one.
//!
//! `cargo run --release --example lqt_report -- dual 3,4 3`

use lqt_core::fixtures;
use lqt_core::lqt::{verify_lqt, LqtOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map_or("K", String::as_str);
    let sizes = args
        .get(1)
        .map_or(vec![3, 4], |s| s.split(',').map(|n| n.parse().unwrap()).collect());
    let max_degree = args.get(2).map_or(4, |d| d.parse().unwrap());
    let report = verify_lqt(
        &fixtures::ainfty(name),
        &LqtOptions {
            sizes,
            max_degree,
            hopf: true,
            budget: None,
        },
    )
    .unwrap();
    print!("{}", report.to_text());
    if let Some(h) = &report.hopf {
        for e in &h.table {
            println!("x{:?} · x{:?} = {:?}", e.left, e.right, e.result);
        }
    }
}
