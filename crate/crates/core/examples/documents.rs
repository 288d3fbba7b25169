//! Parsing algebra documents, diagnostics with line numbers, and the
//! suspended-form round trip.

use lqt_core::document::{from_ainfty, parse};
use lqt_core::fixtures;

fn main() {
    let doc = parse(fixtures::source("m3")).unwrap();
    let again = parse(&doc.to_json()).unwrap();
    println!("m3 round-trips: {}", doc == again);

    let broken = fixtures::source("dual").replace(r#"["1", "eps"]]"#, r#"["1", "epsilon"]]"#).replace("\"1\", \"1\"]]", "\"1/0\", \"1\"]]");
    for d in parse(&broken).unwrap_err() {
        println!("{d}");
    }

    // associative documents are stored with the suspension sign folded in
    print!("{}", from_ainfty(&fixtures::ainfty("dga")).to_json());
}
