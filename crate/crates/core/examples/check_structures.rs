//! Certifying the shipped fixtures and extracting a witness from a broken one.

use lqt_core::coalgebra::WeightCap;
use lqt_core::document::check;
use lqt_core::fixtures;

fn main() {
    let cap = WeightCap::new(4, 8).unwrap();
    for name in fixtures::VALID.iter().chain(["nonassoc"].iter()) {
        let r = check(&fixtures::structure(name), &cap);
        match &r.witness {
            None => println!("{name:>9}: certified on {} words", r.words_checked.unwrap()),
            Some(w) => println!("{name:>9}: fails on ({}) with {:?}", w.word.join(", "), w.output),
        }
    }

    // flipping the sign of [h, e] breaks the Jacobi identity
    let flipped = fixtures::flip_signs(&fixtures::document("sl2"), &[(0, 0)]);
    let s = lqt_core::document::Structure::from_document(&flipped).unwrap();
    println!("sl2 with [h,e] = -2e: {:?}", check(&s, &cap).witness);
}
