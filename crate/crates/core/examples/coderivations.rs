//! Extending a cochain to a coderivation of the tensor or symmetric
//! coalgebra, and checking the co-Leibniz rule and δ² = 0 word by word.

use lqt_core::coalgebra::{check_square_zero, Flavor, WeightCap};
use lqt_core::fixtures;

fn main() {
    let cap = WeightCap::new(4, 8).unwrap();
    let a = fixtures::ainfty("upper");
    let d = a.coderivation();
    println!("δ_m(e22, e12, e22) = {:?}", d.apply_word(&[2, 1, 2]));
    let words = cap.tensor_words(a.space());
    let leibniz = words.iter().all(|w| d.satisfies_coleibniz(w));
    println!("tensor flavor: co-Leibniz on {} words: {leibniz}", words.len());
    println!("tensor flavor: {:?}", check_square_zero(&d, &cap));

    let l = fixtures::linfty("sl2");
    let d = l.coderivation();
    assert_eq!(d.flavor(), Flavor::Symmetric);
    let monomials = cap.monomials(l.space());
    let leibniz = monomials.iter().all(|w| d.satisfies_coleibniz(w));
    println!("symmetric flavor: co-Leibniz on {} monomials: {leibniz}", monomials.len());
    println!("symmetric flavor: {:?}", check_square_zero(&d, &cap));
}
