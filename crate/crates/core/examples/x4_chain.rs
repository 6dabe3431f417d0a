//! The `−x⁴` oscillator mapped to the real line: non-Hermitian `H`, its
//! Hermitian partner `h`, the metric, and finite-difference spectra of `h`
//! and of its Fourier partner with a quartic potential.

use pseudoherm::models::{
    hermitian_spectrum_refined, inverted_quartic_partner, minus_x4_chain, GridSpec, HermitianModel,
};

fn main() -> pseudoherm::Result<()> {
    let (alpha, g) = (1.0, 0.5);
    let chain = minus_x4_chain(alpha, g)?;
    println!("H   = {}", chain.pair.non_hermitian);
    println!("h   = {}", chain.pair.hermitian);
    println!("eta^2 = {}", chain.eta2);
    println!("X   = {}", chain.canonical_x);

    let h_levels = hermitian_spectrum_refined(
        &HermitianModel::Symbol(chain.pair.hermitian.clone()),
        GridSpec::new(-12.0, 12.0, 800)?,
        5,
    )?;
    let quartic = hermitian_spectrum_refined(
        &HermitianModel::Symbol(inverted_quartic_partner(g)),
        GridSpec::new(-8.0, 8.0, 800)?,
        5,
    )?;
    println!("\n n   spec(h)        spec(p^2 + 4g^2 x^4 - 2gx)");
    for n in 0..5 {
        println!("{n:2}   {:12.8}   {:12.8}", h_levels.eigenvalues[n], quartic.eigenvalues[n]);
    }
    Ok(())
}
