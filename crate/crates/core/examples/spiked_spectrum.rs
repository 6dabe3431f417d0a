//! Spiked harmonic oscillator: grid spectrum against `λ(4n + 2α + 2)`,
//! closed-form eigenfunction overlaps and a few matrix elements.

use pseudoherm::models::{
    hermitian_spectrum_refined, spiked_energy, spiked_matrix_element, spiked_overlap, GridSpec, HermitianModel,
    MatrixElementKind, SpikedHOModel, SpikedVariant,
};

fn main() -> pseudoherm::Result<()> {
    let (lambda, alpha) = (0.5, 0.2);
    let model = SpikedHOModel::new(lambda, alpha, 0.0, SpikedVariant::PSquared)?;

    let grid = GridSpec::new(0.0, 12.0, 1000)?;
    let es = hermitian_spectrum_refined(&HermitianModel::Spiked { lambda, alpha }, grid, 5)?;
    println!("n   grid energy       exact   error");
    for (n, e) in es.eigenvalues.iter().enumerate() {
        let exact = spiked_energy(&model, n);
        println!("{n}   {e:.10}   {exact:.4}   {:.2e}", (e - exact).abs());
    }

    println!("\noverlaps <phi_n|phi_m>");
    for n in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|m| format!("{:+.2e}", spiked_overlap(&model, n, m).unwrap()))
            .collect();
        println!("  {}", row.join("  "));
    }

    let x32 = spiked_matrix_element(&model, MatrixElementKind::Position, 3, 2)?;
    let p32 = spiked_matrix_element(&model, MatrixElementKind::Momentum, 3, 2)?;
    println!("\n<3|x|2> = {:.12}", x32.re);
    println!("<3|p|2> = {:.12}i", p32.im);
    for xi in [0.0, 0.5, 1.0, 1.5] {
        let m = SpikedHOModel::new(lambda, alpha, xi, SpikedVariant::PSquared)?;
        let mapped = spiked_matrix_element(&m, MatrixElementKind::MappedPosition, 3, 2)?;
        println!("xi = {xi:.1}: <3|eta x eta^-1|2> = {:+.6}", mapped.re);
    }
    Ok(())
}
