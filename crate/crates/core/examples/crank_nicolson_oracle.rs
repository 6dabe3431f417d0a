//! Off-resonant `2 → 3` population transfer in the spiked oscillator:
//! direct Crank-Nicolson propagation against first-order perturbation
//! theory, and the `E0²` scaling of the latter.

use std::f64::consts::PI;

use num_complex::Complex64;
use pseudoherm::dynamics::{crank_nicolson_propagate, first_order_transition, grid_overlap, Coupling, Pulse};
use pseudoherm::models::{GridHamiltonian, GridSpec, HermitianModel, SpikedHOModel, SpikedVariant};

fn main() -> pseudoherm::Result<()> {
    let (lambda, alpha) = (0.5, 0.2);
    let (tau, omega) = (35.0 * PI, 1.8);
    let model = SpikedHOModel::new(lambda, alpha, 0.0, SpikedVariant::PSquared)?;
    let ham = GridHamiltonian::new(&HermitianModel::Spiked { lambda, alpha }, GridSpec::new(0.0, 14.0, 1500)?)?;
    let es = ham.eigensystem(4)?;
    let h = ham.grid.step();
    let as_complex = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>();
    let (psi2, psi3) = (as_complex(&es.eigenvectors[2]), as_complex(&es.eigenvectors[3]));

    for e0 in [0.005, 0.0025, 0.00125] {
        let pulse = Pulse::sine(e0, omega, tau)?;
        let psi = crank_nicolson_propagate(&ham, &pulse, &psi2, 0.005, tau)?;
        let cn = grid_overlap(h, &psi3, &psi).norm_sqr();
        let pt = first_order_transition(&model, 2, 3, &pulse, tau, Coupling::CanonicalX)?;
        println!(
            "E0 = {e0:.5}: CN {cn:.6e}  first order {pt:.6e}  rel diff {:.2}%  P/E0^2 = {:.6}",
            100.0 * (cn - pt).abs() / pt,
            pt / (e0 * e0)
        );
    }
    Ok(())
}
