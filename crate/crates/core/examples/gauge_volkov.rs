//! Free electron in a laser pulse: the Gordon-Volkov propagator against a
//! Crank-Nicolson run, plus the gauge Hamiltonians of an oscillator.

use num_complex::Complex64;
use pseudoherm::dynamics::{
    crank_nicolson_propagate, gauge_residual, grid_norm, gordon_volkov_propagate, kramers_henneberger_gauge,
    velocity_gauge, FreeBasis, Pulse,
};
use pseudoherm::models::{GridHamiltonian, GridSpec, HermitianModel};
use pseudoherm::weyl::WeylSymbol;

fn main() -> pseudoherm::Result<()> {
    let pulse = Pulse::sine(0.4, 1.0, 10.0)?;
    let h0 = WeylSymbol::from_terms([(0, 2, 0.5), (2, 0, 0.5)]);
    println!("velocity gauge at t = 2:  {}", velocity_gauge(&h0, &pulse, 2.0)?);
    println!("K-H gauge at t = 2:       {}", kramers_henneberger_gauge(&h0, &pulse, 2.0)?);
    let (a, b) = gauge_residual(&h0, &pulse, 2.0)?;
    println!("gauge residuals {:.1e} {:.1e}", a.max_abs(), b.max_abs());

    let grid = GridSpec::new(-60.0, 60.0, 2400)?.with_kinetic(0.5);
    let h = grid.step();
    let raw: Vec<Complex64> = grid.nodes().iter().map(|&x| Complex64::new((-x * x / 2.0).exp(), 0.0)).collect();
    let n0 = grid_norm(h, &raw);
    let psi: Vec<Complex64> = raw.iter().map(|z| z / n0).collect();

    let gv = gordon_volkov_propagate(&psi, &pulse, grid, FreeBasis::Periodic, 12.0, 0.0)?;
    let free = GridHamiltonian::new(&HermitianModel::Symbol(WeylSymbol::monomial(0, 2, 0.5)), grid)?;
    let cn = crank_nicolson_propagate(&free, &pulse, &psi, 0.002, 12.0)?;
    let diff: Vec<Complex64> = gv.iter().zip(&cn).map(|(a, b)| a - b).collect();
    println!("\nt = 12: |GV| = {:.12}, |CN - GV| = {:.2e}", grid_norm(h, &gv), grid_norm(h, &diff));
    let mean = |v: &[Complex64]| grid.nodes().iter().zip(v).map(|(x, z)| x * z.norm_sqr()).sum::<f64>() * h;
    println!("<x>: GV {:+.6}, CN {:+.6}", mean(&gv), mean(&cn));
    Ok(())
}
