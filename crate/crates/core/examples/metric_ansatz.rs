//! Recovering a metric from nothing but `H`: least squares over the real
//! coefficients of a polynomial exponent `η² = exp(Σ c x^a p^b)`.

use num_complex::Complex64;
use pseudoherm::metric::solve_metric_ansatz;
use pseudoherm::weyl::WeylSymbol;

fn main() -> pseudoherm::Result<()> {
    let (alpha, g) = (1.0, 0.6);
    let h = WeylSymbol::from_terms([
        (0, 2, Complex64::new(0.5, 0.0)),
        (2, 0, Complex64::new(alpha / 2.0, 0.0)),
        (1, 1, Complex64::new(0.0, -g)),
    ]);
    let monomials = [(2, 0), (0, 2), (1, 1)];
    let sol = solve_metric_ansatz(&h, &monomials)?;
    println!("H = {h}");
    for ((a, b), c) in monomials.iter().zip(&sol.coefficients) {
        println!("  c[x^{a} p^{b}] = {c:+.10}");
    }
    println!("residual norm {:.2e}", sol.residual_norm);
    // the metric is not unique; exp(g x^2) is another solution
    println!("exp(g x^2) would give c[x^2] = {g}, c[p^2] = 0");
    Ok(())
}
