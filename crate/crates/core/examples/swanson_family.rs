//! Generalized Swanson oscillators: the Hermitian partner and the metric come
//! out of a terminating commutator series.

use pseudoherm::metric::{metric_residual, observable_map, DEFAULT_MAX_ORDER};
use pseudoherm::models::{swanson_pair, SwansonFamily};
use pseudoherm::weyl::{ExpPolySymbol, WeylSymbol};

fn main() -> pseudoherm::Result<()> {
    let (alpha, g) = (1.3, 0.4);
    for (n, m) in [(2, 2), (4, 2), (3, 3), (6, 5)] {
        let pair = swanson_pair(n, m, alpha, g)?;
        let fam = SwansonFamily::new(n, m, alpha, g)?;
        println!("n = {n}, m = {m}");
        println!("  H = {}", pair.non_hermitian);
        println!("  h = {}", pair.hermitian);
        println!("  PT symmetric: {}", pair.non_hermitian.is_pt_symmetric());
        let big_p = observable_map(&WeylSymbol::p(), &pair.generator, DEFAULT_MAX_ORDER)?;
        println!("  P = {big_p}  (closed form {})", fam.canonical_p());
        let r = metric_residual(&pair.non_hermitian, &ExpPolySymbol::exp(pair.generator.clone()));
        println!("  metric residual {:.1e}", r.max_prefactor_abs());
    }
    Ok(())
}
