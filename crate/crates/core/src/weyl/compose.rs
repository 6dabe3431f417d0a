use num_complex::Complex64;

use super::symbol::WeylSymbol;

/// Symbol of `h(X, P)`: every monomial `p^m x^n` of `poly` is replaced by
/// the Weyl-symmetrized star product of `m` copies of `p_sym` and `n`
/// copies of `x_sym`.
///
/// Symmetrization averages over the `C(m+n, m)` distinct orderings of the
/// factors; identical factors need not be permuted among themselves.
pub fn compose_weyl(poly: &WeylSymbol, x_sym: &WeylSymbol, p_sym: &WeylSymbol) -> WeylSymbol {
    let mut out = WeylSymbol::zero();
    let mut scale: f64 = 0.0;
    for (m, c) in poly.terms() {
        let sym = symmetric_product(m.p, m.x, p_sym, x_sym);
        let term = sym.scale(c);
        scale = scale.max(term.max_abs());
        for (k, v) in term.terms() {
            out.add_term(k, v);
        }
    }
    out.canonicalize_scaled(scale);
    out
}

/// Average of all distinct star-product orderings of `n_a` copies of `a`
/// and `n_b` copies of `b`.
pub fn symmetric_product(n_a: u32, n_b: u32, a: &WeylSymbol, b: &WeylSymbol) -> WeylSymbol {
    let mut acc = WeylSymbol::zero();
    let mut count = 0u64;
    let mut scale: f64 = 0.0;
    walk(&WeylSymbol::one(), n_a, n_b, a, b, &mut acc, &mut count, &mut scale);
    acc.canonicalize_scaled(scale);
    acc.scale(Complex64::new(1.0 / count as f64, 0.0))
}

#[allow(clippy::too_many_arguments)]
fn walk(
    prefix: &WeylSymbol,
    n_a: u32,
    n_b: u32,
    a: &WeylSymbol,
    b: &WeylSymbol,
    acc: &mut WeylSymbol,
    count: &mut u64,
    scale: &mut f64,
) {
    if n_a == 0 && n_b == 0 {
        *scale = scale.max(prefix.max_abs());
        for (k, v) in prefix.terms() {
            acc.add_term(k, v);
        }
        *count += 1;
        return;
    }
    if n_a > 0 {
        walk(&prefix.star(a), n_a - 1, n_b, a, b, acc, count, scale);
    }
    if n_b > 0 {
        walk(&prefix.star(b), n_a, n_b - 1, a, b, acc, count, scale);
    }
}
