//! Moyal products of polynomial symbols, the Weyl-ordered monomials, and a
//! product with an exponential symbol.

use pseudoherm::weyl::{star, symmetrize, text::to_text, ExpPolySymbol, PhaseSpaceFn, WeylSymbol};

fn main() -> pseudoherm::Result<()> {
    let (x, p) = (WeylSymbol::x(), WeylSymbol::p());
    println!("x * p = {}", x.star(&p));
    println!("[x, p] = {}", x.star_commutator(&p));

    let x2 = WeylSymbol::monomial(2, 0, 1.0);
    let p2 = WeylSymbol::monomial(0, 2, 1.0);
    println!("[x^2, p^2] = {}", x2.star_commutator(&p2));

    // two momenta and one position, symmetrized, is just the monomial p^2 x
    println!("S(2,1) = {}", symmetrize(2, 1)?);

    let h = WeylSymbol::from_terms([(0, 2, 0.5), (2, 0, 0.5)]);
    print!("h in text form:\n{}", to_text(&h));

    let gauss = ExpPolySymbol::exp(WeylSymbol::monomial(2, 0, -1.0));
    if let PhaseSpaceFn::ExpPoly(r) = star(&h.clone().into(), &gauss.into())? {
        println!("h * exp(-x^2) = {r}");
    }
    Ok(())
}
