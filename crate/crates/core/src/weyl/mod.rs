//! Phase-space symbol algebra: Weyl symbols, Moyal star products,
//! conjugation and PT transforms.

mod compose;
mod exp_poly;
mod symbol;
pub mod text;

pub use compose::{compose_weyl, symmetric_product};
pub use exp_poly::{ExpPolySymbol, ExpTerm};
pub use symbol::{symmetrize, Monomial, WeylSymbol, MAX_DEGREE, ZERO_THRESHOLD};

use crate::error::{Error, Result};

/// Either class of phase-space function accepted by [`star`].
#[derive(Clone, Debug, PartialEq)]
pub enum PhaseSpaceFn {
    Poly(WeylSymbol),
    ExpPoly(ExpPolySymbol),
}

impl From<WeylSymbol> for PhaseSpaceFn {
    fn from(s: WeylSymbol) -> Self {
        PhaseSpaceFn::Poly(s)
    }
}

impl From<ExpPolySymbol> for PhaseSpaceFn {
    fn from(s: ExpPolySymbol) -> Self {
        PhaseSpaceFn::ExpPoly(s)
    }
}

/// `f ⋆ g`. At least one side must be polynomial so that the Moyal series
/// terminates; the result has the class of the non-polynomial argument.
pub fn star(f: &PhaseSpaceFn, g: &PhaseSpaceFn) -> Result<PhaseSpaceFn> {
    use PhaseSpaceFn::*;
    match (f, g) {
        (Poly(a), Poly(b)) => Ok(Poly(a.star(b))),
        (Poly(a), ExpPoly(b)) => Ok(ExpPoly(b.star_left(a))),
        (ExpPoly(a), Poly(b)) => Ok(ExpPoly(a.star_right(b))),
        (ExpPoly(_), ExpPoly(_)) => Err(Error::UnsupportedOperands),
    }
}

/// `f ⋆ g − g ⋆ f` with the closure rules of [`star`].
pub fn star_commutator(f: &PhaseSpaceFn, g: &PhaseSpaceFn) -> Result<PhaseSpaceFn> {
    use PhaseSpaceFn::*;
    match (star(f, g)?, star(g, f)?) {
        (Poly(a), Poly(b)) => Ok(Poly(&a - &b)),
        (ExpPoly(a), ExpPoly(b)) => Ok(ExpPoly(&a - &b)),
        _ => unreachable!("star preserves the operand class"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_exponentials_are_rejected() {
        let e = PhaseSpaceFn::from(ExpPolySymbol::exp(WeylSymbol::x()));
        assert_eq!(star(&e, &e), Err(Error::UnsupportedOperands));
        assert_eq!(star_commutator(&e, &e), Err(Error::UnsupportedOperands));
    }

    #[test]
    fn mixed_operands_keep_exponential_class() {
        let e = PhaseSpaceFn::from(ExpPolySymbol::exp(WeylSymbol::monomial(2, 0, 0.3)));
        let x = PhaseSpaceFn::from(WeylSymbol::x());
        assert!(matches!(star(&x, &e), Ok(PhaseSpaceFn::ExpPoly(_))));
        assert!(matches!(star(&e, &x), Ok(PhaseSpaceFn::ExpPoly(_))));
        // x commutes with any function of x
        match star_commutator(&x, &e).unwrap() {
            PhaseSpaceFn::ExpPoly(r) => assert!(r.is_zero()),
            _ => unreachable!(),
        }
    }
}
