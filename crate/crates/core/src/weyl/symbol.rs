use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative magnitude below which a coefficient is treated as zero.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Largest total degree accepted by [`symmetrize`].
pub const MAX_DEGREE: u32 = 64;

/// Exponent pair of a phase-space monomial `x^x p^p`.
///
/// Ordering is by `x` first, then `p`, which is also the serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x: u32,
    pub p: u32,
}

impl Monomial {
    pub const fn new(x: u32, p: u32) -> Self {
        Monomial { x, p }
    }

    pub fn degree(self) -> u32 {
        self.x + self.p
    }
}

/// Weyl symbol of a polynomial operator in `x` and `p` (atomic units, ħ = 1).
///
/// A symbol `p^m x^n` stands for the totally symmetric (Weyl-ordered)
/// operator product of `m` momenta and `n` positions. Operator products
/// become [`WeylSymbol::star`] products and the adjoint becomes coefficient
/// conjugation.
#[derive(Clone, Default, PartialEq)]
pub struct WeylSymbol {
    terms: BTreeMap<Monomial, Complex64>,
}

pub(crate) fn falling(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * f64::from(n - j))
}

pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * f64::from(n - j) / f64::from(j + 1))
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * f64::from(j))
}

/// `(-i/2)^s / s!`, the prefactor of order `s` in the Moyal expansion.
pub(crate) fn moyal_prefactor(s: u32) -> Complex64 {
    let phase = match s % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    phase * (0.5f64.powi(s as i32) / factorial(s))
}

impl WeylSymbol {
    pub fn zero() -> Self {
        WeylSymbol::default()
    }

    pub fn one() -> Self {
        WeylSymbol::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        WeylSymbol::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        WeylSymbol::monomial(1, 0, 1.0)
    }

    pub fn p() -> Self {
        WeylSymbol::monomial(0, 1, 1.0)
    }

    /// The single term `c · x^deg_x p^deg_p`.
    pub fn monomial(deg_x: u32, deg_p: u32, c: impl Into<Complex64>) -> Self {
        let mut s = WeylSymbol::zero();
        s.add_term(Monomial::new(deg_x, deg_p), c.into());
        s.canonicalize();
        s
    }

    /// Builds a symbol from `(deg_x, deg_p, coefficient)` triples; repeated
    /// monomials are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<Complex64>,
    {
        let mut s = WeylSymbol::zero();
        for (dx, dp, c) in terms {
            s.add_term(Monomial::new(dx, dp), c.into());
        }
        s.canonicalize();
        s
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Complex64) {
        *self.terms.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    /// Iterates over `(monomial, coefficient)` in `(deg_x, deg_p)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Complex64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg_x: u32, deg_p: u32) -> Complex64 {
        self.terms
            .get(&Monomial::new(deg_x, deg_p))
            .copied()
            .unwrap_or_default()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn degree_p(&self) -> u32 {
        self.terms.keys().map(|m| m.p).max().unwrap_or(0)
    }

    /// Drops coefficients at or below `ZERO_THRESHOLD` relative to the
    /// largest coefficient of the symbol itself.
    pub fn canonicalize(&mut self) {
        let scale = self.max_abs();
        self.canonicalize_scaled(scale);
    }

    /// Drops coefficients at or below `ZERO_THRESHOLD * scale`. Used after
    /// sums and products, where `scale` is the size of the inputs so that
    /// cancellation noise is removed.
    pub(crate) fn canonicalize_scaled(&mut self, scale: f64) {
        let cut = ZERO_THRESHOLD * scale;
        self.terms.retain(|_, c| c.norm() > cut && c.norm() != 0.0);
    }

    /// Largest coefficientwise deviation `max |a_k - b_k|`.
    pub fn max_abs_diff(&self, other: &WeylSymbol) -> f64 {
        let mut worst: f64 = 0.0;
        for (m, c) in &self.terms {
            worst = worst.max((c - other.coeff(m.x, m.p)).norm());
        }
        for (m, c) in &other.terms {
            if !self.terms.contains_key(m) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &WeylSymbol, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> WeylSymbol {
        let f = factor.into();
        let mut out = WeylSymbol {
            terms: self.terms.iter().map(|(m, c)| (*m, c * f)).collect(),
        };
        out.canonicalize_scaled(self.max_abs() * f.norm());
        out
    }

    /// Pointwise (commutative) product of the two phase-space functions.
    pub fn pointwise_mul(&self, other: &WeylSymbol) -> WeylSymbol {
        let mut out = WeylSymbol::zero();
        let mut scale: f64 = 0.0;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                scale = scale.max(c.norm());
                out.add_term(Monomial::new(ma.x + mb.x, ma.p + mb.p), c);
            }
        }
        out.canonicalize_scaled(scale);
        out
    }

    /// `k`-th partial derivative in `x`.
    pub fn derivative_x(&self, k: u32) -> WeylSymbol {
        let mut out = WeylSymbol::zero();
        for (m, c) in &self.terms {
            if m.x >= k {
                out.add_term(Monomial::new(m.x - k, m.p), c * falling(m.x, k));
            }
        }
        out
    }

    /// `k`-th partial derivative in `p`.
    pub fn derivative_p(&self, k: u32) -> WeylSymbol {
        let mut out = WeylSymbol::zero();
        for (m, c) in &self.terms {
            if m.p >= k {
                out.add_term(Monomial::new(m.x, m.p - k), c * falling(m.p, k));
            }
        }
        out
    }

    /// Mixed derivative `∂x^i ∂p^j`.
    pub fn derivative(&self, i: u32, j: u32) -> WeylSymbol {
        let mut out = WeylSymbol::zero();
        for (m, c) in &self.terms {
            if m.x >= i && m.p >= j {
                out.add_term(
                    Monomial::new(m.x - i, m.p - j),
                    c * (falling(m.x, i) * falling(m.p, j)),
                );
            }
        }
        out
    }

    /// Moyal product `self ⋆ other`.
    ///
    /// Convention: `f ⋆ g = f exp[(i/2)(←∂x →∂p − ←∂p →∂x)] g`, so that
    /// `x ⋆ p = xp + i/2` and `x ⋆ p − p ⋆ x = i`. The series terminates
    /// because both factors are polynomials.
    pub fn star(&self, other: &WeylSymbol) -> WeylSymbol {
        let mut out = WeylSymbol::zero();
        let mut scale: f64 = 0.0;
        for (fa, ca) in &self.terms {
            for (gb, cb) in &other.terms {
                let base = ca * cb;
                let smax = (fa.x + fa.p).min(gb.x + gb.p);
                for s in 0..=smax {
                    let pre = moyal_prefactor(s);
                    for t in 0..=s {
                        let u = s - t;
                        // ∂x^t ∂p^u f  ·  ∂x^u ∂p^t g
                        if t > fa.x || u > fa.p || u > gb.x || t > gb.p {
                            continue;
                        }
                        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
                        let w = sign
                            * binomial(s, t)
                            * falling(fa.x, t)
                            * falling(fa.p, u)
                            * falling(gb.x, u)
                            * falling(gb.p, t);
                        let c = base * pre * w;
                        scale = scale.max(c.norm());
                        out.add_term(
                            Monomial::new(fa.x - t + gb.x - u, fa.p - u + gb.p - t),
                            c,
                        );
                    }
                }
            }
        }
        out.canonicalize_scaled(scale);
        out
    }

    /// `self ⋆ other − other ⋆ self`, the symbol of the operator commutator.
    pub fn star_commutator(&self, other: &WeylSymbol) -> WeylSymbol {
        let a = self.star(other);
        let b = other.star(self);
        let scale = a.max_abs().max(b.max_abs());
        let mut out = a.sub_unscaled(&b);
        out.canonicalize_scaled(scale);
        out
    }

    /// Symbol of the adjoint operator: coefficientwise complex conjugation.
    pub fn hermitian_conjugate(&self) -> WeylSymbol {
        WeylSymbol {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// True when all coefficients are real within the zero threshold.
    pub fn is_hermitian(&self) -> bool {
        let scale = self.max_abs();
        self.terms
            .values()
            .all(|c| c.im.abs() <= ZERO_THRESHOLD * scale)
    }

    /// Real part of every coefficient: the symbol of `(A + A†)/2`.
    pub fn hermitian_part(&self) -> WeylSymbol {
        let mut out = WeylSymbol {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, Complex64::new(c.re, 0.0)))
                .collect(),
        };
        out.canonicalize_scaled(self.max_abs());
        out
    }

    /// Imaginary part of every coefficient: the symbol of `(A − A†)/2i`.
    pub fn anti_hermitian_part(&self) -> WeylSymbol {
        let mut out = WeylSymbol {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, Complex64::new(c.im, 0.0)))
                .collect(),
        };
        out.canonicalize_scaled(self.max_abs());
        out
    }

    /// Simultaneous parity and time reversal: `x → −x`, `p → p`, `i → −i`.
    pub fn pt_transform(&self) -> WeylSymbol {
        WeylSymbol {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = c.conj();
                    (*m, if m.x % 2 == 0 { c } else { -c })
                })
                .collect(),
        }
    }

    pub fn is_pt_symmetric(&self) -> bool {
        let tol = ZERO_THRESHOLD * self.max_abs().max(f64::MIN_POSITIVE);
        self.pt_transform().max_abs_diff(self) <= tol
    }

    /// Evaluates the phase-space polynomial at complex `(x, p)`.
    pub fn evaluate(&self, x: Complex64, p: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| c * x.powu(m.x) * p.powu(m.p))
            .sum()
    }

    fn sub_unscaled(&self, other: &WeylSymbol) -> WeylSymbol {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    fn add_unscaled(&self, other: &WeylSymbol) -> WeylSymbol {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        out
    }
}

/// Weyl symbol of the totally symmetric product of `m` momenta and `n`
/// positions. Symmetrized monomials are exactly the plain monomials
/// `p^m x^n` in the Weyl calculus.
pub fn symmetrize(m: u32, n: u32) -> Result<WeylSymbol> {
    let degree = m + n;
    if degree > MAX_DEGREE {
        return Err(Error::Capacity {
            degree,
            max: MAX_DEGREE,
        });
    }
    Ok(WeylSymbol::monomial(n, m, 1.0))
}

impl Add for &WeylSymbol {
    type Output = WeylSymbol;
    fn add(self, rhs: &WeylSymbol) -> WeylSymbol {
        let scale = self.max_abs().max(rhs.max_abs());
        let mut out = self.add_unscaled(rhs);
        out.canonicalize_scaled(scale);
        out
    }
}

impl Sub for &WeylSymbol {
    type Output = WeylSymbol;
    fn sub(self, rhs: &WeylSymbol) -> WeylSymbol {
        let scale = self.max_abs().max(rhs.max_abs());
        let mut out = self.sub_unscaled(rhs);
        out.canonicalize_scaled(scale);
        out
    }
}

impl Add for WeylSymbol {
    type Output = WeylSymbol;
    fn add(self, rhs: WeylSymbol) -> WeylSymbol {
        &self + &rhs
    }
}

impl Sub for WeylSymbol {
    type Output = WeylSymbol;
    fn sub(self, rhs: WeylSymbol) -> WeylSymbol {
        &self - &rhs
    }
}

impl AddAssign<&WeylSymbol> for WeylSymbol {
    fn add_assign(&mut self, rhs: &WeylSymbol) {
        *self = &*self + rhs;
    }
}

impl Neg for &WeylSymbol {
    type Output = WeylSymbol;
    fn neg(self) -> WeylSymbol {
        WeylSymbol {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for WeylSymbol {
    type Output = WeylSymbol;
    fn neg(self) -> WeylSymbol {
        -&self
    }
}

impl Mul<Complex64> for &WeylSymbol {
    type Output = WeylSymbol;
    fn mul(self, rhs: Complex64) -> WeylSymbol {
        self.scale(rhs)
    }
}

impl Mul<f64> for &WeylSymbol {
    type Output = WeylSymbol;
    fn mul(self, rhs: f64) -> WeylSymbol {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for WeylSymbol {
    type Output = WeylSymbol;
    fn mul(self, rhs: Complex64) -> WeylSymbol {
        self.scale(rhs)
    }
}

impl Mul<f64> for WeylSymbol {
    type Output = WeylSymbol;
    fn mul(self, rhs: f64) -> WeylSymbol {
        self.scale(rhs)
    }
}

impl fmt::Debug for WeylSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylSymbol({self})")
    }
}

impl fmt::Display for WeylSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else if c.re == 0.0 {
                write!(f, "{}i", c.im)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            match m.p {
                0 => {}
                1 => write!(f, " p")?,
                k => write!(f, " p^{k}")?,
            }
            match m.x {
                0 => {}
                1 => write!(f, " x")?,
                k => write!(f, " x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> Complex64 {
        Complex64::new(0.0, 1.0)
    }

    #[test]
    fn x_star_p_has_half_i() {
        let xp = WeylSymbol::x().star(&WeylSymbol::p());
        assert_eq!(xp.coeff(1, 1), Complex64::new(1.0, 0.0));
        assert_eq!(xp.coeff(0, 0), i() * 0.5);
    }

    #[test]
    fn canonical_commutator_is_exact() {
        let c = WeylSymbol::x().star_commutator(&WeylSymbol::p());
        assert_eq!(c, WeylSymbol::constant(i()));
    }

    #[test]
    fn symmetrize_matches_plain_monomial() {
        assert_eq!(symmetrize(1, 1).unwrap(), WeylSymbol::monomial(1, 1, 1.0));
        assert_eq!(symmetrize(0, 0).unwrap(), WeylSymbol::one());
        assert!(matches!(
            symmetrize(40, 30),
            Err(Error::Capacity { degree: 70, .. })
        ));
    }

    #[test]
    fn conjugation_of_imaginary_term() {
        let s = WeylSymbol::monomial(1, 1, i());
        assert_eq!(s.hermitian_conjugate(), WeylSymbol::monomial(1, 1, -i()));
    }

    #[test]
    fn evaluate_examples() {
        let xp = WeylSymbol::monomial(1, 1, 1.0);
        let two = Complex64::new(2.0, 0.0);
        let three = Complex64::new(3.0, 0.0);
        assert_eq!(xp.evaluate(two, three), Complex64::new(6.0, 0.0));
        assert_eq!(WeylSymbol::zero().evaluate(two, three), Complex64::default());
        let s = WeylSymbol::from_terms([(2, 0, 1.0), (0, 2, 1.0)]);
        assert_eq!(s.evaluate(Complex64::new(1.0, 0.0), i()), Complex64::default());
    }

    #[test]
    fn pt_of_x_is_minus_x() {
        assert_eq!(WeylSymbol::x().pt_transform(), -WeylSymbol::x());
    }

    #[test]
    fn cancellation_is_removed_relative_to_inputs() {
        let a = WeylSymbol::from_terms([(0, 0, 1.0), (1, 0, 0.1 + 0.2)]);
        let b = WeylSymbol::from_terms([(0, 0, 1.0), (1, 0, 0.3)]);
        assert!((&a - &b).is_zero());
    }
}
