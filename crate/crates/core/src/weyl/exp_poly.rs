use std::fmt;
use std::ops::{Add, Sub};

use num_complex::Complex64;

use super::symbol::{binomial, moyal_prefactor, WeylSymbol, ZERO_THRESHOLD};

/// One `prefactor · exp(exponent)` term.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm {
    pub prefactor: WeylSymbol,
    pub exponent: WeylSymbol,
}

/// Finite sum of polynomial-times-exponential phase-space functions,
/// `Σ P_k(x,p) exp(E_k(x,p))`.
///
/// Closed under derivatives, pointwise multiplication by a polynomial, and
/// star products with a polynomial on either side. Terms with equal
/// exponents are merged.
#[derive(Clone, Default, PartialEq)]
pub struct ExpPolySymbol {
    terms: Vec<ExpTerm>,
}

fn same_exponent(a: &WeylSymbol, b: &WeylSymbol) -> bool {
    let scale = a.max_abs().max(b.max_abs());
    a.max_abs_diff(b) <= ZERO_THRESHOLD * scale
}

impl ExpPolySymbol {
    pub fn zero() -> Self {
        ExpPolySymbol::default()
    }

    /// `exp(exponent)`.
    pub fn exp(exponent: WeylSymbol) -> Self {
        ExpPolySymbol::term(WeylSymbol::one(), exponent)
    }

    pub fn term(prefactor: WeylSymbol, exponent: WeylSymbol) -> Self {
        let mut out = ExpPolySymbol::zero();
        out.push(prefactor, exponent, 0.0);
        out
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest prefactor coefficient magnitude over all terms.
    pub fn max_prefactor_abs(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.prefactor.max_abs())
            .fold(0.0, f64::max)
    }

    /// Adds `prefactor · exp(exponent)`; `scale` sets the cancellation cut.
    fn push(&mut self, prefactor: WeylSymbol, exponent: WeylSymbol, scale: f64) {
        if let Some(t) = self
            .terms
            .iter_mut()
            .find(|t| same_exponent(&t.exponent, &exponent))
        {
            let s = scale.max(t.prefactor.max_abs()).max(prefactor.max_abs());
            let mut merged = t.prefactor.clone();
            for (m, c) in prefactor.terms() {
                merged.add_term(m, c);
            }
            merged.canonicalize_scaled(s);
            t.prefactor = merged;
        } else {
            let mut pre = prefactor;
            pre.canonicalize_scaled(scale.max(pre.max_abs()));
            self.terms.push(ExpTerm {
                prefactor: pre,
                exponent,
            });
        }
        self.terms.retain(|t| !t.prefactor.is_zero());
    }

    pub fn derivative_x(&self) -> ExpPolySymbol {
        let mut out = ExpPolySymbol::zero();
        for t in &self.terms {
            let d = &t.prefactor.derivative_x(1) + &t.prefactor.pointwise_mul(&t.exponent.derivative_x(1));
            out.push(d, t.exponent.clone(), 0.0);
        }
        out
    }

    pub fn derivative_p(&self) -> ExpPolySymbol {
        let mut out = ExpPolySymbol::zero();
        for t in &self.terms {
            let d = &t.prefactor.derivative_p(1) + &t.prefactor.pointwise_mul(&t.exponent.derivative_p(1));
            out.push(d, t.exponent.clone(), 0.0);
        }
        out
    }

    /// `∂x^i ∂p^j` of the function.
    pub fn derivative(&self, i: u32, j: u32) -> ExpPolySymbol {
        let mut out = self.clone();
        for _ in 0..i {
            out = out.derivative_x();
        }
        for _ in 0..j {
            out = out.derivative_p();
        }
        out
    }

    pub fn mul_poly(&self, f: &WeylSymbol) -> ExpPolySymbol {
        let mut out = ExpPolySymbol::zero();
        for t in &self.terms {
            out.push(t.prefactor.pointwise_mul(f), t.exponent.clone(), 0.0);
        }
        out
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> ExpPolySymbol {
        let f = factor.into();
        let mut out = ExpPolySymbol::zero();
        for t in &self.terms {
            out.push(t.prefactor.scale(f), t.exponent.clone(), 0.0);
        }
        out
    }

    /// Table `D[i][j] = ∂x^i ∂p^j self` for `i + j <= order`.
    fn derivative_table(&self, order: u32) -> Vec<Vec<ExpPolySymbol>> {
        let mut table: Vec<Vec<ExpPolySymbol>> = Vec::new();
        let mut row_start = self.clone();
        for i in 0..=order {
            let mut row = vec![row_start.clone()];
            for _ in 1..=(order - i) {
                let next = row.last().unwrap().derivative_p();
                row.push(next);
            }
            table.push(row);
            if i < order {
                row_start = row_start.derivative_x();
            }
        }
        table
    }

    /// `f ⋆ self` for a polynomial `f`.
    pub fn star_left(&self, f: &WeylSymbol) -> ExpPolySymbol {
        let order = f.total_degree();
        let table = self.derivative_table(order);
        let mut out = ExpPolySymbol::zero();
        let mut pieces = Vec::new();
        for s in 0..=order {
            let pre = moyal_prefactor(s);
            for t in 0..=s {
                let u = s - t;
                // ∂x^t ∂p^u f · ∂x^u ∂p^t G
                let df = f.derivative(t, u);
                if df.is_zero() {
                    continue;
                }
                let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
                let w = pre * (sign * binomial(s, t));
                pieces.push(table[u as usize][t as usize].mul_poly(&df.scale(w)));
            }
        }
        let scale = pieces.iter().map(|p| p.max_prefactor_abs()).fold(0.0, f64::max);
        for piece in pieces {
            for t in piece.terms {
                out.push(t.prefactor, t.exponent, scale);
            }
        }
        out
    }

    /// `self ⋆ g` for a polynomial `g`.
    pub fn star_right(&self, g: &WeylSymbol) -> ExpPolySymbol {
        let order = g.total_degree();
        let table = self.derivative_table(order);
        let mut out = ExpPolySymbol::zero();
        let mut pieces = Vec::new();
        for s in 0..=order {
            let pre = moyal_prefactor(s);
            for t in 0..=s {
                let u = s - t;
                // ∂x^t ∂p^u G · ∂x^u ∂p^t g
                let dg = g.derivative(u, t);
                if dg.is_zero() {
                    continue;
                }
                let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
                let w = pre * (sign * binomial(s, t));
                pieces.push(table[t as usize][u as usize].mul_poly(&dg.scale(w)));
            }
        }
        let scale = pieces.iter().map(|p| p.max_prefactor_abs()).fold(0.0, f64::max);
        for piece in pieces {
            for t in piece.terms {
                out.push(t.prefactor, t.exponent, scale);
            }
        }
        out
    }

    pub fn evaluate(&self, x: Complex64, p: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.prefactor.evaluate(x, p) * t.exponent.evaluate(x, p).exp())
            .sum()
    }

    fn combine(&self, rhs: &ExpPolySymbol, sign: f64) -> ExpPolySymbol {
        let scale = self.max_prefactor_abs().max(rhs.max_prefactor_abs());
        let mut out = ExpPolySymbol::zero();
        for t in &self.terms {
            out.push(t.prefactor.clone(), t.exponent.clone(), scale);
        }
        for t in &rhs.terms {
            out.push(t.prefactor.scale(sign), t.exponent.clone(), scale);
        }
        out
    }
}

impl Add for &ExpPolySymbol {
    type Output = ExpPolySymbol;
    fn add(self, rhs: &ExpPolySymbol) -> ExpPolySymbol {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &ExpPolySymbol {
    type Output = ExpPolySymbol;
    fn sub(self, rhs: &ExpPolySymbol) -> ExpPolySymbol {
        self.combine(rhs, -1.0)
    }
}

impl fmt::Debug for ExpPolySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpPolySymbol({self})")
    }
}

impl fmt::Display for ExpPolySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{}] exp[{}]", t.prefactor, t.exponent)?;
        }
        Ok(())
    }
}
