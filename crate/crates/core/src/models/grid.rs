use crate::error::{Error, Result};
use crate::numeric::SymBand;
use crate::weyl::WeylSymbol;

/// Uniform grid of `points` interior nodes `x_i = x_min + i h`,
/// `h = (x_max − x_min)/(points + 1)`, with Dirichlet walls at both ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    /// Prefactor of `p²` for the special-form models (1 for `p²`, 1/2 for
    /// `p²/2`); symbol models carry their own kinetic coefficients.
    pub kinetic_coefficient: f64,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, points: usize) -> Result<Self> {
        GridSpec {
            x_min,
            x_max,
            points,
            kinetic_coefficient: 1.0,
        }
        .validated()
    }

    pub fn with_kinetic(mut self, c: f64) -> Self {
        self.kinetic_coefficient = c;
        self
    }

    pub fn validated(self) -> Result<Self> {
        if self.points < 16 {
            return Err(Error::Domain(format!("grid needs at least 16 points, got {}", self.points)));
        }
        if !(self.x_min < self.x_max) {
            return Err(Error::Domain(format!("empty interval [{}, {}]", self.x_min, self.x_max)));
        }
        Ok(self)
    }

    pub fn step(&self) -> f64 {
        (self.x_max - self.x_min) / (self.points + 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.x_min + (i + 1) as f64 * self.step()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.node(i)).collect()
    }

    /// Same interval, step halved.
    pub fn refined(&self) -> Self {
        GridSpec {
            points: 2 * self.points + 1,
            ..*self
        }
    }
}

/// Hermitian Hamiltonians the grid solver understands.
#[derive(Clone, Debug, PartialEq)]
pub enum HermitianModel {
    /// Real symbol `V(x) + a₂ p² + a₄ p⁴`, or one that takes this form after
    /// the canonical swap `(x, p) → (−p, x)`.
    Symbol(WeylSymbol),
    /// `c p² + λ² x² + (α² − 1/4)/x²` with `c` the grid's kinetic coefficient.
    Spiked { lambda: f64, alpha: f64 },
}

/// Discretized Hamiltonian: symmetric band matrix on the grid nodes.
#[derive(Clone, Debug)]
pub struct GridHamiltonian {
    pub grid: GridSpec,
    pub matrix: SymBand,
}

/// Ascending eigenvalues with eigenvectors normalized to `h Σ v_i² = 1`.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub grid: GridSpec,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
}

struct SeparableForm {
    potential: Vec<(u32, f64)>,
    a2: f64,
    a4: f64,
}

fn separable(symbol: &WeylSymbol) -> Option<SeparableForm> {
    let mut form = SeparableForm {
        potential: Vec::new(),
        a2: 0.0,
        a4: 0.0,
    };
    for (m, c) in symbol.terms() {
        match (m.x, m.p) {
            (dx, 0) => form.potential.push((dx, c.re)),
            (0, 2) => form.a2 = c.re,
            (0, 4) => form.a4 = c.re,
            _ => return None,
        }
    }
    let confining = form.a4 > 0.0 || (form.a4 == 0.0 && form.a2 > 0.0);
    confining.then_some(form)
}

/// `(x, p) → (−p, x)`: a linear canonical map, realized by a Fourier
/// transform, that leaves the spectrum unchanged.
pub fn canonical_swap(symbol: &WeylSymbol) -> WeylSymbol {
    WeylSymbol::from_terms(symbol.terms().map(|(m, c)| {
        let sign = if m.x % 2 == 0 { 1.0 } else { -1.0 };
        (m.p, m.x, c * sign)
    }))
}

fn add_kinetic(mat: &mut SymBand, n: usize, h: f64, a2: f64, a4: f64) {
    let (c2, c4) = (a2 / (h * h), a4 / (h * h * h * h));
    for i in 0..n {
        mat.add(i, 0, 2.0 * c2 + 6.0 * c4);
        if i + 1 < n {
            mat.add(i, 1, -c2 - 4.0 * c4);
        }
        if c4 != 0.0 && i + 2 < n {
            mat.add(i, 2, c4);
        }
    }
}

impl GridHamiltonian {
    pub fn new(model: &HermitianModel, grid: GridSpec) -> Result<Self> {
        let grid = grid.validated()?;
        let n = grid.points;
        let h = grid.step();
        let xs = grid.nodes();
        match model {
            HermitianModel::Symbol(symbol) => {
                if !symbol.is_hermitian() {
                    return Err(Error::NotHermitian(format!("{symbol}")));
                }
                let form = separable(symbol)
                    .or_else(|| separable(&canonical_swap(symbol)))
                    .ok_or_else(|| {
                        Error::Unsupported(format!(
                            "expected V(x) + a2 p^2 + a4 p^4 (possibly after x <-> p), got {symbol}"
                        ))
                    })?;
                let band = if form.a4 != 0.0 { 2 } else { 1 };
                let mut matrix = SymBand::zeros(n, band);
                add_kinetic(&mut matrix, n, h, form.a2, form.a4);
                for (i, &x) in xs.iter().enumerate() {
                    let v: f64 = form.potential.iter().map(|&(d, c)| c * x.powi(d as i32)).sum();
                    matrix.add(i, 0, v);
                }
                Ok(GridHamiltonian { grid, matrix })
            }
            &HermitianModel::Spiked { lambda, alpha } => {
                let c = grid.kinetic_coefficient;
                if !(c > 0.0) {
                    return Err(Error::Domain(format!("kinetic coefficient must be positive, got {c}")));
                }
                let mut matrix = SymBand::zeros(n, 1);
                add_kinetic(&mut matrix, n, h, c, 0.0);
                // Regular solution behaves as x^s with c s(s−1) = α² − 1/4.
                let disc = 0.25 + (alpha * alpha - 0.25) / c;
                let s = if disc >= 0.0 { 0.5 + alpha.signum() * disc.sqrt() } else { 0.0 };
                let adapted = s > 0.0 && grid.x_min >= 0.0;
                for (i, &x) in xs.iter().enumerate() {
                    let barrier = if adapted {
                        // The second difference of x^s, divided by x^s, replaces
                        // the 1/x² barrier so the discrete kernel absorbs it.
                        let (xl, xr) = (x - h, x + h);
                        c * (xr.powf(s) - 2.0 * x.powf(s) + xl.max(0.0).powf(s)) / (h * h * x.powf(s))
                    } else {
                        (alpha * alpha - 0.25) / (x * x)
                    };
                    matrix.add(i, 0, lambda * lambda * x * x + barrier);
                }
                Ok(GridHamiltonian { grid, matrix })
            }
        }
    }

    pub fn eigensystem(&self, k: usize) -> Result<EigenSystem> {
        if k > self.grid.points {
            return Err(Error::Domain(format!("{k} levels requested from {} points", self.grid.points)));
        }
        let (eigenvalues, mut eigenvectors) = self.matrix.lowest_eigenpairs(k)?;
        let scale = self.grid.step().sqrt().recip();
        for v in &mut eigenvectors {
            v.iter_mut().for_each(|x| *x *= scale);
        }
        Ok(EigenSystem {
            grid: self.grid,
            eigenvalues,
            eigenvectors,
        })
    }
}

/// Lowest `k` levels of `model` on `grid`.
pub fn hermitian_spectrum(model: &HermitianModel, grid: GridSpec, k: usize) -> Result<EigenSystem> {
    GridHamiltonian::new(model, grid)?.eigensystem(k)
}

/// Richardson step over `grid` and its half-step refinement, removing the
/// leading `h²` error; eigenvectors come from the refined grid.
pub fn hermitian_spectrum_refined(model: &HermitianModel, grid: GridSpec, k: usize) -> Result<EigenSystem> {
    let coarse = hermitian_spectrum(model, grid, k)?;
    let mut fine = hermitian_spectrum(model, grid.refined(), k)?;
    for (f, c) in fine.eigenvalues.iter_mut().zip(&coarse.eigenvalues) {
        *f = (4.0 * *f - c) / 3.0;
    }
    Ok(fine)
}

/// Grid inner product `h Σ u_i v_i`.
pub fn grid_dot(grid: &GridSpec, u: &[f64], v: &[f64]) -> f64 {
    grid.step() * u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>()
}
