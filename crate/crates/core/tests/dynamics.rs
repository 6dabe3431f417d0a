use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

use pseudoherm::dynamics::{
    crank_nicolson_observe, field_integrals, field_value, first_order_strong_field, gauge_residual, grid_norm,
    grid_overlap, oscillatory_field_integral, run_parallel, transition_sweep, Carrier, Envelope, FreeBasis, Pulse,
    SweepSpec,
};
use pseudoherm::models::{GridHamiltonian, GridSpec, HermitianModel};
use pseudoherm::weyl::WeylSymbol;

/// Composite Simpson on `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|k| f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + f(b) + inner) * h / 3.0
}

fn real_state(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&a| Complex64::new(a, 0.0)).collect()
}

#[test]
fn field_integrals_against_simpson() {
    let pulses = [
        Pulse::sine(0.3, 1.7, 12.0).unwrap(),
        Pulse::new(0.5, 0.9, Carrier::Cosine, Envelope::Rectangular, 12.0).unwrap(),
        Pulse::new(0.4, 2.1, Carrier::Sine, Envelope::Gaussian { center: 6.0, width: 2.0 }, 12.0).unwrap(),
    ];
    for p in &pulses {
        let b = |s: f64| simpson(|u| field_value(p, u), 0.0, s, 2000);
        for t in [1.3, 6.0, 11.5] {
            let fi = field_integrals(p, t).unwrap();
            let c = simpson(b, 0.0, t, 1000);
            let d = 0.5 * simpson(|s| b(s).powi(2), 0.0, t, 1000);
            assert!((fi.b - b(t)).abs() < 1e-9, "b at {t}: {} vs {}", fi.b, b(t));
            assert!((fi.c - c).abs() < 1e-8, "c at {t}");
            assert!((fi.d - d).abs() < 1e-8, "d at {t}");
        }
    }
}

#[test]
fn oscillatory_integral_against_simpson() {
    let pulses = [
        Pulse::sine(0.1, 1.8, 30.0).unwrap(),
        Pulse::new(0.2, 1.1, Carrier::Cosine, Envelope::Gaussian { center: 15.0, width: 4.0 }, 30.0).unwrap(),
    ];
    for p in &pulses {
        for delta in [0.0, 1.1, 1.8, 2.5] {
            let got = oscillatory_field_integral(p, delta, 30.0).unwrap();
            let re = simpson(|s| (delta * s).cos() * field_value(p, s), 0.0, 30.0, 6000);
            let im = simpson(|s| (delta * s).sin() * field_value(p, s), 0.0, 30.0, 6000);
            assert!((got - Complex64::new(re, im)).norm() < 1e-9, "delta {delta}");
        }
    }
}

/// Largest deviation of the mean position from the classical path.
fn classical_deviation(points: usize) -> f64 {
    // for p²/2 + x²/2 + x E(t) the mean position obeys x'' = −x − E,
    // so from rest x(t) = −∫₀ᵗ sin(t − s) E(s) ds
    let model = HermitianModel::Symbol(WeylSymbol::from_terms([(0, 2, 0.5), (2, 0, 0.5)]));
    let grid = GridSpec::new(-10.0, 10.0, points).unwrap();
    let ham = GridHamiltonian::new(&model, grid).unwrap();
    let ground = real_state(&ham.eigensystem(1).unwrap().eigenvectors[0]);
    let tau = 6.0;
    let pulse = Pulse::sine(0.3, 0.8, tau).unwrap();
    let xs = grid.nodes();
    let h = grid.step();
    let mut worst: f64 = 0.0;
    let mut norm_drift: f64 = 0.0;
    crank_nicolson_observe(&ham, &pulse, &ground, 0.002, 8.0, |t, psi| {
        let mean: f64 = h * psi.iter().zip(&xs).map(|(z, x)| z.norm_sqr() * x).sum::<f64>();
        // the field switches off abruptly, so stop the quadrature at τ
        let classical = -simpson(|s| (t - s).sin() * field_value(&pulse, s), 0.0, t.min(tau), 2000);
        worst = worst.max((mean - classical).abs());
        norm_drift = norm_drift.max((grid_norm(h, psi) - 1.0).abs());
    })
    .unwrap();
    assert!(norm_drift < 1e-10);
    worst
}

#[test]
fn driven_oscillator_follows_the_classical_path() {
    let (coarse, fine) = (classical_deviation(500), classical_deviation(1000));
    assert!(fine < 3e-4, "mean position off by {fine}");
    // the residual is the second-order stencil error
    assert!(coarse / fine > 3.5, "{coarse} vs {fine}");
}

#[test]
fn crank_nicolson_rejects_unnormalized_input() {
    let model = HermitianModel::Symbol(WeylSymbol::from_terms([(0, 2, 0.5), (2, 0, 0.5)]));
    let ham = GridHamiltonian::new(&model, GridSpec::new(-5.0, 5.0, 50).unwrap()).unwrap();
    let psi = vec![Complex64::new(1.0, 0.0); 50];
    let pulse = Pulse::sine(0.1, 1.0, 1.0).unwrap();
    assert!(crank_nicolson_observe(&ham, &pulse, &psi, 0.01, 1.0, |_, _| {}).is_err());
    assert!(crank_nicolson_observe(&ham, &pulse, &psi[..10], 0.01, 1.0, |_, _| {}).is_err());
}

/// Dense matrix of `κ p²` in the periodic DFT basis of the grid.
fn spectral_kinetic(grid: &GridSpec) -> DMatrix<f64> {
    let n = grid.points;
    let h = grid.step();
    let ks: Vec<f64> = (0..n)
        .map(|j| {
            let j = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
            2.0 * PI * j / (n as f64 * h)
        })
        .collect();
    DMatrix::from_fn(n, n, |a, b| {
        let dx = (a as f64 - b as f64) * h;
        grid.kinetic_coefficient * ks.iter().map(|k| k * k * (k * dx).cos()).sum::<f64>() / n as f64
    })
}

/// `exp(−i H t) ψ` by the dense matrix exponential.
fn exact_evolution(hmat: DMatrix<f64>, psi: &[Complex64], t: f64) -> Vec<Complex64> {
    let u = hmat.map(|a| Complex64::new(0.0, -a * t)).exp();
    (u * DVector::from_column_slice(psi)).iter().copied().collect()
}

#[test]
fn first_born_iterate_is_second_order_in_the_potential() {
    let grid = GridSpec::new(-12.0, 12.0, 128).unwrap().with_kinetic(0.5);
    let xs = grid.nodes();
    let raw: Vec<Complex64> = xs.iter().map(|&x| Complex64::from_polar((-(x - 1.0f64).powi(2)).exp(), 0.4 * x)).collect();
    let n0 = grid_norm(grid.step(), &raw);
    let psi0: Vec<Complex64> = raw.iter().map(|z| z / n0).collect();
    let off = Pulse::sine(0.0, 1.0, 1.0).unwrap();
    let kinetic = spectral_kinetic(&grid);
    let t = 1.0;
    let mut errors = Vec::new();
    for s in [0.2, 0.1] {
        let v: Vec<f64> = xs.iter().map(|&x| s * (-x * x).exp()).collect();
        let exact = exact_evolution(&kinetic + DMatrix::from_diagonal(&DVector::from_column_slice(&v)), &psi0, t);
        let born = first_order_strong_field(&psi0, &v, &off, grid, FreeBasis::Periodic, t, 200).unwrap();
        let diff: Vec<Complex64> = born.iter().zip(&exact).map(|(a, b)| a - b).collect();
        errors.push(grid_norm(grid.step(), &diff));
    }
    let ratio = errors[0] / errors[1];
    assert!((ratio - 4.0).abs() < 0.3, "errors {errors:?}, ratio {ratio}");
}

#[test]
fn field_free_volkov_matches_dense_evolution() {
    let grid = GridSpec::new(-10.0, 10.0, 96).unwrap().with_kinetic(0.5);
    let xs = grid.nodes();
    let raw: Vec<Complex64> = xs.iter().map(|&x| Complex64::from_polar((-x * x).exp(), -0.7 * x)).collect();
    let n0 = grid_norm(grid.step(), &raw);
    let psi0: Vec<Complex64> = raw.iter().map(|z| z / n0).collect();
    let off = Pulse::sine(0.0, 1.0, 1.0).unwrap();
    let zero = vec![0.0; xs.len()];
    let got = first_order_strong_field(&psi0, &zero, &off, grid, FreeBasis::Periodic, 2.5, 2).unwrap();
    let want = exact_evolution(spectral_kinetic(&grid), &psi0, 2.5);
    let overlap = grid_overlap(grid.step(), &want, &got);
    assert!((overlap - Complex64::new(1.0, 0.0)).norm() < 1e-10);
}

#[test]
fn sine_basis_reproduces_box_eigenstates() {
    // sin(kπ(x − a)/L) is stationary in a box; with E = 0 only the phase moves
    let grid = GridSpec::new(0.0, 10.0, 199).unwrap().with_kinetic(0.5);
    let len = 10.0;
    let xs = grid.nodes();
    let k = 3.0 * PI / len;
    let mode: Vec<Complex64> = xs.iter().map(|&x| Complex64::new((k * x).sin(), 0.0)).collect();
    let n0 = grid_norm(grid.step(), &mode);
    let psi: Vec<Complex64> = mode.iter().map(|z| z / n0).collect();
    let off = Pulse::sine(0.0, 1.0, 1.0).unwrap();
    let zero = vec![0.0; xs.len()];
    let t = 1.7;
    let out = first_order_strong_field(&psi, &zero, &off, grid, FreeBasis::Sine, t, 2).unwrap();
    let phase = Complex64::from_polar(1.0, -0.5 * k * k * t);
    let dev = out.iter().zip(&psi).map(|(a, b)| (a - b * phase).norm()).fold(0.0, f64::max);
    assert!(dev < 1e-12, "{dev}");
}

#[test]
fn born_iterate_validates_inputs() {
    let grid = GridSpec::new(-5.0, 5.0, 64).unwrap().with_kinetic(0.5);
    let psi = vec![Complex64::new(0.0, 0.0); 64];
    let off = Pulse::sine(0.0, 1.0, 1.0).unwrap();
    assert!(first_order_strong_field(&psi, &vec![0.0; 64], &off, grid, FreeBasis::Periodic, 1.0, 3).is_err());
    assert!(first_order_strong_field(&psi, &vec![0.0; 10], &off, grid, FreeBasis::Periodic, 1.0, 4).is_err());
}

#[test]
fn thread_cap_does_not_change_results() {
    let spec = SweepSpec {
        lambda: 0.5,
        alpha: 0.2,
        from: 2,
        to: 3,
        e0: 0.005,
        omega_lo: 1.5,
        omega_hi: 2.5,
        steps: 101,
        tau: 35.0 * PI,
    };
    let free = transition_sweep(&spec, &[0.0, 1.5]).unwrap();
    std::env::set_var("PSEUDOHERM_THREADS", "1");
    let capped = transition_sweep(&spec, &[0.0, 1.5]).unwrap();
    let pool_size = run_parallel(rayon::current_num_threads);
    std::env::remove_var("PSEUDOHERM_THREADS");
    assert_eq!(free, capped);
    assert_eq!(pool_size, 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn gauge_shifts_cancel(
        a in 0.1f64..2.0,
        e0 in 0.0f64..1.0,
        w in 0.2f64..3.0,
        t in 0.0f64..15.0,
        quartic in 0.0f64..0.5,
    ) {
        let h0 = WeylSymbol::from_terms([(0, 2, 0.5), (2, 0, a), (4, 0, quartic), (1, 1, 0.3)]);
        let pulse = Pulse::sine(e0, w, 10.0).unwrap();
        let (velocity, kh) = gauge_residual(&h0, &pulse, t).unwrap();
        prop_assert!(velocity.max_abs() < 1e-10);
        prop_assert!(kh.max_abs() < 1e-10);
    }

    #[test]
    fn integrals_freeze_after_the_pulse(e0 in 0.01f64..1.0, w in 0.3f64..3.0, extra in 0.0f64..20.0) {
        let p = Pulse::sine(e0, w, 8.0).unwrap();
        let end = field_integrals(&p, 8.0).unwrap();
        let later = field_integrals(&p, 8.0 + extra).unwrap();
        prop_assert_eq!(later.b, end.b);
        prop_assert!((later.c - end.c - end.b * extra).abs() < 1e-10 * (1.0 + later.c.abs()));
        prop_assert!((later.d - end.d - 0.5 * end.b * end.b * extra).abs() < 1e-10 * (1.0 + later.d.abs()));
    }
}
