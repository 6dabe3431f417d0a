use num_complex::Complex64;
use proptest::prelude::*;

use pseudoherm::models::{
    canonical_swap, grid_dot, hermitian_spectrum, hermitian_spectrum_refined, inverted_quartic_partner,
    minus_x4_chain, spiked_energy, spiked_matrix_element, spiked_wavefunction, spiked_wavefunction_derivative,
    swanson_pair, GridHamiltonian, GridSpec, HermitianModel, MatrixElementKind, SpikedHOModel, SpikedVariant,
    SwansonFamily,
};
use pseudoherm::weyl::WeylSymbol;
use pseudoherm::Error;

fn symbol(terms: &[(u32, u32, f64)]) -> HermitianModel {
    HermitianModel::Symbol(WeylSymbol::from_terms(terms.iter().copied()))
}

#[test]
fn harmonic_levels_are_odd_integers() {
    let es = hermitian_spectrum_refined(&symbol(&[(0, 2, 1.0), (2, 0, 1.0)]), GridSpec::new(-10.0, 10.0, 800).unwrap(), 6)
        .unwrap();
    for (n, e) in es.eigenvalues.iter().enumerate() {
        assert!((e - (2 * n + 1) as f64).abs() < 1e-6, "level {n}: {e}");
    }
}

#[test]
fn quartic_oscillator_and_its_fourier_image() {
    // ground state of p² + x⁴
    let e0 = 1.060_362_090_484_2;
    let grid = GridSpec::new(-7.0, 7.0, 1000).unwrap();
    let direct = hermitian_spectrum_refined(&symbol(&[(0, 2, 1.0), (4, 0, 1.0)]), grid, 3).unwrap();
    let image = hermitian_spectrum_refined(&symbol(&[(0, 4, 1.0), (2, 0, 1.0)]), grid, 3).unwrap();
    assert!((direct.eigenvalues[0] - e0).abs() < 1e-6);
    assert!((image.eigenvalues[0] - e0).abs() < 1e-5);
    for k in 0..3 {
        assert!((direct.eigenvalues[k] - image.eigenvalues[k]).abs() < 1e-4);
    }
}

#[test]
fn swap_is_applied_when_needed() {
    // x² − p/2 + p² has no separable form in x, but its image does
    let s = WeylSymbol::from_terms([(2, 0, 1.0), (0, 1, -0.5), (0, 2, 1.0)]);
    // applied twice the swap is the parity (x, p) → (−x, −p)
    let parity = WeylSymbol::from_terms([(2, 0, 1.0), (0, 1, 0.5), (0, 2, 1.0)]);
    assert_eq!(canonical_swap(&canonical_swap(&s)).max_abs_diff(&parity), 0.0);
    let es = hermitian_spectrum_refined(&HermitianModel::Symbol(s), GridSpec::new(-10.0, 10.0, 600).unwrap(), 2).unwrap();
    // completing the square: (x − 1/4)² + p² − 1/16
    assert!((es.eigenvalues[0] - (1.0 - 1.0 / 16.0)).abs() < 1e-6);
}

#[test]
fn solver_rejects_bad_models() {
    let grid = GridSpec::new(-5.0, 5.0, 100).unwrap();
    let non_h = HermitianModel::Symbol(WeylSymbol::from_terms([(0, 2, Complex64::new(1.0, 0.0)), (1, 1, Complex64::new(0.0, 1.0))]));
    assert!(matches!(GridHamiltonian::new(&non_h, grid), Err(Error::NotHermitian(_))));
    assert!(matches!(GridHamiltonian::new(&symbol(&[(1, 1, 1.0), (0, 2, 1.0)]), grid), Err(Error::Unsupported(_))));
    assert!(GridSpec::new(-5.0, 5.0, 4).is_err());
}

#[test]
fn x4_partner_spectra_are_bounded_below() {
    let chain = minus_x4_chain(1.0, 0.5).unwrap();
    let h = hermitian_spectrum_refined(
        &HermitianModel::Symbol(chain.pair.hermitian.clone()),
        GridSpec::new(-12.0, 12.0, 600).unwrap(),
        4,
    )
    .unwrap();
    let q = hermitian_spectrum_refined(
        &HermitianModel::Symbol(inverted_quartic_partner(0.5)),
        GridSpec::new(-8.0, 8.0, 600).unwrap(),
        4,
    )
    .unwrap();
    for w in h.eigenvalues.windows(2).chain(q.eigenvalues.windows(2)) {
        assert!(w[1] > w[0]);
    }
    assert!(minus_x4_chain(-1.0, 0.5).is_err());
}

#[test]
fn spiked_grid_states_match_closed_form() {
    let (lambda, alpha) = (0.5, 0.2);
    let model = SpikedHOModel::new(lambda, alpha, 0.0, SpikedVariant::PSquared).unwrap();
    let grid = GridSpec::new(0.0, 12.0, 2000).unwrap();
    let es = hermitian_spectrum(&HermitianModel::Spiked { lambda, alpha }, grid, 4).unwrap();
    let nodes = grid.nodes();
    for n in 0..4 {
        let v = &es.eigenvectors[n];
        assert!((grid_dot(&grid, v, v) - 1.0).abs() < 1e-12);
        let exact: Vec<f64> = nodes.iter().map(|&x| spiked_wavefunction(&model, n, x).unwrap()).collect();
        let sign = grid_dot(&grid, v, &exact).signum();
        let dev = v.iter().zip(&exact).map(|(a, b)| (sign * a - b).abs()).fold(0.0, f64::max);
        assert!(dev < 2e-3, "level {n}: {dev}");
        assert!((es.eigenvalues[n] - spiked_energy(&model, n)).abs() < 1e-3);
    }
}

#[test]
fn spiked_derivative_matches_difference_quotient() {
    let model = SpikedHOModel::new(0.7, -0.3, 0.0, SpikedVariant::PSquared).unwrap();
    let h = 1e-5;
    for n in 0..5 {
        for x in [0.3, 1.1, 2.5, 4.0] {
            let fd = (spiked_wavefunction(&model, n, x + h).unwrap() - spiked_wavefunction(&model, n, x - h).unwrap())
                / (2.0 * h);
            let d = spiked_wavefunction_derivative(&model, n, x).unwrap();
            assert!((fd - d).abs() < 1e-7 * (1.0 + d.abs()), "n={n} x={x}");
        }
    }
    assert!(spiked_wavefunction(&model, 0, 0.0).is_err());
}

#[test]
fn momentum_elements_follow_from_the_commutator() {
    // [h, x] = −2i p for h = p² + V, so p_nm = (i/2)(E_n − E_m) x_nm
    let model = SpikedHOModel::new(0.5, 0.2, 0.0, SpikedVariant::PSquared).unwrap();
    for (n, m) in [(3, 2), (1, 0), (4, 2), (0, 3)] {
        let x = spiked_matrix_element(&model, MatrixElementKind::Position, n, m).unwrap();
        let p = spiked_matrix_element(&model, MatrixElementKind::Momentum, n, m).unwrap();
        let want = Complex64::new(0.0, 0.5 * (spiked_energy(&model, n) - spiked_energy(&model, m))) * x;
        assert!((p - want).norm() < 1e-10, "({n},{m}): {p} vs {want}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mapped_position_scales_linearly_in_xi(xi in -3.0f64..3.0) {
        let base = SpikedHOModel::new(0.5, 0.2, 0.0, SpikedVariant::PSquared).unwrap();
        let x32 = spiked_matrix_element(&base, MatrixElementKind::Position, 3, 2).unwrap().re;
        let m = SpikedHOModel::new(0.5, 0.2, xi, SpikedVariant::PSquared).unwrap();
        let mapped = spiked_matrix_element(&m, MatrixElementKind::MappedPosition, 3, 2).unwrap();
        prop_assert!((mapped.re - x32 * (1.0 - 2.0 * xi)).abs() < 1e-10);
        let s = SpikedHOModel::new(0.5, 0.2, xi, SpikedVariant::PShift).unwrap();
        let diag = spiked_matrix_element(&s, MatrixElementKind::MappedPosition, 2, 2).unwrap();
        let x22 = spiked_matrix_element(&base, MatrixElementKind::Position, 2, 2).unwrap().re;
        prop_assert!((diag - Complex64::new(x22, xi)).norm() < 1e-10);
    }

    #[test]
    fn swanson_pairs_close(n in 1u32..7, m in 1u32..6, a in 0.1f64..2.0, g in 0.1f64..2.0) {
        let pair = swanson_pair(n, m, a, g).unwrap();
        let fam = SwansonFamily::new(n, m, a, g).unwrap();
        prop_assert!(pair.hermitian.is_hermitian());
        // x^n is PT-odd for odd n; −i g x^{m−1} p is PT-even only for even m
        prop_assert_eq!(pair.non_hermitian.is_pt_symmetric(), m % 2 == 0 && n % 2 == 0);
        prop_assert!(pair.non_hermitian.max_abs_diff(&fam.non_hermitian()) < 1e-12);
    }
}

#[test]
fn spiked_model_validates_parameters() {
    assert!(SpikedHOModel::new(0.0, 0.2, 0.0, SpikedVariant::PShift).is_err());
    assert!(SpikedHOModel::new(0.5, -1.5, 0.0, SpikedVariant::PShift).is_err());
}
