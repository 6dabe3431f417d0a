use num_complex::Complex64;

use super::config::{symbol_rows, CliError, CliResult, Params};
use super::verify::run_checks;
use super::Report;
use crate::dynamics::{crank_nicolson_observe, grid_norm, grid_overlap, linspace, transition_sweep, Pulse, SweepSpec};
use crate::metric::{conjugate_by_exp, kappa as kappa_coeff, metric_residual, solve_metric_ansatz};
use crate::models::{
    hermitian_spectrum, hermitian_spectrum_refined, inverted_quartic_partner, minus_x4_chain, spiked_energy,
    spiked_matrix_element, spiked_overlap, swanson_pair, GridHamiltonian, GridSpec, HermitianModel,
    MatrixElementKind, SpikedHOModel, SpikedVariant, SwansonFamily,
};
use crate::numeric::fmt_g12;
use crate::stokes::{anti_stokes, contour_point, wedges as stokes_wedges, Contour};
use crate::weyl::{ExpPolySymbol, WeylSymbol};

fn g(v: f64) -> String {
    fmt_g12(v)
}

pub fn wedges(p: &Params, _seed: u64) -> CliResult<Report> {
    let n = p.u32("N")?;
    let (l, r) = stokes_wedges(n)?;
    let (al, ar) = anti_stokes(n)?;
    let mut rep = Report::new("side,theta_lo,theta_hi,theta_anti_stokes");
    for (w, a) in [(l, al), (r, ar)] {
        rep.row([w.side.name().to_string(), g(w.theta_lo), g(w.theta_hi), g(a)]);
    }
    Ok(rep)
}

pub fn contour(p: &Params, _seed: u64) -> CliResult<Report> {
    let n = p.u32("N")?;
    let c = match p.choice("kind", &["z1", "z2"])? {
        "z1" => Contour::z1(n, p.f64("a")?),
        _ => Contour::z2(n),
    };
    let samples = p.usize("samples")?;
    if samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    let range = p.f64("range")?;
    let mut rep = Report::new("x,re_z,im_z");
    for x in linspace(-range, range, samples) {
        let z = contour_point(&c, x);
        rep.row([g(x), g(z.re), g(z.im)]);
    }
    Ok(rep)
}

fn symbol_table(rep: &mut Report, label: Option<&str>, s: &WeylSymbol) {
    for [dx, dp, re, im] in symbol_rows(s) {
        match label {
            Some(l) => rep.row([l, &dx, &dp, &re, &im]),
            None => rep.row([dx, dp, re, im]),
        }
    }
}

pub fn star(p: &Params, _seed: u64) -> CliResult<Report> {
    let (f, h) = (p.symbol("f")?, p.symbol("g")?);
    let out = match p.choice("op", &["product", "commutator"])? {
        "product" => f.star(&h),
        _ => f.star_commutator(&h),
    };
    let mut rep = Report::new("deg_x,deg_p,re,im");
    symbol_table(&mut rep, None, &out);
    Ok(rep)
}

pub fn kappa(p: &Params, _seed: u64) -> CliResult<Report> {
    let upto = p.u32("upto")?;
    let mut rep = Report::new("n,kappa");
    for n in (1..=upto).step_by(2) {
        rep.row([n.to_string(), kappa_coeff(n)?.to_string()]);
    }
    Ok(rep)
}

pub fn bch(p: &Params, _seed: u64) -> CliResult<Report> {
    let (q, o) = (p.symbol("q")?, p.symbol("o")?);
    let c = conjugate_by_exp(&q, &o, p.usize("max-order")?);
    let mut rep = Report::new("deg_x,deg_p,re,im");
    rep.comments.push(format!("terminated={}", c.terminated));
    rep.comments.push(format!("order={}", c.order));
    symbol_table(&mut rep, None, &c.symbol);
    if !c.terminated {
        rep.passed = false;
    }
    Ok(rep)
}

pub fn metric_verify(p: &Params, _seed: u64) -> CliResult<Report> {
    let h = p.symbol("H")?;
    let e = p.symbol("exponent")?;
    let tol = p.f64("tol")?;
    let r = metric_residual(&h, &ExpPolySymbol::exp(e));
    let size = r.max_prefactor_abs();
    let mut rep = Report::new("deg_x,deg_p,re,im");
    rep.comments.push(format!("max_residual={}", g(size)));
    rep.passed = size <= tol;
    rep.comments.push(format!("status={}", if rep.passed { "PASS" } else { "FAIL" }));
    for term in r.terms() {
        symbol_table(&mut rep, None, &term.prefactor);
    }
    Ok(rep)
}

pub fn metric_solve(p: &Params, _seed: u64) -> CliResult<Report> {
    let h = p.symbol("H")?;
    let monos = p.monomials("monomials")?;
    let sol = solve_metric_ansatz(&h, &monos)?;
    let mut rep = Report::new("deg_x,deg_p,coefficient");
    rep.comments.push(format!("residual_norm={}", g(sol.residual_norm)));
    for ((dx, dp), c) in monos.iter().zip(&sol.coefficients) {
        rep.row([dx.to_string(), dp.to_string(), g(*c)]);
    }
    Ok(rep)
}

pub fn swanson(p: &Params, _seed: u64) -> CliResult<Report> {
    let (n, m, alpha, gc) = (p.u32("n")?, p.u32("m")?, p.f64("alpha")?, p.f64("g")?);
    let pair = swanson_pair(n, m, alpha, gc)?;
    let fam = SwansonFamily::new(n, m, alpha, gc)?;
    let mut rep = Report::new("symbol,deg_x,deg_p,re,im");
    symbol_table(&mut rep, Some("h"), &pair.hermitian);
    symbol_table(&mut rep, Some("H"), &pair.non_hermitian);
    symbol_table(&mut rep, Some("q"), &pair.generator);
    symbol_table(&mut rep, Some("X"), &fam.canonical_x());
    symbol_table(&mut rep, Some("P"), &fam.canonical_p());
    Ok(rep)
}

pub fn x4(p: &Params, _seed: u64) -> CliResult<Report> {
    let chain = minus_x4_chain(p.f64("alpha")?, p.f64("g")?)?;
    let mut rep = Report::new("symbol,deg_x,deg_p,re,im");
    symbol_table(&mut rep, Some("h0"), &chain.h0);
    symbol_table(&mut rep, Some("H"), &chain.pair.non_hermitian);
    symbol_table(&mut rep, Some("h"), &chain.pair.hermitian);
    symbol_table(&mut rep, Some("q"), &chain.pair.generator);
    symbol_table(&mut rep, Some("X"), &chain.canonical_x);
    Ok(rep)
}

fn spiked_model(p: &Params) -> CliResult<SpikedHOModel> {
    let variant = match p.choice("variant", &["p_squared", "p_shift"])? {
        "p_squared" => SpikedVariant::PSquared,
        _ => SpikedVariant::PShift,
    };
    Ok(SpikedHOModel::new(p.f64("lambda")?, p.f64("alpha")?, p.f64("xi")?, variant)?)
}

pub fn spiked(p: &Params, _seed: u64) -> CliResult<Report> {
    let model = spiked_model(p)?;
    let levels = p.usize("levels")?;
    match p.choice("table", &["energies", "elements"])? {
        "energies" => {
            let mut rep = Report::new("n,energy");
            for n in 0..levels {
                rep.row([n.to_string(), g(spiked_energy(&model, n))]);
            }
            Ok(rep)
        }
        _ => {
            let mut rep = Report::new("n,m,overlap,position,momentum_im,mapped_re,mapped_im");
            for n in 0..levels {
                for m in 0..levels {
                    let pos = spiked_matrix_element(&model, MatrixElementKind::Position, n, m)?;
                    let mom = spiked_matrix_element(&model, MatrixElementKind::Momentum, n, m)?;
                    let mapped = spiked_matrix_element(&model, MatrixElementKind::MappedPosition, n, m)?;
                    rep.row([
                        n.to_string(),
                        m.to_string(),
                        g(spiked_overlap(&model, n, m)?),
                        g(pos.re),
                        g(mom.im),
                        g(mapped.re),
                        g(mapped.im),
                    ]);
                }
            }
            Ok(rep)
        }
    }
}

fn require(map: &std::collections::BTreeMap<String, f64>, model: &str, keys: &[&str]) -> CliResult<Vec<f64>> {
    if let Some(k) = map.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(CliError::Usage(format!("--params: model {model} has no parameter `{k}`")));
    }
    keys.iter()
        .map(|k| {
            map.get(*k)
                .copied()
                .ok_or_else(|| CliError::Usage(format!("--params: model {model} needs `{k}`")))
        })
        .collect()
}

pub fn spectrum(p: &Params, _seed: u64) -> CliResult<Report> {
    let kv = p.kv_list("params")?;
    let model = match p.choice("model", &["spiked", "x4h", "xt4"])? {
        "spiked" => {
            let v = require(&kv, "spiked", &["lambda", "alpha"])?;
            HermitianModel::Spiked { lambda: v[0], alpha: v[1] }
        }
        "x4h" => {
            let v = require(&kv, "x4h", &["alpha", "g"])?;
            HermitianModel::Symbol(minus_x4_chain(v[0], v[1])?.pair.hermitian)
        }
        _ => {
            let v = require(&kv, "xt4", &["g"])?;
            HermitianModel::Symbol(inverted_quartic_partner(v[0]))
        }
    };
    let (lo, hi, n) = p.grid("grid")?;
    let grid = GridSpec::new(lo, hi, n)?;
    let k = p.usize("levels")?;
    let es = if p.bool("refine")? {
        hermitian_spectrum_refined(&model, grid, k)?
    } else {
        hermitian_spectrum(&model, grid, k)?
    };
    let mut rep = Report::new("n,energy");
    for (i, e) in es.eigenvalues.iter().enumerate() {
        rep.row([i.to_string(), g(*e)]);
    }
    Ok(rep)
}

pub fn transition(p: &Params, _seed: u64) -> CliResult<Report> {
    p.choice("model", &["spiked"])?;
    let (lo, hi, steps) = p.range("omega")?;
    if steps < 2 {
        return Err(CliError::Usage("--omega needs at least 2 steps".into()));
    }
    let spec = SweepSpec {
        lambda: p.f64("lambda")?,
        alpha: p.f64("alpha")?,
        from: p.usize("n")?,
        to: p.usize("m")?,
        e0: p.f64("E0")?,
        omega_lo: lo,
        omega_hi: hi,
        steps,
        tau: p.f64("tau")?,
    };
    let mut xis = p.f64_list("xi")?;
    xis.sort_by(f64::total_cmp);
    let curves = transition_sweep(&spec, &xis)?;
    let mut rep = Report::new("omega,xi,probability");
    for k in 0..steps {
        for c in &curves {
            rep.row([g(c.omega_grid[k]), g(c.meta.xi), g(c.probabilities[k])]);
        }
    }
    Ok(rep)
}

pub fn propagate(p: &Params, _seed: u64) -> CliResult<Report> {
    let (lambda, alpha) = (p.f64("lambda")?, p.f64("alpha")?);
    let (n, observe) = (p.usize("n")?, p.usize("observe")?);
    let pulse = Pulse::sine(p.f64("E0")?, p.f64("omega")?, p.f64("tau")?)?;
    let (lo, hi, points) = p.grid("grid")?;
    let ham = GridHamiltonian::new(&HermitianModel::Spiked { lambda, alpha }, GridSpec::new(lo, hi, points)?)?;
    let es = ham.eigensystem(n.max(observe) + 1)?;
    let as_complex = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>();
    let (psi0, target) = (as_complex(&es.eigenvectors[n]), as_complex(&es.eigenvectors[observe]));
    let h = ham.grid.step();
    let every = p.usize("every")?.max(1);
    let t_final = p.f64("T")?;
    let mut rep = Report::new("t,norm,population_n");
    let row = |t: f64, psi: &[Complex64]| [g(t), g(grid_norm(h, psi)), g(grid_overlap(h, &target, psi).norm_sqr())];
    let mut k = 0usize;
    let last = crank_nicolson_observe(&ham, &pulse, &psi0, p.f64("dt")?, t_final, |t, psi| {
        if k % every == 0 {
            rep.row(row(t, psi));
        }
        k += 1;
    })?;
    if (k - 1) % every != 0 {
        rep.row(row(t_final, &last));
    }
    Ok(rep)
}

pub fn verify_all(p: &Params, seed: u64) -> CliResult<Report> {
    let outcomes = run_checks(seed, p.usize("draws")?.max(1));
    let mut rep = Report::new("check,status,detail");
    for o in &outcomes {
        rep.row([o.name.to_string(), if o.passed { "PASS" } else { "FAIL" }.to_string(), o.detail.replace(',', ";")]);
    }
    rep.passed = outcomes.iter().all(|o| o.passed);
    Ok(rep)
}
