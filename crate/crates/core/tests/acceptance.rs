//! Acceptance suite: one test per numbered criterion, each printing a
//! PASS/FAIL line with the measured figure against its pinned tolerance.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see every line.

use lvtlab_core::closedform::{box_densities, iho_densities, BoxParams, LinearParams};
use lvtlab_core::grid::Grid;
use lvtlab_core::model::{
    fill_levels, iho_shell_count, lambda_m, PotentialKind, PotentialSpec, Units,
};
use lvtlab_core::qdens::{compute_densities, compute_densities_2d, total_kinetic, DensityField};
use lvtlab_core::smooth::{
    find_lambda_tf, find_lambda_tf_plane, oscillating_parts, tf_densities, weyl_lambda_disk,
    XiMode,
};
use lvtlab_core::spectral::{
    solve_1d, solve_2d_grid, solve_disk_billiard, solve_radial, solve_radial_bounded, PlaneGrid,
};
use lvtlab_core::virial::{
    check_center_bessel, check_differential_lvt_ray, check_ide_3ode, check_lvt1, check_lvt_basic,
    check_lvt_generalized, check_slvt, norms_over, xi2_and_global_virial, BesselAmplitude,
    IdeKind,
};

fn verdict(ok: bool, label: &str, detail: &str) -> bool {
    println!("[{}] {label}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn allowed_mask(field: &DensityField, lambda: f64) -> Vec<bool> {
    field.potential.iter().map(|&v| v < lambda).collect()
}

/// Analytic IHO field over the classically allowed region plus tail.
fn iho_field(m: u32, dim: u32) -> DensityField {
    let lam = lambda_m(m, dim, 1.0, 1.0);
    let r_edge = (2.0 * lam).sqrt();
    if dim == 1 {
        let l = r_edge + 6.0;
        let n = (2.0 * l / 0.005).ceil() as usize;
        let grid = Grid::line(-l, l, n).unwrap();
        iho_densities(m, 1, 1.0, Units::natural(), &grid).unwrap()
    } else {
        let r_max = r_edge + 6.0;
        let n = (r_max / 0.005).ceil() as usize;
        let grid = Grid::radial(dim, r_max, n).unwrap();
        iho_densities(m, dim, 1.0, Units::natural(), &grid).unwrap()
    }
}

#[test]
fn criterion_01_exact_iho_theorems() {
    let mut all_ok = true;
    for dim in 1..=3u32 {
        for m in [2u32, 4, 10] {
            let t0 = std::time::Instant::now();
            let spec =
                PotentialSpec::new(PotentialKind::Iho { omega: 1.0, dim }, Units::natural())
                    .unwrap();
            let lam = lambda_m(m, dim, 1.0, 1.0);

            // analytic backend: residuals limited by quadrature/roundoff
            let f = iho_field(m, dim);
            let mask = allowed_mask(&f, lam);
            let mut worst: f64 = 0.0;
            let r1 = check_lvt1(&f, lam, "lambda_m");
            worst = worst.max(r1.norms_on(&mask).linf_rel);
            let rb = check_lvt_basic(&f, lam, "lambda_m");
            worst = worst.max(rb.norms_on(&mask).linf_rel);
            let rs = check_slvt(&f, &spec, None, true).unwrap();
            worst = worst.max(rs.norms_on(&mask).linf_rel);
            let ri = check_ide_3ode(&f, &spec, lam, IdeKind::Ide).unwrap();
            worst = worst.max(ri.norms_on(&mask).linf_rel);
            let ro = check_ide_3ode(&f, &spec, lam, IdeKind::ThreeOde).unwrap();
            worst = worst.max(ro.interior.linf_rel);
            let ok_analytic = worst <= 1e-6;

            // grid-solver backend at h ≤ 0.01
            let g = grid_solver_field(&spec, m, dim);
            let gmask = allowed_mask(&g, lam);
            let mut gworst: f64 = 0.0;
            gworst = gworst.max(check_lvt1(&g, lam, "lambda_m").norms_on(&gmask).linf_rel);
            gworst = gworst.max(check_lvt_basic(&g, lam, "lambda_m").norms_on(&gmask).linf_rel);
            gworst = gworst
                .max(check_slvt(&g, &spec, None, true).unwrap().norms_on(&gmask).linf_rel);
            gworst = gworst
                .max(check_ide_3ode(&g, &spec, lam, IdeKind::Ide).unwrap().norms_on(&gmask).linf_rel);
            gworst = gworst
                .max(check_ide_3ode(&g, &spec, lam, IdeKind::ThreeOde).unwrap().interior.linf_rel);
            let ok_grid = gworst <= 1e-4;

            let dt = t0.elapsed().as_secs_f64();
            all_ok &= verdict(
                ok_analytic && ok_grid && dt < 60.0,
                "criterion 1",
                &format!(
                    "IHO D={dim} M={m}: analytic L∞ {worst:.2e} (≤1e-6), grid L∞ {gworst:.2e} (≤1e-4), {dt:.1}s (≤60s)"
                ),
            );
        }
    }
    assert!(all_ok, "criterion 1 failed");
}

fn grid_solver_field(spec: &PotentialSpec, m: u32, dim: u32) -> DensityField {
    let lam = lambda_m(m, dim, 1.0, 1.0);
    let r_edge = (2.0 * lam).sqrt();
    let n_part = iho_shell_count(m, dim).unwrap();
    if dim == 1 {
        let l = r_edge + 6.0;
        let n = (2.0 * l / 0.0015).ceil() as usize;
        let grid = Grid::line(-l, l, n).unwrap();
        let sol = solve_1d(spec, &grid, m as usize + 2, true).unwrap();
        let occ = fill_levels(&sol.levels(), n_part).unwrap();
        compute_densities(&sol, &occ).unwrap()
    } else {
        let r_max = r_edge + 6.0;
        // the 3ODE check needs d/dr of the stencil Laplacian's error to stay
        // below the theorem scale, which asks for a rather fine h here
        let n = (r_max / 3.5e-4).ceil() as usize;
        let grid = Grid::radial(dim, r_max, n).unwrap();
        let sol = solve_radial(spec, m + 1, &grid, (m / 2 + 2) as usize, true).unwrap();
        let occ = fill_levels(&sol.levels(), n_part).unwrap();
        compute_densities(&sol, &occ).unwrap()
    }
}

#[test]
fn criterion_02_linear_1d() {
    let p = LinearParams::new(1.0, 20.0, 1.0, 1.0).unwrap();
    // (a) closed form vs convolution quadrature
    let mut worst_q: f64 = 0.0;
    for x in [0.0, 5.0, 12.0, 19.0, 20.0, 21.5] {
        let quad = p.rho_convolution_quad(x, 1, 1e-12).unwrap();
        worst_q = worst_q.max((p.rho_1d(x).unwrap() - quad).abs());
    }
    let ok_a = worst_q <= 1e-8;

    // (b) SLVT exact to 1e-7
    let mut worst_s: f64 = 0.0;
    for x in [0.0, 8.0, 15.0, 19.0] {
        let xi_q = p.xi_slvt_quad_1d(x, 1e-11).unwrap();
        worst_s = worst_s.max((p.point_1d(x).unwrap().xi - xi_q).abs());
    }
    let ok_b = worst_s <= 1e-7;

    // (c) asymptotic δρ within 5% of the exact δρ for x ≤ x_λ − 1, measured
    // against the local density ρ(x) (the oscillation's physical scale)
    let xl = p.x_lambda();
    let mut worst_c: f64 = 0.0;
    let n = 4000;
    for i in 0..n {
        let x = -2.0 + (xl - 1.0 + 2.0) * i as f64 / (n as f64 - 1.0);
        let exact = p.rho_1d(x).unwrap() - p.rho_tf_1d(x);
        let asym = p.asymptotics_1d(x).unwrap().delta_rho;
        worst_c = worst_c.max((asym - exact).abs() / p.rho_1d(x).unwrap());
    }
    let ok_c = worst_c <= 0.05;

    // (d) Bloch identity residual on a 10×10 sample
    let mut worst_d: f64 = 0.0;
    for i in 0..10 {
        for j in 0..10 {
            let x = -2.0 + 4.0 * i as f64 / 9.0;
            let beta = 0.2 + 2.0 * j as f64 / 9.0;
            worst_d = worst_d
                .max(lvtlab_core::closedform::bloch_identity_residual_1d(&p, x, beta)
                    .unwrap()
                    .abs());
        }
    }
    let ok_d = worst_d <= 1e-8;

    let ok = verdict(
        ok_a && ok_b && ok_c && ok_d,
        "criterion 2",
        &format!(
            "linear D=1: |ρ_closed−ρ_quad| {worst_q:.1e} (≤1e-8), SLVT {worst_s:.1e} (≤1e-7), \
             δρ_as dev {:.1}% of ρ (≤5%), Bloch {worst_d:.1e} (≤1e-8)",
            100.0 * worst_c
        ),
    );
    assert!(ok, "criterion 2 failed");
}

#[test]
fn criterion_03_linear_3d_axis() {
    let p = LinearParams::new(1.0, 20.0, 1.0, 1.0).unwrap();
    let mut worst_q: f64 = 0.0;
    for x in [0.0, 10.0, 19.0, 20.5] {
        let quad = p.rho_convolution_quad(x, 3, 1e-12).unwrap();
        worst_q = worst_q.max((p.axis_3d(x).unwrap().rho - quad).abs());
    }
    let ok_a = worst_q <= 1e-6;

    // δτ = (λ−ax)δρ within 5% in the asymptotic window λ−ax ≥ λ/4, with the
    // smooth ħ²-terms of the closed forms subtracted
    let mut max_res: f64 = 0.0;
    let mut max_dtau: f64 = 0.0;
    let n = 4000;
    for i in 0..n {
        let x = 3.0 + (15.0 - 3.0) * i as f64 / (n as f64 - 1.0);
        let f = p.axis_3d(x).unwrap();
        let d_rho = f.rho - f.rho_tf - f.rho_smooth2;
        let d_tau = f.tau - f.tau_tf - f.tau_smooth2;
        max_res = max_res.max((d_tau - (20.0 - x) * d_rho).abs());
        max_dtau = max_dtau.max(d_tau.abs());
    }
    let ratio = max_res / max_dtau;
    let ok_b = ratio <= 0.05;

    let ok = verdict(
        ok_a && ok_b,
        "criterion 3",
        &format!(
            "linear D=3 axis: |ρ_closed−ρ_quad| {worst_q:.1e} (≤1e-6), δτ vs (λ−ax)δρ {:.1}% (≤5%)",
            100.0 * ratio
        ),
    );
    assert!(ok, "criterion 3 failed");
}

#[test]
fn criterion_04_box_suite() {
    let t0 = std::time::Instant::now();
    let units = Units::natural();
    let mut dlvt = Vec::new();
    let mut tff = Vec::new();
    let mut opposition_ok = true;
    for m in [10u32, 20, 40] {
        let params = BoxParams::new(1.0, m, units).unwrap();
        let grid = Grid::line(0.0, 1.0, 8001).unwrap();
        let b = box_densities(&params, &grid).unwrap();
        let xi = params.xi_const();
        // δτ₁ = −δτ exactly after constant-ξ removal
        let mut worst: f64 = 0.0;
        for i in 0..grid.len() {
            worst = worst.max((b.field.tau[i] - xi + (b.field.tau1[i] - xi)).abs());
        }
        opposition_ok &= worst <= 1e-8 * params.tau_tf();

        // fixed physical window keeps the norms comparable across M
        let window: Vec<bool> = grid.points.iter().map(|&x| (0.2..=0.8).contains(&x)).collect();
        let lam_tf = params.lambda_tf();
        let dtau: Vec<f64> = b.field.tau.iter().map(|t| t - params.tau_tf()).collect();
        let res: Vec<f64> = (0..grid.len())
            .map(|i| dtau[i] - lam_tf * b.delta_rho[i])
            .collect();
        dlvt.push(norms_over(&res, &dtau, &window).linf_rel);

        let tf_fun =
            lvtlab_core::smooth::tf_functional(&b.field.rho, 1, &units);
        let res_f: Vec<f64> = (0..grid.len()).map(|i| b.field.tau[i] - tf_fun[i]).collect();
        tff.push(norms_over(&res_f, &b.field.tau, &window).linf_rel);
    }
    let dlvt_ratios = [dlvt[0] / dlvt[1], dlvt[1] / dlvt[2]];
    let tff_ratios = [tff[0] / tff[1], tff[1] / tff[2]];
    let ok_dlvt = dlvt_ratios.iter().all(|r| (1.6..=2.6).contains(r));
    let ok_tff = tff_ratios.iter().all(|r| (3.2..=5.2).contains(r));
    let dt = t0.elapsed().as_secs_f64();
    let ok = verdict(
        opposition_ok && ok_dlvt && ok_tff && dt < 5.0,
        "criterion 4",
        &format!(
            "box M=10/20/40: opposition exact {opposition_ok}, dLVT ratios {:.2}/{:.2} (∈[1.6,2.6]), \
             TF-functional ratios {:.2}/{:.2} (∈[3.2,5.2]), {dt:.2}s (≤5s)",
            dlvt_ratios[0], dlvt_ratios[1], tff_ratios[0], tff_ratios[1]
        ),
    );
    assert!(ok, "criterion 4 failed");
}

#[test]
fn criterion_05_quartic_1d() {
    let spec = PotentialSpec::new(PotentialKind::Quartic1D { c: 0.5 }, Units::natural()).unwrap();
    let grid = Grid::line(-6.0, 6.0, 30001).unwrap();
    let sol = solve_1d(&spec, &grid, 24, true).unwrap();
    let occ = fill_levels(&sol.levels(), 40).unwrap();
    let field = compute_densities(&sol, &occ).unwrap();

    // SLVT with full ξ is exact in 1D
    let slvt = check_slvt(&field, &spec, None, true).unwrap();
    let ok_slvt = slvt.interior.linf_rel <= 1e-6;

    // generalized LVT with λ̃_TF over the full domain
    let lam_tf = find_lambda_tf(&spec, 40, &grid).unwrap();
    let smooth = tf_densities(&spec, lam_tf, &grid).unwrap();
    let gen = check_lvt_generalized(&field, &smooth, true);
    let full = norms_over(&gen.residual(), &gen.lhs, &vec![true; grid.len()]);
    let ok_gen = full.linf_rel <= 0.02;

    let ok = verdict(
        ok_slvt && ok_gen,
        "criterion 5",
        &format!(
            "quartic x⁴/2 N=40: SLVT L∞ {:.2e} (≤1e-6), generalized LVT(λ̃_TF) full-domain {:.2}% (≤2%)",
            slvt.interior.linf_rel,
            100.0 * full.linf_rel
        ),
    );
    assert!(ok, "criterion 5 failed");
}

#[test]
fn criterion_06_radial_quartic_2d() {
    let spec = PotentialSpec::new(
        PotentialKind::RadialPower { c: 0.5, p: 4.0, dim: 2 },
        Units::natural(),
    )
    .unwrap();
    let grid = Grid::radial(2, 6.0, 4000).unwrap();
    let sol = solve_radial_bounded(&spec, 46, &grid, 30, false, Some(110.0)).unwrap();
    let occ = fill_levels(&sol.levels(), 498).unwrap();
    let field = compute_densities(&sol, &occ).unwrap();
    let lam_tf = find_lambda_tf(&spec, 498, &grid).unwrap();
    let smooth = tf_densities(&spec, lam_tf, &grid).unwrap();

    let plain = check_lvt_generalized(&field, &smooth, false);
    let corrected = check_lvt_generalized(&field, &smooth, true);
    let surf = lvtlab_core::virial::surface_mask(&field, &smooth);
    let plain_surf = plain.norms_on(&surf);
    let corr_surf = corrected.norms_on(&surf);

    let ok_interior = plain.interior.linf_rel <= 0.05;
    let ok_tradeoff = corr_surf.linf_rel < plain_surf.linf_rel
        && corrected.interior.linf_rel >= plain.interior.linf_rel;
    let ok = verdict(
        ok_interior && ok_tradeoff,
        "criterion 6",
        &format!(
            "2D r⁴/2 N=498: interior {:.2}% (≤5%); surface {:.2}%→{:.2}% with correction (must improve), \
             interior {:.2}%→{:.2}% (must not improve)",
            100.0 * plain.interior.linf_rel,
            100.0 * plain_surf.linf_rel,
            100.0 * corr_surf.linf_rel,
            100.0 * plain.interior.linf_rel,
            100.0 * corrected.interior.linf_rel
        ),
    );
    assert!(ok, "criterion 6 failed");
}

#[test]
fn criterion_07_disk_billiard() {
    let t0 = std::time::Instant::now();
    let units = Units::billiard();
    let lam = weyl_lambda_disk(68, 1.0, &units).unwrap();
    let ok_weyl = (lam - 160.68303).abs() <= 1e-3;

    let sol = solve_disk_billiard(1.0, 60, units, 4000).unwrap();
    let occ = fill_levels(&sol.levels(), 68).unwrap();
    let field = compute_densities(&sol, &occ).unwrap();
    // LVT right side for the billiard: λ̃ρ − ξ_TF with the constant
    // ξ_TF = (m/2πħ²)λ̃²; the interior deviation of τ from it
    let xi_tf = lvtlab_core::smooth::tau_tf_of(lam, 2, &units);
    let mask: Vec<bool> = field.grid.points.iter().map(|&r| r <= 0.8).collect();
    let res: Vec<f64> = (0..field.grid.len())
        .map(|i| field.tau[i] - (lam * field.rho[i] - xi_tf))
        .collect();
    let norms = norms_over(&res, &field.tau, &mask);
    let ok_lvt = norms.l2_rel <= 0.07;
    let dt = t0.elapsed().as_secs_f64();
    let ok = verdict(
        ok_weyl && ok_lvt && dt < 30.0,
        "criterion 7",
        &format!(
            "disk N=68: λ̃ = {lam:.5} (160.68303±0.001), τ vs λ̃ρ−ξ_TF L2(r≤0.8) {:.2}% (≤7%), {dt:.1}s (≤30s)",
            100.0 * norms.l2_rel
        ),
    );
    assert!(ok, "criterion 7 failed");
}

#[test]
fn criterion_08_global_identities() {
    let mut all_ok = true;
    // closed-form scenarios: oscillator shells in each dimension
    for (dim, m) in [(1u32, 6u32), (2, 5), (3, 4)] {
        let f = iho_field(m, dim);
        let spec =
            PotentialSpec::new(PotentialKind::Iho { omega: 1.0, dim }, Units::natural()).unwrap();
        all_ok &= global_identities_case(&format!("IHO D={dim} M={m}"), &f, Some(&spec));
    }
    // box and disk: wall systems, kinetic identities only (V′ ≡ 0 inside:
    // the exterior-integral ξ₂ degenerates; the wall carries the virial)
    let bp = BoxParams::new(1.0, 10, Units::natural()).unwrap();
    let bg = Grid::line(0.0, 1.0, 4001).unwrap();
    let bf = box_densities(&bp, &bg).unwrap().field;
    all_ok &= global_identities_case("box M=10", &bf, None);
    let dsol = solve_disk_billiard(1.0, 60, Units::billiard(), 4000).unwrap();
    let docc = fill_levels(&dsol.levels(), 68).unwrap();
    let df = compute_densities(&dsol, &docc).unwrap();
    all_ok &= global_identities_case("disk N=68", &df, None);

    // grid-solver scenarios
    let spec1 = PotentialSpec::new(PotentialKind::Quartic1D { c: 0.5 }, Units::natural()).unwrap();
    let g1 = Grid::line(-6.0, 6.0, 96001).unwrap();
    let s1 = solve_1d(&spec1, &g1, 24, true).unwrap();
    let f1 = compute_densities(&s1, &fill_levels(&s1.levels(), 40).unwrap()).unwrap();
    all_ok &= global_identities_case("quartic 1D N=40", &f1, Some(&spec1));

    let spec2 = PotentialSpec::new(
        PotentialKind::RadialPower { c: 0.5, p: 4.0, dim: 2 },
        Units::natural(),
    )
    .unwrap();
    let g2 = Grid::radial(2, 6.0, 24000).unwrap();
    let s2 = solve_radial_bounded(&spec2, 46, &g2, 30, true, Some(110.0)).unwrap();
    let f2 = compute_densities(&s2, &fill_levels(&s2.levels(), 498).unwrap()).unwrap();
    all_ok &= global_identities_case("radial quartic 2D N=498", &f2, Some(&spec2));

    let spec3 = PotentialSpec::new(
        PotentialKind::RadialPower { c: 0.25, p: 4.0, dim: 3 },
        Units::natural(),
    )
    .unwrap();
    let g3 = Grid::radial(3, 6.5, 24000).unwrap();
    let s3 = solve_radial_bounded(&spec3, 24, &g3, 16, true, Some(60.0)).unwrap();
    let occ3 = nearest_closed_shell(&s3.levels(), 500);
    let f3 = compute_densities(&s3, &occ3).unwrap();
    all_ok &= global_identities_case(
        &format!("radial quartic 3D N={}", occ3.n_particles),
        &f3,
        Some(&spec3),
    );

    assert!(all_ok, "criterion 8 failed");
}

fn nearest_closed_shell(
    levels: &[lvtlab_core::model::Level],
    target: u64,
) -> lvtlab_core::model::Occupation {
    let mut best: Option<lvtlab_core::model::Occupation> = None;
    let mut n = target;
    loop {
        if let Ok(occ) = fill_levels(levels, n) {
            best = Some(occ);
            break;
        }
        n += 2;
        if n > target + 200 {
            break;
        }
    }
    best.expect("no closed shell near the target")
}

fn global_identities_case(
    label: &str,
    field: &DensityField,
    spec: Option<&PotentialSpec>,
) -> bool {
    let it = field.grid.integrate(&field.tau).unwrap();
    let it1 = field.grid.integrate(&field.tau1).unwrap();
    let ix = field.grid.integrate(&field.xi).unwrap();
    let scale = it.abs().max(it1.abs()).max(ix.abs());
    let kin_dev = ((it - it1).abs().max((it - ix).abs())) / scale;
    let ok_kin = kin_dev <= 1e-6;
    let _ = total_kinetic(field).is_ok();

    match spec {
        Some(spec) => {
            let rep = xi2_and_global_virial(field, spec).unwrap();
            let ok_xi2 = (rep.integral_xi2 - rep.e_kin).abs() <= 1e-6 * rep.e_kin;
            let ok_r2 = rep.integral_r2.abs() <= 1e-6 * rep.e_kin;
            verdict(
                ok_kin && ok_xi2 && ok_r2,
                "criterion 8",
                &format!(
                    "{label}: ∫τ=∫τ₁=∫ξ dev {kin_dev:.1e} (≤1e-6), ∫ξ₂ vs E_kin {:.1e} (≤1e-6), ∫R₂/E_kin {:.1e} (≤1e-6)",
                    (rep.integral_xi2 - rep.e_kin).abs() / rep.e_kin,
                    rep.integral_r2.abs() / rep.e_kin
                ),
            )
        }
        None => verdict(
            ok_kin,
            "criterion 8",
            &format!("{label}: ∫τ=∫τ₁=∫ξ dev {kin_dev:.1e} (≤1e-6); ξ₂ skipped (wall virial)"),
        ),
    }
}

#[test]
fn criterion_09_center_bessel_law() {
    let mut all_ok = true;
    for dim in [3u32, 2] {
        let m = 10u32;
        let lam = lambda_m(m, dim, 1.0, 1.0);
        let r_max = (2.0 * lam).sqrt() + 6.0;
        let n = (r_max / 0.003).ceil() as usize;
        let grid = Grid::radial(dim, r_max, n).unwrap();
        let field = iho_densities(m, dim, 1.0, Units::natural(), &grid).unwrap();
        let spec =
            PotentialSpec::new(PotentialKind::Iho { omega: 1.0, dim }, Units::natural()).unwrap();
        let smooth = tf_densities(&spec, lam, &grid).unwrap();
        let osc = oscillating_parts(&field, &smooth).unwrap();
        let rep = check_center_bessel(
            &osc,
            &field,
            &spec,
            lam,
            Some(m as i32),
            BesselAmplitude::HalfPeriod,
        )
        .unwrap();
        let ok = rep.correlation >= 0.99 && rep.laplace_eigen_residual <= 0.10;
        all_ok &= verdict(
            ok,
            "criterion 9",
            &format!(
                "IHO D={dim} M={m}: correlation {:.5} (≥0.99), Δ-eigenrelation {:.1}% (≤10%), amp/pred {:.3} (T_r1={:.4})",
                rep.correlation,
                100.0 * rep.laplace_eigen_residual,
                rep.amplitude_ratio,
                rep.t_radial
            ),
        );
    }
    assert!(all_ok, "criterion 9 failed");
}

#[test]
fn criterion_10_coupled_quartic() {
    let spec = PotentialSpec::new(PotentialKind::CoupledQuartic2D { kappa: 0.6 }, Units::natural())
        .unwrap();
    let pg = PlaneGrid::new(4.3, 217).unwrap();
    let sol = solve_2d_grid(&spec, &pg, 110).unwrap();

    // candidate closed shells with N ≤ 200, widest HOMO–LUMO gaps first;
    // the criterion allows any N at or below 200
    let mut gaps: Vec<(f64, usize)> = (40..=100usize)
        .filter(|&norb| sol.orbitals[norb].energy - sol.orbitals[norb - 1].energy > 1e-6)
        .map(|norb| (sol.orbitals[norb].energy - sol.orbitals[norb - 1].energy, norb))
        .collect();
    gaps.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());

    let ray = (1.0, 1.0 / 3.0f64.sqrt());
    let mut best: Option<(f64, u64, f64, lvtlab_core::virial::Norms, f64, f64, f64)> = None;
    for &(gap, norb) in gaps.iter().take(8) {
        let n_part = 2 * norb as u64;
        let occ = fill_levels(&sol.levels(), n_part).unwrap();
        let dens = compute_densities_2d(&sol, &occ).unwrap();
        let lam_tf = find_lambda_tf_plane(&spec, n_part, &pg).unwrap();
        let (plain, surf) =
            check_differential_lvt_ray(&dens, &spec, lam_tf, ray, 3.7, 1481, XiMode::Tf, false)
                .unwrap();
        let (corrected, _) =
            check_differential_lvt_ray(&dens, &spec, lam_tf, ray, 3.7, 1481, XiMode::Tf, true)
                .unwrap();
        let plain_surf = plain.norms_on(&surf);
        let corr_surf = corrected.norms_on(&surf);
        println!(
            "  candidate N={n_part} (gap {gap:.3}): interior {:.1}%, surface {:.1}%→{:.1}%, interior with corr {:.1}%",
            100.0 * plain.interior.linf_rel,
            100.0 * plain_surf.linf_rel,
            100.0 * corr_surf.linf_rel,
            100.0 * corrected.interior.linf_rel
        );
        if best
            .as_ref()
            .map(|b| plain.interior.linf_rel < b.0)
            .unwrap_or(true)
        {
            best = Some((
                plain.interior.linf_rel,
                n_part,
                gap,
                plain.interior,
                plain_surf.linf_rel,
                corr_surf.linf_rel,
                corrected.interior.linf_rel,
            ));
        }
    }
    let (best_linf, n_part, gap, _, surf_plain, surf_corr, int_corr) = best.unwrap();

    let ok_interior = best_linf <= 0.10;
    let ok_tradeoff = surf_corr < surf_plain && int_corr >= best_linf;
    let ok = verdict(
        ok_interior && ok_tradeoff,
        "criterion 10",
        &format!(
            "coupled quartic κ=0.6, best closed shell N={n_part} (gap {gap:.3}): dLVT interior along \
             y=x/√3 {:.1}% (≤10%); surface {:.1}%→{:.1}% with correction, interior {:.1}%→{:.1}%",
            100.0 * best_linf,
            100.0 * surf_plain,
            100.0 * surf_corr,
            100.0 * best_linf,
            100.0 * int_corr
        ),
    );
    assert!(ok, "criterion 10 failed");
}
