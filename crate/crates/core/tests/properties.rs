use proptest::prelude::*;

use wavegen::filterbank::{constraint_residuals, derive_bank, lyapunov, qmf, rev, Filter};
use wavegen::solver::{coordinate_update, solve, SolverConfig};
use wavegen::transform::{
    analyze_1d, analyze_2d, build_analysis_matrix, reconstruction_error, synthesize_1d,
    synthesize_2d, BoundaryMode, Image2D, Signal1D,
};

fn even_vec(max_n: usize) -> impl Strategy<Value = Vec<f64>> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(-2.0f64..2.0, 2 * n))
}

fn solved(n: usize, seed: u64) -> Option<Filter> {
    let r = solve(&SolverConfig::new(n).with_seed(seed)).unwrap();
    (r.report.total_abs < 1e-12).then_some(r.filter)
}

proptest! {
    #[test]
    fn mirror_and_reverse_are_involutions(v in even_vec(10)) {
        let f = Filter::new(v).unwrap();
        prop_assert_eq!(qmf(&qmf(&f)), f.negate());
        prop_assert_eq!(rev(&rev(&f)), f.clone());
    }

    #[test]
    fn low_and_high_pass_are_orthogonal(v in even_vec(10)) {
        let f = Filter::new(v).unwrap();
        let bank = derive_bank(&f);
        let tol = 1e-14 * f.len() as f64 * f.norm_sq().max(1.0);
        prop_assert!(bank.l_d.dot(&bank.h_d).abs() <= tol);
        prop_assert!(bank.l_r.dot(&bank.h_r).abs() <= tol);
        prop_assert_eq!(&bank.l_r, &rev(&f));
        prop_assert_eq!(&bank.h_r, &qmf(&bank.l_r));
    }

    #[test]
    fn residual_scaling_law(v in even_vec(8), c in 0.1f64..4.0) {
        let f = Filter::new(v).unwrap();
        let a = constraint_residuals(&f);
        let b = constraint_residuals(&f.scale(c));
        for (x, y) in a.orthogonality.iter().zip(&b.orthogonality) {
            prop_assert!((y - c * c * x).abs() <= 1e-12 * (1.0 + y.abs()));
        }
        prop_assert!((b.parity - c * a.parity).abs() <= 1e-12 * (1.0 + b.parity.abs()));
    }

    #[test]
    fn lyapunov_matches_report(v in even_vec(10)) {
        let f = Filter::new(v).unwrap();
        let r = constraint_residuals(&f);
        let independent: f64 = r.orthogonality.iter().map(|x| x * x).sum::<f64>() + r.parity * r.parity;
        let l = lyapunov(&f);
        prop_assert!(l >= 0.0);
        prop_assert!((l - independent).abs() <= 1e-15 * independent.max(1e-300) + 1e-300);
    }

    #[test]
    fn coordinate_update_never_increases_lyapunov(v in even_vec(8), pick in 0usize..16) {
        let f = Filter::new(v).unwrap();
        let i = pick % f.len() + 1;
        let before = lyapunov(&f);
        let after = lyapunov(&coordinate_update(&f, i));
        prop_assert!(after <= before + 1e-15, "{} -> {}", before, after);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn periodic_round_trip_is_exact(n in 1usize..=6, seed in 0u64..1000, extra in 0usize..6,
                                    data in prop::collection::vec(-100.0f64..100.0, 64)) {
        let Some(f) = solved(n, seed) else { return Ok(()) };
        let bank = derive_bank(&f);
        let m = 4 * n + 2 * extra;
        let s = Signal1D::new(data[..m].to_vec()).unwrap();
        let d = analyze_1d(&s, &bank, BoundaryMode::Periodic).unwrap();
        let back = synthesize_1d(&d, &bank).unwrap();
        prop_assert!(reconstruction_error(s.samples(), back.signal.samples()).unwrap() < 1e-10);

        let energy: f64 = s.samples().iter().map(|x| x * x).sum();
        let coeff: f64 = d.p.iter().chain(&d.q).map(|x| x * x).sum();
        prop_assert!((energy - coeff).abs() <= 1e-8 * energy.max(1e-12));
    }

    #[test]
    fn oracle_matches_kernels(n in 1usize..=5, seed in 0u64..1000,
                              data in prop::collection::vec(-10.0f64..10.0, 48)) {
        let Some(f) = solved(n, seed) else { return Ok(()) };
        let bank = derive_bank(&f);
        let m = 8 * n.min(6);
        let s = &data[..m];
        let w = build_analysis_matrix(&bank, m).unwrap();
        let d = analyze_1d(&Signal1D::new(s.to_vec()).unwrap(), &bank, BoundaryMode::Periodic).unwrap();
        let coeffs: Vec<f64> = d.p.iter().chain(&d.q).copied().collect();
        prop_assert!(reconstruction_error(&w.apply(s), &coeffs).unwrap() < 1e-13 * 10.0);
        let back = synthesize_1d(&d, &bank).unwrap();
        prop_assert!(reconstruction_error(&w.apply_transpose(&coeffs), back.signal.samples()).unwrap() < 1e-12);
    }

    #[test]
    fn analysis_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0,
                          x in prop::collection::vec(-5.0f64..5.0, 32),
                          y in prop::collection::vec(-5.0f64..5.0, 32),
                          paper in any::<bool>()) {
        let bank = derive_bank(&wavegen::filterbank::lookup("table1-n4").unwrap().taps);
        let mode = if paper { BoundaryMode::PaperExtension } else { BoundaryMode::Periodic };
        let combo: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        let sig = |v: &[f64]| Signal1D::new(v.to_vec()).unwrap();
        let dx = analyze_1d(&sig(&x), &bank, mode).unwrap();
        let dy = analyze_1d(&sig(&y), &bank, mode).unwrap();
        let dc = analyze_1d(&sig(&combo), &bank, mode).unwrap();
        for j in 0..16 {
            prop_assert!((dc.p[j] - (a * dx.p[j] + b * dy.p[j])).abs() < 1e-12);
            prop_assert!((dc.q[j] - (a * dx.q[j] + b * dy.q[j])).abs() < 1e-12);
        }
    }

    #[test]
    fn image_round_trip_and_energy(seed in 0u64..1000, rows in 6usize..12, cols in 6usize..12,
                                   data in prop::collection::vec(0.0f64..255.0, 24 * 24)) {
        let Some(f) = solved(3, seed) else { return Ok(()) };
        let bank = derive_bank(&f);
        let (r, c) = (2 * rows, 2 * cols);
        let img = Image2D::new(r, c, data[..r * c].to_vec()).unwrap();
        let d = analyze_2d(&img, &bank, BoundaryMode::Periodic).unwrap();
        let back = synthesize_2d(&d, &bank).unwrap();
        prop_assert!(reconstruction_error(img.pixels(), back.pixels()).unwrap() < 1e-10);
        let e = wavegen::transform::subband_energy(&d);
        let pixel_energy: f64 = img.pixels().iter().map(|v| v * v).sum();
        prop_assert!((e.total - pixel_energy).abs() <= 1e-8 * pixel_energy);
        prop_assert!((e.fractions().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
