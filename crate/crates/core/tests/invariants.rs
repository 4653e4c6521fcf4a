//! Property tests over random seeds and grid sizes.

use num_complex::Complex;
use proptest::prelude::*;
use qha::conv::{conv_fun_fun, conv_fun_op, conv_op_op};
use qha::gabor::{stft, synthesis};
use qha::io::{
    operator_from_json, operator_json, phase_fn_from_json, phase_fn_json, value_to_json,
};
use qha::quantize::{cohen_q, cohen_q_factorized, tau_operator, OperatorSpec};
use qha::rng::{random_operator, random_phase_fn, random_signal};
use qha::*;

fn grid_size() -> impl Strategy<Value = usize> {
    prop_oneof![Just(8usize), Just(10), Just(12), Just(16)]
}

fn point(n: usize) -> impl Strategy<Value = PhasePoint> {
    let h = (n / 2) as i64;
    (-h..h, -h..h).prop_map(|(m, k)| PhasePoint::new(m, k))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symplectic_fourier_is_an_isometric_involution(n in grid_size(), seed in any::<u64>()) {
        let g = make_grid(n).unwrap();
        let f = random_phase_fn::<f64>(g, &mut LabRng::new(seed));
        let ff = symplectic_fourier(&f);
        prop_assert!(symplectic_fourier(&ff).max_abs_diff(&f) < 1e-12);
        prop_assert!(rel(ff.norm_l2(), f.norm_l2()) < 1e-12);
    }

    #[test]
    fn fourier_wigner_is_unitary(n in grid_size(), seed in any::<u64>()) {
        let g = make_grid(n).unwrap();
        let s = random_operator::<f64>(g, &mut LabRng::new(seed));
        let f = fourier_wigner(&s);
        prop_assert!(rel(f.norm_l2(), s.hs_norm()) < 1e-12);
        prop_assert!(inverse_fourier_wigner(&f).max_abs_diff(&s) < 1e-12);
    }

    #[test]
    fn convolutions_commute_and_associate(n in grid_size(), seed in any::<u64>()) {
        let g = make_grid(n).unwrap();
        let mut rng = LabRng::new(seed);
        let (f, h) = (random_phase_fn::<f64>(g, &mut rng), random_phase_fn::<f64>(g, &mut rng));
        let (s, t) = (random_operator::<f64>(g, &mut rng), random_operator::<f64>(g, &mut rng));
        let st = conv_op_op(&s, &t).unwrap();
        prop_assert!(st.max_abs_diff(&conv_op_op(&t, &s).unwrap()) < 1e-10);
        prop_assert!(conv_fun_fun(&f, &h).unwrap().max_abs_diff(&conv_fun_fun(&h, &f).unwrap()) < 1e-10);
        // (f∗h)⋆S = f⋆(h⋆S) and (f⋆S)⋆T = f∗(S⋆T)
        let left = conv_fun_op(&conv_fun_fun(&f, &h).unwrap(), &s).unwrap();
        let right = conv_fun_op(&f, &conv_fun_op(&h, &s).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-10 * left.hs_norm().max(1.0));
        let left = conv_op_op(&conv_fun_op(&f, &s).unwrap(), &t).unwrap();
        let right = conv_fun_fun(&f, &st).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-10 * left.norm_sup().max(1.0));
    }

    #[test]
    fn convolutions_are_covariant(n in grid_size(), seed in any::<u64>(), z in (0usize..16, 0usize..16)) {
        let g = make_grid(n).unwrap();
        let h = (n / 2) as i64;
        let z = PhasePoint::new(z.0 as i64 % n as i64 - h, z.1 as i64 % n as i64 - h);
        let mut rng = LabRng::new(seed);
        let f = random_phase_fn::<f64>(g, &mut rng);
        let (s, t) = (random_operator::<f64>(g, &mut rng), random_operator::<f64>(g, &mut rng));
        let a = conv_fun_op(&f.translate(z), &s).unwrap();
        prop_assert!(a.max_abs_diff(&translate_op(&conv_fun_op(&f, &s).unwrap(), z)) < 1e-10);
        let b = conv_op_op(&translate_op(&s, z), &t).unwrap();
        prop_assert!(b.max_abs_diff(&conv_op_op(&s, &t).unwrap().translate(z)) < 1e-10);
    }

    #[test]
    fn integral_of_operator_convolution(n in grid_size(), seed in any::<u64>()) {
        let g = make_grid(n).unwrap();
        let mut rng = LabRng::new(seed);
        let (s, t) = (random_operator::<f64>(g, &mut rng), random_operator::<f64>(g, &mut rng));
        let lhs = conv_op_op(&s, &t).unwrap().integral();
        let rhs = s.trace() * t.trace();
        prop_assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn stft_reconstruction_and_moyal(n in grid_size(), seed in any::<u64>()) {
        let g = make_grid(n).unwrap();
        let mut rng = LabRng::new(seed);
        let psi = random_signal::<f64>(g, &mut rng);
        let phi = random_signal::<f64>(g, &mut rng).normalized().unwrap();
        let v = stft(&psi, &phi).unwrap();
        prop_assert!(synthesis(&v, &phi).unwrap().max_abs_diff(&psi) < 1e-12);
        prop_assert!(rel(v.energy(), psi.norm_sqr()) < 1e-12);
    }

    #[test]
    fn weyl_calculus_roundtrip(n in grid_size(), seed in any::<u64>()) {
        let g = make_grid(n).unwrap();
        let mut rng = LabRng::new(seed);
        let f = random_phase_fn::<f64>(g, &mut rng);
        let l = weyl_quantize(&f);
        prop_assert!(weyl_symbol(&l).max_abs_diff(&f) < 1e-12);
        prop_assert!(rel(l.hs_norm(), f.norm_l2()) < 1e-12);
        let (psi, phi) = (random_signal::<f64>(g, &mut rng), random_signal::<f64>(g, &mut rng));
        let w = wigner(&psi, &phi).unwrap();
        prop_assert!(w.max_abs_diff(&weyl_symbol(&rank_one(&psi, &phi).unwrap())) < 1e-12);
    }

    #[test]
    fn cohen_class_factorization(n in grid_size(), seed in any::<u64>()) {
        let g = make_grid(n).unwrap();
        let mut rng = LabRng::new(seed);
        let r = random_operator::<f64>(g, &mut rng);
        let psi = random_signal::<f64>(g, &mut rng);
        let q = cohen_q(&r, &psi).unwrap();
        prop_assert!(q.max_abs_diff(&cohen_q_factorized(&r, &psi).unwrap()) < 1e-10 * q.norm_sup().max(1.0));
        let expected = r.trace() * psi.norm_sqr();
        prop_assert!((q.integral() - expected).norm() < 1e-10 * expected.norm().max(1.0));
    }

    #[test]
    fn tau_family_adjoint_and_parity(tau in 0.05f64..0.95, n in grid_size()) {
        prop_assume!((tau - 0.5).abs() > 1e-3);
        let g = make_grid(n).unwrap();
        let s = tau_operator::<f64>(g, tau).unwrap();
        prop_assert!(s.adjoint().max_abs_diff(&tau_operator(g, 1.0 - tau).unwrap()) < 1e-10);
        prop_assert!(check_op(&s).max_abs_diff(&s) < 1e-10);
    }

    #[test]
    fn schatten_spectrum_is_consistent(n in grid_size(), seed in any::<u64>()) {
        let g = make_grid(n).unwrap();
        let s = random_operator::<f64>(g, &mut LabRng::new(seed));
        let sp = schatten(&s).unwrap();
        prop_assert!(sp.sigma.windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(rel(sp.s2(), s.hs_norm()) < 1e-10);
        prop_assert!(sp.op() <= sp.s2() * (1.0 + 1e-12) && sp.s2() <= sp.s1() * (1.0 + 1e-12));
        let trace_bound = s.trace().norm();
        prop_assert!(trace_bound <= sp.s1() * (1.0 + 1e-10));
    }

    #[test]
    fn decay_profiles_are_non_increasing(n in grid_size(), seed in any::<u64>(), count in 2usize..20) {
        let g = make_grid(n).unwrap();
        let f = random_phase_fn::<f64>(g, &mut LabRng::new(seed));
        let p = decay_profile(&f, &uniform_radii(g.rho_max(), count));
        prop_assert!(p.is_non_increasing());
        prop_assert!((p.first() - f.norm_sup()).abs() < 1e-15);
    }

    #[test]
    fn json_tables_roundtrip(n in grid_size(), seed in any::<u64>()) {
        let g = make_grid(n).unwrap();
        let mut rng = LabRng::new(seed);
        let f = random_phase_fn::<f64>(g, &mut rng);
        let back = phase_fn_from_json(&serde_json::from_str(&value_to_json(&phase_fn_json(&f))).unwrap()).unwrap();
        prop_assert_eq!(back, f);
        let s = random_operator::<f64>(g, &mut rng);
        let back = operator_from_json(&serde_json::from_str(&value_to_json(&operator_json(&s))).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn tf_shift_composition_phase(n in grid_size(), a in point(16), b in point(16)) {
        let g = make_grid(n).unwrap();
        let wrap = |p: PhasePoint| PhasePoint::new(g.wrap(p.m), g.wrap(p.k));
        let (a, b) = (wrap(a), wrap(b));
        let lhs = tf_shift::<f64>(g, a).unwrap().compose(&tf_shift(g, b).unwrap()).unwrap();
        let sum = wrap(PhasePoint::new(a.m + b.m, a.k + b.k));
        let theta = -2.0 * std::f64::consts::PI * (b.k * a.m) as f64 / n as f64;
        let rhs = tf_shift::<f64>(g, sum).unwrap().scale(Complex::from_polar(1.0, theta));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn rng_streams_are_reproducible(seed in any::<u64>(), key in any::<u64>()) {
        let g = make_grid(8).unwrap();
        let a = random_signal::<f64>(g, &mut LabRng::new(seed).fork(key));
        let b = random_signal::<f64>(g, &mut LabRng::new(seed).fork(key));
        prop_assert_eq!(a, b);
    }
}

#[test]
fn spec_strings_roundtrip() {
    for s in [
        "constant:2",
        "chirp",
        "plane_wave:2,-1",
        "a_tau:0.3",
        "indicator_disk:1",
        "gaussian_env",
    ] {
        let m: MaskKind = s.parse().unwrap();
        assert_eq!(m.to_string().parse::<MaskKind>().unwrap(), m);
    }
    for s in [
        "gaussian",
        "hermite:3",
        "onesided_exp",
        "box:0.5",
        "random:9",
    ] {
        let a: AtomKind = s.parse().unwrap();
        assert_eq!(a.to_string(), s);
    }
    for s in [
        "identity",
        "parity",
        "born_jordan",
        "tau:0.25",
        "tf_shift:0.5,0.25",
    ] {
        let o: OperatorSpec = s.parse().unwrap();
        assert_eq!(o.to_string(), s);
    }
}

#[test]
fn single_precision_matches_double() {
    let g = make_grid(16).unwrap();
    let mut rng = LabRng::new(11);
    let s64 = random_operator::<f64>(g, &mut rng);
    let s32 = Operator32::from_indices(g, |a, b| {
        let z = s64.at(a, b);
        Complex::new(z.re as f32, z.im as f32)
    });
    let f64_ = fourier_wigner(&s64);
    let f32_ = fourier_wigner(&s32);
    let diff = f64_
        .values()
        .iter()
        .zip(f32_.values().iter())
        .map(|(a, b)| (a - Complex::new(b.re as f64, b.im as f64)).norm())
        .fold(0.0, f64::max);
    assert!(diff < 1e-4, "{diff}");
    assert!(inverse_fourier_wigner(&f32_).max_abs_diff(&s32) < 1e-5);
}
