use std::f64::consts::PI;

use hyperzero_core::curve::{self, theta_max, theta_of_z, z_of_theta};
use hyperzero_core::exactpoly::{isolate_roots, poly_mul, sturm_count};
use hyperzero_core::family::{
    self, eval_exact_f64, eval_series_oracle, generate_general, oracle_radius, recurrence_residual,
};
use hyperzero_core::qspec::{build_q, eval_R, eval_R_termwise, eval_r_detailed, solve_q};
use hyperzero_core::verify::{density_scan, expsum_sign};
use hyperzero_core::{BigRat, FamilyParams, GeneralDenominator, IntPoly};
use num_complex::Complex64;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = FamilyParams> {
    (1u32..=6, 1u32..=6)
        .prop_filter("max(n, r) > 1", |(n, r)| *n.max(r) > 1)
        .prop_map(|(n, r)| FamilyParams::new(n, r).unwrap())
}

fn planted(roots: &[i64]) -> IntPoly {
    roots
        .iter()
        .fold(IntPoly::from_i64s(&[1]), |acc, &k| poly_mul(&acc, &IntPoly::from_i64s(&[-k, 1])))
}

fn half(k: i64) -> BigRat {
    BigRat::new((2 * k + 1).into(), 2.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sturm_counts_planted_roots(
        roots in proptest::collection::btree_set(-20i64..20, 1..8),
        extra in 0usize..3,
        lo in -21i64..0,
        hi in 0i64..21,
    ) {
        let roots: Vec<i64> = roots.into_iter().collect();
        // repeated roots must still count once
        let mut all = roots.clone();
        all.extend(roots.iter().take(extra));
        let p = planted(&all).to_rat();
        let want = roots.iter().filter(|&&k| k > lo && k <= hi).count();
        prop_assert_eq!(sturm_count(&p, &half(lo), &half(hi)).unwrap(), want);
    }

    #[test]
    fn isolation_is_disjoint_and_refines(roots in proptest::collection::btree_set(-30i64..30, 1..10)) {
        let p = planted(&roots.iter().copied().collect::<Vec<_>>()).to_rat();
        let (lo, hi) = (BigRat::from_integer((-31).into()), BigRat::from_integer(31.into()));
        let coarse = isolate_roots(&p, &lo, &hi, &BigRat::new(1.into(), 2.into())).unwrap();
        let fine = isolate_roots(&p, &lo, &hi, &BigRat::new(1.into(), 1024.into())).unwrap();
        prop_assert_eq!(coarse.len(), roots.len());
        prop_assert_eq!(fine.len(), roots.len());
        for w in coarse.windows(2) {
            prop_assert!(w[0].hi < w[1].lo || (w[0].hi == w[1].lo && w[0].exact.is_some() != w[1].exact.is_some()));
        }
        for ((iv, fv), k) in coarse.iter().zip(&fine).zip(&roots) {
            let root = BigRat::from_integer((*k).into());
            prop_assert!(iv.contains(&root) && fv.contains(&root));
            if iv.exact.is_none() && iv.lo != iv.hi {
                prop_assert_eq!(sturm_count(&p, &iv.lo, &iv.hi).unwrap(), 1);
            }
        }
    }

    #[test]
    fn generated_family_satisfies_recurrence(p in params(), m_max in 1usize..40) {
        let polys = family::generate(p, m_max);
        for m in 1..=m_max {
            prop_assert!(recurrence_residual(p, &polys, m).is_zero());
            let deg = polys[m].degree().unwrap();
            prop_assert!(deg <= m / p.r() as usize);
        }
    }

    #[test]
    fn general_denominator_matches_binomial(p in params(), m_max in 0usize..25) {
        let general = generate_general(&GeneralDenominator::binomial(p), m_max).unwrap();
        let direct = family::generate(p, m_max);
        for (g, d) in general.iter().zip(&direct) {
            prop_assert_eq!(g, &d.to_rat());
        }
    }

    #[test]
    fn contour_oracle_matches_exact(p in params(), m in 0usize..50, z0 in -2.0f64..10.0) {
        let exact = eval_exact_f64(&family::generate(p, m)[m], z0);
        let nodes = 8 * (m + 1);
        let v = eval_series_oracle(p, m, z0, oracle_radius(p, m, z0, nodes), nodes).unwrap();
        prop_assert!((v - Complex64::new(exact, 0.0)).norm() < 1e-6 * exact.abs().max(1.0));
    }

    #[test]
    fn z_is_increasing_and_invertible(p in params(), u in 0.01f64..0.98, du in 0.001f64..0.01) {
        let top = theta_max(p);
        let (t1, t2) = (u * top, (u + du) * top);
        let (z1, z2) = (z_of_theta(p, t1).unwrap().z, z_of_theta(p, t2).unwrap().z);
        prop_assert!(z1 < z2);
        let back = theta_of_z(p, z1, 1e-12 * z1.max(1.0)).unwrap();
        prop_assert!((back - t1).abs() < 1e-6);
    }

    #[test]
    fn q_roots_rebuild_q(p in params(), u in 0.02f64..0.98) {
        let theta = u * theta_max(p);
        let spec = solve_q(p, theta, 1e-8).unwrap();
        let c = build_q(p, theta).unwrap();
        let lead = *c.last().unwrap();
        // conjugate-closed root set
        for z in &spec.roots {
            let nearest = spec.roots.iter().map(|w| (w - z.conj()).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest < 1e-6 * z.norm().max(1.0));
        }
        // lead * prod(zeta - zeta_k) reproduces Q at test points on |zeta| = 2
        for k in 0..5 {
            let x = Complex64::from_polar(2.0, 0.7 + k as f64);
            let prod = spec.roots.iter().fold(Complex64::new(lead, 0.0), |acc, z| acc * (x - z));
            let direct = c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &ci| acc * x + ci);
            let scale: f64 = c.iter().enumerate().map(|(i, ci)| ci.abs() * 2f64.powi(i as i32)).sum();
            prop_assert!((prod - direct).norm() < 1e-8 * scale);
        }
        prop_assert!(spec.margin > 0.0);
    }

    #[test]
    fn r_agrees_with_polynomial_and_termwise(p in params(), u in 0.05f64..0.95, m in 0usize..30) {
        let theta = u * theta_max(p);
        let s = z_of_theta(p, theta).unwrap();
        let tr = curve::trig(p, theta);
        let kappa = (tr.sin_theta / tr.sin_phi_theta).powi(p.n() as i32);
        let ratio = tr.sin_phi / tr.sin_phi_theta;
        let pm = family::generate(p, m).pop().unwrap();
        let from_poly = -kappa * ratio.powi(m as i32) * eval_exact_f64(&pm, s.z);
        let r = eval_R(p, theta, m).unwrap();
        let termwise = eval_R_termwise(p, theta, m).unwrap();
        let scale = eval_r_detailed(p, theta, m).unwrap().abs_sum;
        prop_assert!((r - from_poly).abs() < 1e-9 * scale, "R = {r}, identity = {from_poly}");
        prop_assert!((r - termwise).abs() < 1e-6 * scale);
    }

    #[test]
    fn expsum_alternates(n in 2u32..=60, h in 1u32..=20) {
        prop_assert_eq!(expsum_sign(n, h).unwrap(), if h % 2 == 0 { 1 } else { -1 });
    }
}

#[test]
fn density_is_monotone() {
    let p = FamilyParams::new(2, 3).unwrap();
    let mut last = 0.0;
    for m_max in [6, 12, 24, 48] {
        let d = density_scan(p, m_max, 20).unwrap();
        assert!(d.coverage_fraction >= last);
        last = d.coverage_fraction;
        let coarse = density_scan(p, m_max, 10).unwrap();
        assert!(coarse.coverage_fraction >= d.coverage_fraction);
    }
}

#[test]
fn theta_grid_stays_inside_domain() {
    let p = FamilyParams::new(3, 2).unwrap();
    let g = curve::theta_grid(p, 7);
    assert_eq!(g.len(), 7);
    assert!(g[0] > 0.0 && g[6] < PI / 2.0);
}
