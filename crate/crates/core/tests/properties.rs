//! Property tests over randomized parameters.

use mobius_cs::fock::{inner_product, FockState};
use mobius_cs::geometry::{embed_point, RadialProfile, StripConfig};
use mobius_cs::latticesum::{gauss_comb, gauss_sum_direct, gauss_sum_poisson, GaussSumSpec};
use mobius_cs::states::{build_cs, fidelity, overlap_closed, parity_split, CsParams};
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn arb_amps() -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(r, i)| C64::new(r, i)),
        1..12,
    )
}

proptest! {
    #[test]
    fn inner_product_is_conjugate_symmetric(
        a in arb_amps(),
        b in arb_amps(),
        lo_a in -6i64..6,
        lo_b in -6i64..6,
    ) {
        let a = FockState::from_amps(lo_a, a).unwrap();
        let b = FockState::from_amps(lo_b, b).unwrap();
        let ab = inner_product(&a, &b);
        let ba = inner_product(&b, &a);
        prop_assert!((ab - ba.conj()).norm() <= 1e-12);
    }

    #[test]
    fn parity_split_preserves_mass(amps in arb_amps(), lo in -6i64..6) {
        let s = FockState::from_amps(lo, amps).unwrap();
        let (even, odd) = parity_split(&s);
        let total = s.norm_sqr();
        prop_assert!((even.norm_sqr() + odd.norm_sqr() - total).abs() <= 1e-14 * total.max(1e-300));
        // Disjoint supports.
        prop_assert!(inner_product(&even, &odd).norm() == 0.0);
    }

    #[test]
    fn self_fidelity_is_one(lp in -2.0f64..2.0, phi in -7.0f64..7.0) {
        let s = build_cs(&CsParams::new(lp, phi).unwrap());
        let f = fidelity(&s, &s).unwrap();
        prop_assert!((f - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn comb_symmetries(c in -3.0f64..3.0) {
        let g = gauss_comb(c);
        prop_assert!(g > 0.0);
        prop_assert!((g - gauss_comb(c + 1.0)).abs() <= 1e-13 * g);
        prop_assert!((g - gauss_comb(-c)).abs() <= 1e-13 * g);
        prop_assert!((g - PI.sqrt()).abs() <= 3e-4);
    }

    #[test]
    fn shift_identity_random_beta(
        re in -4.0f64..4.0,
        im in -2.5f64..2.5,
        m in -5i64..=5,
    ) {
        let beta = C64::new(re, im);
        let mf = m as f64;
        let base = gauss_sum_direct(&GaussSumSpec::with_default_epsilon(1.0, beta).unwrap());
        let shifted =
            gauss_sum_direct(&GaussSumSpec::with_default_epsilon(1.0, beta + 2.0 * mf).unwrap());
        let expected = base.value() * (beta * mf + mf * mf).exp();
        prop_assert!((shifted.value() - expected).norm() <= 1e-11 * expected.norm());
    }

    #[test]
    fn poisson_duality_random_beta(re in -10.0f64..10.0, im in -2.5f64..2.5) {
        // Im β stays away from ±π, where the sum's zeros live and a
        // relative comparison loses meaning.
        let spec = GaussSumSpec::with_default_epsilon(1.0, C64::new(re, im)).unwrap();
        let d = gauss_sum_direct(&spec);
        let p = gauss_sum_poisson(&spec);
        let dev = (d.mantissa() - p.mantissa()).norm() / d.mantissa().norm();
        prop_assert!(dev <= 1e-10, "beta = {re} + {im}i: {dev}");
    }

    #[test]
    fn embedding_closes_after_two_turns(
        phi in -7.0f64..7.0,
        r in 0.0f64..0.95,
        l in -2.0f64..2.0,
    ) {
        let a = embed_point(phi, r, l).unwrap();
        let b = embed_point(phi + 4.0 * PI, r, l).unwrap();
        prop_assert!((a.x - b.x).abs() <= 1e-12);
        prop_assert!((a.y - b.y).abs() <= 1e-12);
        prop_assert!((a.z - b.z).abs() <= 1e-12);
        prop_assert!((a.l_prime - b.l_prime).abs() <= 1e-12);
    }

    #[test]
    fn engine_overlap_matches_closed_form(
        l1 in -1.5f64..1.5,
        l2 in -1.5f64..1.5,
        phi1 in 0.0f64..6.3,
        phi2 in 0.0f64..6.3,
    ) {
        let p1 = CsParams::new(l1, phi1).unwrap();
        let p2 = CsParams::new(l2, phi2).unwrap();
        let engine = inner_product(&build_cs(&p1), &build_cs(&p2));
        let closed = overlap_closed(&p1, &p2);
        prop_assert!((engine - closed).norm() <= 1e-11 * closed.norm());
    }

    #[test]
    fn strip_level_periodicity(
        l in -1.0f64..1.0,
        phi in -7.0f64..7.0,
        which in 0usize..3,
    ) {
        let profile = match which {
            0 => RadialProfile::constant(0.6).unwrap(),
            1 => RadialProfile::SinSquared,
            _ => RadialProfile::CosSquared,
        };
        let cfg = StripConfig::new(l, profile).unwrap();
        prop_assert!((cfg.l_prime(phi + 4.0 * PI) - cfg.l_prime(phi)).abs() <= 1e-12);
    }
}
