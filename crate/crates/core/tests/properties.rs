use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use proptest::prelude::*;
use twistlab_core::arith::{factor, gcd};
use twistlab_core::characters::{enumerate_characters, factor_modulus, Selection};
use twistlab_core::coefficients::{complete_homogeneous, elementary_symmetric, newton_residuals};
use twistlab_core::moments::{plancherel_moment, spearman_trend};
use twistlab_core::ramare::ramare_weight;
use twistlab_core::summation::{sum_real, tree_reduce, TwoFold};
use twistlab_core::MultiplicativeCoefficients;

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im)), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ramare_weight_is_window_indicator(n in 1u64..200_000, p1 in 2u64..50, width in 0u64..200) {
        let p2 = p1 + width;
        let hit = factor(n).iter().any(|&(p, _)| p1 <= p && p <= p2);
        let expected = if hit { Ratio::from_integer(1) } else { Ratio::from_integer(0) };
        prop_assert_eq!(ramare_weight(n, p1, p2), expected);
    }

    #[test]
    fn characters_are_completely_multiplicative(q in 1u64..400, m in -5000i64..5000, n in -5000i64..5000, pick in 0u64..1000) {
        let fm = Arc::new(factor_modulus(q).unwrap());
        let chi = fm.character(pick % fm.phi()).unwrap();
        let lhs = chi.evaluate(m * n);
        let rhs = chi.evaluate(m) * chi.evaluate(n);
        prop_assert!((lhs - rhs).norm() < 1e-12);
        prop_assert_eq!(chi.evaluate(m + q as i64), chi.evaluate(m));
    }

    #[test]
    fn orthogonality_is_exact(q in 2u64..300, m in 1i64..10_000, n in 1i64..10_000) {
        prop_assume!(gcd(m as u64, q) == 1 && gcd(n as u64, q) == 1);
        let fm = Arc::new(factor_modulus(q).unwrap());
        let defect = fm.orthogonality_defect_exact(m, n).unwrap();
        prop_assert!(defect.iter().all(|&c| c == 0));
    }

    #[test]
    fn coefficient_tables_are_multiplicative(m in 1u64..300, n in 1u64..300) {
        prop_assume!(gcd(m, n) == 1);
        for f in [MultiplicativeCoefficients::tau_d(3), MultiplicativeCoefficients::liouville(), MultiplicativeCoefficients::moebius()] {
            let t = f.table(m * n).unwrap();
            prop_assert!((t[(m * n) as usize] - t[m as usize] * t[n as usize]).norm() < 1e-9);
        }
    }

    #[test]
    fn plancherel_matches_character_sums(q in 2u64..60, a in complex_vec(300)) {
        let fm = Arc::new(factor_modulus(q).unwrap());
        let fam = enumerate_characters(&fm, Selection::All).unwrap();
        let brute: f64 = fam
            .iter()
            .map(|chi| a.iter().enumerate().map(|(i, z)| z * chi.evaluate(i as i64 + 1)).sum::<Complex64>().norm_sqr())
            .sum();
        let fast = plancherel_moment(&a, q);
        prop_assert!((fast - brute).abs() <= 1e-10 * brute.max(1.0));
    }

    #[test]
    fn newton_identities_hold(alpha in complex_vec(4)) {
        let h = complete_homogeneous(&alpha, 8);
        prop_assert!(newton_residuals(&alpha, &h).iter().all(|&r| r < 1e-10));
        let e = elementary_symmetric(&alpha);
        let prod: Complex64 = alpha.iter().product();
        prop_assert!((e[alpha.len()] - prod).norm() < 1e-12);
    }

    #[test]
    fn tree_reduce_is_order_fixed(xs in prop::collection::vec(-1e6f64..1e6, 1..20_000)) {
        let direct: TwoFold = xs.iter().copied().collect();
        let blocked = sum_real(&xs);
        prop_assert!((direct.value() - blocked).abs() <= 1e-9 * xs.iter().map(|x| x.abs()).sum::<f64>().max(1.0));
        let parts: Vec<TwoFold> = xs.chunks(7).map(|c| c.iter().copied().collect()).collect();
        let a = tree_reduce(parts.clone(), TwoFold::new(), |x, y| x.merge(y)).value();
        let b = tree_reduce(parts, TwoFold::new(), |x, y| x.merge(y)).value();
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn spearman_sees_monotone_sequences(mut ys in prop::collection::vec(-1e3f64..1e3, 3..40)) {
        ys.sort_by(|a, b| b.partial_cmp(a).unwrap());
        ys.dedup();
        prop_assume!(ys.len() >= 2);
        prop_assert!((spearman_trend(&ys).unwrap() + 1.0).abs() < 1e-12);
    }
}
