use num_traits::{One, Signed};
use rtz_core::criteria::{criteria_for, grid_lemma_check, half_sum_identity_check, inequality_chain_check};
use rtz_core::exactnum::{big, factorial, int, ipow, ratio};
use rtz_core::polycore::{is_self_inversive, reciprocity, Reciprocity};
use rtz_core::ramfam::*;
use rtz_core::BigRational;

#[test]
fn ramanujan_type_factors_through_h() {
    for k in 1..=30 {
        for n in 2..=10u64 {
            let r = build_ramanujan_type(k, n).unwrap();
            let (h, table) = build_h(k, n).unwrap();
            assert_eq!(r.compose_scale(&BigRational::new(1.into(), n.into())), h.mul_xpow(2), "k={k} n={n}");
            assert!(table.is_reciprocal(), "k={k} n={n}");
            assert!(table.sign_pattern_ok(), "k={k} n={n}");
        }
    }
}

#[test]
fn classic_is_self_inversive() {
    for k in 1..=30 {
        assert!(is_self_inversive(&build_classic(k).unwrap()), "k={k}");
    }
}

#[test]
fn lalin_rogers_is_rescaled_n2() {
    for k in 1..=20 {
        let lr = build_lalin_rogers(k).unwrap();
        let rt = build_ramanujan_type(k, 2).unwrap().compose_scale(&ratio(1, 2));
        assert_eq!(lr, rt, "k={k}");
    }
}

#[test]
fn generalized_reciprocity_follows_parity() {
    for k in 1..=12 {
        for ell in 1..=6 {
            let p = build_generalized(k, ell).unwrap();
            let expected = if ell % 2 == 1 || k % 2 == 1 {
                Reciprocity::Reciprocal
            } else {
                Reciprocity::AntiReciprocal
            };
            assert_eq!(reciprocity(&p), expected, "k={k} ell={ell}");
        }
    }
}

#[test]
fn f_extrema_and_g_bound_on_grid() {
    for k in 1..=30 {
        for n in 2..=10 {
            let c = grid_lemma_check(k, n).unwrap();
            assert!(c.holds(), "{c:?}");
            let FnValue::Exact(v) = f_n_eval(k, n, &int(k as i64 - 1)).unwrap() else {
                panic!("integer argument must be exact");
            };
            let top = big(ipow(n, k as u64 + 1) - 1);
            assert_eq!(v, &top * &top);
        }
    }
}

#[test]
fn d_j_bound_strict_except_at_k1() {
    let one = BigRational::one();
    for k in 1..=30u32 {
        for n in 2..=10 {
            let bound = big(ipow(2, 2 * k as u64)) / big(factorial(2 * k as u64 + 2)) * g_n_bound(k, n).unwrap();
            for j in 0..k {
                let d = d_j(k, n, j, &one).unwrap();
                if k == 1 {
                    assert_eq!(d, bound, "n={n}");
                } else {
                    assert!(d < bound, "k={k} n={n} j={j}");
                }
            }
        }
    }
}

#[test]
fn c_constant_positive() {
    for k in 1..=30 {
        for n in 2..=10 {
            assert!(c_constant(k, n).unwrap().is_positive());
        }
    }
}

/// Smallest `n` at which the real-`c` Schinzel inequality fails for `H`,
/// from an independent exact computation over `k <= 30`, `n <= 10`.
fn first_schinzel_failure(k: u32) -> u64 {
    match k {
        1..=4 => u64::MAX,
        5 => 7,
        6 => 5,
        7 | 8 => 4,
        _ => 3,
    }
}

#[test]
fn schinzel_for_h_matches_exact_oracle() {
    for k in 1..=30 {
        for n in 2..=10 {
            let r = criteria_for(k, n).unwrap();
            let expected = n < first_schinzel_failure(k);
            assert_eq!(r.schinzel_holds, expected, "k={k} n={n}");
            assert_eq!(r.schinzel_strict, expected, "k={k} n={n}");
            assert!(!r.schinzel_min.is_negative());
        }
    }
    let r = criteria_for(3, 2).unwrap();
    assert_eq!(r.schinzel_min, ratio(1, 11520));
    assert_eq!(r.schinzel_bound, ratio(1, 1920));
    let r = criteria_for(5, 7).unwrap();
    assert_eq!(r.schinzel_min, ratio(6312751, 264600));
    assert_eq!(r.schinzel_argmin_c, int(1));
    assert_eq!(r.schinzel_bound, ratio(534991, 22680));
    let r = criteria_for(6, 5).unwrap();
    assert_eq!(r.schinzel_argmin_c, ratio(38622063, 26448565));
    assert_eq!(r.schinzel_min, "58561951803787/219946266540000".parse::<BigRational>().unwrap());
}

#[test]
fn half_argument_sum_identity() {
    for k in 1..=50 {
        let r = half_sum_identity_check(k).unwrap();
        assert!(r.equal && r.signed_equal, "k={k}");
    }
}

#[test]
fn chain_transcript_is_exact() {
    // At the optimal c the transcript reproduces the criterion report.
    for k in 2..=10 {
        for n in 2..=5 {
            let report = criteria_for(k, n).unwrap();
            let r = inequality_chain_check(k, n, &report.schinzel_argmin_c).unwrap();
            assert_eq!(r.criterion_at_c.lhs, report.schinzel_min);
            assert_eq!(r.criterion_at_c.holds, report.schinzel_strict, "k={k} n={n}");
        }
    }
    // c_{2,2} < 1, so the sign step cannot hold at c = c_{2,2}.
    let c = c_constant(2, 2).unwrap();
    let r = inequality_chain_check(2, 2, &c).unwrap();
    assert!(c < int(1));
    assert!(!r.sign_step);
    assert!(r.constant_below_threshold.holds);
}
