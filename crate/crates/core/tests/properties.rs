//! Cross-cutting invariants, checked by randomized and exhaustive sweeps.
//!
//! The randomized tests use proptest with its default deterministic-replay
//! behavior; regressions persist failing seeds under proptest-regressions/.

use num_bigint::BigInt;
use num_integer::gcd;
use proptest::prelude::*;
use qdivide::afunc::{self, AParams};
use qdivide::cyclotomic::{self, exponent_of, exponent_vector};
use qdivide::gould::{self, GouldInstance};
use qdivide::integer_theorems::binomial;
use qdivide::scan;
use qdivide::QPoly;

fn poly(coeffs: Vec<i64>) -> QPoly {
    QPoly::from_ints(&coeffs)
}

fn coeff_vec(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1_000_000i64..=1_000_000, 0..=max_len)
}

fn aparams() -> impl Strategy<Value = AParams> {
    (1u64..=8, 1u64..=8, 0u64..=20).prop_flat_map(|(b, a, n)| {
        (Just(b), Just(a), Just(n), 0u64..=n)
            .prop_map(|(b, a, n, m)| AParams::new(b, a, n, m).unwrap())
    })
}

proptest! {
    /// Multiplication followed by exact division is the identity.
    #[test]
    fn mul_div_round_trip(p in coeff_vec(40), r in coeff_vec(25)) {
        let p = poly(p);
        let r = poly(r);
        prop_assume!(!r.is_zero());
        let product = p.mul(&r);
        prop_assert_eq!(product.exact_div(&r).unwrap(), p);
    }

    /// Serialization through the decimal-string coefficient schema is lossless.
    #[test]
    fn poly_serde_round_trip(p in coeff_vec(30)) {
        let p = poly(p);
        let json = serde_json::to_string(&p).unwrap();
        let back: QPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn aparams_serde_round_trip(p in aparams()) {
        let json = serde_json::to_string(&p).unwrap();
        let back: AParams = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    /// The first cyclotomic exponent vanishes identically: numerator and
    /// denominator contribute the same power of (q - 1).
    #[test]
    fn exponent_at_one_is_zero(p in aparams()) {
        prop_assert_eq!(exponent_of(1, &p), 0);
    }

    /// The three integrality paths agree, and when A is a polynomial all
    /// three expansions produce the same coefficients.
    #[test]
    fn integrality_paths_agree(p in aparams()) {
        let by_exponents = afunc::is_integer_poly(&p);
        let division = afunc::expand_via_division(&p);
        prop_assert_eq!(by_exponents, division.is_ok());
        let expansion = afunc::expand(&p);
        prop_assert_eq!(by_exponents, expansion.is_ok());
        if by_exponents {
            let direct = expansion.unwrap();
            prop_assert_eq!(&direct, &division.unwrap());
            if !p.is_zero_function() {
                let rebuilt = cyclotomic::reconstruct(&exponent_vector(&p)).unwrap();
                prop_assert_eq!(direct, rebuilt);
            }
        }
    }

    /// Window reduction preserves the integrality verdict and recomposes to
    /// the original parameters.
    #[test]
    fn reduction_consistency(b in 1u64..=8, a in 1u64..=10, n in 1u64..=40) {
        prop_assume!(n >= a);
        let m = n / 2;
        let p = AParams::new(b, a, n, m).unwrap();
        let red = afunc::reduced_form(&p).unwrap();
        let s = red.s();
        let r = red.r();
        prop_assert!(a <= s && s < 2 * a);
        prop_assert!(r < a);
        prop_assert_eq!(s + red.v() * a, n);
        prop_assert_eq!(red.u() * a + r, m);
        let window = AParams::new(b, a, s, r).unwrap();
        prop_assert_eq!(afunc::is_integer_poly(&p), afunc::is_integer_poly(&window));
    }

    /// Whenever the divisibility hypothesis holds, the check reports a
    /// positive verdict (n divides the multisection sum).
    #[test]
    fn multisection_divisibility(n in 1u64..=10, big_n in 0u64..=24, m in 0u64..=3) {
        for big_m in 0..n.min(big_n + 1) {
            let g = GouldInstance::new(big_n, big_m, n, m).unwrap();
            if let Ok(verdict) = gould::theorem9_check(&g) {
                prop_assert!(verdict);
            }
        }
    }
}

#[test]
fn gaussian_symmetry_specialization_and_recurrence() {
    for n in 0u64..=40 {
        for m in 0..=n {
            let g = qdivide::gaussian_binomial(n, m as i64);
            assert_eq!(g, qdivide::gaussian_binomial(n, (n - m) as i64));
            assert_eq!(g.eval_at_one(), binomial(n, m as i64));
            if n > 0 && m > 0 {
                // [n m] = [n-1 m-1] + q^m [n-1 m]
                let lower = qdivide::gaussian_binomial(n - 1, m as i64 - 1);
                let upper = qdivide::gaussian_binomial(n - 1, m as i64)
                    .mul(&QPoly::monomial(BigInt::from(1), m as usize));
                assert_eq!(g, lower.add(&upper));
            }
        }
    }
}

#[test]
fn pochhammer_matches_incremental_product() {
    let mut acc = QPoly::one();
    for i in 1..=12u64 {
        acc = acc.mul_one_minus_q_pow(i);
        assert_eq!(qdivide::q_pochhammer(1, i), acc);
    }
}

#[test]
fn exhaustive_small_grid_agreement() {
    for b in 1u64..=5 {
        for a in 1u64..=5 {
            for n in 0u64..=10 {
                for m in 0..=n {
                    let p = AParams::new(b, a, n, m).unwrap();
                    let verdict = afunc::is_integer_poly(&p);
                    let division = afunc::expand_via_division(&p);
                    assert_eq!(
                        verdict,
                        division.is_ok(),
                        "certificate and division disagree at {p}"
                    );
                    if verdict {
                        assert_eq!(afunc::expand(&p).unwrap(), division.unwrap());
                    }
                }
            }
        }
    }
}

/// gcd((a-1)m + 1, a(a-1)m + 1) = 1: the two binomial-pair indices are
/// always coprime, which is what makes the pair reports informative.
#[test]
fn pair_indices_are_coprime() {
    for a in 3u64..=12 {
        for m in 1u64..=25 {
            let x = (a - 1) * m + 1;
            let y = a * (a - 1) * m + 1;
            assert_eq!(gcd(x, y), 1, "a={a} m={m}");
        }
    }
}

/// Scan outcomes are independent of the rayon thread count.
#[test]
fn scans_are_thread_count_invariant() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            (
                scan::scan_thm4_gcd(5, 2),
                scan::scan_eq4_family(2, false),
                scan::scan_thm2_shift(60, 42, 6, 18, 8),
            )
        })
    };
    let serial = run(1);
    let parallel = run(4);
    assert!(serial.0.same_outcome(&parallel.0));
    assert!(serial.1.same_outcome(&parallel.1));
    assert!(serial.2.same_outcome(&parallel.2));
}
