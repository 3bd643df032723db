//! Parameter-grid sweeps over every checkable statement in the crate.
//!
//! Each scan enumerates its grid, runs the check on every point in parallel,
//! and returns a [`ScanReport`] whose failure list is empty exactly when the
//! statement held everywhere. Grids are materialized up front and failures
//! are canonically sorted, so reports are deterministic regardless of thread
//! count.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::{gcd, Integer};
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::afunc::{self, AParams};
use crate::cyclotomic::exponent_vector;
use crate::gould::{self, GouldInstance};
use crate::integer_theorems;

/// One grid point that violated its statement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScanFailure {
    pub params: String,
    pub detail: String,
}

/// Outcome of one grid sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub identity_tag: String,
    pub total_cases: u64,
    /// Empty iff the scanned statement held on every grid point. Sorted.
    pub failures: Vec<ScanFailure>,
    pub elapsed_ms: u64,
}

impl ScanReport {
    /// Equality that ignores timing; used to compare parallel and serial runs.
    pub fn same_outcome(&self, other: &ScanReport) -> bool {
        self.identity_tag == other.identity_tag
            && self.total_cases == other.total_cases
            && self.failures == other.failures
    }

    /// Combines two sweeps into one report under a new tag.
    pub fn merged_with(self, other: ScanReport, tag: &str) -> ScanReport {
        let mut failures = self.failures;
        failures.extend(other.failures);
        failures.sort();
        ScanReport {
            identity_tag: tag.to_string(),
            total_cases: self.total_cases + other.total_cases,
            failures,
            elapsed_ms: self.elapsed_ms + other.elapsed_ms,
        }
    }
}

fn run_grid<P, F>(tag: &str, grid: Vec<P>, check: F) -> ScanReport
where
    P: Send + Sync,
    F: Fn(&P) -> Option<ScanFailure> + Send + Sync,
{
    let start = Instant::now();
    let mut failures: Vec<ScanFailure> = grid.par_iter().filter_map(&check).collect();
    failures.sort();
    ScanReport {
        identity_tag: tag.to_string(),
        total_cases: grid.len() as u64,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn params(b: u64, a: u64, n: u64, m: u64) -> AParams {
    AParams::new(b, a, n, m).expect("scan grids keep a >= 1")
}

/// Coprimality characterization on the diagonal: gcd(n, m) = 1 iff
/// A(1,n;n,m) has nonnegative coefficients, for 1 <= n <= n_max, 0 <= m <= n.
pub fn scan_andrews(n_max: u64) -> ScanReport {
    let mut grid = Vec::new();
    for n in 1..=n_max {
        for m in 0..=n {
            grid.push((n, m));
        }
    }
    run_grid("andrews", grid, |&(n, m)| {
        let predicted = afunc::andrews_predicate(n, m);
        let actual = afunc::is_nonneg_poly(&params(1, n, n, m));
        (predicted != actual).then(|| ScanFailure {
            params: format!("n={n} m={m}"),
            detail: format!("gcd predicate {predicted}, polynomial membership {actual}"),
        })
    })
}

/// Shift invariance: integrality of A(b,a;n,m) is constant when n and m move
/// by multiples of a. Checks `tuples` pseudorandom base points (deterministic
/// in `seed`) against every shift (k, l) in [-2, 2]^2 that stays in range.
pub fn scan_thm2_shift(tuples: u64, seed: u64, a_max: u64, n_max: u64, b_max: u64) -> ScanReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grid = Vec::new();
    for _ in 0..tuples {
        let a = rng.gen_range(1..=a_max);
        let n = rng.gen_range(0..=n_max);
        let m = rng.gen_range(0..=n);
        let b = rng.gen_range(1..=b_max);
        grid.push((b, a, n, m));
    }
    run_grid("thm2-shift", grid, |&(b, a, n, m)| {
        let p = params(b, a, n, m);
        let shifts: Vec<(i64, i64)> = (-2i64..=2)
            .flat_map(|k| (-2i64..=2).map(move |l| (k, l)))
            .filter(|&(k, l)| {
                let m2 = m as i64 + k * a as i64;
                let n2 = n as i64 + l * a as i64;
                0 <= m2 && m2 <= n2
            })
            .collect();
        match afunc::shift_equivalence_check(&p, &shifts) {
            Ok(true) => None,
            Ok(false) => Some(ScanFailure {
                params: p.to_string(),
                detail: "integrality changed under a shift by multiples of a".into(),
            }),
            Err(e) => Some(ScanFailure {
                params: p.to_string(),
                detail: format!("unexpected error: {e}"),
            }),
        }
    })
}

/// Triple agreement of the integrality tests when a | n: the gcd formula,
/// the cyclotomic exponent certificate, and the brute-force exact-division
/// oracle must return the same verdict on every tuple.
pub fn scan_thm4_gcd(a_max: u64, nmult_max: u64) -> ScanReport {
    let mut grid = Vec::new();
    for a in 1..=a_max {
        for t in 1..=nmult_max {
            let n = a * t;
            for m in 0..=n {
                for b in 1..=2 * a {
                    grid.push((b, a, n, m));
                }
            }
        }
    }
    run_grid("thm4-gcd", grid, |&(b, a, n, m)| {
        let p = params(b, a, n, m);
        let by_gcd = afunc::gcd_characterization(&p).expect("grid keeps a | n and m <= n");
        let by_exponents = afunc::is_integer_poly(&p);
        let by_division = afunc::expand_via_division(&p).is_ok();
        (by_gcd != by_exponents || by_exponents != by_division).then(|| ScanFailure {
            params: p.to_string(),
            detail: format!(
                "gcd formula {by_gcd}, exponent certificate {by_exponents}, division oracle {by_division}"
            ),
        })
    })
}

/// Soundness of the unifying sufficient condition: whenever the hypothesis
/// holds on the reduced window, A(1,a;a+r,m) must have nonnegative
/// coefficients.
pub fn scan_thm7_unify(a_max: u64, r_cap: u64) -> ScanReport {
    let mut grid = Vec::new();
    for a in 1..=a_max {
        for r in 0..a.min(r_cap) {
            for m in r..=a + r {
                grid.push((a, r, m));
            }
        }
    }
    run_grid("thm7-unify", grid, |&(a, r, m)| {
        let hyp = afunc::unify_hypothesis(a, r, m).expect("grid satisfies the window bounds");
        if !hyp {
            return None;
        }
        let p = params(1, a, a + r, m);
        (!afunc::is_nonneg_poly(&p)).then(|| ScanFailure {
            params: format!("a={a} r={r} m={m}"),
            detail: format!("hypothesis holds but {p} is not a nonnegative polynomial"),
        })
    })
}

fn divisibility_failure(prefix: String, r: &integer_theorems::DivisibilityReport) -> ScanFailure {
    ScanFailure {
        params: prefix,
        detail: format!(
            "divisor {} does not divide gcd {} of {:?}",
            r.divisor,
            r.gcd_value,
            r.operands.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        ),
    }
}

/// Statement form of the first binomial-pair divisibility claim over
/// a in [3, a_max], n in [0, n_max].
pub fn scan_thm8a(a_max: u64, n_max: u64) -> ScanReport {
    let grid = pair_grid(a_max, 0, n_max);
    run_grid("thm8a", grid, |&(a, n)| {
        let (statement, _) = integer_theorems::binom_div_a(a, n);
        (!statement.holds).then(|| divisibility_failure(format!("a={a} n={n}"), &statement))
    })
}

/// The lowered-index proof variant of the same claim, scanned separately so
/// its verdict can be reported next to the statement form without being
/// asserted. It does fail on real grid points, the first being a=4, n=3.
pub fn scan_thm8a_variant(a_max: u64, n_max: u64) -> ScanReport {
    let grid = pair_grid(a_max, 0, n_max);
    run_grid("thm8a-proof-variant", grid, |&(a, n)| {
        let (_, variant) = integer_theorems::binom_div_a(a, n);
        (!variant.holds).then(|| divisibility_failure(format!("a={a} n={n}"), &variant))
    })
}

/// Second binomial-pair divisibility claim over a in [3, a_max],
/// n in [1, n_max].
pub fn scan_thm8b(a_max: u64, n_max: u64) -> ScanReport {
    let grid = pair_grid(a_max, 1, n_max);
    run_grid("thm8b", grid, |&(a, n)| {
        let report = integer_theorems::binom_div_b(a, n);
        (!report.holds).then(|| divisibility_failure(format!("a={a} n={n}"), &report))
    })
}

fn pair_grid(a_max: u64, n_min: u64, n_max: u64) -> Vec<(u64, u64)> {
    let mut grid = Vec::new();
    for a in 3..=a_max {
        for n in n_min..=n_max {
            grid.push((a, n));
        }
    }
    grid
}

/// Central binomial congruence over a, b, n in [1, max]^3.
pub fn scan_sun(a_max: u64, b_max: u64, n_max: u64) -> ScanReport {
    let mut grid = Vec::new();
    for a in 1..=a_max {
        for b in 1..=b_max {
            for n in 1..=n_max {
                grid.push((a, b, n));
            }
        }
    }
    run_grid("sun", grid, |&(a, b, n)| {
        let report = integer_theorems::sun_congruence(a, b, n);
        (!report.holds).then(|| divisibility_failure(format!("a={a} b={b} n={n}"), &report))
    })
}

/// A(gcd(a,b), a+b; a+b, a) has nonnegative coefficients for
/// 1 <= a, b <= limit.
pub fn scan_gk_eq2(limit: u64) -> ScanReport {
    let mut grid = Vec::new();
    for a in 1..=limit {
        for b in 1..=limit {
            grid.push((a, b));
        }
    }
    run_grid("gk-eq2", grid, |&(a, b)| {
        let p = params(gcd(a, b), a + b, a + b, a);
        (!afunc::is_nonneg_poly(&p)).then(|| ScanFailure {
            params: format!("a={a} b={b}"),
            detail: format!("{p} is not a nonnegative polynomial"),
        })
    })
}

/// Both forms A(gcd(k,n), n; 2n, n-k) and A(k, n; 2n, n-k) have nonnegative
/// coefficients for 1 <= k <= n <= limit. Each form counts as its own case.
pub fn scan_gk_eq3(limit: u64) -> ScanReport {
    let mut grid = Vec::new();
    for n in 1..=limit {
        for k in 1..=n {
            grid.push((k, n, false));
            grid.push((k, n, true));
        }
    }
    run_grid("gk-eq3", grid, |&(k, n, strong)| {
        let b = if strong { k } else { gcd(k, n) };
        let p = params(b, n, 2 * n, n - k);
        (!afunc::is_nonneg_poly(&p)).then(|| ScanFailure {
            params: format!("k={k} n={n} form={}", if strong { "k" } else { "gcd" }),
            detail: format!("{p} is not a nonnegative polynomial"),
        })
    })
}

/// The parameters of the i-th of the six one-parameter families
/// (i in 0..6) at index n.
pub fn eq4_params(family: usize, n: u64) -> AParams {
    let (a, big_n, m) = match family {
        0 => (6 * n - 1, 12 * n, 3 * n),
        1 => (6 * n - 1, 12 * n, 4 * n),
        2 => (30 * n - 1, 60 * n, 6 * n),
        3 => (30 * n - 1, 120 * n, 40 * n),
        4 => (30 * n - 1, 120 * n, 45 * n),
        5 => (66 * n - 1, 3300 * n, 88 * n),
        _ => panic!("family index must be 0..6"),
    };
    params(1, a, big_n, m)
}

/// Certifies the six families A(1, c1*n - 1; c2*n, c3*n) for n = 1..=n_max
/// through exponent vectors; with `expand` set, additionally expands every
/// family at n = 1 and checks coefficient nonnegativity (the family-6
/// instance A(1,65;3300,88) is the large one).
///
/// The sixth family fails certification at n = 1 and n = 2: e_13 and e_65
/// are negative at n = 1 and e_131 at n = 2. The failures are genuine and
/// are reported like any other counterexample.
pub fn scan_eq4_family(n_max: u64, expand: bool) -> ScanReport {
    let mut grid: Vec<(usize, u64, bool)> = Vec::new();
    for family in 0..6 {
        for n in 1..=n_max {
            grid.push((family, n, false));
        }
    }
    if expand {
        for family in 0..6 {
            grid.push((family, 1, true));
        }
    }
    run_grid("eq4-family", grid, |&(family, n, expanding)| {
        let p = eq4_params(family, n);
        let label = format!("f{} n={n} {p}{}", family + 1, if expanding { " expand" } else { "" });
        if expanding {
            return match afunc::expand(&p) {
                Ok(poly) if poly.is_nonneg() => None,
                Ok(_) => Some(ScanFailure {
                    params: label,
                    detail: "expansion has a negative coefficient".into(),
                }),
                Err(e) => Some(ScanFailure {
                    params: label,
                    detail: format!("expansion impossible: {e}"),
                }),
            };
        }
        if afunc::is_integer_poly(&p) {
            return None;
        }
        let negatives = exponent_vector(&p)
            .negatives()
            .iter()
            .map(|(d, e)| format!("e_{d} = {e}"))
            .collect::<Vec<_>>()
            .join(", ");
        Some(ScanFailure {
            params: label,
            detail: format!("not a polynomial: {negatives}"),
        })
    })
}

/// One grid row of the divisibility sweep: the exact binomial-sum side and
/// whether n divides it, next to the hypothesis verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem9Row {
    pub n: u64,
    pub big_n: u64,
    pub big_m: u64,
    pub m: u64,
    pub hypothesis_holds: bool,
    pub lhs: BigInt,
    pub n_divides_lhs: bool,
}

/// Report plus the full per-row audit trail (the CSV payload).
#[derive(Debug, Clone)]
pub struct Theorem9Scan {
    pub report: ScanReport,
    pub rows: Vec<Theorem9Row>,
}

/// Sweeps the n^2 divisibility statement over n in [1, n_max],
/// N in [0, big_n_max], M in [0, n), m in [0, m_max]. A failure is a row
/// where the hypothesis holds but n does not divide the binomial-sum side.
pub fn scan_thm9(n_max: u64, big_n_max: u64, m_max: u64) -> Theorem9Scan {
    let start = Instant::now();
    let mut grid = Vec::new();
    for n in 1..=n_max {
        for big_n in 0..=big_n_max {
            for big_m in 0..n {
                for m in 0..=m_max {
                    grid.push((n, big_n, big_m, m));
                }
            }
        }
    }
    let rows: Vec<Theorem9Row> = grid
        .par_iter()
        .map(|&(n, big_n, big_m, m)| {
            let g = GouldInstance::new(big_n, big_m, n, m).expect("grid keeps M < n");
            let lhs = gould::gould_lhs(&g);
            let n_divides_lhs = lhs.mod_floor(&BigInt::from(n)).is_zero();
            let hypothesis_holds = gould::theorem9_check(&g).is_ok();
            Theorem9Row { n, big_n, big_m, m, hypothesis_holds, lhs, n_divides_lhs }
        })
        .collect();
    let mut failures: Vec<ScanFailure> = rows
        .iter()
        .filter(|row| row.hypothesis_holds && !row.n_divides_lhs)
        .map(|row| ScanFailure {
            params: format!("n={} N={} M={} m={}", row.n, row.big_n, row.big_m, row.m),
            detail: format!("{} does not divide the binomial sum {}", row.n, row.lhs),
        })
        .collect();
    failures.sort();
    let report = ScanReport {
        identity_tag: "thm9".to_string(),
        total_cases: rows.len() as u64,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    Theorem9Scan { report, rows }
}

/// Floating cross-check of the multisection identity on a grid: the complex
/// root sum must match the exact integer within 1e-6 relative error, have
/// relatively negligible imaginary part, and round to an integer multiple
/// of n under the same tolerance.
pub fn scan_gould_numeric(n_max: u64, big_n_max: u64, m_max: u64) -> ScanReport {
    let mut grid = Vec::new();
    for n in 1..=n_max {
        for big_n in 0..=big_n_max {
            for big_m in 0..n {
                for m in 0..=m_max {
                    grid.push((n, big_n, big_m, m));
                }
            }
        }
    }
    run_grid("gould-numeric", grid, |&(n, big_n, big_m, m)| {
        let g = GouldInstance::new(big_n, big_m, n, m).expect("grid keeps M < n");
        let exact = gould::root_unity_sum_exact(&g);
        let label = format!("n={n} N={big_n} M={big_m} m={m}");
        let z = match gould::root_unity_sum_numeric(&g) {
            Ok(z) => z,
            Err(e) => {
                return Some(ScanFailure {
                    params: label,
                    detail: format!("numeric evaluation refused: {e}"),
                })
            }
        };
        let exact_f = exact.to_f64().expect("magnitude bounded by 2^200");
        let scale = exact_f.abs().max(1.0);
        if (z.re - exact_f).abs() >= 1e-6 * scale {
            return Some(ScanFailure {
                params: label,
                detail: format!("real part {} vs exact {}", z.re, exact_f),
            });
        }
        if z.im.abs() >= 1e-6 * scale {
            return Some(ScanFailure {
                params: label,
                detail: format!("imaginary part {} not negligible", z.im),
            });
        }
        // divisibility by n, asserted numerically: the sum must round to a
        // multiple of n. The remainder test is relative because the
        // accumulated f64 error is ~ 2^upper * epsilon, which passes 1/2
        // long before the 1e-6 relative tolerance becomes loose.
        let per_n = z.re / n as f64;
        if (per_n - per_n.round()).abs() >= 1e-6 * per_n.abs().max(1.0) {
            return Some(ScanFailure {
                params: label,
                detail: format!("numeric sum / n = {per_n} is not near an integer"),
            });
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_is_a_pass() {
        let r = scan_andrews(0);
        assert_eq!(r.total_cases, 0);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn small_grids_hold() {
        assert!(scan_andrews(12).failures.is_empty());
        assert!(scan_thm4_gcd(4, 2).failures.is_empty());
        assert!(scan_thm7_unify(8, 6).failures.is_empty());
        assert!(scan_thm8a(5, 6).failures.is_empty());
        assert!(scan_thm8b(5, 6).failures.is_empty());
        assert!(scan_sun(4, 4, 4).failures.is_empty());
        assert!(scan_gk_eq2(5).failures.is_empty());
        assert!(scan_gk_eq3(5).failures.is_empty());
        assert!(scan_thm2_shift(50, 7, 6, 18, 8).failures.is_empty());
    }

    #[test]
    fn variant_scan_finds_the_first_counterexample() {
        let r = scan_thm8a_variant(4, 5);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].params, "a=4 n=3");
    }

    #[test]
    fn family_six_counterexamples_are_reported() {
        let r = scan_eq4_family(3, false);
        assert_eq!(r.total_cases, 18);
        let bad: Vec<&str> = r.failures.iter().map(|f| f.params.as_str()).collect();
        assert_eq!(bad, ["f6 n=1 A(1,65;3300,88)", "f6 n=2 A(1,131;6600,176)"]);
        assert!(r.failures[0].detail.contains("e_13 = -1"));
        assert!(r.failures[0].detail.contains("e_65 = -1"));
        assert!(r.failures[1].detail.contains("e_131 = -1"));
    }

    #[test]
    fn divisibility_rows_carry_the_audit_columns() {
        let scan = scan_thm9(3, 6, 1);
        assert!(scan.report.failures.is_empty());
        assert_eq!(scan.rows.len() as u64, scan.report.total_cases);
        // spot row: n=3, N=3, M=1, m=0 has lhs C(3,1) = 3, divisible
        let row = scan
            .rows
            .iter()
            .find(|r| r.n == 3 && r.big_n == 3 && r.big_m == 1 && r.m == 0)
            .unwrap();
        assert!(row.hypothesis_holds);
        assert_eq!(row.lhs, BigInt::from(3));
        assert!(row.n_divides_lhs);
    }

    #[test]
    fn numeric_grid_holds_small() {
        assert!(scan_gould_numeric(6, 12, 2).failures.is_empty());
    }

    #[test]
    fn report_serde_round_trip() {
        let r = scan_eq4_family(2, false);
        let j = serde_json::to_string(&r).unwrap();
        let back: ScanReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }
}
