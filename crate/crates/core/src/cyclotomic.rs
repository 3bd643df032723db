//! Cyclotomic polynomials and the cyclotomic exponent vector of A(b,a;n,m).
//!
//! Over Q[q] one has `q^M - 1 = prod_{d | M} Phi_d(q)`, so the multiplicity
//! of `Phi_d` in A(b,a;n,m) = (1-q^b)/(1-q^a) * [n m] is
//!
//! ```text
//! e_d = chi(d|b) - chi(d|a) + floor(n/d) - floor(m/d) - floor((n-m)/d)
//! ```
//!
//! and A is an integer polynomial exactly when every e_d with d >= 2 is
//! nonnegative (e_1 is identically zero). This module computes the Phi_d
//! themselves, the exponents, and the reconstruction product; together they
//! certify polynomiality without ever expanding A.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::afunc::AParams;
use crate::error::Error;
use crate::qpoly::Poly;
use crate::QPoly;

// Guarded memo table: entries are inserted fully constructed and the lock is
// never held across the recursive computation, so concurrent scans only ever
// observe complete polynomials (worst case they recompute a value).
static CACHE: OnceLock<Mutex<HashMap<u64, QPoly>>> = OnceLock::new();

fn cache() -> &'static Mutex<HashMap<u64, QPoly>> {
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All divisors of n, ascending.
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Euler's totient by trial division; desk-scale inputs only.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// The d-th cyclotomic polynomial, monic of degree phi(d).
///
/// Computed as `(q^d - 1) / prod_{e | d, e < d} Phi_e` by exact division,
/// recursively, with results memoized process-wide.
pub fn cyclotomic_poly(d: u64) -> QPoly {
    assert!(d >= 1, "cyclotomic index must be >= 1");
    if let Some(p) = cache().lock().unwrap().get(&d) {
        return p.clone();
    }
    let result = if d == 1 {
        QPoly::from_ints(&[-1, 1])
    } else {
        let mut num = Poly::monomial(BigInt::from(1), d as usize)
            .sub(&QPoly::one());
        for e in divisors(d) {
            if e == d {
                continue;
            }
            num = num
                .exact_div(&cyclotomic_poly(e))
                .expect("q^d - 1 is divisible by every cyclotomic factor of d");
        }
        num
    };
    cache()
        .lock()
        .unwrap()
        .entry(d)
        .or_insert(result)
        .clone()
}

/// Multiplicity of `Phi_d` in A(b,a;n,m) as a rational function.
///
/// Defined for the genuine bracket only: callers must rule out the zero
/// function (b = 0 or m > n) first.
pub fn exponent_of(d: u64, p: &AParams) -> i64 {
    assert!(d >= 1, "cyclotomic index must be >= 1");
    assert!(
        p.b() >= 1 && p.m() <= p.n(),
        "the zero function has no cyclotomic factorization"
    );
    let chi = |x: u64| i64::from(x % d == 0);
    chi(p.b()) - chi(p.a()) + (p.n() / d) as i64
        - (p.m() / d) as i64
        - ((p.n() - p.m()) / d) as i64
}

/// Smallest d >= 2 with e_d < 0, if any.
///
/// The floor part of e_d is superadditive, hence >= 0; a negative exponent
/// therefore needs chi(d|a) = 1 and chi(d|b) = 0, so only divisors of `a`
/// can go negative and scanning them is a complete polynomiality test.
pub fn first_negative_exponent(p: &AParams) -> Option<(u64, i64)> {
    for d in divisors(p.a()) {
        if d < 2 {
            continue;
        }
        let e = exponent_of(d, p);
        if e < 0 {
            return Some((d, e));
        }
    }
    None
}

/// The map d -> e_d over 2..=max(n, a, b), zero entries elided.
///
/// The range covers every d with a nonzero exponent: beyond max(n, a, b)
/// both indicators and all three floors vanish. The range is wider than n
/// alone because parameters with a > n or b > n put nonzero exponents on the
/// divisors of a and b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentVector {
    range_max: u64,
    exponents: BTreeMap<u64, i64>,
}

impl ExponentVector {
    pub fn range_max(&self) -> u64 {
        self.range_max
    }

    /// Nonzero entries, ascending in d.
    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    /// Exponent at d; absent keys are zero.
    pub fn get(&self, d: u64) -> i64 {
        self.exponents.get(&d).copied().unwrap_or(0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.exponents.values().all(|&e| e >= 0)
    }

    pub fn first_negative(&self) -> Option<(u64, i64)> {
        self.exponents.iter().find(|(_, &e)| e < 0).map(|(&d, &e)| (d, e))
    }

    pub fn negatives(&self) -> Vec<(u64, i64)> {
        self.exponents
            .iter()
            .filter(|(_, &e)| e < 0)
            .map(|(&d, &e)| (d, e))
            .collect()
    }
}

/// Full exponent vector of A(b,a;n,m). Same domain restriction as
/// [`exponent_of`].
pub fn exponent_vector(p: &AParams) -> ExponentVector {
    let range_max = p.n().max(p.a()).max(p.b());
    let mut exponents = BTreeMap::new();
    for d in 2..=range_max {
        let e = exponent_of(d, p);
        if e != 0 {
            exponents.insert(d, e);
        }
    }
    ExponentVector { range_max, exponents }
}

/// Multiplies the vector back into a polynomial, `prod Phi_d^{e_d}`.
///
/// A negative entry means the underlying A is not a polynomial; that is
/// reported rather than silently clamped.
pub fn reconstruct(v: &ExponentVector) -> Result<QPoly, Error> {
    if let Some((d, e)) = v.first_negative() {
        return Err(Error::NegativeExponent { d, e });
    }
    let mut p = QPoly::one();
    for (&d, &e) in v.exponents() {
        p = p.mul(&cyclotomic_poly(d).pow(e as u32));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(b: u64, a: u64, n: u64, m: u64) -> AParams {
        AParams::new(b, a, n, m).unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), QPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), QPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic_poly(6), QPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), QPoly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn coefficients_can_leave_unit_range() {
        // Phi_105 is the first cyclotomic polynomial with a coefficient of
        // magnitude 2.
        let p = cyclotomic_poly(105);
        assert_eq!(p.coeff(7), num_bigint::BigInt::from(-2));
        assert_eq!(p.coeff(41), num_bigint::BigInt::from(-2));
    }

    #[test]
    fn product_over_divisors_gives_q_pow_minus_one() {
        for m in 1..=30u64 {
            let mut prod = QPoly::one();
            for d in divisors(m) {
                prod = prod.mul(&cyclotomic_poly(d));
            }
            let target = Poly::monomial(num_bigint::BigInt::from(1), m as usize).sub(&QPoly::one());
            assert_eq!(prod, target, "M = {m}");
        }
    }

    #[test]
    fn degrees_match_totient() {
        for d in 1..=60u64 {
            assert_eq!(
                cyclotomic_poly(d).degree(),
                Some(euler_phi(d) as usize),
                "d = {d}"
            );
        }
    }

    #[test]
    fn exponent_examples() {
        let p = params(1, 5, 5, 2);
        assert_eq!(exponent_of(4, &p), 1);
        assert_eq!(exponent_of(5, &p), 0);
        assert_eq!(exponent_of(1, &p), 0);
        // d dividing neither a nor b: floor superadditivity keeps it in {0, 1}
        for d in 2..=20 {
            let q = params(7, 9, 17, 6);
            if 7 % d != 0 && 9 % d != 0 {
                let e = exponent_of(d, &q);
                assert!(e == 0 || e == 1, "d = {d}, e = {e}");
            }
        }
    }

    #[test]
    fn vector_examples() {
        let v = exponent_vector(&params(1, 5, 5, 2));
        assert_eq!(v.range_max(), 5);
        assert_eq!(v.get(4), 1);
        assert_eq!(v.get(2), 0);
        assert_eq!(v.exponents().len(), 1);
        assert!(v.is_nonneg());

        // b = a: indicators cancel, vector equals the plain bracket's
        let w = exponent_vector(&params(6, 6, 10, 4));
        let plain = exponent_vector(&params(1, 1, 10, 4));
        assert_eq!(w, plain);

        let u = exponent_vector(&params(2, 6, 6, 2));
        assert!(u.is_nonneg());
        assert_eq!(reconstruct(&u).unwrap(), QPoly::from_ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn reconstruct_examples() {
        let empty = exponent_vector(&params(3, 3, 1, 0));
        assert_eq!(reconstruct(&empty).unwrap(), QPoly::one());

        let v = exponent_vector(&params(1, 5, 5, 2));
        assert_eq!(reconstruct(&v).unwrap(), QPoly::from_ints(&[1, 0, 1]));

        let bad = exponent_vector(&params(1, 4, 4, 2));
        assert_eq!(
            reconstruct(&bad),
            Err(Error::NegativeExponent { d: 2, e: -1 })
        );
    }

    #[test]
    fn negative_scan_agrees_with_vector() {
        for (b, a, n, m) in [(1, 4, 4, 2), (1, 6, 12, 3), (2, 4, 8, 2), (1, 5, 7, 3)] {
            let p = params(b, a, n, m);
            assert_eq!(
                first_negative_exponent(&p),
                exponent_vector(&p).first_negative(),
                "{p}"
            );
        }
    }

    #[test]
    fn vector_serde_schema() {
        let v = exponent_vector(&params(1, 5, 5, 2));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"range_max":5,"exponents":{"4":1}}"#);
        let back: ExponentVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
