//! Dense polynomials in the formal variable q with exact integer coefficients.
//!
//! This is the value type everything else is built on. Coefficients are kept
//! exact (no rounding, no overflow), the representation is dense because
//! q-binomial expansions are dense, and division is always exact division:
//! a nonzero remainder is reported as [`Error::NotDivisible`] rather than
//! discarded, which is precisely the signal the polynomiality oracles need.
//!
//! The polynomial type is generic over its coefficient ring through the
//! [`Coefficient`] trait so the arithmetic core can be instantiated at
//! machine integers in contexts where arbitrary precision is overkill; the
//! crate root pins the alias `QPoly = Poly<BigInt>` used by all the
//! number-theoretic layers.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{NumAssignRef, Signed};
use serde::de::{self, MapAccess, SeqAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Multiplication through references, `&a * &b -> a*b`.
///
/// Spelled as its own trait so that `Coefficient` bounds stay readable
/// instead of repeating the higher-ranked `for<'a, 'b> &'a T: Mul<...>`
/// clause at every generic item.
pub trait RefMul: Sized {
    fn ref_mul(&self, rhs: &Self) -> Self;
}

impl<T> RefMul for T
where
    for<'a, 'b> &'a T: Mul<&'b T, Output = T>,
{
    fn ref_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

/// Coefficient ring for [`Poly`]: exact signed integers of some width.
///
/// Satisfied by `num_bigint::BigInt` (the default throughout this crate)
/// and by the primitive signed integers.
pub trait Coefficient:
    Integer + Signed + NumAssignRef + RefMul + Clone + Send + Sync + fmt::Debug + fmt::Display + 'static
{
}

impl<T> Coefficient for T where
    T: Integer
        + Signed
        + NumAssignRef
        + RefMul
        + Clone
        + Send
        + Sync
        + fmt::Debug
        + fmt::Display
        + 'static
{
}

/// Dense polynomial; `coeffs[i]` is the coefficient of `q^i`.
///
/// Invariant: the stored trailing coefficient is nonzero. The zero
/// polynomial is the empty vector, and its degree is `None` (a sentinel,
/// never an index).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![C::one()] }
    }

    /// Builds a polynomial from low-to-high coefficients, dropping trailing zeros.
    pub fn from_coeffs(coeffs: impl Into<Vec<C>>) -> Self {
        let mut coeffs = coeffs.into();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(v: &[i64]) -> Self
    where
        C: From<i64>,
    {
        Poly::from_coeffs(v.iter().map(|&x| C::from(x)).collect::<Vec<_>>())
    }

    /// `c * q^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(k + 1);
        coeffs.resize_with(k, C::zero);
        coeffs.push(c);
        Poly { coeffs }
    }

    /// `1 - q^k`. For k = 0 this is the zero polynomial.
    pub fn one_minus_q_pow(k: u64) -> Self {
        if k == 0 {
            return Poly::zero();
        }
        let k = k as usize;
        let mut coeffs = Vec::with_capacity(k + 1);
        coeffs.push(C::one());
        coeffs.resize_with(k, C::zero);
        coeffs.push(-C::one());
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `q^i`, zero beyond the stored range.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Sum of coefficients, i.e. the value at q = 1.
    pub fn eval_at_one(&self) -> C {
        let mut acc = C::zero();
        for c in &self.coeffs {
            acc += c;
        }
        acc
    }

    /// True iff every coefficient is >= 0 (membership in N0[q]).
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.coeffs.clone();
        out.resize_with(out.len().max(rhs.coeffs.len()), C::zero);
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        Poly::from_coeffs(out)
    }

    pub fn negate(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    /// Exact schoolbook product. Zero coefficients on either side are skipped,
    /// which makes multiplication by sparse factors cheap without a separate
    /// representation.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out: Vec<C> = Vec::new();
        out.resize_with(self.coeffs.len() + rhs.coeffs.len() - 1, C::zero);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a.ref_mul(b);
            }
        }
        // Leading product of nonzero leadings over an integral domain is
        // nonzero, but from_coeffs normalizes anyway.
        Poly::from_coeffs(out)
    }

    /// Fused multiply by `1 - q^k`: two passes, no intermediate product.
    pub fn mul_one_minus_q_pow(&self, k: u64) -> Self {
        if k == 0 || self.is_zero() {
            return Poly::zero();
        }
        let k = k as usize;
        let n = self.coeffs.len();
        let mut out: Vec<C> = Vec::with_capacity(n + k);
        out.extend(self.coeffs.iter().cloned());
        out.resize_with(n + k, C::zero);
        for j in k..n + k {
            let t = self.coeffs[j - k].clone();
            out[j] -= t;
        }
        Poly::from_coeffs(out)
    }

    /// Exact division: returns `s` with `self = den * s`, or
    /// [`Error::NotDivisible`] when no such polynomial exists over the
    /// coefficient integers, or [`Error::DivisionByZero`].
    ///
    /// Plain long division from the top. When `self = den * s` over the
    /// integers, every leading-coefficient division along the way is exact
    /// (leading coefficients multiply), so a single inexact step or a
    /// nonzero final remainder each prove non-divisibility. The divisor's
    /// nonzero support is collected once, so division by sparse factors such
    /// as `1 - q^k` costs O(nnz * deg).
    pub fn exact_div(&self, den: &Self) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let nd = den.coeffs.len() - 1;
        let nn = self.coeffs.len() - 1;
        if nn < nd {
            return Err(Error::NotDivisible);
        }
        let lead = &den.coeffs[nd];
        let support: Vec<(usize, &C)> = den
            .coeffs
            .iter()
            .enumerate()
            .take(nd) // the leading term cancels by construction
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let qlen = nn - nd + 1;
        let mut quo: Vec<C> = Vec::new();
        quo.resize_with(qlen, C::zero);
        for i in (0..qlen).rev() {
            if rem[i + nd].is_zero() {
                continue;
            }
            let (qc, r) = rem[i + nd].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            rem[i + nd] = C::zero();
            for &(j, dc) in &support {
                let t = qc.ref_mul(dc);
                rem[i + j] -= t;
            }
            quo[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Poly::from_coeffs(quo))
    }

    /// Small-exponent power by repeated multiplication.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        Poly::add(self, rhs)
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        Poly::sub(self, rhs)
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        Poly::mul(self, rhs)
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.negate()
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag} ")?;
                }
                if i == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{i}")?;
                }
            }
        }
        Ok(())
    }
}

// Serialization contract (shared with the CLI): {"coeffs": ["c0", "c1", ...]}
// with coefficients as decimal strings in ascending powers and no trailing
// zeros. Strings keep arbitrary precision safe in JSON; plain numbers are
// accepted on input for convenience.

impl<C: Coefficient> Serialize for Poly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut st = serializer.serialize_struct("QPoly", 1)?;
        st.serialize_field("coeffs", &strs)?;
        st.end()
    }
}

struct CoeffField<C>(C);

impl<'de, C: Coefficient> Deserialize<'de> for CoeffField<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V<C>(PhantomData<C>);
        impl<C: Coefficient> Visitor<'_> for V<C> {
            type Value = CoeffField<C>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a decimal integer string or integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                C::from_str_radix(v, 10)
                    .map(CoeffField)
                    .map_err(|_| E::custom(format!("invalid decimal integer {v:?}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                self.visit_str(&v.to_string())
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                self.visit_str(&v.to_string())
            }
        }
        deserializer.deserialize_any(V(PhantomData))
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for Poly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SeqV<C>(PhantomData<C>);
        impl<'de, C: Coefficient> Visitor<'de> for SeqV<C> {
            type Value = Vec<C>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of decimal integer strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(CoeffField(c)) = seq.next_element::<CoeffField<C>>()? {
                    out.push(c);
                }
                Ok(out)
            }
        }
        struct CoeffVec<C>(Vec<C>);
        impl<'de, C: Coefficient> Deserialize<'de> for CoeffVec<C> {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                d.deserialize_seq(SeqV(PhantomData)).map(CoeffVec)
            }
        }
        struct MapV<C>(PhantomData<C>);
        impl<'de, C: Coefficient> Visitor<'de> for MapV<C> {
            type Value = Poly<C>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map with a \"coeffs\" array")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut coeffs: Option<Vec<C>> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "coeffs" => coeffs = Some(map.next_value::<CoeffVec<C>>()?.0),
                        other => return Err(de::Error::unknown_field(other, &["coeffs"])),
                    }
                }
                let coeffs = coeffs.ok_or_else(|| de::Error::missing_field("coeffs"))?;
                Ok(Poly::from_coeffs(coeffs))
            }
        }
        deserializer.deserialize_struct("QPoly", &["coeffs"], MapV(PhantomData))
    }
}

/// The q-shifted factorial with x = q^k: the product of `(1 - q^{k+i})`
/// for i = 0..n. Empty product (n = 0) is 1; `(q; q)_n` is `q_pochhammer(1, n)`.
pub fn q_pochhammer<C: Coefficient>(k: u64, n: u64) -> Poly<C> {
    let mut p = Poly::one();
    for i in 0..n {
        p = p.mul_one_minus_q_pow(k + i);
    }
    p
}

/// Gaussian binomial coefficient as an exact polynomial; zero when m < 0 or
/// m > n, matching the bracket's out-of-range branch.
///
/// Computed by alternating a multiply by `(1 - q^{n-m+i})` with an exact
/// divide by `(1 - q^i)`: after step i the accumulator is the Gaussian
/// binomial of (n-m+i, i), a polynomial, so every division is exact and the
/// intermediate degree never exceeds the final one.
pub fn gaussian_binomial<C: Coefficient>(n: u64, m: i64) -> Poly<C> {
    if m < 0 || m as u64 > n {
        return Poly::zero();
    }
    let m = (m as u64).min(n - m as u64);
    let mut p = Poly::one();
    for i in 1..=m {
        p = p.mul_one_minus_q_pow(n - m + i);
        p = p
            .exact_div(&Poly::one_minus_q_pow(i))
            .expect("partial Gaussian quotient is a polynomial");
    }
    p
}
