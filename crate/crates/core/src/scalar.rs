//! Exact integer scalars shared by the polynomial, series and matrix code.
//!
//! Everything that counts is generic over [`Scalar`], so the same routines
//! run on machine integers (`i64`, `i128`) for quick checks and on
//! [`num_bigint::BigInt`] when the values outgrow 64 bits.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_integer::Integer;
use num_traits::Signed;

/// A signed integer type with exact arithmetic.
///
/// Machine integers panic on overflow in debug builds; use `BigInt` whenever
/// the magnitude is not known to be small.
pub trait Scalar: Integer + Signed + Clone + Debug + Display + From<i32> + Sum {
    /// Lossless conversion from a machine index or count.
    fn from_i64(v: i64) -> Self;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl Scalar for num_bigint::BigInt {
    fn from_i64(v: i64) -> Self {
        v.into()
    }
}

/// Binomial coefficient with the extended convention: `binom(m, r) = 0`
/// whenever `m < 0`, `r < 0` or `r > m`.
pub fn binomial<T: Scalar>(m: i64, r: i64) -> T {
    if m < 0 || r < 0 || r > m {
        return T::zero();
    }
    let r = r.min(m - r);
    let mut acc = T::one();
    for i in 0..r {
        // acc * (m - i) is always divisible by i + 1 at this point
        acc = acc * T::from_i64(m - i) / T::from_i64(i + 1);
    }
    acc
}

/// The `n`-th Catalan number, `binom(2n, n) / (n + 1)`.
pub fn catalan<T: Scalar>(n: u32) -> T {
    // C_{i+1} = C_i * 2(2i+1) / (i+2), exact at each step
    let mut c = T::one();
    for i in 0..i64::from(n) {
        c = c * T::from_i64(2 * (2 * i + 1)) / T::from_i64(i + 2);
    }
    c
}

/// `num / den` when the division is exact.
pub(crate) fn exact_div<T: Scalar>(num: T, den: &T) -> Option<T> {
    let (q, r) = num.div_rem(den);
    r.is_zero().then_some(q)
}
