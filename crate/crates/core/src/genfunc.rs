//! Rational generating functions `f_h = q_{h-1} / q_h` for D^(h,2).
//!
//! `q_1 = 1`, `q_2 = 1 - x - x^2` and `q_h = q_{h-1} - x q_{h-2}`. Writing
//! `q_h = 1 - a_{h,1} x - ... - a_{h,d} x^d` with `d = ceil((h+1)/2)`, the
//! coefficients have the closed form
//! `a_{h,j} = (3j-h-2)/j * binom(h-j+1, j-1) * (-1)^j`.
//!
//! No rational arithmetic is used: every division happens after the full
//! integer product and is checked for exactness.

use thiserror::Error;

use crate::poly::IntPolynomial;
use crate::scalar::{binomial, catalan, exact_div, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("height bound must be at least {min}, got {h}")]
    InvalidHeight { h: usize, min: usize },
    #[error("coefficient a({h},{j}) is not an integer")]
    NonIntegralCoefficient { h: i64, j: i64 },
    #[error("denominator constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("the Catalan identity needs n >= 1")]
    ZeroIndex,
    #[error("term j = {j} of the Catalan identity for n = {n}, alpha = {alpha} is not an integer")]
    NonIntegralTerm { n: u32, alpha: u32, j: u32 },
}

/// `f = numerator / denominator` with `denominator(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF<T> {
    pub numerator: IntPolynomial<T>,
    pub denominator: IntPolynomial<T>,
}

/// `ceil((h+1)/2)`, the degree of `q_h` for `h >= 2`.
pub fn q_degree(h: usize) -> usize {
    (h + 2) / 2
}

pub fn q_poly<T: Scalar>(h: usize) -> Result<IntPolynomial<T>, GfError> {
    if h == 0 {
        return Err(GfError::InvalidHeight { h, min: 1 });
    }
    let mut prev = IntPolynomial::one();
    let mut cur = IntPolynomial::from_i64s(&[1, -1, -1]);
    if h == 1 {
        return Ok(prev);
    }
    for _ in 3..=h {
        let next = &cur - &prev.shift(1);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// The closed form evaluated literally for any integers, with the extended
/// binomial convention. Zero whenever `j` exceeds the degree of `q_h`.
fn closed_form<T: Scalar>(h: i64, j: i64) -> Result<T, GfError> {
    let sign = if j % 2 == 0 { T::one() } else { -T::one() };
    let num = T::from_i64(3 * j - h - 2) * binomial::<T>(h - j + 1, j - 1) * sign;
    exact_div(num, &T::from_i64(j)).ok_or(GfError::NonIntegralCoefficient { h, j })
}

/// `a_{h,j}` for `j >= 1`; zero past `ceil((h+1)/2)`.
pub fn a_coeff<T: Scalar>(h: usize, j: usize) -> Result<T, GfError> {
    if h == 0 {
        return Err(GfError::InvalidHeight { h, min: 1 });
    }
    if j == 0 || j > q_degree(h) {
        return Ok(T::zero());
    }
    closed_form(h as i64, j as i64)
}

/// `f_1 = 1 + x`, and `q_{h-1} / q_h` for `h >= 2`.
pub fn gf<T: Scalar>(h: usize) -> Result<RationalGF<T>, GfError> {
    match h {
        0 => Err(GfError::InvalidHeight { h, min: 1 }),
        1 => Ok(RationalGF {
            numerator: IntPolynomial::from_i64s(&[1, 1]),
            denominator: IntPolynomial::one(),
        }),
        _ => Ok(RationalGF {
            numerator: q_poly(h - 1)?,
            denominator: q_poly(h)?,
        }),
    }
}

impl<T: Scalar> RationalGF<T> {
    /// First `n + 1` Taylor coefficients at `x = 0`.
    pub fn series(&self, n: usize) -> Result<Vec<T>, GfError> {
        series(self, n)
    }
}

/// First `n + 1` Taylor coefficients of `gf` by exact long division.
pub fn series<T: Scalar>(gf: &RationalGF<T>, n: usize) -> Result<Vec<T>, GfError> {
    let lead = gf.denominator.coeff(0);
    if !(lead.is_one() || (-lead.clone()).is_one()) {
        return Err(GfError::NonUnitConstantTerm);
    }
    let den = gf.denominator.coeffs();
    let mut out: Vec<T> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut acc = gf.numerator.coeff(m);
        for (i, d) in den.iter().enumerate().skip(1).take(m) {
            acc = acc - d.clone() * out[m - i].clone();
        }
        out.push(acc * lead.clone());
    }
    Ok(out)
}

/// Truncated series of `f_h` built from `f_1 = 1 + x` by iterating
/// `f_h = 1 / (1 - x f_{h-1})` on power series, without the polynomial
/// closed form.
pub fn continued_fraction_series<T: Scalar>(h: usize, n: usize) -> Result<Vec<T>, GfError> {
    if h == 0 {
        return Err(GfError::InvalidHeight { h, min: 1 });
    }
    let mut f: Vec<T> = (0..=n)
        .map(|i| if i <= 1 { T::one() } else { T::zero() })
        .collect();
    for _ in 2..=h {
        // g = 1 / (1 - x f)  <=>  g_m = sum_{i=1..m} f_{i-1} g_{m-i}, g_0 = 1
        let mut g: Vec<T> = Vec::with_capacity(n + 1);
        g.push(T::one());
        for m in 1..=n {
            let s = (1..=m).map(|i| f[i - 1].clone() * g[m - i].clone()).sum();
            g.push(s);
        }
        f = g;
    }
    Ok(f)
}

/// `D_0 .. D_n` of D^(h,2) from the linear recurrence read off `f_h`.
///
/// `D_n = sum_j D_{n-j} a_{h,j} - (3n-h-1)/n * binom(h-n, n-1) * (-1)^n`
/// for `n >= 1`, with `D_0 = 1` and `D_l = 0` for `l < 0`.
pub fn count_sequence<T: Scalar>(h: usize, n: usize) -> Result<Vec<T>, GfError> {
    if h < 2 {
        return Err(GfError::InvalidHeight { h, min: 2 });
    }
    let coeffs = (1..=q_degree(h))
        .map(|j| a_coeff::<T>(h, j))
        .collect::<Result<Vec<_>, _>>()?;
    let mut d: Vec<T> = Vec::with_capacity(n + 1);
    d.push(T::one());
    for m in 1..=n {
        let mut acc = T::zero();
        for (j, a) in coeffs.iter().enumerate().map(|(i, a)| (i + 1, a)) {
            if j <= m {
                acc = acc + d[m - j].clone() * a.clone();
            }
        }
        // the numerator coefficient a_{h-1,m}, zero once m passes its degree
        acc = acc - closed_form::<T>(h as i64 - 1, m as i64)?;
        d.push(acc);
    }
    Ok(d)
}

pub fn count_recurrence<T: Scalar>(h: usize, n: usize) -> Result<T, GfError> {
    let mut seq = count_sequence(h, n)?;
    Ok(seq.pop().expect("sequence has n + 1 terms"))
}

/// Evaluates both sides of the Catalan identity obtained from
/// `D_n^(n+alpha, 2) = C_n` and reports whether they agree.
pub fn catalan_identity<T: Scalar>(n: u32, alpha: u32) -> Result<bool, GfError> {
    if n == 0 {
        return Err(GfError::ZeroIndex);
    }
    let (ni, ai) = (i64::from(n), i64::from(alpha));
    let mut rhs = T::zero();
    for j in 1..=n {
        let ji = i64::from(j);
        let sign = if j % 2 == 0 { T::one() } else { -T::one() };
        let num = catalan::<T>(n - j)
            * T::from_i64(3 * ji - ni - ai - 2)
            * binomial::<T>(ni + ai - ji + 1, ji - 1)
            * sign;
        rhs = rhs + exact_div(num, &T::from_i64(ji)).ok_or(GfError::NonIntegralTerm { n, alpha, j })?;
    }
    let sign = if n % 2 == 0 { T::one() } else { -T::one() };
    let num = T::from_i64(2 * ni - ai - 1) * binomial::<T>(ai, ni - 1) * sign;
    rhs = rhs - exact_div(num, &T::from_i64(ni)).ok_or(GfError::NonIntegralTerm { n, alpha, j: 0 })?;
    Ok(rhs == catalan::<T>(n))
}
