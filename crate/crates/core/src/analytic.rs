//! Numerical check of Ramanujan's formula for odd zeta values.
//!
//! With `alpha beta = pi^2`,
//! `G_k(alpha) = (-1)^k G_k(beta) - 2^{2k} sum_j (-1)^j b(j) b(k+1-j) alpha^{k+1-j} beta^j`
//! where `G_k(x) = x^{-k} (zeta(2k+1)/2 + sum_{n>=1} n^{-2k-1} / (e^{2xn} - 1))`.

use dashu_int::Sign;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::exactnum::{bernoulli_number, big, factorial, ipow, parity_sign, BigRational};
use crate::polycore::DensePoly;
use crate::ramfam::bernoulli_ratio;
use crate::real::{self, digits_to_bits, from_bigint, from_int, from_rational, Real};
use crate::{Error, Result};

/// Guard digits added on top of the requested precision.
pub const GUARD_DIGITS: u32 = 10;

fn is_positive(x: &Real) -> bool {
    x.sign() == Sign::Positive && *x != Real::ZERO
}

fn rational_two_pow(e: u64) -> BigRational {
    big(ipow(2, e))
}

/// `zeta(s)` for odd `s >= 3` by Euler-Maclaurin summation, with an error
/// bound. All correction terms are exact rationals before conversion.
pub fn zeta_odd(s: u32, bits: usize) -> Result<(Real, Real)> {
    if s < 3 || s % 2 == 0 {
        return Err(Error::domain("zeta_odd needs an odd argument >= 3"));
    }
    let s64 = s as u64;
    let n_cut = (bits as u64 / 3).max(16);
    let eps = BigRational::new(BigInt::one(), ipow(2, bits as u64 + 8));
    let mut total = Real::ZERO.with_precision(bits).value();
    for n in 1..n_cut {
        total += from_int(1, bits) / from_bigint(&ipow(n, s64), bits);
    }
    let nb = big(n_cut);
    let mut tail = BigRational::one() / (big(ipow(n_cut, s64 - 1)) * big(s64 - 1))
        + BigRational::new(BigInt::one(), ipow(n_cut, s64) * 2);
    // rising factorial s (s+1) ... (s+2j-2), times N^{-s-2j+1}
    let mut rising = big(s64);
    let mut npow = BigRational::one() / big(ipow(n_cut, s64 + 1));
    let mut err = None;
    for j in 1..=(4 * n_cut) {
        let term = bernoulli_number(2 * j as usize) / big(factorial(2 * j)) * &rising * &npow;
        if term.abs() < eps {
            err = Some(term.abs() * big(2));
            break;
        }
        tail += term;
        rising *= big((s64 + 2 * j - 1) * (s64 + 2 * j));
        npow /= &nb * &nb;
    }
    let err = err.ok_or_else(|| Error::domain("Euler-Maclaurin expansion did not reach the target"))?;
    let rounding = real::pow2(-(bits as isize) + 8, bits);
    Ok((total + from_rational(&tail, bits), from_rational(&err, bits) + rounding))
}

/// `zeta(2k+1)` for any non-zero `k`; exact `-B_{-2k} / (-2k)` for `k < 0`.
fn zeta_2k1(k: i64, bits: usize) -> Result<(Real, Real)> {
    if k > 0 {
        zeta_odd(2 * k as u32 + 1, bits)
    } else {
        let m = (-2 * k) as usize;
        let v = -bernoulli_number(m) / big(m as i64);
        Ok((from_rational(&v, bits), Real::ZERO.with_precision(bits).value()))
    }
}

/// `x^e` for integer `e`.
fn powi(x: &Real, e: i64) -> Real {
    let mut acc = from_int(1, x.precision());
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        from_int(1, x.precision()) / acc
    } else {
        acc
    }
}

/// A value of `G_k` with a bound on its truncation and rounding error.
#[derive(Debug, Clone)]
pub struct GValue {
    pub value: Real,
    pub error_bound: Real,
}

/// `G_k(x)` with the series truncated after `terms` summands.
pub fn eval_g(k: i64, x: &Real, terms: u64, bits: usize) -> Result<GValue> {
    if k == 0 {
        return Err(Error::domain("k must be non-zero"));
    }
    if !is_positive(x) {
        return Err(Error::domain("G_k needs x > 0"));
    }
    if terms == 0 {
        return Err(Error::domain("terms must be >= 1"));
    }
    let x = x.clone().with_precision(bits).value();
    let one = from_int(1, bits);
    let q = (-(&x * from_int(2, bits))).exp();
    let p = -2 * k - 1;
    let mut qn = one.clone();
    let mut series = Real::ZERO.with_precision(bits).value();
    for n in 1..=terms {
        qn *= &q;
        let np = powi(&from_int(n as i64, bits), p);
        series += np * &qn / (&one - &qn);
    }
    qn *= &q;
    let n1 = terms + 1;
    let first = powi(&from_int(n1 as i64, bits), p) * &qn / (&one - &qn);
    let growth = if p > 0 {
        powi(&(from_int(n1 as i64 + 1, bits) / from_int(n1 as i64, bits)), p)
    } else {
        one.clone()
    };
    let rho = growth * &q;
    if rho >= one {
        return Err(Error::domain("too few terms for a geometric tail bound"));
    }
    let tail = first / (&one - &rho);
    let (zeta, zeta_err) = zeta_2k1(k, bits)?;
    let scale = powi(&x, -k);
    let inner = zeta / from_int(2, bits) + series;
    let value = &scale * &inner;
    let rounding = real::abs(&value) * real::pow2(-(bits as isize) + 16, bits);
    let error_bound = &scale * (tail + zeta_err / from_int(2, bits)) + rounding;
    Ok(GValue { value, error_bound })
}

/// Coefficients of `sum_{j=0}^{k+1} (-1)^j b(j) b(k+1-j) u^j`, the finite
/// sum divided by `alpha^{k+1}` with `u = beta / alpha`.
pub fn finite_sum_coefficients(k: u32) -> Vec<BigRational> {
    let k = k as u64;
    (0..=k + 1)
        .map(|j| {
            let c = bernoulli_ratio(j) * bernoulli_ratio(k + 1 - j);
            if parity_sign(j) < 0 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// The finite sum with `u = -z^2`, as a polynomial in `z`. Equals
/// `R_{2k+1}(z)` coefficient by coefficient.
pub fn finite_sum_in_z(k: u32) -> DensePoly {
    let coeffs = finite_sum_coefficients(k);
    let mut out = vec![BigRational::zero(); 2 * coeffs.len() - 1];
    for (j, c) in coeffs.into_iter().enumerate() {
        out[2 * j] = if j % 2 == 1 { -c } else { c };
    }
    DensePoly::new(out)
}

#[derive(Debug, Clone)]
pub struct IdentityResidual {
    pub k: u32,
    pub alpha: Real,
    pub beta: Real,
    pub terms_used: u64,
    pub lhs: Real,
    pub rhs: Real,
    pub residual: Real,
    /// Combined truncation and rounding bound.
    pub bound: Real,
    /// Residual when the finite sum carries `(-1)^{j-1}` instead of `(-1)^j`.
    pub alternate_sign_residual: Real,
    pub precision_digits: u32,
}

impl IdentityResidual {
    pub fn residual_below(&self, digits: u32) -> bool {
        self.residual < real::ten_pow_neg(digits, self.residual.precision().max(64))
    }
}

impl Serialize for IdentityResidual {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.precision_digits as usize;
        let mut st = s.serialize_struct("IdentityResidual", 12)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("alpha", &real::sci(&self.alpha, d))?;
        st.serialize_field("beta", &real::sci(&self.beta, d))?;
        st.serialize_field("terms_used", &self.terms_used)?;
        st.serialize_field("lhs", &real::sci(&self.lhs, d))?;
        st.serialize_field("rhs", &real::sci(&self.rhs, d))?;
        st.serialize_field("residual", &real::sci(&self.residual, 3))?;
        st.serialize_field("bound", &real::sci(&self.bound, 3))?;
        st.serialize_field("alternate_sign_residual", &real::sci(&self.alternate_sign_residual, 3))?;
        st.serialize_field("precision_digits", &self.precision_digits)?;
        st.serialize_field("sign_convention", "(-1)^j")?;
        st.serialize_field("series_start", &1)?;
        st.end()
    }
}

/// `alpha = r pi` at the working precision for `digits`.
pub fn pi_multiple(r: &BigRational, digits: u32) -> Real {
    let bits = digits_to_bits(digits + GUARD_DIGITS) + 32;
    from_rational(r, bits) * real::pi(bits)
}

/// Both sides of the formula at `alpha` and `beta = pi^2 / alpha`.
pub fn check_ramanujan_identity(k: u32, alpha: &Real, terms: u64, precision_digits: u32) -> Result<IdentityResidual> {
    if k == 0 {
        return Err(Error::domain("k must be >= 1"));
    }
    if !is_positive(alpha) {
        return Err(Error::domain("alpha must be positive"));
    }
    let bits = digits_to_bits(precision_digits + GUARD_DIGITS) + 32;
    let alpha = alpha.clone().with_precision(bits).value();
    let pi = real::pi(bits);
    let beta = &pi * &pi / &alpha;
    let gk = k as i64;
    let ga = eval_g(gk, &alpha, terms, bits)?;
    let gb = eval_g(gk, &beta, terms, bits)?;

    let coeffs = finite_sum_coefficients(k);
    let mut finite = Real::ZERO.with_precision(bits).value();
    let mut finite_abs = Real::ZERO.with_precision(bits).value();
    for (j, c) in coeffs.iter().enumerate() {
        let t = from_rational(c, bits) * powi(&alpha, (k as i64 + 1) - j as i64) * powi(&beta, j as i64);
        finite_abs += real::abs(&t);
        finite += t;
    }
    let four_k = from_rational(&rational_two_pow(2 * k as u64), bits);
    let signed_gb = if parity_sign(k as u64) < 0 { -gb.value.clone() } else { gb.value.clone() };
    let rhs = &signed_gb - &four_k * &finite;
    let alt_rhs = &signed_gb + &four_k * &finite;
    let lhs = ga.value.clone();
    let residual = real::abs(&(&lhs - &rhs));
    let rounding = (real::abs(&lhs) + real::abs(&gb.value) + &four_k * finite_abs) * real::pow2(-(bits as isize) + 24, bits);
    let bound = ga.error_bound + gb.error_bound + rounding;
    if residual > bound {
        return Err(Error::InsufficientPrecision {
            residual: real::sci(&residual, 3),
            bound: real::sci(&bound, 3),
        });
    }
    Ok(IdentityResidual {
        k,
        alternate_sign_residual: real::abs(&(&lhs - alt_rhs)),
        alpha,
        beta,
        terms_used: terms,
        lhs,
        rhs,
        residual,
        bound,
        precision_digits,
    })
}
