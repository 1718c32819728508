//! High-precision binary floating point used by the numeric cross-checks.

use dashu_int::{IBig, Sign, UBig};
use num_bigint::BigInt;

use crate::exactnum::{pi_bounds, BigRational};

/// Binary arbitrary-precision float (round toward zero).
pub type Real = dashu_float::FBig;

/// Bits needed for `digits` significant decimal digits.
pub fn digits_to_bits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize
}

pub fn to_ibig(x: &BigInt) -> IBig {
    let (sign, bytes) = x.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    match sign {
        num_bigint::Sign::Minus => IBig::from_parts(Sign::Negative, mag),
        _ => IBig::from_parts(Sign::Positive, mag),
    }
}

pub fn from_int(n: i64, bits: usize) -> Real {
    Real::from(IBig::from(n)).with_precision(bits).value()
}

pub fn from_bigint(n: &BigInt, bits: usize) -> Real {
    Real::from(to_ibig(n)).with_precision(bits).value()
}

pub fn from_rational(x: &BigRational, bits: usize) -> Real {
    from_bigint(x.numer(), bits) / from_bigint(x.denom(), bits)
}

/// `2^e` at the given precision.
pub fn pow2(e: isize, bits: usize) -> Real {
    Real::from_parts(IBig::from(1), e).with_precision(bits).value()
}

/// 10^-digits.
pub fn ten_pow_neg(digits: u32, bits: usize) -> Real {
    from_int(1, bits) / from_bigint(&num_traits::pow(BigInt::from(10), digits as usize), bits)
}

/// pi rounded to `bits`, taken from the certified rational enclosure.
pub fn pi(bits: usize) -> Real {
    let (lo, hi) = pi_bounds(bits as u64 + 8);
    let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
    from_rational(&mid, bits)
}

pub fn abs(x: &Real) -> Real {
    if x.sign() == Sign::Negative {
        -x.clone()
    } else {
        x.clone()
    }
}

pub fn max(a: Real, b: Real) -> Real {
    if a >= b {
        a
    } else {
        b
    }
}

/// Deterministic scientific rendering with `digits` significant digits.
pub fn sci(x: &Real, digits: usize) -> String {
    if *x == Real::ZERO {
        return "0".to_string();
    }
    let d = x.to_decimal().value().with_precision(digits).value();
    format!("{d:e}")
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}
