//! Exact rational scalars, Bernoulli numbers and polynomials, and the
//! Bernoulli identities and bounds the certification pipeline relies on.

mod bernoulli;
mod bounds;

pub use bernoulli::{
    bernoulli_number, bernoulli_polynomial, convolution_identity_check, BernoulliCache,
    ConvolutionCheck,
};
pub use bounds::{check_bernoulli_bounds, check_bernoulli_bounds_at, pi_bounds, BoundsDecision};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type BigRational = num_rational::BigRational;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num/den` as a reduced rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `base^exp` as an exact integer.
pub fn ipow(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `x^exp` for a signed exponent; `x` must be nonzero when `exp < 0`.
pub fn rpow(x: &BigRational, exp: i64) -> BigRational {
    if exp >= 0 {
        num_traits::pow(x.clone(), exp as usize)
    } else {
        num_traits::pow(x.recip(), exp.unsigned_abs() as usize)
    }
}

/// Sign of a rational as -1, 0 or +1.
pub fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `(-1)^e` as an `i8`.
pub fn parity_sign(e: u64) -> i8 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(52, 26), BigInt::from(495_918_532_948_104u64));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn ratios_are_reduced() {
        let r = ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rpow(&ratio(2, 3), -2), ratio(9, 4));
    }
}
