use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{bernoulli_number, factorial, BigRational};
use crate::{Error, Result};

/// Partial sum of `atan(1/x)` with a bracketing interval.
fn atan_inv_bounds(x: u64, bits: u64) -> (BigRational, BigRational) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let target = BigRational::new(BigInt::one(), BigInt::one() << (bits + 8));
    let mut sum = BigRational::zero();
    let mut pow = x.clone(); // x^(2i+1)
    let mut i: u64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &pow * BigInt::from(2 * i + 1));
        if term < target {
            // `term` is the first omitted term; the series alternates and
            // decreases, so the limit lies between the partial sum and
            // partial sum plus the signed next term.
            let other = if i % 2 == 0 { &sum + &term } else { &sum - &term };
            return if other < sum { (other, sum) } else { (sum, other) };
        }
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow *= &x2;
        i += 1;
    }
}

fn floor_dyadic(x: &BigRational, bits: u64) -> BigRational {
    let scaled = x * BigRational::from_integer(BigInt::one() << bits);
    BigRational::new(scaled.floor().to_integer(), BigInt::one() << bits)
}

fn ceil_dyadic(x: &BigRational, bits: u64) -> BigRational {
    let scaled = x * BigRational::from_integer(BigInt::one() << bits);
    BigRational::new(scaled.ceil().to_integer(), BigInt::one() << bits)
}

/// Certified dyadic enclosure `lo < pi < hi` with `hi - lo <= 2^-bits`,
/// from Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_bounds(bits: u64) -> (BigRational, BigRational) {
    let (lo5, hi5) = atan_inv_bounds(5, bits + 6);
    let (lo239, hi239) = atan_inv_bounds(239, bits + 4);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    let lo = &sixteen * lo5 - &four * hi239;
    let hi = &sixteen * hi5 - &four * lo239;
    (floor_dyadic(&lo, bits + 2), ceil_dyadic(&hi, bits + 2))
}

/// Outcome of a certified comparison at a fixed precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundsDecision {
    Holds,
    Fails,
    Undecided,
}

/// Decides `2(2m)!/(2pi)^{2m} < |B_{2m}| < 2(2m)!/((2pi)^{2m}(1 - 2^{1-2m}))`
/// using a pi enclosure of width `2^-bits`.
pub fn check_bernoulli_bounds_at(m: u64, bits: u64) -> Result<BoundsDecision> {
    if m == 0 {
        return Err(Error::domain("Bernoulli bounds require m >= 1"));
    }
    let b = bernoulli_number(2 * m as usize).abs();
    let (pl, ph) = pi_bounds(bits);
    let two = BigRational::from_integer(BigInt::from(2));
    let f = BigRational::from_integer(factorial(2 * m) * 2);
    let lower_lo = &f / num_traits::pow(&two * &ph, 2 * m as usize);
    let lower_hi = &f / num_traits::pow(&two * &pl, 2 * m as usize);
    let eta = BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << (2 * m - 1));
    let upper_lo = &lower_lo / &eta;
    let upper_hi = &lower_hi / &eta;

    let lower = if lower_hi < b {
        BoundsDecision::Holds
    } else if lower_lo >= b {
        BoundsDecision::Fails
    } else {
        BoundsDecision::Undecided
    };
    let upper = if b < upper_lo {
        BoundsDecision::Holds
    } else if b >= upper_hi {
        BoundsDecision::Fails
    } else {
        BoundsDecision::Undecided
    };
    Ok(match (lower, upper) {
        (BoundsDecision::Fails, _) | (_, BoundsDecision::Fails) => BoundsDecision::Fails,
        (BoundsDecision::Holds, BoundsDecision::Holds) => BoundsDecision::Holds,
        _ => BoundsDecision::Undecided,
    })
}

const MAX_PI_BITS: u64 = 1 << 20;

/// [`check_bernoulli_bounds_at`] with precision doubling until decided.
pub fn check_bernoulli_bounds(m: u64) -> Result<bool> {
    let mut bits = 32;
    loop {
        match check_bernoulli_bounds_at(m, bits)? {
            BoundsDecision::Holds => return Ok(true),
            BoundsDecision::Fails => return Ok(false),
            BoundsDecision::Undecided if bits >= MAX_PI_BITS => {
                return Err(Error::Undecided { bits })
            }
            BoundsDecision::Undecided => bits *= 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use num_integer::Integer;

    fn is_dyadic(x: &BigRational) -> bool {
        let d = x.denom();
        d.is_one() || ((d & (d - BigInt::one())).is_zero() && d.is_even())
    }

    #[test]
    fn pi_enclosure_is_tight_and_correct() {
        let (lo, hi) = pi_bounds(20);
        assert!(lo < ratio(314_160, 100_000));
        assert!(hi > ratio(314_159, 100_000));
        let width = &hi - &lo;
        assert!(width <= BigRational::new(BigInt::one(), BigInt::one() << 20));
        // 355/113 overshoots pi by 2.7e-7; a 40-bit enclosure must exclude it.
        let (_, hi40) = pi_bounds(40);
        assert!(hi40 < ratio(355, 113));
        assert!(is_dyadic(&hi40));
    }

    #[test]
    fn bounds_lemma_examples() {
        assert!(check_bernoulli_bounds(1).unwrap());
        assert!(check_bernoulli_bounds(5).unwrap());
        assert!(check_bernoulli_bounds(50).unwrap());
        assert!(check_bernoulli_bounds(0).is_err());
    }

    #[test]
    fn low_precision_is_undecided_for_large_m() {
        // zeta(2m) - 1 ~ 4^-m; 8 bits of pi cannot separate at m = 40.
        assert_eq!(
            check_bernoulli_bounds_at(40, 8).unwrap(),
            BoundsDecision::Undecided
        );
    }
}
