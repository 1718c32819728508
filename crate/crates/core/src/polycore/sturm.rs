use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::gcd::{positive_prem, primitive_part, to_primitive};
use super::{squarefree_part, DensePoly};
use crate::exactnum::BigRational;
use crate::{Error, Result};

/// Interval endpoint for Sturm counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(BigRational),
    PosInf,
}

/// Sturm sequence of the squarefree part of a polynomial, stored as
/// primitive integer polynomials. Positive rescaling of chain members does
/// not change sign variations, which keeps coefficient growth in check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<Vec<BigInt>>,
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `p(u/v)` for `v > 0`, via the homogenized value `v^d p(u/v)`.
fn sign_at(p: &[BigInt], u: &BigInt, v: &BigInt) -> i8 {
    let mut acc = BigInt::zero();
    let mut vpow = BigInt::from(1);
    for (i, c) in p.iter().enumerate().rev() {
        if i + 1 == p.len() {
            acc = c.clone();
        } else {
            vpow *= v;
            acc = acc * u + c * &vpow;
        }
    }
    sign_of(&acc)
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    pub fn new(p: &DensePoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::domain("Sturm chain of the zero polynomial"));
        }
        let s = squarefree_part(p)?;
        let p0 = to_primitive(&s);
        let p1 = to_primitive(&s.derivative());
        let mut chain = vec![p0];
        if !p1.is_empty() {
            chain.push(p1);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = positive_prem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            let neg: Vec<BigInt> = r.into_iter().map(|c| -c).collect();
            chain.push(primitive_part(neg));
        }
        Ok(SturmChain { chain })
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn polys(&self) -> Vec<DensePoly> {
        self.chain.iter().map(|c| DensePoly::from_int_coeffs(c)).collect()
    }

    fn sign_at_bound(p: &[BigInt], at: &Bound) -> i8 {
        let lc = sign_of(p.last().unwrap());
        match at {
            Bound::PosInf => lc,
            Bound::NegInf if (p.len() - 1) % 2 == 0 => lc,
            Bound::NegInf => -lc,
            Bound::At(x) => sign_at(p, x.numer(), x.denom()),
        }
    }

    /// Sign variations of the chain evaluated at `at`.
    pub fn variations_at(&self, at: &Bound) -> usize {
        variations(self.chain.iter().map(|p| Self::sign_at_bound(p, at)))
    }

    /// Distinct real roots in `(lo, hi)`; finite endpoints must not be roots.
    pub fn count_between(&self, lo: &Bound, hi: &Bound) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    pub fn count_all(&self) -> usize {
        self.count_between(&Bound::NegInf, &Bound::PosInf)
    }

    fn vanishes_at(&self, x: &BigRational) -> bool {
        sign_at(&self.chain[0], x.numer(), x.denom()) == 0
    }
}

fn check_endpoint(q: &DensePoly, x: &BigRational) -> Result<()> {
    if q.eval(x).is_zero() {
        return Err(Error::EndpointRoot {
            endpoint: x.to_string(),
        });
    }
    Ok(())
}

/// Number of distinct real roots of `q` in the open interval `(a, b)`.
/// Neither endpoint may be a root of `q`.
pub fn count_real_roots_in(q: &DensePoly, a: &BigRational, b: &BigRational) -> Result<usize> {
    if q.is_zero() {
        return Err(Error::domain("root count of the zero polynomial"));
    }
    if a >= b {
        return Err(Error::domain(format!("empty interval ({a}, {b})")));
    }
    check_endpoint(q, a)?;
    check_endpoint(q, b)?;
    let chain = SturmChain::new(q)?;
    Ok(chain.count_between(&Bound::At(a.clone()), &Bound::At(b.clone())))
}

/// Number of distinct real roots of `q` on the whole real line.
pub fn count_all_real_roots(q: &DensePoly) -> Result<usize> {
    Ok(SturmChain::new(q)?.count_all())
}

/// Shrinks a radius until `(x - r, x + r)` holds exactly one root (`x`) of the
/// chain's polynomial and `x +- r` are not roots.
fn isolating_radius(chain: &SturmChain, x: &BigRational) -> BigRational {
    let mut r = BigRational::new(1.into(), 1_000_000.into());
    let half = BigRational::new(1.into(), 2.into());
    loop {
        let lo = x - &r;
        let hi = x + &r;
        if !chain.vanishes_at(&lo)
            && !chain.vanishes_at(&hi)
            && chain.count_between(&Bound::At(lo), &Bound::At(hi)) == 1
        {
            return r;
        }
        r *= &half;
    }
}

/// Like [`count_real_roots_in`] but tolerates roots at the endpoints: they
/// are excluded by exact inward nudges sized by Sturm isolation.
pub fn count_real_roots_open(q: &DensePoly, a: &BigRational, b: &BigRational) -> Result<usize> {
    if q.is_zero() {
        return Err(Error::domain("root count of the zero polynomial"));
    }
    if a >= b {
        return Err(Error::domain(format!("empty interval ({a}, {b})")));
    }
    let chain = SturmChain::new(q)?;
    let mut lo = a.clone();
    let mut hi = b.clone();
    if chain.vanishes_at(a) {
        lo = a + isolating_radius(&chain, a);
    }
    if chain.vanishes_at(b) {
        hi = b - isolating_radius(&chain, b);
    }
    if lo >= hi {
        return Ok(0);
    }
    Ok(chain.count_between(&Bound::At(lo), &Bound::At(hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};

    #[test]
    fn interval_examples() {
        let q = DensePoly::from_ints(&[-1, 0, 1]);
        assert_eq!(count_real_roots_in(&q, &int(-2), &int(2)).unwrap(), 2);
        let q = DensePoly::from_ints(&[1, 0, 1]);
        assert_eq!(count_real_roots_in(&q, &int(-2), &int(2)).unwrap(), 0);
        let q = DensePoly::from_ints(&[0, -3, 0, 1]);
        let nudge = ratio(1, 1000);
        let a = int(-2) - &nudge;
        let b = int(2) + &nudge;
        assert_eq!(count_real_roots_in(&q, &a, &b).unwrap(), 3);
        assert_eq!(count_real_roots_in(&q, &int(-2), &int(2)).unwrap(), 3);
    }

    #[test]
    fn endpoint_roots_are_rejected_or_isolated() {
        let q = DensePoly::from_ints(&[-1, 0, 1]);
        let err = count_real_roots_in(&q, &int(-1), &int(3)).unwrap_err();
        assert!(matches!(err, Error::EndpointRoot { .. }));
        assert_eq!(count_real_roots_open(&q, &int(-1), &int(3)).unwrap(), 1);
        assert_eq!(count_real_roots_open(&q, &int(-1), &int(1)).unwrap(), 0);
        assert!(count_real_roots_in(&q, &int(2), &int(1)).is_err());
    }

    #[test]
    fn multiple_roots_count_once() {
        let p = DensePoly::from_roots(&[int(1), int(1), int(3)]);
        assert_eq!(count_all_real_roots(&p).unwrap(), 2);
        let chain = SturmChain::new(&p).unwrap();
        assert_eq!(chain.polys().last().unwrap().degree(), Some(0));
    }

    #[test]
    fn infinite_bounds() {
        let p = DensePoly::from_roots(&[int(-5), ratio(1, 3), int(7)]);
        let chain = SturmChain::new(&p).unwrap();
        assert_eq!(chain.count_between(&Bound::NegInf, &Bound::At(int(0))), 1);
        assert_eq!(chain.count_between(&Bound::At(int(0)), &Bound::PosInf), 2);
        assert_eq!(chain.count_all(), 3);
    }
}
