//! Exact gcd and squarefree machinery via primitive polynomial remainder
//! sequences over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::DensePoly;
use crate::{Error, Result};

/// Integer coefficients with positive content removed, sign preserved.
/// Returns an empty vector for the zero polynomial.
pub(crate) fn to_primitive(p: &DensePoly) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_part(ints)
}

pub(crate) fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of `a` by `b` scaled by a positive power of `|lc(b)|`,
/// so the remainder keeps the sign of the true remainder.
pub(crate) fn positive_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let lcb_abs = lcb.abs();
    let lcb_neg = lcb.is_negative();
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lcb_abs;
        }
        // r <- |lcb| r - sgn(lcb) lc(r) z^shift b
        for (j, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            if lcb_neg {
                r[shift + j] += t;
            } else {
                r[shift + j] -= t;
            }
        }
        debug_assert!(r.last().unwrap().is_zero());
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn int_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    while !b.is_empty() {
        let r = primitive_part(positive_prem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Monic gcd of two polynomials over the rationals.
pub fn poly_gcd(p: &DensePoly, q: &DensePoly) -> Result<DensePoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::domain("gcd of two zero polynomials"));
    }
    let g = int_gcd(to_primitive(p), to_primitive(q));
    Ok(DensePoly::from_int_coeffs(&g).monic())
}

/// True iff `p` has no repeated complex root.
pub fn is_squarefree(p: &DensePoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::domain("squarefree test of the zero polynomial"));
    }
    Ok(poly_gcd(p, &p.derivative())?.degree() == Some(0))
}

/// Monic `p / gcd(p, p')`.
pub fn squarefree_part(p: &DensePoly) -> Result<DensePoly> {
    if p.is_zero() {
        return Err(Error::domain("squarefree part of the zero polynomial"));
    }
    let g = poly_gcd(p, &p.derivative())?;
    Ok(p.exact_div(&g)?.monic())
}

/// Yun's squarefree decomposition: monic, pairwise coprime, squarefree
/// factors `f_i` with `monic(p) = prod f_i^{m_i}`. Constant factors are
/// omitted, so a constant input yields an empty list.
pub fn squarefree_decomposition(p: &DensePoly) -> Result<Vec<(DensePoly, usize)>> {
    if p.is_zero() {
        return Err(Error::domain("squarefree decomposition of the zero polynomial"));
    }
    let f = p.monic();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df)?;
    let mut b = f.exact_div(&a0)?;
    let mut c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree() != Some(0) {
        let a = poly_gcd(&b, &d)?;
        b = b.exact_div(&a)?;
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        if a.degree() != Some(0) {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}
