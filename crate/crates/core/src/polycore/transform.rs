//! Exact unit-circle root counting for self-inversive polynomials.
//!
//! A real palindromic polynomial `g` of degree `2s` with `g(+-1) != 0`
//! satisfies `g(w) / w^s = q(w + 1/w)` for a polynomial `q` of degree `s`.
//! Each root of `q` in `(-2, 2)` corresponds to a conjugate pair of roots of
//! `g` on the unit circle, each root outside `[-2, 2]` to a reciprocal pair of
//! real roots, and each non-real root of `q` to non-real roots off the circle.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::sturm::{Bound, SturmChain};
use super::{squarefree_decomposition, DensePoly};
use crate::exactnum::{int, BigRational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reciprocity {
    /// `a_i = a_{d-i}`
    Reciprocal,
    /// `a_i = -a_{d-i}`
    AntiReciprocal,
    Neither,
}

pub fn reciprocity(p: &DensePoly) -> Reciprocity {
    let c = p.coeffs();
    if c.is_empty() {
        return Reciprocity::Neither;
    }
    if c.iter().eq(c.iter().rev()) {
        Reciprocity::Reciprocal
    } else if c.iter().zip(c.iter().rev()).all(|(a, b)| *a == -b) {
        Reciprocity::AntiReciprocal
    } else {
        Reciprocity::Neither
    }
}

/// Real reciprocal condition `a_i = a_{deg-i}`.
pub fn is_self_inversive(p: &DensePoly) -> bool {
    reciprocity(p) == Reciprocity::Reciprocal
}

/// `G` with `p(z) = G(z^2)`; `p` must contain only even powers.
pub fn halve_even_poly(p: &DensePoly) -> Result<DensePoly> {
    if p.is_zero() {
        return Err(Error::domain("halving the zero polynomial"));
    }
    if !p.has_only_even_powers() {
        return Err(Error::domain("polynomial has an odd-degree term"));
    }
    Ok(DensePoly::new(p.coeffs().iter().step_by(2).cloned().collect()))
}

/// Result of [`circle_to_interval`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleTransform {
    /// `g` with every factor `(w - 1)` and `(w + 1)` divided out.
    pub reduced: DensePoly,
    /// Half the degree of `reduced`.
    pub half_degree: usize,
    pub plus_one_multiplicity: usize,
    pub minus_one_multiplicity: usize,
    /// `reduced(w) / w^s = q(w + 1/w)`.
    pub q: DensePoly,
}

/// Expresses the palindromic part of a real self-inversive `g` in the
/// variable `t = w + 1/w`.
///
/// Both reciprocal and anti-reciprocal inputs are accepted: an
/// anti-reciprocal polynomial carries an odd power of `(w - 1)`, and after
/// extracting all roots at `w = +-1` the cofactor is reciprocal of even
/// degree in either case.
pub fn circle_to_interval(g: &DensePoly) -> Result<CircleTransform> {
    if g.is_zero() {
        return Err(Error::domain("circle transform of the zero polynomial"));
    }
    if reciprocity(g) == Reciprocity::Neither {
        return Err(Error::domain("circle transform requires a self-inversive polynomial"));
    }
    let (g1, plus) = g.deflate_root(&BigRational::one());
    let (reduced, minus) = g1.deflate_root(&-BigRational::one());
    let d = reduced.degree().unwrap();
    if d % 2 != 0 || reciprocity(&reduced) != Reciprocity::Reciprocal {
        return Err(Error::domain("cofactor is not reciprocal of even degree"));
    }
    let s = d / 2;
    // P_0 = 2, P_1 = t, P_{i+1} = t P_i - P_{i-1}, with P_i(w + 1/w) = w^i + w^-i.
    let t = DensePoly::monomial(BigRational::one(), 1);
    let mut q = DensePoly::constant(reduced.coeff(s));
    let mut prev = DensePoly::constant(int(2));
    let mut cur = t.clone();
    for i in 1..=s {
        q = &q + &cur.scale(&reduced.coeff(s + i));
        let next = &(&t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(CircleTransform {
        reduced,
        half_degree: s,
        plus_one_multiplicity: plus,
        minus_one_multiplicity: minus,
        q,
    })
}

/// Exact partition of the roots of a real self-inversive polynomial, all
/// counts with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleCensus {
    pub degree: usize,
    pub plus_one: usize,
    pub minus_one: usize,
    /// Non-real roots on `|w| = 1` other than `w = -1`.
    pub circle_nonreal: usize,
    /// Some non-real root on the circle is repeated.
    pub circle_nonreal_repeated: bool,
    /// Positive real roots other than 1, counted by Sturm directly on `g`.
    pub real_positive: usize,
    /// Negative real roots other than -1, counted by Sturm directly on `g`.
    pub real_negative: usize,
    /// Real roots off the circle as predicted by the `t`-polynomial.
    pub real_off_circle_via_transform: usize,
    /// Non-real roots off the circle (from the non-real roots of `q`).
    pub off_circle_nonreal: usize,
}

impl CircleCensus {
    /// All real roots, including `w = +-1`.
    pub fn real_count(&self) -> usize {
        self.plus_one + self.minus_one + self.real_positive + self.real_negative
    }

    /// The two independent real-root counts agree and every root is
    /// accounted for exactly once.
    pub fn is_consistent(&self) -> bool {
        self.real_positive + self.real_negative == self.real_off_circle_via_transform
            && self.real_count() + self.circle_nonreal + self.off_circle_nonreal == self.degree
    }
}

/// Sum over squarefree factors of `multiplicity * count(lo, hi)`.
fn count_with_multiplicity(p: &DensePoly, ranges: &[(Bound, Bound)]) -> Result<Vec<(usize, bool)>> {
    let factors = squarefree_decomposition(p)?;
    let mut out = vec![(0usize, false); ranges.len()];
    for (f, m) in &factors {
        let chain = SturmChain::new(f)?;
        for (slot, (lo, hi)) in out.iter_mut().zip(ranges) {
            let c = chain.count_between(lo, hi);
            slot.0 += m * c;
            slot.1 |= *m > 1 && c > 0;
        }
    }
    Ok(out)
}

pub fn circle_census(g: &DensePoly) -> Result<CircleCensus> {
    let tr = circle_to_interval(g)?;
    let degree = g.degree().unwrap();
    if tr.reduced.coeff(0).is_zero() {
        return Err(Error::domain("self-inversive polynomial vanishes at 0"));
    }
    let two = Bound::At(int(2));
    let mtwo = Bound::At(int(-2));
    let q_counts = count_with_multiplicity(
        &tr.q,
        &[
            (mtwo.clone(), two.clone()),
            (Bound::NegInf, mtwo),
            (two, Bound::PosInf),
            (Bound::NegInf, Bound::PosInf),
        ],
    )?;
    let g_counts = count_with_multiplicity(
        &tr.reduced,
        &[
            (Bound::At(BigRational::zero()), Bound::PosInf),
            (Bound::NegInf, Bound::At(BigRational::zero())),
        ],
    )?;
    let q_nonreal = tr.half_degree - q_counts[3].0;
    Ok(CircleCensus {
        degree,
        plus_one: tr.plus_one_multiplicity,
        minus_one: tr.minus_one_multiplicity,
        circle_nonreal: 2 * q_counts[0].0,
        circle_nonreal_repeated: q_counts[0].1,
        real_positive: g_counts[0].0,
        real_negative: g_counts[1].0,
        real_off_circle_via_transform: 2 * (q_counts[1].0 + q_counts[2].0),
        off_circle_nonreal: 2 * q_nonreal,
    })
}
