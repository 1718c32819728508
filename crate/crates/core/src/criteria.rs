//! Coefficient criteria for unit-circle zeros and the exact inequality
//! transcript of the circle-location argument for `H`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{bernoulli_number, bernoulli_polynomial, big, binomial, factorial, ipow, parity_sign, BigRational};
use crate::polycore::{reciprocity, DensePoly, Reciprocity};
use crate::ramfam::{build_h, c_constant, d_j, f_n_int, g_n_bound, g_n_int, CoeffTable};
use crate::{Error, Result};

fn sum<'a>(it: impl Iterator<Item = BigRational>) -> BigRational {
    it.fold(BigRational::zero(), |acc, x| acc + x)
}

/// Lakatos: `|a_d| >= sum_i |a_i - a_d|` for a real self-inversive `p`.
/// Returns `(holds, strict)`.
pub fn lakatos_check(p: &DensePoly) -> Result<(bool, bool)> {
    if p.is_zero() {
        return Err(Error::domain("Lakatos check of the zero polynomial"));
    }
    if reciprocity(p) != Reciprocity::Reciprocal {
        return Err(Error::domain("Lakatos check needs a self-inversive polynomial"));
    }
    let lead = p.leading().unwrap();
    let s = sum(p.coeffs().iter().map(|a| (a - lead).abs()));
    let bound = lead.abs();
    Ok((s <= bound, s < bound))
}

/// `F(c) = sum_j |c a_j - a_last|`.
pub fn schinzel_objective(a: &[BigRational], c: &BigRational) -> BigRational {
    let last = a.last().cloned().unwrap_or_default();
    sum(a.iter().map(|aj| (c * aj - &last).abs()))
}

/// Exact minimum of the convex piecewise-linear `F(c)` over real `c`, with
/// the smallest minimizer.
pub fn schinzel_min_over_values(a: &[BigRational]) -> Result<(BigRational, BigRational)> {
    if a.is_empty() {
        return Err(Error::domain("empty coefficient table"));
    }
    if a.iter().any(Zero::is_zero) {
        return Err(Error::domain("coefficient table contains a zero"));
    }
    let last = a.last().unwrap();
    let mut breaks: Vec<BigRational> = a.iter().map(|aj| last / aj).collect();
    breaks.sort();
    breaks.dedup();
    let mut best: Option<(BigRational, BigRational)> = None;
    for c in breaks {
        let f = schinzel_objective(a, &c);
        if best.as_ref().map_or(true, |(m, _)| f < *m) {
            best = Some((f, c));
        }
    }
    Ok(best.unwrap())
}

pub fn schinzel_min_over_c(table: &CoeffTable) -> Result<(BigRational, BigRational)> {
    schinzel_min_over_values(&table.a)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub k: u32,
    pub n: u64,
    /// Lakatos applied to `G(w) = sum_j A_j w^{k-1-j}`.
    pub lakatos_holds: bool,
    pub lakatos_strict: bool,
    #[serde(with = "crate::serde_rational")]
    pub schinzel_min: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub schinzel_argmin_c: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub schinzel_bound: BigRational,
    pub schinzel_holds: bool,
    pub schinzel_strict: bool,
    #[serde(with = "crate::serde_rational")]
    pub c_constant_value: BigRational,
    /// The inequality transcript evaluated at `c = c_{n,k}`.
    pub chain_checks: ChainChecks,
}

/// `G(w)` built from a coefficient table.
pub fn table_polynomial(table: &CoeffTable) -> DensePoly {
    DensePoly::new(table.a.iter().rev().cloned().collect())
}

pub fn schinzel_criterion_check(table: &CoeffTable) -> Result<CriterionReport> {
    let (min, argmin) = schinzel_min_over_c(table)?;
    let bound = table.last().abs();
    let (lakatos_holds, lakatos_strict) = lakatos_check(&table_polynomial(table))?;
    let c = c_constant(table.k, table.n)?;
    let chain_checks = inequality_chain_check(table.k, table.n, &c)?;
    Ok(CriterionReport {
        k: table.k,
        n: table.n,
        lakatos_holds,
        lakatos_strict,
        schinzel_holds: min <= bound,
        schinzel_strict: min < bound,
        schinzel_min: min,
        schinzel_argmin_c: argmin,
        schinzel_bound: bound,
        c_constant_value: c,
        chain_checks,
    })
}

/// Convenience wrapper building the table for `(k, n)`.
pub fn criteria_for(k: u32, n: u64) -> Result<CriterionReport> {
    let (_, table) = build_h(k, n)?;
    schinzel_criterion_check(&table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSumIdentity {
    pub k: u32,
    /// Sum of absolute values of the products of half-argument differences.
    #[serde(with = "crate::serde_rational")]
    pub lhs: BigRational,
    /// `(-1)^{k-1}` times the expanded signed sum.
    #[serde(with = "crate::serde_rational")]
    pub middle: BigRational,
    /// `(-1)^k 4 (2k+1)(1 - 2^{-2k-2}) B_{2k+2}`.
    #[serde(with = "crate::serde_rational")]
    pub rhs: BigRational,
    /// `lhs == |rhs|`
    pub equal: bool,
    /// `lhs == middle == rhs`, signs included.
    pub signed_equal: bool,
}

pub fn half_sum_identity_check(k: u32) -> Result<HalfSumIdentity> {
    if k == 0 {
        return Err(Error::domain("k must be >= 1"));
    }
    let k64 = k as u64;
    let half = BigRational::new(1.into(), 2.into());
    let zero = BigRational::zero();
    let bh = |m: u64| bernoulli_polynomial(m as usize, &half);
    let b0 = |m: u64| bernoulli_polynomial(m as usize, &zero);
    let mut lhs = BigRational::zero();
    let mut expanded = BigRational::zero();
    for j in 0..k64 {
        let (p, q) = (2 * j + 2, 2 * k64 - 2 * j);
        let w = big(binomial(2 * k64 + 2, p));
        lhs += &w * ((bh(p) - b0(p)) * (bh(q) - b0(q))).abs();
        expanded += &w * (bh(p) * bh(q) - bh(p) * b0(q) - b0(p) * bh(q) + b0(p) * b0(q));
    }
    let middle = if parity_sign(k64 - 1) < 0 { -expanded } else { expanded };
    let tail = BigRational::one() - BigRational::new(1.into(), ipow(2, 2 * k64 + 2));
    let mut rhs = big(4 * (2 * k64 + 1)) * tail * bernoulli_number(2 * k as usize + 2);
    if parity_sign(k64) < 0 {
        rhs = -rhs;
    }
    Ok(HalfSumIdentity {
        k,
        equal: lhs == rhs.abs(),
        signed_equal: lhs == middle && middle == rhs,
        lhs,
        middle,
        rhs,
    })
}

/// One exact comparison `lhs <op> rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    #[serde(with = "crate::serde_rational")]
    pub lhs: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub rhs: BigRational,
    /// Strict `lhs < rhs`.
    pub holds: bool,
    pub equal: bool,
}

impl Link {
    fn less(lhs: BigRational, rhs: BigRational) -> Self {
        let holds = lhs < rhs;
        let equal = lhs == rhs;
        Link { lhs, rhs, holds, equal }
    }

    pub fn holds_weak(&self) -> bool {
        self.holds || self.equal
    }
}

/// Each step of the coefficient inequality argument, evaluated exactly at a
/// given `c`. Diagnostic only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainChecks {
    #[serde(with = "crate::serde_rational")]
    pub c: BigRational,
    /// `D(j) < 2^{2k} c / (2k+2)! * g_bound` for every `j`.
    pub d_j_bound: bool,
    /// The same with `<=`; at `k = 1` the bound is attained.
    pub d_j_bound_weak: bool,
    /// (a) `sum c|A_j|` against its closed-form upper bound.
    pub upper_bound: Link,
    /// (b) `sum c|A_j| < (1+k)|A_{k-1}|`.
    pub dominance: Link,
    /// (c) `c < c_{n,k}`.
    pub below_constant: Link,
    /// `c` against the exact admissible threshold derived from (b).
    pub below_threshold: Link,
    /// `c_{n,k}` below that same threshold.
    pub constant_below_threshold: Link,
    /// `c|A_j| - |A_{k-1}| > 0` for every `j`.
    pub sign_step: bool,
    /// `sum |c A_j - A_{k-1}| < |A_{k-1}|` at this `c`.
    pub criterion_at_c: Link,
}

pub fn inequality_chain_check(k: u32, n: u64, c: &BigRational) -> Result<ChainChecks> {
    if !c.is_positive() {
        return Err(Error::domain("c must be positive"));
    }
    let (_, table) = build_h(k, n)?;
    let k64 = k as u64;
    let abs_a: Vec<BigRational> = table.a.iter().map(|x| x.abs()).collect();
    let last = abs_a.last().unwrap().clone();
    let sum_c_abs = c * sum(abs_a.iter().cloned());
    let fact = big(factorial(2 * k64 + 2));
    let gb = g_n_bound(k, n)?;
    let pow4k = big(ipow(2, 2 * k64));
    let d_bound = &pow4k * c / &fact * &gb;
    let (mut d_j_bound, mut d_j_bound_weak) = (true, true);
    for j in 0..k {
        let d = d_j(k, n, j, c)?;
        d_j_bound &= d < d_bound;
        d_j_bound_weak &= d <= d_bound;
    }
    let b_abs = bernoulli_number(2 * k as usize + 2).abs();
    let tail = BigRational::one() - BigRational::new(1.into(), ipow(2, 2 * k64 + 2));
    let upper = big(ipow(2, 2 * k64 + 2)) * c / &fact * &gb * big(2 * k64 + 1) * tail * &b_abs;
    let top = big(ipow(n, k64 + 1) - 1);
    let threshold = big(3 * (1 + k64)) * big(ipow(2, 2 * k64) - 1) * &fact * &last
        / (big(2 * k64 + 1) * &top * &top * big(ipow(2, 2 * k64 + 2) - 1) * &b_abs);
    let cnk = c_constant(k, n)?;
    Ok(ChainChecks {
        c: c.clone(),
        d_j_bound,
        d_j_bound_weak,
        upper_bound: Link::less(sum_c_abs.clone(), upper),
        dominance: Link::less(sum_c_abs, big(1 + k64) * &last),
        below_constant: Link::less(c.clone(), cnk.clone()),
        below_threshold: Link::less(c.clone(), threshold.clone()),
        constant_below_threshold: Link::less(cnk, threshold),
        sign_step: abs_a.iter().all(|a| c * a > last),
        criterion_at_c: Link::less(schinzel_objective(&table.a, c), last.clone()),
    })
}

/// Integer-grid checks of the extremal behaviour of `f_n` and the bound on `g_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridLemmaCheck {
    pub k: u32,
    pub n: u64,
    /// `f_n(k-1) = (n^{k+1}-1)^2` is the maximum over `0..=2k-2`.
    pub f_max_at_center: bool,
    /// The minimum is `(n^2-1)(n^{2k}-1)`, attained at both endpoints.
    pub f_min_at_endpoints: bool,
    /// `g_n(2j) <= g_n_bound` for every `j` in `0..k`.
    pub g_bound_holds: bool,
}

impl GridLemmaCheck {
    pub fn holds(&self) -> bool {
        self.f_max_at_center && self.f_min_at_endpoints && self.g_bound_holds
    }
}

pub fn grid_lemma_check(k: u32, n: u64) -> Result<GridLemmaCheck> {
    let bound = g_n_bound(k, n)?;
    let k64 = k as u64;
    let values: Vec<BigRational> = (0..=2 * k64 - 2).map(|x| f_n_int(k, n, x)).collect();
    let max = values.iter().max().unwrap();
    let min = values.iter().min().unwrap();
    let top = big(ipow(n, k64 + 1) - 1);
    let low = big((ipow(n, 2) - 1) * (ipow(n, 2 * k64) - 1));
    let center = &values[(k64 - 1) as usize];
    Ok(GridLemmaCheck {
        k,
        n,
        f_max_at_center: center == max && *center == &top * &top,
        f_min_at_endpoints: *min == low && values[0] == low && *values.last().unwrap() == low,
        g_bound_holds: (0..k64).all(|j| g_n_int(k, n, 2 * j) <= bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};

    #[test]
    fn lakatos_examples() {
        assert_eq!(lakatos_check(&DensePoly::from_ints(&[1, 1, 1])).unwrap(), (true, true));
        assert_eq!(lakatos_check(&DensePoly::from_ints(&[1, 5, 1])).unwrap(), (false, false));
        let p = DensePoly::new(vec![ratio(1, 1920), ratio(1, 2304), ratio(1, 1920)]);
        assert_eq!(lakatos_check(&p).unwrap(), (true, true));
        assert!(lakatos_check(&DensePoly::from_ints(&[1, 2])).is_err());
    }

    #[test]
    fn schinzel_examples() {
        let a = [ratio(1, 1920), ratio(1, 2304), ratio(1, 1920)];
        assert_eq!(schinzel_min_over_values(&a).unwrap(), (ratio(1, 11520), int(1)));
        assert_eq!(schinzel_objective(&a, &ratio(6, 5)), ratio(1, 4800));
        let a = [ratio(-1, 192), ratio(-1, 192)];
        assert_eq!(schinzel_min_over_values(&a).unwrap(), (int(0), int(1)));
        assert!(schinzel_min_over_values(&[int(1), int(0)]).is_err());
        let r = criteria_for(3, 2).unwrap();
        assert!(r.schinzel_holds && r.schinzel_strict && r.lakatos_holds);
        let r = criteria_for(1, 7).unwrap();
        assert_eq!(r.schinzel_min, int(0));
        assert!(r.schinzel_strict);
    }

    #[test]
    fn identity_examples() {
        let r = half_sum_identity_check(1).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (ratio(3, 8), ratio(3, 8)));
        assert!(r.equal && r.signed_equal);
        for k in [2, 3, 10, 50] {
            let r = half_sum_identity_check(k).unwrap();
            assert!(r.equal && r.signed_equal, "k={k}");
        }
    }

    #[test]
    fn chain_examples() {
        let c = ratio(4185, 10976);
        let r = inequality_chain_check(2, 2, &c).unwrap();
        assert!(r.below_constant.holds);
        let r = inequality_chain_check(3, 2, &int(1)).unwrap();
        assert_eq!(r.dominance.rhs, ratio(1, 480));
        assert_eq!(r.dominance.lhs, ratio(1, 1920) + ratio(1, 2304) + ratio(1, 1920));
        assert!(r.dominance.holds);
        for k in 1..=6 {
            let r = inequality_chain_check(k, 3, &ratio(1, 1_000_000)).unwrap();
            assert!(r.dominance.holds, "k={k}");
            assert!(r.d_j_bound_weak && r.upper_bound.holds_weak(), "k={k}");
            assert_eq!(r.d_j_bound, k > 1, "k={k}");
            assert_eq!(r.upper_bound.holds, k > 1, "k={k}");
        }
        assert!(inequality_chain_check(2, 2, &int(0)).is_err());
    }

    #[test]
    fn grid_lemmas_small() {
        for k in 1..=8 {
            for n in 2..=5 {
                assert!(grid_lemma_check(k, n).unwrap().holds(), "k={k} n={n}");
            }
        }
    }
}
