//! Constructors for the Bernoulli-coefficient polynomial families and the
//! named constants of the circle-location argument.
//!
//! Throughout, `b(j) = B_{2j} / (2j)!`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{bernoulli_number, binomial, big, factorial, ipow, parity_sign, sign, BigRational};
use crate::polycore::{DensePoly, Reciprocity};
use crate::{Error, Result};

/// One member of a polynomial family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum Family {
    /// `R_{2k+1}(z)`
    Classic { k: u32 },
    /// `R_{2k+1,2}(z)` with unscaled powers of `z`
    LalinRogers { k: u32 },
    /// `R_{2k+1,n}(z)`
    RamanujanType { k: u32, n: u64 },
    /// `R^{(ell)}_{2k+1}(Z)`
    Generalized { k: u32, ell: u32 },
}

impl Family {
    pub fn k(&self) -> u32 {
        match *self {
            Family::Classic { k }
            | Family::LalinRogers { k }
            | Family::RamanujanType { k, .. }
            | Family::Generalized { k, .. } => k,
        }
    }

    pub fn n(&self) -> Option<u64> {
        match *self {
            Family::RamanujanType { n, .. } => Some(n),
            _ => None,
        }
    }

    pub fn ell(&self) -> Option<u32> {
        match *self {
            Family::Generalized { ell, .. } => Some(ell),
            _ => None,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Family::Classic { .. } => "classic",
            Family::LalinRogers { .. } => "lalin_rogers",
            Family::RamanujanType { .. } => "ramanujan_type",
            Family::Generalized { .. } => "generalized",
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_k(self.k())?;
        if let Some(n) = self.n() {
            check_n(n)?;
        }
        if self.ell() == Some(0) {
            return Err(Error::domain("ell must be >= 1"));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<DensePoly> {
        match *self {
            Family::Classic { k } => build_classic(k),
            Family::LalinRogers { k } => build_lalin_rogers(k),
            Family::RamanujanType { k, n } => build_ramanujan_type(k, n),
            Family::Generalized { k, ell } => build_generalized(k, ell),
        }
    }
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::domain("k must be >= 1"));
    }
    Ok(())
}

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain("n must be >= 2"));
    }
    Ok(())
}

/// `B_{2j} / (2j)!`
pub fn bernoulli_ratio(j: u64) -> BigRational {
    bernoulli_number(2 * j as usize) / big(factorial(2 * j))
}

/// `n^e - 1` as an exact rational.
fn pm1(n: u64, e: u64) -> BigRational {
    big(ipow(n, e) - 1)
}

/// `R_{2k+1}(z) = sum_{j=0}^{k+1} b(j) b(k+1-j) z^{2k+2-2j}`.
pub fn build_classic(k: u32) -> Result<DensePoly> {
    check_k(k)?;
    let k = k as u64;
    let mut coeffs = vec![BigRational::zero(); 2 * k as usize + 3];
    for j in 0..=k + 1 {
        coeffs[(2 * k + 2 - 2 * j) as usize] = bernoulli_ratio(j) * bernoulli_ratio(k + 1 - j);
    }
    Ok(DensePoly::new(coeffs))
}

/// The `j`-th summand coefficient `(n^{2j}-1)(n^{2k+2-2j}-1) b(j) b(k+1-j)`.
fn ramanujan_type_weight(k: u64, n: u64, j: u64) -> BigRational {
    pm1(n, 2 * j) * pm1(n, 2 * k + 2 - 2 * j) * bernoulli_ratio(j) * bernoulli_ratio(k + 1 - j)
}

/// `R_{2k+1,n}(z) = sum_{j=1}^{k} (n^{2j}-1)(n^{2k+2-2j}-1) b(j) b(k+1-j) (nz)^{2k+2-2j}`.
pub fn build_ramanujan_type(k: u32, n: u64) -> Result<DensePoly> {
    check_k(k)?;
    check_n(n)?;
    let k = k as u64;
    let mut coeffs = vec![BigRational::zero(); 2 * k as usize + 1];
    for j in 1..=k {
        let e = 2 * k + 2 - 2 * j;
        coeffs[e as usize] = ramanujan_type_weight(k, n, j) * big(ipow(n, e));
    }
    Ok(DensePoly::new(coeffs))
}

/// The Lalin-Rogers polynomial: the `n = 2` weights on plain powers of `z`.
pub fn build_lalin_rogers(k: u32) -> Result<DensePoly> {
    check_k(k)?;
    let k = k as u64;
    let mut coeffs = vec![BigRational::zero(); 2 * k as usize + 1];
    for j in 1..=k {
        coeffs[(2 * k + 2 - 2 * j) as usize] = ramanujan_type_weight(k, 2, j);
    }
    Ok(DensePoly::new(coeffs))
}

/// Coefficients `A_j`, `j = 0..k-1`, of `H(z) = sum_j A_j z^{2k-2-2j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub k: u32,
    pub n: u64,
    #[serde(with = "crate::serde_rational::vec")]
    pub a: Vec<BigRational>,
    /// Expected common sign `(-1)^{k+1}`.
    pub sign: i8,
}

impl CoeffTable {
    /// `A_j = A_{k-1-j}` for every `j`.
    pub fn is_reciprocal(&self) -> bool {
        self.a.iter().eq(self.a.iter().rev())
    }

    /// Every `A_j` carries the sign `(-1)^{k+1}`.
    pub fn sign_pattern_ok(&self) -> bool {
        self.a.iter().all(|x| sign(x) == self.sign)
    }

    /// `A_{k-1}`, the leading coefficient of `G(w) = H(sqrt w)`.
    pub fn last(&self) -> &BigRational {
        self.a.last().expect("coefficient table is never empty")
    }

    pub fn sum(&self) -> BigRational {
        self.a.iter().fold(BigRational::zero(), |acc, x| acc + x)
    }
}

/// `A_j = (n^{2j+2}-1)(n^{2k-2j}-1) b(j+1) b(k-j)`.
pub fn coefficient_a(k: u32, n: u64, j: u32) -> Result<BigRational> {
    check_k(k)?;
    check_n(n)?;
    if j >= k {
        return Err(Error::domain("coefficient index j must be < k"));
    }
    Ok(ramanujan_type_weight(k as u64, n, j as u64 + 1))
}

/// `H(z)` with `R_{2k+1,n}(z/n) = z^2 H(z)`, and its coefficient table.
pub fn build_h(k: u32, n: u64) -> Result<(DensePoly, CoeffTable)> {
    check_k(k)?;
    check_n(n)?;
    let a: Vec<BigRational> = (0..k).map(|j| coefficient_a(k, n, j)).collect::<Result<_>>()?;
    let deg = 2 * k as usize - 2;
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (j, aj) in a.iter().enumerate() {
        coeffs[deg - 2 * j] = aj.clone();
    }
    let table = CoeffTable {
        k,
        n,
        a,
        sign: parity_sign(k as u64 + 1),
    };
    Ok((DensePoly::new(coeffs), table))
}

/// `R^{(ell)}(Z) = sum_{j=0}^{k+1} (-1)^{(ell+1)j} (b(j) b(k+1-j))^ell Z^j`.
pub fn build_generalized(k: u32, ell: u32) -> Result<DensePoly> {
    check_k(k)?;
    if ell == 0 {
        return Err(Error::domain("ell must be >= 1"));
    }
    let k = k as u64;
    let coeffs = (0..=k + 1)
        .map(|j| {
            let base = bernoulli_ratio(j) * bernoulli_ratio(k + 1 - j);
            let c = num_traits::pow(base, ell as usize);
            if parity_sign((ell as u64 + 1) * j) < 0 {
                -c
            } else {
                c
            }
        })
        .collect();
    Ok(DensePoly::new(coeffs))
}

/// Reciprocity of `R^{(ell)}` predicted from the sign factor alone: the ratio
/// of the coefficients of `Z^j` and `Z^{k+1-j}` is `(-1)^{(ell+1)(k+1)}`.
pub fn generalized_reciprocity(k: u32, ell: u32) -> Reciprocity {
    if parity_sign((ell as u64 + 1) * (k as u64 + 1)) > 0 {
        Reciprocity::Reciprocal
    } else {
        Reciprocity::AntiReciprocal
    }
}

/// Value of `f_n(x)`: exact on integers, otherwise a rational enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FnValue {
    Exact(BigRational),
    Enclosure { lo: BigRational, hi: BigRational },
}

/// Enclosure of `n^{a/q}` for `a >= 0`, `q >= 1`, of width `2^-bits` relative scale.
fn rational_power_enclosure(n: u64, a: &BigInt, q: &BigInt, bits: u64) -> (BigRational, BigRational) {
    let exp: u32 = a.try_into().expect("exponent fits in u32");
    let root: u32 = q.try_into().expect("root index fits in u32");
    let scale = BigInt::one() << (bits as usize * root as usize);
    let value = num_traits::pow(BigInt::from(n), exp as usize) * scale;
    let r = value.nth_root(root);
    let den = BigInt::one() << bits as usize;
    (
        BigRational::new(r.clone(), den.clone()),
        BigRational::new(r + 1, den),
    )
}

/// `f_n(x) = (n^{x+2} - 1)(n^{2k-x} - 1)` for `0 <= x <= 2k - 2`.
pub fn f_n_eval(k: u32, n: u64, x: &BigRational) -> Result<FnValue> {
    check_k(k)?;
    check_n(n)?;
    let top = big(BigInt::from(2 * k as i64 - 2));
    if *x < BigRational::zero() || *x > top {
        return Err(Error::domain(format!("x = {x} outside [0, {top}]")));
    }
    if x.is_integer() {
        let xi: u64 = x.to_integer().try_into().unwrap();
        return Ok(FnValue::Exact(f_n_int(k, n, xi)));
    }
    let q = x.denom().clone();
    let e1 = x.numer() + &q * 2;
    let e2 = &q * (2 * k as i64) - x.numer();
    let (lo1, hi1) = rational_power_enclosure(n, &e1, &q, 96);
    let (lo2, hi2) = rational_power_enclosure(n, &e2, &q, 96);
    let one = BigRational::one();
    Ok(FnValue::Enclosure {
        lo: (lo1 - &one) * (lo2 - &one),
        hi: (hi1 - &one) * (hi2 - &one),
    })
}

/// `f_n(x)` at an integer grid point.
pub fn f_n_int(k: u32, n: u64, x: u64) -> BigRational {
    pm1(n, x + 2) * pm1(n, 2 * k as u64 - x)
}

/// `g_n(x) = f_n(x) / f_2(x)` at an integer grid point.
pub fn g_n_int(k: u32, n: u64, x: u64) -> BigRational {
    f_n_int(k, n, x) / f_n_int(k, 2, x)
}

/// `(n^{k+1} - 1)^2 / (3 (2^{2k} - 1))`.
pub fn g_n_bound(k: u32, n: u64) -> Result<BigRational> {
    check_k(k)?;
    check_n(n)?;
    let k = k as u64;
    let top = pm1(n, k + 1);
    Ok(&top * &top / (pm1(2, 2 * k) * big(3)))
}

/// The positive constant `c_{n,k}` bounding the admissible Schinzel parameter.
pub fn c_constant(k: u32, n: u64) -> Result<BigRational> {
    check_k(k)?;
    check_n(n)?;
    let k = k as u64;
    let top = pm1(n, k + 1);
    let num = big(k + 1) * pm1(n, 2 * k) * pm1(n, 2) * pm1(2, 2 * k) * big(3) * pm1(2, 2 * k + 1);
    let den = big(ipow(2, 2 * k)) * big(2 * k + 1) * &top * &top * pm1(2, 2 * k + 2);
    Ok(num / den)
}

/// `D(j) = 2^{2k} c / (2k+2)! * g_n(2j)`, with `c` a free positive parameter.
pub fn d_j(k: u32, n: u64, j: u32, c: &BigRational) -> Result<BigRational> {
    check_k(k)?;
    check_n(n)?;
    if j >= k {
        return Err(Error::domain("D(j) requires j < k"));
    }
    let k64 = k as u64;
    Ok(big(ipow(2, 2 * k64)) * c / big(factorial(2 * k64 + 2)) * g_n_int(k, n, 2 * j as u64))
}

/// `D(j)` in its unsimplified form
/// `c / (4 (2k+2)!) (n^{2j+2}-1)(n^{2k-2j}-1) / ((2^{-2j-2}-1)(2^{-2k+2j}-1))`.
pub fn d_j_unsimplified(k: u32, n: u64, j: u32, c: &BigRational) -> Result<BigRational> {
    check_k(k)?;
    check_n(n)?;
    if j >= k {
        return Err(Error::domain("D(j) requires j < k"));
    }
    let (k, j) = (k as u64, j as u64);
    let inv_pow2 = |e: u64| BigRational::new(BigInt::one(), ipow(2, e)) - BigRational::one();
    Ok(c / (big(4) * big(factorial(2 * k + 2))) * pm1(n, 2 * j + 2) * pm1(n, 2 * k - 2 * j)
        / (inv_pow2(2 * j + 2) * inv_pow2(2 * k - 2 * j)))
}

/// `A_j` rewritten through Bernoulli polynomial half-values:
/// `C(2k+2, 2j+2) (n^{2j+2}-1)(n^{2k-2j}-1)/(2k+2)! * prod (B_m(1/2) - B_m(0)) / (2 (2^{-m} - 1))`.
pub fn coefficient_a_via_half_values(k: u32, n: u64, j: u32) -> Result<BigRational> {
    use crate::exactnum::bernoulli_polynomial;
    check_k(k)?;
    check_n(n)?;
    let (k, j) = (k as u64, j as u64);
    let half = BigRational::new(1.into(), 2.into());
    let factor = |m: u64| {
        let diff = bernoulli_polynomial(m as usize, &half) - bernoulli_polynomial(m as usize, &BigRational::zero());
        diff / (big(2) * (BigRational::new(BigInt::one(), ipow(2, m)) - BigRational::one()))
    };
    Ok(big(binomial(2 * k + 2, 2 * j + 2)) * pm1(n, 2 * j + 2) * pm1(n, 2 * k - 2 * j)
        / big(factorial(2 * k + 2))
        * factor(2 * j + 2)
        * factor(2 * k - 2 * j))
}
