use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{binomial, BigRational};

/// Append-only table of Bernoulli numbers under the `B_1 = -1/2` convention.
///
/// Reads take a shared lock; extending the table takes the write lock and
/// fills every missing index in order, so concurrent callers always observe
/// the same values.
#[derive(Debug, Default)]
pub struct BernoulliCache {
    values: RwLock<Vec<BigRational>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::new)
    }

    pub fn get(&self, m: usize) -> BigRational {
        if let Some(v) = self.values.read().unwrap().get(m) {
            return v.clone();
        }
        let mut values = self.values.write().unwrap();
        while values.len() <= m {
            let next = next_bernoulli(&values);
            values.push(next);
        }
        values[m].clone()
    }

    pub fn len(&self) -> usize {
        self.values.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Solves `sum_{j=0}^{m} C(m+1, j) B_j = 0` for `B_m` given `B_0 .. B_{m-1}`.
fn next_bernoulli(prev: &[BigRational]) -> BigRational {
    let m = prev.len();
    if m == 0 {
        return BigRational::one();
    }
    if m > 1 && m % 2 == 1 {
        return BigRational::zero();
    }
    let mut acc = BigRational::zero();
    for (j, b) in prev.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        acc += b * BigRational::from_integer(binomial(m as u64 + 1, j as u64));
    }
    -acc / BigRational::from_integer(BigInt::from(m + 1))
}

/// `B_m` with `B_1 = -1/2`, memoized in the process-wide cache.
pub fn bernoulli_number(m: usize) -> BigRational {
    BernoulliCache::global().get(m)
}

/// `B_m(x) = sum_j C(m, j) B_j x^(m-j)`, evaluated exactly.
pub fn bernoulli_polynomial(m: usize, x: &BigRational) -> BigRational {
    // Horner over descending powers of x: coefficient of x^(m-j) is C(m,j) B_j.
    let mut acc = BigRational::zero();
    for j in 0..=m {
        acc = acc * x;
        let b = bernoulli_number(j);
        if !b.is_zero() {
            acc += b * BigRational::from_integer(binomial(m as u64, j as u64));
        }
    }
    acc
}

/// Both sides of the Bernoulli polynomial convolution identity.
///
/// `rhs` uses the factor `(a + b - 1)`, which is the form that holds under
/// `B_n(0) = B_n`. `rhs_printed` evaluates the variant with `(a + b + 1)`
/// for comparison; it disagrees already at `m = 2, a = b = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvolutionCheck {
    pub m: usize,
    #[serde(with = "crate::serde_rational")]
    pub a: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub b: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub lhs: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub rhs: BigRational,
    pub equal: bool,
    #[serde(with = "crate::serde_rational")]
    pub rhs_printed: BigRational,
    pub printed_equal: bool,
}

pub fn convolution_identity_check(
    m: usize,
    a: &BigRational,
    b: &BigRational,
) -> crate::Result<ConvolutionCheck> {
    if m == 0 {
        return Err(crate::Error::domain("convolution identity requires m >= 1"));
    }
    let mut lhs = BigRational::zero();
    for j in 0..=m {
        let c = BigRational::from_integer(binomial(m as u64, j as u64));
        lhs += c * bernoulli_polynomial(j, a) * bernoulli_polynomial(m - j, b);
    }
    let s = a + b;
    let mm = BigRational::from_integer(BigInt::from(m));
    let tail = (&mm - BigRational::one()) * bernoulli_polynomial(m, &s);
    let head = bernoulli_polynomial(m - 1, &s) * &mm;
    let rhs = &head * (&s - BigRational::one()) - &tail;
    let rhs_printed = &head * (&s + BigRational::one()) - &tail;
    Ok(ConvolutionCheck {
        m,
        a: a.clone(),
        b: b.clone(),
        equal: lhs == rhs,
        printed_equal: lhs == rhs_printed,
        lhs,
        rhs,
        rhs_printed,
    })
}
