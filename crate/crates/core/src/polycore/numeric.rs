//! Aberth-Ehrlich simultaneous root finding at configurable precision.
//!
//! Roots are computed per exact squarefree factor, so repeated roots are
//! handled by the exact decomposition rather than by the iteration. Each
//! approximation carries an inclusion radius from the Weierstrass
//! correction: the disks `|z - z_i| <= d |W_i|` cover every root, and when
//! they are pairwise disjoint each holds exactly one.

use num_complex::Complex64;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::{squarefree_decomposition, DensePoly};
use crate::exactnum::BigRational;
use crate::real::{self, digits_to_bits, from_int, from_rational, Real};
use crate::{Error, Result};

/// A root approximation `re + i im` with a radius bound on its error.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericRoot {
    pub re: Real,
    pub im: Real,
    pub radius: Real,
    pub multiplicity: usize,
}

impl NumericRoot {
    pub fn modulus(&self) -> Real {
        (&self.re * &self.re + &self.im * &self.im).sqrt()
    }

    /// `| |z| - r |`.
    pub fn modulus_deviation(&self, r: &Real) -> Real {
        real::abs(&(self.modulus() - r))
    }

    /// The inclusion disk meets the real axis.
    pub fn may_be_real(&self) -> bool {
        real::abs(&self.im) <= self.radius
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(real::to_f64(&self.re), real::to_f64(&self.im))
    }
}

impl Serialize for NumericRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NumericRoot", 4)?;
        st.serialize_field("re", &real::sci(&self.re, 30))?;
        st.serialize_field("im", &real::sci(&self.im, 30))?;
        st.serialize_field("radius", &real::sci(&self.radius, 3))?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.end()
    }
}

#[derive(Clone, Debug)]
struct Cx {
    re: Real,
    im: Real,
}

impl Cx {
    fn new(re: Real, im: Real) -> Self {
        Cx { re, im }
    }
    fn add(&self, o: &Cx) -> Cx {
        Cx::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Cx) -> Cx {
        Cx::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Cx) -> Cx {
        Cx::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }
    fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }
    fn div(&self, o: &Cx) -> Cx {
        let n = o.norm_sqr();
        Cx::new(
            (&self.re * &o.re + &self.im * &o.im) / &n,
            (&self.im * &o.re - &self.re * &o.im) / &n,
        )
    }
    fn is_zero(&self) -> bool {
        self.re == Real::ZERO && self.im == Real::ZERO
    }
}

/// Horner evaluation of `p` and `p'` at `z` for real coefficients.
fn horner(coeffs: &[Real], z: &Cx, zero: &Real) -> (Cx, Cx) {
    let mut p = Cx::new(zero.clone(), zero.clone());
    let mut dp = p.clone();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z);
        p.re = &p.re + c;
    }
    (p, dp)
}

fn log2_abs(x: &BigRational) -> f64 {
    let nb = x.numer().bits() as f64;
    let db = x.denom().bits() as f64;
    nb - db
}

/// Starting points on a circle of radius `|c_0|^{1/d}` (monic input), refined
/// in double precision when the coefficients fit.
fn initial_guesses(f: &DensePoly) -> Vec<Complex64> {
    let d = f.degree().unwrap();
    let rho = (log2_abs(&f.coeff(0)) / d as f64).clamp(-900.0, 900.0).exp2();
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(rho, theta)
        })
        .collect();
    let coeffs: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| real::to_f64(&from_rational(c, 80)))
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return z;
    }
    let start = z.clone();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let (mut p, mut dp) = (Complex64::zero(), Complex64::zero());
            for c in coeffs.iter().rev() {
                dp = dp * z[i] + p;
                p = p * z[i] + c;
            }
            if p == Complex64::zero() || dp == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            max_step = max_step.max(w.norm() / z[i].norm().max(1e-300));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    if z.iter().all(|c| c.is_finite()) {
        z
    } else {
        start
    }
}

struct Attempt {
    roots: Vec<NumericRoot>,
    max_radius: Real,
    certified: bool,
}

fn refine(f: &DensePoly, start: &[Complex64], bits: usize, target: &Real) -> Attempt {
    let d = f.degree().unwrap();
    let coeffs: Vec<Real> = f.coeffs().iter().map(|c| from_rational(c, bits)).collect();
    let zero = from_int(0, bits);
    let one = from_int(1, bits);
    let to_real = |x: f64| {
        Real::try_from(x)
            .map(|r| r.with_precision(bits).value())
            .unwrap_or_else(|_| zero.clone())
    };
    let mut z: Vec<Cx> = start
        .iter()
        .map(|c| Cx::new(to_real(c.re), to_real(c.im)))
        .collect();
    let eps = real::pow2(-(bits as isize) + 16, bits);
    let eps_sq = &eps * &eps;

    for _ in 0..200 {
        let mut converged = true;
        for i in 0..d {
            let (p, dp) = horner(&coeffs, &z[i], &zero);
            if p.is_zero() || dp.is_zero() {
                continue;
            }
            let ratio = p.div(&dp);
            let mut s = Cx::new(zero.clone(), zero.clone());
            for j in 0..d {
                if j != i {
                    let diff = z[i].sub(&z[j]);
                    if diff.is_zero() {
                        continue;
                    }
                    s = s.add(&Cx::new(one.clone(), zero.clone()).div(&diff));
                }
            }
            let denom = Cx::new(one.clone(), zero.clone()).sub(&ratio.mul(&s));
            if denom.is_zero() {
                continue;
            }
            let w = ratio.div(&denom);
            let scale = real::max(z[i].norm_sqr(), one.clone());
            if w.norm_sqr() > &eps_sq * &scale {
                converged = false;
            }
            z[i] = z[i].sub(&w);
        }
        if converged {
            break;
        }
    }

    // Inclusion radii with a rounding allowance for the evaluation.
    let unit = real::pow2(-(bits as isize), bits);
    let slack = &unit * from_int(4 * d as i64 + 8, bits);
    let deg = from_int(d as i64, bits);
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let (p, _) = horner(&coeffs, &z[i], &zero);
        let zabs = z[i].abs();
        let mut magnitude = zero.clone();
        for c in coeffs.iter().rev() {
            magnitude = magnitude * &zabs + real::abs(c);
        }
        let mut prod = Cx::new(one.clone(), zero.clone());
        for j in 0..d {
            if j != i {
                prod = prod.mul(&z[i].sub(&z[j]));
            }
        }
        let num = p.abs() + &slack * magnitude;
        let pa = prod.abs();
        let r = if pa == Real::ZERO {
            from_int(1, bits) / &unit
        } else {
            &deg * num / pa
        };
        radii.push(r + &unit * real::max(zabs, one.clone()));
    }
    let mut disjoint = true;
    'outer: for i in 0..d {
        for j in i + 1..d {
            if z[i].sub(&z[j]).abs() <= &radii[i] + &radii[j] {
                disjoint = false;
                break 'outer;
            }
        }
    }
    let max_radius = radii.iter().cloned().fold(zero.clone(), real::max);
    let certified = disjoint && max_radius < *target;
    let roots = z
        .into_iter()
        .zip(radii)
        .map(|(c, radius)| NumericRoot {
            re: c.re,
            im: c.im,
            radius,
            multiplicity: 1,
        })
        .collect();
    Attempt {
        roots,
        max_radius,
        certified,
    }
}

const MAX_DOUBLINGS: u32 = 10;

/// Roots of a monic squarefree polynomial with radii below `10^-digits`.
fn squarefree_roots(f: &DensePoly, digits: u32, start_digits: u32) -> Result<Vec<NumericRoot>> {
    let d = f.degree().unwrap();
    let mut working = start_digits;
    if d == 1 {
        let bits = digits_to_bits(working) + 64;
        let root = from_rational(&-f.coeff(0), bits);
        let radius = real::abs(&root) * real::pow2(-(bits as isize) + 2, bits);
        return Ok(vec![NumericRoot {
            re: root,
            im: from_int(0, bits),
            radius,
            multiplicity: 1,
        }]);
    }
    let mut start = initial_guesses(f);
    let mut last: Option<Attempt> = None;
    for _ in 0..=MAX_DOUBLINGS {
        let bits = digits_to_bits(working) + 64;
        let target = real::ten_pow_neg(digits, bits);
        let attempt = refine(f, &start, bits, &target);
        if attempt.certified {
            return Ok(attempt.roots);
        }
        start = attempt.roots.iter().map(NumericRoot::to_complex64).collect();
        last = Some(attempt);
        working *= 2;
    }
    let last = last.unwrap();
    Err(Error::NonConvergence {
        working_digits: working / 2,
        achieved_radius: real::sci(&last.max_radius, 3),
        partial: last.roots,
    })
}

/// All `deg p` complex roots of `p` with radii below `10^-precision_digits`.
///
/// Repeated roots appear once per multiplicity. Working precision starts at
/// `max(precision_digits, 30, coefficient digits / 4)` decimal digits and
/// doubles until the inclusion disks are disjoint and small enough.
pub fn numeric_roots(p: &DensePoly, precision_digits: u32) -> Result<Vec<NumericRoot>> {
    match p.degree() {
        None => return Err(Error::domain("numeric roots of the zero polynomial")),
        Some(0) => return Err(Error::domain("numeric roots of a constant polynomial")),
        _ => {}
    }
    if precision_digits == 0 {
        return Err(Error::domain("precision_digits must be positive"));
    }
    let coeff_digits = (p.max_coeff_bits() as f64 * std::f64::consts::LOG10_2) as u32;
    let start_digits = precision_digits.max(30).max(coeff_digits / 4);
    let bits = digits_to_bits(start_digits) + 64;

    let mut out = Vec::new();
    let m0 = p.origin_multiplicity();
    for _ in 0..m0 {
        out.push(NumericRoot {
            re: Real::ZERO.with_precision(bits).value(),
            im: Real::ZERO.with_precision(bits).value(),
            radius: Real::ZERO.with_precision(bits).value(),
            multiplicity: m0,
        });
    }
    let rest = p.shift_down(m0);
    if rest.degree() == Some(0) {
        return Ok(out);
    }
    for (f, mult) in squarefree_decomposition(&rest)? {
        let roots = squarefree_roots(&f, precision_digits, start_digits).map_err(|e| match e {
            Error::NonConvergence {
                working_digits,
                achieved_radius,
                partial,
            } => {
                let mut all = out.clone();
                all.extend(partial);
                Error::NonConvergence {
                    working_digits,
                    achieved_radius,
                    partial: all,
                }
            }
            other => other,
        })?;
        for r in roots {
            for _ in 0..mult {
                out.push(NumericRoot {
                    multiplicity: mult,
                    ..r.clone()
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};

    fn bits() -> usize {
        digits_to_bits(40)
    }

    #[test]
    fn quarter_plus_square() {
        let p = DensePoly::new(vec![ratio(1, 4), int(0), int(1)]);
        let roots = numeric_roots(&p, 30).unwrap();
        assert_eq!(roots.len(), 2);
        let target = real::ten_pow_neg(30, bits());
        let half = from_rational(&ratio(1, 2), bits());
        for r in &roots {
            assert!(r.radius < target);
            assert!(real::abs(&r.re) < target);
            assert!(real::abs(&(real::abs(&r.im) - &half)) < target);
        }
    }

    #[test]
    fn sqrt_two() {
        let roots = numeric_roots(&DensePoly::from_ints(&[-2, 0, 1]), 30).unwrap();
        let target = real::ten_pow_neg(30, bits());
        let s2 = from_int(2, bits()).sqrt();
        for r in &roots {
            assert!(real::abs(&(real::abs(&r.re) - &s2)) < target);
            assert!(r.may_be_real());
        }
    }

    #[test]
    fn repeated_and_zero_roots() {
        let p = &DensePoly::from_roots(&[int(1), int(1), int(-3)]).mul_xpow(2)
            * &DensePoly::from_ints(&[1, 0, 1]);
        let roots = numeric_roots(&p, 30).unwrap();
        assert_eq!(roots.len(), 7);
        assert_eq!(roots.iter().filter(|r| r.multiplicity == 2).count(), 4);
        assert!(numeric_roots(&DensePoly::from_ints(&[3]), 30).is_err());
    }

    #[test]
    fn wilkinson_like_degree_twenty() {
        let roots: Vec<_> = (1..=20).map(int).collect();
        let p = DensePoly::from_roots(&roots);
        let found = numeric_roots(&p, 30).unwrap();
        let target = real::ten_pow_neg(30, bits());
        let mut re: Vec<f64> = found.iter().map(|r| real::to_f64(&r.re)).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (k, x) in re.iter().enumerate() {
            assert!((x - (k + 1) as f64).abs() < 1e-12);
        }
        assert!(found.iter().all(|r| r.radius < target));
    }
}
