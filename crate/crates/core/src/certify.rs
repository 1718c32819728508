//! Exact zero-location certificates for the polynomial families, plus a
//! numeric probe for `R^{(ell)}`.
//!
//! Verdicts are decided by rational arithmetic only. Numeric roots are
//! attached as a cross-check and never change a verdict.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::criteria::{criteria_for, CriterionReport};
use crate::exactnum::{int, BigRational};
use crate::polycore::{
    circle_census, count_all_real_roots, halve_even_poly, is_self_inversive, is_squarefree, numeric_roots,
    reciprocity, squarefree_decomposition, CircleCensus, DensePoly, NumericRoot, Reciprocity,
};
use crate::ramfam::{build_classic, build_generalized, build_h, build_ramanujan_type, Family};
use crate::real::{self, digits_to_bits, from_int, Real};
use crate::{Error, Result};

/// Proof stage at which a certificate failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Factorization,
    OriginMultiplicity,
    Reciprocity,
    SignPattern,
    EndpointValues,
    Squarefree,
    SelfInversive,
    Census,
    RealRoots,
    CircleCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    TheoremHolds,
    VacuouslyTrue,
    Failed { stage: Stage, witness: String },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Failed { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::TheoremHolds => "theorem_holds",
            Verdict::VacuouslyTrue => "vacuously_true",
            Verdict::Failed { .. } => "failed",
        }
    }
}

/// Numeric roots compared with a target modulus.
#[derive(Debug, Clone, Serialize)]
pub struct NumericCrosscheck {
    pub precision_digits: u32,
    /// Modulus the non-real roots are compared to, as an exact rational.
    #[serde(with = "crate::serde_rational")]
    pub target_modulus: BigRational,
    /// Largest `| |z| - target |` over roots classified non-real.
    pub max_modulus_deviation: String,
    pub max_radius: String,
    /// Numeric real/non-real classification matches the exact counts.
    pub classification_matches: bool,
    /// Every non-real root is within `10^-20` of the target modulus.
    pub consistent: bool,
    /// Set when the root finder exhausted its precision ladder.
    pub error: Option<String>,
    pub roots: Vec<NumericRoot>,
}

impl NumericCrosscheck {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.consistent && self.classification_matches
    }
}

const CROSSCHECK_TOLERANCE_DIGITS: u32 = 20;

fn crosscheck(p: &DensePoly, digits: u32, target: &BigRational, exact_real: usize) -> NumericCrosscheck {
    let bits = digits_to_bits(digits.max(30)) + 64;
    let target_r = real::from_rational(target, bits);
    let tol = real::ten_pow_neg(CROSSCHECK_TOLERANCE_DIGITS, bits);
    let (roots, error) = if p.degree().unwrap_or(0) == 0 {
        (Vec::new(), None)
    } else {
        match numeric_roots(p, digits) {
            Ok(r) => (r, None),
            Err(Error::NonConvergence { partial, working_digits, achieved_radius }) => (
                partial,
                Some(format!("no convergence at {working_digits} digits, radius {achieved_radius}")),
            ),
            Err(e) => (Vec::new(), Some(e.to_string())),
        }
    };
    let mut max_dev = Real::ZERO.with_precision(bits).value();
    let mut max_rad = Real::ZERO.with_precision(bits).value();
    let mut numeric_real = 0;
    for r in &roots {
        max_rad = real::max(max_rad, r.radius.clone());
        if r.may_be_real() {
            numeric_real += 1;
        } else {
            max_dev = real::max(max_dev, r.modulus_deviation(&target_r));
        }
    }
    NumericCrosscheck {
        precision_digits: digits,
        target_modulus: target.clone(),
        max_modulus_deviation: real::sci(&max_dev, 3),
        max_radius: real::sci(&max_rad, 3),
        classification_matches: error.is_none() && numeric_real == exact_real,
        consistent: error.is_none() && max_dev < tol,
        error,
        roots,
    }
}

/// Options for [`certify_ramanujan_type_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CertifyOptions {
    /// Attach numeric roots of `H` at this many digits.
    pub numeric_digits: Option<u32>,
    /// Attach the coefficient-criteria report.
    pub criteria: bool,
}

/// Zero-location certificate for `R_{2k+1,n}`, with counts on `H`.
///
/// Root counts are for `H` (degree `2k-2`), whose roots are `n` times the
/// non-zero roots of `R_{2k+1,n}`. `circle_count` counts non-real roots on
/// `|z| = 1`; `real_count` counts every real root including `z = +-1`.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub family: Family,
    pub degree: usize,
    pub origin_multiplicity: usize,
    pub reciprocal: bool,
    pub sign_pattern_ok: bool,
    pub squarefree_h: bool,
    #[serde(with = "crate::serde_rational")]
    pub h_at_1: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub h_at_minus1: BigRational,
    /// `sign H(1) = (-1)^{k+1}`.
    pub h_sign_law: bool,
    pub circle_count: usize,
    pub real_count: usize,
    pub off_circle_nonreal_count: usize,
    /// Exact census of `G(w) = H(sqrt w)`; absent when `H` is constant.
    pub census: Option<CircleCensus>,
    pub verdict: Verdict,
    pub numeric_crosscheck: Option<NumericCrosscheck>,
    pub criteria: Option<CriterionReport>,
}

/// Root counts in `z` for `p(z) = G(z^2)` from the census of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lifted {
    circle: usize,
    real: usize,
    off_circle_nonreal: usize,
}

fn lift_census(c: &CircleCensus) -> Lifted {
    Lifted {
        circle: 2 * (c.circle_nonreal + c.minus_one),
        real: 2 * (c.real_positive + c.plus_one),
        off_circle_nonreal: 2 * (c.real_negative + c.off_circle_nonreal),
    }
}

pub fn certify_ramanujan_type(k: u32, n: u64) -> Result<Certificate> {
    certify_ramanujan_type_with(k, n, CertifyOptions::default())
}

pub fn certify_ramanujan_type_with(k: u32, n: u64, opts: CertifyOptions) -> Result<Certificate> {
    let r = build_ramanujan_type(k, n)?;
    let (h, table) = build_h(k, n)?;
    let h_at_1 = h.eval(&BigRational::one());
    let h_at_minus1 = h.eval(&-BigRational::one());
    let mut cert = Certificate {
        family: Family::RamanujanType { k, n },
        degree: r.degree().unwrap(),
        origin_multiplicity: r.origin_multiplicity(),
        reciprocal: table.is_reciprocal(),
        sign_pattern_ok: table.sign_pattern_ok(),
        squarefree_h: is_squarefree(&h)?,
        h_sign_law: crate::exactnum::sign(&h_at_1) == table.sign,
        h_at_1,
        h_at_minus1,
        circle_count: 0,
        real_count: 0,
        off_circle_nonreal_count: 0,
        census: None,
        verdict: Verdict::TheoremHolds,
        numeric_crosscheck: None,
        criteria: None,
    };
    if opts.criteria {
        cert.criteria = Some(criteria_for(k, n)?);
    }
    let fail = |stage: Stage, witness: String| Verdict::Failed { stage, witness };

    let scaled = r.compose_scale(&BigRational::new(1.into(), n.into()));
    cert.verdict = if scaled != h.mul_xpow(2) {
        fail(Stage::Factorization, format!("R(z/n) = {scaled} but z^2 H(z) = {}", h.mul_xpow(2)))
    } else if cert.origin_multiplicity != 2 {
        fail(Stage::OriginMultiplicity, format!("z = 0 has multiplicity {}", cert.origin_multiplicity))
    } else if !cert.reciprocal {
        fail(Stage::Reciprocity, format!("A = {:?}", table.a.iter().map(ToString::to_string).collect::<Vec<_>>()))
    } else if !cert.sign_pattern_ok {
        fail(Stage::SignPattern, format!("expected sign {} for every A_j", table.sign))
    } else if cert.h_at_1.is_zero() || cert.h_at_minus1.is_zero() {
        fail(Stage::EndpointValues, format!("H(1) = {}, H(-1) = {}", cert.h_at_1, cert.h_at_minus1))
    } else if !cert.squarefree_h {
        fail(Stage::Squarefree, "gcd(H, H') is non-constant".to_string())
    } else if k == 1 {
        Verdict::VacuouslyTrue
    } else {
        let g = halve_even_poly(&h)?;
        if !is_self_inversive(&g) {
            fail(Stage::SelfInversive, format!("G = {g}"))
        } else {
            let census = circle_census(&g)?;
            let lifted = lift_census(&census);
            cert.circle_count = lifted.circle;
            cert.real_count = lifted.real;
            cert.off_circle_nonreal_count = lifted.off_circle_nonreal;
            let verdict = if !census.is_consistent() {
                fail(Stage::Census, format!("{census:?}"))
            } else if census.plus_one > 0 {
                fail(Stage::RealRoots, format!("G has w = 1 with multiplicity {}", census.plus_one))
            } else if lifted.real > 0 {
                fail(Stage::RealRoots, format!("H has {} real roots", lifted.real))
            } else if lifted.off_circle_nonreal > 0 || lifted.circle != 2 * k as usize - 2 {
                fail(
                    Stage::CircleCount,
                    format!("{} roots on |z| = 1, {} off it", lifted.circle, lifted.off_circle_nonreal),
                )
            } else {
                Verdict::TheoremHolds
            };
            cert.census = Some(census);
            verdict
        }
    };
    if let Some(d) = opts.numeric_digits {
        cert.numeric_crosscheck = Some(crosscheck(&h, d, &BigRational::one(), cert.real_count));
    }
    Ok(cert)
}

/// Exact root partition of `R_{2k+1}`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicReport {
    pub family: Family,
    pub degree: usize,
    pub self_inversive: bool,
    /// Non-real roots on `|z| = 1`.
    pub circle_count: usize,
    /// Real roots, with multiplicity, including `z = +-1`.
    pub real_count: usize,
    /// Real roots counted by Sturm sequences directly on `R_{2k+1}`.
    pub real_count_direct: usize,
    /// Multiplicity of `z = 1` plus that of `z = -1`.
    pub unit_real_count: usize,
    pub off_circle_nonreal_count: usize,
    pub census: CircleCensus,
    pub verdict: Verdict,
    pub numeric_crosscheck: Option<NumericCrosscheck>,
}

fn real_roots_with_multiplicity(p: &DensePoly) -> Result<usize> {
    let mut total = 0;
    for (f, m) in squarefree_decomposition(p)? {
        total += m * count_all_real_roots(&f)?;
    }
    Ok(total)
}

/// Partition of the `2k+2` roots of `R_{2k+1}` into real roots, non-real
/// roots on the unit circle and non-real roots off it.
pub fn certify_classic(k: u32, precision_digits: Option<u32>) -> Result<ClassicReport> {
    let r = build_classic(k)?;
    let degree = r.degree().unwrap();
    let g = halve_even_poly(&r)?;
    let census = circle_census(&g)?;
    let lifted = lift_census(&census);
    let real_count_direct = real_roots_with_multiplicity(&r)?;
    let unit_real_count = r.deflate_root(&BigRational::one()).1 + r.deflate_root(&int(-1)).1;
    let self_inversive = is_self_inversive(&r);
    let total = lifted.circle + lifted.real + lifted.off_circle_nonreal;
    let verdict = if !self_inversive {
        Verdict::Failed { stage: Stage::SelfInversive, witness: format!("R = {r}") }
    } else if !census.is_consistent() || total != degree {
        Verdict::Failed { stage: Stage::Census, witness: format!("{census:?}") }
    } else if real_count_direct != lifted.real {
        Verdict::Failed {
            stage: Stage::RealRoots,
            witness: format!("Sturm on R finds {real_count_direct}, transform finds {}", lifted.real),
        }
    } else if lifted.off_circle_nonreal > 0 {
        Verdict::Failed {
            stage: Stage::CircleCount,
            witness: format!("{} non-real roots off |z| = 1", lifted.off_circle_nonreal),
        }
    } else {
        Verdict::TheoremHolds
    };
    let numeric_crosscheck = precision_digits.map(|d| crosscheck(&r, d, &BigRational::one(), lifted.real));
    Ok(ClassicReport {
        family: Family::Classic { k },
        degree,
        self_inversive,
        circle_count: lifted.circle,
        real_count: lifted.real,
        real_count_direct,
        unit_real_count,
        off_circle_nonreal_count: lifted.off_circle_nonreal,
        census,
        verdict,
        numeric_crosscheck,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConjectureVerdict {
    ConsistentWithConjecture,
    CounterexampleCandidate { witness: String },
}

impl ConjectureVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ConjectureVerdict::ConsistentWithConjecture)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ConjectureVerdict::ConsistentWithConjecture => "consistent_with_conjecture",
            ConjectureVerdict::CounterexampleCandidate { .. } => "counterexample_candidate",
        }
    }
}

/// Root structure of `R^{(ell)}` in the variable `Z`.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub family: Family,
    pub degree: usize,
    pub reciprocity: Reciprocity,
    pub squarefree: bool,
    /// Exact census when the polynomial is (anti-)reciprocal.
    pub census: Option<CircleCensus>,
    /// Non-real roots on `|Z| = 1`, exact when `census` is present.
    pub circle_count: Option<usize>,
    /// Real roots (with multiplicity), by Sturm sequences.
    pub real_count: usize,
    pub off_circle_nonreal_count: Option<usize>,
    pub verdict: ConjectureVerdict,
    pub numeric: NumericCrosscheck,
}

pub fn probe_generalized(k: u32, ell: u32, precision_digits: u32) -> Result<ConjectureReport> {
    let p = build_generalized(k, ell)?;
    let degree = p.degree().unwrap();
    let recip = reciprocity(&p);
    let squarefree = is_squarefree(&p)?;
    let real_count = real_roots_with_multiplicity(&p)?;
    let census = match recip {
        Reciprocity::Neither => None,
        _ => Some(circle_census(&p)?),
    };
    let numeric = crosscheck(&p, precision_digits, &BigRational::one(), real_count);
    let verdict = match &census {
        Some(c) if c.off_circle_nonreal > 0 => ConjectureVerdict::CounterexampleCandidate {
            witness: format!("{} non-real roots off |Z| = 1 (exact)", c.off_circle_nonreal),
        },
        Some(c) if c.circle_nonreal_repeated => ConjectureVerdict::CounterexampleCandidate {
            witness: "repeated non-real root on |Z| = 1 (exact)".to_string(),
        },
        Some(c) if !c.is_consistent() || c.real_count() != real_count => ConjectureVerdict::CounterexampleCandidate {
            witness: format!("inconsistent census {c:?}"),
        },
        Some(_) => ConjectureVerdict::ConsistentWithConjecture,
        None => numeric_conjecture_verdict(&numeric, precision_digits),
    };
    Ok(ConjectureReport {
        family: Family::Generalized { k, ell },
        degree,
        reciprocity: recip,
        squarefree,
        circle_count: census.as_ref().map(|c| c.circle_nonreal + c.minus_one),
        off_circle_nonreal_count: census.as_ref().map(|c| c.off_circle_nonreal),
        census,
        real_count,
        verdict,
        numeric,
    })
}

/// Fallback for polynomials without the reciprocal structure: a non-real
/// root whose disk lies strictly off the unit circle is a candidate.
fn numeric_conjecture_verdict(numeric: &NumericCrosscheck, digits: u32) -> ConjectureVerdict {
    if let Some(e) = &numeric.error {
        return ConjectureVerdict::CounterexampleCandidate { witness: format!("numeric failure: {e}") };
    }
    let bits = digits_to_bits(digits.max(30)) + 64;
    let one = from_int(1, bits);
    for r in &numeric.roots {
        if !r.may_be_real() && r.modulus_deviation(&one) > r.radius {
            return ConjectureVerdict::CounterexampleCandidate {
                witness: format!("root {} + {} i off |Z| = 1", real::sci(&r.re, 40), real::sci(&r.im, 40)),
            };
        }
    }
    ConjectureVerdict::ConsistentWithConjecture
}
