//! Command execution: each grid point becomes one [`Outcome`].

use std::time::Instant;

use rayon::prelude::*;
use rtz_core::analytic::{check_ramanujan_identity, pi_multiple, IdentityResidual};
use rtz_core::certify::{
    certify_classic, certify_ramanujan_type_with, probe_generalized, CertifyOptions, NumericCrosscheck,
};
use rtz_core::criteria::{criteria_for, half_sum_identity_check, inequality_chain_check};
use rtz_core::exactnum::{bernoulli_number, convolution_identity_check};
use rtz_core::ramfam::{build_h, Family};
use rtz_core::real::{self, from_int, Real};
use rtz_core::{BigRational, Error};
use serde::Serialize;

use crate::args::{Command, FamilyKind, Which, MAX_ELL, MAX_K, MAX_N};
use crate::outcome::{GridRow, Outcome, Status, GRID_COLUMNS};
use crate::range::Span;

pub struct Run {
    pub header: Vec<&'static str>,
    pub outcomes: Vec<Outcome>,
}

fn parse_rational(name: &str, s: &str) -> Result<BigRational, String> {
    s.trim().parse::<BigRational>().map_err(|_| format!("--{name}: invalid rational `{s}`"))
}

fn timed(f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = f();
    o.elapsed_ms = t.elapsed().as_millis();
    o
}

fn error_outcome(kind: &str, family: Option<Family>, e: Error) -> Outcome {
    #[derive(Serialize)]
    struct Failure<'a> {
        context: &'a str,
        family: Option<Family>,
        message: String,
    }
    let msg = e.to_string();
    let status = match e {
        Error::NonConvergence { .. } | Error::InsufficientPrecision { .. } | Error::Undecided { .. } => {
            Status::Exhausted(msg.clone())
        }
        _ => Status::Fail(msg.clone()),
    };
    Outcome::new("error", &Failure { context: kind, family, message: msg.clone() })
        .table(format!("{kind}: error: {msg}"))
        .status(status)
}

fn grid2(a: Span, b: Span) -> Vec<(u64, u64)> {
    a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).collect()
}

fn crosscheck_status(x: Option<&NumericCrosscheck>) -> Status {
    match x.and_then(|x| x.error.clone()) {
        Some(e) => Status::Exhausted(e),
        None => Status::Pass,
    }
}

fn crosscheck_cell(x: Option<&NumericCrosscheck>) -> String {
    match x {
        None => "-".into(),
        Some(x) if x.error.is_some() => "exhausted".into(),
        Some(x) => format!("{}{}", x.max_modulus_deviation, if x.ok() { "" } else { " (!)" }),
    }
}

pub fn validate(cmd: &Command) -> Result<(), String> {
    let common = cmd.common();
    if common.precision == 0 {
        return Err("--precision must be positive".into());
    }
    if common.jobs == Some(0) {
        return Err("--jobs must be positive".into());
    }
    match cmd {
        Command::Verify { k, n, .. } | Command::Criteria { k, n, .. } => {
            k.check("k", 1, MAX_K)?;
            n.check("n", 2, MAX_N)
        }
        Command::Classic { k, .. } => k.check("k", 1, MAX_K),
        Command::Conjecture { k, ell, .. } => {
            k.check("k", 1, MAX_K)?;
            ell.check("ell", 1, MAX_ELL)
        }
        Command::Identity { which, k, m, .. } => match which {
            Which::Convolution => m.check("m", 1, 2 * MAX_K),
            _ => k.check("k", 1, MAX_K),
        },
        Command::Expand { family, k, n, ell, .. } => {
            k.check("k", 1, MAX_K)?;
            match family {
                FamilyKind::RamanujanType => n.check("n", 2, MAX_N),
                FamilyKind::Generalized => ell.check("ell", 1, MAX_ELL),
                _ => Ok(()),
            }
        }
        Command::Bernoulli { max, .. } => {
            if *max > 4 * MAX_K {
                Err(format!("--max is capped at {}", 4 * MAX_K))
            } else {
                Ok(())
            }
        }
    }
}

pub fn run(cmd: &Command) -> Result<Run, String> {
    let digits = cmd.common().precision;
    match cmd {
        Command::Verify { k, n, no_numeric, criteria, .. } => {
            let opts = CertifyOptions {
                numeric_digits: (!no_numeric).then_some(digits),
                criteria: *criteria,
            };
            let single = k.len() * n.len() == 1;
            let outcomes = grid2(*k, *n)
                .into_par_iter()
                .map(|(k, n)| timed(|| verify_one(k as u32, n, opts, single)))
                .collect();
            Ok(Run { header: GRID_COLUMNS.to_vec(), outcomes })
        }
        Command::Classic { k, no_numeric, .. } => {
            let d = (!no_numeric).then_some(digits);
            let ks: Vec<u64> = k.iter().collect();
            let outcomes = ks.into_par_iter().map(|k| timed(|| classic_one(k as u32, d))).collect();
            Ok(Run { header: GRID_COLUMNS.to_vec(), outcomes })
        }
        Command::Conjecture { k, ell, .. } => {
            let outcomes = grid2(*k, *ell)
                .into_par_iter()
                .map(|(k, ell)| timed(|| conjecture_one(k as u32, ell as u32, digits)))
                .collect();
            Ok(Run { header: GRID_COLUMNS.to_vec(), outcomes })
        }
        Command::Criteria { k, n, c, .. } => {
            let c = c.as_deref().map(|s| parse_rational("c", s)).transpose()?;
            let outcomes = grid2(*k, *n)
                .into_par_iter()
                .map(|(k, n)| timed(|| criteria_one(k as u32, n, c.as_ref())))
                .collect();
            Ok(Run { header: GRID_COLUMNS.to_vec(), outcomes })
        }
        Command::Identity { which, k, alpha_pi, terms, m, a, b, .. } => match which {
            Which::Ramanujan => {
                let alphas = alpha_pi
                    .split(',')
                    .map(|s| parse_rational("alpha-pi", s))
                    .collect::<Result<Vec<_>, _>>()?;
                if alphas.iter().any(|a| *a <= BigRational::from_integer(0.into())) {
                    return Err("--alpha-pi values must be positive".into());
                }
                let jobs: Vec<(u64, BigRational)> =
                    k.iter().flat_map(|k| alphas.iter().map(move |a| (k, a.clone()))).collect();
                let outcomes = jobs
                    .into_par_iter()
                    .map(|(k, a)| timed(|| ramanujan_one(k as u32, &a, *terms, digits)))
                    .collect();
                Ok(Run {
                    header: vec!["k", "alpha_over_pi", "residual", "bound", "swap_residual", "passed"],
                    outcomes,
                })
            }
            Which::HalfSum => {
                let ks: Vec<u64> = k.iter().collect();
                let outcomes = ks.into_par_iter().map(|k| timed(|| half_sum_one(k as u32))).collect();
                Ok(Run { header: vec!["k", "lhs", "middle", "rhs", "equal", "signed_equal"], outcomes })
            }
            Which::Convolution => {
                let a = parse_rational("a", a)?;
                let b = parse_rational("b", b)?;
                let ms: Vec<u64> = m.iter().collect();
                let outcomes = ms.into_par_iter().map(|m| timed(|| convolution_one(m as usize, &a, &b))).collect();
                Ok(Run {
                    header: vec!["m", "a", "b", "lhs", "rhs", "equal", "printed_form_equal"],
                    outcomes,
                })
            }
        },
        Command::Expand { family, k, n, ell, .. } => {
            let jobs: Vec<Family> = match family {
                FamilyKind::Classic => k.iter().map(|k| Family::Classic { k: k as u32 }).collect(),
                FamilyKind::LalinRogers => k.iter().map(|k| Family::LalinRogers { k: k as u32 }).collect(),
                FamilyKind::RamanujanType => grid2(*k, *n)
                    .into_iter()
                    .map(|(k, n)| Family::RamanujanType { k: k as u32, n })
                    .collect(),
                FamilyKind::Generalized => grid2(*k, *ell)
                    .into_iter()
                    .map(|(k, ell)| Family::Generalized { k: k as u32, ell: ell as u32 })
                    .collect(),
            };
            let outcomes = jobs.into_par_iter().map(|f| timed(|| expand_one(f))).collect();
            Ok(Run { header: vec!["variant", "k", "n", "ell", "power", "coefficient"], outcomes })
        }
        Command::Bernoulli { max, .. } => Ok(Run {
            header: vec!["m", "value"],
            outcomes: vec![timed(|| bernoulli_table(*max as usize))],
        }),
    }
}

fn verify_one(k: u32, n: u64, opts: CertifyOptions, with_roots: bool) -> Outcome {
    let family = Family::RamanujanType { k, n };
    let cert = match certify_ramanujan_type_with(k, n, opts) {
        Ok(c) => c,
        Err(e) => return error_outcome("certificate", Some(family), e),
    };
    let status = match &cert.verdict {
        rtz_core::certify::Verdict::Failed { stage, witness } => Status::Fail(format!("k={k} n={n} {stage:?}: {witness}")),
        _ => crosscheck_status(cert.numeric_crosscheck.as_ref()),
    };
    let mut table = format!(
        "{:>4} {:>8} {:<15} {:>6} {:>6} {:>5} {:>5}  {:<28} {}",
        k,
        n,
        cert.verdict.tag(),
        cert.origin_multiplicity,
        cert.circle_count,
        cert.real_count,
        cert.off_circle_nonreal_count,
        cert.h_at_1.to_string(),
        crosscheck_cell(cert.numeric_crosscheck.as_ref()),
    );
    if with_roots {
        table.push_str(&format!(
            "\n  R(z) = {}\n  z = 0 with multiplicity {}; the other {} roots are n^-1 times roots of H on |z| = 1",
            rtz_core::ramfam::build_ramanujan_type(k, n).map(|p| p.to_string()).unwrap_or_default(),
            cert.origin_multiplicity,
            cert.degree - cert.origin_multiplicity,
        ));
        if let Some(x) = &cert.numeric_crosscheck {
            let bits = real::digits_to_bits(x.precision_digits) + 64;
            let nr = from_int(n as i64, bits);
            for r in &x.roots {
                let im = &r.im / &nr;
                let (sign, im) = if im < Real::ZERO { ('-', -im) } else { ('+', im) };
                table.push_str(&format!(
                    "\n  z ~ {} {} {} i   (|z| n - 1 ~ {})",
                    real::sci(&(&r.re / &nr), 20),
                    sign,
                    real::sci(&im, 20),
                    real::sci(&r.modulus_deviation(&from_int(1, bits)), 3),
                ));
            }
        }
    }
    let row = GridRow {
        variant: "ramanujan_type",
        k,
        n: Some(n),
        verdict: cert.verdict.tag().into(),
        origin_multiplicity: Some(cert.origin_multiplicity),
        circle_count: Some(cert.circle_count),
        h_at_1: Some(cert.h_at_1.to_string()),
        schinzel_min: cert.criteria.as_ref().map(|c| c.schinzel_min.to_string()),
        ..Default::default()
    };
    Outcome::new("certificate", &cert).table(table).csv_row(row.into_record()).status(status)
}

fn classic_one(k: u32, digits: Option<u32>) -> Outcome {
    let r = match certify_classic(k, digits) {
        Ok(r) => r,
        Err(e) => return error_outcome("classic", Some(Family::Classic { k }), e),
    };
    let status = match &r.verdict {
        rtz_core::certify::Verdict::Failed { stage, witness } => Status::Fail(format!("k={k} {stage:?}: {witness}")),
        _ => crosscheck_status(r.numeric_crosscheck.as_ref()),
    };
    let table = format!(
        "{:>4} {:<15} {:>6} {:>6} {:>5} {:>5}  {}",
        k,
        r.verdict.tag(),
        r.degree,
        r.circle_count,
        r.real_count,
        r.off_circle_nonreal_count,
        crosscheck_cell(r.numeric_crosscheck.as_ref()),
    );
    let row = GridRow {
        variant: "classic",
        k,
        verdict: r.verdict.tag().into(),
        origin_multiplicity: Some(0),
        circle_count: Some(r.circle_count),
        ..Default::default()
    };
    Outcome::new("classic", &r).table(table).csv_row(row.into_record()).status(status)
}

fn conjecture_one(k: u32, ell: u32, digits: u32) -> Outcome {
    let r = match probe_generalized(k, ell, digits) {
        Ok(r) => r,
        Err(e) => return error_outcome("conjecture", Some(Family::Generalized { k, ell }), e),
    };
    let status = match &r.verdict {
        rtz_core::certify::ConjectureVerdict::CounterexampleCandidate { witness } => {
            Status::Fail(format!("k={k} ell={ell}: {witness}"))
        }
        _ => crosscheck_status(Some(&r.numeric)),
    };
    let opt = |o: Option<usize>| o.map_or("-".to_string(), |v| v.to_string());
    let table = format!(
        "{:>4} {:>4} {:<27} {:<15} {:>5} {:>6} {:>5} {:>5}  {}",
        k,
        ell,
        r.verdict.tag(),
        format!("{:?}", r.reciprocity).to_lowercase(),
        r.squarefree,
        opt(r.circle_count),
        r.real_count,
        opt(r.off_circle_nonreal_count),
        crosscheck_cell(Some(&r.numeric)),
    );
    let row = GridRow {
        variant: "generalized",
        k,
        ell: Some(ell),
        verdict: r.verdict.tag().into(),
        circle_count: r.circle_count,
        ..Default::default()
    };
    Outcome::new("conjecture", &r).table(table).csv_row(row.into_record()).status(status)
}

fn criteria_one(k: u32, n: u64, c: Option<&BigRational>) -> Outcome {
    let family = Family::RamanujanType { k, n };
    let mut report = match criteria_for(k, n) {
        Ok(r) => r,
        Err(e) => return error_outcome("criteria", Some(family), e),
    };
    if let Some(c) = c {
        match inequality_chain_check(k, n, c) {
            Ok(ch) => report.chain_checks = ch,
            Err(e) => return error_outcome("criteria", Some(family), e),
        }
    }
    let status = if report.schinzel_holds {
        Status::Pass
    } else {
        Status::Fail(format!(
            "k={k} n={n}: min_c sum |c A_j - A_(k-1)| = {} > |A_(k-1)| = {}",
            report.schinzel_min, report.schinzel_bound
        ))
    };
    let table = format!(
        "{:>4} {:>8} lakatos={:<5} schinzel={:<5} strict={:<5} min={} at c={} bound={}",
        k,
        n,
        report.lakatos_holds,
        report.schinzel_holds,
        report.schinzel_strict,
        report.schinzel_min,
        report.schinzel_argmin_c,
        report.schinzel_bound,
    );
    let row = GridRow {
        variant: "ramanujan_type",
        k,
        n: Some(n),
        verdict: if report.schinzel_holds { "schinzel_holds" } else { "schinzel_fails" }.into(),
        schinzel_min: Some(report.schinzel_min.to_string()),
        ..Default::default()
    };
    Outcome::new("criteria", &report).table(table).csv_row(row.into_record()).status(status)
}

#[derive(Serialize)]
struct RamanujanReport<'a> {
    #[serde(with = "rtz_core::serde_rational")]
    alpha_over_pi: BigRational,
    primary: &'a IdentityResidual,
    /// The same check at `alpha' = beta`.
    swap: &'a IdentityResidual,
    passed: bool,
}

fn ramanujan_one(k: u32, a: &BigRational, terms: u64, digits: u32) -> Outcome {
    let alpha = pi_multiple(a, digits);
    let inv = BigRational::from_integer(1.into()) / a;
    let primary = check_ramanujan_identity(k, &alpha, terms, digits);
    let swap = check_ramanujan_identity(k, &pi_multiple(&inv, digits), terms, digits);
    let (primary, swap) = match (primary, swap) {
        (Ok(p), Ok(s)) => (p, s),
        (Err(e), _) | (_, Err(e)) => return error_outcome("ramanujan_identity", None, e),
    };
    let tol = real::ten_pow_neg(digits.saturating_sub(10).max(1), 64 + real::digits_to_bits(digits));
    let passed = primary.residual < tol && swap.residual < tol;
    let status = if passed {
        Status::Pass
    } else {
        Status::Exhausted(format!("k={k} alpha={a} pi: residual {}", real::sci(&primary.residual, 3)))
    };
    let table = format!(
        "{:>4} alpha={:<6}pi residual={:<10} bound={:<10} swap_residual={:<10} {}",
        k,
        a.to_string(),
        real::sci(&primary.residual, 3),
        real::sci(&primary.bound, 3),
        real::sci(&swap.residual, 3),
        if passed { "ok" } else { "FAIL" },
    );
    let record = vec![
        k.to_string(),
        a.to_string(),
        real::sci(&primary.residual, 3),
        real::sci(&primary.bound, 3),
        real::sci(&swap.residual, 3),
        passed.to_string(),
    ];
    let report = RamanujanReport { alpha_over_pi: a.clone(), primary: &primary, swap: &swap, passed };
    Outcome::new("ramanujan_identity", &report).table(table).csv_row(record).status(status)
}

fn half_sum_one(k: u32) -> Outcome {
    let r = match half_sum_identity_check(k) {
        Ok(r) => r,
        Err(e) => return error_outcome("half_sum_identity", None, e),
    };
    let ok = r.equal && r.signed_equal;
    let status = if ok { Status::Pass } else { Status::Fail(format!("k={k}: lhs {} rhs {}", r.lhs, r.rhs)) };
    let table = format!("{:>4} lhs={} rhs={} equal={} signed_equal={}", k, r.lhs, r.rhs, r.equal, r.signed_equal);
    let record = vec![
        k.to_string(),
        r.lhs.to_string(),
        r.middle.to_string(),
        r.rhs.to_string(),
        r.equal.to_string(),
        r.signed_equal.to_string(),
    ];
    Outcome::new("half_sum_identity", &r).table(table).csv_row(record).status(status)
}

fn convolution_one(m: usize, a: &BigRational, b: &BigRational) -> Outcome {
    let r = match convolution_identity_check(m, a, b) {
        Ok(r) => r,
        Err(e) => return error_outcome("convolution_identity", None, e),
    };
    let status = if r.equal { Status::Pass } else { Status::Fail(format!("m={m}: lhs {} rhs {}", r.lhs, r.rhs)) };
    let table = format!("{:>4} lhs={} rhs={} equal={} printed_form_equal={}", m, r.lhs, r.rhs, r.equal, r.printed_equal);
    let record = vec![
        m.to_string(),
        a.to_string(),
        b.to_string(),
        r.lhs.to_string(),
        r.rhs.to_string(),
        r.equal.to_string(),
        r.printed_equal.to_string(),
    ];
    Outcome::new("convolution_identity", &r).table(table).csv_row(record).status(status)
}

#[derive(Serialize)]
struct Term {
    power: usize,
    #[serde(with = "rtz_core::serde_rational")]
    coefficient: BigRational,
}

#[derive(Serialize)]
struct HEntry {
    /// Shifted index, `j = 0..k-1`.
    j: u32,
    /// Index in the original sum, `j + 1`.
    sum_index: u32,
    power: u32,
    #[serde(with = "rtz_core::serde_rational")]
    a: BigRational,
}

#[derive(Serialize)]
struct Expansion<'a> {
    family: Family,
    degree: usize,
    display: String,
    terms: &'a [Term],
    coefficients: serde_json::Map<String, serde_json::Value>,
    h_table: Option<Vec<HEntry>>,
}

fn expand_one(family: Family) -> Outcome {
    let p = match family.build() {
        Ok(p) => p,
        Err(e) => return error_outcome("expansion", Some(family), e),
    };
    let var = if matches!(family, Family::Generalized { .. }) { "Z" } else { "z" };
    let terms: Vec<Term> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| Term { power: i, coefficient: c.clone() })
        .collect();
    let mut coefficients = serde_json::Map::new();
    for t in &terms {
        coefficients.insert(format!("{var}^{}", t.power), t.coefficient.to_string().into());
    }
    let h_table: Option<Vec<HEntry>> = match family {
        Family::RamanujanType { k, n } => build_h(k, n).ok().map(|(_, t)| {
            t.a.iter()
                .enumerate()
                .map(|(j, a)| HEntry {
                    j: j as u32,
                    sum_index: j as u32 + 1,
                    power: 2 * k - 2 - 2 * j as u32,
                    a: a.clone(),
                })
                .collect()
        }),
        _ => None,
    };
    let mut table = format!("{family:?}\n  {var}-polynomial: {}", p.to_string_in(var));
    for t in &terms {
        table.push_str(&format!("\n  {var}^{:<4} {}", t.power, t.coefficient));
    }
    if let Some(h) = &h_table {
        table.push_str("\n  H coefficients (j, sum index, power, A_j):");
        for e in h {
            table.push_str(&format!("\n  {:>4} {:>4} {:>4}  {}", e.j, e.sum_index, e.power, e.a));
        }
    }
    let mut out = Outcome::new("expansion", &Expansion {
        family,
        degree: p.degree().unwrap_or(0),
        display: p.to_string_in(var),
        terms: &terms,
        coefficients,
        h_table,
    });
    let (n, ell) = (family.n().map(|v| v.to_string()), family.ell().map(|v| v.to_string()));
    for t in &terms {
        out = out.csv_row(vec![
            family.variant_name().into(),
            family.k().to_string(),
            n.clone().unwrap_or_default(),
            ell.clone().unwrap_or_default(),
            t.power.to_string(),
            t.coefficient.to_string(),
        ]);
    }
    out.table(table)
}

fn bernoulli_table(max: usize) -> Outcome {
    #[derive(Serialize)]
    struct Table {
        max: usize,
        values: Vec<String>,
    }
    let values: Vec<String> = (0..=max).map(|m| bernoulli_number(m).to_string()).collect();
    let mut table = String::new();
    let mut out = Outcome::new("bernoulli", &Table { max, values: values.clone() });
    for (m, v) in values.iter().enumerate() {
        if m > 0 {
            table.push('\n');
        }
        table.push_str(&format!("B_{m:<4} {v}"));
        out = out.csv_row(vec![m.to_string(), v.clone()]);
    }
    out.table(table)
}

/// Table header for the grid commands.
pub fn table_header(cmd: &Command) -> Option<String> {
    match cmd {
        Command::Verify { .. } => Some(format!(
            "{:>4} {:>8} {:<15} {:>6} {:>6} {:>5} {:>5}  {:<28} {}",
            "k", "n", "verdict", "origin", "circle", "real", "off", "H(1)", "max||z|-1|"
        )),
        Command::Classic { .. } => Some(format!(
            "{:>4} {:<15} {:>6} {:>6} {:>5} {:>5}  {}",
            "k", "verdict", "degree", "circle", "real", "off", "max||z|-1|"
        )),
        Command::Conjecture { .. } => Some(format!(
            "{:>4} {:>4} {:<27} {:<15} {:>5} {:>6} {:>5} {:>5}  {}",
            "k", "ell", "verdict", "reciprocity", "sqfr", "circle", "real", "off", "max||Z|-1|"
        )),
        _ => None,
    }
}
