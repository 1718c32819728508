//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rtz_core::analytic::{check_ramanujan_identity, pi_multiple};
use rtz_core::criteria::{criteria_for, grid_lemma_check, half_sum_identity_check};
use rtz_core::exactnum::{
    bernoulli_number, bernoulli_polynomial, check_bernoulli_bounds, convolution_identity_check, ratio, rpow,
};
use rtz_core::polycore::numeric_roots;
use rtz_core::ramfam::build_ramanujan_type;
use rtz_core::real::{self, digits_to_bits, from_rational, ten_pow_neg};
use serde_json::Value;

type Check = Result<String, String>;

struct Run {
    json: Vec<u8>,
    code: Option<i32>,
    elapsed: Duration,
}

fn rtz(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_rtz"))
        .args(args)
        .env_remove("RTZ_PRECISION_DIGITS")
        .output()
        .expect("spawn rtz");
    Run { json: out.stdout, code: out.status.code(), elapsed: start.elapsed() }
}

fn parse(run: &Run) -> Result<Vec<Value>, String> {
    let doc: Value = serde_json::from_slice(&run.json).map_err(|e| format!("bad json: {e}"))?;
    doc["reports"].as_array().cloned().ok_or_else(|| "no reports".into())
}

fn dec(v: &Value) -> f64 {
    v.as_str().and_then(|s| s.parse().ok()).unwrap_or(f64::INFINITY)
}

fn u(v: &Value) -> u64 {
    v.as_u64().unwrap_or(u64::MAX)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

const C1_ARGS: [&str; 9] = ["verify", "--k", "1..25", "--n", "2..8", "--format", "json", "--jobs", ""];

fn c1_run(jobs: &str) -> Run {
    let mut args = C1_ARGS;
    args[8] = jobs;
    rtz(&args)
}

fn criterion_1(run: &Run) -> Check {
    let reports = parse(run)?;
    ensure(run.code == Some(0), || format!("exit code {:?}", run.code))?;
    // 25 values of k times 7 values of n.
    ensure(reports.len() == 175, || format!("{} reports", reports.len()))?;
    for r in &reports {
        let k = u(&r["family"]["k"]);
        let n = u(&r["family"]["n"]);
        let want = if k == 1 { "vacuously_true" } else { "theorem_holds" };
        let ok = r["verdict"]["status"] == want
            && u(&r["origin_multiplicity"]) == 2
            && r["squarefree_h"] == true
            && r["h_at_1"] != "0"
            && r["h_at_minus1"] != "0"
            && u(&r["circle_count"]) == 2 * k - 2;
        ensure(ok, || format!("(k,n)=({k},{n}): {}", r["verdict"]))?;
    }
    ensure(run.elapsed < Duration::from_secs(300), || format!("took {:?}", run.elapsed))?;
    Ok(format!("175 instances in {:.1}s", run.elapsed.as_secs_f64()))
}

fn criterion_2() -> Check {
    let p = build_ramanujan_type(2, 2).map_err(|e| e.to_string())?;
    let want = rtz_core::DensePoly::new(vec![ratio(0, 1), ratio(0, 1), ratio(-1, 48), ratio(0, 1), ratio(-1, 12)]);
    ensure(p == want, || format!("R = {p}"))?;

    let reports = parse(&rtz(&["verify", "--k", "2", "--n", "2", "--format", "json"]))?;
    let r = &reports[0];
    ensure(u(&r["circle_count"]) == 2 && u(&r["origin_multiplicity"]) == 2, || format!("{r}"))?;
    ensure(r["verdict"]["status"] == "theorem_holds", || format!("{}", r["verdict"]))?;

    let bits = digits_to_bits(30) + 64;
    let half = from_rational(&ratio(1, 2), bits);
    let tol = ten_pow_neg(30, bits);
    let roots = numeric_roots(&p, 30).map_err(|e| e.to_string())?;
    let nonzero: Vec<_> = roots.iter().filter(|r| real::to_f64(&r.modulus()) > 0.1).collect();
    ensure(nonzero.len() == 2, || format!("{} non-zero roots", nonzero.len()))?;
    for z in nonzero {
        let re_ok = real::abs(&z.re) < tol;
        let im_ok = real::abs(&(real::abs(&z.im) - &half)) < tol;
        ensure(re_ok && im_ok, || format!("root {} + {} i", real::sci(&z.re, 35), real::sci(&z.im, 35)))?;
    }
    Ok("R = -z^4/12 - z^2/48, roots +-i/2 within 1e-30".into())
}

fn criterion_3() -> Check {
    let run = rtz(&["classic", "--k", "1..25", "--format", "json"]);
    let reports = parse(&run)?;
    ensure(run.code == Some(0), || format!("exit code {:?}", run.code))?;
    ensure(reports.len() == 25, || format!("{} reports", reports.len()))?;
    let mut worst = 0f64;
    for r in &reports {
        let k = u(&r["family"]["k"]);
        let sum = u(&r["circle_count"]) + u(&r["real_count"]);
        ensure(sum == 2 * k + 2, || format!("k={k}: circle + real = {sum}"))?;
        ensure(u(&r["off_circle_nonreal_count"]) == 0, || format!("k={k}: off-circle roots"))?;
        let x = &r["numeric_crosscheck"];
        let dev = dec(&x["max_modulus_deviation"]);
        ensure(x["classification_matches"] == true && dev < 1e-20, || format!("k={k}: numeric {x}"))?;
        worst = worst.max(dev);
    }
    Ok(format!("k <= 25, max modulus deviation {worst:.1e}"))
}

fn criterion_4() -> Check {
    let worked = criteria_for(3, 2).map_err(|e| e.to_string())?;
    ensure(
        worked.schinzel_min == ratio(1, 11520) && worked.schinzel_bound == ratio(1, 1920),
        || format!("(3,2): min {} bound {}", worked.schinzel_min, worked.schinzel_bound),
    )?;
    let mut failures = Vec::new();
    for k in 1..=30u32 {
        for n in 2..=10u64 {
            let r = criteria_for(k, n).map_err(|e| e.to_string())?;
            if !(r.schinzel_holds && r.schinzel_strict) {
                failures.push(format!("(k,n)=({k},{n}) min={} > bound={}", r.schinzel_min, r.schinzel_bound));
            }
        }
    }
    ensure(failures.is_empty(), || format!("{} of 270 fail, first {}", failures.len(), failures[0]))?;
    Ok("270 pairs, (3,2) min 1/11520 < 1/1920".into())
}

fn criterion_5() -> Check {
    for k in 1..=50u32 {
        let r = half_sum_identity_check(k).map_err(|e| e.to_string())?;
        ensure(r.equal, || format!("half-sum identity k={k}: {} vs {}", r.lhs, r.rhs))?;
        if k == 1 {
            ensure(r.lhs == ratio(3, 8) && r.rhs == ratio(3, 8), || format!("k=1: {} vs {}", r.lhs, r.rhs))?;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..50 {
        let a = ratio(rng.random_range(-200..=200), rng.random_range(1..=60));
        let b = ratio(rng.random_range(-200..=200), rng.random_range(1..=60));
        for m in 1..=40 {
            let c = convolution_identity_check(m, &a, &b).map_err(|e| e.to_string())?;
            ensure(c.equal, || format!("convolution m={m} a={a} b={b}"))?;
        }
    }
    let half = ratio(1, 2);
    for m in 0..=60usize {
        let scale = rpow(&ratio(1, 2), m as i64 - 1) - ratio(1, 1);
        let want = scale * bernoulli_number(m);
        ensure(bernoulli_polynomial(m, &half) == want, || format!("half-argument m={m}"))?;
    }
    for m in 1..=200u64 {
        let ok = check_bernoulli_bounds(m).map_err(|e| e.to_string())?;
        ensure(ok, || format!("Bernoulli bounds m={m}"))?;
    }
    Ok("half-sum k <= 50, convolution m <= 40 x 50 pairs, half-argument m <= 60, bounds m <= 200".into())
}

fn criterion_6() -> Check {
    for k in 1..=30u32 {
        for n in 2..=10u64 {
            let g = grid_lemma_check(k, n).map_err(|e| e.to_string())?;
            ensure(g.holds(), || format!("(k,n)=({k},{n}): {g:?}"))?;
        }
    }
    Ok("k <= 30, n <= 10".into())
}

fn criterion_7(classic: &[Value]) -> Check {
    let run = rtz(&["conjecture", "--k", "1..12", "--ell", "1..4", "--format", "json"]);
    let reports = parse(&run)?;
    ensure(run.code == Some(0), || format!("exit code {:?}", run.code))?;
    ensure(reports.len() == 48, || format!("{} reports", reports.len()))?;
    let mut worst = 0f64;
    for r in &reports {
        let (k, ell) = (u(&r["family"]["k"]), u(&r["family"]["ell"]));
        ensure(r["verdict"]["status"] == "consistent_with_conjecture", || {
            format!("(k,ell)=({k},{ell}): {}", r["verdict"])
        })?;
        ensure(r["squarefree"] == true, || format!("(k,ell)=({k},{ell}) not squarefree"))?;
        let x = &r["numeric"];
        let dev = dec(&x["max_modulus_deviation"]);
        ensure(x["consistent"] == true && dev < 1e-20, || format!("(k,ell)=({k},{ell}): numeric {x}"))?;
        worst = worst.max(dev);
        if ell == 1 {
            // Z = z^2 maps this census onto the classic one.
            let c = classic
                .iter()
                .find(|c| u(&c["family"]["k"]) == k)
                .ok_or_else(|| format!("no classic report for k={k}"))?;
            ensure(r["census"] == c["census"], || format!("k={k}: census differs from classic"))?;
            ensure(2 * u(&r["circle_count"]) == u(&c["circle_count"]), || format!("k={k}: circle count"))?;
        }
    }
    Ok(format!("48 probes, no candidates, max modulus deviation {worst:.1e}"))
}

fn criterion_8() -> Check {
    let digits = 50;
    let bits = digits_to_bits(digits) + 64;
    let tol = ten_pow_neg(40, bits);
    let mut worst = 0f64;
    for k in 1..=3u32 {
        for (p, q) in [(1, 2), (1, 1), (2, 1)] {
            let a = ratio(p, q);
            let r = check_ramanujan_identity(k, &pi_multiple(&a, digits), 300, digits).map_err(|e| e.to_string())?;
            let s = check_ramanujan_identity(k, &pi_multiple(&ratio(q, p), digits), 300, digits)
                .map_err(|e| e.to_string())?;
            ensure(r.residual < tol && s.residual < tol, || {
                format!("k={k} alpha={a}pi: residuals {} {}", real::sci(&r.residual, 3), real::sci(&s.residual, 3))
            })?;
            let moved = real::abs(&(&s.alpha - &r.beta));
            ensure(moved < tol, || format!("k={k} alpha={a}pi: swapped alpha off by {}", real::sci(&moved, 3)))?;
            let gap = real::abs(&(&r.residual - &s.residual));
            ensure(gap < tol, || format!("k={k} alpha={a}pi: swap residuals differ by {}", real::sci(&gap, 3)))?;
            worst = worst.max(real::to_f64(&r.residual)).max(real::to_f64(&s.residual));
        }
    }
    Ok(format!("9 cases, max residual {worst:.1e}"))
}

fn criterion_9(first: &Run) -> Check {
    let serial = c1_run("1");
    ensure(serial.code == Some(0), || format!("exit code {:?}", serial.code))?;
    ensure(serial.json == first.json, || "--jobs 1 and --jobs 8 differ".into())?;
    Ok(format!("{} bytes identical", serial.json.len()))
}

#[test]
fn acceptance() {
    let c1 = c1_run("8");
    let classic = parse(&rtz(&["classic", "--k", "1..12", "--format", "json"])).unwrap_or_default();
    let results: Vec<(u32, &str, Check)> = vec![
        (1, "main theorem, k <= 25, n <= 8", criterion_1(&c1)),
        (2, "hand-checkable instance (2,2)", criterion_2()),
        (3, "classic family circle partition", criterion_3()),
        (4, "Schinzel criterion on A(k,n)", criterion_4()),
        (5, "exact identity suite", criterion_5()),
        (6, "extremum and bound lemmas on the grid", criterion_6()),
        (7, "generalized family probe", criterion_7(&classic)),
        (8, "theta-type series identity", criterion_8()),
        (9, "output determinism across --jobs", criterion_9(&c1)),
    ];
    let mut failed = Vec::new();
    for (id, name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {id}: {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {id}: {name}: {why}");
                failed.push(*id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
