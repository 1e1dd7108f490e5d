//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p stirling-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use stirling_core::asymptotic::{approx_factorial, default_panels, dn_closed_form, dn_quadrature};
use stirling_core::coefficients::{
    a_from_b, a_via_bernoulli, a_via_d3, a_via_g, a_via_l, a_via_s3, b_by_reversion, b_series,
    c_series,
};
use stirling_core::combinatorics::{
    derangement_from_series, enumerate_oracle, stirling2_from_series, AssocKind, AssocTable,
};
use stirling_core::identities::{
    check_cb, check_diffeq, check_implicit, check_reciprocal, prop_gen_range, prop_id_range,
    IdentityReport,
};
use stirling_core::rational::{frac, int};
use stirling_core::{Execution, Rational, TruncatedSeries};

type Outcome = Result<String, String>;
type Route<'a> = Box<dyn Fn(usize) -> Rational + 'a>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || {
        format!("took {elapsed:.2?}, budget {budget:.0?}")
    })
}

fn report_ok(r: &IdentityReport) -> Result<(), String> {
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(format!(
            "{} fails at index {}: {} vs {}",
            r.identity, f.index, f.left, f.right
        )),
    }
}

/// 1. Reversion reproduces the printed B(x), C(x) through x^6.
fn series_reproduction() -> Outcome {
    let start = Instant::now();
    let listed = |c2: (i64, i64)| {
        TruncatedSeries::from_coeffs(vec![
            int(0),
            int(1),
            frac(c2.0, c2.1),
            frac(1, 36),
            frac(-1, 270),
            frac(1, 4320),
            frac(1, 17010),
        ])
        .unwrap()
    };
    let b = b_series(6);
    let c = c_series(6);
    ensure(b == listed((-1, 6)), || format!("B = {b}"))?;
    ensure(c == listed((1, 3)), || format!("C = {c}"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("B = {b} in {elapsed:.2?}"))
}

/// 2. Five routes to a_k (plus a_from_b) agree exactly for k <= 20.
fn five_way_agreement() -> Outcome {
    const K: usize = 20;
    let start = Instant::now();
    let b = b_by_reversion(2 * K + 1);
    let routes: [(&str, Route<'_>); 5] = [
        ("L-derivative", Box::new(a_via_l)),
        ("S3-sum", Box::new(a_via_s3)),
        ("d3-sum", Box::new(a_via_d3)),
        ("bernoulli-exp", Box::new(a_via_bernoulli)),
        ("a_from_b", Box::new(|k| a_from_b(k, &b).unwrap())),
    ];
    for k in 0..=K {
        let reference = a_via_g(k);
        for (name, f) in &routes {
            let v = f(k);
            ensure(v == reference, || {
                format!("a_{k}: G-derivative {reference} vs {name} {v}")
            })?;
        }
    }
    ensure(a_via_g(0) == int(1), || "a_0 != 1".into())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("k <= {K}, a_20 = {}, {elapsed:.2?}", a_via_g(K)))
}

/// 3. C - B = x^2/2 through order 40.
fn c_minus_b() -> Outcome {
    let r = check_cb(40).map_err(|e| e.to_string())?;
    report_ok(&r)?;
    Ok(format!("orders {:?}", r.range))
}

/// 4. Combinatorial identities: prop-id for k <= 12, prop-gen for 1..=25.
fn combinatorial_identities() -> Outcome {
    let id = prop_id_range(0, 12);
    report_ok(&id)?;
    let gen = prop_gen_range(1, 25).map_err(|e| e.to_string())?;
    report_ok(&gen)?;
    Ok("prop-id k <= 12; prop-gen 1 <= k <= 25 (k = 2 differs by exactly 1)".into())
}

/// 5. Implicit and differential equations through order 30.
fn implicit_and_differential() -> Outcome {
    let mut all = check_implicit(30).map_err(|e| e.to_string())?;
    all.extend(check_diffeq(30).map_err(|e| e.to_string())?);
    for r in &all {
        report_ok(r)?;
    }
    let names: Vec<String> = all.iter().map(|r| r.identity.to_string()).collect();
    Ok(names.join(", "))
}

/// 6. Recurrence == series extraction == enumeration for S_3 and d_3, n <= 9.
fn combinatorics_oracles() -> Outcome {
    const N: usize = 9;
    let s3 = AssocTable::new(AssocKind::Partition, 3, N).unwrap();
    let d3 = AssocTable::new(AssocKind::Derangement, 3, N).unwrap();
    let mut checked = 0;
    for n in 0..=N {
        for k in 0..=n {
            for (kind, table) in [(AssocKind::Partition, &s3), (AssocKind::Derangement, &d3)] {
                let rec = table.value(n, k).unwrap();
                let ser = match kind {
                    AssocKind::Partition => stirling2_from_series(3, n, k, N).unwrap(),
                    AssocKind::Derangement => derangement_from_series(3, n, k, N).unwrap(),
                };
                let ora = enumerate_oracle(3, n, k, kind, Execution::default()).unwrap();
                ensure(rec == ser && ser == ora, || {
                    format!("{kind}({n},{k}): recurrence {rec}, series {ser}, oracle {ora}")
                })?;
                checked += 1;
            }
        }
    }
    let pinned = [
        (s3.value(6, 2).unwrap(), 10u32, "S_3(6,2)"),
        (d3.value(6, 2).unwrap(), 40, "d_3(6,2)"),
        (d3.value(3, 1).unwrap(), 2, "d_3(3,1)"),
    ];
    for (v, want, name) in pinned {
        ensure(v == BigUint::from(want), || {
            format!("{name} = {v}, want {want}")
        })?;
    }
    Ok(format!("{checked} (kind, n, k) triples"))
}

/// 7. Quadrature D_n matches the closed form to 1e-8 relative, n = 1..=20.
fn quadrature_identity() -> Outcome {
    let p = 128;
    let mut worst = 0.0f64;
    for n in 1..=20u64 {
        let quad = dn_quadrature(n, p, default_panels(n)).map_err(|e| e.to_string())?;
        let closed = dn_closed_form(n, p);
        let rel = quad.sub(&closed).abs().div(&closed).to_f64();
        ensure(rel <= 1e-8, || format!("n = {n}: relative error {rel:e}"))?;
        worst = worst.max(rel);
    }
    Ok(format!("worst relative error {worst:.3e}"))
}

/// 8. Remainder scaling at N = 3 between n = 10 and n = 20.
fn remainder_scaling() -> Outcome {
    let r10 = approx_factorial(10, 3, 128).map_err(|e| e.to_string())?;
    let r20 = approx_factorial(20, 3, 128).map_err(|e| e.to_string())?;
    let ratio = r20.scaled_error.div(&r10.scaled_error).to_f64();
    ensure((1.0 / 1.5..=1.5).contains(&ratio), || {
        format!("scaled-error ratio {ratio} outside [1/1.5, 1.5]")
    })?;
    Ok(format!(
        "ratio {ratio:.4} (rel errors {} / {})",
        r10.rel_error.to_sci_string(4),
        r20.rel_error.to_sci_string(4)
    ))
}

/// 9. 1 / (sum (-1)^k a_k x^k) == sum a_k x^k exactly through k = 20.
fn reciprocal_consistency() -> Outcome {
    let r = check_reciprocal(20);
    report_ok(&r)?;
    Ok(format!("coefficients {:?}", r.range))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("reference series reproduction", series_reproduction),
        ("five-way coefficient agreement", five_way_agreement),
        ("C - B = x^2/2 through order 40", c_minus_b),
        ("combinatorial identities", combinatorial_identities),
        (
            "implicit and differential equations",
            implicit_and_differential,
        ),
        ("combinatorics oracle equivalence", combinatorics_oracles),
        ("quadrature identity", quadrature_identity),
        ("remainder scaling", remainder_scaling),
        ("formal reciprocal consistency", reciprocal_consistency),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
