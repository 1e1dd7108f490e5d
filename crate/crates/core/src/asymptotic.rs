//! Numeric validation of the expansion at desk scale.
//!
//! * [`approx_factorial`] evaluates the truncated expansion of `n!` and
//!   compares it with the exact integer.
//! * [`dn_quadrature`] integrates the characteristic-function representation
//!   of `D_n = sqrt(2 pi n) e^-n n^n / n!` numerically.
//! * [`dn_expansion_check`] compares that integral with the alternating
//!   truncated series for `D_n`.
//! * [`reciprocal_consistency`] checks, in exact rationals, that the formal
//!   reciprocal of the alternating series is the `a_k` series.
//!
//! The expansion diverges for every fixed `n`; truncation orders are always
//! supplied by the caller.

use num_bigint::BigUint;
use serde::Serialize;

use crate::bigfloat::BigFloat;
use crate::coefficients::{a_via_g, stirling_series_exponential};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rational::{factorial, Rational};
use crate::series::TruncatedSeries;

pub const DEFAULT_PRECISION: usize = 128;
pub const MIN_PRECISION: usize = 64;

/// Upper bound on trapezoid panels before giving up.
const MAX_PANELS: usize = 1 << 22;

fn check_precision(precision_bits: usize) -> Result<()> {
    if precision_bits < MIN_PRECISION {
        return Err(Error::InvalidArgument(format!(
            "precision must be at least {MIN_PRECISION} bits, got {precision_bits}"
        )));
    }
    Ok(())
}

/// `a_0..=a_terms` as exact rationals.
pub fn expansion_coefficients(terms: usize) -> Vec<Rational> {
    stirling_series_exponential(terms).into_coeffs()
}

/// `sqrt(2 pi n) e^-n n^n`.
pub fn stirling_prefactor(n: u64, precision_bits: usize) -> BigFloat {
    let p = precision_bits;
    let nf = BigFloat::from_u64(n, p);
    let two_pi_n = BigFloat::pi(p).mul(&BigFloat::from_u64(2 * n, p));
    let n_pow_n = BigFloat::from_biguint(&BigUint::from(n).pow(n as u32), p);
    two_pi_n.sqrt().mul(&nf.neg().exp()).mul(&n_pow_n)
}

/// `sum_{k=0}^{N} sign^k c_k / n^k`, rounding each exact `c_k` once.
fn inverse_power_sum(
    coeffs: &[Rational],
    n: u64,
    alternate: bool,
    precision_bits: usize,
) -> BigFloat {
    let p = precision_bits + 16;
    let inv_n = BigFloat::one(p).div(&BigFloat::from_u64(n, p));
    let mut power = BigFloat::one(p);
    let mut acc = BigFloat::zero(p);
    for (k, c) in coeffs.iter().enumerate() {
        let term = BigFloat::from_rational(c, p).mul(&power);
        acc = if alternate && k % 2 == 1 {
            acc.sub(&term)
        } else {
            acc.add(&term)
        };
        power = power.mul(&inv_n);
    }
    acc
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproxReport {
    pub n: u64,
    /// Truncation order `N`: terms `a_0..=a_N` are used.
    pub terms: usize,
    pub precision_bits: usize,
    pub approx: BigFloat,
    #[serde(serialize_with = "serialize_biguint")]
    pub exact: BigUint,
    /// `|approx - n!| / n!`.
    pub rel_error: BigFloat,
    /// `rel_error * n^(N+1)`.
    pub scaled_error: BigFloat,
}

fn serialize_biguint<S: serde::Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl ApproxReport {
    pub const CSV_HEADER: &'static str = "n,N,precision_bits,approx,exact,rel_error,scaled_error";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.terms,
            self.precision_bits,
            self.approx,
            self.exact,
            self.rel_error,
            self.scaled_error
        )
    }
}

/// Evaluates `sqrt(2 pi n) e^-n n^n sum_{k<=N} a_k / n^k` and compares it with `n!`.
pub fn approx_factorial(n: u64, terms: usize, precision_bits: usize) -> Result<ApproxReport> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the expansion is in inverse powers of n; n must be >= 1".into(),
        ));
    }
    check_precision(precision_bits)?;
    let p = precision_bits;
    let a = expansion_coefficients(terms);
    let approx = stirling_prefactor(n, p + 16)
        .mul(&inverse_power_sum(&a, n, false, p))
        .finite("approximation")?;
    let exact = factorial(n as usize);
    let exact_f = BigFloat::from_biguint(&exact, p + 16);
    let rel = approx.sub(&exact_f).abs().div(&exact_f);
    let scaled = rel.mul(&BigFloat::from_u64(n, p + 16).powi(terms + 1));
    Ok(ApproxReport {
        n,
        terms,
        precision_bits,
        approx: reround(&approx, p),
        exact,
        rel_error: reround(&rel, p),
        scaled_error: reround(&scaled, p),
    })
}

fn reround(x: &BigFloat, p: usize) -> BigFloat {
    x.mul(&BigFloat::one(p))
}

/// `sqrt(2 pi n) e^-n n^n / n!` from the exact factorial.
pub fn dn_closed_form(n: u64, precision_bits: usize) -> BigFloat {
    let p = precision_bits;
    stirling_prefactor(n, p).div(&BigFloat::from_biguint(&factorial(n as usize), p))
}

/// Real part of `exp(n (e^{i t} - 1 - i t))`, with `t = theta / sqrt(n)`.
fn integrand(n: &BigFloat, t: &BigFloat) -> BigFloat {
    let one = BigFloat::one(t.precision());
    let modulus = n.mul(&t.cos().sub(&one)).exp();
    let phase = n.mul(&t.sin().sub(t));
    modulus.mul(&phase.cos())
}

#[derive(Debug, Clone, Serialize)]
pub struct Quadrature {
    pub value: BigFloat,
    /// Trapezoid panels on the half interval at the accepted refinement.
    pub panels: usize,
    pub precision_bits: usize,
}

/// `D_n` by integrating `Re exp(n(e^{i theta/sqrt n} - 1 - i theta/sqrt n))`
/// over `[-pi sqrt n, pi sqrt n]` and dividing by `sqrt(2 pi)`.
///
/// The integrand is even, so the composite trapezoid rule runs on the half
/// interval with `panels` panels and doubles until two successive values
/// agree to `2^-(precision_bits/2)` relative.
pub fn dn_quadrature(n: u64, precision_bits: usize, panels: usize) -> Result<BigFloat> {
    dn_quadrature_with(n, precision_bits, panels, Execution::default()).map(|q| q.value)
}

pub fn dn_quadrature_with(
    n: u64,
    precision_bits: usize,
    panels: usize,
    exec: Execution,
) -> Result<Quadrature> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    check_precision(precision_bits)?;
    // Work in t = theta / sqrt(n) on [0, pi]; d theta = sqrt(n) dt.
    let p = precision_bits + 32;
    let nf = BigFloat::from_u64(n, p);
    let pi = BigFloat::pi(p);
    let tol = BigFloat::one(p).div(&BigFloat::from_u64(2, p).powi(precision_bits / 2));

    let mut m = panels.max(2);
    let h = pi.div(&BigFloat::from_u64(m as u64, p));
    let ends = integrand(&nf, &BigFloat::zero(p)).add(&integrand(&nf, &pi));
    let interior = sum_points(&nf, &h, m - 1, 1, 1, p, exec)?;
    let mut sum = ends.div(&BigFloat::from_u64(2, p)).add(&interior);
    let mut estimate = sum.mul(&h);

    loop {
        if m >= MAX_PANELS {
            return Err(Error::Numeric(format!(
                "quadrature did not settle within {MAX_PANELS} panels"
            )));
        }
        let h2 = pi.div(&BigFloat::from_u64(2 * m as u64, p));
        // new nodes are the odd multiples of h/2
        let fresh = sum_points(&nf, &h2, m, 1, 2, p, exec)?;
        sum = sum.add(&fresh);
        m *= 2;
        let refined = sum.mul(&h2);
        let delta = refined.sub(&estimate).abs();
        estimate = refined;
        if delta <= estimate.abs().mul(&tol) {
            break;
        }
    }

    // full interval = 2 * half; theta = sqrt(n) t; divide by sqrt(2 pi)
    let scale = BigFloat::from_u64(2, p)
        .mul(&nf.sqrt())
        .div(&BigFloat::from_u64(2, p).mul(&pi).sqrt());
    let value = estimate.mul(&scale).finite("D_n quadrature")?;
    Ok(Quadrature {
        value: reround(&value, precision_bits),
        panels: m,
        precision_bits,
    })
}

/// Sum of the integrand at `(first + stride * i) * h` for `i in 0..count`,
/// reduced in index order.
fn sum_points(
    n: &BigFloat,
    h: &BigFloat,
    count: usize,
    first: usize,
    stride: usize,
    p: usize,
    exec: Execution,
) -> Result<BigFloat> {
    let values = exec.map_range(count, |i| {
        let t = h.mul(&BigFloat::from_u64((first + stride * i) as u64, p));
        integrand(n, &t)
    });
    let mut acc = BigFloat::zero(p);
    for v in values {
        if !v.is_finite() {
            return Err(Error::Numeric("non-finite integrand value".into()));
        }
        acc = acc.add(&v);
    }
    Ok(acc)
}

/// Default starting panel count: the phase `n(sin t - t)` winds about `n`
/// times over the half period.
pub fn default_panels(n: u64) -> usize {
    (4 * n as usize).next_power_of_two().max(16)
}

#[derive(Debug, Clone, Serialize)]
pub struct DnComparison {
    pub n: u64,
    pub terms: usize,
    pub quadrature: BigFloat,
    pub series: BigFloat,
    /// `|quadrature - series|`.
    pub difference: BigFloat,
}

/// Quadrature `D_n` versus `sum_{k<=N} (-1)^k a_k / n^k`.
pub fn dn_expansion_check(n: u64, terms: usize, precision_bits: usize) -> Result<DnComparison> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be >= 2".into()));
    }
    let quad = dn_quadrature(n, precision_bits, default_panels(n))?;
    let coeffs: Vec<Rational> = (0..=terms).map(a_via_g).collect();
    let series = inverse_power_sum(&coeffs, n, true, precision_bits);
    let series = reround(&series, precision_bits);
    let difference = quad.sub(&series).abs();
    Ok(DnComparison {
        n,
        terms,
        quadrature: quad,
        series,
        difference,
    })
}

/// Returns `(1 / D(x), A(x))` through `x^kmax`, where
/// `D(x) = sum (-1)^k a_k x^k` uses the derivative-formula coefficients and
/// `A(x) = sum a_k x^k`. The two must be identical.
pub fn reciprocal_consistency(kmax: usize) -> (TruncatedSeries, TruncatedSeries) {
    let a: Vec<Rational> = (0..=kmax).map(a_via_g).collect();
    let alternating = TruncatedSeries::from_fn(kmax, |k| {
        if k % 2 == 1 {
            -a[k].clone()
        } else {
            a[k].clone()
        }
    });
    let recip = alternating.recip().expect("a_0 = 1");
    let plain = TruncatedSeries::from_coeffs(a).expect("non-empty");
    (recip, plain)
}
