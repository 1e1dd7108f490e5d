//! Exact checks of the identities tying the coefficient routes together.
//!
//! Every check returns an [`IdentityReport`] listing the indices where the
//! two sides differ, each with both values as a witness. An empty failure
//! list means the identity holds exactly on the whole range.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::asymptotic::reciprocal_consistency;
use crate::coefficients::{a_via_g, a_via_s3, b_series, c_series, cross_validate, AgreementReport};
use crate::combinatorics::{AssocKind, AssocTable};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rational::{self, frac, int, Rational};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    /// Alternating `S_3` sum equals alternating `d_3` sum.
    #[serde(rename = "prop-id")]
    PropId,
    /// The generalized `S_3`/`d_3` identity (`b_k == c_k` for `k != 2`).
    #[serde(rename = "prop-gen")]
    PropGen,
    /// `C(x) - B(x) = x^2/2`.
    #[serde(rename = "prop-CB")]
    PropCB,
    /// `e^B - 1 - B = x^2/2`.
    #[serde(rename = "implicit-B")]
    ImplicitB,
    /// `C - x^2/2 = log(1 + C)`.
    #[serde(rename = "implicit-C")]
    ImplicitC,
    /// `B = log(1 + B + x^2/2)`.
    #[serde(rename = "implicit-Bl")]
    ImplicitBl,
    /// `B' B = x - (x^2/2) B'`.
    #[serde(rename = "diffeq-B")]
    DiffeqB,
    /// `C' C = x C + x`.
    #[serde(rename = "diffeq-C")]
    DiffeqC,
    /// Derivative formula for `a_k` equals the alternating `S_3` sum.
    #[serde(rename = "unnumbered-GS3")]
    UnnumberedGS3,
    /// The reciprocal of the alternating expansion of `D_n` is the `a_k` series.
    #[serde(rename = "reciprocal-Dn")]
    ReciprocalDn,
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::PropId => "prop-id",
            IdentityId::PropGen => "prop-gen",
            IdentityId::PropCB => "prop-CB",
            IdentityId::ImplicitB => "implicit-B",
            IdentityId::ImplicitC => "implicit-C",
            IdentityId::ImplicitBl => "implicit-Bl",
            IdentityId::DiffeqB => "diffeq-B",
            IdentityId::DiffeqC => "diffeq-C",
            IdentityId::UnnumberedGS3 => "unnumbered-GS3",
            IdentityId::ReciprocalDn => "reciprocal-Dn",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub index: usize,
    #[serde(with = "rational::serde_fraction")]
    pub left: Rational,
    #[serde(with = "rational::serde_fraction")]
    pub right: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    /// Inclusive index range that was checked.
    pub range: (usize, usize),
    pub failures: Vec<Failure>,
}

impl IdentityReport {
    fn new(identity: IdentityId, range: (usize, usize)) -> Self {
        Self {
            identity,
            range,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, index: usize, left: Rational, right: Rational, holds: bool) {
        if !holds {
            self.failures.push(Failure { index, left, right });
        }
    }

    fn compare(&mut self, index: usize, left: Rational, right: Rational) {
        let holds = left == right;
        self.record(index, left, right, holds);
    }

    fn compare_series(
        identity: IdentityId,
        left: &TruncatedSeries,
        right: &TruncatedSeries,
    ) -> Self {
        let mut report = Self::new(identity, (0, left.order()));
        for (i, (l, r)) in left.coeffs().iter().zip(right.coeffs()).enumerate() {
            report.compare(i, l.clone(), r.clone());
        }
        report
    }

    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn holds_at(&self, index: usize) -> bool {
        (self.range.0..=self.range.1).contains(&index)
            && self.failures.iter().all(|f| f.index != index)
    }
}

/// `(k+1)(k+3)...(k+2j-1)`, which is 1 for `j = 0`.
fn odd_step_product(k: usize, j: usize) -> Rational {
    (1..=j).fold(Rational::one(), |acc, i| acc * int((k + 2 * i - 1) as i64))
}

/// Both sides of the alternating-sum identity for `a_k`.
fn prop_id_sides(s3: &AssocTable, d3: &AssocTable, k: usize) -> Result<(Rational, Rational)> {
    let mut left = Rational::zero();
    let mut right = Rational::zero();
    for j in 0..=2 * k {
        let m = j + k;
        let scale = rational::from_bigint(rational::pow2(m).into()) * rational::factorial_q(m);
        let sign = if j % 2 == 0 { int(1) } else { int(-1) };
        left += s3.value_q(2 * m, j)? * &sign / &scale;
        right += d3.value_q(2 * m, j)? * &sign / &scale;
    }
    Ok((left, right))
}

pub fn prop_id_range(lo: usize, hi: usize) -> IdentityReport {
    let s3 = AssocTable::new(AssocKind::Partition, 3, 6 * hi).expect("r = 3");
    let d3 = AssocTable::new(AssocKind::Derangement, 3, 6 * hi).expect("r = 3");
    let mut report = IdentityReport::new(IdentityId::PropId, (lo, hi));
    for k in lo..=hi {
        let (l, r) = prop_id_sides(&s3, &d3, k).expect("tables reach 6k");
        report.compare(k, l, r);
    }
    report
}

pub fn check_prop_id(k: usize) -> IdentityReport {
    prop_id_range(k, k)
}

/// The two sums of the generalized identity at `k`: the `S_3` side (which
/// is `b_k`) and the `d_3` side (which is `c_k`).
pub fn prop_gen_sides(k: usize) -> Result<(Rational, Rational)> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "the identity is stated for k >= 1".into(),
        ));
    }
    let n_max = 3 * k - 3;
    let s3 = AssocTable::new(AssocKind::Partition, 3, n_max)?;
    let d3 = AssocTable::new(AssocKind::Derangement, 3, n_max)?;
    prop_gen_sides_with(&s3, &d3, k)
}

fn prop_gen_sides_with(s3: &AssocTable, d3: &AssocTable, k: usize) -> Result<(Rational, Rational)> {
    let mut left = Rational::zero();
    let mut right = Rational::zero();
    for j in 0..k {
        let n = k + 2 * j - 1;
        let denom = odd_step_product(k, j);
        let s_sign = if j % 2 == 0 { int(1) } else { int(-1) };
        let d_sign = if (k + j - 1).is_multiple_of(2) {
            int(1)
        } else {
            int(-1)
        };
        left += s3.value_q(n, j)? * s_sign / &denom;
        right += d3.value_q(n, j)? * d_sign / &denom;
    }
    Ok((left, right))
}

/// Checks the generalized identity for `lo..=hi`. At `k = 2` the sides are
/// required to differ by exactly 1 (`c_2 - b_2 = 1`).
pub fn prop_gen_range(lo: usize, hi: usize) -> Result<IdentityReport> {
    if lo == 0 {
        return Err(Error::InvalidArgument(
            "the identity is stated for k >= 1".into(),
        ));
    }
    let n_max = (3 * hi).saturating_sub(3);
    let s3 = AssocTable::new(AssocKind::Partition, 3, n_max)?;
    let d3 = AssocTable::new(AssocKind::Derangement, 3, n_max)?;
    let mut report = IdentityReport::new(IdentityId::PropGen, (lo, hi));
    for k in lo..=hi {
        let (l, r) = prop_gen_sides_with(&s3, &d3, k)?;
        if k == 2 {
            let holds = &r - &l == Rational::one();
            report.record(k, l, r, holds);
        } else {
            report.compare(k, l, r);
        }
    }
    Ok(report)
}

pub fn check_prop_gen(k: usize) -> Result<IdentityReport> {
    prop_gen_range(k, k)
}

fn half_x_squared(order: usize) -> TruncatedSeries {
    TruncatedSeries::monomial(frac(1, 2), 2, order)
}

/// `C - B == x^2/2` with both series built by reversion.
pub fn check_cb(order: usize) -> Result<IdentityReport> {
    if order < 2 {
        return Err(Error::InvalidArgument("order must be at least 2".into()));
    }
    let diff = c_series(order).sub(&b_series(order))?;
    Ok(IdentityReport::compare_series(
        IdentityId::PropCB,
        &diff,
        &half_x_squared(order),
    ))
}

/// The three implicit equations for `B` and `C`.
pub fn check_implicit(order: usize) -> Result<Vec<IdentityReport>> {
    let b = b_series(order);
    let c = c_series(order);
    let one = TruncatedSeries::one(order);
    let half = half_x_squared(order);

    let ib = b.exp()?.sub(&one)?.sub(&b)?;
    let ic_left = c.sub(&half)?;
    let ic_right = c.log1p()?;
    let ibl_right = b.add(&half)?.log1p()?;

    Ok(vec![
        IdentityReport::compare_series(IdentityId::ImplicitB, &ib, &half),
        IdentityReport::compare_series(IdentityId::ImplicitC, &ic_left, &ic_right),
        IdentityReport::compare_series(IdentityId::ImplicitBl, &b, &ibl_right),
    ])
}

/// `B' B = x - (x^2/2) B'` and `C' C = x C + x` through `order - 1`.
pub fn check_diffeq(order: usize) -> Result<Vec<IdentityReport>> {
    if order < 2 {
        return Err(Error::InvalidArgument("order must be at least 2".into()));
    }
    let k = order - 1;
    let b = b_series(order);
    let c = c_series(order);
    let db = b.derivative();
    let dc = c.derivative();
    let b = b.truncate(k)?;
    let c = c.truncate(k)?;
    let x = TruncatedSeries::x(k);
    let half = half_x_squared(k);

    let b_left = db.mul(&b)?;
    let b_right = x.sub(&half.mul(&db)?)?;
    let c_left = dc.mul(&c)?;
    let c_right = x.mul(&c)?.add(&x)?;
    Ok(vec![
        IdentityReport::compare_series(IdentityId::DiffeqB, &b_left, &b_right),
        IdentityReport::compare_series(IdentityId::DiffeqC, &c_left, &c_right),
    ])
}

pub fn gs3_range(lo: usize, hi: usize, exec: Execution) -> IdentityReport {
    let pairs = exec.map_range(hi + 1 - lo, |i| (a_via_g(lo + i), a_via_s3(lo + i)));
    let mut report = IdentityReport::new(IdentityId::UnnumberedGS3, (lo, hi));
    for (i, (l, r)) in pairs.into_iter().enumerate() {
        report.compare(lo + i, l, r);
    }
    report
}

pub fn check_gs3_identity(k: usize) -> IdentityReport {
    gs3_range(k, k, Execution::Sequential)
}

pub fn check_reciprocal(kmax: usize) -> IdentityReport {
    let (recip, a) = reciprocal_consistency(kmax);
    IdentityReport::compare_series(IdentityId::ReciprocalDn, &recip, &a)
}

/// Everything `verify` runs.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max: usize,
    pub identities: Vec<IdentityReport>,
    pub agreement: AgreementReport,
}

impl VerifyReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(IdentityReport::holds) && self.agreement.all_agree()
    }
}

/// Runs every identity check with index bound `max` (`k <= max` for the
/// per-index identities; series identities through order `2 max + 1`), plus
/// the full coefficient cross-validation.
pub fn verify_all(max: usize, exec: Execution) -> Result<VerifyReport> {
    let order = (2 * max + 1).max(2);
    let mut identities = vec![prop_id_range(0, max)];
    identities.push(prop_gen_range(1, max.max(1))?);
    identities.push(check_cb(order)?);
    identities.extend(check_implicit(order)?);
    identities.extend(check_diffeq(order)?);
    identities.push(gs3_range(0, max, exec));
    identities.push(check_reciprocal(max));
    Ok(VerifyReport {
        max,
        identities,
        agreement: cross_validate(max, exec),
    })
}
