//! The expansion coefficients `a_k` and the auxiliary sequences `b_k`, `c_k`,
//! `b~_k = b_k / k!`, `c~_k = c_k / k!`, each by every available route.
//!
//! `B(x) = sum b_k x^k/k!` is the compositional inverse of
//! `sqrt(2 e^x - 2 - 2x)` and `C(x) = sum c_k x^k/k!` that of
//! `sqrt(2x - 2 log(1+x))`. Their odd coefficients carry the `a_k`:
//! `a_k = b_{2k+1} / (2^k k!) = (2k+1)!! b~_{2k+1}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{bernoulli_numbers, AssocKind, AssocTable};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rational::{
    self, binomial, factorial_q, frac, int, odd_double_factorial, pow2, Rational,
};
use crate::series::{normalized_exp_tail, normalized_log_tail, TruncatedSeries};

/// Which sequence a [`CoeffTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sequence {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "btilde")]
    BTilde,
    #[serde(rename = "ctilde")]
    CTilde,
}

impl Sequence {
    /// `a` starts at `a_0`; the others start at index 1.
    pub fn first_index(self) -> usize {
        match self {
            Sequence::A => 0,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "G-derivative")]
    GDerivative,
    #[serde(rename = "L-derivative")]
    LDerivative,
    #[serde(rename = "S3-sum")]
    S3Sum,
    #[serde(rename = "d3-sum")]
    D3Sum,
    #[serde(rename = "reversion-B")]
    ReversionB,
    #[serde(rename = "reversion-C")]
    ReversionC,
    #[serde(rename = "lagrange-B")]
    LagrangeB,
    #[serde(rename = "lagrange-C")]
    LagrangeC,
    #[serde(rename = "recurrence-B")]
    RecurrenceB,
    #[serde(rename = "recurrence-C")]
    RecurrenceC,
    #[serde(rename = "recurrence-Btilde")]
    RecurrenceBtilde,
    #[serde(rename = "recurrence-Ctilde")]
    RecurrenceCtilde,
    #[serde(rename = "bernoulli-exp")]
    BernoulliExp,
}

impl Method {
    pub const ALL: [Method; 13] = [
        Method::GDerivative,
        Method::LDerivative,
        Method::S3Sum,
        Method::D3Sum,
        Method::BernoulliExp,
        Method::ReversionB,
        Method::ReversionC,
        Method::LagrangeB,
        Method::LagrangeC,
        Method::RecurrenceB,
        Method::RecurrenceC,
        Method::RecurrenceBtilde,
        Method::RecurrenceCtilde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::GDerivative => "G-derivative",
            Method::LDerivative => "L-derivative",
            Method::S3Sum => "S3-sum",
            Method::D3Sum => "d3-sum",
            Method::ReversionB => "reversion-B",
            Method::ReversionC => "reversion-C",
            Method::LagrangeB => "lagrange-B",
            Method::LagrangeC => "lagrange-C",
            Method::RecurrenceB => "recurrence-B",
            Method::RecurrenceC => "recurrence-C",
            Method::RecurrenceBtilde => "recurrence-Btilde",
            Method::RecurrenceCtilde => "recurrence-Ctilde",
            Method::BernoulliExp => "bernoulli-exp",
        }
    }

    /// The sequence this method produces directly.
    pub fn native_sequence(self) -> Sequence {
        match self {
            Method::GDerivative
            | Method::LDerivative
            | Method::S3Sum
            | Method::D3Sum
            | Method::BernoulliExp => Sequence::A,
            Method::ReversionB | Method::LagrangeB | Method::RecurrenceB => Sequence::B,
            Method::ReversionC | Method::LagrangeC | Method::RecurrenceC => Sequence::C,
            Method::RecurrenceBtilde => Sequence::BTilde,
            Method::RecurrenceCtilde => Sequence::CTilde,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

/// A computed sequence with its provenance. `values[i]` is the term of index
/// `sequence.first_index() + i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub method: Method,
    pub sequence: Sequence,
    pub first_index: usize,
    #[serde(with = "rational::serde_fraction::vec")]
    pub values: Vec<Rational>,
}

impl CoeffTable {
    pub fn new(method: Method, sequence: Sequence, values: Vec<Rational>) -> Self {
        Self {
            method,
            sequence,
            first_index: sequence.first_index(),
            values,
        }
    }

    /// Highest index covered, or `None` for an empty table.
    pub fn index_max(&self) -> Option<usize> {
        (!self.values.is_empty()).then(|| self.first_index + self.values.len() - 1)
    }

    pub fn get(&self, index: usize) -> Option<&Rational> {
        index
            .checked_sub(self.first_index)
            .and_then(|i| self.values.get(i))
    }

    fn require(&self, index: usize) -> Result<&Rational> {
        self.get(index).ok_or(Error::IndexOutOfRange {
            index,
            max: self.index_max().unwrap_or(0),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.first_index + i, v))
    }

    /// `index,method,value` lines, without header.
    pub fn csv_rows(&self) -> Vec<String> {
        self.iter()
            .map(|(i, v)| format!("{i},{},{v}", self.method))
            .collect()
    }
}

fn two_k_k_factorial(k: usize) -> Rational {
    rational::from_bigint(BigInt::from(pow2(k))) * factorial_q(k)
}

/// `(2k)! [x^{2k}] F^{-(2k+1)/2} / (2^k k!)` for `F` in {G, L}.
fn derivative_formula(normalized: fn(usize) -> TruncatedSeries, k: usize) -> Rational {
    let order = 2 * k;
    let power = frac(-(2 * k as i64 + 1), 2);
    let lifted = normalized(order)
        .power_rational(&power)
        .expect("normalized series has constant term 1");
    lifted.egf_coefficient(order).expect("order covers 2k") / two_k_k_factorial(k)
}

/// `a_k` from the `2k`-th derivative of `G^{-(2k+1)/2}` at zero, with
/// `G(x) = 2(e^x - 1 - x)/x^2`.
pub fn a_via_g(k: usize) -> Rational {
    derivative_formula(normalized_exp_tail, k)
}

/// `a_k` from the same formula with `L(x) = 2(x - log(1+x))/x^2`.
pub fn a_via_l(k: usize) -> Rational {
    derivative_formula(normalized_log_tail, k)
}

/// `sum_{j=0}^{2k} (-1)^j T(2(j+k), j) / (2^{j+k} (j+k)!)` for an
/// associated-number table `T` reaching `n = 6k`.
fn alternating_assoc_sum(table: &AssocTable, k: usize) -> Result<Rational> {
    let mut acc = Rational::zero();
    for j in 0..=2 * k {
        let term = table.value_q(2 * (j + k), j)? / two_k_k_factorial(j + k);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `a_k` as the alternating sum of associated Stirling numbers `S_3`.
pub fn a_via_s3(k: usize) -> Rational {
    let table = AssocTable::new(AssocKind::Partition, 3, 6 * k).expect("r = 3");
    alternating_assoc_sum(&table, k).expect("table reaches 6k")
}

/// `a_k` as the alternating sum of associated derangement numbers `d_3`.
pub fn a_via_d3(k: usize) -> Rational {
    let table = AssocTable::new(AssocKind::Derangement, 3, 6 * k).expect("r = 3");
    alternating_assoc_sum(&table, k).expect("table reaches 6k")
}

/// `exp(sum_{m>=1} B_{2m} / (2m(2m-1)) x^{2m-1})` through `order`.
pub fn stirling_series_exponential(order: usize) -> TruncatedSeries {
    let bern = bernoulli_numbers(order + 1);
    TruncatedSeries::from_fn(order, |i| {
        if i % 2 == 0 {
            return Rational::zero();
        }
        let two_m = i as i64 + 1;
        &bern[i + 1] / int(two_m * (two_m - 1))
    })
    .exp()
    .expect("exponent has no constant term")
}

/// `a_k` as `[x^k]` of the exponentiated Bernoulli-number Stirling series.
pub fn a_via_bernoulli(k: usize) -> Rational {
    stirling_series_exponential(k).coeff(k).clone()
}

/// Compositional inverse of `x * F(x)^{1/2}` for a normalized `F`.
fn reverted(normalized: fn(usize) -> TruncatedSeries, order: usize) -> TruncatedSeries {
    normalized(order)
        .power_rational(&frac(1, 2))
        .expect("constant term 1")
        .shift_up(1)
        .reversion()
        .expect("linear coefficient 1")
}

/// `B(x)` through `order` (ordinary coefficients), by series reversion.
pub fn b_series(order: usize) -> TruncatedSeries {
    reverted(normalized_exp_tail, order)
}

/// `C(x)` through `order` (ordinary coefficients), by series reversion.
pub fn c_series(order: usize) -> TruncatedSeries {
    reverted(normalized_log_tail, order)
}

fn egf_table(method: Method, sequence: Sequence, s: &TruncatedSeries) -> CoeffTable {
    let values = (1..=s.order())
        .map(|k| s.egf_coefficient(k).expect("k <= order"))
        .collect();
    CoeffTable::new(method, sequence, values)
}

pub fn b_by_reversion(kmax: usize) -> CoeffTable {
    egf_table(Method::ReversionB, Sequence::B, &b_series(kmax))
}

pub fn c_by_reversion(kmax: usize) -> CoeffTable {
    egf_table(Method::ReversionC, Sequence::C, &c_series(kmax))
}

/// `s_k = (k-1)! [x^{k-1}] F^{-k/2}`.
fn lagrange(normalized: fn(usize) -> TruncatedSeries, k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "Lagrange coefficients start at index 1".into(),
        ));
    }
    normalized(k - 1)
        .power_rational(&frac(-(k as i64), 2))?
        .egf_coefficient(k - 1)
}

pub fn b_by_lagrange(k: usize) -> Result<Rational> {
    lagrange(normalized_exp_tail, k)
}

pub fn c_by_lagrange(k: usize) -> Result<Rational> {
    lagrange(normalized_log_tail, k)
}

fn lagrange_table(method: Method, kmax: usize, exec: Execution) -> CoeffTable {
    let (seq, f): (Sequence, fn(usize) -> Result<Rational>) = match method {
        Method::LagrangeB => (Sequence::B, b_by_lagrange),
        Method::LagrangeC => (Sequence::C, c_by_lagrange),
        _ => unreachable!("not a Lagrange method"),
    };
    let values = exec.map_range(kmax, |i| f(i + 1).expect("k >= 1"));
    CoeffTable::new(method, seq, values)
}

/// Shared driver for the four recurrences: seed 1 at index 1, then
/// `s_k = (lead(k) * s_{k-1} - sum_{j=1}^{k-2} w(k,j) s_{j+1} s_{k-j}) / (k+1)`.
fn recurrence(
    kmax: usize,
    lead: impl Fn(usize) -> Rational,
    pair_weight: impl Fn(usize, usize) -> Rational,
) -> Vec<Rational> {
    // s[0] is a placeholder so that s[k] is the k-th term.
    let mut s: Vec<Rational> = vec![Rational::zero()];
    if kmax >= 1 {
        s.push(Rational::one());
    }
    for k in 2..=kmax {
        let mut pairs = Rational::zero();
        for j in 1..=k.saturating_sub(2) {
            pairs += pair_weight(k, j) * &s[j + 1] * &s[k - j];
        }
        let v = (lead(k) * &s[k - 1] - pairs) / int(k as i64 + 1);
        s.push(v);
    }
    s.remove(0);
    s
}

fn binom_q(n: usize, k: usize) -> Rational {
    rational::from_bigint(BigInt::from(binomial(n, k)))
}

/// `b_k = -(binom(k,2) b_{k-1} + sum binom(k,j) b_{j+1} b_{k-j}) / (k+1)`.
pub fn b_by_recurrence(kmax: usize) -> CoeffTable {
    let values = recurrence(kmax, |k| -binom_q(k, 2), binom_q);
    CoeffTable::new(Method::RecurrenceB, Sequence::B, values)
}

/// `c_k = (k c_{k-1} - sum binom(k,j) c_{j+1} c_{k-j}) / (k+1)`.
pub fn c_by_recurrence(kmax: usize) -> CoeffTable {
    let values = recurrence(kmax, |k| int(k as i64), binom_q);
    CoeffTable::new(Method::RecurrenceC, Sequence::C, values)
}

/// `b~_k = -((k-1)/2 b~_{k-1} + sum (j+1) b~_{j+1} b~_{k-j}) / (k+1)`.
pub fn btilde_by_recurrence(kmax: usize) -> CoeffTable {
    let values = recurrence(kmax, |k| frac(-(k as i64 - 1), 2), |_, j| int(j as i64 + 1));
    CoeffTable::new(Method::RecurrenceBtilde, Sequence::BTilde, values)
}

/// `c~_k = (c~_{k-1} - sum (j+1) c~_{j+1} c~_{k-j}) / (k+1)`.
pub fn ctilde_by_recurrence(kmax: usize) -> CoeffTable {
    let values = recurrence(kmax, |_| Rational::one(), |_, j| int(j as i64 + 1));
    CoeffTable::new(Method::RecurrenceCtilde, Sequence::CTilde, values)
}

/// `a_k` read off a `b`/`c` table (`b_{2k+1} / (2^k k!)`) or a tilde table
/// (`(2k+1)!! b~_{2k+1}`).
pub fn a_from_b(k: usize, table: &CoeffTable) -> Result<Rational> {
    let v = table.require(2 * k + 1)?;
    match table.sequence {
        Sequence::B | Sequence::C => Ok(v / two_k_k_factorial(k)),
        Sequence::BTilde | Sequence::CTilde => {
            Ok(v * rational::from_bigint(BigInt::from(odd_double_factorial(k))))
        }
        Sequence::A => Err(Error::InvalidArgument(
            "a_from_b needs a b, c, b~ or c~ table".into(),
        )),
    }
}

/// [`a_from_b`] on a plain table, checked against the tilde route.
pub fn a_from_b_checked(k: usize, plain: &CoeffTable, tilde: &CoeffTable) -> Result<Rational> {
    let a = a_from_b(k, plain)?;
    let t = a_from_b(k, tilde)?;
    if a != t {
        return Err(Error::Numeric(format!(
            "a_{k}: {} gives {a} but {} gives {t}",
            plain.method, tilde.method
        )));
    }
    Ok(a)
}

/// The native sequence of `method`, through index `kmax`.
pub fn native_table(method: Method, kmax: usize, exec: Execution) -> CoeffTable {
    match method.native_sequence() {
        Sequence::A => a_table(method, kmax, exec),
        _ => match method {
            Method::ReversionB => b_by_reversion(kmax),
            Method::ReversionC => c_by_reversion(kmax),
            Method::LagrangeB | Method::LagrangeC => lagrange_table(method, kmax, exec),
            Method::RecurrenceB => b_by_recurrence(kmax),
            Method::RecurrenceC => c_by_recurrence(kmax),
            Method::RecurrenceBtilde => btilde_by_recurrence(kmax),
            Method::RecurrenceCtilde => ctilde_by_recurrence(kmax),
            _ => unreachable!(),
        },
    }
}

/// `a_0..=a_kmax` by `method`. Methods producing `b`/`c` sequences go through
/// [`a_from_b`].
pub fn a_table(method: Method, kmax: usize, exec: Execution) -> CoeffTable {
    let values = match method {
        Method::GDerivative => exec.map_range(kmax + 1, a_via_g),
        Method::LDerivative => exec.map_range(kmax + 1, a_via_l),
        Method::S3Sum | Method::D3Sum => {
            let kind = if method == Method::S3Sum {
                AssocKind::Partition
            } else {
                AssocKind::Derangement
            };
            let table = AssocTable::new(kind, 3, 6 * kmax).expect("r = 3");
            exec.map_range(kmax + 1, |k| {
                alternating_assoc_sum(&table, k).expect("table reaches 6k")
            })
        }
        Method::BernoulliExp => stirling_series_exponential(kmax).into_coeffs(),
        _ => {
            let source = native_table(method, 2 * kmax + 1, exec);
            (0..=kmax)
                .map(|k| a_from_b(k, &source).expect("table reaches 2k+1"))
                .collect()
        }
    };
    CoeffTable::new(method, Sequence::A, values)
}

/// A disagreement found by [`cross_validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub check: String,
    pub index: usize,
    #[serde(with = "rational::serde_fraction")]
    pub left: Rational,
    #[serde(with = "rational::serde_fraction")]
    pub right: Rational,
}

/// Outcome of comparing every route against every other.
#[derive(Debug, Clone, Serialize)]
pub struct AgreementReport {
    pub kmax: usize,
    /// `a_0..=a_kmax` per method, in [`Method::ALL`] order.
    pub a_tables: Vec<CoeffTable>,
    pub checks: Vec<String>,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// The agreed value of `a_k`, if every method produced the same one.
    pub fn consensus(&self, k: usize) -> Option<&Rational> {
        let first = self.a_tables.first()?.get(k)?;
        self.a_tables
            .iter()
            .all(|t| t.get(k) == Some(first))
            .then_some(first)
    }
}

fn compare_tables(
    check: &str,
    left: &CoeffTable,
    right: &CoeffTable,
    transform: impl Fn(usize, &Rational) -> Rational,
    out: &mut Vec<Disagreement>,
) {
    for (i, l) in left.iter() {
        match right.get(i) {
            Some(r) => {
                let r = transform(i, r);
                if *l != r {
                    out.push(Disagreement {
                        check: check.to_string(),
                        index: i,
                        left: l.clone(),
                        right: r,
                    });
                }
            }
            None => out.push(Disagreement {
                check: format!("{check} (missing index)"),
                index: i,
                left: l.clone(),
                right: Rational::zero(),
            }),
        }
    }
}

/// Computes `a_0..=a_kmax` by all thirteen methods and the `b`/`c`
/// sequences through `2 kmax + 1` by all of theirs, and records every exact
/// disagreement.
pub fn cross_validate(kmax: usize, exec: Execution) -> AgreementReport {
    let a_tables: Vec<CoeffTable> = Method::ALL
        .iter()
        .map(|&m| a_table(m, kmax, exec))
        .collect();
    let mut checks = Vec::new();
    let mut disagreements = Vec::new();

    let reference = &a_tables[0];
    for t in &a_tables[1..] {
        let name = format!("a: {} == {}", reference.method, t.method);
        compare_tables(&name, reference, t, |_, v| v.clone(), &mut disagreements);
        checks.push(name);
    }
    let identity = |_: usize, v: &Rational| v.clone();
    if reference.get(0) != Some(&Rational::one()) {
        disagreements.push(Disagreement {
            check: "a_0 == 1".into(),
            index: 0,
            left: reference.get(0).cloned().unwrap_or_default(),
            right: Rational::one(),
        });
    }
    checks.push("a_0 == 1".into());

    let depth = 2 * kmax + 1;
    let b = [
        b_by_reversion(depth),
        lagrange_table(Method::LagrangeB, depth, exec),
        b_by_recurrence(depth),
    ];
    let c = [
        c_by_reversion(depth),
        lagrange_table(Method::LagrangeC, depth, exec),
        c_by_recurrence(depth),
    ];
    for family in [&b, &c] {
        for t in &family[1..] {
            let name = format!("{:?}: {} == {}", t.sequence, family[0].method, t.method);
            compare_tables(&name, &family[0], t, identity, &mut disagreements);
            checks.push(name);
        }
    }

    let to_tilde = |i: usize, v: &Rational| v / factorial_q(i);
    let bt = btilde_by_recurrence(depth);
    let ct = ctilde_by_recurrence(depth);
    compare_tables("b~_k == b_k / k!", &bt, &b[0], to_tilde, &mut disagreements);
    compare_tables("c~_k == c_k / k!", &ct, &c[0], to_tilde, &mut disagreements);
    checks.push("b~_k == b_k / k!".into());
    checks.push("c~_k == c_k / k!".into());

    // C - B = x^2/2: EGF coefficients agree except c_2 - b_2 = 1.
    let parity = |i: usize, v: &Rational| {
        if i == 2 {
            v + Rational::one()
        } else {
            v.clone()
        }
    };
    compare_tables(
        "c_k == b_k + [k == 2]",
        &c[0],
        &b[0],
        parity,
        &mut disagreements,
    );
    checks.push("c_k == b_k + [k == 2]".into());

    AgreementReport {
        kmax,
        a_tables,
        checks,
        disagreements,
    }
}
