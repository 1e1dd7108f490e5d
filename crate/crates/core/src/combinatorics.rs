//! Associated Stirling numbers of the second kind and associated derangement
//! numbers.
//!
//! * `S_r(n, k)`: partitions of an `n`-set into `k` blocks, each of size `>= r`.
//! * `d_r(n, k)`: permutations of an `n`-set with `k` cycles, each of length `>= r`.
//!
//! Both have `value(0, 0) = 1`. Three independent routes are provided: memoized
//! recurrences ([`AssocTable`]), coefficient extraction from the exponential
//! generating functions ([`stirling2_from_series`], [`derangement_from_series`])
//! and exhaustive enumeration ([`enumerate_oracle`]).

mod enumerate;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, binomial, factorial, factorial_q, Rational};
use crate::series::{exp_truncated_below, neg_log1m_truncated_below};

pub use enumerate::{enumerate_oracle, ORACLE_MAX_N};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssocKind {
    Partition,
    Derangement,
}

impl fmt::Display for AssocKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AssocKind::Partition => "partition",
            AssocKind::Derangement => "derangement",
        })
    }
}

impl FromStr for AssocKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "partition" | "S" | "stirling" => Ok(AssocKind::Partition),
            "derangement" | "d" => Ok(AssocKind::Derangement),
            _ => Err(Error::Parse(format!("unknown kind {s:?}"))),
        }
    }
}

/// Memoized table of `S_r(n, k)` or `d_r(n, k)` for all `n <= n_max`.
#[derive(Debug, Clone)]
pub struct AssocTable {
    kind: AssocKind,
    r: usize,
    rows: Vec<Vec<BigUint>>,
}

impl AssocTable {
    pub fn new(kind: AssocKind, r: usize, n_max: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument(
                "minimum block size r must be >= 1".into(),
            ));
        }
        // n enters a block/cycle of size exactly r: choose its r-1 companions,
        // and for cycles also their cyclic order.
        let fresh_weight: Vec<BigUint> = (0..=n_max)
            .map(|n| {
                if n < r {
                    return BigUint::zero();
                }
                let choose = binomial(n - 1, r - 1);
                match kind {
                    AssocKind::Partition => choose,
                    AssocKind::Derangement => choose * factorial(r - 1),
                }
            })
            .collect();

        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=n_max {
            let kmax = n / r;
            let mut row = vec![BigUint::zero(); kmax + 1];
            for (k, slot) in row.iter_mut().enumerate().skip(1) {
                // n joins an existing block (k choices) or existing cycle (n-1 positions)
                let grow = match kind {
                    AssocKind::Partition => BigUint::from(k),
                    AssocKind::Derangement => BigUint::from(n - 1),
                };
                let mut v = rows[n - 1].get(k).map(|p| p * grow).unwrap_or_default();
                if let Some(prev) = rows[n - r].get(k - 1) {
                    v += prev * &fresh_weight[n];
                }
                *slot = v;
            }
            rows.push(row);
        }
        Ok(Self { kind, r, rows })
    }

    pub fn kind(&self) -> AssocKind {
        self.kind
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn value(&self, n: usize, k: usize) -> Result<BigUint> {
        let row = self.rows.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            max: self.n_max(),
        })?;
        Ok(row.get(k).cloned().unwrap_or_default())
    }

    /// Same as [`value`](Self::value) but as a rational, for use in sums.
    pub fn value_q(&self, n: usize, k: usize) -> Result<Rational> {
        Ok(rational::from_bigint(BigInt::from(self.value(n, k)?)))
    }

    /// Entries with `k <= n / r` (all others vanish), ordered by `(n, k)`.
    pub fn instances(&self) -> Vec<CombInstance> {
        let mut out = Vec::new();
        for (n, row) in self.rows.iter().enumerate() {
            for (k, value) in row.iter().enumerate() {
                out.push(CombInstance {
                    r: self.r,
                    n,
                    k,
                    value: value.clone(),
                });
            }
        }
        out
    }
}

/// One table entry; serializes as `{"r":..,"n":..,"k":..,"value":"..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombInstance {
    pub r: usize,
    pub n: usize,
    pub k: usize,
    #[serde(with = "biguint_string")]
    pub value: BigUint,
}

mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

pub fn stirling2_assoc(r: usize, n: usize, k: usize) -> Result<BigUint> {
    AssocTable::new(AssocKind::Partition, r, n)?.value(n, k)
}

pub fn derangement_assoc(r: usize, n: usize, k: usize) -> Result<BigUint> {
    AssocTable::new(AssocKind::Derangement, r, n)?.value(n, k)
}

fn egf_power_coefficient(
    base: crate::series::TruncatedSeries,
    l: usize,
    j: usize,
    order: usize,
) -> Result<BigUint> {
    if l > order {
        return Err(Error::IndexOutOfRange {
            index: l,
            max: order,
        });
    }
    let c = base.pow_nat(j).coeff(l) * factorial_q(l) / factorial_q(j);
    nonnegative_integer(&c)
}

fn nonnegative_integer(c: &Rational) -> Result<BigUint> {
    if !c.is_integer() || c.is_negative() {
        return Err(Error::Numeric(format!(
            "expected a nonnegative integer, got {c}"
        )));
    }
    Ok(c.to_integer().magnitude().clone())
}

/// `l! [x^l] (e^x - sum_{i<r} x^i/i!)^j / j!`, which equals `S_r(l, j)`.
pub fn stirling2_from_series(r: usize, l: usize, j: usize, order: usize) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    egf_power_coefficient(exp_truncated_below(r, order), l, j, order)
}

/// `l! [x^l] (-log(1-x) - sum_{1<=i<r} x^i/i)^j / j!`, which equals `d_r(l, j)`.
pub fn derangement_from_series(r: usize, l: usize, j: usize, order: usize) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    egf_power_coefficient(neg_log1m_truncated_below(r, order), l, j, order)
}

/// Bernoulli numbers `B_0..=B_m_max` with `B_1 = -1/2`, from
/// `sum_{j=0}^{m} binom(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(m_max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m_max + 1);
    b.push(Rational::one());
    for m in 1..=m_max {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += bj * rational::from_bigint(BigInt::from(binomial(m + 1, j)));
            }
        }
        b.push(-acc / rational::int(m as i64 + 1));
    }
    b
}

pub fn bernoulli(m: usize) -> Rational {
    bernoulli_numbers(m).pop().unwrap_or_else(Rational::one)
}
