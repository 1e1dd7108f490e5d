//! Exact truncated formal power series over the rationals.
//!
//! A [`TruncatedSeries`] of order `K` stores the ordinary coefficients of
//! `x^0..=x^K`. Every operation is exact on the retained coefficients; powers
//! above `K` are discarded and never feed back into retained ones. Binary
//! operations require equal orders and reject mismatches instead of silently
//! truncating.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, factorial_q, frac, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from its ordinary coefficients; the order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The identity series `x`, truncated at `order`.
    pub fn x(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// `c * x^power`, which is zero if `power > order`.
    pub fn monomial(c: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Ordinary coefficient of `x^i`. Panics if `i > order`.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exact equality that treats differing orders as an error.
    pub fn checked_eq(&self, other: &Self) -> Result<bool> {
        self.check_order(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    /// Drops every power above `order`. Extending is not possible.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: order,
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    fn require_zero_constant(&self) -> Result<()> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant(self.coeffs[0].to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let k = self.order();
        let mut out = vec![Rational::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=k - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    /// `self^n` for a natural exponent.
    pub fn pow_nat(&self, n: usize) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstant);
        }
        let inv0 = c0.recip();
        let k = self.order();
        let mut h: Vec<Rational> = Vec::with_capacity(k + 1);
        h.push(inv0.clone());
        for n in 1..=k {
            let mut acc = Rational::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &h[n - j];
                }
            }
            h.push(-acc * &inv0);
        }
        Ok(Self { coeffs: h })
    }

    /// Formal derivative. The result has order `K - 1` (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        let k = self.order();
        if k == 0 {
            return Self::zero(0);
        }
        Self::from_fn(k - 1, |i| &self.coeffs[i + 1] * int(i as i64 + 1))
    }

    /// Multiplies by `x^m`, keeping the order.
    pub fn shift_up(&self, m: usize) -> Self {
        Self::from_fn(self.order(), |i| {
            if i >= m {
                self.coeffs[i - m].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Divides by `x^m`; the lowest `m` coefficients must vanish. Order drops by `m`.
    pub fn shift_down(&self, m: usize) -> Result<Self> {
        if m > self.order() {
            return Err(Error::IndexOutOfRange {
                index: m,
                max: self.order(),
            });
        }
        if let Some(i) = self.coeffs[..m].iter().position(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument(format!(
                "cannot divide by x^{m}: coefficient of x^{i} is nonzero"
            )));
        }
        Ok(Self {
            coeffs: self.coeffs[m..].to_vec(),
        })
    }

    /// `self ∘ inner`, truncated at the common order. `inner` must have zero
    /// constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        inner.require_zero_constant()?;
        let k = self.order();
        let mut acc = Self::constant(self.coeffs[k].clone(), k);
        for c in self.coeffs[..k].iter().rev() {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `exp(self)`; requires zero constant term.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let k = self.order();
        let mut h: Vec<Rational> = Vec::with_capacity(k + 1);
        h.push(Rational::one());
        for n in 1..=k {
            let mut acc = Rational::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &h[n - j] * int(j as i64);
                }
            }
            h.push(acc / int(n as i64));
        }
        Ok(Self { coeffs: h })
    }

    /// `log(1 + self)`; requires zero constant term.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let k = self.order();
        let mut g: Vec<Rational> = vec![Rational::zero(); k + 1];
        for n in 1..=k {
            let mut acc = Rational::zero();
            for j in 1..n {
                if !self.coeffs[n - j].is_zero() {
                    acc += &g[j] * &self.coeffs[n - j] * int(j as i64);
                }
            }
            g[n] = &self.coeffs[n] - acc / int(n as i64);
        }
        Ok(Self { coeffs: g })
    }

    /// `self^r` for rational `r`, for a series with constant term 1.
    ///
    /// Uses the recurrence from `f h' = r f' h` with `h(0) = 1`.
    pub fn power_rational(&self, r: &Rational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantNotOne(self.coeffs[0].to_string()));
        }
        let k = self.order();
        let r1 = r + Rational::one();
        let mut h: Vec<Rational> = Vec::with_capacity(k + 1);
        h.push(Rational::one());
        for n in 1..=k {
            let nq = int(n as i64);
            let mut acc = Rational::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    let weight = &r1 * int(j as i64) - &nq;
                    acc += weight * &self.coeffs[j] * &h[n - j];
                }
            }
            h.push(acc / nq);
        }
        Ok(Self { coeffs: h })
    }

    /// Compositional inverse: the series `S` with `S(self(x)) = self(S(x)) = x`.
    ///
    /// Newton iteration `S <- S - (f(S) - x) / f'(S)` in exact arithmetic,
    /// run at doubling working orders: if `S` is correct through `x^m`, one
    /// step at order `2m + 1` makes it correct through `x^(2m+1)`.
    pub fn reversion(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let k = self.order();
        if k == 0 {
            return Ok(Self::zero(0));
        }
        let lead = &self.coeffs[1];
        if lead.is_zero() {
            return Err(Error::ZeroLinear);
        }
        let fprime = self.derivative();

        let mut s = Self::monomial(lead.recip(), 1, 1);
        let mut m = 1;
        while m < k {
            m = (2 * m + 1).min(k);
            let s_m = s.zero_extended(m);
            let residual = self.truncate(m)?.compose(&s_m)?.sub(&Self::x(m))?;
            // f' is only known through x^(K-1); at m = K its top coefficient
            // reaches the correction only above x^K.
            let slope = fprime.zero_extended(m).compose(&s_m)?.recip()?;
            s = s_m.sub(&residual.mul_unchecked(&slope))?;
        }
        Ok(s.zero_extended(k))
    }

    /// Pads with zero coefficients (or truncates) to `order`.
    fn zero_extended(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    /// `n! * [x^n]`: the coefficient in exponential-generating-function form.
    pub fn egf_coefficient(&self, n: usize) -> Result<Rational> {
        self.get(n)
            .map(|c| c * factorial_q(n))
            .ok_or(Error::IndexOutOfRange {
                index: n,
                max: self.order(),
            })
    }

    /// Builds a series from exponential-generating-function coefficients.
    pub fn from_egf(egf: &[Rational]) -> Result<Self> {
        Self::from_coeffs(
            egf.iter()
                .enumerate()
                .map(|(i, c)| c / factorial_q(i))
                .collect(),
        )
    }
}

impl fmt::Display for TruncatedSeries {
    /// Renders as `x - x^2/6 + x^3/36 + O(x^7)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let (num, den) = (a.numer(), a.denom());
            let body = match i {
                0 => num.to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 || num.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{num}*{body}")?;
            }
            if !den.is_one() {
                write!(f, "/{den}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    #[serde(with = "rational::serde_fraction::vec")]
    coeffs: Vec<Rational>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "order {} requires {} coefficients, found {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        Ok(Self {
            coeffs: repr.coeffs,
        })
    }
}

/// `2 (e^x - 1 - x) / x^2`: coefficient `j` is `2 / (j+2)!`.
pub fn normalized_exp_tail(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |j| int(2) / factorial_q(j + 2))
}

/// `2 (x - log(1+x)) / x^2`: coefficient `j` is `2 (-1)^j / (j+2)`.
pub fn normalized_log_tail(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |j| {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        frac(2 * sign, j as i64 + 2)
    })
}

/// `(e^x - 1 - x - x^2/2) / x^2`, so that `1 + 2 g = normalized_exp_tail`.
pub fn exp_remainder_ratio(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |j| {
        if j == 0 {
            Rational::zero()
        } else {
            factorial_q(j + 2).recip()
        }
    })
}

/// `(log(1+x) - x + x^2/2) / x^2`, so that `1 - 2 l = normalized_log_tail`.
pub fn log_remainder_ratio(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |j| {
        if j == 0 {
            Rational::zero()
        } else {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            frac(sign, j as i64 + 2)
        }
    })
}

/// `e^x - sum_{i<r} x^i/i!`.
pub fn exp_truncated_below(r: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |i| {
        if i < r {
            Rational::zero()
        } else {
            factorial_q(i).recip()
        }
    })
}

/// `-log(1-x) - sum_{i<r} x^i/i`.
pub fn neg_log1m_truncated_below(r: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |i| {
        if i < r.max(1) {
            Rational::zero()
        } else {
            frac(1, i as i64)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(v.iter().map(|&(p, q)| frac(p, q)).collect()).unwrap()
    }

    fn listed_b() -> TruncatedSeries {
        s(&[
            (0, 1),
            (1, 1),
            (-1, 6),
            (1, 36),
            (-1, 270),
            (1, 4320),
            (1, 17010),
        ])
    }

    fn listed_c() -> TruncatedSeries {
        s(&[
            (0, 1),
            (1, 1),
            (1, 3),
            (1, 36),
            (-1, 270),
            (1, 4320),
            (1, 17010),
        ])
    }

    #[test]
    fn add_examples() {
        let a = s(&[(1, 1), (1, 1)]);
        let b = s(&[(1, 1), (-1, 1)]);
        assert_eq!(a.add(&b).unwrap(), s(&[(2, 1), (0, 1)]));
        assert_eq!(a.add(&TruncatedSeries::zero(1)).unwrap(), a);
        let half_sq = TruncatedSeries::monomial(frac(1, 2), 2, 6);
        assert_eq!(half_sq.add(&listed_b()).unwrap(), listed_c());
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = TruncatedSeries::one(2);
        let b = TruncatedSeries::one(3);
        assert!(matches!(a.add(&b), Err(Error::OrderMismatch { .. })));
        assert!(a.mul(&b).is_err());
        assert!(a.compose(&TruncatedSeries::x(3)).is_err());
        assert!(a.checked_eq(&b).is_err());
    }

    #[test]
    fn mul_examples() {
        let a = s(&[(1, 1), (1, 1), (0, 1)]);
        let b = s(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.mul(&b).unwrap(), s(&[(1, 1), (0, 1), (-1, 1)]));
        assert_eq!(a.mul(&TruncatedSeries::one(2)).unwrap(), a);

        // x^2 * G = 2(e^x - 1 - x): coefficient i >= 2 is 2/i!
        let k = 10;
        let lhs = TruncatedSeries::monomial(int(1), 2, k)
            .mul(&normalized_exp_tail(k))
            .unwrap();
        let oracle = TruncatedSeries::from_fn(k, |i| {
            if i < 2 {
                int(0)
            } else {
                int(2) / factorial_q(i)
            }
        });
        assert_eq!(lhs, oracle);
        assert_eq!(lhs.coeff(3), &frac(1, 3));
        assert_eq!(lhs.coeff(4), &frac(1, 12));
    }

    #[test]
    fn compose_examples() {
        let f = s(&[(3, 1), (2, 1), (-5, 7), (1, 9)]);
        assert_eq!(f.compose(&TruncatedSeries::x(3)).unwrap(), f);

        let k = 8;
        let geometric = TruncatedSeries::from_fn(k, |_| int(1));
        // x/(1+x) = x - x^2 + x^3 - ...
        let inner = TruncatedSeries::from_fn(k, |i| match i {
            0 => int(0),
            _ if i % 2 == 1 => int(1),
            _ => int(-1),
        });
        let expected = TruncatedSeries::from_fn(k, |i| if i < 2 { int(1) } else { int(0) });
        assert_eq!(geometric.compose(&inner).unwrap(), expected);

        let r = normalized_exp_tail(k)
            .power_rational(&frac(1, 2))
            .unwrap()
            .shift_up(1);
        let back = r.reversion().unwrap().compose(&r).unwrap();
        assert_eq!(back, TruncatedSeries::x(k));
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let f = TruncatedSeries::x(3);
        assert!(matches!(
            f.compose(&TruncatedSeries::one(3)),
            Err(Error::NonZeroConstant(_))
        ));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(
            TruncatedSeries::zero(5).exp().unwrap(),
            TruncatedSeries::one(5)
        );
        let e = TruncatedSeries::x(7).exp().unwrap();
        for i in 0..=7 {
            assert_eq!(e.coeff(i), &factorial_q(i).recip());
        }
        let q = TruncatedSeries::monomial(frac(1, 12), 2, 4).exp().unwrap();
        assert_eq!(q, s(&[(1, 1), (0, 1), (1, 12), (0, 1), (1, 288)]));
        assert!(TruncatedSeries::one(3).exp().is_err());
    }

    #[test]
    fn log1p_examples() {
        assert_eq!(
            TruncatedSeries::zero(4).log1p().unwrap(),
            TruncatedSeries::zero(4)
        );
        let l = TruncatedSeries::x(6).log1p().unwrap();
        for i in 1..=6 {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            assert_eq!(l.coeff(i), &frac(sign, i as i64));
        }
        let c = listed_c();
        let lhs = c.log1p().unwrap();
        let rhs = c.sub(&TruncatedSeries::monomial(frac(1, 2), 2, 6)).unwrap();
        assert_eq!(lhs, rhs);
        assert!(TruncatedSeries::one(2).log1p().is_err());
    }

    #[test]
    fn power_rational_examples() {
        let g = normalized_exp_tail(6);
        assert_eq!(g.power_rational(&int(0)).unwrap(), TruncatedSeries::one(6));
        let inv = normalized_exp_tail(1).power_rational(&int(-1)).unwrap();
        assert_eq!(inv, s(&[(1, 1), (-1, 3)]));
        let sq = s(&[(1, 1), (2, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(
            sq.power_rational(&frac(1, 2)).unwrap(),
            s(&[(1, 1), (1, 1), (0, 1), (0, 1), (0, 1)])
        );
        assert!(matches!(
            s(&[(2, 1), (1, 1)]).power_rational(&frac(1, 2)),
            Err(Error::ConstantNotOne(_))
        ));
    }

    #[test]
    fn power_rational_matches_exp_log() {
        let g = normalized_exp_tail(10);
        let r = frac(-7, 2);
        let via_log = g
            .sub(&TruncatedSeries::one(10))
            .unwrap()
            .log1p()
            .unwrap()
            .scale(&r)
            .exp()
            .unwrap();
        assert_eq!(g.power_rational(&r).unwrap(), via_log);
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(
            TruncatedSeries::x(5).reversion().unwrap(),
            TruncatedSeries::x(5)
        );
        let k = 7;
        let f = TruncatedSeries::from_fn(k, |i| if i == 0 { int(0) } else { int(1) });
        let expected = TruncatedSeries::from_fn(k, |i| match i {
            0 => int(0),
            _ if i % 2 == 1 => int(1),
            _ => int(-1),
        });
        assert_eq!(f.reversion().unwrap(), expected);

        let r = normalized_exp_tail(6)
            .power_rational(&frac(1, 2))
            .unwrap()
            .shift_up(1);
        assert_eq!(r.reversion().unwrap(), listed_b());
    }

    #[test]
    fn reversion_preconditions() {
        assert!(matches!(
            TruncatedSeries::one(3).reversion(),
            Err(Error::NonZeroConstant(_))
        ));
        assert!(matches!(
            TruncatedSeries::monomial(int(1), 2, 3).reversion(),
            Err(Error::ZeroLinear)
        ));
    }

    #[test]
    fn egf_examples() {
        assert_eq!(listed_b().egf_coefficient(3).unwrap(), frac(1, 6));
        assert_eq!(TruncatedSeries::one(0).egf_coefficient(0).unwrap(), int(1));
        assert_eq!(listed_c().egf_coefficient(2).unwrap(), frac(2, 3));
        assert!(matches!(
            listed_b().egf_coefficient(7),
            Err(Error::IndexOutOfRange { index: 7, max: 6 })
        ));
    }

    #[test]
    fn named_series() {
        assert_eq!(
            normalized_exp_tail(3),
            s(&[(1, 1), (1, 3), (1, 12), (1, 60)])
        );
        assert_eq!(
            normalized_log_tail(3),
            s(&[(1, 1), (-2, 3), (1, 2), (-2, 5)])
        );
        assert_eq!(normalized_exp_tail(0), TruncatedSeries::one(0));
        assert_eq!(normalized_log_tail(0), TruncatedSeries::one(0));

        let k = 12;
        let one = TruncatedSeries::one(k);
        assert_eq!(
            one.add(&exp_remainder_ratio(k).scale(&int(2))).unwrap(),
            normalized_exp_tail(k)
        );
        assert_eq!(
            one.sub(&log_remainder_ratio(k).scale(&int(2))).unwrap(),
            normalized_log_tail(k)
        );
    }

    #[test]
    fn log_tail_matches_closed_form() {
        // 2(x - log(1+x))/x^2 built through log1p and a shift.
        let k = 10;
        let x = TruncatedSeries::x(k + 2);
        let body = x.sub(&x.log1p().unwrap()).unwrap().scale(&int(2));
        assert_eq!(body.shift_down(2).unwrap(), normalized_log_tail(k));
    }

    #[test]
    fn derivative_and_shifts() {
        let f = s(&[(1, 1), (1, 1), (1, 2), (1, 6)]);
        assert_eq!(f.derivative(), s(&[(1, 1), (1, 1), (1, 2)]));
        assert_eq!(
            TruncatedSeries::one(0).derivative(),
            TruncatedSeries::zero(0)
        );
        assert!(f.shift_down(1).is_err());
        assert_eq!(f.shift_up(2), s(&[(0, 1), (0, 1), (1, 1), (1, 1)]));
        assert!(f.truncate(5).is_err());
        assert_eq!(f.truncate(1).unwrap(), s(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn recip_and_errors() {
        let f = s(&[(1, 1), (-1, 1), (0, 1), (0, 1)]);
        assert_eq!(f.recip().unwrap(), TruncatedSeries::from_fn(3, |_| int(1)));
        assert_eq!(TruncatedSeries::x(2).recip(), Err(Error::ZeroConstant));
    }

    #[test]
    fn json_shape() {
        let b = listed_b().truncate(3).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(json, r#"{"order":3,"coeffs":["0","1","-1/6","1/36"]}"#);
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, b);
        let bad = r#"{"order":4,"coeffs":["0","1"]}"#;
        assert!(serde_json::from_str::<TruncatedSeries>(bad).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            listed_b().to_string(),
            "x - x^2/6 + x^3/36 - x^4/270 + x^5/4320 + x^6/17010 + O(x^7)"
        );
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(x^2)");
        assert_eq!(s(&[(-3, 2), (2, 3)]).to_string(), "-3/2 + 2*x/3 + O(x^2)");
    }
}
