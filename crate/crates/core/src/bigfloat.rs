//! Binary floating point at an explicit precision, rounding to nearest.
//!
//! Thin wrapper over `astro_float` that carries its working precision along
//! with the value, so every derived quantity can report what it was computed
//! at.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{Consts, Radix, RoundingMode};
use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct BigFloat {
    value: astro_float::BigFloat,
    precision: usize,
}

impl BigFloat {
    fn wrap(value: astro_float::BigFloat, precision: usize) -> Self {
        Self { value, precision }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Decimal digits that `precision` bits can faithfully carry.
    pub fn decimal_digits(precision: usize) -> usize {
        ((precision as f64) * std::f64::consts::LOG10_2)
            .floor()
            .max(1.0) as usize
    }

    pub fn from_u64(v: u64, precision: usize) -> Self {
        Self::wrap(astro_float::BigFloat::from_u64(v, precision), precision)
    }

    pub fn from_f64(v: f64, precision: usize) -> Self {
        Self::wrap(astro_float::BigFloat::from_f64(v, precision), precision)
    }

    pub fn from_bigint(v: &BigInt, precision: usize) -> Self {
        let s = v.to_string();
        let value =
            with_consts(|cc| astro_float::BigFloat::parse(&s, Radix::Dec, precision, RM, cc));
        Self::wrap(value, precision)
    }

    pub fn from_biguint(v: &BigUint, precision: usize) -> Self {
        Self::from_bigint(&BigInt::from(v.clone()), precision)
    }

    /// Rounds an exact rational once per operand and once for the quotient.
    pub fn from_rational(q: &Rational, precision: usize) -> Self {
        let num = Self::from_bigint(q.numer(), precision + 8);
        let den = Self::from_bigint(q.denom(), precision + 8);
        Self::wrap(num.value.div(&den.value, precision, RM), precision)
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_u64(0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::from_u64(1, precision)
    }

    pub fn pi(precision: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(precision, RM)), precision)
    }

    fn p2(&self, other: &Self) -> usize {
        self.precision.min(other.precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p2(other);
        Self::wrap(self.value.add(&other.value, p, RM), p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p2(other);
        Self::wrap(self.value.sub(&other.value, p, RM), p)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.p2(other);
        Self::wrap(self.value.mul(&other.value, p, RM), p)
    }

    pub fn div(&self, other: &Self) -> Self {
        let p = self.p2(other);
        Self::wrap(self.value.div(&other.value, p, RM), p)
    }

    pub fn neg(&self) -> Self {
        Self::wrap(self.value.neg(), self.precision)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.precision)
    }

    pub fn powi(&self, n: usize) -> Self {
        Self::wrap(self.value.powi(n, self.precision, RM), self.precision)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.value.sqrt(self.precision, RM), self.precision)
    }

    pub fn exp(&self) -> Self {
        let p = self.precision;
        Self::wrap(with_consts(|cc| self.value.exp(p, RM, cc)), p)
    }

    pub fn ln(&self) -> Self {
        let p = self.precision;
        Self::wrap(with_consts(|cc| self.value.ln(p, RM, cc)), p)
    }

    pub fn sin(&self) -> Self {
        let p = self.precision;
        Self::wrap(with_consts(|cc| self.value.sin(p, RM, cc)), p)
    }

    pub fn cos(&self) -> Self {
        let p = self.precision;
        Self::wrap(with_consts(|cc| self.value.cos(p, RM, cc)), p)
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf()
    }

    /// Error unless the value is a finite number.
    pub fn finite(self, what: &str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::Numeric(format!("{what} is not finite")))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Scientific notation with `digits` significant digits, e.g. `8.300e-3`.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if !self.is_finite() {
            return if self.value.is_nan() {
                "NaN".into()
            } else {
                self.value.to_string()
            };
        }
        if self.value.is_zero() {
            return format!("{:.*}e0", digits.saturating_sub(1), 0.0);
        }
        let raw = with_consts(|cc| self.value.format(Radix::Dec, RM, cc))
            .unwrap_or_else(|_| self.value.to_string());
        round_sci(&raw, digits.max(1))
    }

    /// Scientific notation with as many digits as the precision supports.
    pub fn to_decimal(&self) -> String {
        self.to_sci_string(Self::decimal_digits(self.precision))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_sci_string(20).parse().unwrap_or(f64::NAN)
    }
}

/// Rounds a `[-]d.ddd...e[+-]N` string to `digits` significant digits,
/// half away from zero.
fn round_sci(raw: &str, digits: usize) -> String {
    let (neg, body) = match raw.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, raw),
    };
    let (mant, exp) = body.split_once(['e', 'E']).unwrap_or((body, "0"));
    let mut exp: i64 = exp.trim_start_matches('+').parse().unwrap_or(0);
    let mut ds: Vec<u8> = mant
        .bytes()
        .filter(u8::is_ascii_digit)
        .map(|b| b - b'0')
        .collect();
    // normalize leading zeros, e.g. "0.0" forms
    while ds.len() > 1 && ds[0] == 0 {
        ds.remove(0);
        exp -= 1;
    }
    if ds.len() > digits {
        let round_up = ds[digits] >= 5;
        ds.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.truncate(digits);
                    exp += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
    }
    ds.resize(digits, 0);
    let mut out = String::with_capacity(digits + 8);
    if neg {
        out.push('-');
    }
    out.push((b'0' + ds[0]) as char);
    if digits > 1 {
        out.push('.');
        out.extend(ds[1..].iter().map(|d| (b'0' + d) as char));
    }
    out.push('e');
    out.push_str(&exp.to_string());
    out
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl Serialize for BigFloat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal())
    }
}
