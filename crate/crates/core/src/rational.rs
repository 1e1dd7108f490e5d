//! Exact rational helpers.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. Text form is `"p/q"`, or `"p"`
//! when the denominator is one.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn to_string(q: &Rational) -> String {
    q.to_string()
}

/// Parses `"p/q"` or `"p"` and reduces to lowest terms.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn factorial_q(n: usize) -> Rational {
    from_bigint(BigInt::from(factorial(n)))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generalized binomial coefficient `binom(r, j)` for rational `r`.
pub fn binomial_q(r: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * (r - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// `(2k+1)!! = 1 * 3 * ... * (2k+1)`.
pub fn odd_double_factorial(k: usize) -> BigUint {
    (0..=k as u64).fold(BigUint::one(), |acc, i| acc * (2 * i + 1))
}

pub fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}

/// Serde adapters for rationals as fraction strings.
pub mod serde_fraction {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::super::Rational;
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&q.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| super::super::parse(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(to_string(&frac(2, 4)), "1/2");
        assert_eq!(to_string(&frac(6, -3)), "-2");
        assert_eq!(parse(" -10/4 ").unwrap(), frac(-5, 2));
        assert_eq!(parse("7").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("x/2").is_err());
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let q = parse("3/-6").unwrap();
        assert_eq!(q.numer(), &BigInt::from(-1));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn integer_helpers() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(3, 6), BigUint::zero());
        assert_eq!(odd_double_factorial(0), BigUint::one());
        assert_eq!(odd_double_factorial(3), BigUint::from(105u32));
        assert_eq!(binomial_q(&frac(1, 2), 2), frac(-1, 8));
        assert_eq!(binomial_q(&int(-1), 3), int(-1));
    }
}
