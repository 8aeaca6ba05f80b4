//! Rising factorials, factorials and binomial coefficients, plus the
//! rational text format used on the command line and in JSON.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;
use crate::{Error, Rational, Result};

/// Rising factorial `(alpha)_n = alpha (alpha+1) ... (alpha+n-1)`, with
/// `(alpha)_0 = 1`.
pub fn pochhammer<T: Scalar>(alpha: &T, n: u64) -> T {
    let mut acc = T::one();
    let mut factor = alpha.clone();
    for _ in 0..n {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

pub fn factorial<T: Scalar>(n: u64) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_int(k as i64))
}

/// Coefficient of `x^k` in the binomial series of `(1+x)^alpha`, i.e.
/// `(-1)^k (-alpha)_k / k!`.
pub fn gen_binomial<T: Scalar>(alpha: &T, k: u64) -> T {
    let mut acc = T::one();
    for j in 0..k {
        let j = T::from_int(j as i64);
        acc = acc * (alpha.clone() - j.clone()) / (j + T::one());
    }
    acc
}

/// A rising factorial `(base)_count` as a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochhammerArg {
    pub base: Rational,
    pub count: u64,
}

impl PochhammerArg {
    pub fn new(base: Rational, count: u64) -> Self {
        Self { base, count }
    }

    pub fn eval(&self) -> Rational {
        pochhammer(&self.base, self.count)
    }
}

/// Checks `(alpha)_{m+n} = (alpha)_m (alpha+m)_n`.
pub fn poch_shift_identity_check(alpha: &Rational, m: u64, n: u64) -> bool {
    let shifted = alpha + Rational::from_integer(BigInt::from(m));
    pochhammer(alpha, m + n) == pochhammer(alpha, m) * pochhammer(&shifted, n)
}

/// Checks `(a)_{2n} = 4^n (a/2)_n ((a+1)/2)_n`.
pub fn duplication_identity_check(a: &Rational, n: u64) -> bool {
    let half = Rational::half();
    let lower = a * &half;
    let upper = (a + Rational::one()) * &half;
    let four_n = Rational::from_integer(BigInt::from(4u32).pow(n as u32));
    pochhammer(a, 2 * n) == four_n * pochhammer(&lower, n) * pochhammer(&upper, n)
}

fn require_ordered(m: u64, n: u64) -> Result<()> {
    if m > n {
        Err(Error::InvalidArgument(format!(
            "outer index m = {m} exceeds n = {n}; the rising factorial count would be negative"
        )))
    } else {
        Ok(())
    }
}

/// `(2d + 2m - 1)_{2n - 2m + 1}`, the rising factorial appearing in the raw
/// coefficient of `x^{2n}`.
pub fn shifted_rising<T: Scalar>(d: &T, m: u64, n: u64) -> Result<T> {
    require_ordered(m, n)?;
    let two = T::from_int(2);
    let base = two.clone() * d.clone() + two * T::from_int(m as i64) - T::one();
    Ok(pochhammer(&base, 2 * (n - m) + 1))
}

/// The same quantity as [`shifted_rising`] written as
/// `(2d-1) 4^{n-m} (d)_n (d+1/2)_n / ((d)_m (d-1/2)_m)`.
///
/// The gamma ratio `G(2d)/G(2d-1)` is carried as the factor `2d-1`.
pub fn shifted_rising_factored<T: Scalar>(d: &T, m: u64, n: u64) -> Result<T> {
    require_ordered(m, n)?;
    let half = T::half();
    let denom = pochhammer(d, m) * pochhammer(&(d.clone() - half.clone()), m);
    if crate::scalar::is_zero(&denom) {
        return Err(Error::ZeroDenominator(format!(
            "(d)_m (d-1/2)_m vanishes for d = {d}, m = {m}"
        )));
    }
    let numer = (T::from_int(2) * d.clone() - T::one())
        * pow4::<T>(n - m)
        * pochhammer(d, n)
        * pochhammer(&(d.clone() + half), n);
    Ok(numer / denom)
}

/// `(2n-2m+1)!` written as `4^n (3/2)_n n! / (4^m (-n)_m (-n-1/2)_m)`.
pub fn odd_factorial_factored<T: Scalar>(n: u64, m: u64) -> Result<T> {
    require_ordered(m, n)?;
    let neg_n = -T::from_int(n as i64);
    let denom = pochhammer(&neg_n, m) * pochhammer(&(neg_n.clone() - T::half()), m);
    if crate::scalar::is_zero(&denom) {
        return Err(Error::ZeroDenominator(format!(
            "(-n)_m (-n-1/2)_m vanishes for n = {n}, m = {m}"
        )));
    }
    let three_halves = T::from_int(3) * T::half();
    Ok(pow4::<T>(n - m) * pochhammer(&three_halves, n) * factorial::<T>(n) / denom)
}

/// Checks `(2n-2m+1)! = 4^n (3/2)_n n! / (4^m (-n)_m (-n-1/2)_m)` exactly.
pub fn odd_factorial_identity_check(n: u64, m: u64) -> Result<bool> {
    let factored: Rational = odd_factorial_factored(n, m)?;
    Ok(factorial::<Rational>(2 * (n - m) + 1) == factored)
}

fn pow4<T: Scalar>(k: u64) -> T {
    (0..k).fold(T::one(), |acc, _| acc * T::from_int(4))
}

/// Parses `"p/q"` or `"p"`, with an optional sign on `p` only.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not a rational of the form p/q or p"));
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (text, None),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = match denom {
        Some(q) if q.starts_with(['+', '-']) => return Err(bad()),
        Some(q) => q.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(format!(
            "`{text}` has a zero denominator"
        )));
    }
    debug_assert!(denom.is_positive());
    Ok(Rational::new(numer, denom))
}

/// Parses a comma-separated list of rationals; the empty string is the
/// empty list.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Serde helpers writing exact values as `"p/q"` strings.
pub mod rational_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational};
    use crate::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Like [`rational_text`], for vectors.
pub mod rational_text_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{format_rational, parse_rational};
    use crate::Rational;

    pub fn serialize<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
        values
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(deserializer)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        q(n, 1)
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&q(7, 5), 0), int(1));
        assert_eq!(pochhammer(&int(1), 5), int(120));
        assert_eq!(pochhammer(&q(3, 2), 3), q(105, 8));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
        assert_eq!(pochhammer(&3.0f64, 2), 12.0);
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial::<Rational>(0), int(1));
        assert_eq!(factorial::<Rational>(5), int(120));
        assert_eq!(factorial::<Rational>(12), int(479_001_600));
    }

    #[test]
    fn gen_binomial_values() {
        assert_eq!(gen_binomial(&q(5, 3), 0), int(1));
        assert_eq!(gen_binomial(&int(-2), 3), int(-4));
        assert_eq!(gen_binomial(&q(1, 2), 2), q(-1, 8));
        assert_eq!(gen_binomial(&int(3), 5), int(0));
    }

    #[test]
    fn shift_identity_examples() {
        assert!(poch_shift_identity_check(&q(7, 3), 2, 3));
        assert!(poch_shift_identity_check(&q(-5, 4), 0, 6));
        assert!(poch_shift_identity_check(&int(-2), 1, 4));
    }

    #[test]
    fn shifted_rising_examples() {
        assert_eq!(shifted_rising(&int(1), 0, 1).unwrap(), int(6));
        assert_eq!(shifted_rising(&int(1), 1, 1).unwrap(), int(3));
        assert_eq!(shifted_rising(&q(1, 4), 0, 0).unwrap(), q(-1, 2));
        assert!(matches!(
            shifted_rising(&int(1), 2, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn shifted_rising_factored_examples() {
        assert_eq!(shifted_rising_factored(&int(1), 0, 1).unwrap(), int(6));
        assert_eq!(shifted_rising_factored(&int(1), 1, 1).unwrap(), int(3));
        assert_eq!(shifted_rising_factored(&q(1, 2), 0, 0).unwrap(), int(0));
        assert!(matches!(
            shifted_rising_factored(&q(1, 2), 1, 3),
            Err(Error::ZeroDenominator(_))
        ));
        assert!(matches!(
            shifted_rising_factored(&int(-1), 2, 3),
            Err(Error::ZeroDenominator(_))
        ));
        assert!(matches!(
            shifted_rising_factored(&int(1), 3, 2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn odd_factorial_examples() {
        assert!(odd_factorial_identity_check(1, 0).unwrap());
        assert!(odd_factorial_identity_check(1, 1).unwrap());
        assert!(odd_factorial_identity_check(0, 0).unwrap());
        assert!(odd_factorial_identity_check(1, 2).is_err());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/2").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_rational(" +1/3 ").unwrap(), q(1, 3));
        assert!(matches!(
            parse_rational("1/0"),
            Err(Error::ZeroDenominator(_))
        ));
        assert!(parse_rational("3/-2").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&q(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(0)), "0");
        assert_eq!(parse_rational_list("").unwrap(), vec![]);
        assert_eq!(
            parse_rational_list("1/2, 1").unwrap(),
            vec![q(1, 2), int(1)]
        );
    }
}
