//! Truncated formal power series in one variable.
//!
//! Every series carries its truncation order explicitly and binary operations
//! refuse to combine series of different orders. Narrowing a series is only
//! possible through [`Series::truncate`].

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact_arith::{format_rational, parse_rational};
use crate::scalar::Scalar;
use crate::{Error, Rational, Result};

/// Dense coefficients `c_0, ..., c_N` of a series known modulo `x^{N+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

/// Sign of `x` in a binomial factor `(1 + sign x)^alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl<T: Scalar> Series<T> {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(T::one(), 0, order)
    }

    /// `c x^degree`; vanishes when `degree > order`.
    pub fn monomial(c: T, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// The series whose order is `coeffs.len() - 1`. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series needs at least one coefficient"
        );
        Self { coeffs }
    }

    /// Series of the given order with the given leading coefficients; missing
    /// coefficients are zero and extra ones are dropped.
    pub fn from_prefix(prefix: &[T], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(prefix) {
            *slot = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Result<T> {
        self.coeffs.get(k).cloned().ok_or(Error::DegreeOutOfRange {
            degree: k,
            order: self.order(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Self { coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(Self { coeffs })
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Multiplies by `x^k`, dropping everything pushed past the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, c) in self
            .coeffs
            .iter()
            .enumerate()
            .take((n + 1).saturating_sub(k))
        {
            out.coeffs[i + k] = c.clone();
        }
        out
    }

    /// Keeps degrees `0..=order`. Fails if that would need coefficients the
    /// series does not know.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::DegreeOutOfRange {
                degree: order,
                order: self.order(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Splits into the even part (odd slots zeroed) and the odd part divided
    /// by `x` (coefficient of `x^{2k+1}` moved to degree `2k`). Both keep the
    /// input order.
    pub fn parity_split(&self) -> (Self, Self) {
        let n = self.order();
        let mut even = Self::zero(n);
        let mut odd_shifted = Self::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k % 2 == 0 {
                even.coeffs[k] = c.clone();
            } else {
                odd_shifted.coeffs[k - 1] = c.clone();
            }
        }
        (even, odd_shifted)
    }

    /// Divides a series with vanishing even part by `x`.
    ///
    /// The result has order one less than the input, since the top
    /// coefficient of the quotient is not determined otherwise.
    pub fn odd_part_over_x(&self) -> Result<Self> {
        let (even, odd_shifted) = self.parity_split();
        if let Some(degree) = even.coeffs.iter().position(|c| !c.is_zero()) {
            return Err(Error::ParityViolation { degree });
        }
        odd_shifted.truncate(self.order().saturating_sub(1))
    }

    /// Horner evaluation of the truncated polynomial at `x`.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// `(1 + sign x)^alpha` to the given order. Coefficients follow the ratio
/// `c_{k+1} = c_k (alpha - k) / (k + 1)`, times `sign` per degree.
pub fn binomial_series<T: Scalar>(alpha: &T, sign: Sign, order: usize) -> Series<T> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = T::one();
    for k in 0..=order {
        coeffs.push(c.clone());
        let k = T::from_usize(k);
        c = c * (alpha.clone() - k.clone()) / (k + T::one());
        if sign == Sign::Minus {
            c = -c;
        }
    }
    Series { coeffs }
}

impl<T: Scalar + fmt::Display> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for Series<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Series<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} requires {} coefficients, found {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Series { coeffs })
    }
}
