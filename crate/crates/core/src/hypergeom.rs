//! Generalized hypergeometric series `pFq` and the coefficient sequences
//! `A_n` used by the generating relations.
//!
//! ```text
//! pFq(a_1..a_p; b_1..b_q; x) = sum_n (a_1)_n..(a_p)_n / ((b_1)_n..(b_q)_n) x^n / n!
//! ```

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::exact_arith::{format_rational, parse_rational, pochhammer};
use crate::scalar::Scalar;
use crate::{Error, Rational, Result};

/// Number of consecutive negligible terms required before the float
/// evaluator accepts a partial sum.
pub const STOP_RUN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatOptions {
    /// A term is negligible when `|t| < tol * |partial sum|`.
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for FloatOptions {
    fn default() -> Self {
        Self {
            tol: 1e-15,
            max_terms: 10_000,
        }
    }
}

/// Smallest `k` such that some entry equals `-k`.
fn termination_index<T: Scalar>(params: &[T]) -> Option<u64> {
    params.iter().filter_map(Scalar::nonpositive_integer).min()
}

/// Rejects a lower parameter equal to `-k` unless an upper parameter `-j`
/// with `j < k` ends the series before the pole is reached.
fn validate_lower<T: Scalar>(upper: &[T], lower: &[T], label: &str) -> Result<()> {
    let stop = termination_index(upper);
    for (j, b) in lower.iter().enumerate() {
        if let Some(k) = b.nonpositive_integer() {
            if stop.is_none_or(|s| s >= k) {
                return Err(Error::InvalidParams(format!(
                    "{label}[{j}] = {b} is a non-positive integer and the series does not terminate before it"
                )));
            }
        }
    }
    Ok(())
}

/// Numerator and denominator parameters of a `pFq` series.
#[derive(Debug, Clone, PartialEq)]
pub struct Params<T> {
    numerator: Vec<T>,
    denominator: Vec<T>,
}

impl<T: Scalar> Params<T> {
    pub fn new(numerator: Vec<T>, denominator: Vec<T>) -> Result<Self> {
        validate_lower(&numerator, &denominator, "denominator")?;
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &[T] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[T] {
        &self.denominator
    }

    pub fn p(&self) -> usize {
        self.numerator.len()
    }

    pub fn q(&self) -> usize {
        self.denominator.len()
    }

    /// Index of the last possibly-nonzero term, if the series terminates.
    pub fn terminates_at(&self) -> Option<u64> {
        termination_index(&self.numerator)
    }

    /// `t_{n+1} / t_n` without the factor `x`:
    /// `prod(a_i + n) / (prod(b_j + n) (n + 1))`.
    pub fn term_ratio(&self, n: u64) -> Result<T> {
        let shift = T::from_int(n as i64);
        let mut denom = T::from_int(n as i64 + 1);
        for (j, b) in self.denominator.iter().enumerate() {
            let f = b.clone() + shift.clone();
            if f.is_zero() {
                return Err(Error::ZeroDenominator(format!(
                    "denominator[{j}] + {n} = 0"
                )));
            }
            denom = denom * f;
        }
        let numer = self
            .numerator
            .iter()
            .fold(T::one(), |acc, a| acc * (a.clone() + shift.clone()));
        Ok(numer / denom)
    }

    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<Params<U>> {
        Params::new(
            self.numerator.iter().map(&f).collect(),
            self.denominator.iter().map(&f).collect(),
        )
    }
}

impl Params<Rational> {
    pub fn to_f64(&self) -> Result<Params<f64>> {
        self.convert(f64::from_rational)
    }
}

/// Partial sum of the series through the `x^order` term.
pub fn pfq_eval_exact<T: Scalar>(params: &Params<T>, x: &T, order: usize) -> Result<T> {
    let mut term = T::one();
    let mut sum = T::zero();
    for n in 0..=order {
        sum = sum + term.clone();
        if term.is_zero() || n == order {
            break;
        }
        term = term * params.term_ratio(n as u64)? * x.clone();
    }
    Ok(sum)
}

/// Floating-point sum, stopped once [`STOP_RUN`] consecutive terms are
/// negligible relative to the running sum.
pub fn pfq_eval_float<T: Scalar + Float>(
    params: &Params<T>,
    x: T,
    opts: FloatOptions,
) -> Result<T> {
    if x.is_zero() {
        return Ok(T::one());
    }
    if params.terminates_at().is_none() {
        let (p, q) = (params.p(), params.q());
        if p > q + 1 {
            return Err(Error::DomainError(format!(
                "{p}F{q} diverges for every x != 0"
            )));
        }
        if p == q + 1 && x.abs() >= T::one() {
            return Err(Error::DomainError(format!(
                "{p}F{q} requires |x| < 1, got |x| = {}",
                x.abs()
            )));
        }
    }
    sum_until_negligible(opts, |n| {
        if n == 0 {
            Ok(T::one())
        } else {
            Ok(params.term_ratio(n as u64 - 1)? * x)
        }
    })
}

/// Sums terms produced by ratios: `ratio(0)` is the first term and
/// `ratio(n)` is `t_n / t_{n-1}`. A term that is exactly zero ends the sum.
pub(crate) fn sum_until_negligible<T: Scalar + Float>(
    opts: FloatOptions,
    mut ratio: impl FnMut(usize) -> Result<T>,
) -> Result<T> {
    let tol = T::from(opts.tol).unwrap_or_else(T::epsilon);
    let mut sum = T::zero();
    let mut term = T::one();
    let mut run = 0;
    for n in 0..opts.max_terms {
        term = if n == 0 { ratio(0)? } else { term * ratio(n)? };
        sum = sum + term;
        if term.is_zero() {
            return Ok(sum);
        }
        if term.abs() < tol * sum.abs() {
            run += 1;
            if run >= STOP_RUN {
                return Ok(sum);
            }
        } else {
            run = 0;
        }
    }
    Err(Error::TruncationNotConverged {
        terms: opts.max_terms,
    })
}

/// Sums explicitly given terms with the same stopping rule as
/// [`pfq_eval_float`].
pub(crate) fn sum_terms_until_negligible<T: Scalar + Float>(
    opts: FloatOptions,
    mut term: impl FnMut(usize) -> Result<Option<T>>,
) -> Result<T> {
    let tol = T::from(opts.tol).unwrap_or_else(T::epsilon);
    let mut sum = T::zero();
    let mut run = 0;
    for n in 0..opts.max_terms {
        let Some(t) = term(n)? else {
            return Ok(sum);
        };
        sum = sum + t;
        if t.is_zero() || t.abs() < tol * sum.abs() {
            run += 1;
            if run >= STOP_RUN {
                return Ok(sum);
            }
        } else {
            run = 0;
        }
    }
    Err(Error::TruncationNotConverged {
        terms: opts.max_terms,
    })
}

/// The free coefficient sequence `A_n` of a generating relation.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffSeq<T> {
    /// A finite prefix `A_0, A_1, ...`.
    Explicit(Vec<T>),
    /// `A_n = prod (a_i)_n / prod (h_j)_n`.
    Family { a: Vec<T>, h: Vec<T> },
}

impl<T: Scalar> CoeffSeq<T> {
    /// The constant sequence `A_n = 1`.
    pub fn ones() -> Self {
        CoeffSeq::Family {
            a: Vec::new(),
            h: Vec::new(),
        }
    }

    pub fn family(a: Vec<T>, h: Vec<T>) -> Result<Self> {
        validate_lower(&a, &h, "h")?;
        Ok(CoeffSeq::Family { a, h })
    }

    pub fn value(&self, n: usize) -> Result<T> {
        match self {
            CoeffSeq::Explicit(values) => values.get(n).cloned().ok_or(Error::IndexOutOfRange {
                index: n,
                len: values.len(),
            }),
            CoeffSeq::Family { a, h } => {
                let numer = a
                    .iter()
                    .fold(T::one(), |acc, p| acc * pochhammer(p, n as u64));
                if numer.is_zero() {
                    return Ok(numer);
                }
                let denom = h
                    .iter()
                    .fold(T::one(), |acc, p| acc * pochhammer(p, n as u64));
                if denom.is_zero() {
                    return Err(Error::ZeroDenominator(format!("prod (h_j)_{n} vanishes")));
                }
                Ok(numer / denom)
            }
        }
    }

    /// `A_0, ..., A_{count-1}`.
    pub fn values(&self, count: usize) -> Result<Vec<T>> {
        match self {
            CoeffSeq::Explicit(values) if values.len() < count => Err(Error::IndexOutOfRange {
                index: count - 1,
                len: values.len(),
            }),
            CoeffSeq::Explicit(values) => Ok(values[..count].to_vec()),
            CoeffSeq::Family { .. } => (0..count).map(|n| self.value(n)).collect(),
        }
    }

    /// Like [`CoeffSeq::value`], but an explicit prefix is extended by zeros.
    /// Used where the sequence must be defined for every index.
    pub fn value_or_zero(&self, n: usize) -> Result<T> {
        match self {
            CoeffSeq::Explicit(values) => Ok(values.get(n).cloned().unwrap_or_else(T::zero)),
            CoeffSeq::Family { .. } => self.value(n),
        }
    }

    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<CoeffSeq<U>> {
        match self {
            CoeffSeq::Explicit(values) => Ok(CoeffSeq::Explicit(values.iter().map(f).collect())),
            CoeffSeq::Family { a, h } => {
                CoeffSeq::family(a.iter().map(&f).collect(), h.iter().map(&f).collect())
            }
        }
    }
}

impl CoeffSeq<Rational> {
    pub fn to_f64(&self) -> Result<CoeffSeq<f64>> {
        self.convert(f64::from_rational)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum CoeffSeqJson {
    Explicit(Vec<String>),
    Family { a: Vec<String>, h: Vec<String> },
}

fn to_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn from_strings(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|s| parse_rational(s)).collect()
}

impl Serialize for CoeffSeq<Rational> {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CoeffSeq::Explicit(values) => CoeffSeqJson::Explicit(to_strings(values)),
            CoeffSeq::Family { a, h } => CoeffSeqJson::Family {
                a: to_strings(a),
                h: to_strings(h),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoeffSeq<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match CoeffSeqJson::deserialize(deserializer)? {
            CoeffSeqJson::Explicit(values) => from_strings(&values).map(CoeffSeq::Explicit),
            CoeffSeqJson::Family { a, h } => CoeffSeq::family(
                from_strings(&a).map_err(D::Error::custom)?,
                from_strings(&h).map_err(D::Error::custom)?,
            ),
        }
        .map_err(D::Error::custom)
    }
}
