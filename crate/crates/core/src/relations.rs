//! Both sides of the Bailey quadratic identities and of the Exton and Malani
//! generating relations.
//!
//! * `BaileyHalf`: `2F1(a, a+1/2; 1/2; x^2) = [(1+x)^{-2a} + (1-x)^{-2a}] / 2`
//! * `BaileyThreeHalf`: `2F1(a, a+1/2; 3/2; x^2) = [(1+x)^{1-2a} - (1-x)^{1-2a}] / (2x(1-2a))`
//! * `Exton`: the generating relation with lower parameter `1/2`
//! * `Malani`: its contiguous companion with lower parameter `3/2`
//!
//! Left-hand sides are expanded from their double-sum definition. Right-hand
//! sides are assembled term by term in the outer index `n`, each term being a
//! binomial series times `x^{2n}`, so the exact expansion is finite at every
//! truncation order.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::exact_arith::{factorial, pochhammer, rational_text};
use crate::hypergeom::{
    pfq_eval_float, sum_terms_until_negligible, CoeffSeq, FloatOptions, Params,
};
use crate::power_series::{binomial_series, Series, Sign};
use crate::scalar::Scalar;
use crate::{Error, Rational, Result};

/// Below this `|1 - 2d|` the float evaluator refuses the Malani prefactor.
pub const SINGULAR_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationId {
    BaileyHalf,
    BaileyThreeHalf,
    Exton,
    Malani,
}

impl RelationId {
    pub const ALL: [RelationId; 4] = [
        RelationId::BaileyHalf,
        RelationId::BaileyThreeHalf,
        RelationId::Exton,
        RelationId::Malani,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::BaileyHalf => "bailey-half",
            RelationId::BaileyThreeHalf => "bailey-threehalf",
            RelationId::Exton => "exton",
            RelationId::Malani => "malani",
        }
    }

    /// Whether `y` and `A` take part in the relation.
    pub fn uses_sequence(self) -> bool {
        matches!(self, RelationId::Exton | RelationId::Malani)
    }

    /// The lower parameter `c` of the left-hand side (`1/2` or `3/2`).
    fn lower<T: Scalar>(self) -> T {
        match self {
            RelationId::BaileyHalf | RelationId::Exton => T::half(),
            RelationId::BaileyThreeHalf | RelationId::Malani => T::from_int(3) * T::half(),
        }
    }

    /// `+1/2` for the Exton inner factor `(-n+1/2)_m`, `-1/2` for the Malani
    /// factor `(-n-1/2)_m`.
    fn inner_shift<T: Scalar>(self) -> T {
        match self {
            RelationId::Malani | RelationId::BaileyThreeHalf => -T::half(),
            RelationId::Exton | RelationId::BaileyHalf => T::half(),
        }
    }

    fn has_singular_prefactor(self) -> bool {
        matches!(self, RelationId::BaileyThreeHalf | RelationId::Malani)
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relation `{s}`")))
    }
}

/// `(d, y, A)`. For the Bailey relations `d` is the parameter `a` and the
/// other two fields are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationParams<T> {
    pub d: T,
    pub y: T,
    pub a: CoeffSeq<T>,
}

impl<T: Scalar> RelationParams<T> {
    pub fn new(d: T, y: T, a: CoeffSeq<T>) -> Self {
        Self { d, y, a }
    }

    /// Parameters for a Bailey identity: `y = 0`, `A_n = 1`.
    pub fn bailey(a: T) -> Self {
        Self {
            d: a,
            y: T::zero(),
            a: CoeffSeq::ones(),
        }
    }

    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<RelationParams<U>> {
        Ok(RelationParams {
            d: f(&self.d),
            y: f(&self.y),
            a: self.a.convert(&f)?,
        })
    }
}

impl RelationParams<Rational> {
    pub fn to_f64(&self) -> Result<RelationParams<f64>> {
        self.convert(f64::from_rational)
    }
}

/// Deliberate corruptions of the Malani relation, used to show that the
/// verifier detects errors at the first affected degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Right-hand prefactor `1/(2x(1+2d))` instead of `1/(2x(1-2d))`.
    MalaniPrefactor,
    /// Left-hand inner factor `(-n+1/2)_m` instead of `(-n-1/2)_m`.
    MalaniInnerFactor,
}

fn singular_prefactor_check<T: Scalar>(rel: RelationId, d: &T) -> Result<()> {
    let gap = T::one() - T::from_int(2) * d.clone();
    if rel.has_singular_prefactor() && gap.is_zero() {
        return Err(Error::SingularPrefactor(format!(
            "{rel} needs 1 - 2d != 0, got d = {d}"
        )));
    }
    Ok(())
}

/// `y^n`, with `0^0 = 1`.
fn power<T: Scalar>(base: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, _| acc * base.clone())
}

/// Coefficient of `x^{2n}` in the left-hand double sum
/// `(d)_n (d+1/2)_n / ((c)_n n!) * sum_m A_m (-n)_m (-n+shift)_m y^m / m!`.
fn double_sum_coefficient<T: Scalar>(
    d: &T,
    y: &T,
    lower: &T,
    shift: &T,
    n: usize,
    a_at: &dyn Fn(usize) -> Result<T>,
) -> Result<T> {
    let nn = n as u64;
    let prefactor = pochhammer(d, nn) * pochhammer(&(d.clone() + T::half()), nn)
        / (pochhammer(lower, nn) * factorial::<T>(nn));
    let neg_n = -T::from_usize(n);
    let mut factor = T::one();
    let mut inner = T::zero();
    for m in 0..=n {
        if factor.is_zero() {
            break;
        }
        inner = inner + a_at(m)? * factor.clone();
        let mm = T::from_usize(m);
        factor = factor
            * (neg_n.clone() + mm.clone())
            * (neg_n.clone() + shift.clone() + mm.clone())
            * y.clone()
            / (mm + T::one());
    }
    Ok(prefactor * inner)
}

fn lhs_coefficient_with<T: Scalar>(
    rel: RelationId,
    p: &RelationParams<T>,
    n: usize,
    mutation: Option<Mutation>,
    a_at: &dyn Fn(usize) -> Result<T>,
) -> Result<T> {
    let lower = rel.lower::<T>();
    let mut shift = rel.inner_shift::<T>();
    if rel == RelationId::Malani && mutation == Some(Mutation::MalaniInnerFactor) {
        shift = -shift;
    }
    if rel.uses_sequence() {
        double_sum_coefficient(&p.d, &p.y, &lower, &shift, n, a_at)
    } else {
        let one = T::one();
        double_sum_coefficient(&p.d, &T::zero(), &lower, &shift, n, &|_| Ok(one.clone()))
    }
}

/// Coefficient of `x^{2n}` of the left-hand side (odd coefficients vanish).
pub fn lhs_coefficient<T: Scalar>(rel: RelationId, p: &RelationParams<T>, n: usize) -> Result<T> {
    lhs_coefficient_with(rel, p, n, None, &|m| p.a.value(m))
}

fn bailey_lhs_series<T: Scalar>(rel: RelationId, a: &T, order: usize) -> Result<Series<T>> {
    let params = Params::new(
        vec![a.clone(), a.clone() + T::half()],
        vec![rel.lower::<T>()],
    )?;
    let mut coeffs = vec![T::zero(); order + 1];
    let mut term = T::one();
    for n in 0..=order / 2 {
        coeffs[2 * n] = term.clone();
        term = term * params.term_ratio(n as u64)?;
    }
    Ok(Series::from_coeffs(coeffs))
}

fn lhs_series_with<T: Scalar>(
    rel: RelationId,
    p: &RelationParams<T>,
    order: usize,
    mutation: Option<Mutation>,
) -> Result<Series<T>> {
    if !rel.uses_sequence() {
        return bailey_lhs_series(rel, &p.d, order);
    }
    let mut coeffs = vec![T::zero(); order + 1];
    for n in 0..=order / 2 {
        coeffs[2 * n] = lhs_coefficient_with(rel, p, n, mutation, &|m| p.a.value(m))?;
    }
    Ok(Series::from_coeffs(coeffs))
}

/// Exact expansion of the left-hand side through `x^order`.
pub fn lhs_series<T: Scalar>(
    rel: RelationId,
    p: &RelationParams<T>,
    order: usize,
) -> Result<Series<T>> {
    lhs_series_with(rel, p, order, None)
}

/// `(1+x)^e + (1-x)^e` or `(1+x)^e - (1-x)^e`.
fn binomial_pair<T: Scalar>(exponent: &T, order: usize, subtract: bool) -> Result<Series<T>> {
    let plus = binomial_series(exponent, Sign::Plus, order);
    let minus = binomial_series(exponent, Sign::Minus, order);
    if subtract {
        plus.try_sub(&minus)
    } else {
        plus.try_add(&minus)
    }
}

/// `sum_n A_n (d)_n (d + shift)_n / n! y^n x^{2n} [(1+x)^{e-2n} +/- (1-x)^{e-2n}]`
/// through `x^order`, where `e` is `base_exponent`.
fn outer_sum<T: Scalar>(
    p: &RelationParams<T>,
    shift: &T,
    base_exponent: &T,
    subtract: bool,
    order: usize,
) -> Result<Series<T>> {
    let mut acc = Series::zero(order);
    let lowest = if subtract { 1 } else { 0 };
    for n in 0.. {
        if 2 * n + lowest > order {
            break;
        }
        let y_n = power(&p.y, n);
        if y_n.is_zero() {
            break;
        }
        let nn = n as u64;
        let weight =
            p.a.value(n)? * pochhammer(&p.d, nn) * pochhammer(&(p.d.clone() + shift.clone()), nn)
                / factorial::<T>(nn)
                * y_n;
        if weight.is_zero() {
            continue;
        }
        let exponent = base_exponent.clone() - T::from_usize(2 * n);
        let term = binomial_pair(&exponent, order, subtract)?
            .shift_up(2 * n)
            .scale(&weight);
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}

/// `(1/(2x)) [(1+x)^{1-2d} S_+ - (1-x)^{1-2d} S_-]` with
/// `S_+- = sum_n A_n (d)_n (d-1/2)_n / n! (x^2 y / (1 +- x)^2)^n`,
/// expanded through `x^order`.
///
/// The bracket is built one degree higher and must be odd; its even part is
/// checked to vanish before dividing by `x`.
pub fn odd_kernel_series<T: Scalar>(p: &RelationParams<T>, order: usize) -> Result<Series<T>> {
    let base = T::one() - T::from_int(2) * p.d.clone();
    let bracket = outer_sum(p, &-T::half(), &base, true, order + 1)?;
    Ok(bracket.odd_part_over_x()?.scale(&T::half()))
}

/// `(1/2) [(1+x)^{-2d} S_+ + (1-x)^{-2d} S_-]` with
/// `S_+- = sum_n A_n (d)_n (d+1/2)_n / n! (x^2 y / (1 +- x)^2)^n`.
pub fn even_kernel_series<T: Scalar>(p: &RelationParams<T>, order: usize) -> Result<Series<T>> {
    let base = -T::from_int(2) * p.d.clone();
    Ok(outer_sum(p, &T::half(), &base, false, order)?.scale(&T::half()))
}

fn rhs_series_with<T: Scalar>(
    rel: RelationId,
    p: &RelationParams<T>,
    order: usize,
    mutation: Option<Mutation>,
) -> Result<Series<T>> {
    singular_prefactor_check(rel, &p.d)?;
    let two_d = T::from_int(2) * p.d.clone();
    match rel {
        RelationId::BaileyHalf => Ok(binomial_pair(&-two_d, order, false)?.scale(&T::half())),
        RelationId::BaileyThreeHalf => {
            let gap = T::one() - two_d;
            let bracket = binomial_pair(&gap, order + 1, true)?;
            Ok(bracket
                .odd_part_over_x()?
                .scale(&(T::one() / (T::from_int(2) * gap))))
        }
        RelationId::Exton => even_kernel_series(p, order),
        RelationId::Malani => {
            let gap = if mutation == Some(Mutation::MalaniPrefactor) {
                T::one() + two_d
            } else {
                T::one() - two_d
            };
            if gap.is_zero() {
                return Err(Error::SingularPrefactor(format!(
                    "mutated prefactor is singular at d = {}",
                    p.d
                )));
            }
            Ok(odd_kernel_series(p, order)?.scale(&(T::one() / gap)))
        }
    }
}

/// Exact expansion of the right-hand side through `x^order`.
pub fn rhs_series<T: Scalar>(
    rel: RelationId,
    p: &RelationParams<T>,
    order: usize,
) -> Result<Series<T>> {
    rhs_series_with(rel, p, order, None)
}

/// Parameters as recorded in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(with = "rational_text")]
    pub d: Rational,
    #[serde(with = "rational_text")]
    pub y: Rational,
    #[serde(rename = "A")]
    pub a: CoeffSeq<Rational>,
}

impl From<&RelationParams<Rational>> for ReportParams {
    fn from(p: &RelationParams<Rational>) -> Self {
        Self {
            d: p.d.clone(),
            y: p.y.clone(),
            a: p.a.clone(),
        }
    }
}

/// First disagreement found by a verifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Mismatch {
    /// Coefficient of `x^degree` on the two sides of a relation.
    Sides {
        degree: usize,
        #[serde(with = "rational_text")]
        lhs: Rational,
        #[serde(with = "rational_text")]
        rhs: Rational,
    },
    /// The three computations of the coefficient of `x^{2n}` in the odd
    /// kernel.
    Paths {
        n: usize,
        #[serde(with = "rational_text")]
        extracted: Rational,
        #[serde(with = "rational_text")]
        closed_form: Rational,
        #[serde(with = "rational_text")]
        simplified: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub relation: String,
    pub params: ReportParams,
    pub order: usize,
    #[serde(rename = "match")]
    pub matched: bool,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: f64,
}

/// Expands both sides exactly and compares every coefficient through
/// `x^order`.
pub fn verify_relation(
    rel: RelationId,
    p: &RelationParams<Rational>,
    order: usize,
) -> Result<VerificationReport> {
    verify_relation_mutated(rel, p, order, None)
}

/// [`verify_relation`] with an optional deliberate corruption of one side.
pub fn verify_relation_mutated(
    rel: RelationId,
    p: &RelationParams<Rational>,
    order: usize,
    mutation: Option<Mutation>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let lhs = lhs_series_with(rel, p, order, mutation)?;
    let rhs = rhs_series_with(rel, p, order, mutation)?;
    let first_mismatch = lhs
        .coeffs()
        .iter()
        .zip(rhs.coeffs())
        .enumerate()
        .find(|(_, (l, r))| l != r)
        .map(|(degree, (l, r))| Mismatch::Sides {
            degree,
            lhs: l.clone(),
            rhs: r.clone(),
        });
    Ok(VerificationReport {
        relation: rel.name().to_string(),
        params: p.into(),
        order,
        matched: first_mismatch.is_none(),
        first_mismatch,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// `sum_n A_n (d)_n (d+shift)_n / n! z^n` in floating point.
fn inner_series_float<T: Scalar + Float>(
    p: &RelationParams<T>,
    shift: T,
    z: T,
    opts: FloatOptions,
) -> Result<T> {
    match &p.a {
        CoeffSeq::Explicit(values) => {
            let mut sum = T::zero();
            let mut weight = T::one();
            for (n, a_n) in values.iter().enumerate() {
                sum = sum + *a_n * weight;
                let nf = T::from_usize(n);
                weight = weight * (p.d + nf) * (p.d + shift + nf) * z / (nf + T::one());
            }
            Ok(sum)
        }
        CoeffSeq::Family { a, h } => {
            let mut upper = a.clone();
            upper.extend([p.d, p.d + shift]);
            pfq_eval_float(&Params::new(upper, h.clone())?, z, opts)
        }
    }
}

fn rhs_float<T: Scalar + Float>(
    rel: RelationId,
    p: &RelationParams<T>,
    x: T,
    opts: FloatOptions,
) -> Result<T> {
    let one = T::one();
    let two = T::from_int(2);
    let half = T::half();
    let d = p.d;
    match rel {
        RelationId::BaileyHalf => Ok(half * ((one + x).powf(-two * d) + (one - x).powf(-two * d))),
        RelationId::BaileyThreeHalf if x.is_zero() => Ok(one),
        RelationId::BaileyThreeHalf => {
            let gap = one - two * d;
            Ok(((one + x).powf(gap) - (one - x).powf(gap)) / (two * x * gap))
        }
        RelationId::Exton => {
            let zp = x * x * p.y / ((one + x) * (one + x));
            let zm = x * x * p.y / ((one - x) * (one - x));
            let sp = inner_series_float(p, half, zp, opts)?;
            let sm = inner_series_float(p, half, zm, opts)?;
            Ok(half * ((one + x).powf(-two * d) * sp + (one - x).powf(-two * d) * sm))
        }
        RelationId::Malani => {
            let zp = x * x * p.y / ((one + x) * (one + x));
            let zm = x * x * p.y / ((one - x) * (one - x));
            let sp = inner_series_float(p, -half, zp, opts)?;
            let sm = inner_series_float(p, -half, zm, opts)?;
            if x.is_zero() {
                return p.a.value_or_zero(0);
            }
            let gap = one - two * d;
            Ok(((one + x).powf(gap) * sp - (one - x).powf(gap) * sm) / (two * x * gap))
        }
    }
}

fn lhs_float<T: Scalar + Float>(
    rel: RelationId,
    p: &RelationParams<T>,
    x: T,
    opts: FloatOptions,
) -> Result<T> {
    let x2 = x * x;
    if !rel.uses_sequence() {
        let params = Params::new(vec![p.d, p.d + T::half()], vec![rel.lower::<T>()])?;
        return pfq_eval_float(&params, x2, opts);
    }
    let mut x_pow = T::one();
    sum_terms_until_negligible(opts, |n| {
        let c = lhs_coefficient_with(rel, p, n, None, &|m| p.a.value_or_zero(m))?;
        let term = c * x_pow;
        x_pow = x_pow * x2;
        if x_pow.is_zero() && n > 0 {
            return Ok(None);
        }
        Ok(Some(term))
    })
}

/// Evaluates both sides in floating point at `x`, returning `(lhs, rhs)`.
///
/// An explicit sequence is treated as zero past its last entry. Family
/// sequences must give a convergent inner series at `x^2 y / (1 +- x)^2`.
pub fn eval_relation_float<T: Scalar + Float>(
    rel: RelationId,
    p: &RelationParams<T>,
    x: T,
    opts: FloatOptions,
) -> Result<(T, T)> {
    if x.abs() >= T::one() {
        return Err(Error::DomainError(format!(
            "relations are evaluated for |x| < 1, got {x}"
        )));
    }
    let gap = (T::one() - T::from_int(2) * p.d).abs();
    if rel.has_singular_prefactor() && gap.magnitude() <= SINGULAR_EPS {
        return Err(Error::SingularPrefactor(format!(
            "|1 - 2d| = {gap} is too small for {rel}"
        )));
    }
    let rhs = rhs_float(rel, p, x, opts)?;
    let lhs = lhs_float(rel, p, x, opts)?;
    Ok((lhs, rhs))
}
