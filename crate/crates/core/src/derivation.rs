//! Coefficient extraction for the Malani relation.
//!
//! The odd kernel
//! `(1/(2x)) [(1+x)^{1-2d} S_+ - (1-x)^{1-2d} S_-] = sum_n a_n x^{2n}`
//! (see [`odd_kernel_series`]) has its coefficients computed three ways:
//!
//! 1. read off the exact series expansion,
//! 2. the raw closed form
//!    `a_n = -sum_m A_m (d)_m (d-1/2)_m / m! (2d+2m-1)_{2n-2m+1} / (2n-2m+1)! y^m`,
//! 3. the simplified form
//!    `a_n = (1-2d) (d)_n (d+1/2)_n / ((3/2)_n n!) sum_m A_m (-n)_m (-n-1/2)_m y^m / m!`.
//!
//! Entry `n` of a table is the coefficient of `x^{2n}` after the division by
//! `x`, i.e. the coefficient of `x^{2n+1}` before it.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::exact_arith::{factorial, pochhammer, rational_text, rational_text_vec, shifted_rising};
use crate::hypergeom::CoeffSeq;
use crate::relations::{
    odd_kernel_series, Mismatch, RelationParams, ReportParams, VerificationReport,
};
use crate::scalar::Scalar;
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    #[serde(with = "rational_text")]
    pub d: Rational,
    #[serde(with = "rational_text")]
    pub y: Rational,
    #[serde(rename = "A")]
    pub seq: CoeffSeq<Rational>,
    #[serde(rename = "a", with = "rational_text_vec")]
    pub entries: Vec<Rational>,
}

/// Deliberate corruption of the simplified form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivationMutation {
    /// `(1/2)_n` in place of `(3/2)_n`.
    LowerParameterHalf,
}

fn y_power<T: Scalar>(y: &T, m: usize) -> T {
    (0..m).fold(T::one(), |acc, _| acc * y.clone())
}

/// Coefficients `a_0..=a_{n_max}` read off the expanded odd kernel.
pub fn extract_coefficients<T: Scalar>(p: &RelationParams<T>, n_max: usize) -> Result<Vec<T>> {
    let kernel = odd_kernel_series(p, 2 * n_max)?;
    (0..=n_max).map(|n| kernel.coefficient(2 * n)).collect()
}

pub fn extract_a_from_rhs(p: &RelationParams<Rational>, n_max: usize) -> Result<CoefficientTable> {
    Ok(CoefficientTable {
        d: p.d.clone(),
        y: p.y.clone(),
        seq: p.a.clone(),
        entries: extract_coefficients(p, n_max)?,
    })
}

/// The raw closed form, summed term by term.
pub fn a_closed_form<T: Scalar>(p: &RelationParams<T>, n: usize) -> Result<T> {
    let half = T::half();
    let mut sum = T::zero();
    for m in 0..=n {
        let y_m = y_power(&p.y, m);
        if y_m.is_zero() {
            break;
        }
        let mm = m as u64;
        let span = (2 * (n - m) + 1) as u64;
        let term =
            p.a.value(m)? * pochhammer(&p.d, mm) * pochhammer(&(p.d.clone() - half.clone()), mm)
                / factorial::<T>(mm)
                * shifted_rising(&p.d, mm, n as u64)?
                / factorial::<T>(span)
                * y_m;
        sum = sum + term;
    }
    Ok(-sum)
}

/// The simplified form. Requires `(d)_m (d-1/2)_m != 0` for `m <= n`.
pub fn a_simplified<T: Scalar>(p: &RelationParams<T>, n: usize) -> Result<T> {
    a_simplified_with(p, n, None)
}

pub fn a_simplified_mutated<T: Scalar>(
    p: &RelationParams<T>,
    n: usize,
    mutation: DerivationMutation,
) -> Result<T> {
    a_simplified_with(p, n, Some(mutation))
}

fn a_simplified_with<T: Scalar>(
    p: &RelationParams<T>,
    n: usize,
    mutation: Option<DerivationMutation>,
) -> Result<T> {
    let half = T::half();
    let nn = n as u64;
    let d = &p.d;
    if (pochhammer(d, nn) * pochhammer(&(d.clone() - half.clone()), nn)).is_zero() {
        return Err(Error::ZeroDenominator(format!(
            "(d)_m (d-1/2)_m vanishes for some m <= {n} at d = {d}"
        )));
    }
    let lower = match mutation {
        None => T::from_int(3) * half.clone(),
        Some(DerivationMutation::LowerParameterHalf) => half.clone(),
    };
    let prefactor = (T::one() - T::from_int(2) * d.clone())
        * pochhammer(d, nn)
        * pochhammer(&(d.clone() + half.clone()), nn)
        / (pochhammer(&lower, nn) * factorial::<T>(nn));
    let neg_n = -T::from_usize(n);
    let mut sum = T::zero();
    for m in 0..=n {
        let y_m = y_power(&p.y, m);
        if y_m.is_zero() {
            break;
        }
        let mm = m as u64;
        sum = sum
            + p.a.value(m)?
                * pochhammer(&neg_n, mm)
                * pochhammer(&(neg_n.clone() - half.clone()), mm)
                / factorial::<T>(mm)
                * y_m;
    }
    Ok(prefactor * sum)
}

/// Checks that the three computations of `a_n` agree exactly for every
/// `n <= n_max`.
pub fn verify_derivation(p: &RelationParams<Rational>, n_max: usize) -> Result<VerificationReport> {
    verify_derivation_with(p, n_max, None)
}

pub fn verify_derivation_mutated(
    p: &RelationParams<Rational>,
    n_max: usize,
    mutation: DerivationMutation,
) -> Result<VerificationReport> {
    verify_derivation_with(p, n_max, Some(mutation))
}

fn verify_derivation_with(
    p: &RelationParams<Rational>,
    n_max: usize,
    mutation: Option<DerivationMutation>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let extracted = extract_coefficients(p, n_max)?;
    let mut first_mismatch = None;
    for (n, extracted) in extracted.into_iter().enumerate() {
        let closed_form = a_closed_form(p, n)?;
        let simplified = a_simplified_with(p, n, mutation)?;
        if extracted != closed_form || closed_form != simplified {
            first_mismatch = Some(Mismatch::Paths {
                n,
                extracted,
                closed_form,
                simplified,
            });
            break;
        }
    }
    Ok(VerificationReport {
        relation: "derivation".to_string(),
        params: ReportParams::from(p),
        order: n_max,
        matched: first_mismatch.is_none(),
        first_mismatch,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ones(len: usize) -> CoeffSeq<Rational> {
        CoeffSeq::Explicit(vec![q(1, 1); len])
    }

    #[test]
    fn extraction_examples() {
        let p = RelationParams::new(q(1, 1), q(0, 1), ones(4));
        assert_eq!(
            extract_a_from_rhs(&p, 3).unwrap().entries,
            vec![q(-1, 1); 4]
        );

        let p = RelationParams::new(q(0, 1), q(0, 1), ones(3));
        assert_eq!(
            extract_a_from_rhs(&p, 2).unwrap().entries,
            vec![q(1, 1), q(0, 1), q(0, 1)]
        );

        let p = RelationParams::new(
            q(3, 5),
            q(-2, 3),
            CoeffSeq::Explicit(vec![q(0, 1), q(4, 1), q(1, 1)]),
        );
        assert_eq!(extract_a_from_rhs(&p, 2).unwrap().entries[0], q(0, 1));
    }

    #[test]
    fn closed_form_examples() {
        let p = RelationParams::new(q(1, 1), q(0, 1), ones(2));
        assert_eq!(a_closed_form(&p, 1).unwrap(), q(-1, 1));
        let d = q(-7, 4);
        let p = RelationParams::new(d.clone(), q(5, 1), ones(1));
        assert_eq!(a_closed_form(&p, 0).unwrap(), -(q(2, 1) * d - q(1, 1)));
        let p = RelationParams::new(q(1, 1), q(1, 1), ones(2));
        assert_eq!(a_closed_form(&p, 1).unwrap(), q(-5, 2));
    }

    #[test]
    fn simplified_examples() {
        let d = q(4, 9);
        let p = RelationParams::new(d.clone(), q(2, 1), ones(1));
        assert_eq!(a_simplified(&p, 0).unwrap(), q(1, 1) - q(2, 1) * d);
        let p = RelationParams::new(q(1, 1), q(0, 1), ones(2));
        assert_eq!(a_simplified(&p, 1).unwrap(), q(-1, 1));
        let p = RelationParams::new(q(1, 1), q(1, 1), ones(2));
        assert_eq!(a_simplified(&p, 1).unwrap(), q(-5, 2));
    }

    #[test]
    fn simplified_rejects_vanishing_denominator() {
        for d in [q(0, 1), q(1, 2), q(-1, 2), q(-2, 1)] {
            let p = RelationParams::new(d, q(1, 3), ones(6));
            assert!(matches!(
                a_simplified(&p, 5),
                Err(Error::ZeroDenominator(_))
            ));
            // still legal for the other two paths
            assert_eq!(
                extract_coefficients(&p, 5).unwrap()[5],
                a_closed_form(&p, 5).unwrap()
            );
        }
    }

    #[test]
    fn verify_examples() {
        let a = CoeffSeq::family(vec![q(1, 4)], vec![q(5, 6)]).unwrap();
        let p = RelationParams::new(q(2, 3), q(1, 3), a);
        assert!(verify_derivation(&p, 12).unwrap().matched);

        let p = RelationParams::new(q(1, 1), q(0, 1), ones(9));
        assert!(verify_derivation(&p, 8).unwrap().matched);
    }

    #[test]
    fn mutation_detected_at_first_index() {
        let p = RelationParams::new(q(1, 1), q(0, 1), ones(9));
        let report =
            verify_derivation_mutated(&p, 8, DerivationMutation::LowerParameterHalf).unwrap();
        assert!(!report.matched);
        assert!(matches!(
            report.first_mismatch,
            Some(Mismatch::Paths { n: 1, .. })
        ));
    }

    #[test]
    fn table_json_shape() {
        let p = RelationParams::new(q(1, 1), q(0, 1), CoeffSeq::ones());
        let table = extract_a_from_rhs(&p, 3).unwrap();
        let text = serde_json::to_string(&table).unwrap();
        assert_eq!(
            text,
            r#"{"d":"1","y":"0","A":{"family":{"a":[],"h":[]}},"a":["-1","-1","-1","-1"]}"#
        );
        assert_eq!(
            serde_json::from_str::<CoefficientTable>(&text).unwrap(),
            table
        );
    }
}
