mod common;

use common::q;
use genrel::hypergeom::{pfq_eval_exact, pfq_eval_float, CoeffSeq, FloatOptions, Params};
use genrel::sampling::Lcg;
use genrel::{Rational, Scalar};
use proptest::prelude::*;

proptest! {
    #[test]
    fn geometric_partial_sums(n in -9i64..=9, d in 1i64..=9, order in 0usize..=20) {
        let x = q(n, d);
        let mut expected = q(0, 1);
        let mut power = q(1, 1);
        for _ in 0..=order {
            expected += &power;
            power *= &x;
        }
        let geo = Params::new(vec![q(1, 1)], vec![]).unwrap();
        prop_assert_eq!(pfq_eval_exact(&geo, &x, order).unwrap(), expected);
    }

    #[test]
    fn terminating_sums_stabilise(k in 0i64..6, b in 1i64..20, c in 1i64..20, x in -5i64..5) {
        let params = Params::new(vec![q(-k, 1), q(b, 3)], vec![q(c, 4)]).unwrap();
        let x = q(x, 3);
        let at_k = pfq_eval_exact(&params, &x, k as usize).unwrap();
        for extra in 1..5 {
            prop_assert_eq!(&pfq_eval_exact(&params, &x, k as usize + extra).unwrap(), &at_k);
        }
    }

    #[test]
    fn family_ratio_recurrence(
        a in prop::collection::vec((-9i64..=9, 1i64..=9), 0..3),
        h in prop::collection::vec((1i64..=9, 1i64..=9), 0..3),
        n in 0usize..15,
    ) {
        let a: Vec<Rational> = a.into_iter().map(|(p, r)| q(p, r)).collect();
        let h: Vec<Rational> = h.into_iter().map(|(p, r)| q(p, r)).collect();
        let seq = CoeffSeq::family(a.clone(), h.clone()).unwrap();
        let shift = Rational::from_int(n as i64);
        let numer = a.iter().fold(q(1, 1), |acc, v| acc * (v + &shift));
        let denom = h.iter().fold(q(1, 1), |acc, v| acc * (v + &shift));
        prop_assert_eq!(seq.value(n + 1).unwrap() * denom, seq.value(n).unwrap() * numer);
    }
}

/// Parameters drawn from `[-5, 5]` with denominators at least 1/4 away from
/// the poles; draws whose terms cancel by more than a factor 10 are skipped.
#[test]
fn float_matches_exact_on_well_conditioned_draws() {
    let mut rng = Lcg::new(2024);
    let mut accepted = 0;
    let mut worst: f64 = 0.0;
    while accepted < 50 {
        let p = rng.index(4) as usize;
        let qn = (p.saturating_sub(1) + rng.index(2) as usize).min(3);
        let draw = |rng: &mut Lcg| {
            let num = rng.index(81) as i64 - 40;
            q(num, 8)
        };
        let upper: Vec<Rational> = (0..p).map(|_| draw(&mut rng)).collect();
        let lower: Vec<Rational> = (0..qn)
            .map(|_| loop {
                let v = draw(&mut rng);
                let gap = (-v.clone()).round() + v.clone();
                if v > q(0, 1) || gap.magnitude() >= 0.25 {
                    break v;
                }
            })
            .collect();
        let x = q(rng.index(65) as i64 - 32, 64);
        let Ok(exact_params) = Params::new(upper, lower) else {
            continue;
        };
        let float_params = exact_params.to_f64().unwrap();

        // exact partial sum, order chosen so the tail is negligible, plus the
        // cancellation ratio sum|t| / |sum t|
        let order = 200;
        let exact = f64::from_rational(&pfq_eval_exact(&exact_params, &x, order).unwrap());
        let mut abs_sum = 0.0;
        let mut term = 1.0;
        for n in 0..order {
            abs_sum += f64::abs(term);
            term *= float_params.term_ratio(n as u64).unwrap() * f64::from_rational(&x);
        }
        if abs_sum > 10.0 * exact.abs() {
            continue;
        }
        let approx = pfq_eval_float(
            &float_params,
            f64::from_rational(&x),
            FloatOptions::default(),
        )
        .unwrap();
        let rel = (approx - exact).abs() / exact.abs();
        worst = worst.max(rel);
        assert!(
            rel <= 1e-12,
            "params {exact_params:?} x={x}: float {approx} exact {exact} rel {rel:e}"
        );
        accepted += 1;
    }
    println!("worst relative error over 50 draws: {worst:e}");
}
