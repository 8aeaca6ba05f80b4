#![allow(dead_code)]

use genrel::Rational;
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

pub fn is_canonical(r: &Rational) -> bool {
    use num_integer::Integer;
    use num_traits::{One, Signed};
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}
