//! Reproducible parameter draws.
//!
//! The generator is the 64-bit linear congruential recurrence
//!
//! ```text
//! state' = 6364136223846793005 * state + 1442695040888963407   (mod 2^64)
//! ```
//!
//! seeded with the raw seed. Each call to [`Lcg::index`]`(k)` advances the
//! state once and returns `(state' >> 33) mod k`. Draws are built from these
//! indices only, in the order documented on each function, so any
//! implementation reproduces the same parameters from the same seed.
//!
//! * grid rational: `p = index(19) - 9`, then `q = index(9) + 1`, value `p/q`
//! * `y`: `q = index(9) + 1`, then `p = index(2q + 1) - q`, value `p/q`
//! * sequence: `index(2)`; `0` gives an explicit prefix of grid rationals,
//!   `1` a family with `index(3)` upper and then `index(3)` lower grid
//!   parameters (lower ones redrawn while a non-positive integer)
//!
//! Rejected values are redrawn in place.

use num_traits::One;

use crate::hypergeom::CoeffSeq;
use crate::relations::{RelationId, RelationParams};
use crate::scalar::Scalar;
use crate::Rational;

pub const DEFAULT_SEED: u64 = 42;

const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
const INCREMENT: u64 = 1_442_695_040_888_963_407;

/// Length of explicit prefixes in float-mode draws.
pub const FLOAT_EXPLICIT_LEN: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.state
    }

    /// Uniform-ish index in `0..k`.
    pub fn index(&mut self, k: u64) -> u64 {
        assert!(k > 0);
        (self.next_u64() >> 33) % k
    }

    /// A value from `{p/q : |p| <= 9, 1 <= q <= 9}`.
    pub fn grid_rational(&mut self) -> Rational {
        let p = self.index(19) as i64 - 9;
        let q = self.index(9) as i64 + 1;
        Rational::new(p.into(), q.into())
    }

    pub fn grid_rational_where(&mut self, accept: impl Fn(&Rational) -> bool) -> Rational {
        loop {
            let r = self.grid_rational();
            if accept(&r) {
                return r;
            }
        }
    }

    /// A value `p/q` with `1 <= q <= 9` and `|p| <= q`.
    pub fn unit_rational(&mut self) -> Rational {
        let q = self.index(9) as i64 + 1;
        let p = self.index(2 * q as u64 + 1) as i64 - q;
        Rational::new(p.into(), q.into())
    }
}

fn is_half(d: &Rational) -> bool {
    *d == Rational::half()
}

/// `true` when `(d)_m (d-1/2)_m` vanishes for some `m`, i.e. `2d` is an
/// integer not exceeding 1.
pub fn zeroes_simplified_denominator(d: &Rational) -> bool {
    let two_d = d * Rational::from_int(2);
    two_d.is_integer() && two_d <= Rational::one()
}

fn lower_parameter(rng: &mut Lcg) -> Rational {
    rng.grid_rational_where(|h| h.nonpositive_integer().is_none())
}

/// An explicit prefix of `explicit_len` grid values or a family with up to
/// two upper and two lower parameters.
pub fn draw_sequence(rng: &mut Lcg, explicit_len: usize) -> CoeffSeq<Rational> {
    if rng.index(2) == 0 {
        CoeffSeq::Explicit((0..explicit_len).map(|_| rng.grid_rational()).collect())
    } else {
        let na = rng.index(3);
        let a = (0..na).map(|_| rng.grid_rational()).collect();
        let nh = rng.index(3);
        let h = (0..nh).map(|_| lower_parameter(rng)).collect();
        CoeffSeq::Family { a, h }
    }
}

/// Parameters for an exact check of `rel` through `x^order`.
///
/// `d` is a grid rational; `d = 1/2` is redrawn except for `BaileyHalf`, so
/// Exton and Malani see identical draws from identical seeds. Explicit
/// prefixes have `order / 2 + 1` entries.
pub fn draw_params(rel: RelationId, order: usize, rng: &mut Lcg) -> RelationParams<Rational> {
    let d = if rel == RelationId::BaileyHalf {
        rng.grid_rational()
    } else {
        rng.grid_rational_where(|d| !is_half(d))
    };
    if !rel.uses_sequence() {
        return RelationParams::bailey(d);
    }
    let y = rng.unit_rational();
    let a = draw_sequence(rng, order / 2 + 1);
    RelationParams::new(d, y, a)
}

/// Parameters for the coefficient-extraction check up to index `n_max`;
/// `d` avoids the values where the simplified form divides by zero.
pub fn draw_derivation_params(n_max: usize, rng: &mut Lcg) -> RelationParams<Rational> {
    let d = rng.grid_rational_where(|d| !zeroes_simplified_denominator(d));
    let y = rng.unit_rational();
    let a = draw_sequence(rng, n_max + 1);
    RelationParams::new(d, y, a)
}

/// Parameters whose relation sides converge as floating-point series for
/// `|x| < 1/2`: explicit prefixes of [`FLOAT_EXPLICIT_LEN`] entries, or
/// families with fewer upper than lower parameters.
///
/// Index order: `d`, then `y`, then `index(2)` for the sequence kind; for a
/// family `index(2)` picks one or two lower parameters and `index(nh)` the
/// number of upper ones, which are drawn before the lower ones.
pub fn draw_float_params(rel: RelationId, rng: &mut Lcg) -> RelationParams<Rational> {
    let d = rng.grid_rational_where(|d| !is_half(d));
    if !rel.uses_sequence() {
        return RelationParams::bailey(d);
    }
    let y = rng.unit_rational();
    let a = if rng.index(2) == 0 {
        CoeffSeq::Explicit(
            (0..FLOAT_EXPLICIT_LEN)
                .map(|_| rng.grid_rational())
                .collect(),
        )
    } else {
        let nh = rng.index(2) + 1;
        let na = rng.index(nh);
        let a = (0..na).map(|_| rng.grid_rational()).collect();
        let h = (0..nh).map(|_| lower_parameter(rng)).collect();
        CoeffSeq::Family { a, h }
    };
    RelationParams::new(d, y, a)
}
