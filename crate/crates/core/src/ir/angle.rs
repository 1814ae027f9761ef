use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

/// A z-rotation angle stored as an exact rational multiple of π.
///
/// The value `k` denotes a rotation by `k·π` radians. Angles are kept in
/// lowest terms and reduced into `[0, 2)` on construction, so `k` and `k + 2`
/// compare equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rational64);

impl Angle {
    pub fn zero() -> Self {
        Angle(Rational64::zero())
    }

    /// `numer/denom · π`. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        Self::from_ratio(Rational64::new(numer, denom))
    }

    pub fn from_ratio(k: Rational64) -> Self {
        let two = Rational64::from_integer(2);
        let mut r = k % two;
        if r.is_negative() {
            r += two;
        }
        Angle(r)
    }

    /// π/4, the T gate.
    pub fn quarter() -> Self {
        Angle::new(1, 4)
    }

    /// π/2, the phase gate P (also called S).
    pub fn half() -> Self {
        Angle::new(1, 2)
    }

    /// 3π/2, the inverse phase gate P†.
    pub fn three_halves() -> Self {
        Angle::new(3, 2)
    }

    pub fn ratio(&self) -> Rational64 {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Odd multiples of π/4 are exactly the angles with denominator 4.
    pub fn is_t_like(&self) -> bool {
        self.denom() == 4
    }

    /// The inverse rotation, `2 - k`.
    pub fn inverse(&self) -> Self {
        -*self
    }

    pub fn radians(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64 * std::f64::consts::PI
    }
}

impl Default for Angle {
    fn default() -> Self {
        Angle::zero()
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle::from_ratio(self.0 + rhs.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::from_ratio(-self.0)
    }
}

impl From<Rational64> for Angle {
    fn from(k: Rational64) -> Self {
        Angle::from_ratio(k)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}π")
    }
}
