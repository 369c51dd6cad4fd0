//! Exact rational coordinates.
//!
//! A [`Coord`] is a reduced fraction with a positive denominator. Values whose
//! numerator and denominator fit in `i64` are stored inline and combined with
//! `i128` intermediates; anything larger falls back to arbitrary precision.
//! The representation is canonical: a value that fits inline is never stored
//! in the big form, so derived equality and hashing agree with numeric
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

/// Exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coord(Repr);

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Coord {
    pub const ZERO: Coord = Coord(Repr::Small { num: 0, den: 1 });
    pub const ONE: Coord = Coord(Repr::Small { num: 1, den: 1 });

    pub fn int(v: i64) -> Coord {
        Coord(Repr::Small { num: v, den: 1 })
    }

    /// `num / den`, reduced. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Coord {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    /// Builds a value from arbitrary-precision parts. Returns `None` for a zero
    /// denominator.
    pub fn from_big(num: BigInt, den: BigInt) -> Option<Coord> {
        if den.is_zero() {
            return None;
        }
        Some(Self::from_big_rational(BigRational::new(num, den)))
    }

    fn from_i128(num: i128, den: i128) -> Coord {
        debug_assert!(den != 0);
        let g = gcd_i128(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Coord(Repr::Small { num, den }),
            _ => Coord(Repr::Big(Box::new(BigRational::new(n.into(), d.into())))),
        }
    }

    fn from_big_rational(r: BigRational) -> Coord {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Coord(Repr::Small { num, den }),
            _ => Coord(Repr::Big(Box::new(r))),
        }
    }

    fn to_big_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw((*num).into(), (*den).into()),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => (*num).into(),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => (*den).into(),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn signum(&self) -> Ordering {
        match &self.0 {
            Repr::Small { num, .. } => num.cmp(&0),
            Repr::Big(r) => {
                if r.is_positive() {
                    Ordering::Greater
                } else if r.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    pub fn abs(&self) -> Coord {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Largest integer not above the value. `None` if it does not fit in `i64`.
    pub fn floor_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den } => Some(num.div_floor(den)),
            Repr::Big(r) => r.floor().to_integer().to_i64(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Integer value, if the coordinate is an integer that fits in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den: 1 } => Some(*num),
            _ => None,
        }
    }

    pub fn min(a: &Coord, b: &Coord) -> Coord {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Coord, b: &Coord) -> Coord {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn small_pair<'a>(a: &'a Coord, b: &'a Coord) -> Option<(i128, i128, i128, i128)> {
        match (&a.0, &b.0) {
            (Repr::Small { num: an, den: ad }, Repr::Small { num: bn, den: bd }) => {
                Some((*an as i128, *ad as i128, *bn as i128, *bd as i128))
            }
            _ => None,
        }
    }
}

impl Default for Coord {
    fn default() -> Self {
        Coord::ZERO
    }
}

impl From<i64> for Coord {
    fn from(v: i64) -> Self {
        Coord::int(v)
    }
}

impl From<i32> for Coord {
    fn from(v: i32) -> Self {
        Coord::int(v as i64)
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        if let Some((an, ad, bn, bd)) = Coord::small_pair(self, other) {
            // |an·bd| < 2^126, no overflow.
            return (an * bd).cmp(&(bn * ad));
        }
        self.to_big_rational().cmp(&other.to_big_rational())
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Coord> for &'a Coord {
    type Output = Coord;
    fn add(self, rhs: &'a Coord) -> Coord {
        if let Some((an, ad, bn, bd)) = Coord::small_pair(self, rhs) {
            if ad == 1 && bd == 1 {
                return Coord::from_i128(an + bn, 1);
            }
            let g = gcd_i128(ad, bd);
            let num = an * (bd / g) + bn * (ad / g);
            return Coord::from_i128(num, (ad / g) * bd);
        }
        Coord::from_big_rational(self.to_big_rational() + rhs.to_big_rational())
    }
}

impl<'a> Sub<&'a Coord> for &'a Coord {
    type Output = Coord;
    fn sub(self, rhs: &'a Coord) -> Coord {
        if let Some((an, ad, bn, bd)) = Coord::small_pair(self, rhs) {
            if ad == 1 && bd == 1 {
                return Coord::from_i128(an - bn, 1);
            }
            let g = gcd_i128(ad, bd);
            let num = an * (bd / g) - bn * (ad / g);
            return Coord::from_i128(num, (ad / g) * bd);
        }
        Coord::from_big_rational(self.to_big_rational() - rhs.to_big_rational())
    }
}

impl<'a> Mul<&'a Coord> for &'a Coord {
    type Output = Coord;
    fn mul(self, rhs: &'a Coord) -> Coord {
        if let Some((an, ad, bn, bd)) = Coord::small_pair(self, rhs) {
            return Coord::from_i128(an * bn, ad * bd);
        }
        Coord::from_big_rational(self.to_big_rational() * rhs.to_big_rational())
    }
}

impl<'a> Div<&'a Coord> for &'a Coord {
    type Output = Coord;
    fn div(self, rhs: &'a Coord) -> Coord {
        assert!(!rhs.is_zero(), "division by zero");
        if let Some((an, ad, bn, bd)) = Coord::small_pair(self, rhs) {
            return Coord::from_i128(an * bd, ad * bn);
        }
        Coord::from_big_rational(self.to_big_rational() / rhs.to_big_rational())
    }
}

impl Neg for &Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        match &self.0 {
            Repr::Small { num, den } if *num != i64::MIN => Coord(Repr::Small { num: -num, den: *den }),
            _ => Coord::from_big_rational(-self.to_big_rational()),
        }
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coord> for Coord {
            type Output = Coord;
            fn $m(self, rhs: Coord) -> Coord {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Coord> for Coord {
            type Output = Coord;
            fn $m(self, rhs: &'a Coord) -> Coord {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Coord> for &'a Coord {
            type Output = Coord;
            fn $m(self, rhs: Coord) -> Coord {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseCoordError(String);

impl FromStr for Coord {
    type Err = ParseCoordError;

    /// Accepts `a` or `a/b` with decimal integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCoordError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = n.parse().map_err(|_| err())?;
        let den: BigInt = d.parse().map_err(|_| err())?;
        Coord::from_big(num, den).ok_or_else(err)
    }
}

impl One for Coord {
    fn one() -> Self {
        Coord::ONE
    }
}

impl Zero for Coord {
    fn zero() -> Self {
        Coord::ZERO
    }
    fn is_zero(&self) -> bool {
        Coord::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(Coord::ratio(2, -4), Coord::ratio(-1, 2));
        assert_eq!(Coord::ratio(6, 3), Coord::int(2));
        assert!(Coord::ratio(4, 2).is_integer());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Coord::int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
        assert_eq!(-Coord::int(i64::MIN), &Coord::int(i64::MAX) + &Coord::ONE);
    }

    #[test]
    fn floor_handles_negatives() {
        assert_eq!(Coord::ratio(-1, 2).floor_i64(), Some(-1));
        assert_eq!(Coord::ratio(7, 2).floor_i64(), Some(3));
        assert_eq!(Coord::int(-3).floor_i64(), Some(-3));
    }

    #[test]
    fn parses_literals() {
        assert_eq!("3/6".parse::<Coord>().unwrap(), Coord::ratio(1, 2));
        assert_eq!("-7".parse::<Coord>().unwrap(), Coord::int(-7));
        assert!("1/0".parse::<Coord>().is_err());
        assert!("x".parse::<Coord>().is_err());
    }

    fn as_big(c: &Coord) -> BigRational {
        c.to_big_rational()
    }

    proptest! {
        #[test]
        fn field_ops_match_bigrational(
            an in any::<i64>(), ad in 1i64..=i64::MAX,
            bn in any::<i64>(), bd in 1i64..=i64::MAX,
        ) {
            let a = Coord::ratio(an, ad);
            let b = Coord::ratio(bn, bd);
            let (ra, rb) = (as_big(&a), as_big(&b));
            prop_assert_eq!(as_big(&(&a + &b)), &ra + &rb);
            prop_assert_eq!(as_big(&(&a - &b)), &ra - &rb);
            prop_assert_eq!(as_big(&(&a * &b)), &ra * &rb);
            if !b.is_zero() {
                prop_assert_eq!(as_big(&(&a / &b)), &ra / &rb);
            }
            prop_assert_eq!(a.cmp(&b), ra.cmp(&rb));
            // canonical form: round trip through big keeps equality and hash
            prop_assert_eq!(Coord::from_big_rational(ra), a);
        }
    }
}
