//! Exact rational coordinates.
//!
//! Every coordinate of the model is a reduced rational. Rationals with an odd
//! denominator are *depth* positions (where points sit); rationals with an even
//! denominator are *turn* positions (where paths branch). Both classes are
//! dense and they never coincide, so a branching never happens exactly at a
//! point.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionClass {
    Depth,
    Turn,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(BigRational);

impl Position {
    pub fn new(value: BigRational) -> Self {
        // BigRational is always kept reduced with a positive denominator.
        Position(value)
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Position(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn integer(n: i64) -> Self {
        Position(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn class(&self) -> PositionClass {
        if self.0.denom().is_odd() {
            PositionClass::Depth
        } else {
            PositionClass::Turn
        }
    }

    pub fn is_depth(&self) -> bool {
        self.class() == PositionClass::Depth
    }

    pub fn is_turn(&self) -> bool {
        self.class() == PositionClass::Turn
    }

    pub fn add_int(&self, n: i64) -> Position {
        Position(&self.0 + BigRational::from_integer(BigInt::from(n)))
    }

    pub fn floor(&self) -> Position {
        Position(self.0.floor())
    }

    pub fn ceil(&self) -> Position {
        Position(self.0.ceil())
    }

    /// The depth-class position nearest the midpoint of `(lo, hi)`.
    ///
    /// Returns the midpoint itself when it is depth-class, otherwise rounds it
    /// down onto the grid `j / 3^k` for the smallest `k` whose spacing fits
    /// twice into the half-width.
    pub fn depth_between(lo: &Position, hi: &Position) -> Result<Position> {
        Self::check_interval(lo, hi)?;
        let mid = Self::midpoint(lo, hi);
        if mid.is_depth() {
            return Ok(mid);
        }
        let width = &hi.0 - &lo.0;
        let two = BigRational::from_integer(BigInt::from(2));
        let mut n = BigInt::from(3);
        while BigRational::from_integer(n.clone()) * &width <= two {
            n *= 3;
        }
        let j = (&mid.0 * BigRational::from_integer(n.clone())).floor().to_integer();
        Ok(Position(BigRational::new(j, n)))
    }

    /// The turn-class position nearest the midpoint of `(lo, hi)`, rounding
    /// onto odd multiples of `1 / 2^k` when the midpoint is depth-class.
    pub fn turn_between(lo: &Position, hi: &Position) -> Result<Position> {
        Self::check_interval(lo, hi)?;
        let mid = Self::midpoint(lo, hi);
        if mid.is_turn() {
            return Ok(mid);
        }
        let width = &hi.0 - &lo.0;
        let four = BigRational::from_integer(BigInt::from(4));
        let mut n = BigInt::from(2);
        while BigRational::from_integer(n.clone()) * &width <= four {
            n *= 2;
        }
        let mut j = (&mid.0 * BigRational::from_integer(n.clone())).floor().to_integer();
        if j.is_even() {
            j -= BigInt::one();
        }
        Ok(Position(BigRational::new(j, n)))
    }

    fn midpoint(lo: &Position, hi: &Position) -> Position {
        Position((&lo.0 + &hi.0) / BigRational::from_integer(BigInt::from(2)))
    }

    fn check_interval(lo: &Position, hi: &Position) -> Result<()> {
        if lo < hi {
            Ok(())
        } else {
            Err(Error::Precondition(format!("empty interval ({lo}, {hi})")))
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Position {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
        let den: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        if den.is_negative() {
            return Err(bad("negative denominator"));
        }
        Ok(Position(BigRational::new(num, den)))
    }
}

impl From<i64> for Position {
    fn from(n: i64) -> Self {
        Position::integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Position {
        s.parse().unwrap()
    }

    #[test]
    fn classes() {
        assert!(p("1").is_depth());
        assert!(p("8/3").is_depth());
        assert!(p("1/2").is_turn());
        assert!(p("6/4").is_turn());
        assert_eq!(p("6/4"), p("3/2"));
        assert!(p("6/3").is_depth());
    }

    #[test]
    fn parse_errors() {
        assert!("1/0".parse::<Position>().is_err());
        assert!("a".parse::<Position>().is_err());
        assert!("1/-2".parse::<Position>().is_err());
        assert_eq!(p("-3").to_string(), "-3");
        assert_eq!(p("10/4").to_string(), "5/2");
    }

    #[test]
    fn between_picks_midpoint_when_possible() {
        assert_eq!(Position::depth_between(&p("0"), &p("2")).unwrap(), p("1"));
        assert_eq!(Position::turn_between(&p("0"), &p("3")).unwrap(), p("3/2"));
        assert_eq!(Position::depth_between(&p("5/2"), &p("3")).unwrap(), p("8/3"));
        assert!(Position::depth_between(&p("1"), &p("1")).is_err());
    }

    #[test]
    fn between_is_strict_and_classed() {
        let cases = [("0", "1"), ("1/2", "3/4"), ("1/3", "2/3"), ("7/8", "1"), ("-1/1024", "1/2048")];
        for (a, b) in cases {
            let (lo, hi) = (p(a), p(b));
            let d = Position::depth_between(&lo, &hi).unwrap();
            let t = Position::turn_between(&lo, &hi).unwrap();
            assert!(lo < d && d < hi && d.is_depth(), "{d} in ({lo},{hi})");
            assert!(lo < t && t < hi && t.is_turn(), "{t} in ({lo},{hi})");
        }
    }
}
