//! Exact rational scalars and extended (possibly infinite) values.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in reduced form.
pub type Rat = BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as a decimal-free string: `p/q`, or just `p` for integers.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or a bare integer `p`.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidParams(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => {
            let p: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rat::from(p))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// A rational extended with a single positive infinity, used for values that
/// degenerate across components (distances, separation constants).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtRat {
    Finite(Rat),
    Infinite,
}

impl ExtRat {
    pub fn zero() -> ExtRat {
        ExtRat::Finite(Rat::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinite)
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinite => None,
        }
    }

    /// Unwraps a finite value; callers use this after a same-component check.
    pub fn expect_finite(self, what: &str) -> Result<Rat> {
        match self {
            ExtRat::Finite(r) => Ok(r),
            ExtRat::Infinite => Err(Error::internal(format!("{what} is infinite"))),
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(match (self, other) {
            (ExtRat::Infinite, ExtRat::Infinite) => std::cmp::Ordering::Equal,
            (ExtRat::Infinite, ExtRat::Finite(_)) => std::cmp::Ordering::Greater,
            (ExtRat::Finite(_), ExtRat::Infinite) => std::cmp::Ordering::Less,
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
        })
    }
}

impl std::fmt::Display for ExtRat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtRat::Finite(r) => f.write_str(&rat_to_string(r)),
            ExtRat::Infinite => f.write_str("inf"),
        }
    }
}

/// True when `r` lies in the closed unit interval.
pub fn in_unit_interval(r: &Rat) -> bool {
    !r.is_negative() && *r <= Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        assert_eq!(rat_to_string(&rat(3, 4)), "3/4");
        assert_eq!(rat_to_string(&rat(6, 2)), "3");
        assert_eq!(rat_to_string(&rat(-1, 2)), "-1/2");
        assert_eq!(rat_from_str("3/4").unwrap(), rat(3, 4));
        assert_eq!(rat_from_str("5").unwrap(), rat(5, 1));
        assert_eq!(rat_from_str("-7/2").unwrap(), rat(-7, 2));
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn extended_order() {
        assert!(ExtRat::Finite(rat(1, 2)) < ExtRat::Infinite);
        assert!(ExtRat::Finite(rat(1, 3)) < ExtRat::Finite(rat(1, 2)));
        assert_eq!(ExtRat::Infinite.partial_cmp(&ExtRat::Infinite), Some(std::cmp::Ordering::Equal));
    }
}
