//! Exact rational scalars and their `"p/q"` string form.
//!
//! Every coordinate in this crate is a [`Rat`] (arbitrary-precision rational,
//! always in lowest terms with positive denominator). The wire format is a
//! string: `"p/q"`, or just `"p"` when the denominator is 1.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<Int> {
        t.trim()
            .parse::<Int>()
            .map_err(|_| Error::ParseRational(s.to_string()))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let n = parse_int(num)?;
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::ParseRational(s.to_string()));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Least common multiple of the denominators of `rats` (at least 1).
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rat>>(rats: I) -> Int {
    let mut l = Int::one();
    for r in rats {
        l = num_integer::lcm(l, r.denom().clone());
    }
    l
}

/// True iff `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Floor of an exact rational as a BigInt.
pub fn floor_int(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Ceiling of an exact rational as a BigInt.
pub fn ceil_int(r: &Rat) -> Int {
    r.ceil().to_integer()
}

pub fn is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for (s, canon) in [("3", "3"), ("-4/2", "-2"), ("1/2", "1/2"), ("-7/3", "-7/3")] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), canon);
        }
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "x", "1/0", "1/2/3", "2.5"] {
            assert!(rat_from_str(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [rat(1, 2), rat(1, 3), int(5)];
        assert_eq!(denominator_lcm(v.iter()), Int::from(6));
    }
}
