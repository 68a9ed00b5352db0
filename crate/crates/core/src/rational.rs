//! Exact rational values and their `"p/q"` text form.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. The denominator must be nonzero.
pub fn parse(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i64 = num.parse().map_err(|_| bad())?;
    let d: i64 = den.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical text: reduced, sign on the numerator, no `/1` for integers.
pub fn format(v: &Rational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub(crate) fn checked_add(a: &Rational, b: &Rational) -> Result<Rational> {
    num_traits::CheckedAdd::checked_add(a, b).ok_or(Error::Overflow)
}

pub(crate) fn checked_mul(a: &Rational, b: &Rational) -> Result<Rational> {
    num_traits::CheckedMul::checked_mul(a, b).ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse("2").unwrap(), int(2));
        assert_eq!(parse("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse(" 4 / 2 ").unwrap(), int(2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format(&int(3)), "3");
        assert_eq!(format(&ratio(2, -4)), "-1/2");
        assert_eq!(format(&ratio(1, 3)), "1/3");
    }

    proptest! {
        #[test]
        fn text_round_trip(p in -1_000_000i64..1_000_000, q in 1i64..1_000_000) {
            let v = ratio(p, q);
            prop_assert_eq!(parse(&format(&v)).unwrap(), v);
        }
    }
}
