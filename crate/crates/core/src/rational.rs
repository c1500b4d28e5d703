//! Exact rational helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest integer, halves rounded toward +infinity.
pub fn round_half_up(x: &Rational) -> BigInt {
    (x + ratio(1, 2)).floor().to_integer()
}

/// Decimal rendering with `places` digits after the point, rounded half up.
pub fn to_fixed(x: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = round_half_up(&(x * Rational::from_integer(scale.clone())));
    let neg = scaled.is_negative();
    let (q, r) = scaled.abs().div_rem(&scale);
    let sign = if neg && !(q.is_zero() && r.is_zero()) { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{q}");
    }
    format!("{sign}{q}.{:0>width$}", r.to_string(), width = places as usize)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_rendering() {
        assert_eq!(to_fixed(&ratio(21, 25), 6), "0.840000");
        assert_eq!(to_fixed(&ratio(2, 9), 6), "0.222222");
        assert_eq!(to_fixed(&ratio(-1, 3), 3), "-0.333");
        assert_eq!(to_fixed(&ratio(1, 2), 0), "1");
        assert_eq!(to_fixed(&ratio(-1, 2), 0), "0");
    }

    #[test]
    fn rounding_ties_go_up() {
        assert_eq!(round_half_up(&ratio(5, 2)), BigInt::from(3));
        assert_eq!(round_half_up(&ratio(-5, 2)), BigInt::from(-2));
        assert_eq!(round_half_up(&ratio(10, 3)), BigInt::from(3));
        assert_eq!(round_half_up(&ratio(-10, 3)), BigInt::from(-3));
    }
}

/// Serialize rationals as "p/q" strings.
pub mod as_string {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let s = Option::<String>::deserialize(d)?;
            s.map(|v| v.parse().map_err(serde::de::Error::custom)).transpose()
        }
    }
}
