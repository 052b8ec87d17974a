//! JSON wire format for polynomials and exact rational parsing.
//!
//! The schema is `{"degx": n, "terms": [[i, j, "coeff"], ...]}` with terms
//! sorted by `(i, j)` and coefficients as decimal strings, so values survive
//! any JSON number-width limits.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::BiPoly;
use crate::error::{Error, Result};

impl BiPoly {
    pub fn to_json(&self) -> Value {
        let degx: i64 = self.deg_x().map(|d| d as i64).unwrap_or(-1);
        let terms: Vec<Value> = self
            .terms()
            .map(|(i, j, c)| json!([i, j, c.to_string()]))
            .collect();
        json!({ "degx": degx, "terms": terms })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json(value: &Value) -> Result<BiPoly> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("polynomial JSON must be an object".into()))?;
        let degx = obj
            .get("degx")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("missing integer field \"degx\"".into()))?;
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field \"terms\"".into()))?;
        let mut poly = BiPoly::zero();
        for t in terms {
            let triple = t
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::Parse("term must be [i, j, \"coeff\"]".into()))?;
            let i = triple[0]
                .as_u64()
                .ok_or_else(|| Error::Parse("term x-power must be a nonnegative integer".into()))?;
            let j = triple[1]
                .as_u64()
                .ok_or_else(|| Error::Parse("term y-power must be a nonnegative integer".into()))?;
            if i > u32::MAX as u64 || j > u32::MAX as u64 {
                return Err(Error::Parse("term power out of range".into()));
            }
            let c = triple[2]
                .as_str()
                .ok_or_else(|| Error::Parse("coefficient must be a decimal string".into()))?;
            let c = BigInt::from_str(c)
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            if c.is_zero() {
                return Err(Error::Parse("zero coefficient stored in terms".into()));
            }
            if !poly.coeff(i as u32, j as u32).is_zero() {
                return Err(Error::Parse(format!("duplicate term ({i}, {j})")));
            }
            poly = &poly + &BiPoly::monomial(i as u32, j as u32, c);
        }
        let actual: i64 = poly.deg_x().map(|d| d as i64).unwrap_or(-1);
        if actual != degx {
            return Err(Error::Inconsistency(format!(
                "degx field says {degx} but terms have x-degree {actual}"
            )));
        }
        Ok(poly)
    }

    pub fn from_json_str(s: &str) -> Result<BiPoly> {
        let value: Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
        BiPoly::from_json(&value)
    }
}

/// Parse an exact rational from `"a/b"`, an integer, or a finite decimal
/// such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| Error::Parse(format!("bad rational numerator {num:?}")))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| Error::Parse(format!("bad rational denominator {den:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse("rational with zero denominator".into()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = format!("{int_part}{frac_part}");
        let n = BigInt::from_str(&digits)
            .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let mut d = BigInt::one();
        for _ in 0..frac_part.len() {
            d *= 10;
        }
        return Ok(BigRational::new(n, d));
    }
    let n = BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(BigRational::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let p = &super::super::one_plus_xy_pow(3) - &BiPoly::monomial(2, 0, BigInt::from(7));
        let s = p.to_json_string();
        assert_eq!(BiPoly::from_json_str(&s).unwrap(), p);
    }

    #[test]
    fn json_shape() {
        let p = super::super::one_plus_xy_pow(1);
        assert_eq!(
            p.to_json_string(),
            r#"{"degx":1,"terms":[[0,0,"1"],[1,1,"1"]]}"#
        );
    }

    #[test]
    fn json_rejects_degx_mismatch() {
        let err = BiPoly::from_json_str(r#"{"degx":2,"terms":[[0,0,"1"]]}"#).unwrap_err();
        assert!(matches!(err, Error::Inconsistency(_)));
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(BiPoly::from_json_str("not json").is_err());
        assert!(BiPoly::from_json_str(r#"{"degx":0,"terms":[[0,0,"x"]]}"#).is_err());
        assert!(
            BiPoly::from_json_str(r#"{"degx":0,"terms":[[0,0,"1"],[0,0,"2"]]}"#).is_err()
        );
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-2").unwrap(), BigRational::from(BigInt::from(-2)));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("1.5").unwrap(), BigRational::new(3.into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
