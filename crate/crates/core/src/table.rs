//! Machine-readable coefficient tables.
//!
//! The interchange schema is
//! `{"unit_den": d, "coeffs": [{"exp": e, "num": "...", "den": "..."}, ...]}`
//! with exponents ascending in numerator units (the represented exponent is
//! `exp/unit_den`) and big integers serialized as decimal strings.

use std::str::FromStr;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::series::Series;
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub exp: i64,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub unit_den: i64,
    pub coeffs: Vec<CoeffEntry>,
}

impl CoeffTable {
    /// Exports the stored (nonzero) coefficients of a series, ascending.
    pub fn from_series(s: &Series<Rat>) -> Self {
        CoeffTable {
            unit_den: s.unit_den(),
            coeffs: s
                .terms()
                .map(|(e, c)| CoeffEntry {
                    exp: e,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    /// Rebuilds a series from a table. The window is the span of the listed
    /// exponents (empty tables give the zero window at the origin).
    pub fn to_series(&self) -> Result<Series<Rat>, String> {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for e in &self.coeffs {
            let num = BigInt::from_str(&e.num).map_err(|r| format!("bad numerator {:?}: {r}", e.num))?;
            let den = BigInt::from_str(&e.den).map_err(|r| format!("bad denominator {:?}: {r}", e.den))?;
            if den == BigInt::from(0) {
                return Err("zero denominator".into());
            }
            terms.push((e.exp, Rat::new(num, den)));
        }
        let lo = terms.iter().map(|(e, _)| *e).min().unwrap_or(0);
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        Ok(Series::from_window(self.unit_den.max(1), lo, hi, &terms))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        serde_json::from_str(s).map_err(|e| e.to_string())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("exp,unit_den,num,den\n");
        for e in &self.coeffs {
            out.push_str(&format!("{},{},{},{}\n", e.exp, self.unit_den, e.num, e.den));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.coeffs.is_empty() {
            out.push_str("(no nonzero coefficients)\n");
        }
        for e in &self.coeffs {
            let g = num::integer::gcd(e.exp, self.unit_den).max(1);
            let (n, m) = (e.exp / g, self.unit_den / g);
            let exp = if m == 1 {
                format!("{n}")
            } else {
                format!("{n}/{m}")
            };
            let val = if e.den == "1" {
                e.num.clone()
            } else {
                format!("{}/{}", e.num, e.den)
            };
            out.push_str(&format!("q^({exp}): {val}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    #[test]
    fn json_round_trip() {
        let s = Series::poly(4, &[(-24, rat_i(2)), (1, rat(-5, 3))]).truncate(9);
        let t = CoeffTable::from_series(&s);
        let back = CoeffTable::from_json(&t.to_json()).unwrap();
        assert_eq!(t, back);
        let s2 = back.to_series().unwrap();
        assert_eq!(s2.coefficient(-24).unwrap(), rat_i(2));
        assert_eq!(s2.coefficient(1).unwrap(), rat(-5, 3));
    }

    #[test]
    fn exponents_ascend() {
        let s = Series::poly(1, &[(3, rat_i(1)), (-2, rat_i(4)), (0, rat_i(7))]).truncate(5);
        let t = CoeffTable::from_series(&s);
        let exps: Vec<i64> = t.coeffs.iter().map(|e| e.exp).collect();
        assert_eq!(exps, vec![-2, 0, 3]);
    }
}
