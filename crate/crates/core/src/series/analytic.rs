//! Square root, exponential, logarithm, composition, formal derivative.

use std::collections::BTreeMap;

use super::{Series, UNBOUNDED};
use crate::error::{Error, Result};
use crate::scalar::{Coeff, CoeffSqrt};

impl<T: Coeff> Series<T> {
    /// Formal derivative d/dq. A coefficient `c` at exponent `e/d` maps to
    /// `c*(e/d)` at exponent `e/d - 1`.
    pub fn derivative(&self) -> Self {
        let d = self.unit_den;
        let coeffs: BTreeMap<i64, T> = self
            .coeffs
            .iter()
            .filter(|(e, _)| **e != 0)
            .map(|(e, c)| {
                (
                    *e - d,
                    c.clone() * T::from_int(*e) / T::from_int(d),
                )
            })
            .collect();
        let hi = if self.hi == UNBOUNDED {
            UNBOUNDED
        } else {
            self.hi - d
        };
        Series::from_map(d, self.lo.saturating_sub(d), hi, coeffs)
    }

    /// `exp(f)` for `f` of strictly positive valuation.
    pub fn exp_series(&self) -> Result<Self> {
        match self.valuation() {
            None => return Ok(Series::constant(self.unit_den, T::one()).truncate_like(self)),
            Some(v) if v <= 0 => {
                return Err(Error::BadValuation(format!(
                    "exp needs positive valuation, found exponent numerator {v}"
                )))
            }
            Some(_) => {}
        }
        if self.hi == UNBOUNDED {
            return Err(Error::UnboundedWindow);
        }
        // E' = f'E order by order in u = q^(1/d):
        // m*E_m = sum_{j=1..m} j*f_j*E_{m-j}
        let order = self.hi;
        let mut e: Vec<T> = vec![T::zero(); (order + 1) as usize];
        e[0] = T::one();
        for m in 1..=order {
            let mut acc = T::zero();
            for (j, fj) in self.coeffs.range(1..=m) {
                let em = &e[(m - j) as usize];
                if !em.is_zero() {
                    acc = acc + T::from_int(*j) * fj.clone() * em.clone();
                }
            }
            e[m as usize] = acc / T::from_int(m);
        }
        let coeffs = e
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c))
            .collect();
        Ok(Series::from_map(self.unit_den, 0, order, coeffs))
    }

    /// `log(f)` for `f = 1 + (positive-valuation part)`.
    pub fn log_series(&self) -> Result<Self> {
        if self.coefficient(0).unwrap_or_else(|_| T::zero()) != T::one()
            || self.valuation() != Some(0)
        {
            return Err(Error::BadValuation(
                "log needs constant term 1 and no lower-order terms".into(),
            ));
        }
        if self.coeffs.len() == 1 {
            // log(1) = 0, known wherever f is
            let mut out = Series::zero(self.unit_den);
            out.hi = self.hi;
            return Ok(out);
        }
        if self.hi == UNBOUNDED {
            return Err(Error::UnboundedWindow);
        }
        // L' = f'/f, integrated termwise
        let rate = self.derivative().mul(&self.invert()?);
        let d = self.unit_den;
        let coeffs: BTreeMap<i64, T> = rate
            .coeffs
            .iter()
            .map(|(e, c)| {
                let m = e + d;
                (m, c.clone() * T::from_int(d) / T::from_int(m))
            })
            .collect();
        Ok(Series::from_map(
            d,
            1,
            rate.hi.saturating_add(d),
            coeffs,
        ))
    }

    /// `f(g)` for an outer series on the integer grid and an inner series of
    /// strictly positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.unit_den != 1 {
            return Err(Error::FractionalCompose);
        }
        match inner.valuation() {
            Some(v) if v > 0 => {}
            Some(_) => {
                return Err(Error::BadValuation(
                    "inner series must have strictly positive valuation".into(),
                ))
            }
            None => {
                // f(0): the constant term of f
                let c = self.coefficient(0)?;
                let mut out = Series::constant(inner.unit_den, c);
                out.hi = inner.hi;
                return Ok(out);
            }
        }

        let mut acc: Option<Series<T>> = None;
        // positive exponents: Horner from the top, one trailing multiply to
        // land on sum_{e>=1} a_e g^e
        if let Some(top) = self.coeffs.range(1..).next_back().map(|(e, _)| *e) {
            let mut res = Series::zero(inner.unit_den());
            for e in (1..=top).rev() {
                res = res.mul(inner);
                if let Some(c) = self.coeffs.get(&e) {
                    res = res.add_scalar(c);
                }
            }
            acc = Some(res.mul(inner));
        }
        // negative exponents via powers of the reciprocal
        if self.lo < 0 {
            let neg: Vec<(i64, T)> = self
                .coeffs
                .range(..0)
                .map(|(e, c)| (*e, c.clone()))
                .collect();
            if !neg.is_empty() {
                let ginv = inner.invert()?;
                for (e, c) in neg {
                    let term = ginv.int_pow(-e)?.scale(&c);
                    acc = Some(match acc {
                        None => term,
                        Some(r) => r.add(&term),
                    });
                }
            }
        }
        let mut res = match acc {
            None => Series::zero(inner.unit_den),
            Some(r) => r,
        };
        if let Some(c) = self.coeffs.get(&0) {
            res = res.add_scalar(c);
        }
        // knowledge cannot exceed what the outer truncation supports
        if self.hi != UNBOUNDED {
            let v = inner.valuation().unwrap_or(1).max(1);
            let cap = (self.hi.saturating_add(1)).saturating_mul(v).saturating_sub(1);
            if res.hi > cap {
                res = res.truncate(cap.max(res.lo));
            }
        }
        Ok(res)
    }

    fn truncate_like(&self, other: &Self) -> Self {
        if other.hi == UNBOUNDED {
            self.clone()
        } else {
            self.truncate(other.hi)
        }
    }
}

impl<T: CoeffSqrt> Series<T> {
    /// Square root of `f = c*q^(2k)*(1 + h)` with the branch of positive
    /// leading coefficient. Requires an even leading exponent in unit steps
    /// and a leading coefficient that is a rational square.
    pub fn sqrt(&self) -> Result<Self> {
        let v = match self.valuation() {
            Some(v) => v,
            None => {
                return Err(Error::NotASquare(
                    "zero series has no admissible factorization".into(),
                ))
            }
        };
        if v % 2 != 0 {
            return Err(Error::NotASquare(format!(
                "leading exponent numerator {v} is odd"
            )));
        }
        let lead = self.coeffs[&v].clone();
        let root = lead
            .exact_sqrt()
            .ok_or_else(|| Error::NotASquare(format!("leading coefficient {lead} is not a rational square")))?;
        if self.coeffs.len() == 1 {
            let mut out = Series::monomial(self.unit_den, v / 2, root);
            if self.hi != UNBOUNDED {
                out = out.truncate(self.hi - v / 2);
                out.lo = v / 2;
            }
            return Ok(out);
        }
        if self.hi == UNBOUNDED {
            return Err(Error::UnboundedWindow);
        }
        // normalize to 1 + h and solve s^2 = 1 + h order by order:
        // s_m = (h_m - sum_{j=1..m-1} s_j s_{m-j}) / 2
        let order = self.hi - v;
        let inv_lead = T::one() / lead;
        let mut s: Vec<T> = vec![T::zero(); (order + 1) as usize];
        s[0] = T::one();
        let two = T::from_int(2);
        for m in 1..=order {
            let mut acc = self
                .coeffs
                .get(&(v + m))
                .map(|c| c.clone() * inv_lead.clone())
                .unwrap_or_else(T::zero);
            for j in 1..m {
                let (a, b) = (&s[j as usize], &s[(m - j) as usize]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc - a.clone() * b.clone();
                }
            }
            s[m as usize] = acc / two.clone();
        }
        let lo = v / 2;
        let coeffs = s
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (lo + k as i64, root.clone() * c))
            .collect();
        Ok(Series::from_map(self.unit_den, lo, self.hi - v / 2, coeffs))
    }
}
