//! Ring operations on truncated series.
//!
//! All binary operations rescale to the lcm exponent grid first. Window
//! combination rules:
//!
//! - `add`: `lo = min(lo_f, lo_g)`, `hi = min(hi_f, hi_g)` (intersection of
//!   the regions where both operands are known).
//! - `mul`: `lo = lo_f + lo_g`, `hi = min(hi_f + lo_g, hi_g + lo_f)`; the
//!   unknown tail of one factor pollutes the product from its own `hi` plus
//!   the other factor's support bound onward.
//! - `invert` on `f = c*q^v*(1 + h)`: window `[-v, hi - 2v]`.

use std::collections::BTreeMap;

use super::{w_add, Series, UNBOUNDED};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

impl<T: Coeff> Series<T> {
    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect();
        Series::from_map(self.unit_den, self.lo, self.hi, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::common_grid(self, other);
        let lo = a.lo.min(b.lo);
        let hi = a.hi.min(b.hi);
        let mut coeffs: BTreeMap<i64, T> = BTreeMap::new();
        for (e, c) in a.coeffs.iter().chain(b.coeffs.iter()) {
            if *e > hi {
                continue;
            }
            let entry = coeffs.remove(e).unwrap_or_else(T::zero);
            let sum = entry + c.clone();
            if !sum.is_zero() {
                coeffs.insert(*e, sum);
            }
        }
        Series::from_map(a.unit_den, lo, hi, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Adds an exact scalar at exponent zero without shrinking the window.
    pub fn add_scalar(&self, c: &T) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.lo = out.lo.min(0);
        assert!(out.hi >= 0, "window excludes the constant term");
        let entry = out.coeffs.remove(&0).unwrap_or_else(T::zero);
        let sum = entry + c.clone();
        if !sum.is_zero() {
            out.coeffs.insert(0, sum);
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            let mut out = self.clone();
            out.coeffs.clear();
            return out;
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, v)| (*e, v.clone() * c.clone()))
            .collect();
        Series::from_map(self.unit_den, self.lo, self.hi, coeffs)
    }

    /// Cauchy product truncated to the window implied by the operands.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common_grid(self, other);
        let lo = a.lo.saturating_add(b.lo);
        let hi = w_add(a.hi, b.lo).min(w_add(b.hi, a.lo));
        let mut coeffs: BTreeMap<i64, T> = BTreeMap::new();
        for (ea, ca) in &a.coeffs {
            for (eb, cb) in &b.coeffs {
                let e = ea + eb;
                if e > hi {
                    break; // b iterates ascending
                }
                let prod = ca.clone() * cb.clone();
                let entry = coeffs.remove(&e).unwrap_or_else(T::zero);
                let sum = entry + prod;
                if !sum.is_zero() {
                    coeffs.insert(e, sum);
                }
            }
        }
        Series::from_map(a.unit_den, lo, hi, coeffs)
    }

    /// Reciprocal of `f = c*q^v*(1 + h)`; fails on a zero lowest tracked
    /// coefficient. Monomials invert exactly; anything else needs a finite
    /// window.
    pub fn invert(&self) -> Result<Self> {
        let v = match self.valuation() {
            Some(v) => v,
            None => return Err(Error::ZeroLeadingCoefficient),
        };
        let lead = self.coeffs[&v].clone();
        if self.coeffs.len() == 1 {
            let inv = T::one() / lead;
            let mut out = Series::monomial(self.unit_den, -v, inv);
            if self.hi != UNBOUNDED {
                // knowledge of the tail is limited by the input window
                out = out.truncate(self.hi.saturating_sub(2 * v));
                out.lo = -v;
            }
            return Ok(out);
        }
        if self.hi == UNBOUNDED {
            return Err(Error::UnboundedWindow);
        }
        // g = sum g_k q^(v_g + k) with v_g = -v, solved order by order from
        // f*g = 1: g_m = -(1/lead) * sum_{j=1..m} f_{v+j} g_{m-j}
        let order = (self.hi - v) as usize;
        let inv_lead = T::one() / lead;
        let mut g: Vec<T> = Vec::with_capacity(order + 1);
        g.push(inv_lead.clone());
        for m in 1..=order as i64 {
            let mut acc = T::zero();
            for (e, c) in self.coeffs.range(v + 1..=v + m) {
                let j = e - v;
                let gj = &g[(m - j) as usize];
                if !gj.is_zero() {
                    acc = acc + c.clone() * gj.clone();
                }
            }
            g.push(-(inv_lead.clone() * acc));
        }
        let lo = -v;
        let hi = self.hi - 2 * v;
        let coeffs = g
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (lo + k as i64, c))
            .collect();
        Ok(Series::from_map(self.unit_den, lo, hi, coeffs))
    }

    /// Exact integer power by repeated squaring; negative powers go through
    /// `invert`.
    pub fn int_pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Series::constant(self.unit_den, T::one()));
        }
        let (mut base, mut e) = if n < 0 {
            (self.invert()?, n.unsigned_abs())
        } else {
            (self.clone(), n.unsigned_abs())
        };
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};
    use crate::Rat;

    fn qs(terms: &[(i64, i64)]) -> Series<Rat> {
        let t: Vec<(i64, Rat)> = terms.iter().map(|(e, c)| (*e, rat_i(*c))).collect();
        Series::poly(1, &t)
    }

    #[test]
    fn add_cancellation_and_identity() {
        let f = qs(&[(0, 1), (1, 1)]);
        let g = qs(&[(0, 1), (1, -1)]);
        let sum = f.add(&g);
        assert!(sum.eq_exact(&qs(&[(0, 2)])));
        let z = Series::zero(1);
        assert!(f.add(&z).eq_exact(&f));
    }

    #[test]
    fn add_rescales_to_lcm() {
        // q^(1/4) + q^(1/2) lives on the quarter grid at numerators 1 and 2
        let a = Series::monomial(4, 1, rat_i(1)).truncate(8);
        let b = Series::monomial(2, 1, rat_i(1)).truncate(4);
        let s = a.add(&b);
        assert_eq!(s.unit_den(), 4);
        assert_eq!(s.coefficient(1).unwrap(), rat_i(1));
        assert_eq!(s.coefficient(2).unwrap(), rat_i(1));
    }

    #[test]
    fn mul_telescoping_and_laurent() {
        let geom: Vec<(i64, Rat)> = (0..=10).map(|e| (e, rat_i(1))).collect();
        let geom = Series::from_window(1, 0, 10, &geom);
        let p = qs(&[(0, 1), (1, -1)]);
        let prod = p.mul(&geom);
        assert_eq!(prod.hi(), 10);
        assert_eq!(prod.coefficient(0).unwrap(), rat_i(1));
        for e in 1..=10 {
            assert_eq!(prod.coefficient(e).unwrap(), rat_i(0));
        }

        let qinv = Series::monomial(1, -1, rat_i(1));
        let q1 = Series::monomial(1, 1, rat_i(1));
        assert!(qinv.mul(&q1).eq_exact(&qs(&[(0, 1)])));

        let sq = qs(&[(0, 1), (1, 1)]).int_pow(2).unwrap();
        assert!(sq.eq_exact(&qs(&[(0, 1), (1, 2), (2, 1)])));
    }

    #[test]
    fn invert_geometric() {
        let f = qs(&[(0, 1), (1, -1)]).truncate(6);
        let g = f.invert().unwrap();
        for e in 0..=6 {
            assert_eq!(g.coefficient(e).unwrap(), rat_i(1));
        }
        assert!(f.mul(&g).coefficient(0).unwrap() == rat_i(1));
    }

    #[test]
    fn invert_laurent_leading_monomial() {
        // 1/(q^2*(1+q)) = q^-2 * (1 - q + q^2 - ...)
        let f = qs(&[(2, 1), (3, 1)]).truncate(8);
        let g = f.invert().unwrap();
        assert_eq!(g.lo(), -2);
        assert_eq!(g.hi(), 4);
        assert_eq!(g.coefficient(-2).unwrap(), rat_i(1));
        assert_eq!(g.coefficient(-1).unwrap(), rat_i(-1));
        assert_eq!(g.coefficient(0).unwrap(), rat_i(1));
    }

    #[test]
    fn invert_constant_and_zero() {
        let two = Series::constant(1, rat_i(2));
        assert_eq!(two.invert().unwrap().coefficient(0).unwrap(), rat(1, 2));
        let z: Series<Rat> = Series::zero(1);
        assert_eq!(z.invert().unwrap_err(), Error::ZeroLeadingCoefficient);
    }

    #[test]
    fn binomial_series_pow() {
        let f = qs(&[(0, 1), (1, -1)]).truncate(5);
        let g = f.int_pow(-2).unwrap();
        for e in 0..=5 {
            assert_eq!(g.coefficient(e).unwrap(), rat_i(e + 1));
        }
        let one = qs(&[(0, 1), (1, 1)]).int_pow(0).unwrap();
        assert_eq!(one.coefficient(0).unwrap(), rat_i(1));
        assert!(!one.is_window_bounded());
    }

    #[test]
    fn product_window_shrinks_with_laurent_factor() {
        // f known to q^5 with support from q^2: 1/f known on [-2, 1] only
        let f = qs(&[(2, 1), (3, 1)]).truncate(5);
        let g = f.invert().unwrap();
        assert_eq!((g.lo(), g.hi()), (-2, 1));
        // multiplying back: window [0, min(5 + (-2), 1 + 2)] = [0, 3]
        let back = f.mul(&g);
        assert_eq!((back.lo(), back.hi()), (0, 3));
        assert_eq!(back.coefficient(0).unwrap(), rat_i(1));
        for e in 1..=3 {
            assert_eq!(back.coefficient(e).unwrap(), rat_i(0));
        }
    }
}
