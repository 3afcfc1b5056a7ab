//! Truncated formal Laurent/Puiseux series with sparse exact coefficients.
//!
//! A [`Series`] represents `f = sum_e c_e * q^(e/unit_den)` where `e` runs
//! over integer exponent numerators. The window `[lo, hi]` (inclusive, in
//! numerator units) tracks what is known:
//!
//! - below `lo` the series is exactly zero (`lo` is a support bound),
//! - on `[lo, hi]` every coefficient is known exactly (absent keys are zero),
//! - above `hi` coefficients are unknown, never assumed zero.
//!
//! `hi = UNBOUNDED` marks an exact polynomial known at every exponent;
//! operations that iterate order by order require a finite window and refuse
//! unbounded inputs (truncate first). Two series interoperate only after
//! rescaling to the lcm of their unit denominators; binary operations do the
//! rescale internally.

pub mod analytic;
pub mod arithmetic;
pub mod bivariate;

use std::collections::BTreeMap;
use std::fmt;

use num::integer::{gcd, lcm};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Sentinel for "known at every exponent above `lo`".
pub const UNBOUNDED: i64 = i64::MAX;

/// Window-bound addition; `UNBOUNDED` absorbs.
pub(crate) fn w_add(a: i64, b: i64) -> i64 {
    if a == UNBOUNDED || b == UNBOUNDED {
        UNBOUNDED
    } else {
        a.saturating_add(b)
    }
}

/// Truncated Laurent/Puiseux series; exponents live in `(1/unit_den) * Z`.
#[derive(Debug, Clone)]
pub struct Series<T> {
    unit_den: i64,
    lo: i64,
    hi: i64,
    coeffs: BTreeMap<i64, T>,
}

impl<T: Coeff> Series<T> {
    /// Zero series, known zero everywhere.
    pub fn zero(unit_den: i64) -> Self {
        assert!(unit_den > 0, "unit denominator must be positive");
        Series {
            unit_den,
            lo: 0,
            hi: UNBOUNDED,
            coeffs: BTreeMap::new(),
        }
    }

    /// Exact constant.
    pub fn constant(unit_den: i64, c: T) -> Self {
        Self::monomial(unit_den, 0, c)
    }

    /// Exact monomial `c * q^(exp_num/unit_den)`.
    pub fn monomial(unit_den: i64, exp_num: i64, c: T) -> Self {
        assert!(unit_den > 0, "unit denominator must be positive");
        let mut coeffs = BTreeMap::new();
        let zero = c.is_zero();
        if !zero {
            coeffs.insert(exp_num, c);
        }
        Series {
            unit_den,
            lo: if zero { 0 } else { exp_num },
            hi: UNBOUNDED,
            coeffs,
        }
    }

    /// Exact polynomial from `(exponent numerator, coefficient)` pairs.
    pub fn poly(unit_den: i64, terms: &[(i64, T)]) -> Self {
        assert!(unit_den > 0, "unit denominator must be positive");
        let mut coeffs: BTreeMap<i64, T> = BTreeMap::new();
        for (e, c) in terms {
            let entry = coeffs.remove(e).unwrap_or_else(T::zero);
            let sum = entry + c.clone();
            if !sum.is_zero() {
                coeffs.insert(*e, sum);
            }
        }
        let lo = coeffs.keys().next().copied().unwrap_or(0);
        Series {
            unit_den,
            lo,
            hi: UNBOUNDED,
            coeffs,
        }
    }

    /// Series from raw parts; keys outside `[lo, hi]` and zero values are
    /// rejected.
    pub fn from_window(unit_den: i64, lo: i64, hi: i64, terms: &[(i64, T)]) -> Self {
        assert!(unit_den > 0, "unit denominator must be positive");
        assert!(lo <= hi, "window start must not exceed window end");
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            assert!(*e >= lo && *e <= hi, "exponent {e} outside window [{lo}, {hi}]");
            if !c.is_zero() {
                coeffs.insert(*e, c.clone());
            }
        }
        Series {
            unit_den,
            lo,
            hi,
            coeffs,
        }
    }

    pub fn unit_den(&self) -> i64 {
        self.unit_den
    }

    /// Window start in numerator units; the series is exactly zero below it.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Inclusive knowledge bound in numerator units.
    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn is_window_bounded(&self) -> bool {
        self.hi != UNBOUNDED
    }

    /// Stored (nonzero) terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero_series(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent numerator with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Exact coefficient at exponent numerator `e`; errors outside the window.
    pub fn coefficient(&self, e: i64) -> Result<T> {
        if e < self.lo || e > self.hi {
            return Err(Error::OutOfWindow {
                exp: e,
                unit_den: self.unit_den,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(T::zero))
    }

    /// Exact coefficient wherever it is determined: inside the window, or
    /// below the support bound where the series is known zero. Errors only
    /// above the knowledge bound.
    pub fn known_coefficient(&self, e: i64) -> Result<T> {
        if e < self.lo {
            return Ok(T::zero());
        }
        self.coefficient(e)
    }

    /// Coefficient at the rational exponent `p/q`. Exponents off the series'
    /// grid are known zero inside the window.
    pub fn coefficient_at(&self, p: i64, q: i64) -> Result<T> {
        assert!(q > 0, "exponent denominator must be positive");
        let m = lcm(self.unit_den, q);
        let scaled = p * (m / q);
        let scale = m / self.unit_den;
        if scaled % scale == 0 {
            self.coefficient(scaled / scale)
        } else {
            // off-grid: zero if within the window, unknown outside
            let lo = self.lo.saturating_mul(scale);
            let hi = self.hi.saturating_mul(scale);
            if scaled < lo || scaled > hi {
                Err(Error::OutOfWindow {
                    exp: p,
                    unit_den: q,
                    lo: self.lo,
                    hi: self.hi,
                })
            } else {
                Ok(T::zero())
            }
        }
    }

    /// Restricts the knowledge bound to `hi` (numerator units).
    pub fn truncate(&self, hi: i64) -> Self {
        assert!(hi >= self.lo, "truncation below window start");
        let mut out = self.clone();
        out.hi = out.hi.min(hi);
        out.coeffs.retain(|e, _| *e <= hi);
        out
    }

    /// Widens the support bound downward (toward more negative exponents).
    /// Sound because below `lo` the series is exactly zero.
    pub fn with_lo(&self, lo: i64) -> Self {
        assert!(lo <= self.lo, "cannot raise the support bound");
        let mut out = self.clone();
        out.lo = lo;
        out
    }

    /// Shifts every exponent by `delta` numerator units (multiplication by
    /// the exact monomial `q^(delta/unit_den)`).
    pub fn shift(&self, delta: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (e + delta, c.clone()))
            .collect();
        Series {
            unit_den: self.unit_den,
            lo: self.lo.saturating_add(delta),
            hi: w_add(self.hi, delta),
            coeffs,
        }
    }

    /// Rescales to a coarser exponent grid `new_den` (a multiple of the
    /// current one).
    pub fn rescale_to(&self, new_den: i64) -> Self {
        assert!(
            new_den % self.unit_den == 0,
            "new unit denominator must be a multiple of the current one"
        );
        let k = new_den / self.unit_den;
        if k == 1 {
            return self.clone();
        }
        Series {
            unit_den: new_den,
            lo: self.lo.saturating_mul(k),
            hi: self.hi.saturating_mul(k),
            coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Reduces the unit denominator by the gcd of all exponent data, keeping
    /// the represented series identical.
    pub fn normalize_unit_den(&self) -> Self {
        let mut g = self.unit_den;
        for e in self.coeffs.keys() {
            g = gcd(g, *e);
        }
        if self.hi != UNBOUNDED {
            g = gcd(g, self.hi);
        }
        g = gcd(g, self.lo);
        if g <= 1 {
            return self.clone();
        }
        Series {
            unit_den: self.unit_den / g,
            lo: self.lo / g,
            hi: if self.hi == UNBOUNDED { UNBOUNDED } else { self.hi / g },
            coeffs: self.coeffs.iter().map(|(e, c)| (e / g, c.clone())).collect(),
        }
    }

    /// Brings `a` and `b` onto the lcm exponent grid.
    pub fn common_grid(a: &Self, b: &Self) -> (Self, Self) {
        let d = lcm(a.unit_den, b.unit_den);
        (a.rescale_to(d), b.rescale_to(d))
    }

    /// Exact equality of the known data: same grid content, same window.
    pub fn eq_exact(&self, other: &Self) -> bool {
        let (a, b) = Self::common_grid(self, other);
        a.lo == b.lo && a.hi == b.hi && a.coeffs == b.coeffs
    }

    /// Equality of every coefficient on the intersection of the windows.
    /// Returns `None` if the intersection is empty.
    pub fn eq_on_common_window(&self, other: &Self) -> Option<bool> {
        let (a, b) = Self::common_grid(self, other);
        let lo = a.lo.max(b.lo);
        let hi = a.hi.min(b.hi);
        if lo > hi {
            return None;
        }
        for (e, c) in a.coeffs.range(lo..=hi) {
            if b.coeffs.get(e).map_or(!c.is_zero(), |d| d != c) {
                return Some(false);
            }
        }
        for (e, c) in b.coeffs.range(lo..=hi) {
            if a.coeffs.get(e).map_or(!c.is_zero(), |d| d != c) {
                return Some(false);
            }
        }
        Some(true)
    }

    pub(crate) fn from_map(unit_den: i64, lo: i64, hi: i64, mut coeffs: BTreeMap<i64, T>) -> Self {
        debug_assert!(lo <= hi);
        coeffs.retain(|e, c| *e >= lo && *e <= hi && !c.is_zero());
        Series {
            unit_den,
            lo,
            hi,
            coeffs,
        }
    }
}

fn fmt_exponent(e: i64, d: i64) -> String {
    let g = gcd(e, d).max(1);
    let (n, m) = (e / g, d / g);
    if m == 1 {
        format!("{n}")
    } else {
        format!("{n}/{m}")
    }
}

impl<T: Coeff> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (e, c)) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                if *e == 0 {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})*q^({})", fmt_exponent(*e, self.unit_den))?;
                }
            }
        }
        if self.hi != UNBOUNDED {
            write!(f, " + O(q^({}))", fmt_exponent(self.hi + 1, self.unit_den))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};
    use crate::Rat;

    fn q(e: i64) -> Series<Rat> {
        Series::monomial(1, e, rat_i(1))
    }

    #[test]
    fn coefficient_window_contract() {
        let f = Series::poly(1, &[(0, rat_i(1)), (2, rat_i(3))]).truncate(5);
        assert_eq!(f.coefficient(2).unwrap(), rat_i(3));
        assert_eq!(f.coefficient(1).unwrap(), rat_i(0));
        assert!(matches!(f.coefficient(6), Err(Error::OutOfWindow { .. })));
        assert_eq!(q(-1).coefficient(-1).unwrap(), rat_i(1));
    }

    #[test]
    fn coefficient_at_rational_exponent() {
        // q^(1/4) on the quarter grid
        let f = Series::monomial(4, 1, rat_i(1)).truncate(8);
        assert_eq!(f.coefficient_at(1, 4).unwrap(), rat_i(1));
        assert_eq!(f.coefficient_at(1, 2).unwrap(), rat_i(0));
        assert_eq!(f.coefficient_at(1, 1).unwrap(), rat_i(0));
        assert!(f.coefficient_at(3, 1).is_err());
        // off-grid but inside window is known zero
        assert_eq!(q(0).truncate(3).coefficient_at(1, 3).unwrap(), rat_i(0));
    }

    #[test]
    fn rescale_and_normalize_round_trip() {
        let f = Series::poly(4, &[(1, rat(1, 2)), (6, rat_i(2))]).truncate(12);
        let g = f.rescale_to(12);
        assert_eq!(g.unit_den(), 12);
        assert_eq!(g.coefficient(3).unwrap(), rat(1, 2));
        assert_eq!(g.coefficient(18).unwrap(), rat_i(2));
        // 3 and 18 share no common factor with 12 beyond 3
        let h = g.normalize_unit_den();
        assert_eq!(h.unit_den(), 4);
        assert!(h.eq_exact(&f));
    }

    #[test]
    fn display_is_readable() {
        let f = Series::poly(4, &[(1, rat_i(2)), (0, rat_i(1))]).truncate(9);
        assert_eq!(format!("{f}"), "1 + (2)*q^(1/4) + O(q^(5/2))");
    }
}
