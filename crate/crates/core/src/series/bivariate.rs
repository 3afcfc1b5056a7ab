//! Dense two-variable truncated power series, used only as a brute-force
//! oracle for diagonal extraction. Exponents are nonnegative integers with a
//! rectangular truncation window `[0..=nx] x [0..=nt]`.

use std::collections::BTreeMap;

use super::Series;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

#[derive(Debug, Clone)]
pub struct BiSeries<T> {
    nx: i64,
    nt: i64,
    coeffs: BTreeMap<(i64, i64), T>,
}

impl<T: Coeff> BiSeries<T> {
    pub fn zero(nx: i64, nt: i64) -> Self {
        assert!(nx >= 0 && nt >= 0);
        BiSeries {
            nx,
            nt,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(nx: i64, nt: i64, c: T) -> Self {
        let mut s = Self::zero(nx, nt);
        s.set(0, 0, c);
        s
    }

    pub fn nx(&self) -> i64 {
        self.nx
    }

    pub fn nt(&self) -> i64 {
        self.nt
    }

    pub fn set(&mut self, i: i64, j: i64, c: T) {
        assert!(i >= 0 && i <= self.nx && j >= 0 && j <= self.nt);
        if c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn get(&self, i: i64, j: i64) -> T {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    /// Lift of a one-variable polynomial in x (window `[0..=nx]` must cover
    /// its support).
    pub fn from_x_series(f: &Series<T>, nx: i64, nt: i64) -> Self {
        assert_eq!(f.unit_den(), 1, "integer exponent grid required");
        let mut s = Self::zero(nx, nt);
        for (e, c) in f.terms() {
            assert!(e >= 0, "negative exponents are outside the oracle window");
            if e <= nx {
                s.set(e, 0, c.clone());
            }
        }
        s
    }

    /// Polynomial in t with x-polynomial coefficients.
    pub fn from_t_poly(terms: &[(i64, Series<T>)], nx: i64, nt: i64) -> Self {
        let mut s = Self::zero(nx, nt);
        for (j, f) in terms {
            assert!(*j >= 0 && *j <= nt);
            for (e, c) in f.terms() {
                assert!(e >= 0);
                if e <= nx {
                    let prev = s.get(e, *j);
                    s.set(e, *j, prev + c.clone());
                }
            }
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let nx = self.nx.min(other.nx);
        let nt = self.nt.min(other.nt);
        let mut s = Self::zero(nx, nt);
        for (&(i, j), c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if i <= nx && j <= nt {
                let prev = s.get(i, j);
                s.set(i, j, prev + c.clone());
            }
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let nx = self.nx.min(other.nx);
        let nt = self.nt.min(other.nt);
        let mut s = Self::zero(nx, nt);
        for (&(ia, ja), ca) in &self.coeffs {
            for (&(ib, jb), cb) in &other.coeffs {
                let (i, j) = (ia + ib, ja + jb);
                if i <= nx && j <= nt {
                    let prev = s.get(i, j);
                    s.set(i, j, prev + ca.clone() * cb.clone());
                }
            }
        }
        s
    }

    /// Reciprocal, requiring a nonzero constant term. Solved degree by
    /// degree in lexicographic order on (i+j, i).
    pub fn invert(&self) -> Result<Self> {
        let c00 = self.get(0, 0);
        if c00.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let inv00 = T::one() / c00;
        let mut g = Self::zero(self.nx, self.nt);
        for total in 0..=(self.nx + self.nt) {
            for i in 0..=total.min(self.nx) {
                let j = total - i;
                if j > self.nt {
                    continue;
                }
                if total == 0 {
                    g.set(0, 0, inv00.clone());
                    continue;
                }
                // sum over nonzero f_(a,b), (a,b) != (0,0)
                let mut acc = T::zero();
                for (&(a, b), fc) in &self.coeffs {
                    if (a, b) == (0, 0) || a > i || b > j {
                        continue;
                    }
                    let gc = g.get(i - a, j - b);
                    if !gc.is_zero() {
                        acc = acc + fc.clone() * gc;
                    }
                }
                g.set(i, j, -(inv00.clone() * acc));
            }
        }
        Ok(g)
    }

    pub fn int_pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::constant(self.nx, self.nt, T::one()));
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

    /// Diagonal `sum_n [x^n t^n] F * q^n`, known to `min(nx, nt)`.
    pub fn diagonal(&self) -> Series<T> {
        let n = self.nx.min(self.nt);
        let terms: Vec<(i64, T)> = (0..=n).map(|k| (k, self.get(k, k))).collect();
        Series::from_window(1, 0, n, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_i;
    use crate::Rat;
    use num::Zero;

    #[test]
    fn diagonal_of_geometric() {
        // 1/(1 - x t): diagonal is 1 + q + q^2 + ...
        let mut f: BiSeries<Rat> = BiSeries::zero(6, 6);
        f.set(0, 0, rat_i(1));
        f.set(1, 1, rat_i(-1));
        let d = f.invert().unwrap().diagonal();
        for e in 0..=6 {
            assert_eq!(d.coefficient(e).unwrap(), rat_i(1));
        }
    }

    #[test]
    fn diagonal_off_diagonal_only() {
        let mut f: BiSeries<Rat> = BiSeries::zero(4, 4);
        f.set(1, 0, rat_i(1));
        f.set(0, 1, rat_i(1));
        let d = f.diagonal();
        assert!(d.coefficient(0).unwrap().is_zero());
        for e in 1..=4 {
            assert_eq!(d.coefficient(e).unwrap(), rat_i(0));
        }
    }

    #[test]
    fn invert_is_two_sided() {
        let mut f: BiSeries<Rat> = BiSeries::zero(5, 5);
        f.set(0, 0, rat_i(2));
        f.set(1, 0, rat_i(1));
        f.set(0, 1, rat_i(-3));
        f.set(1, 1, rat_i(1));
        let g = f.invert().unwrap();
        let p = f.mul(&g);
        assert_eq!(p.get(0, 0), rat_i(1));
        for i in 0..=5 {
            for j in 0..=5 {
                if (i, j) != (0, 0) {
                    assert!(p.get(i, j).is_zero(), "({i},{j})");
                }
            }
        }
    }
}
