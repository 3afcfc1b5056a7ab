//! Exact arithmetic in the group ring of Z/m over the rationals, with
//! reduction modulo the m-th cyclotomic polynomial to decide rationality.
//!
//! An element `sum_j c_j zeta_m^j` is stored as its coordinate vector. The
//! represented algebraic number is rational iff the coordinate polynomial
//! reduces to degree zero modulo the cyclotomic polynomial.

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// Element of Q[Z/m], coordinates indexed by the exponent of the root of
/// unity.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclotomicElement {
    m: usize,
    coords: Vec<Rat>,
}

impl CyclotomicElement {
    pub fn zero(m: usize) -> Self {
        assert!(m >= 1, "modulus must be positive");
        CyclotomicElement {
            m,
            coords: vec![Rat::zero(); m],
        }
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Adds `c * zeta^j`.
    pub fn add_root_multiple(&mut self, j: i64, c: Rat) {
        let idx = j.rem_euclid(self.m as i64) as usize;
        self.coords[idx] += c;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "modulus mismatch");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicElement { m: self.m, coords }
    }

    /// Group-ring product (cyclic convolution of coordinates).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "modulus mismatch");
        let mut coords = vec![Rat::zero(); self.m];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coords[(i + j) % self.m] += a * b;
            }
        }
        CyclotomicElement { m: self.m, coords }
    }

    /// Complex conjugate: `zeta^j -> zeta^(-j)`.
    pub fn conjugate(&self) -> Self {
        let mut coords = vec![Rat::zero(); self.m];
        for (j, c) in self.coords.iter().enumerate() {
            coords[(self.m - j) % self.m] += c;
        }
        CyclotomicElement { m: self.m, coords }
    }

    /// Canonical representative modulo the m-th cyclotomic polynomial, as
    /// coefficients of degree < phi(m).
    pub fn reduced(&self) -> Vec<Rat> {
        poly_rem(&self.coords, &cyclotomic_polynomial(self.m))
    }

    pub fn is_rational(&self) -> bool {
        self.reduced().iter().skip(1).all(Rat::is_zero)
    }

    /// The represented rational number, if the element is rational.
    pub fn rational_value(&self) -> Result<Rat> {
        let red = self.reduced();
        if red.iter().skip(1).all(Rat::is_zero) {
            Ok(red.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            Err(Error::NonRationalCoefficient(0))
        }
    }
}

/// Coefficients (ascending degree) of the m-th cyclotomic polynomial,
/// computed by exact division of `x^m - 1` by the proper-divisor factors.
pub fn cyclotomic_polynomial(m: usize) -> Vec<Rat> {
    assert!(m >= 1);
    // x^m - 1
    let mut result = vec![Rat::zero(); m + 1];
    result[0] = -Rat::one();
    result[m] = Rat::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            result = poly_div_exact(&result, &phi_d);
        }
    }
    result
}

/// Exact polynomial division, panicking on a nonzero remainder.
fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let (q, r) = poly_divmod(num, den);
    assert!(r.iter().all(Rat::is_zero), "division must be exact");
    q
}

fn poly_degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let dd = poly_degree(den).expect("division by zero polynomial");
    let lead = den[dd].clone();
    let mut rem: Vec<Rat> = num.to_vec();
    let mut quot = vec![Rat::zero(); num.len()];
    while let Some(dn) = poly_degree(&rem) {
        if dn < dd {
            break;
        }
        let factor = rem[dn].clone() / lead.clone();
        let shift = dn - dd;
        quot[shift] = factor.clone();
        for (i, c) in den.iter().enumerate() {
            if !c.is_zero() {
                rem[i + shift] -= &factor * c;
            }
        }
    }
    (quot, rem)
}

/// Remainder of the coordinate polynomial modulo `phi`.
fn poly_rem(coords: &[Rat], phi: &[Rat]) -> Vec<Rat> {
    let (_, mut rem) = poly_divmod(coords, phi);
    let deg = poly_degree(phi).expect("nonzero modulus polynomial");
    rem.truncate(deg.max(1));
    rem
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    fn poly_i(cs: &[i64]) -> Vec<Rat> {
        cs.iter().map(|c| rat_i(*c)).collect()
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(cyclotomic_polynomial(1), poly_i(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2)[..2], poly_i(&[1, 1])[..]);
        assert_eq!(cyclotomic_polynomial(3)[..3], poly_i(&[1, 1, 1])[..]);
        assert_eq!(cyclotomic_polynomial(4)[..3], poly_i(&[1, 0, 1])[..]);
        let p6 = cyclotomic_polynomial(6);
        assert_eq!(poly_degree(&p6), Some(2));
        assert_eq!((p6[0].clone(), p6[1].clone()), (rat_i(1), rat_i(-1)));
        let p8 = cyclotomic_polynomial(8);
        assert_eq!(poly_degree(&p8), Some(4));
    }

    #[test]
    fn root_sums_are_rational() {
        // 1 + zeta + zeta^2 = 0 for m = 3
        let mut e = CyclotomicElement::zero(3);
        for j in 0..3 {
            e.add_root_multiple(j, rat_i(1));
        }
        assert!(e.is_rational());
        assert_eq!(e.rational_value().unwrap(), rat_i(0));

        // zeta_3 + zeta_3^2 = -1
        let mut f = CyclotomicElement::zero(3);
        f.add_root_multiple(1, rat_i(1));
        f.add_root_multiple(2, rat_i(1));
        assert_eq!(f.rational_value().unwrap(), rat_i(-1));

        // (zeta_4 + zeta_4^3)/2 = 0
        let mut g = CyclotomicElement::zero(4);
        g.add_root_multiple(1, rat(1, 2));
        g.add_root_multiple(3, rat(1, 2));
        assert_eq!(g.rational_value().unwrap(), rat_i(0));
    }

    #[test]
    fn lone_root_is_not_rational() {
        let mut e = CyclotomicElement::zero(5);
        e.add_root_multiple(1, rat_i(1));
        assert!(!e.is_rational());
        assert!(matches!(
            e.rational_value(),
            Err(Error::NonRationalCoefficient(_))
        ));
    }

    #[test]
    fn product_respects_root_relations() {
        // zeta_4 * zeta_4 = zeta_4^2 = -1
        let mut i = CyclotomicElement::zero(4);
        i.add_root_multiple(1, rat_i(1));
        let sq = i.mul(&i);
        assert_eq!(sq.rational_value().unwrap(), rat_i(-1));
        // conjugation fixes rational elements
        assert_eq!(sq.conjugate().rational_value().unwrap(), rat_i(-1));
    }
}
