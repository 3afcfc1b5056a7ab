//! Classical q-series and arithmetic functions: eta products, theta_3,
//! Hurwitz class numbers, divisor counts, and the weighted-projective-plane
//! lattice sum they are compared against.

use num::integer::Roots;
use num::traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{rat, rat_i};
use crate::{QSeries, Rat};

/// `prod_{n>=1} (1 - q^n)^k` to order `order`; with `track_offset` the
/// eta-function exponent offset `k/24` is carried on the 1/24 grid, giving
/// `eta(q)^k = q^(k/24) prod (1-q^n)^k`.
pub fn eta_product_pow(k: i64, order: i64, track_offset: bool) -> QSeries {
    let n = order.max(0);
    let mut euler = QSeries::constant(1, Rat::one()).truncate(n);
    for m in 1..=n {
        let factor = QSeries::poly(1, &[(0, Rat::one()), (m, -Rat::one())]);
        euler = euler.mul(&factor);
    }
    let powed = euler.int_pow(k).expect("constant term 1");
    if track_offset {
        powed.rescale_to(24).shift(k)
    } else {
        powed
    }
}

/// `theta_3(q) = sum_{k in Z} q^(k^2) = 1 + 2q + 2q^4 + 2q^9 + ...`
pub fn theta3(order: i64) -> QSeries {
    let n = order.max(0);
    let mut terms = vec![(0, Rat::one())];
    let mut k = 1;
    while k * k <= n {
        terms.push((k * k, rat_i(2)));
        k += 1;
    }
    QSeries::from_window(1, 0, n, &terms)
}

/// Checks the offset cancellation `q^(1/6)/eta(q)^4 = prod (1-q^k)^(-4)` and
/// then the same identity multiplied through by `theta_3`.
pub fn eta_theta_identity_check(order: i64) -> bool {
    let lhs = QSeries::monomial(6, 1, Rat::one())
        .mul(&eta_product_pow(4, order, true).invert().expect("leading 1"));
    let rhs = eta_product_pow(-4, order, false);
    if lhs.eq_on_common_window(&rhs) != Some(true) {
        return false;
    }
    let th = theta3(order);
    lhs.mul(&th).eq_on_common_window(&rhs.mul(&th)) == Some(true)
}

/// Positive definite integer binary quadratic form `AX^2 + BXY + CY^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadFormTriple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadFormTriple {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Gauss-reduced: `|B| <= A <= C` with `B >= 0` when `|B| = A` or
    /// `A = C`.
    pub fn is_reduced(&self) -> bool {
        let QuadFormTriple { a, b, c } = *self;
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// Class weight: 1/2 for multiples of X^2+Y^2, 1/3 for multiples of
    /// X^2+XY+Y^2, 1 otherwise.
    pub fn weight(&self) -> Rat {
        if self.b == 0 && self.a == self.c {
            rat(1, 2)
        } else if self.a == self.b && self.b == self.c {
            rat(1, 3)
        } else {
            Rat::one()
        }
    }

    /// Step-at-a-time SL2(Z) reduction to the canonical representative.
    pub fn reduce(&self) -> QuadFormTriple {
        let delta = -self.discriminant();
        let (mut a, mut b, mut c) = (self.a, self.b, self.c);
        loop {
            if c < a {
                let (na, nb, nc) = (c, -b, a);
                a = na;
                b = nb;
                c = nc;
                continue;
            }
            if b > a || b <= -a {
                // translate B into (-A, A], keeping the discriminant
                let mut nb = b % (2 * a);
                if nb > a {
                    nb -= 2 * a;
                } else if nb <= -a {
                    nb += 2 * a;
                }
                b = nb;
                c = (b * b + delta) / (4 * a);
                continue;
            }
            if a == c && b < 0 {
                b = -b;
                continue;
            }
            break;
        }
        let out = QuadFormTriple { a, b, c };
        debug_assert!(out.is_reduced() && out.discriminant() == self.discriminant());
        out
    }
}

/// Hurwitz class number `H(delta)` by direct enumeration of reduced forms
/// of discriminant `-delta`. Zero off the residues 0, 3 mod 4.
pub fn hurwitz_h(delta: i64) -> Result<Rat> {
    if delta <= 0 {
        return Err(Error::InvalidDiscriminant(delta));
    }
    match delta % 4 {
        1 | 2 => return Ok(Rat::zero()),
        _ => {}
    }
    let mut total = Rat::zero();
    let a_max = (delta / 3).sqrt() + 1;
    for a in 1..=a_max {
        for b in -a..=a {
            let num = b * b + delta;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let form = QuadFormTriple { a, b, c };
            if !form.is_reduced() {
                continue;
            }
            total += form.weight();
        }
    }
    Ok(total)
}

/// Independent route: enumerate all positive definite forms with
/// `A, C <= delta`, push each through the explicit reduction procedure, and
/// weight-count the distinct representatives.
pub fn hurwitz_h_unreduced_oracle(delta: i64) -> Result<Rat> {
    if delta <= 0 {
        return Err(Error::InvalidDiscriminant(delta));
    }
    let mut classes = std::collections::BTreeSet::new();
    for a in 1..=delta {
        for c in 1..=delta {
            let b2 = 4 * a * c - delta;
            if b2 < 0 {
                continue;
            }
            let b = b2.sqrt();
            if b * b != b2 {
                continue;
            }
            classes.insert(QuadFormTriple { a, b, c }.reduce());
            if b > 0 {
                classes.insert(QuadFormTriple { a, b: -b, c }.reduce());
            }
        }
    }
    let mut total = Rat::zero();
    for form in classes {
        total += form.weight();
    }
    Ok(total)
}

/// Number-of-divisors function.
pub fn sigma0(n: i64) -> i64 {
    assert!(n >= 1, "divisor count needs a positive argument");
    let mut count = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    count
}

/// Admissible weight triple of the lattice sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeTriple {
    pub w1: i64,
    pub w2: i64,
    pub w3: i64,
}

impl LatticeTriple {
    /// Membership in the summation set for the given first Chern number:
    /// positive entries, even middle entry, parity constraint, strict
    /// triangle inequalities.
    pub fn admissible(&self, c1: i64) -> bool {
        let LatticeTriple { w1, w2, w3 } = *self;
        let s = w1 + w2 + w3;
        w1 >= 1
            && w2 >= 1
            && w3 >= 1
            && w2 % 2 == 0
            && (c1 + s) % 2 == 0
            && 2 * w1 < s
            && 2 * w2 < s
            && 2 * w3 < s
    }

    /// Exponent numerator on the 1/4 grid, computed from the literal display
    /// `c1^2/4 + sum w_i^2/4 - (1/2) sum_{i<=j} w_i w_j` and from the
    /// simplification `(c1^2 - s^2)/4`; the two must agree per triple.
    pub fn exponent_num(&self, c1: i64) -> i64 {
        let LatticeTriple { w1, w2, w3 } = *self;
        let s = w1 + w2 + w3;
        let sum_sq = w1 * w1 + w2 * w2 + w3 * w3;
        let sum_pairs_diag = sum_sq + w1 * w2 + w1 * w3 + w2 * w3;
        // both on the 1/4 grid: literal = c1^2 + sum w^2 - 2*sum_{i<=j}
        let literal = c1 * c1 + sum_sq - 2 * sum_pairs_diag;
        let simplified = c1 * c1 - s * s;
        assert_eq!(literal, simplified, "exponent simplification per triple");
        simplified
    }
}

fn lattice_shell_bound(c1: i64, emin: i64) -> i64 {
    let cap = c1 * c1 - 4 * emin;
    if cap < 0 {
        0
    } else {
        cap.sqrt() + 1
    }
}

/// Lattice sum by shell decomposition over `s = w1+w2+w3`; every triple with
/// exponent at least `emin` is enumerated. Exponents live on the 1/4 grid.
pub fn lattice_sum_c(c1: i64, emin: i64) -> QSeries {
    let smax = lattice_shell_bound(c1, emin);
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    for s in 4..=smax {
        if (c1 + s) % 2 != 0 || s * s > c1 * c1 - 4 * emin {
            continue;
        }
        let mut count = 0i64;
        let mut exp_check: Option<i64> = None;
        for w2 in (2..s).step_by(2) {
            if 2 * w2 >= s {
                break;
            }
            for w1 in 1..s {
                let w3 = s - w1 - w2;
                let triple = LatticeTriple { w1, w2, w3 };
                if w3 >= 1 && triple.admissible(c1) {
                    count += 1;
                    let e = triple.exponent_num(c1);
                    debug_assert!(exp_check.replace(e).is_none_or(|p| p == e));
                }
            }
        }
        if count > 0 {
            terms.push((c1 * c1 - s * s, rat_i(count)));
        }
    }
    QSeries::from_window(4, 4 * emin, crate::series::UNBOUNDED, &terms)
}

/// Second, independent enumerator: plain bounded triple loop.
pub fn lattice_sum_c_triple_loop(c1: i64, emin: i64) -> QSeries {
    let smax = lattice_shell_bound(c1, emin);
    let wmax = smax / 2 + 1;
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    let mut acc: std::collections::BTreeMap<i64, i64> = std::collections::BTreeMap::new();
    for w1 in 1..=wmax {
        for w2 in 1..=wmax {
            for w3 in 1..=wmax {
                let triple = LatticeTriple { w1, w2, w3 };
                if !triple.admissible(c1) {
                    continue;
                }
                let e = triple.exponent_num(c1);
                if e >= 4 * emin {
                    *acc.entry(e).or_insert(0) += 1;
                }
            }
        }
    }
    for (e, count) in acc {
        terms.push((e, rat_i(count)));
    }
    QSeries::from_window(4, 4 * emin, crate::series::UNBOUNDED, &terms)
}

/// Parity of the first Chern number selecting the class-number series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C1Parity {
    Odd,
    Even,
}

impl C1Parity {
    pub fn of(c1: i64) -> Self {
        if c1.rem_euclid(2) == 1 {
            C1Parity::Odd
        } else {
            C1Parity::Even
        }
    }
}

/// Hurwitz class-number comparison series on the 1/4 grid:
/// odd case `sum 2H(8n-1) q^(1/4-2n)`, even case
/// `sum (H(4n) + 2H(n) - sigma0(n)/2) q^(-n) - sum sigma0(n) q^(-4n)`.
pub fn hurwitz_series(parity: C1Parity, emin: i64) -> Result<QSeries> {
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    match parity {
        C1Parity::Odd => {
            let mut n = 1;
            while 1 - 8 * n >= 4 * emin {
                let h = hurwitz_h(8 * n - 1)?;
                terms.push((1 - 8 * n, rat_i(2) * h));
                n += 1;
            }
        }
        C1Parity::Even => {
            let mut n = 1;
            while -4 * n >= 4 * emin {
                let c = hurwitz_h(4 * n)? + rat_i(2) * hurwitz_h(n)? - rat(sigma0(n), 2);
                terms.push((-4 * n, c));
                n += 1;
            }
            let mut m = 1;
            while -16 * m >= 4 * emin {
                terms.push((-16 * m, -rat_i(sigma0(m))));
                m += 1;
            }
        }
    }
    Ok(QSeries::from_window(
        4,
        4 * emin,
        crate::series::UNBOUNDED,
        &merge_terms(terms),
    ))
}

fn merge_terms(terms: Vec<(i64, Rat)>) -> Vec<(i64, Rat)> {
    let mut acc: std::collections::BTreeMap<i64, Rat> = std::collections::BTreeMap::new();
    for (e, c) in terms {
        let entry = acc.remove(&e).unwrap_or_else(Rat::zero);
        let sum = entry + c;
        if !sum.is_zero() {
            acc.insert(e, sum);
        }
    }
    acc.into_iter().collect()
}

/// Full right-hand side `(q^(1/6) eta^-4 theta_3)^2 * lattice sum`, carried
/// on the 1/12 grid.
///
/// The lattice factor is the `emin`-truncated sum; the two-sided-infinite
/// product has no formal coefficients, so the truncation is part of the
/// object. Coefficients are stable under enlarging `order` at fixed `emin`.
pub fn p112_rhs(c1: i64, emin: i64, order: i64) -> Result<QSeries> {
    if order < 0 {
        return Err(Error::WindowInconsistent(format!(
            "truncation order {order} is negative"
        )));
    }
    let factor = QSeries::monomial(6, 1, Rat::one())
        .mul(&eta_product_pow(4, order, true).invert()?)
        .mul(&theta3(order));
    let product = factor.int_pow(2)?.mul(&lattice_sum_c(c1, emin));
    let reduced = product.normalize_unit_den();
    if 12 % reduced.unit_den() != 0 {
        return Err(Error::WindowInconsistent(format!(
            "product grid 1/{} does not embed in the 1/12 grid",
            reduced.unit_den()
        )));
    }
    Ok(reduced.rescale_to(12))
}

/// Outcome of comparing the lattice sum against the class-number series on a
/// shared window.
#[derive(Debug, Clone, Serialize)]
pub struct P112Reconciliation {
    pub c1: i64,
    pub emin: i64,
    /// exponent numerators (1/4 grid) where both sides agree and are nonzero
    pub agreements: Vec<i64>,
    /// (exponent numerator, lattice value, class-number value) where they
    /// differ
    pub mismatches: Vec<(i64, String, String)>,
    /// a pure exponent shift aligning the two supports, when one exists
    pub offset_found: Option<i64>,
    pub verdict: String,
}

/// Computes both sides on the shared window `[emin, c1^2/4]` and reports the
/// comparison instead of asserting equality.
pub fn reconcile_p112(c1: i64, emin: i64) -> Result<P112Reconciliation> {
    let lattice = lattice_sum_c(c1, emin);
    let class_side = hurwitz_series(C1Parity::of(c1), emin)?;
    let lo = 4 * emin;
    let hi = c1 * c1;

    let mut agreements = Vec::new();
    let mut mismatches = Vec::new();
    for e in lo..=hi {
        let a = lattice.known_coefficient(e)?;
        let b = class_side.known_coefficient(e)?;
        if a == b {
            if !a.is_zero() {
                agreements.push(e);
            }
        } else {
            mismatches.push((e, a.to_string(), b.to_string()));
        }
    }

    // try a pure exponent shift aligning the top nonzero terms
    let top = |s: &QSeries| s.terms().last().map(|(e, _)| e);
    let offset_found = match (top(&lattice), top(&class_side)) {
        (Some(tl), Some(th)) => {
            let shift = th - tl;
            let shifted = lattice.shift(shift);
            if shifted.eq_on_common_window(&class_side) == Some(true) {
                Some(shift)
            } else {
                None
            }
        }
        _ => None,
    };

    let verdict = if mismatches.is_empty() {
        "sides agree on the shared window".to_string()
    } else if let Some(d) = offset_found {
        format!("sides agree after shifting exponents by {d}/4")
    } else {
        format!(
            "documented mismatch: {} agreeing nonzero exponents, {} differing ones, no pure shift reconciles",
            agreements.len(),
            mismatches.len()
        )
    };

    Ok(P112Reconciliation {
        c1,
        emin,
        agreements,
        mismatches,
        offset_found,
        verdict,
    })
}
