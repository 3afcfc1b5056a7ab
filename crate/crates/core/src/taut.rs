//! Integrals of tautological classes over the Hilbert scheme of n points on
//! a genus-g curve, including the mu_r-gerby variants.
//!
//! Everything reduces to the pairing `int theta^i/i! * omega^(n-i) = C(g,i)`
//! on the n-point Hilbert scheme. An integrand is kept as a pair
//! `(omega_part, theta_coeff)`: a series in the divisor class times a single
//! exponential factor `e^(alpha * theta)`. Products of exponentials are
//! normalized by adding theta coefficients. For gerbe order r > 1 the series
//! variable is the scaled class `r^n * omega` and the exponential carries
//! `r^n * theta`; written that way the formulas are identical for every r,
//! and [`integrate_with_gerbe`] re-derives the same value through the
//! explicit r-power bookkeeping on the unscaled classes.

use num::traits::{One, Zero};
use num::BigInt;

use crate::error::{Error, Result};
use crate::scalar::binomial;
use crate::{QSeries, Rat};

/// Curve genus, point count and gerbe order (r = 1 is an ordinary curve).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusParams {
    pub g: i64,
    pub n: i64,
    pub r: i64,
}

impl GenusParams {
    pub fn new(g: i64, n: i64, r: i64) -> Self {
        assert!(g >= 0 && n >= 0 && r >= 1, "invalid genus parameters");
        GenusParams { g, n, r }
    }
}

/// Integrand `omega_part(u) * e^(theta_coeff(u) * theta_scaled)` where `u`
/// is the (scaled) divisor class.
#[derive(Debug, Clone)]
pub struct TautIntegrand {
    pub omega_part: QSeries,
    pub theta_coeff: QSeries,
}

impl TautIntegrand {
    pub fn new(omega_part: QSeries, theta_coeff: QSeries) -> Self {
        TautIntegrand {
            omega_part,
            theta_coeff,
        }
    }

    /// Pure omega-power integrand with no exponential factor.
    pub fn from_omega(omega_part: QSeries) -> Self {
        let den = omega_part.unit_den();
        TautIntegrand {
            omega_part,
            theta_coeff: QSeries::zero(den),
        }
    }

    /// Product of integrands: omega parts multiply, theta exponents add.
    pub fn mul(&self, other: &Self) -> Self {
        TautIntegrand {
            omega_part: self.omega_part.mul(&other.omega_part),
            theta_coeff: self.theta_coeff.add(&other.theta_coeff),
        }
    }

    /// Reciprocal integrand.
    pub fn invert(&self) -> Result<Self> {
        Ok(TautIntegrand {
            omega_part: self.omega_part.invert()?,
            theta_coeff: self.theta_coeff.neg(),
        })
    }

    fn check_window(&self, n: i64) -> Result<()> {
        for part in [&self.omega_part, &self.theta_coeff] {
            // below lo the series is known zero, so only the knowledge bound
            // matters; negative support would escape the pairing entirely
            if part.hi() < n || part.lo() < 0 {
                return Err(Error::WindowTooSmall {
                    need: n,
                    lo: part.lo(),
                    hi: part.hi(),
                });
            }
        }
        Ok(())
    }
}

/// The basic pairing `int theta^i/i! * omega^(n-i) = C(g, i)`.
pub fn pair_theta_omega(g: i64, n: i64, i: i64) -> Result<Rat> {
    if i < 0 || i > n {
        return Err(Error::IndexOutOfRange { i, n });
    }
    Ok(binomial(g, i))
}

/// Integrates by resolving the exponential: under the pairing,
/// `e^(alpha*theta)` contributes like `(1 + alpha*u)^g`, and the integral is
/// the coefficient of `u^n`.
pub fn integrate(integrand: &TautIntegrand, params: &GenusParams) -> Result<Rat> {
    let n = params.n;
    integrand.check_window(n)?;
    let den = integrand.omega_part.unit_den();
    let u = QSeries::monomial(den, 1, Rat::one());
    let base = integrand.theta_coeff.mul(&u).add_scalar(&Rat::one());
    let powed = base.truncate(n).int_pow(params.g)?;
    integrand.omega_part.mul(&powed).known_coefficient(n)
}

/// Independent route: expand `e^(alpha*theta) = sum alpha^i theta^i / i!`
/// and apply the pairing term by term.
pub fn integrate_direct(integrand: &TautIntegrand, params: &GenusParams) -> Result<Rat> {
    let n = params.n;
    integrand.check_window(n)?;
    let mut total = Rat::zero();
    let mut alpha_pow = QSeries::constant(integrand.theta_coeff.unit_den(), Rat::one());
    let imax = n.min(params.g.max(0));
    for i in 0..=imax {
        let weight = pair_theta_omega(params.g, n, i)?;
        if !weight.is_zero() {
            let slice = integrand.omega_part.mul(&alpha_pow).known_coefficient(n - i)?;
            total += weight * slice;
        }
        if i < imax {
            alpha_pow = alpha_pow.mul(&integrand.theta_coeff).truncate(n);
        }
    }
    Ok(total)
}

/// Multiplies the coefficient at `u^k` by `scale^k`.
fn substitute_scale(s: &QSeries, scale: &Rat) -> QSeries {
    let terms: Vec<(i64, Rat)> = s
        .terms()
        .map(|(e, c)| {
            let p = i32::try_from(e).expect("exponent out of range");
            (e, c.clone() * scale.pow(p))
        })
        .collect();
    QSeries::from_window(s.unit_den(), s.lo(), s.hi(), &terms)
}

/// Evaluates the integral through the unscaled classes: substitute
/// `u = r^n * omega`, carry the exponential coefficient `r^n * alpha(r^n
/// omega)`, and pair against `int theta^i/i! omega^(n-i) = C(g,i) / r^(n^2)`.
/// For r = 1 this is the plain resolved route.
pub fn integrate_with_gerbe(integrand: &TautIntegrand, params: &GenusParams) -> Result<Rat> {
    let n = params.n;
    integrand.check_window(n)?;
    if params.r == 1 {
        return integrate(integrand, params);
    }
    let n32 = i32::try_from(n).expect("point count out of range");
    let rn = Rat::from_integer(BigInt::from(params.r)).pow(n32);
    let omega_unscaled = substitute_scale(&integrand.omega_part, &rn);
    let beta = substitute_scale(&integrand.theta_coeff, &rn).scale(&rn);
    let gerbe_norm = rn.pow(n32);

    let mut total = Rat::zero();
    let mut beta_pow = QSeries::constant(beta.unit_den(), Rat::one());
    let imax = n.min(params.g.max(0));
    for i in 0..=imax {
        let weight = pair_theta_omega(params.g, n, i)?;
        if !weight.is_zero() {
            let slice = omega_unscaled.mul(&beta_pow).known_coefficient(n - i)?;
            total += weight * slice / gerbe_norm.clone();
        }
        if i < imax {
            beta_pow = beta_pow.mul(&beta).truncate(n);
        }
    }
    Ok(total)
}

/// True iff the r-scaled evaluation agrees with the unscaled one.
pub fn gerby_scaling_check(integrand: &TautIntegrand, g: i64, n: i64, r: i64) -> Result<bool> {
    let scaled = integrate(integrand, &GenusParams::new(g, n, 1))?;
    let unscaled = integrate_with_gerbe(integrand, &GenusParams::new(g, n, r))?;
    Ok(scaled == unscaled)
}

/// Total Chern class of the tangent bundle of the n-point Hilbert scheme,
/// `(1 + u t)^(n+1-g) * e^(-t theta /(1 + u t))`, in the r-scaled classes.
pub fn chern_tangent(g: i64, n: i64, _r: i64, t_scalar: &Rat) -> Result<TautIntegrand> {
    let one_ut = QSeries::poly(1, &[(0, Rat::one()), (1, t_scalar.clone())]).truncate(n.max(0));
    let omega_part = one_ut.int_pow(n + 1 - g)?;
    let theta_coeff = one_ut.invert()?.scale(&-t_scalar.clone());
    Ok(TautIntegrand::new(omega_part, theta_coeff))
}

/// Total Chern class of the tautological bundle of a degree-`deg_l` line
/// bundle, `(1 - u t)^(n+g-1-degL) * e^(t theta /(1 - u t))`.
pub fn chern_taut_bundle(
    g: i64,
    n: i64,
    _r: i64,
    deg_l: i64,
    t_scalar: &Rat,
) -> Result<TautIntegrand> {
    let one_minus_ut =
        QSeries::poly(1, &[(0, Rat::one()), (1, -t_scalar.clone())]).truncate(n.max(0));
    let omega_part = one_minus_ut.int_pow(n + g - 1 - deg_l)?;
    let theta_coeff = one_minus_ut.invert()?.scale(t_scalar);
    Ok(TautIntegrand::new(omega_part, theta_coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    fn params(g: i64, n: i64) -> GenusParams {
        GenusParams::new(g, n, 1)
    }

    #[test]
    fn pairing_values() {
        assert_eq!(pair_theta_omega(6, 3, 0).unwrap(), rat_i(1));
        assert_eq!(pair_theta_omega(6, 3, 2).unwrap(), rat_i(15));
        assert_eq!(pair_theta_omega(2, 5, 4).unwrap(), rat_i(0));
        assert!(matches!(
            pair_theta_omega(6, 3, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn integrate_omega_power_is_delta() {
        for n in 0..=5 {
            for g in [0, 2, 6] {
                let f = TautIntegrand::from_omega(QSeries::monomial(1, n, rat_i(1)).truncate(n));
                assert_eq!(integrate(&f, &params(g, n)).unwrap(), rat_i(1));
                if n >= 1 {
                    // lower omega powers contribute nothing at u^n
                    let lower = TautIntegrand::from_omega(
                        QSeries::monomial(1, n - 1, rat_i(1)).truncate(n),
                    );
                    assert_eq!(integrate(&lower, &params(g, n)).unwrap(), rat_i(0));
                }
            }
        }
    }

    #[test]
    fn integrate_theta_only() {
        // omega_part = 1, alpha = 1, n = 1: int theta = C(g,1)
        let f = TautIntegrand::new(
            QSeries::constant(1, rat_i(1)).truncate(1),
            QSeries::constant(1, rat_i(1)).truncate(1),
        );
        assert_eq!(integrate(&f, &params(6, 1)).unwrap(), rat_i(6));
        assert_eq!(integrate_direct(&f, &params(6, 1)).unwrap(), rat_i(6));
        // theta_coeff = 0 and omega_part = 1 has no u^n term
        let g = TautIntegrand::from_omega(QSeries::constant(1, rat_i(1)).truncate(3));
        assert_eq!(integrate(&g, &params(6, 3)).unwrap(), rat_i(0));
    }

    #[test]
    fn constant_alpha_closed_form() {
        // omega_part = 1, alpha = c: integral = C(g,n) * c^n
        let c = rat(3, 2);
        for (g, n) in [(6, 4), (8, 3), (5, 5)] {
            let f = TautIntegrand::new(
                QSeries::constant(1, rat_i(1)).truncate(n),
                QSeries::constant(1, c.clone()).truncate(n),
            );
            let expect = binomial(g, n) * c.pow(n as i32);
            assert_eq!(integrate(&f, &params(g, n)).unwrap(), expect);
            assert_eq!(integrate_direct(&f, &params(g, n)).unwrap(), expect);
        }
    }

    #[test]
    fn genus_zero_drops_theta() {
        let f = TautIntegrand::new(
            QSeries::poly(1, &[(0, rat_i(2)), (2, rat_i(5))]).truncate(2),
            QSeries::poly(1, &[(0, rat_i(7)), (1, rat_i(-3))]).truncate(2),
        );
        assert_eq!(integrate(&f, &params(0, 2)).unwrap(), rat_i(5));
        assert_eq!(integrate_direct(&f, &params(0, 2)).unwrap(), rat_i(5));
    }

    #[test]
    fn two_routes_agree_on_fixed_integrands() {
        let cases = [
            (
                6,
                4,
                vec![(0, rat_i(1)), (1, rat(-1, 2)), (3, rat_i(2))],
                vec![(0, rat_i(1)), (2, rat(5, 3))],
            ),
            (8, 6, vec![(0, rat(2, 7)), (4, rat_i(3))], vec![(1, rat_i(-1))]),
            (3, 5, vec![(2, rat_i(1))], vec![(0, rat(1, 4)), (1, rat(1, 4))]),
        ];
        for (g, n, om, th) in cases {
            let f = TautIntegrand::new(
                QSeries::poly(1, &om).truncate(n),
                QSeries::poly(1, &th).truncate(n),
            );
            let a = integrate(&f, &params(g, n)).unwrap();
            let b = integrate_direct(&f, &params(g, n)).unwrap();
            assert_eq!(a, b, "g={g} n={n}");
        }
    }

    #[test]
    fn window_too_small_detected() {
        let f = TautIntegrand::from_omega(QSeries::constant(1, rat_i(1)).truncate(2));
        assert!(matches!(
            integrate(&f, &params(6, 3)),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn chern_factors_specialize() {
        // deg L = n+g-1 at t = 1 kills the omega part
        let f = chern_taut_bundle(6, 4, 1, 4 + 6 - 1, &rat_i(1)).unwrap();
        assert_eq!(f.omega_part.coefficient(0).unwrap(), rat_i(1));
        for e in 1..=4 {
            assert_eq!(f.omega_part.coefficient(e).unwrap(), rat_i(0));
        }
        // total Chern class at t = 0 is 1 with no exponential
        let t = chern_tangent(6, 4, 1, &rat_i(0)).unwrap();
        assert_eq!(t.omega_part.coefficient(0).unwrap(), rat_i(1));
        for e in 1..=4 {
            assert_eq!(t.omega_part.coefficient(e).unwrap(), rat_i(0));
        }
        assert!(t.theta_coeff.is_zero_series());
    }

    #[test]
    fn gerby_invariance_fixed_cases() {
        let f = TautIntegrand::new(
            QSeries::poly(1, &[(0, rat_i(1)), (1, rat_i(2)), (2, rat(1, 3))]).truncate(5),
            QSeries::poly(1, &[(0, rat(1, 2)), (1, rat_i(-1))]).truncate(5),
        );
        for r in [1, 2, 3, 5] {
            assert!(gerby_scaling_check(&f, 6, 5, r).unwrap());
        }
    }
}
