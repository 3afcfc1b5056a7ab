//! Monopole-branch generating series for the r-th root stack over a quintic
//! surface, computed four ways:
//!
//! 1. `monopole_series_direct`: per-n tautological integrals of the
//!    four-factor normal form
//!    `(u-2)^(n+1-2g) * (1+u)^(n-g) * (1-u)^-(n+g) * (1-2u)^g`.
//! 2. `bivariate_rational` + the brute-force diagonal: the two-variable sum
//!    `F(x,t) = (1-2x)^g / ((x-2)^(2g-1) (1-x^2)^g) * (1-x)/(1-x-t(x^2-x-2))`
//!    whose diagonal is the same series.
//! 3. `diagonal_via_residue`: the residue of `F(x, q/x)/x` at the root
//!    `x0 = (1 - sqrt(1 + 8q/(1+q)))/2`, the unique pole tending to zero
//!    with q.
//! 4. `closed_form`: `A * (1-q)^(g-1) * (1 + (1-3q)/sqrt((1-q)(1-9q)))^(1-g)`
//!    up to a global constant and a per-n sign, both fixed once by
//!    [`sign_normalization_probe`] and then frozen.
//!
//! Routes 1-3 agree exactly with no adjustment. The probe reconciles route 4
//! against route 1 from the first three coefficients and fails loudly if no
//! unique candidate works.

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat_i, rat_pow};
use crate::taut::{self, GenusParams, TautIntegrand};
use crate::{BiSeries, QSeries, Rat};

/// Per-n sign convention relating the integral series to the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerNSign {
    Plus,
    Alternating,
}

impl PerNSign {
    pub fn at(&self, n: i64) -> Rat {
        match self {
            PerNSign::Plus => Rat::one(),
            PerNSign::Alternating => {
                if n % 2 == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                }
            }
        }
    }
}

/// Global constant and per-n sign fixed by the probe.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationRecord {
    pub global_constant: Rat,
    pub per_n_sign: PerNSign,
}

/// Configuration for the monopole series.
#[derive(Debug, Clone)]
pub struct MonopoleSeriesConfig {
    pub g: i64,
    pub order: i64,
    pub r: i64,
}

impl MonopoleSeriesConfig {
    pub fn new(g: i64, order: i64, r: i64) -> Self {
        assert!(g >= 2, "genus must be at least 2");
        assert!(order >= 0 && r >= 1, "invalid truncation or gerbe order");
        MonopoleSeriesConfig { g, order, r }
    }
}

/// Four-factor integrand in the scaled divisor class, theta already
/// resolved.
pub fn monopole_integrand(n: i64, g: i64) -> TautIntegrand {
    monopole_integrand_window(n, g, n)
}

/// Same integrand expanded to an arbitrary window (the pairing only needs
/// `[0, n]`; wider windows feed the slice cross-checks).
pub fn monopole_integrand_window(n: i64, g: i64, window: i64) -> TautIntegrand {
    let win = window.max(0);
    let u_minus_2 = QSeries::poly(1, &[(0, rat_i(-2)), (1, rat_i(1))]).truncate(win);
    let one_plus = QSeries::poly(1, &[(0, rat_i(1)), (1, rat_i(1))]).truncate(win);
    let one_minus = QSeries::poly(1, &[(0, rat_i(1)), (1, rat_i(-1))]).truncate(win);
    let one_minus_2u = QSeries::poly(1, &[(0, rat_i(1)), (1, rat_i(-2))]).truncate(win);
    let product = u_minus_2
        .int_pow(n + 1 - 2 * g)
        .and_then(|a| one_plus.int_pow(n - g).map(|b| a.mul(&b)))
        .and_then(|ab| one_minus.int_pow(-(n + g)).map(|c| ab.mul(&c)))
        .and_then(|abc| one_minus_2u.int_pow(g).map(|d| abc.mul(&d)))
        .expect("constant terms are nonzero");
    TautIntegrand::from_omega(product)
}

/// The same integrand built from Chern-class factors, exponential not yet
/// resolved: `c_{1/2}(K2^[n]) c_{-1}(T) c_{-1}(K^[n]) / (c(K^[n]) c(K2^[n]))`
/// with deg K = g-1 and deg K^2 = 2g-2 on the canonical curve.
pub fn monopole_chern_integrand(n: i64, g: i64) -> Result<TautIntegrand> {
    let half = crate::scalar::rat(1, 2);
    let one = Rat::one();
    let k2_half = taut::chern_taut_bundle(g, n, 1, 2 * g - 2, &half)?;
    let tangent = taut::chern_tangent(g, n, 1, &(-one.clone()))?;
    let k_minus = taut::chern_taut_bundle(g, n, 1, g - 1, &(-one.clone()))?;
    let k_total = taut::chern_taut_bundle(g, n, 1, g - 1, &one)?;
    let k2_total = taut::chern_taut_bundle(g, n, 1, 2 * g - 2, &one)?;
    let num = k2_half.mul(&tangent).mul(&k_minus);
    let den = k_total.mul(&k2_total);
    Ok(num.mul(&den.invert()?))
}

/// Constant relating the resolved Chern-route integrand to the four-factor
/// normal form: `chern = (-1)^(n+1) * 2^(2g-1-n) * normal_form` as series.
pub fn chern_route_rebalance(n: i64, g: i64) -> Rat {
    let sign = if (n + 1) % 2 == 0 { Rat::one() } else { -Rat::one() };
    sign * rat_pow(&rat_i(2), 2 * g - 1 - n)
}

/// Sum over n of the per-n tautological integrals. Independent of the gerbe
/// order; r > 1 exercises the explicit scaling bookkeeping.
pub fn monopole_series_direct(cfg: &MonopoleSeriesConfig) -> QSeries {
    let terms: Vec<(i64, Rat)> = (0..=cfg.order)
        .map(|n| {
            let integrand = monopole_integrand(n, cfg.g);
            let value = taut::integrate_with_gerbe(&integrand, &GenusParams::new(cfg.g, n, cfg.r))
                .expect("integrand windows cover 0..=n by construction");
            (n, value)
        })
        .collect();
    QSeries::from_window(1, 0, cfg.order, &terms)
}

/// Exact bivariate expansion of
/// `F(x,t) = (1-2x)^g/((x-2)^(2g-1)(1-x^2)^g) * (1-x)/(1-x-t(x^2-x-2))`.
pub fn bivariate_rational(g: i64, nx: i64, nt: i64) -> BiSeries {
    let win = nx;
    let poly = |terms: &[(i64, i64)]| -> QSeries {
        let t: Vec<(i64, Rat)> = terms.iter().map(|(e, c)| (*e, rat_i(*c))).collect();
        QSeries::poly(1, &t).truncate(win)
    };
    let numerator_x = poly(&[(0, 1), (1, -2)])
        .int_pow(g)
        .expect("exact polynomial power");
    let x_minus_2_pow = poly(&[(0, -2), (1, 1)])
        .int_pow(2 * g - 1)
        .expect("exact polynomial power");
    let one_minus_x2_pow = poly(&[(0, 1), (2, -1)])
        .int_pow(g)
        .expect("exact polynomial power");
    let x_part = numerator_x
        .mul(&x_minus_2_pow.invert().expect("constant term -2"))
        .mul(&one_minus_x2_pow.invert().expect("constant term 1"))
        .mul(&poly(&[(0, 1), (1, -1)]));

    let lead = BiSeries::from_x_series(&x_part, nx, nt);
    // denominator 1 - x - t(x^2 - x - 2)
    let den = BiSeries::from_t_poly(
        &[
            (0, poly(&[(0, 1), (1, -1)])),
            (1, poly(&[(0, 2), (1, 1), (2, -1)])),
        ],
        nx,
        nt,
    );
    lead.mul(&den.invert().expect("constant term 1"))
}

/// Diagonal by direct substitution into the residue at the small root
/// `x0 = (1 - sqrt(1 + 8q/(1+q)))/2` of `(1+q)x^2 - (1+q)x - 2q`.
pub fn diagonal_via_residue(g: i64, order: i64) -> Result<QSeries> {
    let n = order.max(0);
    let one = QSeries::constant(1, Rat::one());
    let one_plus_q = QSeries::poly(1, &[(0, rat_i(1)), (1, rat_i(1))]).truncate(n);
    let radicand = one.add(
        &QSeries::monomial(1, 1, rat_i(8)).mul(&one_plus_q.invert()?),
    );
    let root = radicand.sqrt()?;
    debug_assert!(
        root.coefficient(0).unwrap() == Rat::one(),
        "branch with positive leading coefficient"
    );
    // x0 = (1 - root)/2 has positive valuation; x1 - x0 = root
    let x0 = one.sub(&root).scale(&crate::scalar::rat(1, 2));
    debug_assert!(x0.valuation().is_none_or(|v| v >= 1));

    let x0_minus_2 = x0.add_scalar(&rat_i(-2));
    let one_plus_x0 = x0.add_scalar(&Rat::one());
    let one_minus_x0 = x0.neg().add_scalar(&Rat::one());
    let one_minus_2x0 = x0.scale(&rat_i(-2)).add_scalar(&Rat::one());

    let numerator = one_minus_2x0.int_pow(g)?;
    let denominator = x0_minus_2
        .int_pow(2 * g - 1)?
        .mul(&one_plus_x0.int_pow(g)?)
        .mul(&one_minus_x0.int_pow(g - 1)?);
    // residue: numerator/denominator * (-1)/((1+q)(x0-x1)), x0 - x1 = -root
    let value = numerator
        .mul(&denominator.invert()?)
        .mul(&one_plus_q.invert()?)
        .mul(&root.invert()?);
    Ok(value.truncate(n))
}

/// `A * (1-q)^(g-1) * (1 + (1-3q)/sqrt((1-q)(1-9q)))^(1-g)` to the given
/// order, with `A` the record's global constant.
pub fn closed_form(g: i64, order: i64, normalization: &NormalizationRecord) -> Result<QSeries> {
    let n = order.max(0);
    let one_minus_q = QSeries::poly(1, &[(0, rat_i(1)), (1, rat_i(-1))]).truncate(n);
    let one_minus_9q = QSeries::poly(1, &[(0, rat_i(1)), (1, rat_i(-9))]).truncate(n);
    let root = one_minus_q.mul(&one_minus_9q).sqrt()?;
    let one_minus_3q = QSeries::poly(1, &[(0, rat_i(1)), (1, rat_i(-3))]).truncate(n);
    let bracket = one_minus_3q.mul(&root.invert()?).add_scalar(&Rat::one());
    let series = one_minus_q
        .int_pow(g - 1)?
        .mul(&bracket.int_pow(1 - g)?)
        .scale(&normalization.global_constant);
    Ok(series.truncate(n))
}

/// Closed form oriented like the direct series: per-n sign applied so the
/// result matches `monopole_series_direct` coefficient by coefficient.
pub fn closed_form_normalized(
    g: i64,
    order: i64,
    record: &NormalizationRecord,
) -> Result<QSeries> {
    let base = closed_form(g, order, record)?;
    let terms: Vec<(i64, Rat)> = base
        .terms()
        .map(|(e, c)| (e, record.per_n_sign.at(e) * c.clone()))
        .collect();
    Ok(QSeries::from_window(1, base.lo(), base.hi(), &terms))
}

/// Determines (global_constant, per_n_sign) from coefficients 0..=2 of the
/// direct series against the closed form at A = 1. Exactly one of the four
/// candidates {+-kappa} x {+1, (-1)^n} must reconcile all three orders.
pub fn sign_normalization_probe(g: i64) -> Result<NormalizationRecord> {
    let probe_order = 2;
    let direct = monopole_series_direct(&MonopoleSeriesConfig::new(g, probe_order, 1));
    let unit = NormalizationRecord {
        global_constant: Rat::one(),
        per_n_sign: PerNSign::Plus,
    };
    let base = closed_form(g, probe_order, &unit)?;
    let d0 = direct.coefficient(0)?;
    let c0 = base.coefficient(0)?;
    if c0.is_zero() || d0.is_zero() {
        return Err(Error::NoConsistentNormalization);
    }
    let kappa = d0 / c0;

    let mut found: Vec<NormalizationRecord> = Vec::new();
    for sign in [Rat::one(), -Rat::one()] {
        for per_n in [PerNSign::Plus, PerNSign::Alternating] {
            let constant = sign.clone() * kappa.clone();
            let ok = (0..=probe_order).all(|n| {
                let lhs = per_n.at(n) * direct.coefficient(n).unwrap();
                let rhs = constant.clone() * base.coefficient(n).unwrap();
                lhs == rhs
            });
            if ok {
                found.push(NormalizationRecord {
                    global_constant: constant,
                    per_n_sign: per_n,
                });
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("nonempty")),
        _ => Err(Error::NoConsistentNormalization),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::taut::integrate_direct;

    // heads of the q-expansion at g = 6: the first four by hand binomial
    // expansion, the rest frozen after the three independent routes agreed
    const G6_HEADS: [(i64, i64); 9] = [
        (-1, 2048),
        (-5, 1024),
        (-5, 2048),
        (-5, 256),
        (15, 1024),
        (117, 512),
        (-3305, 1024),
        (7775, 256),
        (-515485, 2048),
    ];

    #[test]
    fn integrand_constant_terms() {
        let f = monopole_integrand(0, 6);
        assert_eq!(f.omega_part.coefficient(0).unwrap(), rat(-1, 2048));
        let f0 = monopole_integrand(0, 0);
        assert_eq!(f0.omega_part.coefficient(0).unwrap(), rat_i(-2));
    }

    #[test]
    fn direct_series_heads_and_cross_route() {
        let s = monopole_series_direct(&MonopoleSeriesConfig::new(6, 8, 1));
        for (n, (num, den)) in G6_HEADS.iter().enumerate() {
            assert_eq!(s.coefficient(n as i64).unwrap(), rat(*num, *den), "n={n}");
        }
        // the resolved integrand evaluates identically through the termwise
        // pairing route
        for n in 0..=8 {
            let f = monopole_integrand(n, 6);
            assert_eq!(
                integrate_direct(&f, &GenusParams::new(6, n, 1)).unwrap(),
                s.coefficient(n).unwrap()
            );
        }
    }

    #[test]
    fn chern_route_matches_normal_form() {
        for g in [2, 6] {
            for n in 0..=5 {
                let chern = monopole_chern_integrand(n, g).unwrap();
                let value = taut::integrate(&chern, &GenusParams::new(g, n, 1)).unwrap();
                let normal = monopole_integrand(n, g);
                let base = taut::integrate(&normal, &GenusParams::new(g, n, 1)).unwrap();
                assert_eq!(value, chern_route_rebalance(n, g) * base, "g={g} n={n}");
            }
        }
    }

    #[test]
    fn chern_route_series_identity() {
        // resolve the exponential of the Chern-route integrand and compare
        // the full omega series against the rebalanced normal form
        let (g, n) = (6, 5);
        let chern = monopole_chern_integrand(n, g).unwrap();
        let u = QSeries::monomial(1, 1, Rat::one());
        let resolved = chern
            .omega_part
            .mul(
                &chern
                    .theta_coeff
                    .mul(&u)
                    .add_scalar(&Rat::one())
                    .truncate(n)
                    .int_pow(g)
                    .unwrap(),
            )
            .truncate(n);
        let normal = monopole_integrand(n, g)
            .omega_part
            .scale(&chern_route_rebalance(n, g));
        assert!(resolved.eq_on_common_window(&normal).unwrap());
    }

    #[test]
    fn bivariate_matches_direct() {
        for g in [2, 6] {
            let n = 8;
            let diag = bivariate_rational(g, n, n).diagonal();
            let direct = monopole_series_direct(&MonopoleSeriesConfig::new(g, n, 1));
            assert!(diag.eq_on_common_window(&direct).unwrap(), "g={g}");
        }
    }

    #[test]
    fn bivariate_corner_and_t_slice() {
        let f = bivariate_rational(6, 6, 6);
        assert_eq!(f.get(0, 0), rat(-1, 2048));
        // t-degree-0 slice is the n = 0 integrand form summed over x powers
        let n0 = monopole_integrand_window(0, 6, 6);
        for i in 0..=6 {
            assert_eq!(
                f.get(i, 0),
                n0.omega_part.coefficient(i).unwrap(),
                "x^{i} t^0"
            );
        }
        // fixed x-slices of the denominator part are geometric in t
        let g6 = bivariate_rational(6, 4, 6);
        let ratio_num = QSeries::poly(1, &[(0, rat_i(-2)), (1, rat_i(-1)), (2, rat_i(1))]);
        let ratio_den = QSeries::poly(1, &[(0, rat_i(1)), (1, rat_i(-1))]).truncate(4);
        let ratio = ratio_num.mul(&ratio_den.invert().unwrap());
        // F(x, t) * (1 - t*ratio) has no t-dependence beyond degree 0
        for i in 0..=4 {
            for j in 1..=5 {
                let lhs = g6.get(i, j);
                let mut conv = Rat::zero();
                for k in 0..=i {
                    conv += ratio.coefficient(k).unwrap() * g6.get(i - k, j - 1);
                }
                assert_eq!(lhs, conv, "geometric step at x^{i} t^{j}");
            }
        }
    }

    #[test]
    fn residue_matches_direct() {
        for g in [2, 6] {
            let n = 8;
            let res = diagonal_via_residue(g, n).unwrap();
            let direct = monopole_series_direct(&MonopoleSeriesConfig::new(g, n, 1));
            assert!(res.eq_on_common_window(&direct).unwrap(), "g={g}");
        }
    }

    #[test]
    fn vieta_identities() {
        let n = 12;
        let one_plus_q = QSeries::poly(1, &[(0, rat_i(1)), (1, rat_i(1))]).truncate(n);
        let radicand = QSeries::constant(1, Rat::one())
            .add(&QSeries::monomial(1, 1, rat_i(8)).mul(&one_plus_q.invert().unwrap()));
        let root = radicand.sqrt().unwrap();
        let half = rat(1, 2);
        let x0 = QSeries::constant(1, Rat::one()).sub(&root).scale(&half);
        let x1 = QSeries::constant(1, Rat::one()).add(&root).scale(&half);
        assert!(x0.valuation().unwrap() >= 1);
        // x0 + x1 = 1
        let sum = x0.add(&x1);
        assert_eq!(sum.coefficient(0).unwrap(), rat_i(1));
        for e in 1..=n {
            assert_eq!(sum.coefficient(e).unwrap(), rat_i(0));
        }
        // x0 * x1 = -2q/(1+q)
        let prod = x0.mul(&x1);
        let expect = QSeries::monomial(1, 1, rat_i(-2)).mul(&one_plus_q.invert().unwrap());
        assert!(prod.eq_on_common_window(&expect).unwrap());
    }

    #[test]
    fn gerby_independence() {
        let base = monopole_series_direct(&MonopoleSeriesConfig::new(6, 6, 1));
        for r in [2, 3] {
            let gerby = monopole_series_direct(&MonopoleSeriesConfig::new(6, 6, r));
            assert!(gerby.eq_on_common_window(&base).unwrap(), "r={r}");
        }
    }

    #[test]
    fn gerby_scaling_on_monopole_integrand() {
        for g in [2, 5, 8] {
            for n in 0..=8 {
                let f = monopole_integrand(n, g);
                for r in [1, 2, 3, 5] {
                    assert!(
                        taut::gerby_scaling_check(&f, g, n, r).unwrap(),
                        "g={g} n={n} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let unit = NormalizationRecord {
            global_constant: Rat::one(),
            per_n_sign: PerNSign::Plus,
        };
        // constant term (1+1)^(1-g) = 2^(1-g)
        let c6 = closed_form(6, 3, &unit).unwrap();
        assert_eq!(c6.coefficient(0).unwrap(), rat(1, 32));
        assert_eq!(c6.coefficient(1).unwrap(), rat(-5, 16));
        assert_eq!(c6.coefficient(2).unwrap(), rat(5, 32));
        // g = 1: both exponents vanish
        let c1 = closed_form(1, 8, &unit).unwrap();
        assert_eq!(c1.coefficient(0).unwrap(), rat_i(1));
        for e in 1..=8 {
            assert_eq!(c1.coefficient(e).unwrap(), rat_i(0));
        }
    }

    #[test]
    fn probe_finds_unique_record() {
        let rec6 = sign_normalization_probe(6).unwrap();
        assert_eq!(rec6.global_constant, rat(-1, 64));
        assert_eq!(rec6.per_n_sign, PerNSign::Alternating);
        // idempotent
        assert_eq!(sign_normalization_probe(6).unwrap(), rec6);

        let rec2 = sign_normalization_probe(2).unwrap();
        assert_eq!(rec2.global_constant, rat(-1, 4));
        assert_eq!(rec2.per_n_sign, PerNSign::Alternating);
    }

    #[test]
    fn closed_form_matches_direct_after_probe() {
        for g in [2, 6] {
            let rec = sign_normalization_probe(g).unwrap();
            let n = 12;
            let closed = closed_form_normalized(g, n, &rec).unwrap();
            let direct = monopole_series_direct(&MonopoleSeriesConfig::new(g, n, 1));
            assert!(closed.eq_on_common_window(&direct).unwrap(), "g={g}");
        }
    }
}
