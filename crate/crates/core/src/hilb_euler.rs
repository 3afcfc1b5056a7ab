//! Euler-characteristic generating functions for Hilbert schemes of points
//! on surfaces with A_n singularities: cyclotomically weighted theta series
//! over the A_n quadratic form, the eta-power prefactor, and the smooth
//! specialization checked against a colored-partition counting oracle.

use num::bigint::BigInt;
use num::traits::{One, Zero};

use crate::cyclotomic::CyclotomicElement;
use crate::error::{Error, Result};
use crate::modular::eta_product_pow;
use crate::scalar::rat_i;
use crate::{QSeries, Rat};

/// The A_n quadratic form `Q(k) = sum_{1<=i<=j<=n} k_i k_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnQuadraticForm {
    pub n: usize,
}

impl AnQuadraticForm {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rank must be positive");
        AnQuadraticForm { n }
    }

    /// Literal double sum over `i <= j`.
    pub fn eval(&self, k: &[i64]) -> i64 {
        assert_eq!(k.len(), self.n);
        let mut q = 0;
        for i in 0..self.n {
            for j in i..self.n {
                q += k[i] * k[j];
            }
        }
        q
    }

    /// Closed form `((sum k)^2 + sum k^2)/2`; agrees with `eval` and makes
    /// positive definiteness plain.
    pub fn eval_via_sums(&self, k: &[i64]) -> i64 {
        assert_eq!(k.len(), self.n);
        let s: i64 = k.iter().sum();
        let s2: i64 = k.iter().map(|x| x * x).sum();
        (s * s + s2) / 2
    }
}

/// Theta series of the A_n singularity: enumerate all `k` with `Q(k) <= N`,
/// weight each by `zeta_(n+2)^(k1 + 2 k2 + ... + n kn)`, and require every
/// q-coefficient to reduce to a rational.
pub fn theta_an(n: usize, order: i64) -> Result<QSeries> {
    assert!(n >= 1 && order >= 0, "need n >= 1 and a nonnegative order");
    let m = n + 2;
    let cap = order.max(0);
    // per-coordinate bound from sum k_i^2 <= 2N
    let bound = num::integer::Roots::sqrt(&(2 * cap)) + 1;
    // root-of-unity exponent counts per q-power
    let mut counts = vec![vec![0i64; m]; (cap + 1) as usize];
    let form = AnQuadraticForm::new(n);

    // depth-first over coordinates with running sums; prune on sum of
    // squares
    let mut k = vec![0i64; n];
    enumerate(&mut k, 0, 0, 0, 0, bound, cap, m, &mut counts, &form);

    let mut terms: Vec<(i64, Rat)> = Vec::new();
    for (e, row) in counts.iter().enumerate() {
        let mut elem = CyclotomicElement::zero(m);
        for (j, c) in row.iter().enumerate() {
            if *c != 0 {
                elem.add_root_multiple(j as i64, rat_i(*c));
            }
        }
        // conjugation symmetry of the k -> -k involution
        debug_assert_eq!(elem, elem.conjugate());
        let value = elem
            .rational_value()
            .map_err(|_| Error::NonRationalCoefficient(e as i64))?;
        if !value.is_zero() {
            terms.push((e as i64, value));
        }
    }
    Ok(QSeries::from_window(1, 0, cap, &terms))
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    k: &mut Vec<i64>,
    depth: usize,
    sum: i64,
    sumsq: i64,
    wexp: i64,
    bound: i64,
    cap: i64,
    m: usize,
    counts: &mut [Vec<i64>],
    form: &AnQuadraticForm,
) {
    if depth == form.n {
        let q = (sum * sum + sumsq) / 2;
        if q <= cap {
            debug_assert_eq!(q, form.eval(k));
            counts[q as usize][wexp.rem_euclid(m as i64) as usize] += 1;
        }
        return;
    }
    let weight = (depth + 1) as i64;
    for v in -bound..=bound {
        let nsq = sumsq + v * v;
        if nsq > 2 * cap {
            continue;
        }
        k[depth] = v;
        enumerate(k, depth + 1, sum + v, nsq, wexp + weight * v, bound, cap, m, counts, form);
    }
    k[depth] = 0;
}

/// One-dimensional oracle for the A_1 theta series: integer weights
/// `2cos(2 pi k/3)`, which is 2 when 3 | k and -1 otherwise.
pub fn theta_a1_cosine_oracle(order: i64) -> QSeries {
    let cap = order.max(0);
    let mut terms: Vec<(i64, Rat)> = vec![(0, Rat::one())];
    let mut k = 1;
    while k * k <= cap {
        let w = if k % 3 == 0 { 2 } else { -1 };
        terms.push((k * k, rat_i(w)));
        k += 1;
    }
    QSeries::from_window(1, 0, cap, &merge(terms))
}

/// Half-space pairing oracle for n with n+2 in {3, 4, 6}, where the paired
/// weight `2cos(2 pi w/(n+2))` is an exact integer.
pub fn theta_an_pair_oracle(n: usize, order: i64) -> Option<QSeries> {
    let m = n + 2;
    let weights: &[i64] = match m {
        3 => &[2, -1, -1],
        4 => &[2, 0, -2, 0],
        6 => &[2, 1, -1, -2, -1, 1],
        _ => return None,
    };
    let cap = order.max(0);
    let bound = ((2 * cap) as f64).sqrt() as i64 + 1;
    let form = AnQuadraticForm::new(n);
    let mut acc: std::collections::BTreeMap<i64, i64> = std::collections::BTreeMap::new();
    acc.insert(0, 1); // k = 0
    let mut k = vec![0i64; n];
    pair_enumerate(&mut k, 0, bound, cap, m, weights, &form, &mut acc);
    let terms: Vec<(i64, Rat)> = acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(e, c)| (e, rat_i(c)))
        .collect();
    Some(QSeries::from_window(1, 0, cap, &terms))
}

#[allow(clippy::too_many_arguments)]
fn pair_enumerate(
    k: &mut Vec<i64>,
    depth: usize,
    bound: i64,
    cap: i64,
    m: usize,
    weights: &[i64],
    form: &AnQuadraticForm,
    acc: &mut std::collections::BTreeMap<i64, i64>,
) {
    if depth == form.n {
        if k.iter().all(|v| *v == 0) {
            return;
        }
        // canonical representative of the {k, -k} pair
        if k.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
            return;
        }
        let q = form.eval_via_sums(k);
        if q <= cap {
            let w: i64 = k
                .iter()
                .enumerate()
                .map(|(i, v)| (i as i64 + 1) * v)
                .sum();
            *acc.entry(q).or_insert(0) += weights[w.rem_euclid(m as i64) as usize];
        }
        return;
    }
    for v in -bound..=bound {
        k[depth] = v;
        pair_enumerate(k, depth + 1, bound, cap, m, weights, form, acc);
    }
    k[depth] = 0;
}

fn merge(terms: Vec<(i64, Rat)>) -> Vec<(i64, Rat)> {
    let mut acc: std::collections::BTreeMap<i64, Rat> = std::collections::BTreeMap::new();
    for (e, c) in terms {
        let entry = acc.remove(&e).unwrap_or_else(Rat::zero);
        let s = entry + c;
        if !s.is_zero() {
            acc.insert(e, s);
        }
    }
    acc.into_iter().collect()
}

/// `eta^(-chi) * prod Theta_(n_i)` with the `-chi/24` exponent offset on the
/// 1/24 grid.
pub fn hilb_euler_series(chi_resolution: i64, singularities: &[usize], order: i64) -> Result<QSeries> {
    let mut series = eta_product_pow(-chi_resolution, order, true);
    for &n in singularities {
        series = series.mul(&theta_an(n, order)?);
    }
    Ok(series)
}

/// Counts of partitions with `chi` colors per part size, by dynamic
/// programming; the independent oracle for the eta-power series.
pub fn colored_partition_oracle(chi: u32, order: usize) -> Vec<BigInt> {
    let mut dp = vec![BigInt::zero(); order + 1];
    dp[0] = BigInt::one();
    for _color in 0..chi {
        for part in 1..=order {
            for e in part..=order {
                let add = dp[e - part].clone();
                dp[e] += add;
            }
        }
    }
    dp
}

/// True iff `prod (1-q^n)^(-chi)` matches the colored-partition oracle to
/// the given order.
pub fn gottsche_check(chi: u32, order: i64) -> bool {
    let series = eta_product_pow(-(chi as i64), order, false);
    let oracle = colored_partition_oracle(chi, order.max(0) as usize);
    (0..=order.max(0)).all(|e| {
        series
            .coefficient(e)
            .is_ok_and(|c| c == Rat::from_integer(oracle[e as usize].clone()))
    })
}
