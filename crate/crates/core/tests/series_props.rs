//! Property tests for the series kernel: ring laws, inverse round trips,
//! the Leibniz rule, and window soundness under refinement.

use proptest::prelude::*;

use vwq_core::scalar::rat;
use vwq_core::series::Series;
use vwq_core::{QSeries, Rat};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn arb_series(invertible: bool) -> impl Strategy<Value = QSeries> {
    (
        prop::sample::select(vec![1i64, 2, 4]),
        -2i64..=0,
        6i64..=12,
        prop::collection::vec((0i64..=12, arb_rat()), 1..10),
        arb_rat(),
    )
        .prop_map(move |(den, lo, len, raw, lead)| {
            let hi = lo + len;
            let mut terms: Vec<(i64, Rat)> = raw
                .into_iter()
                .map(|(off, c)| (lo + off.min(len), c))
                .collect();
            if invertible {
                let lead = if lead == rat(0, 1) { rat(1, 1) } else { lead };
                terms.push((lo, lead));
            }
            // keep a deterministic, deduplicated term list
            let mut map = std::collections::BTreeMap::new();
            for (e, c) in terms {
                let entry = map.remove(&e).unwrap_or_else(|| rat(0, 1));
                let s = entry + c;
                if s != rat(0, 1) {
                    map.insert(e, s);
                }
            }
            let terms: Vec<(i64, Rat)> = map.into_iter().collect();
            Series::from_window(den, lo, hi, &terms)
        })
        .prop_filter("invertible needs a nonzero lead", move |s| {
            !invertible || s.valuation() == Some(s.lo())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(f in arb_series(false), g in arb_series(false), h in arb_series(false)) {
        prop_assert!(f.add(&g).eq_exact(&g.add(&f)));
        prop_assert!(f.mul(&g).eq_exact(&g.mul(&f)));
        prop_assert!(f.add(&g).add(&h).eq_exact(&f.add(&g.add(&h))));
        prop_assert!(f.mul(&g).mul(&h).eq_exact(&f.mul(&g.mul(&h))));
        prop_assert!(f.mul(&g.add(&h)).eq_exact(&f.mul(&g).add(&f.mul(&h))));
    }

    #[test]
    fn inverse_is_two_sided(f in arb_series(true)) {
        let inv = f.invert().unwrap();
        let one = QSeries::constant(f.unit_den(), rat(1, 1));
        prop_assert_eq!(f.mul(&inv).eq_on_common_window(&one), Some(true));
        prop_assert_eq!(inv.mul(&f).eq_on_common_window(&one), Some(true));
    }

    #[test]
    fn sqrt_squares_back(f in arb_series(true)) {
        let sq = f.mul(&f);
        let root = sq.sqrt().unwrap();
        prop_assert_eq!(root.mul(&root).eq_on_common_window(&sq), Some(true));
    }

    #[test]
    fn leibniz_rule(f in arb_series(false), g in arb_series(false)) {
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        prop_assert_eq!(lhs.eq_on_common_window(&rhs), Some(true));
    }

    #[test]
    fn window_soundness_under_refinement(f in arb_series(true), g in arb_series(true)) {
        // every coefficient an operation reports from truncated inputs must
        // agree with the same computation from fuller inputs
        let fr = f.truncate(f.lo() + 4);
        let gr = g.truncate(g.lo() + 4);

        let full = f.mul(&g);
        let part = fr.mul(&gr);
        prop_assert_eq!(part.eq_on_common_window(&full), Some(true));

        let inv_full = f.invert().unwrap();
        let inv_part = fr.invert().unwrap();
        prop_assert_eq!(inv_part.eq_on_common_window(&inv_full), Some(true));

        let sq_full = f.mul(&f).sqrt().unwrap();
        let sq_part = fr.mul(&fr).sqrt().unwrap();
        prop_assert_eq!(sq_part.eq_on_common_window(&sq_full), Some(true));

        let pow_full = f.int_pow(3).unwrap();
        let pow_part = fr.int_pow(3).unwrap();
        prop_assert_eq!(pow_part.eq_on_common_window(&pow_full), Some(true));
    }

    #[test]
    fn exp_log_round_trip(raw in prop::collection::vec((1i64..=10, arb_rat()), 1..8)) {
        let mut map = std::collections::BTreeMap::new();
        for (e, c) in raw {
            let entry = map.remove(&e).unwrap_or_else(|| rat(0, 1));
            let s = entry + c;
            if s != rat(0, 1) {
                map.insert(e, s);
            }
        }
        let terms: Vec<(i64, Rat)> = map.into_iter().collect();
        let f = Series::from_window(1, 0, 12, &terms);
        let back = f.exp_series().unwrap().log_series().unwrap();
        prop_assert_eq!(back.eq_on_common_window(&f), Some(true));
    }
}
