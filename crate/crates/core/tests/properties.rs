use cube_influence::cube::coordinate;
use cube_influence::influences::{integral_quadrature, pair_integral, pairs};
use cube_influence::operators::{d_i, d_pair, heat_apply, partial_i, partial_pair};
use cube_influence::verify::{check_hypercontractivity, Profile};
use cube_influence::{influence_report, FunctionSpec, HeatTime, PairIntegral, TruthTable};
use proptest::prelude::*;

fn real_table(max_n: usize) -> impl Strategy<Value = TruthTable> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-4.0f64..4.0, 1 << n).prop_map(move |v| TruthTable::new(n, v).unwrap())
    })
}

fn boolean_table(max_n: usize) -> impl Strategy<Value = TruthTable> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), 1 << n)
            .prop_map(move |v| TruthTable::new(n, v.into_iter().map(|b| if b { -1.0 } else { 1.0 }).collect()).unwrap())
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn mean_square(f: &TruthTable) -> f64 {
    f.values().iter().map(|v| v * v).sum::<f64>() / f.len() as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn transform_round_trips(f in real_table(8)) {
        let back = f.analyze().synthesize();
        for (a, b) in f.values().iter().zip(back.values()) {
            prop_assert!(close(*a, *b, 1e-12));
        }
    }

    #[test]
    fn parseval(f in real_table(8)) {
        prop_assert!(close(f.analyze().energy(), mean_square(&f), 1e-12));
    }

    #[test]
    fn transform_is_linear(f in real_table(6), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let g = f.map(|v| v * v - 1.0).unwrap();
        let h = TruthTable::new(f.n(), f.values().iter().zip(g.values()).map(|(x, y)| a * x + b * y).collect()).unwrap();
        let (sf, sg, sh) = (f.analyze(), g.analyze(), h.analyze());
        for m in 0..sh.coeffs().len() {
            prop_assert!(close(sh.coeff(m), a * sf.coeff(m) + b * sg.coeff(m), 1e-12));
        }
    }

    #[test]
    fn derivative_is_coordinate_times_partial(f in real_table(7), pick in 0usize..64) {
        let i = 1 + pick % f.n();
        let (d, p) = (d_i(&f, i).unwrap(), partial_i(&f, i).unwrap());
        for m in 0..f.len() {
            prop_assert_eq!(d.values()[m], coordinate(m, i) * p.values()[m]);
        }
    }

    #[test]
    fn derivative_spectrum_is_supported_on_masks_with_i(f in real_table(7), pick in 0usize..64) {
        let i = 1 + pick % f.n();
        let s = f.analyze();
        let ds = d_i(&f, i).unwrap().analyze();
        let bit = 1usize << (i - 1);
        for m in 0..ds.coeffs().len() {
            let expected = if m & bit != 0 { s.coeff(m) } else { 0.0 };
            prop_assert!(close(ds.coeff(m), expected, 1e-12));
        }
    }

    #[test]
    fn second_derivatives_are_symmetric(f in real_table(6), a in 0usize..64, b in 0usize..64) {
        let n = f.n();
        let (i, j) = (1 + a % n, 1 + b % n);
        prop_assume!(i != j);
        let (a, b) = (d_pair(&f, i, j).unwrap(), d_pair(&f, j, i).unwrap());
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!(close(*x, *y, 1e-15));
        }
    }

    #[test]
    fn boolean_partial_pair_takes_half_steps(f in boolean_table(6), a in 0usize..64, b in 0usize..64) {
        let n = f.n();
        let (i, j) = (1 + a % n, 1 + b % n);
        prop_assume!(i != j);
        let g = partial_pair(&f, i, j).unwrap();
        prop_assert!(g.values().iter().all(|v| [-1.0, -0.5, 0.0, 0.5, 1.0].contains(v)));
    }

    #[test]
    fn heat_is_a_semigroup(f in real_table(7), s in 0.0f64..3.0, t in 0.0f64..3.0) {
        let once = heat_apply(&f, HeatTime::new(s + t).unwrap());
        let twice = heat_apply(&heat_apply(&f, HeatTime::new(s).unwrap()), HeatTime::new(t).unwrap());
        for (a, b) in once.values().iter().zip(twice.values()) {
            prop_assert!(close(*a, *b, 1e-12));
        }
    }

    #[test]
    fn heat_contracts_every_norm_used(f in real_table(7), t in 0.0f64..5.0) {
        let g = heat_apply(&f, HeatTime::new(t).unwrap());
        for p in [1.0, 2.0, 3.0, f64::INFINITY] {
            prop_assert!(g.lp_norm(p).unwrap() <= f.lp_norm(p).unwrap() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn report_invariants(f in real_table(7)) {
        let r = influence_report(&f).unwrap();
        let n = f.n();
        let weighted: f64 = r.degree_weights.iter().enumerate().map(|(k, w)| k as f64 * w).sum();
        prop_assert!(close(r.total, weighted, 1e-12));
        prop_assert!(close(r.energy(), mean_square(&f), 1e-12));
        for (i, j) in pairs(n) {
            let v = r.pair_influence(i, j);
            prop_assert!(v >= 0.0);
            prop_assert!(v <= r.influence(i).min(r.influence(j)) * (1.0 + 1e-12));
        }
        let rows: Vec<f64> = (1..=n).map(|i| r.row_sum(i)).collect();
        prop_assert_eq!(r.theta, rows.iter().copied().fold(0.0, f64::max));
        // each I_ij counts every |A| >= 2 mask once per pair inside it
        let pair_total: f64 = r.pair_influences.iter().sum();
        let by_degree: f64 = r.degree_weights.iter().enumerate().map(|(k, w)| (k * k.saturating_sub(1) / 2) as f64 * w).sum();
        prop_assert!(close(pair_total, by_degree, 1e-12));
    }

    #[test]
    fn identities_hold_on_real_tables(f in real_table(7)) {
        let p = Profile::new(&f).unwrap();
        prop_assert!(p.high_degree_identity().unwrap().passed());
        for i in 1..=f.n() {
            prop_assert!(p.coordinate_excess_identity(i).unwrap().passed());
        }
    }

    #[test]
    fn boolean_bounds_hold(f in boolean_table(7)) {
        let p = Profile::new(&f).unwrap();
        for (i, j) in pairs(f.n()) {
            prop_assert!(p.pair_integral_bound(i, j).unwrap().passed());
            prop_assert!(p.weighted_pair_integral_bound(i, j).unwrap().passed());
        }
        for i in 1..=f.n() {
            prop_assert!(p.level_one_bound(i).unwrap().passed());
        }
        prop_assert!(p.log_sobolev().passed());
        prop_assert!(p.pair_influence_dichotomy(20.0).pass != Some(false));
        prop_assert!(p.generalized_dichotomy(20.0).pass != Some(false));
        prop_assert!(p.coordinate_chain_dichotomy().pass != Some(false));
        prop_assert!(p.row_sum_dichotomy().pass != Some(false));
    }

    #[test]
    fn hypercontractivity_on_real_tables(f in real_table(7), t in 0.0f64..4.0) {
        prop_assert!(check_hypercontractivity(&f, HeatTime::new(t).unwrap()).unwrap().passed());
    }

    #[test]
    fn text_format_round_trips(f in boolean_table(8)) {
        let text = f.to_text().unwrap();
        prop_assert_eq!(TruthTable::parse_text(&text).unwrap(), f);
    }

    #[test]
    fn spec_strings_round_trip(n in 2usize..=12, seed in any::<u64>(), pick in 0usize..64) {
        let i = 1 + pick % n;
        for spec in [
            FunctionSpec::Dictator { n, i },
            FunctionSpec::Antidictator { n, i },
            FunctionSpec::Majority { n: n | 1 },
            FunctionSpec::Vee { n },
            FunctionSpec::RandomBoolean { n, seed },
            FunctionSpec::RandomReal { n, seed },
            FunctionSpec::Walsh { n, mask: pick % (1 << n) },
        ] {
            let parsed: FunctionSpec = spec.to_string().parse().unwrap();
            prop_assert_eq!(parsed, spec);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quadrature_matches_closed_forms(f in boolean_table(5)) {
        let s = f.analyze();
        for (i, j) in pairs(f.n()) {
            for kind in [PairIntegral::Shifted, PairIntegral::Plain] {
                let closed = pair_integral(&s, i, j, kind).unwrap();
                let quad = integral_quadrature(&f, i, j, kind).unwrap();
                prop_assert!((closed - quad).abs() <= 1e-7, "{kind:?} ({i},{j}): {closed} vs {quad}");
            }
        }
    }
}
