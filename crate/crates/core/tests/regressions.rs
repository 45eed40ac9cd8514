use cube_influence::influences::pairs;
use cube_influence::scan::{tribes_row, vee_row};
use cube_influence::suite::{self, CheckConfig, Plan, Suite};
use cube_influence::verify::Profile;
use cube_influence::{influence_report, Error, FunctionSpec, StatementId};

fn table(spec: &str) -> cube_influence::TruthTable {
    spec.parse::<FunctionSpec>().unwrap().generate().unwrap()
}

// Pair influences below were computed independently with numpy from the
// point-domain definition E[(D_i D_j f)^2].
#[test]
fn tribes_pair_influences() {
    let row = tribes_row(8, 2).unwrap();
    assert_eq!((row.same, row.cross), (27.0 / 256.0, 9.0 / 256.0));
    let row = tribes_row(12, 3).unwrap();
    assert_eq!((row.same, row.cross), (0.083740234375, 0.011962890625));
    let row = tribes_row(16, 4).unwrap();
    assert_eq!((row.same, row.cross), (0.0514984130859375, 0.0034332275390625));
}

#[test]
fn tribes_ratio_depends_only_on_width() {
    for (n, w) in [(8, 2), (12, 2), (12, 3), (15, 3), (16, 4), (20, 4)] {
        let row = tribes_row(n, w).unwrap();
        assert_eq!(row.ratio(), ((1u64 << w) - 1) as f64, "({n},{w})");
    }
}

#[test]
fn tribes_same_tribe_pairs_dominate() {
    let f = table("tribes:n=12,w=3");
    let r = influence_report(&f).unwrap();
    for (i, j) in pairs(12) {
        let same = (i - 1) / 3 == (j - 1) / 3;
        let v = r.pair_influence(i, j);
        if same {
            assert_eq!(v, r.pair_influence(1, 2));
        } else {
            assert_eq!(v, r.pair_influence(1, 4));
        }
    }
    assert!(r.pair_influence(1, 2) > r.pair_influence(1, 4));
}

#[test]
fn vee_closed_forms() {
    for n in 3..=12 {
        let row = vee_row(n).unwrap();
        assert_eq!(row.theta * (1u64 << n) as f64, 4.0 * (n as f64 - 1.0), "n={n}");
        assert_eq!(row.hat_1, 1.0 - 4.0 / (1u64 << n) as f64);
        assert_eq!(row.influence_1, 1.0);
    }
}

#[test]
fn boolean_influence_is_flip_probability() {
    for spec in [
        "majority:n=5",
        "tribes:n=8,w=2",
        "vee:n=6",
        "random_boolean:n=9,seed=4",
        "and2:n=3",
    ] {
        let f = table(spec);
        let r = influence_report(&f).unwrap();
        for i in 1..=f.n() {
            let bit = 1 << (i - 1);
            let flips = (0..f.len()).filter(|&m| f.values()[m] != f.values()[m ^ bit]).count();
            assert_eq!(r.influence(i), flips as f64 / f.len() as f64, "{spec} i={i}");
        }
    }
}

#[test]
fn exhaustive_n3_inequalities() {
    let config = CheckConfig {
        suite: Suite::Inequalities,
        c: 20.0,
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(2).build().unwrap();
    let summary = suite::run(&Plan::Exhaustive { dims: vec![3] }, &config, &pool, |_| {
        Ok::<_, Error>(())
    })
    .unwrap();
    assert_eq!(summary.failures(), 0, "{summary}");
    let iso = summary.statements[&StatementId::EdgeIsoperimetry];
    assert_eq!((iso.checked, iso.applicable), (512, 512));
    assert_eq!(summary.statements[&StatementId::LevelOneBound].passed, 256 * 3);
}

#[test]
fn isoperimetry_on_subcubes() {
    // codimension-k subcube: P = 2^-k, each of its k coordinates flips h with
    // probability 2P, so I = kP/2 against the bound kP ln 2 / 2
    for k in 1..=4 {
        let h = cube_influence::TruthTable::from_fn(4, |m| if m & ((1 << k) - 1) == 0 { 1.0 } else { 0.0 }).unwrap();
        let v = Profile::new(&h).unwrap().edge_isoperimetry();
        assert!(v.passed());
        let p = 0.5f64.powi(k);
        assert_eq!(v.rhs, k as f64 * p / 2.0);
        assert!((v.lhs - k as f64 * p * 2f64.ln() / 2.0).abs() < 1e-15);
    }
}

#[test]
fn maj3_is_not_applicable_for_row_sum_dichotomy() {
    let f = table("majority:n=3");
    let p = Profile::new(&f).unwrap();
    assert_eq!(p.report().theta, 0.5);
    assert!(!p.row_sum_dichotomy().applicable);
}
