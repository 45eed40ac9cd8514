//! Batched verification over exhaustive, sampled and example function sets.
//!
//! A [`Plan`] enumerates work units by index. Each unit expands to one or
//! more tables, every table runs the checks of the selected [`Suite`], and
//! the resulting [`Row`]s come back in unit order regardless of how many
//! threads did the work.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use rayon::ThreadPool;
use serde::Serialize;

use crate::cube::{MAX_DIM, MIN_DIM};
use crate::error::{Error, Result};
use crate::influences::pairs;
use crate::json::fmt_real;
use crate::operators::{check_semigroup_derivative_identity, partial_i, HeatTime};
use crate::verdict::{StatementId, Verdict};
use crate::verify::{check_hypercontractivity, check_scalar_dichotomy, Profile, ScalarVariant};
use crate::zoo::FunctionSpec;
use crate::TruthTable;

/// Largest dimension for exhaustive enumeration (`2^16` functions).
pub const EXHAUSTIVE_MAX_DIM: usize = 4;
/// Time grid for the hypercontractivity checks.
pub const HEAT_TIMES: [f64; 6] = [0.0, 0.1, 0.5, 1.0, 2.0, 10.0];
/// Time at which the semigroup identity is checked.
pub const SEMIGROUP_TIME: f64 = 0.37;
/// Up to this dimension the semigroup identity runs on every pair.
const SEMIGROUP_ALL_PAIRS_MAX_DIM: usize = 6;
/// Units handed to the thread pool at once.
const BLOCK: usize = 1024;

/// Which group of statements to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Inequalities,
    Theorems,
    All,
}

impl Suite {
    fn identities(self) -> bool {
        matches!(self, Self::Identities | Self::All)
    }
    fn inequalities(self) -> bool {
        matches!(self, Self::Inequalities | Self::All)
    }
    fn theorems(self) -> bool {
        matches!(self, Self::Theorems | Self::All)
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "identities" => Ok(Self::Identities),
            "inequalities" => Ok(Self::Inequalities),
            "theorems" => Ok(Self::Theorems),
            "all" => Ok(Self::All),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

/// Knobs shared by every check in a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub suite: Suite,
    /// Constant of the constant-or-dictator dichotomies.
    pub c: f64,
}

/// SplitMix64 finalizer applied to `seed + (index + 1) * golden`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Boolean table whose value at point `k` is `-1` iff bit `k` of `index` is set.
pub fn exhaustive_table(n: usize, index: u64) -> Result<TruthTable> {
    if n > EXHAUSTIVE_MAX_DIM {
        return Err(Error::Dimension(n));
    }
    TruthTable::from_fn(n, |k| if (index >> k) & 1 == 1 { -1.0 } else { 1.0 })
}

/// The fixed example list: the V function and tribes configurations from the
/// scaling discussion plus the extremal families.
pub fn example_specs() -> Vec<FunctionSpec> {
    let mut specs: Vec<FunctionSpec> = (3..=12).map(|n| FunctionSpec::Vee { n }).collect();
    specs.extend([(8, 2), (12, 3), (16, 4)].map(|(n, w)| FunctionSpec::Tribes { n, w }));
    specs.extend([
        FunctionSpec::Dictator { n: 5, i: 2 },
        FunctionSpec::Antidictator { n: 5, i: 4 },
        FunctionSpec::Dictator { n: 10, i: 7 },
        FunctionSpec::Constant { n: 4, negative: false },
        FunctionSpec::Constant { n: 6, negative: true },
        FunctionSpec::Majority { n: 3 },
        FunctionSpec::Majority { n: 5 },
        FunctionSpec::And2 { n: 4 },
        FunctionSpec::Walsh { n: 2, mask: 0b11 },
        FunctionSpec::Walsh { n: 4, mask: 0b0110 },
        FunctionSpec::PointIndicator { n: 8, point: 0 },
        FunctionSpec::RandomReal { n: 6, seed: 1 },
    ]);
    specs
}

/// What to enumerate.
#[derive(Debug, Clone, PartialEq)]
pub enum Plan {
    /// Every Boolean function for each listed dimension (each at most 4).
    Exhaustive { dims: Vec<usize> },
    /// `count` units; unit `k` uses dimension `dims[k % dims.len()]` and
    /// yields a random Boolean table seeded with `derive_seed(seed, k)` and a
    /// random real table seeded with `derive_seed(derive_seed(seed, k), 1)`.
    Sample { dims: Vec<usize>, count: u64, seed: u64 },
    /// [`example_specs`], one unit each.
    Examples,
}

impl Plan {
    pub fn validate(&self) -> Result<()> {
        let check_dims = |dims: &[usize], max: usize| -> Result<()> {
            if dims.is_empty() {
                return Err(Error::Spec {
                    spec: "plan".into(),
                    reason: "no dimensions given".into(),
                });
            }
            match dims.iter().find(|&&n| !(MIN_DIM..=max).contains(&n)) {
                Some(&n) => Err(Error::Dimension(n)),
                None => Ok(()),
            }
        };
        match self {
            Self::Exhaustive { dims } => check_dims(dims, EXHAUSTIVE_MAX_DIM).map_err(|e| match e {
                Error::Dimension(n) => Error::Spec {
                    spec: format!("exhaustive:n={n}"),
                    reason: format!("exhaustive mode needs {MIN_DIM} <= n <= {EXHAUSTIVE_MAX_DIM}"),
                },
                e => e,
            }),
            Self::Sample { dims, count, .. } => {
                check_dims(dims, MAX_DIM)?;
                if *count == 0 {
                    return Err(Error::Spec {
                        spec: "plan".into(),
                        reason: "sample count must be at least 1".into(),
                    });
                }
                Ok(())
            }
            Self::Examples => Ok(()),
        }
    }

    pub fn units(&self) -> u64 {
        match self {
            Self::Exhaustive { dims } => dims.iter().map(|&n| 1u64 << (1 << n)).sum(),
            Self::Sample { count, .. } => *count,
            Self::Examples => example_specs().len() as u64,
        }
    }

    /// Labelled tables for one unit.
    pub fn tables(&self, unit: u64) -> Result<Vec<(String, TruthTable)>> {
        match self {
            Self::Exhaustive { dims } => {
                let mut rest = unit;
                for &n in dims {
                    let size = 1u64 << (1 << n);
                    if rest < size {
                        return Ok(vec![(
                            format!("exhaustive:n={n},index={rest}"),
                            exhaustive_table(n, rest)?,
                        )]);
                    }
                    rest -= size;
                }
                Err(Error::Spec {
                    spec: "plan".into(),
                    reason: format!("unit {unit} out of range"),
                })
            }
            Self::Sample { dims, seed, .. } => {
                let n = dims[(unit % dims.len() as u64) as usize];
                let bool_seed = derive_seed(*seed, unit);
                let real_seed = derive_seed(bool_seed, 1);
                [
                    FunctionSpec::RandomBoolean { n, seed: bool_seed },
                    FunctionSpec::RandomReal { n, seed: real_seed },
                ]
                .into_iter()
                .map(|s| Ok((s.to_string(), s.generate()?)))
                .collect()
            }
            Self::Examples => {
                let spec = &example_specs()[unit as usize];
                Ok(vec![(spec.to_string(), spec.generate()?)])
            }
        }
    }
}

/// One line of the verdict stream.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub function: String,
    pub params: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

fn semigroup_pairs(n: usize) -> Vec<(usize, usize)> {
    if n <= SEMIGROUP_ALL_PAIRS_MAX_DIM {
        pairs(n).collect()
    } else {
        vec![(1, 2), (1, n), (n - 1, n)]
    }
}

/// Runs every check of the configured suite that fits the table.
///
/// Statements about Boolean functions run only on Boolean tables. For a
/// Boolean `f` the isoperimetric check runs on both `{0,1}` recodings
/// `(1-f)/2` and `(1+f)/2`, and the three-valued check on each `∂_i f`;
/// tables that are already `{0,1}`- or `{-1,0,1}`-valued are checked directly.
pub fn run_checks(label: &str, f: &TruthTable, config: &CheckConfig) -> Result<Vec<Row>> {
    let n = f.n();
    let profile = Profile::new(f)?;
    let boolean = profile.is_boolean();
    let mut rows = Vec::new();
    let mut push = |params: String, verdict: Verdict| {
        rows.push(Row {
            function: label.to_owned(),
            params,
            verdict,
        });
    };

    if config.suite.identities() {
        push(String::new(), profile.high_degree_identity()?);
        for i in 1..=n {
            push(format!("i={i}"), profile.coordinate_excess_identity(i)?);
        }
        let t = HeatTime::new(SEMIGROUP_TIME)?;
        for (i, j) in semigroup_pairs(n) {
            push(
                format!("i={i},j={j},t={SEMIGROUP_TIME}"),
                check_semigroup_derivative_identity(f, i, j, t)?,
            );
        }
    }

    if config.suite.inequalities() {
        if boolean {
            for (i, j) in pairs(n) {
                push(format!("i={i},j={j}"), profile.pair_integral_bound(i, j)?);
                push(format!("i={i},j={j}"), profile.weighted_pair_integral_bound(i, j)?);
            }
            for i in 1..=n {
                push(format!("i={i}"), profile.level_one_bound(i)?);
            }
            for (name, sign) in [("(1-f)/2", -1.0), ("(1+f)/2", 1.0)] {
                let h = f.map(|v| (1.0 + sign * v) / 2.0)?;
                push(format!("h={name}"), Profile::new(&h)?.edge_isoperimetry());
            }
            for i in 1..=n {
                let g = partial_i(f, i)?;
                push(format!("g=partial_{i}"), Profile::new(&g)?.three_valued_concentration());
            }
        } else {
            if f.is_indicator() {
                push(String::new(), profile.edge_isoperimetry());
            }
            if f.is_three_valued() {
                push(String::new(), profile.three_valued_concentration());
            }
        }
        for t in HEAT_TIMES {
            push(format!("t={t}"), check_hypercontractivity(f, HeatTime::new(t)?)?);
        }
        push(String::new(), profile.log_sobolev());
    }

    if config.suite.theorems() && boolean {
        push(String::new(), profile.row_sum_dichotomy());
        push(format!("c={}", config.c), profile.pair_influence_dichotomy(config.c));
        push(format!("c={}", config.c), profile.generalized_dichotomy(config.c));
        push(String::new(), profile.coordinate_chain_dichotomy());
    }
    Ok(rows)
}

/// Grid over `x, y in [0, max]` with the given step and the listed `z`
/// values, keeping only triples that satisfy `0 <= x <= y <= x^2 + z`.
pub fn scalar_grid(step: f64, max: f64, zs: &[f64], variant: ScalarVariant) -> Vec<(f64, f64, f64, Verdict)> {
    let steps = (max / step).round() as usize;
    let mut out = Vec::new();
    for &z in zs {
        for xi in 0..=steps {
            let x = xi as f64 * step;
            for yi in xi..=steps {
                let y = yi as f64 * step;
                if y > x * x + z {
                    break;
                }
                out.push((x, y, z, check_scalar_dichotomy(x, y, z, variant)));
            }
        }
    }
    out
}

/// Per-statement counters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatementSummary {
    pub checked: u64,
    pub applicable: u64,
    pub passed: u64,
    pub failed: u64,
    /// Smallest slack over passing verdicts; `+inf` when none passed.
    pub min_slack: f64,
}

impl Default for StatementSummary {
    fn default() -> Self {
        Self {
            checked: 0,
            applicable: 0,
            passed: 0,
            failed: 0,
            min_slack: f64::INFINITY,
        }
    }
}

/// Order-independent reduction of verdicts by statement.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    pub statements: BTreeMap<StatementId, StatementSummary>,
}

impl Summary {
    pub fn add(&mut self, v: &Verdict) {
        let s = self.statements.entry(v.statement_id).or_default();
        s.checked += 1;
        if v.applicable {
            s.applicable += 1;
        }
        match v.pass {
            Some(true) => {
                s.passed += 1;
                if v.slack < s.min_slack {
                    s.min_slack = v.slack;
                }
            }
            Some(false) => s.failed += 1,
            None => {}
        }
    }

    pub fn merge(&mut self, other: &Summary) {
        for (id, o) in &other.statements {
            let s = self.statements.entry(*id).or_default();
            s.checked += o.checked;
            s.applicable += o.applicable;
            s.passed += o.passed;
            s.failed += o.failed;
            s.min_slack = s.min_slack.min(o.min_slack);
        }
    }

    pub fn checked(&self) -> u64 {
        self.statements.values().map(|s| s.checked).sum()
    }

    pub fn failures(&self) -> u64 {
        self.statements.values().map(|s| s.failed).sum()
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, s) in &self.statements {
            writeln!(
                f,
                "{:<30} checked={} applicable={} passed={} failed={} min_slack={}",
                id.as_str(),
                s.checked,
                s.applicable,
                s.passed,
                s.failed,
                fmt_real(s.min_slack)
            )?;
        }
        write!(f, "total checked={} failed={}", self.checked(), self.failures())
    }
}

/// Runs the plan on `pool`, handing rows to `sink` in unit order.
///
/// Units are processed in contiguous blocks; within a block the pool maps
/// units in parallel and the ordered collect restores unit order, so the
/// row sequence does not depend on the thread count.
pub fn run<E: From<Error>>(
    plan: &Plan,
    config: &CheckConfig,
    pool: &ThreadPool,
    mut sink: impl FnMut(&Row) -> std::result::Result<(), E>,
) -> std::result::Result<Summary, E> {
    plan.validate()?;
    let mut summary = Summary::default();
    let total = plan.units();
    let mut start = 0u64;
    while start < total {
        let end = (start + BLOCK as u64).min(total);
        let block: Vec<Vec<Row>> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|unit| -> Result<Vec<Row>> {
                    let mut rows = Vec::new();
                    for (label, table) in plan.tables(unit)? {
                        rows.extend(run_checks(&label, &table, config)?);
                    }
                    Ok(rows)
                })
                .collect::<Result<_>>()
        })?;
        for row in block.iter().flatten() {
            summary.add(&row.verdict);
            sink(row)?;
        }
        start = end;
    }
    Ok(summary)
}
