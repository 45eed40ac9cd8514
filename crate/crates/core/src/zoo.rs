//! Named function families.
//!
//! Random families draw from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64`. Each point consumes one `u64`: a Boolean value is `-1`
//! when the top bit is set, a real value is `2 u / 2^64 - 1` built from the
//! top 53 bits.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube::{coordinate, walsh, TruthTable, MAX_DIM, MIN_DIM};
use crate::error::{Error, Result};

/// Symbolic description of a function on the cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    /// `+1` or `-1` everywhere.
    Constant {
        n: usize,
        negative: bool,
    },
    /// `r_i`.
    Dictator {
        n: usize,
        i: usize,
    },
    /// `-r_i`.
    Antidictator {
        n: usize,
        i: usize,
    },
    /// `w_A`.
    Walsh {
        n: usize,
        mask: usize,
    },
    /// `sign(x_1 + ... + x_n)`, `n` odd.
    Majority {
        n: usize,
    },
    /// `+1` iff `x_1 = x_2 = 1`.
    And2 {
        n: usize,
    },
    /// OR of ANDs over consecutive blocks of width `w`, with `+1` as true.
    Tribes {
        n: usize,
        w: usize,
    },
    /// `x_1 (1 - 2 prod_{k>=2} (1 + x_k)/2)`.
    Vee {
        n: usize,
    },
    /// `{0,1}`-valued indicator of the point with index `point`.
    PointIndicator {
        n: usize,
        point: usize,
    },
    RandomBoolean {
        n: usize,
        seed: u64,
    },
    /// i.i.d. uniform on `[-1, 1)`.
    RandomReal {
        n: usize,
        seed: u64,
    },
    /// Truth-table text file.
    File {
        path: PathBuf,
    },
}

impl FunctionSpec {
    pub fn family(&self) -> &'static str {
        match self {
            Self::Constant { .. } => "constant",
            Self::Dictator { .. } => "dictator",
            Self::Antidictator { .. } => "antidictator",
            Self::Walsh { .. } => "walsh",
            Self::Majority { .. } => "majority",
            Self::And2 { .. } => "and2",
            Self::Tribes { .. } => "tribes",
            Self::Vee { .. } => "vee",
            Self::PointIndicator { .. } => "point_indicator",
            Self::RandomBoolean { .. } => "random_boolean",
            Self::RandomReal { .. } => "random_real",
            Self::File { .. } => "file",
        }
    }

    /// Dimension, when it is known without reading a file.
    pub fn dimension(&self) -> Option<usize> {
        match *self {
            Self::Constant { n, .. }
            | Self::Dictator { n, .. }
            | Self::Antidictator { n, .. }
            | Self::Walsh { n, .. }
            | Self::Majority { n }
            | Self::And2 { n }
            | Self::Tribes { n, .. }
            | Self::Vee { n }
            | Self::PointIndicator { n, .. }
            | Self::RandomBoolean { n, .. }
            | Self::RandomReal { n, .. } => Some(n),
            Self::File { .. } => None,
        }
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::Spec {
            spec: self.to_string(),
            reason: reason.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.dimension() {
            if !(MIN_DIM..=MAX_DIM).contains(&n) {
                return Err(Error::Dimension(n));
            }
        }
        match *self {
            Self::Dictator { n, i } | Self::Antidictator { n, i } if !(1..=n).contains(&i) => {
                Err(self.invalid(format!("coordinate {i} out of range [1, {n}]")))
            }
            Self::Walsh { n, mask } if mask >> n != 0 => {
                Err(self.invalid(format!("mask {mask:#b} has bits beyond n = {n}")))
            }
            Self::Majority { n } if n % 2 == 0 => Err(self.invalid("majority needs odd n")),
            Self::Tribes { n, w } if w == 0 || n % w != 0 => {
                Err(self.invalid(format!("tribe width {w} must divide n = {n}")))
            }
            Self::PointIndicator { n, point } if point >> n != 0 => {
                Err(self.invalid(format!("point index {point} out of range for n = {n}")))
            }
            _ => Ok(()),
        }
    }

    /// Evaluates the spec into a table.
    pub fn generate(&self) -> Result<TruthTable> {
        self.validate()?;
        match *self {
            Self::Constant { n, negative } => TruthTable::constant(n, if negative { -1.0 } else { 1.0 }),
            Self::Dictator { n, i } => TruthTable::from_fn(n, |m| coordinate(m, i)),
            Self::Antidictator { n, i } => TruthTable::from_fn(n, |m| -coordinate(m, i)),
            Self::Walsh { n, mask } => TruthTable::from_fn(n, |m| walsh(mask, m)),
            Self::Majority { n } => TruthTable::from_fn(n, |m| {
                // more +1 coordinates than -1 coordinates
                if 2 * (m.count_ones() as usize) < n {
                    1.0
                } else {
                    -1.0
                }
            }),
            Self::And2 { n } => TruthTable::from_fn(n, |m| if m & 0b11 == 0 { 1.0 } else { -1.0 }),
            Self::Tribes { n, w } => {
                let block = (1usize << w) - 1;
                TruthTable::from_fn(n, |m| {
                    let any = (0..n / w).any(|b| (m >> (b * w)) & block == 0);
                    if any {
                        1.0
                    } else {
                        -1.0
                    }
                })
            }
            Self::Vee { n } => TruthTable::from_fn(n, |m| {
                let flip = if m >> 1 == 0 { -1.0 } else { 1.0 };
                coordinate(m, 1) * flip
            }),
            Self::PointIndicator { n, point } => TruthTable::from_fn(n, |m| if m == point { 1.0 } else { 0.0 }),
            Self::RandomBoolean { n, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let values = (0..1usize << n)
                    .map(|_| if rng.next_u64() >> 63 == 1 { -1.0 } else { 1.0 })
                    .collect();
                TruthTable::new(n, values)
            }
            Self::RandomReal { n, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let values = (0..1usize << n)
                    .map(|_| 2.0 * ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64) - 1.0)
                    .collect();
                TruthTable::new(n, values)
            }
            Self::File { ref path } => TruthTable::read_text_file(path),
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = self.family();
        match self {
            Self::Constant { n, negative } => {
                write!(f, "{family}:n={n},sign={}", if *negative { "-1" } else { "1" })
            }
            Self::Dictator { n, i } | Self::Antidictator { n, i } => write!(f, "{family}:n={n},i={i}"),
            Self::Walsh { n, mask } => write!(f, "{family}:n={n},mask={mask:#b}"),
            Self::Majority { n } | Self::And2 { n } | Self::Vee { n } => write!(f, "{family}:n={n}"),
            Self::Tribes { n, w } => write!(f, "{family}:n={n},w={w}"),
            Self::PointIndicator { n, point } => write!(f, "{family}:n={n},point={point}"),
            Self::RandomBoolean { n, seed } | Self::RandomReal { n, seed } => {
                write!(f, "{family}:n={n},seed={seed}")
            }
            Self::File { path } => write!(f, "{family}:path={}", path.display()),
        }
    }
}

fn parse_uint(text: &str) -> Option<u64> {
    let text = text.trim();
    if let Some(bin) = text.strip_prefix("0b") {
        u64::from_str_radix(bin, 2).ok()
    } else if let Some(hex) = text.strip_prefix("0x") {
        u64::from_str_radix(hex, 16).ok()
    } else {
        text.parse().ok()
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    /// Parses `family:key=val,key=val`, e.g. `tribes:n=12,w=3` or `file:path=tt.txt`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::Spec {
            spec: s.to_owned(),
            reason,
        };
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params: Vec<(&str, &str)> = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| bad(format!("parameter `{item}` is not key=value")))?;
            params.push((k.trim(), v.trim()));
        }
        let raw = |key: &str| params.iter().find(|(k, _)| *k == key).map(|&(_, v)| v);
        let uint = |key: &str| -> Result<Option<u64>> {
            raw(key)
                .map(|v| parse_uint(v).ok_or_else(|| bad(format!("`{key}={v}` is not an unsigned integer"))))
                .transpose()
        };
        let required =
            |key: &str| -> Result<u64> { uint(key)?.ok_or_else(|| bad(format!("missing parameter `{key}`"))) };
        let n = || required("n").map(|v| v as usize);

        let allowed: &[&str] = match family {
            "constant" => &["n", "sign"],
            "dictator" | "antidictator" => &["n", "i"],
            "walsh" => &["n", "mask"],
            "majority" | "and2" | "vee" => &["n"],
            "tribes" => &["n", "w"],
            "point_indicator" => &["n", "point"],
            "random_boolean" | "random_real" => &["n", "seed"],
            "file" => &["path"],
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(bad(format!("unknown parameter `{k}` for {family}")));
        }

        let spec = match family {
            "constant" => {
                let negative = match raw("sign").unwrap_or("1") {
                    "1" | "+1" | "+" => false,
                    "-1" | "-" => true,
                    other => return Err(bad(format!("sign must be 1 or -1, got `{other}`"))),
                };
                Self::Constant { n: n()?, negative }
            }
            "dictator" => Self::Dictator {
                n: n()?,
                i: uint("i")?.unwrap_or(1) as usize,
            },
            "antidictator" => Self::Antidictator {
                n: n()?,
                i: uint("i")?.unwrap_or(1) as usize,
            },
            "walsh" => {
                let n = n()?;
                let mask = match raw("mask") {
                    Some("all") | None => (1usize << n.min(63)) - 1,
                    Some(_) => required("mask")? as usize,
                };
                Self::Walsh { n, mask }
            }
            "majority" => Self::Majority { n: n()? },
            "and2" => Self::And2 { n: n()? },
            "vee" => Self::Vee { n: n()? },
            "tribes" => {
                let n = n()?;
                let w = match uint("w")? {
                    Some(w) => w as usize,
                    None => default_tribe_width(n)?,
                };
                Self::Tribes { n, w }
            }
            "point_indicator" => Self::PointIndicator {
                n: n()?,
                point: uint("point")?.unwrap_or(0) as usize,
            },
            "random_boolean" => Self::RandomBoolean {
                n: n()?,
                seed: required("seed")?,
            },
            "random_real" => Self::RandomReal {
                n: n()?,
                seed: required("seed")?,
            },
            "file" => Self::File {
                path: raw("path")
                    .ok_or_else(|| bad("missing parameter `path`".into()))?
                    .into(),
            },
            _ => unreachable!("family checked above"),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Divisor of `n` closest to `log2(n / ln n)`, ties toward the smaller one.
///
/// Only a heuristic: the target is an asymptotic order, not a rounding rule.
pub fn default_tribe_width(n: usize) -> Result<usize> {
    if n < 4 {
        return Err(Error::Spec {
            spec: format!("tribes:n={n}"),
            reason: "default tribe width needs n >= 4".into(),
        });
    }
    let nf = n as f64;
    let target = (nf / nf.ln()).log2();
    let best = (1..=n)
        .filter(|&w| n.is_multiple_of(w))
        .min_by(|&a, &b| {
            let da = (a as f64 - target).abs();
            let db = (b as f64 - target).abs();
            da.total_cmp(&db).then(a.cmp(&b))
        })
        .expect("1 divides n");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> FunctionSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parses_cli_strings() {
        assert_eq!(parse("tribes:n=12,w=3"), FunctionSpec::Tribes { n: 12, w: 3 });
        assert_eq!(parse("vee:n=10"), FunctionSpec::Vee { n: 10 });
        assert_eq!(parse("file:path=tt.txt"), FunctionSpec::File { path: "tt.txt".into() });
        assert_eq!(parse("dictator:n=3,i=2"), FunctionSpec::Dictator { n: 3, i: 2 });
        assert_eq!(parse("walsh:n=3,mask=0b101"), FunctionSpec::Walsh { n: 3, mask: 5 });
        assert_eq!(parse("walsh:n=2,mask=all"), FunctionSpec::Walsh { n: 2, mask: 3 });
        assert_eq!(
            parse("constant:n=4,sign=-1"),
            FunctionSpec::Constant { n: 4, negative: true }
        );
        assert_eq!(
            parse("random_real:n=5,seed=9"),
            FunctionSpec::RandomReal { n: 5, seed: 9 }
        );
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "tribes:n=12,w=3",
            "vee:n=10",
            "walsh:n=3,mask=0b101",
            "constant:n=4,sign=-1",
            "point_indicator:n=8,point=3",
            "random_boolean:n=6,seed=11",
        ] {
            assert_eq!(parse(&parse(s).to_string()), parse(s));
        }
    }

    #[test]
    fn rejects_invalid_specs() {
        for s in [
            "majority:n=4",
            "tribes:n=10,w=3",
            "tribes:n=8,w=0",
            "dictator:n=3,i=4",
            "walsh:n=2,mask=8",
            "random_boolean:n=4",
            "unknown:n=3",
            "vee:n=3,w=2",
            "vee:n",
            "vee:n=abc",
            "vee:n=25",
            "point_indicator:n=3,point=8",
        ] {
            assert!(s.parse::<FunctionSpec>().is_err(), "{s} should be rejected");
        }
    }

    #[test]
    fn tribes_four_two() {
        let f = parse("tribes:n=4,w=2").generate().unwrap();
        assert_eq!(f.values().iter().filter(|&&v| v == 1.0).count(), 7);
        assert_eq!(f.expectation(), -0.125);
        for m in 0..16 {
            let x = |i| coordinate(m, i) == 1.0;
            let expected = (x(1) && x(2)) || (x(3) && x(4));
            assert_eq!(f.values()[m] == 1.0, expected);
        }
    }

    #[test]
    fn vee_singleton_coefficient() {
        let f = parse("vee:n=10").generate().unwrap();
        let s = f.analyze();
        assert_eq!(s.singleton(1), 0.99609375);
        assert_eq!(s.singleton(1), 1.0 - 4.0 * 2f64.powi(-10));
    }

    #[test]
    fn families_are_boolean() {
        for s in [
            "constant:n=3",
            "constant:n=3,sign=-1",
            "dictator:n=4,i=3",
            "antidictator:n=4,i=1",
            "walsh:n=4,mask=0b1010",
            "majority:n=5",
            "and2:n=4",
            "tribes:n=6,w=3",
            "vee:n=5",
            "random_boolean:n=7,seed=3",
        ] {
            assert!(parse(s).generate().unwrap().is_boolean(), "{s}");
        }
        assert!(parse("point_indicator:n=4,point=5").generate().unwrap().is_indicator());
        let r = parse("random_real:n=6,seed=1").generate().unwrap();
        assert!(r.values().iter().all(|v| (-1.0..1.0).contains(v)));
        assert!(!r.is_boolean());
    }

    #[test]
    fn majority_is_sign_of_sum() {
        let f = parse("majority:n=5").generate().unwrap();
        for m in 0..32 {
            let s: f64 = (1..=5).map(|i| coordinate(m, i)).sum();
            assert_eq!(f.values()[m], s.signum());
        }
    }

    #[test]
    fn random_families_are_deterministic() {
        let a = parse("random_boolean:n=8,seed=42").generate().unwrap();
        let b = parse("random_boolean:n=8,seed=42").generate().unwrap();
        let c = parse("random_boolean:n=8,seed=43").generate().unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let x = parse("random_real:n=8,seed=42").generate().unwrap();
        assert_eq!(x, parse("random_real:n=8,seed=42").generate().unwrap());
    }

    #[test]
    fn tribe_width_heuristic() {
        // log2(16 / ln 16) = 2.529: divisor 2 is closer than 4
        assert_eq!(default_tribe_width(16).unwrap(), 2);
        // log2(12 / ln 12) = 2.272: divisor 2 is closer than 3
        assert_eq!(default_tribe_width(12).unwrap(), 2);
        // log2(4 / ln 4) = 1.529: divisor 2 is closer than 1
        assert_eq!(default_tribe_width(4).unwrap(), 2);
        assert!(default_tribe_width(3).is_err());
        assert_eq!(
            parse("tribes:n=16").generate().unwrap(),
            parse("tribes:n=16,w=2").generate().unwrap()
        );
    }
}
