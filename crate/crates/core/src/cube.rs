//! Truth tables and Walsh-Fourier spectra on the discrete cube `{-1,1}^n`.
//!
//! A point of the cube is addressed by a bitmask `m`: bit `b` of `m` is set
//! exactly when coordinate `b + 1` equals `-1`. Subsets `A` of `[n]` use the
//! same encoding, so the Walsh character is `w_A(x(m)) = (-1)^popcount(A & m)`
//! and the transform between the two representations is the plain Hadamard
//! butterfly.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 24;

/// Below this length the butterfly runs on one thread.
const PAR_THRESHOLD: usize = 1 << 16;

fn check_dim(n: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::Dimension(n))
    }
}

fn check_values(n: usize, values: &[f64]) -> Result<()> {
    check_dim(n)?;
    let expected = 1usize << n;
    if values.len() != expected {
        return Err(Error::Length {
            n,
            expected,
            got: values.len(),
        });
    }
    if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(idx));
    }
    Ok(())
}

/// Bitmask of the singleton `{i}` for a 1-based coordinate.
#[inline]
pub fn coordinate_bit(i: usize) -> usize {
    1 << (i - 1)
}

/// Value of coordinate `i` (1-based) at the point with index `m`.
#[inline]
pub fn coordinate(m: usize, i: usize) -> f64 {
    if m & coordinate_bit(i) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `w_A(x(m))`.
#[inline]
pub fn walsh(mask: usize, m: usize) -> f64 {
    if (mask & m).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// In-place unnormalized fast Walsh-Hadamard transform.
///
/// The transform is its own inverse up to a factor of `data.len()`. Large
/// inputs split each butterfly stage across threads; every output entry is
/// produced by the same sequence of additions either way.
pub fn fwht(data: &mut [f64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "FWHT length must be a power of two");
    let mut half = 1;
    while half < len {
        let stage = |block: &mut [f64]| {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        };
        if len >= PAR_THRESHOLD {
            data.par_chunks_exact_mut(2 * half).for_each(stage);
        } else {
            data.chunks_exact_mut(2 * half).for_each(stage);
        }
        half *= 2;
    }
}

/// A real-valued function on `{-1,1}^n`, stored densely by point index.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthTable {
    n: usize,
    values: Vec<f64>,
}

impl TruthTable {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_values(n, &values)?;
        Ok(Self { n, values })
    }

    /// Builds a table by evaluating `f` at every point index.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> f64) -> Result<Self> {
        check_dim(n)?;
        Self::new(n, (0..1usize << n).map(f).collect())
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Checks that `i` is a valid 1-based coordinate.
    pub fn check_coordinate(&self, i: usize) -> Result<()> {
        if (1..=self.n).contains(&i) {
            Ok(())
        } else {
            Err(Error::Coordinate { i, n: self.n })
        }
    }

    /// Mean under the uniform measure.
    pub fn expectation(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// `(E|f|^p)^(1/p)` for `p >= 1`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::Exponent(p));
        }
        if p.is_infinite() {
            return Ok(self.values.iter().fold(0.0, |acc, v| acc.max(v.abs())));
        }
        let mean = self.values.iter().map(|v| v.abs().powf(p)).sum::<f64>() / self.len() as f64;
        Ok(mean.powf(1.0 / p))
    }

    /// True iff every entry is exactly `+1` or `-1`.
    pub fn is_boolean(&self) -> bool {
        self.values.iter().all(|&v| v == 1.0 || v == -1.0)
    }

    /// True iff every entry is exactly `0` or `1`.
    pub fn is_indicator(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// True iff every entry is exactly `-1`, `0` or `1`.
    pub fn is_three_valued(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0 || v == -1.0)
    }

    /// Walsh-Fourier coefficients `f^(A) = E[f w_A]` for every mask `A`.
    pub fn analyze(&self) -> Spectrum {
        let mut coeffs = self.values.clone();
        fwht(&mut coeffs);
        let scale = 1.0 / self.len() as f64;
        coeffs.iter_mut().for_each(|c| *c *= scale);
        Spectrum { n: self.n, coeffs }
    }

    /// Applies `g` pointwise.
    pub fn map(&self, g: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.n, self.values.iter().map(|&v| g(v)).collect())
    }

    /// Parses the text format: `n=<k>` on the first line, then a string of
    /// `2^k` characters where `'0'` encodes `+1` and `'1'` encodes `-1`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse(format!("expected `n=<k>` header, got `{header}`")))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad dimension in `{header}`: {e}")))?;
        check_dim(n)?;
        let body = lines.next().ok_or_else(|| Error::Parse("missing value line".into()))?;
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("unexpected trailing line `{extra}`")));
        }
        let expected = 1usize << n;
        if body.len() != expected {
            return Err(Error::Parse(format!(
                "expected {expected} characters for n = {n}, got {}",
                body.len()
            )));
        }
        let values = body
            .chars()
            .enumerate()
            .map(|(pos, c)| match c {
                '0' => Ok(1.0),
                '1' => Ok(-1.0),
                other => Err(Error::Parse(format!("invalid character `{other}` at position {pos}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, values)
    }

    pub fn read_text_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse_text(&text)
    }

    /// Inverse of [`TruthTable::parse_text`]; only Boolean tables have a text form.
    pub fn to_text(&self) -> Result<String> {
        if !self.is_boolean() {
            return Err(Error::NotBoolean);
        }
        let mut out = String::with_capacity(self.len() + 8);
        writeln!(out, "n={}", self.n).unwrap();
        out.extend(self.values.iter().map(|&v| if v == 1.0 { '0' } else { '1' }));
        out.push('\n');
        Ok(out)
    }
}

/// Walsh-Fourier coefficients indexed by subset mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    n: usize,
    coeffs: Vec<f64>,
}

impl Spectrum {
    pub fn new(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_values(n, &coeffs)?;
        Ok(Self { n, coeffs })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n,
            coeffs: vec![0.0; 1 << n],
        })
    }

    /// Spectrum with a single unit coefficient at `mask`.
    pub fn unit(n: usize, mask: usize) -> Result<Self> {
        let mut s = Self::zeros(n)?;
        if mask >= s.coeffs.len() {
            return Err(Error::Coordinate { i: mask, n });
        }
        s.coeffs[mask] = 1.0;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    /// `f^({i})` for a 1-based coordinate.
    pub fn singleton(&self, i: usize) -> f64 {
        self.coeffs[coordinate_bit(i)]
    }

    /// `sum_A f^(A)^2`.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Multiplies each coefficient by `multiplier(mask)`.
    pub fn scaled(&self, multiplier: impl Fn(usize) -> f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(a, &c)| c * multiplier(a))
            .collect();
        Self { n: self.n, coeffs }
    }

    /// `sum_A f^(A) w_A` evaluated at every point.
    pub fn synthesize(&self) -> TruthTable {
        let mut values = self.coeffs.clone();
        fwht(&mut values);
        TruthTable { n: self.n, values }
    }
}
