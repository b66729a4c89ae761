//! Lattice-indexed data: curves, windows, and scalar series.
//!
//! A [`DiscreteCurve`] stores one dependent-variable vector per integer index
//! `n`. A [`Window`] is a finite contiguous slice of a curve around a base
//! index, the object Lagrangians and frames are evaluated on. A [`Series`] is
//! a plain scalar sequence used for operator coefficients and residuals.

use crate::error::{Error, Result};

/// Finite sequence of dependent-variable points indexed by `n`.
///
/// ```
/// use dmf::series::DiscreteCurve;
/// let c = DiscreteCurve::from_rows(0, vec![vec![0.0, 1.0], vec![1.0, 3.0]]).unwrap();
/// assert_eq!(c.value(1, 1).unwrap(), 3.0);
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve {
    start: i64,
    comps: usize,
    vals: Vec<f64>,
}

impl DiscreteCurve {
    /// Builds a curve from per-index rows; all rows must share a length.
    pub fn from_rows(start: i64, rows: Vec<Vec<f64>>) -> Result<Self> {
        let comps = rows.first().map(|r| r.len()).unwrap_or(0);
        if comps == 0 {
            return Err(Error::Parameter("curve needs at least one point and component".into()));
        }
        let mut vals = Vec::with_capacity(rows.len() * comps);
        for row in &rows {
            if row.len() != comps {
                return Err(Error::Parameter("ragged curve rows".into()));
            }
            vals.extend_from_slice(row);
        }
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("curve points"));
        }
        Ok(Self { start, comps, vals })
    }

    /// First index.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last index (inclusive).
    pub fn end(&self) -> i64 {
        self.start + self.len() as i64 - 1
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.vals.len() / self.comps
    }

    /// True when the curve holds no points.
    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    /// Components per point.
    pub fn comps(&self) -> usize {
        self.comps
    }

    /// Point at index `n`.
    pub fn point(&self, n: i64) -> Result<&[f64]> {
        if n < self.start || n > self.end() {
            return Err(Error::WindowTooShort { n, lo: n, hi: n });
        }
        let i = (n - self.start) as usize * self.comps;
        Ok(&self.vals[i..i + self.comps])
    }

    /// Component `comp` of the point at index `n`.
    pub fn value(&self, n: i64, comp: usize) -> Result<f64> {
        Ok(self.point(n)?[comp])
    }

    /// Copies offsets `j0..=j1` around base `n` into a window.
    pub fn window(&self, n: i64, j0: i64, j1: i64) -> Result<Window> {
        if n + j0 < self.start || n + j1 > self.end() {
            return Err(Error::WindowTooShort { n, lo: n + j0, hi: n + j1 });
        }
        let points = (j0..=j1)
            .map(|j| self.point(n + j).map(|p| p.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Window { base: n, j0, points })
    }
}

/// Contiguous slice of a curve around a base index.
///
/// Offsets run over `j0..=j0+len-1` with `j0 <= 0`; points are copied so a
/// window never aliases its source curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    base: i64,
    j0: i64,
    points: Vec<Vec<f64>>,
}

impl Window {
    /// Builds a window directly from points. `j0` is the offset of the first.
    pub fn new(base: i64, j0: i64, points: Vec<Vec<f64>>) -> Result<Self> {
        let j1 = j0 + points.len() as i64 - 1;
        if points.is_empty() || j0 > 0 || j1 < 0 {
            return Err(Error::Parameter(
                "window offsets must form a contiguous range containing 0".into(),
            ));
        }
        if points.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("window points"));
        }
        Ok(Self { base, j0, points })
    }

    /// Base index `n`.
    pub fn base(&self) -> i64 {
        self.base
    }

    /// Lowest offset.
    pub fn j0(&self) -> i64 {
        self.j0
    }

    /// Highest offset.
    pub fn j1(&self) -> i64 {
        self.j0 + self.points.len() as i64 - 1
    }

    /// Point at offset `j`.
    pub fn point(&self, j: i64) -> &[f64] {
        &self.points[(j - self.j0) as usize]
    }

    /// Component `comp` of the point at offset `j`.
    pub fn value(&self, j: i64, comp: usize) -> f64 {
        self.point(j)[comp]
    }

    /// Copy with one component of one point replaced; used for
    /// finite-difference partials.
    pub fn with_value(&self, j: i64, comp: usize, value: f64) -> Self {
        let mut out = self.clone();
        out.points[(j - self.j0) as usize][comp] = value;
        out
    }
}

/// Scalar sequence over a contiguous index range.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    start: i64,
    vals: Vec<f64>,
}

impl Series {
    /// Wraps raw values starting at `start`.
    pub fn new(start: i64, vals: Vec<f64>) -> Result<Self> {
        if vals.is_empty() {
            return Err(Error::Parameter("empty series".into()));
        }
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("series values"));
        }
        Ok(Self { start, vals })
    }

    /// Tabulates `f` over `lo..=hi`.
    pub fn from_fn(lo: i64, hi: i64, f: impl FnMut(i64) -> f64) -> Result<Self> {
        Self::new(lo, (lo..=hi).map(f).collect())
    }

    /// First index.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last index (inclusive).
    pub fn end(&self) -> i64 {
        self.start + self.vals.len() as i64 - 1
    }

    /// Value at `n`.
    pub fn get(&self, n: i64) -> Result<f64> {
        if n < self.start || n > self.end() {
            return Err(Error::WindowTooShort { n, lo: n, hi: n });
        }
        Ok(self.vals[(n - self.start) as usize])
    }
}
