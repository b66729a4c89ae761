//! The three built-in group actions, each packaged with its frame,
//! invariants, adjoint matrices, syzygy operator blocks, Euler-Lagrange
//! residuals, conservation vectors, and closed-form solution families.
//!
//! * [`ActionKind::Scaling`]: scaling plus translations acting on `(x, u)`
//!   curves, normalized on the half-space `u_1 > u_0`.
//! * [`ActionKind::Twist`]: an index-dependent three-parameter action on
//!   `(u, v)` pairs whose Lagrangian is invariant only up to a total
//!   difference; the adjoint representation is the faithful one.
//! * [`ActionKind::Elastica`]: the special Euclidean group acting on planar
//!   polylines, with chord length and turning angle as invariants.

pub mod elastica;
pub mod scaling;
pub mod twist;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::ops::LinearDifferenceOperator;
use crate::series::{DiscreteCurve, Series};

pub use scaling::first_integrals_original;
pub use twist::divergence_check;

/// Identifies one catalogue action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    /// Scaling and translations on `(x, u)`.
    Scaling,
    /// Index-dependent divergence-symmetry group on `(u, v, zeta)`.
    Twist,
    /// Rigid motions of the plane on `(x, u)` polylines.
    Elastica,
}

/// All catalogue actions, in a fixed order.
pub const ALL_ACTIONS: [ActionKind; 3] =
    [ActionKind::Scaling, ActionKind::Twist, ActionKind::Elastica];

impl ActionKind {
    /// Stable name used by the CLI and config files.
    pub fn name(self) -> &'static str {
        match self {
            ActionKind::Scaling => "scaling",
            ActionKind::Twist => "twist",
            ActionKind::Elastica => "elastica",
        }
    }

    /// Parses a catalogue name.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "scaling" => Ok(ActionKind::Scaling),
            "twist" => Ok(ActionKind::Twist),
            "elastica" => Ok(ActionKind::Elastica),
            other => Err(Error::Config(format!("unknown action '{other}'"))),
        }
    }

    /// Names of the generating invariants, in component order.
    pub fn invariant_names(self) -> &'static [&'static str] {
        match self {
            ActionKind::Scaling => &["kappa", "eta"],
            ActionKind::Twist => &["kappa", "mu", "nu"],
            ActionKind::Elastica => &["l", "h_theta"],
        }
    }

    /// Group dimension (all catalogue groups are three-parameter).
    pub fn group_dim(self) -> usize {
        3
    }
}

/// Per-index values of the generating invariants of one action.
#[derive(Debug, Clone)]
pub struct InvariantSeries {
    kind: ActionKind,
    start: i64,
    rows: Vec<Vec<f64>>,
}

impl InvariantSeries {
    /// Wraps invariant rows starting at index `start`; each row carries one
    /// value per generating invariant.
    pub fn new(kind: ActionKind, start: i64, rows: Vec<Vec<f64>>) -> Result<Self> {
        let comps = kind.invariant_names().len();
        if rows.is_empty() {
            return Err(Error::Parameter("empty invariant series".into()));
        }
        for row in &rows {
            if row.len() != comps {
                return Err(Error::Parameter(format!(
                    "invariant rows for {} need {comps} components",
                    kind.name()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("invariant values"));
            }
        }
        Ok(Self { kind, start, rows })
    }

    /// Which action these invariants belong to.
    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    /// First index.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last index (inclusive).
    pub fn end(&self) -> i64 {
        self.start + self.rows.len() as i64 - 1
    }

    /// Value of invariant component `comp` at index `n`.
    pub fn get(&self, n: i64, comp: usize) -> Result<f64> {
        if n < self.start || n > self.end() {
            return Err(Error::WindowTooShort { n, lo: n, hi: n });
        }
        Ok(self.rows[(n - self.start) as usize][comp])
    }

    /// One invariant component as a standalone series.
    pub fn component(&self, comp: usize) -> Series {
        Series::new(
            self.start,
            self.rows.iter().map(|r| r[comp]).collect(),
        )
        .expect("invariant component is finite and nonempty")
    }

    /// Checks that indices `lo..=hi` are covered.
    pub fn require(&self, lo: i64, hi: i64) -> Result<()> {
        if lo < self.start || hi > self.end() {
            return Err(Error::WindowTooShort { n: lo, lo, hi });
        }
        Ok(())
    }
}

/// A group element of one catalogue action, in parameter coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupElement {
    /// `(x, u) -> (lambda^3 x + a, lambda u + b)` with `lambda > 0`.
    Scaling {
        /// Scale parameter, positive.
        lambda: f64,
        /// Translation of `x`.
        a: f64,
        /// Translation of `u`.
        b: f64,
    },
    /// `w -> exp((-1)^n a1) w + a2 + a3 (-1)^n` on both `u` and `v`.
    Twist {
        /// Index-alternating boost parameter.
        a1: f64,
        /// Even translation parameter.
        a2: f64,
        /// Index-alternating translation parameter.
        a3: f64,
    },
    /// Rotation by `theta` followed by translation `(a, b)`.
    Elastica {
        /// Rotation angle.
        theta: f64,
        /// Translation of `x`.
        a: f64,
        /// Translation of `u`.
        b: f64,
    },
}

impl GroupElement {
    /// The action this element belongs to.
    pub fn kind(&self) -> ActionKind {
        match self {
            GroupElement::Scaling { .. } => ActionKind::Scaling,
            GroupElement::Twist { .. } => ActionKind::Twist,
            GroupElement::Elastica { .. } => ActionKind::Elastica,
        }
    }

    /// Faithful matrix representation. For the twist action the standard
    /// representation is not faithful, so its adjoint representation serves
    /// as the working representation.
    pub fn rep(&self) -> SquareMatrix {
        match *self {
            GroupElement::Scaling { lambda, a, b } => SquareMatrix::new(
                3,
                vec![lambda.powi(3), 0.0, a, 0.0, lambda, b, 0.0, 0.0, 1.0],
            )
            .expect("finite entries"),
            GroupElement::Twist { .. } => self.ad(),
            GroupElement::Elastica { theta, a, b } => SquareMatrix::new(
                3,
                vec![
                    theta.cos(), -theta.sin(), a,
                    theta.sin(), theta.cos(), b,
                    0.0, 0.0, 1.0,
                ],
            )
            .expect("finite entries"),
        }
    }

    /// Adjoint representation of the element.
    pub fn ad(&self) -> SquareMatrix {
        match *self {
            GroupElement::Scaling { lambda, a, b } => SquareMatrix::new(
                3,
                vec![
                    1.0, 0.0, 0.0,
                    -3.0 * a, lambda.powi(3), 0.0,
                    -b, 0.0, lambda,
                ],
            )
            .expect("finite entries"),
            GroupElement::Twist { a1, a2, a3 } => SquareMatrix::new(
                3,
                vec![
                    1.0, 0.0, 0.0,
                    -a3, a1.cosh(), a1.sinh(),
                    -a2, a1.sinh(), a1.cosh(),
                ],
            )
            .expect("finite entries"),
            GroupElement::Elastica { theta, a, b } => SquareMatrix::new(
                3,
                vec![
                    theta.cos(), -theta.sin(), b,
                    theta.sin(), theta.cos(), -a,
                    0.0, 0.0, 1.0,
                ],
            )
            .expect("finite entries"),
        }
    }

    /// Group inverse, in parameter coordinates.
    pub fn inverse(&self) -> GroupElement {
        match *self {
            GroupElement::Scaling { lambda, a, b } => GroupElement::Scaling {
                lambda: 1.0 / lambda,
                a: -a / lambda.powi(3),
                b: -b / lambda,
            },
            GroupElement::Twist { a1, a2, a3 } => GroupElement::Twist {
                a1: -a1,
                a2: -a2 * a1.cosh() + a3 * a1.sinh(),
                a3: a2 * a1.sinh() - a3 * a1.cosh(),
            },
            GroupElement::Elastica { theta, a, b } => {
                let (s, c) = theta.sin_cos();
                GroupElement::Elastica {
                    theta: -theta,
                    a: -(c * a + s * b),
                    b: -(-s * a + c * b),
                }
            }
        }
    }
}

/// Applies a group element to every point of a curve. The twist action reads
/// the parity of each point's index, so curves keep their index range.
pub fn apply_group(g: &GroupElement, curve: &DiscreteCurve) -> Result<DiscreteCurve> {
    let mut rows = Vec::with_capacity(curve.len());
    for n in curve.start()..=curve.end() {
        let p = curve.point(n)?;
        rows.push(match *g {
            GroupElement::Scaling { lambda, a, b } => {
                vec![lambda.powi(3) * p[0] + a, lambda * p[1] + b]
            }
            GroupElement::Twist { a1, a2, a3 } => {
                let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let stretch = (sign * a1).exp();
                let mut row = vec![
                    stretch * p[0] + a2 + a3 * sign,
                    stretch * p[1] + a2 + a3 * sign,
                ];
                if p.len() > 2 {
                    // The auxiliary component absorbs the divergence of the
                    // Lagrangian: zeta picks up a1 * (-1)^n.
                    row.push(p[2] + a1 * sign);
                }
                row
            }
            GroupElement::Elastica { theta, a, b } => {
                let (s, c) = theta.sin_cos();
                vec![c * p[0] - s * p[1] + a, s * p[0] + c * p[1] + b]
            }
        });
    }
    DiscreteCurve::from_rows(curve.start(), rows)
}

/// The frame group element at base index `n`, solving the action's
/// normalization equations on the window there.
pub fn frame(kind: ActionKind, curve: &DiscreteCurve, n: i64) -> Result<GroupElement> {
    match kind {
        ActionKind::Scaling => scaling::frame(curve, n),
        ActionKind::Twist => twist::frame(curve, n),
        ActionKind::Elastica => elastica::frame(curve, n),
    }
}

/// Extracts the generating invariants at every index the curve supports.
///
/// ```
/// use dmf::actions::{invariants_from_curve, ActionKind};
/// use dmf::series::DiscreteCurve;
/// let curve = DiscreteCurve::from_rows(
///     0,
///     vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 1.0]],
/// ).unwrap();
/// let inv = invariants_from_curve(ActionKind::Elastica, &curve).unwrap();
/// // Chord length and turning angle of the first corner.
/// assert!((inv.get(0, 0).unwrap() - 1.0).abs() < 1e-15);
/// assert!((inv.get(0, 1).unwrap() + std::f64::consts::FRAC_PI_4).abs() < 1e-15);
/// ```
pub fn invariants_from_curve(kind: ActionKind, curve: &DiscreteCurve) -> Result<InvariantSeries> {
    match kind {
        ActionKind::Scaling => scaling::invariants_from_curve(curve),
        ActionKind::Twist => twist::invariants_from_curve(curve),
        ActionKind::Elastica => elastica::invariants_from_curve(curve),
    }
}

/// Residual vector of the invariantized Euler-Lagrange equations at `n`.
pub fn el_residual(kind: ActionKind, inv: &InvariantSeries, n: i64) -> Result<Vec<f64>> {
    match kind {
        ActionKind::Scaling => scaling::el_residual(inv, n),
        ActionKind::Twist => twist::el_residual(inv, n),
        ActionKind::Elastica => elastica::el_residual(inv, n),
    }
}

/// Conservation-law row vector `V(I)` at `n`.
pub fn conservation_vector(kind: ActionKind, inv: &InvariantSeries, n: i64) -> Result<Vec<f64>> {
    match kind {
        ActionKind::Scaling => scaling::conservation_vector(inv, n),
        ActionKind::Twist => twist::conservation_vector(inv, n),
        ActionKind::Elastica => elastica::conservation_vector(inv, n),
    }
}

/// Adjoint representation of the frame at `n`, computed from the curve.
pub fn ad_of_frame(kind: ActionKind, curve: &DiscreteCurve, n: i64) -> Result<SquareMatrix> {
    Ok(frame(kind, curve, n)?.ad())
}

/// The Maurer-Cartan matrix written symbolically in the generating
/// invariants, evaluated at `n`, in the action's faithful representation.
pub fn symbolic_k0(kind: ActionKind, inv: &InvariantSeries, n: i64) -> Result<SquareMatrix> {
    match kind {
        ActionKind::Scaling => scaling::symbolic_k0(inv, n),
        ActionKind::Twist => twist::symbolic_k0(inv, n),
        ActionKind::Elastica => elastica::symbolic_k0(inv, n),
    }
}

/// Max-norm defect of the identity `rho_1 rho_0^{-1} = iota_0(rho_1)`: the
/// Maurer-Cartan matrix from two frames against the symbolic form on the
/// invariants extracted at `n`.
pub fn replacement_check(kind: ActionKind, curve: &DiscreteCurve, n: i64) -> Result<f64> {
    let rho0 = frame(kind, curve, n)?.rep();
    let rho1 = frame(kind, curve, n + 1)?.rep();
    let k_data = crate::ops::maurer_cartan(&rho0, &rho1)?;
    let inv = invariants_from_curve(kind, curve)?;
    let k_symbolic = symbolic_k0(kind, &inv, n)?;
    Ok(k_data.sub(&k_symbolic).max_norm())
}

/// Matrix of syzygy operator blocks for one action: entry `(i, j)` maps the
/// j-th invariantized velocity component to the t-derivative of the i-th
/// generating invariant.
pub fn h_blocks(
    kind: ActionKind,
    inv: &InvariantSeries,
) -> Vec<Vec<LinearDifferenceOperator>> {
    match kind {
        ActionKind::Scaling => scaling::h_blocks(inv),
        ActionKind::Twist => twist::h_blocks(inv),
        ActionKind::Elastica => elastica::h_blocks(inv),
    }
}

/// Invariantized velocity components `sigma` at index `n`: the frame at `n`
/// applied to the curve's pointwise velocity.
pub fn sigma(
    kind: ActionKind,
    curve: &DiscreteCurve,
    velocity: &DiscreteCurve,
    n: i64,
) -> Result<Vec<f64>> {
    match kind {
        ActionKind::Scaling => scaling::sigma(curve, velocity, n),
        ActionKind::Twist => twist::sigma(curve, velocity, n),
        ActionKind::Elastica => elastica::sigma(curve, velocity, n),
    }
}

/// One-parameter polynomial family of curves `z(t) = sum_k t^k coeffs[k]`,
/// the test-path object for syzygy verification.
#[derive(Debug, Clone)]
pub struct CurvePath {
    coeffs: Vec<DiscreteCurve>,
}

impl CurvePath {
    /// Builds a path from polynomial coefficient curves (degree = len - 1,
    /// at most cubic); all coefficients must share index range and shape.
    pub fn new(coeffs: Vec<DiscreteCurve>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > 4 {
            return Err(Error::Parameter(
                "path needs 1 to 4 polynomial coefficient curves".into(),
            ));
        }
        let c0 = &coeffs[0];
        for c in &coeffs[1..] {
            if c.start() != c0.start() || c.len() != c0.len() || c.comps() != c0.comps() {
                return Err(Error::Parameter("path coefficient shapes differ".into()));
            }
        }
        Ok(Self { coeffs })
    }

    /// Straight path `base + t * velocity`.
    pub fn linear(base: DiscreteCurve, velocity: DiscreteCurve) -> Result<Self> {
        Self::new(vec![base, velocity])
    }

    /// The curve at parameter `t`.
    pub fn curve_at(&self, t: f64) -> DiscreteCurve {
        self.combine(|k| t.powi(k as i32))
    }

    /// The pointwise velocity `dz/dt` at parameter `t`.
    pub fn velocity_at(&self, t: f64) -> DiscreteCurve {
        self.combine(|k| if k == 0 { 0.0 } else { k as f64 * t.powi(k as i32 - 1) })
    }

    fn combine(&self, weight: impl Fn(usize) -> f64) -> DiscreteCurve {
        let c0 = &self.coeffs[0];
        let rows = (c0.start()..=c0.end())
            .map(|n| {
                (0..c0.comps())
                    .map(|comp| {
                        self.coeffs
                            .iter()
                            .enumerate()
                            .map(|(k, c)| {
                                weight(k) * c.value(n, comp).expect("shapes checked")
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect();
        DiscreteCurve::from_rows(c0.start(), rows).expect("shapes checked")
    }
}

/// Per-invariant defect of the differential-difference syzygy
/// `d kappa / dt = H sigma` at `(n, t)`: a central finite difference of the
/// left side against the operator blocks applied to the invariantized
/// velocities. Decays as `O(h_t^2)` on polynomial paths.
pub fn syzygy_residual(
    kind: ActionKind,
    path: &CurvePath,
    n: i64,
    t: f64,
    h_t: f64,
) -> Result<Vec<f64>> {
    if !(h_t > 0.0) {
        return Err(Error::Parameter("syzygy step h_t must be positive".into()));
    }
    let curve = path.curve_at(t);
    let velocity = path.velocity_at(t);
    let inv = invariants_from_curve(kind, &curve)?;
    // Operator offsets reach at most two indices ahead; tabulate sigma over
    // the widest range the curve supports.
    let sigma_lo = inv.start();
    let sigma_hi = inv.end();
    let comps = kind.invariant_names().len();
    let mut sigma_rows = Vec::new();
    for m in sigma_lo..=sigma_hi {
        sigma_rows.push(sigma(kind, &curve, &velocity, m)?);
    }
    let sigma_series: Vec<Series> = (0..sigma_rows[0].len())
        .map(|j| {
            Series::new(sigma_lo, sigma_rows.iter().map(|r| r[j]).collect())
                .expect("sigma finite")
        })
        .collect();
    let blocks = h_blocks(kind, &inv);
    let plus = invariants_from_curve(kind, &path.curve_at(t + h_t))?;
    let minus = invariants_from_curve(kind, &path.curve_at(t - h_t))?;
    let mut out = Vec::with_capacity(comps);
    for i in 0..comps {
        let lhs = (plus.get(n, i)? - minus.get(n, i)?) / (2.0 * h_t);
        let mut rhs = 0.0;
        for (j, s) in sigma_series.iter().enumerate() {
            rhs += blocks[i][j].apply(s, n)?;
        }
        out.push((lhs - rhs).abs());
    }
    Ok(out)
}
