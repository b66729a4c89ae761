//! Reference smooth solver for the bending-energy curve and metrics that
//! compare a discrete polyline against it.
//!
//! The curvature of an extremal of the bending energy satisfies
//! `kappa_ss + kappa^3 / 2 = 0`, with the first integral
//! `kappa^4 + 4 kappa_s^2 = c1^2 + c2^2` tying the curvature to the
//! conserved linear momentum `(c1, c2)`. The position is recovered from
//! `u_s = (2 c1 kappa_s - c2 kappa^2) / (c1^2 + c2^2)` together with the
//! unit-speed identity `x_s^2 + u_s^2 = 1`, whose sign is carried as
//! explicit state. The linear relation `c1 u - c2 x + c3 = 2 kappa` is
//! monitored as an algebraic invariant rather than used for elimination.

use crate::error::{Error, Result};
use crate::series::DiscreteCurve;
use crate::solvers::ConservationRecord;

/// State of the smooth curve at one arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothState {
    /// Arc length.
    pub s: f64,
    /// Curvature.
    pub kappa: f64,
    /// Arc-length derivative of the curvature.
    pub kappa_s: f64,
    /// Position component along the first axis.
    pub x: f64,
    /// Position component along the second axis.
    pub u: f64,
}

/// Tolerance above which `|u_s| > 1` is treated as inconsistent constants.
const UNIT_SPEED_SLACK: f64 = 1e-12;

/// Right-hand side of the first-order system in `(kappa, kappa_s, x, u)`.
///
/// `x_sign` selects the branch of `x_s = +-sqrt(1 - u_s^2)`; it only
/// matters where the closed-form tangent degenerates (straight segments).
pub fn smooth_rhs(state: &SmoothState, c: [f64; 2], x_sign: f64) -> Result<[f64; 4]> {
    let planar = c[0] * c[0] + c[1] * c[1];
    if planar <= 0.0 {
        return Err(Error::Parameter("c1^2 + c2^2 must be positive".into()));
    }
    let k = state.kappa;
    let ks = state.kappa_s;
    let u_s = (2.0 * c[0] * ks - c[1] * k * k) / planar;
    if u_s.abs() > 1.0 + UNIT_SPEED_SLACK {
        return Err(Error::InconsistentConstants(format!(
            "u_s = {u_s:.6e} exceeds unit speed; constants contradict the state"
        )));
    }
    // The tangent crosses x_s = 0 exactly where this quantity changes sign.
    let q = c[0] * k * k + 2.0 * c[1] * ks;
    let mag = (1.0 - u_s * u_s).max(0.0).sqrt();
    let x_s = if q != 0.0 { -q.signum() * mag } else { x_sign.signum() * mag };
    Ok([ks, -0.5 * k * k * k, x_s, u_s])
}

/// Clamped right-hand side for internal integrator stages: trial stage
/// states sit slightly off shell, so `|u_s|` may exceed one by the local
/// truncation error near tangent turning points; the excess is clipped
/// instead of rejected.
fn stage_rhs(state: &SmoothState, c: [f64; 2], x_sign: f64) -> Result<[f64; 4]> {
    let planar = c[0] * c[0] + c[1] * c[1];
    if planar <= 0.0 {
        return Err(Error::Parameter("c1^2 + c2^2 must be positive".into()));
    }
    let k = state.kappa;
    let ks = state.kappa_s;
    let u_s = ((2.0 * c[0] * ks - c[1] * k * k) / planar).clamp(-1.0, 1.0);
    let q = c[0] * k * k + 2.0 * c[1] * ks;
    let mag = (1.0 - u_s * u_s).max(0.0).sqrt();
    let x_s = if q != 0.0 { -q.signum() * mag } else { x_sign.signum() * mag };
    Ok([ks, -0.5 * k * k * k, x_s, u_s])
}

/// One accepted integrator step with its dense-output interpolant.
#[derive(Debug, Clone)]
pub struct SmoothSegment {
    /// Arc length at the left end.
    pub s0: f64,
    /// Step length.
    pub h: f64,
    /// State at the left end.
    pub y0: [f64; 4],
    /// Degree-4 polynomial coefficients per component, lowest degree first,
    /// in the normalized variable `(s - s0) / h`.
    coeffs: [[f64; 5]; 4],
}

impl SmoothSegment {
    fn eval(&self, s: f64) -> [f64; 4] {
        let t = (s - self.s0) / self.h;
        let mut out = [0.0; 4];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4])));
        }
        out
    }
}

/// Sampled trajectory of the smooth curve with dense output.
#[derive(Debug, Clone)]
pub struct SmoothTrajectory {
    /// Conserved planar momentum used in the right-hand side.
    pub c: [f64; 2],
    /// Accepted steps in order.
    pub segments: Vec<SmoothSegment>,
    /// States at the segment endpoints (one more than segments).
    pub states: Vec<SmoothState>,
}

impl SmoothTrajectory {
    /// First arc length covered.
    pub fn s_start(&self) -> f64 {
        self.states.first().map(|st| st.s).unwrap_or(0.0)
    }

    /// Last arc length covered.
    pub fn s_end(&self) -> f64 {
        self.states.last().map(|st| st.s).unwrap_or(0.0)
    }

    /// Evaluates the trajectory at arc length `s` through the interpolant.
    pub fn eval(&self, s: f64) -> Result<SmoothState> {
        if self.segments.is_empty() || s < self.s_start() - 1e-12 || s > self.s_end() + 1e-12 {
            return Err(Error::Comparison(format!(
                "arc length {s} outside the integrated range [{}, {}]",
                self.s_start(),
                self.s_end()
            )));
        }
        // Binary search for the segment containing s.
        let idx = self
            .segments
            .partition_point(|seg| seg.s0 + seg.h < s)
            .min(self.segments.len() - 1);
        let y = self.segments[idx].eval(s);
        Ok(SmoothState { s, kappa: y[0], kappa_s: y[1], x: y[2], u: y[3] })
    }
}

fn add_scaled(y: &[f64; 4], parts: &[(f64, [f64; 4])], h: f64) -> [f64; 4] {
    let mut out = *y;
    for (w, k) in parts {
        for i in 0..4 {
            out[i] += h * w * k[i];
        }
    }
    out
}

struct RkfStages {
    /// Fourth-order solution at the step end.
    y4: [f64; 4],
    /// Embedded error estimate (max-norm of the 4th/5th order difference).
    err: f64,
    /// Slope at the step start.
    f0: [f64; 4],
}

fn rkf45_stages(state: &SmoothState, y: &[f64; 4], c: [f64; 2], sign: f64, h: f64) -> Result<RkfStages> {
    let st = |yv: &[f64; 4]| SmoothState {
        s: state.s,
        kappa: yv[0],
        kappa_s: yv[1],
        x: yv[2],
        u: yv[3],
    };
    let k1 = stage_rhs(&st(y), c, sign)?;
    let k2 = stage_rhs(&st(&add_scaled(y, &[(0.25, k1)], h)), c, sign)?;
    let k3 = stage_rhs(&st(&add_scaled(y, &[(3.0 / 32.0, k1), (9.0 / 32.0, k2)], h)), c, sign)?;
    let k4 = stage_rhs(
        &st(&add_scaled(
            y,
            &[
                (1932.0 / 2197.0, k1),
                (-7200.0 / 2197.0, k2),
                (7296.0 / 2197.0, k3),
            ],
            h,
        )),
        c,
        sign,
    )?;
    let k5 = stage_rhs(
        &st(&add_scaled(
            y,
            &[
                (439.0 / 216.0, k1),
                (-8.0, k2),
                (3680.0 / 513.0, k3),
                (-845.0 / 4104.0, k4),
            ],
            h,
        )),
        c,
        sign,
    )?;
    let k6 = stage_rhs(
        &st(&add_scaled(
            y,
            &[
                (-8.0 / 27.0, k1),
                (2.0, k2),
                (-3544.0 / 2565.0, k3),
                (1859.0 / 4104.0, k4),
                (-11.0 / 40.0, k5),
            ],
            h,
        )),
        c,
        sign,
    )?;
    let y4 = add_scaled(
        y,
        &[
            (25.0 / 216.0, k1),
            (1408.0 / 2565.0, k3),
            (2197.0 / 4104.0, k4),
            (-0.2, k5),
        ],
        h,
    );
    let y5 = add_scaled(
        y,
        &[
            (16.0 / 135.0, k1),
            (6656.0 / 12825.0, k3),
            (28561.0 / 56430.0, k4),
            (-9.0 / 50.0, k5),
            (2.0 / 55.0, k6),
        ],
        h,
    );
    let err = (0..4).map(|i| (y5[i] - y4[i]).abs()).fold(0.0f64, f64::max);
    Ok(RkfStages { y4, err, f0: k1 })
}

/// Integrates the smooth system from `initial` up to arc length `s_max`.
///
/// With `tol = None` the step is the uniform `h0`; with `tol = Some(t)` the
/// step adapts to keep the embedded error estimate below `t`. The
/// fourth-order solution is propagated. `x_sign` selects the initial branch
/// of `x_s` where the closed-form tangent degenerates.
///
/// ```
/// use dmf::smooth::{rkf45_integrate, SmoothState};
/// let state = SmoothState { s: 0.0, kappa: 0.0, kappa_s: 0.0, x: 1.0, u: 2.0 };
/// let traj = rkf45_integrate(&state, [1.0, 0.0], 1.0, 10.0, 0.1, None).unwrap();
/// // Zero curvature is a straight line along x.
/// let end = traj.eval(10.0).unwrap();
/// assert!((end.x - 11.0).abs() < 1e-12);
/// assert!((end.u - 2.0).abs() < 1e-12);
/// ```
pub fn rkf45_integrate(
    initial: &SmoothState,
    c: [f64; 2],
    x_sign: f64,
    s_max: f64,
    h0: f64,
    tol: Option<f64>,
) -> Result<SmoothTrajectory> {
    if !(h0 > 0.0) || !(s_max > initial.s) {
        return Err(Error::Parameter("need h0 > 0 and s_max beyond the initial arc length".into()));
    }
    let mut sign = if x_sign < 0.0 { -1.0 } else { 1.0 };
    let mut state = *initial;
    let mut y = [state.kappa, state.kappa_s, state.x, state.u];
    let mut h = h0;
    let mut segments = Vec::new();
    let mut states = vec![state];
    let min_step = 1e-12 * (s_max - initial.s).max(1.0);
    while state.s < s_max - 1e-12 {
        let h_eff = h.min(s_max - state.s);
        let stages = rkf45_stages(&state, &y, c, sign, h_eff)?;
        if let Some(t) = tol {
            if stages.err > t && h_eff > min_step {
                h = (h_eff * 0.5).max(min_step);
                if h <= min_step {
                    return Err(Error::Integration(format!(
                        "step underflow at s = {}: error {:.3e} above tolerance {t:.3e}",
                        state.s, stages.err
                    )));
                }
                continue;
            }
        }
        // Dense output: quartic per component matching value and slope at
        // both ends plus a half-step midpoint value.
        let half = rkf45_stages(&state, &y, c, sign, 0.5 * h_eff)?;
        let y1 = stages.y4;
        let end_state = SmoothState {
            s: state.s + h_eff,
            kappa: y1[0],
            kappa_s: y1[1],
            x: y1[2],
            u: y1[3],
        };
        let f1 = stage_rhs(&end_state, c, sign)?;
        let mut coeffs = [[0.0; 5]; 4];
        for i in 0..4 {
            let a0 = y[i];
            let a1 = h_eff * stages.f0[i];
            let big_a = y1[i] - y[i] - a1;
            let big_b = h_eff * f1[i] - a1;
            let big_c = half.y4[i] - y[i] - 0.5 * a1;
            let a4 = 16.0 * big_c - 8.0 * big_a + 2.0 * big_b;
            let a3 = 14.0 * big_a - 3.0 * big_b - 32.0 * big_c;
            let a2 = big_a - a3 - a4;
            coeffs[i] = [a0, a1, a2, a3, a4];
        }
        segments.push(SmoothSegment { s0: state.s, h: h_eff, y0: y, coeffs });
        // Update the tangent branch for the next step.
        let q = c[0] * y1[0] * y1[0] + 2.0 * c[1] * y1[1];
        if q != 0.0 {
            sign = -q.signum();
        }
        state = end_state;
        y = y1;
        states.push(state);
        if let Some(t) = tol {
            if stages.err < t / 16.0 {
                h *= 2.0;
            }
        }
    }
    Ok(SmoothTrajectory { c, segments, states })
}

/// Discrete-versus-smooth comparison summary.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    /// Arc lengths at which the two curves were compared.
    pub arcs: Vec<f64>,
    /// Euclidean distance between matched points at each arc length.
    pub distances: Vec<f64>,
    /// `l2(differences) / l2(smooth samples)`.
    pub relative_error: f64,
}

/// Compares a discrete polyline against a smooth trajectory by cumulative
/// chord length: vertex `k` is matched with the smooth point at arc length
/// `s_start + (l_0 + ... + l_{k-1})`.
pub fn compare_curves(discrete: &DiscreteCurve, smooth: &SmoothTrajectory) -> Result<ComparisonReport> {
    if discrete.comps() != 2 {
        return Err(Error::Comparison("discrete curve must carry (x, u) points".into()));
    }
    let mut arc = smooth.s_start();
    let mut arcs = Vec::new();
    let mut distances = Vec::new();
    let mut diff2 = 0.0;
    let mut ref2 = 0.0;
    for n in discrete.start()..=discrete.end() {
        if arc > smooth.s_end() + 1e-12 {
            break;
        }
        let st = smooth.eval(arc)?;
        let dx = discrete.value(n, 0)? - st.x;
        let du = discrete.value(n, 1)? - st.u;
        arcs.push(arc);
        distances.push((dx * dx + du * du).sqrt());
        diff2 += dx * dx + du * du;
        ref2 += st.x * st.x + st.u * st.u;
        if n < discrete.end() {
            let px = discrete.value(n + 1, 0)? - discrete.value(n, 0)?;
            let pu = discrete.value(n + 1, 1)? - discrete.value(n, 1)?;
            arc += (px * px + pu * pu).sqrt();
        }
    }
    if arcs.is_empty() {
        return Err(Error::Comparison("no overlap between the discrete and smooth arcs".into()));
    }
    if ref2 == 0.0 {
        return Err(Error::Comparison("smooth reference is identically zero".into()));
    }
    Ok(ComparisonReport {
        arcs,
        distances,
        relative_error: (diff2 / ref2).sqrt(),
    })
}

/// Builds an on-shell smooth initial state from a discrete conservation
/// record and the discrete invariants, anchored at `(x0, u0)`.
///
/// The curvature seed is the discrete curvature at the record's first
/// stencil index; its arc-length slope is fixed by the first integral with
/// the sign of the discrete forward difference of the curvature.
pub fn constants_from_discrete(
    record: &ConservationRecord,
    kappabar0: f64,
    kappabar1: f64,
    x0: f64,
    u0: f64,
) -> Result<(SmoothState, [f64; 3])> {
    let c = record.c;
    let planar = c[0] * c[0] + c[1] * c[1];
    let k0 = kappabar0;
    let rest = planar - k0.powi(4);
    if rest < 0.0 {
        return Err(Error::InconsistentConstants(format!(
            "c1^2 + c2^2 = {planar:.6e} below kappa0^4 = {:.6e}",
            k0.powi(4)
        )));
    }
    let mut ks = 0.5 * rest.sqrt();
    if kappabar1 < kappabar0 {
        ks = -ks;
    }
    Ok((SmoothState { s: 0.0, kappa: k0, kappa_s: ks, x: x0, u: u0 }, c))
}

/// Residual of the first integral `kappa^4 + 4 kappa_s^2 = c1^2 + c2^2`.
pub fn first_integral_residual(state: &SmoothState, c: [f64; 2]) -> f64 {
    state.kappa.powi(4) + 4.0 * state.kappa_s * state.kappa_s - (c[0] * c[0] + c[1] * c[1])
}

/// Residual of the monitored linear relation `c1 u - c2 x + c3 = 2 kappa`.
pub fn linear_relation_residual(state: &SmoothState, c: [f64; 3]) -> f64 {
    c[0] * state.u - c[1] * state.x + c[2] - 2.0 * state.kappa
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_shell_state(kappa: f64, kappa_s: f64) -> (SmoothState, [f64; 2]) {
        // Choose constants so the state satisfies the first integral with a
        // generic direction of the planar momentum.
        let norm2 = kappa.powi(4) + 4.0 * kappa_s * kappa_s;
        let angle = 0.7f64;
        let c = [norm2.sqrt() * angle.cos(), norm2.sqrt() * angle.sin()];
        (SmoothState { s: 0.0, kappa, kappa_s, x: 0.3, u: -0.2 }, c)
    }

    #[test]
    fn rhs_is_unit_speed_on_shell() {
        for (kappa, kappa_s) in [(0.5, 0.3), (1.0, -0.2), (0.0, 0.5), (-0.7, 0.1)] {
            let (state, c) = on_shell_state(kappa, kappa_s);
            let d = smooth_rhs(&state, c, 1.0).unwrap();
            let speed = d[2] * d[2] + d[3] * d[3];
            assert!((speed - 1.0).abs() < 1e-12, "kappa = {kappa}");
        }
    }

    #[test]
    fn rhs_straight_line_runs_along_x() {
        let state = SmoothState { s: 0.0, kappa: 0.0, kappa_s: 0.0, x: 0.0, u: 0.0 };
        let d = smooth_rhs(&state, [1.0, 0.0], 1.0).unwrap();
        assert_eq!(d, [0.0, 0.0, 1.0, 0.0]);
        let d = smooth_rhs(&state, [1.0, 0.0], -1.0).unwrap();
        assert_eq!(d, [0.0, 0.0, -1.0, 0.0]);
    }

    #[test]
    fn rhs_rejects_inconsistent_constants() {
        let state = SmoothState { s: 0.0, kappa: 1.0, kappa_s: 1.0, x: 0.0, u: 0.0 };
        assert!(matches!(
            smooth_rhs(&state, [0.0, 0.1], 1.0),
            Err(Error::InconsistentConstants(_))
        ));
    }

    #[test]
    fn straight_line_integrates_exactly() {
        let state = SmoothState { s: 0.0, kappa: 0.0, kappa_s: 0.0, x: 1.0, u: 2.0 };
        let traj = rkf45_integrate(&state, [1.0, 0.0], 1.0, 10.0, 0.1, None).unwrap();
        for st in &traj.states {
            assert!((st.x - (1.0 + st.s)).abs() < 1e-12);
            assert!((st.u - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn conservation_holds_over_long_adaptive_run() {
        let (state, c) = on_shell_state(0.8, 0.25);
        let traj = rkf45_integrate(&state, c, 1.0, 50.0, 0.1, Some(1e-10)).unwrap();
        let c3 = 2.0 * state.kappa - c[0] * state.u + c[1] * state.x;
        let full = [c[0], c[1], c3];
        for st in &traj.states {
            assert!(first_integral_residual(st, c).abs() < 1e-8, "s = {}", st.s);
            assert!(linear_relation_residual(st, full).abs() < 1e-6, "s = {}", st.s);
            let d = stage_rhs(st, c, 1.0).unwrap();
            assert!((d[2] * d[2] + d[3] * d[3] - 1.0).abs() < 1e-7, "s = {}", st.s);
        }
    }

    #[test]
    fn uniform_steps_show_fourth_order_convergence() {
        let (state, c) = on_shell_state(0.6, 0.35);
        // Reference at tight adaptive tolerance.
        let reference = rkf45_integrate(&state, c, 1.0, 4.0, 0.05, Some(1e-13)).unwrap();
        let want = *reference.states.last().unwrap();
        let endpoint_err = |h: f64| {
            let traj = rkf45_integrate(&state, c, 1.0, 4.0, h, None).unwrap();
            let got = *traj.states.last().unwrap();
            ((got.x - want.x).powi(2) + (got.u - want.u).powi(2)).sqrt()
                + (got.kappa - want.kappa).abs()
        };
        let e1 = endpoint_err(0.2);
        let e2 = endpoint_err(0.1);
        let e3 = endpoint_err(0.05);
        let p12 = (e1 / e2).log2();
        let p23 = (e2 / e3).log2();
        assert!((p12 - 4.0).abs() < 0.3 || (p23 - 4.0).abs() < 0.3, "orders {p12:.2}, {p23:.2}");
    }

    #[test]
    fn dense_output_matches_integration_nodes() {
        let (state, c) = on_shell_state(0.7, -0.2);
        let traj = rkf45_integrate(&state, c, 1.0, 3.0, 0.1, None).unwrap();
        for st in &traj.states {
            let via = traj.eval(st.s).unwrap();
            assert!((via.x - st.x).abs() < 1e-12 && (via.kappa - st.kappa).abs() < 1e-12);
        }
        // Interior accuracy: a tighter run agrees with the interpolant.
        let fine = rkf45_integrate(&state, c, 1.0, 3.0, 0.0125, None).unwrap();
        let mut worst = 0.0f64;
        for st in &fine.states {
            let via = traj.eval(st.s).unwrap();
            worst = worst.max((via.x - st.x).abs() + (via.u - st.u).abs());
        }
        // Interior interpolation error is of order h^5 per step.
        assert!(worst < 5e-5, "interpolant deviation {worst:.3e}");
        let half = rkf45_integrate(&state, c, 1.0, 3.0, 0.05, None).unwrap();
        let mut worst_half = 0.0f64;
        for st in &fine.states {
            let via = half.eval(st.s).unwrap();
            worst_half = worst_half.max((via.x - st.x).abs() + (via.u - st.u).abs());
        }
        assert!(worst_half < worst / 8.0, "no refinement gain: {worst_half:.3e} vs {worst:.3e}");
    }

    #[test]
    fn self_comparison_is_tiny() {
        let (state, c) = on_shell_state(0.9, 0.15);
        let traj = rkf45_integrate(&state, c, 1.0, 2.0, 0.05, None).unwrap();
        // Sample the smooth curve at its own nodes into a polyline.
        let rows: Vec<Vec<f64>> = traj.states.iter().map(|st| vec![st.x, st.u]).collect();
        let curve = DiscreteCurve::from_rows(0, rows).unwrap();
        // Vertex spacing along the polyline is the chord, not the arc, so
        // the match is only as good as the chord-arc gap; keep it loose.
        let report = compare_curves(&curve, &traj).unwrap();
        assert!(report.relative_error < 1e-3);
        // A straight line has no chord-arc gap at all.
        let state = SmoothState { s: 0.0, kappa: 0.0, kappa_s: 0.0, x: 0.0, u: 1.0 };
        let traj = rkf45_integrate(&state, [1.0, 0.0], 1.0, 2.0, 0.1, None).unwrap();
        let rows: Vec<Vec<f64>> = traj.states.iter().map(|st| vec![st.x, st.u]).collect();
        let curve = DiscreteCurve::from_rows(0, rows).unwrap();
        let report = compare_curves(&curve, &traj).unwrap();
        assert!(report.relative_error < 1e-12);
    }

    #[test]
    fn comparison_rejects_disjoint_ranges() {
        let state = SmoothState { s: 0.0, kappa: 0.0, kappa_s: 0.0, x: 0.0, u: 0.0 };
        let traj = rkf45_integrate(&state, [1.0, 0.0], 1.0, 1.0, 0.1, None).unwrap();
        let bad = DiscreteCurve::from_rows(0, vec![]).map(|c| c);
        assert!(bad.is_err());
        let empty_overlap = SmoothTrajectory { c: [1.0, 0.0], segments: vec![], states: vec![] };
        let curve = DiscreteCurve::from_rows(0, vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(compare_curves(&curve, &empty_overlap).is_err());
        let _ = traj;
    }

    #[test]
    fn discrete_seeding_is_on_shell() {
        let record = ConservationRecord {
            n: 1,
            v: [0.0; 3],
            c: [0.6, -0.8, 0.1],
        };
        let (state, c) = constants_from_discrete(&record, 0.5, 0.52, 0.0, 0.0).unwrap();
        assert!(first_integral_residual(&state, [c[0], c[1]]).abs() < 1e-12);
        assert!(state.kappa_s > 0.0);
        let (down, _) = constants_from_discrete(&record, 0.5, 0.48, 0.0, 0.0).unwrap();
        assert!(down.kappa_s < 0.0);
        let bad = ConservationRecord { n: 1, v: [0.0; 3], c: [0.1, 0.0, 0.0] };
        assert!(matches!(
            constants_from_discrete(&bad, 0.9, 0.9, 0.0, 0.0),
            Err(Error::InconsistentConstants(_))
        ));
    }
}
