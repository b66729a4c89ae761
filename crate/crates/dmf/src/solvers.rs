//! Recurrence solvers built on the action catalogue: the scaling frame
//! recurrence and its conservation-law reconstruction, the elastica
//! invariant stepper driven by a rotation recurrence with a Newton
//! corrector, and conservation-drift bookkeeping for any action.

use crate::actions::{self, ActionKind, GroupElement, InvariantSeries};
use crate::error::{Error, Result};
use crate::series::DiscreteCurve;

/// Newton tolerance of the elastica stepper (residual max-norm).
pub const ELASTICA_TOL: f64 = 1e-12;
/// Iteration cap of the elastica stepper.
pub const ELASTICA_MAX_ITER: usize = 50;
/// Jacobian determinants below this trigger damped fallback steps.
const SINGULAR_DET: f64 = 1e-13;

fn scaling_element(g: &GroupElement) -> Result<(f64, f64, f64)> {
    match *g {
        GroupElement::Scaling { lambda, a, b } => Ok((lambda, a, b)),
        _ => Err(Error::Parameter("expected a scaling group element".into())),
    }
}

/// One forward step of the scaling frame recurrence: the frame at `n + 1`
/// from the frame at `n` and the invariants `(kappa, eta)` at `n`.
pub fn scaling_frame_forward(inv: &InvariantSeries, g: &GroupElement, n: i64) -> Result<GroupElement> {
    let (lambda, a, b) = scaling_element(g)?;
    let kappa = inv.get(n, 0)?;
    let eta = inv.get(n, 1)?;
    let p = kappa - 1.0;
    if p == 0.0 {
        return Err(Error::Branch { n, kappa });
    }
    Ok(GroupElement::Scaling {
        lambda: lambda / p,
        a: (a - eta) / p.powi(3),
        b: (b - 1.0) / p,
    })
}

/// One backward step of the scaling frame recurrence: the frame at `n` from
/// the frame at `n + 1` and the invariants at `n`.
pub fn scaling_frame_backward(inv: &InvariantSeries, g: &GroupElement, n: i64) -> Result<GroupElement> {
    let (lambda, a, b) = scaling_element(g)?;
    let kappa = inv.get(n, 0)?;
    let eta = inv.get(n, 1)?;
    let p = kappa - 1.0;
    Ok(GroupElement::Scaling {
        lambda: lambda * p,
        a: a * p.powi(3) + eta,
        b: b * p + 1.0,
    })
}

/// Solves the scaling frame recurrence over `lo ..= hi` from a known frame
/// at `n0`, stepping forward above `n0` and backward below it.
pub fn scaling_frame_sequence(
    inv: &InvariantSeries,
    n0: i64,
    g0: &GroupElement,
    lo: i64,
    hi: i64,
) -> Result<Vec<GroupElement>> {
    if lo > hi || n0 < lo || n0 > hi {
        return Err(Error::Parameter(format!(
            "need lo <= n0 <= hi, got {lo} <= {n0} <= {hi}"
        )));
    }
    scaling_element(g0)?;
    let mut frames = vec![*g0; (hi - lo + 1) as usize];
    let idx = |n: i64| (n - lo) as usize;
    let mut g = *g0;
    for n in n0..hi {
        g = scaling_frame_forward(inv, &g, n)?;
        frames[idx(n + 1)] = g;
    }
    g = *g0;
    for n in (lo..n0).rev() {
        g = scaling_frame_backward(inv, &g, n)?;
        frames[idx(n)] = g;
    }
    Ok(frames)
}

/// Reads the curve point `(x, u)` off a scaling frame: the frame translates
/// the point to the origin, so the point is recovered from the frame
/// parameters alone.
pub fn scaling_point_from_frame(g: &GroupElement) -> Result<(f64, f64)> {
    let (lambda, a, b) = scaling_element(g)?;
    if lambda == 0.0 {
        return Err(Error::Parameter("frame scale must be nonzero".into()));
    }
    Ok((-a / lambda.powi(3), -b / lambda))
}

/// Reconstructs the original curve from a frame sequence starting at `lo`.
pub fn scaling_reconstruct_from_frames(frames: &[GroupElement], lo: i64) -> Result<DiscreteCurve> {
    let rows = frames
        .iter()
        .map(|g| scaling_point_from_frame(g).map(|(x, u)| vec![x, u]))
        .collect::<Result<Vec<_>>>()?;
    DiscreteCurve::from_rows(lo, rows)
}

/// Relative tolerance of the conservation-consistency test
/// `V2 / V3^3 = c2 / c3^3`.
pub const CONSISTENCY_TOL: f64 = 1e-6;

/// Reconstructs the original `(x, u)` curve of the scaling action from its
/// invariants and conservation constants `(c1, c2, c3)`, anchored by the
/// value `u0` at the first reconstructible index. Covers the indices where
/// the conservation vector exists, `inv.start() + 2 ..= inv.end() + 1`.
pub fn scaling_reconstruct_from_conservation(
    inv: &InvariantSeries,
    c: [f64; 3],
    u0: f64,
) -> Result<DiscreteCurve> {
    if c[1] == 0.0 || c[2] == 0.0 {
        return Err(Error::InconsistentConstants(
            "c2 and c3 must be nonzero to invert the frame".into(),
        ));
    }
    let lo = inv.start() + 2;
    let hi = inv.end() + 1;
    if lo > hi {
        return Err(Error::WindowTooShort { n: lo, lo, hi });
    }
    let ratio = c[1] / c[2].powi(3);
    let mut u = u0;
    let mut rows = Vec::new();
    for n in lo..=hi {
        let v = actions::conservation_vector(ActionKind::Scaling, inv, n)?;
        if v[2] == 0.0 {
            return Err(Error::InconsistentConstants(format!(
                "V3 vanishes at n = {n}; the frame scale is undetermined"
            )));
        }
        let got = v[1] / v[2].powi(3);
        if (got - ratio).abs() > CONSISTENCY_TOL * ratio.abs().max(1.0) {
            return Err(Error::InconsistentConstants(format!(
                "V2 / V3^3 = {got:.6e} differs from c2 / c3^3 = {ratio:.6e} at n = {n}"
            )));
        }
        let x = (c[0] - v[0] - c[2] * u) / (3.0 * c[1]);
        rows.push(vec![x, u]);
        // The chord u(n+1) - u(n) equals V3(n) / c3.
        u += v[2] / c[2];
    }
    DiscreteCurve::from_rows(lo, rows)
}

/// Variational derivatives of the elastica density at one index.
fn elastica_e(l: f64, h: f64) -> (f64, f64) {
    (-h.sin().powi(2) / (l * l), (2.0 * h).sin() / l)
}

/// The propagated two-vector of the elastica rotation recurrence at `n`,
/// from invariants at `n - 1` and `n`.
fn elastica_w(l_prev: f64, h_prev: f64, l: f64, h: f64) -> [f64; 2] {
    let (e_l, e_h) = elastica_e(l, h);
    let (_, e_h_prev) = elastica_e(l_prev, h_prev);
    [(e_h_prev - e_h) / l, e_l]
}

/// Residual of the elastica step equations for trial invariants
/// `(l, h)` at `n + 1`, given `E_h` at `n` and the rotated target vector.
fn step_residual(l: f64, h: f64, e_h_n: f64, t: [f64; 2]) -> [f64; 2] {
    [
        (e_h_n - (2.0 * h).sin() / l) / l - t[0],
        -h.sin().powi(2) / (l * l) - t[1],
    ]
}

/// One step of the elastica recurrence: invariants at `n + 1` from
/// invariants at `n - 1` and `n`, solving the rotated recurrence by Newton
/// with an analytic Jacobian and damped fallback steps. The step index `n`
/// is only used in error reports.
pub fn elastica_step(
    n: i64,
    l_prev: f64,
    h_prev: f64,
    l: f64,
    h: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    if !(l_prev > 0.0 && l > 0.0) {
        return Err(Error::Inadmissible {
            action: "elastica",
            n,
            reason: "chord lengths must be positive".into(),
        });
    }
    let w = elastica_w(l_prev, h_prev, l, h);
    let (s, c) = h.sin_cos();
    let t = [c * w[0] - s * w[1], s * w[0] + c * w[1]];
    let (_, e_h_n) = elastica_e(l, h);

    let mut lp = l;
    let mut hp = h;
    let mut res = step_residual(lp, hp, e_h_n, t);
    let mut rnorm = res[0].abs().max(res[1].abs());
    for iter in 0..crate::solvers::ELASTICA_MAX_ITER {
        if rnorm <= tol {
            return Ok((lp, hp));
        }
        // Analytic Jacobian of the step residual in (l, h).
        let s2 = (2.0 * hp).sin();
        let c2 = (2.0 * hp).cos();
        let j11 = -e_h_n / (lp * lp) + 2.0 * s2 / lp.powi(3);
        let j12 = -2.0 * c2 / (lp * lp);
        let j21 = 2.0 * hp.sin().powi(2) / lp.powi(3);
        let j22 = -s2 / (lp * lp);
        let det = j11 * j22 - j12 * j21;
        let (mut dl, mut dh);
        if det.abs() < SINGULAR_DET {
            // Singular corner (straight configurations): fall back to a
            // small gradient-free damped move in h only.
            dl = 0.0;
            dh = if res[1] >= 0.0 { -1e-3 } else { 1e-3 };
        } else {
            dl = -(j22 * res[0] - j12 * res[1]) / det;
            dh = -(j11 * res[1] - j21 * res[0]) / det;
        }
        let mut accepted = false;
        for _ in 0..8 {
            let mut lt = lp + dl;
            let ht = hp + dh;
            if lt <= 0.0 {
                lt = lp * 0.5;
            }
            let rt = step_residual(lt, ht, e_h_n, t);
            let rt_norm = rt[0].abs().max(rt[1].abs());
            if rt_norm < rnorm || rnorm <= tol {
                lp = lt;
                hp = ht;
                res = rt;
                rnorm = rt_norm;
                accepted = true;
                break;
            }
            dl *= 0.5;
            dh *= 0.5;
        }
        if !accepted {
            return Err(Error::StepFailure { n, residual: rnorm, iters: iter + 1 });
        }
    }
    if rnorm <= tol {
        Ok((lp, hp))
    } else {
        Err(Error::StepFailure {
            n,
            residual: rnorm,
            iters: crate::solvers::ELASTICA_MAX_ITER,
        })
    }
}

/// Seed of the elastica recurrence: invariants at the two start indices
/// `-1` and `0`.
#[derive(Debug, Clone, Copy)]
pub struct ElasticaSeed {
    /// Chord length at index `-1`; positive.
    pub l_prev: f64,
    /// Turning angle at index `-1`.
    pub h_prev: f64,
    /// Chord length at index `0`; positive.
    pub l0: f64,
    /// Turning angle at index `0`.
    pub h0: f64,
}

/// Anchor fixing the rigid-motion freedom of the reconstructed polyline.
#[derive(Debug, Clone, Copy)]
pub struct ElasticaAnchor {
    /// Position `x` of point `0`.
    pub x0: f64,
    /// Position `u` of point `0`.
    pub u0: f64,
    /// Direction angle of chord `0`.
    pub theta0: f64,
}

/// Runs the elastica recurrence for `steps` forward steps, producing the
/// invariants over indices `-1 ..= steps`.
///
/// ```
/// use dmf::solvers::{elastica_invariants, elastica_reconstruct, ElasticaAnchor, ElasticaSeed};
/// let seed = ElasticaSeed { l_prev: 1.0, h_prev: 0.0, l0: 1.0, h0: 0.0 };
/// let inv = elastica_invariants(&seed, 5, 1e-12).unwrap();
/// let anchor = ElasticaAnchor { x0: 0.0, u0: 0.0, theta0: 0.0 };
/// let curve = elastica_reconstruct(&inv, &anchor).unwrap();
/// // A straight seed stays straight: point n is (n, 0).
/// assert!((curve.value(3, 0).unwrap() - 3.0).abs() < 1e-12);
/// assert!(curve.value(3, 1).unwrap().abs() < 1e-12);
/// ```
pub fn elastica_invariants(seed: &ElasticaSeed, steps: i64, tol: f64) -> Result<InvariantSeries> {
    if steps < 1 {
        return Err(Error::Parameter("steps must be at least 1".into()));
    }
    if !(seed.l_prev > 0.0 && seed.l0 > 0.0) {
        return Err(Error::Parameter("seed chord lengths must be positive".into()));
    }
    let mut rows = vec![vec![seed.l_prev, seed.h_prev], vec![seed.l0, seed.h0]];
    let (mut l_prev, mut h_prev) = (seed.l_prev, seed.h_prev);
    let (mut l, mut h) = (seed.l0, seed.h0);
    for n in 0..steps {
        let (ln, hn) = elastica_step(n, l_prev, h_prev, l, h, tol)?;
        rows.push(vec![ln, hn]);
        (l_prev, h_prev) = (l, h);
        (l, h) = (ln, hn);
    }
    InvariantSeries::new(ActionKind::Elastica, -1, rows)
}

/// Result of a forward run that tolerates a stepper failure: the invariants
/// produced up to that point plus, when the run aborted, the failing index
/// and the error raised there.
#[derive(Debug)]
pub struct ElasticaRunOutcome {
    /// Invariants over `-1 ..= last produced index`.
    pub inv: InvariantSeries,
    /// Failing step index and error, if the run aborted early.
    pub failure: Option<(i64, Error)>,
}

/// Runs the elastica recurrence like [`elastica_invariants`] but aborts
/// cleanly on a step failure, keeping the rows produced so far.
pub fn elastica_run(seed: &ElasticaSeed, steps: i64, tol: f64) -> Result<ElasticaRunOutcome> {
    if steps < 1 {
        return Err(Error::Parameter("steps must be at least 1".into()));
    }
    if !(seed.l_prev > 0.0 && seed.l0 > 0.0) {
        return Err(Error::Parameter("seed chord lengths must be positive".into()));
    }
    let mut rows = vec![vec![seed.l_prev, seed.h_prev], vec![seed.l0, seed.h0]];
    let (mut l_prev, mut h_prev) = (seed.l_prev, seed.h_prev);
    let (mut l, mut h) = (seed.l0, seed.h0);
    let mut failure = None;
    for n in 0..steps {
        match elastica_step(n, l_prev, h_prev, l, h, tol) {
            Ok((ln, hn)) => {
                rows.push(vec![ln, hn]);
                (l_prev, h_prev) = (l, h);
                (l, h) = (ln, hn);
            }
            Err(e) => {
                failure = Some((n, e));
                break;
            }
        }
    }
    Ok(ElasticaRunOutcome {
        inv: InvariantSeries::new(ActionKind::Elastica, -1, rows)?,
        failure,
    })
}

/// Rebuilds the polyline from elastica invariants and an anchor: points
/// cover `inv.start() ..= inv.end() + 1`, with point `0` and chord angle `0`
/// fixed by the anchor.
pub fn elastica_reconstruct(inv: &InvariantSeries, anchor: &ElasticaAnchor) -> Result<DiscreteCurve> {
    if inv.kind() != ActionKind::Elastica {
        return Err(Error::Parameter("expected elastica invariants".into()));
    }
    if inv.start() > 0 || inv.end() < 0 {
        return Err(Error::Parameter("invariants must cover index 0".into()));
    }
    let lo = inv.start();
    let hi = inv.end() + 1;
    // Chord angles from the anchor: theta(n+1) = theta(n) + h_theta(n).
    let mut theta = vec![0.0; (hi - lo + 1) as usize];
    let idx = |n: i64| (n - lo) as usize;
    theta[idx(0)] = anchor.theta0;
    for n in 0..hi {
        theta[idx(n + 1)] = theta[idx(n)] + inv.get(n, 1)?;
    }
    for n in (lo..0).rev() {
        theta[idx(n)] = theta[idx(n + 1)] - inv.get(n, 1)?;
    }
    let mut rows = vec![vec![0.0, 0.0]; (hi - lo + 1) as usize];
    rows[idx(0)] = vec![anchor.x0, anchor.u0];
    for n in 0..hi {
        let l = inv.get(n, 0)?;
        let (s, c) = theta[idx(n)].sin_cos();
        let p = rows[idx(n)].clone();
        rows[idx(n + 1)] = vec![p[0] + l * c, p[1] - l * s];
    }
    for n in (lo..0).rev() {
        let l = inv.get(n, 0)?;
        let (s, c) = theta[idx(n)].sin_cos();
        let p = rows[idx(n + 1)].clone();
        rows[idx(n)] = vec![p[0] - l * c, p[1] + l * s];
    }
    DiscreteCurve::from_rows(lo, rows)
}

/// Reconstructs the elastica polyline from on-shell invariants and the
/// conserved constants `(c1, c2, c3)`, anchored by the point `(x0, u0)` at
/// the first reconstructible index. The chord angle at each index is read
/// off the planar part of the conservation law: rotating `(V1, V2)` by the
/// chord angle must give `(c1, c2)`. Points cover
/// `inv.start() + 2 ..= inv.end() + 1`.
pub fn elastica_reconstruct_from_conservation(
    inv: &InvariantSeries,
    c: [f64; 3],
    x0: f64,
    u0: f64,
) -> Result<DiscreteCurve> {
    if inv.kind() != ActionKind::Elastica {
        return Err(Error::Parameter("expected elastica invariants".into()));
    }
    let planar = c[0] * c[0] + c[1] * c[1];
    if planar <= 0.0 {
        return Err(Error::InconsistentConstants(
            "c1^2 + c2^2 must be positive to determine the chord angles".into(),
        ));
    }
    let lo = inv.start() + 2;
    let hi = inv.end() + 1;
    if lo >= hi {
        return Err(Error::WindowTooShort { n: lo, lo, hi });
    }
    let c_angle = c[1].atan2(c[0]);
    let mut rows = Vec::new();
    let (mut x, mut u) = (x0, u0);
    for n in lo..=hi {
        let v = actions::conservation_vector(ActionKind::Elastica, inv, n)?;
        let got = v[0] * v[0] + v[1] * v[1];
        if (got - planar).abs() > CONSISTENCY_TOL * planar.max(1.0) {
            return Err(Error::InconsistentConstants(format!(
                "V1^2 + V2^2 = {got:.6e} differs from c1^2 + c2^2 = {planar:.6e} at n = {n}"
            )));
        }
        rows.push(vec![x, u]);
        if n < hi {
            // (V1, V2) rotated by theta equals (c1, c2).
            let theta = v[1].atan2(v[0]) - c_angle;
            let l = inv.get(n, 0)?;
            let (s, co) = theta.sin_cos();
            x += l * co;
            u -= l * s;
        }
    }
    DiscreteCurve::from_rows(lo, rows)
}

/// Conservation data at one index: the invariant vector `V` and the
/// conserved vector `c = V Ad(rho_0)`.
#[derive(Debug, Clone, Copy)]
pub struct ConservationRecord {
    /// Index.
    pub n: i64,
    /// Conservation-law vector in invariant form.
    pub v: [f64; 3],
    /// Conserved constants recovered at this index.
    pub c: [f64; 3],
}

/// Tabulates elastica conservation records directly from an invariant
/// series and an anchor, marching the chord angles and points alongside.
///
/// Unlike [`conservation_records`], nothing is re-extracted from
/// reconstructed positions; that re-extraction divides rounding noise by the
/// chord length twice and can swamp the drift measurement on fine meshes.
pub fn elastica_conservation_records(
    inv: &InvariantSeries,
    anchor: &ElasticaAnchor,
) -> Result<Vec<ConservationRecord>> {
    if inv.kind() != ActionKind::Elastica {
        return Err(Error::Parameter("expected elastica invariants".into()));
    }
    if inv.start() > 0 {
        return Err(Error::Parameter("invariants must cover index 0".into()));
    }
    // March theta and the point from the anchor back to the first usable
    // index, then forward, mirroring the reconstruction exactly.
    let lo = inv.start() + 2;
    let hi = inv.end() + 1;
    if lo > hi {
        return Err(Error::WindowTooShort { n: lo, lo, hi });
    }
    let mut theta = anchor.theta0;
    let (mut x, mut u) = (anchor.x0, anchor.u0);
    for n in 0..lo {
        let l = inv.get(n, 0)?;
        let (s, c) = theta.sin_cos();
        x += l * c;
        u -= l * s;
        theta += inv.get(n, 1)?;
    }
    for n in (lo..0).rev() {
        theta -= inv.get(n, 1)?;
        let l = inv.get(n, 0)?;
        let (s, c) = theta.sin_cos();
        x -= l * c;
        u += l * s;
    }
    let mut out = Vec::new();
    for n in lo..=hi {
        let v = actions::conservation_vector(ActionKind::Elastica, inv, n)?;
        let (s, c) = theta.sin_cos();
        let g = GroupElement::Elastica {
            theta,
            a: -(c * x - s * u),
            b: -(s * x + c * u),
        };
        let cvec = g.ad().row_mul(&v);
        out.push(ConservationRecord {
            n,
            v: [v[0], v[1], v[2]],
            c: [cvec[0], cvec[1], cvec[2]],
        });
        if n < hi {
            let l = inv.get(n, 0)?;
            x += l * c;
            u -= l * s;
            theta += inv.get(n, 1)?;
        }
    }
    Ok(out)
}

/// Tabulates `V` and `c = V Ad(rho_0)` over `lo ..= hi` for any action.
///
/// ```
/// use dmf::actions::ActionKind;
/// use dmf::actions::scaling::{closed_form_curve, ScalingParams};
/// use dmf::solvers::{conservation_drift, conservation_records};
/// let p = ScalingParams { k1: 2.0, k2: 1.0, k3: 0.0, k4: 1.0, k5: 0.0, k6: 0.0 };
/// let curve = closed_form_curve(&p, -4, 14).unwrap();
/// let records = conservation_records(ActionKind::Scaling, &curve, 0, 10).unwrap();
/// // On an extremal the recovered constants do not move.
/// assert!(conservation_drift(&records) < 1e-9);
/// ```
pub fn conservation_records(
    kind: ActionKind,
    curve: &DiscreteCurve,
    lo: i64,
    hi: i64,
) -> Result<Vec<ConservationRecord>> {
    let inv = actions::invariants_from_curve(kind, curve)?;
    let mut out = Vec::new();
    for n in lo..=hi {
        let v = actions::conservation_vector(kind, &inv, n)?;
        let ad = actions::ad_of_frame(kind, curve, n)?;
        let c = ad.row_mul(&v);
        out.push(ConservationRecord {
            n,
            v: [v[0], v[1], v[2]],
            c: [c[0], c[1], c[2]],
        });
    }
    Ok(out)
}

/// Largest max-norm deviation of the recovered constants from those at the
/// first record.
pub fn conservation_drift(records: &[ConservationRecord]) -> f64 {
    let Some(first) = records.first() else {
        return 0.0;
    };
    records
        .iter()
        .map(|r| {
            (0..3)
                .map(|i| (r.c[i] - first.c[i]).abs())
                .fold(0.0f64, f64::max)
        })
        .fold(0.0f64, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::scaling::{
        closed_form, closed_form_curve, invariants_from_curve as scaling_invariants, ScalingParams,
    };
    use crate::actions::{elastica, frame};

    fn params() -> ScalingParams {
        ScalingParams { k1: 2.0, k2: 1.0, k3: 0.5, k4: 1.0, k5: 0.0, k6: 0.25 }
    }

    #[test]
    fn scaling_frame_sequence_matches_direct_frames() {
        let p = params();
        let curve = closed_form_curve(&p, -4, 9).unwrap();
        let inv = scaling_invariants(&curve).unwrap();
        let g0 = frame(ActionKind::Scaling, &curve, 0).unwrap();
        let frames = scaling_frame_sequence(&inv, 0, &g0, -4, 7).unwrap();
        for n in -4..=7i64 {
            let direct = frame(ActionKind::Scaling, &curve, n).unwrap().rep();
            let stepped = frames[(n + 4) as usize].rep();
            assert!(direct.sub(&stepped).max_norm() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn scaling_reconstruction_from_frames_matches_curve() {
        let p = params();
        let curve = closed_form_curve(&p, -4, 9).unwrap();
        let inv = scaling_invariants(&curve).unwrap();
        let g0 = frame(ActionKind::Scaling, &curve, 0).unwrap();
        let frames = scaling_frame_sequence(&inv, 0, &g0, -4, 7).unwrap();
        let rebuilt = scaling_reconstruct_from_frames(&frames, -4).unwrap();
        for n in -4..=7 {
            for comp in 0..2 {
                let want = curve.value(n, comp).unwrap();
                let got = rebuilt.value(n, comp).unwrap();
                assert!((want - got).abs() < 1e-9, "n = {n}, comp = {comp}");
            }
        }
    }

    #[test]
    fn scaling_reconstruction_from_conservation_matches_closed_form() {
        let p = params();
        let c = p.constants();
        let curve = closed_form_curve(&p, -4, 9).unwrap();
        let inv = scaling_invariants(&curve).unwrap();
        let u0 = closed_form(&p, -2).unwrap().u;
        let rebuilt = scaling_reconstruct_from_conservation(&inv, c, u0).unwrap();
        for n in -2..=8 {
            let pt = closed_form(&p, n).unwrap();
            assert!((rebuilt.value(n, 0).unwrap() - pt.x).abs() < 1e-9, "x at {n}");
            assert!((rebuilt.value(n, 1).unwrap() - pt.u).abs() < 1e-9, "u at {n}");
        }
    }

    #[test]
    fn scaling_reconstruction_rejects_inconsistent_constants() {
        let p = params();
        let mut c = p.constants();
        c[1] *= 1.01;
        let curve = closed_form_curve(&p, -4, 9).unwrap();
        let inv = scaling_invariants(&curve).unwrap();
        assert!(matches!(
            scaling_reconstruct_from_conservation(&inv, c, 0.0),
            Err(Error::InconsistentConstants(_))
        ));
    }

    // A seed in the slowly-bending regime: the curvature gradient across the
    // two seed chords is of order one, which keeps the chord-length equation
    // well conditioned, and the small chords put many steps between the seed
    // and the nearest curvature turning point.
    fn seed() -> ElasticaSeed {
        ElasticaSeed {
            l_prev: 0.002457502172472302,
            h_prev: -0.0002573603562279051,
            l0: 0.0019124001114030258,
            h0: -0.00020133285558474485,
        }
    }

    #[test]
    fn elastica_steps_satisfy_el_equations() {
        let inv = elastica_invariants(&seed(), 25, ELASTICA_TOL).unwrap();
        for n in 1..=24 {
            let r = elastica::el_residual(&inv, n).unwrap();
            assert!(r[0].abs() < 1e-10 && r[1].abs() < 1e-10, "n = {n}: {r:?}");
        }
    }

    #[test]
    fn elastica_step_matches_direct_newton_on_el_equations() {
        // Independent route: solve the two Euler-Lagrange equations at the
        // new index directly with finite-difference Newton, no rotation
        // recurrence involved.
        let s = seed();
        let (l1, h1) = elastica_step(0, s.l_prev, s.h_prev, s.l0, s.h0, ELASTICA_TOL).unwrap();
        let residual = |lp: f64, hp: f64| {
            let rows = vec![
                vec![s.l_prev, s.h_prev],
                vec![s.l0, s.h0],
                vec![lp, hp],
            ];
            let inv = InvariantSeries::new(ActionKind::Elastica, -1, rows).unwrap();
            let r = elastica::el_residual(&inv, 1).unwrap();
            [r[0], r[1]]
        };
        let (mut lp, mut hp) = (s.l0, s.h0);
        for _ in 0..60 {
            let r = residual(lp, hp);
            if r[0].abs().max(r[1].abs()) < 1e-13 {
                break;
            }
            let d = 1e-7;
            let rl = residual(lp + d, hp);
            let rh = residual(lp, hp + d);
            let j11 = (rl[0] - r[0]) / d;
            let j12 = (rh[0] - r[0]) / d;
            let j21 = (rl[1] - r[1]) / d;
            let j22 = (rh[1] - r[1]) / d;
            let det = j11 * j22 - j12 * j21;
            lp -= (j22 * r[0] - j12 * r[1]) / det;
            hp -= (j11 * r[1] - j21 * r[0]) / det;
        }
        assert!((l1 - lp).abs() < 1e-9, "{l1} vs {lp}");
        assert!((h1 - hp).abs() < 1e-9, "{h1} vs {hp}");
    }

    #[test]
    fn elastica_reconstruction_reproduces_invariants() {
        let inv = elastica_invariants(&seed(), 20, ELASTICA_TOL).unwrap();
        let anchor = ElasticaAnchor { x0: 0.2, u0: -0.1, theta0: 0.4 };
        let curve = elastica_reconstruct(&inv, &anchor).unwrap();
        assert!((curve.value(0, 0).unwrap() - 0.2).abs() < 1e-14);
        let inv2 = elastica::invariants_from_curve(&curve).unwrap();
        for n in -1..=19 {
            for comp in 0..2 {
                let a = inv.get(n, comp).unwrap();
                let b = inv2.get(n, comp).unwrap();
                assert!((a - b).abs() < 1e-10, "n = {n}, comp = {comp}");
            }
        }
    }

    #[test]
    fn elastica_conservation_holds_along_solution() {
        let inv = elastica_invariants(&seed(), 25, ELASTICA_TOL).unwrap();
        let anchor = ElasticaAnchor { x0: 0.0, u0: 0.0, theta0: 0.0 };
        let records = elastica_conservation_records(&inv, &anchor).unwrap();
        assert!(conservation_drift(&records) < 1e-10);
        // The planar norm V1^2 + V2^2 equals c1^2 + c2^2 at every index.
        let c = records[0].c;
        for r in &records {
            let lhs = r.v[0] * r.v[0] + r.v[1] * r.v[1];
            let rhs = c[0] * c[0] + c[1] * c[1];
            assert!((lhs - rhs).abs() < 1e-10, "n = {}", r.n);
        }
    }

    #[test]
    fn elastica_long_run_stays_conservative() {
        let inv = elastica_invariants(&seed(), 1000, ELASTICA_TOL).unwrap();
        assert_eq!(inv.end(), 1000);
        for n in 1..=999 {
            let r = elastica::el_residual(&inv, n).unwrap();
            assert!(r[0].abs() < 1e-10 && r[1].abs() < 1e-10, "n = {n}: {r:?}");
        }
        let anchor = ElasticaAnchor { x0: 0.0, u0: 0.0, theta0: 0.0 };
        let records = elastica_conservation_records(&inv, &anchor).unwrap();
        assert!(conservation_drift(&records) < 1e-8);
        let c = records[0].c;
        let planar = c[0] * c[0] + c[1] * c[1];
        for r in &records {
            let got = r.v[0] * r.v[0] + r.v[1] * r.v[1];
            assert!((got - planar).abs() < 1e-8, "n = {}", r.n);
        }
    }

    #[test]
    fn elastica_reconstruction_from_conservation_matches_direct_route() {
        let inv = elastica_invariants(&seed(), 30, ELASTICA_TOL).unwrap();
        let anchor = ElasticaAnchor { x0: 0.1, u0: -0.2, theta0: 0.3 };
        let direct = elastica_reconstruct(&inv, &anchor).unwrap();
        let records = elastica_conservation_records(&inv, &anchor).unwrap();
        let c = records[0].c;
        let x1 = direct.value(1, 0).unwrap();
        let u1 = direct.value(1, 1).unwrap();
        let rebuilt = elastica_reconstruct_from_conservation(&inv, c, x1, u1).unwrap();
        for n in 1..=30 {
            for comp in 0..2 {
                let want = direct.value(n, comp).unwrap();
                let got = rebuilt.value(n, comp).unwrap();
                assert!((want - got).abs() < 1e-8, "n = {n}, comp = {comp}");
            }
        }
    }

    #[test]
    fn elastica_conservation_route_rejects_degenerate_constants() {
        let rows = vec![vec![1.0, 0.0]; 6];
        let inv = InvariantSeries::new(ActionKind::Elastica, -1, rows).unwrap();
        assert!(matches!(
            elastica_reconstruct_from_conservation(&inv, [0.0, 0.0, 0.0], 0.0, 0.0),
            Err(Error::InconsistentConstants(_))
        ));
    }

    #[test]
    fn elastica_conservation_route_rejects_inconsistent_constants() {
        let inv = elastica_invariants(&seed(), 10, ELASTICA_TOL).unwrap();
        let anchor = ElasticaAnchor { x0: 0.0, u0: 0.0, theta0: 0.0 };
        let records = elastica_conservation_records(&inv, &anchor).unwrap();
        let mut c = records[0].c;
        c[0] *= 1.5;
        c[1] *= 1.5;
        assert!(matches!(
            elastica_reconstruct_from_conservation(&inv, c, 0.0, 0.0),
            Err(Error::InconsistentConstants(_))
        ));
    }

    #[test]
    fn scaling_conservation_records_match_parameters() {
        let p = params();
        let c = p.constants();
        let curve = closed_form_curve(&p, -4, 9).unwrap();
        let records = conservation_records(ActionKind::Scaling, &curve, -2, 7).unwrap();
        assert!(conservation_drift(&records) < 1e-9);
        for i in 0..3 {
            assert!((records[0].c[i] - c[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn elastica_step_reports_failure_for_bad_chords() {
        assert!(matches!(
            elastica_step(3, -1.0, 0.1, 1.0, 0.1, ELASTICA_TOL),
            Err(Error::Inadmissible { .. })
        ));
    }
}
