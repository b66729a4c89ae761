//! Scaling-and-translation action on planar curves `(x, u)`:
//! `x -> lambda^3 x + a`, `u -> lambda u + b` with `lambda > 0`.
//!
//! The frame normalizes `x_0 = 0`, `u_0 = 0`, `u_1 = 1`, which requires
//! `u_1 - u_0 > 0`. Generating invariants are
//! `kappa = (u_2 - u_0) / (u_1 - u_0)` and `eta = (x_1 - x_0) / (u_1 - u_0)^3`;
//! the variational model is the invariant density `eta (kappa - 1)^{-3/2}`,
//! whose extremals require the branch `kappa > 1`.

use crate::actions::{GroupElement, InvariantSeries};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::ops::{lagrangian_partial, LagrangianFn, LinearDifferenceOperator};
use crate::series::DiscreteCurve;

use super::ActionKind;

fn delta(curve: &DiscreteCurve, n: i64) -> Result<f64> {
    let d = curve.value(n + 1, 1)? - curve.value(n, 1)?;
    if d == 0.0 {
        return Err(Error::Inadmissible {
            action: "scaling",
            n,
            reason: "u(n+1) = u(n)".into(),
        });
    }
    Ok(d)
}

/// Generating invariants `(kappa, eta)` at every index with two forward
/// neighbours.
pub fn invariants_from_curve(curve: &DiscreteCurve) -> Result<InvariantSeries> {
    if curve.comps() != 2 {
        return Err(Error::Parameter("scaling curves carry (x, u) points".into()));
    }
    if curve.len() < 3 {
        return Err(Error::WindowTooShort { n: curve.start(), lo: curve.start(), hi: curve.start() + 2 });
    }
    let mut rows = Vec::new();
    for n in curve.start()..=curve.end() - 2 {
        let d = delta(curve, n)?;
        let kappa = (curve.value(n + 2, 1)? - curve.value(n, 1)?) / d;
        let eta = (curve.value(n + 1, 0)? - curve.value(n, 0)?) / d.powi(3);
        rows.push(vec![kappa, eta]);
    }
    InvariantSeries::new(ActionKind::Scaling, curve.start(), rows)
}

/// Frame at `n`: the unique group element sending `x_n` and `u_n` to zero
/// and `u_{n+1}` to one.
pub fn frame(curve: &DiscreteCurve, n: i64) -> Result<GroupElement> {
    let d = delta(curve, n)?;
    if d < 0.0 {
        return Err(Error::Inadmissible {
            action: "scaling",
            n,
            reason: "frame needs u(n+1) > u(n)".into(),
        });
    }
    Ok(GroupElement::Scaling {
        lambda: 1.0 / d,
        a: -curve.value(n, 0)? / d.powi(3),
        b: -curve.value(n, 1)? / d,
    })
}

fn branch(inv: &InvariantSeries, n: i64) -> Result<f64> {
    let kappa = inv.get(n, 0)?;
    if kappa <= 1.0 {
        return Err(Error::Branch { n, kappa });
    }
    Ok(kappa)
}

/// Variational derivative of the invariant density with respect to `eta`.
pub fn e_eta(inv: &InvariantSeries, n: i64) -> Result<f64> {
    Ok((branch(inv, n)? - 1.0).powf(-1.5))
}

/// Variational derivative of the invariant density with respect to `kappa`.
pub fn e_kappa(inv: &InvariantSeries, n: i64) -> Result<f64> {
    let kappa = branch(inv, n)?;
    Ok(-1.5 * inv.get(n, 1)? * (kappa - 1.0).powf(-2.5))
}

/// Residuals of the two invariantized Euler-Lagrange equations at `n`
/// (stencil `n-2 ..= n`).
pub fn el_residual(inv: &InvariantSeries, n: i64) -> Result<Vec<f64>> {
    inv.require(n - 2, n)?;
    let k = |m: i64| inv.get(m, 0);
    let e = |m: i64| inv.get(m, 1);
    let r1 = (k(n - 1)? - 1.0).powf(1.5) - (k(n)? - 1.0).powf(-1.5);
    let r2 = 1.5
        * (e(n)? * (k(n)? - 1.0).powf(-1.5)
            - e(n - 1)? * (k(n - 1)? - 1.0).powf(-0.5)
            + e(n - 1)? * (k(n - 1)? - 1.0).powf(-1.5)
            - e(n - 2)? * (k(n - 1)? - 1.0) * (k(n - 2)? - 1.0).powf(-1.5));
    if !(r1.is_finite() && r2.is_finite()) {
        branch(inv, n)?;
        branch(inv, n - 1)?;
        branch(inv, n - 2)?;
        return Err(Error::NonFinite("scaling residual"));
    }
    Ok(vec![r1, r2])
}

/// Conservation-law vector `V = (V1, V2, V3)` at `n` (stencil `n-2 ..= n-1`).
pub fn conservation_vector(inv: &InvariantSeries, n: i64) -> Result<Vec<f64>> {
    inv.require(n - 2, n - 1)?;
    let k = |m: i64| inv.get(m, 0);
    let e = |m: i64| inv.get(m, 1);
    let v1 = (k(n - 1)? - 1.0) * e_kappa(inv, n - 1)?;
    let v2 = (k(n - 1)? - 1.0).powi(3) * e_eta(inv, n - 1)?;
    let v3 = -(3.0 * e(n - 1)? * (k(n - 1)? - 1.0) * e_eta(inv, n - 1)?
        + (k(n - 1)? - 1.0).powi(2) * e_kappa(inv, n - 1)?)
        + (k(n - 2)? - 1.0) * (k(n - 1)? - 1.0) * e_kappa(inv, n - 2)?;
    Ok(vec![v1, v2, v3])
}

/// Maurer-Cartan matrix in the faithful representation, written in the
/// invariants at `n`.
pub fn symbolic_k0(inv: &InvariantSeries, n: i64) -> Result<SquareMatrix> {
    let kappa = inv.get(n, 0)?;
    let eta = inv.get(n, 1)?;
    let p = kappa - 1.0;
    if p == 0.0 {
        return Err(Error::Branch { n, kappa });
    }
    SquareMatrix::new(
        3,
        vec![
            p.powi(-3), 0.0, -eta * p.powi(-3),
            0.0, 1.0 / p, -1.0 / p,
            0.0, 0.0, 1.0,
        ],
    )
}

/// Syzygy operator blocks: rows `(d kappa / dt, d eta / dt)` against columns
/// `(sigma_x, sigma_u)`, in the component order of the invariant series.
pub fn h_blocks(inv: &InvariantSeries) -> Vec<Vec<LinearDifferenceOperator>> {
    let kappa = inv.component(0);
    let eta = inv.component(1);
    let k = move |m: i64, s: &crate::series::Series| s.get(m).unwrap_or(f64::NAN);

    let k1 = kappa.clone();
    let h_eta_x = LinearDifferenceOperator::new()
        .with_term(1, move |n| (k(n, &k1) - 1.0).powi(3))
        .with_const_term(0, -1.0);

    let (k2, e2) = (kappa.clone(), eta.clone());
    let e3 = eta.clone();
    let h_eta_u = LinearDifferenceOperator::new()
        .with_term(0, move |n| 3.0 * k(n, &e3))
        .with_term(1, move |n| -3.0 * k(n, &e2) * (k(n, &k2) - 1.0));

    let h_kappa_x = LinearDifferenceOperator::new();

    let (ka, kb, kc) = (kappa.clone(), kappa.clone(), kappa);
    let h_kappa_u = LinearDifferenceOperator::new()
        .with_term(0, move |n| k(n, &ka) - 1.0)
        .with_term(1, move |n| -k(n, &kb) * (k(n, &kb) - 1.0))
        .with_term(2, move |n| (k(n, &kc) - 1.0) * (k(n + 1, &kc) - 1.0));

    vec![vec![h_kappa_x, h_kappa_u], vec![h_eta_x, h_eta_u]]
}

/// Invariantized velocity `(sigma_x, sigma_u)` at `n`: the frame applied to
/// the pointwise velocity.
pub fn sigma(curve: &DiscreteCurve, velocity: &DiscreteCurve, n: i64) -> Result<Vec<f64>> {
    let d = delta(curve, n)?;
    Ok(vec![
        velocity.value(n, 0)? / d.powi(3),
        velocity.value(n, 1)? / d,
    ])
}

/// Invariant variational density as a window function on `(kappa, eta)` data.
pub fn invariant_lagrangian() -> LagrangianFn {
    LagrangianFn::new(0, 2, |w| w.value(0, 1) * (w.value(0, 0) - 1.0).powf(-1.5))
}

/// The original-variable density `(x_1 - x_0) / [(u_2 - u_1)(u_1 - u_0)]^{3/2}`
/// whose invariantization produces the invariant density above.
pub fn original_lagrangian() -> LagrangianFn {
    LagrangianFn::new(2, 2, |w| {
        let dx = w.value(1, 0) - w.value(0, 0);
        let d0 = w.value(1, 1) - w.value(0, 1);
        let d1 = w.value(2, 1) - w.value(1, 1);
        dx * (d1 * d0).powf(-1.5)
    })
}

/// The three Noether first integrals of a density `l` in original variables,
/// one per group generator, at index `n`. Constant in `n` on extremals.
pub fn first_integrals_original(
    curve: &DiscreteCurve,
    l: &LagrangianFn,
    n: i64,
) -> Result<[f64; 3]> {
    if curve.comps() != 2 || l.comps() != 2 || l.width() != 2 {
        return Err(Error::Parameter(
            "first integrals need an (x, u) density of window width 2".into(),
        ));
    }
    let w1 = curve.window(n - 1, 0, 2)?;
    let w2 = curve.window(n - 2, 0, 2)?;
    let dl_x1 = lagrangian_partial(l, &w1, 1, 0);
    let dl_u1 = lagrangian_partial(l, &w1, 1, 1);
    let dl_u2_m1 = lagrangian_partial(l, &w1, 2, 1);
    let dl_u2_m2 = lagrangian_partial(l, &w2, 2, 1);
    let x0 = curve.value(n, 0)?;
    let u0 = curve.value(n, 1)?;
    let u1 = curve.value(n + 1, 1)?;
    let a1 = 3.0 * x0 * dl_x1 + u0 * dl_u1 + u1 * dl_u2_m1 + u0 * dl_u2_m2;
    let a2 = dl_x1;
    let a3 = dl_u1 + dl_u2_m1 + dl_u2_m2;
    Ok([a1, a2, a3])
}

/// The invariantized first integrals at `n`: the same three expressions
/// evaluated after moving the curve to the frame-normalized position. On
/// extremals these reproduce the conservation-law vector `V`.
pub fn first_integrals_invariantized(
    curve: &DiscreteCurve,
    l: &LagrangianFn,
    n: i64,
) -> Result<[f64; 3]> {
    let g = frame(curve, n)?;
    let moved = super::apply_group(&g, curve)?;
    first_integrals_original(&moved, l, n)
}

/// Parameters of the closed-form extremal family. `k1` controls the
/// two-periodic invariant pattern, `k2` and `k3` the conserved quantities,
/// and `k4 ..= k6` the reconstruction constants.
#[derive(Debug, Clone, Copy)]
pub struct ScalingParams {
    /// Branch parameter; positive and not equal to one.
    pub k1: f64,
    /// Linear-growth coefficient of `eta`.
    pub k2: f64,
    /// Alternating coefficient of `eta`.
    pub k3: f64,
    /// Overall scale of the reconstructed curve; positive.
    pub k4: f64,
    /// Affine offset of `u`.
    pub k5: f64,
    /// Affine offset of `x`.
    pub k6: f64,
}

impl ScalingParams {
    /// Validates the stated parameter domain.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("k1", self.k1), ("k2", self.k2), ("k3", self.k3),
            ("k4", self.k4), ("k5", self.k5), ("k6", self.k6),
        ] {
            if !v.is_finite() {
                return Err(Error::Parameter(format!("{name} must be finite")));
            }
        }
        if self.k1 <= 0.0 || self.k1 == 1.0 {
            return Err(Error::Parameter("k1 must be positive and not 1".into()));
        }
        if self.k4 <= 0.0 {
            return Err(Error::Parameter("k4 must be positive".into()));
        }
        Ok(())
    }

    /// Conserved constants `(c1, c2, c3)` of the family.
    pub fn constants(&self) -> [f64; 3] {
        let c2 = self.k4.powi(-3);
        let c3 = -3.0 * self.k2 / self.k4;
        let c1 = 3.0 * self.k6 - 0.75 * self.k2 * (self.k1 + 1.0 / self.k1 + self.k5);
        [c1, c2, c3]
    }
}

/// One index of the closed-form extremal family: invariants, conservation
/// vector, and original variables.
#[derive(Debug, Clone, Copy)]
pub struct ScalingPoint {
    /// Invariant `kappa` at `n`.
    pub kappa: f64,
    /// Invariant `eta` at `n`.
    pub eta: f64,
    /// Conservation vector `(V1, V2, V3)` at `n`.
    pub v: [f64; 3],
    /// Original variable `x` at `n`.
    pub x: f64,
    /// Original variable `u` at `n`.
    pub u: f64,
}

/// Evaluates the closed-form extremal family at index `n`.
pub fn closed_form(p: &ScalingParams, n: i64) -> Result<ScalingPoint> {
    p.validate()?;
    let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let k1s = p.k1.powi(if sign > 0.0 { 1 } else { -1 });
    let k1o = 1.0 / k1s;
    let nf = n as f64;
    let kappa = 1.0 + k1s * k1s;
    let eta = k1s.powi(3) * (p.k2 * ((nf + 1.0) * k1o - nf * k1s) + p.k3 * sign);
    let v1 = -0.75 * p.k2 * (p.k1 + 1.0 / p.k1 + (p.k1 - 1.0 / p.k1) * (2.0 * nf - 1.0) * sign)
        + 1.5 * p.k3 * sign;
    let v2 = k1o.powi(3);
    let v3 = -3.0 * p.k2 * k1o;
    let u = 0.25
        * p.k4
        * (2.0 * (p.k1 + 1.0 / p.k1) * nf + (p.k1 - 1.0 / p.k1) * sign + p.k5);
    let x = p.k4.powi(3) * (p.k2 * nf * k1s - 0.5 * p.k3 * sign + p.k6);
    Ok(ScalingPoint { kappa, eta, v: [v1, v2, v3], x, u })
}

/// Closed-form extremal as a curve in original variables over `lo ..= hi`.
pub fn closed_form_curve(p: &ScalingParams, lo: i64, hi: i64) -> Result<DiscreteCurve> {
    if lo > hi {
        return Err(Error::Parameter("empty index range".into()));
    }
    let rows = (lo..=hi)
        .map(|n| closed_form(p, n).map(|pt| vec![pt.x, pt.u]))
        .collect::<Result<Vec<_>>>()?;
    DiscreteCurve::from_rows(lo, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{self, ActionKind};
    use crate::ops::euler_operator;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn test_params() -> ScalingParams {
        ScalingParams { k1: 2.0, k2: 1.0, k3: 0.5, k4: 1.0, k5: 0.0, k6: 0.25 }
    }

    fn test_curve() -> DiscreteCurve {
        DiscreteCurve::from_rows(
            0,
            vec![vec![0.0, 0.0], vec![2.0, 1.0], vec![5.0, 3.0], vec![7.0, 4.0]],
        )
        .unwrap()
    }

    #[test]
    fn invariants_of_small_curve() {
        let inv = invariants_from_curve(&test_curve()).unwrap();
        assert!((inv.get(0, 0).unwrap() - 3.0).abs() < 1e-14);
        assert!((inv.get(0, 1).unwrap() - 2.0).abs() < 1e-14);
        assert!((inv.get(1, 0).unwrap() - 1.5).abs() < 1e-14);
        assert!((inv.get(1, 1).unwrap() - 0.375).abs() < 1e-14);
    }

    #[test]
    fn frame_normalizes_its_window() {
        let curve = test_curve();
        for n in 0..=2 {
            let g = frame(&curve, n).unwrap();
            let moved = actions::apply_group(&g, &curve).unwrap();
            assert!(moved.value(n, 0).unwrap().abs() < 1e-13);
            assert!(moved.value(n, 1).unwrap().abs() < 1e-13);
            assert!((moved.value(n + 1, 1).unwrap() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn frame_is_right_equivariant() {
        let curve = test_curve();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let g = GroupElement::Scaling {
                lambda: rng.gen_range(0.3..2.5),
                a: rng.gen_range(-2.0..2.0),
                b: rng.gen_range(-2.0..2.0),
            };
            let moved = actions::apply_group(&g, &curve).unwrap();
            for n in 0..=2 {
                let lhs = frame(&moved, n).unwrap().rep();
                let rhs = frame(&curve, n).unwrap().rep().mul(&g.inverse().rep());
                assert!(lhs.sub(&rhs).max_norm() < 1e-10);
            }
        }
    }

    #[test]
    fn frame_rejects_decreasing_u() {
        let curve = DiscreteCurve::from_rows(
            0,
            vec![vec![0.0, 1.0], vec![0.0, 0.0], vec![0.0, 2.0]],
        )
        .unwrap();
        assert!(matches!(frame(&curve, 0), Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn maurer_cartan_matches_symbolic_form() {
        // Frozen window: kappa = 3, eta = 2 at n = 0 gives the matrix with
        // entries 1/8, -1/4, 1/2, -1/2 on the invariant pattern.
        let curve = test_curve();
        let inv = invariants_from_curve(&curve).unwrap();
        let k0 = symbolic_k0(&inv, 0).unwrap();
        assert!((k0.get(0, 0) - 0.125).abs() < 1e-14);
        assert!((k0.get(0, 2) + 0.25).abs() < 1e-14);
        assert!((k0.get(1, 1) - 0.5).abs() < 1e-14);
        for n in 0..=1 {
            assert!(actions::replacement_check(ActionKind::Scaling, &curve, n).unwrap() < 1e-12);
        }
    }

    #[test]
    fn closed_form_curve_reproduces_closed_form_invariants() {
        let p = test_params();
        let curve = closed_form_curve(&p, -4, 8).unwrap();
        let inv = invariants_from_curve(&curve).unwrap();
        for n in -4..=6 {
            let pt = closed_form(&p, n).unwrap();
            assert!((inv.get(n, 0).unwrap() - pt.kappa).abs() < 1e-11, "kappa at {n}");
            assert!((inv.get(n, 1).unwrap() - pt.eta).abs() < 1e-11, "eta at {n}");
        }
    }

    #[test]
    fn closed_form_satisfies_el_equations() {
        let p = test_params();
        let curve = closed_form_curve(&p, -4, 9).unwrap();
        let inv = invariants_from_curve(&curve).unwrap();
        for n in -2..=7 {
            let r = el_residual(&inv, n).unwrap();
            assert!(r[0].abs() < 1e-10 && r[1].abs() < 1e-10, "n = {n}: {r:?}");
        }
    }

    #[test]
    fn conservation_vector_matches_closed_form() {
        let p = test_params();
        let curve = closed_form_curve(&p, -4, 9).unwrap();
        let inv = invariants_from_curve(&curve).unwrap();
        for n in -2..=7 {
            let v = conservation_vector(&inv, n).unwrap();
            let pt = closed_form(&p, n).unwrap();
            for i in 0..3 {
                assert!((v[i] - pt.v[i]).abs() < 1e-10, "V{} at n = {n}", i + 1);
            }
        }
    }

    #[test]
    fn moving_frame_conservation_law_holds() {
        // V(I) Ad(rho_0) is the same constant vector at every index, and the
        // constants match the parameter formulas.
        let p = test_params();
        let c = p.constants();
        let curve = closed_form_curve(&p, -4, 9).unwrap();
        let inv = invariants_from_curve(&curve).unwrap();
        for n in -2..=7 {
            let v = conservation_vector(&inv, n).unwrap();
            let ad = actions::ad_of_frame(ActionKind::Scaling, &curve, n).unwrap();
            let got = ad.row_mul(&v);
            for i in 0..3 {
                assert!((got[i] - c[i]).abs() < 1e-9, "c{} at n = {n}: {got:?}", i + 1);
            }
        }
    }

    #[test]
    fn el_residual_matches_adjoint_route() {
        // Independent route: variational derivatives of the invariant density
        // by finite differences, pushed through the adjoints of the syzygy
        // blocks. The hand-coded residuals must agree.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let rows: Vec<Vec<f64>> = (0..12)
            .map(|_| vec![rng.gen_range(1.5..4.0), rng.gen_range(-2.0..2.0)])
            .collect();
        let inv = InvariantSeries::new(ActionKind::Scaling, 0, rows.clone()).unwrap();
        let inv_curve = DiscreteCurve::from_rows(0, rows).unwrap();
        let l = invariant_lagrangian();
        let e_eta_series = crate::series::Series::from_fn(0, 11, |m| {
            euler_operator(&l, &inv_curve, m, 1).unwrap()
        })
        .unwrap();
        let e_kappa_series = crate::series::Series::from_fn(0, 11, |m| {
            euler_operator(&l, &inv_curve, m, 0).unwrap()
        })
        .unwrap();
        let blocks = h_blocks(&inv);
        for n in 2..10 {
            let hand = el_residual(&inv, n).unwrap();
            let route_x = blocks[0][0].adjoint_apply(&e_kappa_series, n).unwrap()
                + blocks[1][0].adjoint_apply(&e_eta_series, n).unwrap();
            let route_u = blocks[0][1].adjoint_apply(&e_kappa_series, n).unwrap()
                + blocks[1][1].adjoint_apply(&e_eta_series, n).unwrap();
            assert!((hand[0] - route_x).abs() < 1e-7, "n = {n}");
            assert!((hand[1] - route_u).abs() < 1e-7, "n = {n}");
        }
    }

    #[test]
    fn first_integrals_constant_and_equal_to_conserved_vector() {
        let p = test_params();
        let c = p.constants();
        let curve = closed_form_curve(&p, -4, 9).unwrap();
        let l = original_lagrangian();
        for n in -1..=6 {
            let a = first_integrals_original(&curve, &l, n).unwrap();
            for i in 0..3 {
                assert!((a[i] - c[i]).abs() < 1e-6, "integral {} at n = {n}: {a:?}", i + 1);
            }
        }
    }

    #[test]
    fn invariantized_first_integrals_reproduce_conservation_vector() {
        let p = test_params();
        let curve = closed_form_curve(&p, -4, 9).unwrap();
        let inv = invariants_from_curve(&curve).unwrap();
        let l = original_lagrangian();
        for n in -1..=6 {
            let a = first_integrals_invariantized(&curve, &l, n).unwrap();
            let v = conservation_vector(&inv, n).unwrap();
            for i in 0..3 {
                assert!((a[i] - v[i]).abs() < 1e-6, "component {} at n = {n}: {a:?} vs {v:?}", i + 1);
            }
        }
    }

    #[test]
    fn syzygy_residual_second_order_in_path_step() {
        let p = test_params();
        let base = closed_form_curve(&p, -4, 9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let dir = DiscreteCurve::from_rows(
            -4,
            (0..base.len())
                .map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-0.3..0.3)])
                .collect(),
        )
        .unwrap();
        let quad = DiscreteCurve::from_rows(
            -4,
            (0..base.len())
                .map(|_| vec![rng.gen_range(-0.5..0.5), rng.gen_range(-0.2..0.2)])
                .collect(),
        )
        .unwrap();
        let path = actions::CurvePath::new(vec![base, dir, quad]).unwrap();
        for n in -2..=4 {
            let r_coarse = actions::syzygy_residual(ActionKind::Scaling, &path, n, 0.1, 1e-2).unwrap();
            let r_fine = actions::syzygy_residual(ActionKind::Scaling, &path, n, 0.1, 1e-3).unwrap();
            for i in 0..2 {
                if r_coarse[i] > 1e-9 {
                    assert!(r_fine[i] < 0.05 * r_coarse[i], "n = {n}, i = {i}");
                }
                assert!(r_fine[i] < 2e-4, "n = {n}, i = {i}: {r_fine:?}");
            }
        }
    }

    #[test]
    fn branch_violation_is_reported() {
        let rows = vec![vec![3.0, 1.0], vec![1.0, 1.0]];
        let inv = InvariantSeries::new(ActionKind::Scaling, 0, rows).unwrap();
        assert!(matches!(e_eta(&inv, 1), Err(Error::Branch { n: 1, .. })));
    }
}
