//! Special Euclidean action on planar polylines `(x, u)`: rotation plus
//! translation. Generating invariants at `n` are the chord length
//! `l = |z_{n+1} - z_n|` and the turning angle `h_theta` between consecutive
//! chords; the discrete curvature is `kappabar = -sin(h_theta) / l`.
//!
//! The chord direction angle obeys `cos theta = dx / l`,
//! `sin theta = -du / l`, so the frame rotates chord `n` onto the positive
//! x-axis and moves point `n` to the origin. The variational model is the
//! invariant density `l^{-1} sin^2(h_theta)`.

use crate::actions::{GroupElement, InvariantSeries};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::ops::{LagrangianFn, LinearDifferenceOperator};
use crate::series::DiscreteCurve;

use super::ActionKind;

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a.rem_euclid(2.0 * std::f64::consts::PI);
    if w > std::f64::consts::PI {
        w -= 2.0 * std::f64::consts::PI;
    }
    w
}

fn chord(curve: &DiscreteCurve, n: i64) -> Result<(f64, f64, f64)> {
    let dx = curve.value(n + 1, 0)? - curve.value(n, 0)?;
    let du = curve.value(n + 1, 1)? - curve.value(n, 1)?;
    let l = dx.hypot(du);
    if l == 0.0 {
        return Err(Error::Inadmissible {
            action: "elastica",
            n,
            reason: "coincident consecutive points".into(),
        });
    }
    Ok((dx, du, l))
}

/// Direction angle of chord `n`.
pub fn chord_angle(curve: &DiscreteCurve, n: i64) -> Result<f64> {
    let (dx, du, _) = chord(curve, n)?;
    Ok((-du).atan2(dx))
}

/// Generating invariants `(l, h_theta)` at every index with two forward
/// neighbours.
pub fn invariants_from_curve(curve: &DiscreteCurve) -> Result<InvariantSeries> {
    if curve.comps() != 2 {
        return Err(Error::Parameter("elastica curves carry (x, u) points".into()));
    }
    if curve.len() < 3 {
        return Err(Error::WindowTooShort {
            n: curve.start(),
            lo: curve.start(),
            hi: curve.start() + 2,
        });
    }
    let mut rows = Vec::new();
    for n in curve.start()..=curve.end() - 2 {
        let (.., l) = chord(curve, n)?;
        let h = wrap_angle(chord_angle(curve, n + 1)? - chord_angle(curve, n)?);
        rows.push(vec![l, h]);
    }
    InvariantSeries::new(ActionKind::Elastica, curve.start(), rows)
}

/// Discrete curvature `-sin(h_theta) / l` at `n`.
pub fn kappabar(inv: &InvariantSeries, n: i64) -> Result<f64> {
    Ok(-inv.get(n, 1)?.sin() / inv.get(n, 0)?)
}

/// Frame at `n`: the rigid motion taking point `n` to the origin and chord
/// `n` onto the positive x-axis.
pub fn frame(curve: &DiscreteCurve, n: i64) -> Result<GroupElement> {
    let theta = chord_angle(curve, n)?;
    let (s, c) = theta.sin_cos();
    let x0 = curve.value(n, 0)?;
    let u0 = curve.value(n, 1)?;
    Ok(GroupElement::Elastica {
        theta,
        a: -(c * x0 - s * u0),
        b: -(s * x0 + c * u0),
    })
}

/// Variational derivative of the invariant density with respect to `l`.
pub fn e_l(inv: &InvariantSeries, n: i64) -> Result<f64> {
    let l = inv.get(n, 0)?;
    let h = inv.get(n, 1)?;
    Ok(-h.sin().powi(2) / (l * l))
}

/// Variational derivative of the invariant density with respect to `h_theta`.
pub fn e_h(inv: &InvariantSeries, n: i64) -> Result<f64> {
    Ok((2.0 * inv.get(n, 1)?).sin() / inv.get(n, 0)?)
}

/// Residuals of the two invariantized Euler-Lagrange equations at `n`
/// (stencil `n-2 ..= n`).
pub fn el_residual(inv: &InvariantSeries, n: i64) -> Result<Vec<f64>> {
    inv.require(n - 2, n)?;
    let l = |m: i64| inv.get(m, 0);
    let h = |m: i64| inv.get(m, 1);
    let dh = e_h(inv, n - 2)? - e_h(inv, n - 1)?;
    let r1 = h(n - 1)?.cos() * e_l(inv, n - 1)? - e_l(inv, n)?
        + h(n - 1)?.sin() / l(n - 1)? * dh;
    let r2 = h(n - 1)?.sin() * e_l(inv, n - 1)?
        + (e_h(inv, n - 1)? - e_h(inv, n)?) / l(n)?
        - h(n - 1)?.cos() / l(n - 1)? * dh;
    Ok(vec![r1, r2])
}

/// Conservation-law vector `V = (V1, V2, V3)` at `n` (stencil `n-2 ..= n-1`).
pub fn conservation_vector(inv: &InvariantSeries, n: i64) -> Result<Vec<f64>> {
    inv.require(n - 2, n - 1)?;
    let h1 = inv.get(n - 1, 1)?;
    let l1 = inv.get(n - 1, 0)?;
    let dh = e_h(inv, n - 2)? - e_h(inv, n - 1)?;
    Ok(vec![
        h1.cos() * e_l(inv, n - 1)? + h1.sin() / l1 * dh,
        h1.sin() * e_l(inv, n - 1)? - h1.cos() / l1 * dh,
        -e_h(inv, n - 1)?,
    ])
}

/// Maurer-Cartan matrix in the faithful representation, written in the
/// invariants at `n`.
pub fn symbolic_k0(inv: &InvariantSeries, n: i64) -> Result<SquareMatrix> {
    let l = inv.get(n, 0)?;
    let (s, c) = inv.get(n, 1)?.sin_cos();
    SquareMatrix::new(
        3,
        vec![
            c, -s, -l * c,
            s, c, -l * s,
            0.0, 0.0, 1.0,
        ],
    )
}

/// Syzygy operator blocks: rows `(d l / dt, d h_theta / dt)` against columns
/// `(sigma_x, sigma_u)`.
pub fn h_blocks(inv: &InvariantSeries) -> Vec<Vec<LinearDifferenceOperator>> {
    let l = inv.component(0);
    let h = inv.component(1);
    let k = move |m: i64, s: &crate::series::Series| s.get(m).unwrap_or(f64::NAN);

    let ha = h.clone();
    let h_l_x = LinearDifferenceOperator::new()
        .with_term(1, move |n| k(n, &ha).cos())
        .with_const_term(0, -1.0);
    let hb = h.clone();
    let h_l_u = LinearDifferenceOperator::new().with_term(1, move |n| k(n, &hb).sin());

    let (hc, lc) = (h.clone(), l.clone());
    let (hd, ld) = (h.clone(), l.clone());
    let h_h_x = LinearDifferenceOperator::new()
        .with_term(2, move |n| k(n + 1, &hc).sin() / k(n + 1, &lc))
        .with_term(1, move |n| -k(n, &hd).sin() / k(n, &ld));
    let (he, le) = (h.clone(), l.clone());
    let (hf, lf) = (h, l.clone());
    let lg = l;
    let h_h_u = LinearDifferenceOperator::new()
        .with_term(2, move |n| -k(n + 1, &he).cos() / k(n + 1, &le))
        .with_term(1, move |n| 1.0 / k(n + 1, &lf) + k(n, &hf).cos() / k(n, &lf))
        .with_term(0, move |n| -1.0 / k(n, &lg));

    vec![vec![h_l_x, h_l_u], vec![h_h_x, h_h_u]]
}

/// Invariantized velocity `(sigma_x, sigma_u)` at `n`: the frame rotation
/// applied to the pointwise velocity.
pub fn sigma(curve: &DiscreteCurve, velocity: &DiscreteCurve, n: i64) -> Result<Vec<f64>> {
    let theta = chord_angle(curve, n)?;
    let (s, c) = theta.sin_cos();
    let vx = velocity.value(n, 0)?;
    let vu = velocity.value(n, 1)?;
    Ok(vec![c * vx - s * vu, s * vx + c * vu])
}

/// Invariant variational density on `(l, h_theta)` data.
pub fn invariant_lagrangian() -> LagrangianFn {
    LagrangianFn::new(0, 2, |w| w.value(0, 1).sin().powi(2) / w.value(0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{self, ActionKind};
    use crate::ops::euler_operator;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    /// Three points with chord lengths one and turning angle -pi/4.
    fn bent_curve() -> DiscreteCurve {
        DiscreteCurve::from_rows(
            0,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![1.0 + SQRT_2 / 2.0, SQRT_2 / 2.0],
            ],
        )
        .unwrap()
    }

    fn random_curve(seed: u64, len: usize) -> DiscreteCurve {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = 0.0;
        let mut u = 0.0;
        let mut rows = Vec::new();
        for _ in 0..len {
            rows.push(vec![x, u]);
            let ang: f64 = rng.gen_range(-0.9..0.9);
            let step: f64 = rng.gen_range(0.5..1.5);
            x += step * ang.cos();
            u += step * ang.sin();
        }
        DiscreteCurve::from_rows(0, rows).unwrap()
    }

    #[test]
    fn invariants_of_bent_curve() {
        let inv = invariants_from_curve(&bent_curve()).unwrap();
        assert!((inv.get(0, 0).unwrap() - 1.0).abs() < 1e-14);
        assert!((inv.get(0, 1).unwrap() + FRAC_PI_4).abs() < 1e-14);
        assert!((kappabar(&inv, 0).unwrap() - SQRT_2 / 2.0).abs() < 1e-14);
    }

    #[test]
    fn frame_normalizes_its_window() {
        let curve = random_curve(3, 8);
        for n in 0..=6 {
            let g = frame(&curve, n).unwrap();
            let moved = actions::apply_group(&g, &curve).unwrap();
            let l = chord(&curve, n).unwrap().2;
            assert!(moved.value(n, 0).unwrap().abs() < 1e-12);
            assert!(moved.value(n, 1).unwrap().abs() < 1e-12);
            assert!((moved.value(n + 1, 0).unwrap() - l).abs() < 1e-12);
            assert!(moved.value(n + 1, 1).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn frame_is_right_equivariant() {
        let curve = random_curve(5, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let g = GroupElement::Elastica {
                theta: rng.gen_range(-3.0..3.0),
                a: rng.gen_range(-2.0..2.0),
                b: rng.gen_range(-2.0..2.0),
            };
            let moved = actions::apply_group(&g, &curve).unwrap();
            for n in 0..=5 {
                let lhs = frame(&moved, n).unwrap().rep();
                let rhs = frame(&curve, n).unwrap().rep().mul(&g.inverse().rep());
                assert!(lhs.sub(&rhs).max_norm() < 1e-10, "n = {n}");
            }
        }
    }

    #[test]
    fn invariants_are_group_invariant() {
        let curve = random_curve(9, 8);
        let inv = invariants_from_curve(&curve).unwrap();
        let g = GroupElement::Elastica { theta: 1.1, a: -0.4, b: 2.2 };
        let moved = actions::apply_group(&g, &curve).unwrap();
        let inv2 = invariants_from_curve(&moved).unwrap();
        for n in 0..=5 {
            for comp in 0..2 {
                let a = inv.get(n, comp).unwrap();
                let b = inv2.get(n, comp).unwrap();
                assert!((a - b).abs() < 1e-11, "n = {n}, comp = {comp}");
            }
        }
    }

    #[test]
    fn maurer_cartan_matches_symbolic_form() {
        let inv = invariants_from_curve(&bent_curve()).unwrap();
        let k0 = symbolic_k0(&inv, 0).unwrap();
        let r = SQRT_2 / 2.0;
        let expect = [
            [r, r, -r],
            [-r, r, r],
            [0.0, 0.0, 1.0],
        ];
        for row in 0..3 {
            for col in 0..3 {
                assert!((k0.get(row, col) - expect[row][col]).abs() < 1e-13, "({row},{col})");
            }
        }
        let curve = random_curve(13, 9);
        for n in 0..=6 {
            assert!(
                actions::replacement_check(ActionKind::Elastica, &curve, n).unwrap() < 1e-11,
                "n = {n}"
            );
        }
    }

    #[test]
    fn el_residual_matches_adjoint_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let rows: Vec<Vec<f64>> = (0..12)
            .map(|_| vec![rng.gen_range(0.5..2.0), rng.gen_range(-1.2..1.2)])
            .collect();
        let inv = InvariantSeries::new(ActionKind::Elastica, 0, rows.clone()).unwrap();
        let inv_curve = DiscreteCurve::from_rows(0, rows).unwrap();
        let l = invariant_lagrangian();
        let e = |comp: usize| {
            crate::series::Series::from_fn(0, 11, |m| {
                euler_operator(&l, &inv_curve, m, comp).unwrap()
            })
            .unwrap()
        };
        let (e_l_series, e_h_series) = (e(0), e(1));
        let blocks = h_blocks(&inv);
        for n in 2..10 {
            let hand = el_residual(&inv, n).unwrap();
            let route = |col: usize| {
                blocks[0][col].adjoint_apply(&e_l_series, n).unwrap()
                    + blocks[1][col].adjoint_apply(&e_h_series, n).unwrap()
            };
            assert!((hand[0] - route(0)).abs() < 1e-6, "n = {n}");
            assert!((hand[1] - route(1)).abs() < 1e-6, "n = {n}");
        }
    }

    #[test]
    fn el_residual_relates_to_conservation_vector() {
        // r1 = V1 - E_l and r2 = V2 + (E_h(n-1) - E_h(n)) / l(n) identically.
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let rows: Vec<Vec<f64>> = (0..10)
            .map(|_| vec![rng.gen_range(0.5..2.0), rng.gen_range(-1.2..1.2)])
            .collect();
        let inv = InvariantSeries::new(ActionKind::Elastica, 0, rows).unwrap();
        for n in 2..9 {
            let r = el_residual(&inv, n).unwrap();
            let v = conservation_vector(&inv, n).unwrap();
            let a = v[0] - e_l(&inv, n).unwrap();
            let b = v[1] + (e_h(&inv, n - 1).unwrap() - e_h(&inv, n).unwrap())
                / inv.get(n, 0).unwrap();
            assert!((r[0] - a).abs() < 1e-12 && (r[1] - b).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn syzygy_residual_second_order_in_path_step() {
        let base = random_curve(25, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let rand_curve = |rng: &mut ChaCha8Rng, scale: f64| {
            DiscreteCurve::from_rows(
                0,
                (0..11)
                    .map(|_| vec![rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)])
                    .collect(),
            )
            .unwrap()
        };
        let dir = rand_curve(&mut rng, 0.3);
        let quad = rand_curve(&mut rng, 0.2);
        let path = actions::CurvePath::new(vec![base, dir, quad]).unwrap();
        for n in 1..=6 {
            let r_coarse =
                actions::syzygy_residual(ActionKind::Elastica, &path, n, 0.1, 1e-2).unwrap();
            let r_fine =
                actions::syzygy_residual(ActionKind::Elastica, &path, n, 0.1, 1e-3).unwrap();
            for i in 0..2 {
                assert!(r_fine[i] < 1e-5, "n = {n}, i = {i}: {r_fine:?}");
                if r_coarse[i] > 1e-9 {
                    assert!(r_fine[i] < 0.05 * r_coarse[i], "n = {n}, i = {i}");
                }
            }
        }
    }

    #[test]
    fn coincident_points_are_rejected() {
        let curve = DiscreteCurve::from_rows(
            0,
            vec![vec![0.0, 0.0], vec![0.0, 0.0], vec![1.0, 0.0]],
        )
        .unwrap();
        assert!(matches!(
            invariants_from_curve(&curve),
            Err(Error::Inadmissible { action: "elastica", .. })
        ));
    }
}
