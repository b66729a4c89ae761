//! Difference-operator machinery: the discrete Euler operator, linear
//! difference operators with their adjoints and summation-by-parts boundary
//! terms, Maurer-Cartan products, and finite-difference syzygy checks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{mat_inverse, SquareMatrix};
use crate::series::{DiscreteCurve, Series, Window};

/// Coefficient of one operator term, evaluated lazily per index.
pub type Coeff = Arc<dyn Fn(i64) -> f64 + Send + Sync>;

/// Linear difference operator `H = sum_j c_j(n) S_j` with distinct offsets.
///
/// Coefficients are closures so they can read solution-dependent invariant
/// series that are unknown when the operator is assembled.
#[derive(Clone)]
pub struct LinearDifferenceOperator {
    terms: Vec<(i64, Coeff)>,
}

impl std::fmt::Debug for LinearDifferenceOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let offsets: Vec<i64> = self.terms.iter().map(|t| t.0).collect();
        f.debug_struct("LinearDifferenceOperator")
            .field("offsets", &offsets)
            .finish()
    }
}

impl LinearDifferenceOperator {
    /// Empty operator (the zero map).
    pub fn new() -> Self {
        Self { terms: Vec::new() }
    }

    /// Adds a term `c(n) S_j`; panics on duplicate offsets.
    pub fn with_term(mut self, offset: i64, coeff: impl Fn(i64) -> f64 + Send + Sync + 'static) -> Self {
        assert!(
            self.terms.iter().all(|t| t.0 != offset),
            "duplicate operator offset {offset}"
        );
        self.terms.push((offset, Arc::new(coeff)));
        self
    }

    /// Adds a constant-coefficient term `c S_j`.
    pub fn with_const_term(self, offset: i64, c: f64) -> Self {
        self.with_term(offset, move |_| c)
    }

    /// The identity operator.
    pub fn id() -> Self {
        Self::new().with_const_term(0, 1.0)
    }

    /// Term offsets in insertion order.
    pub fn offsets(&self) -> Vec<i64> {
        self.terms.iter().map(|t| t.0).collect()
    }

    /// Applies the operator: `(H f)(n) = sum_j c_j(n) f(n+j)`.
    pub fn apply(&self, f: &Series, n: i64) -> Result<f64> {
        let mut out = 0.0;
        for (j, c) in &self.terms {
            out += c(n) * f.get(n + j)?;
        }
        Ok(out)
    }

    /// Applies the adjoint: `(H* f)(n) = sum_j c_j(n-j) f(n-j)`.
    pub fn adjoint_apply(&self, f: &Series, n: i64) -> Result<f64> {
        let mut out = 0.0;
        for (j, c) in &self.terms {
            out += c(n - j) * f.get(n - j)?;
        }
        Ok(out)
    }

    /// The adjoint as an operator in standard form, for double-application
    /// checks.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::new();
        for (j, c) in &self.terms {
            let c = Arc::clone(c);
            let jp = -j;
            out = out.with_term(jp, move |n| c(n + jp));
        }
        out
    }

    /// Boundary term `A_H(F, G)` of the summation-by-parts identity
    /// `F (H G) - (H* F) G = (S - id) A_H(F, G)`, assembled term by term from
    /// the telescoping of each shift.
    pub fn boundary_term(&self, f: &Series, g: &Series, n: i64) -> Result<f64> {
        let mut a = 0.0;
        for (j, c) in &self.terms {
            match j.cmp(&0) {
                std::cmp::Ordering::Greater => {
                    for m in 1..=*j {
                        a += c(n - m) * f.get(n - m)? * g.get(n - m + j)?;
                    }
                }
                std::cmp::Ordering::Less => {
                    for m in 0..-j {
                        a -= c(n + m) * f.get(n + m)? * g.get(n + m + j)?;
                    }
                }
                std::cmp::Ordering::Equal => {}
            }
        }
        Ok(a)
    }
}

impl Default for LinearDifferenceOperator {
    fn default() -> Self {
        Self::new()
    }
}

/// Maximum over `lo..=hi` of the summation-by-parts defect
/// `|F (H G) - (H* F) G - (S - id) A_H|`.
pub fn summation_by_parts_residual(
    h: &LinearDifferenceOperator,
    f: &Series,
    g: &Series,
    lo: i64,
    hi: i64,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in lo..=hi {
        let lhs = f.get(n)? * h.apply(g, n)? - h.adjoint_apply(f, n)? * g.get(n)?;
        let jump = h.boundary_term(f, g, n + 1)? - h.boundary_term(f, g, n)?;
        worst = worst.max((lhs - jump).abs());
    }
    Ok(worst)
}

/// Action density evaluated on fixed-width windows `0..=width`.
#[derive(Clone)]
pub struct LagrangianFn {
    width: i64,
    comps: usize,
    eval: Arc<dyn Fn(&Window) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for LagrangianFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LagrangianFn")
            .field("width", &self.width)
            .field("comps", &self.comps)
            .finish()
    }
}

impl LagrangianFn {
    /// Wraps an evaluator reading offsets `0..=width` of a `comps`-component
    /// curve.
    pub fn new(
        width: i64,
        comps: usize,
        eval: impl Fn(&Window) -> f64 + Send + Sync + 'static,
    ) -> Self {
        assert!(width >= 0);
        Self { width, comps, eval: Arc::new(eval) }
    }

    /// Window width `J` (offsets `0..=J`).
    pub fn width(&self) -> i64 {
        self.width
    }

    /// Components per point the evaluator expects.
    pub fn comps(&self) -> usize {
        self.comps
    }

    /// Evaluates the density on one window.
    pub fn eval(&self, w: &Window) -> f64 {
        (self.eval)(w)
    }
}

/// Finite-difference step for black-box partials; sized for the five-point
/// stencil, which balances truncation against rounding near this value.
fn fd_step(value: f64) -> f64 {
    1e-5 * value.abs().max(1.0)
}

/// Five-point central first derivative of `phi` at `v0`, fourth-order
/// accurate; the extra order keeps partials usable where the conservation
/// expressions multiply them by large coordinates.
fn fd_derivative<E>(phi: impl Fn(f64) -> std::result::Result<f64, E>, v0: f64)
    -> std::result::Result<f64, E> {
    let h = fd_step(v0);
    let f = |v: f64| phi(v);
    Ok((f(v0 - 2.0 * h)? - 8.0 * f(v0 - h)? + 8.0 * f(v0 + h)? - f(v0 + 2.0 * h)?) / (12.0 * h))
}

/// Discrete Euler operator `E_alpha(L)(n) = sum_j S_{-j} dL/du^alpha_j`, with
/// partials taken by central finite differences.
///
/// Every summand differentiates with respect to the same curve value
/// `u^alpha(n)`, so the sum is one derivative of `phi(v) = sum_j L(window at
/// n-j with u^alpha(n) = v)`.
pub fn euler_operator(
    l: &LagrangianFn,
    curve: &DiscreteCurve,
    n: i64,
    comp: usize,
) -> Result<f64> {
    let j = l.width();
    if n - j < curve.start() || n + j > curve.end() {
        return Err(Error::WindowTooShort { n, lo: n - j, hi: n + j });
    }
    if comp >= l.comps() || curve.comps() != l.comps() {
        return Err(Error::Parameter(format!(
            "component {comp} invalid for {}-component Lagrangian",
            l.comps()
        )));
    }
    let v0 = curve.value(n, comp)?;
    let phi = |v: f64| -> Result<f64> {
        let mut s = 0.0;
        for shift in 0..=j {
            let w = curve.window(n - shift, 0, j)?.with_value(shift, comp, v);
            s += l.eval(&w);
        }
        Ok(s)
    };
    fd_derivative(phi, v0)
}

/// Partial derivative `dL/du^alpha_j` of a window density by central finite
/// differences; used by the first-integral formulas.
pub fn lagrangian_partial(l: &LagrangianFn, w: &Window, j: i64, comp: usize) -> f64 {
    let v0 = w.value(j, comp);
    let phi = |v: f64| -> std::result::Result<f64, std::convert::Infallible> {
        Ok(l.eval(&w.with_value(j, comp, v)))
    };
    fd_derivative(phi, v0).expect("density evaluation cannot fail")
}

/// Right Maurer-Cartan group element `K = rho_{n+1} rho_n^{-1}`.
pub fn maurer_cartan(rho_n: &SquareMatrix, rho_n1: &SquareMatrix) -> Result<SquareMatrix> {
    Ok(rho_n1.mul(&mat_inverse(rho_n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_series(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Series {
        Series::from_fn(lo, hi, |_| rng.gen_range(-2.0..2.0)).unwrap()
    }

    #[test]
    fn identity_operator_adjoint_is_identity() {
        let h = LinearDifferenceOperator::id();
        let f = Series::new(0, vec![3.0, -1.0, 4.0]).unwrap();
        assert_eq!(h.adjoint_apply(&f, 1).unwrap(), -1.0);
    }

    #[test]
    fn shift_adjoint_is_back_shift() {
        let h = LinearDifferenceOperator::new().with_const_term(1, 1.0);
        let f = Series::new(0, vec![0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        // Adjoint of S evaluates F at n - 1.
        assert_eq!(h.adjoint_apply(&f, 3).unwrap(), 1.0);
        assert_eq!(h.adjoint_apply(&f, 2).unwrap(), 0.0);
    }

    #[test]
    fn adjoint_involution_on_variable_coefficients() {
        let h = LinearDifferenceOperator::new()
            .with_term(-2, |n| (n as f64) * 0.3 + 1.0)
            .with_term(0, |n| (n as f64).sin())
            .with_term(1, |n| 2.0 - 0.1 * n as f64);
        let hstar_star = h.adjoint().adjoint();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_series(&mut rng, -10, 10);
        for n in -5..=5 {
            let a = h.apply(&f, n).unwrap();
            let b = hstar_star.apply(&f, n).unwrap();
            assert!((a - b).abs() < 1e-12, "n = {n}: {a} vs {b}");
        }
    }

    #[test]
    fn sbp_residual_zero_for_identity() {
        let h = LinearDifferenceOperator::id();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = random_series(&mut rng, 0, 20);
        let g = random_series(&mut rng, 0, 20);
        assert_eq!(summation_by_parts_residual(&h, &f, &g, 2, 18).unwrap(), 0.0);
    }

    #[test]
    fn sbp_residual_for_pure_shift() {
        let h = LinearDifferenceOperator::new().with_const_term(1, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_series(&mut rng, 0, 60);
        let g = random_series(&mut rng, 0, 60);
        assert!(summation_by_parts_residual(&h, &f, &g, 3, 55).unwrap() < 1e-13);
    }

    #[test]
    fn sbp_residual_three_term_variable_coefficients() {
        // Shape of the three-term operators the catalogue produces: offsets
        // 0, 1, 2 with solution-dependent coefficients.
        let h = LinearDifferenceOperator::new()
            .with_term(0, |n| 1.0 + 0.01 * n as f64)
            .with_term(1, |n| -2.0 + (0.2 * n as f64).cos())
            .with_term(2, |n| 0.5 * (0.1 * n as f64).sin() + 1.5);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = random_series(&mut rng, -30, 30);
        let g = random_series(&mut rng, -30, 30);
        assert!(summation_by_parts_residual(&h, &f, &g, -20, 20).unwrap() < 1e-12);
    }

    #[test]
    fn sbp_residual_negative_shifts() {
        let h = LinearDifferenceOperator::new()
            .with_term(-2, |n| 1.0 + 0.05 * n as f64)
            .with_term(-1, |_| -0.7)
            .with_term(3, |n| (0.3 * n as f64).sin());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = random_series(&mut rng, -40, 40);
        let g = random_series(&mut rng, -40, 40);
        assert!(summation_by_parts_residual(&h, &f, &g, -25, 25).unwrap() < 1e-12);
    }

    proptest! {
        /// Summing the SBP identity over a range telescopes exactly: the
        /// interior sum of F(HG) - (H*F)G collapses to boundary terms.
        #[test]
        fn sbp_telescoping_sum(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_series(&mut rng, -15, 15);
            let g = random_series(&mut rng, -15, 15);
            let h = LinearDifferenceOperator::new()
                .with_term(1, |n| 1.0 + 0.1 * n as f64)
                .with_term(-1, |n| 0.5 - 0.02 * n as f64);
            let mut total = 0.0;
            for n in -8..=8 {
                total += f.get(n).unwrap() * h.apply(&g, n).unwrap()
                    - h.adjoint_apply(&f, n).unwrap() * g.get(n).unwrap();
            }
            let boundary = h.boundary_term(&f, &g, 9).unwrap()
                - h.boundary_term(&f, &g, -8).unwrap();
            prop_assert!((total - boundary).abs() < 1e-10);
        }
    }

    #[test]
    fn euler_operator_linear_density_is_one() {
        let l = LagrangianFn::new(0, 1, |w| w.value(0, 0));
        let curve = DiscreteCurve::from_rows(0, (0..7).map(|i| vec![i as f64 * 1.3]).collect())
            .unwrap();
        for n in 0..7 {
            assert!((euler_operator(&l, &curve, n, 0).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn euler_operator_dirichlet_on_line_is_zero() {
        let l = LagrangianFn::new(1, 1, |w| {
            let d = w.value(1, 0) - w.value(0, 0);
            d * d
        });
        let curve =
            DiscreteCurve::from_rows(0, (0..9).map(|i| vec![i as f64]).collect()).unwrap();
        for n in 1..8 {
            assert!(euler_operator(&l, &curve, n, 0).unwrap().abs() < 1e-8);
        }
    }

    #[test]
    fn euler_operator_matches_hand_derivative() {
        // L = u_0 u_1 gives E_u = u_1 + u_{-1}.
        let l = LagrangianFn::new(1, 1, |w| w.value(0, 0) * w.value(1, 0));
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![(i as f64 * 0.7).sin() + 2.0]).collect();
        let curve = DiscreteCurve::from_rows(0, rows.clone()).unwrap();
        for n in 1..9i64 {
            let expect = rows[(n + 1) as usize][0] + rows[(n - 1) as usize][0];
            let got = euler_operator(&l, &curve, n, 0).unwrap();
            assert!((got - expect).abs() < 1e-8, "n = {n}");
        }
    }

    #[test]
    fn euler_operator_reports_required_range() {
        let l = LagrangianFn::new(2, 1, |w| w.value(2, 0));
        let curve = DiscreteCurve::from_rows(0, (0..5).map(|i| vec![i as f64]).collect()).unwrap();
        match euler_operator(&l, &curve, 1, 0) {
            Err(Error::WindowTooShort { lo, hi, .. }) => {
                assert_eq!((lo, hi), (-1, 3));
            }
            other => panic!("expected window error, got {other:?}"),
        }
    }

    #[test]
    fn maurer_cartan_identity_when_frames_equal() {
        let rho = SquareMatrix::new(3, vec![2.0, 0.0, 1.0, 0.0, 0.5, -1.0, 0.0, 0.0, 1.0]).unwrap();
        let k = maurer_cartan(&rho, &rho).unwrap();
        assert!(k.sub(&SquareMatrix::identity(3)).max_norm() < 1e-13);
    }
}
