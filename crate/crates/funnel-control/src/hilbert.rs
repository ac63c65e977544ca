//! Discrete representation of real Hilbert-space elements on [0, 1].
//!
//! All functions live on a uniform grid with trapezoid quadrature. Three
//! inner products are provided: plain L²(0,1), the componentwise sum on
//! L²(0,1) × L²(0,1), and a graph ("energy") product
//! ⟨u, v⟩ = ⟨u₁′, v₁′⟩ + ⟨u₂, v₂⟩ for wave-type state spaces. The derivative
//! part of the graph product is evaluated with cell-midpoint differences,
//! which keeps the discrete integration-by-parts identity against the
//! three-point Laplacian exact to roundoff.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Uniform quadrature grid on [0, 1], endpoints included.
#[derive(Debug)]
pub struct Grid {
    m: usize,
    h: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Grid {
    /// Uniform grid with `m` nodes and trapezoid weights. Panics if `m < 3`.
    pub fn uniform(m: usize) -> Arc<Grid> {
        assert!(m >= 3, "grid needs at least 3 nodes, got {m}");
        let h = 1.0 / (m as f64 - 1.0);
        let nodes = (0..m).map(|i| i as f64 * h).collect();
        let mut weights = vec![h; m];
        weights[0] = 0.5 * h;
        weights[m - 1] = 0.5 * h;
        Arc::new(Grid {
            m,
            h,
            nodes,
            weights,
        })
    }

    pub fn node_count(&self) -> usize {
        self.m
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

pub(crate) fn check_same_grid(a: &Grid, b: &Grid) -> Result<()> {
    if a.m != b.m {
        return Err(Error::GridMismatch {
            left: a.m,
            right: b.m,
        });
    }
    Ok(())
}

/// A sampled element of L²(0,1).
#[derive(Clone, Debug)]
pub struct GridFunction {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        GridFunction {
            grid: Arc::clone(grid),
            values: vec![0.0; grid.node_count()],
        }
    }

    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().iter().map(|&z| f(z)).collect();
        GridFunction {
            grid: Arc::clone(grid),
            values,
        }
    }

    pub fn from_values(grid: &Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::InvalidParam(format!(
                "value vector has {} entries for a grid of {} nodes",
                values.len(),
                grid.node_count()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParam(
                "grid function values must be finite".into(),
            ));
        }
        Ok(GridFunction {
            grid: Arc::clone(grid),
            values,
        })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn scale_mut(&mut self, a: f64) {
        for v in &mut self.values {
            *v *= a;
        }
    }

    /// self += a * other
    pub fn axpy(&mut self, a: f64, other: &GridFunction) {
        debug_assert_eq!(self.values.len(), other.values.len());
        for (v, o) in self.values.iter_mut().zip(&other.values) {
            *v += a * o;
        }
    }

    pub fn norm_l2(&self) -> f64 {
        inner_l2_uc(self, self).sqrt()
    }
}

/// A pair of grid functions on one shared grid (product state space).
#[derive(Clone, Debug)]
pub struct ProductState {
    pub first: GridFunction,
    pub second: GridFunction,
}

impl ProductState {
    pub fn new(first: GridFunction, second: GridFunction) -> Result<Self> {
        check_same_grid(first.grid(), second.grid())?;
        Ok(ProductState { first, second })
    }

    pub fn zeros(grid: &Arc<Grid>) -> Self {
        ProductState {
            first: GridFunction::zeros(grid),
            second: GridFunction::zeros(grid),
        }
    }

    pub fn from_fns(
        grid: &Arc<Grid>,
        f1: impl Fn(f64) -> f64,
        f2: impl Fn(f64) -> f64,
    ) -> Self {
        ProductState {
            first: GridFunction::from_fn(grid, f1),
            second: GridFunction::from_fn(grid, f2),
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.first.grid()
    }

    pub fn scale_mut(&mut self, a: f64) {
        self.first.scale_mut(a);
        self.second.scale_mut(a);
    }

    /// self += a * other
    pub fn axpy(&mut self, a: f64, other: &ProductState) {
        self.first.axpy(a, &other.first);
        self.second.axpy(a, &other.second);
    }

    pub fn is_finite(&self) -> bool {
        self.first.values().iter().all(|v| v.is_finite())
            && self.second.values().iter().all(|v| v.is_finite())
    }
}

pub(crate) fn inner_l2_uc(u: &GridFunction, v: &GridFunction) -> f64 {
    let w = u.grid.weights();
    let mut acc = 0.0;
    for i in 0..w.len() {
        acc += w[i] * u.values[i] * v.values[i];
    }
    acc
}

/// Trapezoid inner product on L²(0,1).
pub fn inner_l2(u: &GridFunction, v: &GridFunction) -> Result<f64> {
    check_same_grid(u.grid(), v.grid())?;
    Ok(inner_l2_uc(u, v))
}

pub(crate) fn inner_pair_uc(u: &ProductState, v: &ProductState) -> f64 {
    inner_l2_uc(&u.first, &v.first) + inner_l2_uc(&u.second, &v.second)
}

/// Componentwise inner product on L²(0,1) × L²(0,1).
pub fn inner_pair(u: &ProductState, v: &ProductState) -> Result<f64> {
    check_same_grid(u.grid(), v.grid())?;
    Ok(inner_pair_uc(u, v))
}

pub(crate) fn inner_z_uc(u: &ProductState, v: &ProductState) -> f64 {
    let h = u.grid().spacing();
    let u1 = u.first.values();
    let v1 = v.first.values();
    let mut acc = 0.0;
    for i in 0..u1.len() - 1 {
        acc += (u1[i + 1] - u1[i]) * (v1[i + 1] - v1[i]);
    }
    acc / h + inner_l2_uc(&u.second, &v.second)
}

/// Graph inner product ⟨u₁′, v₁′⟩_{L²} + ⟨u₂, v₂⟩_{L²}.
///
/// The derivative factors are taken as cell-midpoint differences, so the
/// quadratic form in the first slot coincides exactly with the trapezoid
/// pairing against the discrete Laplacian on states vanishing at z = 0.
/// Callers are expected to supply first components with u₁(0) = 0.
pub fn inner_z(u: &ProductState, v: &ProductState) -> Result<f64> {
    check_same_grid(u.grid(), v.grid())?;
    Ok(inner_z_uc(u, v))
}

/// Which inner product a plant's state space carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerProduct {
    /// L²(0,1) × L²(0,1), componentwise.
    Pair,
    /// Graph product: first-component derivatives paired in L², plus L² on
    /// the second component.
    Z,
}

impl InnerProduct {
    pub fn apply(self, u: &ProductState, v: &ProductState) -> Result<f64> {
        match self {
            InnerProduct::Pair => inner_pair(u, v),
            InnerProduct::Z => inner_z(u, v),
        }
    }

    pub(crate) fn apply_uc(self, u: &ProductState, v: &ProductState) -> f64 {
        match self {
            InnerProduct::Pair => inner_pair_uc(u, v),
            InnerProduct::Z => inner_z_uc(u, v),
        }
    }

    pub fn norm(self, u: &ProductState) -> Result<f64> {
        Ok(self.apply(u, u)?.max(0.0).sqrt())
    }
}

/// Finite-difference scheme for the first derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffScheme {
    /// Backward differences (first order); one-sided forward at the inflow
    /// node z = 0.
    Upwind,
    /// Central differences (second order); one-sided second-order stencils
    /// at both endpoints.
    Central,
}

/// Finite-difference first derivative of `u`.
pub fn derivative(u: &GridFunction, scheme: DiffScheme) -> Result<GridFunction> {
    let m = u.grid().node_count();
    if m < 3 {
        return Err(Error::InvalidParam(
            "derivative needs a grid with at least 3 nodes".into(),
        ));
    }
    let h = u.grid().spacing();
    let v = u.values();
    let mut d = vec![0.0; m];
    match scheme {
        DiffScheme::Upwind => {
            d[0] = (v[1] - v[0]) / h;
            for i in 1..m {
                d[i] = (v[i] - v[i - 1]) / h;
            }
        }
        DiffScheme::Central => {
            d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
            for i in 1..m - 1 {
                d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
            }
            d[m - 1] = (3.0 * v[m - 1] - 4.0 * v[m - 2] + v[m - 3]) / (2.0 * h);
        }
    }
    GridFunction::from_values(u.grid(), d)
}

/// Sine-series coefficient of the constant 1 against √2 sin(nπz), rescaled:
/// 4/(nπ) for odd n, 0 for even n.
pub fn indicator_coefficient(n: usize) -> f64 {
    if n % 2 == 1 {
        4.0 / (n as f64 * PI)
    } else {
        0.0
    }
}

/// Truncated sine expansion of the constant 1 on [0, 1]:
/// Σ_{n odd, n ≤ n_max} 4/(nπ) sin(nπz), sampled on `grid`.
pub fn indicator_approx(n_max: usize, grid: &Arc<Grid>) -> Result<GridFunction> {
    if n_max == 0 {
        return Err(Error::InvalidParam(
            "indicator expansion order must be at least 1".into(),
        ));
    }
    let mut values = vec![0.0; grid.node_count()];
    let mut n = 1;
    while n <= n_max {
        let coef = indicator_coefficient(n);
        for (v, &z) in values.iter_mut().zip(grid.nodes()) {
            *v += coef * (n as f64 * PI * z).sin();
        }
        n += 2;
    }
    GridFunction::from_values(grid, values)
}

/// Exact value of ⟨1, 1_N⟩ = ‖1_N‖² = Σ_{n odd, n ≤ n_max} 8/(n²π²).
pub fn indicator_overlap(n_max: usize) -> f64 {
    let mut acc = 0.0;
    let mut n = 1usize;
    while n <= n_max {
        acc += 8.0 / ((n * n) as f64 * PI * PI);
        n += 2;
    }
    acc
}

/// Exact L² distance ‖1 − 1_N‖ from the Parseval identity.
pub fn indicator_residual_norm(n_max: usize) -> f64 {
    (1.0 - indicator_overlap(n_max)).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn quad_tol(grid: &Grid) -> f64 {
        let m = grid.node_count() as f64;
        10.0 / (m * m)
    }

    #[test]
    fn weights_normalized() {
        for m in [3, 17, 201, 800] {
            let g = Grid::uniform(m);
            let sum: f64 = g.weights().iter().sum();
            assert!((sum - 1.0).abs() <= 1e-12, "m={m}: weight sum {sum}");
        }
    }

    #[test]
    fn trapezoid_exact_for_linear_integrands() {
        let g = Grid::uniform(201);
        let one = GridFunction::from_fn(&g, |_| 1.0);
        let lin = GridFunction::from_fn(&g, |z| 0.7 - 1.3 * z);
        // ∫ (0.7 − 1.3 z) dz = 0.7 − 0.65 = 0.05
        assert_abs_diff_eq!(inner_l2(&one, &lin).unwrap(), 0.05, epsilon = 1e-12);
        assert_abs_diff_eq!(inner_l2(&one, &one).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn l2_inner_product_examples() {
        let g = Grid::uniform(201);
        let s1 = GridFunction::from_fn(&g, |z| 2.0_f64.sqrt() * (PI * z).sin());
        let s2 = GridFunction::from_fn(&g, |z| 2.0_f64.sqrt() * (2.0 * PI * z).sin());
        assert_abs_diff_eq!(inner_l2(&s1, &s1).unwrap(), 1.0, epsilon = quad_tol(&g));
        assert_abs_diff_eq!(inner_l2(&s1, &s2).unwrap(), 0.0, epsilon = quad_tol(&g));
    }

    #[test]
    fn pair_inner_product_examples() {
        let g = Grid::uniform(101);
        let e1 = ProductState::from_fns(&g, |_| 1.0, |_| 0.0);
        let e2 = ProductState::from_fns(&g, |_| 0.0, |_| 1.0);
        let both = ProductState::from_fns(&g, |_| 1.0, |_| 1.0);
        assert_abs_diff_eq!(inner_pair(&e1, &e1).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(inner_pair(&e2, &e1).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(inner_pair(&both, &both).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn z_inner_product_examples() {
        let g = Grid::uniform(201);
        // ⟨(sin(πz/2), 0), same⟩_Z = ∫ (π/2)² cos²(πz/2) dz = π²/8
        let u = ProductState::from_fns(&g, |z| (0.5 * PI * z).sin(), |_| 0.0);
        let exact = PI * PI / 8.0;
        assert_abs_diff_eq!(
            inner_z(&u, &u).unwrap(),
            exact,
            epsilon = exact * quad_tol(&g)
        );

        let e2 = ProductState::from_fns(&g, |_| 0.0, |_| 1.0);
        assert_abs_diff_eq!(inner_z(&e2, &e2).unwrap(), 1.0, epsilon = 1e-12);

        let ramp = ProductState::from_fns(&g, |z| z, |_| 0.0);
        assert_abs_diff_eq!(inner_z(&ramp, &e2).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let g1 = Grid::uniform(101);
        let g2 = Grid::uniform(201);
        let u = GridFunction::zeros(&g1);
        let v = GridFunction::zeros(&g2);
        assert!(matches!(
            inner_l2(&u, &v),
            Err(Error::GridMismatch { .. })
        ));
        let p = ProductState::zeros(&g1);
        let q = ProductState::zeros(&g2);
        assert!(inner_pair(&p, &q).is_err());
        assert!(inner_z(&p, &q).is_err());
    }

    #[test]
    fn derivative_examples() {
        let g = Grid::uniform(201);
        let constant = GridFunction::from_fn(&g, |_| 3.5);
        let d = derivative(&constant, DiffScheme::Central).unwrap();
        assert!(d.values().iter().all(|v| v.abs() <= 1e-12));

        let ramp = GridFunction::from_fn(&g, |z| z);
        let d = derivative(&ramp, DiffScheme::Central).unwrap();
        assert!(d.values().iter().all(|v| (v - 1.0).abs() <= 1e-10));

        // central difference of sin(πz) vs the analytic derivative π cos(πz)
        let s = GridFunction::from_fn(&g, |z| (PI * z).sin());
        let d = derivative(&s, DiffScheme::Central).unwrap();
        let h = g.spacing();
        let tol = PI.powi(3) * h * h; // O(h²) with a generous constant
        for (dv, &z) in d.values().iter().zip(g.nodes()) {
            assert!(
                (dv - PI * (PI * z).cos()).abs() <= tol,
                "z={z}: {dv} vs {}",
                PI * (PI * z).cos()
            );
        }
    }

    #[test]
    fn derivative_needs_three_nodes() {
        let g = Grid::uniform(3);
        let u = GridFunction::from_fn(&g, |z| z);
        assert!(derivative(&u, DiffScheme::Upwind).is_ok());
    }

    #[test]
    fn indicator_first_harmonic() {
        let g = Grid::uniform(401);
        let one_1 = indicator_approx(1, &g).unwrap();
        // coefficient of sin(πz) is 4/π: check at z = 1/2 where sin = 1
        let mid = g.node_count() / 2;
        assert_abs_diff_eq!(one_1.values()[mid], 4.0 / PI, epsilon = 1e-12);
        // even harmonics vanish: N = 2 gives the same function
        let one_2 = indicator_approx(2, &g).unwrap();
        for (a, b) in one_1.values().iter().zip(one_2.values()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn indicator_self_overlap_matches_series() {
        // trapezoid sums of sin(aπz)sin(bπz) are exact on uniform grids as
        // long as a + b stays below twice the cell count
        let g = Grid::uniform(201);
        let one_1 = indicator_approx(1, &g).unwrap();
        assert_abs_diff_eq!(
            inner_l2(&one_1, &one_1).unwrap(),
            8.0 / (PI * PI),
            epsilon = 1e-12
        );
        let one_99 = indicator_approx(99, &g).unwrap();
        assert_abs_diff_eq!(
            inner_l2(&one_99, &one_99).unwrap(),
            indicator_overlap(99),
            epsilon = 1e-12
        );
    }

    #[test]
    fn indicator_residual_strictly_decreasing() {
        let mut prev = indicator_residual_norm(1);
        let mut n = 3;
        while n <= 99 {
            let cur = indicator_residual_norm(n);
            assert!(cur < prev, "residual did not decrease at n = {n}");
            prev = cur;
            n += 2;
        }
    }

    #[test]
    fn indicator_quadrature_residual_decreases_too() {
        // the same monotonicity seen through the grid quadrature
        let g = Grid::uniform(201);
        let one = GridFunction::from_fn(&g, |_| 1.0);
        let mut prev = f64::INFINITY;
        for n in [1usize, 5, 25, 99] {
            let mut r = indicator_approx(n, &g).unwrap();
            r.scale_mut(-1.0);
            r.axpy(1.0, &one);
            let cur = r.norm_l2();
            assert!(cur < prev, "quadrature residual did not decrease at n = {n}");
            prev = cur;
        }
    }

    #[test]
    fn indicator_requires_positive_order() {
        let g = Grid::uniform(11);
        assert!(indicator_approx(0, &g).is_err());
    }

    fn arb_coeffs() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-2.0..2.0f64, 4)
    }

    fn state_from(grid: &Arc<Grid>, a: &[f64], b: &[f64]) -> ProductState {
        ProductState::from_fns(
            grid,
            |z| {
                a.iter()
                    .enumerate()
                    .map(|(k, c)| c * ((k + 1) as f64 * PI * z).sin())
                    .sum()
            },
            |z| {
                b.iter()
                    .enumerate()
                    .map(|(k, c)| c * ((k + 1) as f64 * PI * z).sin())
                    .sum()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn inner_products_symmetric_and_bilinear(
            a in arb_coeffs(), b in arb_coeffs(), c in arb_coeffs(),
            alpha in -3.0..3.0f64,
        ) {
            let g = Grid::uniform(101);
            let u = state_from(&g, &a, &b);
            let v = state_from(&g, &b, &c);
            let w = state_from(&g, &c, &a);
            for kind in [InnerProduct::Pair, InnerProduct::Z] {
                let uv = kind.apply(&u, &v).unwrap();
                let vu = kind.apply(&v, &u).unwrap();
                prop_assert!((uv - vu).abs() <= 1e-12 * (1.0 + uv.abs()));

                // bilinearity: ⟨αu + w, v⟩ = α⟨u,v⟩ + ⟨w,v⟩
                let mut lin = w.clone();
                lin.axpy(alpha, &u);
                let lhs = kind.apply(&lin, &v).unwrap();
                let rhs = alpha * uv + kind.apply(&w, &v).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
            }
        }

        #[test]
        fn cauchy_schwarz(a in arb_coeffs(), b in arb_coeffs(), c in arb_coeffs(), d in arb_coeffs()) {
            let g = Grid::uniform(101);
            let u = state_from(&g, &a, &b);
            let v = state_from(&g, &c, &d);
            for kind in [InnerProduct::Pair, InnerProduct::Z] {
                let uv = kind.apply(&u, &v).unwrap();
                let nu = kind.norm(&u).unwrap();
                let nv = kind.norm(&v).unwrap();
                prop_assert!(uv.abs() <= nu * nv + 1e-10);
            }
        }
    }
}
