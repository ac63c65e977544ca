//! The two discretized example plants and the common plant interface.
//!
//! A plant bundles the discrete generator action (with its boundary
//! handling), the generator's adjoint, a Lipschitz nonlinearity, the
//! actuation and observation vectors b and c, and the inner product of the
//! underlying state space.

mod reactor;
mod sine_gordon;

pub use reactor::{arrhenius, build_reactor, ReactorParams};
pub use sine_gordon::{
    apply_pi, build_sine_gordon, observation_vector, sg_output_integral_form, SineGordonParams,
};

use std::sync::Arc;

use crate::hilbert::{Grid, InnerProduct, ProductState};

type StateOp = Box<dyn Fn(&ProductState) -> ProductState + Send + Sync>;
type ResidualFn = Box<dyn Fn(&ProductState) -> f64 + Send + Sync>;

/// A spatially discretized semilinear plant ẋ = Ax + f(x) + b(u + d),
/// y = ⟨x, c⟩.
pub struct SemilinearPlant {
    name: &'static str,
    grid: Arc<Grid>,
    inner: InnerProduct,
    apply_a: StateOp,
    apply_a_adjoint: StateOp,
    nonlinearity: StateOp,
    boundary_residual: ResidualFn,
    b: ProductState,
    c: ProductState,
    f_bound: Option<f64>,
}

impl SemilinearPlant {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        name: &'static str,
        grid: Arc<Grid>,
        inner: InnerProduct,
        apply_a: StateOp,
        apply_a_adjoint: StateOp,
        nonlinearity: StateOp,
        boundary_residual: ResidualFn,
        b: ProductState,
        c: ProductState,
        f_bound: Option<f64>,
    ) -> Self {
        SemilinearPlant {
            name,
            grid,
            inner,
            apply_a,
            apply_a_adjoint,
            nonlinearity,
            boundary_residual,
            b,
            c,
            f_bound,
        }
    }

    pub fn name(&self) -> &str {
        self.name
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn inner_kind(&self) -> InnerProduct {
        self.inner
    }

    pub fn b(&self) -> &ProductState {
        &self.b
    }

    pub fn c(&self) -> &ProductState {
        &self.c
    }

    /// Uniform bound on ‖f(x)‖ when the nonlinearity is bounded.
    pub fn f_bound(&self) -> Option<f64> {
        self.f_bound
    }

    /// Discrete generator action, boundary rows pinned.
    pub fn apply_a(&self, x: &ProductState) -> ProductState {
        debug_assert_eq!(x.grid().node_count(), self.grid.node_count());
        (self.apply_a)(x)
    }

    /// Discrete adjoint action on the adjoint domain.
    pub fn apply_a_adjoint(&self, x: &ProductState) -> ProductState {
        debug_assert_eq!(x.grid().node_count(), self.grid.node_count());
        (self.apply_a_adjoint)(x)
    }

    pub fn nonlinearity(&self, x: &ProductState) -> ProductState {
        debug_assert_eq!(x.grid().node_count(), self.grid.node_count());
        (self.nonlinearity)(x)
    }

    /// Largest boundary-condition violation of `x` for domain membership.
    pub fn boundary_residual(&self, x: &ProductState) -> f64 {
        (self.boundary_residual)(x)
    }

    /// y = ⟨x, c⟩ in the plant inner product.
    pub fn output(&self, x: &ProductState) -> f64 {
        self.inner.apply_uc(x, &self.c)
    }

    pub fn inner(&self, u: &ProductState, v: &ProductState) -> crate::Result<f64> {
        self.inner.apply(u, v)
    }

    pub(crate) fn inner_uc(&self, u: &ProductState, v: &ProductState) -> f64 {
        self.inner.apply_uc(u, v)
    }

    pub fn norm(&self, x: &ProductState) -> f64 {
        self.inner.apply_uc(x, x).max(0.0).sqrt()
    }

    /// The same plant with f ≡ 0; used for open-loop decay probes.
    pub fn with_zero_nonlinearity(self) -> Self {
        let grid = Arc::clone(&self.grid);
        SemilinearPlant {
            nonlinearity: Box::new(move |_| ProductState::zeros(&grid)),
            f_bound: Some(0.0),
            ..self
        }
    }
}

impl std::fmt::Debug for SemilinearPlant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SemilinearPlant")
            .field("name", &self.name)
            .field("m", &self.grid.node_count())
            .field("inner", &self.inner)
            .finish()
    }
}
