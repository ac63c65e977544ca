//! Plug-flow tubular reactor with Arrhenius reaction kinetics.
//!
//! State (θ₁, θ₂) = (temperature, concentration) on L²(0,1) × L²(0,1) with
//! transport generator A = diag(−d_z − βI, −d_z), inflow conditions
//! θ₁(t,0) = θ₂(t,0) = 0, and distributed heat-exchanger actuation through a
//! truncated sine expansion of the indicator function. Transport is
//! discretized with first-order backward (upwind) differences; inflow nodes
//! are pinned. The adjoint uses forward differences with the outflow node
//! pinned, which makes the discrete duality ⟨Ax, w⟩ = ⟨x, A*w⟩ exact for
//! admissible pairs.

use std::sync::Arc;

use super::SemilinearPlant;
use crate::error::{Error, Result};
use crate::hilbert::{indicator_approx, Grid, GridFunction, InnerProduct, ProductState};

/// Dimensionless reactor constants plus the actuation expansion order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReactorParams {
    pub delta: f64,
    pub alpha: f64,
    pub mu: f64,
    pub beta: f64,
    /// Truncation order N of the sine expansion used for b and c.
    pub basis_order: usize,
}

impl Default for ReactorParams {
    fn default() -> Self {
        ReactorParams {
            delta: 0.25,
            alpha: 2.3248,
            mu: 16.6607,
            beta: 8.0,
            basis_order: 100,
        }
    }
}

impl ReactorParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.alpha > 0.0 && self.mu > 0.0 && self.beta > 0.0) {
            return Err(Error::InvalidParam(
                "reactor constants delta, alpha, mu, beta must be positive".into(),
            ));
        }
        if self.basis_order == 0 {
            return Err(Error::InvalidParam(
                "reactor basis order must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Closed form of γ = ⟨b, c⟩ = β Σ_{n odd ≤ N} 8/(n²π²).
    pub fn gamma_closed_form(&self) -> f64 {
        self.beta * crate::hilbert::indicator_overlap(self.basis_order)
    }

    /// Uniform bound ‖F(x)‖ ≤ α e^μ √(δ² + 1).
    pub fn nonlinearity_bound(&self) -> f64 {
        self.alpha * self.mu.exp() * (self.delta * self.delta + 1.0).sqrt()
    }
}

/// Arrhenius reaction rate, cut off outside the physical range.
pub fn arrhenius(theta1: f64, theta2: f64, p: &ReactorParams) -> f64 {
    if theta1 < -1.0 {
        0.0
    } else if theta2 < 0.0 {
        p.alpha * (p.mu * theta1 / (1.0 + theta1)).exp()
    } else if theta2 <= 1.0 {
        p.alpha * (1.0 - theta2) * (p.mu * theta1 / (1.0 + theta1)).exp()
    } else {
        0.0
    }
}

/// Builds the discretized reactor plant.
pub fn build_reactor(params: &ReactorParams, grid: &Arc<Grid>) -> Result<SemilinearPlant> {
    params.validate()?;
    let one_n = indicator_approx(params.basis_order, grid)?;

    let mut b1 = one_n.clone();
    b1.scale_mut(params.beta);
    let b = ProductState::new(b1, GridFunction::zeros(grid))?;
    let c = ProductState::new(one_n, GridFunction::zeros(grid))?;

    let beta = params.beta;
    let h = grid.spacing();
    let m = grid.node_count();

    let g = Arc::clone(grid);
    let apply_a = move |x: &ProductState| -> ProductState {
        let u1 = x.first.values();
        let u2 = x.second.values();
        let mut out = ProductState::zeros(&g);
        {
            let o1 = out.first.values_mut();
            for i in 1..m {
                o1[i] = -(u1[i] - u1[i - 1]) / h - beta * u1[i];
            }
        }
        {
            let o2 = out.second.values_mut();
            for i in 1..m {
                o2[i] = -(u2[i] - u2[i - 1]) / h;
            }
        }
        out
    };

    let g = Arc::clone(grid);
    let apply_a_adjoint = move |x: &ProductState| -> ProductState {
        let u1 = x.first.values();
        let u2 = x.second.values();
        let mut out = ProductState::zeros(&g);
        {
            let o1 = out.first.values_mut();
            for i in 0..m - 1 {
                o1[i] = (u1[i + 1] - u1[i]) / h - beta * u1[i];
            }
        }
        {
            let o2 = out.second.values_mut();
            for i in 0..m - 1 {
                o2[i] = (u2[i + 1] - u2[i]) / h;
            }
        }
        out
    };

    let g = Arc::clone(grid);
    let p = *params;
    let nonlinearity = move |x: &ProductState| -> ProductState {
        let u1 = x.first.values();
        let u2 = x.second.values();
        let mut out = ProductState::zeros(&g);
        let o1 = out.first.values_mut();
        for i in 1..m {
            o1[i] = p.delta * arrhenius(u1[i], u2[i], &p);
        }
        let o2 = out.second.values_mut();
        for i in 1..m {
            o2[i] = arrhenius(u1[i], u2[i], &p);
        }
        out
    };

    let boundary_residual = |x: &ProductState| -> f64 {
        x.first.values()[0].abs().max(x.second.values()[0].abs())
    };

    Ok(SemilinearPlant::assemble(
        "reactor",
        Arc::clone(grid),
        InnerProduct::Pair,
        Box::new(apply_a),
        Box::new(apply_a_adjoint),
        Box::new(nonlinearity),
        Box::new(boundary_residual),
        b,
        c,
        Some(params.nonlinearity_bound()),
    ))
}
