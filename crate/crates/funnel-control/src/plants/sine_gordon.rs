//! Damped sine-Gordon equation in first-order form.
//!
//! State ζ = (x, ∂_t x) on Z = D(A₀^{1/2}) × L²(0,1) with
//! A = [[0, I], [−A₀, −αI]], A₀ = −d²/dz², x(0) = 0, ∂_z x(1) = 0. The
//! Laplacian uses the standard three-point stencil with a mirrored ghost
//! node realizing the Neumann end; the clamped node is pinned. Together
//! with the cell-midpoint form of the Z inner product this makes the
//! discrete duality and the Lyapunov identity for the damping certificate
//! exact to roundoff.

use std::f64::consts::PI;
use std::sync::Arc;

use super::SemilinearPlant;
use crate::error::{Error, Result};
use crate::hilbert::{indicator_approx, Grid, GridFunction, InnerProduct, ProductState};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SineGordonParams {
    /// Damping coefficient; must exceed π for the output construction.
    pub alpha: f64,
    /// Strength of the sine nonlinearity; nonzero.
    pub nu: f64,
    /// Truncation order N of the sine expansion used for b.
    pub basis_order: usize,
}

impl Default for SineGordonParams {
    fn default() -> Self {
        SineGordonParams {
            alpha: PI + 1.0 / 6.0,
            nu: -1.0,
            basis_order: 100,
        }
    }
}

impl SineGordonParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > PI) {
            return Err(Error::InvalidParam(format!(
                "sine-Gordon damping alpha = {} must exceed pi",
                self.alpha
            )));
        }
        if self.nu == 0.0 || !self.nu.is_finite() {
            return Err(Error::InvalidParam(
                "sine-Gordon coupling nu must be nonzero and finite".into(),
            ));
        }
        if self.basis_order == 0 {
            return Err(Error::InvalidParam(
                "sine-Gordon basis order must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// −α/2 + √(α² − π²)/2, the decay rate of the extracted output mode.
    pub fn p0_closed_form(&self) -> f64 {
        -0.5 * self.alpha + 0.5 * (self.alpha * self.alpha - PI * PI).sqrt()
    }

    /// Amplitude (2/π²)(α + √(α² − π²)) of the first observation component.
    pub fn observation_amplitude(&self) -> f64 {
        2.0 / (PI * PI) * (self.alpha + (self.alpha * self.alpha - PI * PI).sqrt())
    }

    /// Closed form of γ = ⟨b, c⟩_Z = Σ_{n odd ≤ N} 16/(π²(4n² − 1)).
    pub fn gamma_closed_form(&self) -> f64 {
        let mut acc = 0.0;
        let mut n = 1usize;
        while n <= self.basis_order {
            acc += 16.0 / (PI * PI * (4.0 * (n * n) as f64 - 1.0));
            n += 2;
        }
        acc
    }
}

/// Discrete A₀ = −d²/dz² with the clamped node pinned and a mirrored
/// Neumann closure at z = 1.
fn a0_apply(u: &[f64], h: f64, out: &mut [f64]) {
    let m = u.len();
    let h2 = h * h;
    out[0] = 0.0;
    for i in 1..m - 1 {
        out[i] = (2.0 * u[i] - u[i + 1] - u[i - 1]) / h2;
    }
    out[m - 1] = (2.0 * u[m - 1] - 2.0 * u[m - 2]) / h2;
}

/// Solves A₀ u = g for the discrete A₀ above (Thomas algorithm on the free
/// nodes). The entry g[0] is ignored and u[0] = 0.
fn a0_solve(grid: &Grid, g: &[f64]) -> Vec<f64> {
    let m = grid.node_count();
    let h2 = grid.spacing() * grid.spacing();
    let n = m - 1;
    // rows: 2u_i − u_{i−1} − u_{i+1} = h²g_i (interior), 2u_n − 2u_{n−1} = h²g_n
    let mut diag = vec![2.0; n];
    let mut rhs: Vec<f64> = (0..n).map(|i| h2 * g[i + 1]).collect();
    let lower = |i: usize| if i == n - 1 { -2.0 } else { -1.0 };
    // forward elimination (upper band is constant −1)
    for i in 1..n {
        let w = lower(i) / diag[i - 1];
        diag[i] -= w * (-1.0);
        rhs[i] -= w * rhs[i - 1];
    }
    let mut u = vec![0.0; m];
    u[n] = rhs[n - 1] / diag[n - 1];
    for i in (1..n).rev() {
        u[i] = (rhs[i - 1] + u[i + 1]) / diag[i - 1];
    }
    u
}

/// Observation vector c = (amp · sin(πz/2), sin(πz/2)).
pub fn observation_vector(params: &SineGordonParams, grid: &Arc<Grid>) -> ProductState {
    let amp = params.observation_amplitude();
    ProductState::from_fns(
        grid,
        move |z| amp * (0.5 * PI * z).sin(),
        |z| (0.5 * PI * z).sin(),
    )
}

/// Builds the discretized damped sine-Gordon plant.
pub fn build_sine_gordon(params: &SineGordonParams, grid: &Arc<Grid>) -> Result<SemilinearPlant> {
    params.validate()?;
    let b = ProductState::new(
        GridFunction::zeros(grid),
        indicator_approx(params.basis_order, grid)?,
    )?;
    let c = observation_vector(params, grid);

    let alpha = params.alpha;
    let nu = params.nu;
    let h = grid.spacing();
    let m = grid.node_count();

    let g = Arc::clone(grid);
    let apply_a = move |x: &ProductState| -> ProductState {
        let z1 = x.first.values();
        let z2 = x.second.values();
        let mut out = ProductState::zeros(&g);
        {
            let o1 = out.first.values_mut();
            o1.copy_from_slice(z2);
            o1[0] = 0.0;
        }
        {
            let o2 = out.second.values_mut();
            a0_apply(z1, h, o2);
            for i in 1..m {
                o2[i] = -o2[i] - alpha * z2[i];
            }
            o2[0] = 0.0;
        }
        out
    };

    let g = Arc::clone(grid);
    let apply_a_adjoint = move |x: &ProductState| -> ProductState {
        let z1 = x.first.values();
        let z2 = x.second.values();
        let mut out = ProductState::zeros(&g);
        {
            let o1 = out.first.values_mut();
            for i in 1..m {
                o1[i] = -z2[i];
            }
        }
        {
            let o2 = out.second.values_mut();
            a0_apply(z1, h, o2);
            for i in 1..m {
                o2[i] -= alpha * z2[i];
            }
            o2[0] = 0.0;
        }
        out
    };

    let g = Arc::clone(grid);
    let nonlinearity = move |x: &ProductState| -> ProductState {
        let z1 = x.first.values();
        let mut out = ProductState::zeros(&g);
        let o2 = out.second.values_mut();
        for i in 1..m {
            o2[i] = nu * z1[i].sin();
        }
        out
    };

    let boundary_residual = |x: &ProductState| -> f64 {
        x.first.values()[0].abs().max(x.second.values()[0].abs())
    };

    Ok(SemilinearPlant::assemble(
        "sine-gordon",
        Arc::clone(grid),
        InnerProduct::Z,
        Box::new(apply_a),
        Box::new(apply_a_adjoint),
        Box::new(nonlinearity),
        Box::new(boundary_residual),
        b,
        c,
        Some(params.nu.abs()),
    ))
}

/// Applies the Lyapunov operator
/// Π = [[I/α + (α/2)A₀⁻¹, A₀⁻¹/2], [I/2, I/α]] used by the damping
/// certificate.
pub fn apply_pi(params: &SineGordonParams, x: &ProductState) -> ProductState {
    let grid = x.grid();
    let alpha = params.alpha;
    let inv1 = a0_solve(grid, x.first.values());
    let inv2 = a0_solve(grid, x.second.values());
    let z1 = x.first.values();
    let z2 = x.second.values();
    let mut out = ProductState::zeros(grid);
    {
        let o1 = out.first.values_mut();
        for i in 0..z1.len() {
            o1[i] = z1[i] / alpha + 0.5 * alpha * inv1[i] + 0.5 * inv2[i];
        }
        o1[0] = 0.0;
    }
    {
        let o2 = out.second.values_mut();
        for i in 0..z2.len() {
            o2[i] = 0.5 * z1[i] + z2[i] / alpha;
        }
    }
    out
}

/// Output evaluated directly from its integral form:
/// ((α + √(α²−π²))/π) ∫ cos(πz/2) ∂_z x dz + ∫ sin(πz/2) ∂_t x dz,
/// with the first integral on cell midpoints and the second by trapezoid.
pub fn sg_output_integral_form(params: &SineGordonParams, state: &ProductState) -> f64 {
    let grid = state.grid();
    let h = grid.spacing();
    let x = state.first.values();
    let front = (params.alpha + (params.alpha * params.alpha - PI * PI).sqrt()) / PI;
    let mut acc = 0.0;
    for i in 0..x.len() - 1 {
        let mid = 0.5 * (grid.nodes()[i] + grid.nodes()[i + 1]);
        acc += (0.5 * PI * mid).cos() * (x[i + 1] - x[i]);
    }
    let mut second = 0.0;
    let w = grid.weights();
    let v = state.second.values();
    for i in 0..v.len() {
        second += w[i] * (0.5 * PI * grid.nodes()[i]).sin() * v[i];
    }
    front * acc + second
}
