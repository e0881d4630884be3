//! Equilibrium of the alcove potentials and the small-oscillation data there.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, jacobi_eigen, norm, Matrix};
use crate::potentials::{self, in_alcove, interior_seed, ConfigPoint, CouplingMap, PotentialKind};
use crate::rootsys::{Coupling, RootSystemData};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimizeOptions {
    pub grad_tol: f64,
    pub max_iters: usize,
    pub backtrack_factor: f64,
    pub min_step: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self { grad_tol: 1e-12, max_iters: 200, backtrack_factor: 0.5, min_step: 1e-16 }
    }
}

impl MinimizeOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = self.grad_tol > 0.0 && self.max_iters > 0 && self.min_step > 0.0;
        if !positive || !(self.backtrack_factor > 0.0 && self.backtrack_factor < 1.0) {
            return Err(Error::InvalidOptions(format!("{self:?}")));
        }
        Ok(())
    }
}

/// A converged minimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: ConfigPoint,
    pub value: f64,
    pub grad_norm: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct EquilibriumResult {
    pub q_bar: ConfigPoint,
    /// `(q̄, α_j)` for the simple roots.
    pub q_bar_simple_pairings: Vec<f64>,
    pub u_min: f64,
    pub a1: Matrix,
    pub a2: Matrix,
    pub eigs_a1: Vec<f64>,
    pub eigs_a2: Vec<f64>,
    pub c_fit: f64,
    pub relation_residual: f64,
    pub iterations: usize,
    pub grad_norm: f64,
}

fn check_coupling(rs: &RootSystemData, g: &Coupling) -> Result<()> {
    if !(g.long.is_finite() && g.short.is_finite()) || g.long < 0.0 || g.short < 0.0 {
        return Err(Error::InvalidCoupling(format!("couplings must be finite and nonnegative, got {g:?}")));
    }
    if !rs.has_positive_coupling(g) {
        return Err(Error::InvalidCoupling("no root carries a positive coupling".into()));
    }
    Ok(())
}

/// Minimizer of `kind` started from [`interior_seed`].
pub fn minimize(rs: &RootSystemData, g: &Coupling, kind: PotentialKind, opts: &MinimizeOptions) -> Result<ConfigPoint> {
    Ok(minimize_from(rs, g, kind, &interior_seed(rs), opts)?.point)
}

/// Damped Newton iteration. The full step `−H⁻¹∇U` is shrunk by
/// `backtrack_factor` until the trial point is inside the alcove and the
/// potential strictly decreases.
pub fn minimize_from(
    rs: &RootSystemData,
    g: &Coupling,
    kind: PotentialKind,
    start: &ConfigPoint,
    opts: &MinimizeOptions,
) -> Result<Minimum> {
    opts.validate()?;
    check_coupling(rs, g)?;
    if !in_alcove(rs, start) {
        return Err(Error::DomainError { pairing: f64::NAN });
    }
    let mut q = start.clone();
    let mut iterations = 0;
    loop {
        let eval = potentials::evaluate(kind, rs, g, &q)?;
        let grad_norm = norm(&eval.gradient);
        if grad_norm <= opts.grad_tol * (1.0 + eval.value.abs()) {
            return Ok(Minimum { point: q, value: eval.value, grad_norm, iterations });
        }
        if iterations >= opts.max_iters {
            return Err(Error::NoConvergence { iterations, grad_norm });
        }
        iterations += 1;

        let neg_grad: Vec<f64> = eval.gradient.iter().map(|x| -x).collect();
        let step = eval.hessian.solve_spd(&neg_grad).ok_or(Error::SingularInput("Hessian is not positive definite"))?;
        let step_norm = norm(&step);
        // below this, value differences are roundoff and the gradient decides
        let predicted = -0.5 * dot(&eval.gradient, &step);
        let flat = predicted <= 64.0 * f64::EPSILON * (1.0 + eval.value.abs());
        let mut t = 1.0;
        loop {
            if t * step_norm < opts.min_step {
                return Err(Error::NoConvergence { iterations, grad_norm });
            }
            let trial = q.offset(&step, t);
            if in_alcove(rs, &trial) {
                let accepted = if flat {
                    potentials::gradient(kind, rs, g, &trial).is_ok_and(|gr| norm(&gr) < grad_norm)
                } else {
                    potentials::value(kind, rs, g, &trial).is_ok_and(|v| v < eval.value)
                };
                if accepted {
                    q = trial;
                    break;
                }
            }
            t *= opts.backtrack_factor;
        }
    }
}

/// `a⁽¹⁾ = ∇²U₁(g)` and `a⁽²⁾ = ∇²U₂(h)` at `q_bar`, with `h` the matched
/// coupling of `g`.
pub fn hessians_at(rs: &RootSystemData, g: &Coupling, q_bar: &ConfigPoint) -> Result<(Matrix, Matrix)> {
    hessians_at_with(rs, g, q_bar, CouplingMap::LengthCorrected)
}

pub fn hessians_at_with(
    rs: &RootSystemData,
    g: &Coupling,
    q_bar: &ConfigPoint,
    map: CouplingMap,
) -> Result<(Matrix, Matrix)> {
    if !in_alcove(rs, q_bar) {
        return Err(Error::DomainError { pairing: f64::NAN });
    }
    let a1 = potentials::hess_u1(rs, g, q_bar)?;
    let h = potentials::matched_coupling_with(rs, g, map);
    let a2 = potentials::hess_u2(rs, &h, q_bar)?;
    Ok((a1, a2))
}

/// Ascending eigenvalues of a symmetric matrix (cyclic Jacobi).
pub fn eigenvalues_sym(m: &Matrix) -> Result<Vec<f64>> {
    Ok(jacobi_eigen(m)?.values)
}

/// Least-squares scalar `c` in `a2 ≈ c · a1²` and the relative Frobenius
/// residual `‖a2 − c·a1²‖ / ‖a2‖`.
pub fn fit_proportionality(a2: &Matrix, a1: &Matrix) -> Result<(f64, f64)> {
    if a1.rows() != a2.rows() || a1.cols() != a2.cols() || !a1.is_square() {
        return Err(Error::SingularInput("matrices of different shapes"));
    }
    let sq = a1.matmul(a1);
    let denom = sq.frobenius_dot(&sq);
    if denom == 0.0 {
        return Err(Error::SingularInput("a1 squared vanishes"));
    }
    let c = a2.frobenius_dot(&sq) / denom;
    let a2_norm = a2.frobenius_norm();
    let diff = a2.sub(&sq.scale(c)).frobenius_norm();
    let residual = if a2_norm == 0.0 { diff } else { diff / a2_norm };
    Ok((c, residual))
}

pub fn equilibrium_report(rs: &RootSystemData, g: &Coupling, opts: &MinimizeOptions) -> Result<EquilibriumResult> {
    equilibrium_report_with(rs, g, opts, CouplingMap::LengthCorrected)
}

/// U₁ minimization, then both Hessians, their spectra and the fit of
/// `a⁽²⁾ = c (a⁽¹⁾)²`.
pub fn equilibrium_report_with(
    rs: &RootSystemData,
    g: &Coupling,
    opts: &MinimizeOptions,
    map: CouplingMap,
) -> Result<EquilibriumResult> {
    let min = minimize_from(rs, g, PotentialKind::U1, &interior_seed(rs), opts)?;
    let (a1, a2) = hessians_at_with(rs, g, &min.point, map)?;
    let eigs_a1 = eigenvalues_sym(&a1)?;
    let eigs_a2 = eigenvalues_sym(&a2)?;
    let (c_fit, relation_residual) = fit_proportionality(&a2, &a1)?;
    let q_bar_simple_pairings = rs.simple_roots().iter().map(|a| potentials::pairing(&min.point, a)).collect();
    Ok(EquilibriumResult {
        q_bar_simple_pairings,
        q_bar: min.point,
        u_min: min.value,
        a1,
        a2,
        eigs_a1,
        eigs_a2,
        c_fit,
        relation_residual,
        iterations: min.iterations,
        grad_norm: min.grad_norm,
    })
}
