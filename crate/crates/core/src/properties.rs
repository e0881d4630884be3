//! Sampled analytic properties of the potentials on one system: derivative
//! consistency against finite differences, convexity of U₁, constancy of
//! `U₂(h) − ½‖∇U₁(κ)‖²`, and uniqueness of the U₁ minimizer.

use crate::equilibrium::{minimize_from, MinimizeOptions};
use crate::error::Result;
use crate::linalg::{jacobi_eigen, norm, Matrix};
use crate::potentials::{self, interior_seed, matched_coupling, ConfigPoint, PotentialKind};
use crate::rootsys::{Coupling, RootSystemData};
use crate::sampling::InteriorSampler;
use crate::verify::{spectrum, SpectrumQuery};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropertyOptions {
    pub seed: u64,
    pub derivative_points: usize,
    pub fd_step: f64,
    pub grad_rtol: f64,
    pub hess_rtol: f64,
    pub constancy_points: usize,
    pub constancy_tol: f64,
    pub starts: usize,
    pub uniqueness_tol: f64,
}

impl Default for PropertyOptions {
    fn default() -> Self {
        Self {
            seed: crate::sampling::seed_from_env(),
            derivative_points: 20,
            fd_step: 1e-5,
            grad_rtol: 1e-5,
            hess_rtol: 1e-4,
            constancy_points: 100,
            constancy_tol: 1e-8,
            starts: 10,
            uniqueness_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    /// Worst `‖∇_fd − ∇‖ / max(‖∇‖, 1)` over both potentials and all points.
    pub grad_fd_err: f64,
    /// Worst `‖H_fd − H‖_F / max(‖H‖_F, 1)`, with `H_fd` from differences of gradients.
    pub hess_fd_err: f64,
    /// Smallest eigenvalue of ∇²U₁ seen at any sampled point.
    pub min_u1_hess_eig: f64,
    /// `(max − min) / max(|mean|, 1)` of `U₂(h) − ½‖∇U₁(κ)‖²`.
    pub prepotential_spread: f64,
    /// Mean of that quantity and its relative distance to `E₀ = 2(ρ, ρ)`.
    pub prepotential_constant: f64,
    pub prepotential_vs_e0: f64,
    /// Largest distance between the seeded minimizer and those from random starts.
    pub multistart_spread: f64,
    pub options: PropertyOptions,
}

impl PropertyReport {
    pub fn derivatives_pass(&self) -> bool {
        self.grad_fd_err <= self.options.grad_rtol && self.hess_fd_err <= self.options.hess_rtol
    }

    pub fn convexity_pass(&self) -> bool {
        self.min_u1_hess_eig > 0.0
    }

    pub fn constancy_pass(&self) -> bool {
        self.prepotential_spread <= self.options.constancy_tol && self.prepotential_vs_e0 <= self.options.constancy_tol
    }

    pub fn uniqueness_pass(&self) -> bool {
        self.multistart_spread <= self.options.uniqueness_tol
    }

    pub fn pass(&self) -> bool {
        self.derivatives_pass() && self.convexity_pass() && self.constancy_pass() && self.uniqueness_pass()
    }
}

/// Central-difference gradient of a potential's value.
pub fn fd_gradient(
    kind: PotentialKind,
    rs: &RootSystemData,
    g: &Coupling,
    q: &ConfigPoint,
    h: f64,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(q.coords.len());
    for i in 0..q.coords.len() {
        let mut e = vec![0.0; q.coords.len()];
        e[i] = 1.0;
        let plus = potentials::value(kind, rs, g, &q.offset(&e, h))?;
        let minus = potentials::value(kind, rs, g, &q.offset(&e, -h))?;
        out.push((plus - minus) / (2.0 * h));
    }
    Ok(out)
}

/// Central-difference Hessian from analytic gradients, symmetrized.
pub fn fd_hessian(kind: PotentialKind, rs: &RootSystemData, g: &Coupling, q: &ConfigPoint, h: f64) -> Result<Matrix> {
    let n = q.coords.len();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        let plus = potentials::gradient(kind, rs, g, &q.offset(&e, h))?;
        let minus = potentials::gradient(kind, rs, g, &q.offset(&e, -h))?;
        for i in 0..n {
            m[(i, j)] = (plus[i] - minus[i]) / (2.0 * h);
        }
    }
    let mt = m.transpose();
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = 0.5 * (m[(i, j)] + mt[(i, j)]);
        }
    }
    Ok(m)
}

pub fn check_properties(rs: &RootSystemData, kappa: &Coupling, opts: &PropertyOptions) -> Result<PropertyReport> {
    let mut sampler = InteriorSampler::new(opts.seed);
    let h = matched_coupling(rs, kappa);

    let mut grad_fd_err: f64 = 0.0;
    let mut hess_fd_err: f64 = 0.0;
    let mut min_u1_hess_eig = f64::INFINITY;
    for q in sampler.sample_many(rs, opts.derivative_points) {
        for (kind, g) in [(PotentialKind::U1, kappa), (PotentialKind::U2, &h)] {
            let eval = potentials::evaluate(kind, rs, g, &q)?;
            let fd = fd_gradient(kind, rs, g, &q, opts.fd_step)?;
            let diff: Vec<f64> = fd.iter().zip(&eval.gradient).map(|(a, b)| a - b).collect();
            grad_fd_err = grad_fd_err.max(norm(&diff) / norm(&eval.gradient).max(1.0));
            let fdh = fd_hessian(kind, rs, g, &q, opts.fd_step)?;
            hess_fd_err =
                hess_fd_err.max(fdh.sub(&eval.hessian).frobenius_norm() / eval.hessian.frobenius_norm().max(1.0));
            if kind == PotentialKind::U1 {
                min_u1_hess_eig = min_u1_hess_eig.min(jacobi_eigen(&eval.hessian)?.values[0]);
            }
        }
    }

    let mut values = Vec::with_capacity(opts.constancy_points);
    for q in sampler.sample_many(rs, opts.constancy_points) {
        let grad = potentials::grad_u1(rs, kappa, &q)?;
        let grad_sq: f64 = grad.iter().map(|x| x * x).sum();
        values.push(potentials::u2(rs, &h, &q)? - 0.5 * grad_sq);
    }
    let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let prepotential_spread = if values.is_empty() { 0.0 } else { (hi - lo) / mean.abs().max(1.0) };
    let e0 = spectrum(rs, &SpectrumQuery { m: vec![0; rs.rank()], kappa: *kappa });
    let prepotential_vs_e0 = (mean - e0).abs() / e0.abs().max(1.0);

    let mopts = MinimizeOptions::default();
    let reference = minimize_from(rs, kappa, PotentialKind::U1, &interior_seed(rs), &mopts)?.point;
    let mut multistart_spread: f64 = 0.0;
    for start in sampler.sample_many(rs, opts.starts) {
        let p = minimize_from(rs, kappa, PotentialKind::U1, &start, &mopts)?.point;
        multistart_spread = multistart_spread.max(p.distance(&reference));
    }

    Ok(PropertyReport {
        grad_fd_err,
        hess_fd_err,
        min_u1_hess_eig,
        prepotential_spread,
        prepotential_constant: mean,
        prepotential_vs_e0,
        multistart_spread,
        options: *opts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, RootSystemId};

    #[test]
    fn b2_properties_hold() {
        let rs = RootSystemData::new(RootSystemId::new(Family::B, 2).unwrap()).unwrap();
        let opts = PropertyOptions { seed: 11, ..PropertyOptions::default() };
        let r = check_properties(&rs, &Coupling::new(1.0, 2.0), &opts).unwrap();
        assert!(r.pass(), "{r:?}");
        // U₂(h) − ½‖∇U₁‖² = 2(ρ, ρ); for B₂ at κ = (1, 2): ρ = (2, 3) in simple roots → 10
        assert!((r.prepotential_constant - 10.0).abs() < 1e-9);
    }

    #[test]
    fn fd_helpers_on_rank_one() {
        let rs = RootSystemData::new(RootSystemId::new(Family::A, 1).unwrap()).unwrap();
        let g = Coupling::uniform(1.0);
        let q = ConfigPoint::new(vec![0.4]);
        let fd = fd_gradient(PotentialKind::U1, &rs, &g, &q, 1e-6).unwrap();
        let an = potentials::grad_u1(&rs, &g, &q).unwrap();
        assert!((fd[0] - an[0]).abs() < 1e-8);
    }
}
