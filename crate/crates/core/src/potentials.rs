//! Trigonometric potentials on the Weyl alcove.
//!
//! With `q_α = (α, q)` and sums over positive roots:
//!
//! ```text
//! U₁(q) = −Σ g_α log sin q_α
//! U₂(q) =  Σ g_α² sin⁻² q_α
//! ```
//!
//! Gradients and Hessians are assembled analytically from `α` and `α ⊗ α`,
//! so Hessians are symmetric by construction.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::rational;
use crate::rootsys::{Coupling, RootSystemData, RootVec};

/// A point of the rank-dimensional configuration space, in the Euclidean
/// coordinates of [`RootSystemData::embed`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigPoint {
    pub coords: Vec<f64>,
}

impl ConfigPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn origin(rank: usize) -> Self {
        Self { coords: vec![0.0; rank] }
    }

    pub fn distance(&self, other: &ConfigPoint) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    pub fn offset(&self, direction: &[f64], t: f64) -> ConfigPoint {
        ConfigPoint { coords: self.coords.iter().zip(direction).map(|(x, d)| x + t * d).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PotentialKind {
    U1,
    U2,
}

/// How the U₂ coupling is derived from the U₁ exponents κ.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CouplingMap {
    /// `h_α = κ_α √((α, α)/2)`: U₂(h) = ½‖∇U₁(κ)‖² + const.
    #[default]
    LengthCorrected,
    /// `h_α² = κ_α(κ_α − 1)` (clamped at zero), no length factor.
    KappaKappaMinusOne,
    /// `h = κ`.
    Identity,
}

/// `q_α = (α, q)`.
pub fn pairing(q: &ConfigPoint, alpha: &RootVec) -> f64 {
    dot(&alpha.coords, &q.coords)
}

/// Strict membership in `{q : (q, α_j) > 0, (q, δ) < π}`.
pub fn in_alcove(rs: &RootSystemData, q: &ConfigPoint) -> bool {
    rs.simple_roots().iter().all(|a| pairing(q, a) > 0.0) && pairing(q, rs.highest_root()) < PI
}

/// `(π / 2h) Σ_j λ̂_j` with `h` the height of the highest root; every simple
/// pairing equals `π/2h` and the highest-root pairing equals `π/2`.
pub fn interior_seed(rs: &RootSystemData) -> ConfigPoint {
    let (_, hat) = rs.fundamental_weights();
    let l = rs.rank();
    let mut w = vec![rational::qi(0); l];
    for lam in hat {
        for (acc, x) in w.iter_mut().zip(lam) {
            *acc += *x;
        }
    }
    let scale = PI / (2.0 * rs.highest_root_height() as f64);
    let coords = rs.to_coords(&w).into_iter().map(|x| x * scale).collect();
    ConfigPoint { coords }
}

/// Pairings with every positive root, or `DomainError` if one leaves `(0, π)`.
fn interior_pairings(rs: &RootSystemData, q: &ConfigPoint) -> Result<Vec<f64>> {
    rs.positive_roots()
        .iter()
        .map(|a| {
            let p = pairing(q, a);
            if p > 0.0 && p < PI && p.sin() > 0.0 {
                Ok(p)
            } else {
                Err(Error::DomainError { pairing: p })
            }
        })
        .collect()
}

/// Value, gradient and Hessian of one potential at one point.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub hessian: Matrix,
}

/// Per-root scalar profile: value, first and second derivative in `q_α`.
fn profile(kind: PotentialKind, g: f64, x: f64) -> (f64, f64, f64) {
    let (s, c) = x.sin_cos();
    match kind {
        PotentialKind::U1 => (-g * s.ln(), -g * c / s, g / (s * s)),
        PotentialKind::U2 => {
            let g2 = g * g;
            let inv2 = 1.0 / (s * s);
            (g2 * inv2, -2.0 * g2 * c * inv2 / s, g2 * (6.0 * c * c * inv2 * inv2 + 2.0 * inv2))
        }
    }
}

pub fn evaluate(kind: PotentialKind, rs: &RootSystemData, g: &Coupling, q: &ConfigPoint) -> Result<Evaluation> {
    let l = rs.rank();
    let pairings = interior_pairings(rs, q)?;
    let mut value = 0.0;
    let mut gradient = vec![0.0; l];
    let mut hessian = Matrix::zeros(l, l);
    for (alpha, &x) in rs.positive_roots().iter().zip(&pairings) {
        let ga = *g.for_root(alpha);
        if ga == 0.0 {
            continue;
        }
        let (f, df, d2f) = profile(kind, ga, x);
        value += f;
        for (acc, a) in gradient.iter_mut().zip(&alpha.coords) {
            *acc += df * a;
        }
        hessian.add_outer(d2f, &alpha.coords);
    }
    Ok(Evaluation { value, gradient, hessian })
}

pub fn value(kind: PotentialKind, rs: &RootSystemData, g: &Coupling, q: &ConfigPoint) -> Result<f64> {
    let pairings = interior_pairings(rs, q)?;
    Ok(rs
        .positive_roots()
        .iter()
        .zip(&pairings)
        .filter(|(a, _)| *g.for_root(a) != 0.0)
        .map(|(a, &x)| profile(kind, *g.for_root(a), x).0)
        .sum())
}

pub fn gradient(kind: PotentialKind, rs: &RootSystemData, g: &Coupling, q: &ConfigPoint) -> Result<Vec<f64>> {
    Ok(evaluate(kind, rs, g, q)?.gradient)
}

pub fn hessian(kind: PotentialKind, rs: &RootSystemData, g: &Coupling, q: &ConfigPoint) -> Result<Matrix> {
    Ok(evaluate(kind, rs, g, q)?.hessian)
}

pub fn u1(rs: &RootSystemData, g: &Coupling, q: &ConfigPoint) -> Result<f64> {
    value(PotentialKind::U1, rs, g, q)
}

pub fn grad_u1(rs: &RootSystemData, g: &Coupling, q: &ConfigPoint) -> Result<Vec<f64>> {
    gradient(PotentialKind::U1, rs, g, q)
}

pub fn hess_u1(rs: &RootSystemData, g: &Coupling, q: &ConfigPoint) -> Result<Matrix> {
    hessian(PotentialKind::U1, rs, g, q)
}

pub fn u2(rs: &RootSystemData, g: &Coupling, q: &ConfigPoint) -> Result<f64> {
    value(PotentialKind::U2, rs, g, q)
}

pub fn grad_u2(rs: &RootSystemData, g: &Coupling, q: &ConfigPoint) -> Result<Vec<f64>> {
    gradient(PotentialKind::U2, rs, g, q)
}

pub fn hess_u2(rs: &RootSystemData, g: &Coupling, q: &ConfigPoint) -> Result<Matrix> {
    hessian(PotentialKind::U2, rs, g, q)
}

/// `log Ψ₀ = Σ κ_α log sin q_α`.
pub fn psi0_log(rs: &RootSystemData, kappa: &Coupling, q: &ConfigPoint) -> Result<f64> {
    let pairings = interior_pairings(rs, q)?;
    Ok(rs.positive_roots().iter().zip(&pairings).map(|(a, &x)| kappa.for_root(a) * x.sin().ln()).sum())
}

pub fn matched_coupling(rs: &RootSystemData, kappa: &Coupling) -> Coupling {
    matched_coupling_with(rs, kappa, CouplingMap::LengthCorrected)
}

pub fn matched_coupling_with(rs: &RootSystemData, kappa: &Coupling, map: CouplingMap) -> Coupling {
    match map {
        CouplingMap::Identity => *kappa,
        CouplingMap::KappaKappaMinusOne => kappa.map(|k| (k * (k - 1.0)).max(0.0).sqrt()),
        CouplingMap::LengthCorrected => {
            let short_sq = rs.positive_roots().iter().map(|r| r.sq_length).min().map_or(2.0, |x| rational::to_f64(&x));
            let long_sq = rational::to_f64(&rs.long_sq_length());
            Coupling { long: kappa.long * (long_sq / 2.0).sqrt(), short: kappa.short * (short_sq / 2.0).sqrt() }
        }
    }
}
