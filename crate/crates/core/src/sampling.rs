//! Reproducible random points inside the Weyl alcove.
//!
//! The alcove is the simplex with vertices `0` and `π λ̂_j / n_j(δ)`.
//! Points are drawn uniformly on it through Dirichlet(1, …, 1) barycentric
//! weights, then kept only if every weight is at least `margin` times the
//! centroid weight `1/(l+1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use std::f64::consts::PI;

use crate::potentials::ConfigPoint;
use crate::rootsys::RootSystemData;

pub const DEFAULT_SEED: u64 = 0x5eed_2002;
pub const SEED_ENV_VAR: &str = "WEYLMODES_SEED";
pub const DEFAULT_MARGIN: f64 = 0.2;

/// Seed from `WEYLMODES_SEED` when set and parseable, otherwise the default.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// Vertices of the alcove in Euclidean coordinates, origin first.
pub fn alcove_vertices(rs: &RootSystemData) -> Vec<Vec<f64>> {
    let (_, hat) = rs.fundamental_weights();
    let delta = &rs.highest_root().simple_coeffs;
    let mut out = vec![vec![0.0; rs.rank()]];
    for (lam, &mark) in hat.iter().zip(delta) {
        let scale = PI / mark as f64;
        out.push(rs.to_coords(lam).into_iter().map(|x| x * scale).collect());
    }
    out
}

pub struct InteriorSampler {
    rng: ChaCha8Rng,
    margin: f64,
}

impl InteriorSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_margin(seed, DEFAULT_MARGIN)
    }

    pub fn with_margin(seed: u64, margin: f64) -> Self {
        assert!((0.0..1.0).contains(&margin), "margin must lie in [0, 1)");
        Self { rng: ChaCha8Rng::seed_from_u64(seed), margin }
    }

    pub fn from_env() -> Self {
        Self::new(seed_from_env())
    }

    pub fn sample(&mut self, rs: &RootSystemData) -> ConfigPoint {
        let vertices = alcove_vertices(rs);
        self.sample_from_vertices(&vertices)
    }

    pub fn sample_many(&mut self, rs: &RootSystemData, count: usize) -> Vec<ConfigPoint> {
        let vertices = alcove_vertices(rs);
        (0..count).map(|_| self.sample_from_vertices(&vertices)).collect()
    }

    fn sample_from_vertices(&mut self, vertices: &[Vec<f64>]) -> ConfigPoint {
        let k = vertices.len();
        let floor = self.margin / k as f64;
        loop {
            let draws: Vec<f64> = (0..k).map(|_| self.rng.sample::<f64, _>(Exp1)).collect();
            let total: f64 = draws.iter().sum();
            let weights: Vec<f64> = draws.iter().map(|d| d / total).collect();
            if weights.iter().any(|&w| w < floor) {
                continue;
            }
            let mut coords = vec![0.0; vertices[0].len()];
            for (w, v) in weights.iter().zip(vertices) {
                for (c, x) in coords.iter_mut().zip(v) {
                    *c += w * x;
                }
            }
            return ConfigPoint::new(coords);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{in_alcove, pairing};
    use crate::rootsys::{Family, RootSystemId};

    #[test]
    fn vertices_sit_on_the_walls() {
        let rs = RootSystemData::new(RootSystemId::new(Family::F, 4).unwrap()).unwrap();
        let verts = alcove_vertices(&rs);
        for (j, v) in verts.iter().enumerate().skip(1) {
            let q = ConfigPoint::new(v.clone());
            assert!((pairing(&q, rs.highest_root()) - PI).abs() < 1e-12);
            for (k, a) in rs.simple_roots().iter().enumerate() {
                if k + 1 != j {
                    assert!(pairing(&q, a).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn samples_are_interior_and_reproducible() {
        let rs = RootSystemData::new(RootSystemId::new(Family::E, 8).unwrap()).unwrap();
        let a = InteriorSampler::new(7).sample_many(&rs, 50);
        let b = InteriorSampler::new(7).sample_many(&rs, 50);
        assert_eq!(a, b);
        assert!(a.iter().all(|q| in_alcove(&rs, q)));
        assert_ne!(a, InteriorSampler::new(8).sample_many(&rs, 50));
    }
}
