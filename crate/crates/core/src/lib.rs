//! Root systems, the trigonometric potentials on their Weyl alcoves, and the
//! small-oscillation spectrum at equilibrium.
//!
//! The library builds every irreducible reduced root system exactly, finds
//! the minimizer `q̄` of `U₁ = −Σ g_α log sin (α, q)` by damped Newton inside
//! the alcove, and compares the Hessian spectrum there with the coefficients
//! of `2ρ(g) = Σ_{α>0} g_α α` in the simple coroots. The same machinery checks
//! `a⁽²⁾ = c (a⁽¹⁾)²`, the degree/center identity
//! `∏ (d_j − 1) d_j = z ∏ r_k`, the closed form for `max ∏ sin² q_α`, and the
//! trigonometric quantum spectrum.
//!
//! ```
//! use weylmodes::{Coupling, MinimizeOptions, RootSystemData};
//!
//! let rs = RootSystemData::new("B2".parse().unwrap()).unwrap();
//! let eq = weylmodes::equilibrium_report(&rs, &Coupling::uniform(1.0), &MinimizeOptions::default()).unwrap();
//! assert!((eq.eigs_a1[0] - 4.0).abs() < 1e-10);
//! assert!((eq.eigs_a1[1] - 6.0).abs() < 1e-10);
//! ```

pub mod cli;
pub mod equilibrium;
pub mod error;
pub mod linalg;
pub mod potentials;
pub mod properties;
pub mod rational;
pub mod report;
pub mod rootsys;
pub mod sampling;
pub mod verify;

pub use equilibrium::{
    eigenvalues_sym, equilibrium_report, equilibrium_report_with, fit_proportionality, hessians_at, minimize,
    minimize_from, EquilibriumResult, MinimizeOptions,
};
pub use error::{Error, Result};
pub use potentials::{in_alcove, interior_seed, matched_coupling, pairing, ConfigPoint, CouplingMap, PotentialKind};
pub use rational::Q;
pub use rootsys::{
    build_root_system, invariants_table, Coupling, Family, LengthClass, Normalization, RCoefficients, RootSystemData,
    RootSystemId, RootVec,
};
pub use verify::{
    check_gap_consistency, check_identity, check_macdonald, check_theorem, run_all, spectrum, SpectrumQuery,
    VerificationReport, VerifyOptions,
};
