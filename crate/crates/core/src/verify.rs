//! Checks of the small-oscillation spectrum against the Weyl-vector
//! coefficients, plus the exact side identities.
//!
//! Two expansions of `2ρ(g) = Σ_{α>0} g_α α` are kept apart throughout:
//! `r_root` (in simple roots) feeds the degree/center identity, `r_coroot`
//! (in simple coroots) is what the Hessian spectrum is compared with.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equilibrium::{equilibrium_report_with, minimize_from, EquilibriumResult, MinimizeOptions};
use crate::error::{Error, Result};
use crate::potentials::{interior_seed, matched_coupling_with, pairing, ConfigPoint, CouplingMap, PotentialKind};
use crate::rational::{self, qi, Scalar, Q};
use crate::rootsys::{Coupling, Family, RootSystemData, RootSystemId};

pub const DEFAULT_TOL: f64 = 1e-8;

/// A1–A5, B2–B4, C3, D4, E6, F4, G2.
pub fn default_suite() -> Vec<RootSystemId> {
    let mut out = Vec::new();
    for l in 1..=5 {
        out.push((Family::A, l));
    }
    for l in 2..=4 {
        out.push((Family::B, l));
    }
    out.extend([(Family::C, 3), (Family::D, 4), (Family::E, 6), (Family::F, 4), (Family::G, 2)]);
    out.into_iter().map(|(f, l)| RootSystemId::new(f, l).expect("suite ids are valid")).collect()
}

/// The default suite plus E7 and E8.
pub fn deep_suite() -> Vec<RootSystemId> {
    let mut out = default_suite();
    out.push(RootSystemId::new(Family::E, 7).unwrap());
    out.push(RootSystemId::new(Family::E, 8).unwrap());
    out
}

/// Which expansion of 2ρ(g) the spectrum must match for a check to pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PredictionBasis {
    #[default]
    Coroot,
    Root,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub tol: f64,
    pub basis: PredictionBasis,
    pub coupling_map: CouplingMap,
    pub minimize: MinimizeOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            basis: PredictionBasis::Coroot,
            coupling_map: CouplingMap::LengthCorrected,
            minimize: MinimizeOptions::default(),
        }
    }
}

impl VerifyOptions {
    /// Root-basis prediction and equal raw couplings for both potentials.
    pub fn literal() -> Self {
        Self { basis: PredictionBasis::Root, coupling_map: CouplingMap::Identity, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    pub system: RootSystemId,
    pub g: Coupling,
    pub eigs_computed: Vec<f64>,
    pub predicted_coroot: Vec<f64>,
    pub predicted_root: Vec<f64>,
    pub max_rel_err_coroot: f64,
    pub max_rel_err_root: f64,
    pub basis: PredictionBasis,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: i128,
    pub rhs: i128,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacdonaldCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationCheck {
    pub c: f64,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceCheck {
    pub distance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapCheck {
    pub linear_parts: Vec<Q>,
    pub predicted: Vec<Q>,
    pub pass: bool,
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn max_rel_err(computed: &[f64], predicted: &[f64]) -> f64 {
    if computed.len() != predicted.len() {
        return f64::INFINITY;
    }
    computed
        .iter()
        .zip(predicted)
        .map(|(c, p)| if *p == 0.0 { (c - p).abs() } else { ((c - p) / p).abs() })
        .fold(0.0, f64::max)
}

/// Sorted `{2 r∨_j(g)}` and `{2 r_j(g)}`.
pub fn predicted_frequencies_sq(rs: &RootSystemData, g: &Coupling) -> (Vec<f64>, Vec<f64>) {
    let (_, rc) = rs.rho_and_r(g);
    let coroot = sorted(rc.r_coroot.iter().map(|r| 2.0 * r).collect());
    let root = sorted(rc.r_root.iter().map(|r| 2.0 * r).collect());
    (coroot, root)
}

pub fn theorem_from_equilibrium(
    rs: &RootSystemData,
    g: &Coupling,
    eq: &EquilibriumResult,
    tol: f64,
    basis: PredictionBasis,
) -> TheoremCheck {
    let (predicted_coroot, predicted_root) = predicted_frequencies_sq(rs, g);
    let max_rel_err_coroot = max_rel_err(&eq.eigs_a1, &predicted_coroot);
    let max_rel_err_root = max_rel_err(&eq.eigs_a1, &predicted_root);
    let operative = match basis {
        PredictionBasis::Coroot => max_rel_err_coroot,
        PredictionBasis::Root => max_rel_err_root,
    };
    TheoremCheck {
        system: rs.id(),
        g: *g,
        eigs_computed: eq.eigs_a1.clone(),
        predicted_coroot,
        predicted_root,
        max_rel_err_coroot,
        max_rel_err_root,
        basis,
        pass: operative <= tol,
    }
}

/// Eigenvalues of `a⁽¹⁾` against `{2 r∨_j(g)}`; the root-basis comparison is
/// recorded alongside for diagnosis.
pub fn check_theorem(rs: &RootSystemData, g: &Coupling, tol: f64) -> Result<TheoremCheck> {
    let eq = equilibrium_report_with(rs, g, &MinimizeOptions::default(), CouplingMap::LengthCorrected)?;
    Ok(theorem_from_equilibrium(rs, g, &eq, tol, PredictionBasis::Coroot))
}

/// `∏ (d_j − 1) d_j = z · ∏ r_k` with `r_k` the simple-root coefficients of
/// 2ρ at unit coupling. Exact integers.
pub fn check_identity(rs: &RootSystemData) -> IdentityCheck {
    let lhs = rs.degrees().iter().try_fold(1i128, |acc, &d| acc.checked_mul(i128::from(d) * (i128::from(d) - 1)));
    let (_, rc) = rs.rho_and_r(&Coupling::uniform(qi(1)));
    let rhs = rc.r_root.iter().try_fold(i128::from(rs.center_order()), |acc, r| {
        if r.is_integer() {
            acc.checked_mul(i128::from(r.to_integer()))
        } else {
            None
        }
    });
    match (lhs, rhs) {
        (Some(lhs), Some(rhs)) => IdentityCheck { lhs, rhs, pass: lhs == rhs },
        _ => IdentityCheck { lhs: lhs.unwrap_or(-1), rhs: rhs.unwrap_or(-1), pass: false },
    }
}

/// Closed-form maximum of `∏ sin² q_α` at unit exponents:
/// `|W| / 2^{|R|} · ∏ (d_j/(d_j − 1))^{d_j − 1}`.
pub fn macdonald_rhs(rs: &RootSystemData) -> f64 {
    let mut value = rs.weyl_order() as f64 * 0.5f64.powi(rs.num_roots() as i32);
    for &d in rs.degrees() {
        let d = f64::from(d);
        value *= (d / (d - 1.0)).powf(d - 1.0);
    }
    value
}

pub fn check_macdonald(rs: &RootSystemData, q_bar: &ConfigPoint, tol: f64) -> Result<MacdonaldCheck> {
    let mut lhs = 1.0;
    for a in rs.positive_roots() {
        let x = pairing(q_bar, a);
        if !(x > 0.0 && x < std::f64::consts::PI) {
            return Err(Error::DomainError { pairing: x });
        }
        lhs *= x.sin().powi(2);
    }
    let rhs = macdonald_rhs(rs);
    let rel_err = (lhs - rhs).abs() / rhs;
    Ok(MacdonaldCheck { lhs, rhs, rel_err, pass: rel_err <= tol })
}

/// Quantum numbers `m` (one per simple root) and exponents `κ` for the
/// trigonometric spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumQuery<T = Q> {
    pub m: Vec<u64>,
    pub kappa: Coupling<T>,
}

/// `E_m = 2 (λ_m + ρ(κ), λ_m + ρ(κ))` with `λ_m = Σ m_j λ_j` built from the
/// weights dual to the simple coroots.
pub fn spectrum<T: Scalar>(rs: &RootSystemData, query: &SpectrumQuery<T>) -> T {
    let l = rs.rank();
    assert_eq!(query.m.len(), l, "one quantum number per simple root");
    let (lam, _) = rs.fundamental_weights();
    let (rho, _) = rs.rho_and_r(&query.kappa);
    let mut v = rho;
    for (mj, lj) in query.m.iter().zip(lam) {
        let mj = T::from_q(qi(*mj as i64));
        for (acc, x) in v.iter_mut().zip(lj) {
            *acc = acc.clone() + mj.clone() * T::from_q(*x);
        }
    }
    let mut norm_sq = T::zero();
    for i in 0..l {
        for j in 0..l {
            norm_sq = norm_sq + v[i].clone() * T::from_q(rs.gram()[i][j]) * v[j].clone();
        }
    }
    T::from_q(qi(2)) * norm_sq
}

/// Linear parts of the one-quantum gaps, `E_{e_j} − E_0 − 2(λ_j, λ_j)`,
/// against `2 r∨_j(κ)`. Exact.
pub fn check_gap_consistency(rs: &RootSystemData, kappa: &Coupling<Q>) -> GapCheck {
    let l = rs.rank();
    let (lam, _) = rs.fundamental_weights();
    let e0 = spectrum(rs, &SpectrumQuery { m: vec![0; l], kappa: *kappa });
    let linear_parts: Vec<Q> = (0..l)
        .map(|j| {
            let mut m = vec![0; l];
            m[j] = 1;
            let ej = spectrum(rs, &SpectrumQuery { m, kappa: *kappa });
            ej - e0 - qi(2) * rs.inner(&lam[j], &lam[j])
        })
        .collect();
    let (_, rc) = rs.rho_and_r(kappa);
    let predicted: Vec<Q> = rc.r_coroot.iter().map(|r| qi(2) * *r).collect();
    let pass = linear_parts == predicted;
    GapCheck { linear_parts, predicted, pass }
}

/// Every check for one system.
#[derive(Debug, Clone)]
pub struct SystemChecks {
    pub equilibrium: EquilibriumResult,
    pub theorem: TheoremCheck,
    pub identity: IdentityCheck,
    pub macdonald: MacdonaldCheck,
    pub relation13: RelationCheck,
    pub coincidence: CoincidenceCheck,
    pub gap: GapCheck,
}

impl SystemChecks {
    pub fn pass(&self) -> bool {
        self.theorem.pass
            && self.identity.pass
            && self.macdonald.pass
            && self.relation13.pass
            && self.coincidence.pass
            && self.gap.pass
    }
}

#[derive(Debug, Clone)]
pub struct SystemRecord {
    pub system: String,
    pub rank: usize,
    pub outcome: std::result::Result<SystemChecks, Error>,
}

impl SystemRecord {
    pub fn pass(&self) -> bool {
        self.outcome.as_ref().is_ok_and(SystemChecks::pass)
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub g: Coupling,
    pub options: VerifyOptions,
    pub records: Vec<SystemRecord>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.records.iter().all(SystemRecord::pass)
    }
}

/// All checks for one built system.
pub fn verify_system(rs: &RootSystemData, g: &Coupling, opts: &VerifyOptions) -> Result<SystemChecks> {
    let equilibrium = equilibrium_report_with(rs, g, &opts.minimize, opts.coupling_map)?;
    let theorem = theorem_from_equilibrium(rs, g, &equilibrium, opts.tol, opts.basis);
    let identity = check_identity(rs);

    let unit = Coupling::uniform(1.0);
    let macdonald = if *g == unit {
        check_macdonald(rs, &equilibrium.q_bar, opts.tol)?
    } else {
        let q1 = minimize_from(rs, &unit, PotentialKind::U1, &interior_seed(rs), &opts.minimize)?;
        check_macdonald(rs, &q1.point, opts.tol)?
    };

    let c_ok = opts.coupling_map != CouplingMap::LengthCorrected || (equilibrium.c_fit - 1.0).abs() <= opts.tol;
    let relation13 = RelationCheck {
        c: equilibrium.c_fit,
        residual: equilibrium.relation_residual,
        pass: equilibrium.relation_residual <= opts.tol && c_ok,
    };

    let h = matched_coupling_with(rs, g, opts.coupling_map);
    let u2_min = minimize_from(rs, &h, PotentialKind::U2, &interior_seed(rs), &opts.minimize)?;
    let distance = u2_min.point.distance(&equilibrium.q_bar);
    let coincidence = CoincidenceCheck { distance, pass: distance <= opts.tol };

    let kappa = Coupling::new(
        rational::from_f64(g.long).ok_or_else(|| Error::InvalidCoupling(format!("{}", g.long)))?,
        rational::from_f64(g.short).ok_or_else(|| Error::InvalidCoupling(format!("{}", g.short)))?,
    );
    let gap = check_gap_consistency(rs, &kappa);

    Ok(SystemChecks { equilibrium, theorem, identity, macdonald, relation13, coincidence, gap })
}

/// Runs every check on each system. Failures are recorded per system; the
/// output order matches the input order.
pub fn run_all(systems: &[RootSystemId], g: &Coupling, opts: &VerifyOptions) -> VerificationReport {
    let records = systems
        .par_iter()
        .map(|id| SystemRecord {
            system: id.to_string(),
            rank: id.rank(),
            outcome: RootSystemData::new(*id).and_then(|rs| verify_system(&rs, g, opts)),
        })
        .collect();
    VerificationReport { g: *g, options: *opts, records }
}

/// Like [`run_all`] but from spec strings; unparsable or out-of-range entries
/// become error records.
pub fn run_all_specs(specs: &[&str], rank_ceiling: usize, g: &Coupling, opts: &VerifyOptions) -> VerificationReport {
    let records = specs
        .par_iter()
        .map(|spec| match RootSystemId::parse_with_ceiling(spec, rank_ceiling) {
            Ok(id) => SystemRecord {
                system: id.to_string(),
                rank: id.rank(),
                outcome: RootSystemData::new(id).and_then(|rs| verify_system(&rs, g, opts)),
            },
            Err(e) => SystemRecord { system: spec.trim().to_uppercase(), rank: 0, outcome: Err(e) },
        })
        .collect();
    VerificationReport { g: *g, options: *opts, records }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn sys(f: Family, l: usize) -> RootSystemData {
        RootSystemData::new(RootSystemId::new(f, l).unwrap()).unwrap()
    }

    #[test]
    fn theorem_examples() {
        let g = Coupling::uniform(1.0);
        let t = check_theorem(&sys(Family::A, 2), &g, DEFAULT_TOL).unwrap();
        assert!(t.pass);
        assert_eq!(t.predicted_coroot, vec![4.0, 4.0]);

        let t = check_theorem(&sys(Family::B, 2), &g, DEFAULT_TOL).unwrap();
        assert!(t.pass);
        assert_eq!(t.predicted_coroot, vec![4.0, 6.0]);
        assert_eq!(t.predicted_root, vec![6.0, 8.0]);
        assert!(t.max_rel_err_root > 0.1);

        let t = check_theorem(&sys(Family::G, 2), &g, DEFAULT_TOL).unwrap();
        assert!((t.predicted_coroot[0] - 20.0 / 3.0).abs() < 1e-15);
        assert_eq!(t.predicted_coroot[1], 12.0);
        assert!(t.pass, "{t:?}");
    }

    #[test]
    fn identity_examples() {
        assert_eq!(check_identity(&sys(Family::A, 2)), IdentityCheck { lhs: 12, rhs: 12, pass: true });
        assert_eq!(check_identity(&sys(Family::B, 2)), IdentityCheck { lhs: 24, rhs: 24, pass: true });
        assert_eq!(check_identity(&sys(Family::G, 2)), IdentityCheck { lhs: 60, rhs: 60, pass: true });
    }

    #[test]
    fn macdonald_examples() {
        let g = Coupling::uniform(1.0);
        let opts = MinimizeOptions::default();
        for (f, l, want) in [(Family::A, 1, 1.0), (Family::A, 2, 27.0 / 64.0), (Family::B, 2, 4.0 / 27.0)] {
            let rs = sys(f, l);
            let q = crate::equilibrium::minimize(&rs, &g, PotentialKind::U1, &opts).unwrap();
            let m = check_macdonald(&rs, &q, DEFAULT_TOL).unwrap();
            assert!(m.pass);
            assert!((m.rhs - want).abs() < 1e-15 * want, "{} vs {want}", m.rhs);
            assert!((m.lhs - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn spectrum_examples() {
        let a1 = sys(Family::A, 1);
        let e = spectrum(&a1, &SpectrumQuery { m: vec![1], kappa: Coupling::uniform(qi(2)) });
        assert_eq!(e, qi(9));
        for n in 0..6u64 {
            let e = spectrum(&a1, &SpectrumQuery { m: vec![n], kappa: Coupling::uniform(qi(1)) });
            assert_eq!(e, qi((n as i64 + 1).pow(2)));
        }
        let b2 = sys(Family::B, 2);
        let kappa = Coupling::new(q(3, 2), qi(1));
        let (rho, _) = b2.rho_and_r(&kappa);
        let e0 = spectrum(&b2, &SpectrumQuery { m: vec![0, 0], kappa });
        assert_eq!(e0, qi(2) * b2.inner(&rho, &rho));
        let ef = spectrum(&b2, &SpectrumQuery { m: vec![0, 0], kappa: kappa.to_f64() });
        assert!((ef - rational::to_f64(&e0)).abs() < 1e-14);
    }

    #[test]
    fn gap_examples() {
        let gap = check_gap_consistency(&sys(Family::A, 1), &Coupling::uniform(qi(2)));
        assert_eq!(gap.linear_parts, vec![qi(4)]);
        assert!(gap.pass);
        let gap = check_gap_consistency(&sys(Family::B, 2), &Coupling::uniform(qi(1)));
        assert_eq!(gap.linear_parts, vec![qi(6), qi(4)]);
        assert!(gap.pass);
        let gap = check_gap_consistency(&sys(Family::A, 2), &Coupling::uniform(qi(1)));
        assert_eq!(gap.linear_parts, vec![qi(4), qi(4)]);
    }

    #[test]
    fn run_all_edge_cases() {
        let opts = VerifyOptions::default();
        let g = Coupling::uniform(1.0);
        let empty = run_all(&[], &g, &opts);
        assert!(empty.records.is_empty() && empty.pass());

        let report = run_all_specs(&["A2", "B9", "G2"], 8, &g, &opts);
        assert_eq!(report.records.len(), 3);
        assert!(report.records[0].pass());
        assert!(matches!(report.records[1].outcome, Err(Error::UnsupportedRank { .. })));
        assert!(report.records[2].pass());
        assert!(!report.pass());
    }

    #[test]
    fn literal_mode_flags_b2() {
        let rs = sys(Family::B, 2);
        let checks = verify_system(&rs, &Coupling::uniform(1.0), &VerifyOptions::literal()).unwrap();
        assert!(!checks.theorem.pass);
        assert!(!checks.coincidence.pass);
        let simply_laced =
            verify_system(&sys(Family::A, 3), &Coupling::uniform(1.0), &VerifyOptions::literal()).unwrap();
        assert!(simply_laced.pass());
    }
}
