//! Irreducible reduced root systems, built exactly from Bourbaki-labelled
//! Cartan matrices.
//!
//! Long roots have squared length 2. Short roots therefore have squared length
//! 1 in types B, C, F and 2/3 in type G. Node ordering follows Bourbaki:
//!
//! | family | short simple roots | notes                                  |
//! |--------|--------------------|----------------------------------------|
//! | A_l    | none               | chain α₁ – … – α_l                     |
//! | B_l    | α_l                | double bond α_{l−1} ⇒ α_l              |
//! | C_l    | α₁ … α_{l−1}       | double bond α_{l−1} ⇐ α_l              |
//! | D_l    | none               | α_{l−1}, α_l both attached to α_{l−2}  |
//! | E_l    | none               | chain 1–3–4–5–…, α₂ attached to α₄     |
//! | F₄     | α₃, α₄             | double bond α₂ ⇒ α₃                    |
//! | G₂     | α₁                 | triple bond                            |
//!
//! All root, weight and Weyl-vector arithmetic is exact. The only floating
//! point quantity is the Euclidean embedding (`embed`), a Cholesky factor of
//! the Gram matrix, which the potentials and the minimizer work in.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{self, bilinear, bilinear_int, q, qi, QMatrix, Scalar, Q};

/// Classical families are built up to this rank unless a caller asks for more.
pub const DEFAULT_RANK_CEILING: usize = 8;
/// Above this, |W| and the degree products no longer fit the integer types used.
pub const MAX_RANK_CEILING: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Family and rank of an irreducible reduced root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemId {
    family: Family,
    rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        Self::with_rank_ceiling(family, rank, DEFAULT_RANK_CEILING)
    }

    /// Like [`RootSystemId::new`] but with a configurable ceiling for the
    /// classical families (capped at [`MAX_RANK_CEILING`]).
    pub fn with_rank_ceiling(family: Family, rank: usize, ceiling: usize) -> Result<Self> {
        let ceiling = ceiling.min(MAX_RANK_CEILING);
        let ok = match family {
            Family::A => (1..=ceiling).contains(&rank),
            Family::B | Family::C => (2..=ceiling).contains(&rank),
            Family::D => (4..=ceiling).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::UnsupportedRank { family, rank })
        }
    }

    /// Parses `"B3"`, `"e8"`, … (family letter then decimal rank).
    pub fn parse_with_ceiling(spec: &str, ceiling: usize) -> Result<Self> {
        let spec = spec.trim();
        let mut chars = spec.chars();
        let first = chars.next().ok_or_else(|| Error::InvalidSpec(spec.to_string()))?;
        let family = Family::from_letter(first).ok_or_else(|| Error::UnknownFamily(spec.to_string()))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidSpec(spec.to_string()));
        }
        let rank = digits.parse().map_err(|_| Error::InvalidSpec(spec.to_string()))?;
        Self::with_rank_ceiling(family, rank, ceiling)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl FromStr for RootSystemId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_ceiling(s, DEFAULT_RANK_CEILING)
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Normalization {
    /// Long roots have (α, α) = 2.
    #[default]
    LongSq2,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::LongSq2 => "long_sq_2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthClass {
    Long,
    Short,
}

/// A root, stored both by its integer coefficients in the simple-root basis
/// and by its Euclidean coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RootVec {
    pub simple_coeffs: Vec<i64>,
    pub coords: Vec<f64>,
    pub sq_length: Q,
    pub length_class: LengthClass,
}

impl RootVec {
    pub fn height(&self) -> i64 {
        self.simple_coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.simple_coeffs.iter().all(|&n| n >= 0) && self.simple_coeffs.iter().any(|&n| n > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.simple_coeffs.iter().all(|&n| n <= 0) && self.simple_coeffs.iter().any(|&n| n < 0)
    }

    pub fn negated(&self) -> RootVec {
        RootVec {
            simple_coeffs: self.simple_coeffs.iter().map(|n| -n).collect(),
            coords: self.coords.iter().map(|x| -x).collect(),
            sq_length: self.sq_length,
            length_class: self.length_class,
        }
    }

    /// Coefficients as exact rationals in the simple-root basis.
    pub fn as_rational(&self) -> Vec<Q> {
        self.simple_coeffs.iter().map(|&n| qi(n)).collect()
    }
}

/// One coupling value per root-length class. For simply-laced systems every
/// root is long and `short` is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coupling<T = f64> {
    pub long: T,
    pub short: T,
}

impl<T: Clone> Coupling<T> {
    pub fn new(long: T, short: T) -> Self {
        Self { long, short }
    }

    pub fn uniform(value: T) -> Self {
        Self { long: value.clone(), short: value }
    }

    pub fn for_class(&self, class: LengthClass) -> &T {
        match class {
            LengthClass::Long => &self.long,
            LengthClass::Short => &self.short,
        }
    }

    pub fn for_root(&self, alpha: &RootVec) -> &T {
        self.for_class(alpha.length_class)
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Coupling<U> {
        Coupling { long: f(&self.long), short: f(&self.short) }
    }
}

impl<T: Scalar> Coupling<T> {
    pub fn to_f64(&self) -> Coupling<f64> {
        self.map(Scalar::to_f64)
    }
}

impl Coupling<f64> {
    pub fn scaled(&self, factor: f64) -> Self {
        self.map(|g| g * factor)
    }
}

/// Coefficients of 2ρ(g) in the simple roots and in the simple coroots.
#[derive(Debug, Clone, PartialEq)]
pub struct RCoefficients<T = Q> {
    pub r_root: Vec<T>,
    pub r_coroot: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantTable {
    pub degrees: Vec<u32>,
    pub weyl_order: u64,
    pub center_order: u32,
}

/// Immutable description of one root system together with every derived
/// quantity the rest of the crate needs.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    id: RootSystemId,
    normalization: Normalization,
    cartan: Vec<Vec<i64>>,
    gram: QMatrix,
    simple_roots: Vec<RootVec>,
    positive_roots: Vec<RootVec>,
    highest_root: RootVec,
    fund_weights_coroot: Vec<Vec<Q>>,
    dual_basis_root: Vec<Vec<Q>>,
    degrees: Vec<u32>,
    weyl_order: u64,
    center_order: u32,
    num_roots: usize,
    embed: Matrix,
}

/// Bourbaki Cartan matrix, `C[i][j] = 2(α_i, α_j) / (α_j, α_j)`.
pub fn cartan_matrix(id: RootSystemId) -> Vec<Vec<i64>> {
    let l = id.rank;
    let mut c = vec![vec![0i64; l]; l];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match id.family {
        Family::A | Family::B | Family::C | Family::F => {
            for i in 0..l.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..l - 2 {
                link(i, i + 1);
            }
            link(l - 3, l - 1);
        }
        Family::E => {
            for (i, j) in [(0, 2), (2, 3), (3, 4), (1, 3)] {
                link(i, j);
            }
            for i in 4..l - 1 {
                link(i, i + 1);
            }
        }
        Family::G => link(0, 1),
    }
    match id.family {
        Family::B => c[l - 2][l - 1] = -2,
        Family::C => c[l - 1][l - 2] = -2,
        Family::F => c[1][2] = -2,
        Family::G => c[1][0] = -3,
        _ => {}
    }
    c
}

/// Squared lengths of the simple roots under the long-roots-have-length-2
/// normalization.
fn simple_sq_lengths(id: RootSystemId) -> Vec<Q> {
    let l = id.rank;
    let long = qi(2);
    let mut out = vec![long; l];
    match id.family {
        Family::B => out[l - 1] = qi(1),
        Family::C => out[..l - 1].iter_mut().for_each(|x| *x = qi(1)),
        Family::F => {
            out[2] = qi(1);
            out[3] = qi(1);
        }
        Family::G => out[0] = q(2, 3),
        _ => {}
    }
    out
}

/// |R⁺| from the classification.
pub fn expected_positive_roots(id: RootSystemId) -> usize {
    let l = id.rank;
    match id.family {
        Family::A => l * (l + 1) / 2,
        Family::B | Family::C => l * l,
        Family::D => l * (l - 1),
        Family::E => match l {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Degrees of the basic invariants, |W| and the order of the center of the
/// simply connected group, from the standard tables.
pub fn invariants_table(id: RootSystemId) -> Result<InvariantTable> {
    // re-validate: callers may hand in an id built with a larger ceiling
    RootSystemId::with_rank_ceiling(id.family, id.rank, MAX_RANK_CEILING)?;
    let l = id.rank as u32;
    let l64 = u64::from(l);
    let (degrees, weyl_order, center_order): (Vec<u32>, u64, u32) = match id.family {
        Family::A => ((2..=l + 1).collect(), factorial(l64 + 1), l + 1),
        Family::B => ((1..=l).map(|j| 2 * j).collect(), (1u64 << l) * factorial(l64), 2),
        Family::C => ((1..=l).map(|j| 2 * j).collect(), (1u64 << l) * factorial(l64), 2),
        Family::D => {
            let mut d: Vec<u32> = (1..l).map(|j| 2 * j).collect();
            d.push(l);
            d.sort_unstable();
            (d, (1u64 << (l - 1)) * factorial(l64), 4)
        }
        Family::E => match l {
            6 => (vec![2, 5, 6, 8, 9, 12], 51_840, 3),
            7 => (vec![2, 6, 8, 10, 12, 14, 18], 2_903_040, 2),
            _ => (vec![2, 8, 12, 14, 18, 20, 24, 30], 696_729_600, 1),
        },
        Family::F => (vec![2, 6, 8, 12], 1152, 1),
        Family::G => (vec![2, 6], 12, 1),
    };
    let product: u64 = degrees.iter().map(|&d| u64::from(d)).product();
    if product != weyl_order {
        return Err(Error::InconsistentTable {
            system: id.to_string(),
            detail: format!("product of degrees {product} != |W| = {weyl_order}"),
        });
    }
    let exponent_sum: usize = degrees.iter().map(|&d| d as usize - 1).sum();
    if exponent_sum != expected_positive_roots(id) {
        return Err(Error::InconsistentTable {
            system: id.to_string(),
            detail: format!("sum of (d_j - 1) = {exponent_sum} != |R+|"),
        });
    }
    Ok(InvariantTable { degrees, weyl_order, center_order })
}

/// Positive roots as integer coefficient vectors, generated from the simple
/// roots by repeatedly applying simple reflections.
fn positive_root_closure(cartan: &[Vec<i64>], limit: usize) -> Option<Vec<Vec<i64>>> {
    let l = cartan.len();
    let simple: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.iter().cloned().collect();
    while let Some(beta) = queue.pop_front() {
        for k in 0..l {
            // ⟨β, α_k∨⟩ = Σ_i n_i C[i][k]
            let pairing: i64 = (0..l).map(|i| beta[i] * cartan[i][k]).sum();
            if pairing == 0 {
                continue;
            }
            let mut image = beta.clone();
            image[k] -= pairing;
            if image.iter().all(|&n| n >= 0) && image.iter().any(|&n| n > 0) && seen.insert(image.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(image);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    Some(roots)
}

/// Builds the root system `id` under the given normalization.
pub fn build_root_system(id: RootSystemId, normalization: Normalization) -> Result<RootSystemData> {
    let Normalization::LongSq2 = normalization;
    let l = id.rank;
    let cartan = cartan_matrix(id);
    let lengths = simple_sq_lengths(id);
    let gram: QMatrix = (0..l).map(|i| (0..l).map(|j| qi(cartan[i][j]) * lengths[j] / qi(2)).collect()).collect();
    for i in 0..l {
        for j in 0..i {
            if gram[i][j] != gram[j][i] {
                return Err(Error::InconsistentTable {
                    system: id.to_string(),
                    detail: format!("Gram matrix not symmetric at ({i}, {j})"),
                });
            }
        }
    }

    let expected = expected_positive_roots(id);
    let coeffs = positive_root_closure(&cartan, 2 * expected).ok_or(Error::InternalClosureError {
        system: id.to_string(),
        found: 2 * expected + 1,
        expected,
    })?;
    if coeffs.len() != expected {
        return Err(Error::InternalClosureError { system: id.to_string(), found: coeffs.len(), expected });
    }

    let gram_f =
        Matrix::from_rows(&gram.iter().map(|row| row.iter().map(rational::to_f64).collect()).collect::<Vec<_>>());
    let embed = gram_f.cholesky().ok_or(Error::InconsistentTable {
        system: id.to_string(),
        detail: "Gram matrix is not positive definite".into(),
    })?;

    let long_sq = qi(2);
    let make_root = |n: Vec<i64>| -> RootVec {
        let sq_length = bilinear_int(&n, &gram, &n);
        let coords = (0..l).map(|c| (0..l).map(|j| n[j] as f64 * embed[(j, c)]).sum()).collect();
        let length_class = if sq_length == long_sq { LengthClass::Long } else { LengthClass::Short };
        RootVec { simple_coeffs: n, coords, sq_length, length_class }
    };
    let positive_roots: Vec<RootVec> = coeffs.into_iter().map(make_root).collect();
    let simple_roots: Vec<RootVec> = positive_roots.iter().filter(|r| r.height() == 1).cloned().collect();
    let simple_roots = {
        let mut s = simple_roots;
        s.sort_by_key(|r| r.simple_coeffs.iter().position(|&n| n == 1));
        s
    };

    let max_height = positive_roots.iter().map(RootVec::height).max().unwrap_or(0);
    let tops: Vec<&RootVec> = positive_roots.iter().filter(|r| r.height() == max_height).collect();
    if tops.len() != 1 {
        return Err(Error::InconsistentTable {
            system: id.to_string(),
            detail: format!("{} roots of maximal height", tops.len()),
        });
    }
    let highest_root = tops[0].clone();

    let gram_inv = rational::inverse(&gram).ok_or(Error::SingularInput("Gram matrix"))?;
    let dual_basis_root: Vec<Vec<Q>> = gram_inv.clone();
    let fund_weights_coroot: Vec<Vec<Q>> =
        gram_inv.iter().zip(&lengths).map(|(row, len)| row.iter().map(|x| *x * *len / qi(2)).collect()).collect();

    let table = invariants_table(id)?;
    Ok(RootSystemData {
        id,
        normalization,
        cartan,
        gram,
        num_roots: 2 * positive_roots.len(),
        simple_roots,
        positive_roots,
        highest_root,
        fund_weights_coroot,
        dual_basis_root,
        degrees: table.degrees,
        weyl_order: table.weyl_order,
        center_order: table.center_order,
        embed,
    })
}

impl RootSystemData {
    pub fn new(id: RootSystemId) -> Result<Self> {
        build_root_system(id, Normalization::LongSq2)
    }

    pub fn id(&self) -> RootSystemId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn simple_roots(&self) -> &[RootVec] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive_roots
    }

    /// Positive roots followed by their negatives.
    pub fn all_roots(&self) -> Vec<RootVec> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(RootVec::negated));
        out
    }

    pub fn highest_root(&self) -> &RootVec {
        &self.highest_root
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    pub fn center_order(&self) -> u32 {
        self.center_order
    }

    pub fn num_roots(&self) -> usize {
        self.num_roots
    }

    pub fn embed(&self) -> &Matrix {
        &self.embed
    }

    pub fn is_simply_laced(&self) -> bool {
        self.positive_roots.iter().all(|r| r.length_class == LengthClass::Long)
    }

    /// Exact inner product of two vectors given in the simple-root basis.
    pub fn inner(&self, u: &[Q], v: &[Q]) -> Q {
        bilinear(u, &self.gram, v)
    }

    /// Euclidean coordinates of a vector given in the simple-root basis.
    pub fn to_coords<T: Scalar>(&self, v: &[T]) -> Vec<f64> {
        let l = self.rank();
        (0..l).map(|c| (0..l).map(|j| v[j].to_f64() * self.embed[(j, c)]).sum()).collect()
    }

    /// `2α / (α, α)` in the simple-root basis.
    pub fn coroot(&self, alpha: &RootVec) -> Vec<Q> {
        let factor = qi(2) / alpha.sq_length;
        alpha.simple_coeffs.iter().map(|&n| qi(n) * factor).collect()
    }

    /// `s_α(v) = v − (v, α∨) α`, exact, with `v` in the simple-root basis.
    pub fn reflect(&self, v: &[Q], alpha: &RootVec) -> Vec<Q> {
        let a = alpha.as_rational();
        let pairing = self.inner(v, &a) * qi(2) / alpha.sq_length;
        v.iter().zip(&a).map(|(x, y)| *x - pairing * *y).collect()
    }

    /// Floating-point reflection of Euclidean coordinates.
    pub fn reflect_coords(&self, v: &[f64], alpha: &RootVec) -> Vec<f64> {
        let sq = crate::linalg::dot(&alpha.coords, &alpha.coords);
        let pairing = 2.0 * crate::linalg::dot(v, &alpha.coords) / sq;
        v.iter().zip(&alpha.coords).map(|(x, y)| x - pairing * y).collect()
    }

    /// Looks up a root (positive or negative) by its coefficients.
    pub fn find_root(&self, coeffs: &[i64]) -> Option<RootVec> {
        if let Some(r) = self.positive_roots.iter().find(|r| r.simple_coeffs == coeffs) {
            return Some(r.clone());
        }
        let neg: Vec<i64> = coeffs.iter().map(|n| -n).collect();
        self.positive_roots.iter().find(|r| r.simple_coeffs == neg).map(RootVec::negated)
    }

    /// `(λ_j)` dual to the simple coroots and `(λ̂_j)` dual to the simple
    /// roots, both in the simple-root basis.
    pub fn fundamental_weights(&self) -> (&[Vec<Q>], &[Vec<Q>]) {
        (&self.fund_weights_coroot, &self.dual_basis_root)
    }

    /// ρ(g) = ½ Σ_{α>0} g_α α in the simple-root basis, with the expansion
    /// coefficients of 2ρ(g) in simple roots and in simple coroots.
    pub fn rho_and_r<T: Scalar>(&self, g: &Coupling<T>) -> (Vec<T>, RCoefficients<T>) {
        let l = self.rank();
        let mut r_root = vec![T::zero(); l];
        for alpha in &self.positive_roots {
            let ga = g.for_root(alpha).clone();
            for (acc, &n) in r_root.iter_mut().zip(&alpha.simple_coeffs) {
                if n != 0 {
                    *acc = acc.clone() + ga.clone() * T::from_q(qi(n));
                }
            }
        }
        let half = T::from_q(q(1, 2));
        let rho = r_root.iter().map(|r| r.clone() * half.clone()).collect();
        let r_coroot =
            r_root.iter().zip(&self.simple_roots).map(|(r, a)| r.clone() * T::from_q(a.sq_length / qi(2))).collect();
        (rho, RCoefficients { r_root, r_coroot })
    }

    /// Σ_j n_j(δ), the height of the highest root.
    pub fn highest_root_height(&self) -> i64 {
        self.highest_root.height()
    }

    /// Squared length of the long roots.
    pub fn long_sq_length(&self) -> Q {
        self.positive_roots.iter().map(|r| r.sq_length).max().unwrap_or_else(Q::one)
    }

    /// True iff `coupling` is positive on at least one length class present.
    pub fn has_positive_coupling(&self, g: &Coupling<f64>) -> bool {
        self.positive_roots.iter().any(|r| *g.for_root(r) > 0.0)
    }

    /// Structural sanity check on a freshly built system; used by tests and
    /// by `verify`.
    pub fn check_structure(&self) -> std::result::Result<(), String> {
        let l = self.rank();
        for i in 0..l {
            for j in 0..l {
                let c = qi(2) * self.gram[i][j] / self.gram[j][j];
                if c != qi(self.cartan[i][j]) {
                    return Err(format!("Cartan entry ({i},{j}) does not match Gram data"));
                }
            }
        }
        let roots = self.all_roots();
        let keys: HashSet<&Vec<i64>> = roots.iter().map(|r| &r.simple_coeffs).collect();
        for alpha in &roots {
            for beta in &roots {
                let image = self.reflect(&beta.as_rational(), alpha);
                if !image.iter().all(|x| x.is_integer()) {
                    return Err(format!(
                        "non-integral reflection of {:?} in {:?}",
                        beta.simple_coeffs, alpha.simple_coeffs
                    ));
                }
                let image: Vec<i64> = image.iter().map(|x| x.to_integer()).collect();
                if !keys.contains(&image) {
                    return Err(format!(
                        "reflection closure fails for {:?} in {:?}",
                        beta.simple_coeffs, alpha.simple_coeffs
                    ));
                }
                let cartan_int = qi(2) * self.inner(&alpha.as_rational(), &beta.as_rational()) / beta.sq_length;
                if !cartan_int.is_integer() {
                    return Err("non-integral Cartan pairing".into());
                }
            }
        }
        if self.positive_roots.len() != expected_positive_roots(self.id) {
            return Err("wrong number of positive roots".into());
        }
        let delta = &self.highest_root.simple_coeffs;
        for alpha in &self.positive_roots {
            if alpha.simple_coeffs.iter().zip(delta).any(|(a, d)| d - a < 0) {
                return Err(format!("highest root does not dominate {:?}", alpha.simple_coeffs));
            }
            if bilinear_int(&alpha.simple_coeffs, &self.gram, &alpha.simple_coeffs) != alpha.sq_length {
                return Err("sq_length mismatch".into());
            }
        }
        Ok(())
    }
}
