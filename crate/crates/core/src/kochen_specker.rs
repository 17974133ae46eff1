//! The 18-ray, 9-tetrad contextuality configuration in real 4-space and the
//! menu of nine mutually incompatible contracts built on it.
//!
//! Rays are stored as exact integer vectors with entries in {-1, 0, 1};
//! structural checks use integer arithmetic only. Projectors are normalized
//! in floating point when probabilities are needed.

use serde::{Deserialize, Serialize};

use crate::claims::PricingKernel;
use crate::error::{Error, Result};
use crate::investment::UtilityFunction;
use crate::quantum::{MaxModulus, c, CVector, DensityMatrix, HermitianOperator};
use crate::tol::Tolerances;

pub const SEARCH_RAY_LIMIT: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsRay {
    pub id: usize,
    pub components: [i8; 4],
}

impl KsRay {
    pub fn dot(&self, other: &KsRay) -> i32 {
        self.components.iter().zip(&other.components).map(|(&a, &b)| a as i32 * b as i32).sum()
    }

    pub fn norm_squared(&self) -> i32 {
        self.dot(self)
    }

    /// Equal up to an overall sign.
    pub fn same_line(&self, other: &[i8; 4]) -> bool {
        self.components == *other || self.components.iter().zip(other).all(|(&a, &b)| a == -b)
    }

    pub fn unit_vector(&self) -> CVector {
        let norm = (self.norm_squared() as f64).sqrt();
        CVector::from_iterator(4, self.components.iter().map(|&x| c(x as f64 / norm, 0.0)))
    }

    pub fn projector(&self) -> HermitianOperator {
        HermitianOperator::projector(&self.unit_vector())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsBasis {
    pub ray_ids: [usize; 4],
}

/// Rays plus the tetrads (bases) that group them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsSystem {
    pub rays: Vec<KsRay>,
    pub bases: Vec<KsBasis>,
}

impl KsSystem {
    /// Rays are numbered by position; every basis must reference existing,
    /// distinct rays.
    pub fn new(rays: Vec<[i8; 4]>, bases: Vec<[usize; 4]>) -> Result<Self> {
        for (id, r) in rays.iter().enumerate() {
            if r.iter().all(|&x| x == 0) {
                return Err(Error::InvalidSystem(format!("ray {id} is zero")));
            }
            if r.iter().any(|x| !(-1..=1).contains(x)) {
                return Err(Error::InvalidSystem(format!("ray {id} has an entry outside {{-1, 0, 1}}")));
            }
        }
        for (b, ids) in bases.iter().enumerate() {
            for (i, &id) in ids.iter().enumerate() {
                if id >= rays.len() {
                    return Err(Error::InvalidSystem(format!("basis {b} references missing ray {id}")));
                }
                if ids[..i].contains(&id) {
                    return Err(Error::InvalidSystem(format!("basis {b} repeats ray {id}")));
                }
            }
        }
        Ok(KsSystem {
            rays: rays.into_iter().enumerate().map(|(id, components)| KsRay { id, components }).collect(),
            bases: bases.into_iter().map(|ray_ids| KsBasis { ray_ids }).collect(),
        })
    }

    /// Builds a system from tetrads listed by their ray components, merging
    /// rays that agree up to sign (first appearance fixes the numbering and
    /// the stored representative).
    pub fn from_tetrads(tetrads: &[[[i8; 4]; 4]]) -> Result<Self> {
        let mut rays: Vec<[i8; 4]> = Vec::new();
        let mut bases = Vec::with_capacity(tetrads.len());
        for tetrad in tetrads {
            let mut ids = [0usize; 4];
            for (slot, v) in tetrad.iter().enumerate() {
                let negated = v.map(|x| -x);
                ids[slot] = match rays.iter().position(|r| r == v || *r == negated) {
                    Some(id) => id,
                    None => {
                        rays.push(*v);
                        rays.len() - 1
                    }
                };
            }
            bases.push(ids);
        }
        Self::new(rays, bases)
    }

    pub fn ray(&self, id: usize) -> &KsRay {
        &self.rays[id]
    }

    /// Number of bases containing each ray.
    pub fn incidence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rays.len()];
        for b in &self.bases {
            for &id in &b.ray_ids {
                counts[id] += 1;
            }
        }
        counts
    }

    /// Indices of the bases containing ray `id`.
    pub fn bases_containing(&self, id: usize) -> Vec<usize> {
        self.bases.iter().enumerate().filter(|(_, b)| b.ray_ids.contains(&id)).map(|(i, _)| i).collect()
    }

    /// Normalized projector onto the `slot`-th ray of basis `r`.
    pub fn projector(&self, r: usize, slot: usize) -> HermitianOperator {
        self.rays[self.bases[r].ray_ids[slot]].projector()
    }
}

const O: i8 = 0;
const P: i8 = 1;
const M: i8 = -1;

/// The nine tetrads, vertex by vertex clockwise from the top of the enneagon.
pub const CABELLO_TETRADS: [[[i8; 4]; 4]; 9] = [
    [[O, O, O, P], [O, P, O, O], [P, O, P, O], [P, O, M, O]],
    [[O, O, P, O], [O, P, O, O], [P, O, O, P], [P, O, O, M]],
    [[P, M, P, M], [P, M, M, P], [P, P, O, O], [O, O, P, P]],
    [[P, M, P, M], [P, P, P, P], [P, O, M, O], [O, P, O, M]],
    [[P, M, M, P], [P, P, P, P], [P, O, O, M], [O, P, M, O]],
    [[P, P, M, P], [P, P, P, M], [P, M, O, O], [O, O, P, P]],
    [[P, P, M, P], [M, P, P, P], [P, O, P, O], [O, P, O, M]],
    [[P, P, P, M], [M, P, P, P], [P, O, O, P], [O, P, M, O]],
    [[O, O, O, P], [O, O, P, O], [P, P, O, O], [P, M, O, O]],
];

pub fn cabello_system() -> KsSystem {
    KsSystem::from_tetrads(&CABELLO_TETRADS).expect("embedded tetrads are well formed")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub ok: bool,
    pub orthogonal_pairs_checked: usize,
    pub completeness_checked: usize,
    pub max_completeness_error: f64,
    pub diagnostics: Vec<String>,
}

const COMPLETENESS_TOL: f64 = 1e-12;

/// Exact pairwise orthogonality within each basis, projector completeness,
/// distinct lines, and every ray shared by exactly two bases.
pub fn verify_structure(sys: &KsSystem) -> StructureReport {
    let mut diagnostics = Vec::new();
    let mut pairs = 0;
    for (b, basis) in sys.bases.iter().enumerate() {
        for i in 0..4 {
            for j in i + 1..4 {
                pairs += 1;
                let (ri, rj) = (sys.ray(basis.ray_ids[i]), sys.ray(basis.ray_ids[j]));
                let dot = ri.dot(rj);
                if dot != 0 {
                    diagnostics.push(format!("basis {b}: rays {} and {} have dot product {dot}", ri.id, rj.id));
                }
            }
        }
    }

    let mut worst = 0.0f64;
    for r in 0..sys.bases.len() {
        let mut sum = HermitianOperator::zeros(4);
        for slot in 0..4 {
            sum = sum.add(&sys.projector(r, slot)).expect("4x4 projectors");
        }
        let err = (sum.matrix() - HermitianOperator::identity(4).matrix()).max_modulus();
        worst = worst.max(err);
        if err > COMPLETENESS_TOL {
            diagnostics.push(format!("basis {r}: projectors miss the identity by {err:e}"));
        }
    }

    for i in 0..sys.rays.len() {
        for j in i + 1..sys.rays.len() {
            if sys.rays[i].same_line(&sys.rays[j].components) {
                diagnostics.push(format!("rays {i} and {j} span the same line"));
            }
        }
    }

    for (id, count) in sys.incidence_counts().into_iter().enumerate() {
        if count != 2 {
            diagnostics.push(format!("ray {id} lies in {count} bases, expected 2"));
        }
    }

    StructureReport {
        ok: diagnostics.is_empty(),
        orthogonal_pairs_checked: pairs,
        completeness_checked: sys.bases.len(),
        max_completeness_error: worst,
        diagnostics,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColouringSearch {
    pub valid_count: u64,
    pub assignments_searched: u64,
    /// First valid assignment in increasing bitmask order; bit `i` colours ray `i`.
    pub witness: Option<Vec<bool>>,
}

/// Enumerates every {0,1} assignment to the rays and counts those giving
/// exactly one 1 in every basis.
pub fn search_colourings(sys: &KsSystem) -> Result<ColouringSearch> {
    let n = sys.rays.len();
    if n > SEARCH_RAY_LIMIT {
        return Err(Error::SearchTooLarge { rays: n, limit: SEARCH_RAY_LIMIT });
    }
    let masks: Vec<u32> = sys.bases.iter().map(|b| b.ray_ids.iter().fold(0u32, |m, &id| m | (1 << id))).collect();
    let total = 1u64 << n;
    let mut valid = 0u64;
    let mut witness = None;
    for assignment in 0..total as u32 {
        if masks.iter().all(|&m| (assignment & m).count_ones() == 1) {
            valid += 1;
            if witness.is_none() {
                witness = Some((0..n).map(|i| assignment >> i & 1 == 1).collect());
            }
        }
    }
    Ok(ColouringSearch { valid_count: valid, assignments_searched: total, witness })
}

/// Counting argument: when every ray lies in exactly two bases, the sum of
/// all per-basis totals is even, yet one-per-basis makes it the basis count.
/// Returns true when that count is odd, which rules out any colouring.
pub fn parity_certificate(sys: &KsSystem) -> Result<bool> {
    if let Some((id, count)) = sys.incidence_counts().into_iter().enumerate().find(|&(_, c)| c != 2) {
        return Err(Error::Incidence(format!("ray {id} lies in {count} bases")));
    }
    if sys.bases.len().is_multiple_of(2) {
        return Err(Error::Incidence(format!("{} bases is even", sys.bases.len())));
    }
    Ok(true)
}

/// Nine draft contracts, one per basis, on a single four-level system.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractMenu {
    pub system: KsSystem,
    pub payouts: Vec<[f64; 4]>,
    pub state: DensityMatrix,
    pub kernel: Option<PricingKernel>,
}

impl ContractMenu {
    pub fn new(system: KsSystem, payouts: Vec<[f64; 4]>, state: DensityMatrix, kernel: Option<PricingKernel>) -> Result<Self> {
        if state.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: state.dim() });
        }
        if let Some(k) = &kernel {
            if k.dim() != 4 {
                return Err(Error::DimensionMismatch { expected: 4, found: k.dim() });
            }
        }
        if payouts.len() != system.bases.len() {
            return Err(Error::DimensionMismatch { expected: system.bases.len(), found: payouts.len() });
        }
        for row in &payouts {
            for (outcome, &value) in row.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::NonFinite { row: outcome, col: outcome });
                }
                if value < 0.0 {
                    return Err(Error::NegativePayout { outcome, value });
                }
            }
        }
        Ok(ContractMenu { system, payouts, state, kernel })
    }
}

fn row_probabilities(sys: &KsSystem, r: usize, state: &DensityMatrix, tol: &Tolerances) -> Result<[f64; 4]> {
    let mut row = [0.0; 4];
    for (slot, id) in sys.bases[r].ray_ids.iter().enumerate() {
        row[slot] = crate::quantum::born_probability(state, &sys.ray(*id).unit_vector(), tol)?;
    }
    Ok(row)
}

/// `tr(π_rj p)` for each contract `r` and outcome `j`, outcomes in the
/// order the basis lists its rays.
pub fn menu_probabilities(menu: &ContractMenu, tol: &Tolerances) -> Result<Vec<[f64; 4]>> {
    (0..menu.system.bases.len()).map(|r| row_probabilities(&menu.system, r, &menu.state, tol)).collect()
}

/// Prices of each contract under the menu's kernel, if it has one.
pub fn menu_prices(menu: &ContractMenu, tol: &Tolerances) -> Result<Option<Vec<f64>>> {
    let Some(kernel) = &menu.kernel else { return Ok(None) };
    let mut prices = Vec::with_capacity(menu.payouts.len());
    for (r, row) in menu.payouts.iter().enumerate() {
        let probs = row_probabilities(&menu.system, r, kernel.q(), tol)?;
        prices.push(kernel.discount() * row.iter().zip(&probs).map(|(x, q)| x * q).sum::<f64>());
    }
    Ok(Some(prices))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractChoice {
    /// Zero-based index of the chosen contract.
    pub index: usize,
    pub scores: Vec<f64>,
}

/// Scores each contract by expected utility (or expected payout when no
/// utility is given) and picks the best, lowest index on ties.
pub fn choose_contract(menu: &ContractMenu, utility: Option<&UtilityFunction>, tol: &Tolerances) -> Result<ContractChoice> {
    let probabilities = menu_probabilities(menu, tol)?;
    let mut scores = Vec::with_capacity(probabilities.len());
    for (row, probs) in menu.payouts.iter().zip(&probabilities) {
        let score = match utility {
            Some(u) => u.expectation(row, probs)?,
            None => row.iter().zip(probs).map(|(x, p)| x * p).sum(),
        };
        scores.push(score);
    }
    let mut index = 0;
    for (r, &s) in scores.iter().enumerate() {
        if s > scores[index] {
            index = r;
        }
    }
    Ok(ContractChoice { index, scores })
}
