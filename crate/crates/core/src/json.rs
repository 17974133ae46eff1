//! JSON encodings shared by every module.
//!
//! A complex scalar is `[re, im]` (a bare number is read as a real scalar),
//! a matrix is an array of rows, and a basis is an array of its vectors.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::claims::{FinancialClaim, PricingKernel};
use crate::error::{Error, Result};
use crate::kochen_specker::KsSystem;
use crate::quantum::{c, CMatrix, CVector, DensityMatrix, HermitianOperator, MeasurementBasis, C64};
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JsonComplex(pub C64);

impl Serialize for JsonComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair([f64; 2]),
            Real(f64),
        }
        match Repr::deserialize(d).map_err(|_| de::Error::custom("complex scalar must be [re, im] or a number"))? {
            Repr::Pair([re, im]) => Ok(JsonComplex(c(re, im))),
            Repr::Real(re) => Ok(JsonComplex(c(re, 0.0))),
        }
    }
}

pub type MatrixJson = Vec<Vec<JsonComplex>>;

pub fn matrix_from_json(rows: &MatrixJson) -> Result<CMatrix> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    let cols = rows[0].len();
    if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
    }
    Ok(CMatrix::from_fn(n, cols, |j, k| rows[j][k].0))
}

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows()).map(|j| (0..m.ncols()).map(|k| JsonComplex(m[(j, k)])).collect()).collect()
}

pub fn hermitian_from_json(rows: &MatrixJson, tol: &Tolerances) -> Result<HermitianOperator> {
    HermitianOperator::new(matrix_from_json(rows)?, tol)
}

pub fn density_from_json(rows: &MatrixJson, tol: &Tolerances) -> Result<DensityMatrix> {
    DensityMatrix::new(hermitian_from_json(rows, tol)?, tol)
}

/// Each row is one basis vector.
pub fn basis_from_json(rows: &MatrixJson, tol: &Tolerances) -> Result<MeasurementBasis> {
    let vectors = rows.iter().map(|r| CVector::from_iterator(r.len(), r.iter().map(|z| z.0))).collect();
    MeasurementBasis::new(vectors, tol)
}

pub fn basis_to_json(basis: &MeasurementBasis) -> MatrixJson {
    basis.vectors().iter().map(|v| v.iter().map(|&z| JsonComplex(z)).collect()).collect()
}

/// `{ "basis": [...], "payouts": [...] }`; an omitted basis means the standard one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<MatrixJson>,
    pub payouts: Vec<f64>,
}

impl ClaimRecord {
    pub fn to_claim(&self, tol: &Tolerances) -> Result<FinancialClaim> {
        match &self.basis {
            Some(rows) => FinancialClaim::new(basis_from_json(rows, tol)?, self.payouts.clone()),
            None => FinancialClaim::on_standard_basis(self.payouts.clone()),
        }
    }

    pub fn from_claim(claim: &FinancialClaim) -> Self {
        ClaimRecord { basis: Some(basis_to_json(claim.basis())), payouts: claim.payouts().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelRecord {
    pub discount: f64,
    pub q: MatrixJson,
}

impl KernelRecord {
    pub fn to_kernel(&self, tol: &Tolerances) -> Result<PricingKernel> {
        PricingKernel::new(self.discount, density_from_json(&self.q, tol)?)
    }

    pub fn from_kernel(kernel: &PricingKernel) -> Self {
        KernelRecord { discount: kernel.discount(), q: matrix_to_json(kernel.q().matrix()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuoteRecord {
    pub claim: ClaimRecord,
    pub price: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KsSystemRecord {
    pub rays: Vec<[i8; 4]>,
    pub bases: Vec<[usize; 4]>,
}

impl KsSystemRecord {
    pub fn to_system(&self) -> Result<KsSystem> {
        KsSystem::new(self.rays.clone(), self.bases.clone())
    }

    pub fn from_system(sys: &KsSystem) -> Self {
        KsSystemRecord {
            rays: sys.rays.iter().map(|r| r.components).collect(),
            bases: sys.bases.iter().map(|b| b.ray_ids).collect(),
        }
    }
}
