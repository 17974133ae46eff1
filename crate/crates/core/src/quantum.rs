//! Finite-dimensional Hermitian linear algebra over complex matrices.
//!
//! Operators are stored densely. Every constructor validates its input against
//! a [`Tolerances`] record, so a value of [`HermitianOperator`] or
//! [`DensityMatrix`] can be relied upon downstream without re-checking.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::Tolerances;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

const EIGEN_MAX_SWEEPS: usize = 10_000;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest entry modulus of a complex matrix or vector.
pub trait MaxModulus {
    fn max_modulus(&self) -> f64;
}

impl<R: nalgebra::Dim, C: nalgebra::Dim, S: nalgebra::RawStorage<C64, R, C>> MaxModulus for nalgebra::Matrix<C64, R, C, S> {
    fn max_modulus(&self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Largest modulus of `m - m†`.
fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in j..n {
            worst = worst.max((m[(j, k)] - m[(k, j)].conj()).norm());
        }
    }
    worst
}

fn check_square_finite(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    if m.nrows() == 0 {
        return Err(Error::EmptyDimension);
    }
    for j in 0..m.nrows() {
        for k in 0..m.ncols() {
            let z = m[(j, k)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: j, col: k });
            }
        }
    }
    Ok(())
}

/// A complex Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    m: CMatrix,
}

/// Which factor of a bipartite space to keep when tracing out the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

impl HermitianOperator {
    /// Validates hermiticity within `tol.hermiticity`, then stores the exact
    /// Hermitian part `(m + m†) / 2`.
    pub fn new(m: CMatrix, tol: &Tolerances) -> Result<Self> {
        check_square_finite(&m)?;
        let defect = hermiticity_defect(&m);
        if defect > tol.hermiticity {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self::symmetrized(m))
    }

    fn symmetrized(m: CMatrix) -> Self {
        let adj = m.adjoint();
        HermitianOperator { m: (m + adj).scale(0.5) }
    }

    /// Real symmetric matrix from row-major entries.
    pub fn from_real(n: usize, entries: &[f64], tol: &Tolerances) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: entries.len() });
        }
        let m = CMatrix::from_fn(n, n, |j, k| c(entries[j * n + k], 0.0));
        Self::new(m, tol)
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: j, col: j });
        }
        let n = values.len();
        Ok(HermitianOperator {
            m: CMatrix::from_fn(n, n, |j, k| if j == k { c(values[j], 0.0) } else { C64::default() }),
        })
    }

    pub fn identity(n: usize) -> Self {
        HermitianOperator { m: CMatrix::identity(n, n) }
    }

    pub fn zeros(n: usize) -> Self {
        HermitianOperator { m: CMatrix::zeros(n, n) }
    }

    /// Rank-one projector `|v⟩⟨v|` (v is used as given, not normalized).
    pub fn projector(v: &CVector) -> Self {
        HermitianOperator::symmetrized(v * v.adjoint())
    }

    /// `Σ_j λ_j |v_j⟩⟨v_j|`.
    pub fn from_spectrum(eigenvalues: &[f64], basis: &MeasurementBasis) -> Result<Self> {
        if eigenvalues.len() != basis.dim() {
            return Err(Error::DimensionMismatch { expected: basis.dim(), found: eigenvalues.len() });
        }
        if let Some(j) = eigenvalues.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: j, col: j });
        }
        let n = basis.dim();
        let mut m = CMatrix::zeros(n, n);
        for (lambda, v) in eigenvalues.iter().zip(basis.vectors()) {
            m += (v * v.adjoint()).scale(*lambda);
        }
        Ok(Self::symmetrized(m))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.diagonal().iter().map(|z| z.re).sum()
    }

    fn ensure_dim(&self, other: usize) -> Result<()> {
        if self.dim() != other {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other });
        }
        Ok(())
    }

    /// `tr(self · other)`, real for a pair of Hermitian operators.
    pub fn trace_product(&self, other: &HermitianOperator) -> Result<f64> {
        self.ensure_dim(other.dim())?;
        let n = self.dim();
        let mut acc = 0.0;
        for j in 0..n {
            for k in 0..n {
                acc += (self.m[(j, k)] * other.m[(k, j)]).re;
            }
        }
        Ok(acc)
    }

    /// `⟨v|self|v⟩`.
    pub fn expectation(&self, v: &CVector) -> Result<f64> {
        self.ensure_dim(v.len())?;
        Ok(v.dotc(&(&self.m * v)).re)
    }

    pub fn scale(&self, a: f64) -> Self {
        HermitianOperator { m: self.m.scale(a) }
    }

    pub fn add(&self, other: &HermitianOperator) -> Result<Self> {
        self.ensure_dim(other.dim())?;
        Ok(HermitianOperator { m: &self.m + &other.m })
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &HermitianOperator, b: f64) -> Result<Self> {
        self.ensure_dim(other.dim())?;
        Ok(HermitianOperator { m: self.m.scale(a) + other.m.scale(b) })
    }

    /// Frobenius norm of `[self, other]`.
    pub fn commutator_norm(&self, other: &HermitianOperator) -> Result<f64> {
        self.ensure_dim(other.dim())?;
        Ok((&self.m * &other.m - &other.m * &self.m).norm())
    }

    pub fn commutes_with(&self, other: &HermitianOperator, tol: &Tolerances) -> Result<bool> {
        let scale = 1.0f64.max(self.m.norm() * other.m.norm());
        Ok(self.commutator_norm(other)? <= tol.hermiticity * scale)
    }

    /// Ascending eigenvalues with an orthonormal eigenbasis.
    pub fn eigendecompose(&self, tol: &Tolerances) -> Result<Spectrum> {
        let n = self.dim();
        let eig = SymmetricEigen::try_new(self.m.clone(), f64::EPSILON, EIGEN_MAX_SWEEPS)
            .ok_or(Error::EigenConvergence)?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues: Vec<f64> = order.iter().map(|&j| eig.eigenvalues[j]).collect();
        let vectors: Vec<CVector> = order
            .iter()
            .map(|&j| {
                let v = eig.eigenvectors.column(j).into_owned();
                let norm = v.norm();
                v.unscale(norm)
            })
            .collect();
        let basis = MeasurementBasis::new(vectors, tol).map_err(|_| Error::EigenConvergence)?;
        let spectrum = Spectrum { eigenvalues, basis };
        let recon = (spectrum.reconstruct().m - &self.m).max_modulus();
        if recon > tol.recon * 1.0f64.max(self.m.max_modulus()) {
            return Err(Error::EigenConvergence);
        }
        Ok(spectrum)
    }

    pub fn eigenvalues(&self, tol: &Tolerances) -> Result<Vec<f64>> {
        Ok(self.eigendecompose(tol)?.eigenvalues)
    }

    /// Kronecker product; joint index `(a, a')` maps to `a·n' + a'`.
    pub fn tensor(&self, other: &HermitianOperator) -> HermitianOperator {
        HermitianOperator { m: self.m.kronecker(&other.m) }
    }

    /// Traces out one factor of a bipartite operator on `dims.0 · dims.1`.
    pub fn partial_trace(&self, dims: (usize, usize), keep: Subsystem) -> Result<HermitianOperator> {
        let keep_index = match keep {
            Subsystem::First => 0,
            Subsystem::Second => 1,
        };
        self.reduce(&[dims.0, dims.1], keep_index)
    }

    /// Traces out every factor except `keep` of an operator on `Π dims`.
    pub fn reduce(&self, dims: &[usize], keep: usize) -> Result<HermitianOperator> {
        let total: usize = dims.iter().product();
        self.ensure_dim(total)?;
        if keep >= dims.len() {
            return Err(Error::IndexOutOfRange { index: keep, dim: dims.len() });
        }
        if dims.contains(&0) {
            return Err(Error::EmptyDimension);
        }
        let left: usize = dims[..keep].iter().product();
        let d = dims[keep];
        let right: usize = dims[keep + 1..].iter().product();
        let mut out = CMatrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                let mut acc = C64::default();
                for l in 0..left {
                    for r in 0..right {
                        acc += self.m[((l * d + a) * right + r, (l * d + b) * right + r)];
                    }
                }
                out[(a, b)] = acc;
            }
        }
        Ok(HermitianOperator::symmetrized(out))
    }

    /// Embeds `self` as the `slot`-th factor of `I ⊗ … ⊗ self ⊗ … ⊗ I`.
    pub fn embed(&self, dims: &[usize], slot: usize) -> Result<HermitianOperator> {
        if slot >= dims.len() {
            return Err(Error::IndexOutOfRange { index: slot, dim: dims.len() });
        }
        if dims[slot] != self.dim() {
            return Err(Error::DimensionMismatch { expected: dims[slot], found: self.dim() });
        }
        let left: usize = dims[..slot].iter().product();
        let right: usize = dims[slot + 1..].iter().product();
        let out = HermitianOperator::identity(left).tensor(self).tensor(&HermitianOperator::identity(right));
        Ok(out)
    }

    /// `e^{iHT} · rho · e^{-iHT}` for `self = H`.
    pub fn conjugate_evolution(&self, rho: &HermitianOperator, time: f64, tol: &Tolerances) -> Result<HermitianOperator> {
        self.ensure_dim(rho.dim())?;
        let unitary = self.exp_i(time, tol)?;
        let evolved = &unitary * &rho.m * unitary.adjoint();
        Ok(HermitianOperator::symmetrized(evolved))
    }

    /// `e^{i·self·t}` from the spectral decomposition.
    pub fn exp_i(&self, t: f64, tol: &Tolerances) -> Result<CMatrix> {
        let spectrum = self.eigendecompose(tol)?;
        let n = self.dim();
        let mut u = CMatrix::zeros(n, n);
        for (lambda, v) in spectrum.eigenvalues.iter().zip(spectrum.basis.vectors()) {
            let phase = C64::from_polar(1.0, lambda * t);
            u += (v * v.adjoint()) * phase;
        }
        Ok(u)
    }
}

/// An orthonormal basis of `C^n`, stored as `n` column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    vectors: Vec<CVector>,
}

impl MeasurementBasis {
    pub fn new(vectors: Vec<CVector>, tol: &Tolerances) -> Result<Self> {
        let n = vectors.len();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        for v in &vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite { row: 0, col: 0 });
            }
        }
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in j..n {
                let ip = vectors[j].dotc(&vectors[k]);
                let target = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((ip - c(target, 0.0)).norm());
            }
        }
        if worst > tol.ortho {
            return Err(Error::NotOrthonormal(worst));
        }
        Ok(MeasurementBasis { vectors })
    }

    pub fn standard(n: usize) -> Self {
        let vectors = (0..n)
            .map(|j| CVector::from_fn(n, |k, _| if j == k { c(1.0, 0.0) } else { C64::default() }))
            .collect();
        MeasurementBasis { vectors }
    }

    /// Basis vectors are the columns of `u`.
    pub fn from_columns(u: &CMatrix, tol: &Tolerances) -> Result<Self> {
        let vectors = (0..u.ncols()).map(|j| u.column(j).into_owned()).collect();
        Self::new(vectors, tol)
    }

    /// Real basis from row vectors (each row one basis vector).
    pub fn from_real_rows(rows: &[&[f64]], tol: &Tolerances) -> Result<Self> {
        let vectors = rows
            .iter()
            .map(|row| CVector::from_iterator(row.len(), row.iter().map(|&x| c(x, 0.0))))
            .collect();
        Self::new(vectors, tol)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> Result<&CVector> {
        self.vectors.get(j).ok_or(Error::IndexOutOfRange { index: j, dim: self.dim() })
    }

    pub fn projector(&self, j: usize) -> Result<HermitianOperator> {
        Ok(HermitianOperator::projector(self.vector(j)?))
    }

    /// Unitary whose columns are the basis vectors.
    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_columns(&self.vectors)
    }
}

/// Eigenvalues in ascending order with their eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub basis: MeasurementBasis,
}

impl Spectrum {
    pub fn reconstruct(&self) -> HermitianOperator {
        HermitianOperator::from_spectrum(&self.eigenvalues, &self.basis)
            .expect("spectrum holds matching eigenvalues and basis")
    }
}

/// Positive semidefinite Hermitian operator with unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
}

impl DensityMatrix {
    pub fn new(op: HermitianOperator, tol: &Tolerances) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > tol.trace {
            return Err(Error::InvalidTrace(tr));
        }
        let min = op.eigenvalues(tol)?[0];
        if min < -tol.psd {
            return Err(Error::NotPositive(min));
        }
        Ok(DensityMatrix { op })
    }

    pub fn from_matrix(m: CMatrix, tol: &Tolerances) -> Result<Self> {
        Self::new(HermitianOperator::new(m, tol)?, tol)
    }

    pub fn diagonal(probabilities: &[f64], tol: &Tolerances) -> Result<Self> {
        Self::new(HermitianOperator::diagonal(probabilities)?, tol)
    }

    /// `|v⟩⟨v| / ⟨v|v⟩`.
    pub fn pure(v: &CVector) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(DensityMatrix { op: HermitianOperator::projector(&v.unscale(norm)) })
    }

    pub fn maximally_mixed(n: usize) -> Self {
        DensityMatrix { op: HermitianOperator::identity(n).scale(1.0 / n as f64) }
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    /// Born probabilities of every outcome of `basis`.
    pub fn marginals(&self, basis: &MeasurementBasis, tol: &Tolerances) -> Result<Vec<f64>> {
        basis.vectors().iter().map(|v| born_probability(self, v, tol)).collect()
    }
}

/// `⟨v|p|v⟩` for a unit vector `v`.
pub fn born_probability(p: &DensityMatrix, v: &CVector, tol: &Tolerances) -> Result<f64> {
    if v.len() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: v.len() });
    }
    let norm = v.norm();
    if (norm - 1.0).abs() > tol.ortho {
        return Err(Error::NotNormalized(norm));
    }
    let prob = p.op.expectation(v)?;
    Ok(if prob < 0.0 && prob >= -tol.psd {
        0.0
    } else if prob > 1.0 && prob <= 1.0 + tol.psd {
        1.0
    } else {
        prob
    })
}

/// True iff `q` is absolutely continuous with respect to `p`: every null
/// eigenvector of `p` is annihilated by `q`.
pub fn absolutely_continuous(p: &DensityMatrix, q: &DensityMatrix, tol: &Tolerances) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    let spectrum = p.op.eigendecompose(tol)?;
    for (lambda, v) in spectrum.eigenvalues.iter().zip(spectrum.basis.vectors()) {
        if *lambda < tol.null && (q.matrix() * v).norm() >= tol.null {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shared null space.
pub fn equivalent_states(p: &DensityMatrix, q: &DensityMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(absolutely_continuous(p, q, tol)? && absolutely_continuous(q, p, tol)?)
}

/// Time-`t` state `e^{iHt} p e^{-iHt}`.
pub fn evolve(p: &DensityMatrix, hamiltonian: &HermitianOperator, time: f64, tol: &Tolerances) -> Result<DensityMatrix> {
    let evolved = hamiltonian.conjugate_evolution(&p.op, time, tol)?;
    DensityMatrix::new(evolved, tol)
}
