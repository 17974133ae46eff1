//! Portfolios of contracts written on several quantum systems.
//!
//! Joint states live on the Kronecker product space with the index of the
//! first factor most significant. A portfolio holding `θ₁` units of a
//! contract on system I and `θ₂` of one on system II is the observable
//! `θ₁ U⊗I + θ₂ I⊗V`; its expectation and price split over the marginals
//! of the joint state and joint pricing state.

use serde::Serialize;

use crate::claims::PricingKernel;
use crate::error::{Error, Result};
use crate::quantum::{CMatrix, DensityMatrix, HermitianOperator, Subsystem};
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct TwoPartyState {
    dims: (usize, usize),
    rho: DensityMatrix,
}

impl TwoPartyState {
    pub fn new(dims: (usize, usize), rho: DensityMatrix) -> Result<Self> {
        if dims.0 == 0 || dims.1 == 0 {
            return Err(Error::EmptyDimension);
        }
        if dims.0 * dims.1 != rho.dim() {
            return Err(Error::DimensionMismatch { expected: dims.0 * dims.1, found: rho.dim() });
        }
        Ok(TwoPartyState { dims, rho })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn marginal(&self, keep: Subsystem) -> HermitianOperator {
        self.rho.op().partial_trace(self.dims, keep).expect("dims validated on construction")
    }
}

/// `pA ⊗ pB`.
pub fn product_state(pa: &DensityMatrix, pb: &DensityMatrix) -> TwoPartyState {
    let rho = DensityMatrix::new(pa.op().tensor(pb.op()), &Tolerances::DEFAULT.scaled(1e3))
        .expect("product of states is a state");
    TwoPartyState { dims: (pa.dim(), pb.dim()), rho }
}

/// `Σ_r w_r pA_r ⊗ pB_r` with convex weights.
pub fn separable_mixture(components: &[(f64, DensityMatrix, DensityMatrix)], tol: &Tolerances) -> Result<TwoPartyState> {
    let Some((_, a0, b0)) = components.first() else {
        return Err(Error::InvalidWeights("no components".into()));
    };
    let dims = (a0.dim(), b0.dim());
    let mut total = 0.0;
    let mut acc = HermitianOperator::zeros(dims.0 * dims.1);
    for (r, (w, a, b)) in components.iter().enumerate() {
        if !w.is_finite() || *w < 0.0 {
            return Err(Error::InvalidWeights(format!("weight {r} is {w}")));
        }
        if (a.dim(), b.dim()) != dims {
            return Err(Error::DimensionMismatch { expected: dims.0 * dims.1, found: a.dim() * b.dim() });
        }
        total += w;
        acc = acc.add(&a.op().tensor(b.op()).scale(*w))?;
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidWeights(format!("weights sum to {total}")));
    }
    TwoPartyState::new(dims, DensityMatrix::new(acc, tol)?)
}

/// Transpose on the second factor.
pub fn partial_transpose(state: &TwoPartyState) -> HermitianOperator {
    let (n, m) = state.dims;
    let rho = state.rho.matrix();
    let out = CMatrix::from_fn(n * m, n * m, |row, col| {
        let (a, a2) = (row / m, row % m);
        let (b, b2) = (col / m, col % m);
        rho[(a * m + b2, b * m + a2)]
    });
    HermitianOperator::new(out, &Tolerances::DEFAULT).expect("partial transpose of a Hermitian matrix is Hermitian")
}

/// Positive partial transpose. `false` certifies entanglement; for 2x2 and
/// 2x3 systems `true` also certifies separability.
pub fn is_ppt(state: &TwoPartyState, tol: &Tolerances) -> Result<bool> {
    let min = partial_transpose(state).eigenvalues(tol)?[0];
    Ok(min >= -tol.psd)
}

/// `θ₁ U⊗I + θ₂ I⊗V`.
#[derive(Debug, Clone, PartialEq)]
pub struct PortfolioObservable {
    pub u: HermitianOperator,
    pub v: HermitianOperator,
    pub theta: (f64, f64),
}

impl PortfolioObservable {
    /// Any real weights are accepted; with a negative weight the joint
    /// claim need not be positive.
    pub fn new(u: HermitianOperator, v: HermitianOperator, theta: (f64, f64)) -> Result<Self> {
        if !theta.0.is_finite() || !theta.1.is_finite() {
            return Err(Error::InvalidParameter(format!("portfolio weights {theta:?}")));
        }
        Ok(PortfolioObservable { u, v, theta })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.u.dim(), self.v.dim())
    }

    pub fn joint_operator(&self) -> HermitianOperator {
        let (n, m) = self.dims();
        let left = self.u.tensor(&HermitianOperator::identity(m));
        let right = HermitianOperator::identity(n).tensor(&self.v);
        left.combine(self.theta.0, &right, self.theta.1).expect("equal joint dimensions")
    }
}

/// Joint value of a portfolio and the per-leg values from the marginals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PortfolioValuation {
    pub joint: f64,
    pub legs: Vec<f64>,
}

impl PortfolioValuation {
    /// `|joint - Σ legs|`.
    pub fn split_discrepancy(&self) -> f64 {
        (self.joint - self.legs.iter().sum::<f64>()).abs()
    }
}

fn split_value(joint_state: &HermitianOperator, dims: (usize, usize), pf: &PortfolioObservable) -> Result<PortfolioValuation> {
    if pf.dims() != dims {
        return Err(Error::DimensionMismatch { expected: dims.0 * dims.1, found: pf.u.dim() * pf.v.dim() });
    }
    let joint = joint_state.trace_product(&pf.joint_operator())?;
    let first = joint_state.partial_trace(dims, Subsystem::First)?.trace_product(&pf.u)?;
    let second = joint_state.partial_trace(dims, Subsystem::Second)?.trace_product(&pf.v)?;
    Ok(PortfolioValuation { joint, legs: vec![pf.theta.0 * first, pf.theta.1 * second] })
}

/// `tr(ρ X(θ))` alongside `θ₁ tr(ρ_A U)` and `θ₂ tr(ρ_B V)`.
pub fn portfolio_expected_payout(state: &TwoPartyState, pf: &PortfolioObservable) -> Result<PortfolioValuation> {
    split_value(state.rho.op(), state.dims, pf)
}

/// `P0T tr(q₁₂ X(θ))` alongside the prices under the marginal pricing states.
pub fn portfolio_price(kernel: &PricingKernel, dims: (usize, usize), pf: &PortfolioObservable) -> Result<PortfolioValuation> {
    if dims.0 * dims.1 != kernel.dim() {
        return Err(Error::DimensionMismatch { expected: kernel.dim(), found: dims.0 * dims.1 });
    }
    let v = split_value(kernel.q().op(), dims, pf)?;
    let d = kernel.discount();
    Ok(PortfolioValuation { joint: d * v.joint, legs: v.legs.iter().map(|x| d * x).collect() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Physical,
    Pricing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub covariance: f64,
    pub marginal_means: (f64, f64),
    pub computed_under: Measure,
}

fn covariance_of(rho: &HermitianOperator, dims: (usize, usize), u: &HermitianOperator, v: &HermitianOperator, under: Measure) -> Result<CorrelationReport> {
    if (u.dim(), v.dim()) != dims {
        return Err(Error::DimensionMismatch { expected: dims.0 * dims.1, found: u.dim() * v.dim() });
    }
    let mean_u = rho.partial_trace(dims, Subsystem::First)?.trace_product(u)?;
    let mean_v = rho.partial_trace(dims, Subsystem::Second)?.trace_product(v)?;
    let du = u.add(&HermitianOperator::identity(dims.0).scale(-mean_u))?;
    let dv = v.add(&HermitianOperator::identity(dims.1).scale(-mean_v))?;
    let covariance = rho.trace_product(&du.tensor(&dv))?;
    Ok(CorrelationReport { covariance, marginal_means: (mean_u, mean_v), computed_under: under })
}

/// `tr(ρ (U - ⟨U⟩)⊗(V - ⟨V⟩))` under the physical joint state.
pub fn payout_covariance(state: &TwoPartyState, u: &HermitianOperator, v: &HermitianOperator) -> Result<CorrelationReport> {
    covariance_of(state.rho.op(), state.dims, u, v, Measure::Physical)
}

/// The same covariance under the joint pricing state.
pub fn price_covariance(kernel: &PricingKernel, dims: (usize, usize), u: &HermitianOperator, v: &HermitianOperator) -> Result<CorrelationReport> {
    if dims.0 * dims.1 != kernel.dim() {
        return Err(Error::DimensionMismatch { expected: kernel.dim(), found: dims.0 * dims.1 });
    }
    covariance_of(kernel.q().op(), dims, u, v, Measure::Pricing)
}

/// Portfolio over `N` systems: `Σ_i θ_i I⊗…⊗U_i⊗…⊗I`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPortfolio {
    pub legs: Vec<(f64, HermitianOperator)>,
}

impl MultiPortfolio {
    pub fn dims(&self) -> Vec<usize> {
        self.legs.iter().map(|(_, u)| u.dim()).collect()
    }

    pub fn joint_operator(&self) -> Result<HermitianOperator> {
        let dims = self.dims();
        let total: usize = dims.iter().product();
        let mut acc = HermitianOperator::zeros(total);
        for (slot, (theta, u)) in self.legs.iter().enumerate() {
            acc = acc.add(&u.embed(&dims, slot)?.scale(*theta))?;
        }
        Ok(acc)
    }

    /// Joint expectation under `rho` and the per-leg values on the one-system marginals.
    pub fn valuation(&self, rho: &DensityMatrix) -> Result<PortfolioValuation> {
        let dims = self.dims();
        let joint = rho.op().trace_product(&self.joint_operator()?)?;
        let legs = self
            .legs
            .iter()
            .enumerate()
            .map(|(slot, (theta, u))| Ok(theta * rho.op().reduce(&dims, slot)?.trace_product(u)?))
            .collect::<Result<Vec<f64>>>()?;
        Ok(PortfolioValuation { joint, legs })
    }

    pub fn price(&self, kernel: &PricingKernel) -> Result<PortfolioValuation> {
        let v = self.valuation(kernel.q())?;
        let d = kernel.discount();
        Ok(PortfolioValuation { joint: d * v.joint, legs: v.legs.iter().map(|x| d * x).collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{c, CVector, MaxModulus};

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn bell() -> TwoPartyState {
        let s = 0.5f64.sqrt();
        let v = CVector::from_vec(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
        TwoPartyState::new((2, 2), DensityMatrix::pure(&v).unwrap()).unwrap()
    }

    fn diag(v: &[f64]) -> HermitianOperator {
        HermitianOperator::diagonal(v).unwrap()
    }

    fn state(v: &[f64]) -> DensityMatrix {
        DensityMatrix::diagonal(v, &TOL).unwrap()
    }

    #[test]
    fn product_state_examples() {
        let half = DensityMatrix::maximally_mixed(2);
        let s = product_state(&half, &half);
        assert!((s.rho().matrix() - DensityMatrix::maximally_mixed(4).matrix()).max_modulus() < 1e-16);

        let up = state(&[1.0, 0.0]);
        let down = state(&[0.0, 1.0]);
        let pure = product_state(&up, &down);
        let eig = pure.rho().op().eigenvalues(&TOL).unwrap();
        assert_eq!(eig.iter().filter(|&&l| l > 1e-12).count(), 1);

        let a = state(&[0.3, 0.7]);
        let b = state(&[0.1, 0.2, 0.7]);
        let s = product_state(&a, &b);
        assert!((s.marginal(Subsystem::First).matrix() - a.matrix()).max_modulus() < 1e-12);
        assert!((s.marginal(Subsystem::Second).matrix() - b.matrix()).max_modulus() < 1e-12);
    }

    #[test]
    fn mixture_examples() {
        let a = state(&[0.3, 0.7]);
        let b = state(&[0.6, 0.4]);
        let single = separable_mixture(&[(1.0, a.clone(), b.clone())], &TOL).unwrap();
        assert_eq!(single, product_state(&a, &b));

        let up = state(&[1.0, 0.0]);
        let down = state(&[0.0, 1.0]);
        let m = separable_mixture(&[(0.5, up.clone(), up.clone()), (0.5, down.clone(), down.clone())], &TOL).unwrap();
        assert!((m.rho().matrix() - diag(&[0.5, 0.0, 0.0, 0.5]).matrix()).max_modulus() < 1e-16);
        assert!(is_ppt(&m, &TOL).unwrap());

        assert!(matches!(separable_mixture(&[(0.5, up.clone(), up.clone())], &TOL), Err(Error::InvalidWeights(_))));
        assert!(matches!(separable_mixture(&[(1.5, up.clone(), up.clone()), (-0.5, up.clone(), up)], &TOL), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn ppt_examples() {
        let a = state(&[0.3, 0.7]);
        assert!(is_ppt(&product_state(&a, &a), &TOL).unwrap());
        assert!(!is_ppt(&bell(), &TOL).unwrap());
        let pt = partial_transpose(&bell()).eigenvalues(&TOL).unwrap();
        assert!((pt[0] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn portfolio_spectrum() {
        let pf = PortfolioObservable::new(diag(&[1.0, 2.0]), diag(&[10.0, 20.0]), (1.0, 1.0)).unwrap();
        let mut eig = pf.joint_operator().eigenvalues(&TOL).unwrap();
        eig.sort_by(f64::total_cmp);
        for (got, want) in eig.iter().zip([11.0, 12.0, 21.0, 22.0]) {
            assert!((got - want).abs() < 1e-12);
        }

        let pf = PortfolioObservable::new(diag(&[1.0, 2.0]), diag(&[10.0, 20.0, 30.0]), (1.0, 0.0)).unwrap();
        let eig = pf.joint_operator().eigenvalues(&TOL).unwrap();
        assert_eq!(eig.iter().filter(|&&l| (l - 1.0).abs() < 1e-12).count(), 3);

        let pf = PortfolioObservable::new(diag(&[1.0, 2.0]), diag(&[10.0, 20.0]), (0.0, 0.0)).unwrap();
        assert_eq!(pf.joint_operator().matrix().max_modulus(), 0.0);
    }

    #[test]
    fn expected_payout_examples() {
        let half = DensityMatrix::maximally_mixed(2);
        let pf = PortfolioObservable::new(HermitianOperator::identity(2), HermitianOperator::identity(2), (1.0, 1.0)).unwrap();
        let v = portfolio_expected_payout(&product_state(&half, &half), &pf).unwrap();
        assert!((v.joint - 2.0).abs() < 1e-15);

        let e = diag(&[1.0, 0.0]);
        let pf = PortfolioObservable::new(e.clone(), e.clone(), (1.0, 1.0)).unwrap();
        let v = portfolio_expected_payout(&bell(), &pf).unwrap();
        assert!((v.joint - 1.0).abs() < 1e-15);
        assert!((v.legs[0] - 0.5).abs() < 1e-15 && (v.legs[1] - 0.5).abs() < 1e-15);

        let pf = PortfolioObservable::new(diag(&[1.0, 3.0]), diag(&[2.0, 5.0]), (2.0, 3.0)).unwrap();
        let v = portfolio_expected_payout(&bell(), &pf).unwrap();
        assert!((v.joint - (2.0 * 2.0 + 3.0 * 3.5)).abs() < 1e-14);
        assert!(v.split_discrepancy() < 1e-14);
    }

    #[test]
    fn price_examples() {
        let k = PricingKernel::new(1.0, DensityMatrix::maximally_mixed(4)).unwrap();
        let e = diag(&[1.0, 0.0]);
        let pf = PortfolioObservable::new(e.clone(), e.clone(), (1.0, 1.0)).unwrap();
        assert!((portfolio_price(&k, (2, 2), &pf).unwrap().joint - 1.0).abs() < 1e-15);

        let k = PricingKernel::new(0.9, bell().rho().clone()).unwrap();
        let pf = PortfolioObservable::new(diag(&[1.0, 4.0]), diag(&[2.0, 3.0]), (1.5, 0.5)).unwrap();
        let p = portfolio_price(&k, (2, 2), &pf).unwrap();
        assert!(p.split_discrepancy() < 1e-14);
        assert!((p.joint - 0.9 * (1.5 * 2.5 + 0.5 * 2.5)).abs() < 1e-14);

        let pf = PortfolioObservable::new(diag(&[1.0, 4.0]), diag(&[2.0, 3.0]), (0.0, 1.0)).unwrap();
        let p = portfolio_price(&k, (2, 2), &pf).unwrap();
        assert!((p.joint - 0.9 * 2.5).abs() < 1e-14);
    }

    #[test]
    fn covariance_examples() {
        let z = diag(&[1.0, -1.0]);
        let a = state(&[0.3, 0.7]);
        let b = state(&[0.9, 0.1]);
        let r = payout_covariance(&product_state(&a, &b), &z, &z).unwrap();
        assert!(r.covariance.abs() < 1e-12);

        let r = payout_covariance(&bell(), &z, &z).unwrap();
        assert!((r.covariance - 1.0).abs() < 1e-14);
        assert_eq!(r.marginal_means, (0.0, 0.0));

        let classical = TwoPartyState::new((2, 2), state(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        assert!((payout_covariance(&classical, &z, &z).unwrap().covariance - 1.0).abs() < 1e-14);

        let k = PricingKernel::new(0.9, bell().rho().clone()).unwrap();
        let r = price_covariance(&k, (2, 2), &z, &z).unwrap();
        assert_eq!(r.computed_under, Measure::Pricing);
        assert!((r.covariance - 1.0).abs() < 1e-14);
    }

    #[test]
    fn three_party_additivity() {
        let a = state(&[0.2, 0.8]);
        let b = state(&[0.5, 0.25, 0.25]);
        let cc = state(&[0.9, 0.1]);
        let rho = DensityMatrix::new(a.op().tensor(b.op()).tensor(cc.op()), &TOL).unwrap();
        let pf = MultiPortfolio { legs: vec![(1.0, diag(&[1.0, 2.0])), (2.0, diag(&[0.0, 1.0, 4.0])), (-1.0, diag(&[3.0, 0.0]))] };
        let v = pf.valuation(&rho).unwrap();
        let expected = (0.2 + 1.6) + 2.0 * (0.25 + 1.0) - 2.7;
        assert!((v.joint - expected).abs() < 1e-14);
        assert!(v.split_discrepancy() < 1e-14);
    }
}
