//! Financial claims as observables, the pricing kernel, executable
//! no-arbitrage checks and calibration of the pricing state from quotes.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::quantum::{MaxModulus, c, CMatrix, DensityMatrix, HermitianOperator, MeasurementBasis};
use crate::tol::Tolerances;

/// A measurement basis together with the nonnegative payout on each outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct FinancialClaim {
    basis: MeasurementBasis,
    payouts: Vec<f64>,
}

impl FinancialClaim {
    pub fn new(basis: MeasurementBasis, payouts: Vec<f64>) -> Result<Self> {
        if payouts.len() != basis.dim() {
            return Err(Error::DimensionMismatch { expected: basis.dim(), found: payouts.len() });
        }
        for (outcome, &value) in payouts.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { row: outcome, col: outcome });
            }
            if value < 0.0 {
                return Err(Error::NegativePayout { outcome, value });
            }
        }
        Ok(FinancialClaim { basis, payouts })
    }

    /// Claim on the standard basis.
    pub fn on_standard_basis(payouts: Vec<f64>) -> Result<Self> {
        let n = payouts.len();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        Self::new(MeasurementBasis::standard(n), payouts)
    }

    pub fn basis(&self) -> &MeasurementBasis {
        &self.basis
    }

    pub fn payouts(&self) -> &[f64] {
        &self.payouts
    }

    pub fn dim(&self) -> usize {
        self.payouts.len()
    }

    /// `Σ_j x_j |x_j⟩⟨x_j|`.
    pub fn as_operator(&self) -> HermitianOperator {
        HermitianOperator::from_spectrum(&self.payouts, &self.basis).expect("validated on construction")
    }
}

/// Pays one unit of account whatever the outcome.
pub fn discount_bond(n: usize) -> Result<FinancialClaim> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    FinancialClaim::on_standard_basis(vec![1.0; n])
}

/// Pays one unit on outcome `k` (zero-based) of `basis`, nothing otherwise.
pub fn arrow_debreu(basis: &MeasurementBasis, k: usize) -> Result<FinancialClaim> {
    let n = basis.dim();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, dim: n });
    }
    let payouts = (0..n).map(|j| if j == k { 1.0 } else { 0.0 }).collect();
    FinancialClaim::new(basis.clone(), payouts)
}

/// Discount factor `P0T` and pricing state `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PricingKernel {
    discount: f64,
    q: DensityMatrix,
}

impl PricingKernel {
    pub fn new(discount: f64, q: DensityMatrix) -> Result<Self> {
        if !(discount > 0.0 && discount <= 1.0) {
            return Err(Error::InvalidDiscount(discount));
        }
        Ok(PricingKernel { discount, q })
    }

    pub fn discount(&self) -> f64 {
        self.discount
    }

    pub fn q(&self) -> &DensityMatrix {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    /// `P0T · tr(q X)` for an arbitrary Hermitian observable.
    pub fn price_operator(&self, x: &HermitianOperator) -> Result<f64> {
        Ok(self.discount * self.q.op().trace_product(x)?)
    }
}

fn weighted_marginals(state: &DensityMatrix, claim: &FinancialClaim) -> Result<f64> {
    if state.dim() != claim.dim() {
        return Err(Error::DimensionMismatch { expected: state.dim(), found: claim.dim() });
    }
    let mut acc = 0.0;
    for (x, v) in claim.payouts.iter().zip(claim.basis.vectors()) {
        acc += x * state.op().expectation(v)?;
    }
    Ok(acc)
}

/// `P0T Σ_j x_j ⟨x_j|q|x_j⟩`.
pub fn price(kernel: &PricingKernel, claim: &FinancialClaim) -> Result<f64> {
    Ok(kernel.discount * weighted_marginals(&kernel.q, claim)?)
}

/// `tr(p X)`.
pub fn expected_payout(p: &DensityMatrix, claim: &FinancialClaim) -> Result<f64> {
    weighted_marginals(p, claim)
}

/// The contract `aX + bY`, re-diagonalized into its own basis and payouts.
pub fn claim_combine(a: f64, x: &FinancialClaim, b: f64, y: &FinancialClaim, tol: &Tolerances) -> Result<FinancialClaim> {
    for coeff in [a, b] {
        if !coeff.is_finite() {
            return Err(Error::InvalidParameter(format!("coefficient {coeff}")));
        }
        if coeff < 0.0 {
            return Err(Error::NegativeCoefficient(coeff));
        }
    }
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    let op = x.as_operator().combine(a, &y.as_operator(), b)?;
    let spectrum = op.eigendecompose(tol)?;
    let scale = 1.0f64.max(op.matrix().max_modulus());
    let payouts = spectrum
        .eigenvalues
        .iter()
        .map(|&v| if v < 0.0 && v >= -tol.psd * scale { 0.0 } else { v })
        .collect();
    FinancialClaim::new(spectrum.basis, payouts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub axiom: u8,
    pub description: String,
    pub magnitude: f64,
    /// Claim exhibiting the violation, when one was constructed.
    pub witness: Option<FinancialClaim>,
}

/// Outcome of the three no-arbitrage checks.
///
/// `violations` is empty iff all three flags hold. Linearity over
/// non-commuting pairs is not one of the axioms but follows from the trace
/// form of the price; its failures are listed separately.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub axiom1_holds: bool,
    pub axiom2_holds: bool,
    pub axiom3_holds: bool,
    pub violations: Vec<Violation>,
    pub commuting_pairs_checked: usize,
    pub noncommuting_pairs_checked: usize,
    pub consequence_violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.axiom1_holds && self.axiom2_holds && self.axiom3_holds
    }
}

/// Arrow-Debreu claims on the (numerically) null eigenvectors of `state`.
fn null_space_claims(state: &DensityMatrix, tol: &Tolerances) -> Result<Vec<FinancialClaim>> {
    let spectrum = state.op().eigendecompose(tol)?;
    spectrum
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &lambda)| lambda < tol.null)
        .map(|(k, _)| arrow_debreu(&spectrum.basis, k))
        .collect()
}

const LINEARITY_WEIGHTS: [(f64, f64); 2] = [(1.0, 1.0), (0.3, 1.7)];

/// Tests positivity (zero price iff zero expected payout), linearity on
/// commuting claims, and the bond normalization.
pub fn check_axioms(
    kernel: &PricingKernel,
    p: &DensityMatrix,
    sample_claims: &[FinancialClaim],
    tol: &Tolerances,
) -> Result<AxiomReport> {
    let n = p.dim();
    if kernel.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: kernel.dim() });
    }
    if let Some(bad) = sample_claims.iter().find(|x| x.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
    }

    let mut violations = Vec::new();
    let mut consequence_violations = Vec::new();

    // Axiom 1
    let mut probes: Vec<FinancialClaim> = sample_claims.to_vec();
    probes.extend(null_space_claims(p, tol)?);
    probes.extend(null_space_claims(kernel.q(), tol)?);
    let mut axiom1 = true;
    for claim in probes {
        let pr = price(kernel, &claim)?;
        let ex = expected_payout(p, &claim)?;
        let zero_price = pr <= tol.price;
        let zero_expectation = ex <= tol.price;
        if zero_price != zero_expectation {
            axiom1 = false;
            let description = if zero_expectation {
                format!("claim with zero expected payout has positive price {pr:e}")
            } else {
                format!("claim with positive expected payout {ex:e} has zero price")
            };
            violations.push(Violation { axiom: 1, description, magnitude: pr.max(ex), witness: Some(claim) });
        }
    }

    // Axiom 2, plus the non-commuting consequence
    let mut axiom2 = true;
    let mut commuting = 0;
    let mut noncommuting = 0;
    for i in 0..sample_claims.len() {
        for j in i + 1..sample_claims.len() {
            let (x, y) = (&sample_claims[i], &sample_claims[j]);
            let commutes = x.as_operator().commutes_with(&y.as_operator(), tol)?;
            if commutes {
                commuting += 1;
            } else {
                noncommuting += 1;
            }
            let (px, py) = (price(kernel, x)?, price(kernel, y)?);
            for (a, b) in LINEARITY_WEIGHTS {
                let combined = price(kernel, &claim_combine(a, x, b, y, tol)?)?;
                let gap = (combined - (a * px + b * py)).abs();
                if gap > tol.price {
                    let violation = Violation {
                        axiom: 2,
                        description: format!("price of {a}·X{i} + {b}·X{j} differs from combined prices by {gap:e}"),
                        magnitude: gap,
                        witness: None,
                    };
                    if commutes {
                        axiom2 = false;
                        violations.push(violation);
                    } else {
                        consequence_violations.push(violation);
                    }
                }
            }
        }
    }

    // Axiom 3
    let bond_gap = (price(kernel, &discount_bond(n)?)? - kernel.discount()).abs();
    let axiom3 = bond_gap <= tol.price;
    if !axiom3 {
        violations.push(Violation {
            axiom: 3,
            description: format!("discount bond mispriced by {bond_gap:e}"),
            magnitude: bond_gap,
            witness: None,
        });
    }

    Ok(AxiomReport {
        axiom1_holds: axiom1,
        axiom2_holds: axiom2,
        axiom3_holds: axiom3,
        violations,
        commuting_pairs_checked: commuting,
        noncommuting_pairs_checked: noncommuting,
        consequence_violations,
    })
}

/// A calibrated kernel with the diagnostics of the linear solve.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub kernel: PricingKernel,
    pub rank: usize,
    pub residual: f64,
    pub equations: usize,
}

/// Coefficients of `θ ↦ tr(q(θ) X)` where `θ` holds the diagonal of `q`
/// followed by (re, im) of each upper off-diagonal entry.
fn hermitian_functional_row(x: &CMatrix) -> Vec<f64> {
    let n = x.nrows();
    let mut row = Vec::with_capacity(n * n);
    for j in 0..n {
        row.push(x[(j, j)].re);
    }
    for j in 0..n {
        for k in j + 1..n {
            let xkj = x[(k, j)];
            row.push(2.0 * xkj.re);
            row.push(-2.0 * xkj.im);
        }
    }
    row
}

fn hermitian_from_params(n: usize, theta: &DVector<f64>) -> CMatrix {
    let mut q = CMatrix::zeros(n, n);
    for j in 0..n {
        q[(j, j)] = c(theta[j], 0.0);
    }
    let mut idx = n;
    for j in 0..n {
        for k in j + 1..n {
            let z = c(theta[idx], theta[idx + 1]);
            q[(j, k)] = z;
            q[(k, j)] = z.conj();
            idx += 2;
        }
    }
    q
}

/// Recovers the pricing state from the bond price and a set of quoted claims
/// by least squares over the `n²` real parameters of a Hermitian matrix.
pub fn calibrate(n: usize, bond_price: f64, quotes: &[(FinancialClaim, f64)], tol: &Tolerances) -> Result<Calibration> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if !(bond_price > 0.0 && bond_price <= 1.0) {
        return Err(Error::InvalidDiscount(bond_price));
    }
    for (claim, quoted) in quotes {
        if claim.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: claim.dim() });
        }
        if !quoted.is_finite() || *quoted < 0.0 {
            return Err(Error::InvalidParameter(format!("quoted price {quoted}")));
        }
    }

    let params = n * n;
    let equations = quotes.len() + 1;
    let mut a = DMatrix::<f64>::zeros(equations, params);
    let mut rhs = DVector::<f64>::zeros(equations);
    for j in 0..n {
        a[(0, j)] = 1.0;
    }
    rhs[0] = 1.0;
    for (r, (claim, quoted)) in quotes.iter().enumerate() {
        let row = hermitian_functional_row(claim.as_operator().matrix());
        for (col, v) in row.into_iter().enumerate() {
            a[(r + 1, col)] = v;
        }
        rhs[r + 1] = quoted / bond_price;
    }

    let svd = a.clone().svd(true, true);
    let sigma_max = svd.singular_values.max();
    let cutoff = tol.rank * sigma_max.max(f64::MIN_POSITIVE);
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    if rank < params {
        return Err(Error::RankDeficient { rank, required: params });
    }
    let theta = svd.solve(&rhs, cutoff).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let residual = (&a * &theta - &rhs).amax();
    if residual > tol.calib {
        return Err(Error::CalibrationResidual { residual, tolerance: tol.calib });
    }

    let op = HermitianOperator::new(hermitian_from_params(n, &theta), tol)?;
    let min = op.eigenvalues(tol)?[0];
    if min < -tol.psd {
        return Err(Error::ArbitrageQuotes(min));
    }
    let q = DensityMatrix::new(op, tol)?;
    Ok(Calibration { kernel: PricingKernel::new(bond_price, q)?, rank, residual, equations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_basis, random_density_of_rank, random_full_rank_density, seeded};

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn kernel(discount: f64, q: &[f64]) -> PricingKernel {
        PricingKernel::new(discount, DensityMatrix::diagonal(q, &TOL).unwrap()).unwrap()
    }

    fn plus_basis() -> MeasurementBasis {
        let s = 0.5f64.sqrt();
        MeasurementBasis::from_real_rows(&[&[s, s], &[s, -s]], &TOL).unwrap()
    }

    #[test]
    fn claim_validation() {
        let b = MeasurementBasis::standard(2);
        assert!(matches!(FinancialClaim::new(b.clone(), vec![1.0, -0.1]), Err(Error::NegativePayout { outcome: 1, .. })));
        assert!(matches!(FinancialClaim::new(b, vec![1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn price_examples() {
        let k = kernel(0.9, &[0.25, 0.75]);
        assert!((price(&k, &discount_bond(2).unwrap()).unwrap() - 0.9).abs() < 1e-15);
        let zero = FinancialClaim::on_standard_basis(vec![0.0, 0.0]).unwrap();
        assert_eq!(price(&k, &zero).unwrap(), 0.0);
        let x = FinancialClaim::on_standard_basis(vec![2.0, 4.0]).unwrap();
        assert!((price(&k, &x).unwrap() - 3.15).abs() < 1e-14);
        let wrong = FinancialClaim::on_standard_basis(vec![1.0; 3]).unwrap();
        assert!(matches!(price(&k, &wrong), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn expected_payout_examples() {
        let p = DensityMatrix::diagonal(&[0.4, 0.6], &TOL).unwrap();
        assert!((expected_payout(&p, &discount_bond(2).unwrap()).unwrap() - 1.0).abs() < 1e-15);
        let x = FinancialClaim::on_standard_basis(vec![5.0, 7.0]).unwrap();
        let pure = DensityMatrix::diagonal(&[1.0, 0.0], &TOL).unwrap();
        assert_eq!(expected_payout(&pure, &x).unwrap(), 5.0);
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((expected_payout(&mixed, &x).unwrap() - 6.0).abs() < 1e-15);
    }

    #[test]
    fn bond_is_identity_in_any_basis() {
        let bond = discount_bond(2).unwrap();
        assert_eq!(bond.as_operator(), HermitianOperator::identity(2));
        let rotated = FinancialClaim::new(plus_basis(), vec![1.0, 1.0]).unwrap();
        assert!((rotated.as_operator().matrix() - CMatrix::identity(2, 2)).max_modulus() < 1e-15);
        assert!(matches!(discount_bond(0), Err(Error::EmptyDimension)));
    }

    #[test]
    fn arrow_debreu_examples() {
        let mut rng = seeded(3);
        let basis = random_basis(&mut rng, 3);
        let mut sum = HermitianOperator::zeros(3);
        for k in 0..3 {
            sum = sum.add(&arrow_debreu(&basis, k).unwrap().as_operator()).unwrap();
        }
        assert!((sum.matrix() - CMatrix::identity(3, 3)).max_modulus() < 1e-14);

        let q = random_full_rank_density(&mut rng, 3);
        let k = PricingKernel::new(0.8, q.clone()).unwrap();
        for j in 0..3 {
            let expected = 0.8 * q.op().expectation(&basis.vectors()[j]).unwrap();
            assert!((price(&k, &arrow_debreu(&basis, j).unwrap()).unwrap() - expected).abs() < 1e-15);
        }

        let first = arrow_debreu(&MeasurementBasis::standard(3), 0).unwrap();
        assert_eq!(first.as_operator(), HermitianOperator::diagonal(&[1.0, 0.0, 0.0]).unwrap());
        assert!(matches!(arrow_debreu(&basis, 3), Err(Error::IndexOutOfRange { index: 3, dim: 3 })));
    }

    #[test]
    fn combine_examples() {
        let x = FinancialClaim::on_standard_basis(vec![1.0, 2.0]).unwrap();
        let y = FinancialClaim::on_standard_basis(vec![3.0, 5.0]).unwrap();

        let same = claim_combine(1.0, &x, 0.0, &y, &TOL).unwrap();
        assert!((same.as_operator().matrix() - x.as_operator().matrix()).max_modulus() < 1e-14);

        let sum = claim_combine(1.0, &x, 1.0, &y, &TOL).unwrap();
        let mut payouts = sum.payouts().to_vec();
        payouts.sort_by(f64::total_cmp);
        assert!((payouts[0] - 4.0).abs() < 1e-14 && (payouts[1] - 7.0).abs() < 1e-14);

        let up = arrow_debreu(&MeasurementBasis::standard(2), 0).unwrap();
        let plus = arrow_debreu(&plus_basis(), 0).unwrap();
        let mix = claim_combine(0.5, &up, 0.5, &plus, &TOL).unwrap();
        let r = 0.5f64.sqrt();
        assert!((mix.payouts()[0] - (1.0 - r) / 2.0).abs() < 1e-14);
        assert!((mix.payouts()[1] - (1.0 + r) / 2.0).abs() < 1e-14);

        assert!(matches!(claim_combine(-1.0, &x, 1.0, &y, &TOL), Err(Error::NegativeCoefficient(_))));
        let z = FinancialClaim::on_standard_basis(vec![1.0; 3]).unwrap();
        assert!(matches!(claim_combine(1.0, &x, 1.0, &z, &TOL), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn axioms_hold_for_equal_states() {
        let mut rng = seeded(8);
        let p = random_full_rank_density(&mut rng, 3);
        let k = PricingKernel::new(0.95, p.clone()).unwrap();
        let b1 = random_basis(&mut rng, 3);
        let b2 = random_basis(&mut rng, 3);
        let claims = vec![
            FinancialClaim::new(b1.clone(), vec![1.0, 2.0, 3.0]).unwrap(),
            FinancialClaim::new(b1, vec![0.0, 5.0, 1.0]).unwrap(),
            FinancialClaim::new(b2, vec![2.0, 0.0, 0.5]).unwrap(),
        ];
        let report = check_axioms(&k, &p, &claims, &TOL).unwrap();
        assert!(report.all_hold(), "{:?}", report.violations);
        assert!(report.violations.is_empty());
        assert_eq!(report.commuting_pairs_checked, 1);
        assert_eq!(report.noncommuting_pairs_checked, 2);
        assert!(report.consequence_violations.is_empty());
    }

    #[test]
    fn larger_pricing_support_breaks_positivity() {
        let p = DensityMatrix::diagonal(&[0.5, 0.5, 0.0], &TOL).unwrap();
        let k = kernel(0.9, &[0.2, 0.3, 0.5]);
        let report = check_axioms(&k, &p, &[], &TOL).unwrap();
        assert!(!report.axiom1_holds);
        assert!(report.axiom2_holds && report.axiom3_holds);
        let v = &report.violations[0];
        let witness = v.witness.as_ref().unwrap();
        assert!(expected_payout(&p, witness).unwrap() < 1e-12);
        assert!((price(&k, witness).unwrap() - 0.45).abs() < 1e-12);
    }

    #[test]
    fn shared_null_space_passes() {
        let mut rng = seeded(21);
        let p = random_density_of_rank(&mut rng, 4, 2);
        // q on the same support with a different spectrum
        let spectrum = p.op().eigendecompose(&TOL).unwrap();
        let q_op = HermitianOperator::from_spectrum(&[0.0, 0.0, 0.1, 0.9], &spectrum.basis).unwrap();
        let q = DensityMatrix::new(q_op, &TOL).unwrap();
        let report = check_axioms(&PricingKernel::new(0.97, q).unwrap(), &p, &[], &TOL).unwrap();
        assert!(report.all_hold(), "{:?}", report.violations);
    }

    #[test]
    fn calibrate_round_trip_n3() {
        let mut rng = seeded(77);
        let q = random_full_rank_density(&mut rng, 3);
        let k = PricingKernel::new(0.93, q.clone()).unwrap();
        let quotes: Vec<(FinancialClaim, f64)> = (0..9)
            .map(|_| {
                let claim = arrow_debreu(&random_basis(&mut rng, 3), 0).unwrap();
                let pr = price(&k, &claim).unwrap();
                (claim, pr)
            })
            .collect();
        let cal = calibrate(3, 0.93, &quotes, &TOL).unwrap();
        assert_eq!(cal.rank, 9);
        assert!((cal.kernel.q().matrix() - q.matrix()).max_modulus() < 1e-9);
    }

    #[test]
    fn calibrate_single_basis_is_rank_deficient() {
        let k = kernel(0.9, &[0.4, 0.6]);
        let z = MeasurementBasis::standard(2);
        let quotes: Vec<_> = (0..2)
            .map(|j| {
                let claim = arrow_debreu(&z, j).unwrap();
                let pr = price(&k, &claim).unwrap();
                (claim, pr)
            })
            .collect();
        assert_eq!(calibrate(2, 0.9, &quotes, &TOL).unwrap_err(), Error::RankDeficient { rank: 2, required: 4 });
    }

    #[test]
    fn calibrate_trivial_dimension() {
        let cal = calibrate(1, 0.8, &[], &TOL).unwrap();
        assert!((cal.kernel.q().matrix()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn calibrate_flags_arbitrage_quotes() {
        // A-D quotes on the standard basis consistent with q = diag(1.2, -0.2)
        let s = 0.5f64.sqrt();
        let bases = [
            MeasurementBasis::standard(2),
            MeasurementBasis::from_real_rows(&[&[s, s], &[s, -s]], &TOL).unwrap(),
            MeasurementBasis::new(
                vec![
                    crate::quantum::CVector::from_vec(vec![c(s, 0.0), c(0.0, s)]),
                    crate::quantum::CVector::from_vec(vec![c(s, 0.0), c(0.0, -s)]),
                ],
                &TOL,
            )
            .unwrap(),
        ];
        let bad_q = HermitianOperator::diagonal(&[1.2, -0.2]).unwrap();
        let quotes: Vec<_> = bases
            .iter()
            .map(|b| {
                let claim = arrow_debreu(b, 0).unwrap();
                let pr = bad_q.trace_product(&claim.as_operator()).unwrap();
                (claim, pr.max(0.0))
            })
            .collect();
        assert!(matches!(calibrate(2, 1.0, &quotes, &TOL), Err(Error::ArbitrageQuotes(_))));
    }

    #[test]
    fn calibrate_flags_inconsistent_quotes() {
        let z = MeasurementBasis::standard(2);
        let s = 0.5f64.sqrt();
        let x = MeasurementBasis::from_real_rows(&[&[s, s], &[s, -s]], &TOL).unwrap();
        let y = MeasurementBasis::new(
            vec![
                crate::quantum::CVector::from_vec(vec![c(s, 0.0), c(0.0, s)]),
                crate::quantum::CVector::from_vec(vec![c(s, 0.0), c(0.0, -s)]),
            ],
            &TOL,
        )
        .unwrap();
        // both A-D claims on z quoted at 0.7 contradict the bond
        let quotes = vec![
            (arrow_debreu(&z, 0).unwrap(), 0.7),
            (arrow_debreu(&z, 1).unwrap(), 0.7),
            (arrow_debreu(&x, 0).unwrap(), 0.5),
            (arrow_debreu(&y, 0).unwrap(), 0.5),
        ];
        assert!(matches!(calibrate(2, 1.0, &quotes, &TOL), Err(Error::CalibrationResidual { .. })));
    }
}
