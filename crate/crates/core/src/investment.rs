//! Utility-optimal payout structures, rates of return and the relative
//! entropy bound on the excess return of the log-optimal claim.
//!
//! The optimiser works entirely on the Born marginals of `p` and `q` on the
//! chosen measurement basis: with `p_j = ⟨x_j|p|x_j⟩` and `q_j = ⟨x_j|q|x_j⟩`
//! the optimal payouts are `x_j = I(λ q_j / p_j)` where `I` inverts the
//! marginal utility and `λ` saturates the budget.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::claims::{expected_payout, price, FinancialClaim, PricingKernel};
use crate::error::{Error, Result};
use crate::quantum::{DensityMatrix, MeasurementBasis};
use crate::random::{random_simplex, seeded};
use crate::tol::Tolerances;

/// Standard utilities: log, or power `x^p / p` with `p < 1`, `p ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum UtilityFunction {
    Log,
    Power { p: f64 },
}

impl UtilityFunction {
    pub fn power(p: f64) -> Result<Self> {
        let u = UtilityFunction::Power { p };
        u.validate()?;
        Ok(u)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            UtilityFunction::Log => Ok(()),
            UtilityFunction::Power { p } if p.is_finite() && p < 1.0 && p != 0.0 => Ok(()),
            UtilityFunction::Power { p } => Err(Error::InvalidUtility(p)),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match *self {
            UtilityFunction::Log => x.ln(),
            UtilityFunction::Power { p } => x.powf(p) / p,
        }
    }

    pub fn marginal(&self, x: f64) -> f64 {
        match *self {
            UtilityFunction::Log => 1.0 / x,
            UtilityFunction::Power { p } => x.powf(p - 1.0),
        }
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        match *self {
            UtilityFunction::Log => -1.0 / (x * x),
            UtilityFunction::Power { p } => (p - 1.0) * x.powf(p - 2.0),
        }
    }

    /// Inverse of the marginal utility.
    pub fn inverse_marginal(&self, y: f64) -> f64 {
        match *self {
            UtilityFunction::Log => 1.0 / y,
            UtilityFunction::Power { p } => y.powf(1.0 / (p - 1.0)),
        }
    }

    /// `Σ_j U(x_j) w_j`, rejecting nonpositive payouts.
    pub fn expectation(&self, payouts: &[f64], weights: &[f64]) -> Result<f64> {
        let mut acc = 0.0;
        for (outcome, (&x, &w)) in payouts.iter().zip(weights).enumerate() {
            if !(x > 0.0) {
                return Err(Error::NonPositivePayout { outcome, value: x });
            }
            acc += self.value(x) * w;
        }
        Ok(acc)
    }
}

/// Solution of the budget-constrained expected-utility problem.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalInvestment {
    pub payouts: Vec<f64>,
    pub lambda: f64,
    pub basis: MeasurementBasis,
    pub budget: f64,
    pub realized_price: f64,
    pub p_marginals: Vec<f64>,
    pub q_marginals: Vec<f64>,
}

impl OptimalInvestment {
    pub fn claim(&self) -> FinancialClaim {
        FinancialClaim::new(self.basis.clone(), self.payouts.clone()).expect("optimal payouts are positive")
    }
}

/// Born marginals of `p` and `q` on `basis`, refusing any outcome whose
/// probability under either state falls below the floor.
pub fn basis_marginals(
    p: &DensityMatrix,
    q: &DensityMatrix,
    basis: &MeasurementBasis,
    tol: &Tolerances,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if p.dim() != basis.dim() {
        return Err(Error::DimensionMismatch { expected: basis.dim(), found: p.dim() });
    }
    if q.dim() != basis.dim() {
        return Err(Error::DimensionMismatch { expected: basis.dim(), found: q.dim() });
    }
    let pm = p.marginals(basis, tol)?;
    let qm = q.marginals(basis, tol)?;
    for (outcome, (&pj, &qj)) in pm.iter().zip(&qm).enumerate() {
        if pj <= tol.marginal_floor || qj <= tol.marginal_floor {
            return Err(Error::DegenerateMarginal { outcome, p: pj, q: qj });
        }
    }
    Ok((pm, qm))
}

const LAMBDA_BRACKET: (f64, f64) = (1e-12, 1e12);
const BRACKET_LIMIT: (f64, f64) = (1e-300, 1e300);
const BISECTION_ITERATIONS: usize = 200;
const BUDGET_RELATIVE_TOL: f64 = 1e-12;

/// `g(λ) = P0T Σ_j I(λ r_j) q_j` with `r_j = q_j / p_j`.
fn budget_map(pairs: &[(f64, f64)], discount: f64, utility: &UtilityFunction, lambda: f64) -> f64 {
    discount * pairs.iter().map(|&(q, ratio)| utility.inverse_marginal(lambda * ratio) * q).sum::<f64>()
}

/// Finds the unique `λ > 0` with `g(λ) = budget` by bisection on `log λ`.
///
/// `pairs` holds `(q_j, q_j / p_j)` for every outcome. `g` is strictly
/// decreasing, so the bracket is widened geometrically until it straddles
/// the budget.
pub fn solve_lambda(pairs: &[(f64, f64)], budget: f64, discount: f64, utility: &UtilityFunction) -> Result<f64> {
    utility.validate()?;
    if !(budget > 0.0 && budget.is_finite()) {
        return Err(Error::InvalidParameter(format!("budget {budget} must be positive")));
    }
    if pairs.is_empty() || pairs.iter().any(|&(q, r)| !(q > 0.0 && r > 0.0 && q.is_finite() && r.is_finite())) {
        return Err(Error::InvalidParameter("marginal pairs must be positive and finite".into()));
    }
    let g = |lambda: f64| budget_map(pairs, discount, utility, lambda);

    let (mut lo, mut hi) = LAMBDA_BRACKET;
    while g(lo) < budget {
        lo *= 1e-6;
        if lo < BRACKET_LIMIT.0 {
            return Err(Error::RootFinder(format!("lower bracket below {:e}", BRACKET_LIMIT.0)));
        }
    }
    while g(hi) > budget {
        hi *= 1e6;
        if hi > BRACKET_LIMIT.1 {
            return Err(Error::RootFinder(format!("upper bracket above {:e}", BRACKET_LIMIT.1)));
        }
    }

    let (mut log_lo, mut log_hi) = (lo.ln(), hi.ln());
    let mut best = (f64::INFINITY, (lo * hi).sqrt());
    for _ in 0..BISECTION_ITERATIONS {
        let mid = 0.5 * (log_lo + log_hi);
        let lambda = mid.exp();
        let value = g(lambda);
        let err = (value - budget).abs() / budget;
        if err < best.0 {
            best = (err, lambda);
        }
        if err < BUDGET_RELATIVE_TOL {
            return Ok(lambda);
        }
        if value > budget {
            log_lo = mid;
        } else {
            log_hi = mid;
        }
        if log_hi - log_lo <= f64::EPSILON * log_hi.abs().max(1.0) {
            break;
        }
    }
    if best.0.is_finite() && best.0 < 1e-9 {
        Ok(best.1)
    } else {
        Err(Error::RootFinder(format!("bisection stalled at relative budget error {:e}", best.0)))
    }
}

/// Maximizes `Σ_j U(x_j) p_j` subject to `P0T Σ_j x_j q_j = budget`.
pub fn optimal_payouts(
    p: &DensityMatrix,
    kernel: &PricingKernel,
    basis: &MeasurementBasis,
    budget: f64,
    utility: &UtilityFunction,
    tol: &Tolerances,
) -> Result<OptimalInvestment> {
    let (pm, qm) = basis_marginals(p, kernel.q(), basis, tol)?;
    let pairs: Vec<(f64, f64)> = pm.iter().zip(&qm).map(|(&pj, &qj)| (qj, qj / pj)).collect();
    let lambda = solve_lambda(&pairs, budget, kernel.discount(), utility)?;
    let payouts: Vec<f64> = pairs.iter().map(|&(_, ratio)| utility.inverse_marginal(lambda * ratio)).collect();
    let claim = FinancialClaim::new(basis.clone(), payouts.clone())?;
    let realized_price = price(kernel, &claim)?;
    if (realized_price - budget).abs() > tol.budget * budget.max(1.0) {
        return Err(Error::RootFinder(format!("budget {budget} missed: realized price {realized_price}")));
    }
    Ok(OptimalInvestment { payouts, lambda, basis: basis.clone(), budget, realized_price, p_marginals: pm, q_marginals: qm })
}

/// `tr(p Û)` with `Û = Σ_j U(x_j) |x_j⟩⟨x_j|`.
pub fn expected_utility(
    p: &DensityMatrix,
    basis: &MeasurementBasis,
    payouts: &[f64],
    utility: &UtilityFunction,
    tol: &Tolerances,
) -> Result<f64> {
    if payouts.len() != basis.dim() {
        return Err(Error::DimensionMismatch { expected: basis.dim(), found: payouts.len() });
    }
    if p.dim() != basis.dim() {
        return Err(Error::DimensionMismatch { expected: basis.dim(), found: p.dim() });
    }
    utility.expectation(payouts, &p.marginals(basis, tol)?)
}

/// Outcome of comparing a candidate against budget-feasible alternatives.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalityCheck {
    pub holds: bool,
    pub trials: usize,
    pub candidate_utility: f64,
    pub best_alternative_utility: f64,
    /// Largest amount by which an alternative exceeded the candidate.
    pub worst_excess: f64,
}

/// Compares the candidate's expected utility against each alternative payout
/// vector on the candidate's basis.
pub fn verify_against<I>(
    candidate: &OptimalInvestment,
    p: &DensityMatrix,
    utility: &UtilityFunction,
    alternatives: I,
    tol: &Tolerances,
) -> Result<OptimalityCheck>
where
    I: IntoIterator<Item = Vec<f64>>,
{
    let pm = p.marginals(&candidate.basis, tol)?;
    let candidate_utility = utility.expectation(&candidate.payouts, &pm)?;
    let mut best = f64::NEG_INFINITY;
    let mut trials = 0;
    for alt in alternatives {
        if alt.len() != pm.len() {
            return Err(Error::DimensionMismatch { expected: pm.len(), found: alt.len() });
        }
        best = best.max(utility.expectation(&alt, &pm)?);
        trials += 1;
    }
    let worst_excess = best - candidate_utility;
    Ok(OptimalityCheck {
        holds: trials == 0 || worst_excess <= tol.opt,
        trials,
        candidate_utility,
        best_alternative_utility: best,
        worst_excess,
    })
}

/// Draws `trials` alternatives that exactly exhaust the budget: a uniform
/// split `w` of the budget across outcomes buys `x_j = w_j X0 / (P0T q_j)`.
pub fn random_budget_alternatives<R: Rng + ?Sized>(
    rng: &mut R,
    q_marginals: &[f64],
    budget: f64,
    discount: f64,
    trials: usize,
) -> Vec<Vec<f64>> {
    (0..trials)
        .map(|_| {
            random_simplex(rng, q_marginals.len())
                .iter()
                .zip(q_marginals)
                .map(|(w, q)| (w * budget / (discount * q)).max(f64::MIN_POSITIVE))
                .collect()
        })
        .collect()
}

/// Randomized non-dominance test of a candidate optimum.
pub fn verify_optimality(
    candidate: &OptimalInvestment,
    p: &DensityMatrix,
    kernel: &PricingKernel,
    utility: &UtilityFunction,
    trials: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<OptimalityCheck> {
    let qm = kernel.q().marginals(&candidate.basis, tol)?;
    let mut rng = seeded(seed);
    let alternatives = random_budget_alternatives(&mut rng, &qm, candidate.budget, kernel.discount(), trials);
    verify_against(candidate, p, utility, alternatives, tol)
}

/// Gross return, interest rate and excess rate over a horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReturnReport {
    pub gross_return: f64,
    pub total_rate: f64,
    pub interest_rate: f64,
    pub excess_rate: f64,
    pub horizon: f64,
}

/// `R0T = tr(p X) / price(X)`, `r = -ln(P0T)/T`, `β = ln(R0T)/T - r`.
pub fn rate_of_return(p: &DensityMatrix, kernel: &PricingKernel, claim: &FinancialClaim, horizon: f64) -> Result<ReturnReport> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidParameter(format!("horizon {horizon} must be positive")));
    }
    let cost = price(kernel, claim)?;
    if !(cost > 0.0) {
        return Err(Error::ZeroPrice);
    }
    let gross_return = expected_payout(p, claim)? / cost;
    let total_rate = gross_return.ln() / horizon;
    let interest_rate = -kernel.discount().ln() / horizon;
    Ok(ReturnReport { gross_return, total_rate, interest_rate, excess_rate: total_rate - interest_rate, horizon })
}

/// `e^{βT} = Σ_j p_j² / q_j`, the excess growth factor of the log-optimal claim.
pub fn log_optimal_excess_factor(p_marginals: &[f64], q_marginals: &[f64]) -> Result<f64> {
    if p_marginals.len() != q_marginals.len() {
        return Err(Error::DimensionMismatch { expected: p_marginals.len(), found: q_marginals.len() });
    }
    let mut acc = 0.0;
    for (outcome, (&pj, &qj)) in p_marginals.iter().zip(q_marginals).enumerate() {
        if qj <= 0.0 {
            if pj > 0.0 {
                return Err(Error::SupportViolation { outcome, p: pj, q: qj });
            }
            continue;
        }
        acc += pj * pj / qj;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceReport {
    pub kl: f64,
    pub p_marginals: Vec<f64>,
    pub q_marginals: Vec<f64>,
}

fn check_distribution(v: &[f64], name: &str) -> Result<()> {
    if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::InvalidDistribution(format!("{name} has a negative or non-finite entry")));
    }
    let total: f64 = v.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!("{name} sums to {total}")));
    }
    Ok(())
}

/// `D(p‖q) = Σ_j p_j ln(p_j / q_j)`; zero-probability outcomes of `p` contribute nothing.
pub fn kl_divergence(p_marginals: &[f64], q_marginals: &[f64]) -> Result<DivergenceReport> {
    if p_marginals.len() != q_marginals.len() {
        return Err(Error::DimensionMismatch { expected: p_marginals.len(), found: q_marginals.len() });
    }
    check_distribution(p_marginals, "p")?;
    check_distribution(q_marginals, "q")?;
    let mut kl = 0.0;
    for (outcome, (&pj, &qj)) in p_marginals.iter().zip(q_marginals).enumerate() {
        if pj == 0.0 {
            continue;
        }
        if qj == 0.0 {
            return Err(Error::SupportViolation { outcome, p: pj, q: qj });
        }
        kl += pj * (pj / qj).ln();
    }
    Ok(DivergenceReport { kl: kl.max(0.0), p_marginals: p_marginals.to_vec(), q_marginals: q_marginals.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::discount_bond;
    use crate::random::{random_basis, random_full_rank_density};

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn diag_state(v: &[f64]) -> DensityMatrix {
        DensityMatrix::diagonal(v, &TOL).unwrap()
    }

    #[test]
    fn utility_conditions() {
        for u in [UtilityFunction::Log, UtilityFunction::Power { p: 0.5 }, UtilityFunction::Power { p: -2.0 }] {
            let mut x = 1e-6;
            while x <= 1e6 {
                assert!(u.marginal(x) > 0.0);
                assert!(u.second_derivative(x) < 0.0);
                let back = u.inverse_marginal(u.marginal(x));
                assert!((back - x).abs() <= 1e-10 * x.max(1.0), "{u:?} at {x}: {back}");
                x *= 3.7;
            }
        }
        assert!(UtilityFunction::power(1.0).is_err());
        assert!(UtilityFunction::power(0.0).is_err());
        assert!(UtilityFunction::power(0.3).is_ok());
    }

    #[test]
    fn equal_states_give_flat_payouts() {
        let mut rng = seeded(4);
        let p = random_full_rank_density(&mut rng, 3);
        let k = PricingKernel::new(0.9, p.clone()).unwrap();
        let basis = random_basis(&mut rng, 3);
        let inv = optimal_payouts(&p, &k, &basis, 1.0, &UtilityFunction::Log, &TOL).unwrap();
        for x in &inv.payouts {
            assert!((x - 1.0 / 0.9).abs() < 1e-10);
        }
    }

    #[test]
    fn log_closed_form() {
        let p = diag_state(&[0.8, 0.2]);
        let k = PricingKernel::new(1.0, DensityMatrix::maximally_mixed(2)).unwrap();
        let inv = optimal_payouts(&p, &k, &MeasurementBasis::standard(2), 1.0, &UtilityFunction::Log, &TOL).unwrap();
        assert!((inv.payouts[0] - 1.6).abs() < 1e-10);
        assert!((inv.payouts[1] - 0.4).abs() < 1e-10);
        assert!((inv.realized_price - 1.0).abs() < 1e-10);

        let mut rng = seeded(9);
        let p = random_full_rank_density(&mut rng, 4);
        let q = random_full_rank_density(&mut rng, 4);
        let basis = random_basis(&mut rng, 4);
        let k = PricingKernel::new(0.85, q).unwrap();
        let inv = optimal_payouts(&p, &k, &basis, 2.5, &UtilityFunction::Log, &TOL).unwrap();
        for j in 0..4 {
            let expected = 2.5 * inv.p_marginals[j] / (0.85 * inv.q_marginals[j]);
            assert!((inv.payouts[j] - expected).abs() < 1e-9 * expected);
        }
    }

    #[test]
    fn lambda_examples() {
        let pairs = [(0.3, 0.3 / 0.6), (0.7, 0.7 / 0.4)];
        let l = solve_lambda(&pairs, 2.0, 0.9, &UtilityFunction::Log).unwrap();
        assert!((l - 0.45).abs() < 1e-11);
        let l2 = solve_lambda(&pairs, 4.0, 0.9, &UtilityFunction::Log).unwrap();
        assert!((l2 - l / 2.0).abs() < 1e-11);

        let l = solve_lambda(&[(1.0, 1.0)], 4.0, 1.0, &UtilityFunction::Power { p: 0.5 }).unwrap();
        assert!((l - 0.5).abs() < 1e-12);
    }

    #[test]
    fn lambda_rejects_bad_input() {
        assert!(solve_lambda(&[(1.0, 1.0)], 0.0, 1.0, &UtilityFunction::Log).is_err());
        assert!(solve_lambda(&[(0.0, 1.0)], 1.0, 1.0, &UtilityFunction::Log).is_err());
        assert!(solve_lambda(&[(1.0, 1.0)], 1.0, 1.0, &UtilityFunction::Power { p: 2.0 }).is_err());
    }

    #[test]
    fn degenerate_marginal_is_refused() {
        let p = diag_state(&[1.0, 0.0]);
        let k = PricingKernel::new(1.0, DensityMatrix::maximally_mixed(2)).unwrap();
        let err = optimal_payouts(&p, &k, &MeasurementBasis::standard(2), 1.0, &UtilityFunction::Log, &TOL).unwrap_err();
        assert!(matches!(err, Error::DegenerateMarginal { outcome: 1, .. }));
    }

    #[test]
    fn expected_utility_examples() {
        let mut rng = seeded(2);
        let p = random_full_rank_density(&mut rng, 3);
        let basis = random_basis(&mut rng, 3);
        let u = UtilityFunction::Power { p: 0.5 };
        let eu = expected_utility(&p, &basis, &[2.0; 3], &u, &TOL).unwrap();
        assert!((eu - u.value(2.0)).abs() < 1e-14);

        let pure = diag_state(&[1.0, 0.0]);
        let e = std::f64::consts::E;
        let eu = expected_utility(&pure, &MeasurementBasis::standard(2), &[e, 1.0], &UtilityFunction::Log, &TOL).unwrap();
        assert!((eu - 1.0).abs() < 1e-15);

        let err = expected_utility(&pure, &MeasurementBasis::standard(2), &[1.0, 0.0], &UtilityFunction::Log, &TOL);
        assert!(matches!(err, Err(Error::NonPositivePayout { outcome: 1, .. })));
    }

    #[test]
    fn log_utility_entropy_identity() {
        let p = diag_state(&[0.8, 0.2]);
        let k = PricingKernel::new(0.9, DensityMatrix::maximally_mixed(2)).unwrap();
        let z = MeasurementBasis::standard(2);
        let inv = optimal_payouts(&p, &k, &z, 1.0, &UtilityFunction::Log, &TOL).unwrap();
        let eu = expected_utility(&p, &z, &inv.payouts, &UtilityFunction::Log, &TOL).unwrap();
        let kl = kl_divergence(&[0.8, 0.2], &[0.5, 0.5]).unwrap().kl;
        assert!((eu - (1.0f64 / 0.9).ln() - kl).abs() < 1e-12);
    }

    #[test]
    fn optimality_examples() {
        let mut rng = seeded(31);
        let p = random_full_rank_density(&mut rng, 3);
        let q = random_full_rank_density(&mut rng, 3);
        let k = PricingKernel::new(0.95, q).unwrap();
        let basis = random_basis(&mut rng, 3);
        let inv = optimal_payouts(&p, &k, &basis, 1.0, &UtilityFunction::Log, &TOL).unwrap();
        let check = verify_optimality(&inv, &p, &k, &UtilityFunction::Log, 1000, 7, &TOL).unwrap();
        assert!(check.holds);
        assert_eq!(check.trials, 1000);

        // a flat bond payout is beaten by the true optimum when marginals differ
        let mut flat = inv.clone();
        flat.payouts = vec![1.0 / 0.95; 3];
        let check = verify_against(&flat, &p, &UtilityFunction::Log, vec![inv.payouts.clone()], &TOL).unwrap();
        assert!(!check.holds);

        let one = diag_state(&[1.0]);
        let k1 = PricingKernel::new(0.9, one.clone()).unwrap();
        let inv = optimal_payouts(&one, &k1, &MeasurementBasis::standard(1), 1.0, &UtilityFunction::Log, &TOL).unwrap();
        assert!(verify_optimality(&inv, &one, &k1, &UtilityFunction::Log, 50, 1, &TOL).unwrap().holds);
    }

    #[test]
    fn return_examples() {
        let p = diag_state(&[0.3, 0.7]);
        let k = PricingKernel::new(0.9, p.clone()).unwrap();
        let claim = FinancialClaim::on_standard_basis(vec![1.0, 3.0]).unwrap();
        let r = rate_of_return(&p, &k, &claim, 1.0).unwrap();
        assert!((r.gross_return - 1.0 / 0.9).abs() < 1e-14);
        assert!(r.excess_rate.abs() < 1e-14);

        let q = DensityMatrix::maximally_mixed(2);
        let k = PricingKernel::new(0.9, q).unwrap();
        let p = diag_state(&[0.8, 0.2]);
        let z = MeasurementBasis::standard(2);
        let inv = optimal_payouts(&p, &k, &z, 1.0, &UtilityFunction::Log, &TOL).unwrap();
        let r = rate_of_return(&p, &k, &inv.claim(), 2.0).unwrap();
        assert!(((r.excess_rate * 2.0).exp() - 1.36).abs() < 1e-12);
        assert!((log_optimal_excess_factor(&[0.8, 0.2], &[0.5, 0.5]).unwrap() - 1.36).abs() < 1e-15);
        assert!((r.interest_rate * 2.0 - (1.0f64 / 0.9).ln()).abs() < 1e-15);

        let r = rate_of_return(&p, &k, &discount_bond(2).unwrap(), 1.0).unwrap();
        assert!((r.gross_return - 1.0 / 0.9).abs() < 1e-14);
        assert!(r.excess_rate.abs() < 1e-14);

        let zero = FinancialClaim::on_standard_basis(vec![0.0, 0.0]).unwrap();
        assert_eq!(rate_of_return(&p, &k, &zero, 1.0).unwrap_err(), Error::ZeroPrice);
    }

    #[test]
    fn kl_examples() {
        assert_eq!(kl_divergence(&[0.3, 0.7], &[0.3, 0.7]).unwrap().kl, 0.0);
        let d = kl_divergence(&[0.8, 0.2], &[0.5, 0.5]).unwrap().kl;
        assert!((d - (0.8 * 1.6f64.ln() + 0.2 * 0.4f64.ln())).abs() < 1e-15);
        assert!((d - 0.19274).abs() < 1e-5);
        assert!(1.36 >= 1.0 + d);

        assert_eq!(kl_divergence(&[0.0, 1.0], &[0.5, 0.5]).unwrap().kl, 2.0f64.ln());
        assert!(matches!(kl_divergence(&[0.5, 0.5], &[1.0, 0.0]), Err(Error::SupportViolation { outcome: 1, .. })));
        assert!(matches!(kl_divergence(&[0.5, 0.6], &[0.5, 0.5]), Err(Error::InvalidDistribution(_))));
    }
}
