//! Browser bindings. Every export takes and returns plain numbers or JSON
//! text so the same functions run under native tests.

use qclaim::investment::{kl_divergence, log_optimal_excess_factor, UtilityFunction};
use qclaim::kochen_specker::{cabello_system, ContractMenu};
use qclaim::multi::{is_ppt, partial_transpose, payout_covariance, TwoPartyState};
use qclaim::quantum::{c, CVector};
use qclaim::scenario::emit_menu_report;
use qclaim::{DensityMatrix, HermitianOperator, Tolerances};
use wasm_bindgen::prelude::*;

const TOL: Tolerances = Tolerances::DEFAULT;

/// Scores the nine-contract menu for the pure state with the given real
/// amplitudes. `payouts` holds 36 numbers, four per contract. A `power` of
/// zero scores by expected payout, one scores by log utility, anything else
/// below one is a power utility exponent.
#[wasm_bindgen]
pub fn menu_report(amplitudes: &[f64], payouts: &[f64], power: f64) -> Result<String, String> {
    if amplitudes.len() != 4 || payouts.len() != 36 {
        return Err("need 4 amplitudes and 36 payouts".into());
    }
    let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
    if !(norm > 0.0) {
        return Err("amplitudes are all zero".into());
    }
    let v = CVector::from_iterator(4, amplitudes.iter().map(|a| c(a / norm, 0.0)));
    let state = DensityMatrix::pure(&v).map_err(|e| e.to_string())?;
    let rows = payouts.chunks(4).map(|r| [r[0], r[1], r[2], r[3]]).collect();
    let menu = ContractMenu::new(cabello_system(), rows, state, None).map_err(|e| e.to_string())?;
    let utility = match power {
        0.0 => None,
        1.0 => Some(UtilityFunction::Log),
        p => Some(UtilityFunction::power(p).map_err(|e| e.to_string())?),
    };
    let (results, _) = emit_menu_report(&menu, utility.as_ref(), &TOL).map_err(|e| e.to_string())?;
    Ok(results.to_string())
}

/// For a qubit with pricing marginals `(q0, 1 - q0)`, sweeps the physical
/// marginal `p0` over `(0, 1)` and returns flat triples
/// `[p0, e^{βT}, 1 + KL(p‖q)]` for the log-optimal claim.
#[wasm_bindgen]
pub fn excess_curve(q0: f64, steps: usize) -> Result<Vec<f64>, String> {
    if !(q0 > 0.0 && q0 < 1.0) || steps < 2 {
        return Err("q0 must lie in (0, 1) and steps be at least 2".into());
    }
    let q = [q0, 1.0 - q0];
    let mut out = Vec::with_capacity(3 * steps);
    for i in 0..steps {
        let p0 = (i as f64 + 0.5) / steps as f64;
        let p = [p0, 1.0 - p0];
        let factor = log_optimal_excess_factor(&p, &q).map_err(|e| e.to_string())?;
        let kl = kl_divergence(&p, &q).map_err(|e| e.to_string())?.kl;
        out.extend([p0, factor, 1.0 + kl]);
    }
    Ok(out)
}

/// Mixes the Bell state with white noise, `w |Φ+⟩⟨Φ+| + (1 - w) I/4`, and
/// returns flat quadruples `[w, cov(Z, Z), min eigenvalue of ρ^{T_B}, ppt]`
/// with `ppt` as 1 or 0.
#[wasm_bindgen]
pub fn werner_curve(steps: usize) -> Result<Vec<f64>, String> {
    if steps < 2 {
        return Err("steps must be at least 2".into());
    }
    let h = 0.5f64.sqrt();
    let bell = DensityMatrix::pure(&CVector::from_vec(vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]))
        .map_err(|e| e.to_string())?;
    let noise = DensityMatrix::maximally_mixed(4);
    let z = HermitianOperator::diagonal(&[1.0, -1.0]).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(4 * steps);
    for i in 0..steps {
        let w = i as f64 / (steps - 1) as f64;
        let rho = bell.op().combine(w, noise.op(), 1.0 - w).map_err(|e| e.to_string())?;
        let rho = DensityMatrix::new(rho, &TOL).map_err(|e| e.to_string())?;
        let state = TwoPartyState::new((2, 2), rho).map_err(|e| e.to_string())?;
        let cov = payout_covariance(&state, &z, &z).map_err(|e| e.to_string())?.covariance;
        let min = partial_transpose(&state).eigenvalues(&TOL).map_err(|e| e.to_string())?[0];
        let ppt = is_ppt(&state, &TOL).map_err(|e| e.to_string())?;
        out.extend([w, cov, min, if ppt { 1.0 } else { 0.0 }]);
    }
    Ok(out)
}
