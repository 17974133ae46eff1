//! Scenario files in, deterministic JSON reports out.
//!
//! A scenario is a JSON object holding the payload for one subcommand plus
//! optional `"kind"` (must match the subcommand) and `"seed"` fields. The
//! report carries the SHA-256 of the scenario bytes, the seed actually used,
//! kind-specific results and free-form diagnostics. Floats are written with
//! 17 significant digits so reports are byte-stable.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::claims::{self, check_axioms, expected_payout, price};
use crate::error::Error;
use crate::investment::{self, UtilityFunction};
use crate::json::{
    basis_from_json, density_from_json, hermitian_from_json, matrix_to_json, ClaimRecord, KernelRecord, KsSystemRecord,
    MatrixJson, QuoteRecord,
};
use crate::kochen_specker::{self as ks, ContractMenu};
use crate::multi::{self, PortfolioObservable, TwoPartyState};
use crate::quantum::{equivalent_states, Subsystem};
use crate::tol::Tolerances;

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Price,
    Calibrate,
    Optimize,
    Returns,
    Ks,
    Menu,
    Portfolio,
}

impl Kind {
    pub const ALL: [Kind; 7] = [Kind::Price, Kind::Calibrate, Kind::Optimize, Kind::Returns, Kind::Ks, Kind::Menu, Kind::Portfolio];

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Price => "price",
            Kind::Calibrate => "calibrate",
            Kind::Optimize => "optimize",
            Kind::Returns => "returns",
            Kind::Ks => "ks",
            Kind::Menu => "menu",
            Kind::Portfolio => "portfolio",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown scenario kind `{s}`"))
    }
}

/// Failure of a scenario run, split by exit-code class.
#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    Validation(String),
    Numerical(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 2,
            RunError::Numerical(_) => 3,
        }
    }

    /// `{"error": {"kind": ..., "message": ...}}`
    pub fn record(&self) -> Value {
        let (kind, message) = match self {
            RunError::Validation(m) => ("validation", m),
            RunError::Numerical(m) => ("numerical", m),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Validation(m) => write!(f, "validation error: {m}"),
            RunError::Numerical(m) => write!(f, "numerical error: {m}"),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            RunError::Numerical(e.to_string())
        } else {
            RunError::Validation(e.to_string())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: Kind,
    pub inputs_digest: String,
    pub seed: u64,
    pub results: Value,
    pub diagnostics: Vec<String>,
    /// Plain-text rendering for terminals; not part of the JSON report.
    pub summary: String,
}

impl Report {
    pub fn to_value(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "inputs_digest": self.inputs_digest,
            "seed": self.seed,
            "results": self.results,
            "diagnostics": self.diagnostics,
        })
    }

    pub fn render(&self, pretty: bool) -> String {
        render_json(&self.to_value(), pretty)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Serializes with every float in 17-significant-digit scientific form.
pub fn render_json(value: &Value, pretty: bool) -> String {
    let mut out = String::new();
    write_value(value, pretty, 0, &mut out);
    if pretty {
        out.push('\n');
    }
    out
}

fn write_value(value: &Value, pretty: bool, depth: usize, out: &mut String) {
    let newline = |out: &mut String, depth: usize| {
        if pretty {
            out.push('\n');
            out.push_str(&"  ".repeat(depth));
        }
    };
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else {
                let x = n.as_f64().unwrap_or(f64::NAN);
                if x.is_finite() {
                    let _ = write!(out, "{x:.16e}");
                } else {
                    out.push_str("null");
                }
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline(out, depth + 1);
                write_value(item, pretty, depth + 1, out);
            }
            newline(out, depth);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (k, v)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline(out, depth + 1);
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push(':');
                if pretty {
                    out.push(' ');
                }
                write_value(v, pretty, depth + 1, out);
            }
            newline(out, depth);
            out.push('}');
        }
    }
}

fn invalid(msg: impl Into<String>) -> RunError {
    RunError::Validation(msg.into())
}

fn parse_payload<T: DeserializeOwned>(payload: Map<String, Value>) -> Result<T, RunError> {
    serde_json::from_value(Value::Object(payload)).map_err(|e| invalid(format!("schema: {e}")))
}

fn horizon_default() -> f64 {
    1.0
}

fn trials_default() -> usize {
    DEFAULT_TRIALS
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PricePayload {
    p: MatrixJson,
    kernel: KernelRecord,
    claims: Vec<ClaimRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CalibratePayload {
    n: usize,
    bond_price: f64,
    quotes: Vec<QuoteRecord>,
    #[serde(default)]
    p: Option<MatrixJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OptimizePayload {
    p: MatrixJson,
    kernel: KernelRecord,
    basis: MatrixJson,
    budget: f64,
    utility: UtilityFunction,
    #[serde(default = "horizon_default")]
    horizon: f64,
    #[serde(default = "trials_default")]
    trials: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReturnsPayload {
    p: MatrixJson,
    kernel: KernelRecord,
    claim: ClaimRecord,
    #[serde(default = "horizon_default")]
    horizon: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KsPayload {
    #[serde(default)]
    system: Option<KsSystemRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MenuPayload {
    state: MatrixJson,
    payouts: Vec<[f64; 4]>,
    #[serde(default)]
    utility: Option<UtilityFunction>,
    #[serde(default)]
    kernel: Option<KernelRecord>,
    #[serde(default)]
    system: Option<KsSystemRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct PortfolioPayload {
    dims: [usize; 2],
    rho: MatrixJson,
    U: MatrixJson,
    V: MatrixJson,
    theta: [f64; 2],
    kernel: KernelRecord,
}

/// Parses and runs one scenario. `seed_override` (the `--seed` flag) wins
/// over a `"seed"` field in the file.
pub fn run_scenario(kind: Kind, bytes: &[u8], seed_override: Option<u64>, tol: &Tolerances) -> Result<Report, RunError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| invalid(format!("malformed JSON: {e}")))?;
    let Value::Object(mut payload) = value else {
        return Err(invalid("scenario must be a JSON object"));
    };
    if let Some(k) = payload.remove("kind") {
        let named = k.as_str().ok_or_else(|| invalid("`kind` must be a string"))?;
        if named != kind.name() {
            return Err(invalid(format!("scenario kind `{named}` does not match subcommand `{kind}`")));
        }
    }
    let file_seed = match payload.remove("seed") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_u64().ok_or_else(|| invalid("`seed` must be a nonnegative integer"))?),
    };
    let seed = seed_override.or(file_seed).unwrap_or(DEFAULT_SEED);

    let mut diagnostics = Vec::new();
    let (results, summary) = match kind {
        Kind::Price => run_price(parse_payload(payload)?, tol, &mut diagnostics)?,
        Kind::Calibrate => run_calibrate(parse_payload(payload)?, tol)?,
        Kind::Optimize => run_optimize(parse_payload(payload)?, seed, tol, &mut diagnostics)?,
        Kind::Returns => run_returns(parse_payload(payload)?, tol, &mut diagnostics)?,
        Kind::Ks => run_ks(parse_payload(payload)?, &mut diagnostics)?,
        Kind::Menu => run_menu(parse_payload(payload)?, tol)?,
        Kind::Portfolio => run_portfolio(parse_payload(payload)?, tol)?,
    };
    Ok(Report { kind, inputs_digest: digest(bytes), seed, results, diagnostics, summary })
}

type Outcome = Result<(Value, String), RunError>;

fn run_price(payload: PricePayload, tol: &Tolerances, diagnostics: &mut Vec<String>) -> Outcome {
    let p = density_from_json(&payload.p, tol)?;
    let kernel = payload.kernel.to_kernel(tol)?;
    let claims = payload.claims.iter().map(|c| c.to_claim(tol)).collect::<crate::Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut summary = String::new();
    for (i, claim) in claims.iter().enumerate() {
        let pr = price(&kernel, claim)?;
        let ex = expected_payout(&p, claim)?;
        let _ = writeln!(summary, "claim {i}: price {pr:.10} expected payout {ex:.10}");
        rows.push(json!({ "price": pr, "expected_payout": ex, "payouts": claim.payouts() }));
    }
    let report = check_axioms(&kernel, &p, &claims, tol)?;
    let equivalent = equivalent_states(&p, kernel.q(), tol)?;
    for v in report.violations.iter().chain(&report.consequence_violations) {
        diagnostics.push(format!("axiom {}: {}", v.axiom, v.description));
    }
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "axiom": v.axiom,
                "description": v.description,
                "magnitude": v.magnitude,
                "witness": v.witness.as_ref().map(ClaimRecord::from_claim),
            })
        })
        .collect();
    let _ = writeln!(
        summary,
        "axioms: positivity {} linearity {} bond {}; states equivalent: {equivalent}",
        report.axiom1_holds, report.axiom2_holds, report.axiom3_holds
    );
    let results = json!({
        "claims": rows,
        "axioms": {
            "axiom1_holds": report.axiom1_holds,
            "axiom2_holds": report.axiom2_holds,
            "axiom3_holds": report.axiom3_holds,
            "commuting_pairs_checked": report.commuting_pairs_checked,
            "noncommuting_pairs_checked": report.noncommuting_pairs_checked,
            "noncommuting_linearity_holds": report.consequence_violations.is_empty(),
            "violations": violations,
        },
        "equivalent_states": equivalent,
    });
    Ok((results, summary))
}

fn run_calibrate(payload: CalibratePayload, tol: &Tolerances) -> Outcome {
    let quotes = payload
        .quotes
        .iter()
        .map(|q| Ok((q.claim.to_claim(tol)?, q.price)))
        .collect::<crate::Result<Vec<_>>>()?;
    let cal = claims::calibrate(payload.n, payload.bond_price, &quotes, tol)?;
    let q = cal.kernel.q();
    let eigenvalues = q.op().eigenvalues(tol)?;
    let equivalent = match &payload.p {
        Some(p) => Some(equivalent_states(&density_from_json(p, tol)?, q, tol)?),
        None => None,
    };
    let repriced = quotes.iter().map(|(c, _)| price(&cal.kernel, c)).collect::<crate::Result<Vec<_>>>()?;
    let summary = format!(
        "calibrated {n}x{n} pricing state from {m} equations: rank {r}, residual {res:e}, min eigenvalue {min:e}\n",
        n = payload.n,
        m = cal.equations,
        r = cal.rank,
        res = cal.residual,
        min = eigenvalues[0],
    );
    let results = json!({
        "kernel": KernelRecord::from_kernel(&cal.kernel),
        "rank": cal.rank,
        "equations": cal.equations,
        "residual": cal.residual,
        "eigenvalues": eigenvalues,
        "repriced": repriced,
        "equivalent_to_p": equivalent,
    });
    Ok((results, summary))
}

fn run_optimize(payload: OptimizePayload, seed: u64, tol: &Tolerances, diagnostics: &mut Vec<String>) -> Outcome {
    payload.utility.validate()?;
    let p = density_from_json(&payload.p, tol)?;
    let kernel = payload.kernel.to_kernel(tol)?;
    let basis = basis_from_json(&payload.basis, tol)?;
    let u = payload.utility;
    let inv = investment::optimal_payouts(&p, &kernel, &basis, payload.budget, &u, tol)?;
    let eu = investment::expected_utility(&p, &basis, &inv.payouts, &u, tol)?;
    let returns = investment::rate_of_return(&p, &kernel, &inv.claim(), payload.horizon)?;
    let divergence = investment::kl_divergence(&inv.p_marginals, &inv.q_marginals)?;
    let check = investment::verify_optimality(&inv, &p, &kernel, &u, payload.trials, seed, tol)?;
    let foc = inv
        .payouts
        .iter()
        .zip(inv.p_marginals.iter().zip(&inv.q_marginals))
        .map(|(&x, (&pj, &qj))| (u.marginal(x) * pj - inv.lambda * qj).abs())
        .fold(0.0f64, f64::max);
    if !check.holds {
        diagnostics.push(format!("an alternative beat the candidate by {:e}", check.worst_excess));
    }
    let log_optimal = if u == UtilityFunction::Log {
        let factor = investment::log_optimal_excess_factor(&inv.p_marginals, &inv.q_marginals)?;
        let realized = (returns.excess_rate * returns.horizon).exp();
        Some(json!({
            "excess_factor": factor,
            "realized_excess_factor": realized,
            "identity_gap": (factor - realized).abs(),
            "bound_slack": factor - (1.0 + divergence.kl),
            "entropy_identity_gap": (eu - (payload.budget / kernel.discount()).ln() - divergence.kl).abs(),
        }))
    } else {
        None
    };
    let summary = format!(
        "optimal payouts {:?}\nlambda {:.12e}, price {:.12}, expected utility {:.12}\nexcess rate {:.12e}, KL {:.12e}, optimality over {} trials: {}\n",
        inv.payouts, inv.lambda, inv.realized_price, eu, returns.excess_rate, divergence.kl, check.trials, check.holds
    );
    let results = json!({
        "payouts": inv.payouts,
        "lambda": inv.lambda,
        "budget": inv.budget,
        "realized_price": inv.realized_price,
        "p_marginals": inv.p_marginals,
        "q_marginals": inv.q_marginals,
        "expected_utility": eu,
        "first_order_residual": foc,
        "returns": returns,
        "divergence": { "kl": divergence.kl },
        "log_optimal": log_optimal,
        "optimality": {
            "holds": check.holds,
            "trials": check.trials,
            "candidate_utility": check.candidate_utility,
            "best_alternative_utility": check.best_alternative_utility,
            "worst_excess": check.worst_excess,
        },
    });
    Ok((results, summary))
}

fn run_returns(payload: ReturnsPayload, tol: &Tolerances, diagnostics: &mut Vec<String>) -> Outcome {
    let p = density_from_json(&payload.p, tol)?;
    let kernel = payload.kernel.to_kernel(tol)?;
    let claim = payload.claim.to_claim(tol)?;
    let returns = investment::rate_of_return(&p, &kernel, &claim, payload.horizon)?;
    let pm = p.marginals(claim.basis(), tol)?;
    let qm = kernel.q().marginals(claim.basis(), tol)?;
    let kl = match investment::kl_divergence(&pm, &qm) {
        Ok(d) => Some(d.kl),
        Err(e) => {
            diagnostics.push(format!("divergence unavailable: {e}"));
            None
        }
    };
    let summary = format!(
        "gross return {:.12}, interest rate {:.12e}, excess rate {:.12e}\n",
        returns.gross_return, returns.interest_rate, returns.excess_rate
    );
    let results = json!({
        "returns": returns,
        "price": price(&kernel, &claim)?,
        "expected_payout": expected_payout(&p, &claim)?,
        "p_marginals": pm,
        "q_marginals": qm,
        "kl": kl,
    });
    Ok((results, summary))
}

fn run_ks(payload: KsPayload, diagnostics: &mut Vec<String>) -> Outcome {
    let sys = match &payload.system {
        Some(rec) => rec.to_system()?,
        None => ks::cabello_system(),
    };
    let structure = ks::verify_structure(&sys);
    diagnostics.extend(structure.diagnostics.iter().cloned());
    let search = ks::search_colourings(&sys)?;
    let parity = match ks::parity_certificate(&sys) {
        Ok(b) => Some(b),
        Err(e) => {
            diagnostics.push(format!("parity certificate not applicable: {e}"));
            None
        }
    };
    let incidence: Vec<Vec<usize>> = (0..sys.rays.len()).map(|id| sys.bases_containing(id)).collect();

    let mut summary = String::from("ray  components        bases\n");
    for (ray, bases) in sys.rays.iter().zip(&incidence) {
        let comps: Vec<String> = ray.components.iter().map(|x| format!("{x:>2}")).collect();
        let _ = writeln!(summary, "{:>3}  {}   {:?}", ray.id, comps.join(" "), bases);
    }
    let verdict = if search.valid_count == 0 {
        "no assignment of 0/1 values gives exactly one 1 per basis: not classically colourable"
    } else {
        "classically colourable"
    };
    let _ = writeln!(
        summary,
        "structure ok: {}; valid colourings: {} of {}; parity certificate: {:?}\n{verdict}",
        structure.ok, search.valid_count, search.assignments_searched, parity
    );
    let results = json!({
        "system": KsSystemRecord::from_system(&sys),
        "incidence": incidence,
        "structure_ok": structure.ok,
        "orthogonal_pairs_checked": structure.orthogonal_pairs_checked,
        "completeness_checked": structure.completeness_checked,
        "max_completeness_error": structure.max_completeness_error,
        "valid_colourings": search.valid_count,
        "assignments_searched": search.assignments_searched,
        "witness": search.witness,
        "parity_certificate": parity,
        "verdict": verdict,
    });
    Ok((results, summary))
}

fn run_menu(payload: MenuPayload, tol: &Tolerances) -> Outcome {
    let sys = match &payload.system {
        Some(rec) => rec.to_system()?,
        None => ks::cabello_system(),
    };
    let state = density_from_json(&payload.state, tol)?;
    let kernel = payload.kernel.as_ref().map(|k| k.to_kernel(tol)).transpose()?;
    if let Some(u) = &payload.utility {
        u.validate()?;
    }
    let menu = ContractMenu::new(sys, payload.payouts, state, kernel)?;
    emit_menu_report(&menu, payload.utility.as_ref(), tol)
}

/// Probability table, per-contract scores and the chosen contract.
pub fn emit_menu_report(menu: &ContractMenu, utility: Option<&UtilityFunction>, tol: &Tolerances) -> Outcome {
    let probabilities = ks::menu_probabilities(menu, tol)?;
    let choice = ks::choose_contract(menu, utility, tol)?;
    let prices = ks::menu_prices(menu, tol)?;
    let row_sums: Vec<f64> = probabilities.iter().map(|r| r.iter().sum()).collect();
    let mut summary = String::from("contract  probabilities                               score\n");
    for (r, (row, score)) in probabilities.iter().zip(&choice.scores).enumerate() {
        let probs: Vec<String> = row.iter().map(|p| format!("{p:.6}")).collect();
        let _ = writeln!(summary, "{r:>8}  {}  {score:.10}", probs.join(" "));
    }
    let _ = writeln!(summary, "chosen contract: {}", choice.index);
    let results = json!({
        "probabilities": probabilities,
        "row_sums": row_sums,
        "scores": choice.scores,
        "mode": if utility.is_some() { "expected_utility" } else { "expected_payout" },
        "chosen_index": choice.index,
        "prices": prices,
    });
    Ok((results, summary))
}

fn run_portfolio(payload: PortfolioPayload, tol: &Tolerances) -> Outcome {
    let dims = (payload.dims[0], payload.dims[1]);
    let state = TwoPartyState::new(dims, density_from_json(&payload.rho, tol)?)?;
    let kernel = payload.kernel.to_kernel(tol)?;
    let u = hermitian_from_json(&payload.U, tol)?;
    let v = hermitian_from_json(&payload.V, tol)?;
    let pf = PortfolioObservable::new(u.clone(), v.clone(), (payload.theta[0], payload.theta[1]))?;
    let payout = multi::portfolio_expected_payout(&state, &pf)?;
    let value = multi::portfolio_price(&kernel, dims, &pf)?;
    let cov_p = multi::payout_covariance(&state, &u, &v)?;
    let cov_q = multi::price_covariance(&kernel, dims, &u, &v)?;
    let ppt = multi::is_ppt(&state, tol)?;
    let summary = format!(
        "expected payout {:.12} (legs {:?})\nprice {:.12} (legs {:?})\ncovariance physical {:.12e}, pricing {:.12e}; PPT {}\n",
        payout.joint, payout.legs, value.joint, value.legs, cov_p.covariance, cov_q.covariance, ppt
    );
    let results = json!({
        "expected_payout": { "joint": payout.joint, "legs": payout.legs, "split_discrepancy": payout.split_discrepancy() },
        "price": { "joint": value.joint, "legs": value.legs, "split_discrepancy": value.split_discrepancy() },
        "covariance_physical": cov_p,
        "covariance_pricing": cov_q,
        "marginal_first": matrix_to_json(state.marginal(Subsystem::First).matrix()),
        "marginal_second": matrix_to_json(state.marginal(Subsystem::Second).matrix()),
        "ppt": ppt,
    });
    Ok((results, summary))
}
