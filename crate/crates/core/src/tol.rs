//! Numerical thresholds shared by every module.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub hermiticity: f64,
    pub ortho: f64,
    pub trace: f64,
    pub psd: f64,
    pub null: f64,
    pub recon: f64,
    pub price: f64,
    pub calib: f64,
    pub budget: f64,
    /// Slack allowed when an alternative payout is compared to a candidate optimum.
    pub opt: f64,
    /// Smallest admissible Born marginal on a measurement basis for the optimiser.
    pub marginal_floor: f64,
    pub corr: f64,
    /// Relative singular-value cut-off used to determine calibration rank.
    pub rank: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermiticity: 1e-9,
        ortho: 1e-9,
        trace: 1e-9,
        psd: 1e-9,
        null: 1e-9,
        recon: 1e-8,
        price: 1e-8,
        calib: 1e-8,
        budget: 1e-8,
        opt: 1e-9,
        marginal_floor: 1e-12,
        corr: 1e-10,
        rank: 1e-10,
    };

    /// Multiply every threshold by `factor`.
    pub fn scaled(&self, factor: f64) -> Tolerances {
        Tolerances {
            hermiticity: self.hermiticity * factor,
            ortho: self.ortho * factor,
            trace: self.trace * factor,
            psd: self.psd * factor,
            null: self.null * factor,
            recon: self.recon * factor,
            price: self.price * factor,
            calib: self.calib * factor,
            budget: self.budget * factor,
            opt: self.opt * factor,
            marginal_floor: self.marginal_floor * factor,
            corr: self.corr * factor,
            rank: self.rank * factor,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::DEFAULT
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_is_uniform() {
        let t = Tolerances::default().scaled(10.0);
        assert_eq!(t.hermiticity, 1e-8);
        assert_eq!(t.recon, 1e-7);
        assert_eq!(t.marginal_floor, 1e-11);
    }
}
