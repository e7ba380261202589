use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("{name} = {value} must lie strictly between 0 and 1")]
    OutOfUnitInterval { name: &'static str, value: f64 },
    #[error("{0} must be positive")]
    ZeroBudget(&'static str),
}

/// Tunable constants shared by the solvers.
///
/// `eps0 = 18 beta` and `eps1 = 8 sqrt(eps0)` by default; either may be
/// overridden after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub beta: f64,
    pub eps0: f64,
    pub eps1: f64,
    pub gamma: f64,
    pub rho: f64,
    pub search_node_budget: u64,
    pub resample_limit: u32,
    pub rng_seed: u64,
    /// Witnesses needed before a pair becomes a centers-graph edge.
    pub center_witnesses: usize,
    /// Degree in the centers graph that puts a vertex into `C`.
    pub center_degree: usize,
    /// Required degree of some neighbour of a `C` vertex.
    pub center_neighbor_degree: usize,
}

pub const DEFAULT_BETA: f64 = 0.0005;

impl Parameters {
    pub fn from_beta(beta: f64) -> Self {
        let eps0 = 18.0 * beta;
        let eps1 = 8.0 * eps0.sqrt();
        Self {
            beta,
            eps0,
            eps1,
            gamma: 0.01,
            rho: default_rho(eps1),
            search_node_budget: 20_000_000,
            resample_limit: 64,
            rng_seed: 0,
            center_witnesses: 16,
            center_degree: 7,
            center_neighbor_degree: 2,
        }
    }

    /// Replaces `eps1` and the `rho` derived from it.
    pub fn with_eps1(mut self, eps1: f64) -> Self {
        self.eps1 = eps1;
        self.rho = default_rho(eps1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, value) in [
            ("beta", self.beta),
            ("eps0", self.eps0),
            ("eps1", self.eps1),
            ("gamma", self.gamma),
            ("rho", self.rho),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return Err(ParamError::OutOfUnitInterval { name, value });
            }
        }
        if self.search_node_budget == 0 {
            return Err(ParamError::ZeroBudget("search_node_budget"));
        }
        if self.resample_limit == 0 {
            return Err(ParamError::ZeroBudget("resample_limit"));
        }
        Ok(())
    }
}

impl Default for Parameters {
    fn default() -> Self {
        Self::from_beta(DEFAULT_BETA)
    }
}

/// Completion-stage slack: the remaining sets inherit degree deficits of
/// order `eps1`, capped so that the good-pair threshold `1 - sqrt(rho)` stays
/// at one half or more.
fn default_rho(eps1: f64) -> f64 {
    (4.0 * eps1).min(0.25)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_constants() {
        let p = Parameters::from_beta(0.0005);
        assert!((p.eps0 - 0.009).abs() < 1e-12);
        assert!((p.eps1 - 8.0 * 0.009f64.sqrt()).abs() < 1e-12);
        p.validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range() {
        let p = Parameters::from_beta(0.01);
        assert!(matches!(
            p.validate(),
            Err(ParamError::OutOfUnitInterval { name: "eps1", .. })
        ));
        let mut q = Parameters::default();
        q.search_node_budget = 0;
        assert_eq!(q.validate(), Err(ParamError::ZeroBudget("search_node_budget")));
    }
}
