//! Exhaustive and randomised verification campaigns.
//!
//! Outcomes are classified three ways: a failed premise is *skipped*, a failed
//! conclusion under valid premises is a *violation*, and a small-order failure
//! of a statement that only claims large orders is a *finding*.

mod campaigns;
mod enumerate;
mod report;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use campaigns::{
    campaign_all, campaign_c5_triangle_free, campaign_counterexample_t, campaign_fk_properties,
    campaign_forbidden_structures, campaign_theorem_main, run_campaign, run_statement, CAMPAIGNS,
    STRUCTURE_STATEMENTS,
};
pub use enumerate::{enumerate_graphs, DegreeBound, EnumerationConstraints, MAX_EXHAUSTIVE_ORDER};
pub use report::{CampaignReport, ConsolidatedReport, Item, StatementSummary, Witness};

use crate::optimizer::Exact;

/// Largest order enumerated without an explicit opt-in.
pub const DEFAULT_ORDER_LIMIT: usize = 11;

/// Parameters shared by all campaigns; the seed fixes every random choice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CampaignConfig {
    /// Largest order of the exhaustive corpus.
    pub n_max: usize,
    /// Permit `n_max` of 12 or 13.
    pub allow_large: bool,
    pub ell: usize,
    /// Largest Andrásfai level of the random blow-ups.
    pub k_max: usize,
    /// Slack in `δ > (1/5 + ε)n`.
    pub epsilon: Exact,
    pub seed: u64,
    pub blowup_count: usize,
    pub blowup_max_order: usize,
    /// Node budget per homomorphism search; `None` searches exhaustively.
    pub budget: Option<u64>,
    /// Levels covered by the `F_k` property campaign.
    pub fk_k_max: usize,
    /// Copies of each `F_k` examined per host.
    pub fk_copies: usize,
    pub t_ells: Vec<usize>,
    pub t_k_max: usize,
    pub c5_n_max: usize,
    /// Additive term in `δ > n/6 + c`.
    pub c5_offset: Exact,
    /// Also search order 12 at `δ ≥ n/6 + 1` for triangles.
    pub c5_probe_12: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            n_max: DEFAULT_ORDER_LIMIT,
            allow_large: false,
            ell: 3,
            k_max: 5,
            epsilon: Exact(BigRational::from_integer(0.into())),
            seed: 1,
            blowup_count: 200,
            blowup_max_order: 60,
            budget: None,
            fk_k_max: 6,
            fk_copies: 4,
            t_ells: vec![4, 6],
            t_k_max: 5,
            c5_n_max: 10,
            c5_offset: Exact(BigRational::from_integer(1.into())),
            c5_probe_12: false,
        }
    }
}
