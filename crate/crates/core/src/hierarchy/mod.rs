pub mod lp;
pub mod search;
pub mod witness;

pub use lp::{lp_feasible, Budget, FeasibilityProblem, LpOutcome};
pub use search::{
    critically_nonspreading_probe, search_nonspreading, Criticality, SearchConfig, SearchContext, SearchOutcome,
    SearchReport,
};
pub use witness::{
    normalize_witness, verify_nonqi, verify_nonseparating, verify_nonspreading, verify_nonsynchronising, Level,
    Rejection, Witness,
};
