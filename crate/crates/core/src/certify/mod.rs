//! Locality certificates and optimality bounds.

mod bounds;
mod locality;

pub use bounds::{
    cm_certify, griesmer_check, griesmer_length, kopt_upper, singleton_rd_bound, BoundError,
    BoundName, BoundReport, BoundRow, KOptimal, KoptBound, Verdicts, YesNo,
};
pub use locality::{
    best_deltas, certify_locality, verify_repair_set, LocalityCertificate, LocalityError,
};
