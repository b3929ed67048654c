//! Registry of identities with an exact verifier.

mod registry;
mod verify;

pub use registry::{durfee_class_spec, durfee_expressions, find_entry, IdentityEntry, REGISTRY};
pub use verify::{
    build, jobs, run_job, verify, verify_all, verify_perturbed, Built, Check, CheckOutcome,
    FirstDiff, IdentityReport, Job, Params, Perturbation, Side, Status,
};
