//! Abduction instances, explanation checking, the exhaustive oracle and the
//! constant-elimination transforms.

mod instance;
mod constants;
mod oracle;
mod verify;

pub use instance::{validate_instance, Explanation, Instance, Manifestation};
pub use constants::{eliminate_false, eliminate_false_with, eliminate_true, fresh_name};
pub use oracle::{
    oracle_count_full, oracle_enumerate, oracle_solve, oracle_table, ORACLE_MAX_HYPS,
    ORACLE_MAX_VARS,
};
pub use verify::{
    extend_to_full, is_explanation, verify_explanation, Encodings, SatCtx, Verification,
};
pub(crate) use verify::verify_with;
