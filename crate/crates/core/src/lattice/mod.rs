//! Post's lattice: clone names, standard bases, identification of the clone
//! generated by a set of functions, inclusion, the complexity tables and
//! synthesis of representations over a base.

mod classify;
mod clones;
mod synth;

pub use classify::{
    classify_clone_counting, classify_clone_decision, classify_counting, classify_decision,
    ComplexityLabel, Variant,
};
pub use clones::{
    base_of, clone_leq, identify_clone, identify_signature, identify_tables, signature_of,
    signature_of_tables, CloneId, CloneSignature, Family, MAX_BASE_DEGREE,
};
pub use synth::{synthesize_representation, DEFAULT_SYNTH_BUDGET};
