//! Boolean functions as truth tables, the properties that carve out Post's
//! lattice, and a brute-force closure oracle.

mod closure;
mod properties;
mod table;

pub use closure::{clone_closure, in_closure, MAX_CLOSURE_ARITY};
pub use properties::{
    essential_variables, function_properties, separating_degree, PropertyRecord, SepDegree, Shape,
};
pub use table::{args_to_row, named, row_to_args, Connective, FunctionSet, TruthTable, MAX_ARITY};
