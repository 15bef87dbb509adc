//! Formulas over named connectives: syntax, evaluation, rewriting, compiled
//! evaluation and CNF encoding.

mod ast;
mod circuit;
mod cnf;
mod literal;
mod ops;
mod parse;

pub use ast::Formula;
pub use circuit::{block_words, lane_mask, Circuit};
pub(crate) use circuit::gate_word;
pub use cnf::{encode_cnf, CnfBuilder, Enc};
pub use literal::{has_complementary, render_literals, Literal};
pub use ops::{
    balanced_tree, check_associative, replace_connectives, substitute_const, substitute_var,
    Template,
};
pub use parse::{is_identifier, parse_formula, parse_formula_at, parse_literal};
