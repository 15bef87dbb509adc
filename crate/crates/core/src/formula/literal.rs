use std::fmt;

use serde::Serialize;

/// A variable or its negation. Orders by variable name, negative first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Literal {
    pub var: String,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: impl Into<String>, positive: bool) -> Self {
        Literal {
            var: var.into(),
            positive,
        }
    }

    pub fn negated(&self) -> Self {
        Literal {
            var: self.var.clone(),
            positive: !self.positive,
        }
    }

    pub fn holds(&self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "!{}", self.var)
        }
    }
}

/// Renders literals separated by single spaces.
pub fn render_literals(lits: &[Literal]) -> String {
    lits.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// True if some variable occurs with both signs.
pub fn has_complementary(lits: &[Literal]) -> bool {
    lits.iter()
        .any(|l| lits.iter().any(|m| m.var == l.var && m.positive != l.positive))
}
