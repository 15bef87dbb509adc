use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::boolean::FunctionSet;
use crate::error::{AbdError, Result};

use super::clones::{clone_leq, identify_clone, CloneId, Family};

/// Manifestation kind: a single literal, a clause, a term, or a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Variant {
    Q,
    C,
    T,
    F,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Q, Variant::C, Variant::T, Variant::F];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Variant {
    type Err = AbdError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(Variant::Q),
            "C" => Ok(Variant::C),
            "T" => Ok(Variant::T),
            "F" => Ok(Variant::F),
            _ => Err(AbdError::Input(format!("unknown variant `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[allow(non_camel_case_types)]
pub enum ComplexityLabel {
    IN_L,
    P_PARITYL_HARD,
    NP_COMPLETE,
    SIGMA2P_COMPLETE,
    FP,
    SHARP_P_COMPLETE,
    SHARP_CONP_COMPLETE,
}

impl ComplexityLabel {
    pub fn is_counting(self) -> bool {
        use ComplexityLabel::*;
        matches!(self, FP | SHARP_P_COMPLETE | SHARP_CONP_COMPLETE)
    }
}

impl fmt::Display for ComplexityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn contains(c: CloneId, f: Family) -> bool {
    clone_leq(CloneId::plain(f), c)
}

fn inside(c: CloneId, f: Family) -> bool {
    clone_leq(c, CloneId::plain(f))
}

pub fn classify_clone_decision(c: CloneId, variant: Variant) -> ComplexityLabel {
    use ComplexityLabel::*;
    use Family::*;
    let any = |fs: &[Family]| fs.iter().any(|&f| contains(c, f));
    let parity = contains(c, L2) && inside(c, L);
    match variant {
        Variant::Q | Variant::C | Variant::T => {
            let np_row = if variant == Variant::T {
                [V2, S10, D2]
            } else {
                [S00, S10, D2]
            };
            if any(&[S02, S12, D1]) {
                SIGMA2P_COMPLETE
            } else if any(&np_row) && inside(c, M) {
                NP_COMPLETE
            } else if parity {
                P_PARITYL_HARD
            } else {
                IN_L
            }
        }
        Variant::F => {
            if any(&[S00, S10, D2]) {
                SIGMA2P_COMPLETE
            } else if parity {
                P_PARITYL_HARD
            } else {
                IN_L
            }
        }
    }
}

pub fn classify_clone_counting(c: CloneId) -> ComplexityLabel {
    use ComplexityLabel::*;
    use Family::*;
    let any = |fs: &[Family]| fs.iter().any(|&f| contains(c, f));
    if any(&[S02, S12, D1]) {
        SHARP_CONP_COMPLETE
    } else if any(&[V2, S10, D2]) && inside(c, M) {
        SHARP_P_COMPLETE
    } else {
        FP
    }
}

pub fn classify_decision(b: &FunctionSet, variant: Variant) -> ComplexityLabel {
    classify_clone_decision(identify_clone(b), variant)
}

pub fn classify_counting(b: &FunctionSet) -> ComplexityLabel {
    classify_clone_counting(identify_clone(b))
}
