use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::boolean::{
    function_properties, named, separating_degree, Connective, FunctionSet, SepDegree, TruthTable,
};
use crate::error::{AbdError, Result};

macro_rules! families {
    ($($f:ident),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Family { $($f),* }

        impl Family {
            pub const ALL: &'static [Family] = &[$(Family::$f),*];

            pub fn name(self) -> &'static str {
                match self { $(Family::$f => stringify!($f)),* }
            }
        }
    };
}

families!(
    BF, R0, R1, R2, M, M0, M1, M2, S0, S1, S00, S01, S02, S10, S11, S12, D, D1, D2, L, L0, L1, L2,
    L3, V, V0, V1, V2, E, E0, E1, E2, N, N2, I, I0, I1, I2,
);

impl Family {
    /// Families that also come in finite-degree versions `F^k`.
    pub fn is_parametric(self) -> bool {
        use Family::*;
        matches!(self, S0 | S1 | S00 | S01 | S02 | S10 | S11 | S12)
    }

    fn separates_zero(self) -> bool {
        use Family::*;
        matches!(self, S0 | S00 | S01 | S02)
    }
}

/// A clone of Post's lattice. `degree` is set only for the finite-degree
/// members of the parametric families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CloneId {
    pub family: Family,
    pub degree: Option<u32>,
}

impl CloneId {
    pub fn new(family: Family, degree: Option<u32>) -> Result<Self> {
        match degree {
            Some(k) if !family.is_parametric() => Err(AbdError::Input(format!(
                "{} carries no degree, got {k}",
                family.name()
            ))),
            Some(k) if k < 2 => Err(AbdError::Input(format!("degree must be >= 2, got {k}"))),
            _ => Ok(CloneId { family, degree }),
        }
    }

    pub const fn plain(family: Family) -> Self {
        CloneId {
            family,
            degree: None,
        }
    }

    pub fn all_plain() -> impl Iterator<Item = CloneId> {
        Family::ALL.iter().map(|&f| CloneId::plain(f))
    }

    /// Plain clones followed by each parametric family at degrees `2..=max`.
    pub fn catalog(max_degree: u32) -> Vec<CloneId> {
        let mut out: Vec<CloneId> = CloneId::all_plain().collect();
        for &f in Family::ALL.iter().filter(|f| f.is_parametric()) {
            for k in 2..=max_degree {
                out.push(CloneId {
                    family: f,
                    degree: Some(k),
                });
            }
        }
        out
    }

    /// Image under `f -> dual(f)`.
    pub fn dual(self) -> CloneId {
        use Family::*;
        let f = match self.family {
            R0 => R1,
            R1 => R0,
            M0 => M1,
            M1 => M0,
            S0 => S1,
            S1 => S0,
            S00 => S10,
            S10 => S00,
            S01 => S11,
            S11 => S01,
            S02 => S12,
            S12 => S02,
            L0 => L1,
            L1 => L0,
            V => E,
            E => V,
            V0 => E1,
            E1 => V0,
            V1 => E0,
            E0 => V1,
            V2 => E2,
            E2 => V2,
            I0 => I1,
            I1 => I0,
            other => other,
        };
        CloneId {
            family: f,
            degree: self.degree,
        }
    }

    pub(crate) fn constraints(self) -> Constraints {
        use Family::*;
        let mut c = Constraints::default();
        let sep = Some(match self.degree {
            Some(k) => SepDegree::Finite(k),
            None => SepDegree::Infinite,
        });
        match self.family {
            BF => {}
            R0 => c.r0 = true,
            R1 => c.r1 = true,
            R2 => (c.r0, c.r1) = (true, true),
            M => c.m = true,
            M0 => (c.m, c.r0) = (true, true),
            M1 => (c.m, c.r1) = (true, true),
            M2 => (c.m, c.r0, c.r1) = (true, true, true),
            D => c.d = true,
            D1 => (c.d, c.r0, c.r1) = (true, true, true),
            D2 => (c.d, c.m) = (true, true),
            L => c.l = true,
            L0 => (c.l, c.r0) = (true, true),
            L1 => (c.l, c.r1) = (true, true),
            L2 => (c.l, c.r0, c.r1) = (true, true, true),
            L3 => (c.l, c.d) = (true, true),
            V => c.v = true,
            V0 => (c.v, c.r0) = (true, true),
            V1 => (c.v, c.r1) = (true, true),
            V2 => (c.v, c.r0, c.r1) = (true, true, true),
            E => c.e = true,
            E0 => (c.e, c.r0) = (true, true),
            E1 => (c.e, c.r1) = (true, true),
            E2 => (c.e, c.r0, c.r1) = (true, true, true),
            N => c.n = true,
            // N ∩ D: negation and the identity
            N2 => (c.n, c.d) = (true, true),
            I => (c.v, c.e) = (true, true),
            I0 => (c.v, c.e, c.r0) = (true, true, true),
            I1 => (c.v, c.e, c.r1) = (true, true, true),
            I2 => (c.v, c.e, c.r0, c.r1) = (true, true, true, true),
            f @ (S0 | S00 | S01 | S02) => {
                c.s0 = sep;
                match f {
                    S00 => (c.r0, c.r1, c.m) = (true, true, true),
                    S01 => c.m = true,
                    S02 => (c.r0, c.r1) = (true, true),
                    _ => {}
                }
            }
            f @ (S1 | S10 | S11 | S12) => {
                c.s1 = sep;
                match f {
                    S10 => (c.r0, c.r1, c.m) = (true, true, true),
                    S11 => c.m = true,
                    S12 => (c.r0, c.r1) = (true, true),
                    _ => {}
                }
            }
        }
        c
    }
}

impl fmt::Display for CloneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            Some(k) => write!(f, "{}^{k}", self.family.name()),
            None => write!(f, "{}", self.family.name()),
        }
    }
}

impl Serialize for CloneId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for CloneId {
    type Err = AbdError;

    fn from_str(s: &str) -> Result<Self> {
        let (name, degree) = match s.split_once('^') {
            Some((n, d)) => (
                n,
                Some(
                    d.parse::<u32>()
                        .map_err(|_| AbdError::Input(format!("invalid degree in `{s}`")))?,
                ),
            ),
            None => (s, None),
        };
        let family = Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == name)
            .ok_or_else(|| AbdError::Input(format!("unknown clone `{s}`")))?;
        CloneId::new(family, degree)
    }
}

/// Membership conditions of a clone, as a conjunction of property clones.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Constraints {
    r0: bool,
    r1: bool,
    m: bool,
    d: bool,
    l: bool,
    v: bool,
    e: bool,
    n: bool,
    s0: Option<SepDegree>,
    s1: Option<SepDegree>,
}

/// Aggregated properties of a function set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CloneSignature {
    pub all_reproduce0: bool,
    pub all_reproduce1: bool,
    pub all_monotone: bool,
    pub all_self_dual: bool,
    pub all_affine: bool,
    #[serde(serialize_with = "ser_sep")]
    pub sep0_degree: SepDegree,
    #[serde(serialize_with = "ser_sep")]
    pub sep1_degree: SepDegree,
    pub all_disjunction: bool,
    pub all_conjunction: bool,
    pub all_unary: bool,
}

fn ser_sep<S: Serializer>(d: &SepDegree, s: S) -> std::result::Result<S::Ok, S::Error> {
    match d {
        SepDegree::Finite(k) => s.serialize_u32(*k),
        SepDegree::Infinite => s.serialize_str("inf"),
    }
}

impl CloneSignature {
    fn empty() -> Self {
        CloneSignature {
            all_reproduce0: true,
            all_reproduce1: true,
            all_monotone: true,
            all_self_dual: true,
            all_affine: true,
            sep0_degree: SepDegree::Infinite,
            sep1_degree: SepDegree::Infinite,
            all_disjunction: true,
            all_conjunction: true,
            all_unary: true,
        }
    }

    pub(crate) fn satisfies(&self, c: &Constraints) -> bool {
        (!c.r0 || self.all_reproduce0)
            && (!c.r1 || self.all_reproduce1)
            && (!c.m || self.all_monotone)
            && (!c.d || self.all_self_dual)
            && (!c.l || self.all_affine)
            && (!c.v || self.all_disjunction)
            && (!c.e || self.all_conjunction)
            && (!c.n || self.all_unary)
            && c.s0.is_none_or(|k| self.sep0_degree >= k)
            && c.s1.is_none_or(|k| self.sep1_degree >= k)
    }
}

pub fn signature_of_tables(tables: &[TruthTable]) -> CloneSignature {
    let mut s = CloneSignature::empty();
    for t in tables {
        let p = function_properties(t);
        s.all_reproduce0 &= p.reproduces0;
        s.all_reproduce1 &= p.reproduces1;
        s.all_monotone &= p.monotone;
        s.all_self_dual &= p.self_dual;
        s.all_affine &= p.affine;
        s.all_disjunction &= p.shape.in_v();
        s.all_conjunction &= p.shape.in_e();
        s.all_unary &= p.shape.in_n();
        s.sep0_degree = s.sep0_degree.min(separating_degree(t, false));
        s.sep1_degree = s.sep1_degree.min(separating_degree(t, true));
    }
    s
}

pub fn signature_of(b: &FunctionSet) -> CloneSignature {
    signature_of_tables(&b.tables())
}

/// Largest `n` for which `h_n` fits the arity cap.
pub(crate) const MAX_H: u32 = 5;

fn base_tables(c: CloneId) -> Vec<(String, TruthTable)> {
    use named::*;
    use Family::*;
    let k = c.degree.map(|k| k as usize);
    let hn = |n: usize| (format!("h{n}"), h(n));
    let hd = |n: usize| (format!("hd{n}"), h(n).dual());
    let nm = |s: &str, t: TruthTable| (s.to_string(), t);
    match (c.family, k) {
        (BF, _) => vec![nm("and", and()), nm("not", not())],
        (R0, _) => vec![nm("and", and()), nm("xor", xor())],
        (R1, _) => vec![nm("or", or()), nm("xnor", xnor())],
        (R2, _) => vec![nm("or", or()), nm("and_xnor", and_xnor())],
        (M, _) => vec![nm("or", or()), nm("and", and()), nm("c0", const0()), nm("c1", const1())],
        (M0, _) => vec![nm("or", or()), nm("and", and()), nm("c0", const0())],
        (M1, _) => vec![nm("or", or()), nm("and", and()), nm("c1", const1())],
        (M2, _) => vec![nm("or", or()), nm("and", and())],
        (S0, Some(n)) => vec![nm("imp", implies()), hd(n)],
        (S0, None) => vec![nm("imp", implies())],
        (S1, Some(n)) => vec![nm("and_not", and_not()), hn(n)],
        (S1, None) => vec![nm("and_not", and_not())],
        (S02, Some(n)) => vec![nm("or_and_not", or_and_not()), hd(n)],
        (S02, None) => vec![nm("or_and_not", or_and_not())],
        (S01, Some(n)) => vec![hd(n), nm("c1", const1())],
        (S01, None) => vec![nm("or_and", or_and()), nm("c1", const1())],
        (S00, Some(n)) => vec![nm("or_and", or_and()), hd(n)],
        (S00, None) => vec![nm("or_and", or_and())],
        (S12, Some(n)) => vec![nm("and_or_not", and_or_not()), hn(n)],
        (S12, None) => vec![nm("and_or_not", and_or_not())],
        (S11, Some(n)) => vec![hn(n), nm("c0", const0())],
        (S11, None) => vec![nm("and_or", and_or()), nm("c0", const0())],
        (S10, Some(n)) => vec![nm("and_or", and_or()), hn(n)],
        (S10, None) => vec![nm("and_or", and_or())],
        (D, _) => vec![nm("d", d())],
        (D1, _) => vec![nm("d1", d1())],
        (D2, _) => vec![nm("maj", maj3())],
        (L, _) => vec![nm("xor", xor()), nm("c1", const1())],
        (L0, _) => vec![nm("xor", xor())],
        (L1, _) => vec![nm("xnor", xnor())],
        (L2, _) => vec![nm("xor3", xor3())],
        (L3, _) => vec![nm("xnor3", xnor3())],
        (V, _) => vec![nm("or", or()), nm("c0", const0()), nm("c1", const1())],
        (V0, _) => vec![nm("or", or()), nm("c0", const0())],
        (V1, _) => vec![nm("or", or()), nm("c1", const1())],
        (V2, _) => vec![nm("or", or())],
        (E, _) => vec![nm("and", and()), nm("c0", const0()), nm("c1", const1())],
        (E0, _) => vec![nm("and", and()), nm("c0", const0())],
        (E1, _) => vec![nm("and", and()), nm("c1", const1())],
        (E2, _) => vec![nm("and", and())],
        (N, _) => vec![nm("not", not()), nm("c0", const0()), nm("c1", const1())],
        (N2, _) => vec![nm("not", not())],
        (I, _) => vec![nm("id", id()), nm("c0", const0()), nm("c1", const1())],
        (I0, _) => vec![nm("id", id()), nm("c0", const0())],
        (I1, _) => vec![nm("id", id()), nm("c1", const1())],
        (I2, _) => vec![nm("id", id())],
    }
}

/// Largest parametric degree [`base_of`] accepts.
pub const MAX_BASE_DEGREE: u32 = 4;

/// The standard base of a clone.
pub fn base_of(c: CloneId) -> Result<FunctionSet> {
    if let Some(k) = c.degree {
        if k > MAX_BASE_DEGREE {
            return Err(AbdError::Unsupported(format!(
                "base of {c} needs h_{k}, degrees up to {MAX_BASE_DEGREE} are supported"
            )));
        }
    }
    FunctionSet::from_connectives(
        base_tables(c)
            .into_iter()
            .map(|(n, t)| Connective::new(n, t)),
    )
}

/// Signature of the clone itself. Degrees above the `h_n` cap are obtained
/// from a lower-degree base with the separating degree overridden.
fn clone_signature(c: CloneId) -> CloneSignature {
    match c.degree {
        Some(k) if k > MAX_H => {
            let lower = CloneId {
                family: c.family,
                degree: Some(MAX_H),
            };
            let mut s = cached_signature(lower);
            if c.family.separates_zero() {
                s.sep0_degree = SepDegree::Finite(k);
            } else {
                s.sep1_degree = SepDegree::Finite(k);
            }
            s
        }
        _ => cached_signature(c),
    }
}

fn cached_signature(c: CloneId) -> CloneSignature {
    static TABLE: OnceLock<Vec<(CloneId, CloneSignature)>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        CloneId::catalog(MAX_H)
            .into_iter()
            .map(|c| {
                let ts: Vec<TruthTable> = base_tables(c).into_iter().map(|(_, t)| t).collect();
                (c, signature_of_tables(&ts))
            })
            .collect()
    });
    table
        .iter()
        .find(|(id, _)| *id == c)
        .map(|(_, s)| *s)
        .expect("degree within the cached range")
}

/// `C1 ⊆ C2`.
pub fn clone_leq(c1: CloneId, c2: CloneId) -> bool {
    clone_signature(c1).satisfies(&c2.constraints())
}

/// The smallest clone containing the functions with the given signature.
pub fn identify_signature(sig: &CloneSignature) -> CloneId {
    let mut candidates: Vec<CloneId> = CloneId::all_plain()
        .filter(|c| sig.satisfies(&c.constraints()))
        .collect();
    for &f in Family::ALL.iter().filter(|f| f.is_parametric()) {
        let deg = if f.separates_zero() {
            sig.sep0_degree
        } else {
            sig.sep1_degree
        };
        if let SepDegree::Finite(k) = deg {
            if k >= 2 {
                let c = CloneId {
                    family: f,
                    degree: Some(k),
                };
                if sig.satisfies(&c.constraints()) {
                    candidates.push(c);
                }
            }
        }
    }
    candidates
        .iter()
        .copied()
        .find(|&c| candidates.iter().all(|&o| clone_leq(c, o)))
        .expect("the property clones containing a set have a least element")
}

pub fn identify_clone(b: &FunctionSet) -> CloneId {
    identify_signature(&signature_of(b))
}

pub fn identify_tables(tables: &[TruthTable]) -> CloneId {
    identify_signature(&signature_of_tables(tables))
}
