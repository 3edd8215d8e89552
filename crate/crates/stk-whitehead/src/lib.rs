//! Whitehead automorphisms of partially commutative groups: validation,
//! action, inversion, the long/short split and the standard generator
//! families.

mod auto;
mod endo;
mod family;
mod letterset;
pub mod par;

pub use auto::{SignedPerm, Type2, Type2Parts, WhiteheadAuto};
pub use endo::EndoMap;
pub use family::{class_permutations, dedup_by_action, enumerate_family, signed_graph_automorphisms, FamilyKind};
pub use letterset::LetterSet;

use stk_graph::Graph;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum WhiteheadError {
    #[error("the multiplier is not in A")]
    MultiplierMissing,
    #[error("A contains the inverse of the multiplier")]
    InverseMultiplier,
    #[error("A mentions a letter outside the graph")]
    UnknownLetter,
    #[error("the conjugated part is not a union of components of the complement of st(a)")]
    NotComponentUnion,
    #[error("a transvected letter t fails lk(t) ⊆ st(a)")]
    TransvectionCondition,
    #[error("C ∪ T is empty")]
    Trivial,
    #[error("not a permutation of the vertices")]
    NotPermutation,
    #[error("permutation does not commute with inversion")]
    NotInversionCompatible,
    #[error("permutation is not a graph automorphism")]
    NotGraphAutomorphism,
    #[error("class of `{0}` is abelian; Ω_x needs a free class")]
    AbelianClass(String),
    #[error("enumeration over {0} vertices exceeds the desk-scale limit")]
    TooLarge(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Action of the product of `fs` (applied left to right).
pub fn compose_to_map(g: &Graph, fs: &[(WhiteheadAuto, i32)]) -> EndoMap {
    fs.iter().fold(EndoMap::identity(g), |acc, (f, e)| {
        let m = if *e < 0 { f.inverse().to_map(g) } else { f.to_map(g) };
        acc.then(g, &m)
    })
}
