//! Stabilizer decomposition for St(𝒦): the tower of level and class
//! restrictions, the matrix model of abelian classes, the free-class
//! split, the relators R_x with their Tietze reduction, and emission of
//! a finite presentation.

mod automorphism;
mod emit;
mod express;
mod free;
mod gl;
mod matrix;
mod omega;
mod presentation;
mod tietze;
mod tower;

pub use automorphism::{is_in_st_k, support_violation, Automorphism};
pub use emit::{emit_presentation, express_class, BlockKind, ClassBlock, Config, StabilizerPresentation};
pub use express::express_in_omega_x;
pub use free::{free_case_split, short_generators, short_map, ShortExponents};
pub use gl::{gl_presentation, GlLayout};
pub use matrix::{from_matrix, matrix_split, to_matrix, GlFactor, IntMatrix, MatrixFrame};
pub use omega::{build_rx, family_rank, sigma, symbol, OmegaSystem, RxSystem, FAMILIES};
pub use presentation::{
    cyclic_canonical, cyclic_free_reduce, free_reduce, invert_word, GenLetter, GenWord, Generator, GeneratorJson,
    Presentation, PresentationJson, Relator,
};
pub use stk_whitehead::par::Strategy;
pub use tietze::{tietze_reduce, Reduced};
pub use tower::{class_restriction, describe, invert, invert_class, level_restriction, tower_factorize, ClassFactor, TowerFactorization};

use stk_whitehead::WhiteheadError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum StabError {
    #[error("the map does not respect the commutation relations")]
    NotHomomorphism,
    #[error("the map is not invertible")]
    NotInvertible,
    #[error("the image of `{0}` leaves its admissible set")]
    NotInStK(String),
    #[error("the map moves `{0}` outside the class stabilizer")]
    NotInClassStabilizer(String),
    #[error("matrix is not invertible over Z")]
    NotUnimodular,
    #[error("matrix rejected: {0}")]
    BadMatrix(String),
    #[error("class of `{0}` is free; the matrix model needs an abelian class")]
    FreeClass(String),
    #[error("class of `{0}` is abelian")]
    AbelianClass(String),
    #[error("search for a factorisation exceeded depth {depth}")]
    SearchBound { depth: usize },
    #[error("generator `{0}` is missing from Ω_x")]
    MissingGenerator(String),
    #[error("relator fails to hold: {0}")]
    RelatorFailed(String),
    #[error(transparent)]
    Whitehead(#[from] WhiteheadError),
}
