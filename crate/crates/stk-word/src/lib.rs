//! Arithmetic in the partially commutative group of a commutation graph.

mod cyclic;
mod letter;
mod normal;
mod parse;

pub use cyclic::{conjugacy_canonical, conjugacy_length, cyclic_reduce, tuple_conjugacy_length, CyclicWord};
pub use letter::Letter;
pub use normal::{conjugate, inverse, inverse_letters, multiply, normal_form, reduce, support, NormalWord};
pub use parse::{format_word, letter_str, parse_word};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("malformed letter `{0}`")]
    BadToken(String),
    #[error("cyclic core has length {len}, above the bound {bound}")]
    LengthBound { len: usize, bound: usize },
}
