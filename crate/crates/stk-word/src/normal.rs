use std::cmp::Ordering;

use stk_graph::{Graph, VertexSet};

use crate::Letter;

/// Canonical geodesic: the shortlex-least reduced word for its element.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct NormalWord(Vec<Letter>);

impl NormalWord {
    pub fn identity() -> NormalWord {
        NormalWord(Vec::new())
    }

    pub fn letter(l: Letter) -> NormalWord {
        NormalWord(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.0.iter().map(|l| l.vertex()).collect()
    }
}

impl PartialOrd for NormalWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex.
impl Ord for NormalWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

fn commutes(g: &Graph, a: Letter, b: Letter) -> bool {
    a.vertex() != b.vertex() && g.adjacent(a.vertex(), b.vertex())
}

/// Freely and commutatively reduced, in no particular linear order.
pub fn reduce(g: &Graph, w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    'next: for &x in w {
        for j in (0..out.len()).rev() {
            if out[j] == x.inverse() {
                out.remove(j);
                continue 'next;
            }
            if !commutes(g, out[j], x) {
                break;
            }
        }
        out.push(x);
    }
    out
}

/// Lexicographically least linearisation of a reduced word's trace.
fn lex_least(g: &Graph, mut rest: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            if best.is_some_and(|b| rest[b] <= rest[i]) {
                continue;
            }
            if rest[..i].iter().all(|&y| commutes(g, y, rest[i])) {
                best = Some(i);
            }
        }
        out.push(rest.remove(best.expect("some letter is always available")));
    }
    out
}

pub fn normal_form(g: &Graph, w: &[Letter]) -> NormalWord {
    NormalWord(lex_least(g, reduce(g, w)))
}

pub fn multiply(g: &Graph, u: &NormalWord, v: &NormalWord) -> NormalWord {
    let mut w = u.0.clone();
    w.extend_from_slice(&v.0);
    normal_form(g, &w)
}

pub fn inverse_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

pub fn inverse(g: &Graph, w: &NormalWord) -> NormalWord {
    normal_form(g, &inverse_letters(&w.0))
}

/// `g⁻¹ w g`.
pub fn conjugate(g: &Graph, w: &NormalWord, by: &NormalWord) -> NormalWord {
    let mut v = inverse_letters(&by.0);
    v.extend_from_slice(&w.0);
    v.extend_from_slice(&by.0);
    normal_form(g, &v)
}

pub fn support(g: &Graph, w: &[Letter]) -> VertexSet {
    normal_form(g, w).support()
}

/// Positions of letters that can be shuffled to the front.
pub(crate) fn front_movable(g: &Graph, w: &[Letter]) -> Vec<usize> {
    (0..w.len()).filter(|&i| w[..i].iter().all(|&y| commutes(g, y, w[i]))).collect()
}

/// Positions of letters that can be shuffled to the end.
pub(crate) fn end_movable(g: &Graph, w: &[Letter]) -> Vec<usize> {
    (0..w.len()).filter(|&i| w[i + 1..].iter().all(|&y| commutes(g, y, w[i]))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_word;
    use stk_graph::example_3_1;

    fn nf(g: &Graph, s: &str) -> NormalWord {
        normal_form(g, &parse_word(g, s).unwrap())
    }

    #[test]
    fn examples() {
        let g = example_3_1();
        assert_eq!(nf(&g, "d a d^-1"), nf(&g, "a"));
        assert!(nf(&g, "a a^-1").is_empty());
        assert_eq!(nf(&g, "h a").letters(), parse_word(&g, "h a").unwrap().as_slice());
        assert_eq!(nf(&g, "e a").letters(), parse_word(&g, "a e").unwrap().as_slice());
        assert_eq!(support(&g, &parse_word(&g, "a h a^-1").unwrap()), g.set(&["a", "h"]).unwrap());
        assert_eq!(support(&g, &parse_word(&g, "d a d^-1").unwrap()), g.set(&["a"]).unwrap());
    }

    #[test]
    fn distant_cancellation() {
        let g = example_3_1();
        assert_eq!(nf(&g, "a d e a^-1 c").letters(), parse_word(&g, "d e c").unwrap().as_slice());
        assert_eq!(nf(&g, "a h a^-1").len(), 3);
    }

    #[test]
    fn inverse_and_conjugate() {
        let g = example_3_1();
        let w = nf(&g, "a h b^-1 i");
        assert!(multiply(&g, &w, &inverse(&g, &w)).is_empty());
        assert_eq!(conjugate(&g, &nf(&g, "h"), &nf(&g, "a")), nf(&g, "a^-1 h a"));
    }
}
