use std::collections::BTreeSet;

use stk_graph::Graph;

use crate::normal::{end_movable, front_movable};
use crate::{multiply, normal_form, NormalWord, WordError};

/// `original = conjugator⁻¹ · core · conjugator`, with `core` of minimal
/// length in the conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicWord {
    pub core: NormalWord,
    pub conjugator: NormalWord,
}

pub fn cyclic_reduce(g: &Graph, w: &NormalWord) -> CyclicWord {
    let mut core = w.clone();
    let mut conjugator = NormalWord::identity();
    loop {
        let letters = core.letters();
        let ends = end_movable(g, letters);
        let pair = front_movable(g, letters).into_iter().find_map(|i| {
            ends.iter().find(|&&j| letters[j] == letters[i].inverse()).map(|&j| (i, j))
        });
        let Some((i, j)) = pair else { break };
        let x = letters[i];
        let rest: Vec<_> = letters
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, &l)| l)
            .collect();
        core = normal_form(g, &rest);
        conjugator = multiply(g, &NormalWord::letter(x.inverse()), &conjugator);
    }
    CyclicWord { core, conjugator }
}

pub fn conjugacy_length(g: &Graph, w: &NormalWord) -> usize {
    cyclic_reduce(g, w).core.len()
}

pub fn tuple_conjugacy_length(g: &Graph, ws: &[NormalWord]) -> usize {
    ws.iter().map(|w| conjugacy_length(g, w)).sum()
}

/// Shortlex-least word in the closure of the cyclic core under
/// trace-cyclic rotation; equal outputs iff conjugate when the core has at
/// most `bound` letters.
pub fn conjugacy_canonical(g: &Graph, w: &NormalWord, bound: usize) -> Result<NormalWord, WordError> {
    let core = cyclic_reduce(g, w).core;
    if core.len() > bound {
        return Err(WordError::LengthBound { len: core.len(), bound });
    }
    let mut seen: BTreeSet<NormalWord> = BTreeSet::new();
    let mut stack = vec![core.clone()];
    seen.insert(core);
    while let Some(u) = stack.pop() {
        let letters = u.letters();
        for i in front_movable(g, letters) {
            let mut v: Vec<_> = letters.to_vec();
            let l = v.remove(i);
            v.push(l);
            let v = normal_form(g, &v);
            if seen.insert(v.clone()) {
                stack.push(v);
            }
        }
    }
    Ok(seen.into_iter().next().expect("closure contains the core"))
}
