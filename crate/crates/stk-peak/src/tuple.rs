use std::collections::BTreeSet;

use stk_graph::Graph;
use stk_whitehead::{EndoMap, LetterSet};
use stk_word::{cyclic_reduce, normal_form, NormalWord};

use crate::PeakError;

/// A tuple of conjugacy classes, each held by a cyclically minimal word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjTuple {
    pub members: Vec<NormalWord>,
}

impl ConjTuple {
    pub fn new(g: &Graph, words: impl IntoIterator<Item = NormalWord>) -> ConjTuple {
        ConjTuple { members: words.into_iter().map(|w| cyclic_reduce(g, &w).core).collect() }
    }

    /// |C|∼.
    pub fn length(&self) -> usize {
        self.members.iter().map(NormalWord::len).sum()
    }

    /// Cφ.
    pub fn act(&self, g: &Graph, phi: &EndoMap) -> ConjTuple {
        ConjTuple::new(g, self.members.iter().map(|w| phi.apply(g, w)))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// One word of length 2 per conjugacy class of 𝔾([x]), shortlex ordered.
pub fn build_c2(g: &Graph, x: usize) -> Result<ConjTuple, PeakError> {
    let part = g.class_partition(x);
    if part.abelian {
        return Err(PeakError::AbelianClass(g.name(x).to_string()));
    }
    let letters: Vec<_> = LetterSet::both(part.class).iter().collect();
    let mut reps: BTreeSet<NormalWord> = BTreeSet::new();
    for &y in &letters {
        for &z in &letters {
            if y == z.inverse() {
                continue;
            }
            let yz = normal_form(g, &[y, z]);
            let zy = normal_form(g, &[z, y]);
            reps.insert(yz.min(zy));
        }
    }
    Ok(ConjTuple { members: reps.into_iter().collect() })
}
