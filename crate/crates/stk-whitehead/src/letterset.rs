use std::fmt;

use stk_graph::VertexSet;
use stk_word::Letter;

/// Subset of L = X ∪ X⁻¹, indexed by [`Letter::index`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LetterSet(u128);

const EVEN: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    pub fn contains(self, l: Letter) -> bool {
        self.0 >> l.index() & 1 == 1
    }

    pub fn insert(&mut self, l: Letter) {
        self.0 |= 1u128 << l.index();
    }

    pub fn with(mut self, l: Letter) -> Self {
        self.insert(l);
        self
    }

    pub fn without(mut self, l: Letter) -> Self {
        self.0 &= !(1u128 << l.index());
        self
    }

    /// Both signs of every vertex in `s`.
    pub fn both(s: VertexSet) -> Self {
        let mut out = LetterSet::EMPTY;
        for v in s {
            out.insert(Letter::pos(v));
            out.insert(Letter::neg(v));
        }
        out
    }

    /// Vertices with at least one sign present.
    pub fn vertices(self) -> VertexSet {
        self.iter().map(|l| l.vertex()).collect()
    }

    pub fn inverse(self) -> Self {
        LetterSet(((self.0 & EVEN) << 1) | ((self.0 >> 1) & EVEN))
    }

    pub fn union(self, o: Self) -> Self {
        LetterSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        LetterSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        LetterSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(Letter::from_index(i))
        })
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(it: I) -> Self {
        let mut s = LetterSet::EMPTY;
        for l in it {
            s.insert(l);
        }
        s
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
