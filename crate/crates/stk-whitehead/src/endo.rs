use stk_graph::Graph;
use stk_word::{format_word, normal_form, Letter, NormalWord};

/// An endomorphism given by the normal forms of the images of the vertices.
///
/// Composition is left to right: `a.then(b)` is `x ↦ (xa)b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EndoMap {
    images: Vec<NormalWord>,
}

impl EndoMap {
    pub fn identity(g: &Graph) -> EndoMap {
        EndoMap { images: (0..g.len()).map(|v| NormalWord::letter(Letter::pos(v))).collect() }
    }

    pub fn from_images(g: &Graph, images: Vec<Vec<Letter>>) -> EndoMap {
        EndoMap { images: images.iter().map(|w| normal_form(g, w)).collect() }
    }

    pub fn image(&self, v: usize) -> &NormalWord {
        &self.images[v]
    }

    pub fn images(&self) -> &[NormalWord] {
        &self.images
    }

    pub fn set_image(&mut self, v: usize, w: NormalWord) {
        self.images[v] = w;
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, w)| w.letters() == [Letter::pos(v)])
    }

    pub fn apply_letters(&self, g: &Graph, w: &[Letter]) -> NormalWord {
        let mut out = Vec::new();
        for &l in w {
            let img = self.images[l.vertex()].letters();
            if l.is_positive() {
                out.extend_from_slice(img);
            } else {
                out.extend(img.iter().rev().map(|x| x.inverse()));
            }
        }
        normal_form(g, &out)
    }

    pub fn apply(&self, g: &Graph, w: &NormalWord) -> NormalWord {
        self.apply_letters(g, w.letters())
    }

    pub fn then(&self, g: &Graph, next: &EndoMap) -> EndoMap {
        EndoMap { images: self.images.iter().map(|w| next.apply(g, w)).collect() }
    }

    /// Images of adjacent vertices commute.
    pub fn respects_edges(&self, g: &Graph) -> bool {
        g.edges().into_iter().all(|(u, v)| {
            let (a, b) = (self.images[u].letters(), self.images[v].letters());
            let ab: Vec<Letter> = a.iter().chain(b).copied().collect();
            let ba: Vec<Letter> = b.iter().chain(a).copied().collect();
            normal_form(g, &ab) == normal_form(g, &ba)
        })
    }

    pub fn describe(&self, g: &Graph) -> Vec<(String, String)> {
        self.images
            .iter()
            .enumerate()
            .map(|(v, w)| (g.name(v).to_string(), format_word(g, w.letters())))
            .collect()
    }
}
