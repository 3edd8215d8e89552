use std::collections::HashMap;

use stk_graph::Graph;
use stk_whitehead::WhiteheadAuto;
use stk_word::Letter;

use crate::matrix::{IntMatrix, MatrixFrame};
use crate::omega::symbol;
use crate::presentation::{invert_word, GenWord, Generator, Presentation, Relator};
use crate::StabError;

/// Generator layout of an abelian class presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlLayout {
    pub frame: MatrixFrame,
    /// O_i.
    pub o: Vec<usize>,
    /// E_{ij}, i ≠ j < s.
    pub e: HashMap<(usize, usize), usize>,
    /// Z_{ij}, i < s ≤ j < r.
    pub z: HashMap<(usize, usize), usize>,
}

impl GlLayout {
    /// Word for an elementary factor.
    pub fn factor_word(&self, f: crate::matrix::GlFactor) -> GenWord {
        match f {
            crate::matrix::GlFactor::E(i, j, q) => {
                vec![(self.e[&(i, j)], q.signum() as i32); q.unsigned_abs() as usize]
            }
            crate::matrix::GlFactor::O(i) => vec![(self.o[i], 1)],
        }
    }

    /// Word for a matrix with A₁ block and upper block U'.
    pub fn matrix_word(&self, m: &IntMatrix) -> Result<GenWord, StabError> {
        let s = self.frame.s;
        let (d, u) = crate::matrix::matrix_split(m, s)?;
        let mut w: GenWord = Vec::new();
        for f in d.block(0, s, 0, s).gl_factors()? {
            w.extend(self.factor_word(f));
        }
        for i in 0..s {
            for j in s..self.frame.r() {
                let q = u.get(i, j);
                w.extend(std::iter::repeat((self.z[&(i, j)], q.signum() as i32)).take(q.unsigned_abs() as usize));
            }
        }
        Ok(w)
    }
}

/// GL(s, Z) ⋉ Z^{s(r-s)} on O_i, E_{ij} and Z_{ij}.
pub fn gl_presentation(g: &Graph, x: usize) -> Result<(Presentation, GlLayout), StabError> {
    let frame = MatrixFrame::new(g, x)?;
    let (s, r) = (frame.s, frame.r());
    let c = &frame.coords;
    let mut gens: Vec<Generator> = Vec::new();
    let mut add = |a: WhiteheadAuto| {
        gens.push(Generator { symbol: symbol(g, &a, c[0]), auto: a });
        gens.len() - 1
    };
    let o: Vec<usize> = (0..s).map(|i| add(WhiteheadAuto::inversion(g, c[i]))).collect();
    let mut e = HashMap::new();
    let mut z = HashMap::new();
    for i in 0..s {
        for j in 0..s {
            if i != j {
                e.insert((i, j), add(WhiteheadAuto::transvection(g, Letter::pos(c[i]), Letter::pos(c[j]))?));
            }
        }
    }
    for i in 0..s {
        for j in s..r {
            z.insert((i, j), add(WhiteheadAuto::transvection(g, Letter::pos(c[i]), Letter::pos(c[j]))?));
        }
    }
    let layout = GlLayout { frame: frame.clone(), o, e, z };
    let mut rels: Vec<Relator> = Vec::new();
    let mut rel = |word: GenWord, label: &str| rels.push(Relator { word, provenance: label.to_string() });
    let comm = |a: usize, b: usize| vec![(a, 1), (b, 1), (a, -1), (b, -1)];
    let ee = |i: usize, j: usize| layout.e[&(i, j)];
    let w = |i: usize, j: usize| vec![(ee(i, j), 1), (ee(j, i), -1), (ee(i, j), 1)];

    rel(vec![(layout.o[0], 1), (layout.o[0], 1)], "GL");
    if s == 2 {
        let (x, y) = (ee(0, 1), ee(1, 0));
        rel(vec![(x, 1), (y, -1), (x, 1), (y, 1), (x, -1), (y, 1)], "GL");
        rel(w(0, 1).repeat(4), "GL");
    }
    if s >= 3 {
        let pairs: Vec<(usize, usize)> = (0..s).flat_map(|i| (0..s).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[a + 1..] {
                if j != k && i != l {
                    rel(comm(ee(i, j), ee(k, l)), "GL");
                }
            }
        }
        for &(i, j) in &pairs {
            for k in (0..s).filter(|&k| k != i && k != j) {
                let mut word = comm(ee(i, j), ee(j, k));
                word.push((ee(i, k), -1));
                rel(word, "GL");
            }
        }
        rel(w(0, 1).repeat(4), "GL");
    }
    for (&(i, j), &gen) in sorted(&layout.e) {
        let flip = (i == 0) != (j == 0);
        let o1 = layout.o[0];
        rel(vec![(o1, 1), (gen, 1), (o1, 1), (gen, if flip { 1 } else { -1 })], "GL");
    }
    for i in 1..s {
        let mut word = vec![(layout.o[i], -1), (layout.o[0], 1)];
        word.extend(w(0, i));
        word.extend(w(0, i));
        rel(word, "GL");
    }
    let zs: Vec<usize> = sorted(&layout.z).into_iter().map(|(_, &v)| v).collect();
    for (a, &za) in zs.iter().enumerate() {
        for &zb in &zs[a + 1..] {
            rel(comm(za, zb), "Z");
        }
    }
    let matrix_of = |k: usize| -> IntMatrix {
        if let Some(i) = layout.o.iter().position(|&v| v == k) {
            return IntMatrix::sign(r, i);
        }
        let (&(i, j), _) = layout.e.iter().chain(&layout.z).find(|(_, &v)| v == k).expect("generator");
        IntMatrix::elementary(r, i, j)
    };
    let gl_gens: Vec<usize> = layout.o.iter().copied().chain(sorted(&layout.e).into_iter().map(|(_, &v)| v)).collect();
    for &gm in &gl_gens {
        let m = matrix_of(gm);
        let mi = m.inverse_unimodular()?;
        for &zk in &zs {
            let conj = mi.mul(&matrix_of(zk)).mul(&m);
            let mut word = vec![(gm, -1), (zk, 1), (gm, 1)];
            word.extend(invert_word(&layout.matrix_word(&conj)?));
            rel(word, "action");
        }
    }
    let mut pres = Presentation { generators: gens, relators: rels };
    pres.normalize_involutions(g);
    Ok((pres, layout))
}

fn sorted(m: &HashMap<(usize, usize), usize>) -> Vec<(&(usize, usize), &usize)> {
    let mut v: Vec<_> = m.iter().collect();
    v.sort();
    v
}
