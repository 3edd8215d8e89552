use stk_graph::Graph;
use stk_whitehead::{EndoMap, WhiteheadAuto};
use stk_word::{normal_form, Letter};

use crate::StabError;

/// Exponent of τ_{x_i, s} in φ₁, indexed by (class vertex, 𝔞_s vertex).
pub type ShortExponents = Vec<(usize, usize, i64)>;

fn check_class_stabilizer(g: &Graph, x: usize, phi: &EndoMap) -> Result<(), StabError> {
    let part = g.class_partition(x);
    let span = g.admissible(x);
    for v in 0..g.len() {
        let img = phi.image(v);
        if part.class.contains(v) {
            if !img.support().is_subset(span) {
                return Err(StabError::NotInClassStabilizer(g.name(v).to_string()));
            }
        } else if img.letters() != [Letter::pos(v)] {
            return Err(StabError::NotInClassStabilizer(g.name(v).to_string()));
        }
    }
    Ok(())
}

/// φ = φ₁ φ₀ with φ₁ ∈ St_{x,s} and φ₀ ∈ St_{x,l}.
pub fn free_case_split(g: &Graph, x: usize, phi: &EndoMap) -> Result<(ShortExponents, EndoMap), StabError> {
    let part = g.class_partition(x);
    if part.abelian {
        return Err(StabError::AbelianClass(g.name(x).to_string()));
    }
    check_class_stabilizer(g, x, phi)?;
    let mut exps = Vec::new();
    let mut phi0 = phi.clone();
    for v in part.class {
        let img = phi.image(v).letters();
        for s in part.a_s {
            let e: i64 = img.iter().filter(|l| l.vertex() == s).map(|l| if l.is_positive() { 1 } else { -1 }).sum();
            if e != 0 {
                exps.push((v, s, e));
            }
        }
        let rest: Vec<Letter> = img.iter().copied().filter(|l| !part.a_s.contains(l.vertex())).collect();
        phi0.set_image(v, normal_form(g, &rest));
    }
    Ok((exps, phi0))
}

/// φ₁ as a map.
pub fn short_map(g: &Graph, exps: &ShortExponents) -> EndoMap {
    let mut m = EndoMap::identity(g);
    for &(v, s, e) in exps {
        let mut w = m.image(v).letters().to_vec();
        w.extend(std::iter::repeat(Letter::new(s, e > 0)).take(e.unsigned_abs() as usize));
        m.set_image(v, normal_form(g, &w));
    }
    m
}

/// Generators of St_{x,s}: τ_{x_i, s} for x_i ∈ [x], s ∈ 𝔞_s(x).
pub fn short_generators(g: &Graph, x: usize) -> Vec<WhiteheadAuto> {
    let part = g.class_partition(x);
    let mut out = Vec::new();
    for v in part.class {
        for s in part.a_s {
            out.extend(WhiteheadAuto::transvection(g, Letter::pos(v), Letter::pos(s)).ok());
        }
    }
    out
}
