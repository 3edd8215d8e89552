use std::collections::HashSet;

use stk_graph::{Graph, VertexSet};
use stk_word::Letter;

use crate::{EndoMap, LetterSet, SignedPerm, Type2, WhiteheadAuto, WhiteheadError};

const ENUMERATION_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Inv,
    Tr,
    LInn,
    OmegaS,
    OmegaL,
    OmegaX(usize),
}

/// Members of a generator family, deduplicated by action.
pub fn enumerate_family(g: &Graph, kind: FamilyKind) -> Result<Vec<WhiteheadAuto>, WhiteheadError> {
    let raw = match kind {
        FamilyKind::Inv => (0..g.len()).map(|v| WhiteheadAuto::inversion(g, v)).collect(),
        FamilyKind::Tr => transvections(g),
        FamilyKind::LInn => vertex_conjugations(g),
        FamilyKind::OmegaS => {
            guard(g)?;
            range_family(g, true)
        }
        FamilyKind::OmegaL => {
            guard(g)?;
            let mut out: Vec<WhiteheadAuto> = signed_graph_automorphisms(g)
                .into_iter()
                .filter(|p| !p.is_identity())
                .map(WhiteheadAuto::Type1)
                .collect();
            out.extend(range_family(g, false));
            out
        }
        FamilyKind::OmegaX(x) => omega_x(g, x)?,
    };
    Ok(dedup_by_action(g, raw))
}

fn guard(g: &Graph) -> Result<(), WhiteheadError> {
    if g.len() > ENUMERATION_LIMIT {
        return Err(WhiteheadError::TooLarge(g.len()));
    }
    Ok(())
}

pub fn dedup_by_action(g: &Graph, raw: Vec<WhiteheadAuto>) -> Vec<WhiteheadAuto> {
    let mut seen: HashSet<EndoMap> = HashSet::new();
    raw.into_iter().filter(|a| seen.insert(a.to_map(g))).collect()
}

fn transvections(g: &Graph) -> Vec<WhiteheadAuto> {
    let mut out = Vec::new();
    for x in 0..g.len() {
        for y in g.admissible(x).without(x) {
            for s in [Letter::pos(x), Letter::neg(x)] {
                for t in [Letter::pos(y), Letter::neg(y)] {
                    out.extend(WhiteheadAuto::transvection(g, s, t).ok());
                }
            }
        }
    }
    out
}

fn vertex_conjugations(g: &Graph) -> Vec<WhiteheadAuto> {
    let mut out = Vec::new();
    for a in 0..g.len() {
        let comps = g.components(g.all().difference(g.star_of(a)));
        for t in [Letter::pos(a), Letter::neg(a)] {
            for &c in &comps {
                out.extend(WhiteheadAuto::make_type2(g, LetterSet::both(c).with(t), t).ok());
            }
        }
    }
    out
}

/// Type 2 members with A ⊆ st_L(a) (`short`) or A ∩ lk_L(a) = ∅.
fn range_family(g: &Graph, short: bool) -> Vec<WhiteheadAuto> {
    let mut out = Vec::new();
    for a in 0..g.len() {
        let pool = if short { g.link(a) } else { g.all().difference(g.star_of(a)) };
        let letters: Vec<Letter> = LetterSet::both(pool).iter().collect();
        for t in [Letter::pos(a), Letter::neg(a)] {
            for set in subsets(&letters) {
                out.extend(WhiteheadAuto::make_type2(g, set.with(t), t).ok());
            }
        }
    }
    out
}

fn subsets(letters: &[Letter]) -> impl Iterator<Item = LetterSet> + '_ {
    (1u64..1u64 << letters.len()).map(move |mask| {
        letters.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &l)| l).collect()
    })
}

/// All elements of Aut(Γ^±), identity included.
pub fn signed_graph_automorphisms(g: &Graph) -> Vec<SignedPerm> {
    let n = g.len();
    let mut perms = Vec::new();
    let mut cur = Vec::with_capacity(n);
    extend_automorphism(g, &mut cur, VertexSet::EMPTY, &mut perms);
    let mut out = Vec::new();
    for p in perms {
        for signs in 0u64..1 << n {
            let imgs = p.iter().enumerate().map(|(v, &w)| Letter::new(w, signs >> v & 1 == 0)).collect();
            out.push(SignedPerm::from_images(imgs).expect("bijection"));
        }
    }
    out
}

fn extend_automorphism(g: &Graph, cur: &mut Vec<usize>, used: VertexSet, out: &mut Vec<Vec<usize>>) {
    let u = cur.len();
    if u == g.len() {
        out.push(cur.clone());
        return;
    }
    for w in g.all().difference(used) {
        if g.link(u).len() == g.link(w).len() && (0..u).all(|v| g.adjacent(u, v) == g.adjacent(w, cur[v])) {
            cur.push(w);
            extend_automorphism(g, cur, used.with(w), out);
            cur.pop();
        }
    }
}

/// Ω_x: class permutations and Type 2 members with A∖a ⊆ [x]_L and a ∈ [x]_L ∪ 𝔞_out,L(x).
fn omega_x(g: &Graph, x: usize) -> Result<Vec<WhiteheadAuto>, WhiteheadError> {
    let part = g.class_partition(x);
    if part.abelian {
        return Err(WhiteheadError::AbelianClass(g.name(x).to_string()));
    }
    let class: Vec<usize> = part.class.iter().collect();
    let mut out: Vec<WhiteheadAuto> = class_permutations(g, &class)
        .into_iter()
        .filter(|p| !p.is_identity())
        .map(WhiteheadAuto::Type1)
        .collect();
    for a in part.class.union(part.a_out) {
        let pool: Vec<Letter> = LetterSet::both(part.class.without(a)).iter().collect();
        for t in [Letter::pos(a), Letter::neg(a)] {
            for set in subsets(&pool) {
                let cand = Type2 { set: set.with(t), mult: t };
                if cand.validate(g).is_ok() {
                    out.push(WhiteheadAuto::Type2(cand));
                }
            }
        }
    }
    Ok(out)
}

/// Signed permutations of the given vertices fixing everything else.
pub fn class_permutations(g: &Graph, class: &[usize]) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    let mut order: Vec<usize> = class.to_vec();
    permutations(&mut order, 0, &mut |perm| {
        for signs in 0u64..1 << class.len() {
            let mut imgs: Vec<Letter> = (0..g.len()).map(Letter::pos).collect();
            for (i, &v) in class.iter().enumerate() {
                imgs[v] = Letter::new(perm[i], signs >> i & 1 == 0);
            }
            let p = SignedPerm::from_images(imgs).expect("bijection");
            if p.is_graph_automorphism(g) {
                out.push(p);
            }
        }
    });
    out
}

fn permutations(xs: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permutations(xs, k + 1, f);
        xs.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use stk_graph::example_3_1;
    use stk_word::parse_word;

    #[test]
    fn omega_i_matches_listing() {
        let g = example_3_1();
        let i = g.vertex("i").unwrap();
        let fam = enumerate_family(&g, FamilyKind::OmegaX(i)).unwrap();
        let mut want = vec![WhiteheadAuto::inversion(&g, i)];
        for s in ["c", "d", "e", "c^-1", "d^-1", "e^-1"] {
            let m = parse_word(&g, s).unwrap()[0];
            for a in ["i", "i^-1", "i i^-1"] {
                let set: LetterSet = parse_word(&g, a).unwrap().into_iter().collect();
                want.push(WhiteheadAuto::make_type2(&g, set.with(m), m).unwrap());
            }
        }
        let got: HashSet<_> = fam.iter().cloned().collect();
        assert_eq!(fam.len(), 19);
        assert_eq!(got, want.into_iter().collect());
    }

    #[test]
    fn family_sizes() {
        let g = example_3_1();
        assert_eq!(enumerate_family(&g, FamilyKind::Inv).unwrap().len(), 9);
        let omega_a = enumerate_family(&g, FamilyKind::OmegaX(0)).unwrap();
        assert!(omega_a.contains(&WhiteheadAuto::parse(&g, "tau b h").unwrap()));
        assert_eq!(omega_a.iter().filter(|a| matches!(a, WhiteheadAuto::Type1(_))).count(), 7);
        assert!(matches!(
            enumerate_family(&g, FamilyKind::OmegaX(g.vertex("f").unwrap())),
            Err(WhiteheadError::AbelianClass(_))
        ));
    }

    #[test]
    fn null_graph_automorphisms() {
        let g = Graph::null(3);
        assert_eq!(signed_graph_automorphisms(&g).len(), 6 * 8);
        let p4 = Graph::path(4);
        assert_eq!(signed_graph_automorphisms(&p4).len(), 2 * 16);
    }
}
