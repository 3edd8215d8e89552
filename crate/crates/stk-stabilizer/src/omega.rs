use std::collections::HashMap;

use stk_graph::Graph;
use stk_whitehead::par::Strategy;
use stk_whitehead::{enumerate_family, EndoMap, FamilyKind, LetterSet, SignedPerm, Type2, WhiteheadAuto};
use stk_word::{letter_str, Letter};

use crate::presentation::{cyclic_canonical, GenWord, Generator, Presentation, Relator};
use crate::StabError;

/// Generator symbol: `inv:x`, `tau:s:t`, `wh:{..}:a` or `perm:x:(..)`.
pub fn symbol(g: &Graph, a: &WhiteheadAuto, rep: usize) -> String {
    match a {
        WhiteheadAuto::Type1(p) => {
            let s = p.support();
            if s.len() == 1 && !p.images()[s.first().expect("non-empty")].is_positive() {
                return format!("inv:{}", g.name(s.first().expect("non-empty")));
            }
            let cycles: String = p
                .cycles()
                .iter()
                .map(|c| format!("({})", c.iter().map(|&l| letter_str(g, l)).collect::<Vec<_>>().join(",")))
                .collect();
            format!("perm:{}:{}", g.name(rep), cycles)
        }
        WhiteheadAuto::Type2(t) => {
            let rest = t.set.without(t.mult);
            if rest.len() == 1 {
                let s = rest.iter().next().expect("one letter");
                format!("tau:{}:{}", letter_str(g, s), letter_str(g, t.mult))
            } else {
                let body: Vec<String> = t.set.iter().map(|l| letter_str(g, l)).collect();
                format!("wh:{{{}}}:{}", body.join(","), letter_str(g, t.mult))
            }
        }
    }
}

/// Ω_x with lookup by action.
#[derive(Clone, Debug)]
pub struct OmegaSystem {
    pub rep: usize,
    pub members: Vec<WhiteheadAuto>,
    pub maps: Vec<EndoMap>,
    pub inverse_of: Vec<usize>,
    index: HashMap<EndoMap, usize>,
}

impl OmegaSystem {
    pub fn new(g: &Graph, x: usize) -> Result<OmegaSystem, StabError> {
        let members = enumerate_family(g, FamilyKind::OmegaX(x))?;
        let maps: Vec<EndoMap> = members.iter().map(|m| m.to_map(g)).collect();
        let index: HashMap<EndoMap, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let inverse_of = members
            .iter()
            .map(|m| index.get(&m.inverse().to_map(g)).copied().ok_or_else(|| StabError::MissingGenerator(m.to_literal(g))))
            .collect::<Result<_, _>>()?;
        Ok(OmegaSystem { rep: g.class_partition(x).class.first().expect("non-empty class"), members, maps, inverse_of, index })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn lookup(&self, g: &Graph, a: &WhiteheadAuto) -> Option<usize> {
        self.index.get(&a.to_map(g)).copied()
    }

    pub fn lookup_map(&self, m: &EndoMap) -> Option<usize> {
        self.index.get(m).copied()
    }

    fn require(&self, g: &Graph, a: WhiteheadAuto) -> Result<usize, StabError> {
        self.lookup(g, &a).ok_or_else(|| StabError::MissingGenerator(a.to_literal(g)))
    }

    pub fn presentation_generators(&self, g: &Graph) -> Vec<Generator> {
        self.members.iter().map(|m| Generator { symbol: symbol(g, m, self.rep), auto: m.clone() }).collect()
    }
}

/// σ_{a,b}: the cycle (a b⁻¹ a⁻¹ b).
pub fn sigma(g: &Graph, a: Letter, b: Letter) -> SignedPerm {
    let f = |l: Letter| {
        if l == a {
            b.inverse()
        } else if l == b.inverse() {
            a.inverse()
        } else if l == a.inverse() {
            b
        } else if l == b {
            a
        } else {
            l
        }
    };
    SignedPerm::from_images((0..g.len()).map(|v| f(Letter::pos(v))).collect()).expect("signed permutation")
}

/// Relator families of R_x, ordered by family.
pub const FAMILIES: [&str; 10] = ["R1", "R2", "R3(a)", "R3(b)", "R3*", "R4", "R4*", "R5", "R6", "R7"];

pub fn family_rank(label: &str) -> usize {
    FAMILIES.iter().position(|&f| f == label).unwrap_or(FAMILIES.len())
}

/// Ω_x together with the relators R_x.
#[derive(Clone, Debug)]
pub struct RxSystem {
    pub omega: OmegaSystem,
    pub pres: Presentation,
}

impl RxSystem {
    pub fn count(&self, label: &str) -> usize {
        self.pres.relators.iter().filter(|r| r.provenance == label).count()
    }
}

fn image_set(p: &SignedPerm, s: LetterSet) -> LetterSet {
    s.iter().map(|l| p.apply(l)).collect()
}

/// Builds R_x and verifies every relator as an automorphism identity.
pub fn build_rx(g: &Graph, x: usize, strategy: Strategy) -> Result<RxSystem, StabError> {
    let omega = OmegaSystem::new(g, x)?;
    let part = g.class_partition(x);
    let class_letters = LetterSet::both(part.class);
    let mut t1: Vec<(usize, SignedPerm)> = Vec::new();
    let mut t2: Vec<(usize, Type2)> = Vec::new();
    for (i, m) in omega.members.iter().enumerate() {
        match m {
            WhiteheadAuto::Type1(p) => t1.push((i, p.clone())),
            WhiteheadAuto::Type2(t) => t2.push((i, *t)),
        }
    }
    let mut rels: Vec<Relator> = Vec::new();
    let mut seen: HashMap<GenWord, usize> = HashMap::new();
    let mut push = |word: GenWord, label: &str| {
        let key = cyclic_canonical(&word);
        if key.is_empty() || seen.contains_key(&key) {
            return;
        }
        seen.insert(key, rels.len());
        rels.push(Relator { word, provenance: label.to_string() });
    };
    let t2_make = |set: LetterSet, mult: Letter| WhiteheadAuto::Type2(Type2 { set, mult });

    for &(i, _) in &t2 {
        push(vec![(i, 1), (omega.inverse_of[i], 1)], "R1");
    }
    for &(i, a) in &t2 {
        for &(j, b) in &t2 {
            if i == j {
                continue;
            }
            let (am, bm) = (a.mult, b.mult);
            let (aset, bset) = (a.set, b.set);
            let meet = aset.intersection(bset);
            if am == bm && meet == LetterSet::EMPTY.with(am) {
                let k = omega.require(g, t2_make(aset.union(bset), am))?;
                push(vec![(i, 1), (j, 1), (k, -1)], "R2");
            }
            let comm = vec![(j, -1), (i, 1), (j, 1), (i, -1)];
            if !bset.contains(am.inverse()) && !aset.contains(bm.inverse()) {
                if meet.is_empty() {
                    push(comm.clone(), "R3(a)");
                } else if am.vertex() != bm.vertex() && g.adjacent(am.vertex(), bm.vertex()) {
                    push(comm.clone(), "R3(b)");
                }
            }
            if bset.contains(am.inverse()) && !aset.contains(bm) && aset.is_subset(bset) {
                push(comm, "R3*");
            }
            if !bset.contains(am.inverse()) && aset.contains(bm.inverse()) && meet.is_empty() {
                let k = omega.require(g, t2_make(aset.union(bset).without(bm), am))?;
                push(vec![(j, -1), (i, 1), (j, 1), (k, -1)], "R4");
            }
            if bset.contains(am.inverse()) && aset.contains(bm) && aset.is_subset(bset) {
                let k = omega.require(g, t2_make(bset.difference(aset).with(bm.inverse()), am.inverse()))?;
                push(vec![(j, -1), (i, 1), (j, 1), (k, -1)], "R4*");
            }
        }
    }
    for &(i, a) in &t2 {
        let am = a.mult;
        if !class_letters.contains(am) {
            continue;
        }
        for b in a.set.intersection(class_letters).iter() {
            if b == am || a.set.contains(b.inverse()) {
                continue;
            }
            let j = omega.require(g, t2_make(a.set.without(am).with(am.inverse()), b))?;
            let k = omega.require(g, t2_make(a.set.without(b).with(b.inverse()), am))?;
            let s = omega.require(g, WhiteheadAuto::Type1(sigma(g, am, b)))?;
            push(vec![(i, 1), (j, 1), (k, -1), (s, -1)], "R5");
        }
    }
    for (s, p) in &t1 {
        for &(i, a) in &t2 {
            let k = omega.require(g, t2_make(image_set(p, a.set), p.apply(a.mult)))?;
            push(vec![(*s, -1), (i, 1), (*s, 1), (k, -1)], "R6");
        }
    }
    for (s, p) in &t1 {
        for (t, q) in &t1 {
            let r = p.then(q);
            if r.is_identity() {
                push(vec![(*s, 1), (*t, 1)], "R7");
            } else {
                let k = omega.require(g, WhiteheadAuto::Type1(r))?;
                push(vec![(*s, 1), (*t, 1), (k, -1)], "R7");
            }
        }
    }
    let pres = Presentation { generators: omega.presentation_generators(g), relators: rels };
    if let Some(bad) = pres.first_failure(g, strategy) {
        let r = &pres.relators[bad];
        return Err(StabError::RelatorFailed(format!("{} {}", r.provenance, pres.word_string(&r.word))));
    }
    Ok(RxSystem { omega, pres })
}
