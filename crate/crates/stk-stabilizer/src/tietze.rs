use std::collections::{HashMap, HashSet, VecDeque};

use stk_graph::Graph;
use stk_whitehead::par::Strategy;
use stk_whitehead::{LetterSet, SignedPerm, Type2, WhiteheadAuto};

use crate::omega::{family_rank, sigma, RxSystem};
use crate::presentation::{cyclic_canonical, cyclic_free_reduce, invert_word, GenLetter, GenWord, Presentation, Relator};
use crate::StabError;

/// Ω'_x with its relators, and each member of Ω_x written over Ω'_x.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub pres: Presentation,
    pub expr: Vec<GenWord>,
    /// Relators dropped as consequences of the kept ones.
    pub dropped: usize,
}

fn is_inversion(p: &SignedPerm) -> bool {
    let s = p.support();
    s.len() == 1 && !p.images()[s.first().expect("non-empty")].is_positive()
}

fn elementary_positive(t: &Type2) -> bool {
    t.mult.is_positive() && t.set.len() == 2
}

/// Tietze reduction of R_x onto the elementary generators.
pub fn tietze_reduce(g: &Graph, rx: &RxSystem, keep_perms: bool, strategy: Strategy) -> Result<Reduced, StabError> {
    let om = &rx.omega;
    let mut targets: Vec<usize> = Vec::new();
    for (i, m) in om.members.iter().enumerate() {
        if matches!(m, WhiteheadAuto::Type1(p) if keep_perms || is_inversion(p)) {
            targets.push(i);
        }
    }
    targets.sort_by_key(|&i| !matches!(&om.members[i], WhiteheadAuto::Type1(p) if is_inversion(p)));
    for (i, m) in om.members.iter().enumerate() {
        if matches!(m, WhiteheadAuto::Type2(t) if elementary_positive(t)) {
            targets.push(i);
        }
    }
    let target_pos: HashMap<usize, usize> = targets.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let missing = |a: WhiteheadAuto| StabError::MissingGenerator(a.to_literal(g));

    let mut expr: Vec<Option<GenWord>> = vec![None; om.len()];
    for (&i, &k) in &target_pos {
        expr[i] = Some(vec![(k, 1)]);
    }
    for (i, m) in om.members.iter().enumerate() {
        let WhiteheadAuto::Type2(t) = m else { continue };
        if !t.mult.is_positive() || expr[i].is_some() {
            continue;
        }
        let mut w = Vec::new();
        for s in t.set.without(t.mult).iter() {
            let piece = WhiteheadAuto::Type2(Type2 { set: LetterSet::EMPTY.with(s).with(t.mult), mult: t.mult });
            let j = om.lookup(g, &piece).ok_or_else(|| missing(piece.clone()))?;
            w.push(target_pos.get(&j).map(|&k| (k, 1)).ok_or_else(|| missing(piece))?);
        }
        expr[i] = Some(w);
    }
    for (i, m) in om.members.iter().enumerate() {
        if matches!(m, WhiteheadAuto::Type2(t) if !t.mult.is_positive()) {
            let w = expr[om.inverse_of[i]].clone().ok_or_else(|| missing(m.clone()))?;
            expr[i] = Some(invert_word(&w));
        }
    }
    if !keep_perms {
        perm_words(g, rx, &mut expr)?;
    }
    let expr: Vec<GenWord> = expr.into_iter().enumerate().map(|(i, e)| e.ok_or_else(|| missing(om.members[i].clone()))).collect::<Result<_, _>>()?;

    let perms: Vec<Option<SignedPerm>> = targets
        .iter()
        .map(|&i| match &om.members[i] {
            WhiteheadAuto::Type1(p) => Some(p.clone()),
            WhiteheadAuto::Type2(_) => None,
        })
        .collect();
    let mut subst: Vec<(GenWord, String)> = Vec::new();
    for r in &rx.pres.relators {
        let w: GenWord = r.word.iter().flat_map(|&(i, e)| if e > 0 { expr[i].clone() } else { invert_word(&expr[i]) }).collect();
        let w = cyclic_free_reduce(&w);
        if !w.is_empty() {
            subst.push((w, r.provenance.clone()));
        }
    }
    let squares: HashSet<usize> = subst
        .iter()
        .filter_map(|(w, _)| match w.as_slice() {
            [(a, _), (b, _)] if a == b => Some(*a),
            _ => None,
        })
        .collect();
    let invol: Vec<bool> = perms
        .iter()
        .enumerate()
        .map(|(k, p)| p.as_ref().is_some_and(|p| p.then(p).is_identity()) && squares.contains(&k))
        .collect();

    let mut merged: Vec<(GenWord, Vec<String>)> = Vec::new();
    let mut slot: HashMap<GenWord, usize> = HashMap::new();
    for (w, label) in subst {
        let w = normalize_shape(&w, &perms, &invol);
        if w.is_empty() {
            continue;
        }
        let key = cyclic_canonical(&w);
        match slot.get(&key) {
            Some(&s) => {
                if !merged[s].1.contains(&label) {
                    merged[s].1.push(label);
                }
            }
            None => {
                slot.insert(key, merged.len());
                merged.push((w, vec![label]));
            }
        }
    }
    let perm_only = |w: &GenWord| w.iter().all(|&(k, _)| perms[k].is_some());
    let neg = |w: &GenWord| w.iter().filter(|l| l.1 < 0).count();
    merged.sort_by(|a, b| {
        (!perm_only(&a.0), a.0.len(), neg(&a.0), &a.0).cmp(&(!perm_only(&b.0), b.0.len(), neg(&b.0), &b.0))
    });

    let mut checker = Checker::new(perms.clone());
    let mut kept: Vec<(GenWord, Vec<String>)> = Vec::new();
    let mut dropped = 0;
    for (w, labels) in merged {
        if !perm_only(&w) && checker.derivable(&w) {
            dropped += 1;
            continue;
        }
        checker.learn(&w);
        kept.push((w, labels));
    }
    let sign_of = |k: usize| match &om.members[targets[k]] {
        WhiteheadAuto::Type2(t) => t.set.without(t.mult).iter().next().map(|l| l.is_positive()),
        WhiteheadAuto::Type1(_) => None,
    };
    let pattern = |w: &GenWord| -> Option<(bool, bool)> {
        match w.as_slice() {
            [(x, 1), (y, 1), (_, -1), (_, -1)] => {
                let (a, b) = (sign_of(*x)?, sign_of(*y)?);
                Some((a.min(b), a.max(b)))
            }
            _ => None,
        }
    };
    let mut grouped: HashMap<(bool, bool), Vec<String>> = HashMap::new();
    for (w, labels) in &kept {
        if let Some(p) = pattern(w) {
            let e = grouped.entry(p).or_default();
            for l in labels {
                if !e.contains(l) {
                    e.push(l.clone());
                }
            }
        }
    }
    for (w, labels) in &mut kept {
        if let Some(p) = pattern(w) {
            labels.clone_from(&grouped[&p]);
        }
        labels.sort_by_key(|l| family_rank(l));
    }
    kept.sort_by(|a, b| {
        let ka = (family_rank(&a.1[0]), a.0.len(), neg(&a.0), &a.0);
        let kb = (family_rank(&b.1[0]), b.0.len(), neg(&b.0), &b.0);
        ka.cmp(&kb)
    });
    let full = rx.pres.generators.clone();
    let pres = Presentation {
        generators: targets.iter().map(|&i| full[i].clone()).collect(),
        relators: kept.into_iter().map(|(word, labels)| Relator { word, provenance: labels.join("+") }).collect(),
    };
    if let Some(bad) = pres.first_failure(g, strategy) {
        return Err(StabError::RelatorFailed(pres.word_string(&pres.relators[bad].word)));
    }
    Ok(Reduced { pres, expr, dropped })
}

/// Words for every class permutation over inversions and σ_{a,b}.
fn perm_words(g: &Graph, rx: &RxSystem, expr: &mut [Option<GenWord>]) -> Result<(), StabError> {
    let om = &rx.omega;
    let class = g.class_partition(om.rep).class;
    let letters: Vec<_> = LetterSet::both(class).iter().collect();
    let mut gens: Vec<(SignedPerm, GenWord)> = Vec::new();
    for (i, m) in om.members.iter().enumerate() {
        if let WhiteheadAuto::Type1(p) = m {
            if is_inversion(p) {
                gens.push((p.clone(), expr[i].clone().expect("inversions are targets")));
            }
        }
    }
    let t2 = |set: LetterSet, mult| WhiteheadAuto::Type2(Type2 { set, mult });
    for &a in &letters {
        for &b in &letters {
            if a.vertex() == b.vertex() {
                continue;
            }
            let pair = LetterSet::EMPTY.with(a).with(b);
            let parts = [
                (t2(pair, a), 1),
                (t2(pair.without(a).with(a.inverse()), b), 1),
                (t2(pair.without(b).with(b.inverse()), a), -1),
            ];
            let mut w = Vec::new();
            for (p, e) in parts {
                let Some(j) = om.lookup(g, &p) else { continue };
                let piece = expr[j].clone().ok_or_else(|| StabError::MissingGenerator(p.to_literal(g)))?;
                w.extend(if e > 0 { piece } else { invert_word(&piece) });
            }
            gens.push((sigma(g, a, b), w));
        }
    }
    let mut words: HashMap<SignedPerm, GenWord> = HashMap::from([(SignedPerm::identity(g.len()), Vec::new())]);
    let mut queue = VecDeque::from([SignedPerm::identity(g.len())]);
    while let Some(p) = queue.pop_front() {
        for (q, w) in &gens {
            let next = p.then(q);
            if !words.contains_key(&next) {
                let mut nw = words[&p].clone();
                nw.extend_from_slice(w);
                words.insert(next.clone(), nw);
                queue.push_back(next);
            }
        }
    }
    for (i, m) in om.members.iter().enumerate() {
        if let WhiteheadAuto::Type1(p) = m {
            if expr[i].is_none() {
                let w = words.get(p).ok_or_else(|| StabError::MissingGenerator(m.to_literal(g)))?;
                expr[i] = Some(cyclic_free_reduce_linear(w));
            }
        }
    }
    Ok(())
}

fn cyclic_free_reduce_linear(w: &[GenLetter]) -> GenWord {
    crate::presentation::free_reduce(w)
}

fn involution_normal(w: &[GenLetter], invol: &[bool]) -> GenWord {
    w.iter().map(|&(k, e)| if invol[k] { (k, 1) } else { (k, e) }).collect()
}

fn rotations(w: &[GenLetter]) -> impl Iterator<Item = GenWord> + '_ {
    (0..w.len()).map(move |r| w[r..].iter().chain(&w[..r]).copied().collect())
}

/// Commutators as [x, y] with positive exponents; conjugation shapes as σ x σ' y⁻¹ with x positive.
fn normalize_shape(w: &[GenLetter], perms: &[Option<SignedPerm>], invol: &[bool]) -> GenWord {
    let w = cyclic_free_reduce(&involution_normal(w, invol));
    if w.len() != 4 {
        return w;
    }
    let is_perm = |l: GenLetter| perms[l.0].is_some();
    for r in rotations(&w) {
        let (x, y) = (r[0], r[1]);
        if x.0 != y.0 && r[2] == (x.0, -x.1) && r[3] == (y.0, -y.1) && !is_perm(x) && !is_perm(y) {
            let (a, b) = (x.0.min(y.0), x.0.max(y.0));
            return vec![(a, 1), (b, 1), (a, -1), (b, -1)];
        }
    }
    let mut best: Option<GenWord> = None;
    for cand in [w.clone(), invert_word(&w)] {
        for r in rotations(&cand) {
            if is_perm(r[0]) && is_perm(r[2]) && !is_perm(r[1]) && !is_perm(r[3]) && r[1].1 > 0 {
                let r = involution_normal(&r, invol);
                let key = |v: &GenWord| (v.iter().filter(|l| l.1 < 0).count(), v.clone());
                if best.as_ref().is_none_or(|b| key(&r) < key(b)) {
                    best = Some(r);
                }
            }
        }
    }
    best.unwrap_or(w)
}

/// Decides a sufficient condition for a relator to follow from kept ones.
struct Checker {
    perms: Vec<Option<SignedPerm>>,
    commute: HashSet<(usize, usize)>,
    act: HashMap<(SignedPerm, GenLetter), GenLetter>,
}

impl Checker {
    fn new(perms: Vec<Option<SignedPerm>>) -> Checker {
        Checker { perms, commute: HashSet::new(), act: HashMap::new() }
    }

    fn value(&self, l: GenLetter) -> Option<SignedPerm> {
        self.perms[l.0].as_ref().map(|p| if l.1 > 0 { p.clone() } else { p.inverse() })
    }

    fn learn(&mut self, w: &GenWord) {
        if w.len() != 4 {
            return;
        }
        for r in rotations(w) {
            let (x, y) = (r[0], r[1]);
            let plain = |l: GenLetter| self.perms[l.0].is_none();
            if plain(x) && plain(y) && x.0 != y.0 && r[2] == (x.0, -x.1) && r[3] == (y.0, -y.1) {
                self.commute.insert((x.0.min(y.0), x.0.max(y.0)));
                return;
            }
        }
        for r in rotations(w) {
            let (Some(p1), Some(p2)) = (self.value(r[0]), self.value(r[2])) else { continue };
            if self.perms[r[1].0].is_some() || self.perms[r[3].0].is_some() || !p1.then(&p2).is_identity() {
                continue;
            }
            let (x, y) = (r[1], r[3]);
            let inv = |l: GenLetter| (l.0, -l.1);
            let p2i = p2.inverse();
            self.act.insert((p2.clone(), x), inv(y));
            self.act.insert((p2, inv(x)), y);
            self.act.insert((p2i.clone(), inv(y)), x);
            self.act.insert((p2i, y), inv(x));
        }
    }

    fn derivable(&self, w: &GenWord) -> bool {
        let mut w = w.clone();
        let mut guard = 0;
        while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| self.perms[w[i].0].is_none() && self.perms[w[i + 1].0].is_some()) {
            let p = self.value(w[i + 1]).expect("perm letter");
            let Some(&img) = self.act.get(&(p, w[i])) else { return false };
            w.swap(i, i + 1);
            w[i + 1] = img;
            guard += 1;
            if guard > 10_000 {
                return false;
            }
        }
        let split = w.iter().position(|l| self.perms[l.0].is_none()).unwrap_or(w.len());
        let total = w[..split].iter().fold(None::<SignedPerm>, |acc, &l| {
            let v = self.value(l).expect("perm letter");
            Some(match acc {
                None => v,
                Some(a) => a.then(&v),
            })
        });
        if total.is_some_and(|p| !p.is_identity()) {
            return false;
        }
        raag_trivial(&w[split..], &self.commute)
    }
}

fn raag_trivial(w: &[GenLetter], commute: &HashSet<(usize, usize)>) -> bool {
    let comm = |a: usize, b: usize| a == b || commute.contains(&(a.min(b), a.max(b)));
    let mut stack: Vec<GenLetter> = Vec::new();
    for &l in w {
        let mut cancelled = false;
        for j in (0..stack.len()).rev() {
            if stack[j] == (l.0, -l.1) {
                stack.remove(j);
                cancelled = true;
                break;
            }
            if !comm(stack[j].0, l.0) {
                break;
            }
        }
        if !cancelled {
            stack.push(l);
        }
    }
    stack.is_empty()
}
