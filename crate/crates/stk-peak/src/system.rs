use std::collections::HashMap;

use serde::Serialize;
use stk_graph::Graph;
use stk_stabilizer::{build_rx, invert_word, GenWord, OmegaSystem, RxSystem, Strategy};
use stk_whitehead::{EndoMap, LetterSet, Type2, WhiteheadAuto};
use stk_word::{Letter, NormalWord};

use crate::derive::RelatorTable;
use crate::tuple::{build_c2, ConjTuple};
use crate::PeakError;

/// Lemma-level type of a generator with respect to C₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TypeClass {
    Type1x,
    Type2ax,
    Type2bx,
    LengthIncreasing,
}

/// A product of Ω_x generators with exponents ±1, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub x: usize,
    pub factors: Vec<(WhiteheadAuto, i32)>,
}

/// Ω_x, the relators R_x and the yardstick C₂ for one free class.
#[derive(Clone, Debug)]
pub struct PeakSystem {
    pub graph: Graph,
    pub x: usize,
    pub rx: RxSystem,
    pub table: RelatorTable,
    pub c2: ConjTuple,
    class_letters: LetterSet,
    out_letters: LetterSet,
    symbols: HashMap<String, usize>,
}

/// αβ is a peak for C.
pub fn is_peak(g: &Graph, alpha: &EndoMap, beta: &EndoMap, c: &ConjTuple) -> bool {
    let c1 = c.act(g, alpha);
    let (h0, h1, h2) = (c.length(), c1.length(), c1.act(g, beta).length());
    h1 >= h0 && h1 >= h2 && (h1 > h0 || h1 > h2)
}

impl PeakSystem {
    pub fn new(g: &Graph, x: usize, strategy: Strategy) -> Result<PeakSystem, PeakError> {
        let c2 = build_c2(g, x)?;
        let rx = build_rx(g, x, strategy)?;
        let table = RelatorTable::new(&rx.pres);
        let part = g.class_partition(x);
        let symbols = rx.pres.generators.iter().enumerate().map(|(i, s)| (s.symbol.clone(), i)).collect();
        Ok(PeakSystem {
            graph: g.clone(),
            x,
            rx,
            table,
            c2,
            class_letters: LetterSet::both(part.class),
            out_letters: LetterSet::both(part.a_out),
            symbols,
        })
    }

    pub fn omega(&self) -> &OmegaSystem {
        &self.rx.omega
    }

    pub fn len(&self) -> usize {
        self.rx.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rx.omega.is_empty()
    }

    pub fn inv(&self, i: usize) -> usize {
        self.rx.omega.inverse_of[i]
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.rx.pres.generators[i].symbol
    }

    pub fn type2(&self, i: usize) -> Option<Type2> {
        self.rx.omega.members[i].as_type2()
    }

    pub fn map(&self, i: usize) -> &EndoMap {
        &self.rx.omega.maps[i]
    }

    /// Action of a signed word, left to right.
    pub fn eval(&self, w: &[(usize, i32)]) -> EndoMap {
        w.iter().fold(EndoMap::identity(&self.graph), |acc, &(i, e)| {
            acc.then(&self.graph, self.map(if e > 0 { i } else { self.inv(i) }))
        })
    }

    pub fn eval_positive(&self, w: &[usize]) -> EndoMap {
        w.iter().fold(EndoMap::identity(&self.graph), |acc, &i| acc.then(&self.graph, self.map(i)))
    }

    /// Ω_x member with the given action; `None` for the identity.
    pub fn lookup(&self, m: &EndoMap) -> Result<Option<usize>, PeakError> {
        if m.is_identity() {
            return Ok(None);
        }
        self.rx.omega.lookup_map(m).map(Some).ok_or_else(|| PeakError::OutsideOmega(self.describe(m)))
    }

    /// Ω_x member with the given action, which must be non-trivial.
    pub fn require(&self, m: &EndoMap) -> Result<usize, PeakError> {
        self.lookup(m)?.ok_or_else(|| PeakError::OutsideOmega("identity".into()))
    }

    /// Ω_x member (S, m) when it is a valid Whitehead automorphism.
    pub fn member(&self, set: LetterSet, mult: Letter) -> Option<usize> {
        let a = WhiteheadAuto::make_type2(&self.graph, set, mult).ok()?;
        self.rx.omega.lookup(&self.graph, &a)
    }

    pub fn link_letters(&self, l: Letter) -> LetterSet {
        LetterSet::both(self.graph.link(l.vertex()))
    }

    fn describe(&self, m: &EndoMap) -> String {
        m.describe(&self.graph).into_iter().map(|(v, w)| format!("{v}->{w}")).collect::<Vec<_>>().join(", ")
    }

    /// Heights |C w₁⋯w_j|∼ for j = 0..=n.
    pub fn heights(&self, c: &ConjTuple, w: &[usize]) -> Vec<usize> {
        let mut cur = c.clone();
        let mut out = vec![cur.length()];
        for &i in w {
            cur = cur.act(&self.graph, self.map(i));
            out.push(cur.length());
        }
        out
    }

    pub fn classify_type(&self, i: usize) -> TypeClass {
        let Some(t) = self.type2(i) else { return TypeClass::Type1x };
        let rest = t.set.without(t.mult);
        if self.class_letters.contains(t.mult) && rest == self.class_letters.without(t.mult).without(t.mult.inverse()) {
            TypeClass::Type2ax
        } else if self.out_letters.contains(t.mult) && rest == self.class_letters {
            TypeClass::Type2bx
        } else {
            TypeClass::LengthIncreasing
        }
    }

    pub fn index_of(&self, a: &WhiteheadAuto) -> Result<usize, PeakError> {
        self.rx.omega.lookup(&self.graph, a).ok_or_else(|| PeakError::OutsideOmega(a.to_literal(&self.graph)))
    }

    pub fn gen_word(&self, f: &Factorization) -> Result<GenWord, PeakError> {
        f.factors.iter().map(|(a, e)| Ok((self.index_of(a)?, e.signum()))).collect()
    }

    pub fn factorization(&self, w: &[(usize, i32)]) -> Factorization {
        Factorization { x: self.x, factors: w.iter().map(|&(i, e)| (self.rx.omega.members[i].clone(), e)).collect() }
    }

    pub fn symbols_of(&self, w: &[(usize, i32)]) -> Vec<(String, i32)> {
        w.iter().map(|&(i, e)| (self.symbol(i).to_string(), e)).collect()
    }

    pub fn indices_of(&self, w: &[(String, i32)]) -> Result<GenWord, PeakError> {
        w.iter()
            .map(|(s, e)| self.symbols.get(s).map(|&i| (i, *e)).ok_or_else(|| PeakError::Parse(format!("unknown generator `{s}`"))))
            .collect()
    }

    /// Whitespace-separated symbols; `(s)^e` or `s^e` raise to a power.
    pub fn parse_word(&self, s: &str) -> Result<GenWord, PeakError> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if let Some(&i) = self.symbols.get(tok) {
                out.push((i, 1));
                continue;
            }
            let (head, exp) = tok.rsplit_once('^').ok_or_else(|| PeakError::Parse(format!("unknown generator `{tok}`")))?;
            let head = head.strip_prefix('(').and_then(|h| h.strip_suffix(')')).unwrap_or(head);
            let i = *self.symbols.get(head).ok_or_else(|| PeakError::Parse(format!("unknown generator `{head}`")))?;
            let e: i32 = exp.parse().map_err(|_| PeakError::Parse(format!("bad exponent in `{tok}`")))?;
            out.extend(std::iter::repeat((i, e.signum())).take(e.unsigned_abs() as usize));
        }
        Ok(out)
    }

    pub fn format_word(&self, w: &[(usize, i32)]) -> String {
        w.iter()
            .map(|&(i, e)| if e > 0 { self.symbol(i).to_string() } else { format!("({})^-1", self.symbol(i)) })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Name of the first vertex moved by the word, if any.
    pub fn first_moved(&self, w: &[(usize, i32)]) -> Option<String> {
        let m = self.eval(w);
        (0..self.graph.len())
            .find(|&v| m.image(v) != &NormalWord::letter(Letter::pos(v)))
            .map(|v| self.graph.name(v).to_string())
    }

    pub fn invert(&self, w: &[(usize, i32)]) -> GenWord {
        invert_word(w)
    }
}
