use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use stk_graph::Graph;
use stk_whitehead::par::{self, Strategy};
use stk_whitehead::{EndoMap, WhiteheadAuto};

/// A generator letter: index and exponent ±1.
pub type GenLetter = (usize, i32);
pub type GenWord = Vec<GenLetter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub symbol: String,
    pub auto: WhiteheadAuto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub word: GenWord,
    pub provenance: String,
}

/// Generators bound to Whitehead automorphisms, with relators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Relator>,
}

pub fn invert_word(w: &[GenLetter]) -> GenWord {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

pub fn free_reduce(w: &[GenLetter]) -> GenWord {
    let mut out: GenWord = Vec::with_capacity(w.len());
    for &l in w {
        if out.last().is_some_and(|&(g, e)| g == l.0 && e == -l.1) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn cyclic_free_reduce(w: &[GenLetter]) -> GenWord {
    let mut out = free_reduce(w);
    while out.len() >= 2 {
        let (f, l) = (out[0], out[out.len() - 1]);
        if f.0 == l.0 && f.1 == -l.1 {
            out.pop();
            out.remove(0);
        } else {
            break;
        }
    }
    out
}

fn letter_key(l: GenLetter) -> (usize, i32) {
    (l.0, -l.1)
}

/// Least rotation of `w` or of its inverse, comparing positive letters first.
pub fn cyclic_canonical(w: &[GenLetter]) -> GenWord {
    let mut best: Option<GenWord> = None;
    for cand in [w.to_vec(), invert_word(w)] {
        for r in 0..cand.len().max(1) {
            let rot: GenWord = cand[r..].iter().chain(&cand[..r]).copied().collect();
            let better = match &best {
                None => true,
                Some(b) => rot.iter().map(|&l| letter_key(l)).lt(b.iter().map(|&l| letter_key(l))),
            };
            if better {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

impl Presentation {
    pub fn symbol_index(&self) -> HashMap<&str, usize> {
        self.generators.iter().enumerate().map(|(i, g)| (g.symbol.as_str(), i)).collect()
    }

    pub fn maps(&self, g: &Graph) -> Vec<(EndoMap, EndoMap)> {
        self.generators.iter().map(|x| (x.auto.to_map(g), x.auto.inverse().to_map(g))).collect()
    }

    pub fn evaluate(g: &Graph, maps: &[(EndoMap, EndoMap)], w: &[GenLetter]) -> EndoMap {
        w.iter().fold(EndoMap::identity(g), |acc, &(i, e)| {
            acc.then(g, if e > 0 { &maps[i].0 } else { &maps[i].1 })
        })
    }

    /// Index of the first relator that is not the identity automorphism.
    pub fn first_failure(&self, g: &Graph, strategy: Strategy) -> Option<usize> {
        let maps = self.maps(g);
        par::find_failure(strategy, &self.relators, |r| Presentation::evaluate(g, &maps, &r.word).is_identity())
    }

    /// Writes g⁻¹ as g for involutions whose square is a relator.
    pub fn normalize_involutions(&mut self, g: &Graph) {
        let invol: Vec<bool> = (0..self.generators.len())
            .map(|k| {
                let m = self.generators[k].auto.to_map(g);
                m.then(g, &m).is_identity() && self.relators.iter().any(|r| r.word == [(k, 1), (k, 1)])
            })
            .collect();
        for r in &mut self.relators {
            for l in &mut r.word {
                if invol[l.0] {
                    l.1 = 1;
                }
            }
        }
    }

    pub fn word_string(&self, w: &[GenLetter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        runs(w)
            .into_iter()
            .map(|(i, e)| {
                let s = &self.generators[i].symbol;
                if e == 1 {
                    s.clone()
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_text(&self) -> String {
        let gens: Vec<&str> = self.generators.iter().map(|g| g.symbol.as_str()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_string(&r.word)).collect();
        format!("< {} | {} >\n", gens.join(", "), rels.join(", "))
    }

    pub fn to_gap(&self) -> String {
        let mut s = String::new();
        let names: Vec<String> = self.generators.iter().map(|g| format!("\"{}\"", g.symbol)).collect();
        let _ = writeln!(s, "F := FreeGroup([{}]);;", names.join(", "));
        let mut rels = Vec::new();
        for r in &self.relators {
            if r.word.is_empty() {
                continue;
            }
            let factors: Vec<String> = runs(&r.word)
                .into_iter()
                .map(|(i, e)| if e == 1 { format!("F.{}", i + 1) } else { format!("F.{}^{}", i + 1, e) })
                .collect();
            rels.push(factors.join("*"));
        }
        let _ = writeln!(s, "rels := [{}];;", rels.join(", "));
        let _ = writeln!(s, "G := F / rels;;");
        s
    }

    pub fn to_json_value(&self, g: &Graph) -> PresentationJson {
        PresentationJson {
            generators: self
                .generators
                .iter()
                .map(|x| GeneratorJson { symbol: x.symbol.clone(), binding: x.auto.to_literal(g) })
                .collect(),
            relators: self
                .relators
                .iter()
                .map(|r| runs(&r.word).into_iter().map(|(i, e)| (self.generators[i].symbol.clone(), e)).collect())
                .collect(),
            provenance: self.relators.iter().map(|r| r.provenance.clone()).collect(),
        }
    }
}

fn runs(w: &[GenLetter]) -> Vec<(usize, i32)> {
    let mut out: Vec<(usize, i32)> = Vec::new();
    for &(i, e) in w {
        match out.last_mut() {
            Some((j, f)) if *j == i && f.signum() == e.signum() => *f += e,
            _ => out.push((i, e)),
        }
    }
    out
}

#[derive(Serialize, Debug)]
pub struct GeneratorJson {
    pub symbol: String,
    pub binding: String,
}

#[derive(Serialize, Debug)]
pub struct PresentationJson {
    pub generators: Vec<GeneratorJson>,
    pub relators: Vec<Vec<(String, i32)>>,
    pub provenance: Vec<String>,
}
