use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use stk_stabilizer::{cyclic_canonical, cyclic_free_reduce, invert_word, GenWord, Presentation};

use crate::PeakError;

/// Relators of R_x keyed by their cyclic canonical form.
#[derive(Clone, Debug)]
pub struct RelatorTable {
    canon: HashMap<GenWord, (String, GenWord)>,
}

impl RelatorTable {
    pub fn new(pres: &Presentation) -> RelatorTable {
        let mut canon = HashMap::new();
        for r in &pres.relators {
            let key = cyclic_canonical(&cyclic_free_reduce(&r.word));
            canon.entry(key).or_insert_with(|| (r.provenance.clone(), r.word.clone()));
        }
        RelatorTable { canon }
    }

    /// Rule justifying the replacement of `before` by `after`.
    pub fn justify(&self, before: &[(usize, i32)], after: &[(usize, i32)]) -> Option<(String, GenWord)> {
        let mut w = before.to_vec();
        w.extend(invert_word(after));
        let w = cyclic_free_reduce(&w);
        if w.is_empty() {
            return Some(("free".to_string(), Vec::new()));
        }
        self.canon.get(&cyclic_canonical(&w)).cloned()
    }

    pub fn len(&self) -> usize {
        self.canon.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canon.is_empty()
    }
}

/// One rewriting move on an Ω_x word, in generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawStep {
    pub rule: String,
    pub pos: usize,
    pub before: GenWord,
    pub after: GenWord,
    pub relator: GenWord,
    pub stage: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepParams {
    pub pos: usize,
    pub relator: Vec<(String, i32)>,
    pub stage: String,
}

/// Serialized certificate step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub params: StepParams,
    pub before: Vec<(String, i32)>,
    pub after: Vec<(String, i32)>,
}

/// A word together with the moves that produced it.
pub(crate) struct Deriv<'a> {
    table: &'a RelatorTable,
    stage: &'static str,
    pub word: GenWord,
    pub steps: Vec<RawStep>,
}

impl<'a> Deriv<'a> {
    pub fn new(table: &'a RelatorTable, stage: &'static str, word: GenWord) -> Deriv<'a> {
        Deriv { table, stage, word, steps: Vec::new() }
    }

    pub fn rewrite(&mut self, pos: usize, len: usize, after: GenWord) -> Result<(), PeakError> {
        let before: GenWord = self.word[pos..pos + len].to_vec();
        let (rule, relator) = self.table.justify(&before, &after).ok_or_else(|| {
            PeakError::Unjustified(format!("{before:?} -> {after:?}"))
        })?;
        self.word.splice(pos..pos + len, after.iter().copied());
        self.steps.push(RawStep { rule, pos, before, after, relator, stage: self.stage });
        Ok(())
    }

    /// (g, e) ↔ (ḡ, −e).
    pub fn flip(&mut self, pos: usize, inverse_of: &[usize]) -> Result<(), PeakError> {
        let (g, e) = self.word[pos];
        self.rewrite(pos, 1, vec![(inverse_of[g], -e)])
    }

    /// Replays moves made on the segment starting at `offset`.
    pub fn embed(&mut self, offset: usize, steps: &[RawStep]) -> Result<(), PeakError> {
        for s in steps {
            let at = offset + s.pos;
            if self.word.get(at..at + s.before.len()) != Some(&s.before[..]) {
                return Err(PeakError::Unjustified(format!("embedded step does not match at {at}")));
            }
            self.word.splice(at..at + s.before.len(), s.after.iter().copied());
            self.steps.push(RawStep { pos: at, stage: self.stage, ..s.clone() });
        }
        Ok(())
    }
}

/// The same moves applied to the formal inverse of the word.
pub(crate) fn invert_steps(steps: &[RawStep], start_len: usize) -> Vec<RawStep> {
    let mut n = start_len;
    steps
        .iter()
        .map(|s| {
            let pos = n - s.pos - s.before.len();
            n = n + s.after.len() - s.before.len();
            RawStep { pos, before: invert_word(&s.before), after: invert_word(&s.after), ..s.clone() }
        })
        .collect()
}
