use serde::{Deserialize, Serialize};
use stk_stabilizer::GenWord;

use crate::derive::{Deriv, RawStep, Step, StepParams};
use crate::lower::PeakCaseTrace;
use crate::system::{PeakSystem, TypeClass};
use crate::tuple::ConjTuple;
use crate::PeakError;

const MAX_ROUNDS: usize = 100_000;

/// A word over Ω_x rewritten by R_x moves.
#[derive(Clone, Debug)]
pub struct Rewritten {
    pub word: GenWord,
    pub steps: Vec<RawStep>,
    pub traces: Vec<PeakCaseTrace>,
}

/// Replayable proof that a word over Ω_x is trivial in ⟨Ω_x | R_x⟩.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub input: Vec<(String, i32)>,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug)]
pub enum Triviality {
    Identity(Vec<RawStep>),
    NotIdentity { moved: String },
}

#[derive(Clone, Debug)]
pub struct WordProblem {
    pub identity: bool,
    pub moved: Option<String>,
    pub certificate: Option<Certificate>,
    pub traces: Vec<PeakCaseTrace>,
}

impl PeakSystem {
    fn positive(&self, d: &mut Deriv<'_>) -> Result<(), PeakError> {
        for p in 0..d.word.len() {
            if d.word[p].1 < 0 {
                d.flip(p, &self.rx.omega.inverse_of)?;
            }
        }
        Ok(())
    }

    fn indices(w: &GenWord) -> Vec<usize> {
        w.iter().map(|&(i, _)| i).collect()
    }

    /// Positions j whose pair (w_j, w_{j+1}) is a peak, with heights.
    fn peaks(hs: &[usize]) -> Vec<(usize, usize)> {
        (1..hs.len().saturating_sub(1))
            .filter(|&j| hs[j] >= hs[j - 1] && hs[j] >= hs[j + 1] && (hs[j] > hs[j - 1] || hs[j] > hs[j + 1]))
            .map(|j| (j, hs[j]))
            .collect()
    }

    /// No peaks for C.
    pub fn is_peak_reduced(&self, w: &[usize], c: &ConjTuple) -> bool {
        Self::peaks(&self.heights(c, w)).is_empty()
    }

    /// Lowers the leftmost highest peak until none remain.
    pub fn peak_reduce(&self, w: &GenWord, c: &ConjTuple) -> Result<Rewritten, PeakError> {
        let mut d = Deriv::new(&self.table, "peak_reduce", w.clone());
        self.positive(&mut d)?;
        let mut traces = Vec::new();
        let mut last: Option<(usize, usize)> = None;
        for _ in 0..MAX_ROUNDS {
            let word = Self::indices(&d.word);
            let hs = self.heights(c, &word);
            let peaks = Self::peaks(&hs);
            let Some(m) = peaks.iter().map(|&(_, h)| h).max() else {
                return Ok(Rewritten { word: d.word, steps: d.steps, traces });
            };
            let measure = (m, hs[1..].iter().filter(|&&h| h == m).count());
            if last.is_some_and(|l| measure >= l) {
                return Err(PeakError::NotLowered(format!("measure {measure:?} did not drop below {last:?}")));
            }
            last = Some(measure);
            let (j, _) = *peaks.iter().find(|&&(_, h)| h == m).expect("maximum exists");
            let pre = c.act(&self.graph, &self.eval_positive(&word[..j - 1]));
            let low = self.lower_peak(self.inv(word[j - 1]), word[j], &pre)?;
            d.embed(j - 1, &low.steps)?;
            traces.push(low.trace);
        }
        Err(PeakError::NotLowered("peak reduction did not terminate".into()))
    }

    /// α₁⋯α_r β₁⋯β_s σ with α_i of Type 2a, β_i of Type 2b and σ of Type 1.
    pub fn normalize_order(&self, w: &GenWord) -> Result<Rewritten, PeakError> {
        let mut d = Deriv::new(&self.table, "normalize_order", w.clone());
        self.positive(&mut d)?;
        let class = |i: usize| self.classify_type(i);
        if let Some(&(i, _)) = d.word.iter().find(|&&(i, _)| class(i) == TypeClass::LengthIncreasing) {
            return Err(PeakError::Unclassifiable(self.symbol(i).to_string()));
        }
        while let Some(p) = (1..d.word.len())
            .rev()
            .find(|&p| class(d.word[p].0) != TypeClass::Type1x && class(d.word[p - 1].0) == TypeClass::Type1x)
        {
            self.conjugate_left(&mut d, p - 1)?;
        }
        while d.word.len() >= 2 && class(d.word[d.word.len() - 2].0) == TypeClass::Type1x {
            let n = d.word.len();
            let prod = self.lookup(&self.eval(&d.word[n - 2..]))?;
            d.rewrite(n - 2, 2, prod.map(|k| vec![(k, 1)]).unwrap_or_default())?;
        }
        while let Some(p) = (1..d.word.len())
            .rev()
            .find(|&p| class(d.word[p].0) == TypeClass::Type2ax && class(d.word[p - 1].0) == TypeClass::Type2bx)
        {
            self.conjugate_left(&mut d, p - 1)?;
        }
        Ok(Rewritten { word: d.word, steps: d.steps, traces: Vec::new() })
    }

    /// [x, y] → [xyx⁻¹, x].
    fn conjugate_left(&self, d: &mut Deriv<'_>, pos: usize) -> Result<(), PeakError> {
        let (x, y) = (d.word[pos], d.word[pos + 1]);
        let z = self.require(&self.eval(&[x, y, (x.0, -x.1)]))?;
        d.rewrite(pos, 2, vec![(z, 1), x])
    }

    fn is_normalized(&self, w: &GenWord) -> bool {
        let rank = |i: usize| match self.classify_type(i) {
            TypeClass::Type2ax => 0,
            TypeClass::Type2bx => 1,
            TypeClass::Type1x => 2,
            TypeClass::LengthIncreasing => 3,
        };
        w.iter().all(|&(_, e)| e > 0)
            && w.iter().all(|&(i, _)| rank(i) < 3)
            && w.windows(2).all(|p| rank(p[0].0) <= rank(p[1].0))
            && w.iter().filter(|&&(i, _)| rank(i) == 2).count() <= 1
    }

    /// Cancels a normalized word to the empty word, or names a moved generator.
    pub fn trivialize(&self, w: &GenWord) -> Result<Triviality, PeakError> {
        if !self.is_normalized(w) {
            return Err(PeakError::NotNormalized(self.format_word(w)));
        }
        if let Some(moved) = self.first_moved(w) {
            return Ok(Triviality::NotIdentity { moved });
        }
        let mut d = Deriv::new(&self.table, "trivialize", w.clone());
        let class = |i: usize| self.classify_type(i);
        loop {
            let bs: Vec<usize> = (0..d.word.len()).filter(|&p| class(d.word[p].0) == TypeClass::Type2bx).collect();
            if bs.is_empty() {
                break;
            }
            let mult = |p: usize| self.type2(d.word[p].0).expect("Type 2").mult;
            let pair = bs.iter().find_map(|&p| {
                let lk = self.link_letters(mult(p));
                bs.iter()
                    .filter(|&&q| q > p)
                    .take_while(|&&q| q == p + 1 || lk.contains(mult(q - 1)))
                    .find(|&&q| mult(q) == mult(p).inverse())
                    .map(|&q| (p, q))
            });
            let Some((p, q)) = pair else {
                return Err(PeakError::Stuck(format!("no cancelling 2b pair in {}", self.format_word(&d.word))));
            };
            for at in p..q - 1 {
                let (x, y) = (d.word[at], d.word[at + 1]);
                if self.eval(&[x, y]) != self.eval(&[y, x]) {
                    return Err(PeakError::Stuck(format!("{} and {} do not commute", self.symbol(x.0), self.symbol(y.0))));
                }
                d.rewrite(at, 2, vec![y, x])?;
            }
            d.rewrite(q - 1, 2, vec![])?;
        }
        while let Some(p) = (1..d.word.len()).find(|&p| d.word[p].0 == self.inv(d.word[p - 1].0)) {
            d.rewrite(p - 1, 2, vec![])?;
        }
        if !d.word.is_empty() {
            return Err(PeakError::Stuck(format!("left with {}", self.format_word(&d.word))));
        }
        Ok(Triviality::Identity(d.steps))
    }

    /// Decides α = 1 and, when it is, certifies it from R_x.
    pub fn word_problem(&self, w: &GenWord) -> Result<WordProblem, PeakError> {
        if let Some(moved) = self.first_moved(w) {
            return Ok(WordProblem { identity: false, moved: Some(moved), certificate: None, traces: Vec::new() });
        }
        let reduced = self.peak_reduce(w, &self.c2)?;
        let ordered = self.normalize_order(&reduced.word)?;
        let Triviality::Identity(last) = self.trivialize(&ordered.word)? else {
            return Err(PeakError::Stuck("identity word reported as moving a generator".into()));
        };
        let raw: Vec<RawStep> = reduced.steps.into_iter().chain(ordered.steps).chain(last).collect();
        let certificate = Certificate { input: self.symbols_of(w), steps: raw.iter().map(|s| self.step(s)).collect() };
        Ok(WordProblem { identity: true, moved: None, certificate: Some(certificate), traces: reduced.traces })
    }

    pub fn step(&self, s: &RawStep) -> Step {
        Step {
            rule: s.rule.clone(),
            params: StepParams { pos: s.pos, relator: self.symbols_of(&s.relator), stage: s.stage.to_string() },
            before: self.symbols_of(&s.before),
            after: self.symbols_of(&s.after),
        }
    }

    /// Replays a certificate in the free group on Ω_x.
    pub fn replay(&self, cert: &Certificate) -> Result<(), PeakError> {
        let mut word = self.indices_of(&cert.input)?;
        for (n, s) in cert.steps.iter().enumerate() {
            let before = self.indices_of(&s.before)?;
            let after = self.indices_of(&s.after)?;
            let at = s.params.pos;
            if word.get(at..at + before.len()) != Some(&before[..]) {
                return Err(PeakError::Replay(format!("step {n}: subword mismatch at {at}")));
            }
            match self.table.justify(&before, &after) {
                Some((rule, _)) if rule == s.rule => {}
                _ => return Err(PeakError::Replay(format!("step {n}: `{}` does not justify the move", s.rule))),
            }
            word.splice(at..at + before.len(), after);
        }
        if !word.is_empty() {
            return Err(PeakError::Replay(format!("ends at {}", self.format_word(&word))));
        }
        Ok(())
    }
}
