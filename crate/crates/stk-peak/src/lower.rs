use std::fmt;

use serde::Serialize;
use stk_stabilizer::sigma;
use stk_whitehead::{Type2, WhiteheadAuto};

use crate::derive::{invert_steps, Deriv, RawStep};
use crate::system::{Factorization, PeakSystem};
use crate::tuple::ConjTuple;
use crate::PeakError;

const MAX_NESTING: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseLabel {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3a")]
    ThreeA,
    #[serde(rename = "3b")]
    ThreeB,
    #[serde(rename = "3c")]
    ThreeC,
    #[serde(rename = "3*a")]
    StarA,
    #[serde(rename = "3*b")]
    StarB,
    #[serde(rename = "3*c")]
    StarC,
    #[serde(rename = "4a")]
    FourA,
    #[serde(rename = "4b-i")]
    FourBi,
    #[serde(rename = "4b-ii")]
    FourBii,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 11] = [
        CaseLabel::One,
        CaseLabel::Two,
        CaseLabel::ThreeA,
        CaseLabel::ThreeB,
        CaseLabel::ThreeC,
        CaseLabel::StarA,
        CaseLabel::StarB,
        CaseLabel::StarC,
        CaseLabel::FourA,
        CaseLabel::FourBi,
        CaseLabel::FourBii,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::One => "1",
            CaseLabel::Two => "2",
            CaseLabel::ThreeA => "3a",
            CaseLabel::ThreeB => "3b",
            CaseLabel::ThreeC => "3c",
            CaseLabel::StarA => "3*a",
            CaseLabel::StarB => "3*b",
            CaseLabel::StarC => "3*c",
            CaseLabel::FourA => "4a",
            CaseLabel::FourBi => "4b-i",
            CaseLabel::FourBii => "4b-ii",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which case lowered a peak α⁻¹β, and how.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeakCaseTrace {
    pub case: CaseLabel,
    pub alpha: String,
    pub beta: String,
    /// The case was applied to the reversed peak β⁻¹α.
    pub swapped: bool,
    pub delta: Vec<String>,
    pub relations: Vec<String>,
    pub inner: Option<Box<PeakCaseTrace>>,
}

impl PeakCaseTrace {
    /// This case and every nested one.
    pub fn labels(&self) -> Vec<CaseLabel> {
        let mut out = vec![self.case];
        if let Some(i) = &self.inner {
            out.extend(i.labels());
        }
        out
    }
}

/// A lowering of the peak word [ᾱ, β] to `delta`, with its moves.
#[derive(Clone, Debug)]
pub struct Lowering {
    pub delta: Vec<usize>,
    pub trace: PeakCaseTrace,
    pub steps: Vec<RawStep>,
}

struct Frame<'c> {
    alpha: usize,
    beta: usize,
    a: Type2,
    b: Type2,
    c: &'c ConjTuple,
}

impl PeakSystem {
    /// Lowers the peak α⁻¹β for C.
    pub fn lower_peak(&self, alpha: usize, beta: usize, c: &ConjTuple) -> Result<Lowering, PeakError> {
        self.lower_at(alpha, beta, c, 0)
    }

    /// [`PeakSystem::lower_peak`] on automorphisms.
    pub fn lower_peak_autos(
        &self,
        alpha: &WhiteheadAuto,
        beta: &WhiteheadAuto,
        c: &ConjTuple,
    ) -> Result<(Factorization, PeakCaseTrace), PeakError> {
        let low = self.lower_peak(self.index_of(alpha)?, self.index_of(beta)?, c)?;
        let w: Vec<(usize, i32)> = low.delta.iter().map(|&i| (i, 1)).collect();
        Ok((self.factorization(&w), low.trace))
    }

    fn lower_at(&self, alpha: usize, beta: usize, c: &ConjTuple, depth: usize) -> Result<Lowering, PeakError> {
        if depth > MAX_NESTING {
            return Err(PeakError::NotLowered("nested lowering too deep".into()));
        }
        let abar = self.inv(alpha);
        let hs = self.heights(c, &[abar, beta]);
        if !(hs[1] >= hs[0] && hs[1] >= hs[2] && (hs[1] > hs[0] || hs[1] > hs[2])) {
            return Err(PeakError::NotPeak(format!("{}^-1 {} heights {hs:?}", self.symbol(alpha), self.symbol(beta))));
        }
        let low = self.dispatch(alpha, beta, c, depth)?;
        self.check_lowering(abar, beta, c, hs[1], &low)?;
        Ok(low)
    }

    fn check_lowering(&self, abar: usize, beta: usize, c: &ConjTuple, top: usize, low: &Lowering) -> Result<(), PeakError> {
        if self.eval_positive(&low.delta) != self.eval_positive(&[abar, beta]) {
            return Err(PeakError::NotLowered(format!("case {} changed the product", low.trace.case)));
        }
        let hs = self.heights(c, &low.delta);
        if hs.len() > 2 && hs[1..hs.len() - 1].iter().any(|&h| h >= top) {
            return Err(PeakError::NotLowered(format!("case {} heights {hs:?} against {top}", low.trace.case)));
        }
        let mut word: Vec<(usize, i32)> = vec![(abar, 1), (beta, 1)];
        for s in &low.steps {
            if word.get(s.pos..s.pos + s.before.len()) != Some(&s.before[..]) {
                return Err(PeakError::NotLowered(format!("case {} derivation is inconsistent", low.trace.case)));
            }
            word.splice(s.pos..s.pos + s.before.len(), s.after.iter().copied());
        }
        if word != low.delta.iter().map(|&i| (i, 1)).collect::<Vec<_>>() {
            return Err(PeakError::NotLowered(format!("case {} derivation ends elsewhere", low.trace.case)));
        }
        Ok(())
    }

    fn dispatch(&self, alpha: usize, beta: usize, c: &ConjTuple, depth: usize) -> Result<Lowering, PeakError> {
        let (ta, tb) = (self.type2(alpha), self.type2(beta));
        let (Some(a), Some(b)) = (ta, tb) else {
            if ta.is_none() {
                return self.case_one(alpha, beta);
            }
            return self.reversed(alpha, beta, c, |a2, b2, _| self.case_one(a2, b2));
        };
        let f = Frame { alpha, beta, a, b, c };
        let (am, bm) = (a.mult, b.mult);
        if self.link_letters(bm).contains(am) {
            return self.simple(CaseLabel::Two, &f, |d| self.pass_right(d, 0));
        }
        let same_vertex = am.vertex() == bm.vertex();
        if a.set.intersection(b.set).is_empty() {
            if same_vertex {
                return self.case_3a(&f);
            }
            if !b.set.contains(am.inverse()) {
                return self.simple(CaseLabel::ThreeB, &f, |d| self.pass_right(d, 0));
            }
            if !a.set.contains(bm.inverse()) {
                return self.reversed(alpha, beta, c, |a2, b2, _| {
                    let f2 = self.frame(a2, b2, c)?;
                    self.simple(CaseLabel::ThreeB, &f2, |d| self.pass_right(d, 0))
                });
            }
            let top = self.heights(c, &[self.inv(alpha)])[1];
            if let Ok(low) = self.case_3c(&f) {
                if self.check_lowering(self.inv(alpha), beta, c, top, &low).is_ok() {
                    return Ok(low);
                }
            }
            return self.reversed(alpha, beta, c, |a2, b2, c2| {
                let f2 = self.frame(a2, b2, c2)?;
                self.case_3c(&f2)
            });
        }
        if a.set.is_subset(b.set) {
            return self.case_star(&f);
        }
        if b.set.is_subset(a.set) {
            return self.reversed(alpha, beta, c, |a2, b2, c2| {
                let f2 = self.frame(a2, b2, c2)?;
                self.case_star(&f2)
            });
        }
        self.case_four(&f, depth)
    }

    fn frame<'c>(&self, alpha: usize, beta: usize, c: &'c ConjTuple) -> Result<Frame<'c>, PeakError> {
        let a = self.type2(alpha).ok_or_else(|| PeakError::NotLowered("expected Type 2".into()))?;
        let b = self.type2(beta).ok_or_else(|| PeakError::NotLowered("expected Type 2".into()))?;
        Ok(Frame { alpha, beta, a, b, c })
    }

    fn start(&self, alpha: usize, beta: usize) -> Deriv<'_> {
        Deriv::new(&self.table, "lower_peak", vec![(self.inv(alpha), 1), (beta, 1)])
    }

    fn finish(&self, case: CaseLabel, alpha: usize, beta: usize, d: Deriv<'_>, inner: Option<PeakCaseTrace>) -> Result<Lowering, PeakError> {
        let delta: Vec<usize> = d
            .word
            .iter()
            .map(|&(i, e)| if e > 0 { Ok(i) } else { Err(PeakError::NotLowered(format!("case {case} left an inverse letter"))) })
            .collect::<Result<_, _>>()?;
        let mut relations: Vec<String> = Vec::new();
        for s in &d.steps {
            if !relations.contains(&s.rule) {
                relations.push(s.rule.clone());
            }
        }
        let trace = PeakCaseTrace {
            case,
            alpha: self.symbol(alpha).to_string(),
            beta: self.symbol(beta).to_string(),
            swapped: false,
            delta: delta.iter().map(|&i| self.symbol(i).to_string()).collect(),
            relations,
            inner: inner.map(Box::new),
        };
        Ok(Lowering { delta, trace, steps: d.steps })
    }

    fn simple(&self, case: CaseLabel, f: &Frame<'_>, mv: impl FnOnce(&mut Deriv<'_>) -> Result<(), PeakError>) -> Result<Lowering, PeakError> {
        let mut d = self.start(f.alpha, f.beta);
        mv(&mut d)?;
        self.finish(case, f.alpha, f.beta, d, None)
    }

    /// Lowers the reversed peak β⁻¹α for Cᾱβ and inverts the result.
    fn reversed(
        &self,
        alpha: usize,
        beta: usize,
        c: &ConjTuple,
        build: impl FnOnce(usize, usize, &ConjTuple) -> Result<Lowering, PeakError>,
    ) -> Result<Lowering, PeakError> {
        let c_rev = c.act(&self.graph, &self.eval_positive(&[self.inv(alpha), beta]));
        let inner = build(beta, alpha, &c_rev)?;
        let mut d = self.start(alpha, beta);
        d.flip(0, &self.rx.omega.inverse_of)?;
        d.flip(1, &self.rx.omega.inverse_of)?;
        d.embed(0, &invert_steps(&inner.steps, 2))?;
        for p in 0..d.word.len() {
            d.flip(p, &self.rx.omega.inverse_of)?;
        }
        let mut low = self.finish(inner.trace.case, alpha, beta, d, inner.trace.inner.map(|b| *b))?;
        low.trace.swapped = !inner.trace.swapped;
        Ok(low)
    }

    /// [x, y] → [y, y⁻¹xy].
    fn pass_right(&self, d: &mut Deriv<'_>, pos: usize) -> Result<(), PeakError> {
        let (x, y) = (d.word[pos], d.word[pos + 1]);
        let e = self.eval(&[(y.0, -y.1), x, y]);
        let z = self.signed(&e, x.1)?;
        d.rewrite(pos, 2, vec![y, z])
    }

    /// [x, y] → [xyx⁻¹, x].
    fn pass_left(&self, d: &mut Deriv<'_>, pos: usize) -> Result<(), PeakError> {
        let (x, y) = (d.word[pos], d.word[pos + 1]);
        let e = self.eval(&[x, y, (x.0, -x.1)]);
        let z = self.signed(&e, y.1)?;
        d.rewrite(pos, 2, vec![z, x])
    }

    /// The letter with sign `sign` whose action is `e`.
    fn signed(&self, e: &stk_whitehead::EndoMap, sign: i32) -> Result<(usize, i32), PeakError> {
        let i = self.require(e)?;
        Ok(if sign > 0 { (i, 1) } else { (self.inv(i), -1) })
    }

    /// [x, y] → [σ_{m(x),m(y)}, k] with xy = σk.
    fn r5(&self, d: &mut Deriv<'_>, pos: usize) -> Result<(), PeakError> {
        let (x, y) = (d.word[pos].0, d.word[pos + 1].0);
        let (tx, ty) = (self.type2(x), self.type2(y));
        let (Some(tx), Some(ty)) = (tx, ty) else {
            return Err(PeakError::NotLowered("R5 needs Type 2 letters".into()));
        };
        let s = self.require(&WhiteheadAuto::Type1(sigma(&self.graph, tx.mult, ty.mult)).to_map(&self.graph))?;
        let k = self.require(&self.eval(&[(s, -1), (x, 1), (y, 1)]))?;
        d.rewrite(pos, 2, vec![(s, 1), (k, 1)])
    }

    /// [ᾱ, γ] → [ᾱγ] for Type 2 letters sharing a multiplier vertex.
    fn merge(&self, d: &mut Deriv<'_>, pos: usize) -> Result<(), PeakError> {
        let (abar, gamma) = (d.word[pos].0, d.word[pos + 1].0);
        let alpha = self.inv(abar);
        let Some(hat) = self.lookup(&self.eval_positive(&[abar, gamma]))? else {
            return d.rewrite(pos, 2, vec![]);
        };
        if self.table.justify(&[(abar, 1), (gamma, 1)], &[(hat, 1)]).is_some() {
            return d.rewrite(pos, 2, vec![(hat, 1)]);
        }
        // γ = α·hat
        if self.table.justify(&[(gamma, 1)], &[(alpha, 1), (hat, 1)]).is_some() {
            d.rewrite(pos + 1, 1, vec![(alpha, 1), (hat, 1)])?;
            return d.rewrite(pos, 2, vec![]);
        }
        // α = γ·k
        if let Some(k) = self.lookup(&self.eval(&[(gamma, -1), (alpha, 1)]))? {
            if self.table.justify(&[(alpha, 1)], &[(gamma, 1), (k, 1)]).is_some() {
                d.flip(pos, &self.rx.omega.inverse_of)?;
                d.rewrite(pos, 1, vec![(k, -1), (gamma, -1)])?;
                d.rewrite(pos + 1, 2, vec![])?;
                return d.flip(pos, &self.rx.omega.inverse_of);
            }
        }
        Err(PeakError::Unjustified(format!("merge {} {}", self.symbol(abar), self.symbol(gamma))))
    }

    fn case_one(&self, alpha: usize, beta: usize) -> Result<Lowering, PeakError> {
        let mut d = self.start(alpha, beta);
        self.pass_left(&mut d, 0)?;
        self.finish(CaseLabel::One, alpha, beta, d, None)
    }

    fn case_3a(&self, f: &Frame<'_>) -> Result<Lowering, PeakError> {
        let mut d = self.start(f.alpha, f.beta);
        let k = self.require(&self.eval_positive(&[self.inv(f.alpha), f.beta]))?;
        d.rewrite(0, 2, vec![(k, 1)])?;
        self.finish(CaseLabel::ThreeA, f.alpha, f.beta, d, None)
    }

    fn case_3c(&self, f: &Frame<'_>) -> Result<Lowering, PeakError> {
        let bp = self
            .member(f.b.set, f.a.mult.inverse())
            .ok_or_else(|| PeakError::OutsideOmega("(B, a^-1)".into()))?;
        let mut d = self.start(f.alpha, f.beta);
        d.rewrite(1, 0, vec![(bp, 1), (bp, -1)])?;
        self.merge(&mut d, 0)?;
        let at = d.word.len() - 2;
        d.flip(at, &self.rx.omega.inverse_of)?;
        self.r5(&mut d, at)?;
        self.finish(CaseLabel::ThreeC, f.alpha, f.beta, d, None)
    }

    fn case_star(&self, f: &Frame<'_>) -> Result<Lowering, PeakError> {
        let (a, b) = (f.a, f.b);
        let mut d = self.start(f.alpha, f.beta);
        if a.mult.vertex() == b.mult.vertex() {
            self.merge(&mut d, 0)?;
            return self.finish(CaseLabel::StarA, f.alpha, f.beta, d, None);
        }
        if b.set.contains(a.mult.inverse()) {
            d.flip(0, &self.rx.omega.inverse_of)?;
            self.pass_right(&mut d, 0)?;
            d.flip(1, &self.rx.omega.inverse_of)?;
            return self.finish(CaseLabel::StarB, f.alpha, f.beta, d, None);
        }
        if !a.set.contains(b.mult) {
            self.pass_left(&mut d, 0)?;
            return self.finish(CaseLabel::StarC, f.alpha, f.beta, d, None);
        }
        let top = self.heights(f.c, &[self.inv(f.alpha)])[1];
        let beta_a = self.member(b.set, a.mult);
        let alpha_b = self.member(a.set, b.mult);
        let shortens = |g: Option<usize>| {
            g.is_some_and(|g| self.heights(f.c, &[self.inv(f.alpha), g])[2] < top)
        };
        if shortens(beta_a) {
            let ba = beta_a.expect("checked");
            if ba != f.alpha {
                d.rewrite(1, 0, vec![(ba, 1), (ba, -1)])?;
                self.merge(&mut d, 0)?;
                let at = d.word.len() - 2;
                d.flip(at, &self.rx.omega.inverse_of)?;
            }
            let at = d.word.len() - 2;
            self.r5(&mut d, at)?;
            return self.finish(CaseLabel::StarC, f.alpha, f.beta, d, None);
        }
        if shortens(alpha_b) {
            let ab = alpha_b.expect("checked");
            if ab != f.beta {
                let k3 = self.require(&self.eval(&[(ab, -1), (f.beta, 1)]))?;
                d.rewrite(1, 1, vec![(ab, 1), (k3, 1)])?;
            }
            let s = self.require(&WhiteheadAuto::Type1(sigma(&self.graph, a.mult, b.mult)).to_map(&self.graph))?;
            let m = self.require(&self.eval(&[(s, -1), (ab, 1), (s, 1)]))?;
            d.rewrite(1, 1, vec![(s, 1), (m, 1), (s, -1)])?;
            d.flip(0, &self.rx.omega.inverse_of)?;
            let k5 = self.require(&self.eval(&[(f.alpha, -1), (s, 1), (m, 1)]))?;
            d.rewrite(0, 3, vec![(k5, 1)])?;
            d.flip(1, &self.rx.omega.inverse_of)?;
            return self.finish(CaseLabel::StarC, f.alpha, f.beta, d, None);
        }
        Err(PeakError::NotLowered("neither (A,b) nor (B,a) shortens".into()))
    }

    fn case_four(&self, f: &Frame<'_>, depth: usize) -> Result<Lowering, PeakError> {
        let (a, b) = (f.a, f.b);
        let label = if self.link_letters(a.mult) == self.link_letters(b.mult) && a.mult.vertex() != b.mult.vertex() {
            CaseLabel::FourA
        } else if a.set.contains(b.mult) || b.set.contains(a.mult) {
            CaseLabel::FourBi
        } else {
            CaseLabel::FourBii
        };
        let top = self.heights(f.c, &[self.inv(f.alpha)])[1];
        for cand in self.candidates(a, b) {
            if cand == f.alpha || self.heights(f.c, &[self.inv(f.alpha), cand])[2] >= top {
                continue;
            }
            return self.via_candidate(label, f.alpha, f.beta, f.c, cand, depth);
        }
        let c_rev = f.c.act(&self.graph, &self.eval_positive(&[self.inv(f.alpha), f.beta]));
        for cand in self.candidates(b, a) {
            if cand == f.beta || self.heights(&c_rev, &[self.inv(f.beta), cand])[2] >= top {
                continue;
            }
            return self.reversed(f.alpha, f.beta, f.c, |a2, b2, c2| self.via_candidate(label, a2, b2, c2, cand, depth));
        }
        Err(PeakError::NotLowered(format!("case {label}: no candidate shortens")))
    }

    /// (A∩B,a), (A∖B,a), (B∖A,a⁻¹), (A∪B,a), (A∖(B∪lk_L(b)),a), where defined in Ω_x.
    fn candidates(&self, a: Type2, b: Type2) -> Vec<usize> {
        let lk = self.link_letters(b.mult);
        let sets = [
            (a.set.intersection(b.set), a.mult),
            (a.set.difference(b.set), a.mult),
            (b.set.difference(a.set), a.mult.inverse()),
            (a.set.union(b.set), a.mult),
            (a.set.difference(b.set.union(lk)), a.mult),
        ];
        let mut out: Vec<usize> = Vec::new();
        for (s, m) in sets {
            if let Some(i) = self.member(s, m) {
                if !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out
    }

    /// ᾱβ = (ᾱγ)·(lowering of γ⁻¹β for Cᾱγ).
    fn via_candidate(&self, label: CaseLabel, alpha: usize, beta: usize, c: &ConjTuple, gamma: usize, depth: usize) -> Result<Lowering, PeakError> {
        let abar = self.inv(alpha);
        let hat = self.require(&self.eval_positive(&[abar, gamma]))?;
        let inner = self.lower_at(gamma, beta, &c.act(&self.graph, self.map(hat)), depth + 1)?;
        let mut d = self.start(alpha, beta);
        d.rewrite(1, 0, vec![(gamma, 1), (gamma, -1)])?;
        d.flip(2, &self.rx.omega.inverse_of)?;
        self.merge(&mut d, 0)?;
        if d.word[0] != (hat, 1) {
            return Err(PeakError::NotLowered("merge produced an unexpected letter".into()));
        }
        d.embed(1, &inner.steps)?;
        self.finish(label, alpha, beta, d, Some(inner.trace))
    }
}
