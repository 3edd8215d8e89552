use std::fmt::Write as _;

use stk_graph::{Graph, VertexSet};
use stk_word::{letter_str, normal_form, parse_word, Letter, NormalWord};

use crate::{EndoMap, LetterSet, WhiteheadError};

/// A permutation of L commuting with inversion, stored by the images of
/// the positive letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SignedPerm(Vec<Letter>);

impl SignedPerm {
    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm((0..n).map(Letter::pos).collect())
    }

    pub fn inversion(n: usize, v: usize) -> SignedPerm {
        let mut p = SignedPerm::identity(n);
        p.0[v] = Letter::neg(v);
        p
    }

    /// Checks bijectivity; graph compatibility is checked separately.
    pub fn from_images(images: Vec<Letter>) -> Result<SignedPerm, WhiteheadError> {
        let hit: VertexSet = images.iter().map(|l| l.vertex()).collect();
        if hit.len() != images.len() || images.iter().any(|l| l.vertex() >= images.len()) {
            return Err(WhiteheadError::NotPermutation);
        }
        Ok(SignedPerm(images))
    }

    pub fn images(&self) -> &[Letter] {
        &self.0
    }

    pub fn apply(&self, l: Letter) -> Letter {
        let img = self.0[l.vertex()];
        if l.is_positive() {
            img
        } else {
            img.inverse()
        }
    }

    pub fn then(&self, next: &SignedPerm) -> SignedPerm {
        SignedPerm(self.0.iter().map(|&l| next.apply(l)).collect())
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut out = self.0.clone();
        for (v, &img) in self.0.iter().enumerate() {
            out[img.vertex()] = Letter::new(v, img.is_positive());
        }
        SignedPerm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(v, &l)| l == Letter::pos(v))
    }

    /// Vertices not fixed.
    pub fn support(&self) -> VertexSet {
        self.0.iter().enumerate().filter(|&(v, &l)| l != Letter::pos(v)).map(|(v, _)| v).collect()
    }

    pub fn is_graph_automorphism(&self, g: &Graph) -> bool {
        (0..g.len()).all(|u| {
            (0..g.len()).all(|v| g.adjacent(u, v) == g.adjacent(self.0[u].vertex(), self.0[v].vertex()))
        })
    }

    /// Cycles on L, each starting at its least letter.
    pub fn cycles(&self) -> Vec<Vec<Letter>> {
        let n = self.0.len();
        let mut seen = vec![false; 2 * n];
        let mut out = Vec::new();
        for i in 0..2 * n {
            let start = Letter::from_index(i);
            if seen[i] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[i] = true;
            let mut l = self.apply(start);
            while l != start {
                seen[l.index()] = true;
                cyc.push(l);
                l = self.apply(l);
            }
            out.push(cyc);
        }
        out
    }
}

/// (A, a): the product α_{C,a} τ_{T,a}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Type2 {
    pub set: LetterSet,
    pub mult: Letter,
}

/// The decomposition A∖{a} = C± ⊔ T ⊔ U±.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Type2Parts {
    pub c: VertexSet,
    pub t: LetterSet,
    pub u: VertexSet,
}

impl Type2 {
    pub fn parts(&self, g: &Graph) -> Type2Parts {
        let a = self.mult.vertex();
        let rest = self.set.without(self.mult);
        let mut parts = Type2Parts { c: VertexSet::EMPTY, t: LetterSet::EMPTY, u: VertexSet::EMPTY };
        for w in rest.vertices() {
            let (p, n) = (rest.contains(Letter::pos(w)), rest.contains(Letter::neg(w)));
            match (p && n, g.adjacent(a, w)) {
                (true, true) => parts.u.insert(w),
                (true, false) => parts.c.insert(w),
                (false, _) => parts.t.insert(Letter::new(w, p)),
            }
        }
        parts
    }

    pub fn validate(&self, g: &Graph) -> Result<Type2Parts, WhiteheadError> {
        let a = self.mult.vertex();
        if !self.set.contains(self.mult) {
            return Err(WhiteheadError::MultiplierMissing);
        }
        if self.set.contains(self.mult.inverse()) {
            return Err(WhiteheadError::InverseMultiplier);
        }
        if self.set.vertices().iter().any(|v| v >= g.len()) {
            return Err(WhiteheadError::UnknownLetter);
        }
        let parts = self.parts(g);
        for comp in g.components(g.all().difference(g.star_of(a))) {
            let inside = comp.intersection(parts.c);
            if !inside.is_empty() && inside != comp {
                return Err(WhiteheadError::NotComponentUnion);
            }
        }
        for t in parts.t.iter() {
            if !g.link(t.vertex()).is_subset(g.star_of(a)) {
                return Err(WhiteheadError::TransvectionCondition);
            }
        }
        if parts.c.is_empty() && parts.t.is_empty() {
            return Err(WhiteheadError::Trivial);
        }
        Ok(parts)
    }

    pub fn inverse(&self) -> Type2 {
        Type2 { set: self.set.without(self.mult).with(self.mult.inverse()), mult: self.mult.inverse() }
    }

    fn image(&self, l: Letter) -> Vec<Letter> {
        if l.vertex() == self.mult.vertex() {
            return vec![l];
        }
        let mut out = Vec::with_capacity(3);
        if self.set.contains(l.inverse()) {
            out.push(self.mult.inverse());
        }
        out.push(l);
        if self.set.contains(l) {
            out.push(self.mult);
        }
        out
    }
}

/// A Whitehead automorphism of Type 1 or Type 2.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum WhiteheadAuto {
    Type1(SignedPerm),
    Type2(Type2),
}

impl WhiteheadAuto {
    pub fn identity(g: &Graph) -> WhiteheadAuto {
        WhiteheadAuto::Type1(SignedPerm::identity(g.len()))
    }

    pub fn inversion(g: &Graph, v: usize) -> WhiteheadAuto {
        WhiteheadAuto::Type1(SignedPerm::inversion(g.len(), v))
    }

    pub fn type1(g: &Graph, p: SignedPerm) -> Result<WhiteheadAuto, WhiteheadError> {
        if p.images().len() != g.len() {
            return Err(WhiteheadError::NotPermutation);
        }
        if !p.is_graph_automorphism(g) {
            return Err(WhiteheadError::NotGraphAutomorphism);
        }
        Ok(WhiteheadAuto::Type1(p))
    }

    /// Validated (A, a).
    pub fn make_type2(g: &Graph, set: LetterSet, mult: Letter) -> Result<WhiteheadAuto, WhiteheadError> {
        let t = Type2 { set, mult };
        t.validate(g)?;
        Ok(WhiteheadAuto::Type2(t))
    }

    /// τ_{s,t} = ({s, t}, t).
    pub fn transvection(g: &Graph, s: Letter, t: Letter) -> Result<WhiteheadAuto, WhiteheadError> {
        WhiteheadAuto::make_type2(g, [s, t].into_iter().collect(), t)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, WhiteheadAuto::Type1(p) if p.is_identity())
    }

    pub fn as_type2(&self) -> Option<Type2> {
        match self {
            WhiteheadAuto::Type2(t) => Some(*t),
            WhiteheadAuto::Type1(_) => None,
        }
    }

    pub fn apply_letter(&self, l: Letter) -> Vec<Letter> {
        match self {
            WhiteheadAuto::Type1(p) => vec![p.apply(l)],
            WhiteheadAuto::Type2(t) => t.image(l),
        }
    }

    pub fn apply(&self, g: &Graph, w: &[Letter]) -> NormalWord {
        let out: Vec<Letter> = w.iter().flat_map(|&l| self.apply_letter(l)).collect();
        normal_form(g, &out)
    }

    pub fn to_map(&self, g: &Graph) -> EndoMap {
        EndoMap::from_images(g, (0..g.len()).map(|v| self.apply_letter(Letter::pos(v))).collect())
    }

    pub fn inverse(&self) -> WhiteheadAuto {
        match self {
            WhiteheadAuto::Type1(p) => WhiteheadAuto::Type1(p.inverse()),
            WhiteheadAuto::Type2(t) => WhiteheadAuto::Type2(t.inverse()),
        }
    }

    /// Short-range and long-range factors with `self = short · long`.
    pub fn split_long_short(&self, g: &Graph) -> (WhiteheadAuto, WhiteheadAuto) {
        let WhiteheadAuto::Type2(t) = self else {
            return (WhiteheadAuto::identity(g), self.clone());
        };
        let st = LetterSet::both(g.star_of(t.mult.vertex()));
        let short = Type2 { set: t.set.intersection(st), mult: t.mult };
        let long = Type2 { set: t.set.difference(st).with(t.mult), mult: t.mult };
        let wrap = |x: Type2| match x.validate(g) {
            Ok(_) => WhiteheadAuto::Type2(x),
            Err(_) => WhiteheadAuto::identity(g),
        };
        (wrap(short), wrap(long))
    }

    /// Literal syntax: `id`, `inv x`, `tau x y`, `wh {x, x^-1, y} y`, `perm (a b)(a^-1 b^-1)`.
    pub fn to_literal(&self, g: &Graph) -> String {
        match self {
            WhiteheadAuto::Type1(p) if p.is_identity() => "id".to_string(),
            WhiteheadAuto::Type1(p) => {
                let s = p.support();
                if s.len() == 1 && !p.images()[s.first().unwrap()].is_positive() {
                    return format!("inv {}", g.name(s.first().unwrap()));
                }
                let mut out = String::from("perm ");
                for cyc in p.cycles() {
                    let body: Vec<String> = cyc.iter().map(|&l| letter_str(g, l)).collect();
                    let _ = write!(out, "({})", body.join(" "));
                }
                out
            }
            WhiteheadAuto::Type2(t) => {
                let rest = t.set.without(t.mult);
                if rest.len() == 1 {
                    let s = rest.iter().next().unwrap();
                    format!("tau {} {}", letter_str(g, s), letter_str(g, t.mult))
                } else {
                    let body: Vec<String> = t.set.iter().map(|l| letter_str(g, l)).collect();
                    format!("wh {{{}}} {}", body.join(", "), letter_str(g, t.mult))
                }
            }
        }
    }

    pub fn parse(g: &Graph, s: &str) -> Result<WhiteheadAuto, WhiteheadError> {
        let s = s.trim();
        let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
        let rest = rest.trim();
        let letter = |t: &str| -> Result<Letter, WhiteheadError> {
            match parse_word(g, t).map_err(|e| WhiteheadError::Parse(e.to_string()))?.as_slice() {
                [l] => Ok(*l),
                _ => Err(WhiteheadError::Parse(format!("expected a single letter, got `{t}`"))),
            }
        };
        match head {
            "id" if rest.is_empty() => Ok(WhiteheadAuto::identity(g)),
            "inv" => {
                let l = letter(rest)?;
                Ok(WhiteheadAuto::inversion(g, l.vertex()))
            }
            "tau" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [x, y] = parts.as_slice() else {
                    return Err(WhiteheadError::Parse(format!("`tau` takes two letters: `{s}`")));
                };
                WhiteheadAuto::transvection(g, letter(x)?, letter(y)?)
            }
            "wh" => {
                let open = rest.find('{').ok_or_else(|| WhiteheadError::Parse(s.to_string()))?;
                let close = rest.find('}').ok_or_else(|| WhiteheadError::Parse(s.to_string()))?;
                if open != 0 || close < open {
                    return Err(WhiteheadError::Parse(s.to_string()));
                }
                let mut set = LetterSet::EMPTY;
                for t in rest[1..close].split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    set.insert(letter(t)?);
                }
                WhiteheadAuto::make_type2(g, set, letter(rest[close + 1..].trim())?)
            }
            "perm" => {
                let mut images: Vec<Option<Letter>> = vec![None; 2 * g.len()];
                let mut body = rest;
                while !body.is_empty() {
                    let close = body.find(')').filter(|_| body.starts_with('('));
                    let close = close.ok_or_else(|| WhiteheadError::Parse(s.to_string()))?;
                    let cyc: Vec<Letter> =
                        body[1..close].split_whitespace().map(letter).collect::<Result<_, _>>()?;
                    for (i, &l) in cyc.iter().enumerate() {
                        let next = cyc[(i + 1) % cyc.len()];
                        if images[l.index()].replace(next).is_some() {
                            return Err(WhiteheadError::NotPermutation);
                        }
                    }
                    body = body[close + 1..].trim_start();
                }
                let full: Vec<Letter> =
                    (0..2 * g.len()).map(|i| images[i].unwrap_or(Letter::from_index(i))).collect();
                for i in 0..2 * g.len() {
                    if full[i ^ 1] != full[i].inverse() {
                        return Err(WhiteheadError::NotInversionCompatible);
                    }
                }
                let p = SignedPerm::from_images((0..g.len()).map(|v| full[2 * v]).collect())?;
                WhiteheadAuto::type1(g, p)
            }
            _ => Err(WhiteheadError::Parse(format!("unknown automorphism `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use stk_graph::example_3_1;
    use stk_word::format_word;

    fn set(g: &Graph, s: &str) -> LetterSet {
        parse_word(g, s).unwrap().into_iter().collect()
    }

    fn l(g: &Graph, s: &str) -> Letter {
        parse_word(g, s).unwrap()[0]
    }

    #[test]
    fn validation_examples() {
        let g = example_3_1();
        let ok = WhiteheadAuto::make_type2(&g, set(&g, "i i^-1 c"), l(&g, "c")).unwrap();
        assert_eq!(format_word(&g, ok.apply(&g, &[l(&g, "i")]).letters()), "c^-1 i c");
        assert_eq!(
            WhiteheadAuto::make_type2(&g, set(&g, "a e"), l(&g, "e")),
            Err(WhiteheadError::TransvectionCondition)
        );
        assert_eq!(WhiteheadAuto::make_type2(&g, set(&g, "c c^-1"), l(&g, "c")), Err(WhiteheadError::InverseMultiplier));
        assert_eq!(WhiteheadAuto::make_type2(&g, set(&g, "i"), l(&g, "c")), Err(WhiteheadError::MultiplierMissing));
        assert_eq!(WhiteheadAuto::make_type2(&g, set(&g, "c"), l(&g, "c")), Err(WhiteheadError::Trivial));
        assert_eq!(
            WhiteheadAuto::make_type2(&g, set(&g, "e e^-1 c"), l(&g, "c")),
            Err(WhiteheadError::NotComponentUnion)
        );
    }

    #[test]
    fn transvection_action() {
        let g = example_3_1();
        let t = WhiteheadAuto::transvection(&g, l(&g, "f"), l(&g, "d")).unwrap();
        assert_eq!(format_word(&g, t.apply(&g, &[l(&g, "f")]).letters()), "d f");
        let inv = WhiteheadAuto::parse(&g, "tau f d").unwrap().inverse();
        assert_eq!(inv, WhiteheadAuto::parse(&g, "tau f d^-1").unwrap());
        let i = WhiteheadAuto::inversion(&g, 0);
        assert_eq!(i.inverse(), i);
    }

    #[test]
    fn literals_round_trip() {
        let g = example_3_1();
        for s in ["inv a", "tau i c", "tau i^-1 c^-1", "wh {c, i, i^-1} c", "perm (a b)(a^-1 b^-1)", "id", "perm (a b^-1 a^-1 b)"] {
            let a = WhiteheadAuto::parse(&g, s).unwrap();
            assert_eq!(a.to_literal(&g), s);
        }
        assert!(WhiteheadAuto::parse(&g, "perm (a c)(a^-1 c^-1)").is_err());
        assert!(WhiteheadAuto::parse(&g, "perm (a b^-1)").is_err());
    }

    #[test]
    fn remark_2_4_equality() {
        let g = example_3_1();
        let lhs = WhiteheadAuto::parse(&g, "wh {i, i^-1, c} c").unwrap().to_map(&g);
        let rhs = WhiteheadAuto::parse(&g, "tau i c")
            .unwrap()
            .to_map(&g)
            .then(&g, &WhiteheadAuto::parse(&g, "tau i^-1 c").unwrap().to_map(&g));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn split_recomposes() {
        let g = example_3_1();
        let phi = WhiteheadAuto::parse(&g, "wh {d, e, i, i^-1} d").unwrap();
        let (s, lr) = phi.split_long_short(&g);
        assert!(!s.is_identity() && !lr.is_identity());
        assert_eq!(s.to_map(&g).then(&g, &lr.to_map(&g)), phi.to_map(&g));
        let long = WhiteheadAuto::parse(&g, "tau i c").unwrap();
        assert_eq!(long.split_long_short(&g), (WhiteheadAuto::identity(&g), long.clone()));
        let short = WhiteheadAuto::parse(&g, "tau e d").unwrap();
        assert_eq!(short.split_long_short(&g), (short.clone(), WhiteheadAuto::identity(&g)));
    }
}
