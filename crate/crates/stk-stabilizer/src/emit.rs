use std::collections::HashMap;
use std::ops::Range;

use stk_graph::{Graph, Lattice};
use stk_whitehead::par::{self, Strategy};
use stk_whitehead::{EndoMap, WhiteheadAuto};
use stk_word::Letter;

use crate::free::{free_case_split, short_generators};
use crate::gl::{gl_presentation, GlLayout};
use crate::matrix::to_matrix;
use crate::omega::{build_rx, symbol, OmegaSystem};
use crate::presentation::{invert_word, GenWord, Generator, Presentation, Relator};
use crate::tietze::{tietze_reduce, Reduced};
use crate::tower::class_restriction;
use crate::{express_in_omega_x, StabError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub keep_perms: bool,
    pub depth: usize,
    pub strategy: Strategy,
}

impl Default for Config {
    fn default() -> Self {
        Config { keep_perms: true, depth: 8, strategy: Strategy::default() }
    }
}

#[derive(Clone, Debug)]
pub enum BlockKind {
    Abelian(GlLayout),
    Free {
        omega: OmegaSystem,
        reduced: Reduced,
        /// (class vertex, 𝔞_s vertex) to local index of τ_{v,s}.
        short: HashMap<(usize, usize), usize>,
    },
}

/// Generators of one class, occupying `range` in the global list.
#[derive(Clone, Debug)]
pub struct ClassBlock {
    pub rep: usize,
    pub level: usize,
    pub range: Range<usize>,
    pub kind: BlockKind,
}

#[derive(Clone, Debug)]
pub struct StabilizerPresentation {
    pub pres: Presentation,
    pub blocks: Vec<ClassBlock>,
}

/// Local presentation of St^v_y and its block data.
fn class_block(g: &Graph, y: usize, cfg: &Config) -> Result<(Presentation, BlockKind), StabError> {
    let part = g.class_partition(y);
    if part.abelian {
        let (p, layout) = gl_presentation(g, y)?;
        return Ok((p, BlockKind::Abelian(layout)));
    }
    let rx = build_rx(g, y, cfg.strategy)?;
    let reduced = tietze_reduce(g, &rx, cfg.keep_perms, cfg.strategy)?;
    let omega = rx.omega;
    let mut pres = reduced.pres.clone();
    let base = pres.generators.len();
    let mut short = HashMap::new();
    for t in short_generators(g, y) {
        let tt = t.as_type2().expect("transvection");
        let s = tt.mult.vertex();
        let v = tt.set.without(tt.mult).iter().next().expect("one letter").vertex();
        short.insert((v, s), pres.generators.len());
        pres.generators.push(Generator { symbol: symbol(g, &t, y), auto: t });
    }
    let zs: Vec<usize> = (base..pres.generators.len()).collect();
    for (a, &za) in zs.iter().enumerate() {
        for &zb in &zs[a + 1..] {
            pres.relators.push(Relator { word: vec![(za, 1), (zb, 1), (za, -1), (zb, -1)], provenance: "Z".into() });
        }
    }
    let maps = pres.maps(g);
    for u in 0..base {
        for &z in &zs {
            let m = Presentation::evaluate(g, &maps, &[(u, -1), (z, 1), (u, 1)]);
            let (exps, rest) = free_case_split(g, y, &m)?;
            if !rest.is_identity() {
                return Err(StabError::RelatorFailed(format!("{} does not normalise the short part", pres.generators[u].symbol)));
            }
            let mut word = vec![(u, -1), (z, 1), (u, 1)];
            let w: GenWord = exps.iter().flat_map(|&(v, s, e)| vec![(short[&(v, s)], e.signum() as i32); e.unsigned_abs() as usize]).collect();
            word.extend(invert_word(&w));
            pres.relators.push(Relator { word, provenance: "action".into() });
        }
    }
    pres.normalize_involutions(g);
    Ok((pres, BlockKind::Free { omega, reduced, short }))
}

/// A class factor φ_y ∈ St^v_y as a word in the block's generators (global indices).
pub fn express_class(g: &Graph, block: &ClassBlock, m: &EndoMap, depth: usize) -> Result<GenWord, StabError> {
    let off = block.range.start;
    let local = match &block.kind {
        BlockKind::Abelian(layout) => layout.matrix_word(&to_matrix(g, block.rep, m)?)?,
        BlockKind::Free { omega, reduced, short } => {
            let (exps, phi0) = free_case_split(g, block.rep, m)?;
            let mut w: GenWord = exps
                .iter()
                .flat_map(|&(v, s, e)| vec![(short[&(v, s)], e.signum() as i32); e.unsigned_abs() as usize])
                .collect();
            let ow = if phi0.is_identity() { Vec::new() } else { express_in_omega_x(g, omega, &phi0, depth)? };
            for (i, e) in ow {
                let piece = &reduced.expr[i];
                w.extend(if e > 0 { piece.clone() } else { invert_word(piece) });
            }
            w
        }
    };
    Ok(local.into_iter().map(|(k, e)| (k + off, e)).collect())
}

/// Finite presentation of St(𝒦) built up the tower.
pub fn emit_presentation(g: &Graph, lat: &Lattice, cfg: &Config) -> Result<StabilizerPresentation, StabError> {
    let mut gens: Vec<Generator> = Vec::new();
    let mut rels: Vec<Relator> = Vec::new();
    let mut blocks: Vec<ClassBlock> = Vec::new();
    for k in 0..=lat.max_height {
        for &y in &lat.transversal[k] {
            let (p, kind) = class_block(g, y, cfg)?;
            let off = gens.len();
            gens.extend(p.generators);
            rels.extend(p.relators.into_iter().map(|r| Relator {
                word: r.word.into_iter().map(|(i, e)| (i + off, e)).collect(),
                provenance: r.provenance,
            }));
            blocks.push(ClassBlock { rep: y, level: k, range: off..gens.len(), kind });
        }
    }
    for (a, ba) in blocks.iter().enumerate() {
        for bb in blocks[a + 1..].iter().filter(|b| b.level == ba.level) {
            for u in ba.range.clone() {
                for v in bb.range.clone() {
                    rels.push(Relator { word: vec![(u, 1), (v, 1), (u, -1), (v, -1)], provenance: "level".into() });
                }
            }
        }
    }
    let maps: Vec<(EndoMap, EndoMap)> = gens.iter().map(|x| (x.auto.to_map(g), x.auto.inverse().to_map(g))).collect();
    let mut jobs: Vec<(usize, usize, usize)> = Vec::new();
    for (bi, upper) in blocks.iter().enumerate() {
        for lower in blocks.iter().filter(|b| b.level < upper.level) {
            for u in upper.range.clone() {
                for gl in lower.range.clone() {
                    jobs.push((bi, u, gl));
                }
            }
        }
    }
    let results = par::map(cfg.strategy, &jobs, |&(bi, u, gl)| -> Result<Relator, StabError> {
        let level = blocks[bi].level;
        let m = maps[gl].1.then(g, &maps[u].0).then(g, &maps[gl].0);
        let mut w: GenWord = Vec::new();
        for b in blocks.iter().filter(|b| b.level == level) {
            let part = class_restriction(g, lat, &m, b.rep);
            if b_fixes(&part, lat, b.rep) {
                continue;
            }
            w.extend(express_class(g, b, &part, cfg.depth)?);
        }
        let mut word = vec![(gl, -1), (u, 1), (gl, 1)];
        word.extend(invert_word(&w));
        Ok(Relator { word, provenance: "tower".into() })
    });
    for r in results {
        rels.push(r?);
    }
    let mut pres = Presentation { generators: gens, relators: rels };
    pres.normalize_involutions(g);
    if let Some(bad) = pres.first_failure(g, cfg.strategy) {
        return Err(StabError::RelatorFailed(pres.word_string(&pres.relators[bad].word)));
    }
    Ok(StabilizerPresentation { pres, blocks })
}

fn b_fixes(m: &EndoMap, lat: &Lattice, rep: usize) -> bool {
    lat.class(rep).iter().all(|v| m.image(v).letters() == [Letter::pos(v)])
}

impl StabilizerPresentation {
    /// Writes φ ∈ St(𝒦) in the generators through its tower factorisation.
    pub fn express(&self, g: &Graph, lat: &Lattice, phi: &crate::Automorphism, depth: usize) -> Result<GenWord, StabError> {
        let t = crate::tower_factorize(g, lat, phi)?;
        let mut w = Vec::new();
        for f in &t.factors {
            let b = self.blocks.iter().find(|b| b.rep == f.rep).expect("block per class");
            w.extend(express_class(g, b, &f.auto.fwd, depth)?);
        }
        Ok(w)
    }

    pub fn generator_autos(&self) -> Vec<WhiteheadAuto> {
        self.pres.generators.iter().map(|g| g.auto.clone()).collect()
    }
}
