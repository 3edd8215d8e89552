use std::collections::{HashMap, VecDeque};

use stk_graph::Graph;
use stk_whitehead::{EndoMap, WhiteheadAuto};
use stk_word::Letter;

use crate::omega::OmegaSystem;
use crate::presentation::{invert_word, GenWord};
use crate::StabError;

/// States visited by one lookahead search before giving up.
const LOOKAHEAD_BUDGET: usize = 200_000;

fn weight(m: &EndoMap, class: &[usize]) -> usize {
    class.iter().map(|&v| m.image(v).len()).sum()
}

/// Writes φ₀ ∈ St_{x,l} as a word in Ω_x by descent on Σ|x_i φ₀|.
///
/// A greedy step is tried first; when none shortens, sequences of up to
/// `depth` steps are searched breadth first.
pub fn express_in_omega_x(g: &Graph, omega: &OmegaSystem, phi0: &EndoMap, depth: usize) -> Result<GenWord, StabError> {
    let class: Vec<usize> = g.class_partition(omega.rep).class.iter().collect();
    let mut cur = phi0.clone();
    let mut path: GenWord = Vec::new();
    loop {
        if class.iter().any(|&v| cur.image(v).is_empty()) {
            return Err(StabError::NotInvertible);
        }
        let w = weight(&cur, &class);
        if w == class.len() {
            return finish(g, omega, &cur, path);
        }
        let best = (0..omega.len())
            .map(|i| (weight(&cur.then(g, &omega.maps[i]), &class), i))
            .min()
            .expect("Ω_x is non-empty");
        if best.0 < w {
            cur = cur.then(g, &omega.maps[best.1]);
            path.push((best.1, 1));
            continue;
        }
        let steps = lookahead(g, omega, &cur, &class, w, depth)?;
        for i in steps {
            cur = cur.then(g, &omega.maps[i]);
            path.push((i, 1));
        }
    }
}

fn lookahead(
    g: &Graph,
    omega: &OmegaSystem,
    start: &EndoMap,
    class: &[usize],
    w: usize,
    depth: usize,
) -> Result<Vec<usize>, StabError> {
    let mut parent: HashMap<EndoMap, (EndoMap, usize)> = HashMap::new();
    let mut queue: VecDeque<(EndoMap, usize)> = VecDeque::from([(start.clone(), 0)]);
    let slack = 2 * class.len() + 2;
    while let Some((m, d)) = queue.pop_front() {
        if d >= depth {
            continue;
        }
        for i in 0..omega.len() {
            let next = m.then(g, &omega.maps[i]);
            if next == *start || parent.contains_key(&next) {
                continue;
            }
            let nw = weight(&next, class);
            if nw > w + slack {
                continue;
            }
            parent.insert(next.clone(), (m.clone(), i));
            if nw < w {
                let mut steps = Vec::new();
                let mut at = next;
                while at != *start {
                    let (p, i) = parent[&at].clone();
                    steps.push(i);
                    at = p;
                }
                steps.reverse();
                return Ok(steps);
            }
            if parent.len() > LOOKAHEAD_BUDGET {
                return Err(StabError::SearchBound { depth });
            }
            queue.push_back((next, d + 1));
        }
    }
    Err(StabError::SearchBound { depth })
}

/// φ₀ ω₁⋯ω_k = π gives φ₀ = π ω_k⁻¹⋯ω₁⁻¹.
fn finish(g: &Graph, omega: &OmegaSystem, residual: &EndoMap, path: GenWord) -> Result<GenWord, StabError> {
    let mut out = Vec::new();
    if !residual.is_identity() {
        let perm = residual.images().iter().map(|w| w.letters()[0]).collect::<Vec<Letter>>();
        let p = stk_whitehead::SignedPerm::from_images(perm).map_err(|_| StabError::NotInvertible)?;
        let i = omega.lookup(g, &WhiteheadAuto::Type1(p)).ok_or(StabError::NotInvertible)?;
        out.push((i, 1));
    }
    out.extend(invert_word(&path));
    Ok(out)
}
