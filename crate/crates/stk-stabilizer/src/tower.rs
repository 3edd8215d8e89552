use stk_graph::{Graph, Lattice, VertexSet};
use stk_whitehead::EndoMap;
use stk_word::{Letter, NormalWord};

use crate::automorphism::{support_violation, Automorphism};
use crate::express::express_in_omega_x;
use crate::free::{free_case_split, short_map};
use crate::matrix::{from_matrix, to_matrix};
use crate::omega::OmegaSystem;
use crate::presentation::Presentation;
use crate::StabError;

fn restrict(g: &Graph, m: &EndoMap, keep: VertexSet) -> EndoMap {
    let mut out = EndoMap::identity(g);
    for v in keep {
        out.set_image(v, m.image(v).clone());
    }
    out
}

/// s_k(φ): agrees with φ on 𝔄(k) and fixes everything else.
pub fn level_restriction(g: &Graph, lat: &Lattice, m: &EndoMap, k: usize) -> EndoMap {
    restrict(g, m, lat.cumulative[k])
}

/// φ_y: agrees with φ on [y] and fixes everything else.
pub fn class_restriction(g: &Graph, lat: &Lattice, m: &EndoMap, y: usize) -> EndoMap {
    restrict(g, m, lat.class(y))
}

/// A factor φ_y of θ_k for one class representative y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFactor {
    pub level: usize,
    pub rep: usize,
    pub auto: Automorphism,
}

/// φ = θ_h ⋯ θ_0, each θ_k a commuting product of class factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerFactorization {
    /// Highest level first.
    pub factors: Vec<ClassFactor>,
}

impl TowerFactorization {
    pub fn recompose(&self, g: &Graph) -> Automorphism {
        self.factors.iter().fold(Automorphism::identity(g), |acc, f| acc.then(g, &f.auto))
    }

    pub fn theta(&self, g: &Graph, k: usize) -> Automorphism {
        self.factors.iter().filter(|f| f.level == k).fold(Automorphism::identity(g), |acc, f| acc.then(g, &f.auto))
    }
}

/// Tower factorisation of φ ∈ St(𝒦).
pub fn tower_factorize(g: &Graph, lat: &Lattice, phi: &Automorphism) -> Result<TowerFactorization, StabError> {
    if let Some(x) = support_violation(g, &phi.fwd).or_else(|| support_violation(g, &phi.inv)) {
        return Err(StabError::NotInStK(g.name(x).to_string()));
    }
    let mut factors = Vec::new();
    for k in (0..=lat.max_height).rev() {
        let sk = Automorphism {
            fwd: level_restriction(g, lat, &phi.fwd, k),
            inv: level_restriction(g, lat, &phi.inv, k),
        };
        let theta = match k {
            0 => sk,
            _ => {
                let prev = Automorphism {
                    fwd: level_restriction(g, lat, &phi.fwd, k - 1),
                    inv: level_restriction(g, lat, &phi.inv, k - 1),
                };
                sk.then(g, &prev.inverse())
            }
        };
        for &y in &lat.transversal[k] {
            let auto = Automorphism {
                fwd: class_restriction(g, lat, &theta.fwd, y),
                inv: class_restriction(g, lat, &theta.inv, y),
            };
            if !auto.is_identity() {
                factors.push(ClassFactor { level: k, rep: y, auto });
            }
        }
    }
    Ok(TowerFactorization { factors })
}

/// Inverse of a class factor φ_y ∈ St^v_y.
pub fn invert_class(g: &Graph, y: usize, m: &EndoMap, depth: usize) -> Result<EndoMap, StabError> {
    let part = g.class_partition(y);
    if part.abelian {
        let mat = to_matrix(g, y, m)?;
        let s = part.class.len();
        if mat.block(0, s, 0, s).det().abs() != 1 {
            return Err(StabError::NotInvertible);
        }
        return from_matrix(g, y, &mat.inverse_unimodular()?);
    }
    let (exps, phi0) = free_case_split(g, y, m)?;
    let omega = OmegaSystem::new(g, y)?;
    let word = express_in_omega_x(g, &omega, &phi0, depth)?;
    let maps: Vec<(EndoMap, EndoMap)> = omega.maps.iter().zip(&omega.inverse_of).map(|(f, &i)| (f.clone(), omega.maps[i].clone())).collect();
    let inv0 = Presentation::evaluate(g, &maps, &crate::presentation::invert_word(&word));
    let neg: Vec<_> = exps.iter().map(|&(v, s, e)| (v, s, -e)).collect();
    Ok(inv0.then(g, &short_map(g, &neg)))
}

/// Inverse of an endomorphism in St(𝒦), built up one level at a time.
pub fn invert(g: &Graph, lat: &Lattice, fwd: &EndoMap, depth: usize) -> Result<Automorphism, StabError> {
    if let Some(x) = support_violation(g, fwd) {
        return Err(StabError::NotInStK(g.name(x).to_string()));
    }
    let mut inv_prev = EndoMap::identity(g);
    for k in 0..=lat.max_height {
        let theta = level_restriction(g, lat, fwd, k).then(g, &inv_prev);
        let mut theta_inv = EndoMap::identity(g);
        for &y in &lat.transversal[k] {
            let part = class_restriction(g, lat, &theta, y);
            let fixes = lat.class(y).iter().all(|v| part.image(v).letters() == [Letter::pos(v)]);
            if fixes {
                continue;
            }
            let inv = invert_class(g, y, &part, depth)?;
            for v in lat.class(y) {
                theta_inv.set_image(v, inv.image(v).clone());
            }
        }
        inv_prev = inv_prev.then(g, &theta_inv);
    }
    if !fwd.then(g, &inv_prev).is_identity() || !inv_prev.then(g, fwd).is_identity() {
        return Err(StabError::NotInvertible);
    }
    Ok(Automorphism { fwd: fwd.clone(), inv: inv_prev })
}

/// Images as printable pairs, used by callers that report factors.
pub fn describe(g: &Graph, a: &Automorphism) -> Vec<(String, String)> {
    a.fwd
        .describe(g)
        .into_iter()
        .enumerate()
        .filter(|(v, _)| a.fwd.image(*v) != &NormalWord::letter(Letter::pos(*v)))
        .map(|(_, p)| p)
        .collect()
}
