use stk_graph::{Graph, Lattice};
use stk_whitehead::{EndoMap, WhiteheadAuto};

use crate::StabError;

/// An automorphism stored with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub fwd: EndoMap,
    pub inv: EndoMap,
}

impl Automorphism {
    pub fn identity(g: &Graph) -> Automorphism {
        Automorphism { fwd: EndoMap::identity(g), inv: EndoMap::identity(g) }
    }

    pub fn from_whitehead(g: &Graph, w: &WhiteheadAuto) -> Automorphism {
        Automorphism { fwd: w.to_map(g), inv: w.inverse().to_map(g) }
    }

    /// Checks that `inv` is a two-sided inverse of `fwd`.
    pub fn new(g: &Graph, fwd: EndoMap, inv: EndoMap) -> Result<Automorphism, StabError> {
        if !fwd.respects_edges(g) || !inv.respects_edges(g) {
            return Err(StabError::NotHomomorphism);
        }
        if !fwd.then(g, &inv).is_identity() || !inv.then(g, &fwd).is_identity() {
            return Err(StabError::NotInvertible);
        }
        Ok(Automorphism { fwd, inv })
    }

    pub fn then(&self, g: &Graph, o: &Automorphism) -> Automorphism {
        Automorphism { fwd: self.fwd.then(g, &o.fwd), inv: o.inv.then(g, &self.inv) }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism { fwd: self.inv.clone(), inv: self.fwd.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.fwd.is_identity()
    }

    pub fn product(g: &Graph, fs: &[(WhiteheadAuto, i32)]) -> Automorphism {
        fs.iter().fold(Automorphism::identity(g), |acc, (w, e)| {
            let a = Automorphism::from_whitehead(g, w);
            acc.then(g, &if *e < 0 { a.inverse() } else { a })
        })
    }
}

/// First vertex x with Supp(xφ) ⊄ 𝔞(x).
pub fn support_violation(g: &Graph, m: &EndoMap) -> Option<usize> {
    (0..g.len()).find(|&x| !m.image(x).support().is_subset(g.admissible(x)))
}

/// Membership in St(𝒦). Without a supplied inverse one is computed level by level.
pub fn is_in_st_k(
    g: &Graph,
    lat: &Lattice,
    fwd: &EndoMap,
    inv: Option<&EndoMap>,
    depth: usize,
) -> Result<bool, StabError> {
    if !fwd.respects_edges(g) {
        return Err(StabError::NotHomomorphism);
    }
    if support_violation(g, fwd).is_some() {
        return Ok(false);
    }
    let inv = match inv {
        Some(i) => i.clone(),
        None => match crate::tower::invert(g, lat, fwd, depth) {
            Ok(a) => a.inv,
            Err(StabError::NotInvertible) => return Ok(false),
            Err(e) => return Err(e),
        },
    };
    if !fwd.then(g, &inv).is_identity() || !inv.then(g, fwd).is_identity() {
        return Ok(false);
    }
    Ok(support_violation(g, &inv).is_none())
}
