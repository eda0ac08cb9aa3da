//! Star graphs with `N` unit legs and one leg of weight `w` to the purifier.
//! The min-cut isolating an `l`-party subsystem is `min{l, N-1-l+w}`; cutting
//! from the complement side gives `min{N-l, w+l-1}`.

use crate::{binom, symmetrized_entropy, DickeError, DickeSpec};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `min{l, N-1-l+w}`
    Subsystem,
    /// `min{N-l, w+l-1}`
    Complement,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarGraph {
    pub legs: usize,
    pub weight: f64,
    pub side: Side,
    /// Multiplier of this graph's cut in the sum.
    pub coefficient: f64,
    /// Index `i` of the closed-form term the graph realizes.
    pub term: usize,
}

impl StarGraph {
    pub fn min_cut(&self, ell: usize) -> f64 {
        let (n, l) = (self.legs as f64, ell as f64);
        match self.side {
            Side::Subsystem => l.min(n - 1.0 - l + self.weight),
            Side::Complement => (n - l).min(self.weight + l - 1.0),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StarRealization {
    pub spec: DickeSpec,
    pub ell: usize,
    pub graphs: Vec<StarGraph>,
    /// Weighted sum of min-cuts.
    pub value: f64,
    /// The symmetrized entropy it should reproduce.
    pub target: f64,
}

/// One graph per nonzero term `-p_i ln p_i` of the closed form, with the
/// weight solved so that the graph's min-cut equals `-ln p_i`. Term 0 cuts
/// from the subsystem side and later terms from the complement side, which
/// gives the two W-state graphs for `k = 1`; a term switches side when its
/// value exceeds that side's cap.
pub fn star_realization(spec: DickeSpec, ell: usize) -> Result<StarRealization, DickeError> {
    let n = spec.n;
    if ell == 0 || ell > n.div_ceil(2) || ell >= n {
        return Err(DickeError::Ell { n, ell });
    }
    let total = binom(n, spec.k) as f64;
    let mut graphs = Vec::new();
    for (i, &c) in spec.counts(ell).iter().enumerate() {
        if c == 0 {
            continue;
        }
        let p = c as f64 / total;
        let v = -p.ln();
        let (l, nn) = (ell as f64, n as f64);
        let preferred = if i == 0 { Side::Subsystem } else { Side::Complement };
        let fits = |side| match side {
            Side::Subsystem => v <= l,
            Side::Complement => v <= nn - l,
        };
        let side = match preferred {
            s if fits(s) => s,
            Side::Subsystem if fits(Side::Complement) => Side::Complement,
            Side::Complement if fits(Side::Subsystem) => Side::Subsystem,
            _ => return Err(DickeError::Unrealizable { term: i, value: v }),
        };
        let weight = match side {
            Side::Subsystem => v - (nn - 1.0 - l),
            Side::Complement => v - l + 1.0,
        };
        graphs.push(StarGraph { legs: n, weight, side, coefficient: p, term: i });
    }
    let value = graphs.iter().map(|g| g.coefficient * g.min_cut(ell)).sum();
    Ok(StarRealization { spec, ell, graphs, value, target: symmetrized_entropy(spec, ell)? })
}

