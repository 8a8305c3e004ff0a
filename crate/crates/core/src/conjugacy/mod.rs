//! Partial conjugation by a parabolic subgroup `W_J`.
//!
//! Everything here is built from the single-generator moves `w ↦ s·w·δ(s)`
//! with `s ∈ J` and `δ` an optional diagram automorphism of `J`.

mod chains;
mod decompose;
mod dot;
mod orbit;

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::element::{Element, GeneratorSet};
use crate::error::{Error, Result};
use crate::system::CoxeterSystem;

pub use chains::{
    default_search_cap, reduce_to_max, reduce_to_min, strongly_conjugate, u_plus, MaxChain, StrongMode,
    StrongMove, UPlus,
};
pub use decompose::{
    partial_decomposition, twisted_class_size_check, Coverage, Decomposition, DecompositionPiece,
};
pub use dot::shift_graph_dot;
pub use orbit::{decide_finite, Certificate, ComponentVerdict, PartialClassReport, Verdict};

/// `source --s--> target` with `target = s·source·δ(s)` and `ℓ(target) ≤ ℓ(source)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ShiftArrow {
    pub source: Element,
    pub target: Element,
    pub generator: u8,
}

/// A permutation of `J` preserving the Coxeter matrix restricted to `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    map: BTreeMap<u8, u8>,
}

impl Twist {
    pub fn identity(j: &GeneratorSet) -> Self {
        Twist { map: j.iter().map(|s| (s, s)).collect() }
    }

    /// Builds `δ` from `(s, δ(s))` pairs covering `J`.
    pub fn new(sys: &CoxeterSystem, j: &GeneratorSet, pairs: &[(u8, u8)]) -> Result<Self> {
        let map: BTreeMap<u8, u8> = pairs.iter().copied().collect();
        let keys: GeneratorSet = map.keys().copied().collect();
        let values: GeneratorSet = map.values().copied().collect();
        if map.len() != pairs.len() || &keys != j || &values != j {
            return Err(Error::InvalidTwist("not a permutation of J".into()));
        }
        for (&a, &da) in &map {
            for (&b, &db) in &map {
                if sys.matrix().raw(a.into(), b.into()) != sys.matrix().raw(da.into(), db.into()) {
                    return Err(Error::InvalidTwist(format!("m({a},{b}) is not preserved")));
                }
            }
        }
        Ok(Twist { map })
    }

    pub fn apply(&self, s: u8) -> u8 {
        self.map.get(&s).copied().unwrap_or(s)
    }
}

/// `s·w·δ(s)`.
pub(crate) fn twisted_move(sys: &CoxeterSystem, s: u8, w: &Element, twist: Option<&Twist>) -> Element {
    let ds = twist.map_or(s, |t| t.apply(s));
    sys.lmul_gen(s, &sys.rmul_gen(w, ds))
}

/// Non-trivial shifts out of `w`, ascending in `s`.
pub fn shift_neighbors(sys: &CoxeterSystem, j: &GeneratorSet, w: &Element, twist: Option<&Twist>) -> Vec<ShiftArrow> {
    j.iter()
        .filter_map(|s| {
            let t = twisted_move(sys, s, w, twist);
            (t.len() <= w.len() && &t != w).then(|| ShiftArrow { source: w.clone(), target: t, generator: s })
        })
        .collect()
}

/// The `≈_J`-class of `w` with a BFS parent tree: `parent[x] = (y, s)` means
/// `y --s--> x` at equal length.
pub(crate) struct ShiftClass {
    pub members: Vec<Element>,
    pub parent: BTreeMap<Element, (Element, u8)>,
}

impl ShiftClass {
    /// Arrows from the root to `x`.
    pub fn path_to(&self, x: &Element) -> Vec<ShiftArrow> {
        let mut out = Vec::new();
        let mut cur = x.clone();
        while let Some((p, s)) = self.parent.get(&cur) {
            out.push(ShiftArrow { source: p.clone(), target: cur.clone(), generator: *s });
            cur = p.clone();
        }
        out.reverse();
        out
    }
}

pub(crate) fn explore_shift_class(
    sys: &CoxeterSystem,
    j: &GeneratorSet,
    w: &Element,
    twist: Option<&Twist>,
    budget: usize,
) -> Result<ShiftClass> {
    let mut parent = BTreeMap::new();
    let mut members = vec![w.clone()];
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        for s in j.iter() {
            let y = twisted_move(sys, s, &x, twist);
            if y.len() == x.len() && &y != w && !parent.contains_key(&y) {
                parent.insert(y.clone(), (x.clone(), s));
                members.push(y.clone());
                queue.push_back(y);
                if members.len() > budget {
                    return Err(Error::ResourceLimit { phase: "shift class".into(), budget });
                }
            }
        }
    }
    members.sort();
    Ok(ShiftClass { members, parent })
}

/// The cyclic shift class `{ w' : w ≈_J w' }`, ShortLex-sorted.
pub fn cyclic_shift_class(
    sys: &CoxeterSystem,
    j: &GeneratorSet,
    w: &Element,
    twist: Option<&Twist>,
    budget: usize,
) -> Result<Vec<Element>> {
    Ok(explore_shift_class(sys, j, w, twist, budget)?.members)
}
