//! Shift chains: `U_J^+`, descent to minimal length, ascent to maximal
//! length, and strong conjugation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::orbit::decide_finite;
use super::{explore_shift_class, twisted_move, ShiftArrow, Twist};
use crate::element::{Element, GeneratorSet};
use crate::error::{Error, Result};
use crate::system::CoxeterSystem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UPlus {
    pub elements: Vec<Element>,
    /// True when no element of `U_J^+(w)` lies beyond the length cap.
    pub saturated: bool,
}

/// Elements of length `≤ length_cap` that shift down to `w`.
pub fn u_plus(sys: &CoxeterSystem, j: &GeneratorSet, w: &Element, length_cap: usize, budget: usize) -> Result<UPlus> {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    let mut saturated = w.len() <= length_cap;
    while let Some(x) = queue.pop_front() {
        for s in j.iter() {
            let y = sys.conjugate_gen(s, &x);
            if y.len() < x.len() {
                continue;
            }
            if y.len() > length_cap {
                saturated = false;
                continue;
            }
            if seen.insert(y.clone()) {
                if seen.len() > budget {
                    return Err(Error::ResourceLimit { phase: "u_plus".into(), budget });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(UPlus { elements: seen.into_iter().collect(), saturated })
}

/// Shifts `w` down to a minimal-length element of its (twisted) class.
///
/// At each stage the `≈_J`-class of the current element is explored and the
/// first member, in ShortLex order, with a strictly decreasing shift is used.
pub fn reduce_to_min(
    sys: &CoxeterSystem,
    j: &GeneratorSet,
    w: &Element,
    twist: Option<&Twist>,
    budget: usize,
) -> Result<Vec<ShiftArrow>> {
    let mut chain = Vec::new();
    let mut cur = w.clone();
    'outer: loop {
        let class = explore_shift_class(sys, j, &cur, twist, budget)?;
        for x in &class.members {
            for s in j.iter() {
                let y = twisted_move(sys, s, x, twist);
                if y.len() < x.len() {
                    chain.extend(class.path_to(x));
                    chain.push(ShiftArrow { source: x.clone(), target: y.clone(), generator: s });
                    cur = y;
                    continue 'outer;
                }
            }
        }
        return Ok(chain);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "arrows", rename_all = "lowercase")]
pub enum MaxChain {
    /// Arrows `u1 → u0, u2 → u1, …, uk → u(k-1)` with `u0 = w` and `uk` of maximal length.
    Chain(Vec<ShiftArrow>),
    Infinite,
}

/// Ascends from `w` to a maximal-length element of its `W_J`-orbit.
pub fn reduce_to_max(sys: &CoxeterSystem, j: &GeneratorSet, w: &Element, budget: usize) -> Result<MaxChain> {
    let report = decide_finite(sys, j, w, budget)?;
    let Some(top) = report.max_elements.first().map(Element::len) else {
        return Ok(MaxChain::Infinite);
    };
    let mut parent: BTreeMap<Element, (Element, u8)> = BTreeMap::new();
    let mut queue = VecDeque::from([w.clone()]);
    let mut found = (w.len() == top).then(|| w.clone());
    while found.is_none() {
        let Some(x) = queue.pop_front() else { break };
        for s in j.iter() {
            let y = sys.conjugate_gen(s, &x);
            if y.len() < x.len() || &y == w || parent.contains_key(&y) {
                continue;
            }
            parent.insert(y.clone(), (x.clone(), s));
            if y.len() == top {
                found = Some(y);
                break;
            }
            queue.push_back(y);
        }
    }
    let Some(end) = found else {
        return Err(Error::NoAscendingChain(w.word().to_vec()));
    };
    let mut arrows = Vec::new();
    let mut cur = end;
    while let Some((p, s)) = parent.get(&cur) {
        arrows.push(ShiftArrow { source: cur.clone(), target: p.clone(), generator: *s });
        cur = p.clone();
    }
    arrows.reverse();
    Ok(MaxChain::Chain(arrows))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrongMode {
    /// `ℓ(xw) = ℓ(x) + ℓ(w)` or `ℓ(wx⁻¹) = ℓ(x) + ℓ(w)`.
    Min,
    /// `ℓ(xw) = ℓ(w) − ℓ(x)` or `ℓ(wx⁻¹) = ℓ(w) − ℓ(x)`.
    Max,
}

/// One elementary step `to = x·from·x⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongMove {
    pub from: Element,
    pub to: Element,
    pub x: Element,
}

/// `ℓ(w0(J))` for spherical `J`, else 8.
pub fn default_search_cap(sys: &CoxeterSystem, j: &GeneratorSet) -> usize {
    sys.longest_element(j).map_or(8, |w0| w0.len())
}

/// Connects `u` to `v` by elementary strong conjugations with `x ∈ W_J`,
/// `ℓ(x) ≤ search_cap`. `Ok(None)` when no connection exists within the cap.
pub fn strongly_conjugate(
    sys: &CoxeterSystem,
    j: &GeneratorSet,
    u: &Element,
    v: &Element,
    mode: StrongMode,
    search_cap: Option<usize>,
    budget: usize,
) -> Result<Option<Vec<StrongMove>>> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    let cap = search_cap.unwrap_or_else(|| default_search_cap(sys, j));
    let xs: Vec<(Element, Element)> = sys
        .parabolic_ball(j, cap, budget)?
        .into_iter()
        .skip(1)
        .map(|x| {
            let inv = sys.inverse(&x);
            (x, inv)
        })
        .collect();
    let admissible = |w: &Element, x: &Element, x_inv: &Element| {
        let (lxw, lwx) = (sys.multiply(x, w).len(), sys.multiply(w, x_inv).len());
        match mode {
            StrongMode::Min => lxw == x.len() + w.len() || lwx == x.len() + w.len(),
            StrongMode::Max => lxw + x.len() == w.len() || lwx + x.len() == w.len(),
        }
    };

    let mut parent: BTreeMap<Element, (Element, Element)> = BTreeMap::new();
    let mut queue = VecDeque::from([u.clone()]);
    let mut reached = u == v;
    while !reached {
        let Some(w) = queue.pop_front() else { break };
        for (x, x_inv) in &xs {
            if !admissible(&w, x, x_inv) {
                continue;
            }
            let y = sys.multiply(&sys.multiply(x, &w), x_inv);
            if y.len() != w.len() || &y == u || parent.contains_key(&y) {
                continue;
            }
            parent.insert(y.clone(), (w.clone(), x.clone()));
            if parent.len() > budget {
                return Err(Error::ResourceLimit { phase: "strong conjugation".into(), budget });
            }
            if &y == v {
                reached = true;
                break;
            }
            queue.push_back(y);
        }
    }
    if !reached {
        return Ok(None);
    }
    let mut moves = Vec::new();
    let mut cur = v.clone();
    while let Some((p, x)) = parent.get(&cur) {
        moves.push(StrongMove { from: p.clone(), to: cur.clone(), x: x.clone() });
        cur = p.clone();
    }
    moves.reverse();
    Ok(Some(moves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CoxeterMatrix;
    use crate::DEFAULT_NODE_BUDGET as B;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::type_a(2))
    }

    fn dinf() -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::dihedral(None))
    }

    #[test]
    fn u_plus_examples() {
        let sys = a2();
        let s = sys.all_generators();
        let sts = sys.normalize(&[0, 1, 0]).unwrap();
        let up = u_plus(&sys, &s, &sts, 3, B).unwrap();
        assert_eq!(up.elements, vec![sts]);
        assert!(up.saturated);
        assert_eq!(u_plus(&sys, &s, &Element::identity(), 3, B).unwrap().elements, vec![Element::identity()]);

        let d = dinf();
        let up = u_plus(&d, &d.all_generators(), &d.generator(0), 7, B).unwrap();
        let words: Vec<Vec<u8>> = up.elements.iter().map(|e| e.word().to_vec()).collect();
        assert_eq!(words, vec![vec![0], vec![1, 0, 1], vec![0, 1, 0, 1, 0], vec![1, 0, 1, 0, 1, 0, 1]]);
        assert!(!up.saturated);
    }

    #[test]
    fn reduce_to_min_examples() {
        let sys = a2();
        let s = sys.all_generators();
        assert!(reduce_to_min(&sys, &s, &sys.generator(0), None, B).unwrap().is_empty());
        let chain = reduce_to_min(&sys, &s, &sys.normalize(&[0, 1, 0]).unwrap(), None, B).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].target.word(), &[1]);

        let d = dinf();
        let chain = reduce_to_min(&d, &d.all_generators(), &d.normalize(&[1, 0, 1]).unwrap(), None, B).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!((chain[0].target.word(), chain[0].generator), (&[0u8][..], 1));
    }

    #[test]
    fn reduce_to_max_examples() {
        let sys = a2();
        let j = GeneratorSet::from_indices([0]);
        let MaxChain::Chain(c) = reduce_to_max(&sys, &j, &sys.generator(1), B).unwrap() else { panic!() };
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].source.word(), c[0].target.word()), (&[0u8, 1, 0][..], &[1u8][..]));
        assert_eq!(reduce_to_max(&sys, &j, &sys.normalize(&[0, 1, 0]).unwrap(), B).unwrap(), MaxChain::Chain(vec![]));
        let d = dinf();
        assert_eq!(reduce_to_max(&d, &d.all_generators(), &d.generator(0), B).unwrap(), MaxChain::Infinite);
    }

    #[test]
    fn strong_conjugation_examples() {
        let sys = a2();
        let s = sys.all_generators();
        let (gs, gt) = (sys.generator(0), sys.generator(1));
        assert_eq!(strongly_conjugate(&sys, &s, &gs, &gs, StrongMode::Min, None, B).unwrap(), Some(vec![]));
        let proof = strongly_conjugate(&sys, &s, &gs, &gt, StrongMode::Min, None, B).unwrap().unwrap();
        for m in &proof {
            assert_eq!(sys.conjugate(&m.x, &m.from), m.to);
        }
        assert_eq!(proof.last().unwrap().to, gt);
        assert_eq!(
            strongly_conjugate(&sys, &s, &gs, &Element::identity(), StrongMode::Min, None, B),
            Err(Error::LengthMismatch(1, 0))
        );
        // s and t are not conjugate under W_{s}.
        let j = GeneratorSet::from_indices([0]);
        assert_eq!(strongly_conjugate(&sys, &j, &gs, &gt, StrongMode::Max, None, B).unwrap(), None);
    }

    #[test]
    fn max_mode_connects_translations() {
        let d = dinf();
        let (st, ts) = (d.normalize(&[0, 1]).unwrap(), d.normalize(&[1, 0]).unwrap());
        let proof = strongly_conjugate(&d, &d.all_generators(), &st, &ts, StrongMode::Max, None, B).unwrap().unwrap();
        assert_eq!(proof.len(), 1);
    }
}
