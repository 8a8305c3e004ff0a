//! The decomposition `W = ⊔_{v ∈ ^J W} W_J·(v W_{K_v})` of a ball.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::element::{Element, GeneratorSet};
use crate::error::{Error, Result};
use crate::system::{CosetSide, CoxeterSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionPiece {
    pub v: Element,
    #[serde(rename = "K_v")]
    pub k_v: GeneratorSet,
    /// `Ad(v)`-twisted `W_{K_v}`-classes in `W_{K_v}`; present when `K_v` is spherical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twisted_classes: Option<Vec<Vec<Element>>>,
    /// Ball elements lying in `W_J·(v W_{K_v})`.
    pub members: Vec<Element>,
}

impl DecompositionPiece {
    pub fn class_representatives(&self) -> Vec<Element> {
        self.twisted_classes.iter().flatten().map(|c| c[0].clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub ball_size: usize,
    pub covered: usize,
    pub overlaps: Vec<Element>,
    pub uncovered: Vec<Element>,
    /// False when some piece was found by bounded search only.
    pub exact: bool,
}

impl Coverage {
    pub fn is_partition(&self) -> bool {
        self.overlaps.is_empty() && self.uncovered.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub radius: usize,
    pub pieces: Vec<DecompositionPiece>,
    pub coverage: Coverage,
}

/// Largest `K ⊆ J` with `v·K·v⁻¹ = K`.
pub fn k_v(sys: &CoxeterSystem, j: &GeneratorSet, v: &Element) -> GeneratorSet {
    let mut k = j.clone();
    loop {
        let next = sys.k_of(&k, v);
        if next == k {
            return k;
        }
        k = next;
    }
}

pub fn partial_decomposition(sys: &CoxeterSystem, j: &GeneratorSet, radius: usize, budget: usize) -> Result<Decomposition> {
    let ball = sys.ball(radius, budget)?;
    let in_ball: BTreeSet<&Element> = ball.iter().collect();
    let j_spherical = sys.is_spherical(j);
    let mut exact = true;
    let mut pieces = Vec::new();

    for v in ball.iter().filter(|w| &sys.min_coset_rep(j, w, CosetSide::Left) == *w) {
        let k = k_v(sys, j, v);
        let twisted_classes = if sys.is_spherical(&k) { Some(twisted_classes(sys, &k, v, budget)?) } else { None };
        let members: Vec<Element> = if j_spherical {
            let seeds = v_times_wk(sys, &k, v, usize::MAX, budget)?;
            conjugation_closure(sys, j, seeds, usize::MAX, budget)?
                .into_iter()
                .filter(|w| in_ball.contains(w))
                .collect()
        } else if k == *j {
            ball.iter()
                .filter(|w| &sys.min_coset_rep(j, w, CosetSide::Left) == v)
                .cloned()
                .collect()
        } else {
            exact = false;
            let limit = radius + 2 * super::chains::default_search_cap(sys, j);
            let seeds = v_times_wk(sys, &k, v, limit, budget)?;
            conjugation_closure(sys, j, seeds, limit, budget)?
                .into_iter()
                .filter(|w| in_ball.contains(w))
                .collect()
        };
        pieces.push(DecompositionPiece { v: v.clone(), k_v: k, twisted_classes, members });
    }

    let mut hits: BTreeMap<&Element, usize> = BTreeMap::new();
    for p in &pieces {
        for w in &p.members {
            *hits.entry(w).or_default() += 1;
        }
    }
    let coverage = Coverage {
        ball_size: ball.len(),
        covered: hits.len(),
        overlaps: hits.iter().filter(|(_, &n)| n > 1).map(|(w, _)| (*w).clone()).collect(),
        uncovered: ball.iter().filter(|w| !hits.contains_key(w)).cloned().collect(),
        exact,
    };
    Ok(Decomposition { radius, pieces, coverage })
}

/// `v·y` for `y ∈ W_K`, optionally capped at a length.
fn v_times_wk(sys: &CoxeterSystem, k: &GeneratorSet, v: &Element, limit: usize, budget: usize) -> Result<Vec<Element>> {
    let radius = match sys.longest_element(k) {
        Ok(w0) => w0.len(),
        Err(_) => limit,
    };
    Ok(sys
        .parabolic_ball(k, radius, budget)?
        .iter()
        .map(|y| sys.multiply(v, y))
        .filter(|w| w.len() <= limit)
        .collect())
}

/// Closure of `seeds` under `w ↦ s w s` for `s ∈ J`, dropping elements longer than `limit`.
fn conjugation_closure(
    sys: &CoxeterSystem,
    j: &GeneratorSet,
    seeds: Vec<Element>,
    limit: usize,
    budget: usize,
) -> Result<BTreeSet<Element>> {
    let mut seen: BTreeSet<Element> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<Element> = seeds.into();
    while let Some(x) = queue.pop_front() {
        for s in j.iter() {
            let y = sys.conjugate_gen(s, &x);
            if y.len() <= limit && seen.insert(y.clone()) {
                if seen.len() > budget {
                    return Err(Error::ResourceLimit { phase: "decomposition".into(), budget });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Classes of `W_K` under `z·y = z y σ(z)⁻¹` with `σ = Ad(v)`, each sorted, listed by least element.
fn twisted_classes(sys: &CoxeterSystem, k: &GeneratorSet, v: &Element, budget: usize) -> Result<Vec<Vec<Element>>> {
    let v_inv = sys.inverse(v);
    let sigma: BTreeMap<u8, u8> = k
        .iter()
        .map(|s| {
            let img = sys.multiply(&sys.multiply(v, &sys.generator(s)), &v_inv);
            (s, img.word()[0])
        })
        .collect();
    let all = sys.parabolic_elements(k, budget)?;
    let mut assigned: BTreeSet<Element> = BTreeSet::new();
    let mut classes = Vec::new();
    for y in &all {
        if assigned.contains(y) {
            continue;
        }
        let mut class = BTreeSet::from([y.clone()]);
        let mut queue = VecDeque::from([y.clone()]);
        while let Some(x) = queue.pop_front() {
            for s in k.iter() {
                let z = sys.lmul_gen(s, &sys.rmul_gen(&x, sigma[&s]));
                if class.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        assigned.extend(class.iter().cloned());
        classes.push(class.into_iter().collect());
    }
    Ok(classes)
}

/// Checks `|W_J·vC| = |W_J / W_K|·|C|` for a twisted class `C` of the piece.
pub fn twisted_class_size_check(
    sys: &CoxeterSystem,
    j: &GeneratorSet,
    piece: &DecompositionPiece,
    c: &[Element],
    budget: usize,
) -> Result<bool> {
    if !sys.is_spherical(j) {
        return Err(Error::NotSpherical);
    }
    let wj = sys.parabolic_elements(j, budget)?.len();
    let wk = sys.parabolic_elements(&piece.k_v, budget)?.len();
    let seeds = c.iter().map(|y| sys.multiply(&piece.v, y)).collect();
    let lhs = conjugation_closure(sys, j, seeds, usize::MAX, budget)?.len();
    let distinct: BTreeSet<&Element> = c.iter().collect();
    Ok(lhs * wk == wj * distinct.len())
}
