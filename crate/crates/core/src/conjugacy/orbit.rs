//! Finiteness of partial conjugacy classes.
//!
//! `W_J` is the direct product of the parabolic subgroups of the irreducible
//! components of `J`, and conjugation by one component commutes with
//! conjugation by another. Hence the `W_J`-orbit of `w` is finite exactly
//! when the orbit of `w` under every single component is finite. Spherical
//! components are always finite. A finite orbit under an irreducible
//! non-spherical component has constant length, and since spheres in `W` are
//! finite, an orbit of constant length is finite. So the component test is a
//! breadth-first search that stops as soon as the length changes.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::classify::SubsetKind;
use crate::element::{Element, GeneratorSet};
use crate::error::{Error, Result};
use crate::system::CoxeterSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Finite,
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Every component of `J` is spherical.
    SphericalJ,
    /// `w` lies in `W_{J⊥}`; carries `w`.
    InPerp { w1: Element },
    /// `J` affine and `w = w1·w2` with `w1 ∈ W_{J⊥}` and `w2 ∈ W_J` of constant-length orbit.
    AffineTranslation { w1: Element, w2: Element },
    /// The orbit closed up at constant length.
    ConstantLengthClosure,
    /// An orbit element of a different length.
    LengthChangeWitness { element: Element },
}

impl Certificate {
    pub fn verdict(&self) -> Verdict {
        match self {
            Certificate::LengthChangeWitness { .. } => Verdict::Infinite,
            _ => Verdict::Finite,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentVerdict {
    pub component: GeneratorSet,
    pub kind: SubsetKind,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialClassReport {
    #[serde(rename = "J")]
    pub j: GeneratorSet,
    pub seed: Element,
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub components: Vec<ComponentVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<Vec<Element>>,
    #[serde(rename = "max")]
    pub max_elements: Vec<Element>,
    #[serde(rename = "min")]
    pub min_elements: Vec<Element>,
}

impl PartialClassReport {
    pub fn is_finite(&self) -> bool {
        self.verdict == Verdict::Finite
    }

    /// The orbit, or `NotFinite`.
    pub fn finite_orbit(&self) -> Result<&[Element]> {
        self.orbit.as_deref().ok_or(Error::NotFinite)
    }

    /// ShortLex-least element of maximal length.
    pub fn representative(&self) -> Option<&Element> {
        self.max_elements.first()
    }

    pub fn contains(&self, w: &Element) -> bool {
        self.orbit.as_ref().is_some_and(|o| o.binary_search(w).is_ok())
    }
}

/// Decides whether the `W_J`-orbit of `w` is finite and, if so, enumerates it.
pub fn decide_finite(sys: &CoxeterSystem, j: &GeneratorSet, w: &Element, budget: usize) -> Result<PartialClassReport> {
    let mut components = Vec::new();
    for (comp, kind) in sys.classify_subset(j) {
        let certificate = match kind {
            SubsetKind::Spherical => Certificate::SphericalJ,
            _ => component_certificate(sys, &comp, w, budget)?,
        };
        components.push(ComponentVerdict { component: comp, kind, certificate });
    }

    let non_spherical: Vec<&ComponentVerdict> =
        components.iter().filter(|c| c.kind != SubsetKind::Spherical).collect();
    let certificate = if let Some(bad) = non_spherical.iter().find(|c| c.certificate.verdict() == Verdict::Infinite) {
        bad.certificate.clone()
    } else {
        match non_spherical.as_slice() {
            [] => Certificate::SphericalJ,
            [one] => one.certificate.clone(),
            _ => Certificate::ConstantLengthClosure,
        }
    };
    let verdict = certificate.verdict();

    let (orbit, max_elements, min_elements) = if verdict == Verdict::Finite {
        let orbit = enumerate_orbit(sys, j, w, budget)?;
        let (lo, hi) = (orbit[0].len(), orbit[orbit.len() - 1].len());
        let min = orbit.iter().filter(|x| x.len() == lo).cloned().collect();
        let max = orbit.iter().filter(|x| x.len() == hi).cloned().collect();
        (Some(orbit), max, min)
    } else {
        (None, Vec::new(), Vec::new())
    };

    Ok(PartialClassReport {
        j: j.clone(),
        seed: w.clone(),
        verdict,
        certificate,
        components,
        orbit,
        max_elements,
        min_elements,
    })
}

fn component_certificate(sys: &CoxeterSystem, comp: &GeneratorSet, w: &Element, budget: usize) -> Result<Certificate> {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        for s in comp.iter() {
            let y = sys.conjugate_gen(s, &x);
            if y.len() != w.len() {
                return Ok(Certificate::LengthChangeWitness { element: y });
            }
            if seen.insert(y.clone()) {
                if seen.len() > budget {
                    return Err(Error::ResourceLimit { phase: "certificate".into(), budget });
                }
                queue.push_back(y);
            }
        }
    }

    let perp = sys.perp(comp);
    let support = sys.support(w);
    if support.is_subset(&comp.union(&perp)) {
        let w1: Vec<u8> = w.word().iter().copied().filter(|&s| perp.contains(s)).collect();
        let w2: Vec<u8> = w.word().iter().copied().filter(|&s| comp.contains(s)).collect();
        let (w1, w2) = (sys.normalize_word(&w1), sys.normalize_word(&w2));
        if w2.is_identity() {
            return Ok(Certificate::InPerp { w1 });
        }
        if sys.kind_of_irreducible(comp)? == SubsetKind::Affine {
            return Ok(Certificate::AffineTranslation { w1, w2 });
        }
    }
    Ok(Certificate::ConstantLengthClosure)
}

/// Full `W_J`-orbit by breadth-first search, ShortLex-sorted.
pub(crate) fn enumerate_orbit(sys: &CoxeterSystem, j: &GeneratorSet, w: &Element, budget: usize) -> Result<Vec<Element>> {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        for s in j.iter() {
            let y = sys.conjugate_gen(s, &x);
            if seen.insert(y.clone()) {
                if seen.len() > budget {
                    return Err(Error::ResourceLimit { phase: "orbit".into(), budget });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
