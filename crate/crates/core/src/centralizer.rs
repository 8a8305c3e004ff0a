//! The centralizer `Z_H(H_J)` of a parabolic subalgebra.
//!
//! For each finite `W_J`-class `O` the element
//! `z_O = Σ_w b_w⁻¹ · f^max_{w,O} · T_{w⁻¹}` centralizes `H_J`, and these
//! elements are linearly independent. Spanning is not checked here.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::class_poly::{class_poly_max, ClassPolyTable};
use crate::conjugacy::{decide_finite, PartialClassReport};
use crate::element::{Element, GeneratorSet};
use crate::error::{Error, Result};
use crate::hecke::{b_inv_of, hecke_to_json, t_gen, HeckeElement, ParamPoly};
use crate::system::CoxeterSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerBasisElement {
    pub class_rep: Element,
    pub element: HeckeElement,
    pub table: ClassPolyTable,
}

impl CentralizerBasisElement {
    /// `{u⁻¹ : u ∈ O^max}`, the top-length support of `z_O`.
    pub fn leading_support(&self, sys: &CoxeterSystem) -> Vec<Element> {
        let top = self.class_rep.len();
        let mut v: Vec<Element> = self.element.support().filter(|w| w.len() == top).cloned().collect();
        v.sort();
        debug_assert!(v.iter().all(|w| self.table.orbit.contains(&sys.inverse(w))));
        v
    }
}

/// `z_O` for a finite class `O` and irreducible `J`.
pub fn build_z(sys: &CoxeterSystem, j: &GeneratorSet, report: &PartialClassReport, budget: usize) -> Result<CentralizerBasisElement> {
    let table = class_poly_max(sys, j, report, budget)?;
    let mut z = HeckeElement::zero();
    for (w, g) in &table.entries {
        z.add_term(sys.inverse(w), &b_inv_of(sys, w) * g);
    }
    Ok(CentralizerBasisElement { class_rep: table.class_rep.clone(), element: z, table })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// `x_w = x_{w'}` for `w ≈_J w'`.
    #[serde(rename = "i")]
    EqualOnShiftClass,
    /// `x_{w'} = b_s x_w − a_s x_{sw}` for `w →s w'` with `ℓ(w') = ℓ(w) − 2`.
    #[serde(rename = "ii")]
    StrictShift,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub w: Element,
    pub w_prime: Element,
    pub generator: u8,
}

/// Checks the coefficient criterion for membership in `Z_H(H_J)`.
///
/// Every instance of either condition that involves a support element is checked;
/// all other instances hold trivially since they only involve zero coefficients.
pub fn check_membership_coeffs(sys: &CoxeterSystem, j: &GeneratorSet, h: &HeckeElement) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut equal: BTreeSet<(Element, Element, u8)> = BTreeSet::new();
    let mut strict: BTreeSet<(Element, u8)> = BTreeSet::new();
    for u in h.support() {
        for s in j.iter() {
            let sus = sys.conjugate_gen(s, u);
            if sus.len() == u.len() && &sus != u {
                let (a, b) = if u < &sus { (u.clone(), sus) } else { (sus, u.clone()) };
                equal.insert((a, b, s));
                continue;
            }
            // u in the role of w, of w' and of sw.
            if sus.len() + 2 == u.len() {
                strict.insert((u.clone(), s));
            }
            if sus.len() == u.len() + 2 {
                strict.insert((sus, s));
            }
            let su = sys.lmul_gen(s, u);
            if su.len() == u.len() + 1 && sys.conjugate_gen(s, &su).len() + 1 == u.len() {
                strict.insert((su, s));
            }
        }
    }
    for (w, w_prime, s) in equal {
        if h.coeff(&w) != h.coeff(&w_prime) {
            out.push(Violation { condition: Condition::EqualOnShiftClass, w, w_prime, generator: s });
        }
    }
    for (w, s) in strict {
        let c = sys.generator_class(s);
        let w_prime = sys.conjugate_gen(s, &w);
        let rhs = &(&ParamPoly::b(c) * &h.coeff(&w)) - &(&ParamPoly::a(c) * &h.coeff(&sys.lmul_gen(s, &w)));
        if h.coeff(&w_prime) != rhs {
            out.push(Violation { condition: Condition::StrictShift, w, w_prime, generator: s });
        }
    }
    out
}

/// The first `s ∈ J` with `T_s h ≠ h T_s`, if any.
pub fn check_commutation(sys: &CoxeterSystem, j: &GeneratorSet, h: &HeckeElement) -> Option<u8> {
    j.iter().find(|&s| !t_gen(s).commutator(sys, h).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedBasisElement {
    pub basis: CentralizerBasisElement,
    pub coeffs_ok: bool,
    pub commutation_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub j: GeneratorSet,
    pub length_cap: usize,
    pub elements: Vec<VerifiedBasisElement>,
    /// Distinct elements have disjoint top-length supports.
    pub independent: bool,
    /// True when every finite class is known to be listed.
    pub complete: bool,
    pub note: String,
}

impl BasisReport {
    pub fn all_verified(&self) -> bool {
        self.independent && self.elements.iter().all(|e| e.coeffs_ok && e.commutation_ok)
    }

    pub fn to_json(&self, n_classes: usize) -> Value {
        Value::Array(
            self.elements
                .iter()
                .map(|e| {
                    json!({
                        "class_rep": e.basis.class_rep.word(),
                        "z": hecke_to_json(&e.basis.element, n_classes),
                        "verified": {"coeffs": e.coeffs_ok, "commutation": e.commutation_ok},
                    })
                })
                .collect(),
        )
    }
}

/// Finite `W_J`-classes meeting `ball(length_cap)`, deduplicated, ordered by representative.
pub fn finite_classes(sys: &CoxeterSystem, j: &GeneratorSet, length_cap: usize, budget: usize) -> Result<Vec<PartialClassReport>> {
    let mut seen: BTreeSet<Element> = BTreeSet::new();
    let mut classes = Vec::new();
    for w in sys.ball(length_cap, budget)? {
        if seen.contains(&w) {
            continue;
        }
        let r = decide_finite(sys, j, &w, budget)?;
        if let Some(orbit) = &r.orbit {
            seen.extend(orbit.iter().cloned());
            classes.push(r);
        }
    }
    classes.sort_by(|a, b| a.max_elements[0].cmp(&b.max_elements[0]));
    Ok(classes)
}

/// Builds and verifies `z_O` for every finite class found up to the cap.
pub fn enumerate_basis(sys: &CoxeterSystem, j: &GeneratorSet, length_cap: usize, budget: usize) -> Result<BasisReport> {
    if !sys.is_irreducible(j) {
        return Err(Error::NotIrreducible);
    }
    let classes = finite_classes(sys, j, length_cap, budget)?;
    let elements = classes
        .par_iter()
        .map(|r| {
            let basis = build_z(sys, j, r, budget)?;
            let coeffs_ok = check_membership_coeffs(sys, j, &basis.element).is_empty();
            let commutation_ok = check_commutation(sys, j, &basis.element).is_none();
            Ok(VerifiedBasisElement { basis, coeffs_ok, commutation_ok })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut tops = BTreeSet::new();
    let independent = elements
        .iter()
        .flat_map(|e| e.basis.leading_support(sys))
        .all(|w| tops.insert(w));

    let complete = sys
        .longest_element(&sys.all_generators())
        .is_ok_and(|w0| length_cap >= w0.len());
    let note = if complete {
        "all finite classes listed: the whole group lies within the length cap".to_string()
    } else {
        format!("classes complete up to length {length_cap}: only classes meeting the ball of that radius are listed")
    };
    Ok(BasisReport { j: j.clone(), length_cap, elements, independent, complete, note })
}
