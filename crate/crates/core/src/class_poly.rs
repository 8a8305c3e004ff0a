//! Class polynomials.
//!
//! The max variant `g(w) = f^max_{w,O}` for a finite `W_J`-class `O` is solved
//! from the top down. Let `L` be the length of `O^max`. Then `g` vanishes
//! above length `L`, and at length `L` it is the indicator of `O`. Below that,
//! `g` is constant on `≈_J`-classes, and whenever `ℓ(s u s) = ℓ(u) + 2` for
//! some `s ∈ J`,
//!
//! ```text
//! g(u) = b_s⁻¹ · (g(s u s) − a_s · g(s u))
//! ```
//!
//! where both right-hand arguments are longer than `u`. Every such route, from
//! every member of the `≈_J`-class, is evaluated and the results must agree.
//! An element whose `≈_J`-class has no such route is maximal in its own class,
//! and `g` there is the indicator of `O`.
//!
//! The min variant for finite `W` and `J = S` runs the same recursion in the
//! opposite direction, anchored at minimal-length elements.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::conjugacy::{self, PartialClassReport};
use crate::element::{Element, GeneratorSet};
use crate::error::{Error, Result};
use crate::hecke::{poly_to_json, ParamPoly};
use crate::system::{CosetSide, CoxeterSystem};

/// `f^max_{·,O}` on its (finite) support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPolyTable {
    pub j: GeneratorSet,
    /// ShortLex-least element of `O^max`.
    pub class_rep: Element,
    pub orbit: Vec<Element>,
    /// Nonzero values, ShortLex-sorted by element.
    pub entries: Vec<(Element, ParamPoly)>,
}

impl ClassPolyTable {
    pub fn get(&self, w: &Element) -> ParamPoly {
        self.entries
            .binary_search_by(|(x, _)| x.cmp(w))
            .map_or_else(|_| ParamPoly::zero(), |i| self.entries[i].1.clone())
    }

    pub fn to_json(&self, n_classes: usize) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(w, p)| json!({"word": w.word(), "poly": poly_to_json(p, n_classes), "display": p.to_string()}))
            .collect();
        json!({"class_rep": self.class_rep.word(), "entries": entries})
    }
}

struct MaxSolver<'a> {
    sys: &'a CoxeterSystem,
    j: &'a GeneratorSet,
    orbit: BTreeSet<Element>,
    top: usize,
    memo: BTreeMap<Element, ParamPoly>,
    budget: usize,
}

impl MaxSolver<'_> {
    fn indicator(&self, u: &Element) -> ParamPoly {
        if self.orbit.contains(u) {
            ParamPoly::one()
        } else {
            ParamPoly::zero()
        }
    }

    fn value(&mut self, u: &Element) -> Result<ParamPoly> {
        if u.len() >= self.top {
            return Ok(if u.len() == self.top { self.indicator(u) } else { ParamPoly::zero() });
        }
        if let Some(v) = self.memo.get(u) {
            return Ok(v.clone());
        }
        let class = conjugacy::cyclic_shift_class(self.sys, self.j, u, None, self.budget)?;
        let mut found: Option<(ParamPoly, Element, u8)> = None;
        for x in &class {
            for s in self.j.iter() {
                let sxs = self.sys.conjugate_gen(s, x);
                if sxs.len() != x.len() + 2 {
                    continue;
                }
                let c = self.sys.generator_class(s);
                let sx = self.sys.lmul_gen(s, x);
                let upper = self.value(&sxs)?;
                let side = self.value(&sx)?;
                let v = &ParamPoly::b_pow(c, -1) * &(&upper - &(&ParamPoly::a(c) * &side));
                match &found {
                    None => found = Some((v, x.clone(), s)),
                    Some((prev, px, ps)) if *prev != v => {
                        return Err(Error::InconsistentRecursion {
                            word: u.word().to_vec(),
                            detail: format!("route ({px}, {ps}) gives {prev}, route ({x}, {s}) gives {v}"),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        let v = match found {
            Some((v, _, _)) => v,
            None => self.indicator(u),
        };
        for x in class {
            self.memo.insert(x, v.clone());
        }
        Ok(v)
    }
}

/// `f^max_{w,O}` for every `w` where it is nonzero.
pub fn class_poly_max(
    sys: &CoxeterSystem,
    j: &GeneratorSet,
    report: &PartialClassReport,
    budget: usize,
) -> Result<ClassPolyTable> {
    if !sys.is_irreducible(j) {
        return Err(Error::NotIrreducible);
    }
    let orbit = report.finite_orbit()?.to_vec();
    let max = &report.max_elements;
    let class_rep = max[0].clone();
    let mut solver = MaxSolver {
        sys,
        j,
        orbit: orbit.iter().cloned().collect(),
        top: class_rep.len(),
        memo: BTreeMap::new(),
        budget,
    };

    let mut support: BTreeMap<Element, ParamPoly> = max.iter().map(|u| (u.clone(), ParamPoly::one())).collect();
    let mut stack: Vec<Element> = max.clone();
    while let Some(v) = stack.pop() {
        for s in j.iter() {
            let sv = sys.lmul_gen(s, &v);
            let mut candidates = Vec::new();
            let svs = sys.rmul_gen(&sv, s);
            if svs.len() + 2 == v.len() {
                candidates.push(svs);
            }
            if sv.len() < v.len() && sys.rmul_gen(&v, s).len() > v.len() {
                candidates.push(sv);
            }
            for c in candidates {
                if support.contains_key(&c) || solver.memo.get(&c).is_some_and(ParamPoly::is_zero) {
                    continue;
                }
                let g = solver.value(&c)?;
                if g.is_zero() {
                    continue;
                }
                for x in conjugacy::cyclic_shift_class(sys, j, &c, None, budget)? {
                    if support.insert(x.clone(), g.clone()).is_none() {
                        if support.len() > budget {
                            return Err(Error::ResourceLimit { phase: "class polynomial".into(), budget });
                        }
                        stack.push(x);
                    }
                }
            }
        }
    }

    let coset = sys.min_coset_rep(j, &class_rep, CosetSide::Double);
    if let Some((w, _)) = support.iter().find(|(w, _)| sys.min_coset_rep(j, w, CosetSide::Double) != coset) {
        return Err(Error::InconsistentRecursion {
            word: w.word().to_vec(),
            detail: format!("support leaves the double coset of {class_rep}"),
        });
    }

    Ok(ClassPolyTable { j: j.clone(), class_rep, orbit, entries: support.into_iter().collect() })
}

/// Class polynomials of a finite Coxeter group, `J = S`.
pub struct MinClassPolys<'a> {
    sys: &'a CoxeterSystem,
    classes: Vec<PartialClassReport>,
    class_of: BTreeMap<Element, usize>,
    memo: BTreeMap<Element, BTreeMap<usize, ParamPoly>>,
    budget: usize,
}

impl<'a> MinClassPolys<'a> {
    /// Enumerates the conjugacy classes, ordered by their representatives.
    pub fn new(sys: &'a CoxeterSystem, budget: usize) -> Result<Self> {
        if !sys.is_finite() {
            return Err(Error::NotFinite);
        }
        let s = sys.all_generators();
        let w0 = sys.longest_element(&s)?;
        let mut classes: Vec<PartialClassReport> = Vec::new();
        let mut seen = BTreeSet::new();
        for w in sys.ball(w0.len(), budget)? {
            if seen.contains(&w) {
                continue;
            }
            let r = conjugacy::decide_finite(sys, &s, &w, budget)?;
            seen.extend(r.finite_orbit()?.iter().cloned());
            classes.push(r);
        }
        classes.sort_by(|a, b| a.min_elements[0].cmp(&b.min_elements[0]));
        let mut class_of = BTreeMap::new();
        for (i, c) in classes.iter().enumerate() {
            for w in c.finite_orbit()? {
                class_of.insert(w.clone(), i);
            }
        }
        Ok(MinClassPolys { sys, classes, class_of, memo: BTreeMap::new(), budget })
    }

    pub fn classes(&self) -> &[PartialClassReport] {
        &self.classes
    }

    /// ShortLex-least minimal-length element of class `i`.
    pub fn representative(&self, i: usize) -> &Element {
        &self.classes[i].min_elements[0]
    }

    pub fn class_of(&self, w: &Element) -> usize {
        self.class_of[w]
    }

    /// `f_{w,O}` for every class `O` with a nonzero value.
    pub fn polys(&mut self, w: &Element) -> Result<BTreeMap<usize, ParamPoly>> {
        if let Some(v) = self.memo.get(w) {
            return Ok(v.clone());
        }
        let s_all = self.sys.all_generators();
        let class = conjugacy::cyclic_shift_class(self.sys, &s_all, w, None, self.budget)?;
        let mut found: Option<BTreeMap<usize, ParamPoly>> = None;
        for x in &class {
            for s in s_all.iter() {
                let sxs = self.sys.conjugate_gen(s, x);
                if sxs.len() + 2 != x.len() {
                    continue;
                }
                let c = self.sys.generator_class(s);
                let lower = self.polys(&sxs)?;
                let side = self.polys(&self.sys.lmul_gen(s, x))?;
                let v = combine(&lower, &ParamPoly::b(c), &side, &ParamPoly::a(c));
                match &found {
                    None => found = Some(v),
                    Some(prev) if *prev != v => {
                        return Err(Error::InconsistentRecursion {
                            word: w.word().to_vec(),
                            detail: format!("route through ({x}, {s}) disagrees"),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        let v = found.unwrap_or_else(|| BTreeMap::from([(self.class_of(w), ParamPoly::one())]));
        for x in class {
            self.memo.insert(x, v.clone());
        }
        Ok(v)
    }
}

fn combine(
    x: &BTreeMap<usize, ParamPoly>,
    cx: &ParamPoly,
    y: &BTreeMap<usize, ParamPoly>,
    cy: &ParamPoly,
) -> BTreeMap<usize, ParamPoly> {
    let mut out: BTreeMap<usize, ParamPoly> = BTreeMap::new();
    for (k, p) in x {
        out.insert(*k, cx * p);
    }
    for (k, p) in y {
        let sum = &out.remove(k).unwrap_or_default() + &(cy * p);
        out.insert(*k, sum);
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// `f_{w,O}` for finite `W`, keyed by class index (see [`MinClassPolys`]).
pub fn class_poly_min(sys: &CoxeterSystem, w: &Element, budget: usize) -> Result<BTreeMap<usize, ParamPoly>> {
    MinClassPolys::new(sys, budget)?.polys(w)
}
