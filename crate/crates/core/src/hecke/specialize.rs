//! Evaluation of parameters in `ℤ[q^{±1}]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::element::HeckeElement;
use super::poly::{LaurentPoly, ParamPoly};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::system::CoxeterSystem;

/// Values `(a_c, b_c)` for every parameter class, with each `b_c` a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    params: Vec<(LaurentPoly, LaurentPoly)>,
}

impl Specialization {
    pub fn new(params: Vec<(LaurentPoly, LaurentPoly)>) -> Result<Self> {
        if let Some(class) = params.iter().position(|(_, b)| b.unit_inverse().is_none()) {
            return Err(Error::NonInvertibleB { class });
        }
        Ok(Specialization { params })
    }

    /// `(a, b) = (0, 1)`: the group ring `ℤ[W]`.
    pub fn group_ring(n_classes: usize) -> Self {
        Specialization { params: vec![(LaurentPoly::zero(), LaurentPoly::one()); n_classes] }
    }

    /// `(a, b) = (q − 1, q)`.
    pub fn iwahori(n_classes: usize) -> Self {
        let a = &LaurentPoly::q() - &LaurentPoly::one();
        Specialization { params: vec![(a, LaurentPoly::q()); n_classes] }
    }

    pub fn params(&self) -> &[(LaurentPoly, LaurentPoly)] {
        &self.params
    }

    fn check(&self, sys: &CoxeterSystem) -> Result<()> {
        if self.params.len() < sys.n_classes() {
            return Err(Error::InvalidInput(format!(
                "specialization covers {} parameter classes, system has {}",
                self.params.len(),
                sys.n_classes()
            )));
        }
        Ok(())
    }

    pub fn eval(&self, p: &ParamPoly) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (m, c) in p.terms() {
            let mut val = LaurentPoly::constant(c.clone());
            for &(var, e) in m.terms() {
                let class = (var / 2) as usize;
                let (a, b) = self.params.get(class).ok_or_else(|| {
                    Error::InvalidInput(format!("no specialization for parameter class {class}"))
                })?;
                let base = if var % 2 == 0 { a } else { b };
                val = &val * &base.pow(e).ok_or(Error::NonInvertibleB { class })?;
            }
            out = &out + &val;
        }
        Ok(out)
    }

    pub fn apply(&self, sys: &CoxeterSystem, h: &HeckeElement) -> Result<SpecializedElement> {
        self.check(sys)?;
        let mut map = BTreeMap::new();
        for (w, c) in h.terms() {
            let v = self.eval(c)?;
            if !v.is_zero() {
                map.insert(w.clone(), v);
            }
        }
        Ok(SpecializedElement(map))
    }

    /// Product in the specialized algebra.
    pub fn mul(&self, sys: &CoxeterSystem, f: &SpecializedElement, g: &SpecializedElement) -> Result<SpecializedElement> {
        self.check(sys)?;
        let mut out = SpecializedElement::default();
        for (w, x) in &f.0 {
            let mut prod = g.clone();
            for &s in w.word().iter().rev() {
                prod = self.left_mul_gen(sys, s, &prod);
            }
            out = out.add(&prod.scale(x));
        }
        Ok(out)
    }

    fn left_mul_gen(&self, sys: &CoxeterSystem, s: u8, h: &SpecializedElement) -> SpecializedElement {
        let (a, b) = &self.params[sys.generator_class(s)];
        let mut out = SpecializedElement::default();
        for (w, x) in &h.0 {
            let sw = sys.lmul_gen(s, w);
            if sw.len() > w.len() {
                out.add_term(sw, x.clone());
            } else {
                out.add_term(w.clone(), a * x);
                out.add_term(sw, b * x);
            }
        }
        out
    }
}

/// `Σ x_w T_w` with `x_w ∈ ℤ[q^{±1}]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecializedElement(BTreeMap<Element, LaurentPoly>);

impl SpecializedElement {
    pub fn terms(&self) -> impl Iterator<Item = (&Element, &LaurentPoly)> {
        self.0.iter()
    }

    pub fn coeff(&self, w: &Element) -> LaurentPoly {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, w: Element, c: LaurentPoly) {
        let sum = match self.0.remove(&w) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.0.insert(w, sum);
        }
    }

    pub fn add(&self, other: &SpecializedElement) -> SpecializedElement {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> SpecializedElement {
        let mut out = SpecializedElement::default();
        for (w, x) in &self.0 {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Integer coefficients, when no `q` remains.
    pub fn as_integer_function(&self) -> Option<BTreeMap<Element, i64>> {
        self.0
            .iter()
            .map(|(w, c)| {
                let v = c.as_constant()?;
                Some((w.clone(), i64::try_from(v).ok()?))
            })
            .collect()
    }

    /// `Σ x_w T_{x w x⁻¹}`, i.e. conjugation by `x` in `ℤ[W]`.
    pub fn group_conjugate(&self, sys: &CoxeterSystem, x: &Element) -> SpecializedElement {
        let mut out = SpecializedElement::default();
        for (w, c) in &self.0 {
            out.add_term(sys.conjugate(x, w), c.clone());
        }
        out
    }
}

/// Serialized form of one class: coefficient lists `[[exp, coeff], …]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassValues {
    pub a: Vec<(i32, i64)>,
    pub b: Vec<(i32, i64)>,
}

impl ClassValues {
    pub fn to_pair(&self) -> (LaurentPoly, LaurentPoly) {
        let conv = |v: &[(i32, i64)]| LaurentPoly::from_terms(v.iter().map(|&(e, c)| (e, c.into())));
        (conv(&self.a), conv(&self.b))
    }
}
