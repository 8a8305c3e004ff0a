//! The generic Hecke algebra `H(W, S, (a_s, b_s))` in the `T_w` basis.

use std::collections::BTreeMap;
use std::fmt;

use super::poly::ParamPoly;
use crate::element::Element;
use crate::system::{CoxeterSystem, Side};

/// `Σ x_w T_w` with finitely many nonzero `x_w`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElement(BTreeMap<Element, ParamPoly>);

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::t_basis(&Element::identity())
    }

    /// `T_w`.
    pub fn t_basis(w: &Element) -> Self {
        Self::term(w.clone(), ParamPoly::one())
    }

    pub fn term(w: Element, c: ParamPoly) -> Self {
        let mut h = Self::zero();
        h.add_term(w, c);
        h
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, w: &Element) -> ParamPoly {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, &ParamPoly)> {
        self.0.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, w: Element, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.0.remove(&w) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.0.insert(w, sum);
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        self.add(&other.scale(&-ParamPoly::one()))
    }

    pub fn scale(&self, c: &ParamPoly) -> HeckeElement {
        let mut out = Self::zero();
        for (w, x) in &self.0 {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// `T_s·h`.
    pub fn left_mul_gen(&self, sys: &CoxeterSystem, s: u8) -> HeckeElement {
        self.gen_mul(sys, s, Side::Left)
    }

    /// `h·T_s`.
    pub fn right_mul_gen(&self, sys: &CoxeterSystem, s: u8) -> HeckeElement {
        self.gen_mul(sys, s, Side::Right)
    }

    fn gen_mul(&self, sys: &CoxeterSystem, s: u8, side: Side) -> HeckeElement {
        let class = sys.generator_class(s);
        let (a, b) = (ParamPoly::a(class), ParamPoly::b(class));
        let mut out = Self::zero();
        for (w, x) in &self.0 {
            let sw = match side {
                Side::Left => sys.lmul_gen(s, w),
                Side::Right => sys.rmul_gen(w, s),
            };
            if sw.len() > w.len() {
                out.add_term(sw, x.clone());
            } else {
                out.add_term(w.clone(), &a * x);
                out.add_term(sw, &b * x);
            }
        }
        out
    }

    /// `self·other`, peeling `T_w = T_{s1}⋯T_{sk}` onto `other` from the right.
    pub fn mul(&self, sys: &CoxeterSystem, other: &HeckeElement) -> HeckeElement {
        let mut out = Self::zero();
        for (w, x) in &self.0 {
            let mut prod = other.clone();
            for &s in w.word().iter().rev() {
                prod = prod.left_mul_gen(sys, s);
            }
            out = out.add(&prod.scale(x));
        }
        out
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, sys: &CoxeterSystem, other: &HeckeElement) -> HeckeElement {
        self.mul(sys, other).sub(&other.mul(sys, self))
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(w, c)| format!("({c})*T{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `T_s`.
pub fn t_gen(s: u8) -> HeckeElement {
    HeckeElement::t_basis(&Element::from_normal_word(vec![s]))
}

/// `b_w = b_{s1}⋯b_{sk}` for a reduced word of `w`.
pub fn b_of(sys: &CoxeterSystem, w: &Element) -> ParamPoly {
    b_of_word(sys, w.word())
}

pub fn b_of_word(sys: &CoxeterSystem, word: &[u8]) -> ParamPoly {
    let mut counts = vec![0i32; sys.n_classes()];
    for &s in word {
        counts[sys.generator_class(s)] += 1;
    }
    counts
        .iter()
        .enumerate()
        .fold(ParamPoly::one(), |acc, (c, &k)| &acc * &ParamPoly::b_pow(c, k))
}

/// `b_w^{-1}`.
pub fn b_inv_of(sys: &CoxeterSystem, w: &Element) -> ParamPoly {
    b_of(sys, w).unit_inverse().expect("b_w is a monomial in b")
}
