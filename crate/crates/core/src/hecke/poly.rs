//! Exact parameter ring `ℤ[a_c, b_c^{±1}]` and the Laurent ring `ℤ[q^{±1}]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Variable index: `2c` is `a_c`, `2c + 1` is `b_c`.
type Var = u32;

/// A monomial as sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn a(class: usize) -> Self {
        Monomial(vec![(2 * class as Var, 1)])
    }

    pub fn b_pow(class: usize, k: i32) -> Self {
        if k == 0 {
            Self::one()
        } else {
            Monomial(vec![(2 * class as Var + 1, k)])
        }
    }

    /// Exponents of `a_c` and `b_c`.
    pub fn exponents(&self, class: usize) -> (i32, i32) {
        let get = |v: Var| self.0.iter().find(|&&(x, _)| x == v).map_or(0, |&(_, e)| e);
        (get(2 * class as Var), get(2 * class as Var + 1))
    }

    /// Builds a monomial from per-class `(deg_a, deg_b)` pairs.
    pub fn from_exponents(pairs: &[(i32, i32)]) -> Option<Self> {
        let mut v = Vec::new();
        for (c, &(ea, eb)) in pairs.iter().enumerate() {
            if ea < 0 {
                return None;
            }
            if ea != 0 {
                v.push((2 * c as Var, ea));
            }
            if eb != 0 {
                v.push((2 * c as Var + 1, eb));
            }
        }
        Some(Monomial(v))
    }

    pub fn max_class(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| (v / 2) as usize)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| i64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// True when only `b` variables occur.
    pub fn is_b_only(&self) -> bool {
        self.0.iter().all(|&(v, _)| v % 2 == 1)
    }

    pub fn inverse(&self) -> Option<Self> {
        self.is_b_only().then(|| Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect()))
    }

    pub(crate) fn terms(&self) -> &[(u32, i32)] {
        &self.0
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let x = self.0.get(i);
            let y = other.0.get(j);
            match (x, y) {
                (Some(&(vx, ex)), Some(&(vy, ey))) if vx == vy => {
                    if ex + ey != 0 {
                        out.push((vx, ex + ey));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&a), Some(&(vy, _))) if a.0 < vy => {
                    out.push(a);
                    i += 1;
                }
                (Some(_), Some(&b)) | (None, Some(&b)) => {
                    out.push(b);
                    j += 1;
                }
                (Some(&a), None) => {
                    out.push(a);
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    /// Total degree, then the exponent vector `(a0, b0, a1, b1, …)` compared lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(&(vx, ex)), Some(&(vy, ey))) if vx == vy => {
                        if ex != ey {
                            return ex.cmp(&ey);
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some(&(vx, ex)), Some(&(vy, _))) if vx < vy => return ex.cmp(&0),
                    (Some(_), Some(&(_, ey))) | (None, Some(&(_, ey))) => return 0.cmp(&ey),
                    (Some(&(_, ex)), None) => return ex.cmp(&0),
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                let name = format!("{}{}", if v % 2 == 0 { 'a' } else { 'b' }, v / 2);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of `ℤ[a_c, b_c^{±1}]`: polynomial in the `a`, Laurent in the `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly(BTreeMap<Monomial, BigInt>);

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(), c.into())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.0.insert(m, c);
        }
        p
    }

    pub fn a(class: usize) -> Self {
        Self::term(Monomial::a(class), BigInt::one())
    }

    pub fn b(class: usize) -> Self {
        Self::b_pow(class, 1)
    }

    pub fn b_pow(class: usize, k: i32) -> Self {
        Self::term(Monomial::b_pow(class, k), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.get(&Monomial::one()).is_some_and(One::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.0.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.0.len()
    }

    /// Inverse of a unit `±b^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let [(m, c)] = self.0.iter().collect::<Vec<_>>()[..] else { return None };
        if c.abs() != BigInt::one() {
            return None;
        }
        Some(Self::term(m.inverse()?, c.clone()))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly(self.0.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.0.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Number of parameter classes mentioned.
    pub fn class_span(&self) -> usize {
        self.0.keys().filter_map(Monomial::max_class).max().map_or(0, |c| c + 1)
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &rhs.0 {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(ParamPoly);

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.0.iter().map(|(m, c)| (m.to_string(), c)))
    }
}

fn write_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (String, &'a BigInt)>) -> fmt::Result {
    let mut first = true;
    for (m, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        let body = match (m.is_empty(), abs.is_one()) {
            (true, _) => abs.to_string(),
            (false, true) => m,
            (false, false) => format!("{abs}*{m}"),
        };
        match (first, neg) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Element of `ℤ[q^{±1}]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly(BTreeMap<i32, BigInt>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i32, c: impl Into<BigInt>) -> Self {
        Self::from_terms([(exp, c.into())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i32, c: BigInt) {
        let entry = self.0.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.0.iter().map(|(&e, c)| (e, c))
    }

    /// The constant value, when there is no `q`.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.0.len() {
            0 => Some(BigInt::zero()),
            1 => self.0.get(&0).cloned(),
            _ => None,
        }
    }

    /// Inverse of a unit `±q^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let [(&e, c)] = self.0.iter().collect::<Vec<_>>()[..] else { return None };
        (c.abs().is_one()).then(|| LaurentPoly::monomial(-e, c.clone()))
    }

    pub fn pow(&self, k: i32) -> Option<Self> {
        let base = if k < 0 { self.unit_inverse()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.0 {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.0 {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.0 {
            for (&e2, c2) in &rhs.0 {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(&e, c)| (e, -c)).collect())
    }
}

owned_ops!(LaurentPoly);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.0.iter().rev().map(|(&e, c)| {
            let m = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            (m, c)
        });
        write_terms(f, terms)
    }
}
