//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use coxeter_hecke::{CoxeterMatrix, CoxeterSystem, Element, GeneratorSet};

/// A named test system.
pub struct TestSystem {
    pub name: &'static str,
    pub sys: CoxeterSystem,
}

pub fn a2() -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::type_a(2))
}

pub fn b2() -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::type_b(2))
}

pub fn a3() -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::type_a(3))
}

pub fn dinf() -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::dihedral(None))
}

/// The triangle group with `m = (3, ∞, ∞)`: `m(0,1) = 3`, `m(0,2) = m(1,2) = ∞`.
pub fn triangle() -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::new(vec![vec![1, 3, 0], vec![3, 1, 0], vec![0, 0, 1]]).unwrap())
}

pub fn all_systems() -> Vec<TestSystem> {
    vec![
        TestSystem { name: "A2", sys: a2() },
        TestSystem { name: "B2", sys: b2() },
        TestSystem { name: "A3", sys: a3() },
        TestSystem { name: "infinite dihedral", sys: dinf() },
        TestSystem { name: "(3,inf,inf) triangle", sys: triangle() },
    ]
}

pub fn subsets(rank: usize) -> Vec<GeneratorSet> {
    (0u32..1 << rank)
        .map(|mask| (0..rank as u8).filter(|&i| mask & (1 << i) != 0).collect())
        .collect()
}

pub fn irreducible_subsets(sys: &CoxeterSystem) -> Vec<GeneratorSet> {
    subsets(sys.rank()).into_iter().filter(|j| sys.is_irreducible(j)).collect()
}

// ----- permutation models -------------------------------------------------

/// Signed permutation of `1..=n`, stored as images.
pub type Perm = Vec<i8>;

pub fn compose(u: &Perm, v: &Perm) -> Perm {
    // (u ∘ v)(x) = u(v(x))
    v.iter()
        .map(|&x| {
            let y = u[(x.unsigned_abs() - 1) as usize];
            if x < 0 {
                -y
            } else {
                y
            }
        })
        .collect()
}

pub fn perm_inverse(u: &Perm) -> Perm {
    let mut out = vec![0i8; u.len()];
    for (i, &y) in u.iter().enumerate() {
        let x = (i + 1) as i8;
        out[(y.unsigned_abs() - 1) as usize] = if y < 0 { -x } else { x };
    }
    out
}

/// A finite Coxeter group realised by signed permutations, with ShortLex normal
/// forms found by breadth-first search.
pub struct PermModel {
    pub gens: Vec<Perm>,
    pub normal: HashMap<Perm, Vec<u8>>,
    pub identity: Perm,
}

impl PermModel {
    /// `A_n` as `S_{n+1}`, generator `i` swapping `i+1` and `i+2`.
    pub fn type_a(n: usize) -> Self {
        let id: Perm = (1..=(n + 1) as i8).collect();
        let gens = (0..n)
            .map(|i| {
                let mut p = id.clone();
                p.swap(i, i + 1);
                p
            })
            .collect();
        Self::build(id, gens)
    }

    /// `B_n` as signed permutations: generator 0 negates `1`, generator `i ≥ 1`
    /// swaps `i` and `i+1`.
    pub fn type_b(n: usize) -> Self {
        let id: Perm = (1..=n as i8).collect();
        let mut gens = Vec::new();
        let mut neg = id.clone();
        neg[0] = -1;
        gens.push(neg);
        for i in 1..n {
            let mut p = id.clone();
            p.swap(i - 1, i);
            gens.push(p);
        }
        Self::build(id, gens)
    }

    fn build(identity: Perm, gens: Vec<Perm>) -> Self {
        let mut normal = HashMap::from([(identity.clone(), Vec::new())]);
        let mut level = vec![(identity.clone(), Vec::<u8>::new())];
        while !level.is_empty() {
            let mut next = Vec::new();
            for (p, w) in &level {
                for (s, g) in gens.iter().enumerate() {
                    let q = compose(p, g);
                    if !normal.contains_key(&q) {
                        let mut nw = w.clone();
                        nw.push(s as u8);
                        normal.insert(q.clone(), nw.clone());
                        next.push((q, nw));
                    }
                }
            }
            level = next;
        }
        PermModel { gens, normal, identity }
    }

    pub fn order(&self) -> usize {
        self.normal.len()
    }

    pub fn eval(&self, word: &[u8]) -> Perm {
        word.iter().fold(self.identity.clone(), |acc, &s| compose(&acc, &self.gens[s as usize]))
    }

    pub fn nf(&self, p: &Perm) -> &[u8] {
        &self.normal[p]
    }

    pub fn elements(&self) -> Vec<Perm> {
        let mut v: Vec<Perm> = self.normal.keys().cloned().collect();
        v.sort_by(|a, b| {
            let (x, y) = (&self.normal[a], &self.normal[b]);
            x.len().cmp(&y.len()).then_with(|| x.cmp(y))
        });
        v
    }

    pub fn conjugacy_classes(&self, by: &[u8]) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for p in self.elements() {
            if seen.contains(&p) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([p.clone()]);
            seen.insert(p);
            while let Some(x) = queue.pop_front() {
                for &s in by {
                    let g = &self.gens[s as usize];
                    let y = compose(&compose(g, &x), g);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        count
    }
}

// ----- word-level oracles --------------------------------------------------

/// All words reachable from `word` by braid moves, computed from the matrix only.
pub fn braid_class(m: &CoxeterMatrix, word: &[u8]) -> BTreeSet<Vec<u8>> {
    let mut seen = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len() {
            for j in i + 2..=w.len() {
                let (a, b) = (w[i], w[i + 1]);
                let Some(mab) = m.get(a.into(), b.into()).finite() else { continue };
                if a == b || j - i != mab as usize {
                    continue;
                }
                if (i..j).all(|k| w[k] == if (k - i) % 2 == 0 { a } else { b }) {
                    let mut nw = w.clone();
                    for k in i..j {
                        nw[k] = if (k - i) % 2 == 0 { b } else { a };
                    }
                    if seen.insert(nw.clone()) {
                        queue.push_back(nw);
                    }
                }
            }
        }
    }
    seen
}

/// Prediction for the finiteness of the `W_J`-orbit of `w`, `J` irreducible,
/// from the structure of `J` and of `w` alone. Affine subsets of the test
/// systems are all of type `Ã1`, whose translations are the even-length elements.
pub fn predicted_finite(sys: &CoxeterSystem, j: &GeneratorSet, w: &Element) -> bool {
    let m = sys.matrix();
    let kinds = sys.classify_subset(j);
    if kinds.iter().all(|(_, k)| *k == coxeter_hecke::SubsetKind::Spherical) {
        return true;
    }
    let perp: Vec<u8> = (0..sys.rank() as u8)
        .filter(|&s| !j.contains(s) && j.iter().all(|t| m.raw(s.into(), t.into()) == 2))
        .collect();
    let letters = w.word();
    if !letters.iter().all(|s| j.contains(*s) || perp.contains(s)) {
        return false;
    }
    let w2_len = letters.iter().filter(|s| j.contains(**s)).count();
    if w2_len == 0 {
        return true;
    }
    let affine_a1 = j.len() == 2 && m.raw(j.members()[0].into(), j.members()[1].into()) == 0;
    affine_a1 && w2_len % 2 == 0
}

pub fn words(elems: &[Element]) -> Vec<Vec<u8>> {
    elems.iter().map(|e| e.word().to_vec()).collect()
}
