//! Coxeter systems and the word problem.
//!
//! Normal forms are computed incrementally. For a reduced element `u` and a
//! generator `s`, the set of all reduced words of `u` is the braid-move
//! closure of any one of them. Then `us` is shorter than `u` exactly when
//! some reduced word of `u` ends in `s`, and in that case the reduced words
//! of `us` are those words with the last letter removed. Otherwise the reduced
//! words of `us` are the braid closure of `u·s`. The ShortLex-least word of the
//! resulting set is the canonical form.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, RwLock};

use crate::classify::{classify_component, SubsetKind};
use crate::element::{Element, GeneratorSet};
use crate::error::{Error, Result};
use crate::matrix::CoxeterMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CosetSide {
    Left,
    Right,
    Double,
}

#[derive(Default)]
struct Memo {
    /// word -> canonical element
    words: HashMap<Vec<u8>, Element>,
    /// canonical word -> all reduced words, sorted ShortLex (first is canonical)
    reduced: HashMap<Vec<u8>, Arc<Vec<Vec<u8>>>>,
}

impl Memo {
    fn size(&self) -> usize {
        self.words.len() + self.reduced.len()
    }
}

type ComponentLabels = Vec<(GeneratorSet, SubsetKind)>;

/// A Coxeter system `(W, S)` with memoized normal forms.
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    gen_class: Vec<usize>,
    n_classes: usize,
    memo: RwLock<Memo>,
    memo_cap: Option<usize>,
    labels: RwLock<HashMap<GeneratorSet, ComponentLabels>>,
}

impl std::fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoxeterSystem").field("matrix", &self.matrix.rows()).finish()
    }
}

impl Clone for CoxeterSystem {
    fn clone(&self) -> Self {
        let mut sys = CoxeterSystem::new(self.matrix.clone());
        sys.memo_cap = self.memo_cap;
        sys
    }
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let (gen_class, n_classes) = generator_classes(&matrix);
        CoxeterSystem {
            matrix,
            gen_class,
            n_classes,
            memo: RwLock::new(Memo::default()),
            memo_cap: None,
            labels: RwLock::new(HashMap::new()),
        }
    }

    /// Caps the number of memo entries; the whole memo is cleared when exceeded.
    pub fn with_memo_cap(mut self, cap: usize) -> Self {
        self.memo_cap = Some(cap);
        self
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Index of the conjugacy class of generator `s` (components of the odd-bond graph).
    pub fn generator_class(&self, s: u8) -> usize {
        self.gen_class[usize::from(s)]
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn generator_classes(&self) -> Vec<GeneratorSet> {
        (0..self.n_classes)
            .map(|c| (0..self.rank() as u8).filter(|&s| self.generator_class(s) == c).collect())
            .collect()
    }

    pub fn all_generators(&self) -> GeneratorSet {
        GeneratorSet::all(self.rank())
    }

    /// Validated generator subset.
    pub fn subset(&self, indices: &[usize]) -> Result<GeneratorSet> {
        for &i in indices {
            self.check_index(i)?;
        }
        Ok(indices.iter().map(|&i| i as u8).collect())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    pub fn generator(&self, s: u8) -> Element {
        Element::from_normal_word(vec![s])
    }

    // ----- word problem -------------------------------------------------

    /// ShortLex-least reduced word of the element represented by `word`.
    pub fn normalize(&self, word: &[usize]) -> Result<Element> {
        for &i in word {
            self.check_index(i)?;
        }
        let w: Vec<u8> = word.iter().map(|&i| i as u8).collect();
        Ok(self.normalize_word(&w))
    }

    pub(crate) fn normalize_word(&self, word: &[u8]) -> Element {
        if let Some(e) = self.memo.read().unwrap().words.get(word) {
            return e.clone();
        }
        let mut cur = Element::identity();
        for &s in word {
            cur = self.rmul_gen(&cur, s);
        }
        self.store_word(word.to_vec(), cur.clone());
        cur
    }

    fn store_word(&self, word: Vec<u8>, e: Element) {
        let mut memo = self.memo.write().unwrap();
        memo.words.insert(word, e);
        self.enforce_cap(&mut memo);
    }

    fn enforce_cap(&self, memo: &mut Memo) {
        if let Some(cap) = self.memo_cap {
            if memo.size() > cap {
                memo.words.clear();
                memo.reduced.clear();
            }
        }
    }

    /// All reduced words of `u`, ShortLex-sorted.
    pub fn reduced_words(&self, u: &Element) -> Arc<Vec<Vec<u8>>> {
        if let Some(r) = self.memo.read().unwrap().reduced.get(u.word()) {
            return r.clone();
        }
        let words = Arc::new(self.braid_closure(vec![u.word().to_vec()]));
        let mut memo = self.memo.write().unwrap();
        memo.reduced.insert(u.word().to_vec(), words.clone());
        self.enforce_cap(&mut memo);
        words
    }

    /// Closure of a set of words under braid moves, sorted ShortLex.
    pub(crate) fn braid_closure(&self, start: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
        let mut seen: HashSet<Vec<u8>> = start.iter().cloned().collect();
        let mut stack = start;
        while let Some(w) = stack.pop() {
            for i in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[i], w[i + 1]);
                if a == b {
                    continue;
                }
                let Some(m) = self.matrix.get(a.into(), b.into()).finite() else { continue };
                let m = m as usize;
                if i + m > w.len() {
                    continue;
                }
                let alternates = (0..m).all(|k| w[i + k] == if k % 2 == 0 { a } else { b });
                if !alternates {
                    continue;
                }
                let mut nw = w.clone();
                for k in 0..m {
                    nw[i + k] = if k % 2 == 0 { b } else { a };
                }
                if seen.insert(nw.clone()) {
                    stack.push(nw);
                }
            }
        }
        let mut out: Vec<Vec<u8>> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// `u·s`.
    pub fn rmul_gen(&self, u: &Element, s: u8) -> Element {
        let mut key = u.word().to_vec();
        key.push(s);
        if let Some(e) = self.memo.read().unwrap().words.get(&key) {
            return e.clone();
        }
        let rw = self.reduced_words(u);
        let shorter: Vec<Vec<u8>> = rw
            .iter()
            .filter(|w| w.last() == Some(&s))
            .map(|w| w[..w.len() - 1].to_vec())
            .collect();
        let words = if shorter.is_empty() {
            let seeds = rw
                .iter()
                .map(|w| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
                .collect();
            self.braid_closure(seeds)
        } else {
            let mut v = shorter;
            v.sort();
            v
        };
        let result = Element::from_normal_word(words[0].clone());
        let mut memo = self.memo.write().unwrap();
        memo.reduced.entry(words[0].clone()).or_insert_with(|| Arc::new(words));
        memo.words.insert(key, result.clone());
        self.enforce_cap(&mut memo);
        result
    }

    /// `s·u`.
    pub fn lmul_gen(&self, s: u8, u: &Element) -> Element {
        self.inverse(&self.rmul_gen(&self.inverse(u), s))
    }

    pub fn multiply(&self, u: &Element, v: &Element) -> Element {
        v.word().iter().fold(u.clone(), |acc, &s| self.rmul_gen(&acc, s))
    }

    pub fn inverse(&self, u: &Element) -> Element {
        let rw = self.reduced_words(u);
        let best = rw
            .iter()
            .map(|w| w.iter().rev().copied().collect::<Vec<u8>>())
            .min()
            .unwrap_or_default();
        Element::from_normal_word(best)
    }

    /// `s·u·s`.
    pub fn conjugate_gen(&self, s: u8, u: &Element) -> Element {
        self.lmul_gen(s, &self.rmul_gen(u, s))
    }

    /// `x·u·x⁻¹`.
    pub fn conjugate(&self, x: &Element, u: &Element) -> Element {
        self.multiply(&self.multiply(x, u), &self.inverse(x))
    }

    // ----- descents, support, cosets --------------------------------------

    pub fn has_descent(&self, u: &Element, s: u8, side: Side) -> bool {
        let rw = self.reduced_words(u);
        match side {
            Side::Left => rw.iter().any(|w| w.first() == Some(&s)),
            Side::Right => rw.iter().any(|w| w.last() == Some(&s)),
        }
    }

    pub fn descents(&self, u: &Element, side: Side) -> GeneratorSet {
        let rw = self.reduced_words(u);
        rw.iter()
            .filter_map(|w| match side {
                Side::Left => w.first().copied(),
                Side::Right => w.last().copied(),
            })
            .collect()
    }

    pub fn support(&self, u: &Element) -> GeneratorSet {
        u.word().iter().copied().collect()
    }

    /// Minimal element of `W_J·w`, `w·W_J` or `W_J·w·W_J`.
    pub fn min_coset_rep(&self, j: &GeneratorSet, w: &Element, side: CosetSide) -> Element {
        let mut cur = w.clone();
        loop {
            let left = matches!(side, CosetSide::Left | CosetSide::Double)
                .then(|| j.iter().find(|&s| self.has_descent(&cur, s, Side::Left)))
                .flatten();
            if let Some(s) = left {
                cur = self.lmul_gen(s, &cur);
                continue;
            }
            let right = matches!(side, CosetSide::Right | CosetSide::Double)
                .then(|| j.iter().find(|&s| self.has_descent(&cur, s, Side::Right)))
                .flatten();
            match right {
                Some(s) => cur = self.rmul_gen(&cur, s),
                None => return cur,
            }
        }
    }

    /// `w = y·x` with `y ∈ W_J`, `x ∈ ^J W` and `ℓ(w) = ℓ(y) + ℓ(x)`.
    pub fn left_coset_factorization(&self, j: &GeneratorSet, w: &Element) -> (Element, Element) {
        let x = self.min_coset_rep(j, w, CosetSide::Left);
        let y = self.multiply(w, &self.inverse(&x));
        (y, x)
    }

    /// Connected components of the diagram restricted to `J`, ascending.
    pub fn irreducible_components(&self, j: &GeneratorSet) -> Vec<GeneratorSet> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for s in j.iter() {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(a) = stack.pop() {
                for b in j.iter() {
                    if a != b && self.matrix.get(a.into(), b.into()).is_edge() && seen.insert(b) {
                        comp.push(b);
                        stack.push(b);
                    }
                }
            }
            out.push(GeneratorSet::from_indices(comp));
        }
        out
    }

    pub fn is_irreducible(&self, j: &GeneratorSet) -> bool {
        self.irreducible_components(j).len() <= 1
    }

    /// `{ s ∈ S∖J : m(s, j) = 2 for all j ∈ J }`.
    pub fn perp(&self, j: &GeneratorSet) -> GeneratorSet {
        (0..self.rank() as u8)
            .filter(|&s| !j.contains(s) && j.iter().all(|t| self.matrix.commute(s.into(), t.into())))
            .collect()
    }

    /// Classification label of each irreducible component of `J`.
    pub fn classify_subset(&self, j: &GeneratorSet) -> Vec<(GeneratorSet, SubsetKind)> {
        if let Some(v) = self.labels.read().unwrap().get(j) {
            return v.clone();
        }
        let v: Vec<_> = self
            .irreducible_components(j)
            .into_iter()
            .map(|c| {
                let k = classify_component(&self.matrix, c.members());
                (c, k)
            })
            .collect();
        self.labels.write().unwrap().insert(j.clone(), v.clone());
        v
    }

    pub fn is_spherical(&self, j: &GeneratorSet) -> bool {
        self.classify_subset(j).iter().all(|(_, k)| *k == SubsetKind::Spherical)
    }

    pub fn is_finite(&self) -> bool {
        self.is_spherical(&self.all_generators())
    }

    /// Kind of an irreducible subset; `∅` counts as spherical.
    pub fn kind_of_irreducible(&self, j: &GeneratorSet) -> Result<SubsetKind> {
        match self.classify_subset(j).as_slice() {
            [] => Ok(SubsetKind::Spherical),
            [(_, k)] => Ok(*k),
            _ => Err(Error::NotIrreducible),
        }
    }

    /// Longest element of a finite parabolic subgroup.
    pub fn longest_element(&self, j: &GeneratorSet) -> Result<Element> {
        if !self.is_spherical(j) {
            return Err(Error::NotSpherical);
        }
        let mut w = Element::identity();
        while let Some(s) = j.iter().find(|&s| !self.has_descent(&w, s, Side::Right)) {
            w = self.rmul_gen(&w, s);
        }
        Ok(w)
    }

    /// `{ s ∈ J : w s w⁻¹ ∈ J }`.
    pub fn k_of(&self, j: &GeneratorSet, w: &Element) -> GeneratorSet {
        j.iter()
            .filter(|&s| {
                let c = self.conjugate(w, &self.generator(s));
                c.len() == 1 && j.contains(c.word()[0])
            })
            .collect()
    }

    /// System with one more generator commuting with `J` and of infinite
    /// order against every other generator. The new generator has index `rank`.
    pub fn extend_with_infinite_generator(&self, j: &GeneratorSet) -> CoxeterSystem {
        let n = self.rank();
        let mut rows = self.matrix.rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row.push(if j.contains(i as u8) { 2 } else { 0 });
        }
        let mut last: Vec<i64> = (0..n).map(|i| if j.contains(i as u8) { 2 } else { 0 }).collect();
        last.push(1);
        rows.push(last);
        let mut sys = CoxeterSystem::new(CoxeterMatrix::new(rows).expect("extension stays valid"));
        sys.memo_cap = self.memo_cap;
        sys
    }

    // ----- enumeration ----------------------------------------------------

    /// All elements of length `≤ radius`, ShortLex-sorted.
    pub fn ball(&self, radius: usize, budget: usize) -> Result<Vec<Element>> {
        self.parabolic_ball(&self.all_generators(), radius, budget)
    }

    /// All elements of `W_J` of length `≤ radius`, ShortLex-sorted.
    pub fn parabolic_ball(&self, j: &GeneratorSet, radius: usize, budget: usize) -> Result<Vec<Element>> {
        let mut out = vec![Element::identity()];
        let mut level = vec![Element::identity()];
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for u in &level {
                for s in j.iter() {
                    if !self.has_descent(u, s, Side::Right) {
                        next.insert(self.rmul_gen(u, s));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next.into_iter().collect();
            out.extend(level.iter().cloned());
            if out.len() > budget {
                return Err(Error::ResourceLimit { phase: "ball".into(), budget });
            }
        }
        Ok(out)
    }

    /// Every element of a finite parabolic subgroup.
    pub fn parabolic_elements(&self, j: &GeneratorSet, budget: usize) -> Result<Vec<Element>> {
        let w0 = self.longest_element(j)?;
        self.parabolic_ball(j, w0.len(), budget)
    }

    // ----- memo import/export (for persistent caches) -----------------------

    /// Snapshot of the word memo, sorted by key.
    pub fn memo_entries(&self) -> Vec<(Vec<u8>, Vec<u8>)> {
        let memo = self.memo.read().unwrap();
        let mut v: Vec<_> = memo.words.iter().map(|(k, e)| (k.clone(), e.word().to_vec())).collect();
        v.sort();
        v
    }

    /// Seeds the word memo. Entries must come from a system with the same matrix.
    pub fn seed_memo(&self, entries: Vec<(Vec<u8>, Vec<u8>)>) {
        let mut memo = self.memo.write().unwrap();
        for (k, v) in entries {
            memo.words.insert(k, Element::from_normal_word(v));
        }
        self.enforce_cap(&mut memo);
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().size()
    }
}

fn generator_classes(m: &CoxeterMatrix) -> (Vec<usize>, usize) {
    let n = m.rank();
    let mut class = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if class[start] != usize::MAX {
            continue;
        }
        class[start] = next;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for b in 0..n {
                let odd = m.get(a, b).finite().is_some_and(|x| x % 2 == 1 && x > 1);
                if odd && class[b] == usize::MAX {
                    class[b] = next;
                    stack.push(b);
                }
            }
        }
        next += 1;
    }
    (class, next)
}
