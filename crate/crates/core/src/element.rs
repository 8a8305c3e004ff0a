//! Group elements and generator subsets.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A group element stored as its ShortLex-least reduced word.
///
/// Values are only produced by [`CoxeterSystem`](crate::CoxeterSystem), so the
/// word is always the canonical one. `Ord` is ShortLex: length first, then
/// lexicographic on generator indices.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Element(Vec<u8>);

impl Element {
    pub fn identity() -> Self {
        Element(Vec::new())
    }

    pub(crate) fn from_normal_word(word: Vec<u8>) -> Self {
        Element(word)
    }

    pub fn word(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the identity, whose word is empty.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Word with generator indices widened, e.g. for display.
    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|&s| usize::from(s)).collect()
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub(crate) fn shortlex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// An ordered set of generator indices. Iteration is ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorSet(Vec<u8>);

impl GeneratorSet {
    pub fn empty() -> Self {
        GeneratorSet(Vec::new())
    }

    /// Builds a set; duplicates are collapsed. Range checking happens in
    /// [`CoxeterSystem::subset`](crate::CoxeterSystem::subset).
    pub fn from_indices<I: IntoIterator<Item = u8>>(it: I) -> Self {
        let mut v: Vec<u8> = it.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        GeneratorSet(v)
    }

    pub fn all(rank: usize) -> Self {
        GeneratorSet((0..rank as u8).collect())
    }

    pub fn contains(&self, s: u8) -> bool {
        self.0.binary_search(&s).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.0.iter().copied()
    }

    pub fn members(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the identity, whose word is empty.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &GeneratorSet) -> bool {
        self.0.iter().all(|&s| other.contains(s))
    }

    pub fn union(&self, other: &GeneratorSet) -> GeneratorSet {
        GeneratorSet::from_indices(self.iter().chain(other.iter()))
    }

    pub fn minus(&self, other: &GeneratorSet) -> GeneratorSet {
        GeneratorSet(self.iter().filter(|&s| !other.contains(s)).collect())
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<u8> for GeneratorSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        GeneratorSet::from_indices(iter)
    }
}
