use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Vertex;

/// A sequence listing each vertex of some vertex set exactly once.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ordering(Vec<Vertex>);

impl Ordering {
    pub fn new(seq: Vec<Vertex>) -> Result<Self> {
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotAnOrdering(format!("{} appears twice", w[0])));
        }
        Ok(Ordering(seq))
    }

    /// Checks that `seq` is a permutation of `vertices`.
    pub fn of(vertices: &[Vertex], seq: Vec<Vertex>) -> Result<Self> {
        let mut a = vertices.to_vec();
        let mut b = seq.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(Error::NotAnOrdering(format!("{seq:?} does not permute {vertices:?}")));
        }
        Ok(Ordering(seq))
    }

    pub(crate) fn from_vec_unchecked(seq: Vec<Vertex>) -> Self {
        Ordering(seq)
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    /// π - a.
    pub fn remove(&self, a: Vertex) -> Ordering {
        Ordering(self.0.iter().copied().filter(|&x| x != a).collect())
    }

    /// π_{a -> m}.
    pub fn substitute(&self, a: Vertex, m: Vertex) -> Ordering {
        Ordering(self.0.iter().map(|&x| if x == a { m } else { x }).collect())
    }

    /// Inserts `a` so that it lands at position `gap` (0 = front).
    pub fn insert_at(&self, gap: usize, a: Vertex) -> Ordering {
        let mut v = self.0.clone();
        v.insert(gap, a);
        Ordering(v)
    }

    /// L(π): image under a relabelling; labels missing from `map` are kept.
    pub fn map(&self, map: &BTreeMap<Vertex, Vertex>) -> Ordering {
        Ordering(self.0.iter().map(|x| map.get(x).copied().unwrap_or(*x)).collect())
    }

    /// Number of adjacent positions where the label increases.
    pub fn ascents(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] < w[1]).count()
    }
}

impl fmt::Debug for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
