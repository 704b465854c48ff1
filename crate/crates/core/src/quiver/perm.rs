use crate::error::QuiverError;

use super::{ArrowIdx, Quiver};

/// A bijection on the arrows of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrowPermutation {
    map: Vec<ArrowIdx>,
}

impl ArrowPermutation {
    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).map(ArrowIdx).collect(),
        }
    }

    pub fn from_map(map: Vec<ArrowIdx>) -> Result<Self, QuiverError> {
        let mut hit = vec![false; map.len()];
        for a in &map {
            if a.0 >= map.len() || std::mem::replace(&mut hit[a.0], true) {
                return Err(QuiverError::NotBijection(format!(
                    "index {} repeated or out of range",
                    a.0
                )));
            }
        }
        Ok(Self { map })
    }

    /// Builds from disjoint cycles of arrow identifiers. Arrows not mentioned
    /// are an error: the domain must be the full arrow set.
    pub fn from_cycles<S: AsRef<str>>(q: &Quiver, cycles: &[Vec<S>]) -> Result<Self, QuiverError> {
        let mut map: Vec<Option<ArrowIdx>> = vec![None; q.arrow_count()];
        for cycle in cycles {
            let idx = cycle
                .iter()
                .map(|s| q.require_arrow(s.as_ref()))
                .collect::<Result<Vec<_>, _>>()?;
            if idx.is_empty() {
                return Err(QuiverError::NotBijection("empty cycle".into()));
            }
            for (k, &a) in idx.iter().enumerate() {
                if map[a.0].is_some() {
                    return Err(QuiverError::NotBijection(format!("`{}` appears twice", q.arrow_id(a))));
                }
                map[a.0] = Some(idx[(k + 1) % idx.len()]);
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(k, a)| {
                a.ok_or_else(|| QuiverError::NotBijection(format!("`{}` is not covered", q.arrow_id(ArrowIdx(k)))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_map(map)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, a: ArrowIdx) -> ArrowIdx {
        self.map[a.0]
    }

    pub fn pow(&self, a: ArrowIdx, k: usize) -> ArrowIdx {
        (0..k).fold(a, |x, _| self.apply(x))
    }

    pub fn as_slice(&self) -> &[ArrowIdx] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![ArrowIdx(0); self.map.len()];
        for (k, a) in self.map.iter().enumerate() {
            inv[a.0] = ArrowIdx(k);
        }
        Self { map: inv }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            map: other.map.iter().map(|&a| self.apply(a)).collect(),
        }
    }

    /// Disjoint cycles. Each cycle starts at its least element under `key`,
    /// and cycles are ordered by that starting element.
    pub fn cycles_by<K: Ord>(&self, key: impl Fn(ArrowIdx) -> K) -> Vec<Vec<ArrowIdx>> {
        let mut seen = vec![false; self.map.len()];
        let mut cycles = Vec::new();
        for k in 0..self.map.len() {
            if seen[k] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut a = ArrowIdx(k);
            while !seen[a.0] {
                seen[a.0] = true;
                cyc.push(a);
                a = self.apply(a);
            }
            let start = (0..cyc.len()).min_by_key(|&i| key(cyc[i])).unwrap_or(0);
            cyc.rotate_left(start);
            cycles.push(cyc);
        }
        cycles.sort_by(|x, y| key(x[0]).cmp(&key(y[0])));
        cycles
    }

    /// Cycles keyed by arrow identifier.
    pub fn cycles(&self, q: &Quiver) -> Vec<Vec<ArrowIdx>> {
        self.cycles_by(|a| q.arrow_rank(a))
    }

    /// Cycles as sets of identifiers, each sorted, the list sorted; used to
    /// compare orbit partitions across permutations.
    pub fn orbit_partition(&self, q: &Quiver) -> Vec<Vec<String>> {
        let mut parts: Vec<Vec<String>> = self
            .cycles(q)
            .into_iter()
            .map(|c| {
                let mut ids: Vec<String> = c.iter().map(|&a| q.arrow_id(a).to_string()).collect();
                ids.sort();
                ids
            })
            .collect();
        parts.sort();
        parts
    }

    pub fn cycles_as_ids(&self, q: &Quiver) -> Vec<Vec<String>> {
        self.cycles(q)
            .into_iter()
            .map(|c| c.iter().map(|&a| q.arrow_id(a).to_string()).collect())
            .collect()
    }
}
