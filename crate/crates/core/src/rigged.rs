//! Rigged configurations, vacancy numbers and charge.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One row of a colored partition together with its rigging.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, i64)", into = "(u32, i64)")]
pub struct Row {
    pub len: u32,
    pub rig: i64,
}

impl Row {
    pub fn new(len: u32, rig: i64) -> Self {
        Self { len, rig }
    }
}

impl From<(u32, i64)> for Row {
    fn from((len, rig): (u32, i64)) -> Self {
        Self { len, rig }
    }
}

impl From<Row> for (u32, i64) {
    fn from(r: Row) -> Self {
        (r.len, r.rig)
    }
}

/// Quantum space μ^(0) (an ordered sequence) plus colored rigged partitions
/// (μ^(a), r^(a)) for a = 1..=n. Colored rows are kept sorted by
/// (length desc, rigging desc) so that equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RcJson", into = "RcJson")]
pub struct RiggedConfig {
    n: usize,
    quantum: Vec<u32>,
    colors: Vec<Vec<Row>>,
}

#[derive(Serialize, Deserialize)]
struct RcJson {
    n: usize,
    quantum: Vec<u32>,
    colors: Vec<Vec<Row>>,
}

impl TryFrom<RcJson> for RiggedConfig {
    type Error = Error;
    fn try_from(j: RcJson) -> Result<Self> {
        RiggedConfig::new(j.n, j.quantum, j.colors)
    }
}

impl From<RiggedConfig> for RcJson {
    fn from(rc: RiggedConfig) -> Self {
        RcJson { n: rc.n, quantum: rc.quantum, colors: rc.colors }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    Restricted,
    UnrestrictedOnly,
    Invalid,
}

impl RiggedConfig {
    pub fn new(n: usize, quantum: Vec<u32>, mut colors: Vec<Vec<Row>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(0));
        }
        if colors.len() > n {
            return Err(Error::InvalidRc(format!("{} colors for rank {n}", colors.len())));
        }
        colors.resize(n, Vec::new());
        if quantum.contains(&0) || colors.iter().flatten().any(|r| r.len == 0) {
            return Err(Error::InvalidRc("rows must have positive length".into()));
        }
        for c in &mut colors {
            sort_canonical(c);
        }
        Ok(Self { n, quantum, colors })
    }

    /// Empty colored parts over the given quantum space.
    pub fn vacuum(n: usize, quantum: Vec<u32>) -> Result<Self> {
        Self::new(n, quantum, vec![])
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn quantum(&self) -> &[u32] {
        &self.quantum
    }

    /// Rows of color a (1-based), sorted by (length desc, rigging desc).
    pub fn color(&self, a: usize) -> &[Row] {
        &self.colors[a - 1]
    }

    pub fn colors(&self) -> &[Vec<Row>] {
        &self.colors
    }

    /// Lengths of μ^(a) for a = 0..=n+1 (empty for a = n+1).
    pub fn lengths(&self, a: usize) -> Vec<u32> {
        match a {
            0 => self.quantum.clone(),
            a if a <= self.n => self.colors[a - 1].iter().map(|r| r.len).collect(),
            _ => Vec::new(),
        }
    }

    pub fn vacancy(&self) -> VacancyTable {
        VacancyTable::new(&self.quantum, &self.colors)
    }

    pub fn validate(&self) -> Validity {
        let vac = self.vacancy();
        let mut restricted = true;
        for (a, rows) in self.colors.iter().enumerate() {
            for r in rows {
                let p = vac.p(a + 1, r.len);
                if r.rig > p {
                    return Validity::Invalid;
                }
                if r.rig < 0 {
                    restricted = false;
                }
            }
        }
        if restricted {
            Validity::Restricted
        } else {
            Validity::UnrestrictedOnly
        }
    }

    pub fn charge(&self) -> i64 {
        let mut c = 0i64;
        for a in 1..=self.n {
            let la = self.lengths(a);
            c += min_pair(&la, &la);
            if a < self.n {
                c -= min_pair(&la, &self.lengths(a + 1));
            }
        }
        c -= min_pair(&self.quantum, &self.lengths(1));
        c + self.colors.iter().flatten().map(|r| r.rig).sum::<i64>()
    }

    /// Concatenate quantum spaces; rows of `other` get their riggings shifted by
    /// the vacancy numbers of `self`, so the image path is the tensor product.
    pub fn concat(&self, other: &RiggedConfig) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Mismatch);
        }
        let vac = self.vacancy();
        let mut quantum = self.quantum.clone();
        quantum.extend_from_slice(&other.quantum);
        let colors = (0..self.n)
            .map(|a| {
                let mut rows = self.colors[a].clone();
                rows.extend(other.colors[a].iter().map(|r| Row::new(r.len, r.rig + vac.p(a + 1, r.len))));
                rows
            })
            .collect();
        Self::new(self.n, quantum, colors)
    }

    /// Rows of color a ordered by (length, rigging) ascending: the order in which
    /// they serve as a quantum space for the nested algebra.
    pub fn level_rows(&self, a: usize) -> Vec<Row> {
        let mut rows = self.colors[a - 1].clone();
        rows.sort();
        rows
    }

    /// (μ^(a), (μ^(a+1), r^(a+1)), ...): a configuration of rank n - a whose
    /// quantum space is μ^(a) in ascending (length, rigging) order.
    pub fn truncate(&self, a: usize) -> Result<Self> {
        if a == 0 {
            return Ok(self.clone());
        }
        if a >= self.n {
            return Err(Error::InvalidRc(format!("truncation level {a} for rank {}", self.n)));
        }
        let quantum = self.level_rows(a).iter().map(|r| r.len).collect();
        Self::new(self.n - a, quantum, self.colors[a..].to_vec())
    }

    /// Shift color-1 riggings by min(l, μ^(1)_i) (l = None means ∞): the action of T_l.
    pub fn evolve(&self, l: Option<u32>) -> Self {
        let mut out = self.clone();
        for r in &mut out.colors[0] {
            r.rig += l.map_or(r.len, |l| l.min(r.len)) as i64;
        }
        sort_canonical(&mut out.colors[0]);
        out
    }

    pub fn with_quantum(&self, quantum: Vec<u32>) -> Result<Self> {
        Self::new(self.n, quantum, self.colors.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub(crate) fn sort_canonical(rows: &mut [Row]) {
    rows.sort_by(|a, b| b.cmp(a));
}

/// min(λ, μ) = Σ_i Σ_j min(λ_i, μ_j).
pub fn min_pair(a: &[u32], b: &[u32]) -> i64 {
    a.iter().map(|&x| b.iter().map(|&y| x.min(y) as i64).sum::<i64>()).sum()
}

/// E^(a)_j for a = 0..=n+1 and the vacancy numbers p^(a)_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VacancyTable {
    n: usize,
    e: Vec<Vec<i64>>,
}

impl VacancyTable {
    pub fn new(quantum: &[u32], colors: &[Vec<Row>]) -> Self {
        let n = colors.len();
        let jmax = quantum.iter().chain(colors.iter().flatten().map(|r| &r.len)).copied().max().unwrap_or(0) as usize;
        let mut e = vec![vec![0i64; jmax + 1]; n + 2];
        let mut fill = |a: usize, lens: &mut dyn Iterator<Item = u32>| {
            // E_j = E_{j-1} + #{rows of length >= j}
            let mut at_least = vec![0i64; jmax + 2];
            for l in lens {
                at_least[l as usize] += 1;
            }
            for j in (1..=jmax).rev() {
                at_least[j] += at_least[j + 1];
            }
            for j in 1..=jmax {
                e[a][j] = e[a][j - 1] + at_least[j];
            }
        };
        fill(0, &mut quantum.iter().copied());
        for (a, rows) in colors.iter().enumerate() {
            fill(a + 1, &mut rows.iter().map(|r| r.len));
        }
        Self { n, e }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// E^(a)_j; constant for j beyond the longest row.
    pub fn e(&self, a: usize, j: u32) -> i64 {
        let row = &self.e[a];
        row[(j as usize).min(row.len() - 1)]
    }

    /// p^(a)_j = E^(a-1)_j - 2E^(a)_j + E^(a+1)_j.
    pub fn p(&self, a: usize, j: u32) -> i64 {
        self.e(a - 1, j) - 2 * self.e(a, j) + self.e(a + 1, j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_rc() -> RiggedConfig {
        RiggedConfig::new(
            3,
            vec![1; 14],
            vec![
                vec![Row::new(4, 0), Row::new(3, 2), Row::new(2, 3)],
                vec![Row::new(3, 1), Row::new(1, 0)],
                vec![Row::new(1, 0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn vacancy_example() {
        let v = example_rc().vacancy();
        assert_eq!((v.p(1, 4), v.p(1, 3), v.p(1, 2)), (0, 2, 5));
        assert_eq!((v.p(2, 3), v.p(2, 1)), (1, 0));
        assert_eq!(v.p(3, 1), 0);
        let empty = RiggedConfig::vacuum(2, vec![3, 1, 2]).unwrap().vacancy();
        for j in 1..5 {
            assert_eq!(empty.p(1, j), empty.e(0, j));
            assert_eq!(empty.p(2, j), 0);
        }
    }

    #[test]
    fn validity_and_charge() {
        let rc = example_rc();
        assert_eq!(rc.validate(), Validity::Restricted);
        assert_eq!(rc.charge(), -19);
        assert_eq!(RiggedConfig::vacuum(3, vec![2, 2]).unwrap().charge(), 0);
        let bad = RiggedConfig::new(1, vec![1, 1], vec![vec![Row::new(1, 1)]]).unwrap();
        assert_eq!(bad.vacancy().p(1, 1), 0);
        assert_eq!(bad.validate(), Validity::Invalid);
        let neg = RiggedConfig::new(1, vec![1, 1], vec![vec![Row::new(1, -1)]]).unwrap();
        assert_eq!(neg.validate(), Validity::UnrestrictedOnly);
        let evolved = rc.evolve(None);
        assert_eq!(evolved.charge(), rc.charge() + 9);
    }

    #[test]
    fn multiset_semantics() {
        let a = RiggedConfig::new(1, vec![1; 6], vec![vec![Row::new(1, 0), Row::new(2, 1), Row::new(1, 1)]]).unwrap();
        let b = RiggedConfig::new(1, vec![1; 6], vec![vec![Row::new(1, 1), Row::new(1, 0), Row::new(2, 1)]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn truncation() {
        let rc = example_rc();
        let t = rc.truncate(1).unwrap();
        assert_eq!(t.quantum(), &[2, 3, 4]);
        assert_eq!(t.color(1), &[Row::new(3, 1), Row::new(1, 0)]);
        assert_eq!(t.color(2), &[Row::new(1, 0)]);
        assert_eq!(rc.truncate(0).unwrap(), rc);
        assert_eq!(t.truncate(1).unwrap(), rc.truncate(2).unwrap());
        assert!(rc.truncate(3).is_err());
    }

    #[test]
    fn concat_with_vacuum() {
        let rc = example_rc();
        let tail = RiggedConfig::vacuum(3, vec![1; 3]).unwrap();
        let joined = rc.concat(&tail).unwrap();
        assert_eq!(joined.colors(), rc.colors());
        assert_eq!(joined.quantum().len(), 17);
        let empty = RiggedConfig::vacuum(3, vec![]).unwrap();
        assert_eq!(empty.concat(&rc).unwrap(), rc);
    }

    #[test]
    fn json_roundtrip() {
        let rc = example_rc();
        let s = rc.to_json();
        assert!(s.contains("\"colors\":[[[4,0],[3,2],[2,3]],[[3,1],[1,0]],[[1,0]]]"));
        assert_eq!(RiggedConfig::from_json(&s).unwrap(), rc);
        assert!(RiggedConfig::from_json(r#"{"n":1,"quantum":[0],"colors":[]}"#).is_err());
    }
}
