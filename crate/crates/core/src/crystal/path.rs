use super::element::{check_rank, CrystalElement};
use crate::error::{Error, Result};
use std::fmt;

/// A tensor product p_1 ⊗ ... ⊗ p_L of row crystals sharing rank and floor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    n: usize,
    floor: usize,
    factors: Vec<CrystalElement>,
}

impl Path {
    pub fn new(n: usize, floor: usize, factors: Vec<CrystalElement>) -> Result<Self> {
        check_rank(n, floor)?;
        if factors.iter().any(|b| b.rank() != n || b.floor() != floor) {
            return Err(Error::Mismatch);
        }
        Ok(Self { n, floor, factors })
    }

    /// u_{λ_1} ⊗ ... ⊗ u_{λ_L}.
    pub fn vacuum(n: usize, caps: &[u32], floor: usize) -> Result<Self> {
        let factors = caps.iter().map(|&l| CrystalElement::highest(n, l, floor)).collect::<Result<_>>()?;
        Self::new(n, floor, factors)
    }

    /// Parse text such as "11112221322433" (a chain of single boxes) or
    /// "11 122 2 1333" / "344⊗2⊗13⊗24" (explicit factors). A text without any
    /// separator is read as single boxes.
    pub fn parse(n: usize, text: &str, floor: usize) -> Result<Self> {
        let text = text.trim();
        let is_sep = |c: char| c.is_whitespace() || matches!(c, '⊗' | ',' | '|');
        let factors = if text.contains(is_sep) {
            text.split(is_sep)
                .filter(|t| !t.is_empty())
                .map(|t| CrystalElement::parse_word(n, t, floor))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.chars().map(|c| CrystalElement::parse_word(n, &c.to_string(), floor)).collect::<Result<Vec<_>>>()?
        };
        Self::new(n, floor, factors)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn floor(&self) -> usize {
        self.floor
    }

    pub fn factors(&self) -> &[CrystalElement] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<CrystalElement> {
        self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn capacities(&self) -> Vec<u32> {
        self.factors.iter().map(|b| b.capacity()).collect()
    }

    pub fn balls(&self) -> u32 {
        self.factors.iter().map(|b| b.balls()).sum()
    }

    /// Number of occurrences of each letter 1..=n+1.
    pub fn weight(&self) -> Vec<u32> {
        let mut w = vec![0; self.n + 1];
        for b in &self.factors {
            for (acc, v) in w.iter_mut().zip(b.occupancy()) {
                *acc += v;
            }
        }
        w
    }

    pub fn prefix(&self, k: usize) -> Self {
        Self { n: self.n, floor: self.floor, factors: self.factors[..k].to_vec() }
    }

    pub fn concat(&self, other: &Path) -> Result<Self> {
        if self.n != other.n || self.floor != other.floor {
            return Err(Error::Mismatch);
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(Self { n: self.n, floor: self.floor, factors })
    }

    /// Append `count` vacuum factors of capacity `cap`.
    pub fn padded(&self, cap: u32, count: usize) -> Self {
        let mut factors = self.factors.clone();
        let u = CrystalElement::highest(self.n, cap, self.floor).expect("valid rank");
        factors.extend(std::iter::repeat_n(u, count));
        Self { n: self.n, floor: self.floor, factors }
    }

    pub fn lowered(&self) -> Result<Self> {
        if self.floor == self.n {
            return Err(Error::InvalidRank(0));
        }
        Ok(Self { n: self.n - self.floor, floor: 0, factors: self.factors.iter().map(|b| b.lowered()).collect() })
    }

    pub fn raised(&self, by: usize) -> Self {
        Self { n: self.n + by, floor: self.floor + by, factors: self.factors.iter().map(|b| b.raised(by)).collect() }
    }

    pub fn with_floor(&self, floor: usize) -> Result<Self> {
        let factors = self.factors.iter().map(|b| b.with_floor(floor)).collect::<Result<Vec<_>>>()?;
        Self::new(self.n, floor, factors)
    }

    pub fn sigma(&self) -> Result<Self> {
        let factors = self.factors.iter().map(|b| b.sigma()).collect::<Result<Vec<_>>>()?;
        Self::new(self.n, self.floor, factors)
    }

    // suffix[j] = (ε_i, φ_i) of p_j ⊗ ... ⊗ p_L
    fn suffix_signature(&self, i: usize) -> Vec<(u32, u32)> {
        let mut out = vec![(0u32, 0u32); self.factors.len() + 1];
        for j in (0..self.factors.len()).rev() {
            let (eb, pb) = (self.factors[j].epsilon(i), self.factors[j].phi(i));
            let (ec, pc) = out[j + 1];
            out[j] = (eb + ec.saturating_sub(pb), pc + pb.saturating_sub(ec));
        }
        out
    }

    pub fn epsilon(&self, i: usize) -> u32 {
        self.check_node(i);
        self.suffix_signature(i)[0].0
    }

    pub fn phi(&self, i: usize) -> u32 {
        self.check_node(i);
        self.suffix_signature(i)[0].1
    }

    fn check_node(&self, i: usize) {
        assert!(i >= self.floor && i <= self.n, "node {i} outside {}..={}", self.floor, self.n);
    }

    /// e_i by the tensor rule: act on the left factor when φ_i(b) >= ε_i(b').
    pub fn e(&self, i: usize) -> Option<Self> {
        self.act(i, true)
    }

    /// f_i by the tensor rule: act on the left factor when φ_i(b) > ε_i(b').
    pub fn f(&self, i: usize) -> Option<Self> {
        self.act(i, false)
    }

    fn act(&self, i: usize, raise: bool) -> Option<Self> {
        self.check_node(i);
        let sig = self.suffix_signature(i);
        for j in 0..self.factors.len() {
            let b = &self.factors[j];
            let rest_eps = sig[j + 1].0;
            let here = if raise { b.phi(i) >= rest_eps } else { b.phi(i) > rest_eps };
            if here {
                let nb = if raise { b.e(i) } else { b.f(i) }?;
                let mut factors = self.factors.clone();
                factors[j] = nb;
                return Some(Self { n: self.n, floor: self.floor, factors });
            }
        }
        None
    }

    /// Annihilated by e_i for every classical node floor+1..=n.
    pub fn is_highest(&self) -> bool {
        (self.floor + 1..=self.n).all(|i| self.suffix_signature(i)[0].0 == 0)
    }

    /// Text form: concatenated words, separated by spaces unless every factor is a single box.
    pub fn render(&self) -> String {
        self.render_with(if self.factors.iter().all(|b| b.capacity() == 1) { "" } else { " " })
    }

    pub fn render_with(&self, sep: &str) -> String {
        self.factors.iter().map(|b| b.word()).collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with("⊗"))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let p = Path::parse(3, "11112221322433", 0).unwrap();
        assert_eq!(p.len(), 14);
        assert_eq!(p.render(), "11112221322433");
        let q = Path::parse(3, "344⊗2⊗13⊗24", 0).unwrap();
        assert_eq!(q.capacities(), vec![3, 1, 2, 2]);
        assert_eq!(q.render(), "344 2 13 24");
        assert_eq!(Path::parse(3, &q.render(), 0).unwrap(), q);
    }

    #[test]
    fn highest_paths() {
        assert!(Path::parse(3, "11112221322433", 0).unwrap().is_highest());
        assert!(!Path::parse(3, "344⊗2⊗13⊗24", 0).unwrap().is_highest());
        assert!(Path::vacuum(3, &[2, 3, 1], 0).unwrap().is_highest());
        assert!(!Path::parse(2, "21", 0).unwrap().is_highest());
        assert!(Path::parse(2, "12", 0).unwrap().is_highest());
    }

    #[test]
    fn tensor_rule_inverse() {
        let p = Path::parse(2, "12 3 1 23", 0).unwrap();
        for i in 0..=2 {
            if let Some(q) = p.f(i) {
                assert_eq!(q.e(i).unwrap(), p);
            }
            if let Some(q) = p.e(i) {
                assert_eq!(q.f(i).unwrap(), p);
            }
        }
    }
}
