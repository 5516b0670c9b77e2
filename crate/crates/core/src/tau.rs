//! Ultradiscrete tau functions on rigged configurations, the quadrant ball
//! count ρ of the evolution pattern, and the corner energies ℰ_i, ℰ∨_i.

use crate::bbs::{evolve_tl, Capacity};
use crate::crystal::{r_formula, CrystalElement, Path};
use crate::error::{Error, Result};
use crate::kkr::unrestricted_from_path;
use crate::rigged::{sort_canonical, RiggedConfig, Row};
use serde::Serialize;

/// Subsets per color beyond this are refused rather than enumerated.
pub const MAX_SUBSETS: usize = 1 << 22;

#[derive(Clone, Debug)]
struct Group {
    len: u32,
    rig: i64,
    mult: u32,
}

// Sub-multisets of one color, indexed in mixed radix over the distinct (length, rigging) groups.
#[derive(Clone, Debug)]
struct Subsets {
    groups: Vec<Group>,
    counts: Vec<Vec<u32>>,
    size: Vec<i64>,
    rigs: Vec<i64>,
    self_min: Vec<i64>,
}

impl Subsets {
    fn new(rows: &[Row]) -> Result<Self> {
        let mut groups: Vec<Group> = Vec::new();
        for r in rows {
            match groups.iter_mut().find(|g| g.len == r.len && g.rig == r.rig) {
                Some(g) => g.mult += 1,
                None => groups.push(Group { len: r.len, rig: r.rig, mult: 1 }),
            }
        }
        let total = groups
            .iter()
            .try_fold(1usize, |acc, g| acc.checked_mul(g.mult as usize + 1))
            .filter(|&t| t <= MAX_SUBSETS)
            .ok_or_else(|| Error::InvalidRc("too many sub-configurations to enumerate".into()))?;
        let mut counts = Vec::with_capacity(total);
        let mut cur = vec![0u32; groups.len()];
        for _ in 0..total {
            counts.push(cur.clone());
            for (c, g) in cur.iter_mut().zip(&groups) {
                if *c < g.mult {
                    *c += 1;
                    break;
                }
                *c = 0;
            }
        }
        let size = counts.iter().map(|c| dot(c, &groups, |g| g.len as i64)).collect();
        let rigs = counts.iter().map(|c| dot(c, &groups, |g| g.rig)).collect();
        let self_min = counts.iter().map(|c| cross(c, &groups, c, &groups)).collect();
        Ok(Self { groups, counts, size, rigs, self_min })
    }

    fn len(&self) -> usize {
        self.counts.len()
    }

    fn rows(&self, idx: usize) -> Vec<Row> {
        let mut out: Vec<Row> = self.counts[idx]
            .iter()
            .zip(&self.groups)
            .flat_map(|(&c, g)| std::iter::repeat_n(Row::new(g.len, g.rig), c as usize))
            .collect();
        sort_canonical(&mut out);
        out
    }
}

fn dot(c: &[u32], groups: &[Group], f: impl Fn(&Group) -> i64) -> i64 {
    c.iter().zip(groups).map(|(&k, g)| k as i64 * f(g)).sum()
}

fn cross(c: &[u32], g: &[Group], c2: &[u32], g2: &[Group]) -> i64 {
    let mut s = 0i64;
    for (a, ga) in c.iter().zip(g) {
        if *a == 0 {
            continue;
        }
        for (b, gb) in c2.iter().zip(g2) {
            s += (*a * *b) as i64 * ga.len.min(gb.len) as i64;
        }
    }
    s
}

fn min_with_lengths(lam: &[u32], c: &[u32], g: &[Group]) -> i64 {
    lam.iter().map(|&l| c.iter().zip(g).map(|(&k, gr)| k as i64 * l.min(gr.len) as i64).sum::<i64>()).sum()
}

/// A choice of sub-multisets ν^(1) ⊆ μ^(1), ..., ν^(n) ⊆ μ^(n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubsetChoice {
    pub parts: Vec<Vec<Row>>,
}

/// Evaluates τ^(a)_d by the recursion in the rank, memoized over all sub-multisets.
pub struct TauEngine {
    n: usize,
    subs: Vec<Subsets>,
    // f[a-1][d][idx] = τ^(a)_d(ν) for ν = subs[a-1][idx], d in a..=n+1
    f: Vec<Vec<Vec<i64>>>,
    quantum: Vec<u32>,
}

impl TauEngine {
    pub fn new(rc: &RiggedConfig) -> Result<Self> {
        let n = rc.rank();
        let subs = (1..=n).map(|a| Subsets::new(rc.color(a))).collect::<Result<Vec<_>>>()?;
        let mut f: Vec<Vec<Vec<i64>>> = vec![vec![]; n];
        // base level a = n
        let base = &subs[n - 1];
        let mut top = vec![vec![]; n + 2];
        top[n + 1] = vec![0; base.len()];
        top[n] = base.size.iter().map(|s| -s).collect();
        f[n - 1] = top;
        for a in (1..n).rev() {
            let (here, below) = (&subs[a - 1], &subs[a]);
            let mut level = vec![vec![]; n + 2];
            // per child: -min(ν',ν') - |s'|
            let child_const: Vec<i64> = (0..below.len()).map(|j| -below.self_min[j] - below.rigs[j]).collect();
            for d in a + 1..=n + 1 {
                let fd = &f[a][d];
                level[d] = (0..here.len())
                    .map(|i| {
                        (0..below.len())
                            .map(|j| {
                                cross(&here.counts[i], &here.groups, &below.counts[j], &below.groups)
                                    + child_const[j]
                                    + fd[j]
                            })
                            .max()
                            .expect("empty subset exists")
                    })
                    .collect();
            }
            level[a] = level[n + 1].iter().zip(&here.size).map(|(v, s)| v - s).collect();
            f[a - 1] = level;
        }
        Ok(Self { n, subs, f, quantum: rc.quantum().to_vec() })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    // objective of choosing child j (a sub-multiset of μ^(a+1)) under λ at level a
    fn child_score(&self, a: usize, d: usize, lam: &[u32], j: usize) -> i64 {
        let below = &self.subs[a];
        min_with_lengths(lam, &below.counts[j], &below.groups) - below.self_min[j] - below.rigs[j] + self.f[a][d][j]
    }

    /// τ^(a)_d(λ) for λ given by its row lengths; d in a..=n+1.
    pub fn eval(&self, a: usize, d: usize, lam: &[u32]) -> Result<i64> {
        if a > self.n || d < a || d > self.n + 1 {
            return Err(Error::InvalidRc(format!("tau index a={a}, d={d} for rank {}", self.n)));
        }
        let size: i64 = lam.iter().map(|&l| l as i64).sum();
        if d == a {
            return Ok(self.eval(a, self.n + 1, lam)? - size);
        }
        if a == self.n {
            return Ok(0);
        }
        Ok((0..self.subs[a].len()).map(|j| self.child_score(a, d, lam, j)).max().expect("nonempty"))
    }

    /// All chains (ν^(a+1), ..., ν^(n)) attaining τ^(a)_d(λ), as indices.
    fn argmax_chains(&self, a: usize, d: usize, lam: &[u32]) -> Vec<Vec<usize>> {
        let d = if d == a { self.n + 1 } else { d };
        if a == self.n {
            return vec![vec![]];
        }
        let scores: Vec<i64> = (0..self.subs[a].len()).map(|j| self.child_score(a, d, lam, j)).collect();
        let best = *scores.iter().max().expect("nonempty");
        let mut out = Vec::new();
        for (j, &s) in scores.iter().enumerate() {
            if s != best {
                continue;
            }
            let lens: Vec<u32> = self.subs[a].rows(j).iter().map(|r| r.len).collect();
            for mut tail in self.argmax_chains(a + 1, d, &lens) {
                tail.insert(0, j);
                out.push(tail);
            }
        }
        out
    }

    /// Every maximizing choice for τ_d(λ) at level 0.
    pub fn maximizers(&self, d: usize, lam: &[u32]) -> Vec<SubsetChoice> {
        let mut out: Vec<SubsetChoice> = self
            .argmax_chains(0, d, lam)
            .into_iter()
            .map(|chain| SubsetChoice { parts: chain.iter().enumerate().map(|(a, &j)| self.subs[a].rows(j)).collect() })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn table(&self) -> TauTable {
        let n = self.n;
        let values = (0..=self.quantum.len())
            .map(|k| (0..=n + 1).map(|d| self.eval(0, d, &self.quantum[..k]).expect("valid index")).collect())
            .collect();
        TauTable { n, quantum: self.quantum.clone(), values }
    }
}

/// τ_{k,d} for k = 0..=L and d = 0..=n+1 (also used for ρ and ℰ tables).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauTable {
    pub n: usize,
    pub quantum: Vec<u32>,
    pub values: Vec<Vec<i64>>,
}

impl TauTable {
    pub fn get(&self, k: usize, d: usize) -> i64 {
        self.values[k][d]
    }

    pub fn len(&self) -> usize {
        self.quantum.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quantum.is_empty()
    }

    /// Rows d = 1..=n+1, columns k = 1..=L.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("d\\k");
        for k in 1..=self.len() {
            s += &format!(",{k}");
        }
        s.push('\n');
        for d in 1..=self.n + 1 {
            s += &d.to_string();
            for k in 1..=self.len() {
                s += &format!(",{}", self.get(k, d));
            }
            s.push('\n');
        }
        s
    }

    pub fn to_text(&self) -> String {
        let width = self.values.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        let mut s = String::new();
        for d in 1..=self.n + 1 {
            s += &format!("{d}:");
            for k in 1..=self.len() {
                s += &format!(" {:>width$}", self.get(k, d));
            }
            s.push('\n');
        }
        s
    }

    /// Index-wise comparison over k = 1..=L, d = 1..=n+1.
    pub fn first_difference(&self, other: &TauTable) -> Option<(usize, usize, i64, i64)> {
        for k in 1..=self.len().min(other.len()) {
            for d in 1..=self.n + 1 {
                if self.get(k, d) != other.get(k, d) {
                    return Some((k, d, self.get(k, d), other.get(k, d)));
                }
            }
        }
        None
    }
}

/// Direct maximization over all chains ν^(1), ..., ν^(n): the oracle for `TauEngine`.
pub fn tau_exhaustive(rc: &RiggedConfig, d: usize, lam: &[u32]) -> Result<i64> {
    let n = rc.rank();
    let subs = (1..=n).map(|a| Subsets::new(rc.color(a))).collect::<Result<Vec<_>>>()?;
    let lam_size: i64 = lam.iter().map(|&l| l as i64).sum();
    let mut idx = vec![0usize; n];
    let mut best = i64::MIN;
    loop {
        let mut v = min_with_lengths(lam, &subs[0].counts[idx[0]], &subs[0].groups);
        for a in 0..n {
            let s = &subs[a];
            v -= s.self_min[idx[a]] + s.rigs[idx[a]];
            if a + 1 < n {
                let t = &subs[a + 1];
                v += cross(&s.counts[idx[a]], &s.groups, &t.counts[idx[a + 1]], &t.groups);
            }
        }
        v -= match d {
            0 => lam_size,
            d if d <= n => subs[d - 1].size[idx[d - 1]],
            _ => 0,
        };
        best = best.max(v);
        // odometer
        let mut a = 0;
        loop {
            if a == n {
                return Ok(best);
            }
            idx[a] += 1;
            if idx[a] < subs[a].len() {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}

pub fn tau_table(rc: &RiggedConfig) -> Result<TauTable> {
    Ok(TauEngine::new(rc)?.table())
}

/// τ^(a)_d(λ); λ must be a sub-multiset of the lengths of μ^(a).
pub fn tau_eval(rc: &RiggedConfig, a: usize, d: usize, lam: &[u32]) -> Result<i64> {
    let mut pool = rc.lengths(a);
    for &l in lam {
        match pool.iter().position(|&x| x == l) {
            Some(i) => {
                pool.swap_remove(i);
            }
            None => return Err(Error::NotSubMultiset(format!("{lam:?} in color {a}"))),
        }
    }
    TauEngine::new(rc)?.eval(a, d, lam)
}

/// ρ_{k,d}: letters 2..=d in the first k boxes of p, plus every ball in the first
/// k boxes of T_∞^t(p) for t >= 1.
pub fn rho_table(p: &Path) -> Result<TauTable> {
    let n = p.rank();
    let len = p.len();
    let mut values = vec![vec![0i64; n + 2]; len + 1];
    // row t = 0
    for (k, b) in p.factors().iter().enumerate() {
        for d in 1..=n + 1 {
            let here: i64 = (2..=d).map(|c| b.count(c) as i64).sum();
            values[k + 1][d] = values[k][d] + here;
        }
    }
    // rows t >= 1; columns 1..t stay vacuum from row t on
    let mut row = p.clone();
    let mut quad = vec![0i64; len + 1];
    for t in 1..=len {
        row = evolve_tl(&row, Capacity::Infinite, false)?.state;
        let mut acc = 0i64;
        for k in 1..=len {
            acc += row.factors()[k - 1].balls() as i64;
            quad[k] += acc;
        }
        if row.factors()[..t].iter().all(|b| b.is_vacuum()) && row.balls() == 0 {
            break;
        }
    }
    let mut cap = 0i64;
    for k in 1..=len {
        cap += p.factors()[k - 1].capacity() as i64;
        for d in 1..=n + 1 {
            values[k][d] += quad[k];
        }
        values[k][0] = values[k][n + 1] - cap;
    }
    Ok(TauTable { n, quantum: p.capacities(), values })
}

pub fn rho_eval(p: &Path, k: usize, d: usize) -> Result<i64> {
    Ok(rho_table(p)?.get(k, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyVariant {
    /// ℰ_i = ℰ∨_i(u_∞ ⊗ p).
    Full,
    /// ℰ∨_i.
    Check,
}

/// ℰ∨_i(q_1 ⊗ ... ⊗ q_k) for every prefix, as rows over local index.
fn check_energy_prefixes(factors: &[CrystalElement]) -> Result<Vec<Vec<i64>>> {
    let w = factors.first().map_or(1, |b| b.width());
    let mut per_m = vec![vec![0i64; w]; factors.len()];
    for m in 0..factors.len() {
        let mut cur = factors[m].clone();
        for j in (0..m).rev() {
            let img = r_formula(&factors[j], &cur)?;
            for (acc, q) in per_m[m].iter_mut().zip(&img.q) {
                *acc += q;
            }
            cur = img.left;
        }
    }
    let mut out = vec![vec![0i64; w]];
    for row in per_m {
        let prev = out.last().expect("nonempty").clone();
        out.push(prev.iter().zip(&row).map(|(a, b)| a + b).collect());
    }
    Ok(out)
}

/// ℰ∨_i of a sequence of factors for a global index i (floor+1..=n+1).
pub fn check_energy(factors: &[CrystalElement], i: usize) -> Result<i64> {
    if factors.is_empty() {
        return Ok(0);
    }
    let floor = factors[0].floor();
    let w = factors[0].width() as i64;
    let local = (i as i64 - floor as i64).rem_euclid(w) as usize;
    Ok(check_energy_prefixes(factors)?.last().expect("nonempty")[local])
}

/// Capacity standing in for u_∞ in ℰ_i.
pub fn infinite_vacuum_capacity(p: &Path) -> u32 {
    p.balls() + p.capacities().into_iter().max().unwrap_or(0) + 1
}

/// ℰ_i or ℰ∨_i on every prefix, laid out like a tau table (column 0 = column n+1 - Σλ).
pub fn energy_table(p: &Path, variant: EnergyVariant) -> Result<TauTable> {
    energy_table_with(p, variant, infinite_vacuum_capacity(p))
}

pub fn energy_table_with(p: &Path, variant: EnergyVariant, l: u32) -> Result<TauTable> {
    let n = p.rank();
    let floor = p.floor();
    let mut factors = Vec::with_capacity(p.len() + 1);
    let offset = match variant {
        EnergyVariant::Full => {
            factors.push(CrystalElement::highest(n, l, floor)?);
            1
        }
        EnergyVariant::Check => 0,
    };
    factors.extend(p.factors().iter().cloned());
    let pre = check_energy_prefixes(&factors)?;
    let w = n + 1 - floor;
    let mut values = vec![vec![0i64; n + 2]; p.len() + 1];
    let mut cap = 0i64;
    for k in 0..=p.len() {
        if k > 0 {
            cap += p.factors()[k - 1].capacity() as i64;
        }
        for d in 1..=n + 1 {
            values[k][d] = pre[k + offset][(d + w - floor) % w];
        }
        values[k][0] = values[k][n + 1] - cap;
    }
    Ok(TauTable { n, quantum: p.capacities(), values })
}

pub fn corner_energy(p: &Path, i: usize, variant: EnergyVariant) -> Result<i64> {
    Ok(energy_table(p, variant)?.get(p.len(), i))
}

/// Path from second differences x_d = τ_{k,d} - τ_{k-1,d} - τ_{k,d-1} + τ_{k-1,d-1}.
pub fn reconstruct_path(t: &TauTable, quantum: &[u32]) -> Result<Path> {
    let n = t.n;
    if t.values.len() != quantum.len() + 1 {
        return Err(Error::InvalidTauTable("table length does not match the quantum space".into()));
    }
    let mut factors = Vec::with_capacity(quantum.len());
    for k in 1..=quantum.len() {
        let x: Vec<i64> =
            (1..=n + 1).map(|d| t.get(k, d) - t.get(k - 1, d) - t.get(k, d - 1) + t.get(k - 1, d - 1)).collect();
        if x.iter().any(|&v| v < 0) || x.iter().sum::<i64>() != quantum[k - 1] as i64 {
            return Err(Error::InvalidTauTable(format!("box {k}: second differences {x:?}")));
        }
        factors.push(CrystalElement::from_signed(n, &x, 0)?);
    }
    Path::new(n, 0, factors)
}

/// Outcome of comparing τ, ρ and ℰ on every prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub path: String,
    pub agree: bool,
    /// (which pair, k, i, left value, right value)
    pub counterexample: Option<(String, usize, usize, i64, i64)>,
}

pub fn verify_triple(p: &Path) -> Result<TripleReport> {
    let rc = unrestricted_from_path(p)?;
    let tau = tau_table(&rc)?;
    let rho = rho_table(p)?;
    let ene = energy_table(p, EnergyVariant::Full)?;
    let mut counterexample = None;
    for (name, other) in [("tau/rho", &rho), ("tau/energy", &ene)] {
        if let Some((k, i, a, b)) = tau.first_difference(other) {
            counterexample = Some((name.to_string(), k, i, a, b));
            break;
        }
    }
    Ok(TripleReport { path: p.render(), agree: counterexample.is_none(), counterexample })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilinearReport {
    pub holds: bool,
    /// (k, d) of the first failure; d = 1 marks the closure relation.
    pub failure: Option<(usize, usize)>,
}

/// τ̄_{k,d-1} + τ_{k-1,d} = max(τ̄_{k,d} + τ_{k-1,d-1}, τ̄_{k-1,d-1} + τ_{k,d} - λ_k) for
/// 2 <= d <= n+1, and τ_{k,1} = τ̄_{k,n+1}, with τ̄ taken after one step of T_∞.
pub fn bilinear_check(p: &Path) -> Result<BilinearReport> {
    let rc = unrestricted_from_path(p)?;
    let tau = tau_table(&rc)?;
    let bar = tau_table(&rc.evolve(None))?;
    Ok(bilinear_tables(&tau, &bar))
}

pub fn bilinear_tables(tau: &TauTable, bar: &TauTable) -> BilinearReport {
    let n = tau.n;
    for k in 1..=tau.len() {
        let lk = tau.quantum[k - 1] as i64;
        for d in 2..=n + 1 {
            let lhs = bar.get(k, d - 1) + tau.get(k - 1, d);
            let rhs = (bar.get(k, d) + tau.get(k - 1, d - 1)).max(bar.get(k - 1, d - 1) + tau.get(k, d) - lk);
            if lhs != rhs {
                return BilinearReport { holds: false, failure: Some((k, d)) };
            }
        }
        if tau.get(k, 1) != bar.get(k, n + 1) {
            return BilinearReport { holds: false, failure: Some((k, 1)) };
        }
    }
    BilinearReport { holds: true, failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kkr::kkr_to_path;

    fn example_rc() -> RiggedConfig {
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

    const TABLE: [[i64; 14]; 4] = [
        [0, 0, 0, 0, 0, 0, 0, 1, 2, 3, 4, 6, 8, 10],
        [0, 0, 0, 0, 1, 2, 3, 4, 5, 7, 9, 11, 13, 15],
        [0, 0, 0, 0, 1, 2, 3, 4, 6, 8, 10, 12, 15, 18],
        [0, 0, 0, 0, 1, 2, 3, 4, 6, 8, 10, 13, 16, 19],
    ];

    #[test]
    fn example_table() {
        let t = tau_table(&example_rc()).unwrap();
        for d in 1..=4 {
            for k in 1..=14 {
                assert_eq!(t.get(k, d), TABLE[d - 1][k - 1], "k={k} d={d}");
            }
        }
        for k in 0..=14 {
            assert_eq!(t.get(k, 0), t.get(k, 4) - k as i64);
        }
        let rc = example_rc();
        for d in 0..=4 {
            for k in [0, 3, 9, 14] {
                assert_eq!(tau_exhaustive(&rc, d, &rc.quantum()[..k]).unwrap(), t.get(k, d));
            }
        }
        assert_eq!(reconstruct_path(&t, rc.quantum()).unwrap(), kkr_to_path(&rc).unwrap());
    }

    fn choice(rc: &RiggedConfig, parts: [&[u32]; 3]) -> SubsetChoice {
        // pick rows by length; the example has distinct lengths per color
        let parts = parts
            .iter()
            .enumerate()
            .map(|(a, lens)| {
                let mut rows: Vec<Row> =
                    lens.iter().map(|&l| *rc.color(a + 1).iter().find(|r| r.len == l).unwrap()).collect();
                sort_canonical(&mut rows);
                rows
            })
            .collect();
        SubsetChoice { parts }
    }

    #[test]
    fn maximizer_progression() {
        let rc = example_rc();
        let a = vec![choice(&rc, [&[], &[], &[]])];
        let b = vec![choice(&rc, [&[4], &[], &[]]), choice(&rc, [&[4], &[1], &[]]), choice(&rc, [&[4], &[1], &[1]])];
        let c = vec![
            choice(&rc, [&[4, 2], &[3], &[]]),
            choice(&rc, [&[4, 2], &[1], &[]]),
            choice(&rc, [&[4, 2], &[3], &[1]]),
            choice(&rc, [&[4, 2], &[1], &[1]]),
            choice(&rc, [&[4, 2], &[3, 1], &[1]]),
        ];
        let d = vec![choice(&rc, [&[4, 3, 2], &[3, 1], &[1]])];
        let join = |x: &[SubsetChoice], y: &[SubsetChoice]| {
            let mut v = [x, y].concat();
            v.sort();
            v
        };
        let sorted = |x: &[SubsetChoice]| {
            let mut v = x.to_vec();
            v.sort();
            v
        };
        let expect = [
            sorted(&a),
            sorted(&a),
            sorted(&a),
            join(&a, &b),
            sorted(&b),
            sorted(&b),
            sorted(&b),
            join(&b, &c),
            sorted(&c),
            sorted(&c),
            join(&c, &d),
            sorted(&d),
            sorted(&d),
            sorted(&d),
        ];
        let eng = TauEngine::new(&rc).unwrap();
        for (k, want) in expect.iter().enumerate() {
            assert_eq!(&eng.maximizers(4, &rc.quantum()[..k + 1]), want, "k={}", k + 1);
        }
    }

    #[test]
    fn full_choice_is_charge() {
        let rc = example_rc();
        let t = tau_table(&rc).unwrap();
        for i in 1..=4 {
            let mu: i64 = rc.lengths(i).iter().map(|&l| l as i64).sum();
            assert_eq!(t.get(14, i), -rc.charge() - mu);
        }
    }

    #[test]
    fn sub_multiset_required() {
        let rc = example_rc();
        assert!(tau_eval(&rc, 1, 2, &[5]).is_err());
        assert_eq!(tau_eval(&rc, 1, 4, &[]).unwrap(), 0);
    }

    #[test]
    fn hatten_rho() {
        let p = Path::parse(3, "11 122 2 1333 1 1 4 1 1 1 1 1 1 1 1 1 1", 0).unwrap();
        let want = [
            [0, 0, 0, 3, 5, 7, 9, 12],
            [0, 2, 3, 6, 8, 10, 12, 15],
            [0, 2, 3, 9, 11, 13, 15, 18],
            [0, 2, 3, 9, 11, 13, 16, 19],
        ];
        let rho = rho_table(&p).unwrap();
        let ene = energy_table(&p, EnergyVariant::Full).unwrap();
        for d in 1..=4 {
            for k in 1..=8 {
                assert_eq!(rho.get(k, d), want[d - 1][k - 1], "rho k={k} d={d}");
                assert_eq!(ene.get(k, d), want[d - 1][k - 1], "energy k={k} d={d}");
            }
        }
    }
}
