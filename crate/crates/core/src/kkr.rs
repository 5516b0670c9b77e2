//! The KKR bijection between rigged configurations and highest paths.

use crate::crystal::{CrystalElement, Path};
use crate::enumerate::partitions;
use crate::error::{Error, Result};
use crate::rigged::{RiggedConfig, Row, VacancyTable, Validity};

/// Box-removal map from a restricted configuration to a highest path.
///
/// Quantum rows are processed from the last to the first, so the first
/// processed row becomes the rightmost factor.
pub fn kkr_to_path(rc: &RiggedConfig) -> Result<Path> {
    if rc.validate() != Validity::Restricted {
        return Err(Error::InvalidRc("not a restricted rigged configuration".into()));
    }
    let n = rc.rank();
    let mut quantum = rc.quantum().to_vec();
    let mut colors: Vec<Vec<Row>> = rc.colors().to_vec();
    let mut factors = vec![None; quantum.len()];
    for k in (0..quantum.len()).rev() {
        let mut occ = vec![0u32; n + 1];
        while quantum[k] > 0 {
            let vac = VacancyTable::new(&quantum, &colors);
            let mut chosen: Vec<(usize, usize)> = Vec::new();
            let mut col = quantum[k];
            for a in 1..=n {
                // shortest singular row reaching column `col`
                let pick = colors[a - 1]
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r.len >= col && r.rig == vac.p(a, r.len))
                    .min_by_key(|(_, r)| r.len);
                match pick {
                    Some((i, r)) => {
                        col = r.len;
                        chosen.push((a, i));
                    }
                    None => break,
                }
            }
            occ[chosen.len()] += 1;
            quantum[k] -= 1;
            for &(a, i) in &chosen {
                colors[a - 1][i].len -= 1;
            }
            let vac = VacancyTable::new(&quantum, &colors);
            for &(a, i) in &chosen {
                let r = &mut colors[a - 1][i];
                if r.len > 0 {
                    r.rig = vac.p(a, r.len);
                }
            }
            for c in &mut colors {
                c.retain(|r| r.len > 0);
            }
        }
        factors[k] = Some(CrystalElement::from_occupancy(n, occ, 0)?);
    }
    Path::new(n, 0, factors.into_iter().map(|b| b.expect("filled")).collect())
}

/// Box-addition inverse: factors are read left to right, letters of each factor
/// from the largest down; letter j lengthens singular rows of colors j-1 down to 1,
/// each the longest not exceeding the one chosen at the color above.
pub fn kkr_from_path(p: &Path) -> Result<RiggedConfig> {
    if p.floor() != 0 {
        return Err(Error::Mismatch);
    }
    if !p.is_highest() {
        return Err(Error::NotHighest);
    }
    let n = p.rank();
    let mut quantum: Vec<u32> = Vec::with_capacity(p.len());
    let mut colors: Vec<Vec<Row>> = vec![Vec::new(); n];
    for b in p.factors() {
        quantum.push(0);
        let k = quantum.len() - 1;
        for &j in b.letters().iter().rev() {
            let vac = VacancyTable::new(&quantum, &colors);
            let mut grown: Vec<(usize, usize)> = Vec::new();
            let mut bound = u32::MAX;
            for a in (1..j as usize).rev() {
                let pick = colors[a - 1]
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r.len <= bound && r.rig == vac.p(a, r.len))
                    .max_by_key(|(_, r)| r.len)
                    .map(|(i, r)| (i, r.len));
                match pick {
                    Some((i, len)) => {
                        bound = len;
                        grown.push((a, i));
                    }
                    None => {
                        bound = 0;
                        colors[a - 1].push(Row::new(0, 0));
                        grown.push((a, colors[a - 1].len() - 1));
                    }
                }
            }
            quantum[k] += 1;
            for &(a, i) in &grown {
                colors[a - 1][i].len += 1;
            }
            let vac = VacancyTable::new(&quantum, &colors);
            for &(a, i) in &grown {
                let r = &mut colors[a - 1][i];
                r.rig = vac.p(a, r.len);
            }
        }
    }
    RiggedConfig::new(n, quantum, colors)
}

/// Every restricted configuration over `quantum` whose image has the given
/// letter content (weight[i] = number of letters i+1).
pub fn restricted_configs(n: usize, quantum: &[u32], weight: &[u32]) -> Vec<RiggedConfig> {
    // |μ^(a)| = number of letters > a
    let sizes: Vec<u32> = (1..=n).map(|a| weight[a..].iter().sum()).collect();
    let mut out = Vec::new();
    let mut shapes: Vec<Vec<u32>> = Vec::new();
    fn rec_shapes(n: usize, quantum: &[u32], sizes: &[u32], shapes: &mut Vec<Vec<u32>>, out: &mut Vec<RiggedConfig>) {
        let a = shapes.len();
        if a == n {
            let colors: Vec<Vec<Row>> = shapes.iter().map(|s| s.iter().map(|&l| Row::new(l, 0)).collect()).collect();
            let vac = VacancyTable::new(quantum, &colors);
            let ok = colors.iter().enumerate().all(|(a, rows)| rows.iter().all(|r| vac.p(a + 1, r.len) >= 0));
            if ok {
                rig_all(n, quantum, &colors, &vac, out);
            }
            return;
        }
        for part in partitions(sizes[a], sizes[a]) {
            shapes.push(part);
            rec_shapes(n, quantum, sizes, shapes, out);
            shapes.pop();
        }
    }
    rec_shapes(n, quantum, &sizes, &mut shapes, &mut out);
    out
}

// all rigging choices: rows of equal length carry a weakly increasing sequence in [0, p]
fn rig_all(n: usize, quantum: &[u32], shapes: &[Vec<Row>], vac: &VacancyTable, out: &mut Vec<RiggedConfig>) {
    let slots: Vec<(usize, usize, i64)> = shapes
        .iter()
        .enumerate()
        .flat_map(|(a, rows)| rows.iter().enumerate().map(move |(i, r)| (a, i, vac.p(a + 1, r.len))))
        .collect();
    let mut cur = shapes.to_vec();
    fn rec(
        idx: usize,
        slots: &[(usize, usize, i64)],
        cur: &mut Vec<Vec<Row>>,
        n: usize,
        quantum: &[u32],
        out: &mut Vec<RiggedConfig>,
    ) {
        if idx == slots.len() {
            out.push(RiggedConfig::new(n, quantum.to_vec(), cur.clone()).expect("valid"));
            return;
        }
        let (a, i, p) = slots[idx];
        // rows sorted by length desc; equal-length neighbours get nonincreasing riggings
        let upper = if i > 0 && cur[a][i - 1].len == cur[a][i].len { cur[a][i - 1].rig } else { p };
        for r in 0..=upper {
            cur[a][i].rig = r;
            rec(idx + 1, slots, cur, n, quantum, out);
        }
    }
    rec(0, &slots, &mut cur, n, quantum, out);
}

/// Oracle for `kkr_from_path`: search all restricted configurations of the right content.
pub fn kkr_from_path_bruteforce(p: &Path) -> Result<RiggedConfig> {
    if !p.is_highest() {
        return Err(Error::NotHighest);
    }
    let caps = p.capacities();
    restricted_configs(p.rank(), &caps, &p.weight())
        .into_iter()
        .find(|rc| kkr_to_path(rc).as_ref() == Ok(p))
        .ok_or(Error::NotHighest)
}

/// The staircase vacuum (12..n)^{M_n} ⊗ ... ⊗ (12)^{M_2} ⊗ 1^{M_1} as single boxes,
/// together with L_a = Σ_{b>a} (b-a) M_b for a = 0..=n.
pub fn vacuum_prefix(n: usize, m: &[u32]) -> Result<(Path, Vec<u32>)> {
    if m.len() != n {
        return Err(Error::InvalidRc(format!("expected {n} multiplicities, got {}", m.len())));
    }
    let mut factors = Vec::new();
    for b in (1..=n).rev() {
        for _ in 0..m[b - 1] {
            for letter in 1..=b as u32 {
                factors.push(CrystalElement::from_letters(n, &[letter], 0)?);
            }
        }
    }
    let l = (0..=n).map(|a| (a + 1..=n).map(|b| (b - a) as u32 * m[b - 1]).sum()).collect();
    Ok((Path::new(n, 0, factors)?, l))
}

/// Default M_a = m_{a+1} + 1, with m_i the number of letters i in p.
pub fn default_multiplicities(p: &Path) -> Vec<u32> {
    let w = p.weight();
    (1..=p.rank()).map(|a| w[a] + 1).collect()
}

/// Rigged configuration of an arbitrary state. Paths with floor > 0 are first
/// lowered, so the result has rank n - floor.
pub fn unrestricted_from_path(p: &Path) -> Result<RiggedConfig> {
    let p = if p.floor() > 0 { p.lowered()? } else { p.clone() };
    unrestricted_with(&p, &default_multiplicities(&p))
}

/// Same with explicit M_1..M_n; fails when pvac ⊗ p is not highest.
pub fn unrestricted_with(p: &Path, m: &[u32]) -> Result<RiggedConfig> {
    let n = p.rank();
    let (pvac, l) = vacuum_prefix(n, m)?;
    let full = pvac.concat(p)?;
    let rc = kkr_from_path(&full)?;
    let colors = (1..=n)
        .map(|a| {
            let mut rows = rc.color(a).to_vec();
            let mut strip = l[a] as usize;
            rows.retain(|r| {
                if strip > 0 && *r == Row::new(1, 0) {
                    strip -= 1;
                    false
                } else {
                    true
                }
            });
            if strip > 0 {
                return Err(Error::InvalidRc(format!("color {a} lacks the vacuum rows")));
            }
            Ok(rows.into_iter().map(|r| Row::new(r.len, r.rig - m[a - 1] as i64)).collect())
        })
        .collect::<Result<Vec<Vec<Row>>>>()?;
    RiggedConfig::new(n, p.capacities(), colors)
}
