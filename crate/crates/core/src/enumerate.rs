//! Exhaustive enumeration of crystal elements, paths and compositions.

use crate::crystal::{CrystalElement, Path};

/// All elements of B^{>=floor+1}_l for rank n, in lexicographic order of occupancy.
pub fn elements(n: usize, l: u32, floor: usize) -> Vec<CrystalElement> {
    let w = n + 1 - floor;
    let mut out = Vec::new();
    let mut cur = vec![0u32; w];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    let mut raw = Vec::new();
    rec(0, l, &mut cur, &mut raw);
    for loc in raw {
        let mut x = vec![0; floor];
        x.extend(loc);
        out.push(CrystalElement::from_occupancy(n, x, floor).expect("valid element"));
    }
    out
}

/// Every path in B_{caps_1} ⊗ ... ⊗ B_{caps_L}.
pub fn paths(n: usize, caps: &[u32], floor: usize) -> Vec<Path> {
    let per: Vec<Vec<CrystalElement>> = caps.iter().map(|&l| elements(n, l, floor)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(caps.len());
    fn rec(per: &[Vec<CrystalElement>], cur: &mut Vec<CrystalElement>, out: &mut Vec<Vec<CrystalElement>>) {
        if cur.len() == per.len() {
            out.push(cur.clone());
            return;
        }
        for b in &per[cur.len()] {
            cur.push(b.clone());
            rec(per, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&per, &mut cur, &mut raw);
    for f in raw {
        out.push(Path::new(n, floor, f).expect("valid path"));
    }
    out
}

/// Highest paths in B_{caps_1} ⊗ ... ⊗ B_{caps_L} (floor 0), built left to right:
/// a prefix of a highest path is highest, and p ⊗ b stays highest iff
/// ε_i(b) <= φ_i(p) for every classical i.
pub fn highest_paths(n: usize, caps: &[u32]) -> Vec<Path> {
    let per: Vec<Vec<CrystalElement>> = caps.iter().map(|&l| elements(n, l, 0)).collect();
    let mut out = Vec::new();
    let mut cur: Vec<CrystalElement> = Vec::new();
    let phi0 = vec![0u32; n + 1];
    fn rec(n: usize, per: &[Vec<CrystalElement>], phi: &[u32], cur: &mut Vec<CrystalElement>, out: &mut Vec<Path>) {
        if cur.len() == per.len() {
            out.push(Path::new(n, 0, cur.clone()).expect("valid path"));
            return;
        }
        'next: for b in &per[cur.len()] {
            let mut nphi = phi.to_vec();
            for i in 1..=n {
                let (eb, pb) = (b.epsilon(i), b.phi(i));
                if eb > phi[i] {
                    continue 'next;
                }
                nphi[i] = pb + phi[i] - eb;
            }
            cur.push(b.clone());
            rec(n, per, &nphi, cur, out);
            cur.pop();
        }
    }
    rec(n, &per, &phi0, &mut cur, &mut out);
    out
}

/// Compositions of `total` into positive parts.
pub fn compositions(total: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partitions of `total` with parts at most `max_part`, weakly decreasing.
pub fn partitions(total: u32, max_part: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(total)).rev() {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
