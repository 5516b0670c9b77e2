use super::element::{AffineElement, CrystalElement};
use crate::error::{Error, Result};

/// Image of x ⊗ y under R, written ỹ ⊗ x̃, together with the energy and the
/// non-winding numbers Q_0..Q_{N-1} in local indexing (N = n+1-floor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RImage {
    pub left: CrystalElement,
    pub right: CrystalElement,
    pub energy: i64,
    pub q: Vec<i64>,
}

impl RImage {
    /// Q at a global index; indices are read modulo N after subtracting the floor,
    /// so for floor 0 both 0 and n+1 give Q_0.
    pub fn q_at(&self, i: usize) -> i64 {
        let floor = self.left.floor();
        let w = self.q.len() as i64;
        self.q[(i as i64 - floor as i64).rem_euclid(w) as usize]
    }

    /// Winding numbers min(l,m) - Q_i.
    pub fn winding(&self) -> Vec<i64> {
        let m = self.left.capacity().min(self.right.capacity()) as i64;
        self.q.iter().map(|q| m - q).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RMethod {
    #[default]
    Formula,
    Graphical,
}

fn same_space(x: &CrystalElement, y: &CrystalElement) -> Result<()> {
    if x.rank() != y.rank() || x.floor() != y.floor() {
        return Err(Error::Mismatch);
    }
    Ok(())
}

/// Q_i(x⊗y) for local i = 0..N-1 from the min-plus formula.
pub fn nonwinding(x: &CrystalElement, y: &CrystalElement) -> Vec<i64> {
    let xl = x.local();
    let yl = y.local();
    let w = xl.len();
    // letter index t (1-based, cyclic) -> slot (t-1) mod w
    let at = |v: &[u32], t: usize| v[(t + w - 1) % w] as i64;
    (0..w)
        .map(|i| {
            // k = 1: second sum over j = 2..=w
            let mut s1 = 0i64;
            let mut s2: i64 = (2..=w).map(|j| at(yl, i + j)).sum();
            let mut best = s2;
            for k in 1..w {
                s1 += at(xl, i + k);
                s2 -= at(yl, i + k + 1);
                best = best.min(s1 + s2);
            }
            best
        })
        .collect()
}

pub fn r_formula(x: &CrystalElement, y: &CrystalElement) -> Result<RImage> {
    same_space(x, y)?;
    let q = nonwinding(x, y);
    let w = q.len();
    let xl = x.local();
    let yl = y.local();
    let floor = x.floor();
    let mut xt = vec![0i64; x.rank() + 1];
    let mut yt = vec![0i64; x.rank() + 1];
    for t in 1..=w {
        let qi = q[t % w];
        let qp = q[t - 1];
        xt[floor + t - 1] = xl[t - 1] as i64 + qi - qp;
        yt[floor + t - 1] = yl[t - 1] as i64 + qp - qi;
    }
    let energy = x.capacity().min(y.capacity()) as i64 - q[0];
    Ok(RImage {
        left: CrystalElement::from_signed(x.rank(), &yt, floor)?,
        right: CrystalElement::from_signed(x.rank(), &xt, floor)?,
        energy,
        q,
    })
}

/// Graphical rule with right-column dots (or left-column dots when the left
/// capacity is smaller) processed bottom-to-top.
pub fn r_graphical(x: &CrystalElement, y: &CrystalElement) -> Result<RImage> {
    let order: Vec<usize> = {
        let k = x.capacity().min(y.capacity()) as usize;
        (0..k).rev().collect()
    };
    r_graphical_ordered(x, y, &order)
}

/// Graphical rule processing the dots of the smaller column in the given order.
/// `order` is a permutation of 0..min(l,m) indexing those dots sorted top-to-bottom.
pub fn r_graphical_ordered(x: &CrystalElement, y: &CrystalElement, order: &[usize]) -> Result<RImage> {
    same_space(x, y)?;
    let xl: Vec<i64> = x.local().iter().map(|&v| v as i64).collect();
    let yl: Vec<i64> = y.local().iter().map(|&v| v as i64).collect();
    let w = xl.len();
    let mut crossings = vec![0i64; w]; // border b sits between rows b and b+1; border 0 wraps
                                       // borders from..to-1
    fn cross(c: &mut [i64], from: usize, to: usize) {
        for b in from..to {
            c[b] += 1;
        }
    }
    let left_big = xl.iter().sum::<i64>() >= yl.iter().sum::<i64>();
    let (fixed, mut pool) = if left_big { (yl.clone(), xl.clone()) } else { (xl.clone(), yl.clone()) };
    let dots: Vec<usize> = (0..w).flat_map(|r| std::iter::repeat_n(r + 1, fixed[r] as usize)).collect();
    if order.len() != dots.len() {
        return Err(Error::Parse("pairing order has wrong length".into()));
    }
    for &idx in order {
        let j = dots[idx];
        if left_big {
            // partner: lowest unpaired left dot strictly above row j, else the lowest overall
            let partner = (1..j).rev().find(|&r| pool[r - 1] > 0).map(|r| (r, false));
            let (r, winding) = partner
                .or_else(|| (1..=w).rev().find(|&r| pool[r - 1] > 0).map(|r| (r, true)))
                .expect("left column has enough dots");
            pool[r - 1] -= 1;
            // lines run upward from the right column
            if winding {
                cross(&mut crossings, 1, j);
                crossings[0] += 1;
                cross(&mut crossings, r, w);
            } else {
                cross(&mut crossings, r, j);
            }
        } else {
            // partner: highest unpaired right dot strictly below row j, else the highest overall
            let partner = (j + 1..=w).find(|&r| pool[r - 1] > 0).map(|r| (r, false));
            let (r, winding) = partner
                .or_else(|| (1..=w).find(|&r| pool[r - 1] > 0).map(|r| (r, true)))
                .expect("right column has enough dots");
            pool[r - 1] -= 1;
            // lines run downward from the left column
            if winding {
                cross(&mut crossings, j, w);
                crossings[0] += 1;
                cross(&mut crossings, 1, r);
            } else {
                cross(&mut crossings, j, r);
            }
        }
    }
    let m = xl.iter().sum::<i64>().min(yl.iter().sum::<i64>());
    let q: Vec<i64> = crossings.iter().map(|c| m - c).collect();
    let floor = x.floor();
    let embed = |v: Vec<i64>| {
        let mut full = vec![0i64; floor];
        full.extend(v);
        full
    };
    // unpaired dots of the bigger column cross over
    let (new_left, new_right) = if left_big {
        let paired: Vec<i64> = xl.iter().zip(&pool).map(|(a, b)| a - b).collect();
        let moved: Vec<i64> = yl.iter().zip(&pool).map(|(a, b)| a + b).collect();
        (paired, moved)
    } else {
        let moved: Vec<i64> = xl.iter().zip(&pool).map(|(a, b)| a + b).collect();
        let paired: Vec<i64> = yl.iter().zip(&pool).map(|(a, b)| a - b).collect();
        (moved, paired)
    };
    Ok(RImage {
        left: CrystalElement::from_signed(x.rank(), &embed(new_left), floor)?,
        right: CrystalElement::from_signed(x.rank(), &embed(new_right), floor)?,
        energy: m - q[0],
        q,
    })
}

pub fn r_classical(x: &CrystalElement, y: &CrystalElement, method: RMethod) -> Result<RImage> {
    match method {
        RMethod::Formula => r_formula(x, y),
        RMethod::Graphical => r_graphical(x, y),
    }
}

/// Affine R: x[d] ⊗ y[e] -> ỹ[e-H] ⊗ x̃[d+H].
pub fn combinatorial_r(
    left: &AffineElement,
    right: &AffineElement,
    method: RMethod,
) -> Result<(AffineElement, AffineElement, RImage)> {
    let img = r_classical(&left.elem, &right.elem, method)?;
    let h = img.energy;
    Ok((
        AffineElement::new(img.left.clone(), right.mode - h),
        AffineElement::new(img.right.clone(), left.mode + h),
        img,
    ))
}

/// Energy H(x⊗y).
pub fn energy(x: &CrystalElement, y: &CrystalElement) -> i64 {
    x.capacity().min(y.capacity()) as i64 - nonwinding(x, y)[0]
}
