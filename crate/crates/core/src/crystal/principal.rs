use super::element::{AffineElement, CrystalElement};
use crate::error::{Error, Result};

/// Principal picture: a weakly decreasing sequence θ with θ_{i+N} = θ_i - l,
/// stored through one period θ_0..θ_{N-1} (local indices, N = n+1-floor).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrincipalElement {
    pub n: usize,
    pub floor: usize,
    pub capacity: i64,
    pub window: Vec<i64>,
}

impl PrincipalElement {
    pub fn width(&self) -> usize {
        self.window.len()
    }

    /// θ_i for any integer i via the quasi-periodic extension.
    pub fn theta(&self, i: i64) -> i64 {
        let w = self.width() as i64;
        let q = i.div_euclid(w);
        self.window[i.rem_euclid(w) as usize] - q * self.capacity
    }

    pub fn from_affine(a: &AffineElement) -> Self {
        let loc = a.elem.local();
        let mut window = Vec::with_capacity(loc.len());
        let mut t = a.mode;
        window.push(t);
        for &v in &loc[..loc.len() - 1] {
            t -= v as i64;
            window.push(t);
        }
        Self { n: a.elem.rank(), floor: a.elem.floor(), capacity: a.elem.capacity() as i64, window }
    }

    pub fn to_affine(&self) -> Result<AffineElement> {
        let w = self.width() as i64;
        let mut x = vec![0i64; self.floor];
        for i in 1..=w {
            let v = self.theta(i - 1) - self.theta(i);
            if v < 0 {
                return Err(Error::InvalidWindow(format!("{:?} (l={})", self.window, self.capacity)));
            }
            x.push(v);
        }
        Ok(AffineElement::new(CrystalElement::from_signed(self.n, &x, self.floor)?, self.window[0]))
    }
}

/// Principal R: θ ⊗ θ' -> (θ' - S) ⊗ (θ + S), with S returned in local indexing.
pub fn principal_r(
    a: &PrincipalElement,
    b: &PrincipalElement,
) -> Result<(PrincipalElement, PrincipalElement, Vec<i64>)> {
    if a.n != b.n || a.floor != b.floor {
        return Err(Error::Mismatch);
    }
    let w = a.width() as i64;
    let m2 = 2 * a.capacity.min(b.capacity);
    let s: Vec<i64> = (0..w)
        .map(|i| {
            let inner = (1..=w).map(|k| b.theta(i + k) - a.theta(i + k - 1)).min().unwrap();
            m2 - a.theta(i) + b.theta(i + w) - inner
        })
        .collect();
    let left = PrincipalElement {
        n: a.n,
        floor: a.floor,
        capacity: b.capacity,
        window: b.window.iter().zip(&s).map(|(t, s)| t - s).collect(),
    };
    let right = PrincipalElement {
        n: a.n,
        floor: a.floor,
        capacity: a.capacity,
        window: a.window.iter().zip(&s).map(|(t, s)| t + s).collect(),
    };
    Ok((left, right, s))
}
