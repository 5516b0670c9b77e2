//! Box-ball dynamics: carrier evolutions T_l, the K_i factorization of T_∞,
//! row-transfer energies and evolution patterns.

use crate::crystal::{r_formula, CrystalElement, Path};
use crate::error::{Error, Result};
use crate::kkr::unrestricted_from_path;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Capacity {
    Finite(u32),
    Infinite,
}

impl Capacity {
    /// Concrete carrier capacity; ∞ becomes ball count + 1, beyond which T_l no longer changes.
    pub fn resolve(self, p: &Path) -> u32 {
        match self {
            Capacity::Finite(l) => l,
            Capacity::Infinite => stable_capacity(p),
        }
    }

    pub fn as_option(self) -> Option<u32> {
        match self {
            Capacity::Finite(l) => Some(l),
            Capacity::Infinite => None,
        }
    }
}

impl FromStr for Capacity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(Capacity::Infinite),
            t => t.parse().map(Capacity::Finite).map_err(|_| Error::Parse(format!("capacity {t:?}"))),
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(l) => write!(f, "{l}"),
            Capacity::Infinite => f.write_str("inf"),
        }
    }
}

pub fn stable_capacity(p: &Path) -> u32 {
    p.balls() + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionResult {
    pub state: Path,
    pub carrier_out: CrystalElement,
    pub local_modes: Vec<i64>,
    pub energy: i64,
}

/// u_l ⊗ p ≃ T_l(p) ⊗ v_l. With `strict`, fails unless v_l = u_l.
pub fn evolve_tl(p: &Path, cap: Capacity, strict: bool) -> Result<EvolutionResult> {
    let l = cap.resolve(p);
    let u = CrystalElement::highest(p.rank(), l, p.floor())?;
    let mut carrier = u.clone();
    let mut out = Vec::with_capacity(p.len());
    let mut modes = Vec::with_capacity(p.len());
    let mut energy = 0i64;
    for b in p.factors() {
        let img = r_formula(&carrier, b)?;
        energy += b.capacity().min(l) as i64 - img.energy;
        modes.push(img.energy);
        out.push(img.left);
        carrier = img.right;
    }
    if strict && carrier != u {
        return Err(Error::BoundaryCheck);
    }
    Ok(EvolutionResult {
        state: Path::new(p.rank(), p.floor(), out)?,
        carrier_out: carrier,
        local_modes: modes,
        energy,
    })
}

/// T_l(p) with the boundary check.
pub fn evolve(p: &Path, cap: Capacity) -> Result<Path> {
    evolve_tl(p, cap, true).map(|r| r.state)
}

/// E_l(p) = Σ_j (min(λ_j, l) - H(carrier ⊗ p_j)).
pub fn row_energy(p: &Path, cap: Capacity) -> Result<i64> {
    evolve_tl(p, cap, false).map(|r| r.energy)
}

/// Sweep a carrier of color-i balls (letter i) through p; letter floor+1 is empty space.
pub fn carrier_ki(p: &Path, i: usize) -> Result<Path> {
    let lo = p.floor() + 1;
    if i <= lo || i > p.rank() + 1 {
        return Err(Error::LetterOutOfRange { letter: i as u32, lo: lo as u32 + 1, hi: p.rank() as u32 + 1 });
    }
    let mut m = 0u32;
    let mut out = Vec::with_capacity(p.len());
    for b in p.factors() {
        let mut x = b.occupancy().to_vec();
        let (y1, yi) = (x[lo - 1], x[i - 1]);
        let m_next = yi + m.saturating_sub(y1);
        x[lo - 1] = yi + y1.saturating_sub(m);
        x[i - 1] = m.min(y1);
        m = m_next;
        out.push(CrystalElement::from_occupancy(p.rank(), x, p.floor())?);
    }
    if m != 0 {
        return Err(Error::BoundaryCheck);
    }
    Path::new(p.rank(), p.floor(), out)
}

/// T_∞ = K_{floor+2} ... K_{n+1}, with K_{n+1} applied first.
pub fn evolve_tinf(p: &Path) -> Result<Path> {
    let mut q = p.clone();
    for i in (p.floor() + 2..=p.rank() + 1).rev() {
        q = carrier_ki(&q, i)?;
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Padding {
    /// No padding; every step must pass the boundary check.
    #[default]
    None,
    /// Append t_max * (max amplitude) + (ball count) single vacuum boxes.
    Auto,
}

/// Largest soliton amplitude, max μ^(1) of the state's rigged configuration.
pub fn max_amplitude(p: &Path) -> Result<u32> {
    if p.balls() == 0 {
        return Ok(0);
    }
    let rc = unrestricted_from_path(p)?;
    Ok(rc.color(1).iter().map(|r| r.len).max().unwrap_or(0))
}

pub fn pad_width(p: &Path, t_max: usize) -> Result<usize> {
    Ok(t_max * max_amplitude(p)? as usize + p.balls() as usize)
}

/// Rows T^0(p), ..., T^{t_max}(p) for a capacity (∞ by default).
pub fn evolution_pattern(p: &Path, t_max: usize, cap: Capacity, pad: Padding) -> Result<Vec<Path>> {
    let start = match pad {
        Padding::None => p.clone(),
        Padding::Auto => p.padded(1, pad_width(p, t_max)?),
    };
    let mut rows = vec![start];
    for _ in 0..t_max {
        let next = evolve(rows.last().expect("nonempty"), cap)?;
        rows.push(next);
    }
    Ok(rows)
}

pub fn render_pattern(rows: &[Path]) -> String {
    rows.iter().map(|r| r.render() + "\n").collect()
}
