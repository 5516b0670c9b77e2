//! Scattering data of solitons: modes, normal ordering, the maps C^(a) and the
//! vertex operators Φ^(a), N-soliton tau functions and asymptotic states.

use crate::bbs::Capacity;
use crate::crystal::{principal_r, r_formula, AffineElement, CrystalElement, Path, PrincipalElement};
use crate::error::{Error, Result};
use crate::kkr::{kkr_to_path, unrestricted_from_path};
use crate::rigged::{RiggedConfig, Row};
use crate::tau::{check_energy, reconstruct_path, tau_table, TauEngine};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

/// Largest number of factors `normal_order` accepts; the orbit it explores has up to N! elements.
pub const MAX_ORDER_FACTORS: usize = 8;
/// Largest soliton count for the 2^N subset expansions.
pub const MAX_SOLITONS: usize = 16;

/// b_1[d_1] ⊗ ... ⊗ b_m[d_m] over B^{>=floor+1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScatteringData {
    n: usize,
    floor: usize,
    factors: Vec<AffineElement>,
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    word: String,
    d: i64,
}

impl ScatteringData {
    pub fn new(n: usize, floor: usize, factors: Vec<AffineElement>) -> Result<Self> {
        Path::new(n, floor, factors.iter().map(|f| f.elem.clone()).collect())?;
        Ok(Self { n, floor, factors })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn floor(&self) -> usize {
        self.floor
    }

    pub fn factors(&self) -> &[AffineElement] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn modes(&self) -> Vec<i64> {
        self.factors.iter().map(|f| f.mode).collect()
    }

    pub fn labels(&self) -> Path {
        Path::new(self.n, self.floor, self.factors.iter().map(|f| f.elem.clone()).collect())
            .expect("checked on construction")
    }

    /// Every mode shifted by min(l, capacity): the action of T_l.
    pub fn evolved(&self, l: Option<u32>) -> Self {
        let mut out = self.clone();
        for f in &mut out.factors {
            let c = f.elem.capacity();
            f.mode += l.map_or(c, |l| l.min(c)) as i64;
        }
        out
    }

    /// Text form "2222_4 233_6 34_6".
    pub fn parse(n: usize, floor: usize, text: &str) -> Result<Self> {
        let factors = text
            .split(|c: char| c.is_whitespace() || c == '⊗' || c == ',')
            .filter(|t| !t.is_empty())
            .map(|tok| {
                let (w, d) = tok.split_once('_').ok_or_else(|| Error::Parse(format!("factor {tok:?} lacks a mode")))?;
                let d = d.parse().map_err(|_| Error::Parse(format!("mode in {tok:?}")))?;
                Ok(AffineElement::new(CrystalElement::parse_word(n, w, floor)?, d))
            })
            .collect::<Result<_>>()?;
        Self::new(n, floor, factors)
    }

    pub fn render(&self) -> String {
        self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")
    }

    /// JSON form [{"word":"2222","d":4}, ...].
    pub fn to_json(&self) -> String {
        let v: Vec<FactorJson> = self.factors.iter().map(|f| FactorJson { word: f.elem.word(), d: f.mode }).collect();
        serde_json::to_string(&v).expect("serializable")
    }

    pub fn from_json(n: usize, floor: usize, s: &str) -> Result<Self> {
        let v: Vec<FactorJson> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let factors = v
            .into_iter()
            .map(|f| Ok(AffineElement::new(CrystalElement::parse_word(n, &f.word, floor)?, f.d)))
            .collect::<Result<_>>()?;
        Self::new(n, floor, factors)
    }
}

impl fmt::Display for ScatteringData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for ScatteringData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

fn reference_element(p: &Path) -> Result<CrystalElement> {
    let l = p.capacities().into_iter().max().unwrap_or(0) + 1;
    CrystalElement::highest(p.rank(), l, p.floor())
}

/// d_i = r_i + Σ_{0<=k<i} H(b_k ⊗ b_i^{(k+1)}), b_i carried leftward by R, with the
/// reference b_0 = (floor+1)^l, l = max capacity + 1.
pub fn compute_modes(p: &Path, rigs: &[i64]) -> Result<ScatteringData> {
    compute_modes_with(p, rigs, reference_element(p)?.capacity())
}

/// Same with an explicit reference capacity; any l above every capacity gives the same modes.
pub fn compute_modes_with(p: &Path, rigs: &[i64], l: u32) -> Result<ScatteringData> {
    if rigs.len() != p.len() {
        return Err(Error::Scattering(format!("{} riggings for {} factors", rigs.len(), p.len())));
    }
    let b0 = CrystalElement::highest(p.rank(), l, p.floor())?;
    let f = p.factors();
    let mut out = Vec::with_capacity(f.len());
    for i in 0..f.len() {
        let mut cur = f[i].clone();
        let mut d = rigs[i];
        for k in (0..i).rev() {
            let img = r_formula(&f[k], &cur)?;
            d += img.energy;
            cur = img.left;
        }
        d += r_formula(&b0, &cur)?.energy;
        out.push(AffineElement::new(f[i].clone(), d));
    }
    ScatteringData::new(p.rank(), p.floor(), out)
}

/// All R-reorderings of sd (the orbit under adjacent affine R), unsorted.
pub fn reorderings(sd: &ScatteringData) -> Result<Vec<ScatteringData>> {
    if sd.len() > MAX_ORDER_FACTORS {
        return Err(Error::Scattering(format!("{} factors exceed the reordering bound {MAX_ORDER_FACTORS}", sd.len())));
    }
    let mut seen: HashSet<Vec<AffineElement>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(sd.factors.clone());
    queue.push_back(sd.factors.clone());
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        for k in 0..v.len().saturating_sub(1) {
            let (l, r, _) = crate::crystal::combinatorial_r(&v[k], &v[k + 1], Default::default())?;
            let mut w = v.clone();
            w[k] = l;
            w[k + 1] = r;
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
        out.push(ScatteringData { n: sd.n, floor: sd.floor, factors: v });
    }
    Ok(out)
}

/// The normal ordered forms 𝒮_1: starting from all reorderings, keep those with the
/// largest i-th mode for i = m, m-1, ..., 2. Sorted by (modes, labels).
pub fn normal_order(sd: &ScatteringData) -> Result<Vec<ScatteringData>> {
    let mut set = reorderings(sd)?;
    for i in (1..sd.len()).rev() {
        let best = set.iter().map(|s| s.factors[i].mode).max().expect("orbit is nonempty");
        set.retain(|s| s.factors[i].mode == best);
    }
    set.sort_by(|a, b| a.modes().cmp(&b.modes()).then_with(|| a.labels().render().cmp(&b.labels().render())));
    set.dedup();
    Ok(set)
}

/// C^(a): the lexicographically least normal ordered form of compute_modes(p, rigs).
pub fn map_c(p: &Path, rigs: &[i64]) -> Result<ScatteringData> {
    Ok(normal_order(&compute_modes(p, rigs)?)?.swap_remove(0))
}

/// Φ_b: carry b rightward through p, b ⊗ p ≃ p' ⊗ b'; b' must be highest.
pub fn phi_b(b: &CrystalElement, p: &Path) -> Result<Path> {
    let mut cur = b.with_floor(p.floor())?;
    let mut out = Vec::with_capacity(p.len());
    for q in p.factors() {
        let img = r_formula(&cur, q)?;
        out.push(img.left);
        cur = img.right;
    }
    if cur != CrystalElement::highest(p.rank(), b.capacity(), p.floor())? {
        return Err(Error::Scattering(format!("carrying {b} through {} leaves {cur}", p.render())));
    }
    Path::new(p.rank(), p.floor(), out)
}

/// Φ^(a): inject normal ordered data over B^{>=a+1} into the vacuum a^{λ_1} ⊗ ... ⊗ a^{λ_k}.
pub fn map_phi(sd: &ScatteringData, lambda: &[u32]) -> Result<Path> {
    let n = sd.rank();
    let target = sd.floor().checked_sub(1).ok_or_else(|| Error::Scattering("no lower algebra below floor 0".into()))?;
    let modes = sd.modes();
    if modes.first().is_some_and(|&d| d < 0) || modes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Scattering(format!("modes {modes:?} are not normal ordered")));
    }
    let unit = CrystalElement::highest(n, 1, target)?;
    let mut p = Path::vacuum(n, lambda, target)?;
    for j in (0..sd.len()).rev() {
        p = phi_b(&sd.factors[j].elem, &p)?;
        let gap = modes[j] - if j > 0 { modes[j - 1] } else { 0 };
        for _ in 0..gap {
            p = phi_b(&unit, &p)?;
        }
    }
    Ok(p)
}

/// One level of the vertex operator construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexStep {
    pub level: usize,
    /// p^(level), a path over B^{>=level+1}.
    pub path: Path,
    /// C^(level)(p^(level)).
    pub data: ScatteringData,
}

/// p^(n), C^(n), ..., p^(1), C^(1) on the way to p = p^(0).
pub fn vertex_trace(rc: &RiggedConfig) -> Result<(Vec<VertexStep>, Path)> {
    let n = rc.rank();
    let top: Vec<CrystalElement> =
        rc.level_rows(n).iter().map(|r| CrystalElement::highest(n, r.len, n)).collect::<Result<_>>()?;
    let mut p = Path::new(n, n, top)?;
    let mut steps = Vec::with_capacity(n);
    for a in (1..=n).rev() {
        let rigs: Vec<i64> = rc.level_rows(a).iter().map(|r| r.rig).collect();
        let data = map_c(&p, &rigs)?;
        let lambda: Vec<u32> =
            if a == 1 { rc.quantum().to_vec() } else { rc.level_rows(a - 1).iter().map(|r| r.len).collect() };
        let next = map_phi(&data, &lambda)?;
        steps.push(VertexStep { level: a, path: p, data });
        p = next;
    }
    Ok((steps, p))
}

/// KKR image of a restricted configuration through Φ^(1) C^(1) ... Φ^(n) C^(n)(p^(n)).
pub fn kkr_vertex(rc: &RiggedConfig) -> Result<Path> {
    vertex_trace(rc).map(|(_, p)| p)
}

/// Every normal ordered form of the color-1 scattering data of a highest configuration.
pub fn normal_forms(rc: &RiggedConfig) -> Result<Vec<ScatteringData>> {
    let n = rc.rank();
    let rows = rc.level_rows(1);
    let rigs: Vec<i64> = rows.iter().map(|r| r.rig).collect();
    let p1 = if n == 1 {
        Path::new(1, 1, rows.iter().map(|r| CrystalElement::highest(1, r.len, 1)).collect::<Result<_>>()?)?
    } else {
        kkr_to_path(&rc.truncate(1)?)?.raised(1)
    };
    normal_order(&compute_modes(&p1, &rigs)?)
}

/// Solitons b_j ∈ B^{>=2}_{μ_j} at positions r_j, with μ weakly increasing and
/// r weakly increasing within equal amplitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonSpec {
    n: usize,
    labels: Vec<CrystalElement>,
    positions: Vec<i64>,
}

impl SolitonSpec {
    pub fn new(n: usize, labels: Vec<CrystalElement>, positions: Vec<i64>) -> Result<Self> {
        Path::new(n, 1, labels.clone())?;
        if labels.len() != positions.len() {
            return Err(Error::Scattering(format!("{} labels, {} positions", labels.len(), positions.len())));
        }
        if labels.len() > MAX_SOLITONS {
            return Err(Error::Scattering(format!("more than {MAX_SOLITONS} solitons")));
        }
        for j in 1..labels.len() {
            let (a, b) = (labels[j - 1].capacity(), labels[j].capacity());
            if a > b || (a == b && positions[j - 1] > positions[j]) {
                return Err(Error::Scattering(format!("solitons {} and {} out of order", j, j + 1)));
            }
        }
        Ok(Self { n, labels, positions })
    }

    /// Parse labels like "22 223 2334" with positions.
    pub fn parse(n: usize, labels: &str, positions: &[i64]) -> Result<Self> {
        let p = Path::parse(n, labels, 1)?;
        Self::new(n, p.into_factors(), positions.to_vec())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[CrystalElement] {
        &self.labels
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn amplitudes(&self) -> Vec<u32> {
        self.labels.iter().map(|b| b.capacity()).collect()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Positions after T_l.
    pub fn evolved(&self, l: Option<u32>) -> Self {
        let mut out = self.clone();
        for (r, b) in out.positions.iter_mut().zip(&self.labels) {
            *r += l.map_or(b.capacity(), |l| l.min(b.capacity())) as i64;
        }
        out
    }

    /// (λ, (μ, r), (μ^(2), r^(2)), ...), the higher colors taken from the
    /// unrestricted configuration of b_1 ⊗ ... ⊗ b_N.
    pub fn rigged_config(&self, lambda: Vec<u32>) -> Result<RiggedConfig> {
        let mut colors =
            vec![self.labels.iter().zip(&self.positions).map(|(b, &r)| Row::new(b.capacity(), r)).collect()];
        if self.n > 1 && !self.labels.is_empty() {
            let sub = unrestricted_from_path(&Path::new(self.n, 1, self.labels.clone())?)?;
            colors.extend(sub.colors().iter().cloned());
        }
        RiggedConfig::new(self.n, lambda, colors)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TauForm {
    /// Superposition η minus the multi-body phase shift Δ.
    #[default]
    Subset,
    /// Shifted modes φ from homogeneous R.
    Mode,
    /// Phase variables θ carried by the principal R.
    Principal,
}

impl std::str::FromStr for TauForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subset" => Ok(TauForm::Subset),
            "mode" => Ok(TauForm::Mode),
            "principal" => Ok(TauForm::Principal),
            _ => Err(Error::Parse(format!("tau form {s:?}"))),
        }
    }
}

/// Extractions for one subset J = {j_1 < ... < j_M}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseEntry {
    pub subset: Vec<usize>,
    /// b^(α)_{j_α}.
    pub extracted: Vec<CrystalElement>,
    /// φ^(α)_{j_α}.
    pub phi: Vec<i64>,
    /// θ^(α)_{j_α}.
    pub theta: Vec<PrincipalElement>,
    /// ℰ∨_i of the extracted sequence, indexed by i = 0..=n+1 (0 and 1 repeat n+1).
    pub check: Vec<i64>,
}

/// Extractions for every J, indexed by bitmask, plus the J-independent b^(1)_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseTable {
    pub first: Vec<CrystalElement>,
    pub entries: Vec<PhaseEntry>,
}

fn carry_left<T: Clone>(
    v: &mut [T],
    from: usize,
    to: usize,
    mut r: impl FnMut(&T, &T) -> Result<(T, T)>,
) -> Result<()> {
    for pos in (to..from).rev() {
        let (l, rt) = r(&v[pos], &v[pos + 1])?;
        v[pos] = l;
        v[pos + 1] = rt;
    }
    Ok(())
}

pub fn phase_table(spec: &SolitonSpec) -> Result<PhaseTable> {
    let n = spec.n;
    let big = spec.len();
    let labels = &spec.labels;
    let path = Path::new(n, 1, labels.clone())?;
    let b0 = reference_element(&path)?;
    let cr = |a: &CrystalElement, b: &CrystalElement| r_formula(a, b).map(|i| (i.left, i.right));
    let pr = |a: &PrincipalElement, b: &PrincipalElement| principal_r(a, b).map(|(l, r, _)| (l, r));

    let first = (0..big)
        .map(|j| {
            let mut v = labels.clone();
            carry_left(&mut v, j, 0, cr)?;
            Ok(v[0].clone())
        })
        .collect::<Result<Vec<_>>>()?;

    // principal data: θ_j with θ_{j,0} = d_j + μ_j + Σ_{k<j} min(μ_j, μ_k)
    let modes = compute_modes(&path, &spec.positions)?.modes();
    let mu = spec.amplitudes();
    let thetas: Vec<PrincipalElement> = (0..big)
        .map(|j| {
            let shift: i64 = mu[j] as i64 + (0..j).map(|k| mu[j].min(mu[k]) as i64).sum::<i64>();
            PrincipalElement::from_affine(&AffineElement::new(labels[j].clone(), modes[j] + shift))
        })
        .collect();

    let mut entries = Vec::with_capacity(1 << big);
    for mask in 0..1usize << big {
        let subset: Vec<usize> = (0..big).filter(|j| mask >> j & 1 == 1).collect();
        let mut v = labels.clone();
        let mut t = thetas.clone();
        for (alpha, &j) in subset.iter().enumerate() {
            carry_left(&mut v, j, alpha, cr)?;
            carry_left(&mut t, j, alpha, pr)?;
        }
        let m = subset.len();
        let extracted = v[..m].to_vec();
        let theta = t[..m].to_vec();
        let mut phi = Vec::with_capacity(m);
        for alpha in 0..m {
            let mut cur = extracted[alpha].clone();
            let mut s = spec.positions[subset[alpha]];
            for beta in (0..alpha).rev() {
                let img = r_formula(&extracted[beta], &cur)?;
                s += 2 * extracted[beta].capacity().min(cur.capacity()) as i64 - img.q_at(n + 1);
                cur = img.left;
            }
            let img = r_formula(&b0, &cur)?;
            s += 2 * cur.capacity() as i64 - img.q_at(n + 1);
            phi.push(s);
        }
        let mut check = vec![0i64; n + 2];
        for (i, c) in check.iter_mut().enumerate() {
            *c = check_energy(&extracted, if i == 0 { n + 1 } else { i })?;
        }
        entries.push(PhaseEntry { subset, extracted, phi, theta, check });
    }
    Ok(PhaseTable { first, entries })
}

/// N-soliton tau functions evaluated from a precomputed phase table.
pub struct SolitonTau {
    spec: SolitonSpec,
    table: PhaseTable,
}

impl SolitonTau {
    pub fn new(spec: &SolitonSpec) -> Result<Self> {
        Ok(Self { spec: spec.clone(), table: phase_table(spec)? })
    }

    pub fn table(&self) -> &PhaseTable {
        &self.table
    }

    fn term(&self, e: &PhaseEntry, lambda: &[u32], i: usize, form: TauForm) -> i64 {
        let n = self.spec.n;
        let min_l = |mu: u32| lambda.iter().map(|&l| l.min(mu) as i64).sum::<i64>();
        let letters = |b: &CrystalElement, range: std::ops::RangeInclusive<usize>| -> i64 {
            range.map(|c| b.count(c) as i64).sum()
        };
        match form {
            TauForm::Subset => {
                let mut s = 0i64;
                for (a, &j) in e.subset.iter().enumerate() {
                    let b = &self.table.first[j];
                    let tail = letters(b, i + 1..=n + 1) + b.count(2) as i64;
                    s += min_l(b.capacity()) - self.spec.positions[j] - tail;
                    for &k in &e.subset[..a] {
                        s -= 2 * b.capacity().min(self.spec.labels[k].capacity()) as i64;
                    }
                }
                s + e.check[i]
            }
            TauForm::Mode => {
                e.extracted.iter().zip(&e.phi).map(|(b, &phi)| min_l(b.capacity()) - phi + letters(b, 2..=i)).sum()
            }
            TauForm::Principal => e.theta.iter().map(|t| min_l(t.capacity as u32) - t.theta(i as i64 - 1)).sum(),
        }
    }

    /// τ_i(λ) for i = 0..=n+1, λ the background quantum space up to site k.
    pub fn eval(&self, lambda: &[u32], i: usize, form: TauForm) -> Result<i64> {
        let n = self.spec.n;
        if i > n + 1 {
            return Err(Error::Scattering(format!("color {i} out of range 0..={}", n + 1)));
        }
        if i == 0 {
            let size: i64 = lambda.iter().map(|&l| l as i64).sum();
            return Ok(self.eval(lambda, n + 1, form)? - size);
        }
        Ok(self.table.entries.iter().map(|e| self.term(e, lambda, i, form)).max().expect("J = ∅ is present"))
    }
}

/// τ_{k,i} over the all-1 background.
pub fn nsoliton_tau(spec: &SolitonSpec, k: usize, i: usize, form: TauForm) -> Result<i64> {
    SolitonTau::new(spec)?.eval(&vec![1; k], i, form)
}

/// T_{l_1} ... T_{l_t}(p) through the tau functions of the time-shifted configuration.
pub fn solve_ivp(p: &Path, schedule: &[Capacity]) -> Result<Path> {
    if p.floor() > 0 {
        return Ok(solve_ivp(&p.lowered()?, schedule)?.raised(p.floor()));
    }
    let mut rc = unrestricted_from_path(p)?;
    for cap in schedule {
        rc = rc.evolve(cap.as_option());
    }
    reconstruct_path(&tau_table(&rc)?, rc.quantum())
}

/// A state of well separated solitons read off from its configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticState {
    #[serde(serialize_with = "ser_path")]
    pub path: Path,
    /// k_{M,i} for M = 1..=N (outer) and i = 1..=n+1 (inner, stored at i-1).
    pub positions: Vec<Vec<i64>>,
    /// Soliton contents, left to right.
    pub solitons: Vec<String>,
}

fn ser_path<S: serde::Serializer>(p: &Path, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.render())
}

/// Asymptotic state of a highest configuration over (1^L) whose color-1 riggings
/// are weakly increasing in (length, rigging) order and far enough apart.
pub fn asymptotic_state(rc: &RiggedConfig) -> Result<AsymptoticState> {
    let n = rc.rank();
    let len = rc.quantum().len();
    if rc.quantum().iter().any(|&l| l != 1) {
        return Err(Error::Regime("quantum space must consist of single boxes".into()));
    }
    let rows = rc.level_rows(1);
    if rows.windows(2).any(|w| w[0].rig > w[1].rig) {
        return Err(Error::Regime("color-1 riggings are not increasing with the lengths".into()));
    }
    let engine = TauEngine::new(rc)?;
    let lens: Vec<u32> = rows.iter().map(|r| r.len).collect();
    let tau1 = |m: usize, i: usize| engine.eval(1, i, &lens[..m]);
    let mut k = Vec::with_capacity(rows.len());
    for m in 1..=rows.len() {
        let mu = lens[m - 1] as i64;
        let base = mu + 2 * lens[..m - 1].iter().map(|&l| l.min(lens[m - 1]) as i64).sum::<i64>() + rows[m - 1].rig;
        k.push((1..=n + 1).map(|i| Ok(base + tau1(m - 1, i)? - tau1(m, i)?)).collect::<Result<Vec<i64>>>()?);
    }
    let regime = |msg: &str| Err(Error::Regime(msg.to_string()));
    for (m, km) in k.iter().enumerate() {
        if km.windows(2).any(|w| w[0] < w[1]) || km[0] - km[n] != lens[m] as i64 {
            return regime("soliton boundaries out of order");
        }
        if m + 1 < k.len() && km[0] > k[m + 1][n] {
            return regime("solitons overlap");
        }
    }
    if k.first().is_some_and(|km| km[n] < 0) || k.last().is_some_and(|km| km[0] > len as i64) {
        return regime("a soliton lies outside the quantum space");
    }
    let mut letters = vec![1u32; len];
    let mut solitons = Vec::with_capacity(k.len());
    for km in &k {
        let mut word = String::new();
        for i in (2..=n + 1).rev() {
            for site in km[i - 1] + 1..=km[i - 2] {
                letters[site as usize - 1] = i as u32;
                word.push(char::from_digit(i as u32, 36).unwrap_or('?'));
            }
        }
        solitons.push(word);
    }
    let path =
        Path::new(n, 0, letters.iter().map(|&c| CrystalElement::from_letters(n, &[c], 0)).collect::<Result<_>>()?)?;
    if path != kkr_to_path(rc)? {
        return regime("riggings too close for the asymptotic form");
    }
    Ok(AsymptoticState { path, positions: k, solitons })
}

/// Distinct labels of the normal ordered forms, for quick comparisons.
pub fn normal_form_set(forms: &[ScatteringData]) -> BTreeSet<String> {
    forms.iter().map(|f| f.render()).collect()
}
