//! Exhaustive and randomized identity checks, shared by the CLI and the test suites.

use crate::bbs::{evolve, row_energy, Capacity};
use crate::crystal::{combinatorial_r, AffineElement, CrystalElement, Path, RMethod};
use crate::enumerate::{compositions, elements, highest_paths, paths};
use crate::error::{Error, Result};
use crate::kkr::{kkr_from_path, kkr_to_path, unrestricted_from_path};
use crate::scattering::{solve_ivp, SolitonSpec, SolitonTau, TauForm};
use crate::tau::{bilinear_check, tau_table, verify_triple, EnergyVariant};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Triple,
    Bilinear,
    Kkr,
    Ivp,
    Ybe,
    Energy,
    Nsoliton,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Triple, Suite::Bilinear, Suite::Kkr, Suite::Ivp, Suite::Ybe, Suite::Energy, Suite::Nsoliton];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Triple => "triple",
            Suite::Bilinear => "bilinear",
            Suite::Kkr => "kkr",
            Suite::Ivp => "ivp",
            Suite::Ybe => "ybe",
            Suite::Energy => "energy",
            Suite::Nsoliton => "nsoliton",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n_max: usize,
    /// Longest B_1 chain (or total box count) in the exhaustive part.
    pub len_max: usize,
    /// Random cases on top of the exhaustive part.
    pub random: usize,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { n_max: 3, len_max: 5, random: 100, seed: 0, jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub counterexample: Option<Value>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// First counterexample over `items`, checked on up to `jobs` threads.
pub fn par_find<T, F>(items: &[T], jobs: usize, f: F) -> Option<Value>
where
    T: Sync,
    F: Fn(&T) -> Option<Value> + Sync,
{
    if jobs <= 1 || items.len() < 2 {
        return items.iter().find_map(&f);
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().find_map(&f))).collect();
        handles.into_iter().find_map(|h| h.join().expect("worker panicked"))
    })
}

fn err_value(e: Error) -> Value {
    json!({ "error": e.to_string() })
}

/// All paths in B_1^{⊗L} for 1 <= L <= len, n <= n_max, with `pad` vacuum boxes appended.
pub fn exhaustive_chains(n_max: usize, len: usize, pad: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for l in 1..=len {
            out.extend(paths(n, &vec![1; l], 0).into_iter().map(|p| p.padded(1, pad)));
        }
    }
    out
}

/// A random state with mixed capacities and trailing vacuum long enough for `steps` T_∞ steps.
pub fn random_path(rng: &mut StdRng, n: usize, boxes: usize, max_cap: u32, steps: usize) -> Path {
    let caps: Vec<u32> = (0..boxes).map(|_| rng.gen_range(1..=max_cap)).collect();
    let factors = caps
        .iter()
        .map(|&l| {
            let mut x = vec![0u32; n + 1];
            for _ in 0..l {
                x[rng.gen_range(0..=n)] += 1;
            }
            CrystalElement::from_occupancy(n, x, 0).expect("valid occupancy")
        })
        .collect();
    let p = Path::new(n, 0, factors).expect("valid path");
    let balls = p.balls() as usize;
    p.padded(1, balls * (steps + 1) + 1)
}

/// Random solitons over B^{>=2} with amplitudes in 1..=max_amp, sorted as required.
pub fn random_spec(rng: &mut StdRng, n: usize, count: usize, max_amp: u32, max_pos: i64) -> SolitonSpec {
    let mut items: Vec<(u32, i64, CrystalElement)> = (0..count)
        .map(|_| {
            let l = rng.gen_range(1..=max_amp);
            let mut x = vec![0u32; n + 1];
            for _ in 0..l {
                x[rng.gen_range(1..=n)] += 1;
            }
            (l, rng.gen_range(0..=max_pos), CrystalElement::from_occupancy(n, x, 1).expect("valid occupancy"))
        })
        .collect();
    items.sort_by_key(|(l, r, _)| (*l, *r));
    let (labels, positions) = items.into_iter().map(|(_, r, b)| (b, r)).unzip();
    SolitonSpec::new(n, labels, positions).expect("sorted spec")
}

fn check_triple(p: &Path) -> Option<Value> {
    match verify_triple(p) {
        Ok(r) if r.agree => None,
        Ok(r) => Some(json!(r)),
        Err(e) => Some(err_value(e)),
    }
}

fn check_bilinear(p: &Path) -> Option<Value> {
    match bilinear_check(p) {
        Ok(r) if r.holds => None,
        Ok(r) => Some(json!({ "path": p.render(), "failure": r.failure })),
        Err(e) => Some(err_value(e)),
    }
}

fn check_kkr(p: &Path) -> Option<Value> {
    let back = kkr_from_path(p).and_then(|rc| kkr_to_path(&rc));
    match back {
        Ok(q) if &q == p => None,
        Ok(q) => Some(json!({ "path": p.render(), "roundtrip": q.render() })),
        Err(e) => Some(err_value(e)),
    }
}

fn check_ivp(p: &Path, schedule: &[Capacity]) -> Option<Value> {
    let mut direct = p.clone();
    for &c in schedule {
        direct = match evolve(&direct, c) {
            Ok(q) => q,
            Err(e) => return Some(err_value(e)),
        };
    }
    match solve_ivp(p, schedule) {
        Ok(q) if q == direct => None,
        Ok(q) => Some(json!({
            "path": p.render(),
            "schedule": schedule.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "direct": direct.render(),
            "ivp": q.render(),
        })),
        Err(e) => Some(err_value(e)),
    }
}

/// E_l(p) = Σ_j min(l, μ^(1)_j) and ℰ_{n+1}(p) - ℰ_{n+1}(T_l(p)) = E_l(p).
fn check_energy(p: &Path, l: u32) -> Option<Value> {
    let run = || -> Result<Option<Value>> {
        let cap = Capacity::Finite(l);
        let e = row_energy(p, cap)?;
        let rc = unrestricted_from_path(p)?;
        let sum: i64 = rc.color(1).iter().map(|r| l.min(r.len) as i64).sum();
        let q = evolve(p, cap)?;
        let n = p.rank();
        // a common u_∞ capacity on both sides
        let big = crate::tau::infinite_vacuum_capacity(p);
        let before = crate::tau::energy_table_with(p, EnergyVariant::Full, big)?.get(p.len(), n + 1);
        let after = crate::tau::energy_table_with(&q, EnergyVariant::Full, big)?.get(q.len(), n + 1);
        Ok((e != sum || before - after != e).then(|| {
            json!({ "path": p.render(), "l": l, "row_energy": e, "sum_min": sum, "corner_difference": before - after })
        }))
    };
    run().unwrap_or_else(|e| Some(err_value(e)))
}

fn check_nsoliton(spec: &SolitonSpec, len: usize) -> Option<Value> {
    let run = || -> Result<Option<Value>> {
        let st = SolitonTau::new(spec)?;
        let rc = spec.rigged_config(vec![1; len])?;
        let table = tau_table(&rc)?;
        for k in 0..=len {
            for i in 0..=spec.rank() + 1 {
                let want = table.get(k, i);
                for form in [TauForm::Subset, TauForm::Mode, TauForm::Principal] {
                    let got = st.eval(&vec![1; k], i, form)?;
                    if got != want {
                        return Ok(Some(json!({
                            "labels": spec.labels().iter().map(|b| b.word()).collect::<Vec<_>>(),
                            "positions": spec.positions(),
                            "k": k, "i": i, "form": format!("{form:?}"), "value": got, "tau": want,
                        })));
                    }
                }
            }
        }
        Ok(None)
    };
    run().unwrap_or_else(|e| Some(err_value(e)))
}

/// R_12 R_23 R_12 = R_23 R_12 R_23 on affine triples, modes included.
pub fn check_ybe(a: &CrystalElement, b: &CrystalElement, c: &CrystalElement) -> Option<Value> {
    let run = || -> Result<bool> {
        let r = |x: &AffineElement, y: &AffineElement| combinatorial_r(x, y, RMethod::Formula).map(|(l, r, _)| (l, r));
        let v = [AffineElement::new(a.clone(), 0), AffineElement::new(b.clone(), 0), AffineElement::new(c.clone(), 0)];
        let step = |v: &[AffineElement; 3], k: usize| -> Result<[AffineElement; 3]> {
            let mut w = v.clone();
            let (l, rt) = r(&v[k], &v[k + 1])?;
            w[k] = l;
            w[k + 1] = rt;
            Ok(w)
        };
        let lhs = step(&step(&step(&v, 0)?, 1)?, 0)?;
        let rhs = step(&step(&step(&v, 1)?, 0)?, 1)?;
        Ok(lhs == rhs)
    };
    match run() {
        Ok(true) => None,
        Ok(false) => Some(json!({ "triple": [a.word(), b.word(), c.word()] })),
        Err(e) => Some(err_value(e)),
    }
}

fn random_paths(cfg: &SuiteConfig, steps: usize) -> Vec<Path> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    (0..cfg.random)
        .map(|_| {
            let n = rng.gen_range(1..=cfg.n_max);
            let boxes = rng.gen_range(cfg.len_max..=cfg.len_max + 4);
            random_path(&mut rng, n, boxes, 3, steps)
        })
        .collect()
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> SuiteReport {
    let chains = || exhaustive_chains(cfg.n_max, cfg.len_max, cfg.len_max + 2);
    let (cases, counterexample) = match suite {
        Suite::Triple => {
            let mut all = chains();
            all.extend(random_paths(cfg, 0));
            (all.len(), par_find(&all, cfg.jobs, check_triple))
        }
        Suite::Bilinear => {
            let mut all = chains();
            all.extend(random_paths(cfg, 1));
            (all.len(), par_find(&all, cfg.jobs, check_bilinear))
        }
        Suite::Kkr => {
            let mut all = Vec::new();
            for n in 1..=cfg.n_max {
                for total in 1..=cfg.len_max as u32 {
                    for caps in compositions(total) {
                        all.extend(highest_paths(n, &caps));
                    }
                }
            }
            (all.len(), par_find(&all, cfg.jobs, check_kkr))
        }
        Suite::Ivp => {
            let schedules = [
                vec![Capacity::Infinite],
                vec![Capacity::Finite(1), Capacity::Finite(2)],
                vec![Capacity::Finite(2), Capacity::Infinite, Capacity::Finite(1)],
            ];
            let mut all: Vec<(Path, Vec<Capacity>)> = Vec::new();
            for p in exhaustive_chains(cfg.n_max, cfg.len_max, 4 * cfg.len_max) {
                for s in &schedules {
                    all.push((p.clone(), s.clone()));
                }
            }
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x1f);
            for p in random_paths(cfg, 3) {
                let t = rng.gen_range(0..=3);
                let s = (0..t)
                    .map(
                        |_| if rng.gen_bool(0.3) { Capacity::Infinite } else { Capacity::Finite(rng.gen_range(1..=4)) },
                    )
                    .collect();
                all.push((p, s));
            }
            (all.len(), par_find(&all, cfg.jobs, |(p, s)| check_ivp(p, s)))
        }
        Suite::Ybe => {
            let mut triples = Vec::new();
            for n in 1..=cfg.n_max.min(2) {
                let els: Vec<CrystalElement> = (1..=2).flat_map(|l| elements(n, l, 0)).collect();
                for a in &els {
                    for b in &els {
                        for c in &els {
                            triples.push((a.clone(), b.clone(), c.clone()));
                        }
                    }
                }
            }
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x2e);
            for _ in 0..cfg.random {
                let n = rng.gen_range(1..=cfg.n_max);
                let mut pick = || {
                    let l = rng.gen_range(1..=4);
                    let els = elements(n, l, 0);
                    els[rng.gen_range(0..els.len())].clone()
                };
                triples.push((pick(), pick(), pick()));
            }
            (triples.len(), par_find(&triples, cfg.jobs, |(a, b, c)| check_ybe(a, b, c)))
        }
        Suite::Energy => {
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x3d);
            let cases: Vec<(Path, u32)> = random_paths(cfg, 1).into_iter().map(|p| (p, rng.gen_range(1..=5))).collect();
            (cases.len(), par_find(&cases, cfg.jobs, |(p, l)| check_energy(p, *l)))
        }
        Suite::Nsoliton => {
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x4c);
            let specs: Vec<SolitonSpec> = (0..cfg.random)
                .map(|_| {
                    let n = rng.gen_range(1..=cfg.n_max);
                    let count = rng.gen_range(0..=4);
                    random_spec(&mut rng, n, count, 4, 12)
                })
                .collect();
            (specs.len(), par_find(&specs, cfg.jobs, |s| check_nsoliton(s, 40)))
        }
    };
    SuiteReport { suite: suite.name().to_string(), cases, counterexample }
}

/// τ = ρ = ℰ and the bilinear relations for one state.
pub fn check_state(p: &Path) -> SuiteReport {
    let counterexample = check_triple(p).or_else(|| check_bilinear(p));
    SuiteReport { suite: "state".into(), cases: 1, counterexample }
}
