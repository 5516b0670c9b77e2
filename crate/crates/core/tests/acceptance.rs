//! Acceptance suite: ten criteria, exact equality throughout.
//! Runs without the libtest harness so every criterion prints one line.

use bethe_bbs::bbs::{carrier_ki, evolution_pattern, evolve, row_energy, Capacity, Padding};
use bethe_bbs::crystal::{combinatorial_r, r_classical, AffineElement, CrystalElement, Path, RMethod};
use bethe_bbs::enumerate::{compositions, elements, highest_paths, paths};
use bethe_bbs::kkr::{
    default_multiplicities, kkr_from_path, kkr_to_path, restricted_configs, unrestricted_from_path, unrestricted_with,
    vacuum_prefix,
};
use bethe_bbs::rigged::{RiggedConfig, Row};
use bethe_bbs::scattering::{kkr_vertex, normal_forms, solve_ivp, vertex_trace, ScatteringData, SolitonTau, TauForm};
use bethe_bbs::tau::{
    bilinear_check, energy_table, energy_table_with, infinite_vacuum_capacity, reconstruct_path, rho_table, tau_table,
    verify_triple, EnergyVariant, SubsetChoice, TauEngine,
};
use bethe_bbs::verify::{random_path, random_spec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

const HATTEN: &str = "11 122 2 1333 1 1 4 1 1 1 1 1 1 1 1 1 1";

const SD1: [&str; 10] = [
    "1111222211111133211143111111111111111111111111111111",
    "1111111122221111133211431111111111111111111111111111",
    "1111111111112222111133214311111111111111111111111111",
    "1111111111111111222211133243111111111111111111111111",
    "1111111111111111111122221132433111111111111111111111",
    "1111111111111111111111112221322433111111111111111111",
    "1111111111111111111111111112211322433211111111111111",
    "1111111111111111111111111111122111322143321111111111",
    "1111111111111111111111111111111221111322114332111111",
    "1111111111111111111111111111111112211111322111433211",
];

const SD2: [&str; 10] = [
    "1111222211113321143111111111111111111111111111111111",
    "1111111122221113321431111111111111111111111111111111",
    "1111111111112222113324311111111111111111111111111111",
    "1111111111111111222213243311111111111111111111111111",
    "1111111111111111111122132243321111111111111111111111",
    "1111111111111111111111221132214332111111111111111111",
    "1111111111111111111111112211132211433211111111111111",
    "1111111111111111111111111122111132211143321111111111",
    "1111111111111111111111111111221111132211114332111111",
    "1111111111111111111111111111112211111132211111433211",
];

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

fn golden_kkr() -> Outcome {
    let rc = example_rc();
    let p = ok(kkr_to_path(&rc), "kkr")?;
    ensure!(p.render() == "11112221322433", "kkr gave {}", p.render());
    ensure!(ok(kkr_from_path(&p), "inverse")? == rc, "inverse does not return the configuration");
    ensure!(ok(kkr_vertex(&rc), "vertex")? == p, "vertex form differs");
    let (steps, _) = ok(vertex_trace(&rc), "trace")?;
    let level = |a: usize| steps.iter().find(|s| s.level == a).map(|s| s.path.render());
    ensure!(level(1).as_deref() == Some("22 223 2334"), "p^(1) = {:?}", level(1));
    ensure!(level(2).as_deref() == Some("3 334"), "p^(2) = {:?}", level(2));
    Ok("11112221322433".into())
}

fn golden_tau() -> Outcome {
    let rc = example_rc();
    let want: [[i64; 14]; 4] = [
        [0, 0, 0, 0, 0, 0, 0, 1, 2, 3, 4, 6, 8, 10],
        [0, 0, 0, 0, 1, 2, 3, 4, 5, 7, 9, 11, 13, 15],
        [0, 0, 0, 0, 1, 2, 3, 4, 6, 8, 10, 12, 15, 18],
        [0, 0, 0, 0, 1, 2, 3, 4, 6, 8, 10, 13, 16, 19],
    ];
    let t = ok(tau_table(&rc), "tau")?;
    for d in 1..=4 {
        for k in 1..=14 {
            ensure!(t.get(k, d) == want[d - 1][k - 1], "tau_{k},{d} = {}", t.get(k, d));
        }
    }
    // A = ∅, B ∋ {4}, C ∋ {4,2} over {3}/{1}, D = everything
    let choice = |parts: [&[u32]; 3]| SubsetChoice {
        parts: parts
            .iter()
            .enumerate()
            .map(|(a, lens)| {
                let mut rows: Vec<Row> =
                    lens.iter().map(|&l| *rc.color(a + 1).iter().find(|r| r.len == l).unwrap()).collect();
                rows.sort_by(|x, y| y.cmp(x));
                rows
            })
            .collect(),
    };
    let a = vec![choice([&[], &[], &[]])];
    let b = vec![choice([&[4], &[], &[]]), choice([&[4], &[1], &[]]), choice([&[4], &[1], &[1]])];
    let c = vec![
        choice([&[4, 2], &[3], &[]]),
        choice([&[4, 2], &[1], &[]]),
        choice([&[4, 2], &[3], &[1]]),
        choice([&[4, 2], &[1], &[1]]),
        choice([&[4, 2], &[3, 1], &[1]]),
    ];
    let d = vec![choice([&[4, 3, 2], &[3, 1], &[1]])];
    let set = |xs: &[&Vec<SubsetChoice>]| xs.iter().flat_map(|x| x.iter().cloned()).collect::<BTreeSet<_>>();
    let expect = [
        set(&[&a]),
        set(&[&a]),
        set(&[&a]),
        set(&[&a, &b]),
        set(&[&b]),
        set(&[&b]),
        set(&[&b]),
        set(&[&b, &c]),
        set(&[&c]),
        set(&[&c]),
        set(&[&c, &d]),
        set(&[&d]),
        set(&[&d]),
        set(&[&d]),
    ];
    let engine = ok(TauEngine::new(&rc), "engine")?;
    let q = rc.quantum().to_vec();
    for (k, e) in expect.iter().enumerate() {
        let got: BTreeSet<_> = engine.maximizers(4, &q[..k + 1]).into_iter().collect();
        ensure!(&got == e, "maximizers at k = {}: {got:?}", k + 1);
    }
    Ok("4x14 table, A -> B -> C -> D".into())
}

fn golden_rho() -> Outcome {
    let p = ok(Path::parse(3, HATTEN, 0), "parse")?;
    let want: [[i64; 8]; 4] = [
        [0, 0, 0, 3, 5, 7, 9, 12],
        [0, 2, 3, 6, 8, 10, 12, 15],
        [0, 2, 3, 9, 11, 13, 15, 18],
        [0, 2, 3, 9, 11, 13, 16, 19],
    ];
    let rho = ok(rho_table(&p), "rho")?;
    let ene = ok(energy_table(&p, EnergyVariant::Full), "energy")?;
    for d in 1..=4 {
        for k in 1..=8 {
            ensure!(rho.get(k, d) == want[d - 1][k - 1], "rho_{k},{d} = {}", rho.get(k, d));
        }
    }
    for d in 1..=4 {
        for k in 1..=p.len() {
            ensure!(ene.get(k, d) == rho.get(k, d), "energy_{k},{d} = {} vs rho {}", ene.get(k, d), rho.get(k, d));
        }
    }
    Ok("4x8 table, energy = rho on all 17 prefixes".into())
}

fn golden_dynamics() -> Outcome {
    let p = ok(Path::parse(3, HATTEN, 0), "parse")?;
    let rows = ok(evolution_pattern(&p, 3, Capacity::Infinite, Padding::None), "pattern")?;
    let want = [
        HATTEN,
        "11 111 1 1222 3 3 3 4 1 1 1 1 1 1 1 1 1",
        "11 111 1 1111 2 2 2 3 4 3 3 1 1 1 1 1 1",
        "11 111 1 1111 1 1 1 2 3 2 2 4 3 3 1 1 1",
    ];
    for (t, (r, w)) in rows.iter().zip(want).enumerate() {
        ensure!(r.render() == w, "row {t}: {}", r.render());
    }
    let k4 = ok(carrier_ki(&p, 4), "K_4")?;
    let k3 = ok(carrier_ki(&k4, 3), "K_3")?;
    let k2 = ok(carrier_ki(&k3, 2), "K_2")?;
    ensure!(k4.render() == "11 122 2 1333 1 1 1 4 1 1 1 1 1 1 1 1 1", "K_4 row {}", k4.render());
    ensure!(k3.render() == "11 122 2 1111 3 3 3 4 1 1 1 1 1 1 1 1 1", "K_3 row {}", k3.render());
    ensure!(k2 == rows[1], "K_2 K_3 K_4 differs from T_inf");
    for rows_ref in [SD1, SD2] {
        let start = ok(Path::parse(3, rows_ref[0], 0), "parse")?;
        let got = ok(evolution_pattern(&start, 9, Capacity::Infinite, Padding::None), "pattern")?;
        for (t, (r, w)) in got.iter().zip(rows_ref).enumerate() {
            ensure!(r.render() == w, "52-box row {t}: {}", r.render());
        }
    }
    for (l, e) in [(1, 3), (2, 5), (3, 7), (4, 7), (5, 7), (10, 7)] {
        let got = ok(row_energy(&p, Capacity::Finite(l)), "energy")?;
        ensure!(got == e, "E_{l} = {got}");
    }
    ensure!(ok(row_energy(&p, Capacity::Infinite), "energy")? == 7, "E_inf");
    Ok("4 + 3 + 2x10 rows, E_l = 3, 5, 7".into())
}

fn golden_r() -> Outcome {
    let el = |w: &str| CrystalElement::parse_word(3, w, 0).unwrap();
    for m in [RMethod::Formula, RMethod::Graphical] {
        let (a, b, img) =
            ok(combinatorial_r(&AffineElement::new(el("1224"), 5), &AffineElement::new(el("13"), 9), m), "R")?;
        ensure!(
            (a.elem.word().as_str(), a.mode, b.elem.word().as_str(), b.mode, img.energy) == ("24", 8, "1123", 6, 1),
            "1224_5 x 13_9 -> {}_{} x {}_{} H={}",
            a.elem.word(),
            a.mode,
            b.elem.word(),
            b.mode,
            img.energy
        );
        let img = ok(r_classical(&el("1233"), &el("124"), m), "R")?;
        ensure!(
            (img.left.word().as_str(), img.right.word().as_str(), img.energy) == ("133", "1224", 1),
            "1233 x 124 -> {} x {} H={}",
            img.left.word(),
            img.right.word(),
            img.energy
        );
    }
    let mut pairs = 0;
    for n in 1..=3 {
        for k in 1..=4 {
            for l in 1..=4 {
                for x in elements(n, k, 0) {
                    for y in elements(n, l, 0) {
                        let f = ok(r_classical(&x, &y, RMethod::Formula), "formula")?;
                        let g = ok(r_classical(&x, &y, RMethod::Graphical), "graphical")?;
                        ensure!(
                            (&f.left, &f.right, f.energy) == (&g.left, &g.right, g.energy),
                            "{} x {}: formula and graphical disagree",
                            x.word(),
                            y.word()
                        );
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} pairs, formula = graphical"))
}

fn forms_at(row: &str) -> Result<Vec<String>, String> {
    let p = ok(Path::parse(3, row, 0), "parse")?;
    let rc = ok(kkr_from_path(&p), "kkr")?;
    let forms: Vec<ScatteringData> = ok(normal_forms(&rc), "normal forms")?;
    let mut out: Vec<String> = forms.iter().map(|f| f.render()).collect();
    out.sort();
    Ok(out)
}

fn golden_scattering() -> Outcome {
    let lin = |t: i64, parts: [(&str, i64, i64); 3]| {
        parts.iter().map(|(w, a, b)| format!("{w}_{}", a + b * t)).collect::<Vec<_>>().join(" ")
    };
    let sorted = |mut v: Vec<String>| {
        v.sort();
        v
    };
    for t in 0..10 {
        let want = match t {
            0..=4 => vec![lin(t, [("2222", 4, 4), ("233", 11, 3), ("34", 16, 2)])],
            5 => vec!["2222_24 233_26 34_26".into(), "2222_24 23_26 334_26".into()],
            6 => vec!["22_27 2223_29 334_29".into(), "22_27 223_29 2334_29".into()],
            _ => vec![lin(t, [("22", 15, 2), ("223", 11, 3), ("2334", 5, 4)])],
        };
        let got = forms_at(SD1[t as usize])?;
        ensure!(got == sorted(want.clone()), "first example t={t}: {got:?}, want {want:?}");
    }
    for t in 0..10 {
        let want = match t {
            0..=3 => vec![lin(t, [("2222", 4, 4), ("233", 9, 3), ("34", 13, 2)])],
            4 => vec![
                "2222_20 233_21 34_21".into(),
                "2222_20 23_21 334_21".into(),
                "222_20 2233_21 34_21".into(),
                "222_20 23_21 2334_21".into(),
                "22_20 2223_21 334_21".into(),
                "22_20 223_21 2334_21".into(),
            ],
            _ => vec![lin(t, [("22", 12, 2), ("223", 9, 3), ("2334", 5, 4)])],
        };
        let got = forms_at(SD2[t as usize])?;
        ensure!(got == sorted(want.clone()), "second example t={t}: {got:?}, want {want:?}");
    }
    Ok("20 times, 2 + 2 + 6 simultaneous forms".into())
}

fn golden_unrestricted() -> Outcome {
    let p = ok(Path::parse(3, "344 2 13 24", 0), "parse")?;
    let (pvac, l) = ok(vacuum_prefix(3, &[1, 1, 2]), "vacuum prefix")?;
    ensure!(pvac.render() == "123123121", "pvac = {}", pvac.render());
    ensure!(l == [9, 5, 2, 0], "L = {l:?}");
    let rc = ok(unrestricted_with(&p, &[1, 1, 2]), "unrestricted")?;
    let p33 = rc.vacancy().p(3, 3);
    ensure!(p33 == -2, "p^(3)_3 = {p33}");
    // the larger default multiplicities give the same configuration
    let m = default_multiplicities(&p);
    ensure!(ok(unrestricted_from_path(&p), "default")? == rc, "M = {m:?} changes the result");
    Ok("pvac = 123123121, p^(3)_3 = -2".into())
}

fn all_chains(len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for l in 1..=len {
            out.extend(paths(n, &vec![1; l], 0));
        }
    }
    out
}

fn triple_property() -> Outcome {
    let all = all_chains(7);
    for p in &all {
        let r = ok(verify_triple(p), "triple")?;
        ensure!(r.agree, "{}: {:?}", p.render(), r.counterexample);
    }
    Ok(format!("{} states", all.len()))
}

fn bilinear_property() -> Outcome {
    let mut all = all_chains(7);
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3);
        let boxes = rng.gen_range(8..=12);
        all.push(random_path(&mut rng, n, boxes, 3, 1));
    }
    for p in &all {
        let r = ok(bilinear_check(p), "bilinear")?;
        ensure!(r.holds, "{}: failure at {:?}", p.render(), r.failure);
    }
    Ok(format!("{} states", all.len()))
}

fn braid(a: &CrystalElement, b: &CrystalElement, c: &CrystalElement) -> Result<bool, String> {
    let r = |v: &mut [AffineElement; 3], k: usize| -> Result<(), String> {
        let (l, rt, _) = ok(combinatorial_r(&v[k], &v[k + 1], RMethod::Formula), "R")?;
        v[k] = l;
        v[k + 1] = rt;
        Ok(())
    };
    let start = [AffineElement::new(a.clone(), 0), AffineElement::new(b.clone(), 0), AffineElement::new(c.clone(), 0)];
    let (mut x, mut y) = (start.clone(), start);
    for k in [0, 1, 0] {
        r(&mut x, k)?;
    }
    for k in [1, 0, 1] {
        r(&mut y, k)?;
    }
    Ok(x == y)
}

fn misc_properties() -> Outcome {
    let mut report = Vec::new();
    let mut rng = StdRng::seed_from_u64(10);

    // Yang-Baxter with modes
    let mut count = 0;
    for n in 1..=2 {
        let els: Vec<CrystalElement> = (1..=2).flat_map(|l| elements(n, l, 0)).collect();
        for a in &els {
            for b in &els {
                for c in &els {
                    ensure!(braid(a, b, c)?, "YBE fails on {} {} {}", a.word(), b.word(), c.word());
                    count += 1;
                }
            }
        }
    }
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=3);
        let mut pick = || {
            let els = elements(n, rng.gen_range(1..=4), 0);
            els[rng.gen_range(0..els.len())].clone()
        };
        let (a, b, c) = (pick(), pick(), pick());
        ensure!(braid(&a, &b, &c)?, "YBE fails on {} {} {}", a.word(), b.word(), c.word());
        count += 1;
    }
    report.push(format!("YBE {count}"));

    // both KKR directions
    let mut count = 0;
    for n in 1..=3 {
        for total in 1..=8 {
            for caps in compositions(total) {
                let highest = highest_paths(n, &caps);
                let mut weights = BTreeSet::new();
                for p in &highest {
                    let rc = ok(kkr_from_path(p), "kkr inverse")?;
                    ensure!(&ok(kkr_to_path(&rc), "kkr")? == p, "roundtrip fails on {}", p.render());
                    let w = p.weight();
                    weights.insert(w);
                    count += 1;
                }
                for w in weights {
                    let configs = restricted_configs(n, &caps, &w);
                    let images: BTreeSet<String> = configs
                        .iter()
                        .map(|rc| kkr_to_path(rc).map(|p| p.render()))
                        .collect::<Result<_, _>>()
                        .map_err(|e| e.to_string())?;
                    let expect: BTreeSet<String> =
                        highest.iter().filter(|p| p.weight() == w).map(|p| p.render()).collect();
                    ensure!(images == expect && configs.len() == expect.len(), "not a bijection for {caps:?} {w:?}");
                }
            }
        }
    }
    report.push(format!("KKR {count}"));

    // E_l = Σ min(l, μ^(1)_j) and ℰ_{n+1}(p) - ℰ_{n+1}(T_l p) = E_l
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3);
        let boxes = rng.gen_range(4..=10);
        let p = random_path(&mut rng, n, boxes, 3, 1);
        let l = rng.gen_range(1..=5);
        let cap = Capacity::Finite(l);
        let e = ok(row_energy(&p, cap), "E_l")?;
        let rc = ok(unrestricted_from_path(&p), "rc")?;
        let sum: i64 = rc.color(1).iter().map(|r| l.min(r.len) as i64).sum();
        ensure!(e == sum, "{}: E_{l} = {e}, sum = {sum}", p.render());
        let q = ok(evolve(&p, cap), "T_l")?;
        let big = infinite_vacuum_capacity(&p);
        let before = ok(energy_table_with(&p, EnergyVariant::Full, big), "energy")?.get(p.len(), n + 1);
        let after = ok(energy_table_with(&q, EnergyVariant::Full, big), "energy")?.get(q.len(), n + 1);
        ensure!(before - after == e, "{}: corner difference {} vs E_{l} = {e}", p.render(), before - after);
    }
    report.push("energy 1000".into());

    // linearization: the configuration of T_l(p) is the configuration of p with riggings moved
    let mut count = 0;
    for n in 1..=3 {
        for total in 1..=5 {
            for caps in compositions(total) {
                for p in highest_paths(n, &caps) {
                    let p = p.padded(1, p.balls() as usize + 1);
                    let rc = ok(kkr_from_path(&p), "kkr")?;
                    for cap in [Capacity::Finite(1), Capacity::Finite(2), Capacity::Finite(3), Capacity::Infinite] {
                        let q = ok(evolve(&p, cap), "T_l")?;
                        let moved = rc.evolve(cap.as_option());
                        ensure!(ok(kkr_from_path(&q), "kkr")? == moved, "{} under T_{cap}", p.render());
                    }
                    count += 1;
                }
            }
        }
    }
    report.push(format!("linearization {count}"));

    // N-soliton tau forms and the IVP solver
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=4);
        let spec = random_spec(&mut rng, n, m, 4, 12);
        let len = 60;
        let lambda = vec![1; len];
        let st = ok(SolitonTau::new(&spec), "phases")?;
        let rc = ok(spec.rigged_config(lambda.clone()), "rc")?;
        let table = ok(tau_table(&rc), "tau")?;
        for k in 0..=len {
            for i in 0..=n + 1 {
                let want = table.get(k, i);
                for form in [TauForm::Subset, TauForm::Mode, TauForm::Principal] {
                    let got = ok(st.eval(&lambda[..k], i, form), "soliton tau")?;
                    ensure!(got == want, "{spec:?}: {form:?} at k={k} i={i} gives {got}, tau = {want}");
                }
            }
        }
        let state = ok(reconstruct_path(&table, &lambda), "state")?;
        let steps = rng.gen_range(1..=3);
        let schedule: Vec<Capacity> = (0..steps)
            .map(|_| if rng.gen_bool(0.3) { Capacity::Infinite } else { Capacity::Finite(rng.gen_range(1..=4)) })
            .collect();
        let mut direct = state.clone();
        for &c in &schedule {
            direct = ok(evolve(&direct, c), "direct")?;
        }
        ensure!(ok(solve_ivp(&state, &schedule), "ivp")? == direct, "{spec:?} under {schedule:?}");
    }
    report.push("solitons 1000".into());
    Ok(report.join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("golden KKR", golden_kkr),
        ("golden tau", golden_tau),
        ("golden rho/energy", golden_rho),
        ("golden dynamics", golden_dynamics),
        ("golden R", golden_r),
        ("golden scattering", golden_scattering),
        ("golden unrestricted RC", golden_unrestricted),
        ("tau = rho = energy, L <= 7, n <= 3", triple_property),
        ("bilinear and closure", bilinear_property),
        ("YBE, KKR, energies, linearization, solitons", misc_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {:>2} PASS {name} [{detail}] ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
