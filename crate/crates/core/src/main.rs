use bethe_bbs::bbs::{carrier_ki, evolution_pattern, render_pattern, row_energy, Capacity, Padding};
use bethe_bbs::crystal::{combinatorial_r, AffineElement, Path, RMethod};
use bethe_bbs::kkr::{kkr_from_path, kkr_to_path, unrestricted_from_path};
use bethe_bbs::rigged::{RiggedConfig, Validity};
use bethe_bbs::scattering::{
    asymptotic_state, normal_forms, solve_ivp, vertex_trace, SolitonSpec, SolitonTau, TauForm,
};
use bethe_bbs::tau::{energy_table, reconstruct_path, rho_table, EnergyVariant, TauEngine, TauTable};
use bethe_bbs::verify::{check_state, run_suite, Suite, SuiteConfig, SuiteReport};
use bethe_bbs::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bethe-bbs", version, about = "Box-ball systems, rigged configurations and tau functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pad {
    None,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Subset,
    Mode,
    Principal,
}

impl From<Form> for TauForm {
    fn from(f: Form) -> Self {
        match f {
            Form::Subset => TauForm::Subset,
            Form::Mode => TauForm::Mode,
            Form::Principal => TauForm::Principal,
        }
    }
}

/// Input source plus output format, shared by every subcommand.
#[derive(Args)]
struct Io {
    /// Input file; stdin when absent or "-".
    input: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Path input: boxes separated by spaces, or one letter per box when there are no spaces.
#[derive(Args)]
struct PathIo {
    #[command(flatten)]
    io: Io,
    /// Rank n of A_n^(1); defaults to the largest letter minus one.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Time evolution T_l; prints rows t = 0..=T.
    Evolve {
        #[command(flatten)]
        p: PathIo,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Carrier capacity, a positive integer or "inf".
        #[arg(long, default_value = "inf")]
        l: Capacity,
        #[arg(long, value_enum, default_value_t = Pad::None)]
        pad: Pad,
        /// Print the K_i factorization of one T_∞ step instead.
        #[arg(long)]
        factor: bool,
    },
    /// Rigged configuration JSON to highest path.
    Kkr {
        #[command(flatten)]
        io: Io,
    },
    /// Path to rigged configuration JSON.
    KkrInv {
        #[command(flatten)]
        p: PathIo,
        /// Accept non-highest paths via the vacuum prefix.
        #[arg(long)]
        unrestricted: bool,
    },
    /// Vertex-operator form of the KKR map, with intermediate levels.
    Vertex {
        #[command(flatten)]
        io: Io,
    },
    /// Ultradiscrete tau function of a rigged configuration.
    Tau {
        #[command(flatten)]
        io: Io,
        /// Full table over k and d (the default when --k is absent).
        #[arg(long)]
        table: bool,
        /// Prefix length; evaluates a single value.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// List the maximizing sub-configurations for each k.
        #[arg(long)]
        maximizers: bool,
    },
    /// Quadrant ball counts ρ of a state.
    Rho {
        #[command(flatten)]
        p: PathIo,
    },
    /// Corner energies ℰ, or the row energy E_l with --l.
    Energy {
        #[command(flatten)]
        p: PathIo,
        /// Use the checked variant ℰ∨.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        l: Option<Capacity>,
    },
    /// Run verification suites; exits 1 with a JSON counterexample on failure.
    Verify {
        /// Verify a single state (file or "-") instead of running suites.
        #[arg(long)]
        state: Option<String>,
        #[arg(long = "suite", value_name = "SUITE")]
        suites: Vec<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Normal-ordered scattering data of a highest state, optionally over T_∞ steps.
    Scatter {
        #[command(flatten)]
        p: PathIo,
        #[arg(long, default_value_t = 0)]
        t: usize,
        /// Also read off the soliton positions when the state is well separated.
        #[arg(long)]
        asymptotic: bool,
    },
    /// Build an N-soliton state from labels and positions via the tau function.
    Nsoliton {
        #[arg(long)]
        n: usize,
        /// Soliton words over letters 2..=n+1, e.g. "22 223 2334".
        #[arg(long)]
        labels: String,
        /// Comma-separated riggings, one per soliton.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        positions: Vec<i64>,
        /// Number of single boxes.
        #[arg(long)]
        len: usize,
        #[arg(long, value_enum, default_value_t = Form::Subset)]
        form: Form,
        /// Also print T_∞^t of the state for t = 1..=T.
        #[arg(long, default_value_t = 0)]
        t: usize,
        /// Print the tau table instead of the state.
        #[arg(long)]
        table: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Initial value problem through the rigged configuration.
    Ivp {
        #[command(flatten)]
        p: PathIo,
        /// Comma-separated capacities applied left to right, e.g. "inf,2,1".
        #[arg(long, value_delimiter = ',')]
        schedule: Vec<Capacity>,
        /// Repeat --l this many times when --schedule is absent.
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value = "inf")]
        l: Capacity,
    },
    /// Combinatorial R on a pair "x y" of tableau words.
    Rmatrix {
        #[command(flatten)]
        p: PathIo,
        #[arg(long)]
        graphical: bool,
    },
}

fn read_input(input: Option<&str>) -> Result<String> {
    let mut s = String::new();
    match input {
        None | Some("-") => std::io::stdin().read_to_string(&mut s).map(|_| ()),
        Some(f) => std::fs::read_to_string(f).map(|t| s = t),
    }
    .map_err(|e| Error::Parse(format!("reading input: {e}")))?;
    Ok(s)
}

fn parse_path(text: &str, n: Option<usize>) -> Result<Path> {
    let text = text.trim();
    let n = match n {
        Some(n) => n,
        None => {
            let top = text.chars().filter_map(|c| c.to_digit(10)).max().unwrap_or(1);
            (top as usize).saturating_sub(1).max(1)
        }
    };
    Path::parse(n, text, 0)
}

impl PathIo {
    fn path(&self) -> Result<Path> {
        parse_path(&read_input(self.io.input.as_deref())?, self.n)
    }
}

impl Io {
    fn rc(&self) -> Result<RiggedConfig> {
        let rc = RiggedConfig::from_json(read_input(self.input.as_deref())?.trim())?;
        let v = rc.validate();
        if v == Validity::Invalid {
            return Err(Error::InvalidRc(format!("{v:?}")));
        }
        Ok(rc)
    }
}

fn table_out(t: &TauTable, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Csv) {
        Format::Csv => t.to_csv(),
        Format::Text => t.to_text(),
        Format::Json => serde_json::to_string(t).expect("serializable") + "\n",
    }
}

fn text_or_json(format: Option<Format>, text: String, value: serde_json::Value) -> String {
    match format {
        Some(Format::Json) => value.to_string() + "\n",
        _ => text,
    }
}

fn suite_text(r: &SuiteReport) -> String {
    let status = if r.passed() { "pass" } else { "FAIL" };
    let mut s = format!("{}: {status} ({} cases)\n", r.suite, r.cases);
    if let Some(c) = &r.counterexample {
        s += &format!("counterexample: {c}\n");
    }
    s
}

/// Output text and whether an identity failed.
fn run(cmd: Cmd) -> Result<(String, bool)> {
    let out = match cmd {
        Cmd::Evolve { p, t, l, pad, factor } => {
            let path = p.path()?;
            let rows = if factor {
                let mut rows = vec![path.clone()];
                for i in (path.floor() + 2..=path.rank() + 1).rev() {
                    let next = carrier_ki(rows.last().expect("nonempty"), i)?;
                    rows.push(next);
                }
                rows
            } else {
                let pad = if pad == Pad::Auto { Padding::Auto } else { Padding::None };
                evolution_pattern(&path, t, l, pad)?
            };
            let rendered: Vec<String> = rows.iter().map(|r| r.render()).collect();
            text_or_json(p.io.format, render_pattern(&rows), json!(rendered))
        }
        Cmd::Kkr { io } => {
            let path = kkr_to_path(&io.rc()?)?;
            text_or_json(io.format, path.render() + "\n", json!({ "path": path.render() }))
        }
        Cmd::KkrInv { p, unrestricted } => {
            let path = p.path()?;
            let rc = if unrestricted { unrestricted_from_path(&path)? } else { kkr_from_path(&path)? };
            rc.to_json() + "\n"
        }
        Cmd::Vertex { io } => {
            let (steps, path) = vertex_trace(&io.rc()?)?;
            let mut text = String::new();
            let mut levels = Vec::new();
            for s in &steps {
                text += &format!("level {}: p = {}  data = {}\n", s.level, s.path.render(), s.data.render());
                levels.push(json!({ "level": s.level, "path": s.path.render(), "data": s.data.render() }));
            }
            text += &path.render();
            text.push('\n');
            text_or_json(io.format, text, json!({ "levels": levels, "path": path.render() }))
        }
        Cmd::Tau { io, table, k, d, maximizers } => {
            let rc = io.rc()?;
            let engine = TauEngine::new(&rc)?;
            let quantum = rc.quantum().to_vec();
            let n = rc.rank();
            if maximizers {
                let d = d.unwrap_or(n + 1);
                let mut text = String::new();
                let mut all = Vec::new();
                for k in 0..=quantum.len() {
                    let ms = engine.maximizers(d, &quantum[..k]);
                    let rendered: Vec<String> =
                        ms.iter().map(|m| serde_json::to_string(&m.parts).expect("rows")).collect();
                    text += &format!("k={k}: {}\n", rendered.join(" | "));
                    all.push(json!({ "k": k, "maximizers": ms }));
                }
                text_or_json(io.format, text, json!(all))
            } else if let (Some(k), false) = (k, table) {
                if k > quantum.len() {
                    return Err(Error::NotSubMultiset(format!("k = {k} exceeds {}", quantum.len())));
                }
                let d = d.unwrap_or(n + 1);
                let v = engine.eval(0, d, &quantum[..k])?;
                text_or_json(io.format, format!("{v}\n"), json!({ "k": k, "d": d, "tau": v }))
            } else {
                table_out(&engine.table(), io.format)
            }
        }
        Cmd::Rho { p } => table_out(&rho_table(&p.path()?)?, p.io.format),
        Cmd::Energy { p, check, l } => {
            let path = p.path()?;
            match l {
                Some(l) => {
                    let e = row_energy(&path, l)?;
                    text_or_json(p.io.format, format!("{e}\n"), json!({ "l": l.to_string(), "energy": e }))
                }
                None => {
                    let variant = if check { EnergyVariant::Check } else { EnergyVariant::Full };
                    table_out(&energy_table(&path, variant)?, p.io.format)
                }
            }
        }
        Cmd::Verify { state, suites, n, max_len, random, seed, jobs, format } => {
            let reports = match state {
                Some(src) => {
                    let text = read_input(Some(&src))?;
                    vec![check_state(&parse_path(&text, None)?)]
                }
                None => {
                    let chosen = if suites.is_empty() {
                        Suite::ALL.to_vec()
                    } else {
                        suites.iter().map(|s| s.parse()).collect::<Result<Vec<Suite>>>()?
                    };
                    let cfg = SuiteConfig { n_max: n, len_max: max_len, random, seed, jobs: jobs.max(1) };
                    chosen.into_iter().map(|s| run_suite(s, &cfg)).collect()
                }
            };
            let failed = reports.iter().any(|r| !r.passed());
            let text = reports.iter().map(suite_text).collect();
            return Ok((text_or_json(format, text, json!(reports)), failed));
        }
        Cmd::Scatter { p, t, asymptotic } => {
            let path = p.path()?;
            let rows = evolution_pattern(&path, t, Capacity::Infinite, Padding::None)?;
            let mut text = String::new();
            let mut all = Vec::new();
            for (step, row) in rows.iter().enumerate() {
                let rc = kkr_from_path(row)?;
                let forms = normal_forms(&rc)?;
                let rendered: Vec<String> = forms.iter().map(|f| f.render()).collect();
                text += &format!("t={step}: {}", rendered.join(" | "));
                let mut entry = json!({
                    "t": step,
                    "forms": forms.iter().map(|f| serde_json::from_str::<serde_json::Value>(&f.to_json()).expect("json")).collect::<Vec<_>>(),
                });
                if asymptotic {
                    match asymptotic_state(&rc) {
                        Ok(a) => {
                            text += &format!("  positions {:?}", a.positions);
                            entry["asymptotic"] = json!(a);
                        }
                        Err(e) => {
                            text += &format!("  ({e})");
                            entry["asymptotic"] = json!(null);
                        }
                    }
                }
                text.push('\n');
                all.push(entry);
            }
            text_or_json(p.io.format, text, json!(all))
        }
        Cmd::Nsoliton { n, labels, positions, len, form, t, table, format } => {
            let spec = SolitonSpec::parse(n, &labels, &positions)?;
            let st = SolitonTau::new(&spec)?;
            let values = (0..=len)
                .map(|k| (0..=n + 1).map(|i| st.eval(&vec![1; k], i, form.into())).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let tau = TauTable { n, quantum: vec![1; len], values };
            if table {
                table_out(&tau, format)
            } else {
                let start = reconstruct_path(&tau, &vec![1; len])?;
                let rows = evolution_pattern(&start, t, Capacity::Infinite, Padding::None)?;
                let rendered: Vec<String> = rows.iter().map(|r| r.render()).collect();
                text_or_json(format, render_pattern(&rows), json!(rendered))
            }
        }
        Cmd::Ivp { p, schedule, t, l } => {
            let path = p.path()?;
            let schedule = if schedule.is_empty() { vec![l; t] } else { schedule };
            let q = solve_ivp(&path, &schedule)?;
            text_or_json(p.io.format, q.render() + "\n", json!({ "path": q.render() }))
        }
        Cmd::Rmatrix { p, graphical } => {
            let pair = p.path()?;
            if pair.len() != 2 {
                return Err(Error::Parse(format!("expected two factors, got {}", pair.len())));
            }
            let method = if graphical { RMethod::Graphical } else { RMethod::Formula };
            let f = pair.factors();
            let (l, r, img) =
                combinatorial_r(&AffineElement::new(f[0].clone(), 0), &AffineElement::new(f[1].clone(), 0), method)?;
            let text = format!("{} {} H={}\n", l.elem.word(), r.elem.word(), img.energy);
            text_or_json(p.io.format, text, json!({ "left": l.elem.word(), "right": r.elem.word(), "H": img.energy }))
        }
    };
    Ok((out, false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((out, failed)) => {
            print!("{out}");
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
