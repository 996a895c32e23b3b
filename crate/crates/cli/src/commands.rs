use std::fmt::Display;
use std::path::Path;

use gapcorr_core::energy::{energy_profile, EnergyFamily};
use gapcorr_core::experiments::{
    self, DeBruijnConfig, DigitalConfig, EnergyConfig, ExperimentOutput, KroneckerConfig, LsConfig, RandomConfig,
    SqrtConfig, StonehamConfig, EXPERIMENTS,
};
use gapcorr_core::gaps::{default_tolerance, gap_scan_points};
use gapcorr_core::rational::{parse_rational, to_f64};
use gapcorr_core::stoneham::{stoneham_points, z_sequence};
use gapcorr_core::words::{applicable_orders, de_bruijn_length, de_bruijn_word, infinite_de_bruijn_prefix, verify_de_bruijn};
use gapcorr_core::{gap_profile, io, pair_correlation_curve, Descriptor, Error, PointSet, DEFAULT_SCALE_BITS};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::args::{Command, Format, Generation, Overrides, Source};

/// Grids longer than this are rejected as a usage error.
const MAX_GRID: usize = 100_000;

pub enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Compute(e.to_string())
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Display) -> Failure {
    Failure::Usage(msg.to_string())
}

pub fn run(command: Command) -> Outcome<()> {
    match command {
        Command::Gen { seq, gen, out } => {
            let ps = generate(&seq, &gen)?;
            let mut buf = Vec::new();
            io::write_points(&mut buf, &ps)?;
            emit(out.as_deref(), &buf)
        }
        Command::Pc { source, gen, s, grid, format, out } => {
            let ps = load(&source, &gen)?;
            let grid = match (s, grid) {
                (Some(s), _) => vec![parse_s(&s)?],
                (None, Some(g)) => parse_grid(&g)?,
                (None, None) => return Err(usage("one of --s or --grid is required")),
            };
            let samples = pair_correlation_curve(&ps, &grid)?;
            let buf = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    io::write_correlation(&mut buf, &samples)?;
                    buf
                }
                Format::Json => {
                    let rows: Vec<Value> = samples
                        .iter()
                        .map(|c| json!({"s": c.s.to_string(), "count": c.count.to_string(), "f": c.f64()}))
                        .collect();
                    json_bytes(&json!({"provenance": ps.provenance(), "n": ps.len(), "samples": rows}))
                }
            };
            emit(out.as_deref(), &buf)
        }
        Command::Gaps { source, gen, tolerance, n_list, format, out } => {
            let ps = load(&source, &gen)?;
            let tol = match tolerance {
                Some(t) => {
                    let t = parse_rational(&t)?;
                    if t.is_negative() {
                        return Err(usage("tolerance must be non-negative"));
                    }
                    t
                }
                None => default_tolerance(ps.scale_bits()),
            };
            let buf = if let Some(list) = n_list {
                let rows = gap_scan_points(&ps, &parse_list(&list)?, &tol)?;
                match format {
                    Format::Csv => {
                        let mut buf = Vec::new();
                        io::write_scan(&mut buf, &rows)?;
                        buf
                    }
                    Format::Json => {
                        let rows: Vec<Value> =
                            rows.iter().map(|&(n, d)| json!({"N": n, "distinct_gaps": d})).collect();
                        json_bytes(&json!({"provenance": ps.provenance(), "scan": rows}))
                    }
                }
            } else {
                let profile = gap_profile(&ps, &tol)?;
                match format {
                    Format::Csv => {
                        let mut buf = Vec::new();
                        io::write_gaps(&mut buf, &profile)?;
                        buf
                    }
                    Format::Json => {
                        let gaps: Vec<Value> = profile
                            .gaps
                            .iter()
                            .enumerate()
                            .map(|(i, g)| {
                                json!({
                                    "length_numerator": g.length.to_string(),
                                    "length": to_f64(&profile.length(i)),
                                    "multiplicity": g.multiplicity,
                                })
                            })
                            .collect();
                        json_bytes(&json!({
                            "provenance": ps.provenance(),
                            "n": profile.n,
                            "scale_bits": profile.scale_bits,
                            "distinct_gaps": profile.distinct_count(),
                            "gaps": gaps,
                        }))
                    }
                }
            };
            emit(out.as_deref(), &buf)
        }
        Command::Energy { family, n_list, seed, format, out } => {
            let family = match (family.as_str(), seed) {
                ("random", Some(seed)) => EnergyFamily::RandomSubset { seed },
                ("random", None) => return Err(usage("--family random needs --seed")),
                (_, Some(_)) => return Err(usage("--seed only applies to --family random")),
                (text, None) => EnergyFamily::parse(text)?,
            };
            let reports = energy_profile(&family, &parse_list(&n_list)?)?;
            let buf = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    io::write_energy(&mut buf, &reports)?;
                    buf
                }
                Format::Json => json_bytes(&json!({"family": family.label(), "reports": reports})),
            };
            emit(out.as_deref(), &buf)
        }
        Command::Debruijn { k, m, max_order, input, out } => {
            if let Some(path) = input {
                let text = std::fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                let (word, order) = io::parse_word(&text)?;
                let order = m.unwrap_or(order);
                let word = word.prefix(de_bruijn_length(word.alphabet(), order)?.min(word.len()));
                if !verify_de_bruijn(&word, order) {
                    return Err(Failure::Compute(format!(
                        "{}: not a de Bruijn word of order {order} over {} symbols",
                        path.display(),
                        word.alphabet()
                    )));
                }
                let line = format!("{}: de Bruijn word of order {order} over {} symbols\n", path.display(), word.alphabet());
                return emit(out.as_deref(), line.as_bytes());
            }
            let k = k.ok_or_else(|| usage("--k is required"))?;
            let (word, order) = match (m, max_order) {
                (Some(m), None) => (de_bruijn_word(k, m)?, m),
                (None, Some(big)) => {
                    if applicable_orders(k, big).is_empty() {
                        return Err(usage(format!("no applicable orders for k = {k} up to {big}")));
                    }
                    (infinite_de_bruijn_prefix(k, big)?, big)
                }
                _ => return Err(usage("exactly one of --m or --max-order is required")),
            };
            emit(out.as_deref(), io::format_word(&word, order).as_bytes())
        }
        Command::Stoneham { w, bits, z, out } => {
            let mut buf = Vec::new();
            if z {
                let n = 1usize.checked_shl(w).filter(|_| w < 40).ok_or_else(|| usage("--w too large"))?;
                io::write_z(&mut buf, &z_sequence(n - 1))?;
            } else {
                io::write_points(&mut buf, &stoneham_points(w, bits)?)?;
            }
            emit(out.as_deref(), &buf)
        }
        Command::Report { experiment, overrides, out } => {
            let result = run_experiment(&experiment, &overrides)?;
            let summary = json_bytes(&serde_json::to_value(&result.summary).map_err(|e| Failure::Compute(e.to_string()))?);
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir).map_err(|e| Failure::Compute(format!("{}: {e}", dir.display())))?;
                io::write_atomic(&dir.join("summary.json"), &summary)?;
                for table in &result.tables {
                    io::write_atomic(&dir.join(format!("{}.csv", table.name)), table.csv.as_bytes())?;
                }
            }
            emit(None, &summary)
        }
        Command::Verify { experiment } => {
            let names: Vec<String> =
                if experiment.is_empty() { EXPERIMENTS.iter().map(|s| s.to_string()).collect() } else { experiment };
            let mut failed = Vec::new();
            for name in &names {
                let result = experiments::run_default(name)?;
                let pass = result.summary.pass;
                println!("{name}: {}", if pass { "PASS" } else { "FAIL" });
                if !pass {
                    failed.push(name.as_str());
                }
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Compute(format!("experiments failed their thresholds: {}", failed.join(", "))))
            }
        }
    }
}

fn generate(seq: &str, gen: &Generation) -> Outcome<PointSet> {
    let text = match (seq, gen.seed) {
        ("random", Some(seed)) => format!("random:{seed}"),
        ("random", None) => return Err(usage("--seq random needs --seed")),
        (_, Some(_)) => return Err(usage("--seed only applies to --seq random")),
        (s, None) => s.to_string(),
    };
    let desc: Descriptor = text.parse()?;
    let n = gen.n.ok_or_else(|| usage("--n is required with --seq"))?;
    Ok(desc.generate_with_bits(n, gen.bits.unwrap_or(DEFAULT_SCALE_BITS))?)
}

fn load(source: &Source, gen: &Generation) -> Outcome<PointSet> {
    match (&source.input, &source.seq) {
        (Some(path), None) => {
            if gen.n.is_some() || gen.bits.is_some() || gen.seed.is_some() {
                return Err(usage("--n, --bits and --seed only apply with --seq"));
            }
            if !path.exists() {
                return Err(usage(format!("{}: no such file", path.display())));
            }
            Ok(io::read_points_file(path)?)
        }
        (None, Some(seq)) => generate(seq, gen),
        _ => Err(usage("exactly one of --in or --seq is required")),
    }
}

fn parse_s(text: &str) -> Outcome<BigRational> {
    let s = parse_rational(text)?;
    if s.is_negative() {
        return Err(usage(format!("s must be non-negative, got {text}")));
    }
    Ok(s)
}

/// `start:stop:step`; the last value is the largest `start + i step` not
/// exceeding `stop + step/2`.
pub fn parse_grid(text: &str) -> Outcome<Vec<BigRational>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(usage(format!("grid must be start:stop:step, got `{text}`")));
    };
    let (start, stop, step) = (parse_s(start)?, parse_s(stop)?, parse_rational(step)?);
    if !step.is_positive() {
        return Err(usage("grid step must be positive"));
    }
    if stop < start {
        return Err(usage("grid stop is below start"));
    }
    let count = ((&stop - &start) / &step + BigRational::new(1.into(), 2.into())).floor();
    let count = count.to_integer().to_usize().filter(|&c| c < MAX_GRID).ok_or_else(|| usage("grid too long"))?;
    Ok((0..=count).map(|i| &start + &step * BigRational::from_integer(i.into())).collect())
}

fn parse_list(text: &str) -> Outcome<Vec<usize>> {
    let list: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| usage(format!("not a count: `{t}`"))))
        .collect::<Outcome<_>>()?;
    if list.is_empty() || list.contains(&0) {
        return Err(usage("counts must be positive"));
    }
    Ok(list)
}

fn run_experiment(name: &str, o: &Overrides) -> Outcome<ExperimentOutput> {
    let allowed: &[&str] = match name {
        "kronecker" => &["n", "bits"],
        "ls" | "digital" => &["m", "bits"],
        "debruijn" => &["m", "bits"],
        "stoneham" => &["w"],
        "energy" => &["n", "seed", "n-list"],
        "random-baseline" => &["n", "seed", "bits"],
        "sqrtn" => &["n", "bits"],
        _ => return Err(usage(format!("unknown experiment `{name}` (one of {})", EXPERIMENTS.join(", ")))),
    };
    let given = [
        ("w", o.w.is_some()),
        ("m", o.m.is_some()),
        ("n", o.n.is_some()),
        ("seed", o.seed.is_some()),
        ("bits", o.bits.is_some()),
        ("n-list", o.n_list.is_some()),
    ];
    if let Some((flag, _)) = given.iter().find(|(f, set)| *set && !allowed.contains(f)) {
        return Err(usage(format!("--{flag} does not apply to experiment `{name}`")));
    }
    let bits = o.bits.unwrap_or(DEFAULT_SCALE_BITS);
    let out = match name {
        "kronecker" => {
            let d = KroneckerConfig::default();
            experiments::kronecker_experiment(&KroneckerConfig { n_max: o.n.unwrap_or(d.n_max), bits, ..d })?
        }
        "ls" => {
            let d = LsConfig::default();
            experiments::ls_experiment(&LsConfig { max_level: o.m.unwrap_or(d.max_level), bits, ..d })?
        }
        "digital" => {
            let d = DigitalConfig::default();
            experiments::digital_experiment(&DigitalConfig { m_max: o.m.unwrap_or(d.m_max), bits, ..d })?
        }
        "debruijn" => {
            let d = DeBruijnConfig::default();
            let max_order = o.m.unwrap_or(d.max_order);
            let m_min = d.m_min.min(max_order);
            experiments::de_bruijn_experiment(&DeBruijnConfig { max_order, m_min, bits, ..d })?
        }
        "stoneham" => {
            let d = StonehamConfig::default();
            let w_list = o.w.map(|w| vec![w]).unwrap_or(d.w_list);
            experiments::stoneham_experiment(&StonehamConfig { w_list, ..d })?
        }
        "energy" => {
            let d = EnergyConfig::default();
            let random_list = match &o.n_list {
                Some(l) => parse_list(l)?,
                None => d.random_list,
            };
            experiments::energy_experiment(&EnergyConfig {
                range_max: o.n.unwrap_or(d.range_max),
                seed: o.seed.unwrap_or(d.seed),
                random_list,
                ..d
            })?
        }
        "random-baseline" => {
            let d = RandomConfig::default();
            let seeds = match o.seed {
                Some(s) => (0..d.seeds.len() as u64).map(|i| s.wrapping_add(i)).collect(),
                None => d.seeds,
            };
            experiments::random_baseline_experiment(&RandomConfig { n: o.n.unwrap_or(d.n), seeds, bits, ..d })?
        }
        _ => {
            let d = SqrtConfig::default();
            experiments::sqrt_experiment(&SqrtConfig { n: o.n.unwrap_or(d.n), bits })?
        }
    };
    Ok(out)
}

fn json_bytes(v: &Value) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(v).expect("json values always serialize");
    text.push('\n');
    text.into_bytes()
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Outcome<()> {
    match out {
        Some(path) => Ok(io::write_atomic(path, bytes)?),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes).and_then(|_| stdout.flush()).map_err(|e| Failure::Compute(e.to_string()))
        }
    }
}
