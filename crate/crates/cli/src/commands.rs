use std::fmt::Write;
use std::path::{Path, PathBuf};

use closext::{
    check_largest as recognize, enumerate_closed, largest_extension_base,
    largest_extension_bruteforce, random_base, remove_unitary_step, ExtensionTrace,
    ImplicationalBase, MeetFamily, SetFamily, UnitTable,
};
use serde_json::{json, Value};

use crate::io::*;
use crate::{Config, Format, Input, OptionalInput};

pub fn closure(_config: &Config, input: &Input, set: &str) -> CliResult {
    let loaded = load(input)?;
    let ground = loaded.ground();
    let x = ground.parse_set(set)?;
    let closed = loaded.closure().close(x);
    Ok(Outcome::new(EXIT_OK)
        .field("representation", json!(loaded.kind()))
        .field("input", set_json(ground, x))
        .field("closure", set_json(ground, closed))
        .with_text(format!("{}\n", ground.render(closed)))
        .report())
}

pub fn enumerate(config: &Config, input: &Input) -> CliResult {
    let loaded = load(input)?;
    let family = enumerate_closed(loaded.closure(), config.guard)?;
    Ok(artifact(config, family.to_text())
        .field("representation", json!(loaded.kind()))
        .field("count", json!(family.len()))
        .field("closed_sets", family_json(&family)))
}

pub fn check_largest(_config: &Config, path: &Path) -> CliResult {
    let base = load_base(path)?;
    let report = recognize(&base)?;
    let code = if report.verdict {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let mut outcome = Outcome::new(code)
        .with_text(report.render_text(base.ground()))
        .report();
    if let Value::Object(map) = report.to_json(base.ground()) {
        outcome.fields.extend(map);
    }
    Ok(outcome)
}

pub fn extend(config: &Config, input: &Input) -> CliResult {
    match load(input)? {
        Loaded::Base(base) => {
            let out = largest_extension_base(&base);
            let mut outcome = artifact(config, out.to_text())
                .field("representation", json!("base"))
                .field("result", base_json(&out));
            if config.trace {
                let trace = base_trace(&base);
                outcome = outcome.field("trace", json!(trace.lines().collect::<Vec<_>>()));
                emit_trace(config, &mut outcome, trace);
            }
            Ok(outcome)
        }
        Loaded::Meets(meets) => {
            let trace = meets.largest_extension();
            let fin = &trace.final_meets;
            let mut outcome = artifact(config, fin.to_text())
                .field("representation", json!("meets"))
                .field("initial_count", json!(trace.initial.len()))
                .field("count", json!(fin.len()))
                .field("meets", sets_json(fin.ground(), fin.iter()));
            if config.trace {
                outcome = outcome.field("trace", trace.to_json());
                emit_trace(config, &mut outcome, trace.render_text());
            }
            Ok(outcome)
        }
    }
}

/// Saturation followed by removal of each unit rule, as a readable log.
fn base_trace(base: &ImplicationalBase) -> String {
    let g = base.ground();
    let rules = |b: &ImplicationalBase| {
        let parts: Vec<String> = b.implications().iter().map(|i| i.compact(g)).collect();
        format!("{{{}}}", parts.join(", "))
    };
    let mut out = String::new();
    let sat = base.saturate();
    let _ = writeln!(out, "input Σ = {}", rules(base));
    let _ = writeln!(out, "saturated Σ = {}", rules(&sat));
    if sat.has_empty_premise() {
        let _ = writeln!(
            out,
            "Φ(∅) = {}: empty-premise rule dropped",
            g.compact(sat.closure(Default::default()))
        );
    }
    let units = UnitTable::compute(&sat);
    let mut current = sat.clone();
    for (i, &x) in units.pivots().iter().enumerate() {
        let _ = write!(
            out,
            "step {}: pivot {}, Φ_*({}) = {}",
            i + 1,
            g.name(x),
            g.name(x),
            g.compact(units.star(x))
        );
        if current.has_empty_premise() {
            out.push('\n');
            continue;
        }
        match remove_unitary_step(&current, x) {
            Ok(next) => {
                current = next;
                let _ = writeln!(out, "\nΣ_{} = {}", i + 1, rules(&current));
            }
            Err(e) => {
                let _ = writeln!(out, " ({e})");
            }
        }
    }
    let _ = writeln!(out, "result Σ = {}", rules(&largest_extension_base(base)));
    out
}

fn emit_trace(config: &Config, outcome: &mut Outcome, trace: String) {
    match &config.out {
        Some(out) => outcome.files.push((trace_path(out), trace)),
        None if config.format == Format::Text => outcome.stderr.push_str(&trace),
        None => {}
    }
}

pub fn trace_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".trace");
    PathBuf::from(name)
}

pub fn meets(config: &Config, input: &Input) -> CliResult {
    let loaded = load(input)?;
    let meets = MeetFamily::of_closure(loaded.closure(), config.guard)?;
    Ok(artifact(config, meets.to_text())
        .field("representation", json!(loaded.kind()))
        .field("count", json!(meets.len()))
        .field("meets", sets_json(meets.ground(), meets.iter())))
}

pub fn oracle_largest(config: &Config, input: &Input) -> CliResult {
    let loaded = load(input)?;
    let fmax = largest_extension_bruteforce(loaded.closure(), config.guard)?;
    Ok(artifact(config, fmax.to_text())
        .field("representation", json!(loaded.kind()))
        .field("count", json!(fmax.len()))
        .field("closed_sets", family_json(&fmax)))
}

struct Check {
    name: &'static str,
    family: SetFamily,
}

pub fn verify(config: &Config, input: &Input, expected: Option<&Path>) -> CliResult {
    let loaded = load(input)?;
    let guard = config.guard;
    let fmax = largest_extension_bruteforce(loaded.closure(), guard)?;
    let family = enumerate_closed(loaded.closure(), guard)?;

    let mut checks = Vec::new();
    let meets = match &loaded {
        Loaded::Base(base) => {
            let out = largest_extension_base(base);
            checks.push(Check {
                name: "base",
                family: enumerate_closed(&out, guard)?,
            });
            MeetFamily::of_closure(base, guard)?
        }
        Loaded::Meets(m) => m.clone(),
    };
    let trace = meets.largest_extension();
    checks.push(Check {
        name: "meets",
        family: trace.final_meets.closed_sets(guard)?,
    });
    if let Some(path) = expected {
        let claimed = if path.extension().is_some_and(|e| e == "imp") {
            enumerate_closed(&load_base(path)?, guard)?
        } else {
            load_meets(path)?.closed_sets(guard)?
        };
        if claimed.ground() != fmax.ground() {
            return Err(CliError::input(format!(
                "{}: ground set differs from the input",
                path.display()
            )));
        }
        checks.push(Check {
            name: "expected",
            family: claimed,
        });
    }

    let g = fmax.ground();
    let gained = fmax.difference(&family);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "oracle: {} closed sets (input {})",
        fmax.len(),
        family.len()
    );
    let listed = |sets: &[closext::AttrSet]| {
        sets.iter()
            .map(|&s| braced(g, s))
            .collect::<Vec<_>>()
            .join(" ")
    };
    if gained.is_empty() {
        let _ = writeln!(text, "gained: none");
    } else {
        let _ = writeln!(text, "gained: {}", listed(&gained));
    }
    let label = |name: &str| match name {
        "expected" => "expected file".to_string(),
        other => format!("{other} pipeline"),
    };
    let mut ok = true;
    let mut checks_json = Vec::new();
    for c in &checks {
        let missing = fmax.difference(&c.family);
        let extra = c.family.difference(&fmax);
        let equal = missing.is_empty() && extra.is_empty();
        ok &= equal;
        if equal {
            let _ = writeln!(text, "{}: ok ({} sets)", label(c.name), c.family.len());
        } else {
            let _ = writeln!(
                text,
                "{}: MISMATCH ({} sets)",
                label(c.name),
                c.family.len()
            );
            if !missing.is_empty() {
                let _ = writeln!(text, "  missing: {}", listed(&missing));
            }
            if !extra.is_empty() {
                let _ = writeln!(text, "  extra: {}", listed(&extra));
            }
        }
        checks_json.push(json!({
            "pipeline": c.name,
            "equal": equal,
            "count": c.family.len(),
            "missing": sets_json(g, missing),
            "extra": sets_json(g, extra),
        }));
    }
    let _ = writeln!(text, "verdict: {}", if ok { "ok" } else { "mismatch" });
    Ok(Outcome::new(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        .with_text(text)
        .report()
        .field("representation", json!(loaded.kind()))
        .field("verified", json!(ok))
        .field("input_count", json!(family.len()))
        .field("oracle_count", json!(fmax.len()))
        .field("gained", sets_json(g, gained))
        .field("checks", Value::Array(checks_json)))
}

pub fn gen_random(config: &Config, n: usize, k: usize) -> CliResult {
    let base = random_base(n, k, config.seed)?;
    let stem = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("random"));
    let with_ext = |ext: &str| {
        let mut s = stem.as_os_str().to_owned();
        s.push(ext);
        PathBuf::from(s)
    };
    let mut outcome = Outcome::new(EXIT_OK);
    let imp = with_ext(".imp");
    outcome.files.push((imp.clone(), base.to_text()));
    let mut written = vec![imp];
    let mut meets_count = Value::Null;
    if n <= config.guard {
        let meets = MeetFamily::of_closure(&base, config.guard)?;
        meets_count = json!(meets.len());
        let path = with_ext(".meets");
        outcome.files.push((path.clone(), meets.to_text()));
        written.push(path);
    }
    let mut text = String::new();
    for p in &written {
        let _ = writeln!(text, "wrote {}", p.display());
    }
    outcome.text = text;
    Ok(outcome
        .field("n", json!(n))
        .field("k", json!(k))
        .field("seed", json!(config.seed))
        .field(
            "files",
            json!(written
                .iter()
                .map(|p| p.display().to_string())
                .collect::<Vec<_>>()),
        )
        .field("meets_count", meets_count))
}

struct Row {
    label: String,
    n: usize,
    k: Option<usize>,
    m0: usize,
    mmax: usize,
    m3: Vec<usize>,
    m6: Vec<usize>,
    verified: bool,
}

impl Row {
    fn ratio(&self) -> Option<f64> {
        (self.m0 > 0).then(|| self.mmax as f64 / self.m0 as f64)
    }
}

fn growth_row(
    label: String,
    meets: MeetFamily,
    k: Option<usize>,
    guard: usize,
) -> Result<Row, CliError> {
    let n = meets.ground().len();
    let trace: ExtensionTrace = meets.largest_extension();
    let fmax = largest_extension_bruteforce(&meets, guard)?;
    let verified = trace.final_meets.closed_sets(guard)? == fmax
        && trace.final_meets == MeetFamily::from_family(&fmax.meets_of_family()?);
    Ok(Row {
        label,
        n,
        k,
        m0: trace.initial.len(),
        mmax: trace.final_meets.len(),
        m3: trace.steps.iter().map(|s| s.partition.m3.len()).collect(),
        m6: trace.steps.iter().map(|s| s.partition.m6.len()).collect(),
        verified,
    })
}

pub fn growth(
    config: &Config,
    input: &OptionalInput,
    n: usize,
    trials: usize,
    k: Option<usize>,
) -> CliResult {
    let guard = config.guard;
    let mut rows = Vec::new();
    match load_optional(input)? {
        Some(loaded) => {
            let size = loaded.ground().len();
            if size > guard {
                return Err(closext::Error::GuardExceeded { n: size, guard }.into());
            }
            let meets = match loaded {
                Loaded::Base(b) => MeetFamily::of_closure(&b, guard)?,
                Loaded::Meets(m) => m,
            };
            rows.push(growth_row("input".into(), meets, None, guard)?);
        }
        None => {
            if n > guard {
                return Err(closext::Error::GuardExceeded { n, guard }.into());
            }
            let k = k.unwrap_or(n);
            for t in 0..trials {
                let seed = config.seed.wrapping_add(t as u64);
                let base = random_base(n, k, seed)?;
                let meets = MeetFamily::of_closure(&base, guard)?;
                rows.push(growth_row(seed.to_string(), meets, Some(k), guard)?);
            }
        }
    }

    let counts = |v: &[usize]| {
        if v.is_empty() {
            "-".to_string()
        } else {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    };
    let mut text = String::new();
    let _ = writeln!(text, "instance\tn\tk\tm0\tmmax\tratio\tm3\tm6\tverified");
    for r in &rows {
        let _ = writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.label,
            r.n,
            r.k.map_or("-".to_string(), |k| k.to_string()),
            r.m0,
            r.mmax,
            r.ratio().map_or("-".to_string(), |x| format!("{x:.3}")),
            counts(&r.m3),
            counts(&r.m6),
            r.verified
        );
    }
    let max = rows
        .iter()
        .filter_map(|r| r.ratio().map(|x| (x, r.label.clone())))
        .fold(None, |best: Option<(f64, String)>, cur| match best {
            Some(b) if b.0 >= cur.0 => Some(b),
            _ => Some(cur),
        });
    let all_verified = rows.iter().all(|r| r.verified);
    match &max {
        Some((x, label)) => {
            let _ = writeln!(text, "max ratio: {x:.3} (instance {label})");
        }
        None => {
            let _ = writeln!(text, "max ratio: -");
        }
    }
    let _ = writeln!(
        text,
        "verified: {}/{}",
        rows.iter().filter(|r| r.verified).count(),
        rows.len()
    );
    let rows_json: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "instance": r.label,
                "n": r.n,
                "k": r.k,
                "m0": r.m0,
                "mmax": r.mmax,
                "ratio": r.ratio(),
                "m3": r.m3,
                "m6": r.m6,
                "verified": r.verified,
            })
        })
        .collect();
    Ok(
        Outcome::new(if all_verified { EXIT_OK } else { EXIT_NEGATIVE })
            .with_text(text)
            .report()
            .field("rows", Value::Array(rows_json))
            .field("max_ratio", json!(max.map(|m| m.0)))
            .field("all_verified", json!(all_verified)),
    )
}

/// Outcome for commands whose product is a file: the native text goes to
/// `--out` if given, else to stdout in text mode.
fn artifact(config: &Config, contents: String) -> Outcome {
    let mut outcome = Outcome::new(EXIT_OK);
    match &config.out {
        Some(path) => {
            outcome.text = format!("wrote {}\n", path.display());
            outcome.files.push((path.clone(), contents));
            outcome = outcome.field("file", json!(path.display().to_string()));
        }
        None => outcome.text = contents,
    }
    outcome
}

impl Outcome {
    fn with_text(mut self, text: String) -> Self {
        self.text = text;
        self
    }

    fn report(mut self) -> Self {
        self.report_to_out = true;
        self
    }
}
