//! Input loading, output emission and atomic file writes.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use closext::{AttrSet, ClosureOperator, GroundSet, ImplicationalBase, MeetFamily, SetFamily};
use serde_json::{json, Map, Value};

use crate::{Config, Format, Input, OptionalInput};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<closext::Error> for CliError {
    fn from(e: closext::Error) -> Self {
        let code = match e {
            closext::Error::GuardExceeded { .. } => EXIT_GUARD,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult = Result<Outcome, CliError>;

/// What a command produced. `text` goes to stdout in text mode and `fields`
/// form the structured document. `files` are written before anything is
/// printed; when `report_to_out` is set, `--out` receives the rendered
/// report instead of stdout.
#[derive(Default)]
pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub fields: Map<String, Value>,
    pub files: Vec<(PathBuf, String)>,
    pub stderr: String,
    pub report_to_out: bool,
}

impl Outcome {
    pub fn new(code: u8) -> Self {
        Outcome {
            code,
            ..Default::default()
        }
    }

    pub fn field(mut self, key: &str, value: Value) -> Self {
        self.fields.insert(key.to_string(), value);
        self
    }
}

pub fn finish(config: &Config, command: &str, result: CliResult) -> u8 {
    let mut outcome = match result {
        Ok(o) => o,
        Err(e) => return report_error(config, command, &e),
    };
    let mut doc = Map::new();
    doc.insert("command".into(), json!(command));
    doc.insert("exit_code".into(), json!(outcome.code));
    doc.append(&mut outcome.fields);
    let rendered = match config.format {
        Format::Text => outcome.text,
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
            s.push('\n');
            s
        }
    };
    if outcome.report_to_out {
        if let Some(out) = &config.out {
            outcome.files.push((out.clone(), rendered.clone()));
        }
    }
    for (path, contents) in &outcome.files {
        if let Err(e) = write_atomic(path, contents) {
            return report_error(
                config,
                command,
                &CliError::input(format!("cannot write {}: {e}", path.display())),
            );
        }
    }
    if !(outcome.report_to_out && config.out.is_some()) {
        print!("{rendered}");
    }
    eprint!("{}", outcome.stderr);
    outcome.code
}

fn report_error(config: &Config, command: &str, e: &CliError) -> u8 {
    eprintln!("error: {e}");
    if config.format == Format::Structured {
        let doc = json!({ "command": command, "exit_code": e.code, "error": e.message });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    }
    e.code
}

/// Write to a sibling temporary file, then rename over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: closext::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

pub enum Loaded {
    Base(ImplicationalBase),
    Meets(MeetFamily),
}

impl Loaded {
    pub fn kind(&self) -> &'static str {
        match self {
            Loaded::Base(_) => "base",
            Loaded::Meets(_) => "meets",
        }
    }

    pub fn ground(&self) -> &GroundSet {
        match self {
            Loaded::Base(b) => b.ground(),
            Loaded::Meets(m) => m.ground(),
        }
    }

    pub fn closure(&self) -> &dyn ClosureOperator {
        match self {
            Loaded::Base(b) => b,
            Loaded::Meets(m) => m,
        }
    }
}

pub fn load_base(path: &Path) -> Result<ImplicationalBase, CliError> {
    with_path(path, ImplicationalBase::parse(&read(path)?))
}

pub fn load_meets(path: &Path) -> Result<MeetFamily, CliError> {
    with_path(path, MeetFamily::parse(&read(path)?))
}

pub fn load(input: &Input) -> Result<Loaded, CliError> {
    match (&input.base, &input.meets) {
        (Some(p), _) => Ok(Loaded::Base(load_base(p)?)),
        (_, Some(p)) => Ok(Loaded::Meets(load_meets(p)?)),
        _ => Err(CliError::input("one of --base or --meets is required")),
    }
}

pub fn load_optional(input: &OptionalInput) -> Result<Option<Loaded>, CliError> {
    match (&input.base, &input.meets) {
        (Some(p), _) => Ok(Some(Loaded::Base(load_base(p)?))),
        (_, Some(p)) => Ok(Some(Loaded::Meets(load_meets(p)?))),
        _ => Ok(None),
    }
}

/// `{a,b}` style, unambiguous for multi-character tokens.
pub fn braced(ground: &GroundSet, set: AttrSet) -> String {
    format!("{{{}}}", ground.tokens(set).join(","))
}

pub fn set_json(ground: &GroundSet, set: AttrSet) -> Value {
    json!(ground.tokens(set))
}

pub fn sets_json<I: IntoIterator<Item = AttrSet>>(ground: &GroundSet, sets: I) -> Value {
    Value::Array(sets.into_iter().map(|s| set_json(ground, s)).collect())
}

pub fn family_json(family: &SetFamily) -> Value {
    sets_json(family.ground(), family.iter())
}

pub fn base_json(base: &ImplicationalBase) -> Value {
    let g = base.ground();
    json!({
        "elements": g.names(),
        "implications": base.implications().iter().map(|i| json!({
            "premise": set_json(g, i.premise),
            "conclusion": set_json(g, i.conclusion),
        })).collect::<Vec<_>>(),
    })
}
