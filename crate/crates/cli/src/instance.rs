//! Instance files: canonical JSON and a lenient `key: value` text form.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "OrderRepr", into = "OrderRepr")]
pub struct OrderSpec {
    pub kind: String,
    /// Variable names, most significant first.
    pub precedence: Option<Vec<String>>,
}

impl Default for OrderSpec {
    fn default() -> Self {
        OrderSpec { kind: "glex".into(), precedence: None }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OrderRepr {
    Name(String),
    Full {
        kind: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        precedence: Option<Vec<String>>,
    },
}

impl From<OrderRepr> for OrderSpec {
    fn from(r: OrderRepr) -> Self {
        match r {
            OrderRepr::Name(kind) => OrderSpec { kind, precedence: None },
            OrderRepr::Full { kind, precedence } => OrderSpec { kind, precedence },
        }
    }
}

impl From<OrderSpec> for OrderRepr {
    fn from(o: OrderSpec) -> Self {
        match o.precedence {
            None => OrderRepr::Name(o.kind),
            Some(p) => OrderRepr::Full { kind: o.kind, precedence: Some(p) },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modp: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modp_threshold: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc_degree: Option<u64>,
}

impl Options {
    pub fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default)]
    pub characteristic: u64,
    pub variables: Vec<String>,
    #[serde(default)]
    pub order: OrderSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quotient_ideal: Vec<String>,
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

/// Where an expression sits in the source, for error positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Quotient(usize),
    Ideal(usize),
}

#[derive(Clone, Debug, Default)]
pub struct Positions(HashMap<Field, (usize, usize)>);

impl Positions {
    /// Maps a position inside an expression to the file.
    pub fn locate(&self, field: Field, line: usize, column: usize) -> Option<(usize, usize)> {
        let &(l, c) = self.0.get(&field)?;
        Some(if line == 1 { (l, c + column - 1) } else { (l + line - 1, column) })
    }
}

pub fn parse_instance(text: &str) -> Result<(InstanceFile, Positions), CliError> {
    if text.trim_start().starts_with('{') {
        let f: InstanceFile = serde_json::from_str(text)
            .map_err(|e| CliError::parse(e.line(), e.column(), e.to_string()))?;
        Ok((f, Positions::default()))
    } else {
        parse_text(text)
    }
}

fn split_list(value: &str, start_col: usize) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut col = start_col;
    for part in value.split(',') {
        let lead = part.len() - part.trim_start().len();
        let item = part.trim();
        if !item.is_empty() {
            out.push((item.to_string(), col + lead));
        }
        col += part.chars().count() + 1;
    }
    out
}

fn parse_num<T: std::str::FromStr>(v: &str, line: usize, col: usize, key: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::parse(line, col, format!("`{}` expects a non-negative integer, got `{}`", key, v)))
}

/// `key: value` lines; `#` starts a comment. List keys may repeat and
/// accumulate.
pub fn parse_text(text: &str) -> Result<(InstanceFile, Positions), CliError> {
    let mut f = InstanceFile {
        characteristic: 0,
        variables: Vec::new(),
        order: OrderSpec::default(),
        quotient_ideal: Vec::new(),
        ideal: Vec::new(),
        dim: None,
        options: Options::default(),
    };
    let mut pos = Positions::default();
    let mut saw_ideal = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            let col = raw.len() - raw.trim_start().len() + 1;
            return Err(CliError::parse(line, col, "expected `key: value`".into()));
        };
        let vcol = key.chars().count() + 2 + (value.len() - value.trim_start().len());
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        let v = value.trim();
        match key.as_str() {
            "characteristic" | "char" => f.characteristic = parse_num(v, line, vcol, &key)?,
            "variables" | "vars" => f.variables.extend(split_list(value, key_col(raw)).into_iter().map(|(s, _)| s)),
            "order" => f.order.kind = v.to_string(),
            "precedence" => f.order.precedence = Some(split_list(value, 1).into_iter().map(|(s, _)| s).collect()),
            "quotient" | "quotient_ideal" => {
                for (s, c) in split_list(value, key_col(raw)) {
                    pos.0.insert(Field::Quotient(f.quotient_ideal.len()), (line, c));
                    f.quotient_ideal.push(s);
                }
            }
            "ideal" => {
                saw_ideal = true;
                for (s, c) in split_list(value, key_col(raw)) {
                    pos.0.insert(Field::Ideal(f.ideal.len()), (line, c));
                    f.ideal.push(s);
                }
            }
            "dim" | "dimension" => f.dim = Some(parse_num(v, line, vcol, &key)?),
            "max_terms" => f.options.max_terms = Some(parse_num(v, line, vcol, &key)?),
            "max_degree" => f.options.max_degree = Some(parse_num(v, line, vcol, &key)?),
            "max_iterations" => f.options.max_iterations = Some(parse_num(v, line, vcol, &key)?),
            "modp" => f.options.modp = Some(v.to_string()),
            "modp_threshold" => f.options.modp_threshold = Some(parse_num(v, line, vcol, &key)?),
            "search_bound" => f.options.search_bound = Some(parse_num(v, line, vcol, &key)?),
            "trunc_degree" => f.options.trunc_degree = Some(parse_num(v, line, vcol, &key)?),
            other => {
                let col = raw.len() - raw.trim_start().len() + 1;
                return Err(CliError::parse(line, col, format!("unknown key `{}`", other)));
            }
        }
    }
    if f.variables.is_empty() {
        return Err(CliError::parse(1, 1, "missing `variables`".into()));
    }
    if !saw_ideal {
        return Err(CliError::parse(1, 1, "missing `ideal`".into()));
    }
    Ok((f, pos))
}

/// Column just after the colon of a `key: value` line.
fn key_col(raw: &str) -> usize {
    raw.find(':').map_or(1, |i| raw[..i].chars().count() + 2)
}

pub fn to_json(f: &InstanceFile) -> String {
    serde_json::to_string_pretty(f).expect("instance serializes")
}

pub fn to_text(f: &InstanceFile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "characteristic: {}", f.characteristic);
    let _ = writeln!(s, "variables: {}", f.variables.join(", "));
    let _ = writeln!(s, "order: {}", f.order.kind);
    if let Some(p) = &f.order.precedence {
        let _ = writeln!(s, "precedence: {}", p.join(", "));
    }
    if !f.quotient_ideal.is_empty() {
        let _ = writeln!(s, "quotient: {}", f.quotient_ideal.join(", "));
    }
    let _ = writeln!(s, "ideal: {}", f.ideal.join(", "));
    if let Some(d) = f.dim {
        let _ = writeln!(s, "dim: {}", d);
    }
    let o = &f.options;
    let mut opt = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            let _ = writeln!(s, "{}: {}", k, v);
        }
    };
    opt("max_terms", o.max_terms.map(|v| v.to_string()));
    opt("max_degree", o.max_degree.map(|v| v.to_string()));
    opt("max_iterations", o.max_iterations.map(|v| v.to_string()));
    opt("modp", o.modp.clone());
    opt("modp_threshold", o.modp_threshold.map(|v| v.to_string()));
    opt("search_bound", o.search_bound.map(|v| v.to_string()));
    opt("trunc_degree", o.trunc_degree.map(|v| v.to_string()));
    s
}
