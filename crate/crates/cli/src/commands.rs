//! Command dispatch and report assembly.

use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use hsmult_core::algebra::expr::{mentions_params, parse_expr, parse_param_name, parse_param_xpoly, parse_series, Expr, ExprKind};
use hsmult_core::algebra::modular::is_prime;
use hsmult_core::algebra::{BaseField, Fp, MonomialOrder, OrderKind, PolyCtx, Rational, SeriesOracle, SparsePoly};
use hsmult_core::generator::{EngineScalar, Generator};
use hsmult_core::matlis::{check_invariants, compute_dual_basis, DualBasis, EngineConfig, EngineStats};
use hsmult_core::modp::ModpMode;
use hsmult_core::oracles::vector_space_length;
use hsmult_core::reduction::{
    find_reduction, find_reduction_by_length, verify_reduction_by_length, MultiplicityEngine, MultiplicityResult,
    ProblemInstance, ReductionCertificate,
};
use hsmult_core::selftest::{run_selftest, SelftestOptions};
use hsmult_core::Error;
use serde_json::{json, Value};

use crate::error::{CliError, ErrorKind};
use crate::instance::{parse_instance, Field, InstanceFile, Positions};

pub const SCHEMA: &str = "hsmult-report/1";
pub const DEFAULT_SEARCH_BOUND: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Dual,
    Length,
    Mult,
    Reduce,
    Member,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dual => "dual",
            Command::Length => "length",
            Command::Mult => "mult",
            Command::Reduce => "reduce",
            Command::Member => "member",
            Command::Selftest => "selftest",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "dual" => Command::Dual,
            "length" => Command::Length,
            "mult" => Command::Mult,
            "reduce" => Command::Reduce,
            "member" => Command::Member,
            "selftest" => Command::Selftest,
            other => return Err(CliError::invalid(format!("unknown command `{}`", other))),
        })
    }
}

/// Command-line settings; each one overrides the file's `options`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub order: Option<String>,
    pub modp: Option<String>,
    pub modp_threshold: Option<usize>,
    pub max_terms: Option<usize>,
    pub max_degree: Option<u64>,
    pub search_bound: Option<u32>,
    pub trunc_degree: Option<u64>,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub overrides: Overrides,
    pub timing: bool,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub input: Option<String>,
    pub expr: Option<String>,
    pub settings: Value,
    pub result: Value,
    pub stats: Value,
    pub lines: Vec<String>,
    pub elapsed_ms: Option<u128>,
    /// False when a self-test suite failed.
    pub success: bool,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "schema": SCHEMA,
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command.name(),
            "input": self.input,
            "settings": self.settings,
            "result": self.result,
            "stats": self.stats,
        });
        if let Some(e) = &self.expr {
            v["expr"] = json!(e);
        }
        if let Some(ms) = self.elapsed_ms {
            v["timing_ms"] = json!(ms);
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = self.lines.join("\n");
        if let Some(ms) = self.elapsed_ms {
            s.push_str(&format!("\ntime: {} ms", ms));
        }
        s.push('\n');
        s
    }
}

/// Resolved engine settings for one run.
#[derive(Clone, Debug)]
pub struct Settings {
    pub config: EngineConfig,
    pub search_bound: u32,
}

impl Settings {
    fn to_json(&self) -> Value {
        let c = &self.config;
        json!({
            "order": c.order.kind().name(),
            "precedence": c.order.precedence(),
            "modp": c.modp.mode.name(),
            "modp_threshold": c.modp.threshold,
            "max_terms": c.caps.max_terms,
            "max_degree": c.caps.max_degree,
            "max_iterations": c.caps.max_iterations,
            "search_bound": self.search_bound,
            "trunc_degree": c.trunc_degree,
        })
    }
}

pub fn resolve_settings(file: &InstanceFile, ov: &Overrides) -> Result<Settings, CliError> {
    let n = file.variables.len();
    let kind_name = ov.order.clone().unwrap_or_else(|| file.order.kind.clone());
    let kind = OrderKind::from_str(&kind_name).map_err(CliError::from)?;
    let order = match &file.order.precedence {
        None => MonomialOrder::new(kind, n),
        Some(names) => {
            let idx = names
                .iter()
                .map(|v| {
                    file.variables
                        .iter()
                        .position(|w| w == v)
                        .ok_or_else(|| CliError::invalid(format!("precedence names unknown variable `{}`", v)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if idx.len() != n {
                return Err(CliError::invalid("precedence must list every variable once"));
            }
            MonomialOrder::with_precedence(kind, idx)?
        }
    };
    let mut config = EngineConfig::new(order);
    let o = &file.options;
    if let Some(v) = ov.max_terms.or(o.max_terms) {
        config.caps.max_terms = v;
    }
    if let Some(v) = ov.max_degree.or(o.max_degree) {
        config.caps.max_degree = v;
    }
    if let Some(v) = o.max_iterations {
        config.caps.max_iterations = v;
    }
    if let Some(v) = ov.trunc_degree.or(o.trunc_degree) {
        config.trunc_degree = v;
    }
    if let Some(m) = ov.modp.as_ref().or(o.modp.as_ref()) {
        config.modp.mode = ModpMode::from_str(&m.to_ascii_lowercase())?;
    }
    if let Some(t) = ov.modp_threshold.or(o.modp_threshold) {
        config.modp.threshold = t;
    }
    let search_bound = ov.search_bound.or(o.search_bound).unwrap_or(DEFAULT_SEARCH_BOUND);
    Ok(Settings { config, search_bound })
}

fn validate(file: &InstanceFile) -> Result<(), CliError> {
    for (k, v) in file.variables.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(CliError::invalid(format!("`{}` is not a valid variable name", v)));
        }
        if parse_param_name(v).is_some() {
            return Err(CliError::invalid(format!("`{}` is reserved for parameters", v)));
        }
        if file.variables[..k].contains(v) {
            return Err(CliError::invalid(format!("variable `{}` declared twice", v)));
        }
    }
    if let Some(d) = file.dim {
        if d > file.variables.len() {
            return Err(CliError::invalid(format!("dim {} exceeds the {} variables", d, file.variables.len())));
        }
    }
    let p = file.characteristic;
    if p != 0 && !is_prime(p) {
        return Err(CliError::invalid(format!("characteristic {} is not prime", p)));
    }
    if p > u32::MAX as u64 {
        return Err(CliError::invalid("characteristic must fit in 32 bits"));
    }
    if file.ideal.is_empty() && file.quotient_ideal.is_empty() {
        return Err(CliError::invalid("no generators"));
    }
    Ok(())
}

/// Turns expression errors into file positions where they are known.
fn locate(err: Error, field: Field, pos: &Positions, text: &str) -> CliError {
    match err {
        Error::Parse { line, column, message } => {
            let label = match field {
                Field::Quotient(i) => format!("quotient_ideal[{}]", i),
                Field::Ideal(i) => format!("ideal[{}]", i),
            };
            match pos.locate(field, line, column) {
                Some((l, c)) => CliError::parse(l, c, message),
                None => CliError::parse(line, column, format!("{} `{}`: {}", label, text, message)),
            }
        }
        other => other.into(),
    }
}

fn collect_params(texts: &[&str], vars: &[String]) -> Result<Vec<String>, Error> {
    fn walk(e: &Expr, vars: &[String], out: &mut Vec<(usize, usize, String)>) {
        match &e.kind {
            ExprKind::Int(_) => {}
            ExprKind::Ident(s) => {
                if !vars.contains(s) {
                    if let Some((i, j)) = parse_param_name(s) {
                        out.push((i, j, s.clone()));
                    }
                }
            }
            ExprKind::Neg(a) | ExprKind::Pow(a, _) => walk(a, vars, out),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                walk(a, vars, out);
                walk(b, vars, out);
            }
        }
    }
    let mut out = Vec::new();
    for t in texts {
        walk(&parse_expr(t)?, vars, &mut out);
    }
    out.sort();
    out.dedup();
    Ok(out.into_iter().map(|(_, _, s)| s).collect())
}

struct Job<'a> {
    file: &'a InstanceFile,
    pos: &'a Positions,
    settings: Settings,
}

impl Job<'_> {
    fn vars(&self) -> &[String] {
        &self.file.variables
    }

    fn series<B: BaseField>(&self, coeff: B::Ctx) -> Result<(Vec<SeriesOracle<B>>, Vec<SeriesOracle<B>>), CliError> {
        let q = self.file.quotient_ideal.iter().enumerate().map(|(i, t)| {
            parse_series::<B>(t, coeff, self.vars()).map_err(|e| locate(e, Field::Quotient(i), self.pos, t))
        });
        let q = q.collect::<Result<Vec<_>, _>>()?;
        let j = self.file.ideal.iter().enumerate().map(|(i, t)| {
            parse_series::<B>(t, coeff, self.vars()).map_err(|e| locate(e, Field::Ideal(i), self.pos, t))
        });
        Ok((q, j.collect::<Result<Vec<_>, _>>()?))
    }

    fn instance<B: BaseField + EngineScalar<Base = B>>(&self, coeff: B::Ctx) -> Result<ProblemInstance<B>, CliError> {
        let dim = self.file.dim.ok_or_else(|| CliError::invalid("this command needs `dim`"))?;
        let (q, j) = self.series::<B>(coeff)?;
        Ok(ProblemInstance::new(coeff, q, j, dim, self.settings.config.clone())?)
    }
}

/// Parses and validates an instance file and builds the problem over `B`.
/// The caller picks `B` to match the file's characteristic.
pub fn load_instance<B: BaseField + EngineScalar<Base = B>>(
    text: &str,
    coeff: B::Ctx,
    ov: &Overrides,
) -> Result<(InstanceFile, ProblemInstance<B>), CliError> {
    let (file, pos) = parse_instance(text)?;
    validate(&file)?;
    let settings = resolve_settings(&file, ov)?;
    let inst = Job { file: &file, pos: &pos, settings }.instance::<B>(coeff)?;
    Ok((file, inst))
}

fn stats_json(s: &EngineStats) -> Value {
    json!({
        "iterations": s.iterations,
        "accepted": s.accepted,
        "rejected": s.rejected,
        "largest_gamma": s.largest_gamma,
        "largest_matrix_rows": s.largest_matrix_rows,
        "modp": {
            "direct": s.modp.direct,
            "modular": s.modp.modular,
            "attempts": s.modp.attempts,
            "retries": s.modp.retries,
            "fallbacks": s.modp.fallbacks,
        }
    })
}

/// Everything about a finished dual basis run, rendered.
fn basis_json<E: EngineScalar>(b: &DualBasis<E>, names: &[Vec<String>]) -> Value {
    let vars = &names[0];
    let inner = &names[1..];
    let xis: Vec<Value> = b
        .xis
        .iter()
        .map(|x| {
            json!({
                "leading": x.leading.render(vars),
                "element": x.element.render(&b.order, names),
                "monic": x.monic.render(&b.order, names),
            })
        })
        .collect();
    let matlist: Vec<Value> = b
        .matlist
        .iter()
        .map(|m| json!({ "rows": m.rows(), "cols": m.cols(), "entries": m.render(inner) }))
        .collect();
    json!({
        "length": b.length(),
        "t1_size": b.t1_terms.len(),
        "t1_terms": b.t1_terms.iter().map(|t| t.render(vars)).collect::<Vec<_>>(),
        "accepted": b.xis.len(),
        "xis": xis,
        "polylist": b.polylist.iter().map(|p| p.render(inner)).collect::<Vec<_>>(),
        "matlist": matlist,
    })
}

fn basis_lines<E: EngineScalar>(b: &DualBasis<E>, names: &[Vec<String>], lines: &mut Vec<String>) {
    lines.push(format!("T1: {} terms", b.t1_terms.len()));
    for (k, x) in b.xis.iter().enumerate() {
        lines.push(format!("xi_{} = {}", k + 1, x.element.render(&b.order, names)));
    }
    let polys: Vec<String> = b.polylist.iter().map(|p| p.render(&names[1..])).collect();
    lines.push(format!("PolyList: [{}]", polys.join(", ")));
    lines.push(format!("MatList: {} matrices", b.matlist.len()));
}

fn run_dual<E: EngineScalar>(
    gens: Vec<Generator<E>>,
    config: EngineConfig,
    names: Vec<Vec<String>>,
    full: bool,
) -> Result<(Value, Value, Vec<String>), CliError> {
    let b = compute_dual_basis(gens.clone(), config)?;
    check_invariants(&gens, &b).map_err(|m| CliError::new(ErrorKind::Internal, m))?;
    let mut lines = vec![format!("length = {}", b.length())];
    let result = if full {
        basis_lines(&b, &names, &mut lines);
        basis_json(&b, &names)
    } else {
        json!({ "length": b.length(), "t1_size": b.t1_terms.len(), "accepted": b.xis.len() })
    };
    Ok((result, stats_json(&b.stats), lines))
}

fn dual_command<B: BaseField + EngineScalar<Base = B>>(
    job: &Job<'_>,
    coeff: B::Ctx,
    full: bool,
) -> Result<(Value, Value, Vec<String>), CliError> {
    let texts: Vec<&str> = job.file.quotient_ideal.iter().chain(&job.file.ideal).map(|s| s.as_str()).collect();
    let vars = job.vars().to_vec();
    let config = job.settings.config.clone();
    let mut with_params = false;
    for t in &texts {
        with_params |= mentions_params(t, &vars)?;
    }
    if with_params {
        let params = collect_params(&texts, &vars)?;
        let fields = (0..job.file.quotient_ideal.len()).map(Field::Quotient).chain((0..job.file.ideal.len()).map(Field::Ideal));
        let gens = texts
            .iter()
            .zip(fields)
            .map(|(t, f)| {
                parse_param_xpoly::<B>(t, coeff, &vars, &params)
                    .map(Generator::from_poly)
                    .map_err(|e| locate(e, f, job.pos, t))
            })
            .collect::<Result<Vec<_>, _>>()?;
        run_dual(gens, config, vec![vars, params], full)
    } else {
        let (q, j) = job.series::<B>(coeff)?;
        let ctx = PolyCtx::new(vars.len(), coeff);
        let gens = q.into_iter().chain(j).map(|s| Generator::new(ctx, vec![(B::one(coeff), Arc::new(s))])).collect();
        run_dual::<B>(gens, config, vec![vars], full)
    }
}

fn generic_generator_strings<B: BaseField + EngineScalar<Base = B>>(inst: &ProblemInstance<B>, file: &InstanceFile) -> Vec<String> {
    let layout = inst.layout();
    let names = vec![file.variables.clone(), layout.names()];
    let mut out = Vec::new();
    if let Ok(gens) = inst.generic_generators() {
        for (i, g) in gens.iter().enumerate() {
            match g.as_polynomial() {
                Some(p) => out.push(p.render_in(&inst.config.order, &names)),
                None if i < inst.dim => {
                    let mut s = format!("({})", file.ideal[i]);
                    for j in inst.dim + 1..=layout.m {
                        s.push_str(&format!(" + t_{}_{}*({})", i + 1, j, file.ideal[j - 1]));
                    }
                    out.push(s);
                }
                None => out.push(file.quotient_ideal[i - inst.dim].clone()),
            }
        }
    }
    out
}

fn mult_json<B: BaseField + EngineScalar<Base = B>>(
    inst: &ProblemInstance<B>,
    file: &InstanceFile,
    r: &MultiplicityResult<B>,
) -> (Value, Vec<String>) {
    let names = vec![file.variables.clone(), r.layout.names()];
    let mut v = basis_json(&r.basis, &names);
    v["e"] = json!(r.e);
    v["parameters"] = json!(r.layout.names());
    v["generic_generators"] = json!(generic_generator_strings(inst, file));
    let mut lines = vec![format!("e = {}", r.e)];
    basis_lines(&r.basis, &names, &mut lines);
    (v, lines)
}

fn reduction_json<B: BaseField + EngineScalar<Base = B>>(
    c: &ReductionCertificate<B>,
    file: &InstanceFile,
    order: &MonomialOrder,
    verified: bool,
) -> Value {
    let names = vec![file.variables.clone()];
    let rows: Vec<Vec<String>> = c.rows().iter().map(|r| r.iter().map(|x| x.render(&[])).collect()).collect();
    let gens: Vec<String> = c
        .generators
        .iter()
        .take(c.layout.d)
        .enumerate()
        .map(|(i, g)| match g.as_polynomial() {
            Some(p) => p.render_in(order, &names),
            None => {
                let mut s = format!("({})", file.ideal[i]);
                for j in c.layout.d + 1..=c.layout.m {
                    let a = &c.a[c.layout.index(i + 1, j)];
                    if !a.is_zero() {
                        s.push_str(&format!(" + ({})*({})", a.render(&[]), file.ideal[j - 1]));
                    }
                }
                s
            }
        })
        .collect();
    json!({ "a": rows, "mode": c.mode.name(), "generators": gens, "length_verified": verified })
}

fn typed<B: BaseField + EngineScalar<Base = B>>(
    cmd: Command,
    job: &Job<'_>,
    coeff: B::Ctx,
    expr: Option<&str>,
) -> Result<(Value, Value, Vec<String>), CliError> {
    match cmd {
        Command::Dual => dual_command::<B>(job, coeff, true),
        Command::Length => dual_command::<B>(job, coeff, false),
        Command::Mult => {
            let inst = job.instance::<B>(coeff)?;
            let r = hsmult_core::reduction::multiplicity(&inst)?;
            check_invariants(&inst.generic_generators()?, &r.basis).map_err(|m| CliError::new(ErrorKind::Internal, m))?;
            let (v, lines) = mult_json(&inst, job.file, &r);
            Ok((v, stats_json(&r.basis.stats), lines))
        }
        Command::Reduce => {
            let inst = job.instance::<B>(coeff)?;
            let r = hsmult_core::reduction::multiplicity(&inst)?;
            let bound = job.settings.search_bound;
            let cert = match find_reduction(&inst, &r, bound) {
                Err(Error::SearchExhausted(_)) => find_reduction_by_length(&inst, r.e, bound)?,
                other => other?,
            };
            let verified = verify_reduction_by_length(&inst, r.e, &cert.a)?;
            let (mut v, mut lines) = mult_json(&inst, job.file, &r);
            let red = reduction_json(&cert, job.file, &inst.config.order, verified);
            lines.push(format!("reduction ({}): a = {}", cert.mode.name(), red["a"]));
            if let Some(gs) = red["generators"].as_array() {
                for g in gs {
                    lines.push(format!("  {}", g.as_str().unwrap_or_default()));
                }
            }
            lines.push(format!("length check: {}", if verified { "passed" } else { "failed" }));
            v["reduction"] = red;
            Ok((v, stats_json(&r.basis.stats), lines))
        }
        Command::Member => {
            let text = expr.ok_or_else(|| CliError::invalid("`member` needs an expression"))?;
            let h = parse_series::<B>(text, coeff, job.vars()).map_err(CliError::from)?;
            let inst = job.instance::<B>(coeff)?;
            let m = MultiplicityEngine::new().is_in_integral_closure(&inst, h)?;
            let side = |r: &MultiplicityResult<B>| json!({ "e": r.e, "t1_size": r.basis.t1_terms.len(), "accepted": r.basis.xis.len() });
            let v = json!({ "member": m.member, "without": side(&m.without), "with": side(&m.with) });
            let lines = vec![
                format!("member = {}", m.member),
                format!("e(J) = {} ({}+{})", m.without.e, m.without.basis.t1_terms.len(), m.without.basis.xis.len()),
                format!("e(J + <h>) = {} ({}+{})", m.with.e, m.with.basis.t1_terms.len(), m.with.basis.xis.len()),
            ];
            let mut stats = m.without.basis.stats;
            stats.modp.merge(&m.with.basis.stats.modp);
            Ok((v, stats_json(&stats), lines))
        }
        Command::Selftest => unreachable!("handled before dispatch"),
    }
}

/// Extra check for `selftest FILE`: engine length of `I + J` against the
/// vector-space oracle, when every generator is a polynomial.
fn instance_selftest<B: BaseField + EngineScalar<Base = B>>(job: &Job<'_>, coeff: B::Ctx) -> Result<Value, CliError> {
    let (q, j) = job.series::<B>(coeff)?;
    let all: Vec<SeriesOracle<B>> = q.into_iter().chain(j).collect();
    let polys: Option<Vec<SparsePoly<B>>> = all.iter().map(|s| s.as_polynomial().cloned()).collect();
    let Some(polys) = polys else {
        return Ok(json!({ "name": "instance length vs vector-space length", "cases": 0, "passed": true, "failures": [] }));
    };
    let oracle = vector_space_length(&polys, 40);
    let gens: Vec<Generator<B>> = polys.into_iter().map(Generator::from_poly).collect();
    let engine = compute_dual_basis(gens, job.settings.config.clone()).map(|b| b.length());
    let ok = matches!((&engine, &oracle), (Ok(a), Ok(b)) if a == b);
    let failures: Vec<String> = if ok { Vec::new() } else { vec![format!("engine {:?}, oracle {:?}", engine, oracle)] };
    Ok(json!({ "name": "instance length vs vector-space length", "cases": 1, "passed": ok, "failures": failures }))
}

/// Runs one command. `input` is `(name, contents)` of the instance file.
pub fn run_command(
    cmd: Command,
    input: Option<(&str, &str)>,
    expr: Option<&str>,
    opts: &RunOptions,
) -> Result<Report, CliError> {
    let start = Instant::now();
    let parsed = input.map(|(_, text)| parse_instance(text)).transpose()?;
    if let Some((file, _)) = &parsed {
        validate(file)?;
    }
    let settings = match &parsed {
        Some((file, _)) => Some(resolve_settings(file, &opts.overrides)?),
        None => None,
    };
    let settings_json = settings.as_ref().map_or(Value::Null, |s| s.to_json());
    let (result, stats, lines, success) = if cmd == Command::Selftest {
        let mut suites: Vec<Value> = run_selftest(&SelftestOptions::default())
            .into_iter()
            .map(|s| json!({ "name": s.name, "cases": s.cases, "passed": s.passed(), "failures": s.failures }))
            .collect();
        if let (Some((file, pos)), Some(settings)) = (&parsed, &settings) {
            let job = Job { file, pos, settings: settings.clone() };
            suites.push(match file.characteristic {
                0 => instance_selftest::<Rational>(&job, ())?,
                p => instance_selftest::<Fp>(&job, p)?,
            });
        }
        let ok = suites.iter().all(|s| s["passed"] == json!(true));
        let lines = suites
            .iter()
            .map(|s| {
                let mark = if s["passed"] == json!(true) { "ok  " } else { "FAIL" };
                format!("{} {} ({} cases)", mark, s["name"].as_str().unwrap_or_default(), s["cases"])
            })
            .collect();
        (json!({ "suites": suites, "passed": ok }), Value::Null, lines, ok)
    } else {
        let (file, pos) = parsed.as_ref().ok_or_else(|| CliError::invalid("missing instance file"))?;
        let job = Job { file, pos, settings: settings.clone().expect("settings resolved with the file") };
        let (r, s, l) = match file.characteristic {
            0 => typed::<Rational>(cmd, &job, (), expr)?,
            p => typed::<Fp>(cmd, &job, p, expr)?,
        };
        (r, s, l, true)
    };
    Ok(Report {
        command: cmd,
        input: input.map(|(name, _)| name.to_string()),
        expr: expr.map(|e| e.to_string()),
        settings: settings_json,
        result,
        stats,
        lines,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis()),
        success,
    })
}
