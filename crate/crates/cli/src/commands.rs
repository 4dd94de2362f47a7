use bratteli_core::dimensions::{
    branching_ratios, dims_up_to, m_table, vanishing_criterion, verify_multiplicativity,
    BranchingRatios, Cone, Criterion,
};
use bratteli_core::export::{decimal, graph_to_dot, graph_to_json, load_json_graph, JsonLabel, DECIMAL_DIGITS};
use bratteli_core::k0::{infinitesimal_vertices, k0_quotient_check};
use bratteli_core::measures::{
    check_harmonicity, concentration_check, cylinder_decay_report, ergodic_estimate, sample_path,
    HarmonicAssignment,
};
use bratteli_core::{
    build_family, pascalize, BigRational, Error, Family, FamilyGraph, GradedGraph, GraphPath, Label,
    VertexId,
};
use serde_json::{json, Map, Value};

use crate::{
    CliError, Command, Format, Output, RunConfig, DEFAULT_MAX_LEVEL, DEFAULT_RATIO_HORIZON,
};

type Result<T> = std::result::Result<T, CliError>;

enum Source {
    Builtin(FamilyGraph),
    Loaded(GradedGraph<JsonLabel>),
}

macro_rules! with_graph {
    ($source:expr, $g:ident => $body:expr) => {
        match $source {
            Source::Builtin(FamilyGraph::Chain($g)) => $body,
            Source::Builtin(FamilyGraph::Young($g)) => $body,
            Source::Builtin(FamilyGraph::WalledYoung($g)) => $body,
            Source::Builtin(FamilyGraph::DoubledYoung($g)) => $body,
            Source::Loaded($g) => $body,
        }
    };
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    format: Format,
    builtin: Option<Family>,
    max_level: usize,
}

/// Runs one subcommand and returns its complete output.
pub fn run(cfg: &RunConfig) -> Result<Output> {
    let (source, builtin, max_level) = load_source(cfg)?;
    let ctx = Ctx { cfg, format: cfg.format(), builtin, max_level };
    with_graph!(&source, g => dispatch(&ctx, g))
}

fn load_source(cfg: &RunConfig) -> Result<(Source, Option<Family>, usize)> {
    match (&cfg.args.family, &cfg.args.input) {
        (Some(_), Some(_)) => Err(CliError::Usage("--family and --input are mutually exclusive".into())),
        (None, None) => Err(CliError::Usage("one of --family or --input is required".into())),
        (Some(name), None) => {
            let family: Family = name.parse()?;
            let n = cfg.args.max_level.unwrap_or(DEFAULT_MAX_LEVEL);
            Ok((Source::Builtin(build_family(family, n)), Some(family), n))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let graph = load_json_graph(&text)?;
            let n = cfg.args.max_level.unwrap_or(graph.top_level());
            Ok((Source::Loaded(graph.truncated(n)?), None, n))
        }
    }
}

fn dispatch<L: Label>(ctx: &Ctx, g: &GradedGraph<L>) -> Result<Output> {
    let pascalized = ctx.cfg.args.pascalized;
    match &ctx.cfg.command {
        Command::Graph { from_level } if pascalized => export_graph(ctx, pascalize(g, ctx.max_level)?.graph(), *from_level),
        Command::Graph { from_level } => export_graph(ctx, g, *from_level),
        Command::Pascalize { from_level } => export_graph(ctx, pascalize(g, ctx.max_level)?.graph(), *from_level),
        Command::Dims { source } if pascalized => dims(ctx, pascalize(g, ctx.max_level)?.graph(), source.as_deref()),
        Command::Dims { source } => dims(ctx, g, source.as_deref()),
        Command::Mtable => mtable(ctx, g),
        Command::Ratios => ratios(ctx, g),
        Command::Multiplicativity => multiplicativity(ctx, g),
        Command::AlgebraDims => algebra_dims(ctx, g),
        Command::Estimate { path } if pascalized => {
            let pg = pascalize(g, ctx.max_level)?;
            let default = pg.lift(2, VertexId::ROOT);
            estimate(ctx, pg.graph(), default, path.as_deref())
        }
        Command::Estimate { path } => estimate(ctx, g, None, path.as_deref()),
        Command::Decay { sample } => decay(ctx, g, *sample),
        Command::Harmonic if pascalized => concentration(ctx, g),
        Command::Harmonic => harmonic(ctx, g),
        Command::K0 => k0(ctx, g),
    }
}

/// A tabular result rendered either as TSV (`# key: value` lines, a header,
/// then rows) or as one JSON object.
struct Report {
    meta: Vec<(&'static str, Value)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    passed: bool,
}

impl Report {
    fn new(columns: &[&'static str]) -> Self {
        Report { meta: Vec::new(), columns: columns.to_vec(), rows: Vec::new(), passed: true }
    }

    fn meta(&mut self, key: &'static str, value: impl Into<Value>) {
        self.meta.push((key, value.into()));
    }

    fn render(self, ctx: &Ctx) -> Result<Output> {
        let text = match ctx.format {
            Format::Tsv => {
                let mut out = String::new();
                for (key, value) in &self.meta {
                    out.push_str(&format!("# {key}: {}\n", cell(key, value)));
                }
                out.push_str(&self.columns.join("\t"));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> =
                        self.columns.iter().zip(row).map(|(c, v)| cell(c, v)).collect();
                    out.push_str(&cells.join("\t"));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut object = Map::new();
                for (key, value) in self.meta {
                    object.insert(key.into(), value);
                }
                let rows = self
                    .rows
                    .into_iter()
                    .map(|row| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(row).collect()))
                    .collect();
                object.insert("rows".into(), Value::Array(rows));
                pretty(&Value::Object(object))?
            }
            Format::Dot => return Err(unsupported(ctx)),
        };
        Ok(Output { text, passed: self.passed })
    }
}

/// Labels stay JSON in TSV so they can be passed back as --target.
const LABEL_KEYS: [&str; 3] = ["label", "target", "source"];

fn cell(key: &str, value: &Value) -> String {
    match value {
        Value::String(s) if !LABEL_KEYS.contains(&key) => s.clone(),
        other => other.to_string(),
    }
}

fn pretty(value: &Value) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    text.push('\n');
    Ok(text)
}

fn unsupported(ctx: &Ctx) -> CliError {
    CliError::Usage(format!(
        "--format {} is not available for {}",
        ctx.format.extension(),
        ctx.cfg.command.name()
    ))
}

fn label<L: Label>(g: &GradedGraph<L>, v: VertexId) -> Value {
    serde_json::to_value(g.label(v)).expect("labels serialize")
}

fn big(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

/// Numerator, denominator and decimal cells of an exact rational.
fn rational(q: &BigRational) -> [Value; 3] {
    [big(q.numer()), big(q.denom()), Value::String(decimal(q, DECIMAL_DIGITS))]
}

fn parse_label(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|_| CliError::Core(Error::UnknownLabel(format!("{text} (labels are JSON, e.g. '[2,1]')"))))
}

fn find_vertex<L: Label>(g: &GradedGraph<L>, text: &str) -> Result<VertexId> {
    Ok(g.find_json(&parse_label(text)?, None)?)
}

/// `a_1 ..= a_len`: the closed form for built-in families, measured otherwise.
fn ratios_for<L: Label>(ctx: &Ctx, g: &GradedGraph<L>, len: usize) -> Result<BranchingRatios> {
    if let Some(family) = ctx.builtin {
        return Ok(BranchingRatios::from_family(family, len));
    }
    let top = g.top_level();
    let dims = dims_up_to(g, top)?;
    Ok(branching_ratios(g, &dims, top)?.extended_to(len)?)
}

fn criterion<L: Label>(ctx: &Ctx, g: &GradedGraph<L>) -> Result<Criterion> {
    let horizon = ctx.cfg.args.horizon.unwrap_or(DEFAULT_RATIO_HORIZON);
    let a = ratios_for(ctx, g, 2 * horizon.max(1) + 1)?;
    Ok(vanishing_criterion(&a, horizon)?)
}

/// Level horizon for estimate and decay, which may not exceed --max-level.
fn level_horizon(ctx: &Ctx) -> Result<usize> {
    let horizon = ctx.cfg.args.horizon.unwrap_or(ctx.max_level);
    if horizon > ctx.max_level {
        return Err(Error::Horizon { requested: horizon, available: ctx.max_level }.into());
    }
    Ok(horizon)
}

fn export_graph<L: Label>(ctx: &Ctx, g: &GradedGraph<L>, from_level: usize) -> Result<Output> {
    let report = g.validate();
    if !report.is_ok() {
        return Err(Error::InvalidGraph(report.to_string()).into());
    }
    let text = match ctx.format {
        Format::Json => graph_to_json(g)? + "\n",
        Format::Dot => graph_to_dot(g, from_level, g.top_level())?,
        Format::Tsv => {
            let mut table = Report::new(&["level", "index", "label", "up"]);
            table.meta("family", g.family());
            table.meta("vertices", g.vertex_count());
            for k in 0..=g.top_level() {
                for v in g.vertices(k) {
                    let up: Vec<String> = g.up(v).map(|w| w.index.to_string()).collect();
                    table.rows.push(vec![k.into(), v.index.into(), label(g, v), up.join(",").into()]);
                }
            }
            return table.render(ctx);
        }
    };
    Ok(Output { text, passed: true })
}

fn dims<L: Label>(ctx: &Ctx, g: &GradedGraph<L>, source: Option<&str>) -> Result<Output> {
    let top = g.top_level();
    let mut table = Report::new(&["level", "label", "value"]);
    table.meta("family", g.family());
    match source {
        None => {
            let dims = dims_up_to(g, top)?;
            for k in 0..=top {
                for v in g.vertices(k) {
                    table.rows.push(vec![k.into(), label(g, v), big(dims.get(v))]);
                }
            }
        }
        Some(text) => {
            let v = find_vertex(g, text)?;
            table.meta("source", label(g, v));
            let cone = Cone::new(g, v, top)?;
            for k in v.level..=top {
                for w in g.vertices(k).filter(|&w| cone.get(w).bits() > 0) {
                    table.rows.push(vec![k.into(), label(g, w), big(cone.get(w))]);
                }
            }
        }
    }
    table.render(ctx)
}

fn mtable<L: Label>(ctx: &Ctx, g: &GradedGraph<L>) -> Result<Output> {
    let n = ctx.max_level;
    let mt = m_table(&ratios_for(ctx, g, n)?, n)?;
    let mut table = Report::new(&["level", "l", "value"]);
    for k in 0..=n {
        for l in (k % 2..=k).step_by(2) {
            table.rows.push(vec![k.into(), l.into(), big(mt.get(k, l).expect("defined entry"))]);
        }
    }
    table.render(ctx)
}

fn ratios<L: Label>(ctx: &Ctx, g: &GradedGraph<L>) -> Result<Output> {
    let criterion = criterion(ctx, g)?;
    let mut table = Report::new(&["j", "numerator", "denominator", "decimal"]);
    table.meta("verdict", criterion.verdict.to_string());
    table.meta("basis", criterion.basis.to_string());
    for (j, m) in criterion.ratios.iter().enumerate() {
        let mut row = vec![j.into()];
        row.extend(rational(m));
        table.rows.push(row);
    }
    table.render(ctx)
}

fn multiplicativity<L: Label>(ctx: &Ctx, g: &GradedGraph<L>) -> Result<Output> {
    let n = ctx.max_level;
    let pg = pascalize(g, n)?;
    let dims = dims_up_to(pg.graph(), n)?;
    let base_dims = dims_up_to(g, n)?;
    let mt = m_table(&ratios_for(ctx, g, n)?, n)?;
    let report = verify_multiplicativity(&pg, &dims, &base_dims, &mt, n)?;
    let mut table = Report::new(&["level", "label", "dim", "expected"]);
    table.meta("checked", report.checked);
    table.meta("failures", report.failures.len());
    for f in &report.failures {
        table.rows.push(vec![f.vertex.level.into(), label(pg.graph(), f.vertex), big(&f.actual), big(&f.expected)]);
    }
    table.passed = report.is_ok();
    table.render(ctx)
}

fn algebra_dims<L: Label>(ctx: &Ctx, g: &GradedGraph<L>) -> Result<Output> {
    let n = ctx.max_level;
    let pg = pascalize(g, n)?;
    let dims = dims_up_to(pg.graph(), n)?;
    let sums: Vec<(usize, String)> = (0..=n).map(|k| (k, dims.sum_of_squares(k).to_string())).collect();
    let text = match ctx.format {
        Format::Tsv => sums.iter().map(|(k, s)| format!("{k} {s}\n")).collect(),
        Format::Json => pretty(&Value::Array(
            sums.into_iter().map(|(k, s)| json!({ "level": k, "sum": s })).collect(),
        ))?,
        Format::Dot => return Err(unsupported(ctx)),
    };
    Ok(Output { text, passed: true })
}

fn supplied_path<L: Label>(g: &GradedGraph<L>, text: &str) -> Result<GraphPath> {
    let Value::Array(labels) = parse_label(text)? else {
        return Err(CliError::Usage("--path must be a JSON array of labels".into()));
    };
    let vertices = labels
        .iter()
        .enumerate()
        .map(|(k, l)| g.find_json(l, Some(k)))
        .collect::<bratteli_core::Result<Vec<_>>>()?;
    Ok(GraphPath::new(g, vertices)?)
}

fn estimate<L: Label>(
    ctx: &Ctx,
    g: &GradedGraph<L>,
    default_target: Option<VertexId>,
    path: Option<&str>,
) -> Result<Output> {
    let horizon = level_horizon(ctx)?;
    let target = match (&ctx.cfg.args.target, default_target) {
        (Some(text), _) => find_vertex(g, text)?,
        (None, Some(v)) => v,
        (None, None) => return Err(CliError::Usage("estimate needs --target".into())),
    };
    let dims = dims_up_to(g, horizon)?;
    let mut table = Report::new(&["n", "numerator", "denominator", "decimal"]);
    table.meta("family", g.family());
    table.meta("target", label(g, target));
    let path = match path {
        Some(text) => {
            table.meta("path", "supplied");
            supplied_path(g, text)?
        }
        None => {
            table.meta("path", "sampled");
            table.meta("seed", ctx.cfg.args.seed);
            sample_path(g, &dims, horizon, ctx.cfg.args.seed)?
        }
    };
    let estimate = ergodic_estimate(g, &dims, target, &path, horizon)?;
    for (n, value) in &estimate.values {
        let mut row = vec![(*n).into()];
        row.extend(rational(value));
        table.rows.push(row);
    }
    table.render(ctx)
}

fn decay<L: Label>(ctx: &Ctx, g: &GradedGraph<L>, sample: bool) -> Result<Output> {
    let horizon = level_horizon(ctx)?;
    let pg = pascalize(g, ctx.max_level)?;
    let target = match &ctx.cfg.args.target {
        Some(text) => find_vertex(pg.graph(), text)?,
        None => pg.lift(2, VertexId::ROOT).ok_or(Error::Horizon { requested: 2, available: ctx.max_level })?,
    };
    let dims = dims_up_to(pg.graph(), horizon)?;
    let mt = m_table(&ratios_for(ctx, g, horizon + 1)?, horizon + 1)?;
    let path = if sample { Some(sample_path(pg.graph(), &dims, horizon, ctx.cfg.args.seed)?) } else { None };
    let report = cylinder_decay_report(&pg, &dims, &mt, target, horizon, path.as_ref())?;

    let mut columns = vec!["n", "bound_numerator", "bound_denominator", "bound_decimal"];
    if sample {
        columns.extend(["estimate_numerator", "estimate_denominator", "estimate_decimal"]);
    }
    let mut table = Report::new(&columns);
    table.meta("target", label(pg.graph(), target));
    table.meta("prefactor", big(&report.prefactor));
    table.meta("bounds_strictly_decreasing", report.bounds_strictly_decreasing());
    if sample {
        table.meta("seed", ctx.cfg.args.seed);
        table.meta("first_bound_violation", report.first_bound_violation());
        table.passed = report.first_bound_violation().is_none();
    }
    for row in &report.rows {
        let mut cells = vec![row.level.into()];
        cells.extend(rational(&row.bound));
        if let Some(e) = &row.estimate {
            cells.extend(rational(e));
        }
        table.rows.push(cells);
    }
    table.render(ctx)
}

fn harmonic<L: Label>(ctx: &Ctx, g: &GradedGraph<L>) -> Result<Output> {
    let n = ctx.max_level;
    let dims = dims_up_to(g, n)?;
    let phi = HarmonicAssignment::plancherel(g, &dims, n)?;
    let report = check_harmonicity(g, &dims, &phi, n)?;
    let mut table = Report::new(&["level", "label", "numerator", "denominator", "decimal"]);
    table.meta("family", g.family());
    table.meta("levels_checked", report.levels_checked);
    table.meta("result", report.violation.as_ref().map_or("ok".to_string(), |v| v.to_string()));
    for k in 0..=n {
        for v in g.vertices(k) {
            let mut row = vec![k.into(), label(g, v)];
            row.extend(rational(&phi.cylinder(v, &dims)));
            table.rows.push(row);
        }
    }
    table.passed = report.is_ok();
    table.render(ctx)
}

fn concentration<L: Label>(ctx: &Ctx, g: &GradedGraph<L>) -> Result<Output> {
    let n = ctx.max_level;
    let criterion = criterion(ctx, g)?;
    let dims = dims_up_to(g, n)?;
    let phi = HarmonicAssignment::plancherel(g, &dims, n)?;
    let pg = pascalize(g, n)?;
    let report = concentration_check(&pg, &phi, &criterion, n)?;
    let mut table = Report::new(&["level", "label", "reason"]);
    table.meta("family", pg.graph().family());
    table.meta("diagonal_checked", report.diagonal_checked);
    table.meta("off_diagonal_checked", report.off_diagonal_checked);
    table.meta("result", if report.is_ok() { "ok" } else { "failed" });
    if let Some((v, why)) = &report.failure {
        table.rows.push(vec![v.level.into(), label(pg.graph(), *v), why.clone().into()]);
    }
    table.passed = report.is_ok();
    table.render(ctx)
}

fn k0<L: Label>(ctx: &Ctx, g: &GradedGraph<L>) -> Result<Output> {
    let n = ctx.max_level;
    let criterion = criterion(ctx, g)?;
    let pg = pascalize(g, n)?;
    let inf = infinitesimal_vertices(&pg, &criterion, n)?;
    let mut table = Report::new(&["level", "label"]);
    table.meta("family", pg.graph().family());
    table.meta("verdict", criterion.verdict.to_string());
    table.meta("determined", inf.determined);
    if inf.determined {
        let report = k0_quotient_check(&pg, g, &inf, n)?;
        table.meta("boundaries_checked", report.boundaries_checked);
        let result = match &report.failure {
            None => "ok".to_string(),
            Some((k, why)) => format!("boundary {k}: {why}"),
        };
        table.meta("quotient", result);
        table.passed = report.is_ok();
    }
    for &v in &inf.vertices {
        table.rows.push(vec![v.level.into(), label(pg.graph(), v)]);
    }
    table.render(ctx)
}
