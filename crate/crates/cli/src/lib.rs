//! Batch front end: load a model file and run validation, law checks,
//! evaluation, queries, decisions, fitting and Bayesian updates, emitting a
//! JSON result document with a fixed key order.
//!
//! Exit codes: 0 success, 1 validation or domain error, 2 usage error.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value as Json};

use codesign::learning::{self, Observation};
use codesign::model::{self, BayesConfig, CellRef, Model};
use codesign::monads::laws::{self, FullPowerset, LawConfig, LawReport};
use codesign::monads::{markov, twarr_unit_witness, Dist, MonadKind, Uncertain};
use codesign::param::ParamTuple;
use codesign::queries::{self, Objective, Penalty, QueryResult, Score};
use codesign::rational::{self, Rational};
use codesign::{Antichain, DesignProblem, Error, Execution, FinitePoset, ParamCell};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "codesign", version, about = "Finite co-design with parametric uncertainty")]
struct Cli {
    /// Add a decimal rendering next to every exact rational (display only).
    #[arg(long, global = true)]
    render_decimal: bool,

    /// Evaluate per-parameter work on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Instance {
    Identity,
    Powerset,
    Interval,
    Dist,
    /// Powerset with the empty set allowed: lawful but not affine.
    PowersetWithEmpty,
    /// Inclusion-ordered intervals, whose unit is not monotone.
    Twarr,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load a model and report every object that fails to validate.
    Validate { model: PathBuf },
    /// Run the monad, monoidal and Markov law suites.
    CheckLaws {
        instance: Instance,
        #[arg(long, default_value_t = 3)]
        max_carrier: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        value_cap: usize,
        #[arg(long, default_value_t = 24)]
        arrow_cap: usize,
    },
    /// Evaluate a cell or wiring and list its entries.
    Eval {
        model: PathBuf,
        #[arg(long)]
        cell: String,
    },
    /// Minimal resources for a functionality, per parameter.
    Query {
        model: PathBuf,
        #[arg(long)]
        cell: String,
        #[arg(long)]
        fun: String,
    },
    /// Pick the parameter minimizing an objective.
    Decide {
        model: PathBuf,
        /// A named decision in the model; flags override its fields.
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        cell: Option<String>,
        #[arg(long)]
        fun: Option<String>,
        #[arg(long)]
        objective: Option<String>,
        /// A rational or "infinity".
        #[arg(long)]
        penalty: Option<String>,
    },
    /// Fit a threshold family on a parameter grid.
    Fit {
        model: PathBuf,
        #[arg(long)]
        config: String,
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Condition a prior over parameters on a dataset.
    Bayes {
        model: PathBuf,
        #[arg(long)]
        config: String,
    },
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Render {
    decimal: bool,
}

impl Render {
    fn rat(&self, r: &Rational) -> Json {
        let mut v = rational::to_json(r);
        if self.decimal {
            v["decimal"] = json!(rational::to_decimal(r, 6));
        }
        v
    }

    fn antichain(&self, a: &Antichain) -> Json {
        json!(a.labels())
    }

    fn dp(&self, d: &DesignProblem) -> Json {
        let pairs: Vec<Json> = d
            .feasible_pairs()
            .map(|(f, r)| json!([d.fun().label(f), d.res().label(r)]))
            .collect();
        json!({ "feasible": pairs })
    }

    fn uncertain<T: codesign::monads::Value>(&self, u: &Uncertain<T>, item: impl Fn(&T) -> Json) -> Json {
        match u {
            Uncertain::Exact(x) => json!({ "exact": item(x) }),
            Uncertain::Subset(s) => json!({ "set": s.iter().map(&item).collect::<Vec<_>>() }),
            Uncertain::Interval(i) => json!({ "interval": [item(i.lo()), item(i.hi())] }),
            Uncertain::Dist(d) => json!({ "dist": self.dist(d, item) }),
        }
    }

    fn dist<T: Ord + Clone>(&self, d: &Dist<T>, item: impl Fn(&T) -> Json) -> Json {
        Json::Array(d.iter().map(|(x, w)| json!([item(x), self.rat(w)])).collect())
    }

    fn query(&self, q: &QueryResult) -> Json {
        match q {
            QueryResult::Plain(a) => json!({ "minimal": self.antichain(a) }),
            QueryResult::Possibilistic(s) => {
                json!({ "set": s.iter().map(|a| self.antichain(a)).collect::<Vec<_>>() })
            }
            QueryResult::Interval {
                pessimistic,
                optimistic,
            } => json!({
                "pessimistic": self.antichain(pessimistic),
                "optimistic": self.antichain(optimistic),
            }),
            QueryResult::Probabilistic { answers, feasible } => json!({
                "dist": self.dist(answers, |a| self.antichain(a)),
                "feasible": self.rat(feasible),
            }),
        }
    }

    fn score(&self, s: &Score) -> Json {
        match s {
            Score::Value(v) => self.rat(v),
            Score::Infeasible => json!("infeasible"),
        }
    }
}

fn labels(t: &[codesign::Elem]) -> Json {
    json!(t.iter().map(|e| e.label()).collect::<Vec<_>>())
}

fn document(command: &str, inputs: Map<String, Json>, rows: Vec<Json>, chosen: Option<Json>, seed: Option<u64>) -> Json {
    let mut d = Map::new();
    d.insert("command".into(), json!(command));
    d.insert("inputs".into(), Json::Object(inputs));
    d.insert("rows".into(), Json::Array(rows));
    if let Some(c) = chosen {
        d.insert("chosen".into(), c);
    }
    if let Some(s) = seed {
        d.insert("seed".into(), json!(s));
    }
    d.insert("version".into(), json!(VERSION));
    Json::Object(d)
}

fn error_object(e: &Error) -> Json {
    let mut path = Vec::new();
    let mut cur = e;
    while let Error::AtNode { path: p, cause } = cur {
        path.push(p.clone());
        cur = cause;
    }
    let mut o = Map::new();
    o.insert("kind".into(), json!(e.kind()));
    o.insert("message".into(), json!(cur.to_string()));
    if !path.is_empty() {
        o.insert("path".into(), json!(path.join(" > ")));
    }
    Json::Object(o)
}

fn pretty(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Runs one command line (including the program name) and captures its output.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let render = Render {
        decimal: cli.render_decimal,
    };
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let (name, inputs) = describe(&cli.command);
    match execute(&cli.command, exec, &render) {
        Ok((doc, ok)) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: pretty(&doc),
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(e)) => {
            let mut d = Map::new();
            d.insert("command".into(), json!(name));
            d.insert("inputs".into(), Json::Object(inputs));
            d.insert("error".into(), error_object(&e));
            d.insert("version".into(), json!(VERSION));
            Outcome {
                code: 1,
                stdout: pretty(&Json::Object(d)),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn path_str(p: &std::path::Path) -> String {
    p.display().to_string()
}

fn describe(c: &Command) -> (&'static str, Map<String, Json>) {
    let mut m = Map::new();
    let name = match c {
        Command::Validate { model } => {
            m.insert("model".into(), json!(path_str(model)));
            "validate"
        }
        Command::CheckLaws {
            instance,
            max_carrier,
            value_cap,
            arrow_cap,
            ..
        } => {
            m.insert("instance".into(), json!(instance.to_possible_value().unwrap().get_name()));
            m.insert("max_carrier".into(), json!(max_carrier));
            m.insert("value_cap".into(), json!(value_cap));
            m.insert("arrow_cap".into(), json!(arrow_cap));
            "check-laws"
        }
        Command::Eval { model, cell } => {
            m.insert("model".into(), json!(path_str(model)));
            m.insert("cell".into(), json!(cell));
            "eval"
        }
        Command::Query { model, cell, fun } => {
            m.insert("model".into(), json!(path_str(model)));
            m.insert("cell".into(), json!(cell));
            m.insert("fun".into(), json!(fun));
            "query"
        }
        Command::Decide {
            model,
            config,
            cell,
            fun,
            objective,
            penalty,
        } => {
            m.insert("model".into(), json!(path_str(model)));
            for (k, v) in [
                ("config", config),
                ("cell", cell),
                ("fun", fun),
                ("objective", objective),
                ("penalty", penalty),
            ] {
                if let Some(v) = v {
                    m.insert(k.into(), json!(v));
                }
            }
            "decide"
        }
        Command::Fit {
            model,
            config,
            mode,
            lambda,
        } => {
            m.insert("model".into(), json!(path_str(model)));
            m.insert("config".into(), json!(config));
            if let Some(v) = mode {
                m.insert("mode".into(), json!(v));
            }
            if let Some(v) = lambda {
                m.insert("lambda".into(), json!(v));
            }
            "fit"
        }
        Command::Bayes { model, config } => {
            m.insert("model".into(), json!(path_str(model)));
            m.insert("config".into(), json!(config));
            "bayes"
        }
    };
    (name, m)
}

fn read(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &std::path::Path) -> Result<Model, Failure> {
    Ok(Model::from_str(&read(path)?)?)
}

fn execute(c: &Command, exec: Execution, r: &Render) -> Result<(Json, bool), Failure> {
    let (name, inputs) = describe(c);
    match c {
        Command::Validate { model } => {
            let (_, diags) = Model::check(&read(model)?)?;
            let rows: Vec<Json> = diags
                .iter()
                .map(|d| {
                    let mut o = Map::new();
                    o.insert("object".into(), json!(d.object));
                    if let Json::Object(e) = error_object(&d.error) {
                        o.extend(e);
                    }
                    Json::Object(o)
                })
                .collect();
            let ok = rows.is_empty();
            Ok((document(name, inputs, rows, None, None), ok))
        }
        Command::CheckLaws {
            instance,
            max_carrier,
            seed,
            value_cap,
            arrow_cap,
        } => {
            let cfg = LawConfig {
                max_carrier: *max_carrier,
                value_cap: *value_cap,
                arrow_cap: *arrow_cap,
                seed: *seed,
            };
            let (rows, ok) = check_laws(*instance, &cfg, exec)?;
            Ok((document(name, inputs, rows, None, Some(*seed)), ok))
        }
        Command::Eval { model, cell } => {
            let m = load(model)?;
            let c = m.resolve_cell(cell)?;
            let rows = c
                .iter()
                .map(|(t, e)| json!({ "param": labels(&t), "value": r.uncertain(e, |d| r.dp(d)) }))
                .collect();
            Ok((document(name, inputs, rows, None, None), true))
        }
        Command::Query { model, cell, fun } => {
            let m = load(model)?;
            let c = m.resolve_cell(cell)?;
            let f = c.source().index_of(fun)?;
            let rows = queries::query_cell_with(exec, &c, f)?
                .iter()
                .map(|(t, q)| json!({ "param": labels(t), "result": r.query(q) }))
                .collect();
            Ok((document(name, inputs, rows, None, None), true))
        }
        Command::Decide {
            model,
            config,
            cell,
            fun,
            objective,
            penalty,
        } => {
            let m = load(model)?;
            let base = match config {
                Some(n) => Some(
                    m.decisions
                        .get(n)
                        .cloned()
                        .ok_or_else(|| Error::UnboundName(n.clone()))?,
                ),
                None => None,
            };
            let cell_ref = match (cell, &base) {
                (Some(n), _) => CellRef::Cell(n.clone()),
                (None, Some(b)) => b.cell.clone(),
                (None, None) => return Err(Failure::Usage("give --config or --cell".into())),
            };
            let c = match &cell_ref {
                CellRef::Cell(n) => m.resolve_cell(n)?,
                other => m.cell(other)?,
            };
            let fun = fun
                .clone()
                .or_else(|| base.as_ref().map(|b| b.fun.clone()))
                .ok_or_else(|| Failure::Usage("give --fun or --config".into()))?;
            let objective = match (objective, &base) {
                (Some(o), _) => Objective::parse(o)?,
                (None, Some(b)) => b.objective,
                (None, None) => return Err(Failure::Usage("give --objective or --config".into())),
            };
            let penalty = match (penalty, &base) {
                (Some(p), _) => model::parse_penalty(&json!(p))?,
                (None, Some(b)) => b.penalty.clone(),
                (None, None) => Penalty::Infinity,
            };
            let f = c.source().index_of(&fun)?;
            let cost = m.cost(c.target())?;
            let rep = queries::decide_with(exec, &c, f, objective, &cost, &penalty)?;
            let rows = rep
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "param": labels(&row.param),
                        "answer": r.query(&row.answer),
                        "score": r.score(&row.score),
                    })
                })
                .collect();
            let ch = rep.chosen_row();
            let chosen = json!({ "index": rep.chosen, "param": labels(&ch.param), "score": r.score(&ch.score) });
            Ok((document(name, inputs, rows, Some(chosen), None), true))
        }
        Command::Fit {
            model,
            config,
            mode,
            lambda,
        } => {
            let m = load(model)?;
            let cfg = m.fits.get(config).ok_or_else(|| Error::UnboundName(config.clone()))?;
            let lambda = match (lambda, &cfg.mode) {
                (Some(l), _) => rational::from_json(&json!(l))?,
                (None, learning::FitMode::Constrained { lambda }) => lambda.clone(),
                (None, _) => rational::zero(),
            };
            let fit_mode = match mode {
                Some(md) => model::parse_fit_mode(md, lambda)?,
                None => match &cfg.mode {
                    learning::FitMode::Constrained { .. } => learning::FitMode::Constrained { lambda },
                    other => other.clone(),
                },
            };
            let data = m.dataset(&cfg.data)?;
            let phi_to = cfg
                .family
                .first()
                .map(|c| c.phi.to().clone())
                .ok_or_else(|| Error::InvalidInput("empty parameter grid".into()))?;
            let emb = m.embedding(&phi_to)?;
            let rep = learning::grid_fit_with(exec, &cfg.family, &data.rows, &fit_mode, &emb)?;
            let rows = rep
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "theta": row.theta,
                        "loss": r.rat(&row.loss),
                        "consistent": row.consistent,
                        "score": row.score.as_ref().map(|s| r.rat(s)).unwrap_or(json!("excluded")),
                    })
                })
                .collect();
            let ch = rep.chosen_row();
            let chosen = json!({
                "index": rep.chosen,
                "theta": ch.theta,
                "score": ch.score.as_ref().map(|s| r.rat(s)),
            });
            Ok((document(name, inputs, rows, Some(chosen), None), true))
        }
        Command::Bayes { model, config } => {
            let m = load(model)?;
            let cfg = m.bayes.get(config).ok_or_else(|| Error::UnboundName(config.clone()))?;
            let (prior, post) = bayes(&m, cfg, exec)?;
            let rows = prior
                .iter()
                .map(|(t, w)| {
                    json!({
                        "param": labels(t),
                        "prior": r.rat(w),
                        "posterior": r.rat(&post.prob(t)),
                    })
                })
                .collect();
            Ok((document(name, inputs, rows, None, None), true))
        }
    }
}

/// Prior and posterior over the parameter tuples of the configured cell.
pub fn bayes_posterior(m: &Model, cfg: &BayesConfig) -> codesign::Result<(Dist<ParamTuple>, Dist<ParamTuple>)> {
    bayes(m, cfg, Execution::default()).map_err(|f| match f {
        Failure::Domain(e) => e,
        Failure::Usage(u) => Error::InvalidInput(u),
    })
}

fn bayes(m: &Model, cfg: &BayesConfig, exec: Execution) -> Result<(Dist<ParamTuple>, Dist<ParamTuple>), Failure> {
    let c: ParamCell = m.cell(&cfg.cell)?;
    if !matches!(c.monad(), MonadKind::Dist | MonadKind::Identity) {
        return Err(Error::MonadMismatch {
            expected: MonadKind::Dist.name().into(),
            found: c.monad().name().into(),
        }
        .into());
    }
    let prior = match &cfg.prior {
        None => Dist::uniform(c.space().tuples())?,
        Some(ws) => Dist::new(ws.iter().cloned())?,
    };
    let data = m.dataset(&cfg.data)?;
    if **c.source() != *data.fun || **c.target() != *data.res {
        return Err(Error::ObjectMismatch {
            expected: format!("{} → {}", c.source(), c.target()),
            found: format!("{} → {}", data.fun, data.res),
        }
        .into());
    }
    let kernel = |t: &ParamTuple, _: &Observation| -> codesign::Result<Dist<DesignProblem>> {
        match MonadKind::Dist.promote(c.entry(t)?)? {
            Uncertain::Dist(d) => Ok(d),
            _ => unreachable!("promoted to dist"),
        }
    };
    let post = learning::bayes_update_conditional(exec, &prior, kernel, &data.rows)?;
    Ok((prior, post))
}

fn law_rows(suite: &str, rep: &LawReport) -> (Vec<Json>, bool) {
    let rows = rep
        .results
        .iter()
        .map(|l| {
            let mut o = Map::new();
            o.insert("instance".into(), json!(rep.instance));
            o.insert("suite".into(), json!(suite));
            o.insert("law".into(), json!(l.law));
            o.insert("status".into(), json!(if l.passed() { "pass" } else { "fail" }));
            o.insert("checked".into(), json!(l.checked));
            if let Some(w) = &l.witness {
                o.insert("witness".into(), json!(w));
            }
            Json::Object(o)
        })
        .collect();
    (rows, rep.passed())
}

fn check_laws(instance: Instance, cfg: &LawConfig, exec: Execution) -> Result<(Vec<Json>, bool), Failure> {
    let kinds: Vec<MonadKind> = match instance {
        Instance::Identity => vec![MonadKind::Identity],
        Instance::Powerset => vec![MonadKind::Powerset],
        Instance::Interval => vec![MonadKind::Interval],
        Instance::Dist => vec![MonadKind::Dist],
        Instance::All => MonadKind::ALL.to_vec(),
        Instance::PowersetWithEmpty => {
            let (rows, ok) = law_rows("monad", &laws::check_monad_laws_with(exec, &FullPowerset, cfg)?);
            return Ok((rows, ok));
        }
        Instance::Twarr => {
            // the point is the failure: report a witness per chain and succeed
            let mut rows = Vec::new();
            let mut all_found = true;
            for n in 2..=cfg.max_carrier.max(2) {
                let chain = std::sync::Arc::new(FinitePoset::chain(n));
                let w = twarr_unit_witness(&chain);
                all_found &= w.is_some();
                let mut o = Map::new();
                o.insert("instance".into(), json!("twarr"));
                o.insert("suite".into(), json!("twarr"));
                o.insert("law".into(), json!("unit_monotone"));
                o.insert("carrier".into(), json!(format!("chain({n})")));
                o.insert("status".into(), json!(if w.is_some() { "fail" } else { "pass" }));
                if let Some(w) = w {
                    o.insert("witness".into(), json!(w.describe()));
                }
                rows.push(Json::Object(o));
            }
            return Ok((rows, all_found));
        }
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for k in kinds {
        let (r1, ok1) = law_rows("monad", &laws::check_monad_laws_with(exec, &k, cfg)?);
        let (r2, ok2) = law_rows("markov", &markov::check_markov_axioms_with(exec, k, cfg)?);
        rows.extend(r1);
        rows.extend(r2);
        ok &= ok1 && ok2;
    }
    Ok((rows, ok))
}
