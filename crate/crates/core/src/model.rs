//! JSON model files: named posets, monotone maps, design problems, cells,
//! reparametrizations, wiring expressions, observation datasets and
//! decision/learning configurations.
//!
//! Names may be used before they are declared. Loading reports one
//! diagnostic per object that fails to resolve or validate.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{Map, Value as Json};

use crate::dp::{DesignProblem, MonotoneMap};
use crate::error::{Error, Result};
use crate::learning::{Embedding, FitCandidate, FitMode, Observation};
use crate::monads::{Dist, MonadKind, Uncertain};
use crate::param::{ParamCell, ParamSpace, ParamTuple, Reparam};
use crate::poset::{FinitePoset, PosetRef};
use crate::queries::{CostFn, Objective, Penalty};
use crate::rational::{self, Rational};
use crate::wiring::{self, Env, WiringExpr};

#[derive(Debug, Clone)]
pub struct Wiring {
    pub monad: MonadKind,
    pub expr: WiringExpr,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub fun: PosetRef,
    pub res: PosetRef,
    pub rows: Vec<Observation>,
}

/// A cell either declared directly or obtained by evaluating a wiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellRef {
    Cell(String),
    Wiring(String),
}

#[derive(Debug, Clone)]
pub struct DecisionConfig {
    pub cell: CellRef,
    pub fun: String,
    pub objective: Objective,
    pub penalty: Penalty,
}

#[derive(Debug, Clone)]
pub struct FitConfig {
    pub family: Vec<FitCandidate>,
    pub data: String,
    pub mode: FitMode,
}

#[derive(Debug, Clone)]
pub struct BayesConfig {
    pub cell: CellRef,
    /// `None` is the uniform prior over the cell's parameter tuples.
    pub prior: Option<Vec<(ParamTuple, Rational)>>,
    pub data: String,
}

/// A validation failure, naming the object as `section.name`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub object: String,
    pub error: Error,
}

#[derive(Debug, Clone, Default)]
pub struct Model {
    pub env: Env,
    pub problems: BTreeMap<String, DesignProblem>,
    /// Declared numeric values of poset elements.
    pub values: BTreeMap<String, Vec<Rational>>,
    pub wirings: BTreeMap<String, Wiring>,
    pub datasets: BTreeMap<String, Dataset>,
    pub decisions: BTreeMap<String, DecisionConfig>,
    pub fits: BTreeMap<String, FitConfig>,
    pub bayes: BTreeMap<String, BayesConfig>,
}

const SECTIONS: [&str; 10] = [
    "posets", "maps", "problems", "cells", "reparams", "wirings", "datasets", "decisions", "fits", "bayes",
];

/// Parses JSON, reporting the line and column of syntax errors.
pub fn parse_json(text: &str) -> Result<Json> {
    serde_json::from_str(text).map_err(|e| {
        Error::Model(format!("parse error at line {}, column {}: {e}", e.line(), e.column()))
    })
}

fn model_err(msg: impl Into<String>) -> Error {
    Error::Model(msg.into())
}

fn as_obj<'a>(v: &'a Json, what: &str) -> Result<&'a Map<String, Json>> {
    v.as_object().ok_or_else(|| model_err(format!("{what} must be an object")))
}

fn as_arr<'a>(v: &'a Json, what: &str) -> Result<&'a Vec<Json>> {
    v.as_array().ok_or_else(|| model_err(format!("{what} must be an array")))
}

fn as_str<'a>(v: &'a Json, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| model_err(format!("{what} must be a string")))
}

fn field<'a>(o: &'a Map<String, Json>, key: &str) -> Result<&'a Json> {
    o.get(key).ok_or_else(|| model_err(format!("missing field `{key}`")))
}

fn str_field<'a>(o: &'a Map<String, Json>, key: &str) -> Result<&'a str> {
    as_str(field(o, key)?, key)
}

fn strings(v: &Json, what: &str) -> Result<Vec<String>> {
    as_arr(v, what)?.iter().map(|x| as_str(x, what).map(str::to_string)).collect()
}

fn only_keys(o: &Map<String, Json>, allowed: &[&str]) -> Result<()> {
    match o.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(model_err(format!("unknown field `{k}` (expected one of {allowed:?})"))),
        None => Ok(()),
    }
}

struct Loader<'a> {
    raw: BTreeMap<&'static str, &'a Map<String, Json>>,
    model: Model,
    resolving: BTreeSet<String>,
    diagnostics: Vec<Diagnostic>,
}

impl std::str::FromStr for Model {
    type Err = Error;

    /// Loads a model, failing on the first invalid object.
    fn from_str(text: &str) -> Result<Model> {
        let (model, diags) = Self::check(text)?;
        match diags.into_iter().next() {
            Some(d) => Err(Error::AtNode {
                path: d.object,
                cause: Box::new(d.error),
            }),
            None => Ok(model),
        }
    }
}

impl Model {

    /// Loads everything that resolves and lists every object that does not.
    /// Only malformed JSON is an outright error.
    pub fn check(text: &str) -> Result<(Model, Vec<Diagnostic>)> {
        Self::check_json(&parse_json(text)?)
    }

    pub fn check_json(v: &Json) -> Result<(Model, Vec<Diagnostic>)> {
        let top = as_obj(v, "model")?;
        let mut diagnostics = Vec::new();
        for k in top.keys() {
            if !SECTIONS.contains(&k.as_str()) && k != "description" {
                diagnostics.push(Diagnostic {
                    object: k.clone(),
                    error: model_err(format!("unknown section `{k}`")),
                });
            }
        }
        let mut raw = BTreeMap::new();
        for s in SECTIONS {
            if let Some(sec) = top.get(s) {
                raw.insert(s, as_obj(sec, s)?);
            }
        }
        let mut l = Loader {
            raw,
            model: Model::default(),
            resolving: BTreeSet::new(),
            diagnostics,
        };
        l.run();
        Ok((l.model, l.diagnostics))
    }

    pub fn poset(&self, name: &str) -> Result<&PosetRef> {
        self.env.poset(name)
    }

    pub fn problem(&self, name: &str) -> Result<&DesignProblem> {
        self.problems.get(name).ok_or_else(|| Error::UnboundName(name.into()))
    }

    pub fn dataset(&self, name: &str) -> Result<&Dataset> {
        self.datasets.get(name).ok_or_else(|| Error::UnboundName(name.into()))
    }

    /// A declared cell, or else the evaluation of a wiring of that name.
    pub fn resolve_cell(&self, name: &str) -> Result<ParamCell> {
        if let Some(c) = self.env.cells.get(name) {
            return Ok(c.clone());
        }
        self.cell(&CellRef::Wiring(name.into()))
    }

    pub fn cell(&self, r: &CellRef) -> Result<ParamCell> {
        match r {
            CellRef::Cell(n) => self.env.cell(n).cloned(),
            CellRef::Wiring(n) => {
                let w = self.wirings.get(n).ok_or_else(|| Error::UnboundName(n.clone()))?;
                wiring::evaluate(&self.env, &w.expr, w.monad)
            }
        }
    }

    /// Element coordinates: declared values for a named poset, concatenated
    /// componentwise for products.
    pub fn embedding(&self, p: &PosetRef) -> Result<Embedding> {
        for (name, q) in &self.env.posets {
            if **q == **p {
                if let Some(v) = self.values.get(name) {
                    return Embedding::scalar(p.clone(), v.clone());
                }
            }
        }
        match p.factors() {
            Some((a, b)) => Embedding::product(&self.embedding(a)?, &self.embedding(b)?, p.clone()),
            None => Err(model_err(format!("no element values declared for {p}"))),
        }
    }

    /// The cost function given by the declared values of a chain.
    pub fn cost(&self, p: &PosetRef) -> Result<CostFn> {
        for (name, q) in &self.env.posets {
            if **q == **p {
                if let Some(v) = self.values.get(name) {
                    return CostFn::new(p.clone(), v.clone());
                }
            }
        }
        Err(model_err(format!("no element values declared for {p}; cannot use it as a cost")))
    }
}

impl<'a> Loader<'a> {
    fn section(&self, s: &str) -> Vec<(String, &'a Json)> {
        self.raw
            .get(s)
            .map(|m| m.iter().map(|(k, v)| (k.clone(), v)).collect())
            .unwrap_or_default()
    }

    fn report(&mut self, section: &str, name: &str, e: Error) {
        self.diagnostics.push(Diagnostic {
            object: format!("{section}.{name}"),
            error: e,
        });
    }

    fn run(&mut self) {
        for (name, _) in self.section("posets") {
            if let Err(e) = self.poset(&name) {
                if !self.diagnostics.iter().any(|d| d.object == format!("posets.{name}")) {
                    self.report("posets", &name, e);
                }
            }
        }
        macro_rules! load {
            ($sec:literal, $f:ident, $store:expr) => {
                for (name, v) in self.section($sec) {
                    match self.$f(v) {
                        Ok(x) => {
                            $store(&mut self.model, name, x);
                        }
                        Err(e) => self.report($sec, &name, e),
                    }
                }
            };
        }
        load!("maps", map, |m: &mut Model, n, x| { m.env.maps.insert(n, x); });
        load!("problems", problem, |m: &mut Model, n, x| { m.problems.insert(n, x); });
        load!("cells", cell, |m: &mut Model, n, x| { m.env.cells.insert(n, x); });
        load!("reparams", reparam, |m: &mut Model, n, x| { m.env.reparams.insert(n, x); });
        load!("wirings", wiring, |m: &mut Model, n, x| { m.wirings.insert(n, x); });
        load!("datasets", dataset, |m: &mut Model, n, x| { m.datasets.insert(n, x); });
        load!("decisions", decision, |m: &mut Model, n, x| { m.decisions.insert(n, x); });
        load!("fits", fit, |m: &mut Model, n, x| { m.fits.insert(n, x); });
        load!("bayes", bayes, |m: &mut Model, n, x| { m.bayes.insert(n, x); });
    }

    // ---- posets ----------------------------------------------------------

    fn poset(&mut self, name: &str) -> Result<PosetRef> {
        if let Some(p) = self.model.env.posets.get(name) {
            return Ok(p.clone());
        }
        let v = self
            .raw
            .get("posets")
            .and_then(|m| m.get(name))
            .ok_or_else(|| Error::UnboundName(name.into()))?;
        if !self.resolving.insert(name.to_string()) {
            return Err(model_err(format!("poset `{name}` is defined in terms of itself")));
        }
        let out = self.poset_body(name, v);
        self.resolving.remove(name);
        let p = out.map_err(|e| {
            let path = format!("posets.{name}");
            // a failing dependency is reported under its own name only
            if matches!(e, Error::AtNode { .. }) {
                e
            } else {
                self.report("posets", name, e.clone());
                Error::AtNode {
                    path,
                    cause: Box::new(e),
                }
            }
        })?;
        self.model.env.posets.insert(name.to_string(), p.clone());
        Ok(p)
    }

    fn poset_body(&mut self, name: &str, v: &Json) -> Result<PosetRef> {
        let o = as_obj(v, "poset")?;
        only_keys(o, &["chain", "antichain", "product", "opposite", "elements", "leq_pairs", "values"])?;
        let p = if let Some(c) = o.get("chain") {
            match c {
                Json::Number(n) => {
                    let n = n.as_u64().ok_or_else(|| model_err("chain length must be a natural number"))?;
                    FinitePoset::chain(n as usize)
                }
                other => FinitePoset::chain_of(strings(other, "chain labels")?)?,
            }
        } else if let Some(a) = o.get("antichain") {
            FinitePoset::antichain(strings(a, "antichain labels")?)?
        } else if let Some(ps) = o.get("product") {
            let names = strings(ps, "product factors")?;
            if names.len() < 2 {
                return Err(model_err("a product needs at least two factors"));
            }
            let mut acc = self.poset(&names[0])?;
            for n in &names[1..] {
                let q = self.poset(n)?;
                acc = Arc::new(FinitePoset::product(&acc, &q));
            }
            return self.with_values(name, o, acc);
        } else if let Some(p) = o.get("opposite") {
            self.poset(as_str(p, "opposite")?)?.opposite()
        } else if let Some(e) = o.get("elements") {
            let labels = strings(e, "elements")?;
            let pairs: Vec<(String, String)> = match o.get("leq_pairs") {
                None => vec![],
                Some(ps) => as_arr(ps, "leq_pairs")?
                    .iter()
                    .map(|pr| {
                        let s = strings(pr, "leq pair")?;
                        match s.as_slice() {
                            [a, b] => Ok((a.clone(), b.clone())),
                            _ => Err(model_err("each leq pair must have two labels")),
                        }
                    })
                    .collect::<Result<_>>()?,
            };
            FinitePoset::from_pairs(labels, &pairs)?
        } else {
            return Err(model_err(
                "a poset is one of chain, antichain, product, opposite, or elements/leq_pairs",
            ));
        };
        self.with_values(name, o, Arc::new(p))
    }

    fn with_values(&mut self, name: &str, o: &Map<String, Json>, p: PosetRef) -> Result<PosetRef> {
        if let Some(vals) = o.get("values") {
            let vals: Vec<Rational> = as_arr(vals, "values")?
                .iter()
                .map(rational::from_json)
                .collect::<Result<_>>()?;
            if vals.len() != p.len() {
                return Err(model_err(format!("{} values for {} elements", vals.len(), p.len())));
            }
            self.model.values.insert(name.to_string(), vals);
        }
        Ok(p)
    }

    fn poset_ref(&mut self, v: &Json) -> Result<PosetRef> {
        let name = as_str(v, "poset reference")?;
        self.poset(name).map_err(|e| match e {
            Error::AtNode { cause, .. } => *cause,
            e => e,
        })
    }

    fn space(&mut self, v: Option<&Json>) -> Result<ParamSpace> {
        let Some(v) = v else { return Ok(ParamSpace::unit()) };
        let factors = as_arr(v, "space")?
            .iter()
            .map(|x| self.poset_ref(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(ParamSpace::new(factors))
    }

    // ---- maps and problems ----------------------------------------------

    fn map(&mut self, v: &Json) -> Result<MonotoneMap> {
        let o = as_obj(v, "map")?;
        if let Some(p) = o.get("identity") {
            only_keys(o, &["identity"])?;
            return Ok(MonotoneMap::identity(&self.poset_ref(p)?));
        }
        if let Some(ps) = o.get("swap") {
            only_keys(o, &["swap"])?;
            let names = as_arr(ps, "swap")?;
            if names.len() != 2 {
                return Err(model_err("swap takes two posets"));
            }
            let (p, q) = (self.poset_ref(&names[0])?, self.poset_ref(&names[1])?);
            return Ok(MonotoneMap::swap(&p, &q));
        }
        only_keys(o, &["from", "to", "table", "description"])?;
        let from = self.poset_ref(field(o, "from")?)?;
        let to = self.poset_ref(field(o, "to")?)?;
        let table: Vec<usize> = match field(o, "table")? {
            Json::Array(a) => {
                if a.len() != from.len() {
                    return Err(model_err(format!("table has {} entries for {} elements", a.len(), from.len())));
                }
                a.iter()
                    .map(|x| to.index_of(as_str(x, "table entry")?))
                    .collect::<Result<_>>()?
            }
            Json::Object(m) => {
                let mut t = vec![None; from.len()];
                for (k, x) in m {
                    t[from.index_of(k)?] = Some(to.index_of(as_str(x, "table entry")?)?);
                }
                t.into_iter()
                    .enumerate()
                    .map(|(i, x)| x.ok_or_else(|| model_err(format!("table misses `{}`", from.label(i)))))
                    .collect::<Result<_>>()?
            }
            _ => return Err(model_err("table must be an array or an object")),
        };
        MonotoneMap::new(from, to, table)
    }

    fn map_ref(&mut self, v: &Json) -> Result<MonotoneMap> {
        let name = as_str(v, "map reference")?;
        if let Some(m) = self.model.env.maps.get(name) {
            return Ok(m.clone());
        }
        Err(Error::UnboundName(name.into()))
    }

    fn problem(&mut self, v: &Json) -> Result<DesignProblem> {
        self.problem_in(v, None)
    }

    /// An inline or declared problem; `sig` supplies default fun/res posets.
    fn problem_in(&mut self, v: &Json, sig: Option<(&PosetRef, &PosetRef)>) -> Result<DesignProblem> {
        if let Json::String(name) = v {
            return self
                .model
                .problems
                .get(name)
                .cloned()
                .ok_or_else(|| Error::UnboundName(name.clone()));
        }
        let o = as_obj(v, "design problem")?;
        if let Some(m) = o.get("threshold") {
            only_keys(o, &["threshold", "description"])?;
            return Ok(DesignProblem::threshold(&self.map_ref(m)?));
        }
        if let Some(p) = o.get("identity") {
            only_keys(o, &["identity", "description"])?;
            return Ok(DesignProblem::identity(&self.poset_ref(p)?));
        }
        only_keys(o, &["fun", "res", "feasible", "all", "description"])?;
        let (fun, res) = match (o.get("fun"), o.get("res"), sig) {
            (Some(f), Some(r), _) => (self.poset_ref(f)?, self.poset_ref(r)?),
            (None, None, Some((f, r))) => (f.clone(), r.clone()),
            _ => return Err(model_err("a design problem needs both `fun` and `res`")),
        };
        if let Some(all) = o.get("all") {
            let all = all.as_bool().ok_or_else(|| model_err("`all` must be a boolean"))?;
            return Ok(if all {
                DesignProblem::all_true(fun, res)
            } else {
                DesignProblem::all_false(fun, res)
            });
        }
        let pairs = as_arr(field(o, "feasible")?, "feasible")?
            .iter()
            .map(|pr| {
                let s = strings(pr, "feasible pair")?;
                match s.as_slice() {
                    [f, r] => Ok((fun.index_of(f)?, res.index_of(r)?)),
                    _ => Err(model_err("each feasible pair must have two labels")),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        DesignProblem::from_pairs(fun, res, &pairs)
    }

    // ---- cells and reparams ----------------------------------------------

    fn tuple(&self, space: &ParamSpace, v: Option<&Json>) -> Result<ParamTuple> {
        let labels = match v {
            Some(v) => strings(v, "parameter tuple")?,
            None => vec![],
        };
        space.tuple_of(&labels)
    }

    fn entries<T>(
        &mut self,
        space: &ParamSpace,
        o: &Map<String, Json>,
        mut value: impl FnMut(&mut Self, &Json) -> Result<T>,
    ) -> Result<Vec<T>> {
        let mut slots: Vec<Option<T>> = (0..space.size()).map(|_| None).collect();
        for e in as_arr(field(o, "entries")?, "entries")? {
            let eo = as_obj(e, "entry")?;
            only_keys(eo, &["param", "value"])?;
            let t = self.tuple(space, eo.get("param"))?;
            let k = space.rank(&t)?;
            if slots[k].is_some() {
                return Err(model_err(format!("duplicate entry for parameter {:?}", crate::param::tuple_labels(&t))));
            }
            slots[k] = Some(value(self, field(eo, "value")?)?);
        }
        slots
            .into_iter()
            .enumerate()
            .map(|(k, s)| {
                s.ok_or_else(|| {
                    model_err(format!(
                        "no entry for parameter {:?}",
                        crate::param::tuple_labels(&space.tuple(k))
                    ))
                })
            })
            .collect()
    }

    fn uncertain<T: crate::monads::Value>(
        &mut self,
        monad: MonadKind,
        v: &Json,
        mut item: impl FnMut(&mut Self, &Json) -> Result<T>,
    ) -> Result<Uncertain<T>> {
        let o = as_obj(v, "uncertain value")?;
        if o.len() != 1 {
            return Err(model_err("an uncertain value has exactly one of exact, set, interval, dist"));
        }
        let (k, x) = o.iter().next().expect("one key");
        let u = match k.as_str() {
            "exact" => Uncertain::Exact(item(self, x)?),
            "set" => Uncertain::subset(
                as_arr(x, "set")?
                    .iter()
                    .map(|y| item(self, y))
                    .collect::<Result<Vec<_>>>()?,
            )?,
            "interval" => {
                let a = as_arr(x, "interval")?;
                if a.len() != 2 {
                    return Err(model_err("an interval has two endpoints"));
                }
                Uncertain::interval(item(self, &a[0])?, item(self, &a[1])?)?
            }
            "dist" => {
                let pairs = as_arr(x, "dist")?
                    .iter()
                    .map(|pw| {
                        let pw = as_arr(pw, "weighted outcome")?;
                        if pw.len() != 2 {
                            return Err(model_err("a weighted outcome is [value, weight]"));
                        }
                        Ok((item(self, &pw[0])?, rational::from_json(&pw[1])?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Uncertain::Dist(Dist::new(pairs)?)
            }
            other => return Err(model_err(format!("unknown uncertain-value kind `{other}`"))),
        };
        // exact values are accepted in any monad via η
        monad.promote(&u)
    }

    fn cell(&mut self, v: &Json) -> Result<ParamCell> {
        let o = as_obj(v, "cell")?;
        only_keys(o, &["source", "target", "monad", "space", "entries", "description"])?;
        let source = self.poset_ref(field(o, "source")?)?;
        let target = self.poset_ref(field(o, "target")?)?;
        let monad = MonadKind::parse(str_field(o, "monad")?)?;
        let space = self.space(o.get("space"))?;
        let entries = self.entries(&space, o, |l, x| {
            l.uncertain(monad, x, |l, d| l.problem_in(d, Some((&source, &target))))
        })?;
        ParamCell::new(source, target, space, monad, entries)
    }

    fn reparam(&mut self, v: &Json) -> Result<Reparam> {
        let o = as_obj(v, "reparam")?;
        only_keys(o, &["from", "to", "monad", "entries", "description"])?;
        let from = self.space(Some(field(o, "from")?))?;
        let to = self.space(Some(field(o, "to")?))?;
        let monad = MonadKind::parse(str_field(o, "monad")?)?;
        let table = self.entries(&from, o, |l, x| l.uncertain(monad, x, |l, t| l.tuple(&to, Some(t))))?;
        let lookup: BTreeMap<Vec<usize>, Uncertain<ParamTuple>> = from
            .tuples()
            .zip(table)
            .map(|(t, u)| (t.iter().map(|e| e.index()).collect(), u))
            .collect();
        Reparam::new(from, to, monad, |t| {
            Ok(lookup[&t.iter().map(|e| e.index()).collect::<Vec<_>>()].clone())
        })
    }

    // ---- wirings, data and configs ----------------------------------------

    fn wiring(&mut self, v: &Json) -> Result<Wiring> {
        let o = as_obj(v, "wiring")?;
        only_keys(o, &["monad", "expr", "description"])?;
        let monad = MonadKind::parse(str_field(o, "monad")?)?;
        let expr = WiringExpr::from_json(field(o, "expr")?)?;
        wiring::typecheck(&self.model.env, &expr, monad)?;
        Ok(Wiring { monad, expr })
    }

    fn dataset(&mut self, v: &Json) -> Result<Dataset> {
        let o = as_obj(v, "dataset")?;
        only_keys(o, &["fun", "res", "rows", "description"])?;
        let fun = self.poset_ref(field(o, "fun")?)?;
        let res = self.poset_ref(field(o, "res")?)?;
        let rows = as_arr(field(o, "rows")?, "rows")?
            .iter()
            .map(|r| {
                let ro = as_obj(r, "observation")?;
                only_keys(ro, &["fun", "res", "feasible", "inputs"])?;
                Ok(Observation {
                    fun: fun.index_of(str_field(ro, "fun")?)?,
                    res: res.index_of(str_field(ro, "res")?)?,
                    feasible: field(ro, "feasible")?
                        .as_bool()
                        .ok_or_else(|| model_err("`feasible` must be a boolean"))?,
                    inputs: match ro.get("inputs") {
                        Some(i) => strings(i, "inputs")?,
                        None => vec![],
                    },
                })
            })
            .collect::<Result<_>>()?;
        Ok(Dataset { fun, res, rows })
    }

    fn cell_ref(&self, o: &Map<String, Json>) -> Result<CellRef> {
        let r = match (o.get("cell"), o.get("wiring")) {
            (Some(c), None) => CellRef::Cell(as_str(c, "cell")?.into()),
            (None, Some(w)) => CellRef::Wiring(as_str(w, "wiring")?.into()),
            _ => return Err(model_err("give exactly one of `cell` or `wiring`")),
        };
        let bound = match &r {
            CellRef::Cell(n) => self.model.env.cells.contains_key(n),
            CellRef::Wiring(n) => self.model.wirings.contains_key(n),
        };
        if !bound {
            let (CellRef::Cell(n) | CellRef::Wiring(n)) = r;
            return Err(Error::UnboundName(n));
        }
        Ok(r)
    }

    fn decision(&mut self, v: &Json) -> Result<DecisionConfig> {
        let o = as_obj(v, "decision")?;
        only_keys(o, &["cell", "wiring", "fun", "objective", "penalty", "description"])?;
        Ok(DecisionConfig {
            cell: self.cell_ref(o)?,
            fun: str_field(o, "fun")?.into(),
            objective: Objective::parse(str_field(o, "objective")?)?,
            penalty: match o.get("penalty") {
                None => Penalty::Infinity,
                Some(p) => parse_penalty(p)?,
            },
        })
    }

    fn fit(&mut self, v: &Json) -> Result<FitConfig> {
        let o = as_obj(v, "fit")?;
        only_keys(o, &["family", "data", "mode", "lambda", "description"])?;
        let family = as_arr(field(o, "family")?, "family")?
            .iter()
            .map(|c| {
                let co = as_obj(c, "family member")?;
                only_keys(co, &["theta", "phi", "complexity"])?;
                Ok(FitCandidate {
                    theta: str_field(co, "theta")?.into(),
                    phi: self.map_ref(field(co, "phi")?)?,
                    complexity: match co.get("complexity") {
                        Some(x) => rational::from_json(x)?,
                        None => rational::zero(),
                    },
                })
            })
            .collect::<Result<_>>()?;
        let data = str_field(o, "data")?.to_string();
        if !self.model.datasets.contains_key(&data) {
            return Err(Error::UnboundName(data));
        }
        let lambda = match o.get("lambda") {
            Some(x) => rational::from_json(x)?,
            None => rational::zero(),
        };
        let mode = parse_fit_mode(o.get("mode").map(|m| as_str(m, "mode")).transpose()?.unwrap_or("least_squares"), lambda)?;
        Ok(FitConfig { family, data, mode })
    }

    fn bayes(&mut self, v: &Json) -> Result<BayesConfig> {
        let o = as_obj(v, "bayes")?;
        only_keys(o, &["cell", "wiring", "prior", "data", "description"])?;
        let cell = self.cell_ref(o)?;
        let data = str_field(o, "data")?.to_string();
        if !self.model.datasets.contains_key(&data) {
            return Err(Error::UnboundName(data));
        }
        let prior = match o.get("prior") {
            None => None,
            Some(Json::String(s)) if s == "uniform" => None,
            Some(p) => {
                let space = self.model.cell(&cell)?.space().clone();
                Some(
                    as_arr(p, "prior")?
                        .iter()
                        .map(|pw| {
                            let po = as_obj(pw, "prior entry")?;
                            only_keys(po, &["param", "weight"])?;
                            Ok((self.tuple(&space, po.get("param"))?, rational::from_json(field(po, "weight")?)?))
                        })
                        .collect::<Result<_>>()?,
                )
            }
        };
        Ok(BayesConfig { cell, prior, data })
    }
}

/// A rational, or the string `"infinity"`.
pub fn parse_penalty(v: &Json) -> Result<Penalty> {
    match v {
        Json::String(s) if s == "infinity" || s == "inf" => Ok(Penalty::Infinity),
        other => Ok(Penalty::Finite(rational::from_json(other)?)),
    }
}

pub fn parse_fit_mode(mode: &str, lambda: Rational) -> Result<FitMode> {
    match mode {
        "least_squares" => Ok(FitMode::LeastSquares),
        "constrained" => Ok(FitMode::Constrained { lambda }),
        other => Err(Error::InvalidInput(format!("unknown fit mode `{other}`"))),
    }
}
