//! Wiring expressions: co-design diagrams written as trees of series,
//! parallel, feedback, lift and reparametrization nodes, evaluated to a
//! single [`ParamCell`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::dp::{self, DesignProblem, MonotoneMap};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::monads::MonadKind;
use crate::param::{self, ParamCell, ParamSpace, Reparam};
use crate::poset::PosetRef;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WiringExpr {
    Prim(String),
    Id(String),
    Compose(Box<WiringExpr>, Box<WiringExpr>),
    Tensor(Box<WiringExpr>, Box<WiringExpr>),
    /// Closes the feedback wire on the named poset, which must be the last
    /// factor of both source and target.
    Loop(Box<WiringExpr>, String),
    Lift(String),
    Reparam(String, Box<WiringExpr>),
}

impl WiringExpr {
    pub fn prim(name: &str) -> Self {
        WiringExpr::Prim(name.into())
    }

    pub fn id(poset: &str) -> Self {
        WiringExpr::Id(poset.into())
    }

    pub fn lift(map: &str) -> Self {
        WiringExpr::Lift(map.into())
    }

    pub fn compose(a: WiringExpr, b: WiringExpr) -> Self {
        WiringExpr::Compose(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: WiringExpr, b: WiringExpr) -> Self {
        WiringExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn looped(e: WiringExpr, poset: &str) -> Self {
        WiringExpr::Loop(Box::new(e), poset.into())
    }

    pub fn reparam(name: &str, e: WiringExpr) -> Self {
        WiringExpr::Reparam(name.into(), Box::new(e))
    }

    fn tag(&self) -> &'static str {
        match self {
            WiringExpr::Prim(_) => "prim",
            WiringExpr::Id(_) => "id",
            WiringExpr::Compose(..) => "compose",
            WiringExpr::Tensor(..) => "tensor",
            WiringExpr::Loop(..) => "loop",
            WiringExpr::Lift(_) => "lift",
            WiringExpr::Reparam(..) => "reparam",
        }
    }

    /// Parses the nested-array form, e.g. `["loop", ["prim", "x"], "P"]`.
    pub fn from_json(v: &Json) -> Result<Self> {
        let bad = || Error::Model(format!("malformed wiring expression: {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        let tag = arr.first().and_then(Json::as_str).ok_or_else(bad)?;
        let s = |i: usize| arr.get(i).and_then(Json::as_str).map(str::to_string).ok_or_else(bad);
        let e = |i: usize| arr.get(i).ok_or_else(bad).and_then(Self::from_json).map(Box::new);
        let arity = |n: usize| if arr.len() == n + 1 { Ok(()) } else { Err(bad()) };
        Ok(match tag {
            "prim" => {
                arity(1)?;
                WiringExpr::Prim(s(1)?)
            }
            "id" => {
                arity(1)?;
                WiringExpr::Id(s(1)?)
            }
            "lift" => {
                arity(1)?;
                WiringExpr::Lift(s(1)?)
            }
            "compose" => {
                arity(2)?;
                WiringExpr::Compose(e(1)?, e(2)?)
            }
            "tensor" => {
                arity(2)?;
                WiringExpr::Tensor(e(1)?, e(2)?)
            }
            "loop" => {
                arity(2)?;
                WiringExpr::Loop(e(1)?, s(2)?)
            }
            "reparam" => {
                arity(2)?;
                WiringExpr::Reparam(s(1)?, e(2)?)
            }
            _ => return Err(bad()),
        })
    }

    pub fn to_json(&self) -> Json {
        match self {
            WiringExpr::Prim(n) | WiringExpr::Id(n) | WiringExpr::Lift(n) => json!([self.tag(), n]),
            WiringExpr::Compose(a, b) | WiringExpr::Tensor(a, b) => {
                json!([self.tag(), a.to_json(), b.to_json()])
            }
            WiringExpr::Loop(e, p) => json!(["loop", e.to_json(), p]),
            WiringExpr::Reparam(g, e) => json!(["reparam", g, e.to_json()]),
        }
    }
}

impl fmt::Display for WiringExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// Named objects an expression can refer to.
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub posets: BTreeMap<String, PosetRef>,
    pub maps: BTreeMap<String, MonotoneMap>,
    pub cells: BTreeMap<String, ParamCell>,
    pub reparams: BTreeMap<String, Reparam>,
}

impl Env {
    pub fn poset(&self, name: &str) -> Result<&PosetRef> {
        self.posets.get(name).ok_or_else(|| Error::UnboundName(name.into()))
    }

    pub fn map(&self, name: &str) -> Result<&MonotoneMap> {
        self.maps.get(name).ok_or_else(|| Error::UnboundName(name.into()))
    }

    pub fn cell(&self, name: &str) -> Result<&ParamCell> {
        self.cells.get(name).ok_or_else(|| Error::UnboundName(name.into()))
    }

    pub fn reparam(&self, name: &str) -> Result<&Reparam> {
        self.reparams.get(name).ok_or_else(|| Error::UnboundName(name.into()))
    }
}

/// The type of a cell: `source → target` over `space` in `monad`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub source: PosetRef,
    pub target: PosetRef,
    pub space: ParamSpace,
    pub monad: MonadKind,
}

/// An expression annotated with the signature of every node.
#[derive(Debug, Clone)]
pub struct TypedExpr {
    pub path: String,
    pub node: &'static str,
    pub sig: Signature,
    pub children: Vec<TypedExpr>,
}

fn at(path: &str, e: Error) -> Error {
    match e {
        e @ Error::AtNode { .. } => e,
        cause => Error::AtNode {
            path: path.to_string(),
            cause: Box::new(cause),
        },
    }
}

fn child(path: &str, tag: &str, i: usize) -> String {
    format!("{path}/{tag}[{i}]")
}

/// Infers the signature of every node; the first error is reported with the
/// path of the node that caused it.
pub fn typecheck(env: &Env, expr: &WiringExpr, monad: MonadKind) -> Result<TypedExpr> {
    check_node(env, expr, monad, "root")
}

fn check_node(env: &Env, expr: &WiringExpr, monad: MonadKind, path: &str) -> Result<TypedExpr> {
    let tag = expr.tag();
    let sub = |i: usize, e: &WiringExpr| check_node(env, e, monad, &child(path, tag, i));
    let (sig, children) = match expr {
        WiringExpr::Prim(name) => {
            let c = env.cell(name).map_err(|e| at(path, e))?;
            if c.monad() != monad {
                return Err(at(
                    path,
                    Error::MonadMismatch {
                        expected: monad.name().into(),
                        found: c.monad().name().into(),
                    },
                ));
            }
            (
                Signature {
                    source: c.source().clone(),
                    target: c.target().clone(),
                    space: c.space().clone(),
                    monad,
                },
                vec![],
            )
        }
        WiringExpr::Id(p) => {
            let p = env.poset(p).map_err(|e| at(path, e))?;
            (
                Signature {
                    source: p.clone(),
                    target: p.clone(),
                    space: ParamSpace::unit(),
                    monad,
                },
                vec![],
            )
        }
        WiringExpr::Lift(m) => {
            let m = env.map(m).map_err(|e| at(path, e))?;
            (
                Signature {
                    source: m.from().clone(),
                    target: m.to().clone(),
                    space: ParamSpace::unit(),
                    monad,
                },
                vec![],
            )
        }
        WiringExpr::Compose(a, b) => {
            let (ta, tb) = (sub(0, a)?, sub(1, b)?);
            if *ta.sig.target != *tb.sig.source {
                return Err(at(path, Error::mismatch(&tb.sig.source, &ta.sig.target)));
            }
            (
                Signature {
                    source: ta.sig.source.clone(),
                    target: tb.sig.target.clone(),
                    space: ta.sig.space.concat(&tb.sig.space),
                    monad,
                },
                vec![ta, tb],
            )
        }
        WiringExpr::Tensor(a, b) => {
            let (ta, tb) = (sub(0, a)?, sub(1, b)?);
            (
                Signature {
                    source: Arc::new(crate::poset::FinitePoset::product(&ta.sig.source, &tb.sig.source)),
                    target: Arc::new(crate::poset::FinitePoset::product(&ta.sig.target, &tb.sig.target)),
                    space: ta.sig.space.concat(&tb.sig.space),
                    monad,
                },
                vec![ta, tb],
            )
        }
        WiringExpr::Loop(e, p) => {
            let te = sub(0, e)?;
            let p = env.poset(p).map_err(|e| at(path, e))?;
            let strip = |obj: &PosetRef| -> Result<PosetRef> {
                match obj.factors() {
                    Some((rest, last)) if **last == **p => Ok(rest.clone()),
                    _ => Err(Error::LoopFactorMissing {
                        factor: p.to_string(),
                        object: obj.to_string(),
                    }),
                }
            };
            let source = strip(&te.sig.source).map_err(|e| at(path, e))?;
            let target = strip(&te.sig.target).map_err(|e| at(path, e))?;
            (
                Signature {
                    source,
                    target,
                    space: te.sig.space.clone(),
                    monad,
                },
                vec![te],
            )
        }
        WiringExpr::Reparam(g, e) => {
            let te = sub(0, e)?;
            let g = env.reparam(g).map_err(|e| at(path, e))?;
            if g.monad() != monad {
                return Err(at(
                    path,
                    Error::MonadMismatch {
                        expected: monad.name().into(),
                        found: g.monad().name().into(),
                    },
                ));
            }
            if *g.to() != te.sig.space {
                return Err(at(
                    path,
                    Error::mismatch(format!("{:?}", te.sig.space), format!("{:?}", g.to())),
                ));
            }
            (
                Signature {
                    source: te.sig.source.clone(),
                    target: te.sig.target.clone(),
                    space: g.from().clone(),
                    monad,
                },
                vec![te],
            )
        }
    };
    Ok(TypedExpr {
        path: path.to_string(),
        node: tag,
        sig,
        children,
    })
}

/// Typechecks, then evaluates by structural recursion.
pub fn evaluate(env: &Env, expr: &WiringExpr, monad: MonadKind) -> Result<ParamCell> {
    evaluate_with(Execution::default(), env, expr, monad)
}

pub fn evaluate_with(exec: Execution, env: &Env, expr: &WiringExpr, monad: MonadKind) -> Result<ParamCell> {
    let typed = typecheck(env, expr, monad)?;
    eval_node(exec, env, expr, &typed)
}

fn eval_node(exec: Execution, env: &Env, expr: &WiringExpr, t: &TypedExpr) -> Result<ParamCell> {
    let m = t.sig.monad;
    let sub = |i: usize, e: &WiringExpr| eval_node(exec, env, e, &t.children[i]);
    let out = match expr {
        WiringExpr::Prim(name) => Ok(env.cell(name)?.clone()),
        WiringExpr::Id(_) => Ok(param::identity_cell(m, &t.sig.source)),
        WiringExpr::Lift(name) => Ok(param::cell_lift(m, &DesignProblem::lift(env.map(name)?))),
        WiringExpr::Compose(a, b) => param::cell_compose_with(exec, &sub(0, a)?, &sub(1, b)?),
        WiringExpr::Tensor(a, b) => param::cell_tensor_with(exec, &sub(0, a)?, &sub(1, b)?),
        WiringExpr::Loop(e, p) => {
            let inner = sub(0, e)?;
            let p = env.poset(p)?.clone();
            inner.map_dps(t.sig.source.clone(), t.sig.target.clone(), exec, |d| dp::trace(d, &p))
        }
        WiringExpr::Reparam(g, e) => param::cell_reparam_with(exec, env.reparam(g)?, &sub(0, e)?),
    };
    out.map_err(|e| at(&t.path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinitePoset;

    fn env() -> Env {
        let mut env = Env::default();
        let p: PosetRef = Arc::new(FinitePoset::chain(3));
        let q: PosetRef = Arc::new(FinitePoset::antichain(["x", "y"]).unwrap());
        env.posets.insert("P".into(), p.clone());
        env.posets.insert("Q".into(), q.clone());
        env.maps.insert("swap".into(), MonotoneMap::swap(&p, &p));
        env
    }

    #[test]
    fn identities_compose() {
        let env = env();
        let e = WiringExpr::compose(WiringExpr::id("P"), WiringExpr::id("P"));
        let t = typecheck(&env, &e, MonadKind::Interval).unwrap();
        assert_eq!(t.sig.source, t.sig.target);
        let c = evaluate(&env, &e, MonadKind::Interval).unwrap();
        assert_eq!(c, param::identity_cell(MonadKind::Interval, env.poset("P").unwrap()));
    }

    #[test]
    fn mismatch_is_reported_at_the_node() {
        let env = env();
        let e = WiringExpr::compose(WiringExpr::id("P"), WiringExpr::id("Q"));
        let err = typecheck(&env, &e, MonadKind::Identity).unwrap_err();
        assert!(matches!(&err, Error::AtNode { path, cause } if path == "root" && matches!(**cause, Error::ObjectMismatch { .. })));
        let e = WiringExpr::tensor(WiringExpr::id("P"), WiringExpr::prim("nope"));
        let err = typecheck(&env, &e, MonadKind::Identity).unwrap_err();
        assert!(matches!(&err, Error::AtNode { path, .. } if path == "root/tensor[1]"));
        assert!(matches!(err.root_cause(), Error::UnboundName(n) if n == "nope"));
    }

    #[test]
    fn yanking_at_cell_level() {
        let env = env();
        let e = WiringExpr::looped(WiringExpr::lift("swap"), "P");
        let c = evaluate(&env, &e, MonadKind::Dist).unwrap();
        assert_eq!(c, param::identity_cell(MonadKind::Dist, env.poset("P").unwrap()));
    }

    #[test]
    fn loop_factor_must_be_last() {
        let env = env();
        let e = WiringExpr::looped(WiringExpr::id("P"), "P");
        let err = typecheck(&env, &e, MonadKind::Identity).unwrap_err();
        assert!(matches!(err.root_cause(), Error::LoopFactorMissing { .. }));
    }

    #[test]
    fn json_round_trip() {
        let v: Json = serde_json::from_str(r#"["loop", ["compose", ["lift", "j"], ["reparam", "g", ["prim", "c"]]], "M"]"#).unwrap();
        let e = WiringExpr::from_json(&v).unwrap();
        assert_eq!(e.to_json(), v);
        assert!(WiringExpr::from_json(&serde_json::json!(["compose", ["id", "P"]])).is_err());
    }
}
