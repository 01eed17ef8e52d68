//! Co-design queries: minimal resources for a fixed functionality (and the
//! dual), lifted through each uncertainty monad, plus decision objectives
//! that pick a parameter by the cost of its answer.

use std::collections::BTreeSet;
use std::fmt;

use crate::dp::DesignProblem;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::monads::{Dist, MonadKind, Uncertain};
use crate::param::{ParamCell, ParamTuple};
use crate::poset::{Antichain, PosetRef};
use crate::rational::{zero, Rational};

fn check_index(p: &PosetRef, i: usize) -> Result<()> {
    if i < p.len() {
        Ok(())
    } else {
        Err(Error::ElementNotInPoset {
            element: format!("#{i}"),
            poset: p.to_string(),
        })
    }
}

/// The minimal resources making `f` feasible; empty iff `f` is infeasible.
pub fn fix_fun_min_res(d: &DesignProblem, f: usize) -> Result<Antichain> {
    check_index(d.fun(), f)?;
    Ok(d.res().minimal_elements(&d.feasible_resources(f)))
}

/// The maximal functionalities that resource `r` makes feasible; the dual
/// query, computed as minimal elements in `F^op`.
pub fn fix_res_max_fun(d: &DesignProblem, r: usize) -> Result<Antichain> {
    check_index(d.res(), r)?;
    let feasible: Vec<usize> = (0..d.fun().len()).filter(|&f| d.get(f, r)).collect();
    let op: PosetRef = std::sync::Arc::new(d.fun().opposite());
    let members = op.minimal_elements(&feasible).members().to_vec();
    Antichain::new(d.fun().clone(), members)
}

/// A query answer for one parameter, shaped by the monad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryResult {
    Plain(Antichain),
    Possibilistic(BTreeSet<Antichain>),
    /// Answers under the lower (worst) and upper (best) design problem.
    Interval {
        pessimistic: Antichain,
        optimistic: Antichain,
    },
    Probabilistic {
        answers: Dist<Antichain>,
        feasible: Rational,
    },
}

fn query_entry(e: &Uncertain<DesignProblem>, f: usize) -> Result<QueryResult> {
    Ok(match e {
        Uncertain::Exact(d) => QueryResult::Plain(fix_fun_min_res(d, f)?),
        Uncertain::Subset(ds) => QueryResult::Possibilistic(
            ds.iter().map(|d| fix_fun_min_res(d, f)).collect::<Result<_>>()?,
        ),
        Uncertain::Interval(i) => QueryResult::Interval {
            pessimistic: fix_fun_min_res(i.lo(), f)?,
            optimistic: fix_fun_min_res(i.hi(), f)?,
        },
        Uncertain::Dist(dist) => {
            for d in dist.support() {
                check_index(d.fun(), f)?;
            }
            let answers = dist.map(|d| fix_fun_min_res(d, f).expect("index checked"));
            let feasible = answers.prob_where(|a| !a.is_empty());
            QueryResult::Probabilistic { answers, feasible }
        }
    })
}

/// Runs the query at every parameter tuple, in enumeration order.
pub fn query_cell(c: &ParamCell, f: usize) -> Result<Vec<(ParamTuple, QueryResult)>> {
    query_cell_with(Execution::default(), c, f)
}

pub fn query_cell_with(exec: Execution, c: &ParamCell, f: usize) -> Result<Vec<(ParamTuple, QueryResult)>> {
    check_index(c.source(), f)?;
    let results = exec.try_map_range(c.entries().len(), |i| query_entry(&c.entries()[i], f))?;
    Ok(c.space().tuples().zip(results).collect())
}

/// A monotone cost on resources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostFn {
    res: PosetRef,
    values: Vec<Rational>,
}

impl CostFn {
    pub fn new(res: PosetRef, values: Vec<Rational>) -> Result<Self> {
        if values.len() != res.len() {
            return Err(Error::mismatch(
                format!("{} cost values", res.len()),
                values.len(),
            ));
        }
        for a in 0..res.len() {
            for b in 0..res.len() {
                if res.leq(a, b) && values[a] > values[b] {
                    return Err(Error::NotMonotone(format!(
                        "cost {} at {} exceeds cost {} at {}",
                        values[a],
                        res.label(a),
                        values[b],
                        res.label(b)
                    )));
                }
            }
        }
        Ok(CostFn { res, values })
    }

    pub fn res(&self) -> &PosetRef {
        &self.res
    }

    pub fn value(&self, r: usize) -> &Rational {
        &self.values[r]
    }

    /// The cheapest Pareto point; `None` for the empty (infeasible) answer.
    pub fn antichain_cost(&self, a: &Antichain) -> Option<Rational> {
        a.members().iter().map(|&r| self.values[r].clone()).min()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Objective {
    Expected,
    WorstCase,
    Optimistic,
}

impl Objective {
    pub const ALL: [Objective; 3] = [Objective::Expected, Objective::WorstCase, Objective::Optimistic];

    pub fn name(self) -> &'static str {
        match self {
            Objective::Expected => "expected",
            Objective::WorstCase => "worst_case",
            Objective::Optimistic => "optimistic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown objective `{s}`")))
    }

    /// Identity-monad cells accept every objective (they all coincide).
    pub fn supports(self, m: MonadKind) -> bool {
        match m {
            MonadKind::Identity => true,
            MonadKind::Powerset | MonadKind::Interval => self != Objective::Expected,
            MonadKind::Dist => self == Objective::Expected,
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What an infeasible outcome costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Penalty {
    Finite(Rational),
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Score {
    Value(Rational),
    Infeasible,
}

impl Score {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Score::Value(v) => Some(v),
            Score::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionRow {
    pub param: ParamTuple,
    pub answer: QueryResult,
    pub score: Score,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub objective: Objective,
    pub rows: Vec<DecisionRow>,
    /// Index into `rows` of the first minimal score.
    pub chosen: usize,
}

impl DecisionReport {
    pub fn chosen_row(&self) -> &DecisionRow {
        &self.rows[self.chosen]
    }
}

fn outcome_cost(cost: &CostFn, a: &Antichain, penalty: &Penalty) -> Score {
    match (cost.antichain_cost(a), penalty) {
        (Some(c), _) => Score::Value(c),
        (None, Penalty::Finite(p)) => Score::Value(p.clone()),
        (None, Penalty::Infinity) => Score::Infeasible,
    }
}

fn score(answer: &QueryResult, objective: Objective, cost: &CostFn, penalty: &Penalty) -> Score {
    let c = |a: &Antichain| outcome_cost(cost, a, penalty);
    match answer {
        QueryResult::Plain(a) => c(a),
        QueryResult::Interval {
            pessimistic,
            optimistic,
        } => match objective {
            Objective::Optimistic => c(optimistic),
            _ => c(pessimistic),
        },
        // Infeasible sorts above every value, so max/min do the right thing.
        QueryResult::Possibilistic(set) => match objective {
            Objective::Optimistic => set.iter().map(c).min(),
            _ => set.iter().map(c).max(),
        }
        .expect("nonempty set"),
        QueryResult::Probabilistic { answers, .. } => {
            let mut total = zero();
            for (a, p) in answers.iter() {
                match c(a) {
                    Score::Value(v) => total += v * p,
                    Score::Infeasible => return Score::Infeasible,
                }
            }
            Score::Value(total)
        }
    }
}

/// Scores every parameter by the cost of its answer at `f` and picks the
/// first minimum in enumeration order.
pub fn decide(c: &ParamCell, f: usize, objective: Objective, cost: &CostFn, penalty: &Penalty) -> Result<DecisionReport> {
    decide_with(Execution::default(), c, f, objective, cost, penalty)
}

pub fn decide_with(
    exec: Execution,
    c: &ParamCell,
    f: usize,
    objective: Objective,
    cost: &CostFn,
    penalty: &Penalty,
) -> Result<DecisionReport> {
    if !objective.supports(c.monad()) {
        return Err(Error::ObjectiveMonadMismatch {
            objective: objective.name().into(),
            monad: c.monad().name().into(),
        });
    }
    if **cost.res() != **c.target() {
        return Err(Error::mismatch(c.target(), cost.res()));
    }
    let answers = query_cell_with(exec, c, f)?;
    let scores = exec.map(&answers, |(_, a)| score(a, objective, cost, penalty));
    let rows: Vec<DecisionRow> = answers
        .into_iter()
        .zip(scores)
        .map(|((param, answer), score)| DecisionRow { param, answer, score })
        .collect();
    let mut chosen: Option<usize> = None;
    for (i, r) in rows.iter().enumerate() {
        if r.score != Score::Infeasible && chosen.is_none_or(|j| r.score < rows[j].score) {
            chosen = Some(i);
        }
    }
    let chosen = chosen.ok_or(Error::NoFeasibleParameter)?;
    Ok(DecisionReport { objective, rows, chosen })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::{cell_lift, ParamSpace};
    use crate::poset::FinitePoset;
    use crate::rational::{int, ratio};
    use std::sync::Arc;

    fn chain(n: usize) -> PosetRef {
        Arc::new(FinitePoset::chain(n))
    }

    #[test]
    fn identity_query_is_the_least_resource() {
        let c = chain(3);
        let a = fix_fun_min_res(&DesignProblem::identity(&c), 1).unwrap();
        assert_eq!(a.labels(), ["1"]);
        assert!(fix_fun_min_res(&DesignProblem::all_false(c.clone(), c.clone()), 1)
            .unwrap()
            .is_empty());
        assert!(matches!(fix_fun_min_res(&DesignProblem::identity(&c), 3), Err(Error::ElementNotInPoset { .. })));
        assert_eq!(fix_res_max_fun(&DesignProblem::identity(&c), 1).unwrap().labels(), ["1"]);
    }

    #[test]
    fn interval_query_gives_both_bounds() {
        let c = chain(3);
        let m = MonadKind::Interval;
        let e = Uncertain::interval(DesignProblem::all_false(c.clone(), c.clone()), DesignProblem::identity(&c)).unwrap();
        let cell = ParamCell::new(c.clone(), c.clone(), ParamSpace::unit(), m, vec![e]).unwrap();
        let rows = query_cell(&cell, 2).unwrap();
        let QueryResult::Interval { pessimistic, optimistic } = &rows[0].1 else { panic!() };
        assert!(pessimistic.is_empty());
        assert_eq!(optimistic.labels(), ["2"]);
    }

    #[test]
    fn deterministic_costs_and_ties() {
        let c = chain(6);
        let cost = CostFn::new(c.clone(), (0..6).map(int).collect()).unwrap();
        let u = ParamSpace::new([chain(3)]);
        let shift = [5usize, 3, 3];
        let cell = ParamCell::from_fn(c.clone(), c.clone(), u, MonadKind::Identity, |t| {
            let k = shift[t[0].index()];
            Ok(Uncertain::Exact(DesignProblem::from_fn(c.clone(), c.clone(), |_, r| r >= k)?))
        })
        .unwrap();
        let r = decide(&cell, 0, Objective::Expected, &cost, &Penalty::Infinity).unwrap();
        assert_eq!(r.chosen, 1);
        assert_eq!(r.chosen_row().score, Score::Value(int(3)));
    }

    #[test]
    fn dist_objective_rules() {
        let c = chain(2);
        let m = MonadKind::Dist;
        let e = Uncertain::Dist(
            Dist::uniform([DesignProblem::identity(&c), DesignProblem::all_false(c.clone(), c.clone())]).unwrap(),
        );
        let cell = ParamCell::new(c.clone(), c.clone(), ParamSpace::unit(), m, vec![e]).unwrap();
        let cost = CostFn::new(c.clone(), vec![int(1), int(2)]).unwrap();
        assert!(matches!(
            decide(&cell, 0, Objective::WorstCase, &cost, &Penalty::Infinity),
            Err(Error::ObjectiveMonadMismatch { .. })
        ));
        assert!(matches!(
            decide(&cell, 0, Objective::Expected, &cost, &Penalty::Infinity),
            Err(Error::NoFeasibleParameter)
        ));
        let r = decide(&cell, 0, Objective::Expected, &cost, &Penalty::Finite(int(10))).unwrap();
        assert_eq!(r.chosen_row().score, Score::Value(ratio(11, 2)));
        let QueryResult::Probabilistic { feasible, .. } = &r.chosen_row().answer else { panic!() };
        assert_eq!(*feasible, ratio(1, 2));
    }

    #[test]
    fn lifted_cells_query_like_plain_problems() {
        let c = chain(3);
        let d = DesignProblem::identity(&c);
        for m in MonadKind::ALL {
            let rows = query_cell(&cell_lift(m, &d), 1).unwrap();
            let plain = fix_fun_min_res(&d, 1).unwrap();
            let expected = match m {
                MonadKind::Identity => QueryResult::Plain(plain),
                MonadKind::Powerset => QueryResult::Possibilistic(BTreeSet::from([plain])),
                MonadKind::Interval => QueryResult::Interval {
                    pessimistic: plain.clone(),
                    optimistic: plain,
                },
                MonadKind::Dist => QueryResult::Probabilistic {
                    answers: Dist::point(plain),
                    feasible: crate::rational::one(),
                },
            };
            assert_eq!(rows[0].1, expected);
        }
    }

    #[test]
    fn non_monotone_costs_are_rejected() {
        assert!(CostFn::new(chain(2), vec![int(2), int(1)]).is_err());
    }
}
