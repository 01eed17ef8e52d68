//! Learning parametrized design problems from feasibility data: exact
//! Bayesian conditioning over a finite hypothesis space, and grid fitting of
//! threshold-form families.

use crate::dp::{DesignProblem, MonotoneMap};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::monads::Dist;
use crate::poset::PosetRef;
use crate::rational::{one, zero, Rational};

/// One feasibility test: functionality `fun` was (or was not) achieved with
/// resource `res`. `inputs` are free-form labels of decision inputs in force
/// when the observation was made; only conditional kernels look at them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Observation {
    pub fun: usize,
    pub res: usize,
    pub feasible: bool,
    pub inputs: Vec<String>,
}

impl Observation {
    pub fn new(fun: usize, res: usize, feasible: bool) -> Self {
        Observation {
            fun,
            res,
            feasible,
            inputs: vec![],
        }
    }
}

/// `P[Φ(f, r) = outcome]` for `Φ ~ kernel`. Infeasible outcomes use `1 − P[feasible]`.
pub fn likelihood(kernel: &Dist<DesignProblem>, obs: &Observation) -> Result<Rational> {
    for d in kernel.support() {
        if obs.fun >= d.fun().len() || obs.res >= d.res().len() {
            return Err(Error::ElementNotInPoset {
                element: format!("({}, {})", obs.fun, obs.res),
                poset: format!("{} × {}", d.fun(), d.res()),
            });
        }
    }
    let p = kernel.prob_where(|d| d.get(obs.fun, obs.res));
    Ok(if obs.feasible { p } else { one() - p })
}

/// Posterior over hypotheses `D` given conditionally independent observations.
pub fn bayes_update<D: Ord + Clone + Send + Sync>(
    prior: &Dist<D>,
    kernel: impl Fn(&D) -> Result<Dist<DesignProblem>> + Sync + Send,
    obs: &[Observation],
) -> Result<Dist<D>> {
    bayes_update_conditional(Execution::default(), prior, |d, _| kernel(d), obs)
}

/// As [`bayes_update`], but the kernel also sees each observation (and so
/// its decision inputs).
pub fn bayes_update_conditional<D: Ord + Clone + Send + Sync>(
    exec: Execution,
    prior: &Dist<D>,
    kernel: impl Fn(&D, &Observation) -> Result<Dist<DesignProblem>> + Sync + Send,
    obs: &[Observation],
) -> Result<Dist<D>> {
    let hyps: Vec<(&D, &Rational)> = prior.iter().collect();
    let weights = exec.try_map_range(hyps.len(), |i| {
        let (d, w) = hyps[i];
        let mut acc = w.clone();
        for o in obs {
            if acc == zero() {
                break;
            }
            acc *= likelihood(&kernel(d, o)?, o)?;
        }
        Ok(acc)
    })?;
    if weights.iter().all(|w| *w == zero()) {
        return Err(Error::ZeroEvidence);
    }
    Dist::normalized(hyps.into_iter().map(|(d, _)| d.clone()).zip(weights))
}

/// Numeric coordinates for each element of a poset, used for squared loss.
/// Chains get one coordinate; products concatenate their factors'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    poset: PosetRef,
    coords: Vec<Vec<Rational>>,
}

impl Embedding {
    pub fn new(poset: PosetRef, coords: Vec<Vec<Rational>>) -> Result<Self> {
        if coords.len() != poset.len() {
            return Err(Error::mismatch(
                format!("{} embedded elements", poset.len()),
                coords.len(),
            ));
        }
        Ok(Embedding { poset, coords })
    }

    pub fn scalar(poset: PosetRef, values: Vec<Rational>) -> Result<Self> {
        Self::new(poset, values.into_iter().map(|v| vec![v]).collect())
    }

    pub fn product(a: &Embedding, b: &Embedding, poset: PosetRef) -> Result<Self> {
        let coords = a
            .coords
            .iter()
            .flat_map(|x| b.coords.iter().map(move |y| x.iter().chain(y).cloned().collect()))
            .collect();
        Self::new(poset, coords)
    }

    pub fn poset(&self) -> &PosetRef {
        &self.poset
    }

    pub fn squared_distance(&self, a: usize, b: usize) -> Rational {
        self.coords[a]
            .iter()
            .zip(&self.coords[b])
            .map(|(x, y)| (x - y) * (x - y))
            .sum()
    }
}

/// One grid point `θ` of a threshold-form family `d(f, r) = φ(f; θ) ≤ r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitCandidate {
    pub theta: String,
    pub phi: MonotoneMap,
    pub complexity: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitMode {
    LeastSquares,
    /// Only `θ` with `φ(f_i; θ) ≤ r_i` for every observation; scored by
    /// squared loss plus `lambda · complexity`.
    Constrained { lambda: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitRow {
    pub theta: String,
    pub loss: Rational,
    pub consistent: bool,
    /// `None` when the candidate is excluded.
    pub score: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitReport {
    pub rows: Vec<FitRow>,
    pub chosen: usize,
}

impl FitReport {
    pub fn chosen_row(&self) -> &FitRow {
        &self.rows[self.chosen]
    }
}

/// Scores every grid point and returns the first minimum in family order.
/// Observations must all be feasible ones.
pub fn grid_fit(family: &[FitCandidate], data: &[Observation], mode: &FitMode, embedding: &Embedding) -> Result<FitReport> {
    grid_fit_with(Execution::default(), family, data, mode, embedding)
}

pub fn grid_fit_with(
    exec: Execution,
    family: &[FitCandidate],
    data: &[Observation],
    mode: &FitMode,
    embedding: &Embedding,
) -> Result<FitReport> {
    if data.is_empty() {
        return Err(Error::InvalidInput("no observations to fit".into()));
    }
    if family.is_empty() {
        return Err(Error::InvalidInput("empty parameter grid".into()));
    }
    if let Some(o) = data.iter().find(|o| !o.feasible) {
        return Err(Error::InvalidInput(format!(
            "fitting uses feasible observations only; got an infeasible one at ({}, {})",
            o.fun, o.res
        )));
    }
    for c in family {
        if **c.phi.to() != **embedding.poset() {
            return Err(Error::mismatch(embedding.poset(), c.phi.to()));
        }
        if let Some(o) = data.iter().find(|o| o.fun >= c.phi.from().len() || o.res >= c.phi.to().len()) {
            return Err(Error::ElementNotInPoset {
                element: format!("({}, {})", o.fun, o.res),
                poset: format!("{} × {}", c.phi.from(), c.phi.to()),
            });
        }
    }
    let rows = exec.map(family, |c| {
        let predicted = |o: &Observation| c.phi.apply(o.fun);
        let loss: Rational = data
            .iter()
            .map(|o| embedding.squared_distance(predicted(o), o.res))
            .sum();
        let consistent = data.iter().all(|o| c.phi.to().leq(predicted(o), o.res));
        let score = match mode {
            FitMode::LeastSquares => Some(loss.clone()),
            FitMode::Constrained { lambda } => consistent.then(|| &loss + lambda * &c.complexity),
        };
        FitRow {
            theta: c.theta.clone(),
            loss,
            consistent,
            score,
        }
    });
    let mut chosen: Option<usize> = None;
    for (i, r) in rows.iter().enumerate() {
        if let Some(s) = &r.score {
            if chosen.is_none_or(|j| Some(s) < rows[j].score.as_ref()) {
                chosen = Some(i);
            }
        }
    }
    let chosen = chosen.ok_or(Error::NoFeasibleTheta)?;
    Ok(FitReport { rows, chosen })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinitePoset;
    use crate::rational::{int, ratio};
    use std::sync::Arc;

    fn chain(n: usize) -> PosetRef {
        Arc::new(FinitePoset::chain(n))
    }

    #[test]
    fn zero_likelihood_eliminates_a_hypothesis() {
        let c = chain(2);
        let yes = DesignProblem::all_true(c.clone(), c.clone());
        let no = DesignProblem::all_false(c.clone(), c.clone());
        let prior = Dist::uniform(["a".to_string(), "b".to_string()]).unwrap();
        let post = bayes_update(
            &prior,
            |h| Ok(Dist::point(if h == "a" { yes.clone() } else { no.clone() })),
            &[Observation::new(0, 0, true)],
        )
        .unwrap();
        assert_eq!(post, Dist::point("a".to_string()));
        assert!(matches!(
            bayes_update(&post, |_| Ok(Dist::point(yes.clone())), &[Observation::new(0, 0, false)]),
            Err(Error::ZeroEvidence)
        ));
    }

    #[test]
    fn uniform_prior_reproduces_normalized_likelihoods() {
        let c = chain(2);
        let yes = DesignProblem::all_true(c.clone(), c.clone());
        let no = DesignProblem::all_false(c.clone(), c.clone());
        let k = |p: Rational| Dist::new([(yes.clone(), p.clone()), (no.clone(), one() - p)]).unwrap();
        let prior = Dist::uniform([0u8, 1]).unwrap();
        // likelihoods 4/5 and 1/5
        let post = bayes_update(
            &prior,
            |h| Ok(if *h == 0 { k(ratio(4, 5)) } else { k(ratio(1, 5)) }),
            &[Observation::new(1, 1, true)],
        )
        .unwrap();
        assert_eq!(post.prob(&0), ratio(4, 5));
        assert_eq!(post.prob(&1), ratio(1, 5));
    }

    #[test]
    fn fit_recovers_the_generating_parameter() {
        let (f, r) = (chain(3), chain(4));
        let family: Vec<FitCandidate> = (0..3)
            .map(|k| FitCandidate {
                theta: format!("t{k}"),
                phi: MonotoneMap::from_fn(f.clone(), r.clone(), |i| (i + k).min(3)).unwrap(),
                complexity: int(k as i64),
            })
            .collect();
        let emb = Embedding::scalar(r.clone(), (0..4).map(int).collect()).unwrap();
        let data: Vec<Observation> = (0..3).map(|i| Observation::new(i, (i + 1).min(3), true)).collect();
        let rep = grid_fit(&family, &data, &FitMode::LeastSquares, &emb).unwrap();
        assert_eq!(rep.chosen_row().theta, "t1");
        assert_eq!(rep.chosen_row().score, Some(int(0)));
        let bad: Vec<Observation> = vec![Observation::new(2, 0, true)];
        assert!(matches!(
            grid_fit(&family, &bad, &FitMode::Constrained { lambda: int(1) }, &emb),
            Err(Error::NoFeasibleTheta)
        ));
    }
}
