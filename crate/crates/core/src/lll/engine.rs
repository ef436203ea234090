//! Moser-Tardos resampling over independent discrete variables.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::PipelineError;

/// Sampling law of one variable. Values are `0..k` for a k-way law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum VarDist {
    /// 1 with probability `p`, else 0.
    Bernoulli { p: f64 },
    /// Value `i` with probability `weights[i]` (weights sum to 1).
    Categorical { weights: Vec<f64> },
}

impl VarDist {
    pub fn uniform(k: usize) -> VarDist {
        VarDist::Categorical {
            weights: vec![1.0 / k as f64; k],
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> u32 {
        match self {
            VarDist::Bernoulli { p } => u32::from(rng.gen::<f64>() < *p),
            VarDist::Categorical { weights } => {
                let x: f64 = rng.gen();
                let mut acc = 0.0;
                for (i, w) in weights.iter().enumerate() {
                    acc += w;
                    if x < acc {
                        return i as u32;
                    }
                }
                (weights.len() - 1) as u32
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomModel {
    pub vars: Vec<VarDist>,
    pub seed: u64,
}

type Predicate<'a> = Box<dyn Fn(&[u32]) -> bool + Send + Sync + 'a>;

/// A bad event: a predicate that must read only the variables in `scope`.
pub struct BadEvent<'a> {
    pub id: usize,
    pub scope: Vec<usize>,
    violated: Predicate<'a>,
}

impl<'a> BadEvent<'a> {
    pub fn new<F>(id: usize, scope: Vec<usize>, violated: F) -> Self
    where
        F: Fn(&[u32]) -> bool + Send + Sync + 'a,
    {
        BadEvent {
            id,
            scope,
            violated: Box::new(violated),
        }
    }

    pub fn is_violated(&self, assignment: &[u32]) -> bool {
        (self.violated)(assignment)
    }
}

impl std::fmt::Debug for BadEvent<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BadEvent")
            .field("id", &self.id)
            .field("scope", &self.scope)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LllOutcome {
    pub assignment: Vec<u32>,
    pub rounds: u64,
    pub converged: bool,
    /// Resample count per event, indexed like the input event list.
    pub resamples: Vec<u64>,
}

/// Default cap on event resamplings.
pub const DEFAULT_MAX_ROUNDS: u64 = 1_000_000;

/// Samples every variable, then repeatedly resamples the scope of the
/// lowest-indexed violated event until none is violated or `max_rounds`
/// resamplings have been spent.
pub fn moser_tardos(
    model: &RandomModel,
    events: &[BadEvent<'_>],
    max_rounds: u64,
) -> Result<LllOutcome, PipelineError> {
    let nvars = model.vars.len();
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); nvars];
    for (i, e) in events.iter().enumerate() {
        if e.scope.is_empty() {
            return Err(PipelineError::Precondition(format!("event {} has an empty scope", e.id)));
        }
        for &x in &e.scope {
            if x >= nvars {
                return Err(PipelineError::Precondition(format!(
                    "event {} reads variable {x} of {nvars}",
                    e.id
                )));
            }
            watchers[x].push(i);
        }
    }
    for list in watchers.iter_mut() {
        list.dedup();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let mut assignment: Vec<u32> = model.vars.iter().map(|d| d.sample(&mut rng)).collect();
    let mut violated: BTreeSet<usize> = events
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_violated(&assignment))
        .map(|(i, _)| i)
        .collect();
    let mut resamples = vec![0u64; events.len()];
    let mut rounds = 0;
    let mut touched: Vec<usize> = Vec::new();
    while let Some(&i) = violated.first() {
        if rounds >= max_rounds {
            break;
        }
        rounds += 1;
        resamples[i] += 1;
        for &x in &events[i].scope {
            assignment[x] = model.vars[x].sample(&mut rng);
        }
        touched.clear();
        for &x in &events[i].scope {
            touched.extend_from_slice(&watchers[x]);
        }
        touched.sort_unstable();
        touched.dedup();
        for &j in &touched {
            if events[j].is_violated(&assignment) {
                violated.insert(j);
            } else {
                violated.remove(&j);
            }
        }
    }
    Ok(LllOutcome {
        converged: violated.is_empty(),
        assignment,
        rounds,
        resamples,
    })
}

/// Value of `e * p * (d + 1)`, the symmetric local-lemma condition (holds when <= 1).
pub fn symmetric_condition(p: f64, dependency: usize) -> f64 {
    std::f64::consts::E * p * (dependency as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_events_converge_immediately() {
        let model = RandomModel {
            vars: vec![VarDist::Bernoulli { p: 0.5 }; 4],
            seed: 9,
        };
        let out = moser_tardos(&model, &[], 10).unwrap();
        assert!(out.converged);
        assert_eq!(out.rounds, 0);
        assert_eq!(out.assignment.len(), 4);
    }

    #[test]
    fn single_event_resamples_until_zero() {
        let model = RandomModel {
            vars: vec![VarDist::Bernoulli { p: 0.5 }],
            seed: 3,
        };
        let events = [BadEvent::new(0, vec![0], |a: &[u32]| a[0] == 1)];
        for seed in 0..50 {
            let out = moser_tardos(&RandomModel { seed, ..model.clone() }, &events, 1_000).unwrap();
            assert!(out.converged);
            assert_eq!(out.assignment, vec![0]);
            assert!(out.rounds < 30);
        }
    }

    #[test]
    fn empty_scope_rejected() {
        let model = RandomModel { vars: vec![], seed: 0 };
        let events = [BadEvent::new(0, vec![], |_: &[u32]| false)];
        assert!(moser_tardos(&model, &events, 1).is_err());
    }

    #[test]
    fn unsatisfiable_event_hits_round_cap() {
        let model = RandomModel {
            vars: vec![VarDist::Bernoulli { p: 0.5 }],
            seed: 1,
        };
        let events = [BadEvent::new(0, vec![0], |_: &[u32]| true)];
        let out = moser_tardos(&model, &events, 25).unwrap();
        assert!(!out.converged);
        assert_eq!(out.rounds, 25);
        assert_eq!(out.resamples, vec![25]);
    }

    #[test]
    fn categorical_sampling_respects_support() {
        let model = RandomModel {
            vars: vec![VarDist::Categorical { weights: vec![0.0, 1.0, 0.0] }; 8],
            seed: 5,
        };
        let out = moser_tardos(&model, &[], 1).unwrap();
        assert!(out.assignment.iter().all(|&x| x == 1));
    }
}
