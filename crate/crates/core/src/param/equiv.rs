//! Equivalence of parameterized morphisms by seeded sampling.
//!
//! Pointwise equality of two families is undecidable in general, so this is a
//! semi-decision: an `Inequivalent` verdict carries a concrete witness point
//! and is a proof, while `Equivalent` only means no sampled point separated
//! the two families.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Backend, Param, ParamError, ParamMor, ParamPoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for EquivConfig {
    fn default() -> Self {
        EquivConfig {
            samples: 100,
            seed: 0,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivStatus {
    Equivalent,
    Inequivalent,
    DimensionMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Signature {
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub point: ParamPoint,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivVerdict {
    pub status: EquivStatus,
    /// Points actually evaluated, including the origin.
    pub samples_used: usize,
    pub tolerance: f64,
    /// Largest deviation seen over the evaluated points.
    pub max_deviation: f64,
    pub left: Signature,
    pub right: Signature,
    pub counterexample: Option<Counterexample>,
}

impl EquivVerdict {
    pub fn is_equivalent(&self) -> bool {
        self.status == EquivStatus::Equivalent
    }
}

fn signature<B: Backend>(f: &ParamMor<B>) -> Signature {
    Signature {
        dom: f.dom().to_string(),
        cod: f.cod().to_string(),
    }
}

/// The points visited for a given space and configuration: the origin first,
/// then `samples` seeded draws.
pub(crate) fn probe_points<B: Backend>(param: &Param<B>, config: &EquivConfig) -> Vec<ParamPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let space = param.space();
    std::iter::once(space.origin())
        .chain((0..config.samples).map(|_| space.sample(&mut rng)))
        .collect()
}

pub(super) fn run<B, D>(
    param: &Param<B>,
    f: &ParamMor<B>,
    g: &ParamMor<B>,
    config: &EquivConfig,
    distance: D,
) -> Result<EquivVerdict, ParamError>
where
    B: Backend,
    D: Fn(&B::Morphism, &B::Morphism) -> Option<f64>,
{
    assert!(config.samples >= 1, "equivalence check needs at least one sample");
    assert!(config.tol > 0.0, "equivalence tolerance must be positive");

    let mut verdict = EquivVerdict {
        status: EquivStatus::Equivalent,
        samples_used: 0,
        tolerance: config.tol,
        max_deviation: 0.0,
        left: signature(f),
        right: signature(g),
        counterexample: None,
    };
    if f.dom() != g.dom() || f.cod() != g.cod() {
        verdict.status = EquivStatus::DimensionMismatch;
        return Ok(verdict);
    }

    for theta in probe_points(param, config) {
        let a = param.eval_at(f, &theta)?;
        let b = param.eval_at(g, &theta)?;
        verdict.samples_used += 1;
        let deviation = distance(&a, &b).unwrap_or(f64::INFINITY);
        verdict.max_deviation = verdict.max_deviation.max(deviation);
        // NaN deviations count as failures
        if deviation.is_nan() || deviation > config.tol {
            verdict.status = EquivStatus::Inequivalent;
            verdict.counterexample = Some(Counterexample {
                point: theta,
                deviation,
            });
            break;
        }
    }
    Ok(verdict)
}
