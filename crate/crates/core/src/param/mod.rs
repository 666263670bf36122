//! Parameterized morphisms over a symmetric monoidal base category.
//!
//! A [`ParamMor`] from `X` to `Y` is a family of base morphisms `X -> Y`
//! indexed by points of a [`ParamSpace`]. Every supported parameter space is
//! a set of real tuples, so copying a parameter means handing the same point
//! to both sub-evaluations and discarding it means ignoring the point. Under
//! that reading composition, tensor and all structural morphisms act
//! pointwise:
//!
//! ```text
//! (g ⋆ f)(θ) = g(θ) ∘ f(θ)        (f ⊠ g)(θ) = f(θ) ⊗ g(θ)
//! i_X(θ)     = 1_X                 a, ℓ, r, b = constant families
//! ```
//!
//! Evaluation at a point is a strict braided monoidal functor back to the
//! base category and [`Param::include`] is a section of every evaluation.

mod equiv;
mod laws;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

pub use equiv::{Counterexample, EquivConfig, EquivStatus, EquivVerdict, Signature};
pub use laws::{check_laws, LawConfig, LawCounterexample, LawEntry, LawReport, LawSampler};

/// The base category presented operationally.
///
/// Composition is in applicative order: `compose(g, f)` is `g` after `f`.
/// The braiding must be symmetric, i.e. `braiding(y, x) ∘ braiding(x, y)` is
/// the identity.
pub trait Backend: Clone + Send + Sync + 'static {
    type Object: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static;
    type Morphism: Clone + fmt::Debug + Send + Sync + 'static;

    fn dom(&self, m: &Self::Morphism) -> Self::Object;
    fn cod(&self, m: &Self::Morphism) -> Self::Object;
    fn identity(&self, x: &Self::Object) -> Self::Morphism;
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism, BackendError>;

    fn unit(&self) -> Self::Object;
    fn tensor_objects(&self, x: &Self::Object, y: &Self::Object) -> Self::Object;
    fn tensor(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;

    /// `(X ⊗ Y) ⊗ Z -> X ⊗ (Y ⊗ Z)`
    fn associator(&self, x: &Self::Object, y: &Self::Object, z: &Self::Object) -> Self::Morphism;
    fn associator_inverse(&self, x: &Self::Object, y: &Self::Object, z: &Self::Object) -> Self::Morphism;
    /// `I ⊗ X -> X`
    fn left_unitor(&self, x: &Self::Object) -> Self::Morphism;
    fn left_unitor_inverse(&self, x: &Self::Object) -> Self::Morphism;
    /// `X ⊗ I -> X`
    fn right_unitor(&self, x: &Self::Object) -> Self::Morphism;
    fn right_unitor_inverse(&self, x: &Self::Object) -> Self::Morphism;
    /// `X ⊗ Y -> Y ⊗ X`
    fn braiding(&self, x: &Self::Object, y: &Self::Object) -> Self::Morphism;

    /// Distance between two morphisms, `None` if they are not parallel.
    fn deviation(&self, a: &Self::Morphism, b: &Self::Morphism) -> Option<f64>;
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{0}")]
pub struct BackendError(pub String);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("parameter point has {actual} coordinates, expected {expected}")]
    Arity { expected: usize, actual: usize },
    #[error("parameter coordinate {index} is not finite")]
    NonFinitePoint { index: usize },
    #[error("parameterized morphisms live over different spaces (arity {left} vs {right})")]
    SpaceMismatch { left: usize, right: usize },
    #[error("cannot compose: codomain {f_cod} of the first morphism does not match domain {g_dom} of the second")]
    Compose { f_cod: String, g_dom: String },
    #[error("family evaluated to a morphism {actual_dom} -> {actual_cod}, declared {dom} -> {cod}")]
    Shape {
        dom: String,
        cod: String,
        actual_dom: String,
        actual_cod: String,
    },
    #[error("morphisms are not mutually inverse (deviation {deviation:e})")]
    NotInverse { deviation: f64 },
    #[error(transparent)]
    Backend(#[from] BackendError),
}

/// A point in a real parameter space. Coordinates are finite.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(transparent)]
pub struct ParamPoint(Vec<f64>);

impl ParamPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, ParamError> {
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(ParamError::NonFinitePoint { index });
        }
        Ok(ParamPoint(coords))
    }

    pub fn zeros(arity: usize) -> Self {
        ParamPoint(vec![0.0; arity])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `R^n` with a sampling box. Samples are drawn uniformly from
/// `[low, high)` in each coordinate; the default box is `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSpace {
    arity: usize,
    low: f64,
    high: f64,
}

impl ParamSpace {
    pub fn new(arity: usize) -> Self {
        ParamSpace {
            arity,
            low: 0.0,
            high: std::f64::consts::TAU,
        }
    }

    /// Same space with a different sampling box. Panics unless `low < high`
    /// and both are finite.
    pub fn with_range(self, low: f64, high: f64) -> Self {
        assert!(
            low.is_finite() && high.is_finite() && low < high,
            "invalid sampling range"
        );
        ParamSpace { low, high, ..self }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn range(&self) -> (f64, f64) {
        (self.low, self.high)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ParamPoint {
        ParamPoint((0..self.arity).map(|_| rng.gen_range(self.low..self.high)).collect())
    }

    pub fn origin(&self) -> ParamPoint {
        ParamPoint::zeros(self.arity)
    }

    pub fn check(&self, theta: &ParamPoint) -> Result<(), ParamError> {
        if theta.arity() != self.arity {
            return Err(ParamError::Arity {
                expected: self.arity,
                actual: theta.arity(),
            });
        }
        Ok(())
    }
}

type EvalFn<B> = dyn Fn(&ParamPoint) -> Result<<B as Backend>::Morphism, ParamError> + Send + Sync;

/// A parameterized morphism `dom -> cod`.
///
/// The evaluation map must be pure: equal points give equal morphisms.
pub struct ParamMor<B: Backend> {
    dom: B::Object,
    cod: B::Object,
    arity: usize,
    eval: Arc<EvalFn<B>>,
}

impl<B: Backend> Clone for ParamMor<B> {
    fn clone(&self) -> Self {
        ParamMor {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            arity: self.arity,
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<B: Backend> fmt::Debug for ParamMor<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamMor")
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .field("arity", &self.arity)
            .finish()
    }
}

impl<B: Backend> ParamMor<B> {
    pub fn dom(&self) -> &B::Object {
        &self.dom
    }

    pub fn cod(&self) -> &B::Object {
        &self.cod
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn evaluate(&self, backend: &B, theta: &ParamPoint) -> Result<B::Morphism, ParamError> {
        if theta.arity() != self.arity {
            return Err(ParamError::Arity {
                expected: self.arity,
                actual: theta.arity(),
            });
        }
        let m = (self.eval)(theta)?;
        let (d, c) = (backend.dom(&m), backend.cod(&m));
        if d != self.dom || c != self.cod {
            return Err(ParamError::Shape {
                dom: self.dom.to_string(),
                cod: self.cod.to_string(),
                actual_dom: d.to_string(),
                actual_cod: c.to_string(),
            });
        }
        Ok(m)
    }
}

/// `Param(P, C)` for a concrete base `C` (the backend) and parameter space `P`.
#[derive(Debug, Clone)]
pub struct Param<B: Backend> {
    backend: B,
    space: ParamSpace,
}

impl<B: Backend> Param<B> {
    pub fn new(backend: B, space: ParamSpace) -> Self {
        Param { backend, space }
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn space(&self) -> &ParamSpace {
        &self.space
    }

    /// Wraps an arbitrary pure map. Shape violations are reported when the
    /// family is evaluated.
    pub fn make_param<F>(&self, dom: B::Object, cod: B::Object, eval: F) -> ParamMor<B>
    where
        F: Fn(&ParamPoint) -> B::Morphism + Send + Sync + 'static,
    {
        ParamMor {
            dom,
            cod,
            arity: self.space.arity,
            eval: Arc::new(move |theta| Ok(eval(theta))),
        }
    }

    /// The constant family at `m`.
    pub fn include(&self, m: B::Morphism) -> ParamMor<B> {
        let dom = self.backend.dom(&m);
        let cod = self.backend.cod(&m);
        ParamMor {
            dom,
            cod,
            arity: self.space.arity,
            eval: Arc::new(move |_| Ok(m.clone())),
        }
    }

    pub fn identity(&self, x: &B::Object) -> ParamMor<B> {
        self.include(self.backend.identity(x))
    }

    fn same_space(&self, f: &ParamMor<B>) -> Result<(), ParamError> {
        if f.arity != self.space.arity {
            return Err(ParamError::SpaceMismatch {
                left: self.space.arity,
                right: f.arity,
            });
        }
        Ok(())
    }

    /// `g ⋆ f`: first `f`, then `g`.
    pub fn compose(&self, g: &ParamMor<B>, f: &ParamMor<B>) -> Result<ParamMor<B>, ParamError> {
        self.same_space(f)?;
        self.same_space(g)?;
        if f.cod != g.dom {
            return Err(ParamError::Compose {
                f_cod: f.cod.to_string(),
                g_dom: g.dom.to_string(),
            });
        }
        let (g2, f2, backend) = (g.clone(), f.clone(), self.backend.clone());
        Ok(ParamMor {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            arity: self.space.arity,
            eval: Arc::new(move |theta| {
                let fv = f2.evaluate(&backend, theta)?;
                let gv = g2.evaluate(&backend, theta)?;
                Ok(backend.compose(&gv, &fv)?)
            }),
        })
    }

    /// Composes a nonempty chain given in diagram order (first applied first).
    pub fn compose_chain(&self, chain: &[ParamMor<B>]) -> Result<ParamMor<B>, ParamError> {
        let (first, rest) = chain.split_first().expect("compose_chain needs at least one morphism");
        rest.iter()
            .try_fold(first.clone(), |acc, next| self.compose(next, &acc))
    }

    /// `f ⊠ g`, with `f` as the left factor.
    pub fn tensor(&self, f: &ParamMor<B>, g: &ParamMor<B>) -> Result<ParamMor<B>, ParamError> {
        self.same_space(f)?;
        self.same_space(g)?;
        let (f2, g2, backend) = (f.clone(), g.clone(), self.backend.clone());
        Ok(ParamMor {
            dom: self.backend.tensor_objects(&f.dom, &g.dom),
            cod: self.backend.tensor_objects(&f.cod, &g.cod),
            arity: self.space.arity,
            eval: Arc::new(move |theta| {
                let fv = f2.evaluate(&backend, theta)?;
                let gv = g2.evaluate(&backend, theta)?;
                Ok(backend.tensor(&fv, &gv))
            }),
        })
    }

    pub fn associator(&self, x: &B::Object, y: &B::Object, z: &B::Object) -> ParamMor<B> {
        self.include(self.backend.associator(x, y, z))
    }

    pub fn associator_inverse(&self, x: &B::Object, y: &B::Object, z: &B::Object) -> ParamMor<B> {
        self.include(self.backend.associator_inverse(x, y, z))
    }

    pub fn left_unitor(&self, x: &B::Object) -> ParamMor<B> {
        self.include(self.backend.left_unitor(x))
    }

    pub fn left_unitor_inverse(&self, x: &B::Object) -> ParamMor<B> {
        self.include(self.backend.left_unitor_inverse(x))
    }

    pub fn right_unitor(&self, x: &B::Object) -> ParamMor<B> {
        self.include(self.backend.right_unitor(x))
    }

    pub fn right_unitor_inverse(&self, x: &B::Object) -> ParamMor<B> {
        self.include(self.backend.right_unitor_inverse(x))
    }

    pub fn braiding(&self, x: &B::Object, y: &B::Object) -> ParamMor<B> {
        self.include(self.backend.braiding(x, y))
    }

    /// Evaluation at `theta`; the result has shape `f.dom() -> f.cod()`.
    pub fn eval_at(&self, f: &ParamMor<B>, theta: &ParamPoint) -> Result<B::Morphism, ParamError> {
        self.space.check(theta)?;
        self.same_space(f)?;
        f.evaluate(&self.backend, theta)
    }

    /// The constant family agreeing with `f` at `theta`.
    pub fn const_at(&self, f: &ParamMor<B>, theta: &ParamPoint) -> Result<ParamMor<B>, ParamError> {
        Ok(self.include(self.eval_at(f, theta)?))
    }

    /// Includes a pair of mutually inverse base morphisms, checking both
    /// composites against the identity within `tol`.
    pub fn invert_included(
        &self,
        m: B::Morphism,
        m_inv: B::Morphism,
        tol: f64,
    ) -> Result<(ParamMor<B>, ParamMor<B>), ParamError> {
        let b = &self.backend;
        let left = b.compose(&m_inv, &m)?;
        let right = b.compose(&m, &m_inv)?;
        let dev_left = b.deviation(&left, &b.identity(&b.dom(&m))).unwrap_or(f64::INFINITY);
        let dev_right = b.deviation(&right, &b.identity(&b.cod(&m))).unwrap_or(f64::INFINITY);
        let deviation = dev_left.max(dev_right);
        if deviation.is_nan() || deviation > tol {
            return Err(ParamError::NotInverse { deviation });
        }
        Ok((self.include(m), self.include(m_inv)))
    }

    /// Sampling-based equivalence using the backend's deviation.
    pub fn check_equiv(
        &self,
        f: &ParamMor<B>,
        g: &ParamMor<B>,
        config: &EquivConfig,
    ) -> Result<EquivVerdict, ParamError> {
        let backend = self.backend.clone();
        self.check_equiv_with(f, g, config, move |a, b| backend.deviation(a, b))
    }

    /// Sampling-based equivalence with a custom distance, e.g. one that
    /// ignores global phase.
    pub fn check_equiv_with<D>(
        &self,
        f: &ParamMor<B>,
        g: &ParamMor<B>,
        config: &EquivConfig,
        distance: D,
    ) -> Result<EquivVerdict, ParamError>
    where
        D: Fn(&B::Morphism, &B::Morphism) -> Option<f64>,
    {
        equiv::run(self, f, g, config, distance)
    }
}
