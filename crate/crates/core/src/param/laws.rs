//! Executable coherence and functoriality laws for `Param(P, C)`.
//!
//! Each law draws random objects, families and a parameter point from a
//! [`LawSampler`], evaluates both sides of an equation and records the worst
//! deviation. Laws whose two sides are computed by literally the same backend
//! calls (evaluation, inclusion, constants, the zero-arity reduction) are
//! checked with tolerance zero; the rest use the configured tolerance.
//!
//! Every law gets its own ChaCha stream derived from the seed, so reports are
//! reproducible even though laws run in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Backend, Param, ParamError, ParamMor, ParamPoint, ParamSpace};

/// Source of random test data for one backend.
pub trait LawSampler<B: Backend>: Sync {
    /// An object for naturality and functoriality laws.
    fn object(&self, rng: &mut ChaCha8Rng) -> B::Object;
    /// An object for the coherence diagrams, which tensor four objects
    /// together and so usually want a smaller range.
    fn coherence_object(&self, rng: &mut ChaCha8Rng) -> B::Object;
    fn morphism(&self, backend: &B, dom: &B::Object, cod: &B::Object, rng: &mut ChaCha8Rng) -> B::Morphism;
    /// A genuinely parameter-dependent family over `param`'s space.
    fn family(&self, param: &Param<B>, dom: &B::Object, cod: &B::Object, rng: &mut ChaCha8Rng) -> ParamMor<B>;
    /// A morphism `x -> x` together with its inverse.
    fn invertible(&self, backend: &B, x: &B::Object, rng: &mut ChaCha8Rng) -> (B::Morphism, B::Morphism);
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LawConfig {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            trials: 25,
            seed: 0,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawCounterexample {
    pub trial: usize,
    pub point: ParamPoint,
    pub deviation: f64,
    /// Which comparison inside the law failed.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawEntry {
    pub name: String,
    pub trials: usize,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub passed: bool,
    pub counterexample: Option<LawCounterexample>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
    pub entries: Vec<LawEntry>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn entry(&self, name: &str) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn max_deviation(&self) -> f64 {
        self.entries.iter().map(|e| e.max_deviation).fold(0.0, f64::max)
    }
}

struct Trial<'a, B: Backend, S> {
    param: &'a Param<B>,
    sampler: &'a S,
    rng: ChaCha8Rng,
    theta: ParamPoint,
    worst: f64,
    worst_label: String,
}

type LawResult = Result<(), ParamError>;
type LawFn<B, S> = fn(&mut Trial<'_, B, S>) -> LawResult;

#[derive(Clone, Copy)]
enum Tolerance {
    Configured,
    Exact,
}

impl<'a, B: Backend, S: LawSampler<B>> Trial<'a, B, S> {
    fn b(&self) -> &'a B {
        self.param.backend()
    }

    fn object(&mut self) -> B::Object {
        self.sampler.object(&mut self.rng)
    }

    fn coherence_object(&mut self) -> B::Object {
        self.sampler.coherence_object(&mut self.rng)
    }

    fn family(&mut self, dom: &B::Object, cod: &B::Object) -> ParamMor<B> {
        self.sampler.family(self.param, dom, cod, &mut self.rng)
    }

    fn morphism(&mut self, dom: &B::Object, cod: &B::Object) -> B::Morphism {
        self.sampler.morphism(self.b(), dom, cod, &mut self.rng)
    }

    fn record(&mut self, label: &str, deviation: Option<f64>) {
        let d = deviation.unwrap_or(f64::INFINITY);
        let d = if d.is_nan() { f64::INFINITY } else { d };
        if d > self.worst || self.worst_label.is_empty() {
            self.worst = self.worst.max(d);
            self.worst_label = label.to_string();
        }
    }

    /// Compares two base morphisms.
    fn same(&mut self, label: &str, a: &B::Morphism, b: &B::Morphism) {
        let d = self.b().deviation(a, b);
        self.record(label, d);
    }

    /// Compares two families at the trial point.
    fn same_at(&mut self, label: &str, lhs: &ParamMor<B>, rhs: &ParamMor<B>) -> LawResult {
        let a = self.param.eval_at(lhs, &self.theta)?;
        let b = self.param.eval_at(rhs, &self.theta)?;
        self.same(label, &a, &b);
        Ok(())
    }

    fn ev(&self, f: &ParamMor<B>) -> Result<B::Morphism, ParamError> {
        self.param.eval_at(f, &self.theta)
    }
}

fn compose_associativity<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (w, x, y, z) = (t.object(), t.object(), t.object(), t.object());
    let f = t.family(&w, &x);
    let g = t.family(&x, &y);
    let h = t.family(&y, &z);
    let p = t.param;
    let lhs = p.compose(&h, &p.compose(&g, &f)?)?;
    let rhs = p.compose(&p.compose(&h, &g)?, &f)?;
    t.same_at("h*(g*f) = (h*g)*f", &lhs, &rhs)
}

fn compose_unitality<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y) = (t.object(), t.object());
    let f = t.family(&x, &y);
    let p = t.param;
    t.same_at("i_Y * f = f", &p.compose(&p.identity(&y), &f)?, &f)?;
    t.same_at("f * i_X = f", &p.compose(&f, &p.identity(&x))?, &f)
}

fn tensor_identities<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y) = (t.object(), t.object());
    let p = t.param;
    let lhs = p.tensor(&p.identity(&x), &p.identity(&y))?;
    let rhs = p.identity(&t.b().tensor_objects(&x, &y));
    t.same_at("i_X [x] i_Y = i_(X(x)Y)", &lhs, &rhs)
}

fn tensor_interchange<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (a, b, c) = (t.object(), t.object(), t.object());
    let (a2, b2, c2) = (t.object(), t.object(), t.object());
    let f = t.family(&a, &b);
    let g = t.family(&b, &c);
    let f2 = t.family(&a2, &b2);
    let g2 = t.family(&b2, &c2);
    let p = t.param;
    let lhs = p.compose(&p.tensor(&g, &g2)?, &p.tensor(&f, &f2)?)?;
    let rhs = p.tensor(&p.compose(&g, &f)?, &p.compose(&g2, &f2)?)?;
    t.same_at("(g[x]g')*(f[x]f') = (g*f)[x](g'*f')", &lhs, &rhs)
}

fn associator_naturality<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y, z) = (t.object(), t.object(), t.object());
    let (x2, y2, z2) = (t.object(), t.object(), t.object());
    let f = t.family(&x, &x2);
    let g = t.family(&y, &y2);
    let h = t.family(&z, &z2);
    let p = t.param;
    let lhs = p.compose(&p.associator(&x2, &y2, &z2), &p.tensor(&p.tensor(&f, &g)?, &h)?)?;
    let rhs = p.compose(&p.tensor(&f, &p.tensor(&g, &h)?)?, &p.associator(&x, &y, &z))?;
    t.same_at("a * ((f[x]g)[x]h) = (f[x](g[x]h)) * a", &lhs, &rhs)
}

fn left_unitor_naturality<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y) = (t.object(), t.object());
    let f = t.family(&x, &y);
    let p = t.param;
    let unit = t.b().unit();
    let lhs = p.compose(&p.left_unitor(&y), &p.tensor(&p.identity(&unit), &f)?)?;
    let rhs = p.compose(&f, &p.left_unitor(&x))?;
    t.same_at("l * (i_I[x]f) = f * l", &lhs, &rhs)
}

fn right_unitor_naturality<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y) = (t.object(), t.object());
    let f = t.family(&x, &y);
    let p = t.param;
    let unit = t.b().unit();
    let lhs = p.compose(&p.right_unitor(&y), &p.tensor(&f, &p.identity(&unit))?)?;
    let rhs = p.compose(&f, &p.right_unitor(&x))?;
    t.same_at("r * (f[x]i_I) = f * r", &lhs, &rhs)
}

fn braiding_naturality<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y, x2, y2) = (t.object(), t.object(), t.object(), t.object());
    let f = t.family(&x, &x2);
    let g = t.family(&y, &y2);
    let p = t.param;
    let lhs = p.compose(&p.braiding(&x2, &y2), &p.tensor(&f, &g)?)?;
    let rhs = p.compose(&p.tensor(&g, &f)?, &p.braiding(&x, &y))?;
    t.same_at("b * (f[x]g) = (g[x]f) * b", &lhs, &rhs)
}

fn structural_invertible<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y, z) = (t.object(), t.object(), t.object());
    let p = t.param;
    let b = t.b();
    let unit = b.unit();
    let xyz_l = b.tensor_objects(&b.tensor_objects(&x, &y), &z);
    let xyz_r = b.tensor_objects(&x, &b.tensor_objects(&y, &z));
    let a = p.associator(&x, &y, &z);
    let a_inv = p.associator_inverse(&x, &y, &z);
    t.same_at("a^-1 * a = i", &p.compose(&a_inv, &a)?, &p.identity(&xyz_l))?;
    t.same_at("a * a^-1 = i", &p.compose(&a, &a_inv)?, &p.identity(&xyz_r))?;
    let (l, l_inv) = (p.left_unitor(&x), p.left_unitor_inverse(&x));
    t.same_at(
        "l^-1 * l = i",
        &p.compose(&l_inv, &l)?,
        &p.identity(&b.tensor_objects(&unit, &x)),
    )?;
    t.same_at("l * l^-1 = i", &p.compose(&l, &l_inv)?, &p.identity(&x))?;
    let (r, r_inv) = (p.right_unitor(&x), p.right_unitor_inverse(&x));
    t.same_at(
        "r^-1 * r = i",
        &p.compose(&r_inv, &r)?,
        &p.identity(&b.tensor_objects(&x, &unit)),
    )?;
    t.same_at("r * r^-1 = i", &p.compose(&r, &r_inv)?, &p.identity(&x))
}

fn pentagon<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (w, x, y, z) = (
        t.coherence_object(),
        t.coherence_object(),
        t.coherence_object(),
        t.coherence_object(),
    );
    let p = t.param;
    let b = t.b();
    let wx = b.tensor_objects(&w, &x);
    let yz = b.tensor_objects(&y, &z);
    let xy = b.tensor_objects(&x, &y);
    let lhs = p.compose(&p.associator(&w, &x, &yz), &p.associator(&wx, &y, &z))?;
    let rhs = p.compose_chain(&[
        p.tensor(&p.associator(&w, &x, &y), &p.identity(&z))?,
        p.associator(&w, &xy, &z),
        p.tensor(&p.identity(&w), &p.associator(&x, &y, &z))?,
    ])?;
    t.same_at("pentagon", &lhs, &rhs)
}

fn triangle<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y) = (t.coherence_object(), t.coherence_object());
    let p = t.param;
    let unit = t.b().unit();
    let lhs = p.compose(
        &p.tensor(&p.identity(&x), &p.left_unitor(&y))?,
        &p.associator(&x, &unit, &y),
    )?;
    let rhs = p.tensor(&p.right_unitor(&x), &p.identity(&y))?;
    t.same_at("triangle", &lhs, &rhs)
}

fn hexagon_forward<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y, z) = (t.object(), t.object(), t.object());
    let p = t.param;
    let b = t.b();
    let yz = b.tensor_objects(&y, &z);
    let lhs = p.compose_chain(&[p.associator(&x, &y, &z), p.braiding(&x, &yz), p.associator(&y, &z, &x)])?;
    let rhs = p.compose_chain(&[
        p.tensor(&p.braiding(&x, &y), &p.identity(&z))?,
        p.associator(&y, &x, &z),
        p.tensor(&p.identity(&y), &p.braiding(&x, &z))?,
    ])?;
    t.same_at("hexagon (forward)", &lhs, &rhs)
}

fn hexagon_backward<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y, z) = (t.object(), t.object(), t.object());
    let p = t.param;
    let b = t.b();
    let xy = b.tensor_objects(&x, &y);
    let lhs = p.compose_chain(&[
        p.associator_inverse(&x, &y, &z),
        p.braiding(&xy, &z),
        p.associator_inverse(&z, &x, &y),
    ])?;
    let rhs = p.compose_chain(&[
        p.tensor(&p.identity(&x), &p.braiding(&y, &z))?,
        p.associator_inverse(&x, &z, &y),
        p.tensor(&p.braiding(&x, &z), &p.identity(&y))?,
    ])?;
    t.same_at("hexagon (backward)", &lhs, &rhs)
}

fn braiding_symmetric<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y) = (t.object(), t.object());
    let p = t.param;
    let lhs = p.compose(&p.braiding(&y, &x), &p.braiding(&x, &y))?;
    let rhs = p.identity(&t.b().tensor_objects(&x, &y));
    t.same_at("b_(Y,X) * b_(X,Y) = i", &lhs, &rhs)
}

fn eval_functor<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y, z) = (t.object(), t.object(), t.object());
    let f = t.family(&x, &y);
    let g = t.family(&y, &z);
    let p = t.param;
    let lhs = t.ev(&p.compose(&g, &f)?)?;
    let rhs = t.b().compose(&t.ev(&g)?, &t.ev(&f)?)?;
    t.same("ev(g*f) = ev(g) o ev(f)", &lhs, &rhs);
    let id = t.ev(&p.identity(&x))?;
    t.same("ev(i_X) = 1_X", &id, &t.b().identity(&x));
    Ok(())
}

fn eval_strict_monoidal<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y, x2, y2) = (t.object(), t.object(), t.object(), t.object());
    let f = t.family(&x, &x2);
    let g = t.family(&y, &y2);
    let p = t.param;
    let b = t.b();
    let lhs = t.ev(&p.tensor(&f, &g)?)?;
    let rhs = b.tensor(&t.ev(&f)?, &t.ev(&g)?);
    t.same("ev(f[x]g) = ev(f) (x) ev(g)", &lhs, &rhs);
    let a = t.ev(&p.associator(&x, &y, &x2))?;
    t.same("ev(a) = alpha", &a, &b.associator(&x, &y, &x2));
    let l = t.ev(&p.left_unitor(&x))?;
    t.same("ev(l) = lambda", &l, &b.left_unitor(&x));
    let r = t.ev(&p.right_unitor(&x))?;
    t.same("ev(r) = rho", &r, &b.right_unitor(&x));
    Ok(())
}

fn eval_braided<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y) = (t.object(), t.object());
    let got = t.ev(&t.param.braiding(&x, &y))?;
    t.same("ev(b) = beta", &got, &t.b().braiding(&x, &y));
    Ok(())
}

fn include_functor<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y, z) = (t.object(), t.object(), t.object());
    let f = t.morphism(&x, &y);
    let g = t.morphism(&y, &z);
    let p = t.param;
    let gf = t.b().compose(&g, &f)?;
    t.same_at(
        "j(g o f) = j(g) * j(f)",
        &p.include(gf),
        &p.compose(&p.include(g), &p.include(f))?,
    )?;
    t.same_at("j(1_X) = i_X", &p.include(t.b().identity(&x)), &p.identity(&x))
}

fn include_strict_braided_monoidal<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y, x2, y2) = (t.object(), t.object(), t.object(), t.object());
    let f = t.morphism(&x, &x2);
    let g = t.morphism(&y, &y2);
    let p = t.param;
    let b = t.b();
    let fg = b.tensor(&f, &g);
    t.same_at(
        "j(f (x) g) = j(f) [x] j(g)",
        &p.include(fg),
        &p.tensor(&p.include(f), &p.include(g))?,
    )?;
    t.same_at(
        "j(alpha) = a",
        &p.include(b.associator(&x, &y, &x2)),
        &p.associator(&x, &y, &x2),
    )?;
    t.same_at("j(lambda) = l", &p.include(b.left_unitor(&x)), &p.left_unitor(&x))?;
    t.same_at("j(rho) = r", &p.include(b.right_unitor(&x)), &p.right_unitor(&x))?;
    t.same_at("j(beta) = b", &p.include(b.braiding(&x, &y)), &p.braiding(&x, &y))
}

fn retraction<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y) = (t.object(), t.object());
    let m = t.morphism(&x, &y);
    let back = t.ev(&t.param.include(m.clone()))?;
    t.same("ev(j(m)) = m", &back, &m);
    Ok(())
}

fn include_faithful<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y) = (t.object(), t.object());
    let m1 = t.morphism(&x, &y);
    let m2 = t.morphism(&x, &y);
    let p = t.param;
    let b = t.b();
    // j(m1) and j(m2) are separated at a point exactly as far as m1 and m2 are
    let seen = b.deviation(&t.ev(&p.include(m1.clone()))?, &t.ev(&p.include(m2.clone()))?);
    let base = b.deviation(&m1, &m2);
    let gap = match (seen, base) {
        (Some(s), Some(d)) => Some((s - d).abs()),
        _ => None,
    };
    t.record("dist(ev j(m1), ev j(m2)) = dist(m1, m2)", gap);
    Ok(())
}

fn const_coherence<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let (x, y) = (t.object(), t.object());
    let f = t.family(&x, &y);
    let p = t.param;
    let theta = t.theta.clone();
    let kappa = p.space().sample(&mut t.rng);
    let frozen = p.const_at(&f, &theta)?;
    let at_kappa = p.eval_at(&frozen, &kappa)?;
    let at_theta = p.eval_at(&f, &theta)?;
    t.same("ev_k(const_t f) = ev_t f", &at_kappa, &at_theta);
    let twice = p.const_at(&frozen, &kappa)?;
    let probe = p.space().sample(&mut t.rng);
    let lhs = p.eval_at(&twice, &probe)?;
    let rhs = p.eval_at(&frozen, &probe)?;
    t.same("const_k(const_t f) = const_t f", &lhs, &rhs);
    Ok(())
}

fn include_inverse<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let x = t.object();
    let (m, m_inv) = t.sampler.invertible(t.b(), &x, &mut t.rng);
    let p = t.param;
    let tol = 1e-9;
    let (j, j_inv) = p.invert_included(m, m_inv, tol)?;
    t.same_at("j(m^-1) * j(m) = i", &p.compose(&j_inv, &j)?, &p.identity(&x))?;
    t.same_at("j(m) * j(m^-1) = i", &p.compose(&j, &j_inv)?, &p.identity(&x))
}

fn zero_arity_base<B: Backend, S: LawSampler<B>>(t: &mut Trial<'_, B, S>) -> LawResult {
    let base = Param::new(t.b().clone(), ParamSpace::new(0));
    let point = base.space().origin();
    let (x, y, z, w) = (t.object(), t.object(), t.object(), t.object());
    let f = t.sampler.family(&base, &x, &y, &mut t.rng);
    let g = t.sampler.family(&base, &y, &z, &mut t.rng);
    let h = t.sampler.family(&base, &z, &w, &mut t.rng);
    let (fv, gv, hv) = (
        base.eval_at(&f, &point)?,
        base.eval_at(&g, &point)?,
        base.eval_at(&h, &point)?,
    );
    let b = t.b();
    let composed = base.eval_at(&base.compose(&g, &f)?, &point)?;
    t.same("g*f = g o f", &composed, &b.compose(&gv, &fv)?);
    let tensored = base.eval_at(&base.tensor(&f, &h)?, &point)?;
    t.same("f[x]h = f (x) h", &tensored, &b.tensor(&fv, &hv));
    let id = base.eval_at(&base.identity(&x), &point)?;
    t.same("i_X = 1_X", &id, &b.identity(&x));
    Ok(())
}

fn law_table<B: Backend, S: LawSampler<B>>() -> Vec<(&'static str, Tolerance, LawFn<B, S>)> {
    use Tolerance::{Configured, Exact};
    vec![
        ("compose.associativity", Configured, compose_associativity::<B, S>),
        ("compose.unitality", Configured, compose_unitality::<B, S>),
        ("tensor.identities", Configured, tensor_identities::<B, S>),
        ("tensor.interchange", Configured, tensor_interchange::<B, S>),
        ("associator.naturality", Configured, associator_naturality::<B, S>),
        ("left_unitor.naturality", Configured, left_unitor_naturality::<B, S>),
        ("right_unitor.naturality", Configured, right_unitor_naturality::<B, S>),
        ("braiding.naturality", Configured, braiding_naturality::<B, S>),
        ("structural.invertible", Configured, structural_invertible::<B, S>),
        ("coherence.pentagon", Configured, pentagon::<B, S>),
        ("coherence.triangle", Configured, triangle::<B, S>),
        ("coherence.hexagon_forward", Configured, hexagon_forward::<B, S>),
        ("coherence.hexagon_backward", Configured, hexagon_backward::<B, S>),
        ("braiding.symmetric", Configured, braiding_symmetric::<B, S>),
        ("eval.functor", Exact, eval_functor::<B, S>),
        ("eval.strict_monoidal", Exact, eval_strict_monoidal::<B, S>),
        ("eval.braided", Exact, eval_braided::<B, S>),
        ("include.functor", Exact, include_functor::<B, S>),
        (
            "include.strict_braided_monoidal",
            Exact,
            include_strict_braided_monoidal::<B, S>,
        ),
        ("include.retraction", Exact, retraction::<B, S>),
        ("include.faithful", Exact, include_faithful::<B, S>),
        ("include.inverse", Configured, include_inverse::<B, S>),
        ("const.coherence", Exact, const_coherence::<B, S>),
        ("zero_arity.base_category", Exact, zero_arity_base::<B, S>),
    ]
}

/// Runs every law `config.trials` times.
pub fn check_laws<B, S>(param: &Param<B>, sampler: &S, config: &LawConfig) -> LawReport
where
    B: Backend,
    S: LawSampler<B>,
{
    assert!(config.trials >= 1, "law suite needs at least one trial");
    let table = law_table::<B, S>();
    let entries = table
        .par_iter()
        .enumerate()
        .map(|(index, &(name, tolerance, law))| {
            let tol = match tolerance {
                Tolerance::Configured => config.tol,
                Tolerance::Exact => 0.0,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(index as u64 + 1);
            let mut entry = LawEntry {
                name: name.to_string(),
                trials: config.trials,
                tolerance: tol,
                max_deviation: 0.0,
                passed: true,
                counterexample: None,
            };
            for trial in 0..config.trials {
                let theta = param.space().sample(&mut rng);
                let mut t = Trial {
                    param,
                    sampler,
                    rng,
                    theta,
                    worst: 0.0,
                    worst_label: String::new(),
                };
                if let Err(e) = law(&mut t) {
                    t.worst = f64::INFINITY;
                    t.worst_label = e.to_string();
                }
                rng = t.rng;
                entry.max_deviation = entry.max_deviation.max(t.worst);
                if (t.worst.is_nan() || t.worst > tol) && entry.counterexample.is_none() {
                    entry.passed = false;
                    entry.counterexample = Some(LawCounterexample {
                        trial,
                        point: t.theta,
                        deviation: t.worst,
                        detail: t.worst_label,
                    });
                }
            }
            entry
        })
        .collect();
    LawReport {
        seed: config.seed,
        trials: config.trials,
        tolerance: config.tol,
        entries,
    }
}
