use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{commutation_matrix, mat_compose, mat_tensor, max_deviation, structural, CMatrix, Dim, Structural};
use crate::param::{Backend, BackendError, LawSampler, Param, ParamMor};

/// Deliberate defects for checking that the law suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorMutation {
    /// The Kronecker product indexes its rows as `f ⊗ g` but its columns as
    /// `g ⊗ f`. Swapping both sides consistently would still be a bifunctor
    /// and pass every interchange check, so only the input side is swapped.
    SwapArguments,
}

/// Finite-dimensional complex matrices under product and Kronecker product.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatrixBackend {
    mutation: Option<TensorMutation>,
}

impl MatrixBackend {
    pub fn new() -> Self {
        MatrixBackend::default()
    }

    #[doc(hidden)]
    pub fn with_mutation(mutation: TensorMutation) -> Self {
        MatrixBackend {
            mutation: Some(mutation),
        }
    }
}

fn swapped_input_tensor(f: &CMatrix, g: &CMatrix) -> CMatrix {
    let (fr, fc, gr, gc) = (f.rows(), f.cols(), g.rows(), g.cols());
    let mut out = CMatrix::from_fn(fr * gr, fc * gc, |_, _| Complex64::new(0.0, 0.0));
    for i in 0..fr {
        for k in 0..gr {
            for j in 0..fc {
                for l in 0..gc {
                    out.data[(i * gr + k) * (fc * gc) + (l * fc + j)] = f.get(i, j) * g.get(k, l);
                }
            }
        }
    }
    out
}

impl Backend for MatrixBackend {
    type Object = Dim;
    type Morphism = CMatrix;

    fn dom(&self, m: &CMatrix) -> Dim {
        m.dom()
    }

    fn cod(&self, m: &CMatrix) -> Dim {
        m.cod()
    }

    fn identity(&self, x: &Dim) -> CMatrix {
        CMatrix::identity(*x)
    }

    fn compose(&self, g: &CMatrix, f: &CMatrix) -> Result<CMatrix, BackendError> {
        mat_compose(g, f).map_err(|e| BackendError(e.to_string()))
    }

    fn unit(&self) -> Dim {
        Dim::unit()
    }

    fn tensor_objects(&self, x: &Dim, y: &Dim) -> Dim {
        x.tensor(*y)
    }

    fn tensor(&self, f: &CMatrix, g: &CMatrix) -> CMatrix {
        match self.mutation {
            None => mat_tensor(f, g),
            Some(TensorMutation::SwapArguments) => swapped_input_tensor(f, g),
        }
    }

    fn associator(&self, x: &Dim, y: &Dim, z: &Dim) -> CMatrix {
        structural(Structural::Associator(*x, *y, *z))
    }

    fn associator_inverse(&self, x: &Dim, y: &Dim, z: &Dim) -> CMatrix {
        structural(Structural::Associator(*x, *y, *z))
    }

    fn left_unitor(&self, x: &Dim) -> CMatrix {
        structural(Structural::LeftUnitor(*x))
    }

    fn left_unitor_inverse(&self, x: &Dim) -> CMatrix {
        structural(Structural::LeftUnitor(*x))
    }

    fn right_unitor(&self, x: &Dim) -> CMatrix {
        structural(Structural::RightUnitor(*x))
    }

    fn right_unitor_inverse(&self, x: &Dim) -> CMatrix {
        structural(Structural::RightUnitor(*x))
    }

    fn braiding(&self, x: &Dim, y: &Dim) -> CMatrix {
        commutation_matrix(*x, *y)
    }

    fn deviation(&self, a: &CMatrix, b: &CMatrix) -> Option<f64> {
        max_deviation(a, b)
    }
}

fn random_dim(rng: &mut ChaCha8Rng, max: usize) -> Dim {
    Dim::new(rng.gen_range(1..=max.max(1))).expect("positive")
}

/// Dense random matrices with entries in the unit square of the complex
/// plane, and families `θ ↦ cos(s)·A + sin(s)·B` with `s` an integer
/// combination of the coordinates plus a random phase.
#[derive(Debug, Clone, Copy)]
pub struct DenseSampler {
    pub max_dim: usize,
    pub coherence_max_dim: usize,
}

impl DenseSampler {
    pub fn new(max_dim: usize) -> Self {
        assert!(max_dim >= 1, "max_dim must be positive");
        DenseSampler {
            max_dim,
            coherence_max_dim: max_dim.min(3),
        }
    }

    fn dense(dom: Dim, cod: Dim, rng: &mut ChaCha8Rng) -> CMatrix {
        CMatrix::from_fn(cod.get(), dom.get(), |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    /// Random unitary by Gram-Schmidt on a dense matrix.
    fn unitary(n: Dim, rng: &mut ChaCha8Rng) -> CMatrix {
        let n = n.get();
        loop {
            let raw = Self::dense(Dim(n), Dim(n), rng);
            let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
            let mut degenerate = false;
            for c in 0..n {
                let mut v: Vec<Complex64> = (0..n).map(|r| raw.get(r, c)).collect();
                for q in &cols {
                    let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= proj * qi;
                    }
                }
                let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm < 1e-6 {
                    degenerate = true;
                    break;
                }
                v.iter_mut().for_each(|z| *z /= norm);
                cols.push(v);
            }
            if !degenerate {
                return CMatrix::from_fn(n, n, |r, c| cols[c][r]);
            }
        }
    }
}

impl LawSampler<MatrixBackend> for DenseSampler {
    fn object(&self, rng: &mut ChaCha8Rng) -> Dim {
        random_dim(rng, self.max_dim)
    }

    fn coherence_object(&self, rng: &mut ChaCha8Rng) -> Dim {
        random_dim(rng, self.coherence_max_dim)
    }

    fn morphism(&self, _: &MatrixBackend, dom: &Dim, cod: &Dim, rng: &mut ChaCha8Rng) -> CMatrix {
        Self::dense(*dom, *cod, rng)
    }

    fn family(
        &self,
        param: &Param<MatrixBackend>,
        dom: &Dim,
        cod: &Dim,
        rng: &mut ChaCha8Rng,
    ) -> ParamMor<MatrixBackend> {
        let a = Self::dense(*dom, *cod, rng);
        let b = Self::dense(*dom, *cod, rng);
        let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let weights: Vec<f64> = (0..param.space().arity())
            .map(|_| rng.gen_range(-2..=2) as f64)
            .collect();
        param.make_param(*dom, *cod, move |theta| {
            let s = phase + weights.iter().zip(theta.coords()).map(|(w, t)| w * t).sum::<f64>();
            a.scale(Complex64::new(s.cos(), 0.0))
                .add(&b.scale(Complex64::new(s.sin(), 0.0)))
        })
    }

    fn invertible(&self, _: &MatrixBackend, x: &Dim, rng: &mut ChaCha8Rng) -> (CMatrix, CMatrix) {
        let u = Self::unitary(*x, rng);
        let inv = u.adjoint();
        (u, inv)
    }
}

/// Matrices of functions between basis sets (one 1 per column), which keep
/// every product and Kronecker product exact. Invertible samples are
/// permutations; families switch between a few such matrices according to
/// the integer parts of the coordinates.
#[derive(Debug, Clone, Copy)]
pub struct PermutationSampler {
    pub max_dim: usize,
}

impl PermutationSampler {
    pub fn new(max_dim: usize) -> Self {
        assert!(max_dim >= 1, "max_dim must be positive");
        PermutationSampler { max_dim }
    }

    fn function_matrix(dom: Dim, cod: Dim, rng: &mut ChaCha8Rng) -> CMatrix {
        let targets: Vec<usize> = (0..dom.get()).map(|_| rng.gen_range(0..cod.get())).collect();
        CMatrix::from_fn(cod.get(), dom.get(), |r, c| {
            Complex64::new(if targets[c] == r { 1.0 } else { 0.0 }, 0.0)
        })
    }

    fn permutation(n: Dim, rng: &mut ChaCha8Rng) -> CMatrix {
        let mut perm: Vec<usize> = (0..n.get()).collect();
        perm.shuffle(rng);
        CMatrix::from_fn(n.get(), n.get(), |r, c| {
            Complex64::new(if perm[c] == r { 1.0 } else { 0.0 }, 0.0)
        })
    }
}

impl LawSampler<MatrixBackend> for PermutationSampler {
    fn object(&self, rng: &mut ChaCha8Rng) -> Dim {
        random_dim(rng, self.max_dim)
    }

    fn coherence_object(&self, rng: &mut ChaCha8Rng) -> Dim {
        random_dim(rng, self.max_dim.min(3))
    }

    fn morphism(&self, _: &MatrixBackend, dom: &Dim, cod: &Dim, rng: &mut ChaCha8Rng) -> CMatrix {
        Self::function_matrix(*dom, *cod, rng)
    }

    fn family(
        &self,
        param: &Param<MatrixBackend>,
        dom: &Dim,
        cod: &Dim,
        rng: &mut ChaCha8Rng,
    ) -> ParamMor<MatrixBackend> {
        let options: Vec<CMatrix> = (0..3).map(|_| Self::function_matrix(*dom, *cod, rng)).collect();
        param.make_param(*dom, *cod, move |theta| {
            let k = theta
                .coords()
                .iter()
                .map(|t| t.floor().rem_euclid(3.0) as usize)
                .sum::<usize>();
            options[k % options.len()].clone()
        })
    }

    fn invertible(&self, _: &MatrixBackend, x: &Dim, rng: &mut ChaCha8Rng) -> (CMatrix, CMatrix) {
        let p = Self::permutation(*x, rng);
        let inv = p.adjoint();
        (p, inv)
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;
    use crate::matrix::approx_eq;

    fn d(n: usize) -> Dim {
        Dim::new(n).unwrap()
    }

    #[test]
    fn commutation_conjugation_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let (n, m) = (random_dim(&mut rng, 3), random_dim(&mut rng, 3));
            let a = DenseSampler::dense(n, n, &mut rng);
            let b = DenseSampler::dense(m, m, &mut rng);
            let k = commutation_matrix(n, m);
            let lhs = mat_compose(&mat_compose(&k, &mat_tensor(&a, &b)).unwrap(), &k.adjoint()).unwrap();
            // 0/1 permutations: conjugation only moves entries, so equality is exact
            assert_eq!(lhs, mat_tensor(&b, &a));
            let back = mat_compose(&commutation_matrix(m, n), &k).unwrap();
            assert_eq!(back, CMatrix::identity(n.tensor(m)));
        }
    }

    #[test]
    fn kronecker_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let dims: Vec<Dim> = (0..6).map(|_| random_dim(&mut rng, 3)).collect();
            let a = DenseSampler::dense(dims[1], dims[0], &mut rng);
            let c = DenseSampler::dense(dims[2], dims[1], &mut rng);
            let b = DenseSampler::dense(dims[4], dims[3], &mut rng);
            let dm = DenseSampler::dense(dims[5], dims[4], &mut rng);
            let lhs = mat_compose(&mat_tensor(&a, &b), &mat_tensor(&c, &dm)).unwrap();
            let rhs = mat_tensor(&mat_compose(&a, &c).unwrap(), &mat_compose(&b, &dm).unwrap());
            assert!(approx_eq(&lhs, &rhs, 1e-12).is_within());
        }
    }

    #[test]
    fn sampled_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            let u = DenseSampler::unitary(d(n), &mut rng);
            let p = mat_compose(&u.adjoint(), &u).unwrap();
            assert!(approx_eq(&p, &CMatrix::identity(d(n)), 1e-12).is_within());
        }
    }

    #[test]
    fn swapped_tensor_differs_from_kronecker() {
        let a = CMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 5.0]]);
        let bad = MatrixBackend::with_mutation(TensorMutation::SwapArguments);
        let good = MatrixBackend::new();
        assert_ne!(bad.tensor(&a, &b), good.tensor(&a, &b));
        // identical on scalars, so the corruption only shows up on real products
        let one = CMatrix::identity(d(1));
        assert_eq!(bad.tensor(&one, &a), good.tensor(&one, &a));
    }

    #[test]
    fn function_matrices_have_one_entry_per_column() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = PermutationSampler::function_matrix(d(4), d(3), &mut rng);
        for c in 0..4 {
            let ones = (0..3).filter(|&r| m.get(r, c) == Complex64::new(1.0, 0.0)).count();
            assert_eq!(ones, 1);
        }
        assert!(PermutationSampler::permutation(d(4), &mut rng).is_permutation());
    }
}
