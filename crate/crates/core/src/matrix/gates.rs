//! Gate families and the affine angle expressions that drive them.
//!
//! Rotation conventions are `R_X(a) = cos(a)·I + i·sin(a)·X`, likewise for
//! `R_Y`, and `R_Z(a) = diag(e^{ia}, e^{-ia})`. These are not the textbook
//! half-angle forms; with them `R_X(π/2) = iX`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use super::{commutation_matrix, CMatrix, Dim, MatrixBackend};
use crate::param::{Param, ParamMor, ParamPoint};

/// `constant + Σ coeff·θ[index]`, with indices strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineExpr {
    constant: f64,
    terms: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AffineError {
    #[error("angle uses parameter t{index} but the space has {arity} parameter(s)")]
    OutOfRange { index: usize, arity: usize },
    #[error("angle coefficients must be finite")]
    NonFinite,
}

impl AffineExpr {
    /// Builds an expression, merging repeated indices.
    pub fn new(constant: f64, terms: impl IntoIterator<Item = (usize, f64)>) -> Result<Self, AffineError> {
        if !constant.is_finite() {
            return Err(AffineError::NonFinite);
        }
        let mut merged: Vec<(usize, f64)> = Vec::new();
        let mut sorted: Vec<(usize, f64)> = terms.into_iter().collect();
        sorted.sort_by_key(|&(i, _)| i);
        for (index, coeff) in sorted {
            if !coeff.is_finite() {
                return Err(AffineError::NonFinite);
            }
            match merged.last_mut() {
                Some((last, c)) if *last == index => *c += coeff,
                _ => merged.push((index, coeff)),
            }
        }
        Ok(AffineExpr {
            constant,
            terms: merged,
        })
    }

    pub fn constant(c: f64) -> Self {
        AffineExpr::new(c, []).expect("finite constant")
    }

    /// `θ[index]`
    pub fn param(index: usize) -> Self {
        AffineExpr {
            constant: 0.0,
            terms: vec![(index, 1.0)],
        }
    }

    pub fn constant_term(&self) -> f64 {
        self.constant
    }

    pub fn terms(&self) -> &[(usize, f64)] {
        &self.terms
    }

    /// One past the largest parameter index used, i.e. the minimum arity.
    pub fn min_arity(&self) -> usize {
        self.terms.last().map_or(0, |&(i, _)| i + 1)
    }

    pub fn check_arity(&self, arity: usize) -> Result<(), AffineError> {
        match self.terms.iter().find(|&&(i, _)| i >= arity) {
            Some(&(index, _)) => Err(AffineError::OutOfRange { index, arity }),
            None => Ok(()),
        }
    }

    fn eval_unchecked(&self, coords: &[f64]) -> f64 {
        self.constant + self.terms.iter().map(|&(i, c)| c * coords[i]).sum::<f64>()
    }
}

/// Prints in the circuit language's expression syntax, e.g. `1.5 - 0.5*t0 + 2*t1`.
impl fmt::Display for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead_positive = self.terms.first().is_some_and(|&(_, c)| c >= 0.0);
        let mut wrote = false;
        if self.constant != 0.0 || !lead_positive {
            if self.constant < 0.0 {
                write!(f, "0 - {}", -self.constant)?;
            } else {
                write!(f, "{}", self.constant)?;
            }
            wrote = true;
        }
        for &(index, coeff) in &self.terms {
            let magnitude = coeff.abs();
            if wrote {
                write!(f, " {} ", if coeff.is_sign_negative() { '-' } else { '+' })?;
            }
            if magnitude == 1.0 {
                write!(f, "t{index}")?;
            } else {
                write!(f, "{magnitude}*t{index}")?;
            }
            wrote = true;
        }
        Ok(())
    }
}

pub fn affine_eval(e: &AffineExpr, theta: &ParamPoint) -> Result<f64, AffineError> {
    e.check_arity(theta.arity())?;
    Ok(e.eval_unchecked(theta.coords()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateName {
    Rx,
    Ry,
    Rz,
    H,
    X,
    Y,
    Z,
    Cnot,
    Swap2,
}

impl GateName {
    pub const ALL: [GateName; 9] = [
        GateName::Rx,
        GateName::Ry,
        GateName::Rz,
        GateName::H,
        GateName::X,
        GateName::Y,
        GateName::Z,
        GateName::Cnot,
        GateName::Swap2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GateName::Rx => "rx",
            GateName::Ry => "ry",
            GateName::Rz => "rz",
            GateName::H => "h",
            GateName::X => "x",
            GateName::Y => "y",
            GateName::Z => "z",
            GateName::Cnot => "cnot",
            GateName::Swap2 => "swap2",
        }
    }

    pub fn is_parameterized(self) -> bool {
        matches!(self, GateName::Rx | GateName::Ry | GateName::Rz)
    }

    /// Dimension acted on.
    pub fn dim(self) -> Dim {
        match self {
            GateName::Cnot | GateName::Swap2 => Dim(4),
            _ => Dim(2),
        }
    }
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GateName {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateName::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| GateError::Unknown(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error("unknown gate `{0}`")]
    Unknown(String),
    #[error("gate `{0}` needs an angle")]
    MissingAngle(GateName),
    #[error("gate `{0}` takes no angle")]
    UnexpectedAngle(GateName),
    #[error(transparent)]
    Angle(#[from] AffineError),
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rx_matrix(a: f64) -> CMatrix {
    let (s, co) = a.sin_cos();
    CMatrix::from_rows(&[&[(co, 0.0), (0.0, s)], &[(0.0, s), (co, 0.0)]])
}

pub fn ry_matrix(a: f64) -> CMatrix {
    // i·Y = [[0, 1], [-1, 0]]
    let (s, co) = a.sin_cos();
    CMatrix::from_rows(&[&[(co, 0.0), (s, 0.0)], &[(-s, 0.0), (co, 0.0)]])
}

pub fn rz_matrix(a: f64) -> CMatrix {
    let (s, co) = a.sin_cos();
    CMatrix::from_rows(&[&[(co, s), (0.0, 0.0)], &[(0.0, 0.0), (co, -s)]])
}

/// The constant matrix of a parameter-free gate.
pub fn constant_matrix(name: GateName) -> Option<CMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let m = match name {
        GateName::Rx | GateName::Ry | GateName::Rz => return None,
        GateName::H => CMatrix::from_real_rows(&[&[h, h], &[h, -h]]),
        GateName::X => CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]),
        GateName::Y => CMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).expect("2x2"),
        GateName::Z => CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]),
        GateName::Cnot => CMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]),
        GateName::Swap2 => commutation_matrix(Dim(2), Dim(2)),
    };
    Some(m)
}

/// The gate as a family over `param`'s space. Constant gates are included
/// as constant families.
pub fn gate(
    param: &Param<MatrixBackend>,
    name: GateName,
    angle: Option<AffineExpr>,
) -> Result<ParamMor<MatrixBackend>, GateError> {
    if !name.is_parameterized() {
        if angle.is_some() {
            return Err(GateError::UnexpectedAngle(name));
        }
        return Ok(param.include(constant_matrix(name).expect("constant gate")));
    }
    let angle = angle.ok_or(GateError::MissingAngle(name))?;
    angle.check_arity(param.space().arity())?;
    let build: fn(f64) -> CMatrix = match name {
        GateName::Rx => rx_matrix,
        GateName::Ry => ry_matrix,
        _ => rz_matrix,
    };
    Ok(param.make_param(Dim(2), Dim(2), move |theta| build(angle.eval_unchecked(theta.coords()))))
}
