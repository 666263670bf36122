use std::str::FromStr;

use thiserror::Error;

use super::{parse, GateCall, Node, NodeKind, ParseError, Program, SourceSpan};
use crate::matrix::{gate, Dim, GateError, GateName, MatrixBackend};
use crate::param::{Param, ParamError, ParamMor, ParamSpace};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElabError {
    #[error("{span}: unknown gate `{name}`")]
    UnknownGate { name: String, span: SourceSpan },
    #[error("{span}: `{name}`: {source}")]
    Gate {
        name: String,
        span: SourceSpan,
        source: GateError,
    },
    #[error("{span}: `{name}` {message}")]
    Arguments {
        name: String,
        span: SourceSpan,
        message: String,
    },
    #[error(
        "dimension mismatch at `;`: left side at {left_span} has output dimension {left}, \
         right side at {right_span} has input dimension {right}"
    )]
    Dimension {
        left: Dim,
        left_span: SourceSpan,
        right: Dim,
        right_span: SourceSpan,
    },
    #[error("{span}: empty sequence or parallel block")]
    Empty { span: SourceSpan },
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// An elaborated program together with the parameter space it lives over.
#[derive(Debug, Clone)]
pub struct Circuit {
    pub param: Param<MatrixBackend>,
    pub mor: ParamMor<MatrixBackend>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Elab(#[from] ElabError),
}

impl CircuitError {
    pub fn is_dimension(&self) -> bool {
        matches!(self, CircuitError::Elab(ElabError::Dimension { .. }))
    }
}

/// Elaborates over the space `[0, 2π)^params` with the plain matrix backend.
pub fn elaborate(program: &Program) -> Result<Circuit, ElabError> {
    let param = Param::new(MatrixBackend::new(), ParamSpace::new(program.params));
    let mor = elaborate_node(&param, &program.body)?;
    Ok(Circuit { param, mor })
}

/// Parses and elaborates in one step.
pub fn load(text: &str) -> Result<Circuit, CircuitError> {
    Ok(elaborate(&parse(text)?)?)
}

fn dim(name: &str, span: SourceSpan, d: usize) -> Result<Dim, ElabError> {
    Dim::new(d).map_err(|_| ElabError::Arguments {
        name: name.to_string(),
        span,
        message: "dimensions must be positive".into(),
    })
}

fn elaborate_gate(
    param: &Param<MatrixBackend>,
    call: &GateCall,
    span: SourceSpan,
) -> Result<ParamMor<MatrixBackend>, ElabError> {
    let arguments = |message: &str| ElabError::Arguments {
        name: call.name.clone(),
        span,
        message: message.to_string(),
    };
    match call.name.as_str() {
        "id" | "swap" => {
            if call.angle.is_some() {
                return Err(arguments("takes dimensions, not an angle"));
            }
            let dims = call.dims.as_deref().unwrap_or_default();
            match (call.name.as_str(), dims) {
                ("id", &[n]) => Ok(param.identity(&dim(&call.name, span, n)?)),
                ("swap", &[n, m]) => Ok(param.braiding(&dim(&call.name, span, n)?, &dim(&call.name, span, m)?)),
                ("id", _) => Err(arguments("takes one dimension")),
                _ => Err(arguments("takes two dimensions")),
            }
        }
        name => {
            let g = GateName::from_str(name).map_err(|_| ElabError::UnknownGate {
                name: name.to_string(),
                span,
            })?;
            if call.dims.is_some() {
                return Err(arguments("takes no dimensions"));
            }
            gate(param, g, call.angle.clone()).map_err(|source| ElabError::Gate {
                name: name.to_string(),
                span,
                source,
            })
        }
    }
}

/// Elaborates a subtree over a given parameter space.
pub fn elaborate_node(param: &Param<MatrixBackend>, node: &Node) -> Result<ParamMor<MatrixBackend>, ElabError> {
    match &node.kind {
        NodeKind::Gate(call) => elaborate_gate(param, call, node.span),
        NodeKind::Seq(nodes) => {
            let (first, rest) = nodes.split_first().ok_or(ElabError::Empty { span: node.span })?;
            let mut acc = elaborate_node(param, first)?;
            let mut prev_span = first.span;
            for next in rest {
                let g = elaborate_node(param, next)?;
                if acc.cod() != g.dom() {
                    return Err(ElabError::Dimension {
                        left: *acc.cod(),
                        left_span: prev_span,
                        right: *g.dom(),
                        right_span: next.span,
                    });
                }
                acc = param.compose(&g, &acc)?;
                prev_span = next.span;
            }
            Ok(acc)
        }
        NodeKind::Par(nodes) => {
            let (first, rest) = nodes.split_first().ok_or(ElabError::Empty { span: node.span })?;
            let mut acc = elaborate_node(param, first)?;
            for next in rest {
                acc = param.tensor(&acc, &elaborate_node(param, next)?)?;
            }
            Ok(acc)
        }
    }
}
