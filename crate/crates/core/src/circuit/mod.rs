//! A small text language for parameterized circuits.
//!
//! ```text
//! params 2            # arity of the parameter space
//! rx(t0) ; rx(2*t1)   # `a ; b` runs a first, so it denotes b after a
//! ```
//!
//! `;` is sequencing in diagram order, `|` is the tensor product (left
//! operand is the left factor) and parentheses group. Angles are affine in
//! the parameters `t0, t1, ...` with numeric coefficients, which may use
//! `pi`. `id(n)` is the identity on dimension `n` and `swap(n, m)` is the
//! braiding `n ⊗ m -> m ⊗ n`.
//!
//! Sequencing is written left to right, the opposite of matrix products:
//! `rx(t0) ; rz(t0)` evaluates to `Rz·Rx`.

use std::fmt;

use crate::matrix::AffineExpr;

mod elaborate;
mod parse;

pub use elaborate::{elaborate, elaborate_node, load, Circuit, CircuitError, ElabError};
pub use parse::{parse, ParseError};

/// Location of a piece of source text. Lines and columns count from 1 and
/// the length is in characters. Nodes built by hand rather than by the
/// parser carry the all-zero span.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A gate application. `dims` is set for `id` and `swap`, `angle` for
/// rotations; the parser never sets both.
#[derive(Debug, Clone, PartialEq)]
pub struct GateCall {
    pub name: String,
    pub angle: Option<AffineExpr>,
    pub dims: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub enum NodeKind {
    Seq(Vec<Node>),
    Par(Vec<Node>),
    Gate(GateCall),
}

#[derive(Debug, Clone)]
pub struct Node {
    pub kind: NodeKind,
    pub span: SourceSpan,
}

impl Node {
    pub fn seq(nodes: Vec<Node>) -> Node {
        Node {
            kind: NodeKind::Seq(nodes),
            span: SourceSpan::default(),
        }
    }

    pub fn par(nodes: Vec<Node>) -> Node {
        Node {
            kind: NodeKind::Par(nodes),
            span: SourceSpan::default(),
        }
    }

    pub fn gate(name: &str, angle: Option<AffineExpr>, dims: Option<Vec<usize>>) -> Node {
        Node {
            kind: NodeKind::Gate(GateCall {
                name: name.to_string(),
                angle,
                dims,
            }),
            span: SourceSpan::default(),
        }
    }

    /// Equality of the trees, ignoring spans.
    pub fn same_structure(&self, other: &Node) -> bool {
        fn all(a: &[Node], b: &[Node]) -> bool {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_structure(y))
        }
        match (&self.kind, &other.kind) {
            (NodeKind::Seq(a), NodeKind::Seq(b)) | (NodeKind::Par(a), NodeKind::Par(b)) => all(a, b),
            (NodeKind::Gate(a), NodeKind::Gate(b)) => a == b,
            _ => false,
        }
    }
}

/// A parsed file: the `params n` header and the circuit body.
#[derive(Debug, Clone)]
pub struct Program {
    pub params: usize,
    pub body: Node,
}

impl Program {
    pub fn same_structure(&self, other: &Program) -> bool {
        self.params == other.params && self.body.same_structure(&other.body)
    }
}

impl fmt::Display for GateCall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if let Some(dims) = &self.dims {
            let dims: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
            write!(f, "({})", dims.join(", "))?;
        }
        if let Some(angle) = &self.angle {
            write!(f, "({angle})")?;
        }
        Ok(())
    }
}

// Sequences nested directly in sequences, and anything compound inside a
// parallel block, need parentheses to reparse to the same tree.
fn write_joined(f: &mut fmt::Formatter<'_>, nodes: &[Node], sep: &str, wrap: fn(&NodeKind) -> bool) -> fmt::Result {
    for (i, node) in nodes.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        if wrap(&node.kind) {
            write!(f, "({node})")?;
        } else {
            write!(f, "{node}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            NodeKind::Gate(g) => write!(f, "{g}"),
            NodeKind::Seq(nodes) => write_joined(f, nodes, " ; ", |k| matches!(k, NodeKind::Seq(_))),
            NodeKind::Par(nodes) => write_joined(f, nodes, " | ", |k| !matches!(k, NodeKind::Gate(_))),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "params {}", self.params)?;
        writeln!(f, "{}", self.body)
    }
}

#[cfg(test)]
mod tests;
