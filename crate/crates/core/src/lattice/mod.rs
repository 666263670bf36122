//! Entailment graphs over categories enriched in a finite meet-semilattice.
//!
//! A meet-semilattice `(L, ≤, ∧, ⊤)` is Cartesian monoidal, and a category
//! enriched in it is a graph whose edges carry lattice labels with
//! `hom(Y,Z) ∧ hom(X,Y) ≤ hom(X,Z)` and `⊤ ≤ hom(X,X)`. Such lattices have no
//! interesting points to evaluate at, so instead of the pointwise engine the
//! parameterized hom-set at level `p` is the entailment test
//! `p ≤ hom(X,Y)`: the edge is present or it is not.

mod spec_file;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use spec_file::{parse_lattice_spec, LatticeSpec};

/// An element of a [`MeetSemilattice`], by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub usize);

/// What went wrong in a semilattice or enriched graph, with named witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    NotReflexive,
    NotAntisymmetric,
    NotTransitive,
    NotTop,
    MeetNotGlb,
    NoGlb,
    MeetNotCommutative,
    MeetNotAssociative,
    MeetNotIdempotent,
    MeetWithTop,
    MeetOrderDisagree,
    LoopNotTop,
    CompositionBound,
}

impl ViolationKind {
    fn describe(self) -> &'static str {
        match self {
            ViolationKind::NotReflexive => "order not reflexive",
            ViolationKind::NotAntisymmetric => "order not antisymmetric",
            ViolationKind::NotTransitive => "order not transitive",
            ViolationKind::NotTop => "top is not above every element",
            ViolationKind::MeetNotGlb => "meet not greatest lower bound",
            ViolationKind::NoGlb => "no greatest lower bound",
            ViolationKind::MeetNotCommutative => "meet not commutative",
            ViolationKind::MeetNotAssociative => "meet not associative",
            ViolationKind::MeetNotIdempotent => "meet not idempotent",
            ViolationKind::MeetWithTop => "meet with top is not the identity",
            ViolationKind::MeetOrderDisagree => "meet table disagrees with order",
            ViolationKind::LoopNotTop => "self-loop not labelled top",
            ViolationKind::CompositionBound => "composite label not bounded by meet",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({})", self.kind.describe(), self.witness.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("invalid structure:\n{}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown lattice element `{0}`")]
    UnknownElement(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter().map(|v| format!("  {v}")).collect::<Vec<_>>().join("\n")
}

/// A finite semilattice as raw tables, not yet checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeTable {
    pub elements: Vec<String>,
    pub top: Elem,
    /// `leq[a][b]` iff `a ≤ b`.
    pub leq: Vec<Vec<bool>>,
    /// `meet[a][b] = a ∧ b`.
    pub meet: Vec<Vec<Elem>>,
}

impl SemilatticeTable {
    fn name(&self, e: Elem) -> String {
        self.elements[e.0].clone()
    }

    fn witness(&self, es: &[Elem]) -> Vec<String> {
        es.iter().map(|&e| self.name(e)).collect()
    }
}

/// Checks every order and meet axiom by exhaustion.
pub fn validate_semilattice(t: &SemilatticeTable) -> Vec<Violation> {
    let n = t.elements.len();
    let mut out = Vec::new();
    let mut push = |kind, es: &[Elem]| {
        out.push(Violation {
            kind,
            witness: t.witness(es),
        })
    };
    let le = |a: usize, b: usize| t.leq[a][b];
    let meet = |a: usize, b: usize| t.meet[a][b].0;
    let all = || (0..n).map(Elem);

    for a in all() {
        if !le(a.0, a.0) {
            push(ViolationKind::NotReflexive, &[a]);
        }
        if !le(a.0, t.top.0) {
            push(ViolationKind::NotTop, &[a]);
        }
        if meet(a.0, a.0) != a.0 {
            push(ViolationKind::MeetNotIdempotent, &[a]);
        }
        if meet(a.0, t.top.0) != a.0 {
            push(ViolationKind::MeetWithTop, &[a, t.top]);
        }
    }
    for a in all() {
        for b in all() {
            if a != b && le(a.0, b.0) && le(b.0, a.0) {
                push(ViolationKind::NotAntisymmetric, &[a, b]);
            }
            if meet(a.0, b.0) != meet(b.0, a.0) {
                push(ViolationKind::MeetNotCommutative, &[a, b]);
            }
            let m = meet(a.0, b.0);
            let lower = le(m, a.0) && le(m, b.0);
            let greatest = (0..n).all(|c| !(le(c, a.0) && le(c, b.0)) || le(c, m));
            if !(lower && greatest) {
                push(ViolationKind::MeetNotGlb, &[a, b]);
            }
            for c in all() {
                if le(a.0, b.0) && le(b.0, c.0) && !le(a.0, c.0) {
                    push(ViolationKind::NotTransitive, &[a, b, c]);
                }
                if meet(meet(a.0, b.0), c.0) != meet(a.0, meet(b.0, c.0)) {
                    push(ViolationKind::MeetNotAssociative, &[a, b, c]);
                }
            }
        }
    }
    out
}

/// A validated finite meet-semilattice with named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetSemilattice {
    table: SemilatticeTable,
    index: HashMap<String, Elem>,
}

fn index_names(names: &[String]) -> Result<HashMap<String, Elem>, LatticeError> {
    let mut index = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), Elem(i)).is_some() {
            return Err(LatticeError::Parse {
                line: 0,
                message: format!("duplicate name `{name}`"),
            });
        }
    }
    Ok(index)
}

impl MeetSemilattice {
    pub fn from_table(table: SemilatticeTable) -> Result<Self, LatticeError> {
        let n = table.elements.len();
        assert!(n > 0, "semilattice needs at least one element");
        assert!(table.top.0 < n, "top out of range");
        assert!(
            table.leq.len() == n && table.leq.iter().all(|r| r.len() == n),
            "leq table shape"
        );
        assert!(
            table.meet.len() == n && table.meet.iter().all(|r| r.len() == n),
            "meet table shape"
        );
        assert!(table.meet.iter().flatten().all(|e| e.0 < n), "meet entry out of range");
        let index = index_names(&table.elements)?;
        let violations = validate_semilattice(&table);
        if !violations.is_empty() {
            return Err(LatticeError::Invalid(violations));
        }
        Ok(MeetSemilattice { table, index })
    }

    /// Derives the order from the meet: `a ≤ b` iff `a ∧ b = a`.
    pub fn from_meet(elements: Vec<String>, top: Elem, meet: Vec<Vec<Elem>>) -> Result<Self, LatticeError> {
        let n = elements.len();
        let leq = (0..n)
            .map(|a| (0..n).map(|b| meet[a][b] == Elem(a)).collect())
            .collect();
        MeetSemilattice::from_table(SemilatticeTable {
            elements,
            top,
            leq,
            meet,
        })
    }

    /// Derives the meet as the greatest lower bound under `leq`.
    pub fn from_order(elements: Vec<String>, top: Elem, leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let (meet, missing) = glb_table(&leq);
        if !missing.is_empty() {
            let violations = missing
                .into_iter()
                .map(|(a, b)| Violation {
                    kind: ViolationKind::NoGlb,
                    witness: vec![elements[a].clone(), elements[b].clone()],
                })
                .collect();
            return Err(LatticeError::Invalid(violations));
        }
        MeetSemilattice::from_table(SemilatticeTable {
            elements,
            top,
            leq,
            meet,
        })
    }

    /// The three-element chain `bot < 1 < top`.
    pub fn chain3() -> Self {
        let names = ["bot", "1", "top"].map(String::from).to_vec();
        let meet = (0..3).map(|a| (0..3).map(|b| Elem(a.min(b))).collect()).collect();
        MeetSemilattice::from_meet(names, Elem(2), meet).expect("chain is a semilattice")
    }

    pub fn len(&self) -> usize {
        self.table.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.elements.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len()).map(Elem)
    }

    pub fn top(&self) -> Elem {
        self.table.top
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.table.leq[a.0][b.0]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.table.meet[a.0][b.0]
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.table.elements[e.0]
    }

    pub fn element(&self, name: &str) -> Result<Elem, LatticeError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn table(&self) -> &SemilatticeTable {
        &self.table
    }
}

/// Greatest lower bounds under `leq`, plus the pairs that have none.
fn glb_table(leq: &[Vec<bool>]) -> (Vec<Vec<Elem>>, Vec<(usize, usize)>) {
    let n = leq.len();
    let mut missing = Vec::new();
    let mut meet = vec![vec![Elem(0); n]; n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
            match lower.iter().find(|&&m| lower.iter().all(|&c| leq[c][m])) {
                Some(&m) => meet[a][b] = Elem(m),
                None => missing.push((a, b)),
            }
        }
    }
    (meet, missing)
}

/// Reflexive-transitive closure of a relation given as generating pairs.
pub fn reflexive_transitive_closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        rel[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                let row_k = rel[k].clone();
                for (to, &reach) in rel[i].iter_mut().zip(&row_k) {
                    *to |= reach;
                }
            }
        }
    }
    rel
}

/// Objects with lattice-valued hom labels, as raw data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphTable {
    pub objects: Vec<String>,
    /// `hom[x][y]` labels the edge `x -> y`.
    pub hom: Vec<Vec<Elem>>,
}

/// Checks `⊤ ≤ hom(X,X)` and `hom(Y,Z) ∧ hom(X,Y) ≤ hom(X,Z)` for every
/// object and triple.
pub fn validate_enriched_graph(lattice: &MeetSemilattice, g: &GraphTable) -> Vec<Violation> {
    let n = g.objects.len();
    let mut out = Vec::new();
    for x in 0..n {
        if !lattice.leq(lattice.top(), g.hom[x][x]) {
            out.push(Violation {
                kind: ViolationKind::LoopNotTop,
                witness: vec![g.objects[x].clone()],
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let composite = lattice.meet(g.hom[y][z], g.hom[x][y]);
                if !lattice.leq(composite, g.hom[x][z]) {
                    out.push(Violation {
                        kind: ViolationKind::CompositionBound,
                        witness: vec![g.objects[x].clone(), g.objects[y].clone(), g.objects[z].clone()],
                    });
                }
            }
        }
    }
    out
}

/// A category enriched in a [`MeetSemilattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedGraph {
    table: GraphTable,
}

impl EnrichedGraph {
    pub fn new(lattice: &MeetSemilattice, table: GraphTable) -> Result<Self, LatticeError> {
        let n = table.objects.len();
        assert!(
            table.hom.len() == n && table.hom.iter().all(|r| r.len() == n),
            "hom table shape"
        );
        assert!(
            table.hom.iter().flatten().all(|e| e.0 < lattice.len()),
            "hom label out of range"
        );
        index_names(&table.objects)?;
        let violations = validate_enriched_graph(lattice, &table);
        if !violations.is_empty() {
            return Err(LatticeError::Invalid(violations));
        }
        Ok(EnrichedGraph { table })
    }

    pub fn objects(&self) -> &[String] {
        &self.table.objects
    }

    pub fn hom(&self, x: usize, y: usize) -> Elem {
        self.table.hom[x][y]
    }

    pub fn table(&self) -> &GraphTable {
        &self.table
    }
}

/// Directed edges between named objects, sorted by `(source, target)` name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeSet {
    edges: Vec<(String, String)>,
}

impl EdgeSet {
    pub fn from_edges(mut edges: Vec<(String, String)>) -> Self {
        edges.sort();
        edges.dedup();
        EdgeSet { edges }
    }

    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, from: &str, to: &str) -> bool {
        self.edges
            .binary_search_by(|(a, b)| (a.as_str(), b.as_str()).cmp(&(from, to)))
            .is_ok()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.edges.iter().all(|(a, b)| other.contains(a, b))
    }
}

/// One `X -> Y` line per edge.
impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.edges {
            writeln!(f, "{a} -> {b}")?;
        }
        Ok(())
    }
}

/// Edges entailed at level `p`: `(X, Y)` with `p ≤ hom(X, Y)`.
pub fn param_graph(lattice: &MeetSemilattice, graph: &EnrichedGraph, p: Elem) -> EdgeSet {
    let objects = graph.objects();
    let mut edges = Vec::new();
    for x in 0..objects.len() {
        for y in 0..objects.len() {
            if lattice.leq(p, graph.hom(x, y)) {
                edges.push((objects[x].clone(), objects[y].clone()));
            }
        }
    }
    EdgeSet::from_edges(edges)
}

/// [`param_graph`] with the level given by name.
pub fn param_graph_named(
    lattice: &MeetSemilattice,
    graph: &EnrichedGraph,
    level: &str,
) -> Result<EdgeSet, LatticeError> {
    Ok(param_graph(lattice, graph, lattice.element(level)?))
}

/// The edges that hold with certainty, i.e. at level top.
pub fn underlying_graph(lattice: &MeetSemilattice, graph: &EnrichedGraph) -> EdgeSet {
    param_graph(lattice, graph, lattice.top())
}
