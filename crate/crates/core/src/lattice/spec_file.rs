//! Text format for a semilattice together with an enriched graph.
//!
//! ```text
//! # comments run to end of line
//! elements: bot 1 top*      # `*` marks the top element
//! leq:                      # generating pairs, closed reflexively and transitively
//!   bot 1
//!   1 top
//! meet:                     # optional; complete table of `a b a∧b`
//!   bot bot bot
//! objects: A B
//! hom:                      # one `X Y label` line per ordered pair
//!   A A top
//! ```
//!
//! At least one of `leq` and `meet` must be present. When both are, they
//! have to describe the same semilattice.

use std::collections::HashMap;

use super::{
    glb_table, reflexive_transitive_closure, Elem, EnrichedGraph, GraphTable, LatticeError, MeetSemilattice,
    SemilatticeTable, Violation, ViolationKind,
};

/// A parsed and validated spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpec {
    pub lattice: MeetSemilattice,
    pub graph: EnrichedGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Elements,
    Leq,
    Meet,
    Objects,
    Hom,
}

impl Section {
    fn from_header(token: &str) -> Option<Section> {
        match token {
            "elements:" => Some(Section::Elements),
            "leq:" => Some(Section::Leq),
            "meet:" => Some(Section::Meet),
            "objects:" => Some(Section::Objects),
            "hom:" => Some(Section::Hom),
            _ => None,
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> LatticeError {
    LatticeError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Default)]
struct Raw<'a> {
    elements: Vec<(usize, &'a str)>,
    leq: Vec<(usize, Vec<&'a str>)>,
    meet: Vec<(usize, Vec<&'a str>)>,
    objects: Vec<(usize, &'a str)>,
    hom: Vec<(usize, Vec<&'a str>)>,
    seen: Vec<Section>,
}

fn collect_sections(text: &str) -> Result<Raw<'_>, LatticeError> {
    let mut raw = Raw::default();
    let mut current: Option<Section> = None;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = line.split('#').next().unwrap_or("");
        let mut tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if let Some(section) = Section::from_header(tokens[0]) {
            if raw.seen.contains(&section) {
                return Err(parse_err(lineno, format!("section `{}` appears twice", tokens[0])));
            }
            raw.seen.push(section);
            current = Some(section);
            tokens.remove(0);
            if tokens.is_empty() {
                continue;
            }
        }
        let section = current.ok_or_else(|| parse_err(lineno, "content before any section header"))?;
        match section {
            Section::Elements => raw.elements.extend(tokens.into_iter().map(|t| (lineno, t))),
            Section::Objects => raw.objects.extend(tokens.into_iter().map(|t| (lineno, t))),
            Section::Leq => {
                if tokens.len() != 2 {
                    return Err(parse_err(lineno, "leq entries are `a b` pairs"));
                }
                raw.leq.push((lineno, tokens));
            }
            Section::Meet => {
                if tokens.len() != 3 {
                    return Err(parse_err(lineno, "meet entries are `a b c` triples"));
                }
                raw.meet.push((lineno, tokens));
            }
            Section::Hom => {
                if tokens.len() != 3 {
                    return Err(parse_err(lineno, "hom entries are `X Y label` triples"));
                }
                raw.hom.push((lineno, tokens));
            }
        }
    }
    Ok(raw)
}

fn lookup(index: &HashMap<&str, usize>, name: &str, line: usize, what: &str) -> Result<usize, LatticeError> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| parse_err(line, format!("unknown {what} `{name}`")))
}

fn name_index<'a>(names: &[&'a str], what: &str, lines: &[usize]) -> Result<HashMap<&'a str, usize>, LatticeError> {
    let mut index = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if index.insert(*name, i).is_some() {
            return Err(parse_err(lines[i], format!("duplicate {what} `{name}`")));
        }
    }
    Ok(index)
}

/// Parses and validates a spec file. Syntax problems are
/// [`LatticeError::Parse`]; axiom failures are [`LatticeError::Invalid`].
pub fn parse_lattice_spec(text: &str) -> Result<LatticeSpec, LatticeError> {
    let raw = collect_sections(text)?;
    if raw.elements.is_empty() {
        return Err(parse_err(0, "missing `elements:` section"));
    }
    if raw.leq.is_empty() && raw.meet.is_empty() {
        return Err(parse_err(0, "need a `leq:` or `meet:` section"));
    }

    let mut top = None;
    let mut names = Vec::new();
    let mut name_lines = Vec::new();
    for &(line, token) in &raw.elements {
        let name = match token.strip_suffix('*') {
            Some(stripped) => {
                if top.is_some() {
                    return Err(parse_err(line, "more than one element marked as top"));
                }
                top = Some(names.len());
                stripped
            }
            None => token,
        };
        if name.is_empty() {
            return Err(parse_err(line, "empty element name"));
        }
        names.push(name);
        name_lines.push(line);
    }
    let top = Elem(top.ok_or_else(|| parse_err(raw.elements[0].0, "no element marked as top with `*`"))?);
    let index = name_index(&names, "element", &name_lines)?;
    let n = names.len();

    let leq = if raw.leq.is_empty() {
        None
    } else {
        let mut pairs = Vec::new();
        for (line, t) in &raw.leq {
            pairs.push((
                lookup(&index, t[0], *line, "element")?,
                lookup(&index, t[1], *line, "element")?,
            ));
        }
        Some(reflexive_transitive_closure(n, &pairs))
    };

    let meet = if raw.meet.is_empty() {
        None
    } else {
        let mut table: Vec<Vec<Option<Elem>>> = vec![vec![None; n]; n];
        for (line, t) in &raw.meet {
            let a = lookup(&index, t[0], *line, "element")?;
            let b = lookup(&index, t[1], *line, "element")?;
            let c = lookup(&index, t[2], *line, "element")?;
            if table[a][b].replace(Elem(c)).is_some() {
                return Err(parse_err(
                    *line,
                    format!("meet of `{}` and `{}` given twice", t[0], t[1]),
                ));
            }
        }
        let mut full = vec![vec![Elem(0); n]; n];
        for a in 0..n {
            for b in 0..n {
                full[a][b] = table[a][b].ok_or_else(|| {
                    parse_err(0, format!("meet table has no entry for `{}` `{}`", names[a], names[b]))
                })?;
            }
        }
        Some(full)
    };

    let elements: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let lattice = match (leq, meet) {
        (Some(leq), None) => MeetSemilattice::from_order(elements, top, leq)?,
        (None, Some(meet)) => MeetSemilattice::from_meet(elements, top, meet)?,
        (Some(leq), Some(meet)) => {
            let (derived, _) = glb_table(&leq);
            let mut disagreements = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if derived[a][b] != meet[a][b] {
                        disagreements.push(Violation {
                            kind: ViolationKind::MeetOrderDisagree,
                            witness: vec![elements[a].clone(), elements[b].clone()],
                        });
                    }
                }
            }
            if !disagreements.is_empty() {
                return Err(LatticeError::Invalid(disagreements));
            }
            MeetSemilattice::from_table(SemilatticeTable {
                elements,
                top,
                leq,
                meet,
            })?
        }
        (None, None) => unreachable!("checked above"),
    };

    let objects: Vec<&str> = raw.objects.iter().map(|&(_, o)| o).collect();
    let object_lines: Vec<usize> = raw.objects.iter().map(|&(l, _)| l).collect();
    let object_index = name_index(&objects, "object", &object_lines)?;
    let m = objects.len();
    let mut hom: Vec<Vec<Option<Elem>>> = vec![vec![None; m]; m];
    for (line, t) in &raw.hom {
        let x = lookup(&object_index, t[0], *line, "object")?;
        let y = lookup(&object_index, t[1], *line, "object")?;
        let e = Elem(lookup(&index, t[2], *line, "element")?);
        if hom[x][y].replace(e).is_some() {
            return Err(parse_err(*line, format!("hom `{}` `{}` given twice", t[0], t[1])));
        }
    }
    let mut full = vec![vec![Elem(0); m]; m];
    for x in 0..m {
        for y in 0..m {
            full[x][y] = hom[x][y].ok_or_else(|| {
                parse_err(
                    0,
                    format!("hom table has no entry for `{}` `{}`", objects[x], objects[y]),
                )
            })?;
        }
    }
    let graph = EnrichedGraph::new(
        &lattice,
        GraphTable {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            hom: full,
        },
    )?;
    Ok(LatticeSpec { lattice, graph })
}
