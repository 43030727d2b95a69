//! JSON documents for quivers with relations and representations.
//!
//! Scalars are written as decimal text (`"a/b"` for fractions); integers are
//! also accepted on input. Emitted documents are canonical: keys are sorted
//! and every arrow map and ground action is written out.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Arrow, GroundAlgebra, QuiverPresentation, Relation};
use crate::exactla::Matrix;
use crate::field::{parse_rational, FieldError, FieldSpec};
use crate::fixtures;
use crate::modcat::{ModError, Representation};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid representation: {0}")]
    Invalid(#[from] ModError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Schema { field: field.into(), message: message.into() }
}

/// A scalar given either as a JSON integer or as text.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn text(&self) -> String {
        match self {
            Entry::Int(i) => i.to_string(),
            Entry::Text(t) => t.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coef: Entry,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<Vec<TermDoc>>,
}

pub type Grid = Vec<Vec<Entry>>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub field: String,
    pub ground: String,
    pub spaces: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrow_maps: BTreeMap<String, Grid>,
    #[serde(default)]
    pub ground_action: BTreeMap<String, BTreeMap<String, Grid>>,
}

pub fn parse_quiver(text: &str) -> Result<QuiverPresentation, IoError> {
    let doc: QuiverDoc = serde_json::from_str(text)?;
    quiver_from_doc(&doc)
}

pub fn quiver_from_doc(doc: &QuiverDoc) -> Result<QuiverPresentation, IoError> {
    let mut p = QuiverPresentation::new(doc.vertices.clone());
    for (i, a) in doc.arrows.iter().enumerate() {
        let from = p.vertex_index(&a.from).map_err(|_| schema(format!("arrows[{i}].from"), format!("unknown vertex `{}`", a.from)))?;
        let to = p.vertex_index(&a.to).map_err(|_| schema(format!("arrows[{i}].to"), format!("unknown vertex `{}`", a.to)))?;
        p.arrows.push(Arrow { name: a.name.clone(), from, to });
    }
    for (r, rel) in doc.relations.iter().enumerate() {
        let mut terms = Vec::new();
        for (t, term) in rel.iter().enumerate() {
            let c = parse_rational(&term.coef.text())
                .map_err(|e| schema(format!("relations[{r}][{t}].coef"), e.to_string()))?;
            let path = term
                .path
                .iter()
                .map(|n| p.arrow_index(n).map_err(|_| schema(format!("relations[{r}][{t}].path"), format!("unknown arrow `{n}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if path.len() >= 2 && p.path_ends(&path).is_none() {
                return Err(schema(format!("relations[{r}][{t}].path"), "arrows are not composable"));
            }
            terms.push((c, path));
        }
        p.relations.push(Relation { terms });
    }
    p.validate().map_err(|e| match e {
        AlgebraError::BadRelation { relation, reason } => schema(format!("relations[{relation}]"), reason),
        other => IoError::Algebra(other),
    })?;
    Ok(p)
}

pub fn quiver_to_doc(p: &QuiverPresentation) -> QuiverDoc {
    QuiverDoc {
        vertices: p.vertices.clone(),
        arrows: p
            .arrows
            .iter()
            .map(|a| ArrowDoc { name: a.name.clone(), from: p.vertices[a.from].clone(), to: p.vertices[a.to].clone() })
            .collect(),
        relations: p
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, path)| TermDoc {
                        coef: Entry::Text(if c.is_integer() { c.numer().to_string() } else { c.to_string() }),
                        path: path.iter().map(|&a| p.arrows[a].name.clone()).collect(),
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn emit_quiver(p: &QuiverPresentation) -> String {
    serde_json::to_string_pretty(&quiver_to_doc(p)).expect("serializable")
}

fn grid_to_matrix(field: FieldSpec, grid: &Grid, rows: usize, cols: usize, name: &str) -> Result<Matrix, IoError> {
    if grid.len() != rows && !(rows == 0 && grid.is_empty()) {
        return Err(schema(name, format!("expected {rows} rows, found {}", grid.len())));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (i, row) in grid.iter().enumerate() {
        if row.len() != cols {
            return Err(schema(name, format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            let s = field.parse_scalar(&e.text()).map_err(|err| schema(format!("{name}[{i}][{j}]"), err.to_string()))?;
            m.set(i, j, s);
        }
    }
    Ok(m)
}

fn matrix_to_grid(m: &Matrix) -> Grid {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Entry::Text(m.get(i, j).to_text())).collect())
        .collect()
}

/// Parses a representation of `algebra`; the document's field must match the algebra's.
pub fn parse_representation(text: &str, algebra: &Arc<Algebra>) -> Result<Representation, IoError> {
    let doc: RepDoc = serde_json::from_str(text)?;
    representation_from_doc(&doc, algebra)
}

pub fn representation_from_doc(doc: &RepDoc, algebra: &Arc<Algebra>) -> Result<Representation, IoError> {
    let field = FieldSpec::parse(&doc.field).map_err(|e| schema("field", e.to_string()))?;
    if field != algebra.field() {
        return Err(schema("field", format!("`{}` differs from the algebra's field `{}`", field, algebra.field())));
    }
    let ground = fixtures::ground_by_name(&doc.ground, field)
        .ok_or_else(|| schema("ground", format!("unknown ground algebra `{}` (expected `k` or `dual`)", doc.ground)))?;
    let pres = algebra.presentation();
    for v in doc.spaces.keys() {
        pres.vertex_index(v).map_err(|_| schema("spaces", format!("unknown vertex `{v}`")))?;
    }
    let dims: Vec<usize> = pres.vertices.iter().map(|v| doc.spaces.get(v).copied().unwrap_or(0)).collect();
    for a in doc.arrow_maps.keys() {
        pres.arrow_index(a).map_err(|_| schema("arrow_maps", format!("unknown arrow `{a}`")))?;
    }
    let mut maps = Vec::new();
    for arr in &pres.arrows {
        let (r, c) = (dims[arr.to], dims[arr.from]);
        match doc.arrow_maps.get(&arr.name) {
            Some(g) => maps.push(grid_to_matrix(field, g, r, c, &format!("arrow_maps.{}", arr.name))?),
            None if r == 0 || c == 0 => maps.push(Matrix::zeros(field, r, c)),
            None => return Err(schema("arrow_maps", format!("missing map for arrow `{}`", arr.name))),
        }
    }
    for v in doc.ground_action.keys() {
        pres.vertex_index(v).map_err(|_| schema("ground_action", format!("unknown vertex `{v}`")))?;
    }
    let mut action = Vec::new();
    for (vi, v) in pres.vertices.iter().enumerate() {
        let d = dims[vi];
        let given = doc.ground_action.get(v);
        if let Some(g) = given {
            for b in g.keys() {
                if !ground.basis_names().contains(b) {
                    return Err(schema(format!("ground_action.{v}"), format!("unknown basis element `{b}`")));
                }
            }
        }
        let mut acts = Vec::new();
        for (bi, b) in ground.basis_names().iter().enumerate() {
            let name = format!("ground_action.{v}.{b}");
            match given.and_then(|g| g.get(b)) {
                Some(grid) => acts.push(grid_to_matrix(field, grid, d, d, &name)?),
                None if d == 0 => acts.push(Matrix::zeros(field, 0, 0)),
                None if is_unit(&ground, bi) => acts.push(Matrix::identity(field, d)),
                None => return Err(schema(name, "missing action matrix")),
            }
        }
        action.push(acts);
    }
    Ok(Representation::new(algebra.clone(), ground, dims, maps, action)?)
}

fn is_unit(ground: &GroundAlgebra, i: usize) -> bool {
    ground.unit().iter().enumerate().all(|(j, c)| if j == i { c.is_one() } else { c.is_zero() })
}

pub fn representation_to_doc(x: &Representation) -> RepDoc {
    let alg = x.algebra();
    let pres = alg.presentation();
    let ground = x.ground();
    RepDoc {
        field: x.field().to_string(),
        ground: ground.name.clone(),
        spaces: pres.vertices.iter().enumerate().map(|(v, n)| (n.clone(), x.dim_at(v))).collect(),
        arrow_maps: pres
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arr)| (arr.name.clone(), matrix_to_grid(x.arrow_map(a))))
            .collect(),
        ground_action: pres
            .vertices
            .iter()
            .enumerate()
            .map(|(v, n)| {
                let acts = ground
                    .basis_names()
                    .iter()
                    .zip(x.ground_action(v))
                    .map(|(b, m)| (b.clone(), matrix_to_grid(m)))
                    .collect();
                (n.clone(), acts)
            })
            .collect(),
    }
}

pub fn emit_representation(x: &Representation) -> String {
    serde_json::to_string_pretty(&representation_to_doc(x)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_LENGTH_CAP;
    use crate::modcat::random_representation;

    const C1: &str = r#"{"vertices":["0"],"arrows":[{"name":"d0","from":"0","to":"0"}],
        "relations":[[{"coef":1,"path":["d0","d0"]}]]}"#;

    #[test]
    fn c1_file_builds_algebra_of_dimension_two() {
        let p = parse_quiver(C1).unwrap();
        let a = Algebra::build(p, FieldSpec::Rationals, DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(a.dimension(), 2);
    }

    #[test]
    fn non_composable_relation_is_schema_error() {
        let text = r#"{"vertices":["0","1"],"arrows":[{"name":"a","from":"0","to":"1"}],
            "relations":[[{"coef":"1/2","path":["a","a"]}]]}"#;
        let e = parse_quiver(text).unwrap_err();
        assert!(matches!(e, IoError::Schema { .. }), "{e}");
        assert!(e.to_string().contains("relations[0][0].path"));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let e = parse_quiver("{\n\"vertices\": [\"0\",\n}").unwrap_err();
        assert!(matches!(e, IoError::Json { line: 3, .. }), "{e}");
    }

    #[test]
    fn non_equivariant_map_names_vertex_and_basis_element() {
        let f = FieldSpec::Prime(7);
        let a = fixtures::a2(f).unwrap();
        let text = r#"{"field":"fp:7","ground":"dual","spaces":{"0":2,"1":2},
            "arrow_maps":{"a":[[1,0],[0,0]]},
            "ground_action":{"0":{"eps":[[0,0],[1,0]]},"1":{"eps":[[0,0],[1,0]]}}}"#;
        let e = parse_representation(text, &a).unwrap_err().to_string();
        assert!(e.contains("`eps`") && e.contains("vertex `0`"), "{e}");
    }

    #[test]
    fn round_trip_is_canonical() {
        for field in [FieldSpec::Prime(7), FieldSpec::Rationals] {
            let a = fixtures::cycle(3, field).unwrap();
            let q = emit_quiver(a.presentation());
            assert_eq!(emit_quiver(&parse_quiver(&q).unwrap()), q);
            let r = GroundAlgebra::dual_numbers(field);
            for seed in 0..5 {
                let x = random_representation(&a, &r, &[], 3, seed);
                let text = emit_representation(&x);
                let y = parse_representation(&text, &a).unwrap();
                assert_eq!(emit_representation(&y), text);
            }
        }
    }
}
