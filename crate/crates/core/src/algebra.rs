//! Finite quiver presentations, the induced finite-dimensional path category
//! `Λ = kQ/I`, its radical layers, and the ground algebra `R`.
//!
//! Paths are arrow lists in application order: `[a1, .., an]` means "first
//! `a1`, then `a2`, ..." and acts on a representation as `X(an) ... X(a1)`.

use std::any::Any;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::Matrix;
use crate::field::{FieldError, FieldSpec, Scalar};

pub const DEFAULT_LENGTH_CAP: usize = 32;
const PATH_BUDGET: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("relation {relation}: {reason}")]
    BadRelation { relation: usize, reason: String },
    #[error("the presentation is not finite: paths of length {cap} survive modulo the relations")]
    NotFinite { cap: usize },
    #[error("path enumeration exceeded {0} paths; lower the length cap or add relations")]
    PathBudget(usize),
    #[error("ground algebra: {0}")]
    Ground(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(BigRational, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl QuiverPresentation {
    pub fn new(vertices: Vec<String>) -> Self {
        QuiverPresentation { vertices, arrows: Vec::new(), relations: Vec::new() }
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, from: usize, to: usize) -> usize {
        self.arrows.push(Arrow { name: name.into(), from, to });
        self.arrows.len() - 1
    }

    /// Adds a relation from integer coefficients and arrow-index paths.
    pub fn add_relation(&mut self, terms: Vec<(i64, Vec<usize>)>) {
        let terms = terms
            .into_iter()
            .map(|(c, p)| (BigRational::from_integer(c.into()), p))
            .collect();
        self.relations.push(Relation { terms });
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| AlgebraError::UnknownArrow(name.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Quiver with every arrow reversed; relation paths are reversed accordingly.
    pub fn opposite(&self) -> QuiverPresentation {
        QuiverPresentation {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), from: a.to, to: a.from })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, p)| (c.clone(), p.iter().rev().copied().collect()))
                        .collect(),
                })
                .collect(),
        }
    }

    /// Source and target of a nonempty arrow list, or `None` if not composable.
    pub fn path_ends(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut at = first.to;
        for &a in &path[1..] {
            let arr = self.arrows.get(a)?;
            if arr.from != at {
                return None;
            }
            at = arr.to;
        }
        Some((first.from, at))
    }

    /// Checks names, endpoints and admissibility of relations.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let mut seen = std::collections::HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                return Err(AlgebraError::DuplicateName(v.clone()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for a in &self.arrows {
            if !seen.insert(a.name.clone()) {
                return Err(AlgebraError::DuplicateName(a.name.clone()));
            }
            if a.from >= self.vertices.len() || a.to >= self.vertices.len() {
                return Err(AlgebraError::UnknownVertex(format!("endpoint of arrow {}", a.name)));
            }
        }
        for (i, r) in self.relations.iter().enumerate() {
            let bad = |reason: &str| AlgebraError::BadRelation { relation: i, reason: reason.to_string() };
            if r.terms.is_empty() {
                return Err(bad("empty relation"));
            }
            let mut ends = None;
            for (_, p) in &r.terms {
                if p.len() < 2 {
                    return Err(bad("terms must be paths of length at least two"));
                }
                let e = self.path_ends(p).ok_or_else(|| bad("term is not a composable path"))?;
                if *ends.get_or_insert(e) != e {
                    return Err(bad("terms do not share source and target"));
                }
            }
        }
        Ok(())
    }
}

/// A standard path: basis element of `Λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisPath {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl BasisPath {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Reduction data for the paths between one pair of vertices.
#[derive(Debug)]
struct PairReducer {
    lookup: HashMap<Vec<usize>, usize>,
    /// For each column: its position in the pair basis if standard, else the
    /// index of the echelon row it is the pivot of.
    kind: Vec<ColumnKind>,
    rows: Matrix,
    standard: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
enum ColumnKind {
    Standard(usize),
    Pivot(usize),
}

/// Verdicts of the standing hypotheses on a built algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub finite: bool,
    pub radical_condition: bool,
    pub self_injective: bool,
    /// `nakayama[q] = Some(p)` when `P⟨q⟩` is injective with simple socle at `p`.
    pub nakayama: Vec<Option<usize>>,
    pub loewy_length: usize,
    pub dimension: usize,
}

/// The finite-dimensional path category of a presentation over a field.
pub struct Algebra {
    presentation: QuiverPresentation,
    field: FieldSpec,
    length_cap: usize,
    basis: Vec<BasisPath>,
    pair_basis: Vec<Vec<Vec<usize>>>,
    local_index: Vec<usize>,
    reducers: HashMap<(usize, usize), PairReducer>,
    loewy_length: usize,
    opposite: OnceLock<Arc<Algebra>>,
    cache: RwLock<HashMap<String, Arc<dyn Any + Send + Sync>>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("vertices", &self.presentation.vertices)
            .field("field", &self.field)
            .field("dimension", &self.basis.len())
            .finish()
    }
}

impl Algebra {
    /// Builds `kQ/I` truncated at `length_cap`, failing if paths of length
    /// `length_cap` survive (the presentation is then not finite at that cap).
    pub fn build(presentation: QuiverPresentation, field: FieldSpec, length_cap: usize) -> Result<Arc<Algebra>, AlgebraError> {
        presentation.validate()?;
        let n = presentation.num_vertices();
        let coefs: Vec<Vec<(Scalar, Vec<usize>)>> = presentation
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, p)| Ok((field.from_rational(c)?, p.clone())))
                    .collect::<Result<Vec<_>, FieldError>>()
            })
            .collect::<Result<_, _>>()?;

        // Enumerate all paths up to the cap, grouped by endpoints.
        let mut by_pair: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
        let mut out_arrows: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, a) in presentation.arrows.iter().enumerate() {
            out_arrows[a.from].push(i);
        }
        let mut total = 0usize;
        for s in 0..n {
            let mut frontier: Vec<(usize, Vec<usize>)> = vec![(s, Vec::new())];
            by_pair.entry((s, s)).or_default().push(Vec::new());
            total += 1;
            for _len in 1..=length_cap {
                let mut next = Vec::new();
                for (at, p) in &frontier {
                    for &a in &out_arrows[*at] {
                        let mut q = p.clone();
                        q.push(a);
                        let t = presentation.arrows[a].to;
                        by_pair.entry((s, t)).or_default().push(q.clone());
                        next.push((t, q));
                        total += 1;
                        if total > PATH_BUDGET {
                            return Err(AlgebraError::PathBudget(PATH_BUDGET));
                        }
                    }
                }
                if next.is_empty() {
                    break;
                }
                frontier = next;
            }
        }
        for paths in by_pair.values_mut() {
            paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        }

        // Ideal generators u·r·v per endpoint pair, truncated at the cap.
        let rel_ends: Vec<(usize, usize)> = presentation
            .relations
            .iter()
            .map(|r| presentation.path_ends(&r.terms[0].1).expect("validated"))
            .collect();
        let mut reducers = HashMap::new();
        let mut pair_paths: Vec<((usize, usize), Vec<Vec<usize>>)> = by_pair.into_iter().collect();
        pair_paths.sort_by_key(|(k, _)| *k);
        let empty: Vec<Vec<usize>> = Vec::new();
        let mut lookups: HashMap<(usize, usize), HashMap<Vec<usize>, usize>> = HashMap::new();
        for (k, paths) in &pair_paths {
            let lookup: HashMap<Vec<usize>, usize> =
                paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
            lookups.insert(*k, lookup);
        }
        let pair_map: HashMap<(usize, usize), &Vec<Vec<usize>>> =
            pair_paths.iter().map(|(k, v)| (*k, v)).collect();
        for ((s, t), paths) in &pair_paths {
            let lookup = &lookups[&(*s, *t)];
            let mut gens: Vec<Vec<Scalar>> = Vec::new();
            for (ri, rel) in coefs.iter().enumerate() {
                let (rs, rt) = rel_ends[ri];
                let us = pair_map.get(&(*s, rs)).copied().unwrap_or(&empty);
                let vs = pair_map.get(&(rt, *t)).copied().unwrap_or(&empty);
                let min_len = rel.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
                for u in us {
                    for v in vs {
                        if u.len() + min_len + v.len() > length_cap {
                            continue;
                        }
                        let mut row = vec![field.zero(); paths.len()];
                        let mut nonzero = false;
                        for (c, p) in rel {
                            if u.len() + p.len() + v.len() > length_cap {
                                continue;
                            }
                            let mut full = u.clone();
                            full.extend_from_slice(p);
                            full.extend_from_slice(v);
                            let col = lookup[&full];
                            row[col] += c;
                            nonzero = true;
                        }
                        if nonzero && row.iter().any(|x| !x.is_zero()) {
                            gens.push(row);
                        }
                    }
                }
            }
            let m = Matrix::from_vec(field, gens.len(), paths.len(), gens.concat())
                .expect("generator rows have uniform width");
            let rr = m.rref();
            let rank = rr.pivots.len();
            let rows = rr.matrix.submatrix(0, rank, 0, paths.len());
            let mut kind = Vec::with_capacity(paths.len());
            let mut standard = Vec::new();
            for c in 0..paths.len() {
                if let Some(i) = rr.pivots.iter().position(|&p| p == c) {
                    kind.push(ColumnKind::Pivot(i));
                } else {
                    kind.push(ColumnKind::Standard(standard.len()));
                    standard.push(c);
                }
            }
            if standard.iter().any(|&c| paths[c].len() == length_cap) {
                return Err(AlgebraError::NotFinite { cap: length_cap });
            }
            reducers.insert(
                (*s, *t),
                PairReducer { lookup: lookup.clone(), kind, rows, standard },
            );
        }

        let mut basis = Vec::new();
        let mut pair_basis = vec![vec![Vec::new(); n]; n];
        let mut local_index = Vec::new();
        for s in 0..n {
            for t in 0..n {
                let Some(red) = reducers.get(&(s, t)) else { continue };
                let paths = pair_map[&(s, t)];
                for (pos, &c) in red.standard.iter().enumerate() {
                    pair_basis[s][t].push(basis.len());
                    local_index.push(pos);
                    basis.push(BasisPath { source: s, target: t, arrows: paths[c].clone() });
                }
            }
        }
        let loewy_length = basis.iter().map(|b| b.len() + 1).max().unwrap_or(0);
        Ok(Arc::new(Algebra {
            presentation,
            field,
            length_cap,
            basis,
            pair_basis,
            local_index,
            reducers,
            loewy_length,
            opposite: OnceLock::new(),
            cache: RwLock::new(HashMap::new()),
        }))
    }

    /// One vertex, no arrows: modules over it are plain `R`-modules.
    pub fn point(field: FieldSpec) -> Arc<Algebra> {
        static POINTS: OnceLock<std::sync::Mutex<HashMap<FieldSpec, Arc<Algebra>>>> = OnceLock::new();
        let table = POINTS.get_or_init(Default::default);
        let mut table = table.lock().expect("point table lock");
        table
            .entry(field)
            .or_insert_with(|| {
                Algebra::build(QuiverPresentation::new(vec!["*".to_string()]), field, 1).expect("point algebra")
            })
            .clone()
    }

    pub fn presentation(&self) -> &QuiverPresentation {
        &self.presentation
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn num_vertices(&self) -> usize {
        self.presentation.num_vertices()
    }

    pub fn num_arrows(&self) -> usize {
        self.presentation.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.presentation.arrows[a]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.presentation.vertices[v]
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    /// Global basis ids of the standard paths `p -> q`.
    pub fn pair_basis(&self, p: usize, q: usize) -> &[usize] {
        &self.pair_basis[p][q]
    }

    /// `dim Q(p, q)`.
    pub fn hom_dim(&self, p: usize, q: usize) -> usize {
        self.pair_basis[p][q].len()
    }

    /// Position of a basis element within its pair basis.
    pub fn local_index(&self, b: usize) -> usize {
        self.local_index[b]
    }

    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    pub fn is_same(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other) || (self.field == other.field && self.presentation == other.presentation)
    }

    pub fn vertex_basis(&self, v: usize) -> usize {
        self.pair_basis[v][v][0]
    }

    pub fn arrow_basis(&self, a: usize) -> usize {
        let arr = self.arrow(a);
        let coords = self.normal_form(arr.from, arr.to, &[a]);
        let pos = coords.iter().position(|c| !c.is_zero()).expect("arrows are standard");
        self.pair_basis[arr.from][arr.to][pos]
    }

    /// Coordinates of a path `p -> q` in the pair basis. Paths longer than the
    /// length cap are zero.
    pub fn normal_form(&self, p: usize, q: usize, arrows: &[usize]) -> Vec<Scalar> {
        let dim = self.pair_basis[p][q].len();
        let mut out = vec![self.field.zero(); dim];
        if arrows.len() > self.length_cap {
            return out;
        }
        let Some(red) = self.reducers.get(&(p, q)) else { return out };
        let Some(&col) = red.lookup.get(arrows) else {
            panic!("normal_form: path {arrows:?} is not a path {p} -> {q}");
        };
        match red.kind[col] {
            ColumnKind::Standard(pos) => out[pos] = self.field.one(),
            ColumnKind::Pivot(row) => {
                for (pos, &c) in red.standard.iter().enumerate() {
                    let v = red.rows.get(row, c);
                    if !v.is_zero() {
                        out[pos] = -v;
                    }
                }
            }
        }
        out
    }

    /// Coordinates (in the pair basis of `source(a) -> target(b)`) of the
    /// product "first `a`, then `b`" of two basis elements.
    pub fn concat(&self, a: usize, b: usize) -> Vec<Scalar> {
        let (ba, bb) = (&self.basis[a], &self.basis[b]);
        assert_eq!(ba.target, bb.source, "concat of non-composable basis paths");
        let mut path = ba.arrows.clone();
        path.extend_from_slice(&bb.arrows);
        self.normal_form(ba.source, bb.target, &path)
    }

    /// Structure constants: `(a, b) -> coordinates of "a then b"` for every
    /// composable pair of basis elements with nonzero product.
    pub fn multiplication_table(&self) -> BTreeMap<(usize, usize), Vec<(usize, Scalar)>> {
        let mut out = BTreeMap::new();
        for (a, ba) in self.basis.iter().enumerate() {
            for t in 0..self.num_vertices() {
                for &b in &self.pair_basis[ba.target][t] {
                    let coords = self.concat(a, b);
                    let ids = &self.pair_basis[ba.source][t];
                    let terms: Vec<(usize, Scalar)> = coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (ids[i], c))
                        .collect();
                    if !terms.is_empty() {
                        out.insert((a, b), terms);
                    }
                }
            }
        }
        out
    }

    /// `n_i(p, q)`: dimension of `rad^i Q(p,q) / rad^{i+1} Q(p,q)`.
    ///
    /// Relations are reduced towards their shortest terms, so `rad^i` is
    /// spanned by the standard paths of length at least `i`.
    pub fn radical_layer(&self, i: usize, p: usize, q: usize) -> usize {
        self.pair_basis[p][q].iter().filter(|&&b| self.basis[b].len() == i).count()
    }

    /// `dim rad^i Q(p, q)`.
    pub fn radical_power_dim(&self, i: usize, p: usize, q: usize) -> usize {
        self.pair_basis[p][q].iter().filter(|&&b| self.basis[b].len() >= i).count()
    }

    /// Matrix of the arrow `a: p -> p'` acting on `P⟨q⟩(p) -> P⟨q⟩(p')`.
    pub fn projective_arrow_action(&self, q: usize, a: usize) -> Matrix {
        let arr = self.arrow(a);
        let src = &self.pair_basis[q][arr.from];
        let dst = &self.pair_basis[q][arr.to];
        let ab = self.arrow_basis(a);
        let mut m = Matrix::zeros(self.field, dst.len(), src.len());
        for (j, &u) in src.iter().enumerate() {
            let coords = self.concat(u, ab);
            for (i, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Socle dimensions of `P⟨q⟩` at each vertex.
    pub fn projective_socle(&self, q: usize) -> Vec<usize> {
        (0..self.num_vertices())
            .map(|p| {
                let d = self.hom_dim(q, p);
                let mut stacked = Matrix::zeros(self.field, 0, d);
                for a in 0..self.num_arrows() {
                    if self.arrow(a).from == p {
                        stacked = stacked.vstack(&self.projective_arrow_action(q, a)).expect("same width");
                    }
                }
                d - stacked.rank()
            })
            .collect()
    }

    /// Verdicts of (Fin), (Rad) and (SelfInj). A projective `P⟨q⟩` with simple
    /// socle `S⟨p⟩` embeds in `I⟨p⟩`; it is injective iff
    /// `dim Q(q, x) = dim Q(x, p)` for all `x`.
    pub fn check_conditions(&self) -> ConditionReport {
        let n = self.num_vertices();
        let radical_condition = (0..n).all(|q| {
            (0..n).all(|p| {
                let top = self.hom_dim(p, q) - self.radical_power_dim(1, p, q);
                top == usize::from(p == q)
            })
        });
        let nakayama: Vec<Option<usize>> = (0..n)
            .map(|q| {
                let soc = self.projective_socle(q);
                if soc.iter().sum::<usize>() != 1 {
                    return None;
                }
                let p = soc.iter().position(|&d| d == 1).expect("one socle vertex");
                (0..n).all(|x| self.hom_dim(q, x) == self.hom_dim(x, p)).then_some(p)
            })
            .collect();
        let mut hit = vec![false; n];
        let mut perm = true;
        for v in nakayama.iter() {
            match v {
                Some(p) if !hit[*p] => hit[*p] = true,
                _ => perm = false,
            }
        }
        ConditionReport {
            finite: true,
            radical_condition,
            self_injective: perm,
            nakayama,
            loewy_length: self.loewy_length,
            dimension: self.dimension(),
        }
    }

    /// `Λ^op`, built from the opposite presentation (cached).
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                Algebra::build(self.presentation.opposite(), self.field, self.length_cap)
                    .expect("opposite of a finite presentation is finite")
            })
            .clone()
    }

    /// Read-mostly memo table keyed by string; concurrent misses may compute twice.
    pub fn cached<T, E>(&self, key: &str, build: impl FnOnce() -> Result<T, E>) -> Result<Arc<T>, E>
    where
        T: Any + Send + Sync,
    {
        if let Some(v) = self.cache.read().expect("cache lock").get(key) {
            if let Ok(t) = v.clone().downcast::<T>() {
                return Ok(t);
            }
        }
        let v = Arc::new(build()?);
        self.cache
            .write()
            .expect("cache lock")
            .insert(key.to_string(), v.clone() as Arc<dyn Any + Send + Sync>);
        Ok(v)
    }

    /// Human-readable path: arrow names joined by `.`, or `e_v`.
    pub fn describe_basis(&self, b: usize) -> String {
        let bp = &self.basis[b];
        if bp.arrows.is_empty() {
            format!("e_{}", self.vertex_name(bp.source))
        } else {
            bp.arrows.iter().map(|&a| self.arrow(a).name.as_str()).collect::<Vec<_>>().join(".")
        }
    }
}

/// A finite-dimensional `k`-algebra `R` with a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundAlgebra {
    pub name: String,
    field: FieldSpec,
    basis_names: Vec<String>,
    /// `structure[i][j][k]`: coefficient of `b_k` in `b_i b_j`.
    structure: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    /// Columns span the Jacobson radical.
    radical: Matrix,
}

impl GroundAlgebra {
    /// `R = k`.
    pub fn field(field: FieldSpec) -> Arc<GroundAlgebra> {
        Arc::new(GroundAlgebra {
            name: "k".to_string(),
            field,
            basis_names: vec!["1".to_string()],
            structure: vec![vec![vec![field.one()]]],
            unit: vec![field.one()],
            radical: Matrix::zeros(field, 1, 0),
        })
    }

    /// `R = k[ε]/(ε²)` with basis `1, eps`.
    pub fn dual_numbers(field: FieldSpec) -> Arc<GroundAlgebra> {
        let (z, o) = (field.zero(), field.one());
        let structure = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
        ];
        Arc::new(GroundAlgebra {
            name: "dual".to_string(),
            field,
            basis_names: vec!["1".to_string(), "eps".to_string()],
            structure,
            unit: vec![o.clone(), z.clone()],
            radical: Matrix::column(field, vec![z, o]),
        })
    }

    /// General constructor. Checks associativity and the unit; the radical is
    /// taken from `radical` if given, otherwise from the trace form, which
    /// requires characteristic zero or larger than the dimension.
    pub fn from_structure(
        name: &str,
        field: FieldSpec,
        basis_names: Vec<String>,
        structure: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        radical: Option<Matrix>,
    ) -> Result<Arc<GroundAlgebra>, AlgebraError> {
        let d = basis_names.len();
        let bad = |m: &str| AlgebraError::Ground(m.to_string());
        if structure.len() != d || structure.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return Err(bad("structure constants must form a d x d x d table"));
        }
        if unit.len() != d {
            return Err(bad("unit has the wrong length"));
        }
        let mut g = GroundAlgebra {
            name: name.to_string(),
            field,
            basis_names,
            structure,
            unit,
            radical: Matrix::zeros(field, d, 0),
        };
        let e = |k: usize| {
            let mut v = Matrix::zeros(field, d, 1);
            v.set(k, 0, field.one());
            v
        };
        let u = Matrix::column(field, g.unit.clone());
        for i in 0..d {
            if g.mult_vec(&u, &e(i)) != e(i) || g.mult_vec(&e(i), &u) != e(i) {
                return Err(bad("unit is not two-sided"));
            }
            for j in 0..d {
                let lhs = g.left_mult_by_vec(&g.mult_vec(&e(i), &e(j)));
                let rhs = g.left_mult(i).dot(&g.left_mult(j));
                if lhs != rhs {
                    return Err(bad("multiplication is not associative"));
                }
            }
        }
        g.radical = match radical {
            Some(r) => r,
            None => {
                let ch = field.characteristic() as usize;
                if ch != 0 && ch <= d {
                    return Err(bad("radical must be declared in small characteristic"));
                }
                let mut form = Matrix::zeros(field, d, d);
                for i in 0..d {
                    for j in 0..d {
                        let m = g.left_mult(i).dot(&g.left_mult(j));
                        let mut tr = field.zero();
                        for k in 0..d {
                            tr += m.get(k, k);
                        }
                        form.set(i, j, tr);
                    }
                }
                form.kernel_basis()
            }
        };
        Ok(Arc::new(g))
    }

    pub fn field_spec(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Scalar] {
        &self.structure[i][j]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn radical(&self) -> &Matrix {
        &self.radical
    }

    /// `R / rad R ≅ k`.
    pub fn is_local(&self) -> bool {
        self.dim() - self.radical.cols() == 1
    }

    pub fn is_field(&self) -> bool {
        self.dim() == 1
    }

    /// Matrix of `x ↦ b_i x` (column `j` holds `b_i b_j`).
    pub fn left_mult(&self, i: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            for k in 0..d {
                m.set(k, j, self.structure[i][j][k].clone());
            }
        }
        m
    }

    /// Matrix of `x ↦ x b_i` (column `j` holds `b_j b_i`).
    pub fn right_mult(&self, i: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            for k in 0..d {
                m.set(k, j, self.structure[j][i][k].clone());
            }
        }
        m
    }

    fn left_mult_by_vec(&self, v: &Matrix) -> Matrix {
        let d = self.dim();
        let mut out = Matrix::zeros(self.field, d, d);
        for i in 0..d {
            let c = v.get(i, 0);
            if !c.is_zero() {
                out = out.add(&self.left_mult(i).scale(c)).expect("same shape");
            }
        }
        out
    }

    /// Product of two column vectors.
    pub fn mult_vec(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let d = self.dim();
        let mut out = Matrix::zeros(self.field, d, 1);
        for i in 0..d {
            for j in 0..d {
                let c = x.get(i, 0) * y.get(j, 0);
                if c.is_zero() {
                    continue;
                }
                for k in 0..d {
                    let s = &c * &self.structure[i][j][k];
                    out.add_at(k, 0, &s);
                }
            }
        }
        out
    }

    /// `R^op`: structure constants with the factors swapped.
    pub fn opposite(&self) -> Arc<GroundAlgebra> {
        let mut s = self.structure.clone();
        for (i, row) in s.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.structure[j][i].clone();
            }
        }
        let commutative = s == self.structure;
        Arc::new(GroundAlgebra {
            name: if commutative { self.name.clone() } else { format!("{}^op", self.name) },
            field: self.field,
            basis_names: self.basis_names.clone(),
            structure: s,
            unit: self.unit.clone(),
            radical: self.radical.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cycle_dimensions() {
        let f = FieldSpec::Prime(101);
        for n in 1..=5 {
            let a = fixtures::cycle(n, f).unwrap();
            assert_eq!(a.dimension(), 2 * n);
            for q in 0..n {
                assert_eq!(a.hom_dim(q, q), if n == 1 { 2 } else { 1 });
            }
        }
    }

    #[test]
    fn radical_layers_of_cycle() {
        let f = FieldSpec::Rationals;
        let a = fixtures::cycle(3, f).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                let expect = usize::from(q == (p + 2) % 3);
                assert_eq!(a.radical_layer(1, p, q), expect);
                assert_eq!(a.radical_layer(2, p, q), 0);
            }
        }
    }

    #[test]
    fn unbounded_loop_is_rejected() {
        let mut p = QuiverPresentation::new(vec!["0".into()]);
        p.add_arrow("x", 0, 0);
        let e = Algebra::build(p, FieldSpec::Prime(7), 6).unwrap_err();
        assert_eq!(e, AlgebraError::NotFinite { cap: 6 });
    }

    #[test]
    fn non_homogeneous_relation_reduces_to_shortest_term() {
        // x^2 = x^3 forces x^2 = x^4 = ... = 0 modulo the cap.
        let mut p = QuiverPresentation::new(vec!["0".into()]);
        p.add_arrow("x", 0, 0);
        p.add_relation(vec![(1, vec![0, 0]), (-1, vec![0, 0, 0])]);
        let a = Algebra::build(p, FieldSpec::Rationals, 8).unwrap();
        assert_eq!(a.dimension(), 2);
        assert_eq!(a.loewy_length(), 2);
    }

    #[test]
    fn relation_validation() {
        let mut p = QuiverPresentation::new(vec!["0".into(), "1".into()]);
        p.add_arrow("a", 0, 1);
        p.add_relation(vec![(1, vec![0])]);
        assert!(matches!(Algebra::build(p, FieldSpec::Rationals, 4), Err(AlgebraError::BadRelation { .. })));
        let mut p = QuiverPresentation::new(vec!["0".into(), "1".into()]);
        p.add_arrow("a", 0, 1);
        p.add_relation(vec![(1, vec![0, 0])]);
        assert!(matches!(Algebra::build(p, FieldSpec::Rationals, 4), Err(AlgebraError::BadRelation { .. })));
    }

    #[test]
    fn cycle_is_self_injective_with_shift() {
        let f = FieldSpec::Prime(7);
        for n in [1, 3, 5] {
            let a = fixtures::cycle(n, f).unwrap();
            let r = a.check_conditions();
            assert!(r.self_injective && r.radical_condition);
            for q in 0..n {
                assert_eq!(r.nakayama[q], Some((q + n - 1) % n));
            }
        }
    }

    #[test]
    fn a2_is_not_self_injective() {
        let a = fixtures::a2(FieldSpec::Prime(7)).unwrap();
        let r = a.check_conditions();
        assert!(!r.self_injective);
        assert_eq!(r.nakayama[0], Some(1));
        assert_eq!(r.nakayama[1], None);
    }

    #[test]
    fn opposite_has_transposed_homs() {
        let a = fixtures::za3_window(0, 5, FieldSpec::Prime(101)).unwrap();
        let op = a.opposite();
        for p in 0..a.num_vertices() {
            for q in 0..a.num_vertices() {
                assert_eq!(a.hom_dim(p, q), op.hom_dim(q, p));
            }
        }
    }

    #[test]
    fn trace_form_radical_of_dual_numbers() {
        let f = FieldSpec::Rationals;
        let d = GroundAlgebra::dual_numbers(f);
        let g = GroundAlgebra::from_structure(
            "dual",
            f,
            d.basis_names.clone(),
            d.structure.clone(),
            d.unit.clone(),
            None,
        )
        .unwrap();
        assert!(g.radical.span_eq(d.radical()));
        assert!(g.is_local());
    }

    #[test]
    fn table_without_unit_is_rejected() {
        let f = FieldSpec::Rationals;
        let (z, o) = (f.zero(), f.one());
        let s = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![o.clone(), z.clone()], vec![o.clone(), z.clone()]],
        ];
        let e = GroundAlgebra::from_structure("bad", f, vec!["a".into(), "b".into()], s, vec![o, z], None);
        assert!(e.is_err());
    }
}
