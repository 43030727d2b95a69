//! Representations of `Q` in `R`-modules (equivalently `Λ ⊗ R`-modules),
//! their morphisms, and the finite limits and colimits used everywhere else.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, GroundAlgebra};
use crate::exactla::{LinAlgError, Matrix};
use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("invalid representation: {0}")]
    Invalid(String),
    #[error("incompatible objects: {0}")]
    Incompatible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type ModResult<T> = Result<T, ModError>;

/// A representation of the quiver of `algebra` in left modules over `ground`.
#[derive(Clone)]
pub struct Representation {
    algebra: Arc<Algebra>,
    ground: Arc<GroundAlgebra>,
    dims: Vec<usize>,
    arrow_maps: Vec<Matrix>,
    ground_action: Vec<Vec<Matrix>>,
    path_cache: OnceLock<Vec<Matrix>>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation")
            .field("dims", &self.dims)
            .field("ground", &self.ground.name)
            .finish()
    }
}

impl Representation {
    /// Validated constructor: shapes, relations, ground action (module axioms)
    /// and `R`-linearity of the arrow maps.
    pub fn new(
        algebra: Arc<Algebra>,
        ground: Arc<GroundAlgebra>,
        dims: Vec<usize>,
        arrow_maps: Vec<Matrix>,
        ground_action: Vec<Vec<Matrix>>,
    ) -> ModResult<Representation> {
        let rep = Representation::from_parts(algebra, ground, dims, arrow_maps, ground_action);
        rep.validate()?;
        Ok(rep)
    }

    /// Unchecked constructor for internally derived data.
    pub fn from_parts(
        algebra: Arc<Algebra>,
        ground: Arc<GroundAlgebra>,
        dims: Vec<usize>,
        arrow_maps: Vec<Matrix>,
        ground_action: Vec<Vec<Matrix>>,
    ) -> Representation {
        Representation { algebra, ground, dims, arrow_maps, ground_action, path_cache: OnceLock::new() }
    }

    /// Representation over the ground field `k` with the given arrow maps.
    pub fn over_field(algebra: Arc<Algebra>, dims: Vec<usize>, arrow_maps: Vec<Matrix>) -> ModResult<Representation> {
        let field = algebra.field();
        let ground = GroundAlgebra::field(field);
        let action = dims.iter().map(|&d| vec![Matrix::identity(field, d)]).collect();
        Representation::new(algebra, ground, dims, arrow_maps, action)
    }

    pub fn zero(algebra: Arc<Algebra>, ground: Arc<GroundAlgebra>) -> Representation {
        let field = algebra.field();
        let n = algebra.num_vertices();
        let arrow_maps = (0..algebra.num_arrows()).map(|_| Matrix::zeros(field, 0, 0)).collect();
        let action = (0..n).map(|_| (0..ground.dim()).map(|_| Matrix::zeros(field, 0, 0)).collect()).collect();
        Representation::from_parts(algebra, ground, vec![0; n], arrow_maps, action)
    }

    pub fn validate(&self) -> ModResult<()> {
        let alg = &self.algebra;
        let field = alg.field();
        let bad = |m: String| Err(ModError::Invalid(m));
        if self.ground.field_spec() != field {
            return bad("ground algebra and quiver algebra use different fields".into());
        }
        if self.dims.len() != alg.num_vertices() {
            return bad(format!("{} vertex spaces for {} vertices", self.dims.len(), alg.num_vertices()));
        }
        if self.arrow_maps.len() != alg.num_arrows() {
            return bad(format!("{} arrow maps for {} arrows", self.arrow_maps.len(), alg.num_arrows()));
        }
        for (a, m) in self.arrow_maps.iter().enumerate() {
            let arr = alg.arrow(a);
            if m.field() != field {
                return bad(format!("arrow `{}`: wrong field", arr.name));
            }
            if m.rows() != self.dims[arr.to] || m.cols() != self.dims[arr.from] {
                return bad(format!(
                    "arrow `{}`: matrix is {}x{}, expected {}x{}",
                    arr.name,
                    m.rows(),
                    m.cols(),
                    self.dims[arr.to],
                    self.dims[arr.from]
                ));
            }
        }
        if self.ground_action.len() != alg.num_vertices() {
            return bad("ground action must be given at every vertex".into());
        }
        let gd = self.ground.dim();
        for (v, acts) in self.ground_action.iter().enumerate() {
            let vname = alg.vertex_name(v);
            if acts.len() != gd {
                return bad(format!("vertex `{vname}`: {} ground matrices for {gd} basis elements", acts.len()));
            }
            let d = self.dims[v];
            for (i, m) in acts.iter().enumerate() {
                if m.rows() != d || m.cols() != d || m.field() != field {
                    return bad(format!("vertex `{vname}`, ground element `{}`: wrong shape", self.ground.basis_names()[i]));
                }
            }
            // unit acts as the identity
            let mut unit = Matrix::zeros(field, d, d);
            for (i, c) in self.ground.unit().iter().enumerate() {
                if !c.is_zero() {
                    unit = unit.add(&acts[i].scale(c))?;
                }
            }
            if unit != Matrix::identity(field, d) {
                return bad(format!("vertex `{vname}`: the unit of R does not act as the identity"));
            }
            for i in 0..gd {
                for j in 0..gd {
                    let lhs = acts[i].dot(&acts[j]);
                    let rhs = self.ground_combination(v, self.ground.structure(i, j));
                    if lhs != rhs {
                        return bad(format!(
                            "vertex `{vname}`: action of `{}`·`{}` is not multiplicative",
                            self.ground.basis_names()[i],
                            self.ground.basis_names()[j]
                        ));
                    }
                }
            }
        }
        for (a, m) in self.arrow_maps.iter().enumerate() {
            let arr = alg.arrow(a);
            for i in 0..gd {
                if m.dot(&self.ground_action[arr.from][i]) != self.ground_action[arr.to][i].dot(m) {
                    return bad(format!(
                        "arrow `{}` from vertex `{}` to vertex `{}` does not commute with `{}`",
                        arr.name,
                        alg.vertex_name(arr.from),
                        alg.vertex_name(arr.to),
                        self.ground.basis_names()[i]
                    ));
                }
            }
        }
        for (ri, rel) in alg.presentation().relations.iter().enumerate() {
            let (s, t) = alg.presentation().path_ends(&rel.terms[0].1).expect("validated");
            let mut sum = Matrix::zeros(field, self.dims[t], self.dims[s]);
            for (c, p) in &rel.terms {
                let c = field.from_rational(c).map_err(AlgebraError::from)?;
                sum = sum.add(&self.arrow_path(p).scale(&c))?;
            }
            if !sum.is_zero() {
                return bad(format!("relation {ri} does not hold"));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn ground(&self) -> &Arc<GroundAlgebra> {
        &self.ground
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix {
        &self.arrow_maps[a]
    }

    pub fn arrow_maps(&self) -> &[Matrix] {
        &self.arrow_maps
    }

    pub fn ground_action(&self, v: usize) -> &[Matrix] {
        &self.ground_action[v]
    }

    /// Matrix by which the ground element with coordinates `coeffs` acts at `v`.
    pub fn ground_combination(&self, v: usize, coeffs: &[Scalar]) -> Matrix {
        let d = self.dims[v];
        let mut out = Matrix::zeros(self.field(), d, d);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_block(0, 0, &self.ground_action[v][i].scale(c));
            }
        }
        out
    }

    /// `X(an) ... X(a1)` for an arrow list `[a1, .., an]` (nonempty).
    pub fn arrow_path(&self, path: &[usize]) -> Matrix {
        let start = self.algebra.arrow(path[0]).from;
        let mut m = Matrix::identity(self.field(), self.dims[start]);
        for &a in path {
            m = self.arrow_maps[a].dot(&m);
        }
        m
    }

    /// Action of a basis path of `Λ`.
    pub fn path_action(&self, b: usize) -> &Matrix {
        &self.path_cache.get_or_init(|| {
            self.algebra
                .basis()
                .iter()
                .map(|bp| {
                    if bp.arrows.is_empty() {
                        Matrix::identity(self.field(), self.dims[bp.source])
                    } else {
                        self.arrow_path(&bp.arrows)
                    }
                })
                .collect()
        })[b]
    }

    /// Same quiver representation with `R` forgotten (ground `k`).
    pub fn forget_ground(&self) -> Representation {
        let field = self.field();
        let action = self.dims.iter().map(|&d| vec![Matrix::identity(field, d)]).collect();
        Representation::from_parts(
            self.algebra.clone(),
            GroundAlgebra::field(field),
            self.dims.clone(),
            self.arrow_maps.clone(),
            action,
        )
    }

    /// `D X` over `(Λ^op, R^op)`: transposed arrow maps and ground action.
    pub fn dual(&self) -> Representation {
        Representation::from_parts(
            self.algebra.opposite(),
            self.ground.opposite(),
            self.dims.clone(),
            self.arrow_maps.iter().map(Matrix::transpose).collect(),
            self.ground_action.iter().map(|v| v.iter().map(Matrix::transpose).collect()).collect(),
        )
    }

    /// The `R`-module at vertex `v`, as a representation of the point.
    pub fn at_vertex(&self, v: usize) -> Representation {
        r_module(self.ground.clone(), self.dims[v], self.ground_action[v].clone())
    }

    pub fn same_category(&self, other: &Representation) -> bool {
        self.algebra.is_same(&other.algebra) && *self.ground == *other.ground
    }
}

/// An `R`-module with the given action, as a representation of the point.
pub fn r_module(ground: Arc<GroundAlgebra>, dim: usize, action: Vec<Matrix>) -> Representation {
    let alg = Algebra::point(ground.field_spec());
    Representation::from_parts(alg, ground, vec![dim], Vec::new(), vec![action])
}

/// `R` as a left module over itself.
pub fn regular_module(ground: &Arc<GroundAlgebra>) -> Representation {
    let action = (0..ground.dim()).map(|i| ground.left_mult(i)).collect();
    r_module(ground.clone(), ground.dim(), action)
}

/// `D(R_R)`: `(r·f)(x) = f(x r)`.
pub fn dual_regular_module(ground: &Arc<GroundAlgebra>) -> Representation {
    let action = (0..ground.dim()).map(|i| ground.right_mult(i).transpose()).collect();
    r_module(ground.clone(), ground.dim(), action)
}

/// The simple module `R / rad R` of a local ground algebra.
pub fn residue_module(ground: &Arc<GroundAlgebra>) -> ModResult<Representation> {
    if !ground.is_local() {
        return Err(ModError::Precondition("residue field needs a local ground algebra".into()));
    }
    let reg = Arc::new(regular_module(ground));
    let rad = ground.radical().clone();
    let (q, _) = quotient_by_subspaces(&reg, &[rad])?;
    Ok((*q).clone())
}

/// `R^n`.
pub fn free_r_module(ground: &Arc<GroundAlgebra>, n: usize) -> Representation {
    let field = ground.field_spec();
    let action = (0..ground.dim())
        .map(|i| Matrix::block_diag(field, &vec![ground.left_mult(i); n]))
        .collect();
    r_module(ground.clone(), ground.dim() * n, action)
}

/// A morphism of representations, one matrix per vertex.
#[derive(Clone, Debug)]
pub struct RepMorphism {
    pub source: Arc<Representation>,
    pub target: Arc<Representation>,
    pub maps: Vec<Matrix>,
}

impl RepMorphism {
    /// Validated constructor: shapes, naturality and `R`-linearity.
    pub fn new(source: Arc<Representation>, target: Arc<Representation>, maps: Vec<Matrix>) -> ModResult<Self> {
        let f = RepMorphism { source, target, maps };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> ModResult<()> {
        let (x, y) = (&self.source, &self.target);
        if !x.algebra.is_same(&y.algebra) {
            return Err(ModError::Incompatible("morphism between different quiver algebras".into()));
        }
        if self.maps.len() != x.dims.len() {
            return Err(ModError::Invalid("one matrix per vertex required".into()));
        }
        for (v, m) in self.maps.iter().enumerate() {
            if m.rows() != y.dims[v] || m.cols() != x.dims[v] {
                return Err(ModError::Invalid(format!("vertex `{}`: wrong shape", x.algebra.vertex_name(v))));
            }
        }
        for a in 0..x.algebra.num_arrows() {
            let arr = x.algebra.arrow(a);
            if y.arrow_maps[a].dot(&self.maps[arr.from]) != self.maps[arr.to].dot(&x.arrow_maps[a]) {
                return Err(ModError::Invalid(format!("not natural along arrow `{}`", arr.name)));
            }
        }
        if *x.ground == *y.ground {
            for v in 0..x.dims.len() {
                for i in 0..x.ground.dim() {
                    if y.ground_action[v][i].dot(&self.maps[v]) != self.maps[v].dot(&x.ground_action[v][i]) {
                        return Err(ModError::Invalid(format!(
                            "vertex `{}`: not linear over `{}`",
                            x.algebra.vertex_name(v),
                            x.ground.basis_names()[i]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_parts(source: Arc<Representation>, target: Arc<Representation>, maps: Vec<Matrix>) -> Self {
        RepMorphism { source, target, maps }
    }

    pub fn identity(x: &Arc<Representation>) -> Self {
        let maps = x.dims.iter().map(|&d| Matrix::identity(x.field(), d)).collect();
        RepMorphism { source: x.clone(), target: x.clone(), maps }
    }

    pub fn zero(x: &Arc<Representation>, y: &Arc<Representation>) -> Self {
        let maps = x.dims.iter().zip(&y.dims).map(|(&a, &b)| Matrix::zeros(x.field(), b, a)).collect();
        RepMorphism { source: x.clone(), target: y.clone(), maps }
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(g, f)| g.dot(f)).collect();
        RepMorphism { source: other.source.clone(), target: self.target.clone(), maps }
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b).expect("same shape")).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn neg(&self) -> RepMorphism {
        RepMorphism { source: self.source.clone(), target: self.target.clone(), maps: self.maps.iter().map(Matrix::neg).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> RepMorphism {
        RepMorphism { source: self.source.clone(), target: self.target.clone(), maps: self.maps.iter().map(|m| m.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn equals(&self, other: &RepMorphism) -> bool {
        self.maps == other.maps
    }

    pub fn is_mono(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.is_square() && m.rank() == m.rows())
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Matrix::rank).sum()
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        let maps = self.maps.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(RepMorphism { source: self.target.clone(), target: self.source.clone(), maps })
    }

    /// Kernel object with its inclusion.
    pub fn kernel(&self) -> ModResult<(Arc<Representation>, RepMorphism)> {
        let bases: Vec<Matrix> = self.maps.iter().map(Matrix::kernel_basis).collect();
        sub_by_subspaces(&self.source, &bases)
    }

    /// Cokernel object with its projection.
    pub fn cokernel(&self) -> ModResult<(Arc<Representation>, RepMorphism)> {
        let bases: Vec<Matrix> = self.maps.iter().map(Matrix::image_basis).collect();
        quotient_by_subspaces(&self.target, &bases)
    }

    /// Image object with the epi onto it and the mono out of it.
    pub fn image(&self) -> ModResult<(Arc<Representation>, RepMorphism, RepMorphism)> {
        let bases: Vec<Matrix> = self.maps.iter().map(Matrix::image_basis).collect();
        let (im, incl) = sub_by_subspaces(&self.target, &bases)?;
        let epi = factor_through_mono(self, &incl)?
            .ok_or_else(|| ModError::Invalid("map does not factor through its image".into()))?;
        Ok((im, epi, incl))
    }
}

/// Subrepresentation spanned vertexwise by the columns of `bases` (which must
/// be linearly independent and invariant), with its inclusion.
pub fn sub_by_subspaces(x: &Arc<Representation>, bases: &[Matrix]) -> ModResult<(Arc<Representation>, RepMorphism)> {
    let alg = &x.algebra;
    let mut arrow_maps = Vec::with_capacity(alg.num_arrows());
    for a in 0..alg.num_arrows() {
        let arr = alg.arrow(a);
        let img = x.arrow_maps[a].dot(&bases[arr.from]);
        let m = bases[arr.to]
            .solve(&img)?
            .ok_or_else(|| ModError::Invalid(format!("subspaces not invariant under `{}`", arr.name)))?;
        arrow_maps.push(m);
    }
    let mut action = Vec::with_capacity(bases.len());
    for (v, b) in bases.iter().enumerate() {
        let mut acts = Vec::with_capacity(x.ground.dim());
        for i in 0..x.ground.dim() {
            let img = x.ground_action[v][i].dot(b);
            let m = b
                .solve(&img)?
                .ok_or_else(|| ModError::Invalid("subspaces not invariant under the ground action".into()))?;
            acts.push(m);
        }
        action.push(acts);
    }
    let dims = bases.iter().map(Matrix::cols).collect();
    let sub = Arc::new(Representation::from_parts(alg.clone(), x.ground.clone(), dims, arrow_maps, action));
    let incl = RepMorphism::from_parts(sub.clone(), x.clone(), bases.to_vec());
    Ok((sub, incl))
}

/// Quotient of `x` by the (invariant) subspaces spanned by `bases`, with the projection.
pub fn quotient_by_subspaces(x: &Arc<Representation>, bases: &[Matrix]) -> ModResult<(Arc<Representation>, RepMorphism)> {
    let alg = &x.algebra;
    let field = x.field();
    let mut proj = Vec::with_capacity(bases.len());
    let mut sect = Vec::with_capacity(bases.len());
    for (v, b) in bases.iter().enumerate() {
        let span = if b.cols() == 0 { Matrix::zeros(field, x.dims[v], 0) } else { b.clone() };
        let (p, d) = span.cokernel_projection();
        let s = p.solve(&Matrix::identity(field, d))?.expect("projection is surjective");
        proj.push(p);
        sect.push(s);
    }
    let arrow_maps = (0..alg.num_arrows())
        .map(|a| {
            let arr = alg.arrow(a);
            proj[arr.to].dot(&x.arrow_maps[a]).dot(&sect[arr.from])
        })
        .collect();
    let action = (0..bases.len())
        .map(|v| (0..x.ground.dim()).map(|i| proj[v].dot(&x.ground_action[v][i]).dot(&sect[v])).collect())
        .collect();
    let dims = proj.iter().map(Matrix::rows).collect();
    let q = Arc::new(Representation::from_parts(alg.clone(), x.ground.clone(), dims, arrow_maps, action));
    let p = RepMorphism::from_parts(x.clone(), q.clone(), proj);
    Ok((q, p))
}

/// The unique `u` with `mono ∘ u = f`, if it exists.
pub fn factor_through_mono(f: &RepMorphism, mono: &RepMorphism) -> ModResult<Option<RepMorphism>> {
    let mut maps = Vec::with_capacity(f.maps.len());
    for (m, g) in mono.maps.iter().zip(&f.maps) {
        match m.solve(g)? {
            Some(u) => maps.push(u),
            None => return Ok(None),
        }
    }
    Ok(Some(RepMorphism::from_parts(f.source.clone(), mono.source.clone(), maps)))
}

/// The unique `u` with `u ∘ epi = f`, if it exists.
pub fn factor_through_epi(f: &RepMorphism, epi: &RepMorphism) -> ModResult<Option<RepMorphism>> {
    let mut maps = Vec::with_capacity(f.maps.len());
    for (e, g) in epi.maps.iter().zip(&f.maps) {
        match e.solve_left(g)? {
            Some(u) => maps.push(u),
            None => return Ok(None),
        }
    }
    Ok(Some(RepMorphism::from_parts(epi.target.clone(), f.target.clone(), maps)))
}

/// `X ⊕ Y` with inclusions and projections.
pub struct DirectSum {
    pub object: Arc<Representation>,
    pub inclusions: Vec<RepMorphism>,
    pub projections: Vec<RepMorphism>,
}

pub fn direct_sum(parts: &[Arc<Representation>]) -> ModResult<DirectSum> {
    let first = parts.first().ok_or_else(|| ModError::Precondition("empty direct sum".into()))?;
    for p in parts {
        if !p.same_category(first) {
            return Err(ModError::Incompatible("direct sum of representations in different categories".into()));
        }
    }
    let alg = first.algebra.clone();
    let field = first.field();
    let n = alg.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let arrow_maps = (0..alg.num_arrows())
        .map(|a| Matrix::block_diag(field, &parts.iter().map(|p| p.arrow_maps[a].clone()).collect::<Vec<_>>()))
        .collect();
    let action = (0..n)
        .map(|v| {
            (0..first.ground.dim())
                .map(|i| Matrix::block_diag(field, &parts.iter().map(|p| p.ground_action[v][i].clone()).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let object = Arc::new(Representation::from_parts(alg, first.ground.clone(), dims.clone(), arrow_maps, action));
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offsets = vec![0usize; n];
    for p in parts {
        let mut inc = Vec::with_capacity(n);
        let mut pr = Vec::with_capacity(n);
        for v in 0..n {
            let mut i = Matrix::zeros(field, dims[v], p.dims[v]);
            i.set_block(offsets[v], 0, &Matrix::identity(field, p.dims[v]));
            pr.push(i.transpose());
            inc.push(i);
            offsets[v] += p.dims[v];
        }
        inclusions.push(RepMorphism::from_parts(p.clone(), object.clone(), inc));
        projections.push(RepMorphism::from_parts(object.clone(), p.clone(), pr));
    }
    Ok(DirectSum { object, inclusions, projections })
}

/// Pullback of `f: A -> C` and `g: B -> C`.
pub struct Pullback {
    pub object: Arc<Representation>,
    pub to_a: RepMorphism,
    pub to_b: RepMorphism,
}

impl Pullback {
    /// The unique map from a cone `(h_a, h_b)` with `f h_a = g h_b`.
    pub fn factor(&self, h_a: &RepMorphism, h_b: &RepMorphism) -> ModResult<Option<RepMorphism>> {
        let n = h_a.maps.len();
        let mut maps = Vec::with_capacity(n);
        for v in 0..n {
            let joint = self.to_a.maps[v].vstack(&self.to_b.maps[v])?;
            let rhs = h_a.maps[v].vstack(&h_b.maps[v])?;
            match joint.solve(&rhs)? {
                Some(u) => maps.push(u),
                None => return Ok(None),
            }
        }
        Ok(Some(RepMorphism::from_parts(h_a.source.clone(), self.object.clone(), maps)))
    }
}

pub fn pullback(f: &RepMorphism, g: &RepMorphism) -> ModResult<Pullback> {
    if !Arc::ptr_eq(&f.target, &g.target) && f.target.dims != g.target.dims {
        return Err(ModError::Incompatible("pullback of maps with different codomains".into()));
    }
    let sum = direct_sum(&[f.source.clone(), g.source.clone()])?;
    let diff = f.after(&sum.projections[0]).add(&g.after(&sum.projections[1]).neg());
    let (obj, incl) = diff.kernel()?;
    let to_a = sum.projections[0].after(&incl);
    let to_b = sum.projections[1].after(&incl);
    Ok(Pullback { object: obj, to_a, to_b })
}

/// Pushout of `f: C -> A` and `g: C -> B`.
pub struct Pushout {
    pub object: Arc<Representation>,
    pub from_a: RepMorphism,
    pub from_b: RepMorphism,
}

impl Pushout {
    /// The unique map to a cocone `(k_a, k_b)` with `k_a f = k_b g`.
    pub fn factor(&self, k_a: &RepMorphism, k_b: &RepMorphism) -> ModResult<Option<RepMorphism>> {
        let n = k_a.maps.len();
        let mut maps = Vec::with_capacity(n);
        for v in 0..n {
            let joint = self.from_a.maps[v].hstack(&self.from_b.maps[v])?;
            let rhs = k_a.maps[v].hstack(&k_b.maps[v])?;
            match joint.solve_left(&rhs)? {
                Some(u) => maps.push(u),
                None => return Ok(None),
            }
        }
        Ok(Some(RepMorphism::from_parts(self.object.clone(), k_a.target.clone(), maps)))
    }
}

pub fn pushout(f: &RepMorphism, g: &RepMorphism) -> ModResult<Pushout> {
    if f.source.dims != g.source.dims {
        return Err(ModError::Incompatible("pushout of maps with different domains".into()));
    }
    let sum = direct_sum(&[f.target.clone(), g.target.clone()])?;
    let diff = sum.inclusions[0].after(f).add(&sum.inclusions[1].after(g).neg());
    let (obj, proj) = diff.cokernel()?;
    let from_a = proj.after(&sum.inclusions[0]);
    let from_b = proj.after(&sum.inclusions[1]);
    Ok(Pushout { object: obj, from_a, from_b })
}

/// `X ⊗_k B` for `X` over `(Λ, k)` and an `R`-module `B`; coordinate index
/// `m * dim B + b`.
pub fn tensor_k(x: &Representation, b: &Representation) -> ModResult<Representation> {
    if !x.ground.is_field() {
        return Err(ModError::Precondition("left tensor factor must have ground k".into()));
    }
    if b.algebra.num_vertices() != 1 {
        return Err(ModError::Precondition("right tensor factor must be an R-module".into()));
    }
    let field = x.field();
    let db = b.dims[0];
    let arrow_maps = x.arrow_maps.iter().map(|m| m.kron(&Matrix::identity(field, db))).collect();
    let action = x
        .dims
        .iter()
        .map(|&d| b.ground_action[0].iter().map(|r| Matrix::identity(field, d).kron(r)).collect())
        .collect();
    let dims = x.dims.iter().map(|d| d * db).collect();
    Ok(Representation::from_parts(x.algebra.clone(), b.ground.clone(), dims, arrow_maps, action))
}

/// `f ⊗ g` between tensor products built with [`tensor_k`].
pub fn tensor_k_map(
    f: &RepMorphism,
    g: &RepMorphism,
    source: &Arc<Representation>,
    target: &Arc<Representation>,
) -> RepMorphism {
    let gm = &g.maps[0];
    let maps = f.maps.iter().map(|m| m.kron(gm)).collect();
    RepMorphism::from_parts(source.clone(), target.clone(), maps)
}

/// `S_q(N)`: the `R`-module `N` placed at vertex `q`, zero elsewhere.
pub fn s_functor(algebra: &Arc<Algebra>, q: usize, n: &Representation) -> Representation {
    let field = algebra.field();
    let ground = n.ground.clone();
    let dims: Vec<usize> = (0..algebra.num_vertices()).map(|v| if v == q { n.dims[0] } else { 0 }).collect();
    let arrow_maps = (0..algebra.num_arrows())
        .map(|a| {
            let arr = algebra.arrow(a);
            Matrix::zeros(field, dims[arr.to], dims[arr.from])
        })
        .collect();
    let action = dims
        .iter()
        .enumerate()
        .map(|(v, &d)| {
            if v == q {
                n.ground_action[0].clone()
            } else {
                (0..ground.dim()).map(|_| Matrix::zeros(field, d, d)).collect()
            }
        })
        .collect();
    Representation::from_parts(algebra.clone(), ground, dims, arrow_maps, action)
}

/// `S⟨q⟩` over the ground field.
pub fn simple(algebra: &Arc<Algebra>, q: usize) -> Representation {
    let field = algebra.field();
    let k = GroundAlgebra::field(field);
    s_functor(algebra, q, &r_module(k, 1, vec![Matrix::identity(field, 1)]))
}

/// `S_q` applied to an `R`-module map.
pub fn s_functor_map(
    algebra: &Arc<Algebra>,
    q: usize,
    g: &RepMorphism,
    source: &Arc<Representation>,
    target: &Arc<Representation>,
) -> RepMorphism {
    let field = algebra.field();
    let maps = (0..algebra.num_vertices())
        .map(|v| if v == q { g.maps[0].clone() } else { Matrix::zeros(field, target.dims[v], source.dims[v]) })
        .collect();
    RepMorphism::from_parts(source.clone(), target.clone(), maps)
}

/// A free `Λ ⊗ R`-module `⊕_j P⟨v_j⟩ ⊗ R`. At vertex `w`, generator `j`
/// occupies a block of `dim Q(v_j, w) * dim R` coordinates, path-major.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub gens: Vec<usize>,
    pub rep: Arc<Representation>,
    offsets: Vec<Vec<usize>>,
}

impl FreeModule {
    pub fn new(algebra: &Arc<Algebra>, ground: &Arc<GroundAlgebra>, gens: Vec<usize>) -> FreeModule {
        let field = algebra.field();
        let n = algebra.num_vertices();
        let dr = ground.dim();
        let mut offsets = vec![vec![0; n]; gens.len()];
        let mut dims = vec![0usize; n];
        for w in 0..n {
            for (j, &v) in gens.iter().enumerate() {
                offsets[j][w] = dims[w];
                dims[w] += algebra.hom_dim(v, w) * dr;
            }
        }
        let idr = Matrix::identity(field, dr);
        let arrow_maps = (0..algebra.num_arrows())
            .map(|a| {
                let blocks: Vec<Matrix> =
                    gens.iter().map(|&v| algebra.projective_arrow_action(v, a).kron(&idr)).collect();
                Matrix::block_diag(field, &blocks)
            })
            .collect();
        let action = (0..n)
            .map(|w| {
                (0..dr)
                    .map(|i| {
                        let l = ground.left_mult(i);
                        let blocks: Vec<Matrix> = gens
                            .iter()
                            .map(|&v| Matrix::identity(field, algebra.hom_dim(v, w)).kron(&l))
                            .collect();
                        Matrix::block_diag(field, &blocks)
                    })
                    .collect()
            })
            .collect();
        let rep = Arc::new(Representation::from_parts(algebra.clone(), ground.clone(), dims, arrow_maps, action));
        FreeModule { gens, rep, offsets }
    }

    /// Offset of generator `j`'s block at vertex `w`.
    pub fn offset(&self, j: usize, w: usize) -> usize {
        self.offsets[j][w]
    }

    /// Coordinate of the generator `e_{v_j} ⊗ 1` in `P(v_j)`.
    pub fn generator_vector(&self, j: usize) -> Matrix {
        let rep = &self.rep;
        let v = self.gens[j];
        let alg = rep.algebra();
        let ground = rep.ground();
        let mut e = Matrix::zeros(rep.field(), rep.dims[v], 1);
        let pos = alg.local_index(alg.vertex_basis(v));
        for (s, c) in ground.unit().iter().enumerate() {
            e.set(self.offsets[j][v] + pos * ground.dim() + s, 0, c.clone());
        }
        e
    }

    /// Yoneda: the morphism sending generator `j` to the column `images[j]` in `Y(v_j)`.
    pub fn map_to(&self, y: &Arc<Representation>, images: &[Matrix]) -> RepMorphism {
        let alg = self.rep.algebra().clone();
        let field = alg.field();
        let dr = self.rep.ground().dim();
        let n = alg.num_vertices();
        let maps = (0..n)
            .map(|w| {
                let mut m = Matrix::zeros(field, y.dims[w], self.rep.dims[w]);
                for (j, &v) in self.gens.iter().enumerate() {
                    for (pi, &u) in alg.pair_basis(v, w).iter().enumerate() {
                        let moved = y.path_action(u).dot(&images[j]);
                        for s in 0..dr {
                            let col = if dr == 1 && y.ground().dim() != 1 {
                                moved.clone()
                            } else {
                                y.ground_action[w][s].dot(&moved)
                            };
                            m.set_block(0, self.offsets[j][w] + pi * dr + s, &col);
                        }
                    }
                }
                m
            })
            .collect();
        RepMorphism::from_parts(self.rep.clone(), y.clone(), maps)
    }

    /// Splits a vector of `P(w)` into `(generator, basis path, ground index, coefficient)` terms.
    pub fn decompose(&self, w: usize, vec: &Matrix) -> Vec<(usize, usize, usize, Scalar)> {
        let alg = self.rep.algebra();
        let dr = self.rep.ground().dim();
        let mut out = Vec::new();
        for (j, &v) in self.gens.iter().enumerate() {
            for (pi, &u) in alg.pair_basis(v, w).iter().enumerate() {
                for s in 0..dr {
                    let c = vec.get(self.offsets[j][w] + pi * dr + s, 0);
                    if !c.is_zero() {
                        out.push((j, u, s, c.clone()));
                    }
                }
            }
        }
        out
    }
}

/// Projective cover `π: F -> X`. When `R` is local, `F` is minimal.
pub struct Cover {
    pub free: FreeModule,
    pub map: RepMorphism,
    pub minimal: bool,
}

/// Vertexwise basis of `rad(Λ⊗R)·X`.
pub fn radical_subspaces(x: &Representation) -> Vec<Matrix> {
    let alg = x.algebra();
    let field = x.field();
    let rad = x.ground().radical();
    (0..alg.num_vertices())
        .map(|w| {
            let mut span = Matrix::zeros(field, x.dims[w], 0);
            for a in 0..alg.num_arrows() {
                if alg.arrow(a).to == w {
                    span = span.hstack(&x.arrow_maps[a]).expect("rows agree");
                }
            }
            for c in 0..rad.cols() {
                let r = x.ground_combination(w, &rad.col_vec(c));
                span = span.hstack(&r).expect("rows agree");
            }
            span.image_basis()
        })
        .collect()
}

pub fn projective_cover(x: &Arc<Representation>) -> Cover {
    let alg = x.algebra().clone();
    let rads = radical_subspaces(x);
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for (w, r) in rads.iter().enumerate() {
        let comp = r.complement_basis();
        for c in 0..comp.cols() {
            gens.push(w);
            images.push(comp.select_columns(&[c]));
        }
    }
    let free = FreeModule::new(&alg, x.ground(), gens);
    let map = free.map_to(x, &images);
    Cover { free, map, minimal: x.ground().is_local() }
}

/// Injective envelope `ι: X -> I`, obtained by dualizing a cover of `D X`.
/// The target is expressed as the dual of a free module over `(Λ^op, R^op)`.
pub struct Envelope {
    pub cofree: FreeModule,
    pub object: Arc<Representation>,
    pub map: RepMorphism,
}

pub fn injective_envelope(x: &Arc<Representation>) -> Envelope {
    let dx = Arc::new(x.dual());
    let cover = projective_cover(&dx);
    let object = Arc::new(cover.free.rep.dual());
    let maps = cover.map.maps.iter().map(Matrix::transpose).collect();
    let map = RepMorphism::from_parts(x.clone(), object.clone(), maps);
    Envelope { cofree: cover.free, object, map }
}

/// Whether `X` is projective over `Λ ⊗ R`.
pub fn is_projective(x: &Arc<Representation>) -> ModResult<bool> {
    let cover = projective_cover(x);
    if cover.minimal {
        return Ok(cover.free.rep.total_dim() == x.total_dim());
    }
    let f = cover.free.rep.clone();
    let homs = hom_basis(x, &f)?;
    let id = RepMorphism::identity(x);
    split_by(&homs, &id, |h| cover.map.after(h))
}

/// Whether `X` is injective over `Λ ⊗ R`.
pub fn is_injective(x: &Arc<Representation>) -> ModResult<bool> {
    is_projective(&Arc::new(x.dual()))
}

/// Whether some combination `Σ c_i h_i` satisfies `post(Σ c_i h_i) = target`.
fn split_by(homs: &[RepMorphism], target: &RepMorphism, post: impl Fn(&RepMorphism) -> RepMorphism) -> ModResult<bool> {
    let field = target.source.field();
    let flat = |m: &RepMorphism| -> Vec<Scalar> { m.maps.iter().flat_map(|x| x.entries().iter().cloned()).collect() };
    let t = flat(target);
    let mut cols = Matrix::zeros(field, t.len(), 0);
    for h in homs {
        cols = cols.hstack(&Matrix::column(field, flat(&post(h))))?;
    }
    Ok(cols.solve(&Matrix::column(field, t))?.is_some())
}

/// Basis of `Hom(X, Y)`. The ground action is respected when both sides
/// share the ground algebra; if either side has ground `k`, morphisms are
/// only required to be natural (homs over the quiver).
pub fn hom_basis(x: &Arc<Representation>, y: &Arc<Representation>) -> ModResult<Vec<RepMorphism>> {
    if !x.algebra.is_same(&y.algebra) {
        return Err(ModError::Incompatible("hom between different quiver algebras".into()));
    }
    let respect = *x.ground == *y.ground && !x.ground.is_field();
    if !respect && !(x.ground.is_field() || y.ground.is_field()) {
        return Err(ModError::Incompatible("hom between modules over different ground algebras".into()));
    }
    let alg = &x.algebra;
    let field = x.field();
    let n = alg.num_vertices();
    let mut offs = vec![0usize; n + 1];
    for v in 0..n {
        offs[v + 1] = offs[v] + y.dims[v] * x.dims[v];
    }
    let nvars = offs[n];
    let mut blocks: Vec<Matrix> = Vec::new();
    for a in 0..alg.num_arrows() {
        let arr = alg.arrow(a);
        let (p, q) = (arr.from, arr.to);
        let rows = y.dims[q] * x.dims[p];
        if rows == 0 {
            continue;
        }
        let mut eq = Matrix::zeros(field, rows, nvars);
        // Y(a) f_p - f_q X(a) = 0, row-major vectorization.
        eq.add_block(0, offs[p], &y.arrow_maps[a].kron(&Matrix::identity(field, x.dims[p])));
        eq.add_block(0, offs[q], &Matrix::identity(field, y.dims[q]).kron(&x.arrow_maps[a].transpose()).neg());
        blocks.push(eq);
    }
    if respect {
        for v in 0..n {
            let rows = y.dims[v] * x.dims[v];
            if rows == 0 {
                continue;
            }
            for i in 0..x.ground.dim() {
                if x.ground.unit()[i].is_one() && x.ground.unit().iter().filter(|c| !c.is_zero()).count() == 1 {
                    continue;
                }
                let mut eq = Matrix::zeros(field, rows, nvars);
                eq.add_block(0, offs[v], &y.ground_action[v][i].kron(&Matrix::identity(field, x.dims[v])));
                eq.add_block(
                    0,
                    offs[v],
                    &Matrix::identity(field, y.dims[v]).kron(&x.ground_action[v][i].transpose()).neg(),
                );
                blocks.push(eq);
            }
        }
    }
    let system = Matrix::vstack_all(field, nvars, &blocks);
    let ker = system.kernel_basis();
    let mut out = Vec::with_capacity(ker.cols());
    for c in 0..ker.cols() {
        let col = ker.col_vec(c);
        let maps = (0..n)
            .map(|v| {
                Matrix::from_vec(field, y.dims[v], x.dims[v], col[offs[v]..offs[v + 1]].to_vec())
                    .expect("sizes match")
            })
            .collect();
        out.push(RepMorphism::from_parts(x.clone(), y.clone(), maps));
    }
    Ok(out)
}

/// Searches `Hom(X, Y)` for an isomorphism with seeded random combinations.
pub fn find_isomorphism(x: &Arc<Representation>, y: &Arc<Representation>, seed: u64) -> ModResult<Option<RepMorphism>> {
    if x.dims != y.dims {
        return Ok(None);
    }
    if x.total_dim() == 0 {
        return Ok(Some(RepMorphism::zero(x, y)));
    }
    let homs = hom_basis(x, y)?;
    if homs.is_empty() {
        return Ok(None);
    }
    let field = x.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for h in &homs {
        if h.is_iso() {
            return Ok(Some(h.clone()));
        }
    }
    for _ in 0..64 {
        let mut f = RepMorphism::zero(x, y);
        for h in &homs {
            f = f.add(&h.scale(&field.random(&mut rng)));
        }
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Seeded random representation: the cokernel of a random map between free
/// `Λ ⊗ R`-modules generated at `gen_vertices`, rejected until every vertex
/// space has dimension at most `max_dim`.
pub fn random_representation(
    algebra: &Arc<Algebra>,
    ground: &Arc<GroundAlgebra>,
    gen_vertices: &[usize],
    max_dim: usize,
    seed: u64,
) -> Representation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = algebra.num_vertices();
    let all: Vec<usize> = (0..n).collect();
    let gen_vertices = if gen_vertices.is_empty() { &all[..] } else { gen_vertices };
    for attempt in 0..64 {
        let max_gens = if attempt < 32 { 3 } else { 1 };
        let g0 = rng.gen_range(1..=max_gens);
        let gens0: Vec<usize> = (0..g0).map(|_| gen_vertices[rng.gen_range(0..gen_vertices.len())]).collect();
        let f0 = FreeModule::new(algebra, ground, gens0);
        let g1 = rng.gen_range(0..=3usize);
        let gens1: Vec<usize> = (0..g1).map(|_| rng.gen_range(0..n)).collect();
        let f1 = FreeModule::new(algebra, ground, gens1.clone());
        let images: Vec<Matrix> = gens1
            .iter()
            .map(|&w| sparse_random_column(f0.rep.field(), f0.rep.dims[w], &mut rng))
            .collect();
        let rel = f1.map_to(&f0.rep, &images);
        let (x, _) = rel.cokernel().expect("cokernel of free modules");
        if x.dims.iter().all(|&d| d <= max_dim) {
            return (*x).clone();
        }
    }
    Representation::zero(algebra.clone(), ground.clone())
}

fn sparse_random_column<R: Rng>(field: FieldSpec, d: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(field, d, 1);
    for i in 0..d {
        if rng.gen_bool(0.6) {
            m.set(i, 0, field.random(rng));
        }
    }
    m
}

/// Seeded random `R`-module of dimension at most `max_dim`.
pub fn random_r_module(ground: &Arc<GroundAlgebra>, max_dim: usize, seed: u64) -> Representation {
    let point = Algebra::point(ground.field_spec());
    random_representation(&point, ground, &[0], max_dim, seed)
}

/// Total dimension of each vertex space, keyed by vertex name (for reports).
pub fn dims_by_name(x: &Representation) -> std::collections::BTreeMap<String, usize> {
    x.dims
        .iter()
        .enumerate()
        .map(|(v, &d)| (x.algebra.vertex_name(v).to_string(), d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn f7() -> FieldSpec {
        FieldSpec::Prime(7)
    }

    #[test]
    fn projectives_validate() {
        let a = fixtures::z6(f7()).unwrap();
        let r = GroundAlgebra::dual_numbers(f7());
        let free = FreeModule::new(&a, &r, (0..a.num_vertices()).collect());
        free.rep.validate().unwrap();
    }

    #[test]
    fn relation_violation_is_named() {
        let a = fixtures::cycle(1, f7()).unwrap();
        let m = Matrix::identity(f7(), 1);
        let e = Representation::over_field(a, vec![1], vec![m]).unwrap_err();
        assert!(e.to_string().contains("relation 0"));
    }

    #[test]
    fn bad_shape_is_named() {
        let a = fixtures::a2(f7()).unwrap();
        let e = Representation::over_field(a, vec![1, 2], vec![Matrix::zeros(f7(), 1, 1)]).unwrap_err();
        assert!(e.to_string().contains("arrow `a`"));
    }

    #[test]
    fn cover_of_projective_is_iso() {
        let a = fixtures::cycle(3, f7()).unwrap();
        let r = GroundAlgebra::dual_numbers(f7());
        let p = FreeModule::new(&a, &r, vec![0, 2, 2]);
        let c = projective_cover(&p.rep);
        assert!(c.minimal);
        assert_eq!(c.free.gens, vec![0, 2, 2]);
        assert!(c.map.is_iso());
        assert!(is_projective(&p.rep).unwrap());
        assert!(is_injective(&p.rep).unwrap());
    }

    #[test]
    fn simple_is_not_projective_over_cycle() {
        let a = fixtures::cycle(3, f7()).unwrap();
        let s = Arc::new(simple(&a, 1));
        assert!(!is_projective(&s).unwrap());
        let env = injective_envelope(&s);
        assert!(env.map.is_mono());
        assert_eq!(env.object.total_dim(), 2);
    }

    #[test]
    fn injective_envelope_of_a2_simple() {
        let a = fixtures::a2(f7()).unwrap();
        let s = Arc::new(simple(&a, 0));
        let env = injective_envelope(&s);
        // I⟨0⟩ over 0 -> 1 is S⟨0⟩ itself.
        assert_eq!(env.object.dims(), &[1, 0]);
        assert!(is_injective(&s).unwrap());
        assert!(!is_projective(&s).unwrap());
    }

    #[test]
    fn dual_numbers_module_checks() {
        let r = GroundAlgebra::dual_numbers(f7());
        let reg = Arc::new(regular_module(&r));
        reg.validate().unwrap();
        let d = Arc::new(dual_regular_module(&r));
        d.validate().unwrap();
        assert!(find_isomorphism(&reg, &d, 1).unwrap().is_some());
        let k = residue_module(&r).unwrap();
        assert_eq!(k.total_dim(), 1);
        k.validate().unwrap();
    }

    #[test]
    fn hom_dimension_matches_yoneda() {
        let a = fixtures::z6(f7()).unwrap();
        let k = GroundAlgebra::field(f7());
        for q in 0..a.num_vertices() {
            let p = FreeModule::new(&a, &k, vec![q]);
            for w in [3, 7, 10] {
                let pw = FreeModule::new(&a, &k, vec![w]);
                let homs = hom_basis(&p.rep, &pw.rep).unwrap();
                assert_eq!(homs.len(), a.hom_dim(w, q));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn random_reps_are_valid(seed in any::<u64>(), n in 1usize..4) {
            let a = fixtures::cycle(n, f7()).unwrap();
            let r = GroundAlgebra::dual_numbers(f7());
            let x = random_representation(&a, &r, &[], 4, seed);
            prop_assert!(x.validate().is_ok());
            prop_assert!(x.dims().iter().all(|&d| d <= 4));
        }

        #[test]
        fn kernel_cokernel_exact(seed in any::<u64>()) {
            let a = fixtures::cycle(2, f7()).unwrap();
            let r = GroundAlgebra::dual_numbers(f7());
            let x = Arc::new(random_representation(&a, &r, &[], 4, seed));
            let cover = projective_cover(&x);
            prop_assert!(cover.map.is_epi());
            let (k, inc) = cover.map.kernel().unwrap();
            prop_assert!(k.validate().is_ok());
            prop_assert!(cover.map.after(&inc).is_zero());
            prop_assert_eq!(k.total_dim() + x.total_dim(), cover.free.rep.total_dim());
            let (c, _) = inc.cokernel().unwrap();
            prop_assert!(find_isomorphism(&c, &x, seed).unwrap().is_some());
        }

        #[test]
        fn pullback_and_pushout_universal(seed in any::<u64>()) {
            let a = fixtures::cycle(3, f7()).unwrap();
            let k = GroundAlgebra::field(f7());
            let x = Arc::new(random_representation(&a, &k, &[], 3, seed));
            let c1 = projective_cover(&x);
            let c2 = projective_cover(&x);
            let pb = pullback(&c1.map, &c2.map).unwrap();
            prop_assert!(pb.object.validate().is_ok());
            prop_assert!(c1.map.after(&pb.to_a).equals(&c2.map.after(&pb.to_b)));
            let u = pb.factor(&pb.to_a, &pb.to_b).unwrap().unwrap();
            prop_assert!(u.is_iso());
            let (kk, inc) = c1.map.kernel().unwrap();
            let _ = kk;
            let po = pushout(&inc, &inc).unwrap();
            prop_assert!(po.from_a.after(&inc).equals(&po.from_b.after(&inc)));
            prop_assert!(po.object.validate().is_ok());
        }
    }
}
