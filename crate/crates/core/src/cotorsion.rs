//! Cotorsion pairs on `R`-modules lifted to representations:
//! `Φ(𝒜) = {X : C_q X ∈ 𝒜, L_1 C_q X = 0}` and
//! `Ψ(ℬ) = {X : K_q X ∈ ℬ, R^1 K_q X = 0}`, their `Ext`-orthogonality
//! certificates, the compatibility checks and the trivial class `𝒲 = ℰ`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, GroundAlgebra};
use crate::exactla::Matrix;
use crate::homalg::{self, ext_dim, HomAlgError, HomResult, ProjResolution};
use crate::modcat::{
    self, direct_sum, dual_regular_module, find_isomorphism, free_r_module, hom_basis, injective_envelope,
    projective_cover, random_r_module, random_representation, regular_module, residue_module, s_functor,
    tensor_k, FreeModule, ModError, Representation, RepMorphism,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassKind {
    All,
    Projective,
    Injective,
    Free,
}

/// A class of `R`-modules with a decidable membership test.
#[derive(Clone, Debug)]
pub struct ClassPredicate {
    pub name: String,
    pub kind: ClassKind,
}

impl ClassPredicate {
    pub fn new(kind: ClassKind) -> Self {
        let name = match kind {
            ClassKind::All => "all",
            ClassKind::Projective => "projective",
            ClassKind::Injective => "injective",
            ClassKind::Free => "free",
        };
        ClassPredicate { name: name.to_string(), kind }
    }

    pub fn contains(&self, m: &Arc<Representation>) -> HomResult<bool> {
        Ok(match self.kind {
            ClassKind::All => true,
            ClassKind::Projective => modcat::is_projective(m)?,
            ClassKind::Injective => modcat::is_injective(m)?,
            ClassKind::Free => {
                let g = m.ground();
                if !g.is_local() {
                    return Err(ModError::Precondition("free class needs a local ground algebra".into()).into());
                }
                m.total_dim() % g.dim() == 0 && modcat::is_projective(m)?
            }
        })
    }

    /// Seeded sample of an `R`-module in the class.
    pub fn sample(&self, ground: &Arc<GroundAlgebra>, max_dim: usize, seed: u64) -> Representation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let copies = rng.gen_range(0..=(max_dim / ground.dim()).clamp(1, 2));
        match self.kind {
            ClassKind::All => random_r_module(ground, max_dim, seed),
            ClassKind::Projective | ClassKind::Free => free_r_module(ground, copies),
            ClassKind::Injective => {
                let d = Arc::new(dual_regular_module(ground));
                if copies == 0 {
                    return free_r_module(ground, 0);
                }
                let parts = vec![d; copies];
                (*direct_sum(&parts).expect("same category").object).clone()
            }
        }
    }
}

/// A cotorsion pair `(𝒜, ℬ)` with generating and cogenerating sets.
#[derive(Clone, Debug)]
pub struct CotorsionPair {
    pub name: String,
    pub left: ClassPredicate,
    pub right: ClassPredicate,
    /// `ℬ = generators^⊥`; expected to contain `R`.
    pub generators: Vec<Arc<Representation>>,
    /// `𝒜 = ⊥cogenerators`; expected to contain `DR`.
    pub cogenerators: Vec<Arc<Representation>>,
    pub ground: Arc<GroundAlgebra>,
}

impl CotorsionPair {
    /// `(projective, all)`: generated by `R`, cogenerated by `DR` and the residue field.
    pub fn projective_all(ground: &Arc<GroundAlgebra>) -> HomResult<CotorsionPair> {
        let mut cogens = vec![Arc::new(dual_regular_module(ground))];
        cogens.push(Arc::new(residue_module(ground)?));
        Ok(CotorsionPair {
            name: "projective-all".into(),
            left: ClassPredicate::new(ClassKind::Projective),
            right: ClassPredicate::new(ClassKind::All),
            generators: vec![Arc::new(regular_module(ground))],
            cogenerators: cogens,
            ground: ground.clone(),
        })
    }

    /// `(all, injective)`: cogenerated by `DR`, generated by `R` and the residue field.
    pub fn all_injective(ground: &Arc<GroundAlgebra>) -> HomResult<CotorsionPair> {
        let gens = vec![Arc::new(regular_module(ground)), Arc::new(residue_module(ground)?)];
        Ok(CotorsionPair {
            name: "all-injective".into(),
            left: ClassPredicate::new(ClassKind::All),
            right: ClassPredicate::new(ClassKind::Injective),
            generators: gens,
            cogenerators: vec![Arc::new(dual_regular_module(ground))],
            ground: ground.clone(),
        })
    }

    /// `(free, all)` over a local ground algebra (equal to `(projective, all)`).
    pub fn free_all(ground: &Arc<GroundAlgebra>) -> HomResult<CotorsionPair> {
        let mut p = CotorsionPair::projective_all(ground)?;
        p.name = "free-all".into();
        p.left = ClassPredicate::new(ClassKind::Free);
        Ok(p)
    }

    pub fn by_name(name: &str, ground: &Arc<GroundAlgebra>) -> HomResult<CotorsionPair> {
        match name {
            "projective-all" | "proj-all" => CotorsionPair::projective_all(ground),
            "all-injective" | "all-inj" => CotorsionPair::all_injective(ground),
            "free-all" => CotorsionPair::free_all(ground),
            _ => Err(ModError::Precondition(format!("unknown cotorsion pair `{name}`")).into()),
        }
    }

    fn check_generators(&self) -> HomResult<()> {
        let reg = Arc::new(regular_module(&self.ground));
        for g in &self.generators {
            if find_isomorphism(g, &reg, 0)?.is_some() {
                return Ok(());
            }
        }
        Err(ModError::Precondition("generating set must contain the regular module R".into()).into())
    }

    fn check_cogenerators(&self) -> HomResult<()> {
        let d = Arc::new(dual_regular_module(&self.ground));
        for g in &self.cogenerators {
            if find_isomorphism(g, &d, 0)?.is_some() {
                return Ok(());
            }
        }
        Err(ModError::Precondition("cogenerating set must contain DR".into()).into())
    }
}

/// `X ∈ Φ(𝒜)`.
pub fn phi_membership(x: &Arc<Representation>, a: &ClassPredicate) -> HomResult<bool> {
    for q in 0..x.algebra().num_vertices() {
        if homalg::derived_c_dim(1, q, x)? != 0 {
            return Ok(false);
        }
        if !a.contains(&Arc::new(homalg::c_module(q, x)?))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X ∈ Ψ(ℬ)`.
pub fn psi_membership(x: &Arc<Representation>, b: &ClassPredicate) -> HomResult<bool> {
    for q in 0..x.algebra().num_vertices() {
        if homalg::derived_k_dim(1, q, x)? != 0 {
            return Ok(false);
        }
        if !b.contains(&Arc::new(homalg::k_module(q, x)?))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Ext^1(S_q C, X) = 0` for all `q` and all generators `C`.
pub fn psi_certificate(x: &Arc<Representation>, pair: &CotorsionPair) -> HomResult<bool> {
    pair.check_generators()?;
    let alg = x.algebra();
    for q in 0..alg.num_vertices() {
        for c in &pair.generators {
            let sc = Arc::new(s_functor(alg, q, c));
            if homalg::ext_gamma_dim(1, &sc, x)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Ext^1(X, S_q C) = 0` for all `q` and all cogenerators `C`.
pub fn phi_certificate(x: &Arc<Representation>, pair: &CotorsionPair) -> HomResult<bool> {
    pair.check_cogenerators()?;
    let alg = x.algebra();
    let res = ProjResolution::new(x, 2)?;
    for q in 0..alg.num_vertices() {
        for c in &pair.cogenerators {
            let sc = s_functor(alg, q, c);
            if ext_dim(&res, 1, &sc)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Definitional membership against the `Ext`-orthogonality certificate.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrthogonalityCheck {
    pub psi_definition: bool,
    pub psi_certificate: bool,
    pub phi_definition: bool,
    pub phi_certificate: bool,
}

impl OrthogonalityCheck {
    pub fn agree(&self) -> bool {
        self.psi_definition == self.psi_certificate && self.phi_definition == self.phi_certificate
    }
}

pub fn orthogonality_check(x: &Arc<Representation>, pair: &CotorsionPair) -> HomResult<OrthogonalityCheck> {
    Ok(OrthogonalityCheck {
        psi_definition: psi_membership(x, &pair.right)?,
        psi_certificate: psi_certificate(x, pair)?,
        phi_definition: phi_membership(x, &pair.left)?,
        phi_certificate: phi_certificate(x, pair)?,
    })
}

/// Radical layers of `X ∈ ℰ`: `dim (rad^i X / rad^{i+1} X)(q)` for all `i, q`.
pub fn radical_layers(x: &Representation) -> Vec<Vec<usize>> {
    let alg = x.algebra();
    let n = alg.num_vertices();
    let ll = alg.loewy_length();
    let rad_dim = |i: usize, q: usize| -> usize {
        let mut span = Matrix::zeros(x.field(), x.dim_at(q), 0);
        for p in 0..n {
            for &u in alg.pair_basis(p, q) {
                if alg.basis()[u].len() >= i {
                    span = span.hstack(x.path_action(u)).expect("rows agree");
                }
            }
        }
        span.rank()
    };
    (0..=ll)
        .map(|i| (0..n).map(|q| rad_dim(i, q) - rad_dim(i + 1, q)).collect())
        .collect()
}

/// For `X ∈ ℰ`: `dim(rad^i X / rad^{i+1} X)(q) = Σ_p n_i(p, q) dim C_p(X)`.
pub fn radical_filtration_check(x: &Representation) -> HomResult<bool> {
    let alg = x.algebra();
    let n = alg.num_vertices();
    let tops: Vec<usize> =
        (0..n).map(|p| Ok(homalg::c_module(p, x)?.total_dim())).collect::<HomResult<_>>()?;
    let layers = radical_layers(x);
    for (i, layer) in layers.iter().enumerate() {
        for q in 0..n {
            let expect: usize = (0..n).map(|p| alg.radical_layer(i, p, q) * tops[p]).sum();
            if layer[q] != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Witness for `X ∈ 𝒲`: a short exact sequence `0 -> P -> F -> X -> 0`
/// with `P ∈ Ψ(ℬ)`, `F ∈ Φ(𝒜)` or `0 -> X -> P' -> F' -> 0` likewise.
///
/// Both constructions are attempted whatever the `ℰ` verdict, so `verified`
/// is an independent test of `X ∈ 𝒲`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TrivialWitness {
    pub in_e: bool,
    pub construction: Option<String>,
    pub verified: bool,
}

pub fn trivial_class_membership(x: &Arc<Representation>, pair: &CotorsionPair) -> HomResult<TrivialWitness> {
    let in_e = homalg::e_membership(x)?;
    // 0 -> Ω X -> F -> X -> 0 from a projective cover.
    let cover = projective_cover(x);
    let (k, inc) = cover.map.kernel()?;
    let f = cover.free.rep.clone();
    if short_exact(&inc, &cover.map) && psi_membership(&k, &pair.right)? && phi_membership(&f, &pair.left)? {
        return Ok(TrivialWitness { in_e, construction: Some("projective-cover".into()), verified: true });
    }
    // 0 -> X -> I -> I / X -> 0 from an injective envelope.
    let env = injective_envelope(x);
    let (c, p) = env.map.cokernel()?;
    if short_exact(&env.map, &p) && psi_membership(&env.object, &pair.right)? && phi_membership(&c, &pair.left)? {
        return Ok(TrivialWitness { in_e, construction: Some("injective-envelope".into()), verified: true });
    }
    Ok(TrivialWitness { in_e, construction: None, verified: false })
}

/// `0 -> A -f-> B -g-> C -> 0` is exact.
pub fn short_exact(f: &RepMorphism, g: &RepMorphism) -> bool {
    f.is_mono()
        && g.is_epi()
        && g.after(f).is_zero()
        && f.source.dims().iter().zip(g.target.dims()).zip(f.target.dims()).all(|((a, c), b)| a + c == *b)
}

/// Fibration test: `f` epi and `Ext^1(t, ker f) = 0` for every `t` in the certificate set.
pub fn is_fibration(f: &RepMorphism, phi_certs: &[ProjResolution]) -> HomResult<bool> {
    if !f.is_epi() {
        return Ok(false);
    }
    let (k, _) = f.kernel()?;
    for t in phi_certs {
        if ext_dim(t, 1, &k)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cofibration test: `f` mono and `Ext^1(coker f, t) = 0` for every `t` in the certificate set.
pub fn is_cofibration(f: &RepMorphism, psi_certs: &[Arc<Representation>]) -> HomResult<bool> {
    if !f.is_mono() {
        return Ok(false);
    }
    let (c, _) = f.cokernel()?;
    let res = ProjResolution::new(&c, 2)?;
    for t in psi_certs {
        if ext_dim(&res, 1, t)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closure of the left class under kernels of epis and the right class under
/// cokernels of monos, checked on seeded random maps between class samples.
pub fn hereditary_spotcheck(pair: &CotorsionPair, trials: usize, seed: u64) -> HomResult<bool> {
    let g = &pair.ground;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let a = Arc::new(pair.left.sample(g, 4, seed.wrapping_add(2 * t as u64)));
        let b = Arc::new(pair.left.sample(g, 4, seed.wrapping_add(2 * t as u64 + 1)));
        if let Some(f) = random_hom(&a, &b, &mut rng)? {
            if f.is_epi() && !pair.left.contains(&f.kernel()?.0)? {
                return Ok(false);
            }
        }
        let a = Arc::new(pair.right.sample(g, 4, seed.wrapping_add(7 * t as u64 + 3)));
        let b = Arc::new(pair.right.sample(g, 4, seed.wrapping_add(7 * t as u64 + 5)));
        if let Some(f) = random_hom(&a, &b, &mut rng)? {
            if f.is_mono() && !pair.right.contains(&f.cokernel()?.0)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn random_hom<R: Rng>(a: &Arc<Representation>, b: &Arc<Representation>, rng: &mut R) -> HomResult<Option<RepMorphism>> {
    let homs = hom_basis(a, b)?;
    if homs.is_empty() {
        return Ok(None);
    }
    let field = a.field();
    let mut f = RepMorphism::zero(a, b);
    for h in &homs {
        f = f.add(&h.scale(&field.random(rng)));
    }
    Ok(Some(f))
}

/// Seeded member of `ℰ` built from `⊕ P⟨q⟩ ⊗ B_q`, optionally followed by the
/// kernel of an epi from a free module or the cokernel of a mono into an injective.
pub fn sample_e(
    alg: &Arc<Algebra>,
    ground: &Arc<GroundAlgebra>,
    class: &ClassPredicate,
    gen_vertices: &[usize],
    seed: u64,
) -> Representation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = crate::GroundAlgebra::field(alg.field());
    let n = alg.num_vertices();
    let verts: Vec<usize> = if gen_vertices.is_empty() { (0..n).collect() } else { gen_vertices.to_vec() };
    let parts = rng.gen_range(1..=2usize);
    let mut pieces = Vec::new();
    for _ in 0..parts {
        let q = verts[rng.gen_range(0..verts.len())];
        let b = class.sample(ground, 2, rng.gen());
        let p = FreeModule::new(alg, &k, vec![q]);
        pieces.push(Arc::new(tensor_k(&p.rep, &b).expect("tensor with an R-module")));
    }
    let base = direct_sum(&pieces).expect("same category").object;
    match rng.gen_range(0..3u32) {
        0 => (*base).clone(),
        1 => {
            // kernel of cover ⊕ extra -> base, extra mapped randomly
            let cover = projective_cover(&base);
            let q = verts[rng.gen_range(0..verts.len())];
            let mut gens = cover.free.gens.clone();
            gens.push(q);
            let free = FreeModule::new(alg, ground, gens);
            let mut images: Vec<Matrix> = (0..cover.free.gens.len())
                .map(|j| cover.map.maps[cover.free.gens[j]].dot(&cover.free.generator_vector(j)))
                .collect();
            images.push(Matrix::random(alg.field(), base.dim_at(q), 1, &mut rng));
            let map = free.map_to(&base, &images);
            (*map.kernel().expect("kernel").0).clone()
        }
        _ => {
            let env = injective_envelope(&base);
            (*env.map.cokernel().expect("cokernel").0).clone()
        }
    }
}

/// Seeded candidates for `Φ(𝒜)` / `Ψ(ℬ)`: `ℰ`-samples built from class members,
/// filtered by the definitional membership test.
pub fn sample_phi(alg: &Arc<Algebra>, pair: &CotorsionPair, seed: u64) -> HomResult<Arc<Representation>> {
    sample_filtered(alg, pair, seed, true)
}

pub fn sample_psi(alg: &Arc<Algebra>, pair: &CotorsionPair, seed: u64) -> HomResult<Arc<Representation>> {
    sample_filtered(alg, pair, seed, false)
}

fn sample_filtered(alg: &Arc<Algebra>, pair: &CotorsionPair, seed: u64, phi: bool) -> HomResult<Arc<Representation>> {
    let class = if phi { &pair.left } else { &pair.right };
    for attempt in 0..64u64 {
        let x = Arc::new(sample_e(alg, &pair.ground, class, &[], crate::exec::trial_seed(seed, attempt)));
        let ok = if phi { phi_membership(&x, &pair.left)? } else { psi_membership(&x, &pair.right)? };
        if ok {
            return Ok(x);
        }
    }
    Err(HomAlgError::Mod(ModError::Precondition("no class member found in 64 attempts".into())))
}

/// Mixed seeded sample for orthogonality checks: random representations,
/// `ℰ`-samples and class samples.
pub fn sample_mixed(alg: &Arc<Algebra>, pair: &CotorsionPair, seed: u64) -> HomResult<Arc<Representation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match rng.gen_range(0..4u32) {
        0 => Arc::new(random_representation(alg, &pair.ground, &[], 4, rng.gen())),
        1 => Arc::new(sample_e(alg, &pair.ground, &ClassPredicate::new(ClassKind::All), &[], rng.gen())),
        2 => sample_phi(alg, pair, rng.gen())?,
        _ => sample_psi(alg, pair, rng.gen())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::fixtures;

    fn setup(n: usize) -> (Arc<Algebra>, Arc<GroundAlgebra>) {
        let f = FieldSpec::Prime(101);
        (fixtures::cycle(n, f).unwrap(), GroundAlgebra::dual_numbers(f))
    }

    #[test]
    fn e_samples_are_in_e() {
        let (a, r) = setup(3);
        let all = ClassPredicate::new(ClassKind::All);
        for s in 0..12 {
            let x = Arc::new(sample_e(&a, &r, &all, &[], s));
            assert!(homalg::e_membership(&x).unwrap(), "seed {s}");
            assert!(radical_filtration_check(&x).unwrap());
        }
    }

    #[test]
    fn class_predicates() {
        let (_, r) = setup(1);
        let p = ClassPredicate::new(ClassKind::Projective);
        let i = ClassPredicate::new(ClassKind::Injective);
        let reg = Arc::new(regular_module(&r));
        let k = Arc::new(residue_module(&r).unwrap());
        assert!(p.contains(&reg).unwrap() && i.contains(&reg).unwrap());
        assert!(!p.contains(&k).unwrap() && !i.contains(&k).unwrap());
        assert!(ClassPredicate::new(ClassKind::Free).contains(&reg).unwrap());
    }

    #[test]
    fn missing_regular_generator_is_a_precondition_failure() {
        let (a, r) = setup(1);
        let mut pair = CotorsionPair::projective_all(&r).unwrap();
        pair.generators = vec![Arc::new(residue_module(&r).unwrap())];
        let x = Arc::new(modcat::simple(&a, 0));
        let x = Arc::new(tensor_k(&x, &regular_module(&r)).unwrap());
        assert!(matches!(
            psi_certificate(&x, &pair),
            Err(HomAlgError::Mod(ModError::Precondition(_)))
        ));
    }

    #[test]
    fn orthogonality_on_simple_tensor() {
        let (a, r) = setup(1);
        let pair = CotorsionPair::projective_all(&r).unwrap();
        let s = modcat::simple(&a, 0);
        let x = Arc::new(tensor_k(&s, &regular_module(&r)).unwrap());
        let c = orthogonality_check(&x, &pair).unwrap();
        assert!(c.agree());
        assert!(!c.psi_definition && !c.phi_definition);
    }

    #[test]
    fn trivial_class_witnesses() {
        let (a, r) = setup(3);
        for pair in [CotorsionPair::projective_all(&r).unwrap(), CotorsionPair::all_injective(&r).unwrap()] {
            for s in 0..6 {
                let x = Arc::new(sample_e(&a, &r, &ClassPredicate::new(ClassKind::All), &[], s));
                let w = trivial_class_membership(&x, &pair).unwrap();
                assert!(w.in_e && w.verified, "{} seed {s}", pair.name);
            }
            let s0 = Arc::new(tensor_k(&modcat::simple(&a, 0), &regular_module(&r)).unwrap());
            let w = trivial_class_membership(&s0, &pair).unwrap();
            assert!(!w.in_e && !w.verified);
        }
    }

    #[test]
    fn hereditary_pairs() {
        let (_, r) = setup(1);
        assert!(hereditary_spotcheck(&CotorsionPair::projective_all(&r).unwrap(), 10, 3).unwrap());
        assert!(hereditary_spotcheck(&CotorsionPair::all_injective(&r).unwrap(), 10, 3).unwrap());
    }

    #[test]
    fn cover_is_fibration_and_envelope_cofibration() {
        let (a, r) = setup(3);
        let pair = CotorsionPair::projective_all(&r).unwrap();
        let phi: Vec<ProjResolution> = (0..3)
            .map(|s| ProjResolution::new(&sample_phi(&a, &pair, s).unwrap(), 2).unwrap())
            .collect();
        let x = Arc::new(sample_e(&a, &r, &ClassPredicate::new(ClassKind::All), &[], 11));
        let cover = projective_cover(&x);
        assert!(is_fibration(&cover.map, &phi).unwrap());
        let pair = CotorsionPair::all_injective(&r).unwrap();
        let psi: Vec<Arc<Representation>> = (0..3).map(|s| sample_psi(&a, &pair, s).unwrap()).collect();
        let env = injective_envelope(&x);
        assert!(is_cofibration(&env.map, &psi).unwrap());
    }
}
