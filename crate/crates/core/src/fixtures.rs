//! Named algebras used throughout the tests and the command line.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraError, GroundAlgebra, QuiverPresentation, DEFAULT_LENGTH_CAP};
use crate::field::FieldSpec;

/// `C_N`: an oriented `N`-cycle with arrows `d{q}: q -> q-1` and all paths of
/// length two set to zero. Representations are `N`-periodic complexes.
pub fn cycle_presentation(n: usize) -> QuiverPresentation {
    assert!(n >= 1, "cycle needs at least one vertex");
    let mut p = QuiverPresentation::new((0..n).map(|q| q.to_string()).collect());
    for q in 0..n {
        p.add_arrow(format!("d{q}"), q, (q + n - 1) % n);
    }
    for q in 0..n {
        let next = (q + n - 1) % n;
        p.add_relation(vec![(1, vec![q, next])]);
    }
    p
}

pub fn cycle(n: usize, field: FieldSpec) -> Result<Arc<Algebra>, AlgebraError> {
    Algebra::build(cycle_presentation(n), field, DEFAULT_LENGTH_CAP)
}

/// Vertex index of `(j, l)` in a window starting at column `j_min`.
pub fn window_vertex(j_min: i64, j: i64, l: usize) -> usize {
    ((j - j_min) as usize) * 3 + l
}

/// Columns `j_min..=j_max` of the mesh category of `ZA_3`:
/// `alpha_j: (j,0)->(j,1)`, `beta_j: (j,1)->(j,2)`, `gamma_j: (j,1)->(j-1,0)`,
/// `delta_j: (j,2)->(j-1,1)`, with the mesh relations.
pub fn za3_window_presentation(j_min: i64, j_max: i64) -> QuiverPresentation {
    assert!(j_min <= j_max, "empty window");
    let mut names = Vec::new();
    for j in j_min..=j_max {
        for l in 0..3 {
            names.push(format!("({j},{l})"));
        }
    }
    let mut p = QuiverPresentation::new(names);
    let v = |j: i64, l: usize| window_vertex(j_min, j, l);
    let mut alpha = std::collections::HashMap::new();
    let mut beta = std::collections::HashMap::new();
    let mut gamma = std::collections::HashMap::new();
    let mut delta = std::collections::HashMap::new();
    for j in j_min..=j_max {
        alpha.insert(j, p.add_arrow(format!("alpha{j}"), v(j, 0), v(j, 1)));
        beta.insert(j, p.add_arrow(format!("beta{j}"), v(j, 1), v(j, 2)));
        if j > j_min {
            gamma.insert(j, p.add_arrow(format!("gamma{j}"), v(j, 1), v(j - 1, 0)));
            delta.insert(j, p.add_arrow(format!("delta{j}"), v(j, 2), v(j - 1, 1)));
        }
    }
    for j in (j_min + 1)..=j_max {
        p.add_relation(vec![(1, vec![alpha[&j], gamma[&j]])]);
        p.add_relation(vec![(1, vec![delta[&j], beta[&(j - 1)]])]);
        p.add_relation(vec![(1, vec![gamma[&j], alpha[&(j - 1)]]), (1, vec![beta[&j], delta[&j]])]);
    }
    p
}

pub fn za3_window(j_min: i64, j_max: i64, field: FieldSpec) -> Result<Arc<Algebra>, AlgebraError> {
    Algebra::build(za3_window_presentation(j_min, j_max), field, DEFAULT_LENGTH_CAP)
}

/// The six-column window used for the mesh checks.
pub fn z6(field: FieldSpec) -> Result<Arc<Algebra>, AlgebraError> {
    za3_window(0, 5, field)
}

/// `A_2`: one arrow `a: 0 -> 1`; not self-injective.
pub fn a2(field: FieldSpec) -> Result<Arc<Algebra>, AlgebraError> {
    let mut p = QuiverPresentation::new(vec!["0".into(), "1".into()]);
    p.add_arrow("a", 0, 1);
    Algebra::build(p, field, DEFAULT_LENGTH_CAP)
}

/// Resolves `C1`, `C3`, `C<N>`, `CN:<N>`, `Z6`, `ZA3:<jmin>:<jmax>`, `A2`.
pub fn by_name(name: &str, field: FieldSpec) -> Result<Arc<Algebra>, AlgebraError> {
    let unknown = || AlgebraError::UnknownVertex(format!("unknown fixture `{name}`"));
    let t = name.trim();
    if t.eq_ignore_ascii_case("Z6") {
        return z6(field);
    }
    if t.eq_ignore_ascii_case("A2") {
        return a2(field);
    }
    if let Some(rest) = t.strip_prefix("ZA3:").or_else(|| t.strip_prefix("ZA3_window:")) {
        let (a, b) = rest.split_once(':').ok_or_else(unknown)?;
        let a: i64 = a.parse().map_err(|_| unknown())?;
        let b: i64 = b.parse().map_err(|_| unknown())?;
        if a > b {
            return Err(unknown());
        }
        return za3_window(a, b, field);
    }
    let n = t
        .strip_prefix("CN:")
        .or_else(|| t.strip_prefix('C'))
        .and_then(|r| r.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(unknown)?;
    cycle(n, field)
}

/// `k` or `dual` (the dual numbers `k[ε]/(ε²)`).
pub fn ground_by_name(name: &str, field: FieldSpec) -> Option<Arc<GroundAlgebra>> {
    match name.trim() {
        "k" => Some(GroundAlgebra::field(field)),
        "dual" | "eps" | "Reps" => Some(GroundAlgebra::dual_numbers(field)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_projective_dimensions() {
        let a = z6(FieldSpec::Prime(101)).unwrap();
        for j in 2..=5 {
            assert_eq!((0..a.num_vertices()).map(|p| a.hom_dim(window_vertex(0, j, 0), p)).sum::<usize>(), 3);
            assert_eq!((0..a.num_vertices()).map(|p| a.hom_dim(window_vertex(0, j, 1), p)).sum::<usize>(), 4);
            assert_eq!((0..a.num_vertices()).map(|p| a.hom_dim(window_vertex(0, j, 2), p)).sum::<usize>(), 3);
        }
    }

    #[test]
    fn window_projective_supports() {
        let a = z6(FieldSpec::Rationals).unwrap();
        let v = |j, l| window_vertex(0, j, l);
        let support = |q| -> Vec<usize> { (0..a.num_vertices()).filter(|&p| a.hom_dim(q, p) > 0).collect() };
        let mut s1 = vec![v(3, 1), v(3, 2), v(2, 0), v(2, 1)];
        s1.sort();
        assert_eq!(support(v(3, 1)), s1);
        let mut s2 = vec![v(3, 2), v(2, 1), v(1, 0)];
        s2.sort();
        assert_eq!(support(v(3, 2)), s2);
    }

    #[test]
    fn names_resolve() {
        let f = FieldSpec::Prime(7);
        assert_eq!(by_name("C3", f).unwrap().num_vertices(), 3);
        assert_eq!(by_name("CN:5", f).unwrap().num_vertices(), 5);
        assert_eq!(by_name("ZA3:1:2", f).unwrap().num_vertices(), 6);
        assert!(by_name("C0", f).is_err());
        assert!(by_name("B7", f).is_err());
    }
}
