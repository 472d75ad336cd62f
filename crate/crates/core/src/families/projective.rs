use std::collections::HashMap;

use super::graph::{induced_permutation, GeneratorSet, Graph, GraphMeta, Label};
use super::{check_count, Built};
use crate::algebra::{enumerate_subspaces, gaussian_binomial, Elem, Field, Matrix, Subspace};
use crate::error::{Error, Result};
use crate::Bounds;

pub(crate) fn count_subspaces(n: usize, k: usize, q: u32) -> f64 {
    gaussian_binomial(n as u32, k as u32, q as u64)
        .map(|b| b.to_string().parse::<f64>().unwrap_or(f64::INFINITY))
        .unwrap_or(0.0)
}

pub(crate) fn label_of(u: &Subspace) -> Label {
    u.canonical_rows().to_vec()
}

pub(crate) fn subspace_of(n: usize, l: &Label) -> Subspace {
    Subspace::from_canonical(n, l.clone())
}

/// Elementary matrix `I + b E_ij`.
pub(crate) fn elementary(n: usize, i: usize, j: usize, b: Elem) -> Matrix {
    let mut m = Matrix::identity(n);
    m.set(i, j, b);
    m
}

pub(crate) fn diagonal(n: usize, i: usize, z: Elem) -> Matrix {
    let mut m = Matrix::identity(n);
    m.set(i, i, z);
    m
}

/// Generators of `GL(n, q)`: elementary transvections between neighbouring
/// coordinates over a prime-field basis, plus one diagonal matrix.
pub(crate) fn gl_generators(field: &Field, n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        for &b in &field.prime_basis() {
            out.push(elementary(n, i, i + 1, b));
            out.push(elementary(n, i + 1, i, b));
        }
    }
    if field.order() > 2 && n > 0 {
        out.push(diagonal(n, 0, field.primitive()));
    }
    out
}

/// `U ↦ U^⊥` for the standard dot product.
pub(crate) fn dot_perp(field: &Field, u: &Subspace) -> Subspace {
    let n = u.ambient();
    if u.dim() == 0 {
        return Subspace::full(n);
    }
    let null = u.basis_matrix().nullspace(field);
    Subspace::span(field, n, &null).expect("ambient matches")
}

fn reversed(field: &Field, u: &Subspace) -> Subspace {
    let rows: Vec<Vec<Elem>> = u
        .basis()
        .into_iter()
        .map(|mut v| {
            v.reverse();
            v
        })
        .collect();
    Subspace::span(field, u.ambient(), &rows).expect("ambient matches")
}

/// Pushes generators induced by the matrices in `mats` and, over
/// non-prime fields, the Frobenius map.
fn push_linear(g: &Graph, field: &Field, n: usize, mats: &[Matrix], gens: &mut GeneratorSet) -> Result<()> {
    for m in mats {
        gens.push(induced_permutation(g, |l| label_of(&subspace_of(n, l).image(field, m)))?, "linear map");
    }
    if field.degree() > 1 {
        gens.push(
            induced_permutation(g, |l| label_of(&subspace_of(n, l).map_entries(field, |a| field.frobenius(a, 1))))?,
            "field automorphism",
        );
    }
    Ok(())
}

fn index_map(labels: &[Label]) -> HashMap<&Label, u32> {
    labels.iter().enumerate().map(|(i, l)| (l, i as u32)).collect()
}

pub(super) fn grassmann(field: &Field, n: usize, k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if k == 0 || k >= n {
        return Err(Error::BadParams(format!("Grassmann graph needs 1 <= k < n, got n={n} k={k}")));
    }
    check_count(count_subspaces(n, k, field.order()), bounds)?;
    let vertices = enumerate_subspaces(field, n, k, bounds)?;
    let labels: Vec<Label> = vertices.iter().map(label_of).collect();
    let mut groups: HashMap<Subspace, Vec<u32>> = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        for h in v.subspaces_of(field, k - 1) {
            groups.entry(h).or_default().push(i as u32);
        }
    }
    let graph = Graph::from_cliques(labels, meta, groups.into_values())?;
    let mut gens = GeneratorSet::new();
    push_linear(&graph, field, n, &gl_generators(field, n), &mut gens)?;
    Ok(Built { graph, gens, notes: Vec::new() })
}

/// Bipartite containment graph between `lower` and `upper` subspaces.
fn containment_graph(field: &Field, lower: &[Subspace], upper: &[Subspace], meta: GraphMeta) -> Result<Graph> {
    let mut labels: Vec<Label> = lower.iter().map(label_of).collect();
    labels.extend(upper.iter().map(label_of));
    let lower_dim = lower.first().map_or(0, Subspace::dim);
    let index = index_map(&labels);
    let mut adj = vec![Vec::new(); labels.len()];
    for (j, u) in upper.iter().enumerate() {
        let uj = (lower.len() + j) as u32;
        for s in u.subspaces_of(field, lower_dim) {
            if let Some(&i) = index.get(&label_of(&s)) {
                adj[i as usize].push(uj);
                adj[uj as usize].push(i);
            }
        }
    }
    Graph::new(labels, adj, meta)
}

pub(super) fn doubled_grassmann(field: &Field, k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if k < 2 {
        return Err(Error::BadParams(format!("doubled Grassmann graph needs k >= 2, got {k}")));
    }
    let n = 2 * k - 1;
    check_count(2.0 * count_subspaces(n, k, field.order()), bounds)?;
    let lower = enumerate_subspaces(field, n, k - 1, bounds)?;
    let upper = enumerate_subspaces(field, n, k, bounds)?;
    let graph = containment_graph(field, &lower, &upper, meta)?;
    let mut gens = GeneratorSet::new();
    push_linear(&graph, field, n, &gl_generators(field, n), &mut gens)?;
    gens.push(induced_permutation(&graph, |l| label_of(&dot_perp(field, &subspace_of(n, l))))?, "duality");
    Ok(Built { graph, gens, notes: Vec::new() })
}

pub(super) fn incidence_design(field: &Field, n: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if n < 3 {
        return Err(Error::BadParams(format!("incidence graph needs dim V >= 3, got {n}")));
    }
    check_count(2.0 * count_subspaces(n, 1, field.order()), bounds)?;
    let points = enumerate_subspaces(field, n, 1, bounds)?;
    let hyperplanes = enumerate_subspaces(field, n, n - 1, bounds)?;
    let graph = containment_graph(field, &points, &hyperplanes, meta)?;
    let mut gens = GeneratorSet::new();
    push_linear(&graph, field, n, &gl_generators(field, n), &mut gens)?;
    gens.push(induced_permutation(&graph, |l| label_of(&dot_perp(field, &subspace_of(n, l))))?, "duality");
    Ok(Built { graph, gens, notes: Vec::new() })
}

/// Generators of the stabiliser in `GL(n, q)` of `w = ⟨e_0⟩` and
/// `H = {x : x_(n−1) = 0}`.
pub(crate) fn parabolic_generators(field: &Field, n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..n - 1 {
        for j in 1..n {
            if i != j {
                for &b in &field.prime_basis() {
                    out.push(elementary(n, i, j, b));
                }
            }
        }
    }
    if field.order() > 2 {
        for i in [0, 1, n - 1] {
            out.push(diagonal(n, i, field.primitive()));
        }
    }
    out
}

pub(super) fn incidence_opposites(field: &Field, n: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if n < 3 {
        return Err(Error::BadParams(format!("opposites graph needs dim V >= 3, got {n}")));
    }
    let q = field.order() as f64;
    check_count(2.0 * q.powi(n as i32 - 1), bounds)?;
    // w = ⟨e_0⟩ lies in every hyperplane with a zero first coordinate in its
    // normal; H is the hyperplane x_(n−1) = 0
    let points: Vec<Subspace> =
        enumerate_subspaces(field, n, 1, bounds)?.into_iter().filter(|p| p.basis_vector(0)[n - 1] != 0).collect();
    let mut e0 = vec![0; n];
    e0[0] = 1;
    let hyperplanes: Vec<Subspace> =
        enumerate_subspaces(field, n, n - 1, bounds)?.into_iter().filter(|h| !h.contains_vector(field, &e0)).collect();
    let graph = containment_graph(field, &points, &hyperplanes, meta)?;
    let mut gens = GeneratorSet::new();
    push_linear(&graph, field, n, &parabolic_generators(field, n), &mut gens)?;
    // polarity of the antidiagonal form swaps w and H
    gens.push(
        induced_permutation(&graph, |l| label_of(&reversed(field, &dot_perp(field, &subspace_of(n, l)))))?,
        "antidiagonal polarity",
    );
    Ok(Built { graph, gens, notes: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::Bsgs;
    use num_bigint::BigUint;

    fn gf(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn gl_generators_generate_gl() {
        // |PGL(3,2)| = 168 acting on the 7 points; |PΓL(2,4)| = 120 on 5 points
        let b = grassmann(&gf(2), 3, 1, GraphMeta::default(), &Bounds::default()).unwrap();
        assert_eq!(Bsgs::new(&b.gens.perms, b.graph.n()).unwrap().order(), BigUint::from(168u32));
        let b = grassmann(&gf(4), 2, 1, GraphMeta::default(), &Bounds::default()).unwrap();
        assert_eq!(Bsgs::new(&b.gens.perms, b.graph.n()).unwrap().order(), BigUint::from(120u32));
    }

    #[test]
    fn dot_perp_is_an_involution() {
        let f = gf(3);
        for k in 0..=3 {
            for u in enumerate_subspaces(&f, 3, k, &Bounds::default()).unwrap() {
                let p = dot_perp(&f, &u);
                assert_eq!(p.dim(), 3 - k);
                assert_eq!(dot_perp(&f, &p), u);
            }
        }
    }

    #[test]
    fn parabolic_fixes_point_and_hyperplane() {
        let f = gf(3);
        let n = 4;
        let w = Subspace::span(&f, n, &[vec![1, 0, 0, 0]]).unwrap();
        let h = Subspace::span(&f, n, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        for m in parabolic_generators(&f, n) {
            assert_eq!(w.image(&f, &m), w);
            assert_eq!(h.image(&f, &m), h);
        }
        assert_eq!(reversed(&f, &dot_perp(&f, &w)), h);
        assert_eq!(reversed(&f, &dot_perp(&f, &h)), w);
    }

    #[test]
    fn opposites_is_cover_of_complete_bipartite() {
        let b = incidence_opposites(&gf(2), 4, GraphMeta::default(), &Bounds::default()).unwrap();
        let g = &b.graph;
        assert_eq!(g.valency(), Some(4));
        // antipodal classes of size q = 2 at distance 4
        for v in 0..g.n() as u32 {
            let far = g.distances_from(v).iter().filter(|&&d| d == 4).count();
            assert_eq!(far, 1);
        }
    }
}
