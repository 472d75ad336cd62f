use std::collections::HashMap;

use super::graph::{induced_permutation, GeneratorSet, Graph, GraphMeta, Label};
use super::projective::{label_of, subspace_of};
use super::{check_count, Built};
use crate::algebra::{enumerate_subspaces, Subspace};
use crate::error::{Error, Result};
use crate::spaces::{FormedSpace, SpaceKind};
use crate::Bounds;

fn push_isometries(g: &Graph, space: &FormedSpace, bounds: &Bounds, gens: &mut GeneratorSet) -> Result<Vec<String>> {
    let iso = space.isometry_generators(bounds)?;
    let n = space.dim();
    let field = space.field();
    for (m, tag) in iso.gens.iter().zip(&iso.provenance) {
        gens.push(induced_permutation(g, |l| label_of(&m.apply(field, &subspace_of(n, l))))?, tag);
    }
    Ok(iso.notes)
}

/// Singular `k`-subspaces; adjacency through a common singular `(k+1)`-space
/// when `k < ω`, through a common `(ω−1)`-space when `k = ω`.
pub(super) fn polar_grassmann(space: &FormedSpace, k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    let omega = space.omega();
    if k == 0 || k > omega {
        return Err(Error::BadParams(format!("polar Grassmann graph needs 1 <= k <= {omega}, got {k}")));
    }
    let field = space.field();
    let vertices = space.enumerate_singular(k, bounds)?;
    check_count(vertices.len() as f64, bounds)?;
    let labels: Vec<Label> = vertices.iter().map(label_of).collect();
    let groups: Vec<Vec<u32>> = if k == omega {
        let mut by_hyperplane: HashMap<Subspace, Vec<u32>> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            for h in v.subspaces_of(field, k - 1) {
                by_hyperplane.entry(h).or_default().push(i as u32);
            }
        }
        by_hyperplane.into_values().collect()
    } else {
        let index: HashMap<&Label, u32> = labels.iter().enumerate().map(|(i, l)| (l, i as u32)).collect();
        space
            .enumerate_singular(k + 1, bounds)?
            .iter()
            .map(|s| s.subspaces_of(field, k).iter().map(|u| index[&label_of(u)]).collect())
            .collect()
    };
    let graph = Graph::from_cliques(labels, meta, groups)?;
    let mut gens = GeneratorSet::new();
    let notes = push_isometries(&graph, space, bounds, &mut gens)?;
    Ok(Built { graph, gens, notes })
}

/// Incidence graph of points and totally isotropic lines of `W(3, q)`.
pub(super) fn quadrangle_incidence(q: u32, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    let space = FormedSpace::new(SpaceKind::Symplectic, 2, q)?;
    let field = space.field();
    let points = enumerate_subspaces(field, 4, 1, bounds)?;
    let lines = space.enumerate_singular(2, bounds)?;
    check_count((points.len() + lines.len()) as f64, bounds)?;
    let mut labels: Vec<Label> = points.iter().map(label_of).collect();
    labels.extend(lines.iter().map(label_of));
    let index: HashMap<Label, u32> = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
    let mut adj = vec![Vec::new(); labels.len()];
    for (j, line) in lines.iter().enumerate() {
        let lj = (points.len() + j) as u32;
        for p in line.subspaces_of(field, 1) {
            let pi = index[&label_of(&p)];
            adj[pi as usize].push(lj);
            adj[lj as usize].push(pi);
        }
    }
    let graph = Graph::new(labels, adj, meta)?;
    let mut gens = GeneratorSet::new();
    let mut notes = push_isometries(&graph, &space, bounds, &mut gens)?;
    notes.push("point-line duality not included: generators preserve the bipartition".to_string());
    Ok(Built { graph, gens, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::Bsgs;
    use num_bigint::BigUint;

    #[test]
    fn polar_graph_of_sp4_2() {
        let space = FormedSpace::new(SpaceKind::Symplectic, 2, 2).unwrap();
        let b = polar_grassmann(&space, 1, GraphMeta::default(), &Bounds::default()).unwrap();
        // collinearity graph of W(2): 15 points, each on 3 lines of 3 points
        assert_eq!((b.graph.n(), b.graph.valency()), (15, Some(6)));
        assert_eq!(Bsgs::new(&b.gens.perms, 15).unwrap().order(), BigUint::from(720u32));
    }

    #[test]
    fn dual_polar_adjacency_is_codimension_one() {
        let space = FormedSpace::new(SpaceKind::Symplectic, 2, 3).unwrap();
        let b = polar_grassmann(&space, 2, GraphMeta::default(), &Bounds::default()).unwrap();
        let f = space.field();
        assert_eq!((b.graph.n(), b.graph.valency()), (40, Some(12)));
        for (u, v) in b.graph.edges().into_iter().take(50) {
            let x = subspace_of(4, b.graph.label(u));
            let y = subspace_of(4, b.graph.label(v));
            assert_eq!(x.intersect(f, &y).unwrap().dim(), 1);
        }
    }

    #[test]
    fn polar_grassmann_edges_span_singular_spaces() {
        let space = FormedSpace::new(SpaceKind::Symplectic, 3, 2).unwrap();
        let b = polar_grassmann(&space, 2, GraphMeta::default(), &Bounds::default()).unwrap();
        let f = space.field();
        for (u, v) in b.graph.edges().into_iter().step_by(97) {
            let s = subspace_of(6, b.graph.label(u)).sum(f, &subspace_of(6, b.graph.label(v))).unwrap();
            assert_eq!(s.dim(), 3);
            assert!(space.is_singular(&s));
        }
    }
}
