use serde::{Deserialize, Serialize};

use super::graph::{GeneratorSet, Graph, GraphMeta, Label};
use crate::error::{Error, Result};
use crate::symmetry::Permutation;

/// Which bipart a halved graph lives on: `Plus` is the one containing
/// vertex 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Plus,
    Minus,
}

fn nested_meta(op: &str, g: &Graph) -> GraphMeta {
    GraphMeta::new(op).with("of", g.meta())
}

/// Restricts each permutation to `vertices`, which it must stabilise.
fn restrict(perms: &[(Permutation, String)], vertices: &[u32], n: usize) -> Result<GeneratorSet> {
    let mut pos = vec![u32::MAX; n];
    for (i, &v) in vertices.iter().enumerate() {
        pos[v as usize] = i as u32;
    }
    let mut out = GeneratorSet::new();
    for (p, tag) in perms {
        let images: Vec<u32> = vertices.iter().map(|&v| pos[p.apply(v) as usize]).collect();
        if images.contains(&u32::MAX) {
            return Err(Error::NotInvariant);
        }
        out.push(Permutation::from_images(images)?, tag);
    }
    Ok(out)
}

/// The distance-2 graph on one bipart of a connected bipartite graph, with
/// the generators of the bipart stabiliser.
pub fn halved(g: &Graph, gens: &GeneratorSet, part: Part) -> Result<(Graph, GeneratorSet)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let colour = g.bipartition().ok_or(Error::NotBipartite)?;
    let side = part == Part::Minus;
    let vertices: Vec<u32> = (0..g.n() as u32).filter(|&v| colour[v as usize] == side).collect();
    let mut pos = vec![u32::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        pos[v as usize] = i as u32;
    }
    let adj: Vec<Vec<u32>> = vertices
        .iter()
        .map(|&v| {
            let mut row: Vec<u32> = g
                .neighbours(v)
                .iter()
                .flat_map(|&u| g.neighbours(u).iter().copied())
                .filter(|&w| w != v)
                .map(|w| pos[w as usize])
                .collect();
            row.sort_unstable();
            row.dedup();
            row
        })
        .collect();
    let labels: Vec<Label> = vertices.iter().map(|&v| g.label(v).clone()).collect();
    let graph = Graph::new(labels, adj, nested_meta("halved", g).with("part", part))?;

    // Schreier generators of the bipart stabiliser with coset
    // representatives {1, s} for the first swapping generator s
    let swaps = |p: &Permutation| colour[p.apply(0) as usize];
    let swapper = gens.perms.iter().find(|p| swaps(p)).cloned();
    let mut candidates = Vec::new();
    for (p, tag) in gens.perms.iter().zip(&gens.provenance) {
        match (&swapper, swaps(p)) {
            (_, false) => {
                candidates.push((p.clone(), tag.clone()));
                if let Some(s) = &swapper {
                    candidates.push((s.then(p).then(&s.inverse()), format!("{tag} conjugated")));
                }
            }
            (Some(s), true) => {
                candidates.push((p.then(&s.inverse()), format!("{tag} composed with a swap")));
                candidates.push((s.then(p), format!("{tag} composed with a swap")));
            }
            (None, true) => unreachable!("a swapping generator exists"),
        }
    }
    let induced = restrict(&candidates, &vertices, g.n())?;
    induced.verify(&graph)?;
    Ok((graph, induced))
}

/// All-pairs distances; errors on disconnected graphs.
fn distance_matrix(g: &Graph) -> Result<Vec<Vec<u32>>> {
    use rayon::prelude::*;
    let rows: Vec<Vec<u32>> = (0..g.n() as u32).into_par_iter().map(|v| g.distances_from(v)).collect();
    if rows.iter().any(|r| r.contains(&u32::MAX)) {
        return Err(Error::Disconnected);
    }
    Ok(rows)
}

/// The quotient by antipodal classes, with the projected generators.
pub fn folded(g: &Graph, gens: &GeneratorSet) -> Result<(Graph, GeneratorSet)> {
    let dist = distance_matrix(g)?;
    let diameter = dist.iter().flat_map(|r| r.iter().copied()).max().unwrap_or(0);
    if diameter < 2 {
        return Err(Error::NotAntipodal);
    }
    let n = g.n();
    let class_of_set = |v: usize| -> Vec<u32> {
        (0..n as u32).filter(|&u| u as usize == v || dist[v][u as usize] == diameter).collect()
    };
    let mut class = vec![u32::MAX; n];
    let mut reps: Vec<Vec<u32>> = Vec::new();
    for v in 0..n {
        if class[v] != u32::MAX {
            continue;
        }
        let members = class_of_set(v);
        for &u in &members {
            if class_of_set(u as usize) != members {
                return Err(Error::NotAntipodal);
            }
            class[u as usize] = reps.len() as u32;
        }
        reps.push(members);
    }
    if reps.len() == n {
        return Err(Error::NotAntipodal);
    }
    let adj: Vec<Vec<u32>> = reps
        .iter()
        .map(|members| {
            let mut row: Vec<u32> =
                members.iter().flat_map(|&v| g.neighbours(v).iter().map(|&u| class[u as usize])).collect();
            row.sort_unstable();
            row.dedup();
            row
        })
        .collect();
    let labels: Vec<Label> = reps.iter().map(|m| g.label(m[0]).clone()).collect();
    let graph = Graph::new(labels, adj, nested_meta("folded", g))?;
    let mut out = GeneratorSet::new();
    for (p, tag) in gens.perms.iter().zip(&gens.provenance) {
        let images = reps.iter().map(|m| class[p.apply(m[0]) as usize]).collect();
        out.push(Permutation::from_images(images)?, tag);
    }
    out.verify(&graph)?;
    Ok((graph, out))
}

/// `Γ × {0, 1}` with `(u, 0) ~ (v, 1)` whenever `u ~ v`. Vertex `(v, s)` has
/// index `s·n + v` and label `label(v)` followed by `s`.
pub fn bipartite_double(g: &Graph, gens: &GeneratorSet) -> Result<(Graph, GeneratorSet)> {
    let n = g.n() as u32;
    let mut labels = Vec::with_capacity(2 * g.n());
    for s in 0..2u32 {
        for v in 0..n {
            let mut l = g.label(v).clone();
            l.push(s);
            labels.push(l);
        }
    }
    let mut adj = Vec::with_capacity(2 * g.n());
    for s in 0..2u32 {
        for v in 0..n {
            adj.push(g.neighbours(v).iter().map(|&u| (1 - s) * n + u).collect());
        }
    }
    let graph = Graph::new(labels, adj, nested_meta("bipartite_double", g))?;
    let mut out = GeneratorSet::new();
    for (p, tag) in gens.perms.iter().zip(&gens.provenance) {
        let images = (0..2 * n).map(|x| (x / n) * n + p.apply(x % n)).collect();
        out.push(Permutation::from_images(images)?, tag);
    }
    out.push(Permutation::from_images((0..2 * n).map(|x| (x + n) % (2 * n)).collect())?, "side swap");
    out.verify(&graph)?;
    Ok((graph, out))
}

/// The distance-`i` graph and its connected components.
pub fn distance_power(g: &Graph, i: usize) -> Result<(Graph, Vec<Vec<u32>>)> {
    let dist = distance_matrix(g)?;
    let diameter = dist.iter().flat_map(|r| r.iter().copied()).max().unwrap_or(0) as usize;
    if i == 0 || i > diameter {
        return Err(Error::BadDistance(i));
    }
    let adj = dist
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, &d)| d as usize == i).map(|(u, _)| u as u32).collect())
        .collect();
    let graph = Graph::new(g.labels().to_vec(), adj, nested_meta("distance_power", g).with("i", i))?;
    let comps = graph.components();
    Ok((graph, comps))
}

/// Edges of `Γ` as vertices, adjacent when they share an endpoint. Each edge
/// `u < v` is labelled `[u, v]`.
pub fn line_graph(g: &Graph, gens: &GeneratorSet) -> Result<(Graph, GeneratorSet)> {
    let edges = g.edges();
    let index: std::collections::HashMap<(u32, u32), u32> =
        edges.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
    let adj = edges
        .iter()
        .map(|&(a, b)| {
            let mut row = Vec::new();
            for (x, y) in [(a, b), (b, a)] {
                for &z in g.neighbours(x) {
                    if z != y {
                        row.push(index[&(x.min(z), x.max(z))]);
                    }
                }
            }
            row
        })
        .collect();
    let labels = edges.iter().map(|&(a, b)| vec![a, b]).collect();
    let graph = Graph::new(labels, adj, nested_meta("line_graph", g))?;
    let mut out = GeneratorSet::new();
    for (p, tag) in gens.perms.iter().zip(&gens.provenance) {
        let images = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (p.apply(a), p.apply(b));
                index[&(x.min(y), x.max(y))]
            })
            .collect();
        out.push(Permutation::from_images(images)?, tag);
    }
    out.verify(&graph)?;
    Ok((graph, out))
}
