use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetry::Permutation;

/// Canonical vertex label: a sorted subset, a flattened RREF basis, a word or
/// a flattened matrix, depending on the family.
pub type Label = Vec<u32>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub family: String,
    pub params: BTreeMap<String, serde_json::Value>,
}

impl GraphMeta {
    pub fn new(family: &str) -> GraphMeta {
        GraphMeta { family: family.to_string(), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> GraphMeta {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("serialisable parameter"));
        self
    }
}

/// A finite simple undirected graph with labelled vertices.
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<Label>,
    adj: Vec<Vec<u32>>,
    meta: GraphMeta,
    index: HashMap<Label, u32>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.labels == other.labels && self.adj == other.adj && self.meta == other.meta
    }
}

impl Graph {
    /// Builds a graph from labels and neighbour lists, sorting the lists and
    /// checking for loops, asymmetry and repeated labels.
    pub fn new(labels: Vec<Label>, mut adj: Vec<Vec<u32>>, meta: GraphMeta) -> Result<Graph> {
        let n = labels.len();
        if adj.len() != n {
            return Err(Error::Malformed(format!("{} adjacency rows for {n} vertices", adj.len())));
        }
        adj.par_iter_mut().for_each(|row| {
            row.sort_unstable();
            row.dedup();
        });
        for (v, row) in adj.iter().enumerate() {
            for &u in row {
                if u as usize >= n {
                    return Err(Error::Malformed(format!("neighbour {u} out of range")));
                }
                if u as usize == v {
                    return Err(Error::Malformed(format!("loop at vertex {v}")));
                }
                if adj[u as usize].binary_search(&(v as u32)).is_err() {
                    return Err(Error::Malformed(format!("edge {v}-{u} is not symmetric")));
                }
            }
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i as u32).is_some() {
                return Err(Error::Malformed(format!("repeated label {l:?}")));
            }
        }
        Ok(Graph { labels, adj, meta, index })
    }

    /// Builds adjacency by asking `neighbours` for the labels adjacent to
    /// each vertex. Every returned label must be a vertex.
    pub fn from_neighbour_fn<F>(labels: Vec<Label>, meta: GraphMeta, neighbours: F) -> Result<Graph>
    where
        F: Fn(&Label) -> Vec<Label> + Sync,
    {
        let index: HashMap<&Label, u32> = labels.iter().enumerate().map(|(i, l)| (l, i as u32)).collect();
        let adj: Result<Vec<Vec<u32>>> = labels
            .par_iter()
            .map(|l| {
                neighbours(l)
                    .iter()
                    .map(|m| {
                        index
                            .get(m)
                            .copied()
                            .ok_or_else(|| Error::Malformed(format!("neighbour {m:?} is not a vertex")))
                    })
                    .collect()
            })
            .collect();
        Graph::new(labels, adj?, meta)
    }

    /// Builds adjacency from cliques: vertices sharing a group are adjacent.
    pub fn from_cliques(
        labels: Vec<Label>,
        meta: GraphMeta,
        groups: impl IntoIterator<Item = Vec<u32>>,
    ) -> Result<Graph> {
        let mut adj = vec![Vec::new(); labels.len()];
        for g in groups {
            for &a in &g {
                for &b in &g {
                    if a != b {
                        adj[a as usize].push(b);
                    }
                }
            }
        }
        Graph::new(labels, adj, meta)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: u32) -> &Label {
        &self.labels[v as usize]
    }

    pub fn index_of(&self, label: &[u32]) -> Option<u32> {
        self.index.get(label).copied()
    }

    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn is_adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }

    pub fn set_meta(&mut self, meta: GraphMeta) {
        self.meta = meta;
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, row) in self.adj.iter().enumerate() {
            for &v in row {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    /// The common degree, if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|r| r.len() == d).then_some(d)
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s as u32];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &u in &self.adj[v as usize] {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.components().len() == 1
    }

    /// The subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[u32], meta: GraphMeta) -> Result<Graph> {
        let mut pos = vec![u32::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v as usize]
                    .iter()
                    .filter(|&&u| pos[u as usize] != u32::MAX)
                    .map(|&u| pos[u as usize])
                    .collect()
            })
            .collect();
        Graph::new(vertices.iter().map(|&v| self.labels[v as usize].clone()).collect(), adj, meta)
    }

    /// BFS distances from `s`; unreachable vertices get `u32::MAX`.
    pub fn distances_from(&self, s: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        dist[s as usize] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize] + 1;
            for &u in &self.adj[v as usize] {
                if dist[u as usize] == u32::MAX {
                    dist[u as usize] = d;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// A proper 2-colouring with vertex 0 coloured `false`, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n()];
        for s in 0..self.n() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = colour[v].expect("coloured");
                for &u in &self.adj[v] {
                    match colour[u as usize] {
                        None => {
                            colour[u as usize] = Some(!c);
                            stack.push(u as usize);
                        }
                        Some(cu) if cu == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.expect("coloured")).collect())
    }

    /// Whether `p` maps edges to edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n()
            && self.adj.par_iter().enumerate().all(|(u, row)| {
                let pu = p.apply(u as u32);
                row.iter().all(|&v| self.is_adjacent(pu, p.apply(v)))
            })
    }
}

/// Automorphisms of a graph, each with a short description of its origin.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub perms: Vec<Permutation>,
    pub provenance: Vec<String>,
}

impl GeneratorSet {
    pub fn new() -> GeneratorSet {
        GeneratorSet::default()
    }

    /// Adds `p` unless it is the identity or already present.
    pub fn push(&mut self, p: Permutation, tag: &str) {
        if !p.is_identity() && !self.perms.contains(&p) {
            self.perms.push(p);
            self.provenance.push(tag.to_string());
        }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Checks that every generator is an automorphism of `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        for (p, tag) in self.perms.iter().zip(&self.provenance) {
            if !g.is_automorphism(p) {
                return Err(Error::NotPermutation(format!("generator '{tag}' is not an automorphism")));
            }
        }
        Ok(())
    }
}

/// The permutation induced on `g` by a map on labels.
pub fn induced_permutation(g: &Graph, f: impl Fn(&Label) -> Label + Sync) -> Result<Permutation> {
    let images: Result<Vec<u32>> = g
        .labels()
        .par_iter()
        .map(|l| {
            let img = f(l);
            g.index_of(&img).ok_or_else(|| Error::NotPermutation(format!("image {img:?} is not a vertex")))
        })
        .collect();
    Permutation::from_images(images?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(vec![vec![0], vec![1], vec![2]], vec![vec![1], vec![0, 2], vec![1]], GraphMeta::new("path")).unwrap()
    }

    #[test]
    fn rejects_asymmetric_and_loops() {
        let labels = vec![vec![0], vec![1]];
        assert!(Graph::new(labels.clone(), vec![vec![1], vec![]], GraphMeta::default()).is_err());
        assert!(Graph::new(labels.clone(), vec![vec![0], vec![]], GraphMeta::default()).is_err());
        assert!(Graph::new(vec![vec![0], vec![0]], vec![vec![], vec![]], GraphMeta::default()).is_err());
    }

    #[test]
    fn basic_queries() {
        let g = path3();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.valency(), None);
        assert!(g.is_connected());
        assert!(g.is_adjacent(0, 1) && !g.is_adjacent(0, 2));
        let flip = Permutation::from_images(vec![2, 1, 0]).unwrap();
        assert!(g.is_automorphism(&flip));
        assert!(!g.is_automorphism(&Permutation::from_images(vec![1, 0, 2]).unwrap()));
        let sub = g.induced(&[0, 2], GraphMeta::default()).unwrap();
        assert_eq!(sub.components().len(), 2);
    }
}
