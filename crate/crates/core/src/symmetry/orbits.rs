use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Bsgs, Permutation};
use crate::error::{Error, Result};
use crate::families::Graph;
use crate::metrics::{bfs_all, DistanceTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectClass {
    Tuples,
    Pairs { distance: u32 },
    Geodesics { length: u32 },
    Arcs { s: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub object: ObjectClass,
    pub total: usize,
    pub orbit_count: usize,
    pub sizes: Vec<usize>,
    /// The smallest tuple of each orbit; orbits are listed in this order.
    pub representatives: Vec<Vec<u32>>,
}

impl OrbitReport {
    pub fn is_single_orbit(&self) -> bool {
        self.orbit_count == 1
    }

    /// Whether every orbit size divides `order`.
    pub fn lagrange_holds(&self, order: &BigUint) -> bool {
        self.sizes.iter().all(|&s| s > 0 && (order % BigUint::from(s)).is_zero())
    }
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let up = self.0[self.0[x as usize] as usize];
            self.0[x as usize] = up;
            x = up;
        }
        x
    }

    /// Returns true if the two classes were distinct.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi as usize] = lo;
        true
    }
}

/// Orbits of the group generated by `gens` on `tuples`, acting coordinatewise.
/// The tuple set must be invariant; duplicates are merged.
pub fn orbits_on_tuples(gens: &[Permutation], tuples: &[Vec<u32>], object: ObjectClass) -> Result<OrbitReport> {
    let mut sorted: Vec<Vec<u32>> = tuples.to_vec();
    sorted.par_sort_unstable();
    sorted.dedup();
    if let Some(len) = sorted.first().map(Vec::len) {
        if sorted.iter().any(|t| t.len() != len) {
            return Err(Error::BadParams("tuples must have equal length".into()));
        }
    }
    let index: HashMap<&[u32], u32> = sorted.iter().enumerate().map(|(i, t)| (t.as_slice(), i as u32)).collect();
    let mut uf = UnionFind::new(sorted.len());
    for g in gens {
        let images: Vec<Option<u32>> = sorted
            .par_iter()
            .map(|t| {
                let img: Vec<u32> = t.iter().map(|&v| g.apply(v)).collect();
                index.get(img.as_slice()).copied()
            })
            .collect();
        for (i, img) in images.into_iter().enumerate() {
            uf.union(i as u32, img.ok_or(Error::NotInvariant)?);
        }
    }
    let mut sizes: HashMap<u32, usize> = HashMap::new();
    for i in 0..sorted.len() as u32 {
        *sizes.entry(uf.find(i)).or_default() += 1;
    }
    // roots are orbit minima because unions keep the smaller index
    let mut roots: Vec<u32> = sizes.keys().copied().collect();
    roots.sort_unstable();
    Ok(OrbitReport {
        object,
        total: sorted.len(),
        orbit_count: roots.len(),
        sizes: roots.iter().map(|r| sizes[r]).collect(),
        representatives: roots.iter().map(|&r| sorted[r as usize].clone()).collect(),
    })
}

/// All geodesics of length `len`, as vertex tuples.
pub fn all_geodesics(g: &Graph, dt: &DistanceTable, len: u32) -> Vec<Vec<u32>> {
    (0..g.n() as u32).into_par_iter().flat_map_iter(|s| geodesics_from(g, dt, s, len)).collect()
}

/// All `s`-arcs: walks `v_0, …, v_s` with `v_(i+2) ≠ v_i`.
pub fn all_arcs(g: &Graph, s: u32) -> Vec<Vec<u32>> {
    (0..g.n() as u32)
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut out = Vec::new();
            let mut stack = vec![vec![v]];
            while let Some(path) = stack.pop() {
                if path.len() as u32 == s + 1 {
                    out.push(path);
                    continue;
                }
                let last = path[path.len() - 1];
                let back = if path.len() >= 2 { Some(path[path.len() - 2]) } else { None };
                for &u in g.neighbours(last).iter().rev() {
                    if Some(u) != back {
                        let mut next = path.clone();
                        next.push(u);
                        stack.push(next);
                    }
                }
            }
            out
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityVerdict {
    pub holds: bool,
    pub reports: Vec<OrbitReport>,
    /// Order of the generated group.
    #[serde(with = "super::decimal")]
    pub group_order: BigUint,
    pub lagrange_ok: bool,
}

fn verdict(gens: &[Permutation], n: usize, reports: Vec<OrbitReport>) -> Result<TransitivityVerdict> {
    let group_order = Bsgs::new(gens, n)?.order();
    let lagrange_ok = reports.iter().all(|r| r.lagrange_holds(&group_order));
    Ok(TransitivityVerdict {
        holds: reports.iter().all(OrbitReport::is_single_orbit),
        reports,
        group_order,
        lagrange_ok,
    })
}

/// One orbit on ordered pairs at each distance `0..=δ`.
pub fn check_distance_transitive(g: &Graph, gens: &[Permutation]) -> Result<TransitivityVerdict> {
    let dt = bfs_all(g)?;
    let mut reports = Vec::new();
    for i in 0..=dt.diameter() {
        let pairs: Vec<Vec<u32>> =
            (0..g.n() as u32).flat_map(|u| dt.sphere(u, i).into_iter().map(move |v| vec![u, v])).collect();
        reports.push(orbits_on_tuples(gens, &pairs, ObjectClass::Pairs { distance: i })?);
    }
    verdict(gens, g.n(), reports)
}

/// One orbit on geodesics of each length `1..=δ`.
pub fn check_geodesic_transitive(g: &Graph, gens: &[Permutation]) -> Result<TransitivityVerdict> {
    let dt = bfs_all(g)?;
    let mut reports = Vec::new();
    for len in 1..=dt.diameter() {
        let geos = all_geodesics(g, &dt, len);
        reports.push(orbits_on_tuples(gens, &geos, ObjectClass::Geodesics { length: len })?);
    }
    verdict(gens, g.n(), reports)
}

/// Geodesics of length `len` starting at `root`.
pub fn geodesics_from(g: &Graph, dt: &DistanceTable, root: u32, len: u32) -> Vec<Vec<u32>> {
    let row = dt.row(root);
    let mut out = Vec::new();
    let mut stack = vec![vec![root]];
    while let Some(path) = stack.pop() {
        if path.len() as u32 == len + 1 {
            out.push(path);
            continue;
        }
        let last = *path.last().expect("nonempty");
        let d = path.len() as u32;
        for &u in g.neighbours(last).iter().rev() {
            if row[u as usize] as u32 == d {
                let mut next = path.clone();
                next.push(u);
                stack.push(next);
            }
        }
    }
    out
}

/// Orbits on geodesics of each length `1..=δ`, computed from the
/// stabiliser of vertex 0 acting on the geodesics that start there. Needs a
/// vertex-transitive group; sizes are scaled to full orbit sizes and the
/// representatives coincide with those of [`check_geodesic_transitive`].
/// `known_order` must be the order of the generated group, not a lower
/// bound: randomised Schreier–Sims stops as soon as it reaches it. Without
/// it, or if it is never reached, the deterministic algorithm is used.
pub fn check_geodesic_transitive_rooted(
    g: &Graph,
    gens: &[Permutation],
    known_order: Option<&BigUint>,
) -> Result<TransitivityVerdict> {
    let dt = bfs_all(g)?;
    let n = g.n();
    let bsgs = match known_order {
        Some(order) => {
            let b = Bsgs::random_with_base_prefix(gens, n, &[0], 0, Some(order), 200)?;
            if &b.order() == order {
                b
            } else {
                Bsgs::with_base_prefix(gens, n, &[0])?
            }
        }
        None => Bsgs::with_base_prefix(gens, n, &[0])?,
    };
    if bsgs.base_orbit().len() != n && n > 1 {
        return Err(Error::BadParams("rooted orbit counting needs a vertex-transitive group".into()));
    }
    let stab = bsgs.stabilizer_generators(1);
    let mut reports = Vec::new();
    for len in 1..=dt.diameter() {
        let geos = geodesics_from(g, &dt, 0, len);
        let mut r = orbits_on_tuples(&stab, &geos, ObjectClass::Geodesics { length: len })?;
        r.total *= n;
        r.sizes.iter_mut().for_each(|s| *s *= n);
        reports.push(r);
    }
    let group_order = bsgs.order();
    let lagrange_ok = reports.iter().all(|r| r.lagrange_holds(&group_order));
    Ok(TransitivityVerdict {
        holds: reports.iter().all(OrbitReport::is_single_orbit),
        reports,
        group_order,
        lagrange_ok,
    })
}

pub fn orbits_on_arcs(g: &Graph, gens: &[Permutation], s: u32) -> Result<OrbitReport> {
    if s == 0 {
        return Err(Error::BadParams("arcs need s >= 1".into()));
    }
    orbits_on_tuples(gens, &all_arcs(g, s), ObjectClass::Arcs { s })
}

/// Cap on stabiliser generators used for block detection.
pub const MAX_STABILIZER_GENERATORS: usize = 10_000;

/// The finest block system in which `a` and `b` share a block.
fn minimal_blocks(gens: &[Permutation], n: usize, a: u32, b: u32) -> UnionFind {
    let mut uf = UnionFind::new(n);
    let mut queue = vec![(a, b)];
    uf.union(a, b);
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                queue.push((gx, gy));
            }
        }
    }
    uf
}

/// Whether the generated group is primitive on `0..n`. For each orbit of the
/// stabiliser of point 0, the minimal block containing 0 and that orbit is
/// computed; the group is primitive iff every such block is everything.
pub fn is_group_primitive(gens: &[Permutation], n: usize) -> Result<bool> {
    if n <= 2 {
        return Ok(true);
    }
    let bsgs = Bsgs::with_base_prefix(gens, n, &[0])?;
    if bsgs.base_orbit().len() != n {
        return Ok(false);
    }
    let mut stab = bsgs.stabilizer_generators(1);
    stab.truncate(MAX_STABILIZER_GENERATORS);
    let mut seen = vec![false; n];
    seen[0] = true;
    for a in 1..n as u32 {
        if seen[a as usize] {
            continue;
        }
        // mark the stabiliser orbit of a
        let mut stack = vec![a];
        seen[a as usize] = true;
        while let Some(x) = stack.pop() {
            for g in &stab {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        let mut uf = minimal_blocks(gens, n, 0, a);
        let root = uf.find(0);
        if (0..n as u32).any(|v| uf.find(v) != root) {
            return Ok(false);
        }
    }
    Ok(true)
}
