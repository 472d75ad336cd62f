//! Distances, intersection arrays, geodesic enumeration and counting, and the
//! flag-to-geodesic bijections.

mod flags;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use flags::{bijection_check, canonical_pair, flag_to_geodesic, BijectionReport, FlagData};

use crate::error::{Error, Result};
use crate::families::Graph;

/// Largest vertex count for which all-pairs distances are stored.
pub const MAX_TABLE_VERTICES: usize = 20_000;

/// All-pairs distances of a connected graph.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u8>,
    diameter: u32,
}

impl DistanceTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: u32, v: u32) -> u32 {
        self.dist[u as usize * self.n + v as usize] as u32
    }

    pub fn row(&self, u: u32) -> &[u8] {
        &self.dist[u as usize * self.n..(u as usize + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// The vertices at distance `i` from `u`.
    pub fn sphere(&self, u: u32, i: u32) -> Vec<u32> {
        self.row(u).iter().enumerate().filter(|(_, &d)| d as u32 == i).map(|(v, _)| v as u32).collect()
    }
}

/// BFS from every vertex.
pub fn bfs_all(g: &Graph) -> Result<DistanceTable> {
    let n = g.n();
    if n > MAX_TABLE_VERTICES {
        return Err(Error::TooLarge(format!("all-pairs distances for {n} vertices")));
    }
    let rows: Vec<Vec<u32>> = (0..n as u32).into_par_iter().map(|v| g.distances_from(v)).collect();
    let mut dist = Vec::with_capacity(n * n);
    let mut diameter = 0;
    for row in rows {
        for d in row {
            if d == u32::MAX {
                return Err(Error::Disconnected);
            }
            if d > u8::MAX as u32 {
                return Err(Error::TooLarge(format!("distance {d}")));
            }
            diameter = diameter.max(d);
            dist.push(d as u8);
        }
    }
    Ok(DistanceTable { n, dist, diameter })
}

/// `{b_0, …, b_(δ−1); c_1, …, c_δ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionArray {
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.c.len()
    }

    pub fn valency(&self) -> u64 {
        self.b.first().copied().unwrap_or(0)
    }

    /// `a_i = k − b_i − c_i`, with `b_δ = 0` and `c_0 = 0`.
    pub fn a(&self, i: usize) -> u64 {
        let b = self.b.get(i).copied().unwrap_or(0);
        let c = if i == 0 { 0 } else { self.c[i - 1] };
        self.valency() - b - c
    }

    /// `k_i = b_0⋯b_(i−1) / c_1⋯c_i`, the size of each sphere of radius `i`.
    pub fn sphere_size(&self, i: usize) -> u64 {
        let num: u128 = self.b[..i].iter().map(|&x| x as u128).product();
        let den: u128 = self.c[..i].iter().map(|&x| x as u128).product();
        (num / den) as u64
    }

    pub fn c_product(&self) -> u128 {
        self.c.iter().map(|&x| x as u128).product()
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// Two pairs at the same distance whose `(c, b)` counts differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotDrgWitness {
    pub distance: u32,
    pub first: (u32, u32),
    pub first_counts: (u64, u64),
    pub second: (u32, u32),
    pub second_counts: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ArrayOutcome {
    Regular(IntersectionArray),
    NotRegular(NotDrgWitness),
}

impl ArrayOutcome {
    pub fn array(&self) -> Option<&IntersectionArray> {
        match self {
            ArrayOutcome::Regular(a) => Some(a),
            ArrayOutcome::NotRegular(_) => None,
        }
    }
}

/// `(c, b)` for the pair `(u, v)`: neighbours of `v` one step closer to and
/// one step further from `u`.
pub fn pair_counts(g: &Graph, dt: &DistanceTable, u: u32, v: u32) -> (u64, u64) {
    let d = dt.get(u, v);
    let row = dt.row(u);
    let mut c = 0;
    let mut b = 0;
    for &w in g.neighbours(v) {
        let dw = row[w as usize] as u32;
        if dw + 1 == d {
            c += 1;
        } else if dw == d + 1 {
            b += 1;
        }
    }
    (c, b)
}

/// The intersection array, or a witness that the graph is not
/// distance-regular. Pairs are scanned in lexicographic order, so the
/// witness is deterministic.
pub fn intersection_array(g: &Graph, dt: &DistanceTable) -> ArrayOutcome {
    let delta = dt.diameter() as usize;
    // per source: first pair at each distance, and the first in-row conflict
    type Row = (Vec<Option<(u32, (u64, u64))>>, Option<NotDrgWitness>);
    let rows: Vec<Row> = (0..g.n() as u32)
        .into_par_iter()
        .map(|u| {
            let mut first: Vec<Option<(u32, (u64, u64))>> = vec![None; delta + 1];
            for v in 0..g.n() as u32 {
                let d = dt.get(u, v) as usize;
                let counts = pair_counts(g, dt, u, v);
                match first[d] {
                    None => first[d] = Some((v, counts)),
                    Some((v0, c0)) if c0 != counts => {
                        let w = NotDrgWitness {
                            distance: d as u32,
                            first: (u, v0),
                            first_counts: c0,
                            second: (u, v),
                            second_counts: counts,
                        };
                        return (first, Some(w));
                    }
                    Some(_) => {}
                }
            }
            (first, None)
        })
        .collect();
    let mut global: Vec<Option<((u32, u32), (u64, u64))>> = vec![None; delta + 1];
    for (u, (first, conflict)) in rows.into_iter().enumerate() {
        for (d, entry) in first.into_iter().enumerate() {
            let Some((v, counts)) = entry else { continue };
            match global[d] {
                None => global[d] = Some(((u as u32, v), counts)),
                Some((pair, c0)) if c0 != counts => {
                    return ArrayOutcome::NotRegular(NotDrgWitness {
                        distance: d as u32,
                        first: pair,
                        first_counts: c0,
                        second: (u as u32, v),
                        second_counts: counts,
                    });
                }
                Some(_) => {}
            }
        }
        if let Some(w) = conflict {
            return ArrayOutcome::NotRegular(w);
        }
    }
    let counts: Vec<(u64, u64)> = global.iter().map(|e| e.map(|(_, c)| c).unwrap_or((0, 0))).collect();
    ArrayOutcome::Regular(IntersectionArray {
        b: (0..delta).map(|i| counts[i].1).collect(),
        c: (1..=delta).map(|i| counts[i].0).collect(),
    })
}

/// A path `v_0, …, v_ℓ` with `d(v_0, v_i) = i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Geodesic {
    pub vertices: Vec<u32>,
}

impl Geodesic {
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Checks adjacency of consecutive vertices and `d(v_0, v_i) = i`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let Some(&start) = self.vertices.first() else { return false };
        if self.vertices.iter().any(|&v| v as usize >= g.n()) {
            return false;
        }
        let dist = g.distances_from(start);
        self.vertices.windows(2).all(|w| g.is_adjacent(w[0], w[1]))
            && self.vertices.iter().enumerate().all(|(i, &v)| dist[v as usize] == i as u32)
    }
}

/// Every geodesic from `x` to `y`, in lexicographic order of vertex lists.
pub fn geodesics(g: &Graph, x: u32, y: u32) -> Vec<Geodesic> {
    let to_y = g.distances_from(y);
    let d = to_y[x as usize];
    if d == u32::MAX {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut path = vec![x];
    walk(g, &to_y, &mut path, &mut out);
    out.sort();
    out
}

fn walk(g: &Graph, to_y: &[u32], path: &mut Vec<u32>, out: &mut Vec<Geodesic>) {
    let v = *path.last().expect("nonempty path");
    let dv = to_y[v as usize];
    if dv == 0 {
        out.push(Geodesic { vertices: path.clone() });
        return;
    }
    for &u in g.neighbours(v) {
        if to_y[u as usize] + 1 == dv {
            path.push(u);
            walk(g, to_y, path, out);
            path.pop();
        }
    }
}

/// Number of shortest paths from `s` to every vertex.
pub fn path_counts(g: &Graph, s: u32) -> Result<(Vec<u32>, Vec<u128>)> {
    let dist = g.distances_from(s);
    let mut order: Vec<u32> = (0..g.n() as u32).filter(|&v| dist[v as usize] != u32::MAX).collect();
    order.sort_by_key(|&v| dist[v as usize]);
    let mut sigma = vec![0u128; g.n()];
    sigma[s as usize] = 1;
    for &v in order.iter().skip(1) {
        let dv = dist[v as usize];
        let mut total: u128 = 0;
        for &u in g.neighbours(v) {
            if dist[u as usize] + 1 == dv {
                total = total
                    .checked_add(sigma[u as usize])
                    .ok_or_else(|| Error::TooLarge("path count overflow".into()))?;
            }
        }
        sigma[v as usize] = total;
    }
    Ok((dist, sigma))
}

pub fn count_geodesics(g: &Graph, x: u32, y: u32) -> Result<u128> {
    Ok(path_counts(g, x)?.1[y as usize])
}

/// Ordered geodesic counts `ℒ_0, …, ℒ_δ` by brute force.
pub fn geodesic_census(g: &Graph) -> Result<Vec<u128>> {
    let per_source: Result<Vec<Vec<u128>>> = (0..g.n() as u32)
        .into_par_iter()
        .map(|x| {
            let (dist, sigma) = path_counts(g, x)?;
            let mut by_len = Vec::new();
            for (v, &d) in dist.iter().enumerate() {
                if d == u32::MAX {
                    return Err(Error::Disconnected);
                }
                let d = d as usize;
                if by_len.len() <= d {
                    by_len.resize(d + 1, 0u128);
                }
                by_len[d] += sigma[v];
            }
            Ok(by_len)
        })
        .collect();
    let mut total: Vec<u128> = Vec::new();
    for row in per_source? {
        if total.len() < row.len() {
            total.resize(row.len(), 0);
        }
        for (t, r) in total.iter_mut().zip(row) {
            *t = t.checked_add(r).ok_or_else(|| Error::TooLarge("census overflow".into()))?;
        }
    }
    Ok(total)
}

/// `ℒ_i = v b_0 b_1 ⋯ b_(i−1)` for `i = 0..δ`.
pub fn census_formula(v: usize, array: &IntersectionArray) -> Vec<u128> {
    let mut out = vec![v as u128];
    let mut acc = v as u128;
    for &b in &array.b {
        acc *= b as u128;
        out.push(acc);
    }
    out
}

/// `|𝓛_XY|` for the first vertex `X` and its first antipode `Y`, paired with
/// `c_1⋯c_δ`.
pub fn antipodal_geodesic_count(g: &Graph, dt: &DistanceTable) -> Result<(u128, u128)> {
    let array = match intersection_array(g, dt) {
        ArrayOutcome::Regular(a) => a,
        ArrayOutcome::NotRegular(_) => return Err(Error::NotDistanceRegular),
    };
    let y = dt.sphere(0, dt.diameter())[0];
    Ok((count_geodesics(g, 0, y)?, array.c_product()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitivity {
    Primitive,
    Bipartite,
    Antipodal,
    /// Bipartite and antipodal.
    Both,
    /// Some distance graph is disconnected, yet the graph is neither
    /// bipartite nor antipodal. Cannot happen for distance-regular graphs.
    OtherImprimitive,
}

/// Whether `Γ^(δ)` is a disjoint union of cliques with at least one
/// nontrivial class.
pub fn is_antipodal(dt: &DistanceTable) -> bool {
    let delta = dt.diameter();
    if delta < 2 {
        return false;
    }
    let n = dt.n() as u32;
    (0..n).all(|u| {
        let class = dt.sphere(u, delta);
        class.iter().all(|&v| class.iter().all(|&w| v == w || dt.get(v, w) == delta))
    })
}

pub fn primitivity(g: &Graph, dt: &DistanceTable) -> Primitivity {
    let delta = dt.diameter();
    let mut all_connected = true;
    for i in 1..=delta {
        let mut seen = vec![false; g.n()];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (u, &d) in dt.row(v).iter().enumerate() {
                if d as u32 == i && !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u as u32);
                }
            }
        }
        if count != g.n() {
            all_connected = false;
            break;
        }
    }
    if all_connected {
        return Primitivity::Primitive;
    }
    match (g.bipartition().is_some(), is_antipodal(dt)) {
        (true, true) => Primitivity::Both,
        (true, false) => Primitivity::Bipartite,
        (false, true) => Primitivity::Antipodal,
        (false, false) => Primitivity::OtherImprimitive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec, SpaceSpec};
    use crate::spaces::SpaceKind;
    use crate::Bounds;
    use proptest::prelude::*;

    fn g(spec: FamilySpec) -> Graph {
        build(&spec, &Bounds::default()).unwrap().graph
    }

    fn array(spec: FamilySpec) -> ArrayOutcome {
        let gr = g(spec);
        let dt = bfs_all(&gr).unwrap();
        intersection_array(&gr, &dt)
    }

    #[test]
    fn diameters() {
        assert_eq!(bfs_all(&g(FamilySpec::Hamming { k: 3, m: 2 })).unwrap().diameter(), 3);
        assert_eq!(bfs_all(&g(FamilySpec::DoubledOdd { k: 3 })).unwrap().diameter(), 5);
        let pg = g(FamilySpec::PolarGrassmann { space: SpaceSpec::new(SpaceKind::Symplectic, 3, 2), k: 2 });
        assert_eq!(bfs_all(&pg).unwrap().diameter(), 3);
    }

    #[test]
    fn arrays() {
        let j = array(FamilySpec::Johnson { n: 5, k: 2 });
        assert_eq!(j.array().unwrap(), &IntersectionArray { b: vec![6, 2], c: vec![1, 4] });
        assert_eq!(j.array().unwrap().to_string(), "{6,2;1,4}");
        assert_eq!(array(FamilySpec::Grassmann { n: 4, k: 2, q: 2 }).array().unwrap().c, vec![1, 9]);
        let pg = array(FamilySpec::PolarGrassmann { space: SpaceSpec::new(SpaceKind::Symplectic, 3, 2), k: 2 });
        let ArrayOutcome::NotRegular(w) = pg else { panic!("expected a witness") };
        assert_ne!(w.first_counts, w.second_counts);
    }

    #[test]
    fn witness_pairs_are_genuine() {
        let gr = g(FamilySpec::PolarGrassmann { space: SpaceSpec::new(SpaceKind::Symplectic, 3, 2), k: 2 });
        let dt = bfs_all(&gr).unwrap();
        let ArrayOutcome::NotRegular(w) = intersection_array(&gr, &dt) else { panic!() };
        assert_eq!(dt.get(w.first.0, w.first.1), w.distance);
        assert_eq!(dt.get(w.second.0, w.second.1), w.distance);
        assert_eq!(pair_counts(&gr, &dt, w.first.0, w.first.1), w.first_counts);
        assert_eq!(pair_counts(&gr, &dt, w.second.0, w.second.1), w.second_counts);
    }

    #[test]
    fn geodesic_enumeration() {
        let cube = g(FamilySpec::Hamming { k: 3, m: 2 });
        let all = geodesics(&cube, 0, 7);
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|p| p.is_valid(&cube) && p.length() == 3));
        assert_eq!(geodesics(&cube, 3, 3), vec![Geodesic { vertices: vec![3] }]);
        let des = g(FamilySpec::DoubledOdd { k: 3 });
        let dt = bfs_all(&des).unwrap();
        let y = dt.sphere(0, 5)[0];
        assert_eq!(geodesics(&des, 0, y).len(), 12);
        assert_eq!(count_geodesics(&des, 0, y).unwrap(), 12);
    }

    #[test]
    fn census_examples() {
        let cube = g(FamilySpec::Hamming { k: 3, m: 2 });
        assert_eq!(geodesic_census(&cube).unwrap(), vec![8, 24, 48, 48]);
        assert_eq!(geodesic_census(&g(FamilySpec::Johnson { n: 5, k: 2 })).unwrap()[2], 120);
        assert_eq!(geodesic_census(&g(FamilySpec::Cycle { k: 5 })).unwrap(), vec![5, 10, 10]);
    }

    #[test]
    fn census_matches_formula_and_enumeration() {
        for spec in
            [FamilySpec::Johnson { n: 6, k: 3 }, FamilySpec::Odd { k: 3 }, FamilySpec::Grassmann { n: 4, k: 2, q: 2 }]
        {
            let gr = g(spec);
            let dt = bfs_all(&gr).unwrap();
            let a = intersection_array(&gr, &dt);
            let census = geodesic_census(&gr).unwrap();
            assert_eq!(census, census_formula(gr.n(), a.array().unwrap()));
            // independent count: enumerate every geodesic explicitly
            let mut by_len = vec![0u128; census.len()];
            for x in 0..gr.n() as u32 {
                for y in 0..gr.n() as u32 {
                    by_len[dt.get(x, y) as usize] += geodesics(&gr, x, y).len() as u128;
                }
            }
            assert_eq!(by_len, census);
        }
    }

    #[test]
    fn antipodal_counts() {
        for (spec, want) in [
            (FamilySpec::Johnson { n: 5, k: 2 }, 4),
            (FamilySpec::Grassmann { n: 4, k: 2, q: 2 }, 9),
            (FamilySpec::DualPolar { space: SpaceSpec::new(SpaceKind::Symplectic, 2, 2) }, 3),
        ] {
            let gr = g(spec);
            let dt = bfs_all(&gr).unwrap();
            assert_eq!(antipodal_geodesic_count(&gr, &dt).unwrap(), (want, want));
        }
        let pg = g(FamilySpec::PolarGrassmann { space: SpaceSpec::new(SpaceKind::Symplectic, 3, 2), k: 2 });
        let dt = bfs_all(&pg).unwrap();
        assert!(matches!(antipodal_geodesic_count(&pg, &dt), Err(Error::NotDistanceRegular)));
    }

    #[test]
    fn primitivity_examples() {
        let p = |spec| {
            let gr = g(spec);
            let dt = bfs_all(&gr).unwrap();
            primitivity(&gr, &dt)
        };
        assert_eq!(p(FamilySpec::Johnson { n: 5, k: 2 }), Primitivity::Primitive);
        assert_eq!(p(FamilySpec::Hamming { k: 4, m: 2 }), Primitivity::Both);
        assert_eq!(p(FamilySpec::DoubledOdd { k: 3 }), Primitivity::Both);
        assert_eq!(p(FamilySpec::Johnson { n: 6, k: 3 }), Primitivity::Antipodal);
        assert_eq!(p(FamilySpec::IncidenceDesign { n: 3, q: 2 }), Primitivity::Bipartite);
        assert_eq!(p(FamilySpec::Cycle { k: 7 }), Primitivity::Primitive);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn distance_table_is_a_metric(k in 3usize..12, u in 0u32..200, v in 0u32..200, w in 0u32..200) {
            let gr = g(FamilySpec::Cycle { k });
            let dt = bfs_all(&gr).unwrap();
            let n = k as u32;
            let (u, v, w) = (u % n, v % n, w % n);
            prop_assert_eq!(dt.get(u, v), dt.get(v, u));
            prop_assert!(dt.get(u, w) <= dt.get(u, v) + dt.get(v, w));
            prop_assert_eq!(dt.get(u, v), (u as i64 - v as i64).unsigned_abs().min(k as u64 - (u as i64 - v as i64).unsigned_abs()) as u32);
        }

        #[test]
        fn hamming_census_is_closed_form(k in 1usize..5, m in 2usize..4) {
            // ℒ_i = m^k · k!/(k−i)! · (m−1)^i
            let gr = g(FamilySpec::Hamming { k, m });
            let census = geodesic_census(&gr).unwrap();
            for (i, &l) in census.iter().enumerate() {
                let falling: u128 = ((k - i + 1)..=k).map(|x| x as u128).product();
                let want = (m as u128).pow(k as u32) * falling * (m as u128 - 1).pow(i as u32);
                prop_assert_eq!(l, want);
            }
        }
    }
}
