use std::collections::HashMap;

use super::graph::Graph;
use crate::symmetry::Permutation;

/// For each vertex, how many vertices lie at each distance.
fn profiles(g: &Graph) -> Vec<Vec<u32>> {
    (0..g.n() as u32)
        .map(|v| {
            let mut counts = Vec::new();
            for d in g.distances_from(v) {
                let d = if d == u32::MAX { 0 } else { d as usize + 1 };
                if counts.len() <= d {
                    counts.resize(d + 1, 0);
                }
                counts[d] += 1;
            }
            counts
        })
        .collect()
}

/// An isomorphism `a → b` as a permutation of vertex indices, found by
/// backtracking over vertices coloured by their distance profiles.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Permutation> {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let pa = profiles(a);
    let pb = profiles(b);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut colour: HashMap<&Vec<u32>, u32> = HashMap::new();
    for p in &sa {
        let next = colour.len() as u32;
        colour.entry(p).or_insert(next);
    }
    let ca: Vec<u32> = pa.iter().map(|p| colour[p]).collect();
    let cb: Vec<u32> = pb.iter().map(|p| colour[p]).collect();

    // visit `a` in BFS order from each component's first vertex
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s as u32);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &u in a.neighbours(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    order.push(u);
                }
            }
        }
    }

    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &order, 0, &ca, &cb, &mut map, &mut used) {
        Some(Permutation::from_images(map).expect("bijection"))
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    order: &[u32],
    depth: usize,
    ca: &[u32],
    cb: &[u32],
    map: &mut [u32],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    // prefer candidates adjacent to the image of an already mapped neighbour
    let anchor = a.neighbours(v).iter().find(|&&u| map[u as usize] != u32::MAX).map(|&u| map[u as usize]);
    let candidates: Vec<u32> = match anchor {
        Some(w) => b.neighbours(w).to_vec(),
        None => (0..b.n() as u32).collect(),
    };
    for w in candidates {
        if used[w as usize] || cb[w as usize] != ca[v as usize] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| a.is_adjacent(u, v) == b.is_adjacent(map[u as usize], w));
        if !consistent {
            continue;
        }
        map[v as usize] = w;
        used[w as usize] = true;
        if extend(a, b, order, depth + 1, ca, cb, map, used) {
            return true;
        }
        map[v as usize] = u32::MAX;
        used[w as usize] = false;
    }
    false
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}
