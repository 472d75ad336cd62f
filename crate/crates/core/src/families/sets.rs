use super::graph::{induced_permutation, GeneratorSet, Graph, GraphMeta, Label};
use super::{check_count, Built};
use crate::error::{Error, Result};
use crate::Bounds;

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// All `k`-subsets of `0..n` as sorted vectors, in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Label> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<u32> = (0..k as u32).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (c[i] as usize) < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn apply_to_set(s: &[u32], f: impl Fn(u32) -> u32) -> Label {
    let mut out: Label = s.iter().map(|&x| f(x)).collect();
    out.sort_unstable();
    out
}

fn transposition(a: u32, b: u32) -> impl Fn(u32) -> u32 {
    move |x| {
        if x == a {
            b
        } else if x == b {
            a
        } else {
            x
        }
    }
}

fn complement(s: &[u32], n: usize) -> Label {
    (0..n as u32).filter(|x| !s.contains(x)).collect()
}

/// Generators of `Sym(0..n)` acting on set labels through `canon`.
fn symmetric_gens(g: &Graph, n: usize, canon: impl Fn(Label) -> Label + Sync) -> Result<GeneratorSet> {
    let mut gens = GeneratorSet::new();
    for i in 0..n.saturating_sub(1) as u32 {
        let t = transposition(i, i + 1);
        gens.push(induced_permutation(g, |l| canon(apply_to_set(l, &t)))?, "adjacent transposition");
    }
    Ok(gens)
}

pub(super) fn johnson(n: usize, k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if k == 0 || 2 * k > n {
        return Err(Error::BadParams(format!("Johnson graph needs 1 <= k <= n/2, got n={n} k={k}")));
    }
    check_count(binomial(n, k), bounds)?;
    let labels = subsets(n, k);
    let graph = Graph::from_neighbour_fn(labels, meta, |a| {
        let out_of: Vec<u32> = complement(a, n);
        let mut nb = Vec::with_capacity(k * (n - k));
        for i in 0..k {
            for &y in &out_of {
                let mut b = a.clone();
                b[i] = y;
                b.sort_unstable();
                nb.push(b);
            }
        }
        nb
    })?;
    let gens = symmetric_gens(&graph, n, |l| l)?;
    Ok(Built { graph, gens, notes: Vec::new() })
}

pub(super) fn odd(k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if k < 2 {
        return Err(Error::BadParams(format!("odd graph needs k >= 2, got {k}")));
    }
    let n = 2 * k - 1;
    check_count(binomial(n, k - 1), bounds)?;
    let graph = Graph::from_neighbour_fn(subsets(n, k - 1), meta, |a| {
        let rest = complement(a, n);
        subsets(rest.len(), k - 1).into_iter().map(|s| s.iter().map(|&i| rest[i as usize]).collect()).collect()
    })?;
    let gens = symmetric_gens(&graph, n, |l| l)?;
    Ok(Built { graph, gens, notes: Vec::new() })
}

pub(super) fn doubled_odd(k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if k < 3 {
        return Err(Error::BadParams(format!("doubled odd graph needs a ground set of size 2k-1 >= 5, got k = {k}")));
    }
    let n = 2 * k - 1;
    check_count(2.0 * binomial(n, k), bounds)?;
    let mut labels = subsets(n, k - 1);
    labels.extend(subsets(n, k));
    let graph = Graph::from_neighbour_fn(labels, meta, |a| {
        if a.len() == k - 1 {
            complement(a, n)
                .into_iter()
                .map(|y| {
                    let mut b = a.clone();
                    b.push(y);
                    b.sort_unstable();
                    b
                })
                .collect()
        } else {
            (0..k).map(|i| a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect()).collect()
        }
    })?;
    let mut gens = symmetric_gens(&graph, n, |l| l)?;
    gens.push(induced_permutation(&graph, |l| complement(l, n))?, "complement swap");
    Ok(Built { graph, gens, notes: Vec::new() })
}

pub(super) fn folded_johnson(k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if k < 2 {
        return Err(Error::BadParams(format!("folded Johnson graph needs k >= 2, got {k}")));
    }
    let n = 2 * k;
    check_count(binomial(n, k) / 2.0, bounds)?;
    // each class {A, Ā} is named by the member containing 0
    let canon = move |a: Label| if a.first() == Some(&0) { a } else { complement(&a, n) };
    let labels: Vec<Label> = subsets(n, k).into_iter().filter(|a| a[0] == 0).collect();
    let graph = Graph::from_neighbour_fn(labels, meta, |a| {
        let out_of = complement(a, n);
        let mut nb = Vec::new();
        for i in 0..k {
            for &y in &out_of {
                let mut b = a.clone();
                b[i] = y;
                b.sort_unstable();
                nb.push(canon(b));
            }
        }
        nb
    })?;
    let gens = symmetric_gens(&graph, n, canon)?;
    Ok(Built { graph, gens, notes: Vec::new() })
}

/// All words of length `k` over `0..m`, in lexicographic order.
pub(crate) fn words(k: usize, m: usize) -> Vec<Label> {
    let total = m.pow(k as u32);
    (0..total)
        .map(|mut x| {
            let mut w = vec![0u32; k];
            for i in (0..k).rev() {
                w[i] = (x % m) as u32;
                x /= m;
            }
            w
        })
        .collect()
}

pub(super) fn hamming(k: usize, m: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if k == 0 || m < 2 {
        return Err(Error::BadParams(format!("Hamming graph needs k >= 1 and m >= 2, got k={k} m={m}")));
    }
    check_count((m as f64).powi(k as i32), bounds)?;
    let graph = Graph::from_neighbour_fn(words(k, m), meta, |w| {
        let mut nb = Vec::with_capacity(k * (m - 1));
        for i in 0..k {
            for s in 0..m as u32 {
                if s != w[i] {
                    let mut v = w.clone();
                    v[i] = s;
                    nb.push(v);
                }
            }
        }
        nb
    })?;
    let mut gens = GeneratorSet::new();
    for a in 0..m as u32 - 1 {
        let t = transposition(a, a + 1);
        gens.push(
            induced_permutation(&graph, |w| {
                let mut v = w.clone();
                v[0] = t(v[0]);
                v
            })?,
            "symbol transposition",
        );
    }
    for i in 0..k.saturating_sub(1) {
        gens.push(
            induced_permutation(&graph, |w| {
                let mut v = w.clone();
                v.swap(i, i + 1);
                v
            })?,
            "coordinate swap",
        );
    }
    Ok(Built { graph, gens, notes: Vec::new() })
}

pub(super) fn cycle(k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if k < 3 {
        return Err(Error::BadParams(format!("cycle needs k >= 3, got {k}")));
    }
    check_count(k as f64, bounds)?;
    let labels: Vec<Label> = (0..k as u32).map(|i| vec![i]).collect();
    let kk = k as u32;
    let graph = Graph::from_neighbour_fn(labels, meta, |l| vec![vec![(l[0] + 1) % kk], vec![(l[0] + kk - 1) % kk]])?;
    let mut gens = GeneratorSet::new();
    gens.push(induced_permutation(&graph, |l| vec![(l[0] + 1) % kk])?, "rotation");
    gens.push(induced_permutation(&graph, |l| vec![(kk - l[0]) % kk])?, "reflection");
    Ok(Built { graph, gens, notes: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<u32>::new()]);
        assert!(subsets(2, 3).is_empty());
        let s = subsets(6, 3);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn word_enumeration() {
        let w = words(2, 3);
        assert_eq!(w.len(), 9);
        assert_eq!(w[5], vec![1, 2]);
    }

    #[test]
    fn odd_graph_is_kneser() {
        let b = odd(4, GraphMeta::default(), &Bounds::default()).unwrap();
        // O(4): 35 vertices, valency 4
        assert_eq!((b.graph.n(), b.graph.valency()), (35, Some(4)));
        for (u, v) in b.graph.edges() {
            let (a, c) = (b.graph.label(u), b.graph.label(v));
            assert!(a.iter().all(|x| !c.contains(x)));
        }
    }

    #[test]
    fn folded_johnson_adjacency() {
        let b = folded_johnson(3, GraphMeta::default(), &Bounds::default()).unwrap();
        // J(6,3) has 20 vertices of valency 9, folding halves the count
        assert_eq!((b.graph.n(), b.graph.valency()), (10, Some(9)));
        let b = folded_johnson(4, GraphMeta::default(), &Bounds::default()).unwrap();
        assert_eq!((b.graph.n(), b.graph.valency()), (35, Some(16)));
        for (u, v) in b.graph.edges() {
            let meet = b.graph.label(u).iter().filter(|x| b.graph.label(v).contains(x)).count();
            assert!(meet == 1 || meet == 3);
        }
    }
}
