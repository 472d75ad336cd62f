use std::collections::HashSet;

use super::graph::{induced_permutation, GeneratorSet, Graph, GraphMeta, Label};
use super::projective::gl_generators;
use super::sets::words;
use super::{check_count, Built};
use crate::algebra::{enumerate_subspaces, Elem, Field, Matrix};
use crate::error::{Error, Result};
use crate::Bounds;

fn add_flat(field: &Field, a: &[Elem], b: &[Elem]) -> Label {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

fn matrix_graph(field: &Field, labels: Vec<Label>, diffs: &[Label], meta: GraphMeta) -> Result<Graph> {
    Graph::from_neighbour_fn(labels, meta, |x| diffs.iter().map(|d| add_flat(field, x, d)).collect())
}

fn push_matrix_map(
    g: &Graph,
    rows: usize,
    cols: usize,
    gens: &mut GeneratorSet,
    tag: &str,
    f: impl Fn(&Matrix) -> Matrix + Sync,
) -> Result<()> {
    let p = induced_permutation(g, |l| f(&Matrix::from_flat(rows, cols, l.clone()).expect("shape")).data().to_vec())?;
    gens.push(p, tag);
    Ok(())
}

fn push_translations(g: &Graph, field: &Field, basis: &[Label], gens: &mut GeneratorSet) -> Result<()> {
    for t in basis {
        gens.push(induced_permutation(g, |l| add_flat(field, l, t))?, "translation");
    }
    Ok(())
}

fn push_frobenius(g: &Graph, field: &Field, gens: &mut GeneratorSet) -> Result<()> {
    if field.degree() > 1 {
        gens.push(
            induced_permutation(g, |l| l.iter().map(|&a| field.frobenius(a, 1)).collect())?,
            "field automorphism",
        );
    }
    Ok(())
}

fn outer(field: &Field, u: &[Elem], v: &[Elem]) -> Label {
    u.iter().flat_map(|&a| v.iter().map(move |&b| field.mul(a, b))).collect()
}

fn unit_matrix(rows: usize, cols: usize, entries: &[(usize, usize, Elem)]) -> Label {
    let mut m = vec![0; rows * cols];
    for &(i, j, b) in entries {
        m[i * cols + j] = b;
    }
    m
}

/// A minimal subset of `elems` whose prime-field span contains all of them.
fn additive_basis(field: &Field, elems: &[Elem]) -> Vec<Elem> {
    let p = field.characteristic();
    let mut span: HashSet<Elem> = HashSet::from([0]);
    let mut basis = Vec::new();
    for &e in elems {
        if span.contains(&e) {
            continue;
        }
        basis.push(e);
        let mut next = HashSet::new();
        for &s in &span {
            let mut x = s;
            for _ in 0..p {
                next.insert(x);
                x = field.add(x, e);
            }
        }
        span = next;
    }
    basis
}

/// `m × k` matrices, adjacent when the difference has rank one.
pub(super) fn bilinear(field: &Field, m: usize, k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if m == 0 || m > k {
        return Err(Error::BadParams(format!("bilinear forms graph needs 1 <= m <= k, got m={m} k={k}")));
    }
    let q = field.order();
    check_count((q as f64).powi((m * k) as i32), bounds)?;
    let nonzero_k: Vec<Vec<Elem>> = words(k, q as usize).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let mut diffs = Vec::new();
    for u in enumerate_subspaces(field, m, 1, bounds)? {
        for v in &nonzero_k {
            diffs.push(outer(field, u.basis_vector(0), v));
        }
    }
    let graph = matrix_graph(field, words(m * k, q as usize), &diffs, meta)?;
    let mut gens = GeneratorSet::new();
    let mut basis = Vec::new();
    for i in 0..m {
        for j in 0..k {
            for &b in &field.prime_basis() {
                basis.push(unit_matrix(m, k, &[(i, j, b)]));
            }
        }
    }
    push_translations(&graph, field, &basis, &mut gens)?;
    for a in gl_generators(field, m) {
        push_matrix_map(&graph, m, k, &mut gens, "left multiplication", |x| a.mul(field, x))?;
    }
    for b in gl_generators(field, k) {
        push_matrix_map(&graph, m, k, &mut gens, "right multiplication", |x| x.mul(field, &b))?;
    }
    push_frobenius(&graph, field, &mut gens)?;
    Ok(Built { graph, gens, notes: Vec::new() })
}

/// Alternating `k × k` matrices, adjacent when the difference has rank two.
pub(super) fn alternating(field: &Field, k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if k < 2 {
        return Err(Error::BadParams(format!("alternating forms graph needs k >= 2, got {k}")));
    }
    let q = field.order();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    check_count((q as f64).powi(pairs.len() as i32), bounds)?;
    let from_upper = |upper: &[Elem]| -> Label {
        let mut m = vec![0; k * k];
        for (&(i, j), &a) in pairs.iter().zip(upper) {
            m[i * k + j] = a;
            m[j * k + i] = field.neg(a);
        }
        m
    };
    let mut labels: Vec<Label> = words(pairs.len(), q as usize).iter().map(|w| from_upper(w)).collect();
    labels.sort();
    let mut diffs = Vec::new();
    for plane in enumerate_subspaces(field, k, 2, bounds)? {
        let (u, v) = (plane.basis_vector(0), plane.basis_vector(1));
        let uv = outer(field, u, v);
        let vu = outer(field, v, u);
        let base: Label = uv.iter().zip(&vu).map(|(&a, &b)| field.sub(a, b)).collect();
        for c in 1..q {
            diffs.push(base.iter().map(|&a| field.mul(c, a)).collect());
        }
    }
    let graph = matrix_graph(field, labels, &diffs, meta)?;
    let mut gens = GeneratorSet::new();
    let mut basis = Vec::new();
    for &(i, j) in &pairs {
        for &b in &field.prime_basis() {
            basis.push(unit_matrix(k, k, &[(i, j, b), (j, i, field.neg(b))]));
        }
    }
    push_translations(&graph, field, &basis, &mut gens)?;
    for a in gl_generators(field, k) {
        let at = a.transpose();
        push_matrix_map(&graph, k, k, &mut gens, "congruence", |x| a.mul(field, x).mul(field, &at))?;
    }
    push_frobenius(&graph, field, &mut gens)?;
    Ok(Built { graph, gens, notes: Vec::new() })
}

/// Hermitian `k × k` matrices over `GF(r²)`, adjacent at difference rank one.
pub(super) fn hermitian(field: &Field, k: usize, meta: GraphMeta, bounds: &Bounds) -> Result<Built> {
    if k < 1 {
        return Err(Error::BadParams("hermitian forms graph needs k >= 1".to_string()));
    }
    if !field.degree().is_multiple_of(2) {
        return Err(Error::NotASquare(field.order() as u64));
    }
    let q = field.order();
    let sigma = field.involution()?;
    let fixed: Vec<Elem> = field.elements().filter(|&a| sigma(a) == a).collect();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    check_count((fixed.len() as f64).powi(k as i32) * (q as f64).powi(pairs.len() as i32), bounds)?;
    let mut labels = Vec::new();
    for diag in words(k, fixed.len()) {
        for upper in words(pairs.len(), q as usize) {
            let mut m = vec![0; k * k];
            for (i, &d) in diag.iter().enumerate() {
                m[i * k + i] = fixed[d as usize];
            }
            for (&(i, j), &a) in pairs.iter().zip(&upper) {
                m[i * k + j] = a;
                m[j * k + i] = sigma(a);
            }
            labels.push(m);
        }
    }
    labels.sort();
    let mut diffs = Vec::new();
    for p in enumerate_subspaces(field, k, 1, bounds)? {
        let u = p.basis_vector(0);
        let su: Vec<Elem> = u.iter().map(|&a| sigma(a)).collect();
        let base = outer(field, u, &su);
        for &c in fixed.iter().filter(|&&c| c != 0) {
            diffs.push(base.iter().map(|&a| field.mul(c, a)).collect());
        }
    }
    let graph = matrix_graph(field, labels, &diffs, meta)?;
    let mut gens = GeneratorSet::new();
    let mut basis = Vec::new();
    for i in 0..k {
        for &b in &additive_basis(field, &fixed) {
            basis.push(unit_matrix(k, k, &[(i, i, b)]));
        }
    }
    for &(i, j) in &pairs {
        for &b in &field.prime_basis() {
            basis.push(unit_matrix(k, k, &[(i, j, b), (j, i, sigma(b))]));
        }
    }
    push_translations(&graph, field, &basis, &mut gens)?;
    for a in gl_generators(field, k) {
        let ah = a.transpose().map(&sigma);
        push_matrix_map(&graph, k, k, &mut gens, "hermitian congruence", |x| a.mul(field, x).mul(field, &ah))?;
    }
    push_frobenius(&graph, field, &mut gens)?;
    Ok(Built { graph, gens, notes: Vec::new() })
}
