use serde::{Deserialize, Serialize};

use super::field::{Elem, Field};
use super::matrix::{rref_in_place, Matrix};
use crate::error::{Error, Result};

/// A subspace of `F^n`, stored as the reduced row-echelon basis with zero rows
/// dropped. Two values compare equal exactly when they span the same space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    dim: usize,
    rows: Vec<Elem>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, dim: 0, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        let id = Matrix::identity(ambient);
        Subspace { ambient, dim: ambient, rows: id.data().to_vec() }
    }

    /// The span of the given vectors.
    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Elem>]) -> Result<Subspace> {
        let mut flat = Vec::with_capacity(vectors.len() * ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::AmbientMismatch(ambient, v.len()));
            }
            flat.extend_from_slice(v);
        }
        Ok(Self::from_flat(field, ambient, flat))
    }

    pub fn from_matrix(field: &Field, m: &Matrix) -> Subspace {
        Self::from_flat(field, m.cols(), m.data().to_vec())
    }

    pub(crate) fn from_flat(field: &Field, ambient: usize, mut flat: Vec<Elem>) -> Subspace {
        let nrows = flat.len().checked_div(ambient).unwrap_or(0);
        let pivots = rref_in_place(field, &mut flat, nrows, ambient);
        flat.truncate(pivots.len() * ambient);
        Subspace { ambient, dim: pivots.len(), rows: flat }
    }

    /// Wraps rows already known to be in canonical form.
    pub(crate) fn from_canonical(ambient: usize, rows: Vec<Elem>) -> Subspace {
        let dim = rows.len().checked_div(ambient).unwrap_or(0);
        Subspace { ambient, dim, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Flat row-major canonical basis; doubles as the vertex label.
    pub fn canonical_rows(&self) -> &[Elem] {
        &self.rows
    }

    pub fn basis_vector(&self, i: usize) -> &[Elem] {
        &self.rows[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn basis(&self) -> Vec<Vec<Elem>> {
        (0..self.dim).map(|i| self.basis_vector(i).to_vec()).collect()
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_flat(self.dim, self.ambient, self.rows.clone()).expect("shape is consistent")
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim).map(|i| self.basis_vector(i).iter().position(|&x| x != 0).expect("rows are nonzero")).collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the space.
    pub fn reduce(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        let mut r = v.to_vec();
        for (i, p) in self.pivots().into_iter().enumerate() {
            let c = r[p];
            if c != 0 {
                let nc = field.neg(c);
                for (j, &b) in self.basis_vector(i).iter().enumerate() {
                    if b != 0 {
                        r[j] = field.add(r[j], field.mul(nc, b));
                    }
                }
            }
        }
        r
    }

    pub fn contains_vector(&self, field: &Field, v: &[Elem]) -> bool {
        v.len() == self.ambient && self.reduce(field, v).iter().all(|&x| x == 0)
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, field: &Field, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        if other.dim > self.dim {
            return Ok(false);
        }
        Ok((0..other.dim).all(|i| self.contains_vector(field, other.basis_vector(i))))
    }

    pub fn sum(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut flat = self.rows.clone();
        flat.extend_from_slice(&other.rows);
        Ok(Self::from_flat(field, self.ambient, flat))
    }

    /// Intersection by the Zassenhaus algorithm: row-reduce `[A A; B 0]` and
    /// read the intersection off the rows whose left half vanishes.
    pub fn intersect(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let n = self.ambient;
        if self.dim == 0 || other.dim == 0 {
            return Ok(Subspace::zero(n));
        }
        let rows = self.dim + other.dim;
        let mut z = vec![0; rows * 2 * n];
        for i in 0..self.dim {
            let v = self.basis_vector(i);
            z[i * 2 * n..i * 2 * n + n].copy_from_slice(v);
            z[i * 2 * n + n..(i + 1) * 2 * n].copy_from_slice(v);
        }
        for i in 0..other.dim {
            let r = self.dim + i;
            z[r * 2 * n..r * 2 * n + n].copy_from_slice(other.basis_vector(i));
        }
        let pivots = rref_in_place(field, &mut z, rows, 2 * n);
        let mut flat = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            if p >= n {
                flat.extend_from_slice(&z[r * 2 * n + n..(r + 1) * 2 * n]);
            }
        }
        Ok(Self::from_flat(field, n, flat))
    }

    /// `dim A - dim(A ∩ B)`.
    pub fn quotient_dim(&self, field: &Field, other: &Subspace) -> Result<usize> {
        Ok(self.dim - self.intersect(field, other)?.dim)
    }

    /// Image under `v ↦ g v`, computed as `rows · gᵀ`.
    pub fn image(&self, field: &Field, g: &Matrix) -> Subspace {
        let img = self.basis_matrix().mul(field, &g.transpose());
        Self::from_matrix(field, &img)
    }

    /// Applies a map to every coordinate (a field automorphism, say).
    pub fn map_entries(&self, field: &Field, f: impl Fn(Elem) -> Elem) -> Subspace {
        Self::from_flat(field, self.ambient, self.rows.iter().map(|&x| f(x)).collect())
    }

    /// All `q^dim` vectors of the subspace, in coefficient order.
    pub fn vectors(&self, field: &Field) -> Vec<Vec<Elem>> {
        let q = field.order() as usize;
        let total = q.pow(self.dim as u32);
        let mut out = Vec::with_capacity(total);
        let mut coeffs = vec![0usize; self.dim];
        for _ in 0..total {
            let mut v = vec![0; self.ambient];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for (j, &b) in self.basis_vector(i).iter().enumerate() {
                        v[j] = field.add(v[j], field.mul(c as Elem, b));
                    }
                }
            }
            out.push(v);
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < q {
                    break;
                }
                *c = 0;
            }
        }
        out
    }

    /// One representative per 1-space: the nonzero vectors whose leading entry is 1.
    pub fn points(&self, field: &Field) -> Vec<Vec<Elem>> {
        self.vectors(field).into_iter().filter(|v| v.iter().find(|&&x| x != 0) == Some(&1)).collect()
    }

    /// All `j`-dimensional subspaces of `self`, sorted.
    pub fn subspaces_of(&self, field: &Field, j: usize) -> Vec<Subspace> {
        let coords = super::enumerate_canonical(field, self.dim, j);
        let basis = self.basis_matrix();
        let mut out: Vec<Subspace> = coords
            .into_iter()
            .map(|c| {
                let m = Matrix::from_flat(j, self.dim, c).expect("shape");
                Self::from_matrix(field, &m.mul(field, &basis))
            })
            .collect();
        out.sort();
        out
    }
}
