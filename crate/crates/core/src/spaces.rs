//! Vector spaces carrying a non-degenerate reflexive form: symplectic,
//! orthogonal (odd characteristic) and unitary.
//!
//! Coordinates are laid out hyperbolically: `e_1..e_ω, f_1..f_ω`, followed by
//! an anisotropic tail of length 0, 1 or 2. The form is
//! `B(u, v) = uᵀ G σ(v)`, linear in the first argument.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{enumerate_subspaces, Elem, Field, Matrix, Subspace};
use crate::error::{Error, Result};
use crate::Bounds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Symplectic,
    OrthogonalOdd,
    OrthogonalPlus,
    OrthogonalMinus,
    UnitaryOdd,
    UnitaryEven,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 6] = [
        SpaceKind::Symplectic,
        SpaceKind::OrthogonalOdd,
        SpaceKind::OrthogonalPlus,
        SpaceKind::OrthogonalMinus,
        SpaceKind::UnitaryOdd,
        SpaceKind::UnitaryEven,
    ];

    pub fn is_orthogonal(self) -> bool {
        matches!(self, SpaceKind::OrthogonalOdd | SpaceKind::OrthogonalPlus | SpaceKind::OrthogonalMinus)
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, SpaceKind::UnitaryOdd | SpaceKind::UnitaryEven)
    }

    /// Length of the anisotropic tail after the hyperbolic part.
    pub fn tail(self) -> usize {
        match self {
            SpaceKind::Symplectic | SpaceKind::OrthogonalPlus | SpaceKind::UnitaryEven => 0,
            SpaceKind::OrthogonalOdd | SpaceKind::UnitaryOdd => 1,
            SpaceKind::OrthogonalMinus => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Symplectic => "symplectic",
            SpaceKind::OrthogonalOdd => "orthogonal_odd",
            SpaceKind::OrthogonalPlus => "orthogonal_plus",
            SpaceKind::OrthogonalMinus => "orthogonal_minus",
            SpaceKind::UnitaryOdd => "unitary_odd",
            SpaceKind::UnitaryEven => "unitary_even",
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpaceKind> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "symplectic" | "sp" => SpaceKind::Symplectic,
            "orthogonal_odd" | "o" | "o-odd" => SpaceKind::OrthogonalOdd,
            "orthogonal_plus" | "o+" | "oplus" | "o-plus" => SpaceKind::OrthogonalPlus,
            "orthogonal_minus" | "o-" | "ominus" | "o-minus" => SpaceKind::OrthogonalMinus,
            "unitary_odd" | "u-odd" | "uodd" => SpaceKind::UnitaryOdd,
            "unitary_even" | "u-even" | "ueven" => SpaceKind::UnitaryEven,
            other => return Err(Error::BadParams(format!("unknown space kind '{other}'"))),
        })
    }
}

/// A formed space with its Gram matrix on the standard basis.
#[derive(Clone, Debug)]
pub struct FormedSpace {
    kind: SpaceKind,
    omega: usize,
    field: Field,
    gram: Matrix,
    sigma_power: u32,
    quad: Option<Matrix>,
}

/// Vectors `x_1..x_ω, y_1..y_ω` with `B(x_i, y_j) = δ_ij` and all other
/// pairings zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarFrame {
    pub x: Vec<Vec<Elem>>,
    pub y: Vec<Vec<Elem>>,
}

impl PolarFrame {
    pub fn is_valid(&self, space: &FormedSpace) -> bool {
        let w = self.x.len();
        if self.y.len() != w {
            return false;
        }
        for i in 0..w {
            for j in 0..w {
                if space.form(&self.x[i], &self.x[j]) != 0 || space.form(&self.y[i], &self.y[j]) != 0 {
                    return false;
                }
                let want = Elem::from(i == j);
                if space.form(&self.x[i], &self.y[j]) != want {
                    return false;
                }
            }
        }
        true
    }
}

/// An isometry of a formed space: linear, or the field automorphism
/// `a ↦ a^(p^r)` applied coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isometry {
    Linear(Matrix),
    Frobenius(u32),
}

impl Isometry {
    pub fn apply_vector(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        match self {
            Isometry::Linear(g) => g.mul_vec(field, v),
            Isometry::Frobenius(r) => v.iter().map(|&a| field.frobenius(a, *r)).collect(),
        }
    }

    pub fn apply(&self, field: &Field, u: &Subspace) -> Subspace {
        match self {
            Isometry::Linear(g) => u.image(field, g),
            Isometry::Frobenius(r) => u.map_entries(field, |a| field.frobenius(a, *r)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsometryGenerators {
    pub gens: Vec<Isometry>,
    pub provenance: Vec<String>,
    /// Remarks about generators that were left out.
    pub notes: Vec<String>,
}

/// JSON description of a formed space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    pub omega: usize,
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
    pub gram: Vec<Vec<Elem>>,
}

fn first_nonsquare(field: &Field) -> Elem {
    field.elements().find(|&a| a != 0 && !field.is_square(a)).expect("odd field has nonsquares")
}

impl FormedSpace {
    /// The standard space of the given kind and Witt index over `GF(q)`.
    pub fn new(kind: SpaceKind, omega: usize, q: u32) -> Result<FormedSpace> {
        if omega < 2 {
            return Err(Error::BadParams(format!("Witt index must be at least 2, got {omega}")));
        }
        let field = Field::of_order(q)?;
        Self::with_field(kind, omega, field)
    }

    pub fn with_field(kind: SpaceKind, omega: usize, field: Field) -> Result<FormedSpace> {
        if omega < 2 {
            return Err(Error::BadParams(format!("Witt index must be at least 2, got {omega}")));
        }
        if kind.is_orthogonal() && field.characteristic() == 2 {
            return Err(Error::UnsupportedCharacteristic);
        }
        let f = field.degree();
        if kind.is_unitary() && f % 2 == 1 {
            return Err(Error::NotASquare(field.order() as u64));
        }
        let n = 2 * omega + kind.tail();
        let mut gram = Matrix::zeros(n, n);
        let minus_one = field.neg(1);
        for i in 0..omega {
            gram.set(i, omega + i, 1);
            let back = if kind == SpaceKind::Symplectic { minus_one } else { 1 };
            gram.set(omega + i, i, back);
        }
        let t = 2 * omega;
        match kind {
            SpaceKind::OrthogonalOdd => gram.set(t, t, field.from_int(2)),
            SpaceKind::OrthogonalMinus => {
                let d = first_nonsquare(&field);
                gram.set(t, t, field.from_int(2));
                gram.set(t + 1, t + 1, field.neg(field.mul(field.from_int(2), d)));
            }
            SpaceKind::UnitaryOdd => gram.set(t, t, 1),
            _ => {}
        }
        let quad = kind.is_orthogonal().then(|| {
            // Q(v) = B(v, v) / 2 = vᵀ U v with U the upper triangle of G, diagonal halved.
            let half = field.inv(field.from_int(2)).expect("odd characteristic");
            let mut u = Matrix::zeros(n, n);
            for i in 0..n {
                u.set(i, i, field.mul(half, gram.get(i, i)));
                for j in i + 1..n {
                    u.set(i, j, gram.get(i, j));
                }
            }
            u
        });
        let sigma_power = if kind.is_unitary() { f / 2 } else { 0 };
        let space = FormedSpace { kind, omega, field, gram, sigma_power, quad };
        debug_assert!(space.gram_is_reflexive());
        Ok(space)
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn quad(&self) -> Option<&Matrix> {
        self.quad.as_ref()
    }

    /// The field involution (identity unless unitary).
    pub fn sigma(&self, a: Elem) -> Elem {
        if self.sigma_power == 0 {
            a
        } else {
            self.field.frobenius(a, self.sigma_power)
        }
    }

    pub fn sigma_vec(&self, v: &[Elem]) -> Vec<Elem> {
        v.iter().map(|&a| self.sigma(a)).collect()
    }

    pub fn form(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let f = &self.field;
        let n = self.dim();
        let mut acc = 0;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                let g = self.gram.get(i, j);
                if g != 0 && v[j] != 0 {
                    acc = f.add(acc, f.mul(u[i], f.mul(g, self.sigma(v[j]))));
                }
            }
        }
        acc
    }

    /// `Q(v)` for orthogonal kinds.
    pub fn quadratic(&self, v: &[Elem]) -> Option<Elem> {
        let u = self.quad.as_ref()?;
        let f = &self.field;
        let mut acc = 0;
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let c = u.get(i, j);
                if c != 0 && v[i] != 0 && v[j] != 0 {
                    acc = f.add(acc, f.mul(c, f.mul(v[i], v[j])));
                }
            }
        }
        Some(acc)
    }

    fn gram_is_reflexive(&self) -> bool {
        let n = self.dim();
        let f = &self.field;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let a = self.gram.get(i, j);
                let b = self.gram.get(j, i);
                match self.kind {
                    SpaceKind::Symplectic => b == f.neg(a) && (i != j || a == 0),
                    k if k.is_orthogonal() => a == b,
                    _ => b == self.sigma(a),
                }
            })
        }) && self.gram.inverse(f).is_ok()
    }

    fn check(&self, u: &Subspace) -> Result<()> {
        if u.ambient() != self.dim() {
            return Err(Error::AmbientMismatch(self.dim(), u.ambient()));
        }
        Ok(())
    }

    pub fn perp(&self, u: &Subspace) -> Result<Subspace> {
        self.check(u)?;
        if u.dim() == 0 {
            return Ok(Subspace::full(self.dim()));
        }
        // B(u, v) = 0  ⇔  (U G) σ(v) = 0, and σ is an involution.
        let ug = u.basis_matrix().mul(&self.field, &self.gram);
        let null: Vec<Vec<Elem>> = ug.nullspace(&self.field).iter().map(|w| self.sigma_vec(w)).collect();
        Subspace::span(&self.field, self.dim(), &null)
    }

    pub fn is_singular_vector(&self, v: &[Elem]) -> bool {
        self.form(v, v) == 0 && self.quadratic(v).is_none_or(|q| q == 0)
    }

    pub fn is_singular(&self, u: &Subspace) -> bool {
        if u.ambient() != self.dim() {
            return false;
        }
        let basis = u.basis();
        basis.iter().all(|v| self.is_singular_vector(v))
            && basis.iter().enumerate().all(|(i, a)| basis[i + 1..].iter().all(|b| self.form(a, b) == 0))
    }

    fn check_size(&self, bounds: &Bounds) -> Result<()> {
        let vectors = (self.field.order() as f64).powi(self.dim() as i32);
        if vectors > bounds.max_vectors as f64 {
            return Err(Error::TooLarge(format!("{vectors} vectors in the ambient space")));
        }
        Ok(())
    }

    /// Singular points, each as its normalised representative.
    pub fn singular_points(&self, bounds: &Bounds) -> Result<Vec<Subspace>> {
        self.check_size(bounds)?;
        Ok(enumerate_subspaces(&self.field, self.dim(), 1, bounds)?
            .into_iter()
            .filter(|p| self.is_singular_vector(p.basis_vector(0)))
            .collect())
    }

    /// All singular `k`-subspaces, sorted.
    pub fn enumerate_singular(&self, k: usize, bounds: &Bounds) -> Result<Vec<Subspace>> {
        if k == 0 || k > self.omega {
            return Err(Error::BadParams(format!("k = {k} must lie in 1..={}", self.omega)));
        }
        self.singular_of_dim(k, bounds)
    }

    /// Like [`enumerate_singular`](Self::enumerate_singular) without the
    /// Witt-index restriction; returns an empty list above the index.
    pub(crate) fn singular_of_dim(&self, k: usize, bounds: &Bounds) -> Result<Vec<Subspace>> {
        let points = self.singular_points(bounds)?;
        let mut layer = points.clone();
        for _ in 1..k {
            let mut next = HashSet::new();
            for s in &layer {
                let basis = s.basis();
                for p in &points {
                    let v = p.basis_vector(0);
                    if basis.iter().all(|b| self.form(b, v) == 0) && !s.contains_vector(&self.field, v) {
                        next.insert(s.sum(&self.field, p)?);
                    }
                }
                if next.len() > bounds.max_vertices {
                    return Err(Error::TooLarge(format!("more than {} singular subspaces", bounds.max_vertices)));
                }
            }
            layer = next.into_iter().collect();
        }
        layer.sort();
        Ok(layer)
    }

    pub fn standard_frame(&self) -> PolarFrame {
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        PolarFrame {
            x: (0..self.omega).map(unit).collect(),
            y: (0..self.omega).map(|i| unit(self.omega + i)).collect(),
        }
    }

    /// Given opposite maximal singular `x` and `y` and a maximal flag
    /// `Y_1 < … < Y_ω = y`, returns a frame with `Y_i = ⟨y_1..y_i⟩` and
    /// `X_i = ⟨x_ω..x_{ω−i+1}⟩` where `X_i = Y_{ω−i}^⊥ ∩ x`.
    pub fn hyperbolic_extend(&self, x: &Subspace, y: &Subspace, flag_y: &[Subspace]) -> Result<PolarFrame> {
        let f = &self.field;
        let w = self.omega;
        self.check(x)?;
        self.check(y)?;
        if x.dim() != w || y.dim() != w || !self.is_singular(x) || !self.is_singular(y) {
            return Err(Error::NotOppositeMaximals);
        }
        if x.intersect(f, y)?.dim() != 0 {
            return Err(Error::NotOppositeMaximals);
        }
        if flag_y.len() != w
            || flag_y.iter().enumerate().any(|(i, s)| s.dim() != i + 1)
            || flag_y[w - 1] != *y
            || flag_y.windows(2).any(|p| !p[1].contains(f, &p[0]).unwrap_or(false))
        {
            return Err(Error::BadFlag("expected a maximal flag ending at Y".into()));
        }
        // xs[j] = X_j = Y_{ω−j}^⊥ ∩ X
        let mut xs = Vec::with_capacity(w + 1);
        for j in 0..=w {
            let yj = if j == w { Subspace::zero(self.dim()) } else { flag_y[w - j - 1].clone() };
            xs.push(self.perp(&yj)?.intersect(f, x)?);
        }
        let ys = |i: usize| if i == 0 { Subspace::zero(self.dim()) } else { flag_y[i - 1].clone() };
        let pick = |big: &Subspace, small: &Subspace| -> Vec<Elem> {
            big.basis().into_iter().find(|v| !small.contains_vector(f, v)).expect("strict inclusion")
        };
        let mut xv = vec![Vec::new(); w];
        let mut yv = vec![Vec::new(); w];
        for i in (1..=w).rev() {
            let mut xi = pick(&xs[w - i + 1], &xs[w - i]);
            let yi = pick(&ys(i), &ys(i - 1));
            for k in i + 1..=w {
                let c = self.form(&xi, &yv[k - 1]);
                if c != 0 {
                    for (a, &b) in xi.iter_mut().zip(&xv[k - 1]) {
                        *a = f.sub(*a, f.mul(c, b));
                    }
                }
            }
            let b = self.form(&xi, &yi);
            if b == 0 {
                return Err(Error::NotOppositeMaximals);
            }
            let c = self.sigma(f.inv(b)?);
            xv[i - 1] = xi;
            yv[i - 1] = yi.iter().map(|&a| f.mul(c, a)).collect();
        }
        let frame = PolarFrame { x: xv, y: yv };
        debug_assert!(frame.is_valid(self));
        Ok(frame)
    }

    /// Whether `g` preserves the form: `gᵀ G g^σ = G`.
    pub fn preserves_form(&self, g: &Matrix) -> bool {
        let f = &self.field;
        let gs = g.map(|a| self.sigma(a));
        g.transpose().mul(f, &self.gram).mul(f, &gs) == self.gram
            && self.quad.as_ref().is_none_or(|_| {
                (0..self.dim()).all(|j| {
                    let col: Vec<Elem> = (0..self.dim()).map(|i| g.get(i, j)).collect();
                    let mut e = vec![0; self.dim()];
                    e[j] = 1;
                    self.quadratic(&col) == self.quadratic(&e)
                })
            })
    }

    /// `x ↦ x + c·B(x, u)·u` as a matrix: `I + c · u σ(u)ᵀ Gᵀ`.
    fn rank_one_map(&self, u: &[Elem], c: Elem) -> Matrix {
        let f = &self.field;
        let n = self.dim();
        // w_j = B(e_j, u) = Σ_l G[j][l] σ(u_l)
        let su = self.sigma_vec(u);
        let wv: Vec<Elem> =
            (0..n).map(|j| (0..n).fold(0, |acc, l| f.add(acc, f.mul(self.gram.get(j, l), su[l])))).collect();
        let mut g = Matrix::identity(n);
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            let ci = f.mul(c, u[i]);
            for j in 0..n {
                if wv[j] != 0 {
                    g.set(i, j, f.add(g.get(i, j), f.mul(ci, wv[j])));
                }
            }
        }
        g
    }

    /// Generators of the isometry group, possibly with semilinear maps.
    pub fn isometry_generators(&self, bounds: &Bounds) -> Result<IsometryGenerators> {
        let f = &self.field;
        self.check_size(bounds)?;
        let points = enumerate_subspaces(f, self.dim(), 1, bounds)?;
        let mut gens = Vec::new();
        let mut provenance = Vec::new();
        let mut notes = Vec::new();
        let prim = f.primitive();
        match self.kind {
            SpaceKind::Symplectic => {
                let mut scalars = vec![1];
                if f.order() > 2 {
                    scalars.push(prim);
                }
                for p in &points {
                    for &c in &scalars {
                        gens.push(self.rank_one_map(p.basis_vector(0), c));
                        provenance.push("symplectic transvection".to_string());
                    }
                }
            }
            k if k.is_orthogonal() => {
                let minus_two = f.neg(f.from_int(2));
                for p in &points {
                    let v = p.basis_vector(0);
                    let b = self.form(v, v);
                    if b != 0 {
                        gens.push(self.rank_one_map(v, f.div(minus_two, b)?));
                        provenance.push("reflection".to_string());
                    }
                }
            }
            _ => {
                // Trace-zero scalars give unitary transvections; norm-one
                // scalars give quasi-reflections.
                let trace_zero: Vec<Elem> =
                    f.elements().filter(|&c| c != 0 && f.add(c, self.sigma(c)) == 0).take(1).collect();
                let norm_one: Vec<Elem> =
                    f.elements().filter(|&z| z != 1 && z != 0 && f.mul(z, self.sigma(z)) == 1).collect();
                let zeta = norm_one.iter().copied().max_by_key(|&z| (1..).find(|&e| f.pow(z, e) == 1).unwrap_or(0u64));
                for p in &points {
                    let v = p.basis_vector(0);
                    let b = self.form(v, v);
                    if b == 0 {
                        for &c in &trace_zero {
                            gens.push(self.rank_one_map(v, c));
                            provenance.push("unitary transvection".to_string());
                        }
                    } else if let Some(z) = zeta {
                        gens.push(self.rank_one_map(v, f.div(f.sub(z, 1), b)?));
                        provenance.push("quasi-reflection".to_string());
                    }
                }
            }
        }
        let mut out: Vec<Isometry> = Vec::new();
        let mut prov_out = Vec::new();
        let mut seen = HashSet::new();
        for (g, p) in gens.into_iter().zip(provenance) {
            debug_assert!(self.preserves_form(&g), "{p} fails to preserve the form");
            if g != Matrix::identity(self.dim()) && seen.insert(g.clone()) {
                out.push(Isometry::Linear(g));
                prov_out.push(p);
            }
        }
        if f.degree() > 1 {
            let p = f.characteristic();
            let prime_field = |a: Elem| a < p;
            if self.gram.data().iter().all(|&a| prime_field(a)) {
                out.push(Isometry::Frobenius(1));
                prov_out.push("field automorphism".to_string());
            } else {
                notes.push("field automorphisms omitted: the Gram matrix is not defined over the prime field".into());
            }
        }
        Ok(IsometryGenerators { gens: out, provenance: prov_out, notes })
    }

    pub fn descriptor(&self) -> SpaceDescriptor {
        SpaceDescriptor {
            kind: self.kind,
            omega: self.omega,
            p: self.field.characteristic(),
            f: self.field.degree(),
            modulus: self.field.modulus().to_vec(),
            gram: self.gram.row_vecs(),
        }
    }

    pub fn from_descriptor(d: &SpaceDescriptor) -> Result<FormedSpace> {
        let field = Field::new(d.p, d.f, Some(d.modulus.clone()))?;
        let space = FormedSpace::with_field(d.kind, d.omega, field)?;
        if space.gram.row_vecs() != d.gram {
            return Err(Error::Malformed("Gram matrix differs from the standard one".into()));
        }
        Ok(space)
    }
}
