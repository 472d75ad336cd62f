//! Geodesics of polar Grassmann graphs `PG_W(k)` with `k < ω`: opposite
//! pairs, the distance formula, normal forms of geodesics, type vectors and
//! the orbit counts they predict.
//!
//! ```
//! use geodex::polar_geo::{pg_distance, PgInstance};
//! use geodex::families::SpaceSpec;
//! use geodex::spaces::SpaceKind;
//! use geodex::Bounds;
//!
//! let inst = PgInstance::new(SpaceSpec::new(SpaceKind::Symplectic, 2, 3), 1, &Bounds::default()).unwrap();
//! let (x, y) = (&inst.subspaces[0], &inst.subspaces[1]);
//! assert!(pg_distance(&inst.space, 1, x, y).unwrap() <= 2);
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, Subspace};
use crate::error::{Error, Result};
use crate::families::{build, projective, Built, FamilySpec, SpaceSpec};
use crate::spaces::FormedSpace;
use crate::Bounds;

/// Vector count up to which condition (i) is checked by exhaustion.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000;

fn check_vertex(space: &FormedSpace, x: &Subspace, k: usize) -> Result<()> {
    if x.ambient() != space.dim() {
        return Err(Error::AmbientMismatch(space.dim(), x.ambient()));
    }
    if x.dim() != k {
        return Err(Error::BadParams(format!("expected a {k}-space, got dimension {}", x.dim())));
    }
    if k == space.omega() {
        return Err(Error::MaximalNotAllowed);
    }
    if k == 0 {
        return Err(Error::BadParams("k must be positive".into()));
    }
    if !space.is_singular(x) {
        return Err(Error::NotSingular);
    }
    Ok(())
}

/// The four subspaces whose equality characterises opposite pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OppositeReport {
    pub opposite: bool,
    pub meet: Subspace,
    pub xperp_meet_y: Subspace,
    pub x_meet_yperp: Subspace,
    pub radical: Subspace,
    /// The semantic definition checked over all vectors, on small instances.
    pub exhaustive: Option<bool>,
}

fn opposite_by_exhaustion(space: &FormedSpace, x: &Subspace, y: &Subspace) -> bool {
    let f = space.field();
    let xs: Vec<Vec<Elem>> = x.vectors(f).into_iter().filter(|v| !y.contains_vector(f, v)).collect();
    y.vectors(f).into_iter().filter(|v| !x.contains_vector(f, v)).all(|yv| xs.iter().any(|xv| space.form(xv, &yv) != 0))
}

/// For every `y ∈ Y∖X` some `x ∈ X∖Y` has `B(x, y) ≠ 0`; decided by
/// comparing `X∩Y`, `X^⊥∩Y`, `X∩Y^⊥` and `(X+Y)^⊥∩(X+Y)`.
pub fn is_opposite(space: &FormedSpace, x: &Subspace, y: &Subspace) -> Result<OppositeReport> {
    let k = x.dim();
    check_vertex(space, x, k)?;
    check_vertex(space, y, k)?;
    if x == y {
        return Err(Error::NotDistinct);
    }
    let f = space.field();
    let meet = x.intersect(f, y)?;
    let xperp_meet_y = space.perp(x)?.intersect(f, y)?;
    let x_meet_yperp = x.intersect(f, &space.perp(y)?)?;
    let sum = x.sum(f, y)?;
    let radical = space.perp(&sum)?.intersect(f, &sum)?;
    let opposite = meet == xperp_meet_y && meet == x_meet_yperp && meet == radical;
    let exhaustive =
        ((f.order() as u64).pow(k as u32) <= EXHAUSTIVE_LIMIT).then(|| opposite_by_exhaustion(space, x, y));
    Ok(OppositeReport { opposite, meet, xperp_meet_y, x_meet_yperp, radical, exhaustive })
}

/// `k − dim X∩Y`, plus one for opposite pairs.
pub fn pg_distance(space: &FormedSpace, k: usize, x: &Subspace, y: &Subspace) -> Result<u32> {
    check_vertex(space, x, k)?;
    check_vertex(space, y, k)?;
    if x == y {
        return Ok(0);
    }
    let r = is_opposite(space, x, y)?;
    Ok((k - r.meet.dim()) as u32 + u32::from(r.opposite))
}

pub fn pg_adjacent(space: &FormedSpace, x: &Subspace, y: &Subspace) -> Result<bool> {
    let f = space.field();
    Ok(x != y && x.intersect(f, y)?.dim() + 1 == x.dim() && space.is_singular(&x.sum(f, y)?))
}

/// Checks that consecutive members are adjacent and `d(L_0, L_i) = i`.
pub fn check_geodesic(space: &FormedSpace, k: usize, path: &[Subspace]) -> Result<()> {
    let Some(first) = path.first() else {
        return Err(Error::NotAGeodesic("empty path".into()));
    };
    for (i, v) in path.iter().enumerate() {
        check_vertex(space, v, k)?;
        if i > 0 && !pg_adjacent(space, &path[i - 1], v)? {
            return Err(Error::NotAGeodesic(format!("members {} and {i} are not adjacent", i - 1)));
        }
        if pg_distance(space, k, first, v)? != i as u32 {
            return Err(Error::NotAGeodesic(format!("member {i} is not at distance {i}")));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// Non-opposite ends.
    F1,
    /// Opposite ends.
    F2,
}

/// Vectors inducing a geodesic. `x` holds `x_1..x_m` for F1 and `x_0..x_m`
/// for F2; `y` holds `y_1..y_m`; `pairing` maps `i` to `j` when
/// `B(x_i, y_j) = 1`, with indices starting at 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub case: Case,
    pub w: Vec<Vec<Elem>>,
    pub x: Vec<Vec<Elem>>,
    pub y: Vec<Vec<Elem>>,
    pub pairing: BTreeMap<usize, usize>,
}

impl NormalForm {
    pub fn m(&self) -> usize {
        self.y.len()
    }

    fn xi(&self, i: usize) -> &[Elem] {
        match self.case {
            Case::F1 => &self.x[i - 1],
            Case::F2 => &self.x[i],
        }
    }

    /// The geodesic induced by the vectors.
    pub fn reconstruct(&self, space: &FormedSpace) -> Result<Vec<Subspace>> {
        let f = space.field();
        let n = space.dim();
        let m = self.m();
        let span = |xs: std::ops::Range<usize>, ys: std::ops::Range<usize>| -> Result<Subspace> {
            let mut vecs: Vec<Vec<Elem>> = xs.map(|i| self.xi(i).to_vec()).collect();
            vecs.extend(ys.map(|j| self.y[j - 1].clone()));
            vecs.extend(self.w.iter().cloned());
            Subspace::span(f, n, &vecs)
        };
        let mut out = Vec::new();
        match self.case {
            Case::F1 => {
                for i in 0..=m {
                    out.push(span(1..m - i + 1, m - i + 1..m + 1)?);
                }
            }
            Case::F2 => {
                out.push(span(1..m + 1, 0..0)?);
                for i in 0..=m {
                    out.push(span(0..m - i, m - i + 1..m + 1)?);
                }
            }
        }
        Ok(out)
    }

    /// Whether the relations of the case hold with the recorded pairing.
    pub fn relations_hold(&self, space: &FormedSpace) -> bool {
        let m = self.m();
        let b = |i: usize, j: usize| space.form(self.xi(i), &self.y[j - 1]);
        match self.case {
            Case::F1 => {
                let mut used = std::collections::HashSet::new();
                (1..=m).all(|i| {
                    let upper = (i..=m).all(|j| b(i, j) == 0);
                    let lower = match self.pairing.get(&i) {
                        Some(&p) => p < i && used.insert(p) && (1..i).all(|j| b(i, j) == Elem::from(j == p)),
                        None => (1..i).all(|j| b(i, j) == 0),
                    };
                    upper && lower
                }) && !self.pairing.contains_key(&1)
            }
            Case::F2 => {
                (0..=m).all(|i| (i + 1..=m).all(|j| b(i, j) == 0))
                    && (1..=m).all(|i| b(i, i) == 1 && (1..i).all(|j| b(i, j) == 0))
                    && self.pairing.len() == m
                    && self.pairing.iter().all(|(i, j)| i == j)
            }
        }
    }
}

fn pick_outside(field: &crate::algebra::Field, big: &Subspace, small: &Subspace) -> Result<Vec<Elem>> {
    big.basis()
        .into_iter()
        .find(|v| !small.contains_vector(field, v))
        .ok_or_else(|| Error::NotAGeodesic("expected a strict inclusion".into()))
}

fn axpy(space: &FormedSpace, v: &mut [Elem], c: Elem, u: &[Elem]) {
    let f = space.field();
    for (a, &b) in v.iter_mut().zip(u) {
        *a = f.add(*a, f.mul(c, b));
    }
}

fn scaled(space: &FormedSpace, c: Elem, u: &[Elem]) -> Vec<Elem> {
    u.iter().map(|&a| space.field().mul(c, a)).collect()
}

/// Bases `x_1..x_m` and `y_1..y_m` for a geodesic `X_0..X_m` in the
/// Grassmann sense, with `X_i = ⟨x_1..x_(m−i), y_(m−i+1)..y_m, W⟩`.
fn grassmann_bases(space: &FormedSpace, path: &[Subspace]) -> Result<(Vec<Vec<Elem>>, Vec<Vec<Elem>>, Subspace)> {
    let f = space.field();
    let m = path.len() - 1;
    let (x0, xm) = (&path[0], &path[m]);
    let w = x0.intersect(f, xm)?;
    let mut xs = Vec::with_capacity(m);
    for j in 1..=m {
        // x_j ∈ X_0 ∩ X_(m−j) outside X_0 ∩ X_(m−j+1)
        xs.push(pick_outside(f, &x0.intersect(f, &path[m - j])?, &x0.intersect(f, &path[m - j + 1])?)?);
    }
    let mut ys = Vec::with_capacity(m);
    for j in 1..=m {
        // y_j ∈ X_m ∩ X_(m−j+1) outside X_m ∩ X_(m−j)
        ys.push(pick_outside(f, &xm.intersect(f, &path[m - j + 1])?, &xm.intersect(f, &path[m - j])?)?);
    }
    Ok((xs, ys, w))
}

/// Brings the vectors of a geodesic into the normal form of its case. For
/// non-opposite ends each `x_i` is modified by earlier `x`'s and each `y_j`
/// by later `y`'s until every `x_i` pairs with at most one earlier `y`, and
/// distinct `x`'s with distinct `y`'s.
pub fn pg_geodesic_normalize(space: &FormedSpace, k: usize, path: &[Subspace]) -> Result<NormalForm> {
    check_geodesic(space, k, path)?;
    let f = space.field();
    let len = path.len() - 1;
    if len == 0 {
        return Ok(NormalForm { case: Case::F1, w: path[0].basis(), x: vec![], y: vec![], pairing: BTreeMap::new() });
    }
    let opposite = is_opposite(space, &path[0], &path[len])?.opposite;
    let nf = if !opposite {
        let (mut xs, mut ys, w) = grassmann_bases(space, path)?;
        let m = len;
        let b = |xs: &[Vec<Elem>], ys: &[Vec<Elem>], i: usize, j: usize| space.form(&xs[i - 1], &ys[j - 1]);
        let mut pairing = BTreeMap::new();
        for i in 1..=m {
            for l in 1..i {
                if let Some(&p) = pairing.get(&l) {
                    let c = b(&xs, &ys, i, p);
                    if c != 0 {
                        let xl = xs[l - 1].clone();
                        axpy(space, &mut xs[i - 1], f.neg(c), &xl);
                    }
                }
            }
            let Some(p) = (1..i).rev().find(|&j| b(&xs, &ys, i, j) != 0) else { continue };
            let c = space.sigma(f.inv(b(&xs, &ys, i, p))?);
            ys[p - 1] = scaled(space, c, &ys[p - 1]);
            for j in 1..p {
                let bj = b(&xs, &ys, i, j);
                if bj != 0 {
                    let yp = ys[p - 1].clone();
                    axpy(space, &mut ys[j - 1], f.neg(space.sigma(bj)), &yp);
                }
            }
            pairing.insert(i, p);
        }
        NormalForm { case: Case::F1, w: w.basis(), x: xs, y: ys, pairing }
    } else {
        // the tail from X' = path[1] to Y is non-opposite
        let m = len - 1;
        let (x, xp, y) = (&path[0], &path[1], &path[len]);
        let w = xp.intersect(f, y)?;
        let tail = &path[1..];
        let a = |i: usize| xp.intersect(f, &tail[i]);
        let meet = x.intersect(f, xp)?;
        let mut xs = Vec::with_capacity(m + 1);
        xs.push(pick_outside(f, &a(m - 1)?, &w)?);
        let mut below = w.clone();
        for j in 1..m {
            let cj = a(m - j - 1)?.intersect(f, x)?;
            xs.push(pick_outside(f, &cj, &below)?);
            below = cj;
        }
        xs.push(pick_outside(f, x, &meet)?);
        let mut ys = Vec::with_capacity(m);
        for j in 1..=m {
            ys.push(pick_outside(f, &y.intersect(f, &tail[m - j + 1])?, &y.intersect(f, &tail[m - j])?)?);
        }
        for i in (1..=m).rev() {
            let d = space.form(&xs[i], &ys[i - 1]);
            if d == 0 {
                return Err(Error::NotAGeodesic(format!("B(x_{i}, y_{i}) vanishes")));
            }
            ys[i - 1] = scaled(space, space.sigma(f.inv(d)?), &ys[i - 1]);
            for j in 1..i {
                let bj = space.form(&xs[i], &ys[j - 1]);
                if bj != 0 {
                    let yi = ys[i - 1].clone();
                    axpy(space, &mut ys[j - 1], f.neg(space.sigma(bj)), &yi);
                }
            }
        }
        NormalForm { case: Case::F2, w: w.basis(), x: xs, y: ys, pairing: (1..=m).map(|i| (i, i)).collect() }
    };
    let rebuilt = nf.reconstruct(space)?;
    if rebuilt != path || !nf.relations_hold(space) {
        return Err(Error::NotAGeodesic("normal form does not reproduce the geodesic".into()));
    }
    Ok(nf)
}

/// `(t_1, …, t_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeVector(pub Vec<u32>);

impl TypeVector {
    /// `t_1 = 1` and each step is 0 or +1.
    pub fn validate(&self) -> Result<()> {
        let t = &self.0;
        if t.first() != Some(&1) {
            return Err(Error::BadType(format!("{self} must start with 1")));
        }
        if t.windows(2).any(|w| w[1] != w[0] && w[1] != w[0] + 1) {
            return Err(Error::BadType(format!("{self} has a step other than 0 or 1")));
        }
        Ok(())
    }

    pub fn peak(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `t_i = dim(X_m ∩ X_(m−i)^⊥) / (X_m ∩ X_(m−i))`.
pub fn type_of(space: &FormedSpace, k: usize, path: &[Subspace]) -> Result<TypeVector> {
    check_geodesic(space, k, path)?;
    let m = path.len() - 1;
    if m > 0 && is_opposite(space, &path[0], &path[m])?.opposite {
        return Err(Error::OppositeEnds);
    }
    let f = space.field();
    let last = &path[m];
    let mut t = Vec::with_capacity(m);
    for i in 1..=m {
        let other = &path[m - i];
        t.push((last.intersect(f, &space.perp(other)?)?.dim() - last.intersect(f, other)?.dim()) as u32);
    }
    Ok(TypeVector(t))
}

/// `d_ij = dim(X_i ∩ X_j^⊥) − dim(X_i ∩ X_j)` over all members.
pub fn orbit_fingerprint(space: &FormedSpace, k: usize, path: &[Subspace]) -> Result<Vec<Vec<u32>>> {
    check_geodesic(space, k, path)?;
    let f = space.field();
    let perps: Vec<Subspace> = path.iter().map(|v| space.perp(v)).collect::<Result<_>>()?;
    path.iter()
        .map(|a| {
            path.iter()
                .zip(&perps)
                .map(|(b, bp)| Ok((a.intersect(f, bp)?.dim() - a.intersect(f, b)?.dim()) as u32))
                .collect()
        })
        .collect()
}

/// `(∏ t_i) / t_m!`, computed as the product of `t_i` over the positions
/// where the type does not increase.
pub fn c_tau(t: &TypeVector) -> Result<u128> {
    t.validate()?;
    let mut c: u128 = 1;
    for w in t.0.windows(2) {
        if w[1] == w[0] {
            c = c.checked_mul(w[1] as u128).ok_or_else(|| Error::TooLarge("c_tau overflow".into()))?;
        }
    }
    Ok(c)
}

pub fn enumerate_types(m: usize, cap: u32) -> Vec<TypeVector> {
    if m == 0 || cap == 0 {
        return Vec::new();
    }
    let mut out = vec![vec![1u32]];
    for _ in 1..m {
        let mut next = Vec::with_capacity(out.len() * 2);
        for t in out {
            let last = *t.last().expect("nonempty");
            let mut same = t.clone();
            same.push(last);
            next.push(same);
            if last < cap {
                let mut up = t;
                up.push(last + 1);
                next.push(up);
            }
        }
        out = next;
    }
    out.sort();
    out.into_iter().map(TypeVector).collect()
}

/// `Σ c_τ` over types of length `m` bounded by `cap`.
pub fn orbit_count_for_cap(m: usize, cap: u32) -> Result<u128> {
    enumerate_types(m, cap).iter().map(c_tau).sum()
}

/// `ℒ(m)`: orbits on geodesics of length `m` with non-opposite ends.
pub fn nonopposite_orbit_count(m: usize, omega: usize, k: usize) -> Result<u128> {
    if m == 0 || m > k || k >= omega {
        return Err(Error::BadParams(format!("need 1 <= m <= k < omega, got m={m} k={k} omega={omega}")));
    }
    orbit_count_for_cap(m, (omega - k) as u32)
}

/// Bell numbers via the Bell triangle.
pub fn bell(m: usize) -> u128 {
    if m == 0 {
        return 1;
    }
    let mut row = vec![1u128];
    for _ in 1..m {
        let mut next = vec![*row.last().expect("nonempty")];
        for &a in &row {
            let last = *next.last().expect("nonempty");
            next.push(last + a);
        }
        row = next;
    }
    *row.last().expect("nonempty")
}

/// Set partitions of an `m`-set into at most `max_blocks` blocks, counted by
/// placing elements one at a time.
pub fn partition_oracle(m: usize, max_blocks: usize) -> u128 {
    fn go(remaining: usize, blocks: usize, max_blocks: usize) -> u128 {
        if remaining == 0 {
            return 1;
        }
        let mut total = blocks as u128 * go(remaining - 1, blocks, max_blocks);
        if blocks < max_blocks {
            total += go(remaining - 1, blocks + 1, max_blocks);
        }
        total
    }
    go(m, 0, max_blocks)
}

/// Orbit counts on geodesics of lengths `1..=k+1`: `ℒ(1)`, then `ℒ(m) + 1`
/// for `2 ≤ m ≤ k`, then a single orbit of opposite-ended geodesics.
pub fn predicted_orbit_profile(omega: usize, k: usize) -> Result<Vec<u128>> {
    if k == 0 || k >= omega {
        return Err(Error::BadParams(format!("need 1 <= k < omega, got k={k} omega={omega}")));
    }
    let mut out = vec![nonopposite_orbit_count(1, omega, k)?];
    for m in 2..=k {
        out.push(nonopposite_orbit_count(m, omega, k)? + 1);
    }
    out.push(1);
    Ok(out)
}

/// A built `PG_W(k)` together with its vertices as subspaces.
#[derive(Clone, Debug)]
pub struct PgInstance {
    pub space: FormedSpace,
    pub k: usize,
    pub built: Built,
    pub subspaces: Vec<Subspace>,
}

impl PgInstance {
    pub fn new(spec: SpaceSpec, k: usize, bounds: &Bounds) -> Result<PgInstance> {
        let space = spec.build()?;
        let built = build(&FamilySpec::PolarGrassmann { space: spec, k }, bounds)?;
        let n = space.dim();
        let subspaces = built.graph.labels().iter().map(|l| projective::subspace_of(n, l)).collect();
        Ok(PgInstance { space, k, built, subspaces })
    }

    /// The subspaces of the given vertices.
    pub fn path(&self, vertices: &[u32]) -> Result<Vec<Subspace>> {
        vertices
            .iter()
            .map(|&v| {
                self.subspaces
                    .get(v as usize)
                    .cloned()
                    .ok_or_else(|| Error::BadParams(format!("vertex {v} out of range 0..{}", self.subspaces.len())))
            })
            .collect()
    }
}

/// Pairs at distance 2 from `x` with different numbers of neighbours at
/// distance 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PgWitness {
    pub x: Subspace,
    pub x1: Subspace,
    pub x2: Subspace,
    pub y2: Subspace,
    pub d_x_x1: u32,
    pub d_x_x2: u32,
    pub d_x_y2: u32,
    pub y2_adjacent_x2: bool,
    pub neighbours_of_x1: usize,
    /// Largest `d(X, Y_1)` over neighbours `Y_1` of `X_1`.
    pub max_from_x1_neighbours: u32,
    pub valid: bool,
}

/// Neighbours of a vertex: a hyperplane of `x` plus a singular point of
/// `x^⊥` outside `x`.
pub fn pg_neighbours(space: &FormedSpace, x: &Subspace) -> Result<Vec<Subspace>> {
    let f = space.field();
    let xperp = space.perp(x)?;
    let points: Vec<Vec<Elem>> =
        xperp.points(f).into_iter().filter(|p| space.is_singular_vector(p) && !x.contains_vector(f, p)).collect();
    let mut out = std::collections::BTreeSet::new();
    for h in x.subspaces_of(f, x.dim() - 1) {
        for p in &points {
            let mut vecs = h.basis();
            vecs.push(p.clone());
            out.insert(Subspace::span(f, space.dim(), &vecs)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// The standard-frame witness that `PG_W(k)` is not distance-regular for
/// `1 < k < ω`.
pub fn not_drg_witness(space: &FormedSpace, k: usize) -> Result<PgWitness> {
    if k <= 1 || k >= space.omega() {
        return Err(Error::BadParams(format!("need 1 < k < omega, got k={k} omega={}", space.omega())));
    }
    let f = space.field();
    let frame = space.standard_frame();
    // 1-based frame vectors
    let x = |i: usize| frame.x[i - 1].clone();
    let y = |i: usize| frame.y[i - 1].clone();
    let span = |vecs: Vec<Vec<Elem>>| Subspace::span(f, space.dim(), &vecs);
    let vx = span((1..=k).map(x).collect())?;
    let vx1 = span((1..k).map(x).chain([y(k)]).collect())?;
    let vx2 = span((1..k - 1).map(x).chain([y(k), y(k + 1)]).collect())?;
    let vy2 = span((1..k - 1).map(x).chain([y(k - 1), y(k)]).collect())?;
    let neighbours = pg_neighbours(space, &vx1)?;
    let mut max_from_x1_neighbours = 0;
    for nb in &neighbours {
        max_from_x1_neighbours = max_from_x1_neighbours.max(pg_distance(space, k, &vx, nb)?);
    }
    let d_x_x1 = pg_distance(space, k, &vx, &vx1)?;
    let d_x_x2 = pg_distance(space, k, &vx, &vx2)?;
    let d_x_y2 = pg_distance(space, k, &vx, &vy2)?;
    let y2_adjacent_x2 = pg_adjacent(space, &vx2, &vy2)?;
    let valid = d_x_x1 == 2 && d_x_x2 == 2 && d_x_y2 == 3 && y2_adjacent_x2 && max_from_x1_neighbours <= 2;
    Ok(PgWitness {
        x: vx,
        x1: vx1,
        x2: vx2,
        y2: vy2,
        d_x_x1,
        d_x_x2,
        d_x_y2,
        y2_adjacent_x2,
        neighbours_of_x1: neighbours.len(),
        max_from_x1_neighbours,
        valid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec, SpaceSpec};
    use crate::metrics::bfs_all;
    use crate::spaces::SpaceKind;
    use crate::symmetry::all_geodesics;
    use crate::Bounds;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn sp(omega: usize, q: u32) -> FormedSpace {
        FormedSpace::new(SpaceKind::Symplectic, omega, q).unwrap()
    }

    fn frame_span(space: &FormedSpace, xs: &[usize], ys: &[usize]) -> Subspace {
        let fr = space.standard_frame();
        let mut v: Vec<Vec<Elem>> = xs.iter().map(|&i| fr.x[i - 1].clone()).collect();
        v.extend(ys.iter().map(|&i| fr.y[i - 1].clone()));
        Subspace::span(space.field(), space.dim(), &v).unwrap()
    }

    #[test]
    fn opposite_examples() {
        let s = sp(2, 2);
        let e1 = frame_span(&s, &[1], &[]);
        let f1 = frame_span(&s, &[], &[1]);
        let e2 = frame_span(&s, &[2], &[]);
        let r = is_opposite(&s, &e1, &f1).unwrap();
        assert!(r.opposite && r.exhaustive == Some(true));
        let r = is_opposite(&s, &e1, &e2).unwrap();
        assert!(!r.opposite && r.exhaustive == Some(false));
        let s6 = sp(3, 2);
        let r = is_opposite(&s6, &frame_span(&s6, &[1, 2], &[]), &frame_span(&s6, &[], &[1, 2])).unwrap();
        assert!(r.opposite && r.meet.dim() == 0 && r.radical.dim() == 0);
        assert!(matches!(is_opposite(&s, &e1, &e1), Err(Error::NotDistinct)));
        let big = frame_span(&s, &[1, 2], &[]);
        assert!(matches!(is_opposite(&s, &big, &frame_span(&s, &[], &[1, 2])), Err(Error::MaximalNotAllowed)));
        let ns = Subspace::span(s.field(), 4, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        assert!(matches!(is_opposite(&s6, &frame_span(&s6, &[1, 2], &[]), &ns), Err(Error::AmbientMismatch(..))));
        assert!(matches!(pg_distance(&s, 2, &big, &ns), Err(Error::MaximalNotAllowed)));
    }

    #[test]
    fn distances_agree_with_bfs() {
        for (space, k) in [
            (SpaceSpec::new(SpaceKind::Symplectic, 2, 2), 1),
            (SpaceSpec::new(SpaceKind::Symplectic, 3, 2), 1),
            (SpaceSpec::new(SpaceKind::Symplectic, 3, 2), 2),
            (SpaceSpec::new(SpaceKind::Symplectic, 3, 3), 1),
            (SpaceSpec::new(SpaceKind::OrthogonalOdd, 3, 3), 1),
        ] {
            let built = build(&FamilySpec::PolarGrassmann { space, k }, &Bounds::default()).unwrap();
            let s = space.build().unwrap();
            let dt = bfs_all(&built.graph).unwrap();
            let n = s.dim();
            let subs: Vec<Subspace> =
                built.graph.labels().iter().map(|l| crate::families::projective::subspace_of(n, l)).collect();
            for u in 0..subs.len() {
                for v in 0..subs.len() {
                    assert_eq!(pg_distance(&s, k, &subs[u], &subs[v]).unwrap(), dt.get(u as u32, v as u32));
                }
            }
            assert_eq!(dt.diameter() as usize, k + 1);
        }
    }

    fn geodesics_of(space: SpaceSpec, k: usize) -> (FormedSpace, Vec<Vec<Vec<Subspace>>>) {
        let built = build(&FamilySpec::PolarGrassmann { space, k }, &Bounds::default()).unwrap();
        let s = space.build().unwrap();
        let dt = bfs_all(&built.graph).unwrap();
        let n = s.dim();
        let mut by_len = Vec::new();
        for len in 0..=dt.diameter() {
            let geos = all_geodesics(&built.graph, &dt, len);
            by_len.push(
                geos.iter()
                    .map(|g| {
                        g.iter().map(|&v| crate::families::projective::subspace_of(n, built.graph.label(v))).collect()
                    })
                    .collect(),
            );
        }
        (s, by_len)
    }

    #[test]
    fn normal_forms_on_sp62() {
        let (s, by_len) = geodesics_of(SpaceSpec::new(SpaceKind::Symplectic, 3, 2), 2);
        let mut f1_pairings = std::collections::BTreeSet::new();
        for (len, geos) in by_len.iter().enumerate() {
            for g in geos.iter().step_by(7) {
                let nf = pg_geodesic_normalize(&s, 2, g).unwrap();
                assert_eq!(nf.reconstruct(&s).unwrap(), *g);
                let opposite = len > 0 && is_opposite(&s, &g[0], &g[len]).unwrap().opposite;
                assert_eq!(nf.case == Case::F2, opposite);
                if len == 1 {
                    assert!(nf.pairing.is_empty() && nf.m() == 1);
                }
                if len == 3 {
                    assert_eq!(nf.pairing, BTreeMap::from([(1, 1), (2, 2)]));
                }
                if nf.case == Case::F1 {
                    let t = type_of(&s, 2, g).unwrap();
                    // a type step of 0 at position i means x_i is paired
                    for i in 2..=nf.m() {
                        assert_eq!(t.0[i - 1] == t.0[i - 2], nf.pairing.contains_key(&i));
                    }
                    if len == 2 && g[0].intersect(s.field(), &g[2]).unwrap().dim() == 0 {
                        f1_pairings.insert(nf.pairing.clone());
                        assert_eq!(t, TypeVector(vec![1, 1]));
                    }
                } else {
                    assert!(matches!(type_of(&s, 2, g), Err(Error::OppositeEnds)));
                }
            }
        }
        assert_eq!(f1_pairings, std::collections::BTreeSet::from([BTreeMap::from([(2, 1)])]));
    }

    #[test]
    fn distances_on_o73_lines() {
        let space = SpaceSpec::new(SpaceKind::OrthogonalOdd, 3, 3);
        let built = build(&FamilySpec::PolarGrassmann { space, k: 2 }, &Bounds::default()).unwrap();
        let s = space.build().unwrap();
        let n = built.graph.n();
        let subs: Vec<Subspace> =
            built.graph.labels().iter().map(|l| crate::families::projective::subspace_of(7, l)).collect();
        for u in [0, n / 3, n - 1] {
            let d = built.graph.distances_from(u as u32);
            for v in 0..n {
                assert_eq!(pg_distance(&s, 2, &subs[u], &subs[v]).unwrap(), d[v] as u32);
            }
        }
    }

    /// Orbit representatives on Sp(6,2) lines have pairwise distinct
    /// fingerprints, and sampled geodesics carry the pairing of the
    /// representative sharing their fingerprint.
    #[test]
    fn fingerprints_separate_orbits() {
        let space = SpaceSpec::new(SpaceKind::Symplectic, 3, 2);
        let built = build(&FamilySpec::PolarGrassmann { space, k: 2 }, &Bounds::default()).unwrap();
        let s = space.build().unwrap();
        let dt = bfs_all(&built.graph).unwrap();
        let to_subs = |g: &[u32]| -> Vec<Subspace> {
            g.iter().map(|&v| crate::families::projective::subspace_of(6, built.graph.label(v))).collect()
        };
        for len in 1..=3 {
            let geos = all_geodesics(&built.graph, &dt, len);
            let report = crate::symmetry::orbits_on_tuples(
                &built.gens.perms,
                &geos,
                crate::symmetry::ObjectClass::Geodesics { length: len },
            )
            .unwrap();
            let mut by_fp = BTreeMap::new();
            for rep in &report.representatives {
                let path = to_subs(rep);
                let fp = orbit_fingerprint(&s, 2, &path).unwrap();
                let pairing = pg_geodesic_normalize(&s, 2, &path).unwrap().pairing;
                assert!(by_fp.insert(fp, pairing).is_none());
            }
            for g in geos.iter().step_by(211) {
                let path = to_subs(g);
                let fp = orbit_fingerprint(&s, 2, &path).unwrap();
                assert_eq!(by_fp[&fp], pg_geodesic_normalize(&s, 2, &path).unwrap().pairing);
            }
        }
    }

    #[test]
    fn predicted_profiles_match_brute_force() {
        for (omega, k) in [(3, 1), (3, 2), (4, 2)] {
            let space = SpaceSpec::new(SpaceKind::Symplectic, omega, 2);
            let built = build(&FamilySpec::PolarGrassmann { space, k }, &Bounds::default()).unwrap();
            let order = crate::symmetry::psp_order(omega as u32, 2);
            let v = crate::symmetry::check_geodesic_transitive_rooted(&built.graph, &built.gens.perms, Some(&order))
                .unwrap();
            assert_eq!(v.group_order, order);
            let counts: Vec<u128> = v.reports.iter().map(|r| r.orbit_count as u128).collect();
            assert_eq!(counts, predicted_orbit_profile(omega, k).unwrap(), "omega={omega} k={k}");
            assert!(v.lagrange_ok);
        }
    }

    #[test]
    fn type_on_sp82() {
        let s = sp(4, 2);
        // X_0 = ⟨x1,x2⟩, X_1 = ⟨x1,x3⟩, X_2 = ⟨x3,x4⟩ with no pairing between x2 and y's
        let path = vec![frame_span(&s, &[1, 2], &[]), frame_span(&s, &[1, 3], &[]), frame_span(&s, &[3, 4], &[])];
        assert_eq!(type_of(&s, 2, &path).unwrap(), TypeVector(vec![1, 2]));
        let nf = pg_geodesic_normalize(&s, 2, &path).unwrap();
        assert!(nf.pairing.is_empty());
        let other = vec![frame_span(&s, &[1, 2], &[]), frame_span(&s, &[2, 3], &[]), frame_span(&s, &[3], &[1])];
        assert_eq!(type_of(&s, 2, &other).unwrap(), TypeVector(vec![1, 1]));
        assert_ne!(orbit_fingerprint(&s, 2, &path).unwrap(), orbit_fingerprint(&s, 2, &other).unwrap());
        let one = &path[..2];
        assert_eq!(type_of(&s, 2, one).unwrap(), TypeVector(vec![1]));
        assert_eq!(orbit_fingerprint(&s, 2, one).unwrap()[0][1], 1);
    }

    #[test]
    fn fingerprints_are_isometry_invariant() {
        let (s, by_len) = geodesics_of(SpaceSpec::new(SpaceKind::Symplectic, 3, 2), 2);
        let gens = s.isometry_generators(&Bounds::default()).unwrap();
        for g in by_len[2].iter().step_by(97).chain(by_len[3].iter().step_by(401)) {
            let fp = orbit_fingerprint(&s, 2, g).unwrap();
            for iso in &gens.gens {
                let image: Vec<Subspace> = g.iter().map(|v| iso.apply(s.field(), v)).collect();
                assert_eq!(orbit_fingerprint(&s, 2, &image).unwrap(), fp);
            }
        }
    }

    #[test]
    fn c_tau_examples() {
        let c = |t: &[u32]| c_tau(&TypeVector(t.to_vec())).unwrap();
        assert_eq!(c(&[1, 1, 2, 3]), 1);
        assert_eq!(c(&[1, 2, 2, 2]), 4);
        assert_eq!(c(&[1, 2, 3, 3]), 3);
        assert_eq!(c(&[1, 2, 2]), 2);
        assert!(matches!(c_tau(&TypeVector(vec![2, 2])), Err(Error::BadType(_))));
        assert!(matches!(c_tau(&TypeVector(vec![1, 3])), Err(Error::BadType(_))));
    }

    #[test]
    fn type_enumeration() {
        assert_eq!(enumerate_types(1, 3), vec![TypeVector(vec![1])]);
        assert_eq!(enumerate_types(4, 4).len(), 8);
        assert_eq!(enumerate_types(4, 9).len(), 8);
        assert_eq!(enumerate_types(4, 3).len(), 7);
        assert_eq!(enumerate_types(4, 2).len(), 4);
        assert!(enumerate_types(4, 2).iter().all(|t| t.peak() <= 2 && t.validate().is_ok()));
    }

    #[test]
    fn worked_orbit_counts() {
        let row = |omega, k| (1..=4).map(|m| nonopposite_orbit_count(m, omega, k).unwrap()).collect::<Vec<_>>();
        assert_eq!(row(8, 4), vec![1, 2, 5, 15]);
        assert_eq!(row(6, 4), vec![1, 2, 4, 8]);
        assert_eq!(nonopposite_orbit_count(5, 10, 5).unwrap(), 52);
        assert!(nonopposite_orbit_count(3, 4, 2).is_err());
        assert_eq!((1..=8).map(bell).collect::<Vec<_>>(), vec![1, 2, 5, 15, 52, 203, 877, 4140]);
        assert_eq!(partition_oracle(4, 2), 8);
        assert_eq!(predicted_orbit_profile(3, 2).unwrap(), vec![1, 2, 1]);
        assert_eq!(predicted_orbit_profile(4, 2).unwrap(), vec![1, 3, 1]);
        assert_eq!(predicted_orbit_profile(5, 1).unwrap(), vec![1, 1]);
        assert!(predicted_orbit_profile(3, 3).is_err());
    }

    #[test]
    fn witnesses() {
        let w = not_drg_witness(&sp(3, 2), 2).unwrap();
        assert!(w.valid, "{w:?}");
        assert!(not_drg_witness(&sp(4, 2), 3).unwrap().valid);
        assert!(matches!(not_drg_witness(&sp(3, 2), 1), Err(Error::BadParams(_))));
        assert!(matches!(not_drg_witness(&sp(3, 2), 3), Err(Error::BadParams(_))));
    }

    #[test]
    fn neighbours_match_the_graph() {
        let space = SpaceSpec::new(SpaceKind::Symplectic, 3, 2);
        let built = build(&FamilySpec::PolarGrassmann { space, k: 2 }, &Bounds::default()).unwrap();
        let s = space.build().unwrap();
        let x = crate::families::projective::subspace_of(6, built.graph.label(0));
        let nbs = pg_neighbours(&s, &x).unwrap();
        assert_eq!(nbs.len(), built.graph.degree(0));
        for nb in nbs {
            assert!(built.graph.is_adjacent(0, built.graph.index_of(nb.canonical_rows()).unwrap()));
        }
    }

    proptest! {
        #[test]
        fn c_tau_matches_product_formula(steps in proptest::collection::vec(any::<bool>(), 0..12)) {
            let mut t = vec![1u32];
            for s in steps {
                let last = *t.last().unwrap();
                t.push(if s { last + 1 } else { last });
            }
            let tv = TypeVector(t.clone());
            let product: BigUint = t.iter().map(|&x| BigUint::from(x)).product();
            let fact: BigUint = (1..=tv.peak()).map(BigUint::from).product();
            prop_assert_eq!(BigUint::from(c_tau(&tv).unwrap()), product / fact);
        }

        #[test]
        fn type_sums_match_partitions(m in 1usize..=8, cap in 1u32..=8) {
            prop_assert_eq!(orbit_count_for_cap(m, cap).unwrap(), partition_oracle(m, cap as usize));
            prop_assert_eq!(partition_oracle(m, m), bell(m));
        }
    }
}
