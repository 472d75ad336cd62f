//! Maps from pairs of flags to geodesics between two antipodal vertices.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{bfs_all, count_geodesics, intersection_array, Geodesic, MAX_TABLE_VERTICES};
use crate::algebra::{enumerate_subspaces, Elem, Field, Matrix, Subspace};
use crate::error::{Error, Result};
use crate::families::projective::{label_of, subspace_of};
use crate::families::{Built, FamilySpec, Label};
use crate::spaces::FormedSpace;
use crate::Bounds;

/// The flag data indexing one geodesic. Chains list only the proper nonempty
/// members, smallest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FlagData {
    /// Maximal chains inside `X` and inside `Y`: sets for the Johnson and
    /// doubled Odd graphs, subspaces for the Grassmann and doubled Grassmann
    /// graphs.
    SetChains {
        x: Vec<Label>,
        y: Vec<Label>,
    },
    SubspaceChains {
        x: Vec<Subspace>,
        y: Vec<Subspace>,
    },
    /// `Σ_1 ⊂ … ⊂ Σ_(k−1)` of coordinate positions.
    Positions(Vec<Label>),
    /// `Y_1 < … < Y_(ω−1)`; the matching chain in `X` is `Y_(ω−i)^⊥ ∩ X`.
    PolarFlag(Vec<Subspace>),
    /// `U_1 < … < U_(m−1)` and complements `Ū_1 > … > Ū_(m−1)` with
    /// `U = U_i ⊕ Ū_i`.
    ComplementaryFlags {
        flag: Vec<Subspace>,
        complements: Vec<Subspace>,
    },
    /// A complement `U` of `X + Y` not inside `H`, and a point of `U` off `H`.
    Opposite {
        u: Subspace,
        point: Subspace,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub family: String,
    pub x: u32,
    pub y: u32,
    pub distance: u32,
    pub flags: u64,
    pub distinct_images: u64,
    pub all_geodesic: bool,
    pub geodesic_count: u128,
    pub c_product: Option<u128>,
    pub pass: bool,
    pub failure: Option<String>,
}

fn unsupported(spec: &FamilySpec) -> Error {
    Error::BadParams(format!("no flag map for {}", spec.name()))
}

fn field_of(spec: &FamilySpec) -> Result<Field> {
    spec.field()?.ok_or_else(|| unsupported(spec))
}

fn space_of(spec: &FamilySpec) -> Result<FormedSpace> {
    spec.space()?.ok_or_else(|| unsupported(spec))
}

fn union(a: &[u32], b: &[u32]) -> Label {
    let mut out: Label = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Index pairs `(i, j)` of the members `X_i ∪ Y_j` along the path. With equal
/// sizes both indices move at once; otherwise they alternate.
fn index_path(a: usize, b: usize) -> Vec<(usize, usize)> {
    if a == b {
        (0..=a).map(|j| (a - j, j)).collect()
    } else {
        let mut out = vec![(a, 0)];
        let (mut i, mut j) = (a, 0);
        while j < b {
            j += 1;
            out.push((i, j));
            if i > 0 {
                i -= 1;
                out.push((i, j));
            }
        }
        out
    }
}

fn check_set_chain(chain: &[Label], top: &[u32]) -> Result<()> {
    let mut prev: &[u32] = &[];
    for (i, c) in chain.iter().chain(std::iter::once(&top.to_vec())).enumerate() {
        if c.len() != i + 1 || !prev.iter().all(|x| c.contains(x)) {
            return Err(Error::BadFlag(format!(
                "chain member {i} is not a set of size {} over the previous one",
                i + 1
            )));
        }
        prev = c;
    }
    Ok(())
}

fn check_subspace_chain(field: &Field, chain: &[Subspace], top: &Subspace) -> Result<()> {
    let mut prev = Subspace::zero(top.ambient());
    for (i, c) in chain.iter().chain(std::iter::once(top)).enumerate() {
        if c.ambient() != top.ambient() || c.dim() != i + 1 || !c.contains(field, &prev)? {
            return Err(Error::BadFlag(format!("chain member {i} is not a {}-space over the previous one", i + 1)));
        }
        prev = c.clone();
    }
    Ok(())
}

fn full_set_chain(chain: &[Label], top: &[u32]) -> Vec<Label> {
    let mut out = vec![Vec::new()];
    out.extend(chain.iter().cloned());
    out.push(top.to_vec());
    out
}

fn full_subspace_chain(chain: &[Subspace], top: &Subspace) -> Vec<Subspace> {
    let mut out = vec![Subspace::zero(top.ambient())];
    out.extend(chain.iter().cloned());
    out.push(top.clone());
    out
}

/// Labels of `X_i + Y_j` as a matrix of row-major projection `P` applied to
/// `D = Y − X`: the bilinear form that vanishes on `U_i` and agrees with `D`
/// on `Ū_i`.
fn bilinear_member(field: &Field, x: &Matrix, d: &Matrix, u: &Subspace, ubar: &Subspace) -> Result<Label> {
    let m = x.rows();
    let mut rows = u.basis();
    rows.extend(ubar.basis());
    let b = Matrix::from_rows(&rows)?;
    let binv = b.inverse(field).map_err(|_| Error::BadFlag("complement is not complementary".into()))?;
    let mut proj = Matrix::zeros(m, m);
    for r in 0..m {
        for s in u.dim()..m {
            let c = binv.get(r, s);
            if c == 0 {
                continue;
            }
            for t in 0..m {
                proj.set(r, t, field.add(proj.get(r, t), field.mul(c, b.get(s, t))));
            }
        }
    }
    Ok(x.add(field, &proj.mul(field, d)).data().to_vec())
}

/// The geodesic from `x` to `y` indexed by `flag`.
pub fn flag_to_geodesic(spec: &FamilySpec, built: &Built, x: u32, y: u32, flag: &FlagData) -> Result<Geodesic> {
    let g = &built.graph;
    if x as usize >= g.n() || y as usize >= g.n() {
        return Err(Error::BadParams("vertex out of range".into()));
    }
    let lx = g.label(x).clone();
    let ly = g.label(y).clone();
    let labels: Vec<Label> = match (spec, flag) {
        (FamilySpec::Johnson { .. } | FamilySpec::DoubledOdd { .. }, FlagData::SetChains { x: cx, y: cy }) => {
            if lx.iter().any(|a| ly.contains(a)) {
                return Err(Error::BadFlag("X and Y must be disjoint".into()));
            }
            check_set_chain(cx, &lx)?;
            check_set_chain(cy, &ly)?;
            let fx = full_set_chain(cx, &lx);
            let fy = full_set_chain(cy, &ly);
            index_path(lx.len(), ly.len()).into_iter().map(|(i, j)| union(&fx[i], &fy[j])).collect()
        }
        (
            FamilySpec::Grassmann { .. } | FamilySpec::DoubledGrassmann { .. },
            FlagData::SubspaceChains { x: cx, y: cy },
        ) => {
            let field = field_of(spec)?;
            let n = match spec {
                FamilySpec::Grassmann { n, .. } => *n,
                FamilySpec::DoubledGrassmann { k, .. } => 2 * k - 1,
                _ => unreachable!(),
            };
            let (sx, sy) = (subspace_of(n, &lx), subspace_of(n, &ly));
            if sx.intersect(&field, &sy)?.dim() != 0 {
                return Err(Error::BadFlag("X and Y must meet trivially".into()));
            }
            check_subspace_chain(&field, cx, &sx)?;
            check_subspace_chain(&field, cy, &sy)?;
            let fx = full_subspace_chain(cx, &sx);
            let fy = full_subspace_chain(cy, &sy);
            let mut out = Vec::new();
            for (i, j) in index_path(sx.dim(), sy.dim()) {
                out.push(label_of(&fx[i].sum(&field, &fy[j])?));
            }
            out
        }
        (FamilySpec::DualPolar { .. }, FlagData::PolarFlag(cy)) => {
            let space = space_of(spec)?;
            let field = space.field().clone();
            let w = space.omega();
            let (sx, sy) = (subspace_of(space.dim(), &lx), subspace_of(space.dim(), &ly));
            if sx.intersect(&field, &sy)?.dim() != 0 {
                return Err(Error::NotOppositeMaximals);
            }
            check_subspace_chain(&field, cy, &sy)?;
            let fy = full_subspace_chain(cy, &sy);
            let mut out = Vec::new();
            for j in 0..=w {
                let xi = space.perp(&fy[j])?.intersect(&field, &sx)?;
                out.push(label_of(&xi.sum(&field, &fy[j])?));
            }
            out
        }
        (FamilySpec::Hamming { k, .. }, FlagData::Positions(sigma)) => {
            if lx.iter().zip(&ly).any(|(a, b)| a == b) {
                return Err(Error::BadFlag("X and Y must differ in every coordinate".into()));
            }
            let all: Label = (0..*k as u32).collect();
            check_set_chain(sigma, &all)?;
            full_set_chain(sigma, &all)
                .iter()
                .map(|s| (0..*k).map(|c| if s.contains(&(c as u32)) { ly[c] } else { lx[c] }).collect())
                .collect()
        }
        (FamilySpec::BilinearForms { m, k, .. }, FlagData::ComplementaryFlags { flag: us, complements: ubars }) => {
            let field = field_of(spec)?;
            let (m, k) = (*m, *k);
            let mx = Matrix::from_flat(m, k, lx.clone())?;
            let d = Matrix::from_flat(m, k, ly.clone())?.sub(&field, &mx);
            if d.rank(&field) != m {
                return Err(Error::BadFlag("Y − X must have full rank".into()));
            }
            check_subspace_chain(&field, us, &Subspace::full(m))?;
            if ubars.len() + 1 != m {
                return Err(Error::BadFlag("expected m − 1 complements".into()));
            }
            // U_0 = 0 with Ū_0 = U, and U_m = U with Ū_m = 0
            let mut path = Vec::with_capacity(m + 1);
            for i in (0..=m).rev() {
                let u = if i == 0 {
                    Subspace::zero(m)
                } else if i == m {
                    Subspace::full(m)
                } else {
                    us[i - 1].clone()
                };
                let ubar = if i == 0 {
                    Subspace::full(m)
                } else if i == m {
                    Subspace::zero(m)
                } else {
                    ubars[i - 1].clone()
                };
                if ubar.dim() != m - i || u.intersect(&field, &ubar)?.dim() != 0 {
                    return Err(Error::BadFlag(format!("Ū_{i} is not a complement of U_{i}")));
                }
                if i + 1 < m && i > 0 && !ubar.contains(&field, &ubars[i])? {
                    return Err(Error::BadFlag("complements must decrease".into()));
                }
                path.push(bilinear_member(&field, &mx, &d, &u, &ubar)?);
            }
            path
        }
        (FamilySpec::IncidenceOpposites { n, .. }, FlagData::Opposite { u, point }) => {
            let field = field_of(spec)?;
            let n = *n;
            let (sx, sy) = (subspace_of(n, &lx), subspace_of(n, &ly));
            if sx.dim() != 1 || sy.dim() != 1 {
                return Err(Error::BadFlag("X and Y must be points".into()));
            }
            let xy = sx.sum(&field, &sy)?;
            let off_h = |s: &Subspace| s.basis().iter().any(|v| v[n - 1] != 0);
            if u.dim() + 2 != n || u.intersect(&field, &xy)?.dim() != 0 || !off_h(u) {
                return Err(Error::BadFlag("U must be a complement of X + Y not inside H".into()));
            }
            if point.dim() != 1 || !u.contains(&field, point)? || !off_h(point) {
                return Err(Error::BadFlag("the point must lie in U and off H".into()));
            }
            vec![lx.clone(), label_of(&sx.sum(&field, u)?), label_of(point), label_of(&sy.sum(&field, u)?), ly.clone()]
        }
        _ => return Err(unsupported(spec)),
    };
    let mut vertices = Vec::with_capacity(labels.len());
    for l in &labels {
        vertices.push(g.index_of(l).ok_or_else(|| Error::BadFlag(format!("{l:?} is not a vertex")))?);
    }
    let geo = Geodesic { vertices };
    if geo.vertices.last() != Some(&y) || !geo.is_valid(g) {
        return Err(Error::NotAGeodesic(format!("{:?}", geo.vertices)));
    }
    Ok(geo)
}

fn set_chains(s: &[u32]) -> Vec<Vec<Label>> {
    if s.len() <= 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..s.len() {
        let rest: Label = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        for mut c in set_chains(&rest) {
            c.push(rest.clone());
            out.push(c);
        }
    }
    out
}

fn subspace_chains(field: &Field, s: &Subspace) -> Vec<Vec<Subspace>> {
    if s.dim() <= 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for h in s.subspaces_of(field, s.dim() - 1) {
        for mut c in subspace_chains(field, &h) {
            c.push(h.clone());
            out.push(c);
        }
    }
    out
}

fn guard(count: usize, bounds: &Bounds) -> Result<()> {
    if count as u64 > bounds.max_flag_maps {
        return Err(Error::TooLarge(format!("{count} flags exceed the bound {}", bounds.max_flag_maps)));
    }
    Ok(())
}

/// Every flag pair indexing a geodesic from `x` to `y`.
pub fn enumerate_flags(spec: &FamilySpec, built: &Built, x: u32, y: u32, bounds: &Bounds) -> Result<Vec<FlagData>> {
    let g = &built.graph;
    let lx = g.label(x).clone();
    let ly = g.label(y).clone();
    let out = match spec {
        FamilySpec::Johnson { .. } | FamilySpec::DoubledOdd { .. } => {
            let (cx, cy) = (set_chains(&lx), set_chains(&ly));
            guard(cx.len() * cy.len(), bounds)?;
            cx.iter().flat_map(|a| cy.iter().map(|b| FlagData::SetChains { x: a.clone(), y: b.clone() })).collect()
        }
        FamilySpec::Grassmann { .. } | FamilySpec::DoubledGrassmann { .. } => {
            let field = field_of(spec)?;
            let n = match *spec {
                FamilySpec::Grassmann { n, .. } => n,
                FamilySpec::DoubledGrassmann { k, .. } => 2 * k - 1,
                _ => unreachable!(),
            };
            let cx = subspace_chains(&field, &subspace_of(n, &lx));
            let cy = subspace_chains(&field, &subspace_of(n, &ly));
            guard(cx.len() * cy.len(), bounds)?;
            cx.iter().flat_map(|a| cy.iter().map(|b| FlagData::SubspaceChains { x: a.clone(), y: b.clone() })).collect()
        }
        FamilySpec::DualPolar { .. } => {
            let space = space_of(spec)?;
            let cy = subspace_chains(space.field(), &subspace_of(space.dim(), &ly));
            guard(cy.len(), bounds)?;
            cy.into_iter().map(FlagData::PolarFlag).collect()
        }
        FamilySpec::Hamming { k, .. } => {
            let all: Label = (0..*k as u32).collect();
            set_chains(&all).into_iter().map(FlagData::Positions).collect()
        }
        FamilySpec::BilinearForms { m, .. } => {
            let field = field_of(spec)?;
            let m = *m;
            let by_dim: Vec<Vec<Subspace>> =
                (0..=m).map(|d| enumerate_subspaces(&field, m, d, bounds)).collect::<Result<_>>()?;
            let mut out = Vec::new();
            for flag in subspace_chains(&field, &Subspace::full(m)) {
                // choose Ū_(m−1) < … < Ū_1 from the top index down
                let mut partial: Vec<Vec<Subspace>> = vec![Vec::new()];
                for i in (1..m).rev() {
                    let mut next = Vec::new();
                    for p in &partial {
                        let below = p.last().cloned().unwrap_or_else(|| Subspace::zero(m));
                        for c in &by_dim[m - i] {
                            if c.contains(&field, &below)? && c.intersect(&field, &flag[i - 1])?.dim() == 0 {
                                let mut q = p.clone();
                                q.push(c.clone());
                                next.push(q);
                            }
                        }
                    }
                    partial = next;
                }
                for mut p in partial {
                    p.reverse();
                    out.push(FlagData::ComplementaryFlags { flag: flag.clone(), complements: p });
                    guard(out.len(), bounds)?;
                }
            }
            out
        }
        FamilySpec::IncidenceOpposites { n, .. } => {
            let field = field_of(spec)?;
            let n = *n;
            let xy = subspace_of(n, &lx).sum(&field, &subspace_of(n, &ly))?;
            let mut out = Vec::new();
            for u in enumerate_subspaces(&field, n, n - 2, bounds)? {
                if u.intersect(&field, &xy)?.dim() != 0 {
                    continue;
                }
                for p in u.points(&field) {
                    if p[n - 1] != 0 {
                        out.push(FlagData::Opposite { u: u.clone(), point: Subspace::span(&field, n, &[p])? });
                    }
                }
                guard(out.len(), bounds)?;
            }
            out
        }
        _ => return Err(unsupported(spec)),
    };
    Ok(out)
}

/// The first vertex and the smallest vertex at maximal distance from it.
pub fn canonical_pair(built: &Built) -> Result<(u32, u32)> {
    let g = &built.graph;
    if g.n() == 0 {
        return Err(Error::BadParams("empty graph".into()));
    }
    let dist = g.distances_from(0);
    if dist.contains(&u32::MAX) {
        return Err(Error::Disconnected);
    }
    let far = *dist.iter().max().expect("nonempty");
    Ok((0, dist.iter().position(|&d| d == far).expect("present") as u32))
}

/// Maps every flag pair for `(x, y)` (default: the canonical pair) and checks
/// that the images are distinct geodesics exhausting all geodesics, and that
/// their number is `c_1⋯c_δ` when the graph is distance-regular.
pub fn bijection_check(
    spec: &FamilySpec,
    built: &Built,
    pair: Option<(u32, u32)>,
    bounds: &Bounds,
) -> Result<BijectionReport> {
    let g = &built.graph;
    let (x, y) = match pair {
        Some(p) => p,
        None => canonical_pair(built)?,
    };
    if x as usize >= g.n() || y as usize >= g.n() {
        return Err(Error::BadParams("vertex out of range".into()));
    }
    let distance = g.distances_from(x)[y as usize];
    let flags = enumerate_flags(spec, built, x, y, bounds)?;
    let mut images: HashSet<Vec<Elem>> = HashSet::new();
    let mut failure = None;
    for f in &flags {
        match flag_to_geodesic(spec, built, x, y, f) {
            Ok(geo) => {
                images.insert(geo.vertices);
            }
            Err(e) => {
                failure.get_or_insert_with(|| format!("{f:?}: {e}"));
            }
        }
    }
    let all_geodesic = failure.is_none();
    let geodesic_count = count_geodesics(g, x, y)?;
    let c_product = if g.n() <= MAX_TABLE_VERTICES {
        let dt = bfs_all(g)?;
        intersection_array(g, &dt).array().map(|a| a.c_product())
    } else {
        None
    };
    let distinct = images.len() as u64;
    if failure.is_none() && distinct != flags.len() as u64 {
        failure = Some(format!("{} flags gave {distinct} distinct geodesics", flags.len()));
    }
    if failure.is_none() && distinct as u128 != geodesic_count {
        failure = Some(format!("images cover {distinct} of {geodesic_count} geodesics"));
    }
    if failure.is_none() && c_product.is_some_and(|c| c != geodesic_count) {
        failure = Some(format!("c-product {} differs from {geodesic_count}", c_product.unwrap_or(0)));
    }
    Ok(BijectionReport {
        family: spec.to_string(),
        x,
        y,
        distance,
        flags: flags.len() as u64,
        distinct_images: distinct,
        all_geodesic,
        geodesic_count,
        c_product,
        pass: failure.is_none(),
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, SpaceSpec};
    use crate::spaces::SpaceKind;

    fn check(spec: FamilySpec) -> BijectionReport {
        let built = build(&spec, &Bounds::default()).unwrap();
        bijection_check(&spec, &built, None, &Bounds::default()).unwrap()
    }

    #[test]
    fn index_paths() {
        assert_eq!(index_path(2, 2), vec![(2, 0), (1, 1), (0, 2)]);
        assert_eq!(index_path(2, 3), vec![(2, 0), (2, 1), (1, 1), (1, 2), (0, 2), (0, 3)]);
    }

    #[test]
    fn listed_counts() {
        for (spec, want) in [
            (FamilySpec::Johnson { n: 5, k: 2 }, 4),
            (FamilySpec::BilinearForms { m: 2, k: 2, q: 2 }, 6),
            (FamilySpec::Grassmann { n: 4, k: 2, q: 2 }, 9),
            (FamilySpec::DualPolar { space: SpaceSpec::new(SpaceKind::Symplectic, 2, 2) }, 3),
            (FamilySpec::DoubledOdd { k: 3 }, 12),
            (FamilySpec::Hamming { k: 3, m: 2 }, 6),
            (FamilySpec::IncidenceOpposites { n: 4, q: 2 }, 24),
            (FamilySpec::DoubledGrassmann { k: 2, q: 2 }, 3),
        ] {
            let r = check(spec.clone());
            assert!(r.pass, "{spec}: {:?}", r.failure);
            assert_eq!(r.flags, want, "{spec}");
        }
    }

    #[test]
    fn larger_instances() {
        for spec in [
            FamilySpec::Johnson { n: 7, k: 3 },
            FamilySpec::Hamming { k: 3, m: 3 },
            FamilySpec::BilinearForms { m: 2, k: 3, q: 2 },
            FamilySpec::DualPolar { space: SpaceSpec::new(SpaceKind::UnitaryOdd, 2, 4) },
            FamilySpec::DualPolar { space: SpaceSpec::new(SpaceKind::Symplectic, 3, 2) },
            FamilySpec::IncidenceOpposites { n: 3, q: 3 },
        ] {
            let r = check(spec.clone());
            assert!(r.pass, "{spec}: {:?}", r.failure);
        }
    }

    #[test]
    fn worked_maps() {
        let spec = FamilySpec::Johnson { n: 5, k: 2 };
        let built = build(&spec, &Bounds::default()).unwrap();
        let g = &built.graph;
        let v = |l: &[u32]| g.index_of(l).unwrap();
        let flag = FlagData::SetChains { x: vec![vec![1]], y: vec![vec![3]] };
        let geo = flag_to_geodesic(&spec, &built, v(&[1, 2]), v(&[3, 4]), &flag).unwrap();
        assert_eq!(geo.vertices, vec![v(&[1, 2]), v(&[1, 3]), v(&[3, 4])]);

        let spec = FamilySpec::Hamming { k: 3, m: 2 };
        let built = build(&spec, &Bounds::default()).unwrap();
        let g = &built.graph;
        let v = |l: &[u32]| g.index_of(l).unwrap();
        let flag = FlagData::Positions(vec![vec![0], vec![0, 1]]);
        let geo = flag_to_geodesic(&spec, &built, v(&[0, 0, 0]), v(&[1, 1, 1]), &flag).unwrap();
        let words: Vec<&Label> = geo.vertices.iter().map(|&i| g.label(i)).collect();
        assert_eq!(words, [&vec![0, 0, 0], &vec![1, 0, 0], &vec![1, 1, 0], &vec![1, 1, 1]]);
    }

    #[test]
    fn malformed_flags_are_rejected() {
        let spec = FamilySpec::Johnson { n: 5, k: 2 };
        let built = build(&spec, &Bounds::default()).unwrap();
        let (x, y) = canonical_pair(&built).unwrap();
        let bad = FlagData::SetChains { x: vec![vec![4]], y: vec![vec![0]] };
        assert!(matches!(flag_to_geodesic(&spec, &built, x, y, &bad), Err(Error::BadFlag(_))));
        let wrong = FlagData::Positions(vec![]);
        assert!(matches!(flag_to_geodesic(&spec, &built, x, y, &wrong), Err(Error::BadParams(_))));
        let odd = FamilySpec::Odd { k: 3 };
        let b = build(&odd, &Bounds::default()).unwrap();
        assert!(bijection_check(&odd, &b, None, &Bounds::default()).is_err());
    }
}
