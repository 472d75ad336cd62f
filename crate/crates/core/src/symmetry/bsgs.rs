use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::perm::Permutation;
use crate::error::{Error, Result};

const OUTSIDE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    /// Indices into `strong` of generators fixing every earlier base point.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// Schreier tree: for each orbit point the generator that reached it.
    tree: Vec<u32>,
}

/// Base and strong generating set of a permutation group.
#[derive(Clone, Debug)]
pub struct Bsgs {
    n: usize,
    strong: Vec<Permutation>,
    inverses: Vec<Permutation>,
    levels: Vec<Level>,
}

fn check_degree(gens: &[Permutation], n: usize) -> Result<()> {
    match gens.iter().find(|g| g.degree() != n) {
        Some(g) => Err(Error::NotPermutation(format!("degree {} on {n} points", g.degree()))),
        None => Ok(()),
    }
}

impl Bsgs {
    fn empty(n: usize) -> Bsgs {
        Bsgs { n, strong: Vec::new(), inverses: Vec::new(), levels: Vec::new() }
    }

    /// Deterministic Schreier–Sims.
    pub fn new(gens: &[Permutation], n: usize) -> Result<Bsgs> {
        Self::with_base_prefix(gens, n, &[])
    }

    /// Deterministic Schreier–Sims with the base starting at `prefix`.
    pub fn with_base_prefix(gens: &[Permutation], n: usize, prefix: &[u32]) -> Result<Bsgs> {
        check_degree(gens, n)?;
        let mut b = Bsgs::empty(n);
        for &p in prefix {
            b.push_level(p);
        }
        for g in gens {
            if !g.is_identity() {
                b.add_strong(g.clone());
            }
        }
        b.cover_base();
        for i in 0..b.levels.len() {
            b.rebuild_level(i);
        }
        let mut i = b.levels.len() as isize - 1;
        while i >= 0 {
            match b.find_missing(i as usize) {
                Some((h, j)) => {
                    b.add_strong(h);
                    if j == b.levels.len() {
                        let moved = b.strong.last().and_then(Permutation::first_moved).expect("nontrivial");
                        b.push_level(moved);
                    }
                    for l in (i as usize + 1)..=j.min(b.levels.len() - 1) {
                        b.rebuild_level(l);
                    }
                    i = j.min(b.levels.len() - 1) as isize;
                }
                None => i -= 1,
            }
        }
        Ok(b)
    }

    /// Randomised Schreier–Sims. Stops once the order reaches `target` or
    /// after `idle` consecutive random elements sift to the identity. The
    /// computed order never exceeds the true one, so reaching a known upper
    /// bound proves the result.
    pub fn random(gens: &[Permutation], n: usize, seed: u64, target: Option<&BigUint>, idle: usize) -> Result<Bsgs> {
        Self::random_with_base_prefix(gens, n, &[], seed, target, idle)
    }

    pub fn random_with_base_prefix(
        gens: &[Permutation],
        n: usize,
        prefix: &[u32],
        seed: u64,
        target: Option<&BigUint>,
        idle: usize,
    ) -> Result<Bsgs> {
        check_degree(gens, n)?;
        let mut b = Bsgs::empty(n);
        for &p in prefix {
            b.push_level(p);
        }
        let nontrivial: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if nontrivial.is_empty() {
            return Ok(b);
        }
        for g in &nontrivial {
            let (h, j) = b.sift(g, 0);
            if !h.is_identity() {
                b.absorb(h, j);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pool: Vec<Permutation> = nontrivial.iter().cycle().take(nontrivial.len().max(10)).cloned().collect();
        let mut acc = Permutation::identity(n);
        let step = |rng: &mut ChaCha8Rng, pool: &mut Vec<Permutation>, acc: &mut Permutation| {
            let i = rng.gen_range(0..pool.len());
            let mut j = rng.gen_range(0..pool.len());
            while pool.len() > 1 && j == i {
                j = rng.gen_range(0..pool.len());
            }
            pool[i] = if rng.gen_bool(0.5) { pool[i].then(&pool[j]) } else { pool[i].then(&pool[j].inverse()) };
            *acc = acc.then(&pool[i]);
            acc.clone()
        };
        for _ in 0..60 {
            step(&mut rng, &mut pool, &mut acc);
        }
        let mut quiet = 0;
        loop {
            if let Some(t) = target {
                if &b.order() == t {
                    break;
                }
                if &b.order() > t {
                    return Err(Error::BadParams(format!("group order exceeds the expected bound {t}")));
                }
            } else if quiet >= idle {
                break;
            }
            let r = step(&mut rng, &mut pool, &mut acc);
            let (h, j) = b.sift(&r, 0);
            if h.is_identity() {
                quiet += 1;
                if target.is_some() && quiet > idle.max(1000) {
                    break;
                }
            } else {
                quiet = 0;
                b.absorb(h, j);
            }
        }
        Ok(b)
    }

    fn absorb(&mut self, h: Permutation, j: usize) {
        self.add_strong(h);
        if j == self.levels.len() {
            let moved = self.strong.last().and_then(Permutation::first_moved).expect("nontrivial");
            self.push_level(moved);
        }
        for l in 0..=j.min(self.levels.len() - 1) {
            self.rebuild_level(l);
        }
    }

    fn add_strong(&mut self, g: Permutation) {
        self.inverses.push(g.inverse());
        self.strong.push(g);
    }

    fn push_level(&mut self, point: u32) {
        self.levels.push(Level { point, gens: Vec::new(), orbit: vec![point], tree: Vec::new() });
    }

    fn cover_base(&mut self) {
        for idx in 0..self.strong.len() {
            let fixes_all = self.levels.iter().all(|l| self.strong[idx].apply(l.point) == l.point);
            if fixes_all {
                let p = self.strong[idx].first_moved().expect("nontrivial");
                self.push_level(p);
            }
        }
    }

    fn rebuild_level(&mut self, i: usize) {
        let fixed: Vec<u32> = self.levels[..i].iter().map(|l| l.point).collect();
        let gens: Vec<usize> =
            (0..self.strong.len()).filter(|&s| fixed.iter().all(|&p| self.strong[s].apply(p) == p)).collect();
        let root = self.levels[i].point;
        let mut tree = vec![OUTSIDE; self.n];
        tree[root as usize] = ROOT;
        let mut orbit = vec![root];
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            head += 1;
            for &s in &gens {
                let img = self.strong[s].apply(pt);
                if tree[img as usize] == OUTSIDE {
                    tree[img as usize] = s as u32;
                    orbit.push(img);
                }
            }
        }
        let level = &mut self.levels[i];
        level.gens = gens;
        level.orbit = orbit;
        level.tree = tree;
    }

    /// An element mapping the base point of level `i` to `pt`.
    fn transversal(&self, i: usize, pt: u32) -> Permutation {
        let tree = &self.levels[i].tree;
        let mut path = Vec::new();
        let mut cur = pt;
        while tree[cur as usize] != ROOT {
            let s = tree[cur as usize] as usize;
            path.push(s);
            cur = self.inverses[s].apply(cur);
        }
        let mut u = Permutation::identity(self.n);
        for &s in path.iter().rev() {
            u = u.then(&self.strong[s]);
        }
        u
    }

    fn transversal_inverse(&self, i: usize, pt: u32) -> Permutation {
        let tree = &self.levels[i].tree;
        let mut u = Permutation::identity(self.n);
        let mut cur = pt;
        while tree[cur as usize] != ROOT {
            let s = tree[cur as usize] as usize;
            u = u.then(&self.inverses[s]);
            cur = self.inverses[s].apply(cur);
        }
        u
    }

    /// Sifts `g` from level `start`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it passed every level).
    fn sift(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for i in start..self.levels.len() {
            let beta = h.apply(self.levels[i].point);
            if self.levels[i].tree.get(beta as usize).copied().unwrap_or(OUTSIDE) == OUTSIDE {
                return (h, i);
            }
            h = h.then(&self.transversal_inverse(i, beta));
        }
        (h, self.levels.len())
    }

    fn find_missing(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for &beta in &level.orbit {
            let u = self.transversal(i, beta);
            for &s in &level.gens {
                let img = self.strong[s].apply(beta);
                let g = u.then(&self.strong[s]).then(&self.transversal_inverse(i, img));
                if g.is_identity() {
                    continue;
                }
                let (h, j) = self.sift(&g, i + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.n && self.sift(g, 0).0.is_identity()
    }

    /// Generators of the pointwise stabiliser of the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        if depth == 0 {
            return self.strong.clone();
        }
        if depth >= self.levels.len() {
            return Vec::new();
        }
        self.levels[depth].gens.iter().map(|&s| self.strong[s].clone()).collect()
    }

    /// The orbit of the first base point.
    pub fn base_orbit(&self) -> &[u32] {
        self.levels.first().map_or(&[], |l| &l.orbit)
    }
}
