//! Seeded random inputs for property tests, benchmarks and the CLI.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{arrangement, semicomplex_from_subdivisions, PolyComplex, SemiComplex};
use crate::cone::Cone;
use crate::exactlin::{rat, rat_vec, Rat, RatMatrix, Subspace};
use crate::strata::{Monodromy, StratSystem, Stratum};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("D{i}")).collect()
}

/// A random downward closed family on `n` divisors containing every singleton.
pub fn random_family(rng: &mut impl Rng, n: usize) -> Vec<Stratum> {
    let mut out: BTreeSet<Stratum> = (0..n).map(|i| Stratum(vec![i])).collect();
    let tops = rng.gen_range(1..=3);
    for _ in 0..tops {
        let k = rng.gen_range(1..=n);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        out.extend(Stratum::new(idx[..k].to_vec()).subsets());
    }
    out.into_iter().collect()
}

/// Nilpotent matrices commuting with each other: powers of the Jordan blocks
/// of a random block decomposition of `Q^size`.
fn commuting_pool(rng: &mut impl Rng, size: usize) -> Vec<RatMatrix> {
    let mut blocks = Vec::new();
    let mut left = size;
    while left > 0 {
        // the first block is nontrivial so the pool is never empty
        let lo = if blocks.is_empty() { 2.min(left) } else { 1 };
        let b = rng.gen_range(lo..=left);
        blocks.push(b);
        left -= b;
    }
    let mut pool = Vec::new();
    let mut offset = 0;
    for b in blocks {
        let mut j = RatMatrix::zeros(size, size);
        for r in offset..offset + b - 1 {
            j.set(r, r + 1, rat(1));
        }
        for k in 1..b {
            pool.push(j.pow(k as u32));
        }
        offset += b;
    }
    pool
}

/// One nilpotent matrix per divisor, each a nonzero nonnegative combination
/// of a commuting pool, so that all monodromy cones are pointed.
pub fn random_matrix_system(rng: &mut impl Rng, max_divisors: usize, max_size: usize) -> StratSystem {
    let n = rng.gen_range(1..=max_divisors);
    let size = rng.gen_range(2..=max_size.max(2));
    let pool = commuting_pool(rng, size);
    let mats = (0..n)
        .map(|_| loop {
            let mut m = RatMatrix::zeros(size, size);
            for p in &pool {
                let c = rng.gen_range(0..=2i64);
                if c > 0 {
                    m = m.add(&p.scaled(&rat(c)));
                }
            }
            if !m.is_zero() {
                break m;
            }
        })
        .collect();
    let family = random_family(rng, n);
    StratSystem::new(names(n), family, Monodromy::Matrices(mats)).expect("well formed")
}

/// Kernels `Ker_I = {x : Σ x_i v_i = 0}` for random nonzero nonnegative
/// vectors `v_i ∈ Z^dim`.
pub fn random_kernel_system(rng: &mut impl Rng, max_divisors: usize, max_dim: usize) -> StratSystem {
    let n = rng.gen_range(1..=max_divisors);
    let dim = rng.gen_range(1..=max_dim);
    let vs: Vec<Vec<i64>> = (0..n)
        .map(|_| loop {
            let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=2)).collect();
            if v.iter().any(|&x| x != 0) {
                break v;
            }
        })
        .collect();
    let family = random_family(rng, n);
    let kernels = family
        .iter()
        .map(|s| {
            let cols: Vec<Vec<Rat>> = s.indices().iter().map(|&i| rat_vec(&vs[i])).collect();
            let k = if s.is_empty() {
                Subspace::zero(0)
            } else {
                RatMatrix::from_columns(dim, &cols).kernel()
            };
            (s.clone(), k)
        })
        .collect();
    StratSystem::new(names(n), family, Monodromy::Kernels(kernels)).expect("well formed")
}

/// The system used for seed `seed` by the test suites: matrices for even
/// seeds, kernels for odd ones, at most four divisors.
pub fn random_system(seed: u64) -> StratSystem {
    let mut r = rng(seed);
    if seed.is_multiple_of(2) {
        random_matrix_system(&mut r, 4, 6)
    } else {
        random_kernel_system(&mut r, 4, 4)
    }
}

/// A strictly upper triangular matrix with entries in `-2..=2`, conjugated
/// by a random permutation.
pub fn random_nilpotent(rng: &mut impl Rng, size: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(size, size);
    for i in 0..size {
        for j in i + 1..size {
            m.set(i, j, rat(rng.gen_range(-2..=2)));
        }
    }
    let mut perm: Vec<usize> = (0..size).collect();
    perm.shuffle(rng);
    let mut p = RatMatrix::zeros(size, size);
    for (i, &j) in perm.iter().enumerate() {
        p.set(i, j, rat(1));
    }
    p.mul(&m).mul(&p.transpose())
}

/// A random invertible integer matrix (unit lower times unit upper
/// triangular, entries in `-1..=1`).
pub fn random_unimodular(rng: &mut impl Rng, size: usize) -> RatMatrix {
    let mut l = RatMatrix::identity(size);
    let mut u = RatMatrix::identity(size);
    for i in 0..size {
        for j in 0..i {
            l.set(i, j, rat(rng.gen_range(-1..=1)));
            u.set(j, i, rat(rng.gen_range(-1..=1)));
        }
    }
    l.mul(&u)
}

fn random_vector(rng: &mut impl Rng, dim: usize, lo: i64, hi: i64) -> Vec<Rat> {
    (0..dim).map(|_| rat(rng.gen_range(lo..=hi))).collect()
}

/// A random full-dimensional pointed cone in `Q^dim`, `dim ≥ 1`.
pub fn random_pointed_cone(rng: &mut impl Rng, dim: usize) -> Cone {
    loop {
        let extra = if dim >= 3 { rng.gen_range(0..=1) } else { 0 };
        let mut gens: Vec<Vec<Rat>> = (0..dim + extra)
            .map(|_| {
                let mut v = random_vector(rng, dim, 0, 3);
                v[0] = rat(rng.gen_range(1..=3));
                v
            })
            .collect();
        if extra == 0 {
            gens.truncate(dim);
        }
        let c = Cone::hull(dim, &gens).expect("dims");
        if c.dim() == dim && c.is_pointed() {
            return c;
        }
    }
}

/// A random semicomplex in dimension `2..=max_dim`, built by subdividing a
/// few faces of a random cone independently. Returns the base complex, the
/// subdivisions and the glued result.
pub fn random_semicomplex(
    rng: &mut impl Rng,
    max_dim: usize,
) -> (PolyComplex, BTreeMap<Cone, PolyComplex>, SemiComplex) {
    let dim = rng.gen_range(2..=max_dim.max(2));
    let sigma = random_pointed_cone(rng, dim);
    let base = PolyComplex::from_cone(&sigma);
    let candidates: Vec<Cone> = base.cones().iter().filter(|c| c.dim() >= 2).cloned().collect();
    let picks = rng.gen_range(1..=candidates.len().min(3));
    let mut per_cone = BTreeMap::new();
    for c in candidates.choose_multiple(rng, picks) {
        let weights: Vec<i64> = c.rays().iter().map(|_| rng.gen_range(1..=3)).collect();
        let mut p = vec![rat(0); dim];
        for (r, w) in c.rays().iter().zip(&weights) {
            for (x, y) in p.iter_mut().zip(r) {
                *x += Rat::from_integer(y.clone()) * rat(*w);
            }
        }
        let sub = if rng.gen_bool(0.5) {
            let cells: Vec<Cone> = c
                .facet_cones()
                .iter()
                .map(|f| {
                    let mut g = f.generators();
                    g.push(p.clone());
                    Cone::hull(dim, &g).expect("dims")
                })
                .collect();
            PolyComplex::closure_unchecked(dim, &cells)
        } else {
            // a hyperplane through the interior point
            let planes: Vec<Vec<Rat>> = (0..4)
                .map(|_| random_vector(rng, dim, -2, 2))
                .filter(|h| crate::exactlin::dot(h, &p) == rat(0))
                .collect();
            let span_basis: Vec<Vec<Rat>> = c.rays().iter().map(|r| crate::exactlin::int_to_rat(r)).collect();
            let plane = planes.into_iter().next().unwrap_or_else(|| separating_plane(&span_basis, &p));
            arrangement(c, &[plane])
        };
        per_cone.insert(c.clone(), sub);
    }
    let sc = semicomplex_from_subdivisions(&base, &per_cone).expect("subdivisions glue to a semicomplex");
    (base, per_cone, sc)
}

// A functional vanishing at `p` and separating the first two rays.
fn separating_plane(rays: &[Vec<Rat>], p: &[Rat]) -> Vec<Rat> {
    let dim = p.len();
    let a = &rays[0];
    let b = &rays[1];
    let pa: Vec<Rat> = a.to_vec();
    let pb: Vec<Rat> = b.to_vec();
    let sp_b = crate::exactlin::dot(&pb, p);
    let sp_a = crate::exactlin::dot(&pa, p);
    (0..dim).map(|i| &pa[i] * &sp_b - &pb[i] * &sp_a).collect()
}

/// A random path of `len` steps from `start`, each step to a uniformly
/// chosen comparable stratum.
pub fn random_path(rng: &mut impl Rng, s: &StratSystem, start: &Stratum, len: usize) -> Vec<Stratum> {
    let all: Vec<&Stratum> = s.nonempty().iter().collect();
    let mut out = vec![start.clone()];
    for _ in 0..len {
        let cur = out.last().expect("nonempty").clone();
        let next: Vec<&&Stratum> = all.iter().filter(|t| t.is_comparable(&cur)).collect();
        out.push((**next.choose(rng).expect("itself is comparable")).clone());
    }
    out
}
