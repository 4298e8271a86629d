//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use monofan::cmcx::Cmcx;
use monofan::exactlin::RatMatrix;
use monofan::strata::{StratSystem, Stratum};
use monofan::{Cone, Subspace};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every filtration of `Q^n` built from the sum/intersection lattice of the
/// kernels and images of the powers of `n` that satisfies the weight
/// filtration axioms at center `l`. Steps are listed for `l-m-1..=l+m`.
pub fn weight_oracle(n: &RatMatrix, l: i64) -> Vec<BTreeMap<i64, Subspace>> {
    let dim = n.rows();
    let mut m = 0u32;
    while !n.pow(m + 1).is_zero() {
        m += 1;
    }
    let mut lattice: BTreeSet<Subspace> = BTreeSet::new();
    for a in 0..=m + 1 {
        lattice.insert(n.pow(a).kernel());
        lattice.insert(n.pow(a).image());
    }
    loop {
        let items: Vec<Subspace> = lattice.iter().cloned().collect();
        let before = lattice.len();
        for a in &items {
            for b in &items {
                lattice.insert(a.sum(b).unwrap());
                lattice.insert(a.intersect(b).unwrap());
            }
        }
        if lattice.len() == before {
            break;
        }
    }
    let lattice: Vec<Subspace> = lattice.into_iter().collect();
    let m = m as i64;
    let mut fixed = BTreeMap::new();
    fixed.insert(l - m - 2, Subspace::zero(dim));
    fixed.insert(l - m - 1, Subspace::zero(dim));
    let mut out = Vec::new();
    search(n, l, m, &lattice, l - m, &mut fixed, &mut out);
    out
}

fn rank_of(rows: Vec<Vec<monofan::Rat>>, cols: usize) -> usize {
    RatMatrix::from_rows(cols, rows).rank()
}

// Whether N^k induces an isomorphism Gr_{l+k} -> Gr_{l-k}.
fn iso_holds(n: &RatMatrix, w: &BTreeMap<i64, Subspace>, l: i64, k: i64) -> bool {
    let dim = n.rows();
    let gr = |j: i64| w[&j].dim() - w[&(j - 1)].dim();
    if gr(l + k) != gr(l - k) {
        return false;
    }
    let p = n.pow(k as u32);
    let mut rows: Vec<Vec<monofan::Rat>> = w[&(l + k)].basis().iter().map(|b| p.apply(b)).collect();
    rows.extend(w[&(l - k - 1)].basis().iter().cloned());
    rank_of(rows, dim) - w[&(l - k - 1)].dim() == gr(l + k)
}

fn search(
    n: &RatMatrix,
    l: i64,
    m: i64,
    lattice: &[Subspace],
    k: i64,
    w: &mut BTreeMap<i64, Subspace>,
    out: &mut Vec<BTreeMap<i64, Subspace>>,
) {
    let dim = n.rows();
    let candidates: Vec<Subspace> =
        if k == l + m { vec![Subspace::full(dim)] } else { lattice.to_vec() };
    for c in candidates {
        if !w[&(k - 1)].is_subspace_of(&c) {
            continue;
        }
        let image = c.image(n);
        if !image.is_subspace_of(&w[&(k - 2)]) {
            continue;
        }
        w.insert(k, c);
        let ok = k < l || iso_holds(n, w, l, k - l);
        if ok {
            if k == l + m {
                let mut found: BTreeMap<i64, Subspace> = w.clone();
                found.remove(&(l - m - 2));
                out.push(found);
            } else {
                search(n, l, m, lattice, k + 1, w, out);
            }
        }
        w.remove(&k);
    }
}

/// Faces `F` of the orthant `C_I` with `𝔪_I(F)` inside no cell of the
/// complex on `I`: exactly the cells an unrefined fan must report.
pub fn unrefined_failures(c: &Cmcx) -> BTreeSet<(Stratum, String)> {
    let mut out = BTreeSet::new();
    for i in c.strata() {
        let m = c.projection(i).unwrap();
        for f in Cone::orthant(i.len()).faces() {
            let image = f.image(m).unwrap();
            let inside = c.complex(i).unwrap().cones().iter().any(|t| t.contains_cone(&image).unwrap());
            if !inside {
                out.insert((i.clone(), f.to_string()));
            }
        }
    }
    out
}

fn nonempty_strata(s: &StratSystem) -> Vec<Stratum> {
    s.nonempty().iter().filter(|t| !t.is_empty()).cloned().collect()
}

/// A convex path `b = z0 ⊆ z1 ⊇ z2 ⊆ ...` with `steps` scissors.
pub fn random_convex_path(rng: &mut impl Rng, s: &StratSystem, b: &Stratum, steps: usize) -> Vec<Stratum> {
    let all = nonempty_strata(s);
    let mut out = vec![b.clone()];
    for _ in 0..steps {
        let cur = out.last().unwrap().clone();
        let apex = all.iter().filter(|k| cur.is_subset_of(k)).collect::<Vec<_>>().choose(rng).cloned().unwrap().clone();
        let next = all.iter().filter(|t| t.is_subset_of(&apex)).collect::<Vec<_>>().choose(rng).cloned().unwrap().clone();
        out.push(apex);
        out.push(next);
    }
    out
}

/// A convex loop at `b` with `steps + 1` scissors, every apex containing `b`.
pub fn random_loop(rng: &mut impl Rng, s: &StratSystem, b: &Stratum, steps: usize) -> Vec<Stratum> {
    let all = nonempty_strata(s);
    let mut out = vec![b.clone()];
    for step in 0..=steps {
        let need = out.last().unwrap().union(b);
        let apex = all.iter().filter(|k| need.is_subset_of(k)).collect::<Vec<_>>().choose(rng).cloned().unwrap().clone();
        let next = if step == steps {
            b.clone()
        } else {
            all.iter().filter(|t| t.is_subset_of(&apex)).collect::<Vec<_>>().choose(rng).cloned().unwrap().clone()
        };
        out.push(apex);
        out.push(next);
    }
    out
}

/// Concatenation of paths sharing endpoints.
pub fn join(parts: &[&[Stratum]]) -> Vec<Stratum> {
    let mut out = parts[0].to_vec();
    for p in &parts[1..] {
        assert_eq!(out.last(), p.first());
        out.extend(p[1..].iter().cloned());
    }
    out
}

/// Whether the cells of a complex that lie in `target` and have its
/// dimension fill it: each of their facets is shared by exactly two of them,
/// or by one when it lies on the boundary of `target`. This is independent
/// of the library's covering test.
pub fn fills(target: &Cone, cells: &[Cone]) -> bool {
    let d = target.dim();
    let top: Vec<&Cone> = cells.iter().filter(|c| c.dim() == d && target.contains_cone(c).unwrap()).collect();
    if top.is_empty() {
        return false;
    }
    let boundary = target.facet_cones();
    let mut count: BTreeMap<Cone, usize> = BTreeMap::new();
    for c in top {
        for f in c.facet_cones() {
            *count.entry(f).or_default() += 1;
        }
    }
    count.iter().all(|(f, &n)| {
        let outer = boundary.iter().any(|b| b.contains_cone(f).unwrap());
        n == if outer { 1 } else { 2 }
    })
}
