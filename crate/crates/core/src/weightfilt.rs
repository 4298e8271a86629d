//! Monodromy weight filtration of a nilpotent endomorphism.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{rat, Rat, RatMatrix, Subspace};
use crate::sample::rng;

/// An increasing filtration `W_k` of `Q^n`, centered at `center`.
/// Steps below the stored range are zero, steps above it are the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFiltration {
    center: i64,
    index: usize,
    steps: BTreeMap<i64, Subspace>,
}

impl WeightFiltration {
    pub fn center(&self) -> i64 {
        self.center
    }

    /// The nilpotency index `m`: the largest power with `N^m ≠ 0`.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ambient(&self) -> usize {
        self.steps.values().next().map_or(0, Subspace::ambient)
    }

    /// Stored steps `W_k` for `center - m ≤ k ≤ center + m`.
    pub fn steps(&self) -> &BTreeMap<i64, Subspace> {
        &self.steps
    }

    pub fn step(&self, k: i64) -> Subspace {
        let n = self.ambient();
        let lo = self.center - self.index as i64;
        let hi = self.center + self.index as i64;
        if k < lo {
            Subspace::zero(n)
        } else if k > hi {
            Subspace::full(n)
        } else {
            self.steps[&k].clone()
        }
    }

    pub fn graded_dim(&self, k: i64) -> usize {
        self.step(k).dim() - self.step(k - 1).dim()
    }
}

/// Largest `m` with `N^m ≠ 0`, or an error if no power vanishes.
pub fn nilpotency_index(n: &RatMatrix) -> Result<usize> {
    if n.rows() != n.cols() {
        return Err(Error::Invalid(format!("matrix is {}x{}, not square", n.rows(), n.cols())));
    }
    let mut p = RatMatrix::identity(n.rows());
    for m in 0..=n.rows() {
        let next = p.mul(n);
        if next.is_zero() {
            return Ok(m);
        }
        p = next;
    }
    Err(Error::NotNilpotent)
}

fn sum(a: &Subspace, b: &Subspace) -> Subspace {
    a.sum(b).expect("same ambient")
}

// Filtration centered at 0 on the subquotient top/bottom, written as
// subspaces between bottom and top. Indices outside the returned range are
// bottom (below) and top (above).
fn relative(n: &RatMatrix, top: &Subspace, bottom: &Subspace) -> (usize, BTreeMap<i64, Subspace>) {
    let mut m = 0usize;
    let mut power = RatMatrix::identity(n.rows());
    loop {
        let next = power.mul(n);
        if top.image(&next).is_subspace_of(bottom) {
            break;
        }
        power = next;
        m += 1;
    }
    let mut out = BTreeMap::new();
    if m == 0 {
        out.insert(0, top.clone());
        return (0, out);
    }
    let mi = m as i64;
    let low = sum(&top.image(&power), bottom);
    let high = bottom.preimage(&power).intersect(top).expect("same ambient");
    let (inner_m, inner) = relative(n, &high, &low);
    let inner_m = inner_m as i64;
    for k in -mi..=mi {
        let w = if k == mi {
            top.clone()
        } else if k == -mi || k < -inner_m {
            low.clone()
        } else if k > inner_m {
            high.clone()
        } else {
            inner[&k].clone()
        };
        out.insert(k, w);
    }
    (m, out)
}

/// The weight filtration of a nilpotent `n` centered at `l`, built by the
/// inductive kernel/image construction and re-checked against its axioms.
pub fn weight_filtration(n: &RatMatrix, l: i64) -> Result<WeightFiltration> {
    let m = nilpotency_index(n)?;
    let dim = n.rows();
    let (rm, steps) = relative(n, &Subspace::full(dim), &Subspace::zero(dim));
    debug_assert_eq!(rm, m);
    let steps = steps.into_iter().map(|(k, w)| (k + l, w)).collect();
    let w = WeightFiltration { center: l, index: m, steps };
    if let Some(msg) = axiom_violation(n, &w) {
        return Err(Error::CheckFailed(format!("weight filtration axioms: {msg}")));
    }
    Ok(w)
}

/// `None` if `w` is increasing, exhaustive, satisfies `N W_k ⊆ W_{k-2}` and
/// `N^k : Gr_{l+k} → Gr_{l-k}` is an isomorphism for every `k ≥ 0`.
/// Otherwise a description of the first failure.
pub fn axiom_violation(n: &RatMatrix, w: &WeightFiltration) -> Option<String> {
    let l = w.center;
    let lo = l - w.index as i64 - 2;
    let hi = l + w.index as i64 + 2;
    if !w.step(lo).is_zero() || !w.step(hi).is_full() {
        return Some("filtration is not exhaustive".into());
    }
    for k in lo..=hi {
        if !w.step(k - 1).is_subspace_of(&w.step(k)) {
            return Some(format!("W_{} is not contained in W_{k}", k - 1));
        }
        if !w.step(k).image(n).is_subspace_of(&w.step(k - 2)) {
            return Some(format!("N W_{k} is not contained in W_{}", k - 2));
        }
    }
    let mut power = RatMatrix::identity(n.rows());
    for k in 0..=(hi - l) {
        let up = l + k;
        let down = l - k;
        if w.graded_dim(up) != w.graded_dim(down) {
            return Some(format!("Gr_{up} and Gr_{down} have different dimensions"));
        }
        let hit = sum(&w.step(up).image(&power), &w.step(down - 1));
        if hit != w.step(down) {
            return Some(format!("N^{k} does not map Gr_{up} onto Gr_{down}"));
        }
        power = power.mul(n);
    }
    None
}

/// Outcome of comparing weight filtrations across interior points of a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeConsistency {
    /// Coefficient vectors of the sampled interior points.
    pub samples: Vec<Vec<Rat>>,
    pub filtrations: Vec<WeightFiltration>,
    /// The first sample whose filtration differs from the first one.
    pub disagreement: Option<usize>,
}

impl ConeConsistency {
    pub fn consistent(&self) -> bool {
        self.disagreement.is_none()
    }
}

/// Weight filtrations of `Σ a_i N_i` for positive coefficient vectors: all
/// ones, `1..n`, and two samples drawn from `seed`.
pub fn cone_weight_consistency(matrices: &[RatMatrix], l: i64, seed: u64) -> Result<ConeConsistency> {
    let Some(first) = matrices.first() else {
        return Err(Error::Invalid("no matrices".into()));
    };
    for m in matrices {
        if m.rows() != first.rows() || m.cols() != first.cols() {
            return Err(Error::AmbientMismatch { expected: first.rows(), found: m.rows() });
        }
        nilpotency_index(m)?;
    }
    for (i, a) in matrices.iter().enumerate() {
        for (j, b) in matrices.iter().enumerate().skip(i + 1) {
            if a.mul(b) != b.mul(a) {
                return Err(Error::NonCommuting(i, j));
            }
        }
    }
    let k = matrices.len();
    let mut r = rng(seed);
    let mut samples = vec![vec![rat(1); k], (1..=k as i64).map(rat).collect()];
    for _ in 0..2 {
        samples.push((0..k).map(|_| rat(r.gen_range(1..=9))).collect());
    }
    let filtrations = samples
        .iter()
        .map(|a| {
            let n = matrices
                .iter()
                .zip(a)
                .fold(RatMatrix::zeros(first.rows(), first.cols()), |acc, (m, c)| acc.add(&m.scaled(c)));
            weight_filtration(&n, l)
        })
        .collect::<Result<Vec<_>>>()?;
    let disagreement = (1..filtrations.len()).find(|&i| !same_filtration(&filtrations[0], &filtrations[i]));
    Ok(ConeConsistency { samples, filtrations, disagreement })
}

fn same_filtration(a: &WeightFiltration, b: &WeightFiltration) -> bool {
    let lo = a.center.min(b.center) - a.index.max(b.index) as i64 - 1;
    let hi = a.center.max(b.center) + a.index.max(b.index) as i64 + 1;
    (lo..=hi).all(|k| a.step(k) == b.step(k))
}
