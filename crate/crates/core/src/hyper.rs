//! Indexed paths through the strata, their scissors and hyperintersections.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::cmc::CmcTable;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exactlin::{Rat, RatMatrix};
use crate::strata::{StratSystem, Stratum};

/// Default bound on the number of states explored per enumeration.
pub const DEFAULT_STATE_CAP: usize = 100_000;

/// A sequence of nonempty strata, consecutive entries comparable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexedPath(Vec<Stratum>);

impl IndexedPath {
    pub fn new(s: &StratSystem, seq: Vec<Stratum>) -> Result<IndexedPath> {
        if seq.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        for t in &seq {
            s.check(t)?;
        }
        for (l, w) in seq.windows(2).enumerate() {
            if !w[0].is_comparable(&w[1]) {
                return Err(Error::InvalidPath(format!(
                    "step {l}: {} and {} are not comparable",
                    w[0], w[1]
                )));
            }
        }
        Ok(IndexedPath(seq))
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.0
    }

    pub fn start(&self) -> &Stratum {
        &self.0[0]
    }

    pub fn end(&self) -> &Stratum {
        self.0.last().expect("nonempty path")
    }

    /// Index of the first triple that is strictly monotone, if any.
    pub fn first_non_convex(&self) -> Option<usize> {
        (1..self.0.len().saturating_sub(1)).find(|&l| !convex_at(&self.0[l - 1], &self.0[l], &self.0[l + 1]))
    }

    pub fn is_convex(&self) -> bool {
        self.first_non_convex().is_none()
    }
}

fn convex_at(a: &Stratum, m: &Stratum, b: &Stratum) -> bool {
    (a.is_subset_of(m) && b.is_subset_of(m)) || (m.is_subset_of(a) && m.is_subset_of(b))
}

/// A triple `left ⊆ apex ⊇ right`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Scissors {
    pub left: Stratum,
    pub apex: Stratum,
    pub right: Stratum,
}

impl fmt::Display for Scissors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} < {} > {}", self.left, self.apex, self.right)
    }
}

/// Doubles both entries around every strictly monotone triple, which makes
/// every triple convex.
pub fn normalize_to_convex(p: &IndexedPath) -> IndexedPath {
    let seq = &p.0;
    let mut dup = vec![false; seq.len()];
    for l in 1..seq.len().saturating_sub(1) {
        if !convex_at(&seq[l - 1], &seq[l], &seq[l + 1]) {
            dup[l - 1] = true;
            dup[l] = true;
        }
    }
    let mut out = Vec::with_capacity(2 * seq.len());
    for (t, d) in seq.iter().zip(dup) {
        out.push(t.clone());
        if d {
            out.push(t.clone());
        }
    }
    IndexedPath(out)
}

/// The scissors passed by a convex path, in order. Repeated entries are
/// merged and degenerate scissors are added at the ends and at monotone
/// stretches so that valleys and apexes alternate.
pub fn scissors_sequence(p: &IndexedPath) -> Result<Vec<Scissors>> {
    if let Some(l) = p.first_non_convex() {
        return Err(Error::NotConvex(l));
    }
    Ok(scissors_unchecked(&p.0))
}

fn scissors_unchecked(seq: &[Stratum]) -> Vec<Scissors> {
    let mut runs: Vec<&Stratum> = Vec::new();
    for t in seq {
        if runs.last() != Some(&t) {
            runs.push(t);
        }
    }
    if runs.len() < 2 {
        return Vec::new();
    }
    let mut z: Vec<&Stratum> = Vec::with_capacity(2 * runs.len());
    if runs[1].is_subset_of(runs[0]) {
        z.push(runs[0]);
    }
    z.push(runs[0]);
    for l in 1..runs.len() - 1 {
        z.push(runs[l]);
        if !convex_at(runs[l - 1], runs[l], runs[l + 1]) {
            z.push(runs[l]);
        }
    }
    let n = runs.len();
    z.push(runs[n - 1]);
    if runs[n - 2].is_subset_of(runs[n - 1]) {
        z.push(runs[n - 1]);
    }
    (0..(z.len() - 1) / 2)
        .map(|t| Scissors {
            left: z[2 * t].clone(),
            apex: z[2 * t + 1].clone(),
            right: z[2 * t + 2].clone(),
        })
        .collect()
}

/// `σ_I ∩_γ σ_J`, in the coordinates of both endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperIntersection {
    pub from: Stratum,
    pub to: Stratum,
    pub scissors: BTreeSet<Scissors>,
    pub value_in_from: Cone,
    pub value_in_to: Cone,
    /// Linear map from the coordinates of `to` into those of `from`, carrying
    /// `value_in_to` onto `value_in_from`.
    pub chart: RatMatrix,
}

/// One reachable state of the enumeration: a hyperintersection of `start`
/// with `end` in both coordinate systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperRecord {
    pub start: Stratum,
    pub end: Stratum,
    pub value_in_start: Cone,
    pub value_in_end: Cone,
    pub chart: RatMatrix,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub values: BTreeSet<Cone>,
    pub records: Vec<HyperRecord>,
}

struct Adjacent {
    matrix: RatMatrix,
    inverse: RatMatrix,
    image: Cone,
}

type StepKey = (Stratum, Cone, Stratum, Stratum);

/// Computes hyperintersections for one system, caching adjacent maps and
/// scissors steps between calls.
pub struct HyperEngine {
    table: CmcTable,
    nonempty: Vec<Stratum>,
    adjacent: Mutex<HashMap<(Stratum, Stratum), Arc<Adjacent>>>,
    steps: Mutex<HashMap<StepKey, Cone>>,
}

impl HyperEngine {
    pub fn new(s: &StratSystem) -> Result<HyperEngine> {
        Ok(HyperEngine::from_table(CmcTable::new(s)?, s))
    }

    pub fn from_table(table: CmcTable, s: &StratSystem) -> HyperEngine {
        HyperEngine {
            table,
            nonempty: s.nonempty().iter().cloned().collect(),
            adjacent: Mutex::new(HashMap::new()),
            steps: Mutex::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &CmcTable {
        &self.table
    }

    fn adjacent(&self, sub: &Stratum, sup: &Stratum) -> Result<Arc<Adjacent>> {
        let key = (sub.clone(), sup.clone());
        if let Some(a) = self.adjacent.lock().expect("lock").get(&key) {
            return Ok(a.clone());
        }
        let (matrix, inverse) = self.table.adjacent_with_inverse(sub, sup)?;
        let image = self.table.get(sub)?.cone().image(&matrix)?;
        let a = Arc::new(Adjacent { matrix, inverse, image });
        self.adjacent.lock().expect("lock").insert(key, a.clone());
        Ok(a)
    }

    /// One scissors `(a, k, b)` applied to `c ⊆ σ_a`: returns the new cone in
    /// the coordinates of `b` and the chart from `b` to `a` coordinates.
    fn step(&self, a: &Stratum, c: &Cone, k: &Stratum, b: &Stratum) -> Result<(Cone, RatMatrix)> {
        let xa = self.adjacent(a, k)?;
        let xb = self.adjacent(b, k)?;
        let chart = xa.inverse.mul(&xb.matrix);
        let key = (a.clone(), c.clone(), k.clone(), b.clone());
        if let Some(done) = self.steps.lock().expect("lock").get(&key) {
            return Ok((done.clone(), chart));
        }
        let out = if c.is_zero() {
            Cone::zero(xb.matrix.cols())
        } else {
            c.image(&xa.matrix)?.intersect(&xb.image)?.image(&xb.inverse)?
        };
        self.steps.lock().expect("lock").insert(key, out.clone());
        Ok((out, chart))
    }

    pub fn hyperintersect(&self, p: &IndexedPath) -> Result<HyperIntersection> {
        let convex = if p.is_convex() { p.clone() } else { normalize_to_convex(p) };
        let seq = scissors_unchecked(&convex.0);
        let start = p.start().clone();
        let mut c = self.table.get(&start)?.cone().clone();
        let mut chart = RatMatrix::identity(c.ambient());
        for s in &seq {
            let (next, m) = self.step(&s.left, &c, &s.apex, &s.right)?;
            chart = chart.mul(&m);
            c = next;
        }
        Ok(HyperIntersection {
            from: start,
            to: p.end().clone(),
            scissors: seq.into_iter().collect(),
            value_in_from: c.image(&chart)?,
            value_in_to: c,
            chart,
        })
    }

    /// All hyperintersections `σ_I ∩_γ σ_J` over every `J` and every path,
    /// as the closure of the reachable states `(J, cone in J, chart)`.
    pub fn enumerate(&self, start: &Stratum, cap: usize) -> Result<Enumeration> {
        let sigma = self.table.get(start)?.cone().clone();
        let id = RatMatrix::identity(sigma.ambient());
        let mut seen: HashSet<(Stratum, Cone, Vec<Vec<Rat>>)> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut records = Vec::new();
        seen.insert(state_key(start, &sigma, &id));
        queue.push_back((start.clone(), sigma, id));
        while let Some((b, c, chart)) = queue.pop_front() {
            records.push(HyperRecord {
                start: start.clone(),
                end: b.clone(),
                value_in_start: c.image(&chart)?,
                value_in_end: c.clone(),
                chart: chart.clone(),
            });
            for k in self.nonempty.iter().filter(|k| b.is_subset_of(k)) {
                for b2 in self.nonempty.iter().filter(|t| t.is_subset_of(k)) {
                    let (c2, m) = self.step(&b, &c, k, b2)?;
                    let chart2 = chart.mul(&m);
                    if seen.insert(state_key(b2, &c2, &chart2)) {
                        if seen.len() > cap {
                            return Err(Error::ResourceCap {
                                what: "hyperintersection states",
                                cap,
                                trace: format!("enumerating from {start}, reached {b2}"),
                            });
                        }
                        queue.push_back((b2.clone(), c2, chart2));
                    }
                }
            }
        }
        let values = records.iter().map(|r| r.value_in_start.clone()).collect();
        Ok(Enumeration { values, records })
    }
}

// The chart only matters on the span of the cone, so it is keyed by the
// images of the canonical span basis.
fn state_key(b: &Stratum, c: &Cone, chart: &RatMatrix) -> (Stratum, Cone, Vec<Vec<Rat>>) {
    let images = c.span().basis().iter().map(|v| chart.apply(v)).collect();
    (b.clone(), c.clone(), images)
}

pub fn hyperintersect(s: &StratSystem, p: &IndexedPath) -> Result<HyperIntersection> {
    HyperEngine::new(s)?.hyperintersect(p)
}

pub fn enumerate_hyperintersections(s: &StratSystem, start: &Stratum) -> Result<BTreeSet<Cone>> {
    Ok(HyperEngine::new(s)?.enumerate(start, DEFAULT_STATE_CAP)?.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat_vec;
    use crate::strata::Monodromy;
    use std::collections::BTreeMap;

    fn st(v: &[usize]) -> Stratum {
        Stratum::new(v.to_vec())
    }

    fn boolean(n: usize) -> StratSystem {
        StratSystem::new(
            (1..=n).map(|i| i.to_string()).collect(),
            Stratum((0..n).collect()).subsets(),
            Monodromy::Kernels(BTreeMap::new()),
        )
        .unwrap()
    }

    fn path(s: &StratSystem, v: &[&[usize]]) -> IndexedPath {
        IndexedPath::new(s, v.iter().map(|x| st(x)).collect()).unwrap()
    }

    #[test]
    fn normalizing_monotone_chain() {
        let s = boolean(3);
        let p = path(&s, &[&[0], &[0, 1], &[0, 1, 2]]);
        let q = normalize_to_convex(&p);
        assert_eq!(q.strata(), path(&s, &[&[0], &[0], &[0, 1], &[0, 1], &[0, 1, 2]]).strata());
        assert!(q.is_convex());
        let convex = path(&s, &[&[0], &[0, 1], &[1]]);
        assert_eq!(normalize_to_convex(&convex), convex);
        let single = path(&s, &[&[0]]);
        assert_eq!(normalize_to_convex(&single), single);
        assert!(matches!(scissors_sequence(&p), Err(Error::NotConvex(1))));
    }

    #[test]
    fn scissors_of_zigzags() {
        let s = boolean(3);
        let one = scissors_sequence(&path(&s, &[&[0], &[0, 1], &[1]])).unwrap();
        assert_eq!(one, vec![Scissors { left: st(&[0]), apex: st(&[0, 1]), right: st(&[1]) }]);
        let two = scissors_sequence(&path(&s, &[&[0], &[0, 1], &[1], &[1, 2], &[2]])).unwrap();
        assert_eq!(two.len(), 2);
        let padded = normalize_to_convex(&path(&s, &[&[0], &[0, 1], &[0, 1, 2]]));
        let seq = scissors_sequence(&padded).unwrap();
        assert!(seq.iter().all(|x| x.left == x.apex || x.right == x.apex));
        assert!(IndexedPath::new(&s, vec![st(&[0]), st(&[1])]).is_err());
    }

    #[test]
    fn disjoint_coordinate_rays_meet_at_zero() {
        let s = boolean(2);
        let h = hyperintersect(&s, &path(&s, &[&[0], &[0, 1], &[1]])).unwrap();
        assert!(h.value_in_from.is_zero());
        assert!(h.value_in_to.is_zero());
    }

    #[test]
    fn equal_matrices_share_ray() {
        let j = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let s = StratSystem::new(
            vec!["1".into(), "2".into()],
            vec![st(&[0, 1])],
            Monodromy::Matrices(vec![j.clone(), j]),
        )
        .unwrap();
        let h = hyperintersect(&s, &path(&s, &[&[0], &[0, 1], &[1]])).unwrap();
        assert_eq!(h.value_in_from, Cone::orthant(1));
        assert_eq!(h.value_in_to, Cone::orthant(1));
    }

    #[test]
    fn enumeration_of_dependent_triple() {
        let n1 = RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let n2 = RatMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let n3 = n1.add(&n2);
        let s = StratSystem::new(
            vec!["1".into(), "2".into(), "3".into()],
            st(&[0, 1, 2]).subsets(),
            Monodromy::Matrices(vec![n1, n2, n3]),
        )
        .unwrap();
        let vals = enumerate_hyperintersections(&s, &st(&[0, 1, 2])).unwrap();
        let inner = Cone::hull(2, &[rat_vec(&[1, 1])]).unwrap();
        assert!(vals.contains(&inner));
        assert!(vals.contains(&Cone::orthant(2)));
        let h = hyperintersect(&s, &path(&s, &[&[0, 1, 2], &[2], &[0, 1, 2]])).unwrap();
        assert_eq!(h.value_in_from, inner);
    }

    #[test]
    fn simplicial_values_are_faces() {
        let s = boolean(3);
        let top = st(&[0, 1, 2]);
        let vals = enumerate_hyperintersections(&s, &top).unwrap();
        let faces = Cone::orthant(3).faces();
        assert!(vals.iter().all(|v| faces.contains(v)));
        assert_eq!(vals.len(), 8);
        let single = boolean(1);
        let v1 = enumerate_hyperintersections(&single, &st(&[0])).unwrap();
        assert!(v1.len() <= 2);
    }
}
