//! Combinatorial monodromy complexes: one polyhedral complex per stratum,
//! compatible with every adjacent map.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::cmc::CmcTable;
use crate::complexes::PolyComplex;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exactlin::RatMatrix;
use crate::strata::{inclusion, StratSystem, Stratum};

pub use crate::construct::{construct_cmcx, construct_cmcx_with, Caps, Construction};

/// A complex on every monodromy cone, in the quotient coordinates fixed by
/// the stored projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cmcx {
    divisors: Vec<String>,
    complexes: BTreeMap<Stratum, PolyComplex>,
    projections: BTreeMap<Stratum, RatMatrix>,
}

/// A right inverse `P^T (P P^T)^{-1}` of a surjective matrix.
pub(crate) fn right_inverse(p: &RatMatrix) -> Option<RatMatrix> {
    p.transpose().left_inverse().map(|m| m.transpose())
}

impl Cmcx {
    pub fn new(
        divisors: Vec<String>,
        complexes: BTreeMap<Stratum, PolyComplex>,
        projections: BTreeMap<Stratum, RatMatrix>,
    ) -> Result<Cmcx> {
        if complexes.keys().ne(projections.keys()) {
            return Err(Error::Invalid("complexes and projections cover different strata".into()));
        }
        for (s, p) in &projections {
            if p.cols() != s.len() {
                return Err(Error::AmbientMismatch { expected: s.len(), found: p.cols() });
            }
            if p.rank() != p.rows() {
                return Err(Error::Invalid(format!("projection of {s} is not surjective")));
            }
            if complexes[s].ambient() != p.rows() {
                return Err(Error::AmbientMismatch { expected: p.rows(), found: complexes[s].ambient() });
            }
        }
        Ok(Cmcx { divisors, complexes, projections })
    }

    pub fn divisors(&self) -> &[String] {
        &self.divisors
    }

    pub fn strata(&self) -> impl Iterator<Item = &Stratum> {
        self.complexes.keys()
    }

    pub fn complexes(&self) -> &BTreeMap<Stratum, PolyComplex> {
        &self.complexes
    }

    pub fn complex(&self, s: &Stratum) -> Result<&PolyComplex> {
        self.complexes.get(s).ok_or_else(|| Error::UnknownStratum(s.clone()))
    }

    pub fn projection(&self, s: &Stratum) -> Result<&RatMatrix> {
        self.projections.get(s).ok_or_else(|| Error::UnknownStratum(s.clone()))
    }

    /// The monodromy cone `σ_I` in the stored coordinates.
    pub fn sigma(&self, s: &Stratum) -> Result<Cone> {
        Cone::orthant(s.len()).image(self.projection(s)?)
    }

    /// The adjacent map `ξ_{sup,sub}` in the stored coordinates.
    pub fn adjacent(&self, sub: &Stratum, sup: &Stratum) -> Result<RatMatrix> {
        let ps = self.projection(sub)?;
        let section = right_inverse(ps)
            .ok_or_else(|| Error::Invalid(format!("projection of {sub} is not surjective")))?;
        Ok(self.projection(sup)?.mul(&inclusion(sub, sup)?).mul(&section))
    }

    /// Total number of cones over all strata.
    pub fn total_cells(&self) -> usize {
        self.complexes.values().map(PolyComplex::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum CmcxViolation {
    /// The complex of `stratum` is not a subdivision of its monodromy cone.
    NotSupported { stratum: Stratum },
    /// `cone` of `sub` maps to `image`, which is not a cone of `sup`.
    NotEmbedded { sub: Stratum, sup: Stratum, cone: String, image: String },
}

impl fmt::Display for CmcxViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmcxViolation::NotSupported { stratum } => {
                write!(f, "complex of {stratum} does not subdivide its monodromy cone")
            }
            CmcxViolation::NotEmbedded { sub, sup, cone, image } => {
                write!(f, "{cone} of {sub} maps to {image}, which is not a cone of {sup}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmcxReport {
    pub violation: Option<CmcxViolation>,
}

impl CmcxReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that each complex subdivides its cone and that every adjacent map
/// carries the complex of the smaller stratum onto a subcomplex.
pub fn check_cmcx(c: &Cmcx) -> Result<CmcxReport> {
    for (s, cx) in &c.complexes {
        let sigma = c.sigma(s)?;
        let max = cx.maximal_cones();
        let inside = max.iter().all(|m| sigma.contains_cone_unchecked(m));
        if !inside || !crate::complexes::covers(&sigma, &max) {
            return Ok(CmcxReport { violation: Some(CmcxViolation::NotSupported { stratum: s.clone() }) });
        }
    }
    for (sup, big) in &c.complexes {
        for (sub, small) in &c.complexes {
            if sub == sup || !sub.is_subset_of(sup) {
                continue;
            }
            let xi = c.adjacent(sub, sup)?;
            for cone in small.cones() {
                let image = cone.image(&xi)?;
                if !big.contains(&image) {
                    return Ok(CmcxReport {
                        violation: Some(CmcxViolation::NotEmbedded {
                            sub: sub.clone(),
                            sup: sup.clone(),
                            cone: cone.to_string(),
                            image: image.to_string(),
                        }),
                    });
                }
            }
        }
    }
    Ok(CmcxReport { violation: None })
}

/// The first stratum whose cone is not simplicial, or where the image of
/// some coordinate ray is not a face.
pub fn simplicial_witness(s: &StratSystem) -> Result<Option<Stratum>> {
    let table = CmcTable::new(s)?;
    for (stratum, cmc) in table.iter() {
        let sigma = cmc.cone();
        if !sigma.is_simplicial() {
            return Ok(Some(stratum.clone()));
        }
        for col in cmc.proj().columns() {
            let ray = Cone::hull_unchecked(sigma.ambient(), vec![col]);
            if !ray.is_face_of(sigma)? {
                return Ok(Some(stratum.clone()));
            }
        }
    }
    Ok(None)
}

pub fn is_simplicial(s: &StratSystem) -> Result<bool> {
    Ok(simplicial_witness(s)?.is_none())
}

/// The complex of all faces of each monodromy cone.
pub fn canonical_t0(s: &StratSystem) -> Result<Cmcx> {
    if let Some(w) = simplicial_witness(s)? {
        return Err(Error::NotSimplicial(w));
    }
    let table = CmcTable::new(s)?;
    let mut complexes = BTreeMap::new();
    let mut projections = BTreeMap::new();
    for (stratum, cmc) in table.iter() {
        complexes.insert(stratum.clone(), PolyComplex::from_cone(cmc.cone()));
        projections.insert(stratum.clone(), cmc.proj().clone());
    }
    Cmcx::new(s.divisors().to_vec(), complexes, projections)
}

/// For a stratum `J`: the stratum `base` of the complex it lies over, the
/// cell `tau` of that complex whose relative interior receives it, and the
/// image `sigma` of its own monodromy cone, both in `base` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauData {
    pub base: Stratum,
    pub tau: Cone,
    pub sigma: Cone,
}

/// `𝛕` assignments for a family of strata, with the adjacent maps between
/// their base strata.
#[derive(Clone, Debug)]
pub struct TauTable {
    strata: BTreeSet<Stratum>,
    data: BTreeMap<Stratum, TauData>,
    base: CmcTable,
}

impl TauTable {
    pub fn new(strata: BTreeSet<Stratum>, data: BTreeMap<Stratum, TauData>, base: CmcTable) -> TauTable {
        TauTable { strata, data, base }
    }

    /// The untouched situation: every stratum over itself with `𝛕 = 𝛔`.
    /// Only meaningful when the system is simplicial.
    pub fn raw(s: &StratSystem) -> Result<TauTable> {
        if let Some(w) = simplicial_witness(s)? {
            return Err(Error::NotSimplicial(w));
        }
        let base = CmcTable::new(s)?;
        let data = base
            .iter()
            .map(|(j, cmc)| {
                let d = TauData { base: j.clone(), tau: cmc.cone().clone(), sigma: cmc.cone().clone() };
                (j.clone(), d)
            })
            .collect();
        Ok(TauTable { strata: s.nonempty().clone(), data, base })
    }

    pub fn strata(&self) -> &BTreeSet<Stratum> {
        &self.strata
    }

    pub fn get(&self, j: &Stratum) -> Result<&TauData> {
        self.data.get(j).ok_or_else(|| Error::MissingTau(j.clone()))
    }

    /// `(tau, sigma)` of `j` moved into the coordinates of `target`.
    fn in_coordinates(&self, j: &Stratum, target: &Stratum) -> Result<(Cone, Cone)> {
        let d = self.get(j)?;
        let xi = self.base.adjacent(&d.base, target)?;
        Ok((d.tau.image(xi.matrix())?, d.sigma.image(xi.matrix())?))
    }
}

/// Whether `J ~ K`. Both the span criterion and the equality of the
/// assigned cells are evaluated; they must agree.
pub fn commensurable(t: &TauTable, j: &Stratum, k: &Stratum) -> Result<bool> {
    let jk = j.union(k);
    for x in [j, k] {
        if !t.strata.contains(x) {
            return Err(Error::UnknownStratum(x.clone()));
        }
    }
    if !t.strata.contains(&jk) {
        return Ok(false);
    }
    let target = t.get(&jk)?.base.clone();
    let (tau_j, sigma_j) = t.in_coordinates(j, &target)?;
    let (tau_k, sigma_k) = t.in_coordinates(k, &target)?;
    let (tau_jk, _) = t.in_coordinates(&jk, &target)?;
    let by_span = sigma_j.span().is_subspace_of(tau_k.span()) && sigma_k.span().is_subspace_of(tau_j.span());
    let by_tau = tau_j == tau_k && tau_k == tau_jk;
    if by_span != by_tau {
        return Err(Error::CriteriaDisagree(j.clone(), k.clone()));
    }
    Ok(by_tau)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NccResult {
    pub seed: Stratum,
    pub members: BTreeSet<Stratum>,
    pub iterations: usize,
}

/// The nilpotent cone closure of `j`: start from `{j}` and repeatedly add
/// every stratum commensurable with a member until nothing changes.
pub fn ncc(t: &TauTable, j: &Stratum) -> Result<NccResult> {
    if !t.strata.contains(j) {
        return Err(Error::UnknownStratum(j.clone()));
    }
    let mut current = BTreeSet::from([j.clone()]);
    let mut iterations = 0;
    loop {
        let mut next = BTreeSet::new();
        for k in &t.strata {
            for m in &current {
                if commensurable(t, k, m)? {
                    next.insert(k.clone());
                    break;
                }
            }
        }
        iterations += 1;
        if next == current {
            break;
        }
        current = next;
    }
    Ok(NccResult { seed: j.clone(), members: current, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::Monodromy;

    fn st(v: &[usize]) -> Stratum {
        Stratum::new(v.to_vec())
    }

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn boolean(n: usize) -> StratSystem {
        StratSystem::new(names(n), Stratum((0..n).collect()).subsets(), Monodromy::Kernels(BTreeMap::new()))
            .unwrap()
    }

    fn dependent_triple() -> StratSystem {
        let n1 = RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let n2 = RatMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let n3 = n1.add(&n2);
        StratSystem::new(names(3), st(&[0, 1, 2]).subsets(), Monodromy::Matrices(vec![n1, n2, n3])).unwrap()
    }

    fn equal_pair() -> StratSystem {
        let j = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        StratSystem::new(names(2), vec![st(&[0, 1])], Monodromy::Matrices(vec![j.clone(), j])).unwrap()
    }

    #[test]
    fn t0_on_boolean_lattice() {
        let s = boolean(3);
        assert!(is_simplicial(&s).unwrap());
        let t0 = canonical_t0(&s).unwrap();
        assert!(check_cmcx(&t0).unwrap().passed());
        assert_eq!(t0.complex(&st(&[0, 1, 2])).unwrap().len(), 8);
        let curve = boolean(1);
        assert!(check_cmcx(&canonical_t0(&curve).unwrap()).unwrap().passed());
    }

    #[test]
    fn dependent_triple_is_not_simplicial() {
        let s = dependent_triple();
        assert_eq!(simplicial_witness(&s).unwrap(), Some(st(&[0, 1, 2])));
        assert!(matches!(canonical_t0(&s), Err(Error::NotSimplicial(_))));
        assert!(is_simplicial(&equal_pair()).unwrap());
    }

    #[test]
    fn subdividing_one_stratum_breaks_embedding() {
        let s = boolean(3);
        let mut t0 = canonical_t0(&s).unwrap();
        let face = st(&[0, 1]);
        let split = PolyComplex::closure_unchecked(
            2,
            &[
                Cone::hull_i64(2, &[&[1, 0], &[1, 1]]).unwrap(),
                Cone::hull_i64(2, &[&[1, 1], &[0, 1]]).unwrap(),
            ],
        );
        t0.complexes.insert(face.clone(), split);
        let v = check_cmcx(&t0).unwrap().violation;
        assert!(matches!(v, Some(CmcxViolation::NotEmbedded { ref sub, .. }) if *sub == face));
        let half = PolyComplex::closure_unchecked(2, &[Cone::hull_i64(2, &[&[1, 0], &[1, 1]]).unwrap()]);
        t0.complexes.insert(face.clone(), half);
        let v = check_cmcx(&t0).unwrap().violation;
        assert_eq!(v, Some(CmcxViolation::NotSupported { stratum: face }));
    }

    #[test]
    fn ncc_on_simplicial_boolean() {
        let s = boolean(3);
        let t = TauTable::raw(&s).unwrap();
        for j in s.nonempty() {
            let r = ncc(&t, j).unwrap();
            assert_eq!(r.members, BTreeSet::from([j.clone()]));
            assert!(r.iterations <= s.nonempty().len());
        }
        assert!(commensurable(&t, &st(&[0]), &st(&[0])).unwrap());
        assert!(!commensurable(&t, &st(&[0]), &st(&[1])).unwrap());
    }

    #[test]
    fn equal_pair_is_commensurable() {
        let s = equal_pair();
        let t = TauTable::raw(&s).unwrap();
        assert!(commensurable(&t, &st(&[0]), &st(&[1])).unwrap());
        let r = ncc(&t, &st(&[0])).unwrap();
        assert!(r.members.is_superset(&BTreeSet::from([st(&[0]), st(&[1]), st(&[0, 1])])));
    }
}
