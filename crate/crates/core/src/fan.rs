//! Kato fans of the boundary, their pullback refinement along the monodromy
//! maps, and the descendant maps of the resulting modification.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmc::CmcTable;
use crate::cmcx::{check_cmcx, Cmcx, TauData, TauTable};
use crate::complexes::PolyComplex;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exactlin::{int_to_rat, quotient_section, Rat, RatMatrix};
use crate::strata::{inclusion, Monodromy, StratSystem, Stratum};

/// The combinatorial monodromy map `𝔪_I : Q^{|I|} → Q^{|I|}/Ker_I`.
pub fn monodromy_map(s: &StratSystem, i: &Stratum) -> Result<RatMatrix> {
    s.check(i)?;
    s.projection(i)
}

/// The unrefined fan: the orthant `C_I` on every stratum, its rays labeled
/// by the divisors of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatoFan {
    divisors: Vec<String>,
    strata: BTreeSet<Stratum>,
}

impl KatoFan {
    pub fn new(s: &StratSystem) -> KatoFan {
        KatoFan { divisors: s.divisors().to_vec(), strata: s.nonempty().clone() }
    }

    pub fn strata(&self) -> &BTreeSet<Stratum> {
        &self.strata
    }

    pub fn cone(&self, i: &Stratum) -> Result<Cone> {
        self.known(i)?;
        Ok(Cone::orthant(i.len()))
    }

    pub fn ray_labels(&self, i: &Stratum) -> Result<Vec<String>> {
        self.known(i)?;
        Ok(i.indices().iter().map(|&k| self.divisors[k].clone()).collect())
    }

    /// `C_sub` as a face of `C_sup`.
    pub fn face(&self, sub: &Stratum, sup: &Stratum) -> Result<Cone> {
        self.known(sub)?;
        self.known(sup)?;
        Cone::orthant(sub.len()).image(&inclusion(sub, sup)?)
    }

    fn known(&self, i: &Stratum) -> Result<()> {
        if self.strata.contains(i) {
            Ok(())
        } else {
            Err(Error::UnknownStratum(i.clone()))
        }
    }
}

/// A ray of the refinement that is not a coordinate ray, named after the
/// smallest stratum whose orthant contains it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewRay {
    pub name: String,
    pub parent: Stratum,
    /// Primitive generator in the coordinates of `parent`.
    pub generator: Vec<BigInt>,
}

/// A cell reported by the refinement, in the coordinates of `stratum`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellWitness {
    pub stratum: Stratum,
    pub cone: String,
}

/// A subdivision `C'_I` of every orthant `C_I`, together with the monodromy
/// maps it was pulled back along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedFan {
    divisors: Vec<String>,
    complexes: BTreeMap<Stratum, PolyComplex>,
    projections: BTreeMap<Stratum, RatMatrix>,
    new_rays: Vec<NewRay>,
    ray_lookup: RayLookup,
}

impl RefinedFan {
    /// Assembles a fan from per-stratum complexes, checking that each one
    /// subdivides its orthant and that they agree on common faces.
    pub fn new(
        divisors: Vec<String>,
        complexes: BTreeMap<Stratum, PolyComplex>,
        projections: BTreeMap<Stratum, RatMatrix>,
    ) -> Result<RefinedFan> {
        if complexes.keys().ne(projections.keys()) {
            return Err(Error::Invalid("complexes and projections cover different strata".into()));
        }
        for (i, cx) in &complexes {
            if projections[i].cols() != i.len() {
                return Err(Error::AmbientMismatch { expected: i.len(), found: projections[i].cols() });
            }
            if cx.ambient() != i.len() {
                return Err(Error::AmbientMismatch { expected: i.len(), found: cx.ambient() });
            }
            let orthant = Cone::orthant(i.len());
            if !cx.cones().iter().all(|c| orthant.contains_cone_unchecked(c)) || !cx.fills(&orthant) {
                return Err(Error::CheckFailed(format!("complex of {i} does not subdivide its orthant")));
            }
        }
        check_overlaps(&complexes)?;
        let (new_rays, ray_lookup) = register_rays(&divisors, &complexes);
        Ok(RefinedFan { divisors, complexes, projections, new_rays, ray_lookup })
    }

    /// The Kato fan itself: all faces of every orthant.
    pub fn unrefined(s: &StratSystem) -> Result<RefinedFan> {
        let mut complexes = BTreeMap::new();
        let mut projections = BTreeMap::new();
        for i in s.nonempty() {
            complexes.insert(i.clone(), PolyComplex::from_cone(&Cone::orthant(i.len())));
            projections.insert(i.clone(), s.projection(i)?);
        }
        RefinedFan::new(s.divisors().to_vec(), complexes, projections)
    }

    pub fn divisors(&self) -> &[String] {
        &self.divisors
    }

    pub fn complexes(&self) -> &BTreeMap<Stratum, PolyComplex> {
        &self.complexes
    }

    pub fn complex(&self, i: &Stratum) -> Result<&PolyComplex> {
        self.complexes.get(i).ok_or_else(|| Error::UnknownStratum(i.clone()))
    }

    pub fn projections(&self) -> &BTreeMap<Stratum, RatMatrix> {
        &self.projections
    }

    pub fn projection(&self, i: &Stratum) -> Result<&RatMatrix> {
        self.projections.get(i).ok_or_else(|| Error::UnknownStratum(i.clone()))
    }

    pub fn new_rays(&self) -> &[NewRay] {
        &self.new_rays
    }

    /// Original divisor names followed by the new ray names.
    pub fn all_divisors(&self) -> Vec<String> {
        self.divisors.iter().cloned().chain(self.new_rays.iter().map(|r| r.name.clone())).collect()
    }

    /// `(parent, generator)` of a divisor of the modification.
    pub fn ray(&self, index: usize) -> Option<(Stratum, Vec<BigInt>)> {
        let n = self.divisors.len();
        if index < n {
            Some((Stratum(vec![index]), vec![BigInt::one()]))
        } else {
            self.new_rays.get(index - n).map(|r| (r.parent.clone(), r.generator.clone()))
        }
    }

    /// The divisor of the modification for a primitive ray of `C'_I`.
    pub fn ray_index(&self, i: &Stratum, ray: &[BigInt]) -> Option<usize> {
        let (parent, v) = ray_support(i, ray);
        if parent.len() == 1 && v[0].is_one() {
            return Some(parent.0[0]);
        }
        self.ray_lookup.get(&(parent, v)).copied()
    }

    /// The stratum of the modification corresponding to a cell of `C'_I`.
    pub fn stratum_of(&self, i: &Stratum, cell: &Cone) -> Result<Stratum> {
        let idx = cell
            .rays()
            .iter()
            .map(|r| self.ray_index(i, r).ok_or_else(|| Error::Invalid(format!("unregistered ray in {cell}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Stratum::new(idx))
    }

    /// The smallest original stratum over which the stratum `j` lies.
    pub fn base_of(&self, j: &Stratum) -> Result<Stratum> {
        let mut base = Stratum::empty();
        for &g in j.indices() {
            let (parent, _) = self.ray(g).ok_or_else(|| Error::Invalid(format!("no divisor with index {g}")))?;
            base = base.union(&parent);
        }
        Ok(base)
    }

    /// The cone of the stratum `j` in the coordinates of `i`, if its rays
    /// lie in `C_I`.
    pub fn cone_over(&self, j: &Stratum, i: &Stratum) -> Result<Cone> {
        let names = self.all_divisors();
        let label = j.indices().iter().map(|&g| names.get(g).cloned().unwrap_or_default()).join(",");
        let mut cols = Vec::new();
        for &g in j.indices() {
            let (parent, v) = self.ray(g).ok_or_else(|| Error::Invalid(format!("no divisor with index {g}")))?;
            if !parent.is_subset_of(i) {
                return Err(Error::NotOverStratum(label, i.clone()));
            }
            cols.push(inclusion(&parent, i)?.apply(&int_to_rat(&v)));
        }
        let cone = Cone::hull_unchecked(i.len(), cols);
        if !self.complex(i)?.contains(&cone) || cone.rays().len() != j.len() {
            return Err(Error::NotOverStratum(label, i.clone()));
        }
        Ok(cone)
    }

    /// Cells that are not simplicial, each listed at its smallest stratum.
    pub fn non_simplicial(&self) -> Vec<CellWitness> {
        self.minimal_cells().filter(|(_, c)| !c.is_simplicial()).map(|(i, c)| witness(i, c)).collect()
    }

    /// Simplicial cells whose rays do not extend to a lattice basis.
    pub fn non_unimodular(&self) -> Vec<CellWitness> {
        self.minimal_cells()
            .filter(|(_, c)| c.is_simplicial() && !is_unimodular(c))
            .map(|(i, c)| witness(i, c))
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.minimal_cells().all(|(_, c)| c.is_simplicial())
    }

    // each cell once, at the smallest stratum whose orthant contains it
    fn minimal_cells(&self) -> impl Iterator<Item = (&Stratum, &Cone)> {
        self.complexes.iter().flat_map(|(i, cx)| {
            cx.cones()
                .iter()
                .filter(move |c| {
                    let mut support = vec![false; i.len()];
                    for r in c.rays() {
                        for (s, x) in support.iter_mut().zip(r) {
                            *s |= !x.is_zero();
                        }
                    }
                    support.into_iter().all(|s| s)
                })
                .map(move |c| (i, c))
        })
    }

    /// The stratification of the modification: one divisor per ray, one
    /// stratum per cell, and kernels induced by the monodromy maps. Only
    /// produced for simplicial refinements, where the rays of a cell are
    /// coordinates on its span.
    pub fn induced_system(&self) -> Result<Option<StratSystem>> {
        if !self.is_simplicial() {
            return Ok(None);
        }
        let mut kernels = BTreeMap::new();
        for (i, c) in self.minimal_cells() {
            let j = self.stratum_of(i, c)?;
            let m = self.restricted_map(&j, i)?;
            kernels.insert(j, m.kernel());
        }
        let nonempty = kernels.keys().cloned().collect();
        StratSystem::new(self.all_divisors(), nonempty, Monodromy::Kernels(kernels)).map(Some)
    }

    // 𝔪_I applied to the rays of j, one column per ray.
    fn restricted_map(&self, j: &Stratum, i: &Stratum) -> Result<RatMatrix> {
        let mut cols = Vec::new();
        for &g in j.indices() {
            let (parent, v) = self.ray(g).ok_or_else(|| Error::Invalid(format!("no divisor with index {g}")))?;
            cols.push(inclusion(&parent, i)?.apply(&int_to_rat(&v)));
        }
        let m = self.projection(i)?;
        Ok(m.mul(&RatMatrix::from_columns(i.len(), &cols)))
    }

    /// `𝛕` and `𝛔` of every stratum of the modification, in the
    /// coordinates of the original stratum it lies over.
    pub fn tau_table(&self, s: &StratSystem, t: &Cmcx) -> Result<TauTable> {
        let Some(induced) = self.induced_system()? else {
            let w = self.non_simplicial().into_iter().next().map(|w| w.stratum).unwrap_or_else(Stratum::empty);
            return Err(Error::NotSimplicial(w));
        };
        let mut data = BTreeMap::new();
        for (i, c) in self.minimal_cells() {
            let j = self.stratum_of(i, c)?;
            let (matches, image) = matching_cells(t, i, c)?;
            let [tau] = matches.as_slice() else {
                return Err(Error::CheckFailed(format!(
                    "cell {c} over {i} meets {} cells of the complex",
                    matches.len()
                )));
            };
            data.insert(j, TauData { base: i.clone(), tau: tau.clone(), sigma: image });
        }
        Ok(TauTable::new(induced.nonempty().clone(), data, CmcTable::new(s)?))
    }
}

fn witness(i: &Stratum, c: &Cone) -> CellWitness {
    CellWitness { stratum: i.clone(), cone: c.to_string() }
}

// The coordinates of `i` where `ray` is nonzero, and the ray restricted to them.
fn ray_support(i: &Stratum, ray: &[BigInt]) -> (Stratum, Vec<BigInt>) {
    let mut idx = Vec::new();
    let mut v = Vec::new();
    for (k, x) in ray.iter().enumerate() {
        if !x.is_zero() {
            idx.push(i.0[k]);
            v.push(x.clone());
        }
    }
    (Stratum(idx), v)
}

type RayLookup = BTreeMap<(Stratum, Vec<BigInt>), usize>;

fn register_rays(divisors: &[String], complexes: &BTreeMap<Stratum, PolyComplex>) -> (Vec<NewRay>, RayLookup) {
    let mut order: Vec<&Stratum> = complexes.keys().collect();
    order.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut rays: Vec<NewRay> = Vec::new();
    let mut lookup = BTreeMap::new();
    let mut per_parent: BTreeMap<Stratum, usize> = BTreeMap::new();
    for i in order {
        for c in complexes[i].cones() {
            for r in c.rays() {
                let (parent, v) = ray_support(i, r);
                if (parent.len() == 1 && v[0].is_one()) || lookup.contains_key(&(parent.clone(), v.clone())) {
                    continue;
                }
                let k = per_parent.entry(parent.clone()).or_insert(0);
                *k += 1;
                let label = parent.indices().iter().map(|&d| divisors[d].as_str()).join("+");
                lookup.insert((parent.clone(), v.clone()), divisors.len() + rays.len());
                rays.push(NewRay { name: format!("{label}#{k}"), parent, generator: v });
            }
        }
    }
    (rays, lookup)
}

// For every codimension one face `I \ {k}` of every orthant, the cells of
// `C'_I` inside that face must be the image of `C'_{I \ {k}}`.
fn check_overlaps(complexes: &BTreeMap<Stratum, PolyComplex>) -> Result<()> {
    let pairs: Vec<(&Stratum, Stratum)> = complexes
        .keys()
        .flat_map(|i| i.indices().iter().map(move |&k| (i, i.without(k))))
        .collect();
    pairs.par_iter().try_for_each(|(sup, sub)| {
        let Some(small) = complexes.get(sub) else {
            return Ok(());
        };
        let incl = inclusion(sub, sup)?;
        let face = Cone::orthant(sub.len()).image(&incl)?;
        let from_sup: BTreeSet<&Cone> =
            complexes[*sup].cones().iter().filter(|c| face.contains_cone_unchecked(c)).collect();
        let from_sub: BTreeSet<Cone> = small.cones().iter().map(|c| c.image(&incl)).collect::<Result<_>>()?;
        if from_sup.len() != from_sub.len() || !from_sub.iter().all(|c| from_sup.contains(c)) {
            return Err(Error::OverlapInconsistency { sub: sub.clone(), sup: (*sup).clone() });
        }
        Ok(())
    })
}

/// Pulls every complex of `t` back along the monodromy maps. With
/// `simplicialize`, non-simplicial cells are then stellarly subdivided at
/// the sum of their primitive rays, lowest dimension first.
pub fn refine_fan(s: &StratSystem, t: &Cmcx, simplicialize: bool) -> Result<RefinedFan> {
    if t.divisors() != s.divisors() || t.strata().ne(s.nonempty().iter()) {
        return Err(Error::Invalid("complex does not belong to this system".into()));
    }
    if let Some(v) = check_cmcx(t)?.violation {
        return Err(Error::CheckFailed(v.to_string()));
    }
    let strata: Vec<&Stratum> = s.nonempty().iter().collect();
    let complexes = strata
        .par_iter()
        .map(|i| {
            let m = t.projection(i)?;
            let orthant = Cone::orthant(i.len());
            let pieces = t
                .complex(i)?
                .maximal_cones()
                .iter()
                .map(|tau| Ok(tau.preimage(m)?.intersect_unchecked(&orthant)))
                .collect::<Result<Vec<_>>>()?;
            let mut cx = PolyComplex::closure_unchecked(i.len(), &pieces);
            if simplicialize {
                cx = simplicialize_complex(&cx);
            }
            Ok(((*i).clone(), cx))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let projections = strata.iter().map(|i| Ok(((*i).clone(), t.projection(i)?.clone()))).collect::<Result<_>>()?;
    RefinedFan::new(s.divisors().to_vec(), complexes, projections)
}

/// Repeated stellar subdivision until every cell is simplicial.
pub fn simplicialize_complex(cx: &PolyComplex) -> PolyComplex {
    let mut cells: BTreeSet<Cone> = cx.cones().iter().cloned().collect();
    while let Some(c) = cells.iter().filter(|c| !c.is_simplicial()).min_by_key(|c| c.dim()).cloned() {
        cells = stellar(&cells, &c, &c.interior_point());
    }
    PolyComplex::closure_unchecked(cx.ambient(), &cells.into_iter().collect::<Vec<_>>())
}

/// Stellar subdivision of a complex at a point `p` in the relative
/// interior of its member `c`.
pub fn stellar(cells: &BTreeSet<Cone>, c: &Cone, p: &[Rat]) -> BTreeSet<Cone> {
    let (star, rest): (Vec<&Cone>, Vec<&Cone>) = cells.iter().partition(|d| d.contains_cone_unchecked(c));
    // in a complex the members inside a star cell are its faces, so the
    // faces missing `c` are already at hand
    let link: Vec<Cone> = rest
        .par_iter()
        .filter(|f| star.iter().any(|d| d.contains_cone_unchecked(f)))
        .map(|f| {
            let mut g = f.generators();
            g.push(p.to_vec());
            Cone::hull_unchecked(c.ambient(), g)
        })
        .collect();
    rest.into_iter().cloned().chain(link).collect()
}

fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    // Bareiss elimination
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// Whether the primitive rays of a simplicial cone are part of a basis of
/// the integer lattice: the gcd of their maximal minors is one.
pub fn is_unimodular(c: &Cone) -> bool {
    let rays = c.rays();
    let k = rays.len();
    let g = (0..c.ambient())
        .combinations(k)
        .map(|cols| det(rays.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect()))
        .fold(BigInt::zero(), |acc, d| acc.gcd(&d));
    g.abs().is_one()
}

/// A cell whose image does not lie in the relative interior of exactly one
/// cell of the complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatFailure {
    pub stratum: Stratum,
    pub cone: String,
    pub matches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub checked: usize,
    pub failures: Vec<CompatFailure>,
}

impl CompatReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

// Cells τ of Σ(I) with 𝔪_I(relint c) ⊆ relint τ, and 𝔪_I(c).
fn matching_cells(t: &Cmcx, i: &Stratum, c: &Cone) -> Result<(Vec<Cone>, Cone)> {
    let m = t.projection(i)?;
    let image = c.image(m)?;
    let p = m.apply(&c.interior_point());
    let matches = t
        .complex(i)?
        .cones()
        .iter()
        .filter(|tau| tau.relint_contains_unchecked(&p) && tau.contains_cone_unchecked(&image))
        .cloned()
        .collect();
    Ok((matches, image))
}

/// For every cell of every `C'_I`, the cells `τ` of the complex on `I` whose
/// relative interior receives the image of the cell's relative interior.
/// Passes when there is exactly one for each cell.
pub fn check_compatibility(rf: &RefinedFan, t: &Cmcx) -> Result<CompatReport> {
    let cells: Vec<(&Stratum, &Cone)> =
        rf.complexes.iter().flat_map(|(i, cx)| cx.cones().iter().map(move |c| (i, c))).collect();
    let failures = cells
        .par_iter()
        .map(|(i, c)| {
            let (matches, _) = matching_cells(t, i, c)?;
            Ok((matches.len() != 1).then(|| CompatFailure {
                stratum: (*i).clone(),
                cone: c.to_string(),
                matches: matches.iter().map(Cone::to_string).collect(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompatReport { checked: cells.len(), failures: failures.into_iter().flatten().collect() })
}

/// The map from the monodromy cone of the stratum `j` of the modification
/// to `𝛔_I`: `𝔪_I` on the rays of `j`, read in the quotient coordinates of
/// `j`.
pub fn descendant_map(rf: &RefinedFan, j: &Stratum, i: &Stratum) -> Result<RatMatrix> {
    rf.cone_over(j, i)?;
    let m = rf.restricted_map(j, i)?;
    let section = quotient_section(j.len(), &m.kernel())?;
    Ok(m.mul(&section))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmcx::canonical_t0;
    use crate::complexes::arrangement;
    use crate::exactlin::rat_vec;

    fn st(v: &[usize]) -> Stratum {
        Stratum::new(v.to_vec())
    }

    fn square() -> StratSystem {
        StratSystem::new(vec!["1".into(), "2".into()], vec![st(&[0, 1])], Monodromy::Kernels(BTreeMap::new()))
            .unwrap()
    }

    fn split_square(s: &StratSystem) -> Cmcx {
        let t0 = canonical_t0(s).unwrap();
        let mut complexes = t0.complexes().clone();
        complexes.insert(st(&[0, 1]), arrangement(&Cone::orthant(2), &[rat_vec(&[1, -1])]));
        let projections = s.nonempty().iter().map(|i| (i.clone(), s.projection(i).unwrap())).collect();
        Cmcx::new(s.divisors().to_vec(), complexes, projections).unwrap()
    }

    #[test]
    fn monodromy_map_of_equal_pair() {
        let j = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let s = StratSystem::new(vec!["1".into(), "2".into()], vec![st(&[0, 1])], Monodromy::Matrices(vec![j.clone(), j]))
            .unwrap();
        assert_eq!(monodromy_map(&s, &st(&[0, 1])).unwrap(), RatMatrix::from_i64(&[&[1, 1]]));
    }

    #[test]
    fn identity_modification() {
        let s = square();
        let t = canonical_t0(&s).unwrap();
        let rf = refine_fan(&s, &t, false).unwrap();
        assert_eq!(rf, RefinedFan::unrefined(&s).unwrap());
        assert!(rf.new_rays().is_empty());
        assert!(check_compatibility(&rf, &t).unwrap().passed());
        let induced = rf.induced_system().unwrap().unwrap();
        assert_eq!(induced.nonempty(), s.nonempty());
    }

    #[test]
    fn stellar_split_of_the_square() {
        let s = square();
        let t = split_square(&s);
        let rf = refine_fan(&s, &t, false).unwrap();
        assert_eq!(rf.new_rays().len(), 1);
        assert_eq!(rf.new_rays()[0].name, "1+2#1");
        assert_eq!(rf.complex(&st(&[0, 1])).unwrap().cones_of_dim(2).count(), 2);
        assert!(check_compatibility(&rf, &t).unwrap().passed());
        let unrefined = RefinedFan::unrefined(&s).unwrap();
        let report = check_compatibility(&unrefined, &t).unwrap();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].cone, Cone::orthant(2).to_string());
        assert!(report.failures[0].matches.is_empty());
        let eta = descendant_map(&rf, &st(&[2]), &st(&[0, 1])).unwrap();
        assert_eq!(eta, RatMatrix::from_i64(&[&[1], &[1]]));
        assert!(matches!(descendant_map(&rf, &st(&[2]), &st(&[0])), Err(Error::NotOverStratum(..))));
    }

    #[test]
    fn simplicialization_of_a_square_cone() {
        let c = Cone::hull_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]).unwrap();
        let cx = simplicialize_complex(&PolyComplex::from_cone(&c));
        assert!(cx.cones().iter().all(Cone::is_simplicial));
        assert_eq!(cx.cones_of_dim(3).count(), 4);
    }

    #[test]
    fn unimodularity() {
        assert!(is_unimodular(&Cone::orthant(3)));
        assert!(!is_unimodular(&Cone::hull_i64(2, &[&[1, 0], &[1, 2]]).unwrap()));
        assert!(is_unimodular(&Cone::hull_i64(2, &[&[1, 0], &[1, 1]]).unwrap()));
    }
}
