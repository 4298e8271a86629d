//! Construction of a CMCX for an arbitrary system.
//!
//! 1. Enumerate the hyperintersections of every stratum.
//! 2. Going down from the largest strata, cut each monodromy cone by the
//!    hyperplanes of every hyperintersection and of the pulled back complexes
//!    of larger strata.
//! 3. Subdivide each cell by the complexes transported along the
//!    hyperintersections containing it, glue the pieces into a semicomplex,
//!    then refine across all identifications until they agree.
//! 4. Complexify canonically, scaling rays in one global lattice so that
//!    barycenters agree across charts.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::cmc::CmcTable;
use crate::cmcx::{check_cmcx, Cmcx};
use crate::complexes::{
    arrangement, canonical_complexification_with, common_refinement_unchecked, relints_meet,
    restrict_unchecked, semicomplex_cells, validate_semicomplex, PolyComplex,
};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exactlin::{int_to_rat, primitive, Rat, RatMatrix};
use crate::hyper::{HyperEngine, HyperRecord};
use crate::strata::{inclusion, StratSystem, Stratum};

/// Resource limits for the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of cones in any one stratum's complex.
    pub cells: usize,
    /// Maximum number of hyperintersection states per stratum.
    pub states: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { cells: 20_000, states: 100_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub cmcx: Cmcx,
    /// Number of hyperintersection records used.
    pub records: usize,
    /// Rounds of the cross-chart refinement.
    pub rounds: usize,
    /// Whether barycenters were scaled in the global lattice.
    pub global_scaling: bool,
}

pub fn construct_cmcx(s: &StratSystem) -> Result<Cmcx> {
    Ok(construct_cmcx_with(s, &Caps::default())?.cmcx)
}

/// A record with the map back from `start` to `end` coordinates.
struct Link {
    start: Stratum,
    end: Stratum,
    in_start: Cone,
    in_end: Cone,
    chart: RatMatrix,
    back: RatMatrix,
}

fn link(r: &HyperRecord) -> Result<Link> {
    let basis = r.value_in_end.span().basis_matrix().transpose();
    let img = r.chart.mul(&basis);
    let inv = img
        .left_inverse()
        .ok_or_else(|| Error::CheckFailed(format!("chart of {} -> {} is not injective", r.start, r.end)))?;
    Ok(Link {
        start: r.start.clone(),
        end: r.end.clone(),
        in_start: r.value_in_start.clone(),
        in_end: r.value_in_end.clone(),
        chart: r.chart.clone(),
        back: basis.mul(&inv),
    })
}

fn planes_of(c: &Cone, out: &mut Vec<Vec<Rat>>) {
    out.extend(c.facets().iter().cloned());
    out.extend(c.equations().iter().cloned());
}

fn cap_check(cells: usize, caps: &Caps, stratum: &Stratum, step: &str) -> Result<()> {
    if cells > caps.cells {
        return Err(Error::ResourceCap {
            what: "cells per stratum",
            cap: caps.cells,
            trace: format!("stratum {stratum} during {step}"),
        });
    }
    Ok(())
}

/// `{a ∩ b : relint a ∩ relint b ≠ ∅}` for two relative-interior partitions
/// of the same cone.
fn meet(a: &[Cone], b: &[Cone]) -> BTreeSet<Cone> {
    let mut out = BTreeSet::new();
    for x in a {
        let p = x.interior_point();
        if b.iter().any(|y| y.contains_cone_unchecked(x) && y.relint_contains_unchecked(&p)) {
            out.insert(x.clone());
            continue;
        }
        for y in b {
            if relints_meet(x, y) {
                out.insert(x.intersect_unchecked(y));
            }
        }
    }
    out
}

/// Replaces the cells of `cells` inside `region` by their meet with `other`.
/// Returns whether anything changed.
fn refine_inside(cells: &mut BTreeSet<Cone>, region: &Cone, other: &[Cone]) -> bool {
    let inside: Vec<Cone> = cells.iter().filter(|c| region.contains_cone_unchecked(c)).cloned().collect();
    let mut sorted_other = other.to_vec();
    sorted_other.sort();
    sorted_other.dedup();
    if inside == sorted_other {
        return false;
    }
    let refined = meet(&inside, &sorted_other);
    if refined.iter().eq(inside.iter()) {
        return false;
    }
    for c in &inside {
        cells.remove(c);
    }
    cells.extend(refined);
    true
}

fn ordered_strata(s: &StratSystem) -> Vec<Stratum> {
    let mut v: Vec<Stratum> = s.nonempty().iter().cloned().collect();
    v.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    v
}

pub fn construct_cmcx_with(s: &StratSystem, caps: &Caps) -> Result<Construction> {
    let report = s.validate();
    if let Some(v) = report.violation {
        return Err(Error::Invalid(v.to_string()));
    }
    let table = CmcTable::new(s)?;
    if let Some(bad) = report.not_pointed.first() {
        return Err(Error::NotPointed(Box::new(table.get(bad)?.cone().clone())));
    }
    let engine = HyperEngine::from_table(table.clone(), s);
    let strata = ordered_strata(s);

    let enumerated: Vec<(Stratum, Vec<HyperRecord>)> = strata
        .par_iter()
        .map(|i| Ok((i.clone(), engine.enumerate(i, caps.states)?.records)))
        .collect::<Result<_>>()?;
    let mut links: BTreeMap<Stratum, Vec<Link>> = BTreeMap::new();
    let mut targets: BTreeMap<Stratum, Vec<Cone>> = BTreeMap::new();
    let mut record_count = 0;
    for (i, records) in &enumerated {
        record_count += records.len();
        for r in records {
            targets.entry(i.clone()).or_default().push(r.value_in_start.clone());
            targets.entry(r.end.clone()).or_default().push(r.value_in_end.clone());
        }
        links.insert(i.clone(), records.iter().map(link).collect::<Result<_>>()?);
    }

    // Steps 1 and 2.
    let mut sigma0: BTreeMap<Stratum, PolyComplex> = BTreeMap::new();
    for i in &strata {
        let sigma = table.get(i)?.cone();
        let mut planes = Vec::new();
        let values: BTreeSet<&Cone> = targets.get(i).into_iter().flatten().collect();
        for v in values {
            planes_of(v, &mut planes);
        }
        for (j, cx) in &sigma0 {
            if j.len() <= i.len() || !i.is_subset_of(j) {
                continue;
            }
            let (xi, inv) = table.adjacent_with_inverse(i, j)?;
            let img = sigma.image(&xi)?;
            for m in cx.maximal_cones() {
                let q = m.intersect_unchecked(&img);
                planes_of(&q.image(&inv)?, &mut planes);
            }
        }
        let cx = arrangement(sigma, &planes);
        cap_check(cx.len(), caps, i, "hyperplane subdivision")?;
        sigma0.insert(i.clone(), cx);
    }

    // Step 3: subdivide each cell by the transported complexes.
    let semis: Vec<(Stratum, BTreeSet<Cone>)> = strata
        .par_iter()
        .map(|i| {
            let base = &sigma0[i];
            let ambient = base.ambient();
            let mut transported: BTreeSet<(Cone, Vec<Cone>)> = BTreeSet::new();
            for l in &links[i] {
                let end = &sigma0[&l.end];
                let res = restrict_unchecked(&end.maximal_cones(), &l.in_end, end.ambient());
                let mut cells: Vec<Cone> =
                    res.maximal_cones().iter().map(|c| c.image(&l.chart)).collect::<Result<_>>()?;
                cells.sort();
                transported.insert((l.in_start.clone(), cells));
            }
            let mut per_cone = BTreeMap::new();
            for tau in base.cones() {
                let mut parts = vec![PolyComplex::from_cone(tau)];
                for (h, cells) in &transported {
                    if h.contains_cone_unchecked(tau) {
                        parts.push(restrict_unchecked(cells, tau, ambient));
                    }
                }
                if parts.len() > 1 {
                    per_cone.insert(tau.clone(), common_refinement_unchecked(&parts));
                }
            }
            let cells: BTreeSet<Cone> = semicomplex_cells(base, &per_cone).into_iter().collect();
            cap_check(cells.len(), caps, i, "cell subdivision")?;
            Ok((i.clone(), cells))
        })
        .collect::<Result<_>>()?;
    let mut semi: BTreeMap<Stratum, BTreeSet<Cone>> = semis.into_iter().collect();

    // Refine across every identification until all charts agree.
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut changed = false;
        for i in &strata {
            for l in &links[i] {
                let from_end: Vec<Cone> = semi[&l.end]
                    .iter()
                    .filter(|c| l.in_end.contains_cone_unchecked(c))
                    .map(|c| c.image(&l.chart))
                    .collect::<Result<_>>()?;
                let cells = semi.get_mut(&l.start).expect("stratum");
                changed |= refine_inside(cells, &l.in_start, &from_end);
                cap_check(cells.len(), caps, &l.start, "cross-chart refinement")?;
                let from_start: Vec<Cone> = semi[&l.start]
                    .iter()
                    .filter(|c| l.in_start.contains_cone_unchecked(c))
                    .map(|c| c.image(&l.back))
                    .collect::<Result<_>>()?;
                let cells = semi.get_mut(&l.end).expect("stratum");
                changed |= refine_inside(cells, &l.in_end, &from_start);
                cap_check(cells.len(), caps, &l.end, "cross-chart refinement")?;
            }
        }
        if !changed {
            break;
        }
    }

    // Step 4.
    let uni = s.universal();
    let all = Stratum((0..s.divisors().len()).collect());
    let complexes: Vec<(Stratum, PolyComplex)> = strata
        .par_iter()
        .map(|i| {
            let ambient = table.get(i)?.ambient();
            let sc = validate_semicomplex(ambient, semi[i].iter().cloned().collect())
                .map_err(|e| Error::CheckFailed(format!("refined collection of {i} is not a semicomplex: {e}")))?;
            let omega = uni.map.mul(&inclusion(i, &all)?).mul(table.get(i)?.section());
            let embeddable = uni.embeddable;
            let normalize = move |ray: &[BigInt]| -> Vec<Rat> {
                let r = int_to_rat(ray);
                if !embeddable {
                    return r;
                }
                let w = omega.apply(&r);
                let p = primitive(&w);
                match w.iter().zip(&p).find(|(_, q)| !q.is_zero()) {
                    Some((x, q)) => {
                        let t = x / Rat::from_integer(q.clone());
                        r.into_iter().map(|v| v / &t).collect()
                    }
                    None => r,
                }
            };
            let cx = canonical_complexification_with(&sc, &normalize)?;
            cap_check(cx.complex.len(), caps, i, "complexification")?;
            Ok((i.clone(), cx.complex))
        })
        .collect::<Result<_>>()?;
    let projections = strata
        .iter()
        .map(|i| Ok((i.clone(), table.get(i)?.proj().clone())))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let cmcx = Cmcx::new(s.divisors().to_vec(), complexes.into_iter().collect(), projections)?;

    let report = check_cmcx(&cmcx)?;
    if let Some(v) = report.violation {
        return Err(Error::CheckFailed(format!("constructed complexes are not compatible: {v}")));
    }
    for ls in links.values() {
        for l in ls {
            if !agrees_on(&cmcx, l)? {
                return Err(Error::CheckFailed(format!(
                    "complexes of {} and {} differ on a common hyperintersection",
                    l.start, l.end
                )));
            }
        }
    }
    Ok(Construction { cmcx, records: record_count, rounds, global_scaling: uni.embeddable })
}

fn agrees_on(c: &Cmcx, l: &Link) -> Result<bool> {
    let a = c.complex(&l.start)?;
    let b = c.complex(&l.end)?;
    let ra: BTreeSet<Cone> = restrict_unchecked(&a.maximal_cones(), &l.in_start, a.ambient())
        .cones()
        .iter()
        .cloned()
        .collect();
    let rb: BTreeSet<Cone> = restrict_unchecked(&b.maximal_cones(), &l.in_end, b.ambient())
        .cones()
        .iter()
        .map(|x| x.image(&l.chart))
        .collect::<Result<_>>()?;
    Ok(ra == rb)
}

/// Whether the restrictions of the complexes to every hyperintersection agree
/// under its chart.
pub fn strong_property_holds(s: &StratSystem, c: &Cmcx, caps: &Caps) -> Result<bool> {
    let engine = HyperEngine::new(s)?;
    for i in s.nonempty() {
        for r in engine.enumerate(i, caps.states)?.records {
            if !agrees_on(c, &link(&r)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
