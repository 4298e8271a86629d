//! Polyhedral complexes and semicomplexes of cones.
//!
//! Both are stored as a sorted, duplicate-free list of canonical cones. A
//! [`PolyComplex`] is face-closed with pairwise disjoint relative interiors; a
//! [`SemiComplex`] only asks that each face of a member be a union of members.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exactlin::{dot, int_to_rat, neg, primitive, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyComplex {
    ambient: usize,
    cones: Vec<Cone>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiComplex {
    ambient: usize,
    cones: Vec<Cone>,
}

macro_rules! collection_accessors {
    ($t:ty) => {
        impl $t {
            pub fn ambient(&self) -> usize {
                self.ambient
            }

            pub fn cones(&self) -> &[Cone] {
                &self.cones
            }

            pub fn len(&self) -> usize {
                self.cones.len()
            }

            pub fn is_empty(&self) -> bool {
                self.cones.is_empty()
            }

            pub fn contains(&self, c: &Cone) -> bool {
                self.cones.binary_search(c).is_ok()
            }

            /// Largest cone dimension, 0 for an empty collection.
            pub fn dim(&self) -> usize {
                self.cones.iter().map(Cone::dim).max().unwrap_or(0)
            }

            pub fn cones_of_dim(&self, r: usize) -> impl Iterator<Item = &Cone> {
                self.cones.iter().filter(move |c| c.dim() == r)
            }

            /// Members not contained in any other member.
            pub fn maximal_cones(&self) -> Vec<Cone> {
                maximal(&self.cones)
            }

            /// Whether `v` lies in the union of the members.
            pub fn support_contains(&self, v: &[Rat]) -> bool {
                self.cones.iter().any(|c| c.contains_unchecked(v))
            }
        }
    };
}

collection_accessors!(PolyComplex);
collection_accessors!(SemiComplex);

fn maximal(cones: &[Cone]) -> Vec<Cone> {
    cones
        .iter()
        .filter(|c| {
            !cones
                .iter()
                .any(|d| d.dim() > c.dim() && d.contains_cone_unchecked(c))
        })
        .cloned()
        .collect()
}

fn check_ambient(ambient: usize, cones: &[Cone]) -> Result<()> {
    for c in cones {
        if c.ambient() != ambient {
            return Err(Error::AmbientMismatch { expected: ambient, found: c.ambient() });
        }
    }
    Ok(())
}

/// All faces of all given cones.
pub fn face_closure<'a>(cones: impl IntoIterator<Item = &'a Cone>) -> BTreeSet<Cone> {
    let mut out = BTreeSet::new();
    for c in cones {
        if out.contains(c) {
            continue;
        }
        out.extend(c.faces());
    }
    out
}

fn separated(a: &Cone, b: &Cone) -> bool {
    let gens = b.generators();
    a.facets()
        .iter()
        .any(|f| gens.iter().all(|g| !dot(f, g).is_positive()))
}

/// Whether the relative interiors of `a` and `b` meet.
pub fn relints_meet(a: &Cone, b: &Cone) -> bool {
    if separated(a, b) || separated(b, a) {
        return false;
    }
    let p = a.intersect_unchecked(b).interior_point();
    a.relint_contains_unchecked(&p) && b.relint_contains_unchecked(&p)
}

// Facets and generators scaled to machine integers, when they fit; used
// to rule out most pairs without rational arithmetic.
struct Small {
    facets: Option<Vec<Vec<i64>>>,
    gens: Option<Vec<Vec<i64>>>,
}

fn small(vs: &[Vec<Rat>]) -> Option<Vec<Vec<i64>>> {
    vs.iter().map(|v| primitive(v).iter().map(|x| x.to_i64()).collect()).collect()
}

impl Small {
    fn of(c: &Cone) -> Small {
        Small { facets: small(c.facets()), gens: small(&c.generators()) }
    }

    fn separates(&self, other: &Small) -> bool {
        let (Some(fs), Some(gs)) = (&self.facets, &other.gens) else {
            return false;
        };
        let dot = |f: &[i64], g: &[i64]| f.iter().zip(g).map(|(&x, &y)| x as i128 * y as i128).sum::<i128>();
        fs.iter().any(|f| gs.iter().all(|g| dot(f, g) <= 0))
    }
}

fn first_overlap(cones: &[Cone]) -> Option<(Cone, Cone)> {
    let smalls: Vec<Small> = cones.par_iter().map(Small::of).collect();
    (0..cones.len()).into_par_iter().find_map_first(|i| {
        (i + 1..cones.len())
            .find(|&j| {
                !smalls[i].separates(&smalls[j])
                    && !smalls[j].separates(&smalls[i])
                    && relints_meet(&cones[i], &cones[j])
            })
            .map(|j| (cones[i].clone(), cones[j].clone()))
    })
}

/// Intersection of `c` with the half-spaces `f >= 0` for `f` in `extra`.
fn cut(c: &Cone, extra: &[Vec<Rat>]) -> Cone {
    let mut ineqs = c.facets().to_vec();
    ineqs.extend(extra.iter().cloned());
    Cone::from_inequalities_unchecked(c.ambient(), c.equations(), &ineqs)
}

/// Whether `target` is contained in the union of `pieces`.
pub fn covers(target: &Cone, pieces: &[Cone]) -> bool {
    if target.is_zero() {
        return !pieces.is_empty();
    }
    let d = target.dim();
    let mut full = Vec::new();
    for p in pieces.iter().filter(|p| p.dim() >= d) {
        if p.contains_cone_unchecked(target) {
            return true;
        }
        let q = p.intersect_unchecked(target);
        if q.dim() == d {
            full.push(q);
        }
    }
    covers_full(target, &full)
}

// Peels off the first piece: what remains of `region` outside it is the
// disjoint-interior union of the slabs `f_j <= 0, f_i >= 0 (i < j)`.
fn covers_full(region: &Cone, pieces: &[Cone]) -> bool {
    let d = region.dim();
    let Some((first, rest)) = pieces.split_first() else {
        return false;
    };
    let p = first.intersect_unchecked(region);
    if p.dim() < d {
        return covers_full(region, rest);
    }
    if p == *region {
        return true;
    }
    let mut kept: Vec<Vec<Rat>> = Vec::new();
    for f in p.facets() {
        let mut extra = kept.clone();
        extra.push(neg(f));
        let slab = cut(region, &extra);
        if slab.dim() == d && !covers_full(&slab, rest) {
            return false;
        }
        kept.push(f.clone());
    }
    true
}

fn hyperplane_key(f: &[Rat]) -> Option<Vec<BigInt>> {
    let p = primitive(f);
    let lead = p.iter().find(|x| !x.is_zero())?;
    Some(if lead.is_negative() { p.iter().map(|x| -x).collect() } else { p })
}

/// Maximal cells of the subdivision of `c` cut out by the given hyperplanes.
pub fn arrangement_cells(c: &Cone, hyperplanes: &[Vec<Rat>]) -> Vec<Cone> {
    let keys: BTreeSet<Vec<BigInt>> = hyperplanes.iter().filter_map(|f| hyperplane_key(f)).collect();
    let mut cells = vec![c.clone()];
    for key in keys {
        let f = int_to_rat(&key);
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            let gens = cell.generators();
            let pos = gens.iter().any(|g| dot(&f, g).is_positive());
            let negv = gens.iter().any(|g| dot(&f, g).is_negative());
            if pos && negv {
                next.push(cut(&cell, std::slice::from_ref(&f)));
                next.push(cut(&cell, &[neg(&f)]));
            } else {
                next.push(cell);
            }
        }
        cells = next;
    }
    cells.sort();
    cells
}

/// The complex of all cells of the hyperplane subdivision of `c`, with faces.
pub fn arrangement(c: &Cone, hyperplanes: &[Vec<Rat>]) -> PolyComplex {
    let cells = arrangement_cells(c, hyperplanes);
    PolyComplex { ambient: c.ambient(), cones: face_closure(&cells).into_iter().collect() }
}

impl PolyComplex {
    /// The complex of all faces of `c`.
    pub fn from_cone(c: &Cone) -> PolyComplex {
        PolyComplex { ambient: c.ambient(), cones: c.faces() }
    }

    pub fn empty(ambient: usize) -> PolyComplex {
        PolyComplex { ambient, cones: Vec::new() }
    }

    /// Face closure of `cones`, trusted to have disjoint relative interiors.
    pub(crate) fn closure_unchecked(ambient: usize, cones: &[Cone]) -> PolyComplex {
        PolyComplex { ambient, cones: face_closure(cones).into_iter().collect() }
    }

    pub fn to_semicomplex(&self) -> SemiComplex {
        SemiComplex { ambient: self.ambient, cones: self.cones.clone() }
    }

    /// Members contained in `s`.
    pub fn cells_in(&self, s: &Cone) -> Vec<Cone> {
        self.cones.iter().filter(|c| s.contains_cone_unchecked(c)).cloned().collect()
    }

    /// Whether the support of `self` contains the cone `s`.
    pub fn covers(&self, s: &Cone) -> bool {
        covers(s, &self.maximal_cones())
    }

    /// Whether the members inside `s` tile it. Since relative interiors are
    /// disjoint, this holds exactly when the top dimensional members close
    /// up: each of their facets lies on two of them, or on one if it is in
    /// the boundary of `s`.
    pub fn fills(&self, s: &Cone) -> bool {
        if s.is_zero() {
            return self.contains(s);
        }
        let d = s.dim();
        let walls = s.facet_cones();
        let mut count: BTreeMap<Cone, usize> = BTreeMap::new();
        for c in self.cones.iter().filter(|c| c.dim() == d && s.contains_cone_unchecked(c)) {
            for f in c.facet_cones() {
                *count.entry(f).or_default() += 1;
            }
        }
        !count.is_empty()
            && count.iter().all(|(f, &n)| n == if walls.iter().any(|w| w.contains_cone_unchecked(f)) { 1 } else { 2 })
    }
}

/// Validates that `cones` form a polyhedral complex.
pub fn validate_complex(ambient: usize, cones: Vec<Cone>) -> Result<PolyComplex> {
    check_ambient(ambient, &cones)?;
    let set: BTreeSet<Cone> = cones.into_iter().collect();
    // facets suffice: every face is reached through a chain of facets
    for c in &set {
        for f in c.facet_cones() {
            if !set.contains(&f) {
                return Err(Error::NotFaceClosed { cone: Box::new(c.clone()), face: Box::new(f) });
            }
        }
    }
    let cones: Vec<Cone> = set.into_iter().collect();
    if let Some((a, b)) = first_overlap(&cones) {
        return Err(Error::InteriorOverlap { a: Box::new(a), b: Box::new(b) });
    }
    Ok(PolyComplex { ambient, cones })
}

/// Validates that `cones` form a polyhedral semicomplex.
pub fn validate_semicomplex(ambient: usize, cones: Vec<Cone>) -> Result<SemiComplex> {
    check_ambient(ambient, &cones)?;
    let set: BTreeSet<Cone> = cones.into_iter().collect();
    let cones: Vec<Cone> = set.iter().cloned().collect();
    let violation = cones.par_iter().find_map_first(|c| {
        c.faces().into_iter().find_map(|f| {
            if set.contains(&f) {
                return None;
            }
            let inside: Vec<Cone> =
                cones.iter().filter(|m| f.contains_cone_unchecked(m)).cloned().collect();
            (!covers(&f, &inside)).then(|| (c.clone(), f))
        })
    });
    if let Some((c, f)) = violation {
        return Err(Error::UnionFaceViolation { cone: Box::new(c), face: Box::new(f) });
    }
    if let Some((a, b)) = first_overlap(&cones) {
        return Err(Error::InteriorOverlap { a: Box::new(a), b: Box::new(b) });
    }
    Ok(SemiComplex { ambient, cones })
}

impl SemiComplex {
    /// Whether the members already form a polyhedral complex.
    pub fn is_complex(&self) -> bool {
        self.cones
            .iter()
            .all(|c| c.faces().iter().all(|f| self.contains(f)))
    }

    /// Members contained in `s`.
    pub fn cells_in(&self, s: &Cone) -> Vec<Cone> {
        self.cones.iter().filter(|c| s.contains_cone_unchecked(c)).cloned().collect()
    }
}

/// `{τ ∩ φ : τ ∈ c, φ a face of s}`, the complex `c` cut down to `s`.
pub fn restrict(c: &PolyComplex, s: &Cone) -> Result<PolyComplex> {
    if s.ambient() != c.ambient {
        return Err(Error::AmbientMismatch { expected: c.ambient, found: s.ambient() });
    }
    let max = c.maximal_cones();
    if !covers(s, &max) {
        return Err(Error::NotInSupport(Box::new(s.clone())));
    }
    Ok(restrict_unchecked(&max, s, c.ambient))
}

pub(crate) fn restrict_unchecked(maximal_cells: &[Cone], s: &Cone, ambient: usize) -> PolyComplex {
    let pieces: BTreeSet<Cone> = maximal_cells.iter().map(|t| t.intersect_unchecked(s)).collect();
    let pieces: Vec<Cone> = pieces.into_iter().collect();
    PolyComplex::closure_unchecked(ambient, &maximal(&pieces))
}

fn same_support(a: &PolyComplex, b: &PolyComplex) -> bool {
    let ma = a.maximal_cones();
    let mb = b.maximal_cones();
    ma.iter().all(|c| covers(c, &mb)) && mb.iter().all(|c| covers(c, &ma))
}

/// Minimal common refinement: all intersections of one cell from each input.
pub fn common_refinement(cs: &[PolyComplex]) -> Result<PolyComplex> {
    let Some((first, rest)) = cs.split_first() else {
        return Err(Error::Invalid("common refinement of no complexes".into()));
    };
    for c in rest {
        if c.ambient != first.ambient {
            return Err(Error::AmbientMismatch { expected: first.ambient, found: c.ambient });
        }
        if !same_support(first, c) {
            return Err(Error::SupportMismatch);
        }
    }
    Ok(common_refinement_unchecked(cs))
}

pub(crate) fn common_refinement_unchecked(cs: &[PolyComplex]) -> PolyComplex {
    let ambient = cs[0].ambient;
    let mut acc = cs[0].maximal_cones();
    for c in &cs[1..] {
        if c.cones == cs[0].cones {
            continue;
        }
        let other = c.maximal_cones();
        let mut next: BTreeSet<Cone> = BTreeSet::new();
        for a in &acc {
            for b in &other {
                next.insert(a.intersect_unchecked(b));
            }
        }
        let next: Vec<Cone> = next.into_iter().collect();
        acc = maximal(&next);
    }
    PolyComplex::closure_unchecked(ambient, &acc)
}

/// Glues per-cone subdivisions of `base` into a semicomplex: each cone of
/// `base` is replaced by the cells of the common refinement of the
/// subdivisions of all cones having it as a face, keeping only the cells
/// whose relative interior lies in its relative interior. Cones missing from
/// `per_cone` are left unsubdivided.
pub fn semicomplex_from_subdivisions(
    base: &PolyComplex,
    per_cone: &BTreeMap<Cone, PolyComplex>,
) -> Result<SemiComplex> {
    for (c, sub) in per_cone {
        if !base.contains(c) {
            return Err(Error::InvalidSemiComplex(format!("{c} is not a cone of the base")));
        }
        if !same_support(sub, &PolyComplex::from_cone(c)) {
            return Err(Error::SupportMismatch);
        }
    }
    let cells = semicomplex_cells(base, per_cone);
    validate_semicomplex(base.ambient, cells)
}

pub(crate) fn semicomplex_cells(base: &PolyComplex, per_cone: &BTreeMap<Cone, PolyComplex>) -> Vec<Cone> {
    let per: Vec<Vec<Cone>> = base
        .cones
        .par_iter()
        .map(|s| {
            let parts: Vec<PolyComplex> = per_cone
                .iter()
                .filter(|(t, _)| t.contains_cone_unchecked(s))
                .map(|(_, sub)| restrict_unchecked(&sub.maximal_cones(), s, base.ambient))
                .collect();
            if parts.is_empty() {
                return vec![s.clone()];
            }
            let refined = common_refinement_unchecked(&parts);
            refined
                .cones
                .into_iter()
                .filter(|c| s.relint_contains_unchecked(&c.interior_point()))
                .collect()
        })
        .collect();
    let set: BTreeSet<Cone> = per.into_iter().flatten().collect();
    set.into_iter().collect()
}

/// Result of the canonical complexification, with the collection recorded
/// after each stage `r = 2..=M`.
#[derive(Clone, Debug)]
pub struct Complexification {
    pub complex: PolyComplex,
    pub stages: Vec<(usize, Vec<Cone>)>,
}

/// Primitive integer ray generators, the default scaling for barycenters.
pub fn primitive_rays(r: &[BigInt]) -> Vec<Rat> {
    int_to_rat(r)
}

pub fn canonical_complexification(c: &SemiComplex) -> Result<PolyComplex> {
    Ok(canonical_complexification_with(c, &primitive_rays)?.complex)
}

/// Canonical complexification where `normalize` scales each extreme ray
/// before the barycenter is taken.
pub fn canonical_complexification_with(
    c: &SemiComplex,
    normalize: &(dyn Fn(&[BigInt]) -> Vec<Rat> + Sync),
) -> Result<Complexification> {
    let ambient = c.ambient;
    let mut current: BTreeSet<Cone> = c.cones.iter().cloned().collect();
    let top = c.dim();
    let mut stages = Vec::new();
    for r in 2..=top {
        let candidates: Vec<Cone> = current.iter().filter(|s| s.dim() == r).cloned().collect();
        for sigma in candidates {
            let faces = sigma.faces();
            if faces.iter().all(|f| current.contains(f)) {
                continue;
            }
            if !sigma.is_pointed() {
                return Err(Error::NotPointed(Box::new(sigma)));
            }
            let boundary: Vec<Cone> = current
                .iter()
                .filter(|t| **t != sigma && sigma.contains_cone_unchecked(t))
                .cloned()
                .collect();
            for facet in sigma.facet_cones() {
                let inside: Vec<Cone> =
                    boundary.iter().filter(|t| facet.contains_cone_unchecked(t)).cloned().collect();
                if !covers(&facet, &inside) {
                    return Err(Error::InvalidSemiComplex(format!(
                        "boundary face {facet} of {sigma} is not a union of cells"
                    )));
                }
            }
            let mut g = vec![Rat::zero(); ambient];
            for ray in sigma.rays() {
                for (x, y) in g.iter_mut().zip(normalize(ray)) {
                    *x += y;
                }
            }
            let q = Rat::from_integer(BigInt::from(sigma.rays().len()));
            let g: Vec<Rat> = g.into_iter().map(|x| x / &q).collect();
            current.remove(&sigma);
            for t in &boundary {
                let mut gens = t.generators();
                gens.push(g.clone());
                current.insert(Cone::hull_unchecked(ambient, gens));
            }
        }
        stages.push((r, current.iter().cloned().collect()));
    }
    let cones: Vec<Cone> = current.into_iter().collect();
    let complex = validate_complex(ambient, cones)
        .map_err(|e| Error::InvalidSemiComplex(format!("complexification did not produce a complex: {e}")))?;
    Ok(Complexification { complex, stages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat_vec;

    fn h(n: usize, vs: &[&[i64]]) -> Cone {
        Cone::hull_i64(n, vs).unwrap()
    }

    fn split_quadrant(x: i64, y: i64) -> PolyComplex {
        let a = h(2, &[&[1, 0], &[x, y]]);
        let b = h(2, &[&[x, y], &[0, 1]]);
        PolyComplex::closure_unchecked(2, &[a, b])
    }

    #[test]
    fn face_complex_is_valid() {
        let c = Cone::hull_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let pc = validate_complex(3, c.faces()).unwrap();
        assert_eq!(pc.len(), 8);
    }

    #[test]
    fn overlapping_ray_rejected() {
        let mut cones = Cone::orthant(2).faces();
        cones.push(h(2, &[&[1, 1]]));
        assert!(matches!(validate_complex(2, cones), Err(Error::InteriorOverlap { .. })));
        let missing = vec![Cone::orthant(2)];
        assert!(matches!(validate_complex(2, missing), Err(Error::NotFaceClosed { .. })));
    }

    fn split_face_semicomplex() -> Vec<Cone> {
        let sigma = Cone::orthant(3);
        let mut cones: Vec<Cone> = sigma
            .faces()
            .into_iter()
            .filter(|f| *f != h(3, &[&[1, 0, 0], &[0, 1, 0]]))
            .collect();
        cones.push(h(3, &[&[1, 0, 0], &[1, 1, 0]]));
        cones.push(h(3, &[&[1, 1, 0], &[0, 1, 0]]));
        cones.push(h(3, &[&[1, 1, 0]]));
        cones
    }

    #[test]
    fn split_face_is_semicomplex_not_complex() {
        let cones = split_face_semicomplex();
        let sc = validate_semicomplex(3, cones.clone()).unwrap();
        assert!(!sc.is_complex());
        assert!(validate_complex(3, cones).is_err());
    }

    #[test]
    fn restrictions() {
        let q = PolyComplex::from_cone(&Cone::orthant(2));
        assert_eq!(restrict(&q, &Cone::orthant(2)).unwrap(), q);
        let e1 = h(2, &[&[1, 0]]);
        let r = restrict(&q, &e1).unwrap();
        assert_eq!(r.cones(), &[Cone::zero(2), e1.clone()][..]);
        let fan = split_quadrant(1, 1);
        let s = h(2, &[&[1, 0], &[1, 1]]);
        assert_eq!(restrict(&fan, &s).unwrap(), PolyComplex::from_cone(&s));
        let outside = h(2, &[&[-1, 0]]);
        assert!(matches!(restrict(&q, &outside), Err(Error::NotInSupport(_))));
    }

    #[test]
    fn refinement_of_two_splits() {
        let a = split_quadrant(1, 1);
        let b = split_quadrant(1, 2);
        let r = common_refinement(&[a.clone(), b]).unwrap();
        let top: Vec<Cone> = r.cones_of_dim(2).cloned().collect();
        let mut expected = vec![
            h(2, &[&[1, 0], &[1, 1]]),
            h(2, &[&[1, 1], &[1, 2]]),
            h(2, &[&[1, 2], &[0, 1]]),
        ];
        expected.sort();
        assert_eq!(top, expected);
        assert_eq!(common_refinement(std::slice::from_ref(&a)).unwrap(), a);
        assert_eq!(common_refinement(&[a.clone(), a.clone()]).unwrap(), a);
        let other = PolyComplex::from_cone(&h(2, &[&[1, 0], &[-1, 1]]));
        assert!(matches!(common_refinement(&[a, other]), Err(Error::SupportMismatch)));
    }

    #[test]
    fn trivial_subdivisions_give_base() {
        let base = PolyComplex::from_cone(&Cone::orthant(3));
        let sc = semicomplex_from_subdivisions(&base, &BTreeMap::new()).unwrap();
        assert_eq!(sc.cones(), base.cones());
    }

    #[test]
    fn subdividing_one_face() {
        let sigma = Cone::orthant(3);
        let base = PolyComplex::from_cone(&sigma);
        let face = h(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let sub = PolyComplex::closure_unchecked(
            3,
            &[h(3, &[&[1, 0, 0], &[1, 1, 0]]), h(3, &[&[1, 1, 0], &[0, 1, 0]])],
        );
        let per = BTreeMap::from([(face, sub)]);
        let sc = semicomplex_from_subdivisions(&base, &per).unwrap();
        assert_eq!(sc.len(), 10);
        assert_eq!(sc.cones_of_dim(2).count(), 4);
        assert!(!sc.is_complex());
    }

    #[test]
    fn complexification_of_split_face() {
        let sc = validate_semicomplex(3, split_face_semicomplex()).unwrap();
        let cx = canonical_complexification_with(&sc, &primitive_rays).unwrap();
        let top: Vec<&Cone> = cx.complex.cones_of_dim(3).collect();
        assert_eq!(top.len(), 4);
        let g = rat_vec(&[1, 1, 1]);
        for t in top {
            assert!(t.rays().iter().any(|r| int_to_rat(r) == g));
        }
        assert!(validate_complex(3, cx.complex.cones().to_vec()).is_ok());
    }

    #[test]
    fn complexification_of_complex_is_identity() {
        let pc = split_quadrant(1, 2);
        let out = canonical_complexification(&pc.to_semicomplex()).unwrap();
        assert_eq!(out, pc);
    }

    #[test]
    fn covering() {
        let q = Cone::orthant(2);
        let halves = [h(2, &[&[1, 0], &[1, 1]]), h(2, &[&[1, 1], &[0, 1]])];
        assert!(covers(&q, &halves));
        assert!(!covers(&q, &halves[..1]));
        let thirds = [h(2, &[&[1, 0], &[1, 2]]), h(2, &[&[1, 1], &[0, 1]])];
        assert!(covers(&q, &thirds));
    }

    #[test]
    fn filling() {
        let q = Cone::orthant(2);
        let cx = split_quadrant(1, 1);
        assert!(cx.fills(&q));
        let half = PolyComplex::from_cone(&h(2, &[&[1, 0], &[1, 1]]));
        assert!(!half.fills(&q));
        assert!(half.fills(&h(2, &[&[1, 0], &[1, 1]])));
        assert!(!PolyComplex::from_cone(&h(2, &[&[1, 1]])).fills(&q));
        assert!(PolyComplex::from_cone(&Cone::orthant(3)).fills(&Cone::orthant(3)));
    }

    #[test]
    fn arrangement_cuts_quadrant() {
        let q = Cone::orthant(2);
        let cells = arrangement_cells(&q, &[rat_vec(&[1, -1]), rat_vec(&[-2, 2]), rat_vec(&[1, 0])]);
        assert_eq!(cells.len(), 2);
    }
}
