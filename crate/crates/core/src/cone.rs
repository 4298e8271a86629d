//! Closed rational polyhedral cones.
//!
//! A [`Cone`] is held in canonical form: the lineality space as an echelon
//! [`Subspace`], plus the primitive integer extreme rays of the pointed part,
//! taken orthogonal to the lineality space and sorted. Two cones are equal iff
//! their canonical forms are equal. Facet inequalities are cached alongside.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{
    dot, int_to_rat, is_zero_vec, kernel, neg, primitive, Rat, RatMatrix, Subspace,
};

#[derive(Clone, Debug)]
pub struct Cone {
    ambient: usize,
    lineality: Subspace,
    rays: Vec<Vec<BigInt>>,
    span: Subspace,
    equations: Vec<Vec<Rat>>,
    facets: Vec<Vec<Rat>>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.lineality == other.lineality && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.lineality.hash(state);
        self.rays.hash(state);
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim(), &self.lineality, &self.rays).cmp(&(
            other.ambient,
            other.dim(),
            &other.lineality,
            &other.rays,
        ))
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self
            .rays
            .iter()
            .map(|r| format!("({})", r.iter().map(ToString::to_string).join(",")))
            .collect();
        write!(f, "cone[{}", rays.join(" "))?;
        if !self.lineality.is_zero() {
            write!(f, "; lin dim {}", self.lineality.dim())?;
        }
        write!(f, "]")
    }
}

fn check_len(ambient: usize, v: &[Rat]) -> Result<()> {
    if v.len() != ambient {
        return Err(Error::AmbientMismatch { expected: ambient, found: v.len() });
    }
    Ok(())
}

fn sign_profile(f: &[Rat], gens: &[Vec<Rat>]) -> (bool, bool) {
    let mut pos = false;
    let mut negv = false;
    for g in gens {
        let s = dot(f, g);
        if s.is_positive() {
            pos = true;
        } else if s.is_negative() {
            negv = true;
        }
        if pos && negv {
            break;
        }
    }
    (pos, negv)
}

fn dedup_directions(vs: impl IntoIterator<Item = Vec<Rat>>) -> Vec<Vec<Rat>> {
    let set: BTreeSet<Vec<BigInt>> = vs
        .into_iter()
        .filter(|v| !is_zero_vec(v))
        .map(|v| primitive(&v))
        .collect();
    set.into_iter().map(|v| int_to_rat(&v)).collect()
}

impl Cone {
    pub fn zero(ambient: usize) -> Cone {
        Cone {
            ambient,
            lineality: Subspace::zero(ambient),
            rays: Vec::new(),
            span: Subspace::zero(ambient),
            equations: Subspace::full(ambient).basis().to_vec(),
            facets: Vec::new(),
        }
    }

    /// The nonnegative orthant `Q^n_{>=0}`.
    pub fn orthant(n: usize) -> Cone {
        Cone::hull_unchecked(n, RatMatrix::identity(n).row_vecs())
    }

    /// Nonnegative hull of `vectors`. An empty list gives the zero cone.
    pub fn hull(ambient: usize, vectors: &[Vec<Rat>]) -> Result<Cone> {
        for v in vectors {
            check_len(ambient, v)?;
        }
        Ok(Cone::hull_unchecked(ambient, vectors.to_vec()))
    }

    pub fn hull_i64(ambient: usize, vectors: &[&[i64]]) -> Result<Cone> {
        let vs: Vec<Vec<Rat>> = vectors.iter().map(|v| crate::exactlin::rat_vec(v)).collect();
        Cone::hull(ambient, &vs)
    }

    pub(crate) fn hull_unchecked(ambient: usize, vectors: Vec<Vec<Rat>>) -> Cone {
        let gens = dedup_directions(vectors);
        if gens.is_empty() {
            return Cone::zero(ambient);
        }
        let span = Subspace::span(ambient, &gens);
        let d = span.dim();
        let basis = span.basis_matrix();
        let basis_t = basis.transpose();
        let mut facets: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for combo in (0..gens.len()).combinations(d - 1) {
            let t = RatMatrix::from_rows(ambient, combo.iter().map(|&i| gens[i].clone()).collect());
            let m = t.mul(&basis_t);
            let ker = kernel(&m);
            if ker.dim() != 1 {
                continue;
            }
            let f = basis_t.apply(&ker.basis()[0]);
            match sign_profile(&f, &gens) {
                (true, false) => {
                    facets.insert(primitive(&f));
                }
                (false, true) => {
                    facets.insert(primitive(&neg(&f)));
                }
                _ => {}
            }
        }
        let facets: Vec<Vec<Rat>> = facets.iter().map(|f| int_to_rat(f)).collect();
        let equations = span.orthogonal_complement().basis().to_vec();
        let mut rows = equations.clone();
        rows.extend(facets.iter().cloned());
        let lineality = kernel(&RatMatrix::from_rows(ambient, rows));
        let pointed_dim = d - lineality.dim();
        let projector = if lineality.is_zero() {
            None
        } else {
            Some(lineality.orthogonal_complement().orthogonal_projector())
        };
        let mut rays: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for g in &gens {
            let p = match &projector {
                Some(pr) => pr.apply(g),
                None => g.clone(),
            };
            if is_zero_vec(&p) {
                continue;
            }
            let tight: Vec<Vec<Rat>> =
                facets.iter().filter(|f| dot(f, g).is_zero()).cloned().collect();
            let rank = if tight.is_empty() {
                0
            } else {
                RatMatrix::from_rows(ambient, tight).rank()
            };
            if rank + 1 == pointed_dim {
                rays.insert(primitive(&p));
            }
        }
        Cone {
            ambient,
            lineality,
            rays: rays.into_iter().collect(),
            span,
            equations,
            facets,
        }
    }

    /// The cone `{x : e x = 0 for e in equations, f x >= 0 for f in inequalities}`.
    pub fn from_inequalities(
        ambient: usize,
        equations: &[Vec<Rat>],
        inequalities: &[Vec<Rat>],
    ) -> Result<Cone> {
        for v in equations.iter().chain(inequalities) {
            check_len(ambient, v)?;
        }
        Ok(Cone::from_inequalities_unchecked(ambient, equations, inequalities))
    }

    pub(crate) fn from_inequalities_unchecked(
        ambient: usize,
        equations: &[Vec<Rat>],
        inequalities: &[Vec<Rat>],
    ) -> Cone {
        let ineqs = dedup_directions(inequalities.iter().cloned());
        let mut rows = equations.to_vec();
        rows.extend(ineqs.iter().cloned());
        let lineality = kernel(&RatMatrix::from_rows(ambient, rows));
        let mut rows = equations.to_vec();
        rows.extend(lineality.basis().iter().cloned());
        let pointed = kernel(&RatMatrix::from_rows(ambient, rows));
        let p = pointed.dim();
        let mut gens: Vec<Vec<Rat>> = Vec::new();
        if p > 0 {
            let vb_t = pointed.basis_matrix().transpose();
            // inequalities in coordinates of the pointed complement
            let restricted: Vec<Vec<Rat>> = ineqs
                .iter()
                .map(|f| vb_t.transpose().apply(f))
                .filter(|f| !is_zero_vec(f))
                .collect();
            let restricted = dedup_directions(restricted);
            let mut found: BTreeSet<Vec<BigInt>> = BTreeSet::new();
            for combo in (0..restricted.len()).combinations(p - 1) {
                let m = RatMatrix::from_rows(p, combo.iter().map(|&i| restricted[i].clone()).collect());
                let ker = kernel(&m);
                if ker.dim() != 1 {
                    continue;
                }
                let y = ker.basis()[0].clone();
                match sign_profile(&y, &restricted) {
                    (true, false) => {
                        found.insert(primitive(&vb_t.apply(&y)));
                    }
                    (false, true) => {
                        found.insert(primitive(&neg(&vb_t.apply(&y))));
                    }
                    _ => {}
                }
            }
            gens.extend(found.iter().map(|r| int_to_rat(r)));
        }
        for b in lineality.basis() {
            gens.push(b.clone());
            gens.push(neg(b));
        }
        Cone::hull_unchecked(ambient, gens)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn lineality(&self) -> &Subspace {
        &self.lineality
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    /// Primitive integer extreme rays (of the pointed part).
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn rays_rat(&self) -> Vec<Vec<Rat>> {
        self.rays.iter().map(|r| int_to_rat(r)).collect()
    }

    /// Inward facet normals, each a primitive functional lying in the span.
    pub fn facets(&self) -> &[Vec<Rat>] {
        &self.facets
    }

    /// A basis of the orthogonal complement of the span.
    pub fn equations(&self) -> &[Vec<Rat>] {
        &self.equations
    }

    /// Rays together with plus/minus a basis of the lineality space.
    pub fn generators(&self) -> Vec<Vec<Rat>> {
        let mut g = self.rays_rat();
        for b in self.lineality.basis() {
            g.push(b.clone());
            g.push(neg(b));
        }
        g
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        check_len(self.ambient, v)?;
        Ok(self.contains_unchecked(v))
    }

    pub(crate) fn contains_unchecked(&self, v: &[Rat]) -> bool {
        self.span.contains(v) && self.facets.iter().all(|f| !dot(f, v).is_negative())
    }

    pub fn relint_contains(&self, v: &[Rat]) -> Result<bool> {
        check_len(self.ambient, v)?;
        Ok(self.relint_contains_unchecked(v))
    }

    pub(crate) fn relint_contains_unchecked(&self, v: &[Rat]) -> bool {
        self.span.contains(v) && self.facets.iter().all(|f| dot(f, v).is_positive())
    }

    /// A point of the relative interior (the sum of the extreme rays).
    pub fn interior_point(&self) -> Vec<Rat> {
        let mut p = vec![Rat::zero(); self.ambient];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += Rat::from_integer(y.clone());
            }
        }
        p
    }

    /// `other ⊆ self`.
    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(self.contains_cone_unchecked(other))
    }

    pub(crate) fn contains_cone_unchecked(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains_unchecked(g))
    }

    /// `relint(other) ⊆ relint(self)`.
    pub fn relint_contains_cone(&self, other: &Cone) -> bool {
        self.contains_cone_unchecked(other) && self.relint_contains_unchecked(&other.interior_point())
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.same_ambient(other)?;
        Ok(self.intersect_unchecked(other))
    }

    pub(crate) fn intersect_unchecked(&self, other: &Cone) -> Cone {
        if self == other {
            return self.clone();
        }
        if self.contains_cone_unchecked(other) {
            return other.clone();
        }
        if other.contains_cone_unchecked(self) {
            return self.clone();
        }
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        Cone::from_inequalities_unchecked(self.ambient, &eqs, &ineqs)
    }

    /// Image under the linear map `m : Q^ambient -> Q^rows`.
    pub fn image(&self, m: &RatMatrix) -> Result<Cone> {
        if m.cols() != self.ambient {
            return Err(Error::AmbientMismatch { expected: self.ambient, found: m.cols() });
        }
        Ok(Cone::hull_unchecked(m.rows(), self.generators().iter().map(|g| m.apply(g)).collect()))
    }

    /// `{x : m x ∈ self}` for `m : Q^cols -> Q^ambient`.
    pub fn preimage(&self, m: &RatMatrix) -> Result<Cone> {
        if m.rows() != self.ambient {
            return Err(Error::AmbientMismatch { expected: self.ambient, found: m.rows() });
        }
        let mt = m.transpose();
        let eqs: Vec<Vec<Rat>> = self.equations.iter().map(|e| mt.apply(e)).collect();
        let ineqs: Vec<Vec<Rat>> = self.facets.iter().map(|f| mt.apply(f)).collect();
        Ok(Cone::from_inequalities_unchecked(m.cols(), &eqs, &ineqs))
    }

    /// Intersection with the hyperplanes of the given facet functionals.
    fn face_cut(&self, tight: &[&Vec<Rat>]) -> Cone {
        let mut gens: Vec<Vec<Rat>> = self
            .rays_rat()
            .into_iter()
            .filter(|r| tight.iter().all(|f| dot(f, r).is_zero()))
            .collect();
        for b in self.lineality.basis() {
            gens.push(b.clone());
            gens.push(neg(b));
        }
        Cone::hull_unchecked(self.ambient, gens)
    }

    /// The facets as cones.
    pub fn facet_cones(&self) -> Vec<Cone> {
        self.facets.iter().map(|f| self.face_cut(&[f])).collect()
    }

    /// Every face, including the cone itself and its minimal face, sorted.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if seen.contains(&c) {
                continue;
            }
            stack.extend(c.facet_cones());
            seen.insert(c);
        }
        seen.into_iter().collect()
    }

    /// The smallest face of `self` containing `other`, if `other ⊆ self`.
    pub fn minimal_face_containing(&self, other: &Cone) -> Option<Cone> {
        if !self.contains_cone_unchecked(other) {
            return None;
        }
        let gens = other.generators();
        let tight: Vec<&Vec<Rat>> = self
            .facets
            .iter()
            .filter(|f| gens.iter().all(|g| dot(f, g).is_zero()))
            .collect();
        Some(self.face_cut(&tight))
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(other.minimal_face_containing(self).is_some_and(|f| &f == self))
    }

    fn same_ambient(&self, other: &Cone) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, rat_vec};

    fn h(n: usize, vs: &[&[i64]]) -> Cone {
        Cone::hull_i64(n, vs).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn quadrant_has_two_rays() {
        let q = h(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(q.rays(), &[ints(&[0, 1]), ints(&[1, 0])][..]);
        assert_eq!(q.dim(), 2);
        assert!(q.is_pointed());
    }

    #[test]
    fn opposite_rays_give_a_line() {
        let l = h(1, &[&[1], &[-1]]);
        assert_eq!(l.lineality().dim(), 1);
        assert!(l.rays().is_empty());
        assert!(l.facets().is_empty());
    }

    #[test]
    fn redundant_generator_dropped() {
        let q = h(2, &[&[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(q, h(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(q.rays().len(), 2);
    }

    #[test]
    fn empty_hull_is_zero_cone() {
        let z = Cone::hull(3, &[]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, Cone::zero(3));
        assert!(Cone::hull(2, &[rat_vec(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn images() {
        let q = Cone::orthant(2);
        assert_eq!(q.image(&RatMatrix::identity(2)).unwrap(), q);
        let r = q.image(&RatMatrix::from_i64(&[&[1, 1]])).unwrap();
        assert_eq!(r, h(1, &[&[1]]));
        assert!(q.image(&RatMatrix::zeros(2, 2)).unwrap().is_zero());
        assert!(q.image(&RatMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn intersections() {
        let a = h(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let b = h(2, &[&[0, 1], &[-1, 0]]);
        assert_eq!(a.intersect(&b).unwrap(), h(2, &[&[0, 1]]));
        let e1 = h(2, &[&[1, 0]]);
        let e2 = h(2, &[&[0, 1]]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert!(a.intersect(&Cone::zero(3)).is_err());
    }

    #[test]
    fn face_counts() {
        assert_eq!(h(2, &[&[1, 1]]).faces().len(), 2);
        assert_eq!(Cone::orthant(2).faces().len(), 4);
        let sq = h(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(sq.rays().len(), 4);
        assert_eq!(sq.faces().len(), 10);
        for f in sq.faces() {
            assert!(f.is_face_of(&sq).unwrap());
        }
        assert!(Cone::zero(3).is_face_of(&sq).unwrap());
        assert!(!h(3, &[&[0, 0, 1]]).is_face_of(&sq).unwrap());
    }

    #[test]
    fn relative_interior() {
        let q = Cone::orthant(2);
        assert!(q.relint_contains(&rat_vec(&[1, 1])).unwrap());
        assert!(!q.relint_contains(&rat_vec(&[1, 0])).unwrap());
        assert!(q.contains(&rat_vec(&[1, 0])).unwrap());
        let z = Cone::zero(2);
        assert!(z.relint_contains(&rat_vec(&[0, 0])).unwrap());
    }

    #[test]
    fn preimage_of_ray() {
        let m = RatMatrix::from_i64(&[&[1, 1]]);
        let ray = h(1, &[&[1]]);
        let pre = ray.preimage(&m).unwrap();
        assert_eq!(pre.dim(), 2);
        assert_eq!(pre.lineality().dim(), 1);
        assert!(pre.contains(&[rat(3), rat(-2)]).unwrap());
        assert!(!pre.contains(&[rat(-3), rat(2)]).unwrap());
    }

    #[test]
    fn half_plane_canonical_form() {
        let hp = h(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(hp.lineality().dim(), 1);
        assert_eq!(hp.rays(), &[ints(&[0, 1])][..]);
        let hp2 = h(2, &[&[2, 5], &[-3, 0], &[3, 0]]);
        assert_eq!(hp, hp2);
    }
}
