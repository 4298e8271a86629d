//! Strata of a normal crossing boundary and the monodromy data attached to
//! them, either as one nilpotent matrix per divisor or as a kernel per stratum.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exactlin::{kernel, quotient_map, RatMatrix, Subspace};

/// A set of divisor indices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
pub struct Stratum(pub Vec<usize>);

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl Stratum {
    pub fn new(mut v: Vec<usize>) -> Stratum {
        v.sort_unstable();
        v.dedup();
        Stratum(v)
    }

    pub fn empty() -> Stratum {
        Stratum(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Stratum) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn is_comparable(&self, other: &Stratum) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    pub fn union(&self, other: &Stratum) -> Stratum {
        Stratum::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &Stratum) -> Stratum {
        Stratum(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    pub fn without(&self, i: usize) -> Stratum {
        Stratum(self.0.iter().copied().filter(|&j| j != i).collect())
    }

    /// Position of divisor `i` among the coordinates of this stratum.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }

    /// All subsets, in increasing size then lexicographic order.
    pub fn subsets(&self) -> Vec<Stratum> {
        let mut out = Vec::new();
        for k in 0..=self.len() {
            out.extend(self.0.iter().copied().combinations(k).map(Stratum));
        }
        out
    }
}

/// The coordinate inclusion `Q^sub -> Q^sup` as a `|sup| x |sub|` matrix.
pub fn inclusion(sub: &Stratum, sup: &Stratum) -> Result<RatMatrix> {
    if !sub.is_subset_of(sup) {
        return Err(Error::NotSubstratum { sub: sub.clone(), sup: sup.clone() });
    }
    let mut m = RatMatrix::zeros(sup.len(), sub.len());
    for (j, &i) in sub.indices().iter().enumerate() {
        m.set(sup.position(i).expect("subset"), j, crate::exactlin::rat(1));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monodromy {
    /// One nilpotent matrix per divisor, all of the same size.
    Matrices(Vec<RatMatrix>),
    /// An explicit kernel per stratum. Strata without an entry inherit
    /// `Ker_I ∩ Q^{I'}` from the first listed superstratum, or are zero.
    Kernels(BTreeMap<Stratum, Subspace>),
}

/// Divisors, the nonempty strata and the monodromy data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratSystem {
    divisors: Vec<String>,
    nonempty: BTreeSet<Stratum>,
    mode: Monodromy,
    kernels: BTreeMap<Stratum, Subspace>,
}

/// The first invariant violation found by [`StratSystem::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    DownwardClosureGap { stratum: Stratum, missing: Stratum },
    NotNilpotent { divisor: usize },
    CommutationFailure { a: usize, b: usize, stratum: Stratum },
    RestrictionMismatch { sub: Stratum, sup: Stratum },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DownwardClosureGap { stratum, missing } => {
                write!(f, "{stratum} is nonempty but its subset {missing} is not")
            }
            Violation::NotNilpotent { divisor } => write!(f, "matrix of divisor {divisor} is not nilpotent"),
            Violation::CommutationFailure { a, b, stratum } => {
                write!(f, "matrices {a} and {b} do not commute on {stratum}")
            }
            Violation::RestrictionMismatch { sub, sup } => {
                write!(f, "kernel of {sub} is not the restriction of the kernel of {sup}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
    /// Strata whose monodromy cone contains a line.
    pub not_pointed: Vec<Stratum>,
    /// Whether every kernel is the restriction of one global kernel.
    pub embeddable: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// A common target for all monodromy cones: `Q^divisors` modulo the sum of
/// all kernels.
#[derive(Clone, Debug)]
pub struct UniversalSpace {
    pub map: RatMatrix,
    pub embeddable: bool,
}

impl StratSystem {
    /// Builds a system after checking shapes; semantic invariants are left to
    /// [`StratSystem::validate`]. The empty stratum and all singletons of
    /// listed strata are added to `nonempty` automatically.
    pub fn new(divisors: Vec<String>, nonempty: Vec<Stratum>, mode: Monodromy) -> Result<StratSystem> {
        let n = divisors.len();
        if divisors.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::Invalid("duplicate divisor names".into()));
        }
        // names are joined with commas in stratum keys and paths use `|`
        if let Some(bad) = divisors.iter().find(|d| d.trim().is_empty() || d.trim() != d.as_str() || d.contains([',', '|'])) {
            return Err(Error::Invalid(format!("divisor name {bad:?} is empty, padded or contains ',' or '|'")));
        }
        let mut ne: BTreeSet<Stratum> = BTreeSet::new();
        ne.insert(Stratum::empty());
        for s in nonempty {
            let s = Stratum::new(s.0);
            if let Some(&bad) = s.indices().iter().find(|&&i| i >= n) {
                return Err(Error::Invalid(format!("divisor index {bad} out of range")));
            }
            for &i in s.indices() {
                ne.insert(Stratum(vec![i]));
            }
            ne.insert(s);
        }
        let kernels = match &mode {
            Monodromy::Matrices(ms) => {
                if ms.len() != n {
                    return Err(Error::Invalid(format!("expected {n} matrices, found {}", ms.len())));
                }
                let d = ms.first().map_or(0, RatMatrix::rows);
                for m in ms {
                    if m.rows() != d || m.cols() != d {
                        return Err(Error::Invalid("matrices must be square of a common size".into()));
                    }
                }
                ne.iter()
                    .map(|s| {
                        let cols: Vec<_> = s.indices().iter().map(|&i| ms[i].flatten()).collect();
                        let k = if s.is_empty() {
                            Subspace::zero(0)
                        } else {
                            kernel(&RatMatrix::from_columns(d * d, &cols))
                        };
                        (s.clone(), k)
                    })
                    .collect()
            }
            Monodromy::Kernels(given) => {
                for (s, k) in given {
                    if !ne.contains(s) {
                        return Err(Error::UnknownStratum(s.clone()));
                    }
                    if k.ambient() != s.len() {
                        return Err(Error::AmbientMismatch { expected: s.len(), found: k.ambient() });
                    }
                }
                let mut out = BTreeMap::new();
                for s in &ne {
                    let k = match given.get(s) {
                        Some(k) => k.clone(),
                        None => match given.iter().find(|(t, _)| s.is_subset_of(t)) {
                            Some((t, kt)) => kt.preimage(&inclusion(s, t)?),
                            None => Subspace::zero(s.len()),
                        },
                    };
                    out.insert(s.clone(), k);
                }
                out
            }
        };
        // kernels left out are inferred, so keep the resolved table to make
        // equal systems compare equal
        let mode = match mode {
            Monodromy::Kernels(_) => Monodromy::Kernels(kernels.clone()),
            m => m,
        };
        Ok(StratSystem { divisors, nonempty: ne, mode, kernels })
    }

    pub fn divisors(&self) -> &[String] {
        &self.divisors
    }

    pub fn mode(&self) -> &Monodromy {
        &self.mode
    }

    pub fn nonempty(&self) -> &BTreeSet<Stratum> {
        &self.nonempty
    }

    pub fn is_nonempty(&self, s: &Stratum) -> bool {
        self.nonempty.contains(s)
    }

    pub fn check(&self, s: &Stratum) -> Result<()> {
        if self.is_nonempty(s) {
            Ok(())
        } else {
            Err(Error::UnknownStratum(s.clone()))
        }
    }

    /// Nonempty strata not contained in another nonempty stratum.
    pub fn maximal_strata(&self) -> Vec<Stratum> {
        self.nonempty
            .iter()
            .filter(|s| !self.nonempty.iter().any(|t| t.len() > s.len() && s.is_subset_of(t)))
            .cloned()
            .collect()
    }

    pub fn divisor_index(&self, name: &str) -> Option<usize> {
        self.divisors.iter().position(|d| d == name)
    }

    /// Parses a comma separated list of divisor names; the empty string is
    /// the empty stratum.
    pub fn parse_stratum(&self, text: &str) -> Result<Stratum> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Stratum::empty());
        }
        let mut v = Vec::new();
        for name in text.split(',') {
            let name = name.trim();
            v.push(
                self.divisor_index(name)
                    .ok_or_else(|| Error::Parse(format!("unknown divisor {name:?}")))?,
            );
        }
        Ok(Stratum::new(v))
    }

    /// Comma separated divisor names.
    pub fn name(&self, s: &Stratum) -> String {
        s.indices().iter().map(|&i| self.divisors[i].as_str()).join(",")
    }

    /// `Ker(λ_I) ⊆ Q^{|I|}`.
    pub fn kernel_of(&self, s: &Stratum) -> Result<&Subspace> {
        self.kernels.get(s).ok_or_else(|| Error::UnknownStratum(s.clone()))
    }

    /// Pairs `(I, J)` of nonempty strata with `I ⊊ J`.
    pub fn adjacency(&self) -> Vec<(Stratum, Stratum)> {
        let mut out = Vec::new();
        for a in &self.nonempty {
            for b in &self.nonempty {
                if a.len() < b.len() && a.is_subset_of(b) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            violation: self.first_violation(),
            not_pointed: self
                .nonempty
                .iter()
                .filter(|s| !self.monodromy_cone(s).is_pointed())
                .cloned()
                .collect(),
            embeddable: self.universal().embeddable,
        }
    }

    fn first_violation(&self) -> Option<Violation> {
        for s in &self.nonempty {
            for &i in s.indices() {
                let t = s.without(i);
                if !self.nonempty.contains(&t) {
                    return Some(Violation::DownwardClosureGap { stratum: s.clone(), missing: t });
                }
            }
        }
        match &self.mode {
            Monodromy::Matrices(ms) => {
                for (i, m) in ms.iter().enumerate() {
                    if !m.pow(m.rows() as u32).is_zero() {
                        return Some(Violation::NotNilpotent { divisor: i });
                    }
                }
                for s in &self.nonempty {
                    for (a, b) in s.indices().iter().tuple_combinations() {
                        if ms[*a].mul(&ms[*b]) != ms[*b].mul(&ms[*a]) {
                            return Some(Violation::CommutationFailure { a: *a, b: *b, stratum: s.clone() });
                        }
                    }
                }
            }
            Monodromy::Kernels(_) => {
                for sup in &self.nonempty {
                    for sub in &self.nonempty {
                        if sub.len() < sup.len() && sub.is_subset_of(sup) {
                            let incl = inclusion(sub, sup).expect("subset");
                            if self.kernels[sub] != self.kernels[sup].preimage(&incl) {
                                return Some(Violation::RestrictionMismatch {
                                    sub: sub.clone(),
                                    sup: sup.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// The quotient map `Q^{|I|} -> Q^{|I|}/Ker_I` in fixed coordinates.
    pub fn projection(&self, s: &Stratum) -> Result<RatMatrix> {
        quotient_map(s.len(), self.kernel_of(s)?)
    }

    /// The image of the orthant under [`StratSystem::projection`].
    pub fn monodromy_cone(&self, s: &Stratum) -> Cone {
        let p = self.projection(s).expect("known stratum");
        Cone::orthant(s.len()).image(&p).expect("shape")
    }

    /// `Q^divisors / Σ_I Ker_I`, and whether each `Ker_I` is recovered as the
    /// restriction of that sum.
    pub fn universal(&self) -> UniversalSpace {
        let n = self.divisors.len();
        let all = Stratum((0..n).collect());
        let mut vecs = Vec::new();
        for (s, k) in &self.kernels {
            let incl = inclusion(s, &all).expect("subset");
            vecs.extend(k.basis().iter().map(|b| incl.apply(b)));
        }
        let sum = Subspace::span(n, &vecs);
        let embeddable = self.kernels.iter().all(|(s, k)| {
            let incl = inclusion(s, &all).expect("subset");
            sum.preimage(&incl) == *k
        });
        UniversalSpace { map: quotient_map(n, &sum).expect("shape"), embeddable }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat_vec;

    fn jordan() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, 1], &[0, 0]])
    }

    fn st(v: &[usize]) -> Stratum {
        Stratum::new(v.to_vec())
    }

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn equal_jordan_blocks_are_valid() {
        let s = StratSystem::new(names(2), vec![st(&[0, 1])], Monodromy::Matrices(vec![jordan(), jordan()]))
            .unwrap();
        let r = s.validate();
        assert!(r.is_valid());
        assert!(r.not_pointed.is_empty());
        assert_eq!(s.kernel_of(&st(&[0])).unwrap().dim(), 0);
        let k = s.kernel_of(&st(&[0, 1])).unwrap();
        assert_eq!(k, &Subspace::span(2, &[rat_vec(&[1, -1])]));
    }

    #[test]
    fn non_commuting_detected() {
        let a = jordan();
        let b = RatMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        let s = StratSystem::new(names(2), vec![st(&[0, 1])], Monodromy::Matrices(vec![a, b])).unwrap();
        assert!(matches!(
            s.validate().violation,
            Some(Violation::NotNilpotent { .. }) | Some(Violation::CommutationFailure { .. })
        ));
        let c = RatMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let d = RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let e = RatMatrix::from_i64(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let s = StratSystem::new(names(2), vec![st(&[0, 1])], Monodromy::Matrices(vec![d.add(&c), e]))
            .unwrap();
        assert_eq!(
            s.validate().violation,
            Some(Violation::CommutationFailure { a: 0, b: 1, stratum: st(&[0, 1]) })
        );
    }

    #[test]
    fn kernel_restriction_mismatch() {
        let given = BTreeMap::from([
            (st(&[0]), Subspace::full(1)),
            (st(&[0, 1]), Subspace::zero(2)),
        ]);
        let s = StratSystem::new(names(2), vec![st(&[0, 1])], Monodromy::Kernels(given)).unwrap();
        assert_eq!(
            s.validate().violation,
            Some(Violation::RestrictionMismatch { sub: st(&[0]), sup: st(&[0, 1]) })
        );
    }

    #[test]
    fn downward_closure_gap() {
        let given = BTreeMap::new();
        let mut s = StratSystem::new(names(3), vec![st(&[0, 1, 2])], Monodromy::Kernels(given)).unwrap();
        assert!(matches!(s.validate().violation, Some(Violation::DownwardClosureGap { .. })));
        s.nonempty.extend([st(&[0, 1]), st(&[0, 2]), st(&[1, 2])]);
        s.kernels.extend([st(&[0, 1]), st(&[0, 2]), st(&[1, 2])].map(|t| (t, Subspace::zero(2))));
        assert!(s.validate().is_valid());
    }

    #[test]
    fn adjacency_of_boolean_lattice() {
        let s = StratSystem::new(names(3), vec![st(&[0, 1, 2])], Monodromy::Kernels(BTreeMap::new())).unwrap();
        assert_eq!(s.nonempty().len(), 4 + 1);
        let full = StratSystem::new(
            names(3),
            st(&[0, 1, 2]).subsets(),
            Monodromy::Kernels(BTreeMap::new()),
        )
        .unwrap();
        assert_eq!(full.adjacency().len(), 19);
        let chain = StratSystem::new(names(2), vec![st(&[0]), st(&[1])], Monodromy::Kernels(BTreeMap::new()))
            .unwrap();
        assert!(!chain.adjacency().contains(&(st(&[0]), st(&[1]))));
    }

    #[test]
    fn matrices_mode_kernels_restrict() {
        let n1 = RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let n2 = RatMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let n3 = n1.add(&n2);
        let s = StratSystem::new(names(3), st(&[0, 1, 2]).subsets(), Monodromy::Matrices(vec![n1, n2, n3]))
            .unwrap();
        let r = s.validate();
        assert!(r.is_valid());
        assert!(r.embeddable);
        let k = s.kernel_of(&st(&[0, 1, 2])).unwrap();
        assert_eq!(k, &Subspace::span(3, &[rat_vec(&[1, 1, -1])]));
        for (sub, sup) in s.adjacency() {
            let incl = inclusion(&sub, &sup).unwrap();
            assert_eq!(s.kernel_of(&sup).unwrap().preimage(&incl), *s.kernel_of(&sub).unwrap());
        }
    }

    #[test]
    fn parse_and_name() {
        let s = StratSystem::new(
            vec!["x".into(), "y".into()],
            vec![st(&[0, 1])],
            Monodromy::Kernels(BTreeMap::new()),
        )
        .unwrap();
        let t = s.parse_stratum("y, x").unwrap();
        assert_eq!(t, st(&[0, 1]));
        assert_eq!(s.name(&t), "x,y");
        assert!(s.parse_stratum("z").is_err());
    }
}
