//! Combinatorial monodromy cones and the adjacent maps between them.

use std::collections::BTreeMap;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exactlin::{quotient_section, RatMatrix};
use crate::strata::{inclusion, StratSystem, Stratum};

/// The image of the orthant `Q^{|I|}_{>=0}` in `Q^{|I|}/Ker_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cmc {
    stratum: Stratum,
    proj: RatMatrix,
    section: RatMatrix,
    cone: Cone,
}

impl Cmc {
    pub fn stratum(&self) -> &Stratum {
        &self.stratum
    }

    /// Dimension of the quotient space.
    pub fn ambient(&self) -> usize {
        self.proj.rows()
    }

    pub fn proj(&self) -> &RatMatrix {
        &self.proj
    }

    /// A right inverse of `proj`.
    pub fn section(&self) -> &RatMatrix {
        &self.section
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }
}

pub fn build_cmc(s: &StratSystem, stratum: &Stratum) -> Result<Cmc> {
    let k = s.kernel_of(stratum)?;
    let proj = s.projection(stratum)?;
    let section = quotient_section(stratum.len(), k)?;
    let cone = Cone::orthant(stratum.len()).image(&proj)?;
    Ok(Cmc { stratum: stratum.clone(), proj, section, cone })
}

/// The map `ξ : Q^{I'}/Ker_{I'} -> Q^I/Ker_I` induced by the coordinate
/// inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacentMap {
    from: Stratum,
    to: Stratum,
    matrix: RatMatrix,
}

impl AdjacentMap {
    pub fn from(&self) -> &Stratum {
        &self.from
    }

    pub fn to(&self) -> &Stratum {
        &self.to
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }
}

fn adjacent_between(from: &Cmc, to: &Cmc) -> Result<AdjacentMap> {
    let incl = inclusion(&from.stratum, &to.stratum)?;
    Ok(AdjacentMap {
        from: from.stratum.clone(),
        to: to.stratum.clone(),
        matrix: to.proj.mul(&incl).mul(&from.section),
    })
}

pub fn adjacent_map(s: &StratSystem, sub: &Stratum, sup: &Stratum) -> Result<AdjacentMap> {
    if !sub.is_subset_of(sup) {
        return Err(Error::NotSubstratum { sub: sub.clone(), sup: sup.clone() });
    }
    adjacent_between(&build_cmc(s, sub)?, &build_cmc(s, sup)?)
}

/// `b ∘ a`.
pub fn compose_adjacent(a: &AdjacentMap, b: &AdjacentMap) -> Result<AdjacentMap> {
    if a.to != b.from {
        return Err(Error::ChainMismatch(a.to.clone(), b.from.clone()));
    }
    Ok(AdjacentMap { from: a.from.clone(), to: b.to.clone(), matrix: b.matrix.mul(&a.matrix) })
}

/// All monodromy cones of a system, with adjacent maps and their left
/// inverses computed on demand.
#[derive(Clone, Debug)]
pub struct CmcTable {
    cmcs: BTreeMap<Stratum, Cmc>,
}

impl CmcTable {
    pub fn new(s: &StratSystem) -> Result<CmcTable> {
        let cmcs = s
            .nonempty()
            .iter()
            .map(|t| Ok((t.clone(), build_cmc(s, t)?)))
            .collect::<Result<_>>()?;
        Ok(CmcTable { cmcs })
    }

    pub fn get(&self, s: &Stratum) -> Result<&Cmc> {
        self.cmcs.get(s).ok_or_else(|| Error::UnknownStratum(s.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Stratum, &Cmc)> {
        self.cmcs.iter()
    }

    pub fn adjacent(&self, sub: &Stratum, sup: &Stratum) -> Result<AdjacentMap> {
        adjacent_between(self.get(sub)?, self.get(sup)?)
    }

    /// `ξ_{sup,sub}` and a left inverse of it.
    pub fn adjacent_with_inverse(&self, sub: &Stratum, sup: &Stratum) -> Result<(RatMatrix, RatMatrix)> {
        let m = self.adjacent(sub, sup)?.matrix;
        let inv = m
            .left_inverse()
            .ok_or_else(|| Error::CheckFailed(format!("adjacent map {sub} -> {sup} is not injective")))?;
        Ok((m, inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat_vec;
    use crate::strata::Monodromy;

    fn st(v: &[usize]) -> Stratum {
        Stratum::new(v.to_vec())
    }

    fn three() -> StratSystem {
        let n1 = RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let n2 = RatMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let n3 = n1.add(&n2);
        StratSystem::new(
            vec!["1".into(), "2".into(), "3".into()],
            st(&[0, 1, 2]).subsets(),
            Monodromy::Matrices(vec![n1, n2, n3]),
        )
        .unwrap()
    }

    #[test]
    fn cone_of_dependent_triple() {
        let s = three();
        let c = build_cmc(&s, &st(&[0, 1, 2])).unwrap();
        assert_eq!(c.ambient(), 2);
        assert_eq!(c.cone(), &Cone::orthant(2));
        let e3 = c.proj().apply(&rat_vec(&[0, 0, 1]));
        assert_eq!(e3, rat_vec(&[1, 1]));
        assert!(c.cone().relint_contains(&e3).unwrap());
        let single = build_cmc(&s, &st(&[1])).unwrap();
        assert_eq!(single.cone(), &Cone::orthant(1));
    }

    #[test]
    fn adjacent_maps() {
        let s = three();
        let m = adjacent_map(&s, &st(&[2]), &st(&[0, 1, 2])).unwrap();
        assert_eq!(m.matrix().apply(&rat_vec(&[1])), rat_vec(&[1, 1]));
        let id = adjacent_map(&s, &st(&[0, 1]), &st(&[0, 1])).unwrap();
        assert_eq!(id.matrix(), &RatMatrix::identity(2));
        assert!(adjacent_map(&s, &st(&[0, 1]), &st(&[0])).is_err());
        let a = adjacent_map(&s, &st(&[0]), &st(&[0, 1])).unwrap();
        let b = adjacent_map(&s, &st(&[0, 1]), &st(&[0, 1, 2])).unwrap();
        let direct = adjacent_map(&s, &st(&[0]), &st(&[0, 1, 2])).unwrap();
        assert_eq!(compose_adjacent(&a, &b).unwrap(), direct);
        assert!(matches!(compose_adjacent(&b, &a), Err(Error::ChainMismatch(..))));
        assert_eq!(compose_adjacent(&a, &id).unwrap(), a);
    }

    #[test]
    fn equal_matrices_identify_rays() {
        let j = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let s = StratSystem::new(
            vec!["1".into(), "2".into()],
            vec![st(&[0, 1])],
            Monodromy::Matrices(vec![j.clone(), j]),
        )
        .unwrap();
        let c = build_cmc(&s, &st(&[0, 1])).unwrap();
        assert_eq!(c.ambient(), 1);
        assert_eq!(c.cone(), &Cone::orthant(1));
    }
}
