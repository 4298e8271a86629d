//! Bundled stratifications.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{rat, rat_vec, RatMatrix, Subspace};
use crate::strata::{Monodromy, StratSystem, Stratum};

pub const NAMES: &[&str] = &["boolean-2", "boolean-3", "dependent-triple", "equal-pair", "hosono-takagi"];

pub fn fixture(name: &str) -> Result<StratSystem> {
    match name {
        "boolean-2" => Ok(boolean(2)),
        "boolean-3" => Ok(boolean(3)),
        "dependent-triple" => Ok(dependent_triple()),
        "equal-pair" => Ok(equal_pair()),
        "hosono-takagi" => Ok(hosono_takagi()),
        _ => Err(Error::Invalid(format!("unknown fixture {name:?}; known: {}", NAMES.join(", ")))),
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// `n` divisors meeting in one point, trivial kernels.
pub fn boolean(n: usize) -> StratSystem {
    StratSystem::new(names("D", n), Stratum((0..n).collect()).subsets(), Monodromy::Kernels(BTreeMap::new()))
        .expect("well formed")
}

/// `N_3 = N_1 + N_2` on `Q^3`, all three divisors meeting.
pub fn dependent_triple() -> StratSystem {
    let n1 = RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
    let n2 = RatMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
    let n3 = n1.add(&n2);
    StratSystem::new(names("D", 3), Stratum(vec![0, 1, 2]).subsets(), Monodromy::Matrices(vec![n1, n2, n3]))
        .expect("well formed")
}

/// Two divisors with the same monodromy logarithm.
pub fn equal_pair() -> StratSystem {
    let j = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]);
    StratSystem::new(names("D", 2), vec![Stratum(vec![0, 1])], Monodromy::Matrices(vec![j.clone(), j]))
        .expect("well formed")
}

/// Expected monodromy cone dimensions of the Hosono–Takagi boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub label: String,
    pub stratum: Stratum,
    pub dim: usize,
}

fn divisor(s: &StratSystem, name: &str) -> usize {
    s.divisor_index(name).expect("fixture divisor")
}

/// The boundary of the Hosono–Takagi family after resolving the three
/// order five tangencies of the quintic `C` with the coordinate lines:
/// `D0, D1, D2, C`, a chain `Ei.1 - ... - Ei.5` over each tangency with
/// `Di` and `C` meeting `Ei.5`, and the six nodes of `C`. A node is a
/// crossing of two branches of `C`; the second branch of node `j` is the
/// divisor `C~j`. Only the dimensions of the monodromy cones are known, so
/// the data is given by kernels: the two coordinate lines through a point,
/// `Di ∩ Ei.5`, and the nodes have two dimensional cones; every other
/// stratum meeting an exceptional divisor has a one dimensional cone.
pub fn hosono_takagi() -> StratSystem {
    let mut divisors: Vec<String> = vec!["D0".into(), "D1".into(), "D2".into(), "C".into()];
    for i in 0..3 {
        for k in 1..=5 {
            divisors.push(format!("E{i}.{k}"));
        }
    }
    for j in 1..=6 {
        divisors.push(format!("C~{j}"));
    }
    let idx = |name: &str| divisors.iter().position(|d| d == name).expect("listed");
    let mut strata = Vec::new();
    let mut kernels = BTreeMap::new();
    let line = |a: usize, b: usize| {
        let s = Stratum::new(vec![a, b]);
        let (x, y) = (s.position(a).expect("member"), s.position(b).expect("member"));
        let mut v = rat_vec(&[0, 0]);
        v[x] = rat(1);
        v[y] = rat(-1);
        (s, Subspace::span(2, &[v]))
    };
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        strata.push(Stratum::new(vec![a, b]));
    }
    for i in 0..3 {
        let top = idx(&format!("E{i}.5"));
        strata.push(Stratum::new(vec![i, top]));
        let (s, k) = line(idx("C"), top);
        strata.push(s.clone());
        kernels.insert(s, k);
        for k in 1..5 {
            let (s, kern) = line(idx(&format!("E{i}.{k}")), idx(&format!("E{i}.{}", k + 1)));
            strata.push(s.clone());
            kernels.insert(s, kern);
        }
    }
    for j in 1..=6 {
        strata.push(Stratum::new(vec![idx("C"), idx(&format!("C~{j}"))]));
    }
    StratSystem::new(divisors, strata, Monodromy::Kernels(kernels)).expect("well formed")
}

/// Cone dimensions of [`hosono_takagi`]: `σ_x, σ_y, σ_z` at the coordinate
/// points, `σ_0, σ_1, σ_2` where `Di` meets `Ei.5`, `τ_1..τ_6` at the
/// nodes, and the exceptional cones.
pub fn hosono_takagi_census(s: &StratSystem) -> Vec<CensusEntry> {
    let st = |names: &[&str]| Stratum::new(names.iter().map(|n| divisor(s, n)).collect());
    let mut out = Vec::new();
    let mut push = |label: String, stratum: Stratum, dim: usize| out.push(CensusEntry { label, stratum, dim });
    push("sigma_x".into(), st(&["D1", "D2"]), 2);
    push("sigma_y".into(), st(&["D0", "D2"]), 2);
    push("sigma_z".into(), st(&["D0", "D1"]), 2);
    for i in 0..3 {
        push(format!("sigma_{i}"), st(&[&format!("D{i}"), &format!("E{i}.5")]), 2);
    }
    for j in 1..=6 {
        push(format!("tau_{j}"), st(&["C", &format!("C~{j}")]), 2);
    }
    for i in 0..3 {
        for k in 1..=5 {
            push(format!("E{i}.{k}"), st(&[&format!("E{i}.{k}")]), 1);
        }
        for k in 1..5 {
            push(format!("E{i}.{k}/E{i}.{}", k + 1), st(&[&format!("E{i}.{k}"), &format!("E{i}.{}", k + 1)]), 1);
        }
        push(format!("C/E{i}.5"), st(&["C", &format!("E{i}.5")]), 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_validate() {
        for name in NAMES {
            let r = fixture(name).unwrap().validate();
            assert!(r.is_valid(), "{name}: {r:?}");
        }
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn census_matches_cone_dimensions() {
        let s = hosono_takagi();
        assert_eq!(s.divisors().len(), 25);
        for e in hosono_takagi_census(&s) {
            assert_eq!(s.monodromy_cone(&e.stratum).dim(), e.dim, "{}", e.label);
        }
    }
}
