//! JSON documents for systems, cones, complexes and fans. Rationals are
//! written as strings `"p/q"`; on input plain integers are accepted too.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cmcx::Cmcx;
use crate::complexes::{validate_complex, PolyComplex};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exactlin::{format_rat, int_to_rat, neg, parse_rat, Rat, RatMatrix, Subspace};
use crate::fan::{CellWitness, NewRay, RefinedFan};
use crate::strata::{Monodromy, StratSystem, Stratum};

/// A rational number in a JSON document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rat);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Q(Rat::from_integer(n.into()))),
            Raw::Text(t) => parse_rat(&t).map(Q).map_err(serde::de::Error::custom),
        }
    }
}

fn qs(v: &[Rat]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

fn rats(v: &[Q]) -> Vec<Rat> {
    v.iter().map(|q| q.0.clone()).collect()
}

pub fn matrix_to_doc(m: &RatMatrix) -> Vec<Vec<Q>> {
    m.row_vecs().iter().map(|r| qs(r)).collect()
}

/// Rows of a matrix; `cols` is needed when there are no rows.
pub fn matrix_from_doc(rows: &[Vec<Q>], cols: Option<usize>) -> Result<RatMatrix> {
    let width = rows.first().map(Vec::len).or(cols).unwrap_or(0);
    if let Some(r) = rows.iter().find(|r| r.len() != width) {
        return Err(Error::Parse(format!("ragged matrix: row of length {} in width {width}", r.len())));
    }
    Ok(RatMatrix::from_rows(width, rows.iter().map(|r| rats(r)).collect()))
}

/// A subspace of `Q^ambient` by a spanning set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceDoc {
    pub ambient: usize,
    pub basis: Vec<Vec<Q>>,
}

/// A stratification with monodromy data: either one nilpotent matrix per
/// divisor, keyed by divisor name, or explicit kernels keyed by the comma
/// joined stratum. Strata without a kernel entry have trivial kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub divisors: Vec<String>,
    pub nonempty: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<BTreeMap<String, Vec<Vec<Q>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernels: Option<BTreeMap<String, SubspaceDoc>>,
}

fn names_of(divisors: &[String], s: &Stratum) -> Vec<String> {
    s.indices().iter().map(|&i| divisors[i].clone()).collect()
}

fn key_of(divisors: &[String], s: &Stratum) -> String {
    names_of(divisors, s).join(",")
}

fn stratum_from_names(divisors: &[String], names: &[String]) -> Result<Stratum> {
    let idx = names
        .iter()
        .map(|n| {
            divisors.iter().position(|d| d == n).ok_or_else(|| Error::Parse(format!("unknown divisor {n:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = Stratum::new(idx);
    if s.len() != names.len() {
        return Err(Error::Parse(format!("repeated divisor in {names:?}")));
    }
    Ok(s)
}

fn stratum_from_key(divisors: &[String], key: &str) -> Result<Stratum> {
    let names: Vec<String> =
        if key.trim().is_empty() { vec![] } else { key.split(',').map(|n| n.trim().to_string()).collect() };
    stratum_from_names(divisors, &names)
}

pub fn system_to_doc(s: &StratSystem) -> SystemDoc {
    let d = s.divisors();
    let nonempty = s.nonempty().iter().filter(|t| !t.is_empty()).map(|t| names_of(d, t)).collect();
    let (matrices, kernels) = match s.mode() {
        Monodromy::Matrices(ms) => (Some(d.iter().cloned().zip(ms.iter().map(matrix_to_doc)).collect()), None),
        Monodromy::Kernels(ks) => {
            let ks = ks
                .iter()
                // a zero kernel can be left out unless a larger stratum
                // would lend it a nonzero preimage
                .filter(|(t, k)| {
                    !t.is_empty() && (!k.is_zero() || ks.iter().any(|(u, ku)| t.is_subset_of(u) && !ku.is_zero()))
                })
                .map(|(t, k)| {
                    (key_of(d, t), SubspaceDoc { ambient: t.len(), basis: k.basis().iter().map(|b| qs(b)).collect() })
                })
                .collect();
            (None, Some(ks))
        }
    };
    SystemDoc { divisors: d.to_vec(), nonempty, matrices, kernels }
}

pub fn system_from_doc(doc: &SystemDoc) -> Result<StratSystem> {
    let d = &doc.divisors;
    let strata = doc.nonempty.iter().map(|n| stratum_from_names(d, n)).collect::<Result<Vec<_>>>()?;
    let mode = match (&doc.matrices, &doc.kernels) {
        (Some(ms), None) => {
            if let Some(k) = ms.keys().find(|k| !d.contains(k)) {
                return Err(Error::Parse(format!("matrix for unknown divisor {k:?}")));
            }
            let list = d
                .iter()
                .map(|n| {
                    let m = ms.get(n).ok_or_else(|| Error::Parse(format!("no matrix for divisor {n:?}")))?;
                    matrix_from_doc(m, None)
                })
                .collect::<Result<_>>()?;
            Monodromy::Matrices(list)
        }
        (None, Some(ks)) => {
            let mut map = BTreeMap::new();
            for (key, k) in ks {
                let t = stratum_from_key(d, key)?;
                if k.ambient != t.len() {
                    return Err(Error::Parse(format!("kernel of {key:?} has ambient {}, expected {}", k.ambient, t.len())));
                }
                let basis: Vec<Vec<Rat>> = k.basis.iter().map(|b| rats(b)).collect();
                if let Some(b) = basis.iter().find(|b| b.len() != t.len()) {
                    return Err(Error::Parse(format!("kernel vector of length {} for stratum of size {}", b.len(), t.len())));
                }
                map.insert(t.clone(), Subspace::span(t.len(), &basis));
            }
            Monodromy::Kernels(map)
        }
        (None, None) => Monodromy::Kernels(BTreeMap::new()),
        (Some(_), Some(_)) => return Err(Error::Parse("give either matrices or kernels, not both".into())),
    };
    StratSystem::new(d.clone(), strata, mode)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDoc {
    pub rays: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<Vec<Q>>,
}

pub fn cone_to_doc(c: &Cone) -> ConeDoc {
    ConeDoc {
        rays: c.rays().iter().map(|r| qs(&int_to_rat(r))).collect(),
        lineality: c.lineality().basis().iter().map(|b| qs(b)).collect(),
    }
}

pub fn cone_from_doc(ambient: usize, doc: &ConeDoc) -> Result<Cone> {
    let mut gens: Vec<Vec<Rat>> = doc.rays.iter().map(|r| rats(r)).collect();
    for l in &doc.lineality {
        gens.push(rats(l));
        gens.push(neg(&rats(l)));
    }
    Cone::hull(ambient, &gens)
}

/// A complex given by its maximal cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub ambient: usize,
    pub cells: Vec<ConeDoc>,
}

pub fn complex_to_doc(c: &PolyComplex) -> ComplexDoc {
    ComplexDoc { ambient: c.ambient(), cells: c.maximal_cones().iter().map(cone_to_doc).collect() }
}

/// Rebuilds the face closure of the listed cells and validates it.
pub fn complex_from_doc(doc: &ComplexDoc) -> Result<PolyComplex> {
    let cells = doc.cells.iter().map(|c| cone_from_doc(doc.ambient, c)).collect::<Result<Vec<_>>>()?;
    let closed = crate::complexes::face_closure(&cells);
    validate_complex(doc.ambient, closed.into_iter().collect())
}

/// The complex on one stratum with the projection from its orthant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumComplexDoc {
    pub ambient: usize,
    pub cells: Vec<ConeDoc>,
    pub projection: Vec<Vec<Q>>,
}

/// Complexes keyed by the comma joined stratum; `""` is the open part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmcxDoc {
    pub divisors: Vec<String>,
    pub strata: BTreeMap<String, StratumComplexDoc>,
}

fn stratum_complexes(
    divisors: &[String],
    complexes: &BTreeMap<Stratum, PolyComplex>,
    projection: impl Fn(&Stratum) -> Result<RatMatrix>,
) -> Result<BTreeMap<String, StratumComplexDoc>> {
    complexes
        .iter()
        .map(|(t, cx)| {
            let doc = StratumComplexDoc {
                ambient: cx.ambient(),
                cells: cx.maximal_cones().iter().map(cone_to_doc).collect(),
                projection: matrix_to_doc(&projection(t)?),
            };
            Ok((key_of(divisors, t), doc))
        })
        .collect()
}

type Parts = (BTreeMap<Stratum, PolyComplex>, BTreeMap<Stratum, RatMatrix>);

fn parts_from_docs(divisors: &[String], strata: &BTreeMap<String, StratumComplexDoc>) -> Result<Parts> {
    let mut complexes = BTreeMap::new();
    let mut projections = BTreeMap::new();
    for (key, e) in strata {
        let t = stratum_from_key(divisors, key)?;
        let p = matrix_from_doc(&e.projection, Some(t.len()))?;
        if p.cols() != t.len() {
            return Err(Error::Parse(format!("projection of {key:?} does not have {} columns", t.len())));
        }
        let cx = complex_from_doc(&ComplexDoc { ambient: e.ambient, cells: e.cells.clone() })?;
        if complexes.insert(t.clone(), cx).is_some() {
            return Err(Error::Parse(format!("stratum {key:?} listed twice")));
        }
        projections.insert(t, p);
    }
    Ok((complexes, projections))
}

pub fn cmcx_to_doc(c: &Cmcx) -> Result<CmcxDoc> {
    let strata = stratum_complexes(c.divisors(), c.complexes(), |t| c.projection(t).cloned())?;
    Ok(CmcxDoc { divisors: c.divisors().to_vec(), strata })
}

pub fn cmcx_from_doc(doc: &CmcxDoc) -> Result<Cmcx> {
    let (complexes, projections) = parts_from_docs(&doc.divisors, &doc.strata)?;
    Cmcx::new(doc.divisors.clone(), complexes, projections)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewRayDoc {
    pub name: String,
    pub parent: Vec<String>,
    pub generator: Vec<Q>,
}

/// A refined fan. The ray registry, the cell reports and the induced
/// system are informational; loading recomputes them from the complexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDoc {
    pub divisors: Vec<String>,
    pub strata: BTreeMap<String, StratumComplexDoc>,
    #[serde(default)]
    pub new_rays: Vec<NewRayDoc>,
    #[serde(default)]
    pub non_simplicial: Vec<CellWitness>,
    #[serde(default)]
    pub non_unimodular: Vec<CellWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub induced: Option<SystemDoc>,
}

fn ray_doc(divisors: &[String], r: &NewRay) -> NewRayDoc {
    NewRayDoc { name: r.name.clone(), parent: names_of(divisors, &r.parent), generator: qs(&int_to_rat(&r.generator)) }
}

pub fn fan_to_doc(f: &RefinedFan) -> Result<FanDoc> {
    let d = f.divisors();
    Ok(FanDoc {
        divisors: d.to_vec(),
        strata: stratum_complexes(d, f.complexes(), |t| f.projection(t).cloned())?,
        new_rays: f.new_rays().iter().map(|r| ray_doc(d, r)).collect(),
        non_simplicial: f.non_simplicial(),
        non_unimodular: f.non_unimodular(),
        induced: f.induced_system()?.as_ref().map(system_to_doc),
    })
}

pub fn fan_from_doc(doc: &FanDoc) -> Result<RefinedFan> {
    let (complexes, projections) = parts_from_docs(&doc.divisors, &doc.strata)?;
    RefinedFan::new(doc.divisors.clone(), complexes, projections)
}

/// Either a single matrix or `{"matrices": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatricesDoc {
    One(Vec<Vec<Q>>),
    Many { matrices: Vec<Vec<Vec<Q>>> },
}

pub fn matrices_from_doc(doc: &MatricesDoc) -> Result<Vec<RatMatrix>> {
    match doc {
        MatricesDoc::One(m) => Ok(vec![matrix_from_doc(m, None)?]),
        MatricesDoc::Many { matrices } => matrices.iter().map(|m| matrix_from_doc(m, None)).collect(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmcx::canonical_t0;
    use crate::exactlin::{frac, rat_vec};

    #[test]
    fn rationals_round_trip() {
        let q: Vec<Q> = from_json(r#"[1, "-3/6", "7"]"#).unwrap();
        assert_eq!(rats(&q), vec![Rat::from_integer(1.into()), frac(-1, 2), Rat::from_integer(7.into())]);
        assert_eq!(to_json(&q), "[\n  \"1\",\n  \"-1/2\",\n  \"7\"\n]\n");
        assert!(from_json::<Q>(r#""1/0""#).is_err());
    }

    #[test]
    fn system_round_trip() {
        let text = r#"{"divisors": ["a", "b"], "nonempty": [["a", "b"]],
            "matrices": {"a": [[0, 1], [0, 0]], "b": [[0, 1], [0, 0]]}}"#;
        let s = system_from_doc(&from_json(text).unwrap()).unwrap();
        assert_eq!(s.projection(&Stratum(vec![0, 1])).unwrap(), RatMatrix::from_i64(&[&[1, 1]]));
        let again = system_from_doc(&system_to_doc(&s)).unwrap();
        assert_eq!(system_to_doc(&again), system_to_doc(&s));
    }

    #[test]
    fn cmcx_round_trip() {
        let text = r#"{"divisors": ["a", "b"], "nonempty": [["a", "b"]]}"#;
        let s = system_from_doc(&from_json(text).unwrap()).unwrap();
        let t = canonical_t0(&s).unwrap();
        let doc = cmcx_to_doc(&t).unwrap();
        assert_eq!(cmcx_from_doc(&doc).unwrap(), t);
    }

    #[test]
    fn overlapping_cells_are_rejected() {
        let doc = ComplexDoc {
            ambient: 2,
            cells: vec![
                ConeDoc { rays: vec![qs(&rat_vec(&[1, 0])), qs(&rat_vec(&[1, 2]))], lineality: vec![] },
                ConeDoc { rays: vec![qs(&rat_vec(&[1, 1])), qs(&rat_vec(&[0, 1]))], lineality: vec![] },
            ],
        };
        assert!(matches!(complex_from_doc(&doc), Err(Error::InteriorOverlap { .. })));
    }
}
