//! Small cases worked out by hand.

use std::collections::BTreeSet;

use monofan::cmcx::check_cmcx;
use monofan::complexes::arrangement;
use monofan::construct::construct_cmcx;
use monofan::exactlin::{rat, rat_vec, RatMatrix};
use monofan::fan::{check_compatibility, refine_fan, RefinedFan};
use monofan::fixtures::{boolean, dependent_triple, equal_pair};
use monofan::hyper::{hyperintersect, IndexedPath};
use monofan::strata::Stratum;
use monofan::weightfilt::{cone_weight_consistency, weight_filtration};
use monofan::Cone;

fn st(v: &[usize]) -> Stratum {
    Stratum::new(v.to_vec())
}

fn ray(n: usize, k: usize) -> Vec<i64> {
    (0..n).map(|i| i64::from(i == k)).collect()
}

// With N3 = N1 + N2 the image of e3 in the monodromy cone of the triple
// point is the sum of the other two, so the pulled back complex is the
// orthant cut by x1 = x2 and the only new ray is (1, 1, 0).
#[test]
fn dependent_triple_refinement() {
    let s = dependent_triple();
    let t = construct_cmcx(&s).unwrap();
    assert!(check_cmcx(&t).unwrap().passed());
    let rf = refine_fan(&s, &t, false).unwrap();
    let top = st(&[0, 1, 2]);
    let expected = arrangement(&Cone::orthant(3), &[rat_vec(&[1, -1, 0])]);
    assert_eq!(rf.complex(&top).unwrap(), &expected);
    let maximal: BTreeSet<Cone> = rf.complex(&top).unwrap().maximal_cones().into_iter().collect();
    let halves = BTreeSet::from([
        Cone::hull_i64(3, &[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap(),
        Cone::hull_i64(3, &[&[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap(),
    ]);
    assert_eq!(maximal, halves);
    assert_eq!(rf.new_rays().len(), 1);
    assert_eq!(rf.new_rays()[0].name, "D0+D1#1");
    assert_eq!(rf.new_rays()[0].parent, st(&[0, 1]));
    for i in s.nonempty().iter().filter(|i| i.len() < 3) {
        let k = i.len();
        let orthant = Cone::orthant(k);
        if *i == st(&[0, 1]) {
            let cut = arrangement(&orthant, &[rat_vec(&[1, -1])]);
            assert_eq!(rf.complex(i).unwrap(), &cut);
        } else {
            assert_eq!(rf.complex(i).unwrap().maximal_cones(), vec![orthant]);
        }
    }
    assert!(check_compatibility(&rf, &t).unwrap().passed());
    assert!(rf.is_simplicial());
}

#[test]
fn trivial_kernels_need_no_refinement() {
    for s in [boolean(2), boolean(3), equal_pair()] {
        let t = construct_cmcx(&s).unwrap();
        let rf = refine_fan(&s, &t, true).unwrap();
        assert_eq!(rf, RefinedFan::unrefined(&s).unwrap());
        assert!(rf.new_rays().is_empty());
    }
}

// On a boolean system every monodromy cone is an orthant and every map a
// coordinate inclusion, so a path keeps the coordinates common to all of
// its entries.
#[test]
fn boolean_paths_keep_common_coordinates() {
    let s = boolean(3);
    let all: Vec<Stratum> = s.nonempty().iter().cloned().collect();
    let mut checked = 0;
    for a in &all {
        for b in all.iter().filter(|b| b.is_comparable(a)) {
            for c in all.iter().filter(|c| c.is_comparable(b)) {
                for d in all.iter().filter(|d| d.is_comparable(c)) {
                    let seq = vec![a.clone(), b.clone(), c.clone(), d.clone()];
                    let common = seq.iter().skip(1).fold(a.clone(), |acc, t| acc.intersection(t));
                    let h = hyperintersect(&s, &IndexedPath::new(&s, seq).unwrap()).unwrap();
                    let rays: Vec<Vec<i64>> = a
                        .indices()
                        .iter()
                        .enumerate()
                        .filter(|(_, g)| common.indices().contains(g))
                        .map(|(k, _)| ray(a.len(), k))
                        .collect();
                    let refs: Vec<&[i64]> = rays.iter().map(Vec::as_slice).collect();
                    assert_eq!(h.value_in_from, Cone::hull_i64(a.len(), &refs).unwrap(), "{a} .. {d}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn dependent_triple_scissors() {
    let s = dependent_triple();
    let top = st(&[0, 1, 2]);
    let path = |v: Vec<Stratum>| IndexedPath::new(&s, v).unwrap();
    // cone(m e0, m e2) meets cone(m e1, m e2) in the ray through m e2
    let h = hyperintersect(&s, &path(vec![st(&[0, 2]), top.clone(), st(&[1, 2])])).unwrap();
    assert_eq!(h.value_in_from, Cone::hull_i64(2, &[&[0, 1]]).unwrap());
    assert_eq!(h.value_in_to, Cone::hull_i64(2, &[&[0, 1]]).unwrap());
    // the rays of e0 and e1 are distinct
    let h = hyperintersect(&s, &path(vec![st(&[0]), top.clone(), st(&[1])])).unwrap();
    assert_eq!(h.value_in_from, Cone::zero(1));
    // e2 lies in the image of the whole face {0, 1}
    let h = hyperintersect(&s, &path(vec![st(&[2]), top.clone(), st(&[0, 1])])).unwrap();
    assert_eq!(h.value_in_from, Cone::orthant(1));
    assert_eq!(h.value_in_to, Cone::hull_i64(2, &[&[1, 1]]).unwrap());
    // equal logarithms share their ray
    let p = equal_pair();
    let h = hyperintersect(&p, &IndexedPath::new(&p, vec![st(&[0]), st(&[0, 1]), st(&[1])]).unwrap()).unwrap();
    assert_eq!(h.value_in_from, Cone::orthant(1));
}

fn e(n: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    m.set(i, j, rat(1));
    m
}

#[test]
fn weight_consistency_witness() {
    // a N1 + b N2 = a E12 + (a - b) E34 drops rank at a = b
    let n1 = e(4, 0, 1).add(&e(4, 2, 3));
    let n2 = e(4, 2, 3).scaled(&rat(-1));
    let c = cone_weight_consistency(&[n1.clone(), n2.clone()], 0, 7).unwrap();
    assert_eq!(c.samples[0], vec![rat(1), rat(1)]);
    assert_eq!(c.disagreement, Some(1));
    let direct = weight_filtration(&e(4, 0, 1).add(&e(4, 2, 3).scaled(&rat(-1))), 0).unwrap();
    assert_eq!(c.filtrations[1], direct);
    assert_eq!(c.filtrations[0].graded_dim(-1), 1);
    assert_eq!(c.filtrations[1].graded_dim(-1), 2);

    // N and N^2 of a Jordan block: every positive combination has one block
    let n = e(3, 0, 1).add(&e(3, 1, 2));
    let c = cone_weight_consistency(&[n.clone(), n.mul(&n)], 2, 7).unwrap();
    assert!(c.consistent());
    assert_eq!((0..=4).map(|k| c.filtrations[0].graded_dim(k)).collect::<Vec<_>>(), vec![1, 0, 1, 0, 1]);
}
