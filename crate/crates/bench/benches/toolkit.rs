use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use monofan::complexes::canonical_complexification;
use monofan::construct::construct_cmcx;
use monofan::fan::refine_fan;
use monofan::fixtures::{dependent_triple, hosono_takagi};
use monofan::hyper::enumerate_hyperintersections;
use monofan::sample::{random_nilpotent, random_pointed_cone, random_semicomplex, random_system, rng};
use monofan::strata::Stratum;
use monofan::weightfilt::weight_filtration;
use monofan::Cone;

fn cones(c: &mut Criterion) {
    let mut r = rng(1);
    let pairs: Vec<(Cone, Cone)> = (0..16).map(|_| (random_pointed_cone(&mut r, 4), random_pointed_cone(&mut r, 4))).collect();
    c.bench_function("cone/hull_and_intersect_4d", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(x.intersect(y).unwrap().faces().len());
            }
        })
    });
}

fn complexes(c: &mut Criterion) {
    let scs: Vec<_> = (0..8).map(|s| random_semicomplex(&mut rng(s), 3).2).collect();
    c.bench_function("complexes/canonical_complexification", |b| {
        b.iter(|| {
            for sc in &scs {
                black_box(canonical_complexification(sc).unwrap());
            }
        })
    });
}

fn construction(c: &mut Criterion) {
    let triple = dependent_triple();
    c.bench_function("construct/dependent_triple", |b| b.iter(|| black_box(construct_cmcx(&triple).unwrap())));
    let systems: Vec<_> = (0..8).map(random_system).collect();
    c.bench_function("construct/random_systems", |b| {
        b.iter(|| {
            for s in &systems {
                black_box(construct_cmcx(s).unwrap());
            }
        })
    });
    let top = Stratum::new(vec![0, 1, 2]);
    c.bench_function("hyper/enumerate_dependent_triple", |b| {
        b.iter(|| black_box(enumerate_hyperintersections(&triple, &top).unwrap()))
    });
}

fn fans(c: &mut Criterion) {
    let ht = hosono_takagi();
    let t = construct_cmcx(&ht).unwrap();
    c.bench_function("fan/refine_hosono_takagi", |b| b.iter(|| black_box(refine_fan(&ht, &t, true).unwrap())));
}

fn weights(c: &mut Criterion) {
    let mut r = rng(2);
    let ns: Vec<_> = (0..32).map(|_| random_nilpotent(&mut r, 6)).collect();
    c.bench_function("weightfilt/size_6", |b| {
        b.iter(|| {
            for n in &ns {
                black_box(weight_filtration(n, 3).unwrap());
            }
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = cones, complexes, construction, fans, weights
}
criterion_main!(benches);
