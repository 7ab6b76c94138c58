use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use twinheart::heart::Heart;
use twinheart::lincat::Obj;
use twinheart::nakayama::generate_nakayama_stable;
use twinheart::pairs::{enumerate_cotorsion_pairs, make_twin};
use twinheart::tricat::StarCfg;
use twinheart::workbench::{run_suite, RunConfig, SubstrateSpec};

fn bench_generation(c: &mut Criterion) {
    c.bench_function("generate nakayama (3,3) over F_3", |b| {
        b.iter(|| generate_nakayama_stable(3, 3, 3).unwrap())
    });
}

fn bench_pair_enumeration(c: &mut Criterion) {
    let sub = generate_nakayama_stable(3, 3, 2).unwrap();
    let cfg = StarCfg::default();
    c.bench_function("enumerate pairs (3,3) over F_2", |b| {
        b.iter_batched(
            // fresh substrate so the witness caches do not amortize the work
            || generate_nakayama_stable(3, 3, 2).unwrap(),
            |fresh| enumerate_cotorsion_pairs(&fresh, &cfg, 16).unwrap(),
            BatchSize::LargeInput,
        )
    });
    c.bench_function("enumerate pairs cached (3,3) over F_2", |b| {
        b.iter(|| enumerate_cotorsion_pairs(&sub, &cfg, 16).unwrap())
    });
}

fn bench_heart_constructions(c: &mut Criterion) {
    let sub = generate_nakayama_stable(2, 4, 2).unwrap();
    let cfg = StarCfg::default();
    let pairs = enumerate_cotorsion_pairs(&sub, &cfg, 16).unwrap().pairs;
    // a nontrivial pair if one exists, else the first
    let pair = pairs
        .iter()
        .find(|p| !p.u.0.is_empty() && p.u.0.len() < sub.n_indec())
        .unwrap_or(&pairs[0]);
    let twin = make_twin(&sub, pair, pair, &cfg).unwrap();
    c.bench_function("kernels+cokernels of all endomorphisms (2,4) over F_2", |b| {
        b.iter_batched(
            || Heart::new(&sub, twin.clone(), cfg.clone()),
            |heart| {
                let cat = sub.cat();
                for &h in &heart.twin.h.0 {
                    let x = Obj::indec(h);
                    let id = twinheart::lincat::Mor::identity(cat, &x);
                    heart.kernel(&id).unwrap();
                    heart.cokernel(&id).unwrap();
                }
            },
            BatchSize::LargeInput,
        )
    });
}

fn bench_full_suite(c: &mut Criterion) {
    let spec = SubstrateSpec::Nakayama { m: 2, n: 3, p: 2 };
    let cfg = RunConfig::default();
    c.bench_function("full suite (2,3) over F_2", |b| {
        b.iter(|| run_suite(&spec, &cfg).unwrap())
    });
}

criterion_group!(
    benches,
    bench_generation,
    bench_pair_enumeration,
    bench_heart_constructions,
    bench_full_suite
);
criterion_main!(benches);
