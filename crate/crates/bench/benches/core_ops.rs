use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use thompson_bench::{padded_word, sample_elements};
use thompson_core::laws::{build_law, LawSpec};
use thompson_core::marked::{relation_set, EnumerationBudget, Marking};
use thompson_core::plf::{generator, PlHomeo};
use thompson_core::words::{normalize, plf_to_word};

fn bench_compose(c: &mut Criterion) {
    let elems = sample_elements(64, 10);
    c.bench_function("compose_chain_64", |b| {
        b.iter(|| {
            let mut acc = PlHomeo::identity();
            for f in &elems {
                acc = acc.compose(black_box(f));
            }
            acc
        })
    });
}

fn bench_normalize(c: &mut Criterion) {
    let words: Vec<_> = (0..32).map(|s| padded_word(s, 10)).collect();
    c.bench_function("normalize_rewriting_32", |b| {
        b.iter(|| {
            words
                .iter()
                .map(|w| normalize(black_box(w)))
                .collect::<Vec<_>>()
        })
    });
    let elems = sample_elements(32, 10);
    c.bench_function("normal_form_tree_route_32", |b| {
        b.iter(|| {
            elems
                .iter()
                .map(|g| plf_to_word(black_box(g)))
                .collect::<Vec<_>>()
        })
    });
}

fn bench_law_eval(c: &mut Criterion) {
    let spec = LawSpec::canonical();
    let word = build_law(&spec);
    let elems = sample_elements(32, 12);
    c.bench_function("law_eval_32", |b| {
        b.iter(|| {
            elems
                .iter()
                .map(|g| word.eval(std::slice::from_ref(black_box(g))).unwrap())
                .filter(|v| v.is_identity())
                .count()
        })
    });
}

fn bench_relations(c: &mut Criterion) {
    let marking = Marking::new(vec![generator(0), generator(1), generator(2)]);
    let mut group = c.benchmark_group("relation_set");
    for radius in [4u32, 5, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(radius), &radius, |b, &r| {
            b.iter(|| relation_set(&marking, r, EnumerationBudget::default(), 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_compose,
    bench_normalize,
    bench_law_eval,
    bench_relations
);
criterion_main!(benches);
