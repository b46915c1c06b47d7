use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ordjump::order_trees::decode_order;
use ordjump::reductions::verify_reduction_with;
use ordjump::{canonicalize, catalog_reduction, iso_terms, tree_to_order};
use ordjump_bench::{term_corpus, tree_corpus, zjump_points};

fn terms(c: &mut Criterion) {
    let corpus = term_corpus(5);
    c.bench_function("canonicalize/size5", |b| {
        b.iter(|| {
            for t in &corpus {
                black_box(canonicalize(black_box(t)));
            }
        })
    });
    let pairs: Vec<_> = corpus.iter().zip(corpus.iter().rev()).take(200).collect();
    c.bench_function("iso_terms/200_pairs", |b| {
        b.iter(|| {
            pairs
                .iter()
                .filter(|(x, y)| iso_terms(x, y).is_isomorphic())
                .count()
        })
    });
}

fn trees(c: &mut Criterion) {
    let corpus = tree_corpus();
    c.bench_function("tree_to_order+decode", |b| {
        b.iter(|| {
            corpus
                .iter()
                .filter(|t| decode_order(&tree_to_order(black_box(t), false)).is_ok())
                .count()
        })
    });
}

fn jumps(c: &mut Criterion) {
    let (r, pts) = zjump_points(2);
    c.bench_function("zjump_decide/all_pairs", |b| {
        b.iter(|| {
            let mut n = 0;
            for x in &pts {
                for y in &pts {
                    n += usize::from(r.decide(x, y).unwrap());
                }
            }
            n
        })
    });
}

fn reductions(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for name in ["r_dcc_phi", "r_zjump_to_fs"] {
        let r = catalog_reduction(name).unwrap();
        g.bench_function(name, |b| {
            b.iter(|| verify_reduction_with(&r, r.bounds.default, 1).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, terms, trees, jumps, reductions);
criterion_main!(benches);
