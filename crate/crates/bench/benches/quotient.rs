use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use chordspace::relations::{generate_4t, RelationSet};
use chordspace::{circle_quotient, enumerate_framed_diagrams, FieldTag, SignSchema};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_framed");
    for n in [3usize, 4, 5] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_framed_diagrams(black_box(n)))
        });
    }
    g.finish();
}

fn relations(c: &mut Criterion) {
    let schema = SignSchema::uniform();
    c.bench_function("generate_4t_framed_n4", |b| {
        b.iter(|| generate_4t(black_box(4), Some(&schema)))
    });
}

fn elimination(c: &mut Criterion) {
    let mut g = c.benchmark_group("quotient");
    g.sample_size(10);
    let set = RelationSet::four_t(SignSchema::uniform()).with_one_t(true);
    for field in [FieldTag::Rational, FieldTag::Gf2] {
        g.bench_with_input(
            BenchmarkId::new("framed_n4", field.as_str()),
            &field,
            |b, &field| b.iter(|| circle_quotient(4, true, &set, field).unwrap().dim()),
        );
        g.bench_with_input(
            BenchmarkId::new("unframed_n6", field.as_str()),
            &field,
            |b, &field| b.iter(|| circle_quotient(6, false, &set, field).unwrap().dim()),
        );
    }
    g.finish();
}

criterion_group!(benches, enumeration, relations, elimination);
criterion_main!(benches);
