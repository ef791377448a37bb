//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria that are known not to hold are printed as FAIL and listed in
//! `KNOWN_FAILURES`; they do not fail the test run. Any other FAIL does.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

use chordspace::algebra::{check_phi_intertwine, commutator_check, schema_search, well_defined_check, ProductSpace};
use chordspace::{
    circle_dim, enumerate_chord_diagrams, lemma_4t_closure_check, validate, weight_space, FieldTag,
    RealisabilityModel, RelationSet, SignSchema,
};

const KNOWN_FAILURES: &[&str] = &["3c"];

struct Ledger {
    lines: Vec<(String, bool, String)>,
}

impl Ledger {
    fn record(&mut self, id: &str, ok: bool, detail: String) {
        println!("{} criterion {id}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((id.to_string(), ok, detail));
    }

    fn timed(&mut self, id: &str, limit: Duration, f: impl FnOnce() -> (bool, String)) {
        let start = Instant::now();
        let (ok, detail) = f();
        let t = start.elapsed();
        let within = t <= limit;
        self.record(id, ok && within, format!("{detail} [{:.2}s, limit {}s]", t.as_secs_f64(), limit.as_secs()));
    }
}

fn oracle_count(n: usize) -> usize {
    // matchings by recursion, grouped by minimal rotation of the relabelled word
    fn go(free: &mut Vec<bool>, word: &mut Vec<u8>, next: u8, out: &mut BTreeSet<Vec<u8>>) {
        let Some(i) = free.iter().position(|&f| f) else {
            let m = word.len();
            let best = (0..m.max(1))
                .map(|r| {
                    let mut map = [u8::MAX; 32];
                    let mut k = 0;
                    (0..m)
                        .map(|j| {
                            let l = word[(j + r) % m] as usize;
                            if map[l] == u8::MAX {
                                map[l] = k;
                                k += 1;
                            }
                            map[l]
                        })
                        .collect::<Vec<u8>>()
                })
                .min()
                .unwrap();
            out.insert(best);
            return;
        };
        free[i] = false;
        word[i] = next;
        for j in i + 1..free.len() {
            if free[j] {
                free[j] = false;
                word[j] = next;
                go(free, word, next + 1, out);
                free[j] = true;
            }
        }
        free[i] = true;
    }
    let mut out = BTreeSet::new();
    go(&mut vec![true; 2 * n], &mut vec![0; 2 * n], 0, &mut out);
    out.len()
}

fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

fn criterion_1(l: &mut Ledger) {
    l.timed("1", Duration::from_secs(10), || {
        let oracle: Vec<usize> = (1..=5).map(oracle_count).collect();
        let lib: Vec<usize> = (1..=5).map(|n| enumerate_chord_diagrams(n).len()).collect();
        (oracle == lib && oracle == [1, 2, 5, 18, 105], format!("oracle {oracle:?}, library {lib:?}"))
    });
}

fn criterion_2(l: &mut Ledger) {
    l.timed("2", Duration::from_secs(120), || {
        let set = RelationSet::four_t(SignSchema::uniform());
        let four_t: Vec<usize> = (0..=5).map(|n| circle_dim(n, false, &set, FieldTag::Rational).unwrap()).collect();
        let one_t = set.clone().with_one_t(true);
        let with_1t: Vec<usize> = (0..=5).map(|n| circle_dim(n, false, &one_t, FieldTag::Rational).unwrap()).collect();
        (
            four_t == [1, 1, 2, 3, 6, 10] && with_1t == [1, 0, 1, 1, 3, 4],
            format!("4T {four_t:?}, 4T+1T {with_1t:?}"),
        )
    });
}

fn criterion_3(l: &mut Ledger) {
    l.timed("3a", Duration::from_secs(120), || {
        let u = SignSchema::uniform();
        let ok: Vec<bool> = (0..=4)
            .map(|n| check_phi_intertwine(&u, &u, n, FieldTag::Rational).unwrap().holds)
            .collect();
        (ok.iter().all(|&b| b), format!("phi uniform->uniform for n=0..4: {ok:?}"))
    });
    let report = schema_search(&[2, 3], FieldTag::Rational).unwrap();
    let at2 = report.orders[0].survivors.len();
    let at3 = report.orders[1].survivors.len();
    let restested = report.stable_survivors.clone();
    l.timed("3b", Duration::from_secs(120), || {
        // survivors of the re-test at n=3 checked again at n=4
        let u = SignSchema::uniform();
        let again: Vec<&String> = restested
            .iter()
            .filter(|s| {
                let schema = chordspace::named_schema(s).unwrap();
                check_phi_intertwine(&u, &schema, 4, FieldTag::Rational).unwrap().holds
            })
            .collect();
        (
            at2 > 0 && !restested.is_empty() && again.len() == restested.len(),
            format!(
                "{at2} schemas intertwined with uniform at n=2; {} remain at n=3; {} of those remain at n=4",
                restested.len(),
                again.len()
            ),
        )
    });
    l.record(
        "3c",
        report.stable,
        format!("every n=2 survivor survives at n=3: {at2} -> {at3}"),
    );
}

fn criterion_4(l: &mut Ledger) {
    l.timed("4", Duration::from_secs(300), || {
        let set = RelationSet::four_t(SignSchema::uniform());
        let mut failures = 0;
        let mut pairs = 0;
        for a in 0..=6 {
            for b in 0..=6 - a {
                failures += well_defined_check(a, b, false, &set, FieldTag::Rational).unwrap().counts.failures;
                pairs += 1;
            }
        }
        let bare: usize = (0..=4)
            .map(|a| {
                well_defined_check(a, 4 - a, false, &RelationSet::none(), FieldTag::Rational)
                    .unwrap()
                    .counts
                    .failures
            })
            .sum();
        (
            failures == 0 && bare > 0,
            format!("{failures} failures mod 4T over {pairs} order pairs; {bare} without relations at total 4"),
        )
    });
}

fn criterion_5(l: &mut Ledger) {
    l.timed("5a", Duration::from_secs(300), || {
        let set = RelationSet::four_t(SignSchema::uniform());
        let mut bad = 0;
        for a in 0..=5 {
            for b in 0..=5 - a {
                bad += commutator_check(a, b, false, &set, FieldTag::Rational, ProductSpace::Circle)
                    .unwrap()
                    .counts
                    .non_commuting;
            }
        }
        (bad == 0, format!("{bad} non-commuting unframed circle pairs up to total order 5"))
    });
    l.timed("5b", Duration::from_secs(300), || {
        let run = || {
            let set = RelationSet::four_t(SignSchema::uniform()).with_one_t(true);
            let mut reports = Vec::new();
            for a in 0..=4 {
                for b in 0..=4 - a {
                    reports.push(commutator_check(a, b, true, &set, FieldTag::Rational, ProductSpace::Arc).unwrap());
                }
            }
            reports
        };
        let first = run();
        let d1 = digest(&serde_json::to_string(&first).unwrap());
        let d2 = digest(&serde_json::to_string(&run()).unwrap());
        let non: usize = first.iter().map(|r| r.counts.non_commuting).sum();
        let pairs: usize = first.iter().map(|r| r.counts.pairs).sum();
        (
            d1 == d2,
            format!("framed arc report: {non} of {pairs} pairs non-commuting (experimental); digest {}", &d1[..16]),
        )
    });
}

fn criterion_6(l: &mut Ledger) {
    l.timed("6", Duration::from_secs(120), || {
        let u = SignSchema::uniform();
        let single: usize = (0..=4)
            .map(|n| lemma_4t_closure_check(n, &u, RealisabilityModel::single_class()).violations.len())
            .sum();
        let trivial: usize = (0..=4)
            .map(|n| lemma_4t_closure_check(n, &u, RealisabilityModel::Trivial).violations.len())
            .sum();
        (
            single == 0 && trivial == 0,
            format!("violations n<=4: single-class {single}, trivial {trivial}"),
        )
    });
}

fn criterion_7(l: &mut Ledger) {
    l.timed("7", Duration::from_secs(300), || {
        let u = SignSchema::uniform();
        let mut configs = 0;
        let mut bad = Vec::new();
        for n in 0..=3 {
            for framed in [false, true] {
                for one_t in [false, true] {
                    for field in [FieldTag::Rational, FieldTag::Gf2] {
                        let ws = weight_space(n, framed, &u, one_t, field, None).unwrap();
                        let set = RelationSet::four_t(u.clone()).with_one_t(one_t);
                        let dim = circle_dim(n, framed, &set, field).unwrap();
                        let valid = ws.functionals.iter().all(|f| validate(f, &u, one_t, field).unwrap().passes());
                        configs += 1;
                        if !valid || ws.dimension() != dim {
                            bad.push(format!("n={n} framed={framed} 1T={one_t} {}", field.as_str()));
                        }
                    }
                }
            }
            let m = RealisabilityModel::single_class();
            let ws = weight_space(n, true, &u, true, FieldTag::Rational, Some(m)).unwrap();
            let dim = chordspace::restricted_quotient_dim(n, &u, true, m, FieldTag::Rational).unwrap().dim;
            configs += 1;
            if ws.dimension() != dim
                || !ws.functionals.iter().all(|f| validate(f, &u, true, FieldTag::Rational).unwrap().passes())
            {
                bad.push(format!("n={n} restricted"));
            }
        }
        (bad.is_empty(), format!("{configs} configurations, mismatches {bad:?}"))
    });
}

fn cli(args: &[&str], jobs: &str) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_chordspace"))
        .args(["--jobs", jobs])
        .args(args)
        .env_remove("CHORDSPACE_CACHE_DIR")
        .output()
        .expect("run cli");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn criterion_8(l: &mut Ledger) {
    l.timed("8", Duration::from_secs(300), || {
        let commands: &[&[&str]] = &[
            &["enumerate", "--order", "4", "--framed", "--format", "json"],
            &["enumerate", "--order", "3", "--arc", "--framed", "--format", "json"],
            &["dims", "--order", "0-5", "--format", "json"],
            &["dims", "--order", "0-4", "--framed", "--relations", "4t,1t", "--format", "json"],
            &["dims", "--order", "0-3", "--model", "single-class", "--relations", "4t,1t", "--format", "json"],
            &["relations", "--order", "3", "--framed", "--format", "json"],
            &["check", "phi-iso", "--order", "3"],
            &["check", "well-defined", "--orders", "2,2"],
            &["check", "well-defined", "--orders", "1,2", "--framed"],
            &["check", "commutativity", "--orders", "1,2", "--framed", "--surface", "arc"],
            &["check", "commutativity", "--orders", "2,2"],
            &["check", "lemma4t", "--order", "3"],
            &["check", "schema-search", "--orders", "2"],
            &["weights", "space", "--order", "3", "--framed", "--relations", "4t,1t"],
        ];
        let mut differing = Vec::new();
        for args in commands {
            let a = cli(args, "1");
            let b = cli(args, "8");
            if a != b || a.0.is_empty() {
                differing.push(args.join(" "));
            }
        }
        (
            differing.is_empty(),
            format!("{} commands byte-identical under --jobs 1 and 8; differing {differing:?}", commands.len()),
        )
    });
}

fn main() {
    let mut l = Ledger { lines: Vec::new() };
    criterion_1(&mut l);
    criterion_2(&mut l);
    criterion_3(&mut l);
    criterion_4(&mut l);
    criterion_5(&mut l);
    criterion_6(&mut l);
    criterion_7(&mut l);
    criterion_8(&mut l);
    let unexpected: Vec<&str> = l
        .lines
        .iter()
        .filter(|(id, ok, _)| !ok && !KNOWN_FAILURES.contains(&id.as_str()))
        .map(|(id, _, _)| id.as_str())
        .collect();
    if !unexpected.is_empty() {
        eprintln!("failed criteria: {unexpected:?}");
        std::process::exit(1);
    }
}
