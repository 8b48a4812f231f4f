//! Acceptance suite. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p aplus-core --test acceptance -- --nocapture --test-threads=1`.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use aplus_core::affine::{a_plus_size, add_maps, affine_closure_oracle, enumerate_a_plus};
use aplus_core::combinations::{binomial, for_each_combination};
use aplus_core::ranks::{
    aplus_strata_caps, construct_witness, generation_lower_bound, intermediate_rank_verify,
    large_rank_exact, lower_rank_exact, rank_formulas, small_rank, small_rank_by_definition,
    smallest_prime_subset, upper_rank_search, UpperSearchOptions, WitnessKind,
};
use aplus_core::{export_table, import_table, APlus, IndexSet, SearchBudget, Stratum, TableFormat};

/// Prints the criterion line, then fails the test if anything went wrong.
fn report(id: u32, what: &str, failures: &[String], elapsed: Duration, limit: Duration) {
    let in_time = elapsed <= limit;
    let ok = failures.is_empty() && in_time;
    println!(
        "criterion {id}: {} {what} ({:.2} s, limit {} s){}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if failures.is_empty() {
            String::new()
        } else {
            format!(" [{}]", failures.join("; "))
        }
    );
    assert!(failures.is_empty(), "criterion {id}: {failures:?}");
    assert!(in_time, "criterion {id} took {elapsed:?}, limit {limit:?}");
}

struct Checks(Vec<String>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }
}

const UNLIMITED: SearchBudget = SearchBudget::UNLIMITED;

#[test]
fn criterion_1_element_counts() {
    let start = Instant::now();
    let mut c = Checks::new();
    let mut slowest = Duration::ZERO;
    for (n, expected) in [(1, 3), (2, 29), (3, 145), (4, 657)] {
        let t = Instant::now();
        let elements = enumerate_a_plus(n).unwrap();
        c.expect(
            elements.len() == expected,
            format!("|A+(B_{n})| = {}", elements.len()),
        );
        c.expect(
            a_plus_size(n) == expected,
            format!("size formula at n = {n}"),
        );
        let closed = APlus::via_generic_constructor(n);
        c.expect(
            closed.is_ok(),
            format!("n = {n} not closed under pointwise addition"),
        );
        slowest = slowest.max(t.elapsed());
    }
    c.expect(
        slowest < Duration::from_secs(5),
        format!("slowest n took {slowest:?}"),
    );
    report(
        1,
        "element counts 3, 29, 145, 657 and closure",
        &c.0,
        start.elapsed(),
        Duration::from_secs(20),
    );
}

#[test]
fn criterion_2_oracle_equivalence() {
    let start = Instant::now();
    let mut c = Checks::new();
    let mut oracle: Vec<_> = affine_closure_oracle(2)
        .unwrap()
        .iter()
        .map(|f| f.table(2))
        .collect();
    let mut enumerated: Vec<_> = enumerate_a_plus(2)
        .unwrap()
        .iter()
        .map(|f| f.table(2))
        .collect();
    oracle.sort();
    enumerated.sort();
    c.expect(oracle == enumerated, "oracle and enumeration differ");
    report(
        2,
        "affine closure oracle equals enumeration at n = 2",
        &c.0,
        start.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_3_greens() {
    let start = Instant::now();
    let mut c = Checks::new();
    for (n, classes) in [(2, 4), (3, 18)] {
        let a = APlus::new(n).unwrap();
        let ns = a.stratum_set(Stratum::NSupport);
        let count = a
            .r_classes_by_support()
            .iter()
            .filter(|cl| ns.contains(cl[0]))
            .count();
        c.expect(
            count == classes,
            format!("n = {n}: {count} n-support R-classes"),
        );
    }
    for n in 1..=3 {
        let a = APlus::new(n).unwrap();
        c.expect(
            a.greens_match_characterisation(),
            format!("ideal partition differs at n = {n}"),
        );
    }
    report(
        3,
        "Green's R-classes (n!)n and characterisation for n <= 3",
        &c.0,
        start.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_4_small_rank() {
    let start = Instant::now();
    let mut c = Checks::new();
    for n in [2, 3] {
        let a = APlus::new(n).unwrap();
        let r = small_rank(a.semigroup(), UNLIMITED).unwrap();
        c.expect(r.outcome.exact_value() == Some(1), format!("r1 at n = {n}"));
    }
    let a2 = APlus::new(2).unwrap();
    let by_definition = small_rank_by_definition(a2.semigroup(), UNLIMITED).unwrap();
    c.expect(
        by_definition.outcome.exact_value() == Some(1),
        "definition brute force at n = 2",
    );

    let a1 = APlus::new(1).unwrap();
    let s1 = a1.semigroup();
    let values = [
        small_rank(s1, UNLIMITED).unwrap().outcome.exact_value(),
        lower_rank_exact(s1, UNLIMITED)
            .unwrap()
            .outcome
            .exact_value(),
        aplus_core::ranks::max_independent_generating(s1, UNLIMITED)
            .unwrap()
            .outcome
            .exact_value(),
        upper_rank_search(s1, UNLIMITED, &Default::default())
            .unwrap()
            .outcome
            .exact_value(),
        large_rank_exact(s1, 1, UNLIMITED)
            .unwrap()
            .outcome
            .exact_value(),
    ];
    c.expect(
        values.iter().all(|&v| v == Some(3)),
        format!("A+(B_1) ranks {values:?}"),
    );
    let formulas = rank_formulas(1).unwrap();
    c.expect(
        formulas
            .entries()
            .iter()
            .all(|e| e.value.to_string() == "3"),
        "formulas at n = 1",
    );
    report(
        4,
        "r1 = 1 for n = 2, 3; every rank of A+(B_1) is 3",
        &c.0,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_5_lower_rank() {
    let start = Instant::now();
    let mut c = Checks::new();
    let a = APlus::new(2).unwrap();
    let s = a.semigroup();

    let r = lower_rank_exact(s, UNLIMITED).unwrap();
    c.expect(
        r.outcome.exact_value() == Some(6),
        format!("search gives {:?}", r.outcome.bounds()),
    );
    c.expect(
        r.outcome.witness().is_some_and(|w| s.is_generating(w)),
        "search witness",
    );

    let mut examined = 0u128;
    let flow = for_each_combination(s.size(), 5, |subset| {
        examined += 1;
        if s.is_generating(&IndexSet::from_indices(s.size(), subset.iter().copied())) {
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    c.expect(flow.is_continue(), "a 5-element set generates");
    c.expect(
        examined == 118_755 && binomial(29, 5) == 118_755,
        format!("{examined} subsets examined"),
    );

    for (n, size) in [(2, 6), (3, 21)] {
        let a = APlus::new(n).unwrap();
        let s = a.semigroup();
        let mut w = construct_witness(&a, &WitnessKind::S).unwrap();
        w.union_with(&construct_witness(&a, &WitnessKind::T).unwrap());
        c.expect(
            w.len() == size && s.is_generating(&w),
            format!("S ∪ T at n = {n}"),
        );
        let bound = generation_lower_bound(s).lower();
        c.expect(bound == size, format!("lower bound {bound} at n = {n}"));
    }
    report(
        5,
        "r2 = 6 (no 5-subset of 118755 generates), n = 3 bound 21",
        &c.0,
        start.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_6_intermediate_rank() {
    let start = Instant::now();
    let mut c = Checks::new();
    for (n, size) in [(2, 6), (3, 22)] {
        let a = APlus::new(n).unwrap();
        match intermediate_rank_verify(&a, UNLIMITED) {
            Ok(r) => {
                c.expect(
                    r.value == size && r.witness.len() == size,
                    format!("n = {n}: {}", r.value),
                );
                let s = a.semigroup();
                c.expect(
                    s.is_generating(&r.witness),
                    format!("witness generates at n = {n}"),
                );
                c.expect(
                    s.is_independent(&r.witness).unwrap(),
                    format!("witness independent at n = {n}"),
                );
                if n == 2 {
                    c.expect(
                        r.exhaustive && r.sets_examined > 0,
                        "n = 2 enumeration incomplete",
                    );
                }
            }
            Err(e) => c.expect(false, e.to_string()),
        }
    }
    report(
        6,
        "r3: S' ∪ T sizes 6 and 22, n = 2 maximal and stratified",
        &c.0,
        start.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_7_upper_rank() {
    let start = Instant::now();
    let mut c = Checks::new();
    for (n, size) in [(2, 10), (3, 57)] {
        let a = APlus::new(n).unwrap();
        let i = construct_witness(&a, &WitnessKind::I).unwrap();
        c.expect(
            i.len() == size && a.semigroup().is_independent(&i).unwrap(),
            format!("I at n = {n}"),
        );
    }
    let a2 = APlus::new(2).unwrap();
    let p = construct_witness(&a2, &WitnessKind::P2).unwrap();
    c.expect(
        p.len() == 14 && a2.semigroup().is_independent(&p).unwrap(),
        "P",
    );

    let a3 = APlus::new(3).unwrap();
    let mut constants = a3.stratum_set(Stratum::Zero);
    constants.union_with(&a3.stratum_set(Stratum::Full));
    let cb3 = a3.semigroup().subsemigroup(&constants).unwrap();
    let brute = (0u32..1 << cb3.size())
        .map(|mask| {
            IndexSet::from_indices(cb3.size(), (0..cb3.size()).filter(|i| mask >> i & 1 == 1))
        })
        .filter(|u| !u.is_empty() && cb3.is_independent(u).unwrap())
        .map(|u| u.len())
        .max();
    let searched = upper_rank_search(&cb3, UNLIMITED, &Default::default()).unwrap();
    c.expect(cb3.size() == 10, "C_B3 has 10 elements");
    c.expect(
        brute == Some(5) && searched.outcome.exact_value() == Some(5),
        format!("r4(C_B3): {brute:?}"),
    );

    let options = UpperSearchOptions {
        strata: aplus_strata_caps(&a2),
        seed: Some(p),
    };
    let r = upper_rank_search(a2.semigroup(), UNLIMITED, &options).unwrap();
    match r.outcome.exact_value() {
        Some(v) => {
            c.expect((14..=23).contains(&v), format!("r4(A+(B_2)) = {v}"));
            let w = r.outcome.witness().unwrap();
            c.expect(
                w.len() == v && a2.semigroup().is_independent(w).unwrap(),
                "search witness",
            );
            println!("r4(A+(B_2)) = {v} ({} nodes)", r.nodes);
        }
        None => c.expect(false, "A+(B_2) search did not finish"),
    }
    report(
        7,
        "r4: I, P independent; r4(C_B3) = 5; A+(B_2) search exact",
        &c.0,
        start.elapsed(),
        Duration::from_secs(1800),
    );
}

#[test]
fn criterion_8_large_rank() {
    let start = Instant::now();
    let mut c = Checks::new();
    let a2 = APlus::new(2).unwrap();
    let s2 = a2.semigroup();
    let r = large_rank_exact(s2, 2, UNLIMITED).unwrap();
    c.expect(
        r.outcome.exact_value() == Some(29),
        format!("n = 2: {:?}", r.outcome.bounds()),
    );
    let prime = smallest_prime_subset(s2, 2, UNLIMITED).unwrap();
    let labels = prime.outcome.witness().map(|w| s2.labels_of(w));
    c.expect(
        labels == Some(vec!["xi(1,2)".to_string()]),
        format!("prime set {labels:?}"),
    );

    let a3 = APlus::new(3).unwrap();
    let s3 = a3.semigroup();
    let r = large_rank_exact(s3, 3, UNLIMITED).unwrap();
    c.expect(
        r.outcome.exact_value() == Some(144),
        format!("n = 3: {:?}", r.outcome.bounds()),
    );
    c.expect(
        r.outcome
            .witness()
            .is_some_and(|w| s3.is_closed(w) && w.len() == 143),
        "complement witness",
    );
    let prime = smallest_prime_subset(s3, 3, UNLIMITED).unwrap();
    c.expect(
        prime.outcome.exact_value() == Some(2),
        "smallest prime subset size 2",
    );
    let v = construct_witness(&a3, &WitnessKind::V).unwrap();
    c.expect(s3.is_prime_subset(&v).unwrap(), "V is prime");
    c.expect(
        s3.indecomposables().is_empty(),
        "A+(B_3) has indecomposables",
    );
    c.expect(
        rank_formulas(3).unwrap().ranks.r5.value.to_string() == "144",
        "formula at n = 3",
    );
    report(
        8,
        "r5 = 29 and 144; no indecomposables at n = 3",
        &c.0,
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_9_property_suites() {
    let start = Instant::now();
    let mut c = Checks::new();

    for n in 1..=40 {
        c.expect(
            rank_formulas(n).unwrap().chain_holds(),
            format!("formula chain at n = {n}"),
        );
    }
    let a2 = APlus::new(2).unwrap();
    let s2 = a2.semigroup();
    let exact = [
        small_rank(s2, UNLIMITED).unwrap(),
        lower_rank_exact(s2, UNLIMITED).unwrap(),
        aplus_core::ranks::max_independent_generating(s2, UNLIMITED).unwrap(),
        upper_rank_search(s2, UNLIMITED, &Default::default()).unwrap(),
        large_rank_exact(s2, 2, UNLIMITED).unwrap(),
    ];
    let values: Vec<_> = exact
        .iter()
        .map(|r| r.outcome.exact_value().unwrap())
        .collect();
    c.expect(
        values.windows(2).all(|w| w[0] <= w[1]),
        format!("searched chain {values:?}"),
    );

    // hereditary independence, every subset of size <= 4
    let m = s2.size();
    for k in 2..=4 {
        let _ = for_each_combination(m, k, |subset| {
            let u = IndexSet::from_indices(m, subset.iter().copied());
            if s2.is_independent(&u).unwrap() {
                for &x in subset {
                    let mut smaller = u.clone();
                    smaller.remove(x);
                    if !s2.is_independent(&smaller).unwrap() {
                        c.expect(false, format!("{subset:?} independent but not without {x}"));
                        return ControlFlow::Break(());
                    }
                }
            }
            ControlFlow::Continue(())
        });
    }

    for n in 1..=3 {
        let els = enumerate_a_plus(n).unwrap();
        let ok = els.iter().all(|f| {
            els.iter().all(|g| {
                add_maps(n, f, g).support_size(n) <= f.support_size(n).min(g.support_size(n))
            })
        });
        c.expect(ok, format!("support-sum bound at n = {n}"));
    }

    for n in 2..=3 {
        let a = APlus::new(n).unwrap();
        let s = a.semigroup();
        let w = |k| construct_witness(&a, &k).unwrap();
        let mut st = w(WitnessKind::S);
        st.union_with(&w(WitnessKind::T));
        c.expect(s.is_generating(&st), format!("S ∪ T at n = {n}"));
        let spt = w(WitnessKind::SprimeUnionT);
        c.expect(
            s.is_generating(&spt) && s.is_independent(&spt).unwrap(),
            format!("S' ∪ T at n = {n}"),
        );
        c.expect(
            s.is_independent(&w(WitnessKind::I)).unwrap(),
            format!("I at n = {n}"),
        );
        c.expect(
            s.is_prime_subset(&w(WitnessKind::V)).unwrap(),
            format!("V at n = {n}"),
        );
    }
    for r in &exact[1..] {
        if let Some(w) = r.outcome.witness() {
            c.expect(!w.is_empty(), "empty witness");
        }
    }

    for n in 1..=3 {
        let a = APlus::new(n).unwrap();
        for format in [TableFormat::Json, TableFormat::Csv] {
            let bytes = export_table(a.semigroup(), format).unwrap();
            // CSV has no field for n
            let back = import_table(&bytes).unwrap().with_n(Some(n));
            c.expect(
                &back == a.semigroup(),
                format!("{format:?} import at n = {n}"),
            );
            c.expect(
                export_table(&back, format).unwrap() == bytes,
                format!("{format:?} bytes at n = {n}"),
            );
        }
    }
    report(
        9,
        "chain, heredity, support bound, witnesses, round trips",
        &c.0,
        start.elapsed(),
        Duration::from_secs(300),
    );
}
