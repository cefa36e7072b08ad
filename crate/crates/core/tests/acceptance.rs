//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relbetti::fixtures::{cl3_m45, cl5_m, ladder, ladder_interval, y_family, y_module};
use relbetti::koszul::lattice::{formal_koszul_coresolution, semilattice_koszul_complex, FamilyLattice};
use relbetti::koszul::{koszul_complex, koszul_coresolution, validate_koszul_coresolution, KoszulEngine};
use relbetti::poset::{enumerate_intervals, enumerate_intervals_exhaustive, enumerate_intervals_ladder};
use relbetti::random::{
    random_interval_sum, random_ladder_module, random_matrix, random_module, random_sum_of, shuffle_basis,
};
use relbetti::repmod::IntervalFamily;
use relbetti::resolve::{betti, minimal_interval_coresolution, minimal_interval_resolution, BettiTable};
use relbetti::tda::{compressed_multiplicity, interval_replacement, is_interval_decomposable};
use relbetti::{BoundQuiver, Field, Interval, IntervalPoset, Mat, ModRef, PersModule};

const Q: Field = Field::Rationals;

fn multiset(q: &BoundQuiver, rows: &[&str]) -> BTreeMap<Interval, usize> {
    let mut out = BTreeMap::new();
    for r in rows {
        *out.entry(ladder_interval(q, r)).or_insert(0) += 1;
    }
    out
}

fn interval_module(q: &Arc<BoundQuiver>, i: &Interval) -> ModRef {
    Arc::new(PersModule::interval_module(q.clone(), Q, i).unwrap())
}

fn full_engine(n: usize) -> KoszulEngine {
    KoszulEngine::new(Arc::new(IntervalFamily::all(ladder(n), Q)))
}

fn within(start: Instant, limit: Duration, what: &str) {
    let spent = start.elapsed();
    assert!(spent < limit, "{what} took {spent:?}, limit {limit:?}");
}

/// Koszul degrees, Betti numbers and δ for one interval of the CL₃ fixture.
fn cl3_fixture(interval: &str, degrees: &[&[&str]], expected_betti: &[usize], expected_delta: i64) {
    let start = Instant::now();
    let engine = full_engine(3);
    let q = ladder(3);
    let m = cl3_m45(Q).unwrap();
    let i = ladder_interval(&q, interval);
    let idx = engine.family().index_of(&i).unwrap();
    let y = engine.coresolution(idx).unwrap();
    assert_eq!(y.len(), degrees.len() + 1, "number of Koszul terms");
    for (d, rows) in degrees.iter().enumerate() {
        assert_eq!(y.multiset(d + 1), multiset(&q, rows), "Koszul degree {}", d + 1);
    }
    let h = engine.betti(&m, idx).unwrap();
    assert_eq!(h, expected_betti, "Betti numbers");
    let r = interval_replacement(&engine, &m).unwrap();
    assert_eq!(r.delta(&i), expected_delta, "interval replacement");
    within(start, Duration::from_secs(5), "fixture");
}

fn criterion_1() {
    cl3_fixture("111/001", &[&["111/011", "110/000", "000/001"], &["110/011"]], &[1, 0, 0], 1);
}

fn criterion_2() {
    cl3_fixture(
        "011/001",
        &[&["010/000", "011/011", "111/001"], &["111/011", "110/000", "010/011"], &["110/011"]],
        &[0, 1, 0, 0],
        -1,
    );
}

fn criterion_3() {
    let start = Instant::now();
    let engine = full_engine(5);
    let q = ladder(5);
    let m = cl5_m(Q).unwrap();
    let i = ladder_interval(&q, "00011/00001");
    let idx = engine.family().index_of(&i).unwrap();
    let h = engine.betti(&m, idx).unwrap();
    assert_eq!(h[..2], [0, 1]);
    assert!(h[2..].iter().all(|&x| x == 0));
    let r = interval_replacement(&engine, &m).unwrap();
    assert_eq!(r.delta(&i), -1);
    let c = minimal_interval_coresolution(&m, engine.family(), 40).unwrap();
    assert_eq!(c.terms.len(), 2);
    assert_eq!(c.terms[0].multiset(), multiset(&q, &["00110/00000", "00010/00011", "00111/00011"]));
    assert_eq!(c.terms[1].multiset(), multiset(&q, &["00110/00011"]));
    within(start, Duration::from_secs(30), "CL5 fixture");
}

/// The randomized suite shared by criteria 4, 7 and 9.
struct Suite {
    cases: Vec<(usize, ModRef)>,
}

fn suite() -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cases = Vec::new();
    for (n, count) in [(2, 50), (3, 20)] {
        let q = ladder(n);
        for k in 0..count {
            let m = if k % 2 == 0 {
                random_module(&mut rng, &q, Q, 3).unwrap()
            } else {
                random_ladder_module(&mut rng, &q, Q, 3).unwrap()
            };
            cases.push((n, m));
        }
    }
    // The only non-interval indecomposable of CL3, plus random interval summands.
    let q = ladder(3);
    let intervals: Vec<ModRef> =
        IntervalFamily::all(q.clone(), Q).intervals().iter().map(|i| interval_module(&q, i)).collect();
    let m45 = cl3_m45(Q).unwrap();
    for _ in 0..10 {
        cases.push((3, random_sum_of(&mut rng, &q, Q, std::slice::from_ref(&m45), &intervals, 3, 3).unwrap()));
    }
    Suite { cases }
}

fn criterion_4(s: &Suite) {
    let start = Instant::now();
    let engines = [full_engine(2), full_engine(3)];
    for (k, (n, m)) in s.cases.iter().enumerate() {
        let engine = &engines[n - 2];
        let resolved = betti(m, engine.family(), 40).unwrap();
        let koszul = engine.betti_table(m).unwrap();
        assert_eq!(resolved, koszul, "case {k} over CL{n}");
    }
    assert!(s.cases.iter().filter(|(n, _)| *n == 2).count() >= 50);
    assert!(s.cases.iter().filter(|(n, _)| *n == 3).count() >= 20);
    let non_interval = s
        .cases
        .iter()
        .filter(|(n, m)| !is_interval_decomposable(&engines[n - 2], m).unwrap().decomposable)
        .count();
    assert!(non_interval >= 10, "only {non_interval} non-interval modules in the suite");
    within(start, Duration::from_secs(600), "route equivalence");
}

fn criterion_5() {
    let start = Instant::now();
    for (n, expected) in [(2, 11), (3, 27)] {
        let fam = IntervalFamily::all(ladder(n), Q);
        assert_eq!(fam.len(), expected);
        for i in 0..fam.len() {
            let y = koszul_coresolution(&fam, i, 40).unwrap();
            validate_koszul_coresolution(&y, &fam).unwrap();
        }
    }
    within(start, Duration::from_secs(300), "validator");
}

fn criterion_6() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let engine = full_engine(3);
    let q = ladder(3);
    let pool = enumerate_intervals(&q);
    for k in 0..100 {
        let (m, counts) = random_interval_sum(&mut rng, &q, Q, &pool, 5).unwrap();
        let shuffled = shuffle_basis(&mut rng, &m).unwrap();
        let d = is_interval_decomposable(&engine, &shuffled).unwrap();
        assert!(d.decomposable, "sum {k} rejected");
        assert_eq!(d.multiplicities, counts, "sum {k}");
    }
    let m = cl3_m45(Q).unwrap();
    assert!(!is_interval_decomposable(&engine, &m).unwrap().decomposable);
    let shuffled = shuffle_basis(&mut rng, &m).unwrap();
    assert!(!is_interval_decomposable(&engine, &shuffled).unwrap().decomposable);
}

fn criterion_7(s: &Suite) {
    let engines = [full_engine(2), full_engine(3)];
    for (k, (n, m)) in s.cases.iter().enumerate() {
        let engine = &engines[n - 2];
        let fam = engine.family();
        let table: BettiTable = betti(m, fam, 40).unwrap();
        let ip = IntervalPoset::new(fam.intervals().to_vec());
        let ivs = ip.intervals();
        let alt: Vec<i64> = ivs.iter().map(|j| table.alternating_sum(j)).collect();
        let direct: Vec<i64> = ivs.iter().map(|i| compressed_multiplicity(m, i).unwrap() as i64).collect();
        for (a, i) in ivs.iter().enumerate() {
            let sum: i64 = ivs.iter().zip(&alt).filter(|(j, _)| i.is_subset_of(j)).map(|(_, &v)| v).sum();
            assert_eq!(direct[a], sum, "case {k}: c at {:?}", i.vertices());
        }
        let mu = ip.mobius();
        for a in 0..ivs.len() {
            let inv = direct.iter().enumerate().fold(Q.zero(), |acc, (b, &c)| Q.add(&acc, &Q.mul(mu.get(a, b), &Q.from_int(c))));
            assert_eq!(inv, Q.from_int(alt[a]), "case {k}: Möbius inversion at {:?}", ivs[a].vertices());
        }
        let r = interval_replacement(engine, m).unwrap();
        for (a, i) in ivs.iter().enumerate() {
            assert_eq!(r.delta(i), alt[a]);
            assert_eq!(r.c(i), direct[a]);
        }
    }
}

fn criterion_8() {
    let fam = y_family(Q).unwrap();
    let lat = FamilyLattice::new(fam.clone()).unwrap();
    let m = y_module(Q).unwrap();
    let f = lat.hom_functor(&m);
    let table = betti(&m, &fam, 16).unwrap();
    for a in 0..fam.len() {
        let formal = formal_koszul_coresolution(&lat, a).unwrap();
        let minimal = koszul_coresolution(&fam, a, 16).unwrap();
        assert_eq!(formal.len(), minimal.len());
        for d in 0..formal.len() {
            assert_eq!(formal.multiset(d), minimal.multiset(d), "member {a}, degree {d}");
        }
        let semi = semilattice_koszul_complex(lat.order(), a, &f).unwrap().homology();
        assert_eq!(semi, table.row(fam.interval(a), semi.len()), "member {a}");
        assert_eq!(koszul_complex(&minimal, &m).unwrap().homology(), semi);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_9(s: &Suite) {
    for n in 2..=5 {
        let q = ladder(n);
        let closed = enumerate_intervals_ladder(n).unwrap();
        let brute = enumerate_intervals_exhaustive(&q);
        assert_eq!(closed, brute, "CL{n}");
        // n(n+1)/2 per single row plus the mixed shapes k ≤ i ≤ l ≤ j.
        assert_eq!(closed.len(), n * (n + 1) + binomial(n + 3, 4));
        let ip = IntervalPoset::new(closed);
        let size = ip.intervals().len();
        assert_eq!(ip.zeta().mul(ip.mobius()), Mat::identity(Q, size));
        assert_eq!(ip.mobius().mul(ip.zeta()), Mat::identity(Q, size));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for field in [Q, Field::prime(7).unwrap()] {
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(0..6), rng.gen_range(0..6));
            let a = random_matrix(&mut rng, field, r, c);
            let ker = a.kernel_basis();
            assert_eq!(a.rank() + ker.len(), c);
            assert_eq!(a.rank(), a.transpose().rank());
            for v in &ker {
                assert!(a.mul_vec(v).iter().all(|x| *x == field.zero()));
            }
            if c > 0 && r > 0 {
                let x = random_matrix(&mut rng, field, c, 1);
                let b = a.mul(&x);
                let y = a.solve_matrix(&b).unwrap();
                assert_eq!(a.mul(&y), b);
            }
        }
    }
    for (n, m) in &s.cases {
        let fam = IntervalFamily::all(ladder(*n), Q);
        let r = minimal_interval_resolution(m, &fam, 40).unwrap();
        r.audit_exactness().unwrap();
        assert!(r.euler_characteristic_holds());
        let c = minimal_interval_coresolution(m, &fam, 40).unwrap();
        c.audit_exactness().unwrap();
        assert!(c.euler_characteristic_holds());
    }
}

fn main() {
    let suite = suite();
    type Check<'a> = (&'a str, Box<dyn Fn() + 'a>);
    let criteria: Vec<Check> = vec![
        ("1 CL3 fixture A: Koszul terms, β = δ_{i,0}, δ = 1", Box::new(criterion_1)),
        ("2 CL3 fixture B: β = δ_{i,1}, H1 one-dimensional, δ = -1", Box::new(criterion_2)),
        ("3 CL5 fixture: β = δ_{i,1}, δ = -1, coresolution terms", Box::new(criterion_3)),
        ("4 route equivalence on 50 CL2 and 30 CL3 random modules", Box::new(|| criterion_4(&suite))),
        ("5 Koszul validator on all CL2 and CL3 intervals", Box::new(criterion_5)),
        ("6 decomposability of shuffled interval sums and M_{4,5}", Box::new(criterion_6)),
        ("7 compressed multiplicity vs alternating Betti sums, Möbius", Box::new(|| criterion_7(&suite))),
        ("8 lattice comparison on the Y-shaped poset", Box::new(criterion_8)),
        ("9 structural invariants", Box::new(|| criterion_9(&suite))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).is_ok();
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {name}: {status} ({:.2?})", start.elapsed());
        failed += usize::from(!ok);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
