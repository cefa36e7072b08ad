//! Randomized properties checked against brute-force or independent oracles.

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relbetti::approx::{minimal_left_approximation, minimal_right_approximation, ApproxMorphism};
use relbetti::fixtures::ladder;
use relbetti::koszul::KoszulEngine;
use relbetti::poset::enumerate_intervals;
use relbetti::random::{interval_sum_module, random_interval_sum, random_ladder_module, random_module, shuffle_basis};
use relbetti::repmod::{hom_basis, hom_dim, IntervalFamily};
use relbetti::resolve::betti;
use relbetti::tda::{interval_replacement, is_interval_decomposable, zigzag_interval_multiplicities, zigzag_quiver};
use relbetti::{Field, Interval, Mat, ModMorphism, ModRef, PersModule};

fn engine(n: usize, field: Field) -> KoszulEngine {
    KoszulEngine::new(Arc::new(IntervalFamily::all(ladder(n), field)))
}

/// Multiplicities from the linear system `Σ_K m_K dim Hom(V_J, V_K) = dim Hom(V_J, Z)`.
fn hom_dimension_oracle(z: &ModRef) -> BTreeMap<(usize, usize), usize> {
    let q = z.quiver().clone();
    let f = Field::Rationals;
    let ints = enumerate_intervals(&q);
    let mods: Vec<ModRef> = ints.iter().map(|i| Arc::new(PersModule::interval_module(q.clone(), f, i).unwrap())).collect();
    let h = Mat::from_fn(f, ints.len(), ints.len(), |j, k| f.from_int(hom_dim(&mods[j], &mods[k]) as i64));
    let rhs: Vec<_> = mods.iter().map(|v| f.from_int(hom_dim(v, z) as i64)).collect();
    let sol = h.solve(&rhs).expect("Hom matrix is invertible");
    let mut out = BTreeMap::new();
    for (k, x) in sol.particular.iter().enumerate() {
        let v = relbetti::exactla::as_small_int(x).expect("integral multiplicity");
        assert!(v >= 0);
        if v > 0 {
            let vs = ints[k].vertices();
            out.insert((vs[0] + 1, vs[vs.len() - 1] + 1), v as usize);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn zigzag_multiplicities_match_the_hom_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = zigzag_quiver();
        let pool = enumerate_intervals(&q);
        let (z, counts) = random_interval_sum(&mut rng, &q, Field::Rationals, &pool, 5).unwrap();
        let z = shuffle_basis(&mut rng, &z).unwrap();
        let got = zigzag_interval_multiplicities(&z).unwrap();
        let expected: BTreeMap<(usize, usize), usize> = counts
            .iter()
            .map(|(i, &m)| ((i.vertices()[0] + 1, i.vertices()[i.len() - 1] + 1), m))
            .collect();
        prop_assert_eq!(&got, &expected);
        prop_assert_eq!(&hom_dimension_oracle(&z), &expected);
        let mut dims = [0; 5];
        for (&(a, b), &m) in &got {
            for d in &mut dims[a - 1..b] {
                *d += m;
            }
        }
        prop_assert_eq!(&dims[..], z.dims());
    }

    #[test]
    fn routes_agree_over_prime_fields(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = Field::prime(p).unwrap();
        let n = rng.gen_range(2..=3);
        let q = ladder(n);
        let m = if rng.gen_bool(0.5) {
            random_ladder_module(&mut rng, &q, field, 2).unwrap()
        } else {
            random_module(&mut rng, &q, field, 3).unwrap()
        };
        let e = engine(n, field);
        prop_assert_eq!(betti(&m, e.family(), 40).unwrap(), e.betti_table(&m).unwrap());
    }

    #[test]
    fn decomposability_ignores_base_change(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = ladder(3);
        let m = random_ladder_module(&mut rng, &q, Field::Rationals, 2).unwrap();
        let s = shuffle_basis(&mut rng, &m).unwrap();
        let e = engine(3, Field::Rationals);
        prop_assert_eq!(is_interval_decomposable(&e, &m).unwrap(), is_interval_decomposable(&e, &s).unwrap());
    }

    #[test]
    fn replacement_of_interval_sums_is_the_multiplicity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = ladder(3);
        let pool = enumerate_intervals(&q);
        let (m, counts) = random_interval_sum(&mut rng, &q, Field::Rationals, &pool, 4).unwrap();
        let m = shuffle_basis(&mut rng, &m).unwrap();
        let r = interval_replacement(&engine(3, Field::Rationals), &m).unwrap();
        for i in &pool {
            let want = counts.get(i).copied().unwrap_or(0) as i64;
            prop_assert_eq!(r.delta(i), want);
            let above: usize = counts.iter().filter(|(j, _)| i.is_subset_of(j)).map(|(_, &k)| k).sum();
            prop_assert_eq!(r.c(i), above as i64);
        }
    }
}

/// Every element of a vector space over GF(2) with the given basis.
fn all_elements(basis: &[ModMorphism], zero: ModMorphism) -> Vec<ModMorphism> {
    let mut out = vec![zero];
    for b in basis {
        let with: Vec<ModMorphism> = out.iter().map(|x| x.add(b)).collect();
        out.extend(with);
    }
    out
}

/// Brute force over GF(2): every `V_I → M` is `a ∘ g` for some `g : V_I → X`.
fn right_property_by_enumeration(a: &ModMorphism, m: &ModRef, fam: &IntervalFamily) -> bool {
    let x = a.source();
    (0..fam.len()).all(|i| {
        let v = fam.module(i);
        let through: Vec<ModMorphism> =
            all_elements(&hom_basis(v, x), ModMorphism::zero(v.clone(), x.clone())).iter().map(|g| a.after(g)).collect();
        all_elements(&hom_basis(v, m), ModMorphism::zero(v.clone(), m.clone())).iter().all(|f| through.contains(f))
    })
}

/// Brute force over GF(2): every `M → V_J` is `g ∘ a` for some `g : X → V_J`.
fn left_property_by_enumeration(a: &ModMorphism, m: &ModRef, fam: &IntervalFamily) -> bool {
    let x = a.target();
    (0..fam.len()).all(|j| {
        let v = fam.module(j);
        let through: Vec<ModMorphism> =
            all_elements(&hom_basis(x, v), ModMorphism::zero(x.clone(), v.clone())).iter().map(|g| g.after(a)).collect();
        all_elements(&hom_basis(m, v), ModMorphism::zero(m.clone(), v.clone())).iter().all(|f| through.contains(f))
    })
}

fn drop_summand(a: &ApproxMorphism, fam: &IntervalFamily, m: &ModRef, skip: usize) -> ModMorphism {
    let keep: Vec<Interval> = a.sum.summands().iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, s)| s.clone()).collect();
    let sum = relbetti::repmod::IntervalSum::new(fam.quiver(), fam.field(), keep).unwrap();
    let comps: Vec<ModMorphism> =
        a.components.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, c)| c.clone()).collect();
    match a.side {
        relbetti::approx::Side::Right => sum.morphism_from(m, &comps).unwrap(),
        relbetti::approx::Side::Left => sum.morphism_to(m, &comps).unwrap(),
    }
}

#[test]
fn minimal_approximations_by_exhaustive_enumeration_over_gf2() {
    let f = Field::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let q = ladder(2);
    let fam = IntervalFamily::all(q.clone(), f);
    for _ in 0..12 {
        let m = random_ladder_module(&mut rng, &q, f, 2).unwrap();
        let right = minimal_right_approximation(&m, &fam).unwrap();
        assert!(right_property_by_enumeration(&right.map, &m, &fam));
        for k in 0..right.len() {
            assert!(!right_property_by_enumeration(&drop_summand(&right, &fam, &m, k), &m, &fam));
        }
        let left = minimal_left_approximation(&m, &fam).unwrap();
        assert!(left_property_by_enumeration(&left.map, &m, &fam));
        for k in 0..left.len() {
            assert!(!left_property_by_enumeration(&drop_summand(&left, &fam, &m, k), &m, &fam));
        }
    }
}

#[test]
fn interval_sums_are_their_own_approximations() {
    let q = ladder(3);
    let fam = IntervalFamily::all(q.clone(), Field::Rationals);
    let summands = [enumerate_intervals(&q)[4].clone(), enumerate_intervals(&q)[9].clone()];
    let m = interval_sum_module(&q, Field::Rationals, &summands).unwrap();
    let right = minimal_right_approximation(&m, &fam).unwrap();
    assert!(right.map.is_iso());
    let left = minimal_left_approximation(&m, &fam).unwrap();
    assert!(left.map.is_iso());
}
