//! Bases of the span of all monomorphisms `V_I → M` (or epimorphisms `M → V_J`)
//! consisting of monomorphisms (epimorphisms) themselves.
//!
//! Because `V_I` is thin, a combination `Σ c_k h_k` fails to be mono exactly when
//! its component vanishes at some vertex of `I`, which is a linear condition on
//! the coefficients. Over ℚ this makes every search below finite and exact.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{hom_basis, ModMorphism, ModRef, PersModule};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::poset::Interval;

/// Largest exhaustive search over coefficient vectors in GF(p).
const EXHAUSTIVE_BUDGET: u64 = 200_000;

fn scalar(v: u64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

fn combination(field: Field, basis: &[ModMorphism], coeffs: &[Scalar]) -> ModMorphism {
    let mut acc = basis[0].scale(&coeffs[0]);
    for (h, c) in basis.iter().zip(coeffs).skip(1) {
        if !c.is_zero() {
            acc = acc.add(&h.scale(&field.reduce(c.clone()).expect("coefficient in field")));
        }
    }
    acc
}

/// Finds one morphism in the span of `basis` satisfying `pred`, or proves there is none.
fn find_first(
    basis: &[ModMorphism],
    pred: fn(&ModMorphism) -> bool,
    support: usize,
    label: &str,
) -> Result<Option<ModMorphism>> {
    if let Some(h) = basis.iter().find(|h| pred(h)) {
        return Ok(Some(h.clone()));
    }
    let field = basis[0].field();
    let d = basis.len();
    // Along the curve t ↦ Σ t^k h_k each vertex rules out at most d−1 values of t.
    let ts: Vec<u64> = match field {
        Field::Rationals => (1..=(support * d.saturating_sub(1) + 1) as u64).collect(),
        Field::Prime(p) => (2..p).collect(),
    };
    for t in ts {
        let mut coeffs = Vec::with_capacity(d);
        let mut pow = Scalar::one();
        for _ in 0..d {
            coeffs.push(field.reduce(pow.clone()).expect("integer"));
            pow *= scalar(t);
        }
        let g = combination(field, basis, &coeffs);
        if pred(&g) {
            return Ok(Some(g));
        }
    }
    match field {
        Field::Rationals => Ok(None),
        Field::Prime(p) => {
            let total = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
            if total > EXHAUSTIVE_BUDGET as u128 {
                return Err(Error::SpanSearchInconclusive { interval: label.to_string(), p });
            }
            for code in 0..total as u64 {
                let mut c = code;
                let coeffs: Vec<Scalar> = (0..d)
                    .map(|_| {
                        let digit = c % p;
                        c /= p;
                        scalar(digit)
                    })
                    .collect();
                let g = combination(field, basis, &coeffs);
                if pred(&g) {
                    return Ok(Some(g));
                }
            }
            Ok(None)
        }
    }
}

/// Greedy construction of a basis of the span of `{g ∈ span(basis) : pred(g)}`
/// made of elements satisfying `pred`.
pub(crate) fn spanning_subset(
    basis: &[ModMorphism],
    pred: fn(&ModMorphism) -> bool,
    support: usize,
    label: &str,
) -> Result<Vec<ModMorphism>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let Some(first) = find_first(basis, pred, support, label)? else {
        return Ok(Vec::new());
    };
    let field = basis[0].field();
    let len = basis[0].to_vector().len();
    let mut chosen = vec![first];
    for h in basis {
        let span = Mat::from_columns(field, len, &chosen.iter().map(ModMorphism::to_vector).collect::<Vec<_>>());
        if span.column_span_contains(&h.to_vector()) {
            continue;
        }
        if pred(h) {
            chosen.push(h.clone());
            continue;
        }
        // h + t·m is bad at a vertex for at most one t when m is good there.
        let ts: Vec<u64> = match field {
            Field::Rationals => (1..=(support + 1) as u64).collect(),
            Field::Prime(p) => (1..p).collect(),
        };
        let mut found = None;
        'search: for m in &chosen {
            for &t in &ts {
                let g = h.add(&m.scale(&field.reduce(scalar(t)).expect("integer")));
                if pred(&g) {
                    found = Some(g);
                    break 'search;
                }
            }
        }
        match found {
            Some(g) => chosen.push(g),
            None => {
                return Err(match field {
                    Field::Prime(p) => Error::SpanSearchInconclusive { interval: label.to_string(), p },
                    Field::Rationals => Error::Inconsistent(format!("no good shift found for {label}")),
                })
            }
        }
    }
    Ok(chosen)
}

fn interval_module_for(interval: &Interval, m: &ModRef) -> Result<ModRef> {
    Ok(Arc::new(PersModule::interval_module(m.quiver().clone(), m.field(), interval)?))
}

/// Linearly independent monomorphisms `V_I → M` spanning the span of all of them.
/// Empty when there is no monomorphism.
pub fn mono_spanning_set(interval: &Interval, m: &ModRef) -> Result<Vec<ModMorphism>> {
    let vi = interval_module_for(interval, m)?;
    mono_spanning_set_from(&vi, interval, m)
}

pub(crate) fn mono_spanning_set_from(vi: &ModRef, interval: &Interval, m: &ModRef) -> Result<Vec<ModMorphism>> {
    let basis = hom_basis(vi, m);
    spanning_subset(&basis, ModMorphism::is_mono, interval.len(), &m.quiver().render_interval(interval))
}

/// Linearly independent epimorphisms `M → V_J` spanning the span of all of them.
pub fn epi_spanning_set(m: &ModRef, interval: &Interval) -> Result<Vec<ModMorphism>> {
    let vj = interval_module_for(interval, m)?;
    epi_spanning_set_from(m, &vj, interval)
}

pub(crate) fn epi_spanning_set_from(m: &ModRef, vj: &ModRef, interval: &Interval) -> Result<Vec<ModMorphism>> {
    let basis = hom_basis(m, vj);
    spanning_subset(&basis, ModMorphism::is_epi, interval.len(), &m.quiver().render_interval(interval))
}

/// Whether some monomorphism `V_I → M` exists.
pub fn has_mono(interval: &Interval, m: &ModRef) -> Result<bool> {
    Ok(!mono_spanning_set(interval, m)?.is_empty())
}

/// Whether some epimorphism `M → V_J` exists.
pub fn has_epi(m: &ModRef, interval: &Interval) -> Result<bool> {
    Ok(!epi_spanning_set(m, interval)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::BoundQuiver;
    use crate::repmod::direct_sum;

    const Q: Field = Field::Rationals;

    #[test]
    fn interval_into_itself() {
        let q = Arc::new(BoundQuiver::commutative_ladder(2).unwrap());
        let i = q.full_interval().unwrap();
        let v = Arc::new(PersModule::interval_module(q.clone(), Q, &i).unwrap());
        let s = mono_spanning_set(&i, &v).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].is_iso());
    }

    #[test]
    fn no_mono_when_a_vertex_is_missing() {
        let q = Arc::new(BoundQuiver::commutative_ladder(2).unwrap());
        let full = q.full_interval().unwrap();
        let top = q.ladder_interval(Some((1, 2)), None).unwrap();
        let v = Arc::new(PersModule::interval_module(q.clone(), Q, &top).unwrap());
        assert!(mono_spanning_set(&full, &v).unwrap().is_empty());
    }

    #[test]
    fn doubled_interval_has_two_monos_spanning_hom() {
        let q = Arc::new(BoundQuiver::commutative_ladder(2).unwrap());
        let i = q.ladder_interval(None, Some((1, 2))).unwrap();
        let v = Arc::new(PersModule::interval_module(q.clone(), Q, &i).unwrap());
        let sum = direct_sum(&q, Q, &[v.clone(), v]).unwrap();
        let s = mono_spanning_set(&i, &sum.module).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(ModMorphism::is_mono));
    }

    #[test]
    fn shifted_combination_is_found() {
        // Hom(V_[1,2], V_[1,1] ⊕ V_[1,2]) has a basis element that vanishes at
        // vertex 2; the greedy step must repair it.
        let q = Arc::new(BoundQuiver::commutative_ladder(2).unwrap());
        let long = q.ladder_interval(None, Some((1, 2))).unwrap();
        let short = q.ladder_interval(None, Some((1, 1))).unwrap();
        let a = Arc::new(PersModule::interval_module(q.clone(), Q, &long).unwrap());
        let b = Arc::new(PersModule::interval_module(q.clone(), Q, &short).unwrap());
        let sum = direct_sum(&q, Q, &[b, a]).unwrap();
        let s = mono_spanning_set(&long, &sum.module).unwrap();
        assert_eq!(s.len(), hom_basis(&Arc::new(PersModule::interval_module(q.clone(), Q, &long).unwrap()), &sum.module).len());
        assert!(s.iter().all(ModMorphism::is_mono));
    }

    #[test]
    fn prime_field_search_terminates() {
        let f = Field::prime(2).unwrap();
        let q = Arc::new(BoundQuiver::commutative_ladder(2).unwrap());
        let i = q.ladder_interval(None, Some((1, 2))).unwrap();
        let v = Arc::new(PersModule::interval_module(q.clone(), f, &i).unwrap());
        let sum = direct_sum(&q, f, &[v.clone(), v]).unwrap();
        let s = mono_spanning_set(&i, &sum.module).unwrap();
        assert_eq!(s.len(), 2);
    }
}
