//! Random modules for property tests and benchmarks.
//!
//! General modules are produced as kernels, images and cokernels of random
//! morphisms between random interval sums. On commutative ladders a direct
//! generator solves the commutativity equations instead, which reaches
//! non-interval indecomposables far more often. Every generator is driven by
//! a caller-supplied [`Rng`].

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::poset::{enumerate_intervals, BoundQuiver, Interval};
use crate::repmod::{cokernel, direct_sum, hom_basis, image, kernel, ModMorphism, ModRef, PersModule};

/// A small random scalar: an integer in `−2..=2` over ℚ, uniform over `GF(p)`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    match field {
        Field::Rationals => field.from_int(rng.gen_range(-2..=2)),
        _ => field.from_int(rng.gen_range(0..field.characteristic() as i64)),
    }
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(field, rows, cols, |_, _| random_scalar(rng, field))
}

/// A random invertible `n × n` matrix, by rejection.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize) -> Mat {
    loop {
        let g = random_matrix(rng, field, n, n);
        if g.rank() == n {
            return g;
        }
    }
}

/// An isomorphic copy of `m` under a random base change at every vertex.
pub fn shuffle_basis<R: Rng + ?Sized>(rng: &mut R, m: &ModRef) -> Result<ModRef> {
    let g: Vec<Mat> = m.dims().iter().map(|&d| random_invertible(rng, m.field(), d)).collect();
    Ok(m.change_basis(&g)?.0)
}

/// A random linear combination of a basis of `Hom(x, y)`.
pub fn random_morphism<R: Rng + ?Sized>(rng: &mut R, x: &ModRef, y: &ModRef) -> ModMorphism {
    hom_basis(x, y)
        .iter()
        .fold(ModMorphism::zero(x.clone(), y.clone()), |acc, b| acc.add(&b.scale(&random_scalar(rng, x.field()))))
}

/// `⊕ V_I` over the listed intervals (repetitions allowed).
pub fn interval_sum_module(q: &Arc<BoundQuiver>, field: Field, summands: &[Interval]) -> Result<ModRef> {
    let mods = summands
        .iter()
        .map(|i| PersModule::interval_module(q.clone(), field, i).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    Ok(direct_sum(q, field, &mods)?.module)
}

/// A random sum of `1..=max_summands` interval modules drawn from `pool`,
/// returned with its multiset of summands.
pub fn random_interval_sum<R: Rng + ?Sized>(
    rng: &mut R,
    q: &Arc<BoundQuiver>,
    field: Field,
    pool: &[Interval],
    max_summands: usize,
) -> Result<(ModRef, BTreeMap<Interval, usize>)> {
    if pool.is_empty() || max_summands == 0 {
        return Err(Error::InvalidModule("no intervals to draw from".into()));
    }
    let k = rng.gen_range(1..=max_summands);
    let summands: Vec<Interval> = (0..k).map(|_| pool.choose(rng).expect("nonempty").clone()).collect();
    let mut counts = BTreeMap::new();
    for s in &summands {
        *counts.entry(s.clone()).or_insert(0) += 1;
    }
    Ok((interval_sum_module(q, field, &summands)?, counts))
}

/// A random nonzero module with every vertex dimension at most `max_dim`,
/// in a random basis.
pub fn random_module<R: Rng + ?Sized>(rng: &mut R, q: &Arc<BoundQuiver>, field: Field, max_dim: usize) -> Result<ModRef> {
    let pool = enumerate_intervals(q);
    for _ in 0..10_000 {
        // Cokernels of maps into larger sums and kernels of maps out of them
        // are the likeliest to be indecomposable without being intervals.
        let kind = rng.gen_range(0..3);
        let (small, large) = (rng.gen_range(1..=2), rng.gen_range(1..=4));
        let (sx, sy) = if kind == 0 { (large, small) } else { (small, large) };
        let (x, _) = random_interval_sum(rng, q, field, &pool, sx)?;
        let (y, _) = random_interval_sum(rng, q, field, &pool, sy)?;
        let f = random_morphism(rng, &x, &y);
        let m = match kind {
            0 => kernel(&f)?.module,
            1 => image(&f)?.module,
            _ => cokernel(&f)?.module,
        };
        if !m.is_zero() && m.dims().iter().all(|&d| d <= max_dim) {
            return shuffle_basis(rng, &m);
        }
    }
    Err(Error::Inconsistent("random module generation kept exceeding the dimension bound".into()))
}

/// A basis-shuffled direct sum of `required` and up to `max_extra` further
/// modules drawn from `pieces`, with every vertex dimension at most `max_dim`.
pub fn random_sum_of<R: Rng + ?Sized>(
    rng: &mut R,
    q: &Arc<BoundQuiver>,
    field: Field,
    required: &[ModRef],
    pieces: &[ModRef],
    max_extra: usize,
    max_dim: usize,
) -> Result<ModRef> {
    for _ in 0..10_000 {
        let extra = rng.gen_range(0..=max_extra);
        let mut chosen: Vec<ModRef> = required.to_vec();
        chosen.extend((0..extra).filter_map(|_| pieces.choose(rng).cloned()));
        if chosen.is_empty() {
            continue;
        }
        let m = direct_sum(q, field, &chosen)?.module;
        if !m.is_zero() && m.dims().iter().all(|&d| d <= max_dim) {
            return shuffle_basis(rng, &m);
        }
    }
    Err(Error::Inconsistent("random sum kept exceeding the dimension bound".into()))
}

/// A random module over `CLₙ` with vertex dimensions in `0..=max_dim`: the
/// horizontal maps are random and the vertical maps are a random solution of
/// the commutativity equations `b_{i+1} a_i = a'_i b_i`. Zero modules are
/// rejected.
pub fn random_ladder_module<R: Rng + ?Sized>(rng: &mut R, q: &Arc<BoundQuiver>, field: Field, max_dim: usize) -> Result<ModRef> {
    let n = q.ladder_size().ok_or(Error::NotLadder)?;
    loop {
        let dims: Vec<usize> = (0..2 * n).map(|_| rng.gen_range(0..=max_dim)).collect();
        if dims.iter().all(|&d| d == 0) {
            continue;
        }
        let (bot, top) = (&dims[..n], &dims[n..]);
        let a: Vec<Mat> = (0..n - 1).map(|i| random_matrix(rng, field, bot[i + 1], bot[i])).collect();
        let a_top: Vec<Mat> = (0..n - 1).map(|i| random_matrix(rng, field, top[i + 1], top[i])).collect();
        // Unknowns: the entries of b_0, …, b_{n-1}, each row-major.
        let mut offsets = Vec::with_capacity(n);
        let mut unknowns = 0;
        for i in 0..n {
            offsets.push(unknowns);
            unknowns += top[i] * bot[i];
        }
        let var = |i: usize, r: usize, c: usize| offsets[i] + r * bot[i] + c;
        let mut rows = Vec::new();
        for i in 0..n - 1 {
            for r in 0..top[i + 1] {
                for c in 0..bot[i] {
                    let mut row = vec![field.zero(); unknowns];
                    for k in 0..bot[i + 1] {
                        let e = &mut row[var(i + 1, r, k)];
                        *e = field.add(e, a[i].get(k, c));
                    }
                    for k in 0..top[i] {
                        let e = &mut row[var(i, k, c)];
                        *e = field.sub(e, a_top[i].get(r, k));
                    }
                    rows.push(row);
                }
            }
        }
        let solutions = Mat::from_rows(field, rows, unknowns)?.kernel_basis();
        let mut x = vec![field.zero(); unknowns];
        for v in &solutions {
            let s = random_scalar(rng, field);
            for (xe, ve) in x.iter_mut().zip(v) {
                *xe = field.add(xe, &field.mul(&s, ve));
            }
        }
        let b: Vec<Mat> = (0..n)
            .map(|i| Mat::from_fn(field, top[i], bot[i], |r, c| x[var(i, r, c)].clone()))
            .collect();
        let maps = q
            .arrows()
            .iter()
            .map(|arrow| {
                let (s, t) = (arrow.source, arrow.target);
                match (s < n, t < n) {
                    (true, true) => a[s].clone(),
                    (false, false) => a_top[s - n].clone(),
                    _ => b[s].clone(),
                }
            })
            .collect();
        return Ok(Arc::new(PersModule::new(q.clone(), field, dims, maps)?));
    }
}
