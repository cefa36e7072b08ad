//! Interval decomposability, compressed multiplicities on commutative ladders
//! and the interval replacement.
//!
//! The compression `ξ_I` sends the five-vertex zigzag `1 ← 2 → 3 ← 4 → 5` into
//! a ladder so that `V_I` pulls back to the full interval module. Everything
//! that uses it is restricted to ladders.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::approx::{compute_fint, compute_sint};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::koszul::{koszul_complex, IntervalCochain, KoszulEngine};
use crate::poset::{Arrow, BoundQuiver, Interval, IntervalPoset};
use crate::repmod::{ModRef, PersModule};

/// Arrows of the zigzag as (source, target), 0-based: `2→1`, `2→3`, `4→3`, `4→5`.
pub const ZIGZAG_ARROWS: [(usize, usize); 4] = [(1, 0), (1, 2), (3, 2), (3, 4)];

/// The zigzag `1 ← 2 → 3 ← 4 → 5` with arrows `α1..α4`.
pub fn zigzag_quiver() -> Arc<BoundQuiver> {
    let vertices = (1..=5).map(|i| i.to_string()).collect();
    let arrows = ZIGZAG_ARROWS
        .iter()
        .enumerate()
        .map(|(k, &(source, target))| Arrow { label: format!("α{}", k + 1), source, target })
        .collect();
    Arc::new(BoundQuiver::new(vertices, arrows).expect("zigzag is a valid quiver"))
}

/// The functor `ξ_I` from the zigzag to a ladder, recorded by its vertex
/// images. Each zigzag arrow goes to the unique path class between the images
/// of its endpoints, which is an identity when they coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiFunctor {
    pub interval: Interval,
    pub vertices: [usize; 5],
}

impl XiFunctor {
    /// `(source, target)` ladder vertices of the image of arrow `αk` (`k` 0-based).
    pub fn arrow_image(&self, k: usize) -> (usize, usize) {
        let (s, t) = ZIGZAG_ARROWS[k];
        (self.vertices[s], self.vertices[t])
    }
}

/// Builds `ξ_I` for an interval `I` of `CLₙ`.
///
/// With `I = [k̄, l̄] ⊔ [i, j]` the zigzag vertices go to `(l̄, k̄, ī, i, j)`;
/// a bottom-only interval `[i, j]` uses `(j, i, i, i, j)` and a top-only
/// interval `[k̄, l̄]` uses `(l̄, k̄, k̄, k̄, l̄)`.
pub fn xi_functor(q: &BoundQuiver, interval: &Interval) -> Result<XiFunctor> {
    let n = q.ladder_size().ok_or(Error::NotLadder)?;
    let shape = q.ladder_ranges(interval.vertices()).ok_or(Error::NotLadder)?;
    let bottom = |x: usize| x - 1;
    let top = |x: usize| n + x - 1;
    let vertices = match (shape.top, shape.bottom) {
        (Some((k, l)), Some((i, j))) => {
            if !(k <= i && i <= l && l <= j) {
                return Err(Error::Inconsistent(format!("unexpected ladder interval shape {shape}")));
            }
            [top(l), top(k), top(i), bottom(i), bottom(j)]
        }
        (None, Some((i, j))) => [bottom(j), bottom(i), bottom(i), bottom(i), bottom(j)],
        (Some((k, l)), None) => [top(l), top(k), top(k), top(k), top(l)],
        (None, None) => return Err(Error::NotAnInterval("∅".into())),
    };
    let xi = XiFunctor { interval: interval.clone(), vertices };
    for k in 0..4 {
        let (s, t) = xi.arrow_image(k);
        if !q.reaches(s, t) {
            return Err(Error::Inconsistent(format!("ξ image of α{} is not a path", k + 1)));
        }
    }
    Ok(xi)
}

/// `R_ξ(M) = M ∘ ξ_I` as a representation of the zigzag.
pub fn restrict_along_xi(m: &PersModule, xi: &XiFunctor) -> Result<ModRef> {
    let dims = xi.vertices.iter().map(|&v| m.dim(v)).collect();
    let maps = (0..4)
        .map(|k| {
            let (s, t) = xi.arrow_image(k);
            m.path_map(s, t).ok_or_else(|| Error::Inconsistent("missing path composite".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(PersModule::new(zigzag_quiver(), m.field(), dims, maps)?))
}

/// Checks that `z` lives on a quiver of type A with vertices `0..n` in line,
/// returning for each `k` the arrow index joining `k` and `k+1`.
fn line_arrows(z: &PersModule) -> Result<Vec<usize>> {
    let q = z.quiver();
    let n = q.num_vertices();
    if q.arrows().len() + 1 != n.max(1) {
        return Err(Error::InvalidQuiver("not a quiver of type A".into()));
    }
    (0..n.saturating_sub(1))
        .map(|k| {
            q.arrows()
                .iter()
                .position(|a| (a.source, a.target) == (k, k + 1) || (a.source, a.target) == (k + 1, k))
                .ok_or_else(|| Error::InvalidQuiver(format!("no arrow between vertices {} and {}", k + 1, k + 2)))
        })
        .collect()
}

/// Rank of the canonical map from the limit to the colimit of `z` restricted
/// to the segment `a..=b`.
fn lim_colim_rank(z: &PersModule, line: &[usize], a: usize, b: usize) -> usize {
    let f = z.field();
    let mut offsets = Vec::with_capacity(b - a + 2);
    let mut total = 0;
    for x in a..=b {
        offsets.push(total);
        total += z.dim(x);
    }
    if total == 0 {
        return 0;
    }
    let off = |x: usize| offsets[x - a];
    let q = z.quiver();
    // Limit: tuples with Z(α) z_s = z_t on every arrow of the segment.
    let mut constraint_rows = 0;
    for &idx in &line[a..b] {
        constraint_rows += z.dim(q.arrows()[idx].target);
    }
    let mut c = Mat::zeros(f, constraint_rows, total);
    // Colimit relations: ι_t(Z(α) e) − ι_s(e) for each basis vector e of Z_s.
    let mut rel_cols = 0;
    for &idx in &line[a..b] {
        rel_cols += z.dim(q.arrows()[idx].source);
    }
    let mut r = Mat::zeros(f, total, rel_cols);
    let (mut row, mut col) = (0, 0);
    for &idx in &line[a..b] {
        let arrow = &q.arrows()[idx];
        let (s, t) = (arrow.source, arrow.target);
        let map = z.map(idx);
        c.paste(row, off(s), map);
        c.paste(row, off(t), &Mat::identity(f, z.dim(t)).neg());
        r.paste(off(t), col, map);
        r.paste(off(s), col, &Mat::identity(f, z.dim(s)).neg());
        row += z.dim(t);
        col += z.dim(s);
    }
    let lim = c.kernel_basis();
    if lim.is_empty() {
        return 0;
    }
    // Send each limit element to its component at `a`, embedded in the sum.
    let da = z.dim(a);
    let mut p = Mat::zeros(f, total, lim.len());
    for (j, v) in lim.iter().enumerate() {
        for (i, x) in v[..da].iter().enumerate() {
            p.set(i, j, x.clone());
        }
    }
    let base = r.rank();
    Mat::hstack(f, total, &[&r, &p]).rank() - base
}

/// Multiplicities of the interval summands `[a, b]` (1-based, inclusive) of a
/// representation of a quiver of type A whose vertices are numbered along
/// the line. Zero multiplicities are omitted.
pub fn zigzag_interval_multiplicities(z: &PersModule) -> Result<BTreeMap<(usize, usize), usize>> {
    let line = line_arrows(z)?;
    let n = z.quiver().num_vertices();
    // rk[a][b] counts summands containing the segment a..=b.
    let mut rk = vec![vec![0i64; n]; n];
    for a in 0..n {
        for b in a..n {
            rk[a][b] = lim_colim_rank(z, &line, a, b) as i64;
        }
    }
    let get = |a: Option<usize>, b: usize| -> i64 {
        match a {
            Some(a) if b < n => rk[a][b],
            _ => 0,
        }
    };
    let mut out = BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            let left = a.checked_sub(1);
            let m = get(Some(a), b) - get(left, b) - get(Some(a), b + 1) + get(left, b + 1);
            if m < 0 {
                return Err(Error::Inconsistent(format!("negative multiplicity at [{}, {}]", a + 1, b + 1)));
            }
            if m > 0 {
                out.insert((a + 1, b + 1), m as usize);
            }
        }
    }
    Ok(out)
}

/// `c^ξ_M(I)`: the multiplicity of the full interval in `R_ξ(M)`.
pub fn compressed_multiplicity(m: &PersModule, interval: &Interval) -> Result<usize> {
    let xi = xi_functor(m.quiver(), interval)?;
    let z = restrict_along_xi(m, &xi)?;
    let line = line_arrows(&z)?;
    Ok(lim_colim_rank(&z, &line, 0, 4))
}

/// `β⁰_M(I)` from the first differential of the Koszul coresolution of `V_I`.
pub fn beta0(engine: &KoszulEngine, m: &ModRef, i: usize) -> Result<usize> {
    let y = engine.coresolution(i)?;
    let keep = y.terms.len().min(2);
    let head = IntervalCochain {
        interval: y.interval.clone(),
        terms: y.terms[..keep].to_vec(),
        diffs: y.diffs[..keep.saturating_sub(1)].to_vec(),
    };
    Ok(koszul_complex(&head, m)?.homology()[0])
}

/// Outcome of the decomposability test. When `decomposable` holds,
/// `multiplicities` lists the interval summands of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub decomposable: bool,
    pub multiplicities: BTreeMap<Interval, usize>,
}

/// Decides whether `M` is a direct sum of interval modules of the engine's
/// family. The candidates are the members admitting both a mono into and an
/// epi from `M`; the test compares `Σ β⁰(I)·dim V_I` against `dim M`.
pub fn is_interval_decomposable(engine: &KoszulEngine, m: &ModRef) -> Result<Decomposition> {
    let fam = engine.family();
    let fint = compute_fint(m, fam)?;
    let candidates: Vec<usize> = compute_sint(m, fam)?.into_iter().filter(|i| fint.contains(i)).collect();
    let mut multiplicities = BTreeMap::new();
    let mut dims = vec![0usize; m.dims().len()];
    for i in candidates {
        let b = beta0(engine, m, i)?;
        if b > 0 {
            let interval = fam.interval(i);
            for &v in interval.vertices() {
                dims[v] += b;
            }
            multiplicities.insert(interval.clone(), b);
        }
    }
    let decomposable = dims.iter().sum::<usize>() == m.total_dim() && dims == m.dims();
    Ok(Decomposition { decomposable, multiplicities })
}

/// The interval replacement `δ^ξ_M` together with the compressed multiplicities `c^ξ_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplacementVector {
    pub delta: BTreeMap<Interval, i64>,
    pub c: BTreeMap<Interval, i64>,
}

impl ReplacementVector {
    pub fn delta(&self, i: &Interval) -> i64 {
        self.delta.get(i).copied().unwrap_or(0)
    }

    pub fn c(&self, i: &Interval) -> i64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    /// Intervals with nonzero `δ`.
    pub fn support(&self) -> impl Iterator<Item = (&Interval, i64)> {
        self.delta.iter().filter(|(_, &d)| d != 0).map(|(i, &d)| (i, d))
    }
}

/// Computes `δ^ξ_M(I) = Σ_i (−1)^i β^i_M(I)` over all intervals of a ladder,
/// then checks it against the directly computed `c^ξ_M` in three ways:
/// summation over larger intervals, Möbius inversion, and the inclusion–exclusion
/// over covers wherever all joins exist.
pub fn interval_replacement(engine: &KoszulEngine, m: &ModRef) -> Result<ReplacementVector> {
    let fam = engine.family();
    if m.quiver().ladder_size().is_none() {
        return Err(Error::NotLadder);
    }
    if !fam.is_complete() {
        return Err(Error::Inconsistent("interval replacement needs the family of all intervals".into()));
    }
    let ip = IntervalPoset::new(fam.intervals().to_vec());
    let n = ip.intervals().len();
    let mut delta = vec![0i64; n];
    let mut c = vec![0i64; n];
    for (a, interval) in ip.intervals().iter().enumerate() {
        let i = fam.index_of(interval).expect("same interval list");
        delta[a] = engine
            .betti(m, i)?
            .iter()
            .enumerate()
            .map(|(d, &h)| if d % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum();
        c[a] = compressed_multiplicity(m, interval)? as i64;
    }
    check_replacement(&ip, &delta, &c)?;
    let table = |v: &[i64]| ip.intervals().iter().cloned().zip(v.iter().copied()).collect();
    Ok(ReplacementVector { delta: table(&delta), c: table(&c) })
}

fn check_replacement(ip: &IntervalPoset, delta: &[i64], c: &[i64]) -> Result<()> {
    let n = delta.len();
    let f = Field::Rationals;
    let contains = |a: usize, b: usize| ip.intervals()[a].is_subset_of(&ip.intervals()[b]);
    let render = |a: usize| format!("{:?}", ip.intervals()[a].vertices());
    for a in 0..n {
        let sum: i64 = (0..n).filter(|&b| contains(a, b)).map(|b| delta[b]).sum();
        if sum != c[a] {
            return Err(Error::Inconsistent(format!(
                "compressed multiplicity {} at {} differs from the summed replacement {sum}",
                c[a],
                render(a)
            )));
        }
        let mu = ip.mobius();
        let mut inv = f.zero();
        for b in 0..n {
            inv = f.add(&inv, &f.mul(mu.get(a, b), &f.from_int(c[b])));
        }
        if inv != f.from_int(delta[a]) {
            return Err(Error::Inconsistent(format!("Möbius inversion of c disagrees with δ at {}", render(a))));
        }
        if let Some(cover_sum) = cover_sum(ip, c, a) {
            if cover_sum != delta[a] {
                return Err(Error::Inconsistent(format!("cover sum {cover_sum} disagrees with δ at {}", render(a))));
            }
        }
    }
    Ok(())
}

/// `Σ_{S ⊆ Cov(J)} (−1)^{#S} c(∨S)`, or `None` when some bounded `S` has no
/// least upper bound.
fn cover_sum(ip: &IntervalPoset, c: &[i64], j: usize) -> Option<i64> {
    let covers = ip.covers(j);
    let mut total = 0;
    for mask in 0u64..(1u64 << covers.len()) {
        let s: Vec<usize> = (0..covers.len()).filter(|&k| mask >> k & 1 == 1).map(|k| covers[k]).collect();
        let join = if s.is_empty() { Some(j) } else { ip.join(&s) };
        let term = match join {
            Some(u) => c[u],
            None => {
                let bounded = ip.intervals().iter().any(|u| s.iter().all(|&x| ip.intervals()[x].is_subset_of(u)));
                if bounded {
                    return None;
                }
                0
            }
        };
        total += if s.len() % 2 == 0 { term } else { -term };
    }
    Some(total)
}
