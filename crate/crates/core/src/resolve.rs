//! Minimal interval resolutions and coresolutions built by iterating minimal
//! approximations, and the Betti tables read off from them.

use std::collections::BTreeMap;
use std::fmt;

use crate::approx::{self, ApproxMorphism};
use crate::error::{Error, Result};
use crate::poset::{BoundQuiver, Interval};
use crate::repmod::{cokernel, kernel, IntervalFamily, IntervalSum, ModMorphism, ModRef};

/// Bound on resolution length used when none is given.
pub fn default_max_len(q: &BoundQuiver) -> usize {
    4 * q.num_vertices()
}

/// `⋯ → X₁ → X₀ → M`, with `diffs[0] = f₀ : X₀ → M` and `diffs[i] : X_i → X_{i−1}`.
#[derive(Clone, Debug)]
pub struct IntervalResolution {
    pub module: ModRef,
    pub terms: Vec<IntervalSum>,
    pub tags: Vec<Vec<usize>>,
    pub diffs: Vec<ModMorphism>,
}

/// `M → Y⁰ → Y¹ → ⋯`, with `diffs[0] = g⁰ : M → Y⁰` and `diffs[i] : Y^{i−1} → Y^i`.
#[derive(Clone, Debug)]
pub struct IntervalCoresolution {
    pub module: ModRef,
    pub terms: Vec<IntervalSum>,
    pub tags: Vec<Vec<usize>>,
    pub diffs: Vec<ModMorphism>,
}

/// Multiplicities indexed by degree and interval; absent entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Interval), usize>,
}

impl BettiTable {
    pub fn from_terms(terms: &[IntervalSum]) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, t) in terms.iter().enumerate() {
            for (iv, m) in t.multiset() {
                entries.insert((i, iv), m);
            }
        }
        BettiTable { entries }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, Interval), usize)>) -> BettiTable {
        BettiTable { entries: entries.into_iter().filter(|(_, m)| *m > 0).collect() }
    }

    pub fn get(&self, degree: usize, interval: &Interval) -> usize {
        self.entries.get(&(degree, interval.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, Interval), usize> {
        &self.entries
    }

    /// One past the largest degree with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|(d, _)| d + 1).max().unwrap_or(0)
    }

    /// `Σ_i (−1)^i β^i(I)`.
    pub fn alternating_sum(&self, interval: &Interval) -> i64 {
        self.entries
            .iter()
            .filter(|((_, iv), _)| iv == interval)
            .map(|((d, _), &m)| if d % 2 == 0 { m as i64 } else { -(m as i64) })
            .sum()
    }

    /// The row `(β^0(I), β^1(I), …)` up to `len` degrees.
    pub fn row(&self, interval: &Interval, len: usize) -> Vec<usize> {
        (0..len).map(|d| self.get(d, interval)).collect()
    }

    pub fn render(&self, q: &BoundQuiver) -> String {
        let mut out = String::new();
        for ((d, iv), m) in &self.entries {
            out.push_str(&format!("{d}\t{}\t{m}\n", q.render_interval(iv)));
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((d, iv), m) in &self.entries {
            writeln!(f, "{d}\t{:?}\t{m}", iv.vertices())?;
        }
        Ok(())
    }
}

fn tagged(a: &ApproxMorphism) -> (IntervalSum, Vec<usize>) {
    (a.sum.clone(), a.tags.clone())
}

/// Iterates minimal right approximations of successive kernels.
pub fn minimal_interval_resolution(m: &ModRef, fam: &IntervalFamily, max_len: usize) -> Result<IntervalResolution> {
    let mut res = IntervalResolution { module: m.clone(), terms: Vec::new(), tags: Vec::new(), diffs: Vec::new() };
    // `current` is the module being approximated; `into` embeds it in the previous term.
    let mut current = m.clone();
    let mut into: Option<ModMorphism> = None;
    loop {
        if current.is_zero() {
            return Ok(res);
        }
        if res.terms.len() > max_len {
            return Err(Error::MaxLengthExceeded(max_len));
        }
        let a = approx::minimal_right_approximation(&current, fam)?;
        if a.is_empty() {
            // Only reachable for families that do not contain the projectives.
            return Ok(res);
        }
        let d = match &into {
            None => a.map.clone(),
            Some(e) => e.after(&a.map),
        };
        let k = kernel(&a.map)?;
        let (sum, tags) = tagged(&a);
        res.terms.push(sum);
        res.tags.push(tags);
        res.diffs.push(d);
        current = k.module;
        into = Some(k.map);
    }
}

/// Iterates minimal left approximations of successive cokernels.
pub fn minimal_interval_coresolution(m: &ModRef, fam: &IntervalFamily, max_len: usize) -> Result<IntervalCoresolution> {
    let mut res = IntervalCoresolution { module: m.clone(), terms: Vec::new(), tags: Vec::new(), diffs: Vec::new() };
    let mut current = m.clone();
    let mut from: Option<ModMorphism> = None;
    loop {
        if current.is_zero() {
            return Ok(res);
        }
        if res.terms.len() > max_len {
            return Err(Error::MaxLengthExceeded(max_len));
        }
        let a = approx::minimal_left_approximation(&current, fam)?;
        if a.is_empty() {
            return Ok(res);
        }
        let d = match &from {
            None => a.map.clone(),
            Some(p) => a.map.after(p),
        };
        let c = cokernel(&a.map)?;
        let (sum, tags) = tagged(&a);
        res.terms.push(sum);
        res.tags.push(tags);
        res.diffs.push(d);
        current = c.module;
        from = Some(c.map);
    }
}

pub fn betti(m: &ModRef, fam: &IntervalFamily, max_len: usize) -> Result<BettiTable> {
    Ok(BettiTable::from_terms(&minimal_interval_resolution(m, fam, max_len)?.terms))
}

pub fn cobetti(m: &ModRef, fam: &IntervalFamily, max_len: usize) -> Result<BettiTable> {
    Ok(BettiTable::from_terms(&minimal_interval_coresolution(m, fam, max_len)?.terms))
}

/// Checks that `… → X₁ → X₀ → M → 0` (given by its maps, first map last) is
/// exact at every vertex: composites vanish and ranks add up.
fn audit_exact_chain(maps: &[&ModMorphism], what: &str) -> Result<()> {
    // maps[k]: A_k → A_{k+1}; exactness at every interior object, injectivity
    // of the first map and surjectivity of the last.
    let Some(first) = maps.first() else { return Ok(()) };
    let n = first.source().quiver().num_vertices();
    for x in 0..n {
        if !first.comp(x).is_injective() {
            return Err(Error::Inconsistent(format!("{what}: first map not injective at vertex {x}")));
        }
        let last = maps[maps.len() - 1];
        if !last.comp(x).is_surjective() {
            return Err(Error::Inconsistent(format!("{what}: last map not surjective at vertex {x}")));
        }
        for w in maps.windows(2) {
            let (g, h) = (w[0], w[1]);
            if !h.comp(x).mul(g.comp(x)).is_zero() {
                return Err(Error::Inconsistent(format!("{what}: composite is nonzero at vertex {x}")));
            }
            let dim_mid = g.target().dim(x);
            if g.comp(x).rank() + h.comp(x).rank() != dim_mid {
                return Err(Error::Inconsistent(format!("{what}: not exact at vertex {x}")));
            }
        }
    }
    Ok(())
}

impl IntervalResolution {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_terms(&self.terms)
    }

    /// `0 → X_r → ⋯ → X₀ → M → 0` is exact.
    pub fn audit_exactness(&self) -> Result<()> {
        let maps: Vec<&ModMorphism> = self.diffs.iter().rev().collect();
        audit_exact_chain(&maps, "resolution")
    }

    /// `Σ_i (−1)^i dimvec(X_i) = dimvec(M)`.
    pub fn euler_characteristic_holds(&self) -> bool {
        euler(&self.module, &self.terms)
    }
}

impl IntervalCoresolution {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn cobetti(&self) -> BettiTable {
        BettiTable::from_terms(&self.terms)
    }

    /// `0 → M → Y⁰ → ⋯ → Y^r → 0` is exact.
    pub fn audit_exactness(&self) -> Result<()> {
        let maps: Vec<&ModMorphism> = self.diffs.iter().collect();
        audit_exact_chain(&maps, "coresolution")
    }

    pub fn euler_characteristic_holds(&self) -> bool {
        euler(&self.module, &self.terms)
    }
}

fn euler(m: &ModRef, terms: &[IntervalSum]) -> bool {
    let n = m.quiver().num_vertices();
    (0..n).all(|x| {
        let alt: i64 = terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let d = t.module().dim(x) as i64;
                if i % 2 == 0 { d } else { -d }
            })
            .sum();
        alt == m.dim(x) as i64
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{minimize_with_order, right_interval_approximation};
    use crate::exactla::Field;
    use crate::fixtures::{cl3_m45, cl5_m, ladder, ladder_interval};
    use crate::repmod::PersModule;
    use std::sync::Arc;

    const Q: Field = Field::Rationals;

    fn ms(q: &BoundQuiver, items: &[&str]) -> BTreeMap<Interval, usize> {
        let mut out = BTreeMap::new();
        for s in items {
            *out.entry(ladder_interval(q, s)).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn interval_module_resolves_to_itself() {
        let q = ladder(3);
        let fam = IntervalFamily::all(q.clone(), Q);
        let v = fam.module(7).clone();
        let r = minimal_interval_resolution(&v, &fam, 12).unwrap();
        assert_eq!(r.len(), 1);
        let b = r.betti();
        assert_eq!(b.get(0, fam.interval(7)), 1);
        assert_eq!(b.entries().len(), 1);
        let c = minimal_interval_coresolution(&v, &fam, 12).unwrap();
        assert_eq!(c.tags, vec![vec![7]]);
    }

    #[test]
    fn zero_module_has_empty_coresolution() {
        let q = ladder(2);
        let fam = IntervalFamily::all(q.clone(), Q);
        let z = Arc::new(PersModule::zero(q, Q));
        assert!(minimal_interval_coresolution(&z, &fam, 8).unwrap().is_empty());
    }

    #[test]
    fn cl3_almost_split_resolution() {
        let m = cl3_m45(Q).unwrap();
        let q = m.quiver().clone();
        let fam = IntervalFamily::all(q.clone(), Q);
        let r = minimal_interval_resolution(&m, &fam, 24).unwrap();
        r.audit_exactness().unwrap();
        assert!(r.euler_characteristic_holds());
        assert_eq!(r.len(), 2);
        // M_{2,4} ⊕ M_{3,4} ⊕ M_{5,4} → M with kernel M_{4,3}.
        assert_eq!(r.terms[0].multiset(), ms(&q, &["010/000", "011/011", "111/001"]));
        assert_eq!(r.terms[1].multiset(), ms(&q, &["011/001"]));
        let b = r.betti();
        let i = ladder_interval(&q, "011/001");
        assert_eq!(b.row(&i, 3), vec![0, 1, 0]);
    }

    #[test]
    fn cl5_resolution_and_coresolution() {
        let m = cl5_m(Q).unwrap();
        let q = m.quiver().clone();
        let fam = IntervalFamily::all(q.clone(), Q);
        let r = minimal_interval_resolution(&m, &fam, 40).unwrap();
        r.audit_exactness().unwrap();
        let i = ladder_interval(&q, "00011/00001");
        assert_eq!(r.betti().row(&i, 3), vec![0, 1, 0]);
        let c = minimal_interval_coresolution(&m, &fam, 40).unwrap();
        c.audit_exactness().unwrap();
        assert!(c.euler_characteristic_holds());
        assert_eq!(c.len(), 2);
        assert_eq!(c.terms[0].multiset(), ms(&q, &["00110/00000", "00010/00011", "00111/00011"]));
        assert_eq!(c.terms[1].multiset(), ms(&q, &["00110/00011"]));
    }

    #[test]
    fn drop_order_does_not_change_multiplicities() {
        let m = cl3_m45(Q).unwrap();
        let fam = IntervalFamily::all(m.quiver().clone(), Q);
        let full = right_interval_approximation(&m, &fam).unwrap();
        let fwd: Vec<usize> = (0..full.len()).collect();
        let rev: Vec<usize> = fwd.iter().rev().copied().collect();
        let a = minimize_with_order(&full, &m, &fam, &fwd).unwrap();
        let b = minimize_with_order(&full, &m, &fam, &rev).unwrap();
        assert_eq!(a.sum.multiset(), b.sum.multiset());
    }

    #[test]
    fn max_len_is_enforced() {
        let m = cl3_m45(Q).unwrap();
        let fam = IntervalFamily::all(m.quiver().clone(), Q);
        assert_eq!(minimal_interval_resolution(&m, &fam, 0).unwrap_err(), Error::MaxLengthExceeded(0));
    }
}
