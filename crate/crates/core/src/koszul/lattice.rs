//! Families whose category is the incidence category of a poset, with the
//! semilattice Koszul complex and the formal Koszul coresolution.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use super::{validate_koszul_coresolution, IntervalCochain, LambdaModule, VecChain};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::poset::Poset;
use crate::repmod::{IntervalFamily, ModRef};

/// A family whose Hom spaces are at most one-dimensional and compose like the
/// order relation of a poset: `a ≤ b` iff `Hom(V_a, V_b) ≠ 0`. The chosen
/// morphism `p_{b,a} : V_a → V_b` is the thin basis element, and these compose
/// to one another.
#[derive(Debug)]
pub struct FamilyLattice {
    fam: Arc<IntervalFamily>,
    order: Poset,
}

impl FamilyLattice {
    pub fn new(fam: Arc<IntervalFamily>) -> Result<FamilyLattice> {
        let n = fam.len();
        let f = fam.field();
        let mut leq = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                let d = fam.hom(a, b).dim();
                if d > 1 {
                    return Err(Error::NotIncidenceCategory(format!(
                        "Hom({}, {}) has dimension {d}",
                        fam.render(a),
                        fam.render(b)
                    )));
                }
                leq[a][b] = d == 1;
            }
        }
        let labels = (0..n).map(|a| fam.render(a)).collect();
        let order = Poset::new(labels, leq).map_err(|e| Error::NotIncidenceCategory(e.to_string()))?;
        let one = [f.one()];
        for a in 0..n {
            for b in 0..n {
                if !order.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if order.leq(b, c) && fam.compose(a, b, c, &one, &one) != one {
                        return Err(Error::NotIncidenceCategory(format!(
                            "p({}, {}) ∘ p({}, {}) is not p({}, {})",
                            fam.render(c),
                            fam.render(b),
                            fam.render(b),
                            fam.render(a),
                            fam.render(c),
                            fam.render(a)
                        )));
                    }
                }
            }
        }
        Ok(FamilyLattice { fam, order })
    }

    pub fn family(&self) -> &Arc<IntervalFamily> {
        &self.fam
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    /// Per-vertex scalars of `p_{b,a} : V_a → V_b`.
    pub fn p(&self, b: usize, a: usize) -> Vec<Scalar> {
        assert!(self.order.leq(a, b), "no morphism from {a} to {b}");
        self.fam.hom(a, b).basis()[0].clone()
    }

    /// `b ↦ Hom(V_b, M)` as a module over the order.
    pub fn hom_functor(&self, m: &ModRef) -> PosetModule {
        let f = super::lambda_module_of(m, &self.fam, super::Variance::Contravariant);
        PosetModule::from_lambda(&self.order, &f)
    }
}

/// A contravariant representation of a poset: a space per element and a map
/// `M(c) → M(b)` for every `b ≤ c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetModule {
    field: Field,
    dims: Vec<usize>,
    maps: HashMap<(usize, usize), Mat>,
}

impl PosetModule {
    /// `maps[(b, c)]` for `b ≤ c`; identities on the diagonal are filled in and
    /// composition is checked.
    pub fn new(l: &Poset, field: Field, dims: Vec<usize>, mut maps: HashMap<(usize, usize), Mat>) -> Result<PosetModule> {
        let n = l.len();
        for b in 0..n {
            maps.entry((b, b)).or_insert_with(|| Mat::identity(field, dims[b]));
            for c in 0..n {
                if l.leq(b, c) {
                    let m = maps.get(&(b, c)).ok_or_else(|| Error::InvalidModule(format!("missing map for {b} ≤ {c}")))?;
                    if m.shape() != (dims[b], dims[c]) {
                        return Err(Error::InvalidModule(format!("map for {b} ≤ {c} has shape {:?}", m.shape())));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if l.leq(a, b) && l.leq(b, c) && maps[&(a, b)].mul(&maps[&(b, c)]) != maps[&(a, c)] {
                        return Err(Error::NonCommuting { left: format!("{a}≤{b}≤{c}"), right: format!("{a}≤{c}") });
                    }
                }
            }
        }
        Ok(PosetModule { field, dims, maps })
    }

    /// Reads a contravariant module over a family lattice (stored as covariant
    /// over the opposite category) through the chosen morphisms `p_{c,b}`.
    fn from_lambda(l: &Poset, f: &LambdaModule) -> PosetModule {
        let n = l.len();
        let mut maps = HashMap::new();
        for b in 0..n {
            for c in 0..n {
                if l.leq(b, c) {
                    maps.insert((b, c), f.basis_action(c, b, 0));
                }
            }
        }
        let field = if let Some(m) = maps.values().next() { m.field() } else { Field::Rationals };
        PosetModule { field, dims: f.dims().to_vec(), maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `M(c) → M(b)`.
    pub fn map(&self, b: usize, c: usize) -> &Mat {
        &self.maps[&(b, c)]
    }
}

/// A subset of covers together with its join.
pub type JoinedSubset = (Vec<usize>, usize);

/// `Cov(a)_i` for all `i`, as sorted cover subsets with their joins. Subsets
/// without an upper bound are skipped; bounded subsets without a join are an error.
pub fn cover_subsets(l: &Poset, a: usize) -> Result<Vec<Vec<JoinedSubset>>> {
    let covs = l.covers(a);
    let mut by_size: Vec<Vec<JoinedSubset>> = vec![vec![(Vec::new(), a)]];
    for size in 1..=covs.len() {
        let mut level = Vec::new();
        for s in combinations(&covs, size) {
            if l.upper_bounds(&s).is_empty() {
                continue;
            }
            let j = l.join(&s).ok_or_else(|| {
                Error::MissingJoin(s.iter().map(|&x| l.label(x).to_string()).collect::<Vec<_>>().join(", "))
            })?;
            level.push((s, j));
        }
        if level.is_empty() {
            break;
        }
        by_size.push(level);
    }
    Ok(by_size)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Position in `s` of the single element of `s ∖ t`, when `t ⊂ s` drops exactly one.
fn removed_position(s: &[usize], t: &[usize]) -> Option<usize> {
    if s.len() != t.len() + 1 || !t.iter().all(|x| s.contains(x)) {
        return None;
    }
    s.iter().position(|x| !t.contains(x))
}

/// The Koszul complex of a contravariant poset module at `a`: degree `i` is
/// `⊕_{S ∈ Cov(a)_i} M(∨S)` and the block from `S` to `T ⊂ S` is
/// `(−1)^j M(p_{∨S,∨T})`, with `j` the position of the dropped element in `S`.
pub fn semilattice_koszul_complex(l: &Poset, a: usize, m: &PosetModule) -> Result<VecChain> {
    let field = m.field;
    let levels = cover_subsets(l, a)?;
    let dims: Vec<usize> = levels.iter().map(|lv| lv.iter().map(|(_, j)| m.dims[*j]).sum()).collect();
    let mut diffs = Vec::new();
    for i in 1..levels.len() {
        let mut d = Mat::zeros(field, dims[i - 1], dims[i]);
        let mut row = 0;
        for (t, jt) in &levels[i - 1] {
            let mut col = 0;
            for (s, js) in &levels[i] {
                if let Some(pos) = removed_position(s, t) {
                    let block = m.map(*jt, *js);
                    let block = if pos % 2 == 0 { block.clone() } else { block.neg() };
                    d.paste(row, col, &block);
                }
                col += m.dims[*js];
            }
            row += m.dims[*jt];
        }
        diffs.push(d);
    }
    VecChain::new(field, dims, diffs)
}

/// The formal Koszul coresolution `C_a`: degree `i` is `⊕_{S ∈ Cov(a)_i} V_{∨S}`
/// and the block from `T` to `S ⊃ T` is `(−1)^j p_{∨S,∨T}`. It is checked with
/// the Koszul validator before being returned.
pub fn formal_koszul_coresolution(lat: &FamilyLattice, a: usize) -> Result<IntervalCochain> {
    let fam = lat.family();
    let field = fam.field();
    let levels = cover_subsets(lat.order(), a)?;
    let summands = levels.iter().map(|lv| lv.iter().map(|(_, j)| fam.interval(*j).clone()).collect()).collect();
    let mut blocks = Vec::new();
    for i in 1..levels.len() {
        let mut b = BTreeMap::new();
        for (si, (s, js)) in levels[i].iter().enumerate() {
            for (ti, (t, jt)) in levels[i - 1].iter().enumerate() {
                if let Some(pos) = removed_position(s, t) {
                    let p = lat.p(*js, *jt);
                    let v = if pos % 2 == 0 { p } else { p.iter().map(|x| field.neg(x)).collect() };
                    if v.iter().any(|x| !x.is_zero()) {
                        b.insert((si, ti), v);
                    }
                }
            }
        }
        blocks.push(b);
    }
    let y = IntervalCochain::from_blocks(fam, fam.interval(a).clone(), summands, &blocks)?;
    validate_koszul_coresolution(&y, fam)?;
    Ok(y)
}
