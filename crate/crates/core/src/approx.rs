//! Right and left approximations by sums of interval modules, and their greedy
//! minimization.
//!
//! For the family of all intervals, a map `f: ⊕ V_{I_j} → M` is a right
//! approximation iff every monomorphism `V_I → M` factors through it. The
//! monomorphisms span a subspace `W_I ⊆ Hom(V_I, M)`, so the condition is the
//! subspace containment `W_I ⊆ Im Hom(V_I, f)`, checked only for `I ∈ S_int(M)`.
//! For a proper subfamily that reduction is unavailable and the full
//! `Hom(V_I, M)` must lie in the image for every member `I`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Result;
use crate::exactla::{Field, Mat, Scalar};
use crate::poset::Interval;
use crate::repmod::{hom_basis, IntervalFamily, IntervalSum, ModMorphism, ModRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `⊕ V_{I_j} → M`
    Right,
    /// `M → ⊕ V_{J_j}`
    Left,
}

/// An approximation together with the summand tags of its interval-decomposable end.
#[derive(Clone, Debug)]
pub struct ApproxMorphism {
    pub side: Side,
    /// Source (right case) or target (left case).
    pub sum: IntervalSum,
    /// Family index of each summand.
    pub tags: Vec<usize>,
    /// The summand components: `V_{I_j} → M` or `M → V_{J_j}`.
    pub components: Vec<ModMorphism>,
    /// The assembled map.
    pub map: ModMorphism,
}

impl ApproxMorphism {
    fn assemble(fam: &IntervalFamily, m: &ModRef, side: Side, tags: Vec<usize>, components: Vec<ModMorphism>) -> Result<ApproxMorphism> {
        let summands = tags.iter().map(|&t| fam.interval(t).clone()).collect();
        let sum = IntervalSum::new(fam.quiver(), fam.field(), summands)?;
        let map = match side {
            Side::Right => sum.morphism_from(m, &components)?,
            Side::Left => sum.morphism_to(m, &components)?,
        };
        Ok(ApproxMorphism { side, sum, tags, components, map })
    }

    /// Keeps only the listed summands, in order.
    fn restrict(&self, fam: &IntervalFamily, m: &ModRef, keep: &[usize]) -> Result<ApproxMorphism> {
        let tags = keep.iter().map(|&j| self.tags[j]).collect();
        let comps = keep.iter().map(|&j| self.components[j].clone()).collect();
        ApproxMorphism::assemble(fam, m, self.side, tags, comps)
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    /// Summand intervals, in order.
    pub fn summands(&self) -> &[Interval] {
        self.sum.summands()
    }
}

/// Index sets `S_int(M)`, `F_int(M)` (as family indices) and optional refinements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexSets {
    pub sint: Vec<usize>,
    pub fint: Vec<usize>,
    pub max_sint: Option<Vec<usize>>,
    pub max_fint: Option<Vec<usize>>,
}

/// Family members `I` admitting a monomorphism `V_I → M`.
pub fn compute_sint(m: &ModRef, fam: &IntervalFamily) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..fam.len() {
        if !monos(fam, i, m)?.is_empty() {
            out.push(i);
        }
    }
    Ok(out)
}

/// Family members `J` admitting an epimorphism `M → V_J`.
pub fn compute_fint(m: &ModRef, fam: &IntervalFamily) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for j in 0..fam.len() {
        if !epis(fam, j, m)?.is_empty() {
            out.push(j);
        }
    }
    Ok(out)
}

pub fn index_sets(m: &ModRef, fam: &IntervalFamily, refine: bool) -> Result<IndexSets> {
    let sint = compute_sint(m, fam)?;
    let fint = compute_fint(m, fam)?;
    let (max_sint, max_fint) = if refine {
        (Some(refine_max_sint(m, fam)?), Some(refine_max_fint(m, fam)?))
    } else {
        (None, None)
    };
    Ok(IndexSets { sint, fint, max_sint, max_fint })
}

fn monos(fam: &IntervalFamily, i: usize, m: &ModRef) -> Result<Vec<ModMorphism>> {
    crate::repmod::spanning::mono_spanning_set_from(fam.module(i), fam.interval(i), m)
}

fn epis(fam: &IntervalFamily, j: usize, m: &ModRef) -> Result<Vec<ModMorphism>> {
    crate::repmod::spanning::epi_spanning_set_from(m, fam.module(j), fam.interval(j))
}

fn vectors_to_mat(field: Field, len: usize, vs: &[Vec<Scalar>]) -> Mat {
    Mat::from_columns(field, len, vs)
}

/// Per test interval: the subspace that must be covered and, per summand, the
/// vectors that summand contributes.
struct Criterion {
    field: Field,
    tests: Vec<TestSpace>,
}

struct TestSpace {
    len: usize,
    required: Mat,
    contributions: Vec<Vec<Vec<Scalar>>>,
}

impl Criterion {
    fn new(f: &ApproxMorphism, m: &ModRef, fam: &IntervalFamily) -> Result<Criterion> {
        let field = fam.field();
        let mut tests = Vec::new();
        let members: Vec<usize> = (0..fam.len()).collect();
        for i in members {
            let required: Vec<ModMorphism> = match (f.side, fam.is_complete()) {
                (Side::Right, true) => monos(fam, i, m)?,
                (Side::Left, true) => epis(fam, i, m)?,
                (Side::Right, false) => hom_basis(fam.module(i), m),
                (Side::Left, false) => hom_basis(m, fam.module(i)),
            };
            if required.is_empty() {
                continue;
            }
            let len = required[0].to_vector().len();
            let required = vectors_to_mat(field, len, &required.iter().map(ModMorphism::to_vector).collect::<Vec<_>>());
            let contributions = f
                .tags
                .iter()
                .zip(&f.components)
                .map(|(&t, comp)| match f.side {
                    // f_j ∘ h for h: V_I → V_{I_j}
                    Side::Right => (0..fam.hom(i, t).dim()).map(|k| comp.after(&fam.hom_morphism(i, t, k)).to_vector()).collect(),
                    // h ∘ g_j for h: V_{J_j} → V_I
                    Side::Left => (0..fam.hom(t, i).dim()).map(|k| fam.hom_morphism(t, i, k).after(comp).to_vector()).collect(),
                })
                .collect();
            tests.push(TestSpace { len, required, contributions });
        }
        Ok(Criterion { field, tests })
    }

    fn holds_for(&self, t: &TestSpace, active: &[bool]) -> bool {
        let vs: Vec<Vec<Scalar>> = t
            .contributions
            .iter()
            .zip(active)
            .filter(|(_, &a)| a)
            .flat_map(|(c, _)| c.iter().cloned())
            .collect();
        if vs.is_empty() {
            return t.required.is_zero();
        }
        vectors_to_mat(self.field, t.len, &vs).column_span_contains_all(&t.required)
    }

    fn holds(&self, active: &[bool]) -> bool {
        self.tests.iter().all(|t| self.holds_for(t, active))
    }

    /// Whether dropping summand `j` from `active` keeps the criterion; only
    /// test spaces that summand contributes to can change.
    fn holds_without(&self, active: &[bool], j: usize) -> bool {
        let mut trial = active.to_vec();
        trial[j] = false;
        self.tests
            .iter()
            .filter(|t| !t.contributions[j].is_empty())
            .all(|t| self.holds_for(t, &trial))
    }
}

fn approximation(m: &ModRef, fam: &IntervalFamily, side: Side) -> Result<ApproxMorphism> {
    let mut tags = Vec::new();
    let mut comps = Vec::new();
    for i in 0..fam.len() {
        let gens = match (side, fam.is_complete()) {
            (Side::Right, true) => monos(fam, i, m)?,
            (Side::Left, true) => epis(fam, i, m)?,
            (Side::Right, false) => hom_basis(fam.module(i), m),
            (Side::Left, false) => hom_basis(m, fam.module(i)),
        };
        for g in gens {
            tags.push(i);
            comps.push(g);
        }
    }
    ApproxMorphism::assemble(fam, m, side, tags, comps)
}

/// The sum of all spanning monomorphisms (or, for a subfamily, all Hom basis
/// elements) into `M`.
pub fn right_interval_approximation(m: &ModRef, fam: &IntervalFamily) -> Result<ApproxMorphism> {
    approximation(m, fam, Side::Right)
}

/// The left counterpart, built from spanning epimorphisms out of `M`.
pub fn left_interval_approximation(m: &ModRef, fam: &IntervalFamily) -> Result<ApproxMorphism> {
    approximation(m, fam, Side::Left)
}

pub fn is_right_interval_approximation(f: &ApproxMorphism, m: &ModRef, fam: &IntervalFamily) -> Result<bool> {
    assert_eq!(f.side, Side::Right);
    Ok(Criterion::new(f, m, fam)?.holds(&vec![true; f.len()]))
}

pub fn is_left_interval_approximation(f: &ApproxMorphism, m: &ModRef, fam: &IntervalFamily) -> Result<bool> {
    assert_eq!(f.side, Side::Left);
    Ok(Criterion::new(f, m, fam)?.holds(&vec![true; f.len()]))
}

/// Drops summands in order, keeping each drop that preserves the approximation
/// property.
fn minimize(f: &ApproxMorphism, m: &ModRef, fam: &IntervalFamily, order: &[usize]) -> Result<ApproxMorphism> {
    let crit = Criterion::new(f, m, fam)?;
    let mut active = vec![true; f.len()];
    for &j in order {
        if crit.holds_without(&active, j) {
            active[j] = false;
        }
    }
    let keep: Vec<usize> = (0..f.len()).filter(|&j| active[j]).collect();
    f.restrict(fam, m, &keep)
}

/// Greedy minimization in enumeration order.
pub fn minimize_right(f: &ApproxMorphism, m: &ModRef, fam: &IntervalFamily) -> Result<ApproxMorphism> {
    assert_eq!(f.side, Side::Right);
    minimize(f, m, fam, &(0..f.len()).collect::<Vec<_>>())
}

pub fn minimize_left(f: &ApproxMorphism, m: &ModRef, fam: &IntervalFamily) -> Result<ApproxMorphism> {
    assert_eq!(f.side, Side::Left);
    minimize(f, m, fam, &(0..f.len()).collect::<Vec<_>>())
}

/// Greedy minimization with an explicit drop order (a permutation of summands).
pub fn minimize_with_order(f: &ApproxMorphism, m: &ModRef, fam: &IntervalFamily, order: &[usize]) -> Result<ApproxMorphism> {
    minimize(f, m, fam, order)
}

pub fn minimal_right_approximation(m: &ModRef, fam: &IntervalFamily) -> Result<ApproxMorphism> {
    minimize_right(&right_interval_approximation(m, fam)?, m, fam)
}

pub fn minimal_left_approximation(m: &ModRef, fam: &IntervalFamily) -> Result<ApproxMorphism> {
    minimize_left(&left_interval_approximation(m, fam)?, m, fam)
}

/// A subset of `S_int(M)` containing every `≤_S`-maximal element.
///
/// `I` is removed when some other `J ∈ S_int(M)` has `I` as an up-set and every
/// monomorphism `V_I → M` extends along the canonical `V_I → V_J` to a
/// monomorphism `V_J → M`. The extension test is exact over ℚ: restriction
/// `Hom(V_J, M) → Hom(V_I, M)` must be onto, and for every vertex `x ∈ J ∖ I`
/// the generic extension must be nonzero at `x`, which fails exactly when some
/// vertex of the fibre is forced to vanish by the values on `I`. Over finite
/// fields nothing is removed.
pub fn refine_max_sint(m: &ModRef, fam: &IntervalFamily) -> Result<Vec<usize>> {
    refine(m, fam, Side::Right)
}

/// Dual of [`refine_max_sint`] for `F_int(M)` and epimorphisms.
pub fn refine_max_fint(m: &ModRef, fam: &IntervalFamily) -> Result<Vec<usize>> {
    refine(m, fam, Side::Left)
}

fn refine(m: &ModRef, fam: &IntervalFamily, side: Side) -> Result<Vec<usize>> {
    let set = match side {
        Side::Right => compute_sint(m, fam)?,
        Side::Left => compute_fint(m, fam)?,
    };
    if fam.field().is_finite() {
        return Ok(set);
    }
    let q = fam.quiver();
    let mut removed = BTreeSet::new();
    for &i in &set {
        for &j in &set {
            if i == j {
                continue;
            }
            let (ii, jj) = (fam.interval(i), fam.interval(j));
            let nested = match side {
                Side::Right => ii.is_upset_in(jj, q),
                Side::Left => ii.is_downset_in(jj, q),
            };
            if nested && extends(m, fam, i, j, side) {
                removed.insert(i);
                break;
            }
        }
    }
    Ok(set.into_iter().filter(|i| !removed.contains(i)).collect())
}

/// Whether every good map at `i` extends to a good map at `j`, where `i` sits
/// in `j` as an up-set (right side) or down-set (left side).
///
/// Extensions of a fixed `φ` form a coset `φ̃ + K` with `K` the kernel of the
/// restriction. At a vertex `x ∈ J ∖ I` where `K` is nonzero somewhere, a
/// generic extension is nonzero. Otherwise the value at `x` is a linear
/// function `L_x(φ)`, and it is nonzero on every good `φ` iff `ker L_x` lies in
/// the kernel of evaluation at a single vertex of `I` (a subspace inside a
/// finite union of subspaces lies in one of them).
fn extends(m: &ModRef, fam: &IntervalFamily, i: usize, j: usize, side: Side) -> bool {
    let field = fam.field();
    let (ii, jj) = (fam.interval(i), fam.interval(j));
    let (hi, hj) = match side {
        Side::Right => (hom_basis(fam.module(i), m), hom_basis(fam.module(j), m)),
        Side::Left => (hom_basis(m, fam.module(i)), hom_basis(m, fam.module(j))),
    };
    if hi.is_empty() {
        return true;
    }
    if hj.is_empty() {
        return false;
    }
    let flat_at = |g: &ModMorphism, xs: &[usize]| -> Vec<Scalar> {
        xs.iter().flat_map(|&x| g.comp(x).entries().iter().cloned()).collect()
    };
    let len_i = hi[0].to_vector().len();
    let res = Mat::from_columns(field, len_i, &hj.iter().map(|g| flat_at(g, ii.vertices())).collect::<Vec<_>>());
    let hi_mat = Mat::from_columns(field, len_i, &hi.iter().map(ModMorphism::to_vector).collect::<Vec<_>>());
    let Some(lift) = res.solve_matrix(&hi_mat) else { return false };
    let kernel = res.kernel_matrix();
    for x in jj.vertices().iter().copied().filter(|&x| !ii.contains(x)) {
        let len_x = hj[0].comp(x).entries().len();
        let at_x = Mat::from_columns(field, len_x, &hj.iter().map(|g| flat_at(g, &[x])).collect::<Vec<_>>());
        if kernel.cols() > 0 && !at_x.mul(&kernel).is_zero() {
            continue;
        }
        let lx = at_x.mul(&lift);
        let ker_lx = lx.kernel_matrix();
        let covered = ii.vertices().iter().any(|&y| {
            let len_y = hi[0].comp(y).entries().len();
            let ev_y = Mat::from_columns(field, len_y, &hi.iter().map(|h| flat_at(h, &[y])).collect::<Vec<_>>());
            ev_y.mul(&ker_lx).is_zero()
        });
        if !covered {
            return false;
        }
    }
    true
}

/// Summand intervals of the minimal approximation with multiplicities.
pub fn summand_multiset(f: &ApproxMorphism) -> std::collections::BTreeMap<Interval, usize> {
    f.sum.multiset()
}

/// Convenience: a family of all intervals for the quiver of `m`.
pub fn full_family(m: &ModRef) -> IntervalFamily {
    IntervalFamily::all(Arc::clone(m.quiver()), m.field())
}
