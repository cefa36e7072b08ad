use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use super::{hom_basis, ModMorphism, ModRef, PersModule};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::poset::{enumerate_intervals, BoundQuiver, Interval};

/// A basis of `Hom(V_I, V_J)` between thin modules, each element written as
/// its scalar at every vertex (zero off `I ∩ J`). The basis is in reduced row
/// echelon form, so coordinates are read off at the pivot vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinHomSpace {
    vertices: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl ThinHomSpace {
    fn from_morphisms(field: Field, n: usize, morphisms: &[ModMorphism]) -> ThinHomSpace {
        let rows: Vec<Vec<Scalar>> = morphisms.iter().map(|f| thin_values(f, n)).collect();
        let m = Mat::from_fn(field, rows.len(), n, |r, c| rows[r][c].clone());
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        ThinHomSpace { vertices: n, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Coordinates of an element of the space.
    pub fn coords(&self, values: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| values[p].clone()).collect()
    }

    /// The element with the given coordinates.
    pub fn combine(&self, field: Field, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.vertices];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o = field.add(o, &field.mul(c, x));
            }
        }
        out
    }
}

/// The per-vertex scalars of a morphism between thin modules.
pub(crate) fn thin_values(f: &ModMorphism, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|x| {
            let c = f.comp(x);
            if c.rows() == 1 && c.cols() == 1 {
                c.get(0, 0).clone()
            } else {
                Scalar::zero()
            }
        })
        .collect()
}

/// A finite family of interval modules with lazily cached Hom spaces.
#[derive(Debug)]
pub struct IntervalFamily {
    quiver: Arc<BoundQuiver>,
    field: Field,
    intervals: Vec<Interval>,
    modules: Vec<ModRef>,
    complete: bool,
    homs: Vec<OnceLock<ThinHomSpace>>,
}

impl IntervalFamily {
    /// Every interval of the quiver.
    pub fn all(quiver: Arc<BoundQuiver>, field: Field) -> IntervalFamily {
        let intervals = enumerate_intervals(&quiver);
        IntervalFamily::build(quiver, field, intervals, true)
    }

    /// A chosen subfamily; intervals are validated, deduplicated and sorted.
    pub fn new(quiver: Arc<BoundQuiver>, field: Field, mut intervals: Vec<Interval>) -> Result<IntervalFamily> {
        for i in &intervals {
            if !quiver.is_interval(i.vertices()) {
                return Err(Error::NotAnInterval(quiver.render_interval(i)));
            }
        }
        intervals.sort();
        intervals.dedup();
        let complete = intervals == enumerate_intervals(&quiver);
        Ok(IntervalFamily::build(quiver, field, intervals, complete))
    }

    fn build(quiver: Arc<BoundQuiver>, field: Field, intervals: Vec<Interval>, complete: bool) -> IntervalFamily {
        let modules = intervals
            .iter()
            .map(|i| Arc::new(PersModule::interval_module(quiver.clone(), field, i).expect("validated interval")))
            .collect();
        let homs = (0..intervals.len() * intervals.len()).map(|_| OnceLock::new()).collect();
        IntervalFamily { quiver, field, intervals, modules, complete, homs }
    }

    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Whether the family consists of all intervals of the quiver.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, i: usize) -> &Interval {
        &self.intervals[i]
    }

    pub fn module(&self, i: usize) -> &ModRef {
        &self.modules[i]
    }

    pub fn index_of(&self, i: &Interval) -> Option<usize> {
        self.intervals.binary_search(i).ok()
    }

    pub fn render(&self, i: usize) -> String {
        self.quiver.render_interval(&self.intervals[i])
    }

    /// `Hom(V_i, V_j)`.
    pub fn hom(&self, i: usize, j: usize) -> &ThinHomSpace {
        self.homs[i * self.len() + j].get_or_init(|| {
            let basis = hom_basis(&self.modules[i], &self.modules[j]);
            ThinHomSpace::from_morphisms(self.field, self.quiver.num_vertices(), &basis)
        })
    }

    /// The morphism `V_i → V_j` with the given per-vertex scalars.
    pub fn thin_morphism(&self, i: usize, j: usize, values: &[Scalar]) -> ModMorphism {
        let n = self.quiver.num_vertices();
        let (vi, vj) = (&self.modules[i], &self.modules[j]);
        let comps = (0..n)
            .map(|x| Mat::from_fn(self.field, vj.dim(x), vi.dim(x), |_, _| values[x].clone()))
            .collect();
        ModMorphism::unchecked(vi.clone(), vj.clone(), comps).expect("shapes match")
    }

    /// Basis element `k` of `Hom(V_i, V_j)` as a morphism.
    pub fn hom_morphism(&self, i: usize, j: usize, k: usize) -> ModMorphism {
        self.thin_morphism(i, j, &self.hom(i, j).basis()[k])
    }

    /// Coordinates in `Hom(V_i, V_k)` of `b ∘ a`, for `a ∈ Hom(V_i, V_j)` and
    /// `b ∈ Hom(V_j, V_k)` given in coordinates.
    pub fn compose(&self, i: usize, j: usize, k: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let av = self.hom(i, j).combine(f, a);
        let bv = self.hom(j, k).combine(f, b);
        let prod: Vec<Scalar> = av.iter().zip(&bv).map(|(x, y)| f.mul(x, y)).collect();
        self.hom(i, k).coords(&prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_associative_on_cl2() {
        let q = Arc::new(BoundQuiver::commutative_ladder(2).unwrap());
        let fam = IntervalFamily::all(q, Field::Rationals);
        let n = fam.len();
        assert_eq!(n, 11);
        let unit = |d: usize, k: usize| -> Vec<Scalar> {
            (0..d).map(|t| Scalar::from_integer(((t == k) as i64).into())).collect()
        };
        for i in 0..n {
            assert_eq!(fam.hom(i, i).dim(), 1);
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for p in 0..fam.hom(i, j).dim() {
                            for r in 0..fam.hom(j, k).dim() {
                                for s in 0..fam.hom(k, l).dim() {
                                    let a = unit(fam.hom(i, j).dim(), p);
                                    let b = unit(fam.hom(j, k).dim(), r);
                                    let c = unit(fam.hom(k, l).dim(), s);
                                    let left = fam.compose(i, k, l, &fam.compose(i, j, k, &a, &b), &c);
                                    let right = fam.compose(i, j, l, &a, &fam.compose(j, k, l, &b, &c));
                                    assert_eq!(left, right);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identity_is_the_endomorphism_basis() {
        let q = Arc::new(BoundQuiver::commutative_ladder(3).unwrap());
        let fam = IntervalFamily::all(q, Field::Rationals);
        for i in 0..fam.len() {
            let f = fam.hom_morphism(i, i, 0);
            assert_eq!(f, ModMorphism::identity(fam.module(i).clone()));
        }
    }
}
