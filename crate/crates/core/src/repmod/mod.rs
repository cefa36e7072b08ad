//! Persistence modules as representations of a Hasse bound quiver.
//!
//! For an arrow `a: u → v` the structure map `M(a)` is a `dim M(v) × dim M(u)`
//! matrix acting on column vectors, and composites read right to left.

mod family;
pub(crate) mod spanning;
mod sum;

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::poset::{BoundQuiver, Interval};

pub use family::{IntervalFamily, ThinHomSpace};
pub use spanning::{epi_spanning_set, has_epi, has_mono, mono_spanning_set};
pub use sum::{direct_sum, DirectSum, IntervalSum};

/// Shared handle to a module.
pub type ModRef = Arc<PersModule>;

/// A representation of a bound quiver: a space per vertex, a matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersModule {
    quiver: Arc<BoundQuiver>,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl PersModule {
    /// Checks matrix shapes and full commutativity.
    pub fn new(quiver: Arc<BoundQuiver>, field: Field, dims: Vec<usize>, maps: Vec<Mat>) -> Result<PersModule> {
        if dims.len() != quiver.num_vertices() {
            return Err(Error::InvalidModule(format!(
                "{} dimensions given for {} vertices",
                dims.len(),
                quiver.num_vertices()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::InvalidModule(format!(
                "{} maps given for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.field() != field {
                return Err(Error::InvalidModule(format!("map {} is over {} instead of {}", a.label, m.field(), field)));
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::InvalidModule(format!(
                    "map {} has shape {}x{}, expected {}x{}",
                    a.label,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        let m = PersModule { quiver, field, dims, maps };
        m.check_commutativity()?;
        Ok(m)
    }

    /// Builds a module from per-arrow maps given by label; missing maps are zero.
    pub fn from_labelled_maps(
        quiver: Arc<BoundQuiver>,
        field: Field,
        dims: Vec<usize>,
        maps: &[(&str, Mat)],
    ) -> Result<PersModule> {
        let mut out: Vec<Option<Mat>> = vec![None; quiver.arrows().len()];
        for (label, m) in maps {
            let idx = quiver
                .arrow_index(label)
                .ok_or_else(|| Error::InvalidModule(format!("unknown arrow {label}")))?;
            out[idx] = Some(m.clone());
        }
        let filled = quiver
            .arrows()
            .iter()
            .zip(out)
            .map(|(a, m)| {
                m.unwrap_or_else(|| Mat::zeros(field, dims.get(a.target).copied().unwrap_or(0), dims.get(a.source).copied().unwrap_or(0)))
            })
            .collect();
        PersModule::new(quiver, field, dims, filled)
    }

    pub fn zero(quiver: Arc<BoundQuiver>, field: Field) -> PersModule {
        let dims = vec![0; quiver.num_vertices()];
        let maps = quiver.arrows().iter().map(|_| Mat::zeros(field, 0, 0)).collect();
        PersModule { quiver, field, dims, maps }
    }

    /// The thin module `V_I`: `k` on the interval, identities inside it.
    pub fn interval_module(quiver: Arc<BoundQuiver>, field: Field, interval: &Interval) -> Result<PersModule> {
        if !quiver.is_interval(interval.vertices()) {
            return Err(Error::NotAnInterval(quiver.render_set(interval.vertices())));
        }
        let dims: Vec<usize> = (0..quiver.num_vertices()).map(|v| interval.contains(v) as usize).collect();
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| {
                let (s, t) = (dims[a.source], dims[a.target]);
                if s == 1 && t == 1 {
                    Mat::identity(field, 1)
                } else {
                    Mat::zeros(field, t, s)
                }
            })
            .collect();
        PersModule::new(quiver, field, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Mat {
        &self.maps[arrow]
    }

    pub fn map_by_label(&self, label: &str) -> Option<&Mat> {
        self.quiver.arrow_index(label).map(|i| &self.maps[i])
    }

    /// Composite maps `M(u ⇝ v)` for every `v` reachable from `u`, along the
    /// first path found in topological order.
    fn path_maps_from(&self, u: usize) -> Vec<Option<Mat>> {
        let q = &self.quiver;
        let mut out: Vec<Option<Mat>> = vec![None; q.num_vertices()];
        out[u] = Some(Mat::identity(self.field, self.dims[u]));
        for &v in q.topological_order() {
            if v == u || !q.reaches(u, v) {
                continue;
            }
            for (idx, a) in q.arrows().iter().enumerate() {
                if a.target == v {
                    if let Some(p) = &out[a.source] {
                        out[v] = Some(self.maps[idx].mul(p));
                        break;
                    }
                }
            }
        }
        out
    }

    /// The composite along any path from `u` to `v`; `None` if there is no path.
    pub fn path_map(&self, u: usize, v: usize) -> Option<Mat> {
        if !self.quiver.reaches(u, v) {
            return None;
        }
        self.path_maps_from(u).swap_remove(v)
    }

    /// Verifies that parallel paths give equal composites. Every path from `u`
    /// is compared arrow by arrow against one reference path per endpoint, which
    /// by induction on path length covers all parallel pairs.
    pub fn check_commutativity(&self) -> Result<()> {
        let q = &self.quiver;
        for u in 0..q.num_vertices() {
            let reference = self.path_maps_from(u);
            for (idx, a) in q.arrows().iter().enumerate() {
                let (Some(p), Some(r)) = (&reference[a.source], &reference[a.target]) else { continue };
                if &self.maps[idx].mul(p) != r {
                    return Err(Error::NonCommuting {
                        left: format!("{} ⇝ {} then {}", q.vertex_label(u), q.vertex_label(a.source), a.label),
                        right: format!("reference path {} ⇝ {}", q.vertex_label(u), q.vertex_label(a.target)),
                    });
                }
            }
        }
        Ok(())
    }

    /// The vertexwise dual, a module over the opposite quiver.
    pub fn dual(&self) -> PersModule {
        let q = Arc::new(self.quiver.opposite());
        let maps = self.maps.iter().map(Mat::transpose).collect();
        PersModule { quiver: q, field: self.field, dims: self.dims.clone(), maps }
    }

    /// The isomorphic module obtained by the vertexwise base change `g_x`
    /// (invertible), together with the isomorphism `self → result`.
    pub fn change_basis(self: &Arc<Self>, g: &[Mat]) -> Result<(ModRef, ModMorphism)> {
        let n = self.quiver.num_vertices();
        if g.len() != n {
            return Err(Error::InvalidMorphism("one base change per vertex required".into()));
        }
        let mut inverses = Vec::with_capacity(n);
        for (x, gx) in g.iter().enumerate() {
            if gx.shape() != (self.dims[x], self.dims[x]) || gx.rank() != self.dims[x] {
                return Err(Error::InvalidMorphism(format!("base change at vertex {x} is not invertible")));
            }
            inverses.push(gx.solve_matrix(&Mat::identity(self.field, self.dims[x])).expect("invertible"));
        }
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| g[a.target].mul(&self.maps[i]).mul(&inverses[a.source]))
            .collect();
        let target = Arc::new(PersModule::new(self.quiver.clone(), self.field, self.dims.clone(), maps)?);
        let iso = ModMorphism::new(self.clone(), target.clone(), g.to_vec())?;
        Ok((target, iso))
    }

    pub fn same_quiver(&self, other: &PersModule) -> bool {
        Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver
    }
}

/// A natural transformation between modules over the same quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMorphism {
    source: ModRef,
    target: ModRef,
    comps: Vec<Mat>,
}

impl ModMorphism {
    /// Checks shapes and naturality `comps(v)·X(a) = Y(a)·comps(u)`.
    pub fn new(source: ModRef, target: ModRef, comps: Vec<Mat>) -> Result<ModMorphism> {
        let f = ModMorphism::unchecked(source, target, comps)?;
        let q = f.source.quiver();
        for (idx, a) in q.arrows().iter().enumerate() {
            let lhs = f.comps[a.target].mul(f.source.map(idx));
            let rhs = f.target.map(idx).mul(&f.comps[a.source]);
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!("not natural at arrow {}", a.label)));
            }
        }
        Ok(f)
    }

    /// Shape checks only; for components known to be natural by construction.
    pub(crate) fn unchecked(source: ModRef, target: ModRef, comps: Vec<Mat>) -> Result<ModMorphism> {
        if !source.same_quiver(&target) {
            return Err(Error::InvalidMorphism("source and target live over different quivers".into()));
        }
        let n = source.quiver().num_vertices();
        if comps.len() != n {
            return Err(Error::InvalidMorphism(format!("{} components for {} vertices", comps.len(), n)));
        }
        for (x, c) in comps.iter().enumerate() {
            if c.shape() != (target.dim(x), source.dim(x)) {
                return Err(Error::InvalidMorphism(format!("component at vertex {x} has the wrong shape")));
            }
        }
        Ok(ModMorphism { source, target, comps })
    }

    pub fn zero(source: ModRef, target: ModRef) -> ModMorphism {
        let f = source.field();
        let comps = (0..source.quiver().num_vertices()).map(|x| Mat::zeros(f, target.dim(x), source.dim(x))).collect();
        ModMorphism { source, target, comps }
    }

    pub fn identity(m: ModRef) -> ModMorphism {
        let comps = m.dims().iter().map(|&d| Mat::identity(m.field(), d)).collect();
        ModMorphism { source: m.clone(), target: m, comps }
    }

    pub fn source(&self) -> &ModRef {
        &self.source
    }

    pub fn target(&self) -> &ModRef {
        &self.target
    }

    pub fn comps(&self) -> &[Mat] {
        &self.comps
    }

    pub fn comp(&self, x: usize) -> &Mat {
        &self.comps[x]
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ModMorphism) -> ModMorphism {
        assert!(Arc::ptr_eq(&first.target, &self.source) || *first.target == *self.source, "composition mismatch");
        let comps = self.comps.iter().zip(&first.comps).map(|(g, f)| g.mul(f)).collect();
        ModMorphism { source: first.source.clone(), target: self.target.clone(), comps }
    }

    fn zip(&self, other: &ModMorphism, op: impl Fn(&Mat, &Mat) -> Mat) -> ModMorphism {
        assert!(*self.source == *other.source && *self.target == *other.target, "morphisms are not parallel");
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| op(a, b)).collect();
        ModMorphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &ModMorphism) -> ModMorphism {
        self.zip(other, Mat::add)
    }

    pub fn sub(&self, other: &ModMorphism) -> ModMorphism {
        self.zip(other, Mat::sub)
    }

    pub fn scale(&self, s: &Scalar) -> ModMorphism {
        let comps = self.comps.iter().map(|c| c.scale(s)).collect();
        ModMorphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mat::is_zero)
    }

    pub fn is_mono(&self) -> bool {
        self.comps.iter().all(Mat::is_injective)
    }

    pub fn is_epi(&self) -> bool {
        self.comps.iter().all(Mat::is_surjective)
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Components flattened row-major in vertex order.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.comps.iter().flat_map(|c| c.entries().iter().cloned()).collect()
    }

    /// Inverse of [`ModMorphism::to_vector`]; the result is not checked for naturality.
    pub fn from_vector(source: ModRef, target: ModRef, v: &[Scalar]) -> ModMorphism {
        let f = source.field();
        let mut comps = Vec::with_capacity(source.quiver().num_vertices());
        let mut off = 0;
        for x in 0..source.quiver().num_vertices() {
            let (r, c) = (target.dim(x), source.dim(x));
            comps.push(Mat::from_fn(f, r, c, |i, j| v[off + i * c + j].clone()));
            off += r * c;
        }
        assert_eq!(off, v.len(), "vector length does not match the Hom layout");
        ModMorphism { source, target, comps }
    }

    /// Length of [`ModMorphism::to_vector`] for morphisms `source → target`.
    pub fn vector_len(source: &PersModule, target: &PersModule) -> usize {
        source.dims().iter().zip(target.dims()).map(|(a, b)| a * b).sum()
    }
}

/// A basis of `Hom(X, Y)`, from the null space of the naturality system.
pub fn hom_basis(x: &ModRef, y: &ModRef) -> Vec<ModMorphism> {
    hom_system(x, y)
        .kernel_basis()
        .into_iter()
        .map(|v| ModMorphism::from_vector(x.clone(), y.clone(), &v))
        .collect()
}

pub fn hom_dim(x: &ModRef, y: &ModRef) -> usize {
    let sys = hom_system(x, y);
    sys.cols() - sys.rank()
}

/// The naturality equations as a matrix acting on [`ModMorphism::to_vector`].
fn hom_system(x: &ModRef, y: &ModRef) -> Mat {
    assert!(x.same_quiver(y), "modules over different quivers");
    let f = x.field();
    let q = x.quiver();
    let n = q.num_vertices();
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + y.dim(v) * x.dim(v);
    }
    let unknowns = offset[n];
    let rows: usize = q.arrows().iter().map(|a| y.dim(a.target) * x.dim(a.source)).sum();
    let mut sys = Mat::zeros(f, rows, unknowns);
    let mut row = 0;
    for (idx, a) in q.arrows().iter().enumerate() {
        let (u, v) = (a.source, a.target);
        let (xa, ya) = (x.map(idx), y.map(idx));
        // (φ_v · X(a) − Y(a) · φ_u)[r][c] = 0
        for r in 0..y.dim(v) {
            for c in 0..x.dim(u) {
                for k in 0..x.dim(v) {
                    let coef = xa.get(k, c);
                    if !coef.is_zero() {
                        let col = offset[v] + r * x.dim(v) + k;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, f.add(&cur, coef));
                    }
                }
                for k in 0..y.dim(u) {
                    let coef = ya.get(r, k);
                    if !coef.is_zero() {
                        let col = offset[u] + k * x.dim(u) + c;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, f.sub(&cur, coef));
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

/// A submodule or quotient together with its structure morphism.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub module: ModRef,
    /// The embedding into the ambient module (kernel, image) or the projection
    /// onto the quotient (cokernel).
    pub map: ModMorphism,
}

fn induced_module(q: &Arc<BoundQuiver>, field: Field, dims: Vec<usize>, maps: Vec<Mat>) -> Result<ModRef> {
    PersModule::new(q.clone(), field, dims, maps)
        .map(Arc::new)
        .map_err(|e| Error::Inconsistent(format!("induced module failed validation: {e}")))
}

/// Restricts the structure maps of `ambient` to the subspaces spanned by the
/// columns of `basis[x]` (which must be invariant).
fn restrict_to_subspaces(ambient: &ModRef, basis: Vec<Mat>) -> Result<SubQuotient> {
    let q = ambient.quiver().clone();
    let f = ambient.field();
    let lefts: Vec<Mat> = basis.iter().map(|b| b.left_inverse().expect("basis columns are independent")).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| lefts[a.target].mul(ambient.map(idx)).mul(&basis[a.source]))
        .collect();
    let dims = basis.iter().map(Mat::cols).collect();
    let module = induced_module(&q, f, dims, maps)?;
    let map = ModMorphism::new(module.clone(), ambient.clone(), basis)
        .map_err(|e| Error::Inconsistent(format!("embedding failed validation: {e}")))?;
    Ok(SubQuotient { module, map })
}

/// `Ker f` with its embedding into the source.
pub fn kernel(f: &ModMorphism) -> Result<SubQuotient> {
    let basis = f.comps().iter().map(Mat::kernel_matrix).collect();
    restrict_to_subspaces(f.source(), basis)
}

/// `Im f` with its embedding into the target.
pub fn image(f: &ModMorphism) -> Result<SubQuotient> {
    let basis = f.comps().iter().map(|c| c.select_columns(&c.independent_columns())).collect();
    restrict_to_subspaces(f.target(), basis)
}

/// `Cok f` with the projection from the target.
pub fn cokernel(f: &ModMorphism) -> Result<SubQuotient> {
    let y = f.target();
    let q = y.quiver().clone();
    let field = y.field();
    let n = q.num_vertices();
    let mut projections = Vec::with_capacity(n);
    let mut sections = Vec::with_capacity(n);
    for x in 0..n {
        let c = f.comp(x);
        let im = c.select_columns(&c.independent_columns());
        let comp_idx = im.complement_standard_columns();
        let section = Mat::identity(field, y.dim(x)).select_columns(&comp_idx);
        let full = Mat::hstack(field, y.dim(x), &[&im, &section]);
        let inv = full.solve_matrix(&Mat::identity(field, y.dim(x))).expect("basis is invertible");
        let rows: Vec<usize> = (im.cols()..y.dim(x)).collect();
        projections.push(inv.select_rows(&rows));
        sections.push(section);
    }
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| projections[a.target].mul(y.map(idx)).mul(&sections[a.source]))
        .collect();
    let dims = projections.iter().map(Mat::rows).collect();
    let module = induced_module(&q, field, dims, maps)?;
    let map = ModMorphism::new(y.clone(), module.clone(), projections)
        .map_err(|e| Error::Inconsistent(format!("projection failed validation: {e}")))?;
    Ok(SubQuotient { module, map })
}

/// The canonical monomorphism `V_I → V_J` for an up-set `I` of `J`.
pub fn canonical_mono(q: &Arc<BoundQuiver>, field: Field, j: &Interval, i: &Interval) -> Result<ModMorphism> {
    if !i.is_upset_in(j, q) {
        return Err(Error::NotUpSet { inner: q.render_interval(i), outer: q.render_interval(j) });
    }
    let vi = Arc::new(PersModule::interval_module(q.clone(), field, i)?);
    let vj = Arc::new(PersModule::interval_module(q.clone(), field, j)?);
    let comps = (0..q.num_vertices())
        .map(|x| if i.contains(x) { Mat::identity(field, 1) } else { Mat::zeros(field, vj.dim(x), 0) })
        .collect();
    ModMorphism::new(vi, vj, comps)
}

/// The canonical epimorphism `V_J → V_I` for a down-set `I` of `J`.
pub fn canonical_epi(q: &Arc<BoundQuiver>, field: Field, i: &Interval, j: &Interval) -> Result<ModMorphism> {
    if !i.is_downset_in(j, q) {
        return Err(Error::NotDownSet { inner: q.render_interval(i), outer: q.render_interval(j) });
    }
    let vi = Arc::new(PersModule::interval_module(q.clone(), field, i)?);
    let vj = Arc::new(PersModule::interval_module(q.clone(), field, j)?);
    let comps = (0..q.num_vertices())
        .map(|x| if i.contains(x) { Mat::identity(field, 1) } else { Mat::zeros(field, 0, vj.dim(x)) })
        .collect();
    ModMorphism::new(vj, vi, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;
    use crate::poset::enumerate_intervals;

    const Q: Field = Field::Rationals;

    fn cl(n: usize) -> Arc<BoundQuiver> {
        Arc::new(BoundQuiver::commutative_ladder(n).unwrap())
    }

    fn vmod(q: &Arc<BoundQuiver>, i: &Interval) -> ModRef {
        Arc::new(PersModule::interval_module(q.clone(), Q, i).unwrap())
    }

    #[test]
    fn interval_module_dims() {
        let q = cl(3);
        let full = q.full_interval().unwrap();
        assert_eq!(vmod(&q, &full).dims(), &[1, 1, 1, 1, 1, 1]);
        let q5 = cl(5);
        let i = q5.ladder_interval(Some((4, 5)), Some((5, 5))).unwrap();
        assert_eq!(q5.render_set(vmod(&q5, &i).dims().iter().enumerate().filter(|(_, &d)| d > 0).map(|(v, _)| v).collect::<Vec<_>>().as_slice()), "(0 0 0 1 1/0 0 0 0 1)");
        assert!(PersModule::interval_module(q.clone(), Q, &q.interval(&[0]).unwrap()).unwrap().total_dim() == 1);
    }

    #[test]
    fn rejects_noncommuting_square() {
        let q = cl(2);
        let one = Mat::identity(Q, 1);
        let maps = vec![
            ("a1", one.clone()),
            ("a1'", one.clone()),
            ("b1", one.clone()),
            ("b2", Mat::from_ints(Q, &[&[2]])),
        ];
        let err = PersModule::from_labelled_maps(q, Q, vec![1, 1, 1, 1], &maps).unwrap_err();
        assert!(matches!(err, Error::NonCommuting { .. }));
    }

    #[test]
    fn endomorphisms_of_intervals_are_scalars() {
        let q = cl(3);
        for i in enumerate_intervals(&q) {
            let v = vmod(&q, &i);
            let b = hom_basis(&v, &v);
            assert_eq!(b.len(), 1);
            assert!(b[0].is_iso());
        }
        let z = Arc::new(PersModule::zero(q.clone(), Q));
        assert!(hom_basis(&z, &vmod(&q, &q.full_interval().unwrap())).is_empty());
    }

    #[test]
    fn mono_and_epi_between_intervals_follow_upsets_and_downsets() {
        let q = cl(2);
        let ivs = enumerate_intervals(&q);
        for i in &ivs {
            for j in &ivs {
                let basis = hom_basis(&vmod(&q, i), &vmod(&q, j));
                let mono = basis.iter().any(ModMorphism::is_mono);
                let epi = basis.iter().any(ModMorphism::is_epi);
                assert_eq!(mono, i.is_upset_in(j, &q), "{:?} {:?}", i, j);
                assert_eq!(epi, j.is_downset_in(i, &q), "{:?} {:?}", i, j);
            }
        }
    }

    #[test]
    fn kernel_and_cokernel_edge_cases() {
        let q = cl(2);
        let v = vmod(&q, &q.full_interval().unwrap());
        let id = ModMorphism::identity(v.clone());
        assert!(kernel(&id).unwrap().module.is_zero());
        let z = Arc::new(PersModule::zero(q.clone(), Q));
        let c = cokernel(&ModMorphism::zero(z, v.clone())).unwrap();
        assert_eq!(c.module.dims(), v.dims());
        assert!(c.map.is_iso());
    }

    #[test]
    fn kernel_of_canonical_epi_lives_on_the_complement() {
        let q = cl(2);
        let j = q.ladder_interval(None, Some((1, 2))).unwrap();
        let i = q.ladder_interval(None, Some((1, 1))).unwrap();
        let pi = canonical_epi(&q, Q, &i, &j).unwrap();
        assert!(pi.is_epi());
        let k = kernel(&pi).unwrap();
        assert_eq!(k.module.dims(), &[0, 1, 0, 0]);
        assert!(k.map.is_mono());
        assert!(pi.after(&k.map).is_zero());
    }

    #[test]
    fn canonical_mono_checks_upset() {
        let q = cl(2);
        let square = q.full_interval().unwrap();
        let top = q.ladder_interval(Some((1, 2)), None).unwrap();
        assert!(canonical_mono(&q, Q, &square, &top).unwrap().is_mono());
        let bottom = q.ladder_interval(None, Some((1, 2))).unwrap();
        assert!(canonical_mono(&q, Q, &square, &bottom).is_err());
        assert!(canonical_mono(&q, Q, &square, &square).unwrap().is_iso());
    }

    #[test]
    fn kernel_image_bookkeeping() {
        let q = cl(2);
        let square = vmod(&q, &q.full_interval().unwrap());
        let top = vmod(&q, &q.ladder_interval(Some((1, 2)), None).unwrap());
        for f in hom_basis(&square, &top) {
            let k = kernel(&f).unwrap();
            let im = image(&f).unwrap();
            for x in 0..4 {
                assert_eq!(k.module.dim(x) + f.comp(x).rank(), square.dim(x));
                assert_eq!(im.module.dim(x), f.comp(x).rank());
            }
        }
    }

    #[test]
    fn base_change_gives_isomorphic_module() {
        let q = cl(2);
        let m = vmod(&q, &q.full_interval().unwrap());
        let g: Vec<Mat> = (0..4).map(|x| Mat::from_fn(Q, 1, 1, |_, _| int(x as i64 + 2))).collect();
        let (m2, iso) = m.change_basis(&g).unwrap();
        assert!(iso.is_iso());
        assert_eq!(hom_basis(&m, &m2).len(), 1);
    }
}
