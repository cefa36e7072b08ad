use std::collections::BTreeMap;
use std::sync::Arc;

use super::{ModMorphism, ModRef, PersModule};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::poset::{BoundQuiver, Interval};

/// A blockwise direct sum with its biproduct maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: ModRef,
    pub injections: Vec<ModMorphism>,
    pub projections: Vec<ModMorphism>,
}

/// Direct sum of modules over a common quiver.
pub fn direct_sum(q: &Arc<BoundQuiver>, field: Field, modules: &[ModRef]) -> Result<DirectSum> {
    if modules.iter().any(|m| !m.quiver().as_ref().eq(q.as_ref()) || m.field() != field) {
        return Err(Error::InvalidModule("summands live over different quivers or fields".into()));
    }
    let n = q.num_vertices();
    let dims: Vec<usize> = (0..n).map(|x| modules.iter().map(|m| m.dim(x)).sum()).collect();
    let maps = (0..q.arrows().len())
        .map(|idx| {
            let blocks: Vec<&Mat> = modules.iter().map(|m| m.map(idx)).collect();
            Mat::block_diag(field, &blocks)
        })
        .collect();
    let module = Arc::new(PersModule::new(q.clone(), field, dims.clone(), maps)?);
    let mut injections = Vec::with_capacity(modules.len());
    let mut projections = Vec::with_capacity(modules.len());
    let mut offsets = vec![0usize; n];
    for m in modules {
        let mut inj = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for x in 0..n {
            let mut i = Mat::zeros(field, dims[x], m.dim(x));
            i.paste(offsets[x], 0, &Mat::identity(field, m.dim(x)));
            proj.push(i.transpose());
            inj.push(i);
            offsets[x] += m.dim(x);
        }
        injections.push(ModMorphism::unchecked(m.clone(), module.clone(), inj)?);
        projections.push(ModMorphism::unchecked(module.clone(), m.clone(), proj)?);
    }
    Ok(DirectSum { module, injections, projections })
}

/// A direct sum of interval modules that remembers its summands.
///
/// Summand `j` contributes one basis vector at each vertex of its interval; at a
/// vertex `x`, these vectors are ordered by summand index.
#[derive(Clone, Debug)]
pub struct IntervalSum {
    summands: Vec<Interval>,
    module: ModRef,
    offsets: Vec<Vec<Option<usize>>>,
}

impl IntervalSum {
    pub fn new(q: &Arc<BoundQuiver>, field: Field, summands: Vec<Interval>) -> Result<IntervalSum> {
        let n = q.num_vertices();
        let mut dims = vec![0usize; n];
        let mut offsets = Vec::with_capacity(summands.len());
        for s in &summands {
            if !q.is_interval(s.vertices()) {
                return Err(Error::NotAnInterval(q.render_interval(s)));
            }
            let mut row = vec![None; n];
            for &x in s.vertices() {
                row[x] = Some(dims[x]);
                dims[x] += 1;
            }
            offsets.push(row);
        }
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let mut m = Mat::zeros(field, dims[a.target], dims[a.source]);
                for row in &offsets {
                    if let (Some(r), Some(c)) = (row[a.target], row[a.source]) {
                        m.set(r, c, Scalar::from_integer(1.into()));
                    }
                }
                m
            })
            .collect();
        let module = Arc::new(PersModule::new(q.clone(), field, dims, maps)?);
        Ok(IntervalSum { summands, module, offsets })
    }

    pub fn summands(&self) -> &[Interval] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn module(&self) -> &ModRef {
        &self.module
    }

    /// Position of summand `j`'s basis vector at vertex `x`.
    pub fn offset(&self, j: usize, x: usize) -> Option<usize> {
        self.offsets[j][x]
    }

    /// Summand multiplicities.
    pub fn multiset(&self) -> BTreeMap<Interval, usize> {
        let mut out = BTreeMap::new();
        for s in &self.summands {
            *out.entry(s.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Assembles `(f_j)_j : ⊕ V_{I_j} → target` from maps `f_j : V_{I_j} → target`.
    pub fn morphism_from(&self, target: &ModRef, comps: &[ModMorphism]) -> Result<ModMorphism> {
        if comps.len() != self.len() {
            return Err(Error::InvalidMorphism("one component per summand required".into()));
        }
        let field = self.module.field();
        let n = self.module.quiver().num_vertices();
        let mats = (0..n)
            .map(|x| {
                let mut m = Mat::zeros(field, target.dim(x), self.module.dim(x));
                for (j, f) in comps.iter().enumerate() {
                    if let Some(c) = self.offsets[j][x] {
                        m.paste(0, c, f.comp(x));
                    }
                }
                m
            })
            .collect();
        ModMorphism::new(self.module.clone(), target.clone(), mats)
    }

    /// Assembles `(g_j)_j : source → ⊕ V_{J_j}` from maps `g_j : source → V_{J_j}`.
    pub fn morphism_to(&self, source: &ModRef, comps: &[ModMorphism]) -> Result<ModMorphism> {
        if comps.len() != self.len() {
            return Err(Error::InvalidMorphism("one component per summand required".into()));
        }
        let field = self.module.field();
        let n = self.module.quiver().num_vertices();
        let mats = (0..n)
            .map(|x| {
                let mut m = Mat::zeros(field, self.module.dim(x), source.dim(x));
                for (j, g) in comps.iter().enumerate() {
                    if let Some(r) = self.offsets[j][x] {
                        m.paste(r, 0, g.comp(x));
                    }
                }
                m
            })
            .collect();
        ModMorphism::new(source.clone(), self.module.clone(), mats)
    }

    /// Assembles a morphism between interval sums from thin blocks:
    /// `blocks[(j, k)]` holds the per-vertex scalars of the component from
    /// summand `k` of `self` to summand `j` of `target`.
    pub fn morphism_between(&self, target: &IntervalSum, blocks: &BTreeMap<(usize, usize), Vec<Scalar>>) -> Result<ModMorphism> {
        let field = self.module.field();
        let n = self.module.quiver().num_vertices();
        let mut mats: Vec<Mat> = (0..n).map(|x| Mat::zeros(field, target.module.dim(x), self.module.dim(x))).collect();
        for (&(j, k), vals) in blocks {
            for (x, m) in mats.iter_mut().enumerate() {
                if let (Some(r), Some(c)) = (target.offsets[j][x], self.offsets[k][x]) {
                    m.set(r, c, vals[x].clone());
                }
            }
        }
        ModMorphism::new(self.module.clone(), target.module.clone(), mats)
    }

    /// The per-vertex scalars of the block from summand `k` of `self` to summand
    /// `j` of `target` inside `f`.
    pub fn block_of(&self, target: &IntervalSum, f: &ModMorphism, j: usize, k: usize) -> Vec<Scalar> {
        let n = self.module.quiver().num_vertices();
        (0..n)
            .map(|x| match (target.offsets[j][x], self.offsets[k][x]) {
                (Some(r), Some(c)) => f.comp(x).get(r, c).clone(),
                _ => Scalar::from_integer(0.into()),
            })
            .collect()
    }
}
