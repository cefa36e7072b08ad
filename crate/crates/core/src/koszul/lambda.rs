//! Modules over the endomorphism category of a family of interval modules, and
//! their minimal projective resolutions.
//!
//! A module here is covariant over the category it is built on. Right modules
//! (contravariant functors) are handled as covariant modules over [`Opposite`].

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::repmod::{hom_basis, IntervalFamily, ModMorphism, ModRef};

/// A finite `k`-linear category with chosen bases of its Hom spaces.
pub trait LinearCategory {
    fn field(&self) -> Field;
    fn num_objects(&self) -> usize;
    fn hom_dim(&self, a: usize, b: usize) -> usize;
    /// Coordinates of `y ∘ x` for `x ∈ C(a, b)` and `y ∈ C(b, c)`.
    fn compose(&self, a: usize, b: usize, c: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar>;
    /// Coordinates of the identity of `a`.
    fn identity(&self, a: usize) -> Vec<Scalar>;
}

impl LinearCategory for IntervalFamily {
    fn field(&self) -> Field {
        IntervalFamily::field(self)
    }

    fn num_objects(&self) -> usize {
        self.len()
    }

    fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom(a, b).dim()
    }

    fn compose(&self, a: usize, b: usize, c: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        IntervalFamily::compose(self, a, b, c, x, y)
    }

    fn identity(&self, a: usize) -> Vec<Scalar> {
        let n = self.quiver().num_vertices();
        let values: Vec<Scalar> =
            (0..n).map(|x| if self.interval(a).contains(x) { Scalar::one() } else { Scalar::zero() }).collect();
        self.hom(a, a).coords(&values)
    }
}

/// The opposite category, `C^op(a, b) = C(b, a)`.
#[derive(Clone, Copy, Debug)]
pub struct Opposite<'a, C: ?Sized>(pub &'a C);

impl<C: LinearCategory + ?Sized> LinearCategory for Opposite<'_, C> {
    fn field(&self) -> Field {
        self.0.field()
    }

    fn num_objects(&self) -> usize {
        self.0.num_objects()
    }

    fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.0.hom_dim(b, a)
    }

    fn compose(&self, a: usize, b: usize, c: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        // y ∘_op x = x ∘ y with y ∈ C(c, b), x ∈ C(b, a)
        self.0.compose(c, b, a, y, x)
    }

    fn identity(&self, a: usize) -> Vec<Scalar> {
        self.0.identity(a)
    }
}

pub(crate) fn unit(field: Field, d: usize, k: usize) -> Vec<Scalar> {
    (0..d).map(|i| if i == k { field.one() } else { field.zero() }).collect()
}

/// Whether a module is a left or right module over the family's category.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// Covariant in the interval, like `Hom(M, V_−)` or `Hom(V_J, V_−)`.
    Covariant,
    /// Contravariant in the interval, like `Hom(V_−, M)`; stored as a
    /// covariant module over the opposite category.
    Contravariant,
}

/// A finite-dimensional covariant module: a space per object and, for each
/// basis element `h` of `C(a, b)`, a matrix `F(a) → F(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaModule {
    variance: Variance,
    field: Field,
    dims: Vec<usize>,
    action: HashMap<(usize, usize), Vec<Mat>>,
}

impl LambdaModule {
    pub fn new(variance: Variance, field: Field, dims: Vec<usize>, action: HashMap<(usize, usize), Vec<Mat>>) -> LambdaModule {
        LambdaModule { variance, field, dims, action }
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, a: usize) -> usize {
        self.dims[a]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// The matrix of basis element `k` of `C(a, b)`.
    pub fn basis_action(&self, a: usize, b: usize, k: usize) -> Mat {
        match self.action.get(&(a, b)) {
            Some(ms) => ms[k].clone(),
            None => Mat::zeros(self.field, self.dims[b], self.dims[a]),
        }
    }

    /// The matrix of the morphism with coordinates `h` in `C(a, b)`.
    pub fn act(&self, a: usize, b: usize, h: &[Scalar]) -> Mat {
        let mut out = Mat::zeros(self.field, self.dims[b], self.dims[a]);
        if let Some(ms) = self.action.get(&(a, b)) {
            for (c, m) in h.iter().zip(ms) {
                if !c.is_zero() {
                    out = out.add(&m.scale(c));
                }
            }
        }
        out
    }

    /// Identities act as identities and composition is respected on basis pairs.
    pub fn check_functorial<C: LinearCategory + ?Sized>(&self, cat: &C) -> Result<()> {
        let n = cat.num_objects();
        let f = cat.field();
        for a in 0..n {
            if self.act(a, a, &cat.identity(a)) != Mat::identity(f, self.dims[a]) {
                return Err(Error::Inconsistent(format!("identity of object {a} does not act as the identity")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let dab = cat.hom_dim(a, b);
                if dab == 0 {
                    continue;
                }
                for c in 0..n {
                    let dbc = cat.hom_dim(b, c);
                    for i in 0..dab {
                        for j in 0..dbc {
                            let (x, y) = (unit(f, dab, i), unit(f, dbc, j));
                            let lhs = self.act(a, c, &cat.compose(a, b, c, &x, &y));
                            let rhs = self.basis_action(b, c, j).mul(&self.basis_action(a, b, i));
                            if lhs != rhs {
                                return Err(Error::Inconsistent(format!("action fails to compose at ({a}, {b}, {c})")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The representable `P_j = C(j, −)`.
pub fn projective_module<C: LinearCategory + ?Sized>(cat: &C, j: usize, variance: Variance) -> LambdaModule {
    let n = cat.num_objects();
    let f = cat.field();
    let dims: Vec<usize> = (0..n).map(|k| cat.hom_dim(j, k)).collect();
    let mut action = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let d = cat.hom_dim(a, b);
            if d == 0 {
                continue;
            }
            let ms = (0..d).map(|k| postcomposition(cat, j, a, b, k)).collect();
            action.insert((a, b), ms);
        }
    }
    LambdaModule { variance, field: f, dims, action }
}

/// Matrix of `φ ↦ h_k ∘ φ` from `C(j, a)` to `C(j, b)`.
fn postcomposition<C: LinearCategory + ?Sized>(cat: &C, j: usize, a: usize, b: usize, k: usize) -> Mat {
    let f = cat.field();
    let (dja, djb, dab) = (cat.hom_dim(j, a), cat.hom_dim(j, b), cat.hom_dim(a, b));
    let h = unit(f, dab, k);
    let cols: Vec<Vec<Scalar>> = (0..dja).map(|m| cat.compose(j, a, b, &unit(f, dja, m), &h)).collect();
    Mat::from_columns(f, djb, &cols)
}

/// The simple module at `i`: one-dimensional at `i`, radical acting by zero.
/// Relies on `C(i, i)` being spanned by the identity.
pub fn simple_module<C: LinearCategory + ?Sized>(cat: &C, i: usize, variance: Variance) -> LambdaModule {
    let n = cat.num_objects();
    let f = cat.field();
    let dims: Vec<usize> = (0..n).map(|k| (k == i) as usize).collect();
    let mut action = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let d = cat.hom_dim(a, b);
            if d == 0 {
                continue;
            }
            let ms = (0..d)
                .map(|_| if a == i && b == i { Mat::identity(f, 1) } else { Mat::zeros(f, dims[b], dims[a]) })
                .collect();
            action.insert((a, b), ms);
        }
    }
    LambdaModule { variance, field: f, dims, action }
}

/// `Hom(M, V_−)` (covariant, over the family) or `Hom(V_−, M)` (contravariant,
/// over its opposite), in the bases returned by `hom_basis`.
pub fn lambda_module_of(m: &ModRef, fam: &IntervalFamily, variance: Variance) -> LambdaModule {
    let f = fam.field();
    let n = fam.len();
    let bases: Vec<Vec<ModMorphism>> = (0..n)
        .map(|k| match variance {
            Variance::Covariant => hom_basis(m, fam.module(k)),
            Variance::Contravariant => hom_basis(fam.module(k), m),
        })
        .collect();
    let mats: Vec<Option<Mat>> = bases
        .iter()
        .map(|b| b.first().map(|g| Mat::from_columns(f, g.to_vector().len(), &b.iter().map(ModMorphism::to_vector).collect::<Vec<_>>())))
        .collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut action = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            // Module arrows a → b come from C(a, b) (covariant) or C(b, a) (contravariant).
            let (src, tgt) = match variance {
                Variance::Covariant => (a, b),
                Variance::Contravariant => (b, a),
            };
            let d = fam.hom(src, tgt).dim();
            if d == 0 {
                continue;
            }
            let ms = (0..d)
                .map(|k| {
                    if dims[a] == 0 || dims[b] == 0 {
                        return Mat::zeros(f, dims[b], dims[a]);
                    }
                    let h = fam.hom_morphism(src, tgt, k);
                    let images: Vec<Vec<Scalar>> = bases[a]
                        .iter()
                        .map(|g| match variance {
                            Variance::Covariant => h.after(g).to_vector(),
                            Variance::Contravariant => g.after(&h).to_vector(),
                        })
                        .collect();
                    let target = mats[b].as_ref().expect("nonzero space");
                    let rhs = Mat::from_columns(f, target.rows(), &images);
                    target.solve_matrix(&rhs).expect("image lies in the Hom space")
                })
                .collect();
            action.insert((a, b), ms);
        }
    }
    LambdaModule { variance, field: f, dims, action }
}

/// The generators of a projective cover: objects and elements spanning the top.
fn cover<C: LinearCategory + ?Sized>(cat: &C, x: &LambdaModule) -> (Vec<usize>, Vec<Vec<Scalar>>) {
    let n = cat.num_objects();
    let f = cat.field();
    let mut tags = Vec::new();
    let mut gens = Vec::new();
    for l in 0..n {
        if x.dims[l] == 0 {
            continue;
        }
        let mut blocks = Vec::new();
        for j in 0..n {
            if j == l {
                continue;
            }
            for k in 0..cat.hom_dim(j, l) {
                blocks.push(x.basis_action(j, l, k));
            }
        }
        let refs: Vec<&Mat> = blocks.iter().collect();
        let rad = Mat::hstack(f, x.dims[l], &refs);
        for c in rad.complement_standard_columns() {
            tags.push(l);
            gens.push(unit(f, x.dims[l], c));
        }
    }
    (tags, gens)
}

/// Offsets of each summand of `⊕_t P_{tags[t]}` at object `k`.
fn offsets<C: LinearCategory + ?Sized>(cat: &C, tags: &[usize], k: usize) -> (Vec<usize>, usize) {
    let mut out = Vec::with_capacity(tags.len());
    let mut acc = 0;
    for &t in tags {
        out.push(acc);
        acc += cat.hom_dim(t, k);
    }
    (out, acc)
}

/// Kernel of the cover `⊕_t P_{tags[t]} → X` sending the `t`-th generator to
/// `gens[t]`, with its embedding (per object) into the projective sum.
fn cover_kernel<C: LinearCategory + ?Sized>(
    cat: &C,
    x: &LambdaModule,
    tags: &[usize],
    gens: &[Vec<Scalar>],
) -> (LambdaModule, Vec<Mat>) {
    let n = cat.num_objects();
    let f = cat.field();
    let mut embed = Vec::with_capacity(n);
    for k in 0..n {
        let (_, total) = offsets(cat, tags, k);
        let mut cols = Vec::with_capacity(total);
        for (t, &l) in tags.iter().enumerate() {
            let g = Mat::column_vector(f, &gens[t]);
            for m in 0..cat.hom_dim(l, k) {
                cols.push(x.basis_action(l, k, m).mul(&g).column(0));
            }
        }
        let pi = Mat::from_columns(f, x.dims[k], &cols);
        embed.push(pi.kernel_matrix());
    }
    let dims: Vec<usize> = embed.iter().map(Mat::cols).collect();
    let lefts: Vec<Option<Mat>> = embed.iter().map(|b| if b.cols() > 0 { b.left_inverse() } else { None }).collect();
    let mut action = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let d = cat.hom_dim(a, b);
            if d == 0 {
                continue;
            }
            let ms = (0..d)
                .map(|k| {
                    if dims[a] == 0 || dims[b] == 0 {
                        return Mat::zeros(f, dims[b], dims[a]);
                    }
                    let blocks: Vec<Mat> = tags.iter().map(|&t| postcomposition(cat, t, a, b, k)).collect();
                    let refs: Vec<&Mat> = blocks.iter().collect();
                    let amb = Mat::block_diag(f, &refs);
                    lefts[b].as_ref().expect("nonzero kernel").mul(&amb).mul(&embed[a])
                })
                .collect();
            action.insert((a, b), ms);
        }
    }
    (LambdaModule { variance: x.variance, field: f, dims, action }, embed)
}

/// A minimal projective resolution `⋯ → P¹ → P⁰ → X`.
///
/// `tags[i]` lists the objects `j` with `P_j` a summand of `P^i`. For `i ≥ 1`,
/// generator `t` of `P^i` maps to the element of `P^{i−1}` whose component in
/// summand `g` is `coeffs[i][t][g] ∈ C(tags[i−1][g], tags[i][t])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjResolution {
    pub tags: Vec<Vec<usize>>,
    pub top_generators: Vec<Vec<Scalar>>,
    pub coeffs: Vec<Vec<Vec<Vec<Scalar>>>>,
}

impl ProjResolution {
    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    /// Multiplicity of `P_j` in degree `i`.
    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.tags.get(i).map_or(0, |t| t.iter().filter(|&&x| x == j).count())
    }
}

/// Iterated projective covers of successive kernels.
pub fn min_proj_resolution<C: LinearCategory + ?Sized>(cat: &C, x: &LambdaModule, max_len: usize) -> Result<ProjResolution> {
    let mut res = ProjResolution { tags: Vec::new(), top_generators: Vec::new(), coeffs: Vec::new() };
    if x.is_zero() {
        return Ok(res);
    }
    let (tags, gens) = cover(cat, x);
    let (mut kernel, mut embed) = cover_kernel(cat, x, &tags, &gens);
    res.coeffs.push(Vec::new());
    res.tags.push(tags);
    res.top_generators = gens;
    while !kernel.is_zero() {
        if res.tags.len() > max_len {
            return Err(Error::MaxLengthExceeded(max_len));
        }
        let prev = res.tags.last().expect("nonempty").clone();
        let (tags, gens) = cover(cat, &kernel);
        let mut coeffs = Vec::with_capacity(tags.len());
        for (&k, g) in tags.iter().zip(&gens) {
            let amb = embed[k].mul(&Mat::column_vector(cat.field(), g)).column(0);
            let (offs, _) = offsets(cat, &prev, k);
            coeffs.push(prev.iter().zip(offs).map(|(&l, o)| amb[o..o + cat.hom_dim(l, k)].to_vec()).collect());
        }
        let (next, next_embed) = cover_kernel(cat, &kernel, &tags, &gens);
        res.tags.push(tags);
        res.coeffs.push(coeffs);
        kernel = next;
        embed = next_embed;
    }
    Ok(res)
}
