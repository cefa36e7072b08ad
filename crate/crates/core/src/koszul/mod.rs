//! Interval Koszul coresolutions and Koszul complexes.
//!
//! The coresolution `0 → V_I → X¹ → X² → ⋯` of an interval module is obtained
//! from a minimal projective resolution of the simple module at `I` over the
//! category of the family: the summand `P_J = Hom(V_J, −)` in degree `i`
//! becomes `V_J` in `X^i`, and the coefficient of a generator, an element of
//! `Hom(V_L, V_K)`, becomes the block `V_L → V_K` of the differential.
//! Applying `Hom(−, M)` gives the Koszul complex, whose homology is the
//! relative Betti numbers of `M` at `I`.

mod chain;
mod lambda;
pub mod lattice;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

pub use chain::VecChain;
pub use lambda::{
    lambda_module_of, min_proj_resolution, projective_module, simple_module, LambdaModule, LinearCategory, Opposite,
    ProjResolution, Variance,
};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::poset::Interval;
use crate::repmod::{hom_basis, IntervalFamily, IntervalSum, ModMorphism, ModRef};
use crate::resolve::{default_max_len, BettiTable};

/// `0 → V_I → X¹ → X² → ⋯` with `terms[0] = V_I` and `diffs[i] : terms[i] → terms[i+1]`.
#[derive(Clone, Debug)]
pub struct IntervalCochain {
    pub interval: Interval,
    pub terms: Vec<IntervalSum>,
    pub diffs: Vec<ModMorphism>,
}

impl IntervalCochain {
    /// Number of terms, counting `V_I`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiset(&self, degree: usize) -> BTreeMap<Interval, usize> {
        self.terms.get(degree).map(IntervalSum::multiset).unwrap_or_default()
    }

    /// Assembles a cochain from summand lists and thin blocks:
    /// `blocks[i][(t, g)]` is the block from summand `g` of degree `i` to
    /// summand `t` of degree `i + 1`.
    pub fn from_blocks(
        fam: &IntervalFamily,
        interval: Interval,
        summands: Vec<Vec<Interval>>,
        blocks: &[BTreeMap<(usize, usize), Vec<Scalar>>],
    ) -> Result<IntervalCochain> {
        let q = fam.quiver();
        let terms = summands
            .into_iter()
            .map(|s| IntervalSum::new(q, fam.field(), s))
            .collect::<Result<Vec<_>>>()?;
        if blocks.len() + 1 != terms.len() {
            return Err(Error::Inconsistent("one block table per differential required".into()));
        }
        let diffs = terms
            .windows(2)
            .zip(blocks)
            .map(|(w, b)| w[0].morphism_between(&w[1], b))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalCochain { interval, terms, diffs })
    }
}

/// The minimal Koszul coresolution of `V_I` for family member `i`.
pub fn koszul_coresolution(fam: &IntervalFamily, i: usize, max_len: usize) -> Result<IntervalCochain> {
    let s = simple_module(fam, i, Variance::Covariant);
    let res = min_proj_resolution(fam, &s, max_len)?;
    if res.tags.first() != Some(&vec![i]) {
        return Err(Error::Inconsistent(format!("projective cover of the simple at {} is not P_I", fam.render(i))));
    }
    let summands: Vec<Vec<Interval>> =
        res.tags.iter().map(|ts| ts.iter().map(|&t| fam.interval(t).clone()).collect()).collect();
    let blocks: Vec<BTreeMap<(usize, usize), Vec<Scalar>>> = (1..res.tags.len())
        .map(|d| {
            let mut b = BTreeMap::new();
            for (t, row) in res.coeffs[d].iter().enumerate() {
                for (g, c) in row.iter().enumerate() {
                    if c.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                        let (l, k) = (res.tags[d - 1][g], res.tags[d][t]);
                        b.insert((t, g), fam.hom(l, k).combine(fam.field(), c));
                    }
                }
            }
            b
        })
        .collect();
    let y = IntervalCochain::from_blocks(fam, fam.interval(i).clone(), summands, &blocks)?;
    validate_koszul_coresolution(&y, fam)?;
    Ok(y)
}

fn vectors(field: Field, fs: &[ModMorphism], len: usize) -> Mat {
    Mat::from_columns(field, len, &fs.iter().map(ModMorphism::to_vector).collect::<Vec<_>>())
}

/// Checks that `Hom(Y, V_K)` followed by the augmentation to the simple at `I`
/// is exact for every member `K` of the family, and that `Y` is a cochain
/// starting at `V_I`. Returns the first failure found.
pub fn validate_koszul_coresolution(y: &IntervalCochain, fam: &IntervalFamily) -> Result<()> {
    let field = fam.field();
    if y.terms.first().map(|t| t.summands().to_vec()) != Some(vec![y.interval.clone()]) {
        return Err(Error::Inconsistent("degree 0 is not the interval module".into()));
    }
    if y.diffs.len() + 1 != y.terms.len() {
        return Err(Error::Inconsistent("differential count does not match terms".into()));
    }
    for w in y.diffs.windows(2) {
        if !w[1].after(&w[0]).is_zero() {
            return Err(Error::Inconsistent("consecutive differentials do not compose to zero".into()));
        }
    }
    for k in 0..fam.len() {
        let vk = fam.module(k);
        let homs: Vec<Vec<ModMorphism>> = y.terms.iter().map(|t| hom_basis(t.module(), vk)).collect();
        // rank of Hom(d^i, V_K) : Hom(X^{i+1}, V_K) → Hom(X^i, V_K)
        let ranks: Vec<usize> = y
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let images: Vec<ModMorphism> = homs[i + 1].iter().map(|g| g.after(d)).collect();
                let len = ModMorphism::vector_len(y.terms[i].module(), vk);
                if images.is_empty() {
                    0
                } else {
                    vectors(field, &images, len).rank()
                }
            })
            .collect();
        let top = (y.interval == *fam.interval(k)) as usize;
        for (i, h) in homs.iter().enumerate() {
            let out = if i == 0 { top } else { ranks[i - 1] };
            let inc = ranks.get(i).copied().unwrap_or(0);
            if h.len() != out + inc {
                return Err(Error::Inconsistent(format!(
                    "Hom(−, {}) is not exact in degree {i}",
                    fam.render(k)
                )));
            }
        }
    }
    Ok(())
}

/// `Hom(Y, M)` as a chain complex with `Hom(X^i, M)` in degree `i`.
pub fn koszul_complex(y: &IntervalCochain, m: &ModRef) -> Result<VecChain> {
    let field = m.field();
    let bases: Vec<Vec<ModMorphism>> = y.terms.iter().map(|t| hom_basis(t.module(), m)).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let diffs = y
        .diffs
        .iter()
        .enumerate()
        .map(|(i, d)| {
            if dims[i] == 0 || dims[i + 1] == 0 {
                return Ok(Mat::zeros(field, dims[i], dims[i + 1]));
            }
            let len = ModMorphism::vector_len(y.terms[i].module(), m);
            let basis = vectors(field, &bases[i], len);
            let images: Vec<ModMorphism> = bases[i + 1].iter().map(|g| g.after(d)).collect();
            basis
                .solve_matrix(&vectors(field, &images, len))
                .ok_or_else(|| Error::Inconsistent("precomposition left the Hom space".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    VecChain::new(field, dims, diffs)
}

/// Homology dimensions of the Koszul complex of `M` at family member `i`.
pub fn betti_via_koszul(m: &ModRef, fam: &IntervalFamily, i: usize) -> Result<Vec<usize>> {
    let y = koszul_coresolution(fam, i, default_max_len(fam.quiver()))?;
    Ok(koszul_complex(&y, m)?.homology())
}

/// Caches Koszul coresolutions per family member.
#[derive(Debug)]
pub struct KoszulEngine {
    fam: Arc<IntervalFamily>,
    max_len: usize,
    cache: Vec<OnceLock<Result<IntervalCochain>>>,
}

impl KoszulEngine {
    pub fn new(fam: Arc<IntervalFamily>) -> KoszulEngine {
        let max_len = default_max_len(fam.quiver());
        KoszulEngine::with_max_len(fam, max_len)
    }

    pub fn with_max_len(fam: Arc<IntervalFamily>, max_len: usize) -> KoszulEngine {
        let cache = (0..fam.len()).map(|_| OnceLock::new()).collect();
        KoszulEngine { fam, max_len, cache }
    }

    pub fn family(&self) -> &Arc<IntervalFamily> {
        &self.fam
    }

    pub fn coresolution(&self, i: usize) -> Result<&IntervalCochain> {
        self.cache[i].get_or_init(|| koszul_coresolution(&self.fam, i, self.max_len)).as_ref().map_err(Clone::clone)
    }

    pub fn complex(&self, i: usize, m: &ModRef) -> Result<VecChain> {
        koszul_complex(self.coresolution(i)?, m)
    }

    pub fn betti(&self, m: &ModRef, i: usize) -> Result<Vec<usize>> {
        Ok(self.complex(i, m)?.homology())
    }

    /// Betti numbers at every family member.
    pub fn betti_table(&self, m: &ModRef) -> Result<BettiTable> {
        let mut entries = Vec::new();
        for i in 0..self.fam.len() {
            for (d, h) in self.betti(m, i)?.into_iter().enumerate() {
                entries.push(((d, self.fam.interval(i).clone()), h));
            }
        }
        Ok(BettiTable::from_entries(entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cl3_m45, cl5_m, ladder, ladder_interval};
    use crate::poset::BoundQuiver;
    use crate::resolve::betti;
    use num_traits::One;

    const Q: Field = Field::Rationals;

    fn ms(q: &BoundQuiver, items: &[&str]) -> BTreeMap<Interval, usize> {
        let mut out = BTreeMap::new();
        for s in items {
            *out.entry(ladder_interval(q, s)).or_insert(0) += 1;
        }
        out
    }

    fn index(fam: &IntervalFamily, text: &str) -> usize {
        fam.index_of(&ladder_interval(fam.quiver(), text)).unwrap()
    }

    #[test]
    fn cl3_first_example() {
        let q = ladder(3);
        let fam = IntervalFamily::all(q.clone(), Q);
        let i = index(&fam, "111/001");
        let y = koszul_coresolution(&fam, i, 24).unwrap();
        assert_eq!(y.len(), 3);
        assert_eq!(y.multiset(1), ms(&q, &["111/011", "110/000", "000/001"]));
        assert_eq!(y.multiset(2), ms(&q, &["110/011"]));
        let m = cl3_m45(Q).unwrap();
        let c = koszul_complex(&y, &m).unwrap();
        assert_eq!(c.dims(), &[1, 0, 0]);
        assert_eq!(c.homology(), vec![1, 0, 0]);
    }

    #[test]
    fn cl3_second_example() {
        let q = ladder(3);
        let fam = IntervalFamily::all(q.clone(), Q);
        let i = index(&fam, "011/001");
        let y = koszul_coresolution(&fam, i, 24).unwrap();
        assert_eq!(y.multiset(1), ms(&q, &["010/000", "011/011", "111/001"]));
        assert_eq!(y.multiset(2), ms(&q, &["111/011", "110/000", "010/011"]));
        assert_eq!(y.multiset(3), ms(&q, &["110/011"]));
        let m = cl3_m45(Q).unwrap();
        let c = koszul_complex(&y, &m).unwrap();
        assert_eq!(&c.dims()[..2], &[2, 3]);
        assert_eq!(c.homology(), vec![0, 1, 0, 0]);
    }

    #[test]
    fn cl5_example() {
        let m = cl5_m(Q).unwrap();
        let q = m.quiver().clone();
        let fam = IntervalFamily::all(q.clone(), Q);
        let i = index(&fam, "00011/00001");
        let y = koszul_coresolution(&fam, i, 40).unwrap();
        assert_eq!(y.multiset(1), ms(&q, &["00011/00011", "00010/00000", "00111/00001"]));
        assert_eq!(y.multiset(2), ms(&q, &["00110/00000", "00010/00011", "00111/00011"]));
        assert_eq!(y.multiset(3), ms(&q, &["00110/00011"]));
        assert_eq!(koszul_complex(&y, &m).unwrap().homology(), vec![0, 1, 0, 0]);
    }

    #[test]
    fn zero_module_gives_zero_complex() {
        let q = ladder(2);
        let fam = IntervalFamily::all(q.clone(), Q);
        let z = Arc::new(crate::repmod::PersModule::zero(q, Q));
        let y = koszul_coresolution(&fam, 4, 8).unwrap();
        assert!(koszul_complex(&y, &z).unwrap().dims().iter().all(|&d| d == 0));
    }

    #[test]
    fn validator_rejects_a_flipped_block() {
        let q = ladder(3);
        let fam = IntervalFamily::all(q.clone(), Q);
        let i = index(&fam, "111/001");
        let y = koszul_coresolution(&fam, i, 24).unwrap();
        let mut blocks: Vec<BTreeMap<(usize, usize), Vec<Scalar>>> = Vec::new();
        for (d, w) in y.terms.windows(2).enumerate() {
            let mut b = BTreeMap::new();
            for t in 0..w[1].len() {
                for g in 0..w[0].len() {
                    b.insert((t, g), w[0].block_of(&w[1], &y.diffs[d], t, g));
                }
            }
            blocks.push(b);
        }
        let summands: Vec<Vec<Interval>> = y.terms.iter().map(|t| t.summands().to_vec()).collect();
        let same = IntervalCochain::from_blocks(&fam, y.interval.clone(), summands.clone(), &blocks).unwrap();
        assert!(validate_koszul_coresolution(&same, &fam).is_ok());
        let flip = blocks[1].get_mut(&(0, 0)).unwrap();
        for v in flip.iter_mut() {
            *v = -v.clone();
        }
        let bad = IntervalCochain::from_blocks(&fam, y.interval.clone(), summands, &blocks).unwrap();
        assert!(validate_koszul_coresolution(&bad, &fam).is_err());
    }

    #[test]
    fn cancelling_pair_keeps_validity_and_homology() {
        let q = ladder(3);
        let fam = IntervalFamily::all(q.clone(), Q);
        let i = index(&fam, "111/001");
        let y = koszul_coresolution(&fam, i, 24).unwrap();
        // Append V_J to degrees 1 and 2 with the identity between the copies.
        let j = ladder_interval(&q, "010/011");
        let mut summands: Vec<Vec<Interval>> = y.terms.iter().map(|t| t.summands().to_vec()).collect();
        summands[1].push(j.clone());
        summands[2].push(j.clone());
        let mut blocks: Vec<BTreeMap<(usize, usize), Vec<Scalar>>> = Vec::new();
        for (d, w) in y.terms.windows(2).enumerate() {
            let mut b = BTreeMap::new();
            for t in 0..w[1].len() {
                for g in 0..w[0].len() {
                    b.insert((t, g), w[0].block_of(&w[1], &y.diffs[d], t, g));
                }
            }
            blocks.push(b);
        }
        let n = q.num_vertices();
        let ones: Vec<Scalar> = (0..n).map(|x| if j.contains(x) { Scalar::one() } else { Scalar::from_integer(0.into()) }).collect();
        blocks[1].insert((summands[2].len() - 1, summands[1].len() - 1), ones);
        let padded = IntervalCochain::from_blocks(&fam, y.interval.clone(), summands, &blocks).unwrap();
        validate_koszul_coresolution(&padded, &fam).unwrap();
        let m = cl3_m45(Q).unwrap();
        assert_eq!(koszul_complex(&padded, &m).unwrap().homology(), koszul_complex(&y, &m).unwrap().homology());
    }

    #[test]
    fn engine_matches_resolution_on_fixtures() {
        let m = cl3_m45(Q).unwrap();
        let fam = Arc::new(IntervalFamily::all(m.quiver().clone(), Q));
        let engine = KoszulEngine::new(fam.clone());
        let direct = betti(&m, &fam, 24).unwrap();
        assert_eq!(engine.betti_table(&m).unwrap(), direct);
    }
}
