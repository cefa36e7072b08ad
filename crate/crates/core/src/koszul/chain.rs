use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};

/// A bounded chain complex of vector spaces `⋯ → C₂ → C₁ → C₀ → 0`, with
/// `diffs[i] : C_{i+1} → C_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecChain {
    field: Field,
    dims: Vec<usize>,
    diffs: Vec<Mat>,
}

impl VecChain {
    pub fn new(field: Field, dims: Vec<usize>, diffs: Vec<Mat>) -> Result<VecChain> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::Inconsistent(format!("{} spaces need {} differentials", dims.len(), dims.len().saturating_sub(1))));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[i], dims[i + 1]) {
                return Err(Error::Inconsistent(format!("differential {} has shape {:?}", i + 1, d.shape())));
            }
        }
        for w in diffs.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return Err(Error::Inconsistent("consecutive differentials do not compose to zero".into()));
            }
        }
        Ok(VecChain { field, dims, diffs })
    }

    pub fn zero(field: Field) -> VecChain {
        VecChain { field, dims: vec![0], diffs: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn diffs(&self) -> &[Mat] {
        &self.diffs
    }

    /// `dim H_i = dim C_i − rank ∂_i − rank ∂_{i+1}`.
    pub fn homology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.iter().map(Mat::rank).collect();
        (0..self.dims.len())
            .map(|i| {
                let out = if i > 0 { ranks[i - 1] } else { 0 };
                let inc = ranks.get(i).copied().unwrap_or(0);
                self.dims[i] - out - inc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homology_of_small_chains() {
        let f = Field::Rationals;
        // k --1--> k is acyclic.
        let c = VecChain::new(f, vec![1, 1], vec![Mat::from_ints(f, &[&[1]])]).unwrap();
        assert_eq!(c.homology(), vec![0, 0]);
        // k² --(1 1)--> k has one-dimensional H₁.
        let c = VecChain::new(f, vec![1, 2], vec![Mat::from_ints(f, &[&[1, 1]])]).unwrap();
        assert_eq!(c.homology(), vec![0, 1]);
        assert_eq!(VecChain::zero(f).homology(), vec![0]);
    }

    #[test]
    fn rejects_non_complexes() {
        let f = Field::Rationals;
        let one = Mat::from_ints(f, &[&[1]]);
        assert!(VecChain::new(f, vec![1, 1, 1], vec![one.clone(), one]).is_err());
    }
}
