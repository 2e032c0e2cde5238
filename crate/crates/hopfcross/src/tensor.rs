//! Mixed-radix enumeration of tensor-product bases.

use alloc::vec::Vec;

/// Basis of `V_1 ⊗ … ⊗ V_k` with `dim V_i = dims[i]`, enumerated
/// lexicographically (last factor fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    dims: Vec<usize>,
    size: usize,
}

impl TensorSpace {
    pub fn new(dims: &[usize]) -> Self {
        TensorSpace {
            dims: dims.to_vec(),
            size: dims.iter().product(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, multi: &[usize]) -> usize {
        assert_eq!(multi.len(), self.dims.len());
        let mut idx = 0;
        for (m, d) in multi.iter().zip(&self.dims) {
            debug_assert!(m < d);
            idx = idx * d + m;
        }
        idx
    }

    pub fn multi(&self, mut idx: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            out[k] = idx % self.dims[k];
            idx /= self.dims[k];
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size).map(move |i| self.multi(i))
    }
}

/// All words of length `len` over `0..base`, lexicographic.
pub fn words(base: usize, len: usize) -> Vec<Vec<usize>> {
    TensorSpace::new(&alloc::vec![base; len]).iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let t = TensorSpace::new(&[2, 3]);
        assert_eq!(t.size(), 6);
        assert_eq!(t.index(&[1, 2]), 5);
        assert_eq!(TensorSpace::new(&[]).size(), 1);
        assert_eq!(TensorSpace::new(&[2, 2, 2]).index(&[1, 0, 1]), 5);
    }

    proptest! {
        #[test]
        fn index_multi_roundtrip(dims in prop::collection::vec(1usize..5, 0..4), seed in 0usize..1000) {
            let t = TensorSpace::new(&dims);
            let i = seed % t.size();
            prop_assert_eq!(t.index(&t.multi(i)), i);
        }
    }
}
