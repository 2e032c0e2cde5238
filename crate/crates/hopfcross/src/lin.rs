//! Sparse formal linear combinations over an ordered key set.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// A finite sum `Σ c_k · k` with nonzero coefficients only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Scalar) -> Self {
        let mut l = Self::zero();
        l.add_term(k, c);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> Option<&Scalar> {
        self.terms.get(k)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    /// Adds `c · k`, dropping the key if it cancels.
    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_term_ref(&mut self, k: &K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some(v) = self.terms.get_mut(k) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(k);
            }
        } else {
            self.terms.insert(k.clone(), c.clone());
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Lin<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term_ref(k, &(v * c));
        }
    }

    pub fn add_assign(&mut self, other: &Lin<K>) {
        for (k, v) in other.iter() {
            self.add_term_ref(k, v);
        }
    }

    pub fn sub_assign(&mut self, other: &Lin<K>) {
        for (k, v) in other.iter() {
            self.add_term_ref(k, &-v);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Lin<K> {
        let mut out = Lin::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Lin<K> {
        Lin {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Lin<J>) -> Lin<J> {
        let mut out = Lin::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabels keys; keys sent to `None` are dropped.
    pub fn filter_map_keys<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<J>) -> Lin<J> {
        let mut out = Lin::zero();
        for (k, c) in self.iter() {
            if let Some(j) = f(k) {
                out.add_term_ref(&j, c);
            }
        }
        out
    }

    pub fn into_terms(self) -> Vec<(K, Scalar)> {
        self.terms.into_iter().collect()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut l = Lin::zero();
        for (k, c) in iter {
            l.add_term(k, c);
        }
        l
    }
}

impl<'a, K: Ord> IntoIterator for &'a Lin<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    #[test]
    fn cancellation_drops_key() {
        let q = FieldSpec::Rationals;
        let mut l = Lin::single(3usize, q.one());
        l.add_term(3, q.from_i64(-1));
        assert!(l.is_zero());
        l.add_term(1, q.zero());
        assert!(l.is_zero());
    }

    #[test]
    fn map_linear_is_linear() {
        let q = FieldSpec::Rationals;
        let l: Lin<usize> = [(0, q.from_i64(2)), (1, q.from_i64(3))].into_iter().collect();
        let img = l.map_linear(|k| { let _ = k; Lin::single(0, q.one()) });
        assert_eq!(img, Lin::single(0, q.from_i64(5)));
    }
}
