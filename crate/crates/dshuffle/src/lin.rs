//! Sparse finite linear combinations with zero terms dropped.

use crate::scalar::{Coeff, Q};
use std::collections::btree_map::{self, BTreeMap};

#[derive(Clone, Debug, PartialEq)]
pub struct Lin<K: Ord, C = Q> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for Lin<K, C> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, C: Coeff> Lin<K, C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: C) -> Self {
        let mut l = Self::new();
        l.add_term(k, c);
        l
    }

    pub fn add_term(&mut self, k: K, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn get(&self, k: &K) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, C> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (k, c) in o.iter() {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Self, s: &C) {
        for (k, c) in o.iter() {
            self.add_term(k.clone(), c.mul(s));
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in o.iter() {
            r.add_term(k.clone(), c.neg());
        }
        r
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut r = Self::new();
        if s.is_zero() {
            return r;
        }
        for (k, c) in self.iter() {
            r.add_term(k.clone(), c.mul(s));
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg())
    }

    /// Linear extension of a key map into combinations.
    pub fn map_lin<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Lin<K2, C>) -> Lin<K2, C> {
        let mut r = Lin::new();
        for (k, c) in self.iter() {
            r.add_scaled(&f(k), c);
        }
        r
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        let mut r = Self::new();
        for (k, c) in self.iter() {
            if keep(k) {
                r.add_term(k.clone(), c.clone());
            }
        }
        r
    }

    /// Largest coefficient magnitude; zero for the empty combination.
    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

impl<K: Ord + Clone, C: Coeff> FromIterator<(K, C)> for Lin<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(it: I) -> Self {
        let mut r = Lin::new();
        for (k, c) in it {
            r.add_term(k, c);
        }
        r
    }
}

impl<'a, K: Ord, C> IntoIterator for &'a Lin<K, C> {
    type Item = (&'a K, &'a C);
    type IntoIter = btree_map::Iter<'a, K, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    #[test]
    fn cancellation_drops_terms() {
        let mut l: Lin<u8> = Lin::single(1, qi(2));
        l.add_term(1, qi(-2));
        assert!(l.is_zero());
    }
}
