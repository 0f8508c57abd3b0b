//! Fixed-capacity vertex bitsets used by the search cores.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet { words: vec![0; capacity.div_ceil(64).max(1)] }
    }

    pub fn from_iter_with_capacity<I: IntoIterator<Item = usize>>(capacity: usize, it: I) -> Self {
        let mut s = Self::new(capacity);
        for v in it {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v >> 6] |= 1 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v >> 6] &= !(1 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words.get(v >> 6).is_some_and(|w| w >> (v & 63) & 1 == 1)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut a = VertexSet::from_iter_with_capacity(130, [1, 64, 129]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(129) && !a.contains(128));
        let b = VertexSet::from_iter_with_capacity(130, [64]);
        assert!(b.is_subset(&a) && a.intersects(&b));
        a.difference_with(&b);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 129]);
        assert!(!a.contains(100_000));
    }
}
