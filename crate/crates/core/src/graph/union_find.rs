//! Lock-free union-find over `u32` vertex ids.
//!
//! Roots always link towards the smaller id, so after all unions the root of
//! a set is its smallest member.

use std::sync::atomic::{AtomicU32, Ordering};

pub struct ConcurrentUnionFind {
    parent: Vec<AtomicU32>,
}

impl ConcurrentUnionFind {
    pub fn new(len: usize) -> Self {
        assert!(len <= u32::MAX as usize);
        ConcurrentUnionFind {
            parent: (0..len as u32).map(AtomicU32::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root lookup with path halving.
    pub fn find(&self, mut i: u32) -> u32 {
        loop {
            let p = self.parent[i as usize].load(Ordering::Acquire);
            if p == i {
                return i;
            }
            let gp = self.parent[p as usize].load(Ordering::Acquire);
            if gp != p {
                let _ = self.parent[i as usize].compare_exchange_weak(
                    p,
                    gp,
                    Ordering::AcqRel,
                    Ordering::Relaxed,
                );
            }
            i = gp;
        }
    }

    pub fn union(&self, a: u32, b: u32) {
        let (mut a, mut b) = (a, b);
        loop {
            a = self.find(a);
            b = self.find(b);
            if a == b {
                return;
            }
            let (hi, lo) = if a > b { (a, b) } else { (b, a) };
            if self.parent[hi as usize]
                .compare_exchange(hi, lo, Ordering::AcqRel, Ordering::Acquire)
                .is_ok()
            {
                return;
            }
        }
    }

    /// Fully compressed parent array: entry `i` is the root of `i`.
    pub fn into_roots(self) -> Vec<u32> {
        let mut parent: Vec<u32> = self.parent.into_iter().map(AtomicU32::into_inner).collect();
        // Roots are smaller than their members, so one ascending pass suffices.
        for i in 0..parent.len() {
            let p = parent[i] as usize;
            parent[i] = parent[p];
        }
        parent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    #[test]
    fn roots_are_minimal_members() {
        let uf = ConcurrentUnionFind::new(10);
        uf.union(9, 4);
        uf.union(4, 7);
        uf.union(2, 8);
        uf.union(8, 9);
        let roots = uf.into_roots();
        assert_eq!(roots, [0, 1, 2, 3, 2, 5, 6, 2, 2, 2]);
    }

    #[test]
    fn parallel_chain_collapses() {
        let n = 100_000u32;
        let uf = ConcurrentUnionFind::new(n as usize);
        (1..n).into_par_iter().for_each(|i| uf.union(i, i - 1));
        assert!(uf.into_roots().iter().all(|&r| r == 0));
    }

    #[test]
    fn parallel_matches_parity_classes() {
        let n = 50_000u32;
        let uf = ConcurrentUnionFind::new(n as usize);
        (2..n).into_par_iter().rev().for_each(|i| uf.union(i, i - 2));
        let roots = uf.into_roots();
        for (i, r) in roots.iter().enumerate() {
            assert_eq!(*r as usize, i % 2);
        }
    }
}
