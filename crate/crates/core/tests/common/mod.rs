//! Naive reference implementations. They work only from the raw
//! multiplication table and share no code paths with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use delta_core::FiniteGroup;

pub struct Table {
    pub n: usize,
    pub rows: Vec<Vec<usize>>,
}

impl Table {
    pub fn of(g: &FiniteGroup) -> Self {
        Table {
            n: g.order(),
            rows: g.rows(),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.rows[a][b]
    }

    pub fn identity(&self) -> usize {
        (0..self.n)
            .find(|&e| (0..self.n).all(|x| self.rows[e][x] == x))
            .unwrap()
    }

    pub fn inverse(&self, a: usize) -> usize {
        let e = self.identity();
        (0..self.n).find(|&b| self.rows[a][b] == e).unwrap()
    }

    /// Whether `x` and `y` are conjugate: some g with g·x = y·g.
    pub fn conjugate(&self, x: usize, y: usize) -> bool {
        (0..self.n).any(|g| self.mul(g, x) == self.mul(y, g))
    }

    /// Classes as sets, found by testing conjugacy of every pair.
    pub fn classes(&self) -> BTreeSet<BTreeSet<usize>> {
        (0..self.n)
            .map(|x| (0..self.n).filter(|&y| self.conjugate(x, y)).collect())
            .collect()
    }

    /// Sorted (class size, centralizer order) pairs, centralizers counted
    /// directly.
    pub fn class_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .classes()
            .iter()
            .map(|c| {
                let x = *c.iter().next().unwrap();
                let cent = (0..self.n)
                    .filter(|&g| self.mul(g, x) == self.mul(x, g))
                    .count();
                (c.len(), cent)
            })
            .collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn ambivalent(&self) -> bool {
        (0..self.n).all(|x| self.conjugate(x, self.inverse(x)))
    }

    pub fn order_of(&self, g: usize) -> usize {
        let e = self.identity();
        let (mut x, mut k) = (g, 1);
        while x != e {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Number of surjections onto the 2-element group, by trying every
    /// assignment of signs to a generating set taken in index order.
    pub fn surjections_to_c2(&self) -> usize {
        let mut gens: Vec<usize> = Vec::new();
        let mut span: BTreeSet<usize> = [self.identity()].into();
        for g in 0..self.n {
            if span.contains(&g) {
                continue;
            }
            gens.push(g);
            span = self.closure(&gens);
        }
        let mut count = 0;
        for mask in 0..1u32 << gens.len() {
            if let Some(sign) = self.extend_sign(&gens, mask) {
                if sign.contains(&1) {
                    count += 1;
                }
            }
        }
        count
    }

    fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = [self.identity()].into();
        loop {
            let next: BTreeSet<usize> = set
                .iter()
                .flat_map(|&x| gens.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.mul(x, g))
                .collect();
            let before = set.len();
            set.extend(next);
            if set.len() == before {
                return set;
            }
        }
    }

    fn extend_sign(&self, gens: &[usize], mask: u32) -> Option<Vec<u8>> {
        let mut sign = vec![u8::MAX; self.n];
        sign[self.identity()] = 0;
        let mut stack = vec![self.identity()];
        while let Some(x) = stack.pop() {
            for (i, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                let s = sign[x] ^ ((mask >> i) & 1) as u8;
                if sign[y] == u8::MAX {
                    sign[y] = s;
                    stack.push(y);
                }
            }
        }
        let ok =
            (0..self.n).all(|a| (0..self.n).all(|b| sign[self.mul(a, b)] == sign[a] ^ sign[b]));
        ok.then_some(sign)
    }
}
