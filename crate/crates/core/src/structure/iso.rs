use serde::{Deserialize, Serialize};

use super::{class_map, conjugacy_classes, ClassProfile};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// A bijection `map` from source elements to target elements that respects
/// multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub source_order: usize,
    pub target_order: usize,
    pub map: Vec<usize>,
}

impl Isomorphism {
    /// Checks bijectivity, the identity, and `map(xy) = map(x)map(y)` on all pairs.
    pub fn verify(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        let n = source.order();
        if n != target.order() || self.map.len() != n || self.map[0] != 0 {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in &self.map {
            if y >= n || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        (0..n).all(|a| {
            (0..n).all(|b| self.map[source.mul(a, b)] == target.mul(self.map[a], self.map[b]))
        })
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        Isomorphism {
            source_order: self.target_order,
            target_order: self.source_order,
            map,
        }
    }

    /// `next ∘ self`
    pub fn then(&self, next: &Isomorphism) -> Isomorphism {
        Isomorphism {
            source_order: self.source_order,
            target_order: next.target_order,
            map: self.map.iter().map(|&y| next.map[y]).collect(),
        }
    }
}

/// Greedy generating set: repeatedly add the element of largest order
/// outside the current closure, smallest index first.
pub(crate) fn greedy_generators(group: &FiniteGroup, orders: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closure = group.generate(&gens);
    while closure.order() < group.order() {
        let next = (0..group.order())
            .filter(|&g| !closure.contains(g))
            .max_by_key(|&g| (orders[g], std::cmp::Reverse(g)))
            .expect("closure is proper");
        gens.push(next);
        closure = group.generate(&gens);
    }
    gens
}

pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Isomorphism>> {
    are_isomorphic_with_budget(g, h, DEFAULT_SEARCH_BUDGET)
}

/// Backtracking over images of a greedy generating set, pruned by element
/// order and class size. Any map found is re-verified before it is returned.
pub fn are_isomorphic_with_budget(
    g: &FiniteGroup,
    h: &FiniteGroup,
    budget: u64,
) -> Result<Option<Isomorphism>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let (g_classes, h_classes) = (conjugacy_classes(g), conjugacy_classes(h));
    if ClassProfile::from_classes(&g_classes) != ClassProfile::from_classes(&h_classes) {
        return Ok(None);
    }
    let signature =
        |group: &FiniteGroup, classes: &[super::ConjugacyClass]| -> Vec<(usize, usize)> {
            let class_of = class_map(group, classes);
            (0..group.order())
                .map(|x| {
                    (
                        classes[class_of[x]].element_order,
                        classes[class_of[x]].size(),
                    )
                })
                .collect()
        };
    let g_sig = signature(g, &g_classes);
    let h_sig = signature(h, &h_classes);
    let g_orders: Vec<usize> = g_sig.iter().map(|s| s.0).collect();

    let gens = greedy_generators(g, &g_orders);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..h.order()).filter(|&y| h_sig[y] == g_sig[x]).collect())
        .collect();

    let mut search = Search {
        g,
        h,
        gens: &gens,
        candidates: &candidates,
        g_sig: &g_sig,
        h_sig: &h_sig,
        images: Vec::with_capacity(gens.len()),
        nodes: 0,
        budget,
    };
    let Some(map) = search.run()? else {
        return Ok(None);
    };
    let iso = Isomorphism {
        source_order: g.order(),
        target_order: h.order(),
        map,
    };
    assert!(
        iso.verify(g, h),
        "isomorphism search produced an invalid map"
    );
    Ok(Some(iso))
}

struct Search<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    gens: &'a [usize],
    candidates: &'a [Vec<usize>],
    g_sig: &'a [(usize, usize)],
    h_sig: &'a [(usize, usize)],
    images: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self) -> Result<Option<Vec<usize>>> {
        if self.gens.is_empty() {
            return Ok(Some(vec![0]));
        }
        self.descend()
    }

    fn descend(&mut self) -> Result<Option<Vec<usize>>> {
        let depth = self.images.len();
        for &candidate in &self.candidates[depth] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded {
                    budget: self.budget,
                });
            }
            self.images.push(candidate);
            if let Some(map) = self.extend() {
                if self.images.len() == self.gens.len() {
                    return Ok(Some(map));
                }
                if let Some(found) = self.descend()? {
                    return Ok(Some(found));
                }
            }
            self.images.pop();
        }
        Ok(None)
    }

    /// Extends the assigned generator images over the subgroup they generate,
    /// failing on any inconsistency, collision, or signature mismatch.
    fn extend(&self) -> Option<Vec<usize>> {
        let n = self.g.order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0usize];
        let mut cursor = 0;
        while cursor < queue.len() {
            let x = queue[cursor];
            cursor += 1;
            for (t, &image) in self.images.iter().enumerate() {
                let y = self.g.mul(x, self.gens[t]);
                let target = self.h.mul(map[x], image);
                if map[y] == usize::MAX {
                    if used[target] || self.g_sig[y] != self.h_sig[target] {
                        return None;
                    }
                    map[y] = target;
                    used[target] = true;
                    queue.push(y);
                } else if map[y] != target {
                    return None;
                }
            }
        }
        Some(map)
    }
}
