//! Conjugacy classes, centralizers, ambivalence, derived and index-2
//! subgroups.

mod iso;

pub use iso::{are_isomorphic, are_isomorphic_with_budget, Isomorphism, DEFAULT_SEARCH_BUDGET};

use serde::{Deserialize, Serialize};

use crate::group::{FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub centralizer_order: usize,
    pub element_order: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

/// One conjugacy class summarised as (size, centralizer order, element order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassEntry {
    pub size: usize,
    pub centralizer: usize,
    pub element_order: usize,
}

/// Sorted multiset of class entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassProfile {
    pub entries: Vec<ClassEntry>,
}

impl ClassProfile {
    pub fn from_classes(classes: &[ConjugacyClass]) -> Self {
        let mut entries: Vec<ClassEntry> = classes
            .iter()
            .map(|c| ClassEntry {
                size: c.size(),
                centralizer: c.centralizer_order,
                element_order: c.element_order,
            })
            .collect();
        entries.sort_unstable();
        ClassProfile { entries }
    }

    pub fn of(group: &FiniteGroup) -> Self {
        Self::from_classes(&conjugacy_classes(group))
    }

    /// The (size, centralizer order) pairs, sorted.
    pub fn size_centralizer_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = self
            .entries
            .iter()
            .map(|e| (e.size, e.centralizer))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<_> = self.entries.iter().map(|e| e.size).collect();
        sizes.sort_unstable();
        sizes
    }
}

/// Orbits of the conjugation action, sorted by (size, element order,
/// representative). Each representative is the smallest member.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<ConjugacyClass> {
    let n = group.order();
    let gens = group.generating_set();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        let mut members = vec![x];
        let mut cursor = 0;
        while cursor < members.len() {
            let y = members[cursor];
            cursor += 1;
            for &g in &gens {
                let z = group.conjugate(g, y);
                if !seen[z] {
                    seen[z] = true;
                    members.push(z);
                }
            }
        }
        members.sort_unstable();
        debug_assert_eq!(n % members.len(), 0, "orbit-stabilizer");
        classes.push(ConjugacyClass {
            representative: x,
            centralizer_order: n / members.len(),
            element_order: group.element_order(x),
            members,
        });
    }
    classes.sort_by_key(|c| (c.size(), c.element_order, c.representative));
    debug_assert_eq!(classes.iter().map(ConjugacyClass::size).sum::<usize>(), n);
    classes
}

/// `class_of[g]` is the position of g's class in `classes`.
pub fn class_map(group: &FiniteGroup, classes: &[ConjugacyClass]) -> Vec<usize> {
    let mut class_of = vec![usize::MAX; group.order()];
    for (k, class) in classes.iter().enumerate() {
        for &m in &class.members {
            class_of[m] = k;
        }
    }
    class_of
}

pub fn centralizer(group: &FiniteGroup, g: usize) -> Subgroup {
    Subgroup {
        parent_order: group.order(),
        members: (0..group.order())
            .filter(|&x| group.commutes(x, g))
            .collect(),
    }
}

pub fn center(group: &FiniteGroup) -> Subgroup {
    Subgroup {
        parent_order: group.order(),
        members: (0..group.order())
            .filter(|&z| (0..group.order()).all(|x| group.commutes(x, z)))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ambivalence {
    pub ambivalent: bool,
    /// Smallest element not conjugate to its inverse.
    pub witness: Option<usize>,
}

/// Whether every element is conjugate to its inverse.
pub fn is_ambivalent(group: &FiniteGroup) -> Ambivalence {
    let classes = conjugacy_classes(group);
    let class_of = class_map(group, &classes);
    let witness = (0..group.order()).find(|&g| class_of[g] != class_of[group.inv(g)]);
    Ambivalence {
        ambivalent: witness.is_none(),
        witness,
    }
}

/// Normal closure of the commutators of a generating set.
pub fn derived_subgroup(group: &FiniteGroup) -> Subgroup {
    let gens = group.generating_set();
    let seeds: Vec<usize> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| group.commutator(a, b))
        .collect();
    group.normal_closure(&seeds, &gens)
}

/// The largest elementary abelian 2-quotient `G / ⟨commutators, squares⟩`.
#[derive(Debug, Clone)]
pub struct TwoQuotient {
    pub kernel: Subgroup,
    /// Dimension over the 2-element field.
    pub dimension: usize,
    /// Coordinates of each element's image, as a bitmask.
    pub coordinates: Vec<u64>,
}

impl TwoQuotient {
    pub fn new(group: &FiniteGroup) -> Self {
        let n = group.order();
        // The quotient by the normal closure of generator squares and
        // commutators is generated by commuting involutions, so this is the
        // subgroup generated by all squares.
        let gens = group.generating_set();
        let seeds: Vec<usize> = gens
            .iter()
            .map(|&s| group.mul(s, s))
            .chain(
                gens.iter()
                    .flat_map(|&a| gens.iter().map(move |&b| group.commutator(a, b))),
            )
            .collect();
        let kernel = group.normal_closure(&seeds, &gens);

        // Coset label: smallest element of gN.
        let mut coset = vec![usize::MAX; n];
        for g in 0..n {
            if coset[g] == usize::MAX {
                let coset_members: Vec<usize> =
                    kernel.members.iter().map(|&k| group.mul(g, k)).collect();
                let label = *coset_members.iter().min().unwrap();
                for m in coset_members {
                    coset[m] = label;
                }
            }
        }

        // Span tracking over cosets: greedily add the smallest element whose
        // coset is not yet spanned.
        let mut vector_of_coset = vec![u64::MAX; n];
        let mut spanned = vec![0usize];
        vector_of_coset[0] = 0;
        let mut dimension = 0;
        for g in 0..n {
            if vector_of_coset[coset[g]] != u64::MAX {
                continue;
            }
            assert!(dimension < 64, "2-quotient dimension exceeds 64");
            let bit = 1u64 << dimension;
            let mut added = Vec::with_capacity(spanned.len());
            for &c in &spanned {
                let target = coset[group.mul(c, g)];
                vector_of_coset[target] = vector_of_coset[c] | bit;
                added.push(target);
            }
            spanned.extend(added);
            dimension += 1;
        }
        let coordinates = (0..n).map(|g| vector_of_coset[coset[g]]).collect();
        TwoQuotient {
            kernel,
            dimension,
            coordinates,
        }
    }

    pub fn index2_count(&self) -> usize {
        (1usize << self.dimension) - 1
    }

    /// Kernel of the functional picking out the coordinates in `mask`.
    pub fn hyperplane(&self, mask: u64) -> Subgroup {
        Subgroup {
            parent_order: self.coordinates.len(),
            members: (0..self.coordinates.len())
                .filter(|&g| (self.coordinates[g] & mask).count_ones().is_multiple_of(2))
                .collect(),
        }
    }
}

/// All index-2 subgroups, as kernels of the surjections onto the 2-element
/// group, ordered by the functional's bitmask.
pub fn index2_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let q = TwoQuotient::new(group);
    (1..=q.index2_count() as u64)
        .map(|mask| q.hyperplane(mask))
        .collect()
}

/// The first entry of [`index2_subgroups`], without enumerating the rest.
pub fn first_index2_subgroup(group: &FiniteGroup) -> Option<Subgroup> {
    let q = TwoQuotient::new(group);
    (q.dimension > 0).then(|| q.hyperplane(1))
}
