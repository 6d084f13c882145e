//! Concrete finite groups given by multiplication tables.
//!
//! Every [`FiniteGroup`] numbers its elements `0..n` and keeps the identity
//! at index 0. Constructors renumber their input when needed to keep that
//! invariant.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result, TableDefect};
use crate::perm::Permutation;

/// Default bound on the order of any group built by closure or product.
pub const DEFAULT_MAX_ORDER: usize = 10080;

/// How much of the group axioms to check when building from a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    /// Latin-square, identity, inverse and the full O(n³) associativity check.
    Full,
    /// Skip associativity. Only for tables produced by trusted constructions.
    SkipAssociativity,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// A subgroup of some parent group, stored as its sorted member list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    pub parent_order: usize,
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            inverse: vec![0],
        }
    }

    /// Validates a row-major multiplication table (`table[i][j]` is `i·j`).
    ///
    /// If the identity is not element 0 it is swapped into place; use
    /// [`FiniteGroup::from_table_tracked`] to recover that renumbering.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        Self::from_table_tracked(table).map(|(g, _)| g)
    }

    /// Like [`FiniteGroup::from_table`], also returning `old index -> new index`.
    pub fn from_table_tracked(table: &[Vec<usize>]) -> Result<(Self, Vec<usize>)> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup(TableDefect::Empty));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotAGroup(TableDefect::RaggedRow {
                    row,
                    len: entries.len(),
                    expected: n,
                }));
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(Error::NotAGroup(TableDefect::EntryOutOfRange {
                        row,
                        col,
                        value,
                    }));
                }
                flat.push(value as u32);
            }
        }
        Self::from_flat_tracked(n, flat, Validation::Full)
    }

    /// Builds from a flat row-major table of length `order²`.
    pub fn from_flat(order: usize, table: Vec<u32>, validation: Validation) -> Result<Self> {
        Self::from_flat_tracked(order, table, validation).map(|(g, _)| g)
    }

    fn from_flat_tracked(
        n: usize,
        table: Vec<u32>,
        validation: Validation,
    ) -> Result<(Self, Vec<usize>)> {
        if n == 0 {
            return Err(Error::NotAGroup(TableDefect::Empty));
        }
        assert_eq!(table.len(), n * n, "flat table must have order² entries");
        let at = |i: usize, j: usize| table[i * n + j] as usize;

        let mut seen = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let v = at(i, j);
                if v >= n {
                    return Err(Error::NotAGroup(TableDefect::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                    }));
                }
                if seen[v] == i {
                    return Err(Error::NotAGroup(TableDefect::RowNotPermutation(i)));
                }
                seen[v] = i;
            }
        }
        // Row-major scan with one bit per (column, value); strided column
        // reads are far slower on large tables.
        let mut marked = vec![0u64; (n * n).div_ceil(64)];
        let mut bad_column = None::<usize>;
        for i in 0..n {
            for j in 0..n {
                let bit = j * n + at(i, j);
                if marked[bit / 64] & (1 << (bit % 64)) != 0 {
                    bad_column = Some(bad_column.map_or(j, |b| b.min(j)));
                }
                marked[bit / 64] |= 1 << (bit % 64);
            }
        }
        if let Some(j) = bad_column {
            return Err(Error::NotAGroup(TableDefect::ColumnNotPermutation(j)));
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|i| at(e, i) == i && at(i, e) == i))
            .ok_or(Error::NotAGroup(TableDefect::NoIdentity))?;

        let inverse = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| at(i, j) == identity && at(j, i) == identity)
                    .map(|j| j as u32)
                    .ok_or(Error::NotAGroup(TableDefect::NoInverse(i)))
            })
            .collect::<Result<Vec<u32>>>()?;

        if validation == Validation::Full {
            for i in 0..n {
                for j in 0..n {
                    let ij = at(i, j);
                    for k in 0..n {
                        if at(ij, k) != at(i, at(j, k)) {
                            return Err(Error::NotAGroup(TableDefect::NotAssociative(i, j, k)));
                        }
                    }
                }
            }
        }

        let group = FiniteGroup {
            order: n,
            table,
            inverse,
        };
        if identity == 0 {
            return Ok((group, (0..n).collect()));
        }
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, identity);
        let renumbered = group.relabel_unchecked(&swap);
        Ok((renumbered, swap))
    }

    /// Rebuilds the group under a relabeling `old -> new`. The relabeling must
    /// send the identity to 0.
    fn relabel_unchecked(&self, old_to_new: &[usize]) -> Self {
        let n = self.order;
        let mut table = vec![0u32; n * n];
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            inverse[old_to_new[i]] = old_to_new[self.inv(i)] as u32;
            for j in 0..n {
                table[old_to_new[i] * n + old_to_new[j]] = old_to_new[self.mul(i, j)] as u32;
            }
        }
        FiniteGroup {
            order: n,
            table,
            inverse,
        }
    }

    /// An isomorphic copy with element `i` renamed to `old_to_new[i]`,
    /// renumbered afterwards so the identity stays at 0.
    pub fn relabeled(&self, old_to_new: &[usize]) -> Result<Self> {
        if Permutation::new(old_to_new.to_vec()).is_err() || old_to_new.len() != self.order {
            return Err(Error::InvalidPermutation(
                "relabeling must be a bijection on the elements".into(),
            ));
        }
        let rows: Vec<Vec<usize>> = {
            let mut rows = vec![vec![0; self.order]; self.order];
            for i in 0..self.order {
                for j in 0..self.order {
                    rows[old_to_new[i]][old_to_new[j]] = old_to_new[self.mul(i, j)];
                }
            }
            rows
        };
        let n = self.order;
        let flat = rows.into_iter().flatten().map(|x| x as u32).collect();
        Self::from_flat(n, flat, Validation::SkipAssociativity)
    }

    /// Closes a set of permutations under composition, breadth first.
    ///
    /// Element 0 is the identity; the returned labels give the permutation of
    /// each element index. `table[i][j]` is `labels[i] ∘ labels[j]`.
    pub fn from_generators(generators: &[Permutation]) -> Result<(Self, Vec<Permutation>)> {
        Self::from_generators_bounded(generators, DEFAULT_MAX_ORDER)
    }

    pub fn from_generators_bounded(
        generators: &[Permutation],
        max_order: usize,
    ) -> Result<(Self, Vec<Permutation>)> {
        let degree = generators.first().map_or(0, Permutation::degree);
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let identity = Permutation::identity(degree);
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        let mut labels = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for g in generators {
                let next = labels[cur].compose(g);
                if !index.contains_key(&next) {
                    if labels.len() == max_order {
                        return Err(Error::SizeLimitExceeded { limit: max_order });
                    }
                    index.insert(next.clone(), labels.len());
                    queue.push_back(labels.len());
                    labels.push(next);
                }
            }
        }
        let n = labels.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&labels[i].compose(&labels[j])] as u32;
            }
        }
        let group = Self::from_flat(n, table, Validation::SkipAssociativity)?;
        Ok((group, labels))
    }

    /// Direct product on pairs `(g, h)`, indexed `g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        Self::direct_product_bounded(g, h, DEFAULT_MAX_ORDER)
    }

    pub fn direct_product_bounded(
        g: &FiniteGroup,
        h: &FiniteGroup,
        max_order: usize,
    ) -> Result<Self> {
        let identity: Vec<Vec<usize>> = vec![(0..g.order).collect(); h.order];
        Self::twisted_product(g, h, &identity, max_order)
    }

    /// Semidirect product `N ⋊ H` on pairs `(n, h)`, indexed `n·|H| + h`, with
    /// `(n1, h1)(n2, h2) = (n1 · action[h1](n2), h1 h2)`.
    ///
    /// `action[h]` is the automorphism of `N` attached to `h`, as an image list.
    pub fn semidirect_product(
        normal: &FiniteGroup,
        acting: &FiniteGroup,
        action: &[Vec<usize>],
    ) -> Result<Self> {
        Self::semidirect_product_bounded(normal, acting, action, DEFAULT_MAX_ORDER)
    }

    pub fn semidirect_product_bounded(
        normal: &FiniteGroup,
        acting: &FiniteGroup,
        action: &[Vec<usize>],
        max_order: usize,
    ) -> Result<Self> {
        if action.len() != acting.order {
            return Err(Error::InvalidAction(format!(
                "{} automorphisms given for an acting group of order {}",
                action.len(),
                acting.order
            )));
        }
        for (h, aut) in action.iter().enumerate() {
            if !normal.is_automorphism(aut) {
                return Err(Error::InvalidAction(format!(
                    "image of element {h} is not an automorphism"
                )));
            }
        }
        if !action[0].iter().enumerate().all(|(x, &y)| x == y) {
            return Err(Error::InvalidAction(
                "identity does not act trivially".into(),
            ));
        }
        for a in 0..acting.order {
            for b in 0..acting.order {
                let ab = &action[acting.mul(a, b)];
                if (0..normal.order).any(|x| ab[x] != action[a][action[b][x]]) {
                    return Err(Error::InvalidAction(format!(
                        "not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        Self::twisted_product(normal, acting, action, max_order)
    }

    fn twisted_product(
        normal: &FiniteGroup,
        acting: &FiniteGroup,
        action: &[Vec<usize>],
        max_order: usize,
    ) -> Result<Self> {
        let (nn, nh) = (normal.order, acting.order);
        let order = nn
            .checked_mul(nh)
            .filter(|&o| o <= max_order)
            .ok_or(Error::SizeLimitExceeded { limit: max_order })?;
        let mut table = vec![0u32; order * order];
        for n1 in 0..nn {
            for (h1, twist) in action.iter().enumerate() {
                let row = (n1 * nh + h1) * order;
                for n2 in 0..nn {
                    let n = normal.mul(n1, twist[n2]);
                    for h2 in 0..nh {
                        table[row + n2 * nh + h2] = (n * nh + acting.mul(h1, h2)) as u32;
                    }
                }
            }
        }
        // Both factors and the action are already validated, so the product
        // is a group; (n, h)⁻¹ = (action[h⁻¹](n⁻¹), h⁻¹).
        let mut inverse = vec![0u32; order];
        for n1 in 0..nn {
            for h1 in 0..nh {
                let hi = acting.inv(h1);
                inverse[n1 * nh + h1] = (action[hi][normal.inv(n1)] * nh + hi) as u32;
            }
        }
        Ok(FiniteGroup {
            order,
            table,
            inverse,
        })
    }

    /// Whether an image list is a bijective homomorphism of this group.
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        images.len() == self.order
            && Permutation::new(images.to_vec()).is_ok()
            && (0..self.order).all(|a| {
                (0..self.order).all(|b| images[self.mul(a, b)] == self.mul(images[a], images[b]))
            })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        let (mut acc, mut base, mut k) = (0, g, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Least `k ≥ 1` with `g^k = 1`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|g| self.element_order(g)).collect()
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|row| row.iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// Smallest subgroup containing `generators`.
    pub fn generate(&self, generators: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0];
        let mut cursor = 0;
        while cursor < members.len() {
            let x = members[cursor];
            cursor += 1;
            for &g in generators {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            parent_order: self.order,
            members,
        }
    }

    /// Greedy generating set: walk the elements in index order and keep
    /// each one not yet generated.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = self.generate(&gens);
        for g in 1..self.order {
            if !inside.contains(g) {
                gens.push(g);
                inside = self.generate(&gens);
            }
        }
        gens
    }

    /// Smallest normal subgroup containing `seeds`, closing under conjugation
    /// by `group_gens` (which must generate the whole group).
    pub fn normal_closure(&self, seeds: &[usize], group_gens: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = seeds.to_vec();
        let mut sub = self.generate(&gens);
        let mut cursor = 0;
        while cursor < gens.len() {
            let x = gens[cursor];
            cursor += 1;
            for &s in group_gens {
                let y = self.conjugate(s, x);
                if !sub.contains(y) {
                    gens.push(y);
                    sub = self.generate(&gens);
                }
            }
        }
        sub
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            parent_order: self.order,
            members: (0..self.order).collect(),
        }
    }

    /// Whether a sorted member list is closed under products and inverses
    /// and contains the identity.
    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        for &m in members {
            inside[m] = true;
        }
        inside[0]
            && members
                .iter()
                .all(|&a| inside[self.inv(a)] && members.iter().all(|&b| inside[self.mul(a, b)]))
    }

    /// SHA-256 over the order and little-endian table entries, as hex.
    pub fn table_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.order as u64).to_le_bytes());
        for &x in &self.table {
            hasher.update(x.to_le_bytes());
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// On-disk group format: `{"order": n, "table": [[...]], "labels": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupJson {
    pub fn new(group: &FiniteGroup, labels: Option<&[Permutation]>) -> Self {
        GroupJson {
            order: group.order(),
            table: group.rows(),
            labels: labels.map(|ls| ls.iter().map(ToString::to_string).collect()),
        }
    }

    /// Validates the table and, when present, that the labels multiply
    /// like the table does.
    pub fn into_group(self) -> Result<(FiniteGroup, Option<Vec<Permutation>>)> {
        if self.table.len() != self.order {
            return Err(Error::NotAGroup(TableDefect::RaggedRow {
                row: self.table.len(),
                len: self.table.len(),
                expected: self.order,
            }));
        }
        let (group, old_to_new) = FiniteGroup::from_table_tracked(&self.table)?;
        let Some(texts) = self.labels else {
            return Ok((group, None));
        };
        if texts.len() != self.order {
            return Err(Error::InvalidLabels(format!(
                "{} labels for {} elements",
                texts.len(),
                self.order
            )));
        }
        let parsed = texts
            .iter()
            .map(|t| t.parse::<Permutation>())
            .collect::<Result<Vec<_>>>()?;
        let degree = parsed.iter().map(Permutation::degree).max().unwrap_or(0);
        let mut labels = vec![Permutation::identity(degree); self.order];
        for (old, p) in parsed.into_iter().enumerate() {
            let cycles = p.cycles();
            let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
            labels[old_to_new[old]] = Permutation::from_cycles(degree, &refs)?;
        }
        for i in 0..group.order() {
            for j in 0..group.order() {
                if labels[group.mul(i, j)] != labels[i].compose(&labels[j]) {
                    return Err(Error::InvalidLabels(format!(
                        "labels do not multiply like the table at ({i}, {j})"
                    )));
                }
            }
        }
        Ok((group, Some(labels)))
    }
}
