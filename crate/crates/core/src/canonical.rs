//! Explicit isomorphisms from a certified group onto its canonical model:
//! the trivial group, an elementary abelian 2-group, or a symmetric group on
//! 3, 4 or 5 points.
//!
//! For orders 6, 24 and 120 the group acts by conjugation on a small family
//! of element sets (the marking set); that action is the isomorphism.
//!
//! | c   | class used              | block              | blocks |
//! |-----|-------------------------|--------------------|--------|
//! | 6   | size 3, centralizer 2   | `{s}`              | 3      |
//! | 24  | size 8, centralizer 3   | `{y, y⁻¹}`         | 4      |
//! | 120 | size 15, centralizer 8  | `Z(z) ∩ class`     | 5      |

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::catalog::standard::{
    elementary_abelian_2, elementary_abelian_2_labels, symmetric_with_labels,
};
use crate::certify::{certify, check_supported_c, SpecialSpec};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_MAX_ORDER};
use crate::perm::Permutation;
use crate::structure::{centralizer, conjugacy_classes, ConjugacyClass, Isomorphism};

pub fn expected_group(c: usize) -> Result<FiniteGroup> {
    expected_group_with_labels(c).map(|(g, _)| g)
}

/// The canonical group for `c`, with a permutation label per element.
pub fn expected_group_with_labels(c: usize) -> Result<(FiniteGroup, Vec<Permutation>)> {
    expected_group_bounded(c, DEFAULT_MAX_ORDER)
}

pub fn expected_group_bounded(
    c: usize,
    max_order: usize,
) -> Result<(FiniteGroup, Vec<Permutation>)> {
    check_supported_c(c, max_order)?;
    match c {
        6 => symmetric_with_labels(3),
        24 => symmetric_with_labels(4),
        120 => symmetric_with_labels(5),
        _ => {
            let k = c.trailing_zeros();
            Ok((elementary_abelian_2(k), elementary_abelian_2_labels(k)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarkingCase {
    Six,
    TwentyFour,
    OneTwenty,
}

impl MarkingCase {
    pub fn for_c(c: usize) -> Option<Self> {
        match c {
            6 => Some(MarkingCase::Six),
            24 => Some(MarkingCase::TwentyFour),
            120 => Some(MarkingCase::OneTwenty),
            _ => None,
        }
    }

    /// (class size, centralizer order) of the class the blocks are cut from.
    pub fn source_class(self) -> (usize, usize) {
        match self {
            MarkingCase::Six => (3, 2),
            MarkingCase::TwentyFour => (8, 3),
            MarkingCase::OneTwenty => (15, 8),
        }
    }

    pub fn block_count(self) -> usize {
        match self {
            MarkingCase::Six => 3,
            MarkingCase::TwentyFour => 4,
            MarkingCase::OneTwenty => 5,
        }
    }

    pub fn block_size(self) -> usize {
        match self {
            MarkingCase::Six => 1,
            MarkingCase::TwentyFour => 2,
            MarkingCase::OneTwenty => 3,
        }
    }
}

/// The set permuted by conjugation. Blocks are sorted and ordered by their
/// smallest element; block `i` is point `i` of the symmetric group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingSet {
    pub case: MarkingCase,
    pub blocks: Vec<Vec<usize>>,
}

fn require_certified(group: &FiniteGroup, spec: &SpecialSpec) -> Result<()> {
    let cert = certify(group, spec);
    match cert.first_failure {
        Some(p) => Err(Error::Precondition(p)),
        None => Ok(()),
    }
}

pub(crate) fn find_class(
    classes: &[ConjugacyClass],
    size: usize,
    centralizer_order: usize,
) -> Option<&ConjugacyClass> {
    classes
        .iter()
        .find(|c| c.size() == size && c.centralizer_order == centralizer_order)
}

pub fn build_marking_set(group: &FiniteGroup, spec: &SpecialSpec) -> Result<MarkingSet> {
    let case = MarkingCase::for_c(spec.c).ok_or_else(|| Error::UnsupportedC {
        c: spec.c as u64,
        reason: "marking sets exist only for 6, 24 and 120".into(),
    })?;
    require_certified(group, spec)?;
    marking_set_for(group, case, &conjugacy_classes(group))
}

/// Builds the marking set without re-certifying, checking every structural
/// expectation along the way.
pub(crate) fn marking_set_for(
    group: &FiniteGroup,
    case: MarkingCase,
    classes: &[ConjugacyClass],
) -> Result<MarkingSet> {
    let (size, cent) = case.source_class();
    let class = find_class(classes, size, cent).ok_or_else(|| {
        Error::PropertyViolation(format!(
            "no class of size {size} with centralizer order {cent}"
        ))
    })?;
    let mut blocks: Vec<Vec<usize>> = match case {
        MarkingCase::Six => class.members.iter().map(|&s| vec![s]).collect(),
        MarkingCase::TwentyFour => class
            .members
            .iter()
            .map(|&y| {
                let mut pair = vec![y, group.inv(y)];
                pair.sort_unstable();
                pair.dedup();
                pair
            })
            .collect(),
        MarkingCase::OneTwenty => class
            .members
            .iter()
            .map(|&z| {
                centralizer(group, z)
                    .members
                    .into_iter()
                    .filter(|&x| class.contains(x))
                    .collect()
            })
            .collect(),
    };
    blocks.sort_unstable();
    blocks.dedup();
    if blocks.len() != case.block_count() {
        return Err(Error::PropertyViolation(format!(
            "expected {} blocks, found {}",
            case.block_count(),
            blocks.len()
        )));
    }
    if blocks.iter().any(|b| b.len() != case.block_size()) {
        return Err(Error::PropertyViolation(format!(
            "blocks must have {} elements",
            case.block_size()
        )));
    }
    let mut covered: Vec<usize> = blocks.iter().flatten().copied().collect();
    covered.sort_unstable();
    if covered != class.members {
        return Err(Error::PropertyViolation(
            "blocks do not partition their class".into(),
        ));
    }
    Ok(MarkingSet { case, blocks })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationAction {
    /// `images[g]` sends block `b` to the block `g·b·g⁻¹`.
    pub images: Vec<Permutation>,
    pub kernel: Subgroup,
}

pub fn conjugation_action(group: &FiniteGroup, marking: &MarkingSet) -> Result<ConjugationAction> {
    let lookup: HashMap<&[usize], usize> = marking
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i))
        .collect();
    let mut images = Vec::with_capacity(group.order());
    let mut kernel = Vec::new();
    for g in 0..group.order() {
        let mut perm = Vec::with_capacity(marking.blocks.len());
        for block in &marking.blocks {
            let mut moved: Vec<usize> = block.iter().map(|&x| group.conjugate(g, x)).collect();
            moved.sort_unstable();
            perm.push(*lookup.get(moved.as_slice()).ok_or(Error::NotStable(g))?);
        }
        let perm = Permutation::new(perm).map_err(|_| Error::NotStable(g))?;
        if perm.is_identity() {
            kernel.push(g);
        }
        images.push(perm);
    }
    Ok(ConjugationAction {
        images,
        kernel: Subgroup {
            parent_order: group.order(),
            members: kernel,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalIsomorphism {
    pub c: usize,
    pub isomorphism: Isomorphism,
    pub marking_set: Option<MarkingSet>,
    /// For elementary abelian targets, the chosen basis (source elements
    /// sent to the canonical generators `1, 2, 4, …`).
    pub basis: Option<Vec<usize>>,
    /// Permutation label of each target element.
    pub target_labels: Vec<String>,
}

pub fn canonical_isomorphism(
    group: &FiniteGroup,
    spec: &SpecialSpec,
) -> Result<CanonicalIsomorphism> {
    require_certified(group, spec)?;
    let (target, labels) = expected_group_with_labels(spec.c)?;
    let mut marking_set = None;
    let mut basis = None;
    let map = match MarkingCase::for_c(spec.c) {
        None => {
            let (b, map) = exponent_two_basis(group)?;
            basis = Some(b);
            map
        }
        Some(case) => {
            let marking = marking_set_for(group, case, &conjugacy_classes(group))?;
            let action = conjugation_action(group, &marking)?;
            if !action.kernel.is_trivial() {
                return Err(Error::PropertyViolation(format!(
                    "conjugation action has a kernel of order {}",
                    action.kernel.order()
                )));
            }
            let index: HashMap<&Permutation, usize> =
                labels.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let map = action
                .images
                .iter()
                .map(|p| {
                    index.get(p).copied().ok_or_else(|| {
                        Error::PropertyViolation(format!(
                            "block permutation {p} is not in the target"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            marking_set = Some(marking);
            map
        }
    };
    let isomorphism = Isomorphism {
        source_order: group.order(),
        target_order: target.order(),
        map,
    };
    if !isomorphism.verify(group, &target) {
        return Err(Error::PropertyViolation(
            "induced map is not a bijective homomorphism".into(),
        ));
    }
    Ok(CanonicalIsomorphism {
        c: spec.c,
        isomorphism,
        marking_set,
        basis,
        target_labels: labels.iter().map(ToString::to_string).collect(),
    })
}

/// Greedy basis over the 2-element field: walk elements in index order and
/// keep each one outside the current span. Returns the basis and the
/// coordinate bitmask of every element.
fn exponent_two_basis(group: &FiniteGroup) -> Result<(Vec<usize>, Vec<usize>)> {
    if let Some(g) = (0..group.order()).find(|&g| group.mul(g, g) != 0) {
        return Err(Error::PropertyViolation(format!(
            "element {g} does not square to 1"
        )));
    }
    let mut coords = vec![usize::MAX; group.order()];
    coords[0] = 0;
    let mut span = vec![0usize];
    let mut basis = Vec::new();
    for g in 0..group.order() {
        if coords[g] != usize::MAX {
            continue;
        }
        let bit = 1usize << basis.len();
        basis.push(g);
        let added: Vec<usize> = span.iter().map(|&x| group.mul(x, g)).collect();
        for (&x, &y) in span.iter().zip(&added) {
            coords[y] = coords[x] | bit;
        }
        span.extend(added);
    }
    Ok((basis, coords))
}
