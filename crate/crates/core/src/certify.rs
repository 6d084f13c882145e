//! Target data for the group of a superspecial representation, and the
//! four-property certificate checked against a concrete group.
//!
//! The target data fixes the order `c`, the list of conjugacy-class sizes,
//! and optionally a parity label per class. A group is certified when it has
//! order `c`, is ambivalent, has exactly the listed class sizes, and (for
//! `c > 1`) has a subgroup of index 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_MAX_ORDER};
use crate::structure::{
    class_map, conjugacy_classes, derived_subgroup, ConjugacyClass, TwoQuotient,
};

/// Checks that `c` is one of `1, 2, 4, 8, …, 6, 24, 120` and within `max_order`.
pub fn check_supported_c(c: usize, max_order: usize) -> Result<()> {
    let unsupported = |reason: &str| Error::UnsupportedC {
        c: c as u64,
        reason: reason.into(),
    };
    if c == 720 {
        return Err(unsupported(
            "720 = 6! is excluded; no group is attached to it",
        ));
    }
    if !(c.is_power_of_two() || matches!(c, 6 | 24 | 120)) {
        return Err(unsupported("expected 1, a power of two, 6, 24 or 120"));
    }
    if c > max_order {
        return Err(unsupported(&format!(
            "exceeds the group-size bound {max_order}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialSpec {
    pub c: usize,
    pub class_sizes: Vec<usize>,
    /// `(class size, parity)` pairs; parity 0 marks classes expected inside
    /// the index-2 subgroup, parity 1 those outside it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parities: Option<Vec<(usize, u8)>>,
}

impl SpecialSpec {
    /// Validates and normalises (sorts) the data.
    pub fn new(
        c: usize,
        class_sizes: Vec<usize>,
        parities: Option<Vec<(usize, u8)>>,
    ) -> Result<Self> {
        Self::new_bounded(c, class_sizes, parities, DEFAULT_MAX_ORDER)
    }

    pub fn new_bounded(
        c: usize,
        mut class_sizes: Vec<usize>,
        mut parities: Option<Vec<(usize, u8)>>,
        max_order: usize,
    ) -> Result<Self> {
        check_supported_c(c, max_order)?;
        class_sizes.sort_unstable();
        if class_sizes.iter().sum::<usize>() != c {
            return Err(Error::InvalidSpec(format!("class sizes do not sum to {c}")));
        }
        if !class_sizes.contains(&1) {
            return Err(Error::InvalidSpec("class sizes must contain 1".into()));
        }
        if let Some(&bad) = class_sizes
            .iter()
            .find(|&&s| s == 0 || !c.is_multiple_of(s))
        {
            return Err(Error::InvalidSpec(format!(
                "class size {bad} does not divide {c}"
            )));
        }
        if let Some(ps) = parities.as_mut() {
            ps.sort_unstable();
            if ps.iter().any(|&(_, p)| p > 1) {
                return Err(Error::InvalidSpec("parities must be 0 or 1".into()));
            }
            let mut sizes: Vec<usize> = ps.iter().map(|&(s, _)| s).collect();
            sizes.sort_unstable();
            if sizes != class_sizes {
                return Err(Error::InvalidSpec(
                    "parity sizes differ from the class sizes".into(),
                ));
            }
        }
        Ok(SpecialSpec {
            c,
            class_sizes,
            parities,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_bounded(text, DEFAULT_MAX_ORDER)
    }

    pub fn from_json_bounded(text: &str, max_order: usize) -> Result<Self> {
        let raw: SpecialSpec = serde_json::from_str(text)?;
        Self::new_bounded(raw.c, raw.class_sizes, raw.parities, max_order)
    }

    /// Sizes labelled with the given parity, sorted.
    pub fn sizes_with_parity(&self, parity: u8) -> Option<Vec<usize>> {
        self.parities.as_ref().map(|ps| {
            let mut v: Vec<usize> = ps.iter().filter(|p| p.1 == parity).map(|p| p.0).collect();
            v.sort_unstable();
            v
        })
    }
}

pub fn builtin_spec(c: usize) -> Result<SpecialSpec> {
    builtin_spec_bounded(c, DEFAULT_MAX_ORDER)
}

pub fn builtin_spec_bounded(c: usize, max_order: usize) -> Result<SpecialSpec> {
    check_supported_c(c, max_order)?;
    let (sizes, parities): (Vec<usize>, Option<Vec<(usize, u8)>>) = match c {
        6 => (vec![1, 2, 3], None),
        24 => (
            vec![1, 3, 6, 6, 8],
            Some(vec![(1, 0), (3, 0), (8, 0), (6, 1), (6, 1)]),
        ),
        120 => (
            vec![1, 10, 15, 20, 20, 24, 30],
            Some(vec![
                (1, 0),
                (15, 0),
                (20, 0),
                (24, 0),
                (10, 1),
                (20, 1),
                (30, 1),
            ]),
        ),
        _ => (vec![1; c], None),
    };
    SpecialSpec::new_bounded(c, sizes, parities, max_order)
}

/// Target data for a direct product: orders multiply, class sizes are all
/// pairwise products, parities add mod 2 when both sides carry them.
pub fn product_spec(a: &SpecialSpec, b: &SpecialSpec) -> Result<SpecialSpec> {
    product_spec_bounded(a, b, DEFAULT_MAX_ORDER)
}

pub fn product_spec_bounded(
    a: &SpecialSpec,
    b: &SpecialSpec,
    max_order: usize,
) -> Result<SpecialSpec> {
    let c = a.c.checked_mul(b.c).ok_or(Error::UnsupportedC {
        c: u64::MAX,
        reason: "product overflows".into(),
    })?;
    check_supported_c(c, max_order)?;
    let sizes = a
        .class_sizes
        .iter()
        .flat_map(|&x| b.class_sizes.iter().map(move |&y| x * y))
        .collect();
    let parities = match (&a.parities, &b.parities) {
        (Some(pa), Some(pb)) => Some(
            pa.iter()
                .flat_map(|&(x, p)| pb.iter().map(move |&(y, q)| (x * y, p ^ q)))
                .collect(),
        ),
        _ => None,
    };
    SpecialSpec::new_bounded(c, sizes, parities, max_order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCheck {
    pub verdict: Verdict,
    pub expected: usize,
    pub actual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbivalenceCheck {
    pub verdict: Verdict,
    /// Smallest element not conjugate to its inverse, with that inverse.
    pub witness: Option<usize>,
    pub witness_inverse: Option<usize>,
    pub witness_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSizeCheck {
    pub verdict: Verdict,
    pub expected: Vec<usize>,
    pub computed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexTwoCheck {
    pub verdict: Verdict,
    pub subgroup: Option<Vec<usize>>,
    pub index2_count: usize,
    pub derived_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementCheck {
    pub verdict: Verdict,
    pub subgroup: Option<Vec<usize>>,
    pub inside: Vec<usize>,
    pub outside: Vec<usize>,
    pub expected_inside: Vec<usize>,
    pub expected_outside: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub c: usize,
    pub group_order: usize,
    pub a_order: OrderCheck,
    pub b_ambivalence: AmbivalenceCheck,
    pub c_class_sizes: ClassSizeCheck,
    pub d_index_two: IndexTwoCheck,
    pub refinement: Option<RefinementCheck>,
    pub passed: bool,
    pub first_failure: Option<char>,
}

impl Certificate {
    pub fn verdicts(&self) -> [(char, Verdict); 4] {
        [
            ('a', self.a_order.verdict),
            ('b', self.b_ambivalence.verdict),
            ('c', self.c_class_sizes.verdict),
            ('d', self.d_index_two.verdict),
        ]
    }

    pub fn failed_properties(&self) -> Vec<char> {
        self.verdicts()
            .into_iter()
            .filter(|(_, v)| *v == Verdict::Fail)
            .map(|(p, _)| p)
            .collect()
    }
}

/// Evaluates all four properties; nothing short-circuits.
pub fn certify(group: &FiniteGroup, spec: &SpecialSpec) -> Certificate {
    let classes = conjugacy_classes(group);
    let class_of = class_map(group, &classes);

    let a_order = OrderCheck {
        verdict: Verdict::from_bool(group.order() == spec.c),
        expected: spec.c,
        actual: group.order(),
    };

    let witness = (0..group.order()).find(|&g| class_of[g] != class_of[group.inv(g)]);
    let b_ambivalence = AmbivalenceCheck {
        verdict: Verdict::from_bool(witness.is_none()),
        witness,
        witness_inverse: witness.map(|g| group.inv(g)),
        witness_order: witness.map(|g| group.element_order(g)),
    };

    let mut computed: Vec<usize> = classes.iter().map(ConjugacyClass::size).collect();
    computed.sort_unstable();
    let c_class_sizes = ClassSizeCheck {
        verdict: Verdict::from_bool(computed == spec.class_sizes),
        expected: spec.class_sizes.clone(),
        computed,
    };

    let quotient = TwoQuotient::new(group);
    let first = (quotient.dimension > 0).then(|| quotient.hyperplane(1));
    let d_index_two = IndexTwoCheck {
        verdict: if spec.c > 1 {
            Verdict::from_bool(first.is_some())
        } else {
            Verdict::NotApplicable
        },
        subgroup: first.as_ref().map(|s| s.members.clone()),
        index2_count: quotient.index2_count(),
        derived_order: derived_subgroup(group).order(),
    };

    let refinement = spec.parities.as_ref().map(|_| {
        let candidates: Vec<Subgroup> = (1..=quotient.index2_count() as u64)
            .map(|mask| quotient.hyperplane(mask))
            .collect();
        let checks: Vec<RefinementCheck> = candidates
            .iter()
            .map(|h| refinement_split(&classes, spec, h))
            .collect();
        checks
            .iter()
            .find(|r| r.verdict == Verdict::Pass)
            .or(checks.first())
            .cloned()
            .unwrap_or_else(|| RefinementCheck {
                verdict: Verdict::NotApplicable,
                subgroup: None,
                inside: Vec::new(),
                outside: Vec::new(),
                expected_inside: spec.sizes_with_parity(0).unwrap_or_default(),
                expected_outside: spec.sizes_with_parity(1).unwrap_or_default(),
            })
    });

    let verdicts = [
        ('a', a_order.verdict),
        ('b', b_ambivalence.verdict),
        ('c', c_class_sizes.verdict),
        ('d', d_index_two.verdict),
    ];
    let first_failure = verdicts
        .iter()
        .find(|(_, v)| *v == Verdict::Fail)
        .map(|(p, _)| *p);

    Certificate {
        c: spec.c,
        group_order: group.order(),
        a_order,
        b_ambivalence,
        c_class_sizes,
        d_index_two,
        refinement,
        passed: first_failure.is_none(),
        first_failure,
    }
}

fn refinement_split(
    classes: &[ConjugacyClass],
    spec: &SpecialSpec,
    sub: &Subgroup,
) -> RefinementCheck {
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for class in classes {
        if sub.contains(class.representative) {
            inside.push(class.size());
        } else {
            outside.push(class.size());
        }
    }
    inside.sort_unstable();
    outside.sort_unstable();
    let expected_inside = spec.sizes_with_parity(0).unwrap_or_default();
    let expected_outside = spec.sizes_with_parity(1).unwrap_or_default();
    RefinementCheck {
        verdict: Verdict::from_bool(inside == expected_inside && outside == expected_outside),
        subgroup: Some(sub.members.clone()),
        inside,
        outside,
        expected_inside,
        expected_outside,
    }
}

/// Checks that the classes inside `sub` carry parity 0 and those outside
/// carry parity 1.
pub fn check_refinement(
    group: &FiniteGroup,
    spec: &SpecialSpec,
    sub: &Subgroup,
) -> Result<RefinementCheck> {
    if spec.parities.is_none() {
        return Err(Error::MissingParities);
    }
    if sub.order() * 2 != group.order() || !group.is_subgroup(&sub.members) {
        return Err(Error::NotIndexTwo {
            order: sub.order(),
            parent: group.order(),
        });
    }
    Ok(refinement_split(&conjugacy_classes(group), spec, sub))
}
