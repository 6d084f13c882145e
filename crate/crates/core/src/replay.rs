//! Step-by-step re-verification, on a concrete group, of the structural
//! facts that force a certified group of order 6, 24 or 120 to be symmetric.
//!
//! Each assertion is evaluated in order and recorded with the elements it
//! used. Base points are always the smallest element index satisfying the
//! defining equations.

use serde::{Deserialize, Serialize};

use crate::canonical::{conjugation_action, find_class, marking_set_for, MarkingCase};
use crate::certify::{certify, SpecialSpec};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::structure::{
    centralizer, class_map, conjugacy_classes, derived_subgroup, index2_subgroups, ConjugacyClass,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub c: usize,
    pub assertions: Vec<Assertion>,
    /// Which of the properties (a)-(d) the argument for this order relies on.
    pub properties_used: Vec<char>,
    pub all_passed: bool,
}

impl ReplayReport {
    pub fn first_failure(&self) -> Option<&Assertion> {
        self.assertions.iter().find(|a| !a.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }
}

struct Ctx<'g> {
    group: &'g FiniteGroup,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    orders: Vec<usize>,
    log: Vec<Assertion>,
}

/// Unwraps a required witness or stops the replay after recording the gap.
macro_rules! require {
    ($ctx:expr, $name:expr, $value:expr, $detail:expr) => {
        match $value {
            Some(v) => v,
            None => {
                $ctx.record($name, false, vec![], $detail);
                return;
            }
        }
    };
}

impl<'g> Ctx<'g> {
    fn new(group: &'g FiniteGroup) -> Self {
        let classes = conjugacy_classes(group);
        let class_of = class_map(group, &classes);
        Ctx {
            group,
            orders: group.element_orders(),
            classes,
            class_of,
            log: Vec::new(),
        }
    }

    fn record(
        &mut self,
        name: &str,
        passed: bool,
        witnesses: Vec<usize>,
        detail: impl Into<String>,
    ) -> bool {
        self.log.push(Assertion {
            name: name.into(),
            passed,
            witnesses,
            detail: detail.into(),
        });
        passed
    }

    fn class(&self, size: usize, cent: usize) -> Option<&ConjugacyClass> {
        find_class(&self.classes, size, cent)
    }

    fn in_class(&self, g: usize, size: usize, cent: usize) -> bool {
        self.class(size, cent).is_some_and(|c| c.contains(g))
    }

    fn conjugate(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    fn smallest(&self, pred: impl Fn(usize) -> bool) -> Option<usize> {
        (0..self.group.order()).find(|&g| pred(g))
    }

    /// Marking set, conjugation action, and the kernel/bijectivity checks
    /// shared by every case.
    fn action_checks(&mut self, case: MarkingCase) {
        let marking = marking_set_for(self.group, case, &self.classes);
        let marking = require!(
            self,
            "marking_set_has_expected_blocks",
            marking.ok(),
            format!("could not build {} blocks", case.block_count())
        );
        let firsts = marking.blocks.iter().map(|b| b[0]).collect();
        self.record(
            "marking_set_has_expected_blocks",
            true,
            firsts,
            format!(
                "{} blocks of size {}",
                case.block_count(),
                case.block_size()
            ),
        );
        let action = require!(
            self,
            "kernel_is_trivial",
            conjugation_action(self.group, &marking).ok(),
            "block family not stable under conjugation"
        );
        let kernel = action.kernel.members.clone();
        self.record(
            "kernel_is_trivial",
            kernel == [0],
            kernel.clone(),
            format!("kernel has {} element(s)", kernel.len()),
        );
        let mut distinct = action.images.clone();
        distinct.sort();
        distinct.dedup();
        let n = self.group.order();
        self.record(
            "action_is_bijective",
            distinct.len() == n && (1..=case.block_count()).product::<usize>() == n,
            vec![],
            format!("{} distinct block permutations", distinct.len()),
        );
    }
}

/// Replays the structural argument for `spec.c ∈ {6, 24, 120}` on `group`.
///
/// Refuses to run unless `group` is certified against `spec`. Returns
/// [`Error::ReplayFailed`] naming the first failed assertion, with the full
/// report attached.
pub fn proof_replay(group: &FiniteGroup, spec: &SpecialSpec) -> Result<ReplayReport> {
    let case = MarkingCase::for_c(spec.c).ok_or_else(|| Error::UnsupportedC {
        c: spec.c as u64,
        reason: "replay covers 6, 24 and 120".into(),
    })?;
    let cert = certify(group, spec);
    if let Some(p) = cert.first_failure {
        return Err(Error::Precondition(p));
    }
    let mut ctx = Ctx::new(group);
    let properties_used = match case {
        MarkingCase::Six => {
            replay_six(&mut ctx);
            vec!['a', 'c']
        }
        MarkingCase::TwentyFour => {
            replay_twenty_four(&mut ctx);
            vec!['a', 'c']
        }
        MarkingCase::OneTwenty => {
            replay_one_twenty(&mut ctx);
            vec!['a', 'c', 'd']
        }
    };
    let report = ReplayReport {
        c: spec.c,
        all_passed: ctx.log.iter().all(|a| a.passed),
        assertions: ctx.log,
        properties_used,
    };
    match report.first_failure() {
        Some(a) => Err(Error::ReplayFailed {
            assertion: a.name.clone(),
            report: Box::new(report),
        }),
        None => Ok(report),
    }
}

fn replay_six(ctx: &mut Ctx) {
    let g = ctx.group;
    let class = require!(
        ctx,
        "size_3_class_is_the_involutions",
        ctx.class(3, 2).cloned(),
        "no class A_2^3"
    );
    let involutions: Vec<usize> = (0..g.order()).filter(|&x| ctx.orders[x] == 2).collect();
    ctx.record(
        "size_3_class_is_the_involutions",
        involutions == class.members,
        class.members.clone(),
        "the three elements of order 2 form one class",
    );
    let all = class
        .members
        .iter()
        .all(|&s| centralizer(g, s).members == [0, s]);
    ctx.record(
        "involution_centralizer_is_itself",
        all,
        class.members.clone(),
        "Z(s) = {1, s}",
    );
    ctx.action_checks(MarkingCase::Six);
}

fn replay_twenty_four(ctx: &mut Ctx) {
    let g = ctx.group;
    let u = require!(
        ctx,
        "u_has_order_3",
        ctx.smallest(|x| ctx.orders[x] == 3),
        "no element of order 3"
    );
    ctx.record(
        "u_has_order_3",
        ctx.in_class(u, 8, 3) && centralizer(g, u).order() == 3,
        vec![u],
        "u lies in A_3^8 and Z(u) is cyclic of order 3",
    );
    let u2 = g.mul(u, u);
    let s = require!(
        ctx,
        "s_conjugates_u_to_u_squared",
        ctx.smallest(|x| g.conjugate(x, u) == u2),
        "no s with s u s⁻¹ = u²"
    );
    ctx.record("s_conjugates_u_to_u_squared", true, vec![s], "s u s⁻¹ = u²");
    ctx.record("s_squared_is_trivial", g.mul(s, s) == 0, vec![s], "s² = 1");

    let us = g.mul(u, s);
    let u2s = g.mul(u2, s);
    ctx.record(
        "s_us_u2s_conjugate_involutions",
        ctx.conjugate(s, us)
            && ctx.conjugate(s, u2s)
            && [s, us, u2s].iter().all(|&x| ctx.orders[x] == 2),
        vec![s, us, u2s],
        "s, us, u²s are conjugate and of order 2",
    );

    let su = g.mul(s, u);
    let triple = [s, su, us];
    let pair = [u, g.inv(u)];
    let products_ok = triple.iter().all(|&a| {
        triple
            .iter()
            .all(|&b| a == b || pair.contains(&g.mul(a, b)))
    });
    ctx.record(
        "products_of_s_su_us_lie_in_u_pair",
        products_ok,
        triple.to_vec(),
        "distinct products of s, su, us lie in {u, u⁻¹}",
    );
    let mover = ctx.smallest(|x| !pair.contains(&g.conjugate(x, u)));
    ctx.record(
        "u_pair_not_conjugation_stable",
        mover.is_some() && ctx.classes[ctx.class_of[u]].size() == 8,
        mover.into_iter().collect(),
        "u has 8 conjugates, so {u, u⁻¹} is not stable",
    );

    let size3 = require!(
        ctx,
        "size_3_class_not_in_kernel",
        ctx.class(3, 8).cloned(),
        "no class A_8^3"
    );
    let marking = marking_set_for(g, MarkingCase::TwentyFour, &ctx.classes).ok();
    let moved = marking
        .and_then(|m| conjugation_action(g, &m).ok())
        .map(|a| size3.members.iter().all(|&x| !a.images[x].is_identity()));
    ctx.record(
        "size_3_class_not_in_kernel",
        moved == Some(true),
        size3.members.clone(),
        "no element of A_8^3 acts trivially on the pairs",
    );
    ctx.action_checks(MarkingCase::TwentyFour);
}

fn replay_one_twenty(ctx: &mut Ctx) {
    let g = ctx.group;
    let u = require!(
        ctx,
        "u_has_order_5",
        ctx.smallest(|x| ctx.orders[x] == 5),
        "no element of order 5"
    );
    ctx.record(
        "u_has_order_5",
        ctx.in_class(u, 24, 5),
        vec![u],
        "u lies in A_5^24",
    );

    let u2 = g.mul(u, u);
    let s = require!(
        ctx,
        "s_conjugates_u_to_u_squared",
        ctx.smallest(|x| g.conjugate(x, u) == u2),
        "no s with s u s⁻¹ = u²"
    );
    ctx.record("s_conjugates_u_to_u_squared", true, vec![s], "s u s⁻¹ = u²");
    let s2 = g.mul(s, s);
    let s_inv = g.inv(s);
    ctx.record(
        "s_squared_inverts_u",
        g.conjugate(s2, u) == g.inv(u) && s2 != 0,
        vec![s2],
        "s² u s⁻² = u⁻¹ and s² ≠ 1",
    );
    ctx.record(
        "s_has_order_4",
        ctx.orders[s] == 4,
        vec![s],
        "s⁴ = 1, s² ≠ 1",
    );

    let outside: Vec<usize> = (0..g.order())
        .filter(|&x| ctx.orders[x] == 4 && !ctx.in_class(x, 30, 4))
        .collect();
    ctx.record(
        "order_4_elements_lie_in_size_30_class",
        outside.is_empty() && ctx.in_class(s, 30, 4) && ctx.in_class(s_inv, 30, 4),
        outside,
        "every element of order 4 lies in A_4^30",
    );

    let w = require!(
        ctx,
        "w_inverts_s",
        ctx.smallest(|x| g.conjugate(x, s) == s_inv),
        "no w with w s w⁻¹ = s⁻¹"
    );
    ctx.record("w_inverts_s", true, vec![w], "w s w⁻¹ = s⁻¹");
    ctx.record("w_squared_is_trivial", g.mul(w, w) == 0, vec![w], "w² = 1");
    ctx.record(
        "w_centralizes_s_squared",
        g.commutes(w, s2),
        vec![w, s2],
        "w ∈ Z(s²)",
    );

    let z_s2 = centralizer(g, s2);
    ctx.record(
        "centralizer_of_s_squared_has_order_8",
        z_s2.order() == 8,
        vec![s2],
        format!("|Z(s²)| = {}", z_s2.order()),
    );
    ctx.record(
        "s_squared_in_size_15_class",
        ctx.in_class(s2, 15, 8),
        vec![s2],
        "s² ∈ A_8^15",
    );

    let sw = g.mul(s, w);
    let mut words: Vec<usize> = [0, w]
        .iter()
        .flat_map(|&a| (0..4).map(move |k| (a, k)))
        .map(|(a, k)| g.mul(a, g.pow(s, k)))
        .collect();
    words.sort_unstable();
    words.dedup();
    let generated = g.generate(&[w, sw]);
    ctx.record(
        "centralizer_of_s_squared_is_dihedral_b2",
        words == z_s2.members
            && generated == z_s2
            && ctx.orders[w] == 2
            && ctx.orders[sw] == 2
            && ctx.orders[g.mul(w, sw)] == 4,
        vec![w, sw],
        "Z(s²) = {w^j s^k} is generated by the involutions w, sw with w·sw of order 4",
    );

    let ws = g.mul(w, s);
    let listed = [s2, w, ws, g.mul(w, s2), g.mul(w, s_inv)];
    ctx.record(
        "listed_centralizer_elements_are_involutions",
        listed.iter().all(|&x| ctx.orders[x] == 2),
        listed.to_vec(),
        "s², w, ws, ws², ws⁻¹ have order 2",
    );

    let index2 = index2_subgroups(g);
    let split = (index2.len() == 1).then(|| {
        let sub = &index2[0];
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for c in &ctx.classes {
            let entry = (c.size(), c.centralizer_order);
            if sub.contains(c.representative) {
                inside.push(entry);
            } else {
                outside.push(entry);
            }
        }
        inside.sort_unstable();
        outside.sort_unstable();
        (inside, outside)
    });
    ctx.record(
        "index_2_complement_is_sizes_30_20_10",
        split
            == Some((
                vec![(1, 120), (15, 8), (20, 6), (24, 5)],
                vec![(10, 12), (20, 6), (30, 4)],
            )),
        index2
            .first()
            .map(|h| h.members.clone())
            .unwrap_or_default(),
        "Δ − Δ′ = A_4^30 ∪ A_6^20 ∪ A_12^10",
    );

    let derived = derived_subgroup(g);
    let size30 = ctx
        .class(30, 4)
        .map(|c| c.members.clone())
        .unwrap_or_default();
    ctx.record(
        "size_30_class_contains_no_commutators",
        !size30.is_empty() && size30.iter().all(|&x| !derived.contains(x)),
        vec![],
        format!("derived subgroup has order {}", derived.order()),
    );

    ctx.record(
        "w_and_ws_not_conjugate",
        !ctx.conjugate(w, ws),
        vec![w, ws],
        "w and ws lie in different classes",
    );
    ctx.record(
        "s_conjugates_w_to_s2w_and_ws_to_ws_inverse",
        g.conjugate(s, w) == g.mul(s2, w) && g.conjugate(s, ws) == g.mul(w, s_inv),
        vec![s],
        "s w s⁻¹ = s²w and s (ws) s⁻¹ = ws⁻¹",
    );

    let (cw, cws) = (centralizer(g, w).order(), centralizer(g, ws).order());
    let split_ok = matches!((cw, cws), (8, 12) | (12, 8));
    let swapped = cw == 12;
    ctx.record(
        "w_ws_centralizers_are_8_and_12",
        split_ok,
        vec![w, ws],
        format!(
            "|Z(w)| = {cw}, |Z(ws)| = {cws}{}",
            if swapped { "; w replaced by ws" } else { "" }
        ),
    );
    // Take w to be the one in A_8^15; ws inverts s as well.
    let w = if swapped { ws } else { w };

    let ws2 = g.mul(w, s2);
    let triple = [s2, w, ws2];
    let closed = triple.iter().all(|&a| {
        triple.iter().all(|&b| {
            g.commutes(a, b)
                && (a == b || triple.contains(&g.mul(a, b)) && g.mul(a, b) != a && g.mul(a, b) != b)
        })
    });
    ctx.record(
        "commuting_triple_in_size_15_class",
        closed && triple.iter().all(|&x| ctx.in_class(x, 15, 8)),
        triple.to_vec(),
        "s², w, ws² ∈ A_8^15 commute and the product of any two is the third",
    );

    let size15 = require!(
        ctx,
        "triple_is_centralizer_meet_class",
        ctx.class(15, 8).cloned(),
        "no class A_8^15"
    );
    let mut expected_block = triple.to_vec();
    expected_block.sort_unstable();
    let meet: Vec<usize> = z_s2
        .members
        .iter()
        .copied()
        .filter(|&x| size15.contains(x))
        .collect();
    ctx.record(
        "triple_is_centralizer_meet_class",
        meet == expected_block,
        meet.clone(),
        "Z(s²) ∩ A_8^15 = {s², w, ws²}",
    );

    let fibre_of = |z: usize| -> Vec<usize> {
        centralizer(g, z)
            .members
            .into_iter()
            .filter(|&x| size15.contains(x))
            .collect()
    };
    let images: Vec<Vec<usize>> = size15.members.iter().map(|&z| fibre_of(z)).collect();
    let fibres_ok = size15
        .members
        .iter()
        .zip(&images)
        .all(|(_, h)| images.iter().filter(|other| *other == h).count() == 3);
    let mut distinct = images.clone();
    distinct.sort();
    distinct.dedup();
    ctx.record(
        "fibres_of_f_have_three_elements",
        fibres_ok && distinct.len() == 5 && fibre_of(w) == expected_block,
        expected_block.clone(),
        format!(
            "f: A_8^15 → S has {} values, each hit 3 times",
            distinct.len()
        ),
    );
    let union: usize = distinct.iter().map(Vec::len).sum();
    ctx.record(
        "blocks_are_disjoint_and_cover_class",
        union == 15
            && distinct
                .iter()
                .all(|h| h.iter().all(|&x| fibre_of(x) == *h)),
        vec![],
        "each h ∈ H has H = Z(h) ∩ A_8^15",
    );

    ctx.action_checks(MarkingCase::OneTwenty);
}
