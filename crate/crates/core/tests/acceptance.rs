//! Acceptance suite. Every criterion runs in one sequential test so the wall
//! clock bounds are not skewed by other tests, and each prints one line.
//!
//! Run with `cargo test -p delta-core --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use common::Table;
use delta_core::catalog::standard::{alternating, cyclic, special_linear_2};
use delta_core::catalog::{build_catalog, verify_uniqueness_over};
use delta_core::certify::check_supported_c;
use delta_core::structure::{derived_subgroup, is_ambivalent};
use delta_core::{
    are_isomorphic, builtin_spec, canonical_isomorphism, certify, check_refinement,
    conjugacy_classes, expected_group, product_spec, proof_replay, ClassProfile, FiniteGroup,
    Verdict, DEFAULT_MAX_ORDER,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every supported c: powers of two up to the size bound, then 6, 24, 120.
fn supported() -> Vec<usize> {
    let mut cs: Vec<usize> = (0..)
        .map(|k| 1usize << k)
        .take_while(|&c| c <= DEFAULT_MAX_ORDER)
        .collect();
    cs.extend([6, 24, 120]);
    cs.retain(|&c| check_supported_c(c, DEFAULT_MAX_ORDER).is_ok());
    cs
}

fn class_data() -> Outcome {
    let expected: [(usize, Vec<(usize, usize)>); 3] = [
        (6, vec![(1, 6), (2, 3), (3, 2)]),
        (24, vec![(1, 24), (3, 8), (6, 4), (6, 4), (8, 3)]),
        (
            120,
            vec![
                (1, 120),
                (10, 12),
                (15, 8),
                (20, 6),
                (20, 6),
                (24, 5),
                (30, 4),
            ],
        ),
    ];
    for (c, pairs) in expected {
        let got = ClassProfile::of(&expected_group(c).unwrap()).size_centralizer_pairs();
        ensure(got == pairs, || format!("c={c}: got {got:?}"))?;
    }
    Ok("S3, S4, S5 (size, centralizer) multisets exact".into())
}

fn certification() -> Outcome {
    for c in [1, 2, 4, 8, 16, 6, 24, 120] {
        let cert = certify(&expected_group(c).unwrap(), &builtin_spec(c).unwrap());
        ensure(cert.passed, || {
            format!("c={c} failed {:?}", cert.failed_properties())
        })?;
        ensure(
            cert.verdicts().iter().all(|(_, v)| *v != Verdict::Fail),
            || format!("c={c}"),
        )?;
    }
    Ok("8 canonical groups pass (a)-(d)".into())
}

fn uniqueness_small() -> Outcome {
    for (c, types, passer) in [(6, 2, "S3"), (24, 15, "S4")] {
        let entries = build_catalog(c).unwrap();
        ensure(entries.len() == types, || {
            format!("order {c}: {} entries", entries.len())
        })?;
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                let iso = are_isomorphic(&entries[i].group, &entries[j].group).unwrap();
                ensure(iso.is_none(), || {
                    format!("{} ~ {}", entries[i].name, entries[j].name)
                })?;
            }
        }
        let report = verify_uniqueness_over(c, &builtin_spec(c).unwrap(), &entries)
            .map_err(|e| e.to_string())?;
        ensure(report.passers == [passer], || {
            format!("order {c} passers {:?}", report.passers)
        })?;
        ensure(report.passer_matches_expected, || {
            format!("order {c} passer not S{}", types)
        })?;
    }
    Ok(
        "order 6: 2 types, order 24: 15 pairwise non-isomorphic types; unique passers S3, S4"
            .into(),
    )
}

fn uniqueness_120() -> Outcome {
    let entries = build_catalog(120).unwrap();
    ensure(entries.len() >= 12, || format!("{} entries", entries.len()))?;
    for name in ["SL(2,5)", "A5 x C2", "C120"] {
        ensure(entries.iter().any(|e| e.name == name), || {
            format!("missing {name}")
        })?;
    }
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let iso = are_isomorphic(&entries[i].group, &entries[j].group).unwrap();
            ensure(iso.is_none(), || {
                format!("{} ~ {}", entries[i].name, entries[j].name)
            })?;
        }
    }
    let report = verify_uniqueness_over(120, &builtin_spec(120).unwrap(), &entries)
        .map_err(|e| e.to_string())?;
    ensure(report.passers == ["S5"], || {
        format!("passers {:?}", report.passers)
    })?;
    ensure(report.passer_matches_expected, || "passer is not S5".into())?;
    Ok(format!(
        "{} pairwise non-isomorphic types; unique passer S5",
        entries.len()
    ))
}

fn replay() -> Outcome {
    let s4 = proof_replay(&expected_group(24).unwrap(), &builtin_spec(24).unwrap())
        .map_err(|e| e.to_string())?;
    let s5 = proof_replay(&expected_group(120).unwrap(), &builtin_spec(120).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(s4.all_passed && s5.all_passed, || {
        "an assertion failed".into()
    })?;
    for name in [
        "centralizer_of_s_squared_has_order_8",
        "order_4_elements_lie_in_size_30_class",
        "fibres_of_f_have_three_elements",
        "index_2_complement_is_sizes_30_20_10",
    ] {
        ensure(s5.get(name).is_some_and(|a| a.passed), || {
            format!("{name} missing or failed")
        })?;
    }
    Ok(format!(
        "{} + {} assertions pass",
        s4.assertions.len(),
        s5.assertions.len()
    ))
}

fn canonical_robustness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for c in [6, 24, 120] {
        let g = expected_group(c).unwrap();
        let target = expected_group(c).unwrap();
        let spec = builtin_spec(c).unwrap();
        for round in 0..100 {
            let mut sigma: Vec<usize> = (0..c).collect();
            sigma.shuffle(&mut rng);
            let h = g.relabeled(&sigma).unwrap();
            let canon = canonical_isomorphism(&h, &spec)
                .map_err(|e| format!("c={c} round {round}: {e}"))?;
            ensure(canon.isomorphism.verify(&h, &target), || {
                format!("c={c} round {round}")
            })?;
        }
    }
    Ok("300 relabelings, every map re-verified on all n² pairs".into())
}

fn product_rule() -> Outcome {
    let cs = supported();
    let groups: Vec<(usize, FiniteGroup, delta_core::SpecialSpec)> = cs
        .iter()
        .map(|&c| (c, expected_group(c).unwrap(), builtin_spec(c).unwrap()))
        .collect();
    let mut pairs = 0;
    for (c1, g1, s1) in &groups {
        for (c2, g2, s2) in &groups {
            if check_supported_c(c1 * c2, DEFAULT_MAX_ORDER).is_err() {
                continue;
            }
            if !certify(g1, s1).passed || !certify(g2, s2).passed {
                continue;
            }
            let p = FiniteGroup::direct_product(g1, g2).map_err(|e| e.to_string())?;
            let spec = product_spec(s1, s2).map_err(|e| e.to_string())?;
            let cert = certify(&p, &spec);
            ensure(cert.passed, || {
                format!("{c1} x {c2} failed {:?}", cert.failed_properties())
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} supported pairs, every product passes"))
}

fn refinement() -> Outcome {
    for (c, inside) in [(24, vec![1, 3, 8]), (120, vec![1, 15, 20, 24])] {
        let g = expected_group(c).unwrap();
        let sub = derived_subgroup(&g);
        ensure(sub.order() * 2 == c, || {
            format!("c={c}: derived order {}", sub.order())
        })?;
        let check =
            check_refinement(&g, &builtin_spec(c).unwrap(), &sub).map_err(|e| e.to_string())?;
        ensure(check.verdict == Verdict::Pass, || {
            format!("c={c}: {check:?}")
        })?;
        ensure(check.inside == inside, || {
            format!("c={c}: inside {:?}", check.inside)
        })?;
    }
    Ok("S4 ⊃ A4 inside {1,3,8}; S5 ⊃ A5 inside {1,15,20,24}".into())
}

fn negatives() -> Outcome {
    let c4 = certify(&cyclic(4), &builtin_spec(4).unwrap());
    ensure(c4.failed_properties() == ['b'], || {
        format!("C4 fails {:?}", c4.failed_properties())
    })?;
    let w = c4.b_ambivalence.witness.ok_or("C4 has no witness")?;
    ensure(
        Some(cyclic(4).inv(w)) == c4.b_ambivalence.witness_inverse,
        || "bad C4 witness".into(),
    )?;

    let sl = certify(&special_linear_2(5).unwrap(), &builtin_spec(120).unwrap());
    let failed = sl.failed_properties();
    ensure(failed.contains(&'c') && failed.contains(&'d'), || {
        format!("SL(2,5) fails {failed:?}")
    })?;
    ensure(sl.c_class_sizes.computed.len() == 9, || {
        "SL(2,5) class witness".into()
    })?;
    ensure(
        sl.d_index_two.index2_count == 0 && sl.d_index_two.derived_order == 120,
        || "SL(2,5) index-2 witness".into(),
    )?;

    let a5c2 = FiniteGroup::direct_product(&alternating(5), &cyclic(2)).unwrap();
    let cert = certify(&a5c2, &builtin_spec(120).unwrap());
    ensure(cert.failed_properties().contains(&'c'), || {
        "A5 x C2 passes (c)".into()
    })?;
    ensure(
        cert.c_class_sizes.computed != cert.c_class_sizes.expected,
        || "no class witness".into(),
    )?;
    Ok(format!(
        "C4 fails b (witness {w}); SL(2,5) fails {failed:?}; A5 x C2 fails {:?}",
        cert.failed_properties()
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for order in [6, 24] {
        for entry in build_catalog(order).unwrap() {
            let t = Table::of(&entry.group);
            let fast: BTreeSet<BTreeSet<usize>> = conjugacy_classes(&entry.group)
                .into_iter()
                .map(|c| c.members.into_iter().collect())
                .collect();
            ensure(fast == t.classes(), || {
                format!("{}: classes differ", entry.name)
            })?;
            ensure(
                is_ambivalent(&entry.group).ambivalent == t.ambivalent(),
                || format!("{}: ambivalence differs", entry.name),
            )?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} catalog groups agree with the double-loop oracle"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("class data", Duration::from_secs(1), class_data),
        ("certification", Duration::from_secs(1), certification),
        (
            "uniqueness at 6 and 24",
            Duration::from_secs(30),
            uniqueness_small,
        ),
        (
            "uniqueness at 120",
            Duration::from_secs(300),
            uniqueness_120,
        ),
        ("proof replay", Duration::from_secs(1), replay),
        (
            "canonical isomorphism robustness",
            Duration::from_secs(60),
            canonical_robustness,
        ),
        ("product rule", Duration::from_secs(10), product_rule),
        ("refinement", Duration::from_secs(1), refinement),
        ("negative suite", Duration::from_secs(1), negatives),
        (
            "oracle equivalence",
            Duration::from_secs(10),
            oracle_equivalence,
        ),
    ];
    let mut failures = Vec::new();
    let mut err = std::io::stderr().lock();
    for (i, (name, bound, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed < bound => format!(
                "PASS {:>2} {name}: {detail} ({elapsed:.2?} < {bound:?})",
                i + 1
            ),
            Ok(detail) => format!(
                "FAIL {:>2} {name}: {detail} but took {elapsed:.2?}, bound {bound:?}",
                i + 1
            ),
            Err(why) => format!("FAIL {:>2} {name}: {why} ({elapsed:.2?})", i + 1),
        };
        writeln!(err, "{line}").unwrap();
        if line.starts_with("FAIL") {
            failures.push(line);
        }
    }
    assert!(
        failures.is_empty(),
        "{} criteria failed:\n{}",
        failures.len(),
        failures.join("\n")
    );
}
