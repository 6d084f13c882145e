//! Libraries of concrete groups of a fixed order, and the extensional
//! uniqueness check over them.

mod recipe;
pub mod standard;

pub use recipe::{Automorphism, GeneratorAction, Recipe};

use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::expected_group;
use crate::certify::{certify, SpecialSpec};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_MAX_ORDER};
use crate::structure::{are_isomorphic, ClassProfile};

const RECIPES_6: &str = include_str!("../../data/catalog_6.json");
const RECIPES_24: &str = include_str!("../../data/catalog_24.json");
const RECIPES_120: &str = include_str!("../../data/catalog_120.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedRecipe {
    pub name: String,
    pub recipe: Recipe,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub recipe: Recipe,
    pub group: FiniteGroup,
}

/// The committed recipe list for `order`, if there is one.
pub fn builtin_recipes(order: usize) -> Option<Vec<NamedRecipe>> {
    let text = match order {
        6 => RECIPES_6,
        24 => RECIPES_24,
        120 => RECIPES_120,
        _ => return None,
    };
    Some(serde_json::from_str(text).expect("committed recipe file parses"))
}

pub fn build_catalog(order: usize) -> Result<Vec<CatalogEntry>> {
    let recipes = builtin_recipes(order).ok_or_else(|| Error::UnsupportedParams {
        name: "catalog".into(),
        reason: format!("no recipe list for order {order}"),
    })?;
    build_catalog_from(order, &recipes, DEFAULT_MAX_ORDER)
}

/// Builds every recipe, sorts by name, and keeps the first representative
/// of each isomorphism type.
pub fn build_catalog_from(
    order: usize,
    recipes: &[NamedRecipe],
    max_order: usize,
) -> Result<Vec<CatalogEntry>> {
    let mut sorted: Vec<&NamedRecipe> = recipes.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    if let Some(w) = sorted.windows(2).find(|w| w[0].name == w[1].name) {
        return Err(Error::UnsupportedParams {
            name: "catalog".into(),
            reason: format!("duplicate recipe name `{}`", w[0].name),
        });
    }
    let built = sorted
        .par_iter()
        .map(|r| {
            let group = r.recipe.build(max_order)?;
            if group.order() != order {
                return Err(Error::UnsupportedParams {
                    name: r.name.clone(),
                    reason: format!("recipe builds order {}, expected {order}", group.order()),
                });
            }
            let profile = ClassProfile::of(&group);
            Ok((r, group, profile))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut kept: Vec<(CatalogEntry, ClassProfile)> = Vec::new();
    for (r, group, profile) in built {
        let mut duplicate = false;
        for (entry, kept_profile) in &kept {
            if *kept_profile == profile && are_isomorphic(&entry.group, &group)?.is_some() {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            kept.push((
                CatalogEntry {
                    name: r.name.clone(),
                    recipe: r.recipe.clone(),
                    group,
                },
                profile,
            ));
        }
    }
    Ok(kept.into_iter().map(|(e, _)| e).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryVerdict {
    pub name: String,
    pub passed: bool,
    /// First failing property in the order a, b, c, d.
    pub first_failure: Option<char>,
    pub failed: Vec<char>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub order: usize,
    pub entries: Vec<EntryVerdict>,
    pub passers: Vec<String>,
    pub passer_matches_expected: bool,
}

/// Certifies every entry of the built-in catalog against `spec` and checks
/// that exactly one passes, and that it is the expected group.
pub fn verify_uniqueness(order: usize, spec: &SpecialSpec) -> Result<UniquenessReport> {
    let catalog = build_catalog(order)?;
    verify_uniqueness_over(order, spec, &catalog)
}

pub fn verify_uniqueness_over(
    order: usize,
    spec: &SpecialSpec,
    catalog: &[CatalogEntry],
) -> Result<UniquenessReport> {
    if order != spec.c {
        return Err(Error::InvalidSpec(format!(
            "catalog order {order} differs from c = {}",
            spec.c
        )));
    }
    let entries: Vec<EntryVerdict> = catalog
        .par_iter()
        .map(|entry| {
            let cert = certify(&entry.group, spec);
            EntryVerdict {
                name: entry.name.clone(),
                passed: cert.passed,
                first_failure: cert.first_failure,
                failed: cert.failed_properties(),
            }
        })
        .collect();
    let passers: Vec<String> = entries
        .iter()
        .filter(|e| e.passed)
        .map(|e| e.name.clone())
        .collect();
    if passers.len() != 1 {
        return Err(Error::UniquenessViolated(format!(
            "{} catalog entries pass: {passers:?}",
            passers.len()
        )));
    }
    let passer = catalog.iter().find(|e| e.name == passers[0]).unwrap();
    let expected = expected_group(spec.c)?;
    if are_isomorphic(&passer.group, &expected)?.is_none() {
        return Err(Error::UniquenessViolated(format!(
            "passer `{}` is not isomorphic to the expected group",
            passer.name
        )));
    }
    Ok(UniquenessReport {
        order,
        entries,
        passers,
        passer_matches_expected: true,
    })
}

/// One persisted catalog line: the recipe and a hash of the table it builds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredEntry {
    pub name: String,
    pub order: usize,
    pub recipe: Recipe,
    pub table_hash: String,
}

pub fn write_jsonl<W: Write>(entries: &[CatalogEntry], mut out: W) -> Result<()> {
    for e in entries {
        let stored = StoredEntry {
            name: e.name.clone(),
            order: e.group.order(),
            recipe: e.recipe.clone(),
            table_hash: e.group.table_hash(),
        };
        serde_json::to_writer(&mut out, &stored)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<StoredEntry>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

/// Regenerates each table from its recipe and checks the stored hash.
pub fn rebuild(stored: &[StoredEntry], max_order: usize) -> Result<Vec<CatalogEntry>> {
    stored
        .iter()
        .map(|s| {
            let group = s.recipe.build(max_order)?;
            let rebuilt = group.table_hash();
            if rebuilt != s.table_hash || group.order() != s.order {
                return Err(Error::HashMismatch {
                    name: s.name.clone(),
                    stored: s.table_hash.clone(),
                    rebuilt,
                });
            }
            Ok(CatalogEntry {
                name: s.name.clone(),
                recipe: s.recipe.clone(),
                group,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::builtin_spec;

    #[test]
    fn order_six_catalog() {
        let cat = build_catalog(6).unwrap();
        let names: Vec<&str> = cat.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, vec!["C6", "S3"]);
        let report = verify_uniqueness(6, &builtin_spec(6).unwrap()).unwrap();
        assert_eq!(report.passers, vec!["S3"]);
        let c6 = report.entries.iter().find(|e| e.name == "C6").unwrap();
        assert_eq!(c6.failed, vec!['b', 'c']);
        assert_eq!(c6.first_failure, Some('b'));
    }

    #[test]
    fn jsonl_round_trip_and_hash_check() {
        let cat = build_catalog(6).unwrap();
        let mut buf = Vec::new();
        write_jsonl(&cat, &mut buf).unwrap();
        let stored = read_jsonl(buf.as_slice()).unwrap();
        assert_eq!(stored.len(), 2);
        let rebuilt = rebuild(&stored, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(rebuilt[1].group, cat[1].group);

        let mut tampered = stored.clone();
        tampered[0].table_hash = "00".into();
        assert!(matches!(
            rebuild(&tampered, DEFAULT_MAX_ORDER),
            Err(Error::HashMismatch { .. })
        ));
    }

    #[test]
    fn duplicate_names_and_wrong_orders_are_rejected() {
        let r = NamedRecipe {
            name: "C6".into(),
            recipe: Recipe::standard("cyclic", 6),
        };
        assert!(build_catalog_from(6, &[r.clone(), r.clone()], DEFAULT_MAX_ORDER).is_err());
        assert!(build_catalog_from(8, &[r], DEFAULT_MAX_ORDER).is_err());
        assert!(build_catalog(7).is_err());
    }
}
