use serde::{Deserialize, Serialize};

use super::standard::standard_bounded;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A reproducible construction of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recipe {
    Standard {
        name: String,
        param: usize,
    },
    Direct(Box<Recipe>, Box<Recipe>),
    Semidirect {
        normal: Box<Recipe>,
        acting: Box<Recipe>,
        /// Automorphisms attached to generators of the acting group; they
        /// are extended to the whole acting group and must be consistent.
        action: Vec<GeneratorAction>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorAction {
    pub generator: usize,
    pub automorphism: Automorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Automorphism {
    /// `x ↦ x^k`; only an automorphism when the normal factor is abelian and
    /// `k` is prime to its exponent.
    Power(usize),
    /// Explicit image list.
    Images(Vec<usize>),
}

impl Automorphism {
    fn images(&self, group: &FiniteGroup) -> Result<Vec<usize>> {
        match self {
            Automorphism::Power(k) => Ok((0..group.order()).map(|x| group.pow(x, *k)).collect()),
            Automorphism::Images(images) => {
                if images.len() != group.order() || images.iter().any(|&y| y >= group.order()) {
                    return Err(Error::InvalidAction(
                        "image list does not match the normal factor".into(),
                    ));
                }
                Ok(images.clone())
            }
        }
    }
}

impl Recipe {
    pub fn standard(name: &str, param: usize) -> Self {
        Recipe::Standard {
            name: name.into(),
            param,
        }
    }

    pub fn build(&self, max_order: usize) -> Result<FiniteGroup> {
        match self {
            Recipe::Standard { name, param } => standard_bounded(name, *param, max_order),
            Recipe::Direct(a, b) => FiniteGroup::direct_product_bounded(
                &a.build(max_order)?,
                &b.build(max_order)?,
                max_order,
            ),
            Recipe::Semidirect {
                normal,
                acting,
                action,
            } => {
                let n = normal.build(max_order)?;
                let h = acting.build(max_order)?;
                let full = extend_action(&n, &h, action)?;
                FiniteGroup::semidirect_product_bounded(&n, &h, &full, max_order)
            }
        }
    }
}

/// Extends generator automorphisms to a map on all of `acting`, following
/// `act(x·g) = act(x) ∘ act(g)`.
fn extend_action(
    normal: &FiniteGroup,
    acting: &FiniteGroup,
    action: &[GeneratorAction],
) -> Result<Vec<Vec<usize>>> {
    let gens = action
        .iter()
        .map(|ga| {
            if ga.generator >= acting.order() {
                return Err(Error::InvalidAction(format!(
                    "generator {} is not an element of the acting group",
                    ga.generator
                )));
            }
            Ok((ga.generator, ga.automorphism.images(normal)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut act: Vec<Option<Vec<usize>>> = vec![None; acting.order()];
    act[0] = Some((0..normal.order()).collect());
    let mut queue = vec![0usize];
    let mut cursor = 0;
    while cursor < queue.len() {
        let x = queue[cursor];
        cursor += 1;
        for (g, aut) in &gens {
            let y = acting.mul(x, *g);
            let current = act[x].as_ref().unwrap();
            let composed: Vec<usize> = aut.iter().map(|&v| current[v]).collect();
            match &act[y] {
                None => {
                    act[y] = Some(composed);
                    queue.push(y);
                }
                Some(existing) if *existing != composed => {
                    return Err(Error::InvalidAction(format!(
                        "generator images are inconsistent at element {y}"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    act.into_iter()
        .map(|a| {
            a.ok_or_else(|| {
                Error::InvalidAction("listed generators do not generate the acting group".into())
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;
    use crate::structure::{center, conjugacy_classes};

    fn semidirect(n: Recipe, h: Recipe, action: Vec<(usize, Automorphism)>) -> Recipe {
        Recipe::Semidirect {
            normal: Box::new(n),
            acting: Box::new(h),
            action: action
                .into_iter()
                .map(|(generator, automorphism)| GeneratorAction {
                    generator,
                    automorphism,
                })
                .collect(),
        }
    }

    #[test]
    fn dihedral_eight_by_inversion() {
        let r = semidirect(
            Recipe::standard("cyclic", 4),
            Recipe::standard("cyclic", 2),
            vec![(1, Automorphism::Power(3))],
        );
        let g = r.build(DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(conjugacy_classes(&g).len(), 5);
    }

    #[test]
    fn frobenius_twenty_has_trivial_center() {
        let r = semidirect(
            Recipe::standard("cyclic", 5),
            Recipe::standard("cyclic", 4),
            vec![(1, Automorphism::Power(2))],
        );
        let g = r.build(DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(g.order(), 20);
        assert!(center(&g).is_trivial());
    }

    #[test]
    fn inconsistent_or_partial_actions_are_rejected() {
        // Z/3 cannot act on Z/5 through x -> x^2 (order 4).
        let r = semidirect(
            Recipe::standard("cyclic", 5),
            Recipe::standard("cyclic", 3),
            vec![(1, Automorphism::Power(2))],
        );
        assert!(matches!(
            r.build(DEFAULT_MAX_ORDER),
            Err(Error::InvalidAction(_))
        ));
        // Element 2 of Z/4 generates only a subgroup of order 2.
        let r = semidirect(
            Recipe::standard("cyclic", 3),
            Recipe::standard("cyclic", 4),
            vec![(2, Automorphism::Power(2))],
        );
        assert!(matches!(
            r.build(DEFAULT_MAX_ORDER),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn recipe_json_shape() {
        let r = Recipe::Direct(
            Box::new(Recipe::standard("cyclic", 2)),
            Box::new(Recipe::standard("symmetric", 3)),
        );
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"direct":[{"standard":{"name":"cyclic","param":2}},{"standard":{"name":"symmetric","param":3}}]}"#
        );
        assert_eq!(serde_json::from_str::<Recipe>(&text).unwrap(), r);
    }
}
