//! Named families of small groups with fixed element numberings.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Validation, DEFAULT_MAX_ORDER};
use crate::perm::Permutation;

fn from_rule(order: usize, rule: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            table.push(rule(a, b) as u32);
        }
    }
    FiniteGroup::from_flat(order, table, Validation::SkipAssociativity)
        .expect("closed-form table is a group")
}

/// Element `i` is the `i`-th power of the generator 1.
///
/// Panics if `n == 0`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0, "cyclic group needs n > 0");
    from_rule(n, |a, b| (a + b) % n)
}

/// Dihedral group of the given (even) order `2m`. Indices `0..m` are the
/// rotations `r^i`, indices `m..2m` are the reflections `s·r^i`.
pub fn dihedral(order: usize) -> FiniteGroup {
    assert!(
        order >= 2 && order.is_multiple_of(2),
        "dihedral order must be even"
    );
    let m = order / 2;
    from_rule(order, |a, b| {
        let (ra, sa) = (a % m, a >= m);
        let (rb, sb) = (b % m, b >= m);
        let exp = if sb { (rb + m - ra) % m } else { (ra + rb) % m };
        exp + if sa != sb { m } else { 0 }
    })
}

/// Dicyclic group of order `4m`: `⟨a, x | a^{2m}, x² = a^m, x a x⁻¹ = a⁻¹⟩`.
/// Element `a^i x^j` has index `i + 2m·j`. Order 8 is the quaternion group.
pub fn dicyclic(order: usize) -> FiniteGroup {
    assert!(
        order >= 4 && order.is_multiple_of(4),
        "dicyclic order must be a multiple of 4"
    );
    let two_m = order / 2;
    let m = two_m / 2;
    from_rule(order, |p, q| {
        let (i, e) = (p % two_m, p / two_m);
        let (j, f) = (q % two_m, q / two_m);
        match (e, f) {
            (0, _) => (i + j) % two_m + f * two_m,
            (_, 0) => (i + two_m - j) % two_m + two_m,
            _ => (i + two_m - j + m) % two_m,
        }
    })
}

/// Elementary abelian group of order `2^k`; element indices are bit vectors
/// and the product is XOR.
pub fn elementary_abelian_2(k: u32) -> FiniteGroup {
    from_rule(1usize << k, |a, b| a ^ b)
}

/// Labels for [`elementary_abelian_2`]: bit `i` acts as the transposition
/// `(2i 2i+1)`.
pub fn elementary_abelian_2_labels(k: u32) -> Vec<Permutation> {
    let degree = 2 * k as usize;
    (0..1usize << k)
        .map(|mask| {
            let cycles: Vec<[usize; 2]> = (0..k as usize)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| [2 * i, 2 * i + 1])
                .collect();
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            Permutation::from_cycles(degree, &refs).expect("disjoint transpositions")
        })
        .collect()
}

fn symmetric_generators(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return Vec::new();
    }
    let cycle: Vec<usize> = (0..n).collect();
    vec![
        Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
        Permutation::from_cycles(n, &[&cycle]).unwrap(),
    ]
}

/// Symmetric group on `n` points, generated by `(0 1)` and `(0 1 … n-1)`,
/// numbered by breadth-first closure.
pub fn symmetric_with_labels(n: usize) -> Result<(FiniteGroup, Vec<Permutation>)> {
    FiniteGroup::from_generators(&symmetric_generators(n))
}

pub fn symmetric(n: usize) -> FiniteGroup {
    symmetric_with_labels(n)
        .expect("symmetric group within bound")
        .0
}

/// Alternating group on `n` points, generated by `(0 1 2)` and an
/// `n`- or `(n-1)`-cycle of even sign.
pub fn alternating_with_labels(n: usize) -> Result<(FiniteGroup, Vec<Permutation>)> {
    let gens = if n < 3 {
        Vec::new()
    } else {
        let long: Vec<usize> = if n % 2 == 1 {
            (0..n).collect()
        } else {
            (1..n).collect()
        };
        vec![
            Permutation::from_cycles(n, &[&[0, 1, 2]])?,
            Permutation::from_cycles(n, &[&long])?,
        ]
    };
    FiniteGroup::from_generators(&gens)
}

pub fn alternating(n: usize) -> FiniteGroup {
    alternating_with_labels(n)
        .expect("alternating group within bound")
        .0
}

/// `SL(2, p)` for `p ∈ {3, 5}`: 2×2 matrices over the `p`-element field with
/// determinant 1. The identity comes first, then the rest lexicographically
/// in `(a, b, c, d)`.
pub fn special_linear_2(p: usize) -> Result<FiniteGroup> {
    if p != 3 && p != 5 {
        return Err(Error::UnsupportedParams {
            name: "special-linear-2".into(),
            reason: format!("p = {p}; only 3 and 5 are provided"),
        });
    }
    let mut mats = vec![[1, 0, 0, 1]];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = [a, b, c, d];
                    if (a * d + p * p - b * c) % p == 1 && m != [1, 0, 0, 1] {
                        mats.push(m);
                    }
                }
            }
        }
    }
    let index = |m: [usize; 4]| mats.iter().position(|&x| x == m).unwrap();
    let n = mats.len();
    let mut table = Vec::with_capacity(n * n);
    for x in &mats {
        for y in &mats {
            let prod = [
                (x[0] * y[0] + x[1] * y[2]) % p,
                (x[0] * y[1] + x[1] * y[3]) % p,
                (x[2] * y[0] + x[3] * y[2]) % p,
                (x[2] * y[1] + x[3] * y[3]) % p,
            ];
            table.push(index(prod) as u32);
        }
    }
    FiniteGroup::from_flat(n, table, Validation::SkipAssociativity)
}

/// Looks up a named family. `param` is the group order for `cyclic`,
/// `dihedral` and `dicyclic`; the number of points for `symmetric` and
/// `alternating`; the rank `k` for `elementary-abelian-2`; the prime for
/// `special-linear-2`.
pub fn standard(name: &str, param: usize) -> Result<FiniteGroup> {
    standard_bounded(name, param, DEFAULT_MAX_ORDER)
}

pub fn standard_bounded(name: &str, param: usize, max_order: usize) -> Result<FiniteGroup> {
    let unsupported = |reason: String| Error::UnsupportedParams {
        name: name.to_string(),
        reason,
    };
    let too_big = || Error::SizeLimitExceeded { limit: max_order };
    let factorial = |n: usize| (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k));
    match name {
        "cyclic" => {
            if param == 0 {
                return Err(unsupported("order must be positive".into()));
            }
            if param > max_order {
                return Err(too_big());
            }
            Ok(cyclic(param))
        }
        "dihedral" => {
            if param < 2 || !param.is_multiple_of(2) {
                return Err(unsupported(format!(
                    "order {param} is not even and positive"
                )));
            }
            if param > max_order {
                return Err(too_big());
            }
            Ok(dihedral(param))
        }
        "dicyclic" => {
            if param < 4 || !param.is_multiple_of(4) {
                return Err(unsupported(format!(
                    "order {param} is not a positive multiple of 4"
                )));
            }
            if param > max_order {
                return Err(too_big());
            }
            Ok(dicyclic(param))
        }
        "symmetric" | "alternating" => {
            let full = factorial(param).ok_or_else(too_big)?;
            let order = if name == "alternating" && param >= 2 {
                full / 2
            } else {
                full
            };
            if order > max_order {
                return Err(too_big());
            }
            Ok(if name == "symmetric" {
                symmetric(param)
            } else {
                alternating(param)
            })
        }
        "elementary-abelian-2" => {
            if param >= usize::BITS as usize || 1usize << param > max_order {
                return Err(too_big());
            }
            Ok(elementary_abelian_2(param as u32))
        }
        "special-linear-2" => special_linear_2(param),
        _ => Err(unsupported("unknown family".into())),
    }
}
