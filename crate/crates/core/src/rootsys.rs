//! The projected root system `Φ̄ = W̄(B̄)`: bounded enumeration, an exact
//! membership test, canonical reflection labels, and the arm-stripping
//! words that carry roots in `α_1 + Λ` back to `α_1`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::diagram::{Vertex, WeylType};
use crate::error::{Error, Result};
use crate::group::Reflection;
use crate::space::{basis_index, proj_index, ExtendedSpace, IntVector, ProjVector};

/// A finite piece of `Φ̄`: all roots reachable from `B̄` through simple
/// reflections without leaving the height bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSetSlice {
    pub height_bound: i64,
    pub complete: bool,
    pub roots: Vec<ProjVector>,
}

impl RootSetSlice {
    pub fn positive(&self) -> impl Iterator<Item = &ProjVector> {
        self.roots.iter().filter(|r| r.is_positive())
    }
}

fn require_not_tubular(space: &ExtendedSpace) -> Result<()> {
    if space.weyl_type() == WeylType::Tubular {
        Err(Error::UnsupportedTubular)
    } else {
        Ok(())
    }
}

/// `s_j(v)` for the `j`-th simple root of `B̄`.
fn simple_reflect(space: &ExtendedSpace, j: usize, v: &[i64]) -> Result<Vec<i64>> {
    let g = space.proj_gram();
    let c = g
        .row(j)
        .iter()
        .zip(v)
        .try_fold(0i64, |acc, (&a, &b)| arith::add(acc, arith::mul(a, b)?))?;
    let mut out = v.to_vec();
    out[j] = arith::sub(out[j], c)?;
    Ok(out)
}

pub fn enumerate_projected(space: &ExtendedSpace, height_bound: i64) -> Result<RootSetSlice> {
    require_not_tubular(space)?;
    if height_bound < 1 {
        return Err(Error::Precondition(
            "height bound must be at least 1".into(),
        ));
    }
    let m = space.proj_dim();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for j in 0..m {
        let e = space.proj_basis_vector(j).into_coords();
        seen.insert(e.clone());
        queue.push_back(e);
    }
    let mut complete = true;
    while let Some(v) = queue.pop_front() {
        for j in 0..m {
            let w = simple_reflect(space, j, &v)?;
            if seen.contains(&w) {
                continue;
            }
            if w.iter().map(|x| x.abs()).sum::<i64>() > height_bound {
                complete = false;
                continue;
            }
            seen.insert(w.clone());
            queue.push_back(w);
        }
    }
    Ok(RootSetSlice {
        height_bound,
        complete,
        roots: seen.into_iter().map(ProjVector::new).collect(),
    })
}

/// Reduces a candidate root to a simple root by height-decreasing simple
/// reflections. Returns the projected indices used (in application order)
/// and the simple root reached, or `None` when `v` is not in `Φ̄`.
///
/// This decides membership exactly: a norm-2 positive vector that is not
/// simple pairs positively with some simple root, and reflecting in it lowers
/// the height while staying in `Φ̄⁺` exactly when `v` was a root.
pub fn descend_to_simple(
    space: &ExtendedSpace,
    v: &ProjVector,
) -> Result<Option<(Vec<usize>, usize)>> {
    arith::check_len(v.coords(), space.proj_dim())?;
    if space.proj_bilinear(v, v)? != 2 {
        return Ok(None);
    }
    let mut cur = if v.is_positive() {
        v.coords().to_vec()
    } else if v.is_negative() {
        v.negate()?.into_coords()
    } else {
        return Ok(None);
    };
    let g = space.proj_gram();
    let mut word = Vec::new();
    loop {
        if cur.iter().sum::<i64>() == 1 {
            let j = cur.iter().position(|&x| x == 1).expect("unit vector");
            return Ok(Some((word, j)));
        }
        let mut next = None;
        for j in 0..cur.len() {
            let c = g
                .row(j)
                .iter()
                .zip(&cur)
                .try_fold(0i64, |acc, (&a, &b)| arith::add(acc, arith::mul(a, b)?))?;
            if c > 0 {
                next = Some((j, c));
                break;
            }
        }
        let Some((j, c)) = next else {
            return Ok(None);
        };
        cur[j] = arith::sub(cur[j], c)?;
        word.push(j);
        if cur.iter().any(|&x| x < 0) || cur.iter().all(|&x| x == 0) {
            return Ok(None);
        }
    }
}

pub fn is_projected_root(space: &ExtendedSpace, v: &ProjVector) -> Result<bool> {
    Ok(descend_to_simple(space, v)?.is_some())
}

/// Canonical label `(ᾱ⁺, k)` of the reflection in a root of `Φ`.
pub fn canonical_reflection(space: &ExtendedSpace, root: &IntVector) -> Result<Reflection> {
    require_not_tubular(space)?;
    let norm = space.bilinear(root, root)?;
    if norm != 2 {
        return Err(Error::NotARoot(format!(
            "{:?} has norm {norm}",
            root.coords()
        )));
    }
    let proj = space.project(root)?;
    if !is_projected_root(space, &proj)? {
        return Err(Error::NotARoot(format!(
            "projection {:?} is not in the projected root system",
            proj.coords()
        )));
    }
    if proj.is_positive() {
        Ok(Reflection::new(proj, root.coords()[1]))
    } else {
        Ok(Reflection::new(
            proj.negate()?,
            arith::neg(root.coords()[1])?,
        ))
    }
}

/// Arm coefficients of `v`, one slice per arm.
fn arm_coefficients<'a>(space: &ExtendedSpace, v: &'a ProjVector) -> Vec<&'a [i64]> {
    let mut out = Vec::new();
    let mut offset = 1;
    for &p in space.spec().arms() {
        out.push(&v.coords()[offset..offset + p]);
        offset += p;
    }
    out
}

fn leading_ones(coeffs: &[i64]) -> Option<usize> {
    let m = coeffs.iter().take_while(|&&x| x == 1).count();
    coeffs[m..].iter().all(|&x| x == 0).then_some(m)
}

/// For a positive vector with `α_1` coefficient 1: every arm carries either
/// no coefficients or a run of 1s starting at the center.
pub fn coefficient_profile_check(space: &ExtendedSpace, v: &ProjVector) -> Result<bool> {
    arith::check_len(v.coords(), space.proj_dim())?;
    if !v.is_positive() || v.coords()[0] != 1 {
        return Err(Error::Precondition(format!(
            "{:?} is not positive with α_1 coefficient 1",
            v.coords()
        )));
    }
    Ok(arm_coefficients(space, v)
        .into_iter()
        .all(|c| leading_ones(c).is_some()))
}

/// Applies the product `s_{w_1} ⋯ s_{w_m}` of simple reflections of `W̄` to
/// `v` (so `w_m` acts first).
pub fn apply_simple_word(
    space: &ExtendedSpace,
    word: &[Vertex],
    v: &ProjVector,
) -> Result<ProjVector> {
    let mut cur = v.coords().to_vec();
    for &letter in word.iter().rev() {
        let j = proj_index(space.spec().index_of(letter)?)
            .ok_or_else(|| Error::Precondition("1* is not a generator of W̄".into()))?;
        cur = simple_reflect(space, j, &cur)?;
    }
    Ok(ProjVector::new(cur))
}

/// A word `x` in the arm reflections with `x(root) = α_1`, for
/// `root ∈ (α_1 + Λ) ∩ Φ̄`. Each arm's leading run `α_{(i,1)}, …,
/// α_{(i,m_i)}` is removed by `s_{(i,1)} ⋯ s_{(i,m_i)}`.
pub fn strip_to_alpha1(space: &ExtendedSpace, root: &ProjVector) -> Result<Vec<Vertex>> {
    arith::check_len(root.coords(), space.proj_dim())?;
    if root.coords()[0] != 1 || !is_projected_root(space, root)? {
        return Err(Error::Precondition(format!(
            "{:?} is not a root in α_1 + Λ",
            root.coords()
        )));
    }
    let mut word = Vec::new();
    for (i, coeffs) in arm_coefficients(space, root).into_iter().enumerate() {
        let m = leading_ones(coeffs).ok_or_else(|| {
            Error::Precondition(format!(
                "arm {} of {:?} is not a run of 1s",
                i + 1,
                root.coords()
            ))
        })?;
        word.extend((1..=m).map(|pos| Vertex::Arm { arm: i + 1, pos }));
    }
    let image = apply_simple_word(space, &word, root)?;
    if image != space.proj_basis_vector(0) {
        return Err(Error::Precondition(format!(
            "stripping {:?} reached {:?}",
            root.coords(),
            image.coords()
        )));
    }
    Ok(word)
}

/// Vertex of the simple root with projected index `j`.
pub fn proj_vertex(space: &ExtendedSpace, j: usize) -> Vertex {
    space
        .spec()
        .vertex_at(basis_index(j))
        .expect("projected index in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramSpec;

    fn space(arms: &[i64]) -> ExtendedSpace {
        ExtendedSpace::new(DiagramSpec::new(arms.to_vec()).unwrap())
    }

    fn pv(c: &[i64]) -> ProjVector {
        ProjVector::new(c.to_vec())
    }

    #[test]
    fn finite_counts() {
        for (arms, count) in [
            (&[][..], 2),
            (&[1][..], 6),
            (&[1, 1][..], 12),
            (&[1, 1, 1][..], 24),
        ] {
            let slice = enumerate_projected(&space(arms), 10).unwrap();
            assert!(slice.complete, "{arms:?}");
            assert_eq!(slice.roots.len(), count, "{arms:?}");
        }
    }

    #[test]
    fn wild_is_incomplete() {
        let slice = enumerate_projected(&space(&[2, 2, 3]), 3).unwrap();
        assert!(!slice.complete);
    }

    #[test]
    fn tubular_and_bad_bound_rejected() {
        assert_eq!(
            enumerate_projected(&space(&[1, 1, 1, 1]), 4),
            Err(Error::UnsupportedTubular)
        );
        assert!(enumerate_projected(&space(&[1]), 0).is_err());
    }

    #[test]
    fn roots_are_sorted_norm_two_and_sign_coherent() {
        let s = space(&[2, 3]);
        let slice = enumerate_projected(&s, 20).unwrap();
        assert!(slice.roots.windows(2).all(|w| w[0] < w[1]));
        for r in &slice.roots {
            assert_eq!(s.proj_bilinear(r, r).unwrap(), 2);
            assert!(r.is_positive() || r.is_negative());
        }
    }

    #[test]
    fn membership_agrees_with_enumeration() {
        let s = space(&[1, 2]);
        let slice = enumerate_projected(&s, 20).unwrap();
        assert!(slice.complete);
        let m = s.proj_dim();
        let mut v = vec![-2i64; m];
        loop {
            let p = pv(&v);
            assert_eq!(
                is_projected_root(&s, &p).unwrap(),
                slice.roots.binary_search(&p).is_ok(),
                "{v:?}"
            );
            let Some(i) = v.iter().position(|&x| x < 2) else {
                break;
            };
            v[i] += 1;
            for x in &mut v[..i] {
                *x = -2;
            }
        }
    }

    #[test]
    fn canonical_reflection_examples() {
        let s = space(&[1]);
        assert_eq!(
            canonical_reflection(&s, &s.basis_vector(1)).unwrap(),
            Reflection::new(pv(&[1, 0]), 1)
        );
        let v = s
            .basis_vector(0)
            .negate()
            .unwrap()
            .add(&s.radical().scale(2).unwrap())
            .unwrap();
        assert_eq!(
            canonical_reflection(&s, &v).unwrap(),
            Reflection::new(pv(&[1, 0]), -2)
        );
        assert_eq!(
            canonical_reflection(&s, &s.basis_vector(2)).unwrap(),
            Reflection::new(pv(&[0, 1]), 0)
        );
        let not_root = s.basis_vector(0).scale(2).unwrap();
        assert!(canonical_reflection(&s, &not_root).is_err());
    }

    #[test]
    fn profile_examples() {
        let s = space(&[2]);
        assert!(coefficient_profile_check(&s, &pv(&[1, 1, 0])).unwrap());
        assert!(coefficient_profile_check(&s, &pv(&[1, 0, 0])).unwrap());
        assert!(!coefficient_profile_check(&s, &pv(&[1, 0, 1])).unwrap());
        assert!(coefficient_profile_check(&s, &pv(&[0, 1, 0])).is_err());
    }

    #[test]
    fn strip_examples() {
        let s = space(&[1]);
        assert!(strip_to_alpha1(&s, &pv(&[1, 0])).unwrap().is_empty());
        assert_eq!(
            strip_to_alpha1(&s, &pv(&[1, 1])).unwrap(),
            vec![Vertex::Arm { arm: 1, pos: 1 }]
        );
        let s = space(&[1, 1]);
        assert_eq!(
            strip_to_alpha1(&s, &pv(&[1, 1, 1])).unwrap(),
            vec![
                Vertex::Arm { arm: 1, pos: 1 },
                Vertex::Arm { arm: 2, pos: 1 }
            ]
        );
        assert!(strip_to_alpha1(&s, &pv(&[0, 1, 0])).is_err());
        assert!(strip_to_alpha1(&s, &pv(&[1, 2, 0])).is_err());
    }

    #[test]
    fn descent_word_replays() {
        let s = space(&[2, 2, 3]);
        let slice = enumerate_projected(&s, 6).unwrap();
        for r in slice.positive() {
            let (word, j) = descend_to_simple(&s, r).unwrap().unwrap();
            let mut cur = r.coords().to_vec();
            for &i in &word {
                cur = simple_reflect(&s, i, &cur).unwrap();
            }
            assert_eq!(cur, s.proj_basis_vector(j).into_coords());
        }
    }
}
