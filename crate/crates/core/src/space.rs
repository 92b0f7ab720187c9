//! Exact integer vectors over the simple-root basis, the bilinear form,
//! reflections, and the projection to `V/R`.

use serde::{Deserialize, Serialize};

use crate::arith::{self, check_len, IntMatrix};
use crate::diagram::{self, DiagramSpec, Signature, WeylType};
use crate::error::{Error, Result};

/// Coordinates over the ordered basis `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(Vec<i64>);

/// Coordinates over the projected basis `B̄ = B ∖ {α_{1*}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjVector(Vec<i64>);

macro_rules! coord_vector {
    ($t:ident) => {
        impl $t {
            pub fn new(coords: Vec<i64>) -> Self {
                Self(coords)
            }
            pub fn coords(&self) -> &[i64] {
                &self.0
            }
            pub fn into_coords(self) -> Vec<i64> {
                self.0
            }
            pub fn len(&self) -> usize {
                self.0.len()
            }
            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }
            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }
            /// Sum of absolute coefficients.
            pub fn height(&self) -> i64 {
                self.0.iter().map(|x| x.abs()).sum()
            }
            pub fn add(&self, other: &Self) -> Result<Self> {
                check_len(&other.0, self.0.len())?;
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(&a, &b)| arith::add(a, b))
                    .collect::<Result<_>>()
                    .map(Self)
            }
            pub fn scale(&self, c: i64) -> Result<Self> {
                self.0
                    .iter()
                    .map(|&a| arith::mul(a, c))
                    .collect::<Result<_>>()
                    .map(Self)
            }
            pub fn negate(&self) -> Result<Self> {
                self.scale(-1)
            }
        }
    };
}

coord_vector!(IntVector);
coord_vector!(ProjVector);

impl ProjVector {
    /// Nonzero with all coefficients nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    /// Nonzero with all coefficients nonpositive.
    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x <= 0)
    }
}

/// Maps a basis index of `B` other than `α_{1*}` to its index in `B̄`.
pub fn proj_index(basis_index: usize) -> Option<usize> {
    match basis_index {
        0 => Some(0),
        1 => None,
        i => Some(i - 1),
    }
}

/// Maps an index of `B̄` back to `B`.
pub fn basis_index(proj_index: usize) -> usize {
    if proj_index == 0 {
        0
    } else {
        proj_index + 1
    }
}

/// The extended space `(V, B, (−,−))` of a diagram, with its form data
/// precomputed.
#[derive(Clone, Debug)]
pub struct ExtendedSpace {
    spec: DiagramSpec,
    gram: IntMatrix,
    proj_gram: IntMatrix,
    signature: Signature,
    weyl_type: WeylType,
}

impl ExtendedSpace {
    pub fn new(spec: DiagramSpec) -> Self {
        let gram = diagram::build_gram(&spec);
        // Rows of α_1 and α_{1*} coincide, so folding α_{1*} onto α_1 is
        // just deleting its row and column.
        let proj_gram = gram.delete(1);
        let signature = diagram::inertia(&gram).expect("gram matrix is symmetric");
        let weyl_type = WeylType::from_signature(signature)
            .unwrap_or_else(|| panic!("unexpected signature {signature:?} for {spec}"));
        Self {
            spec,
            gram,
            proj_gram,
            signature,
            weyl_type,
        }
    }

    pub fn spec(&self) -> &DiagramSpec {
        &self.spec
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// Gram matrix of the induced form on `V̄` over `B̄`.
    pub fn proj_gram(&self) -> &IntMatrix {
        &self.proj_gram
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn weyl_type(&self) -> WeylType {
        self.weyl_type
    }

    /// `|B|`.
    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn proj_dim(&self) -> usize {
        self.proj_gram.dim()
    }

    pub fn basis_vector(&self, i: usize) -> IntVector {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        IntVector(v)
    }

    pub fn proj_basis_vector(&self, i: usize) -> ProjVector {
        let mut v = vec![0; self.proj_dim()];
        v[i] = 1;
        ProjVector(v)
    }

    /// `a = α_{1*} − α_1`.
    pub fn radical(&self) -> IntVector {
        let mut v = vec![0; self.dim()];
        v[0] = -1;
        v[1] = 1;
        IntVector(v)
    }

    pub fn bilinear(&self, u: &IntVector, v: &IntVector) -> Result<i64> {
        form(&self.gram, &u.0, &v.0)
    }

    pub fn proj_bilinear(&self, u: &ProjVector, v: &ProjVector) -> Result<i64> {
        form(&self.proj_gram, &u.0, &v.0)
    }

    /// `s_α(v) = v − (α, v) α` for a root `α` of norm 2.
    pub fn reflect(&self, alpha: &IntVector, v: &IntVector) -> Result<IntVector> {
        let norm = self.bilinear(alpha, alpha)?;
        if norm != 2 {
            return Err(Error::NotARoot(format!("{:?} has norm {norm}", alpha.0)));
        }
        let c = self.bilinear(alpha, v)?;
        arith::sub_scaled(&v.0, c, &alpha.0).map(IntVector)
    }

    pub fn proj_reflect(&self, alpha: &ProjVector, v: &ProjVector) -> Result<ProjVector> {
        let norm = self.proj_bilinear(alpha, alpha)?;
        if norm != 2 {
            return Err(Error::NotARoot(format!("{:?} has norm {norm}", alpha.0)));
        }
        let c = self.proj_bilinear(alpha, v)?;
        arith::sub_scaled(&v.0, c, &alpha.0).map(ProjVector)
    }

    /// Image in `V̄`: the `α_{1*}` coefficient folds into the `α_1` one.
    pub fn project(&self, v: &IntVector) -> Result<ProjVector> {
        check_len(&v.0, self.dim())?;
        let mut out = Vec::with_capacity(self.proj_dim());
        out.push(arith::add(v.0[0], v.0[1])?);
        out.extend_from_slice(&v.0[2..]);
        Ok(ProjVector(out))
    }

    /// The representative of `v` with zero `α_{1*}` coefficient, plus `k·a`.
    pub fn lift(&self, v: &ProjVector, k: i64) -> Result<IntVector> {
        check_len(&v.0, self.proj_dim())?;
        let mut out = Vec::with_capacity(self.dim());
        out.push(arith::sub(v.0[0], k)?);
        out.push(k);
        out.extend_from_slice(&v.0[1..]);
        Ok(IntVector(out))
    }
}

fn form(g: &IntMatrix, u: &[i64], v: &[i64]) -> Result<i64> {
    check_len(u, g.dim())?;
    check_len(v, g.dim())?;
    let gv = g.apply(v)?;
    u.iter()
        .zip(&gv)
        .try_fold(0i64, |acc, (&a, &b)| arith::add(acc, arith::mul(a, b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(arms: &[i64]) -> ExtendedSpace {
        ExtendedSpace::new(DiagramSpec::new(arms.to_vec()).unwrap())
    }

    #[test]
    fn bilinear_examples() {
        let s = space(&[1]);
        let (e0, e1, e2) = (s.basis_vector(0), s.basis_vector(1), s.basis_vector(2));
        assert_eq!(s.bilinear(&e0, &e1).unwrap(), 2);
        let v = e0.add(&e2).unwrap();
        assert_eq!(s.bilinear(&v, &v).unwrap(), 2);
        let a = s.radical();
        for i in 0..3 {
            assert_eq!(s.bilinear(&a, &s.basis_vector(i)).unwrap(), 0);
        }
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let s = space(&[1]);
        let short = IntVector::new(vec![1, 0]);
        assert!(matches!(
            s.bilinear(&short, &s.basis_vector(0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn reflect_examples() {
        let s = space(&[1]);
        let (e0, e1) = (s.basis_vector(0), s.basis_vector(1));
        assert_eq!(s.reflect(&e0, &e0).unwrap().coords(), &[-1, 0, 0]);
        assert_eq!(s.reflect(&e0, &e1).unwrap().coords(), &[-2, 1, 0]);
        assert_eq!(s.reflect(&e0, &s.radical()).unwrap(), s.radical());
        let not_root = e0.add(&e0).unwrap();
        assert!(matches!(s.reflect(&not_root, &e1), Err(Error::NotARoot(_))));
    }

    #[test]
    fn project_and_lift_examples() {
        let s = space(&[1]);
        let alpha1 = s.proj_basis_vector(0);
        assert_eq!(s.project(&s.basis_vector(1)).unwrap(), alpha1);
        assert!(s.project(&s.radical()).unwrap().is_zero());
        let v = s
            .basis_vector(0)
            .add(&s.radical().scale(3).unwrap())
            .unwrap();
        assert_eq!(s.project(&v).unwrap(), alpha1);
        assert_eq!(s.lift(&alpha1, 1).unwrap(), s.basis_vector(1));
        assert_eq!(s.lift(&alpha1, -2).unwrap().coords(), &[3, -2, 0]);
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-50i64..50, n)
    }

    proptest! {
        #[test]
        fn form_properties(u in arb_vec(6), v in arb_vec(6), k in -20i64..20, r in 0usize..6) {
            let s = space(&[2, 2]);
            let (u, v) = (IntVector::new(u), IntVector::new(v));
            prop_assert_eq!(s.bilinear(&u, &v).unwrap(), s.bilinear(&v, &u).unwrap());
            // projected form is well defined
            let (pu, pv) = (s.project(&u).unwrap(), s.project(&v).unwrap());
            prop_assert_eq!(s.bilinear(&u, &v).unwrap(), s.proj_bilinear(&pu, &pv).unwrap());
            // lift is a section, project kills the radical
            prop_assert_eq!(s.project(&s.lift(&pu, k).unwrap()).unwrap(), pu.clone());
            let shifted = u.add(&s.radical().scale(k).unwrap()).unwrap();
            prop_assert_eq!(s.project(&shifted).unwrap(), pu);
            // a simple reflection is an isometric involution
            let alpha = s.basis_vector(r);
            let (ru, rv) = (s.reflect(&alpha, &u).unwrap(), s.reflect(&alpha, &v).unwrap());
            prop_assert_eq!(s.bilinear(&ru, &rv).unwrap(), s.bilinear(&u, &v).unwrap());
            prop_assert_eq!(s.reflect(&alpha, &ru).unwrap(), u);
        }

        #[test]
        fn form_extends_gram(i in 0usize..6, j in 0usize..6) {
            let s = space(&[2, 2]);
            prop_assert_eq!(
                s.bilinear(&s.basis_vector(i), &s.basis_vector(j)).unwrap(),
                s.gram().get(i, j)
            );
        }
    }
}
