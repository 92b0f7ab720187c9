//! Elements of the extended Weyl group as exact integer matrices on `V`,
//! reflections, Coxeter transformations, and the normal form
//! `w = w̄ · E(a ⊗ TR(w))`.

use std::collections::VecDeque;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::arith::{self, IntMatrix};
use crate::diagram::{DiagramSpec, Vertex, WeylType};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys;
use crate::space::{proj_index, ExtendedSpace, IntVector, ProjVector};

/// A group element, stored as its matrix on `V` over `B` (columns are images
/// of basis vectors). Equality and hashing are matrix equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    matrix: IntMatrix,
}

impl GroupElement {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// The reflection `s_{ᾱ + k a}`, labelled by a positive projected root and
/// an integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Reflection {
    pub root: ProjVector,
    pub k: i64,
}

impl Reflection {
    pub fn new(root: ProjVector, k: i64) -> Self {
        Self { root, k }
    }
}

/// `(w̄, TR(w))`: the action on `V̄` over `B̄` and the translation vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub projected: IntMatrix,
    pub translation: ProjVector,
}

/// An extended Weyl group of domestic or wild type.
#[derive(Clone, Debug)]
pub struct ExtendedWeylGroup {
    space: ExtendedSpace,
    proj_gram_det: i64,
    proj_gram_adj: IntMatrix,
}

impl ExtendedWeylGroup {
    pub fn new(spec: DiagramSpec) -> Result<Self> {
        let space = ExtendedSpace::new(spec);
        if space.weyl_type() == WeylType::Tubular {
            return Err(Error::UnsupportedTubular);
        }
        let (proj_gram_det, proj_gram_adj) = linalg::det_and_adjugate(space.proj_gram())?;
        Ok(Self {
            space,
            proj_gram_det,
            proj_gram_adj,
        })
    }

    pub fn from_arms(arms: &[i64]) -> Result<Self> {
        Self::new(DiagramSpec::new(arms.iter().copied())?)
    }

    pub fn space(&self) -> &ExtendedSpace {
        &self.space
    }

    pub fn spec(&self) -> &DiagramSpec {
        self.space.spec()
    }

    pub fn weyl_type(&self) -> WeylType {
        self.space.weyl_type()
    }

    /// `|B|`.
    pub fn rank(&self) -> usize {
        self.space.dim()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            matrix: IntMatrix::identity(self.rank()),
        }
    }

    /// Wraps a matrix after checking that it preserves the form and fixes
    /// the radical.
    pub fn element(&self, matrix: IntMatrix) -> Result<GroupElement> {
        self.check_element(&matrix)?;
        Ok(GroupElement { matrix })
    }

    fn check_element(&self, m: &IntMatrix) -> Result<()> {
        if m.dim() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: m.dim(),
            });
        }
        let a = self.space.radical();
        if m.apply(a.coords())? != a.coords() {
            return Err(Error::NotAnElement("radical vector is not fixed".into()));
        }
        let g = self.space.gram();
        if &m.transpose().mul(g)?.mul(m)? != g {
            return Err(Error::NotAnElement("bilinear form is not preserved".into()));
        }
        Ok(())
    }

    /// Matrix of `x ↦ x − (α, x) α` for a norm-2 vector `α`.
    fn reflection_matrix(&self, root: &IntVector) -> Result<GroupElement> {
        let cols = (0..self.rank())
            .map(|j| {
                self.space
                    .reflect(root, &self.space.basis_vector(j))
                    .map(IntVector::into_coords)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement {
            matrix: IntMatrix::from_columns(&cols)?,
        })
    }

    pub fn simple_reflection(&self, v: Vertex) -> Result<GroupElement> {
        let i = self.spec().index_of(v)?;
        self.reflection_matrix(&self.space.basis_vector(i))
    }

    /// The vector `ᾱ + k a` in `V`.
    pub fn root_of(&self, r: &Reflection) -> Result<IntVector> {
        self.space.lift(&r.root, r.k)
    }

    pub fn reflection_element(&self, r: &Reflection) -> Result<GroupElement> {
        if !r.root.is_positive() || !rootsys::is_projected_root(&self.space, &r.root)? {
            return Err(Error::NotARoot(format!(
                "{:?} is not a positive projected root",
                r.root.coords()
            )));
        }
        self.reflection_matrix(&self.root_of(r)?)
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        Ok(GroupElement {
            matrix: x.matrix.mul(&y.matrix)?,
        })
    }

    pub fn product<'a>(
        &self,
        factors: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<GroupElement> {
        factors
            .into_iter()
            .try_fold(self.identity(), |acc, f| self.multiply(&acc, f))
    }

    pub fn act(&self, x: &GroupElement, v: &IntVector) -> Result<IntVector> {
        x.matrix.apply(v.coords()).map(IntVector::new)
    }

    /// Exact inverse, through the normal form: `w⁻¹ = E(a ⊗ −TR(w)) · w̄⁻¹`.
    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement> {
        let nf = self.normal_form(x)?;
        let bar_inv = self.projected_inverse(&nf.projected)?;
        let e = self.eichler(&nf.translation.negate()?)?;
        self.multiply(&e, &self.embed(&bar_inv)?)
    }

    /// `w r w⁻¹`, returned as the label of `s_{w(root)}`.
    pub fn conjugate_reflection(&self, w: &GroupElement, r: &Reflection) -> Result<Reflection> {
        let image = self.act(w, &self.root_of(r)?)?;
        rootsys::canonical_reflection(&self.space, &image)
    }

    /// `E(a ⊗ β̄): x ↦ x − (β, x) a`.
    pub fn eichler(&self, beta: &ProjVector) -> Result<GroupElement> {
        let beta = self.space.lift(beta, 0)?;
        let a = self.space.radical();
        let cols = (0..self.rank())
            .map(|j| {
                let c = self.space.bilinear(&beta, &self.space.basis_vector(j))?;
                arith::sub_scaled(self.space.basis_vector(j).coords(), c, a.coords())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement {
            matrix: IntMatrix::from_columns(&cols)?,
        })
    }

    /// The induced action on `V̄` over `B̄`.
    pub fn project_element(&self, w: &GroupElement) -> Result<IntMatrix> {
        let cols = (0..self.rank())
            .filter(|&j| j != 1)
            .map(|j| {
                self.space
                    .project(&IntVector::new(w.matrix.column(j)))
                    .map(ProjVector::into_coords)
            })
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_columns(&cols)
    }

    /// Lifts a matrix on `V̄` to `V`: acts on `span(B̄)` and fixes `a`.
    pub fn embed(&self, bar: &IntMatrix) -> Result<GroupElement> {
        let n = self.rank();
        if bar.dim() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: bar.dim(),
            });
        }
        let a = self.space.radical();
        let mut cols = Vec::with_capacity(n);
        for pj in 0..n - 1 {
            let col = self.space.lift(&ProjVector::new(bar.column(pj)), 0)?;
            cols.push(col.into_coords());
        }
        let star = IntVector::new(cols[0].clone()).add(&a)?;
        cols.insert(1, star.into_coords());
        Ok(GroupElement {
            matrix: IntMatrix::from_columns(&cols)?,
        })
    }

    /// Solves `Ḡ x = rhs` over the integers.
    fn solve_proj_gram(&self, rhs: &[i64]) -> Result<Vec<i64>> {
        let scaled = self.proj_gram_adj.apply(rhs)?;
        scaled
            .into_iter()
            .map(|x| {
                if x % self.proj_gram_det == 0 {
                    Ok(x / self.proj_gram_det)
                } else {
                    Err(Error::NotAnElement(
                        "translation vector is not integral".into(),
                    ))
                }
            })
            .collect()
    }

    /// `ȳ⁻¹ = Ḡ⁻¹ ȳᵀ Ḡ` for a matrix preserving the projected form.
    pub fn projected_inverse(&self, bar: &IntMatrix) -> Result<IntMatrix> {
        let g = self.space.proj_gram();
        let core = bar.transpose().mul(g)?;
        let scaled = self.proj_gram_adj.mul(&core)?;
        let n = bar.dim();
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let x = scaled.get(i, j);
                if x % self.proj_gram_det != 0 {
                    return Err(Error::NotAnElement(
                        "projected part is not invertible".into(),
                    ));
                }
                out.set(i, j, x / self.proj_gram_det);
            }
        }
        if !bar.mul(&out)?.is_identity() {
            return Err(Error::NotAnElement(
                "projected part does not preserve the form".into(),
            ));
        }
        Ok(out)
    }

    /// `(w̄, TR(w))`. The translation is read off from `w(e_j) − w̄(e_j) =
    /// −(TR(w), e_j) a` and recovered through the nondegenerate projected
    /// form.
    pub fn normal_form(&self, w: &GroupElement) -> Result<NormalForm> {
        self.check_element(&w.matrix)?;
        let projected = self.project_element(w)?;
        let rhs = (0..self.rank())
            .filter(|&j| j != 1)
            .map(|j| arith::neg(w.matrix.get(1, j)))
            .collect::<Result<Vec<_>>>()?;
        let translation = ProjVector::new(self.solve_proj_gram(&rhs)?);
        Ok(NormalForm {
            projected,
            translation,
        })
    }

    pub fn from_normal_form(&self, nf: &NormalForm) -> Result<GroupElement> {
        arith::check_len(nf.translation.coords(), self.rank() - 1)?;
        self.projected_inverse(&nf.projected)?;
        let w = self.multiply(&self.embed(&nf.projected)?, &self.eichler(&nf.translation)?)?;
        self.check_element(&w.matrix)?;
        Ok(w)
    }

    /// Checks `TR(xy) = ȳ⁻¹ TR(x) + TR(y)`.
    pub fn translation_cocycle_check(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        let nx = self.normal_form(x)?;
        let ny = self.normal_form(y)?;
        let nxy = self.normal_form(&self.multiply(x, y)?)?;
        let y_inv = self.projected_inverse(&ny.projected)?;
        let rhs = ProjVector::new(y_inv.apply(nx.translation.coords())?).add(&ny.translation)?;
        Ok(nxy.translation == rhs)
    }

    /// `dim Mov(w) = rank(w − id)`.
    pub fn mov_dimension(&self, w: &GroupElement) -> Result<usize> {
        Ok(linalg::rank(&w.matrix.minus_identity()?.rows()))
    }

    /// Recognizes reflections: returns the label when `w = s_β` for a root
    /// `β`.
    pub fn as_reflection(&self, w: &GroupElement) -> Result<Option<Reflection>> {
        let d = w.matrix.minus_identity()?;
        let Some(col) = (0..self.rank())
            .map(|j| d.column(j))
            .find(|c| c.iter().any(|&x| x != 0))
        else {
            return Ok(None);
        };
        let g = col.iter().fold(0i64, |acc, &x| gcd(acc, x));
        let prim = IntVector::new(col.iter().map(|&x| x / g).collect());
        if self.space.bilinear(&prim, &prim)? != 2 {
            return Ok(None);
        }
        let Ok(r) = rootsys::canonical_reflection(&self.space, &prim) else {
            return Ok(None);
        };
        Ok((self.reflection_element(&r)? == *w).then_some(r))
    }

    /// Arm vertices in basis order; the default ordering for Coxeter
    /// transformations.
    pub fn default_ordering(&self) -> Vec<Vertex> {
        self.spec().arm_vertices()
    }

    fn check_ordering(&self, ordering: &[Vertex]) -> Result<()> {
        let mut expected = self.default_ordering();
        let mut got = ordering.to_vec();
        expected.sort();
        got.sort();
        if expected != got {
            return Err(Error::InvalidOrdering(format!(
                "{ordering:?} is not a permutation of the arm vertices"
            )));
        }
        Ok(())
    }

    /// `c = (∏ s_v over the ordering) · s_{α_1} · s_{α_{1*}}`.
    pub fn coxeter_transformation(&self, ordering: &[Vertex]) -> Result<GroupElement> {
        self.check_ordering(ordering)?;
        let factors = ordering
            .iter()
            .chain([Vertex::Center, Vertex::Star].iter())
            .map(|&v| self.simple_reflection(v))
            .collect::<Result<Vec<_>>>()?;
        self.product(&factors)
    }

    /// An element `x` with `x⁻¹ c x = d`, where `c` and `d` are the Coxeter
    /// transformations of the two orderings. `x` is assembled arm by arm
    /// from `P_i = ⟨s_{(i,2)}, …, s_{(i,p_i)}⟩`, which commutes with
    /// everything outside arm `i`.
    pub fn coxeter_conjugator(
        &self,
        ordering_c: &[Vertex],
        ordering_d: &[Vertex],
    ) -> Result<GroupElement> {
        self.check_ordering(ordering_c)?;
        self.check_ordering(ordering_d)?;
        let mut x = self.identity();
        for (i, &p) in self.spec().arms().iter().enumerate() {
            let arm = i + 1;
            let arm_product = |ordering: &[Vertex]| -> Result<GroupElement> {
                let fs = ordering
                    .iter()
                    .filter(|v| matches!(v, Vertex::Arm { arm: a, .. } if *a == arm))
                    .map(|&v| self.simple_reflection(v))
                    .collect::<Result<Vec<_>>>()?;
                self.product(&fs)
            };
            let ci = arm_product(ordering_c)?;
            let di = arm_product(ordering_d)?;
            let gens = (2..=p)
                .map(|pos| self.simple_reflection(Vertex::Arm { arm, pos }))
                .collect::<Result<Vec<_>>>()?;
            let xi = self.find_in_closure(&gens, |g| {
                Ok(self.multiply(&ci, g)? == self.multiply(g, &di)?)
            })?;
            let xi = xi.ok_or_else(|| {
                Error::Precondition(format!("no conjugator found inside arm {arm}"))
            })?;
            x = self.multiply(&x, &xi)?;
        }
        let c = self.coxeter_transformation(ordering_c)?;
        let d = self.coxeter_transformation(ordering_d)?;
        if self.multiply(&c, &x)? != self.multiply(&x, &d)? {
            return Err(Error::Internal("conjugator failed verification".into()));
        }
        Ok(x)
    }

    /// Breadth-first search of the finite subgroup generated by `gens` for an
    /// element satisfying `pred`.
    fn find_in_closure(
        &self,
        gens: &[GroupElement],
        pred: impl Fn(&GroupElement) -> Result<bool>,
    ) -> Result<Option<GroupElement>> {
        let mut seen = FxHashSet::default();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity());
        while let Some(g) = queue.pop_front() {
            if pred(&g)? {
                return Ok(Some(g));
            }
            for s in gens {
                let h = self.multiply(&g, s)?;
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        Ok(None)
    }

    /// Matrix of the simple reflection `s̄_j` of `W̄` on `V̄`.
    pub fn projected_simple_reflection(&self, j: usize) -> Result<IntMatrix> {
        self.projected_reflection(&self.space.proj_basis_vector(j))
    }

    /// Matrix of `s_ᾱ` on `V̄`.
    pub fn projected_reflection(&self, root: &ProjVector) -> Result<IntMatrix> {
        let m = self.space.proj_dim();
        let cols = (0..m)
            .map(|j| {
                self.space
                    .proj_reflect(root, &self.space.proj_basis_vector(j))
                    .map(ProjVector::into_coords)
            })
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_columns(&cols)
    }

    /// Coxeter length in `(W̄, S̄)` of a matrix on `V̄`, by peeling off right
    /// descents (`ℓ(w s_j) < ℓ(w)` iff `w(α_j) < 0`).
    pub fn coxeter_length(&self, bar: &IntMatrix) -> Result<usize> {
        let m = self.space.proj_dim();
        let mut w = bar.clone();
        let mut len = 0;
        'outer: loop {
            for j in 0..m {
                let col = ProjVector::new(w.column(j));
                if col.is_negative() {
                    w = w.mul(&self.projected_simple_reflection(j)?)?;
                    len += 1;
                    continue 'outer;
                }
            }
            break;
        }
        if !w.is_identity() {
            return Err(Error::NotAnElement(
                "matrix is not in the projected group".into(),
            ));
        }
        Ok(len)
    }

    /// Ordering-aware helper: index of a vertex in `B`, then in `B̄`.
    pub fn proj_index_of(&self, v: Vertex) -> Result<usize> {
        proj_index(self.spec().index_of(v)?)
            .ok_or_else(|| Error::Precondition("1* has no projected index".into()))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
