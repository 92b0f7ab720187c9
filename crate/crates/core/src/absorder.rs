//! Reflection length, the absolute order below a Coxeter transformation,
//! budgeted slices of the interval `[1, c]`, and generation certificates
//! for reflection tuples.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::arith::IntMatrix;
use crate::diagram::Vertex;
use crate::error::{Error, Result};
use crate::group::{ExtendedWeylGroup, GroupElement, Reflection};
use crate::hurwitz::{self, Factorization};
use crate::lattice;
use crate::linalg;
use crate::rootsys;
use crate::space::ProjVector;

/// Bounds for the reflection searches: reflections `(ᾱ, k)` with
/// `|k| ≤ k_bound` and `ᾱ` of height at most `root_height`, factorizations
/// of length at most `depth_cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSearch {
    pub k_bound: i64,
    pub depth_cap: usize,
    pub root_height: i64,
}

impl Default for LengthSearch {
    fn default() -> Self {
        Self {
            k_bound: 4,
            depth_cap: 4,
            root_height: 6,
        }
    }
}

/// `lower ≤ ℓ_T(w) ≤ upper`; `upper` is backed by `witness`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthBounds {
    pub lower: usize,
    pub upper: Option<usize>,
    pub exact: bool,
    pub witness: Option<Factorization>,
}

/// Candidate reflections for a search, in a fixed order.
struct Candidates {
    reflections: Vec<(Reflection, GroupElement)>,
    params: LengthSearch,
}

impl Candidates {
    fn new(group: &ExtendedWeylGroup, params: LengthSearch) -> Result<Self> {
        if params.root_height < 1 {
            return Err(Error::Precondition(
                "root height bound must be positive".into(),
            ));
        }
        let slice = rootsys::enumerate_projected(group.space(), params.root_height)?;
        let mut reflections = Vec::new();
        for root in slice.positive() {
            for k in -params.k_bound..=params.k_bound {
                let r = Reflection::new(root.clone(), k);
                let m = group.reflection_element(&r)?;
                reflections.push((r, m));
            }
        }
        Ok(Self {
            reflections,
            params,
        })
    }

    fn admits(&self, r: &Reflection) -> bool {
        r.k.abs() <= self.params.k_bound && r.root.height() <= self.params.root_height
    }
}

fn det_sign(w: &GroupElement) -> Result<i64> {
    Ok(linalg::det_and_adjugate(w.matrix())?.0)
}

fn parity_matches(det: i64, length: usize) -> bool {
    (det == 1) == length.is_multiple_of(2)
}

/// Depth-first search for `t_1 ⋯ t_len = w` with all `t_i` candidates.
/// Tracks `x = t_j ⋯ t_1 w` and closes the last step with a reflection test.
fn search(
    group: &ExtendedWeylGroup,
    cands: &Candidates,
    x: &GroupElement,
    remaining: usize,
    prefix: &mut Vec<Reflection>,
) -> Result<bool> {
    match remaining {
        0 => Ok(x.is_identity()),
        1 => match group.as_reflection(x)? {
            Some(r) if cands.admits(&r) => {
                prefix.push(r);
                Ok(true)
            }
            _ => Ok(false),
        },
        _ => {
            for (r, m) in &cands.reflections {
                let next = group.multiply(m, x)?;
                prefix.push(r.clone());
                if search(group, cands, &next, remaining - 1, prefix)? {
                    return Ok(true);
                }
                prefix.pop();
            }
            Ok(false)
        }
    }
}

fn find_with(
    group: &ExtendedWeylGroup,
    cands: &Candidates,
    w: &GroupElement,
    length: usize,
) -> Result<Option<Factorization>> {
    if !parity_matches(det_sign(w)?, length) {
        return Ok(None);
    }
    let mut prefix = Vec::with_capacity(length);
    if !search(group, cands, w, length, &mut prefix)? {
        return Ok(None);
    }
    let f = Factorization::new(prefix);
    if hurwitz::product(group, &f)? != *w {
        return Err(Error::Internal("factorization failed replay".into()));
    }
    Ok(Some(f))
}

/// A factorization of `w` into exactly `length` candidate reflections, if
/// one exists.
pub fn find_factorization(
    group: &ExtendedWeylGroup,
    w: &GroupElement,
    length: usize,
    params: LengthSearch,
) -> Result<Option<Factorization>> {
    let cands = Candidates::new(group, params)?;
    find_with(group, &cands, w, length)
}

/// `lower = dim Mov(w)`; `upper` is the shortest factorization found by
/// iterative deepening up to `depth_cap`.
pub fn reflection_length_bounds(
    group: &ExtendedWeylGroup,
    w: &GroupElement,
    params: LengthSearch,
) -> Result<LengthBounds> {
    let lower = group.mov_dimension(w)?;
    let cands = Candidates::new(group, params)?;
    for d in lower..=params.depth_cap {
        if let Some(f) = find_with(group, &cands, w, d)? {
            return Ok(LengthBounds {
                lower,
                upper: Some(d),
                exact: d == lower,
                witness: Some(f),
            });
        }
    }
    Ok(LengthBounds {
        lower,
        upper: None,
        exact: false,
        witness: None,
    })
}

/// A reduced factorization of `c` whose first `prefix_len` entries multiply
/// to `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BelowWitness {
    pub prefix_len: usize,
    pub factorization: Factorization,
}

/// Decides `w ≤ c` for the Coxeter transformation `c` of `ordering` by
/// searching for factorizations of `w` and `w⁻¹c` whose lengths add up to
/// `ℓ_T(c) = |B|`. `None` means no witness within the search bounds.
pub fn below(
    group: &ExtendedWeylGroup,
    w: &GroupElement,
    ordering: &[Vertex],
    params: LengthSearch,
) -> Result<Option<BelowWitness>> {
    let c = group.coxeter_transformation(ordering)?;
    let n = group.rank();
    let rest = group.multiply(&group.inverse(w)?, &c)?;
    let cands = Candidates::new(group, params)?;
    let det = det_sign(w)?;
    for d in group.mov_dimension(w)?..=n {
        if !parity_matches(det, d) {
            continue;
        }
        let Some(head) = find_with(group, &cands, w, d)? else {
            continue;
        };
        let Some(tail) = find_with(group, &cands, &rest, n - d)? else {
            continue;
        };
        let mut tuple = head.tuple;
        tuple.extend(tail.tuple);
        let factorization = Factorization::new(tuple);
        if hurwitz::product(group, &factorization)? != c {
            return Err(Error::Internal("below witness failed replay".into()));
        }
        return Ok(Some(BelowWitness {
            prefix_len: d,
            factorization,
        }));
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceBudgets {
    pub move_budget: usize,
    pub k_bound: i64,
    pub node_cap: usize,
}

/// An element `w ≤ c` with `ℓ_T(w) = length`, witnessed by a reduced
/// factorization of `c` whose prefix of that length multiplies to `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceElement {
    pub matrix: IntMatrix,
    pub length: usize,
    pub witness: Factorization,
}

/// A finite part of `[1, c]` with the covers among its elements.
/// `complete` is false when the orbit ball hit its node cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSlice {
    pub budgets: SliceBudgets,
    pub complete: bool,
    pub elements: Vec<SliceElement>,
    pub covers: Vec<[usize; 2]>,
}

/// Prefix products of the factorizations within `budgets.move_budget` moves
/// of the standard factorization, restricted to `|k| ≤ budgets.k_bound`.
/// Elements are sorted by length, then matrix; covers are the pairs of
/// consecutive lengths related by a reflection.
pub fn interval_slice(
    group: &ExtendedWeylGroup,
    ordering: &[Vertex],
    budgets: SliceBudgets,
) -> Result<IntervalSlice> {
    let standard = hurwitz::standard_factorization(group, ordering)?;
    let (ball, complete) =
        hurwitz::orbit_ball_truncated(group, &standard, budgets.move_budget, budgets.node_cap)?;
    let mut found: BTreeMap<(usize, IntMatrix), Factorization> = BTreeMap::new();
    for f in ball
        .iter()
        .filter(|f| f.tuple.iter().all(|t| t.k.abs() <= budgets.k_bound))
    {
        let mut acc = group.identity();
        found
            .entry((0, acc.matrix().clone()))
            .or_insert_with(|| f.clone());
        for (j, t) in f.tuple.iter().enumerate() {
            acc = group.multiply(&acc, &group.reflection_element(t)?)?;
            found
                .entry((j + 1, acc.matrix().clone()))
                .or_insert_with(|| f.clone());
        }
    }
    let elements: Vec<SliceElement> = found
        .into_iter()
        .map(|((length, matrix), witness)| SliceElement {
            matrix,
            length,
            witness,
        })
        .collect();
    let mut inverses = Vec::with_capacity(elements.len());
    for e in &elements {
        inverses.push(group.inverse(&group.element(e.matrix.clone())?)?);
    }
    let mut covers = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate().skip(i + 1) {
            if y.length < x.length + 1 {
                continue;
            }
            if y.length > x.length + 1 {
                break;
            }
            let step = group.multiply(&inverses[i], &group.element(y.matrix.clone())?)?;
            if group.as_reflection(&step)?.is_some() {
                covers.push([i, j]);
            }
        }
    }
    Ok(IntervalSlice {
        budgets,
        complete,
        elements,
        covers,
    })
}

/// Checks every element's witness: a factorization of `c` of length `|B|`
/// whose prefix of the element's length multiplies to the element.
pub fn verify_slice(
    group: &ExtendedWeylGroup,
    ordering: &[Vertex],
    slice: &IntervalSlice,
) -> Result<bool> {
    let c = group.coxeter_transformation(ordering)?;
    for e in &slice.elements {
        if e.witness.len() != group.rank() || hurwitz::product(group, &e.witness)? != c {
            return Ok(false);
        }
        let prefix = Factorization::new(e.witness.tuple[..e.length].to_vec());
        if hurwitz::product(group, &prefix)?.matrix() != &e.matrix {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reflexive-transitive closure of the cover relation: `m[i][j]` iff
/// element `i` lies below element `j`.
pub fn order_relation(slice: &IntervalSlice) -> Vec<Vec<bool>> {
    let n = slice.elements.len();
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for &[i, j] in &slice.covers {
        m[i][j] = true;
    }
    for k in 0..n {
        let through = m[k].clone();
        for row in m.iter_mut().filter(|row| row[k]) {
            for (x, &y) in row.iter_mut().zip(&through) {
                *x |= y;
            }
        }
    }
    m
}

/// Reflexivity, antisymmetry and transitivity of a relation matrix.
pub fn is_partial_order(m: &[Vec<bool>]) -> bool {
    let n = m.len();
    (0..n).all(|i| m[i][i])
        && (0..n).all(|i| (0..n).all(|j| i == j || !(m[i][j] && m[j][i])))
        && (0..n).all(|i| (0..n).all(|j| !m[i][j] || (0..n).all(|k| !m[j][k] || m[i][k])))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "dot" => Ok(Self::Dot),
            other => Err(Error::Precondition(format!(
                "unknown export format {other:?}"
            ))),
        }
    }
}

fn bracket(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Serializes a slice. DOT nodes are labeled by length and normal form,
/// edges point from lower to upper element of each cover.
pub fn export_poset(
    group: &ExtendedWeylGroup,
    slice: &IntervalSlice,
    format: ExportFormat,
) -> Result<String> {
    match format {
        ExportFormat::Json => {
            serde_json::to_string(slice).map_err(|e| Error::Internal(e.to_string()))
        }
        ExportFormat::Dot => {
            let mut out = String::from("digraph interval {\n  rankdir=BT;\n  node [shape=box];\n");
            for (i, e) in slice.elements.iter().enumerate() {
                let nf = group.normal_form(&group.element(e.matrix.clone())?)?;
                let rows: Vec<String> = nf.projected.rows().iter().map(|r| bracket(r)).collect();
                let _ = writeln!(
                    out,
                    "  n{i} [label=\"len {}\\nbar [{}]\\ntr {}\"];",
                    e.length,
                    rows.join(","),
                    bracket(nf.translation.coords())
                );
            }
            for &[i, j] in &slice.covers {
                let _ = writeln!(out, "  n{i} -> n{j};");
            }
            out.push_str("}\n");
            Ok(out)
        }
    }
}

/// Evidence that a tuple generates `W`: its projection generates all of
/// `W̄` (both of order `projected_order`) and its translations span the
/// whole projected root lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationCertificate {
    pub projected_order: usize,
    pub lattice_rank: usize,
    pub lattice_index: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Generation {
    Generating(GenerationCertificate),
    NotGenerating { reason: String },
    Unknown { explored: usize },
}

/// Closure of `gens` in `W̄` as a transversal `w̄ ↦ β`, where `(w̄, β)` is a
/// generated element in normal-form coordinates, together with the
/// Schreier translations `r s (rep(rs))⁻¹ = (1, v̄(b − β))` generating the
/// kernel of the projection. `None`
/// once more than `cap` elements appear.
#[allow(clippy::type_complexity)]
fn transversal(
    group: &ExtendedWeylGroup,
    gens: &[(IntMatrix, IntMatrix, ProjVector)],
    cap: usize,
) -> Result<Option<(usize, Vec<Vec<i64>>)>> {
    let m = group.space().proj_dim();
    let mut reps: FxHashMap<IntMatrix, ProjVector> = FxHashMap::default();
    let zero = ProjVector::new(vec![0; m]);
    reps.insert(IntMatrix::identity(m), zero.clone());
    let mut queue = VecDeque::from([(IntMatrix::identity(m), zero)]);
    let mut schreier = Vec::new();
    while let Some((u, beta)) = queue.pop_front() {
        for (s, s_inv, gamma) in gens {
            let v = u.mul(s)?;
            let b = ProjVector::new(s_inv.apply(beta.coords())?).add(gamma)?;
            match reps.get(&v) {
                Some(stored) => {
                    let diff = b.add(&stored.negate()?)?;
                    if !diff.is_zero() {
                        schreier.push(v.apply(diff.coords())?);
                    }
                }
                None => {
                    if reps.len() >= cap {
                        return Ok(None);
                    }
                    reps.insert(v.clone(), b.clone());
                    queue.push_back((v, b));
                }
            }
        }
    }
    Ok(Some((reps.len(), schreier)))
}

/// Order of `W̄`, or `None` if it exceeds `cap`.
pub fn projected_order(group: &ExtendedWeylGroup, cap: usize) -> Result<Option<usize>> {
    let m = group.space().proj_dim();
    let gens = (0..m)
        .map(|j| {
            let s = group.projected_simple_reflection(j)?;
            Ok((s.clone(), s, ProjVector::new(vec![0; m])))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(transversal(group, &gens, cap)?.map(|(n, _)| n))
}

/// Decides whether the entries of `f` generate `W`. Writing elements as
/// `(w̄, β)` with `(x̄, β)(ȳ, γ) = (x̄ȳ, ȳ⁻¹β + γ)`, the subgroup `H` they
/// generate is all of `W` iff its image is `W̄` and `H ∩ ker` is the full
/// lattice. The kernel part is spanned by the Schreier translations of a
/// transversal, so both conditions are exact. Returns `Unknown` when a
/// closure exceeds `cap` elements.
pub fn generates(group: &ExtendedWeylGroup, f: &Factorization, cap: usize) -> Result<Generation> {
    let Some(order) = projected_order(group, cap)? else {
        return Ok(Generation::Unknown { explored: cap });
    };
    let gens = f
        .tuple
        .iter()
        .map(|t| {
            let nf = group.normal_form(&group.reflection_element(t)?)?;
            let inv = group.projected_inverse(&nf.projected)?;
            Ok((nf.projected, inv, nf.translation))
        })
        .collect::<Result<Vec<_>>>()?;
    let Some((reached, schreier)) = transversal(group, &gens, cap)? else {
        return Ok(Generation::Unknown { explored: cap });
    };
    if reached != order {
        return Ok(Generation::NotGenerating {
            reason: format!("projected entries generate {reached} of {order} elements"),
        });
    }
    let m = group.space().proj_dim();
    let (rank, index) = lattice::rank_and_index(&schreier, m)?;
    match index {
        Some(1) => Ok(Generation::Generating(GenerationCertificate {
            projected_order: order,
            lattice_rank: rank,
            lattice_index: 1,
        })),
        Some(i) => Ok(Generation::NotGenerating {
            reason: format!("translation sublattice has index {i}"),
        }),
        None => Ok(Generation::NotGenerating {
            reason: format!("translation sublattice has rank {rank} of {m}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{dihedral_factorizations, standard_factorization};

    fn pv(c: &[i64]) -> ProjVector {
        ProjVector::new(c.to_vec())
    }

    fn arms1() -> (ExtendedWeylGroup, Vec<Vertex>) {
        let g = ExtendedWeylGroup::from_arms(&[1]).unwrap();
        let o = g.default_ordering();
        (g, o)
    }

    #[test]
    fn identity_and_reflection_lengths() {
        let (g, _) = arms1();
        let b = reflection_length_bounds(&g, &g.identity(), LengthSearch::default()).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (0, Some(0), true));
        for r in [
            Reflection::new(pv(&[1, 1]), -3),
            Reflection::new(pv(&[0, 1]), 2),
        ] {
            let t = g.reflection_element(&r).unwrap();
            let b = reflection_length_bounds(&g, &t, LengthSearch::default()).unwrap();
            assert_eq!((b.lower, b.upper, b.exact), (1, Some(1), true));
            assert_eq!(b.witness.unwrap().tuple, vec![r]);
        }
    }

    #[test]
    fn coxeter_length_bounds() {
        let (g, o) = arms1();
        let c = g.coxeter_transformation(&o).unwrap();
        let b = reflection_length_bounds(&g, &c, LengthSearch::default()).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (2, Some(3), false));
        assert_eq!(hurwitz::product(&g, &b.witness.unwrap()).unwrap(), c);
        assert_eq!(
            find_factorization(&g, &c, 2, LengthSearch::default()).unwrap(),
            None
        );
    }

    #[test]
    fn below_examples() {
        let (g, o) = arms1();
        let params = LengthSearch {
            k_bound: 8,
            ..LengthSearch::default()
        };
        let w = below(&g, &g.identity(), &o, params).unwrap().unwrap();
        assert_eq!(w.prefix_len, 0);
        let std = standard_factorization(&g, &o).unwrap();
        let t = g.reflection_element(&std.tuple[0]).unwrap();
        assert_eq!(below(&g, &t, &o, params).unwrap().unwrap().prefix_len, 1);
        let t5 = g
            .reflection_element(&Reflection::new(pv(&[1, 0]), 5))
            .unwrap();
        let w = below(&g, &t5, &o, params).unwrap().unwrap();
        assert_eq!(w.prefix_len, 1);
        assert_eq!(w.factorization.len(), 3);
    }

    #[test]
    fn slice_without_moves_is_a_chain() {
        let (g, o) = arms1();
        let budgets = SliceBudgets {
            move_budget: 0,
            k_bound: 2,
            node_cap: 1000,
        };
        let s = interval_slice(&g, &o, budgets).unwrap();
        assert!(s.complete);
        assert_eq!(s.elements.len(), 4);
        assert_eq!(s.covers, vec![[0, 1], [1, 2], [2, 3]]);
        assert!(verify_slice(&g, &o, &s).unwrap());
        assert!(is_partial_order(&order_relation(&s)));
        let dot = export_poset(&g, &s, ExportFormat::Dot).unwrap();
        assert_eq!(dot.matches("->").count(), 3);
        let json = export_poset(&g, &s, ExportFormat::Json).unwrap();
        assert_eq!(serde_json::from_str::<IntervalSlice>(&json).unwrap(), s);
        assert!("svg".parse::<ExportFormat>().is_err());
    }

    #[test]
    fn slices_grow_with_budgets() {
        let (g, o) = arms1();
        let mut prev = 0;
        for (m, k) in [(0, 1), (1, 1), (2, 2), (3, 3)] {
            let b = SliceBudgets {
                move_budget: m,
                k_bound: k,
                node_cap: 100_000,
            };
            let s = interval_slice(&g, &o, b).unwrap();
            assert!(s.elements.len() >= prev);
            prev = s.elements.len();
            assert!(verify_slice(&g, &o, &s).unwrap());
            assert!(is_partial_order(&order_relation(&s)));
        }
    }

    #[test]
    fn truncated_slice_is_flagged() {
        let (g, o) = arms1();
        let b = SliceBudgets {
            move_budget: 4,
            k_bound: 4,
            node_cap: 3,
        };
        assert!(!interval_slice(&g, &o, b).unwrap().complete);
    }

    #[test]
    fn generation_examples() {
        let (g, o) = arms1();
        let std = standard_factorization(&g, &o).unwrap();
        let Generation::Generating(cert) = generates(&g, &std, 10_000).unwrap() else {
            panic!("standard factorization must generate");
        };
        assert_eq!(cert.projected_order, 6);
        assert_eq!((cert.lattice_rank, cert.lattice_index), (2, 1));
        let flat = Factorization::new(vec![
            Reflection::new(pv(&[0, 1]), 0),
            Reflection::new(pv(&[1, 0]), 0),
            Reflection::new(pv(&[1, 0]), 0),
        ]);
        assert!(matches!(
            generates(&g, &flat, 10_000).unwrap(),
            Generation::NotGenerating { .. }
        ));
        let doubled = Factorization::new(vec![
            Reflection::new(pv(&[0, 1]), 0),
            Reflection::new(pv(&[1, 0]), 0),
            Reflection::new(pv(&[1, 0]), 2),
        ]);
        assert!(matches!(
            generates(&g, &doubled, 10_000).unwrap(),
            Generation::NotGenerating { .. }
        ));
        for d in dihedral_factorizations(&g, 2) {
            assert!(matches!(
                generates(&g, &d, 10_000).unwrap(),
                Generation::NotGenerating { .. }
            ));
        }
    }

    #[test]
    fn projected_orders() {
        for (arms, order) in [
            (vec![], 2),
            (vec![1], 6),
            (vec![1, 1], 24),
            (vec![1, 1, 1], 192),
        ] {
            let g = ExtendedWeylGroup::from_arms(&arms).unwrap();
            assert_eq!(projected_order(&g, 100_000).unwrap(), Some(order));
        }
        let wild = ExtendedWeylGroup::from_arms(&[2, 2, 3]).unwrap();
        assert_eq!(projected_order(&wild, 500).unwrap(), None);
        let f = standard_factorization(&wild, &wild.default_ordering()).unwrap();
        assert_eq!(
            generates(&wild, &f, 500).unwrap(),
            Generation::Unknown { explored: 500 }
        );
    }
}
