//! Hurwitz action of braid groups on reflection factorizations, and
//! budgeted searches for braid words connecting two factorizations.
//!
//! Letter `i > 0` is `σ_i: (t_i, t_{i+1}) ↦ (t_{i+1}, t_{i+1} t_i t_{i+1})`,
//! letter `−i` its inverse `(t_i, t_{i+1}) ↦ (t_i t_{i+1} t_i, t_i)`. Words
//! act left to right.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::diagram::Vertex;
use crate::error::{Error, Result};
use crate::group::{ExtendedWeylGroup, GroupElement, Reflection};
use crate::space::ProjVector;

/// An ordered tuple of reflections.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factorization {
    pub tuple: Vec<Reflection>,
}

impl Factorization {
    pub fn new(tuple: Vec<Reflection>) -> Self {
        Self { tuple }
    }

    pub fn len(&self) -> usize {
        self.tuple.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuple.is_empty()
    }

    /// Canonical key: each reflection's projected coordinates followed by
    /// its `k`, concatenated.
    pub fn key(&self) -> Box<[i64]> {
        self.tuple
            .iter()
            .flat_map(|r| r.root.coords().iter().copied().chain([r.k]))
            .collect()
    }

    fn from_key(key: &[i64], m: usize) -> Self {
        Self {
            tuple: key
                .chunks(m + 1)
                .map(|c| Reflection::new(ProjVector::new(c[..m].to_vec()), c[m]))
                .collect(),
        }
    }
}

/// A word in the braid generators: `±i` stands for `σ_i^{±1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(letters: Vec<i32>) -> Self {
        Self { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }
}

fn require_valid(group: &ExtendedWeylGroup, f: &Factorization) -> Result<()> {
    for r in &f.tuple {
        group.reflection_element(r)?;
    }
    Ok(())
}

/// Product `t_1 ⋯ t_n` as a matrix.
pub fn product(group: &ExtendedWeylGroup, f: &Factorization) -> Result<GroupElement> {
    let mats = f
        .tuple
        .iter()
        .map(|r| group.reflection_element(r))
        .collect::<Result<Vec<_>>>()?;
    group.product(&mats)
}

/// Flat-array move engine shared by the public operations and the searches.
struct Mover<'g> {
    group: &'g ExtendedWeylGroup,
    m: usize,
}

impl<'g> Mover<'g> {
    fn new(group: &'g ExtendedWeylGroup) -> Self {
        Self {
            group,
            m: group.space().proj_dim(),
        }
    }

    fn block(&self, i: usize) -> std::ops::Range<usize> {
        let w = self.m + 1;
        i * w..(i + 1) * w
    }

    /// Label of `s_by · s_t · s_by`, i.e. of `s_{s_by(t)}`.
    fn conj(&self, t: &[i64], by: &[i64]) -> Result<Vec<i64>> {
        let m = self.m;
        let g = self.group.space().proj_gram();
        let gt = g.apply(&t[..m])?;
        let c = by[..m]
            .iter()
            .zip(&gt)
            .try_fold(0i64, |acc, (&a, &b)| arith::add(acc, arith::mul(a, b)?))?;
        let mut out = arith::sub_scaled(t, c, by)?;
        if out[..m].iter().all(|&x| x <= 0) {
            for x in &mut out {
                *x = arith::neg(*x)?;
            }
        }
        Ok(out)
    }

    fn apply(&self, state: &[i64], letter: i32) -> Result<Box<[i64]>> {
        let n = state.len() / (self.m + 1);
        let i = letter.unsigned_abs() as usize;
        if i == 0 || i >= n {
            return Err(Error::MoveOutOfRange { letter, len: n });
        }
        let (l, r) = (self.block(i - 1), self.block(i));
        let (ti, tj) = (&state[l.clone()], &state[r.clone()]);
        let (new_l, new_r) = if letter > 0 {
            (tj.to_vec(), self.conj(ti, tj)?)
        } else {
            (self.conj(tj, ti)?, ti.to_vec())
        };
        let mut out: Box<[i64]> = state.into();
        out[l].copy_from_slice(&new_l);
        out[r].copy_from_slice(&new_r);
        Ok(out)
    }
}

pub fn apply_move(
    group: &ExtendedWeylGroup,
    f: &Factorization,
    letter: i32,
) -> Result<Factorization> {
    require_valid(group, f)?;
    let mover = Mover::new(group);
    Ok(Factorization::from_key(
        &mover.apply(&f.key(), letter)?,
        mover.m,
    ))
}

pub fn apply_braid(
    group: &ExtendedWeylGroup,
    f: &Factorization,
    w: &BraidWord,
) -> Result<Factorization> {
    require_valid(group, f)?;
    let mover = Mover::new(group);
    let mut state = f.key();
    for &letter in &w.letters {
        state = mover.apply(&state, letter)?;
    }
    Ok(Factorization::from_key(&state, mover.m))
}

/// `(s_v for v in ordering, s_{α_1}, s_{α_1 + a})`.
pub fn standard_factorization(
    group: &ExtendedWeylGroup,
    ordering: &[Vertex],
) -> Result<Factorization> {
    group.coxeter_transformation(ordering)?;
    let space = group.space();
    let mut tuple = ordering
        .iter()
        .map(|&v| {
            Ok(Reflection::new(
                space.proj_basis_vector(group.proj_index_of(v)?),
                0,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    tuple.push(Reflection::new(space.proj_basis_vector(0), 0));
    tuple.push(Reflection::new(space.proj_basis_vector(0), 1));
    Ok(Factorization::new(tuple))
}

/// Applies `steps` uniformly random letters drawn from a seeded generator.
pub fn random_walk(
    group: &ExtendedWeylGroup,
    f: &Factorization,
    steps: usize,
    seed: u64,
) -> Result<(Factorization, BraidWord)> {
    if steps == 0 {
        return Ok((f.clone(), BraidWord::default()));
    }
    let n = f.len();
    if n < 2 {
        return Err(Error::Precondition(
            "random walk needs at least two entries".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = (0..steps)
        .map(|_| {
            let i = rng.gen_range(1..n) as i32;
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    let word = BraidWord::new(letters);
    Ok((apply_braid(group, f, &word)?, word))
}

/// Result of [`connect`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ConnectOutcome {
    Connected { letters: Vec<i32>, nodes: usize },
    Exhausted { nodes: usize },
}

impl ConnectOutcome {
    pub fn word(&self) -> Option<BraidWord> {
        match self {
            ConnectOutcome::Connected { letters, .. } => Some(BraidWord::new(letters.clone())),
            ConnectOutcome::Exhausted { .. } => None,
        }
    }

    pub fn nodes(&self) -> usize {
        match self {
            ConnectOutcome::Connected { nodes, .. } | ConnectOutcome::Exhausted { nodes } => *nodes,
        }
    }
}

const NO_PARENT: u32 = u32::MAX;

struct Node {
    state: Box<[i64]>,
    parent: u32,
    letter: i32,
}

/// Min-heap of `(potential, state, node index)`.
type Frontier = BinaryHeap<Reverse<(i64, Box<[i64]>, u32)>>;

/// One direction of the bidirectional search, pulled toward `target`.
struct Side {
    nodes: Vec<Node>,
    index: FxHashMap<Box<[i64]>, u32>,
    heap: Frontier,
    target: Vec<Vec<i64>>,
    deviation: FxHashMap<(usize, Vec<i64>), i64>,
    expanded: usize,
}

impl Side {
    fn new(start: Box<[i64]>, target: &[i64], m: usize) -> Self {
        let target = target.chunks(m + 1).map(|c| c[..m].to_vec()).collect();
        let mut side = Side {
            nodes: Vec::new(),
            index: FxHashMap::default(),
            heap: BinaryHeap::new(),
            target,
            deviation: FxHashMap::default(),
            expanded: 0,
        };
        side.index.insert(start.clone(), 0);
        side.nodes.push(Node {
            state: start,
            parent: NO_PARENT,
            letter: 0,
        });
        side
    }

    /// `Σ |k_i| + Σ ℓ_S̄(t̄_i ḡ_i)` against the target tuple `g`.
    fn potential(&mut self, group: &ExtendedWeylGroup, m: usize, state: &[i64]) -> Result<i64> {
        let mut total = 0i64;
        for (i, block) in state.chunks(m + 1).enumerate() {
            total = arith::add(total, block[m].abs())?;
            let root = &block[..m];
            if root == self.target[i].as_slice() {
                continue;
            }
            let key = (i, root.to_vec());
            let dev = match self.deviation.get(&key) {
                Some(&d) => d,
                None => {
                    let cur = group.projected_reflection(&ProjVector::new(root.to_vec()))?;
                    let tgt =
                        group.projected_reflection(&ProjVector::new(self.target[i].clone()))?;
                    let d = group.coxeter_length(&cur.mul(&tgt)?)? as i64;
                    self.deviation.insert(key, d);
                    d
                }
            };
            total = arith::add(total, dev)?;
        }
        Ok(total)
    }

    fn path(&self, mut idx: u32) -> Vec<i32> {
        let mut letters = Vec::new();
        while self.nodes[idx as usize].parent != NO_PARENT {
            letters.push(self.nodes[idx as usize].letter);
            idx = self.nodes[idx as usize].parent;
        }
        letters.reverse();
        letters
    }
}

/// Searches for a braid word carrying `f` to `g`.
///
/// Bidirectional best-first search over the move graph: each side keeps a
/// visited map keyed by the canonical tuple and expands its frontier in
/// order of the potential toward the opposite endpoint (ties broken by the
/// tuple key). The side with fewer expansions goes next. `budget` bounds
/// the total number of expanded nodes. A returned word has been replayed
/// against `f` and `g`.
pub fn connect(
    group: &ExtendedWeylGroup,
    f: &Factorization,
    g: &Factorization,
    budget: usize,
) -> Result<ConnectOutcome> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch(f.len(), g.len()));
    }
    if product(group, f)? != product(group, g)? {
        return Err(Error::ProductMismatch);
    }
    if f == g {
        return Ok(ConnectOutcome::Connected {
            letters: vec![],
            nodes: 0,
        });
    }
    let mover = Mover::new(group);
    let m = mover.m;
    let n = f.len();
    let (fk, gk) = (f.key(), g.key());
    let mut sides = [Side::new(fk.clone(), &gk, m), Side::new(gk.clone(), &fk, m)];
    for side in &mut sides {
        let start = side.nodes[0].state.clone();
        let p = side.potential(group, m, &start)?;
        side.heap.push(Reverse((p, start, 0)));
    }
    let letters: Vec<i32> = (1..n as i32).flat_map(|i| [i, -i]).collect();
    let mut nodes = 0usize;
    while nodes < budget {
        let s = if sides[0].expanded <= sides[1].expanded {
            0
        } else {
            1
        };
        let s = if sides[s].heap.is_empty() { 1 - s } else { s };
        let Some(Reverse((_, state, idx))) = sides[s].heap.pop() else {
            break;
        };
        sides[s].expanded += 1;
        nodes += 1;
        for &letter in &letters {
            let next = mover.apply(&state, letter)?;
            if let Some(&other) = sides[1 - s].index.get(&next) {
                let mut here = sides[s].path(idx);
                here.push(letter);
                let there = BraidWord::new(sides[1 - s].path(other)).inverse().letters;
                here.extend(there);
                let word = if s == 0 {
                    BraidWord::new(here)
                } else {
                    BraidWord::new(here).inverse()
                };
                if apply_braid(group, f, &word)? != *g {
                    return Err(Error::Internal("connecting word failed replay".into()));
                }
                return Ok(ConnectOutcome::Connected {
                    letters: word.letters,
                    nodes,
                });
            }
            if sides[s].index.contains_key(&next) {
                continue;
            }
            let id = sides[s].nodes.len() as u32;
            sides[s].index.insert(next.clone(), id);
            sides[s].nodes.push(Node {
                state: next.clone(),
                parent: idx,
                letter,
            });
            let p = sides[s].potential(group, m, &next)?;
            sides[s].heap.push(Reverse((p, next, id)));
        }
    }
    Ok(ConnectOutcome::Exhausted { nodes })
}

/// Length-2 factorizations `((α_1, k), (α_1, k+1))` of `s_{α_1} s_{α_{1*}}`
/// for `|k| ≤ k_bound`.
pub fn dihedral_factorizations(group: &ExtendedWeylGroup, k_bound: i64) -> Vec<Factorization> {
    let alpha1 = group.space().proj_basis_vector(0);
    (-k_bound..=k_bound)
        .map(|k| {
            Factorization::new(vec![
                Reflection::new(alpha1.clone(), k),
                Reflection::new(alpha1.clone(), k + 1),
            ])
        })
        .collect()
}

/// All factorizations within `move_budget` moves of `f`, sorted. Fails with
/// [`Error::Exhausted`] once more than `node_cap` tuples have been seen.
pub fn orbit_ball(
    group: &ExtendedWeylGroup,
    f: &Factorization,
    move_budget: usize,
    node_cap: usize,
) -> Result<Vec<Factorization>> {
    let (ball, complete) = orbit_ball_truncated(group, f, move_budget, node_cap)?;
    if !complete {
        return Err(Error::Exhausted { nodes: ball.len() });
    }
    Ok(ball)
}

/// Like [`orbit_ball`], but stops at `node_cap` tuples and returns the
/// partial ball with a completeness flag.
pub fn orbit_ball_truncated(
    group: &ExtendedWeylGroup,
    f: &Factorization,
    move_budget: usize,
    node_cap: usize,
) -> Result<(Vec<Factorization>, bool)> {
    require_valid(group, f)?;
    let mover = Mover::new(group);
    let n = f.len();
    let start = f.key();
    let mut seen: FxHashSet<Box<[i64]>> = FxHashSet::default();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut complete = true;
    'bfs: while let Some((state, depth)) = queue.pop_front() {
        if depth == move_budget {
            continue;
        }
        for i in 1..n as i32 {
            for letter in [i, -i] {
                let next = mover.apply(&state, letter)?;
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= node_cap {
                    complete = false;
                    break 'bfs;
                }
                seen.insert(next.clone());
                queue.push_back((next, depth + 1));
            }
        }
    }
    let mut out: Vec<Factorization> = seen
        .into_iter()
        .map(|k| Factorization::from_key(&k, mover.m))
        .collect();
    out.sort();
    Ok((out, complete))
}
