//! Extended Coxeter–Dynkin diagrams: a center vertex `1`, a doubled vertex
//! `1*` joined to it by a bond of form value 2, and `r` arms of lengths
//! `p_1, …, p_r` attached to both `1` and `1*`.
//!
//! Basis ordering used everywhere: index 0 is `α_1`, index 1 is `α_{1*}`, then
//! the arm vertices arm by arm, outward along each arm.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::IntMatrix;
use crate::error::{Error, Result};
use crate::linalg;
use crate::space::IntVector;

/// The arm-length tuple of an extended Coxeter–Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct DiagramSpec {
    arms: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    arms: Vec<i64>,
}

impl TryFrom<RawSpec> for DiagramSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        DiagramSpec::new(raw.arms)
    }
}

impl From<DiagramSpec> for RawSpec {
    fn from(spec: DiagramSpec) -> Self {
        RawSpec {
            arms: spec.arms.iter().map(|&p| p as i64).collect(),
        }
    }
}

impl DiagramSpec {
    pub fn new(arms: impl IntoIterator<Item = i64>) -> Result<Self> {
        let arms = arms
            .into_iter()
            .map(|p| {
                if p >= 1 {
                    Ok(p as usize)
                } else {
                    Err(Error::InvalidDiagram(format!(
                        "arm length {p} must be at least 1"
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { arms })
    }

    /// Parses a comma-separated arm list; the empty string is the diagram
    /// without arms.
    pub fn parse_arms(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self { arms: vec![] });
        }
        let arms = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::InvalidDiagram(format!("bad arm length {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(arms)
    }

    pub fn arms(&self) -> &[usize] {
        &self.arms
    }

    /// Number of vertices `|B| = 2 + Σ p_i`.
    pub fn rank(&self) -> usize {
        2 + self.arms.iter().sum::<usize>()
    }

    fn arm_offset(&self, arm: usize) -> usize {
        2 + self.arms[..arm - 1].iter().sum::<usize>()
    }

    pub fn index_of(&self, v: Vertex) -> Result<usize> {
        match v {
            Vertex::Center => Ok(0),
            Vertex::Star => Ok(1),
            Vertex::Arm { arm, pos } => {
                if arm == 0 || arm > self.arms.len() || pos == 0 || pos > self.arms[arm - 1] {
                    return Err(Error::InvalidDiagram(format!("no vertex {v} in {self}")));
                }
                Ok(self.arm_offset(arm) + pos - 1)
            }
        }
    }

    pub fn vertex_at(&self, index: usize) -> Option<Vertex> {
        match index {
            0 => Some(Vertex::Center),
            1 => Some(Vertex::Star),
            _ => {
                let mut offset = 2;
                for (i, &p) in self.arms.iter().enumerate() {
                    if index < offset + p {
                        return Some(Vertex::Arm {
                            arm: i + 1,
                            pos: index - offset + 1,
                        });
                    }
                    offset += p;
                }
                None
            }
        }
    }

    /// Arm vertices in basis order.
    pub fn arm_vertices(&self) -> Vec<Vertex> {
        self.arms
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |pos| Vertex::Arm { arm: i + 1, pos }))
            .collect()
    }
}

impl fmt::Display for DiagramSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arms(")?;
        for (i, p) in self.arms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A vertex of the diagram, labelled as in the diagram (arms and positions
/// are 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    Center,
    Star,
    Arm { arm: usize, pos: usize },
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Center => write!(f, "1"),
            Vertex::Star => write!(f, "1*"),
            Vertex::Arm { arm, pos } => write!(f, "({arm},{pos})"),
        }
    }
}

/// Gram matrix of the bilinear form on the simple roots.
pub fn build_gram(spec: &DiagramSpec) -> IntMatrix {
    let n = spec.rank();
    let mut g = IntMatrix::zeros(n);
    for i in 0..n {
        g.set(i, i, 2);
    }
    g.set(0, 1, 2);
    g.set(1, 0, 2);
    let mut offset = 2;
    for &p in spec.arms() {
        for hub in [0, 1] {
            g.set(hub, offset, -1);
            g.set(offset, hub, -1);
        }
        for j in 0..p - 1 {
            g.set(offset + j, offset + j + 1, -1);
            g.set(offset + j + 1, offset + j, -1);
        }
        offset += p;
    }
    g
}

/// Numbers of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Serialize for Signature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.plus, self.minus, self.zero].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [plus, minus, zero] = <[usize; 3]>::deserialize(d)?;
        Ok(Signature { plus, minus, zero })
    }
}

/// Exact inertia of a symmetric integer matrix.
pub fn inertia(g: &IntMatrix) -> Result<Signature> {
    if !g.is_symmetric() {
        return Err(Error::Precondition(
            "inertia requires a symmetric matrix".into(),
        ));
    }
    let (plus, minus, zero) = linalg::symmetric_inertia(g);
    Ok(Signature { plus, minus, zero })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeylType {
    Domestic,
    Tubular,
    Wild,
}

impl WeylType {
    pub fn from_signature(sig: Signature) -> Option<Self> {
        match (sig.minus, sig.zero) {
            (0, 1) => Some(WeylType::Domestic),
            (0, 2) => Some(WeylType::Tubular),
            (1, 1) => Some(WeylType::Wild),
            _ => None,
        }
    }
}

impl fmt::Display for WeylType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeylType::Domestic => "domestic",
            WeylType::Tubular => "tubular",
            WeylType::Wild => "wild",
        })
    }
}

pub fn signature(spec: &DiagramSpec) -> Signature {
    let (plus, minus, zero) = linalg::symmetric_inertia(&build_gram(spec));
    Signature { plus, minus, zero }
}

pub fn classify(spec: &DiagramSpec) -> WeylType {
    let sig = signature(spec);
    WeylType::from_signature(sig)
        .unwrap_or_else(|| panic!("unexpected signature {sig:?} for {spec}"))
}

/// `a = α_{1*} − α_1`, which spans the radical for domestic and wild type.
pub fn radical_vector(spec: &DiagramSpec) -> Result<IntVector> {
    if classify(spec) == WeylType::Tubular {
        return Err(Error::UnsupportedTubular);
    }
    let mut a = vec![0; spec.rank()];
    a[0] = -1;
    a[1] = 1;
    Ok(IntVector::new(a))
}

/// Combinatorial type rule for star diagrams, stated in terms of the arm
/// lengths alone.
pub fn combinatorial_type(spec: &DiagramSpec) -> WeylType {
    let arms = spec.arms();
    match arms.len() {
        0..=2 => WeylType::Domestic,
        3 => {
            let sum: BigRational = arms
                .iter()
                .map(|&p| BigRational::new(1.into(), (p as i64 + 1).into()))
                .sum();
            let one = BigRational::from_integer(1.into());
            match sum.cmp(&one) {
                std::cmp::Ordering::Greater => WeylType::Domestic,
                std::cmp::Ordering::Equal => WeylType::Tubular,
                std::cmp::Ordering::Less => WeylType::Wild,
            }
        }
        4 if arms.iter().all(|&p| p == 1) => WeylType::Tubular,
        _ => WeylType::Wild,
    }
}
