//! Checker paths as configurations of a six-vertex model.
//!
//! Draw the steps of a checker path as marked diagonal segments. Around each
//! lattice point the four diagonal segments then form one of six local
//! pictures, each carrying a complex weight; the product of the weights over
//! all points is the unitary-normalized summand of the path. Only the
//! single-path sector is produced here.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{Amplitude, LatticePoint};
use crate::paths::{enumerate_free_paths, CheckerPath, LastStep, StepSign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// No marked segment touches the point.
    Empty,
    /// Entered from the lower left, left to the upper right.
    ThroughRight,
    /// Entered from the lower right, left to the upper left.
    ThroughLeft,
    /// Entered moving right, left moving left.
    TurnRightToLeft,
    /// Entered moving left, left moving right.
    TurnLeftToRight,
    /// All four segments marked. Needs two paths, so single-path
    /// classification never yields it.
    DoubleOccupied,
}

impl VertexKind {
    /// `1` for empty and doubly occupied points, `1/sqrt(1 + m^2 eps^2)`
    /// for straight passages and `-i m eps / sqrt(1 + m^2 eps^2)` for turns.
    pub fn weight(self, m_eps: f64) -> Amplitude {
        let norm = (1.0 + m_eps * m_eps).sqrt();
        match self {
            VertexKind::Empty | VertexKind::DoubleOccupied => Complex64::new(1.0, 0.0),
            VertexKind::ThroughRight | VertexKind::ThroughLeft => Complex64::new(1.0 / norm, 0.0),
            VertexKind::TurnRightToLeft | VertexKind::TurnLeftToRight => {
                Complex64::new(0.0, -m_eps / norm)
            }
        }
    }

    pub fn is_empty(self) -> bool {
        self == VertexKind::Empty
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexConfig {
    pub kind: VertexKind,
    pub weight: Amplitude,
}

impl VertexConfig {
    pub fn new(kind: VertexKind, m_eps: f64) -> Self {
        Self {
            kind,
            weight: kind.weight(m_eps),
        }
    }
}

/// Inclusive rectangle of lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub col_min: i64,
    pub col_max: i64,
    pub time_min: i64,
    pub time_max: i64,
}

impl Window {
    /// Smallest window holding every point of `path`.
    pub fn around(path: &CheckerPath) -> Self {
        let points = path.points();
        Self {
            col_min: points.iter().map(|p| p.col).min().expect("non-empty"),
            col_max: points.iter().map(|p| p.col).max().expect("non-empty"),
            time_min: path.start().time,
            time_max: path.end().time,
        }
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        (self.col_min..=self.col_max).contains(&p.col)
            && (self.time_min..=self.time_max).contains(&p.time)
    }

    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        (self.time_min..=self.time_max).flat_map(move |time| {
            (self.col_min..=self.col_max).map(move |col| LatticePoint::new(col, time))
        })
    }
}

/// Marked segments at a point: the step that arrived and the one that left.
#[derive(Debug, Default, Clone, Copy)]
struct Incidence {
    arrived: Option<StepSign>,
    departed: Option<StepSign>,
    count: usize,
}

/// Assigns a vertex configuration to every point of `window` except the two
/// endpoints of `path`, which are not vertices of the model.
pub fn classify_vertices(
    path: &CheckerPath,
    window: &Window,
    m_eps: f64,
) -> Result<BTreeMap<LatticePoint, VertexConfig>> {
    if let Some(&point) = path.points().iter().find(|p| !window.contains(**p)) {
        return Err(Error::PathOutsideWindow { point });
    }
    let mut incidence: BTreeMap<LatticePoint, Incidence> = BTreeMap::new();
    for (pair, sign) in path.points().windows(2).zip(path.steps()) {
        let from = incidence.entry(pair[0]).or_default();
        from.departed = Some(sign);
        from.count += 1;
        let to = incidence.entry(pair[1]).or_default();
        to.arrived = Some(sign);
        to.count += 1;
    }
    let (start, end) = (path.start(), path.end());
    let mut out = BTreeMap::new();
    for point in window.points() {
        if point == start || point == end {
            continue;
        }
        let kind = match incidence.get(&point) {
            None => VertexKind::Empty,
            Some(inc) if inc.count > 2 => return Err(Error::DoubleOccupancy { point }),
            Some(inc) => match (inc.arrived, inc.departed) {
                (Some(StepSign::Plus), Some(StepSign::Plus)) => VertexKind::ThroughRight,
                (Some(StepSign::Minus), Some(StepSign::Minus)) => VertexKind::ThroughLeft,
                (Some(StepSign::Plus), Some(StepSign::Minus)) => VertexKind::TurnRightToLeft,
                (Some(StepSign::Minus), Some(StepSign::Plus)) => VertexKind::TurnLeftToRight,
                _ => return Err(Error::DoubleOccupancy { point }),
            },
        };
        out.insert(point, VertexConfig::new(kind, m_eps));
    }
    Ok(out)
}

/// Product of the vertex weights over the window spanned by `path`.
pub fn product_weight(path: &CheckerPath, m_eps: f64) -> Amplitude {
    classify_vertices(path, &Window::around(path), m_eps)
        .expect("a single checker path in its own window")
        .values()
        .map(|v| v.weight)
        .product()
}

/// Sum of [`product_weight`] over all paths from the origin (first step to
/// the right) to `(x, t)` ending with a `sign` step.
pub fn vertex_weight_sum(x: i64, t: i64, m_eps: f64, sign: StepSign) -> Amplitude {
    enumerate_free_paths(LatticePoint::new(x, t), sign.into())
        .iter()
        .map(|p| product_weight(p, m_eps))
        .sum()
}

/// Every free path from the origin ending at time `t`, any final column or step.
pub fn free_paths_at_time(t: i64) -> Vec<CheckerPath> {
    (-t..=t)
        .flat_map(|x| enumerate_free_paths(LatticePoint::new(x, t), LastStep::Any))
        .collect()
}
