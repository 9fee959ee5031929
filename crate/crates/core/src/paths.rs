//! Brute-force path sums.
//!
//! Everything here enumerates paths explicitly and is meant as ground truth
//! for small lattices. Enumeration is depth-first over step directions with
//! pruning, so the cost grows like `2^(t - tau)` for unrestricted paths and
//! more slowly inside a narrow strip. Spans up to 24 time steps are practical.

use num_complex::Complex64;

use crate::model::{Amplitude, LatticePoint, Model};

/// Direction of a unit diagonal step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepSign {
    /// Step `(-eps, eps)`.
    Minus,
    /// Step `(eps, eps)`.
    Plus,
}

impl StepSign {
    pub fn delta(self) -> i64 {
        match self {
            StepSign::Minus => -1,
            StepSign::Plus => 1,
        }
    }

    fn from_delta(delta: i64) -> Option<Self> {
        match delta {
            -1 => Some(StepSign::Minus),
            1 => Some(StepSign::Plus),
            _ => None,
        }
    }
}

/// Constraint on the direction of the final step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LastStep {
    Minus,
    Plus,
    Any,
}

impl LastStep {
    fn admits(self, sign: StepSign) -> bool {
        match self {
            LastStep::Any => true,
            LastStep::Minus => sign == StepSign::Minus,
            LastStep::Plus => sign == StepSign::Plus,
        }
    }
}

impl From<StepSign> for LastStep {
    fn from(sign: StepSign) -> Self {
        match sign {
            StepSign::Minus => LastStep::Minus,
            StepSign::Plus => LastStep::Plus,
        }
    }
}

/// A lattice path whose every step is `(+-eps, eps)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckerPath {
    points: Vec<LatticePoint>,
    turns: usize,
}

impl CheckerPath {
    /// Builds a path from consecutive columns starting at `start_time`.
    /// Returns `None` unless every step changes the column by exactly one.
    pub fn from_columns(start_time: i64, columns: &[i64]) -> Option<Self> {
        let points = columns
            .iter()
            .enumerate()
            .map(|(i, &col)| LatticePoint::new(col, start_time + i as i64))
            .collect();
        Self::from_points(points)
    }

    /// Returns `None` unless the points form a checker path with at least one step.
    pub fn from_points(points: Vec<LatticePoint>) -> Option<Self> {
        if points.len() < 2 {
            return None;
        }
        let mut prev: Option<StepSign> = None;
        let mut turns = 0;
        for pair in points.windows(2) {
            if pair[1].time != pair[0].time + 1 {
                return None;
            }
            let sign = StepSign::from_delta(pair[1].col - pair[0].col)?;
            if prev.is_some_and(|p| p != sign) {
                turns += 1;
            }
            prev = Some(sign);
        }
        Some(Self { points, turns })
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn start(&self) -> LatticePoint {
        self.points[0]
    }

    pub fn end(&self) -> LatticePoint {
        self.points[self.points.len() - 1]
    }

    /// Pairs of orthogonal consecutive steps.
    pub fn turns(&self) -> usize {
        self.turns
    }

    /// Interior points, i.e. all points but the first and the last.
    pub fn layovers(&self) -> usize {
        self.points.len() - 2
    }

    pub fn steps(&self) -> impl Iterator<Item = StepSign> + '_ {
        self.points
            .windows(2)
            .map(|w| StepSign::from_delta(w[1].col - w[0].col).expect("checked at construction"))
    }

    pub fn first_step(&self) -> StepSign {
        self.steps().next().expect("at least one step")
    }

    pub fn last_step(&self) -> StepSign {
        self.steps().last().expect("at least one step")
    }

    /// For each interior point, whether the path turns there.
    pub fn turn_flags(&self) -> Vec<bool> {
        let steps: Vec<StepSign> = self.steps().collect();
        steps.windows(2).map(|w| w[0] != w[1]).collect()
    }
}

/// Where interior points of a path may lie.
#[derive(Debug, Clone, Copy)]
enum Region {
    /// Columns `1..=n`, the film.
    Strip(i64),
    Unrestricted,
}

impl Region {
    fn contains(self, col: i64) -> bool {
        match self {
            Region::Strip(n) => 0 < col && col <= n,
            Region::Unrestricted => true,
        }
    }
}

/// Depth-first search over step signs. `visit` receives the column sequence
/// and the turn count of each path, in lexicographic order of columns.
fn walk<F: FnMut(&[i64], usize)>(
    start: LatticePoint,
    end: LatticePoint,
    region: Region,
    first: Option<StepSign>,
    last: LastStep,
    mut visit: F,
) {
    let span = end.time - start.time;
    let reach = end.col - start.col;
    if span <= 0 || reach.abs() > span || (span + reach) % 2 != 0 {
        return;
    }
    let mut columns = Vec::with_capacity(span as usize + 1);
    columns.push(start.col);
    let search = Search {
        end_col: end.col,
        region,
        first,
        last,
    };
    search.descend(&mut columns, span, None, 0, &mut visit);
}

struct Search {
    end_col: i64,
    region: Region,
    first: Option<StepSign>,
    last: LastStep,
}

impl Search {
    fn descend<F: FnMut(&[i64], usize)>(
        &self,
        columns: &mut Vec<i64>,
        remaining: i64,
        prev: Option<StepSign>,
        turns: usize,
        visit: &mut F,
    ) {
        let here = *columns.last().expect("path has a start");
        for sign in [StepSign::Minus, StepSign::Plus] {
            if prev.is_none() && self.first.is_some_and(|f| f != sign) {
                continue;
            }
            let next = here + sign.delta();
            let turns = turns + usize::from(prev.is_some_and(|p| p != sign));
            if remaining == 1 {
                if next == self.end_col && self.last.admits(sign) {
                    columns.push(next);
                    visit(columns, turns);
                    columns.pop();
                }
                continue;
            }
            if !self.region.contains(next) || (self.end_col - next).abs() > remaining - 1 {
                continue;
            }
            columns.push(next);
            self.descend(columns, remaining - 1, Some(sign), turns, visit);
            columns.pop();
        }
    }
}

/// All checker paths from `start` to `end` whose interior points lie in the
/// film columns `1..=N`. The endpoints themselves are unconstrained.
/// Unreachable endpoints (wrong parity, too far) give an empty list.
pub fn enumerate_checker_paths(
    start: LatticePoint,
    end: LatticePoint,
    model: &Model,
    last: LastStep,
) -> Vec<CheckerPath> {
    let mut out = Vec::new();
    walk(
        start,
        end,
        Region::Strip(model.columns() as i64),
        None,
        last,
        |cols, turns| {
            out.push(path_from(start.time, cols, turns));
        },
    );
    out
}

/// All checker paths from the origin to `end` with no strip constraint and
/// first step `(eps, eps)`.
pub fn enumerate_free_paths(end: LatticePoint, last: LastStep) -> Vec<CheckerPath> {
    let mut out = Vec::new();
    let origin = LatticePoint::new(0, 0);
    walk(
        origin,
        end,
        Region::Unrestricted,
        Some(StepSign::Plus),
        last,
        |cols, turns| {
            out.push(path_from(0, cols, turns));
        },
    );
    out
}

fn path_from(start_time: i64, columns: &[i64], turns: usize) -> CheckerPath {
    let points = columns
        .iter()
        .enumerate()
        .map(|(i, &col)| LatticePoint::new(col, start_time + i as i64))
        .collect();
    CheckerPath { points, turns }
}

fn turn_weight(m_eps: f64) -> Complex64 {
    Complex64::new(0.0, -m_eps)
}

/// Summand `(-i m eps)^turns / (1 + i m eps)^layovers` of the strip sum.
pub fn strip_summand(turns: usize, layovers: usize, m_eps: f64) -> Amplitude {
    turn_weight(m_eps).powu(turns as u32) / Complex64::new(1.0, m_eps).powu(layovers as u32)
}

/// Summand `(-i m eps)^turns / (1 + m^2 eps^2)^(layovers / 2)` of the
/// unitary-normalized sum.
pub fn conventional_summand(turns: usize, layovers: usize, m_eps: f64) -> Amplitude {
    turn_weight(m_eps).powu(turns as u32) / (1.0 + m_eps * m_eps).powf(layovers as f64 / 2.0)
}

/// Fixed-emission amplitude `a_sign(x, t; tau)`: the sum over checker paths
/// from `(0, tau)` to `(x, t)` inside the film, ending with a `sign` step.
pub fn amplitude_checker(x: i64, t: i64, tau: i64, model: &Model, sign: StepSign) -> Amplitude {
    let m_eps = model.m_eps();
    let mut sum = Amplitude::new(0.0, 0.0);
    let start = LatticePoint::new(0, tau);
    let end = LatticePoint::new(x, t);
    walk(
        start,
        end,
        Region::Strip(model.columns() as i64),
        None,
        sign.into(),
        |cols, turns| {
            sum += strip_summand(turns, cols.len() - 2, m_eps);
        },
    );
    sum
}

/// Partial sum of `(-i m eps)^l(s)` over light paths `s` from `(0, tau)` to
/// `(x, t)` with at most `max_scatterings` scatterings.
///
/// Each light path is a checker path whose interior points are repeated
/// `n_i` times, with `n_i >= 1` at turns and `n_i >= 0` elsewhere; every
/// admissible multiplicity vector is visited individually.
pub fn amplitude_light_truncated(
    x: i64,
    t: i64,
    tau: i64,
    model: &Model,
    sign: StepSign,
    max_scatterings: usize,
) -> Amplitude {
    let scatter = turn_weight(model.m_eps());
    let powers: Vec<Complex64> = (0..=max_scatterings)
        .map(|s| scatter.powu(s as u32))
        .collect();
    let start = LatticePoint::new(0, tau);
    let end = LatticePoint::new(x, t);
    let mut sum = Amplitude::new(0.0, 0.0);
    for path in enumerate_checker_paths(start, end, model, sign.into()) {
        let flags = path.turn_flags();
        sum += sum_multiplicities(&flags, 0, max_scatterings, &powers);
    }
    sum
}

fn sum_multiplicities(
    flags: &[bool],
    used: usize,
    budget: usize,
    powers: &[Complex64],
) -> Complex64 {
    let Some((&is_turn, rest)) = flags.split_first() else {
        return powers[used];
    };
    let min = usize::from(is_turn);
    (used + min..=budget)
        .map(|total| sum_multiplicities(rest, total, budget, powers))
        .sum()
}

/// Conventional quantum-walk amplitude: the sum over unrestricted checker
/// paths from the origin (first step to the right) to `(x, t)` ending with
/// a `sign` step, normalized by `sqrt(1 + m^2 eps^2)` per layover.
pub fn amplitude_free(x: i64, t: i64, m_eps: f64, sign: StepSign) -> Amplitude {
    let mut sum = Amplitude::new(0.0, 0.0);
    let origin = LatticePoint::new(0, 0);
    let end = LatticePoint::new(x, t);
    walk(
        origin,
        end,
        Region::Unrestricted,
        Some(StepSign::Plus),
        sign.into(),
        |cols, turns| {
            sum += conventional_summand(turns, cols.len() - 2, m_eps);
        },
    );
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn model(columns: usize, m_eps: f64) -> Model {
        Model::with_columns(1.0, m_eps, 1.0, columns).unwrap()
    }

    fn columns_of(path: &CheckerPath) -> Vec<i64> {
        path.points().iter().map(|p| p.col).collect()
    }

    /// Independent enumeration: all 2^span sign sequences, filtered.
    fn all_sequences(
        start: LatticePoint,
        end: LatticePoint,
        n: i64,
        last: LastStep,
    ) -> Vec<Vec<i64>> {
        let span = (end.time - start.time) as u32;
        let mut out = Vec::new();
        for bits in 0..(1u64 << span) {
            let mut cols = vec![start.col];
            for k in 0..span {
                // most significant bit first so that the order is lexicographic
                let up = bits >> (span - 1 - k) & 1 == 1;
                cols.push(cols.last().unwrap() + if up { 1 } else { -1 });
            }
            let interior_ok = cols[1..cols.len() - 1].iter().all(|&c| 0 < c && c <= n);
            let last_sign = if cols[cols.len() - 1] > cols[cols.len() - 2] {
                StepSign::Plus
            } else {
                StepSign::Minus
            };
            if *cols.last().unwrap() == end.col && interior_ok && last.admits(last_sign) {
                out.push(cols);
            }
        }
        out
    }

    #[test]
    fn strip_excludes_paths_leaving_the_film() {
        let paths = enumerate_checker_paths(
            LatticePoint::new(0, 0),
            LatticePoint::new(1, 3),
            &model(2, 0.1),
            LastStep::Any,
        );
        assert_eq!(paths.len(), 1);
        assert_eq!(columns_of(&paths[0]), vec![0, 1, 2, 1]);
        assert_eq!(paths[0].turns(), 1);
        assert_eq!(paths[0].layovers(), 2);

        let none = enumerate_checker_paths(
            LatticePoint::new(0, 0),
            LatticePoint::new(1, 3),
            &model(1, 0.1),
            LastStep::Any,
        );
        assert!(none.is_empty());
    }

    #[test]
    fn single_step_path() {
        let paths = enumerate_checker_paths(
            LatticePoint::new(0, 0),
            LatticePoint::new(1, 1),
            &model(1, 0.1),
            LastStep::Plus,
        );
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].layovers(), 0);
        assert_eq!(paths[0].turns(), 0);
    }

    #[test]
    fn parity_mismatch_is_empty() {
        let m = model(3, 0.1);
        assert!(enumerate_checker_paths(
            LatticePoint::new(0, 0),
            LatticePoint::new(2, 3),
            &m,
            LastStep::Any
        )
        .is_empty());
        assert!(enumerate_checker_paths(
            LatticePoint::new(0, 0),
            LatticePoint::new(5, 3),
            &m,
            LastStep::Any
        )
        .is_empty());
        assert!(enumerate_checker_paths(
            LatticePoint::new(0, 3),
            LatticePoint::new(1, 2),
            &m,
            LastStep::Any
        )
        .is_empty());
    }

    #[test]
    fn matches_exhaustive_sign_sequences() {
        for n in 1..=4 {
            let m = model(n, 0.2);
            for t in 1..=10 {
                for x in -1..=(n as i64 + 2) {
                    for last in [LastStep::Minus, LastStep::Plus, LastStep::Any] {
                        let start = LatticePoint::new(0, 0);
                        let end = LatticePoint::new(x, t);
                        let got: Vec<Vec<i64>> = enumerate_checker_paths(start, end, &m, last)
                            .iter()
                            .map(columns_of)
                            .collect();
                        assert_eq!(
                            got,
                            all_sequences(start, end, n as i64, last),
                            "n={n} x={x} t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn path_counts_grow_with_the_strip() {
        for t in 2..=12 {
            for x in 0..=3 {
                let counts: Vec<usize> = (1..=6)
                    .map(|n| {
                        enumerate_checker_paths(
                            LatticePoint::new(0, 0),
                            LatticePoint::new(x, t),
                            &model(n, 0.1),
                            LastStep::Any,
                        )
                        .len()
                    })
                    .collect();
                assert!(
                    counts.windows(2).all(|w| w[0] <= w[1]),
                    "x={x} t={t}: {counts:?}"
                );
            }
        }
    }

    #[test]
    fn checker_amplitude_examples() {
        let m = model(2, 0.1);
        let straight = amplitude_checker(2, 2, 0, &m, StepSign::Plus);
        assert_abs_diff_eq!(straight.re, 0.990_099_009_900_990_1, epsilon = 1e-15);
        assert_abs_diff_eq!(straight.im, -0.099_009_900_990_099_01, epsilon = 1e-15);

        let bounce = amplitude_checker(0, 2, 0, &model(1, 0.1), StepSign::Minus);
        assert_abs_diff_eq!(bounce.re, -0.009_900_990_099_009_901, epsilon = 1e-15);
        assert_abs_diff_eq!(bounce.im, -0.099_009_900_990_099_01, epsilon = 1e-15);
    }

    #[test]
    fn nothing_leaves_the_back_face_moving_left() {
        for n in 1..=4 {
            let m = model(n, 0.3);
            for tau in -6..0 {
                for t in (tau + 1)..=4 {
                    assert_eq!(
                        amplitude_checker(n as i64, t, tau, &m, StepSign::Minus),
                        Amplitude::new(0.0, 0.0)
                    );
                }
            }
        }
    }

    #[test]
    fn checker_amplitude_is_time_translation_invariant() {
        let m = model(3, 0.4);
        for t in 1..=9 {
            for x in 0..=4 {
                for tau in [-5, -2, 0, 3] {
                    for sign in [StepSign::Minus, StepSign::Plus] {
                        let shifted = amplitude_checker(x, t + tau, tau, &m, sign);
                        let base = amplitude_checker(x, t, 0, &m, sign);
                        assert_eq!(shifted, base);
                    }
                }
            }
        }
    }

    #[test]
    fn massless_amplitude_lives_on_the_straight_path() {
        let m = model(4, 0.0);
        for t in 1..=8 {
            for x in 0..=6 {
                for sign in [StepSign::Minus, StepSign::Plus] {
                    let expected = if x == t && sign == StepSign::Plus && t <= 5 {
                        1.0
                    } else {
                        0.0
                    };
                    assert_eq!(
                        amplitude_checker(x, t, 0, &m, sign),
                        Amplitude::new(expected, 0.0),
                        "x={x} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn truncated_light_sum_examples() {
        let m = model(1, 0.1);
        assert_eq!(
            amplitude_light_truncated(0, 2, 0, &m, StepSign::Minus, 0),
            Amplitude::new(0.0, 0.0)
        );
        let one = amplitude_light_truncated(0, 2, 0, &m, StepSign::Minus, 1);
        assert_abs_diff_eq!(one.re, 0.0, epsilon = 1e-17);
        assert_abs_diff_eq!(one.im, -0.1, epsilon = 1e-17);
        // geometric series -0.1i * sum (-0.1i)^j
        let deep = amplitude_light_truncated(0, 2, 0, &m, StepSign::Minus, 40);
        let limit = Complex64::new(0.0, -0.1) / Complex64::new(1.0, 0.1);
        assert!((deep - limit).norm() < 1e-15);
    }

    #[test]
    fn truncated_light_sum_converges_to_checker_sum() {
        let m = model(2, 0.2);
        for (x, t) in [(0, 2), (2, 2), (1, 3), (3, 3), (0, 4), (2, 4)] {
            for sign in [StepSign::Minus, StepSign::Plus] {
                let exact = amplitude_checker(x, t, 0, &m, sign);
                let approx = amplitude_light_truncated(x, t, 0, &m, sign, 26);
                assert!((exact - approx).norm() < 1e-12, "x={x} t={t}");
            }
        }
    }

    #[test]
    fn free_amplitude_examples() {
        assert_eq!(
            amplitude_free(1, 1, 0.1, StepSign::Plus),
            Amplitude::new(1.0, 0.0)
        );
        let bounce = amplitude_free(0, 2, 0.1, StepSign::Minus);
        assert_abs_diff_eq!(bounce.re, 0.0, epsilon = 1e-17);
        assert_abs_diff_eq!(bounce.im, -0.1 / 1.01f64.sqrt(), epsilon = 1e-16);
        assert_abs_diff_eq!(bounce.im, -0.099_503_7, epsilon = 1e-7);
    }

    #[test]
    fn free_walk_is_normalized() {
        for t in 1..=10 {
            for m_eps in [0.0, 0.3, 0.7] {
                let total: f64 = (-t..=t)
                    .flat_map(|x| {
                        [StepSign::Minus, StepSign::Plus]
                            .map(|s| amplitude_free(x, t, m_eps, s).norm_sqr())
                    })
                    .sum();
                assert_abs_diff_eq!(total, 1.0, epsilon = 1e-13);
            }
        }
        assert_eq!(
            enumerate_free_paths(LatticePoint::new(1, 3), LastStep::Any).len(),
            2
        );
        let count: usize = (-3..=3)
            .map(|x| enumerate_free_paths(LatticePoint::new(x, 3), LastStep::Any).len())
            .sum();
        assert_eq!(count, 4);
    }

    #[test]
    fn path_construction_rejects_non_unit_steps() {
        assert!(CheckerPath::from_columns(0, &[0, 2]).is_none());
        assert!(CheckerPath::from_columns(0, &[0]).is_none());
        assert!(
            CheckerPath::from_points(vec![LatticePoint::new(0, 0), LatticePoint::new(1, 2)])
                .is_none()
        );
        let p = CheckerPath::from_columns(0, &[0, 1, 0, 1, 2]).unwrap();
        assert_eq!(p.turns(), 2);
        assert_eq!(p.turn_flags(), vec![true, true, false]);
        assert_eq!(p.first_step(), StepSign::Plus);
        assert_eq!(p.last_step(), StepSign::Plus);
    }
}
