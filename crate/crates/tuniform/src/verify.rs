//! Executable checks tying disc counts to the exact sequences.
//!
//! Claim map:
//!
//! - `sphere-length-lucas` — sphere lengths on a built disc equal
//!   `t · U_n(t−4, 1)`.
//! - `ring-and-area-formulas` — the ring between consecutive spheres holds
//!   `|S_{n−1}| + |S_n|` triangles (triangle filter and annulus walk agree),
//!   and the cumulative area equals `2·Σ|S_k| − |S_n|`.
//! - `pick-formula` — `area = 2·V_i + V_b − 2` on every truncation radius.
//! - `isoperimetric-ratio-*` — for `t ≥ 7` the ratio `A_n/|S_n|` strictly
//!   increases and `(t−6)·A_n² < (t−2)·|S_n|²`; checked on disc counts and on
//!   the recurrence values. Ratio comparisons are performed on the `U`-term
//!   level where convenient, since the uniform factor `t` multiplying both
//!   numerator and denominator cancels.
//! - `t6-quadratic-*` — `6·A_n = |S_n|²` at `t = 6`.
//! - `t7-fibonacci-*` — at `t = 7` the lengths interleave with the Fibonacci
//!   numbers: `|S_n| = 7·F_{2n}`, `Σ = 7·(F_{2n+1} − 1)`, `|Y_n| = 7·F_{2n−2}`,
//!   `|Z_n| = 7·F_{2n−1}`.
//! - `degenerate-caps-and-periods` — `t = 4` and `t = 5` discs stop at radius
//!   1 and 2, and their formal length sequences have periods 4 and 6.
//! - `ratio-convergence` — `A_n/|S_n|` is within a stated tolerance of
//!   `√((t−2)/(t−6))`, the square root evaluated to at least 50 digits.
//! - `bound-limit-one` — the ratio bound tends to 1 as `t` grows; at
//!   `t = 10⁶` it is below `1 + 10⁻⁵`.
//!
//! Every verdict is an integer comparison; inequalities are decided after
//! clearing denominators, and square-root comparisons by squaring.

use crate::disc::{BuildLimits, DiscError, TriangulatedDisc};
use crate::exact::{ExactRatio, SqrtVal};
use crate::lucas::{lucas_u_seq, LucasParams};
use crate::metrics::{MetricsError, SphereMetrics};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Build(#[from] DiscError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("this check requires t >= {min}, got t = {t}")]
    InvalidT { t: u32, min: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Holds,
    Fails,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub n: u32,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationResult {
    pub claim: String,
    pub t: u32,
    pub n_max: u32,
    pub status: CheckStatus,
    pub counterexample: Option<Counterexample>,
}

impl VerificationResult {
    fn from_counterexample(
        claim: &str,
        t: u32,
        n_max: u32,
        counterexample: Option<Counterexample>,
    ) -> Self {
        let status = if counterexample.is_none() {
            CheckStatus::Holds
        } else {
            CheckStatus::Fails
        };
        VerificationResult {
            claim: claim.to_string(),
            t,
            n_max,
            status,
            counterexample,
        }
    }

    pub fn is_holds(&self) -> bool {
        self.status == CheckStatus::Holds
    }
}

/// Counting data extracted from one built disc; the disc itself is dropped
/// once these are known.
#[derive(Clone, Debug)]
pub struct DiscStats {
    pub t: u32,
    pub radius: u32,
    pub lengths: Vec<u64>,
    pub vertex_counts: Vec<u64>,
    pub sums: Vec<u64>,
    /// Ring triangle counts by distance-span filtering; `None` at `n = 0`.
    pub rings: Vec<Option<u64>>,
    /// Ring triangle counts by the annulus walk.
    pub rings_walk: Vec<Option<u64>>,
    pub areas: Vec<u64>,
    pub y_counts: Vec<u64>,
    pub z_counts: Vec<u64>,
    /// `(interior, boundary, triangles)` per truncation radius `1..=radius`.
    pub picks: Vec<(u64, u64, u64)>,
    /// Structural violations found by the disc validator.
    pub violations: usize,
}

/// Builds the canonical disc and measures it. With `validate` set, the full
/// structural validator runs as well.
pub fn disc_stats(
    t: u32,
    radius: u32,
    limits: &BuildLimits,
    validate: bool,
) -> Result<DiscStats, VerifyError> {
    let disc = TriangulatedDisc::build(t, radius, limits)?;
    let violations = if validate { disc.validate().len() } else { 0 };
    let metrics = SphereMetrics::new(&disc)?;
    let reports = metrics.full_report()?;

    let mut lengths = Vec::with_capacity(reports.len());
    let mut vertex_counts = Vec::with_capacity(reports.len());
    let mut sums = Vec::with_capacity(reports.len());
    let mut rings = Vec::with_capacity(reports.len());
    let mut rings_walk = Vec::with_capacity(reports.len());
    let mut areas = Vec::with_capacity(reports.len());
    let mut y_counts = Vec::with_capacity(reports.len());
    let mut z_counts = Vec::with_capacity(reports.len());
    for r in &reports {
        lengths.push(r.length);
        vertex_counts.push(r.vertex_count);
        sums.push(r.sum_lengths);
        rings.push(r.ring_area);
        rings_walk.push(if r.n == 0 {
            None
        } else {
            Some(metrics.ring_area_walk(r.n)?)
        });
        areas.push(r.cumulative_area);
        y_counts.push(r.y_count);
        z_counts.push(r.z_count);
    }
    let mut picks = Vec::with_capacity(radius as usize);
    let mut interior = 1u64;
    for r in 1..=radius as usize {
        let boundary = vertex_counts[r];
        picks.push((interior, boundary, areas[r]));
        interior += boundary;
    }
    Ok(DiscStats {
        t,
        radius,
        lengths,
        vertex_counts,
        sums,
        rings,
        rings_walk,
        areas,
        y_counts,
        z_counts,
        picks,
        violations,
    })
}

/// Largest radius whose projected disc stays within `max_vertices`,
/// respecting the degenerate caps at `t = 4` and `t = 5`.
pub fn feasible_radius(t: u32, max_vertices: u64) -> u32 {
    assert!(t >= 4);
    let cap = match t {
        4 => 1,
        5 => 2,
        _ => u32::MAX,
    };
    let p = BigInt::from(t as i64 - 4);
    let max = BigInt::from(max_vertices);
    let mut total = BigInt::one();
    let mut u_prev = BigInt::zero();
    let mut u_cur = BigInt::one();
    let mut radius = 0u32;
    while radius < cap {
        let next_total = &total + BigInt::from(t) * &u_cur;
        if next_total > max {
            break;
        }
        total = next_total;
        radius += 1;
        let u_next = &p * &u_cur - &u_prev;
        u_prev = std::mem::replace(&mut u_cur, u_next);
    }
    radius
}

/// One cell of the ratio row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatioCell {
    /// Undefined: no sphere at `n = 0`, or `0/0` in the formal sequences.
    Dash,
    /// Nonzero area over a zero length in the formal sequences.
    Infinity,
    Exact(ExactRatio),
}

/// Sequence rows computed purely from the recurrences, in units of `1/t`.
/// Valid for every `t ≥ 4`; for `t = 4` and `t = 5` the rows beyond the
/// degenerate radius describe no disc but remain well-defined sequences.
#[derive(Clone, Debug)]
pub struct FormalSequences {
    pub t: u32,
    pub n_max: u32,
    /// `|S_n|/t = U_n(t−4, 1)`.
    pub lengths: Vec<BigInt>,
    /// `Σ_{k≤n} |S_k|/t`.
    pub sums: Vec<BigInt>,
    /// `A_{n−1,n}/t = U_{n−1} + U_n`; `None` at `n = 0`.
    pub rings: Vec<Option<BigInt>>,
    /// `A_n/t = 2·Σ − U_n`.
    pub areas: Vec<BigInt>,
    /// `A_n / |S_n|` (the factor `t` cancels).
    pub ratios: Vec<RatioCell>,
}

/// Computes the formal rows for any `t ≥ 4`.
pub fn formal_sequences(t: u32, n_max: u32) -> FormalSequences {
    assert!(t >= 4);
    let u = lucas_u_seq(LucasParams::new(t as i64 - 4, 1), n_max);
    let mut sums = Vec::with_capacity(u.len());
    let mut acc = BigInt::zero();
    for term in &u {
        acc += term;
        sums.push(acc.clone());
    }
    let rings: Vec<Option<BigInt>> = (0..=n_max as usize)
        .map(|n| {
            if n == 0 {
                None
            } else {
                Some(&u[n - 1] + &u[n])
            }
        })
        .collect();
    let areas: Vec<BigInt> = (0..=n_max as usize)
        .map(|n| BigInt::from(2) * &sums[n] - &u[n])
        .collect();
    let ratios: Vec<RatioCell> = (0..=n_max as usize)
        .map(|n| {
            if n == 0 {
                RatioCell::Dash
            } else if u[n].is_zero() {
                if areas[n].is_zero() {
                    RatioCell::Dash
                } else {
                    RatioCell::Infinity
                }
            } else {
                RatioCell::Exact(ExactRatio::new(areas[n].clone(), u[n].clone()))
            }
        })
        .collect();
    FormalSequences {
        t,
        n_max,
        lengths: u,
        sums,
        rings,
        areas,
        ratios,
    }
}

pub fn check_sphere_lucas(stats: &DiscStats) -> VerificationResult {
    let u = lucas_u_seq(LucasParams::new(stats.t as i64 - 4, 1), stats.radius);
    let mut cex = None;
    for n in 0..=stats.radius {
        let expected = BigInt::from(stats.t) * &u[n as usize];
        let got = BigInt::from(stats.lengths[n as usize]);
        if got != expected {
            cex = Some(Counterexample {
                n,
                detail: format!("|S_{n}| = {got}, t·U_{n} = {expected}"),
            });
            break;
        }
    }
    VerificationResult::from_counterexample("sphere-length-lucas", stats.t, stats.radius, cex)
}

pub fn check_area_formulas(stats: &DiscStats) -> VerificationResult {
    let mut cex = None;
    for n in 1..=stats.radius as usize {
        let ring = stats.rings[n].expect("ring defined for n >= 1");
        let walk = stats.rings_walk[n].expect("walk defined for n >= 1");
        let expected_ring = stats.lengths[n - 1] + stats.lengths[n];
        if ring != expected_ring || walk != ring {
            cex = Some(Counterexample {
                n: n as u32,
                detail: format!(
                    "ring filter {ring}, walk {walk}, |S_{}|+|S_{}| = {expected_ring}",
                    n - 1,
                    n
                ),
            });
            break;
        }
        let expected_area = 2 * stats.sums[n] - stats.lengths[n];
        if stats.areas[n] != expected_area {
            cex = Some(Counterexample {
                n: n as u32,
                detail: format!(
                    "A_{n} = {}, 2·Σ − |S_{n}| = {expected_area}",
                    stats.areas[n]
                ),
            });
            break;
        }
    }
    VerificationResult::from_counterexample("ring-and-area-formulas", stats.t, stats.radius, cex)
}

pub fn check_pick(stats: &DiscStats) -> VerificationResult {
    let mut cex = None;
    for (idx, &(interior, boundary, area)) in stats.picks.iter().enumerate() {
        let n = idx as u32 + 1;
        if area != 2 * interior + boundary - 2 {
            cex = Some(Counterexample {
                n,
                detail: format!("area {area} != 2·{interior} + {boundary} − 2"),
            });
            break;
        }
    }
    VerificationResult::from_counterexample("pick-formula", stats.t, stats.radius, cex)
}

fn ratio_cex(
    pairs: &[(BigInt, BigInt)],
    t: u32,
) -> Option<Counterexample> {
    let t_minus_6 = BigInt::from(t as i64 - 6);
    let t_minus_2 = BigInt::from(t as i64 - 2);
    for n in 1..pairs.len() {
        let (area, length) = &pairs[n];
        // strictly increasing from n = 2 on: A_n·|S_{n−1}| > A_{n−1}·|S_n|
        if n >= 2 {
            let (prev_area, prev_length) = &pairs[n - 1];
            if area * prev_length <= prev_area * length {
                return Some(Counterexample {
                    n: n as u32,
                    detail: format!(
                        "ratio not increasing: {area}/{length} vs {prev_area}/{prev_length}"
                    ),
                });
            }
        }
        // (t−6)·A² < (t−2)·|S|²
        if &t_minus_6 * area * area >= &t_minus_2 * length * length {
            return Some(Counterexample {
                n: n as u32,
                detail: format!("(t−6)·{area}² >= (t−2)·{length}²"),
            });
        }
    }
    None
}

/// Disc-count version of the ratio monotonicity and bound check; `t ≥ 7`.
pub fn check_ratio_monotone_bounded_disc(
    stats: &DiscStats,
) -> Result<VerificationResult, VerifyError> {
    if stats.t <= 6 {
        return Err(VerifyError::InvalidT {
            t: stats.t,
            min: 7,
        });
    }
    let pairs: Vec<(BigInt, BigInt)> = (0..=stats.radius as usize)
        .map(|n| (BigInt::from(stats.areas[n]), BigInt::from(stats.lengths[n])))
        .collect();
    Ok(VerificationResult::from_counterexample(
        "isoperimetric-ratio-disc",
        stats.t,
        stats.radius,
        ratio_cex(&pairs, stats.t),
    ))
}

/// Recurrence version over `n ≤ n_max`; `t ≥ 7`.
pub fn check_ratio_monotone_bounded_formal(
    t: u32,
    n_max: u32,
) -> Result<VerificationResult, VerifyError> {
    if t <= 6 {
        return Err(VerifyError::InvalidT { t, min: 7 });
    }
    let f = formal_sequences(t, n_max);
    let pairs: Vec<(BigInt, BigInt)> = (0..=n_max as usize)
        .map(|n| (f.areas[n].clone(), f.lengths[n].clone()))
        .collect();
    Ok(VerificationResult::from_counterexample(
        "isoperimetric-ratio-formal",
        t,
        n_max,
        ratio_cex(&pairs, t),
    ))
}

/// `6·A_n = |S_n|²` on disc counts at `t = 6`, for `1 ≤ n ≤ min(radius, n_max)`.
pub fn check_t6_quadratic_disc(stats: &DiscStats, n_max: u32) -> VerificationResult {
    assert_eq!(stats.t, 6);
    let limit = n_max.min(stats.radius);
    let mut cex = None;
    for n in 1..=limit as usize {
        let area = BigInt::from(stats.areas[n]);
        let length = BigInt::from(stats.lengths[n]);
        if BigInt::from(6) * &area != &length * &length {
            cex = Some(Counterexample {
                n: n as u32,
                detail: format!("6·{area} != {length}²"),
            });
            break;
        }
    }
    VerificationResult::from_counterexample("t6-quadratic-disc", 6, limit, cex)
}

pub fn check_t6_quadratic_formal(n_max: u32) -> VerificationResult {
    let f = formal_sequences(6, n_max);
    let mut cex = None;
    for n in 1..=n_max as usize {
        let area = BigInt::from(6) * &f.areas[n];
        let length = BigInt::from(6) * &f.lengths[n];
        if BigInt::from(6) * area != &length * &length {
            cex = Some(Counterexample {
                n: n as u32,
                detail: format!("6·A_{n} != |S_{n}|²"),
            });
            break;
        }
    }
    VerificationResult::from_counterexample("t6-quadratic-formal", 6, n_max, cex)
}

fn fib_seq(n_max: u32) -> Vec<BigInt> {
    lucas_u_seq(LucasParams::new(1, -1), n_max)
}

/// Fibonacci structure of the `t = 7` disc counts.
pub fn check_t7_fibonacci_disc(stats: &DiscStats) -> VerificationResult {
    assert_eq!(stats.t, 7);
    let fib = fib_seq(2 * stats.radius + 1);
    let seven = BigInt::from(7);
    let mut cex = None;
    for n in 0..=stats.radius as usize {
        let length = BigInt::from(stats.lengths[n]);
        let sum = BigInt::from(stats.sums[n]);
        let area = BigInt::from(stats.areas[n]);
        let f2n = &fib[2 * n];
        let f2n1 = &fib[2 * n + 1];
        if length != &seven * f2n {
            cex = Some(Counterexample {
                n: n as u32,
                detail: format!("|S_{n}| = {length} != 7·F_{}", 2 * n),
            });
            break;
        }
        if sum != &seven * (f2n1 - 1) {
            cex = Some(Counterexample {
                n: n as u32,
                detail: format!("Σ|S| = {sum} != 7·(F_{} − 1)", 2 * n + 1),
            });
            break;
        }
        if area != &seven * (BigInt::from(2) * (f2n1 - 1) - f2n) {
            cex = Some(Counterexample {
                n: n as u32,
                detail: format!("A_{n} = {area} != 7·(2F_{} − 2 − F_{})", 2 * n + 1, 2 * n),
            });
            break;
        }
        if n >= 1 {
            let y = BigInt::from(stats.y_counts[n]);
            let z = BigInt::from(stats.z_counts[n]);
            if y != &seven * &fib[2 * n - 2] || z != &seven * &fib[2 * n - 1] {
                cex = Some(Counterexample {
                    n: n as u32,
                    detail: format!(
                        "(|Y_{n}|, |Z_{n}|) = ({y}, {z}) != 7·(F_{}, F_{})",
                        2 * n - 2,
                        2 * n - 1
                    ),
                });
                break;
            }
        }
    }
    VerificationResult::from_counterexample("t7-fibonacci-disc", 7, stats.radius, cex)
}

/// Fibonacci structure of the formal `t = 7` rows, `n ≤ n_max`.
pub fn check_t7_fibonacci_formal(n_max: u32) -> VerificationResult {
    let f = formal_sequences(7, n_max);
    let fib = fib_seq(2 * n_max + 1);
    let mut cex = None;
    for n in 0..=n_max as usize {
        let ok = f.lengths[n] == fib[2 * n]
            && f.sums[n] == &fib[2 * n + 1] - 1
            && f.areas[n] == BigInt::from(2) * (&fib[2 * n + 1] - 1) - &fib[2 * n]
            && (n == 0
                || (f.lengths[n - 1] == fib[2 * n - 2]
                    && &f.lengths[n] - &f.lengths[n - 1] == fib[2 * n - 1]));
        if !ok {
            cex = Some(Counterexample {
                n: n as u32,
                detail: "formal t=7 row does not interleave with the Fibonacci numbers".into(),
            });
            break;
        }
    }
    VerificationResult::from_counterexample("t7-fibonacci-formal", 7, n_max, cex)
}

/// Degenerate caps and formal periodicity for `t ∈ {4, 5}`.
pub fn check_degenerate(t: u32, n_max: u32) -> VerificationResult {
    assert!(t == 4 || t == 5);
    let (cap, period) = if t == 4 { (1u32, 4usize) } else { (2, 6) };
    let mut cex = None;

    let buildable = TriangulatedDisc::build(t, cap, &BuildLimits::default());
    match buildable {
        Ok(disc) if disc.validate().is_empty() => {}
        Ok(_) => {
            cex = Some(Counterexample {
                n: cap,
                detail: format!("t={t} disc at radius {cap} fails validation"),
            });
        }
        Err(e) => {
            cex = Some(Counterexample {
                n: cap,
                detail: format!("t={t} disc at radius {cap} did not build: {e}"),
            });
        }
    }
    if cex.is_none() {
        match TriangulatedDisc::build(t, cap + 1, &BuildLimits::default()) {
            Err(DiscError::DegenerateRadius { .. }) => {}
            other => {
                cex = Some(Counterexample {
                    n: cap + 1,
                    detail: format!("expected DegenerateRadius at radius {}, got {other:?}", cap + 1),
                });
            }
        }
    }
    if cex.is_none() {
        let f = formal_sequences(t, n_max);
        for n in 0..f.lengths.len().saturating_sub(period) {
            if f.lengths[n] != f.lengths[n + period] {
                cex = Some(Counterexample {
                    n: n as u32,
                    detail: format!("formal lengths not periodic with period {period}"),
                });
                break;
            }
        }
    }
    VerificationResult::from_counterexample("degenerate-caps-and-periods", t, n_max, cex)
}

/// `|A_n/|S_n| − √((t−2)/(t−6))| < tolerance` at `n = n_probe`, from the
/// formal rows, with the square root evaluated to at least 50 digits.
pub fn check_convergence(
    t: u32,
    n_probe: u32,
    tolerance: &BigRational,
) -> Result<VerificationResult, VerifyError> {
    if t <= 6 {
        return Err(VerifyError::InvalidT { t, min: 7 });
    }
    assert!(tolerance.is_positive(), "tolerance must be positive");
    let f = formal_sequences(t, n_probe);
    let n = n_probe as usize;
    let ratio = ExactRatio::new(f.areas[n].clone(), f.lengths[n].clone());
    let target = SqrtVal::new(BigRational::new(
        BigInt::from(t as i64 - 2),
        BigInt::from(t as i64 - 6),
    ));
    let digits = 50;
    let lower = target.lower_bound(digits);
    let upper = target.upper_bound(digits);
    // |ratio − √r| < tol, with √r ∈ [lower, upper]
    let ratio_rat = ratio.as_rational();
    let below = (ratio_rat - lower.as_rational()) < *tolerance;
    let above = (upper.as_rational() - ratio_rat) < *tolerance;
    // the ratio approaches the bound from below
    let under_bound = target.cmp_ratio(&ratio) == std::cmp::Ordering::Greater;
    let cex = if below && above && under_bound {
        None
    } else {
        Some(Counterexample {
            n: n_probe,
            detail: format!(
                "A/S = {} vs √((t−2)/(t−6)) = {}…, tolerance {}",
                ratio.decimal_trunc(12),
                target.decimal_trunc(12),
                tolerance
            ),
        })
    };
    Ok(VerificationResult::from_counterexample(
        "ratio-convergence",
        t,
        n_probe,
        cex,
    ))
}

/// The isoperimetric bound tends to 1: at `t = 10⁶` it is below `1 + 10⁻⁵`,
/// checked as `(t−2)·10¹⁰ < (t−6)·(10⁵+1)²`.
pub fn check_bound_near_one() -> VerificationResult {
    let t: i64 = 1_000_000;
    let lhs = BigInt::from(t - 2) * BigInt::from(10u64.pow(10));
    let rhs = BigInt::from(t - 6) * BigInt::from(100_001u64).pow(2);
    let cex = if lhs < rhs {
        None
    } else {
        Some(Counterexample {
            n: 0,
            detail: format!("{lhs} >= {rhs}"),
        })
    };
    VerificationResult::from_counterexample("bound-limit-one", t as u32, 0, cex)
}

pub const FORMAL_RATIO_RANGE: u32 = 200;
pub const FORMAL_FIBONACCI_RANGE: u32 = 100;
pub const DISC_QUADRATIC_RANGE: u32 = 20;
pub const CONVERGENCE_PROBE: u32 = 30;

/// One-in-a-million default tolerance for the convergence probe.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000))
}

/// All checks that apply to one `t`, on discs capped at `max_vertices` and
/// optionally bounded by `radius_cap`.
pub fn suite_for_t(
    t: u32,
    max_vertices: u64,
    radius_cap: Option<u32>,
) -> Result<Vec<VerificationResult>, VerifyError> {
    let mut radius = feasible_radius(t, max_vertices);
    if let Some(cap) = radius_cap {
        radius = radius.min(cap);
    }
    let limits = BuildLimits {
        max_vertices,
        max_radius: radius.max(crate::disc::DEFAULT_MAX_RADIUS),
    };
    let stats = disc_stats(t, radius, &limits, true)?;
    let mut results = Vec::new();
    if stats.violations > 0 {
        results.push(VerificationResult::from_counterexample(
            "disc-structure",
            t,
            radius,
            Some(Counterexample {
                n: radius,
                detail: format!("{} structural violations", stats.violations),
            }),
        ));
    }
    results.push(check_sphere_lucas(&stats));
    results.push(check_area_formulas(&stats));
    results.push(check_pick(&stats));
    if t == 6 {
        results.push(check_t6_quadratic_disc(&stats, DISC_QUADRATIC_RANGE));
        results.push(check_t6_quadratic_formal(FORMAL_RATIO_RANGE));
    }
    if t >= 7 {
        results.push(check_ratio_monotone_bounded_disc(&stats)?);
        results.push(check_ratio_monotone_bounded_formal(t, FORMAL_RATIO_RANGE)?);
        results.push(check_convergence(t, CONVERGENCE_PROBE, &default_tolerance())?);
    }
    if t == 7 {
        results.push(check_t7_fibonacci_disc(&stats));
        results.push(check_t7_fibonacci_formal(FORMAL_FIBONACCI_RANGE));
    }
    if t == 4 || t == 5 {
        results.push(check_degenerate(t, 3 * FORMAL_FIBONACCI_RANGE));
    }
    Ok(results)
}

/// Runs [`suite_for_t`] over several `t` values, fanning out over at most
/// `jobs` threads, plus the `t`-independent limit check. Result order is
/// deterministic and follows the input order.
pub fn run_suite(
    ts: &[u32],
    max_vertices: u64,
    radius_cap: Option<u32>,
    jobs: usize,
) -> Result<Vec<VerificationResult>, VerifyError> {
    let jobs = jobs.max(1).min(ts.len().max(1));
    let mut slots: Vec<Option<Result<Vec<VerificationResult>, VerifyError>>> =
        (0..ts.len()).map(|_| None).collect();
    if jobs <= 1 {
        for (i, &t) in ts.iter().enumerate() {
            slots[i] = Some(suite_for_t(t, max_vertices, radius_cap));
        }
    } else {
        let next = AtomicUsize::new(0);
        let produced: Vec<(usize, Result<Vec<VerificationResult>, VerifyError>)> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..jobs)
                    .map(|_| {
                        let next = &next;
                        scope.spawn(move || {
                            let mut produced = Vec::new();
                            loop {
                                let i = next.fetch_add(1, AtomicOrdering::Relaxed);
                                if i >= ts.len() {
                                    break;
                                }
                                produced.push((i, suite_for_t(ts[i], max_vertices, radius_cap)));
                            }
                            produced
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("suite worker panicked"))
                    .collect()
            });
        for (i, res) in produced {
            slots[i] = Some(res);
        }
    }
    let mut out = Vec::new();
    for slot in slots {
        out.extend(slot.expect("slot filled")?);
    }
    out.push(check_bound_near_one());
    Ok(out)
}

/// Sphere-length check run directly on a (possibly tampered) disc, staying
/// graceful on inconsistent input.
pub fn check_sphere_lucas_on_disc(
    disc: &TriangulatedDisc,
) -> Result<VerificationResult, VerifyError> {
    let metrics = SphereMetrics::new(disc)?;
    let max = metrics.max_distance();
    let u = lucas_u_seq(LucasParams::new(disc.t() as i64 - 4, 1), max);
    let mut cex = None;
    for n in 0..=max {
        let expected = BigInt::from(disc.t()) * &u[n as usize];
        let got = BigInt::from(metrics.sphere_length(n).expect("in range"));
        if got != expected {
            cex = Some(Counterexample {
                n,
                detail: format!("|S_{n}| = {got}, t·U_{n} = {expected}"),
            });
            break;
        }
    }
    if cex.is_none() && max != disc.radius() {
        cex = Some(Counterexample {
            n: max,
            detail: format!("max distance {max} differs from radius {}", disc.radius()),
        });
    }
    Ok(VerificationResult::from_counterexample(
        "sphere-length-lucas",
        disc.t(),
        max,
        cex,
    ))
}
