//! Sphere, ring, and area measurement on a disc by direct graph counting.
//!
//! Everything here is derived from breadth-first distances and the raw edge
//! and triangle sets, not from the construction bookkeeping, so these counts
//! serve as an independent check of the layered builder. The ring area is
//! counted two ways: by filtering triangles on their distance span, and by
//! walking the annulus between two spheres edge by edge, counting one
//! triangle per inter-sphere edge; a report is only produced when the two
//! counts agree.

use crate::disc::TriangulatedDisc;
use crate::exact::ExactRatio;
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::VecDeque;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("vertex {vertex} is unreachable from the center")]
    Disconnected { vertex: u32 },
    #[error("n = {n} is outside the measured range (radius {radius})")]
    RadiusOutOfRange { n: u32, radius: u32 },
    #[error("inconsistent disc: {what}")]
    Inconsistent { what: String },
}

/// Per-radius measurements of one disc.
#[derive(Clone, Debug, Serialize)]
pub struct SphereReport {
    pub n: u32,
    /// `|S_n|`: edges spanned by vertices at distance `n`; 0 at `n = 0`.
    pub length: u64,
    pub vertex_count: u64,
    pub y_count: u64,
    pub z_count: u64,
    /// Triangles between distances `n − 1` and `n`; absent at `n = 0`.
    pub ring_area: Option<u64>,
    /// Triangles entirely within distance `n`.
    pub cumulative_area: u64,
    /// `Σ_{k ≤ n} |S_k|`.
    pub sum_lengths: u64,
    /// `A_n / |S_n|`; absent at `n = 0`.
    pub ratio: Option<ExactRatio>,
}

/// Breadth-first analysis of a disc, computed once per disc.
pub struct SphereMetrics<'a> {
    disc: &'a TriangulatedDisc,
    dist: Vec<u32>,
    max_dist: u32,
    vertex_counts: Vec<u64>,
    edge_lengths: Vec<u64>,
    ring_triangles: Vec<u64>,
    /// Triangles whose distance span is not two consecutive values.
    irregular_triangles: u64,
    y_counts: Vec<u64>,
    z_counts: Vec<u64>,
    untagged_counts: Vec<u64>,
    first_at: Vec<u32>,
}

impl<'a> SphereMetrics<'a> {
    /// Runs the breadth-first search and aggregates all per-distance counts.
    pub fn new(disc: &'a TriangulatedDisc) -> Result<Self, MetricsError> {
        let n = disc.vertex_count();
        let source = disc.layers()[0].first().copied().unwrap_or(0);
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        dist[source as usize] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            for &w in disc.neighbors(v) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        if let Some(vertex) = dist.iter().position(|&d| d == u32::MAX) {
            return Err(MetricsError::Disconnected {
                vertex: vertex as u32,
            });
        }

        let max_dist = dist.iter().copied().max().unwrap_or(0);
        let buckets = max_dist as usize + 1;

        let mut vertex_counts = vec![0u64; buckets];
        let mut first_at = vec![u32::MAX; buckets];
        for (v, &d) in dist.iter().enumerate() {
            vertex_counts[d as usize] += 1;
            if first_at[d as usize] == u32::MAX {
                first_at[d as usize] = v as u32;
            }
        }

        let mut edge_lengths = vec![0u64; buckets];
        for &(u, v) in disc.edges() {
            if dist[u as usize] == dist[v as usize] {
                edge_lengths[dist[u as usize] as usize] += 1;
            }
        }

        let mut ring_triangles = vec![0u64; buckets];
        let mut irregular_triangles = 0u64;
        for &(a, b, c) in disc.triangles() {
            let da = dist[a as usize];
            let db = dist[b as usize];
            let dc = dist[c as usize];
            let lo = da.min(db).min(dc);
            let hi = da.max(db).max(dc);
            if hi == lo + 1 {
                ring_triangles[hi as usize] += 1;
            } else {
                irregular_triangles += 1;
            }
        }

        let mut y_counts = vec![0u64; buckets];
        let mut z_counts = vec![0u64; buckets];
        let mut untagged_counts = vec![0u64; buckets];
        for v in 0..n as u32 {
            let d = dist[v as usize];
            if d == 0 {
                continue;
            }
            let below: Vec<u32> = disc
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| dist[w as usize] == d - 1)
                .collect();
            match below.len() {
                1 => z_counts[d as usize] += 1,
                2 if disc.has_edge(below[0], below[1]) => y_counts[d as usize] += 1,
                _ => untagged_counts[d as usize] += 1,
            }
        }

        Ok(SphereMetrics {
            disc,
            dist,
            max_dist,
            vertex_counts,
            edge_lengths,
            ring_triangles,
            irregular_triangles,
            y_counts,
            z_counts,
            untagged_counts,
            first_at,
        })
    }

    /// Graph distance from the center for every vertex.
    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    pub fn max_distance(&self) -> u32 {
        self.max_dist
    }

    /// True when every breadth-first distance equals the construction layer.
    pub fn distances_match_layers(&self) -> bool {
        self.dist
            .iter()
            .enumerate()
            .all(|(v, &d)| self.disc.layer(v as u32) == d)
    }

    fn check_range(&self, n: u32, lowest: u32) -> Result<(), MetricsError> {
        if n < lowest || n > self.max_dist {
            return Err(MetricsError::RadiusOutOfRange {
                n,
                radius: self.max_dist,
            });
        }
        Ok(())
    }

    /// Number of edges whose endpoints are both at distance `n`.
    pub fn sphere_length(&self, n: u32) -> Result<u64, MetricsError> {
        self.check_range(n, 0)?;
        Ok(self.edge_lengths[n as usize])
    }

    pub fn sphere_vertex_count(&self, n: u32) -> Result<u64, MetricsError> {
        self.check_range(n, 0)?;
        Ok(self.vertex_counts[n as usize])
    }

    /// Triangles with vertices at distances `n − 1` and `n`, by filtering the
    /// triangle set.
    pub fn ring_area(&self, n: u32) -> Result<u64, MetricsError> {
        self.check_range(n, 1)?;
        Ok(self.ring_triangles[n as usize])
    }

    /// Triangles between distances `n − 1` and `n`, counted by walking the
    /// annulus: each step crosses one edge joining the two spheres and counts
    /// the triangle on its far side, until the walk returns to the starting
    /// edge.
    pub fn ring_area_walk(&self, n: u32) -> Result<u64, MetricsError> {
        self.check_range(n, 1)?;
        let v0 = self.first_at[n as usize];
        let u0 = self
            .disc
            .neighbors(v0)
            .iter()
            .copied()
            .find(|&w| self.dist[w as usize] == n - 1)
            .ok_or_else(|| MetricsError::Inconsistent {
                what: format!("vertex {v0} at distance {n} has no neighbour at distance {}", n - 1),
            })?;
        let start = (u0, v0);
        let first_common = self.disc.common_neighbors(u0, v0);
        if first_common.len() != 2 {
            return Err(MetricsError::Inconsistent {
                what: format!(
                    "edge ({u0},{v0}) between spheres lies in {} triangles",
                    first_common.len()
                ),
            });
        }
        let mut prev_third = first_common[1];
        let (mut u, mut v) = start;
        let mut count = 0u64;
        let cap = self.disc.triangle_count() as u64 + 4;
        loop {
            let common = self.disc.common_neighbors(u, v);
            if common.len() != 2 {
                return Err(MetricsError::Inconsistent {
                    what: format!("edge ({u},{v}) between spheres lies in {} triangles", common.len()),
                });
            }
            let w = if common[0] == prev_third {
                common[1]
            } else {
                common[0]
            };
            count += 1;
            let dw = self.dist[w as usize];
            if dw == n {
                prev_third = v;
                v = w;
            } else if dw == n - 1 {
                prev_third = u;
                u = w;
            } else {
                return Err(MetricsError::Inconsistent {
                    what: format!("triangle across spheres reaches distance {dw}"),
                });
            }
            if (u, v) == start {
                break;
            }
            if count > cap {
                return Err(MetricsError::Inconsistent {
                    what: format!("ring walk at n = {n} did not close"),
                });
            }
        }
        Ok(count)
    }

    /// Triangles entirely within distance `n`.
    pub fn cumulative_area(&self, n: u32) -> Result<u64, MetricsError> {
        self.check_range(n, 0)?;
        Ok(self.ring_triangles[..=n as usize].iter().sum())
    }

    /// `(y, z)` partition of the sphere at distance `n`: a vertex is `Y` when
    /// its two inner neighbours span an edge, `Z` when it has exactly one
    /// inner neighbour.
    pub fn yz_partition(&self, n: u32) -> Result<(u64, u64), MetricsError> {
        self.check_range(n, 1)?;
        Ok((self.y_counts[n as usize], self.z_counts[n as usize]))
    }

    /// One report per distance, with every internal cross-check enforced:
    /// distances equal layers, both ring counts agree, the sphere partition
    /// is exhaustive, and the sphere lengths match the vertex counts.
    pub fn full_report(&self) -> Result<Vec<SphereReport>, MetricsError> {
        if !self.distances_match_layers() {
            return Err(MetricsError::Inconsistent {
                what: "breadth-first distances differ from construction layers".into(),
            });
        }
        if self.irregular_triangles > 0 {
            return Err(MetricsError::Inconsistent {
                what: format!(
                    "{} triangles do not span two consecutive spheres",
                    self.irregular_triangles
                ),
            });
        }
        let mut reports = Vec::with_capacity(self.max_dist as usize + 1);
        let mut sum_lengths = 0u64;
        let mut cumulative = 0u64;
        for n in 0..=self.max_dist {
            let idx = n as usize;
            let length = self.edge_lengths[idx];
            let vertex_count = self.vertex_counts[idx];
            if n == 0 {
                if length != 0 || vertex_count != 1 {
                    return Err(MetricsError::Inconsistent {
                        what: format!("sphere 0 has {vertex_count} vertices and {length} edges"),
                    });
                }
            } else if length != vertex_count {
                return Err(MetricsError::Inconsistent {
                    what: format!(
                        "sphere {n} has {vertex_count} vertices but {length} edges"
                    ),
                });
            }
            if self.untagged_counts[idx] != 0 {
                return Err(MetricsError::Inconsistent {
                    what: format!(
                        "{} vertices at distance {n} are neither Y nor Z",
                        self.untagged_counts[idx]
                    ),
                });
            }
            let ring_area = if n == 0 {
                None
            } else {
                let filtered = self.ring_triangles[idx];
                let walked = self.ring_area_walk(n)?;
                if filtered != walked {
                    return Err(MetricsError::Inconsistent {
                        what: format!(
                            "ring {n}: triangle filter counts {filtered}, walk counts {walked}"
                        ),
                    });
                }
                cumulative += filtered;
                Some(filtered)
            };
            sum_lengths += length;
            let ratio = if n >= 1 && length > 0 {
                Some(ExactRatio::new(
                    BigInt::from(cumulative),
                    BigInt::from(length),
                ))
            } else {
                None
            };
            reports.push(SphereReport {
                n,
                length,
                vertex_count,
                y_count: self.y_counts[idx],
                z_count: self.z_counts[idx],
                ring_area,
                cumulative_area: cumulative,
                sum_lengths,
                ratio,
            });
        }
        Ok(reports)
    }
}

fn row_decimal(ratio: &ExactRatio) -> String {
    match ratio.terminating_digits() {
        Some(0) => ratio.decimal_trunc(0),
        Some(d) if d <= 6 => ratio.decimal_trunc(d),
        _ => ratio.decimal_trunc(6),
    }
}

/// CSV rows `(t, n, length, sum, ring, area, ratio_exact, ratio_decimal)`.
pub fn reports_to_csv(t: u32, reports: &[SphereReport]) -> String {
    let mut out = String::from("t,n,length,sum,ring,area,ratio_exact,ratio_decimal\n");
    for r in reports {
        let ring = r.ring_area.map(|x| x.to_string()).unwrap_or_default();
        let (exact, decimal) = match &r.ratio {
            Some(ratio) => (ratio.to_string(), row_decimal(ratio)),
            None => (String::new(), String::new()),
        };
        writeln!(
            out,
            "{t},{},{},{},{ring},{},{exact},{decimal}",
            r.n, r.length, r.sum_lengths, r.cumulative_area
        )
        .expect("string write");
    }
    out
}

/// JSON rows with the same fields as the CSV serialization.
pub fn reports_to_json(t: u32, reports: &[SphereReport]) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            serde_json::json!({
                "t": t,
                "n": r.n,
                "length": r.length,
                "vertex_count": r.vertex_count,
                "y_count": r.y_count,
                "z_count": r.z_count,
                "sum": r.sum_lengths,
                "ring": r.ring_area,
                "area": r.cumulative_area,
                "ratio_exact": r.ratio.as_ref().map(|x| x.to_string()),
                "ratio_decimal": r.ratio.as_ref().map(row_decimal),
            })
        })
        .collect();
    serde_json::json!({ "t": t, "rows": rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::{BuildLimits, TriangulatedDisc, VertexTag};

    fn metrics_for(t: u32, radius: u32) -> (TriangulatedDisc, Vec<SphereReport>) {
        let disc = TriangulatedDisc::build(t, radius, &BuildLimits::default()).unwrap();
        let reports = {
            let m = SphereMetrics::new(&disc).unwrap();
            m.full_report().unwrap()
        };
        (disc, reports)
    }

    #[test]
    fn bfs_matches_layers() {
        let disc = TriangulatedDisc::build(7, 4, &BuildLimits::default()).unwrap();
        let m = SphereMetrics::new(&disc).unwrap();
        assert!(m.distances_match_layers());
        assert_eq!(m.distances()[0], 0);
        let v1 = disc.layers()[1][0];
        assert_eq!(m.distances()[v1 as usize], 1);
        let v4 = disc.layers()[4][0];
        assert_eq!(m.distances()[v4 as usize], 4);
    }

    #[test]
    fn sphere_lengths() {
        let disc = TriangulatedDisc::build(7, 5, &BuildLimits::default()).unwrap();
        let m = SphereMetrics::new(&disc).unwrap();
        assert_eq!(m.sphere_length(0).unwrap(), 0);
        let expected = [0u64, 1, 3, 8, 21, 55];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(m.sphere_length(n as u32).unwrap(), 7 * e);
        }
        assert_eq!(m.sphere_length(5).unwrap(), 385);

        let disc = TriangulatedDisc::build(9, 4, &BuildLimits::default()).unwrap();
        let m = SphereMetrics::new(&disc).unwrap();
        assert_eq!(m.sphere_length(4).unwrap(), 1035);

        assert!(matches!(
            m.sphere_length(5),
            Err(MetricsError::RadiusOutOfRange { n: 5, radius: 4 })
        ));
    }

    #[test]
    fn ring_areas() {
        let disc = TriangulatedDisc::build(6, 2, &BuildLimits::default()).unwrap();
        let m = SphereMetrics::new(&disc).unwrap();
        assert_eq!(m.ring_area(1).unwrap(), 6);
        assert_eq!(m.ring_area_walk(1).unwrap(), 6);

        let disc = TriangulatedDisc::build(7, 4, &BuildLimits::default()).unwrap();
        let m = SphereMetrics::new(&disc).unwrap();
        assert_eq!(m.ring_area(4).unwrap(), 203); // 7·29
        assert_eq!(m.ring_area_walk(4).unwrap(), 203);

        let disc = TriangulatedDisc::build(10, 3, &BuildLimits::default()).unwrap();
        let m = SphereMetrics::new(&disc).unwrap();
        assert_eq!(m.ring_area(3).unwrap(), 410); // 10·41
        assert_eq!(m.ring_area_walk(3).unwrap(), 410);
    }

    #[test]
    fn cumulative_areas() {
        let disc = TriangulatedDisc::build(8, 4, &BuildLimits::default()).unwrap();
        let m = SphereMetrics::new(&disc).unwrap();
        assert_eq!(m.cumulative_area(0).unwrap(), 0);
        assert_eq!(m.cumulative_area(4).unwrap(), 768); // 8·96

        let disc = TriangulatedDisc::build(9, 5, &BuildLimits::default()).unwrap();
        let m = SphereMetrics::new(&disc).unwrap();
        assert_eq!(m.cumulative_area(5).unwrap(), 7569); // 9·841
    }

    #[test]
    fn yz_partitions() {
        let disc = TriangulatedDisc::build(7, 3, &BuildLimits::default()).unwrap();
        let m = SphereMetrics::new(&disc).unwrap();
        assert_eq!(m.yz_partition(1).unwrap(), (0, 7));
        assert_eq!(m.yz_partition(3).unwrap(), (21, 35));

        let disc = TriangulatedDisc::build(6, 2, &BuildLimits::default()).unwrap();
        let m = SphereMetrics::new(&disc).unwrap();
        assert_eq!(m.yz_partition(2).unwrap(), (6, 6));
    }

    #[test]
    fn partition_matches_construction_tags() {
        for (t, radius) in [(6u32, 4u32), (7, 4), (9, 3), (12, 2)] {
            let disc = TriangulatedDisc::build(t, radius, &BuildLimits::default()).unwrap();
            let m = SphereMetrics::new(&disc).unwrap();
            for n in 1..=radius {
                let (y, z) = m.yz_partition(n).unwrap();
                let tag_y = disc.layers()[n as usize]
                    .iter()
                    .filter(|&&v| disc.tag(v) == VertexTag::Y)
                    .count() as u64;
                let tag_z = disc.layers()[n as usize]
                    .iter()
                    .filter(|&&v| disc.tag(v) == VertexTag::Z)
                    .count() as u64;
                assert_eq!((y, z), (tag_y, tag_z), "t={t} n={n}");
            }
        }
    }

    #[test]
    fn full_report_small_tables() {
        let (_, reports) = metrics_for(6, 3);
        let lengths: Vec<u64> = reports.iter().map(|r| r.length / 6).collect();
        assert_eq!(lengths, vec![0, 1, 2, 3]);

        let (_, reports) = metrics_for(7, 2);
        assert!(reports[0].ratio.is_none());
        assert_eq!(reports[1].ratio.as_ref().unwrap(), &ExactRatio::from_u64(1, 1));
        assert_eq!(reports[2].ratio.as_ref().unwrap(), &ExactRatio::from_u64(5, 3));

        let (_, reports) = metrics_for(10, 5);
        let areas: Vec<u64> = reports.iter().map(|r| r.cumulative_area / 10).collect();
        assert_eq!(areas, vec![0, 1, 8, 49, 288, 1681]);
    }

    #[test]
    fn disconnected_vertex_detected() {
        // a wheel plus a floating vertex on layer 1
        let disc = TriangulatedDisc::build(6, 1, &BuildLimits::default()).unwrap();
        let mut json = disc.to_json();
        json.layers[1].push(7);
        json.tags.push(VertexTag::Z);
        let broken = TriangulatedDisc::from_json(json);
        assert_eq!(
            SphereMetrics::new(&broken).unwrap_err(),
            MetricsError::Disconnected { vertex: 7 }
        );
    }

    #[test]
    fn tampered_disc_fails_report() {
        let disc = TriangulatedDisc::build(7, 3, &BuildLimits::default()).unwrap();
        let v = disc.layers()[2][0];
        let u = disc.layers()[3][0];
        let broken = disc.with_edge_removed(u, v);
        let m = SphereMetrics::new(&broken).unwrap();
        assert!(m.full_report().is_err());
    }

    #[test]
    fn csv_rows() {
        let (_, reports) = metrics_for(7, 2);
        let csv = reports_to_csv(7, &reports);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,n,length,sum,ring,area,ratio_exact,ratio_decimal");
        assert_eq!(lines[1], "7,0,0,0,,0,,");
        assert_eq!(lines[2], "7,1,7,7,7,7,1,1");
        assert_eq!(lines[3], "7,2,21,28,28,35,5/3,1.666666");
    }
}
