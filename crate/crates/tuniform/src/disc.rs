//! Canonical layered triangulated discs with a uniform interior degree.
//!
//! The disc of degree `t` and radius `r` is grown layer by layer around a
//! center vertex: layer 1 is a `t`-wheel, and each later layer is produced by
//! walking the previous layer in cyclic order and attaching children so that
//! every interior vertex ends up with exactly `t` neighbours. A vertex whose
//! two lower neighbours span an edge of the inner layer is tagged `Y` and
//! receives `t − 4` children; a vertex with a single lower neighbour is
//! tagged `Z` and receives `t − 3`; consecutive parents share exactly one
//! child. For `t = 6` the layers grow linearly (the Euclidean triangle
//! lattice); for `t ≥ 7` the angle surplus at each vertex makes the layer
//! sizes grow exponentially; for `t = 4` and `t = 5` the construction closes
//! up after radius 1 and 2 and no flat disc extends further.
//!
//! Construction is deterministic: layers are walked counterclockwise and the
//! shared child between the last and first parent is assigned position 0
//! before the walk, so identical arguments produce identical vertex
//! numberings.

use crate::lucas::{lucas_u_seq, LucasParams};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_MAX_VERTICES: u64 = 2_000_000;
pub const DEFAULT_MAX_RADIUS: u32 = 64;

/// Size guards for disc construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildLimits {
    pub max_vertices: u64,
    pub max_radius: u32,
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits {
            max_vertices: DEFAULT_MAX_VERTICES,
            max_radius: DEFAULT_MAX_RADIUS,
        }
    }
}

impl BuildLimits {
    pub fn with_max_vertices(max_vertices: u64) -> Self {
        BuildLimits {
            max_vertices,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexTag {
    #[serde(rename = "center")]
    Center,
    Y,
    Z,
    /// A vertex whose relation to the inner layer is not recorded; never
    /// produced by the canonical builder, but admissible in externally
    /// supplied disc data.
    #[serde(rename = "boundary-pending")]
    BoundaryPending,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiscError {
    #[error("uniform degree must be at least 4, got t = {t}")]
    InvalidT { t: u32 },
    #[error("t = {t} discs close up: no flat disc of radius {radius} exists (max {max_radius})")]
    DegenerateRadius { t: u32, radius: u32, max_radius: u32 },
    #[error("radius {radius} exceeds the configured maximum {max_radius}")]
    RadiusLimitExceeded { radius: u32, max_radius: u32 },
    #[error("projected size {projected_vertices} vertices exceeds the limit {max_vertices}")]
    LimitExceeded {
        projected_vertices: u64,
        max_vertices: u64,
    },
}

/// An invariant violation found by [`TriangulatedDisc::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub witness: String,
}

impl Violation {
    fn new(rule: &'static str, witness: impl Into<String>) -> Self {
        Violation {
            rule,
            witness: witness.into(),
        }
    }
}

/// Pick-formula data for a disc: `area = 2·V_i + V_b − 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PickArea {
    pub interior_vertices: u64,
    pub boundary_vertices: u64,
    pub area: u64,
}

/// Serialization form of a disc.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscJson {
    pub t: u32,
    pub radius: u32,
    pub layers: Vec<Vec<u32>>,
    pub tags: Vec<VertexTag>,
    pub edges: Vec<(u32, u32)>,
    pub triangles: Vec<(u32, u32, u32)>,
}

/// A layered 2-disc mesh: vertices with layer indices and tags, an edge set,
/// and a triangle set, plus a sorted adjacency structure for queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulatedDisc {
    t: u32,
    radius: u32,
    layers: Vec<Vec<u32>>,
    layer_of: Vec<u32>,
    tags: Vec<VertexTag>,
    edges: Vec<(u32, u32)>,
    triangles: Vec<(u32, u32, u32)>,
    adj_offsets: Vec<u32>,
    adj_targets: Vec<u32>,
}

fn norm_edge(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn norm_tri(a: u32, b: u32, c: u32) -> (u32, u32, u32) {
    let mut t = [a, b, c];
    t.sort_unstable();
    (t[0], t[1], t[2])
}

impl TriangulatedDisc {
    /// Builds the canonical disc of uniform degree `t` out to `radius`.
    pub fn build(t: u32, radius: u32, limits: &BuildLimits) -> Result<Self, DiscError> {
        if t < 4 {
            return Err(DiscError::InvalidT { t });
        }
        if t == 4 && radius > 1 {
            return Err(DiscError::DegenerateRadius {
                t,
                radius,
                max_radius: 1,
            });
        }
        if t == 5 && radius > 2 {
            return Err(DiscError::DegenerateRadius {
                t,
                radius,
                max_radius: 2,
            });
        }
        if radius > limits.max_radius {
            return Err(DiscError::RadiusLimitExceeded {
                radius,
                max_radius: limits.max_radius,
            });
        }
        let layer_sizes = lucas_u_seq(LucasParams::new(t as i64 - 4, 1), radius);
        let projected: BigInt =
            BigInt::from(1) + BigInt::from(t) * layer_sizes.iter().sum::<BigInt>();
        if projected > BigInt::from(limits.max_vertices) {
            return Err(DiscError::LimitExceeded {
                projected_vertices: projected.to_u64().unwrap_or(u64::MAX),
                max_vertices: limits.max_vertices,
            });
        }
        let projected = projected.to_u64().expect("within limits") as usize;

        let mut layer_of: Vec<u32> = Vec::with_capacity(projected);
        let mut tags: Vec<VertexTag> = Vec::with_capacity(projected);
        let mut layers: Vec<Vec<u32>> = Vec::with_capacity(radius as usize + 1);
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut triangles: Vec<(u32, u32, u32)> = Vec::new();

        layer_of.push(0);
        tags.push(VertexTag::Center);
        layers.push(vec![0]);

        if radius >= 1 {
            // t-wheel: layer-1 cycle, every vertex joined to the center
            let ring: Vec<u32> = (1..=t).collect();
            for _ in &ring {
                layer_of.push(1);
                tags.push(VertexTag::Z);
            }
            for i in 0..t as usize {
                let u = ring[i];
                let w = ring[(i + 1) % t as usize];
                edges.push(norm_edge(u, w));
                edges.push(norm_edge(0, u));
                triangles.push(norm_tri(0, u, w));
            }
            layers.push(ring);
        }

        for n in 2..=radius {
            let parents = layers[n as usize - 1].clone();
            let m = parents.len();
            let quotas: Vec<usize> = parents
                .iter()
                .map(|&p| match tags[p as usize] {
                    VertexTag::Y => (t - 4) as usize,
                    VertexTag::Z => (t - 3) as usize,
                    other => unreachable!("layer vertex tagged {other:?}"),
                })
                .collect();
            debug_assert!(quotas.iter().all(|&c| c >= 2));

            let mut alloc = |tag: VertexTag, layer_of: &mut Vec<u32>, tags: &mut Vec<VertexTag>| {
                let id = layer_of.len() as u32;
                layer_of.push(n);
                tags.push(tag);
                id
            };

            // the child shared by the last and first parent opens the layer
            let base = alloc(VertexTag::Y, &mut layer_of, &mut tags);
            let mut new_layer = vec![base];
            let mut prev_shared = base;
            for i in 0..m {
                let p = parents[i];
                let mut ups = Vec::with_capacity(quotas[i]);
                ups.push(prev_shared);
                for _ in 0..quotas[i] - 2 {
                    let v = alloc(VertexTag::Z, &mut layer_of, &mut tags);
                    new_layer.push(v);
                    ups.push(v);
                }
                let next_shared = if i + 1 == m {
                    base
                } else {
                    let v = alloc(VertexTag::Y, &mut layer_of, &mut tags);
                    new_layer.push(v);
                    v
                };
                ups.push(next_shared);
                for &u in &ups {
                    edges.push(norm_edge(p, u));
                }
                for w in ups.windows(2) {
                    triangles.push(norm_tri(p, w[0], w[1]));
                }
                triangles.push(norm_tri(p, parents[(i + 1) % m], next_shared));
                prev_shared = next_shared;
            }
            let sz = new_layer.len();
            debug_assert!(sz >= 3);
            for j in 0..sz {
                edges.push(norm_edge(new_layer[j], new_layer[(j + 1) % sz]));
            }
            layers.push(new_layer);
        }

        Ok(Self::assemble(t, radius, layers, layer_of, tags, edges, triangles))
    }

    /// Assembles a disc from raw parts without validating them; pair with
    /// [`validate`](Self::validate) when the data is untrusted. Edges and
    /// triangles are normalized and sorted, duplicates are kept.
    pub fn from_parts(
        t: u32,
        radius: u32,
        layers: Vec<Vec<u32>>,
        tags: Vec<VertexTag>,
        edges: Vec<(u32, u32)>,
        triangles: Vec<(u32, u32, u32)>,
    ) -> Self {
        let vertex_count: usize = layers.iter().map(Vec::len).sum();
        let mut layer_of = vec![0u32; vertex_count];
        for (n, layer) in layers.iter().enumerate() {
            for &v in layer {
                layer_of[v as usize] = n as u32;
            }
        }
        let edges = edges.into_iter().map(|(u, v)| norm_edge(u, v)).collect();
        let triangles = triangles
            .into_iter()
            .map(|(a, b, c)| norm_tri(a, b, c))
            .collect();
        Self::assemble(t, radius, layers, layer_of, tags, edges, triangles)
    }

    fn assemble(
        t: u32,
        radius: u32,
        layers: Vec<Vec<u32>>,
        layer_of: Vec<u32>,
        tags: Vec<VertexTag>,
        mut edges: Vec<(u32, u32)>,
        mut triangles: Vec<(u32, u32, u32)>,
    ) -> Self {
        edges.sort_unstable();
        triangles.sort_unstable();

        let n = layer_of.len();
        let mut degree = vec![0u32; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut adj_offsets = Vec::with_capacity(n + 1);
        adj_offsets.push(0u32);
        for v in 0..n {
            adj_offsets.push(adj_offsets[v] + degree[v]);
        }
        let mut cursor: Vec<u32> = adj_offsets[..n].to_vec();
        let mut adj_targets = vec![0u32; edges.len() * 2];
        for &(u, v) in &edges {
            adj_targets[cursor[u as usize] as usize] = v;
            cursor[u as usize] += 1;
            adj_targets[cursor[v as usize] as usize] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            adj_targets[adj_offsets[v] as usize..adj_offsets[v + 1] as usize].sort_unstable();
        }

        TriangulatedDisc {
            t,
            radius,
            layers,
            layer_of,
            tags,
            edges,
            triangles,
            adj_offsets,
            adj_targets,
        }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.layer_of.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn triangles(&self) -> &[(u32, u32, u32)] {
        &self.triangles
    }

    pub fn layers(&self) -> &[Vec<u32>] {
        &self.layers
    }

    pub fn layer(&self, v: u32) -> u32 {
        self.layer_of[v as usize]
    }

    pub fn tag(&self, v: u32) -> VertexTag {
        self.tags[v as usize]
    }

    pub fn tags(&self) -> &[VertexTag] {
        &self.tags
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        let lo = self.adj_offsets[v as usize] as usize;
        let hi = self.adj_offsets[v as usize + 1] as usize;
        &self.adj_targets[lo..hi]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Common neighbours of `u` and `v`, by merging the sorted lists.
    pub fn common_neighbors(&self, u: u32, v: u32) -> Vec<u32> {
        let (mut a, mut b) = (self.neighbors(u).iter(), self.neighbors(v).iter());
        let mut out = Vec::with_capacity(2);
        let (mut x, mut y) = (a.next(), b.next());
        while let (Some(&u), Some(&v)) = (x, y) {
            match u.cmp(&v) {
                std::cmp::Ordering::Less => x = a.next(),
                std::cmp::Ordering::Greater => y = b.next(),
                std::cmp::Ordering::Equal => {
                    out.push(u);
                    x = a.next();
                    y = b.next();
                }
            }
        }
        out
    }

    /// Interior/boundary vertex counts and the triangle count, with the
    /// Pick relation `area = 2·V_i + V_b − 2` asserted.
    pub fn pick_area(&self) -> PickArea {
        assert!(self.radius >= 1, "pick_area requires radius >= 1");
        let boundary = self.layers[self.radius as usize].len() as u64;
        let interior = self.vertex_count() as u64 - boundary;
        let area = self.triangle_count() as u64;
        assert_eq!(
            area,
            2 * interior + boundary - 2,
            "Pick's formula failed on a built disc"
        );
        PickArea {
            interior_vertices: interior,
            boundary_vertices: boundary,
            area,
        }
    }

    /// Checks every structural invariant and reports violations; an empty
    /// report means the disc is a well-formed uniform-degree triangulated
    /// disc.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();

        let centers: Vec<u32> = (0..self.vertex_count() as u32)
            .filter(|&v| self.layer_of[v as usize] == 0)
            .collect();
        if centers.len() != 1 {
            out.push(Violation::new(
                "single-center",
                format!("layer-0 vertices: {centers:?}"),
            ));
        }

        for v in 0..self.vertex_count() as u32 {
            if self.layer_of[v as usize] < self.radius && self.degree(v) != self.t as usize {
                out.push(Violation::new(
                    "interior-degree",
                    format!(
                        "vertex {v} at layer {} has degree {}, expected {}",
                        self.layer_of[v as usize],
                        self.degree(v),
                        self.t
                    ),
                ));
            }
        }

        for n in 1..=self.radius {
            self.check_layer_cycle(n, &mut out);
        }

        self.check_triangles(&mut out);
        self.check_tags(&mut out);

        let v = self.vertex_count() as i64;
        let e = self.edge_count() as i64;
        let f = self.triangle_count() as i64;
        if v - e + f != 1 {
            out.push(Violation::new(
                "euler-disc",
                format!("V - E + F = {v} - {e} + {f} = {}", v - e + f),
            ));
        }

        out
    }

    fn check_layer_cycle(&self, n: u32, out: &mut Vec<Violation>) {
        let members = &self.layers[n as usize];
        if n == 1 && members.len() != self.t as usize {
            out.push(Violation::new(
                "layer-one-size",
                format!("layer 1 has {} vertices, expected {}", members.len(), self.t),
            ));
        }
        for &v in members {
            let in_layer = self
                .neighbors(v)
                .iter()
                .filter(|&&w| self.layer_of[w as usize] == n)
                .count();
            if in_layer != 2 {
                out.push(Violation::new(
                    "layer-cycle",
                    format!("vertex {v} has {in_layer} neighbours on layer {n}, expected 2"),
                ));
                return;
            }
        }
        // single cycle covering the whole layer
        let start = members[0];
        let mut prev = start;
        let mut cur = *self
            .neighbors(start)
            .iter()
            .find(|&&w| self.layer_of[w as usize] == n)
            .expect("checked above");
        let mut steps = 1usize;
        while cur != start && steps <= members.len() {
            let next = *self
                .neighbors(cur)
                .iter()
                .find(|&&w| self.layer_of[w as usize] == n && w != prev)
                .expect("two in-layer neighbours");
            prev = cur;
            cur = next;
            steps += 1;
        }
        if cur != start || steps != members.len() {
            out.push(Violation::new(
                "layer-cycle",
                format!(
                    "layer {n}: cycle through {steps} of {} vertices from {start}",
                    members.len()
                ),
            ));
        }
    }

    fn check_triangles(&self, out: &mut Vec<Violation>) {
        // triangle layer span and edge existence
        for &(a, b, c) in &self.triangles {
            let la = self.layer_of[a as usize];
            let lb = self.layer_of[b as usize];
            let lc = self.layer_of[c as usize];
            let lo = la.min(lb).min(lc);
            let hi = la.max(lb).max(lc);
            if hi - lo > 1 {
                out.push(Violation::new(
                    "triangle-layer-span",
                    format!("triangle ({a},{b},{c}) spans layers {lo}..{hi}"),
                ));
            }
            for (u, v) in [(a, b), (a, c), (b, c)] {
                if !self.has_edge(u, v) {
                    out.push(Violation::new(
                        "triangle-missing-edge",
                        format!("triangle ({a},{b},{c}) uses absent edge ({u},{v})"),
                    ));
                }
            }
        }

        // triangle multiplicity per edge
        let mut tri_count = vec![0u32; self.edges.len()];
        for &(a, b, c) in &self.triangles {
            for (u, v) in [(a, b), (a, c), (b, c)] {
                if let Ok(idx) = self.edges.binary_search(&(u, v)) {
                    tri_count[idx] += 1;
                }
            }
        }
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            let boundary = self.layer_of[u as usize] == self.radius
                && self.layer_of[v as usize] == self.radius;
            let expected = if boundary { 1 } else { 2 };
            if tri_count[idx] != expected {
                out.push(Violation::new(
                    "edge-triangle-multiplicity",
                    format!(
                        "edge ({u},{v}) lies in {} triangles, expected {expected}",
                        tri_count[idx]
                    ),
                ));
            }
            // flagness: every common neighbour must close a triangle, so the
            // counts agree exactly
            let common = self.common_neighbors(u, v).len() as u32;
            if common != tri_count[idx] {
                out.push(Violation::new(
                    "flagness",
                    format!(
                        "edge ({u},{v}) has {common} common neighbours but {} triangles",
                        tri_count[idx]
                    ),
                ));
            }
        }
    }

    fn check_tags(&self, out: &mut Vec<Violation>) {
        for v in 0..self.vertex_count() as u32 {
            let layer = self.layer_of[v as usize];
            let tag = self.tags[v as usize];
            if layer == 0 {
                if tag != VertexTag::Center {
                    out.push(Violation::new(
                        "tag-structure",
                        format!("layer-0 vertex {v} tagged {tag:?}"),
                    ));
                }
                continue;
            }
            let below: Vec<u32> = self
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| self.layer_of[w as usize] == layer - 1)
                .collect();
            let expected = match below.len() {
                1 => VertexTag::Z,
                2 if self.has_edge(below[0], below[1]) => VertexTag::Y,
                _ => {
                    out.push(Violation::new(
                        "tag-structure",
                        format!("vertex {v} has lower neighbours {below:?}"),
                    ));
                    continue;
                }
            };
            if tag != expected {
                out.push(Violation::new(
                    "tag-structure",
                    format!("vertex {v} tagged {tag:?}, structure says {expected:?}"),
                ));
            }
        }
    }

    pub fn to_json(&self) -> DiscJson {
        DiscJson {
            t: self.t,
            radius: self.radius,
            layers: self.layers.clone(),
            tags: self.tags.clone(),
            edges: self.edges.clone(),
            triangles: self.triangles.clone(),
        }
    }

    pub fn from_json(json: DiscJson) -> Self {
        Self::from_parts(
            json.t,
            json.radius,
            json.layers,
            json.tags,
            json.edges,
            json.triangles,
        )
    }

    /// Copy with one edge removed (triangles untouched); handy for feeding
    /// the validator something broken.
    pub fn with_edge_removed(&self, u: u32, v: u32) -> Self {
        let edge = norm_edge(u, v);
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .copied()
            .filter(|&e| e != edge)
            .collect();
        Self::assemble(
            self.t,
            self.radius,
            self.layers.clone(),
            self.layer_of.clone(),
            self.tags.clone(),
            edges,
            self.triangles.clone(),
        )
    }

    /// Copy with a triangle duplicated.
    pub fn with_duplicated_triangle(&self) -> Self {
        let mut triangles = self.triangles.clone();
        if let Some(&first) = triangles.first() {
            triangles.push(first);
        }
        Self::assemble(
            self.t,
            self.radius,
            self.layers.clone(),
            self.layer_of.clone(),
            self.tags.clone(),
            self.edges.clone(),
            triangles,
        )
    }
}
