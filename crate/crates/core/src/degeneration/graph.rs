use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Pow, Zero};
use serde::Serialize;

use super::{require_short, splits, summit_case, summit_of, SummitCase};
use crate::error::{Error, Result};
use crate::linalg::{Int, IntVector, LatticeFrame};
use crate::polytope::LatticePolytope;
use crate::tops::Top;
use crate::triangulation::{lower_hull_cells, Triangulation};

/// A component of the special fibre: a summit lattice point and, for split
/// points, which of the two components (1 or 2).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GraphNode {
    pub point: IntVector,
    pub component: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GraphEdge {
    /// Node indices, smaller first.
    pub ends: (usize, usize),
    /// The triangulation edge behind this graph edge.
    pub via: (IntVector, IntVector),
}

// A cell of the support complex: summit point indices and a copy number.
type Cell = (Vec<usize>, u8);

/// Dual graph of the special fibre together with the cell complex it spans
/// (triangles and tetrahedra of the induced triangulation, doubled where the
/// components split).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub rank: usize,
    pub case: SummitCase,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    /// Cells by dimension: `cells[d]` holds the `d`-cells.
    #[serde(skip)]
    cells: Vec<Vec<Cell>>,
    #[serde(skip)]
    points: Vec<IntVector>,
}

impl DualGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of cells of each dimension, from nodes upward.
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, c)| if d % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }

    /// Node pairs of the edges, with multiplicity.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| e.ends).collect()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.ends.0 == node || e.ends.1 == node).count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.ends.0), find(&mut parent, e.ends.1));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|i| find(&mut parent, i) == root)
    }

    /// Codimension-one cells of each `d`-cell, as indices into `cells[d−1]`.
    fn boundary_map(&self, d: usize) -> Vec<Vec<usize>> {
        let index: BTreeMap<&Cell, usize> = self.cells[d - 1].iter().enumerate().map(|(i, c)| (c, i)).collect();
        self.cells[d]
            .iter()
            .map(|(s, copy)| {
                (0..s.len())
                    .map(|skip| {
                        let face: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect();
                        let c = if index.contains_key(&(face.clone(), *copy)) { *copy } else { 1 };
                        index[&(face, c)]
                    })
                    .collect()
            })
            .collect()
    }

    /// How many top-dimensional cells contain each cell of the dimension
    /// below, for a complex of dimension `d`.
    fn cofaces(&self, d: usize) -> Vec<usize> {
        let mut count = vec![0; self.cells[d - 1].len()];
        for faces in self.boundary_map(d) {
            for f in faces {
                count[f] += 1;
            }
        }
        count
    }
}

/// Regular triangulation of the summit using all of its lattice points,
/// stored as simplices of `dim + 1` points over the summit lattice points.
/// The lift is `B^i + C·|x|²` in the summit's own lattice coordinates.
pub fn summit_triangulation(t: &Top) -> Result<Triangulation> {
    let summit = summit_of(t)?;
    let points = summit.lattice_points();
    let d = summit.dim();
    if points.len() == d + 1 {
        return Triangulation::new(points, vec![(0..=d).collect()]);
    }
    let frame = LatticeFrame::from_points(&points, None);
    let local: Vec<IntVector> = points.iter().map(|p| frame.to_local(p).expect("summit point")).collect();
    let n = local.len();
    for attempt in 0..16u32 {
        let base = Int::from(2 + attempt);
        let c = Pow::pow(&base, n + 1);
        let heights: Vec<Int> = (0..n).map(|i| &c * local[i].dot(&local[i]) + Pow::pow(&base, i)).collect();
        let Some(cells) = lower_hull_cells(&local, &heights) else {
            continue;
        };
        let used: BTreeSet<usize> = cells.iter().flatten().copied().collect();
        if cells.iter().all(|c| c.len() == d + 1) && used.len() == n {
            return Triangulation::new(points, cells);
        }
    }
    Err(Error::Structure("no generic lift of the summit".into()))
}

fn faces_in_summit(summit: &LatticePolytope, points: &[IntVector], tri: &Triangulation) -> Result<Vec<BTreeSet<Vec<usize>>>> {
    let index: BTreeMap<&IntVector, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut faces: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); summit.dim() + 1];
    for s in tri.simplices() {
        let mut high: Vec<usize> = s
            .iter()
            .filter_map(|&i| index.get(&tri.points()[i]).copied())
            .collect();
        high.sort_unstable();
        let m = high.len();
        for mask in 1u32..(1 << m) {
            let sub: Vec<usize> = (0..m).filter(|b| mask & (1 << b) != 0).map(|b| high[b]).collect();
            if sub.len() <= faces.len() {
                faces[sub.len() - 1].insert(sub);
            }
        }
    }
    if faces[0].len() != points.len() {
        return Err(Error::Precondition("triangulation does not use every summit lattice point".into()));
    }
    if faces[summit.dim()].is_empty() {
        return Err(Error::Precondition("triangulation does not cover the summit".into()));
    }
    Ok(faces)
}

/// Dual graph of the special fibre for a short top of rank 4 or 5 and a
/// maximal triangulation whose restriction to the summit is used. The
/// triangulation may be a boundary triangulation of the top or a
/// triangulation of the summit alone.
///
/// Nodes are summit lattice points (only boundary points when the summit is
/// a facet-like polytope of full summit dimension), with split points
/// doubled. Cells inside the relative interior of a doubling summit are
/// doubled too, pairing first with first and second with second.
pub fn dual_graph(t: &Top, tri: &Triangulation) -> Result<DualGraph> {
    require_short(t)?;
    let case = summit_case(t)?;
    let rank = t.rank();
    let summit = summit_of(t)?;
    let points = summit.lattice_points();
    let faces = faces_in_summit(summit, &points, tri)?;

    let on_boundary = |s: &[usize]| summit.facets().iter().any(|f| s.iter().all(|&i| f.slack(&points[i]).is_zero()));
    let full = case.dim() + 1 == rank;
    let doubled = case.doubles(rank);

    let mut split = vec![false; points.len()];
    for (i, p) in points.iter().enumerate() {
        let c = splits(t, p)?;
        if c == 2 && !doubled {
            return Err(Error::Structure(format!("split point {p:?} outside a doubling case")));
        }
        split[i] = c == 2;
    }

    let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(faces.len());
    for (d, fs) in faces.iter().enumerate() {
        let mut layer = Vec::new();
        for s in fs {
            let inside = !on_boundary(s);
            if full && (inside || d + 1 == faces.len()) {
                // Interior of the summit polytope: divisors miss the fibre.
                continue;
            }
            layer.push((s.clone(), 1));
            let twice = if d == 0 { split[s[0]] } else { doubled && inside };
            if twice {
                layer.push((s.clone(), 2));
            }
        }
        layer.sort();
        cells.push(layer);
    }
    if full {
        cells.pop();
    }

    let nodes: Vec<GraphNode> = cells[0]
        .iter()
        .map(|(s, c)| GraphNode {
            point: points[s[0]].clone(),
            component: *c,
        })
        .collect();
    let node_index: BTreeMap<(usize, u8), usize> = cells[0].iter().enumerate().map(|(n, (s, c))| ((s[0], *c), n)).collect();
    let node_of = |p: usize, copy: u8| node_index.get(&(p, copy)).or_else(|| node_index.get(&(p, 1))).copied().expect("node");
    let edges: Vec<GraphEdge> = cells
        .get(1)
        .map(|layer| {
            layer
                .iter()
                .map(|(s, c)| {
                    let (a, b) = (node_of(s[0], *c), node_of(s[1], *c));
                    GraphEdge {
                        ends: (a.min(b), a.max(b)),
                        via: (points[s[0]].clone(), points[s[1]].clone()),
                    }
                })
                .collect()
        })
        .unwrap_or_default();

    Ok(DualGraph {
        rank,
        case,
        nodes,
        edges,
        cells,
        points,
    })
}

/// Claimed topological support of the dual graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Support {
    Point,
    Chain,
    Disk,
    Sphere,
    ThreeSphere,
}

impl Support {
    pub fn expected(case: SummitCase, rank: usize) -> Support {
        match (rank, case) {
            (_, SummitCase::Point) => Support::Point,
            (_, SummitCase::Edge) => Support::Chain,
            (4, _) => Support::Sphere,
            (_, SummitCase::TwoFace) => Support::Disk,
            _ => Support::ThreeSphere,
        }
    }
}

/// Outcome of the combinatorial support checks; each named check is
/// reported separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportVerdict {
    pub support: Support,
    pub passed: bool,
    pub euler_characteristic: i64,
    pub checks: Vec<(String, bool)>,
}

/// Checks the support claimed for the case: a single node; a path; a
/// closed surface with Euler characteristic 2; a disk (Euler characteristic
/// 1 and a single boundary cycle, reported separately); a closed
/// pseudo-3-manifold with Euler characteristic 0.
pub fn support_verdict(g: &DualGraph, case: SummitCase) -> SupportVerdict {
    let support = Support::expected(case, g.rank);
    let chi = g.euler_characteristic();
    let mut checks: Vec<(String, bool)> = Vec::new();
    match support {
        Support::Point => {
            checks.push(("single node".into(), g.nodes.len() == 1 && g.edges.is_empty()));
        }
        Support::Chain => {
            let n = g.nodes.len();
            let ends = (0..n).filter(|&i| g.degree(i) == 1).count();
            checks.push(("connected".into(), g.is_connected()));
            checks.push(("n - 1 edges".into(), g.edges.len() + 1 == n));
            checks.push(("degrees at most 2".into(), (0..n).all(|i| g.degree(i) <= 2)));
            checks.push(("two ends".into(), n == 1 || ends == 2));
        }
        Support::Sphere => {
            checks.push(("connected".into(), g.is_connected()));
            checks.push(("has triangles".into(), g.cells.len() == 3 && !g.cells[2].is_empty()));
            checks.push((
                "every edge in two triangles".into(),
                g.cells.len() == 3 && g.cofaces(2).iter().all(|&c| c == 2),
            ));
            checks.push(("euler characteristic 2".into(), chi == 2));
        }
        Support::Disk => {
            let has = g.cells.len() == 3 && !g.cells[2].is_empty();
            checks.push(("connected".into(), g.is_connected()));
            checks.push(("euler characteristic 1".into(), chi == 1));
            checks.push(("boundary cycle".into(), has && boundary_is_cycle(g)));
        }
        Support::ThreeSphere => {
            checks.push(("connected".into(), g.is_connected()));
            checks.push(("has tetrahedra".into(), g.cells.len() == 4 && !g.cells[3].is_empty()));
            checks.push((
                "every triangle in two tetrahedra".into(),
                g.cells.len() == 4 && g.cofaces(3).iter().all(|&c| c == 2),
            ));
            checks.push(("euler characteristic 0".into(), chi == 0));
        }
    }
    SupportVerdict {
        support,
        passed: checks.iter().all(|(_, ok)| *ok),
        euler_characteristic: chi,
        checks,
    }
}

// Edges in exactly one triangle form one cycle; none lies in more than two.
fn boundary_is_cycle(g: &DualGraph) -> bool {
    let counts = g.cofaces(2);
    if counts.iter().any(|&c| c == 0 || c > 2) {
        return false;
    }
    let rim: Vec<usize> = (0..counts.len()).filter(|&e| counts[e] == 1).collect();
    if rim.len() < 3 {
        return false;
    }
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &e in &rim {
        let (a, b) = g.edges[e].ends;
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if degree.values().any(|&d| d != 2) {
        return false;
    }
    // Walk the cycle from any rim node.
    let start = *adj.keys().next().expect("rim");
    let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
    while cur != start {
        let next = adj[&cur].iter().copied().find(|&x| x != prev).unwrap_or(prev);
        prev = cur;
        cur = next;
        steps += 1;
        if steps > rim.len() {
            return false;
        }
    }
    steps == rim.len()
}
