use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::degeneration::DualGraph;
use crate::error::{Error, Result};
use crate::linalg::{affine_dimension, Int, IntVector};
use crate::polytope::{convex_hull, LatticePolytope};
use crate::tops::{DualTop, Top};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    /// `v`, `l` and `f` lines with 1-based indices.
    Obj,
    /// One `a b` line per edge, 0-based.
    EdgeList,
}

/// Something that can be drawn in three dimensions.
#[derive(Clone, Copy, Debug)]
pub enum Exportable<'a> {
    Polytope(&'a LatticePolytope),
    /// Rank 3 tops are drawn whole; rank 4 tops by their summit with the
    /// last coordinate dropped.
    Top(&'a Top),
    /// The subdivision of `Δ°` induced by the bounded facets.
    DualTop(&'a DualTop),
    Graph(&'a DualGraph),
}

#[derive(Default)]
struct Mesh {
    vertices: Vec<IntVector>,
    index: BTreeMap<IntVector, usize>,
    edges: BTreeSet<(usize, usize)>,
    faces: Vec<Vec<usize>>,
    seen_faces: BTreeSet<Vec<usize>>,
}

impl Mesh {
    fn vertex(&mut self, p: &IntVector) -> usize {
        if let Some(&i) = self.index.get(p) {
            return i;
        }
        let i = self.vertices.len();
        self.vertices.push(p.clone());
        self.index.insert(p.clone(), i);
        i
    }

    fn edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.edges.insert((a.min(b), a.max(b)));
        }
    }

    fn face(&mut self, cycle: Vec<usize>) {
        let mut key = cycle.clone();
        key.sort_unstable();
        if self.seen_faces.insert(key) {
            self.faces.push(cycle);
        }
    }

    /// Adds vertices, edges and 2-faces of `p`, which must live in rank 3.
    fn add_polytope(&mut self, p: &LatticePolytope) -> Result<()> {
        let ids: Vec<usize> = p.vertices().iter().map(|v| self.vertex(v)).collect();
        if p.dim() == 0 {
            return Ok(());
        }
        let edges: Vec<(usize, usize)> = p
            .faces(1)?
            .into_iter()
            .map(|f| (f.vertex_indices[0], f.vertex_indices[1]))
            .collect();
        for &(a, b) in &edges {
            self.edge(ids[a], ids[b]);
        }
        if p.dim() < 2 {
            return Ok(());
        }
        for f in p.faces(2)? {
            let mut cycle = cyclic_order(&f.vertex_indices, &edges);
            if p.is_full_dimensional() {
                let n = &p.facets()[f.facet_indices[0]].normal;
                let v: Vec<&IntVector> = cycle.iter().map(|&i| &p.vertices()[i]).collect();
                if cross(&v[1].sub(v[0]), &v[2].sub(v[0])).dot(n).is_positive() {
                    cycle.reverse();
                    cycle.rotate_right(1);
                }
            }
            self.face(cycle.into_iter().map(|i| ids[i]).collect());
        }
        Ok(())
    }

    fn render(&self, format: MeshFormat) -> String {
        let mut s = String::new();
        match format {
            MeshFormat::Obj => {
                for v in &self.vertices {
                    let _ = writeln!(s, "v {} {} {}", v.entries()[0], v.entries()[1], v.entries()[2]);
                }
                for (a, b) in &self.edges {
                    let _ = writeln!(s, "l {} {}", a + 1, b + 1);
                }
                for f in &self.faces {
                    let idx: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
                    let _ = writeln!(s, "f {}", idx.join(" "));
                }
            }
            MeshFormat::EdgeList => {
                for (a, b) in &self.edges {
                    let _ = writeln!(s, "{a} {b}");
                }
            }
        }
        s
    }
}

fn cross(a: &IntVector, b: &IntVector) -> IntVector {
    let (a, b) = (a.entries(), b.entries());
    IntVector::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// Walks the boundary cycle of a polygon face, starting at its least vertex.
fn cyclic_order(face: &[usize], edges: &[(usize, usize)]) -> Vec<usize> {
    let inside = |i: &usize| face.binary_search(i).is_ok();
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges.iter().filter(|(a, b)| inside(a) && inside(b)) {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut cycle = vec![face[0]];
    let mut prev = usize::MAX;
    let mut cur = face[0];
    while cycle.len() < face.len() {
        let next = adj[&cur].iter().copied().filter(|&n| n != prev).min().unwrap_or(cur);
        if next == face[0] || next == cur {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    cycle
}

fn pad3(v: &IntVector) -> IntVector {
    let mut e = v.entries().to_vec();
    e.resize(3, Int::zero());
    IntVector::new(e)
}

fn to_space(points: &[IntVector], what: &str) -> Result<Vec<IntVector>> {
    match points.first().map(IntVector::rank) {
        Some(r) if r > 3 => Err(Error::Argument(format!("{what} lives in rank {r}; only rank 3 or less can be drawn"))),
        _ => Ok(points.iter().map(pad3).collect()),
    }
}

fn polytope_mesh(p: &LatticePolytope, what: &str) -> Result<Mesh> {
    let q = convex_hull(&to_space(p.vertices(), what)?)?;
    let mut m = Mesh::default();
    m.add_polytope(&q)?;
    Ok(m)
}

fn top_mesh(t: &Top) -> Result<Mesh> {
    match t.rank() {
        0..=3 => polytope_mesh(t.polytope(), "top"),
        4 => {
            let s = t.summit().ok_or_else(|| Error::Argument("top has no summit".into()))?;
            let projected: Vec<IntVector> = s.vertices().iter().map(IntVector::truncated).collect();
            if affine_dimension(&projected) != s.dim() as isize {
                return Err(Error::Argument("summit is vertical; dropping the last coordinate collapses it".into()));
            }
            let mut m = Mesh::default();
            m.add_polytope(&convex_hull(&projected)?)?;
            Ok(m)
        }
        r => Err(Error::Argument(format!("cannot project a rank {r} top to three dimensions"))),
    }
}

fn dual_top_mesh(d: &DualTop) -> Result<Mesh> {
    let pts = to_space(d.points(), "dual top base")?;
    let mut m = Mesh::default();
    for f in d.bounded_facets() {
        let cell: Vec<IntVector> = f.points.iter().map(|&i| pts[i].clone()).collect();
        m.add_polytope(&convex_hull(&cell)?)?;
    }
    Ok(m)
}

fn graph_mesh(g: &DualGraph) -> Result<Mesh> {
    let mut m = Mesh::default();
    // Split points give two nodes at the same place; keep them apart.
    for n in &g.nodes {
        let p = n.point.truncated();
        if p.rank() > 3 {
            return Err(Error::Argument(format!("dual graph of rank {} cannot be drawn", g.rank)));
        }
        m.vertices.push(pad3(&p));
    }
    for e in &g.edges {
        m.edge(e.ends.0, e.ends.1);
    }
    Ok(m)
}

/// Byte-stable mesh text for `obj`.
pub fn export_mesh(obj: Exportable<'_>, format: MeshFormat) -> Result<String> {
    let mesh = match obj {
        Exportable::Polytope(p) => polytope_mesh(p, "polytope")?,
        Exportable::Top(t) => top_mesh(t)?,
        Exportable::DualTop(d) => dual_top_mesh(d)?,
        Exportable::Graph(g) => graph_mesh(g)?,
    };
    Ok(mesh.render(format))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> LatticePolytope {
        let mut pts = Vec::new();
        for i in 0..8i64 {
            pts.push(IntVector::from_i64s(&[2 * (i & 1) - 1, (i & 2) - 1, (i & 4) / 2 - 1]));
        }
        convex_hull(&pts).unwrap()
    }

    #[test]
    fn cube_obj() {
        let s = export_mesh(Exportable::Polytope(&cube()), MeshFormat::Obj).unwrap();
        let count = |p: &str| s.lines().filter(|l| l.starts_with(p)).count();
        assert_eq!((count("v "), count("l "), count("f ")), (8, 12, 6));
        assert_eq!(s, export_mesh(Exportable::Polytope(&cube()), MeshFormat::Obj).unwrap());
    }

    #[test]
    fn faces_are_outward() {
        let c = cube();
        let s = export_mesh(Exportable::Polytope(&c), MeshFormat::Obj).unwrap();
        let vs: Vec<IntVector> = s
            .lines()
            .filter_map(|l| l.strip_prefix("v "))
            .map(|l| IntVector::from_i64s(&l.split(' ').map(|x| x.parse().unwrap()).collect::<Vec<_>>()))
            .collect();
        for f in s.lines().filter_map(|l| l.strip_prefix("f ")) {
            let idx: Vec<usize> = f.split(' ').map(|x| x.parse::<usize>().unwrap() - 1).collect();
            let n = cross(&vs[idx[1]].sub(&vs[idx[0]]), &vs[idx[2]].sub(&vs[idx[0]]));
            // Outward normal points away from the origin.
            assert!(n.dot(&vs[idx[0]]).is_positive());
        }
    }

    #[test]
    fn polygon_and_segment() {
        let sq = convex_hull(&[
            IntVector::from_i64s(&[0, 0]),
            IntVector::from_i64s(&[1, 0]),
            IntVector::from_i64s(&[1, 1]),
            IntVector::from_i64s(&[0, 1]),
        ])
        .unwrap();
        let s = export_mesh(Exportable::Polytope(&sq), MeshFormat::Obj).unwrap();
        assert!(s.contains("v 1 1 0\n"));
        assert_eq!(s.lines().filter(|l| l.starts_with("f ")).count(), 1);
        let seg = convex_hull(&[IntVector::from_i64s(&[0, 0, 0]), IntVector::from_i64s(&[0, 0, 2])]).unwrap();
        assert_eq!(export_mesh(Exportable::Polytope(&seg), MeshFormat::EdgeList).unwrap(), "0 1\n");
    }

    #[test]
    fn rank_four_polytope_is_rejected() {
        let p = convex_hull(&(0..4).map(|i| IntVector::unit(4, i)).chain([IntVector::zeros(4)]).collect::<Vec<_>>()).unwrap();
        assert!(matches!(export_mesh(Exportable::Polytope(&p), MeshFormat::Obj), Err(Error::Argument(_))));
    }
}
