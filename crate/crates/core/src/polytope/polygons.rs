use std::collections::BTreeMap;

use num_integer::Integer;

use super::{convex_hull, normal_form, LatticePolytope};
use crate::linalg::IntVector;

const BOX: i64 = 4;

type P = (i64, i64);

fn cross(a: P, b: P) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

/// Edge `a → b` has the origin strictly on its left at lattice distance 1.
fn unit_edge(a: P, b: P) -> bool {
    let d = sub(b, a);
    let g = d.0.gcd(&d.1);
    g > 0 && cross(d, (-a.0, -a.1)) == g
}

/// One reflexive polygon per isomorphism class.
///
/// Counter-clockwise vertex chains in `[−4, 4]²` are grown from their
/// lexicographically least vertex. Each edge must sit at lattice distance
/// one from the origin (the polar-integrality condition, checked edge by
/// edge), so only reflexive polygons survive; duplicates are removed by
/// normal form.
pub fn enumerate_reflexive_polygons() -> Vec<LatticePolytope> {
    let cands: Vec<P> = (-BOX..=BOX)
        .flat_map(|x| (-BOX..=BOX).map(move |y| (x, y)))
        .filter(|&p| p != (0, 0))
        .collect();
    let mut found = BTreeMap::new();
    for &v0 in &cands {
        let mut chain = vec![v0];
        grow(&cands, &mut chain, &mut found);
    }
    let mut out: Vec<(usize, Vec<num_bigint::BigInt>, LatticePolytope)> = found
        .into_values()
        .map(|p: LatticePolytope| {
            let key = normal_form(&p).expect("full-dimensional").matrix.entries().to_vec();
            (p.vertices().len(), key, p)
        })
        .collect();
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out.into_iter().map(|(_, _, p)| p).collect()
}

fn grow(cands: &[P], chain: &mut Vec<P>, found: &mut BTreeMap<String, LatticePolytope>) {
    let v0 = chain[0];
    let last = *chain.last().expect("nonempty");
    if chain.len() >= 3 && unit_edge(last, v0) {
        let prev = chain[chain.len() - 2];
        let closes = cross(sub(last, prev), sub(v0, last)) > 0 && cross(sub(v0, last), sub(chain[1], v0)) > 0;
        if closes {
            let pts: Vec<IntVector> = chain.iter().map(|&(x, y)| IntVector::from_i64s(&[x, y])).collect();
            let p = convex_hull(&pts).expect("nonempty");
            if p.vertices().len() == chain.len() && p.is_reflexive() {
                let key = normal_form(&p).expect("full-dimensional").hash;
                found.entry(key).or_insert(p);
            }
        }
    }
    for &v in cands {
        if v <= v0 || chain.contains(&v) || !unit_edge(last, v) {
            continue;
        }
        if chain.len() >= 2 {
            let prev = chain[chain.len() - 2];
            if cross(sub(last, prev), sub(v, last)) <= 0 {
                continue;
            }
            if cross(sub(chain[1], v0), sub(v, v0)) <= 0 || cross(sub(v, last), sub(v0, last)) <= 0 {
                continue;
            }
        }
        chain.push(v);
        grow(cands, chain, found);
        chain.pop();
    }
}
