use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::LatticePolytope;
use crate::error::{Error, Result};
use crate::linalg::{hermite_normal_form, IntMatrix, IntVector};

/// Canonical representative of a lattice-isomorphism class.
///
/// `matrix` is the Hermite normal form of the vertex matrix (vertices as
/// columns) under a canonically chosen vertex order, so two polytopes get the
/// same matrix exactly when some `g ∈ GL(k, Z)` maps one onto the other.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormalFormKey {
    pub matrix: IntMatrix,
    pub hash: String,
}

impl NormalFormKey {
    fn new(matrix: IntMatrix) -> Self {
        let mut text = format!("{}x{}:", matrix.rows(), matrix.cols());
        for e in matrix.entries() {
            let _ = write!(text, "{e},");
        }
        let hash = Sha256::digest(text.as_bytes()).iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        NormalFormKey { matrix, hash }
    }
}

/// Canonical key of a full-dimensional lattice polytope.
///
/// Vertex orders are generated by individualisation and refinement of the
/// vertex/facet pairing matrix, which every lattice isomorphism preserves.
/// The set of leaf orders is therefore isomorphism invariant and the least
/// Hermite form over it is canonical.
pub fn normal_form(p: &LatticePolytope) -> Result<NormalFormKey> {
    if !p.is_full_dimensional() {
        return Err(Error::Domain("normal form needs a full-dimensional polytope".into()));
    }
    let pairing = pairing_classes(p);
    let mut leaves = Vec::new();
    let vcol = vec![0u32; p.vertices().len()];
    let fcol = vec![0u32; p.facets().len()];
    search(&pairing, vcol, fcol, &mut leaves);
    let best = leaves
        .iter()
        .map(|order| {
            let cols: Vec<IntVector> = order.iter().map(|&i| p.vertices()[i].clone()).collect();
            hermite_normal_form(&IntMatrix::from_rows(&cols).expect("uniform rank").transpose())
        })
        .min_by(|a, b| a.entries().cmp(b.entries()))
        .expect("at least one leaf");
    Ok(NormalFormKey::new(best))
}

// Slack of every vertex on every facet, replaced by its rank among the
// distinct slack values.
fn pairing_classes(p: &LatticePolytope) -> Vec<Vec<u32>> {
    let raw: Vec<Vec<_>> = p
        .vertices()
        .iter()
        .map(|v| p.facets().iter().map(|f| f.slack(v)).collect())
        .collect();
    let mut values: Vec<_> = raw.iter().flatten().cloned().collect();
    values.sort();
    values.dedup();
    raw.iter()
        .map(|row| row.iter().map(|x| values.binary_search(x).expect("present") as u32).collect())
        .collect()
}

fn ranks<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut sorted = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).expect("present") as u32).collect()
}

fn class_count(c: &[u32]) -> usize {
    let mut s = c.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

fn refine(p: &[Vec<u32>], vcol: &mut Vec<u32>, fcol: &mut Vec<u32>) {
    let (nv, nf) = (vcol.len(), fcol.len());
    loop {
        let before = (class_count(vcol), class_count(fcol));
        let fsig: Vec<(u32, Vec<(u32, u32)>)> = (0..nf)
            .map(|j| {
                let mut s: Vec<(u32, u32)> = (0..nv).map(|i| (vcol[i], p[i][j])).collect();
                s.sort_unstable();
                (fcol[j], s)
            })
            .collect();
        *fcol = ranks(&fsig);
        let vsig: Vec<(u32, Vec<(u32, u32)>)> = (0..nv)
            .map(|i| {
                let mut s: Vec<(u32, u32)> = (0..nf).map(|j| (fcol[j], p[i][j])).collect();
                s.sort_unstable();
                (vcol[i], s)
            })
            .collect();
        *vcol = ranks(&vsig);
        if (class_count(vcol), class_count(fcol)) == before {
            return;
        }
    }
}

fn search(p: &[Vec<u32>], mut vcol: Vec<u32>, mut fcol: Vec<u32>, leaves: &mut Vec<Vec<usize>>) {
    refine(p, &mut vcol, &mut fcol);
    let mut counts = vec![0usize; vcol.len()];
    for &c in &vcol {
        counts[c as usize] += 1;
    }
    let Some(target) = counts.iter().position(|&n| n > 1) else {
        let mut order: Vec<usize> = (0..vcol.len()).collect();
        order.sort_by_key(|&i| vcol[i]);
        leaves.push(order);
        return;
    };
    let target = target as u32;
    for chosen in (0..vcol.len()).filter(|&i| vcol[i] == target) {
        let split: Vec<u32> = vcol
            .iter()
            .enumerate()
            .map(|(i, &c)| 2 * c + u32::from(c == target && i != chosen))
            .collect();
        search(p, split, fcol.clone(), leaves);
    }
}
