use serde::Serialize;

use super::graph::{dual_graph, support_verdict, DualGraph, SupportVerdict};
use super::{require_short, summit_case, SummitCase};
use crate::error::{Error, Result};
use crate::tops::Top;
use crate::triangulation::{is_unimodular, Triangulation};

/// Smoothness of the resolved ambient space, as far as it can be certified
/// from the triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Smoothness {
    UnimodularCertified,
    NotUnimodular,
    Unknown,
}

/// A unimodular boundary triangulation of the whole top certifies
/// smoothness. A triangulation of part of the boundary (such as the summit
/// alone) decides nothing.
pub fn smoothness(t: &Top, tri: Option<&Triangulation>) -> Smoothness {
    let Some(tri) = tri else {
        return Smoothness::Unknown;
    };
    let covers = tri.is_boundary()
        && crate::polytope::convex_hull(tri.points()).is_ok_and(|h| h.vertices() == t.polytope().vertices());
    match (covers, covers && is_unimodular(tri)) {
        (true, true) => Smoothness::UnimodularCertified,
        (true, false) => Smoothness::NotUnimodular,
        _ => Smoothness::Unknown,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationReport {
    pub rank: usize,
    pub case: SummitCase,
    pub case_label: String,
    pub summit: String,
    pub graph: DualGraph,
    pub components: usize,
    pub verdict: SupportVerdict,
    /// `N^3 ≠ 0`, for rank 5 only.
    pub maximal_nilpotency: Option<bool>,
    /// Rank 5 only.
    pub smoothness: Option<Smoothness>,
    pub notes: Vec<String>,
}

fn report(t: &Top, tri: &Triangulation) -> Result<DegenerationReport> {
    let case = summit_case(t)?;
    let rank = t.rank();
    let graph = dual_graph(t, tri)?;
    let verdict = support_verdict(&graph, case);
    Ok(DegenerationReport {
        rank,
        case,
        case_label: case.label(rank).to_string(),
        summit: case.name(rank).to_string(),
        components: graph.node_count(),
        graph,
        verdict,
        maximal_nilpotency: None,
        smoothness: None,
        notes: Vec::new(),
    })
}

/// Degeneration of K3 surfaces given by a short top of rank 4.
pub fn classify_k3(t: &Top, tri: &Triangulation) -> Result<DegenerationReport> {
    require_short(t)?;
    if t.rank() != 4 {
        return Err(Error::Domain(format!("K3 degenerations need rank 4, got {}", t.rank())));
    }
    let mut r = report(t, tri)?;
    match r.case {
        SummitCase::Point => r.notes.push("X_0 is a smooth K3 surface".into()),
        SummitCase::Edge => {
            r.notes.push(format!("X_0 is a chain of {} components", r.components));
            let ends: Vec<String> = t.summit_vertices().iter().map(|v| format!("{v}")).collect();
            r.notes.push(format!("rational surfaces at the ends: {}", ends.join(", ")));
            if r.components > 2 {
                r.notes.push("interior components are elliptic ruled".into());
            }
        }
        SummitCase::TwoFace => {
            let split = r.graph.nodes.iter().filter(|n| n.component == 2).count();
            r.notes.push("rational surfaces meeting along rational curves".into());
            r.notes.push(format!("{split} summit points split into two components"));
        }
        _ => r.notes.push("rational surfaces meeting along rational curves".into()),
    }
    Ok(r)
}

/// Degeneration of Calabi-Yau threefolds given by a short top of rank 5.
/// Semistability needs a smooth resolution; the report records whether the
/// triangulation certifies it.
pub fn classify_cy3(t: &Top, tri: &Triangulation) -> Result<DegenerationReport> {
    require_short(t)?;
    if t.rank() != 5 {
        return Err(Error::Domain(format!("Calabi-Yau threefold degenerations need rank 5, got {}", t.rank())));
    }
    let mut r = report(t, tri)?;
    r.maximal_nilpotency = Some(matches!(r.case, SummitCase::ThreeFace | SummitCase::FourFace));
    r.smoothness = Some(smoothness(t, Some(tri)));
    match r.case {
        SummitCase::Point => r.notes.push("X_0 is a smooth Calabi-Yau threefold".into()),
        SummitCase::Edge => r.notes.push(format!("X_0 is a chain of {} components", r.components)),
        SummitCase::ThreeFace => {
            r.notes.push("edge rules of the two-face case applied to the three-face".into());
        }
        _ => {}
    }
    if r.smoothness != Some(Smoothness::UnimodularCertified) {
        r.notes.push("smoothness of the resolution is not certified; semistability is assumed".into());
    }
    Ok(r)
}
