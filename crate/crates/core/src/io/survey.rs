use rayon::prelude::*;
use serde::Serialize;

use super::PolytopeRecord;
use crate::tops::{admits_case2_split, case3a_triangulation_exists, origin_interior_segment};

/// Indices (in the Sage database order) of the classes whose dual admits no
/// case-2 split.
pub const REFERENCE_CASE2_FAILURES: [usize; 10] = [0, 2, 5, 7, 16, 26, 31, 37, 40, 53];

/// Indices (in the Sage database order) of the classes with no lattice
/// segment through the origin.
pub const REFERENCE_SEGMENT_FAILURES: [usize; 13] = [0, 1, 3, 6, 13, 22, 33, 54, 68, 87, 90, 98, 118];

/// Verdicts for one database class, read as the dual `Δ°`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassVerdict {
    pub index: usize,
    pub id: String,
    pub reflexive: bool,
    pub polar_reflexive: Option<bool>,
    pub smooth_fano: Option<bool>,
    pub case2_split: Option<bool>,
    pub origin_segment: Option<bool>,
    pub case3a_triangulation: Option<bool>,
    pub error: Option<String>,
}

/// Tallies over the reflexive classes; non-reflexive records are excluded.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SurveyCounts {
    pub reflexive: usize,
    pub non_reflexive: usize,
    pub polar_reflexive: usize,
    pub smooth_fano: usize,
    pub case2_failures: usize,
    pub segment_failures: usize,
    pub case3a_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub total: usize,
    pub counts: SurveyCounts,
    pub case2_failure_indices: Vec<usize>,
    pub segment_failure_indices: Vec<usize>,
    /// Whether the failure indices coincide with the reference lists. Only
    /// meaningful when the input is the full database in Sage order.
    pub case2_matches_reference: bool,
    pub segment_matches_reference: bool,
    pub classes: Vec<ClassVerdict>,
}

fn verdict(index: usize, r: &PolytopeRecord) -> ClassVerdict {
    let mut v = ClassVerdict {
        index,
        id: r.id.clone(),
        reflexive: false,
        polar_reflexive: None,
        smooth_fano: None,
        case2_split: None,
        origin_segment: None,
        case3a_triangulation: None,
        error: None,
    };
    let p = match r.polytope() {
        Ok(p) => p,
        Err(e) => {
            v.error = Some(e.to_string());
            return v;
        }
    };
    v.reflexive = p.rank() == 3 && p.is_reflexive();
    if !v.reflexive {
        v.error = Some("not a reflexive 3-polytope".into());
        return v;
    }
    let mut run = || -> crate::Result<()> {
        v.polar_reflexive = Some(p.lattice_polar()?.is_reflexive());
        v.smooth_fano = Some(p.is_smooth_fano()?);
        v.case2_split = Some(admits_case2_split(&p)?.is_some());
        v.origin_segment = Some(origin_interior_segment(&p).is_some());
        v.case3a_triangulation = Some(case3a_triangulation_exists(&p)?.is_some());
        Ok(())
    };
    if let Err(e) = run() {
        v.error = Some(e.to_string());
    }
    v
}

/// Per-class verdicts over a database of reflexive 3-polytopes, in input
/// order, with aggregate counts.
pub fn run_survey(db: &[PolytopeRecord]) -> SurveyReport {
    let classes: Vec<ClassVerdict> = db.par_iter().enumerate().map(|(i, r)| verdict(i, r)).collect();
    let mut counts = SurveyCounts::default();
    let mut case2_failure_indices = Vec::new();
    let mut segment_failure_indices = Vec::new();
    for c in &classes {
        if !c.reflexive {
            counts.non_reflexive += 1;
            continue;
        }
        counts.reflexive += 1;
        counts.polar_reflexive += usize::from(c.polar_reflexive == Some(true));
        counts.smooth_fano += usize::from(c.smooth_fano == Some(true));
        if c.case2_split == Some(false) {
            counts.case2_failures += 1;
            case2_failure_indices.push(c.index);
        }
        if c.origin_segment == Some(false) {
            counts.segment_failures += 1;
            segment_failure_indices.push(c.index);
        }
        counts.case3a_failures += usize::from(c.case3a_triangulation == Some(false));
    }
    SurveyReport {
        total: db.len(),
        case2_matches_reference: case2_failure_indices == REFERENCE_CASE2_FAILURES,
        segment_matches_reference: segment_failure_indices == REFERENCE_SEGMENT_FAILURES,
        counts,
        case2_failure_indices,
        segment_failure_indices,
        classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_polytope_file;

    #[test]
    fn octahedron_survey() {
        let text = "3 6\n1 -1 0 0 0 0\n0 0 1 -1 0 0\n0 0 0 0 1 -1\n";
        let db = parse_polytope_file(text, "oct").records;
        let r = run_survey(&db);
        let c = &r.classes[0];
        assert!(c.reflexive);
        assert_eq!(c.polar_reflexive, Some(true));
        assert_eq!(c.smooth_fano, Some(true));
        assert_eq!(c.case2_split, Some(true));
        assert_eq!(c.origin_segment, Some(true));
        assert_eq!(c.case3a_triangulation, Some(true));
        assert_eq!(r.counts.reflexive, 1);
    }

    #[test]
    fn non_reflexive_is_flagged() {
        let text = "3 4\n2 0 0 -1\n0 2 0 -1\n0 0 2 -1\n";
        let r = run_survey(&parse_polytope_file(text, "x").records);
        assert!(!r.classes[0].reflexive);
        assert_eq!(r.counts.non_reflexive, 1);
        assert_eq!(r.counts.reflexive, 0);
    }

    #[test]
    fn counts_ignore_order() {
        let mut db: Vec<PolytopeRecord> = crate::io::reflexive_3d_database().into_iter().take(60).collect();
        let a = run_survey(&db).counts;
        db.reverse();
        assert_eq!(run_survey(&db).counts, a);
    }
}
