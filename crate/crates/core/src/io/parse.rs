use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix, IntVector};
use crate::polytope::LatticePolytope;

/// One polytope as read from a vertex-matrix file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeRecord {
    pub id: String,
    /// The matrix exactly as written in the file.
    pub matrix: IntMatrix,
    /// Line of the header, 1-based.
    pub source_line: usize,
    /// Position of the record in its file, 0-based.
    pub class_index: usize,
}

impl PolytopeRecord {
    /// Vertices are the columns when the matrix has fewer rows than columns,
    /// the rows otherwise.
    pub fn vertices(&self) -> Vec<IntVector> {
        if self.matrix.rows() < self.matrix.cols() {
            self.matrix.transpose().row_vectors()
        } else {
            self.matrix.row_vectors()
        }
    }

    pub fn polytope(&self) -> Result<LatticePolytope> {
        let p = LatticePolytope::from_points(&self.vertices())?;
        if !p.is_full_dimensional() {
            return Err(Error::Parse {
                line: self.source_line,
                message: format!("record {} is not full-dimensional", self.id),
            });
        }
        Ok(p)
    }
}

/// Records that parsed, plus one error per malformed record.
#[derive(Clone, Debug, Default)]
pub struct ParseOutcome {
    pub records: Vec<PolytopeRecord>,
    pub errors: Vec<Error>,
}

fn tokens(line: &str) -> std::result::Result<Vec<Int>, String> {
    line.split_whitespace()
        .map(|t| t.parse::<Int>().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

fn as_header(v: &[Int]) -> Option<(usize, usize)> {
    if v.len() != 2 {
        return None;
    }
    let r: usize = v[0].clone().try_into().ok()?;
    let c: usize = v[1].clone().try_into().ok()?;
    (r > 0 && c > 0).then_some((r, c))
}

/// Parses `r c` headers each followed by `r` rows of `c` integers. Lines
/// starting with `#` and blank lines are ignored. A malformed record is
/// reported with its line number and parsing resumes at the next line that
/// looks like a header.
pub fn parse_polytope_file(text: &str, name: &str) -> ParseOutcome {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut out = ParseOutcome::default();
    let mut i = 0;
    'records: while i < lines.len() {
        let (hline, htext) = lines[i];
        let header = tokens(htext).ok().and_then(|v| as_header(&v));
        let Some((r, c)) = header else {
            out.errors.push(Error::Parse {
                line: hline,
                message: format!("expected a header \"rows cols\", found {htext:?}"),
            });
            i += 1;
            while i < lines.len() && !tokens(lines[i].1).ok().is_some_and(|v| as_header(&v).is_some()) {
                i += 1;
            }
            continue;
        };
        let mut data = Vec::with_capacity(r * c);
        for k in 0..r {
            let Some(&(line, row)) = lines.get(i + 1 + k) else {
                out.errors.push(Error::Parse {
                    line: hline,
                    message: format!("record truncated: expected {r} rows, found {k}"),
                });
                break 'records;
            };
            let bad = match tokens(row) {
                Ok(v) if v.len() == c => {
                    data.extend(v);
                    None
                }
                Ok(v) => Some(format!("expected {c} entries, found {}", v.len())),
                Err(e) => Some(e),
            };
            if let Some(message) = bad {
                out.errors.push(Error::Parse { line, message });
                // Resume at the next header, which may be the offending line.
                i += 1 + k;
                while i < lines.len() && !tokens(lines[i].1).ok().is_some_and(|v| as_header(&v).is_some()) {
                    i += 1;
                }
                continue 'records;
            }
        }
        let class_index = out.records.len() + out.errors.len();
        out.records.push(PolytopeRecord {
            id: format!("{name}#{}", out.records.len()),
            matrix: IntMatrix::new(r, c, data).expect("sized"),
            source_line: hline,
            class_index,
        });
        i += 1 + r;
    }
    out
}

/// Inverse of [`parse_polytope_file`] on well-formed records.
pub fn write_polytope_file(records: &[PolytopeRecord]) -> String {
    let mut s = String::new();
    for rec in records {
        let m = &rec.matrix;
        let _ = writeln!(s, "{} {}", m.rows(), m.cols());
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(|e| e.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
    }
    s
}

const REFLEXIVE_3D: &str = include_str!("../../data/reflexive_3d.txt");
const REFLEXIVE_2D: &str = include_str!("../../data/reflexive_2d.txt");

/// The 4,319 classes of three-dimensional reflexive polytopes, in the order of
/// the public classification file shipped with the crate.
pub fn reflexive_3d_database() -> Vec<PolytopeRecord> {
    let out = parse_polytope_file(REFLEXIVE_3D, "reflexive3d");
    debug_assert!(out.errors.is_empty());
    out.records
}

/// The 16 classes of reflexive polygons from the same source.
pub fn reflexive_2d_database() -> Vec<PolytopeRecord> {
    let out = parse_polytope_file(REFLEXIVE_2D, "reflexive2d");
    debug_assert!(out.errors.is_empty());
    out.records
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron_as_columns() {
        let text = "3 6\n1 -1 0 0 0 0\n0 0 1 -1 0 0\n0 0 0 0 1 -1\n";
        let out = parse_polytope_file(text, "t");
        assert!(out.errors.is_empty());
        let p = out.records[0].polytope().unwrap();
        assert_eq!(p.vertices().len(), 6);
        assert!(p.is_smooth_fano().unwrap());
    }

    #[test]
    fn simplex_as_rows() {
        let text = "# comment\n4 3\n1 0 0\n0 1 0\n0 0 1\n-1 -1 -1\n";
        let out = parse_polytope_file(text, "t");
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].source_line, 2);
        assert_eq!(out.records[0].polytope().unwrap().vertices().len(), 4);
    }

    #[test]
    fn bad_row_is_reported_and_parsing_continues() {
        let text = "4 3\n1 0 0\n0 1\n3 2\n1 0\n0 1\n-1 -1\n";
        let out = parse_polytope_file(text, "t");
        assert_eq!(out.errors.len(), 1);
        assert!(matches!(out.errors[0], Error::Parse { line: 3, .. }));
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].matrix.rows(), 3);
    }

    #[test]
    fn truncated_record() {
        let out = parse_polytope_file("3 2\n1 0\n0 1\n", "t");
        assert!(out.records.is_empty());
        assert!(matches!(out.errors[0], Error::Parse { line: 1, .. }));
    }

    #[test]
    fn garbage_token() {
        let out = parse_polytope_file("2 2\n1 x\n0 1\n2 1\n1\n-1\n", "t");
        assert_eq!(out.errors.len(), 1);
        assert_eq!(out.records.len(), 1);
    }

    #[test]
    fn round_trip() {
        let db = reflexive_2d_database();
        let text = write_polytope_file(&db);
        let again = parse_polytope_file(&text, "reflexive2d");
        assert_eq!(again.records.iter().map(|r| &r.matrix).collect::<Vec<_>>(), db.iter().map(|r| &r.matrix).collect::<Vec<_>>());
        assert_eq!(write_polytope_file(&again.records), text);
    }

    #[test]
    fn embedded_databases() {
        assert_eq!(reflexive_2d_database().len(), 16);
        assert_eq!(reflexive_3d_database().len(), 4319);
    }
}
