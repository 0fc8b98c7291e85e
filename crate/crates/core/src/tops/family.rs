use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::top::{is_short_top, is_top, Top};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, solve_unimodular_system, Int, IntMatrix, IntVector};
use crate::polytope::{convex_hull, LatticePolytope};
use crate::triangulation::{fold_form, is_regular, is_valid, ridge_links, Triangulation};

/// `coefficients · a + constant`, over the free parameters of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineForm {
    #[serde(serialize_with = "crate::linalg::serialize_ints")]
    pub coefficients: Vec<Int>,
    #[serde(serialize_with = "crate::linalg::serialize_int")]
    pub constant: Int,
}

impl AffineForm {
    pub fn eval(&self, a: &[Int]) -> Int {
        self.coefficients.iter().zip(a).map(|(c, x)| c * x).sum::<Int>() + &self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let m = c.abs();
            if m.is_one() {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "{m}*a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant.is_zero() {
            Ok(())
        } else {
            let sign = if self.constant.is_negative() { "-" } else { "+" };
            write!(f, " {sign} {}", self.constant.abs())
        }
    }
}

/// `modulus | form`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    #[serde(serialize_with = "crate::linalg::serialize_int")]
    pub modulus: Int,
    pub form: AffineForm,
}

impl Congruence {
    pub fn holds(&self, a: &[Int]) -> bool {
        self.form.eval(a).is_multiple_of(&self.modulus)
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus.is_one() || (self.form.is_constant() && self.form.constant.is_multiple_of(&self.modulus))
    }
}

/// Integrality of the summit point attached to one boundary simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityCondition {
    /// Index into the triangulation's simplices.
    pub simplex: usize,
    /// Invariant factors of the simplex's vertex matrix.
    #[serde(serialize_with = "crate::linalg::serialize_ints")]
    pub moduli: Vec<Int>,
    pub congruences: Vec<Congruence>,
}

impl DivisibilityCondition {
    pub fn holds(&self, a: &[Int]) -> bool {
        self.congruences.iter().all(|c| c.holds(a))
    }

    pub fn is_trivial(&self) -> bool {
        self.congruences.iter().all(Congruence::is_trivial)
    }
}

/// Local convexity across an interior ridge of the star: `form ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexityInequality {
    /// Pool indices of the ridge, origin included.
    pub ridge: Vec<usize>,
    /// Pool indices of the two opposite vertices.
    pub opposite: (usize, usize),
    pub form: AffineForm,
}

impl ConvexityInequality {
    pub fn holds(&self, a: &[Int]) -> bool {
        !self.form.eval(a).is_negative()
    }
}

/// Values for the free parameters, in the family's parameter order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterAssignment(#[serde(serialize_with = "crate::linalg::serialize_ints")] pub Vec<Int>);

impl ParameterAssignment {
    pub fn from_i64s(values: &[i64]) -> Self {
        ParameterAssignment(values.iter().map(|&v| Int::from(v)).collect())
    }
}

/// The short tops over a reflexive base and a regular star triangulation.
///
/// Heights `a_v` are attached to the used boundary points; the origin and
/// the vertices of the gauge simplex (the lexicographically least simplex)
/// are pinned to `−1`, which fixes the `GL(k, Z)` shears preserving the
/// base. The remaining used points carry the free parameters in pool order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopFamily {
    base: LatticePolytope,
    triangulation: Triangulation,
    origin: usize,
    gauge: usize,
    pinned: Vec<usize>,
    parameters: Vec<usize>,
    divisibility: Vec<DivisibilityCondition>,
    inequalities: Vec<ConvexityInequality>,
}

/// Bounded facet of a dual top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedFacet {
    /// Primitive inner normal, a summit point of the top.
    pub normal: IntVector,
    /// Pool indices whose lifts lie on the facet.
    pub points: Vec<usize>,
}

/// Lower boundary of a dual top, given by heights over the pool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualTop {
    points: Vec<IntVector>,
    #[serde(serialize_with = "crate::linalg::serialize_int_opts")]
    heights: Vec<Option<Int>>,
    facets: Vec<BoundedFacet>,
}

impl DualTop {
    pub fn points(&self) -> &[IntVector] {
        &self.points
    }

    pub fn heights(&self) -> &[Option<Int>] {
        &self.heights
    }

    pub fn bounded_facets(&self) -> &[BoundedFacet] {
        &self.facets
    }

    /// Lifted points `(v, a_v)` of the used pool points.
    pub fn lifted_points(&self) -> Vec<IntVector> {
        self.points
            .iter()
            .zip(&self.heights)
            .filter_map(|(p, h)| h.as_ref().map(|h| p.extended(h.clone())))
            .collect()
    }
}

/// Integral normal `(x', 1)` of the lifted facet over a boundary simplex
/// with vertex rows `b`, lifted to `heights`. The normal exists iff
/// `b·x' = −(a + 1)` has an integral solution, i.e. iff `d_i | (U⁻¹(a+1))_i`
/// for the Smith form `b = U·D·V`.
pub fn facet_divisibility(b: &IntMatrix, heights: &IntVector) -> Result<(bool, Option<IntVector>)> {
    let rhs = IntVector::new(heights.iter().map(|h| -(h + Int::one())).collect());
    match solve_unimodular_system(b, &rhs) {
        Ok(Some(x)) => Ok((true, Some(x.extended(Int::one())))),
        Ok(None) => Ok((false, None)),
        Err(Error::Singular) => Err(Error::DegenerateFacet("singular vertex matrix".into())),
        Err(e) => Err(e),
    }
}

/// Convexity form across the ridge spanned by `ridge` and the origin, with
/// opposite vertices `u1`, `u2`. Coefficients are for the heights of
/// `[ridge.., origin, u1, u2]`.
pub fn ridge_convexity_form(ridge: &[IntVector], u1: &IntVector, u2: &IntVector) -> Result<Vec<Int>> {
    let mut pts = ridge.to_vec();
    pts.push(IntVector::zeros(u1.rank()));
    fold_form(&pts, u1, u2)
}

impl TopFamily {
    pub fn base(&self) -> &LatticePolytope {
        &self.base
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    /// Index of the gauge simplex.
    pub fn gauge(&self) -> usize {
        self.gauge
    }

    /// Pool indices pinned to `−1` (the origin last).
    pub fn pinned(&self) -> &[usize] {
        &self.pinned
    }

    /// Pool indices of the free parameters `a1, a2, …`.
    pub fn parameters(&self) -> &[usize] {
        &self.parameters
    }

    pub fn parameter_count(&self) -> usize {
        self.parameters.len()
    }

    pub fn divisibility(&self) -> &[DivisibilityCondition] {
        &self.divisibility
    }

    pub fn inequalities(&self) -> &[ConvexityInequality] {
        &self.inequalities
    }

    /// True when every modulus is one.
    pub fn divisibility_is_trivial(&self) -> bool {
        self.divisibility.iter().all(|d| d.moduli.iter().all(One::is_one))
    }

    /// Heights over the pool; `None` for points no simplex uses.
    pub fn heights(&self, s: &ParameterAssignment) -> Result<Vec<Option<Int>>> {
        if s.0.len() != self.parameters.len() {
            return Err(Error::Argument(format!(
                "expected {} parameters, got {}",
                self.parameters.len(),
                s.0.len()
            )));
        }
        let mut h = vec![None; self.triangulation.points().len()];
        for &i in &self.pinned {
            h[i] = Some(-Int::one());
        }
        for (&i, v) in self.parameters.iter().zip(&s.0) {
            h[i] = Some(v.clone());
        }
        Ok(h)
    }

    /// First violated record, if any.
    pub fn violation(&self, s: &ParameterAssignment) -> Option<String> {
        for d in &self.divisibility {
            for (i, c) in d.congruences.iter().enumerate() {
                if !c.holds(&s.0) {
                    return Some(format!(
                        "divisibility condition {i} of simplex {}: {} must divide {}",
                        d.simplex, c.modulus, c.form
                    ));
                }
            }
        }
        for (i, q) in self.inequalities.iter().enumerate() {
            if !q.holds(&s.0) {
                return Some(format!("convexity inequality {i}: {} >= 0", q.form));
            }
        }
        None
    }

    /// The short top and dual top for an admissible assignment.
    pub fn instantiate(&self, s: &ParameterAssignment) -> Result<(Top, DualTop)> {
        let heights = self.heights(s)?;
        if let Some(v) = self.violation(s) {
            return Err(Error::Constraint(v));
        }
        let cells = self.triangulation.cells()?;
        let (top, dual) = lift_to_top(&self.base, self.triangulation.points(), &cells, &heights)?;
        if !is_short_top(&top) {
            return Err(Error::Structure("instantiated top is not short".into()));
        }
        if dual.facets.iter().any(|f| !f.points.contains(&self.origin)) {
            return Err(Error::Structure("a bounded facet misses w".into()));
        }
        Ok((top, dual))
    }
}

/// Builds the family of short tops over `base` from a regular boundary
/// triangulation `t` whose pool contains the origin.
pub fn build_short_top_family(base: &LatticePolytope, t: &Triangulation) -> Result<TopFamily> {
    if !base.is_reflexive() {
        return Err(Error::Precondition("base is not reflexive".into()));
    }
    if !t.is_boundary() || t.rank() != base.rank() {
        return Err(Error::Precondition("expected a boundary triangulation of the base".into()));
    }
    let origin = t
        .origin_index()
        .ok_or_else(|| Error::Precondition("origin missing from the point pool".into()))?;
    if t.points().iter().any(|p| !base.contains(p)) {
        return Err(Error::Precondition("pool point outside the base".into()));
    }
    let used = t.used_points();
    let used_pts: Vec<IntVector> = used.iter().map(|&i| t.points()[i].clone()).collect();
    if convex_hull(&used_pts)?.vertices() != base.vertices() || !is_valid(t) {
        return Err(Error::Precondition("triangulation does not cover the base boundary".into()));
    }
    if !t.certificate_is_valid() && is_regular(t)?.is_none() {
        return Err(Error::Precondition("triangulation is not regular".into()));
    }

    let gauge = 0;
    let mut pinned = t.simplices()[gauge].clone();
    pinned.push(origin);
    let parameters: Vec<usize> = used.iter().copied().filter(|i| !pinned.contains(i)).collect();
    let slot: BTreeMap<usize, usize> = parameters.iter().enumerate().map(|(j, &i)| (i, j)).collect();
    let p = parameters.len();

    // Form in the parameters for a combination Σ c_i·(a_i + δ), δ = 1 for
    // divisibility (shifted heights) and δ = 0 for raw heights.
    let form = |terms: &[(usize, Int)], shifted: bool| -> AffineForm {
        let mut coefficients = vec![Int::zero(); p];
        let mut constant = Int::zero();
        for (i, c) in terms {
            match slot.get(i) {
                Some(&j) => {
                    coefficients[j] += c;
                    if shifted {
                        constant += c;
                    }
                }
                None if !shifted => constant -= c,
                None => {}
            }
        }
        AffineForm { coefficients, constant }
    };

    let mut divisibility = Vec::with_capacity(t.simplices().len());
    for (si, s) in t.simplices().iter().enumerate() {
        let b = IntMatrix::from_rows(&t.simplex_points(s))?;
        let snf = smith_normal_form(&b);
        if snf.diag.iter().any(Zero::is_zero) {
            return Err(Error::DegenerateFacet("singular vertex matrix".into()));
        }
        let congruences = snf
            .diag
            .iter()
            .enumerate()
            .map(|(r, d)| {
                let terms: Vec<(usize, Int)> = s.iter().enumerate().map(|(j, &i)| (i, snf.u_inv[(r, j)].clone())).collect();
                let mut f = form(&terms, true);
                f.coefficients.iter_mut().for_each(|c| *c = c.mod_floor(d));
                f.constant = f.constant.mod_floor(d);
                Congruence {
                    modulus: d.clone(),
                    form: f,
                }
            })
            .collect();
        divisibility.push(DivisibilityCondition {
            simplex: si,
            moduli: snf.diag.clone(),
            congruences,
        });
    }

    let cells = t.cells()?;
    let full = Triangulation::new(t.points().to_vec(), cells)?;
    let links = ridge_links(&full)?;
    let mut inequalities = Vec::with_capacity(links.interior.len());
    for (ridge, a, b) in &links.interior {
        let u1 = *full.simplices()[*a].iter().find(|i| !ridge.contains(i)).expect("apex");
        let u2 = *full.simplices()[*b].iter().find(|i| !ridge.contains(i)).expect("apex");
        let coeffs = fold_form(&t.simplex_points(ridge), &t.points()[u1], &t.points()[u2])?;
        let terms: Vec<(usize, Int)> = ridge.iter().chain([&u1, &u2]).copied().zip(coeffs).collect();
        inequalities.push(ConvexityInequality {
            ridge: ridge.clone(),
            opposite: (u1, u2),
            form: form(&terms, false),
        });
    }

    Ok(TopFamily {
        base: base.clone(),
        triangulation: t.clone(),
        origin,
        gauge,
        pinned,
        parameters,
        divisibility,
        inequalities,
    })
}

/// Top and dual top from heights over the cells of a triangulation of the
/// base (cells of `rank + 1` pool points). Each cell lifts to a facet of the
/// dual top whose normal is solved from `x·(v, a_v) = −1`; equal normals are
/// merged. The top is the hull of the base's polar at height zero together
/// with these normals.
pub fn lift_to_top(
    base: &LatticePolytope,
    points: &[IntVector],
    cells: &[Vec<usize>],
    heights: &[Option<Int>],
) -> Result<(Top, DualTop)> {
    let k = base.rank() + 1;
    let lifted: Vec<Option<IntVector>> = points
        .iter()
        .zip(heights)
        .map(|(p, h)| h.as_ref().map(|h| p.extended(h.clone())))
        .collect();
    let minus_one = IntVector::new(vec![-Int::one(); k]);
    let mut normals: Vec<IntVector> = Vec::new();
    for c in cells {
        let rows: Vec<IntVector> = c
            .iter()
            .map(|&i| lifted[i].clone().ok_or_else(|| Error::Argument(format!("no height for pool point {i}"))))
            .collect::<Result<_>>()?;
        let m = IntMatrix::from_rows(&rows)?;
        let x = match solve_unimodular_system(&m, &minus_one) {
            Ok(Some(x)) => x,
            Ok(None) => return Err(Error::Constraint(format!("cell {c:?} lifts to a non-integral facet"))),
            Err(Error::Singular) => return Err(Error::DegenerateFacet("singular vertex matrix".into())),
            Err(e) => return Err(e),
        };
        normals.push(x);
    }
    normals.sort();
    normals.dedup();

    let mut facets = Vec::with_capacity(normals.len());
    for x in &normals {
        let mut on = Vec::new();
        for (i, l) in lifted.iter().enumerate() {
            let Some(l) = l else { continue };
            let s = x.dot(l) + Int::one();
            if s.is_negative() {
                return Err(Error::Constraint(format!("lift is not convex at pool point {i}")));
            }
            if s.is_zero() {
                on.push(i);
            }
        }
        facets.push(BoundedFacet {
            normal: x.clone(),
            points: on,
        });
    }

    let polar = base.lattice_polar()?;
    let mut gen: Vec<IntVector> = polar.vertices().iter().map(|u| u.extended(Int::zero())).collect();
    gen.extend(normals.iter().cloned());
    let poly = convex_hull(&gen)?;
    let top = is_top(&poly).ok_or_else(|| Error::Structure("lift does not produce a top".into()))?;
    if top.transform() != &IntMatrix::identity(k) {
        return Err(Error::Structure("top is not in standard position".into()));
    }

    // Round trip: the lower and vertical facets of the lifted points,
    // capped above, are exactly the vertices of the top.
    let cap = heights.iter().flatten().max().cloned().unwrap_or_default() + Int::one();
    let mut q: Vec<IntVector> = lifted.iter().flatten().cloned().collect();
    q.extend(base.vertices().iter().map(|v| v.extended(cap.clone())));
    let dual = convex_hull(&q)?;
    let mut back: Vec<IntVector> = Vec::new();
    for f in dual.facets() {
        if f.normal[k - 1].is_negative() {
            continue;
        }
        if f.offset != -Int::one() {
            return Err(Error::Structure("dual top has a facet off distance one".into()));
        }
        back.push(f.normal.clone());
    }
    back.sort();
    if back != top.polytope().vertices() {
        return Err(Error::Structure("polar round trip disagrees".into()));
    }
    Ok((
        top,
        DualTop {
            points: points.to_vec(),
            heights: heights.to_vec(),
            facets,
        },
    ))
}
