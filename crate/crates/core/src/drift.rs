//! Drift bookkeeping in an infinite cyclic cover punctured at lifted
//! periodic orbits.
//!
//! A closed curve in the punctured cover drifts by a deck-transformation
//! power when followed once around; that power is a homomorphism on first
//! homology, so it is determined by the winding numbers of the curve around
//! the punctures together with a local drift integer carried by each
//! puncture (the drift of a small counterclockwise circle around it). Local
//! drift magnitudes are input data here; their signs obey the sign law
//! `sign(local_drift) = -sign(mult)`, which [`sign_consistency`] checks.
//!
//! Winding numbers are computed by casting a horizontal ray toward `+x` with
//! the half-open edge convention: an edge contributes exactly when one of
//! its endpoints lies strictly above the ray. Point-in-polygon queries used
//! by the checking routines go through the even-odd parity of the same ray,
//! which keeps the two sides of [`local_drift_sum_check`] on separate
//! routes.
//!
//! [`su_rectangle_from_lozenge`] realizes the doubling rectangle spanned
//! inside a `PlusPlus` lozenge of the positive strip: each bounded half-leaf
//! from a corner is parametrized by `u in (0, oo)` through the
//! fractional-linear map `u -> u / (1 + u)` onto its normalized length, and
//! the symmetry `g` doubles `u` from the repelling corner and halves it from
//! the attracting one. Following the rectangle boundary against `n1` and
//! `n2` deck powers on the two unstable sides drifts by `-(n1 + n2)`, which
//! [`rectangle_boundary_drift`] records.

use crate::rational::Rational;
use crate::strip_plane::{
    lozenge_at, Lozenge, LozengeType, PlaneModel, PlanePoint, QuadrantSigns, Sign,
};
use crate::torus_homology::BoundaryInvariant;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A puncture of the cover: a position, the drift of a small
/// counterclockwise circle around it, and optionally the boundary invariant
/// of the orbit it lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Puncture {
    pub position: PlanePoint,
    pub local_drift: i64,
    pub invariant: Option<BoundaryInvariant>,
}

impl Puncture {
    pub fn new(position: PlanePoint, local_drift: i64) -> Self {
        Self {
            position,
            local_drift,
            invariant: None,
        }
    }

    pub fn with_invariant(
        position: PlanePoint,
        local_drift: i64,
        invariant: BoundaryInvariant,
    ) -> Self {
        Self {
            position,
            local_drift,
            invariant: Some(invariant),
        }
    }
}

/// The punctured cover: finitely many punctures at pairwise distinct
/// positions, kept in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturedCover {
    punctures: Vec<Puncture>,
}

impl PuncturedCover {
    pub fn new(punctures: Vec<Puncture>) -> Result<Self, DriftError> {
        for (i, a) in punctures.iter().enumerate() {
            for b in &punctures[i + 1..] {
                if a.position == b.position {
                    return Err(DriftError::DuplicatePuncture {
                        x: a.position.x.clone(),
                        y: a.position.y.clone(),
                    });
                }
            }
        }
        Ok(Self { punctures })
    }

    pub fn punctures(&self) -> &[Puncture] {
        &self.punctures
    }
}

/// Closed polygonal curve: at least three vertices, consecutive vertices
/// distinct (including the closing edge back to the first vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCurve {
    vertices: Vec<PlanePoint>,
}

impl PolyCurve {
    pub fn new(vertices: Vec<PlanePoint>) -> Result<Self, DriftError> {
        if vertices.len() < 3 {
            return Err(DriftError::TooFewVertices {
                count: vertices.len(),
            });
        }
        for i in 0..vertices.len() {
            let j = (i + 1) % vertices.len();
            if vertices[i] == vertices[j] {
                return Err(DriftError::RepeatedVertex { index: i });
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[PlanePoint] {
        &self.vertices
    }

    /// Edges as (start, end) pairs, closing edge included.
    fn edges(&self) -> impl Iterator<Item = (&PlanePoint, &PlanePoint)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> PolyCurve {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PolyCurve { vertices }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriftError {
    #[error("two punctures share the position ({x}, {y})")]
    DuplicatePuncture { x: Rational, y: Rational },
    #[error("a closed curve needs at least 3 vertices, got {count}")]
    TooFewVertices { count: usize },
    #[error("consecutive vertices {index} and its successor coincide")]
    RepeatedVertex { index: usize },
    #[error("point ({x}, {y}) lies on the curve")]
    PointOnCurve { x: Rational, y: Rational },
    #[error("curve is not simple")]
    NotSimple,
    #[error("curve is not counterclockwise")]
    NotCcw,
    #[error("enclosed puncture at ({x}, {y}) carries no boundary invariant")]
    MissingInvariant { x: Rational, y: Rational },
    #[error("deck transformation counts must be >= 1, got {count}")]
    InvalidDeckCount { count: i64 },
    #[error("doubling rectangles live in the positive strip")]
    WrongModel,
    #[error("doubling rectangles need a PlusPlus lozenge of the model")]
    WrongLozengeType,
    #[error("point is not strictly inside the lozenge")]
    PointNotInLozenge,
}

/// Verdict data of [`local_drift_sum_check`]: the drift of the boundary
/// curve against the sum of enclosed local drifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DriftSumCheck {
    pub curve_drift: i64,
    pub enclosed_sum: i64,
}

impl DriftSumCheck {
    pub fn accepted(&self) -> bool {
        self.curve_drift == self.enclosed_sum
    }
}

/// Verdict of the puncture sign law check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignCheck {
    Consistent,
    Inconsistent { mult: i64, local_drift: i64 },
}

/// The doubling rectangle `R` spanned inside a lozenge: corners
/// `R(0,0) = eta1`, `R(1,0) = g_eta1`, `R(1,1) = g_eta2`, `R(0,1) = eta2`,
/// listed counterclockwise. Opposite sides lie on common stable
/// (horizontal) and unstable (vertical) leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuRectangle {
    pub eta1: PlanePoint,
    pub g_eta1: PlanePoint,
    pub g_eta2: PlanePoint,
    pub eta2: PlanePoint,
}

impl SuRectangle {
    /// Vertices in boundary order `R(0,0), R(1,0), R(1,1), R(0,1)`.
    pub fn vertices(&self) -> [&PlanePoint; 4] {
        [&self.eta1, &self.g_eta1, &self.g_eta2, &self.eta2]
    }

    /// The boundary as a closed curve.
    pub fn boundary_curve(&self) -> PolyCurve {
        PolyCurve::new(vec![
            self.eta1.clone(),
            self.g_eta1.clone(),
            self.g_eta2.clone(),
            self.eta2.clone(),
        ])
        .expect("rectangle corners are pairwise distinct")
    }
}

fn narrow(value: i128, what: &str) -> i64 {
    i64::try_from(value).unwrap_or_else(|_| panic!("{what} overflows i64: {value}"))
}

/// Signed area of the triangle `(o, a, b)` scaled by 2.
fn cross(o: &PlanePoint, a: &PlanePoint, b: &PlanePoint) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

fn on_segment(p: &PlanePoint, a: &PlanePoint, b: &PlanePoint) -> bool {
    if !cross(a, b, p).is_zero() {
        return false;
    }
    let in_range = |v: &Rational, lo: &Rational, hi: &Rational| {
        if lo <= hi {
            lo <= v && v <= hi
        } else {
            hi <= v && v <= lo
        }
    };
    in_range(&p.x, &a.x, &b.x) && in_range(&p.y, &a.y, &b.y)
}

fn ensure_off_curve(curve: &PolyCurve, p: &PlanePoint) -> Result<(), DriftError> {
    for (a, b) in curve.edges() {
        if on_segment(p, a, b) {
            return Err(DriftError::PointOnCurve {
                x: p.x.clone(),
                y: p.y.clone(),
            });
        }
    }
    Ok(())
}

/// Ray crossings of the horizontal `+x` ray from `p`, with the half-open
/// convention: an edge counts exactly when one endpoint is strictly above
/// the ray. Yields `(upward, downward)` crossing counts.
fn ray_crossings(curve: &PolyCurve, p: &PlanePoint) -> (u64, u64) {
    let mut up = 0;
    let mut down = 0;
    for (a, b) in curve.edges() {
        let a_above = a.y > p.y;
        let b_above = b.y > p.y;
        if a_above == b_above {
            continue;
        }
        // One endpoint strictly above: the edge crosses the horizontal line
        // through p in a single point with b.y != a.y.
        let t = (&p.y - &a.y) / (&b.y - &a.y);
        let x = &a.x + &t * (&b.x - &a.x);
        if x > p.x {
            if b_above {
                up += 1;
            } else {
                down += 1;
            }
        }
    }
    (up, down)
}

/// Winding number of the closed curve around `p`.
pub fn winding_number(curve: &PolyCurve, p: &PlanePoint) -> Result<i64, DriftError> {
    ensure_off_curve(curve, p)?;
    let (up, down) = ray_crossings(curve, p);
    Ok(narrow(i128::from(up) - i128::from(down), "winding number"))
}

/// Even-odd point-in-polygon test with the same ray convention.
fn even_odd_inside(curve: &PolyCurve, p: &PlanePoint) -> Result<bool, DriftError> {
    ensure_off_curve(curve, p)?;
    let (up, down) = ray_crossings(curve, p);
    Ok((up + down) % 2 == 1)
}

/// Drift of a closed curve: the sum over punctures of winding number times
/// local drift.
pub fn drift(cover: &PuncturedCover, curve: &PolyCurve) -> Result<i64, DriftError> {
    let mut total: i128 = 0;
    for puncture in cover.punctures() {
        let w = winding_number(curve, &puncture.position)?;
        total += i128::from(w) * i128::from(puncture.local_drift);
    }
    Ok(narrow(total, "drift"))
}

/// Whether both segments `[a, b]` and `[c, d]` meet in at least one point.
fn segments_touch(a: &PlanePoint, b: &PlanePoint, c: &PlanePoint, d: &PlanePoint) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    let opposite = |u: &Rational, v: &Rational| {
        (u.is_positive() && v.is_negative()) || (u.is_negative() && v.is_positive())
    };
    if opposite(&d1, &d2) && opposite(&d3, &d4) {
        return true;
    }
    (d1.is_zero() && on_segment(a, c, d))
        || (d2.is_zero() && on_segment(b, c, d))
        || (d3.is_zero() && on_segment(c, a, b))
        || (d4.is_zero() && on_segment(d, a, b))
}

/// Whether the closed curve is simple: non-adjacent edges are disjoint and
/// adjacent edges share only their common vertex.
pub fn is_simple(curve: &PolyCurve) -> bool {
    let n = curve.vertices.len();
    let v = |i: usize| &curve.vertices[i % n];
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Shared vertex w between (u, w) and (w, t): the remaining
                // endpoints must stay off the other edge, which also rules
                // out collinear overlap.
                let (u, w, t) = if j == i + 1 {
                    (v(i), v(i + 1), v(i + 2))
                } else {
                    (v(n - 1), v(0), v(1))
                };
                if on_segment(t, u, w) || on_segment(u, w, t) {
                    return false;
                }
            } else if segments_touch(v(i), v(i + 1), v(j), v(j + 1)) {
                return false;
            }
        }
    }
    true
}

/// Whether a simple closed curve is counterclockwise (positive shoelace
/// area).
pub fn is_ccw(curve: &PolyCurve) -> bool {
    let mut doubled_area = Rational::zero();
    let n = curve.vertices.len();
    for i in 0..n {
        let a = &curve.vertices[i];
        let b = &curve.vertices[(i + 1) % n];
        doubled_area += &a.x * &b.y - &b.x * &a.y;
    }
    doubled_area.is_positive()
}

/// Checks that the drift of a simple counterclockwise curve equals the sum
/// of local drifts over the punctures it encloses, computing the two sides
/// by independent routes (signed winding numbers against even-odd
/// enclosure).
pub fn local_drift_sum_check(
    cover: &PuncturedCover,
    curve: &PolyCurve,
) -> Result<DriftSumCheck, DriftError> {
    if !is_simple(curve) {
        return Err(DriftError::NotSimple);
    }
    if !is_ccw(curve) {
        return Err(DriftError::NotCcw);
    }
    let curve_drift = drift(cover, curve)?;
    let mut enclosed_sum: i128 = 0;
    for puncture in cover.punctures() {
        if even_odd_inside(curve, &puncture.position)? {
            enclosed_sum += i128::from(puncture.local_drift);
        }
    }
    Ok(DriftSumCheck {
        curve_drift,
        enclosed_sum: narrow(enclosed_sum, "enclosed drift sum"),
    })
}

/// The sign law at one puncture: the local drift and the boundary
/// multiplicity must carry opposite signs.
pub fn sign_consistency(puncture: &Puncture) -> Result<SignCheck, DriftError> {
    let Some(invariant) = &puncture.invariant else {
        return Err(DriftError::MissingInvariant {
            x: puncture.position.x.clone(),
            y: puncture.position.y.clone(),
        });
    };
    if puncture.local_drift.signum() == -invariant.mult.signum() {
        Ok(SignCheck::Consistent)
    } else {
        Ok(SignCheck::Inconsistent {
            mult: invariant.mult,
            local_drift: puncture.local_drift,
        })
    }
}

/// For a simple counterclockwise curve of negative drift, produces the
/// first enclosed puncture (in insertion order) with negative local drift;
/// by the sign law that puncture has positive boundary multiplicity.
/// Returns `None` when the drift is nonnegative.
pub fn witness_positive_boundary(
    cover: &PuncturedCover,
    curve: &PolyCurve,
) -> Result<Option<Puncture>, DriftError> {
    if !is_simple(curve) {
        return Err(DriftError::NotSimple);
    }
    if !is_ccw(curve) {
        return Err(DriftError::NotCcw);
    }
    if drift(cover, curve)? >= 0 {
        return Ok(None);
    }
    for puncture in cover.punctures() {
        if !even_odd_inside(curve, &puncture.position)? {
            continue;
        }
        if puncture.invariant.is_none() {
            return Err(DriftError::MissingInvariant {
                x: puncture.position.x.clone(),
                y: puncture.position.y.clone(),
            });
        }
        if puncture.local_drift < 0 {
            return Ok(Some(puncture.clone()));
        }
    }
    unreachable!("negative drift of a simple ccw curve forces a negative enclosed local drift")
}

/// Position of `x` in `(0, 1)` pushed forward by the leaf symmetry: the
/// half-leaf is parametrized by `u in (0, oo)` via `u -> u / (1 + u)`, and
/// the symmetry doubles `u`. In normalized coordinates that is
/// `s -> 2 s / (1 + s)`.
fn doubled_along(s: &Rational) -> Rational {
    let one = Rational::one();
    let u = s / (&one - s);
    let doubled = &u + &u;
    &doubled / (&one + &doubled)
}

/// The doubling rectangle through `eta` inside a `PlusPlus` lozenge of the
/// positive strip. The bottom side slides along the stable leaf of
/// `corner1` (doubling, away from the corner), the top side along the
/// stable leaf of `corner2` (halving, toward the far end); both motions
/// land on a common unstable leaf, which closes the rectangle.
pub fn su_rectangle_from_lozenge(
    model: PlaneModel,
    lozenge: &Lozenge,
    eta: &PlanePoint,
) -> Result<SuRectangle, DriftError> {
    if model != PlaneModel::PositiveStrip {
        return Err(DriftError::WrongModel);
    }
    if lozenge.lozenge_type != LozengeType::PlusPlus {
        return Err(DriftError::WrongLozengeType);
    }
    // Authenticate the lozenge against the model.
    let recomputed = lozenge_at(
        model,
        &lozenge.corner1,
        QuadrantSigns::new(Sign::Plus, Sign::Plus),
    );
    if recomputed != Ok(Some(lozenge.clone())) {
        return Err(DriftError::WrongLozengeType);
    }
    let (c1, c2) = (&lozenge.corner1, &lozenge.corner2);
    if !(c1.x < eta.x && eta.x < c2.x && c1.y < eta.y && eta.y < c2.y) {
        return Err(DriftError::PointNotInLozenge);
    }
    let width = &c2.x - &c1.x;
    let s = (&eta.x - &c1.x) / &width;
    let pushed = doubled_along(&s);
    let gx = &c1.x + &pushed * &width;
    // The halved parametrization from corner2 lands on the same unstable
    // leaf: 1 - (1 - s) / (2 - (1 - s)) = 2 s / (1 + s).
    debug_assert_eq!(
        {
            let one = Rational::one();
            let s_top = (&c2.x - &eta.x) / &width;
            let u_top = &s_top / (&one - &s_top);
            let halved = &u_top / (&one + &one);
            let s_back = &halved / (&one + &halved);
            &c2.x - &s_back * &width
        },
        gx
    );
    Ok(SuRectangle {
        eta1: PlanePoint::new(eta.x.clone(), c1.y.clone()),
        g_eta1: PlanePoint::new(gx.clone(), c1.y.clone()),
        g_eta2: PlanePoint::new(gx, c2.y.clone()),
        eta2: PlanePoint::new(eta.x.clone(), c2.y.clone()),
    })
}

/// Drift of the rectangle boundary run against `n1` and `n2` deck powers on
/// its two unstable sides: `-(n1 + n2)`, always strictly negative.
pub fn rectangle_boundary_drift(n1: i64, n2: i64) -> Result<i64, DriftError> {
    for count in [n1, n2] {
        if count < 1 {
            return Err(DriftError::InvalidDeckCount { count });
        }
    }
    Ok(narrow(
        -(i128::from(n1) + i128::from(n2)),
        "rectangle boundary drift",
    ))
}
