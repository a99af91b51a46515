//! Bifoliated plane models and lozenge detection.
//!
//! Three models cover every orbit space arising here, each a convex open
//! subset of the plane carrying the horizontal foliation (stable leaves) and
//! the vertical foliation (unstable leaves):
//!
//! * [`PlaneModel::Trivial`]: the full plane. Product behaviour, no lozenges.
//! * [`PlaneModel::PositiveStrip`]: the diagonal strip `|x - y| < 1`.
//! * [`PlaneModel::NegativeStrip`]: the antidiagonal strip `|x + y| < 1`.
//!
//! Orientation conventions: stable leaves are oriented toward `+x`, unstable
//! leaves toward `+y`, so the half-leaf `L^s_+(p)` is the part of the
//! horizontal leaf through `p` with `x > p.x`, and so on. Because the models
//! are convex, a leaf is the full intersection of its horizontal or vertical
//! line with the model, and two leaves `L^u(p)`, `L^s(q)` meet exactly when
//! the candidate point `(p.x, q.y)` lies inside the model.
//!
//! A quadrant `(sigma, tau)` at `p` is *complete* when every unstable leaf
//! through `L^s_sigma(p)` meets every stable leaf through `L^u_tau(p)`. The
//! set `S_{sigma tau}(p)` of points whose leaves reach both half-leaves is an
//! open axis-parallel box; when that box lies inside the model and is also
//! realized from its opposite corner with the flipped signs, it is a
//! *lozenge* with the two corners as its only ideal vertices. The strip sign
//! determines which lozenge types exist, and [`classify_model`] reads the
//! flow nature off that census rather than off the model tag.

use crate::rational::{rat, Rational};
use num_traits::{One, Signed};
use thiserror::Error;

/// Point of a plane model, in exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    pub x: Rational,
    pub y: Rational,
}

impl PlanePoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    /// Point with machine-integer coordinates.
    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(rat(x, 1), rat(y, 1))
    }
}

/// The three bifoliated plane models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaneModel {
    Trivial,
    PositiveStrip,
    NegativeStrip,
}

/// Orientation sign along a leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Quadrant selector at a point: a side of the stable leaf and a side of the
/// unstable leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadrantSigns {
    /// Side along the stable (horizontal) leaf.
    pub stable: Sign,
    /// Side along the unstable (vertical) leaf.
    pub unstable: Sign,
}

impl QuadrantSigns {
    pub const fn new(stable: Sign, unstable: Sign) -> Self {
        Self { stable, unstable }
    }

    pub fn flip(self) -> Self {
        Self::new(self.stable.flip(), self.unstable.flip())
    }

    pub const ALL: [QuadrantSigns; 4] = [
        QuadrantSigns::new(Sign::Plus, Sign::Plus),
        QuadrantSigns::new(Sign::Plus, Sign::Minus),
        QuadrantSigns::new(Sign::Minus, Sign::Plus),
        QuadrantSigns::new(Sign::Minus, Sign::Minus),
    ];
}

/// Lozenge type: whether the defining corner sets are `S_{++}/S_{--}`
/// or `S_{+-}/S_{-+}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LozengeType {
    PlusPlus,
    PlusMinus,
}

/// A lozenge, named by its two corners. `corner1` is the corner whose
/// quadrant set has leading sign `+` (so `S_{++}(corner1)` for `PlusPlus`,
/// `S_{+-}(corner1)` for `PlusMinus`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lozenge {
    pub corner1: PlanePoint,
    pub corner2: PlanePoint,
    pub lozenge_type: LozengeType,
}

/// Verdict of a quadrant completeness query. The witness pair consists of a
/// point on the selected stable half-leaf and one on the selected unstable
/// half-leaf whose leaves miss each other inside the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    Incomplete { y: PlanePoint, z: PlanePoint },
}

impl Completeness {
    pub fn is_complete(&self) -> bool {
        matches!(self, Completeness::Complete)
    }
}

/// Nature of the flow read off the orbit-space geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowNature {
    /// Suspension-like: trivial product plane, admits a global section.
    NonTwistedSuspension,
    PositivelyTwisted,
    NegativelyTwisted,
    /// The available evidence does not decide the nature.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StripError {
    #[error("point ({x}, {y}) lies outside the model")]
    PointOutsideModel { x: Rational, y: Rational },
}

fn outside(p: &PlanePoint) -> StripError {
    StripError::PointOutsideModel {
        x: p.x.clone(),
        y: p.y.clone(),
    }
}

/// Open interval with optionally unbounded ends.
type Extent = (Option<Rational>, Option<Rational>);

impl PlaneModel {
    /// The strip functional whose absolute value cuts out the model:
    /// `x - y` for the positive strip, `x + y` for the negative one.
    fn functional(&self, p: &PlanePoint) -> Option<Rational> {
        match self {
            PlaneModel::Trivial => None,
            PlaneModel::PositiveStrip => Some(&p.x - &p.y),
            PlaneModel::NegativeStrip => Some(&p.x + &p.y),
        }
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        match self.functional(p) {
            None => true,
            Some(v) => v.abs() < Rational::one(),
        }
    }

    /// Open `x`-extent of the stable (horizontal) leaf through `p`.
    fn stable_extent(&self, p: &PlanePoint) -> Extent {
        let one = Rational::one();
        match self {
            PlaneModel::Trivial => (None, None),
            PlaneModel::PositiveStrip => (Some(&p.y - &one), Some(&p.y + &one)),
            PlaneModel::NegativeStrip => (Some(-&p.y - &one), Some(-&p.y + &one)),
        }
    }

    /// Open `y`-extent of the unstable (vertical) leaf through `p`.
    fn unstable_extent(&self, p: &PlanePoint) -> Extent {
        let one = Rational::one();
        match self {
            PlaneModel::Trivial => (None, None),
            PlaneModel::PositiveStrip => (Some(&p.x - &one), Some(&p.x + &one)),
            PlaneModel::NegativeStrip => (Some(-&p.x - &one), Some(-&p.x + &one)),
        }
    }
}

/// Intersection `L^u(p) ∩ L^s(q)`: the candidate `(p.x, q.y)` when it lies in
/// the model, absent otherwise. Convexity makes the in-model test equivalent
/// to the candidate lying within both leaf extents.
pub fn leaves_intersect(
    model: PlaneModel,
    p: &PlanePoint,
    q: &PlanePoint,
) -> Result<Option<PlanePoint>, StripError> {
    for point in [p, q] {
        if !model.contains(point) {
            return Err(outside(point));
        }
    }
    let candidate = PlanePoint::new(p.x.clone(), q.y.clone());
    Ok(model.contains(&candidate).then_some(candidate))
}

/// The open box `I_sigma x J_tau` spanned by the selected half-leaves at `p`:
/// `x` over the sigma side of the stable extent, `y` over the tau side of the
/// unstable extent.
fn quadrant_box(model: PlaneModel, p: &PlanePoint, signs: QuadrantSigns) -> (Extent, Extent) {
    let sx = model.stable_extent(p);
    let uy = model.unstable_extent(p);
    let ix = match signs.stable {
        Sign::Plus => (Some(p.x.clone()), sx.1),
        Sign::Minus => (sx.0, Some(p.x.clone())),
    };
    let jy = match signs.unstable {
        Sign::Plus => (Some(p.y.clone()), uy.1),
        Sign::Minus => (uy.0, Some(p.y.clone())),
    };
    (ix, jy)
}

/// Extremes of the strip functional over the closed box; `None` for the
/// trivial model.
fn functional_range_over_box(
    model: PlaneModel,
    ix: &Extent,
    jy: &Extent,
) -> Option<((PlanePoint, Rational), (PlanePoint, Rational))> {
    let (ix_lo, ix_hi) = (ix.0.clone()?, ix.1.clone()?);
    let (jy_lo, jy_hi) = (jy.0.clone()?, jy.1.clone()?);
    // x - y is maximal at (hi, lo) and minimal at (lo, hi); x + y is maximal
    // at (hi, hi) and minimal at (lo, lo).
    let (max_corner, min_corner) = match model {
        PlaneModel::Trivial => return None,
        PlaneModel::PositiveStrip => (
            PlanePoint::new(ix_hi.clone(), jy_lo.clone()),
            PlanePoint::new(ix_lo.clone(), jy_hi.clone()),
        ),
        PlaneModel::NegativeStrip => (
            PlanePoint::new(ix_hi.clone(), jy_hi.clone()),
            PlanePoint::new(ix_lo.clone(), jy_lo.clone()),
        ),
    };
    let gmax = model.functional(&max_corner).expect("strip model");
    let gmin = model.functional(&min_corner).expect("strip model");
    Some(((max_corner, gmax), (min_corner, gmin)))
}

/// Whether the quadrant `C_{sigma tau}(p)` is complete: every unstable leaf
/// through the sigma stable half-leaf meets every stable leaf through the tau
/// unstable half-leaf. When it is not, a rational witness pair is returned.
pub fn quadrant_complete(
    model: PlaneModel,
    p: &PlanePoint,
    signs: QuadrantSigns,
) -> Result<Completeness, StripError> {
    if !model.contains(p) {
        return Err(outside(p));
    }
    let (ix, jy) = quadrant_box(model, p, signs);
    let Some(((max_corner, gmax), (min_corner, gmin))) =
        functional_range_over_box(model, &ix, &jy)
    else {
        return Ok(Completeness::Complete);
    };
    let one = Rational::one();
    // The box is open, so grazing the strip boundary (|g| = 1 exactly at a
    // corner) never produces an interior violation.
    let target = if gmax > one {
        Some((max_corner, Rational::one()))
    } else if gmin < -&one {
        Some((min_corner, -Rational::one()))
    } else {
        None
    };
    let Some((corner, bound)) = target else {
        return Ok(Completeness::Complete);
    };
    // Head from p toward the violating corner along the candidate segment:
    // g is affine there, so the first boundary crossing is at t_star. Any
    // t in (t_star, 1) yields a violating candidate; prefer 9/10, pushed
    // further when the crossing happens late.
    let g0 = model.functional(p).expect("strip model");
    let gc = model.functional(&corner).expect("strip model");
    let t_star = (&bound - &g0) / (&gc - &g0);
    let nine_tenths = rat(9, 10);
    let mid = (t_star + &one) / rat(2, 1);
    let t = if mid > nine_tenths { mid } else { nine_tenths };
    let y = PlanePoint::new(&p.x + &t * (&corner.x - &p.x), p.y.clone());
    let z = PlanePoint::new(p.x.clone(), &p.y + &t * (&corner.y - &p.y));
    debug_assert!(model.contains(&y) && model.contains(&z));
    debug_assert!(leaves_intersect(model, &y, &z)
        .expect("witness points lie in the model")
        .is_none());
    Ok(Completeness::Incomplete { y, z })
}

/// The quadrant set `S_{sigma tau}(p)` as a lozenge, when it is one.
///
/// The set is the open box spanned by the two half-leaves. It is a lozenge
/// exactly when the box is bounded, sits inside the model, and is recovered
/// as the flipped-sign quadrant set of the opposite corner. The returned
/// lozenge is normalized so that `corner1` carries the `+`-leading signs,
/// which makes the construction involutive: querying `corner2` with flipped
/// signs yields the identical value.
pub fn lozenge_at(
    model: PlaneModel,
    p: &PlanePoint,
    signs: QuadrantSigns,
) -> Result<Option<Lozenge>, StripError> {
    if !model.contains(p) {
        return Err(outside(p));
    }
    let (ix, jy) = quadrant_box(model, p, signs);
    let Some(((_, gmax), (_, gmin))) = functional_range_over_box(model, &ix, &jy) else {
        // Unbounded quadrant sets (the trivial plane) are never lozenges.
        return Ok(None);
    };
    let one = Rational::one();
    if gmax > one || gmin < -&one {
        // The box leaks out of the strip; the clipped set has leaf-extent
        // asymmetries that no opposite-corner quadrant set can reproduce.
        return Ok(None);
    }
    let qx = match signs.stable {
        Sign::Plus => ix.1.clone(),
        Sign::Minus => ix.0.clone(),
    }
    .expect("bounded box");
    let qy = match signs.unstable {
        Sign::Plus => jy.1.clone(),
        Sign::Minus => jy.0.clone(),
    }
    .expect("bounded box");
    let q = PlanePoint::new(qx, qy);
    if !model.contains(&q) {
        return Ok(None);
    }
    let (ix_back, jy_back) = quadrant_box(model, &q, signs.flip());
    if ix_back != ix || jy_back != jy {
        return Ok(None);
    }
    let lozenge_type = match (signs.stable, signs.unstable) {
        (Sign::Plus, Sign::Plus) | (Sign::Minus, Sign::Minus) => LozengeType::PlusPlus,
        _ => LozengeType::PlusMinus,
    };
    let (corner1, corner2) = match signs.stable {
        Sign::Plus => (p.clone(), q),
        Sign::Minus => (q, p.clone()),
    };
    Ok(Some(Lozenge {
        corner1,
        corner2,
        lozenge_type,
    }))
}

/// Flow nature of a model, derived from its lozenge census: which lozenge
/// types `lozenge_at` can return at all.
pub fn classify_model(model: PlaneModel) -> FlowNature {
    let probes = [
        PlanePoint::from_ints(0, 0),
        PlanePoint::new(rat(1, 4), rat(-1, 4)),
        PlanePoint::new(rat(-1, 3), rat(1, 5)),
    ];
    let mut has_plus_plus = false;
    let mut has_plus_minus = false;
    for p in &probes {
        for signs in QuadrantSigns::ALL {
            if let Some(lozenge) = lozenge_at(model, p, signs).expect("probe points are interior")
            {
                match lozenge.lozenge_type {
                    LozengeType::PlusPlus => has_plus_plus = true,
                    LozengeType::PlusMinus => has_plus_minus = true,
                }
            }
        }
    }
    match (has_plus_plus, has_plus_minus) {
        (false, false) => FlowNature::NonTwistedSuspension,
        (true, false) => FlowNature::PositivelyTwisted,
        (false, true) => FlowNature::NegativelyTwisted,
        (true, true) => unreachable!("a strip admits only one lozenge type"),
    }
}
