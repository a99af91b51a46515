//! Homology bookkeeping on the boundary tori of a section.
//!
//! Each boundary torus carries the basis `([lambda], [mu])` where `[lambda]`
//! is the class of the underlying periodic orbit and `[mu]` a meridian. The
//! intersection form is fixed by the convention `[lambda] . [mu] = +1`. A
//! boundary component of a section determines the class
//! `mult * [lambda] + link * [mu]`; integer surgery of coefficient `k` along
//! the orbit replaces the meridian by `[mu] + k * [lambda]` and rewrites
//! coordinates accordingly: `(mult, link) -> (mult - k * link, link)`.

use thiserror::Error;

/// Class `along_parallel * [lambda] + along_meridian * [mu]` on a boundary
/// torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusHomologyClass {
    pub along_parallel: i64,
    pub along_meridian: i64,
}

impl TorusHomologyClass {
    pub fn new(along_parallel: i64, along_meridian: i64) -> Self {
        Self {
            along_parallel,
            along_meridian,
        }
    }
}

/// Discipline a boundary invariant is checked against: a Birkhoff section
/// must link its boundary orbits strictly, a general partial section only
/// non-positively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionKind {
    Birkhoff,
    Partial,
}

/// Multiplicity, linking number, and orbit period carried by one boundary
/// component. `period >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundaryInvariant {
    pub mult: i64,
    pub link: i64,
    pub period: i64,
}

impl BoundaryInvariant {
    pub fn new(mult: i64, link: i64, period: i64) -> Result<Self, TorusError> {
        if period < 1 {
            return Err(TorusError::InvalidPeriod { period });
        }
        Ok(Self { mult, link, period })
    }

    /// The class `mult * [lambda] + link * [mu]` of the component.
    pub fn homology_class(&self) -> TorusHomologyClass {
        TorusHomologyClass::new(self.mult, self.link)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("period must be >= 1, got {period}")]
    InvalidPeriod { period: i64 },
    #[error("positivization requires link < 0, got {link}")]
    NonNegativeLink { link: i64 },
}

/// Structured rejection of an invariant as boundary data of a section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AdmissibilityViolation {
    #[error("boundary multiplicity is zero")]
    ZeroMultiplicity,
    #[error("boundary link {link} is positive")]
    PositiveLink { link: i64 },
    #[error("Birkhoff boundary link must be strictly negative, got 0")]
    ZeroLinkOnBirkhoff,
}

fn narrow(value: i128, what: &str) -> i64 {
    i64::try_from(value).unwrap_or_else(|_| panic!("{what} overflows i64: {value}"))
}

/// Intersection number `c1 . c2` with the convention `[lambda] . [mu] = +1`.
pub fn intersection_form(c1: &TorusHomologyClass, c2: &TorusHomologyClass) -> i64 {
    let v = i128::from(c1.along_parallel) * i128::from(c2.along_meridian)
        - i128::from(c1.along_meridian) * i128::from(c2.along_parallel);
    narrow(v, "intersection number")
}

/// Coefficient-`k` surgery along the component's orbit:
/// `(mult, link) -> (mult - k * link, link)`; the period is untouched.
pub fn surgery_transform(invariant: &BoundaryInvariant, k: i64) -> BoundaryInvariant {
    let mult = narrow(
        i128::from(invariant.mult) - i128::from(k) * i128::from(invariant.link),
        "surgered multiplicity",
    );
    BoundaryInvariant {
        mult,
        link: invariant.link,
        period: invariant.period,
    }
}

/// Smallest `k >= 0` whose surgery makes the multiplicity strictly positive.
/// Requires `link < 0`; with `step = -link >= 1` the answer is
/// `ceil((1 - mult) / step)` clamped at zero.
pub fn positivizing_coefficient(invariant: &BoundaryInvariant) -> Result<i64, TorusError> {
    if invariant.link >= 0 {
        return Err(TorusError::NonNegativeLink {
            link: invariant.link,
        });
    }
    if invariant.mult > 0 {
        return Ok(0);
    }
    let step = -i128::from(invariant.link);
    let need = 1 - i128::from(invariant.mult);
    let k = narrow((need + step - 1).div_euclid(step), "positivizing coefficient");
    debug_assert!(surgery_transform(invariant, k).mult > 0);
    debug_assert!(k == 0 || surgery_transform(invariant, k - 1).mult <= 0);
    Ok(k)
}

/// Admissibility of an invariant as boundary data: nonzero multiplicity,
/// non-positive link, and strictly negative link when the section is
/// Birkhoff. Checks are reported in that order.
pub fn check_partial_admissible(
    invariant: &BoundaryInvariant,
    kind: SectionKind,
) -> Result<(), AdmissibilityViolation> {
    if invariant.mult == 0 {
        return Err(AdmissibilityViolation::ZeroMultiplicity);
    }
    if invariant.link > 0 {
        return Err(AdmissibilityViolation::PositiveLink {
            link: invariant.link,
        });
    }
    if kind == SectionKind::Birkhoff && invariant.link == 0 {
        return Err(AdmissibilityViolation::ZeroLinkOnBirkhoff);
    }
    Ok(())
}
