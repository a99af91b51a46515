//! Crossing-holonomy calculus for measured foliations transverse to a
//! singular flow.
//!
//! Stable lengths are formal Laurent polynomials in the dilation rate
//! lambda, kept exact as maps from integer exponent to nonnegative rational
//! coefficient. Every verdict in this module is decided from exponent signs
//! and coefficient positivity alone, never from a numeric value of lambda:
//! the dilation rate of a pseudo-Anosov map is typically irrational, and a
//! numeric comparison would reintroduce rounding. A model may carry an
//! optional rational `lambda_hint > 1` used purely for reporting and
//! cross-checks.
//!
//! Pushing a stable segment across a singular prong splits it into a part
//! held pointwise and a part rescaled by `lambda^k`, with
//! `k = -mult * period` when the singularity sits to the right of the
//! segment and `k = +mult * period` when it sits to the left. A crossing
//! event records which singularity, which side, the split fraction, and the
//! position of the crossing along the unstable segment; the split fraction
//! is data, not derived geometry, because locating the split point would
//! need the full flat metric.
//!
//! Composing crossings is linear on lengths, so a finite event sequence is
//! always defined. An eventually periodic sequence blows up exactly when
//! one period strictly raises the maximal exponent carrying positive mass;
//! [`generalized_holonomy`] applies that rule to an optional periodic tail.
//! For right-side crossings of positive multiplicity every exponent shift
//! is negative, which makes the composition a contraction;
//! [`positive_side_contraction`] certifies this structurally (first-order
//! dominance of the exponent mass), so the bound holds at every lambda >= 1
//! without choosing one.

use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Local data of one singular orbit: multiplicity, linking number of the
/// section boundary along it, and period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularityData {
    pub mult: i64,
    pub link: i64,
    pub period: i64,
}

impl SingularityData {
    /// Requires `mult != 0`, `link < 0`, `period >= 1`.
    pub fn new(mult: i64, link: i64, period: i64) -> Result<Self, HolonomyError> {
        if mult == 0 {
            return Err(HolonomyError::ZeroMultiplicity);
        }
        if link >= 0 {
            return Err(HolonomyError::NonNegativeLink { link });
        }
        if period < 1 {
            return Err(HolonomyError::InvalidPeriod { period });
        }
        Ok(Self { mult, link, period })
    }
}

/// Which side of the pushed segment the singular point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    SingularOnRight,
    SingularOnLeft,
}

/// A foliation model: named singularities plus an optional exact rational
/// evaluation point for lambda, strictly above 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoliationModel {
    singularities: BTreeMap<String, SingularityData>,
    lambda_hint: Option<Rational>,
}

impl FoliationModel {
    pub fn new(
        singularities: BTreeMap<String, SingularityData>,
        lambda_hint: Option<Rational>,
    ) -> Result<Self, HolonomyError> {
        if let Some(hint) = &lambda_hint {
            if *hint <= Rational::one() {
                return Err(HolonomyError::InvalidLambdaHint {
                    hint: hint.clone(),
                });
            }
        }
        Ok(Self {
            singularities,
            lambda_hint,
        })
    }

    pub fn singularity(&self, name: &str) -> Option<&SingularityData> {
        self.singularities.get(name)
    }

    pub fn lambda_hint(&self) -> Option<&Rational> {
        self.lambda_hint.as_ref()
    }
}

/// A formal sum `sum c_e * lambda^e` with rational coefficients.
///
/// Canonical form: zero coefficients are pruned and at least one strictly
/// positive coefficient remains, so a length is never the zero measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaLength {
    terms: BTreeMap<i64, Rational>,
}

impl LambdaLength {
    /// The length `1 * lambda^0`.
    pub fn unit() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0, Rational::one());
        Self { terms }
    }

    /// Builds a length from `(exponent, coefficient)` terms. Duplicate
    /// exponents are summed. Rejects negative coefficients and the empty
    /// (all-zero) sum.
    pub fn new(
        terms: impl IntoIterator<Item = (i64, Rational)>,
    ) -> Result<Self, HolonomyError> {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (exponent, coeff) in terms {
            if coeff.is_negative() {
                return Err(HolonomyError::NegativeCoefficient { exponent });
            }
            *map.entry(exponent).or_insert_with(Rational::zero) += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(HolonomyError::ZeroLength);
        }
        Ok(Self { terms: map })
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Largest exponent carrying positive coefficient.
    pub fn max_exponent(&self) -> i64 {
        *self
            .terms
            .keys()
            .next_back()
            .expect("lengths are nonempty by construction")
    }

    /// Value at a positive rational lambda.
    pub fn eval(&self, lambda: &Rational) -> Rational {
        debug_assert!(lambda.is_positive());
        let mut total = Rational::zero();
        for (&e, c) in &self.terms {
            total += c * pow_rational(lambda, e);
        }
        total
    }

    /// Sum of all coefficients, i.e. the value at lambda = 1.
    pub fn total_mass(&self) -> Rational {
        self.terms.values().sum()
    }

    /// The length multiplied by `lambda^k`.
    pub fn shifted(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&e, c)| {
                let shifted = e
                    .checked_add(k)
                    .unwrap_or_else(|| panic!("exponent {e} + shift {k} overflows i64"));
                (shifted, c.clone())
            })
            .collect();
        Self { terms }
    }

    /// First-order dominance on exponent mass: total masses agree and, for
    /// every threshold, the mass `self` carries at or above it never
    /// exceeds the mass `other` carries there. This implies
    /// `self.eval(lambda) <= other.eval(lambda)` for every lambda >= 1.
    pub fn dominated_by(&self, other: &Self) -> bool {
        let mut exponents: Vec<i64> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        exponents.sort_unstable();
        exponents.dedup();
        let zero = Rational::zero();
        let mut mine = Rational::zero();
        let mut theirs = Rational::zero();
        for &e in exponents.iter().rev() {
            mine += self.terms.get(&e).unwrap_or(&zero);
            theirs += other.terms.get(&e).unwrap_or(&zero);
            if mine > theirs {
                return false;
            }
        }
        mine == theirs
    }

    /// `(1 - split) * self + split * self.shifted(k)`, the affine action of
    /// one crossing.
    fn split_shift(&self, split: &Rational, k: i64) -> Self {
        if split.is_zero() || k == 0 {
            return self.clone();
        }
        if split.is_one() {
            return self.shifted(k);
        }
        let keep = Rational::one() - split;
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&e, c) in &self.terms {
            *terms.entry(e).or_insert_with(Rational::zero) += c * &keep;
            let shifted = e
                .checked_add(k)
                .unwrap_or_else(|| panic!("exponent {e} + shift {k} overflows i64"));
            *terms.entry(shifted).or_insert_with(Rational::zero) += c * split;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }
}

impl fmt::Display for LambdaLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*L")?,
                _ => write!(f, "{c}*L^{e}")?,
            }
        }
        Ok(())
    }
}

fn pow_rational(base: &Rational, exponent: i64) -> Rational {
    let mut result = Rational::one();
    for _ in 0..exponent.unsigned_abs() {
        result *= base;
    }
    if exponent < 0 {
        result = result.recip();
    }
    result
}

/// One crossing of a stable segment over a singular prong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingEvent {
    pub singularity: String,
    pub side: Side,
    pub split: Rational,
    pub u_position: Rational,
}

impl CrossingEvent {
    /// Requires `0 <= split <= 1`.
    pub fn new(
        singularity: impl Into<String>,
        side: Side,
        split: Rational,
        u_position: Rational,
    ) -> Result<Self, HolonomyError> {
        if split.is_negative() || split > Rational::one() {
            return Err(HolonomyError::InvalidSplit { split });
        }
        Ok(Self {
            singularity: singularity.into(),
            side,
            split,
            u_position,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HolonomyError {
    #[error("multiplicity must be nonzero")]
    ZeroMultiplicity,
    #[error("linking number must be negative, got {link}")]
    NonNegativeLink { link: i64 },
    #[error("period must be >= 1, got {period}")]
    InvalidPeriod { period: i64 },
    #[error("lambda hint must exceed 1, got {hint}")]
    InvalidLambdaHint { hint: Rational },
    #[error("coefficient of exponent {exponent} is negative")]
    NegativeCoefficient { exponent: i64 },
    #[error("a length needs at least one positive coefficient")]
    ZeroLength,
    #[error("split must lie in [0, 1], got {split}")]
    InvalidSplit { split: Rational },
    #[error("no singularity named {name:?} in the model")]
    UnknownSingularity { name: String },
    #[error("u-position at event {index} does not increase")]
    NonIncreasingUPositions { index: usize },
    #[error("event {index} violates the right-side positive-multiplicity hypothesis")]
    PreconditionViolated { index: usize },
    #[error("{events} events but {lengths} lengths")]
    LengthMismatch { events: usize, lengths: usize },
    #[error("the model carries no lambda hint to evaluate lengths")]
    MissingLambdaHint,
}

/// Exponent of the affine rescaling produced by crossing the given
/// singularity on the given side.
pub fn crossing_exponent(s: &SingularityData, side: Side) -> i64 {
    let product = i128::from(s.mult) * i128::from(s.period);
    let signed = match side {
        Side::SingularOnRight => -product,
        Side::SingularOnLeft => product,
    };
    i64::try_from(signed).unwrap_or_else(|_| panic!("crossing exponent overflows i64: {signed}"))
}

/// Applies one crossing to a length: the kept part stays, the split part is
/// rescaled by `lambda^k` with `k` from [`crossing_exponent`].
pub fn apply_crossing(
    len: &LambdaLength,
    ev: &CrossingEvent,
    model: &FoliationModel,
) -> Result<LambdaLength, HolonomyError> {
    let Some(data) = model.singularity(&ev.singularity) else {
        return Err(HolonomyError::UnknownSingularity {
            name: ev.singularity.clone(),
        });
    };
    let k = crossing_exponent(data, ev.side);
    Ok(len.split_shift(&ev.split, k))
}

/// Outcome of a generalized holonomy: the finite part's exact length, or a
/// blow-up of the periodic tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HolonomyOutcome {
    Defined(LambdaLength),
    BlowUp { per_period_max_exponent: i64 },
}

fn check_increasing(events: &[CrossingEvent]) -> Result<(), HolonomyError> {
    for (index, window) in events.windows(2).enumerate() {
        if window[1].u_position <= window[0].u_position {
            return Err(HolonomyError::NonIncreasingUPositions { index: index + 1 });
        }
    }
    Ok(())
}

/// Composes a finite crossing sequence, then decides whether an optional
/// periodic tail blows up. A finite sequence is always defined; the tail is
/// undefined exactly when one period pushes the unit length's maximal
/// positive-mass exponent above 0, which is independent of any numeric
/// lambda > 1.
pub fn generalized_holonomy(
    len: &LambdaLength,
    events: &[CrossingEvent],
    periodic_tail: Option<&[CrossingEvent]>,
    model: &FoliationModel,
) -> Result<HolonomyOutcome, HolonomyError> {
    let concatenated: Vec<CrossingEvent> = events
        .iter()
        .chain(periodic_tail.into_iter().flatten())
        .cloned()
        .collect();
    check_increasing(&concatenated)?;
    let mut current = len.clone();
    for ev in events {
        current = apply_crossing(&current, ev, model)?;
    }
    if let Some(tail) = periodic_tail {
        let mut per_period = LambdaLength::unit();
        for ev in tail {
            per_period = apply_crossing(&per_period, ev, model)?;
        }
        let top = per_period.max_exponent();
        if top > 0 {
            return Ok(HolonomyOutcome::BlowUp {
                per_period_max_exponent: top,
            });
        }
    }
    Ok(HolonomyOutcome::Defined(current))
}

/// Certificate that a right-side positive-multiplicity crossing sequence
/// contracts stable length: every exponent shift is negative and the
/// composed action of the sequence on the unit length is first-order
/// dominated by the unit, hence bounded by 1 at every lambda >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionCertificate {
    pub exponents: Vec<i64>,
    pub composed: LambdaLength,
}

impl ContractionCertificate {
    /// Re-derives the verdict from the certificate content alone.
    pub fn holds(&self) -> bool {
        self.exponents.iter().all(|&k| k < 0)
            && self.composed.dominated_by(&LambdaLength::unit())
    }
}

/// Certifies that a sequence of right-side crossings over positive
/// multiplicities never increases stable length. Rejects (naming the first
/// offending event) when an event is on the left or its singularity has
/// nonpositive multiplicity.
pub fn positive_side_contraction(
    model: &FoliationModel,
    events: &[CrossingEvent],
) -> Result<ContractionCertificate, HolonomyError> {
    let mut exponents = Vec::with_capacity(events.len());
    for (index, ev) in events.iter().enumerate() {
        let Some(data) = model.singularity(&ev.singularity) else {
            return Err(HolonomyError::UnknownSingularity {
                name: ev.singularity.clone(),
            });
        };
        if ev.side != Side::SingularOnRight || data.mult <= 0 {
            return Err(HolonomyError::PreconditionViolated { index });
        }
        exponents.push(crossing_exponent(data, ev.side));
    }
    let mut composed = LambdaLength::unit();
    for ev in events {
        composed = apply_crossing(&composed, ev, model)?;
    }
    let certificate = ContractionCertificate { exponents, composed };
    debug_assert!(certificate.holds());
    Ok(certificate)
}

/// Verdict of the spacing validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpacingVerdict {
    Accepted,
    Rejected { first: usize, second: usize },
}

/// Checks that any two events whose stable lengths evaluate to at most
/// `ell` sit further than `delta` apart along the unstable segment.
/// Rejection names the first violating index pair.
pub fn validate_event_spacing(
    events: &[CrossingEvent],
    lengths_at_events: &[LambdaLength],
    ell: &Rational,
    delta: &Rational,
    model: &FoliationModel,
) -> Result<SpacingVerdict, HolonomyError> {
    if events.len() != lengths_at_events.len() {
        return Err(HolonomyError::LengthMismatch {
            events: events.len(),
            lengths: lengths_at_events.len(),
        });
    }
    let Some(lambda) = model.lambda_hint() else {
        return Err(HolonomyError::MissingLambdaHint);
    };
    let short: Vec<bool> = lengths_at_events
        .iter()
        .map(|len| len.eval(lambda) <= *ell)
        .collect();
    for i in 0..events.len() {
        if !short[i] {
            continue;
        }
        for j in (i + 1)..events.len() {
            if !short[j] {
                continue;
            }
            let gap = (&events[i].u_position - &events[j].u_position).abs();
            if gap <= *delta {
                return Ok(SpacingVerdict::Rejected {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(SpacingVerdict::Accepted)
}
