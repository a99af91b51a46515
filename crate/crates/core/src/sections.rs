//! Invariant algebra for partial and Birkhoff sections of a flow.
//!
//! A section is summarized by its boundary data: for each boundary
//! component, the orbit it winds around and a multiplicity/link/period
//! invariant. This module classifies section signs, checks that boundary
//! data is well defined per orbit, verifies the linking equation relating
//! two sections, certifies mutual-exclusion arguments as ordered reason
//! chains, assigns boundary signs to lozenge annuli, infers the nature of
//! the ambient flow from section evidence, and drives the surgery pipeline
//! that positivizes a Birkhoff section.
//!
//! The module is a certificate checker, not a geometric engine: algebraic
//! intersection counts between sections are supplied as
//! [`IntersectionData`], and the checker enforces every constraint a
//! consistent geometric realization would impose on them. Orbit identifiers
//! are opaque strings; no attempt is made to detect when two identifiers
//! name freely homotopic orbits.

use crate::strip_plane::{FlowNature, LozengeType};
use crate::torus_homology::{
    check_partial_admissible, positivizing_coefficient, surgery_transform,
    AdmissibilityViolation, BoundaryInvariant, SectionKind,
};
use std::collections::BTreeMap;
use thiserror::Error;

/// One boundary component of a section: the orbit it is immersed along and
/// its local invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub orbit: String,
    pub invariant: BoundaryInvariant,
}

impl BoundaryComponent {
    pub fn new(orbit: impl Into<String>, invariant: BoundaryInvariant) -> Self {
        Self {
            orbit: orbit.into(),
            invariant,
        }
    }
}

/// A section given by name, kind, and boundary data. Construction checks
/// each component's admissibility for the kind; the per-orbit
/// well-definedness of the data is a separate verdict
/// ([`mult_well_defined`]) so that deliberately inconsistent data can be
/// represented and rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionSpec {
    name: String,
    kind: SectionKind,
    boundary: Vec<BoundaryComponent>,
}

impl SectionSpec {
    pub fn new(
        name: impl Into<String>,
        kind: SectionKind,
        boundary: Vec<BoundaryComponent>,
    ) -> Result<Self, SectionsError> {
        let name = name.into();
        for component in &boundary {
            if let Err(violation) = check_partial_admissible(&component.invariant, kind) {
                return Err(SectionsError::InvalidSection {
                    name,
                    orbit: component.orbit.clone(),
                    violation,
                });
            }
        }
        Ok(Self {
            name,
            kind,
            boundary,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SectionKind {
        self.kind
    }

    pub fn boundary(&self) -> &[BoundaryComponent] {
        &self.boundary
    }

    fn has_orbit(&self, orbit: &str) -> bool {
        self.boundary.iter().any(|c| c.orbit == orbit)
    }
}

/// Algebraic intersection data between two sections: boundary-of-one
/// through interior-of-the-other counts, and the pairwise linking number
/// along each shared boundary orbit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntersectionData {
    pub d1_into_2: i64,
    pub d2_into_1: i64,
    pub links: BTreeMap<String, i64>,
}

/// Sign classification of a section by its boundary multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionSign {
    Positive,
    Negative,
    Mixed,
    Global,
}

/// Sign of one annulus boundary component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentSign {
    Positive,
    Negative,
}

/// Required sign of the pairwise linking number along a shared orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkConstraint {
    NonNegative,
    StrictlyPositive,
}

/// Outcome of a mutual-exclusion check: an ordered chain of reasons ending
/// in the contradiction, or no verdict when the hypotheses do not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExclusionOutcome {
    Incompatible(Vec<String>),
    NoVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionsError {
    #[error("section {name:?}: boundary on orbit {orbit:?} is inadmissible: {violation}")]
    InvalidSection {
        name: String,
        orbit: String,
        violation: AdmissibilityViolation,
    },
    #[error("section {name:?}: boundary data on orbit {orbit:?} is not well defined")]
    IllDefinedOrbit { name: String, orbit: String },
    #[error("section {name:?} is not a Birkhoff section")]
    NotBirkhoff { name: String },
    #[error("sections must be one positive and one negative, got {first:?} and {second:?}")]
    SignHypothesisUnmet {
        first: SectionSign,
        second: SectionSign,
    },
    #[error("orbit {orbit:?} is not on both boundaries")]
    OrbitNotShared { orbit: String },
    #[error("intersection data is inconsistent: {reason}")]
    InconsistentData { reason: String },
    #[error("linking equation violated with residual {residual}")]
    LinkingEquationViolated { residual: i64 },
    #[error("sections {first:?} and {second:?} are mutually exclusive: {reason}")]
    MutuallyExclusive {
        first: String,
        second: String,
        reason: String,
    },
}

fn narrow(value: i128, what: &str) -> i64 {
    i64::try_from(value).unwrap_or_else(|_| panic!("{what} overflows i64: {value}"))
}

/// Checks that the boundary invariants are well defined orbit by orbit:
/// Birkhoff components on one orbit must agree in multiplicity and link;
/// partial components may disagree only when every link on that orbit is 0
/// (such a curve bounds with either multiplicity). Rejection names the
/// first offending orbit in boundary order.
pub fn mult_well_defined(s: &SectionSpec) -> Result<(), SectionsError> {
    let mut seen: BTreeMap<&str, &BoundaryComponent> = BTreeMap::new();
    for component in s.boundary() {
        let Some(first) = seen.get(component.orbit.as_str()) else {
            seen.insert(&component.orbit, component);
            continue;
        };
        let a = &first.invariant;
        let b = &component.invariant;
        let agreeing = a.mult == b.mult && a.link == b.link;
        let tolerated =
            s.kind() == SectionKind::Partial && a.link == 0 && b.link == 0;
        if !(agreeing || tolerated) {
            return Err(SectionsError::IllDefinedOrbit {
                name: s.name().to_string(),
                orbit: component.orbit.clone(),
            });
        }
    }
    Ok(())
}

/// Sign of a section: `Global` for an empty boundary, `Positive` or
/// `Negative` when every boundary multiplicity has that strict sign,
/// `Mixed` otherwise. Requires well-defined boundary data.
pub fn section_sign(s: &SectionSpec) -> Result<SectionSign, SectionsError> {
    mult_well_defined(s)?;
    if s.boundary().is_empty() {
        return Ok(SectionSign::Global);
    }
    let all_positive = s.boundary().iter().all(|c| c.invariant.mult > 0);
    let all_negative = s.boundary().iter().all(|c| c.invariant.mult < 0);
    Ok(if all_positive {
        SectionSign::Positive
    } else if all_negative {
        SectionSign::Negative
    } else {
        SectionSign::Mixed
    })
}

/// The linking equation between two sections:
/// `d1_into_2 - d2_into_1 + sum(links) = 0`. Rejection carries the nonzero
/// residual.
pub fn linking_equation_check(data: &IntersectionData) -> Result<(), SectionsError> {
    let mut residual = i128::from(data.d1_into_2) - i128::from(data.d2_into_1);
    for v in data.links.values() {
        residual += i128::from(*v);
    }
    if residual == 0 {
        Ok(())
    } else {
        Err(SectionsError::LinkingEquationViolated {
            residual: narrow(residual, "linking equation residual"),
        })
    }
}

/// Required sign of the pairwise link along a shared orbit of a positive
/// section and a negative section: strictly positive as soon as either
/// section is Birkhoff, nonnegative otherwise.
pub fn pairwise_link_constraint(
    s1: &SectionSpec,
    s2: &SectionSpec,
    orbit: &str,
) -> Result<LinkConstraint, SectionsError> {
    let sign1 = section_sign(s1)?;
    let sign2 = section_sign(s2)?;
    if sign1 != SectionSign::Positive || sign2 != SectionSign::Negative {
        return Err(SectionsError::SignHypothesisUnmet {
            first: sign1,
            second: sign2,
        });
    }
    if !s1.has_orbit(orbit) || !s2.has_orbit(orbit) {
        return Err(SectionsError::OrbitNotShared {
            orbit: orbit.to_string(),
        });
    }
    Ok(
        if s1.kind() == SectionKind::Birkhoff || s2.kind() == SectionKind::Birkhoff {
            LinkConstraint::StrictlyPositive
        } else {
            LinkConstraint::NonNegative
        },
    )
}

/// Mutual-exclusion certificate between two sections, replayed as a
/// constraint chain on the supplied intersection data.
///
/// Two shapes yield a verdict: a positive Birkhoff section against a
/// negative section, and a global Birkhoff section against a single-signed
/// section. Every other shape returns `NoVerdict`. The data must satisfy
/// the linking equation; data that already violates a monotone sign
/// constraint is rejected as inconsistent rather than counted as a
/// verdict.
pub fn exclusion_verdict(
    s1: &SectionSpec,
    s2: &SectionSpec,
    data: &IntersectionData,
) -> Result<ExclusionOutcome, SectionsError> {
    let sign1 = section_sign(s1)?;
    let sign2 = section_sign(s2)?;
    for orbit in data.links.keys() {
        if !s1.has_orbit(orbit) || !s2.has_orbit(orbit) {
            return Err(SectionsError::InconsistentData {
                reason: format!("link keyed by orbit {orbit:?} not shared by both boundaries"),
            });
        }
    }
    linking_equation_check(data)?;
    match (sign1, s1.kind(), sign2) {
        (SectionSign::Positive, SectionKind::Birkhoff, SectionSign::Negative) => {
            if data.d1_into_2 < 0 {
                return Err(SectionsError::InconsistentData {
                    reason: format!(
                        "positive boundary crossing a negative interior forces d1_into_2 >= 0, got {}",
                        data.d1_into_2
                    ),
                });
            }
            if data.d2_into_1 > 0 {
                return Err(SectionsError::InconsistentData {
                    reason: format!(
                        "negative boundary crossing a positive interior forces d2_into_1 <= 0, got {}",
                        data.d2_into_1
                    ),
                });
            }
            if let Some((orbit, v)) = data.links.iter().find(|(_, v)| **v < 0) {
                return Err(SectionsError::InconsistentData {
                    reason: format!(
                        "opposite-sign sections force link >= 0 on shared orbit {orbit:?}, got {v}"
                    ),
                });
            }
            Ok(ExclusionOutcome::Incompatible(vec![
                "signs force d1_into_2 >= 0, d2_into_1 <= 0, and every shared link >= 0".into(),
                "the linking equation d1_into_2 - d2_into_1 + sum of links = 0 forces all of them to 0".into(),
                "a Birkhoff section meets every orbit, so the negative boundary must be shared with strictly positive links".into(),
                "shared link must be strictly positive but equation forces 0".into(),
            ]))
        }
        (SectionSign::Global, SectionKind::Birkhoff, SectionSign::Positive | SectionSign::Negative) => {
            if data.d1_into_2 != 0 {
                return Err(SectionsError::InconsistentData {
                    reason: format!(
                        "a global section has no boundary, so d1_into_2 must be 0, got {}",
                        data.d1_into_2
                    ),
                });
            }
            Ok(ExclusionOutcome::Incompatible(vec![
                "a global section has empty boundary, so d1_into_2 = 0 and no orbit is shared".into(),
                "the linking equation then forces d2_into_1 = 0".into(),
                "every orbit crosses a global section, so a single-signed boundary forces a strict sign on d2_into_1".into(),
                "boundary of the single-signed section must cross the global section but equation forces 0".into(),
            ]))
        }
        _ => Ok(ExclusionOutcome::NoVerdict),
    }
}

/// Boundary signs of the annulus spanned by a lozenge: both components are
/// positive for a `PlusPlus` lozenge and both negative for a `PlusMinus`
/// one.
pub fn lozenge_annulus_signs(t: LozengeType) -> (ComponentSign, ComponentSign) {
    match t {
        LozengeType::PlusPlus => (ComponentSign::Positive, ComponentSign::Positive),
        LozengeType::PlusMinus => (ComponentSign::Negative, ComponentSign::Negative),
    }
}

/// The determinate flow nature a single section certifies, if any: a
/// Birkhoff section pins the nature by its sign; partial sections alone
/// pin nothing.
fn certified_nature(kind: SectionKind, sign: SectionSign) -> Option<FlowNature> {
    if kind != SectionKind::Birkhoff {
        return None;
    }
    match sign {
        SectionSign::Positive => Some(FlowNature::PositivelyTwisted),
        SectionSign::Negative => Some(FlowNature::NegativelyTwisted),
        SectionSign::Global => Some(FlowNature::NonTwistedSuspension),
        SectionSign::Mixed => None,
    }
}

fn nature_name(nature: FlowNature) -> &'static str {
    match nature {
        FlowNature::PositivelyTwisted => "a positively twisted flow",
        FlowNature::NegativelyTwisted => "a negatively twisted flow",
        FlowNature::NonTwistedSuspension => "a non-twisted suspension",
        FlowNature::Undetermined => "an undetermined flow",
    }
}

/// The exclusion reason between two evidence items, if they conflict.
fn evidence_conflict(
    a: (SectionKind, SectionSign),
    b: (SectionKind, SectionSign),
) -> Option<String> {
    let na = certified_nature(a.0, a.1);
    let nb = certified_nature(b.0, b.1);
    if let (Some(x), Some(y)) = (na, nb) {
        if x != y {
            return Some(format!(
                "one certifies {} and the other {}",
                nature_name(x),
                nature_name(y)
            ));
        }
        return None;
    }
    // One determinate nature against a single-signed section of the
    // excluded sign.
    let clash = |nature: FlowNature, other: SectionSign| -> Option<String> {
        let excluded = match (nature, other) {
            (FlowNature::PositivelyTwisted, SectionSign::Negative) => "negative",
            (FlowNature::NegativelyTwisted, SectionSign::Positive) => "positive",
            (FlowNature::NonTwistedSuspension, SectionSign::Positive) => "positive",
            (FlowNature::NonTwistedSuspension, SectionSign::Negative) => "negative",
            _ => return None,
        };
        Some(format!(
            "one certifies {} which excludes any {excluded} section",
            nature_name(nature)
        ))
    };
    if let Some(x) = na {
        return clash(x, b.1);
    }
    if let Some(y) = nb {
        return clash(y, a.1);
    }
    None
}

/// Infers the nature of the flow from section evidence: a positive
/// Birkhoff section certifies a positively twisted flow, a global Birkhoff
/// section a non-twisted suspension, a negative Birkhoff section a
/// negatively twisted flow. Conflicting evidence (two distinct certified
/// natures, or a certified nature together with a section of a sign it
/// excludes) is an error naming the pair. With no certifying evidence the
/// nature is undetermined.
pub fn classify_nature(evidence: &[SectionSpec]) -> Result<FlowNature, SectionsError> {
    let mut infos = Vec::with_capacity(evidence.len());
    for spec in evidence {
        let sign = section_sign(spec)?;
        infos.push((spec.name().to_string(), spec.kind(), sign));
    }
    for i in 0..infos.len() {
        for j in (i + 1)..infos.len() {
            if let Some(reason) =
                evidence_conflict((infos[i].1, infos[i].2), (infos[j].1, infos[j].2))
            {
                return Err(SectionsError::MutuallyExclusive {
                    first: infos[i].0.clone(),
                    second: infos[j].0.clone(),
                    reason,
                });
            }
        }
    }
    for (_, kind, sign) in &infos {
        if let Some(nature) = certified_nature(*kind, *sign) {
            return Ok(nature);
        }
    }
    Ok(FlowNature::Undetermined)
}

/// Surgery coefficients that positivize a Birkhoff section: for each
/// boundary orbit (in first-occurrence order) the minimal `k >= 0` making
/// the transformed multiplicity strictly positive. Requires well-defined
/// Birkhoff boundary data.
pub fn positivize_pipeline(s: &SectionSpec) -> Result<Vec<(String, i64)>, SectionsError> {
    if s.kind() != SectionKind::Birkhoff {
        return Err(SectionsError::NotBirkhoff {
            name: s.name().to_string(),
        });
    }
    mult_well_defined(s)?;
    let mut out: Vec<(String, i64)> = Vec::new();
    for component in s.boundary() {
        if out.iter().any(|(orbit, _)| orbit == &component.orbit) {
            continue;
        }
        let k = positivizing_coefficient(&component.invariant)
            .expect("Birkhoff admissibility guarantees link < 0");
        out.push((component.orbit.clone(), k));
    }
    Ok(out)
}

/// Applies per-orbit surgery coefficients to every boundary component of a
/// section; orbits missing from the list keep `k = 0`. The result is
/// re-validated as a section of the same kind.
pub fn apply_boundary_surgeries(
    s: &SectionSpec,
    coefficients: &[(String, i64)],
) -> Result<SectionSpec, SectionsError> {
    let boundary = s
        .boundary()
        .iter()
        .map(|component| {
            let k = coefficients
                .iter()
                .find(|(orbit, _)| orbit == &component.orbit)
                .map_or(0, |(_, k)| *k);
            BoundaryComponent::new(
                component.orbit.clone(),
                surgery_transform(&component.invariant, k),
            )
        })
        .collect();
    SectionSpec::new(s.name(), s.kind(), boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inv(mult: i64, link: i64) -> BoundaryInvariant {
        BoundaryInvariant::new(mult, link, 1).unwrap()
    }

    fn spec(
        name: &str,
        kind: SectionKind,
        components: &[(&str, i64, i64)],
    ) -> SectionSpec {
        SectionSpec::new(
            name,
            kind,
            components
                .iter()
                .map(|&(orbit, mult, link)| BoundaryComponent::new(orbit, inv(mult, link)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction_enforces_componentwise_admissibility() {
        let err = SectionSpec::new(
            "s",
            SectionKind::Birkhoff,
            vec![BoundaryComponent::new("g", inv(1, 0))],
        )
        .unwrap_err();
        assert_eq!(
            err,
            SectionsError::InvalidSection {
                name: "s".into(),
                orbit: "g".into(),
                violation: AdmissibilityViolation::ZeroLinkOnBirkhoff,
            }
        );
        assert!(SectionSpec::new(
            "s",
            SectionKind::Partial,
            vec![BoundaryComponent::new("g", inv(1, 0))],
        )
        .is_ok());
    }

    #[test]
    fn section_sign_examples() {
        let positive = spec(
            "p",
            SectionKind::Birkhoff,
            &[("a", 1, -1), ("b", 3, -1)],
        );
        assert_eq!(section_sign(&positive), Ok(SectionSign::Positive));
        let global = spec("g", SectionKind::Birkhoff, &[]);
        assert_eq!(section_sign(&global), Ok(SectionSign::Global));
        let mixed = spec(
            "m",
            SectionKind::Birkhoff,
            &[("a", 2, -1), ("b", -1, -1)],
        );
        assert_eq!(section_sign(&mixed), Ok(SectionSign::Mixed));
        let negative = spec("n", SectionKind::Partial, &[("a", -2, 0)]);
        assert_eq!(section_sign(&negative), Ok(SectionSign::Negative));
    }

    #[test]
    fn well_definedness_verdicts() {
        let same = spec(
            "s",
            SectionKind::Birkhoff,
            &[("a", 2, -1), ("a", 2, -1)],
        );
        assert_eq!(mult_well_defined(&same), Ok(()));
        let differ = spec(
            "s",
            SectionKind::Birkhoff,
            &[("a", 2, -1), ("a", 3, -1)],
        );
        assert_eq!(
            mult_well_defined(&differ),
            Err(SectionsError::IllDefinedOrbit {
                name: "s".into(),
                orbit: "a".into()
            })
        );
        let link_differ = spec(
            "s",
            SectionKind::Birkhoff,
            &[("a", 2, -1), ("a", 2, -2)],
        );
        assert!(mult_well_defined(&link_differ).is_err());
        // A null-linked partial boundary bounds with either multiplicity.
        let tolerated = spec(
            "s",
            SectionKind::Partial,
            &[("a", 1, 0), ("a", -1, 0)],
        );
        assert_eq!(mult_well_defined(&tolerated), Ok(()));
        let not_tolerated = spec(
            "s",
            SectionKind::Partial,
            &[("a", 1, -1), ("a", -1, -1)],
        );
        assert!(mult_well_defined(&not_tolerated).is_err());
        // The ill-signed spec is rejected by the sign classifier too.
        assert!(section_sign(&differ).is_err());
    }

    #[test]
    fn linking_equation_examples() {
        let disjoint = IntersectionData::default();
        assert_eq!(linking_equation_check(&disjoint), Ok(()));
        let balanced = IntersectionData {
            d1_into_2: 2,
            d2_into_1: 2,
            links: BTreeMap::new(),
        };
        assert_eq!(linking_equation_check(&balanced), Ok(()));
        let off = IntersectionData {
            d1_into_2: 1,
            d2_into_1: 0,
            links: BTreeMap::new(),
        };
        assert_eq!(
            linking_equation_check(&off),
            Err(SectionsError::LinkingEquationViolated { residual: 1 })
        );
    }

    #[test]
    fn pairwise_constraint_examples() {
        let pos_birkhoff = spec("p", SectionKind::Birkhoff, &[("g", 1, -1)]);
        let neg_partial = spec("n", SectionKind::Partial, &[("g", -1, 0)]);
        let pos_partial = spec("q", SectionKind::Partial, &[("g", 1, 0)]);
        assert_eq!(
            pairwise_link_constraint(&pos_birkhoff, &neg_partial, "g"),
            Ok(LinkConstraint::StrictlyPositive)
        );
        assert_eq!(
            pairwise_link_constraint(&pos_partial, &neg_partial, "g"),
            Ok(LinkConstraint::NonNegative)
        );
        assert_eq!(
            pairwise_link_constraint(&pos_birkhoff, &pos_partial, "g"),
            Err(SectionsError::SignHypothesisUnmet {
                first: SectionSign::Positive,
                second: SectionSign::Positive
            })
        );
        assert_eq!(
            pairwise_link_constraint(&pos_birkhoff, &neg_partial, "h"),
            Err(SectionsError::OrbitNotShared { orbit: "h".into() })
        );
    }

    #[test]
    fn exclusion_positive_birkhoff_against_negative_partial() {
        let s1 = spec("p", SectionKind::Birkhoff, &[("gamma", 1, -1)]);
        let s2 = spec("n", SectionKind::Partial, &[("gamma", -1, 0)]);
        let data = IntersectionData {
            d1_into_2: 0,
            d2_into_1: 0,
            links: BTreeMap::from([("gamma".to_string(), 0)]),
        };
        let ExclusionOutcome::Incompatible(reasons) =
            exclusion_verdict(&s1, &s2, &data).unwrap()
        else {
            panic!("expected incompatibility");
        };
        assert_eq!(
            reasons.last().unwrap(),
            "shared link must be strictly positive but equation forces 0"
        );
        assert_eq!(reasons.len(), 4);
    }

    #[test]
    fn exclusion_no_verdict_for_mixed() {
        let s1 = spec("p", SectionKind::Birkhoff, &[("a", 1, -1)]);
        let mixed = spec("m", SectionKind::Partial, &[("a", 1, 0), ("b", -1, 0)]);
        assert_eq!(
            exclusion_verdict(&s1, &mixed, &IntersectionData::default()).unwrap(),
            ExclusionOutcome::NoVerdict
        );
    }

    #[test]
    fn exclusion_global_birkhoff_against_single_signed() {
        let global = spec("g", SectionKind::Birkhoff, &[]);
        let positive = spec("p", SectionKind::Partial, &[("a", 2, 0)]);
        let out = exclusion_verdict(&global, &positive, &IntersectionData::default()).unwrap();
        assert!(matches!(out, ExclusionOutcome::Incompatible(_)));
        let negative = spec("n", SectionKind::Partial, &[("a", -2, 0)]);
        let out = exclusion_verdict(&global, &negative, &IntersectionData::default()).unwrap();
        assert!(matches!(out, ExclusionOutcome::Incompatible(_)));
    }

    #[test]
    fn exclusion_rejects_inconsistent_data() {
        let s1 = spec("p", SectionKind::Birkhoff, &[("gamma", 1, -1)]);
        let s2 = spec("n", SectionKind::Partial, &[("gamma", -1, 0)]);
        // Equation holds but the signs are impossible.
        let backwards = IntersectionData {
            d1_into_2: -1,
            d2_into_1: -1,
            links: BTreeMap::new(),
        };
        assert!(matches!(
            exclusion_verdict(&s1, &s2, &backwards),
            Err(SectionsError::InconsistentData { .. })
        ));
        let negative_link = IntersectionData {
            d1_into_2: 0,
            d2_into_1: -2,
            links: BTreeMap::from([("gamma".to_string(), -2)]),
        };
        assert!(matches!(
            exclusion_verdict(&s1, &s2, &negative_link),
            Err(SectionsError::InconsistentData { .. })
        ));
        // Equation failure is a precondition error.
        let unbalanced = IntersectionData {
            d1_into_2: 1,
            d2_into_1: 0,
            links: BTreeMap::new(),
        };
        assert_eq!(
            exclusion_verdict(&s1, &s2, &unbalanced),
            Err(SectionsError::LinkingEquationViolated { residual: 1 })
        );
        // Links keyed by unshared orbits are structural nonsense.
        let stray = IntersectionData {
            d1_into_2: 0,
            d2_into_1: 1,
            links: BTreeMap::from([("elsewhere".to_string(), 1)]),
        };
        assert!(matches!(
            exclusion_verdict(&s1, &s2, &stray),
            Err(SectionsError::InconsistentData { .. })
        ));
        // A global first section admits no boundary intersections.
        let global = spec("g", SectionKind::Birkhoff, &[]);
        let pos = spec("q", SectionKind::Partial, &[("a", 1, 0)]);
        let nonzero_d1 = IntersectionData {
            d1_into_2: 3,
            d2_into_1: 3,
            links: BTreeMap::new(),
        };
        assert!(matches!(
            exclusion_verdict(&global, &pos, &nonzero_d1),
            Err(SectionsError::InconsistentData { .. })
        ));
    }

    #[test]
    fn annulus_sign_examples() {
        assert_eq!(
            lozenge_annulus_signs(LozengeType::PlusPlus),
            (ComponentSign::Positive, ComponentSign::Positive)
        );
        assert_eq!(
            lozenge_annulus_signs(LozengeType::PlusMinus),
            (ComponentSign::Negative, ComponentSign::Negative)
        );
        for t in [LozengeType::PlusPlus, LozengeType::PlusMinus] {
            let (a, b) = lozenge_annulus_signs(t);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn classify_nature_examples() {
        let pos_birkhoff = spec("p", SectionKind::Birkhoff, &[("a", 1, -1)]);
        let neg_birkhoff = spec("n", SectionKind::Birkhoff, &[("a", -1, -1)]);
        let global = spec("g", SectionKind::Birkhoff, &[]);
        let neg_partial = spec("np", SectionKind::Partial, &[("a", -1, 0)]);
        let pos_partial = spec("pp", SectionKind::Partial, &[("a", 1, 0)]);

        assert_eq!(
            classify_nature(&[pos_birkhoff.clone()]),
            Ok(FlowNature::PositivelyTwisted)
        );
        assert_eq!(
            classify_nature(&[global.clone()]),
            Ok(FlowNature::NonTwistedSuspension)
        );
        assert_eq!(
            classify_nature(&[neg_birkhoff.clone()]),
            Ok(FlowNature::NegativelyTwisted)
        );
        assert_eq!(classify_nature(&[]), Ok(FlowNature::Undetermined));
        assert_eq!(
            classify_nature(&[pos_partial.clone()]),
            Ok(FlowNature::Undetermined)
        );
        assert_eq!(
            classify_nature(&[pos_birkhoff.clone(), pos_birkhoff.clone()]),
            Ok(FlowNature::PositivelyTwisted)
        );
        let err = classify_nature(&[pos_birkhoff.clone(), neg_partial.clone()]).unwrap_err();
        assert!(matches!(
            err,
            SectionsError::MutuallyExclusive { ref first, ref second, .. }
                if first == "p" && second == "np"
        ));
        assert!(classify_nature(&[pos_birkhoff.clone(), neg_birkhoff.clone()]).is_err());
        assert!(classify_nature(&[global.clone(), pos_partial.clone()]).is_err());
        assert!(classify_nature(&[global.clone(), neg_birkhoff.clone()]).is_err());
        assert!(classify_nature(&[neg_birkhoff, pos_partial]).is_err());
    }

    #[test]
    fn annulus_signs_feed_classification() {
        // A PlusMinus lozenge spans an annulus with two negative boundary
        // components; as partial-section evidence it is incompatible with a
        // positive Birkhoff section.
        let (a, b) = lozenge_annulus_signs(LozengeType::PlusMinus);
        let to_mult = |s: ComponentSign| match s {
            ComponentSign::Positive => 1,
            ComponentSign::Negative => -1,
        };
        let annulus = spec(
            "annulus",
            SectionKind::Partial,
            &[("o1", to_mult(a), 0), ("o2", to_mult(b), 0)],
        );
        let pos_birkhoff = spec("p", SectionKind::Birkhoff, &[("a", 1, -1)]);
        assert!(classify_nature(&[pos_birkhoff, annulus]).is_err());
    }

    #[test]
    fn positivize_examples() {
        let s = spec(
            "s",
            SectionKind::Birkhoff,
            &[("orbit1", -5, -2), ("orbit2", 1, -1)],
        );
        let ks = positivize_pipeline(&s).unwrap();
        assert_eq!(
            ks,
            vec![("orbit1".to_string(), 3), ("orbit2".to_string(), 0)]
        );
        let transformed = apply_boundary_surgeries(&s, &ks).unwrap();
        assert_eq!(section_sign(&transformed), Ok(SectionSign::Positive));
        for (before, after) in s.boundary().iter().zip(transformed.boundary()) {
            assert_eq!(before.invariant.link, after.invariant.link);
        }
        assert_eq!(
            classify_nature(&[transformed]),
            Ok(FlowNature::PositivelyTwisted)
        );

        let already = spec("s", SectionKind::Birkhoff, &[("a", 2, -1)]);
        assert_eq!(
            positivize_pipeline(&already).unwrap(),
            vec![("a".to_string(), 0)]
        );

        let partial = spec("q", SectionKind::Partial, &[("a", 1, 0)]);
        assert_eq!(
            positivize_pipeline(&partial),
            Err(SectionsError::NotBirkhoff { name: "q".into() })
        );
    }

    #[test]
    fn positivize_respects_first_occurrence_order() {
        let s = spec(
            "s",
            SectionKind::Birkhoff,
            &[("b", -1, -1), ("a", -1, -2), ("b", -1, -1)],
        );
        let ks = positivize_pipeline(&s).unwrap();
        assert_eq!(ks[0].0, "b");
        assert_eq!(ks[1].0, "a");
        assert_eq!(ks.len(), 2);
    }

    fn birkhoff_spec_strategy() -> impl Strategy<Value = SectionSpec> {
        proptest::collection::vec(
            ((-6i64..=6).prop_filter("nonzero", |m| *m != 0), -4i64..=-1, 1i64..=3, 1usize..=2),
            1..=4,
        )
        .prop_map(|orbits| {
            let mut boundary = Vec::new();
            for (i, &(mult, link, period, copies)) in orbits.iter().enumerate() {
                let invariant = BoundaryInvariant::new(mult, link, period).unwrap();
                for _ in 0..copies {
                    boundary.push(BoundaryComponent::new(format!("o{i}"), invariant));
                }
            }
            SectionSpec::new("s", SectionKind::Birkhoff, boundary).unwrap()
        })
    }

    fn partial_negative_strategy() -> impl Strategy<Value = SectionSpec> {
        proptest::collection::vec((-6i64..=-1, -4i64..=0, 1i64..=3), 1..=3).prop_map(
            |orbits| {
                let boundary = orbits
                    .iter()
                    .enumerate()
                    .map(|(i, &(mult, link, period))| {
                        BoundaryComponent::new(
                            format!("o{i}"),
                            BoundaryInvariant::new(mult, link, period).unwrap(),
                        )
                    })
                    .collect();
                SectionSpec::new("n", SectionKind::Partial, boundary).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn positivization_makes_every_mult_positive(s in birkhoff_spec_strategy()) {
            let ks = positivize_pipeline(&s).unwrap();
            let transformed = apply_boundary_surgeries(&s, &ks).unwrap();
            prop_assert_eq!(section_sign(&transformed).unwrap(), SectionSign::Positive);
            for (before, after) in s.boundary().iter().zip(transformed.boundary()) {
                prop_assert_eq!(before.invariant.link, after.invariant.link);
                prop_assert_eq!(before.invariant.period, after.invariant.period);
            }
            prop_assert_eq!(
                classify_nature(std::slice::from_ref(&transformed)).unwrap(),
                FlowNature::PositivelyTwisted
            );
        }

        #[test]
        fn exclusion_never_passes_a_positive_birkhoff_negative_pair(
            s1 in birkhoff_spec_strategy(),
            s2 in partial_negative_strategy(),
            d1 in -2i64..=2,
            d2 in -2i64..=2,
            link in -2i64..=2,
        ) {
            // Force s1 positive by positivizing it first.
            let ks = positivize_pipeline(&s1).unwrap();
            let s1 = apply_boundary_surgeries(&s1, &ks).unwrap();
            let shared: Vec<String> = s2
                .boundary()
                .iter()
                .filter(|c| s1.boundary().iter().any(|d| d.orbit == c.orbit))
                .map(|c| c.orbit.clone())
                .collect();
            let links: BTreeMap<String, i64> =
                shared.iter().map(|orbit| (orbit.clone(), link)).collect();
            let data = IntersectionData { d1_into_2: d1, d2_into_1: d2, links };
            match exclusion_verdict(&s1, &s2, &data) {
                Ok(ExclusionOutcome::Incompatible(reasons)) => {
                    prop_assert_eq!(
                        reasons.last().unwrap(),
                        "shared link must be strictly positive but equation forces 0"
                    );
                }
                Ok(ExclusionOutcome::NoVerdict) => {
                    return Err(TestCaseError::fail("shape must always yield a verdict"));
                }
                Err(SectionsError::InconsistentData { .. })
                | Err(SectionsError::LinkingEquationViolated { .. }) => {}
                Err(other) => {
                    return Err(TestCaseError::fail(format!("unexpected error: {other}")));
                }
            }
        }

        #[test]
        fn classification_is_permutation_invariant(
            seed in proptest::collection::vec((0usize..=4, 0i64..=1), 0..=4).prop_shuffle(),
        ) {
            let build = |items: &[(usize, i64)]| -> Vec<SectionSpec> {
                items
                    .iter()
                    .enumerate()
                    .map(|(i, &(shape, sign))| {
                        let mult = if sign == 0 { 1 } else { -1 };
                        let name = format!("s{i}");
                        match shape {
                            0 => spec(&name, SectionKind::Birkhoff, &[("a", mult, -1)]),
                            1 => spec(&name, SectionKind::Birkhoff, &[]),
                            2 => spec(&name, SectionKind::Partial, &[("a", mult, 0)]),
                            3 => spec(
                                &name,
                                SectionKind::Partial,
                                &[("a", 1, 0), ("b", -1, 0)],
                            ),
                            _ => spec(&name, SectionKind::Birkhoff, &[("a", mult, -1), ("b", mult, -2)]),
                        }
                    })
                    .collect()
            };
            let forward = build(&seed);
            let mut reversed_seed = seed.clone();
            reversed_seed.reverse();
            let backward = build(&reversed_seed);
            match (classify_nature(&forward), classify_nature(&backward)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(SectionsError::MutuallyExclusive { .. }),
                 Err(SectionsError::MutuallyExclusive { .. })) => {}
                (a, b) => {
                    return Err(TestCaseError::fail(format!(
                        "order-dependent outcome: {a:?} vs {b:?}"
                    )));
                }
            }
        }

        #[test]
        fn adding_evidence_is_monotone(
            seed in proptest::collection::vec((0usize..=4, 0i64..=1), 1..=4),
        ) {
            let build_one = |i: usize, shape: usize, sign: i64| -> SectionSpec {
                let mult = if sign == 0 { 1 } else { -1 };
                let name = format!("s{i}");
                match shape {
                    0 => spec(&name, SectionKind::Birkhoff, &[("a", mult, -1)]),
                    1 => spec(&name, SectionKind::Birkhoff, &[]),
                    2 => spec(&name, SectionKind::Partial, &[("a", mult, 0)]),
                    3 => spec(&name, SectionKind::Partial, &[("a", 1, 0), ("b", -1, 0)]),
                    _ => spec(&name, SectionKind::Birkhoff, &[("a", mult, -1), ("b", mult, -2)]),
                }
            };
            let all: Vec<SectionSpec> = seed
                .iter()
                .enumerate()
                .map(|(i, &(shape, sign))| build_one(i, shape, sign))
                .collect();
            let prefix = &all[..all.len() - 1];
            if let Ok(nature) = classify_nature(prefix) {
                if nature != FlowNature::Undetermined {
                    match classify_nature(&all) {
                        Ok(extended) => prop_assert_eq!(extended, nature),
                        Err(SectionsError::MutuallyExclusive { .. }) => {}
                        Err(other) => {
                            return Err(TestCaseError::fail(format!(
                                "unexpected error: {other}"
                            )));
                        }
                    }
                }
            }
        }
    }
}
