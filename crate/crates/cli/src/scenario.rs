//! Scenario documents accepted through `-f`.
//!
//! Every top-level document carries a `schema` tag and rejects unknown
//! fields, so scenario files stay reproducible artifacts: a file that
//! parses today parses identically tomorrow or fails loudly.

use crate::wire::{WireInt, WireKind, WireModel, WireRat, WireSide, WireSign, SCHEMA};
use aoc_core::drift::{DriftError, PolyCurve, Puncture, PuncturedCover};
use aoc_core::holonomy::{
    CrossingEvent, FoliationModel, HolonomyError, LambdaLength, SingularityData,
};
use aoc_core::sections::{BoundaryComponent, IntersectionData, SectionSpec};
use aoc_core::strip_plane::{PlanePoint, QuadrantSigns};
use aoc_core::torus_homology::{BoundaryInvariant, TorusError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub fn ensure_schema(found: &str) -> Result<(), String> {
    if found == SCHEMA {
        Ok(())
    } else {
        Err(format!("unsupported schema {found:?}, expected {SCHEMA:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub x: WireRat,
    pub y: WireRat,
}

impl PointDoc {
    pub fn point(&self) -> PlanePoint {
        PlanePoint::new(self.x.0.clone(), self.y.0.clone())
    }

    pub fn of(p: &PlanePoint) -> Self {
        PointDoc {
            x: WireRat(p.x.clone()),
            y: WireRat(p.y.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignsDoc {
    pub stable: WireSign,
    pub unstable: WireSign,
}

impl SignsDoc {
    pub fn signs(&self) -> QuadrantSigns {
        QuadrantSigns::new(self.stable.sign(), self.unstable.sign())
    }
}

/// Input for `strip complete` and `strip lozenge`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripQueryDoc {
    pub schema: String,
    pub model: WireModel,
    pub point: PointDoc,
    pub signs: SignsDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantDoc {
    pub mult: WireInt,
    pub link: WireInt,
    pub period: WireInt,
}

impl InvariantDoc {
    pub fn invariant(&self) -> Result<BoundaryInvariant, TorusError> {
        BoundaryInvariant::new(self.mult.0, self.link.0, self.period.0)
    }

    pub fn of(invariant: &BoundaryInvariant) -> Self {
        InvariantDoc {
            mult: WireInt(invariant.mult),
            link: WireInt(invariant.link),
            period: WireInt(invariant.period),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PunctureDoc {
    pub x: WireRat,
    pub y: WireRat,
    pub local_drift: WireInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant: Option<InvariantDoc>,
}

impl PunctureDoc {
    pub fn puncture(&self) -> Result<Puncture, TorusError> {
        let position = PlanePoint::new(self.x.0.clone(), self.y.0.clone());
        Ok(match &self.invariant {
            None => Puncture::new(position, self.local_drift.0),
            Some(doc) => Puncture::with_invariant(position, self.local_drift.0, doc.invariant()?),
        })
    }

    pub fn of(p: &Puncture) -> Self {
        PunctureDoc {
            x: WireRat(p.position.x.clone()),
            y: WireRat(p.position.y.clone()),
            local_drift: WireInt(p.local_drift),
            invariant: p.invariant.as_ref().map(InvariantDoc::of),
        }
    }
}

/// Input for the `drift` subcommands: a punctured cover and a closed curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriftSceneDoc {
    pub schema: String,
    pub punctures: Vec<PunctureDoc>,
    pub curve: Vec<PointDoc>,
}

impl DriftSceneDoc {
    pub fn cover(&self) -> Result<PuncturedCover, String> {
        let punctures = self
            .punctures
            .iter()
            .map(PunctureDoc::puncture)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        PuncturedCover::new(punctures).map_err(|e| e.to_string())
    }

    pub fn curve(&self) -> Result<PolyCurve, DriftError> {
        PolyCurve::new(self.curve.iter().map(PointDoc::point).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularityDoc {
    pub mult: WireInt,
    pub link: WireInt,
    pub period: WireInt,
}

impl SingularityDoc {
    pub fn data(&self) -> Result<SingularityData, HolonomyError> {
        SingularityData::new(self.mult.0, self.link.0, self.period.0)
    }
}

/// One `coeff * lambda^exp` term of a formal length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: WireRat,
    pub exp: WireInt,
}

pub fn length_from_terms(terms: &[TermDoc]) -> Result<LambdaLength, HolonomyError> {
    LambdaLength::new(terms.iter().map(|t| (t.exp.0, t.coeff.0.clone())))
}

pub fn terms_of_length(len: &LambdaLength) -> Vec<TermDoc> {
    len.terms()
        .map(|(exp, coeff)| TermDoc {
            coeff: WireRat(coeff.clone()),
            exp: WireInt(exp),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventDoc {
    pub singularity: String,
    pub side: WireSide,
    pub split: WireRat,
    pub u_position: WireRat,
}

impl EventDoc {
    pub fn event(&self) -> Result<CrossingEvent, HolonomyError> {
        CrossingEvent::new(
            self.singularity.clone(),
            self.side.side(),
            self.split.0.clone(),
            self.u_position.0.clone(),
        )
    }
}

/// Input for `holonomy compose` and `holonomy contract`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolonomyDoc {
    pub schema: String,
    pub singularities: BTreeMap<String, SingularityDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_hint: Option<WireRat>,
    /// Initial length; the unit length `1 * lambda^0` when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub events: Vec<EventDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodic_tail: Option<Vec<EventDoc>>,
}

impl HolonomyDoc {
    pub fn model(&self) -> Result<FoliationModel, HolonomyError> {
        let mut singularities = BTreeMap::new();
        for (name, doc) in &self.singularities {
            singularities.insert(name.clone(), doc.data()?);
        }
        FoliationModel::new(singularities, self.lambda_hint.as_ref().map(|h| h.0.clone()))
    }

    pub fn initial_length(&self) -> Result<LambdaLength, HolonomyError> {
        match &self.initial {
            None => Ok(LambdaLength::unit()),
            Some(terms) => length_from_terms(terms),
        }
    }

    pub fn events(&self) -> Result<Vec<CrossingEvent>, HolonomyError> {
        self.events.iter().map(EventDoc::event).collect()
    }

    pub fn tail(&self) -> Result<Option<Vec<CrossingEvent>>, HolonomyError> {
        match &self.periodic_tail {
            None => Ok(None),
            Some(events) => Ok(Some(
                events
                    .iter()
                    .map(EventDoc::event)
                    .collect::<Result<Vec<_>, _>>()?,
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub orbit: String,
    pub mult: WireInt,
    pub link: WireInt,
    pub period: WireInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionDoc {
    pub name: String,
    pub kind: WireKind,
    pub boundary: Vec<ComponentDoc>,
}

impl SectionDoc {
    pub fn section(&self) -> Result<SectionSpec, String> {
        let boundary = self
            .boundary
            .iter()
            .map(|c| {
                let invariant = BoundaryInvariant::new(c.mult.0, c.link.0, c.period.0)
                    .map_err(|e| format!("orbit {:?}: {e}", c.orbit))?;
                Ok(BoundaryComponent::new(c.orbit.clone(), invariant))
            })
            .collect::<Result<Vec<_>, String>>()?;
        SectionSpec::new(self.name.clone(), self.kind.kind(), boundary).map_err(|e| e.to_string())
    }

    pub fn of(section: &SectionSpec) -> Self {
        SectionDoc {
            name: section.name().to_string(),
            kind: WireKind::of(section.kind()),
            boundary: section
                .boundary()
                .iter()
                .map(|c| ComponentDoc {
                    orbit: c.orbit.clone(),
                    mult: WireInt(c.invariant.mult),
                    link: WireInt(c.invariant.link),
                    period: WireInt(c.invariant.period),
                })
                .collect(),
        }
    }
}

/// Input for `sections validate` and `sections classify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionsListDoc {
    pub schema: String,
    pub sections: Vec<SectionDoc>,
}

/// Input for `sections positivize`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionOneDoc {
    pub schema: String,
    pub section: SectionDoc,
}

/// Input for `sections link-eq`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkEqDoc {
    pub schema: String,
    pub d1_into_2: WireInt,
    pub d2_into_1: WireInt,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub links: BTreeMap<String, WireInt>,
}

impl LinkEqDoc {
    pub fn data(&self) -> IntersectionData {
        IntersectionData {
            d1_into_2: self.d1_into_2.0,
            d2_into_1: self.d2_into_1.0,
            links: self.links.iter().map(|(k, v)| (k.clone(), v.0)).collect(),
        }
    }
}

/// Input for `sections exclude`: two section specs and their intersection
/// data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub schema: String,
    pub first: SectionDoc,
    pub second: SectionDoc,
    pub d1_into_2: WireInt,
    pub d2_into_1: WireInt,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub links: BTreeMap<String, WireInt>,
}

impl PairDoc {
    pub fn data(&self) -> IntersectionData {
        IntersectionData {
            d1_into_2: self.d1_into_2.0,
            d2_into_1: self.d2_into_1.0,
            links: self.links.iter().map(|(k, v)| (k.clone(), v.0)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{
            "schema": "aoc/1",
            "model": "positive",
            "point": {"x": "0", "y": "0"},
            "signs": {"stable": "+", "unstable": "+"},
            "extra": 1
        }"#;
        let err = serde_json::from_str::<StripQueryDoc>(text).unwrap_err();
        assert!(err.to_string().contains("extra"));
    }

    #[test]
    fn schema_tag_is_enforced() {
        assert!(ensure_schema("aoc/1").is_ok());
        assert!(ensure_schema("aoc/2").is_err());
        assert!(ensure_schema("").is_err());
    }

    #[test]
    fn puncture_invariants_are_optional() {
        let bare: PunctureDoc =
            serde_json::from_str(r#"{"x": "1/3", "y": "1/3", "local_drift": -2}"#).unwrap();
        assert_eq!(bare.puncture().unwrap().invariant, None);
        let full: PunctureDoc = serde_json::from_str(
            r#"{"x": "0", "y": "0", "local_drift": -1,
                "invariant": {"mult": 1, "link": -1, "period": 1}}"#,
        )
        .unwrap();
        assert_eq!(full.puncture().unwrap().invariant.unwrap().mult, 1);
    }

    #[test]
    fn bad_rationals_surface_their_offset() {
        let err = serde_json::from_str::<PointDoc>(r#"{"x": "1/0", "y": "0"}"#).unwrap_err();
        assert!(err.to_string().contains("byte 2"));
    }

    #[test]
    fn link_maps_default_to_empty() {
        let doc: LinkEqDoc = serde_json::from_str(
            r#"{"schema": "aoc/1", "d1_into_2": 0, "d2_into_1": 0}"#,
        )
        .unwrap();
        assert!(doc.data().links.is_empty());
    }

    #[test]
    fn holonomy_defaults_cover_the_optional_parts() {
        let doc: HolonomyDoc = serde_json::from_str(
            r#"{"schema": "aoc/1",
                "singularities": {"s": {"mult": 2, "link": -1, "period": 1}}}"#,
        )
        .unwrap();
        assert_eq!(doc.initial_length().unwrap(), LambdaLength::unit());
        assert!(doc.events().unwrap().is_empty());
        assert_eq!(doc.tail().unwrap(), None);
        assert!(doc.model().unwrap().lambda_hint().is_none());
    }
}
