//! Wire formats shared by scenario files and reports.
//!
//! Rationals travel as canonical strings: lowest terms, positive
//! denominator, `"p/q"` with the `/q` dropped when integral. Integer
//! invariants travel as JSON numbers while they are exactly representable
//! in an IEEE double and as decimal strings beyond that, so consumers that
//! read JSON numbers as floats never see silent rounding.

use aoc_core::holonomy::Side;
use aoc_core::rational::Rational;
use aoc_core::sections::SectionSign;
use aoc_core::strip_plane::{FlowNature, LozengeType, PlaneModel, Sign};
use aoc_core::torus_homology::SectionKind;
use num_bigint::BigInt;
use num_traits::One;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Version tag expected at the top of every scenario and report document.
pub const SCHEMA: &str = "aoc/1";

/// Failed rational parse. `offset` is the byte where the input stops
/// matching `-?\d+(/[1-9]\d*)?`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed rational at byte {}", self.offset)
    }
}

impl std::error::Error for ParseError {}

/// Parse an exact rational from `-?\d+(/[1-9]\d*)?`. A zero denominator is
/// unrepresentable in the grammar, so `"1/0"` fails at the `'0'`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    if bytes.first() == Some(&b'-') {
        pos = 1;
    }
    let numer_start = pos;
    while bytes.get(pos).is_some_and(|b| b.is_ascii_digit()) {
        pos += 1;
    }
    if pos == numer_start {
        return Err(ParseError { offset: pos });
    }
    let numer_end = pos;
    let mut denom_span = None;
    if bytes.get(pos) == Some(&b'/') {
        pos += 1;
        let denom_start = pos;
        if !bytes.get(pos).is_some_and(|b| (b'1'..=b'9').contains(b)) {
            return Err(ParseError { offset: pos });
        }
        pos += 1;
        while bytes.get(pos).is_some_and(|b| b.is_ascii_digit()) {
            pos += 1;
        }
        denom_span = Some((denom_start, pos));
    }
    if pos != bytes.len() {
        return Err(ParseError { offset: pos });
    }
    let numer: BigInt = text[..numer_end].parse().expect("validated digit run");
    let denom: BigInt = match denom_span {
        Some((a, b)) => text[a..b].parse().expect("validated digit run"),
        None => BigInt::one(),
    };
    Ok(Rational::new(numer, denom))
}

/// Exact rational carried as a canonical string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireRat(pub Rational);

impl From<Rational> for WireRat {
    fn from(r: Rational) -> Self {
        WireRat(r)
    }
}

impl Serialize for WireRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for WireRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text)
            .map(WireRat)
            .map_err(|e| de::Error::custom(format!("{e} in {text:?}")))
    }
}

/// Bound below which every integer survives a round trip through an IEEE
/// double.
const DOUBLE_EXACT: i64 = 1 << 53;

/// Integer invariant: a JSON number when double-exact, a decimal string
/// beyond that. Both forms are accepted on input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct WireInt(pub i64);

impl From<i64> for WireInt {
    fn from(n: i64) -> Self {
        WireInt(n)
    }
}

impl Serialize for WireInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0 > -DOUBLE_EXACT && self.0 < DOUBLE_EXACT {
            serializer.serialize_i64(self.0)
        } else {
            serializer.serialize_str(&self.0.to_string())
        }
    }
}

struct WireIntVisitor;

impl Visitor<'_> for WireIntVisitor {
    type Value = WireInt;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<WireInt, E> {
        Ok(WireInt(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<WireInt, E> {
        i64::try_from(v)
            .map(WireInt)
            .map_err(|_| E::custom(format!("integer {v} out of range")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<WireInt, E> {
        v.parse::<i64>()
            .map(WireInt)
            .map_err(|_| E::custom(format!("malformed integer {v:?}")))
    }
}

impl<'de> Deserialize<'de> for WireInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(WireIntVisitor)
    }
}

/// Plane model selector, shared by flags and scenario files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WireModel {
    Trivial,
    Positive,
    Negative,
}

impl WireModel {
    pub fn model(self) -> PlaneModel {
        match self {
            WireModel::Trivial => PlaneModel::Trivial,
            WireModel::Positive => PlaneModel::PositiveStrip,
            WireModel::Negative => PlaneModel::NegativeStrip,
        }
    }
}

/// Which side of the crossed leaf carries the singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WireSide {
    Right,
    Left,
}

impl WireSide {
    pub fn side(self) -> Side {
        match self {
            WireSide::Right => Side::SingularOnRight,
            WireSide::Left => Side::SingularOnLeft,
        }
    }
}

/// Half-leaf sign, written `"+"` or `"-"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WireSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl WireSign {
    pub fn sign(self) -> Sign {
        match self {
            WireSign::Plus => Sign::Plus,
            WireSign::Minus => Sign::Minus,
        }
    }
}

/// Section kind on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WireKind {
    Birkhoff,
    Partial,
}

impl WireKind {
    pub fn kind(self) -> SectionKind {
        match self {
            WireKind::Birkhoff => SectionKind::Birkhoff,
            WireKind::Partial => SectionKind::Partial,
        }
    }

    pub fn of(kind: SectionKind) -> Self {
        match kind {
            SectionKind::Birkhoff => WireKind::Birkhoff,
            SectionKind::Partial => WireKind::Partial,
        }
    }
}

pub fn nature_name(nature: FlowNature) -> &'static str {
    match nature {
        FlowNature::NonTwistedSuspension => "non-twisted-suspension",
        FlowNature::PositivelyTwisted => "positively-twisted",
        FlowNature::NegativelyTwisted => "negatively-twisted",
        FlowNature::Undetermined => "undetermined",
    }
}

pub fn lozenge_type_name(t: LozengeType) -> &'static str {
    match t {
        LozengeType::PlusPlus => "plus-plus",
        LozengeType::PlusMinus => "plus-minus",
    }
}

pub fn section_sign_name(sign: SectionSign) -> &'static str {
    match sign {
        SectionSign::Positive => "positive",
        SectionSign::Negative => "negative",
        SectionSign::Mixed => "mixed",
        SectionSign::Global => "global",
    }
}
