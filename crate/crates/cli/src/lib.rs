//! Command-line front end over the orbit-space calculus.
//!
//! Scenario JSON comes in through flags or `-f <file.json>`, a JSON report
//! goes to stdout, and a one-line human summary goes to stderr.
//!
//! Exit codes: `0` for success and answered queries, `1` when a check
//! fails, a verdict rejects, or a domain constraint is violated (the report
//! carries the structured reason), `2` when the input itself cannot be
//! understood (usage, JSON, or schema errors).

pub mod reports;
pub mod scenario;
pub mod wire;

use aoc_core::drift::{
    drift, local_drift_sum_check, rectangle_boundary_drift, witness_positive_boundary,
    PolyCurve, Puncture, PuncturedCover,
};
use aoc_core::holonomy::{
    crossing_exponent, generalized_holonomy, positive_side_contraction, CrossingEvent,
    FoliationModel, HolonomyOutcome, SingularityData,
};
use aoc_core::rational::{rat, rat_int};
use aoc_core::sections::{
    classify_nature, exclusion_verdict, linking_equation_check, positivize_pipeline,
    section_sign, apply_boundary_surgeries, ExclusionOutcome, SectionsError,
};
use aoc_core::strip_plane::{classify_model, lozenge_at, quadrant_complete, Completeness, PlanePoint};
use aoc_core::torus_homology::{surgery_transform, BoundaryInvariant};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reports::*;
use scenario::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use wire::{
    lozenge_type_name, nature_name, section_sign_name, WireInt, WireModel, WireSide, SCHEMA,
};

#[derive(Parser)]
#[command(name = "aoc", version, about = "Exact calculus on Anosov orbit spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Integer surgery on a boundary invariant.
    Surgery {
        #[arg(long, allow_negative_numbers = true)]
        mult: i64,
        #[arg(long, allow_negative_numbers = true)]
        link: i64,
        #[arg(long, default_value_t = 1)]
        period: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Queries on the three bifoliated plane models.
    Strip {
        #[command(subcommand)]
        command: StripCommand,
    },
    /// Drift of curves in a punctured infinite cyclic cover.
    Drift {
        #[command(subcommand)]
        command: DriftCommand,
    },
    /// Crossing holonomy on measured foliations.
    Holonomy {
        #[command(subcommand)]
        command: HolonomyCommand,
    },
    /// Linking algebra of partial and Birkhoff sections.
    Sections {
        #[command(subcommand)]
        command: SectionsCommand,
    },
}

#[derive(Subcommand)]
pub enum StripCommand {
    /// Name the flow nature a model realizes.
    Classify {
        #[arg(long, value_enum)]
        model: WireModel,
    },
    /// Decide whether a quadrant set is a lozenge.
    Lozenge {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Decide quadrant completeness; incomplete quadrants get a witness.
    Complete {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum DriftCommand {
    /// Total drift of a closed curve.
    Eval {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Check drift = sum of enclosed local drifts on a simple ccw curve.
    CheckLocal {
        #[arg(short = 'f', long = "file")]
        file: Option<PathBuf>,
        /// Run this many randomized rectangle checks instead of a file.
        #[arg(long, conflicts_with = "file")]
        random: Option<u64>,
    },
    /// Find an enclosed puncture of positive multiplicity when drift < 0.
    Witness {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Boundary drift of the doubling rectangle for given deck counts.
    Rectangle {
        #[arg(long)]
        n1: i64,
        #[arg(long)]
        n2: i64,
    },
}

#[derive(Subcommand)]
pub enum HolonomyCommand {
    /// Crossing exponent of one singularity crossing.
    Exponent {
        #[arg(long, allow_negative_numbers = true)]
        mult: i64,
        #[arg(long, default_value_t = 1)]
        period: i64,
        #[arg(long, allow_negative_numbers = true, default_value_t = -1)]
        link: i64,
        #[arg(long, value_enum)]
        side: WireSide,
    },
    /// Compose a crossing sequence, with an optional periodic tail.
    Compose {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Certify contraction of a right-side positive crossing sequence.
    Contract {
        #[arg(short = 'f', long = "file")]
        file: Option<PathBuf>,
        /// Run this many randomized contraction checks instead of a file.
        #[arg(long, conflicts_with = "file")]
        random: Option<u64>,
    },
}

#[derive(Subcommand)]
pub enum SectionsCommand {
    /// Validate section specs and report their boundary signs.
    Validate {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Check the linking equation d1 - d2 + sum(links) = 0.
    LinkEq {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Run the mutual-exclusion argument on a pair of sections.
    Exclude {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Combine section evidence into a flow-nature classification.
    Classify {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Compute surgery coefficients making every boundary mult positive.
    Positivize {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
}

/// Outcome of one dispatch: report JSON plus a stderr summary, or a
/// malformed-input description.
pub enum Run {
    Accept(String, String),
    Reject(String, String),
    Malformed(&'static str, String),
}

impl Run {
    pub fn exit_code(&self) -> i32 {
        match self {
            Run::Accept(..) => 0,
            Run::Reject(..) => 1,
            Run::Malformed(..) => 2,
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Run::Accept(report, summary) => {
            println!("{report}");
            eprintln!("{summary}");
            0
        }
        Run::Reject(report, summary) => {
            println!("{report}");
            eprintln!("{summary}");
            1
        }
        Run::Malformed(kind, message) => {
            let report = ErrorReport {
                schema: SCHEMA.to_string(),
                error: ErrorDoc {
                    kind: kind.to_string(),
                    message: message.clone(),
                },
            };
            println!("{}", to_json(&report));
            eprintln!("error: {message}");
            2
        }
    }
}

fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string(report).expect("reports serialize")
}

fn accept<T: Serialize>(report: &T, summary: impl Into<String>) -> Run {
    Run::Accept(to_json(report), summary.into())
}

fn reject<T: Serialize>(report: &T, summary: impl Into<String>) -> Run {
    Run::Reject(to_json(report), summary.into())
}

fn violation(kind: &str, err: &dyn Display) -> Run {
    let report = ViolationReport {
        schema: SCHEMA.to_string(),
        violation: ViolationDoc {
            kind: kind.to_string(),
            message: err.to_string(),
        },
    };
    Run::Reject(to_json(&report), format!("violation: {err}"))
}

fn load_doc<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Run> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Run::Malformed("parse", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Run::Malformed("parse", format!("{}: {e}", path.display())))
}

fn check_schema(found: &str) -> Result<(), Run> {
    ensure_schema(found).map_err(|message| Run::Malformed("schema", message))
}

fn seed_from_env() -> u64 {
    std::env::var("AOC_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0xA0C)
}

pub fn dispatch(command: Command) -> Run {
    match command {
        Command::Surgery {
            mult,
            link,
            period,
            k,
        } => cmd_surgery(mult, link, period, k),
        Command::Strip { command } => match command {
            StripCommand::Classify { model } => cmd_strip_classify(model),
            StripCommand::Lozenge { file } => cmd_strip_lozenge(&file),
            StripCommand::Complete { file } => cmd_strip_complete(&file),
        },
        Command::Drift { command } => match command {
            DriftCommand::Eval { file } => cmd_drift_eval(&file),
            DriftCommand::CheckLocal { file, random } => cmd_drift_check_local(file, random),
            DriftCommand::Witness { file } => cmd_drift_witness(&file),
            DriftCommand::Rectangle { n1, n2 } => cmd_drift_rectangle(n1, n2),
        },
        Command::Holonomy { command } => match command {
            HolonomyCommand::Exponent {
                mult,
                period,
                link,
                side,
            } => cmd_holonomy_exponent(mult, link, period, side),
            HolonomyCommand::Compose { file } => cmd_holonomy_compose(&file),
            HolonomyCommand::Contract { file, random } => cmd_holonomy_contract(file, random),
        },
        Command::Sections { command } => match command {
            SectionsCommand::Validate { file } => cmd_sections_validate(&file),
            SectionsCommand::LinkEq { file } => cmd_sections_link_eq(&file),
            SectionsCommand::Exclude { file } => cmd_sections_exclude(&file),
            SectionsCommand::Classify { file } => cmd_sections_classify(&file),
            SectionsCommand::Positivize { file } => cmd_sections_positivize(&file),
        },
    }
}

fn cmd_surgery(mult: i64, link: i64, period: i64, k: i64) -> Run {
    let invariant = match BoundaryInvariant::new(mult, link, period) {
        Ok(v) => v,
        Err(e) => return violation("invariant", &e),
    };
    let wide = i128::from(mult) - i128::from(k) * i128::from(link);
    if i64::try_from(wide).is_err() {
        return violation(
            "overflow",
            &format!("surgered multiplicity {wide} leaves the integer range"),
        );
    }
    let turned = surgery_transform(&invariant, k);
    let report = SurgeryReport {
        schema: SCHEMA.to_string(),
        mult: WireInt(turned.mult),
        link: WireInt(turned.link),
        period: WireInt(turned.period),
    };
    accept(
        &report,
        format!(
            "surgery k={k}: (mult {mult}, link {link}) -> (mult {}, link {})",
            turned.mult, turned.link
        ),
    )
}

fn cmd_strip_classify(model: WireModel) -> Run {
    let nature = classify_model(model.model());
    let report = NatureReport {
        schema: SCHEMA.to_string(),
        nature: nature_name(nature).to_string(),
    };
    accept(&report, format!("model realizes {}", nature_name(nature)))
}

fn cmd_strip_complete(path: &Path) -> Run {
    let doc: StripQueryDoc = match load_doc(path) {
        Ok(doc) => doc,
        Err(run) => return run,
    };
    if let Err(run) = check_schema(&doc.schema) {
        return run;
    }
    match quadrant_complete(doc.model.model(), &doc.point.point(), doc.signs.signs()) {
        Err(e) => violation("strip", &e),
        Ok(Completeness::Complete) => accept(
            &CompleteReport {
                schema: SCHEMA.to_string(),
                complete: true,
                witness: None,
            },
            "quadrant is complete",
        ),
        Ok(Completeness::Incomplete { y, z }) => accept(
            &CompleteReport {
                schema: SCHEMA.to_string(),
                complete: false,
                witness: Some(WitnessPairDoc {
                    y: PointDoc::of(&y),
                    z: PointDoc::of(&z),
                }),
            },
            "quadrant is incomplete; witness leaf pair emitted",
        ),
    }
}

fn cmd_strip_lozenge(path: &Path) -> Run {
    let doc: StripQueryDoc = match load_doc(path) {
        Ok(doc) => doc,
        Err(run) => return run,
    };
    if let Err(run) = check_schema(&doc.schema) {
        return run;
    }
    match lozenge_at(doc.model.model(), &doc.point.point(), doc.signs.signs()) {
        Err(e) => violation("strip", &e),
        Ok(None) => accept(
            &LozengeReport {
                schema: SCHEMA.to_string(),
                lozenge: None,
            },
            "quadrant set is not a lozenge",
        ),
        Ok(Some(lozenge)) => {
            let type_name = lozenge_type_name(lozenge.lozenge_type);
            accept(
                &LozengeReport {
                    schema: SCHEMA.to_string(),
                    lozenge: Some(LozengeDoc {
                        corner1: PointDoc::of(&lozenge.corner1),
                        corner2: PointDoc::of(&lozenge.corner2),
                        lozenge_type: type_name.to_string(),
                    }),
                },
                format!("lozenge of type {type_name}"),
            )
        }
    }
}

fn load_drift_scene(path: &Path) -> Result<(PuncturedCover, PolyCurve), Run> {
    let doc: DriftSceneDoc = load_doc(path)?;
    check_schema(&doc.schema)?;
    let cover = doc.cover().map_err(|e| violation("drift", &e))?;
    let curve = doc.curve().map_err(|e| violation("drift", &e))?;
    Ok((cover, curve))
}

fn cmd_drift_eval(path: &Path) -> Run {
    let (cover, curve) = match load_drift_scene(path) {
        Ok(v) => v,
        Err(run) => return run,
    };
    match drift(&cover, &curve) {
        Err(e) => violation("drift", &e),
        Ok(total) => accept(
            &DriftReport {
                schema: SCHEMA.to_string(),
                drift: WireInt(total),
            },
            format!("drift {total}"),
        ),
    }
}

fn cmd_drift_check_local(file: Option<PathBuf>, random: Option<u64>) -> Run {
    match (file, random) {
        (Some(path), None) => {
            let (cover, curve) = match load_drift_scene(&path) {
                Ok(v) => v,
                Err(run) => return run,
            };
            match local_drift_sum_check(&cover, &curve) {
                Err(e) => violation("drift", &e),
                Ok(check) => {
                    let report = SumCheckReport {
                        schema: SCHEMA.to_string(),
                        curve_drift: WireInt(check.curve_drift),
                        enclosed_sum: WireInt(check.enclosed_sum),
                        accepted: check.accepted(),
                    };
                    if check.accepted() {
                        accept(&report, "local drift sum check passed")
                    } else {
                        reject(
                            &report,
                            format!(
                                "local drift sum check failed: drift {} vs enclosed sum {}",
                                check.curve_drift, check.enclosed_sum
                            ),
                        )
                    }
                }
            }
        }
        (None, Some(count)) => cmd_drift_check_local_random(count),
        _ => Run::Malformed(
            "usage",
            "pass exactly one of -f <file.json> or --random <count>".to_string(),
        ),
    }
}

fn cmd_drift_check_local_random(count: u64) -> Run {
    let seed = seed_from_env();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let x1 = rng.gen_range(-20i64..=20);
        let y1 = rng.gen_range(-20i64..=20);
        let dx = rng.gen_range(1i64..=15);
        let dy = rng.gen_range(1i64..=15);
        let rect = PolyCurve::new(vec![
            PlanePoint::from_ints(x1, y1),
            PlanePoint::from_ints(x1 + dx, y1),
            PlanePoint::from_ints(x1 + dx, y1 + dy),
            PlanePoint::from_ints(x1, y1 + dy),
        ])
        .expect("axis-aligned rectangles are simple and ccw");
        let punctures: Vec<Puncture> = (0..rng.gen_range(0usize..=6))
            .map(|i| {
                // Coordinates are 1/3 past the lattice, so they never land
                // on an integer-aligned edge; the x spread keeps them
                // distinct.
                Puncture::new(
                    PlanePoint::new(
                        rat(3 * rng.gen_range(-25i64..=25) + 1, 3) + rat_int(100 * i as i64),
                        rat(3 * rng.gen_range(-25i64..=25) + 1, 3),
                    ),
                    rng.gen_range(-4i64..=4),
                )
            })
            .collect();
        let cover = PuncturedCover::new(punctures).expect("distinct by construction");
        let check = local_drift_sum_check(&cover, &rect).expect("valid by construction");
        if !check.accepted() {
            let report = SumCheckReport {
                schema: SCHEMA.to_string(),
                curve_drift: WireInt(check.curve_drift),
                enclosed_sum: WireInt(check.enclosed_sum),
                accepted: false,
            };
            return reject(&report, "randomized local drift sum check failed");
        }
    }
    accept(
        &RandomCheckReport {
            schema: SCHEMA.to_string(),
            checked: count,
            accepted: true,
            seed: seed.to_string(),
        },
        format!("{count} randomized sum checks passed (seed {seed})"),
    )
}

fn cmd_drift_witness(path: &Path) -> Run {
    let (cover, curve) = match load_drift_scene(path) {
        Ok(v) => v,
        Err(run) => return run,
    };
    match witness_positive_boundary(&cover, &curve) {
        Err(e) => violation("drift", &e),
        Ok(None) => accept(
            &WitnessReport {
                schema: SCHEMA.to_string(),
                witness: None,
            },
            "drift is nonnegative; no witness required",
        ),
        Ok(Some(puncture)) => accept(
            &WitnessReport {
                schema: SCHEMA.to_string(),
                witness: Some(PunctureDoc::of(&puncture)),
            },
            "enclosed puncture with positive multiplicity found",
        ),
    }
}

fn cmd_drift_rectangle(n1: i64, n2: i64) -> Run {
    match rectangle_boundary_drift(n1, n2) {
        Err(e) => violation("drift", &e),
        Ok(total) => accept(
            &RectangleReport {
                schema: SCHEMA.to_string(),
                boundary_drift: WireInt(total),
            },
            format!("boundary drift {total}"),
        ),
    }
}

fn cmd_holonomy_exponent(mult: i64, link: i64, period: i64, side: WireSide) -> Run {
    let data = match SingularityData::new(mult, link, period) {
        Ok(v) => v,
        Err(e) => return violation("holonomy", &e),
    };
    if i128::from(mult)
        .checked_mul(i128::from(period))
        .and_then(|p| i64::try_from(p).ok())
        .is_none()
    {
        return violation(
            "overflow",
            &format!("exponent {mult} * {period} leaves the integer range"),
        );
    }
    let exponent = crossing_exponent(&data, side.side());
    accept(
        &ExponentReport {
            schema: SCHEMA.to_string(),
            exponent: WireInt(exponent),
        },
        format!("crossing exponent {exponent}"),
    )
}

fn cmd_holonomy_compose(path: &Path) -> Run {
    let doc: HolonomyDoc = match load_doc(path) {
        Ok(doc) => doc,
        Err(run) => return run,
    };
    if let Err(run) = check_schema(&doc.schema) {
        return run;
    }
    let model = match doc.model() {
        Ok(v) => v,
        Err(e) => return violation("holonomy", &e),
    };
    let initial = match doc.initial_length() {
        Ok(v) => v,
        Err(e) => return violation("holonomy", &e),
    };
    let events = match doc.events() {
        Ok(v) => v,
        Err(e) => return violation("holonomy", &e),
    };
    let tail = match doc.tail() {
        Ok(v) => v,
        Err(e) => return violation("holonomy", &e),
    };
    match generalized_holonomy(&initial, &events, tail.as_deref(), &model) {
        Err(e) => violation("holonomy", &e),
        Ok(HolonomyOutcome::Defined(length)) => accept(
            &ComposeReport {
                schema: SCHEMA.to_string(),
                outcome: "defined".to_string(),
                length: Some(terms_of_length(&length)),
                per_period_max_exponent: None,
            },
            format!("holonomy defined: {length}"),
        ),
        Ok(HolonomyOutcome::BlowUp {
            per_period_max_exponent,
        }) => reject(
            &ComposeReport {
                schema: SCHEMA.to_string(),
                outcome: "blow-up".to_string(),
                length: None,
                per_period_max_exponent: Some(WireInt(per_period_max_exponent)),
            },
            format!(
                "holonomy undefined: periodic tail blows up (net exponent {per_period_max_exponent})"
            ),
        ),
    }
}

fn cmd_holonomy_contract(file: Option<PathBuf>, random: Option<u64>) -> Run {
    match (file, random) {
        (Some(path), None) => {
            let doc: HolonomyDoc = match load_doc(&path) {
                Ok(doc) => doc,
                Err(run) => return run,
            };
            if let Err(run) = check_schema(&doc.schema) {
                return run;
            }
            let model = match doc.model() {
                Ok(v) => v,
                Err(e) => return violation("holonomy", &e),
            };
            let events = match doc.events() {
                Ok(v) => v,
                Err(e) => return violation("holonomy", &e),
            };
            match positive_side_contraction(&model, &events) {
                Err(e) => violation("holonomy", &e),
                Ok(certificate) => accept(
                    &ContractReport {
                        schema: SCHEMA.to_string(),
                        exponents: certificate.exponents.iter().map(|&k| WireInt(k)).collect(),
                        composed: terms_of_length(&certificate.composed),
                        holds: certificate.holds(),
                    },
                    "contraction certificate emitted",
                ),
            }
        }
        (None, Some(count)) => cmd_holonomy_contract_random(count),
        _ => Run::Malformed(
            "usage",
            "pass exactly one of -f <file.json> or --random <count>".to_string(),
        ),
    }
}

fn cmd_holonomy_contract_random(count: u64) -> Run {
    let seed = seed_from_env();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = FoliationModel::new(
        BTreeMap::from([
            ("a".to_string(), SingularityData::new(1, -1, 1).unwrap()),
            ("b".to_string(), SingularityData::new(2, -1, 2).unwrap()),
            ("c".to_string(), SingularityData::new(5, -1, 1).unwrap()),
        ]),
        None,
    )
    .expect("valid pool");
    let names = ["a", "b", "c"];
    for _ in 0..count {
        let events: Vec<CrossingEvent> = (0..rng.gen_range(0usize..=10))
            .map(|i| {
                CrossingEvent::new(
                    names[rng.gen_range(0usize..3)],
                    aoc_core::holonomy::Side::SingularOnRight,
                    rat(rng.gen_range(1i64..=8), 8),
                    rat_int(i as i64),
                )
                .expect("valid split")
            })
            .collect();
        let certificate = positive_side_contraction(&pool, &events)
            .expect("right-side positive sequences meet the precondition");
        if !certificate.holds() {
            return reject(
                &RandomCheckReport {
                    schema: SCHEMA.to_string(),
                    checked: count,
                    accepted: false,
                    seed: seed.to_string(),
                },
                "randomized contraction check failed",
            );
        }
    }
    accept(
        &RandomCheckReport {
            schema: SCHEMA.to_string(),
            checked: count,
            accepted: true,
            seed: seed.to_string(),
        },
        format!("{count} randomized contraction checks passed (seed {seed})"),
    )
}

fn cmd_sections_validate(path: &Path) -> Run {
    let doc: SectionsListDoc = match load_doc(path) {
        Ok(doc) => doc,
        Err(run) => return run,
    };
    if let Err(run) = check_schema(&doc.schema) {
        return run;
    }
    let mut rows = Vec::new();
    for section_doc in &doc.sections {
        let section = match section_doc.section() {
            Ok(v) => v,
            Err(e) => return violation("sections", &e),
        };
        let sign = match section_sign(&section) {
            Ok(v) => v,
            Err(e) => return violation("sections", &e),
        };
        rows.push(SectionSummary {
            name: section.name().to_string(),
            sign: section_sign_name(sign).to_string(),
        });
    }
    let summary = format!("{} section(s) valid", rows.len());
    accept(
        &ValidateReport {
            schema: SCHEMA.to_string(),
            sections: rows,
        },
        summary,
    )
}

fn cmd_sections_link_eq(path: &Path) -> Run {
    let doc: LinkEqDoc = match load_doc(path) {
        Ok(doc) => doc,
        Err(run) => return run,
    };
    if let Err(run) = check_schema(&doc.schema) {
        return run;
    }
    match linking_equation_check(&doc.data()) {
        Ok(()) => accept(
            &LinkEqReport {
                schema: SCHEMA.to_string(),
                residual: WireInt(0),
                holds: true,
            },
            "linking equation holds",
        ),
        Err(SectionsError::LinkingEquationViolated { residual }) => reject(
            &LinkEqReport {
                schema: SCHEMA.to_string(),
                residual: WireInt(residual),
                holds: false,
            },
            format!("linking equation violated: residual {residual}"),
        ),
        Err(e) => violation("sections", &e),
    }
}

fn cmd_sections_exclude(path: &Path) -> Run {
    let doc: PairDoc = match load_doc(path) {
        Ok(doc) => doc,
        Err(run) => return run,
    };
    if let Err(run) = check_schema(&doc.schema) {
        return run;
    }
    let first = match doc.first.section() {
        Ok(v) => v,
        Err(e) => return violation("sections", &e),
    };
    let second = match doc.second.section() {
        Ok(v) => v,
        Err(e) => return violation("sections", &e),
    };
    match exclusion_verdict(&first, &second, &doc.data()) {
        Err(e) => violation("sections", &e),
        Ok(ExclusionOutcome::NoVerdict) => accept(
            &ExcludeReport {
                schema: SCHEMA.to_string(),
                verdict: "no-verdict".to_string(),
                reasons: None,
            },
            "hypotheses not matched; no verdict",
        ),
        Ok(ExclusionOutcome::Incompatible(reasons)) => {
            let summary = format!(
                "sections are incompatible: {}",
                reasons.last().map(String::as_str).unwrap_or("")
            );
            reject(
                &ExcludeReport {
                    schema: SCHEMA.to_string(),
                    verdict: "incompatible".to_string(),
                    reasons: Some(reasons),
                },
                summary,
            )
        }
    }
}

fn cmd_sections_classify(path: &Path) -> Run {
    let doc: SectionsListDoc = match load_doc(path) {
        Ok(doc) => doc,
        Err(run) => return run,
    };
    if let Err(run) = check_schema(&doc.schema) {
        return run;
    }
    let mut sections = Vec::new();
    for section_doc in &doc.sections {
        match section_doc.section() {
            Ok(v) => sections.push(v),
            Err(e) => return violation("sections", &e),
        }
    }
    match classify_nature(&sections) {
        Err(e) => violation("sections", &e),
        Ok(nature) => accept(
            &NatureReport {
                schema: SCHEMA.to_string(),
                nature: nature_name(nature).to_string(),
            },
            format!("evidence classifies the flow as {}", nature_name(nature)),
        ),
    }
}

fn cmd_sections_positivize(path: &Path) -> Run {
    let doc: SectionOneDoc = match load_doc(path) {
        Ok(doc) => doc,
        Err(run) => return run,
    };
    if let Err(run) = check_schema(&doc.schema) {
        return run;
    }
    let section = match doc.section.section() {
        Ok(v) => v,
        Err(e) => return violation("sections", &e),
    };
    let coefficients = match positivize_pipeline(&section) {
        Ok(v) => v,
        Err(e) => return violation("sections", &e),
    };
    let transformed = match apply_boundary_surgeries(&section, &coefficients) {
        Ok(v) => v,
        Err(e) => return violation("sections", &e),
    };
    let nature = match classify_nature(std::slice::from_ref(&transformed)) {
        Ok(v) => v,
        Err(e) => return violation("sections", &e),
    };
    accept(
        &PositivizeReport {
            schema: SCHEMA.to_string(),
            coefficients: coefficients
                .iter()
                .map(|(orbit, k)| CoefficientDoc {
                    orbit: orbit.clone(),
                    k: WireInt(*k),
                })
                .collect(),
            section: SectionDoc::of(&transformed),
            nature: nature_name(nature).to_string(),
        },
        format!(
            "positivized over {} orbit(s); flow is {}",
            coefficients.len(),
            nature_name(nature)
        ),
    )
}
