//! Self-describing JSON documents for idempotent systems.
//!
//! A document carries the monoid, ring selector, orientation, generating set,
//! elements, per-class construction records and optionally a verification
//! report, so a system can be re-checked without any other input.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::idempotents::{
    Axiom, AxiomCheck, Certificate, ClassRecord, IdempotentSystem, Orientation, SystemEntry,
    VerificationReport,
};
use crate::monoid::{FiniteMonoid, GeneratingSet};
use crate::ring::{BuiltinRing, CoefficientRing, Integers};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub n: usize,
    pub unit: usize,
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl MonoidDoc {
    pub fn from_monoid(m: &FiniteMonoid) -> Self {
        MonoidDoc {
            n: m.size(),
            unit: m.unit(),
            names: m.names().to_vec(),
            table: m.rows(),
        }
    }

    pub fn to_monoid(&self) -> Result<FiniteMonoid> {
        if self.table.len() != self.n {
            return Err(Error::PreconditionViolated(format!(
                "monoid declares n = {} but has {} rows",
                self.n,
                self.table.len()
            )));
        }
        FiniteMonoid::new(self.table.clone(), self.unit)?.with_names(self.names.clone())
    }
}

/// Sparse coefficient list: `[element index, coefficient]` pairs in index order.
type Terms = Vec<(usize, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub label: String,
    pub ring_idempotent: usize,
    pub class: usize,
    pub text: String,
    pub terms: Terms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    pub representative: usize,
    pub class_size: usize,
    pub a: u64,
    pub b: u64,
    pub t: Terms,
    pub q: Terms,
    pub e: Terms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub axiom: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub passed: bool,
    pub certificate: String,
    pub checks: Vec<CheckDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub format_version: u32,
    pub monoid: MonoidDoc,
    pub ring: String,
    pub orientation: String,
    pub generators: Vec<usize>,
    pub elements: Vec<ElementDoc>,
    pub provenance: Vec<ClassDoc>,
    pub report: Option<ReportDoc>,
}

/// A parsed document: the system over the ring named by its selector.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSystem {
    pub system: IdempotentSystem<BuiltinRing>,
    pub report: Option<VerificationReport>,
}

fn terms<R: CoefficientRing>(x: &AlgebraElement<R>) -> Terms {
    x.terms().map(|(a, c)| (a, x.ring().format_elem(c))).collect()
}

fn report_doc(report: &VerificationReport) -> ReportDoc {
    ReportDoc {
        passed: report.passed(),
        certificate: report.certificate.as_str().to_string(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckDoc {
                axiom: c.axiom.as_str().to_string(),
                passed: c.passed,
                witness: c.witness.clone(),
            })
            .collect(),
    }
}

pub fn system_doc<R: CoefficientRing>(
    system: &IdempotentSystem<R>,
    report: Option<&VerificationReport>,
) -> SystemDoc {
    SystemDoc {
        format_version: FORMAT_VERSION,
        monoid: MonoidDoc::from_monoid(system.host()),
        ring: system.ring().selector(),
        orientation: system.orientation().as_str().to_string(),
        generators: system.generators().members().to_vec(),
        elements: system
            .entries()
            .iter()
            .map(|e| ElementDoc {
                label: system.label(e),
                ring_idempotent: e.ring_idempotent,
                class: e.class,
                text: e.element.render(),
                terms: terms(&e.element),
            })
            .collect(),
        provenance: system
            .provenance()
            .iter()
            .map(|r| ClassDoc {
                representative: r.representative,
                class_size: r.class_size,
                a: r.a,
                b: r.b,
                t: terms(&r.t),
                q: terms(&r.q),
                e: terms(&r.e),
            })
            .collect(),
        report: report.map(report_doc),
    }
}

/// Pretty-printed JSON with a trailing newline. Output is a pure function of the input.
pub fn emit_system<R: CoefficientRing>(
    system: &IdempotentSystem<R>,
    report: Option<&VerificationReport>,
) -> String {
    let mut s = serde_json::to_string_pretty(&system_doc(system, report))
        .expect("document serializes");
    s.push('\n');
    s
}

/// Line and column of the first occurrence of `needle`, or (1, 1).
fn locate(text: &str, needle: &str) -> (usize, usize) {
    match text.find(needle) {
        Some(pos) => {
            let before = &text[..pos];
            let line = before.matches('\n').count() + 1;
            let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            (line, column)
        }
        None => (1, 1),
    }
}

struct Context<'a> {
    text: &'a str,
}

impl Context<'_> {
    fn error_at(&self, needle: &str, message: String) -> Error {
        let (line, column) = locate(self.text, needle);
        Error::parse(line, column, message)
    }

    fn element<R: CoefficientRing>(
        &self,
        host: &Arc<FiniteMonoid>,
        ring: &R,
        terms: &Terms,
        what: &str,
        anchor: &str,
    ) -> Result<AlgebraElement<R>> {
        let mut parsed = Vec::with_capacity(terms.len());
        let mut previous = None;
        for (a, c) in terms {
            if *a >= host.size() {
                return Err(self.error_at(anchor, format!("{what}: element index {a} out of range")));
            }
            if previous.is_some_and(|p| p >= *a) {
                return Err(self.error_at(anchor, format!("{what}: terms not in increasing index order")));
            }
            previous = Some(*a);
            let value = ring.parse_elem(c).ok_or_else(|| {
                self.error_at(
                    anchor,
                    format!("{what}: invalid coefficient {c:?} for ring {}", ring.selector()),
                )
            })?;
            if ring.is_zero(&value) {
                return Err(self.error_at(anchor, format!("{what}: explicit zero coefficient")));
            }
            parsed.push((*a, value));
        }
        AlgebraElement::from_terms(host.clone(), ring.clone(), parsed)
    }
}

fn check_doc(doc: &CheckDoc) -> Option<AxiomCheck> {
    Some(AxiomCheck {
        axiom: Axiom::parse(&doc.axiom)?,
        passed: doc.passed,
        witness: doc.witness.clone(),
    })
}

pub fn parse_system(text: &str) -> Result<ParsedSystem> {
    let doc: SystemDoc = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let cx = Context { text };
    if doc.format_version != FORMAT_VERSION {
        return Err(cx.error_at(
            "\"format_version\"",
            format!("unsupported format_version {}", doc.format_version),
        ));
    }
    let host = Arc::new(
        doc.monoid
            .to_monoid()
            .map_err(|e| cx.error_at("\"monoid\"", format!("monoid: {e}")))?,
    );
    let ring = BuiltinRing::parse(&doc.ring)
        .map_err(|e| cx.error_at("\"ring\"", format!("ring: {e}")))?;
    let orientation = Orientation::parse(&doc.orientation).ok_or_else(|| {
        cx.error_at("\"orientation\"", format!("unknown orientation {:?}", doc.orientation))
    })?;
    let generators = GeneratingSet::new(&host, doc.generators.iter().copied())
        .map_err(|e| cx.error_at("\"generators\"", format!("generators: {e}")))?;
    let working = match orientation {
        Orientation::RTrivial => host.clone(),
        Orientation::LTrivial => Arc::new(host.opposite()),
    };

    let q = ring.idempotent_system().len();
    let mut entries = Vec::with_capacity(doc.elements.len());
    let mut labelled = Vec::with_capacity(doc.elements.len());
    for e in &doc.elements {
        let anchor = format!("\"label\": \"{}\"", e.label);
        if e.ring_idempotent >= q {
            return Err(cx.error_at(
                &anchor,
                format!("element {}: ring idempotent {} out of range", e.label, e.ring_idempotent),
            ));
        }
        let element = cx.element(&host, &ring, &e.terms, &format!("element {}", e.label), &anchor)?;
        if element.render() != e.text {
            return Err(cx.error_at(
                &anchor,
                format!("element {}: text {:?} does not match its terms", e.label, e.text),
            ));
        }
        entries.push(SystemEntry {
            ring_idempotent: e.ring_idempotent,
            class: e.class,
            element,
        });
        labelled.push((anchor, e.label.clone()));
    }

    let mut provenance = Vec::with_capacity(doc.provenance.len());
    for (i, r) in doc.provenance.iter().enumerate() {
        let what = format!("provenance record {}", i + 1);
        let anchor = "\"provenance\"";
        if r.representative >= working.size() {
            return Err(cx.error_at(anchor, format!("{what}: representative out of range")));
        }
        provenance.push(ClassRecord {
            representative: r.representative,
            class_size: r.class_size,
            a: r.a,
            b: r.b,
            t: cx.element(&working, &Integers, &r.t, &what, anchor)?,
            q: cx.element(&working, &Integers, &r.q, &what, anchor)?,
            e: cx.element(&working, &Integers, &r.e, &what, anchor)?,
        });
    }

    let system = IdempotentSystem::from_parts(host, ring, orientation, generators, entries, provenance);
    for (entry, (anchor, label)) in system.entries().iter().zip(&labelled) {
        let expected = system.label(entry);
        if expected != *label {
            return Err(cx.error_at(anchor, format!("element {label}: label should be {expected}")));
        }
    }

    let report = doc
        .report
        .as_ref()
        .map(|r| {
            let certificate = Certificate::parse(&r.certificate);
            let checks: Option<Vec<AxiomCheck>> = r.checks.iter().map(check_doc).collect();
            match (certificate, checks) {
                (Some(certificate), Some(checks)) => Ok(VerificationReport { checks, certificate }),
                _ => Err(cx.error_at("\"report\"", "report: unknown axiom or certificate".into())),
            }
        })
        .transpose()?;
    Ok(ParsedSystem { system, report })
}
