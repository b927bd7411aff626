//! Complete systems of primitive orthogonal idempotents for `RM`.
//!
//! Over the integers the construction runs class by class:
//!
//! 1. partition `M` into loop-type classes with representatives `s_1..s_p`
//!    and sizes `d_1..d_p`;
//! 2. form `T_i`, the product of the generators fixing `s_i` followed by
//!    `(e - k)` for every other generator `k`, whose diagonal is the indicator
//!    of class `i`;
//! 3. orthogonalize `T_m` against the earlier idempotents into `Q_m`, then set
//!    `E_m = e - (e - Q_m^a)^b` with `a = n - d_m`, `b = d_m`.
//!
//! Any other coefficient ring with a complete system `eps_1..eps_q` is then
//! handled by mapping integer coefficients into the ring and multiplying:
//! the `q * p` products `eps_i * E_j` form the system.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{lift, AlgebraElement};
use crate::error::{Error, Result};
use crate::loops::{partition, LoopTypePartition};
use crate::monoid::{FiniteMonoid, GeneratingSet};
use crate::ring::{check_idempotent_system, CoefficientRing, Integers};

type IntElement = AlgebraElement<Integers>;

/// Which triviality the host satisfies. For `LTrivial` hosts the
/// construction runs on the opposite monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    RTrivial,
    LTrivial,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::RTrivial => "r-trivial",
            Orientation::LTrivial => "l-trivial",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "r-trivial" => Some(Orientation::RTrivial),
            "l-trivial" => Some(Orientation::LTrivial),
            _ => None,
        }
    }
}

/// Intermediate data for one loop-type class, always over the integers and
/// over the monoid the construction actually ran on.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassRecord {
    pub representative: usize,
    pub class_size: usize,
    pub a: u64,
    pub b: u64,
    pub t: IntElement,
    pub q: IntElement,
    pub e: IntElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemEntry<R: CoefficientRing> {
    /// Index into the ring's idempotent system.
    pub ring_idempotent: usize,
    /// Loop-type class index.
    pub class: usize,
    pub element: AlgebraElement<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdempotentSystem<R: CoefficientRing> {
    host: Arc<FiniteMonoid>,
    ring: R,
    orientation: Orientation,
    generators: GeneratingSet,
    entries: Vec<SystemEntry<R>>,
    provenance: Vec<ClassRecord>,
}

impl<R: CoefficientRing> IdempotentSystem<R> {
    /// Assembles a system from parts, e.g. after deserialization. No axioms are checked.
    pub fn from_parts(
        host: Arc<FiniteMonoid>,
        ring: R,
        orientation: Orientation,
        generators: GeneratingSet,
        entries: Vec<SystemEntry<R>>,
        provenance: Vec<ClassRecord>,
    ) -> Self {
        IdempotentSystem {
            host,
            ring,
            orientation,
            generators,
            entries,
            provenance,
        }
    }

    pub fn host(&self) -> &Arc<FiniteMonoid> {
        &self.host
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn generators(&self) -> &GeneratingSet {
        &self.generators
    }

    pub fn entries(&self) -> &[SystemEntry<R>] {
        &self.entries
    }

    pub fn elements(&self) -> impl Iterator<Item = &AlgebraElement<R>> {
        self.entries.iter().map(|e| &e.element)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn provenance(&self) -> &[ClassRecord] {
        &self.provenance
    }

    /// The monoid whose matrix realization certifies primitivity: the host
    /// itself, or its opposite for L-trivial hosts.
    pub fn working_monoid(&self) -> Arc<FiniteMonoid> {
        match self.orientation {
            Orientation::RTrivial => self.host.clone(),
            Orientation::LTrivial => Arc::new(self.host.opposite()),
        }
    }

    /// `E3` when the ring's system has one element, `eps2*E3` otherwise.
    pub fn label(&self, entry: &SystemEntry<R>) -> String {
        if self.ring.idempotent_system().len() == 1 {
            format!("E{}", entry.class + 1)
        } else {
            format!("eps{}*E{}", entry.ring_idempotent + 1, entry.class + 1)
        }
    }

    pub fn replace_entries(&mut self, entries: Vec<SystemEntry<R>>) {
        self.entries = entries;
    }
}

/// Slack added to the minimal exponents `a = n - d`, `b = d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExponentSlack {
    pub extra_a: u64,
    pub extra_b: u64,
}

/// `T_i`: loop factors in ascending order, then `(e - k)` for the remaining
/// generators in ascending order.
pub fn compute_t(
    host: &Arc<FiniteMonoid>,
    generators: &GeneratingSet,
    classes: &LoopTypePartition,
    i: usize,
) -> IntElement {
    let loops = classes.restricted_loop_set(i);
    let unit = IntElement::unit(host.clone(), Integers);
    let mut t = unit.clone();
    for &g in loops {
        t = t
            .mul(&IntElement::basis(host.clone(), Integers, g))
            .expect("same algebra");
    }
    for &g in generators.members().iter().filter(|g| !loops.contains(g)) {
        let factor = unit
            .sub(&IntElement::basis(host.clone(), Integers, g))
            .expect("same algebra");
        t = t.mul(&factor).expect("same algebra");
    }
    t
}

/// `Q = T - sum T E_i - sum E_i T + sum E_i T E_j`, evaluated as
/// `(e - F) T (e - F)` with `F = sum E_i`.
pub fn gram_schmidt_q<R: CoefficientRing>(
    t: &AlgebraElement<R>,
    established: &[AlgebraElement<R>],
) -> Result<AlgebraElement<R>> {
    let host = t.host();
    for (i, e) in established.iter().enumerate() {
        if e.mul(e)? != *e {
            return Err(Error::PreconditionViolated(format!(
                "established element {} is not idempotent",
                i + 1
            )));
        }
        for (j, f) in established.iter().enumerate() {
            if i != j && !e.mul(f)?.is_zero() {
                return Err(Error::PreconditionViolated(format!(
                    "established elements {} and {} are not orthogonal",
                    i + 1,
                    j + 1
                )));
            }
        }
        let te = t.mul(e)?;
        if let Some(a) = host
            .elements()
            .find(|&a| !t.ring().is_zero(&te.diagonal_entry(a)))
        {
            return Err(Error::PreconditionViolated(format!(
                "T * E{} has a nonzero diagonal entry at {}",
                i + 1,
                host.name(a)
            )));
        }
    }
    let unit = AlgebraElement::unit(host.clone(), t.ring().clone());
    let mut sum = AlgebraElement::zero(host.clone(), t.ring().clone());
    for e in established {
        sum = sum.add(e)?;
    }
    let complement = unit.sub(&sum)?;
    complement.mul(t)?.mul(&complement)
}

/// The integer system for an R-trivial monoid.
pub fn compute_cspoi_z(
    host: Arc<FiniteMonoid>,
    generators: &GeneratingSet,
) -> Result<IdempotentSystem<Integers>> {
    compute_cspoi_z_with(host, generators, ExponentSlack::default())
}

pub fn compute_cspoi_z_with(
    host: Arc<FiniteMonoid>,
    generators: &GeneratingSet,
    slack: ExponentSlack,
) -> Result<IdempotentSystem<Integers>> {
    let classes = partition(&host, generators)?;
    let (entries, provenance) = run_construction(&host, generators, &classes, slack)?;
    Ok(IdempotentSystem {
        host,
        ring: Integers,
        orientation: Orientation::RTrivial,
        generators: generators.clone(),
        entries,
        provenance,
    })
}

fn run_construction(
    host: &Arc<FiniteMonoid>,
    generators: &GeneratingSet,
    classes: &LoopTypePartition,
    slack: ExponentSlack,
) -> Result<(Vec<SystemEntry<Integers>>, Vec<ClassRecord>)> {
    let n = host.size() as u64;
    let unit = IntElement::unit(host.clone(), Integers);
    let mut established: Vec<IntElement> = Vec::with_capacity(classes.len());
    let mut provenance = Vec::with_capacity(classes.len());

    for i in 0..classes.len() {
        let d = classes.class_size(i) as u64;
        let a = n - d + slack.extra_a;
        let b = d + slack.extra_b;
        let t = compute_t(host, generators, classes, i);
        let (q, e) = if classes.len() == 1 {
            // a single class covers M, and the only idempotent with an all-ones diagonal is e
            (t.clone(), unit.clone())
        } else {
            let q = gram_schmidt_q(&t, &established)?;
            let e = q.p_map(a, b);
            (q, e)
        };
        check_indicator_profile(&e, classes, i)?;
        provenance.push(ClassRecord {
            representative: classes.representative(i),
            class_size: d as usize,
            a,
            b,
            t,
            q,
            e: e.clone(),
        });
        established.push(e);
    }

    let entries = established
        .into_iter()
        .enumerate()
        .map(|(class, element)| SystemEntry {
            ring_idempotent: 0,
            class,
            element,
        })
        .collect();
    Ok((entries, provenance))
}

fn check_indicator_profile(e: &IntElement, classes: &LoopTypePartition, i: usize) -> Result<()> {
    let profile = e.diagonal_profile(classes)?;
    let expected: Vec<BigInt> = (0..classes.len())
        .map(|j| if j == i { BigInt::one() } else { BigInt::zero() })
        .collect();
    if profile != expected {
        return Err(Error::InternalInconsistency(format!(
            "E{} does not have the indicator diagonal of its class",
            i + 1
        )));
    }
    Ok(())
}

/// The integer system for an L-trivial monoid, computed on the opposite
/// monoid and read back as coefficient vectors over `host`.
pub fn compute_cspoi_l_trivial(
    host: Arc<FiniteMonoid>,
    generators: &GeneratingSet,
) -> Result<IdempotentSystem<Integers>> {
    host.require_l_trivial()?;
    let opposite = Arc::new(host.opposite());
    let classes = partition(&opposite, generators)?;
    let (entries, provenance) =
        run_construction(&opposite, generators, &classes, ExponentSlack::default())?;
    let entries = entries
        .into_iter()
        .map(|entry| {
            Ok(SystemEntry {
                element: entry.element.rehost(host.clone())?,
                ..entry
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdempotentSystem {
        host,
        ring: Integers,
        orientation: Orientation::LTrivial,
        generators: generators.clone(),
        entries,
        provenance,
    })
}

/// `eps_i * E_j` for every declared idempotent `eps_i` of `ring` (outer
/// loop) and every integer idempotent `E_j` (inner loop).
pub fn extend_to_ring<R: CoefficientRing>(
    system: &IdempotentSystem<Integers>,
    ring: R,
) -> Result<IdempotentSystem<R>> {
    check_idempotent_system(&ring).map_err(Error::RingRejected)?;
    if system
        .entries
        .iter()
        .any(|entry| entry.ring_idempotent != 0)
    {
        return Err(Error::PreconditionViolated(
            "input must be an integer system with one entry per class".into(),
        ));
    }
    let lifted: Vec<AlgebraElement<R>> = system
        .entries
        .iter()
        .map(|entry| lift(&entry.element, ring.clone()))
        .collect();
    let mut entries = Vec::new();
    for (i, eps) in ring.idempotent_system().iter().enumerate() {
        for (entry, element) in system.entries.iter().zip(&lifted) {
            entries.push(SystemEntry {
                ring_idempotent: i,
                class: entry.class,
                element: element.scalar_mul_left(eps),
            });
        }
    }
    Ok(IdempotentSystem {
        host: system.host.clone(),
        ring,
        orientation: system.orientation,
        generators: system.generators.clone(),
        entries,
        provenance: system.provenance.clone(),
    })
}

/// Full pipeline: integer system for the host's orientation, then extension to `ring`.
pub fn compute_cspoi<R: CoefficientRing>(
    host: Arc<FiniteMonoid>,
    generators: &GeneratingSet,
    ring: R,
    orientation: Orientation,
) -> Result<IdempotentSystem<R>> {
    let integral = match orientation {
        Orientation::RTrivial => compute_cspoi_z(host, generators)?,
        Orientation::LTrivial => compute_cspoi_l_trivial(host, generators)?,
    };
    extend_to_ring(&integral, ring)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Nonzero,
    Idempotent,
    Orthogonal,
    Complete,
    Primitive,
}

impl Axiom {
    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Nonzero => "nonzero",
            Axiom::Idempotent => "idempotent",
            Axiom::Orthogonal => "orthogonal",
            Axiom::Complete => "complete",
            Axiom::Primitive => "primitive",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.as_str() == s)
    }

    pub const ALL: [Axiom; 5] = [
        Axiom::Nonzero,
        Axiom::Idempotent,
        Axiom::Orthogonal,
        Axiom::Complete,
        Axiom::Primitive,
    ];
}

/// Which sufficient condition backs the primitivity verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// Each element's diagonal is `1` on exactly one loop-type class and `0` elsewhere.
    IntegralSingleClass,
    /// Each element's diagonal is a declared primitive idempotent of the ring
    /// on exactly one class and `0` elsewhere, with the ring's system validated.
    ExtendedSingleClass,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::IntegralSingleClass => "single-class-diagonal",
            Certificate::ExtendedSingleClass => "ring-idempotent-single-class-diagonal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Certificate::IntegralSingleClass, Certificate::ExtendedSingleClass]
            .into_iter()
            .find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<AxiomCheck>,
    pub certificate: Certificate,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is reported")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<11} {}",
                c.axiom.as_str(),
                if c.passed { "pass" } else { "FAIL" }
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!(" ({w})"));
            }
            out.push('\n');
        }
        out.push_str(&format!("certificate {}\n", self.certificate.as_str()));
        out
    }
}

fn outcome(axiom: Axiom, witness: Option<String>) -> AxiomCheck {
    AxiomCheck {
        axiom,
        passed: witness.is_none(),
        witness,
    }
}

/// Checks the four axioms with exact arithmetic. Products are taken in the
/// host's own multiplication; primitivity is certified on the realization of
/// the working monoid, whose loop-type partition is `classes`.
pub fn verify_cspoi<R: CoefficientRing>(
    system: &IdempotentSystem<R>,
    classes: &LoopTypePartition,
) -> VerificationReport {
    let ring = &system.ring;
    let labels: Vec<String> = system.entries.iter().map(|e| system.label(e)).collect();
    let elements: Vec<&AlgebraElement<R>> = system.elements().collect();

    let nonzero = elements
        .iter()
        .position(|x| x.is_zero())
        .map(|i| format!("{} = 0", labels[i]));

    let idempotent = elements.iter().enumerate().find_map(|(i, x)| match x.mul(x) {
        Ok(sq) if sq == **x => None,
        Ok(sq) => Some(format!("{}^2 = {} != {}", labels[i], sq, x)),
        Err(err) => Some(format!("{}: {err}", labels[i])),
    });

    let mut orthogonal = None;
    'outer: for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            if i == j {
                continue;
            }
            match x.mul(y) {
                Ok(p) if p.is_zero() => {}
                Ok(p) => {
                    orthogonal = Some(format!("{} * {} = {}", labels[i], labels[j], p));
                    break 'outer;
                }
                Err(err) => {
                    orthogonal = Some(format!("{} * {}: {err}", labels[i], labels[j]));
                    break 'outer;
                }
            }
        }
    }

    let unit = AlgebraElement::unit(system.host.clone(), ring.clone());
    let complete = elements
        .iter()
        .try_fold(AlgebraElement::zero(system.host.clone(), ring.clone()), |acc, x| acc.add(x))
        .map_or_else(
            |err| Some(err.to_string()),
            |sum| (sum != unit).then(|| format!("sum = {sum}")),
        );

    let (primitive, certificate) = primitivity_certificate(system, classes, &labels);

    VerificationReport {
        checks: vec![
            outcome(Axiom::Nonzero, nonzero),
            outcome(Axiom::Idempotent, idempotent),
            outcome(Axiom::Orthogonal, orthogonal),
            outcome(Axiom::Complete, complete),
            outcome(Axiom::Primitive, primitive),
        ],
        certificate,
    }
}

fn primitivity_certificate<R: CoefficientRing>(
    system: &IdempotentSystem<R>,
    classes: &LoopTypePartition,
    labels: &[String],
) -> (Option<String>, Certificate) {
    let ring = &system.ring;
    let declared = ring.idempotent_system();
    let certificate = if declared.len() == 1 && declared[0] == ring.one() {
        Certificate::IntegralSingleClass
    } else {
        Certificate::ExtendedSingleClass
    };
    if let Err(e) = check_idempotent_system(ring) {
        return (Some(format!("ring idempotent system invalid: {e}")), certificate);
    }
    let working = system.working_monoid();
    if working.size() != classes.classes().iter().map(Vec::len).sum::<usize>() {
        return (
            Some("partition does not cover the working monoid".into()),
            certificate,
        );
    }
    if let Err(e) = working.require_r_trivial() {
        return (Some(e.to_string()), certificate);
    }
    for (label, x) in labels.iter().zip(system.elements()) {
        let profile = match x.rehost(working.clone()).and_then(|y| y.diagonal_profile(classes)) {
            Ok(p) => p,
            Err(e) => return (Some(format!("{label}: {e}")), certificate),
        };
        let support: Vec<usize> = (0..profile.len())
            .filter(|&j| !ring.is_zero(&profile[j]))
            .collect();
        match support.as_slice() {
            [j] if declared.contains(&profile[*j]) => {}
            [j] => {
                return (
                    Some(format!(
                        "{label}: diagonal value {} on class {} is not a declared primitive idempotent",
                        ring.format_elem(&profile[*j]),
                        j + 1
                    )),
                    certificate,
                )
            }
            [] => return (Some(format!("{label}: diagonal vanishes")), certificate),
            many => {
                return (
                    Some(format!(
                        "{label}: diagonal is nonzero on {} loop-type classes",
                        many.len()
                    )),
                    certificate,
                )
            }
        }
    }
    (None, certificate)
}

/// [`verify_cspoi`] with the partition computed from the working monoid.
pub fn verify<R: CoefficientRing>(system: &IdempotentSystem<R>) -> Result<VerificationReport> {
    let working = system.working_monoid();
    let classes = partition(&working, &GeneratingSet::all(&working))?;
    Ok(verify_cspoi(system, &classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::tests::example;
    use crate::ring::{parse_ring, BuiltinRing, IntegersMod};

    fn host() -> Arc<FiniteMonoid> {
        Arc::new(example())
    }

    fn z(h: &Arc<FiniteMonoid>, terms: &[(usize, i64)]) -> IntElement {
        let shifted: Vec<_> = terms.iter().map(|&(a, c)| (a - 1, c)).collect();
        IntElement::from_int_terms(h.clone(), Integers, &shifted).unwrap()
    }

    fn example_system() -> IdempotentSystem<Integers> {
        let h = host();
        let s = GeneratingSet::new(&h, [0, 1, 2]).unwrap();
        compute_cspoi_z(h, &s).unwrap()
    }

    fn idempotent_pair() -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap())
    }

    #[test]
    fn t_elements_of_example() {
        let h = host();
        let s = GeneratingSet::new(&h, [0, 1, 2]).unwrap();
        let classes = partition(&h, &s).unwrap();
        assert_eq!(compute_t(&h, &s, &classes, 0), z(&h, &[(1, 1), (3, -1)]));
        assert_eq!(compute_t(&h, &s, &classes, 1), z(&h, &[(2, 1)]));
        let t = Arc::new(FiniteMonoid::trivial());
        let all = GeneratingSet::all(&t);
        let c = partition(&t, &all).unwrap();
        assert_eq!(compute_t(&t, &all, &c, 0), IntElement::unit(t.clone(), Integers));
    }

    #[test]
    fn q_examples() {
        let h = host();
        let e1 = z(&h, &[(1, 1), (5, -1)]);
        let t2 = z(&h, &[(2, 1)]);
        assert_eq!(gram_schmidt_q(&t2, &[e1]).unwrap(), z(&h, &[(5, 1)]));
        assert_eq!(gram_schmidt_q(&t2, &[]).unwrap(), t2);

        let m = idempotent_pair();
        let a = IntElement::basis(m.clone(), Integers, 1);
        let e_minus_a = IntElement::unit(m.clone(), Integers).sub(&a).unwrap();
        assert_eq!(gram_schmidt_q(&a, &[e_minus_a]).unwrap(), a);
    }

    #[test]
    fn q_matches_the_four_term_formula() {
        let h = host();
        let t = z(&h, &[(2, 1), (3, 2), (4, -1)]);
        let established = [z(&h, &[(1, 1), (5, -1)]), z(&h, &[(5, 1)])];
        let mut literal = t.clone();
        for e in &established {
            literal = literal.sub(&t.mul(e).unwrap()).unwrap();
            literal = literal.sub(&e.mul(&t).unwrap()).unwrap();
        }
        for ei in &established {
            for ej in &established {
                literal = literal.add(&ei.mul(&t).unwrap().mul(ej).unwrap()).unwrap();
            }
        }
        // the diagonal precondition fails here, so compare the closed form directly
        let unit = IntElement::unit(h.clone(), Integers);
        let f = established[0].add(&established[1]).unwrap();
        let c = unit.sub(&f).unwrap();
        assert_eq!(c.mul(&t).unwrap().mul(&c).unwrap(), literal);
        assert!(matches!(
            gram_schmidt_q(&t, &established),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn q_rejects_non_orthogonal_established() {
        let h = host();
        let e1 = z(&h, &[(1, 1), (5, -1)]);
        assert!(matches!(
            gram_schmidt_q(&z(&h, &[(5, 1)]), &[e1.clone(), e1]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn example_system_matches_worked_example() {
        let h = host();
        let sys = example_system();
        let elements: Vec<_> = sys.elements().cloned().collect();
        assert_eq!(elements, vec![z(&h, &[(1, 1), (5, -1)]), z(&h, &[(5, 1)])]);
        let p = sys.provenance();
        assert_eq!((p[0].a, p[0].b), (3, 2));
        assert_eq!((p[1].a, p[1].b), (2, 3));
        assert_eq!(p[1].q, z(&h, &[(5, 1)]));
        assert_eq!(p[0].q, p[0].t);
        assert!(verify(&sys).unwrap().passed());
    }

    #[test]
    fn small_systems() {
        let t = Arc::new(FiniteMonoid::trivial());
        let sys = compute_cspoi_z(t.clone(), &GeneratingSet::all(&t)).unwrap();
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.entries()[0].element, IntElement::unit(t, Integers));

        let m = idempotent_pair();
        let s = GeneratingSet::new(&m, [1]).unwrap();
        let sys = compute_cspoi_z(m.clone(), &s).unwrap();
        let a = IntElement::basis(m.clone(), Integers, 1);
        let e = IntElement::unit(m, Integers);
        let got: Vec<_> = sys.elements().cloned().collect();
        assert_eq!(got, vec![e.sub(&a).unwrap(), a]);
        assert!(verify(&sys).unwrap().passed());
    }

    #[test]
    fn rejects_non_r_trivial_and_non_generating() {
        let z2 = Arc::new(FiniteMonoid::new(vec![vec![0, 1], vec![1, 0]], 0).unwrap());
        let all = GeneratingSet::all(&z2);
        assert_eq!(compute_cspoi_z(z2.clone(), &all), Err(Error::NotRTrivial(0, 1)));
        assert_eq!(compute_cspoi_l_trivial(z2, &all), Err(Error::NotLTrivial(0, 1)));
        let h = host();
        let not_gen = GeneratingSet::new(&h, [0, 1, 2]).map(|_| ()).and_then(|_| {
            GeneratingSet::new(&Arc::new(FiniteMonoid::trivial()), [0])
        });
        assert!(compute_cspoi_z(h, &not_gen.unwrap()).is_err());
    }

    #[test]
    fn tampered_systems_fail_verification() {
        let sys = example_system();
        let h = sys.host().clone();
        let sum = sys.entries()[0]
            .element
            .add(&sys.entries()[1].element)
            .unwrap();
        let mut merged = sys.clone();
        merged.replace_entries(vec![SystemEntry {
            ring_idempotent: 0,
            class: 0,
            element: sum,
        }]);
        let report = verify(&merged).unwrap();
        assert!(report.check(Axiom::Complete).passed);
        assert!(report.check(Axiom::Idempotent).passed);
        assert!(!report.check(Axiom::Primitive).passed);

        let mut duplicated = sys.clone();
        let mut entries = sys.entries().to_vec();
        entries.push(entries[1].clone());
        duplicated.replace_entries(entries);
        let report = verify(&duplicated).unwrap();
        let orth = report.check(Axiom::Orthogonal);
        assert!(!orth.passed);
        assert!(orth.witness.as_deref().unwrap().contains("E2 * E2"));
        assert!(!report.check(Axiom::Complete).passed);

        let mut with_zero = sys.clone();
        let mut entries = sys.entries().to_vec();
        entries.push(SystemEntry {
            ring_idempotent: 0,
            class: 1,
            element: IntElement::zero(h, Integers),
        });
        with_zero.replace_entries(entries);
        assert!(!verify(&with_zero).unwrap().check(Axiom::Nonzero).passed);
    }

    #[test]
    fn extension_examples() {
        let sys = example_system();
        for sel in ["Q", "Z/5", "Z/4"] {
            let ext = extend_to_ring(&sys, parse_ring(sel).unwrap()).unwrap();
            assert_eq!(ext.len(), 2, "{sel}");
            let report = verify(&ext).unwrap();
            assert!(report.passed(), "{sel}: {}", report.render());
            assert_eq!(report.certificate, Certificate::IntegralSingleClass);
        }

        let z6 = parse_ring("Z/6").unwrap();
        let ext = extend_to_ring(&sys, z6.clone()).unwrap();
        let rendered: Vec<String> = ext.elements().map(|x| x.render()).collect();
        assert_eq!(rendered, vec!["3*1 + 3*5", "3*5", "4*1 + 2*5", "4*5"]);
        let labels: Vec<String> = ext.entries().iter().map(|e| ext.label(e)).collect();
        assert_eq!(labels, vec!["eps1*E1", "eps1*E2", "eps2*E1", "eps2*E2"]);
        let report = verify(&ext).unwrap();
        assert!(report.passed(), "{}", report.render());
        assert_eq!(report.certificate, Certificate::ExtendedSingleClass);

        let z2 = BuiltinRing::Modular(IntegersMod::new(2).unwrap());
        let ext = extend_to_ring(&sys, z2).unwrap();
        let rendered: Vec<String> = ext.elements().map(|x| x.render()).collect();
        assert_eq!(rendered, vec!["1 + 5", "5"]);
    }

    #[test]
    fn extension_rejects_bad_rings() {
        #[derive(Debug, Clone, PartialEq)]
        struct Doubled;
        impl CoefficientRing for Doubled {
            type Elem = BigInt;
            fn zero(&self) -> BigInt {
                BigInt::zero()
            }
            fn one(&self) -> BigInt {
                BigInt::one()
            }
            fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
                a + b
            }
            fn neg(&self, a: &BigInt) -> BigInt {
                -a
            }
            fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
                a * b
            }
            fn from_integer(&self, z: &BigInt) -> BigInt {
                z.clone()
            }
            fn idempotent_system(&self) -> Vec<BigInt> {
                vec![BigInt::from(2)]
            }
            fn is_commutative(&self) -> bool {
                true
            }
            fn selector(&self) -> String {
                "Z?".into()
            }
            fn format_elem(&self, a: &BigInt) -> String {
                a.to_string()
            }
            fn parse_elem(&self, s: &str) -> Option<BigInt> {
                s.parse().ok()
            }
        }
        assert!(matches!(
            extend_to_ring(&example_system(), Doubled),
            Err(Error::RingRejected(_))
        ));
    }

    #[test]
    fn l_trivial_pathway() {
        let m = Arc::new(example().opposite());
        assert!(compute_cspoi_z(m.clone(), &GeneratingSet::all(&m)).is_err());
        let sys = compute_cspoi_l_trivial(m.clone(), &GeneratingSet::all(&m)).unwrap();
        assert_eq!(sys.orientation(), Orientation::LTrivial);
        let report = verify(&sys).unwrap();
        assert!(report.passed(), "{}", report.render());
        // commutative, R-trivial hosts give the same answer either way
        let pair = idempotent_pair();
        let s = GeneratingSet::all(&pair);
        let right: Vec<_> = compute_cspoi_z(pair.clone(), &s).unwrap().elements().cloned().collect();
        let left: Vec<_> = compute_cspoi_l_trivial(pair, &s).unwrap().elements().cloned().collect();
        assert_eq!(right, left);
    }

    #[test]
    fn exponent_slack_does_not_change_the_system() {
        let h = host();
        let s = GeneratingSet::new(&h, [0, 1, 2]).unwrap();
        let base = compute_cspoi_z(h.clone(), &s).unwrap();
        let slack = ExponentSlack {
            extra_a: 1,
            extra_b: 1,
        };
        let shifted = compute_cspoi_z_with(h, &s, slack).unwrap();
        assert_eq!(base.entries(), shifted.entries());
    }
}
