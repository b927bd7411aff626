//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use monoid_idempotents::generator::{minimal_generating_set, GeneratedMonoid};
use monoid_idempotents::idempotents::{
    compute_cspoi_l_trivial, compute_cspoi_z, compute_cspoi_z_with, compute_t, extend_to_ring,
    gram_schmidt_q, verify, Certificate, ExponentSlack, IdempotentSystem,
};
use monoid_idempotents::loops::partition;
use monoid_idempotents::realization::{diagonal_by_element, psi, u_matrix};
use monoid_idempotents::ring::{BuiltinRing, CoefficientRing, Integers};
use monoid_idempotents::{AlgebraElement, FiniteMonoid, GeneratingSet};

const CORPUS: usize = 120;
const RINGS: [&str; 5] = ["Z/2", "Z/4", "Z/6", "Q", "ZxZ/2"];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(h: &Arc<FiniteMonoid>, terms: &[(usize, i64)]) -> AlgebraElement<Integers> {
    // 1-based element names as in the worked example
    let shifted: Vec<_> = terms.iter().map(|&(a, c)| (a - 1, c)).collect();
    AlgebraElement::from_int_terms(h.clone(), Integers, &shifted).unwrap()
}

fn example_reproduction() -> Outcome {
    let start = Instant::now();
    let h = example();
    let s = GeneratingSet::new(&h, [0, 1, 2]).map_err(|e| e.to_string())?;
    let p = partition(&h, &s).map_err(|e| e.to_string())?;
    ensure(p.classes() == [vec![0, 2], vec![1, 3, 4]], || format!("classes {:?}", p.classes()))?;
    ensure(p.class_sizes() == vec![2, 3], || format!("d = {:?}", p.class_sizes()))?;
    let t1 = compute_t(&h, &s, &p, 0);
    let t2 = compute_t(&h, &s, &p, 1);
    ensure(t1 == int(&h, &[(1, 1), (3, -1)]), || format!("T1 = {t1}"))?;
    ensure(t2 == int(&h, &[(2, 1)]), || format!("T2 = {t2}"))?;
    let sys = compute_cspoi_z(h.clone(), &s).map_err(|e| e.to_string())?;
    let e: Vec<_> = sys.elements().cloned().collect();
    ensure(e.len() == 2, || format!("{} idempotents", e.len()))?;
    ensure(e[0] == int(&h, &[(1, 1), (5, -1)]), || format!("E1 = {}", e[0]))?;
    ensure(e[1] == int(&h, &[(5, 1)]), || format!("E2 = {}", e[1]))?;
    let q2 = gram_schmidt_q(&t2, &e[..1]).map_err(|x| x.to_string())?;
    ensure(q2 == int(&h, &[(5, 1)]), || format!("Q2 = {q2}"))?;
    ensure(sys.provenance()[1].q == q2, || "recorded Q2 differs".into())?;
    ensure(e[0].render() == "1 - 5" && e[1].render() == "5", || "rendering".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("E1 = {}, E2 = {} in {elapsed:.2?}", e[0], e[1]))
}

fn example_identities() -> Outcome {
    let h = example();
    let x = int(&h, &[(1, 1), (3, -1)]);
    let cube = x.power(3);
    ensure(cube == int(&h, &[(1, 1), (3, -3), (5, 2)]), || format!("(1-3)^3 = {cube}"))?;
    let y = int(&h, &[(3, 3), (5, -2)]);
    let sq = y.mul(&y).map_err(|e| e.to_string())?;
    ensure(sq == int(&h, &[(5, 1)]), || format!("(3*3 - 2*5)^2 = {sq}"))?;
    Ok(format!("(1-3)^3 = {cube}, (3*3 - 2*5)^2 = {sq}"))
}

fn integral_suite(corpus: &[GeneratedMonoid]) -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for (k, g) in corpus.iter().enumerate() {
        let h = Arc::new(g.monoid.clone());
        ensure(h.size() <= 12, || format!("monoid {k} has {} elements", h.size()))?;
        let s = GeneratingSet::new(&h, g.generators.iter().copied()).map_err(|e| e.to_string())?;
        let sys = compute_cspoi_z(h.clone(), &s).map_err(|e| format!("monoid {k}: {e}"))?;
        let report = verify(&sys).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("monoid {k}: {}", report.render()))?;
        ensure(report.certificate == Certificate::IntegralSingleClass, || "certificate".into())?;
        let dense: Vec<_> = sys.elements().map(dense).collect();
        independent_axioms(&h, &Integers, &dense).map_err(|e| format!("monoid {k}: {e}"))?;
        // single-class diagonal straight from loop sets
        let classes = full_loop_partition(&h);
        ensure(classes.len() == sys.len(), || format!("monoid {k}: class count"))?;
        let loops = loop_sets(&h);
        let mut hit = vec![0usize; h.size()];
        for x in sys.elements() {
            let diag: Vec<BigInt> = h
                .elements()
                .map(|a| loops[a].iter().map(|&t| x.coefficient(t)).sum())
                .collect();
            let support: Vec<usize> = h.elements().filter(|&a| diag[a] != BigInt::from(0)).collect();
            ensure(support.iter().all(|&a| diag[a] == BigInt::from(1)), || {
                format!("monoid {k}: diagonal is not 0/1")
            })?;
            ensure(classes.contains(&support), || format!("monoid {k}: diagonal spans classes"))?;
            for a in support {
                hit[a] += 1;
            }
        }
        ensure(hit.iter().all(|&c| c == 1), || format!("monoid {k}: diagonals do not tile"))?;
        total += sys.len();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} monoids, {total} idempotents in {elapsed:.2?}", corpus.len()))
}

fn extension_suite(corpus: &[GeneratedMonoid]) -> Outcome {
    let z6 = BuiltinRing::parse("Z/6").unwrap();
    let expected: Vec<String> = brute_force_mod_idempotents(6).iter().map(u64::to_string).collect();
    let declared: Vec<String> = z6.idempotent_system().iter().map(|e| z6.format_elem(e)).collect();
    ensure(expected == ["3", "4"] && declared == expected, || {
        format!("Z/6 system {declared:?}, brute force {expected:?}")
    })?;
    let mut total = 0;
    for (k, g) in corpus.iter().enumerate() {
        let h = Arc::new(g.monoid.clone());
        let s = GeneratingSet::new(&h, g.generators.iter().copied()).unwrap();
        let sys = compute_cspoi_z(h.clone(), &s).map_err(|e| e.to_string())?;
        for sel in RINGS {
            let ring = BuiltinRing::parse(sel).unwrap();
            let q = ring.idempotent_system().len();
            let ext = extend_to_ring(&sys, ring.clone()).map_err(|e| e.to_string())?;
            ensure(ext.len() == q * sys.len(), || format!("monoid {k} over {sel}: size"))?;
            if sel == "Z/6" {
                ensure(ext.len() == 2 * sys.len(), || "Z/6 does not double".into())?;
            }
            let dense: Vec<_> = ext.elements().map(dense).collect();
            independent_axioms(&h, &ring, &dense).map_err(|e| format!("monoid {k} over {sel}: {e}"))?;
            let report = verify(&ext).map_err(|e| e.to_string())?;
            ensure(report.passed(), || format!("monoid {k} over {sel}: {}", report.render()))?;
            total += ext.len();
        }
    }
    Ok(format!(
        "{} monoids x {} rings, {total} elements",
        corpus.len(),
        RINGS.len()
    ))
}

fn random_element(
    h: &Arc<FiniteMonoid>,
    ring: &BuiltinRing,
    rng: &mut ChaCha8Rng,
) -> AlgebraElement<BuiltinRing> {
    let terms: Vec<_> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let a = rng.gen_range(0..h.size());
            (a, ring.sample(rng.gen_range(-3..=3), rng.gen_range(0..=3)))
        })
        .collect();
    AlgebraElement::from_terms(h.clone(), ring.clone(), terms).unwrap()
}

fn check_realization<R: CoefficientRing>(
    x: &AlgebraElement<R>,
    order: &[usize],
) -> Result<(), String> {
    let m = psi(x, order);
    ensure(m.is_upper_triangular(), || format!("psi({x}) not upper triangular"))?;
    let diag: Vec<R::Elem> = x.host().elements().map(|a| x.diagonal_entry(a)).collect();
    ensure(diagonal_by_element(&m, order) == diag, || format!("psi({x}) diagonal"))?;
    Ok(())
}

fn oracle_suite(corpus: &[GeneratedMonoid]) -> Outcome {
    let mut checked = 0;
    let h = example();
    let order = h.triangular_order().unwrap();
    let s = GeneratingSet::new(&h, [0, 1, 2]).unwrap();
    let sys = compute_cspoi_z(h.clone(), &s).unwrap();
    for x in sys.elements() {
        check_realization(x, &order)?;
        let m = psi(x, &order);
        ensure(m.mul(&m).unwrap() == m, || format!("psi({x}) not idempotent"))?;
        checked += 1;
    }
    for g in corpus {
        let h = Arc::new(g.monoid.clone());
        let order = h.triangular_order().unwrap();
        let s = GeneratingSet::new(&h, g.generators.iter().copied()).unwrap();
        let sys = compute_cspoi_z(h.clone(), &s).unwrap();
        for x in sys.elements() {
            check_realization(x, &order)?;
            let m = psi(x, &order);
            ensure(m.mul(&m).unwrap() == m, || format!("psi({x}) not idempotent"))?;
            checked += 1;
        }
        for sel in RINGS {
            let ext = extend_to_ring(&sys, BuiltinRing::parse(sel).unwrap()).unwrap();
            for x in ext.elements() {
                check_realization(x, &order)?;
                let m = psi(x, &order);
                ensure(m.mul(&m).unwrap() == m, || format!("psi({x}) over {sel} not idempotent"))?;
                checked += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pairs = 0;
    for (k, g) in corpus.iter().enumerate() {
        let h = Arc::new(g.monoid.clone());
        let order = h.triangular_order().unwrap();
        let s = GeneratingSet::new(&h, g.generators.iter().copied()).unwrap();
        let sys = compute_cspoi_z(h.clone(), &s).unwrap();
        for sel in ["Z", "Z/6", "Q", "ZxZ/2"] {
            let ring = BuiltinRing::parse(sel).unwrap();
            let ext = extend_to_ring(&sys, ring.clone()).unwrap();
            let produced: Vec<_> = ext.elements().cloned().collect();
            for _ in 0..3 {
                let x = if rng.gen_bool(0.5) {
                    produced[rng.gen_range(0..produced.len())].clone()
                } else {
                    random_element(&h, &ring, &mut rng)
                };
                let y = random_element(&h, &ring, &mut rng);
                let lhs = psi(&x.mul(&y).unwrap(), &order);
                let rhs = psi(&x, &order).mul(&psi(&y, &order)).unwrap();
                ensure(lhs == rhs, || format!("monoid {k} over {sel}: psi(xy) != psi(x)psi(y)"))?;
                check_realization(&x, &order)?;
                pairs += 1;
            }
        }
    }
    ensure(pairs >= 1000, || format!("only {pairs} pairs"))?;
    Ok(format!("{checked} produced elements, {pairs} homomorphism pairs"))
}

fn loop_type_invariance(corpus: &[GeneratedMonoid]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut distinct_sets = 0;
    for (k, g) in corpus.iter().enumerate() {
        let expected = full_loop_partition(&g.monoid);
        let all = GeneratingSet::all(&g.monoid);
        let minimal = minimal_generating_set(&g.monoid, &mut rng);
        if minimal != all {
            distinct_sets += 1;
        }
        for s in [&all, &minimal] {
            let p = partition(&g.monoid, s).map_err(|e| e.to_string())?;
            ensure(p.as_set_partition() == expected, || {
                format!("monoid {k}: partition under S = {:?} differs", s.members())
            })?;
        }
    }
    ensure(distinct_sets > 0, || "no monoid had a proper minimal generating set".into())?;
    Ok(format!(
        "{} monoids, {distinct_sets} with S != M",
        corpus.len()
    ))
}

fn lemma_properties(corpus: &[GeneratedMonoid]) -> Outcome {
    let mut products = 0;
    let mut triples = 0;
    for (k, g) in corpus.iter().enumerate() {
        let m = &g.monoid;
        let order = m.triangular_order().unwrap();
        let u: Vec<_> = m.elements().map(|s| u_matrix(m, &order, s, Integers)).collect();
        for a in m.elements() {
            for b in m.elements() {
                ensure(u[a].mul(&u[b]).unwrap() == u[m.mul(a, b)], || {
                    format!("monoid {k}: U_{a} U_{b} != U_{}", m.mul(a, b))
                })?;
                products += 1;
            }
        }
        let loops = loop_sets(m);
        for (s, l) in loops.iter().enumerate() {
            for t1 in m.elements() {
                for t2 in m.elements() {
                    let both = l.contains(&t1) && l.contains(&t2);
                    ensure(both == l.contains(&m.mul(t1, t2)), || {
                        format!("monoid {k}: loop set of {s} fails at ({t1}, {t2})")
                    })?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{products} matrix products, {triples} loop triples"))
}

fn l_trivial_pathway(corpus: &[GeneratedMonoid], extra: &[GeneratedMonoid]) -> Outcome {
    let mut count = 0;
    for (k, g) in corpus.iter().take(40).chain(extra).enumerate() {
        let host = Arc::new(g.monoid.opposite());
        let s = GeneratingSet::all(&host);
        let sys = compute_cspoi_l_trivial(host.clone(), &s).map_err(|e| format!("monoid {k}: {e}"))?;
        let report = verify(&sys).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("monoid {k}: {}", report.render()))?;
        let dense: Vec<_> = sys.elements().map(dense).collect();
        independent_axioms(&host, &Integers, &dense).map_err(|e| format!("monoid {k}: {e}"))?;
        count += 1;
    }
    ensure(count >= 20, || format!("only {count} monoids"))?;
    Ok(format!("{count} opposites, {} of them not R-trivial", extra.len()))
}

fn exponent_robustness(corpus: &[GeneratedMonoid]) -> Outcome {
    let slack = ExponentSlack {
        extra_a: 1,
        extra_b: 1,
    };
    let mut count = 0;
    for (k, g) in corpus.iter().take(40).enumerate() {
        let h = Arc::new(g.monoid.clone());
        let s = GeneratingSet::new(&h, g.generators.iter().copied()).unwrap();
        let base: IdempotentSystem<Integers> = compute_cspoi_z(h.clone(), &s).unwrap();
        let bumped = compute_cspoi_z_with(h.clone(), &s, slack).map_err(|e| e.to_string())?;
        let a: Vec<_> = base.elements().collect();
        let b: Vec<_> = bumped.elements().collect();
        ensure(a == b, || format!("monoid {k}: systems differ"))?;
        count += 1;
    }
    Ok(format!("{count} monoids with exponents (a+1, b+1)"))
}

fn main() {
    let corpus = catalan_corpus(CORPUS);
    let extra = non_l_trivial_corpus(10);
    let criteria: Vec<Criterion> = vec![
        ("worked example reproduced exactly", Box::new(example_reproduction)),
        ("worked example intermediate identities", Box::new(example_identities)),
        ("integral systems on generated monoids", Box::new(|| integral_suite(&corpus))),
        ("extension to Z/2, Z/4, Z/6, Q, ZxZ/2", Box::new(|| extension_suite(&corpus))),
        ("matrix realization oracle", Box::new(|| oracle_suite(&corpus))),
        ("loop-type invariance under generating sets", Box::new(|| loop_type_invariance(&corpus))),
        ("U products and loop-set multiplicativity", Box::new(|| lemma_properties(&corpus))),
        ("L-trivial pathway on opposites", Box::new(|| l_trivial_pathway(&corpus, &extra))),
        ("exponent robustness", Box::new(|| exponent_robustness(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
