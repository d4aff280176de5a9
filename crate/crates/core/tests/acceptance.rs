//! The acceptance gate: every shipping criterion in one place, one printed
//! pass/fail line per criterion. Run with `--nocapture` to see the table on
//! success; on failure the table prints along with the panic.

mod common;

use common::*;
use num::{BigInt, Signed, Zero};
use rstacked::enumerative::{
    binomial, dehn_sommerville_residuals, f_from_h, f_vector, h_from_f, is_m_vector,
    symmetry_and_duality_checks, VectorSuite,
};
use rstacked::generators;
use rstacked::homology::{betti_numbers, boundary_matrix, reduced_euler_characteristic};
use rstacked::manifold;
use rstacked::stackedness::{is_locally_stacked, is_stacked_closed, is_stacked_via_h, is_stacked_with_boundary, local_to_global};
use rstacked::{Face, SimplicialComplex};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

const CYCLIC_PAIRS: [(usize, usize); 5] = [(3, 5), (3, 7), (4, 7), (4, 9), (5, 11)];
const SIGN_PAIRS: [(usize, usize); 5] = [(4, 0), (4, 1), (4, 2), (5, 1), (6, 1)];

fn check(ok: bool, msg: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn bordered_fixtures() -> Vec<SimplicialComplex> {
    let mut out: Vec<SimplicialComplex> = Vec::new();
    for (d, n) in CYCLIC_PAIRS {
        out.push(kl(d, n));
    }
    for (d, i) in SIGN_PAIRS {
        out.push(kn(d, i));
    }
    out
}

fn closed_orientable_fixtures() -> Vec<SimplicialComplex> {
    let mut out: Vec<SimplicialComplex> = Vec::new();
    // d = 1 gives the two-point sphere, whose orientability verdict is None
    // (defined only for connected complexes), so the sweep starts at d = 2.
    for d in 2..=5usize {
        out.push(generators::simplex_boundary(d).unwrap());
        out.push(generators::cross_polytope(d).unwrap());
    }
    for (d, i) in SIGN_PAIRS {
        out.push(boundary_of(&kn(d, i), Q));
    }
    out.push(generators::join_boundaries(2, 2).unwrap());
    out
}

fn criterion_1() -> Result<String, String> {
    for (d, n) in CYCLIC_PAIRS {
        let c = kl(d, n);
        let suite = VectorSuite::compute(&c, Q).map_err(|e| e.to_string())?;
        let mut expected = vec![BigInt::zero(); d + 1];
        expected[0] = BigInt::from(1);
        expected[1] = BigInt::from((n - d) as i64);
        check(suite.h_double_prime == expected, &format!("h'' wrong at d={d} n={n}"))?;
        check(
            manifold::is_manifold_with_boundary(&c, Q).map_err(|e| e.to_string())?,
            &format!("not a manifold with boundary at d={d} n={n}"),
        )?;
        let by_def = is_stacked_with_boundary(&c, 1, Q).map_err(|e| e.to_string())?;
        let by_h = is_stacked_via_h(&c, 2, Q).map_err(|e| e.to_string())?;
        check(by_def.verdict && by_h.verdict, &format!("not 1-stacked at d={d} n={n}"))?;
    }
    Ok("h'' = (1, n-d, 0, ...) and 1-stacked both ways on all five pairs".into())
}

fn criterion_2() -> Result<String, String> {
    let c = kl(4, 7);
    let missing: Vec<Vec<usize>> = c.missing_faces().iter().map(|f| f.to_vec()).collect();
    check(missing.contains(&vec![1, 4, 7]), &format!("{{1,4,7}} not among {missing:?}"))?;
    Ok("the 7-vertex window complex has missing face {1,4,7}".into())
}

fn criterion_3() -> Result<String, String> {
    for (d, i) in SIGN_PAIRS {
        let c = kn(d, i);
        let suite = VectorSuite::compute(&c, Q).map_err(|e| e.to_string())?;
        for k in 0..=i {
            check(
                suite.h_double_prime[k] == binomial(d as i64, k as i64),
                &format!("h''_{k} != C({d},{k}) at d={d} i={i}"),
            )?;
        }
        check(
            suite.h_double_prime[i + 1].is_zero(),
            &format!("h''_{} nonzero at d={d} i={i}", i + 1),
        )?;
        check(
            is_stacked_with_boundary(&c, i, Q).map_err(|e| e.to_string())?.verdict,
            &format!("not {i}-stacked at d={d} i={i}"),
        )?;
        if i > 0 {
            check(
                !is_stacked_with_boundary(&c, i - 1, Q).map_err(|e| e.to_string())?.verdict,
                &format!("unexpectedly {}-stacked at d={d} i={i}", i - 1),
            )?;
        }
        let b = boundary_of(&c, Q);
        check(
            betti_vec(&b, Q) == sphere_product_betti(i, d - i - 2),
            &format!("boundary Betti wrong at d={d} i={i}"),
        )?;
    }
    Ok("h''_k = C(d,k), exact stacking level, sphere-product boundaries".into())
}

fn criterion_4() -> Result<String, String> {
    let mut fixtures = bordered_fixtures();
    let mut balls = 0;
    for d in 2..=4usize {
        for (j, n) in (d + 2..=d + 9).enumerate() {
            let sphere = generators::stacked_sphere(d, n, 500 + j as u64 + 17 * d as u64)
                .map_err(|e| e.to_string())?;
            let keep: Vec<Vec<usize>> =
                sphere.facets().iter().skip(1).map(|f| f.to_vec()).collect();
            fixtures.push(complex_of(sphere.n(), &keep));
            balls += 1;
        }
    }
    check(balls >= 20, "need at least 20 seeded balls")?;
    let mut comparisons = 0;
    for c in &fixtures {
        let d = (c.dim() + 1) as usize;
        for r in 1..=d {
            let by_def = is_stacked_with_boundary(c, r - 1, Q).map_err(|e| e.to_string())?;
            let by_h = is_stacked_via_h(c, r, Q).map_err(|e| e.to_string())?;
            check(
                by_def.verdict == by_h.verdict,
                &format!("interior-face and h'' criteria disagree at r={r}"),
            )?;
            comparisons += 1;
        }
    }
    Ok(format!("{comparisons} agreement checks across {} complexes", fixtures.len()))
}

fn criterion_5() -> Result<String, String> {
    let b61 = kn(6, 1);
    let boundary = boundary_of(&b61, Q);
    let rebuilt = boundary.delta_r(2).map_err(|e| e.to_string())?;
    check(facet_sets(&rebuilt) == facet_sets(&b61), "reconstruction differs")?;
    check(rebuilt.facets().len() == 12, "expected 12 facets")?;
    Ok("the boundary's r=2 candidate rebuilds the 12-facet sign complex".into())
}

fn criterion_6() -> Result<String, String> {
    let b61 = kn(6, 1);
    let boundary = boundary_of(&b61, Q);
    let verdict = local_to_global(&boundary, 2, Q).map_err(|e| e.to_string())?;
    check(verdict.verdict, "assembly failed")?;
    let sigma = verdict.witness.ok_or("no witness")?;
    check(facet_sets(&sigma) == facet_sets(&b61), "assembled complex differs")?;
    for v in boundary.vertices() {
        let dv = boundary
            .link(&Face::singleton(v))
            .map_err(|e| e.to_string())?
            .delta_r(1)
            .map_err(|e| e.to_string())?;
        let lk = sigma.link(&Face::singleton(v)).map_err(|e| e.to_string())?;
        check(
            library_faces(&lk) == library_faces(&dv),
            &format!("link mismatch at vertex {v}"),
        )?;
    }
    Ok("vertex-link assembly rebuilds the sign complex with matching links".into())
}

fn criterion_7() -> Result<String, String> {
    let j = generators::join_boundaries(2, 2).unwrap();
    check(
        manifold::is_homology_sphere(&j, Q).map_err(|e| e.to_string())?,
        "join is not a homology sphere",
    )?;
    let suite = VectorSuite::compute(&j, Q).map_err(|e| e.to_string())?;
    check(suite.h == big(&[1, 2, 3, 2, 1]), "h-vector wrong")?;
    check(
        is_locally_stacked(&j, 2, Q).map_err(|e| e.to_string())?.verdict,
        "should be locally stacked at r=2",
    )?;
    check(
        !is_stacked_closed(&j, 2, Q).map_err(|e| e.to_string())?.verdict,
        "should not be globally stacked at r=2",
    )?;
    let d1 = j.delta_r(1).map_err(|e| e.to_string())?;
    let total: usize = d1.f_vector().iter().sum();
    check(total == 64, "r=1 candidate should be the power set of [6]")?;
    Ok("locally stacked but not stacked; r=1 candidate is the full power set".into())
}

fn criterion_8() -> Result<String, String> {
    for c in bordered_fixtures() {
        let b = boundary_of(&c, Q);
        let ds = dehn_sommerville_residuals(&c, &b, Q).map_err(|e| e.to_string())?;
        check(ds.all_zero, "nonzero residual")?;
        check(
            ds.eq2_residuals.iter().all(|x| x.is_zero())
                && ds.eq3_residuals.iter().all(|x| x.is_zero()),
            "residual vector not identically zero",
        )?;
    }
    Ok("both residual families vanish on all ten bordered fixtures".into())
}

fn criterion_9() -> Result<String, String> {
    let c = kl(5, 11);
    let suite = VectorSuite::compute(&c, Q).map_err(|e| e.to_string())?;
    let b = boundary_of(&c, Q);
    let bsuite = VectorSuite::compute(&b, Q).map_err(|e| e.to_string())?;
    check(bsuite.g_tilde == big(&[1, 6, 0]), "g̃ of the boundary wrong")?;
    for i in 0..bsuite.g_tilde.len() {
        check(bsuite.g_tilde[i] == suite.h_double_prime[i], &format!("mismatch at i={i}"))?;
    }
    let c = kn(6, 1);
    let suite = VectorSuite::compute(&c, Q).map_err(|e| e.to_string())?;
    let b = boundary_of(&c, Q);
    let bsuite = VectorSuite::compute(&b, Q).map_err(|e| e.to_string())?;
    for i in 0..=2usize {
        check(bsuite.g_tilde[i] == suite.h_double_prime[i], &format!("mismatch at i={i}"))?;
    }
    Ok("g̃ of the boundary equals h'' of the interior on both fixtures".into())
}

fn criterion_10() -> Result<String, String> {
    let mut rational: Vec<SimplicialComplex> = Vec::new();
    for d in 1..=5usize {
        rational.push(generators::simplex_boundary(d).unwrap());
        rational.push(generators::cross_polytope(d).unwrap());
    }
    rational.push(boundary_of(&kn(4, 1), Q));
    rational.push(boundary_of(&kn(6, 1), Q));
    for c in rational {
        let report = symmetry_and_duality_checks(&c, Q).map_err(|e| e.to_string())?;
        check(report.all_hold, "identity failure over the rationals")?;
    }
    let b = boundary_of(&kl(4, 9), Q);
    let report = symmetry_and_duality_checks(&b, gf(2)).map_err(|e| e.to_string())?;
    check(report.all_hold, "identity failure over gf(2)")?;
    Ok("palindrome, complement, and duality identities hold on all fixtures".into())
}

fn criterion_11() -> Result<String, String> {
    for c in closed_orientable_fixtures() {
        let analysis = manifold::analyze(&c, Q).map_err(|e| e.to_string())?;
        check(analysis.is_closed_manifold(), "fixture not closed")?;
        // The connected-only verdict is None on the disconnected boundary
        // S^0 x S^2, so orientability is read from the top Betti numbers:
        // they agree across fields exactly when every component is orientable.
        let top = c.dim();
        check(
            betti_vec(&c, Q)[top as usize] == betti_vec(&c, gf(2))[top as usize],
            "fixture not orientable",
        )?;
        let suite = VectorSuite::compute(&c, Q).map_err(|e| e.to_string())?;
        let verdict = is_m_vector(&suite.g_tilde);
        check(verdict.is_m_vector, &format!("g̃ = {:?} fails the growth test", suite.g_tilde))?;
        check(suite.g_tilde.iter().all(|x| !x.is_negative()), "negative g̃ entry")?;
    }
    check(!is_m_vector(&big(&[1, 2, 4])).is_m_vector, "(1,2,4) must fail")?;
    check(!is_m_vector(&big(&[1, 0, 1])).is_m_vector, "(1,0,1) must fail")?;
    Ok("g̃ passes the growth test on every closed orientable fixture".into())
}

fn criterion_12() -> Result<String, String> {
    let mut fixtures = bordered_fixtures();
    fixtures.extend(closed_orientable_fixtures());
    let mut spheres = 0;
    'outer: for d in 2..=4usize {
        for n in d + 2..=12usize {
            for seed in [3u64, 59, 101] {
                if spheres >= 50 {
                    break 'outer;
                }
                fixtures.push(
                    generators::stacked_sphere(d, n, seed + spheres).map_err(|e| e.to_string())?,
                );
                spheres += 1;
            }
        }
    }
    check(spheres >= 50, "need at least 50 seeded spheres")?;
    for c in &fixtures {
        // Euler characteristic identity over two fields
        let chi = reduced_euler_characteristic(c);
        for field in [Q, gf(2)] {
            let b = betti_numbers(c, field).map_err(|e| e.to_string())?;
            check(b.alternating_sum() == chi, "Euler identity failed")?;
        }
        // boundary of boundary vanishes
        for k in 1..=c.dim() {
            let upper = boundary_matrix(c, k).map_err(|e| e.to_string())?;
            let lower = boundary_matrix(c, k - 1).map_err(|e| e.to_string())?;
            for col in &upper.entries {
                let mut acc = vec![0i64; lower.row_count().max(1)];
                for &(mid, sign) in col {
                    for &(row, inner) in &lower.entries[mid] {
                        acc[row] += i64::from(sign) * i64::from(inner);
                    }
                }
                check(acc.iter().all(|&x| x == 0), "boundary composition nonzero")?;
            }
        }
        // f <-> h round trip
        let d = (c.dim() + 1) as usize;
        let f = f_vector(c).map_err(|e| e.to_string())?;
        let h = h_from_f(&f, d).map_err(|e| e.to_string())?;
        check(f_from_h(&h) == f, "f/h round trip failed")?;
        // candidate nesting and missing-face duality
        let own = library_faces(c);
        let d2 = library_faces(&c.delta_r(2).map_err(|e| e.to_string())?);
        let d1c = c.delta_r(1).map_err(|e| e.to_string())?;
        let d1 = library_faces(&d1c);
        check(own.is_subset(&d2) && d2.is_subset(&d1), "candidate nesting failed")?;
        let missing: Vec<BTreeSet<usize>> = c.missing_faces().iter().map(face_to_set).collect();
        for t in &d1 {
            check(
                !missing.iter().any(|m| m.len() <= 2 && m.is_subset(t)),
                "missing-face duality failed",
            )?;
        }
    }
    Ok(format!("property suite holds on {} complexes ({spheres} seeded spheres)", fixtures.len()))
}

type Criterion = (&'static str, Option<Duration>, fn() -> Result<String, String>);

#[test]
fn acceptance_gate() {
    let criteria: Vec<Criterion> = vec![
        ("window-family h'' vectors and 1-stackedness", Some(Duration::from_secs(5)), criterion_1),
        ("missing face {1,4,7}", Some(Duration::from_secs(1)), criterion_2),
        ("sign-family h'' vectors and boundary products", Some(Duration::from_secs(60)), criterion_3),
        ("interior-face vs h'' criterion equivalence", None, criterion_4),
        ("unique reconstruction from the boundary", Some(Duration::from_secs(30)), criterion_5),
        ("local-to-global assembly", None, criterion_6),
        ("sharpness: locally stacked but not stacked", None, criterion_7),
        ("boundary relation residuals vanish", None, criterion_8),
        ("boundary g̃ equals interior h''", None, criterion_9),
        ("palindrome, complement, and duality identities", None, criterion_10),
        ("g̃ growth test on closed orientable fixtures", None, criterion_11),
        ("property suites incl. 50 seeded spheres", Some(Duration::from_secs(300)), criterion_12),
    ];
    let mut failures = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let within = budget.map_or(true, |b| elapsed <= b);
        match (result, within) {
            (Ok(detail), true) => {
                println!("criterion {:2} [PASS] ({:>7.2?}) {name}: {detail}", i + 1, elapsed);
            }
            (Ok(_), false) => {
                println!(
                    "criterion {:2} [FAIL] ({:>7.2?}) {name}: exceeded budget {:?}",
                    i + 1,
                    elapsed,
                    budget.unwrap()
                );
                failures.push(format!("{}: over budget", i + 1));
            }
            (Err(reason), _) => {
                println!("criterion {:2} [FAIL] ({:>7.2?}) {name}: {reason}", i + 1, elapsed);
                failures.push(format!("{}: {reason}", i + 1));
            }
        }
    }
    assert!(failures.is_empty(), "acceptance failures: {failures:?}");
}
