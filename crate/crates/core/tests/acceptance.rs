//! Acceptance suite. Runs every criterion, prints one line each and exits
//! nonzero if any failed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tjl_core::adelic::{int_mat_mul, left_translation_matrix, Factorizer, HeckeOperator, SearchBounds};
use tjl_core::census::IrrepsReport;
use tjl_core::cyclo::CycNumber;
use tjl_core::finite_field::{parse_poly, Poly};
use tjl_core::group::GroupParams;
use tjl_core::quaternion::{ramification_certificate, AlgebraParams, OrderElement};
use tjl_core::reps::CharacterTable;
use tjl_core::roundtrip::round_trips;
use tjl_core::spectral::{with_threads, SpectralContext, SpectralReport};
use tjl_core::tame::{expected_irreducible_count, TameReport};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn census_groups() -> Vec<GroupParams> {
    let mut out = vec![];
    for q in [2u32, 3, 4, 5] {
        for n in 1..=3u32 {
            for level in 1..=2u32 {
                if q.pow(n) - 1 <= 124 {
                    out.push(GroupParams::new(q, n, level).unwrap());
                }
            }
        }
    }
    out
}

fn census() -> Outcome {
    let mut slowest = Duration::ZERO;
    let groups = census_groups();
    for g in &groups {
        let start = Instant::now();
        let r = IrrepsReport::compute(g).map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
        let expected = (g.n * g.level * g.field_order()) as usize;
        check(r.sum_of_squares == expected, || format!("{g:?}: Σ dim² = {} ≠ {expected}", r.sum_of_squares))?;
        check(r.irrep_count == r.class_count, || {
            format!("{g:?}: {} irreps vs {} classes", r.irrep_count, r.class_count)
        })?;
        check(r.orthonormal, || format!("{g:?}: characters not orthonormal"))?;
    }
    check(slowest <= Duration::from_secs(10), || format!("slowest group took {slowest:?}"))?;
    Ok(format!("{} groups, slowest {:.2?}", groups.len(), slowest))
}

fn multiplicities() -> Outcome {
    let mut irreps = 0;
    for g in census_groups() {
        let r = IrrepsReport::compute(&g).map_err(|e| e.to_string())?;
        for m in &r.multiplicities {
            irreps += 1;
            check(m.max_multiplicity <= 1, || format!("{g:?} {:?}: multiplicity {}", m.label, m.max_multiplicity))?;
            check(m.total as usize == m.label.dim(), || format!("{g:?} {:?}: Σ = {}", m.label, m.total))?;
            check(m.support == m.label.orbit.members(), || format!("{g:?} {:?}: support {:?}", m.label, m.support))?;
        }
    }
    Ok(format!("{irreps} irreps, every multiplicity in {{0,1}}"))
}

fn symmetric_group_table() -> Outcome {
    let table = CharacterTable::compute(&GroupParams::new(2, 2, 1).unwrap()).map_err(|e| e.to_string())?;
    let mut order: Vec<usize> = (0..table.classes.len()).collect();
    order.sort_by_key(|&i| table.classes[i].size);
    let sizes: Vec<usize> = order.iter().map(|&i| table.classes[i].size).collect();
    check(sizes == [1, 2, 3], || format!("class sizes {sizes:?}"))?;
    let rows: BTreeSet<Vec<BigRational>> = table
        .rows
        .iter()
        .map(|row| {
            order
                .iter()
                .map(|&i| CycNumber::from_scalar(&row.traces[i]).to_rational().expect("rational character"))
                .collect()
        })
        .collect();
    let int = |v: i64| BigRational::from_integer(v.into());
    // columns: identity, 3-cycles, transpositions
    let classical: BTreeSet<Vec<BigRational>> = [[1, 1, 1], [1, 1, -1], [2, -1, 0]]
        .iter()
        .map(|r| r.iter().map(|&v| int(v)).collect())
        .collect();
    check(rows == classical, || format!("table {rows:?}"))?;
    Ok("3 rows match".into())
}

fn tame_sums() -> Outcome {
    let mut total = 0;
    for (q, n) in [(2, 2), (3, 2), (2, 3), (3, 3), (5, 2)] {
        let g = GroupParams::new(q, n, 1).unwrap();
        let r = TameReport::compute(&g).map_err(|e| e.to_string())?;
        check(r.parameters.len() as u64 == expected_irreducible_count(&g), || {
            format!("({q},{n}): {} parameters", r.parameters.len())
        })?;
        for p in &r.parameters {
            check(p.sum == n, || format!("({q},{n}) {:?}: sum {}", p.rho0, p.sum))?;
        }
        check(r.all_ok, || format!("({q},{n}) report not ok"))?;
        total += r.parameters.len();
    }
    Ok(format!("{total} parameters, every sum equals n"))
}

fn random_element(alg: &AlgebraParams, rng: &mut ChaCha8Rng) -> OrderElement {
    let mut poly = || {
        let deg = rng.gen_range(0..=4);
        Poly::from_coeffs((0..=deg).map(|_| rng.gen_range(0..alg.q)).collect())
    };
    let (a, b, c, d) = (poly(), poly(), poly(), poly());
    OrderElement::new(a, b, c, d).with_denominator(rng.gen_range(0..=2))
}

fn quaternion_arithmetic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let algs = [AlgebraParams::new(3, 1).unwrap(), AlgebraParams::new(5, 1).unwrap()];
    for k in 0..1000 {
        let alg = &algs[k % 2];
        let x = random_element(alg, &mut rng);
        let y = random_element(alg, &mut rng);
        let lhs = x.mul(&y, alg).nrd(alg).canonical();
        let rhs = x.nrd(alg).mul(&y.nrd(alg), &alg.fq).canonical();
        check(lhs == rhs, || format!("nrd({} · {}) mismatch", x.display(), y.display()))?;
    }
    let mut places = 0;
    for alg in &algs {
        let cert = ramification_certificate(alg, 2).map_err(|e| e.to_string())?;
        check(cert.ok, || format!("certificate failed at q = {}", alg.q))?;
        places += cert.split_places.len();
    }
    Ok(format!("1000 products, {places} split places certified"))
}

fn factorization_round_trips() -> Outcome {
    let fz = Factorizer::new(AlgebraParams::new(3, 1).unwrap());
    let bounds = SearchBounds {
        degree_bound: 6,
        depth_bound: 16,
        exhaustive: true,
    };
    let runs = round_trips(&fz, 2024, 50, &bounds).map_err(|e| e.to_string())?;
    let bad: Vec<_> = runs.iter().filter(|r| !r.ok).collect();
    check(bad.is_empty(), || format!("{} failures, first {:?}", bad.len(), bad[0]))?;
    Ok(format!("{} round trips, unique witnesses", runs.len()))
}

fn hecke_structure() -> Outcome {
    let start = Instant::now();
    let fz = Factorizer::new(AlgebraParams::new(3, 1).unwrap());
    let alg = &fz.alg;
    let bounds = SearchBounds::default();
    let op = |s: &str| -> Result<Vec<Vec<u32>>, String> {
        let place = parse_poly(s, &alg.fq).map_err(|e| e.to_string())?;
        HeckeOperator::compute(&fz, &place, &bounds)
            .map(|h| h.matrix(alg))
            .map_err(|e| e.to_string())
    };
    let t_minus = op("t-1")?;
    let t_plus = op("t+1")?;
    let t_quad = op("t^2+1")?;
    for (name, m, sum) in [("t-1", &t_minus, 4), ("t+1", &t_plus, 4), ("t^2+1", &t_quad, 10)] {
        check(m.len() == 16 && m.iter().all(|r| r.len() == 16), || format!("{name}: wrong shape"))?;
        check(m.iter().all(|r| r.iter().sum::<u32>() == sum), || format!("{name}: row sums ≠ {sum}"))?;
    }
    check(int_mat_mul(&t_minus, &t_plus) == int_mat_mul(&t_plus, &t_minus), || {
        "T_{t-1} and T_{t+1} do not commute".into()
    })?;
    for x in alg.group.elements() {
        let l = left_translation_matrix(alg, x);
        for (name, m) in [("t-1", &t_minus), ("t+1", &t_plus)] {
            check(int_mat_mul(&l, m) == int_mat_mul(m, &l), || format!("{name} vs left {x:?}"))?;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed <= Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("row sums 4, 4, 10; commuting; {elapsed:.2?}"))
}

fn pipeline_json(threads: usize) -> Result<String, String> {
    with_threads(Some(threads), || {
        let ctx = SpectralContext::new(AlgebraParams::new(3, 1).unwrap(), None, SearchBounds::default())
            .map_err(|e| e.to_string())?;
        let report = SpectralReport::compute(&ctx, None, true).map_err(|e| e.to_string())?;
        Ok(serde_json::to_string(&report).expect("report serializes"))
    })
}

fn spectral_pipeline() -> Outcome {
    let start = Instant::now();
    let ctx = SpectralContext::new(AlgebraParams::new(3, 1).unwrap(), None, SearchBounds::default())
        .map_err(|e| e.to_string())?;
    let g = &ctx.alg.group;
    let report = SpectralReport::compute(&ctx, None, true).map_err(|e| e.to_string())?;
    let (mut regular, mut linear) = (0, 0);
    for s in &report.sigmas {
        let name = format!("{:?}:{}", s.sigma.orbit.members(), s.sigma.s);
        check(s.blocks.len() == 1, || format!("{name}: {} blocks", s.blocks.len()))?;
        check(s.blocks[0].dim == s.dim, || format!("{name}: block dim {}", s.blocks[0].dim))?;
        check(s.claim_ok && s.claim_sum == s.dim, || format!("{name}: sum {}", s.claim_sum))?;
        check(s.cross_validation.count_ok && s.cross_validation.orbit_ok, || {
            format!("{name}: disagrees with the tame prediction")
        })?;
        let negated = s.sigma.orbit.negated(g);
        check(s.blocks[0].infinity_orbit == negated, || {
            format!("{name}: orbit at ∞ {:?}", s.blocks[0].infinity_orbit)
        })?;
        let chis: BTreeSet<u32> = s.projective_basis.iter().map(|l| l.chi).collect();
        check(s.projective_basis.len() == s.dim && chis.len() == s.dim && s.basis_ok, || {
            format!("{name}: projective basis {:?}", chis)
        })?;
        match s.dim {
            2 => regular += 1,
            1 => linear += 1,
            d => return Err(format!("{name}: unexpected dimension {d}")),
        }
    }
    check((regular, linear) == (3, 4), || format!("{regular} two-dimensional, {linear} one-dimensional"))?;
    check(report.all_ok, || "report not ok".into())?;
    let elapsed = start.elapsed();
    check(elapsed <= Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("3 two-dimensional and 4 one-dimensional σ, {elapsed:.2?}"))
}

fn determinism() -> Outcome {
    let one = pipeline_json(1)?;
    let four = pipeline_json(4)?;
    check(one == four, || "JSON differs between 1 and 4 workers".into())?;
    Ok(format!("{} bytes identical across worker counts", one.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("irrep census", census),
        ("field-part multiplicities", multiplicities),
        ("symmetric group character table", symmetric_group_table),
        ("tame dimension sums", tame_sums),
        ("quaternion norm and ramification", quaternion_arithmetic),
        ("factorization round trips", factorization_round_trips),
        ("Hecke structure at q=3", hecke_structure),
        ("spectral pipeline at q=3", spectral_pipeline),
        ("determinism across worker counts", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("acceptance {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {}: FAIL {name} ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
