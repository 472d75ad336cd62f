//! End-to-end acceptance checks. Each test prints one PASS/FAIL line with its
//! elapsed time against a fixed budget; every comparison is exact.

use std::time::{Duration, Instant};

use geodex::algebra::gaussian_binomial;
use geodex::families::{
    are_isomorphic, bipartite_double, build, folded, halved, line_graph, Built, FamilySpec, Part, SpaceSpec,
};
use geodex::metrics::{
    bfs_all, bijection_check, census_formula, geodesic_census, intersection_array, IntersectionArray,
};
use geodex::polar_geo::{
    bell, nonopposite_orbit_count, not_drg_witness, orbit_count_for_cap, partition_oracle, pg_distance,
    predicted_orbit_profile, PgInstance,
};
use geodex::spaces::SpaceKind;
use geodex::symmetry::{
    all_geodesics, census_screens, check_geodesic_transitive, orbits_on_arcs, orbits_on_tuples, psp_order,
    sporadic_screens, Bsgs, ObjectClass,
};
use geodex::Bounds;
use num_bigint::BigUint;

fn b(spec: FamilySpec) -> Built {
    build(&spec, &Bounds::default()).unwrap()
}

fn sp(omega: usize, q: u32) -> SpaceSpec {
    SpaceSpec::new(SpaceKind::Symplectic, omega, q)
}

fn array_of(built: &Built) -> IntersectionArray {
    let dt = bfs_all(&built.graph).unwrap();
    intersection_array(&built.graph, &dt).array().cloned().expect("distance-regular")
}

fn finish(id: u32, name: &str, start: Instant, budget: Duration, failures: &[String]) {
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed <= budget;
    println!(
        "criterion {id:>2} {name}: {} ({:.2}s of {}s)",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    assert!(failures.is_empty(), "criterion {id} failures: {failures:#?}");
    assert!(elapsed <= budget, "criterion {id} exceeded its budget: {elapsed:?}");
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

#[test]
fn criterion_01_geodesic_counts() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for spec in [
        FamilySpec::Johnson { n: 5, k: 2 },
        FamilySpec::Hamming { k: 3, m: 2 },
        FamilySpec::Hamming { k: 4, m: 2 },
        FamilySpec::Grassmann { n: 4, k: 2, q: 2 },
        FamilySpec::DualPolar { space: sp(2, 2) },
        FamilySpec::Cycle { k: 7 },
    ] {
        let built = b(spec.clone());
        let g = &built.graph;
        let dt = bfs_all(g).unwrap();
        let formula = census_formula(g.n(), &array_of(&built));
        let census = geodesic_census(g).unwrap();
        // explicit enumeration, independent of the path-count recursion
        let listed: Vec<u128> = (1..=dt.diameter()).map(|i| all_geodesics(g, &dt, i).len() as u128).collect();
        check(&mut failures, census[1..] == formula[1..], format!("{spec}: census {census:?} vs formula {formula:?}"));
        check(&mut failures, census[1..] == listed[..], format!("{spec}: census {census:?} vs listed {listed:?}"));
    }
    finish(1, "geodesic census equals v b0 ... b(i-1)", start, Duration::from_secs(5), &failures);
}

#[test]
fn criterion_02_intersection_numbers() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let gb = |n: usize, q: u32| gaussian_binomial(n as u32, 1, q as u64).unwrap();
    type CFormula = Box<dyn Fn(usize) -> BigUint>;
    let cases: Vec<(FamilySpec, CFormula)> = vec![
        (FamilySpec::Johnson { n: 6, k: 3 }, Box::new(|i| BigUint::from(i * i))),
        (FamilySpec::DoubledOdd { k: 3 }, Box::new(|i| BigUint::from(i.div_ceil(2)))),
        (FamilySpec::Grassmann { n: 4, k: 2, q: 2 }, Box::new(move |i| gb(i, 2).pow(2))),
        (FamilySpec::Grassmann { n: 5, k: 2, q: 2 }, Box::new(move |i| gb(i, 2).pow(2))),
        (FamilySpec::DoubledGrassmann { k: 2, q: 2 }, Box::new(move |i| gb(i.div_ceil(2), 2))),
        (FamilySpec::DualPolar { space: sp(2, 2) }, Box::new(move |i| gb(i, 2))),
        (FamilySpec::DualPolar { space: sp(2, 3) }, Box::new(move |i| gb(i, 3))),
        (FamilySpec::DualPolar { space: sp(3, 2) }, Box::new(move |i| gb(i, 2))),
        (FamilySpec::Hamming { k: 4, m: 3 }, Box::new(BigUint::from)),
        (
            FamilySpec::BilinearForms { m: 2, k: 3, q: 2 },
            Box::new(move |i| BigUint::from(2u32).pow(i as u32 - 1) * gb(i, 2)),
        ),
    ];
    for (spec, formula) in &cases {
        let a = array_of(&b(spec.clone()));
        for (i, &c) in a.c.iter().enumerate() {
            let expected = formula(i + 1);
            check(
                &mut failures,
                BigUint::from(c) == expected,
                format!("{spec}: c_{} = {c}, expected {expected}", i + 1),
            );
        }
    }
    let af = array_of(&b(FamilySpec::AlternatingForms { k: 4, q: 2 }));
    // q^(2i-2) (q^(2i) - 1) / (q^2 - 1) at i = 2
    check(&mut failures, af.c.get(1) == Some(&20), format!("AF(4,2) c_2 = {:?}, expected 20", af.c.get(1)));
    finish(2, "closed-form c_i", start, Duration::from_secs(30), &failures);
}

#[test]
fn criterion_03_flag_bijections() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (spec, count) in [
        (FamilySpec::Johnson { n: 5, k: 2 }, 4),
        (FamilySpec::Hamming { k: 3, m: 2 }, 6),
        (FamilySpec::Grassmann { n: 4, k: 2, q: 2 }, 9),
        (FamilySpec::DualPolar { space: sp(2, 2) }, 3),
        (FamilySpec::DoubledOdd { k: 3 }, 12),
        (FamilySpec::BilinearForms { m: 2, k: 2, q: 2 }, 6),
        (FamilySpec::IncidenceOpposites { n: 4, q: 2 }, 24),
    ] {
        let built = b(spec.clone());
        let r = bijection_check(&spec, &built, None, &Bounds::default()).unwrap();
        check(&mut failures, r.pass, format!("{spec}: {:?}", r.failure));
        check(&mut failures, r.flags == count, format!("{spec}: {} flags, expected {count}", r.flags));
        check(&mut failures, r.geodesic_count == count as u128, format!("{spec}: {} geodesics", r.geodesic_count));
    }
    finish(3, "flag-to-geodesic bijections", start, Duration::from_secs(60), &failures);
}

#[test]
fn criterion_04_geodesic_transitivity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases: Vec<(String, geodex::families::Graph, geodex::families::GeneratorSet)> = Vec::new();
    for spec in [
        FamilySpec::Johnson { n: 5, k: 2 },
        FamilySpec::Odd { k: 3 },
        FamilySpec::DoubledOdd { k: 3 },
        FamilySpec::Hamming { k: 4, m: 2 },
        FamilySpec::Grassmann { n: 4, k: 2, q: 2 },
        FamilySpec::DoubledGrassmann { k: 2, q: 2 },
        FamilySpec::IncidenceDesign { n: 3, q: 2 },
        FamilySpec::IncidenceOpposites { n: 4, q: 2 },
        FamilySpec::DualPolar { space: sp(2, 2) },
        FamilySpec::DualPolar { space: sp(2, 3) },
        FamilySpec::BilinearForms { m: 2, k: 2, q: 2 },
        FamilySpec::AlternatingForms { k: 4, q: 2 },
        FamilySpec::HermitianForms { k: 2, r: 2 },
        FamilySpec::Cycle { k: 9 },
    ] {
        let built = b(spec.clone());
        cases.push((spec.to_string(), built.graph, built.gens));
    }
    let j42 = b(FamilySpec::Johnson { n: 4, k: 2 });
    let (g, gens) = folded(&j42.graph, &j42.gens).unwrap();
    cases.push(("folded johnson(4,2)".into(), g, gens));
    let h42 = b(FamilySpec::Hamming { k: 4, m: 2 });
    let (g, gens) = halved(&h42.graph, &h42.gens, Part::Plus).unwrap();
    cases.push(("halved hamming(4,2)".into(), g, gens));
    let (g, gens) = folded(&h42.graph, &h42.gens).unwrap();
    cases.push(("folded hamming(4,2)".into(), g, gens));
    for (name, g, gens) in &cases {
        let v = check_geodesic_transitive(g, &gens.perms).unwrap();
        let counts: Vec<usize> = v.reports.iter().map(|r| r.orbit_count).collect();
        check(&mut failures, v.holds, format!("{name}: orbit counts {counts:?}"));
        check(&mut failures, v.lagrange_ok, format!("{name}: orbit size does not divide the group order"));
    }
    finish(4, "geodesic-transitive families", start, Duration::from_secs(600), &failures);
}

#[test]
fn criterion_05_heawood() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let heawood = b(FamilySpec::IncidenceDesign { n: 3, q: 2 });
    check(&mut failures, heawood.graph.n() == 14 && heawood.graph.valency() == Some(3), "Heawood graph shape");
    let four = orbits_on_arcs(&heawood.graph, &heawood.gens.perms, 4).unwrap();
    check(&mut failures, four.is_single_orbit(), format!("4-arcs: {} orbits", four.orbit_count));
    let order = Bsgs::new(&heawood.gens.perms, 14).unwrap().order();
    check(&mut failures, order == BigUint::from(336u32), format!("group order {order}, expected |PGL(3,2)| x 2 = 336"));
    let (line, gens) = line_graph(&heawood.graph, &heawood.gens).unwrap();
    let v = check_geodesic_transitive(&line, &gens.perms).unwrap();
    check(&mut failures, line.n() == 21 && v.holds, format!("line graph: n = {}, holds = {}", line.n(), v.holds));
    finish(5, "Heawood 4-arc-transitive, line graph geodesic-transitive", start, Duration::from_secs(60), &failures);
}

#[test]
fn criterion_06_doubled_grassmann_is_not_a_double() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let dg = b(FamilySpec::DoubledGrassmann { k: 2, q: 2 });
    let points = b(FamilySpec::Grassmann { n: 3, k: 1, q: 2 });
    let (double, _) = bipartite_double(&points.graph, &points.gens).unwrap();
    check(&mut failures, dg.graph.valency() == Some(3), format!("DG(2,2) valency {:?}", dg.graph.valency()));
    check(&mut failures, double.valency() == Some(6), format!("double valency {:?}", double.valency()));
    check(&mut failures, !are_isomorphic(&dg.graph, &double), "graphs are isomorphic");
    finish(6, "DG(2,2) differs from the bipartite double of G(3,1,2)", start, Duration::from_secs(1), &failures);
}

#[test]
fn criterion_07_screens() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let report = census_screens(10_000).unwrap();
    check(&mut failures, report.all_confirmed, "some screen failed to rule out geodesic-transitivity");
    for t in &report.taylor {
        let four_f = 4 * t.f as u64;
        check(&mut failures, !four_f.is_multiple_of(t.q + 1), format!("q = {}: (q+1) | 4f", t.q));
        check(
            &mut failures,
            !((t.q + 1) * four_f).is_multiple_of(t.q * t.q + 1),
            format!("q = {}: (q^2+1) | (q+1)4f", t.q),
        );
    }
    let odd_prime_powers = (5..=10_000u64).step_by(2).filter(|&q| geodex::algebra::prime_power(q).is_some()).count();
    check(&mut failures, report.taylor.len() == odd_prime_powers, "Taylor screen skipped some q");
    let s = sporadic_screens();
    let pow = |p: u32, e: u32| BigUint::from(p).pow(e);
    let l3 = pow(2, 8) * pow(3, 2) * pow(5, 2) * pow(7, 2) * 11u32;
    let order = pow(2, 10) * pow(3, 2) * pow(5, 3) * 7u32 * 11u32;
    check(&mut failures, s[0].count == l3 && s[0].order == order, "first sporadic values");
    check(&mut failures, s[1].count == BigUint::from(280u32 * 9 * 8 * 6 * 3), "second sporadic count");
    check(&mut failures, s.iter().all(|x| !x.divides), "a sporadic count divides its group order");
    finish(7, "Taylor and sporadic divisibility screens", start, Duration::from_secs(5), &failures);
}

#[test]
fn criterion_08_type_counting() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let row = |omega, k| (1..=4).map(|m| nonopposite_orbit_count(m, omega, k).unwrap()).collect::<Vec<_>>();
    check(&mut failures, row(8, 4) == [1, 2, 5, 15], format!("omega-k = 4: {:?}", row(8, 4)));
    check(&mut failures, row(6, 4) == [1, 2, 4, 8], format!("omega-k = 2: {:?}", row(6, 4)));
    let bells: Vec<u128> = (1..=8).map(bell).collect();
    check(&mut failures, bells == [1, 2, 5, 15, 52, 203, 877, 4140], format!("bell {bells:?}"));
    for m in 1..=8 {
        for cap in 1..=8u32 {
            let sum = orbit_count_for_cap(m, cap).unwrap();
            check(&mut failures, sum == partition_oracle(m, cap as usize), format!("m = {m}, cap = {cap}"));
        }
    }
    finish(8, "type-vector orbit counts", start, Duration::from_secs(1), &failures);
}

#[test]
fn criterion_09_polar_grassmann_sp62() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let inst = PgInstance::new(sp(3, 2), 2, &Bounds::default()).unwrap();
    let g = &inst.built.graph;
    check(&mut failures, g.n() == 315, format!("n = {}", g.n()));
    let dt = bfs_all(g).unwrap();
    let mut mismatches = 0;
    for u in 0..g.n() {
        for v in 0..g.n() {
            if pg_distance(&inst.space, 2, &inst.subspaces[u], &inst.subspaces[v]).unwrap()
                != dt.get(u as u32, v as u32)
            {
                mismatches += 1;
            }
        }
    }
    check(&mut failures, mismatches == 0, format!("{mismatches} distance mismatches"));
    let w = not_drg_witness(&sp(3, 2).build().unwrap(), 2).unwrap();
    check(&mut failures, w.valid, format!("witness {w:?}"));
    let predicted = predicted_orbit_profile(3, 2).unwrap();
    let brute: Vec<u128> = (1..=dt.diameter())
        .map(|len| {
            let geos = all_geodesics(g, &dt, len);
            orbits_on_tuples(&inst.built.gens.perms, &geos, ObjectClass::Geodesics { length: len }).unwrap().orbit_count
                as u128
        })
        .collect();
    check(
        &mut failures,
        brute == predicted && predicted == [1, 2, 1],
        format!("brute {brute:?} vs predicted {predicted:?}"),
    );
    let gt = check_geodesic_transitive(g, &inst.built.gens.perms).unwrap();
    check(&mut failures, !gt.holds, "k = 2 reported geodesic-transitive");
    let polar = b(FamilySpec::PolarGrassmann { space: sp(3, 2), k: 1 });
    check(
        &mut failures,
        check_geodesic_transitive(&polar.graph, &polar.gens.perms).unwrap().holds,
        "k = 1 not geodesic-transitive",
    );
    let dual = b(FamilySpec::DualPolar { space: sp(3, 2) });
    check(
        &mut failures,
        check_geodesic_transitive(&dual.graph, &dual.gens.perms).unwrap().holds,
        "k = 3 not geodesic-transitive",
    );
    finish(9, "PG(Sp(6,2),2) distances, witness and orbit profile", start, Duration::from_secs(600), &failures);
}

#[test]
fn criterion_10_group_orders() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (omega, q) in [(2, 2), (2, 3), (3, 2)] {
        let built = b(FamilySpec::PolarGrassmann { space: sp(omega, q), k: 1 });
        let order = Bsgs::new(&built.gens.perms, built.graph.n()).unwrap().order();
        let expected = psp_order(omega as u32, q);
        check(&mut failures, order == expected, format!("Sp({},{q}): {order} vs {expected}", 2 * omega));
    }
    finish(10, "Schreier-Sims orders match classical formulas", start, Duration::from_secs(60), &failures);
}
