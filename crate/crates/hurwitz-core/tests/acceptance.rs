//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Where a published reference value disagrees with exact
//! recomputation, the test reports the discrepancy together with the
//! independent evidence and fails; see the per-criterion notes.

use std::time::Instant;

use hurwitz_core::arith::{divisors, euler_phi, gcd, is_square, ExactRational};
use hurwitz_core::cusps::{
    classify_cusps, cusp_equivalent, cusps, gen_atkin_lehner, normalizes_g0, normalizes_gamma0,
    normalizes_gamma0_mprime, Cusp, ScaledMatrix,
};
use hurwitz_core::goldens;
use hurwitz_core::hurwitz::{choi_kim, hurwitz_level};
use hurwitz_core::intersect::{
    affine_intersection, cusp_multiplicity, delta_m, global_intersection,
    hurwitz_eichler_rhs, s_table, verify_conjecture, verify_identity,
};
use hurwitz_core::qform::IntMatrix2;
use hurwitz_core::{arith, GENUS_ZERO_LEVELS, PRIME_LEVELS};

const SWEEP_LEVELS: [i64; 14] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25];

fn coprime_degrees(m: i64, max: i64) -> Vec<i64> {
    (1..=max).filter(|n| gcd(m, *n) == 1).collect()
}

/// Criterion 1: H^M(D) against every bundled class-number table cell.
///
/// Exact recomputation disagrees with nine published cells; each of those
/// cells also disagrees with an independent coset-counting oracle and, for
/// the discriminants 48, 80 and 96, with the one-parameter identities
/// evaluated using the neighbouring cells. The test states the evidence
/// and fails per the acceptance contract.
#[test]
fn criterion_1_class_number_golden_tables() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let table = goldens::class_number_table();
    let total = table.len();
    for entry in table {
        let computed = hurwitz_level(entry.level, entry.key).unwrap();
        if computed != entry.value {
            mismatches.push((entry.level, entry.key, computed, entry.value));
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "runtime {elapsed:?} >= 10s");
    if mismatches.is_empty() {
        println!("criterion 1: PASS ({total} cells, {elapsed:?})");
        return;
    }
    println!(
        "criterion 1: FAIL ({} of {total} cells differ from the published table, {elapsed:?})",
        mismatches.len()
    );
    for (m, d, computed, table_value) in &mismatches {
        println!(
            "  H^{m}({d}): computed {computed}, published {table_value} \
             (computed value confirmed by the coset-counting oracle test)"
        );
    }
    panic!(
        "published class-number tables differ from exact recomputation in {} cells",
        mismatches.len()
    );
}

/// Criterion 2: S^M(N) against every bundled sum-table cell. The mismatches
/// are exactly the folds of the criterion-1 cells.
#[test]
fn criterion_2_sum_golden_tables() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let table = goldens::sum_table();
    let total = table.len();
    for entry in &table {
        let computed = s_table(entry.level, entry.key).unwrap().pop().unwrap().1;
        if computed != entry.value {
            mismatches.push((entry.level, entry.key, computed, entry.value.clone()));
        }
    }
    // The published negative square-degree entries hold exactly.
    let spot = |m: i64, n: i64| -> ExactRational {
        s_table(m, n).unwrap().pop().unwrap().1
    };
    assert_eq!(spot(18, 4), ExactRational::from_integer(-6));
    assert_eq!(spot(16, 9), ExactRational::from_integer(-4));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "runtime {elapsed:?} >= 30s");
    if mismatches.is_empty() {
        println!("criterion 2: PASS ({total} cells, {elapsed:?})");
        return;
    }
    println!(
        "criterion 2: FAIL ({} of {total} cells differ from the published table, {elapsed:?})",
        mismatches.len()
    );
    for (m, n, computed, table_value) in &mismatches {
        println!("  S^{m}({n}): computed {computed}, published {table_value}");
    }
    panic!(
        "published sum tables differ from exact recomputation in {} cells \
         (each is a fold of a criterion-1 discrepancy)",
        mismatches.len()
    );
}

/// Criterion 3: the one-parameter identity for every level and every
/// non-square degree N <= 200 coprime to the level, cross-checked against
/// the branch-selected divisor sums.
#[test]
fn criterion_3_one_parameter_sweep() {
    let start = Instant::now();
    let mut cases = 0;
    let mut failures = Vec::new();
    for m in SWEEP_LEVELS {
        for n in coprime_degrees(m, 200) {
            if is_square(n) {
                continue;
            }
            cases += 1;
            let report = verify_identity(m, 1, n).unwrap();
            let (rhs_branch, _) = hurwitz_eichler_rhs(m, n).unwrap();
            if !report.pass || report.rhs != ExactRational::from_integer(rhs_branch) {
                failures.push(report);
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "runtime {elapsed:?} >= 2min");
    for report in &failures {
        println!("  {report}");
    }
    println!(
        "criterion 3: {} ({cases} cases, {} failures, {elapsed:?})",
        if failures.is_empty() { "PASS" } else { "FAIL" },
        failures.len()
    );
    assert!(failures.is_empty());
}

/// Criterion 4: the two-parameter identity for all pairs N1, N2 <= 20
/// coprime to the level with non-square product, exercising the inner
/// d | gcd(N1, N2, x) sum.
#[test]
fn criterion_4_two_parameter_sweep() {
    let start = Instant::now();
    let mut cases = 0;
    let mut nontrivial_gcd = 0;
    let mut failures = Vec::new();
    for m in SWEEP_LEVELS {
        let degrees = coprime_degrees(m, 20);
        for &n1 in &degrees {
            for &n2 in &degrees {
                if is_square(n1 * n2) {
                    continue;
                }
                cases += 1;
                if gcd(n1, n2) > 1 {
                    nontrivial_gcd += 1;
                }
                let report = verify_identity(m, n1, n2).unwrap();
                if !report.pass {
                    failures.push(report);
                }
            }
        }
    }
    let elapsed = start.elapsed();
    for report in failures.iter().take(20) {
        println!("  {report}");
    }
    println!(
        "criterion 4: {} ({cases} cases, {nontrivial_gcd} with gcd(N1,N2) > 1, {} failures, {elapsed:?})",
        if failures.is_empty() { "PASS" } else { "FAIL" },
        failures.len()
    );
    assert!(failures.is_empty());
    assert!(nontrivial_gcd > 100, "inner divisor sum underexercised");
}

/// Criterion 5: global = affine + sum of cusp multiplicities, exactly,
/// for every level and coprime pair of degrees up to 30.
#[test]
fn criterion_5_decomposition() {
    let start = Instant::now();
    let mut cases = 0;
    let mut failures = 0;
    for m in GENUS_ZERO_LEVELS {
        let classes = cusps(m);
        let degrees = coprime_degrees(m, 30);
        for &n1 in &degrees {
            for &n2 in &degrees {
                if is_square(n1 * n2) {
                    continue;
                }
                cases += 1;
                let mut cusp_total = 0;
                for s in &classes {
                    for t in &classes {
                        cusp_total += cusp_multiplicity(m, s, t, n1, n2).unwrap();
                    }
                }
                let global = global_intersection(n1, n2).unwrap();
                let affine = affine_intersection(m, n1, n2).unwrap();
                if global != affine + cusp_total {
                    failures += 1;
                    println!(
                        "  M={m} N1={n1} N2={n2}: global {global} != affine {affine} + cusps {cusp_total}"
                    );
                }
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 5: {} ({cases} cases, {failures} failures, {elapsed:?})",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);
}

/// The published case table for delta_M(N1, N2).
fn published_delta(m: i64, n1: i64, n2: i64) -> Option<i64> {
    Some(match m {
        1 => 0,
        2 | 3 | 5 | 7 | 13 => 1,
        4 => 2,
        6 | 8 | 10 => 3,
        9 if (n1 - n2) % 3 == 0 => 3,
        9 => 1,
        12 => 5,
        16 if (n1 - n2) % 4 == 0 => 5,
        16 => 3,
        18 if n1 % 6 == 1 && n2 % 6 == 1 => 7,
        18 if n1 % 6 == 5 && n2 % 6 == 5 => 5,
        18 => 3,
        25 if (n1 - n2) % 5 != 0 && (n1 + n2) % 5 != 0 => 1,
        _ => return None,
    })
}

/// Criterion 6: the computed -1 + sum of delta-pair products against the
/// published thirteen-case table, every case hit.
///
/// The computed value for level 18 with N1 = N2 = -1 mod 6 is 7, not the
/// published 5: the four swapped cusp pairs among {1/3, 2/3} and
/// {1/6, 5/6} all carry indicator 1 (each is hit by an explicit divisor
/// matrix), and the class-number identity of criterion 4 only balances
/// with 7. The published row appears to be in error; the test fails on it
/// per the acceptance contract.
#[test]
fn criterion_6_delta_table() {
    let start = Instant::now();
    let mut hit_cases = std::collections::HashSet::new();
    let mut failures = Vec::new();
    for m in GENUS_ZERO_LEVELS {
        let degrees = coprime_degrees(m, 23);
        for &n1 in &degrees {
            for &n2 in &degrees {
                let Some(expected) = published_delta(m, n1, n2) else {
                    continue;
                };
                let computed = delta_m(m, n1, n2).unwrap();
                let case = match m {
                    9 => format!("M=9 ({})", if (n1 - n2) % 3 == 0 { "same" } else { "opposite" }),
                    16 => format!("M=16 ({})", if (n1 - n2) % 4 == 0 { "same" } else { "opposite" }),
                    18 => format!("M=18 (residues {},{})", n1 % 6, n2 % 6),
                    25 => "M=25 (generic)".to_string(),
                    _ => format!("M={m}"),
                };
                hit_cases.insert(case.clone());
                if computed != expected {
                    failures.push((m, n1, n2, computed, expected, case));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let mut reported = std::collections::HashSet::new();
    for (m, n1, n2, computed, expected, case) in &failures {
        if reported.insert(case.clone()) {
            println!(
                "  delta_{m}({n1}, {n2}) computed {computed}, published {expected} [{case}]"
            );
        }
    }
    println!(
        "criterion 6: {} ({} table cases hit, {} disagreements, {elapsed:?})",
        if failures.is_empty() { "PASS" } else { "FAIL" },
        hit_cases.len(),
        failures.len()
    );
    assert!(hit_cases.len() >= 13, "not all published cases exercised");
    assert!(
        failures.is_empty(),
        "computed delta disagrees with the published case table on {} instances \
         (all at level 18 with both degrees -1 mod 6, where the identities force 7)",
        failures.len()
    );
}

/// Criterion 7: cusp counts against the closed-form count and the
/// published lists, and the classification against the published
/// partition for levels 9, 16, 18, 25.
///
/// For level 16 the published partition keeps only {inf, 0} in C''_0, but
/// the involutions W_8 and W_2 demonstrably normalize both groups (the
/// criterion-8 conjugation sweep certifies this), putting 1/2 and 1/8 in
/// C''_0. The test states the conflict and fails on that sub-case.
#[test]
fn criterion_7_cusp_counts_and_classification() {
    // Counts from the published closed form c_0(M) for the prime-or-small
    // range, and the totient sum in general.
    let published_counts = [
        (2, 2),
        (3, 2),
        (4, 3),
        (5, 2),
        (6, 4),
        (7, 2),
        (8, 4),
        (9, 4),
        (10, 4),
        (12, 6),
        (13, 2),
    ];
    for (m, expected) in published_counts {
        assert_eq!(cusps(m).len(), expected, "cusp count at level {m}");
    }
    for m in GENUS_ZERO_LEVELS {
        let expected: i64 = divisors(m)
            .iter()
            .map(|&n| euler_phi(gcd(n, m / n)))
            .sum();
        assert_eq!(cusps(m).len() as i64, expected);
    }
    let names = |list: &[hurwitz_core::cusps::CuspClass]| -> Vec<String> {
        list.iter().map(|c| c.to_string()).collect()
    };
    // Published lists for the composite levels.
    assert_eq!(
        names(&cusps(18)),
        ["inf", "0", "1/2", "1/3", "2/3", "1/6", "5/6", "1/9"]
    );
    assert_eq!(names(&cusps(16)), ["inf", "0", "1/2", "1/4", "3/4", "1/8"]);
    assert_eq!(names(&cusps(25)), ["inf", "0", "1/5", "2/5", "3/5", "4/5"]);

    // Published three-way partitions.
    let mut failures = Vec::new();
    let expectations: [(i64, &[&str], &[&str]); 4] = [
        (9, &["inf", "0"], &["1/3", "2/3"]),
        (16, &["inf", "0"], &["1/2", "1/4", "3/4", "1/8"]),
        (18, &["inf", "0", "1/2", "1/9"], &["1/3", "2/3", "1/6", "5/6"]),
        (25, &["inf", "0"], &["1/5", "2/5", "3/5", "4/5"]),
    ];
    for (m, expected_both, expected_rest) in expectations {
        let partition = classify_cusps(m);
        let both = names(&partition.in_both);
        let mut rest = names(&partition.gamma0_only);
        rest.extend(names(&partition.outside));
        if both != expected_both || rest != expected_rest {
            println!(
                "  level {m}: computed C''_0 = {both:?} (published {expected_both:?}); \
                 complement {rest:?} (published {expected_rest:?})"
            );
            failures.push(m);
        }
    }
    println!(
        "criterion 7: {} (counts and lists pass; partition disagreements at {failures:?})",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(
        failures.is_empty(),
        "published partition disagrees with the normalizer computations at levels {failures:?} \
         (the level-16 involutions W_8 and W_2 pass the direct conjugation test for both groups)"
    );
}

/// All of Gamma_0(level) with entries bounded by `limit`.
fn gamma0_sample(level: i64, limit: i64) -> Vec<IntMatrix2> {
    let mut sample = Vec::new();
    let mut r = -(limit / level) * level;
    while r <= limit {
        for p in -limit..=limit {
            if r == 0 {
                if p == 1 || p == -1 {
                    for q in -limit..=limit {
                        sample.push(IntMatrix2::new(p, q, 0, p));
                    }
                }
                continue;
            }
            for s in -limit..=limit {
                let num = p * s - 1;
                if num % r == 0 {
                    let q = num / r;
                    if q.abs() <= limit {
                        sample.push(IntMatrix2::new(p, q, r, s));
                    }
                }
            }
        }
        r += level;
    }
    sample
}

/// Integral matrices in G_0(level) (level | lower-left, determinant a unit
/// mod level) with entries bounded by `limit`.
fn g0_sample(level: i64, limit: i64) -> Vec<IntMatrix2> {
    let mut sample = Vec::new();
    let mut r = -(limit / level) * level;
    while r <= limit {
        for p in -limit..=limit {
            for q in -limit..=limit {
                for s in -limit..=limit {
                    let mat = IntMatrix2::new(p, q, r, s);
                    let det = mat.det();
                    if det != 0 && gcd(det, level) == 1 {
                        sample.push(mat);
                    }
                }
            }
        }
        r += level;
    }
    sample
}

/// Is x / d in the localization Z_(level) (denominator coprime to level)?
fn in_localization(x: i64, d: i64, level: i64) -> bool {
    gcd(d / gcd(x, d).max(1), level) == 1
}

/// w^-1 gamma w as an integer matrix over the denominator w.scale.
fn conjugate(w: &ScaledMatrix, gamma: &IntMatrix2) -> IntMatrix2 {
    w.mat.adjugate().mul(gamma).mul(&w.mat)
}

fn stays_in_gamma0(w: &ScaledMatrix, gamma: &IntMatrix2, level: i64) -> bool {
    let b = conjugate(w, gamma);
    let d = w.scale;
    [b.p, b.q, b.r, b.s].iter().all(|x| x % d == 0) && (b.r / d) % level == 0
}

fn stays_in_g0(w: &ScaledMatrix, gamma: &IntMatrix2, level: i64) -> bool {
    let b = conjugate(w, gamma);
    let d = w.scale;
    in_localization(b.p, d, level)
        && in_localization(b.q, d, level)
        && in_localization(b.s, d, level)
        && in_localization(b.r, d * level, level)
}

fn stays_in_diagonal_congruence(
    w: &ScaledMatrix,
    gamma: &IntMatrix2,
    level: i64,
    modulus: i64,
) -> bool {
    let b = conjugate(w, gamma);
    let d = w.scale;
    stays_in_gamma0(w, gamma, level) && (b.p / d - b.s / d) % modulus == 0
}

/// Criterion 8: involution contracts at every (level, m): determinant
/// equals the scale, the cusp image is m/level, and the three normalizer
/// predicates agree with direct conjugation samples.
#[test]
fn criterion_8_involution_contracts() {
    let start = Instant::now();
    for level in GENUS_ZERO_LEVELS {
        let gamma_sample = gamma0_sample(level, 40);
        let g0_small = g0_sample(level, 9);
        assert!(!gamma_sample.is_empty());
        for m in 0..level {
            let w = gen_atkin_lehner(level, m).unwrap();
            assert_eq!(w.mat.det(), w.scale, "det at ({level}, {m})");
            assert!(
                cusp_equivalent(level, w.image_of_infinity(), Cusp::new(m, level)),
                "cusp image at ({level}, {m})"
            );

            let predicted_gamma0 = normalizes_gamma0(level, m).unwrap();
            let sampled_gamma0 = gamma_sample.iter().all(|g| stays_in_gamma0(&w, g, level));
            assert_eq!(
                predicted_gamma0, sampled_gamma0,
                "normalizes_gamma0({level}, {m}) vs conjugation sample"
            );

            let predicted_g0 = normalizes_g0(level, m).unwrap();
            let sampled_g0 = g0_small.iter().all(|g| stays_in_g0(&w, g, level));
            assert_eq!(
                predicted_g0, sampled_g0,
                "normalizes_g0({level}, {m}) vs conjugation sample"
            );
        }
    }
    // The level-25 stratum-5 involutions: outside both normalizers but
    // inside the normalizer of the diagonal-congruence subgroup mod 5.
    let diag_sample: Vec<IntMatrix2> = gamma0_sample(25, 40)
        .into_iter()
        .filter(|g| (g.p - g.s) % 5 == 0)
        .collect();
    assert!(!diag_sample.is_empty());
    for m in [5, 10, 15, 20] {
        assert!(!normalizes_gamma0(25, m).unwrap());
        assert!(!normalizes_g0(25, m).unwrap());
        assert!(normalizes_gamma0_mprime(25, 5, m).unwrap());
        let w = gen_atkin_lehner(25, m).unwrap();
        assert!(diag_sample
            .iter()
            .all(|g| stays_in_diagonal_congruence(&w, g, 25, 5)));
    }
    println!("criterion 8: PASS ({:?})", start.elapsed());
}

/// Criterion 9: the prime-level formula vanishes whenever the Kronecker
/// factor does, for D <= 400, and matches the published prime-level
/// columns (which contain no discrepancies).
#[test]
fn criterion_9_choi_kim() {
    let start = Instant::now();
    for p in PRIME_LEVELS {
        for d in (3..=400).filter(|d| d % 4 == 0 || d % 4 == 3) {
            let value = choi_kim(p, d).unwrap();
            if arith::kronecker(-d, p) == -1 {
                assert!(value.is_zero(), "H^{p}({d}) should vanish");
            }
            assert_eq!(value, hurwitz_level(p, d).unwrap());
        }
    }
    let mut checked = 0;
    for entry in goldens::class_number_table() {
        if PRIME_LEVELS.contains(&entry.level) && entry.key > 0 {
            assert_eq!(
                choi_kim(entry.level, entry.key).unwrap(),
                entry.value,
                "H^{}({})",
                entry.level,
                entry.key
            );
            checked += 1;
        }
    }
    println!(
        "criterion 9: PASS ({checked} published cells, {:?})",
        start.elapsed()
    );
}

/// Criterion 10: the square-degree reports. The left-hand sides must match
/// the published sum tables where tabulated (N <= 25); right-hand-side
/// equality is reported but not required.
///
/// Two tabulated left-hand sides, S^12(25) and S^16(25), fold in the
/// criterion-1 discrepancies at discriminant 96; with the recomputed class
/// numbers the conjectured equality holds at both, while the published
/// rows would violate it. The test fails on the two cells per the
/// acceptance contract.
#[test]
fn criterion_10_conjecture_report() {
    let start = Instant::now();
    let sums = goldens::sum_table();
    let mut lhs_mismatches = Vec::new();
    let mut holds = 0;
    let mut fails = 0;
    for m in SWEEP_LEVELS {
        for n in coprime_degrees(m, 100) {
            if !is_square(n) {
                continue;
            }
            let report = verify_conjecture(m, n).unwrap();
            if report.pass {
                holds += 1;
            } else {
                fails += 1;
                println!("  conjecture open at {report}");
            }
            if let Some(entry) = sums.iter().find(|e| e.level == m && e.key == n) {
                if entry.value != report.lhs {
                    lhs_mismatches.push((m, n, report.lhs.clone(), entry.value.clone()));
                }
            }
        }
    }
    println!(
        "criterion 10: {} (rhs equality holds in {holds}/{} cases; {} tabulated lhs mismatches, {:?})",
        if lhs_mismatches.is_empty() { "PASS" } else { "FAIL" },
        holds + fails,
        lhs_mismatches.len(),
        start.elapsed()
    );
    for (m, n, computed, published) in &lhs_mismatches {
        println!("  S^{m}({n}): computed {computed}, published {published}");
    }
    assert!(
        lhs_mismatches.is_empty(),
        "tabulated square-degree sums disagree with recomputation at {} cells",
        lhs_mismatches.len()
    );
}
