//! End-to-end acceptance suite. One test per criterion; each prints a
//! summary line (run with `--nocapture` to see the lines for passing tests).
//!
//! The oracles used here are deliberately independent of the production
//! code paths: exact rational products and brute-force composition sums for
//! the algebra checks, and a literal implementation of the six-series
//! shape-(2,1) evaluator for the interpolation check.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use schur_ohno::indices::{enumerate_bump_tableaux, EZIndex, TableauIndex};
use schur_ohno::mzv::{
    osum_ez, osum_schur, zeta_21_stratified_prefix, zeta_schur, zeta_schur_prefix, TruncationConfig,
};
use schur_ohno::ohno::{
    beta_closed_form, filling_integral_quadrature, filling_integral_series, ohno_ez_direct,
    ohno_schur, pfd_coefficients, ComplexPoint, MultisetGrouping, OhnoConfig,
    DUALITY_NUMERIC_FLOOR,
};
use schur_ohno::shapes::{count_ssyt, enumerate_ssyt, SkewShape};
use schur_ohno::DualRegistry;

fn ez(v: &[u32]) -> EZIndex {
    EZIndex::new(v.to_vec()).unwrap()
}

fn tab(lambda: &[u32], mu: &[u32], rows: &[&[u32]]) -> TableauIndex {
    TableauIndex::from_rows(lambda, mu, rows).unwrap()
}

fn trunc(m: u32) -> TruncationConfig {
    TruncationConfig::with_max_entry(m).unwrap()
}

fn ocfg(m: u32) -> OhnoConfig {
    OhnoConfig::with_max_entry(m).unwrap()
}

fn point(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(Complex64::new(re, im)).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// All multisets over values `1..=max_value` with total multiplicity in
/// `1..=max_total`, as (value, multiplicity) groups.
fn all_multisets(max_value: u32, max_total: u32) -> Vec<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    fn rec(
        next_value: u32,
        max_value: u32,
        budget: u32,
        acc: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        if budget == 0 {
            return;
        }
        for v in next_value..=max_value {
            for r in 1..=budget {
                acc.push((v, r));
                rec(v + 1, max_value, budget - r, acc, out);
                acc.pop();
            }
        }
    }
    rec(1, max_value, max_total, &mut Vec::new(), &mut out);
    out
}

/// Oracle: `prod (w+n)^{-r}` as an exact rational.
fn direct_product(groups: &[(u32, u32)], w: &BigRational) -> BigRational {
    let mut total = BigRational::one();
    for &(n, r) in groups {
        let base = w + BigRational::from_integer(BigInt::from(n));
        for _ in 0..r {
            total /= &base;
        }
    }
    total
}

/// Oracle: `sum over e_1+...+e_d = m of prod boxes[i]^{-e_i}` exactly, by
/// direct enumeration of weak compositions.
fn brute_power_sum(boxes: &[u32], m: u32) -> BigRational {
    fn rec(boxes: &[u32], pos: usize, rem: u32, acc: BigRational, out: &mut BigRational) {
        if pos + 1 == boxes.len() {
            let d = BigInt::from(boxes[pos]).pow(rem);
            *out += acc * BigRational::new(BigInt::one(), d);
            return;
        }
        for e in 0..=rem {
            let d = BigInt::from(boxes[pos]).pow(e);
            rec(
                boxes,
                pos + 1,
                rem - e,
                acc.clone() * BigRational::new(BigInt::one(), d),
                out,
            );
        }
    }
    let mut out = BigRational::zero();
    rec(boxes, 0, m, BigRational::one(), &mut out);
    out
}

#[test]
fn c1_exact_partial_fraction_and_power_sum_algebra() {
    let multisets = all_multisets(9, 6);
    assert!(
        multisets.len() >= 500,
        "need at least 500 instances, got {}",
        multisets.len()
    );
    let sample_points = [rat(1, 3), rat(7, 1)];
    let mut identities = 0usize;
    for groups in &multisets {
        let g = MultisetGrouping::new(groups.clone()).unwrap();
        let table = pfd_coefficients(&g);
        // exact reconstruction of the product from the decomposition
        for w in &sample_points {
            assert_eq!(
                table.reconstruct_at(w),
                direct_product(groups, w),
                "groups {groups:?}"
            );
            identities += 1;
        }
        // power-sum identity over the boxes, m = 0..=4
        let boxes: Vec<u32> = groups
            .iter()
            .flat_map(|&(n, r)| std::iter::repeat_n(n, r as usize))
            .collect();
        for m in 0..=4u32 {
            assert_eq!(
                table.composition_power_sum(m),
                brute_power_sum(&boxes, m),
                "groups {groups:?}, m={m}"
            );
            identities += 1;
        }
        // distinct-value case: first-order coefficients are inverse gap
        // products, and the power sum takes the classical interpolation
        // form in a_i = 1/n_i, both exactly
        if groups.iter().all(|&(_, r)| r == 1) {
            for (i, &(ni, _)) in groups.iter().enumerate() {
                let mut prod = BigRational::one();
                for (j, &(nj, _)) in groups.iter().enumerate() {
                    if i != j {
                        prod *= rat(nj as i64 - ni as i64, 1);
                    }
                }
                assert_eq!(
                    table.coeff(i, 1) * prod,
                    BigRational::one(),
                    "groups {groups:?} i={i}"
                );
                identities += 1;
            }
            // sum over |e| = m of prod a^e = sum_i a_i^{m+r-1} prod (a_i - a_j)^{-1}
            let r = groups.len();
            let a: Vec<BigRational> = groups.iter().map(|&(n, _)| rat(1, n as i64)).collect();
            for m in 0..=4u32 {
                let mut rhs = BigRational::zero();
                for i in 0..r {
                    let mut term = BigRational::one();
                    for _ in 0..(m as usize + r - 1) {
                        term *= &a[i];
                    }
                    for j in 0..r {
                        if i != j {
                            term /= &a[i] - &a[j];
                        }
                    }
                    rhs += term;
                }
                assert_eq!(
                    rhs,
                    brute_power_sum(&groups.iter().map(|&(n, _)| n).collect::<Vec<_>>(), m),
                    "interpolation form, groups {groups:?} m={m}"
                );
                identities += 1;
            }
        }
    }
    println!(
        "[C1] exact partial-fraction + power-sum algebra: PASS ({} multisets, {} exact identities, zero tolerance)",
        multisets.len(),
        identities
    );
}

#[test]
fn c2_beta_closed_form_vs_quadrature() {
    let pi = std::f64::consts::PI;
    // pinned special case first: n=1, r=1, s=-1/2 equals pi to 1e-12
    let v = beta_closed_form(1, 1, Complex64::new(-0.5, 0.0)).unwrap();
    assert!(
        (v.re - pi).abs() <= 1e-12 && v.im == 0.0,
        "beta(1,1,-1/2) = {v}"
    );
    let mut checked = 0;
    for n in 1..=3u32 {
        for r in 1..=3u32 {
            for s_re in [-0.75, -0.5, -0.25] {
                let s = Complex64::new(s_re, 0.0);
                let closed = beta_closed_form(n, r, s).unwrap();
                // quadrature route: the library integral carries the
                // -sin(pi s)/pi prefactor; undo it to compare integrals
                let g = MultisetGrouping::new(vec![(n, r)]).unwrap();
                let q =
                    filling_integral_quadrature(&g, &ComplexPoint::new(s).unwrap(), 1e-11).unwrap();
                let integral = q / (-(Complex64::new(pi, 0.0) * s).sin() / pi);
                assert!(
                    (closed - integral).norm() <= 1e-9,
                    "n={n} r={r} s={s_re}: closed {closed} vs quadrature {integral}"
                );
                checked += 1;
            }
        }
    }
    println!("[C2] beta closed form vs independent quadrature: PASS ({checked} combinations at 1e-9, pi case at 1e-12)");
}

#[test]
fn c3_interpolation_matches_osums() {
    let shapes: Vec<TableauIndex> = vec![
        tab(&[1], &[], &[&[2]]),
        tab(&[1, 1], &[], &[&[1], &[2]]),
        tab(&[1, 1, 1], &[], &[&[1], &[1], &[2]]),
        tab(&[2, 1], &[], &[&[1, 2], &[2]]),
        tab(&[2, 2], &[1], &[&[1], &[1, 2]]),
    ];
    let c = trunc(200);
    let oc = ocfg(200);
    let mut checked = 0;
    for k in &shapes {
        for m in 0..=2u32 {
            let interp = ohno_schur(k, &point(m as f64, 0.0), &oc).unwrap().value.re;
            let osum = osum_schur(k, m, c).unwrap().value.re;
            let rel = (interp - osum).abs() / osum.abs();
            assert!(
                rel <= 1e-10,
                "shape {} m={m}: rel diff {rel:.3e}",
                k.shape()
            );
            checked += 1;
        }
        let at_zero = ohno_schur(k, &point(0.0, 0.0), &oc).unwrap().value.re;
        let zeta = zeta_schur(k, c).unwrap().value.re;
        let rel = (at_zero - zeta).abs() / zeta.abs();
        assert!(
            rel <= 1e-10,
            "shape {}: s=0 vs zeta rel diff {rel:.3e}",
            k.shape()
        );
        checked += 1;
    }
    println!("[C3] interpolation at integer points (M=200, rel 1e-10): PASS ({checked} comparisons over 5 shapes)");
}

#[test]
fn c4_series_and_quadrature_backends_agree() {
    let shape = SkewShape::straight(&[2, 1]).unwrap();
    let fillings: Vec<_> = enumerate_ssyt(&shape, 6).collect();
    assert_eq!(fillings.len(), 70);
    let mut checked = 0;
    for s_re in [-0.75, -0.5, -0.25] {
        let p = point(s_re, 0.0);
        for f in &fillings {
            let g = MultisetGrouping::from_entries(f.entries());
            let series = filling_integral_series(&g, &p);
            let quad = filling_integral_quadrature(&g, &p, 1e-10).unwrap();
            assert!(
                (series - quad).norm() <= 1e-8,
                "entries {:?} at s={s_re}: series {series} quad {quad}",
                f.entries()
            );
            checked += 1;
        }
    }
    println!("[C4] series vs quadrature backend agreement (1e-8): PASS ({checked} per-filling comparisons)");
}

#[test]
fn c5_euler_zagier_duality_at_desk_scale() {
    let m = 10_000;
    let c = trunc(m);
    let oc = ocfg(m);
    let k = ez(&[1, 2]);
    let kd = ez(&[3]);
    let mut failures = Vec::new();
    let mut lines = Vec::new();

    // O-sum comparisons at ell = 0, 1, 2
    for ell in 0..=2u32 {
        let a = osum_ez(&k, ell, c).unwrap();
        let b = osum_ez(&kd, ell, c).unwrap();
        let diff = (a.value.re - b.value.re).abs();
        let bound = a.err_est + b.err_est;
        let ok = diff <= bound;
        lines.push(format!(
            "  osum ell={ell}: |diff| = {diff:.6e}, err sum = {bound:.6e} -> {}",
            if ok { "pass" } else { "FAIL" }
        ));
        if !ok {
            failures.push(format!(
                "osum ell={ell} (diff {diff:.6e} > bound {bound:.6e})"
            ));
        }
    }

    // reference limits anchoring the truncated values to the classical
    // constants (direct-summation oracle values)
    let zeta3 = 1.202_056_903_159_594_3;
    let zeta4 = 1.082_323_233_711_138_2;
    let rhs0 = osum_ez(&kd, 0, c).unwrap();
    assert!(
        (rhs0.value.re - zeta3).abs() <= 1e-7,
        "zeta(3) anchor: {}",
        rhs0.value.re
    );
    let rhs1 = osum_ez(&kd, 1, c).unwrap();
    assert!(
        (rhs1.value.re - zeta4).abs() <= 1e-9,
        "zeta(4) anchor: {}",
        rhs1.value.re
    );
    let lhs0 = osum_ez(&k, 0, c).unwrap();
    assert!(
        (lhs0.value.re - zeta3).abs() <= 5.0 * lhs0.err_est + 1e-6,
        "zeta(1,2) converges to zeta(3): value {}, err {}",
        lhs0.value.re,
        lhs0.err_est
    );

    // interpolated-function comparisons
    for (re, im) in [(-0.5, 0.0), (0.25, 0.0), (0.25, 0.5)] {
        let p = point(re, im);
        let a = ohno_ez_direct(&k, &p, &oc).unwrap();
        let b = ohno_ez_direct(&kd, &p, &oc).unwrap();
        let diff = (a.value - b.value).norm();
        let bound = a.err_est + b.err_est;
        let ok = diff <= bound;
        lines.push(format!(
            "  ohno s={re}+{im}i: |diff| = {diff:.6e}, err sum = {bound:.6e} -> {}",
            if ok { "pass" } else { "FAIL" }
        ));
        if !ok {
            failures.push(format!(
                "ohno s={re}+{im}i (diff {diff:.6e} > bound {bound:.6e})"
            ));
        }
    }

    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("[C5] Euler-Zagier duality at desk scale (M=10^4): {verdict}");
    for l in &lines {
        println!("{l}");
    }
    assert!(
        failures.is_empty(),
        "duality-at-truncation subchecks exceed the stated proxy bound: {}.\n\
         The half-truncation proxy |S(M)-S(M/2)| covers only the fraction 2^p - 1 of a tail \
         decaying like M^-p (less with logarithmic factors), so it undershoots whenever the \
         slow side has p <= 1 or marginally above: the (1,2) side has p = 1 with a log factor \
         at ell = 0, p = 1/2 at s = -1/2, and p = 5/4 with a log factor at s = 1/4. \
         The bound holds at every checked configuration with faster tails.",
        failures.join("; ")
    );
}

/// The truncated-duality proxy bound over the index test set
/// {(1,2), (3), (2,2), (1,1,2)} at ell in {0,1,2}: the O-sum difference
/// against the dual index stays within the summed error proxies.
///
/// KNOWN RED, same root cause as the slow-tail subchecks of the desk-scale
/// test above: for (1,1,2) <-> (4) (every ell) and (1,2) <-> (3) (ell = 0)
/// the slow side's tail carries a logarithmic factor over 1/M and the
/// half-truncation proxy undershoots it at every truncation. The test
/// asserts the bound as stated and the failure message lists the measured
/// violations; the fast-tail combinations pass.
#[test]
fn truncated_duality_proxy_invariant_as_stated() {
    let c = trunc(600);
    let set = [ez(&[1, 2]), ez(&[3]), ez(&[2, 2]), ez(&[1, 1, 2])];
    let mut violations = Vec::new();
    let mut held = 0usize;
    for k in &set {
        let dual = k.dual().unwrap();
        for ell in 0..=2u32 {
            let a = osum_ez(k, ell, c).unwrap();
            let b = osum_ez(&dual, ell, c).unwrap();
            let diff = (a.value.re - b.value.re).abs();
            let bound = a.err_est + b.err_est;
            if diff <= bound {
                held += 1;
            } else {
                violations.push(format!(
                    "  ({k}) vs ({dual}) at ell={ell}: |diff| = {diff:.6e} > err sum = {bound:.6e}"
                ));
            }
        }
    }
    let verdict = if violations.is_empty() {
        "PASS"
    } else {
        "FAIL"
    };
    println!("[invariant] truncated-duality proxy bound over the index test set: {verdict} ({held} of 12 held)");
    assert!(
        violations.is_empty(),
        "truncated duality proxy bound violated at M=600 (and, by tail scaling, at every M):\n{}",
        violations.join("\n")
    );
}

/// Literal six-series evaluator for the shape-(2,1) interpolation: the
/// plateau strata n11=n12<n21 and n11<n12=n21 contribute three series each,
/// and the two all-distinct strata carry the generic kernel. Power lookup
/// tables keep the triple loop affordable; the series structure itself is
/// written out literally.
fn def21_evaluator(k: &[u32; 3], s: Complex64, max_entry: u32) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let [k11, k12, k21] = *k;
    let mm = max_entry as usize;
    let mut p11 = vec![0.0f64; mm + 1]; // n^{-k11}
    let mut p12 = vec![0.0f64; mm + 1];
    let mut p21 = vec![0.0f64; mm + 1];
    let mut spow = vec![Complex64::new(0.0, 0.0); mm + 1]; // n^{-s}
    for n in 1..=mm {
        p11[n] = (n as f64).powi(-(k11 as i32));
        p12[n] = (n as f64).powi(-(k12 as i32));
        p21[n] = (n as f64).powi(-(k21 as i32));
        spow[n] = (-s * (n as f64).ln()).exp();
    }
    let nc = |n: usize| n as f64;
    let mut total = Complex64::new(0.0, 0.0);
    // n11 = n12 = n < m = n21
    for n in 1..=mm {
        for m in n + 1..=mm {
            let base = p11[n] * p12[n] * p21[m];
            let gap = nc(m) - nc(n);
            total += (s + one) * base * spow[n] * (nc(m) / gap);
            total -= base * spow[n] * (nc(n) * nc(m) / (gap * gap));
            total += base * spow[m] * (nc(n) * nc(n) / (gap * gap));
        }
    }
    // n11 = n < n12 = n21 = m
    for n in 1..=mm {
        for m in n + 1..=mm {
            let base = p11[n] * p12[m] * p21[m];
            let gap = nc(n) - nc(m);
            total += (s + one) * base * spow[m] * (nc(n) / gap);
            total -= base * spow[m] * (nc(n) * nc(m) / (gap * gap));
            total += base * spow[n] * (nc(m) * nc(m) / (gap * gap));
        }
    }
    // all-distinct strata: n11 < n12 < n21 and n11 < n21 < n12
    for a in 1..=mm {
        for b in a + 1..=mm {
            for c in b + 1..=mm {
                for (n11, n12, n21) in [(a, b, c), (a, c, b)] {
                    let vals = [n11, n12, n21];
                    let base = p11[n11] * p12[n12] * p21[n21];
                    for i in 0..3 {
                        let mut frac = 1.0f64;
                        for j in 0..3 {
                            if i != j {
                                frac *= nc(vals[j]) / (nc(vals[j]) - nc(vals[i]));
                            }
                        }
                        total += base * spow[vals[i]] * frac;
                    }
                }
            }
        }
    }
    total
}

#[test]
fn c6_shape_21_worked_example() {
    let k = tab(&[2, 1], &[], &[&[1, 2], &[2]]);

    // six-series evaluator vs the production series backend
    let oc = ocfg(500);
    for (re, im) in [(0.0, 0.0), (1.0, 0.0), (-0.5, 0.0)] {
        let s = Complex64::new(re, im);
        let direct = def21_evaluator(&[1, 2, 2], s, 500);
        let prod = ohno_schur(&k, &ComplexPoint::new(s).unwrap(), &oc)
            .unwrap()
            .value;
        assert!(
            (direct - prod).norm() <= 1e-9,
            "s={s}: six-series {direct} vs production {prod}"
        );
    }

    // the four-term stratification equals the Schur sum exactly at every
    // truncation M <= 500
    let lhs = zeta_schur_prefix(&k, 500).unwrap();
    let rhs = zeta_21_stratified_prefix(&k, 500).unwrap();
    for m in 0..500usize {
        assert_eq!(
            lhs[m].to_bits(),
            rhs[m].to_bits(),
            "stratification mismatch at truncation {}",
            m + 1
        );
    }
    // and the prefix values are the standalone evaluations, bitwise
    for m in [1u32, 7, 100, 250, 500] {
        let v = zeta_schur(&k, TruncationConfig::new(m, false).unwrap())
            .unwrap()
            .value
            .re;
        assert_eq!(
            v.to_bits(),
            lhs[m as usize - 1].to_bits(),
            "prefix vs standalone at M={m}"
        );
    }
    println!("[C6] shape-(2,1) worked example: PASS (six-series at 3 points to 1e-9; stratification bitwise-exact at all M <= 500)");
}

#[test]
fn c7_combinatorial_counts_and_dual_involution() {
    // SSYT count
    let s21 = SkewShape::straight(&[2, 1]).unwrap();
    assert_eq!(count_ssyt(&s21, 3), 8);

    // bump tableau counts: C(ell + d - 1, d - 1) for d <= 5, ell <= 6
    fn binom(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
    }
    let shapes = [
        SkewShape::straight(&[1]).unwrap(),
        SkewShape::straight(&[2]).unwrap(),
        SkewShape::straight(&[2, 1]).unwrap(),
        SkewShape::straight(&[2, 2]).unwrap(),
        SkewShape::straight(&[3, 2]).unwrap(),
    ];
    let mut counts = 0;
    for shape in &shapes {
        let d = shape.num_cells() as u64;
        for ell in 0..=6u32 {
            let got = enumerate_bump_tableaux(shape, ell).count() as u64;
            assert_eq!(got, binom(ell as u64 + d - 1, d - 1), "d={d} ell={ell}");
            counts += 1;
        }
    }

    // dual involution and weight conservation, all admissible of weight <= 10
    fn admissible_up_to(w_max: u32) -> Vec<EZIndex> {
        let mut out = Vec::new();
        fn rec(rem: u32, acc: &mut Vec<u32>, out: &mut Vec<EZIndex>) {
            if rem == 0 {
                if acc.last().map(|&e| e >= 2).unwrap_or(false) {
                    out.push(EZIndex::new(acc.clone()).unwrap());
                }
                return;
            }
            for e in 1..=rem {
                acc.push(e);
                rec(rem - e, acc, out);
                acc.pop();
            }
        }
        for w in 2..=w_max {
            rec(w, &mut Vec::new(), &mut out);
        }
        out
    }
    let all = admissible_up_to(10);
    // compositions of w with last part >= 2: 2^(w-2) each, 511 in total
    assert_eq!(all.len(), 511);
    for k in &all {
        let d = k.dual().unwrap();
        assert_eq!(d.dual().unwrap(), *k, "involution failed for {k}");
        assert_eq!(d.weight(), k.weight(), "weight changed for {k}");
    }
    println!(
        "[C7] combinatorial counts: PASS (SSYT count 8; {counts} bump counts; involution + weight over {} indices, zero tolerance)",
        all.len()
    );
}

#[test]
fn c8_schur_duality_on_supported_pairs() {
    let registry = DualRegistry::new();

    // single-column pair (1,1,3) <-> (1,4), M = 500
    let col = TableauIndex::from_column(&ez(&[1, 1, 3]));
    let col_dual = registry.dual_tableau(&col).unwrap();
    assert_eq!(col_dual, TableauIndex::from_column(&ez(&[1, 4])));

    // registered pair: two disconnected columns, where the Schur sum
    // factors per column and duality follows column by column; this makes
    // the registered pair verifiable rather than guessed.
    let pair_a = tab(
        &[2, 2, 2, 1, 1, 1],
        &[1, 1, 1],
        &[&[1], &[1], &[3], &[1], &[1], &[3]],
    );
    let pair_b = tab(&[2, 2, 1, 1], &[1, 1], &[&[1], &[4], &[1], &[4]]);
    registry.register(pair_a.clone(), pair_b.clone()).unwrap();
    assert_eq!(registry.dual_tableau(&pair_a).unwrap(), pair_b);

    let cases: Vec<(&str, TableauIndex, TableauIndex, u32)> = vec![
        ("single-column (1,1,3)<->(1,4)", col, col_dual, 500),
        ("registered disconnected pair", pair_a, pair_b, 30),
    ];

    for (name, a, b, m) in &cases {
        let c = trunc(*m);
        for ell in 0..=1u32 {
            let lhs = osum_schur(a, ell, c).unwrap();
            let rhs = osum_schur(b, ell, c).unwrap();
            let diff = (lhs.value.re - rhs.value.re).abs();
            let bound = lhs.err_est + rhs.err_est + DUALITY_NUMERIC_FLOOR;
            assert!(
                diff <= bound,
                "{name} osum ell={ell}: |diff| {diff:.6e} > {bound:.6e}"
            );
        }
        let oc = ocfg(*m);
        for (re, im) in [(-0.5, 0.0), (0.3, 0.2)] {
            let p = point(re, im);
            let lhs = ohno_schur(a, &p, &oc).unwrap();
            let rhs = ohno_schur(b, &p, &oc).unwrap();
            let diff = (lhs.value - rhs.value).norm();
            let bound = lhs.err_est + rhs.err_est + DUALITY_NUMERIC_FLOOR;
            assert!(
                diff <= bound,
                "{name} ohno s={re}+{im}i: |diff| {diff:.6e} > {bound:.6e}"
            );
        }
    }
    println!(
        "[C8] Schur duality on supported pairs: PASS (osum at ell in {{0,1}}, interpolated at 2 points, within combined err + 1e-9; general-shape duals beyond registered pairs are out of scope)"
    );
}
