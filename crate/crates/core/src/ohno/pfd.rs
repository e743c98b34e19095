//! Exact partial-fraction decomposition of `prod (w + n_a)^{-r_a}` with
//! repeated poles.
//!
//! The coefficient of `1/(w + n_a)^l` is the `(r_a - l)`-th Taylor
//! coefficient of the complementary product around `w = -n_a`. It is
//! computed exactly: each factor is expanded as a binomial series in
//! `u = w + n_a` with rational coefficients, the truncated series are
//! multiplied, and the requested coefficient is read off. Floating
//! conversion happens only at the final multiplication. The integer gaps
//! `n_b - n_a` would cause catastrophic cancellation in a floating
//! decomposition for clustered values, hence the exact route.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mzv::EvalError;
use crate::shapes::Filling;

/// Distinct values with multiplicities, ascending: the multiset `{n_ij}` of
/// a filling, written as `(n_a, r_a)` groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetGrouping {
    groups: Vec<(u32, u32)>,
}

impl MultisetGrouping {
    pub fn new(groups: Vec<(u32, u32)>) -> Result<Self, EvalError> {
        if groups.is_empty() {
            return Err(EvalError::Domain("grouping must be nonempty".into()));
        }
        let ascending = groups.windows(2).all(|w| w[0].0 < w[1].0);
        if !ascending || groups.iter().any(|&(n, r)| n == 0 || r == 0) {
            return Err(EvalError::Domain(
                "grouping values must be positive, strictly increasing, with positive multiplicities"
                    .into(),
            ));
        }
        Ok(MultisetGrouping { groups })
    }

    /// Groups a list of positive entries by value.
    pub fn from_entries(entries: &[u32]) -> Self {
        assert!(!entries.is_empty() && entries.iter().all(|&e| e > 0));
        let mut sorted = entries.to_vec();
        sorted.sort_unstable();
        let mut groups: Vec<(u32, u32)> = Vec::new();
        for v in sorted {
            match groups.last_mut() {
                Some((n, r)) if *n == v => *r += 1,
                _ => groups.push((v, 1)),
            }
        }
        MultisetGrouping { groups }
    }

    pub fn groups(&self) -> &[(u32, u32)] {
        &self.groups
    }

    /// Number of distinct values `R_N`.
    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    /// Total multiplicity, i.e. the number of boxes grouped.
    pub fn total_multiplicity(&self) -> u32 {
        self.groups.iter().map(|&(_, r)| r).sum()
    }
}

/// Groups a filling's entries by value, ascending.
pub fn group_filling(n: &Filling) -> MultisetGrouping {
    MultisetGrouping::from_entries(n.entries())
}

/// Exact partial-fraction coefficients `D[a][l]` with
/// `prod_b (w+n_b)^{-r_b} = sum_a sum_l D[a][l] / (w+n_a)^l`.
#[derive(Debug, Clone)]
pub struct PfdTable {
    groups: Vec<(u32, u32)>,
    coeffs: Vec<Vec<BigRational>>,
}

impl PfdTable {
    pub fn groups(&self) -> &[(u32, u32)] {
        &self.groups
    }

    /// `D[alpha][ell]`, with `alpha` 0-based and `ell` in `1..=r_alpha`.
    pub fn coeff(&self, alpha: usize, ell: u32) -> &BigRational {
        &self.coeffs[alpha][ell as usize - 1]
    }

    /// Evaluates `sum_a sum_l D[a][l]/(w+n_a)^l` exactly; by construction
    /// equal to `prod_b (w+n_b)^{-r_b}` at every rational point away from
    /// the poles.
    pub fn reconstruct_at(&self, w: &BigRational) -> BigRational {
        let mut total = BigRational::zero();
        for (alpha, &(n, r)) in self.groups.iter().enumerate() {
            let base = w + BigRational::from_integer(BigInt::from(n));
            let mut pow = BigRational::one();
            for ell in 1..=r {
                pow *= &base;
                total += self.coeff(alpha, ell) / &pow;
            }
        }
        total
    }

    /// The exact power sum `sum over e_1+...+e_d = m of prod n_i^{-e_i}`
    /// (one `e_i` per box, values repeating with multiplicity), expressed
    /// through the decomposition as
    /// `N * sum_a sum_l C(m+l-1, l-1) n_a^{-(m+l)} D[a][l]` with
    /// `N = prod n_a^{r_a}`.
    pub fn composition_power_sum(&self, m: u32) -> BigRational {
        let mut n_one = BigInt::one();
        for &(n, r) in &self.groups {
            n_one *= BigInt::from(n).pow(r);
        }
        let mut total = BigRational::zero();
        for (alpha, &(n, r)) in self.groups.iter().enumerate() {
            for ell in 1..=r {
                let binom = binomial_big(m + ell - 1, ell - 1);
                let npow = BigInt::from(n).pow(m + ell);
                total += BigRational::new(binom, npow) * self.coeff(alpha, ell);
            }
        }
        BigRational::from_integer(n_one) * total
    }

    /// Coefficients as floating values, in the same layout.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.coeffs
            .iter()
            .map(|col| col.iter().map(rational_to_f64).collect())
            .collect()
    }
}

/// Computes the exact partial-fraction coefficients of the grouping.
pub fn pfd_coefficients(g: &MultisetGrouping) -> PfdTable {
    let groups = g.groups();
    let mut coeffs = Vec::with_capacity(groups.len());
    for (alpha, &(n_a, r_a)) in groups.iter().enumerate() {
        let order = r_a as usize;
        // Taylor coefficients (in u = w + n_a) of prod_{b != a} (u + c_b)^{-r_b}
        let mut poly = vec![BigRational::zero(); order];
        poly[0] = BigRational::one();
        for (beta, &(n_b, r_b)) in groups.iter().enumerate() {
            if beta == alpha {
                continue;
            }
            let gap = n_b as i64 - n_a as i64;
            let factor = binomial_series(gap, r_b, order);
            poly = mul_trunc(&poly, &factor, order);
        }
        let col = (1..=r_a)
            .map(|ell| poly[(r_a - ell) as usize].clone())
            .collect();
        coeffs.push(col);
    }
    PfdTable {
        groups: groups.to_vec(),
        coeffs,
    }
}

/// Taylor coefficients of `(u + c)^{-r}` around `u = 0`:
/// `(-1)^t C(r+t-1, t) c^{-(r+t)}` for `t = 0..len`.
fn binomial_series(c: i64, r: u32, len: usize) -> Vec<BigRational> {
    debug_assert!(c != 0);
    let c_big = BigInt::from(c);
    let mut out = Vec::with_capacity(len);
    let mut binom = BigInt::one();
    let mut cpow = c_big.pow(r);
    for t in 0..len {
        if t > 0 {
            binom = binom * BigInt::from(r as u64 + t as u64 - 1) / BigInt::from(t as u64);
            cpow *= &c_big;
        }
        let numer = if t % 2 == 0 {
            binom.clone()
        } else {
            -binom.clone()
        };
        out.push(BigRational::new(numer, cpow.clone()));
    }
    out
}

fn mul_trunc(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

fn binomial_big(n: u32, k: u32) -> BigInt {
    let mut out = BigInt::one();
    for i in 1..=k {
        out = out * BigInt::from(n - k + i) / BigInt::from(i);
    }
    out
}

/// Rounds an exact rational to f64 via a 64-bit scaled quotient, correct to
/// an ulp over the full magnitude range the coefficients reach.
fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let num = x.numer().to_f64().unwrap_or(if x.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let den = x.denom().to_f64().unwrap_or(f64::INFINITY);
        num / den
    })
}

// ---------------------------------------------------------------------------
// fast floating paths shared by the hot evaluation loops

/// Reusable grouping scratch for per-filling loops.
pub(crate) struct GroupScratch {
    sorted: Vec<u32>,
    vals: Vec<u32>,
    mults: Vec<u32>,
}

impl GroupScratch {
    pub(crate) fn new() -> Self {
        GroupScratch {
            sorted: Vec::new(),
            vals: Vec::new(),
            mults: Vec::new(),
        }
    }

    pub(crate) fn group(&mut self, entries: &[u32]) {
        self.sorted.clear();
        self.sorted.extend_from_slice(entries);
        self.sorted.sort_unstable();
        self.vals.clear();
        self.mults.clear();
        for &v in &self.sorted {
            if self.vals.last() == Some(&v) {
                *self.mults.last_mut().expect("parallel arrays") += 1;
            } else {
                self.vals.push(v);
                self.mults.push(1);
            }
        }
    }

    pub(crate) fn values(&self) -> &[u32] {
        &self.vals
    }

    pub(crate) fn multiplicities(&self) -> &[u32] {
        &self.mults
    }

    pub(crate) fn all_distinct(&self) -> bool {
        self.mults.iter().all(|&r| r == 1)
    }
}

/// First-order coefficients for all-distinct values:
/// `D_i = prod_{j != i} 1/(n_j - n_i)`, exact integer gap products.
pub(crate) fn inverse_gap_products(values: &[u32], out: &mut Vec<f64>) {
    out.clear();
    for (i, &ni) in values.iter().enumerate() {
        let mut acc: i128 = 1;
        let mut overflow = false;
        for (j, &nj) in values.iter().enumerate() {
            if i == j {
                continue;
            }
            match acc.checked_mul(nj as i128 - ni as i128) {
                Some(a) => acc = a,
                None => {
                    overflow = true;
                    break;
                }
            }
        }
        if overflow {
            let mut accf = 1.0f64;
            for (j, &nj) in values.iter().enumerate() {
                if i != j {
                    accf *= nj as f64 - ni as f64;
                }
            }
            out.push(1.0 / accf);
        } else {
            out.push(1.0 / acc as f64);
        }
    }
}

fn binomial_f64(n: u32, k: u32) -> f64 {
    let mut out = 1u64;
    for i in 1..=k as u64 {
        out = out * (n as u64 - k as u64 + i) / i;
    }
    out as f64
}

// Exact rational arithmetic over i128 for the per-filling hot path: the
// same binomial-series multiplication as `pfd_coefficients`, with checked
// operations. Any overflow falls back to the big-rational engine, so the
// result is always an exactly-computed coefficient rounded once to f64.

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Copy)]
struct Rat128 {
    num: i128,
    den: i128,
}

impl Rat128 {
    const ZERO: Rat128 = Rat128 { num: 0, den: 1 };
    const ONE: Rat128 = Rat128 { num: 1, den: 1 };

    fn new(num: i128, den: i128) -> Option<Rat128> {
        // i128::MIN has no absolute value; treat it as overflow
        if den == 0 || num == i128::MIN || den == i128::MIN {
            return None;
        }
        let g = gcd128(num, den).max(1);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg()?;
            den = den.checked_neg()?;
        }
        Some(Rat128 { num, den })
    }

    fn checked_add(self, o: Rat128) -> Option<Rat128> {
        let g = gcd128(self.den, o.den).max(1);
        let (da, db) = (self.den / g, o.den / g);
        let num = self
            .num
            .checked_mul(db)?
            .checked_add(o.num.checked_mul(da)?)?;
        let den = self.den.checked_mul(db)?;
        Rat128::new(num, den)
    }

    fn checked_mul(self, o: Rat128) -> Option<Rat128> {
        let g1 = gcd128(self.num, o.den).max(1);
        let g2 = gcd128(o.num, self.den).max(1);
        let num = (self.num / g1).checked_mul(o.num / g2)?;
        let den = (self.den / g2).checked_mul(o.den / g1)?;
        Rat128::new(num, den)
    }

    fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn binomial_i128(n: u32, k: u32) -> Option<i128> {
    let mut out: i128 = 1;
    for i in 1..=k as i128 {
        out = out.checked_mul(n as i128 - k as i128 + i)? / i;
    }
    Some(out)
}

/// i128 mirror of `pfd_coefficients` followed by `to_f64`; `None` on any
/// intermediate overflow.
fn pfd_rat128(values: &[u32], mults: &[u32]) -> Option<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(values.len());
    for (alpha, (&n_a, &r_a)) in values.iter().zip(mults).enumerate() {
        let order = r_a as usize;
        let mut poly = vec![Rat128::ZERO; order];
        poly[0] = Rat128::ONE;
        let mut scratch = vec![Rat128::ZERO; order];
        for (beta, (&n_b, &r_b)) in values.iter().zip(mults).enumerate() {
            if beta == alpha {
                continue;
            }
            let gap = n_b as i128 - n_a as i128;
            // factor coefficients t = 0..order of (u + gap)^{-r_b}
            let mut factor = Vec::with_capacity(order);
            let mut gap_pow = checked_pow_i128(gap, r_b)?;
            for t in 0..order as u32 {
                if t > 0 {
                    gap_pow = gap_pow.checked_mul(gap)?;
                }
                let binom = binomial_i128(r_b + t - 1, t)?;
                let signed = if t % 2 == 0 {
                    binom
                } else {
                    binom.checked_neg()?
                };
                factor.push(Rat128::new(signed, gap_pow)?);
            }
            for s in scratch.iter_mut() {
                *s = Rat128::ZERO;
            }
            for (i, pi) in poly.iter().enumerate() {
                if pi.num == 0 {
                    continue;
                }
                for (j, fj) in factor.iter().enumerate() {
                    if i + j >= order {
                        break;
                    }
                    scratch[i + j] = scratch[i + j].checked_add(pi.checked_mul(*fj)?)?;
                }
            }
            std::mem::swap(&mut poly, &mut scratch);
        }
        let col: Vec<f64> = (1..=r_a)
            .map(|ell| poly[(r_a - ell) as usize].to_f64())
            .collect();
        out.push(col);
    }
    Some(out)
}

fn checked_pow_i128(base: i128, exp: u32) -> Option<i128> {
    let mut out: i128 = 1;
    for _ in 0..exp {
        out = out.checked_mul(base)?;
    }
    Some(out)
}

/// Exact partial-fraction coefficients as floats: i128 fast path, exact
/// big-rational fallback on overflow.
pub(crate) fn pfd_f64(values: &[u32], mults: &[u32]) -> Vec<Vec<f64>> {
    if let Some(t) = pfd_rat128(values, mults) {
        return t;
    }
    let grouping =
        MultisetGrouping::new(values.iter().copied().zip(mults.iter().copied()).collect())
            .expect("callers pass valid groupings");
    pfd_coefficients(&grouping).to_f64()
}

/// `sum_a sum_l C(m+l-1, l-1) n_a^{-(m+l)} D[a][l]` in floating point; by
/// the power-sum identity this equals
/// `(1/N) * sum over |e| = m of prod n^{-e}` over the grouped boxes.
pub(crate) fn power_sum_f64(values: &[u32], mults: &[u32], m: u32) -> f64 {
    if mults.iter().all(|&r| r == 1) {
        let mut gaps = Vec::with_capacity(values.len());
        inverse_gap_products(values, &mut gaps);
        return values
            .iter()
            .zip(&gaps)
            .map(|(&n, &d)| (n as f64).powi(-(m as i32 + 1)) * d)
            .sum();
    }
    let table = pfd_f64(values, mults);
    let mut total = 0.0;
    for (alpha, (&n, &r)) in values.iter().zip(mults).enumerate() {
        for ell in 1..=r {
            total += binomial_f64(m + ell - 1, ell - 1)
                * (n as f64).powi(-((m + ell) as i32))
                * table[alpha][ell as usize - 1];
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{Filling, SkewShape};
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn grouping_of_a_filling() {
        let shape = SkewShape::straight(&[2, 1]).unwrap();
        let f = Filling::new(shape, vec![1, 1, 2]).unwrap();
        let g = group_filling(&f);
        assert_eq!(g.groups(), &[(1, 2), (2, 1)]);
        assert_eq!(g.total_multiplicity(), f.shape().num_cells() as u32);
        assert_eq!(g.num_groups(), 2);
    }

    fn grouping(groups: &[(u32, u32)]) -> MultisetGrouping {
        MultisetGrouping::new(groups.to_vec()).unwrap()
    }

    /// Direct product `prod (w+n)^{-r}`, the quantity the table must rebuild.
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

    #[test]
    fn simple_poles() {
        // 1/((w+1)(w+2)) = 1/(w+1) - 1/(w+2)
        let t = pfd_coefficients(&grouping(&[(1, 1), (2, 1)]));
        assert_eq!(t.coeff(0, 1), &rat(1, 1));
        assert_eq!(t.coeff(1, 1), &rat(-1, 1));
    }

    #[test]
    fn repeated_pole_example() {
        // 1/((w+1)^2 (w+2)): D[1][2]=1, D[1][1]=-1, D[2][1]=1
        let t = pfd_coefficients(&grouping(&[(1, 2), (2, 1)]));
        assert_eq!(t.coeff(0, 2), &rat(1, 1));
        assert_eq!(t.coeff(0, 1), &rat(-1, 1));
        assert_eq!(t.coeff(1, 1), &rat(1, 1));
    }

    #[test]
    fn reconstruction_exact_at_sample_points() {
        let cases: &[&[(u32, u32)]] = &[
            &[(1, 3)],
            &[(2, 2), (5, 1)],
            &[(1, 1), (2, 2), (9, 3)],
            &[(3, 2), (4, 2), (5, 2)],
        ];
        let points = [rat(1, 3), rat(7, 1)];
        for groups in cases {
            let t = pfd_coefficients(&grouping(groups));
            for w in &points {
                assert_eq!(
                    t.reconstruct_at(w),
                    direct_product(groups, w),
                    "groups {groups:?}"
                );
            }
        }
    }

    #[test]
    fn power_sum_matches_brute_force_exactly() {
        // independent oracle: enumerate weak compositions over the boxes
        fn brute(boxes: &[u32], m: u32) -> BigRational {
            fn rec(boxes: &[u32], pos: usize, rem: u32, acc: BigRational, out: &mut BigRational) {
                if pos + 1 == boxes.len() {
                    let n = BigInt::from(boxes[pos]).pow(rem);
                    *out += acc * BigRational::new(BigInt::one(), n);
                    return;
                }
                for e in 0..=rem {
                    let n = BigInt::from(boxes[pos]).pow(e);
                    rec(
                        boxes,
                        pos + 1,
                        rem - e,
                        acc.clone() * BigRational::new(BigInt::one(), n),
                        out,
                    );
                }
            }
            let mut out = BigRational::zero();
            rec(boxes, 0, m, BigRational::one(), &mut out);
            out
        }
        for boxes in [
            &[2u32, 2, 5][..],
            &[1, 3, 3, 3][..],
            &[4][..],
            &[1, 2, 2, 7, 7][..],
        ] {
            let g = MultisetGrouping::from_entries(boxes);
            let t = pfd_coefficients(&g);
            for m in 0..=4 {
                assert_eq!(
                    t.composition_power_sum(m),
                    brute(boxes, m),
                    "boxes {boxes:?} m {m}"
                );
            }
        }
    }

    #[test]
    fn distinct_fast_path_matches_exact_table() {
        let values = [2u32, 5, 11, 12];
        let mut gaps = Vec::new();
        inverse_gap_products(&values, &mut gaps);
        let t = pfd_coefficients(&grouping(&[(2, 1), (5, 1), (11, 1), (12, 1)]));
        for (i, &g) in gaps.iter().enumerate() {
            let exact = t.coeff(i, 1);
            let approx = BigRational::from_f64(g).unwrap();
            assert!((exact - approx).abs() < rat(1, 1_000_000_000), "i={i}");
        }
        // the fast and general power sums agree
        let fast = power_sum_f64(&values, &[1, 1, 1, 1], 3);
        let exact = pfd_coefficients(&grouping(&[(2, 1), (5, 1), (11, 1), (12, 1)]))
            .composition_power_sum(3)
            .to_f64()
            .unwrap()
            / (2.0 * 5.0 * 11.0 * 12.0);
        assert!((fast - exact).abs() <= 1e-15);
    }

    #[test]
    fn fast_rational_path_matches_big_rational_engine() {
        let cases: &[(&[u32], &[u32])] = &[
            (&[1, 2], &[2, 1]),
            (&[3, 7], &[2, 2]),
            (&[1, 2, 3], &[1, 2, 3]),
            (&[10, 11, 499, 500], &[2, 1, 1, 2]),
            (&[5], &[4]),
        ];
        for &(values, mults) in cases {
            let fast = pfd_f64(values, mults);
            let grouping =
                MultisetGrouping::new(values.iter().copied().zip(mults.iter().copied()).collect())
                    .unwrap();
            let slow = pfd_coefficients(&grouping).to_f64();
            for (a, b) in fast.iter().flatten().zip(slow.iter().flatten()) {
                let scale = b.abs().max(1e-300);
                assert!(
                    ((a - b) / scale).abs() < 1e-14,
                    "values {values:?} mults {mults:?}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn grouping_examples() {
        let g = MultisetGrouping::from_entries(&[1, 1, 2]);
        assert_eq!(g.groups(), &[(1, 2), (2, 1)]);
        let g = MultisetGrouping::from_entries(&[1, 2, 2]);
        assert_eq!(g.groups(), &[(1, 1), (2, 2)]);
        let g = MultisetGrouping::from_entries(&[4, 2, 9]);
        assert_eq!(g.groups(), &[(2, 1), (4, 1), (9, 1)]);
        assert!(g.groups().iter().all(|&(_, r)| r == 1));
        assert!(MultisetGrouping::new(vec![(3, 1), (3, 2)]).is_err());
        assert!(MultisetGrouping::new(vec![]).is_err());
    }
}
