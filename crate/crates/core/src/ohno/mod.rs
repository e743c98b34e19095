//! The complex interpolation `I_k(s)` of the O-sum.
//!
//! The default backend is the explicit series: per filling, group equal
//! entries, decompose `prod (w+n_a)^{-r_a}` exactly into partial fractions,
//! and sum `n_a^{-(s+l)} * binom-factor * D[a][l]` over the table; the
//! rational coefficients become floating complex only at the final
//! multiplication. The series converges for `Re(s) > -1`. The quadrature
//! backend evaluates the defining improper integral directly and is
//! restricted to the strip `-1 < Re(s) < 0`; it exists to cross-validate
//! the series, not to replace it.

pub mod pfd;
pub mod quad;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::indices::{EZIndex, IndexError, TableauIndex};
use crate::mzv::{recip_term, EvalError, EvalResult, TermTable, TruncationConfig};
use crate::shapes::SsytCursor;
use crate::sum::ExactSum;

pub use pfd::{group_filling, pfd_coefficients, MultisetGrouping, PfdTable};
pub use quad::filling_integral_quadrature;

use pfd::{inverse_gap_products, GroupScratch};

/// Additive floor on duality-check thresholds, covering floating noise when
/// both truncation errors vanish (e.g. self-dual indices).
pub const DUALITY_NUMERIC_FLOOR: f64 = 1e-9;

/// An evaluation point for the interpolated function: `Re(s) > -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    s: Complex64,
}

impl ComplexPoint {
    pub fn new(s: Complex64) -> Result<Self, EvalError> {
        if !s.re.is_finite() || !s.im.is_finite() {
            return Err(EvalError::Domain("evaluation point must be finite".into()));
        }
        if s.re <= -1.0 {
            return Err(EvalError::Domain("evaluation requires Re(s) > -1".into()));
        }
        Ok(ComplexPoint { s })
    }

    pub fn real(x: f64) -> Result<Self, EvalError> {
        ComplexPoint::new(Complex64::new(x, 0.0))
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    /// Whether the quadrature backend's strip `-1 < Re(s) < 0` applies.
    pub fn in_quadrature_strip(&self) -> bool {
        self.s.re < 0.0
    }
}

/// Evaluation parameters for the interpolated function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OhnoConfig {
    pub max_entry: u32,
    pub quad_abs_tol: f64,
    pub err_proxy_enabled: bool,
}

impl OhnoConfig {
    pub fn new(
        max_entry: u32,
        quad_abs_tol: f64,
        err_proxy_enabled: bool,
    ) -> Result<Self, EvalError> {
        if quad_abs_tol.is_nan() || quad_abs_tol <= 0.0 {
            return Err(EvalError::Config("quad_abs_tol must be positive".into()));
        }
        TruncationConfig::new(max_entry, err_proxy_enabled)?;
        Ok(OhnoConfig {
            max_entry,
            quad_abs_tol,
            err_proxy_enabled,
        })
    }

    pub fn with_max_entry(max_entry: u32) -> Result<Self, EvalError> {
        OhnoConfig::new(max_entry, 1e-10, true)
    }

    fn truncation(&self) -> TruncationConfig {
        TruncationConfig {
            max_entry: self.max_entry,
            err_proxy_enabled: self.err_proxy_enabled,
        }
    }
}

impl Default for OhnoConfig {
    fn default() -> Self {
        OhnoConfig {
            max_entry: 2000,
            quad_abs_tol: 1e-10,
            err_proxy_enabled: true,
        }
    }
}

/// `prod_{p=1}^{ell-1} (s + ell - p)/(ell - p)`, the generalized binomial
/// factor; the empty product is 1. Evaluated as one quotient of integer-
/// valued products so nonnegative integer `s = m` gives `C(m+ell-1, ell-1)`
/// exactly.
pub fn gen_binom_factor(s: Complex64, ell: u32) -> Complex64 {
    let mut num = Complex64::new(1.0, 0.0);
    let mut den = 1.0f64;
    for p in 1..ell {
        num *= s + Complex64::new((ell - p) as f64, 0.0);
        den *= (ell - p) as f64;
    }
    num / den
}

/// Closed form of `int_0^inf w^{-s-1} (w+n)^{-r} dw` on `-r < Re(s) < 0`:
/// `-pi/sin(pi s) * n^{-(s+r)} * prod_{l=1}^{r-1} (s+r-l)/(r-l)`.
///
/// Real integer `s` inside the strip (possible for `r >= 2`) is rejected:
/// the analytic limit exists there but the reflection factor is a 0/0 form.
pub fn beta_closed_form(n: u32, r: u32, s: Complex64) -> Result<Complex64, EvalError> {
    if n == 0 || r == 0 {
        return Err(EvalError::Config(
            "beta_closed_form requires n, r >= 1".into(),
        ));
    }
    if !(s.re > -(r as f64) && s.re < 0.0) {
        return Err(EvalError::Domain(format!(
            "beta_closed_form requires -{r} < Re(s) < 0"
        )));
    }
    if s.im == 0.0 && s.re == s.re.trunc() {
        return Err(EvalError::Domain(
            "integer s is a pole of the reflection factor".into(),
        ));
    }
    let pi = std::f64::consts::PI;
    let reflection = -pi / (Complex64::new(pi, 0.0) * s).sin();
    let npow = (-(s + Complex64::new(r as f64, 0.0)) * (n as f64).ln()).exp();
    Ok(reflection * npow * gen_binom_factor(s, r))
}

/// The per-filling series value
/// `sum_a sum_l n_a^{-(s+l)} * genbinom(s,l) * D[a][l]` with exact partial
/// fraction coefficients. Valid for `Re(s) > -1`.
pub fn filling_integral_series(g: &MultisetGrouping, s: &ComplexPoint) -> Complex64 {
    let table = pfd_coefficients(g);
    let coeffs = table.to_f64();
    let sv = s.s();
    let mut total = Complex64::new(0.0, 0.0);
    for (alpha, &(n, r)) in g.groups().iter().enumerate() {
        let ln_n = (n as f64).ln();
        for ell in 1..=r {
            let npow = (-(sv + Complex64::new(ell as f64, 0.0)) * ln_n).exp();
            total += npow * gen_binom_factor(sv, ell) * coeffs[alpha][ell as usize - 1];
        }
    }
    total
}

// ---------------------------------------------------------------------------
// truncated sums over fillings

/// Complex variant of the truncation sink: exact accumulators for the real
/// and imaginary parts, full and half truncation.
struct ComplexTruncSink {
    full_re: ExactSum,
    full_im: ExactSum,
    half: Option<(ExactSum, ExactSum)>,
    half_limit: u32,
}

impl ComplexTruncSink {
    fn new(cfg: TruncationConfig) -> Self {
        ComplexTruncSink {
            full_re: ExactSum::new(),
            full_im: ExactSum::new(),
            half: cfg
                .err_proxy_enabled
                .then(|| (ExactSum::new(), ExactSum::new())),
            half_limit: cfg.max_entry / 2,
        }
    }

    #[inline]
    fn push(&mut self, term: Complex64, max_val: u32) {
        self.full_re.add(term.re);
        self.full_im.add(term.im);
        if let Some((re, im)) = &mut self.half {
            if max_val <= self.half_limit {
                re.add(term.re);
                im.add(term.im);
            }
        }
    }

    fn merge(mut self, other: ComplexTruncSink) -> ComplexTruncSink {
        self.full_re.merge(&other.full_re);
        self.full_im.merge(&other.full_im);
        if let (Some((a, b)), Some((c, d))) = (&mut self.half, &other.half) {
            a.merge(c);
            b.merge(d);
        }
        self
    }

    fn finish(&self, max_entry: u32) -> EvalResult {
        let value = Complex64::new(self.full_re.value(), self.full_im.value());
        let err_est = match &self.half {
            Some((re, im)) => (value - Complex64::new(re.value(), im.value())).norm(),
            None => 0.0,
        };
        EvalResult {
            value,
            err_est,
            max_entry,
        }
    }
}

/// Shared per-evaluation lookup tables for the series backend.
struct SeriesTables {
    /// `n^{-s}` by the principal branch, index by n.
    npow_neg_s: Vec<Complex64>,
    /// `1/n` as a float, index by n.
    recip: Vec<f64>,
    /// Generalized binomial factors by `ell`.
    gbf: Vec<Complex64>,
    /// Exact integer powers for `1/n^ell` factors.
    pow_table: TermTable,
}

impl SeriesTables {
    fn new(s: Complex64, max_entry: u32, max_mult: u32) -> Self {
        let mut npow = Vec::with_capacity(max_entry as usize + 1);
        let mut recip = Vec::with_capacity(max_entry as usize + 1);
        npow.push(Complex64::new(0.0, 0.0));
        recip.push(0.0);
        for n in 1..=max_entry {
            let ln_n = (n as f64).ln();
            npow.push((-s * ln_n).exp());
            recip.push(1.0 / n as f64);
        }
        let gbf = (0..=max_mult).map(|ell| gen_binom_factor(s, ell)).collect();
        SeriesTables {
            npow_neg_s: npow,
            recip,
            gbf,
            pow_table: TermTable::new(max_entry, max_mult),
        }
    }

    /// Series value of one grouped filling; fast path for all-distinct
    /// entries (first-order coefficients are plain inverse gap products),
    /// exact-rational table otherwise.
    fn grouping_value(&self, scratch: &GroupScratch, gaps: &mut Vec<f64>) -> Complex64 {
        let values = scratch.values();
        if scratch.all_distinct() {
            inverse_gap_products(values, gaps);
            let mut total = Complex64::new(0.0, 0.0);
            for (&n, &d) in values.iter().zip(gaps.iter()) {
                // n^{-(s+1)} = n^{-s} * (1/n)
                total += self.npow_neg_s[n as usize] * self.recip[n as usize] * d;
            }
            return total;
        }
        let coeffs = pfd::pfd_f64(values, scratch.multiplicities());
        let mut total = Complex64::new(0.0, 0.0);
        for (alpha, (&n, &r)) in values.iter().zip(scratch.multiplicities()).enumerate() {
            for ell in 1..=r {
                let p = self.pow_table.pow(n, ell);
                let recip_pow = if p != 0 {
                    1.0 / (p as f64)
                } else {
                    (n as f64).powi(-(ell as i32))
                };
                total += self.npow_neg_s[n as usize]
                    * recip_pow
                    * self.gbf[ell as usize]
                    * coeffs[alpha][ell as usize - 1];
            }
        }
        total
    }
}

fn check_in_w(k: &TableauIndex) -> Result<(), EvalError> {
    if k.is_in_w() {
        Ok(())
    } else {
        Err(EvalError::OutsideW)
    }
}

/// The interpolated function on a Schur index, by the explicit series:
/// `sum over fillings N of N^{-(k-1)} * series(group(N), s)`, entries
/// bounded by `cfg.max_entry`. Valid for `Re(s) > -1`.
pub fn ohno_schur(
    k: &TableauIndex,
    s: &ComplexPoint,
    cfg: &OhnoConfig,
) -> Result<EvalResult, EvalError> {
    check_in_w(k)?;
    let cfg_ok = OhnoConfig::new(cfg.max_entry, cfg.quad_abs_tol, cfg.err_proxy_enabled)?;
    let trunc = cfg_ok.truncation();
    let exps_minus_one: Vec<u32> = k.exponents().iter().map(|&e| e - 1).collect();
    let kmax = k.exponents().iter().copied().max().unwrap_or(1);
    let head_table = TermTable::new(cfg.max_entry, kmax);
    let d = k.shape().num_cells() as u32;
    let tables = SeriesTables::new(s.s(), cfg.max_entry, d);
    let shape = k.shape();
    let sink = (1..=cfg.max_entry)
        .into_par_iter()
        .map(|first| {
            let mut sink = ComplexTruncSink::new(trunc);
            let mut scratch = GroupScratch::new();
            let mut gaps = Vec::new();
            let mut cursor = SsytCursor::new(shape, cfg.max_entry, Some(first));
            while let Some(entries) = cursor.advance() {
                let head = recip_term(entries, &exps_minus_one, &head_table);
                scratch.group(entries);
                let inner = tables.grouping_value(&scratch, &mut gaps);
                let max_val = entries.iter().copied().max().expect("nonempty shape");
                sink.push(inner * head, max_val);
            }
            sink
        })
        .reduce(|| ComplexTruncSink::new(trunc), ComplexTruncSink::merge);
    Ok(sink.finish(cfg.max_entry))
}

/// Quadrature-backend assembly of the same truncated sum; restricted to the
/// strip `-1 < Re(s) < 0` and costly (one improper integral per filling).
/// Exists to cross-validate the series backend at small truncations.
pub fn ohno_schur_quadrature(
    k: &TableauIndex,
    s: &ComplexPoint,
    cfg: &OhnoConfig,
) -> Result<EvalResult, EvalError> {
    check_in_w(k)?;
    if !s.in_quadrature_strip() {
        return Err(EvalError::Domain(
            "quadrature backend requires -1 < Re(s) < 0".into(),
        ));
    }
    let cfg_ok = OhnoConfig::new(cfg.max_entry, cfg.quad_abs_tol, cfg.err_proxy_enabled)?;
    let trunc = cfg_ok.truncation();
    let exps_minus_one: Vec<u32> = k.exponents().iter().map(|&e| e - 1).collect();
    let kmax = k.exponents().iter().copied().max().unwrap_or(1);
    let head_table = TermTable::new(cfg.max_entry, kmax);
    let shape = k.shape();
    let results: Result<Vec<ComplexTruncSink>, EvalError> = (1..=cfg.max_entry)
        .into_par_iter()
        .map(|first| {
            let mut sink = ComplexTruncSink::new(trunc);
            let mut cursor = SsytCursor::new(shape, cfg.max_entry, Some(first));
            while let Some(entries) = cursor.advance() {
                let head = recip_term(entries, &exps_minus_one, &head_table);
                let grouping = MultisetGrouping::from_entries(entries);
                let inner = filling_integral_quadrature(&grouping, s, cfg.quad_abs_tol)?;
                let max_val = entries.iter().copied().max().expect("nonempty shape");
                sink.push(inner * head, max_val);
            }
            Ok(sink)
        })
        .collect();
    let sink = results?
        .into_iter()
        .fold(ComplexTruncSink::new(trunc), |acc, s| acc.merge(s));
    Ok(sink.finish(cfg.max_entry))
}

/// The interpolated function on an Euler-Zagier index by the direct series
/// `sum_i sum_{n_1<...<n_r} prod n_j^{-k_j} * n_i^{-s} * prod_{j!=i} n_j/(n_j - n_i)`.
pub fn ohno_ez_direct(
    k: &EZIndex,
    s: &ComplexPoint,
    cfg: &OhnoConfig,
) -> Result<EvalResult, EvalError> {
    if !k.is_admissible() {
        return Err(IndexError::NotAdmissible(k.exponents().to_vec()).into());
    }
    let cfg_ok = OhnoConfig::new(cfg.max_entry, cfg.quad_abs_tol, cfg.err_proxy_enabled)?;
    let trunc = cfg_ok.truncation();
    let m = cfg.max_entry;
    let exps = k.exponents().to_vec();
    let kmax = exps.iter().copied().max().unwrap_or(1);
    let table = TermTable::new(m, kmax);
    let sv = s.s();
    let mut npow = Vec::with_capacity(m as usize + 1);
    npow.push(Complex64::new(0.0, 0.0));
    for n in 1..=m {
        npow.push((-sv * (n as f64).ln()).exp());
    }
    let r = exps.len();
    let sink = (1..=m)
        .into_par_iter()
        .map(|first| {
            let mut sink = ComplexTruncSink::new(trunc);
            let mut vals = vec![0u32; r];
            vals[0] = first;
            if first + (r as u32 - 1) <= m {
                ez_direct_rec(&exps, &mut vals, 1, m, &table, &npow, &mut sink);
            }
            sink
        })
        .reduce(|| ComplexTruncSink::new(trunc), ComplexTruncSink::merge);
    Ok(sink.finish(cfg.max_entry))
}

fn ez_direct_rec(
    exps: &[u32],
    vals: &mut Vec<u32>,
    pos: usize,
    m: u32,
    table: &TermTable,
    npow: &[Complex64],
    sink: &mut ComplexTruncSink,
) {
    let r = exps.len();
    if pos == r {
        let base = recip_term(vals, exps, table);
        let mut inner = Complex64::new(0.0, 0.0);
        for i in 0..r {
            let ni = vals[i];
            let mut frac = 1.0f64;
            for (j, &nj) in vals.iter().enumerate() {
                if j != i {
                    frac *= nj as f64 / (nj as f64 - ni as f64);
                }
            }
            inner += npow[ni as usize] * frac;
        }
        sink.push(inner * base, vals[r - 1]);
        return;
    }
    let hi = m - (r - 1 - pos) as u32;
    for n in vals[pos - 1] + 1..=hi {
        vals[pos] = n;
        ez_direct_rec(exps, vals, pos + 1, m, table, npow, sink);
    }
}

/// One evaluation point of a duality check.
#[derive(Debug, Clone)]
pub struct DualityRow {
    pub s: Complex64,
    pub lhs: EvalResult,
    pub rhs: EvalResult,
    pub abs_diff: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Point-by-point duality report; see [`verify_duality`].
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub rows: Vec<DualityRow>,
}

impl DualityReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Evaluates `I_k(s)` and `I_{k_dual}(s)` at each point and compares the
/// difference against `err_est(lhs) + err_est(rhs) + 1e-9`. Both indices
/// must lie in the diagonally-constant duality domain (single columns
/// qualify automatically).
pub fn verify_duality(
    k: &TableauIndex,
    k_dual: &TableauIndex,
    points: &[ComplexPoint],
    cfg: &OhnoConfig,
) -> Result<DualityReport, EvalError> {
    if !k.is_in_id() || !k_dual.is_in_id() {
        return Err(IndexError::NotInId.into());
    }
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        let lhs = ohno_schur(k, p, cfg)?;
        let rhs = ohno_schur(k_dual, p, cfg)?;
        let abs_diff = (lhs.value - rhs.value).norm();
        let threshold = lhs.err_est + rhs.err_est + DUALITY_NUMERIC_FLOOR;
        rows.push(DualityRow {
            s: p.s(),
            lhs,
            rhs,
            abs_diff,
            threshold,
            pass: abs_diff <= threshold,
        });
    }
    Ok(DualityReport { rows })
}
