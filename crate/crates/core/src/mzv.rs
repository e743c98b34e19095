//! Truncated numerical evaluation of Euler-Zagier and Schur multiple zeta
//! values and their O-sums.
//!
//! Every series is summed by direct enumeration of its index tuples or
//! semistandard fillings with entries bounded by `max_entry`. Each term
//! `1/(n_1^{k_1} ... )` is computed as a single rounding of the exact integer
//! denominator whenever that fits in `u128` (with a floating fallback
//! otherwise), and terms are accumulated in an exact fixed-point sum. Two
//! consequences are load-bearing for the tests: reorganizing the same
//! multiset of terms yields bitwise-equal values, and parallel evaluation is
//! bitwise identical for every thread count.
//!
//! The reported truncation error is the half-truncation proxy
//! `err_est = |S(M) - S(floor(M/2))|`. It is a heuristic: of the right order
//! for geometric-like tails, but it underestimates slowly converging tails
//! carrying logarithmic factors, and it is reported rather than hidden.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::indices::{
    enumerate_bump_tableaux, EZIndex, IndexError, TableauIndex, WeakCompositions,
};
use crate::ohno::pfd::{power_sum_f64, GroupScratch};
use crate::shapes::SsytCursor;
use crate::sum::ExactSum;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("tableau index is outside the convergence domain W (corner exponents must be >= 2)")]
    OutsideW,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("evaluation point out of domain: {0}")]
    Domain(String),
    #[error("quadrature did not reach tolerance {tol:.3e} within {nodes} nodes (last error estimate {best:.3e})")]
    Convergence { tol: f64, nodes: usize, best: f64 },
    #[error("operation requires a different shape: {0}")]
    WrongShape(String),
}

/// Truncation parameters for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationConfig {
    /// Entry bound M; all summation variables run over `[1, M]`.
    pub max_entry: u32,
    /// When set, a half-truncation pass is tracked and reported as `err_est`.
    pub err_proxy_enabled: bool,
}

impl TruncationConfig {
    pub fn new(max_entry: u32, err_proxy_enabled: bool) -> Result<Self, EvalError> {
        if max_entry < 1 {
            return Err(EvalError::Config("max_entry must be at least 1".into()));
        }
        if err_proxy_enabled && max_entry < 2 {
            return Err(EvalError::Config(
                "max_entry must be at least 2 when the error proxy is enabled".into(),
            ));
        }
        Ok(TruncationConfig {
            max_entry,
            err_proxy_enabled,
        })
    }

    pub fn with_max_entry(max_entry: u32) -> Result<Self, EvalError> {
        TruncationConfig::new(max_entry, true)
    }
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig {
            max_entry: 2000,
            err_proxy_enabled: true,
        }
    }
}

/// A truncated evaluation: the value, the half-truncation error proxy
/// (0 when the proxy is disabled), and the entry bound used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub err_est: f64,
    pub max_entry: u32,
}

// ---------------------------------------------------------------------------
// term machinery

/// Exact integer powers `n^k` for `n <= max_entry`, `k <= max_exp`;
/// 0 marks u128 overflow.
pub(crate) struct TermTable {
    pows: Vec<Vec<u128>>,
}

impl TermTable {
    pub(crate) fn new(max_entry: u32, max_exp: u32) -> Self {
        let width = max_entry as usize + 1;
        let mut pows: Vec<Vec<u128>> = Vec::with_capacity(max_exp as usize + 1);
        pows.push(vec![1u128; width]);
        for k in 1..=max_exp as usize {
            let mut row = vec![0u128; width];
            for n in 1..width {
                row[n] = pows[k - 1][n].checked_mul(n as u128).unwrap_or(0);
            }
            pows.push(row);
        }
        TermTable { pows }
    }

    #[inline]
    pub(crate) fn pow(&self, n: u32, k: u32) -> u128 {
        self.pows[k as usize][n as usize]
    }
}

/// `1 / prod values[i]^exps[i]` as a single rounding of the exact integer
/// denominator, falling back to a floating product on u128 overflow.
#[inline]
pub(crate) fn recip_term(values: &[u32], exps: &[u32], table: &TermTable) -> f64 {
    let mut acc: u128 = 1;
    for (&n, &k) in values.iter().zip(exps) {
        if k == 0 {
            continue;
        }
        let p = table.pow(n, k);
        if p == 0 {
            return recip_term_fallback(values, exps);
        }
        match acc.checked_mul(p) {
            Some(a) => acc = a,
            None => return recip_term_fallback(values, exps),
        }
    }
    1.0 / (acc as f64)
}

fn recip_term_fallback(values: &[u32], exps: &[u32]) -> f64 {
    values
        .iter()
        .zip(exps)
        .map(|(&n, &k)| (n as f64).powi(-(k as i32)))
        .product()
}

/// Accumulates the full sum and, when enabled, the sub-sum of terms whose
/// largest summation variable stays within `floor(M/2)`.
struct TruncSink {
    full: ExactSum,
    half: Option<ExactSum>,
    half_limit: u32,
}

impl TruncSink {
    fn new(cfg: TruncationConfig) -> Self {
        TruncSink {
            full: ExactSum::new(),
            half: cfg.err_proxy_enabled.then(ExactSum::new),
            half_limit: cfg.max_entry / 2,
        }
    }

    #[inline]
    fn push(&mut self, term: f64, max_val: u32) {
        self.full.add(term);
        if let Some(h) = &mut self.half {
            if max_val <= self.half_limit {
                h.add(term);
            }
        }
    }

    fn merge(mut self, other: TruncSink) -> TruncSink {
        self.full.merge(&other.full);
        if let (Some(a), Some(b)) = (&mut self.half, &other.half) {
            a.merge(b);
        }
        self
    }

    fn values(&self) -> (f64, f64) {
        let v = self.full.value();
        let h = self.half.as_ref().map(|h| h.value()).unwrap_or(v);
        (v, h)
    }

    fn finish(&self, max_entry: u32) -> EvalResult {
        let (v, h) = self.values();
        EvalResult {
            value: Complex64::new(v, 0.0),
            err_est: (v - h).abs(),
            max_entry,
        }
    }
}

/// Bucket accumulation by largest summation variable; prefix sums give the
/// value at every truncation `1..=max_entry`.
struct PrefixSink {
    buckets: Vec<ExactSum>,
}

impl PrefixSink {
    fn new(max_entry: u32) -> Self {
        PrefixSink {
            buckets: vec![ExactSum::new(); max_entry as usize],
        }
    }

    #[inline]
    fn push(&mut self, term: f64, max_val: u32) {
        self.buckets[max_val as usize - 1].add(term);
    }

    fn prefix_values(&self) -> Vec<f64> {
        let mut running = ExactSum::new();
        self.buckets
            .iter()
            .map(|b| {
                running.merge(b);
                running.value()
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Euler-Zagier enumeration

/// Streams the terms of the truncated nested sum whose first variable equals
/// `first`; remaining variables increase strictly up to `max_entry`.
fn ez_terms_first<F: FnMut(f64, u32)>(
    exps: &[u32],
    max_entry: u32,
    first: u32,
    table: &TermTable,
    push: &mut F,
) {
    let r = exps.len();
    let room = (r - 1) as u32;
    if first == 0 || first + room > max_entry {
        return;
    }
    let mut vals = Vec::with_capacity(r);
    let acc = {
        let p = table.pow(first, exps[0]);
        if p == 0 {
            None
        } else {
            Some(p)
        }
    };
    vals.push(first);
    if r == 1 {
        let term = match acc {
            Some(d) => 1.0 / (d as f64),
            None => recip_term_fallback(&vals, exps),
        };
        push(term, first);
    } else {
        ez_rec(exps, 1, first + 1, max_entry, acc, &mut vals, table, push);
    }
}

#[allow(clippy::too_many_arguments)]
fn ez_rec<F: FnMut(f64, u32)>(
    exps: &[u32],
    pos: usize,
    lo: u32,
    max_entry: u32,
    acc: Option<u128>,
    vals: &mut Vec<u32>,
    table: &TermTable,
    push: &mut F,
) {
    let r = exps.len();
    let hi = max_entry - (r - 1 - pos) as u32;
    let k = exps[pos];
    for n in lo..=hi {
        let next = acc.and_then(|a| {
            let p = table.pow(n, k);
            if p == 0 {
                None
            } else {
                a.checked_mul(p)
            }
        });
        vals.push(n);
        if pos + 1 == r {
            let term = match next {
                Some(d) => 1.0 / (d as f64),
                None => recip_term_fallback(vals, exps),
            };
            push(term, n);
        } else {
            ez_rec(exps, pos + 1, n + 1, max_entry, next, vals, table, push);
        }
        vals.pop();
    }
}

/// Parallel scan over first-variable partitions, reduced by exact merges.
fn scan_ez(exps: &[u32], cfg: TruncationConfig, table: &TermTable) -> TruncSink {
    (1..=cfg.max_entry)
        .into_par_iter()
        .map(|first| {
            let mut sink = TruncSink::new(cfg);
            ez_terms_first(exps, cfg.max_entry, first, table, &mut |t, mv| {
                sink.push(t, mv)
            });
            sink
        })
        .reduce(|| TruncSink::new(cfg), TruncSink::merge)
}

/// Truncated Euler-Zagier multiple zeta value
/// `sum over 1 <= n_1 < ... < n_r <= M of prod n_i^{-k_i}`.
pub fn zeta_ez(k: &EZIndex, cfg: TruncationConfig) -> Result<EvalResult, EvalError> {
    if !k.is_admissible() {
        return Err(IndexError::NotAdmissible(k.exponents().to_vec()).into());
    }
    TruncationConfig::new(cfg.max_entry, cfg.err_proxy_enabled)?;
    let kmax = k.exponents().iter().copied().max().unwrap_or(1);
    let table = TermTable::new(cfg.max_entry, kmax);
    Ok(scan_ez(k.exponents(), cfg, &table).finish(cfg.max_entry))
}

/// Values of [`zeta_ez`] at every truncation `1..=max_entry`, from a single
/// enumeration pass (serial).
pub fn zeta_ez_prefix(k: &EZIndex, max_entry: u32) -> Result<Vec<f64>, EvalError> {
    if !k.is_admissible() {
        return Err(IndexError::NotAdmissible(k.exponents().to_vec()).into());
    }
    let kmax = k.exponents().iter().copied().max().unwrap_or(1);
    let table = TermTable::new(max_entry, kmax);
    let mut sink = PrefixSink::new(max_entry);
    for first in 1..=max_entry {
        ez_terms_first(k.exponents(), max_entry, first, &table, &mut |t, mv| {
            sink.push(t, mv)
        });
    }
    Ok(sink.prefix_values())
}

/// O-sum of an Euler-Zagier index: the sum of `zeta_ez(k + eps)` over all
/// weak compositions `eps` of `ell`, evaluated at the same truncation and
/// accumulated in one exact pass.
pub fn osum_ez(k: &EZIndex, ell: u32, cfg: TruncationConfig) -> Result<EvalResult, EvalError> {
    Ok(osum_ez_sink(k, ell, cfg)?.finish(cfg.max_entry))
}

fn osum_ez_sink(k: &EZIndex, ell: u32, cfg: TruncationConfig) -> Result<TruncSink, EvalError> {
    if !k.is_admissible() {
        return Err(IndexError::NotAdmissible(k.exponents().to_vec()).into());
    }
    TruncationConfig::new(cfg.max_entry, cfg.err_proxy_enabled)?;
    let kmax = k.exponents().iter().copied().max().unwrap_or(1) + ell;
    let table = TermTable::new(cfg.max_entry, kmax);
    let mut master = TruncSink::new(cfg);
    for comp in WeakCompositions::new(ell, k.depth()) {
        let bumped: Vec<u32> = k
            .exponents()
            .iter()
            .zip(&comp)
            .map(|(&a, &b)| a + b)
            .collect();
        master = master.merge(scan_ez(&bumped, cfg, &table));
    }
    Ok(master)
}

pub(crate) fn osum_ez_full_half(
    k: &EZIndex,
    ell: u32,
    cfg: TruncationConfig,
) -> Result<(f64, f64), EvalError> {
    Ok(osum_ez_sink(k, ell, cfg)?.values())
}

// ---------------------------------------------------------------------------
// Schur enumeration

fn check_in_w(k: &TableauIndex) -> Result<(), EvalError> {
    if k.is_in_w() {
        Ok(())
    } else {
        Err(EvalError::OutsideW)
    }
}

/// Parallel scan over fillings partitioned by the first cell's value.
fn scan_schur(k: &TableauIndex, cfg: TruncationConfig, table: &TermTable) -> TruncSink {
    let exps = k.exponents();
    let shape = k.shape();
    (1..=cfg.max_entry)
        .into_par_iter()
        .map(|first| {
            let mut sink = TruncSink::new(cfg);
            let mut cursor = SsytCursor::new(shape, cfg.max_entry, Some(first));
            while let Some(entries) = cursor.advance() {
                let term = recip_term(entries, exps, table);
                let max_val = entries.iter().copied().max().expect("nonempty shape");
                sink.push(term, max_val);
            }
            sink
        })
        .reduce(|| TruncSink::new(cfg), TruncSink::merge)
}

/// Truncated Schur multiple zeta value: the sum of `prod n_ij^{-k_ij}` over
/// all semistandard fillings with entries bounded by `max_entry`.
pub fn zeta_schur(k: &TableauIndex, cfg: TruncationConfig) -> Result<EvalResult, EvalError> {
    check_in_w(k)?;
    TruncationConfig::new(cfg.max_entry, cfg.err_proxy_enabled)?;
    let kmax = k.exponents().iter().copied().max().unwrap_or(1);
    let table = TermTable::new(cfg.max_entry, kmax);
    Ok(scan_schur(k, cfg, &table).finish(cfg.max_entry))
}

/// Values of [`zeta_schur`] at every truncation `1..=max_entry`, from a
/// single enumeration pass (serial).
pub fn zeta_schur_prefix(k: &TableauIndex, max_entry: u32) -> Result<Vec<f64>, EvalError> {
    check_in_w(k)?;
    let kmax = k.exponents().iter().copied().max().unwrap_or(1);
    let table = TermTable::new(max_entry, kmax);
    let mut sink = PrefixSink::new(max_entry);
    let mut cursor = SsytCursor::new(k.shape(), max_entry, None);
    while let Some(entries) = cursor.advance() {
        let term = recip_term(entries, k.exponents(), &table);
        let max_val = entries.iter().copied().max().expect("nonempty shape");
        sink.push(term, max_val);
    }
    Ok(sink.prefix_values())
}

/// O-sum of a Schur index: the sum of `zeta_schur(k + eps)` over all bump
/// tableaux with `|eps| = ell`. Each bumped index is evaluated by its own
/// enumeration pass (the trustworthy naive mode); see
/// [`osum_schur_fused`] for the single-pass mode.
pub fn osum_schur(
    k: &TableauIndex,
    ell: u32,
    cfg: TruncationConfig,
) -> Result<EvalResult, EvalError> {
    check_in_w(k)?;
    TruncationConfig::new(cfg.max_entry, cfg.err_proxy_enabled)?;
    let kmax = k.exponents().iter().copied().max().unwrap_or(1) + ell;
    let table = TermTable::new(cfg.max_entry, kmax);
    let mut master = TruncSink::new(cfg);
    for eps in enumerate_bump_tableaux(k.shape(), ell) {
        let bumped = k.plus(&eps)?;
        master = master.merge(scan_schur(&bumped, cfg, &table));
    }
    Ok(master.finish(cfg.max_entry))
}

/// Single-pass O-sum: enumerates fillings once and applies the exact
/// power-sum identity per filling (`sum over |eps| = ell of prod n^{-eps}`
/// expressed through the partial-fraction coefficients of the filling's
/// multiset). Agreement with [`osum_schur`] is itself a correctness check.
pub fn osum_schur_fused(
    k: &TableauIndex,
    ell: u32,
    cfg: TruncationConfig,
) -> Result<EvalResult, EvalError> {
    check_in_w(k)?;
    TruncationConfig::new(cfg.max_entry, cfg.err_proxy_enabled)?;
    let exps_minus_one: Vec<u32> = k.exponents().iter().map(|&e| e - 1).collect();
    let kmax = k.exponents().iter().copied().max().unwrap_or(1);
    let table = TermTable::new(cfg.max_entry, kmax);
    let shape = k.shape();
    let sink = (1..=cfg.max_entry)
        .into_par_iter()
        .map(|first| {
            let mut sink = TruncSink::new(cfg);
            let mut scratch = GroupScratch::new();
            let mut cursor = SsytCursor::new(shape, cfg.max_entry, Some(first));
            while let Some(entries) = cursor.advance() {
                let head = recip_term(entries, &exps_minus_one, &table);
                scratch.group(entries);
                let tail = power_sum_f64(scratch.values(), scratch.multiplicities(), ell);
                let max_val = entries.iter().copied().max().expect("nonempty shape");
                sink.push(head * tail, max_val);
            }
            sink
        })
        .reduce(|| TruncSink::new(cfg), TruncSink::merge);
    Ok(sink.finish(cfg.max_entry))
}

/// Column-factorized O-sum: `sum over l_1 + ... + l_r = ell` of the product
/// of per-column O-sums, all at the same truncation.
pub fn osum_columns(
    cols: &[EZIndex],
    ell: u32,
    cfg: TruncationConfig,
) -> Result<EvalResult, EvalError> {
    if cols.is_empty() {
        return Err(EvalError::Config(
            "osum_columns needs at least one column".into(),
        ));
    }
    for c in cols {
        if !c.is_admissible() {
            return Err(IndexError::NotAdmissible(c.exponents().to_vec()).into());
        }
    }
    // (full, half) per column and per partial bump
    let mut per_col: Vec<Vec<(f64, f64)>> = Vec::with_capacity(cols.len());
    for c in cols {
        let mut row = Vec::with_capacity(ell as usize + 1);
        for l in 0..=ell {
            row.push(osum_ez_full_half(c, l, cfg)?);
        }
        per_col.push(row);
    }
    let mut full = 0.0;
    let mut half = 0.0;
    for comp in WeakCompositions::new(ell, cols.len()) {
        let mut pf = 1.0;
        let mut ph = 1.0;
        for (i, &l) in comp.iter().enumerate() {
            let (f, h) = per_col[i][l as usize];
            pf *= f;
            ph *= h;
        }
        full += pf;
        half += ph;
    }
    Ok(EvalResult {
        value: Complex64::new(full, 0.0),
        err_est: if cfg.err_proxy_enabled {
            (full - half).abs()
        } else {
            0.0
        },
        max_entry: cfg.max_entry,
    })
}

// ---------------------------------------------------------------------------
// the (2,1) stratification

/// The four orderings of the running indices `n11, n12, n21` on shape (2,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stratum21 {
    /// `n11 = n12 < n21`
    EqualInRow,
    /// `n11 < n12 = n21`
    EqualAcross,
    /// `n11 < n12 < n21`
    RowThenColumn,
    /// `n11 < n21 < n12`
    ColumnThenRow,
}

impl std::fmt::Display for Stratum21 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stratum21::EqualInRow => "n11=n12<n21",
            Stratum21::EqualAcross => "n11<n12=n21",
            Stratum21::RowThenColumn => "n11<n12<n21",
            Stratum21::ColumnThenRow => "n11<n21<n12",
        };
        f.write_str(s)
    }
}

fn require_21(k: &TableauIndex) -> Result<[u32; 3], EvalError> {
    let s = k.shape();
    if s.lambda().parts() != [2, 1] || !s.mu().is_empty() {
        return Err(EvalError::WrongShape(format!(
            "expected shape (2,1), got {}",
            s
        )));
    }
    let e = k.exponents();
    Ok([e[0], e[1], e[2]])
}

/// Rewrites a shape-(2,1) Schur sum as four Euler-Zagier sums by ordering
/// the running indices. Pure rewriting; no admissibility is assumed.
pub fn stratify_21(k: &TableauIndex) -> Result<Vec<(Stratum21, EZIndex)>, EvalError> {
    let [k11, k12, k21] = require_21(k)?;
    let mk = |v: Vec<u32>| EZIndex::new(v).expect("positive exponents");
    Ok(vec![
        (Stratum21::EqualInRow, mk(vec![k11 + k12, k21])),
        (Stratum21::EqualAcross, mk(vec![k11, k12 + k21])),
        (Stratum21::RowThenColumn, mk(vec![k11, k12, k21])),
        (Stratum21::ColumnThenRow, mk(vec![k11, k21, k12])),
    ])
}

/// Streams the four strata's terms; every term carries the same cellwise
/// power multiset as the corresponding filling term in [`zeta_schur`], so
/// the two routes produce bitwise-identical term multisets.
fn stratified_terms_first<F: FnMut(f64, u32)>(
    exps: &[u32; 3],
    max_entry: u32,
    first: u32,
    table: &TermTable,
    push: &mut F,
) {
    let &[k11, k12, k21] = exps;
    let a = first;
    if a >= max_entry {
        return;
    }
    // n11 = n12 = a < m = n21
    for m in a + 1..=max_entry {
        push(recip_term(&[a, a, m], &[k11, k12, k21], table), m);
    }
    // n11 = a < n12 = n21 = m
    for m in a + 1..=max_entry {
        push(recip_term(&[a, m, m], &[k11, k12, k21], table), m);
    }
    // all distinct: a < b < c covers both n11<n12<n21 and n11<n21<n12
    for b in a + 1..max_entry {
        for c in b + 1..=max_entry {
            push(recip_term(&[a, b, c], &[k11, k12, k21], table), c);
            push(recip_term(&[a, c, b], &[k11, k12, k21], table), c);
        }
    }
}

/// Evaluates the shape-(2,1) Schur zeta through its four-stratum
/// reorganization, in one exact accumulation. By construction this agrees
/// with [`zeta_schur`] bitwise at every truncation; asserting that equality
/// is the point of the stratification checks.
pub fn zeta_21_stratified(
    k: &TableauIndex,
    cfg: TruncationConfig,
) -> Result<EvalResult, EvalError> {
    check_in_w(k)?;
    let exps = require_21(k)?;
    TruncationConfig::new(cfg.max_entry, cfg.err_proxy_enabled)?;
    let kmax = exps.iter().copied().max().unwrap_or(1) * 2;
    let table = TermTable::new(cfg.max_entry, kmax);
    let sink = (1..=cfg.max_entry)
        .into_par_iter()
        .map(|first| {
            let mut sink = TruncSink::new(cfg);
            stratified_terms_first(&exps, cfg.max_entry, first, &table, &mut |t, mv| {
                sink.push(t, mv)
            });
            sink
        })
        .reduce(|| TruncSink::new(cfg), TruncSink::merge);
    Ok(sink.finish(cfg.max_entry))
}

/// Values of [`zeta_21_stratified`] at every truncation `1..=max_entry`.
pub fn zeta_21_stratified_prefix(k: &TableauIndex, max_entry: u32) -> Result<Vec<f64>, EvalError> {
    check_in_w(k)?;
    let exps = require_21(k)?;
    let kmax = exps.iter().copied().max().unwrap_or(1) * 2;
    let table = TermTable::new(max_entry, kmax);
    let mut sink = PrefixSink::new(max_entry);
    for first in 1..=max_entry {
        stratified_terms_first(&exps, max_entry, first, &table, &mut |t, mv| {
            sink.push(t, mv)
        });
    }
    Ok(sink.prefix_values())
}
