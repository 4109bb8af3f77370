//! Randomized two-sided verification of the catalog, inversion stress runs,
//! limit checks and the JSON report.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{QError, QResult};
use crate::identities::{catalog, concluding_small_y, eval_thm_dlidi_rhs, eval_thm_main_rhs, lookup, CatalogReal};
use crate::identities::{DlidiPoint, Identity, MainPoint, ParamKind};
use crate::inversion::{
    gessel_stanton_pair, matrix_b, matrix_binv, round_trip_error, verify_inverse_pair, FGKernel, MpComplex,
    NodeSequences, MP_DEFAULT_BITS,
};
use crate::qcore::QBase;
use crate::scalar::{Dd, Precision, Real, Scalar, ScalarExt};
use crate::series::{SumCtrl, SumResult};

type C64 = Complex<f64>;

/// Minimum distance of any pole factor from zero.
pub const POLE_MARGIN: f64 = 1e-3;
/// Powers of `q` checked by the pole guard.
pub const POLE_DEPTH: usize = 200;
/// Consecutive rejections tolerated before a slot gives up.
pub const MAX_REJECTIONS: usize = 1000;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub identity_ids: Vec<String>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_terms: usize,
    pub precision: Precision,
    #[serde(skip)]
    pub report_path: Option<PathBuf>,
    #[serde(skip)]
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            identity_ids: Vec::new(),
            samples: 50,
            seed: 0,
            tol: 1e-8,
            max_terms: 4000,
            precision: Precision::Double,
            report_path: None,
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> QResult<()> {
        if self.samples < 1 {
            return Err(QError::Domain("samples must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(QError::Domain("tol must be positive".into()));
        }
        if self.max_terms < 1 {
            return Err(QError::Domain("max_terms must be at least 1".into()));
        }
        Ok(())
    }

    pub fn ctrl(&self) -> SumCtrl {
        SumCtrl { max_terms: self.max_terms, ..SumCtrl::default_for(self.precision) }
    }

    /// Selected identities, in request order; all when none are named.
    pub fn identities(&self) -> QResult<Vec<&'static Identity>> {
        if self.identity_ids.is_empty() {
            return Ok(catalog().iter().collect());
        }
        self.identity_ids.iter().map(|id| lookup(id)).collect()
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Generator for one sample slot, keyed by `(seed, id)` with the slot as stream.
pub fn rng_for(seed: u64, id: &str, slot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(id));
    rng.set_stream(slot);
    rng
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..=hi.ln()).exp()
}

fn sign(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen::<bool>() {
        1.0
    } else {
        -1.0
    }
}

pub fn draw(kind: ParamKind, rng: &mut ChaCha8Rng) -> C64 {
    use std::f64::consts::PI;
    match kind {
        ParamKind::Complex { lo, hi } | ParamKind::Base { lo, hi } => {
            let m = log_uniform(rng, lo, hi);
            C64::from_polar(m, rng.gen_range(-PI..PI))
        }
        ParamKind::Real { lo, hi } | ParamKind::RealBase { lo, hi } => {
            let m = log_uniform(rng, lo, hi);
            C64::new(sign(rng) * m, 0.0)
        }
        ParamKind::Phase => C64::from_polar(1.0, rng.gen_range(-PI..PI)),
        ParamKind::Integer { lo, hi } => C64::new(rng.gen_range(lo..=hi) as f64, 0.0),
    }
}

/// One draw, or the reason it was rejected.
pub fn try_sample(identity: &Identity, rng: &mut ChaCha8Rng) -> Result<Vec<C64>, &'static str> {
    let v: Vec<C64> = identity.domain.params.iter().map(|p| draw(p.kind, rng)).collect();
    if let Some(label) = identity.domain.violated(&v) {
        return Err(label);
    }
    if !identity.domain.poles_clear(&v, POLE_MARGIN, POLE_DEPTH) {
        return Err("pole guard");
    }
    Ok(v)
}

/// An accepted assignment and the rejections spent reaching it.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub values: Vec<C64>,
    pub rejections: usize,
}

pub fn sample_params(identity: &Identity, rng: &mut ChaCha8Rng) -> QResult<Sample> {
    for rejections in 0..=MAX_REJECTIONS {
        if let Ok(values) = try_sample(identity, rng) {
            return Ok(Sample { values, rejections });
        }
    }
    Err(QError::ExhaustedRejections { rejections: MAX_REJECTIONS })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    RejectedSample,
    NoConvergence,
}

/// A complex number with both parts as decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Num {
    pub re: String,
    pub im: String,
}

impl Num {
    pub fn of<R: Real>(z: Scalar<R>) -> Num {
        Num { re: z.re.to_decimal(), im: z.im.to_decimal() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonResult {
    pub assignment: Vec<C64>,
    pub lhs: Num,
    pub rhs: Num,
    pub rel_err: f64,
    pub lhs_tail: f64,
    pub rhs_tail: f64,
    pub status: Status,
    pub message: Option<String>,
}

impl ComparisonResult {
    fn errored(assignment: &[C64], e: QError) -> Self {
        let status = match e {
            QError::Pole(_) => Status::RejectedSample,
            QError::NoConvergence { .. } | QError::Overflow(_) => Status::NoConvergence,
            _ => Status::Fail,
        };
        ComparisonResult {
            assignment: assignment.to_vec(),
            lhs: Num { re: "nan".into(), im: "nan".into() },
            rhs: Num { re: "nan".into(), im: "nan".into() },
            rel_err: f64::NAN,
            lhs_tail: f64::NAN,
            rhs_tail: f64::NAN,
            status,
            message: Some(e.to_string()),
        }
    }
}

/// `|l - r| / max(|l|, |r|, 1)`.
pub fn rel_err<R: Real>(l: Scalar<R>, r: Scalar<R>) -> f64 {
    (l - r).modulus() / l.modulus().max(r.modulus()).max(1.0)
}

/// Both sides at `assignment`; pass iff the error is below `tol` and both
/// tails, scaled like the error, are below `tol/10`.
pub fn verify_identity<R: CatalogReal>(identity: &Identity, assignment: &[C64], ctrl: &SumCtrl, tol: f64) -> ComparisonResult {
    let p: Vec<Scalar<R>> = assignment.iter().map(|z| <Scalar<R> as ScalarExt<R>>::from_c64(*z)).collect();
    let sides = identity.lhs::<R>(&p, ctrl).and_then(|l| Ok((l, identity.rhs::<R>(&p, ctrl)?)));
    let (l, r): (SumResult<R>, SumResult<R>) = match sides {
        Ok(v) => v,
        Err(e) => return ComparisonResult::errored(assignment, e),
    };
    let denom = l.value.modulus().max(r.value.modulus()).max(1.0);
    let err = rel_err(l.value, r.value);
    let (lt, rt) = (l.tail_estimate / denom, r.tail_estimate / denom);
    let ok = err < tol && lt < tol / 10.0 && rt < tol / 10.0;
    ComparisonResult {
        assignment: assignment.to_vec(),
        lhs: Num::of(l.value),
        rhs: Num::of(r.value),
        rel_err: err,
        lhs_tail: lt,
        rhs_tail: rt,
        status: if ok { Status::Pass } else { Status::Fail },
        message: None,
    }
}

fn verify_at(precision: Precision, identity: &Identity, a: &[C64], ctrl: &SumCtrl, tol: f64) -> ComparisonResult {
    match precision {
        Precision::Double => verify_identity::<f64>(identity, a, ctrl, tol),
        Precision::Extended => verify_identity::<Dd>(identity, a, ctrl, tol),
    }
}

/// Outcome of one sample slot.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotOutcome {
    pub slot: usize,
    pub rejections: usize,
    pub result: Result<ComparisonResult, String>,
}

/// Draws and evaluates until a sample is not rejected; poles met during
/// evaluation count as rejections.
pub fn run_slot(identity: &Identity, config: &RunConfig, slot: usize) -> SlotOutcome {
    let ctrl = config.ctrl();
    let mut rng = rng_for(config.seed, identity.id, slot as u64);
    let mut rejections = 0;
    loop {
        let s = match sample_params(identity, &mut rng) {
            Ok(s) => s,
            Err(e) => return SlotOutcome { slot, rejections: rejections + MAX_REJECTIONS, result: Err(e.to_string()) },
        };
        rejections += s.rejections;
        let c = verify_at(config.precision, identity, &s.values, &ctrl, config.tol);
        if c.status != Status::RejectedSample {
            return SlotOutcome { slot, rejections, result: Ok(c) };
        }
        rejections += 1;
        if rejections > MAX_REJECTIONS {
            let e = QError::ExhaustedRejections { rejections };
            return SlotOutcome { slot, rejections, result: Err(e.to_string()) };
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WorstCase {
    pub slot: usize,
    pub assignment: BTreeMap<String, Num>,
    pub lhs: Num,
    pub rhs: Num,
    pub rel_err: f64,
    pub status: Status,
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub anchor: String,
    pub accepted: usize,
    pub rejections: usize,
    pub failures: usize,
    pub no_convergence: usize,
    pub max_rel_err: f64,
    pub mean_rel_err: f64,
    pub max_tail: f64,
    pub worst: Option<WorstCase>,
    pub errors: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub identities: usize,
    pub passed: usize,
    pub failed: Vec<String>,
    pub all_passed: bool,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub results: Vec<IdentityReport>,
    pub summary: Summary,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write(&self, path: &std::path::Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_json() + "\n")
    }
}

fn named(identity: &Identity, a: &[C64]) -> BTreeMap<String, Num> {
    identity.param_names().iter().zip(a).map(|(n, z)| (n.to_string(), Num::of::<f64>(*z))).collect()
}

fn summarize(identity: &Identity, outcomes: &[SlotOutcome]) -> IdentityReport {
    let mut r = IdentityReport {
        id: identity.id.into(),
        anchor: identity.anchor.into(),
        accepted: 0,
        rejections: 0,
        failures: 0,
        no_convergence: 0,
        max_rel_err: 0.0,
        mean_rel_err: 0.0,
        max_tail: 0.0,
        worst: None,
        errors: Vec::new(),
        pass: true,
    };
    let mut sum = 0.0;
    let mut worst_key = f64::NEG_INFINITY;
    for o in outcomes {
        r.rejections += o.rejections;
        let c = match &o.result {
            Ok(c) => c,
            Err(e) => {
                r.errors.push(format!("slot {}: {e}", o.slot));
                r.pass = false;
                continue;
            }
        };
        r.accepted += 1;
        match c.status {
            Status::Fail => r.failures += 1,
            Status::NoConvergence => r.no_convergence += 1,
            _ => {}
        }
        if let Some(m) = &c.message {
            r.errors.push(format!("slot {}: {m}", o.slot));
        }
        // failures without a finite error rank above every finite error
        let key = if c.rel_err.is_finite() { c.rel_err } else { f64::INFINITY };
        if c.rel_err.is_finite() {
            sum += c.rel_err;
            r.max_rel_err = r.max_rel_err.max(c.rel_err);
            r.max_tail = r.max_tail.max(c.lhs_tail).max(c.rhs_tail);
        }
        if key > worst_key || (c.status != Status::Pass && r.worst.as_ref().is_some_and(|w| w.status == Status::Pass)) {
            worst_key = key;
            r.worst = Some(WorstCase {
                slot: o.slot,
                assignment: named(identity, &c.assignment),
                lhs: c.lhs.clone(),
                rhs: c.rhs.clone(),
                rel_err: c.rel_err,
                status: c.status,
                message: c.message.clone(),
            });
        }
    }
    if r.accepted > 0 {
        r.mean_rel_err = sum / r.accepted as f64;
    }
    r.pass = r.pass && r.failures == 0 && r.no_convergence == 0 && r.accepted == outcomes.len();
    r
}

/// Full sweep. Unknown ids fail before any evaluation.
pub fn run(config: &RunConfig) -> QResult<Report> {
    config.validate()?;
    let ids = config.identities()?;
    let start = Instant::now();
    let jobs: Vec<(usize, usize)> = (0..ids.len()).flat_map(|i| (0..config.samples).map(move |s| (i, s))).collect();
    let outcomes: Vec<SlotOutcome> = jobs.par_iter().map(|&(i, s)| run_slot(ids[i], config, s)).collect();
    let results: Vec<IdentityReport> =
        ids.iter().enumerate().map(|(i, id)| summarize(id, &outcomes[i * config.samples..(i + 1) * config.samples])).collect();
    let failed: Vec<String> = results.iter().filter(|r| !r.pass).map(|r| r.id.clone()).collect();
    let summary = Summary {
        identities: results.len(),
        passed: results.len() - failed.len(),
        all_passed: failed.is_empty(),
        failed,
        version: VERSION.into(),
        wall_time_s: config.timing.then(|| start.elapsed().as_secs_f64()),
    };
    let report = Report { config: config.clone(), results, summary };
    if let Some(path) = &config.report_path {
        report.write(path).map_err(|e| QError::Domain(format!("cannot write report to {}: {e}", path.display())))?;
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Inversion stress

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kernel {
    Linear,
    GesselStanton,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InversionReport {
    pub kernel: Kernel,
    pub size: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_deviation: f64,
    pub max_bits: usize,
    pub pass: bool,
}

fn inversion_point(rng: &mut ChaCha8Rng) -> (C64, C64, C64) {
    let a = draw(ParamKind::COMPLEX, rng);
    let c = draw(ParamKind::COMPLEX, rng);
    let q = draw(ParamKind::Base { lo: 0.35, hi: 0.85 }, rng);
    (a, c, q)
}

/// Working precision for an `(n+1)`-square pair whose entries reach `scale`.
pub fn bits_for(scale: f64, n: usize) -> usize {
    if !scale.is_finite() {
        return 2 * MP_DEFAULT_BITS;
    }
    let need = (scale * (n + 1) as f64).log2().max(0.0).ceil() as usize + 128;
    need.max(MP_DEFAULT_BITS)
}

fn linear_deviation(a: C64, c: C64, q: C64, n: usize) -> QResult<(f64, usize)> {
    let k64 = FGKernel::<C64>::linear();
    let s64 = NodeSequences::geometric(&a, &c, &q, n)?;
    let scale = matrix_b(&k64, &s64, n)?.max_entry() * matrix_binv(&k64, &s64, n)?.max_entry();
    let bits = bits_for(scale, n);
    let mp = |z: C64| MpComplex::from_c64_bits(z, bits);
    let k = FGKernel::<MpComplex>::linear();
    let s = NodeSequences::geometric(&mp(a), &mp(c), &mp(q), n)?;
    Ok((verify_inverse_pair(&matrix_b(&k, &s, n)?, &matrix_binv(&k, &s, n)?)?, bits))
}

fn gs_deviation(a: C64, p: C64, q: C64, n: usize) -> QResult<(f64, usize)> {
    let (m64, w64) = gessel_stanton_pair(&a, &p, &q, n)?;
    let bits = bits_for(m64.max_entry() * w64.max_entry(), n);
    let mp = |z: C64| MpComplex::from_c64_bits(z, bits);
    let (m, w) = gessel_stanton_pair(&mp(a), &mp(p), &mp(q), n)?;
    Ok((verify_inverse_pair(&m, &w)?, bits))
}

/// Both product orders of the pair against the identity, over `samples`
/// random points.
pub fn run_inversion(kernel: Kernel, size: usize, tol: f64, samples: usize, seed: u64) -> QResult<InversionReport> {
    let tag = match kernel {
        Kernel::Linear => "inversion/linear",
        Kernel::GesselStanton => "inversion/gessel-stanton",
    };
    let outs: Vec<QResult<(f64, usize)>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, tag, i as u64);
            match kernel {
                Kernel::Linear => {
                    let (a, c, q) = inversion_point(&mut rng);
                    linear_deviation(a, c, q, size)
                }
                Kernel::GesselStanton => {
                    let a = draw(ParamKind::COMPLEX, &mut rng);
                    let p = draw(ParamKind::Base { lo: 0.35, hi: 0.85 }, &mut rng);
                    let q = draw(ParamKind::Base { lo: 0.35, hi: 0.85 }, &mut rng);
                    gs_deviation(a, p, q, size)
                }
            }
        })
        .collect();
    let mut max_deviation: f64 = 0.0;
    let mut max_bits = 0;
    for o in outs {
        let (d, b) = o?;
        max_deviation = max_deviation.max(d);
        max_bits = max_bits.max(b);
    }
    Ok(InversionReport { kernel, size, samples, seed, tol, max_deviation, max_bits, pass: max_deviation < tol })
}

/// Largest `|g(a,b)f(x,c) + g(b,c)f(x,a) + g(c,a)f(x,b)|` for the linear
/// kernel over random points in the unit disk.
pub fn triple_identity_residual(samples: usize, seed: u64) -> f64 {
    let k = FGKernel::<C64>::linear();
    (0..samples)
        .map(|i| {
            let mut rng = rng_for(seed, "inversion/triple", i as u64);
            let mut pt = || C64::from_polar(rng.gen_range(0.0f64..1.0).sqrt(), rng.gen_range(-3.15..3.15));
            let (a, b, c, x) = (pt(), pt(), pt(), pt());
            k.triple_residual(&a, &b, &c, &x).norm()
        })
        .fold(0.0, f64::max)
}

/// Largest coefficient error after expanding then reconstructing random
/// coefficients at size `n`, in multiprecision.
pub fn round_trip_stress(n: usize, samples: usize, seed: u64) -> QResult<f64> {
    let outs: Vec<QResult<f64>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, "inversion/round-trip", i as u64);
            let (a, c, q) = inversion_point(&mut rng);
            let g: Vec<C64> = (0..=n).map(|_| draw(ParamKind::COMPLEX, &mut rng)).collect();
            let k64 = FGKernel::<C64>::linear();
            let s64 = NodeSequences::geometric(&a, &c, &q, n)?;
            let scale = matrix_b(&k64, &s64, n)?.max_entry() * matrix_binv(&k64, &s64, n)?.max_entry();
            let bits = bits_for(scale, n);
            let mp = |z: C64| MpComplex::from_c64_bits(z, bits);
            let k = FGKernel::<MpComplex>::linear();
            let s = NodeSequences::geometric(&mp(a), &mp(c), &mp(q), n)?;
            let gm: Vec<MpComplex> = g.iter().map(|z| mp(*z)).collect();
            round_trip_error(&gm, &k, &s)
        })
        .collect();
    outs.into_iter().try_fold(0.0f64, |m, o| Ok(m.max(o?)))
}

// ---------------------------------------------------------------------------
// Limit checks

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitCheck {
    pub name: String,
    pub eps: f64,
    pub discrepancy: f64,
    pub discrepancy_half: f64,
    pub shrink: f64,
    pub pass: bool,
}

/// Discrepancy at `eps` and `eps/2` of a family against its limit.
fn limit_check(name: &str, eps: f64, tol: f64, f: impl Fn(f64) -> QResult<f64>) -> QResult<LimitCheck> {
    let d1 = f(eps)?;
    let d2 = f(eps / 2.0)?;
    let shrink = d1 / d2;
    Ok(LimitCheck {
        name: name.into(),
        eps,
        discrepancy: d1,
        discrepancy_half: d2,
        shrink,
        pass: d1 < tol && shrink >= 1.5,
    })
}

fn sc(z: C64) -> Scalar<f64> {
    z
}

/// The three `→ 0` chains at `points` random points each.
pub fn limit_chains(eps: f64, tol: f64, points: usize, seed: u64) -> QResult<Vec<LimitCheck>> {
    let ctrl = SumCtrl::default_for(Precision::Double);
    let mut out = Vec::new();
    let rf = lookup("rogers_fine")?;
    let grf = lookup("gen_rogers_fine")?;
    let dl = lookup("thm_dlidi")?;
    let cc = lookup("concluding_transform")?;
    for i in 0..points {
        let mut rng = rng_for(seed, "limit/rogers_fine", i as u64);
        let v = sample_params(rf, &mut rng)?.values;
        let limit = rf.rhs::<f64>(&v, &ctrl)?.value;
        out.push(limit_check("gen_rogers_fine -> rogers_fine", eps, tol, |d| {
            let p = [v[0], v[1], C64::new(d, 0.0), v[2], v[3]];
            Ok(rel_err(grf.lhs::<f64>(&p, &ctrl)?.value, limit))
        })?);

        let mut rng = rng_for(seed, "limit/thm_dlidi", i as u64);
        let v = sample_params(dl, &mut rng)?.values;
        let (c, x, t, a1, q) = (v[0], v[1], v[2], v[3], v[5]);
        let qb = QBase::new(sc(q))?;
        let lim = DlidiPoint { c, x, t, upper: vec![a1], lower: vec![C64::new(0.0, 0.0)], q: qb };
        let limit = eval_thm_dlidi_rhs(&lim, &ctrl)?.value;
        out.push(limit_check("thm_main -> thm_dlidi", eps, tol, |d| {
            let pt = MainPoint { a: 1.0 / q, c: c / q, d: C64::new(d, 0.0), x, t, upper: vec![a1], lower: vec![q], q: qb };
            Ok(rel_err(eval_thm_main_rhs(&pt, &ctrl)?.value, limit))
        })?);

        let mut rng = rng_for(seed, "limit/concluding_transform", i as u64);
        let v = sample_params(cc, &mut rng)?.values;
        let limit = cc.rhs::<f64>(&v, &ctrl)?.value;
        let lhs = cc.lhs::<f64>(&v, &ctrl)?.value;
        out.push(limit_check("8W7 at y -> concluding_transform", eps, tol, |y| {
            let w = concluding_small_y::<f64>(&v, C64::new(y, 0.0), &ctrl)?.value;
            Ok(rel_err(w, limit).max(rel_err(w, lhs)))
        })?);
    }
    Ok(out)
}
