//! Expansion theorems built from the well-poised weight `Ω` and the operator
//! `Δ`, the WP Bailey transform, and the catalog of two-sided identities.

use std::sync::OnceLock;

use num_complex::Complex;
use num_traits::One;

use crate::askey_wilson::{aw_gf_lhs, aw_gf_rhs, AWPoint};
use crate::error::{QError, QResult};
use crate::qcore::{qbinom, Param, Product, QBase};
use crate::scalar::{Dd, Real, Scalar, ScalarExt, Wide};
use crate::series::{
    eval_bilateral, eval_series, eval_series_wide, sum_finite, sum_sequence, vwp_spec, SeriesSpec, SumCtrl, SumResult,
    Variant, WideResult,
};
use crate::term::{shifted_inf, Term};

type C64 = Complex<f64>;

fn sc<R: Real>(x: f64) -> Scalar<R> {
    Scalar::<R>::real(x)
}

fn one<R: Real>() -> Scalar<R> {
    Complex::one()
}

fn log2_add(a: f64, extra: f64) -> f64 {
    if extra <= 0.0 {
        a
    } else {
        (a.exp2() + extra).log2()
    }
}

const K_STOP_NESTED: usize = 20;

/// Sums wide terms that each carry their own absolute tail (as `log2`).
/// With `limit` set the sum is cut after `limit` terms.
fn outer_sum<R, F>(ctrl: &SumCtrl, limit: Option<usize>, mut f: F) -> QResult<WideResult<R>>
where
    R: Real,
    F: FnMut(i64) -> QResult<(Wide<R>, f64)>,
{
    let mut extra = 0.0f64;
    let mut g = |n: usize| -> QResult<Wide<R>> {
        let (v, t) = f(n as i64)?;
        if t > f64::NEG_INFINITY {
            extra += t.exp2();
        }
        Ok(v)
    };
    let mut r = match limit {
        Some(l) => sum_finite(l.saturating_sub(1), &mut g)?,
        None => sum_sequence(ctrl, &mut g)?,
    };
    r.tail_log2 = log2_add(r.tail_log2, extra);
    Ok(r)
}

/// `Σ_{n_1,...,n_m}` of `leaf(n_1, ..., n_m)`, each axis cut by the stop rule
/// or at `limit`.
fn nested_sum<R: Real>(
    depth: usize,
    ctrl: &SumCtrl,
    limit: Option<usize>,
    leaf: &mut dyn FnMut(&[i64]) -> QResult<(Wide<R>, f64)>,
) -> QResult<WideResult<R>> {
    fn level<R: Real>(
        ns: &mut Vec<i64>,
        depth: usize,
        ctrl: &SumCtrl,
        limit: Option<usize>,
        leaf: &mut dyn FnMut(&[i64]) -> QResult<(Wide<R>, f64)>,
    ) -> QResult<(Wide<R>, f64)> {
        if ns.len() == depth {
            return leaf(ns);
        }
        let r = outer_sum(ctrl, limit, |n| {
            ns.push(n);
            let v = level(ns, depth, ctrl, limit, leaf);
            ns.pop();
            v
        })?;
        Ok((r.value, r.tail_log2))
    }
    // slices of a multiple sum are not monotone along an axis
    let ctrl = SumCtrl { k_stop: ctrl.k_stop.max(K_STOP_NESTED), ..*ctrl };
    let mut ns = Vec::with_capacity(depth);
    let (value, tail_log2) = level(&mut ns, depth, &ctrl, limit, leaf)?;
    Ok(WideResult { value, terms_used: 0, terminated_exactly: false, tail_log2 })
}

fn tsum<R, F>(ctrl: &SumCtrl, mut f: F) -> QResult<SumResult<R>>
where
    R: Real,
    F: FnMut(i64) -> QResult<Term<R>>,
{
    sum_sequence(ctrl, |n| f(n as i64).map(Term::wide))?.to_sum()
}

fn phi<R: Real>(num: &[Scalar<R>], den: &[Scalar<R>], q: &QBase<R>, z: Scalar<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    eval_series(&SeriesSpec::phi(num, den, *q, z), ctrl)
}

fn phit<R: Real>(num: &[Scalar<R>], den: &[Scalar<R>], q: &QBase<R>, z: Scalar<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    eval_series(&SeriesSpec::phi_tilde(num, den, *q, z), ctrl)
}

/// `∏(a;q)_∞ / ∏(b;q)_∞`.
fn prods<R: Real>(num: &[Scalar<R>], den: &[Scalar<R>], q: &QBase<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let p = Product::new(ctrl.product_tol()).inf_num(num, q).inf_den(den, q)?;
    Ok(SumResult::exact(p.value(), p.tail()))
}

fn wide_term<R: Real>(w: Term<R>, inner: WideResult<R>) -> (Wide<R>, f64) {
    let w = w.wide();
    (w.mul(inner.value), w.log2_abs() + inner.tail_log2)
}

// ---------------------------------------------------------------------------
// Ω and Δ

fn omega_term<R: Real>(n: i64, x: Scalar<R>, c: Scalar<R>, d: Scalar<R>, q: &QBase<R>) -> QResult<Term<R>> {
    if d.modulus() == 0.0 {
        return Err(QError::Pole("Ω needs d != 0 (q/d undefined)".into()));
    }
    if x.modulus() == 0.0 {
        return Err(QError::Pole("Ω needs x != 0 (cq/x undefined)".into()));
    }
    let qv = q.value();
    Term::one()
        .times(one::<R>() - x * d)
        .times(one::<R>() - c * q.pow(2 * n + 2))
        .pow(x * d, n)
        .pochs(&[qv / d, c * qv / x], q, n)
        .pochs_over(&[c * d * qv, x * qv], q, n + 1)
}

/// `Ω(n;x,c,d) = (1-xd)(1-cq^{2n+2})(xd)^n (q/d, cq/x;q)_n / (cdq, xq;q)_{n+1}`.
pub fn omega_val<R: Real>(n: i64, x: Scalar<R>, c: Scalar<R>, d: Scalar<R>, q: &QBase<R>) -> QResult<Scalar<R>> {
    omega_term(n, x, c, d, q)?.wide().to_scalar()
}

/// The operator `Δ_(n;c,d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaOp<R: Real> {
    pub n: i64,
    pub c: Scalar<R>,
    pub d: Scalar<R>,
}

/// Prepends `(cdq, q^{-n}, cq^{n+2})` above and `(cdq^{n+2}, q^{-n}d)` below.
/// A φ̃ input becomes a φ; a φ input (an earlier Δ output) first has its
/// `(q;q)_k` moved into the lower list.
pub fn apply_delta<R: Real>(op: &DeltaOp<R>, spec: &SeriesSpec<R>) -> QResult<SeriesSpec<R>> {
    let q = &spec.base;
    let mut lower = spec.denominator.clone();
    match spec.variant {
        Variant::PhiTilde => {}
        Variant::Phi => lower.push(Param::qpow_unit(1, q)),
        Variant::PsiBilateral => return Err(QError::Domain("Δ acts on unilateral series only".into())),
    }
    let cd = op.c * op.d;
    let mut numerator = vec![Param::new(cd * q.value()), Param::qpow_unit(-op.n, q), Param::qpow(op.c, op.n + 2, q)];
    numerator.extend(spec.numerator.iter().copied());
    let mut denominator = vec![Param::qpow(cd, op.n + 2, q), Param::qpow(op.d, -op.n, q)];
    denominator.extend(lower);
    Ok(SeriesSpec { variant: Variant::Phi, numerator, denominator, base: *q, argument: spec.argument })
}

// ---------------------------------------------------------------------------
// Expansion theorems

/// A point for the main expansion: `a_1..a_r` above, `b_1..b_s` below.
#[derive(Clone, Debug, PartialEq)]
pub struct MainPoint<R: Real> {
    pub a: Scalar<R>,
    pub c: Scalar<R>,
    pub d: Scalar<R>,
    pub x: Scalar<R>,
    pub t: Scalar<R>,
    pub upper: Vec<Scalar<R>>,
    pub lower: Vec<Scalar<R>>,
    pub q: QBase<R>,
}

fn check_main<R: Real>(pt: &MainPoint<R>) -> QResult<()> {
    if pt.lower.len() < pt.upper.len() {
        return Err(QError::Domain("expansion needs s >= r".into()));
    }
    if (pt.x * pt.d).modulus() >= 1.0 {
        return Err(QError::Domain("expansion needs |xd| < 1".into()));
    }
    Ok(())
}

/// `1/(1-xd) · φ̃[a.., cq/x; b.., xdq; q, xt]`.
pub fn eval_thm_main_lhs<R: Real>(pt: &MainPoint<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    check_main(pt)?;
    let qv = pt.q.value();
    let mut num = pt.upper.clone();
    num.push(pt.c * qv / pt.x);
    let mut den = pt.lower.clone();
    den.push(pt.x * pt.d * qv);
    let s = phit(&num, &den, &pt.q, pt.x * pt.t, ctrl)?;
    Ok(s.scale(one::<R>() / (one::<R>() - pt.x * pt.d)))
}

/// `Σ_n (1-acq^{2n+2})(xd)^n (aq/d, cq/x)_n/(cdq, axq)_{n+1} · Δ_(n;ac,d/a){φ̃[a..;b..;q,t/a]}`.
pub fn eval_thm_main_rhs<R: Real>(pt: &MainPoint<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    check_main(pt)?;
    let q = &pt.q;
    let qv = q.value();
    let (a, c, d, x) = (pt.a, pt.c, pt.d, pt.x);
    if a.modulus() == 0.0 {
        return Err(QError::Domain("expansion needs a != 0".into()));
    }
    let base = SeriesSpec::phi_tilde(&pt.upper, &pt.lower, *q, pt.t / a);
    let r = outer_sum(ctrl, None, |n| {
        let w = Term::one()
            .times(one::<R>() - a * c * q.pow(2 * n + 2))
            .pow(x * d, n)
            .pochs(&[a * qv / d, c * qv / x], q, n)
            .pochs_over(&[c * d * qv, a * x * qv], q, n + 1)?;
        let inner = eval_series_wide(&apply_delta(&DeltaOp { n, c: a * c, d: d / a }, &base)?, ctrl)?;
        Ok(wide_term(w, inner))
    })?;
    r.to_sum()
}

/// A point for the `d → 0` expansion: `a_1..a_{r}` above, `b_1..b_s` below.
#[derive(Clone, Debug, PartialEq)]
pub struct DlidiPoint<R: Real> {
    pub c: Scalar<R>,
    pub x: Scalar<R>,
    pub t: Scalar<R>,
    pub upper: Vec<Scalar<R>>,
    pub lower: Vec<Scalar<R>>,
    pub q: QBase<R>,
}

/// `φ[a.., c/x; b..; q, xt]`.
pub fn eval_thm_dlidi_lhs<R: Real>(pt: &DlidiPoint<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let mut num = pt.upper.clone();
    num.push(pt.c / pt.x);
    phi(&num, &pt.lower, &pt.q, pt.x * pt.t, ctrl)
}

/// `Σ_n (c/x)_n/(x)_{n+1} (1-cq^{2n}) τ(n) x^n · φ[q^{-n}, a.., cq^n; b.., q; q, tq]`.
pub fn eval_thm_dlidi_rhs<R: Real>(pt: &DlidiPoint<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let q = &pt.q;
    let (c, x) = (pt.c, pt.x);
    let r = outer_sum(ctrl, None, |n| {
        let w = Term::one()
            .poch(c / x, q, n)
            .poch_over(x, q, n + 1)?
            .times(one::<R>() - c * q.pow(2 * n))
            .tau(n, q)
            .pow(x, n);
        let mut num = vec![Param::qpow_unit(-n, q)];
        num.extend(pt.upper.iter().map(|a| Param::new(*a)));
        num.push(Param::qpow(c, n, q));
        let mut den: Vec<Param<R>> = pt.lower.iter().map(|b| Param::new(*b)).collect();
        den.push(Param::qpow_unit(1, q));
        let spec = SeriesSpec::new(Variant::Phi, num, den, *q, pt.t * q.value())?;
        Ok(wide_term(w, eval_series_wide(&spec, ctrl)?))
    })?;
    r.to_sum()
}

pub fn eval_thm_dlidi<R: Real>(pt: &DlidiPoint<R>, ctrl: &SumCtrl) -> QResult<(SumResult<R>, SumResult<R>)> {
    Ok((eval_thm_dlidi_lhs(pt, ctrl)?, eval_thm_dlidi_rhs(pt, ctrl)?))
}

/// A point for the multiple expansion with `m = x.len()` weight triples.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoint<R: Real> {
    pub upper: Vec<Scalar<R>>,
    pub lower: Vec<Scalar<R>>,
    pub t: Scalar<R>,
    pub x: Vec<Scalar<R>>,
    pub c: Vec<Scalar<R>>,
    pub d: Vec<Scalar<R>>,
    pub q: QBase<R>,
}

fn check_multi<R: Real>(m: usize, pt: &MultiPoint<R>) -> QResult<()> {
    if !(1..=3).contains(&m) || pt.x.len() != m || pt.c.len() != m || pt.d.len() != m {
        return Err(QError::Domain(format!("multiple expansion needs m in 1..=3 with m triples, got m = {m}")));
    }
    if pt.x.iter().zip(&pt.d).any(|(x, d)| (*x * *d).modulus() >= 1.0) {
        return Err(QError::Domain("multiple expansion needs |x_i d_i| < 1".into()));
    }
    Ok(())
}

/// `Σ_n ∏(a)_n t^n/∏(b)_n · ∏_i (c_i q/x_i)_n x_i^n/(x_i d_i q)_n`.
pub fn eval_multi_lhs<R: Real>(pt: &MultiPoint<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    check_multi(pt.x.len(), pt)?;
    let qv = pt.q.value();
    let mut num = pt.upper.clone();
    let mut den = pt.lower.clone();
    let mut z = pt.t;
    for i in 0..pt.x.len() {
        num.push(pt.c[i] * qv / pt.x[i]);
        den.push(pt.x[i] * pt.d[i] * qv);
        z = z * pt.x[i];
    }
    phit(&num, &den, &pt.q, z, ctrl)
}

/// `Σ_{n_1..n_m} ∏ Ω(n_i; x_i, c_i, d_i) · Δ_m ⋯ Δ_1 {φ̃[a..; b..; q, t]}`;
/// `outer` fixes the per-axis truncation.
pub fn eval_multi_rhs<R: Real>(pt: &MultiPoint<R>, ctrl: &SumCtrl, outer: Option<usize>) -> QResult<SumResult<R>> {
    let m = pt.x.len();
    check_multi(m, pt)?;
    let q = &pt.q;
    let base = SeriesSpec::phi_tilde(&pt.upper, &pt.lower, *q, pt.t);
    let mut leaf = |ns: &[i64]| -> QResult<(Wide<R>, f64)> {
        let mut w = Term::one();
        let mut spec = base.clone();
        for (i, &n) in ns.iter().enumerate() {
            w = w.times_wide(omega_term(n, pt.x[i], pt.c[i], pt.d[i], q)?.wide());
            spec = apply_delta(&DeltaOp { n, c: pt.c[i], d: pt.d[i] }, &spec)?;
        }
        Ok(wide_term(w, eval_series_wide(&spec, ctrl)?))
    };
    nested_sum(m, ctrl, outer, &mut leaf)?.to_sum()
}

pub fn eval_multi<R: Real>(
    m: usize,
    pt: &MultiPoint<R>,
    ctrl: &SumCtrl,
    outer: Option<usize>,
) -> QResult<(SumResult<R>, SumResult<R>)> {
    check_multi(m, pt)?;
    Ok((eval_multi_lhs(pt, ctrl)?, eval_multi_rhs(pt, ctrl, outer)?))
}

/// `β_n = Σ_k (bt)_{n+k}(b)_{n-k}/((q)_{n-k}(tq)_{n+k}) α_k`, reading
/// `alpha[0..=n]`.
pub fn wp_bailey_beta<R: Real>(alpha: &[Scalar<R>], t: Scalar<R>, b: Scalar<R>, n: usize, q: &QBase<R>) -> QResult<Scalar<R>> {
    if alpha.len() <= n {
        return Err(QError::Domain(format!("β_{n} needs α_0..α_{n}")));
    }
    let qv = q.value();
    let n = n as i64;
    let r = sum_finite(n as usize, |k| {
        let k = k as i64;
        Ok(Term::one()
            .poch(b * t, q, n + k)
            .poch(b, q, n - k)
            .poch_over(qv, q, n - k)?
            .poch_over(t * qv, q, n + k)?
            .times(alpha[k as usize])
            .wide())
    })?;
    r.value.to_scalar()
}

// ---------------------------------------------------------------------------
// Catalog types

/// How the sampler draws one parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ParamKind {
    /// Complex, modulus log-uniform in `[lo, hi]`, uniform phase.
    Complex { lo: f64, hi: f64 },
    /// Real, modulus log-uniform in `[lo, hi]`, random sign.
    Real { lo: f64, hi: f64 },
    /// Complex base.
    Base { lo: f64, hi: f64 },
    /// Real base, random sign.
    RealBase { lo: f64, hi: f64 },
    /// `e^{iθ}` with θ uniform.
    Phase,
    /// Integer in `lo..=hi`, stored as a real scalar.
    Integer { lo: i64, hi: i64 },
}

impl ParamKind {
    pub const COMPLEX: ParamKind = ParamKind::Complex { lo: 0.15, hi: 0.85 };
    pub const BASE: ParamKind = ParamKind::Base { lo: 0.2, hi: 0.8 };
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
}

/// A labeled inequality on an assignment.
#[derive(Clone, Copy, Debug)]
pub struct Constraint {
    pub label: &'static str,
    pub holds: fn(&[C64]) -> bool,
}

/// The factors `1 - p·base^m` (or `1 - p·base^{-m}` when `negative`) for
/// `m >= 0` must stay away from zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pole {
    pub p: C64,
    pub base: C64,
    pub negative: bool,
}

impl Pole {
    pub fn up(p: C64, base: C64) -> Self {
        Pole { p, base, negative: false }
    }
    pub fn down(p: C64, base: C64) -> Self {
        Pole { p, base, negative: true }
    }

    /// Smallest `|1 - p·base^{±m}|` over `m = 0..=depth`.
    pub fn distance(&self, depth: usize) -> f64 {
        let step = if self.negative { 1.0 / self.base } else { self.base };
        let mut z = self.p;
        let mut best = f64::INFINITY;
        for _ in 0..=depth {
            best = best.min((1.0 - z).norm());
            if !z.is_finite() || z.norm() > 1e30 {
                break;
            }
            z *= step;
        }
        best
    }
}

#[derive(Clone, Debug)]
pub struct ParamDomain {
    pub params: Vec<ParamSpec>,
    pub constraints: Vec<Constraint>,
    pub poles: fn(&[C64]) -> Vec<Pole>,
}

impl ParamDomain {
    /// Label of the first violated constraint.
    pub fn violated(&self, v: &[C64]) -> Option<&'static str> {
        self.constraints.iter().find(|c| !(c.holds)(v)).map(|c| c.label)
    }

    /// Whether every pole factor stays at least `margin` from zero.
    pub fn poles_clear(&self, v: &[C64], margin: f64, depth: usize) -> bool {
        (self.poles)(v).iter().all(|p| p.distance(depth) > margin)
    }
}

pub type Evaluator<R> = fn(&[Scalar<R>], &SumCtrl) -> QResult<SumResult<R>>;

#[derive(Clone, Copy)]
pub struct Sides<R: Real> {
    pub lhs: Evaluator<R>,
    pub rhs: Evaluator<R>,
}

/// A named two-sided identity.
#[derive(Clone)]
pub struct Identity {
    pub id: &'static str,
    pub anchor: &'static str,
    pub domain: ParamDomain,
    double: Sides<f64>,
    extended: Sides<Dd>,
}

/// Precisions the catalog is instantiated at.
pub trait CatalogReal: Real {
    fn sides(id: &Identity) -> Sides<Self>;
}

impl CatalogReal for f64 {
    fn sides(id: &Identity) -> Sides<f64> {
        id.double
    }
}

impl CatalogReal for Dd {
    fn sides(id: &Identity) -> Sides<Dd> {
        id.extended
    }
}

impl Identity {
    pub fn param_names(&self) -> Vec<&'static str> {
        self.domain.params.iter().map(|p| p.name).collect()
    }

    fn check_arity<R: Real>(&self, p: &[Scalar<R>]) -> QResult<()> {
        if p.len() != self.domain.params.len() {
            return Err(QError::Domain(format!(
                "{} takes {} parameters, got {}",
                self.id,
                self.domain.params.len(),
                p.len()
            )));
        }
        Ok(())
    }

    pub fn lhs<R: CatalogReal>(&self, p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
        self.check_arity(p)?;
        (R::sides(self).lhs)(p, ctrl)
    }

    pub fn rhs<R: CatalogReal>(&self, p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
        self.check_arity(p)?;
        (R::sides(self).rhs)(p, ctrl)
    }
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Identity").field("id", &self.id).field("params", &self.param_names()).finish()
    }
}

// ---------------------------------------------------------------------------
// Catalog evaluators. Each takes the assignment in the order of its params.

fn take<R: Real, const N: usize>(p: &[Scalar<R>]) -> QResult<[Scalar<R>; N]> {
    p.try_into().map_err(|_| QError::Domain(format!("expected {N} parameters, got {}", p.len())))
}

fn base<R: Real>(q: Scalar<R>) -> QResult<QBase<R>> {
    QBase::new(q)
}

fn int<R: Real>(z: Scalar<R>) -> i64 {
    z.re.to_f64().round() as i64
}

fn thm_main_pt<R: Real>(p: &[Scalar<R>]) -> QResult<MainPoint<R>> {
    let [a, c, d, x, t, a1, b1, q] = take(p)?;
    Ok(MainPoint { a, c, d, x, t, upper: vec![a1], lower: vec![b1], q: base(q)? })
}

fn thm_main_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    eval_thm_main_lhs(&thm_main_pt(p)?, ctrl)
}

fn thm_main_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    eval_thm_main_rhs(&thm_main_pt(p)?, ctrl)
}

fn dlidi_pt<R: Real>(p: &[Scalar<R>]) -> QResult<DlidiPoint<R>> {
    let [c, x, t, a1, b1, q] = take(p)?;
    Ok(DlidiPoint { c, x, t, upper: vec![a1], lower: vec![b1], q: base(q)? })
}

fn dlidi_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    eval_thm_dlidi_lhs(&dlidi_pt(p)?, ctrl)
}

fn dlidi_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    eval_thm_dlidi_rhs(&dlidi_pt(p)?, ctrl)
}

fn multi_pt<R: Real>(p: &[Scalar<R>]) -> QResult<MultiPoint<R>> {
    // a1, b1, t, then (x, c, d) per axis, then q
    if p.len() < 7 || (p.len() - 4) % 3 != 0 {
        return Err(QError::Domain("multiple expansion assignment has the wrong length".into()));
    }
    let m = (p.len() - 4) / 3;
    let tri = |j: usize| (0..m).map(|i| p[3 + 3 * i + j]).collect::<Vec<_>>();
    Ok(MultiPoint { upper: vec![p[0]], lower: vec![p[1]], t: p[2], x: tri(0), c: tri(1), d: tri(2), q: base(p[p.len() - 1])? })
}

fn multi_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    eval_multi_lhs(&multi_pt(p)?, ctrl)
}

fn multi_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    eval_multi_rhs(&multi_pt(p)?, ctrl, None)
}

fn carlitz_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a1, b1, b2, x, t, q] = take(p)?;
    let q = base(q)?;
    phi(&[a1, sc(0.0)], &[b1, b2], &q, x * t, ctrl)
}

fn carlitz_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a1, b1, b2, x, t, q] = take(p)?;
    let q = base(q)?;
    let r = outer_sum(ctrl, None, |n| {
        let w = Term::one().tau(n, &q).pow(x, n).poch_over(x, &q, n + 1)?;
        let spec = SeriesSpec::new(
            Variant::Phi,
            vec![Param::qpow_unit(-n, &q), Param::new(a1), Param::new(sc(0.0))],
            vec![Param::new(b1), Param::new(b2), Param::qpow_unit(1, &q)],
            q,
            t * q.value(),
        )?;
        Ok(wide_term(w, eval_series_wide(&spec, ctrl)?))
    })?;
    r.to_sum()
}

fn r_eq_s_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a1, b1, c, d, x, t, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    phit(&[a1, c * qv / x], &[b1, x * d * qv], &q, x * t, ctrl)
}

/// `Σ_n Ω(n;x,c,d) φ[cdq, q^{-n}, cq^{n+2}, upper..; cdq^{n+2}, q^{-n}d, lower..; q, t]`.
fn omega_expansion<R: Real>(
    upper: &[Scalar<R>],
    lower: &[Scalar<R>],
    x: Scalar<R>,
    c: Scalar<R>,
    d: Scalar<R>,
    t: Scalar<R>,
    q: &QBase<R>,
    ctrl: &SumCtrl,
) -> QResult<SumResult<R>> {
    let qv = q.value();
    let r = outer_sum(ctrl, None, |n| {
        let w = omega_term(n, x, c, d, q)?;
        let mut num = vec![Param::new(c * d * qv), Param::qpow_unit(-n, q), Param::qpow(c, n + 2, q)];
        num.extend(upper.iter().map(|a| Param::new(*a)));
        let mut den = vec![Param::qpow(c * d, n + 2, q), Param::qpow(d, -n, q)];
        den.extend(lower.iter().map(|b| Param::new(*b)));
        let spec = SeriesSpec::new(Variant::Phi, num, den, *q, t)?;
        Ok(wide_term(w, eval_series_wide(&spec, ctrl)?))
    })?;
    r.to_sum()
}

fn r_eq_s_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a1, b1, c, d, x, t, q] = take(p)?;
    let q = base(q)?;
    omega_expansion(&[a1], &[b1], x, c, d, t, &q, ctrl)
}

fn rp1_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a1, a2, b1, c, d, x, t, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    phi(&[a1, a2, c * qv / x], &[b1, x * d * qv], &q, x * t, ctrl)
}

fn rp1_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a1, a2, b1, c, d, x, t, q] = take(p)?;
    let q = base(q)?;
    omega_expansion(&[a1, a2], &[b1, q.value()], x, c, d, t, &q, ctrl)
}

fn vwp_6w5_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, b, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let spec = vwp_spec(a * b * b * c, &[Param::new(b), Param::new(a * qv / d), Param::new(b * c / x)], q, x * d)?;
    eval_series(&spec, ctrl)
}

fn vwp_6w5_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, b, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    prods(
        &[a * x * qv, b * c * d, b * d * x, a * b * b * c * qv],
        &[a * b * x * qv, b * b * c * d, d * x, a * b * c * qv],
        &q,
        ctrl,
    )
}

fn vwp_coeff_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, m, q] = take(p)?;
    let q = base(q)?;
    let m = int(m);
    let qv = q.value();
    let spec = vwp_spec(
        a * c * q.pow(2 * m + 2),
        &[Param::qpow_unit(m + 1, &q), Param::new(a * qv / d), Param::new(c * q.pow(m + 1) / x)],
        q,
        x * d,
    )?;
    eval_series(&spec, ctrl)
}

fn vwp_coeff_r<R: Real>(p: &[Scalar<R>], _ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, m, q] = take(p)?;
    let q = base(q)?;
    let m = int(m);
    let qv = q.value();
    let v = Term::one()
        .pochs(&[a * x * qv, c * d * q.pow(m + 1)], &q, m + 1)
        .pochs_over(&[a * c * q.pow(m + 2), x * d], &q, m + 1)?;
    Ok(SumResult::exact(v.wide().to_scalar()?, 0.0))
}

fn wp_alpha<R: Real>(n: i64, a1: Scalar<R>, b1: Scalar<R>, c: Scalar<R>, d: Scalar<R>, t: Scalar<R>, q: &QBase<R>) -> QResult<Term<R>> {
    let qv = q.value();
    Term::one().pochs(&[a1, c * d * qv], q, n).pochs_over(&[b1, qv], q, n).map(|w| w.pow(t / d, n))
}

fn wp_bailey_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a1, b1, c, d, x, t, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let pre = (one::<R>() - c * d * qv) / ((one::<R>() - c * qv) * (one::<R>() - x * d));
    let s = tsum(ctrl, |n| {
        Ok(Term::one()
            .pochs(&[c * qv / x, qv], &q, n)
            .pochs_over(&[x * d * qv, c * d * qv], &q, n)?
            .pow(x * d, n)
            .times_wide(wp_alpha(n, a1, b1, c, d, t, &q)?.wide()))
    })?;
    Ok(s.scale(pre))
}

fn wp_bailey_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a1, b1, c, d, x, t, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let mut alpha = Vec::new();
    tsum(ctrl, |n| {
        alpha.push(wp_alpha(n, a1, b1, c, d, t, &q)?.wide().to_scalar()?);
        let beta = wp_bailey_beta(&alpha, c * d * qv, qv / d, n as usize, &q)?;
        Ok(Term::one()
            .pochs(&[c * qv / x, qv], &q, n)
            .pochs_over(&[x * qv, c * qv], &q, n + 1)?
            .times(one::<R>() - c * q.pow(2 * n + 2))
            .pow(x * d, n)
            .times(beta))
    })
}

fn vwp_expand_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a3, a4, c, d, x, t, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let spec = vwp_spec(c * d * qv, &[Param::new(a3), Param::new(a4), Param::new(c * qv / x)], q, x * t)?;
    eval_series(&spec, ctrl)
}

fn vwp_expand_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a3, a4, c, d, x, t, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let r = outer_sum(ctrl, None, |n| {
        let w = omega_term(n, x, c, d, &q)?;
        let spec = vwp_spec(
            c * d * qv,
            &[Param::qpow_unit(-n, &q), Param::qpow(c, n + 2, &q), Param::new(a3), Param::new(a4), Param::new(c * d * qv)],
            q,
            t,
        )?;
        Ok(wide_term(w, eval_series_wide(&spec, ctrl)?))
    })?;
    r.to_sum()
}

fn aw_pt<R: Real>(p: &[Scalar<R>]) -> QResult<(AWPoint<R>, Scalar<R>)> {
    let [a, b, c, d, e, x, q] = take(p)?;
    Ok((AWPoint::new(e, a, b, c, d, base(q)?)?, x))
}

fn aw_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let (pt, x) = aw_pt(p)?;
    aw_gf_lhs(x, &pt, ctrl)
}

fn aw_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let (pt, x) = aw_pt(p)?;
    aw_gf_rhs(x, &pt, ctrl)
}

fn rogers_fine_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, x, q] = take(p)?;
    let q = base(q)?;
    Ok(phit(&[c / x], &[a * q.value()], &q, x, ctrl)?.scale(one::<R>() - x))
}

fn rogers_fine_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    tsum(ctrl, |n| {
        Ok(Term::one()
            .pochs(&[c / a, c / x], &q, n)
            .pochs_over(&[a * qv, x * qv], &q, n)?
            .times(one::<R>() - c * q.pow(2 * n))
            .pow(a * x, n)
            .qpow(&q, n * n))
    })
}

fn grf_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    tsum(ctrl, |n| {
        Ok(Term::one()
            .pochs(&[c / a, a * qv / d, c / x], &q, n)
            .pochs_over(&[a * qv, c * d / a, x * qv], &q, n)?
            .tau(n, &q)
            .times(one::<R>() - c * q.pow(2 * n))
            .pow(d * x, n))
    })
}

fn grf_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, q] = take(p)?;
    let q = base(q)?;
    Ok(phit(&[d, c / x], &[c * d / a, a * q.value()], &q, x, ctrl)?.scale(one::<R>() - x))
}

/// `H(a,d,x;c) = Σ (c/a, c/d, c/x)_n/(aq, dq, xq)_n (1-cq^{2n}) τ(n) (adxq/c)^n`.
pub fn h_series<R: Real>(a: Scalar<R>, d: Scalar<R>, x: Scalar<R>, c: Scalar<R>, q: &QBase<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let qv = q.value();
    tsum(ctrl, |n| {
        Ok(Term::one()
            .pochs(&[c / a, c / d, c / x], q, n)
            .pochs_over(&[a * qv, d * qv, x * qv], q, n)?
            .times(one::<R>() - c * q.pow(2 * n))
            .tau(n, q)
            .pow(a * d * x * qv / c, n))
    })
}

fn grfm_sub_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    Ok(phit(&[a * d * qv / c, c / x], &[d * qv, a * qv], &q, x, ctrl)?.scale(one::<R>() - x))
}

fn grfm_sub_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, q] = take(p)?;
    h_series(a, d, x, c, &base(q)?, ctrl)
}

fn rf_analogue_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, x, q] = take(p)?;
    let q = base(q)?;
    Ok(phit(&[c / x], &[a * q.value()], &q, a * x / c, ctrl)?.scale(one::<R>() - x))
}

fn rf_analogue_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    tsum(ctrl, |n| {
        Ok(Term::one()
            .pochs(&[c / a, c / x], &q, n)
            .pochs_over(&[a * qv, x * qv], &q, n)?
            .times(one::<R>() - c * q.pow(2 * n))
            .pow(a * x / c, n))
    })
}

fn contiguous_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, q] = take(p)?;
    let q = base(q)?;
    phi(&[c, c / a], &[a * q.value()], &q, a / c, ctrl)
}

fn contiguous_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, q] = take(p)?;
    let q = base(q)?;
    Ok(phi(&[c, c / a], &[a * q.value()], &q, a * q.pow(2) / c, ctrl)?.scale(c))
}

fn q_gauss_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    phi(&[d * qv / c, c / x], &[d * qv], &q, x, ctrl)
}

fn q_gauss_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    prods(&[c, d * x * qv / c], &[d * qv, x], &q, ctrl)
}

fn reciprocity_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let o = one::<R>();
    let s1 = phit(&[a * d * qv / c, c / x], &[d * qv, a * qv], &q, x, ctrl)?.scale(o / ((o - d) * (o - a)));
    let (dc, ac) = (d * qv / c, a * qv / c);
    let s2 = phit(&[a * d * qv / c, qv / x], &[dc * qv, ac * qv], &q, x * qv / c, ctrl)?
        .scale(qv / (c * (o - dc) * (o - ac)));
    Ok(s1.sub(s2))
}

fn reciprocity_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    prods(
        &[qv, c, qv / c, a * d * qv / c, d * x * qv / c, a * x * qv / c],
        &[d, a, x, d * qv / c, a * qv / c, x * qv / c],
        &q,
        ctrl,
    )
}

fn h_reciprocal_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let o = one::<R>();
    let kappa = (a - o) * (d - o) * (x - o) / ((c - a * qv) * (c - d * qv) * (c - qv * x));
    let h1 = h_series(a, d, x, c, &q, ctrl)?.scale(o / (o - c));
    let h2 = h_series(a * qv / c, d * qv / c, x * qv / c, qv * qv / c, &q, ctrl)?.scale(kappa * qv * c * c / (c - o));
    Ok(h1.sub(h2))
}

fn h_reciprocal_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    prods(
        &[qv, c * qv, qv / c, a * d * qv / c, d * x * qv / c, a * x * qv / c],
        &[d * qv, a * qv, x * qv, d * qv / c, a * qv / c, x * qv / c],
        &q,
        ctrl,
    )
}

fn bailey_lists<R: Real>(a: Scalar<R>, c: Scalar<R>, d: Scalar<R>, x: Scalar<R>, y: Scalar<R>, qv: Scalar<R>) -> [Vec<Scalar<R>>; 2] {
    let s = c.sqrt_principal();
    [
        vec![qv * s, -(qv * s), c / a, c / d, c / x, y],
        vec![s, -s, a * qv, d * qv, x * qv, c * qv / y],
    ]
}

fn bailey_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, y, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let [num, den] = bailey_lists(a, c, d, x, y, qv);
    eval_bilateral(&SeriesSpec::psi(&num, &den, q, a * d * x * qv / (c * y))?, ctrl)
}

fn bailey_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, x, y, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    prods(
        &[qv, c * qv, qv / c, a * d * qv / c, d * x * qv / c, a * x * qv / c, d * qv / y, a * qv / y, x * qv / y],
        &[d * qv, a * qv, x * qv, c * qv / y, d * qv / c, a * qv / c, x * qv / c, qv / y, a * d * x * qv / (c * y)],
        &q,
        ctrl,
    )
}

fn psi11_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, x, q] = take(p)?;
    let q = base(q)?;
    eval_bilateral(&SeriesSpec::psi(&[c / x], &[a * q.value()], q, x)?, ctrl)
}

fn psi11_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    prods(&[qv, c, qv / c, a * x * qv / c], &[x, a * qv, a * qv / c, x * qv / c], &q, ctrl)
}

fn psi11_triple_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let o = one::<R>();
    let s1 = phit(&[c / x], &[a * qv], &q, x, ctrl)?.scale(o / (o - a));
    let ac = a * qv / c;
    let s2 = phit(&[qv / x], &[ac * qv], &q, x * qv / c, ctrl)?.scale(qv / (c * (o - ac)));
    Ok(s1.sub(s2))
}

fn psi11_triple_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    prods(&[qv, c, qv / c, a * x * qv / c], &[a, x, a * qv / c, x * qv / c], &q, ctrl)
}

/// `(bx, xq/b; q²)_∞ / (x/q; q)_∞`.
fn cor39_lhs<R: Real>(b: Scalar<R>, x: Scalar<R>, q: &QBase<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let qv = q.value();
    let q2 = q.squared();
    let num = prods(&[b * x, x * qv / b], &[], &q2, ctrl)?;
    let den = prods(&[], &[x / qv], q, ctrl)?;
    Ok(num.mul(den))
}

/// `₃φ₂[q^{-n}, b, q/b; q, -q; q, -q^{n+1}]`.
fn cor39_inner<R: Real>(n: i64, b: Scalar<R>, q: &QBase<R>, ctrl: &SumCtrl) -> QResult<WideResult<R>> {
    let qv = q.value();
    let spec = SeriesSpec::new(
        Variant::Phi,
        vec![Param::qpow_unit(-n, q), Param::new(b), Param::new(qv / b)],
        vec![Param::qpow_unit(1, q), Param::new(-qv)],
        *q,
        -q.pow(n + 1),
    )?;
    eval_series_wide(&spec, ctrl)
}

fn cor39_a_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [_a, b, x, q] = take(p)?;
    cor39_lhs(b, x, &base(q)?, ctrl)
}

fn cor39_a_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, b, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let r = outer_sum(ctrl, None, |n| {
        let w = Term::one().pow(x / qv, n).poch(a * qv * qv, &q, n).poch_over(a * x * qv, &q, n + 1)?;
        let spec = SeriesSpec::new(
            Variant::Phi,
            vec![Param::qpow_unit(-n, &q), Param::new(b), Param::new(qv / b)],
            vec![Param::qpow(one::<R>() / a, -n - 1, &q), Param::qpow_unit(1, &q), Param::new(-qv)],
            q,
            -(one::<R>() / a),
        )?;
        Ok(wide_term(w, eval_series_wide(&spec, ctrl)?))
    })?;
    r.to_sum()
}

fn cor39_b_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [b, x, q] = take(p)?;
    cor39_lhs(b, x, &base(q)?, ctrl)
}

fn cor39_b_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [b, x, q] = take(p)?;
    let q = base(q)?;
    let z = x / q.value();
    let r = outer_sum(ctrl, None, |n| Ok(wide_term(Term::one().pow(z, n), cor39_inner(n, b, &q, ctrl)?)))?;
    r.to_sum()
}

fn cor39_c_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [b, n, q] = take(p)?;
    let q = base(q)?;
    let n = int(n);
    let qv = q.value();
    let q2 = q.squared();
    let w = Term::one().poch(qv / b, &q2, n).poch_over(q2.value(), &q2, n)?;
    let spec = SeriesSpec::new(
        Variant::Phi,
        vec![Param::qpow_unit(-n, &q2), Param::new(b * qv)],
        vec![Param::new(b * q.pow(1 - 2 * n))],
        q2,
        b,
    )?;
    let (v, t) = wide_term(w, eval_series_wide(&spec, ctrl)?);
    Ok(SumResult::exact(v.to_scalar()?, t.exp2()))
}

fn cor39_c_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [b, n, q] = take(p)?;
    let q = base(q)?;
    let n = int(n);
    let (v, t) = wide_term(Term::one().qpow(&q, -n), cor39_inner(n, b, &q, ctrl)?);
    Ok(SumResult::exact(v.to_scalar()?, t.exp2()))
}

fn cor310_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let c2 = c * c;
    Ok(phit(&[a, -a, c2 * qv / x], &[c * qv, -(c * qv), a * a], &q, x, ctrl)?.scale(one::<R>() - x))
}

fn cor310_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let q2 = q.squared();
    let (c2, qq) = (c * c, q2.value());
    tsum(ctrl, |n| {
        Ok(Term::one()
            .pochs(&[qv, c2 * qq / (a * a), c2 * qv / x, c2 * qq / x], &q2, n)
            .pochs_over(&[c2 * qq, a * a * qv, x * qv, x * qq], &q2, n)?
            .times(one::<R>() - c2 * q.pow(4 * n + 1))
            .tau(2 * n, &q)
            .pow(a * x, 2 * n))
    })
}

fn cor311_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, e, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    phit(&[a, -a, qv / x], &[-qv, e, a * a * qv / e], &q, x, ctrl)
}

fn cor311_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, e, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let f = a * a / e;
    let tol = ctrl.product_tol();
    let den = prods(&[], &[e, f * qv], &q, ctrl)?;
    let r = outer_sum(ctrl, None, |n| {
        let mut w = Term::one()
            .poch(qv / x, &q, n)
            .poch_over(x, &q, n + 1)?
            .qpow(&q, n * n)
            .times(one::<R>() - q.pow(2 * n + 1))
            .pow(-x, n);
        let mut rel = 0.0;
        for (z, k) in [(e, -n), (e, n + 1), (f, 1 - n), (f, n + 2)] {
            let (v, t) = shifted_inf(z, k, &q, 2, tol)?;
            let m = v.abs_f64();
            if m > 0.0 {
                rel += t / m;
            }
            w = w.times_wide(v);
        }
        let v = w.wide().mul_scalar(den.value);
        let tail = if rel > 0.0 { v.log2_abs() + rel.log2() } else { f64::NEG_INFINITY };
        Ok((v, tail))
    })?;
    let mut s = r.to_sum()?;
    s.tail_estimate += den.tail_estimate * s.value.modulus() / den.value.modulus().max(f64::MIN_POSITIVE);
    Ok(s)
}

fn cor312_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [c, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let cx = c * x * qv * qv;
    Ok(phit(&[c * qv / x], &[cx * qv], &q, x * qv, ctrl)?.scale(one::<R>() / (one::<R>() - cx)))
}

fn cor312_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [c, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    tsum(ctrl, |n| {
        Ok(Term::one()
            .times(one::<R>() - c * q.pow(2 * n + 2))
            .pow(c * x * qv * qv, n)
            .pochs(&[q.pow(n + 1), c * qv * qv, c * qv / x], &q, n)
            .poch_over(c * c * q.pow(3), &q, 2 * n + 1)?
            .poch_over(x * qv, &q, n + 1)?)
    })
}

fn partial_theta_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [c, q] = take(p)?;
    let q = base(q)?;
    let z = c * q.pow(2);
    tsum(ctrl, |n| Ok(Term::one().tau(n, &q).pow(z, n)))
}

fn partial_theta_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [c, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    tsum(ctrl, |n| {
        Ok(Term::one()
            .tau(n, &q)
            .times(one::<R>() - c * q.pow(2 * n + 2))
            .pow(c * c * q.pow(3), n)
            .pochs(&[q.pow(n + 1), c * qv * qv], &q, n)
            .poch_over(c * c * q.pow(3), &q, 2 * n + 1)?)
    })
}

fn w87_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a1, a2, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let a3 = c * d * d * qv / (a1 * a2);
    let ps: Vec<Param<R>> = [a1, a2, a3, qv, c * qv / x].into_iter().map(Param::new).collect();
    eval_series(&vwp_spec(c * d * qv, &ps, q, x * qv)?, ctrl)
}

fn w87_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a1, a2, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let o = one::<R>();
    let a3 = c * d * d * qv / (a1 * a2);
    let ps: Vec<Param<R>> = [a1 * qv / d, a2 * qv / d, a3 * qv / d, qv, c * qv / x].into_iter().map(Param::new).collect();
    let pre = (o - x * d) * (o - c * qv * qv) / ((o - c * d * qv) * (o - x * qv));
    Ok(eval_series(&vwp_spec(c * qv * qv, &ps, q, x * d)?, ctrl)?.scale(pre))
}

fn base_change_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let q2 = q.squared();
    let qq = q2.value();
    let ps: Vec<Param<R>> = [qv, qq / (d * d), c * qq / x, c * qv / x, qq].into_iter().map(Param::new).collect();
    eval_series(&vwp_spec(c * qq, &ps, q2, x * x * d * d)?, ctrl)
}

/// Base-`q` side with the square root pair `±s·d√(cq)` where `s = ±1`.
pub fn base_change_rhs_branch<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl, flip: bool) -> QResult<SumResult<R>> {
    let [c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let o = one::<R>();
    let mut r = d * (c * qv).sqrt_principal();
    if flip {
        r = -r;
    }
    let ps: Vec<Param<R>> = [qv, r, -r, qv / d, c * qv / x].into_iter().map(Param::new).collect();
    let pre = (o - c * d * qv) * (o - x * qv) / ((o - x * d) * (o - c * qv * qv));
    Ok(eval_series(&vwp_spec(c * d * qv, &ps, q, -(x * d))?, ctrl)?.scale(pre))
}

fn base_change_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    base_change_rhs_branch(p, ctrl, false)
}

fn multi_gauss_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, x, y, q] = take(p)?;
    let q = base(q)?;
    prods(&[a * x, a * y], &[a, a * x * y], &q, ctrl)
}

fn multi_gauss_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, x, y, q] = take(p)?;
    let q = base(q)?;
    let o = one::<R>();
    let mut leaf = |ns: &[i64]| -> QResult<(Wide<R>, f64)> {
        let (n1, n2) = (ns[0], ns[1]);
        let w = Term::one()
            .tau(n1 + n2, &q)
            .qpow(&q, -n1 * n2)
            .times(o - q.pow(2 * n1))
            .times(o - q.pow(2 * n2))
            .pow(x, n1)
            .pow(y, n2)
            .poch(o / x, &q, n1)
            .poch(o / y, &q, n2)
            .poch_over(x, &q, n1 + 1)?
            .poch_over(y, &q, n2 + 1)?;
        if w.wide().is_zero() {
            return Ok((Wide::zero(), f64::NEG_INFINITY));
        }
        let spec = SeriesSpec::new(
            Variant::Phi,
            vec![Param::qpow_unit(-n1, &q), Param::qpow_unit(n1, &q), Param::qpow_unit(-n2, &q), Param::qpow_unit(n2, &q)],
            vec![Param::qpow_unit(1, &q), Param::qpow_unit(1, &q), Param::new(a)],
            q,
            a * q.pow(2),
        )?;
        Ok(wide_term(w, eval_series_wide(&spec, ctrl)?))
    };
    nested_sum(2, ctrl, None, &mut leaf)?.to_sum()
}

fn multi_6w5_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, x, y, z, q] = take(p)?;
    let q = base(q)?;
    let aq = a * q.value();
    prods(&[aq, aq * x * y, aq * x * z, aq * y * z], &[a * x, a * y, a * z, aq * x * y * z], &q, ctrl)
}

fn multi_6w5_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, x, y, z, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let o = one::<R>();
    let vs = [x, y, z];
    let mut leaf = |ns: &[i64]| -> QResult<(Wide<R>, f64)> {
        let mut w = Term::one();
        let mut ps = vec![Param::new(a), Param::new(a), Param::new(a)];
        for (v, &n) in vs.iter().zip(ns) {
            w = w
                .pow(a * *v, n)
                .times(o - q.pow(2 * n + 1))
                .pochs(&[qv / a, o / *v], &q, n)
                .pochs_over(&[a, *v * qv], &q, n + 1)?;
            ps.push(Param::qpow_unit(-n, &q));
            ps.push(Param::qpow_unit(n + 1, &q));
        }
        Ok(wide_term(w, eval_series_wide(&vwp_spec(a, &ps, q, a * qv)?, ctrl)?))
    };
    nested_sum(3, ctrl, None, &mut leaf)?.to_sum()
}

fn concluding_l<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, b, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let pre = prods(&[x, a * c], &[a * x, c], &q, ctrl)?;
    Ok(phi(&[a, b, c / x], &[d, a * b * c / d], &q, x, ctrl)?.mul(pre))
}

fn concluding_r<R: Real>(p: &[Scalar<R>], ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, b, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let qv = q.value();
    let big = a * c / qv;
    let s = big.sqrt_principal();
    phi(
        &[big, qv * s, -(qv * s), a, d / b, a * c / d, c / x],
        &[s, -s, c, a * b * c / d, d, a * x, sc(0.0)],
        &q,
        x * b,
        ctrl,
    )
}

/// `₈W₇(ac/q; a, d/b, ac/d, c/x, b/y; q, xy)`, whose `y → 0` limit is the
/// concluding transformation.
pub fn concluding_small_y<R: Real>(p: &[Scalar<R>], y: Scalar<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, b, c, d, x, q] = take(p)?;
    let q = base(q)?;
    let ps: Vec<Param<R>> = [a, d / b, a * c / d, c / x, b / y].into_iter().map(Param::new).collect();
    eval_series(&vwp_spec(a * c / q.value(), &ps, q, x * y)?, ctrl)
}

fn pfaff_l<R: Real>(p: &[Scalar<R>], _ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, m, i, q] = take(p)?;
    let q = base(q)?;
    let (m, i) = (int(m), int(i));
    let n = m + i;
    let r = sum_finite(m as usize, |k| {
        let k = k as i64;
        let w = Term::one()
            .tau(k, &q)
            .qpow(&q, (m - k) * (m - k - 1) / 2 - k * (k - 1) / 2)
            .times(qbinom(m, k, &q)?)
            .pochs(&[a * c * q.pow(n + i), c * d * q.pow(i)], &q, k)
            .pochs_over(&[a * c * q.pow(i + 1), c * d * q.pow(2 * i)], &q, k)?;
        Ok(w.wide())
    })?;
    r.to_sum()
}

fn pfaff_r<R: Real>(p: &[Scalar<R>], _ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let [a, c, d, m, i, q] = take(p)?;
    let q = base(q)?;
    let (m, i) = (int(m), int(i));
    let n = m + i;
    let v = Term::one()
        .qpow(&q, m * (m - 1) / 2)
        .pochs(&[q.pow(1 - n), a * q.value() / d], &q, m)
        .pochs_over(&[a * c * q.pow(i + 1), q.pow(1 - n - i) / (c * d)], &q, m)?;
    Ok(SumResult::exact(v.wide().to_scalar()?, 0.0))
}

// ---------------------------------------------------------------------------
// Catalog

macro_rules! sides {
    ($l:ident, $r:ident) => {
        (Sides { lhs: $l::<f64>, rhs: $r::<f64> }, Sides { lhs: $l::<Dd>, rhs: $r::<Dd> })
    };
}

fn arr<const N: usize>(v: &[C64]) -> [C64; N] {
    let mut out = [C64::new(0.0, 0.0); N];
    out.copy_from_slice(&v[..N]);
    out
}

/// Params named by a space-separated list; `q` is a base, the rest complex.
fn params(names: &'static str) -> Vec<ParamSpec> {
    names
        .split_whitespace()
        .map(|name| ParamSpec { name, kind: if name == "q" { ParamKind::BASE } else { ParamKind::COMPLEX } })
        .collect()
}

fn with_kind(mut ps: Vec<ParamSpec>, name: &str, kind: ParamKind) -> Vec<ParamSpec> {
    for p in ps.iter_mut().filter(|p| p.name == name) {
        p.kind = kind;
    }
    ps
}

fn con(label: &'static str, holds: fn(&[C64]) -> bool) -> Constraint {
    Constraint { label, holds }
}

fn entry(
    id: &'static str,
    anchor: &'static str,
    params: Vec<ParamSpec>,
    constraints: Vec<Constraint>,
    poles: fn(&[C64]) -> Vec<Pole>,
    s: (Sides<f64>, Sides<Dd>),
) -> Identity {
    Identity { id, anchor, domain: ParamDomain { params, constraints, poles }, double: s.0, extended: s.1 }
}

fn up(p: C64, q: C64) -> Pole {
    Pole::up(p, q)
}

fn down(p: C64, q: C64) -> Pole {
    Pole::down(p, q)
}

fn multi_poles(v: &[C64]) -> Vec<Pole> {
    let q = v[v.len() - 1];
    let m = (v.len() - 4) / 3;
    let mut out = vec![up(v[1], q)];
    for i in 0..m {
        let (x, c, d) = (v[3 + 3 * i], v[4 + 3 * i], v[5 + 3 * i]);
        out.extend([up(x * d * q, q), up(c * d * q, q), up(x * q, q), down(d, q)]);
    }
    out
}

fn multi_small_weights(v: &[C64]) -> bool {
    let m = (v.len() - 4) / 3;
    (0..m).all(|i| (v[3 + 3 * i] * v[5 + 3 * i]).norm() < 0.25)
}

fn multi_argument(v: &[C64]) -> bool {
    let m = (v.len() - 4) / 3;
    (v[2] * (0..m).map(|i| v[3 + 3 * i]).product::<C64>()).norm() < 0.9
}

fn omega_poles(x: C64, c: C64, d: C64, q: C64, b: &[C64]) -> Vec<Pole> {
    let mut out = vec![up(x * d * q, q), up(c * d * q, q), up(x * q, q), down(d, q)];
    out.extend(b.iter().map(|b| up(*b, q)));
    out
}

fn bailey_tails(v: &[C64]) -> (f64, f64) {
    let [a, c, d, x, y, q] = arr(v);
    let z = a * d * x * q / (c * y);
    let s = c.sqrt();
    let num = [q * s, -q * s, c / a, c / d, c / x, y];
    let den = [s, -s, a * q, d * q, x * q, c * q / y];
    let neg = den.iter().product::<C64>() / (num.iter().product::<C64>() * z);
    (z.norm(), neg.norm())
}

/// Every registered identity.
pub fn build_catalog() -> Vec<Identity> {
    let real = ParamKind::Real { lo: 0.15, hi: 0.85 };
    vec![
        entry(
            "thm_main",
            "expansion of a phi-tilde series in terminating well-poised 3+r phi 2+s series",
            params("a c d x t a1 b1 q"),
            vec![
                con("|xd| < 1", |v| (v[3] * v[2]).norm() < 1.0),
                con("|xt| < 0.9", |v| (v[3] * v[4]).norm() < 0.9),
                con("|t/a| < 0.9", |v| (v[4] / v[0]).norm() < 0.9),
            ],
            |v| {
                let [a, c, d, x, _t, _a1, b1, q] = arr(v);
                vec![up(b1, q), up(x * d * q, q), up(c * d * q, q), up(a * x * q, q), down(d / a, q)]
            },
            sides!(thm_main_l, thm_main_r),
        ),
        entry(
            "thm_dlidi",
            "d -> 0 limit of the main expansion",
            params("c x t a1 b1 q"),
            vec![con("|xt| < 0.9", |v| (v[1] * v[2]).norm() < 0.9)],
            |v| {
                let [_c, x, _t, _a1, b1, q] = arr(v);
                vec![up(b1, q), up(x, q)]
            },
            sides!(dlidi_l, dlidi_r),
        ),
        entry(
            "thm_multi_m2",
            "multiple expansion with two well-poised weights",
            params("a1 b1 t x1 c1 d1 x2 c2 d2 q"),
            vec![con("|x_i d_i| < 0.25", multi_small_weights), con("|t x1 x2| < 0.9", multi_argument)],
            multi_poles,
            sides!(multi_l, multi_r),
        ),
        entry(
            "thm_multi_m3",
            "multiple expansion with three well-poised weights",
            params("a1 b1 t x1 c1 d1 x2 c2 d2 x3 c3 d3 q"),
            vec![con("|x_i d_i| < 0.25", multi_small_weights), con("|t x1 x2 x3| < 0.9", multi_argument)],
            multi_poles,
            sides!(multi_l, multi_r),
        ),
        entry(
            "carlitz_gen",
            "generalization of Carlitz's q-expansion formula",
            params("a1 b1 b2 x t q"),
            vec![con("|xt| < 0.9", |v| (v[3] * v[4]).norm() < 0.9)],
            |v| {
                let [_a1, b1, b2, x, _t, q] = arr(v);
                vec![up(b1, q), up(b2, q), up(x, q)]
            },
            sides!(carlitz_l, carlitz_r),
        ),
        entry(
            "r_eq_s",
            "transformation of a balanced-length phi-tilde series",
            params("a1 b1 c d x t q"),
            vec![con("|xt| < 0.9", |v| (v[4] * v[5]).norm() < 0.9)],
            |v| {
                let [_a1, b1, c, d, x, _t, q] = arr(v);
                omega_poles(x, c, d, q, &[b1])
            },
            sides!(r_eq_s_l, r_eq_s_r),
        ),
        entry(
            "rp1_phir",
            "expansion of an r+1 phi r series",
            params("a1 a2 b1 c d x t q"),
            vec![con("|xt| < 0.9", |v| (v[5] * v[6]).norm() < 0.9)],
            |v| {
                let [_a1, _a2, b1, c, d, x, _t, q] = arr(v);
                omega_poles(x, c, d, q, &[b1])
            },
            sides!(rp1_l, rp1_r),
        ),
        entry(
            "vwp_6w5",
            "very-well-poised 6phi5 summation",
            params("a b c d x q"),
            vec![],
            |v| {
                let [a, b, c, d, x, q] = arr(v);
                vec![up(a * b * c * q, q), up(b * b * c * d, q), up(a * b * x * q, q), up(d * x, q)]
            },
            sides!(vwp_6w5_l, vwp_6w5_r),
        ),
        entry(
            "vwp_6w5_coeff",
            "coefficient form of the 6phi5 summation",
            with_kind(params("a c d x m q"), "m", ParamKind::Integer { lo: 0, hi: 2 }),
            vec![],
            |v| {
                let [a, c, d, x, _m, q] = arr(v);
                vec![up(a * c * q, q), up(c * d * q, q), up(a * x * q, q), up(x * d, q)]
            },
            sides!(vwp_coeff_l, vwp_coeff_r),
        ),
        entry(
            "wp_bailey_lemma",
            "special form of the WP Bailey lemma",
            params("a1 b1 c d x t q"),
            vec![con("|xt| < 0.9", |v| (v[4] * v[5]).norm() < 0.9)],
            |v| {
                let [_a1, b1, c, d, x, _t, q] = arr(v);
                let mut p = omega_poles(x, c, d, q, &[b1, c * q]);
                p.push(up(c * d * q * q, q));
                p
            },
            sides!(wp_bailey_l, wp_bailey_r),
        ),
        entry(
            "vwp_expand",
            "expansion of a very-well-poised 6phi5 series in terminating 10W9 series",
            params("a3 a4 c d x t q"),
            vec![con("|xt| < 0.9", |v| (v[4] * v[5]).norm() < 0.9)],
            |v| {
                let [a3, a4, c, d, x, _t, q] = arr(v);
                omega_poles(x, c, d, q, &[c * d * q * q / a3, c * d * q * q / a4])
            },
            sides!(vwp_expand_l, vwp_expand_r),
        ),
        entry(
            "aw_gf",
            "generating function for Askey-Wilson polynomials",
            params("a b c d e x q"),
            vec![],
            |v| {
                let [a, b, c, d, _e, x, q] = arr(v);
                vec![up(a * b, q), up(a * c, q), up(a * d, q), up(x * q, q)]
            },
            sides!(aw_l, aw_r),
        ),
        entry(
            "aw_gf_real",
            "generating function for Askey-Wilson polynomials, real parameters on the unit circle",
            vec![
                ParamSpec { name: "a", kind: real },
                ParamSpec { name: "b", kind: real },
                ParamSpec { name: "c", kind: real },
                ParamSpec { name: "d", kind: real },
                ParamSpec { name: "e", kind: ParamKind::Phase },
                ParamSpec { name: "x", kind: real },
                ParamSpec { name: "q", kind: ParamKind::RealBase { lo: 0.2, hi: 0.8 } },
            ],
            vec![],
            |v| {
                let [a, b, c, d, _e, x, q] = arr(v);
                vec![up(a * b, q), up(a * c, q), up(a * d, q), up(x * q, q)]
            },
            sides!(aw_l, aw_r),
        ),
        entry(
            "rogers_fine",
            "Rogers-Fine identity",
            params("a c x q"),
            vec![],
            |v| {
                let [a, _c, x, q] = arr(v);
                vec![up(a * q, q), up(x * q, q)]
            },
            sides!(rogers_fine_l, rogers_fine_r),
        ),
        entry(
            "gen_rogers_fine",
            "generalized Rogers-Fine identity",
            params("a c d x q"),
            vec![],
            |v| {
                let [a, c, d, x, q] = arr(v);
                vec![up(a * q, q), up(c * d / a, q), up(x * q, q)]
            },
            sides!(grf_l, grf_r),
        ),
        entry(
            "grfm_sub",
            "Rogers-Fine type identity symmetric in a, d, x",
            params("a c d x q"),
            vec![],
            |v| {
                let [a, _c, d, x, q] = arr(v);
                vec![up(a * q, q), up(d * q, q), up(x * q, q)]
            },
            sides!(grfm_sub_l, grfm_sub_r),
        ),
        entry(
            "rf_analogue",
            "Rogers-Fine analogue with argument ax/c",
            params("a c x q"),
            vec![con("|ax/c| < 0.9", |v| (v[0] * v[2] / v[1]).norm() < 0.9)],
            |v| {
                let [a, _c, x, q] = arr(v);
                vec![up(a * q, q), up(x * q, q)]
            },
            sides!(rf_analogue_l, rf_analogue_r),
        ),
        entry(
            "contiguous_2phi1",
            "contiguous relation for a 2phi1 series",
            params("a c q"),
            vec![con("|a/c| < 0.9", |v| (v[0] / v[1]).norm() < 0.9)],
            |v| {
                let [a, _c, q] = arr(v);
                vec![up(a * q, q)]
            },
            sides!(contiguous_l, contiguous_r),
        ),
        entry(
            "q_gauss",
            "q-Gauss summation",
            params("c d x q"),
            vec![],
            |v| {
                let [_c, d, x, q] = arr(v);
                vec![up(d * q, q), up(x, q)]
            },
            sides!(q_gauss_l, q_gauss_r),
        ),
        entry(
            "reciprocity",
            "reciprocity relation for two Rogers-Fine type series",
            params("a c d x q"),
            vec![con("|xq/c| < 0.9", |v| (v[3] * v[4] / v[1]).norm() < 0.9)],
            |v| {
                let [a, c, d, x, q] = arr(v);
                vec![up(d, q), up(a, q), up(x, q), up(d * q / c, q), up(a * q / c, q), up(x * q / c, q)]
            },
            sides!(reciprocity_l, reciprocity_r),
        ),
        entry(
            "h_reciprocal",
            "reciprocal relation for the well-poised series H",
            params("a c d x q"),
            vec![],
            |v| {
                let [a, c, d, x, q] = arr(v);
                vec![
                    up(c, q),
                    up(d * q, q),
                    up(a * q, q),
                    up(x * q, q),
                    up(d * q / c, q),
                    up(a * q / c, q),
                    up(x * q / c, q),
                ]
            },
            sides!(h_reciprocal_l, h_reciprocal_r),
        ),
        entry(
            "bailey_6psi6",
            "Bailey's very-well-poised 6psi6 summation",
            params("a c d x y q"),
            vec![
                con("|z| < 0.95", |v| bailey_tails(v).0 < 0.95),
                con("negative tail ratio < 0.95", |v| bailey_tails(v).1 < 0.95),
            ],
            |v| {
                let [a, c, d, x, y, q] = arr(v);
                let s = c.sqrt();
                let z = a * d * x * q / (c * y);
                let mut p: Vec<Pole> = [s, -s, a * q, d * q, x * q, c * q / y, d * q / c, a * q / c, x * q / c, q / y, z]
                    .into_iter()
                    .map(|b| up(b, q))
                    .collect();
                p.extend([q * s, -q * s, c / a, c / d, c / x, y].into_iter().map(|a| down(a / q, q)));
                p
            },
            sides!(bailey_l, bailey_r),
        ),
        entry(
            "ramanujan_1psi1",
            "Ramanujan's 1psi1 summation",
            params("a c x q"),
            vec![
                con("|c| < |x|", |v| v[1].norm() < v[2].norm()),
                con("|aq/c| < 0.95", |v| (v[0] * v[3] / v[1]).norm() < 0.95),
            ],
            |v| {
                let [a, c, x, q] = arr(v);
                vec![up(a * q, q), up(x, q), up(a * q / c, q), up(x * q / c, q), down(c / (x * q), q)]
            },
            sides!(psi11_l, psi11_r),
        ),
        entry(
            "ramanujan_1psi1_triple",
            "two unilateral series combining into the 1psi1 sum",
            params("a c x q"),
            vec![con("|xq/c| < 0.9", |v| (v[2] * v[3] / v[1]).norm() < 0.9)],
            |v| {
                let [a, c, x, q] = arr(v);
                vec![up(a, q), up(x, q), up(a * q / c, q), up(x * q / c, q)]
            },
            sides!(psi11_triple_l, psi11_triple_r),
        ),
        entry(
            "cor39_a",
            "expansion of (bx, xq/b; q^2) products in terminating 3phi3 series",
            params("a b x q"),
            vec![con("|x/q| < 0.9", |v| (v[2] / v[3]).norm() < 0.9)],
            |v| {
                let [a, _b, x, q] = arr(v);
                vec![up(a * x * q, q), up(x / q, q), down(1.0 / (a * q), q)]
            },
            sides!(cor39_a_l, cor39_a_r),
        ),
        entry(
            "cor39_b",
            "expansion of (bx, xq/b; q^2) products in terminating 3phi2 series",
            params("b x q"),
            vec![con("|x/q| < 0.9", |v| (v[1] / v[2]).norm() < 0.9)],
            |v| {
                let [_b, x, q] = arr(v);
                vec![up(x / q, q)]
            },
            sides!(cor39_b_l, cor39_b_r),
        ),
        entry(
            "cor39_c",
            "terminating 2phi1 in base q^2 against a terminating 3phi2 in base q",
            with_kind(params("b n q"), "n", ParamKind::Integer { lo: 0, hi: 12 }),
            vec![],
            |v| {
                let [b, _n, q] = arr(v);
                vec![down(b / q, q * q)]
            },
            sides!(cor39_c_l, cor39_c_r),
        ),
        entry(
            "cor310",
            "consequence of Andrews' terminating summation",
            params("a c x q"),
            vec![],
            |v| {
                let [a, c, x, q] = arr(v);
                let q2 = q * q;
                vec![
                    up(c * q, q),
                    up(-c * q, q),
                    up(a * a, q),
                    up(c * c * q2, q2),
                    up(a * a * q, q2),
                    up(x * q, q2),
                    up(x * q2, q2),
                ]
            },
            sides!(cor310_l, cor310_r),
        ),
        entry(
            "cor311",
            "q-analogue of Whipple's 3F2 sum, non-terminating form",
            params("a e x q"),
            vec![],
            |v| {
                let [a, e, x, q] = arr(v);
                vec![up(-q, q), up(e, q), up(a * a * q / e, q), up(x, q)]
            },
            sides!(cor311_l, cor311_r),
        ),
        entry(
            "cor312",
            "transformation with (c^2 q^3; q)_{2n+1} denominators",
            params("c x q"),
            vec![],
            |v| {
                let [c, x, q] = arr(v);
                vec![up(c * x * q * q, q), up(c * c * q * q * q, q), up(x * q, q)]
            },
            sides!(cor312_l, cor312_r),
        ),
        entry(
            "partial_theta",
            "identity for partial theta functions",
            params("c q"),
            vec![],
            |v| {
                let [c, q] = arr(v);
                vec![up(c * c * q * q * q, q)]
            },
            sides!(partial_theta_l, partial_theta_r),
        ),
        entry(
            "vwp_8w7_transform",
            "8W7 transformation with a1 a2 a3 = c d^2 q",
            params("a1 a2 c d x q"),
            vec![],
            |v| {
                let [a1, a2, c, d, x, q] = arr(v);
                let cdq2 = c * d * q * q;
                vec![
                    up(cdq2 / a1, q),
                    up(cdq2 / a2, q),
                    up(a1 * a2 * q / d, q),
                    up(c * d * q, q),
                    up(d * x * q, q),
                    up(c * q * q, q),
                    up(x * q, q),
                ]
            },
            sides!(w87_l, w87_r),
        ),
        entry(
            "base_change_8w7",
            "8W7 in base q^2 against an 8W7 in base q",
            params("c d x q"),
            vec![],
            |v| {
                let [c, d, x, q] = arr(v);
                let q2 = q * q;
                let r = (c * q).sqrt();
                vec![
                    up(c * q2 * q, q2),
                    up(c * d * d * q2, q2),
                    up(x * q2, q2),
                    up(x * q2 * q, q2),
                    up(c * q2, q2),
                    up(c * d * q, q),
                    up(q * r, q),
                    up(-q * r, q),
                    up(c * d * d * q, q),
                    up(d * x * q, q),
                    up(x * d, q),
                ]
            },
            sides!(base_change_l, base_change_r),
        ),
        entry(
            "multi_gauss",
            "double series expansion of (ax, ay; q) products",
            params("a x y q"),
            vec![],
            |v| {
                let [a, x, y, q] = arr(v);
                vec![up(a, q), up(a * x * y, q), up(x, q), up(y, q)]
            },
            sides!(multi_gauss_l, multi_gauss_r),
        ),
        entry(
            "multi_6w5",
            "triple series expansion with terminating 12W11 inner sums",
            params("a x y z q"),
            vec![con("max(|ax|, |ay|, |az|) < 0.35", |v| v[1..4].iter().all(|w| (v[0] * w).norm() < 0.35))],
            |v| {
                let [a, x, y, z, q] = arr(v);
                vec![
                    up(a, q),
                    up(a * x, q),
                    up(a * y, q),
                    up(a * z, q),
                    up(a * q * x * y * z, q),
                    up(x * q, q),
                    up(y * q, q),
                    up(z * q, q),
                    down(a, q),
                ]
            },
            sides!(multi_6w5_l, multi_6w5_r),
        ),
        entry(
            "concluding_transform",
            "limit of Jackson's terminating 8phi7 summation",
            params("a b c d x q"),
            vec![],
            |v| {
                let [a, b, c, d, x, q] = arr(v);
                vec![up(d, q), up(a * b * c / d, q), up(a * x, q), up(c, q)]
            },
            sides!(concluding_l, concluding_r),
        ),
        entry(
            "pfaff_saalschutz_S",
            "q-Pfaff-Saalschutz evaluation of a terminating sum S(n, i)",
            with_kind(
                with_kind(params("a c d m i q"), "m", ParamKind::Integer { lo: 0, hi: 10 }),
                "i",
                ParamKind::Integer { lo: 0, hi: 4 },
            ),
            vec![],
            |v| {
                let [a, c, d, _m, _i, q] = arr(v);
                vec![up(a * c * q, q), up(c * d, q), down(1.0 / (c * d), q)]
            },
            sides!(pfaff_l, pfaff_r),
        ),
    ]
}

/// The catalog, built once.
pub fn catalog() -> &'static [Identity] {
    static CATALOG: OnceLock<Vec<Identity>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn lookup(id: &str) -> QResult<&'static Identity> {
    catalog().iter().find(|e| e.id == id).ok_or_else(|| QError::NotFound(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Scalar<f64> {
        Complex::new(re, im)
    }

    fn r(re: f64) -> Scalar<f64> {
        c(re, 0.0)
    }

    fn qb(re: f64, im: f64) -> QBase<f64> {
        QBase::new(c(re, im)).unwrap()
    }

    fn ctrl() -> SumCtrl {
        SumCtrl::default_for(crate::scalar::Precision::Double)
    }

    fn rel(a: Scalar<f64>, b: Scalar<f64>) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1.0)
    }

    fn poch(a: Scalar<f64>, q: Scalar<f64>, n: i64) -> Scalar<f64> {
        (0..n).fold(r(1.0), |p, k| p * (r(1.0) - a * q.powi(k as i32)))
    }

    #[test]
    fn omega_empty_pochhammers_at_zero() {
        let (x, cc, d, q) = (c(0.3, 0.1), c(0.2, -0.2), c(0.4, 0.3), qb(0.5, 0.1));
        let qv = q.value();
        let expect = (r(1.0) - x * d) * (r(1.0) - cc * qv * qv) / ((r(1.0) - cc * d * qv) * (r(1.0) - x * qv));
        assert!(rel(omega_val(0, x, cc, d, &q).unwrap(), expect) < 1e-15);
    }

    #[test]
    fn omega_reference_value() {
        let v = omega_val(2, r(0.3), r(0.2), r(0.4), &qb(0.5, 0.0)).unwrap();
        assert!((v - r(-0.000933449312801053497332008736571)).norm() < 1e-17);
    }

    #[test]
    fn omega_needs_nonzero_d() {
        assert!(matches!(omega_val(1, r(0.3), r(0.2), r(0.0), &qb(0.5, 0.0)), Err(QError::Pole(_))));
    }

    #[test]
    fn delta_arity_and_tags() {
        let q = qb(0.4, 0.2);
        let spec = SeriesSpec::phi_tilde(&[r(0.3), r(0.5)], &[r(0.2), r(0.6), r(0.7)], q, r(0.1));
        let out = apply_delta(&DeltaOp { n: 4, c: r(0.3), d: r(0.5) }, &spec).unwrap();
        assert_eq!(out.variant, Variant::Phi);
        assert_eq!(out.numerator.len(), 5);
        assert_eq!(out.denominator.len(), 5);
        assert_eq!(out.numerator[1].exact_qpow, Some((r(1.0), -4)));
        assert_eq!(out.denominator[1].exact_qpow, Some((r(0.5), -4)));
        let twice = apply_delta(&DeltaOp { n: 2, c: r(0.1), d: r(0.2) }, &out).unwrap();
        assert_eq!(twice.numerator.len(), 8);
        // the first Δ's (q;q)_k moves into the lower list
        assert_eq!(twice.denominator.len(), 8);
    }

    #[test]
    fn delta_at_zero_is_one() {
        let q = qb(0.4, 0.2);
        let spec = SeriesSpec::phi_tilde(&[c(0.3, 0.1)], &[c(0.2, 0.4)], q, c(0.5, 0.1));
        let out = apply_delta(&DeltaOp { n: 0, c: r(0.3), d: r(0.5) }, &spec).unwrap();
        let s = eval_series(&out, &ctrl()).unwrap();
        assert_eq!(s.value, r(1.0));
        assert!(s.terminated_exactly);
    }

    #[test]
    fn composed_delta_terminates_at_smallest_index() {
        let q = qb(0.45, -0.1);
        let spec = SeriesSpec::phi_tilde(&[c(0.3, 0.1)], &[c(0.2, 0.4)], q, c(0.5, 0.1));
        for (n1, n2, n3) in [(3, 5, 7), (6, 2, 9), (4, 4, 1), (0, 3, 3)] {
            let mut s = spec.clone();
            for (n, cc, d) in [(n1, 0.3, 0.5), (n2, 0.2, -0.4), (n3, 0.25, 0.35)] {
                s = apply_delta(&DeltaOp { n, c: r(cc), d: r(d) }, &s).unwrap();
            }
            let w = eval_series_wide(&s, &ctrl()).unwrap();
            assert!(w.terminated_exactly);
            assert_eq!(w.terms_used as i64, n1.min(n2).min(n3) + 1);
        }
    }

    fn main_point(t: f64, upper: Vec<Scalar<f64>>, lower: Vec<Scalar<f64>>) -> MainPoint<f64> {
        MainPoint { a: r(0.3), c: r(0.2), d: r(0.5), x: r(0.4), t: r(t), upper, lower, q: qb(0.5, 0.0) }
    }

    #[test]
    fn main_expansion_at_zero_argument() {
        let pt = main_point(0.0, vec![], vec![]);
        let l = eval_thm_main_lhs(&pt, &ctrl()).unwrap().value;
        let rr = eval_thm_main_rhs(&pt, &ctrl()).unwrap().value;
        assert!(rel(l, r(1.25)) < 1e-15);
        assert!(rel(rr, r(1.25)) < 1e-10);
    }

    #[test]
    fn main_expansion_without_extra_parameters() {
        let pt = MainPoint {
            a: c(0.6, 0.2),
            c: c(-0.3, 0.4),
            d: c(0.5, -0.2),
            x: c(0.2, 0.5),
            t: c(0.3, 0.2),
            upper: vec![],
            lower: vec![],
            q: qb(0.3, 0.45),
        };
        let l = eval_thm_main_lhs(&pt, &ctrl()).unwrap().value;
        let rr = eval_thm_main_rhs(&pt, &ctrl()).unwrap().value;
        assert!(rel(l, rr) < 1e-8);
    }

    #[test]
    fn main_expansion_rejects_more_numerator_parameters() {
        let pt = main_point(0.1, vec![r(0.2), r(0.3)], vec![r(0.4)]);
        assert!(matches!(eval_thm_main_lhs(&pt, &ctrl()), Err(QError::Domain(_))));
    }

    #[test]
    fn dlidi_collapses_at_c_equal_x() {
        let x = c(0.35, -0.2);
        let pt = DlidiPoint { c: x, x, t: c(0.4, 0.3), upper: vec![c(0.2, 0.1)], lower: vec![c(0.5, 0.5)], q: qb(0.4, 0.3) };
        let (l, rr) = eval_thm_dlidi(&pt, &ctrl()).unwrap();
        assert!(rel(l.value, r(1.0)) < 1e-15);
        assert!(rel(rr.value, r(1.0)) < 1e-15);
    }

    #[test]
    fn dlidi_one_one_point() {
        let pt = DlidiPoint {
            c: c(0.3, -0.4),
            x: c(0.5, 0.2),
            t: c(-0.4, 0.6),
            upper: vec![c(0.7, 0.1)],
            lower: vec![c(-0.2, 0.45)],
            q: qb(-0.35, 0.4),
        };
        let (l, rr) = eval_thm_dlidi(&pt, &ctrl()).unwrap();
        assert!(rel(l.value, rr.value) < 1e-8);
    }

    #[test]
    fn dlidi_small_c_matches_carlitz_entry() {
        let (a1, b1, b2, x, t, q) = (c(0.4, 0.2), c(0.3, -0.5), c(-0.6, 0.1), c(0.45, 0.3), c(0.5, -0.2), c(0.3, 0.5));
        let pt = DlidiPoint { c: r(1e-6), x, t, upper: vec![a1], lower: vec![b1, b2], q: QBase::new(q).unwrap() };
        let near = eval_thm_dlidi_rhs(&pt, &ctrl()).unwrap().value;
        let exact = lookup("carlitz_gen").unwrap().lhs(&[a1, b1, b2, x, t, q], &ctrl()).unwrap().value;
        assert!(rel(near, exact) < 1e-5);
    }

    fn multi_point(m: usize) -> MultiPoint<f64> {
        let x = [c(0.4, 0.2), c(-0.3, 0.35), c(0.25, -0.3)];
        let cc = [c(0.3, -0.4), c(0.5, 0.1), c(-0.2, 0.4)];
        let d = [c(0.3, 0.2), c(0.4, -0.3), c(-0.35, 0.25)];
        MultiPoint {
            upper: vec![c(0.6, 0.3)],
            lower: vec![c(-0.4, 0.5)],
            t: c(0.5, -0.3),
            x: x[..m].to_vec(),
            c: cc[..m].to_vec(),
            d: d[..m].to_vec(),
            q: qb(0.35, 0.3),
        }
    }

    #[test]
    fn multi_single_block_matches_r_eq_s_entry() {
        let pt = multi_point(1);
        let (l, rr) = eval_multi(1, &pt, &ctrl(), None).unwrap();
        let args = [pt.upper[0], pt.lower[0], pt.c[0], pt.d[0], pt.x[0], pt.t, pt.q.value()];
        let e = lookup("r_eq_s").unwrap();
        assert!(rel(l.value, e.lhs(&args, &ctrl()).unwrap().value) < 1e-15);
        assert!(rel(rr.value, e.rhs(&args, &ctrl()).unwrap().value) < 1e-12);
    }

    #[test]
    fn multi_two_blocks_truncated() {
        let mut pt = multi_point(2);
        pt.upper.clear();
        pt.lower.clear();
        let (l, rr) = eval_multi(2, &pt, &ctrl(), Some(40)).unwrap();
        assert!(rel(l.value, rr.value) < 1e-6);
    }

    #[test]
    fn multi_at_zero_argument() {
        let mut pt = multi_point(2);
        pt.t = r(0.0);
        let (l, rr) = eval_multi(2, &pt, &ctrl(), None).unwrap();
        assert_eq!(l.value, r(1.0));
        // t = 0: the sum factors into ∏_i Σ_n Ω(n) = ∏_i 1
        assert!(rel(rr.value, r(1.0)) < 1e-12);
    }

    #[test]
    fn multi_rejects_bad_block_count() {
        let pt = multi_point(2);
        assert!(matches!(eval_multi(3, &pt, &ctrl(), None), Err(QError::Domain(_))));
    }

    #[test]
    fn bailey_beta_of_delta() {
        let q = qb(0.4, 0.3);
        let (t, b) = (c(0.3, 0.2), c(-0.5, 0.1));
        let mut alpha = vec![r(0.0); 6];
        alpha[0] = r(1.0);
        for n in 0..6 {
            let v = wp_bailey_beta(&alpha, t, b, n, &q).unwrap();
            let qv = q.value();
            let n = n as i64;
            let expect = poch(b * t, qv, n) * poch(b, qv, n) / (poch(qv, qv, n) * poch(t * qv, qv, n));
            assert!(rel(v, expect) < 1e-15);
        }
    }

    #[test]
    fn bailey_beta_at_zero() {
        let alpha = [c(0.7, -0.2)];
        let v = wp_bailey_beta(&alpha, c(0.3, 0.2), c(0.5, 0.1), 0, &qb(0.4, 0.0)).unwrap();
        assert_eq!(v, alpha[0]);
    }

    #[test]
    fn catalog_ids_unique() {
        let ids: std::collections::BTreeSet<_> = catalog().iter().map(|e| e.id).collect();
        assert_eq!(ids.len(), catalog().len());
        assert_eq!(catalog().len(), 37);
    }

    #[test]
    fn lookup_known_and_unknown() {
        assert_eq!(lookup("rogers_fine").unwrap().id, "rogers_fine");
        assert!(matches!(lookup("nonsense"), Err(QError::NotFound(_))));
    }

    #[test]
    fn wrong_arity_is_a_domain_error() {
        let e = lookup("rogers_fine").unwrap();
        assert!(matches!(e.lhs::<f64>(&[r(0.1)], &ctrl()), Err(QError::Domain(_))));
    }

    #[test]
    fn base_change_independent_of_root_branch() {
        let p = [c(0.4, 0.3), c(-0.5, 0.2), c(0.3, 0.4), c(0.2, -0.5)];
        let a = base_change_rhs_branch(&p, &ctrl(), false).unwrap().value;
        let b = base_change_rhs_branch(&p, &ctrl(), true).unwrap().value;
        assert!(rel(a, b) < 1e-14);
    }

    #[test]
    fn six_w_five_coefficients() {
        let e = lookup("vwp_6w5_coeff").unwrap();
        for m in 0..3 {
            let p = [c(0.4, 0.2), c(0.3, -0.5), c(-0.2, 0.6), c(0.5, 0.3), r(m as f64), c(0.45, -0.2)];
            let l = e.lhs(&p, &ctrl()).unwrap().value;
            let rr = e.rhs(&p, &ctrl()).unwrap().value;
            assert!(rel(l, rr) < 1e-10, "m = {m}");
        }
    }

    fn cplx() -> impl Strategy<Value = Scalar<f64>> {
        (0.15f64..0.6, 0.0..std::f64::consts::TAU).prop_map(|(m, t)| Complex::from_polar(m, t))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn grfm_rhs_symmetric(a in cplx(), cc in cplx(), d in cplx(), x in cplx(), q in (0.2f64..0.6, 0.0..std::f64::consts::TAU)) {
            let q = Complex::from_polar(q.0, q.1);
            let e = lookup("grfm_sub").unwrap();
            let base = e.rhs(&[a, cc, d, x, q], &ctrl()).unwrap().value;
            for [u, v, w] in [[a, x, d], [d, a, x], [d, x, a], [x, a, d], [x, d, a]] {
                let s = e.rhs(&[u, cc, v, w, q], &ctrl()).unwrap().value;
                prop_assert!(rel(base, s) < 1e-10);
            }
        }
    }
}
