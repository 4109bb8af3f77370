//! Unilateral, tilde and bilateral basic hypergeometric series with adaptive
//! truncation, tag-based termination and compensated summation.

use num_complex::Complex;
use num_traits::One;

use crate::error::{QError, QResult};
use crate::qcore::{eps_pole, qpoch, qpoch_param, tau, Param, QBase};
use crate::scalar::{Precision, Real, Scalar, ScalarExt, Wide, WideSum};
use crate::term::wide_pow;

/// Consecutive negligible terms required before a series is cut.
pub const K_STOP_SERIES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `r φ s`: `z^n/(q;q)_n` and `τ(n)^{1+s-r}`.
    Phi,
    /// `r φ̃ s`: `τ(n)^{s-r}`, no `(q;q)_n`.
    PhiTilde,
    /// `r ψ r`, summed over all integers.
    PsiBilateral,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec<R: Real> {
    pub variant: Variant,
    pub numerator: Vec<Param<R>>,
    pub denominator: Vec<Param<R>>,
    pub base: QBase<R>,
    pub argument: Scalar<R>,
}

fn untagged<R: Real>(v: &[Scalar<R>]) -> Vec<Param<R>> {
    v.iter().map(|z| Param::new(*z)).collect()
}

impl<R: Real> SeriesSpec<R> {
    pub fn new(
        variant: Variant,
        numerator: Vec<Param<R>>,
        denominator: Vec<Param<R>>,
        base: QBase<R>,
        argument: Scalar<R>,
    ) -> QResult<Self> {
        if variant == Variant::PsiBilateral && numerator.len() != denominator.len() {
            return Err(QError::Domain("bilateral series needs equal-length parameter lists".into()));
        }
        Ok(SeriesSpec { variant, numerator, denominator, base, argument })
    }

    pub fn phi(num: &[Scalar<R>], den: &[Scalar<R>], base: QBase<R>, z: Scalar<R>) -> Self {
        SeriesSpec { variant: Variant::Phi, numerator: untagged(num), denominator: untagged(den), base, argument: z }
    }

    pub fn phi_tilde(num: &[Scalar<R>], den: &[Scalar<R>], base: QBase<R>, z: Scalar<R>) -> Self {
        SeriesSpec {
            variant: Variant::PhiTilde,
            numerator: untagged(num),
            denominator: untagged(den),
            base,
            argument: z,
        }
    }

    pub fn psi(num: &[Scalar<R>], den: &[Scalar<R>], base: QBase<R>, z: Scalar<R>) -> QResult<Self> {
        Self::new(Variant::PsiBilateral, untagged(num), untagged(den), base, z)
    }

    /// Power of `τ(n)` carried by each term.
    pub fn tau_power(&self) -> i64 {
        let r = self.numerator.len() as i64;
        let s = self.denominator.len() as i64;
        match self.variant {
            Variant::Phi => 1 + s - r,
            Variant::PhiTilde => s - r,
            Variant::PsiBilateral => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumCtrl {
    pub tol: f64,
    pub max_terms: usize,
    pub k_stop: usize,
}

impl SumCtrl {
    pub fn new(tol: f64, max_terms: usize, k_stop: usize) -> QResult<Self> {
        if !(tol > 0.0) || max_terms < 1 || k_stop < 1 {
            return Err(QError::Domain("SumCtrl needs tol > 0, max_terms >= 1, k_stop >= 1".into()));
        }
        Ok(SumCtrl { tol, max_terms, k_stop })
    }

    pub fn default_for(p: Precision) -> Self {
        let tol = match p {
            Precision::Double => 1e-14,
            Precision::Extended => 1e-28,
        };
        SumCtrl { tol, max_terms: 4000, k_stop: K_STOP_SERIES }
    }

    /// Tolerance used for infinite products alongside this control.
    pub fn product_tol(&self) -> f64 {
        self.tol * 1e-3
    }
}

/// A summed value with bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumResult<R: Real> {
    pub value: Scalar<R>,
    pub terms_used: usize,
    pub terminated_exactly: bool,
    /// Absolute truncation bound.
    pub tail_estimate: f64,
}

impl<R: Real> SumResult<R> {
    /// A value known in closed form up to `tail`.
    pub fn exact(value: Scalar<R>, tail: f64) -> Self {
        SumResult { value, terms_used: 0, terminated_exactly: true, tail_estimate: tail }
    }

    pub fn add(self, o: SumResult<R>) -> Self {
        SumResult {
            value: self.value + o.value,
            terms_used: self.terms_used + o.terms_used,
            terminated_exactly: self.terminated_exactly && o.terminated_exactly,
            tail_estimate: self.tail_estimate + o.tail_estimate,
        }
    }

    pub fn sub(self, o: SumResult<R>) -> Self {
        self.add(o.scale(-Complex::<R>::one()))
    }

    pub fn mul(self, o: SumResult<R>) -> Self {
        let (a, b) = (self.value.modulus(), o.value.modulus());
        SumResult {
            value: self.value * o.value,
            terms_used: self.terms_used + o.terms_used,
            terminated_exactly: self.terminated_exactly && o.terminated_exactly,
            tail_estimate: a * o.tail_estimate + b * self.tail_estimate + self.tail_estimate * o.tail_estimate,
        }
    }

    pub fn scale(self, z: Scalar<R>) -> Self {
        SumResult { value: self.value * z, tail_estimate: self.tail_estimate * z.modulus(), ..self }
    }
}

/// A sum kept in wide-exponent form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WideResult<R: Real> {
    pub value: Wide<R>,
    pub terms_used: usize,
    pub terminated_exactly: bool,
    /// `log2` of the absolute tail bound.
    pub tail_log2: f64,
}

impl<R: Real> WideResult<R> {
    pub fn to_sum(self) -> QResult<SumResult<R>> {
        Ok(SumResult {
            value: self.value.to_scalar()?,
            terms_used: self.terms_used,
            terminated_exactly: self.terminated_exactly,
            tail_estimate: self.tail_log2.exp2(),
        })
    }

    fn single(value: Wide<R>) -> Self {
        WideResult { value, terms_used: 1, terminated_exactly: true, tail_log2: f64::NEG_INFINITY }
    }
}

/// Sums `f(0) + f(1) + ...` under the stop rule of `ctrl`.
pub fn sum_sequence<R, F>(ctrl: &SumCtrl, mut f: F) -> QResult<WideResult<R>>
where
    R: Real,
    F: FnMut(usize) -> QResult<Wide<R>>,
{
    let log_tol = ctrl.tol.log2();
    let mut acc = WideSum::new();
    let mut small = 0;
    // first and last nonzero terms of the current run of small terms
    let mut first: Option<(usize, f64)> = None;
    let mut last: Option<(usize, f64)> = None;
    for n in 0..ctrl.max_terms {
        let t = f(n)?;
        if !t.is_finite() {
            return Err(QError::Overflow("series term"));
        }
        acc.add(t);
        let lt = t.log2_abs();
        let lp = acc.value().log2_abs().max(0.0);
        if lt < log_tol + lp {
            small += 1;
            if lt > f64::NEG_INFINITY {
                first = first.or(Some((n, lt)));
                last = Some((n, lt));
            }
        } else {
            small = 0;
            first = None;
            last = Some((n, lt));
        }
        if small >= ctrl.k_stop {
            let tail_log2 = match (first, last) {
                (_, None) => f64::NEG_INFINITY,
                (Some((j, p)), Some((i, l))) if i > j => {
                    let log_rho = (l - p) / (i - j) as f64;
                    if log_rho < 0.0 {
                        let rho = log_rho.exp2();
                        // tail counted from the last nonzero term onward
                        let k = (n - i) as f64;
                        l + log_rho * k + (rho / (1.0 - rho)).log2()
                    } else {
                        f64::INFINITY
                    }
                }
                // a single nonzero term in the run: zeros around it
                _ => f64::NEG_INFINITY,
            };
            // a run of small but growing terms has not reached its tail yet
            if tail_log2 < f64::INFINITY {
                return Ok(WideResult { value: acc.value(), terms_used: n + 1, terminated_exactly: false, tail_log2 });
            }
        }
    }
    Err(QError::NoConvergence { terms: ctrl.max_terms })
}

/// Sums `f(0) + ... + f(n_max)` exactly.
pub fn sum_finite<R, F>(n_max: usize, mut f: F) -> QResult<WideResult<R>>
where
    R: Real,
    F: FnMut(usize) -> QResult<Wide<R>>,
{
    let mut acc = WideSum::new();
    for n in 0..=n_max {
        let t = f(n)?;
        if !t.is_finite() {
            return Err(QError::Overflow("series term"));
        }
        acc.add(t);
    }
    Ok(WideResult { value: acc.value(), terms_used: n_max + 1, terminated_exactly: true, tail_log2: f64::NEG_INFINITY })
}

/// Smallest `N` with a numerator parameter tagged exactly `q^{-N}`.
pub fn is_terminating<R: Real>(spec: &SeriesSpec<R>) -> Option<i64> {
    spec.numerator
        .iter()
        .filter_map(|p| match p.exact_qpow {
            Some((c, e)) if e <= 0 && c == Complex::one() => Some(-e),
            _ => None,
        })
        .min()
}

fn den_factor<R: Real>(b: &Param<R>, k: i64, q: &QBase<R>) -> QResult<Scalar<R>> {
    let f = b.factor(k, q);
    if f.modulus() < eps_pole(b.shifted(k, q)) {
        return Err(QError::Pole(format!("denominator parameter {:?} at index {k}", b.value.to_c64())));
    }
    Ok(f)
}

/// Ratio `term(n+1)/term(n)` of a unilateral series.
fn unilateral_ratio<R: Real>(spec: &SeriesSpec<R>, n: i64) -> QResult<Scalar<R>> {
    let q = &spec.base;
    let mut num = Wide::from_scalar(spec.argument);
    for a in &spec.numerator {
        num = num.mul(a.factor_wide(n, q));
    }
    let mut den = Wide::one();
    for b in &spec.denominator {
        if b.shifted_log2(n, q) > 512.0 {
            den = den.mul(b.factor_wide(n, q));
        } else {
            den = den.mul_scalar(den_factor(b, n, q)?);
        }
    }
    if spec.variant == Variant::Phi {
        den = den.mul_scalar(Complex::<R>::one() - q.pow(n + 1));
    }
    let e = spec.tau_power();
    if e != 0 {
        // τ(n+1)/τ(n) = -q^n
        num = num.mul(wide_pow(q.value(), n * e));
        if e % 2 != 0 {
            num = num.neg();
        }
    }
    num.div(den).to_scalar()?.check_finite("term ratio")
}

/// The `n`-th summand, evaluated directly.
pub fn term<R: Real>(spec: &SeriesSpec<R>, n: i64) -> QResult<Scalar<R>> {
    let q = &spec.base;
    if n < 0 && spec.variant != Variant::PsiBilateral {
        return Err(QError::Domain("negative index for a unilateral series".into()));
    }
    let mut v = spec.argument.powi_bin(n);
    for a in &spec.numerator {
        v = v * qpoch_param(a, q, n)?;
    }
    for b in &spec.denominator {
        let p = qpoch_param(b, q, n)?;
        if p.modulus() == 0.0 {
            return Err(QError::Pole(format!("denominator parameter {:?} at index {n}", b.value.to_c64())));
        }
        if n >= 0 {
            for k in 0..n {
                den_factor(b, k, q)?;
            }
        }
        v = v / p;
    }
    if spec.variant == Variant::Phi {
        v = v / qpoch(q.value(), q, n)?;
    }
    let e = spec.tau_power();
    if e != 0 {
        v = v * tau(n, q).powi_bin(e);
    }
    v.check_finite("series term")
}

/// Unilateral sum in wide form.
pub fn eval_series_wide<R: Real>(spec: &SeriesSpec<R>, ctrl: &SumCtrl) -> QResult<WideResult<R>> {
    if spec.variant == Variant::PsiBilateral {
        return Err(QError::Domain("use eval_bilateral for bilateral series".into()));
    }
    if spec.argument.re.is_zero() && spec.argument.im.is_zero() {
        return Ok(WideResult::single(Wide::one()));
    }
    let mut cur = Wide::one();
    let mut step = |n: usize| -> QResult<Wide<R>> {
        if n > 0 {
            cur = cur.mul_scalar(unilateral_ratio(spec, n as i64 - 1)?);
        }
        Ok(cur)
    };
    match is_terminating(spec) {
        Some(n_max) => {
            if n_max as usize >= ctrl.max_terms {
                return Err(QError::NoConvergence { terms: ctrl.max_terms });
            }
            sum_finite(n_max as usize, step)
        }
        None => sum_sequence(ctrl, &mut step),
    }
}

/// Unilateral sum.
pub fn eval_series<R: Real>(spec: &SeriesSpec<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    eval_series_wide(spec, ctrl)?.to_sum()
}

/// Bilateral sum in wide form; both tails summed independently.
pub fn eval_bilateral_wide<R: Real>(spec: &SeriesSpec<R>, ctrl: &SumCtrl) -> QResult<WideResult<R>> {
    if spec.variant != Variant::PsiBilateral {
        return Err(QError::Domain("eval_bilateral needs a bilateral spec".into()));
    }
    let z = spec.argument;
    if z.re.is_zero() && z.im.is_zero() {
        return Ok(WideResult::single(Wide::one()));
    }
    let q = &spec.base;
    let pos = {
        let mut cur = Wide::one();
        sum_sequence(ctrl, |n| {
            if n > 0 {
                cur = cur.mul_scalar(unilateral_ratio(spec, n as i64 - 1)?);
            }
            Ok(cur)
        })?
    };
    let neg = {
        // term(-n) = term(-n+1) · ∏(1 - b q^{-n}) / ∏(1 - a q^{-n}) / z,
        // each factor rescaled by q^n: (q^n - b) / (q^n - a)
        let mut cur = Wide::one();
        let zinv = Complex::<R>::one() / z;
        sum_sequence(ctrl, |n| {
            let u = q.pow(n as i64 + 1);
            let mut r = zinv;
            for b in &spec.denominator {
                r = r * (u - b.shifted(0, q));
            }
            for a in &spec.numerator {
                let av = a.shifted(0, q);
                let f = u - av;
                if f.modulus() < 1e-12 * (u.modulus() + av.modulus()) {
                    return Err(QError::Pole(format!("numerator parameter {:?} on the negative tail", av.to_c64())));
                }
                r = r / f;
            }
            cur = cur.mul_scalar(r.check_finite("bilateral ratio")?);
            Ok(cur)
        })?
    };
    let mut acc = WideSum::new();
    acc.add(pos.value);
    acc.add(neg.value);
    let t = pos.tail_log2.max(neg.tail_log2) + 1.0;
    Ok(WideResult {
        value: acc.value(),
        terms_used: pos.terms_used + neg.terms_used,
        terminated_exactly: false,
        tail_log2: t,
    })
}

pub fn eval_bilateral<R: Real>(spec: &SeriesSpec<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    eval_bilateral_wide(spec, ctrl)?.to_sum()
}

/// `1 - q a1 / a` as a tagged lower parameter `q a1 / a`.
fn wp_partner<R: Real>(a1: Scalar<R>, a: &Param<R>, q: &QBase<R>) -> QResult<Param<R>> {
    if a.value.modulus() == 0.0 {
        return Err(QError::Domain("well-poised parameter must be nonzero".into()));
    }
    Ok(match a.exact_qpow {
        Some((c, e)) => Param::qpow(a1 / c, 1 - e, q),
        None => Param::new(q.value() * a1 / a.value),
    })
}

/// Expands `r W (r-1) (a1; a4, ..., ar; q, z)` into a φ spec.
pub fn vwp_spec<R: Real>(a1: Scalar<R>, upper: &[Param<R>], q: QBase<R>, z: Scalar<R>) -> QResult<SeriesSpec<R>> {
    if a1.modulus() == 0.0 {
        return Err(QError::Domain("very-well-poised series needs a1 != 0".into()));
    }
    let s = a1.sqrt_principal();
    let qq = q.value();
    let mut num = vec![Param::new(a1), Param::new(qq * s), Param::new(-(qq * s))];
    let mut den = vec![Param::new(s), Param::new(-s)];
    for a in upper {
        num.push(*a);
        den.push(wp_partner(a1, a, &q)?);
    }
    Ok(SeriesSpec { variant: Variant::Phi, numerator: num, denominator: den, base: q, argument: z })
}
