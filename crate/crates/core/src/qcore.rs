//! q-shifted factorials, infinite products, τ and q-binomial coefficients.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{QError, QResult};
use crate::scalar::{Real, Scalar, ScalarExt, Wide};
use crate::term::wide_pow;

/// Consecutive negligible factors required before an infinite product is cut.
pub const K_STOP_PRODUCT: usize = 3;

/// Hard cap on the number of factors of an infinite product.
const MAX_PRODUCT_FACTORS: usize = 100_000;

/// Threshold below which a reciprocal factor counts as a pole.
pub fn eps_pole<R: Real>(a: Scalar<R>) -> f64 {
    1e-12 * (1.0 + a.modulus())
}

/// The base `q`, with `0 < |q| < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QBase<R: Real> {
    q: Scalar<R>,
}

impl<R: Real> QBase<R> {
    pub fn new(q: Scalar<R>) -> QResult<Self> {
        let m = q.modulus();
        if !(m > 0.0 && m < 1.0) {
            return Err(QError::Domain(format!("base must satisfy 0 < |q| < 1, got |q| = {m}")));
        }
        Ok(QBase { q })
    }

    pub fn value(&self) -> Scalar<R> {
        self.q
    }

    /// `q^m` by binary exponentiation.
    pub fn pow(&self, m: i64) -> Scalar<R> {
        self.q.powi_bin(m)
    }

    /// The base `q^2`.
    pub fn squared(&self) -> Self {
        QBase { q: self.q * self.q }
    }
}

/// A series parameter, optionally known exactly as `coeff · q^exponent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Param<R: Real> {
    pub value: Scalar<R>,
    pub exact_qpow: Option<(Scalar<R>, i64)>,
}

impl<R: Real> Param<R> {
    pub fn new(value: Scalar<R>) -> Self {
        Param { value, exact_qpow: None }
    }

    /// `coeff · q^exponent`, tagged.
    pub fn qpow(coeff: Scalar<R>, exponent: i64, q: &QBase<R>) -> Self {
        Param { value: coeff * q.pow(exponent), exact_qpow: Some((coeff, exponent)) }
    }

    /// `q^exponent`, tagged.
    pub fn qpow_unit(exponent: i64, q: &QBase<R>) -> Self {
        Self::qpow(Complex::one(), exponent, q)
    }

    /// `value · q^k`, using the tag when present so large shifts stay exact.
    pub fn shifted(&self, k: i64, q: &QBase<R>) -> Scalar<R> {
        match self.exact_qpow {
            Some((c, e)) => {
                if e + k == 0 {
                    c
                } else {
                    c * q.pow(e + k)
                }
            }
            None => self.value * q.pow(k),
        }
    }

    /// The factor `1 - value · q^k`; exactly zero when the tag says so.
    pub fn factor(&self, k: i64, q: &QBase<R>) -> Scalar<R> {
        if let Some((c, e)) = self.exact_qpow {
            if e + k == 0 && c == Complex::one() {
                return Complex::zero();
            }
        }
        Complex::<R>::one() - self.shifted(k, q)
    }

    /// `log2 |value · q^k|`, from the tag when present.
    pub fn shifted_log2(&self, k: i64, q: &QBase<R>) -> f64 {
        match self.exact_qpow {
            Some((c, e)) => c.modulus().log2() + (e + k) as f64 * q.value().modulus().log2(),
            None => self.value.modulus().log2() + k as f64 * q.value().modulus().log2(),
        }
    }

    /// `1 - value · q^k` in wide form, finite for tagged parameters with a
    /// large negative shift.
    pub fn factor_wide(&self, k: i64, q: &QBase<R>) -> Wide<R> {
        match self.exact_qpow {
            Some((c, e)) if e + k < 0 && self.shifted_log2(k, q) > 512.0 => {
                // 1 - c q^m = q^m (q^{-m} - c)
                let m = e + k;
                Wide::from_scalar(q.pow(-m) - c).mul(wide_pow(q.value(), m))
            }
            _ => Wide::from_scalar(self.factor(k, q)),
        }
    }
}

impl<R: Real> From<Scalar<R>> for Param<R> {
    fn from(value: Scalar<R>) -> Self {
        Param::new(value)
    }
}

fn check_pole<R: Real>(f: Scalar<R>, a: Scalar<R>, what: &str) -> QResult<()> {
    if f.modulus() < eps_pole(a) {
        Err(QError::Pole(format!("{what}: vanishing factor 1 - {:?}·q^k", a.to_c64())))
    } else {
        Ok(())
    }
}

/// `(a;q)_n`. Negative `n` uses `1/∏_{k=1}^{|n|}(1 - a q^{-k})`.
pub fn qpoch<R: Real>(a: Scalar<R>, q: &QBase<R>, n: i64) -> QResult<Scalar<R>> {
    let one: Scalar<R> = Complex::one();
    if n >= 0 {
        let mut p = one;
        for k in 0..n {
            p = p * (one - a * q.pow(k));
        }
        p.check_finite("qpoch")
    } else {
        let mut p = one;
        for k in 1..=(-n) {
            let f = one - a * q.pow(-k);
            check_pole(f, a, "qpoch with negative index")?;
            p = p * f;
        }
        (one / p).check_finite("qpoch")
    }
}

/// `(a;q)_n` for a tagged parameter; `(q^{-N};q)_n` is exactly zero for `n > N`.
pub fn qpoch_param<R: Real>(a: &Param<R>, q: &QBase<R>, n: i64) -> QResult<Scalar<R>> {
    if a.exact_qpow.is_none() {
        return qpoch(a.value, q, n);
    }
    let one: Scalar<R> = Complex::one();
    let mut p = one;
    if n >= 0 {
        for k in 0..n {
            p = p * a.factor(k, q);
        }
        p.check_finite("qpoch")
    } else {
        for k in 1..=(-n) {
            let f = a.factor(-k, q);
            check_pole(f, a.value, "qpoch with negative index")?;
            p = p * f;
        }
        (one / p).check_finite("qpoch")
    }
}

/// `(a;q)_∞` with its absolute truncation bound.
pub fn qpoch_inf_with_tail<R: Real>(a: Scalar<R>, q: &QBase<R>, tol: f64) -> (Scalar<R>, f64) {
    let one: Scalar<R> = Complex::one();
    let mut p = one;
    let mut small = 0;
    let mut aqk = a;
    let qm = q.value().modulus();
    for _ in 0..MAX_PRODUCT_FACTORS {
        let m = aqk.modulus();
        if m < tol {
            small += 1;
            if small >= K_STOP_PRODUCT {
                // remaining factors perturb the product by about Σ|a q^j|
                let rest = m * qm / (1.0 - qm);
                return (p, p.modulus() * 2.0 * rest);
            }
        } else {
            small = 0;
        }
        p = p * (one - aqk);
        if p.re.is_zero() && p.im.is_zero() {
            return (p, 0.0);
        }
        aqk = aqk * q.value();
    }
    (p, f64::INFINITY)
}

/// `(a;q)_∞`.
pub fn qpoch_inf<R: Real>(a: Scalar<R>, q: &QBase<R>, tol: f64) -> Scalar<R> {
    qpoch_inf_with_tail(a, q, tol).0
}

/// `(a_1, ..., a_k; q)_n`.
pub fn qpoch_multi<R: Real>(as_: &[Scalar<R>], q: &QBase<R>, n: i64) -> QResult<Scalar<R>> {
    let mut p: Scalar<R> = Complex::one();
    for a in as_ {
        p = p * qpoch(*a, q, n)?;
    }
    Ok(p)
}

/// `τ(n) = (-1)^n q^{n(n-1)/2}`.
pub fn tau<R: Real>(n: i64, q: &QBase<R>) -> Scalar<R> {
    let e = n * (n - 1) / 2;
    let p = q.pow(e);
    if n.rem_euclid(2) == 1 {
        -p
    } else {
        p
    }
}

/// Gaussian binomial `[n, k]_q`.
pub fn qbinom<R: Real>(n: i64, k: i64, q: &QBase<R>) -> QResult<Scalar<R>> {
    if k < 0 || k > n {
        return Err(QError::Domain(format!("qbinom needs 0 <= k <= n, got n={n}, k={k}")));
    }
    let qq = q.value();
    let num = qpoch(qq, q, n)?;
    let den = qpoch(qq, q, n - k)? * qpoch(qq, q, k)?;
    Ok(num / den)
}

/// Running product of Pochhammer ratios and closed-form factors, with a
/// propagated relative truncation bound from any infinite products.
#[derive(Clone, Copy, Debug)]
pub struct Product<R: Real> {
    value: Scalar<R>,
    rel_tail: f64,
    tol: f64,
}

impl<R: Real> Product<R> {
    pub fn new(tol: f64) -> Self {
        Product { value: Complex::one(), rel_tail: 0.0, tol }
    }

    pub fn times(mut self, z: Scalar<R>) -> Self {
        self.value = self.value * z;
        self
    }

    pub fn over(mut self, z: Scalar<R>) -> QResult<Self> {
        if z.modulus() == 0.0 {
            return Err(QError::Pole("division by zero factor".into()));
        }
        self.value = self.value / z;
        Ok(self)
    }

    /// Multiplies by `(a;q)_∞` for each `a`.
    pub fn inf_num(mut self, as_: &[Scalar<R>], q: &QBase<R>) -> Self {
        for a in as_ {
            let (p, t) = qpoch_inf_with_tail(*a, q, self.tol);
            self.value = self.value * p;
            let m = p.modulus();
            if m > 0.0 {
                self.rel_tail += t / m;
            }
        }
        self
    }

    /// Divides by `(a;q)_∞` for each `a`.
    pub fn inf_den(mut self, as_: &[Scalar<R>], q: &QBase<R>) -> QResult<Self> {
        for a in as_ {
            let (p, t) = qpoch_inf_with_tail(*a, q, self.tol);
            let m = p.modulus();
            if m < eps_pole(*a) {
                return Err(QError::Pole(format!("infinite product ({:?};q) vanishes", a.to_c64())));
            }
            self.value = self.value / p;
            self.rel_tail += t / m;
        }
        Ok(self)
    }

    pub fn value(&self) -> Scalar<R> {
        self.value
    }

    /// Absolute truncation bound.
    pub fn tail(&self) -> f64 {
        self.rel_tail * self.value.modulus()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Dd;

    fn qb(q: f64) -> QBase<f64> {
        QBase::new(Complex::new(q, 0.0)).unwrap()
    }
    fn c(x: f64) -> Scalar<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn qpoch_examples() {
        let q = qb(0.5);
        assert_eq!(qpoch(c(0.7), &q, 0).unwrap(), c(1.0));
        assert!((qpoch(c(0.5), &q, 2).unwrap() - c(0.375)).norm() < 1e-15);
        assert!((qpoch(c(2.0), &q, -1).unwrap() - c(-1.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn qpoch_negative_index_pole() {
        let q = qb(0.5);
        // a q^{-1} = 1
        assert!(matches!(qpoch(c(0.5), &q, -1), Err(QError::Pole(_))));
    }

    #[test]
    fn qpoch_inf_examples() {
        let q = qb(0.5);
        assert_eq!(qpoch_inf(c(0.0), &q, 1e-16), c(1.0));
        let v = qpoch_inf(c(0.5), &q, 1e-16);
        assert!((v.re - 0.288_788_095_086_602_4).abs() < 1e-15);
        assert_eq!(qpoch_inf(c(1.0), &q, 1e-16), c(0.0));
    }

    #[test]
    fn qpoch_inf_tail_is_small() {
        let q = qb(0.8);
        let (v, t) = qpoch_inf_with_tail(c(0.6), &q, 1e-16);
        assert!(t >= 0.0 && t < 1e-14 * v.norm().max(1.0));
    }

    #[test]
    fn qpoch_multi_examples() {
        let q = qb(0.5);
        assert_eq!(qpoch_multi(&[], &q, 5).unwrap(), c(1.0));
        assert!((qpoch_multi(&[c(0.5), c(0.25)], &q, 1).unwrap() - c(0.375)).norm() < 1e-15);
        assert!((qpoch_multi(&[c(2.0)], &q, -1).unwrap() - c(-1.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn tau_examples() {
        let q = qb(0.5);
        assert_eq!(tau(0, &q), c(1.0));
        assert_eq!(tau(1, &q), c(-1.0));
        assert_eq!(tau(3, &q), c(-0.125));
    }

    #[test]
    fn qbinom_examples() {
        let q = qb(0.5);
        assert!((qbinom(4, 0, &q).unwrap() - c(1.0)).norm() < 1e-15);
        assert!((qbinom(3, 1, &q).unwrap() - c(1.75)).norm() < 1e-15);
        assert!((qbinom(2, 1, &q).unwrap() - c(1.5)).norm() < 1e-15);
        assert!(matches!(qbinom(2, 3, &q), Err(QError::Domain(_))));
    }

    #[test]
    fn tagged_param_terminates_exactly() {
        let q = qb(0.3);
        let p = Param::qpow_unit(-4, &q);
        assert_eq!(qpoch_param(&p, &q, 5).unwrap(), c(0.0));
        assert!(qpoch_param(&p, &q, 4).unwrap().norm() > 0.0);
    }

    #[test]
    fn base_rejects_unit_modulus() {
        assert!(QBase::new(Complex::new(1.0, 0.0)).is_err());
        assert!(QBase::new(Complex::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn double_double_qpoch_agrees_with_f64() {
        let qd = QBase::<Dd>::new(Scalar::<Dd>::from_parts(0.4, 0.2)).unwrap();
        let a = Scalar::<Dd>::from_parts(0.3, -0.5);
        let v = qpoch(a, &qd, 7).unwrap().to_c64();
        let w = qpoch(Complex::new(0.3, -0.5), &QBase::new(Complex::new(0.4, 0.2)).unwrap(), 7).unwrap();
        assert!((v - w).norm() < 1e-14);
    }
}
