//! Products of Pochhammer symbols, powers and `τ(n)` built in wide form.

use num_complex::Complex;
use num_traits::One;

use crate::error::{QError, QResult};
use crate::qcore::{eps_pole, qpoch_inf_with_tail, QBase};
use crate::scalar::{Real, Scalar, ScalarExt, Wide};

/// `z^n` without leaving the wide range.
pub fn wide_pow<R: Real>(z: Scalar<R>, n: i64) -> Wide<R> {
    let mut base = if n < 0 { Wide::one().div_scalar(z) } else { Wide::from_scalar(z) };
    let mut e = n.unsigned_abs();
    let mut acc = Wide::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(base);
        }
    }
    acc
}

/// A running product of factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term<R: Real>(Wide<R>);

impl<R: Real> Term<R> {
    pub fn one() -> Self {
        Term(Wide::one())
    }

    pub fn from_wide(w: Wide<R>) -> Self {
        Term(w)
    }

    pub fn wide(self) -> Wide<R> {
        self.0
    }

    pub fn times(self, z: Scalar<R>) -> Self {
        Term(self.0.mul_scalar(z))
    }

    pub fn times_wide(self, w: Wide<R>) -> Self {
        Term(self.0.mul(w))
    }

    pub fn over(self, z: Scalar<R>) -> QResult<Self> {
        if z.modulus() == 0.0 || !z.finite() {
            return Err(QError::Pole("division by a vanishing factor".into()));
        }
        Ok(Term(self.0.div_scalar(z)))
    }

    /// Times `(a;q)_n`, `n >= 0`.
    pub fn poch(self, a: Scalar<R>, q: &QBase<R>, n: i64) -> Self {
        let one = Complex::<R>::one();
        let mut w = self.0;
        let mut ak = a;
        for _ in 0..n {
            w = w.mul_scalar(one - ak);
            ak = ak * q.value();
        }
        Term(w)
    }

    pub fn pochs(self, as_: &[Scalar<R>], q: &QBase<R>, n: i64) -> Self {
        as_.iter().fold(self, |t, a| t.poch(*a, q, n))
    }

    /// Divided by `(a;q)_n`, `n >= 0`, rejecting vanishing factors.
    pub fn poch_over(self, a: Scalar<R>, q: &QBase<R>, n: i64) -> QResult<Self> {
        let one = Complex::<R>::one();
        let mut den = Wide::one();
        let mut ak = a;
        for k in 0..n {
            let f = one - ak;
            if f.modulus() < eps_pole(ak) {
                return Err(QError::Pole(format!("factor 1 - {:?}·q^{k} vanishes", a.to_c64())));
            }
            den = den.mul_scalar(f);
            ak = ak * q.value();
        }
        Ok(Term(self.0.div(den)))
    }

    pub fn pochs_over(self, as_: &[Scalar<R>], q: &QBase<R>, n: i64) -> QResult<Self> {
        as_.iter().try_fold(self, |t, a| t.poch_over(*a, q, n))
    }

    pub fn pow(self, z: Scalar<R>, n: i64) -> Self {
        Term(self.0.mul(wide_pow(z, n)))
    }

    /// Times `q^e`.
    pub fn qpow(self, q: &QBase<R>, e: i64) -> Self {
        self.pow(q.value(), e)
    }

    /// Times `τ(n) = (-1)^n q^{n(n-1)/2}`.
    pub fn tau(self, n: i64, q: &QBase<R>) -> Self {
        let t = self.qpow(q, n * (n - 1) / 2);
        if n.rem_euclid(2) == 1 {
            Term(t.0.neg())
        } else {
            t
        }
    }
}

/// `∏_{k≥0} (1 - c·q^{e + step·k})` with the large leading factors kept wide;
/// returns the product and its absolute truncation bound.
pub fn shifted_inf<R: Real>(c: Scalar<R>, e: i64, q: &QBase<R>, step: i64, tol: f64) -> QResult<(Wide<R>, f64)> {
    let one = Complex::<R>::one();
    let mut w = Wide::one();
    let mut e = e;
    while e < 0 {
        w = w.mul_scalar(one - c * q.pow(e));
        e += step;
    }
    let stepped = QBase::new(q.pow(step))?;
    let (p, t) = qpoch_inf_with_tail(c * q.pow(e), &stepped, tol);
    let m = p.modulus();
    let v = w.mul_scalar(p);
    let rel = if m > 0.0 { t / m } else { 0.0 };
    Ok((v, rel * v.abs_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{qpoch, qpoch_inf, tau};

    fn qb(q: f64) -> QBase<f64> {
        QBase::new(Complex::new(q, 0.0)).unwrap()
    }
    fn c(x: f64) -> Scalar<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn matches_scalar_products() {
        let q = qb(0.6);
        let a = Complex::new(0.3, 0.2);
        let t = Term::one().poch(a, &q, 7).poch_over(c(0.4), &q, 5).unwrap().pow(c(0.7), 3).tau(6, &q);
        let direct = qpoch(a, &q, 7).unwrap() / qpoch(c(0.4), &q, 5).unwrap() * 0.343 * tau(6, &q);
        assert!((t.wide().to_scalar().unwrap() - direct).norm() < 1e-15);
    }

    #[test]
    fn tau_stays_wide() {
        let q = qb(0.2);
        let t = Term::<f64>::one().tau(200, &q).wide();
        assert!((t.log2_abs() - 19900.0 * 0.2f64.log2()).abs() < 1e-6);
        assert!(t.to_scalar().unwrap() == c(0.0));
    }

    #[test]
    fn vanishing_denominator_is_a_pole() {
        let q = qb(0.5);
        assert!(matches!(Term::one().poch_over(c(4.0), &q, 3), Err(QError::Pole(_))));
    }

    #[test]
    fn shifted_product() {
        let q = qb(0.5);
        let (w, _) = shifted_inf(c(0.3), -3, &q, 2, 1e-18).unwrap();
        let direct = (1.0 - 0.3 * 8.0) * (1.0 - 0.3 * 2.0) * qpoch_inf(c(0.15), &qb(0.25), 1e-18);
        assert!((w.to_scalar().unwrap() - direct).norm() < 1e-14);
    }

    #[test]
    fn negative_powers() {
        let w = wide_pow(c(0.5), -4);
        assert_eq!(w.to_scalar().unwrap(), c(16.0));
    }
}
