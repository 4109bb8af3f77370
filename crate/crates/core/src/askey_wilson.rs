//! Askey–Wilson polynomials from their terminating ₄φ₃ form, and both sides
//! of their generating function.

use num_complex::Complex;
use num_traits::One;

use crate::error::{QError, QResult};
use crate::qcore::{Param, QBase};
use crate::scalar::{Real, Scalar, ScalarExt, Wide};
use crate::series::{eval_series, eval_series_wide, sum_sequence, SeriesSpec, SumCtrl, SumResult, Variant};
use crate::term::Term;

/// Evaluation point: the pair `e^{±iθ}` and the four parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AWPoint<R: Real> {
    pub e_plus: Scalar<R>,
    pub e_minus: Scalar<R>,
    pub a: Scalar<R>,
    pub b: Scalar<R>,
    pub c: Scalar<R>,
    pub d: Scalar<R>,
    pub q: QBase<R>,
}

impl<R: Real> AWPoint<R> {
    /// `e_minus = 1/e_plus`.
    pub fn new(e_plus: Scalar<R>, a: Scalar<R>, b: Scalar<R>, c: Scalar<R>, d: Scalar<R>, q: QBase<R>) -> QResult<Self> {
        if e_plus.modulus() == 0.0 {
            return Err(QError::Domain("e_plus must be nonzero".into()));
        }
        Ok(AWPoint { e_plus, e_minus: Complex::<R>::one() / e_plus, a, b, c, d, q })
    }

    pub fn with_pair(
        e_plus: Scalar<R>,
        e_minus: Scalar<R>,
        a: Scalar<R>,
        b: Scalar<R>,
        c: Scalar<R>,
        d: Scalar<R>,
        q: QBase<R>,
    ) -> QResult<Self> {
        if ((e_plus * e_minus) - Complex::<R>::one()).modulus() > 1e-12 {
            return Err(QError::Domain("e_plus · e_minus must equal 1".into()));
        }
        Ok(AWPoint { e_plus, e_minus, a, b, c, d, q })
    }

    /// `y = (e_plus + e_minus)/2`.
    pub fn y(&self) -> Scalar<R> {
        (self.e_plus + self.e_minus) * Scalar::<R>::real(0.5)
    }

    fn abcd(&self) -> Scalar<R> {
        self.a * self.b * self.c * self.d
    }
}

fn poly_ctrl(n: usize) -> SumCtrl {
    SumCtrl { tol: 1e-30, max_terms: n + 2, k_stop: 5 }
}

/// `₄φ₃[q^{-n}, a e+, a e-, abcd q^{n-1}; ab, ac, ad; q, q]` in wide form.
fn balanced_4phi3<R: Real>(n: usize, pt: &AWPoint<R>) -> QResult<Wide<R>> {
    let q = &pt.q;
    let (a, b, c, d) = (pt.a, pt.b, pt.c, pt.d);
    let spec = SeriesSpec {
        variant: Variant::Phi,
        numerator: vec![
            Param::qpow_unit(-(n as i64), q),
            Param::new(a * pt.e_plus),
            Param::new(a * pt.e_minus),
            Param::qpow(pt.abcd(), n as i64 - 1, q),
        ],
        denominator: vec![Param::new(a * b), Param::new(a * c), Param::new(a * d)],
        base: *q,
        argument: q.value(),
    };
    Ok(eval_series_wide(&spec, &poly_ctrl(n))?.value)
}

fn aw_poly_wide<R: Real>(n: usize, pt: &AWPoint<R>) -> QResult<Wide<R>> {
    let q = &pt.q;
    let (a, b, c, d) = (pt.a, pt.b, pt.c, pt.d);
    if a.modulus() == 0.0 {
        return Err(QError::Domain("Askey-Wilson parameter a must be nonzero".into()));
    }
    let n = n as i64;
    let norm = Term::one().pochs(&[a * b, a * c, a * d], q, n).pow(a, -n);
    Ok(balanced_4phi3(n as usize, pt)?.mul(norm.wide()))
}

/// `p_n(y; a, b, c, d | q)`.
pub fn aw_poly<R: Real>(n: usize, pt: &AWPoint<R>) -> QResult<Scalar<R>> {
    aw_poly_wide(n, pt)?.to_scalar()
}

/// Both sides of the generating function
/// `(1-x) ₃φ̃₃[a e+, a e-, abcd/(xq); ab, ac, ad; q, x]
///  = Σ p_n (abcd/(xq);q)_n / (xq, ab, ac, ad;q)_n (1 - abcd q^{2n-1}) τ(n) (ax)^n`.
pub fn aw_gf_sides<R: Real>(x: Scalar<R>, pt: &AWPoint<R>, ctrl: &SumCtrl) -> QResult<(SumResult<R>, SumResult<R>)> {
    Ok((aw_gf_lhs(x, pt, ctrl)?, aw_gf_rhs(x, pt, ctrl)?))
}

pub fn aw_gf_lhs<R: Real>(x: Scalar<R>, pt: &AWPoint<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let q = &pt.q;
    let (a, b, c, d) = (pt.a, pt.b, pt.c, pt.d);
    let one = Complex::<R>::one();
    if x.modulus() == 0.0 {
        return Ok(SumResult::exact(one, 0.0));
    }
    let w = pt.abcd() / (x * q.value());
    let spec = SeriesSpec::phi_tilde(&[a * pt.e_plus, a * pt.e_minus, w], &[a * b, a * c, a * d], *q, x);
    Ok(eval_series(&spec, ctrl)?.scale(one - x))
}

pub fn aw_gf_rhs<R: Real>(x: Scalar<R>, pt: &AWPoint<R>, ctrl: &SumCtrl) -> QResult<SumResult<R>> {
    let q = &pt.q;
    let (a, b, c, d) = (pt.a, pt.b, pt.c, pt.d);
    let one = Complex::<R>::one();
    if x.modulus() == 0.0 {
        return Ok(SumResult::exact(one, 0.0));
    }
    let abcd = pt.abcd();
    let w = abcd / (x * q.value());
    let r = sum_sequence(ctrl, |n| {
        let n = n as i64;
        let weight = Term::one()
            .poch(w, q, n)
            .pochs_over(&[x * q.value(), a * b, a * c, a * d], q, n)?
            .times(one - abcd * q.pow(2 * n - 1))
            .tau(n, q)
            .pow(a * x, n);
        Ok(aw_poly_wide(n as usize, pt)?.mul(weight.wide()))
    })?;
    r.to_sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Dd, Precision};
    use proptest::prelude::*;

    fn c(x: f64) -> Scalar<f64> {
        Complex::new(x, 0.0)
    }
    fn qb(q: f64) -> QBase<f64> {
        QBase::new(c(q)).unwrap()
    }
    fn pt(theta: f64, a: f64, b: f64, cc: f64, d: f64, q: f64) -> AWPoint<f64> {
        AWPoint::new(Complex::from_polar(1.0, theta), c(a), c(b), c(cc), c(d), qb(q)).unwrap()
    }
    fn ctrl() -> SumCtrl {
        SumCtrl::default_for(Precision::Double)
    }

    #[test]
    fn degree_zero_is_one() {
        let p = pt(0.7, 0.3, 0.4, 0.2, 0.5, 0.5);
        assert!((aw_poly(0, &p).unwrap() - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn degree_one_two_term_expansion() {
        let p = AWPoint::new(Complex::new(0.6, 0.3), c(0.3), Complex::new(0.1, 0.4), c(0.2), c(-0.5), qb(0.45)).unwrap();
        let (a, b, cc, d, q) = (p.a, p.b, p.c, p.d, p.q.value());
        let one = c(1.0);
        let lead = (one - a * b) * (one - a * cc) * (one - a * d) / a;
        let inner = one
            + (one - one / q) * (one - a * p.e_plus) * (one - a * p.e_minus) * (one - a * b * cc * d) * q
                / ((one - a * b) * (one - a * cc) * (one - a * d) * (one - q));
        let v = aw_poly(1, &p).unwrap();
        assert!((v - lead * inner).norm() < 1e-13);
    }

    #[test]
    fn theta_sign_is_irrelevant() {
        let p = pt(0.4, 0.3, 0.4, 0.2, 0.5, 0.5);
        let p2 = pt(-0.4, 0.3, 0.4, 0.2, 0.5, 0.5);
        assert!((aw_poly(1, &p).unwrap() - aw_poly(1, &p2).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn pair_must_multiply_to_one() {
        assert!(AWPoint::with_pair(c(2.0), c(0.4), c(0.3), c(0.4), c(0.2), c(0.5), qb(0.5)).is_err());
        assert!(AWPoint::with_pair(c(2.0), c(0.5), c(0.3), c(0.4), c(0.2), c(0.5), qb(0.5)).is_ok());
    }

    #[test]
    fn generating_function_real_point() {
        let p = pt(1.0, 0.3, 0.4, 0.2, 0.5, 0.5);
        let (l, r) = aw_gf_sides(c(0.3), &p, &ctrl()).unwrap();
        assert!((l.value - r.value).norm() < 1e-8 * l.value.norm().max(1.0));
    }

    #[test]
    fn generating_function_at_zero() {
        let p = pt(1.0, 0.3, 0.4, 0.2, 0.5, 0.5);
        let (l, r) = aw_gf_sides(c(0.0), &p, &ctrl()).unwrap();
        assert_eq!(l.value, c(1.0));
        assert_eq!(r.value, c(1.0));
    }

    #[test]
    fn generating_function_with_d_zero() {
        let p = AWPoint::new(Complex::from_polar(1.0, 0.9), c(0.35), c(0.6), Complex::new(0.2, 0.3), c(0.0), qb(0.4))
            .unwrap();
        let (l, r) = aw_gf_sides(c(0.45), &p, &ctrl()).unwrap();
        assert!((l.value - r.value).norm() < 1e-10);
    }

    fn cplx(m: f64, t: f64) -> Scalar<Dd> {
        Scalar::<Dd>::from_c64(Complex::from_polar(m, t))
    }
    fn dd(x: f64) -> Scalar<Dd> {
        Scalar::<Dd>::real(x)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn real_parameters_give_real_values(a in 0.15f64..0.85, b in -0.85f64..0.85, cc in -0.85f64..0.85,
                                            d in -0.85f64..0.85, th in 0.0f64..3.14, q in 0.2f64..0.8, n in 0usize..8) {
            let q = QBase::new(dd(q)).unwrap();
            let p = AWPoint::new(cplx(1.0, th), dd(a), dd(b), dd(cc), dd(d), q).unwrap();
            let v = aw_poly(n, &p).unwrap().to_c64();
            prop_assert!(v.im.abs() < 1e-10 * v.norm().max(1.0));
        }

        #[test]
        fn symmetric_in_b_c_d(am in 0.15f64..0.85, at in -3.1f64..3.1, bm in 0.15f64..0.85, bt in -3.1f64..3.1,
                              cm in 0.15f64..0.85, ct in -3.1f64..3.1, dm in 0.15f64..0.85, dt in -3.1f64..3.1,
                              em in 0.6f64..1.0, et in -3.1f64..3.1, qm in 0.2f64..0.8, qt in -3.1f64..3.1, n in 0usize..7) {
            let (a, b, cc, d) = (cplx(am, at), cplx(bm, bt), cplx(cm, ct), cplx(dm, dt));
            let (e, q) = (cplx(em, et), QBase::new(cplx(qm, qt)).unwrap());
            let base = aw_poly(n, &AWPoint::new(e, a, b, cc, d, q).unwrap()).unwrap().to_c64();
            for (x, y, z) in [(cc, b, d), (d, cc, b), (b, d, cc)] {
                let v = aw_poly(n, &AWPoint::new(e, a, x, y, z, q).unwrap()).unwrap().to_c64();
                prop_assert!((v - base).norm() < 1e-9 * base.norm().max(1.0));
            }
        }
    }
}
