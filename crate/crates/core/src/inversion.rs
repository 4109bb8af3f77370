//! The `(f,g)`-inversion pair, the Gessel–Stanton q-Lagrange pair, and
//! coefficient extraction / reconstruction for `(f,g)` expansions.
//!
//! Everything is generic over [`Field`], so the same code runs in double,
//! double-double, or exact Gaussian-rational arithmetic. The raw matrices
//! are badly conditioned (entries grow like `|q|^{-k(n-k)}`), and exact
//! arithmetic is the only way to see the inversion at moderate sizes.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{QError, QResult};
use crate::scalar::{Real, ScalarExt};

/// Minimum separation between interpolation nodes `b_n`.
pub const NODE_SEPARATION: f64 = 1e-8;

/// A complex field with an approximate modulus.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn modulus(&self) -> f64;
    fn from_c64(z: Complex<f64>) -> Self;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl<R: Real> Field for Complex<R> {
    fn zero() -> Self {
        Complex::new(R::zero(), R::zero())
    }
    fn one() -> Self {
        Complex::new(R::one(), R::zero())
    }
    fn modulus(&self) -> f64 {
        ScalarExt::modulus(*self)
    }
    fn from_c64(z: Complex<f64>) -> Self {
        <Complex<R> as ScalarExt<R>>::from_c64(z)
    }
}

/// Exact complex rationals.
pub type GaussRational = Complex<BigRational>;

impl Field for GaussRational {
    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn modulus(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::INFINITY);
        let im = self.im.to_f64().unwrap_or(f64::INFINITY);
        re.hypot(im)
    }
    /// Exact conversion of the binary values.
    fn from_c64(z: Complex<f64>) -> Self {
        let r = |x: f64| BigRational::from_f64(x).expect("finite input");
        Complex::new(r(z.re), r(z.im))
    }
}

type Mp = FBig<HalfEven>;

/// Default working precision of [`MpComplex`] in bits.
pub const MP_DEFAULT_BITS: usize = 256;

/// Complex binary floats of arbitrary, fixed precision.
#[derive(Clone, Debug, PartialEq)]
pub struct MpComplex {
    pub re: Mp,
    pub im: Mp,
}

impl MpComplex {
    pub fn from_c64_bits(z: Complex<f64>, bits: usize) -> Self {
        let r = |x: f64| Mp::try_from(x).expect("finite input").with_precision(bits).value();
        MpComplex { re: r(z.re), im: r(z.im) }
    }

    pub fn to_c64(&self) -> Complex<f64> {
        Complex::new(self.re.to_f64().value(), self.im.to_f64().value())
    }
}

impl Add for MpComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        MpComplex { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for MpComplex {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        MpComplex { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for MpComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        MpComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for MpComplex {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        if o == Self::one() {
            return self;
        }
        let exact = |z: &Mp| z.precision() == 0;
        let mut o = o;
        if [&self.re, &self.im, &o.re, &o.im].into_iter().all(exact) {
            o.re = o.re.with_precision(MP_DEFAULT_BITS).value();
        }
        let d = &o.re * &o.re + &o.im * &o.im;
        MpComplex {
            re: (&self.re * &o.re + &self.im * &o.im) / &d,
            im: (&self.im * &o.re - &self.re * &o.im) / &d,
        }
    }
}

impl Neg for MpComplex {
    type Output = Self;
    fn neg(self) -> Self {
        MpComplex { re: -self.re, im: -self.im }
    }
}

impl Field for MpComplex {
    fn zero() -> Self {
        MpComplex { re: Mp::ZERO, im: Mp::ZERO }
    }
    fn one() -> Self {
        MpComplex { re: Mp::ONE, im: Mp::ZERO }
    }
    fn modulus(&self) -> f64 {
        let z = self.to_c64();
        z.re.hypot(z.im)
    }
    /// Rounds to [`MP_DEFAULT_BITS`].
    fn from_c64(z: Complex<f64>) -> Self {
        Self::from_c64_bits(z, MP_DEFAULT_BITS)
    }
}

/// `x^k` by binary exponentiation; negative `k` inverts.
pub fn pow_field<T: Field>(x: &T, k: i64) -> T {
    let mut base = if k < 0 { T::one() / x.clone() } else { x.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = T::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

type Kernel2<T> = fn(&T, &T) -> T;

/// A pair `(f, g)` with `g` antisymmetric and the three-term relation
/// `g(a,b) f(x,c) + g(b,c) f(x,a) + g(c,a) f(x,b) = 0`.
#[derive(Clone, Copy)]
pub struct FGKernel<T: Field> {
    pub name: &'static str,
    pub f: Kernel2<T>,
    pub g: Kernel2<T>,
}

impl<T: Field> Debug for FGKernel<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FGKernel({})", self.name)
    }
}

fn linear_f<T: Field>(x: &T, y: &T) -> T {
    T::one() - x.clone() * y.clone()
}

fn linear_g<T: Field>(x: &T, y: &T) -> T {
    y.clone() - x.clone()
}

impl<T: Field> FGKernel<T> {
    /// `f(x,y) = 1 - xy`, `g(x,y) = y - x`.
    pub fn linear() -> Self {
        FGKernel { name: "linear", f: linear_f::<T>, g: linear_g::<T> }
    }

    /// Left side of the three-term relation.
    pub fn triple_residual(&self, a: &T, b: &T, c: &T, x: &T) -> T {
        let (f, g) = (self.f, self.g);
        g(a, b) * f(x, c) + g(b, c) * f(x, a) + g(c, a) * f(x, b)
    }
}

/// Node sequences `x_n` and `b_n`, stored up to a fixed length.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSequences<T: Field> {
    pub x: Vec<T>,
    pub b: Vec<T>,
}

impl<T: Field> NodeSequences<T> {
    pub fn new(x: Vec<T>, b: Vec<T>) -> QResult<Self> {
        if x.len() != b.len() {
            return Err(QError::Domain("node sequences must have equal length".into()));
        }
        for i in 0..b.len() {
            for j in 0..i {
                if (b[i].clone() - b[j].clone()).modulus() < NODE_SEPARATION {
                    return Err(QError::Domain(format!("nodes b_{j} and b_{i} nearly coincide")));
                }
            }
        }
        Ok(NodeSequences { x, b })
    }

    /// `x_n = a q^n`, `b_n = c q^n` for `n = 0..=n_max`.
    pub fn geometric(a: &T, c: &T, q: &T, n_max: usize) -> QResult<Self> {
        let m = q.modulus();
        if !(m > 0.0 && m < 1.0) {
            return Err(QError::Domain("base must satisfy 0 < |q| < 1".into()));
        }
        let mut x = Vec::with_capacity(n_max + 1);
        let mut b = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max as i64 {
            let qn = pow_field(q, n);
            x.push(a.clone() * qn.clone());
            b.push(c.clone() * qn);
        }
        Self::new(x, b)
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }
}

/// Lower-triangular square matrix stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct TriMatrix<T: Field> {
    rows: Vec<Vec<T>>,
}

impl<T: Field> TriMatrix<T> {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> QResult<T>) -> QResult<Self> {
        let mut rows = Vec::with_capacity(size);
        for n in 0..size {
            let mut row = Vec::with_capacity(n + 1);
            for k in 0..=n {
                row.push(f(n, k)?);
            }
            rows.push(row);
        }
        Ok(TriMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(n, k)`; zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> T {
        if k > n {
            T::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn mul(&self, o: &TriMatrix<T>) -> QResult<TriMatrix<T>> {
        if self.size() != o.size() {
            return Err(QError::Domain("matrix sizes differ".into()));
        }
        TriMatrix::from_fn(self.size(), |n, k| {
            let mut s = T::zero();
            for i in k..=n {
                s = s + self.rows[n][i].clone() * o.rows[i][k].clone();
            }
            Ok(s)
        })
    }

    /// `max |self - I|` over the stored triangle.
    pub fn identity_deviation(&self) -> f64 {
        let mut m: f64 = 0.0;
        for (n, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                let d = if n == k { v.clone() - T::one() } else { v.clone() };
                m = m.max(d.modulus());
            }
        }
        m
    }

    /// Largest entry modulus.
    pub fn max_entry(&self) -> f64 {
        self.rows.iter().flatten().map(|v| v.modulus()).fold(0.0, f64::max)
    }
}

fn nonzero<T: Field>(z: T, what: &str) -> QResult<T> {
    let m = z.modulus();
    if z.is_zero() || !m.is_finite() {
        Err(QError::Pole(format!("vanishing denominator in {what}")))
    } else {
        Ok(z)
    }
}

fn check_len<T: Field>(seqs: &NodeSequences<T>, n_max: usize) -> QResult<()> {
    if seqs.len() <= n_max {
        Err(QError::Domain(format!("need {} nodes, have {}", n_max + 1, seqs.len())))
    } else {
        Ok(())
    }
}

/// `B_{n,k} = ∏_{i=k}^{n-1} f(x_i,b_k) / ∏_{i=k+1}^{n} g(b_i,b_k)`, built column by column.
pub fn matrix_b<T: Field>(kernel: &FGKernel<T>, seqs: &NodeSequences<T>, n_max: usize) -> QResult<TriMatrix<T>> {
    check_len(seqs, n_max)?;
    let size = n_max + 1;
    let mut cols: Vec<Vec<T>> = Vec::with_capacity(size);
    for k in 0..size {
        let bk = &seqs.b[k];
        let mut col = vec![T::one()];
        let mut v = T::one();
        for n in k + 1..size {
            let g = nonzero((kernel.g)(&seqs.b[n], bk), "B")?;
            v = v * (kernel.f)(&seqs.x[n - 1], bk) / g;
            col.push(v.clone());
        }
        cols.push(col);
    }
    TriMatrix::from_fn(size, |n, k| Ok(cols[k][n - k].clone()))
}

/// `B^{-1}_{n,k} = f(x_k,b_k)/f(x_n,b_n) · ∏_{i=k+1}^{n} f(x_i,b_n) / ∏_{i=k}^{n-1} g(b_i,b_n)`, built row by row.
pub fn matrix_binv<T: Field>(kernel: &FGKernel<T>, seqs: &NodeSequences<T>, n_max: usize) -> QResult<TriMatrix<T>> {
    check_len(seqs, n_max)?;
    let size = n_max + 1;
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(size);
    for n in 0..size {
        let bn = &seqs.b[n];
        let fnn = nonzero((kernel.f)(&seqs.x[n], bn), "B^-1")?;
        let mut row = vec![T::zero(); n + 1];
        row[n] = T::one();
        // ∏_{i=k+1}^{n} f(x_i,b_n) / ∏_{i=k}^{n-1} g(b_i,b_n), from k = n - 1 down
        let mut v = T::one();
        for k in (0..n).rev() {
            let g = nonzero((kernel.g)(&seqs.b[k], bn), "B^-1")?;
            v = v * (kernel.f)(&seqs.x[k + 1], bn) / g;
            row[k] = (kernel.f)(&seqs.x[k], &seqs.b[k]) / fnn.clone() * v.clone();
        }
        rows.push(row);
    }
    TriMatrix::from_fn(size, |n, k| Ok(rows[n][k].clone()))
}

/// Worst deviation from the identity of `A·B` and `B·A`.
pub fn verify_inverse_pair<T: Field>(a: &TriMatrix<T>, b: &TriMatrix<T>) -> QResult<f64> {
    Ok(a.mul(b)?.identity_deviation().max(b.mul(a)?.identity_deviation()))
}

/// `(a;p)_n` as a finite product for any base; `n < 0` uses `1/∏_{k=1}^{|n|}(1 - a p^{-k})`,
/// so `(a;p^{-1})_{-1} = 1/(1 - a p)`.
fn finite_poch<T: Field>(a: &T, p: &T, n: i64) -> QResult<T> {
    let mut v = T::one();
    if n >= 0 {
        let mut pk = T::one();
        for _ in 0..n {
            v = v * (T::one() - a.clone() * pk.clone());
            pk = pk * p.clone();
        }
        Ok(v)
    } else {
        let pinv = T::one() / p.clone();
        let mut pk = pinv.clone();
        for _ in 0..(-n) {
            v = v * (T::one() - a.clone() * pk.clone());
            pk = pk * pinv.clone();
        }
        Ok(T::one() / nonzero(v, "negative-index product")?)
    }
}

/// The Gessel–Stanton pair
/// `M_{n,k} = (A p^k q^k; p)_{n-k} / (q;q)_{n-k} · q^{-nk}` and
/// `W_{n,k} = (-1)^{n-k} q^{C(n-k+1,2)+nk} (1 - A p^k q^k) (A q^n p^{n-1}; p^{-1})_{n-k-1} / (q;q)_{n-k}`.
pub fn gessel_stanton_pair<T: Field>(a: &T, p: &T, q: &T, n_max: usize) -> QResult<(TriMatrix<T>, TriMatrix<T>)> {
    for (name, b) in [("p", p), ("q", q)] {
        let m = b.modulus();
        if !(m > 0.0 && m < 1.0) {
            return Err(QError::Domain(format!("base {name} must satisfy 0 < |{name}| < 1")));
        }
    }
    let size = n_max + 1;
    let pinv = T::one() / p.clone();
    let qq = |m: i64| finite_poch(q, q, m);
    let apq = |k: i64| a.clone() * pow_field(p, k) * pow_field(q, k);
    let m = TriMatrix::from_fn(size, |n, k| {
        let (n, k) = (n as i64, k as i64);
        Ok(finite_poch(&apq(k), p, n - k)? / nonzero(qq(n - k)?, "M")? * pow_field(q, -n * k))
    })?;
    let w = TriMatrix::from_fn(size, |n, k| {
        let (n, k) = (n as i64, k as i64);
        let d = n - k;
        let head = pow_field(q, d * (d + 1) / 2 + n * k);
        let head = if d % 2 == 0 { head } else { -head };
        let tail = finite_poch(&(a.clone() * pow_field(q, n) * pow_field(p, n - 1)), &pinv, d - 1)?;
        Ok(head * (T::one() - apq(k)) * tail / nonzero(qq(d)?, "W")?)
    })?;
    Ok((m, w))
}

/// `G_n = Σ_{k=0}^{n} F(b_k) ∏_{i=1}^{n-1} f(x_i,b_k) / ∏_{i=0,i≠k}^{n} g(b_i,b_k)`,
/// where the empty-range product `∏_{i=1}^{-1}` is read as `1/f(x_0,b_k)`.
pub fn expansion_coeffs<T: Field>(
    f_at_b: impl Fn(usize) -> T,
    kernel: &FGKernel<T>,
    seqs: &NodeSequences<T>,
    n: usize,
) -> QResult<T> {
    check_len(seqs, n)?;
    let mut s = T::zero();
    for k in 0..=n {
        let bk = &seqs.b[k];
        let mut v = f_at_b(k);
        if n == 0 {
            v = v / nonzero((kernel.f)(&seqs.x[0], bk), "expansion coefficient")?;
        }
        for i in 1..n {
            v = v * (kernel.f)(&seqs.x[i], bk);
        }
        for i in (0..=n).filter(|&i| i != k) {
            v = v / nonzero((kernel.g)(&seqs.b[i], bk), "expansion coefficient")?;
        }
        s = s + v;
    }
    Ok(s)
}

/// Partial sum `Σ_{n=0}^{N} G_n f(x_n,b_n) ∏_{k=0}^{n-1} g(b_k,x) / ∏_{k=1}^{n} f(x_k,x)`.
pub fn reconstruct<T: Field>(
    g_coeffs: &[T],
    kernel: &FGKernel<T>,
    seqs: &NodeSequences<T>,
    x: &T,
    n_max: usize,
) -> QResult<T> {
    check_len(seqs, n_max)?;
    let mut s = T::zero();
    let mut basis = T::one();
    for n in 0..=n_max.min(g_coeffs.len().saturating_sub(1)) {
        if n > 0 {
            basis = basis * (kernel.g)(&seqs.b[n - 1], x) / nonzero((kernel.f)(&seqs.x[n], x), "reconstruction")?;
        }
        s = s + g_coeffs[n].clone() * (kernel.f)(&seqs.x[n], &seqs.b[n]) * basis.clone();
    }
    Ok(s)
}

/// `F_n = Σ_{k=0}^{n} G_k f(x_k,b_k) ∏_{i=0}^{k-1} g(b_i,b_n) / ∏_{i=1}^{k} f(x_i,b_n)`.
pub fn forward_system<T: Field>(g_coeffs: &[T], kernel: &FGKernel<T>, seqs: &NodeSequences<T>) -> QResult<Vec<T>> {
    (0..g_coeffs.len()).map(|n| reconstruct(g_coeffs, kernel, seqs, &seqs.b[n], n)).collect()
}

/// Largest `|G_n - G'_n|` after mapping `G` to `F` and back.
pub fn round_trip_error<T: Field>(g_coeffs: &[T], kernel: &FGKernel<T>, seqs: &NodeSequences<T>) -> QResult<f64> {
    let f = forward_system(g_coeffs, kernel, seqs)?;
    let mut worst: f64 = 0.0;
    for (n, g) in g_coeffs.iter().enumerate() {
        let back = expansion_coeffs(|j| f[j].clone(), kernel, seqs, n)?;
        worst = worst.max((back - g.clone()).modulus());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Dd, Scalar};
    use proptest::prelude::*;

    fn c(x: f64) -> Scalar<f64> {
        Complex::new(x, 0.0)
    }
    fn e(x: f64) -> GaussRational {
        GaussRational::from_c64(Complex::new(x, 0.0))
    }
    /// Rounded to multiples of 2^-10 so the rationals stay small.
    fn ec(z: Complex<f64>) -> GaussRational {
        let r = |x: f64| (x * 1024.0).round() / 1024.0;
        GaussRational::from_c64(Complex::new(r(z.re), r(z.im)))
    }
    fn mp(z: Complex<f64>) -> MpComplex {
        MpComplex::from_c64_bits(z, 256)
    }

    #[test]
    fn b_matrix_examples() {
        let k = FGKernel::linear();
        let (a, cc, q) = (0.3, 0.7, 0.5);
        let seqs = NodeSequences::geometric(&c(a), &c(cc), &c(q), 4).unwrap();
        let b = matrix_b(&k, &seqs, 4).unwrap();
        for n in 0..5 {
            assert_eq!(b.get(n, n), c(1.0));
        }
        // g(b_1, b_0) = b_0 - b_1
        let expect = (1.0 - a * cc) / (cc - cc * q);
        assert!((b.get(1, 0) - c(expect)).norm() < 1e-14);
        let one = matrix_b(&k, &seqs, 0).unwrap();
        assert_eq!(one.size(), 1);
        assert_eq!(one.get(0, 0), c(1.0));
    }

    #[test]
    fn binv_diagonal_is_one() {
        let k = FGKernel::linear();
        let seqs = NodeSequences::geometric(&c(0.3), &c(0.7), &c(0.5), 6).unwrap();
        let bi = matrix_binv(&k, &seqs, 6).unwrap();
        for n in 0..7 {
            assert_eq!(bi.get(n, n), c(1.0));
        }
    }

    #[test]
    fn linear_pair_inverts_exactly() {
        let k = FGKernel::linear();
        let seqs = NodeSequences::geometric(&e(0.3), &e(0.7), &e(0.5), 6).unwrap();
        let b = matrix_b(&k, &seqs, 6).unwrap();
        let bi = matrix_binv(&k, &seqs, 6).unwrap();
        assert_eq!(verify_inverse_pair(&b, &bi).unwrap(), 0.0);
        let b1 = matrix_b(&k, &seqs, 1).unwrap();
        let bi1 = matrix_binv(&k, &seqs, 1).unwrap();
        assert_eq!(verify_inverse_pair(&b1, &bi1).unwrap(), 0.0);
    }

    #[test]
    fn linear_pair_conditioning() {
        // double precision loses the product at N = 16 even for q = 0.85
        let k = FGKernel::<Scalar<f64>>::linear();
        let s = NodeSequences::geometric(&c(0.3), &c(0.7), &c(0.85), 16).unwrap();
        let dev = verify_inverse_pair(&matrix_b(&k, &s, 16).unwrap(), &matrix_binv(&k, &s, 16).unwrap()).unwrap();
        assert!(dev > 1e-9);
        let d = |x: f64| Scalar::<Dd>::real(x);
        let k = FGKernel::<Scalar<Dd>>::linear();
        let s = NodeSequences::geometric(&d(0.3), &d(0.7), &d(0.85), 16).unwrap();
        let dev = verify_inverse_pair(&matrix_b(&k, &s, 16).unwrap(), &matrix_binv(&k, &s, 16).unwrap()).unwrap();
        assert!(dev < 1e-9);
        let k = FGKernel::<Scalar<f64>>::linear();
        let bad = NodeSequences::geometric(&c(0.3), &c(0.7), &c(0.5), 16).unwrap();
        let b = matrix_b(&k, &bad, 16).unwrap();
        assert!(b.max_entry() > 1e20);
        let z = |x: f64| mp(Complex::new(x, 0.0));
        let k = FGKernel::linear();
        let seqs = NodeSequences::geometric(&z(0.3), &z(0.7), &z(0.5), 16).unwrap();
        let dev = verify_inverse_pair(&matrix_b(&k, &seqs, 16).unwrap(), &matrix_binv(&k, &seqs, 16).unwrap()).unwrap();
        assert!(dev < 1e-20);
    }

    #[test]
    fn lemma_round_trip_exact() {
        let k = FGKernel::linear();
        let seqs = NodeSequences::geometric(&ec(cplx(0.6, 0.3)), &ec(cplx(0.4, -0.4)), &ec(cplx(0.5, 0.7)), 4).unwrap();
        let g: Vec<GaussRational> = (0..5).map(|i| ec(Complex::new(0.25 * i as f64, 1.0 - 0.5 * i as f64))).collect();
        assert_eq!(round_trip_error(&g, &k, &seqs).unwrap(), 0.0);
    }

    #[test]
    fn mp_division_of_exact_constants() {
        let two = MpComplex::one() + MpComplex::one();
        let half = MpComplex::one() / two;
        assert_eq!(half.to_c64(), Complex::new(0.5, 0.0));
        assert_eq!(mp(Complex::new(3.0, 4.0)).modulus(), 5.0);
    }

    #[test]
    fn gessel_stanton_inverts() {
        let (m, w) = gessel_stanton_pair(&e(0.4), &e(0.6), &e(0.5), 6).unwrap();
        assert_eq!(verify_inverse_pair(&m, &w).unwrap(), 0.0);
        let z = |x: f64| mp(Complex::new(x, 0.0));
        let (m, w) = gessel_stanton_pair(&z(0.4), &z(0.6), &z(0.5), 12).unwrap();
        assert!(verify_inverse_pair(&m, &w).unwrap() < 1e-40);
        let d = |x: f64| Scalar::<Dd>::real(x);
        let (m, w) = gessel_stanton_pair(&d(0.4), &d(0.6), &d(0.5), 12).unwrap();
        assert!(verify_inverse_pair(&m, &w).unwrap() < 1e-9);
    }

    #[test]
    fn gessel_stanton_diagonals() {
        let q = 0.5f64;
        let (m, w) = gessel_stanton_pair(&c(0.4), &c(0.6), &c(q), 6).unwrap();
        for n in 0..7i32 {
            let qn2 = q.powi(n * n);
            assert!((m.get(n as usize, n as usize) - c(1.0 / qn2)).norm() < 1e-12 / qn2);
            // (A q^n p^{n-1}; p^{-1})_{-1} cancels (1 - A p^n q^n)
            assert!((w.get(n as usize, n as usize) - c(qn2)).norm() < 1e-15);
        }
    }

    #[test]
    fn near_coincident_nodes_rejected() {
        let b = vec![c(0.5), c(0.5 + 1e-10)];
        assert!(NodeSequences::new(vec![c(0.1), c(0.2)], b).is_err());
    }

    #[test]
    fn expansion_coeff_examples() {
        let k = FGKernel::linear();
        let seqs = NodeSequences::geometric(&c(0.3), &c(0.7), &c(0.5), 8).unwrap();
        let f00 = (k.f)(&seqs.x[0], &seqs.b[0]);
        let g0 = expansion_coeffs(|k| c(k as f64 + 2.0), &k, &seqs, 0).unwrap();
        assert!((g0 - c(2.0) / f00).norm() < 1e-15);
        assert_eq!(expansion_coeffs(|_| c(0.0), &k, &seqs, 5).unwrap(), c(0.0));
        // F ≡ f(x_0,b_0) is the n = 0 basis element with G_0 = 1
        let g0 = expansion_coeffs(|_| f00, &k, &seqs, 0).unwrap();
        assert!((g0 - c(1.0)).norm() < 1e-12);
        for n in 1..6 {
            assert!(expansion_coeffs(|_| f00, &k, &seqs, n).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn reconstruct_examples() {
        let k = FGKernel::linear();
        let seqs = NodeSequences::geometric(&c(0.3), &c(0.7), &c(0.5), 8).unwrap();
        let g = vec![c(1.0), c(0.0), c(0.0)];
        let x = c(0.123);
        assert!((reconstruct(&g, &k, &seqs, &x, 2).unwrap() - (k.f)(&seqs.x[0], &seqs.b[0])).norm() < 1e-15);
        // g(b_m, b_m) = 0 kills every term past m at x = b_m
        let g: Vec<_> = (0..8).map(|i| c(1.0 / (i as f64 + 1.0))).collect();
        let at3 = reconstruct(&g, &k, &seqs, &seqs.b[3], 3).unwrap();
        let at3_full = reconstruct(&g, &k, &seqs, &seqs.b[3], 7).unwrap();
        assert_eq!(at3, at3_full);
        let coeffs: Vec<_> = (0..=3).map(|n| expansion_coeffs(|_| c(1.0), &k, &seqs, n).unwrap()).collect();
        let v = reconstruct(&coeffs, &k, &seqs, &seqs.b[3], 3).unwrap();
        assert!((v - c(1.0)).norm() < 1e-10);
    }

    fn cplx(m: f64, t: f64) -> Complex<f64> {
        Complex::from_polar(m, t)
    }

    proptest! {
        #[test]
        fn triple_identity_linear(am in 0.0f64..1.0, at in -3.2f64..3.2, bm in 0.0f64..1.0, bt in -3.2f64..3.2,
                                   cm in 0.0f64..1.0, ct in -3.2f64..3.2, xm in 0.0f64..1.0, xt in -3.2f64..3.2) {
            let k = FGKernel::linear();
            let r = k.triple_residual(&cplx(am, at), &cplx(bm, bt), &cplx(cm, ct), &cplx(xm, xt));
            prop_assert!(r.norm() < 1e-12);
        }

        #[test]
        fn g_is_antisymmetric(am in 0.0f64..1.0, at in -3.2f64..3.2, bm in 0.0f64..1.0, bt in -3.2f64..3.2) {
            let k = FGKernel::<Complex<f64>>::linear();
            let (a, b) = (cplx(am, at), cplx(bm, bt));
            prop_assert_eq!((k.g)(&a, &b), -(k.g)(&b, &a));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn lemma_round_trip(gs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 13),
                            am in 0.2f64..0.8, cm in 0.2f64..0.8, qm in 0.35f64..0.8, qt in -1.0f64..1.0) {
            let k = FGKernel::linear();
            let seqs = NodeSequences::geometric(&mp(cplx(am, 0.3)), &mp(cplx(cm, -0.4)), &mp(cplx(qm, qt)), 12).unwrap();
            let g: Vec<MpComplex> = gs.iter().map(|(re, im)| mp(Complex::new(*re, *im))).collect();
            prop_assert!(round_trip_error(&g, &k, &seqs).unwrap() < 1e-30);
        }

        #[test]
        fn linear_inverse_pair_random(am in 0.15f64..0.85, at in -3.1f64..3.1, cm in 0.15f64..0.85, ct in -3.1f64..3.1,
                                      qm in 0.35f64..0.8, qt in -3.1f64..3.1) {
            let k = FGKernel::linear();
            let seqs = NodeSequences::geometric(&mp(cplx(am, at)), &mp(cplx(cm, ct)), &mp(cplx(qm, qt)), 12).unwrap();
            let b = matrix_b(&k, &seqs, 12).unwrap();
            let bi = matrix_binv(&k, &seqs, 12).unwrap();
            prop_assert!(verify_inverse_pair(&b, &bi).unwrap() < 1e-9);
        }
    }
}
