//! Scalar arithmetic: a `Real` abstraction over `f64` and a double-double
//! type, complex scalars built on top of it, a wide-exponent form for terms
//! that leave the `f64` exponent range, and compensated accumulators.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{Num, One, Zero};

use crate::error::QError;

/// Working precision selected at run configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Double,
    Extended,
}

impl Precision {
    pub fn as_str(self) -> &'static str {
        match self {
            Precision::Double => "double",
            Precision::Extended => "extended",
        }
    }
}

/// Real field used by every numerical routine in the crate.
pub trait Real:
    Copy
    + Send
    + Sync
    + fmt::Debug
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + 'static
{
    /// Unit roundoff of the format.
    const EPSILON: f64;
    /// Decimal digits printed when serializing.
    const DIGITS: usize;

    fn from_f64(x: f64) -> Self;
    /// Nearest `f64`.
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }
    fn is_finite(self) -> bool {
        self.to_f64().is_finite()
    }
    /// Exact multiplication by `2^k` (barring over/underflow).
    fn ldexp(self, k: i32) -> Self;
    /// Decimal rendering with `DIGITS` significant digits.
    fn to_decimal(self) -> String;
}

/// `2^k` as an `f64`, for `k` in the normal range.
fn pow2(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

fn ldexp_f64(mut x: f64, mut k: i32) -> f64 {
    while k > 1023 {
        x *= pow2(1023);
        k -= 1023;
    }
    while k < -1022 {
        x *= pow2(-1022);
        k += 1022;
    }
    x * pow2(k)
}

/// Binary exponent `e` with `|x| = m·2^e`, `0.5 <= m < 1`; zero for zero.
pub(crate) fn frexp_exponent(x: f64) -> i32 {
    if x == 0.0 || !x.is_finite() {
        return 0;
    }
    let bits = x.abs().to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    if biased == 0 {
        // subnormal
        return frexp_exponent(x * pow2(64)) - 64;
    }
    biased - 1022
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON;
    const DIGITS: usize = 17;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn ldexp(self, k: i32) -> Self {
        ldexp_f64(self, k)
    }
    fn to_decimal(self) -> String {
        format!("{:?}", self)
    }
}

/// Double-double real: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
/// giving roughly 32 significant decimal digits.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn from_parts(hi: f64, lo: f64) -> Self {
        let (h, l) = quick_two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        Dd::from_parts(p1, p2 + self.lo * b)
    }

    fn sqr_f64(a: f64) -> Self {
        let (p, e) = two_prod(a, a);
        Dd { hi: p, lo: e }
    }

    fn trunc(self) -> Self {
        let h = self.hi.trunc();
        if h == self.hi {
            Dd::from_parts(h, self.lo.trunc())
        } else {
            Dd { hi: h, lo: 0.0 }
        }
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({})", self.to_decimal())
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Dd::from_parts(s1, s2 + t2)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        Dd::from_parts(p1, p2 + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || q1 == 0.0 {
            return Dd { hi: q1, lo: 0.0 };
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        Dd::from_parts(q1, q2) + Dd { hi: q3, lo: 0.0 }
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        self - (self / b).trunc() * b
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}
impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}
impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}
impl DivAssign for Dd {
    fn div_assign(&mut self, b: Dd) {
        *self = *self / b;
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd { hi: 0.0, lo: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd { hi: 1.0, lo: 0.0 }
    }
}

impl Num for Dd {
    type FromStrRadixErr = std::num::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            // only decimal input is meaningful here
            "radix".parse::<f64>()?;
        }
        Ok(Dd::from_f64(s.parse::<f64>()?))
    }
}

impl Real for Dd {
    const EPSILON: f64 = 4.93038065763132e-32; // 2^-104
    const DIGITS: usize = 32;

    fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd { hi: self.hi.sqrt(), lo: 0.0 };
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let corr = (self - Dd::sqr_f64(ax)).hi * (x * 0.5);
        let (h, l) = two_sum(ax, corr);
        Dd::from_parts(h, l)
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
    fn ldexp(self, k: i32) -> Self {
        Dd { hi: ldexp_f64(self.hi, k), lo: ldexp_f64(self.lo, k) }
    }
    fn to_decimal(self) -> String {
        dd_to_decimal(self, Self::DIGITS)
    }
}

/// Scientific-notation rendering of a double-double with `digits` significant digits.
fn dd_to_decimal(x: Dd, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{}", x.hi);
    }
    if x.hi == 0.0 {
        return "0.0".to_string();
    }
    let neg = x.hi < 0.0;
    let mut v = x.abs();
    let mut e10 = v.hi.log10().floor() as i32;
    let ten = Dd::from_f64(10.0);
    // scale into [1, 10)
    let scale = |v: Dd, e: i32| -> Dd {
        let mut p = Dd::one();
        for _ in 0..e.unsigned_abs() {
            p *= ten;
        }
        if e >= 0 {
            v / p
        } else {
            v * p
        }
    };
    v = scale(v, e10);
    if v.hi >= 10.0 {
        v /= ten;
        e10 += 1;
    } else if v.hi < 1.0 {
        v *= ten;
        e10 -= 1;
    }
    let mut ds: Vec<u8> = Vec::with_capacity(digits + 1);
    for _ in 0..=digits {
        let d = v.hi.floor().clamp(0.0, 9.0);
        ds.push(d as u8);
        v = (v - Dd::from_f64(d)) * ten;
    }
    // round on the guard digit
    if ds[digits] >= 5 {
        let mut i = digits;
        loop {
            if i == 0 {
                ds.insert(0, 1);
                e10 += 1;
                break;
            }
            i -= 1;
            if ds[i] == 9 {
                ds[i] = 0;
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    ds.truncate(digits);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push((b'0' + ds[0]) as char);
    s.push('.');
    for d in &ds[1..] {
        s.push((b'0' + d) as char);
    }
    format!("{}e{}", s, e10)
}

/// Complex scalar over a working real field.
pub type Scalar<R> = Complex<R>;

/// Convenience constructors and helpers for [`Scalar`].
pub trait ScalarExt<R: Real>: Sized {
    fn real(x: f64) -> Self;
    fn from_parts(re: f64, im: f64) -> Self;
    fn from_c64(z: Complex<f64>) -> Self;
    fn to_c64(self) -> Complex<f64>;
    /// Modulus as an `f64`.
    fn modulus(self) -> f64;
    /// Modulus in the working precision.
    fn modulus_r(self) -> R;
    fn finite(self) -> bool;
    /// Principal square root (branch cut on the negative real axis).
    fn sqrt_principal(self) -> Self;
    /// `self^n` by binary exponentiation; negative `n` inverts.
    fn powi_bin(self, n: i64) -> Self;
    /// Errors with `Overflow` when a component is not finite.
    fn check_finite(self, what: &'static str) -> Result<Self, QError>;
}

impl<R: Real> ScalarExt<R> for Scalar<R> {
    fn real(x: f64) -> Self {
        Complex::new(R::from_f64(x), R::zero())
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex::new(R::from_f64(re), R::from_f64(im))
    }
    fn from_c64(z: Complex<f64>) -> Self {
        Complex::new(R::from_f64(z.re), R::from_f64(z.im))
    }
    fn to_c64(self) -> Complex<f64> {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }
    fn modulus(self) -> f64 {
        self.modulus_r().to_f64()
    }
    fn modulus_r(self) -> R {
        let a = self.re.abs();
        let b = self.im.abs();
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return R::zero();
        }
        let r = small / big;
        big * (R::one() + r * r).sqrt()
    }
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn sqrt_principal(self) -> Self {
        let two = R::from_f64(2.0);
        let m = self.modulus_r();
        if m.is_zero() {
            return Complex::new(R::zero(), R::zero());
        }
        if self.re >= R::zero() {
            // avoid cancellation in the smaller component
            let re = ((m + self.re) / two).sqrt();
            Complex::new(re, self.im / (two * re))
        } else {
            let im_mag = ((m - self.re) / two).sqrt();
            let im = if self.im < R::zero() { -im_mag } else { im_mag };
            Complex::new(self.im.abs() / (two * im_mag), im)
        }
    }
    fn powi_bin(self, n: i64) -> Self {
        let mut base = if n < 0 { Complex::<R>::one() / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc: Self = Complex::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }
    fn check_finite(self, what: &'static str) -> Result<Self, QError> {
        if self.finite() {
            Ok(self)
        } else {
            Err(QError::Overflow(what))
        }
    }
}

/// A complex value `mantissa · 2^exp`, used for series terms whose magnitude
/// leaves the range of the underlying float format.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wide<R: Real> {
    mantissa: Scalar<R>,
    exp: i64,
}

impl<R: Real> Wide<R> {
    pub fn zero() -> Self {
        Wide { mantissa: Complex::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Wide { mantissa: Complex::one(), exp: 0 }
    }

    pub fn from_scalar(z: Scalar<R>) -> Self {
        Wide { mantissa: z, exp: 0 }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re.is_zero() && self.mantissa.im.is_zero()
    }

    pub fn mantissa(&self) -> Scalar<R> {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    fn normalized(self) -> Self {
        let m = self.mantissa.re.to_f64().abs().max(self.mantissa.im.to_f64().abs());
        if m == 0.0 || !m.is_finite() {
            return Wide { mantissa: self.mantissa, exp: if m == 0.0 { 0 } else { self.exp } };
        }
        let k = frexp_exponent(m);
        Wide {
            mantissa: Complex::new(self.mantissa.re.ldexp(-k), self.mantissa.im.ldexp(-k)),
            exp: self.exp + k as i64,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.finite()
    }

    pub fn mul_scalar(self, z: Scalar<R>) -> Self {
        Wide { mantissa: self.mantissa * z, exp: self.exp }.normalized()
    }

    pub fn div_scalar(self, z: Scalar<R>) -> Self {
        self.div(Wide::from_scalar(z))
    }

    pub fn mul(self, o: Wide<R>) -> Self {
        Wide { mantissa: self.mantissa * o.mantissa, exp: self.exp + o.exp }.normalized()
    }

    pub fn div(self, o: Wide<R>) -> Self {
        Wide { mantissa: self.mantissa / o.mantissa, exp: self.exp - o.exp }.normalized()
    }

    pub fn neg(self) -> Self {
        Wide { mantissa: -self.mantissa, exp: self.exp }
    }

    /// `log2 |self|` (−∞ for zero).
    pub fn log2_abs(&self) -> f64 {
        let m = self.mantissa.modulus();
        if m == 0.0 {
            f64::NEG_INFINITY
        } else {
            m.log2() + self.exp as f64
        }
    }

    /// `|self|` as an `f64`, saturating to infinity / zero.
    pub fn abs_f64(&self) -> f64 {
        let l = self.log2_abs();
        if l == f64::NEG_INFINITY {
            0.0
        } else if l > 1023.0 {
            f64::INFINITY
        } else {
            self.mantissa.modulus() * 2f64.powf(self.exp as f64)
        }
    }

    /// `|self| / |other|` as an `f64` (saturating).
    pub fn ratio_abs(&self, other: &Wide<R>) -> f64 {
        let l = self.log2_abs() - other.log2_abs();
        if l.is_nan() {
            return f64::NAN;
        }
        2f64.powf(l)
    }

    /// Scalar value; errors if the exponent overflows the format.
    pub fn to_scalar(self) -> Result<Scalar<R>, QError> {
        if self.is_zero() {
            return Ok(Complex::zero());
        }
        if self.exp > 1023 {
            return Err(QError::Overflow("wide value exceeds float range"));
        }
        if self.exp < -1100 {
            return Ok(Complex::zero());
        }
        let k = self.exp as i32;
        let z = Complex::new(self.mantissa.re.ldexp(k), self.mantissa.im.ldexp(k));
        z.check_finite("wide conversion")
    }

    /// Mantissa rescaled to exponent `target` (flushes to zero far below).
    fn mantissa_at(&self, target: i64) -> Scalar<R> {
        let d = self.exp - target;
        if d < -1100 {
            return Complex::zero();
        }
        let d = d.min(1023) as i32;
        Complex::new(self.mantissa.re.ldexp(d), self.mantissa.im.ldexp(d))
    }
}

/// Neumaier-compensated sum of real values.
#[derive(Clone, Copy, Debug)]
struct NeumaierReal<R: Real> {
    s: R,
    c: R,
}

impl<R: Real> NeumaierReal<R> {
    fn new() -> Self {
        NeumaierReal { s: R::zero(), c: R::zero() }
    }

    fn add(&mut self, x: R) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> R {
        self.s + self.c
    }

    fn scale(&mut self, k: i32) {
        self.s = self.s.ldexp(k);
        self.c = self.c.ldexp(k);
    }
}

/// Compensated complex accumulator.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<R: Real> {
    re: NeumaierReal<R>,
    im: NeumaierReal<R>,
}

impl<R: Real> Default for CompensatedSum<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Real> CompensatedSum<R> {
    pub fn new() -> Self {
        CompensatedSum { re: NeumaierReal::new(), im: NeumaierReal::new() }
    }

    pub fn add(&mut self, z: Scalar<R>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Scalar<R> {
        Complex::new(self.re.value(), self.im.value())
    }
}

/// Compensated accumulator of [`Wide`] values at a floating common exponent.
#[derive(Clone, Copy, Debug)]
pub struct WideSum<R: Real> {
    acc: CompensatedSum<R>,
    exp: i64,
    empty: bool,
}

impl<R: Real> Default for WideSum<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Real> WideSum<R> {
    pub fn new() -> Self {
        WideSum { acc: CompensatedSum::new(), exp: 0, empty: true }
    }

    pub fn add(&mut self, w: Wide<R>) {
        if w.is_zero() {
            return;
        }
        if self.empty {
            self.exp = w.exp;
            self.empty = false;
        } else if w.exp > self.exp {
            let shift = (self.exp - w.exp).max(-1100) as i32;
            self.acc.re.scale(shift);
            self.acc.im.scale(shift);
            self.exp = w.exp;
        }
        self.acc.add(w.mantissa_at(self.exp));
        // keep the running mantissa well inside the format
        let m = self.acc.re.s.to_f64().abs().max(self.acc.im.s.to_f64().abs());
        if m > 1e200 {
            let k = frexp_exponent(m);
            self.acc.re.scale(-k);
            self.acc.im.scale(-k);
            self.exp += k as i64;
        }
    }

    pub fn value(&self) -> Wide<R> {
        if self.empty {
            return Wide::zero();
        }
        Wide { mantissa: self.acc.value(), exp: self.exp }.normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_division_is_double_double_accurate() {
        let three = Dd::from_f64(3.0);
        let x = Dd::one() / three;
        let err = (x * three - Dd::one()).abs();
        assert!(err.to_f64() < 1e-31, "{:?}", err);
        let a = Dd::from_f64(0.7);
        let b = Dd::from_f64(1.3);
        assert!(((a / b) * b - a).abs().to_f64() < 1e-31);
    }

    #[test]
    fn dd_sqrt_squares_back() {
        let two = Dd::from_f64(2.0);
        let s = two.sqrt();
        assert!((s * s - two).abs().to_f64() < 1e-31);
    }

    #[test]
    fn dd_repeated_products_hold_precision() {
        let q = Dd::from_f64(0.37);
        let mut p = Dd::one();
        for _ in 0..100 {
            p *= q;
        }
        for _ in 0..100 {
            p /= q;
        }
        assert!((p - Dd::one()).abs().to_f64() < 1e-29);
    }

    #[test]
    fn dd_decimal_rendering() {
        let x = Dd::one() / Dd::from_f64(3.0);
        assert_eq!(x.to_decimal(), "3.3333333333333333333333333333333e-1");
        assert_eq!(Dd::from_f64(-2.5).to_decimal(), "-2.5000000000000000000000000000000e0");
    }

    #[test]
    fn principal_sqrt_branches() {
        let z: Scalar<f64> = Complex::new(-4.0, 0.0);
        let s = z.sqrt_principal();
        assert!((s - Complex::new(0.0, 2.0)).norm() < 1e-15);
        let z: Scalar<f64> = Complex::new(-4.0, -1e-300);
        assert!(z.sqrt_principal().im < 0.0);
        let z: Scalar<f64> = Complex::new(0.3, -0.7);
        let s = z.sqrt_principal();
        assert!((s * s - z).norm() < 1e-15 && s.re > 0.0);
        let zd: Scalar<Dd> = Scalar::<Dd>::from_parts(-0.3, 0.7);
        let sd = zd.sqrt_principal();
        assert!((sd * sd - zd).modulus() < 1e-30);
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let z: Scalar<f64> = Complex::new(0.6, 0.3);
        let mut p = Complex::new(1.0, 0.0);
        for _ in 0..13 {
            p *= z;
        }
        assert!((z.powi_bin(13) - p).norm() < 1e-15);
        assert!((z.powi_bin(-2) * z * z - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(z.powi_bin(0), Complex::new(1.0, 0.0));
    }

    #[test]
    fn wide_survives_exponent_overflow() {
        let big: Scalar<f64> = Complex::new(1e200, 0.0);
        let w = Wide::from_scalar(big).mul_scalar(big).mul_scalar(big);
        assert!(w.to_scalar().is_err());
        let back = w.div_scalar(big).div_scalar(big);
        let v = back.to_scalar().unwrap();
        assert!((v.re / 1e200 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn wide_sum_mixes_scales() {
        let mut s = WideSum::<f64>::new();
        let tiny = Wide::from_scalar(Complex::new(1e-300, 0.0)).div_scalar(Complex::new(1e300, 0.0));
        s.add(tiny);
        s.add(Wide::from_scalar(Complex::new(2.0, 1.0)));
        s.add(tiny);
        let v = s.value().to_scalar().unwrap();
        assert_eq!(v, Complex::new(2.0, 1.0));
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut s = CompensatedSum::<f64>::new();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(Complex::new(x, 0.0));
        }
        assert_eq!(s.value().re, 2.0);
    }
}
