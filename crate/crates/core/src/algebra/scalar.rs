//! Exact coefficients: the cyclotomic field ℚ(ζ₈) and scalars carrying a
//! formal half-integer power of π.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Exact rational number.
pub type Rational = BigRational;

/// Builds `num / den` as a reduced rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `v` as a rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(String::from(s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Renders a rational as `"num/den"` (or `"num"` for integers).
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// n! as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// Bernoulli numbers B_0..=B_m with B_1 = -1/2.
pub fn bernoulli(m: usize) -> alloc::vec::Vec<Rational> {
    let mut b = alloc::vec::Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for k in 1..=m {
        // sum_{j<=k} C(k+1, j) B_j = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// Element of ℚ(ζ₈) on the basis (1, ζ, ζ², ζ³), ζ⁴ = −1.
///
/// ζ² = i and ζ + ζ⁷ = √2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo8 {
    c: [Rational; 4],
}

impl Cyclo8 {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Cyclo8 { c: [c0, c1, c2, c3] }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclo8::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Cyclo8::from_rational(int(v))
    }

    /// a + b·i with rational parts.
    pub fn complex(re: Rational, im: Rational) -> Self {
        Cyclo8::new(re, Rational::zero(), im, Rational::zero())
    }

    pub fn i() -> Self {
        Cyclo8::complex(Rational::zero(), Rational::one())
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let (idx, sign) = if k < 4 { (k, 1) } else { (k - 4, -1) };
        let mut c: [Rational; 4] = Default::default();
        c[idx] = int(sign);
        Cyclo8 { c }
    }

    /// √2 = ζ − ζ³.
    pub fn sqrt2() -> Self {
        Cyclo8::new(Rational::zero(), int(1), Rational::zero(), int(-1))
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if this is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_rational() && self.c[0].is_integer() {
            Some(self.c[0].to_integer())
        } else {
            None
        }
    }

    /// Image under the Galois automorphism ζ ↦ ζ^k (k odd).
    pub fn galois(&self, k: i64) -> Self {
        let mut out = Cyclo8::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let z = Cyclo8::zeta_pow(k * j as i64);
            out += z.scale(cj);
        }
        out
    }

    /// Complex conjugate (ζ ↦ ζ⁷).
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclo8 {
            c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r],
        }
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let others = self.galois(3) * self.galois(5) * self.galois(7);
        let norm = self.clone() * others.clone();
        debug_assert!(norm.is_rational());
        Some(others.scale(&norm.c[0].recip()))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Cyclo8::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        Some(acc)
    }

    /// Floating approximation (re, im).
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let c: [f64; 4] = [
            rational_to_f64(&self.c[0]),
            rational_to_f64(&self.c[1]),
            rational_to_f64(&self.c[2]),
            rational_to_f64(&self.c[3]),
        ];
        // ζ = (1+i)/√2, ζ³ = (−1+i)/√2
        (c[0] + h * c[1] - h * c[3], c[2] + h * c[1] + h * c[3])
    }

    /// Exact rendering as four rationals on the ζ-basis.
    pub fn to_strings(&self) -> [String; 4] {
        [
            rational_string(&self.c[0]),
            rational_string(&self.c[1]),
            rational_string(&self.c[2]),
            rational_string(&self.c[3]),
        ]
    }
}

impl Default for Cyclo8 {
    fn default() -> Self {
        Cyclo8::zero()
    }
}

impl Zero for Cyclo8 {
    fn zero() -> Self {
        Cyclo8 { c: Default::default() }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for Cyclo8 {
    fn one() -> Self {
        Cyclo8::from_int(1)
    }
}

impl fmt::Debug for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = ["", "ζ", "ζ²", "ζ³"];
        let mut first = true;
        for (c, name) in self.c.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if name.is_empty() || !abs.is_one() {
                write!(f, "{}", rational_string(&abs))?;
            }
            f.write_str(name)?;
        }
        Ok(())
    }
}

impl Add for Cyclo8 {
    type Output = Cyclo8;
    fn add(mut self, rhs: Cyclo8) -> Cyclo8 {
        self += rhs;
        self
    }
}

impl AddAssign for Cyclo8 {
    fn add_assign(&mut self, rhs: Cyclo8) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
    }
}

impl<'a> AddAssign<&'a Cyclo8> for Cyclo8 {
    fn add_assign(&mut self, rhs: &'a Cyclo8) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
    }
}

impl Sub for Cyclo8 {
    type Output = Cyclo8;
    fn sub(mut self, rhs: Cyclo8) -> Cyclo8 {
        self -= rhs;
        self
    }
}

impl SubAssign for Cyclo8 {
    fn sub_assign(&mut self, rhs: Cyclo8) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
    }
}

impl Neg for Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        Cyclo8 { c: self.c.map(|x| -x) }
    }
}

impl<'a> Mul<&'a Cyclo8> for &'a Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, rhs: &'a Cyclo8) -> Cyclo8 {
        let mut out: [Rational; 4] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let k = i + j;
                if k < 4 {
                    out[k] += prod;
                } else {
                    out[k - 4] -= prod;
                }
            }
        }
        Cyclo8 { c: out }
    }
}

impl Mul for Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, rhs: Cyclo8) -> Cyclo8 {
        &self * &rhs
    }
}

impl MulAssign<&Cyclo8> for Cyclo8 {
    fn mul_assign(&mut self, rhs: &Cyclo8) {
        *self = &*self * rhs;
    }
}

/// Exact constant `mantissa · π^{pi_half/2}`.
///
/// Sums are only defined between equal π-grades; zero is compatible with
/// every grade, and all zeros compare equal.
#[derive(Clone)]
pub struct ExtScalar {
    pub mantissa: Cyclo8,
    pub pi_half: i32,
}

impl ExtScalar {
    pub fn new(mantissa: Cyclo8, pi_half: i32) -> Self {
        ExtScalar { mantissa, pi_half }
    }

    pub fn from_rational(r: Rational) -> Self {
        ExtScalar::new(Cyclo8::from_rational(r), 0)
    }

    pub fn from_int(v: i64) -> Self {
        ExtScalar::from_rational(int(v))
    }

    /// π^{h/2}.
    pub fn pi_power_half(h: i32) -> Self {
        ExtScalar::new(Cyclo8::one(), h)
    }

    /// (2iπ)^{e/2} for any integer e; the half-powers use √(2i) = 1 + i.
    pub fn two_i_pi_pow_half(e: i32) -> Self {
        let one_plus_i = Cyclo8::complex(int(1), int(1));
        let mant = one_plus_i.pow(e as i64).expect("1+i is invertible");
        ExtScalar::new(mant, e)
    }

    /// (4π)^{-n/2}: mantissa 2^{-n}, π-grade −n.
    pub fn four_pi_pow_neg_half(n: u32) -> Self {
        let two = Cyclo8::from_int(2);
        ExtScalar::new(two.pow(-(n as i64)).expect("nonzero"), -(n as i32))
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn zero() -> Self {
        ExtScalar::new(Cyclo8::zero(), 0)
    }

    pub fn one() -> Self {
        ExtScalar::new(Cyclo8::one(), 0)
    }

    pub fn try_add(&self, other: &ExtScalar) -> Result<ExtScalar, AlgebraError> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.pi_half != other.pi_half {
            return Err(AlgebraError::GradeMismatch(self.pi_half, other.pi_half));
        }
        Ok(ExtScalar::new(self.mantissa.clone() + other.mantissa.clone(), self.pi_half))
    }

    pub fn scale(&self, r: &Rational) -> ExtScalar {
        ExtScalar::new(self.mantissa.scale(r), self.pi_half)
    }

    pub fn inv(&self) -> Option<ExtScalar> {
        Some(ExtScalar::new(self.mantissa.inv()?, -self.pi_half))
    }

    pub fn conj(&self) -> ExtScalar {
        ExtScalar::new(self.mantissa.conj(), self.pi_half)
    }

    /// Returns the value as an exact integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.pi_half != 0 {
            return None;
        }
        self.mantissa.as_integer()
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        let (re, im) = self.mantissa.to_complex_f64();
        let s = pi_half_f64(self.pi_half);
        (re * s, im * s)
    }
}

impl PartialEq for ExtScalar {
    fn eq(&self, other: &Self) -> bool {
        self.mantissa == other.mantissa && (self.pi_half == other.pi_half || self.is_zero())
    }
}

impl Eq for ExtScalar {}

impl core::hash::Hash for ExtScalar {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.mantissa.hash(state);
        if !self.is_zero() {
            self.pi_half.hash(state);
        }
    }
}

fn pi_half_f64(h: i32) -> f64 {
    const SQRT_PI: f64 = 1.772_453_850_905_516_f64;
    let mut acc = 1.0;
    let base = if h >= 0 { SQRT_PI } else { 1.0 / SQRT_PI };
    for _ in 0..h.unsigned_abs() {
        acc *= base;
    }
    acc
}

impl fmt::Debug for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_half == 0 || self.is_zero() {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "({})·π^({}/2)", self.mantissa, self.pi_half)
        }
    }
}

/// Panics on a π-grade mismatch; use [`ExtScalar::try_add`] to recover.
impl Add for ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: ExtScalar) -> ExtScalar {
        self.try_add(&rhs).expect("π-grade mismatch in ExtScalar addition")
    }
}

impl Sub for ExtScalar {
    type Output = ExtScalar;
    fn sub(self, rhs: ExtScalar) -> ExtScalar {
        self + (-rhs)
    }
}

impl Neg for ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar::new(-self.mantissa, self.pi_half)
    }
}

impl Mul for ExtScalar {
    type Output = ExtScalar;
    fn mul(self, rhs: ExtScalar) -> ExtScalar {
        ExtScalar::new(&self.mantissa * &rhs.mantissa, self.pi_half + rhs.pi_half)
    }
}

impl<'a> Mul<&'a ExtScalar> for &'a ExtScalar {
    type Output = ExtScalar;
    fn mul(self, rhs: &'a ExtScalar) -> ExtScalar {
        ExtScalar::new(&self.mantissa * &rhs.mantissa, self.pi_half + rhs.pi_half)
    }
}

/// Sum of scalars of possibly different π-grades, for reporting.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSum {
    parts: BTreeMap<i32, Cyclo8>,
}

impl GradedSum {
    pub fn new() -> Self {
        GradedSum::default()
    }

    pub fn push(&mut self, s: &ExtScalar) {
        if s.is_zero() {
            return;
        }
        let e = self.parts.entry(s.pi_half).or_default();
        *e += &s.mantissa;
        if e.is_zero() {
            self.parts.remove(&s.pi_half);
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = ExtScalar> + '_ {
        self.parts.iter().map(|(h, m)| ExtScalar::new(m.clone(), *h))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        self.parts().fold((0.0, 0.0), |(a, b), s| {
            let (x, y) = s.to_complex_f64();
            (a + x, b + y)
        })
    }
}

/// Γ(k/2) for a positive integer k, as an exact scalar (√π-grade 1 for odd k).
pub fn gamma_half(k: u32) -> ExtScalar {
    assert!(k > 0, "Γ has a pole at 0");
    if k % 2 == 0 {
        return ExtScalar::from_rational(factorial(k / 2 - 1));
    }
    // Γ(m + ½) = (2m)! / (4^m m!) √π
    let m = (k - 1) / 2;
    let num = factorial(2 * m);
    let den = factorial(m) * Rational::from_integer(BigInt::from(4u32).pow(m));
    ExtScalar::new(Cyclo8::from_rational(num / den), 1)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_identities() {
        let z = Cyclo8::zeta_pow(1);
        let z7 = Cyclo8::zeta_pow(7);
        let s = z.clone() + z7;
        assert_eq!(s.clone() * s, Cyclo8::from_int(2));
        assert_eq!(z.clone() * z, Cyclo8::i());
        assert_eq!(Cyclo8::sqrt2() * Cyclo8::sqrt2(), Cyclo8::from_int(2));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Cyclo8::new(rat(1, 2), int(3), rat(-2, 7), int(1));
        assert_eq!(a.clone() * a.inv().unwrap(), Cyclo8::one());
        assert!(Cyclo8::zero().inv().is_none());
    }

    #[test]
    fn conj_of_i() {
        assert_eq!(Cyclo8::i().conj(), -Cyclo8::i());
        let (re, im) = Cyclo8::zeta_pow(1).to_complex_f64();
        assert!((re - im).abs() < 1e-15 && (re - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn sqrt_two_i_pi() {
        let s = ExtScalar::two_i_pi_pow_half(1);
        let sq = s.clone() * s;
        assert_eq!(sq, ExtScalar::new(Cyclo8::complex(int(0), int(2)), 2));
        let inv = ExtScalar::two_i_pi_pow_half(-1);
        assert_eq!(ExtScalar::two_i_pi_pow_half(1) * inv, ExtScalar::one());
    }

    #[test]
    fn grade_mismatch_rejected() {
        let a = ExtScalar::pi_power_half(1);
        let b = ExtScalar::one();
        assert!(matches!(a.try_add(&b), Err(AlgebraError::GradeMismatch(1, 0))));
        assert_eq!(a.try_add(&ExtScalar::zero()).unwrap(), a);
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(8);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
        assert!(b[3].is_zero() && b[5].is_zero());
    }

    #[test]
    fn gamma_at_half_integers() {
        assert_eq!(gamma_half(1), ExtScalar::pi_power_half(1));
        assert_eq!(gamma_half(3), ExtScalar::new(Cyclo8::from_rational(rat(1, 2)), 1));
        assert_eq!(gamma_half(5), ExtScalar::new(Cyclo8::from_rational(rat(3, 4)), 1));
        assert_eq!(gamma_half(8), ExtScalar::from_int(6));
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rational_string(&rat(-3, 2)), "-3/2");
    }
}
