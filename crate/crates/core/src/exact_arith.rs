//! Exact rationals and elements of cyclotomic fields.
//!
//! A [`CyclotomicNumber`] of order `N` is a polynomial in `zeta_N` of degree
//! below `phi(N)`, i.e. a coordinate vector on the power basis of
//! `Q(zeta_N)`. Internally the coordinates share one positive denominator;
//! the public view is a list of reduced rationals. Binary operations on
//! numbers of different orders take place in `Q(zeta_lcm)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intmath::{divisors, euler_phi, lcm, moebius};

/// Exact rational number with reduced numerator and positive denominator.
pub type Rational = BigRational;

/// `n / d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(alloc::format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(alloc::format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
    }
}

/// `base^e` for a possibly negative exponent; `0^e` with `e < 0` is a division error.
pub fn rat_pow(base: &Rational, e: i64) -> Result<Rational> {
    if e < 0 && base.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut r = Rational::one();
    for _ in 0..e.unsigned_abs() {
        r *= base;
    }
    Ok(if e < 0 { r.recip() } else { r })
}

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let n64 = u64::from(n);
    let mut poly: Vec<i128> = vec![1];
    let ds = divisors(n64);
    // Multiply by (x^d - 1) for mu(n/d) = 1, then divide by the rest; every
    // intermediate quotient is exact.
    for &d in &ds {
        if moebius(n64 / d) == 1 {
            let d = d as usize;
            let mut out = vec![0i128; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                out[i + d] += c;
                out[i] -= c;
            }
            poly = out;
        }
    }
    for &d in &ds {
        if moebius(n64 / d) == -1 {
            let d = d as usize;
            // poly / (x^d - 1): q_i = -(p_i - q_{i-d}) read from the bottom.
            let qlen = poly.len() - d;
            let mut q = vec![0i128; qlen];
            for i in 0..qlen {
                let prev = if i >= d { q[i - d] } else { 0 };
                q[i] = prev - poly[i];
            }
            poly = q;
        }
    }
    poly.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits in i64"))
        .collect()
}

/// Reduce an integer polynomial modulo the monic polynomial `phi`.
fn reduce_mod(mut p: Vec<BigInt>, phi: &[i64]) -> Vec<BigInt> {
    let deg = phi.len() - 1;
    if p.len() > deg {
        for i in (deg..p.len()).rev() {
            if p[i].is_zero() {
                continue;
            }
            let c = core::mem::take(&mut p[i]);
            for (j, &f) in phi[..deg].iter().enumerate() {
                if f != 0 {
                    p[i - deg + j] -= &c * f;
                }
            }
        }
        p.truncate(deg);
    }
    p.resize(deg, BigInt::zero());
    p
}

/// Element of `Q(zeta_N)` on the power basis `1, zeta_N, ..., zeta_N^(phi(N)-1)`.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    order: u32,
    // Invariant: len = phi(order), den > 0, gcd(num..., den) = 1, zero has den 1.
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn normalized(order: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -core::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        CyclotomicNumber { order, num, den }
    }

    fn from_int_poly(order: u32, poly: Vec<BigInt>, den: BigInt) -> Self {
        let phi = cyclotomic_polynomial(order);
        Self::normalized(order, reduce_mod(poly, &phi), den)
    }

    pub fn zero(order: u32) -> Self {
        let d = euler_phi(u64::from(order)) as usize;
        CyclotomicNumber { order, num: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, &Rational::one())
    }

    pub fn from_rational(order: u32, r: &Rational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        Self::normalized(order, z.num, z.den)
    }

    pub fn from_integer(order: u32, n: i64) -> Self {
        Self::from_rational(order, &rat_int(n))
    }

    /// `zeta_n^e`, stored in `Q(zeta_n)`.
    pub fn root_of_unity(n: u32, e: i64) -> Self {
        let e = e.rem_euclid(i64::from(n)) as usize;
        let mut poly = vec![BigInt::zero(); e + 1];
        poly[e] = BigInt::one();
        Self::from_int_poly(n, poly, BigInt::one())
    }

    /// Build from power-basis coordinates; the length must be `phi(order)`.
    pub fn new(order: u32, coeffs: &[Rational]) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        let d = euler_phi(u64::from(order)) as usize;
        if coeffs.len() != d {
            return Err(Error::Parse(alloc::format!(
                "order {order} needs {d} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self::from_poly(order, coeffs))
    }

    /// Build from an arbitrary rational polynomial in `zeta_order`, reducing modulo `Phi_order`.
    pub fn from_poly(order: u32, coeffs: &[Rational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_int_poly(order, num, den)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The value as a rational number if it lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Re-express in `Q(zeta_m)`; requires `order | m`.
    pub fn promote(&self, m: u32) -> Result<Self> {
        if m == 0 || m % self.order != 0 {
            return Err(Error::Promotion { from: self.order, to: m });
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_int_poly(m, poly, self.den.clone()))
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = lcm(u64::from(a.order), u64::from(b.order)) as u32;
        (a.promote(m).expect("lcm"), b.promote(m).expect("lcm"))
    }

    fn add_same(a: &Self, b: &Self, sign: i8) -> Self {
        let den = a.den.lcm(&b.den);
        let fa = &den / &a.den;
        let fb = &den / &b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| if sign > 0 { x * &fa + y * &fb } else { x * &fa - y * &fb })
            .collect();
        Self::normalized(a.order, num, den)
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero(a.order);
        }
        let n = a.num.len();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Self::from_int_poly(a.order, prod, &a.den * &b.den)
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::normalized(self.order, num, &self.den * r.denom())
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&rat_int(n))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.order).into_iter().map(rat_int).collect();
        let a: Vec<Rational> = self.num.iter().map(|c| Rational::from_integer(c.clone())).collect();
        // Invariant: r_i = s_i * a (mod phi).
        let (mut r0, mut r1) = (phi, poly_trim(a));
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (vec![], vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
        }
        // r1 is a non-zero constant because Phi is irreducible and a != 0.
        let c = r1[0].clone();
        let inv: Vec<Rational> = s1.iter().map(|x| x / &c).collect();
        let out = Self::from_poly(self.order, &inv);
        // Scale back by the original denominator: (num/den)^-1 = den * num^-1.
        Ok(out.scale(&Rational::from_integer(self.den.clone())))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.order);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        Ok(out)
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The automorphism `zeta_N -> zeta_N^a` for `gcd(a, N) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let n = i64::from(self.order);
        let mut poly = vec![BigInt::zero(); self.order as usize];
        for (i, c) in self.num.iter().enumerate() {
            let j = ((i as i64) * a).rem_euclid(n) as usize;
            poly[j] += c;
        }
        Self::from_int_poly(self.order, poly, self.den.clone())
    }

    /// Image under `zeta_N -> exp(2 pi i / N)` as `(re, im)`.
    ///
    /// Evaluated in `f64`; precisions beyond about 12 digits cannot be honoured for
    /// large coefficients and are clamped to what double precision delivers.
    pub fn complex_embed(&self, _precision: u32) -> (f64, f64) {
        let n = f64::from(self.order);
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = Rational::new(c.clone(), self.den.clone()).to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * core::f64::consts::PI * (i as f64) / n;
            let (s, co) = Float::sin_cos(ang);
            re += v * co;
            im += v * s;
        }
        (re, im)
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CyclotomicNumber {}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.order == rhs.order {
            return CyclotomicNumber::add_same(self, rhs, 1);
        }
        let (a, b) = CyclotomicNumber::common(self, rhs);
        CyclotomicNumber::add_same(&a, &b, 1)
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.order == rhs.order {
            return CyclotomicNumber::add_same(self, rhs, -1);
        }
        let (a, b) = CyclotomicNumber::common(self, rhs);
        CyclotomicNumber::add_same(&a, &b, -1)
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.order == rhs.order {
            return CyclotomicNumber::mul_same(self, rhs);
        }
        let (a, b) = CyclotomicNumber::common(self, rhs);
        CyclotomicNumber::mul_same(&a, &b)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Human-readable form such as `1/2 - 3*z12^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => alloc::format!("z{}", self.order),
                _ => alloc::format!("z{}^{}", self.order, i),
            };
            let coef = if i > 0 && c.is_one() {
                String::new()
            } else if i > 0 && (-c).is_one() {
                String::from("-")
            } else {
                alloc::format!("{c}")
            };
            let sep = if i > 0 && !coef.is_empty() && coef != "-" { "*" } else { "" };
            terms.push(alloc::format!("{coef}{sep}{mono}"));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (i, t) in terms.iter().enumerate() {
            if i == 0 {
                s.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        write!(f, "{s}")
    }
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    poly_trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], poly_trim(r));
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = &r[i] / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] -= &c * bj;
        }
        q[i - db] = c;
    }
    (poly_trim(q), poly_trim(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105)[7], -2);
    }

    #[test]
    fn zeta3_in_zeta12() {
        let z3 = CyclotomicNumber::root_of_unity(3, 1);
        let p = z3.promote(12).unwrap();
        assert_eq!(p, CyclotomicNumber::root_of_unity(12, 4));
        assert_eq!(p.coeffs(), vec![rat(-1, 1), rat(0, 1), rat(1, 1), rat(0, 1)]);
        assert!(z3.promote(8).is_err());
    }

    #[test]
    fn inverse_and_zero() {
        let x = &CyclotomicNumber::root_of_unity(7, 1) + &CyclotomicNumber::from_rational(7, &rat(3, 2));
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, CyclotomicNumber::one(7));
        assert_eq!(CyclotomicNumber::zero(5).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display() {
        let x = CyclotomicNumber::root_of_unity(4, 1).scale_int(2);
        assert_eq!(alloc::format!("{x}"), "2*z4");
        let y = &CyclotomicNumber::root_of_unity(3, 1) - &CyclotomicNumber::root_of_unity(3, 2);
        assert_eq!(alloc::format!("{y}"), "1 + 2*z3");
    }
}
