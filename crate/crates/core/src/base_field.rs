//! Base fields: `Q` and real quadratic fields `Q(sqrt D)` with `D` a
//! fundamental discriminant.
//!
//! Integers of `Q(sqrt D)` are written `a + b w` with `w = (delta + sqrt D)/2`,
//! `delta = D mod 2`, so that `w^2 = delta w + (D - delta)/4`. Integral
//! ideals are kept in Hermite normal form `A Z + (B + C w) Z` with
//! `C | A`, `C | B`, `0 <= B < A`; the zero ideal is `A = C = 0`.
//!
//! The first real embedding sends `sqrt D` to the positive root.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;

use crate::error::{hyp, Error, Result};
use crate::intmath::{self, factorize, isqrt, kronecker_prime};
use num_traits::Float;

/// Recorded in every output that depends on an ordering of real embeddings.
pub const EMBEDDING_CONVENTION: &str = "first embedding: sqrt(D) -> +sqrt(D)";

/// A real quadratic field given by its fundamental discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticField {
    pub d: i64,
}

/// `Q` or a real quadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rational,
    Quadratic(QuadraticField),
}

/// An element `a + b w` of the ring of integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub a: i128,
    pub b: i128,
}

/// An integral ideal of a real quadratic field in Hermite normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadIdeal {
    pub d: i64,
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

/// An integral ideal of either kind of base field; `Rational(0)` is the zero ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ideal {
    Rational(u64),
    Quadratic(QuadIdeal),
}

/// A prime ideal with its residue degree data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub ideal: Ideal,
    /// The rational prime below.
    pub p: u64,
    /// Absolute norm `p^f`.
    pub norm: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NarrowClassData {
    pub h: u64,
    pub h_plus: u64,
    /// Fundamental unit (`-1` over `Q`), chosen `> 1` in the first embedding for quadratic fields.
    pub epsilon: QuadInt,
    pub epsilon_norm: i64,
    /// One integral ideal per narrow class, the trivial class first.
    pub t_reps: Vec<Ideal>,
    pub embedding: &'static str,
}

fn is_fundamental_discriminant(d: i64) -> bool {
    if d <= 1 {
        return false;
    }
    let sqfree = |n: u64| intmath::is_squarefree(n);
    match d.rem_euclid(4) {
        1 => sqfree(d as u64),
        0 => {
            let m = d / 4;
            (m.rem_euclid(4) == 2 || m.rem_euclid(4) == 3) && sqfree(m as u64)
        }
        _ => false,
    }
}

impl QuadraticField {
    /// Accepts fundamental discriminants `D > 1`.
    pub fn new(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return hyp(alloc::format!("{d} is not a positive fundamental discriminant"));
        }
        Ok(QuadraticField { d })
    }

    fn delta(&self) -> i128 {
        i128::from(self.d.rem_euclid(2))
    }

    /// `w^2 = delta w + w2c`.
    fn w2c(&self) -> i128 {
        (i128::from(self.d) - self.delta()) / 4
    }

    pub fn mul(&self, x: QuadInt, y: QuadInt) -> QuadInt {
        let bb = x.b * y.b;
        QuadInt {
            a: x.a * y.a + bb * self.w2c(),
            b: x.a * y.b + x.b * y.a + bb * self.delta(),
        }
    }

    pub fn conj(&self, x: QuadInt) -> QuadInt {
        // w' = delta - w
        QuadInt { a: x.a + x.b * self.delta(), b: -x.b }
    }

    pub fn norm(&self, x: QuadInt) -> i128 {
        x.a * x.a + self.delta() * x.a * x.b - self.w2c() * x.b * x.b
    }

    pub fn trace(&self, x: QuadInt) -> i128 {
        2 * x.a + self.delta() * x.b
    }

    /// Value in the first real embedding.
    pub fn embed(&self, x: QuadInt) -> f64 {
        let w = (self.delta() as f64 + libm_sqrt(self.d as f64)) / 2.0;
        x.a as f64 + x.b as f64 * w
    }

    /// Value in the second real embedding.
    pub fn embed_conj(&self, x: QuadInt) -> f64 {
        self.embed(self.conj(x))
    }

    /// Sign of `x` in the first embedding, decided exactly.
    pub fn sign1(&self, x: QuadInt) -> i32 {
        // a + b (delta + s)/2 with s = sqrt D: compare 2a + b delta with -b s.
        let u = 2 * x.a + x.b * self.delta();
        sign_of_u_plus_v_sqrt(u, x.b, self.d)
    }

    /// Sign of `x` in the second embedding.
    pub fn sign2(&self, x: QuadInt) -> i32 {
        self.sign1(self.conj(x))
    }

    pub fn is_totally_positive(&self, x: QuadInt) -> bool {
        self.sign1(x) > 0 && self.sign2(x) > 0
    }

    /// Exact division `x / y` if the quotient is integral.
    pub fn div_exact(&self, x: QuadInt, y: QuadInt) -> Option<QuadInt> {
        let n = self.norm(y);
        if n == 0 {
            return None;
        }
        let t = self.mul(x, self.conj(y));
        if t.a % n == 0 && t.b % n == 0 {
            Some(QuadInt { a: t.a / n, b: t.b / n })
        } else {
            None
        }
    }

    /// `sqrt D` as an integer of the field: `2w - delta`.
    pub fn sqrt_d(&self) -> QuadInt {
        QuadInt { a: -self.delta(), b: 2 }
    }

    pub fn one(&self) -> QuadInt {
        QuadInt { a: 1, b: 0 }
    }

    /// Fundamental unit `> 1` from the continued fraction of `w`.
    pub fn fundamental_unit(&self) -> QuadInt {
        // Expand xi = (P + sqrt D)/Q starting from w = (delta + sqrt D)/2.
        let d = i128::from(self.d);
        let s = i128::from(isqrt(self.d as u64));
        let (mut p, mut q) = (self.delta(), 2i128);
        // Convergent numerators and denominators, seeded with p_{-1}/q_{-1} = 1/0.
        let (mut hp, mut hpp, mut kp, mut kpp) = (1i128, 0i128, 0i128, 1i128);
        loop {
            let a = Integer::div_floor(&(p + s), &q);
            let h = a * hp + hpp;
            let k = a * kp + kpp;
            hpp = hp;
            hp = h;
            kpp = kp;
            kp = k;
            // h/k approximates w, so h - k w' is a large unit candidate.
            let cand = QuadInt { a: h - k * self.delta(), b: k };
            if self.norm(cand).abs() == 1 {
                return cand;
            }
            p = a * q - p;
            q = (d - p * p) / q;
        }
    }

    /// Generator of `O_+^*`: `epsilon` if it is totally positive, else `epsilon^2`.
    pub fn totally_positive_unit(&self) -> QuadInt {
        let e = self.fundamental_unit();
        if self.norm(e) == 1 {
            e
        } else {
            self.mul(e, e)
        }
    }

    /// `x^e` for `e >= 0`.
    pub fn pow(&self, x: QuadInt, e: u64) -> QuadInt {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(r, x);
        }
        r
    }

    pub fn ideal(&self, gens: &[QuadInt]) -> QuadIdeal {
        QuadIdeal::from_generators(self.d, gens)
    }

    pub fn principal(&self, x: QuadInt) -> QuadIdeal {
        self.ideal(&[x])
    }

    pub fn unit_ideal(&self) -> QuadIdeal {
        QuadIdeal { d: self.d, a: 1, b: 0, c: 1 }
    }

    pub fn rational_ideal(&self, n: u64) -> QuadIdeal {
        self.principal(QuadInt { a: n as i128, b: 0 })
    }

    /// The different `(sqrt D)`.
    pub fn different(&self) -> QuadIdeal {
        self.principal(self.sqrt_d())
    }

    /// Prime ideals above the rational prime `p`.
    pub fn primes_above(&self, p: u64) -> Vec<PrimeIdeal> {
        let pi = p as i128;
        let wrap = |id: QuadIdeal, norm: u64| PrimeIdeal { ideal: Ideal::Quadratic(id), p, norm };
        match kronecker_prime(self.d, p) {
            -1 => vec![wrap(self.rational_ideal(p), p * p)],
            k => {
                // Roots of the minimal polynomial x^2 - delta x - w2c of w modulo p.
                let mut roots = Vec::new();
                for r in 0..pi {
                    if (r * r - self.delta() * r - self.w2c()).rem_euclid(pi) == 0 {
                        roots.push(r);
                    }
                }
                let mut out: Vec<PrimeIdeal> = roots
                    .iter()
                    .map(|&r| wrap(self.ideal(&[QuadInt { a: pi, b: 0 }, QuadInt { a: -r, b: 1 }]), p))
                    .collect();
                out.sort_by_key(|x| x.ideal);
                out.dedup();
                debug_assert_eq!(out.len(), if k == 0 { 1 } else { 2 });
                out
            }
        }
    }

    /// Canonical residue of `x` modulo a non-zero ideal.
    pub fn reduce(&self, x: QuadInt, m: &QuadIdeal) -> QuadInt {
        let t = Integer::div_floor(&x.b, &m.c);
        let (a, b) = (x.a - t * m.b, x.b - t * m.c);
        QuadInt { a: a.rem_euclid(m.a), b }
    }

    pub fn is_zero_mod(&self, x: QuadInt, m: &QuadIdeal) -> bool {
        self.reduce(x, m) == QuadInt { a: 0, b: 0 }
    }

    /// All residues modulo `m`, canonical representatives.
    pub fn residues(&self, m: &QuadIdeal) -> Vec<QuadInt> {
        let mut out = Vec::new();
        for b in 0..m.c {
            for a in 0..m.a {
                out.push(QuadInt { a, b });
            }
        }
        out
    }

    /// Whether `x` is a unit modulo `m`.
    pub fn is_unit_mod(&self, x: QuadInt, m: &QuadIdeal) -> bool {
        let g = self.ideal(&[x]).add(m);
        g.is_unit()
    }

    /// Residues that are units modulo `m`.
    pub fn unit_residues(&self, m: &QuadIdeal) -> Vec<QuadInt> {
        let primes: Vec<QuadIdeal> = self
            .factor(m)
            .into_iter()
            .map(|(p, _)| match p.ideal {
                Ideal::Quadratic(q) => q,
                Ideal::Rational(_) => unreachable!(),
            })
            .collect();
        self.residues(m)
            .into_iter()
            .filter(|&x| primes.iter().all(|p| !self.is_zero_mod(x, p)))
            .collect()
    }

    /// Factorization of a non-zero integral ideal into prime powers, sorted by prime.
    pub fn factor(&self, m: &QuadIdeal) -> Vec<(PrimeIdeal, u32)> {
        assert!(!m.is_zero(), "factor of the zero ideal");
        let mut out = Vec::new();
        for (p, _) in factorize(m.norm() as u64) {
            for pr in self.primes_above(p) {
                let q = match pr.ideal {
                    Ideal::Quadratic(q) => q,
                    Ideal::Rational(_) => unreachable!(),
                };
                let mut e = 0;
                let mut cur = *m;
                while cur.is_contained_in(&q) {
                    cur = cur.div_exact(&q).expect("contained means divisible");
                    e += 1;
                }
                if e > 0 {
                    out.push((pr, e));
                }
            }
        }
        out
    }

    /// `#(O/m)^*`.
    pub fn unit_group_order(&self, m: &QuadIdeal) -> u64 {
        self.factor(m)
            .into_iter()
            .map(|(p, e)| (p.norm - 1) * p.norm.pow(e - 1))
            .product()
    }

    /// Multiplicative order of a unit modulo `m`.
    pub fn order_mod(&self, x: QuadInt, m: &QuadIdeal) -> u64 {
        let one = self.reduce(self.one(), m);
        let xr = self.reduce(x, m);
        let mut cur = xr;
        let mut k = 1;
        while cur != one {
            cur = self.reduce(self.mul(cur, xr), m);
            k += 1;
            assert!(k <= m.norm() as u64 + 1, "element is not a unit modulo the ideal");
        }
        k
    }

    /// Narrow class number from cycles of reduced forms of discriminant `D`.
    pub fn narrow_class_number(&self) -> u64 {
        reduced_form_cycles(self.d).len() as u64
    }

    /// Cycle index (narrow class) of a non-zero integral ideal.
    pub fn narrow_class_index(&self, i: &QuadIdeal) -> usize {
        let cycles = reduced_form_cycles(self.d);
        let f = reduce_form(ideal_form(self, i), self.d);
        cycles
            .iter()
            .position(|c| c.contains(&f))
            .expect("every reduced form lies on a cycle")
    }

    /// A generator of a principal ideal, or `None` if the ideal is not principal.
    ///
    /// Searches a box in which some generator must lie: every principal ideal
    /// has a generator with `1 <= x < epsilon` in the first embedding.
    pub fn principal_generator(&self, i: &QuadIdeal) -> Option<QuadInt> {
        let n = i.norm();
        let eps = self.fundamental_unit();
        let e1 = self.embed(eps);
        let bound = libm_sqrt(n as f64 * e1) + 1.0;
        // x = a + b w with |x| <= bound, |x'| <= bound: b = (x - x')/sqrt D.
        let bmax = Float::ceil(2.0 * bound / libm_sqrt(self.d as f64)) as i128 + 1;
        let mut best: Option<QuadInt> = None;
        for b in -bmax..=bmax {
            let w = (self.delta() as f64 + libm_sqrt(self.d as f64)) / 2.0;
            let center = -(b as f64) * w;
            let lo = Float::floor(center - bound) as i128 - 1;
            let hi = Float::ceil(center + bound) as i128 + 1;
            for a in lo..=hi {
                let x = QuadInt { a, b };
                if self.norm(x).abs() == n && self.is_zero_mod(x, i) {
                    let better = match best {
                        None => true,
                        Some(y) => (x.b.abs(), x.a.abs(), x) < (y.b.abs(), y.a.abs(), y),
                    };
                    if better {
                        best = Some(x);
                    }
                }
            }
        }
        best
    }
}

fn libm_sqrt(x: f64) -> f64 {
    num_traits::Float::sqrt(x)
}

/// Sign of `u + v sqrt(d)` for `d > 0` not a square.
fn sign_of_u_plus_v_sqrt(u: i128, v: i128, d: i64) -> i32 {
    let su = u.signum() as i32;
    let sv = v.signum() as i32;
    if sv == 0 {
        return su;
    }
    if su == 0 || su == sv {
        return sv;
    }
    // Opposite signs: compare u^2 with v^2 d.
    match (u * u).cmp(&(v * v * i128::from(d))) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => 0,
    }
}

impl QuadIdeal {
    pub fn zero(d: i64) -> Self {
        QuadIdeal { d, a: 0, b: 0, c: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0
    }

    pub fn is_unit(&self) -> bool {
        self.a == 1 && self.c == 1
    }

    pub fn field(&self) -> QuadraticField {
        QuadraticField { d: self.d }
    }

    pub fn norm(&self) -> i128 {
        self.a * self.c
    }

    /// HNF of the O-module generated by `gens`.
    pub fn from_generators(d: i64, gens: &[QuadInt]) -> Self {
        let f = QuadraticField { d };
        let w = QuadInt { a: 0, b: 1 };
        let mut vecs: Vec<(i128, i128)> = Vec::new();
        for &g in gens {
            vecs.push((g.a, g.b));
            let gw = f.mul(g, w);
            vecs.push((gw.a, gw.b));
        }
        hnf2(d, &vecs)
    }

    fn basis(&self) -> [QuadInt; 2] {
        [QuadInt { a: self.a, b: 0 }, QuadInt { a: self.b, b: self.c }]
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.d);
        }
        let f = self.field();
        let mut gens = Vec::new();
        for x in self.basis() {
            for y in other.basis() {
                gens.push(f.mul(x, y));
            }
        }
        let v: Vec<(i128, i128)> = gens.iter().map(|g| (g.a, g.b)).collect();
        hnf2(self.d, &v)
    }

    /// `self + other`, the gcd of two ideals.
    pub fn add(&self, other: &Self) -> Self {
        let mut v: Vec<(i128, i128)> = Vec::new();
        for x in self.basis().into_iter().chain(other.basis()) {
            v.push((x.a, x.b));
        }
        hnf2(self.d, &v)
    }

    pub fn conj(&self) -> Self {
        let f = self.field();
        let gens: Vec<QuadInt> = self.basis().iter().map(|&x| f.conj(x)).collect();
        QuadIdeal::from_generators(self.d, &gens)
    }

    pub fn contains(&self, x: QuadInt) -> bool {
        if self.is_zero() {
            return x == QuadInt { a: 0, b: 0 };
        }
        self.field().is_zero_mod(x, self)
    }

    /// `self ⊆ other`, i.e. `other | self`.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.basis().iter().all(|&x| other.contains(x))
    }

    /// The integral ideal `self / other` when `other | self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(*self);
        }
        if !self.is_contained_in(other) {
            return None;
        }
        let n = other.norm();
        let t = self.mul(&other.conj());
        // Every element of t is divisible by n.
        let gens: Vec<QuadInt> = t.basis().iter().map(|x| QuadInt { a: x.a / n, b: x.b / n }).collect();
        Some(QuadIdeal::from_generators(self.d, &gens))
    }
}

/// Hermite normal form of the Z-lattice spanned by `vecs` in coordinates (1, w).
fn hnf2(d: i64, vecs: &[(i128, i128)]) -> QuadIdeal {
    // Column echelon: find c = gcd of w-coordinates with a combination (b, c),
    // then a = gcd of 1-coordinates of the kernel part.
    let mut rows: Vec<(i128, i128)> = vecs.iter().copied().filter(|&v| v != (0, 0)).collect();
    if rows.is_empty() {
        return QuadIdeal::zero(d);
    }
    // Euclid on second coordinates.
    let mut pivot: Option<(i128, i128)> = None;
    let mut rest: Vec<(i128, i128)> = Vec::new();
    for r in rows.drain(..) {
        if r.1 == 0 {
            rest.push(r);
            continue;
        }
        match pivot {
            None => pivot = Some(r),
            Some(p) => {
                let (mut x, mut y) = (p, r);
                while y.1 != 0 {
                    let q = Integer::div_floor(&x.1, &y.1);
                    let z = (x.0 - q * y.0, x.1 - q * y.1);
                    x = y;
                    y = z;
                }
                pivot = Some(x);
                rest.push(y);
            }
        }
    }
    let a = rest.iter().fold(0i128, |g, r| g.gcd(&r.0));
    let (mut b, mut c) = pivot.unwrap_or((0, 0));
    if c < 0 {
        b = -b;
        c = -c;
    }
    // An O-ideal is never contained in Z, so c > 0 and a > 0 for non-zero input.
    assert!(a > 0 && c > 0, "lattice is not an ideal");
    QuadIdeal { d, a, b: b.rem_euclid(a), c }
}

type Form = (i128, i128, i128);

/// Binary quadratic form attached to an ideal: `I = n [a, (-B + sqrt D)/2]`.
fn ideal_form(f: &QuadraticField, i: &QuadIdeal) -> Form {
    // Primitive part: I = c * [a/c, b/c + w].
    let a = i.a / i.c;
    let bp = i.b / i.c;
    // b' + w = (2b' + delta + sqrt D)/2 so B = -(2b' + delta).
    let bb = -(2 * bp + f.delta());
    let cc = (bb * bb - i128::from(f.d)) / (4 * a);
    (a, bb, cc)
}

fn is_reduced(f: Form, d: i64) -> bool {
    let s = libm_sqrt(d as f64);
    let (a, b, _) = f;
    b > 0 && (b as f64) < s && s - (b as f64) < (2 * a.abs()) as f64 && ((2 * a.abs()) as f64) < s + b as f64
}

/// One step of the reduction operator.
fn rho(f: Form, d: i64) -> Form {
    let (_, b, c) = f;
    let s = isqrt(d as u64) as i128;
    let two_c = 2 * c.abs();
    // b' = -b (mod 2c) in the normalization window.
    let mut bp = (-b).rem_euclid(two_c);
    if c.abs() as f64 > libm_sqrt(d as f64) {
        if bp > c.abs() {
            bp -= two_c;
        }
    } else {
        // sqrt D - 2|c| < b' < sqrt D: largest b' <= s in the class.
        bp = s - (s - bp).rem_euclid(two_c);
    }
    let ap = (bp * bp - i128::from(d)) / (4 * c);
    (c, bp, ap)
}

fn reduce_form(mut f: Form, d: i64) -> Form {
    let mut steps = 0;
    while !is_reduced(f, d) {
        f = rho(f, d);
        steps += 1;
        assert!(steps < 10_000, "form reduction did not terminate");
    }
    f
}

/// Cycles of reduced forms of discriminant `d` under `rho`, in a canonical order.
fn reduced_form_cycles(d: i64) -> Vec<Vec<Form>> {
    let s = libm_sqrt(d as f64);
    let mut reduced = Vec::new();
    let di = i128::from(d);
    for b in 1..=(s as i128) {
        if (b * b - di).rem_euclid(4) != 0 {
            continue;
        }
        let ac = (b * b - di) / 4;
        for a in 1..=ac.abs() {
            if ac % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let f = (sa, b, ac / sa);
                if is_reduced(f, d) && f.0.gcd(&f.1).gcd(&f.2) == 1 {
                    reduced.push(f);
                }
            }
        }
    }
    reduced.sort();
    let mut cycles: Vec<Vec<Form>> = Vec::new();
    let mut seen: Vec<Form> = Vec::new();
    // Start from the principal form so that cycle 0 is the trivial class.
    let delta = i128::from(d.rem_euclid(2));
    let principal = reduce_form((1, -delta, (delta - di) / 4), d);
    let mut starts = vec![principal];
    starts.extend(reduced.iter().copied());
    for f in starts {
        if seen.contains(&f) {
            continue;
        }
        let mut cyc = vec![f];
        let mut g = rho(f, d);
        while g != f {
            cyc.push(g);
            g = rho(g, d);
        }
        seen.extend(cyc.iter().copied());
        cycles.push(cyc);
    }
    cycles
}

impl BaseField {
    /// `"Q"`, or a discriminant such as `"5"` / `"D5"`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(BaseField::Rational);
        }
        let num = t.strip_prefix('D').or_else(|| t.strip_prefix('d')).unwrap_or(t);
        let d: i64 = num.parse().map_err(|_| Error::Parse(alloc::format!("bad field {s:?}")))?;
        Ok(BaseField::Quadratic(QuadraticField::new(d)?))
    }

    pub fn degree(&self) -> u32 {
        match self {
            BaseField::Rational => 1,
            BaseField::Quadratic(_) => 2,
        }
    }

    pub fn name(&self) -> String {
        match self {
            BaseField::Rational => "Q".to_string(),
            BaseField::Quadratic(f) => alloc::format!("D{}", f.d),
        }
    }

    pub fn unit_ideal(&self) -> Ideal {
        match self {
            BaseField::Rational => Ideal::Rational(1),
            BaseField::Quadratic(f) => Ideal::Quadratic(f.unit_ideal()),
        }
    }

    /// The ideal generated by a rational integer.
    pub fn ideal_from_int(&self, n: u64) -> Ideal {
        match self {
            BaseField::Rational => Ideal::Rational(n),
            BaseField::Quadratic(f) => Ideal::Quadratic(f.rational_ideal(n)),
        }
    }

    pub fn factor_ideal(&self, i: &Ideal) -> Result<Vec<(PrimeIdeal, u32)>> {
        if i.is_zero() {
            return hyp("cannot factor the zero ideal");
        }
        Ok(match (self, i) {
            (BaseField::Rational, Ideal::Rational(n)) => factorize(*n)
                .into_iter()
                .map(|(p, e)| (PrimeIdeal { ideal: Ideal::Rational(p), p, norm: p }, e))
                .collect(),
            (BaseField::Quadratic(f), Ideal::Quadratic(q)) => f.factor(q),
            _ => return hyp("ideal does not belong to this field"),
        })
    }

    pub fn narrow_class_data(&self, level: Option<&Ideal>) -> Result<NarrowClassData> {
        match self {
            BaseField::Rational => Ok(NarrowClassData {
                h: 1,
                h_plus: 1,
                epsilon: QuadInt { a: -1, b: 0 },
                epsilon_norm: -1,
                t_reps: vec![Ideal::Rational(1)],
                embedding: EMBEDDING_CONVENTION,
            }),
            BaseField::Quadratic(f) => {
                let eps = f.fundamental_unit();
                let en = f.norm(eps) as i64;
                let h_plus = f.narrow_class_number();
                let h = if en == -1 { h_plus } else { h_plus / 2 };
                let mut t_reps: Vec<Option<Ideal>> = vec![None; h_plus as usize];
                t_reps[0] = Some(Ideal::Quadratic(f.unit_ideal()));
                let lvl = level.copied().unwrap_or(Ideal::Quadratic(f.unit_ideal()));
                let mut p = 2u64;
                while t_reps.iter().any(Option::is_none) {
                    // Primes in order of norm: p itself for split/ramified, p^2 for inert.
                    let mut cands: Vec<PrimeIdeal> = Vec::new();
                    for q in 2..=p {
                        if intmath::is_prime(q) {
                            for pr in f.primes_above(q) {
                                if pr.norm == p {
                                    cands.push(pr);
                                }
                            }
                        }
                    }
                    for pr in cands {
                        if !lvl.is_coprime(&pr.ideal) {
                            continue;
                        }
                        let Ideal::Quadratic(q) = pr.ideal else { unreachable!() };
                        let idx = f.narrow_class_index(&q);
                        if t_reps[idx].is_none() {
                            t_reps[idx] = Some(pr.ideal);
                        }
                    }
                    p += 1;
                    assert!(p < 100_000, "narrow class representatives not found");
                }
                Ok(NarrowClassData {
                    h,
                    h_plus,
                    epsilon: eps,
                    epsilon_norm: en,
                    t_reps: t_reps.into_iter().map(Option::unwrap).collect(),
                    embedding: EMBEDDING_CONVENTION,
                })
            }
        }
    }

    /// `#(b/bm)^*` modulo the image of the totally positive units.
    ///
    /// Over real quadratic fields the count is made by enumerating generators of
    /// `b/bm` and their orbits, so it exercises the independence from `b`.
    pub fn ray_residue_size(&self, b: &Ideal, m: &Ideal) -> Result<u64> {
        if m.is_zero() || b.is_zero() {
            return hyp("ray residues need non-zero ideals");
        }
        match (self, b, m) {
            (BaseField::Rational, Ideal::Rational(_), Ideal::Rational(m)) => Ok(intmath::euler_phi(*m)),
            (BaseField::Quadratic(f), Ideal::Quadratic(bq), Ideal::Quadratic(mq)) => {
                let bm = bq.mul(mq);
                // Coset representatives of b/bm: canonical residues mod bm lying in b.
                let gens: Vec<QuadInt> = f
                    .residues(&bm)
                    .into_iter()
                    .filter(|&x| bq.contains(x) && f.ideal(&[x]).add(&bm) == *bq)
                    .collect();
                let u = f.totally_positive_unit();
                let mut seen: Vec<QuadInt> = Vec::new();
                let mut orbits = 0u64;
                for &x in &gens {
                    if seen.contains(&x) {
                        continue;
                    }
                    orbits += 1;
                    let mut y = x;
                    loop {
                        seen.push(y);
                        y = f.reduce(f.mul(y, u), &bm);
                        if y == x {
                            break;
                        }
                    }
                }
                Ok(orbits)
            }
            _ => hyp("ideal does not belong to this field"),
        }
    }

    /// Whether there are units `e1 = 1 (m)`, `e2 = 1 (n/m)`, `N(e1) = N(e2) = -1`, `e1/e2 >> 0`.
    pub fn unit_solution_exists(&self, m: &Ideal, n: &Ideal) -> Result<bool> {
        let nm = n.div_exact(m).ok_or_else(|| Error::Hypothesis("m must divide n".into()))?;
        match (self, m) {
            (BaseField::Rational, Ideal::Rational(m)) => {
                let Ideal::Rational(nm) = nm else { unreachable!() };
                Ok(2 % m == 0 && 2 % nm == 0)
            }
            (BaseField::Quadratic(f), Ideal::Quadratic(mq)) => {
                let eps = f.fundamental_unit();
                if f.norm(eps) == 1 {
                    return Ok(false);
                }
                let Ideal::Quadratic(nmq) = nm else { unreachable!() };
                // Norm -1 units are +-eps^odd and eps^2 >> 0, so the quotient
                // condition forces the same sign on both sides.
                let solvable = |s: i128, q: &QuadIdeal| -> bool {
                    if q.is_unit() {
                        return true;
                    }
                    let ord = f.order_mod(eps, q);
                    let mut x = QuadInt { a: s * eps.a, b: s * eps.b };
                    let e2 = f.mul(eps, eps);
                    for _ in 0..=ord {
                        if f.reduce(x, q) == f.reduce(f.one(), q) {
                            return true;
                        }
                        x = f.reduce(f.mul(x, e2), q);
                    }
                    false
                };
                Ok([1i128, -1].iter().any(|&s| solvable(s, mq) && solvable(s, &nmq)))
            }
            _ => hyp("ideal does not belong to this field"),
        }
    }

    /// All divisors of a non-zero integral ideal, sorted.
    pub fn ideal_divisors(&self, n: &Ideal) -> Result<Vec<Ideal>> {
        let fac = self.factor_ideal(n)?;
        let mut out = vec![self.unit_ideal()];
        for (p, e) in fac {
            let len = out.len();
            let mut pk = self.unit_ideal();
            for _ in 0..e {
                pk = pk.mul(&p.ideal);
                for i in 0..len {
                    let x = out[i].mul(&pk);
                    out.push(x);
                }
            }
        }
        out.sort_by(|a, b| a.norm().cmp(&b.norm()).then(a.cmp(b)));
        Ok(out)
    }
}

impl Ideal {
    pub fn is_zero(&self) -> bool {
        match self {
            Ideal::Rational(n) => *n == 0,
            Ideal::Quadratic(q) => q.is_zero(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Ideal::Rational(n) => *n == 1,
            Ideal::Quadratic(q) => q.is_unit(),
        }
    }

    pub fn norm(&self) -> u64 {
        match self {
            Ideal::Rational(n) => *n,
            Ideal::Quadratic(q) => q.norm() as u64,
        }
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        match (self, other) {
            (Ideal::Rational(a), Ideal::Rational(b)) => Ideal::Rational(a * b),
            (Ideal::Quadratic(a), Ideal::Quadratic(b)) => Ideal::Quadratic(a.mul(b)),
            _ => panic!("ideals from different fields"),
        }
    }

    /// `gcd(self, other) = self + other`; `gcd(0, n) = n`.
    pub fn gcd(&self, other: &Ideal) -> Ideal {
        match (self, other) {
            (Ideal::Rational(a), Ideal::Rational(b)) => Ideal::Rational(a.gcd(b)),
            (Ideal::Quadratic(a), Ideal::Quadratic(b)) => {
                if a.is_zero() {
                    *other
                } else if b.is_zero() {
                    *self
                } else {
                    Ideal::Quadratic(a.add(b))
                }
            }
            _ => panic!("ideals from different fields"),
        }
    }

    /// `self | other`.
    pub fn divides(&self, other: &Ideal) -> bool {
        match (self, other) {
            (Ideal::Rational(a), Ideal::Rational(b)) => {
                if *a == 0 {
                    *b == 0
                } else {
                    b % a == 0
                }
            }
            (Ideal::Quadratic(a), Ideal::Quadratic(b)) => b.is_contained_in(a),
            _ => panic!("ideals from different fields"),
        }
    }

    pub fn div_exact(&self, other: &Ideal) -> Option<Ideal> {
        match (self, other) {
            (Ideal::Rational(a), Ideal::Rational(b)) => {
                if *b != 0 && a % b == 0 {
                    Some(Ideal::Rational(a / b))
                } else {
                    None
                }
            }
            (Ideal::Quadratic(a), Ideal::Quadratic(b)) => a.div_exact(b).map(Ideal::Quadratic),
            _ => None,
        }
    }

    pub fn is_coprime(&self, other: &Ideal) -> bool {
        self.gcd(other).is_unit()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Rational(n) => write!(f, "{n}"),
            Ideal::Quadratic(q) => write!(f, "[[{},{}],[0,{}]]", q.a, q.b, q.c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> QuadraticField {
        QuadraticField::new(5).unwrap()
    }

    #[test]
    fn units() {
        assert_eq!(q5().fundamental_unit(), QuadInt { a: 0, b: 1 });
        let f3 = QuadraticField::new(12).unwrap();
        // 2 + sqrt 3 = 2 + w
        assert_eq!(f3.fundamental_unit(), QuadInt { a: 2, b: 1 });
        let f13 = QuadraticField::new(13).unwrap();
        assert_eq!(f13.norm(f13.fundamental_unit()), -1);
    }

    #[test]
    fn splitting() {
        let f = q5();
        let bf = BaseField::Quadratic(f);
        let fac = bf.factor_ideal(&bf.ideal_from_int(11)).unwrap();
        assert_eq!(fac.len(), 2);
        let fac = bf.factor_ideal(&bf.ideal_from_int(2)).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0.norm, 4);
        let fac = bf.factor_ideal(&bf.ideal_from_int(20)).unwrap();
        assert_eq!(fac.iter().map(|(p, e)| p.norm.pow(*e)).product::<u64>(), 400);
    }

    #[test]
    fn narrow_classes() {
        let d5 = BaseField::parse("5").unwrap().narrow_class_data(None).unwrap();
        assert_eq!((d5.h, d5.h_plus, d5.epsilon_norm), (1, 1, -1));
        let d3 = BaseField::parse("D12").unwrap().narrow_class_data(None).unwrap();
        assert_eq!((d3.h, d3.h_plus, d3.epsilon_norm), (1, 2, 1));
        assert_eq!(d3.t_reps.len(), 2);
        let d10 = BaseField::parse("40").unwrap().narrow_class_data(None).unwrap();
        assert_eq!((d10.h, d10.h_plus), (2, 2));
    }

    #[test]
    fn ray_residues() {
        let bq = BaseField::Rational;
        assert_eq!(bq.ray_residue_size(&Ideal::Rational(1), &Ideal::Rational(5)).unwrap(), 4);
        assert_eq!(bq.ray_residue_size(&Ideal::Rational(1), &Ideal::Rational(1)).unwrap(), 1);
        let b5 = BaseField::parse("5").unwrap();
        let two = b5.ideal_from_int(2);
        assert_eq!(b5.ray_residue_size(&b5.unit_ideal(), &two).unwrap(), 1);
    }

    #[test]
    fn unit_solutions() {
        let bq = BaseField::Rational;
        let t = |m, n| bq.unit_solution_exists(&Ideal::Rational(m), &Ideal::Rational(n)).unwrap();
        assert!(t(1, 2) && t(2, 4) && t(1, 1));
        assert!(!t(1, 3) && !t(1, 4));
        let b3 = BaseField::parse("12").unwrap();
        let n = b3.ideal_from_int(2);
        assert!(!b3.unit_solution_exists(&b3.unit_ideal(), &n).unwrap());
    }

    #[test]
    fn principal_generators() {
        let f = q5();
        let p = f.primes_above(11)[0];
        let Ideal::Quadratic(q) = p.ideal else { panic!() };
        let g = f.principal_generator(&q).unwrap();
        assert_eq!(f.norm(g).abs(), 11);
        assert_eq!(f.principal(g), q);
    }
}
