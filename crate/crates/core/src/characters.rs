//! Dirichlet characters, Gauss sums and special L-values over `Q`, and the
//! table through which real quadratic L-values enter.
//!
//! A character modulo `N` is fixed by its values on the standard generators
//! of `(Z/N)^*`: for each prime power `p^e || N` in increasing order, the
//! least primitive root modulo `p^e` when `p` is odd, `-1` when `p^e = 4`,
//! and `-1, 5` when `p = 2, e >= 3`, each lifted by CRT to be `1` at the
//! other prime powers. The `j`-th character modulo `N` (label `chiN.j`) has
//! exponent vector given by `j` in mixed radix, first generator most
//! significant. Values are stored as exponents of `zeta_order`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{hyp, Error, Result};
use crate::exact_arith::{rat_int, CyclotomicNumber, Rational};
use crate::intmath::{self, crt, divisors, factorize, gcd, lcm, primitive_root_prime_power};

/// Generators of `(Z/N)^*` with their orders.
pub fn unit_group_generators(n: u64) -> Vec<(u64, u64)> {
    let fac = factorize(n);
    let mut gens = Vec::new();
    let lift = |r: u64, pe: u64| -> u64 {
        let parts: Vec<(u64, u64)> = fac
            .iter()
            .map(|&(q, f)| {
                let qf = q.pow(f);
                if qf == pe {
                    (r % qf, qf)
                } else {
                    (1 % qf, qf)
                }
            })
            .collect();
        crt(&parts)
    };
    for &(p, e) in &fac {
        let pe = p.pow(e);
        if p == 2 {
            if e >= 2 {
                gens.push((lift(pe - 1, pe), 2));
            }
            if e >= 3 {
                gens.push((lift(5, pe), 1u64 << (e - 2)));
            }
        } else {
            gens.push((lift(primitive_root_prime_power(p, e), pe), (p - 1) * p.pow(e - 1)));
        }
    }
    gens
}

/// Discrete logarithms of every unit modulo `n` on the standard generators.
fn log_table(n: u64) -> Vec<Option<Vec<u64>>> {
    let gens = unit_group_generators(n);
    let mut table: Vec<Option<Vec<u64>>> = vec![None; n as usize];
    let mut exps = vec![0u64; gens.len()];
    loop {
        let mut x = 1 % n;
        for (i, &(g, _)) in gens.iter().enumerate() {
            x = intmath::mul_mod(x, intmath::pow_mod(g, exps[i], n), n);
        }
        table[x as usize] = Some(exps.clone());
        // Odometer increment.
        let mut i = gens.len();
        loop {
            if i == 0 {
                return table;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < gens[i].1 {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// A Dirichlet character, stored as a value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u32,
    /// `table[x]` is the exponent `e` with `chi(x) = zeta_order^e`, or `None` if `gcd(x, N) > 1`.
    table: Vec<Option<u32>>,
}

/// Identifying data of a character.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterLabel {
    pub modulus: u64,
    pub conductor: u64,
    /// Exponents on the standard generators.
    pub exponents: Vec<u64>,
    /// `0` for even, `1` for odd.
    pub signature: u8,
    pub index: u64,
}

impl DirichletCharacter {
    fn from_exponent_fn(modulus: u64, order: u64, f: impl Fn(u64) -> Option<u64>) -> Self {
        let raw: Vec<Option<u64>> = (0..modulus.max(1)).map(|x| f(x).map(|e| e % order)).collect();
        // Shrink to the true order.
        let g = raw.iter().flatten().fold(order, |g, &e| gcd(g, e));
        let order = order / g;
        let table = raw.into_iter().map(|e| e.map(|e| (e / g) as u32)).collect();
        DirichletCharacter { modulus, order: order as u32, table }
    }

    pub fn trivial(modulus: u64) -> Self {
        assert!(modulus >= 1);
        Self::from_exponent_fn(modulus, 1, |x| (gcd(x, modulus) == 1).then_some(0))
    }

    /// The `j`-th character modulo `n` in the standard enumeration.
    pub fn from_index(n: u64, j: u64) -> Result<Self> {
        if n == 0 {
            return hyp("modulus must be positive");
        }
        let gens = unit_group_generators(n);
        let total: u64 = gens.iter().map(|g| g.1).product();
        if j >= total {
            return hyp(alloc::format!("there are only {total} characters modulo {n}"));
        }
        let mut exps = vec![0u64; gens.len()];
        let mut r = j;
        for i in (0..gens.len()).rev() {
            exps[i] = r % gens[i].1;
            r /= gens[i].1;
        }
        Ok(Self::from_exponents(n, &exps))
    }

    /// Character with `chi(g_i) = zeta_{ord_i}^{exps_i}` on the standard generators.
    pub fn from_exponents(n: u64, exps: &[u64]) -> Self {
        let gens = unit_group_generators(n);
        assert_eq!(gens.len(), exps.len(), "exponent vector length");
        let l = gens.iter().fold(1, |a, g| lcm(a, g.1));
        let logs = log_table(n);
        Self::from_exponent_fn(n, l, |x| {
            logs[x as usize].as_ref().map(|lg| {
                lg.iter()
                    .zip(gens.iter())
                    .zip(exps)
                    .map(|((&li, g), &ji)| li * ji % g.1 * (l / g.1))
                    .sum::<u64>()
            })
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of the character; values are `order`-th roots of unity.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Exponent of `chi(x)` as a power of `zeta_order`, or `None` when `gcd(x, N) > 1`.
    pub fn exponent(&self, x: i64) -> Option<u32> {
        self.table[intmath::modulo(x, self.modulus) as usize]
    }

    /// `chi(x)` as a cyclotomic number (zero off the units).
    pub fn value(&self, x: i64) -> CyclotomicNumber {
        match self.exponent(x) {
            None => CyclotomicNumber::zero(self.order),
            Some(e) => CyclotomicNumber::root_of_unity(self.order, i64::from(e)),
        }
    }

    /// `chi` on the ideal `(a)`, `a >= 0`: the value at the positive generator.
    pub fn on_ideal(&self, a: u64) -> CyclotomicNumber {
        self.value(a as i64)
    }

    /// `0` if `chi(-1) = 1`, `1` if `chi(-1) = -1`.
    pub fn signature(&self) -> u8 {
        match self.exponent(-1) {
            Some(0) => 0,
            Some(_) => 1,
            None => unreachable!("-1 is a unit"),
        }
    }

    pub fn parity_sign(&self) -> i64 {
        if self.signature() == 0 {
            1
        } else {
            -1
        }
    }

    pub fn exponents(&self) -> Vec<u64> {
        let gens = unit_group_generators(self.modulus);
        gens.iter()
            .map(|&(g, ord)| {
                let e = u64::from(self.exponent(g as i64).expect("generator is a unit"));
                // zeta_order^e = zeta_ord^j  =>  j = e ord / order
                e * ord / u64::from(self.order)
            })
            .collect()
    }

    /// Position in the enumeration of characters modulo `N`.
    pub fn index(&self) -> u64 {
        let gens = unit_group_generators(self.modulus);
        self.exponents().iter().zip(gens.iter()).fold(0, |acc, (&j, g)| acc * g.1 + j)
    }

    pub fn label(&self) -> CharacterLabel {
        CharacterLabel {
            modulus: self.modulus,
            conductor: self.conductor(),
            exponents: self.exponents(),
            signature: self.signature(),
            index: self.index(),
        }
    }

    /// `chiN.j`, or `1` for the character modulo 1.
    pub fn name(&self) -> String {
        if self.modulus == 1 {
            String::from("1")
        } else {
            alloc::format!("chi{}.{}", self.modulus, self.index())
        }
    }

    /// Parse `1`, `1_N` (trivial mod `N`), `chiN.j`, or `chiN` (the unique primitive
    /// quadratic character of conductor `N`).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "1" {
            return Ok(Self::trivial(1));
        }
        if let Some(n) = t.strip_prefix("1_") {
            return match n.parse::<u64>() {
                Ok(n) if n > 0 => Ok(Self::trivial(n)),
                _ => Err(Error::Parse(alloc::format!("bad character label {s:?}"))),
            };
        }
        let body = t
            .strip_prefix("chi")
            .ok_or_else(|| Error::Parse(alloc::format!("bad character label {s:?}")))?;
        let bad = || Error::Parse(alloc::format!("bad character label {s:?}"));
        match body.split_once('.') {
            Some((n, j)) => {
                let n: u64 = n.parse().map_err(|_| bad())?;
                let j: u64 = j.parse().map_err(|_| bad())?;
                Self::from_index(n, j)
            }
            None => {
                let n: u64 = body.parse().map_err(|_| bad())?;
                let cands: Vec<Self> = enumerate_characters(n, None)
                    .into_iter()
                    .filter(|c| c.order == 2 && c.conductor() == n)
                    .collect();
                match cands.len() {
                    1 => Ok(cands.into_iter().next().unwrap()),
                    0 => hyp(alloc::format!("no primitive quadratic character of conductor {n}")),
                    _ => hyp(alloc::format!("{s} is ambiguous; use chi{n}.j")),
                }
            }
        }
    }

    /// The character `x -> chi(x)` viewed modulo a multiple `m` of the modulus.
    pub fn induce(&self, m: u64) -> Result<Self> {
        if m == 0 || m % self.modulus != 0 {
            return hyp(alloc::format!("{} does not divide {m}", self.modulus));
        }
        Ok(Self::from_exponent_fn(m, u64::from(self.order), |x| {
            if gcd(x, m) == 1 {
                self.table[(x % self.modulus) as usize].map(u64::from)
            } else {
                None
            }
        }))
    }

    /// Product character modulo `lcm` of the moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.modulus, other.modulus);
        let o = lcm(u64::from(self.order), u64::from(other.order));
        let (s1, s2) = (o / u64::from(self.order), o / u64::from(other.order));
        Self::from_exponent_fn(m, o, |x| {
            if gcd(x, m) != 1 {
                return None;
            }
            let a = self.table[(x % self.modulus) as usize]?;
            let b = other.table[(x % other.modulus) as usize]?;
            Some(u64::from(a) * s1 + u64::from(b) * s2)
        })
    }

    pub fn inverse(&self) -> Self {
        let o = u64::from(self.order);
        Self::from_exponent_fn(self.modulus, o, |x| {
            self.table[x as usize].map(|e| (o - u64::from(e) % o) % o)
        })
    }

    /// `chi * other^-1`.
    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    /// Least `f | N` through which the character factors.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus;
        for f in divisors(n) {
            let ok = (0..n)
                .filter(|&x| gcd(x, n) == 1 && x % f == 1 % f)
                .all(|x| self.table[x as usize] == Some(0));
            if ok {
                return f;
            }
        }
        n
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Self {
        let f = self.conductor();
        let n = self.modulus;
        Self::from_exponent_fn(f, u64::from(self.order), |y| {
            if gcd(y, f) != 1 {
                return None;
            }
            let x = (0..).map(|t| y + t * f).find(|&x| gcd(x, n) == 1).expect("lift exists");
            self.table[(x % n) as usize].map(u64::from)
        })
    }

    /// Gauss sum of the primitive character attached to `self`:
    /// `sum_{j mod f, gcd(j, f) = 1} chi(j) zeta_f^j`.
    pub fn gauss_sum(&self) -> CyclotomicNumber {
        let p = self.primitive();
        let f = p.modulus;
        let o = u64::from(p.order);
        let m = lcm(f, o);
        let mut poly = vec![Rational::zero(); m as usize];
        for j in 0..f {
            if let Some(e) = p.table[j as usize] {
                let k = (u64::from(e) * (m / o) + j * (m / f)) % m;
                poly[k as usize] += Rational::one();
            }
        }
        CyclotomicNumber::from_poly(m as u32, &poly)
    }

    /// `L(chi^0, 1 - k) = -B_{k, chi^0}/k` for the primitive character attached to `self`.
    pub fn l_value(&self, k: u32) -> Result<CyclotomicNumber> {
        if k == 0 {
            return hyp("weight must be positive");
        }
        let p = self.primitive();
        Ok(p.generalized_bernoulli(k).scale(&Rational::new(BigInt::from(-1), BigInt::from(k))))
    }

    /// `B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f)` with `f` the modulus.
    pub fn generalized_bernoulli(&self, k: u32) -> CyclotomicNumber {
        let f = self.modulus;
        let bern = bernoulli_numbers(k as usize);
        let mut poly = vec![Rational::zero(); self.order as usize];
        for a in 1..=f {
            if let Some(e) = self.table[(a % f) as usize] {
                let x = Rational::new(BigInt::from(a), BigInt::from(f));
                poly[e as usize] += bernoulli_poly_with(&bern, k as usize, &x);
            }
        }
        let scale = Rational::from_integer(BigInt::from(f).pow(k - 1));
        CyclotomicNumber::from_poly(self.order, &poly).scale(&scale)
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// All characters modulo `n`, in index order, optionally filtered by signature.
pub fn enumerate_characters(n: u64, signature: Option<u8>) -> Vec<DirichletCharacter> {
    let total: u64 = unit_group_generators(n).iter().map(|g| g.1).product();
    (0..total)
        .map(|j| DirichletCharacter::from_index(n, j).expect("index in range"))
        .filter(|c| signature.is_none_or(|s| c.signature() == s))
        .collect()
}

/// Primitive characters of conductor exactly `f`, in index order.
pub fn primitive_characters(f: u64) -> Vec<DirichletCharacter> {
    enumerate_characters(f, None).into_iter().filter(|c| c.is_primitive()).collect()
}

/// `B_0, ..., B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut s = Rational::zero();
        let mut c = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            s += bj * Rational::from_integer(c.clone());
            c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn bernoulli_poly_with(b: &[Rational], k: usize, x: &Rational) -> Rational {
    let mut s = Rational::zero();
    let mut c = BigInt::one();
    let mut xp = Rational::one();
    // sum_j C(k, j) B_j x^(k - j), accumulated from j = k downwards.
    let mut terms = Vec::with_capacity(k + 1);
    for j in 0..=k {
        terms.push((j, c.clone()));
        c = c * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    for &(j, ref cj) in terms.iter().rev() {
        s += &b[j] * Rational::from_integer(cj.clone()) * &xp;
        xp *= x;
    }
    s
}

/// Bernoulli polynomial `B_k(x)`.
pub fn bernoulli_poly(k: u32, x: &Rational) -> Rational {
    bernoulli_poly_with(&bernoulli_numbers(k as usize), k as usize, x)
}

/// Real quadratic L-values `L(chi, 1 - k)` supplied from outside, keyed by
/// `(D, character label, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LValueTable {
    entries: BTreeMap<(i64, String, u32), CyclotomicNumber>,
}

impl LValueTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert a value; a differing value under an existing key is an error.
    pub fn insert(&mut self, d: i64, label: &str, k: u32, value: CyclotomicNumber) -> Result<()> {
        let key = (d, String::from(label), k);
        if let Some(old) = self.entries.get(&key) {
            if *old != value {
                return hyp(alloc::format!("conflicting L-values for D={d}, {label}, k={k}"));
            }
            return Ok(());
        }
        self.entries.insert(key, value);
        Ok(())
    }

    pub fn get(&self, d: i64, label: &str, k: u32) -> Result<&CyclotomicNumber> {
        self.entries
            .get(&(d, String::from(label), k))
            .ok_or_else(|| Error::MissingLValue { d, label: String::from(label), k })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, String, u32), &CyclotomicNumber)> {
        self.entries.iter()
    }
}

/// `zeta(1 - k) = -B_k / k` as a rational, with `zeta(0) = -1/2`.
pub fn zeta_value(k: u32) -> Rational {
    let b = bernoulli_poly(k, &Rational::one());
    -b / rat_int(i64::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn counts_and_labels() {
        assert_eq!(enumerate_characters(5, None).len(), 4);
        assert_eq!(enumerate_characters(4, Some(1)).len(), 1);
        assert_eq!(enumerate_characters(1, None).len(), 1);
        let c = DirichletCharacter::parse("chi4").unwrap();
        assert_eq!(c.name(), "chi4.1");
        assert_eq!(c.signature(), 1);
        assert_eq!(DirichletCharacter::parse(&c.name()).unwrap(), c);
        assert!(DirichletCharacter::parse("chi8").is_err());
    }

    #[test]
    fn conductors() {
        let chi4 = DirichletCharacter::parse("chi4").unwrap();
        let at12 = chi4.induce(12).unwrap();
        assert_eq!(at12.conductor(), 4);
        assert_eq!(at12.primitive(), chi4);
    }

    #[test]
    fn gauss_sums() {
        let chi4 = DirichletCharacter::parse("chi4").unwrap();
        assert_eq!(chi4.gauss_sum(), CyclotomicNumber::root_of_unity(4, 1).scale_int(2));
        let chi3 = DirichletCharacter::parse("chi3").unwrap();
        let expect = &CyclotomicNumber::root_of_unity(3, 1) - &CyclotomicNumber::root_of_unity(3, 2);
        assert_eq!(chi3.gauss_sum(), expect);
    }

    #[test]
    fn l_values() {
        let one = DirichletCharacter::trivial(1);
        let r = |c: &DirichletCharacter, k| c.l_value(k).unwrap().to_rational().unwrap();
        assert_eq!(r(&one, 2), rat(-1, 12));
        assert_eq!(r(&one, 4), rat(1, 120));
        assert_eq!(r(&one, 1), rat(-1, 2));
        let chi4 = DirichletCharacter::parse("chi4").unwrap();
        assert_eq!(r(&chi4, 1), rat(1, 2));
        assert_eq!(r(&chi4, 3), rat(-1, 2));
        assert_eq!(zeta_value(2), rat(-1, 12));
    }

    #[test]
    fn lvalue_table_conflicts() {
        let mut t = LValueTable::new();
        let v = CyclotomicNumber::from_integer(1, 2);
        t.insert(5, "1", 2, v.clone()).unwrap();
        t.insert(5, "1", 2, v).unwrap();
        assert!(t.insert(5, "1", 2, CyclotomicNumber::from_integer(1, 3)).is_err());
        assert!(matches!(t.get(5, "1", 4), Err(Error::MissingLValue { .. })));
    }
}
