//! Eisenstein series over `Q` as labelled objects.
//!
//! `E_k(eta, psi)` has coefficients `c(n) = sum_{r | n} eta(n/r) psi(r) r^(k-1)`, with
//! characters taken at their own moduli (so imprimitive characters vanish on the
//! extra primes). `E | t` is the series `f(tz)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::characters::{primitive_characters, DirichletCharacter};
use crate::constant_terms;
use crate::cusps::{self, Mat2};
use crate::error::{hyp, Result};
use crate::exact_arith::{rat_int, CyclotomicNumber, Rational};
use crate::intmath::{divisors, gcd, lcm, prime_divisors, radical};
use crate::base_field::{BaseField, Ideal};

/// `E_k(eta, psi) | raise`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinLabel {
    pub eta: DirichletCharacter,
    pub psi: DirichletCharacter,
    pub k: u32,
    pub raise: u64,
}

impl EisensteinLabel {
    /// Checks the parity condition `(eta psi)(-1) = (-1)^k`.
    pub fn new(eta: DirichletCharacter, psi: DirichletCharacter, k: u32, raise: u64) -> Result<Self> {
        if k == 0 || raise == 0 {
            return hyp("weight and level-raising index must be positive");
        }
        if (u32::from(eta.signature()) + u32::from(psi.signature()) + k) % 2 != 0 {
            return hyp(alloc::format!("eta psi must have parity (-1)^{k}"));
        }
        Ok(EisensteinLabel { eta, psi, k, raise })
    }

    /// The smallest level containing the series: `mod(eta) mod(psi) raise`.
    pub fn level(&self) -> u64 {
        self.eta.modulus() * self.psi.modulus() * self.raise
    }

    /// Over `Q` in weight 2 the trivial-character series with `psi` of modulus 1
    /// are not holomorphic (they involve `E_2` with a non-cancelling `1/y` term).
    pub fn is_nonholomorphic(&self) -> bool {
        self.k == 2 && self.eta.conductor() == 1 && self.psi.conductor() == 1 && self.psi.modulus() == 1
    }

    /// Reject the nonholomorphic weight-2 series and levels not divisible by the label.
    pub fn check(&self, level: Option<u64>) -> Result<()> {
        if self.is_nonholomorphic() {
            return hyp("E_2 with trivial characters and psi of modulus 1 is excluded over Q (not holomorphic)");
        }
        if let Some(n) = level {
            if n % self.level() != 0 {
                return hyp(alloc::format!("label {self} does not have level dividing {n}"));
            }
        }
        Ok(())
    }

    /// Field order in which the coefficients live.
    pub fn value_order(&self) -> u32 {
        lcm(u64::from(self.eta.order()), u64::from(self.psi.order())) as u32
    }

    /// `c(n)` for `n >= 1`.
    pub fn coefficient(&self, n: u64) -> CyclotomicNumber {
        let order = self.value_order();
        if n % self.raise != 0 {
            return CyclotomicNumber::zero(order);
        }
        let n = n / self.raise;
        let (oe, op) = (order / self.eta.order(), order / self.psi.order());
        let mut poly = vec![Rational::zero(); order as usize];
        for r in divisors(n) {
            let (Some(e1), Some(e2)) = (self.eta.exponent((n / r) as i64), self.psi.exponent(r as i64)) else {
                continue;
            };
            let e = ((e1 * oe + e2 * op) % order) as usize;
            poly[e] += Rational::from_integer(num_bigint::BigInt::from(r).pow(self.k - 1));
        }
        CyclotomicNumber::from_poly(order, &poly)
    }
}

impl fmt::Display for EisensteinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &DirichletCharacter| {
            if c.is_trivial() {
                alloc::format!("1_{}", c.modulus())
            } else {
                c.name()
            }
        };
        write!(f, "E{}({},{})", self.k, show(&self.eta), show(&self.psi))?;
        if self.raise > 1 {
            write!(f, "|{}", self.raise)?;
        }
        Ok(())
    }
}

/// An element of an Eisenstein basis: a series, or over `Q` in weight 2 the
/// holomorphic difference `D_t = E_2 - t E_2 | t` replacing the trivial family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    Series(EisensteinLabel),
    Difference { t: u64 },
}

impl BasisElement {
    pub fn weight(&self) -> u32 {
        match self {
            BasisElement::Series(l) => l.k,
            BasisElement::Difference { .. } => 2,
        }
    }

    /// Expansion as a rational combination of series labels. For `D_t` the
    /// summands are individually nonholomorphic; only the combination is a form.
    pub fn terms(&self) -> Vec<(Rational, EisensteinLabel)> {
        match self {
            BasisElement::Series(l) => vec![(Rational::one(), l.clone())],
            BasisElement::Difference { t } => {
                let one = DirichletCharacter::trivial(1);
                let e = |raise| EisensteinLabel { eta: one.clone(), psi: one.clone(), k: 2, raise };
                vec![(Rational::one(), e(1)), (rat_int(-(*t as i64)), e(*t))]
            }
        }
    }

    /// Constant terms of `D_t` are computed by the regularized convention.
    pub fn is_regularized(&self) -> bool {
        matches!(self, BasisElement::Difference { .. })
    }

    pub fn coefficient(&self, n: u64) -> CyclotomicNumber {
        match self {
            BasisElement::Series(l) => l.coefficient(n),
            BasisElement::Difference { t } => {
                let s = |m: u64| divisors(m).into_iter().sum::<u64>() as i64;
                let v = s(n) - if n % t == 0 { *t as i64 * s(n / t) } else { 0 };
                CyclotomicNumber::from_integer(1, v)
            }
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Series(l) => write!(f, "{l}"),
            BasisElement::Difference { t } => write!(f, "D_{t}"),
        }
    }
}

/// The q-expansion `c(0), c(1), ..., c(bound)` at the cusp infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub constant: CyclotomicNumber,
    /// `coeffs[n - 1] = c(n)`.
    pub coeffs: Vec<CyclotomicNumber>,
}

impl QExpansion {
    pub fn coefficient(&self, n: u64) -> &CyclotomicNumber {
        &self.coeffs[(n - 1) as usize]
    }
}

/// q-expansion of a basis element up to `bound`.
pub fn qexp(element: &BasisElement, bound: u64) -> Result<QExpansion> {
    if let BasisElement::Series(l) = element {
        l.check(None)?;
    }
    let constant = constant_terms::constant_term(element, &Mat2::identity())?;
    let coeffs = (1..=bound).map(|n| element.coefficient(n)).collect();
    Ok(QExpansion { constant, coeffs })
}

/// Primitive characters of conductor dividing `n`, ordered by (conductor, index).
fn primitive_up_to(n: u64) -> Vec<DirichletCharacter> {
    divisors(n).into_iter().flat_map(primitive_characters).collect()
}

/// The defining basis `{E_k(eta, psi) | t : eta, psi primitive, cond(eta) cond(psi) t | N}`.
///
/// Weight 1 keeps one of `E_1(eta, psi) | t = E_1(psi, eta) | t`. Weight 2 over `Q`
/// replaces `E_2(1, 1) | t` (`t | N`) by `D_t` for `t | N`, `t > 1`.
pub fn defining_basis(n: u64, k: u32) -> Result<Vec<BasisElement>> {
    if n == 0 || k == 0 {
        return hyp("level and weight must be positive");
    }
    let chars = primitive_up_to(n);
    let mut out = Vec::new();
    for eta in &chars {
        for psi in &chars {
            let ab = eta.modulus() * psi.modulus();
            if n % ab != 0 || (u32::from(eta.signature()) + u32::from(psi.signature()) + k) % 2 != 0 {
                continue;
            }
            if k == 1 && (psi.modulus(), psi.index()) < (eta.modulus(), eta.index()) {
                continue;
            }
            if k == 2 && eta.is_trivial() && psi.is_trivial() {
                continue;
            }
            for t in divisors(n / ab) {
                out.push(BasisElement::Series(EisensteinLabel { eta: eta.clone(), psi: psi.clone(), k, raise: t }));
            }
        }
    }
    if k == 2 {
        out.extend(divisors(n).into_iter().filter(|&t| t > 1).map(|t| BasisElement::Difference { t }));
    }
    Ok(out)
}

/// `E_k(eta_r, psi_s) | c` with `eta`, `psi` primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanLabel {
    pub eta: DirichletCharacter,
    pub psi: DirichletCharacter,
    pub r: u64,
    pub s: u64,
    pub c: u64,
    pub k: u32,
}

impl JordanLabel {
    /// The underlying series with `eta` viewed modulo `a r` and `psi` modulo `b s`.
    pub fn series(&self) -> EisensteinLabel {
        let eta = self.eta.induce(self.eta.modulus() * self.r).expect("multiple");
        let psi = self.psi.induce(self.psi.modulus() * self.s).expect("multiple");
        EisensteinLabel { eta, psi, k: self.k, raise: self.c }
    }

    pub fn element(&self) -> BasisElement {
        BasisElement::Series(self.series())
    }
}

impl fmt::Display for JordanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.series())
    }
}

fn squarefree_divisors(n: u64) -> Vec<u64> {
    divisors(radical(n))
}

/// The Jordan-adapted basis:
/// `eta, psi` primitive of conductors `a, b`; `r, s` squarefree with
/// `gcd(a, r) = gcd(b, s) = 1`; every prime of `N` divides `a b r s`; `c` is
/// supported on primes of `gcd(a r, b s)`; `a b r s c | N`.
///
/// Weight 1 keeps one label of each swapped pair; weight 2 over `Q` drops the
/// nonholomorphic `eta = psi = 1, s = 1` label.
pub fn jordan_basis(n: u64, k: u32) -> Result<Vec<JordanLabel>> {
    if n == 0 || k == 0 {
        return hyp("level and weight must be positive");
    }
    let chars = primitive_up_to(n);
    let rad = radical(n);
    let mut out = Vec::new();
    for eta in &chars {
        for psi in &chars {
            let (a, b) = (eta.modulus(), psi.modulus());
            if n % (a * b) != 0 || (u32::from(eta.signature()) + u32::from(psi.signature()) + k) % 2 != 0 {
                continue;
            }
            let m = n / (a * b);
            for r in squarefree_divisors(m).into_iter().filter(|&r| gcd(a, r) == 1) {
                for s in squarefree_divisors(m / r).into_iter().filter(|&s| gcd(b, s) == 1) {
                    if (a * b * r * s) % rad != 0 {
                        continue;
                    }
                    if k == 2 && eta.is_trivial() && psi.is_trivial() && s == 1 {
                        continue;
                    }
                    let g = gcd(a * r, b * s);
                    let rest = m / (r * s);
                    for c in divisors(rest).into_iter().filter(|&c| prime_divisors(c).iter().all(|p| g % p == 0)) {
                        let label = JordanLabel { eta: eta.clone(), psi: psi.clone(), r, s, c, k };
                        if k == 1 {
                            let key = |x: &DirichletCharacter, y: u64| (x.modulus(), x.index(), y);
                            if key(psi, s) < key(eta, r) {
                                continue;
                            }
                        }
                        out.push(label);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Result of comparing the size of the basis with the cusp count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionCheck {
    pub basis_count: u64,
    /// `#cusps` (even `k`), `#cusps*` (odd `k`), minus 1 at `k = 2` over `Q`.
    pub target: u64,
    pub equal: bool,
}

pub fn dimension_check(n: u64, k: u32) -> Result<DimensionCheck> {
    if k < 2 {
        return hyp("the dimension formula needs k >= 2");
    }
    let q = BaseField::Rational;
    let lvl = Ideal::Rational(n);
    let cusps = if k % 2 == 0 { cusps::cusp_count(&q, &lvl)? } else { cusps::admissible_cusp_count(&q, &lvl)? };
    let target = if k == 2 { cusps - 1 } else { cusps };
    let basis_count = defining_basis(n, k)?.len() as u64;
    Ok(DimensionCheck { basis_count, target, equal: basis_count == target })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn chi(s: &str) -> DirichletCharacter {
        DirichletCharacter::parse(s).unwrap()
    }

    #[test]
    fn e4_and_weight_one_spot_values() {
        let one = DirichletCharacter::trivial(1);
        let e4 = BasisElement::Series(EisensteinLabel::new(one.clone(), one.clone(), 4, 1).unwrap());
        let q = qexp(&e4, 6).unwrap();
        assert_eq!(*q.coefficient(6), CyclotomicNumber::from_integer(1, 252));
        assert_eq!(q.constant, CyclotomicNumber::from_rational(1, &rat(1, 240)));
        let e1 = BasisElement::Series(EisensteinLabel::new(one, chi("chi4"), 1, 1).unwrap());
        let q = qexp(&e1, 5).unwrap();
        assert_eq!(*q.coefficient(5), CyclotomicNumber::from_integer(1, 2));
        assert_eq!(*q.coefficient(1), CyclotomicNumber::one(1));
        assert_eq!(q.constant, CyclotomicNumber::from_rational(1, &rat(1, 4)));
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(defining_basis(5, 3).unwrap().len(), 4);
        assert_eq!(defining_basis(4, 3).unwrap().len(), 2);
        assert!(defining_basis(1, 2).unwrap().is_empty());
        assert_eq!(dimension_check(4, 3).unwrap(), DimensionCheck { basis_count: 2, target: 2, equal: true });
        assert!(dimension_check(1, 4).unwrap().equal);
        for n in 1..=30 {
            for k in 2..=5 {
                let d = defining_basis(n, k).unwrap().len();
                let j = jordan_basis(n, k).unwrap().len();
                assert_eq!(d, j, "N={n} k={k}");
                assert!(dimension_check(n, k).unwrap().equal, "N={n} k={k}");
            }
        }
    }

    #[test]
    fn nonholomorphic_label_is_refused() {
        let one = DirichletCharacter::trivial(1);
        let e2 = EisensteinLabel::new(one.clone(), one, 2, 1).unwrap();
        assert!(qexp(&BasisElement::Series(e2), 3).is_err());
    }
}
