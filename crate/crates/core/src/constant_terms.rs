//! Normalized constant terms of Eisenstein series at arbitrary cusps over `Q`.
//!
//! For a pair `A` with first column `(alpha, gamma) = b (a', c')`, `gcd(a', c') = 1`,
//! `b > 0`, the invariants are `b_A = (b)`, `a_A = (a')`, `c_A = (c')`. Everything
//! below depends on `A` only through this decomposition.
//!
//! Three evaluators are provided:
//! * [`eval_primitive`]: the closed formula for `E_k(chi1, chi2)` with `chi2` primitive;
//! * [`eval_raised`]: the closed formula for `E_k(chi, psi) | m`;
//! * [`series_constant_term`]: the production evaluator, which reduces any label to
//!   primitive characters at level one by transport along `diag(t, 1)` and the
//!   q-expansion identities, then applies [`eval_primitive`].

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::base_field::{BaseField, Ideal};
use crate::characters::DirichletCharacter;
use crate::cusps::{self, primitive_column, CuspClass, CuspLabel, Mat2};
use crate::eisenstein::{BasisElement, EisensteinLabel};
use crate::error::{hyp, Result};
use crate::exact_arith::{rat, rat_int, rat_pow, CyclotomicNumber, Rational};
use crate::intmath::{gcd, moebius, prime_divisors, radical};
use crate::linalg::Matrix;

/// Whether Gauss sums are kept. With [`GaussMode::Omit`] the factor
/// `tau(prim(chi1 chi2^-1)) tau(chi2^0)` is dropped; for `k >= 2` it is constant
/// along every reduction of a label, so columns are rescaled by a non-zero scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussMode {
    Full,
    Omit,
}

/// First column of a pair written as `b (alpha, gamma)` with coprime integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub b: Rational,
    pub alpha: i64,
    pub gamma: i64,
}

impl Column {
    pub fn of(a: &Mat2) -> Result<Self> {
        let (b, alpha, gamma) = primitive_column(&a.a, &a.c)?;
        Ok(Column { b, alpha, gamma })
    }

    /// `c_A` as a non-negative integer (`0` for the zero ideal).
    pub fn c_ideal(&self) -> u64 {
        self.gamma.unsigned_abs()
    }
}

/// `[A] in C_inf(b, n)`, i.e. `b | c_A`.
pub fn delta_inf(b: u64, col: &Column) -> bool {
    col.c_ideal() % b == 0
}

/// `[A] in C_0(a, n)`, i.e. `gcd(a, c_A) = 1`.
pub fn delta_zero(a: u64, col: &Column) -> bool {
    gcd(a, col.c_ideal()) == 1
}

/// `(J_m, J_m^c)`: primes `q | m` with `[A] in C_0(q, n)` and the complementary primes.
pub fn j_sets(m: u64, col: &Column) -> (Vec<u64>, Vec<u64>) {
    prime_divisors(m).into_iter().partition(|&q| delta_zero(q, col))
}

/// Primes dividing the modulus of `chi` but not its conductor.
fn extra_primes(chi: &DirichletCharacter) -> u64 {
    let f = chi.conductor();
    prime_divisors(chi.modulus()).into_iter().filter(|p| f % p != 0).product()
}

/// `P_A(chi1, chi2, k, S, T)` over `Q`.
pub fn p_value(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    k: u32,
    a: &Mat2,
    s: &[u64],
    t: &[u64],
    mode: GaussMode,
) -> Result<CyclotomicNumber> {
    let col = Column::of(a)?;
    p_value_col(chi1, chi2, k, &col, s, t, mode)
}

fn p_value_col(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    k: u32,
    col: &Column,
    s: &[u64],
    t: &[u64],
    mode: GaussMode,
) -> Result<CyclotomicNumber> {
    let b0 = chi2.conductor();
    let chi2p = chi2.primitive();
    let chi = chi1.div(chi2).primitive();
    let f = chi.modulus();
    // sgn(-gamma)^q1 chi1(c_A / b0) = chi1(-c' / b0) as a Dirichlet character.
    let gamma_term = if col.gamma == 0 {
        if chi1.modulus() != 1 {
            return Ok(CyclotomicNumber::zero(1));
        }
        CyclotomicNumber::one(1)
    } else {
        if col.c_ideal() % b0 != 0 {
            return Ok(CyclotomicNumber::zero(1));
        }
        chi1.value(-col.gamma / b0 as i64)
    };
    // sgn(alpha)^q2 (chi2^0)^-1(a_A) = conj(chi2^0)(a').
    let alpha_term = if col.alpha == 0 {
        if chi2p.modulus() != 1 {
            return Ok(CyclotomicNumber::zero(1));
        }
        CyclotomicNumber::one(1)
    } else {
        chi2p.inverse().value(col.alpha)
    };
    if gamma_term.is_zero() || alpha_term.is_zero() {
        return Ok(CyclotomicNumber::zero(1));
    }
    let chi_inv = chi.inverse();
    let mut v = &gamma_term * &alpha_term;
    v = &v * &chi_inv.l_value(k)?;
    // (1/2) (b0/f)^k chi2(-1) / b0; the chi2(-1) tau(chi2^0)/b0 is 1/tau(chi2^-1).
    let scalar = rat(1, 2) * rat_pow(&rat(b0 as i64, f as i64), i64::from(k))? * rat(chi2.parity_sign(), b0 as i64);
    v = v.scale(&scalar);
    for &q in s {
        let e = &CyclotomicNumber::one(1) - &chi_inv.value(q as i64).scale(&rat_pow(&rat_int(q as i64), i64::from(k) - 1)?);
        v = &v * &e;
    }
    for &q in t {
        let e = &CyclotomicNumber::one(1) - &chi.value(q as i64).scale(&rat_pow(&rat_int(q as i64), -i64::from(k))?);
        v = &v * &e;
    }
    if mode == GaussMode::Full && !v.is_zero() {
        v = &v * &(&chi.gauss_sum() * &chi2p.gauss_sum());
    }
    Ok(v)
}

/// Closed formula for the constant term of `E_k(chi1, chi2)` at `A`, `chi2` primitive.
///
/// `T_{n,f}` is the set of primes dividing `n = mod(chi1) mod(chi2)` but not
/// `f = cond(chi1 chi2^-1)`. In weight 1 the moduli must be coprime.
pub fn eval_primitive(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    k: u32,
    a: &Mat2,
    mode: GaussMode,
) -> Result<CyclotomicNumber> {
    let col = Column::of(a)?;
    primitive_col(chi1, chi2, k, &col, mode)
}

fn primitive_col(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    k: u32,
    col: &Column,
    mode: GaussMode,
) -> Result<CyclotomicNumber> {
    if !chi2.is_primitive() {
        return hyp("primitive formula: chi2 must be primitive");
    }
    let (a, b) = (chi1.modulus(), chi2.modulus());
    let n = a * b;
    let f = chi1.div(chi2).conductor();
    let t: Vec<u64> = prime_divisors(n).into_iter().filter(|q| f % q != 0).collect();
    if k > 1 {
        if !delta_inf(b, col) {
            return Ok(CyclotomicNumber::zero(1));
        }
        return p_value_col(chi1, chi2, k, col, &[], &t, mode);
    }
    if gcd(a, b) != 1 {
        return hyp("weight 1: the moduli of chi1 and chi2 must be coprime");
    }
    if mode == GaussMode::Omit {
        return hyp("weight 1 constant terms need Gauss sums");
    }
    let mut total = CyclotomicNumber::zero(1);
    if delta_zero(a, col) && delta_inf(b, col) {
        total = &total + &p_value_col(chi1, chi2, 1, col, &[], &t, mode)?;
    }
    let a0 = chi1.conductor();
    if delta_inf(a0, col) && delta_zero(b, col) {
        let (j, jc) = j_sets(extra_primes(chi1), col);
        let mut second = p_value_col(chi2, chi1, 1, col, &jc, &[], mode)?;
        for q in j {
            second = second.scale(&(Rational::one() - rat(1, q as i64)));
        }
        total = &total + &second;
    }
    Ok(total)
}

/// Closed formula for the constant term of `E_k(chi, psi) | m` at `A`.
///
/// Hypotheses: `b_1 = mod(psi)/cond(psi)` coprime to `mod(chi)`; `a_1`, `b_1` squarefree
/// and coprime to the conductors; `m` squarefree and coprime to `mod(chi) mod(psi)`;
/// in weight 1 the moduli are coprime. `J^c` denotes the complement of `J`. The `T` set
/// of the main term is `J_{a_1}` together with the primes of `a_0 b_0` prime to
/// `f = cond(chi psi^-1)`; the latter is empty unless `chi` and `psi` share a prime.
pub fn eval_raised(
    chi: &DirichletCharacter,
    psi: &DirichletCharacter,
    k: u32,
    m: u64,
    a: &Mat2,
    mode: GaussMode,
) -> Result<CyclotomicNumber> {
    let col = Column::of(a)?;
    let (am, bm) = (chi.modulus(), psi.modulus());
    let (a0, b0) = (chi.conductor(), psi.conductor());
    let (a1, b1) = (am / a0, bm / b0);
    if gcd(b1, am) != 1 {
        return hyp("raised formula: gcd(b_1, a) must be 1");
    }
    if radical(a1) != a1 || gcd(a0, a1) != 1 || radical(b1) != b1 || gcd(b0, b1) != 1 {
        return hyp("raised formula: a_1, b_1 must be squarefree and coprime to the conductors");
    }
    if m == 0 || radical(m) != m || gcd(m, am * bm) != 1 {
        return hyp("raised formula: m must be squarefree and coprime to a b");
    }
    if k == 1 && gcd(am, bm) != 1 {
        return hyp("raised formula: weight 1 needs coprime moduli");
    }
    if k == 1 && mode == GaussMode::Omit {
        return hyp("weight 1 constant terms need Gauss sums");
    }
    let (jb, jbc) = j_sets(b1, &col);
    let (ja, jac) = j_sets(a1, &col);
    let (jm, jmc) = j_sets(m, &col);
    let inv = |x: &CyclotomicNumber| x.inverse();
    let euler = |j: &[u64]| j.iter().fold(Rational::one(), |acc, &q| acc * (Rational::one() - rat(1, q as i64)));
    let kk = i64::from(k);

    let mut total = CyclotomicNumber::zero(1);
    if (k > 1 || delta_zero(am, &col)) && delta_inf(b0, &col) {
        // Primes of a_0 b_0 prime to f contribute Euler factors exactly as in T_{n,f}.
        let f = chi.div(psi).conductor();
        let mut t = ja.clone();
        t.extend(prime_divisors(a0 * b0).into_iter().filter(|q| f % q != 0));
        let mut v = p_value_col(chi, psi, k, &col, &jbc, &t, mode)?.scale(&euler(&jb));
        for &q in &jm {
            let d = psi.value(q as i64).scale(&rat_pow(&rat_int(q as i64), kk)?);
            v = &v * &inv(&d)?;
        }
        for &q in &jmc {
            v = &v * &inv(&chi.value(q as i64))?;
        }
        total = &total + &v;
    }
    if k == 1 && delta_inf(a0, &col) && delta_zero(bm, &col) {
        let mut v = p_value_col(psi, chi, 1, &col, &jac, &jb, mode)?.scale(&euler(&ja));
        for &q in &jm {
            let d = chi.value(q as i64).scale(&rat_int(q as i64));
            v = &v * &inv(&d)?;
        }
        for &q in &jmc {
            v = &v * &inv(&psi.value(q as i64))?;
        }
        total = &total + &v;
    }
    Ok(total)
}

/// `c_A(0, f | t) = (N b_{A'} / (t N b_A))^k c_{A'}(0, f)` with `A' = diag(t, 1) A`.
pub fn transport(t: u64, a: &Mat2, k: u32) -> Result<(Mat2, Rational)> {
    let d = Mat2::from_ints(t as i64, 0, 0, 1);
    let a2 = d.mul(a);
    let b1 = Column::of(a)?.b;
    let b2 = Column::of(&a2)?.b;
    let ratio = b2 / (b1 * rat_int(t as i64));
    Ok((a2, rat_pow(&ratio, i64::from(k))?))
}

/// Production evaluator for a single series label (no holomorphy check).
pub fn series_constant_term(label: &EisensteinLabel, a: &Mat2, mode: GaussMode) -> Result<CyclotomicNumber> {
    let EisensteinLabel { eta, psi, k, raise } = label;
    let k = *k;
    if *raise > 1 {
        let (a2, factor) = transport(*raise, a, k)?;
        let inner = EisensteinLabel { eta: eta.clone(), psi: psi.clone(), k, raise: 1 };
        return Ok(series_constant_term(&inner, &a2, mode)?.scale(&factor));
    }
    // E_k(eta, psi) = sum_{t | s} mu(t) psi^0(t) t^(k-1) E_k(eta, psi^0) | t.
    let s = extra_primes(psi);
    if s > 1 {
        let psi0 = psi.primitive();
        let mut total = CyclotomicNumber::zero(1);
        for t in crate::intmath::divisors(s) {
            let coeff = psi0.value(t as i64).scale(&Rational::from_integer(BigInt::from(moebius(t)) * BigInt::from(t).pow(k - 1)));
            if coeff.is_zero() {
                continue;
            }
            let term = EisensteinLabel { eta: eta.clone(), psi: psi0.clone(), k, raise: t };
            total = &total + &(&coeff * &series_constant_term(&term, a, mode)?);
        }
        return Ok(total);
    }
    if !psi.is_primitive() {
        // Modulus carries extra powers of conductor primes only.
        let term = EisensteinLabel { eta: eta.clone(), psi: psi.primitive(), k, raise: 1 };
        return series_constant_term(&term, a, mode);
    }
    // E_k(eta, psi) = sum_{t | r} mu(t) eta^0(t) E_k(eta^0, psi) | t.
    let r = extra_primes(eta);
    if r > 1 || !eta.is_primitive() {
        let eta0 = eta.primitive();
        let mut total = CyclotomicNumber::zero(1);
        for t in crate::intmath::divisors(r) {
            let coeff = eta0.value(t as i64).scale_int(moebius(t));
            if coeff.is_zero() {
                continue;
            }
            let term = EisensteinLabel { eta: eta0.clone(), psi: psi.clone(), k, raise: t };
            total = &total + &(&coeff * &series_constant_term(&term, a, mode)?);
        }
        return Ok(total);
    }
    let col = Column::of(a)?;
    primitive_col(eta, psi, k, &col, mode)
}

/// Constant term of a basis element at `A`.
pub fn constant_term(element: &BasisElement, a: &Mat2) -> Result<CyclotomicNumber> {
    constant_term_mode(element, a, GaussMode::Full)
}

pub fn constant_term_mode(element: &BasisElement, a: &Mat2, mode: GaussMode) -> Result<CyclotomicNumber> {
    if let BasisElement::Series(l) = element {
        l.check(None)?;
    }
    let mut total = CyclotomicNumber::zero(1);
    for (c, l) in element.terms() {
        total = &total + &series_constant_term(&l, a, mode)?.scale(&c);
    }
    Ok(total)
}

/// Rows of the constant-term map: all cusps for even `k`, admissible cusps for odd `k`.
/// The stored representative of each class fixes the sign for odd `k`.
pub fn con_rows(n: u64, k: u32) -> Result<Vec<CuspClass>> {
    let q = BaseField::Rational;
    let all = cusps::enumerate_cusps_q(n)?;
    if k % 2 == 0 {
        return Ok(all);
    }
    let mut out = Vec::new();
    for c in all {
        if cusps::is_admissible(&q, &Ideal::Rational(n), &Ideal::Rational(c.label.m))? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Matrix of constant terms: rows from [`con_rows`], one column per basis element.
pub fn con_map(n: u64, k: u32, basis: &[BasisElement], mode: GaussMode) -> Result<Matrix> {
    let rows = con_rows(n, k)?;
    let mut cols = Vec::with_capacity(basis.len());
    for e in basis {
        let mut col = Vec::with_capacity(rows.len());
        for c in &rows {
            col.push(constant_term_mode(e, &c.rep, mode)?);
        }
        cols.push(col);
    }
    if basis.is_empty() {
        return Ok(Matrix::zeros(rows.len(), 0));
    }
    Matrix::from_columns(cols)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Constant term of one element at one cusp class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub label: CuspLabel,
    /// The representative used; for odd `k` it fixes the sign.
    pub rep: Mat2,
    pub admissible: bool,
    pub value: CyclotomicNumber,
}

/// Constant terms of a form at every cusp of level `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantTermReport {
    pub level: u64,
    pub k: u32,
    pub element: String,
    pub parity: Parity,
    /// `true` for the weight-2 difference family, whose values come from the regularized convention.
    pub regularized: bool,
    pub entries: Vec<ReportEntry>,
}

pub fn constant_term_report(n: u64, element: &BasisElement) -> Result<ConstantTermReport> {
    let k = element.weight();
    if let BasisElement::Series(l) = element {
        l.check(Some(n))?;
    } else if let BasisElement::Difference { t } = element {
        if n % t != 0 {
            return hyp("D_t needs t | N");
        }
    }
    let q = BaseField::Rational;
    let mut entries = Vec::new();
    for c in cusps::enumerate_cusps_q(n)? {
        let admissible = cusps::is_admissible(&q, &Ideal::Rational(n), &Ideal::Rational(c.label.m))?;
        let value = constant_term(element, &c.rep)?;
        entries.push(ReportEntry { label: c.label, rep: c.rep, admissible, value });
    }
    Ok(ConstantTermReport {
        level: n,
        k,
        element: alloc::format!("{element}"),
        parity: if k % 2 == 0 { Parity::Even } else { Parity::Odd },
        regularized: element.is_regularized(),
        entries,
    })
}

/// Closed form for `D_t` at a pair: `-(1/24)(1 - gcd(t, c_A)^2 / t)`.
pub fn difference_closed_form(t: u64, a: &Mat2) -> Result<Rational> {
    let col = Column::of(a)?;
    let g = gcd(t, col.c_ideal()) as i64;
    Ok(rat(-1, 24) * (Rational::one() - rat(g * g, t as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::defining_basis;

    fn cyc_rat(r: &Rational) -> CyclotomicNumber {
        CyclotomicNumber::from_rational(1, r)
    }

    fn chi(s: &str) -> DirichletCharacter {
        DirichletCharacter::parse(s).unwrap()
    }

    #[test]
    fn p_spot_values() {
        let one = DirichletCharacter::trivial(1);
        let inf = Mat2::identity();
        let zero = Mat2::from_ints(0, -1, 1, 0);
        let v = p_value(&one, &one, 4, &inf, &[], &[], GaussMode::Full).unwrap();
        assert_eq!(v, cyc_rat(&rat(1, 240)));
        let v = p_value(&chi("chi4"), &one, 1, &inf, &[], &[], GaussMode::Full).unwrap();
        assert!(v.is_zero());
        let v = p_value(&chi("chi4"), &one, 1, &zero, &[], &[], GaussMode::Full).unwrap();
        assert_eq!(v, CyclotomicNumber::root_of_unity(4, 1).scale(&rat(-1, 8)));
    }

    #[test]
    fn primitive_formula_spot_values() {
        let one = DirichletCharacter::trivial(1);
        let zero = Mat2::from_ints(0, -1, 1, 0);
        let v = eval_primitive(&one, &chi("chi4"), 4 - 1, &Mat2::identity(), GaussMode::Full).unwrap();
        assert_eq!(v, cyc_rat(&rat(-1, 4)));
        let e4 = EisensteinLabel { eta: one.clone(), psi: chi("chi4"), k: 3, raise: 1 };
        let v = series_constant_term(&e4, &zero, GaussMode::Full).unwrap();
        assert!(v.is_zero());
        let v = eval_primitive(&one, &chi("chi4"), 1, &Mat2::identity(), GaussMode::Full).unwrap();
        assert_eq!(v, cyc_rat(&rat(1, 4)));
    }

    #[test]
    fn difference_family_matches_closed_form() {
        for n in [4u64, 6, 12] {
            for e in defining_basis(n, 2).unwrap() {
                let BasisElement::Difference { t } = e else { continue };
                for c in cusps::enumerate_cusps_q(n).unwrap() {
                    let v = constant_term(&e, &c.rep).unwrap();
                    assert_eq!(v, cyc_rat(&difference_closed_form(t, &c.rep).unwrap()));
                }
            }
        }
    }

    #[test]
    fn small_con_maps_have_full_rank() {
        for (n, k) in [(4u64, 3u32), (5, 4), (1, 4), (12, 2), (7, 3)] {
            let basis = defining_basis(n, k).unwrap();
            let m = con_map(n, k, &basis, GaussMode::Omit).unwrap();
            assert_eq!(m.rows(), basis.len() + usize::from(k == 2), "N={n} k={k}");
            assert_eq!(m.rank(), basis.len(), "N={n} k={k}");
        }
    }
}
