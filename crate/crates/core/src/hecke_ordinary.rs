//! Hecke operators on the Eisenstein space over `Q` in the Jordan basis, the
//! ordinary projector, and the two checks of the ordinary cuspidality criterion.
//!
//! On `E_k(eta_r, psi_s) | c` (`eta`, `psi` primitive of conductors `a`, `b`):
//! * `T_q`, `q` prime to `N`, acts by `eta(q) + psi(q) q^(k-1)`;
//! * `U_p`, `p | N`, maps the label to the one with `c / p` when `p | c`, and otherwise
//!   acts by `0` (`p | a r` and `p | b s`), `psi(p) p^(k-1)` (`p | a r` only) or `eta(p)`;
//! * `S(m)`, `m` prime to `N`, acts by the nebentypus value `(eta psi)(m)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::characters::DirichletCharacter;
use crate::constant_terms::{constant_term_mode, series_constant_term, Column, GaussMode};
use crate::cusps::{self, Mat2};
use crate::eisenstein::{jordan_basis, JordanLabel};
use crate::error::{hyp, Error, Result};
use crate::exact_arith::{rat, rat_int, rat_pow, CyclotomicNumber};
use crate::intmath::{gcd, is_prime, lcm, valuation};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeOp {
    /// `T_q` for a prime `q` not dividing the level.
    T(u64),
    /// `U_p` for a prime `p` dividing the level.
    U(u64),
    /// The diamond operator `S(m)` for `m` prime to the level.
    S(u64),
}

impl fmt::Display for HeckeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeOp::T(q) => write!(f, "T_{q}"),
            HeckeOp::U(p) => write!(f, "U_{p}"),
            HeckeOp::S(m) => write!(f, "S({m})"),
        }
    }
}

/// Matrix of an operator in the Jordan basis; column `j` is the image of label `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeMatrix {
    pub op: HeckeOp,
    pub basis: Vec<JordanLabel>,
    pub matrix: Matrix,
}

/// How `U_p` acts on one Jordan label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpAction {
    /// Eigenvector with the given eigenvalue.
    Eigen(CyclotomicNumber),
    /// `p | c`: sent to the label with `c / p`.
    Shift,
}

fn induced_moduli(l: &JordanLabel) -> (u64, u64) {
    (l.eta.modulus() * l.r, l.psi.modulus() * l.s)
}

pub fn up_action(l: &JordanLabel, p: u64) -> UpAction {
    if l.c % p == 0 {
        return UpAction::Shift;
    }
    let (ar, bs) = induced_moduli(l);
    let pk = rat_pow(&rat_int(p as i64), i64::from(l.k) - 1).expect("non-negative power");
    match (ar % p == 0, bs % p == 0) {
        (true, true) => UpAction::Eigen(CyclotomicNumber::zero(1)),
        (true, false) => UpAction::Eigen(l.psi.value(p as i64).scale(&pk)),
        _ => UpAction::Eigen(l.eta.value(p as i64)),
    }
}

pub fn t_eigenvalue(l: &JordanLabel, q: u64) -> CyclotomicNumber {
    let pk = rat_pow(&rat_int(q as i64), i64::from(l.k) - 1).expect("non-negative power");
    &l.eta.value(q as i64) + &l.psi.value(q as i64).scale(&pk)
}

pub fn nebentypus(l: &JordanLabel) -> DirichletCharacter {
    l.eta.mul(&l.psi)
}

pub fn hecke_matrix(n: u64, k: u32, op: HeckeOp) -> Result<HeckeMatrix> {
    match op {
        HeckeOp::T(q) if !is_prime(q) || n % q == 0 => return hyp("T_q needs a prime q not dividing N"),
        HeckeOp::U(p) if !is_prime(p) || n % p != 0 => return hyp("U_p needs a prime p dividing N"),
        HeckeOp::S(m) if m == 0 || gcd(m, n) != 1 => return hyp("S(m) needs m prime to N"),
        _ => {}
    }
    let basis = jordan_basis(n, k)?;
    let mut matrix = Matrix::zeros(basis.len(), basis.len());
    for (j, l) in basis.iter().enumerate() {
        match op {
            HeckeOp::T(q) => matrix.set(j, j, t_eigenvalue(l, q)),
            HeckeOp::S(m) => matrix.set(j, j, nebentypus(l).value(m as i64)),
            HeckeOp::U(p) => match up_action(l, p) {
                UpAction::Eigen(v) => matrix.set(j, j, v),
                UpAction::Shift => {
                    let target = JordanLabel { c: l.c / p, ..l.clone() };
                    let i = basis
                        .iter()
                        .position(|x| *x == target)
                        .ok_or_else(|| Error::Hypothesis(alloc::format!("basis not closed under U_{p}")))?;
                    matrix.set(i, j, CyclotomicNumber::one(1));
                }
            },
        }
    }
    Ok(HeckeMatrix { op, basis, matrix })
}

/// `v_p` of an eigenvalue of the shape root of unity times rational; `None` for `0`.
pub fn eigen_valuation(x: &CyclotomicNumber, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    // |x|^2 = x conj(x) is rational for such x; v_p(x) = v_p(|x|^2) / 2.
    let norm = (x * &x.conj()).to_rational().expect("root of unity times rational");
    let num = norm.numer().magnitude().clone();
    let den = norm.denom().magnitude().clone();
    let v = |m: &num_bigint::BigUint| -> i64 {
        let mut m = m.clone();
        let mut e = 0;
        let pp = num_bigint::BigUint::from(p);
        while (&m % &pp) == num_bigint::BigUint::from(0u32) {
            m /= &pp;
            e += 1;
        }
        e
    };
    Some((v(&num) - v(&den)) / 2)
}

/// The ordinary projector for `p`: a coordinate selection in the Jordan basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryProjector {
    /// `p^(v_p(N))`.
    pub big_p: u64,
    pub basis: Vec<JordanLabel>,
    pub kept: Vec<usize>,
    pub matrix: Matrix,
}

/// Keeps the labels whose `U_p`-eigenvalue is a `p`-adic unit. For `k >= 2` these are
/// exactly the labels with `p` not dividing `a r`.
pub fn ordinary_projector(n: u64, k: u32, p: u64) -> Result<OrdinaryProjector> {
    if !is_prime(p) {
        return hyp("p must be prime");
    }
    let basis = jordan_basis(n, k)?;
    let big_p = p.pow(if n % p == 0 { valuation(n, p) } else { 0 });
    let mut kept = Vec::new();
    for (j, l) in basis.iter().enumerate() {
        let keep = big_p == 1
            || match up_action(l, p) {
                UpAction::Eigen(v) => eigen_valuation(&v, p) == Some(0),
                UpAction::Shift => false,
            };
        if keep {
            kept.push(j);
        }
    }
    let mut matrix = Matrix::zeros(basis.len(), basis.len());
    for &j in &kept {
        matrix.set(j, j, CyclotomicNumber::one(1));
    }
    Ok(OrdinaryProjector { big_p, basis, kept, matrix })
}

/// `e^2 = e`, and the kept labels are exactly those with `p` not dividing `a r`.
pub fn projector_is_consistent(proj: &OrdinaryProjector, p: u64) -> Result<bool> {
    let sq = proj.matrix.mul(&proj.matrix)?;
    let rule: Vec<usize> = (0..proj.basis.len())
        .filter(|&j| proj.big_p == 1 || induced_moduli(&proj.basis[j]).0 % p != 0)
        .collect();
    let k = proj.basis.first().map_or(2, |l| l.k);
    Ok(sq == proj.matrix && (k == 1 || rule == proj.kept))
}

/// Power agreement: with `M = dim lcm(orders of unit eigenvalues)`, `U_p^M` fixes every
/// kept label, `U_p^dim` kills every label in a zero-eigenvalue chain, and the remaining
/// labels are eigenvectors with eigenvalue of positive valuation.
pub fn projector_power_agreement(n: u64, k: u32, p: u64) -> Result<bool> {
    let proj = ordinary_projector(n, k, p)?;
    if proj.big_p == 1 {
        return Ok(true);
    }
    let u = hecke_matrix(n, k, HeckeOp::U(p))?;
    let dim = proj.basis.len() as u64;
    let mut ord = 1u64;
    for &j in &proj.kept {
        // A root of unity in Q(zeta_o) has order dividing 2 o.
        ord = lcm(ord, 2 * u64::from(u.matrix.get(j, j).order()));
    }
    let big = u.matrix.pow(dim * ord)?;
    let nil = u.matrix.pow(dim)?;
    for j in 0..proj.basis.len() {
        let col = big.column(j);
        if proj.kept.contains(&j) {
            let fixed = col.iter().enumerate().all(|(i, x)| if i == j { *x == CyclotomicNumber::one(1) } else { x.is_zero() });
            if !fixed {
                return Ok(false);
            }
            continue;
        }
        match up_action(&proj.basis[j], p) {
            UpAction::Eigen(v) if !v.is_zero() => {
                if eigen_valuation(&v, p).is_none_or(|e| e <= 0) {
                    return Ok(false);
                }
            }
            _ => {
                if !nil.column(j).iter().all(CyclotomicNumber::is_zero) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Outcome of the rank form of the ordinary cuspidality criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryVerdict {
    pub level: u64,
    pub k: u32,
    pub p: u64,
    /// Cusp labels in `C_inf(P, N)` used as rows.
    pub rows: Vec<String>,
    pub dim_ordinary: usize,
    pub rank: usize,
    /// `rank == dim_ordinary`: no non-zero ordinary Eisenstein series has vanishing
    /// constant terms on `C_inf(P, N)`.
    pub holds: bool,
}

pub fn ordinary_cuspidality_check(n: u64, k: u32, p: u64) -> Result<OrdinaryVerdict> {
    if k < 2 {
        return hyp("the ordinary cuspidality check needs k >= 2");
    }
    let proj = ordinary_projector(n, k, p)?;
    let rows: Vec<_> = cusps::enumerate_cusps_q(n)?.into_iter().filter(|c| c.label.m % proj.big_p == 0).collect();
    let mut cols = Vec::new();
    for &j in &proj.kept {
        let e = proj.basis[j].element();
        let mut col = Vec::with_capacity(rows.len());
        for c in &rows {
            col.push(constant_term_mode(&e, &c.rep, GaussMode::Omit)?);
        }
        cols.push(col);
    }
    let rank = if cols.is_empty() || rows.is_empty() { 0 } else { Matrix::from_columns(cols)?.rank() };
    let dim_ordinary = proj.kept.len();
    Ok(OrdinaryVerdict {
        level: n,
        k,
        p,
        rows: rows.iter().map(|c| alloc::format!("{}", c.label)).collect(),
        dim_ordinary,
        rank,
        holds: rank == dim_ordinary,
    })
}

/// `a_p^r != p^((k-1) r)` for all `r >= 1`: true when `a_p` is a `p`-adic unit and
/// `k >= 2`, since the valuations are `0` and `(k-1) r > 0`.
pub fn unit_eigenvalue_inequality(ap: &CyclotomicNumber, p: u64, k: u32) -> bool {
    k >= 2 && eigen_valuation(ap, p) == Some(0)
}

/// `c_A(0, U_p f) = p^-1 sum_{beta mod p} (b_beta / b_A)^k c_{m_beta A}(0, f)` with
/// `m_beta = [[1, beta], [0, p]]`, compared with `a_p c_A(0, f)` at every cusp of level `n`.
pub fn up_constant_recurrence_check(n: u64, k: u32, p: u64, label: &JordanLabel) -> Result<bool> {
    if !is_prime(p) || n % p != 0 {
        return hyp("U_p needs a prime p dividing N");
    }
    let ap = match up_action(label, p) {
        UpAction::Eigen(v) if !v.is_zero() => v,
        _ => return Err(Error::NotEigenvector(alloc::format!("{label} under U_{p}"))),
    };
    let series = label.series();
    let mode = if k == 1 { GaussMode::Full } else { GaussMode::Omit };
    for c in cusps::enumerate_cusps_q(n)? {
        let a = &c.rep;
        let lhs = &ap * &series_constant_term(&series, a, mode)?;
        let ba = Column::of(a)?.b;
        let mut rhs = CyclotomicNumber::zero(1);
        for beta in 0..p as i64 {
            let mb = Mat2::from_ints(1, beta, 0, p as i64).mul(a);
            let bb = Column::of(&mb)?.b;
            let w = rat_pow(&(bb / ba.clone()), i64::from(k))?;
            rhs = &rhs + &series_constant_term(&series, &mb, mode)?.scale(&w);
        }
        rhs = rhs.scale(&rat(1, p as i64));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pairwise commutation of the given operators at level `n`, weight `k`.
pub fn operators_commute(n: u64, k: u32, ops: &[HeckeOp]) -> Result<bool> {
    let ms: Vec<Matrix> = ops.iter().map(|&o| hecke_matrix(n, k, o).map(|h| h.matrix)).collect::<Result<_>>()?;
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            if a.mul(b)? != b.mul(a)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Jordan structure: every label with non-zero `U_p`-eigenvalue is a genuine eigenvector
/// (blocks of size one), and every shift chain ends in a zero-eigenvalue label.
pub fn jordan_structure_holds(n: u64, k: u32, p: u64) -> Result<bool> {
    let h = hecke_matrix(n, k, HeckeOp::U(p))?;
    for (j, l) in h.basis.iter().enumerate() {
        match up_action(l, p) {
            UpAction::Eigen(v) => {
                let col = h.matrix.column(j);
                if !col.iter().enumerate().all(|(i, x)| i == j || x.is_zero()) || *h.matrix.get(j, j) != v {
                    return Ok(false);
                }
            }
            UpAction::Shift => {
                let root = JordanLabel { c: 1, ..l.clone() };
                if up_action(&root, p) != UpAction::Eigen(CyclotomicNumber::zero(1)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t2_on_e4() {
        let h = hecke_matrix(1, 4, HeckeOp::T(2)).unwrap();
        assert_eq!(*h.matrix.get(0, 0), CyclotomicNumber::from_integer(1, 9));
    }

    #[test]
    fn trivial_projector_is_identity() {
        let proj = ordinary_projector(15, 4, 2).unwrap();
        assert_eq!(proj.matrix, Matrix::identity(proj.basis.len()));
    }

    #[test]
    fn small_ordinary_checks() {
        for (n, k, p) in [(12u64, 3u32, 2u64), (9, 4, 3), (4, 2, 2)] {
            let v = ordinary_cuspidality_check(n, k, p).unwrap();
            assert!(v.holds, "{v:?}");
            assert!(projector_power_agreement(n, k, p).unwrap());
            assert!(jordan_structure_holds(n, k, p).unwrap());
        }
    }
}
