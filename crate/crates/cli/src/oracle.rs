//! Classical oracle for constant terms of `E_k(eta, psi) | t` at `gamma` in `SL_2(Z)`.
//!
//! With `eta` primitive mod `u`, `psi` primitive mod `v`, `N = u v`, the series is
//! `v^k / (2 C_k g(psi^-1))` times the twisted lattice sum
//! `sum_{c mod u, d mod v, e mod u} eta(c) psi^-1(d) G_k^{(cv, d + ev)}`, where
//! `G_k^{(x, y)} = sum_{(m, n) = (x, y) mod N} (m z + n)^-k` and `C_k = (-2 pi i)^k / (k-1)!`.
//! Slashing by `gamma` permutes the residue classes, and the constant term of
//! `G_k^{(x, y)}` is `[x = 0] sum_{n = y mod N} n^-k`, whose ratio to `C_k` is
//! `(-1)^(k+1) / (k N) sum_{j mod N} zeta_N^(-j y) B_k(j / N)`. In weight 1 the Hecke
//! regularization adds `-((x / N)) / N` (sawtooth) and `B_1` is replaced by the sawtooth.
//!
//! Nothing here calls the constant-term module; only character tables and Bernoulli
//! polynomials are shared.

use std::collections::HashMap;

use eisterms::characters::{bernoulli_poly, DirichletCharacter};
use eisterms::eisenstein::{BasisElement, EisensteinLabel};
use eisterms::exact_arith::{rat, rat_int, rat_pow};
use eisterms::intmath::{divisors, ext_gcd, gcd, lcm, moebius, modulo, prime_divisors};
use eisterms::{CyclotomicNumber, Error, Rational};
use num_traits::Zero;

/// `SL_2(Z)` matrix `[[a, b], [c, d]]`.
pub type Sl2 = [i64; 4];

fn sawtooth(x: &Rational) -> Rational {
    let fl = x.floor();
    if *x == fl {
        Rational::zero()
    } else {
        x - fl - rat(1, 2)
    }
}

/// Gauss sum `sum_{d mod v} chi(d) zeta_v^d`, computed directly from the value table.
pub fn gauss(chi: &DirichletCharacter) -> CyclotomicNumber {
    let v = chi.modulus();
    let m = lcm(v, u64::from(chi.order())) as u32;
    let mut acc = CyclotomicNumber::zero(m);
    for d in 0..v {
        let x = chi.value(d as i64);
        if !x.is_zero() {
            acc = &acc + &(&x * &CyclotomicNumber::root_of_unity(v as u32, d as i64));
        }
    }
    acc
}

/// Constant term of `E_k(eta, psi)` at `gamma`, both characters primitive.
pub fn primitive_at(eta: &DirichletCharacter, psi: &DirichletCharacter, k: u32, g: Sl2) -> Result<CyclotomicNumber, Error> {
    if !eta.is_primitive() || !psi.is_primitive() {
        return Err(Error::Hypothesis("oracle needs primitive characters".into()));
    }
    if g[0] * g[3] - g[1] * g[2] != 1 {
        return Err(Error::Hypothesis("oracle needs gamma in SL_2(Z)".into()));
    }
    let (u, v) = (eta.modulus(), psi.modulus());
    let n = u * v;
    let ni = n as i64;
    let psib = psi.inverse();
    // Group the lattice sum by (character exponent, y mod N) and by x mod N.
    let order = lcm(u64::from(eta.order()), u64::from(psib.order()));
    let big = lcm(order, n) as u32;
    let mut by_y: HashMap<(i64, i64), i64> = HashMap::new();
    let mut by_x: HashMap<(i64, i64), i64> = HashMap::new();
    for c in 0..u as i64 {
        let Some(e1) = eta.exponent(c) else { continue };
        for d in 0..v as i64 {
            let Some(e2) = psib.exponent(d) else { continue };
            let w = i64::from(e1) * (big as i64 / i64::from(eta.order())) + i64::from(e2) * (big as i64 / i64::from(psib.order()));
            for e in 0..u as i64 {
                let (p, q) = (c * v as i64, d + e * v as i64);
                let x = modulo(p * g[0] + q * g[2], n) as i64;
                let y = modulo(p * g[1] + q * g[3], n) as i64;
                if x == 0 {
                    *by_y.entry((w.rem_euclid(big as i64), y)).or_default() += 1;
                }
                if k == 1 {
                    *by_x.entry((w.rem_euclid(big as i64), x)).or_default() += 1;
                }
            }
        }
    }
    let bk: Vec<Rational> = (0..n)
        .map(|j| {
            let x = rat(j as i64, ni);
            if k == 1 {
                sawtooth(&x)
            } else {
                bernoulli_poly(k, &x)
            }
        })
        .collect();
    let mut poly = vec![Rational::zero(); big as usize];
    let step = i64::from(big) / ni;
    for (&(w, y), &cnt) in &by_y {
        for (j, b) in bk.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let idx = (w - step * (j as i64) * y).rem_euclid(i64::from(big)) as usize;
            poly[idx] += b * rat_int(cnt);
        }
    }
    let sign = if k % 2 == 1 { 1 } else { -1 };
    let vk = rat_pow(&rat_int(v as i64), i64::from(k))?;
    let main = CyclotomicNumber::from_poly(big, &poly).scale(&(vk.clone() * rat(sign, 2 * i64::from(k) * ni)));
    let mut total = main;
    if k == 1 {
        let mut extra = vec![Rational::zero(); big as usize];
        for (&(w, x), &cnt) in &by_x {
            extra[w as usize] -= sawtooth(&rat(x, ni)) * rat_int(cnt);
        }
        let extra = CyclotomicNumber::from_poly(big, &extra).scale(&rat(v as i64, 2 * ni));
        total = &total + &extra;
    }
    total.div(&gauss(&psib))
}

/// Split `diag(t, 1) gamma = gamma' [[x, y], [0, z]]`; returns `(gamma', z)`.
pub fn raise_split(t: u64, g: Sl2) -> (Sl2, i64) {
    let (a, c) = (g[0] * t as i64, g[2]);
    let (h, s, r) = ext_gcd(a, c);
    // gamma' = [[a/h, -r], [c/h, s]] has determinant (a s + c r)/h = 1.
    let gp = [a / h, -r, c / h, s];
    (gp, t as i64 / h)
}

/// Constant term of `E_k(eta, psi) | t` at `gamma` for any label, reducing imprimitive
/// characters with the divisor-sum identities
/// `E(eta, psi) = sum_{s} mu(s) psi0(s) s^(k-1) E(eta, psi0) | s` and
/// `E(eta, psi0) = sum_{r} mu(r) eta0(r) E(eta0, psi0) | r`.
pub fn label_at(label: &EisensteinLabel, g: Sl2) -> Result<CyclotomicNumber, Error> {
    let k = label.k;
    let eta0 = label.eta.primitive();
    let psi0 = label.psi.primitive();
    let extra = |chi: &DirichletCharacter| -> u64 {
        let f = chi.conductor();
        prime_divisors(chi.modulus()).into_iter().filter(|p| f % p != 0).product()
    };
    let (r, s) = (extra(&label.eta), extra(&label.psi));
    let mut total = CyclotomicNumber::zero(1);
    for s1 in divisors(s) {
        let cs = psi0.value(s1 as i64).scale(&(rat_int(moebius(s1)) * rat_pow(&rat_int(s1 as i64), i64::from(k) - 1)?));
        if cs.is_zero() {
            continue;
        }
        for r1 in divisors(r) {
            let cr = eta0.value(r1 as i64).scale_int(moebius(r1));
            if cr.is_zero() {
                continue;
            }
            let t = label.raise * s1 * r1;
            let (gp, z) = raise_split(t, g);
            let v = primitive_at(&eta0, &psi0, k, gp)?.scale(&rat_pow(&rat_int(z), -i64::from(k))?);
            total = &total + &(&(&cs * &cr) * &v);
        }
    }
    Ok(total)
}

/// Oracle value for a basis element; `D_t` combines the holomorphic parts of `E_2`.
pub fn element_at(e: &BasisElement, g: Sl2) -> Result<CyclotomicNumber, Error> {
    let mut total = CyclotomicNumber::zero(1);
    for (c, l) in e.terms() {
        total = &total + &label_at(&l, g)?.scale(&c);
    }
    Ok(total)
}

/// An element of `SL_2(Z)` with first column `(a, c)`, if `gcd(a, c) = 1`.
pub fn complete(a: i64, c: i64) -> Option<Sl2> {
    if gcd(a.unsigned_abs(), c.unsigned_abs()) != 1 {
        return None;
    }
    let (_, s, r) = ext_gcd(a, c);
    Some([a, -r, c, s])
}
