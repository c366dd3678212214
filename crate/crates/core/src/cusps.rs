//! Cusps of `Gamma_1(n)` and their strata.
//!
//! Over `Q` a cusp class of level `N` is labelled by `(m, a, c)` with
//! `m | N`, `a` a unit modulo `m` and `c` a unit modulo `N/m`, taken up to
//! `(a, c) ~ (-a, -c)`; the stored label is the lexicographically least
//! member of that pair. A primitive column `(alpha, gamma)` has label
//! `(gcd(gamma, N), alpha mod m, (gamma/m) mod N/m)`.
//!
//! Over a real quadratic field of class number one the same shape holds
//! with residues in `O/m` and `O/(n/m)` and the unit group acting as
//! described in [`stratum_count`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::base_field::{BaseField, Ideal, QuadIdeal, QuadInt, QuadraticField};
use crate::error::{hyp, Error, Result};
use crate::exact_arith::{rat_int, Rational};
use crate::intmath::{self, divisors, euler_phi, gcd, inv_mod, modulo};

/// A 2x2 matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(rat_int(a), rat_int(b), rat_int(c), rat_int(d))
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Entries as integers, if they all are.
    pub fn to_ints(&self) -> Option<[[i64; 2]; 2]> {
        let f = |x: &Rational| if x.is_integer() { x.to_integer().to_i64() } else { None };
        Some([[f(&self.a)?, f(&self.b)?], [f(&self.c)?, f(&self.d)?]])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Write a non-zero column `(x, y)` as `g (a, c)` with `g > 0` rational and `gcd(a, c) = 1`.
pub fn primitive_column(x: &Rational, y: &Rational) -> Result<(Rational, i64, i64)> {
    if x.is_zero() && y.is_zero() {
        return hyp("zero column");
    }
    let l = x.denom().lcm(y.denom());
    let xi = x.numer() * (&l / x.denom());
    let yi = y.numer() * (&l / y.denom());
    let g = xi.gcd(&yi);
    let a = (&xi / &g).to_i64().ok_or_else(|| Error::Hypothesis("entry too large".into()))?;
    let c = (&yi / &g).to_i64().ok_or_else(|| Error::Hypothesis("entry too large".into()))?;
    Ok((Rational::new(g, l), a, c))
}

/// Ideal invariants of a cusp matrix over `Q`; `b` is a positive rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspInvariants {
    pub b: Rational,
    /// `a = alpha / b` as an ideal (absolute value); `0` when `alpha = 0`.
    pub a: u64,
    /// `c = gamma / b` as an ideal; `0` when `gamma = 0`.
    pub c: u64,
    /// `gcd(c, N)` with `gcd(0, N) = N`.
    pub m: u64,
}

/// `b = alpha Z + gamma Z`, `a = alpha b^-1`, `c = gamma b^-1`, `m = gcd(c, N)`.
pub fn cusp_invariants(a_mat: &Mat2, n: u64) -> Result<CuspInvariants> {
    let (g, a, c) = primitive_column(&a_mat.a, &a_mat.c)?;
    Ok(CuspInvariants { b: g, a: a.unsigned_abs(), c: c.unsigned_abs(), m: gcd(c.unsigned_abs(), n) })
}

/// Label of a cusp class of `Gamma_1(N)` over `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspLabel {
    pub m: u64,
    pub a: u64,
    pub c: u64,
}

impl CuspLabel {
    /// Canonical label from raw residues `(a mod m, c mod N/m)`.
    pub fn canonical(n: u64, m: u64, a: i64, c: i64) -> Self {
        let nm = n / m;
        let x = CuspLabel { m, a: modulo(a, m), c: modulo(c, nm) };
        let y = CuspLabel { m, a: modulo(-a, m), c: modulo(-c, nm) };
        x.min(y)
    }

    /// Parse `m:a:c`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::Parse(alloc::format!("bad cusp label {s:?}, expected m:a:c"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let p = |t: &str| t.parse::<u64>().map_err(|_| bad());
        Ok(CuspLabel { m: p(parts[0])?, a: p(parts[1])?, c: p(parts[2])? })
    }
}

impl fmt::Display for CuspLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.m, self.a, self.c)
    }
}

/// A cusp class together with a representative matrix in `SL_2(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspClass {
    pub level: u64,
    pub label: CuspLabel,
    pub rep: Mat2,
    pub lambda: usize,
}

/// Label of the class of the cusp `A(infinity)` for `Gamma_1(N)`.
pub fn classify_cusp(a_mat: &Mat2, n: u64) -> Result<CuspLabel> {
    let (_, a, c) = primitive_column(&a_mat.a, &a_mat.c)?;
    let m = gcd(c.unsigned_abs(), n);
    let cm = c / m as i64;
    Ok(CuspLabel::canonical(n, m, a, cm))
}

/// Representative in `SL_2(Z)` for a label; `infinity` gets the identity and
/// the stratum-1 class of `0` gets `[[0,-1],[1,0]]`.
pub fn representative(n: u64, label: &CuspLabel) -> Result<Mat2> {
    let CuspLabel { m, a, c } = *label;
    if m == 0 || n % m != 0 {
        return hyp(alloc::format!("{m} does not divide the level {n}"));
    }
    let nm = n / m;
    if gcd(a, m) != 1 || gcd(c, nm) != 1 || (m > 1 && a >= m) || (nm > 1 && c >= nm) {
        return hyp(alloc::format!("{label} is not a valid cusp label at level {n}"));
    }
    // gamma = 0 is possible only for the class of infinity itself.
    if m == n && a % n == 1 % n {
        return Ok(Mat2::identity());
    }
    let c0 = if nm == 1 { 1 } else { c };
    let gamma = (m * c0) as i64;
    let alpha = (0..)
        .map(|t| a as i64 + t * m as i64)
        .find(|&x| gcd(x.unsigned_abs(), gamma.unsigned_abs()) == 1)
        .expect("a lift coprime to gamma exists");
    // alpha delta - beta gamma = 1 with 0 <= delta < gamma.
    let delta = inv_mod(alpha, gamma as u64).expect("coprime") as i64;
    let delta = if gamma == 1 { 0 } else { delta };
    let beta = (alpha * delta - 1) / gamma;
    let rep = Mat2::from_ints(alpha, beta, gamma, delta);
    debug_assert!(rep.det().is_one());
    Ok(rep)
}

/// `#Q_{m,N} = phi(m) phi(N/m) / e` with `e = 1` exactly when `m | 2` and `N/m | 2`.
fn stratum_count_q(n: u64, m: u64) -> u64 {
    let e = if 2 % m == 0 && 2 % (n / m) == 0 { 1 } else { 2 };
    euler_phi(m) * euler_phi(n / m) / e
}

/// All cusp classes over `Q`, sorted by label.
pub fn enumerate_cusps_q(n: u64) -> Result<Vec<CuspClass>> {
    if n == 0 {
        return hyp("level must be positive");
    }
    let mut out = Vec::new();
    for m in divisors(n) {
        let nm = n / m;
        let mut labels = BTreeSet::new();
        for a in 0..m.max(1) {
            if gcd(a, m) != 1 {
                continue;
            }
            for c in 0..nm.max(1) {
                if gcd(c, nm) == 1 {
                    labels.insert(CuspLabel::canonical(n, m, a as i64, c as i64));
                }
            }
        }
        for label in labels {
            out.push(CuspClass { level: n, rep: representative(n, &label)?, label, lambda: 0 });
        }
    }
    Ok(out)
}

/// Number of cusp classes in the stratum `m` of level `n`.
///
/// Over a real quadratic field this is `h^+ h` times the number of orbits of
/// `(O/m)^* x (O/(n/m))^*` under the group generated by totally positive
/// units on each factor separately and all units diagonally.
pub fn stratum_count(field: &BaseField, n: &Ideal, m: &Ideal) -> Result<u64> {
    if !m.divides(n) || n.is_zero() {
        return hyp("m must divide the non-zero level");
    }
    match (field, n, m) {
        (BaseField::Rational, Ideal::Rational(n), Ideal::Rational(m)) => Ok(stratum_count_q(*n, *m)),
        (BaseField::Quadratic(f), Ideal::Quadratic(nq), Ideal::Quadratic(mq)) => {
            let nc = field.narrow_class_data(None)?;
            let nm = nq.div_exact(mq).expect("m | n");
            let g = f.unit_group_order(mq) * f.unit_group_order(&nm);
            let k = unit_image_size(f, mq, &nm);
            Ok(nc.h_plus * nc.h * g / k)
        }
        _ => hyp("ideal does not belong to this field"),
    }
}

/// Size of the subgroup of `(O/m)^* x (O/m')^*` generated by `(u+, 1)`, `(1, u+)`, `(-1, -1)`, `(e, e)`.
fn unit_image_size(f: &QuadraticField, m: &QuadIdeal, m2: &QuadIdeal) -> u64 {
    let gens = unit_generators(f);
    let orbit = orbit_of(f, m, m2, (f.one(), f.one()), &gens);
    orbit.len() as u64
}

type Gen = (QuadInt, QuadInt);

fn unit_generators(f: &QuadraticField) -> Vec<Gen> {
    let up = f.totally_positive_unit();
    let e = f.fundamental_unit();
    let one = f.one();
    let m1 = QuadInt { a: -1, b: 0 };
    vec![(up, one), (one, up), (m1, m1), (e, e)]
}

fn orbit_of(f: &QuadraticField, m: &QuadIdeal, m2: &QuadIdeal, start: (QuadInt, QuadInt), gens: &[Gen]) -> BTreeSet<(QuadInt, QuadInt)> {
    let red = |x: (QuadInt, QuadInt)| (f.reduce(x.0, m), f.reduce(x.1, m2));
    let s = red(start);
    let mut seen = BTreeSet::new();
    seen.insert(s);
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = red((f.mul(x.0, g.0), f.mul(x.1, g.1)));
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// A pair `(m, n)` is admissible when no unit solution exists.
pub fn is_admissible(field: &BaseField, n: &Ideal, m: &Ideal) -> Result<bool> {
    Ok(!field.unit_solution_exists(m, n)?)
}

/// Over `Q`: strata `m | N` of the set `C_inf(b, N)` (`b | m`).
pub fn c_inf_strata(b: u64, n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|m| m % b == 0).collect()
}

/// Over `Q`: strata of `C_0(b, N)` (`gcd(b, m) = 1`).
pub fn c_zero_strata(b: u64, n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|&m| gcd(b, m) == 1).collect()
}

/// Membership of a cusp with stratum `m` in `C_inf(b, N)`.
pub fn in_c_inf(b: u64, m: u64) -> bool {
    m % b == 0
}

/// Membership of a cusp with stratum `m` in `C_0(b, N)`.
pub fn in_c_zero(b: u64, m: u64) -> bool {
    gcd(b, m) == 1
}

/// The matrix `alpha_mu = mu gamma` with `gamma in Gamma_0(N)`, lower right entry `= mu (mod N)`.
pub fn diamond_matrix(n: u64, mu: u64) -> Result<Mat2> {
    if gcd(mu, n) != 1 || mu == 0 {
        return hyp(alloc::format!("{mu} is not coprime to the level {n}"));
    }
    // gamma = [[x, y], [N, w]] with w = mu (mod N), x w - N y = 1.
    let w = (0..)
        .map(|t| mu as i64 + t * n as i64)
        .find(|&w| gcd(w.unsigned_abs(), n) == 1)
        .expect("mu is a unit");
    let (g, x, y) = intmath::ext_gcd(w, n as i64);
    debug_assert_eq!(g, 1);
    // x w + y N = 1  =>  [[x, -y], [N, w]]
    let gamma = Mat2::from_ints(x, -y, n as i64, w);
    debug_assert!(gamma.det().is_one());
    let mu = rat_int(mu as i64);
    Ok(Mat2::new(&gamma.a * &mu, &gamma.b * &mu, &gamma.c * &mu, &gamma.d * &mu))
}

/// The diamond action `A -> alpha_mu A` on a cusp class, via the explicit matrix.
pub fn diamond_on_cusp(n: u64, mu: u64, label: &CuspLabel) -> Result<(Mat2, CuspLabel)> {
    let alpha = diamond_matrix(n, mu)?;
    let rep = representative(n, label)?;
    let moved = alpha.mul(&rep);
    Ok((alpha, classify_cusp(&moved, n)?))
}

/// Closed form of the diamond action on labels: `(m, a, c) -> (m, mu^-1 a, mu c)`.
pub fn diamond_on_label(n: u64, mu: u64, label: &CuspLabel) -> CuspLabel {
    let m = label.m;
    let inv = inv_mod(mu as i64, m).expect("mu coprime to N") as i64;
    CuspLabel::canonical(n, m, inv * label.a as i64, mu as i64 * label.c as i64)
}

/// Independent orbit count of `Gamma_1(N)` on primitive vectors modulo `N` and sign.
///
/// Classes are generated by `(a, c) -> (a + s c, c)` and `(a, c) -> (-a, -c)`
/// on pairs modulo `N` with `gcd(a, c, N) = 1`. Returns `stratum -> count`.
pub fn oracle_cusps_q(n: u64) -> BTreeMap<u64, u64> {
    let nn = n as usize;
    let idx = |a: u64, c: u64| (a * n + c) as usize;
    let mut parent: Vec<usize> = (0..nn * nn).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let valid = |a: u64, c: u64| gcd(gcd(a, c), n) == 1;
    for a in 0..n {
        for c in 0..n {
            if !valid(a, c) {
                continue;
            }
            let x = idx(a, c);
            let shifted = idx((a + c) % n, c);
            let neg = idx((n - a) % n, (n - c) % n);
            for y in [shifted, neg] {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
    }
    let mut roots: BTreeMap<usize, u64> = BTreeMap::new();
    for a in 0..n {
        for c in 0..n {
            if valid(a, c) {
                let r = find(&mut parent, idx(a, c));
                roots.entry(r).or_insert(gcd(c, n));
            }
        }
    }
    let mut out = BTreeMap::new();
    for (_, m) in roots {
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

/// Label of a cusp over a real quadratic field of class number one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadCuspLabel {
    pub lambda: usize,
    pub m: QuadIdeal,
    pub a: QuadInt,
    pub c: QuadInt,
}

/// A cusp class over a real quadratic field with an integral representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadCuspClass {
    pub label: QuadCuspLabel,
    /// `[[a, b], [c, d]]` with `a in O`, `c in t_lambda d`.
    pub rep: [[QuadInt; 2]; 2],
}

/// Fixed generators used to coordinatize cusps of a class-number-one field.
struct QuadCuspContext {
    f: QuadraticField,
    n: QuadIdeal,
    /// Generator of `t_lambda` for each narrow class.
    t_gens: Vec<QuadInt>,
    gens: Vec<Gen>,
}

impl QuadCuspContext {
    fn new(f: QuadraticField, n: QuadIdeal) -> Result<Self> {
        let bf = BaseField::Quadratic(f);
        let nc = bf.narrow_class_data(Some(&Ideal::Quadratic(n)))?;
        if nc.h != 1 {
            return Err(Error::Unsupported("cusp enumeration needs class number one".into()));
        }
        let t_gens = nc
            .t_reps
            .iter()
            .map(|t| match t {
                Ideal::Quadratic(q) => f.principal_generator(q).expect("class number one"),
                Ideal::Rational(_) => unreachable!(),
            })
            .collect();
        Ok(QuadCuspContext { f, n, t_gens, gens: unit_generators(&f) })
    }

    fn generator(&self, i: &QuadIdeal) -> QuadInt {
        self.f.principal_generator(i).expect("class number one")
    }

    fn canonical(&self, lambda: usize, m: &QuadIdeal, a: QuadInt, c: QuadInt) -> QuadCuspLabel {
        let nm = self.n.div_exact(m).expect("m | n");
        let orbit = orbit_of(&self.f, m, &nm, (a, c), &self.gens);
        let (a, c) = *orbit.iter().next().expect("orbit is non-empty");
        QuadCuspLabel { lambda, m: *m, a, c }
    }

    fn representative(&self, label: &QuadCuspLabel) -> [[QuadInt; 2]; 2] {
        let f = &self.f;
        let mu = self.generator(&label.m);
        let nm = self.n.div_exact(&label.m).expect("m | n");
        let c1 = if nm.is_unit() { f.one() } else { label.c };
        let c1 = f.mul(mu, c1);
        let cc = f.mul(f.mul(self.t_gens[label.lambda], f.sqrt_d()), c1);
        // Lift a so that (a) + (mu c') = O.
        let basis = [QuadInt { a: label.m.a, b: 0 }, QuadInt { a: label.m.b, b: label.m.c }];
        let mut a = label.a;
        'search: for r in 0i128.. {
            for i in -r..=r {
                for j in -r..=r {
                    if i.abs().max(j.abs()) != r {
                        continue;
                    }
                    let cand = QuadInt {
                        a: label.a.a + i * basis[0].a + j * basis[1].a,
                        b: label.a.b + i * basis[0].b + j * basis[1].b,
                    };
                    if f.principal(cand).add(&f.principal(c1)).is_unit() {
                        a = cand;
                        break 'search;
                    }
                }
            }
        }
        let zero = QuadInt { a: 0, b: 0 };
        if a == zero {
            [[zero, QuadInt { a: -cc.a, b: -cc.b }], [cc, zero]]
        } else {
            [[a, zero], [cc, a]]
        }
    }

    fn classify(&self, lambda: usize, a: QuadInt, c: QuadInt) -> Result<QuadCuspLabel> {
        let f = &self.f;
        let td = f.mul(self.t_gens[lambda], f.sqrt_d());
        let c1 = f
            .div_exact(c, td)
            .ok_or_else(|| Error::Hypothesis("lower left entry must lie in t d".into()))?;
        let b = f.principal(a).add(&f.principal(c1));
        let beta = self.generator(&b);
        let a1 = f.div_exact(a, beta).expect("beta | a");
        let c2 = f.div_exact(c1, beta).expect("beta | c");
        let m = f.principal(c2).add(&self.n);
        let m = if c2 == (QuadInt { a: 0, b: 0 }) { self.n } else { m };
        let nm = self.n.div_exact(&m).expect("m | n");
        let mu = self.generator(&m);
        let cprime = if nm.is_unit() { QuadInt { a: 0, b: 0 } } else { f.div_exact(c2, mu).expect("mu | c") };
        Ok(self.canonical(lambda, &m, f.reduce(a1, &m), f.reduce(cprime, &nm)))
    }
}

/// Cusp classes over a real quadratic field of class number one.
pub fn enumerate_cusps_quadratic(f: QuadraticField, n: &QuadIdeal) -> Result<Vec<QuadCuspClass>> {
    let ctx = QuadCuspContext::new(f, *n)?;
    let bf = BaseField::Quadratic(f);
    let mut out = Vec::new();
    for lambda in 0..ctx.t_gens.len() {
        for m in bf.ideal_divisors(&Ideal::Quadratic(*n))? {
            let Ideal::Quadratic(mq) = m else { unreachable!() };
            let nm = n.div_exact(&mq).expect("divisor");
            let mut labels = BTreeSet::new();
            for a in f.unit_residues(&mq) {
                for c in f.unit_residues(&nm) {
                    labels.insert(ctx.canonical(lambda, &mq, a, c));
                }
            }
            for label in labels {
                let rep = ctx.representative(&label);
                out.push(QuadCuspClass { label, rep });
            }
        }
    }
    Ok(out)
}

/// Label of the cusp with first column `(a, c)` in the component `lambda`.
pub fn classify_cusp_quadratic(f: QuadraticField, n: &QuadIdeal, lambda: usize, a: QuadInt, c: QuadInt) -> Result<QuadCuspLabel> {
    QuadCuspContext::new(f, *n)?.classify(lambda, a, c)
}

/// Stratum sizes over any base field, keyed by the display form of `m`.
pub fn strata(field: &BaseField, n: &Ideal) -> Result<Vec<(Ideal, u64)>> {
    field
        .ideal_divisors(n)?
        .into_iter()
        .map(|m| Ok((m, stratum_count(field, n, &m)?)))
        .collect()
}

/// Total number of cusps.
pub fn cusp_count(field: &BaseField, n: &Ideal) -> Result<u64> {
    Ok(strata(field, n)?.iter().map(|s| s.1).sum())
}

/// Number of cusps in admissible strata.
pub fn admissible_cusp_count(field: &BaseField, n: &Ideal) -> Result<u64> {
    let mut t = 0;
    for (m, c) in strata(field, n)? {
        if is_admissible(field, n, &m)? {
            t += c;
        }
    }
    Ok(t)
}

/// Human-readable name of a stratum label used in JSON output.
pub fn ideal_name(i: &Ideal) -> String {
    alloc::format!("{i}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_at_level_4() {
        let inv = cusp_invariants(&Mat2::identity(), 4).unwrap();
        assert_eq!((inv.c, inv.m), (0, 4));
        let inv = cusp_invariants(&Mat2::from_ints(0, -1, 1, 0), 4).unwrap();
        assert_eq!((inv.a, inv.c, inv.m), (0, 1, 1));
        let inv = cusp_invariants(&Mat2::from_ints(1, 0, 2, 1), 4).unwrap();
        assert_eq!(inv.m, 2);
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_cusps_q(4).unwrap().len(), 3);
        assert_eq!(enumerate_cusps_q(5).unwrap().len(), 4);
        let c8 = enumerate_cusps_q(8).unwrap();
        assert_eq!(c8.len(), 6);
        let mut by: BTreeMap<u64, u64> = BTreeMap::new();
        for c in &c8 {
            *by.entry(c.label.m).or_default() += 1;
        }
        assert_eq!(by, [(1, 2), (2, 1), (4, 1), (8, 2)].into_iter().collect());
        let q = BaseField::Rational;
        assert_eq!(stratum_count(&q, &Ideal::Rational(8), &Ideal::Rational(2)).unwrap(), 1);
        assert_eq!(stratum_count(&q, &Ideal::Rational(5), &Ideal::Rational(1)).unwrap(), 2);
    }

    #[test]
    fn representatives_classify_back() {
        for n in 1..=30 {
            for cl in enumerate_cusps_q(n).unwrap() {
                assert!(cl.rep.det().is_one());
                assert_eq!(classify_cusp(&cl.rep, n).unwrap(), cl.label, "level {n}");
            }
        }
        let c4 = enumerate_cusps_q(4).unwrap();
        assert!(c4.iter().any(|c| c.rep == Mat2::identity()));
        assert!(c4.iter().any(|c| c.rep == Mat2::from_ints(0, -1, 1, 0)));
    }

    #[test]
    fn cusp_sets_at_12() {
        assert_eq!(c_inf_strata(4, 12), vec![4, 12]);
        assert_eq!(c_zero_strata(4, 12), vec![1, 3]);
    }

    #[test]
    fn diamond_permutes_stratum() {
        let q18: Vec<CuspLabel> = enumerate_cusps_q(8).unwrap().into_iter().map(|c| c.label).filter(|l| l.m == 1).collect();
        let imgs: BTreeSet<CuspLabel> = q18.iter().map(|l| diamond_on_cusp(8, 3, l).unwrap().1).collect();
        assert_eq!(imgs.len(), 2);
        assert!(imgs.iter().all(|l| l.m == 1));
        for l in &q18 {
            assert_eq!(diamond_on_cusp(8, 3, l).unwrap().1, diamond_on_label(8, 3, l));
        }
    }

    #[test]
    fn sqrt5_level_2() {
        let f = QuadraticField::new(5).unwrap();
        let bf = BaseField::Quadratic(f);
        let Ideal::Quadratic(n) = bf.ideal_from_int(2) else { panic!() };
        let cl = enumerate_cusps_quadratic(f, &n).unwrap();
        assert_eq!(cl.len(), 2);
        let st = strata(&bf, &Ideal::Quadratic(n)).unwrap();
        assert_eq!(st.iter().map(|s| s.1).collect::<Vec<_>>(), vec![1, 1]);
        for c in &cl {
            let lab = classify_cusp_quadratic(f, &n, c.label.lambda, c.rep[0][0], c.rep[1][0]).unwrap();
            assert_eq!(lab, c.label);
        }
    }
}
