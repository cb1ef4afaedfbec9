//! Exact scalar arithmetic for the module and quiver computations.
//!
//! Two scalar domains are used: plain rationals, and cyclotomic extensions
//! `Q(zeta_n)` represented as `Q[x]` modulo the n-th cyclotomic polynomial.
//! The extension is only reached for degree-one characters with non-rational
//! values; everything else stays in `Q`.

use num::{BigInt, BigRational, One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Exact field operations used by the generic linear algebra.
fn q0() -> BigRational {
    <BigRational as Zero>::zero()
}

fn q1() -> BigRational {
    <BigRational as One>::one()
}

pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn from_rat(r: &BigRational) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rat(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero");
        self.recip()
    }
    fn from_rat(r: &BigRational) -> Self {
        r.clone()
    }
}

/// Coefficients of the n-th cyclotomic polynomial, monic, constant first.
fn cyclotomic_poly(n: u32) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigRational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut num = vec![q0(); n as usize + 1];
    num[0] = -q1();
    num[n as usize] = q1();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

/// Exact division of polynomials over Q (remainder must vanish).
fn poly_div_exact(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!Zero::is_zero(&lead));
    let mut quot = vec![q0(); rem.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        if Zero::is_zero(&rem[i]) {
            continue;
        }
        let c = &rem[i] / &lead;
        quot[i - dd] = c.clone();
        for (k, dc) in den.iter().enumerate() {
            let delta = dc * &c;
            rem[i - dd + k] = &rem[i - dd + k] - &delta;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// An exact scalar: a rational, or an element of `Q(zeta_n)`.
///
/// Cyclotomic elements carry their own `n`; mixing two different extensions
/// in one computation is a caller bug and panics.  Rationals embed into any
/// extension on demand.
#[derive(Clone, Debug)]
pub enum Exact {
    Rat(BigRational),
    Cyc { n: u32, coeffs: Vec<BigRational> },
}

impl Exact {
    pub fn rational(r: BigRational) -> Self {
        Exact::Rat(r)
    }

    pub fn integer(k: i64) -> Self {
        Exact::Rat(BigRational::from_integer(BigInt::from(k)))
    }

    /// `zeta_n^k`, reduced into the extension field.
    pub fn root_of_unity(n: u32, k: u32) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return Exact::one();
        }
        if n == 2 {
            return if k % 2 == 0 {
                Exact::one()
            } else {
                Exact::integer(-1)
            };
        }
        let mut coeffs = vec![q0(); (k % n) as usize + 1];
        coeffs[(k % n) as usize] = q1();
        Exact::Cyc { n, coeffs }.reduced()
    }

    fn reduced(self) -> Self {
        match self {
            Exact::Rat(r) => Exact::Rat(r),
            Exact::Cyc { n, coeffs } => {
                let phi = cyclotomic_poly(n);
                let deg = phi.len() - 1;
                let mut c = coeffs;
                // fold powers >= deg using the monic relation from Phi_n
                while c.len() > deg {
                    let top = c.pop().unwrap();
                    if Zero::is_zero(&top) {
                        continue;
                    }
                    let shift = c.len() - deg;
                    for k in 0..deg {
                        let delta = &phi[k] * &top;
                        c[shift + k] = &c[shift + k] - &delta;
                    }
                }
                while c.len() > 1 && Zero::is_zero(c.last().unwrap()) {
                    c.pop();
                }
                if c.len() == 1 {
                    Exact::Rat(c.pop().unwrap())
                } else if c.is_empty() {
                    Exact::Rat(q0())
                } else {
                    Exact::Cyc { n, coeffs: c }
                }
            }
        }
    }

    fn lift(&self, n: u32) -> Vec<BigRational> {
        match self {
            Exact::Rat(r) => vec![r.clone()],
            Exact::Cyc { n: m, coeffs } => {
                assert_eq!(*m, n, "mixed cyclotomic orders {m} and {n}");
                coeffs.clone()
            }
        }
    }

    fn order(&self) -> Option<u32> {
        match self {
            Exact::Rat(_) => None,
            Exact::Cyc { n, .. } => Some(*n),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Exact::Rat(r) => Some(r),
            Exact::Cyc { .. } => None,
        }
    }
}

impl PartialEq for Exact {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

fn join_order(a: &Exact, b: &Exact) -> Option<u32> {
    match (a.order(), b.order()) {
        (None, None) => None,
        (Some(n), None) | (None, Some(n)) => Some(n),
        (Some(n), Some(m)) => {
            assert_eq!(n, m, "mixed cyclotomic orders {n} and {m}");
            Some(n)
        }
    }
}

impl Scalar for Exact {
    fn zero() -> Self {
        Exact::Rat(q0())
    }
    fn one() -> Self {
        Exact::Rat(q1())
    }
    fn is_zero(&self) -> bool {
        match self {
            Exact::Rat(r) => Zero::is_zero(r),
            Exact::Cyc { coeffs, .. } => coeffs.iter().all(Zero::is_zero),
        }
    }
    fn add(&self, other: &Self) -> Self {
        match join_order(self, other) {
            None => match (self, other) {
                (Exact::Rat(a), Exact::Rat(b)) => Exact::Rat(a + b),
                _ => unreachable!(),
            },
            Some(n) => {
                let a = self.lift(n);
                let b = other.lift(n);
                let mut c = vec![q0(); a.len().max(b.len())];
                for (i, v) in a.iter().enumerate() {
                    c[i] = &c[i] + v;
                }
                for (i, v) in b.iter().enumerate() {
                    c[i] = &c[i] + v;
                }
                Exact::Cyc { n, coeffs: c }.reduced()
            }
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        match join_order(self, other) {
            None => match (self, other) {
                (Exact::Rat(a), Exact::Rat(b)) => Exact::Rat(a * b),
                _ => unreachable!(),
            },
            Some(n) => {
                let a = self.lift(n);
                let b = other.lift(n);
                let mut c = vec![q0(); a.len() + b.len() - 1];
                for (i, u) in a.iter().enumerate() {
                    if Zero::is_zero(u) {
                        continue;
                    }
                    for (j, v) in b.iter().enumerate() {
                        let delta = u * v;
                        c[i + j] = &c[i + j] + &delta;
                    }
                }
                Exact::Cyc { n, coeffs: c }.reduced()
            }
        }
    }
    fn neg(&self) -> Self {
        match self {
            Exact::Rat(r) => Exact::Rat(-r),
            Exact::Cyc { n, coeffs } => Exact::Cyc {
                n: *n,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }
    fn inv(&self) -> Self {
        match self {
            Exact::Rat(r) => {
                assert!(!Zero::is_zero(r), "division by zero");
                Exact::Rat(r.recip())
            }
            Exact::Cyc { n, coeffs } => {
                // extended Euclid in Q[x] against Phi_n
                let phi = cyclotomic_poly(*n);
                let (g, _, t) = poly_ext_gcd(&phi, coeffs);
                assert_eq!(g.len(), 1, "cyclotomic element not invertible");
                let ginv = g[0].recip();
                let coeffs = t.iter().map(|c| c * &ginv).collect();
                Exact::Cyc { n: *n, coeffs }.reduced()
            }
        }
    }
    fn from_rat(r: &BigRational) -> Self {
        Exact::Rat(r.clone())
    }
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && Zero::is_zero(p.last().unwrap()) {
        p.pop();
    }
    p
}

fn poly_is_zero(p: &[BigRational]) -> bool {
    p.iter().all(Zero::is_zero)
}

/// (gcd, s, t) with gcd = s*a + t*b, gcd normalized nonzero (degree 0 when coprime).
fn poly_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut s0 = vec![q1()];
    let mut s1 = vec![q0()];
    let mut t0 = vec![q0()];
    let mut t1 = vec![q1()];
    while !poly_is_zero(&r1) {
        let (q, r) = poly_div_rem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut c = vec![q0(); a.len() + b.len() - 1];
    for (i, u) in a.iter().enumerate() {
        if Zero::is_zero(u) {
            continue;
        }
        for (j, v) in b.iter().enumerate() {
            let delta = u * v;
            c[i + j] = &c[i + j] + &delta;
        }
    }
    poly_trim(c)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut c = vec![q0(); a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        c[i] = &c[i] + v;
    }
    for (i, v) in b.iter().enumerate() {
        c[i] = &c[i] - v;
    }
    poly_trim(c)
}

fn poly_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![q0()], poly_trim(rem));
    }
    let mut quot = vec![q0(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if Zero::is_zero(&rem[i]) {
            continue;
        }
        let c = &rem[i] / &lead;
        quot[i - db] = c.clone();
        for (k, bc) in b.iter().enumerate() {
            let delta = bc * &c;
            rem[i - db + k] = &rem[i - db + k] - &delta;
        }
    }
    (poly_trim(quot), poly_trim(rem))
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Rat(r) => write!(f, "{r}"),
            Exact::Cyc { n, coeffs } => {
                let mut out = String::new();
                for (k, c) in coeffs.iter().enumerate() {
                    if Zero::is_zero(c) {
                        continue;
                    }
                    let neg = c < &q0();
                    let abs = if neg { -c } else { c.clone() };
                    let term = if k == 0 {
                        format!("{abs}")
                    } else if abs.is_one() {
                        format!("z{n}^{k}")
                    } else {
                        format!("{abs}*z{n}^{k}")
                    };
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push(if neg { '-' } else { '+' });
                    }
                    out.push_str(&term);
                }
                if out.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{out}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        let to_i64 = |p: Vec<BigRational>| -> Vec<i64> {
            p.iter()
                .map(|c| {
                    assert!(c.is_integer());
                    let v = c.to_integer();
                    let s: i64 = v.to_string().parse().unwrap();
                    s
                })
                .collect()
        };
        assert_eq!(to_i64(cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_behave() {
        let z = Exact::root_of_unity(3, 1);
        let z2 = Exact::root_of_unity(3, 2);
        assert_eq!(z.mul(&z), z2);
        assert_eq!(z.mul(&z2), Exact::one());
        // 1 + z + z^2 = 0
        let s = Exact::one().add(&z).add(&z2);
        assert!(s.is_zero());
        // inverse of z is z^2
        assert_eq!(z.inv(), z2);
    }

    #[test]
    fn fourth_roots() {
        let i = Exact::root_of_unity(4, 1);
        assert_eq!(i.mul(&i), Exact::integer(-1));
        assert_eq!(i.inv(), Exact::root_of_unity(4, 3));
    }
}
