//! Arithmetic in the prime field F_p, the projective line P¹(F_p), and
//! PGL(2,p) elements stored as normalized 2×2 matrices.
//!
//! Points are indexed `0..=p`: index 0 is `[0:1]`, index 1 is `[1:0]` and
//! index `k >= 2` is `[k-1 : 1]`. With this labelling the diagonal torus
//! is exactly the pointwise stabiliser of points 0 and 1.
//!
//! Matrices act on points by Möbius transformation of column vectors,
//! `x ↦ (ax+b)/(cx+d)`, so `act(gh, x) = act(g, act(h, x))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Accepts only the primes this crate works with (p >= 5).
pub fn check_prime(p: u32) -> Result<()> {
    if p >= 5 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut b = base as u64 % p64;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn inv_mod(x: u32, p: u32) -> u32 {
    debug_assert!(x % p != 0);
    pow_mod(x, p - 2, p)
}

/// Euler's criterion.
pub(crate) fn is_nonzero_square(x: u32, p: u32) -> bool {
    let x = x % p;
    x != 0 && pow_mod(x, (p - 1) / 2, p) == 1
}

/// A residue class in F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpElement {
    value: u32,
    modulus: u32,
}

impl FpElement {
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        check_prime(modulus)?;
        Ok(Self {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same(self, rhs: Self) -> Result<u32> {
        if self.modulus == rhs.modulus {
            Ok(self.modulus)
        } else {
            Err(Error::ModulusMismatch(self.modulus, rhs.modulus))
        }
    }

    pub fn add(self, rhs: Self) -> Result<Self> {
        let p = self.same(rhs)?;
        Ok(Self { value: (self.value + rhs.value) % p, modulus: p })
    }

    pub fn sub(self, rhs: Self) -> Result<Self> {
        let p = self.same(rhs)?;
        Ok(Self { value: (self.value + p - rhs.value) % p, modulus: p })
    }

    pub fn mul(self, rhs: Self) -> Result<Self> {
        let p = self.same(rhs)?;
        let value = (self.value as u64 * rhs.value as u64 % p as u64) as u32;
        Ok(Self { value, modulus: p })
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(Self { value: inv_mod(self.value, self.modulus), modulus: self.modulus })
        }
    }

    pub fn is_square(self) -> bool {
        is_nonzero_square(self.value, self.modulus)
    }
}

/// A point of P¹(F_p), identified by its index in `0..=p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint(pub u32);

impl ProjPoint {
    /// Homogeneous coordinates `[u : v]` of this point.
    pub fn homogeneous(self, p: u32) -> (u32, u32) {
        debug_assert!(self.0 <= p);
        match self.0 {
            0 => (0, 1),
            1 => (1, 0),
            k => (k - 1, 1),
        }
    }

    /// Inverse of [`ProjPoint::homogeneous`]; `(0, 0)` is not a point.
    pub fn from_homogeneous(u: u32, v: u32, p: u32) -> Option<Self> {
        let (u, v) = (u % p, v % p);
        if v == 0 {
            return if u == 0 { None } else { Some(ProjPoint(1)) };
        }
        let x = (u as u64 * inv_mod(v, p) as u64 % p as u64) as u32;
        Some(if x == 0 { ProjPoint(0) } else { ProjPoint(x + 1) })
    }
}

/// All `p + 1` points in index order.
pub fn all_points(p: u32) -> Result<Vec<ProjPoint>> {
    check_prime(p)?;
    Ok((0..=p).map(ProjPoint).collect())
}

/// An element of PGL(2,p): an invertible 2×2 matrix scaled so that its
/// first nonzero entry (in the order a, b, c, d) is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMatrix {
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    p: u32,
}

impl ProjMatrix {
    /// Any invertible matrix; entries are reduced mod p and the result is
    /// normalized.
    pub fn new(a: i64, b: i64, c: i64, d: i64, p: u32) -> Result<Self> {
        check_prime(p)?;
        let r = |x: i64| x.rem_euclid(p as i64) as u32;
        Self::from_residues(r(a), r(b), r(c), r(d), p)
    }

    pub fn from_elements(entries: [FpElement; 4]) -> Result<Self> {
        let p = entries[0].modulus();
        if let Some(bad) = entries.iter().find(|e| e.modulus() != p) {
            return Err(Error::ModulusMismatch(p, bad.modulus()));
        }
        Self::from_residues(entries[0].value(), entries[1].value(), entries[2].value(), entries[3].value(), p)
    }

    fn from_residues(a: u32, b: u32, c: u32, d: u32, p: u32) -> Result<Self> {
        let m = Self { a, b, c, d, p };
        if m.det() == 0 {
            return Err(Error::Singular(p));
        }
        Ok(m.normalized())
    }

    pub(crate) fn from_normalized_unchecked(a: u32, b: u32, c: u32, d: u32, p: u32) -> Self {
        Self { a, b, c, d, p }
    }

    pub fn identity(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { a: 1, b: 0, c: 0, d: 1, p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Row-major entries `[a, b, c, d]`.
    pub fn entries(&self) -> [u32; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> u32 {
        let p = self.p as u64;
        let ad = self.a as u64 * self.d as u64 % p;
        let bc = self.b as u64 * self.c as u64 % p;
        ((ad + p - bc) % p) as u32
    }

    fn normalized(self) -> Self {
        let p = self.p as u64;
        let lead = [self.a, self.b, self.c, self.d]
            .into_iter()
            .find(|&e| e != 0)
            .expect("invertible matrix has a nonzero entry");
        if lead == 1 {
            return self;
        }
        let s = inv_mod(lead, self.p) as u64;
        let sc = |x: u32| (x as u64 * s % p) as u32;
        Self { a: sc(self.a), b: sc(self.b), c: sc(self.c), d: sc(self.d), p: self.p }
    }

    pub fn is_identity(&self) -> bool {
        self.a == 1 && self.b == 0 && self.c == 0 && self.d == 1
    }

    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        if self.p != rhs.p {
            return Err(Error::ModulusMismatch(self.p, rhs.p));
        }
        Ok(self.product(rhs))
    }

    pub(crate) fn product(&self, rhs: &Self) -> Self {
        let p = self.p as u64;
        let (a, b, c, d) = (self.a as u64, self.b as u64, self.c as u64, self.d as u64);
        let (e, f, g, h) = (rhs.a as u64, rhs.b as u64, rhs.c as u64, rhs.d as u64);
        Self {
            a: ((a * e + b * g) % p) as u32,
            b: ((a * f + b * h) % p) as u32,
            c: ((c * e + d * g) % p) as u32,
            d: ((c * f + d * h) % p) as u32,
            p: self.p,
        }
        .normalized()
    }

    pub fn inverse(&self) -> Self {
        let p = self.p;
        // adjugate; scalar factors vanish under normalization
        Self { a: self.d, b: (p - self.b) % p, c: (p - self.c) % p, d: self.a, p }.normalized()
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self { a: 1, b: 0, c: 0, d: 1, p: self.p };
        let mut base = *self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.product(&base);
            }
            base = base.product(&base);
            n >>= 1;
        }
        acc
    }

    /// Smallest `n >= 1` with `selfⁿ` scalar.
    pub fn order(&self) -> u64 {
        let mut acc = *self;
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.product(self);
            n += 1;
        }
        n
    }

    /// Membership in PSL(2,p): the determinant is a nonzero square. This is
    /// independent of the representative since scaling by λ multiplies the
    /// determinant by λ².
    pub fn in_psl(&self) -> bool {
        is_nonzero_square(self.det(), self.p)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.product(self).is_identity()
    }

    /// Möbius action on a point.
    pub fn act(&self, x: ProjPoint) -> ProjPoint {
        let p = self.p as u64;
        let (u, v) = x.homogeneous(self.p);
        let (u, v) = (u as u64, v as u64);
        let nu = (self.a as u64 * u + self.b as u64 * v) % p;
        let nv = (self.c as u64 * u + self.d as u64 * v) % p;
        ProjPoint::from_homogeneous(nu as u32, nv as u32, self.p).expect("invertible matrix maps points to points")
    }

    pub fn fixes(&self, x: ProjPoint) -> bool {
        self.act(x) == x
    }

    pub fn fixed_points(&self) -> Vec<ProjPoint> {
        (0..=self.p).map(ProjPoint).filter(|&x| self.fixes(x)).collect()
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]] mod {}", self.a, self.b, self.c, self.d, self.p)
    }
}

pub fn mat_multiply(lhs: &ProjMatrix, rhs: &ProjMatrix) -> Result<ProjMatrix> {
    lhs.multiply(rhs)
}

pub fn element_order(g: &ProjMatrix) -> u64 {
    g.order()
}

pub fn act(g: &ProjMatrix, x: ProjPoint) -> ProjPoint {
    g.act(x)
}

pub fn in_psl(g: &ProjMatrix) -> bool {
    g.in_psl()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64, p: u32) -> ProjMatrix {
        ProjMatrix::new(a, b, c, d, p).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let i5 = ProjMatrix::identity(5).unwrap();
        let t = m(1, 1, 0, 1, 5);
        assert_eq!(i5.multiply(&t).unwrap(), t);
        assert_eq!(t.multiply(&t).unwrap(), m(1, 2, 0, 1, 5));
        let s = m(0, 1, 1, 0, 7);
        assert!(s.multiply(&s).unwrap().is_identity());
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let a = ProjMatrix::identity(5).unwrap();
        let b = ProjMatrix::identity(7).unwrap();
        assert_eq!(a.multiply(&b), Err(Error::ModulusMismatch(5, 7)));
        let x = FpElement::new(1, 5).unwrap();
        let y = FpElement::new(1, 7).unwrap();
        assert!(x.add(y).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(ProjMatrix::identity(5).unwrap().order(), 1);
        assert_eq!(m(1, 1, 0, 1, 5).order(), 5);
        assert_eq!(m(0, 1, 1, 0, 7).order(), 2);
    }

    #[test]
    fn action_examples() {
        let t = m(1, 1, 0, 1, 5);
        // [0:1] -> [1:1], which is index 2
        assert_eq!(t.act(ProjPoint(0)), ProjPoint(2));
        for x in all_points(5).unwrap() {
            assert_eq!(ProjMatrix::identity(5).unwrap().act(x), x);
        }
    }

    #[test]
    fn psl_membership() {
        assert!(ProjMatrix::identity(5).unwrap().in_psl());
        assert!(!m(2, 0, 0, 1, 5).in_psl());
        assert!(m(4, 0, 0, 1, 5).in_psl());
    }

    #[test]
    fn point_counts_and_order() {
        for p in [5, 7, 13] {
            let pts = all_points(p).unwrap();
            assert_eq!(pts.len() as u32, p + 1);
            assert_eq!(pts[0].homogeneous(p), (0, 1));
            assert_eq!(pts[1].homogeneous(p), (1, 0));
            assert_eq!(pts[2].homogeneous(p), (1, 1));
        }
        assert!(all_points(3).is_err());
        assert!(all_points(9).is_err());
    }

    #[test]
    fn small_primes_rejected() {
        assert_eq!(ProjMatrix::identity(3), Err(Error::InvalidPrime(3)));
        assert!(ProjMatrix::new(1, 0, 0, 1, 4).is_err());
        assert_eq!(ProjMatrix::new(1, 2, 2, 4, 5), Err(Error::Singular(5)));
    }

    #[test]
    fn homogeneous_round_trip() {
        for p in [5u32, 11] {
            for x in all_points(p).unwrap() {
                let (u, v) = x.homogeneous(p);
                assert_eq!(ProjPoint::from_homogeneous(u, v, p), Some(x));
                assert_eq!(ProjPoint::from_homogeneous(3 * u, 3 * v, p), Some(x));
            }
        }
    }

    fn matrix_strategy(p: u32) -> impl Strategy<Value = ProjMatrix> {
        (0..p as i64, 0..p as i64, 0..p as i64, 0..p as i64)
            .prop_filter_map("singular", move |(a, b, c, d)| ProjMatrix::new(a, b, c, d, p).ok())
    }

    proptest! {
        #[test]
        fn normalization_ignores_scalars(g in matrix_strategy(13), lambda in 1i64..13) {
            let [a, b, c, d] = g.entries().map(|e| e as i64 * lambda);
            prop_assert_eq!(ProjMatrix::new(a, b, c, d, 13).unwrap(), g);
        }

        #[test]
        fn multiplication_is_associative(g in matrix_strategy(11), h in matrix_strategy(11), k in matrix_strategy(11)) {
            prop_assert_eq!(g.product(&h).product(&k), g.product(&h.product(&k)));
        }

        #[test]
        fn action_is_compatible_with_products(g in matrix_strategy(7), h in matrix_strategy(7), x in 0u32..8) {
            let x = ProjPoint(x);
            prop_assert_eq!(g.product(&h).act(x), g.act(h.act(x)));
        }

        #[test]
        fn inverse_is_inverse(g in matrix_strategy(13)) {
            prop_assert!(g.product(&g.inverse()).is_identity());
        }

        #[test]
        fn order_divides_structure(g in matrix_strategy(13)) {
            let n = g.order();
            prop_assert!([13u64, 12, 14].iter().any(|q| q % n == 0));
        }
    }
}
