//! Arithmetic in the residue fields GF(p) and GF(p^2) that occur for primes
//! of O (residue degree f <= 2 always holds here: Gal(F/Q) = Z/2 x Z/2 has
//! no cyclic subgroup of order 4).
//!
//! Degree-2 fields are realized as GF(p)[x]/(x^2 + c1 x + c0) for an
//! irreducible quadratic, elements stored as a + b x with a, b < p.

use serde::{Deserialize, Serialize};

/// A finite field of order p^f, f in {1, 2}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gf {
    pub p: u64,
    pub f: u8,
    /// modulus x^2 + c1 x + c0 when f = 2; ignored for f = 1
    pub c1: u64,
    pub c0: u64,
}

/// An element a + b x of GF(p^f); b = 0 when f = 1.
pub type GfElem = (u64, u64);

impl Gf {
    pub fn prime_field(p: u64) -> Gf {
        Gf { p, f: 1, c1: 0, c0: 0 }
    }

    pub fn quadratic(p: u64, c1: u64, c0: u64) -> Gf {
        Gf { p, f: 2, c1, c0 }
    }

    pub fn order(&self) -> u64 {
        if self.f == 1 {
            self.p
        } else {
            self.p * self.p
        }
    }

    pub fn zero(&self) -> GfElem {
        (0, 0)
    }

    pub fn one(&self) -> GfElem {
        (1, 0)
    }

    pub fn from_i64(&self, n: i64) -> GfElem {
        let p = self.p as i64;
        (((n % p + p) % p) as u64, 0)
    }

    pub fn is_zero(&self, a: GfElem) -> bool {
        a == (0, 0)
    }

    /// True when the element lies in the prime subfield GF(p).
    pub fn in_prime_field(&self, a: GfElem) -> bool {
        a.1 == 0
    }

    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        ((a.0 + b.0) % self.p, (a.1 + b.1) % self.p)
    }

    pub fn sub(&self, a: GfElem, b: GfElem) -> GfElem {
        (
            (a.0 + self.p - b.0) % self.p,
            (a.1 + self.p - b.1) % self.p,
        )
    }

    pub fn neg(&self, a: GfElem) -> GfElem {
        ((self.p - a.0) % self.p, (self.p - a.1) % self.p)
    }

    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        let p = self.p;
        if self.f == 1 {
            (a.0 * b.0 % p, 0)
        } else {
            // (a0 + a1 x)(b0 + b1 x) with x^2 = -c1 x - c0
            let t0 = a.0 * b.0 % p;
            let t1 = (a.0 * b.1 + a.1 * b.0) % p;
            let t2 = a.1 * b.1 % p;
            let x2_0 = (p - self.c0) % p;
            let x2_1 = (p - self.c1) % p;
            ((t0 + t2 * x2_0) % p, (t1 + t2 * x2_1) % p)
        }
    }

    pub fn pow(&self, mut a: GfElem, mut e: u64) -> GfElem {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: GfElem) -> GfElem {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order() - 2)
    }

    /// All elements of the field, prime subfield first when f = 2.
    pub fn elements(&self) -> Vec<GfElem> {
        let mut out = Vec::with_capacity(self.order() as usize);
        if self.f == 1 {
            for a in 0..self.p {
                out.push((a, 0));
            }
        } else {
            for b in 0..self.p {
                for a in 0..self.p {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Elements of the subfield GF(p^sub_f) inside this field.
    pub fn subfield_elements(&self, sub_f: u8) -> Vec<GfElem> {
        assert!(sub_f == 1 || sub_f == self.f);
        if sub_f == self.f {
            self.elements()
        } else {
            (0..self.p).map(|a| (a, 0)).collect()
        }
    }

    /// Is a a square in the multiplicative group (or zero)?
    pub fn is_square(&self, a: GfElem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let q = self.order();
        self.pow(a, (q - 1) / 2) == self.one()
    }
}

/// Roots of x^4 - x^2 + 1 in GF(p), p prime.
pub fn twelfth_poly_roots_mod_p(p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for r in 0..p {
        let r2 = r * r % p;
        let r4 = r2 * r2 % p;
        if (r4 + p - r2 + 1) % p == 0 {
            out.push(r);
        }
    }
    out
}

/// Monic quadratic factors x^2 + c1 x + c0 of x^4 - x^2 + 1 over GF(p).
pub fn twelfth_poly_quadratic_factors(p: u64) -> Vec<(u64, u64)> {
    // x^4 - x^2 + 1 = (x^2 + c1 x + c0)(x^2 + d1 x + d0) requires
    //   c1 + d1 = 0, c0 + d0 + c1 d1 = -1, c1 d0 + d1 c0 = 0, c0 d0 = 1.
    let mut out = Vec::new();
    for c1 in 0..p {
        for c0 in 0..p {
            let d1 = (p - c1) % p;
            let d0_from_prod = if c0 == 0 { continue } else { mod_inv(c0, p) };
            // check middle coefficients
            let s = (c0 + d0_from_prod + c1 * d1) % p;
            if s != (p - 1) % p {
                continue;
            }
            let m = (c1 * d0_from_prod + d1 * c0) % p;
            if m != 0 {
                continue;
            }
            out.push((c1, c0));
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    mod_pow(a % p, p - 2, p)
}

pub fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Is q(x) = x^2 + c1 x + c0 irreducible over GF(p)?
pub fn quadratic_irreducible(p: u64, c1: u64, c0: u64) -> bool {
    if p == 2 {
        // check roots directly
        return (c0 != 0) && ((1 + c1 + c0) % 2 != 0);
    }
    // discriminant c1^2 - 4 c0 must be a non-residue
    let disc = (c1 * c1 % p + 4 * (p - c0 % p)) % p;
    if disc == 0 {
        return false;
    }
    mod_pow(disc, (p - 1) / 2, p) != 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_mod_13() {
        // 13 = 1 mod 12: four roots
        let roots = twelfth_poly_roots_mod_p(13);
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert_eq!((r * r % 13 * r % 13 * r % 13 + 13 - r * r % 13 + 1) % 13, 0);
        }
    }

    #[test]
    fn no_roots_mod_11() {
        assert!(twelfth_poly_roots_mod_p(11).is_empty());
        let quads = twelfth_poly_quadratic_factors(11);
        assert_eq!(quads.len(), 2);
        for (c1, c0) in quads {
            assert!(quadratic_irreducible(11, c1, c0));
        }
    }

    #[test]
    fn ramified_factorizations() {
        // x^4 - x^2 + 1 = (x^2 + x + 1)^2 mod 2 and (x^2 + 1)^2 mod 3
        let f2 = twelfth_poly_quadratic_factors(2);
        assert!(f2.contains(&(1, 1)));
        let f3 = twelfth_poly_quadratic_factors(3);
        assert!(f3.contains(&(0, 1)));
    }

    #[test]
    fn gf4_arithmetic() {
        let k = Gf::quadratic(2, 1, 1);
        let x = (0u64, 1u64);
        // x^2 = x + 1, x^3 = 1
        assert_eq!(k.mul(x, x), (1, 1));
        assert_eq!(k.pow(x, 3), k.one());
        for a in k.elements() {
            if !k.is_zero(a) {
                assert_eq!(k.mul(a, k.inv(a)), k.one());
            }
        }
    }

    #[test]
    fn gf169_field() {
        let quads = twelfth_poly_quadratic_factors(5);
        assert_eq!(quads.len(), 2);
        let (c1, c0) = quads[0];
        let k = Gf::quadratic(5, c1, c0);
        // x is a root of x^4 - x^2 + 1 in GF(25)
        let x = (0u64, 1u64);
        let x2 = k.mul(x, x);
        let x4 = k.mul(x2, x2);
        let val = k.add(k.sub(x4, x2), k.one());
        assert!(k.is_zero(val));
    }
}
