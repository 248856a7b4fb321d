//! Ideals of O = Z[t]: factorization of rational primes and level ideals,
//! residue fields with reduction maps, quotient rings O/n with P^1(O/n)
//! enumeration, and Gamma_0(n) membership.
//!
//! O has class number 1, so every ideal is handled through a generator.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{rat_i64, CycNum, Int, Rat};
use crate::gf::{twelfth_poly_quadratic_factors, twelfth_poly_roots_mod_p, Gf, GfElem};
use crate::mat2::Mat2;

/// A prime ideal of O, identified by a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdealRecord {
    pub label: String,
    pub generator: CycNum,
    pub p: u64,
    pub e: u8,
    pub f: u8,
}

impl PrimeIdealRecord {
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    pub fn new(label: impl Into<String>, generator: CycNum, p: u64, e: u8, f: u8) -> Self {
        PrimeIdealRecord {
            label: label.into(),
            generator,
            p,
            e,
            f,
        }
    }
}

/// Splitting pattern (e, f, g) of a rational prime, with e*f*g = 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitPattern {
    pub e: u8,
    pub f: u8,
    pub g: u8,
}

/// Splitting of p in O, read off from x^4 - x^2 + 1 mod p.
pub fn split_rational_prime(p: u64) -> SplitPattern {
    match p {
        2 | 3 => SplitPattern { e: 2, f: 2, g: 1 },
        _ => match p % 12 {
            1 => SplitPattern { e: 1, f: 1, g: 4 },
            5 | 7 | 11 => SplitPattern { e: 1, f: 2, g: 2 },
            _ => unreachable!("p coprime to 12 has residue 1, 5, 7 or 11"),
        },
    }
}

/// A factored ideal: prime records with exponents and the factorization
/// type string in the p/q/r taxonomy (exponents descending).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealFactorization {
    pub factors: Vec<(PrimeIdealRecord, u32)>,
    pub type_string: String,
    pub norm: BigInt,
}

/// Residue field data for a prime P: the field GF(p^f) plus the image of t.
#[derive(Clone, Debug)]
pub struct ResidueField {
    pub prime: PrimeIdealRecord,
    pub gf: Gf,
    pub image_of_t: GfElem,
}

#[derive(Debug, thiserror::Error)]
pub enum IdealError {
    #[error("denominator of {0} is divisible by the prime {1}")]
    DenominatorNotCoprime(String, String),
    #[error("generator search exhausted for p = {0} with bound {1}")]
    GeneratorSearch(u64, i64),
    #[error("{0}")]
    Other(String),
}

impl ResidueField {
    pub fn build(prime: &PrimeIdealRecord) -> ResidueField {
        let p = prime.p;
        if prime.f == 1 {
            let roots = twelfth_poly_roots_mod_p(p);
            let matching: Vec<u64> = roots
                .into_iter()
                .filter(|&r| eval_poly_mod_p(&prime.generator, r, p) == 0)
                .collect();
            assert_eq!(
                matching.len(),
                1,
                "generator of {} must kill exactly one root of the twelfth polynomial",
                prime.label
            );
            ResidueField {
                prime: prime.clone(),
                gf: Gf::prime_field(p),
                image_of_t: (matching[0], 0),
            }
        } else {
            let quads = twelfth_poly_quadratic_factors(p);
            let mut found = None;
            for (c1, c0) in quads {
                if !crate::gf::quadratic_irreducible(p, c1, c0) {
                    continue;
                }
                let gf = Gf::quadratic(p, c1, c0);
                let x = (0u64, 1u64);
                let img = eval_poly_gf(&prime.generator, &gf, x);
                if gf.is_zero(img) {
                    found = Some(gf);
                    break;
                }
            }
            let gf = found.unwrap_or_else(|| {
                panic!(
                    "no quadratic factor matches the generator of {}",
                    prime.label
                )
            });
            ResidueField {
                prime: prime.clone(),
                gf,
                image_of_t: (0, 1),
            }
        }
    }

    /// Reduce an integral element of O.
    pub fn reduce_integral(&self, x: &CycNum) -> GfElem {
        assert!(x.is_integral());
        eval_poly_gf_rat(x, &self.gf, self.image_of_t)
    }

    /// Reduce x in F with denominator prime to P.
    pub fn reduce(&self, x: &CycNum) -> Result<GfElem, IdealError> {
        let d = coeff_denominator_lcm(x);
        let y = x.scale(&Rat::from_integer(d.clone()));
        let p_int = Int::from(self.prime.p);
        // split d = p^a * d'
        let mut a = 0u32;
        let mut dp = d.clone();
        while (&dp % &p_int).is_zero() {
            dp /= &p_int;
            a += 1;
        }
        if a == 0 {
            let yd = self.reduce_integral(&y);
            let dinv = self.gf.inv(self.reduce_int(&d));
            return Ok(self.gf.mul(yd, dinv));
        }
        // delta = p^a / pi^(a e), integral and coprime to P
        let pi_pow = pow_cyc(&self.prime.generator, (a * self.prime.e as u32) as usize);
        let pa = CycNum::from_rat(Rat::from_integer(p_int.pow(a)));
        let delta = pa
            .div_exact_integral(&pi_pow)
            .expect("p^a is divisible by pi^(a e)");
        // s*x = delta * y / p^a must be integral iff v_P(x) >= 0
        let num = (&delta * &y).scale(&Rat::new(Int::one(), Int::from(self.prime.p).pow(a)));
        if !num.is_integral() {
            return Err(IdealError::DenominatorNotCoprime(
                format!("{x}"),
                self.prime.label.clone(),
            ));
        }
        let rnum = self.reduce_integral(&num);
        let rdp = self.reduce_int(&dp);
        let rdelta = self.reduce_integral(&delta);
        let s = self.gf.mul(rdp, rdelta);
        if self.gf.is_zero(s) {
            return Err(IdealError::Other("internal: s reduced to zero".into()));
        }
        Ok(self.gf.mul(rnum, self.gf.inv(s)))
    }

    fn reduce_int(&self, n: &Int) -> GfElem {
        let p = Int::from(self.prime.p);
        let r = ((n % &p) + &p) % &p;
        (r.to_u64().unwrap(), 0)
    }
}

fn eval_poly_mod_p(x: &CycNum, r: u64, p: u64) -> u64 {
    assert!(x.is_integral());
    let mut acc = 0u64;
    for k in (0..4).rev() {
        let c = int_mod_p(x.c[k].numer(), p);
        acc = (acc * r + c) % p;
    }
    acc
}

fn int_mod_p(n: &Int, p: u64) -> u64 {
    let p_int = Int::from(p);
    let r = ((n % &p_int) + &p_int) % &p_int;
    r.to_u64().unwrap()
}

fn eval_poly_gf(x: &CycNum, gf: &Gf, at: GfElem) -> GfElem {
    assert!(x.is_integral());
    let mut acc = gf.zero();
    for k in (0..4).rev() {
        let c = (int_mod_p(x.c[k].numer(), gf.p), 0);
        acc = gf.add(gf.mul(acc, at), c);
    }
    acc
}

fn eval_poly_gf_rat(x: &CycNum, gf: &Gf, at: GfElem) -> GfElem {
    eval_poly_gf(x, gf, at)
}

pub fn coeff_denominator_lcm(x: &CycNum) -> Int {
    let mut d = Int::one();
    for c in &x.c {
        d = num_integer::lcm(d, c.denom().clone());
    }
    d
}

pub fn pow_cyc(x: &CycNum, k: usize) -> CycNum {
    let mut acc = CycNum::one();
    for _ in 0..k {
        acc = &acc * x;
    }
    acc
}

/// Euclidean division in O: q with N(x - q y) < N(y). The field is
/// norm-Euclidean; nearest-coordinate rounding works after a small offset
/// search.
pub fn euclid_divide(x: &CycNum, y: &CycNum) -> (CycNum, CycNum) {
    assert!(!y.is_zero());
    let z = x.div(y).expect("y nonzero");
    let base: Vec<Int> = z.c.iter().map(|c| round_rat(c)).collect();
    let ny = y.norm().abs();
    let mut best: Option<(Rat, CycNum)> = None;
    for offsets in offset_box(2) {
        let q = CycNum::new([
            Rat::from_integer(&base[0] + offsets[0]),
            Rat::from_integer(&base[1] + offsets[1]),
            Rat::from_integer(&base[2] + offsets[2]),
            Rat::from_integer(&base[3] + offsets[3]),
        ]);
        let r = x - &(&q * y);
        let nr = r.norm().abs();
        if best.as_ref().map_or(true, |(bn, _)| nr < *bn) {
            best = Some((nr, q));
        }
        if let Some((bn, _)) = &best {
            if bn.is_zero() {
                break;
            }
        }
    }
    let (nr, q) = best.unwrap();
    assert!(
        nr < ny,
        "euclidean division failed to decrease the norm: {} vs {}",
        nr,
        ny
    );
    let r = x - &(&q * y);
    (q, r)
}

fn round_rat(r: &Rat) -> Int {
    // nearest integer, ties toward zero
    let two = Int::from(2);
    let n = r.numer();
    let d = r.denom();
    let scaled = n * &two + d * sign_int(n);
    &scaled / (d * &two)
}

fn sign_int(n: &Int) -> Int {
    if n.is_negative() {
        -Int::one()
    } else {
        Int::one()
    }
}

fn offset_box(radius: i64) -> Vec<[i64; 4]> {
    // ordered by L1 size so the zero offset is tried first
    let mut out = Vec::new();
    let r = radius;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out.sort_by_key(|o| o.iter().map(|x| x.abs()).sum::<i64>());
    out
}

/// gcd in O (up to units) by the Euclidean algorithm.
pub fn gcd_o(x: &CycNum, y: &CycNum) -> CycNum {
    let mut a = x.clone();
    let mut b = y.clone();
    while !b.is_zero() {
        let (_, r) = euclid_divide(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Extended gcd: (d, s, u) with s x + u y = d and (d) = (x, y).
pub fn ext_gcd_o(x: &CycNum, y: &CycNum) -> (CycNum, CycNum, CycNum) {
    let mut r0 = x.clone();
    let mut r1 = y.clone();
    let mut s0 = CycNum::one();
    let mut s1 = CycNum::zero();
    let mut t0 = CycNum::zero();
    let mut t1 = CycNum::one();
    while !r1.is_zero() {
        let (q, r) = euclid_divide(&r0, &r1);
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

/// Hermite-reduced basis of the Z-lattice of the ideal (g) in the power
/// basis: rows of an upper-triangular 4x4 integer matrix with positive
/// diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    pub rows: [[Int; 4]; 4],
}

impl IdealLattice {
    pub fn of_generator(g: &CycNum) -> IdealLattice {
        assert!(g.is_integral() && !g.is_zero());
        let mut gens: Vec<[Int; 4]> = Vec::new();
        for k in 0..4 {
            let x = g * &CycNum::t_pow(k);
            gens.push([
                x.c[0].numer().clone(),
                x.c[1].numer().clone(),
                x.c[2].numer().clone(),
                x.c[3].numer().clone(),
            ]);
        }
        IdealLattice {
            rows: hermite_form(gens),
        }
    }

    /// Canonical representative of v modulo the lattice: entry i lies in
    /// [0, H[i][i]).
    pub fn reduce_vec(&self, mut v: [Int; 4]) -> [Int; 4] {
        for i in 0..4 {
            let q = num_integer::Integer::div_floor(&v[i], &self.rows[i][i]);
            if !q.is_zero() {
                for j in i..4 {
                    v[j] = &v[j] - &q * &self.rows[i][j];
                }
            }
        }
        v
    }

    pub fn reduce_cyc(&self, x: &CycNum) -> CycNum {
        assert!(x.is_integral());
        let v = self.reduce_vec([
            x.c[0].numer().clone(),
            x.c[1].numer().clone(),
            x.c[2].numer().clone(),
            x.c[3].numer().clone(),
        ]);
        CycNum::new([
            Rat::from_integer(v[0].clone()),
            Rat::from_integer(v[1].clone()),
            Rat::from_integer(v[2].clone()),
            Rat::from_integer(v[3].clone()),
        ])
    }

    pub fn contains(&self, x: &CycNum) -> bool {
        x.is_integral() && self.reduce_cyc(x).is_zero()
    }

    /// Index [O : (g)] = |N(g)|.
    pub fn index(&self) -> Int {
        let mut d = Int::one();
        for i in 0..4 {
            d *= &self.rows[i][i];
        }
        d
    }

    /// All canonical representatives (box vectors). Size = index.
    pub fn residues(&self) -> Vec<CycNum> {
        let bounds: Vec<i64> = (0..4).map(|i| self.rows[i][i].to_i64().unwrap()).collect();
        let mut out = Vec::new();
        let mut v = [0i64; 4];
        loop {
            let cand = CycNum::from_int_coeffs(v);
            out.push(self.reduce_cyc(&cand));
            // increment odometer
            let mut i = 0;
            loop {
                v[i] += 1;
                if v[i] < bounds[i] {
                    break;
                }
                v[i] = 0;
                i += 1;
                if i == 4 {
                    out.sort_by_key(sortable_key);
                    out.dedup();
                    return out;
                }
            }
        }
    }
}

fn sortable_key(x: &CycNum) -> [Int; 4] {
    [
        x.c[0].numer().clone(),
        x.c[1].numer().clone(),
        x.c[2].numer().clone(),
        x.c[3].numer().clone(),
    ]
}

fn hermite_form(mut rows: Vec<[Int; 4]>) -> [[Int; 4]; 4] {
    // integer row echelon with positive pivots, reduced above the pivot
    let mut pivot_row = 0;
    for col in 0..4 {
        // gcd-eliminate below
        loop {
            let mut k = None;
            for r in pivot_row..rows.len() {
                if !rows[r][col].is_zero() {
                    k = match k {
                        None => Some(r),
                        Some(j) => {
                            if rows[r][col].magnitude() < rows[j][col].magnitude() {
                                Some(r)
                            } else {
                                Some(j)
                            }
                        }
                    };
                }
            }
            let Some(k) = k else { break };
            rows.swap(pivot_row, k);
            let mut done = true;
            for r in (pivot_row + 1)..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = div_round(&rows[r][col], &rows[pivot_row][col]);
                for j in 0..4 {
                    rows[r][j] = &rows[r][j] - &q * &rows[pivot_row][j];
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col].is_negative() {
            for j in 0..4 {
                rows[pivot_row][j] = -rows[pivot_row][j].clone();
            }
        }
        assert!(
            !rows[pivot_row][col].is_zero(),
            "ideal lattice has full rank"
        );
        // reduce entries above the pivot
        for r in 0..pivot_row {
            let q = num_integer::Integer::div_floor(&rows[r][col], &rows[pivot_row][col]);
            if !q.is_zero() {
                for j in 0..4 {
                    rows[r][j] = &rows[r][j] - &q * &rows[pivot_row][j];
                }
            }
        }
        pivot_row += 1;
    }
    let mut out: [[Int; 4]; 4] = Default::default();
    for i in 0..4 {
        out[i] = rows[i].clone();
    }
    out
}

fn div_round(a: &Int, b: &Int) -> Int {
    // round(a/b) for elimination steps
    let two = Int::from(2);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if (&r * &two).magnitude() > b.magnitude() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Search for generators of all primes above p, by expanding coefficient
/// boxes, testing |N(x)| = p^f and membership in the prime.
pub fn search_prime_generators(p: u64) -> Result<Vec<PrimeIdealRecord>, IdealError> {
    let pat = split_rational_prime(p);
    let target = Rat::from_integer(Int::from(p).pow(pat.f as u32));
    let mut found: Vec<(CycNum, u64)> = Vec::new(); // (generator, root-key)
    // classify candidate prime membership by residue data
    let keys: Vec<u64> = if pat.f == 1 {
        twelfth_poly_roots_mod_p(p)
    } else if p == 2 || p == 3 {
        vec![0]
    } else {
        twelfth_poly_quadratic_factors(p)
            .into_iter()
            .filter(|&(c1, c0)| crate::gf::quadratic_irreducible(p, c1, c0))
            .map(|(c1, c0)| c1 * p + c0)
            .collect()
    };
    assert_eq!(keys.len(), pat.g as usize);
    for bound in [2i64, 3, 5, 8, 13, 21] {
        for v in coeff_box(bound) {
            let x = CycNum::from_int_coeffs(v);
            if x.is_zero() {
                continue;
            }
            if x.norm().abs() != target {
                continue;
            }
            let key = prime_key(&x, p, pat.f);
            if found.iter().any(|(_, k)| *k == key) {
                continue;
            }
            found.push((x, key));
            if found.len() == pat.g as usize {
                let mut recs = Vec::new();
                found.sort_by_key(|(_, k)| *k);
                for (i, (g, _)) in found.into_iter().enumerate() {
                    let label = if pat.g == 1 {
                        format!("p_{p}")
                    } else {
                        format!("p_{p},{}", i + 1)
                    };
                    recs.push(PrimeIdealRecord::new(label, g.torsion_normalize(), p, pat.e, pat.f));
                }
                return Ok(recs);
            }
        }
    }
    Err(IdealError::GeneratorSearch(p, 21))
}

fn prime_key(x: &CycNum, p: u64, f: u8) -> u64 {
    if f == 1 {
        // the root killed by x
        for r in twelfth_poly_roots_mod_p(p) {
            if eval_poly_mod_p(x, r, p) == 0 {
                return r;
            }
        }
        unreachable!("norm-p element must kill a root");
    } else if p == 2 || p == 3 {
        0
    } else {
        for (c1, c0) in twelfth_poly_quadratic_factors(p) {
            if !crate::gf::quadratic_irreducible(p, c1, c0) {
                continue;
            }
            let gf = Gf::quadratic(p, c1, c0);
            if gf.is_zero(eval_poly_gf(x, &gf, (0, 1))) {
                return c1 * p + c0;
            }
        }
        unreachable!("norm-p^2 element must kill a quadratic factor");
    }
}

fn coeff_box(bound: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out.sort_by_key(|o| o.iter().map(|x| x * x).sum::<i64>());
    out
}

/// Factor a nonzero integral ideal given by a generator.
pub fn factor_ideal(
    gen: &CycNum,
    primes_above: impl Fn(u64) -> Vec<PrimeIdealRecord>,
) -> IdealFactorization {
    assert!(gen.is_integral() && !gen.is_zero());
    let norm = gen.norm().abs();
    let n_int = norm.numer().clone();
    let mut factors: Vec<(PrimeIdealRecord, u32)> = Vec::new();
    for (p, _) in factor_u64(n_int.to_u64().expect("desk-scale norms fit u64")) {
        for rec in primes_above(p) {
            let mut k = 0u32;
            let mut cur = gen.clone();
            while let Some(q) = cur.div_exact_integral(&rec.generator) {
                cur = q;
                k += 1;
            }
            if k > 0 {
                factors.push((rec, k));
            }
        }
    }
    // verify: product of norms = |N(gen)| and the product generates (gen)
    let mut prod = CycNum::one();
    let mut norm_prod = Int::one();
    for (rec, k) in &factors {
        prod = &prod * &pow_cyc(&rec.generator, *k as usize);
        norm_prod *= Int::from(rec.norm()).pow(*k);
    }
    assert_eq!(norm_prod, n_int, "factor norms must multiply to the ideal norm");
    assert!(prod.is_associate(gen), "factor product must generate the ideal");
    let mut exps: Vec<u32> = factors.iter().map(|(_, k)| *k).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    let letters = ["p", "q", "r", "s"];
    let mut ty = String::new();
    for (i, e) in exps.iter().enumerate() {
        ty.push_str(letters[i]);
        if *e > 1 {
            ty.push_str(&format!("^{e}"));
        }
    }
    IdealFactorization {
        factors,
        type_string: ty,
        norm: n_int,
    }
}

pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Gamma_0(n) membership: integral, unit determinant, lower-left in n.
pub fn is_in_gamma0(m: &Mat2, level: &IdealLattice) -> bool {
    m.is_gl2_o() && level.contains(&m.c)
}

// ---------------------------------------------------------------------------
// Quotient ring O/n and P^1(O/n)
// ---------------------------------------------------------------------------

/// One local factor P^e of the level, with the data needed to normalize
/// P^1 coordinates at P.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub prime: PrimeIdealRecord,
    pub exponent: u32,
    /// lattice of P^e
    pub lattice: IdealLattice,
    /// residue field of P (for unit detection)
    pub rf: ResidueField,
    /// pi^e
    pub modulus: CycNum,
}

/// The quotient ring O/n with CRT data and P^1(O/n) machinery.
#[derive(Clone, Debug)]
pub struct LevelRing {
    pub generator: CycNum,
    pub lattice: IdealLattice,
    pub locals: Vec<LocalFactor>,
    /// CRT idempotents, one per local factor
    pub idempotents: Vec<CycNum>,
}

/// A point of P^1(O/n) in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    pub key: Vec<Int>,
}

impl LevelRing {
    pub fn new(generator: &CycNum, factorization: &IdealFactorization) -> LevelRing {
        let gen = generator.torsion_normalize();
        let lattice = IdealLattice::of_generator(&gen);
        let mut locals = Vec::new();
        for (rec, k) in &factorization.factors {
            let modulus = pow_cyc(&rec.generator, *k as usize);
            locals.push(LocalFactor {
                prime: rec.clone(),
                exponent: *k,
                lattice: IdealLattice::of_generator(&modulus),
                rf: ResidueField::build(rec),
                modulus,
            });
        }
        // idempotents: e_i = 1 mod P_i^{e_i}, 0 mod the rest
        let mut idempotents = Vec::new();
        for i in 0..locals.len() {
            let mi = &locals[i].modulus;
            let mut rest = CycNum::one();
            for (j, l) in locals.iter().enumerate() {
                if j != i {
                    rest = &rest * &l.modulus;
                }
            }
            // s*mi + t*rest = d (unit since the ideals are coprime)
            let (d, _s, t) = ext_gcd_o(mi, &rest);
            assert!(d.is_unit(), "local moduli must be coprime");
            let e = &(&t * &rest) * &d.inverse().unwrap();
            idempotents.push(lattice.reduce_cyc(&e));
        }
        LevelRing {
            generator: gen,
            lattice,
            locals,
            idempotents,
        }
    }

    pub fn norm(&self) -> Int {
        self.lattice.index()
    }

    /// |P^1(O/n)| = N(n) * prod (1 + 1/N(P)).
    pub fn p1_size_formula(&self) -> Int {
        let mut size = self.norm();
        for l in &self.locals {
            let np = Int::from(l.prime.norm());
            size = size / &np * (&np + 1);
        }
        size
    }

    fn local_unit(&self, i: usize, x: &CycNum) -> bool {
        !self.locals[i].rf.gf.is_zero(self.locals[i].rf.reduce_integral(x))
    }

    /// Inverse of x in O/P_i^{e_i}; x must be a unit there.
    fn local_inv(&self, i: usize, x: &CycNum) -> CycNum {
        let m = &self.locals[i].modulus;
        let (d, s, _t) = ext_gcd_o(x, m);
        assert!(d.is_unit(), "local inverse requires a unit");
        self.locals[i]
            .lattice
            .reduce_cyc(&(&s * &d.inverse().unwrap()))
    }

    /// Canonical coordinates of the P^1 class of (c, d); None if the pair is
    /// not unimodular mod n.
    pub fn p1_normalize(&self, c: &CycNum, d: &CycNum) -> Option<P1Point> {
        let mut parts: Vec<(CycNum, CycNum)> = Vec::new();
        for i in 0..self.locals.len() {
            let li = &self.locals[i].lattice;
            let ci = li.reduce_cyc(&li.reduce_cyc(c));
            let di = li.reduce_cyc(&li.reduce_cyc(d));
            if self.local_unit(i, &ci) {
                let inv = self.local_inv(i, &ci);
                parts.push((CycNum::one(), li.reduce_cyc(&(&inv * &di))));
            } else if self.local_unit(i, &di) {
                let inv = self.local_inv(i, &di);
                parts.push((li.reduce_cyc(&(&inv * &ci)), CycNum::one()));
            } else {
                return None;
            }
        }
        // CRT recombination
        let mut c_star = CycNum::zero();
        let mut d_star = CycNum::zero();
        for (i, (ci, di)) in parts.iter().enumerate() {
            c_star = &c_star + &(ci * &self.idempotents[i]);
            d_star = &d_star + &(di * &self.idempotents[i]);
        }
        c_star = self.lattice.reduce_cyc(&c_star);
        d_star = self.lattice.reduce_cyc(&d_star);
        let mut key = Vec::with_capacity(8);
        for x in [&c_star, &d_star] {
            for k in 0..4 {
                key.push(x.c[k].numer().clone());
            }
        }
        Some(P1Point { key })
    }

    pub fn p1_point_coords(&self, pt: &P1Point) -> (CycNum, CycNum) {
        let c = CycNum::new([
            Rat::from_integer(pt.key[0].clone()),
            Rat::from_integer(pt.key[1].clone()),
            Rat::from_integer(pt.key[2].clone()),
            Rat::from_integer(pt.key[3].clone()),
        ]);
        let d = CycNum::new([
            Rat::from_integer(pt.key[4].clone()),
            Rat::from_integer(pt.key[5].clone()),
            Rat::from_integer(pt.key[6].clone()),
            Rat::from_integer(pt.key[7].clone()),
        ]);
        (c, d)
    }

    /// All points of P^1(O/n).
    pub fn p1_points(&self) -> Vec<P1Point> {
        // local choices: (1, x) for x in O/P^e, or (pi y, 1) for y in O/P^{e-1}
        let mut local_choices: Vec<Vec<(CycNum, CycNum)>> = Vec::new();
        for l in &self.locals {
            let mut v = Vec::new();
            for x in l.lattice.residues() {
                v.push((CycNum::one(), x));
            }
            let sub = if l.exponent == 1 {
                vec![CycNum::zero()]
            } else {
                IdealLattice::of_generator(&pow_cyc(&l.prime.generator, l.exponent as usize - 1))
                    .residues()
            };
            for y in sub {
                v.push((l.lattice.reduce_cyc(&(&y * &l.prime.generator)), CycNum::one()));
            }
            local_choices.push(v);
        }
        // cartesian product, CRT-combined
        let mut out: Vec<P1Point> = Vec::new();
        let mut idx = vec![0usize; local_choices.len()];
        loop {
            let mut c = CycNum::zero();
            let mut d = CycNum::zero();
            for (i, choice) in idx.iter().enumerate() {
                let (ci, di) = &local_choices[i][*choice];
                c = &c + &(ci * &self.idempotents[i]);
                d = &d + &(di * &self.idempotents[i]);
            }
            let pt = self
                .p1_normalize(&c, &d)
                .expect("constructed pair is unimodular");
            out.push(pt);
            let mut i = 0;
            loop {
                idx[i] += 1;
                if idx[i] < local_choices[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
                if i == idx.len() {
                    out.sort();
                    out.dedup();
                    return out;
                }
            }
        }
    }

    /// The P^1 class of the bottom row of g (right-coset invariant of
    /// Gamma_0(n) g).
    pub fn p1_of_matrix(&self, g: &Mat2) -> P1Point {
        self.p1_normalize(&g.c, &g.d)
            .expect("GL2(O) rows are unimodular")
    }

    /// Right action of s on a P^1 point: (c d) -> (c d) s.
    pub fn p1_act(&self, pt: &P1Point, s: &Mat2) -> P1Point {
        let (c, d) = self.p1_point_coords(pt);
        let c2 = &(&c * &s.a) + &(&d * &s.c);
        let d2 = &(&c * &s.b) + &(&d * &s.d);
        self.p1_normalize(&c2, &d2)
            .expect("GL2(O) action preserves unimodularity")
    }

    /// Lift a P^1 point to a matrix in GL2(O) with that bottom row class.
    pub fn p1_lift(&self, pt: &P1Point) -> Mat2 {
        let (c0, d0) = self.p1_point_coords(pt);
        // adjust d by multiples of the level generator until gcd(c, d) = 1
        for k in coeff_box(2) {
            let shift = CycNum::from_int_coeffs(k);
            let d = &d0 + &(&shift * &self.generator);
            let c = c0.clone();
            if c.is_zero() && d.is_zero() {
                continue;
            }
            let (g, _s, _t) = ext_gcd_o(&c, &d);
            if !g.is_unit() {
                continue;
            }
            // s c + t d = g; bottom row (c, d), det = unit
            let (g, s, t) = ext_gcd_o(&c, &d);
            let ginv = g.inverse().unwrap();
            let a = &t * &ginv;
            let b = &(-&s) * &ginv;
            let m = Mat2::new(a, b, c, d);
            debug_assert!(m.is_gl2_o());
            debug_assert_eq!(self.p1_of_matrix(&m), *pt);
            return m;
        }
        panic!("failed to lift P^1 point to GL2(O)");
    }

    /// Is x in the ideal n?
    pub fn contains(&self, x: &CycNum) -> bool {
        self.lattice.contains(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;

    fn rec(label: &str, gen: &str, p: u64, e: u8, f: u8) -> PrimeIdealRecord {
        PrimeIdealRecord::new(label, CycNum::parse(gen).unwrap(), p, e, f)
    }

    #[test]
    fn split_patterns() {
        assert_eq!(split_rational_prime(13), SplitPattern { e: 1, f: 1, g: 4 });
        assert_eq!(split_rational_prime(11), SplitPattern { e: 1, f: 2, g: 2 });
        assert_eq!(split_rational_prime(2), SplitPattern { e: 2, f: 2, g: 1 });
        assert_eq!(split_rational_prime(3), SplitPattern { e: 2, f: 2, g: 1 });
    }

    #[test]
    fn search_finds_13_primes() {
        let recs = search_prime_generators(13).unwrap();
        assert_eq!(recs.len(), 4);
        for r in &recs {
            assert_eq!(r.generator.norm().abs(), rat_i64(13));
        }
    }

    #[test]
    fn search_finds_ramified() {
        let recs2 = search_prime_generators(2).unwrap();
        assert_eq!(recs2.len(), 1);
        assert_eq!(recs2[0].generator.norm().abs(), rat_i64(4));
        let recs3 = search_prime_generators(3).unwrap();
        assert_eq!(recs3[0].generator.norm().abs(), rat_i64(9));
        // (t^2+1)^2 is associate to 3
        let g3 = CycNum::parse("t^2+1").unwrap();
        assert!((&g3 * &g3).is_associate(&CycNum::from_i64(3)));
    }

    #[test]
    fn euclid_gcd_works() {
        let x = CycNum::parse("t^2+1").unwrap();
        let y = CycNum::from_i64(3);
        let g = gcd_o(&x, &y);
        assert!(g.is_associate(&x));
        let (d, s, t) = ext_gcd_o(&x, &CycNum::parse("2t^2-t-2").unwrap());
        assert!(d.is_unit());
        let lhs = &(&s * &x) + &(&t * &CycNum::parse("2t^2-t-2").unwrap());
        assert_eq!(lhs, d);
    }

    #[test]
    fn reduce_map_examples() {
        let p13 = rec("p_13,1", "-t^3+t^2+1", 13, 1, 1);
        let rf = ResidueField::build(&p13);
        // reduce(t) is the root killed by the generator
        let r = rf.reduce(&CycNum::parse("t").unwrap()).unwrap();
        let quartic = (r.0 * r.0 % 13 * r.0 % 13 * r.0 % 13 + 13 - r.0 * r.0 % 13 + 1) % 13;
        assert_eq!(quartic, 0);
        // generator reduces to 0; 1 reduces to 1
        assert!(rf.gf.is_zero(rf.reduce(&p13.generator).unwrap()));
        assert_eq!(rf.reduce(&CycNum::one()).unwrap(), rf.gf.one());
        // homomorphism spot check
        let x = CycNum::parse("2t^3-3t^2+1").unwrap();
        let y = CycNum::parse("t^2+5t-2").unwrap();
        let rx = rf.reduce(&x).unwrap();
        let ry = rf.reduce(&y).unwrap();
        assert_eq!(rf.reduce(&(&x * &y)).unwrap(), rf.gf.mul(rx, ry));
        assert_eq!(rf.reduce(&(&x + &y)).unwrap(), rf.gf.add(rx, ry));
    }

    #[test]
    fn reduce_with_denominator() {
        let p13 = rec("p_13,1", "-t^3+t^2+1", 13, 1, 1);
        let rf = ResidueField::build(&p13);
        // 1/2 reduces to inverse of 2
        let half = CycNum::from_rat(Rat::new(Int::one(), Int::from(2)));
        let r = rf.reduce(&half).unwrap();
        assert_eq!(rf.gf.mul(r, (2, 0)), rf.gf.one());
        // 1/13 is not reducible
        let bad = CycNum::from_rat(Rat::new(Int::one(), Int::from(13)));
        assert!(rf.reduce(&bad).is_err());
    }

    #[test]
    fn factor_level_441() {
        let fix = |p: u64| -> Vec<PrimeIdealRecord> { search_prime_generators(p).unwrap() };
        let gen = CycNum::parse("5t^2-1").unwrap();
        let fac = factor_ideal(&gen, fix);
        assert_eq!(fac.norm, Int::from(441));
        assert_eq!(fac.type_string, "pq");
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn factor_level_4096() {
        let fix = |p: u64| -> Vec<PrimeIdealRecord> { search_prime_generators(p).unwrap() };
        let fac = factor_ideal(&CycNum::from_i64(8), fix);
        assert_eq!(fac.type_string, "p^6");
        assert_eq!(fac.factors[0].1, 6);
    }

    #[test]
    fn gamma0_membership() {
        let level = IdealLattice::of_generator(&CycNum::parse("t^2+1").unwrap());
        let id = Mat2::identity();
        assert!(is_in_gamma0(&id, &level));
        let m = Mat2::new(
            CycNum::one(),
            CycNum::zero(),
            CycNum::parse("t^2+1").unwrap(),
            CycNum::one(),
        );
        assert!(is_in_gamma0(&m, &level));
        let bad = Mat2::new(CycNum::one(), CycNum::zero(), CycNum::one(), CycNum::one());
        assert!(!is_in_gamma0(&bad, &level));
    }

    #[test]
    fn p1_sizes() {
        let fix = |p: u64| -> Vec<PrimeIdealRecord> { search_prime_generators(p).unwrap() };
        // prime level of norm 13: |P^1| = 14
        let recs = search_prime_generators(13).unwrap();
        let gen = recs[0].generator.clone();
        let fac = factor_ideal(&gen, fix);
        let ring = LevelRing::new(&gen, &fac);
        let pts = ring.p1_points();
        assert_eq!(Int::from(pts.len()), ring.p1_size_formula());
        assert_eq!(pts.len(), 14);
        // lift round-trips
        for pt in pts.iter().take(5) {
            let m = ring.p1_lift(pt);
            assert_eq!(ring.p1_of_matrix(&m), *pt);
        }
    }

    #[test]
    fn p1_scaling_invariance() {
        let fix = |p: u64| -> Vec<PrimeIdealRecord> { search_prime_generators(p).unwrap() };
        let gen = CycNum::parse("5t^2-1").unwrap();
        let fac = factor_ideal(&gen, fix);
        let ring = LevelRing::new(&gen, &fac);
        let c = CycNum::parse("t+2").unwrap();
        let d = CycNum::parse("t^3-1").unwrap();
        let lam = CycNum::parse("t^2+3").unwrap(); // unit mod n (check below)
        let p1 = ring.p1_normalize(&c, &d);
        let p2 = ring.p1_normalize(&(&c * &lam), &(&d * &lam));
        if let (Some(a), Some(b)) = (&p1, &p2) {
            assert_eq!(a, b);
        } else {
            panic!("points should normalize");
        }
    }
}
