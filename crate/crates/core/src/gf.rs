//! Table-backed finite fields `F_{p^k}` with tower-transparent element codes.
//!
//! An element is identified by a `u64` code: the absolute coefficient vector
//! over `F_p` (low degree first) packed in base `p`.  An extension field built
//! on top of a base field reuses the base codes verbatim, so embedding an
//! element of the base into the extension is the identity on codes.
//!
//! Every field is fully table-backed (exp/log tables built at construction),
//! which caps the supported order; the default cap is 2^22 elements.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Default maximum field order for table construction.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 22;

/// Hard ceiling: log table entries are u32 indices.
const ABSOLUTE_CAP: u64 = 1 << 31;

/// An element of some [`Field`], identified by its packed code.
///
/// The code is only meaningful relative to the field that produced it; the
/// same code names the same element in every extension tower built on that
/// field.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElement(pub u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u64 {
        self.0
    }
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldData {
    p: u64,
    abs_degree: u32,
    order: u64,
    base: Option<Field>,
    rel_degree: u32,
    /// Modulus polynomial over the base field, low degree first, including the
    /// leading 1. Empty for prime fields.
    modulus: Vec<u64>,
    generator: u64,
    /// exp[j] = generator^j for j in 0..order-1.
    exp: Vec<u64>,
    /// log[code] = j with exp[j] = code; u32::MAX for code 0.
    log: Vec<u32>,
    cap: u64,
    trace: OnceLock<Vec<u64>>,
}

/// A finite field handle; cheap to clone and share across threads.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.order == other.0.order
                && self.0.modulus == other.0.modulus
                && self.0.generator == other.0.generator
                && self.0.base == other.0.base)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.order)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors by trial division.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power q = p^k; errors if q is not a prime power.
pub fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::domain(format!("{q} is not a prime power")));
    }
    let ps = prime_factors(q);
    if ps.len() != 1 {
        return Err(Error::domain(format!("{q} is not a prime power")));
    }
    let p = ps[0];
    let mut k = 0u32;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Ok((p, k))
}

/// Largest divisor of n coprime to p.
pub fn prime_to_p_part(mut n: u64, p: u64) -> u64 {
    while n % p == 0 {
        n /= p;
    }
    n
}

// ---------------------------------------------------------------------------
// Polynomial helpers over an already-built base field (codes as coefficients).
// Vectors are low degree first and not necessarily trimmed.
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(b: &Field, x: &[u64], y: &[u64]) -> Vec<u64> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; x.len() + y.len() - 1];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj == 0 {
                continue;
            }
            let prod = b.mul(FieldElement(xi), FieldElement(yj));
            out[i + j] = b.add(FieldElement(out[i + j]), prod).0;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of x modulo the monic polynomial f.
fn poly_rem(b: &Field, x: &[u64], f: &[u64]) -> Vec<u64> {
    debug_assert_eq!(*f.last().unwrap(), 1, "modulus must be monic");
    let mut r: Vec<u64> = x.to_vec();
    poly_trim(&mut r);
    let df = f.len() - 1;
    while r.len() > df {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        if lead != 0 {
            for i in 0..df {
                let s = b.mul(FieldElement(lead), FieldElement(f[i]));
                r[shift + i] = b.sub(FieldElement(r[shift + i]), s).0;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn poly_sub(b: &Field, x: &[u64], y: &[u64]) -> Vec<u64> {
    let n = x.len().max(y.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let xi = x.get(i).copied().unwrap_or(0);
        let yi = y.get(i).copied().unwrap_or(0);
        out[i] = b.sub(FieldElement(xi), FieldElement(yi)).0;
    }
    poly_trim(&mut out);
    out
}

/// t^e mod f by square and multiply.
fn poly_pow_t(b: &Field, e: u64, f: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = poly_rem(b, &[0, 1], f);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(b, &poly_mul(b, &result, &base), f);
        }
        base = poly_rem(b, &poly_mul(b, &base, &base), f);
        e >>= 1;
    }
    result
}

fn poly_gcd(b: &Field, x: &[u64], y: &[u64]) -> Vec<u64> {
    let mut a: Vec<u64> = x.to_vec();
    let mut c: Vec<u64> = y.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut c);
    while !c.is_empty() {
        // Make c monic before reducing so poly_rem applies.
        let lead = *c.last().unwrap();
        if lead != 1 {
            let inv = b.inv(FieldElement(lead)).expect("nonzero lead");
            for ci in c.iter_mut() {
                *ci = b.mul(FieldElement(*ci), inv).0;
            }
        }
        let r = poly_rem(b, &a, &c);
        a = c;
        c = r;
    }
    a
}

/// Rabin irreducibility test for a monic polynomial of degree k over base b.
fn poly_is_irreducible(b: &Field, f: &[u64]) -> bool {
    let k = (f.len() - 1) as u32;
    if k == 0 {
        return false;
    }
    let q = b.order();
    // t^(q^k) == t mod f
    let qk = q.checked_pow(k).expect("order within cap");
    let tq = poly_pow_t(b, qk, f);
    if tq != poly_rem(b, &[0, 1], f) {
        return false;
    }
    for r in prime_factors(k as u64) {
        let e = q.checked_pow(k / r as u32).expect("order within cap");
        let tqe = poly_pow_t(b, e, f);
        let diff = poly_sub(b, &tqe, &[0, 1]);
        let g = poly_gcd(b, f, &diff);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree k over b,
/// comparing coefficient tuples (c_0, c_1, ..., c_{k-1}) with c_0 most
/// significant and base-field codes as the coefficient order.
fn find_modulus(b: &Field, k: u32) -> Vec<u64> {
    let q = b.order();
    let total = q.checked_pow(k).expect("order within cap");
    for counter in 0..total {
        let mut f = vec![0u64; k as usize + 1];
        f[k as usize] = 1;
        // c_0 is the most significant digit of the counter.
        let mut rem = counter;
        for i in 0..k as usize {
            let place = q.pow(k - 1 - i as u32);
            f[i] = rem / place;
            rem %= place;
        }
        if poly_is_irreducible(b, &f) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of each degree exists")
}

// ---------------------------------------------------------------------------
// Field construction
// ---------------------------------------------------------------------------

/// Arithmetic used while the extension's own tables are still being built:
/// decode codes to coefficient vectors over the base and reduce mod `modulus`.
struct SlowExt<'a> {
    base: &'a Field,
    modulus: &'a [u64],
    rel_degree: usize,
}

impl<'a> SlowExt<'a> {
    fn decode(&self, code: u64) -> Vec<u64> {
        let q = self.base.order();
        let mut v = Vec::with_capacity(self.rel_degree);
        let mut c = code;
        for _ in 0..self.rel_degree {
            v.push(c % q);
            c /= q;
        }
        let mut v = v;
        poly_trim(&mut v);
        v
    }

    fn encode(&self, poly: &[u64]) -> u64 {
        let q = self.base.order();
        debug_assert!(poly.len() <= self.rel_degree);
        let mut code = 0u64;
        for &c in poly.iter().rev() {
            code = code * q + c;
        }
        code
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let pa = self.decode(a);
        let pb = self.decode(b);
        let prod = poly_mul(self.base, &pa, &pb);
        self.encode(&poly_rem(self.base, &prod, self.modulus))
    }

    fn pow(&self, mut x: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }
}

/// Smallest code (skipping `rank` hits) whose multiplicative order is ord.
fn find_generator(ord: u64, mut pow: impl FnMut(u64, u64) -> u64, rank: usize) -> u64 {
    let factors = prime_factors(ord);
    let mut skipped = 0usize;
    for c in 1..=ord + 1 {
        let full_order = factors.iter().all(|&r| pow(c, ord / r) != 1);
        if full_order {
            if skipped == rank {
                return c;
            }
            skipped += 1;
        }
    }
    panic!("generator must exist (rank {rank} too large for order {ord})");
}

fn build_tables(order: u64, generator: u64, mul: impl Fn(u64, u64) -> u64) -> (Vec<u64>, Vec<u32>) {
    let n = (order - 1) as usize;
    let mut exp = vec![0u64; n.max(1)];
    let mut log = vec![u32::MAX; order as usize];
    let mut cur = 1u64;
    for (j, entry) in exp.iter_mut().enumerate() {
        *entry = cur;
        debug_assert_eq!(log[cur as usize], u32::MAX, "generator order too small");
        log[cur as usize] = j as u32;
        cur = mul(cur, generator);
    }
    assert_eq!(cur, 1, "generator order mismatch");
    (exp, log)
}

fn make_prime_field(p: u64, cap: u64, rank: usize) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let cap = cap.min(ABSOLUTE_CAP);
    if p > cap {
        return Err(Error::cap(format!("field order {p} exceeds table cap {cap}")));
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powmod = |mut x: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, x);
            }
            x = mulmod(x, x);
            e >>= 1;
        }
        acc
    };
    let generator = find_generator(p - 1, powmod, rank);
    let (exp, log) = build_tables(p, generator, mulmod);
    Ok(Field(Arc::new(FieldData {
        p,
        abs_degree: 1,
        order: p,
        base: None,
        rel_degree: 1,
        modulus: Vec::new(),
        generator,
        exp,
        log,
        cap,
        trace: OnceLock::new(),
    })))
}

/// Builds `F_{p^k}` with the default table cap.
pub fn make_field(p: u64, k: u32) -> Result<Field> {
    make_field_capped(p, k, DEFAULT_TABLE_CAP)
}

/// Builds `F_{p^k}` with an explicit table cap (number of elements).
pub fn make_field_capped(p: u64, k: u32, cap: u64) -> Result<Field> {
    let prime = make_prime_field(p, cap, 0)?;
    prime.make_extension(k)
}

/// Builds `F_q` for a prime power `q`.
pub fn make_field_order(q: u64) -> Result<Field> {
    let (p, k) = split_prime_power(q)?;
    make_field(p, k)
}

impl Field {
    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn order(&self) -> u64 {
        self.0.order
    }
    pub fn abs_degree(&self) -> u32 {
        self.0.abs_degree
    }
    pub fn rel_degree(&self) -> u32 {
        self.0.rel_degree
    }
    pub fn cap(&self) -> u64 {
        self.0.cap
    }
    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }
    /// Modulus over the base field, low degree first with the leading 1
    /// included; empty for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.0.generator)
    }

    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code < self.0.order {
            Ok(FieldElement(code))
        } else {
            Err(Error::domain(format!(
                "code {code} out of range for field of order {}",
                self.0.order
            )))
        }
    }

    /// Embeds an integer via the prime subfield (reduction mod p).
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.0.p as i64) as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.order).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            out += (x % p + y % p) % p * place;
            place *= p;
            x /= p;
            y /= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 {
            out += (p - x % p) % p * place;
            place *= p;
            x /= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.0.order - 1;
        let j = (self.0.log[a.0 as usize] as u64 + self.0.log[b.0 as usize] as u64) % n;
        FieldElement(self.0.exp[j as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::domain("inverse of zero"));
        }
        let n = self.0.order - 1;
        let j = (n - self.0.log[a.0 as usize] as u64) % n;
        Ok(FieldElement(self.0.exp[j as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.0 == 0 {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let n = self.0.order - 1;
        let j = (self.0.log[a.0 as usize] as u128 * (e % n) as u128 % n as u128) as u64;
        FieldElement(self.0.exp[j as usize])
    }

    /// Power with a possibly negative exponent; errors on 0^negative.
    pub fn pow_signed(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow(inv, e.unsigned_abs()))
        }
    }

    /// Index j with generator^j = x; errors on zero.
    pub fn discrete_log(&self, x: FieldElement) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::domain("discrete log of zero"));
        }
        Ok(self.0.log[x.0 as usize] as u64)
    }

    /// generator^j without re-multiplication.
    pub fn exp(&self, j: u64) -> FieldElement {
        let n = self.0.order - 1;
        FieldElement(self.0.exp[(j % n) as usize])
    }

    /// Absolute trace down to the prime field, returned as an integer in 0..p.
    pub fn abs_trace(&self, x: FieldElement) -> u64 {
        let p = self.0.p;
        let mut acc = x;
        let mut y = x;
        for _ in 1..self.0.abs_degree {
            y = self.pow(y, p);
            acc = self.add(acc, y);
        }
        debug_assert!(acc.0 < p, "trace lands in the prime subfield");
        acc.0
    }

    /// Lazily built table of absolute traces for every element code.
    pub fn trace_table(&self) -> &[u64] {
        self.0.trace.get_or_init(|| {
            (0..self.0.order)
                .map(|c| self.abs_trace(FieldElement(c)))
                .collect()
        })
    }

    /// Relative trace to a base field in the tower: x + x^Q + ... where Q is
    /// the base order. The base must be a tower stage of this field.
    pub fn rel_trace(&self, x: FieldElement, sub_order: u64) -> FieldElement {
        debug_assert!(self.0.order > 1 && sub_order > 1);
        let mut steps = 1u32;
        let mut m = sub_order;
        while m < self.0.order {
            m *= sub_order;
            steps += 1;
        }
        debug_assert_eq!(m, self.0.order, "sub_order must be a tower stage");
        let mut acc = x;
        let mut y = x;
        for _ in 1..steps {
            y = self.pow(y, sub_order);
            acc = self.add(acc, y);
        }
        acc
    }

    /// Extension of relative degree mu, inheriting this field's cap.
    pub fn make_extension(&self, mu: u32) -> Result<Field> {
        self.make_extension_ranked(mu, 0)
    }

    /// Extension whose canonical generator is the (rank+1)-th smallest
    /// full-order element instead of the smallest. Used to check that
    /// generator choice does not leak into integer outputs.
    pub fn make_extension_ranked(&self, mu: u32, rank: usize) -> Result<Field> {
        if mu == 0 {
            return Err(Error::domain("extension degree must be positive"));
        }
        if mu == 1 && rank == 0 {
            return Ok(self.clone());
        }
        if mu == 1 {
            // Rebuild the same field with an alternate generator.
            return if let Some(base) = &self.0.base {
                base.make_extension_ranked(self.0.rel_degree, rank)
            } else {
                make_prime_field(self.0.p, self.0.cap, rank)
            };
        }
        let cap = self.0.cap;
        let order = self
            .0
            .order
            .checked_pow(mu)
            .filter(|&o| o <= cap)
            .ok_or_else(|| {
                Error::cap(format!(
                    "extension order {}^{mu} exceeds table cap {cap}",
                    self.0.order
                ))
            })?;
        let modulus = find_modulus(self, mu);
        let slow = SlowExt {
            base: self,
            modulus: &modulus,
            rel_degree: mu as usize,
        };
        let generator = find_generator(order - 1, |x, e| slow.pow(x, e), rank);
        let (exp, log) = build_tables(order, generator, |a, b| slow.mul(a, b));
        Ok(Field(Arc::new(FieldData {
            p: self.0.p,
            abs_degree: self.0.abs_degree * mu,
            order,
            base: Some(self.clone()),
            rel_degree: mu,
            modulus,
            generator,
            exp,
            log,
            cap,
        trace: OnceLock::new(),
        })))
    }

    /// Renders an element deterministically: prime fields print the code,
    /// extensions print 0, 1 or g^j.
    pub fn fmt_element(&self, x: FieldElement) -> String {
        if self.0.abs_degree == 1 {
            return x.0.to_string();
        }
        match x.0 {
            0 => "0".into(),
            1 => "1".into(),
            _ => format!("g^{}", self.0.log[x.0 as usize]),
        }
    }
}
