//! Multiplicative characters, Gauss and Jacobi sums, twisted power sums, and
//! power-system counting over table-backed finite fields.
//!
//! Characters are indexed by residue fractions: the character of index
//! `alpha = a/d` sends the canonical generator `w` to `e^(2*pi*i*alpha)`, so
//! `chi_alpha(w^j) = e^(2*pi*i*alpha*j)`. Closed-form identities are used
//! wherever they give exact integers; everything analytic carries a running
//! floating-point error bound.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

// ---------------------------------------------------------------------------
// Residue fractions (rationals mod 1)
// ---------------------------------------------------------------------------

/// A rational number modulo 1, kept reduced with `0 <= num < den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ResidueFraction {
    num: u64,
    den: u64,
}

impl ResidueFraction {
    pub const ZERO: ResidueFraction = ResidueFraction { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("fraction with zero denominator"));
        }
        let d = den.unsigned_abs();
        let n = if den < 0 { -num } else { num }.rem_euclid(d as i64) as u64;
        let g = n.gcd(&d);
        Ok(ResidueFraction {
            num: n / g,
            den: d / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }
    pub fn den(&self) -> u64 {
        self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add(&self, other: &ResidueFraction) -> ResidueFraction {
        let den = (self.den as u128) * (other.den as u128);
        let num = (self.num as u128) * (other.den as u128)
            + (other.num as u128) * (self.den as u128);
        let num = num % den;
        let g = num.gcd(&den);
        ResidueFraction {
            num: (num / g) as u64,
            den: (den / g) as u64,
        }
    }

    pub fn neg(&self) -> ResidueFraction {
        if self.num == 0 {
            return *self;
        }
        ResidueFraction {
            num: self.den - self.num,
            den: self.den,
        }
    }

    pub fn sub(&self, other: &ResidueFraction) -> ResidueFraction {
        self.add(&other.neg())
    }

    /// Multiplication by an integer, reduced mod 1.
    pub fn scale(&self, k: i64) -> ResidueFraction {
        let num = (self.num as i128 * k as i128).rem_euclid(self.den as i128) as u64;
        let g = num.gcd(&self.den);
        ResidueFraction {
            num: num / g,
            den: self.den / g,
        }
    }

    /// Value as f64 in [0, 1).
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for ResidueFraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ResidueFraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for ResidueFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

// ---------------------------------------------------------------------------
// Complex values with error tracking
// ---------------------------------------------------------------------------

const EPS: f64 = f64::EPSILON;

/// A complex number together with a conservative bound on its accumulated
/// floating-point error.
#[derive(Clone, Copy, Debug)]
pub struct ComplexValue {
    pub value: Complex64,
    pub err: f64,
}

impl ComplexValue {
    pub const ZERO: ComplexValue = ComplexValue {
        value: Complex64::new(0.0, 0.0),
        err: 0.0,
    };

    pub fn exact(v: f64) -> Self {
        ComplexValue {
            value: Complex64::new(v, 0.0),
            err: 0.0,
        }
    }

    pub fn from_int(v: i128) -> Self {
        let f = v as f64;
        ComplexValue {
            value: Complex64::new(f, 0.0),
            err: EPS * f.abs(),
        }
    }

    /// The root of unity e^(2*pi*i*frac). Values on the axes are exact.
    pub fn unit(frac: ResidueFraction) -> Self {
        let (n, d) = (frac.num(), frac.den());
        let value = if n == 0 {
            Complex64::new(1.0, 0.0)
        } else if 4 * n == d {
            Complex64::new(0.0, 1.0)
        } else if 2 * n == d {
            Complex64::new(-1.0, 0.0)
        } else if 4 * n == 3 * d {
            Complex64::new(0.0, -1.0)
        } else {
            Complex64::cis(std::f64::consts::TAU * frac.to_f64())
        };
        ComplexValue { value, err: 4.0 * EPS }
    }

    pub fn add(&self, other: &ComplexValue) -> ComplexValue {
        let value = self.value + other.value;
        ComplexValue {
            value,
            err: self.err + other.err + EPS * value.norm(),
        }
    }

    pub fn sub(&self, other: &ComplexValue) -> ComplexValue {
        let value = self.value - other.value;
        ComplexValue {
            value,
            err: self.err + other.err + EPS * value.norm(),
        }
    }

    pub fn mul(&self, other: &ComplexValue) -> ComplexValue {
        let value = self.value * other.value;
        ComplexValue {
            value,
            err: self.err * other.value.norm()
                + other.err * self.value.norm()
                + self.err * other.err
                + 2.0 * EPS * value.norm(),
        }
    }

    pub fn div(&self, other: &ComplexValue) -> Result<ComplexValue> {
        let d = other.value.norm();
        if d == 0.0 {
            return Err(Error::domain("division by zero complex value"));
        }
        let value = self.value / other.value;
        ComplexValue {
            value,
            err: (self.err + value.norm() * other.err) / d + 2.0 * EPS * value.norm(),
        }
        .validated()
    }

    fn validated(self) -> Result<ComplexValue> {
        if self.value.is_finite() {
            Ok(self)
        } else {
            Err(Error::domain("non-finite complex value"))
        }
    }

    pub fn scale(&self, s: f64) -> ComplexValue {
        let value = self.value * s;
        ComplexValue {
            value,
            err: self.err * s.abs() + EPS * value.norm(),
        }
    }

    pub fn neg(&self) -> ComplexValue {
        ComplexValue {
            value: -self.value,
            err: self.err,
        }
    }

    pub fn conj(&self) -> ComplexValue {
        ComplexValue {
            value: self.value.conj(),
            err: self.err,
        }
    }

    pub fn norm(&self) -> f64 {
        self.value.norm()
    }

    pub fn approx_eq(&self, other: &ComplexValue, tol: f64) -> bool {
        (self.value - other.value).norm() <= tol
    }

    /// Nearest integer, requiring the value to be within `tol` of it and of
    /// the real axis.
    pub fn round_to_int(&self, tol: f64) -> Result<i128> {
        let re = self.value.re;
        let rounded = re.round();
        if self.value.im.abs() > tol || (re - rounded).abs() > tol {
            return Err(Error::domain(format!(
                "value {:+.6e}{:+.6e}i is not within {tol:.1e} of an integer",
                re, self.value.im
            )));
        }
        if rounded.abs() >= i128::MAX as f64 {
            return Err(Error::domain("integer out of range"));
        }
        Ok(rounded as i128)
    }
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

/// A character of the multiplicative group of a field, indexed by the residue
/// fraction `alpha`; the canonical generator maps to `e^(2*pi*i*alpha)`.
#[derive(Clone, Debug)]
pub struct MultiplicativeCharacter {
    field: Field,
    alpha: ResidueFraction,
}

impl MultiplicativeCharacter {
    pub fn new(field: &Field, alpha: ResidueFraction) -> Result<Self> {
        let n = field.order() - 1;
        if n % alpha.den() != 0 {
            return Err(Error::domain(format!(
                "character index {alpha} has order not dividing {n}"
            )));
        }
        Ok(MultiplicativeCharacter {
            field: field.clone(),
            alpha,
        })
    }

    /// The character sending the generator to e^(2*pi*i*k/(q-1)).
    pub fn from_index(field: &Field, k: u64) -> Self {
        let n = field.order() - 1;
        let alpha = ResidueFraction::new((k % n) as i64, n as i64).expect("n > 0");
        MultiplicativeCharacter {
            field: field.clone(),
            alpha,
        }
    }

    pub fn trivial(field: &Field) -> Self {
        MultiplicativeCharacter {
            field: field.clone(),
            alpha: ResidueFraction::ZERO,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn alpha(&self) -> ResidueFraction {
        self.alpha
    }
    pub fn is_trivial(&self) -> bool {
        self.alpha.is_zero()
    }
    /// Order of the character in the dual group.
    pub fn order(&self) -> u64 {
        self.alpha.den()
    }

    pub fn eval(&self, x: FieldElement) -> Result<ComplexValue> {
        let j = self.field.discrete_log(x)?;
        Ok(ComplexValue::unit(self.alpha.scale(j as i64)))
    }

    /// chi(-1), exactly +-1.
    pub fn at_minus_one(&self) -> f64 {
        let minus_one = self.field.neg(FieldElement::ONE);
        let j = self.field.discrete_log(minus_one).expect("-1 is nonzero");
        let frac = self.alpha.scale(j as i64);
        // -1 squares to 1, so the value is a second root of unity.
        debug_assert!(frac.den() <= 2);
        if frac.is_zero() {
            1.0
        } else {
            -1.0
        }
    }

    pub fn conj(&self) -> Self {
        MultiplicativeCharacter {
            field: self.field.clone(),
            alpha: self.alpha.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::domain("characters live on different fields"));
        }
        Ok(MultiplicativeCharacter {
            field: self.field.clone(),
            alpha: self.alpha.add(&other.alpha),
        })
    }

    pub fn pow(&self, k: i64) -> Self {
        MultiplicativeCharacter {
            field: self.field.clone(),
            alpha: self.alpha.scale(k),
        }
    }
}

/// The canonical additive character: psi(x) = e^(2*pi*i*Tr(x)/p).
pub fn psi(field: &Field, x: FieldElement) -> ComplexValue {
    let tr = field.abs_trace(x);
    ComplexValue::unit(ResidueFraction::new(tr as i64, field.p() as i64).expect("p > 0"))
}

// ---------------------------------------------------------------------------
// Gauss sums
// ---------------------------------------------------------------------------

/// The twisted Gauss sum `g_a(psi, chi) = sum_{u != 0} psi(a*u) chi(u)`.
///
/// For `a = 0` or a trivial character the exact closed-form value is
/// returned; the generic case is computed by direct summation in O(q).
pub fn gauss_sum(chi: &MultiplicativeCharacter, a: FieldElement) -> ComplexValue {
    let f = chi.field();
    let q = f.order();
    if a.is_zero() {
        return if chi.is_trivial() {
            ComplexValue::from_int(q as i128 - 1)
        } else {
            ComplexValue::ZERO
        };
    }
    if chi.is_trivial() {
        // sum over u != 0 of psi(a*u) = -1.
        return ComplexValue::from_int(-1);
    }
    let traces = f.trace_table();
    let p = f.p() as i64;
    let la = f.discrete_log(a).expect("a nonzero") as i64;
    let alpha = chi.alpha();
    let mut acc = ComplexValue::ZERO;
    for j in 0..q - 1 {
        let au = f.exp((la + j as i64) as u64);
        let tr = traces[au.code() as usize] as i64;
        let frac = alpha
            .scale(j as i64)
            .add(&ResidueFraction::new(tr, p).expect("p > 0"));
        acc = acc.add(&ComplexValue::unit(frac));
    }
    acc
}

// ---------------------------------------------------------------------------
// Jacobi sums
// ---------------------------------------------------------------------------

fn check_same_field(chars: &[MultiplicativeCharacter]) -> Result<&Field> {
    let first = chars
        .first()
        .ok_or_else(|| Error::domain("empty character list"))?;
    for c in chars {
        if c.field() != first.field() {
            return Err(Error::domain("characters live on different fields"));
        }
    }
    Ok(first.field())
}

/// Jacobi sum over tuples with coordinate sum 1, all coordinates nonzero.
pub fn jacobi(chars: &[MultiplicativeCharacter]) -> Result<ComplexValue> {
    let f = check_same_field(chars)?.clone();
    let q = f.order() as i128;
    let k = chars.len();
    let nontrivial: Vec<MultiplicativeCharacter> =
        chars.iter().filter(|c| !c.is_trivial()).cloned().collect();
    let s = k - nontrivial.len();
    if s == k {
        // ((q-1)^k + (-1)^(k-1)) / q
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let v = ((q - 1).pow(k as u32) + sign) / q;
        return Ok(ComplexValue::from_int(v));
    }
    if s > 0 {
        let inner = jacobi(&nontrivial)?;
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(inner.scale(sign));
    }
    // All characters nontrivial.
    let mut product = chars[0].clone();
    for c in &chars[1..] {
        product = product.mul(c)?;
    }
    if product.is_trivial() {
        if k == 1 {
            // Impossible: a single nontrivial character has nontrivial
            // product; kept for completeness.
            return Ok(ComplexValue::from_int(1));
        }
        let last = &chars[k - 1];
        let inner = jacobi(&chars[..k - 1])?;
        return Ok(inner.scale(-last.at_minus_one()));
    }
    if k == 1 {
        // Sum over the single tuple (1).
        return Ok(ComplexValue::from_int(1));
    }
    let mut num = gauss_sum(&chars[0], FieldElement::ONE);
    for c in &chars[1..] {
        num = num.mul(&gauss_sum(c, FieldElement::ONE));
    }
    let den = gauss_sum(&product, FieldElement::ONE);
    num.div(&den)
}

/// Jacobi sum over tuples with coordinate sum 0, all coordinates nonzero.
pub fn jacobi0(chars: &[MultiplicativeCharacter]) -> Result<ComplexValue> {
    let f = check_same_field(chars)?.clone();
    let q = f.order() as i128;
    let k = chars.len();
    let nontrivial: Vec<MultiplicativeCharacter> =
        chars.iter().filter(|c| !c.is_trivial()).cloned().collect();
    let s = k - nontrivial.len();
    if s == k {
        // ((q-1)^k + (-1)^k (q-1)) / q
        let sign: i128 = if k % 2 == 0 { 1 } else { -1 };
        let v = ((q - 1).pow(k as u32) + sign * (q - 1)) / q;
        return Ok(ComplexValue::from_int(v));
    }
    if s > 0 {
        let inner = jacobi0(&nontrivial)?;
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(inner.scale(sign));
    }
    let mut product = chars[0].clone();
    for c in &chars[1..] {
        product = product.mul(c)?;
    }
    if !product.is_trivial() {
        return Ok(ComplexValue::ZERO);
    }
    if k == 1 {
        // Single nontrivial character with trivial product cannot happen.
        return Ok(ComplexValue::ZERO);
    }
    let last = &chars[k - 1];
    let inner = jacobi(&chars[..k - 1])?;
    Ok(inner.scale(last.at_minus_one() * (q - 1) as f64))
}

/// Brute-force Jacobi sum (coordinate sum 1). Capped at k <= 3, q <= 64.
pub fn jacobi_brute(chars: &[MultiplicativeCharacter]) -> Result<ComplexValue> {
    jacobi_brute_with_target(chars, FieldElement::ONE)
}

/// Brute-force Jacobi sum over tuples with coordinate sum 0.
pub fn jacobi0_brute(chars: &[MultiplicativeCharacter]) -> Result<ComplexValue> {
    jacobi_brute_with_target(chars, FieldElement::ZERO)
}

fn jacobi_brute_with_target(
    chars: &[MultiplicativeCharacter],
    target: FieldElement,
) -> Result<ComplexValue> {
    let f = check_same_field(chars)?.clone();
    let k = chars.len();
    if k > 3 || f.order() > 64 {
        return Err(Error::cap("brute-force Jacobi sums capped at k <= 3, q <= 64"));
    }
    let mut acc = ComplexValue::ZERO;
    let mut tuple = vec![FieldElement::ZERO; k];
    fn rec(
        f: &Field,
        chars: &[MultiplicativeCharacter],
        tuple: &mut Vec<FieldElement>,
        idx: usize,
        target: FieldElement,
        acc: &mut ComplexValue,
    ) -> Result<()> {
        if idx == chars.len() - 1 {
            let mut sum = target;
            for &t in tuple[..idx].iter() {
                sum = f.sub(sum, t);
            }
            if sum.is_zero() {
                return Ok(());
            }
            tuple[idx] = sum;
            let mut term = ComplexValue::from_int(1);
            for (c, &t) in chars.iter().zip(tuple.iter()) {
                term = term.mul(&c.eval(t)?);
            }
            *acc = acc.add(&term);
            return Ok(());
        }
        for u in f.elements().skip(1) {
            tuple[idx] = u;
            rec(f, chars, tuple, idx + 1, target, acc)?;
        }
        Ok(())
    }
    rec(&f, chars, &mut tuple, 0, target, &mut acc)?;
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Fractional character powers and twisted power sums
// ---------------------------------------------------------------------------

/// The canonical m-th root `chi^(1/m)` of a character, defined when
/// `gcd(m, q-1)` divides the integer index of `chi`.
///
/// With `chi = chi_{k/(q-1)}`, `d = gcd(m, q-1)`, and `s` the minimal
/// nonnegative solution of `m*s = d (mod q-1)`, the root has index
/// `k*s/((q-1)*d)` mod 1.
pub fn frac_power_char(
    chi: &MultiplicativeCharacter,
    m: u64,
) -> Result<MultiplicativeCharacter> {
    if m == 0 {
        return Err(Error::domain("fractional power with m = 0"));
    }
    let f = chi.field().clone();
    let n = f.order() - 1;
    let alpha = chi.alpha();
    let k = alpha.num() * (n / alpha.den());
    let ext = (m as i64).extended_gcd(&(n as i64));
    let d = ext.gcd as u64;
    if k % d != 0 {
        return Err(Error::domain(format!(
            "character index {k}/{n} has no canonical 1/{m} power (gcd {d} does not divide {k})"
        )));
    }
    let step = (n / d) as i64;
    let s = ext.x.rem_euclid(step.max(1));
    let num = (k as i128) * (s as i128);
    let den = (n as i128) * (d as i128);
    let alpha_root = ResidueFraction::new((num % den) as i64, den as i64)?;
    MultiplicativeCharacter::new(&f, alpha_root)
}

/// Direct evaluation of `sum_{u != 0} chi(u) psi(a*u^m)`.
pub fn twisted_power_sum(
    chi: &MultiplicativeCharacter,
    m: u64,
    a: FieldElement,
) -> ComplexValue {
    let f = chi.field();
    let q = f.order();
    if a.is_zero() {
        return if chi.is_trivial() {
            ComplexValue::from_int(q as i128 - 1)
        } else {
            ComplexValue::ZERO
        };
    }
    let traces = f.trace_table();
    let p = f.p() as i64;
    let la = f.discrete_log(a).expect("a nonzero") as u128;
    let alpha = chi.alpha();
    let n = (q - 1) as u128;
    let mut acc = ComplexValue::ZERO;
    for j in 0..q - 1 {
        let exp_index = (la + (j as u128) * (m as u128)) % n;
        let aum = f.exp(exp_index as u64);
        let tr = traces[aum.code() as usize] as i64;
        let frac = alpha
            .scale(j as i64)
            .add(&ResidueFraction::new(tr, p).expect("p > 0"));
        acc = acc.add(&ComplexValue::unit(frac));
    }
    acc
}

/// Predicted value of the twisted power sum: zero unless `gcd(m, q-1)`
/// divides the index of `chi`, else a sum of `gcd(m, q-1)` twisted Gauss
/// sums at the canonical root character.
pub fn twisted_power_sum_predicted(
    chi: &MultiplicativeCharacter,
    m: u64,
    a: FieldElement,
) -> Result<ComplexValue> {
    if m == 0 {
        return Err(Error::domain("power sum with m = 0"));
    }
    let f = chi.field().clone();
    let n = f.order() - 1;
    let alpha = chi.alpha();
    let k = alpha.num() * (n / alpha.den());
    let d = num_integer::gcd(m, n);
    if k % d != 0 {
        return Ok(ComplexValue::ZERO);
    }
    let root = frac_power_char(chi, m)?;
    let mut acc = ComplexValue::ZERO;
    for b in 0..d {
        let beta = ResidueFraction::new(b as i64, d as i64)?;
        let twisted = root.mul(&MultiplicativeCharacter::new(&f, beta)?)?;
        acc = acc.add(&gauss_sum(&twisted, a));
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Power-system counting
// ---------------------------------------------------------------------------

/// Number of x in the field with `x^(m_i) = a_i` for every listed equation,
/// computed exactly by pairwise reduction (no floating point).
pub fn count_power_system(field: &Field, eqs: &[(u64, FieldElement)]) -> Result<u64> {
    for &(m, _) in eqs {
        if m == 0 {
            return Err(Error::domain("power equation with exponent 0"));
        }
    }
    if eqs.is_empty() {
        return Ok(field.order());
    }
    if eqs.iter().any(|&(_, a)| a.is_zero()) {
        // x^m = 0 forces x = 0, which solves exactly the zero equations.
        return Ok(if eqs.iter().all(|&(_, a)| a.is_zero()) {
            1
        } else {
            0
        });
    }
    // Fold x^M = A with x^m = a into x^gcd(M,m) = A^s a^t plus a
    // compatibility check A^(m/d) = a^(M/d).
    let (mut cap_m, mut cap_a) = eqs[0];
    for &(m, a) in &eqs[1..] {
        let ext = (cap_m as i64).extended_gcd(&(m as i64));
        let d = ext.gcd as u64;
        if field.pow(cap_a, m / d) != field.pow(a, cap_m / d) {
            return Ok(0);
        }
        let combined = field.mul(
            field.pow_signed(cap_a, ext.x)?,
            field.pow_signed(a, ext.y)?,
        );
        cap_m = d;
        cap_a = combined;
    }
    // Count solutions of x^M = A over the multiplicative group.
    let n = field.order() - 1;
    let e = num_integer::gcd(cap_m, n);
    let log = field.discrete_log(cap_a)?;
    Ok(if log % e == 0 { e } else { 0 })
}

/// Brute-force count of x with `x^(m_i) = a_i` for all i.
pub fn count_power_system_brute(field: &Field, eqs: &[(u64, FieldElement)]) -> u64 {
    field
        .elements()
        .filter(|&x| eqs.iter().all(|&(m, a)| field.pow(x, m) == a))
        .count() as u64
}
