//! Trinomial curves: parsing, normalization, classification into the five
//! admissible shapes, absolute irreducibility, and genus.
//!
//! A parsed trinomial is reduced (no common monomial factor) and affine; a
//! homogeneous three-variable input is dehomogenized first, and the record of
//! every normalization step (divided monomial, dehomogenization, variable
//! permutation, scaling) is kept in a [`Transform`].

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{make_field_capped, prime_to_p_part, Field, FieldElement, DEFAULT_TABLE_CAP};
use crate::polygon::LatticePolygon;

const MAX_EXPONENT: u32 = 4096;

fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

fn gcd_many(vals: &[u64]) -> u64 {
    vals.iter().fold(0, |acc, &v| gcd_u64(acc, v))
}

// ---------------------------------------------------------------------------
// Trinomials
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
    pub coeff: FieldElement,
}

/// Record of the normalization steps applied to the input equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    /// Common monomial x^a y^b z^c divided out of the input.
    pub divided: (u32, u32, u32),
    /// Input was homogeneous in x, y, z and z was set to 1.
    pub dehomogenized: bool,
    /// Projective variable permutation applied during classification:
    /// new variable i carries the exponents of old variable permutation[i].
    pub permutation: [u8; 3],
    /// Constant the equation was multiplied by to make the designated
    /// monomial monic.
    pub scale: FieldElement,
}

impl Default for Transform {
    fn default() -> Self {
        Transform {
            divided: (0, 0, 0),
            dehomogenized: false,
            permutation: [0, 1, 2],
            scale: FieldElement::ONE,
        }
    }
}

impl Transform {
    pub fn is_identity(&self) -> bool {
        *self == Transform::default()
    }

    pub fn describe(&self, field: &Field) -> String {
        let mut steps = Vec::new();
        let (a, b, c) = self.divided;
        if (a, b, c) != (0, 0, 0) {
            steps.push(format!("divide by {}", fmt_monomial3(a, b, c)));
        }
        if self.dehomogenized {
            steps.push("set z = 1".into());
        }
        if self.permutation != [0, 1, 2] {
            let names = ['x', 'y', 'z'];
            let img: String = self
                .permutation
                .iter()
                .map(|&i| names[i as usize])
                .collect::<Vec<_>>()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            steps.push(format!("permute (x,y,z) -> ({img})"));
        }
        if self.scale != FieldElement::ONE {
            steps.push(format!("scale by {}", field.fmt_element(self.scale)));
        }
        if steps.is_empty() {
            "identity".into()
        } else {
            steps.join("; ")
        }
    }
}

fn fmt_monomial3(a: u32, b: u32, c: u32) -> String {
    let mut parts = Vec::new();
    for (e, name) in [(a, "x"), (b, "y"), (c, "z")] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// A reduced affine trinomial over a finite field.
#[derive(Clone, Debug)]
pub struct Trinomial {
    field: Field,
    monomials: [Monomial; 3],
    transform: Transform,
}

impl Trinomial {
    /// Builds a trinomial from three monomials, reducing any common monomial
    /// factor and sorting deterministically (descending total degree, then
    /// descending x-exponent, then descending y-exponent).
    pub fn new(field: &Field, monomials: &[Monomial]) -> Result<Self> {
        Self::with_transform(field, monomials, Transform::default())
    }

    fn with_transform(field: &Field, monomials: &[Monomial], mut tf: Transform) -> Result<Self> {
        if monomials.len() != 3 {
            return Err(Error::parse(format!(
                "expected exactly 3 monomials, found {}",
                monomials.len()
            )));
        }
        let mut ms = [monomials[0], monomials[1], monomials[2]];
        for m in &ms {
            if m.coeff.is_zero() {
                return Err(Error::parse("monomial with zero coefficient"));
            }
            if m.ex > MAX_EXPONENT || m.ey > MAX_EXPONENT {
                return Err(Error::parse(format!(
                    "exponent exceeds supported bound {MAX_EXPONENT}"
                )));
            }
        }
        let min_x = ms.iter().map(|m| m.ex).min().unwrap();
        let min_y = ms.iter().map(|m| m.ey).min().unwrap();
        if min_x > 0 || min_y > 0 {
            for m in &mut ms {
                m.ex -= min_x;
                m.ey -= min_y;
            }
            tf.divided = (
                tf.divided.0 + min_x,
                tf.divided.1 + min_y,
                tf.divided.2,
            );
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if ms[i].ex == ms[j].ex && ms[i].ey == ms[j].ey {
                    return Err(Error::parse("monomials must have distinct exponent pairs"));
                }
            }
        }
        ms.sort_by(|a, b| {
            (b.ex + b.ey, b.ex, b.ey).cmp(&(a.ex + a.ey, a.ex, a.ey))
        });
        Ok(Trinomial {
            field: field.clone(),
            monomials: ms,
            transform: tf,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn monomials(&self) -> &[Monomial; 3] {
        &self.monomials
    }
    pub fn transform(&self) -> &Transform {
        &self.transform
    }

    pub fn support(&self) -> [(u32, u32); 3] {
        [
            (self.monomials[0].ex, self.monomials[0].ey),
            (self.monomials[1].ex, self.monomials[1].ey),
            (self.monomials[2].ex, self.monomials[2].ey),
        ]
    }

    /// Exponent triples of the homogenization (degree = max total degree).
    pub fn homogeneous_support(&self) -> [(u32, u32, u32); 3] {
        let d = self
            .monomials
            .iter()
            .map(|m| m.ex + m.ey)
            .max()
            .unwrap();
        let t = |m: &Monomial| (m.ex, m.ey, d - m.ex - m.ey);
        [
            t(&self.monomials[0]),
            t(&self.monomials[1]),
            t(&self.monomials[2]),
        ]
    }

    /// Evaluates the trinomial at an affine point of an extension field
    /// containing the coefficient field (identity embedding on codes).
    pub fn eval(&self, ext: &Field, x: FieldElement, y: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for m in &self.monomials {
            let t = ext.mul(
                m.coeff,
                ext.mul(ext.pow(x, m.ex as u64), ext.pow(y, m.ey as u64)),
            );
            acc = ext.add(acc, t);
        }
        acc
    }

    /// The Newton polygon: convex hull of the three exponent vectors.
    pub fn newton_polygon(&self) -> LatticePolygon {
        let pts: Vec<(i64, i64)> = self
            .support()
            .iter()
            .map(|&(a, b)| (a as i64, b as i64))
            .collect();
        LatticePolygon::convex_hull(&pts).expect("three support points")
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|m| {
                let mut parts: Vec<String> = Vec::new();
                if m.coeff != FieldElement::ONE || (m.ex == 0 && m.ey == 0) {
                    parts.push(self.field.fmt_element(m.coeff));
                }
                match m.ex {
                    0 => {}
                    1 => parts.push("x".into()),
                    e => parts.push(format!("x^{e}")),
                }
                match m.ey {
                    0 => {}
                    1 => parts.push("y".into()),
                    e => parts.push(format!("y^{e}")),
                }
                parts.join("*")
            })
            .collect();
        let field = if self.field.abs_degree() == 1 {
            format!("GF({})", self.field.p())
        } else {
            format!("GF({}^{})", self.field.p(), self.field.abs_degree())
        };
        write!(f, "{} over {}", terms.join(" + "), field)
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Var(u8),
    Gen,
    Pow,
    Mul,
    Plus,
    Minus,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(dig) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(dig as u64))
                            .ok_or_else(|| Error::parse("integer literal too large"))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(v));
            }
            'x' => {
                chars.next();
                out.push(Tok::Var(0));
            }
            'y' => {
                chars.next();
                out.push(Tok::Var(1));
            }
            'z' => {
                chars.next();
                out.push(Tok::Var(2));
            }
            'g' => {
                chars.next();
                out.push(Tok::Gen);
            }
            '^' => {
                chars.next();
                out.push(Tok::Pow);
            }
            '*' => {
                chars.next();
                out.push(Tok::Mul);
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            _ => return Err(Error::parse(format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

struct RawTerm {
    coeff: FieldElement,
    exps: [u32; 3],
}

fn parse_terms(tokens: &[Tok], field: &Field) -> Result<Vec<RawTerm>> {
    let mut terms = Vec::new();
    let mut i = 0usize;
    loop {
        // Sign prefix.
        let mut sign = 1i64;
        while i < tokens.len() {
            match tokens[i] {
                Tok::Plus => i += 1,
                Tok::Minus => {
                    sign = -sign;
                    i += 1;
                }
                _ => break,
            }
        }
        if i >= tokens.len() {
            if terms.is_empty() {
                return Err(Error::parse("empty expression"));
            }
            return Err(Error::parse("trailing operator"));
        }
        let mut coeff = field.from_int(sign);
        let mut exps = [0u32; 3];
        let mut saw_factor = false;
        loop {
            match tokens.get(i) {
                Some(Tok::Num(v)) => {
                    i += 1;
                    coeff = field.mul(coeff, field.from_int(*v as i64));
                    saw_factor = true;
                }
                Some(Tok::Gen) => {
                    i += 1;
                    let e = parse_opt_exponent(tokens, &mut i)?;
                    coeff = field.mul(coeff, field.pow(field.generator(), e as u64));
                    saw_factor = true;
                }
                Some(Tok::Var(v)) => {
                    let v = *v;
                    i += 1;
                    let e = parse_opt_exponent(tokens, &mut i)?;
                    exps[v as usize] = exps[v as usize]
                        .checked_add(e)
                        .filter(|&x| x <= MAX_EXPONENT)
                        .ok_or_else(|| Error::parse("exponent too large"))?;
                    saw_factor = true;
                }
                Some(Tok::Mul) => {
                    i += 1;
                    if !saw_factor {
                        return Err(Error::parse("'*' without preceding factor"));
                    }
                }
                Some(Tok::Pow) => {
                    return Err(Error::parse("'^' without base"));
                }
                Some(Tok::Plus) | Some(Tok::Minus) | None => break,
            }
        }
        if !saw_factor {
            return Err(Error::parse("empty term"));
        }
        terms.push(RawTerm { coeff, exps });
        if i >= tokens.len() {
            break;
        }
    }
    Ok(terms)
}

fn parse_opt_exponent(tokens: &[Tok], i: &mut usize) -> Result<u32> {
    if tokens.get(*i) == Some(&Tok::Pow) {
        *i += 1;
        match tokens.get(*i) {
            Some(Tok::Num(v)) if *v <= MAX_EXPONENT as u64 => {
                *i += 1;
                Ok(*v as u32)
            }
            Some(Tok::Num(_)) => Err(Error::parse("exponent too large")),
            _ => Err(Error::parse("'^' must be followed by an integer")),
        }
    } else {
        Ok(1)
    }
}

fn parse_field_spec(spec: &str, cap: u64) -> Result<Field> {
    let spec = spec.trim();
    let inner = spec
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::parse(format!("expected GF(q) or GF(p^k), got '{spec}'")))?;
    let (p, k) = if let Some((ps, ks)) = inner.split_once('^') {
        let p: u64 = ps
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad characteristic '{ps}'")))?;
        let k: u32 = ks
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad extension degree '{ks}'")))?;
        (p, k)
    } else {
        let q: u64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad field order '{inner}'")))?;
        crate::gf::split_prime_power(q).map_err(|e| Error::parse(e.to_string()))?
    };
    make_field_capped(p, k, cap).map_err(|e| match e {
        Error::Domain(m) => Error::parse(m),
        other => other,
    })
}

/// Parses a trinomial from text (`"x*y^3 + x^3 + y over GF(2)"`) or from a
/// structured JSON record (`{"p":2,"k":1,"monomials":[...]}`).
pub fn parse_trinomial(input: &str) -> Result<Trinomial> {
    parse_trinomial_capped(input, DEFAULT_TABLE_CAP)
}

pub fn parse_trinomial_capped(input: &str, cap: u64) -> Result<Trinomial> {
    let trimmed = input.trim();
    if trimmed.starts_with('{') {
        return parse_trinomial_record(trimmed, cap);
    }
    let split_at = trimmed
        .rfind("over")
        .ok_or_else(|| Error::parse("missing 'over GF(q)' field specification"))?;
    let expr = &trimmed[..split_at];
    let field = parse_field_spec(&trimmed[split_at + 4..], cap)?;
    let tokens = tokenize(expr)?;
    let terms = parse_terms(&tokens, &field)?;
    build_from_terms(&field, &terms)
}

fn build_from_terms(field: &Field, terms: &[RawTerm]) -> Result<Trinomial> {
    use std::collections::BTreeMap;
    let mut combined: BTreeMap<[u32; 3], FieldElement> = BTreeMap::new();
    for t in terms {
        let entry = combined.entry(t.exps).or_insert(FieldElement::ZERO);
        *entry = field.add(*entry, t.coeff);
    }
    combined.retain(|_, c| !c.is_zero());
    if combined.len() != 3 {
        return Err(Error::parse(format!(
            "expected exactly 3 distinct monomials after combining, found {}",
            combined.len()
        )));
    }
    let uses_z = combined.keys().any(|e| e[2] > 0);
    let mut tf = Transform::default();
    let mut monos: Vec<Monomial> = Vec::new();
    if uses_z {
        let totals: Vec<u32> = combined.keys().map(|e| e[0] + e[1] + e[2]).collect();
        if totals.iter().any(|&t| t != totals[0]) {
            return Err(Error::parse(
                "three-variable input must be homogeneous (equal total degrees)",
            ));
        }
        let min_x = combined.keys().map(|e| e[0]).min().unwrap();
        let min_y = combined.keys().map(|e| e[1]).min().unwrap();
        let min_z = combined.keys().map(|e| e[2]).min().unwrap();
        tf.divided = (min_x, min_y, min_z);
        tf.dehomogenized = true;
        for (e, c) in combined {
            monos.push(Monomial {
                ex: e[0] - min_x,
                ey: e[1] - min_y,
                coeff: c,
            });
        }
    } else {
        for (e, c) in combined {
            monos.push(Monomial {
                ex: e[0],
                ey: e[1],
                coeff: c,
            });
        }
    }
    Trinomial::with_transform(field, &monos, tf)
}

fn parse_trinomial_record(input: &str, cap: u64) -> Result<Trinomial> {
    use serde_json::Value;
    let v: Value = serde_json::from_str(input)
        .map_err(|e| Error::parse(format!("bad JSON record: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse("record must be a JSON object"))?;
    let p = obj
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("record needs integer field 'p'"))?;
    let k = obj
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("record needs integer field 'k'"))? as u32;
    let field = make_field_capped(p, k, cap).map_err(|e| match e {
        Error::Domain(m) => Error::parse(m),
        other => other,
    })?;
    let monomials = obj
        .get("monomials")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("record needs array field 'monomials'"))?;
    let mut terms = Vec::new();
    for m in monomials {
        let mo = m
            .as_object()
            .ok_or_else(|| Error::parse("monomial must be an object"))?;
        let ex = mo
            .get("ex")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse("monomial needs integer 'ex'"))?;
        let ey = mo
            .get("ey")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse("monomial needs integer 'ey'"))?;
        if ex > MAX_EXPONENT as u64 || ey > MAX_EXPONENT as u64 {
            return Err(Error::parse("exponent too large"));
        }
        let coeff = match mo.get("coeff") {
            None => FieldElement::ONE,
            Some(Value::Number(n)) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::parse("coefficient out of range"))?;
                field.from_int(i)
            }
            Some(Value::String(s)) => parse_coeff_string(&field, s)?,
            Some(_) => return Err(Error::parse("coefficient must be integer or string")),
        };
        terms.push(RawTerm {
            coeff,
            exps: [ex as u32, ey as u32, 0],
        });
    }
    build_from_terms(&field, &terms)
}

pub(crate) fn parse_coeff_string(field: &Field, s: &str) -> Result<FieldElement> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('g') {
        let e: u64 = if rest.is_empty() {
            1
        } else {
            rest.strip_prefix('^')
                .and_then(|e| e.parse().ok())
                .ok_or_else(|| Error::parse(format!("bad coefficient '{s}'")))?
        };
        return Ok(field.pow(field.generator(), e));
    }
    let i: i64 = s
        .parse()
        .map_err(|_| Error::parse(format!("bad coefficient '{s}'")))?;
    Ok(field.from_int(i))
}

// ---------------------------------------------------------------------------
// Absolute irreducibility
// ---------------------------------------------------------------------------

/// All six projective coordinate permutations, in a fixed deterministic order.
const PERMS: [[u8; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn permuted_affine_support(
    triples: &[(u32, u32, u32); 3],
    perm: [u8; 3],
) -> [(u32, u32); 3] {
    let get = |t: &(u32, u32, u32), i: u8| match i {
        0 => t.0,
        1 => t.1,
        _ => t.2,
    };
    let mut out = [(0u32, 0u32); 3];
    for (k, t) in triples.iter().enumerate() {
        out[k] = (get(t, perm[0]), get(t, perm[1]));
    }
    out
}

#[derive(Clone, Debug)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub reason: String,
}

/// Decides absolute irreducibility by fitting the support, after a projective
/// permutation, to the shape {(a,0), (b,c), (0,d)} and testing
/// `a*c + b*d != a*d` together with `p` not dividing `gcd(a,b,c,d)`.
pub fn is_abs_irreducible(t: &Trinomial) -> Result<IrreducibilityReport> {
    let triples = t.homogeneous_support();
    let p = t.field().p();
    for perm in PERMS {
        let pairs = permuted_affine_support(&triples, perm);
        // Ordered assignments: index ia -> (a,0), ib -> (b,c), id -> (0,d).
        for (ia, ib, id) in [
            (0, 1, 2),
            (0, 2, 1),
            (1, 0, 2),
            (1, 2, 0),
            (2, 0, 1),
            (2, 1, 0),
        ] {
            let (a, a0) = pairs[ia];
            let (d0, d) = pairs[id];
            let (b, c) = pairs[ib];
            if a0 != 0 || d0 != 0 {
                continue;
            }
            let (a, b, c, d) = (a as u64, b as u64, c as u64, d as u64);
            let g = gcd_many(&[a, b, c, d]);
            if a * c + b * d == a * d {
                return Ok(IrreducibilityReport {
                    irreducible: false,
                    reason: format!(
                        "support relation a*c + b*d = a*d holds with (a,b,c,d) = ({a},{b},{c},{d})"
                    ),
                });
            }
            if g % p == 0 {
                return Ok(IrreducibilityReport {
                    irreducible: false,
                    reason: format!(
                        "characteristic {p} divides gcd({a},{b},{c},{d}) = {g}"
                    ),
                });
            }
            return Ok(IrreducibilityReport {
                irreducible: true,
                reason: format!(
                    "a*c + b*d = {} differs from a*d = {} and {p} does not divide gcd = {g}",
                    a * c + b * d,
                    a * d
                ),
            });
        }
    }
    Err(Error::domain(
        "support does not fit the irreducibility template in any coordinate permutation",
    ))
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Normalized parameters of the five admissible shapes.
///
/// 1. `k1 x^m + k2 y^n + 1`, with `n >= m`
/// 2. `k1 x^m + k2 y^n1 + y^n`, with `n > m`, `n > n1`
/// 3. `k1 x^m1 y^n1 + k2 y^n + 1`, with `n > m1 + n1`
/// 4. `k1 x^m1 y^n1 + k2 x^m y^n + 1`, with `m1+n1 >= m+n`, `n1/m1 >= n/m`
/// 5. `x^m1 y^n1 + k1 x^m + k2 y^n`, with `m1+n1 > m`, `m1+n1 > n`,
///    `n1 >= m1`, and if `m1 = n1` then `n >= m`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseParams {
    Case1 { m: u32, n: u32 },
    Case2 { m: u32, n1: u32, n: u32 },
    Case3 { m1: u32, n1: u32, n: u32 },
    Case4 { m1: u32, n1: u32, m: u32, n: u32 },
    Case5 { m1: u32, n1: u32, m: u32, n: u32 },
}

impl CaseParams {
    pub fn case_id(&self) -> u8 {
        match self {
            CaseParams::Case1 { .. } => 1,
            CaseParams::Case2 { .. } => 2,
            CaseParams::Case3 { .. } => 3,
            CaseParams::Case4 { .. } => 4,
            CaseParams::Case5 { .. } => 5,
        }
    }

    /// Comparison key: (case id, parameter tuple).
    fn key(&self) -> (u8, [u32; 4]) {
        match *self {
            CaseParams::Case1 { m, n } => (1, [m, n, 0, 0]),
            CaseParams::Case2 { m, n1, n } => (2, [m, n1, n, 0]),
            CaseParams::Case3 { m1, n1, n } => (3, [m1, n1, n, 0]),
            CaseParams::Case4 { m1, n1, m, n } => (4, [m1, n1, m, n]),
            CaseParams::Case5 { m1, n1, m, n } => (5, [m1, n1, m, n]),
        }
    }

    /// The exponent gcd whose p-coprimality the shape requires.
    pub fn exponent_gcd(&self) -> u64 {
        match *self {
            CaseParams::Case1 { m, n } => gcd_many(&[m as u64, n as u64]),
            CaseParams::Case2 { m, n1, n } => gcd_many(&[m as u64, n1 as u64, n as u64]),
            CaseParams::Case3 { m1, n1, n } => gcd_many(&[m1 as u64, n1 as u64, n as u64]),
            CaseParams::Case4 { m1, n1, m, n } | CaseParams::Case5 { m1, n1, m, n } => {
                gcd_many(&[m1 as u64, n1 as u64, m as u64, n as u64])
            }
        }
    }

    pub fn as_list(&self) -> Vec<(String, u32)> {
        match *self {
            CaseParams::Case1 { m, n } => vec![("m".into(), m), ("n".into(), n)],
            CaseParams::Case2 { m, n1, n } => {
                vec![("m".into(), m), ("n1".into(), n1), ("n".into(), n)]
            }
            CaseParams::Case3 { m1, n1, n } => {
                vec![("m1".into(), m1), ("n1".into(), n1), ("n".into(), n)]
            }
            CaseParams::Case4 { m1, n1, m, n } | CaseParams::Case5 { m1, n1, m, n } => vec![
                ("m1".into(), m1),
                ("n1".into(), n1),
                ("m".into(), m),
                ("n".into(), n),
            ],
        }
    }
}

/// A classified curve: case id, normalized parameters, coefficients, and the
/// transform that carries the input to the normalized shape.
#[derive(Clone, Debug)]
pub struct CaseForm {
    pub field: Field,
    pub params: CaseParams,
    pub k1: FieldElement,
    pub k2: FieldElement,
    pub transform: Transform,
}

impl CaseForm {
    pub fn case_id(&self) -> u8 {
        self.params.case_id()
    }

    /// The 2x2 congruence matrix whose solutions index the character orbits.
    pub fn matrix(&self) -> [[i64; 2]; 2] {
        match self.params {
            CaseParams::Case1 { m, n } => [[m as i64, 0], [0, n as i64]],
            CaseParams::Case2 { m, n1, n } => {
                [[m as i64, 0], [n as i64, (n - n1) as i64]]
            }
            CaseParams::Case3 { m1, n1, n } => {
                [[m1 as i64, 0], [n1 as i64, n as i64]]
            }
            CaseParams::Case4 { m1, n1, m, n } => {
                [[m as i64, m1 as i64], [n as i64, n1 as i64]]
            }
            CaseParams::Case5 { m1, n1, m, n } => [
                [m1 as i64, m1 as i64 - m as i64],
                [n1 as i64 - n as i64, n1 as i64],
            ],
        }
    }

    /// Coefficients fed to the two character slots of each orbit factor:
    /// (k1^-1, k2^-1) for cases 1-3 and (k2^-1, k1^-1) for cases 4-5.
    pub fn twist(&self) -> (FieldElement, FieldElement) {
        let i1 = self.field.inv(self.k1).expect("k1 nonzero");
        let i2 = self.field.inv(self.k2).expect("k2 nonzero");
        match self.params {
            CaseParams::Case1 { .. } | CaseParams::Case2 { .. } | CaseParams::Case3 { .. } => {
                (i1, i2)
            }
            CaseParams::Case4 { .. } | CaseParams::Case5 { .. } => (i2, i1),
        }
    }

    /// Moduli of the three excluded solution classes (xi_1 trivial, xi_2
    /// trivial, xi_1 + xi_2 trivial): column gcds of the matrix.
    pub fn exclusion_moduli(&self) -> [u64; 3] {
        let a = self.matrix();
        [
            num_integer::gcd(a[0][1].unsigned_abs(), a[1][1].unsigned_abs()),
            num_integer::gcd(a[0][0].unsigned_abs(), a[1][0].unsigned_abs()),
            num_integer::gcd(
                (a[0][0] - a[0][1]).unsigned_abs(),
                (a[1][0] - a[1][1]).unsigned_abs(),
            ),
        ]
    }

    /// |det| of the congruence matrix: the headline quantity of each shape.
    pub fn det_abs(&self) -> u64 {
        let a = self.matrix();
        (a[0][0] * a[1][1] - a[0][1] * a[1][0]).unsigned_abs()
    }

    /// Rebuilds the normalized trinomial for this shape.
    pub fn normalized_trinomial(&self) -> Trinomial {
        let one = FieldElement::ONE;
        let ms = match self.params {
            CaseParams::Case1 { m, n } => [
                Monomial { ex: m, ey: 0, coeff: self.k1 },
                Monomial { ex: 0, ey: n, coeff: self.k2 },
                Monomial { ex: 0, ey: 0, coeff: one },
            ],
            CaseParams::Case2 { m, n1, n } => [
                Monomial { ex: m, ey: 0, coeff: self.k1 },
                Monomial { ex: 0, ey: n1, coeff: self.k2 },
                Monomial { ex: 0, ey: n, coeff: one },
            ],
            CaseParams::Case3 { m1, n1, n } => [
                Monomial { ex: m1, ey: n1, coeff: self.k1 },
                Monomial { ex: 0, ey: n, coeff: self.k2 },
                Monomial { ex: 0, ey: 0, coeff: one },
            ],
            CaseParams::Case4 { m1, n1, m, n } => [
                Monomial { ex: m1, ey: n1, coeff: self.k1 },
                Monomial { ex: m, ey: n, coeff: self.k2 },
                Monomial { ex: 0, ey: 0, coeff: one },
            ],
            CaseParams::Case5 { m1, n1, m, n } => [
                Monomial { ex: m1, ey: n1, coeff: one },
                Monomial { ex: m, ey: 0, coeff: self.k1 },
                Monomial { ex: 0, ey: n, coeff: self.k2 },
            ],
        };
        Trinomial::new(&self.field, &ms).expect("normalized shape is valid")
    }
}

struct Candidate {
    params: CaseParams,
    k1: FieldElement,
    k2: FieldElement,
    perm: [u8; 3],
    scale: FieldElement,
}

/// Classifies an absolutely irreducible trinomial into one of the five
/// normalized shapes, choosing deterministically (lowest case id, then
/// lexicographically smallest parameters, then smallest coefficients).
pub fn classify(t: &Trinomial) -> Result<CaseForm> {
    let report = is_abs_irreducible(t)?;
    if !report.irreducible {
        return Err(Error::domain(format!(
            "curve is not absolutely irreducible: {}",
            report.reason
        )));
    }
    let field = t.field().clone();
    let p = field.p();
    let triples = t.homogeneous_support();
    let coeffs = [
        t.monomials()[0].coeff,
        t.monomials()[1].coeff,
        t.monomials()[2].coeff,
    ];
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut pattern_matched = false;
    for perm in PERMS {
        let pairs = permuted_affine_support(&triples, perm);
        collect_candidates(
            &field,
            p,
            &pairs,
            &coeffs,
            perm,
            &mut candidates,
            &mut pattern_matched,
        )?;
    }
    let best = candidates.into_iter().min_by_key(|c| {
        (
            c.params.key(),
            c.k1.code(),
            c.k2.code(),
            c.perm,
        )
    });
    match best {
        Some(c) => {
            let mut tf = t.transform().clone();
            tf.permutation = c.perm;
            tf.scale = c.scale;
            Ok(CaseForm {
                field,
                params: c.params,
                k1: c.k1,
                k2: c.k2,
                transform: tf,
            })
        }
        None if pattern_matched => Err(Error::domain(format!(
            "characteristic {p} divides the exponent gcd of every matching shape"
        ))),
        None => Err(Error::domain(
            "support does not match any of the five normalized shapes",
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn collect_candidates(
    field: &Field,
    p: u64,
    pairs: &[(u32, u32); 3],
    coeffs: &[FieldElement; 3],
    perm: [u8; 3],
    out: &mut Vec<Candidate>,
    pattern_matched: &mut bool,
) -> Result<()> {
    let mut constant = Vec::new();
    let mut pure_x = Vec::new();
    let mut pure_y = Vec::new();
    let mut mixed = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        match (a, b) {
            (0, 0) => constant.push(i),
            (_, 0) => pure_x.push(i),
            (0, _) => pure_y.push(i),
            _ => mixed.push(i),
        }
    }
    let coprime = |g: u64| g % p != 0;
    let mut push = |params: CaseParams,
                    monic: usize,
                    first: usize,
                    second: usize,
                    out: &mut Vec<Candidate>|
     -> Result<()> {
        *pattern_matched = true;
        if !coprime(params.exponent_gcd()) {
            return Ok(());
        }
        let scale = field.inv(coeffs[monic])?;
        out.push(Candidate {
            params,
            k1: field.mul(coeffs[first], scale),
            k2: field.mul(coeffs[second], scale),
            perm,
            scale,
        });
        Ok(())
    };
    match (constant.len(), pure_x.len(), pure_y.len(), mixed.len()) {
        (1, 1, 1, 0) => {
            // k1 x^m + k2 y^n + 1 with n >= m.
            let (i0, ix, iy) = (constant[0], pure_x[0], pure_y[0]);
            let m = pairs[ix].0;
            let n = pairs[iy].1;
            if n >= m {
                push(CaseParams::Case1 { m, n }, i0, ix, iy, out)?;
            }
        }
        (0, 1, 2, 0) => {
            // k1 x^m + k2 y^n1 + y^n with n > m, n > n1.
            let ix = pure_x[0];
            let (mut lo, mut hi) = (pure_y[0], pure_y[1]);
            if pairs[lo].1 > pairs[hi].1 {
                std::mem::swap(&mut lo, &mut hi);
            }
            let m = pairs[ix].0;
            let n1 = pairs[lo].1;
            let n = pairs[hi].1;
            if n > m {
                push(CaseParams::Case2 { m, n1, n }, hi, ix, lo, out)?;
            }
        }
        (1, 0, 1, 1) => {
            // k1 x^m1 y^n1 + k2 y^n + 1 with n > m1 + n1.
            let (i0, iy, im) = (constant[0], pure_y[0], mixed[0]);
            let (m1, n1) = pairs[im];
            let n = pairs[iy].1;
            if n > m1 + n1 {
                push(CaseParams::Case3 { m1, n1, n }, i0, im, iy, out)?;
            }
        }
        (1, 0, 0, 2) => {
            // k1 x^m1 y^n1 + k2 x^m y^n + 1 with m1+n1 >= m+n, n1 m >= n m1.
            let i0 = constant[0];
            for (ia, ib) in [(mixed[0], mixed[1]), (mixed[1], mixed[0])] {
                let (m1, n1) = pairs[ia];
                let (m, n) = pairs[ib];
                if m1 + n1 >= m + n && (n1 as u64) * (m as u64) >= (n as u64) * (m1 as u64) {
                    push(CaseParams::Case4 { m1, n1, m, n }, i0, ia, ib, out)?;
                }
            }
        }
        (0, 1, 1, 1) => {
            // x^m1 y^n1 + k1 x^m + k2 y^n with m1+n1 > m, m1+n1 > n, n1 >= m1,
            // and n >= m when m1 = n1.
            let (ix, iy, im) = (pure_x[0], pure_y[0], mixed[0]);
            let (m1, n1) = pairs[im];
            let m = pairs[ix].0;
            let n = pairs[iy].1;
            if m1 + n1 > m && m1 + n1 > n && n1 >= m1 && (m1 != n1 || n >= m) {
                push(CaseParams::Case5 { m1, n1, m, n }, im, ix, iy, out)?;
            }
        }
        _ => {}
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Interior counts and genus
// ---------------------------------------------------------------------------

/// Interior lattice point count of the normalized shape, by closed formula.
pub fn i_of_curve(cf: &CaseForm) -> u64 {
    let g = |a: i64, b: i64| num_integer::gcd(a, b);
    let v = match cf.params {
        CaseParams::Case1 { m, n } => {
            let (m, n) = (m as i64, n as i64);
            let d = g(m, n);
            ((m - 1) * (n - 1) - (d - 1)) / 2
        }
        CaseParams::Case2 { m, n1, n } => {
            let (m, n1, n) = (m as i64, n1 as i64, n as i64);
            let d1 = g(m, n1);
            let d2 = g(m, n);
            ((m - 1) * (n - n1) - d1 - d2) / 2 + 1
        }
        CaseParams::Case3 { m1, n1, n } => {
            let (m1, n1, n) = (m1 as i64, n1 as i64, n as i64);
            let d1 = g(m1, n1);
            let d2 = g(m1, n - n1);
            ((m1 - 1) * n - d1 - d2) / 2 + 1
        }
        CaseParams::Case4 { m1, n1, m, n } => {
            let (m1, n1, m, n) = (m1 as i64, n1 as i64, m as i64, n as i64);
            let d1 = g(m1, n1);
            let d2 = g(m, n);
            let d3 = g(n1 - n, m1 - m);
            (m * n1 - m1 * n - d1 - d2 - d3) / 2 + 1
        }
        CaseParams::Case5 { m1, n1, m, n } => {
            let (m1, n1, m, n) = (m1 as i64, n1 as i64, m as i64, n as i64);
            let d1 = g(m1, n1 - n);
            let d2 = g(n1, m1 - m);
            let d3 = g(m, n);
            (m1 * n + m * n1 - m * n - d1 - d2 - d3) / 2 + 1
        }
    };
    debug_assert!(v >= 0, "interior count must be nonnegative");
    v as u64
}

/// Genus data computed from the congruence matrix.
#[derive(Clone, Debug)]
pub struct GenusReport {
    pub genus: u64,
    /// Interior lattice point count i(C) of the Newton polygon.
    pub interior_count: u64,
    /// gcd of the four matrix entries.
    pub d: u64,
    /// Column gcds: first column, second column, column difference.
    pub d1: u64,
    pub d2: u64,
    pub d3: u64,
    /// p-free parts of (|det|, d1, d2, d3).
    pub p_parts: [u64; 4],
}

/// The matrix data entering the genus formula: |det|, the gcd of each
/// column, and the gcd of the column difference. All four are invariant
/// under left multiplication by a unimodular matrix.
pub fn genus_parts(a: [[i64; 2]; 2]) -> (u64, u64, u64, u64) {
    let det = (a[0][0] * a[1][1] - a[0][1] * a[1][0]).unsigned_abs();
    let d1 = num_integer::gcd(a[0][0].unsigned_abs(), a[1][0].unsigned_abs());
    let d2 = num_integer::gcd(a[0][1].unsigned_abs(), a[1][1].unsigned_abs());
    let d3 = num_integer::gcd(
        (a[0][0] - a[0][1]).unsigned_abs(),
        (a[1][0] - a[1][1]).unsigned_abs(),
    );
    (det, d1, d2, d3)
}

/// Genus of the smooth model: zero when the Newton polygon has no interior
/// points, otherwise (|det|_p - d1_p - d2_p - d3_p)/2 + 1, where the p-free
/// parts are taken of |det| and the three column gcds.
pub fn genus(cf: &CaseForm) -> Result<GenusReport> {
    let a = cf.matrix();
    let p = cf.field.p();
    let d = gcd_many(&[
        a[0][0].unsigned_abs(),
        a[0][1].unsigned_abs(),
        a[1][0].unsigned_abs(),
        a[1][1].unsigned_abs(),
    ]);
    if d % p == 0 {
        return Err(Error::domain(format!(
            "characteristic {p} divides the matrix gcd {d}"
        )));
    }
    let det = cf.det_abs();
    if det == 0 {
        return Err(Error::domain("congruence matrix is singular"));
    }
    let (_, d1, d2, d3) = genus_parts(a);
    let p_parts = [
        prime_to_p_part(det, p),
        prime_to_p_part(d1, p),
        prime_to_p_part(d2, p),
        prime_to_p_part(d3, p),
    ];
    let interior = i_of_curve(cf);
    let genus = if interior == 0 {
        0
    } else {
        let num = p_parts[0] as i64 - p_parts[1] as i64 - p_parts[2] as i64 - p_parts[3] as i64;
        debug_assert!(num % 2 == 0, "genus numerator must be even");
        let g = num / 2 + 1;
        debug_assert!(g >= 0, "genus must be nonnegative");
        g as u64
    };
    Ok(GenusReport {
        genus,
        interior_count: interior,
        d,
        d1,
        d2,
        d3,
        p_parts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn parse(s: &str) -> Trinomial {
        parse_trinomial(s).unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let t = parse("x*y^3 + x^3 + y over GF(13)");
        assert_eq!(t.to_string(), "x*y^3 + x^3 + y over GF(13)");
        let t = parse("x*y^5+x^2*y^3+1 over GF(13)");
        assert_eq!(t.to_string(), "x*y^5 + x^2*y^3 + 1 over GF(13)");
        let t = parse("2*x^2 - y + 3 over GF(5)");
        assert_eq!(t.to_string(), "2*x^2 + 4*y + 3 over GF(5)");
        // Generator coefficients in an extension field.
        let t = parse("g^2*x + y + g over GF(2^2)");
        assert_eq!(t.to_string(), "g^2*x + y + g^1 over GF(2^2)");
    }

    #[test]
    fn parse_homogeneous_dehomogenizes() {
        let t = parse("x*y^5 + x^2*y^3*z + z^6 over GF(13)");
        assert_eq!(
            t.support(),
            [(1, 5), (2, 3), (0, 0)],
            "support after setting z = 1"
        );
        assert!(t.transform().dehomogenized);
        // Non-homogeneous z usage is rejected.
        assert!(parse_trinomial("x*z + y + 1 over GF(5)").is_err());
    }

    #[test]
    fn parse_combines_and_validates() {
        // Like terms collapse; fewer than three monomials is an error.
        assert!(matches!(
            parse_trinomial("x^2 + 3*x^2 over GF(5)"),
            Err(Error::Parse(_))
        ));
        // Coefficients combine mod p; cancelling to zero drops the monomial.
        assert!(parse_trinomial("2*x + 2*x + y + 1 over GF(5)").is_ok());
        assert!(parse_trinomial("x + 4*x + y + 1 over GF(5)").is_err());
        // Common monomial factors are divided out and recorded.
        let t = parse("x^2*y + x*y^2 + x*y over GF(5)");
        assert_eq!(t.support(), [(1, 0), (0, 1), (0, 0)]);
        assert_eq!(t.transform().divided, (1, 1, 0));
        // Bad field specs.
        assert!(parse_trinomial("x + y + 1 over GF(6)").is_err());
        assert!(parse_trinomial("x + y + 1 over GF(4^2)").is_err());
        assert!(parse_trinomial("x + y + 1").is_err());
    }

    #[test]
    fn parse_structured_record() {
        let t = parse(r#"{"p":13,"k":1,"monomials":[{"ex":1,"ey":3,"coeff":1},{"ex":3,"ey":0,"coeff":1},{"ex":0,"ey":1,"coeff":1}]}"#);
        assert_eq!(t.to_string(), "x*y^3 + x^3 + y over GF(13)");
        let t = parse(r#"{"p":2,"k":2,"monomials":[{"ex":2,"ey":0,"coeff":"g"},{"ex":0,"ey":1,"coeff":"g^2"},{"ex":0,"ey":0}]}"#);
        assert_eq!(t.to_string(), "g^1*x^2 + g^2*y + 1 over GF(2^2)");
    }

    #[test]
    fn irreducibility_examples() {
        let t = parse("x^3 + y^3 + 1 over GF(5)");
        assert!(is_abs_irreducible(&t).unwrap().irreducible);
        // a*c + b*d = a*d makes x^2 + x*y + y^2 split.
        let t = parse("x^2 + x*y + y^2 over GF(5)");
        assert!(!is_abs_irreducible(&t).unwrap().irreducible);
        // Characteristic divides all exponents: x^2 + y^2 + 1 over GF(2).
        let t = parse("x^2 + y^2 + 1 over GF(2)");
        assert!(!is_abs_irreducible(&t).unwrap().irreducible);
        // Fermat cubic over GF(3) is a triple line.
        let t = parse("x^3 + y^3 + 1 over GF(3)");
        assert!(!is_abs_irreducible(&t).unwrap().irreducible);
    }

    #[test]
    fn classify_case4_example() {
        let cf = classify(&parse("x*y^5 + x^2*y^3 + 1 over GF(13)")).unwrap();
        assert_eq!(cf.case_id(), 4);
        assert_eq!(
            cf.params,
            CaseParams::Case4 { m1: 1, n1: 5, m: 2, n: 3 }
        );
        assert_eq!(cf.matrix(), [[2, 1], [3, 5]]);
        assert_eq!(cf.det_abs(), 7);
        assert_eq!(i_of_curve(&cf), 3);
        let g = genus(&cf).unwrap();
        assert_eq!(g.genus, 3);
        assert_eq!(g.interior_count, 3);
    }

    #[test]
    fn classify_case5_klein() {
        let cf = classify(&parse("x*y^3 + x^3 + y over GF(2)")).unwrap();
        assert_eq!(cf.case_id(), 5);
        assert_eq!(
            cf.params,
            CaseParams::Case5 { m1: 1, n1: 3, m: 3, n: 1 }
        );
        assert_eq!(cf.matrix(), [[1, -2], [2, 3]]);
        assert_eq!(cf.det_abs(), 7);
        assert_eq!(cf.exclusion_moduli(), [1, 1, 1]);
        assert_eq!(i_of_curve(&cf), 3);
        assert_eq!(genus(&cf).unwrap().genus, 3);
        // Twist swaps the coefficient inverses for case 5.
        let (t1, t2) = cf.twist();
        assert_eq!(t1, FieldElement::ONE);
        assert_eq!(t2, FieldElement::ONE);
    }

    #[test]
    fn classify_case1_and_case2() {
        let cf = classify(&parse("x^4 + y^4 + 1 over GF(3^2)")).unwrap();
        assert_eq!(cf.case_id(), 1);
        assert_eq!(cf.params, CaseParams::Case1 { m: 4, n: 4 });
        assert_eq!(cf.matrix(), [[4, 0], [0, 4]]);
        assert_eq!(genus(&cf).unwrap().genus, 3);

        // x^3 + x - y^2 over GF(7) normalizes by swapping x and y into
        // shape 2 with (m, n1, n) = (2, 1, 3).
        let cf = classify(&parse("x^3 + x - y^2 over GF(7)")).unwrap();
        assert_eq!(cf.case_id(), 2);
        assert_eq!(cf.params, CaseParams::Case2 { m: 2, n1: 1, n: 3 });
        assert_eq!(cf.matrix(), [[2, 0], [3, 2]]);
        let g = genus(&cf).unwrap();
        assert_eq!(g.genus, 1);
        assert_eq!(g.interior_count, 1);
    }

    #[test]
    fn classify_case3() {
        let cf = classify(&parse("x*y + y^3 + 1 over GF(2)")).unwrap();
        assert_eq!(cf.case_id(), 3);
        assert_eq!(cf.params, CaseParams::Case3 { m1: 1, n1: 1, n: 3 });
        assert_eq!(cf.matrix(), [[1, 0], [1, 3]]);
    }

    #[test]
    fn classify_rejects_reducible_and_bad_characteristic() {
        assert!(matches!(
            classify(&parse("x^2 + x*y + y^2 over GF(5)")),
            Err(Error::Domain(_))
        ));
        // Absolutely irreducible but characteristic divides the gcd of the
        // only matching shape: impossible here since irreducibility already
        // requires p coprime to the template gcd; use a genuinely reducible
        // curve to check the error text instead.
        assert!(matches!(
            classify(&parse("x^2 + y^2 + 1 over GF(2)")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn classify_is_idempotent() {
        for s in [
            "x*y^3 + x^3 + y over GF(2)",
            "x*y^5 + x^2*y^3 + 1 over GF(13)",
            "x^4 + y^4 + 1 over GF(3^2)",
            "x^3 + x - y^2 over GF(7)",
            "x*y + y^3 + 1 over GF(2)",
            "2*x^2 + 3*y^5 + y over GF(7)",
        ] {
            let cf = classify(&parse(s)).unwrap();
            let renorm = classify(&cf.normalized_trinomial()).unwrap();
            assert_eq!(cf.params, renorm.params, "{s}");
            assert_eq!(cf.k1, renorm.k1, "{s}");
            assert_eq!(cf.k2, renorm.k2, "{s}");
        }
    }

    #[test]
    fn interior_formula_matches_newton_polygon() {
        for s in [
            "x*y^3 + x^3 + y over GF(2)",
            "x*y^5 + x^2*y^3 + 1 over GF(13)",
            "x^4 + y^4 + 1 over GF(3^2)",
            "x^3 + x - y^2 over GF(7)",
            "x*y + y^3 + 1 over GF(2)",
            "x^2 + y^7 + y over GF(3)",
            "x^3*y^2 + y^7 + 1 over GF(2)",
        ] {
            let cf = classify(&parse(s)).unwrap();
            let nt = cf.normalized_trinomial();
            assert_eq!(
                i_of_curve(&cf),
                nt.newton_polygon().interior_points(),
                "{s}"
            );
        }
    }

    #[test]
    fn genus_f9_hermitian() {
        let cf = classify(&parse("x^4 + y^4 + 1 over GF(9)")).unwrap();
        let g = genus(&cf).unwrap();
        // |det| = 16, columns (4,0) and (0,4), difference (4,-4):
        // (16 - 4 - 4 - 4)/2 + 1 = 3.
        assert_eq!(g.genus, 3);
        assert_eq!(g.p_parts, [16, 4, 4, 4]);
    }

    #[test]
    fn transform_describes_steps() {
        let t = parse("x*y^5 + x^2*y^3*z + z^6 over GF(13)");
        let cf = classify(&t).unwrap();
        let desc = cf.transform.describe(&cf.field);
        assert!(desc.contains("set z = 1"), "{desc}");
    }

    #[test]
    fn eval_in_extension() {
        let f2 = make_field(2, 1).unwrap();
        let t = parse("x*y^3 + x^3 + y over GF(2)");
        let f4 = f2.make_extension(2).unwrap();
        // (0, 0) is on the Klein curve; (1, 1) gives 1 + 1 + 1 = 1.
        assert_eq!(t.eval(&f4, FieldElement::ZERO, FieldElement::ZERO), FieldElement::ZERO);
        assert_eq!(t.eval(&f4, FieldElement::ONE, FieldElement::ONE), FieldElement::ONE);
    }
}
