//! Maximality certificates, extension-degree searches, covering degrees,
//! and bulk family scans.
//!
//! A curve of genus g over GF(q) is maximal when it has q + 1 + 2g*sqrt(q)
//! rational points. Over GF(q^2) this is decided up to a gap by the largest
//! character order m attached to the curve: m | q + 1 is sufficient,
//! m | q^2 - 1 is necessary.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{classify, genus, parse_coeff_string, CaseForm, Monomial, Trinomial};
use crate::error::{Error, Result};
use crate::gf::{make_field_capped, split_prime_power, FieldElement, DEFAULT_TABLE_CAP};
use crate::zeta::{
    l_polynomial, m_of_curve, multiplicative_order, point_count_from_l, pow_mod, LPolynomial,
    ZetaOptions,
};

/// The least j with q^j = -1 modulo m, when it exists. For m <= 2 this is 1;
/// otherwise it exists precisely when the order k of q modulo m is even and
/// q^(k/2) = -1, in which case j = k/2.
pub fn minimal_negative_exponent(m: u64, q: u64) -> Result<Option<u32>> {
    if m == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    if m <= 2 {
        return Ok(Some(1));
    }
    if num_integer::gcd(q, m) != 1 {
        return Err(Error::domain(format!(
            "{q} and {m} share a factor, so no power of q is invertible mod m"
        )));
    }
    let k = multiplicative_order(q, m);
    if k % 2 == 0 && pow_mod(q, (k / 2) as u64, m) == m - 1 {
        Ok(Some(k / 2))
    } else {
        Ok(None)
    }
}

// ---------------------------------------------------------------------------
// Maximality over the quadratic extension
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalityVerdict {
    /// Genus zero: the point count is q^2 + 1 trivially.
    GenusZero,
    /// m | q + 1: the curve is maximal over GF(q^2).
    MaximalSufficient,
    /// m does not divide q^2 - 1: the curve cannot be maximal over GF(q^2).
    NotMaximalNecessaryFailed,
    /// m | q^2 - 1 but m does not divide q + 1: the test is silent.
    Inconclusive,
}

impl fmt::Display for MaximalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MaximalityVerdict::GenusZero => "genus-zero",
            MaximalityVerdict::MaximalSufficient => "maximal-sufficient",
            MaximalityVerdict::NotMaximalNecessaryFailed => "not-maximal-necessary-failed",
            MaximalityVerdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct MaximalityReport {
    pub verdict: MaximalityVerdict,
    pub q: u64,
    pub genus: u64,
    /// Largest character order; absent for genus zero.
    pub m_c: Option<u64>,
    pub divides_q_plus_one: bool,
    pub divides_q_squared_minus_one: bool,
}

/// Decides maximality of the curve over GF(q^2) as far as the divisibility
/// tests on the largest character order allow.
pub fn maximal_over_square(cf: &CaseForm) -> Result<MaximalityReport> {
    let gr = genus(cf)?;
    let q = cf.field.order();
    if gr.genus == 0 {
        return Ok(MaximalityReport {
            verdict: MaximalityVerdict::GenusZero,
            q,
            genus: 0,
            m_c: None,
            divides_q_plus_one: false,
            divides_q_squared_minus_one: false,
        });
    }
    let m = m_of_curve(cf)?;
    let d1 = (q as u128 + 1) % m as u128 == 0;
    let d2 = ((q as u128) * (q as u128) - 1) % m as u128 == 0;
    let verdict = if d1 {
        MaximalityVerdict::MaximalSufficient
    } else if !d2 {
        MaximalityVerdict::NotMaximalNecessaryFailed
    } else {
        MaximalityVerdict::Inconclusive
    };
    Ok(MaximalityReport {
        verdict,
        q,
        genus: gr.genus,
        m_c: Some(m),
        divides_q_plus_one: d1,
        divides_q_squared_minus_one: d2,
    })
}

/// All n up to `bound` such that the curve is maximal over GF(q^(2n)).
/// Requires every orbit factor to be exact: n qualifies precisely when each
/// orbit size mu satisfies mu = 2 * gcd(n, mu).
pub fn maximal_extension_degrees(l: &LPolynomial, bound: u32) -> Result<Vec<u32>> {
    if l.factors.is_empty() {
        return Err(Error::domain(
            "genus zero: maximality over extensions is trivial",
        ));
    }
    if !l.is_exact() {
        return Err(Error::domain(
            "the extension-degree test needs every orbit factor exact, \
             but some are analytic-only",
        ));
    }
    Ok((1..=bound)
        .filter(|&n| l.factors.iter().all(|f| f.mu == 2 * num_integer::gcd(n, f.mu)))
        .collect())
}

// ---------------------------------------------------------------------------
// Covering degree
// ---------------------------------------------------------------------------

/// Degree of the minimal torus covering attached to the homogeneous
/// exponent matrix of the trinomial.
pub fn covering_degree(t: &Trinomial) -> Result<u64> {
    let tri = t.homogeneous_support();
    let mut e = [[0i64; 3]; 3];
    for (r, &(a, b, c)) in tri.iter().enumerate() {
        e[r] = [a as i64, b as i64, c as i64];
    }
    covering_degree_matrix(e)
}

/// Same, for an explicit integer matrix: the minimum over coordinate pairs
/// of the lcm of the two column denominators of the inverse matrix.
pub fn covering_degree_matrix(e: [[i64; 3]; 3]) -> Result<u64> {
    let det = det3(&e);
    if det == 0 {
        return Err(Error::domain("exponent matrix is singular"));
    }
    let adj = adjugate3(&e);
    let da = det.unsigned_abs();
    let mut colden = [1u64; 3];
    for (c, den) in colden.iter_mut().enumerate() {
        let mut l = 1u64;
        for r in 0..3 {
            let g = num_integer::gcd(adj[r][c].unsigned_abs(), da);
            l = l.lcm(&(da / g));
        }
        *den = l;
    }
    let mut best = u64::MAX;
    for i in 0..3 {
        for j in i + 1..3 {
            best = best.min(colden[i].lcm(&colden[j]));
        }
    }
    Ok(best)
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn adjugate3(m: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let minor = |i: usize, j: usize| -> i64 {
        let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
        m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
    };
    let mut adj = [[0i64; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            let sign = if (r + c) % 2 == 0 { 1 } else { -1 };
            adj[r][c] = sign * minor(c, r);
        }
    }
    adj
}

// ---------------------------------------------------------------------------
// Family scans
// ---------------------------------------------------------------------------

/// Upper bound on the number of (curve, field) pairs a single scan expands
/// to.
pub const MAX_SCAN_ITEMS: u64 = 1 << 20;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ExponentSpec {
    Fixed(u32),
    Range { min: u32, max: u32 },
}

#[derive(Clone, Debug, Deserialize)]
pub struct FamilyMonomial {
    pub ex: ExponentSpec,
    pub ey: ExponentSpec,
    /// Coefficient literal such as "1", "-2", or "g^3"; defaults to 1.
    #[serde(default)]
    pub coeff: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum QSpec {
    Range { min: u64, max: u64 },
    List { list: Vec<u64> },
}

#[derive(Clone, Debug, Deserialize)]
pub struct FamilySpec {
    pub monomials: Vec<FamilyMonomial>,
    pub q: QSpec,
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Bound for the minimal maximal-extension search.
    pub extension_bound: u32,
    /// Include point counts for v = 1..=count_depth in each record.
    pub with_counts: bool,
    pub count_depth: u32,
    /// Refuse analytic orbit factors.
    pub exact_only: bool,
    /// Cap on discrete-log table sizes for the fields built during the scan.
    pub table_cap: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            extension_bound: 12,
            with_counts: false,
            count_depth: 2,
            exact_only: false,
            table_cap: DEFAULT_TABLE_CAP,
        }
    }
}

/// One scanned curve. Fields that could not be computed are absent, with
/// `error` explaining the first failure.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRecord {
    pub curve: String,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(rename = "m_C", skip_serializing_if = "Option::is_none")]
    pub m_c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_maximal_extension: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn exponent_range(spec: &ExponentSpec) -> Result<(u32, u32)> {
    match *spec {
        ExponentSpec::Fixed(v) => Ok((v, v)),
        ExponentSpec::Range { min, max } => {
            if min > max {
                Err(Error::parse(format!("empty exponent range {min}..{max}")))
            } else {
                Ok((min, max))
            }
        }
    }
}

fn exponent_combos(monos: &[FamilyMonomial]) -> Result<Vec<Vec<(u32, u32)>>> {
    let mut dims = Vec::with_capacity(monos.len() * 2);
    for m in monos {
        dims.push(exponent_range(&m.ex)?);
        dims.push(exponent_range(&m.ey)?);
    }
    let mut cur: Vec<u32> = dims.iter().map(|d| d.0).collect();
    let mut out = Vec::new();
    loop {
        out.push(cur.chunks(2).map(|c| (c[0], c[1])).collect());
        let mut i = dims.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < dims[i].1 {
                cur[i] += 1;
                for j in i + 1..dims.len() {
                    cur[j] = dims[j].0;
                }
                break;
            }
        }
    }
}

fn raw_curve_string(q: u64, exps: &[(u32, u32)], coeffs: &[Option<String>]) -> String {
    let terms: Vec<String> = exps
        .iter()
        .zip(coeffs)
        .map(|(&(ex, ey), c)| {
            let mut parts = Vec::new();
            if let Some(c) = c {
                if c != "1" || (ex == 0 && ey == 0) {
                    parts.push(c.clone());
                }
            } else if ex == 0 && ey == 0 {
                parts.push("1".to_string());
            }
            if ex == 1 {
                parts.push("x".to_string());
            } else if ex > 1 {
                parts.push(format!("x^{ex}"));
            }
            if ey == 1 {
                parts.push("y".to_string());
            } else if ey > 1 {
                parts.push(format!("y^{ey}"));
            }
            parts.join("*")
        })
        .collect();
    format!("{} over GF({q})", terms.join(" + "))
}

fn scan_item(
    q: u64,
    exps: &[(u32, u32)],
    coeffs: &[Option<String>],
    opts: &ScanOptions,
) -> ScanRecord {
    let mut rec = ScanRecord {
        curve: raw_curve_string(q, exps, coeffs),
        q,
        case: None,
        genus: None,
        m_c: None,
        verdict: None,
        min_maximal_extension: None,
        counts: None,
        error: None,
    };
    let fail = |rec: &mut ScanRecord, e: Error| {
        rec.error = Some(e.to_string());
    };
    let field = match split_prime_power(q).and_then(|(p, k)| make_field_capped(p, k, opts.table_cap))
    {
        Ok(f) => f,
        Err(e) => {
            fail(&mut rec, e);
            return rec;
        }
    };
    let mut monos = Vec::with_capacity(3);
    for (&(ex, ey), c) in exps.iter().zip(coeffs) {
        let coeff = match c {
            Some(s) => match parse_coeff_string(&field, s) {
                Ok(v) => v,
                Err(e) => {
                    fail(&mut rec, e);
                    return rec;
                }
            },
            None => FieldElement::ONE,
        };
        monos.push(Monomial { ex, ey, coeff });
    }
    let t = match Trinomial::new(&field, &monos) {
        Ok(t) => t,
        Err(e) => {
            fail(&mut rec, e);
            return rec;
        }
    };
    rec.curve = t.to_string();
    let cf = match classify(&t) {
        Ok(cf) => cf,
        Err(e) => {
            fail(&mut rec, e);
            return rec;
        }
    };
    rec.case = Some(cf.case_id());
    let gr = match genus(&cf) {
        Ok(g) => g,
        Err(e) => {
            fail(&mut rec, e);
            return rec;
        }
    };
    rec.genus = Some(gr.genus);
    if gr.genus > 0 {
        match m_of_curve(&cf) {
            Ok(m) => rec.m_c = Some(m),
            Err(e) => {
                fail(&mut rec, e);
                return rec;
            }
        }
    }
    match maximal_over_square(&cf) {
        Ok(r) => rec.verdict = Some(r.verdict.to_string()),
        Err(e) => {
            fail(&mut rec, e);
            return rec;
        }
    }
    let zopts = ZetaOptions {
        exact_only: opts.exact_only,
        ..ZetaOptions::default()
    };
    match l_polynomial(&cf, &zopts) {
        Ok(l) => {
            rec.min_maximal_extension = maximal_extension_degrees(&l, opts.extension_bound)
                .ok()
                .and_then(|d| d.first().copied());
            if opts.with_counts {
                let mut counts = Vec::new();
                for v in 1..=opts.count_depth {
                    match point_count_from_l(&cf, &l, v) {
                        Ok(n) => counts.push(n),
                        Err(_) => break,
                    }
                }
                rec.counts = Some(counts);
            }
        }
        Err(e) => fail(&mut rec, e),
    }
    rec
}

/// Expands the family, processes curves in deterministic order (field sizes
/// ascending, then exponents lexicographically), and hands each record to
/// `sink`. Returns the number of records emitted.
pub fn scan<F>(family: &FamilySpec, opts: &ScanOptions, mut sink: F) -> Result<u64>
where
    F: FnMut(&ScanRecord),
{
    if family.monomials.len() != 3 {
        return Err(Error::parse(format!(
            "a trinomial family needs exactly 3 monomials, got {}",
            family.monomials.len()
        )));
    }
    let combos = exponent_combos(&family.monomials)?;
    let qs: Vec<u64> = match &family.q {
        QSpec::Range { min, max } => {
            if min > max {
                return Err(Error::parse(format!("empty field-size range {min}..{max}")));
            }
            (*min..=*max)
                .filter(|&q| split_prime_power(q).is_ok())
                .collect()
        }
        QSpec::List { list } => list.clone(),
    };
    let total = combos.len() as u128 * qs.len() as u128;
    if total > MAX_SCAN_ITEMS as u128 {
        return Err(Error::cap(format!(
            "family expands to {total} curves; the cap is {MAX_SCAN_ITEMS}"
        )));
    }
    let coeffs: Vec<Option<String>> = family.monomials.iter().map(|m| m.coeff.clone()).collect();
    let items: Vec<(u64, &Vec<(u32, u32)>)> = qs
        .iter()
        .flat_map(|&q| combos.iter().map(move |c| (q, c)))
        .collect();
    let mut emitted = 0u64;
    for chunk in items.chunks(64) {
        let recs: Vec<ScanRecord> = chunk
            .par_iter()
            .map(|(q, exps)| scan_item(*q, exps, &coeffs, opts))
            .collect();
        for r in &recs {
            sink(r);
            emitted += 1;
        }
    }
    Ok(emitted)
}
