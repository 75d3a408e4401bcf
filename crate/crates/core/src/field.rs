//! Exact arithmetic in GF(p) and GF(p^n).
//!
//! A [`FieldSpec`] is a cheap, shareable handle to a finite field together with
//! its precomputed addition and multiplication tables. Elements are stored
//! internally as an index in `0..q`: the integer `c0 + c1·p + … + c(n-1)·p^(n-1)`
//! of the coefficient tuple `(c0, …, c(n-1))` of the representing polynomial.
//! That index order is also the canonical element order used everywhere
//! downstream: `0` first, then `1`, then the remaining elements compared
//! coefficient-wise from the highest degree down.
//!
//! Extension fields are built from a monic reduction polynomial which is
//! checked for irreducibility by exhaustive factor search when the field is
//! constructed. Small extensions have a built-in Conway polynomial.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Default bound on the field order `q`.
pub const DEFAULT_MAX_ORDER: usize = 256;

/// Largest order for which tables can be built at all (they are `q × q`).
pub const TABLE_ORDER_LIMIT: usize = 4096;

/// Conway polynomials for the small extension fields, coefficients listed
/// constant term first.
const CONWAY: &[(u16, u32, &[u16])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {order} exceeds the configured bound {bound}")]
    OrderTooLarge { order: u64, bound: usize },
    #[error("invalid reduction polynomial: {0}")]
    BadPolynomial(String),
    #[error("reduction polynomial {0} is reducible")]
    Reducible(String),
    #[error("elements of {left} and {right} cannot be mixed")]
    Mismatch { left: String, right: String },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element index {value} out of range for {field}")]
    OutOfRange { value: u64, field: String },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T, E = FieldError> = std::result::Result<T, E>;

/// Construction limits for [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldConfig {
    pub max_order: usize,
}

impl Default for FieldConfig {
    fn default() -> Self {
        Self { max_order: DEFAULT_MAX_ORDER }
    }
}

struct Tables {
    p: u16,
    n: u32,
    order: usize,
    /// Reduction polynomial, constant first, monic; `None` for prime fields.
    poly: Option<Vec<u16>>,
    default_poly: bool,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// A finite field GF(p^n). Cloning is cheap.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self> {
        Self::build(p, 1, None, FieldConfig::default())
    }

    /// GF(p^n) with the built-in (or first irreducible) reduction polynomial.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Self::build(p, n, None, FieldConfig::default())
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, n)
    }

    /// GF(p^n) with an explicit reduction polynomial, constant term first.
    pub fn with_poly(p: u64, poly: &[u16]) -> Result<Self> {
        if poly.len() < 2 {
            return Err(FieldError::BadPolynomial("degree must be at least 1".into()));
        }
        Self::build(p, (poly.len() - 1) as u32, Some(poly), FieldConfig::default())
    }

    pub fn build(p: u64, n: u32, poly: Option<&[u16]>, config: FieldConfig) -> Result<Self> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 {
            return Err(FieldError::BadPolynomial("extension degree must be at least 1".into()));
        }
        let order = p.checked_pow(n).unwrap_or(u64::MAX);
        let bound = config.max_order.min(TABLE_ORDER_LIMIT);
        if order > bound as u64 {
            return Err(FieldError::OrderTooLarge { order, bound });
        }
        let p = p as u16;
        let order = order as usize;

        let default = if n > 1 { Some(default_poly(p, n)) } else { None };
        let poly = match (n, poly) {
            (1, None) => None,
            (1, Some(f)) => {
                // A linear modulus is accepted but contributes nothing.
                check_monic(p, 1, f)?;
                None
            }
            (_, Some(f)) => {
                check_monic(p, n, f)?;
                if !is_irreducible(p, f) {
                    return Err(FieldError::Reducible(poly_to_string(f)));
                }
                Some(f.to_vec())
            }
            (_, None) => default.clone(),
        };
        let default_poly = poly == default;
        Ok(Self(Arc::new(Tables::compute(p, n, order, poly, default_poly))))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.n
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Reduction polynomial (constant term first) for extension fields.
    pub fn modulus(&self) -> Option<&[u16]> {
        self.0.poly.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: 1 }
    }

    /// Element with the given canonical index.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.order() as u64 {
            return Err(FieldError::OutOfRange { value, field: self.to_string() });
        }
        Ok(FieldElement { field: self.clone(), value: value as u16 })
    }

    /// Element from its polynomial coefficients, constant term first.
    pub fn from_coeffs(&self, coeffs: &[u16]) -> Result<FieldElement> {
        let p = self.0.p;
        if coeffs.len() > self.0.n as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(FieldError::Parse { what: "coefficient tuple", input: format!("{coeffs:?}") });
        }
        let value = coeffs.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64);
        self.element(value)
    }

    /// Every element exactly once, in canonical order.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.order() as u16).map(|value| FieldElement { field: self.clone(), value }).collect()
    }

    /// Parse an element from its text form: a decimal integer for prime
    /// fields; a polynomial in `x` (e.g. `2x^2+x+1`) or a coefficient tuple
    /// (e.g. `[1,0,2]`, constant first) for extensions.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || FieldError::Parse { what: "field element", input: text.to_string() };
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.parse::<u16>().map_err(|_| err()))
                .collect::<Result<Vec<_>>>()?;
            return self.from_coeffs(&coeffs).map_err(|_| err());
        }
        if self.is_prime_field() {
            let v: u64 = s.parse().map_err(|_| err())?;
            return self.element(v).map_err(|_| err());
        }
        let coeffs = parse_poly(&s, self.0.n as usize, self.0.p).ok_or_else(err)?;
        self.from_coeffs(&coeffs).map_err(|_| err())
    }

    pub(crate) fn add(&self, a: u16, b: u16) -> u16 {
        self.0.add[a as usize * self.0.order + b as usize]
    }

    pub(crate) fn mul(&self, a: u16, b: u16) -> u16 {
        self.0.mul[a as usize * self.0.order + b as usize]
    }

    pub(crate) fn neg(&self, a: u16) -> u16 {
        self.0.neg[a as usize]
    }

    pub(crate) fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse of a nonzero raw value.
    pub(crate) fn inv(&self, a: u16) -> Option<u16> {
        (a != 0).then(|| self.0.inv[a as usize])
    }

    pub(crate) fn pow(&self, a: u16, mut k: u64) -> u16 {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub(crate) fn same(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self == other
    }

    pub(crate) fn check(&self, other: &FieldSpec) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(FieldError::Mismatch { left: self.to_string(), right: other.to_string() })
        }
    }

    /// Text form of a raw element value.
    pub(crate) fn format_value(&self, value: u16) -> String {
        if self.is_prime_field() {
            return value.to_string();
        }
        poly_to_string(&digits(self.0.p, self.0.n, value))
    }

    /// Coefficients of a raw element value, constant first.
    pub(crate) fn coeffs_of(&self, value: u16) -> Vec<u16> {
        digits(self.0.p, self.0.n, value)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.poly == other.0.poly)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.n.hash(state);
        self.0.poly.hash(state);
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "GF({})", self.0.p)?;
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.n)?;
        }
        if let (Some(poly), false) = (&self.0.poly, self.0.default_poly) {
            let list: Vec<String> = poly.iter().map(u16::to_string).collect();
            write!(f, ";poly=[{}]", list.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `GF(p)`, `GF(q)` for a prime power, `GF(p^n)`, each with an
    /// optional `;poly=[c0,c1,…]` suffix.
    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || FieldError::Parse { what: "field spec", input: text.to_string() };
        let (head, poly) = match s.split_once(';') {
            Some((head, tail)) => {
                let list = tail
                    .strip_prefix("poly=[")
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(err)?;
                let coeffs = list
                    .split(',')
                    .map(|c| c.parse::<u16>().map_err(|_| err()))
                    .collect::<Result<Vec<_>>>()?;
                (head.to_string(), Some(coeffs))
            }
            None => (s.clone(), None),
        };
        let inner = head
            .strip_prefix("GF(")
            .or_else(|| head.strip_prefix("gf("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let (p, n) = match inner.split_once('^') {
            Some((p, n)) => {
                let p: u64 = p.parse().map_err(|_| err())?;
                let n: u32 = n.parse().map_err(|_| err())?;
                (p, n)
            }
            None => {
                let q: u64 = inner.parse().map_err(|_| err())?;
                prime_power(q).ok_or(FieldError::NotPrimePower(q))?
            }
        };
        match poly {
            Some(f) => {
                if f.len() != n as usize + 1 {
                    return Err(FieldError::BadPolynomial(format!(
                        "expected degree {n}, got {} coefficients",
                        f.len()
                    )));
                }
                Self::build(p, n, Some(&f), FieldConfig::default())
            }
            None => Self::build(p, n, None, FieldConfig::default()),
        }
    }
}

/// A scalar of some [`FieldSpec`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    value: u16,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Canonical index in `0..q`.
    pub fn value(&self) -> u16 {
        self.value
    }

    /// Polynomial coefficients, constant term first.
    pub fn coeffs(&self) -> Vec<u16> {
        self.field.coeffs_of(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn lift(&self, value: u16) -> Self {
        Self { field: self.field.clone(), value }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.field.check(&rhs.field)?;
        Ok(self.lift(self.field.add(self.value, rhs.value)))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.field.check(&rhs.field)?;
        Ok(self.lift(self.field.sub(self.value, rhs.value)))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.field.check(&rhs.field)?;
        Ok(self.lift(self.field.mul(self.value, rhs.value)))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.mul(&rhs.inverse()?)
    }

    pub fn neg(&self) -> Self {
        self.lift(self.field.neg(self.value))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.field.inv(self.value).map(|v| self.lift(v)).ok_or(FieldError::ZeroInverse)
    }

    /// `self^k`, with `0^0 = 1`.
    pub fn pow(&self, k: u64) -> Self {
        self.lift(self.field.pow(self.value, k))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_value(self.value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

impl Tables {
    fn compute(p: u16, n: u32, order: usize, poly: Option<Vec<u16>>, default_poly: bool) -> Self {
        let q = order;
        let digit_table: Vec<Vec<u16>> = (0..q as u16).map(|v| digits(p, n, v)).collect();
        let encode = |d: &[u16]| d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize) as u16;

        let mut add = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u16> = digit_table[a]
                    .iter()
                    .zip(&digit_table[b])
                    .map(|(&x, &y)| (x + y) % p)
                    .collect();
                add[a * q + b] = encode(&sum);
            }
        }

        let mut mul = vec![0u16; q * q];
        match &poly {
            None => {
                for a in 0..q {
                    for b in 0..q {
                        mul[a * q + b] = ((a * b) % q) as u16;
                    }
                }
            }
            Some(f) => {
                // a·x^i for each a and i, then mul(a, b) = Σ b_i · (a·x^i).
                let times_x = |v: &[u16]| -> Vec<u16> {
                    let nn = n as usize;
                    let top = v[nn - 1];
                    let mut out = vec![0u16; nn];
                    for i in (1..nn).rev() {
                        out[i] = v[i - 1];
                    }
                    // x^n = -(f_0 + … + f_{n-1} x^{n-1})
                    for i in 0..nn {
                        let sub = (top as u32 * f[i] as u32 % p as u32) as u16;
                        out[i] = (out[i] + p - sub) % p;
                    }
                    out
                };
                for a in 0..q {
                    let mut shifted = digit_table[a].clone();
                    let mut acc = vec![vec![0u16; n as usize]; q];
                    for i in 0..n as usize {
                        for (b, row) in acc.iter_mut().enumerate() {
                            let bi = digit_table[b][i] as u32;
                            if bi != 0 {
                                for (slot, &s) in row.iter_mut().zip(&shifted) {
                                    *slot = ((*slot as u32 + bi * s as u32) % p as u32) as u16;
                                }
                            }
                        }
                        shifted = times_x(&shifted);
                    }
                    for (b, row) in acc.iter().enumerate() {
                        mul[a * q + b] = encode(row);
                    }
                }
            }
        }

        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u16;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        Self { p, n, order, poly, default_poly, add, mul, neg, inv }
    }
}

fn digits(p: u16, n: u32, mut value: u16) -> Vec<u16> {
    (0..n)
        .map(|_| {
            let d = value % p;
            value /= p;
            d
        })
        .collect()
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, n)` with `q = p^n`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut n = 0;
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

fn check_monic(p: u16, n: u32, f: &[u16]) -> Result<()> {
    if f.len() != n as usize + 1 {
        return Err(FieldError::BadPolynomial(format!("expected degree {n}, got {} coefficients", f.len())));
    }
    if let Some(c) = f.iter().find(|&&c| c >= p) {
        return Err(FieldError::BadPolynomial(format!("coefficient {c} not reduced mod {p}")));
    }
    if f[n as usize] != 1 {
        return Err(FieldError::BadPolynomial("not monic".into()));
    }
    Ok(())
}

/// Remainder of `f` modulo the monic polynomial `g` over GF(p).
fn poly_rem(p: u16, f: &[u16], g: &[u16]) -> Vec<u16> {
    let p = p as u32;
    let mut r: Vec<u32> = f.iter().map(|&c| c as u32).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let off = r.len() - dg;
        for (i, &gc) in g[..dg].iter().enumerate() {
            r[off + i] = (r[off + i] + p - lead * gc as u32 % p) % p;
        }
    }
    r.into_iter().map(|c| c as u16).collect()
}

/// Exhaustive factor search: `f` (monic, degree n ≥ 2) is irreducible iff no
/// monic polynomial of degree 1..=n/2 divides it.
pub(crate) fn is_irreducible(p: u16, f: &[u16]) -> bool {
    let n = f.len() - 1;
    for k in 1..=n / 2 {
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let mut g = digits(p, k as u32, code as u16);
            g.push(1);
            if poly_rem(p, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Built-in Conway polynomial if known, else the first monic irreducible in
/// index order.
fn default_poly(p: u16, n: u32) -> Vec<u16> {
    if let Some((_, _, f)) = CONWAY.iter().find(|(cp, cn, _)| *cp == p && *cn == n) {
        return f.to_vec();
    }
    let count = (p as u64).pow(n);
    (0..count)
        .map(|code| {
            let mut f: Vec<u16> = {
                let mut c = code;
                (0..n)
                    .map(|_| {
                        let d = (c % p as u64) as u16;
                        c /= p as u64;
                        d
                    })
                    .collect()
            };
            f.push(1);
            f
        })
        .find(|f| is_irreducible(p, f))
        .expect("an irreducible polynomial exists for every degree")
}

fn poly_to_string(coeffs: &[u16]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && deg > 0 { String::new() } else { c.to_string() };
        let term = match deg {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{deg}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Parse `2x^2+x+1` style text into coefficients (constant first).
fn parse_poly(s: &str, n: usize, p: u16) -> Option<Vec<u16>> {
    let mut coeffs = vec![0u16; n];
    let mut seen = vec![false; n];
    for term in s.split('+') {
        let (coef, deg) = match term.split_once('x') {
            None => (term.parse::<u16>().ok()?, 0usize),
            Some((c, rest)) => {
                let c = c.trim_end_matches('*');
                let coef = if c.is_empty() { 1 } else { c.parse().ok()? };
                let deg = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse().ok()? };
                (coef, deg)
            }
        };
        if deg >= n || coef >= p || seen[deg] {
            return None;
        }
        seen[deg] = true;
        coeffs[deg] = coef;
    }
    Some(coeffs)
}
