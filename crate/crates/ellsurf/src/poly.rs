//! Exact univariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are stored low-to-high with no trailing zeros, so equality is
//! structural. The degree of the zero polynomial is `None`, never -1; callers
//! that need a frame degree must handle the sentinel explicitly.
//!
//! Polynomial gcds run on primitive integer polynomials (pseudo-remainder
//! sequence with content stripping) and return monic results over Q, which
//! keeps coefficient growth tame at the degrees this crate works with.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar. Always stored reduced with a
/// positive denominator.
pub type Rat = BigRational;

/// A natural number or the +infinity sentinel; infinity compares greater
/// than every finite value. Used for valuations (v(0) = infinity).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// Saturating subtraction; infinity absorbs.
    pub fn minus(self, d: u32) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v - d),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialEq<u32> for Valuation {
    fn eq(&self, other: &u32) -> bool {
        matches!(self, Valuation::Finite(v) if v == other)
    }
}

impl PartialOrd<u32> for Valuation {
    fn partial_cmp(&self, other: &u32) -> Option<Ordering> {
        match self {
            Valuation::Finite(v) => v.partial_cmp(other),
            Valuation::Infinite => Some(Ordering::Greater),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Univariate polynomial with `Rat` coefficients indexed by exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// Builds a polynomial from a low-to-high coefficient list, trimming
    /// trailing zeros into canonical form.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(ints: &[i64]) -> Poly {
        Poly::from_coeffs(ints.iter().map(|&v| Rat::from_integer(v.into())).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c * t^e`.
    pub fn monomial(c: Rat, e: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); e + 1];
        coeffs[e] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Order of vanishing at t = 0: index of the first nonzero coefficient.
    pub fn order_at_zero(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Valuation::Finite(i as u32),
            None => Valuation::Infinite,
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.lc();
        if lc.is_one() {
            self.clone()
        } else {
            self.scale(&lc.recip())
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg g`; `g` must be nonzero.
    pub fn divrem(&self, g: &Poly) -> (Poly, Poly) {
        assert!(!g.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < g.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let glc = g.lc();
        let mut quot = vec![Rat::zero(); self.coeffs.len() - g.coeffs.len() + 1];
        while rem.len() >= g.coeffs.len() && !rem.is_empty() {
            let shift = rem.len() - g.coeffs.len();
            let factor = rem.last().unwrap() / &glc;
            for (i, gc) in g.coeffs.iter().enumerate() {
                let v = &rem[shift + i] - gc * &factor;
                rem[shift + i] = v;
            }
            // leading entry cancels exactly
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            quot[shift] = factor;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero (internal misuse).
    pub fn exact_div(&self, g: &Poly) -> Poly {
        let (q, r) = self.divrem(g);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    /// Rational content and sign scale: returns `(prim, sigma)` with
    /// `self = sigma * prim`, `prim` a primitive integer polynomial with
    /// positive leading coefficient. Zero maps to `(0, 1)`.
    pub fn primitive_scale(&self) -> (Poly, Rat) {
        if self.is_zero() {
            return (Poly::zero(), Rat::one());
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let prim = Poly {
            coeffs: ints
                .iter()
                .map(|v| Rat::from_integer(v / &content))
                .collect(),
        };
        let sigma = Rat::new(content, den_lcm);
        (prim, sigma)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let v = &coeffs[i + j] + a * b;
                coeffs[i + j] = v;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Lexicographic-by-degree ordering used to canonicalize place lists.
pub fn cmp_polys(a: &Poly, b: &Poly) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| {
            for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
}

// ---------------------------------------------------------------------------
// gcd over Q via primitive pseudo-remainder sequences over Z
// ---------------------------------------------------------------------------

fn to_primitive_int(f: &Poly) -> Vec<BigInt> {
    let (prim, _) = f.primitive_scale();
    prim.coeffs.iter().map(|c| c.numer().clone()).collect()
}

fn int_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn trim_int(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of `f` by `g` over Z: `lc(g)^(deg f - deg g + 1) * f mod g`.
fn pseudo_rem(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = f.to_vec();
    let glc = g.last().unwrap().clone();
    while rem.len() >= g.len() && !rem.is_empty() {
        let shift = rem.len() - g.len();
        let top = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c *= &glc;
        }
        for (i, gc) in g.iter().enumerate() {
            rem[shift + i] -= gc * &top;
        }
        trim_int(&mut rem);
    }
    rem
}

/// Monic gcd over Q. `gcd(f, 0) = monic(f)`; `gcd(0, 0) = 0`.
pub fn gcd_monic(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let mut a = to_primitive_int(f);
    let mut b = to_primitive_int(g);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let mut r = pseudo_rem(&a, &b);
        if !r.is_empty() {
            let c = int_content(&r);
            for v in r.iter_mut() {
                *v /= &c;
            }
        }
        a = b;
        b = r;
    }
    Poly::from_coeffs(a.into_iter().map(Rat::from_integer).collect()).monic()
}

/// Extended gcd over Q for coprime inputs: returns `inv` with
/// `inv * f = 1 (mod g)`, or `None` if `gcd(f, g)` is nonconstant.
pub fn mod_inverse(f: &Poly, g: &Poly) -> Option<Poly> {
    // classic extended Euclid over Q; inputs are small residues here
    let mut r0 = g.clone();
    let mut r1 = f.divrem(g).1;
    let mut s0 = Poly::zero();
    let mut s1 = Poly::one();
    if r1.is_zero() {
        return None;
    }
    while !r1.is_zero() {
        let (q, r2) = r0.divrem(&r1);
        let s2 = &s0 - &(&q * &s1);
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if r0.is_constant() && !r0.is_zero() {
        Some(s0.scale(&r0.lc().recip()).divrem(g).1)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// squarefree decomposition (Yun)
// ---------------------------------------------------------------------------

/// Yun's derivative-gcd squarefree decomposition.
///
/// Returns monic, squarefree, pairwise coprime factors with multiplicities;
/// `f = lc(f) * prod factor^multiplicity`. Constants decompose into the empty
/// list. Errors on the zero polynomial.
pub fn squarefree_decompose(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fm = f.monic();
    if fm.is_constant() {
        return Ok(Vec::new());
    }
    let df = fm.derivative();
    let c = gcd_monic(&fm, &df);
    let mut w = fm.exact_div(&c);
    let y = df.exact_div(&c);
    let mut z = &y - &w.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while !w.is_constant() {
        let g = gcd_monic(&w, &z);
        if !g.is_constant() {
            out.push((g.clone(), i));
        }
        w = w.exact_div(&g);
        let y = z.exact_div(&g);
        z = &y - &w.derivative();
        i += 1;
    }
    Ok(out)
}

// 62-bit prime for the modular squarefreeness filter.
const FILTER_PRIME: u64 = 4_611_686_018_427_387_847;

fn small_int_coeffs(f: &Poly) -> Option<Vec<i64>> {
    f.coeffs
        .iter()
        .map(|c| {
            if c.denom().is_one() {
                i64::try_from(c.numer()).ok()
            } else {
                None
            }
        })
        .collect()
}

fn mod_p(v: i64) -> u64 {
    v.rem_euclid(FILTER_PRIME as i64) as u64
}

fn mul_p(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % FILTER_PRIME as u128) as u64
}

fn pow_p(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_p(acc, b);
        }
        b = mul_p(b, b);
        e >>= 1;
    }
    acc
}

/// Degree of gcd(f, f') over F_p. Coefficients must already be reduced and
/// the leading coefficient nonzero mod p.
fn gcd_degree_mod_p(f: &[u64]) -> usize {
    let mut a: Vec<u64> = f.to_vec();
    let mut b: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_p(c, i as u64 % FILTER_PRIME))
        .collect();
    while b.last() == Some(&0) {
        b.pop();
    }
    while !b.is_empty() {
        // a mod b
        let inv = pow_p(*b.last().unwrap(), FILTER_PRIME - 2);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = mul_p(*a.last().unwrap(), inv);
            for (i, &bc) in b.iter().enumerate() {
                let sub = mul_p(q, bc);
                a[shift + i] = (a[shift + i] + FILTER_PRIME - sub) % FILTER_PRIME;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Exact squarefreeness test: `gcd(f, f')` is constant.
///
/// For small integer polynomials a single-prime modular gcd runs first; the
/// prime exceeds every coefficient, so a constant gcd mod p proves a
/// constant gcd over Q. Only the inconclusive direction falls back to the
/// exact gcd.
pub fn is_squarefree(f: &Poly) -> bool {
    if f.is_zero() {
        return false;
    }
    if f.is_constant() {
        return true;
    }
    if let Some(ints) = small_int_coeffs(f) {
        let reduced: Vec<u64> = ints.iter().map(|&v| mod_p(v)).collect();
        // |lc| < p by construction of small_int_coeffs
        if gcd_degree_mod_p(&reduced) == 0 {
            return true;
        }
    }
    gcd_monic(f, &f.derivative()).is_constant()
}

/// Largest e with `p^e | f`; infinity for f = 0. `p` must be monic of
/// degree >= 1.
pub fn valuation(f: &Poly, p: &Poly) -> Result<Valuation> {
    if p.is_constant() || !p.is_monic() {
        return Err(Error::InvalidModulus);
    }
    if f.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let mut e = 0u32;
    let mut cur = f.clone();
    loop {
        let (q, r) = cur.divrem(p);
        if !r.is_zero() {
            return Ok(Valuation::Finite(e));
        }
        e += 1;
        cur = q;
    }
}

/// `s^d * f(1/s)`: the coefficient sequence reversed within a window of
/// length d + 1. Errors when `deg f > d`.
pub fn reverse_pad(f: &Poly, d: usize) -> Result<Poly> {
    match f.degree() {
        None => Ok(Poly::zero()),
        Some(deg) if deg > d => Err(Error::WindowTooSmall { degree: deg, window: d }),
        Some(_) => {
            let mut coeffs = vec![Rat::zero(); d + 1];
            for (i, c) in f.coeffs.iter().enumerate() {
                coeffs[d - i] = c.clone();
            }
            Ok(Poly::from_coeffs(coeffs))
        }
    }
}

/// Maximum absolute value of the coefficients; 0 for the zero polynomial.
pub fn naive_height(f: &Poly) -> Rat {
    let mut h = Rat::zero();
    for c in &f.coeffs {
        let a = c.abs();
        if a > h {
            h = a;
        }
    }
    h
}

// ---------------------------------------------------------------------------
// text grammar
// ---------------------------------------------------------------------------

const EXPONENT_CAP: usize = 1_000_000;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn err(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digit"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    /// coeff := int ("/" uint)?
    fn parse_coeff(&mut self) -> Result<Rat> {
        let neg = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        let mut num = self.parse_uint()?;
        if neg {
            num = -num;
        }
        if self.peek() == Some(b'/') {
            self.bump();
            let at = self.pos;
            let den = self.parse_uint()?;
            if den.is_zero() {
                return Err(Error::Syntax { offset: at, message: "zero denominator".into() });
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }

    /// mono := "t" ("^" uint)?
    fn parse_mono(&mut self) -> Result<usize> {
        if self.peek() != Some(b't') {
            return Err(self.err("expected 't'"));
        }
        self.pos += 1;
        if self.peek() == Some(b'^') {
            self.bump();
            let at = self.pos;
            let e = self.parse_uint()?;
            if e > BigInt::from(EXPONENT_CAP) {
                return Err(Error::ExponentOverflow { offset: at });
            }
            let (_, digits) = e.to_u64_digits();
            Ok(digits.first().copied().unwrap_or(0) as usize)
        } else {
            Ok(1)
        }
    }

    /// term := coeff ("*" mono)? | mono
    fn parse_term(&mut self) -> Result<(Rat, usize)> {
        match self.peek() {
            Some(b't') => {
                let e = self.parse_mono()?;
                Ok((Rat::one(), e))
            }
            Some(b) if b == b'-' || b.is_ascii_digit() => {
                let c = self.parse_coeff()?;
                if self.peek() == Some(b'*') {
                    self.bump();
                    let e = self.parse_mono()?;
                    Ok((c, e))
                } else {
                    Ok((c, 0))
                }
            }
            _ => Err(self.err("expected term")),
        }
    }
}

/// Parses the polynomial grammar
/// `poly := term (("+"|"-") term)*` with
/// `term := coeff ("*" mono)? | mono`, `mono := "t" ("^" uint)?`,
/// `coeff := int ("/" uint)?`. Whitespace between tokens is ignored.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    let mut acc: Vec<(Rat, usize)> = Vec::new();
    let (c, e) = p.parse_term()?;
    acc.push((c, e));
    loop {
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.bump();
                let (c, e) = p.parse_term()?;
                acc.push((c, e));
            }
            Some(b'-') => {
                p.bump();
                let (c, e) = p.parse_term()?;
                acc.push((-c, e));
            }
            Some(_) => return Err(p.err("expected '+', '-', or end of input")),
        }
    }
    let top = acc.iter().map(|(_, e)| *e).max().unwrap_or(0);
    let mut coeffs = vec![Rat::zero(); top + 1];
    for (c, e) in acc {
        let v = &coeffs[e] + c;
        coeffs[e] = v;
    }
    Ok(Poly::from_coeffs(coeffs))
}

fn rat_term(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Emits a string the grammar accepts; `parse_poly(f.to_string()) == f`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let neg = c.is_negative();
            if first {
                if neg {
                    // leading negatives must carry their sign in the coeff
                    if mag.is_one() && e >= 1 {
                        write!(f, "-1*")?;
                    } else {
                        write!(f, "-")?;
                    }
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{}", rat_term(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", rat_term(&mag))?;
                }
                if e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{e}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Parses "p", "p/q", or "-p/q" into a rational.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    let mut p = Parser { bytes: s.as_bytes(), pos: 0 };
    let c = p.parse_coeff()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after rational"));
    }
    Ok(c)
}

/// Renders a rational as "p" or "p/q".
pub fn rat_to_string(c: &Rat) -> String {
    rat_term(c)
}
