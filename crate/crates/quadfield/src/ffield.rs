//! Exact arithmetic in F_q for odd prime powers q = p^e.
//!
//! Elements of an extension field are stored as reduced residue vectors over
//! F_p with respect to a fixed monic irreducible modulus of degree e, so
//! equality is plain representation equality. Contexts are cheap to clone
//! (shared behind an `Arc`) and everything here is immutable after
//! construction, so values can be moved freely across threads.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

#[derive(Debug)]
struct CtxInner {
    p: u64,
    e: usize,
    q: u64,
    /// Little-endian coefficients of the monic degree-e modulus over F_p.
    /// Present exactly when e > 1.
    modulus: Option<Vec<u64>>,
}

/// The finite field F_q, q = p^e with p an odd prime.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    inner: Arc<CtxInner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.e == other.inner.e
            && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.e == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{}", self.inner.p, self.inner.e)
        }
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

impl FieldCtx {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Build F_{p^e}. When `e > 1` and no modulus is given, the monic
    /// irreducible of degree e whose coefficient vector `[c0,..,c_{e-1}]` is
    /// lexicographically smallest is chosen, so repeated runs agree.
    pub fn new(p: u64, e: usize, modulus: Option<&[u64]>) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let q = (0..e).try_fold(1u64, |acc, _| acc.checked_mul(p)).ok_or_else(|| {
            Error::InvalidArgument(format!("field size {p}^{e} overflows u64"))
        })?;
        if e == 1 {
            if modulus.is_some() {
                return Err(Error::InvalidArgument(
                    "prime fields take no modulus".into(),
                ));
            }
            return Ok(FieldCtx {
                inner: Arc::new(CtxInner { p, e, q, modulus: None }),
            });
        }
        let modulus = match modulus {
            Some(m) => {
                let mut m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                while m.last() == Some(&0) {
                    m.pop();
                }
                if m.len() != e + 1 || m[e] != 1 {
                    return Err(Error::InvalidArgument(format!(
                        "modulus must be monic of degree {e}"
                    )));
                }
                if !modulus_irreducible(p, &m)? {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None => generate_modulus(p, e)?,
        };
        Ok(FieldCtx {
            inner: Arc::new(CtxInner { p, e, q, modulus: Some(modulus) }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn e(&self) -> usize {
        self.inner.e
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.e == 1
    }

    /// Little-endian coefficients of the extension modulus (None for e = 1).
    pub fn modulus(&self) -> Option<&[u64]> {
        self.inner.modulus.as_deref()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            ctx: self.clone(),
            rep: vec![0; self.inner.e],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// Embed an integer through F_p ⊆ F_q.
    pub fn from_u64(&self, k: u64) -> FieldElement {
        let mut rep = vec![0; self.inner.e];
        rep[0] = k % self.inner.p;
        FieldElement { ctx: self.clone(), rep }
    }

    /// Embed a signed integer through F_p ⊆ F_q.
    pub fn from_int(&self, k: i64) -> FieldElement {
        let p = self.inner.p as i64;
        self.from_u64(k.rem_euclid(p) as u64)
    }

    /// Element from little-endian residues; missing coordinates are zero.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.inner.e {
            return Err(Error::InvalidArgument(format!(
                "residue vector longer than extension degree {}",
                self.inner.e
            )));
        }
        let mut rep = vec![0; self.inner.e];
        for (i, &c) in coeffs.iter().enumerate() {
            rep[i] = c % self.inner.p;
        }
        Ok(FieldElement { ctx: self.clone(), rep })
    }

    /// Element with index `idx` in 0..q under base-p digit order.
    pub fn from_index(&self, idx: u64) -> FieldElement {
        let p = self.inner.p;
        let mut rep = vec![0; self.inner.e];
        let mut rest = idx;
        for slot in rep.iter_mut() {
            *slot = rest % p;
            rest /= p;
        }
        FieldElement { ctx: self.clone(), rep }
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(move |i| self.from_index(i))
    }

    /// The multiplicative inverse of 2 (q is odd).
    pub fn half(&self) -> FieldElement {
        self.from_u64(2).inv().expect("2 is a unit in odd characteristic")
    }

    fn mul_reps(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.inner.p;
        let e = self.inner.e;
        if e == 1 {
            return vec![a[0] * b[0] % p];
        }
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        reduce_by_modulus(&mut prod, self.inner.modulus.as_ref().unwrap(), p);
        prod.truncate(e);
        prod
    }
}

/// Reduce `prod` in place modulo the monic `modulus` over F_p.
fn reduce_by_modulus(prod: &mut Vec<u64>, modulus: &[u64], p: u64) {
    let e = modulus.len() - 1;
    while prod.len() > e {
        let k = prod.len() - 1;
        let lead = prod[k];
        if lead != 0 {
            // prod -= lead * T^(k-e) * modulus
            for (i, &mc) in modulus.iter().enumerate() {
                let idx = k - e + i;
                let sub = lead * mc % p;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        prod.pop();
    }
    while prod.len() < e {
        prod.push(0);
    }
}

/// Irreducibility test for a monic polynomial over F_p given as raw residues.
/// Degree <= 3 only needs a root search; that is all the modulus generator
/// requires to get going, but higher degrees use the distinct-degree check
/// T^(p^k) walk below, so arbitrary e is supported.
fn modulus_irreducible(p: u64, m: &[u64]) -> Result<bool> {
    let e = m.len() - 1;
    if e == 1 {
        return Ok(true);
    }
    // Frobenius walk in F_p[T]/(m): t_{k+1} = t_k^p.
    let mult = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        reduce_by_modulus(&mut prod, m, p);
        prod.truncate(e);
        prod
    };
    let pow_p = |base: &[u64]| -> Vec<u64> {
        let mut result = {
            let mut r = vec![0u64; e];
            r[0] = 1;
            r
        };
        let mut sq = base.to_vec();
        let mut exp = p;
        while exp > 0 {
            if exp & 1 == 1 {
                result = mult(&result, &sq);
            }
            sq = mult(&sq, &sq);
            exp >>= 1;
        }
        result
    };
    let t: Vec<u64> = {
        let mut t = vec![0u64; e];
        t[1] = 1;
        t
    };
    // t_k = T^(p^k) mod m for k = 1..e
    let mut chain = Vec::with_capacity(e);
    let mut cur = t.clone();
    for _ in 0..e {
        cur = pow_p(&cur);
        chain.push(cur.clone());
    }
    if chain[e - 1] != t {
        return Ok(false);
    }
    // For each prime divisor l of e, gcd(T^(p^(e/l)) - T, m) must be 1.
    let sub = |a: &[u64], b: &[u64]| -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
    };
    for l in prime_divisors(e as u64) {
        let k = e / l as usize;
        let h = sub(&chain[k - 1], &t);
        if !raw_gcd_is_constant(p, &h, m) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
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

/// gcd(a, b) over F_p on raw residue slices; true iff it is a nonzero constant.
fn raw_gcd_is_constant(p: u64, a: &[u64], b: &[u64]) -> bool {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lead_inv = mod_inv_u64(b[b.len() - 1], p);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let factor = a[a.len() - 1] * lead_inv % p;
            if factor != 0 {
                for (i, &bc) in b.iter().enumerate() {
                    let sub = factor * bc % p;
                    a[shift + i] = (a[shift + i] + p - sub) % p;
                }
            }
            trim(&mut a);
            if a.len() < b.len() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    a.len() == 1
}

fn mod_inv_u64(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a nonzero mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Smallest (lexicographic coefficient vector) monic irreducible of degree e.
fn generate_modulus(p: u64, e: usize) -> Result<Vec<u64>> {
    let count = (0..e).try_fold(1u64, |acc, _| acc.checked_mul(p)).ok_or_else(|| {
        Error::InvalidArgument("modulus search space overflows u64".into())
    })?;
    for idx in 0..count {
        // Big-endian digits so that [c0, c1, ..] ascends lexicographically.
        let mut m = vec![0u64; e + 1];
        m[e] = 1;
        let mut rest = idx;
        for i in (0..e).rev() {
            m[i] = rest % p;
            rest /= p;
        }
        if modulus_irreducible(p, &m)? {
            return Ok(m);
        }
    }
    Err(Error::Internal(format!(
        "no irreducible of degree {e} over F_{p} found"
    )))
}

/// An element of F_q in canonical (fully reduced) form.
#[derive(Clone, Debug)]
pub struct FieldElement {
    ctx: FieldCtx,
    rep: Vec<u64>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.rep == other.rep
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Little-endian residues over F_p; length equals the extension degree.
    pub fn rep(&self) -> &[u64] {
        &self.rep
    }

    /// Index in 0..q under base-p digits.
    pub fn index(&self) -> u64 {
        let p = self.ctx.p();
        self.rep.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.rep[0] == 1 && self.rep[1..].iter().all(|&c| c == 0)
    }

    /// The residue for prime-field elements.
    pub fn as_u64(&self) -> Option<u64> {
        if self.ctx.is_prime_field() {
            Some(self.rep[0])
        } else {
            None
        }
    }

    fn assert_same_ctx(&self, other: &Self) {
        assert!(
            self.ctx == other.ctx,
            "field context mismatch: {} vs {}",
            self.ctx,
            other.ctx
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let p = self.ctx.p();
        let rep = self
            .rep
            .iter()
            .zip(&other.rep)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElement { ctx: self.ctx.clone(), rep }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let p = self.ctx.p();
        let rep = self
            .rep
            .iter()
            .zip(&other.rep)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElement { ctx: self.ctx.clone(), rep }
    }

    pub fn neg(&self) -> Self {
        let p = self.ctx.p();
        let rep = self.rep.iter().map(|&a| (p - a) % p).collect();
        FieldElement { ctx: self.ctx.clone(), rep }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let rep = self.ctx.mul_reps(&self.rep, &other.rep);
        FieldElement { ctx: self.ctx.clone(), rep }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = self.ctx.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        result
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.ctx.q() - 2))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Euler criterion: x^((q-1)/2) = 1. Errors on zero input.
    pub fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.pow((self.ctx.q() - 1) / 2).is_one())
    }

    /// Square root with a deterministic choice: of the two roots ±y the one
    /// with lexicographically smaller residue vector is returned.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if !self.is_square()? {
            return Err(Error::NotASquare);
        }
        let q = self.ctx.q();
        let y = if q % 4 == 3 {
            self.pow((q + 1) / 4)
        } else {
            self.tonelli_shanks()
        };
        let neg = y.neg();
        let picked = if lex_le(&y.rep, &neg.rep) { y } else { neg };
        debug_assert_eq!(picked.mul(&picked), *self);
        Ok(picked)
    }

    fn tonelli_shanks(&self) -> Self {
        let ctx = &self.ctx;
        let q = ctx.q();
        let mut t = q - 1;
        let mut s = 0u32;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        // Deterministic non-residue scan in index order.
        let z = ctx
            .elements()
            .skip(1)
            .find(|x| !x.is_square().unwrap())
            .expect("a non-residue exists in F_q^x");
        let mut m = s;
        let mut c = z.pow(t);
        let mut r = self.pow((t + 1) / 2);
        let mut tt = self.pow(t);
        loop {
            if tt.is_one() {
                return r;
            }
            // least i with tt^(2^i) = 1
            let mut i = 0u32;
            let mut probe = tt.clone();
            while !probe.is_one() {
                probe = probe.mul(&probe);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = b.mul(&b);
            }
            m = i;
            c = b.mul(&b);
            tt = tt.mul(&c);
            r = r.mul(&b);
        }
    }

    /// Lexicographic comparison of residue vectors (same context assumed).
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.rep.cmp(&other.rep)
    }
}

fn lex_le(a: &[u64], b: &[u64]) -> bool {
    a.cmp(b) != Ordering::Greater
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.is_prime_field() {
            write!(f, "{}", self.rep[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.rep.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.ctx.is_prime_field() {
            serializer.serialize_u64(self.rep[0])
        } else {
            let mut seq = serializer.serialize_seq(Some(self.rep.len()))?;
            for c in &self.rep {
                seq.serialize_element(c)?;
            }
            seq.end()
        }
    }
}

impl Serialize for FieldCtx {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("FieldCtx", 3)?;
        st.serialize_field("p", &self.inner.p)?;
        st.serialize_field("e", &self.inner.e)?;
        st.serialize_field("modulus", &self.inner.modulus)?;
        st.end()
    }
}

macro_rules! binop_impls {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                FieldElement::$method(self, rhs)
            }
        }
        impl std::ops::$trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                FieldElement::$method(&self, &rhs)
            }
        }
    };
}

binop_impls!(Add, add);
binop_impls!(Sub, sub);
binop_impls!(Mul, mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}
