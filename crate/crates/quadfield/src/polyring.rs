//! The ring R = F_q[T]: dense univariate polynomials over a finite field.
//!
//! `Poly` keeps coefficients in ascending degree order with no trailing
//! zeros, so equality is structural. The degree of the zero polynomial is
//! `None`. Besides ring arithmetic this module carries Euclidean division,
//! gcd, a Rabin irreducibility test, squarefreeness via the formal
//! derivative, exact square roots, the quadratic residue symbol (F/P), and
//! the canonical text format used by the CLI
//! (`T^6+2*T^4+2*T^2+1`, little-endian arrays in JSON).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElement};

/// An element of F_q[T] in canonical form (no trailing zero coefficients).
#[derive(Clone, Debug)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Poly::constant(ctx.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let ctx = c.ctx().clone();
        if c.is_zero() {
            Poly::zero(&ctx)
        } else {
            Poly { ctx, coeffs: vec![c] }
        }
    }

    /// The variable T.
    pub fn variable(ctx: &FieldCtx) -> Self {
        Poly {
            ctx: ctx.clone(),
            coeffs: vec![ctx.zero(), ctx.one()],
        }
    }

    /// c * T^k.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let ctx = c.ctx().clone();
        if c.is_zero() {
            return Poly::zero(&ctx);
        }
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = c;
        Poly { ctx, coeffs }
    }

    pub fn from_coeffs(ctx: &FieldCtx, coeffs: Vec<FieldElement>) -> Self {
        for c in &coeffs {
            assert!(c.ctx() == ctx, "coefficient from a different field context");
        }
        let mut p = Poly { ctx: ctx.clone(), coeffs };
        p.normalize();
        p
    }

    /// Convenience: little-endian signed integer coefficients through F_p.
    pub fn from_int_coeffs(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| ctx.from_int(c)).collect();
        Poly::from_coeffs(ctx, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// Coefficient of T^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    fn assert_same_ctx(&self, other: &Self) {
        assert!(
            self.ctx == other.ctx,
            "polynomial context mismatch: {} vs {}",
            self.ctx,
            other.ctx
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.neg()).collect();
        Poly { ctx: self.ctx.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut coeffs = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Poly::one(&self.ctx);
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

    /// Euclidean division: f = q·g + r with deg r < deg g.
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self)> {
        self.assert_same_ctx(g);
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dg = g.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < dg + 1 {
            return Ok((Poly::zero(&self.ctx), self.clone()));
        }
        let lead_inv = g.lc().inv()?;
        let mut quot = vec![self.ctx.zero(); rem.len() - dg];
        for k in (dg..rem.len()).rev() {
            let factor = rem[k].mul(&lead_inv);
            if factor.is_zero() {
                continue;
            }
            quot[k - dg] = factor.clone();
            for (i, gc) in g.coeffs.iter().enumerate() {
                rem[k - dg + i] = rem[k - dg + i].sub(&factor.mul(gc));
            }
        }
        Ok((
            Poly::from_coeffs(&self.ctx, quot),
            Poly::from_coeffs(&self.ctx, rem),
        ))
    }

    pub fn rem(&self, g: &Self) -> Result<Self> {
        Ok(self.divrem(g)?.1)
    }

    /// True when g divides self exactly.
    pub fn divides_exactly(&self, g: &Self) -> Result<Option<Self>> {
        let (q, r) = self.divrem(g)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Monic gcd; gcd(f, 0) = monic(f).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.assert_same_ctx(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Scale to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero leading coefficient"))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.ctx);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.ctx.from_u64(i as u64)))
            .collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    /// Squarefree iff gcd(f, f') is constant. A vanishing derivative means
    /// f is a p-th power, hence not squarefree in positive degree.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.is_constant() {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&d)?.is_constant())
    }

    /// Horner evaluation at a point of the same field.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        assert!(x.ctx() == &self.ctx, "evaluation point from a different context");
        let mut acc = x.ctx().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation at a point of an extension of a prime coefficient
    /// field; the embedding F_p ⊆ F_{p^e} is the only one supported.
    pub fn eval_embedded(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.ctx() == &self.ctx {
            return Ok(self.eval(x));
        }
        if !self.ctx.is_prime_field() || x.ctx().p() != self.ctx.p() {
            return Err(Error::NoEmbedding);
        }
        let target = x.ctx();
        let mut acc = target.zero();
        for c in self.coeffs.iter().rev() {
            let lifted = target.from_u64(c.as_u64().unwrap());
            acc = acc.mul(x).add(&lifted);
        }
        Ok(acc)
    }

    /// self^exp mod m, square-and-multiply over the bits of `exp`.
    pub fn pow_mod(&self, exp: u128, m: &Self) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut result = Poly::one(&self.ctx).rem(m)?;
        let mut base = self.rem(m)?;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(result)
    }

    /// Rabin test: P of degree n is irreducible iff T^(q^n) = T mod P and
    /// gcd(T^(q^(n/l)) - T, P) = 1 for every prime l dividing n.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantInput),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let q = self.ctx.q();
        let t = Poly::variable(&self.ctx);
        // Frobenius chain: chain[k-1] = T^(q^k) mod self.
        let mut chain = Vec::with_capacity(n);
        let mut cur = t.rem(self)?;
        for _ in 0..n {
            cur = cur.pow_mod(q as u128, self)?;
            chain.push(cur.clone());
        }
        if chain[n - 1] != t.rem(self)? {
            return Ok(false);
        }
        for l in prime_divisors(n as u64) {
            let k = n / l as usize;
            let h = chain[k - 1].sub(&t);
            if h.is_zero() {
                return Ok(false);
            }
            if !self.gcd(&h)?.is_constant() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact square root in R, if it exists. The root's leading coefficient
    /// follows the deterministic field square-root tie-break.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let deg = self.degree().unwrap();
        if deg % 2 != 0 {
            return None;
        }
        let lead = self.lc();
        let root_lc = match lead.is_square() {
            Ok(true) => lead.sqrt().ok()?,
            _ => return None,
        };
        if deg == 0 {
            return Some(Poly::constant(root_lc));
        }
        let monic_part = self.monic();
        let (g, r) = truncated_sqrt(&monic_part);
        if r.is_zero() {
            Some(g.scale(&root_lc))
        } else {
            None
        }
    }

    /// Quadratic residue symbol (F/P) for irreducible P: 0 when P | F, else
    /// ±1 by the Euler criterion F^((q^deg P - 1)/2) mod P.
    pub fn residue_symbol(&self, p: &Self) -> Result<i32> {
        if !p.is_irreducible()? {
            return Err(Error::ReducibleModulus(self.ctx.p()));
        }
        let f = self.rem(p)?;
        if f.is_zero() {
            return Ok(0);
        }
        let n = p.degree().unwrap() as u32;
        let qn = (self.ctx.q() as u128)
            .checked_pow(n)
            .ok_or_else(|| Error::InvalidArgument("residue symbol modulus too large".into()))?;
        let result = f.pow_mod((qn - 1) / 2, p)?;
        if result == Poly::one(&self.ctx) {
            Ok(1)
        } else if result == Poly::one(&self.ctx).neg() {
            Ok(-1)
        } else {
            Err(Error::Internal("Euler criterion returned a non-unit".into()))
        }
    }

    /// Deterministic monic irreducible of degree d for a given seed.
    pub fn random_irreducible(ctx: &FieldCtx, d: usize, seed: u64) -> Result<Poly> {
        if d == 0 {
            return Err(Error::InvalidArgument("degree must be >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let p = Poly::random_monic(ctx, d, &mut rng);
            if p.is_irreducible()? {
                return Ok(p);
            }
        }
    }

    /// Uniform random monic polynomial of exact degree d.
    pub fn random_monic<R: Rng>(ctx: &FieldCtx, d: usize, rng: &mut R) -> Poly {
        let mut coeffs: Vec<FieldElement> = (0..d)
            .map(|_| ctx.from_index(rng.gen_range(0..ctx.q())))
            .collect();
        coeffs.push(ctx.one());
        Poly::from_coeffs(ctx, coeffs)
    }

    /// Stable sort key: (degree+1, coefficient indices little-endian).
    pub fn sort_key(&self) -> (usize, Vec<u64>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().map(|c| c.index()).collect(),
        )
    }

    /// Parse the canonical text format, e.g. `T^6+2*T^4+2*T^2+1`. Extension
    /// field coefficients are bracketed little-endian residue lists such as
    /// `[1,2]*T^3`. Signs and unreduced integers are accepted on input.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Poly> {
        parse_poly(ctx, s)
    }
}

/// Truncated square root of a monic polynomial of even degree 2k: the unique
/// monic g of degree k with deg(f - g^2) < k, found by matching coefficients
/// from the top down; returns (g, f - g^2).
pub fn truncated_sqrt(f: &Poly) -> (Poly, Poly) {
    assert!(f.is_monic(), "truncated sqrt expects a monic polynomial");
    let deg = f.degree().expect("nonzero");
    assert!(deg % 2 == 0, "truncated sqrt expects even degree");
    let k = deg / 2;
    let ctx = f.ctx();
    let half = ctx.half();
    let mut g = Poly::monomial(ctx.one(), k);
    for i in (0..k).rev() {
        let diff = f.sub(&g.mul(&g));
        let c = diff.coeff(k + i);
        if !c.is_zero() {
            g = g.add(&Poly::monomial(c.mul(&half), i));
        }
    }
    let r = f.sub(&g.mul(&g));
    (g, r)
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

/// All monic polynomials of exact degree d, in lexicographic order of the
/// little-endian coefficient vector [c0, .., c_{d-1}].
pub fn monic_polys(ctx: &FieldCtx, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = ctx.q();
    let count = q.checked_pow(d as u32).expect("enumeration space fits u64");
    (0..count).map(move |idx| {
        let mut coeffs = vec![ctx.zero(); d + 1];
        coeffs[d] = ctx.one();
        let mut rest = idx;
        for i in (0..d).rev() {
            coeffs[i] = ctx.from_index(rest % q);
            rest /= q;
        }
        Poly::from_coeffs(ctx, coeffs)
    })
}

/// All monic irreducibles of degree 1..=max_deg, ascending by degree then
/// lexicographic.
pub fn monic_irreducibles(ctx: &FieldCtx, max_deg: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for d in 1..=max_deg {
        for p in monic_polys(ctx, d) {
            if p.is_irreducible()? {
                out.push(p);
            }
        }
    }
    Ok(out)
}

// ---- text format ----

fn parse_poly(ctx: &FieldCtx, s: &str) -> Result<Poly> {
    let mut acc = Poly::zero(ctx);
    let bytes: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if bytes.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut i = 0usize;
    let n = bytes.len();
    let mut first = true;
    while i < n {
        let mut negate = false;
        if bytes[i] == '+' || bytes[i] == '-' {
            negate = bytes[i] == '-';
            i += 1;
        } else if !first {
            return Err(Error::Parse(format!(
                "expected '+' or '-' at position {i} in {s:?}"
            )));
        }
        first = false;
        if i >= n {
            return Err(Error::Parse("trailing sign".into()));
        }
        // coefficient
        let mut coeff: Option<FieldElement> = None;
        if bytes[i] == '[' {
            let close = bytes[i..]
                .iter()
                .position(|&c| c == ']')
                .ok_or_else(|| Error::Parse("unclosed '['".into()))?;
            let inner: String = bytes[i + 1..i + close].iter().collect();
            let mut residues = Vec::new();
            for part in inner.split(',') {
                let v: i64 = part
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue {part:?}")))?;
                residues.push(v.rem_euclid(ctx.p() as i64) as u64);
            }
            coeff = Some(
                ctx.from_coeffs(&residues)
                    .map_err(|e| Error::Parse(e.to_string()))?,
            );
            i += close + 1;
        } else if bytes[i].is_ascii_digit() {
            let start = i;
            while i < n && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = bytes[start..i].iter().collect();
            let v: u64 = text
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {text:?}")))?;
            coeff = Some(ctx.from_u64(v));
        }
        // optional '*' then variable part
        let mut power = 0usize;
        if i < n && bytes[i] == '*' {
            i += 1;
            if i >= n || bytes[i] != 'T' {
                return Err(Error::Parse("expected 'T' after '*'".into()));
            }
        }
        if i < n && bytes[i] == 'T' {
            i += 1;
            power = 1;
            if i < n && bytes[i] == '^' {
                i += 1;
                let start = i;
                while i < n && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(Error::Parse("expected exponent after '^'".into()));
                }
                let text: String = bytes[start..i].iter().collect();
                power = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {text:?}")))?;
            }
        } else if coeff.is_none() {
            return Err(Error::Parse(format!(
                "expected a term at position {i} in {s:?}"
            )));
        }
        let c = coeff.unwrap_or_else(|| ctx.one());
        let c = if negate { c.neg() } else { c };
        acc = acc.add(&Poly::monomial(c, power));
    }
    Ok(acc)
}

impl fmt::Display for Poly {
    /// Canonical rendering: descending powers, '+'-separated, residues in
    /// 0..p (prime fields) or bracketed lists (extensions), unit coefficients
    /// omitted before T.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let prime = self.ctx.is_prime_field();
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let show_coeff = i == 0 || !prime || !c.is_one();
            if show_coeff {
                write!(f, "{c}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i == 1 {
                write!(f, "T")?;
            } else if i > 1 {
                write!(f, "T^{i}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

macro_rules! poly_binop_impls {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                Poly::$method(self, rhs)
            }
        }
        impl std::ops::$trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                Poly::$method(&self, &rhs)
            }
        }
    };
}

poly_binop_impls!(Add, add);
poly_binop_impls!(Sub, sub);
poly_binop_impls!(Mul, mul);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldCtx {
        FieldCtx::prime(5).unwrap()
    }

    fn poly(ctx: &FieldCtx, s: &str) -> Poly {
        Poly::parse(ctx, s).unwrap()
    }

    #[test]
    fn ring_ops() {
        let ctx = f5();
        // (T+1)(T-1) = T^2 - 1 = T^2 + 4
        let prod = poly(&ctx, "T+1").mul(&poly(&ctx, "T-1"));
        assert_eq!(prod, poly(&ctx, "T^2+4"));
        // (3T^2+1) + (2T^2+4) = 0 in characteristic 5
        let sum = poly(&ctx, "3*T^2+1").add(&poly(&ctx, "2*T^2+4"));
        assert!(sum.is_zero());
        // Frobenius over F_3: (T+1)^3 = T^3 + 1
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(poly(&f3, "T+1").pow(3), poly(&f3, "T^3+1"));
    }

    #[test]
    fn division() {
        let ctx = f5();
        let (q, r) = poly(&ctx, "2*T").divrem(&poly(&ctx, "2")).unwrap();
        assert_eq!(q, poly(&ctx, "T"));
        assert!(r.is_zero());
        let (q, r) = poly(&ctx, "T^2+1").divrem(&poly(&ctx, "T")).unwrap();
        assert_eq!(q, poly(&ctx, "T"));
        assert_eq!(r, poly(&ctx, "1"));
        let (q, r) = poly(&ctx, "1").divrem(&poly(&ctx, "T")).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, poly(&ctx, "1"));
        assert_eq!(
            poly(&ctx, "T").divrem(&Poly::zero(&ctx)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn gcds() {
        let ctx = f5();
        assert_eq!(
            poly(&ctx, "T^2-1").gcd(&poly(&ctx, "T-1")).unwrap(),
            poly(&ctx, "T+4")
        );
        assert_eq!(
            poly(&ctx, "2*T").gcd(&poly(&ctx, "2")).unwrap(),
            poly(&ctx, "1")
        );
        let t3_plus_t = poly(&ctx, "T^3+T");
        assert_eq!(
            t3_plus_t.gcd(&poly(&ctx, "T^2+1")).unwrap(),
            poly(&ctx, "T^2+1")
        );
        assert_eq!(
            Poly::zero(&ctx).gcd(&Poly::zero(&ctx)).unwrap_err(),
            Error::BothZero
        );
        // gcd(f, 0) = monic f
        assert_eq!(
            poly(&ctx, "2*T+2").gcd(&Poly::zero(&ctx)).unwrap(),
            poly(&ctx, "T+1")
        );
    }

    #[test]
    fn squarefree() {
        let ctx = f5();
        assert!(poly(&ctx, "T^2+1").is_squarefree().unwrap());
        assert!(!poly(&ctx, "T^2+2*T+1").is_squarefree().unwrap());
        assert!(poly(&ctx, "T^6+2*T^4+2*T^2+1").is_squarefree().unwrap());
        // p-th powers have zero derivative
        assert!(!poly(&ctx, "T^5").is_squarefree().unwrap());
    }

    #[test]
    fn irreducibility() {
        let ctx = f5();
        assert!(poly(&ctx, "T").is_irreducible().unwrap());
        assert!(!poly(&ctx, "T^2+1").is_irreducible().unwrap()); // roots ±2
        assert!(poly(&ctx, "T^2+2").is_irreducible().unwrap());
        assert_eq!(
            poly(&ctx, "3").is_irreducible().unwrap_err(),
            Error::ConstantInput
        );
        // cross-check degree 2 over F_3 against the exhaustive list
        let f3 = FieldCtx::prime(3).unwrap();
        let irr: Vec<String> = monic_polys(&f3, 2)
            .filter(|p| p.is_irreducible().unwrap())
            .map(|p| p.to_string())
            .collect();
        assert_eq!(irr, vec!["T^2+1", "T^2+T+2", "T^2+2*T+2"]);
    }

    #[test]
    fn sqrt_exact() {
        let ctx = f5();
        assert_eq!(
            poly(&ctx, "T^2+2*T+1").sqrt_exact(),
            Some(poly(&ctx, "T+1"))
        );
        assert_eq!(poly(&ctx, "T^2+2").sqrt_exact(), None);
        assert_eq!(
            poly(&ctx, "T^4+2*T^2+1").sqrt_exact(),
            Some(poly(&ctx, "T^2+1"))
        );
        // non-square leading coefficient
        assert_eq!(poly(&ctx, "2*T^2").sqrt_exact(), None);
    }

    #[test]
    fn residue_symbols() {
        let ctx = f5();
        let t = poly(&ctx, "T");
        assert_eq!(poly(&ctx, "1").residue_symbol(&t).unwrap(), 1);
        assert_eq!(poly(&ctx, "T^2+1").residue_symbol(&t).unwrap(), 1);
        assert_eq!(poly(&ctx, "2").residue_symbol(&t).unwrap(), -1);
        assert_eq!(poly(&ctx, "T^3").residue_symbol(&t).unwrap(), 0);
        assert_eq!(
            poly(&ctx, "1").residue_symbol(&poly(&ctx, "T^2+1")).unwrap_err(),
            Error::ReducibleModulus(5)
        );
    }

    #[test]
    fn evaluation() {
        let ctx = f5();
        let two = ctx.from_u64(2);
        assert!(poly(&ctx, "T^2+1").eval(&two).is_zero());
        assert!(poly(&ctx, "1").eval(&two).is_one());
        // T^2+2 vanishes at a root of the F_25 modulus T^2+2
        let f25 = FieldCtx::new(5, 2, None).unwrap();
        assert_eq!(f25.modulus(), Some(&[2, 0, 1][..]));
        let x = f25.from_coeffs(&[0, 1]).unwrap();
        assert!(poly(&ctx, "T^2+2").eval_embedded(&x).unwrap().is_zero());
        let f9 = FieldCtx::new(3, 2, None).unwrap();
        let y = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(
            poly(&ctx, "T").eval_embedded(&y).unwrap_err(),
            Error::NoEmbedding
        );
    }

    #[test]
    fn seeded_irreducibles() {
        let f3 = FieldCtx::prime(3).unwrap();
        let p = Poly::random_irreducible(&f3, 2, 42).unwrap();
        assert!(["T^2+1", "T^2+T+2", "T^2+2*T+2"].contains(&p.to_string().as_str()));
        assert_eq!(p, Poly::random_irreducible(&f3, 2, 42).unwrap());
        let linear = Poly::random_irreducible(&f5(), 1, 7).unwrap();
        assert_eq!(linear.degree(), Some(1));
        let q = Poly::random_irreducible(&f5(), 2, 0).unwrap();
        assert!(q.is_irreducible().unwrap());
    }

    #[test]
    fn text_round_trip() {
        let ctx = f5();
        for s in ["T^6+2*T^4+2*T^2+1", "T+4", "2", "0", "T^3", "4*T^2+T+3"] {
            let p = poly(&ctx, s);
            assert_eq!(p.to_string(), s);
            assert_eq!(Poly::parse(&ctx, &p.to_string()).unwrap(), p);
        }
        // input liberties: signs, unreduced coefficients, whitespace
        assert_eq!(poly(&ctx, "T - 1"), poly(&ctx, "T+4"));
        assert_eq!(poly(&ctx, "7*T"), poly(&ctx, "2*T"));
        assert!(Poly::parse(&ctx, "T^").is_err());
        assert!(Poly::parse(&ctx, "").is_err());
    }

    #[test]
    fn extension_coefficient_text() {
        let f9 = FieldCtx::new(3, 2, None).unwrap();
        let p = Poly::parse(&f9, "[1,2]*T^2+[0,1]*T+[2,0]").unwrap();
        assert_eq!(p.to_string(), "[1,2]*T^2+[0,1]*T+[2,0]");
        assert_eq!(Poly::parse(&f9, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn truncated_sqrt_decomposition() {
        let ctx = f5();
        let d = poly(&ctx, "T^4+T");
        let (g, r) = truncated_sqrt(&d);
        assert_eq!(g, poly(&ctx, "T^2"));
        assert_eq!(r, poly(&ctx, "T"));
        assert_eq!(g.mul(&g).add(&r), d);
    }
}
