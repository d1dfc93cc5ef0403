//! Continued fraction expansion of √D over F_q(T).
//!
//! Complete quotients are surds α_n = (√D + P_n)/Q_n with the integrality
//! invariant Q_n | D − P_n². One step of the expansion is
//!
//! ```text
//!   a_n     = quo(f + P_n, Q_n)          (Euclidean quotient)
//!   P_{n+1} = a_n Q_n − P_n
//!   Q_{n+1} = (D − P_{n+1}²) / Q_n       (always an exact division)
//! ```
//!
//! with a_0 = f, P_1 = f, Q_1 = D − f² = r. The Euclidean quotient really is
//! the polynomial part of α_n because deg(√D − f) < 0. The tail is periodic:
//! the period ℓ is the first return of (P_{n+1}, Q_{n+1}) to (P_1, Q_1), and
//! the quasi-period v is the first n ≥ 1 with Q_n constant; v = ℓ or ℓ/2.
//!
//! While expanding we also track convergents p_n/q_n and, at every step, the
//! constant κ_n with p_{n−1}² − D q_{n−1}² = κ_n Q_n. The measured κ-sequence
//! is recorded rather than normalized away; the Pell solver consumes it.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::ffield::FieldElement;
use crate::polyring::Poly;
use crate::quadext::{norm_form, Discriminant};

/// A complete quotient (√D + P_n)/Q_n mid-expansion.
#[derive(Clone, Debug)]
pub struct SurdState {
    disc: Discriminant,
    n: usize,
    p_n: Poly,
    q_n: Poly,
}

impl SurdState {
    /// State at n = 1: P_1 = f, Q_1 = r. The n = 0 row is (P_0, Q_0) = (0, 1)
    /// with a_0 = f, available from the discriminant itself.
    pub fn init(disc: &Discriminant) -> SurdState {
        SurdState {
            disc: disc.clone(),
            n: 1,
            p_n: disc.f().clone(),
            q_n: disc.r().clone(),
        }
    }

    pub fn index(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &Poly {
        &self.p_n
    }

    pub fn q(&self) -> &Poly {
        &self.q_n
    }

    /// Advance one step, returning the partial quotient a_n at this state.
    pub fn step(&self) -> Result<(Poly, SurdState)> {
        let d = self.disc.poly();
        let f = self.disc.f();
        let (a_n, _) = f.add(&self.p_n).divrem(&self.q_n)?;
        let p_next = a_n.mul(&self.q_n).sub(&self.p_n);
        let num = d.sub(&p_next.mul(&p_next));
        let q_next = num
            .divides_exactly(&self.q_n)?
            .ok_or(Error::InternalDivisibility(self.n))?;
        if q_next.is_zero() {
            // would mean D = P², impossible for a validated discriminant
            return Err(Error::InternalDivisibility(self.n));
        }
        Ok((
            a_n,
            SurdState {
                disc: self.disc.clone(),
                n: self.n + 1,
                p_n: p_next,
                q_n: q_next,
            },
        ))
    }
}

/// One full period of the expansion of √D with convergents, quasi-period
/// data, fundamental unit, and regulator.
#[derive(Clone, Debug)]
pub struct Expansion {
    disc: Discriminant,
    /// a_0 .. a_ell
    a: Vec<Poly>,
    /// P_0 .. P_{ell+1}
    p_seq: Vec<Poly>,
    /// Q_0 .. Q_{ell+1}
    q_seq: Vec<Poly>,
    /// convergent numerators p_0 .. p_ell
    conv_p: Vec<Poly>,
    /// convergent denominators q_0 .. q_ell
    conv_q: Vec<Poly>,
    /// measured constants κ_n with p_{n-1}² − D q_{n-1}² = κ_n Q_n, n = 0..ell+1
    kappa_seq: Vec<FieldElement>,
    ell: usize,
    v: usize,
    kappa: FieldElement,
    unit: (Poly, Poly),
    regulator: usize,
}

/// Default step guard: 4·q^d + 16, capped to keep runaway inputs bounded.
pub fn default_max_steps(disc: &Discriminant) -> usize {
    let q = disc.ctx().q();
    let budget = q
        .checked_pow(disc.half_degree() as u32)
        .and_then(|x| x.checked_mul(4))
        .and_then(|x| x.checked_add(16))
        .unwrap_or(u64::MAX);
    budget.min(10_000_000) as usize
}

/// Expand √D through one full period.
pub fn expand(disc: &Discriminant, max_steps: usize) -> Result<Expansion> {
    if max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be >= 1".into()));
    }
    let ctx = disc.ctx();
    let d = disc.poly();
    let f = disc.f();

    let mut a = vec![f.clone()];
    let mut p_seq = vec![Poly::zero(ctx), f.clone()];
    let mut q_seq = vec![Poly::one(ctx), disc.r().clone()];

    let mut conv_p = vec![f.clone()];
    let mut conv_q = vec![Poly::one(ctx)];
    // p_{-1} = 1, q_{-1} = 0
    let mut prev_p = (Poly::one(ctx), f.clone());
    let mut prev_q = (Poly::zero(ctx), Poly::one(ctx));

    // κ_0 = 1 from p_{-1}² − D q_{-1}² = 1 = Q_0.
    let mut kappa_seq = vec![ctx.one()];
    let measure_kappa = |num: &Poly, q_n: &Poly, n: usize| -> Result<FieldElement> {
        let quot = num
            .divides_exactly(q_n)?
            .ok_or_else(|| Error::Internal(format!("convergent norm not a multiple of Q_{n}")))?;
        if !quot.is_constant() || quot.is_zero() {
            return Err(Error::Internal(format!(
                "convergent norm is not a unit multiple of Q_{n}"
            )));
        }
        Ok(quot.coeff(0))
    };
    kappa_seq.push(measure_kappa(
        &norm_form(&prev_p.1, &prev_q.1, disc),
        &q_seq[1],
        1,
    )?);

    let first = (p_seq[1].clone(), q_seq[1].clone());
    let mut state = SurdState::init(disc);
    let mut ell = None;
    for _ in 0..max_steps {
        let (a_n, next) = state.step()?;
        // convergents at index n (state.n before stepping)
        let new_p = a_n.mul(&prev_p.1).add(&prev_p.0);
        let new_q = a_n.mul(&prev_q.1).add(&prev_q.0);
        a.push(a_n);
        conv_p.push(new_p.clone());
        conv_q.push(new_q.clone());
        prev_p = (prev_p.1, new_p);
        prev_q = (prev_q.1, new_q);

        p_seq.push(next.p().clone());
        q_seq.push(next.q().clone());
        let n_next = next.index();
        kappa_seq.push(measure_kappa(
            &norm_form(&prev_p.1, &prev_q.1, disc),
            next.q(),
            n_next,
        )?);

        if (next.p(), next.q()) == (&first.0, &first.1) {
            ell = Some(next.index() - 1);
            break;
        }
        state = next;
    }
    let ell = ell.ok_or(Error::PeriodNotFound(max_steps))?;

    let v = (1..=ell)
        .find(|&n| q_seq[n].is_constant())
        .ok_or_else(|| Error::Internal("no constant complete denominator in a period".into()))?;
    if !(v == ell || 2 * v == ell) {
        return Err(Error::Internal(format!(
            "quasi-period {v} is neither the period {ell} nor half of it"
        )));
    }
    let kappa = q_seq[v].coeff(0);

    // Fundamental unit at the quasi-period; its norm κ_v·Q_v is constant by
    // the per-step measurement. Fall back to the full period if that ever
    // failed to be a unit.
    let pick_unit = |idx: usize| -> Option<(Poly, Poly)> {
        let u = (conv_p[idx - 1].clone(), conv_q[idx - 1].clone());
        let n = norm_form(&u.0, &u.1, disc);
        (n.is_constant() && !n.is_zero()).then_some(u)
    };
    let unit = pick_unit(v)
        .or_else(|| pick_unit(ell))
        .ok_or_else(|| Error::Internal("no unit found at quasi-period or period".into()))?;
    let regulator = unit.0.degree().expect("unit numerator is nonzero");
    let degree_sum: usize = a[..v].iter().map(|ai| ai.degree().unwrap_or(0)).sum();
    if regulator != degree_sum || regulator == 0 {
        return Err(Error::Internal(format!(
            "regulator {regulator} disagrees with partial quotient degrees {degree_sum}"
        )));
    }

    Ok(Expansion {
        disc: disc.clone(),
        a,
        p_seq,
        q_seq,
        conv_p,
        conv_q,
        kappa_seq,
        ell,
        v,
        kappa,
        unit,
        regulator,
    })
}

impl Expansion {
    pub fn disc(&self) -> &Discriminant {
        &self.disc
    }

    /// Partial quotients a_0 ..= a_ell.
    pub fn a(&self) -> &[Poly] {
        &self.a
    }

    /// P_0 ..= P_{ell+1}.
    pub fn p_seq(&self) -> &[Poly] {
        &self.p_seq
    }

    /// Q_0 ..= Q_{ell+1}.
    pub fn q_seq(&self) -> &[Poly] {
        &self.q_seq
    }

    /// Convergent numerators p_0 ..= p_ell.
    pub fn convergent_p(&self) -> &[Poly] {
        &self.conv_p
    }

    /// Convergent denominators q_0 ..= q_ell.
    pub fn convergent_q(&self) -> &[Poly] {
        &self.conv_q
    }

    /// Measured constants κ_n with p_{n-1}² − D q_{n-1}² = κ_n Q_n.
    pub fn kappa_seq(&self) -> &[FieldElement] {
        &self.kappa_seq
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// The quasi-period constant Q_v.
    pub fn kappa(&self) -> &FieldElement {
        &self.kappa
    }

    /// Fundamental unit coordinates (U, V) with ε = U + V √D.
    pub fn unit(&self) -> (&Poly, &Poly) {
        (&self.unit.0, &self.unit.1)
    }

    pub fn regulator(&self) -> usize {
        self.regulator
    }

    /// Degrees of the interior complete denominators Q_i, 0 < i < v.
    pub fn interior_q_degrees(&self) -> Vec<usize> {
        (1..self.v)
            .map(|i| self.q_seq[i].degree().expect("interior Q is nonzero"))
            .collect()
    }

    /// Palindrome check a_{ℓ−i} = a_i for 0 < i < ℓ, reported both exactly
    /// and up to a constant factor.
    pub fn check_symmetry(&self) -> SymmetryReport {
        let mut exact = true;
        let mut first_exact = None;
        let mut up_to_constant = true;
        let mut first_constant = None;
        for i in 1..self.ell {
            let lhs = &self.a[self.ell - i];
            let rhs = &self.a[i];
            if lhs != rhs && exact {
                exact = false;
                first_exact = Some(i);
            }
            if proportional_constant(lhs, rhs).is_none() && up_to_constant {
                up_to_constant = false;
                first_constant = Some(i);
            }
        }
        SymmetryReport {
            exact,
            first_exact_violation: first_exact,
            up_to_constant,
            first_constant_violation: first_constant,
        }
    }

    /// Quasi-period relation a_{n+v} = c^{±1} a_n: determines c and the
    /// exponent pattern, verifying it over the cyclic part of the period.
    pub fn quasi_relation(&self) -> Result<QuasiPeriodReport> {
        let ctx = self.disc.ctx();
        if self.v == self.ell {
            return Ok(QuasiPeriodReport {
                c: ctx.one(),
                pattern: vec![1; self.ell],
                v: self.v,
                ell: self.ell,
            });
        }
        // v = ell/2: compare a_{n+v} with a_n for 1 <= n <= v.
        let c = proportional_constant(&self.a[1 + self.v], &self.a[1])
            .ok_or(Error::RelationViolated(1))?;
        let c_inv = c.inv().map_err(|_| Error::RelationViolated(1))?;
        let mut pattern = Vec::with_capacity(self.v);
        for n in 1..=self.v {
            let target = &self.a[n + self.v];
            if &self.a[n].scale(&c) == target {
                pattern.push(1i8);
            } else if &self.a[n].scale(&c_inv) == target {
                pattern.push(-1i8);
            } else {
                return Err(Error::RelationViolated(n));
            }
        }
        Ok(QuasiPeriodReport {
            c,
            pattern,
            v: self.v,
            ell: self.ell,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "D": self.disc.poly(),
            "a": self.a,
            "P": self.p_seq,
            "Q": self.q_seq,
            "ell": self.ell,
            "v": self.v,
            "kappa": self.kappa,
            "unit": {"U": self.unit.0, "V": self.unit.1},
            "regulator": self.regulator,
        })
    }
}

/// The constant c with lhs = c·rhs, if the two polynomials are proportional.
pub fn proportional_constant(lhs: &Poly, rhs: &Poly) -> Option<FieldElement> {
    if rhs.is_zero() {
        return lhs.is_zero().then(|| lhs.ctx().one());
    }
    if lhs.degree() != rhs.degree() {
        return None;
    }
    let c = lhs.lc().div(&rhs.lc()).ok()?;
    (&rhs.scale(&c) == lhs).then_some(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub exact: bool,
    pub first_exact_violation: Option<usize>,
    pub up_to_constant: bool,
    pub first_constant_violation: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiPeriodReport {
    /// The constant of a_{n+v} = c^{±1} a_n.
    pub c: FieldElement,
    /// Exponent of c used at each n = 1..=v (or the whole period when v = ℓ).
    pub pattern: Vec<i8>,
    pub v: usize,
    pub ell: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldCtx;

    fn f5() -> FieldCtx {
        FieldCtx::prime(5).unwrap()
    }

    fn disc(ctx: &FieldCtx, s: &str) -> Discriminant {
        Discriminant::new(Poly::parse(ctx, s).unwrap()).unwrap()
    }

    fn expand_str(ctx: &FieldCtx, s: &str) -> Expansion {
        let d = disc(ctx, s);
        expand(&d, default_max_steps(&d)).unwrap()
    }

    #[test]
    fn init_states() {
        let ctx = f5();
        let d = disc(&ctx, "T^2+2");
        let s = SurdState::init(&d);
        assert_eq!(s.p(), &Poly::parse(&ctx, "T").unwrap());
        assert_eq!(s.q(), &Poly::parse(&ctx, "2").unwrap());
        let d = disc(&ctx, "T^4+T");
        let s = SurdState::init(&d);
        assert_eq!(s.p(), &Poly::parse(&ctx, "T^2").unwrap());
        assert_eq!(s.q(), &Poly::parse(&ctx, "T").unwrap());
        let d = disc(&ctx, "T^2+1");
        let s = SurdState::init(&d);
        assert_eq!(s.q(), &Poly::parse(&ctx, "1").unwrap());
    }

    #[test]
    fn single_steps() {
        let ctx = f5();
        let d = disc(&ctx, "T^2+2");
        let s1 = SurdState::init(&d);
        let (a1, s2) = s1.step().unwrap();
        assert_eq!(a1, Poly::parse(&ctx, "T").unwrap());
        assert_eq!(s2.p(), &Poly::parse(&ctx, "T").unwrap());
        assert_eq!(s2.q(), &Poly::parse(&ctx, "1").unwrap());
        let (a2, s3) = s2.step().unwrap();
        assert_eq!(a2, Poly::parse(&ctx, "2*T").unwrap());
        assert_eq!(s3.p(), &Poly::parse(&ctx, "T").unwrap());
        assert_eq!(s3.q(), &Poly::parse(&ctx, "2").unwrap());

        let d = disc(&ctx, "T^4+T");
        let (a1, s2) = SurdState::init(&d).step().unwrap();
        assert_eq!(a1, Poly::parse(&ctx, "2*T").unwrap());
        assert_eq!(s2.p(), &Poly::parse(&ctx, "T^2").unwrap());
        assert_eq!(s2.q(), &Poly::parse(&ctx, "1").unwrap());
    }

    #[test]
    fn expansion_t2_plus_1() {
        let ctx = f5();
        let e = expand_str(&ctx, "T^2+1");
        assert_eq!(e.ell(), 1);
        assert_eq!(e.v(), 1);
        assert_eq!(e.a()[0], Poly::parse(&ctx, "T").unwrap());
        assert_eq!(e.a()[1], Poly::parse(&ctx, "2*T").unwrap());
        assert_eq!(e.unit().0, &Poly::parse(&ctx, "T").unwrap());
        assert_eq!(e.unit().1, &Poly::parse(&ctx, "1").unwrap());
        assert_eq!(e.regulator(), 1);
    }

    #[test]
    fn expansion_t2_plus_2() {
        let ctx = f5();
        let e = expand_str(&ctx, "T^2+2");
        assert_eq!(e.ell(), 2);
        assert_eq!(e.v(), 1);
        assert_eq!(e.kappa(), &ctx.from_u64(2));
        let names: Vec<String> = e.a().iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["T", "T", "2*T"]);
        assert_eq!(e.unit().0, &Poly::parse(&ctx, "T").unwrap());
        assert_eq!(e.regulator(), 1);
        // unit norm is a nonzero constant
        let n = norm_form(e.unit().0, e.unit().1, e.disc());
        assert_eq!(n, Poly::parse(&ctx, "3").unwrap());
    }

    #[test]
    fn expansion_t4_plus_t() {
        let ctx = f5();
        let e = expand_str(&ctx, "T^4+T");
        assert_eq!(e.ell(), 2);
        assert_eq!(e.v(), 2);
        let names: Vec<String> = e.a().iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["T^2", "2*T", "2*T^2"]);
        let qnames: Vec<String> = e.q_seq()[..3].iter().map(|p| p.to_string()).collect();
        assert_eq!(qnames, vec!["1", "T", "1"]);
        assert_eq!(e.regulator(), 3);
        assert_eq!(e.interior_q_degrees(), vec![1]);
    }

    #[test]
    fn symmetry_and_quasi_relation() {
        let ctx = f5();
        let e = expand_str(&ctx, "T^2+2");
        let sym = e.check_symmetry();
        assert!(sym.exact && sym.up_to_constant);
        // a_2 = 2T = 2·a_1, so c = 2 with v = 1, ell = 2
        let qr = e.quasi_relation().unwrap();
        assert_eq!(qr.c, ctx.from_u64(2));
        let e = expand_str(&ctx, "T^2+1");
        assert_eq!(e.quasi_relation().unwrap().c, ctx.one());
        let e = expand_str(&ctx, "T^4+T");
        assert!(e.check_symmetry().exact);
    }

    #[test]
    fn kappa_sequence_starts_with_one_then_minus_one() {
        let ctx = f5();
        let e = expand_str(&ctx, "T^4+T");
        // κ_0 = 1 and κ_1 = −1 because p_0² − D q_0² = f² − D = −r = −Q_1
        assert!(e.kappa_seq()[0].is_one());
        assert_eq!(e.kappa_seq()[1], ctx.from_int(-1));
    }

    #[test]
    fn period_not_found_guard() {
        let ctx = f5();
        let d = disc(&ctx, "T^6+2*T^4+2*T^2+1");
        assert_eq!(expand(&d, 1).unwrap_err(), Error::PeriodNotFound(1));
    }
}
