//! Class-number lower bounds from the continued fraction of √D.
//!
//! For an irreducible P splitting in K, h(D) is bounded below by
//! min( min_{0<i<v} deg Q_i , d ) / deg P; the integer bound is the ceiling
//! since h is an integer. Family constructors assemble the discriminants
//! with closed-form expansions — D = F²+c, D = (SG)²+cS, the four
//! D = (A^m ± a (± 1))² ± A shapes with A = 2a+1 monic — plus the three
//! corollary families and the worked example D = (T(T^m+1))² + (T^m+1),
//! each with its predicted bound and, when the family pins one down, a
//! suggested splitting prime.

use serde::Serialize;
use serde_json::json;

use crate::contfrac::{default_max_steps, expand, Expansion};
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElement};
use crate::polyring::Poly;
use crate::quadext::{splitting_type, Discriminant, SplitType};

/// Which branch of the bound produced the minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundWitness {
    /// deg Q_i at an interior index 0 < i < v.
    Interior(usize),
    /// The d = ½ deg D branch (interior list empty or all larger).
    HalfDegree,
}

/// Theorem-style lower bound report for a pair (D, P).
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub disc_poly: Poly,
    pub prime: Poly,
    pub v: usize,
    pub qdegs: Vec<usize>,
    pub d: usize,
    /// Exact rational bound num/den = min(min qdegs, d)/deg P.
    pub bound_num: usize,
    pub bound_den: usize,
    /// Ceiling of the rational bound; h(D) is an integer.
    pub bound_int: u64,
    pub witness: BoundWitness,
    /// True when deg P divides the minimizing degree, so the stronger
    /// "h has a factor of this size" reading applies.
    pub divisibility_hint: bool,
}

impl BoundReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "D": self.disc_poly,
            "P": self.prime,
            "v": self.v,
            "qdegs": self.qdegs,
            "d": self.d,
            "bound": {"num": self.bound_num, "den": self.bound_den, "ceil": self.bound_int},
            "witness": match self.witness {
                BoundWitness::Interior(i) => json!(i),
                BoundWitness::HalfDegree => json!("d"),
            },
        })
    }
}

/// The Theorem-1 lower bound for a splitting prime P.
pub fn lower_bound(disc: &Discriminant, p: &Poly) -> Result<BoundReport> {
    let exp = checked_expansion(disc)?;
    lower_bound_with(disc, p, &exp)
}

/// As `lower_bound`, reusing an existing expansion of the same D.
pub fn lower_bound_with(disc: &Discriminant, p: &Poly, exp: &Expansion) -> Result<BoundReport> {
    if !disc.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    match splitting_type(p, disc)? {
        SplitType::Split => {}
        SplitType::Ramified => return Err(Error::Ramified),
        SplitType::Inert => return Err(Error::NotSplit),
    }
    let deg_p = p.degree().expect("irreducible P is nonconstant");
    let d = disc.half_degree();
    let qdegs = exp.interior_q_degrees();
    let (min_deg, witness) = qdegs
        .iter()
        .copied()
        .enumerate()
        .min_by_key(|&(_, deg)| deg)
        .map(|(i, deg)| (deg, BoundWitness::Interior(i + 1)))
        .filter(|&(deg, _)| deg < d)
        .unwrap_or((d, BoundWitness::HalfDegree));
    debug_assert!(qdegs.iter().all(|&deg| deg >= 1));
    let bound_int = (min_deg as u64).div_ceil(deg_p as u64).max(1);
    Ok(BoundReport {
        disc_poly: disc.poly().clone(),
        prime: p.clone(),
        v: exp.v(),
        qdegs,
        d,
        bound_num: min_deg,
        bound_den: deg_p,
        bound_int,
        witness,
        divisibility_hint: min_deg % deg_p == 0,
    })
}

fn checked_expansion(disc: &Discriminant) -> Result<Expansion> {
    expand(disc, default_max_steps(disc))
}

/// The four discriminant shapes of the (A^m ± a (± 1))² ± A families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Thm3Variant {
    /// D = (A^m + a)² + A
    PlusPlus,
    /// D = (A^m − a)² + A
    MinusPlus,
    /// D = (A^m + a + 1)² − A
    PlusMinus,
    /// D = (A^m − a − 1)² − A
    MinusMinus,
}

impl Thm3Variant {
    pub const ALL: [Thm3Variant; 4] = [
        Thm3Variant::PlusPlus,
        Thm3Variant::MinusPlus,
        Thm3Variant::PlusMinus,
        Thm3Variant::MinusMinus,
    ];

    /// 1-based position matching the `thm3_1..4` CLI naming.
    pub fn number(&self) -> usize {
        match self {
            Thm3Variant::PlusPlus => 1,
            Thm3Variant::MinusPlus => 2,
            Thm3Variant::PlusMinus => 3,
            Thm3Variant::MinusMinus => 4,
        }
    }
}

/// Assemble the variant polynomial D from (variant, m, a) with A = 2a+1.
pub fn thm3_polynomial(variant: Thm3Variant, m: u32, a: &Poly) -> Result<Poly> {
    let ctx = a.ctx().clone();
    if a.is_constant() {
        return Err(Error::SideCondition("a must be nonconstant".into()));
    }
    if m == 0 {
        return Err(Error::SideCondition("m must be >= 1".into()));
    }
    let big_a = a.scale(&ctx.from_u64(2)).add(&Poly::one(&ctx));
    if !big_a.is_monic() {
        return Err(Error::NotMonicA);
    }
    let am = big_a.pow(m as u64);
    let one = Poly::one(&ctx);
    let base = match variant {
        Thm3Variant::PlusPlus => am.add(a),
        Thm3Variant::MinusPlus => am.sub(a),
        Thm3Variant::PlusMinus => am.add(a).add(&one),
        Thm3Variant::MinusMinus => am.sub(a).sub(&one),
    };
    let d = match variant {
        Thm3Variant::PlusPlus | Thm3Variant::MinusPlus => base.mul(&base).add(&big_a),
        Thm3Variant::PlusMinus | Thm3Variant::MinusMinus => base.mul(&base).sub(&big_a),
    };
    Ok(d)
}

/// A = 2a + 1 for the Theorem-3 style families.
pub fn thm3_a_poly(a: &Poly) -> Poly {
    let ctx = a.ctx();
    a.scale(&ctx.from_u64(2)).add(&Poly::one(ctx))
}

/// Family selectors with their parameters.
#[derive(Clone, Debug)]
pub enum FamilySpec {
    /// D = F² + c, c ∈ F_q^×, F monic nonconstant.
    Thm2F2c { f: Poly, c: FieldElement },
    /// D = (SG)² + cS, S and G monic nonconstant, c ∈ F_q^×.
    Thm2SGc { s: Poly, g: Poly, c: FieldElement },
    /// D = (A^m ± a (± 1))² ± A with A = 2a+1 monic.
    Thm3 { variant: Thm3Variant, a: Poly, m: u32 },
    /// D = (PG)² + c with deg G ≥ 2, P irreducible, (c/P) = 1.
    Cor1 { p: Poly, g: Poly, c: FieldElement },
    /// D = (SHP)² + cS with deg S > deg P, P irreducible, (cS/P) = 1.
    Cor2 { s: Poly, h: Poly, p: Poly, c: FieldElement },
    /// Theorem-3 family with A = SP, deg S ≥ 2, P irreducible; a = (A−1)/2.
    Cor3 { variant: Thm3Variant, s: Poly, p: Poly, m: u32 },
    /// D = (T(T^m+1))² + (T^m+1); P = T, S = T^m+1, H = 1, c = 1.
    Example { m: u32 },
}

/// Result of assembling a family instance.
#[derive(Clone, Debug)]
pub struct FamilyOutput {
    pub disc: Discriminant,
    /// Predicted bound numerator / denominator. The denominator is deg P of
    /// the suggested prime when the family fixes one, else 1 (a linear P).
    pub predicted_num: usize,
    pub predicted_den: usize,
    pub suggested_prime: Option<Poly>,
}

impl FamilyOutput {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "D": self.disc.poly(),
            "predicted": {"num": self.predicted_num, "den": self.predicted_den},
            "suggested_P": self.suggested_prime,
        })
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::SideCondition(what.into()))
    }
}

/// Build the discriminant for a family instance, check its side conditions,
/// and report the predicted bound with a suggested splitting prime when the
/// family determines one.
pub fn make_family(spec: &FamilySpec, ctx: &FieldCtx) -> Result<FamilyOutput> {
    let one = Poly::one(ctx);
    let (d_poly, predicted_num, suggested): (Poly, usize, Option<Poly>) = match spec {
        FamilySpec::Thm2F2c { f, c } => {
            require(!c.is_zero(), "c must be a unit")?;
            require(f.degree().map_or(false, |d| d >= 1), "deg F >= 1")?;
            require(f.is_monic(), "F must be monic")?;
            let d = f.mul(f).add(&Poly::constant(c.clone()));
            (d, f.degree().unwrap(), None)
        }
        FamilySpec::Thm2SGc { s, g, c } => {
            require(!c.is_zero(), "c must be a unit")?;
            require(g.degree().map_or(false, |d| d >= 1), "deg G >= 1")?;
            require(s.degree().map_or(false, |d| d >= 1), "deg S >= 1")?;
            require(s.is_monic() && g.is_monic(), "S and G must be monic")?;
            let sg = s.mul(g);
            let d = sg.mul(&sg).add(&s.scale(c));
            (d, s.degree().unwrap(), None)
        }
        FamilySpec::Thm3 { variant, a, m } => {
            let d = thm3_polynomial(*variant, *m, a)?;
            require(d.is_monic(), "assembled D must be monic (m = 1 edge)")?;
            let big_a = thm3_a_poly(a);
            // Any irreducible factor P of A splits: D ≡ a² mod P and P ∤ a.
            let suggested = if big_a.is_irreducible().unwrap_or(false) {
                Some(big_a.clone())
            } else {
                None
            };
            (d, big_a.degree().unwrap(), suggested)
        }
        FamilySpec::Cor1 { p, g, c } => {
            require(!c.is_zero(), "c must be a unit")?;
            require(g.degree().map_or(false, |d| d >= 2), "deg G >= 2")?;
            require(p.is_monic() && g.is_monic(), "P and G must be monic")?;
            if !p.is_irreducible()? {
                return Err(Error::ReducibleInput);
            }
            require(
                Poly::constant(c.clone()).residue_symbol(p)? == 1,
                "(c/P) = 1",
            )?;
            let pg = p.mul(g);
            let d = pg.mul(&pg).add(&Poly::constant(c.clone()));
            (d, pg.degree().unwrap(), Some(p.clone()))
        }
        FamilySpec::Cor2 { s, h, p, c } => {
            require(!c.is_zero(), "c must be a unit")?;
            require(s.is_monic() && h.is_monic() && p.is_monic(), "S, H, P must be monic")?;
            if !p.is_irreducible()? {
                return Err(Error::ReducibleInput);
            }
            require(
                s.degree().unwrap_or(0) > p.degree().unwrap_or(0),
                "deg S > deg P",
            )?;
            require(s.scale(c).residue_symbol(p)? == 1, "(cS/P) = 1")?;
            let shp = s.mul(h).mul(p);
            let d = shp.mul(&shp).add(&s.scale(c));
            (d, s.degree().unwrap(), Some(p.clone()))
        }
        FamilySpec::Cor3 { variant, s, p, m } => {
            require(s.degree().map_or(false, |d| d >= 2), "deg S >= 2")?;
            require(s.is_monic() && p.is_monic(), "S and P must be monic")?;
            if !p.is_irreducible()? {
                return Err(Error::ReducibleInput);
            }
            let big_a = s.mul(p);
            let a = big_a.sub(&one).scale(&ctx.half());
            let d = thm3_polynomial(*variant, *m, &a)?;
            require(d.is_monic(), "assembled D must be monic (m = 1 edge)")?;
            (d, big_a.degree().unwrap(), Some(p.clone()))
        }
        FamilySpec::Example { m } => {
            require(*m >= 1, "m >= 1")?;
            let t = Poly::variable(ctx);
            let s = t.pow(*m as u64).add(&one);
            let tp = t.mul(&s);
            let d = tp.mul(&tp).add(&s);
            (d, *m as usize, Some(t))
        }
    };
    let disc = Discriminant::new(d_poly)?;
    if let Some(p) = &suggested {
        if splitting_type(p, &disc)? != SplitType::Split {
            return Err(Error::Internal(format!(
                "suggested prime {p} fails to split for this family"
            )));
        }
    }
    let predicted_den = suggested
        .as_ref()
        .and_then(|p| p.degree())
        .unwrap_or(1);
    Ok(FamilyOutput {
        disc,
        predicted_num,
        predicted_den,
        suggested_prime: suggested,
    })
}

/// Outcome of checking a family's predicted bound against the engine.
#[derive(Clone, Debug)]
pub struct FamilyVerification {
    pub report: BoundReport,
    pub predicted_num: usize,
    pub predicted_den: usize,
    /// bound_rational >= predicted as exact rationals.
    pub ok: bool,
}

impl FamilyVerification {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "bound": self.report.to_json(),
            "predicted": {"num": self.predicted_num, "den": self.predicted_den},
            "ok": self.ok,
        })
    }
}

/// Run the engine on a family instance and compare the realized bound with
/// the predicted one at the given prime.
pub fn verify_family_bound(
    spec: &FamilySpec,
    ctx: &FieldCtx,
    p: &Poly,
) -> Result<FamilyVerification> {
    let fam = make_family(spec, ctx)?;
    let report = lower_bound(&fam.disc, p)?;
    let deg_p = report.bound_den;
    // both rationals share the denominator deg P at this prime
    let ok = report.bound_num >= fam.predicted_num;
    Ok(FamilyVerification {
        report,
        predicted_num: fam.predicted_num,
        predicted_den: deg_p,
        ok,
    })
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
    fn closing_example_bound_is_m() {
        let ctx = f5();
        let d = Discriminant::new(poly(&ctx, "T^6+2*T^4+2*T^2+1")).unwrap();
        let report = lower_bound(&d, &poly(&ctx, "T")).unwrap();
        assert_eq!(report.bound_int, 2);
        assert_eq!(report.v, 2);
        assert_eq!(report.qdegs, vec![2]);
        assert!(report.divisibility_hint);
    }

    #[test]
    fn f2c_family_uses_half_degree_branch() {
        let ctx = f5();
        let spec = FamilySpec::Thm2F2c {
            f: poly(&ctx, "T^3+T"),
            c: ctx.from_u64(2),
        };
        let fam = make_family(&spec, &ctx).unwrap();
        assert_eq!(fam.predicted_num, 3);
        // T-1 splits: D(1) = 4+2 = 6 = 1, a square
        let report = lower_bound(&fam.disc, &poly(&ctx, "T+4")).unwrap();
        assert_eq!(report.bound_int, 3);
        assert_eq!(report.witness, BoundWitness::HalfDegree);
        assert!(report.qdegs.is_empty());
    }

    #[test]
    fn t4_plus_t_bound() {
        let ctx = f5();
        let d = Discriminant::new(poly(&ctx, "T^4+T")).unwrap();
        // T+2 splits (D(3) = 84 = 4 is a square)
        let report = lower_bound(&d, &poly(&ctx, "T+2")).unwrap();
        assert_eq!(report.bound_int, 1);
        assert_eq!(report.witness, BoundWitness::Interior(1));
        // T divides D: ramified
        assert_eq!(
            lower_bound(&d, &poly(&ctx, "T")).unwrap_err(),
            Error::Ramified
        );
        // T+4 is inert? D(1) = 2, non-square, so T-1 = T+4 is inert
        assert_eq!(
            lower_bound(&d, &poly(&ctx, "T+4")).unwrap_err(),
            Error::NotSplit
        );
    }

    #[test]
    fn thm3_assembly_matches_hand_computation() {
        let ctx = f5();
        // a = 3T gives A = 2a+1 = T+1; m = 2:
        // D = ((T+1)² + 3T)² + (T+1) = (T²+1)² + T+1 = T^4+2T^2+T+2
        let spec = FamilySpec::Thm3 {
            variant: Thm3Variant::PlusPlus,
            a: poly(&ctx, "3*T"),
            m: 2,
        };
        let fam = make_family(&spec, &ctx).unwrap();
        assert_eq!(fam.disc.poly(), &poly(&ctx, "T^4+2*T^2+T+2"));
        assert_eq!(fam.predicted_num, 1);
        // A = T+1 is irreducible, so it is suggested and splits
        assert_eq!(fam.suggested_prime, Some(poly(&ctx, "T+1")));
    }

    #[test]
    fn non_monic_a_rejected() {
        let ctx = f5();
        let spec = FamilySpec::Thm3 {
            variant: Thm3Variant::PlusPlus,
            a: poly(&ctx, "T"),
            m: 2,
        };
        assert_eq!(make_family(&spec, &ctx).unwrap_err(), Error::NotMonicA);
    }

    #[test]
    fn example_family() {
        let ctx = f5();
        let fam = make_family(&FamilySpec::Example { m: 2 }, &ctx).unwrap();
        assert_eq!(fam.disc.poly(), &poly(&ctx, "T^6+2*T^4+2*T^2+1"));
        assert_eq!(fam.suggested_prime, Some(poly(&ctx, "T")));
        assert_eq!(fam.predicted_num, 2);
        let verification =
            verify_family_bound(&FamilySpec::Example { m: 2 }, &ctx, &poly(&ctx, "T")).unwrap();
        assert!(verification.ok);
        assert_eq!(verification.report.bound_int, 2);
    }

    #[test]
    fn cor1_family() {
        let ctx = f5();
        // P = T, G = T²+1, c = 4: (4/T) = +1 since 4 is a square
        let spec = FamilySpec::Cor1 {
            p: poly(&ctx, "T"),
            g: poly(&ctx, "T^2+1"),
            c: ctx.from_u64(4),
        };
        let fam = make_family(&spec, &ctx).unwrap();
        assert_eq!(fam.predicted_num, 3);
        assert_eq!(fam.suggested_prime, Some(poly(&ctx, "T")));
        let v = verify_family_bound(&spec, &ctx, &poly(&ctx, "T")).unwrap();
        assert!(v.ok);
        assert_eq!(v.report.bound_int, 3);
        // violating the symbol condition: (2/T) = −1
        let bad = FamilySpec::Cor1 {
            p: poly(&ctx, "T"),
            g: poly(&ctx, "T^2+1"),
            c: ctx.from_u64(2),
        };
        assert!(matches!(
            make_family(&bad, &ctx).unwrap_err(),
            Error::SideCondition(_)
        ));
    }

    #[test]
    fn cor3_assembles_from_s_and_p() {
        let ctx = f5();
        let spec = FamilySpec::Cor3 {
            variant: Thm3Variant::PlusPlus,
            s: poly(&ctx, "T^2+2"),
            p: poly(&ctx, "T"),
            m: 1,
        };
        let fam = make_family(&spec, &ctx).unwrap();
        // A = T³+2T, a = (A−1)/2 = 3T³+T+2; hand-computed D:
        assert_eq!(fam.disc.poly(), &poly(&ctx, "T^6+4*T^4+2*T^3+4*T^2+4*T+4"));
        assert_eq!(fam.predicted_num, 3);
        let v = verify_family_bound(&spec, &ctx, &poly(&ctx, "T")).unwrap();
        assert!(v.ok, "engine bound should reach deg A = 3");
    }
}
