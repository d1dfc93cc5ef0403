//! The real quadratic extension K = F_q(T)(√D).
//!
//! A `Discriminant` is a validated D: monic, even degree, not a perfect
//! square, together with the unique decomposition D = f² + r where f is the
//! monic truncated square root (deg f = d, deg r < d). The strict constructor
//! also demands D squarefree; the exploratory one records squarefreeness so
//! that bound and oracle code can refuse invalid inputs while the expansion
//! engine still runs.

use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::polyring::{monic_irreducibles, truncated_sqrt, Poly};

/// A validated discriminant D with its decomposition D = f² + r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    poly: Poly,
    half_degree: usize,
    fpart: Poly,
    rpart: Poly,
    squarefree: bool,
}

/// Behavior of a finite prime (P) in O_K.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

impl std::fmt::Display for SplitType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SplitType::Split => write!(f, "split"),
            SplitType::Inert => write!(f, "inert"),
            SplitType::Ramified => write!(f, "ramified"),
        }
    }
}

impl Discriminant {
    /// Strict constructor: monic, even degree, not a square, squarefree.
    pub fn new(d: Poly) -> Result<Self> {
        let disc = Self::new_exploratory(d)?;
        if !disc.squarefree {
            return Err(Error::NotSquarefree);
        }
        Ok(disc)
    }

    /// Accepts non-squarefree D (still monic, even degree, non-square) and
    /// records the defect; bound and oracle operations will refuse it.
    pub fn new_exploratory(d: Poly) -> Result<Self> {
        if !d.is_monic() {
            return Err(Error::NotMonic);
        }
        let deg = d.degree().expect("monic implies nonzero");
        if deg % 2 != 0 {
            return Err(Error::OddDegree);
        }
        if d.sqrt_exact().is_some() {
            return Err(Error::PerfectSquare);
        }
        // deg = 0 cannot reach here: a monic constant is 1, a perfect square.
        let (fpart, rpart) = truncated_sqrt(&d);
        debug_assert!(rpart.degree().map_or(true, |rd| rd < deg / 2));
        let squarefree = d.is_squarefree()?;
        Ok(Discriminant {
            poly: d,
            half_degree: deg / 2,
            fpart,
            rpart,
            squarefree,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.poly.ctx()
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// d with deg D = 2d.
    pub fn half_degree(&self) -> usize {
        self.half_degree
    }

    /// The monic polynomial part f of √D.
    pub fn f(&self) -> &Poly {
        &self.fpart
    }

    /// The remainder r = D - f².
    pub fn r(&self) -> &Poly {
        &self.rpart
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree
    }

    /// Genus of the hyperelliptic curve y² = D(x): g = d - 1.
    pub fn genus(&self) -> usize {
        self.half_degree - 1
    }
}

/// N(U + V √D) = U² − D V².
pub fn norm_form(u: &Poly, v: &Poly, disc: &Discriminant) -> Poly {
    u.mul(u).sub(&disc.poly().mul(&v.mul(v)))
}

/// Splitting behavior of an irreducible P: ramified when P | D, otherwise
/// decided by the residue symbol (D/P).
pub fn splitting_type(p: &Poly, disc: &Discriminant) -> Result<SplitType> {
    if !p.is_irreducible().map_err(|e| match e {
        Error::ConstantInput => Error::ReducibleInput,
        other => other,
    })? {
        return Err(Error::ReducibleInput);
    }
    match disc.poly().residue_symbol(p)? {
        0 => Ok(SplitType::Ramified),
        1 => Ok(SplitType::Split),
        _ => Ok(SplitType::Inert),
    }
}

/// All monic irreducible P with deg P <= max_deg that split in K, ascending
/// by degree then lexicographic coefficient order.
pub fn find_splitting_primes(disc: &Discriminant, max_deg: usize) -> Result<Vec<Poly>> {
    if max_deg == 0 {
        return Err(Error::InvalidArgument("max_deg must be >= 1".into()));
    }
    let mut out = Vec::new();
    for p in monic_irreducibles(disc.ctx(), max_deg)? {
        if splitting_type(&p, disc)? == SplitType::Split {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldCtx;

    fn f5() -> FieldCtx {
        FieldCtx::prime(5).unwrap()
    }

    fn poly(ctx: &FieldCtx, s: &str) -> Poly {
        Poly::parse(ctx, s).unwrap()
    }

    #[test]
    fn decomposition() {
        let ctx = f5();
        let d = Discriminant::new(poly(&ctx, "T^2+2")).unwrap();
        assert_eq!(d.f(), &poly(&ctx, "T"));
        assert_eq!(d.r(), &poly(&ctx, "2"));
        let d = Discriminant::new(poly(&ctx, "T^4+T")).unwrap();
        assert_eq!(d.f(), &poly(&ctx, "T^2"));
        assert_eq!(d.r(), &poly(&ctx, "T"));
        assert_eq!(d.half_degree(), 2);
    }

    #[test]
    fn rejects_invalid() {
        let ctx = f5();
        assert_eq!(
            Discriminant::new(poly(&ctx, "T^2+2*T+1")).unwrap_err(),
            Error::PerfectSquare
        );
        assert_eq!(
            Discriminant::new(poly(&ctx, "T^3+1")).unwrap_err(),
            Error::OddDegree
        );
        assert_eq!(
            Discriminant::new(poly(&ctx, "2*T^2+1")).unwrap_err(),
            Error::NotMonic
        );
        // (T+1)^2 (T^2+2) is monic, even degree, not a square, but not squarefree
        let d = poly(&ctx, "T+1").pow(2).mul(&poly(&ctx, "T^2+2"));
        assert_eq!(Discriminant::new(d.clone()).unwrap_err(), Error::NotSquarefree);
        let expl = Discriminant::new_exploratory(d).unwrap();
        assert!(!expl.is_squarefree());
    }

    #[test]
    fn norms() {
        let ctx = f5();
        let disc = Discriminant::new(poly(&ctx, "T^2+2")).unwrap();
        assert_eq!(
            norm_form(&poly(&ctx, "T"), &poly(&ctx, "1"), &disc),
            poly(&ctx, "3")
        );
        assert_eq!(
            norm_form(&poly(&ctx, "1"), &Poly::zero(&ctx), &disc),
            poly(&ctx, "1")
        );
        assert_eq!(
            norm_form(&poly(&ctx, "T^2+1"), &poly(&ctx, "T"), &disc),
            poly(&ctx, "1")
        );
    }

    #[test]
    fn norm_multiplicativity() {
        let ctx = f5();
        let disc = Discriminant::new(poly(&ctx, "T^4+T")).unwrap();
        let d = disc.poly();
        let (u1, v1) = (poly(&ctx, "T+1"), poly(&ctx, "2*T"));
        let (u2, v2) = (poly(&ctx, "3*T^2"), poly(&ctx, "T+4"));
        // (U1 + V1 √D)(U2 + V2 √D) = (U1U2 + V1V2 D) + (U1V2 + U2V1) √D
        let u3 = u1.mul(&u2).add(&v1.mul(&v2).mul(d));
        let v3 = u1.mul(&v2).add(&u2.mul(&v1));
        assert_eq!(
            norm_form(&u3, &v3, &disc),
            norm_form(&u1, &v1, &disc).mul(&norm_form(&u2, &v2, &disc))
        );
    }

    #[test]
    fn splitting() {
        let ctx = f5();
        let t = poly(&ctx, "T");
        let d_example = Discriminant::new(poly(&ctx, "T^6+2*T^4+2*T^2+1")).unwrap();
        assert_eq!(splitting_type(&t, &d_example).unwrap(), SplitType::Split);
        let d_ram = Discriminant::new(poly(&ctx, "T^4+T")).unwrap();
        assert_eq!(splitting_type(&t, &d_ram).unwrap(), SplitType::Ramified);
        let d_inert = Discriminant::new(poly(&ctx, "T^2+2")).unwrap();
        assert_eq!(splitting_type(&t, &d_inert).unwrap(), SplitType::Inert);
        assert_eq!(
            splitting_type(&poly(&ctx, "T^2+1"), &d_inert).unwrap_err(),
            Error::ReducibleInput
        );
    }

    #[test]
    fn splitting_primes() {
        let ctx = f5();
        let disc = Discriminant::new(poly(&ctx, "T^2+2")).unwrap();
        let primes = find_splitting_primes(&disc, 1).unwrap();
        // x^2+2 is a nonzero square exactly at x = 2, 3, i.e. primes T-2, T-3
        let names: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["T+2", "T+3"]);
        for p in &primes {
            assert_eq!(disc.poly().residue_symbol(p).unwrap(), 1);
        }
        let d_example = Discriminant::new(poly(&ctx, "T^6+2*T^4+2*T^2+1")).unwrap();
        assert!(find_splitting_primes(&d_example, 1)
            .unwrap()
            .contains(&poly(&ctx, "T")));
        assert!(find_splitting_primes(&disc, 0).is_err());
    }
}
