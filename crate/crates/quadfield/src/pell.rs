//! The Pell equation X² − D Y² = G over R = F_q[T], deg G < ½ deg D.
//!
//! The continued fraction route: the convergents of √D realize exactly the
//! norms κ_i Q_i (with the measured constants κ_i), and scaling a solution by
//! c ∈ F_q^× scales its norm by c². So solvability by a primary (coprime)
//! pair is a statement about G modulo squares of constants. `solve` supports
//! two readings:
//!
//!   * `Exact`: some convergent pair hits G verbatim, G = κ_i Q_i;
//!   * `UpToSquareConstant` (default): G = c²·κ_i Q_i for some c, returning
//!     the scaled pair so the equation still holds exactly.
//!
//! `brute_force` is the independent oracle: it enumerates Y directly and
//! tests D Y² + G for being a perfect square.

use crate::contfrac::{default_max_steps, expand, proportional_constant, Expansion};
use crate::error::{Error, Result};
use crate::ffield::FieldElement;
use crate::par;
use crate::polyring::{monic_polys, Poly};
use crate::quadext::{norm_form, Discriminant};

/// Cap on q^(max_deg_y + 1) for the brute-force search space.
pub const BRUTE_BUDGET: u128 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Exact,
    UpToSquareConstant,
}

/// A primary solution of X² − D Y² = G.
#[derive(Clone, Debug)]
pub struct PellSolution {
    pub x: Poly,
    pub y: Poly,
    /// Constant applied to the source convergent pair (`solve`) or to the
    /// monic Y representative (`brute_force`).
    pub c_scale: FieldElement,
    /// Index i with G ~ κ_i Q_i when the solution came from the expansion.
    pub index: Option<usize>,
}

impl PellSolution {
    fn validated(self, disc: &Discriminant, g: &Poly) -> Result<PellSolution> {
        if &norm_form(&self.x, &self.y, disc) != g {
            return Err(Error::Internal("pell solution fails its own equation".into()));
        }
        let coprime = if self.y.is_zero() {
            self.x.is_constant() && !self.x.is_zero()
        } else if self.x.is_zero() {
            self.y.is_constant()
        } else {
            self.x.gcd(&self.y)?.is_constant()
        };
        if !coprime {
            return Err(Error::Internal("pell solution is not primary".into()));
        }
        Ok(self)
    }
}

/// CF-based solver. Scans the complete denominators of one full period.
pub fn solve(disc: &Discriminant, g: &Poly, mode: SolveMode) -> Result<Option<PellSolution>> {
    let exp = expand_checked(disc)?;
    solve_with(disc, g, mode, &exp)
}

/// As `solve`, reusing an existing expansion.
pub fn solve_with(
    disc: &Discriminant,
    g: &Poly,
    mode: SolveMode,
    exp: &Expansion,
) -> Result<Option<PellSolution>> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if g.degree().unwrap_or(0) >= disc.half_degree() {
        return Err(Error::DegreeTooLarge);
    }
    let ctx = disc.ctx();
    let one = Poly::one(ctx);
    for i in 0..=exp.ell() {
        // the pair (p_{i-1}, q_{i-1}); i = 0 gives the trivial (1, 0)
        let (px, qy) = if i == 0 {
            (one.clone(), Poly::zero(ctx))
        } else {
            (
                exp.convergent_p()[i - 1].clone(),
                exp.convergent_q()[i - 1].clone(),
            )
        };
        let nu = exp.q_seq()[i].scale(&exp.kappa_seq()[i]);
        let Some(s) = proportional_constant(g, &nu) else {
            continue;
        };
        match mode {
            SolveMode::Exact => {
                if s.is_one() {
                    let sol = PellSolution {
                        x: px,
                        y: qy,
                        c_scale: ctx.one(),
                        index: Some(i),
                    };
                    return Ok(Some(sol.validated(disc, g)?));
                }
            }
            SolveMode::UpToSquareConstant => {
                if s.is_square()? {
                    let c = s.sqrt()?;
                    let sol = PellSolution {
                        x: px.scale(&c),
                        y: qy.scale(&c),
                        c_scale: c,
                        index: Some(i),
                    };
                    return Ok(Some(sol.validated(disc, g)?));
                }
            }
        }
    }
    Ok(None)
}

fn expand_checked(disc: &Discriminant) -> Result<Expansion> {
    if !disc.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    expand(disc, default_max_steps(disc))
}

/// Independent oracle: enumerate Y = u·Y₀ with Y₀ zero or monic of degree
/// <= max_deg_y and u ∈ F_q^×, and test D Y² + G for a perfect square. All
/// primary solutions found are returned, sorted by (deg Y, Y, X).
pub fn brute_force(disc: &Discriminant, g: &Poly, max_deg_y: usize) -> Result<Vec<PellSolution>> {
    brute_force_impl(disc, g, max_deg_y, false)
}

/// Always-sequential variant of `brute_force` (for benches and parity tests).
pub fn brute_force_serial(
    disc: &Discriminant,
    g: &Poly,
    max_deg_y: usize,
) -> Result<Vec<PellSolution>> {
    brute_force_impl(disc, g, max_deg_y, true)
}

fn brute_force_impl(
    disc: &Discriminant,
    g: &Poly,
    max_deg_y: usize,
    force_serial: bool,
) -> Result<Vec<PellSolution>> {
    if !disc.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let ctx = disc.ctx();
    let q = ctx.q() as u128;
    if q.pow(max_deg_y as u32 + 1) > BRUTE_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "brute force space q^{} exceeds {}",
            max_deg_y + 1,
            BRUTE_BUDGET
        )));
    }
    // Candidate base polynomials: zero, then monic of each degree.
    let mut candidates: Vec<Poly> = vec![Poly::zero(ctx)];
    for d in 0..=max_deg_y {
        candidates.extend(monic_polys(ctx, d));
    }
    let units: Vec<FieldElement> = ctx.elements().skip(1).collect();
    let test_candidate = |idx: u64| -> Vec<PellSolution> {
        let y0 = &candidates[idx as usize];
        let mut found = Vec::new();
        let scalings: &[FieldElement] = if y0.is_zero() {
            &units[..1]
        } else {
            &units
        };
        for u in scalings {
            let y = y0.scale(u);
            let target = disc.poly().mul(&y.mul(&y)).add(g);
            let Some(x0) = target.sqrt_exact() else {
                continue;
            };
            let mut xs = vec![x0.clone()];
            let neg = x0.neg();
            if neg != x0 {
                xs.push(neg);
            }
            for x in xs {
                let primary = if y.is_zero() {
                    x.is_constant() && !x.is_zero()
                } else if x.is_zero() {
                    y.is_constant()
                } else {
                    x.gcd(&y).map(|h| h.is_constant()).unwrap_or(false)
                };
                if primary {
                    found.push(PellSolution {
                        x,
                        y: y.clone(),
                        c_scale: u.clone(),
                        index: None,
                    });
                }
            }
        }
        found
    };
    let mut sols = if force_serial {
        par::flat_map_indexed_serial(candidates.len() as u64, test_candidate)
    } else {
        par::flat_map_indexed(candidates.len() as u64, test_candidate)
    };
    sols.sort_by(|a, b| {
        (a.y.sort_key(), a.x.sort_key()).cmp(&(b.y.sort_key(), b.x.sort_key()))
    });
    sols.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    for s in &sols {
        s.clone().validated(disc, g)?;
    }
    Ok(sols)
}
