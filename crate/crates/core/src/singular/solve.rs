//! Solving `a = b = c = 0` from an elimination image, with intersection
//! multiplicities and Galois-orbit bookkeeping.

use std::collections::HashMap;

use super::{rank, rref, ProjPoint, SingularError};
use crate::ffield::{Fel, FieldCtx, MAX_EXT};
use crate::mpoly::{
    eliminate, factor, roots_in_field, up_squarefree, Elimination, EliminationOptions, MPoly, Mono,
    UPoly, NVARS,
};

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Largest extension degree in which points are resolved.
    pub ext_budget: usize,
    pub seed: u64,
    /// Coordinate changes tried by the elimination.
    pub retries: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            ext_budget: MAX_EXT,
            seed: 0,
            retries: 8,
        }
    }
}

/// One Galois orbit of solutions, represented by its smallest conjugate.
#[derive(Debug, Clone)]
pub struct SolvedOrbit {
    pub point: ProjPoint,
    /// Number of conjugate points (= field degree of the point).
    pub size: usize,
    pub multiplicity: u32,
    pub transversal: bool,
}

#[derive(Debug, Clone)]
pub struct TripleSolution {
    pub orbits: Vec<SolvedOrbit>,
    pub bezout: u32,
    pub elimination: UPoly,
    /// Irreducible factors of the elimination image with multiplicities.
    pub factors: Vec<(UPoly, usize)>,
    /// Solutions (with multiplicity) that could not be resolved within the budget.
    pub unresolved: u32,
    pub attempts: u32,
    pub notes: Vec<String>,
}

impl TripleSolution {
    pub fn point_count(&self) -> usize {
        self.orbits.iter().map(|o| o.size).sum()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.orbits
            .iter()
            .map(|o| o.size as u32 * o.multiplicity)
            .sum()
    }

    /// Multiplicities occurring in the squarefree decomposition of the elimination image.
    pub fn squarefree_multiplicities(&self) -> Vec<usize> {
        up_squarefree(&self.elimination)
            .into_iter()
            .map(|(_, m)| m)
            .collect()
    }

    /// Multiplicity accounting closes: resolved + unresolved = Bezout number.
    pub fn balanced(&self) -> bool {
        self.total_multiplicity() + self.unresolved == self.bezout
    }
}

struct Fiber {
    points: Vec<[Fel; 3]>,
    complete: bool,
}

/// Points over the elimination root `alpha` (all coordinates in `k`).
fn solve_fiber(e: &Elimination, k: &FieldCtx, alpha: &Fel, seed: u64) -> Result<Fiber, SingularError> {
    let mut gy = UPoly::zero(k);
    for r in &e.plane {
        let u = r
            .extend_to(k)?
            .specialize(1, alpha)
            .to_upoly(2)
            .expect("plane curve in y1, y2");
        gy = gy.gcd(&u);
    }
    if gy.is_zero() {
        return Ok(Fiber {
            points: Vec::new(),
            complete: false,
        });
    }
    let ys = roots_in_field(&gy, seed);
    let mut complete = gy.squarefree_part().deg() == ys.len();
    let charted: Vec<MPoly> = e
        .charted
        .iter()
        .map(|f| f.extend_to(k))
        .collect::<Result<_, _>>()?;
    let mut points = Vec::new();
    for y2 in ys {
        let mut gz = UPoly::zero(k);
        for f in &charted {
            let u = f
                .specialize(1, alpha)
                .specialize(2, &y2)
                .to_upoly(3)
                .expect("only y3 remains");
            gz = gz.gcd(&u);
        }
        if gz.is_zero() {
            complete = false;
            continue;
        }
        let zs = roots_in_field(&gz, seed);
        complete &= gz.squarefree_part().deg() == zs.len();
        points.extend(zs.into_iter().map(|y3| [*alpha, y2, y3]));
    }
    Ok(Fiber { points, complete })
}

/// `(multiplicity, transversal)`; the multiplicity is `None` if the local
/// computation did not stabilize.
fn point_multiplicity(polys: &[MPoly; 3], pt: &ProjPoint) -> Result<(Option<u32>, bool), SingularError> {
    let k = &pt.field;
    let mut jac = Vec::new();
    for f in polys {
        let row = f
            .gradient()
            .iter()
            .map(|g| pt.eval(g))
            .collect::<Result<Vec<_>, _>>()?;
        jac.push(row);
    }
    if rank(k, jac) == 3 {
        return Ok((Some(1), true));
    }
    Ok((local_multiplicity(polys, pt)?, false))
}

/// `dim O_P / (f_1, ..., f_m)`, computed as `dim k[y]/(I + m^n)` for growing `n`
/// until two consecutive values agree. `None` if no agreement by degree 24.
pub fn local_multiplicity(polys: &[MPoly], pt: &ProjPoint) -> Result<Option<u32>, SingularError> {
    let k = &pt.field;
    let chart = pt.chart();
    let mut images = Vec::with_capacity(NVARS);
    let mut next = 1;
    for i in 0..NVARS {
        let c = MPoly::constant(k, pt.coords[i]);
        if i == chart {
            images.push(c);
        } else {
            images.push(c.add(&MPoly::var(k, next)));
            next += 1;
        }
    }
    let mut gens: Vec<Vec<(Mono, Fel)>> = Vec::new();
    for f in polys {
        let g = f.extend_to(k)?.substitute(&images);
        if !k.is_zero(&g.coeff(&Mono([0; NVARS]))) {
            return Ok(Some(0));
        }
        gens.push(g.terms().map(|(m, c)| (*m, *c)).collect());
    }
    let mut prev = None;
    for n in 1..=24u16 {
        let dim = truncated_quotient_dim(k, &gens, n);
        if prev == Some(dim) {
            return Ok(Some(dim));
        }
        prev = Some(dim);
    }
    Ok(None)
}

/// Monomials in `y1, y2, y3` (variables 1..3) of degree below `n`.
fn local_monomials(n: u16) -> Vec<Mono> {
    let mut out = Vec::new();
    for d in 0..n {
        for a in 0..=d {
            for b in 0..=d - a {
                out.push(Mono([0, a, b, d - a - b]));
            }
        }
    }
    out
}

fn truncated_quotient_dim(k: &FieldCtx, gens: &[Vec<(Mono, Fel)>], n: u16) -> u32 {
    let monos = local_monomials(n);
    let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let order = g.iter().map(|(m, _)| m.degree()).min().unwrap_or(u32::MAX);
        for mu in &monos {
            if mu.degree() + order >= u32::from(n) {
                continue;
            }
            let mut row = vec![k.zero(); monos.len()];
            for (m, c) in g {
                let prod = Mono(std::array::from_fn(|i| m.0[i] + mu.0[i]));
                if let Some(&j) = index.get(&prod) {
                    row[j] = k.add(&row[j], c);
                }
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return monos.len() as u32;
    }
    (monos.len() - rref(k, &mut rows).len()) as u32
}

/// All solutions of `a = b = c = 0` up to the extension budget, one record per
/// Galois orbit, with intersection multiplicities.
pub fn solve_triple(
    a: &MPoly,
    b: &MPoly,
    c: &MPoly,
    opts: &SolveOptions,
) -> Result<TripleSolution, SingularError> {
    let e = eliminate(
        a,
        b,
        c,
        &EliminationOptions {
            seed: opts.seed,
            retries: opts.retries,
        },
    )?;
    let base = a.ctx();
    let p = base.p();
    let polys = [a.clone(), b.clone(), c.clone()];
    let factors = factor(&e.poly, opts.seed);
    let budget = opts.ext_budget.min(MAX_EXT);
    let mut orbits: Vec<SolvedOrbit> = Vec::new();
    let mut unresolved = 0u32;
    let mut notes = Vec::new();

    for (g, m) in &factors {
        let d = g.deg();
        let m = *m as u32;
        if d > budget {
            unresolved += m * d as u32;
            continue;
        }
        let (k, alpha) = if d == 1 {
            (base.clone(), base.neg(&g.coeff(0)))
        } else {
            let coeffs: Vec<u64> = g
                .coeffs()
                .iter()
                .map(|x| base.as_prime(x).expect("prime field"))
                .collect();
            match FieldCtx::with_modulus(p, &coeffs) {
                Ok(k) => {
                    let t = k.generator();
                    (k, t)
                }
                Err(_) => {
                    unresolved += m * d as u32;
                    continue;
                }
            }
        };
        let mut accounted = 0u32;
        let fiber = solve_fiber(&e, &k, &alpha, opts.seed)?;
        for y in &fiber.points {
            let pt = ProjPoint::new(&k, e.to_original(&k, y)).expect("affine chart point");
            if pt.degree() != d {
                notes.push(format!("point {pt} has degree {} over a root of degree {d}", pt.degree()));
                continue;
            }
            let (mult, transversal) = point_multiplicity(&polys, &pt)?;
            let Some(mult) = mult else {
                notes.push(format!("local multiplicity at {pt} did not stabilize"));
                continue;
            };
            accounted += mult;
            orbits.push(SolvedOrbit {
                point: pt.orbit_min(),
                size: d,
                multiplicity: mult,
                transversal,
            });
        }
        // points of larger degree over the same root
        let mut factor_ext = 2;
        while accounted < m && d * factor_ext <= budget {
            let f = d * factor_ext;
            factor_ext += 1;
            let big = FieldCtx::make(p, f, 0)?;
            let lifted = g.extend_to(&big)?;
            let mut seen: Vec<ProjPoint> = Vec::new();
            for beta in roots_in_field(&lifted, opts.seed) {
                for y in solve_fiber(&e, &big, &beta, opts.seed)?.points {
                    let pt = ProjPoint::new(&big, e.to_original(&big, &y)).expect("affine chart point");
                    if pt.degree() != f {
                        continue;
                    }
                    let rep = pt.orbit_min();
                    if seen.contains(&rep) {
                        continue;
                    }
                    seen.push(rep.clone());
                    let (mult, transversal) = point_multiplicity(&polys, &rep)?;
                    let Some(mult) = mult else {
                        notes.push(format!("local multiplicity at {rep} did not stabilize"));
                        continue;
                    };
                    accounted += (f / d) as u32 * mult;
                    orbits.push(SolvedOrbit {
                        point: rep,
                        size: f,
                        multiplicity: mult,
                        transversal,
                    });
                }
            }
        }
        if accounted > m {
            notes.push(format!(
                "fiber over a root of multiplicity {m} carries total multiplicity {accounted}"
            ));
        } else {
            unresolved += (m - accounted) * d as u32;
        }
        if !fiber.complete && accounted < m {
            notes.push(format!("incomplete fiber over a degree-{d} root"));
        }
    }
    orbits.sort_by(|x, y| {
        (x.size, x.point.coords).cmp(&(y.size, y.point.coords))
    });
    Ok(TripleSolution {
        orbits,
        bezout: e.bezout,
        elimination: e.poly,
        factors,
        unresolved,
        attempts: e.attempts,
        notes,
    })
}
