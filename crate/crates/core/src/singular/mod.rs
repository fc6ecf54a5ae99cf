//! Singular points of surfaces over finite fields: rational scans, local
//! classification, triple-intersection solving and admissibility certificates.

mod certify;
mod solve;

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::ffield::{Fel, FieldCtx, FieldError};
use crate::mpoly::{MPoly, PolyError, NVARS};

pub use certify::{
    bezout_accounting, verify_admissible, verify_fermat, AdmissibilityCertificate, BezoutReport,
    CuspRecord, PairReport, ScanSummary,
};
pub use solve::{local_multiplicity, solve_triple, SolveOptions, SolvedOrbit, TripleSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularError {
    #[error("characteristic {p} divides the degree {d}")]
    CharacteristicDividesDegree { p: u64, d: u32 },
    #[error("point is not a singular point of the surface")]
    NotSingular,
    #[error("recipe is not a residual construction")]
    NotResidual,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of P^3 over some finite field, normalized so that the first
/// nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint {
    pub field: FieldCtx,
    pub coords: [Fel; NVARS],
}

impl ProjPoint {
    pub fn new(field: &FieldCtx, coords: [Fel; NVARS]) -> Option<Self> {
        let lead = coords.iter().find(|c| !field.is_zero(c))?;
        let inv = field.inv(lead).ok()?;
        Some(ProjPoint {
            field: field.clone(),
            coords: coords.map(|c| field.mul(&c, &inv)),
        })
    }

    pub fn from_u64(field: &FieldCtx, coords: [u64; NVARS]) -> Option<Self> {
        Self::new(field, coords.map(|c| field.from_u64(c)))
    }

    /// Index of the affine chart containing the point (first nonzero coordinate).
    pub fn chart(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !self.field.is_zero(c))
            .expect("normalized point")
    }

    /// Degree of the field generated by the (normalized) coordinates.
    pub fn degree(&self) -> usize {
        self.coords
            .iter()
            .map(|c| self.field.min_degree(c))
            .fold(1, lcm)
    }

    /// Coordinates as integers when the point is rational.
    pub fn rational_coords(&self) -> Option<[u64; NVARS]> {
        let mut out = [0u64; NVARS];
        for (o, c) in out.iter_mut().zip(&self.coords) {
            *o = self.field.as_prime(c)?;
        }
        Some(out)
    }

    pub fn frobenius(&self) -> ProjPoint {
        ProjPoint {
            field: self.field.clone(),
            coords: self.coords.map(|c| self.field.frobenius(&c, 1)),
        }
    }

    /// Smallest conjugate under Frobenius (a canonical orbit representative).
    pub fn orbit_min(&self) -> ProjPoint {
        let mut best = self.clone();
        let mut cur = self.frobenius();
        while cur != *self {
            if cur.coords < best.coords {
                best = cur.clone();
            }
            cur = cur.frobenius();
        }
        best
    }

    pub fn eval(&self, f: &MPoly) -> Result<Fel, PolyError> {
        f.eval(&self.field, &self.coords)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| self.field.display(x)).collect();
        write!(f, "({})", c.join(":"))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    A1,
    A2,
    AkOrWorse,
    Unclassified,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::A1 => "A1",
            Classification::A2 => "A2",
            Classification::AkOrWorse => "Ak+",
            Classification::Unclassified => "?",
        };
        write!(f, "{s}")
    }
}

/// Gaussian elimination to reduced row echelon form; returns the pivot columns.
pub(crate) fn rref(k: &FieldCtx, m: &mut [Vec<Fel>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        let inv = k.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !k.is_zero(&m[i][c]) {
                let fct = m[i][c];
                for j in c..cols {
                    let t = k.mul(&fct, &m[r][j]);
                    m[i][j] = k.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(k: &FieldCtx, mut m: Vec<Vec<Fel>>) -> usize {
    rref(k, &mut m).len()
}

/// A nonzero kernel vector of a matrix of rank < number of columns.
fn kernel_vector(k: &FieldCtx, mut m: Vec<Vec<Fel>>) -> Option<Vec<Fel>> {
    let cols = m.first().map_or(0, Vec::len);
    let pivots = rref(k, &mut m);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![k.zero(); cols];
    v[free] = k.one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = k.neg(&m[r][free]);
    }
    Some(v)
}

fn check_degree(f: &MPoly) -> Result<u32, SingularError> {
    let d = f.check_homogeneous()?;
    let p = f.ctx().p();
    if u64::from(d) % p == 0 {
        return Err(SingularError::CharacteristicDividesDegree { p, d });
    }
    Ok(d)
}

/// Number of points of P^3(F_p).
pub fn projective_point_count(p: u64) -> u64 {
    p * p * p + p * p + p + 1
}

/// All points of P^3(F_p) at which the four partials of `f` vanish.
pub fn scan_rational_singular(f: &MPoly) -> Result<Vec<ProjPoint>, SingularError> {
    let ctx = f.ctx();
    if !ctx.is_prime_field() {
        return Err(PolyError::NeedsPrimeField.into());
    }
    let d = check_degree(f)?;
    let p = ctx.p();
    let partials: Vec<Vec<(u64, [usize; NVARS])>> = f
        .gradient()
        .iter()
        .map(|g| {
            g.terms()
                .map(|(m, c)| (ctx.as_prime(c).unwrap(), m.0.map(usize::from)))
                .collect()
        })
        .collect();
    let dd = d as usize;
    let pow: Vec<Vec<u64>> = (0..p)
        .map(|v| {
            let mut row = vec![1u64; dd + 1];
            for e in 1..=dd {
                row[e] = row[e - 1] * v % p;
            }
            row
        })
        .collect();
    let singular_at = |x: [u64; NVARS]| -> bool {
        partials.iter().all(|terms| {
            let mut acc = 0u64;
            for (c, e) in terms {
                let mut t = *c;
                for i in 0..NVARS {
                    t = t * pow[x[i] as usize][e[i]] % p;
                }
                acc = (acc + t) % p;
            }
            acc == 0
        })
    };
    let mut found: Vec<[u64; NVARS]> = (0..p)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            for b in 0..p {
                for c in 0..p {
                    if singular_at([1, a, b, c]) {
                        local.push([1, a, b, c]);
                    }
                }
            }
            local
        })
        .collect();
    for b in 0..p {
        for c in 0..p {
            if singular_at([0, 1, b, c]) {
                found.push([0, 1, b, c]);
            }
        }
    }
    for c in 0..p {
        if singular_at([0, 0, 1, c]) {
            found.push([0, 0, 1, c]);
        }
    }
    if singular_at([0, 0, 0, 1]) {
        found.push([0, 0, 0, 1]);
    }
    found.sort();
    Ok(found
        .into_iter()
        .map(|x| ProjPoint::from_u64(ctx, x).expect("nonzero"))
        .collect())
}

fn is_singular_on(f: &MPoly, pt: &ProjPoint) -> Result<bool, SingularError> {
    for g in f.gradient() {
        if !pt.field.is_zero(&pt.eval(&g)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A1 / A2 / worse, from the Hessian in the affine chart of the point and the
/// cubic term along the Hessian kernel.
pub fn classify_singularity(f: &MPoly, pt: &ProjPoint) -> Result<Classification, SingularError> {
    check_degree(f)?;
    if !is_singular_on(f, pt)? {
        return Err(SingularError::NotSingular);
    }
    let k = &pt.field;
    let chart = pt.chart();
    let local: Vec<usize> = (0..NVARS).filter(|&i| i != chart).collect();
    let grad = f.gradient();
    let mut hess = vec![vec![k.zero(); 3]; 3];
    for (r, &i) in local.iter().enumerate() {
        for (c, &j) in local.iter().enumerate() {
            hess[r][c] = pt.eval(&grad[i].diff(j))?;
        }
    }
    match rank(k, hess.clone()) {
        3 => Ok(Classification::A1),
        2 => {
            let w = kernel_vector(k, hess).expect("rank 2 has a kernel");
            let mut dir = [k.zero(); NVARS];
            for (r, &i) in local.iter().enumerate() {
                dir[i] = w[r];
            }
            if k.is_zero(&cubic_along(f, pt, &dir)?) {
                Ok(Classification::AkOrWorse)
            } else {
                Ok(Classification::A2)
            }
        }
        _ => Ok(Classification::AkOrWorse),
    }
}

/// Coefficient of `t^3` in `f(P + t w)`.
fn cubic_along(f: &MPoly, pt: &ProjPoint, dir: &[Fel; NVARS]) -> Result<Fel, SingularError> {
    let k = &pt.field;
    let fk = f.extend_to(k)?;
    let t = MPoly::var(k, 0);
    let images: Vec<MPoly> = (0..NVARS)
        .map(|i| MPoly::constant(k, pt.coords[i]).add(&t.scale(&dir[i])))
        .collect();
    let h = fk.substitute(&images);
    Ok(h.coeff(&crate::mpoly::Mono([3, 0, 0, 0])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> FieldCtx {
        FieldCtx::make(p, 1, 0).unwrap()
    }

    /// Independent oracle: evaluate every partial through the generic evaluator.
    fn brute_scan(f: &MPoly) -> Vec<ProjPoint> {
        let k = f.ctx();
        let p = k.p();
        let mut out = Vec::new();
        for idx in 0..p.pow(4) {
            let x = [idx % p, idx / p % p, idx / p / p % p, idx / p / p / p];
            let Some(pt) = ProjPoint::from_u64(k, x) else { continue };
            if pt.rational_coords() != Some(x) {
                continue;
            }
            if is_singular_on(f, &pt).unwrap() {
                out.push(pt);
            }
        }
        out.sort_by(|a, b| a.coords.cmp(&b.coords));
        out
    }

    #[test]
    fn coordinate_tetrahedron_has_28_singular_points() {
        let k = fp(5);
        let f = MPoly::from_int_terms(&k, &[(1, [1, 1, 1, 1])]);
        let pts = scan_rational_singular(&f).unwrap();
        assert_eq!(pts.len(), 6 * (5 - 1) + 4);
        assert_eq!(pts, brute_scan(&f));
    }

    #[test]
    fn smooth_quadric_and_cusp_cone() {
        let k = fp(7);
        let q = MPoly::from_int_terms(&k, &[(1, [1, 0, 0, 1]), (-1, [0, 1, 1, 0])]);
        assert!(scan_rational_singular(&q).unwrap().is_empty());
        let c = MPoly::from_int_terms(&k, &[(1, [1, 1, 0, 1]), (-1, [0, 0, 3, 0])]);
        let pts = scan_rational_singular(&c).unwrap();
        // x1 x3 = x0 x3 = x0 x1 = x2 = 0: the three vertices off the x2 axis
        let want: Vec<ProjPoint> = [[0, 0, 0, 1], [0, 1, 0, 0], [1, 0, 0, 0]]
            .iter()
            .map(|x| ProjPoint::from_u64(&k, *x).unwrap())
            .collect();
        assert_eq!(pts, want);
        assert_eq!(pts, brute_scan(&c));
        for q in &pts {
            assert_eq!(classify_singularity(&c, q).unwrap(), Classification::A2);
        }
    }

    #[test]
    fn characteristic_dividing_degree_rejected() {
        let k = fp(5);
        let f = MPoly::from_int_terms(&k, &[(1, [5, 0, 0, 0]), (1, [0, 0, 0, 5])]);
        assert!(matches!(
            scan_rational_singular(&f),
            Err(SingularError::CharacteristicDividesDegree { .. })
        ));
    }

    #[test]
    fn classification_examples() {
        let k = fp(7);
        let o = ProjPoint::from_u64(&k, [0, 0, 0, 1]).unwrap();
        let node = MPoly::from_int_terms(&k, &[(1, [2, 0, 0, 0]), (1, [0, 2, 0, 0]), (1, [0, 0, 2, 0])]);
        assert_eq!(classify_singularity(&node, &o).unwrap(), Classification::A1);
        let worse = MPoly::from_int_terms(&k, &[(1, [1, 1, 0, 2]), (-1, [0, 0, 4, 0])]);
        assert_eq!(classify_singularity(&worse, &o).unwrap(), Classification::AkOrWorse);
        let smooth_pt = ProjPoint::from_u64(&k, [1, 0, 0, 0]).unwrap();
        let plane = MPoly::var(&k, 0);
        assert_eq!(classify_singularity(&plane, &smooth_pt), Err(SingularError::NotSingular));
    }

    #[test]
    fn classification_invariant_under_coordinate_change() {
        let k = fp(31);
        let o = ProjPoint::from_u64(&k, [0, 0, 0, 1]).unwrap();
        let cases = [
            (MPoly::from_int_terms(&k, &[(1, [1, 1, 0, 1]), (-1, [0, 0, 3, 0])]), Classification::A2),
            (
                MPoly::from_int_terms(&k, &[(1, [2, 0, 0, 1]), (1, [0, 2, 0, 1]), (1, [0, 0, 2, 1])]),
                Classification::A1,
            ),
            (MPoly::from_int_terms(&k, &[(1, [1, 1, 0, 2]), (-1, [0, 0, 4, 0])]), Classification::AkOrWorse),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (f, want) in cases {
            for _ in 0..5 {
                // x = M y; the singular point moves to y = M^{-1} o
                let m: [[Fel; 4]; 4] = loop {
                    let m = [(); 4].map(|_| [(); 4].map(|_| k.from_u64(rng.gen_range(0..31))));
                    if rank(&k, m.iter().map(|r| r.to_vec()).collect()) == 4 {
                        break m;
                    }
                };
                let g = f.linear_substitute(&m);
                let mut aug: Vec<Vec<Fel>> = m
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        let mut row = r.to_vec();
                        row.push(o.coords[i]);
                        row
                    })
                    .collect();
                rref(&k, &mut aug);
                let y = [aug[0][4], aug[1][4], aug[2][4], aug[3][4]];
                let q = ProjPoint::new(&k, y).unwrap();
                assert_eq!(classify_singularity(&g, &q).unwrap(), want);
            }
        }
    }

    #[test]
    fn point_degree_and_orbits() {
        let k = FieldCtx::make(7, 2, 0).unwrap();
        let t = k.generator();
        let p = ProjPoint::new(&k, [k.one(), t, k.zero(), k.one()]).unwrap();
        assert_eq!(p.degree(), 2);
        assert_ne!(p.frobenius(), p);
        assert_eq!(p.frobenius().frobenius(), p);
        assert_eq!(p.orbit_min(), p.frobenius().orbit_min());
        let q = ProjPoint::new(&k, [k.from_u64(2), k.from_u64(4), k.zero(), k.zero()]).unwrap();
        assert_eq!(q.degree(), 1);
        assert_eq!(q.rational_coords(), Some([1, 2, 0, 0]));
    }
}
