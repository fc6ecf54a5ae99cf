//! Elimination for three homogeneous surfaces in P^3 via Sylvester resultants.
//!
//! After a seeded random change of coordinates `x = M y` and the chart `y0 = 1`,
//! the three pairwise resultants in `y3` give plane curves in `(y1, y2)`; their
//! pairwise resultants in `y2` give univariates in `y1`, and the gcd of those
//! is the elimination image. For a generic `M` every intersection point
//! contributes a root of multiplicity equal to its intersection number.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::upoly::field_det;
use super::{MPoly, PolyError, UPoly, NVARS};
use crate::ffield::Fel;

/// Integral domain with exact division, as needed by fraction-free elimination.
pub trait ExactDomain: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o`, known in advance to be exact.
    fn div_exact(&self, o: &Self) -> Self;
}

impl ExactDomain for MPoly {
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        MPoly::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MPoly::sub(self, o)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.divide_exact(o).expect("Bareiss division is exact")
    }
}

impl ExactDomain for UPoly {
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        UPoly::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        UPoly::sub(self, o)
    }
    fn neg(&self) -> Self {
        UPoly::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        UPoly::div_exact(self, o).expect("Bareiss division is exact")
    }
}

/// Fraction-free determinant (Bareiss). `one` is the unit of the domain.
pub fn bareiss_det<T: ExactDomain>(mut m: Vec<Vec<T>>, one: T) -> T {
    let n = m.len();
    if n == 0 {
        return one;
    }
    let mut prev = one;
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return m[k][k].clone(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Resultant of two polynomials given by coefficient lists (low degree first,
/// nonzero leading entries), same convention as [`super::up_resultant`].
pub(crate) fn resultant_generic<T: ExactDomain>(f: &[T], g: &[T], zero: T, one: T) -> T {
    if f.is_empty() || g.is_empty() {
        return zero;
    }
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return one;
    }
    let mut mat = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = f[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = g[n - j].clone();
        }
    }
    bareiss_det(mat, one)
}

fn mpoly_resultant(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    let ctx = f.ctx();
    resultant_generic(
        &f.coefficients_in(var),
        &g.coefficients_in(var),
        MPoly::zero(ctx),
        MPoly::one(ctx),
    )
}

/// Resultant in `x2` of two polynomials in `x1, x2` only, as a univariate in `x1`.
fn plane_resultant(f: &MPoly, g: &MPoly) -> UPoly {
    let ctx = f.ctx();
    let lift = |h: &MPoly| -> Vec<UPoly> {
        h.coefficients_in(2)
            .iter()
            .map(|c| c.to_upoly(1).expect("only x1 remains"))
            .collect()
    };
    resultant_generic(&lift(f), &lift(g), UPoly::zero(ctx), UPoly::one(ctx))
}

#[derive(Debug, Clone, Copy)]
pub struct EliminationOptions {
    pub seed: u64,
    pub retries: u32,
}

impl Default for EliminationOptions {
    fn default() -> Self {
        EliminationOptions { seed: 0, retries: 8 }
    }
}

#[derive(Debug, Clone)]
pub struct Elimination {
    /// `x = M y`: row `i` expresses `x_i` in the new coordinates.
    pub transform: [[Fel; NVARS]; NVARS],
    /// The inputs after the coordinate change, in the chart `y0 = 1`.
    pub charted: [MPoly; 3],
    /// Pairwise resultants in `y3`: `(a,b)`, `(a,c)`, `(b,c)`.
    pub plane: [MPoly; 3],
    /// Monic elimination image in `y1`.
    pub poly: UPoly,
    pub bezout: u32,
    pub attempts: u32,
}

impl Elimination {
    /// Maps chart coordinates `(y1, y2, y3)` back to a point of the original space.
    pub fn to_original(&self, field: &crate::ffield::FieldCtx, y: &[Fel; 3]) -> [Fel; NVARS] {
        let base = self.charted[0].ctx();
        let yy = [field.one(), y[0], y[1], y[2]];
        let mut x = [field.zero(); NVARS];
        for (i, xi) in x.iter_mut().enumerate() {
            for (j, yj) in yy.iter().enumerate() {
                let m = field.embed(base, &self.transform[i][j]).expect("prime base");
                *xi = field.add(xi, &field.mul(&m, yj));
            }
        }
        x
    }
}

enum Attempt {
    Done(Box<Elimination>),
    Vanished,
    NotGeneric,
}

/// Elimination image of the system `a = b = c = 0` (homogeneous, prime field).
pub fn eliminate(
    a: &MPoly,
    b: &MPoly,
    c: &MPoly,
    opts: &EliminationOptions,
) -> Result<Elimination, PolyError> {
    let ctx = a.ctx();
    if b.ctx() != ctx || c.ctx() != ctx {
        return Err(PolyError::ContextMismatch);
    }
    if !ctx.is_prime_field() {
        return Err(PolyError::NeedsPrimeField);
    }
    let da = a.check_homogeneous()?;
    let db = b.check_homogeneous()?;
    let dc = c.check_homogeneous()?;
    if [a, b, c].iter().any(|f| f.is_zero()) || da == 0 || db == 0 || dc == 0 {
        return Err(PolyError::NotZeroDimensional);
    }
    let mut vanished = false;
    for attempt in 0..opts.retries.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(
            opts.seed ^ (u64::from(attempt) + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        match try_once(a, b, c, &mut rng) {
            Attempt::Done(mut e) => {
                e.attempts = attempt + 1;
                return Ok(*e);
            }
            Attempt::Vanished => vanished = true,
            Attempt::NotGeneric => {}
        }
    }
    if vanished {
        Err(PolyError::NotZeroDimensional)
    } else {
        Err(PolyError::ChartMisses(opts.retries.max(1)))
    }
}

fn random_transform(ctx: &crate::ffield::FieldCtx, rng: &mut ChaCha8Rng) -> [[Fel; NVARS]; NVARS] {
    loop {
        let mut m = [[ctx.zero(); NVARS]; NVARS];
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = ctx.from_u64(rng.gen_range(0..ctx.p()));
            }
        }
        let det = field_det(ctx, m.iter().map(|r| r.to_vec()).collect());
        if !ctx.is_zero(&det) {
            return m;
        }
    }
}

/// Leading coefficient in `var` is a nonzero constant and the degree in `var`
/// equals the total degree.
fn monic_like(f: &MPoly, var: usize) -> bool {
    let coeffs = f.coefficients_in(var);
    match coeffs.last() {
        Some(lc) => lc.degree() == Some(0) && f.degree() == Some(u32::from(f.degree_in(var))),
        None => false,
    }
}

fn try_once(a: &MPoly, b: &MPoly, c: &MPoly, rng: &mut ChaCha8Rng) -> Attempt {
    let ctx = a.ctx();
    let m = random_transform(ctx, rng);
    let one = ctx.one();
    let chart = |f: &MPoly| f.linear_substitute(&m).specialize(0, &one);
    let charted = [chart(a), chart(b), chart(c)];
    let degs = [a, b, c].map(|f| f.degree().unwrap_or(0));
    let bezout = degs[0] * degs[1] * degs[2];
    let full = |f: &MPoly, var: usize, d: u32| monic_like(f, var) && f.degree() == Some(d);
    if !(0..3).all(|i| full(&charted[i], 3, degs[i])) {
        return Attempt::NotGeneric;
    }
    let [ca, cb, cc] = &charted;
    let plane = [
        mpoly_resultant(ca, cb, 3),
        mpoly_resultant(ca, cc, 3),
        mpoly_resultant(cb, cc, 3),
    ];
    if plane.iter().any(|r| r.is_zero()) {
        return Attempt::Vanished;
    }
    let pair_degs = [degs[0] * degs[1], degs[0] * degs[2], degs[1] * degs[2]];
    if !(0..3).all(|i| full(&plane[i], 2, pair_degs[i])) {
        return Attempt::NotGeneric;
    }
    let ds = [
        plane_resultant(&plane[0], &plane[1]),
        plane_resultant(&plane[0], &plane[2]),
        plane_resultant(&plane[1], &plane[2]),
    ];
    if ds.iter().any(|d| d.is_zero()) {
        return Attempt::Vanished;
    }
    let t = ds[0].gcd(&ds[1]).gcd(&ds[2]);
    if t.deg() != bezout as usize {
        return Attempt::NotGeneric;
    }
    Attempt::Done(Box::new(Elimination {
        transform: m,
        charted,
        plane,
        poly: t,
        bezout,
        attempts: 0,
    }))
}
