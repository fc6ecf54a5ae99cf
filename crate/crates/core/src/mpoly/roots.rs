//! Root finding over finite fields: distinct-degree then equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PolyError, UPoly};
use crate::ffield::{Fel, FieldCtx};

/// Roots of minimal field degree `degree`, as elements of `field = F_{p^degree}`.
#[derive(Debug, Clone)]
pub struct RootGroup {
    pub field: FieldCtx,
    pub degree: usize,
    pub roots: Vec<Fel>,
}

#[derive(Debug, Clone)]
pub struct Roots {
    pub groups: Vec<RootGroup>,
    /// Irreducible-degree classes above the budget (products of such factors).
    pub unresolved: Vec<UPoly>,
}

impl Roots {
    pub fn budget_exceeded(&self) -> bool {
        !self.unresolved.is_empty()
    }

    pub fn count(&self) -> usize {
        self.groups.iter().map(|g| g.roots.len()).sum()
    }
}

/// All distinct roots of `f` lying in `f`'s own field, sorted.
pub fn roots_in_field(f: &UPoly, seed: u64) -> Vec<Fel> {
    if f.deg() == 0 {
        return Vec::new();
    }
    let k = f.ctx();
    let g = f.monic();
    let x = UPoly::x(k);
    let xq = x.powmod(k.order(), &g);
    let h = g.gcd(&xq.sub(&x));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    split_linear(&h, &mut rng, &mut out);
    out.sort();
    out
}

/// `h` monic, squarefree and a product of linear factors over its field.
fn split_linear(h: &UPoly, rng: &mut ChaCha8Rng, out: &mut Vec<Fel>) {
    let k = h.ctx();
    match h.deg() {
        0 => {}
        1 => out.push(k.neg(&h.coeff(0))),
        n => {
            let e = (k.order() - 1) / 2;
            loop {
                let a = random_poly(k, n, rng);
                if a.is_zero() {
                    continue;
                }
                let b = a.powmod(e, h).sub(&UPoly::one(k));
                let d = h.gcd(&b);
                if d.deg() > 0 && d.deg() < n {
                    let rest = h.div_exact(&d).expect("gcd divides");
                    split_linear(&d, rng, out);
                    split_linear(&rest, rng, out);
                    return;
                }
            }
        }
    }
}

fn random_poly(k: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> UPoly {
    let p = k.p();
    let coeffs = (0..n)
        .map(|_| {
            let c: Vec<u64> = (0..k.k()).map(|_| rng.gen_range(0..p)).collect();
            k.from_coeffs(&c)
        })
        .collect();
    UPoly::new(k, coeffs)
}

/// Distinct-degree factorization of a monic squarefree `g` over a prime field:
/// `(d, product of the irreducible factors of degree d)`.
pub(crate) fn distinct_degree(g: &UPoly) -> Vec<(usize, UPoly)> {
    let k = g.ctx();
    let p = u128::from(k.p());
    let x = UPoly::x(k);
    let mut rest = g.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(p, &rest);
        let fac = rest.gcd(&h.sub(&x));
        if fac.deg() > 0 {
            rest = rest.div_exact(&fac).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((d, fac));
        }
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest));
    }
    out
}

/// Splits a monic product of distinct irreducibles of degree `d` into its factors.
pub(crate) fn equal_degree_factors(f: &UPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    let n = f.deg();
    if n <= d {
        return vec![f.clone()];
    }
    let k = f.ctx();
    let Some(q) = k.order().checked_pow(d as u32) else {
        return vec![f.clone()];
    };
    let e = (q - 1) / 2;
    loop {
        let a = random_poly(k, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let g = f.gcd(&a.powmod(e, f).sub(&UPoly::one(k)));
        if g.deg() > 0 && g.deg() < n {
            let rest = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree_factors(&g, d, rng);
            out.extend(equal_degree_factors(&rest, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of `f` over its prime field with multiplicities,
/// sorted by (degree, coefficients). Products of factors of a degree `d` with
/// `p^d` beyond 128 bits are left unsplit.
pub fn factor(f: &UPoly, seed: u64) -> Vec<(UPoly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, m) in super::up_squarefree(f) {
        for (d, prod) in distinct_degree(&g) {
            for h in equal_degree_factors(&prod, d, &mut rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.deg(), a.0.coeffs().to_vec()).cmp(&(b.0.deg(), b.0.coeffs().to_vec()))
    });
    out
}

/// Roots of `f` (over a prime field) in all extensions of degree up to `budget`,
/// grouped by minimal field degree.
pub fn up_roots(f: &UPoly, budget: usize, seed: u64) -> Result<Roots, PolyError> {
    let k = f.ctx();
    if !k.is_prime_field() {
        return Err(PolyError::NeedsPrimeField);
    }
    if f.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let g = f.squarefree_part().monic();
    let mut groups = Vec::new();
    let mut unresolved = Vec::new();
    for (d, fac) in distinct_degree(&g) {
        if d > budget {
            unresolved.push(fac);
            continue;
        }
        let field = if d == 1 {
            k.clone()
        } else {
            FieldCtx::make(k.p(), d, 0)?
        };
        let lifted = fac.extend_to(&field)?;
        let roots = roots_in_field(&lifted, seed ^ d as u64);
        groups.push(RootGroup {
            field,
            degree: d,
            roots,
        });
    }
    Ok(Roots { groups, unresolved })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldCtx {
        FieldCtx::make(7, 1, 0).unwrap()
    }

    #[test]
    fn split_over_base() {
        let k = f7();
        let r = up_roots(&UPoly::from_ints(&k, &[-1, 0, 1]), 1, 0).unwrap();
        assert_eq!(r.groups.len(), 1);
        assert_eq!(r.groups[0].roots, vec![k.from_u64(1), k.from_u64(6)]);
        assert!(!r.budget_exceeded());
    }

    #[test]
    fn quadratic_extension() {
        let k = f7();
        let f = UPoly::from_ints(&k, &[1, 0, 1]);
        // oracle: -1 is not a square mod 7
        assert!((1..7u64).all(|a| a * a % 7 != 6));
        let r = up_roots(&f, 2, 0).unwrap();
        assert_eq!(r.count(), 2);
        let g = &r.groups[0];
        assert_eq!(g.degree, 2);
        let lifted = f.extend_to(&g.field).unwrap();
        for x in &g.roots {
            assert!(g.field.is_zero(&lifted.eval(x)));
            assert_eq!(g.field.min_degree(x), 2);
        }
    }

    #[test]
    fn budget_exceeded_reports_factor() {
        let k = f7();
        assert!((0..7u64).all(|a| a * a * a % 7 != 2));
        let f = UPoly::from_ints(&k, &[-2, 0, 0, 1]);
        let r = up_roots(&f, 1, 0).unwrap();
        assert_eq!(r.count(), 0);
        assert_eq!(r.unresolved, vec![f.clone()]);
        let r3 = up_roots(&f, 3, 0).unwrap();
        assert_eq!(r3.count(), 3);
    }

    #[test]
    fn mixed_degrees_and_repeats() {
        let k = FieldCtx::make(31, 1, 0).unwrap();
        let lin = UPoly::from_ints(&k, &[-3, 1]);
        let quad = UPoly::from_ints(&k, &[1, 0, 1]);
        assert!((1..31u64).all(|a| a * a % 31 != 30));
        let f = lin.pow(3).mul(&quad).mul(&UPoly::from_ints(&k, &[5, 1]));
        let r = up_roots(&f, 4, 9).unwrap();
        let degs: Vec<(usize, usize)> = r.groups.iter().map(|g| (g.degree, g.roots.len())).collect();
        assert_eq!(degs, vec![(1, 2), (2, 2)]);
    }

    #[test]
    fn factorization_reassembles() {
        let k = FieldCtx::make(13, 1, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let deg = rng.gen_range(1..12);
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..13)).collect();
            c.push(1);
            let f = UPoly::from_ints(&k, &c).mul(&UPoly::from_ints(&k, &[1, 1]).pow(2));
            let fac = factor(&f, 5);
            let mut back = UPoly::one(&k);
            for (g, m) in &fac {
                assert_eq!(distinct_degree(g).len(), 1, "factor {g} not irreducible");
                assert_eq!(distinct_degree(g)[0].0, g.deg());
                back = back.mul(&g.pow(*m as u32));
            }
            assert_eq!(back, f);
        }
    }

    #[test]
    fn roots_in_extension_field() {
        let k = FieldCtx::make(11, 3, 4).unwrap();
        let a = k.generator();
        let b = k.add(&a, &k.one());
        let f = UPoly::linear(&k, &a).mul(&UPoly::linear(&k, &b));
        let mut want = vec![a, b];
        want.sort();
        assert_eq!(roots_in_field(&f, 1), want);
    }
}
