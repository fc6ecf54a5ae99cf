//! Dense univariate polynomials over a [`FieldCtx`].

use std::fmt;

use super::PolyError;
use crate::ffield::{Fel, FieldCtx};

#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    ctx: FieldCtx,
    /// Low degree first; no trailing zeros.
    c: Vec<Fel>,
}

impl UPoly {
    pub fn new(ctx: &FieldCtx, coeffs: Vec<Fel>) -> Self {
        let mut p = UPoly {
            ctx: ctx.clone(),
            c: coeffs,
        };
        p.trim();
        p
    }

    pub fn from_ints(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::constant(ctx, ctx.one())
    }

    pub fn constant(ctx: &FieldCtx, c: Fel) -> Self {
        Self::new(ctx, vec![c])
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Self::new(ctx, vec![ctx.zero(), ctx.one()])
    }

    /// `x - a`
    pub fn linear(ctx: &FieldCtx, a: &Fel) -> Self {
        Self::new(ctx, vec![ctx.neg(a), ctx.one()])
    }

    fn trim(&mut self) {
        while let Some(last) = self.c.last() {
            if self.ctx.is_zero(last) {
                self.c.pop();
            } else {
                break;
            }
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Fel] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fel {
        self.c.get(i).copied().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.ctx.is_one(&self.c[0])
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Fel {
        self.c.last().copied().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| self.ctx.add(&self.coeff(i), &o.coeff(i)))
            .collect();
        UPoly::new(&self.ctx, v)
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| self.ctx.sub(&self.coeff(i), &o.coeff(i)))
            .collect();
        UPoly::new(&self.ctx, v)
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(&self.ctx, self.c.iter().map(|a| self.ctx.neg(a)).collect())
    }

    pub fn scale(&self, s: &Fel) -> UPoly {
        UPoly::new(&self.ctx, self.c.iter().map(|a| self.ctx.mul(a, s)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let k = &self.ctx;
        let mut v = vec![k.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] = k.add(&v[i + j], &k.mul(a, b));
            }
        }
        UPoly::new(k, v)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(&self.ctx), |acc, _| acc.mul(self))
    }

    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let k = &self.ctx;
        let inv = k.inv(&d.lc())?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((UPoly::zero(k), self.clone()));
        }
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let t = k.mul(&r[i], &inv);
            if k.is_zero(&t) {
                continue;
            }
            q[i - dd] = t;
            for (j, dj) in d.c.iter().enumerate() {
                r[i - dd + j] = k.sub(&r[i - dd + j], &k.mul(&t, dj));
            }
        }
        r.truncate(dd);
        Ok((UPoly::new(k, q), UPoly::new(k, r)))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly, PolyError> {
        Ok(self.divrem(d)?.1)
    }

    pub fn div_exact(&self, d: &UPoly) -> Result<UPoly, PolyError> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        Ok(q)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.ctx.inv(&self.lc()).expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        let k = &self.ctx;
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| k.scale(a, i as u64))
            .collect();
        UPoly::new(k, v)
    }

    pub fn eval(&self, x: &Fel) -> Fel {
        let k = &self.ctx;
        self.c
            .iter()
            .rev()
            .fold(k.zero(), |acc, a| k.add(&k.mul(&acc, x), a))
    }

    pub fn mulmod(&self, o: &UPoly, m: &UPoly) -> UPoly {
        self.mul(o).rem(m).expect("nonzero modulus")
    }

    pub fn powmod(&self, mut e: u128, m: &UPoly) -> UPoly {
        let mut base = self.rem(m).expect("nonzero modulus");
        let mut acc = UPoly::one(&self.ctx).rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// Map coefficients into another field (an extension of the prime base).
    pub fn extend_to(&self, field: &FieldCtx) -> Result<UPoly, PolyError> {
        let v = self
            .c
            .iter()
            .map(|a| field.embed(&self.ctx, a))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UPoly::new(field, v))
    }

    /// For `f = g(x^p)` returns `g` with coefficients replaced by their p-th roots.
    fn pth_root(&self) -> UPoly {
        let k = &self.ctx;
        let p = k.p() as usize;
        let v = self
            .c
            .iter()
            .step_by(p)
            .map(|a| k.frobenius(a, k.k() - 1))
            .collect();
        UPoly::new(k, v)
    }

    /// Product of the distinct irreducible factors (up to a unit).
    pub fn squarefree_part(&self) -> UPoly {
        up_squarefree(self)
            .into_iter()
            .fold(UPoly::one(&self.ctx), |acc, (f, _)| acc.mul(&f))
    }
}

/// Resultant via the Sylvester determinant, with
/// `Res(f, g) = lc(f)^deg(g) * prod g(alpha)` over the roots of f.
pub fn up_resultant(f: &UPoly, g: &UPoly) -> Result<Fel, PolyError> {
    if f.ctx != g.ctx {
        return Err(PolyError::ContextMismatch);
    }
    let k = f.ctx();
    if f.is_zero() || g.is_zero() {
        return Ok(k.zero());
    }
    let m = f.deg();
    let n = g.deg();
    let size = m + n;
    if size == 0 {
        return Ok(k.one());
    }
    let mut mat = vec![vec![k.zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = f.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = g.coeff(n - j);
        }
    }
    Ok(field_det(k, mat))
}

/// Determinant over a field by Gaussian elimination.
pub(crate) fn field_det(k: &FieldCtx, mut mat: Vec<Vec<Fel>>) -> Fel {
    let n = mat.len();
    let mut det = k.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !k.is_zero(&mat[r][col])) else {
            return k.zero();
        };
        if piv != col {
            mat.swap(piv, col);
            det = k.neg(&det);
        }
        let pv = mat[col][col];
        det = k.mul(&det, &pv);
        let inv = k.inv(&pv).expect("nonzero pivot");
        for r in col + 1..n {
            let factor = k.mul(&mat[r][col], &inv);
            if k.is_zero(&factor) {
                continue;
            }
            for c in col..n {
                let t = k.mul(&factor, &mat[col][c]);
                mat[r][c] = k.sub(&mat[r][c], &t);
            }
        }
    }
    det
}

/// Squarefree decomposition in characteristic p: pairs `(factor, multiplicity)`
/// with monic, squarefree, pairwise coprime factors, sorted by multiplicity.
pub fn up_squarefree(f: &UPoly) -> Vec<(UPoly, usize)> {
    let mut out: Vec<(UPoly, usize)> = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    sff_rec(&f.monic(), 1, &mut out);
    out.sort_by_key(|(g, m)| (*m, g.deg()));
    // merge equal multiplicities coming from different recursion levels
    let mut merged: Vec<(UPoly, usize)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, mm)) if *mm == m => *h = h.mul(&g),
            _ => merged.push((g, m)),
        }
    }
    merged
}

fn sff_rec(f: &UPoly, scale: usize, out: &mut Vec<(UPoly, usize)>) {
    let one = UPoly::one(f.ctx());
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac.deg() > 0 {
            out.push((fac, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
    }
    if c != one && c.deg() > 0 {
        sff_rec(&c.pth_root().monic(), scale * f.ctx().p() as usize, out);
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !self.ctx.is_zero(a))
            .map(|(i, a)| {
                let cs = self.ctx.display(a);
                match i {
                    0 => cs,
                    1 => format!("({cs})x"),
                    _ => format!("({cs})x^{i}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> FieldCtx {
        FieldCtx::make(7, 1, 0).unwrap()
    }

    /// Independent oracle: resultant through the Euclidean remainder sequence.
    fn euclid_resultant(f: &UPoly, g: &UPoly) -> Fel {
        let k = f.ctx().clone();
        if f.is_zero() || g.is_zero() {
            return k.zero();
        }
        let (m, n) = (f.deg(), g.deg());
        if n == 0 {
            return k.pow(&g.lc(), m as u64);
        }
        if m < n {
            let sign = if (m * n) % 2 == 1 { k.neg(&k.one()) } else { k.one() };
            return k.mul(&sign, &euclid_resultant(g, f));
        }
        let r = f.rem(g).unwrap();
        if r.is_zero() {
            return k.zero();
        }
        let sign = if (m * n) % 2 == 1 { k.neg(&k.one()) } else { k.one() };
        let factor = k.pow(&g.lc(), (m - r.deg()) as u64);
        k.mul(&k.mul(&sign, &factor), &euclid_resultant(g, &r))
    }

    #[test]
    fn resultant_examples() {
        let k = f7();
        let f = UPoly::from_ints(&k, &[-1, 0, 1]);
        let g = UPoly::from_ints(&k, &[-2, 1]);
        assert_eq!(up_resultant(&f, &g).unwrap(), k.from_u64(3));
        let a = UPoly::from_ints(&k, &[-2, 1]);
        let b = UPoly::from_ints(&k, &[-5, 1]);
        assert_eq!(up_resultant(&a, &b).unwrap(), k.from_i64(-3));
        let c = UPoly::from_ints(&k, &[0, -1, 1]);
        let d = UPoly::from_ints(&k, &[-1, 1]);
        assert_eq!(up_resultant(&c, &d).unwrap(), k.zero());
    }

    #[test]
    fn squarefree_examples() {
        let k = f7();
        let f = UPoly::from_ints(&k, &[-1, 1])
            .pow(2)
            .mul(&UPoly::from_ints(&k, &[1, 1]));
        let sf = up_squarefree(&f);
        assert_eq!(
            sf,
            vec![
                (UPoly::from_ints(&k, &[1, 1]), 1),
                (UPoly::from_ints(&k, &[-1, 1]), 2)
            ]
        );
        let g = UPoly::from_ints(&k, &[-1, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(up_squarefree(&g), vec![(UPoly::from_ints(&k, &[-1, 1]), 7)]);
    }

    #[test]
    fn squarefree_mixed_pth_powers() {
        let k = FieldCtx::make(5, 1, 0).unwrap();
        let a = UPoly::from_ints(&k, &[1, 1]);
        let b = UPoly::from_ints(&k, &[2, 0, 1]);
        let c = UPoly::from_ints(&k, &[3, 1]);
        // a^1 * b^5 * c^6
        let f = a.mul(&b.pow(5)).mul(&c.pow(6));
        let sf = up_squarefree(&f);
        assert_eq!(sf, vec![(a, 1), (b, 5), (c, 6)]);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(0i64..31, 1..=max_deg + 1)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn resultant_multiplicative(f in arb_poly(5), g in arb_poly(4), h in arb_poly(4)) {
            let k = FieldCtx::make(31, 1, 0).unwrap();
            let (f, g, h) = (UPoly::from_ints(&k, &f), UPoly::from_ints(&k, &g), UPoly::from_ints(&k, &h));
            let lhs = up_resultant(&f, &g.mul(&h)).unwrap();
            let rhs = k.mul(&up_resultant(&f, &g).unwrap(), &up_resultant(&f, &h).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn resultant_matches_euclid(f in arb_poly(6), g in arb_poly(6)) {
            let k = FieldCtx::make(31, 1, 0).unwrap();
            let (f, g) = (UPoly::from_ints(&k, &f), UPoly::from_ints(&k, &g));
            prop_assert_eq!(up_resultant(&f, &g).unwrap(), euclid_resultant(&f, &g));
        }

        #[test]
        fn squarefree_reassembles(parts in prop::collection::vec((arb_poly(3), 1usize..9), 1..4)) {
            let k = FieldCtx::make(7, 1, 0).unwrap();
            let mut f = UPoly::one(&k);
            for (c, m) in &parts {
                f = f.mul(&UPoly::from_ints(&k, c).pow(*m as u32));
            }
            prop_assume!(!f.is_zero());
            let sf = up_squarefree(&f);
            let mut back = UPoly::one(&k);
            for (g, m) in &sf {
                prop_assert!(g.gcd(&g.derivative()).is_one(), "factor not squarefree");
                back = back.mul(&g.pow(*m as u32));
            }
            prop_assert_eq!(back, f.monic());
            for i in 0..sf.len() {
                for j in i + 1..sf.len() {
                    prop_assert!(sf[i].0.gcd(&sf[j].0).is_one());
                }
            }
        }
    }
}
