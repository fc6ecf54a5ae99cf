//! Sparse polynomials in `x0..x3` over a [`FieldCtx`], plus the univariate
//! toolbox used for elimination.

mod elim;
mod parse;
mod roots;
mod upoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::ffield::{Fel, FieldCtx, FieldError};

pub use elim::{bareiss_det, eliminate, Elimination, EliminationOptions, ExactDomain};
pub use parse::{parse_poly, parse_poly_homogeneous};
pub use roots::{factor, roots_in_field, up_roots, RootGroup, Roots};
pub use upoly::{up_resultant, up_squarefree, UPoly};

pub const NVARS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("polynomial is not homogeneous (degrees {0} and {1})")]
    MixedDegree(u32, u32),
    #[error("polynomials belong to different fields")]
    ContextMismatch,
    #[error("exact division left a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("system is not zero-dimensional")]
    NotZeroDimensional,
    #[error("no generic chart found within {0} coordinate changes")]
    ChartMisses(u32),
    #[error("operation needs a prime base field")]
    NeedsPrimeField,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Exponent vector, ordered graded-lexicographically with `x0 > x1 > x2 > x3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Mono(e)
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Mono(e)
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a <= b)
    }

    fn quotient(&self, by: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(by.0) {
            *a -= b;
        }
        Mono(e)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    ctx: FieldCtx,
    terms: BTreeMap<Mono, Fel>,
}

impl MPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        MPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &FieldCtx, c: Fel) -> Self {
        Self::monomial(ctx, c, [0; NVARS])
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::constant(ctx, ctx.one())
    }

    pub fn var(ctx: &FieldCtx, i: usize) -> Self {
        Self::monomial(ctx, ctx.one(), Mono::var(i).0)
    }

    pub fn monomial(ctx: &FieldCtx, c: Fel, exps: [u16; NVARS]) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(Mono(exps), c);
        p
    }

    /// Sums duplicate monomials.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Fel)>>(ctx: &FieldCtx, terms: I) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Convenience for tests and fixed formulas: integer coefficients.
    pub fn from_int_terms(ctx: &FieldCtx, terms: &[(i64, [u16; NVARS])]) -> Self {
        Self::from_terms(ctx, terms.iter().map(|&(c, e)| (Mono(e), ctx.from_i64(c))))
    }

    fn add_term(&mut self, m: Mono, c: Fel) {
        if self.ctx.is_zero(&c) {
            return;
        }
        let ctx = &self.ctx;
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = ctx.add(v, &c);
                if ctx.is_zero(v) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Fel)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Fel {
        self.terms.get(m).copied().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Mono::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn check_homogeneous(&self) -> Result<u32, PolyError> {
        let lo = self.terms.keys().next().map(Mono::degree).unwrap_or(0);
        let hi = self.degree().unwrap_or(0);
        if lo != hi {
            return Err(PolyError::MixedDegree(hi, lo));
        }
        Ok(hi)
    }

    pub fn leading_term(&self) -> Option<(Mono, Fel)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, *c))
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn same_ctx(&self, other: &MPoly) -> Result<(), PolyError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn arith(&self, other: &MPoly, op: PolyOp) -> Result<MPoly, PolyError> {
        self.same_ctx(other)?;
        Ok(match op {
            PolyOp::Add => self.add(other),
            PolyOp::Sub => self.sub(other),
            PolyOp::Mul => self.mul(other),
        })
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, *c);
        }
        r
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, self.ctx.neg(c));
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        self.scale(&self.ctx.neg(&self.ctx.one()))
    }

    pub fn scale(&self, c: &Fel) -> MPoly {
        if self.ctx.is_zero(c) {
            return Self::zero(&self.ctx);
        }
        MPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, self.ctx.mul(v, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut r = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), self.ctx.mul(ca, cb));
            }
        }
        r
    }

    fn mul_term(&self, m: &Mono, c: &Fel) -> MPoly {
        MPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), self.ctx.mul(cc, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a MPoly>>(ctx: &FieldCtx, it: I) -> MPoly {
        it.into_iter().fold(Self::one(ctx), |acc, p| acc.mul(p))
    }

    /// Formal partial derivative in `x_var`.
    pub fn diff(&self, var: usize) -> MPoly {
        let mut r = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[var] -= 1;
            r.add_term(m2, self.ctx.scale(c, u64::from(e)));
        }
        r
    }

    pub fn gradient(&self) -> [MPoly; NVARS] {
        std::array::from_fn(|i| self.diff(i))
    }

    /// Evaluates at a point whose coordinates live in `field`, which must be
    /// this polynomial's field or an extension of its prime base.
    pub fn eval(&self, field: &FieldCtx, point: &[Fel; NVARS]) -> Result<Fel, PolyError> {
        if point.iter().any(|x| !field.owns(x)) {
            return Err(PolyError::ContextMismatch);
        }
        let lifted = self.coeffs_in(field)?;
        Ok(eval_terms(field, &lifted, point))
    }

    fn coeffs_in(&self, field: &FieldCtx) -> Result<Vec<(Mono, Fel)>, PolyError> {
        self.terms
            .iter()
            .map(|(m, c)| Ok((*m, field.embed(&self.ctx, c)?)))
            .collect()
    }

    /// The same polynomial viewed over `field` (an extension of the prime base).
    pub fn extend_to(&self, field: &FieldCtx) -> Result<MPoly, PolyError> {
        Ok(MPoly {
            ctx: field.clone(),
            terms: self.coeffs_in(field)?.into_iter().collect(),
        })
    }

    /// Substitutes `x_i -> sum_j rows[i][j] x_j` (a linear change of coordinates).
    pub fn linear_substitute(&self, rows: &[[Fel; NVARS]; NVARS]) -> MPoly {
        let ctx = &self.ctx;
        let lin: Vec<MPoly> = rows
            .iter()
            .map(|row| {
                MPoly::from_terms(ctx, (0..NVARS).map(|j| (Mono::var(j), row[j])))
            })
            .collect();
        self.substitute(&lin)
    }

    /// Substitutes arbitrary polynomials for the four variables.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        let ctx = &self.ctx;
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(ctx), p.clone()]).collect();
        let mut out = MPoly::zero(ctx);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(ctx, *c);
            for (v, &e) in m.0.iter().enumerate() {
                let e = usize::from(e);
                while powers[v].len() <= e {
                    let next = powers[v].last().unwrap().mul(&images[v]);
                    powers[v].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[v][e]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Sets `x_var = value`.
    pub fn specialize(&self, var: usize, value: &Fel) -> MPoly {
        let ctx = &self.ctx;
        let mut r = MPoly::zero(ctx);
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let e = m2.0[var];
            m2.0[var] = 0;
            r.add_term(m2, ctx.mul(c, &ctx.pow(value, u64::from(e))));
        }
        r
    }

    /// Coefficients as a polynomial in `x_var`: entry `i` multiplies `x_var^i`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let deg = usize::from(self.degree_in(var));
        let mut out = vec![MPoly::zero(&self.ctx); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let e = usize::from(m2.0[var]);
            m2.0[var] = 0;
            out[e].add_term(m2, *c);
        }
        out
    }

    /// Univariate view of a polynomial involving only `x_var`.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly> {
        let mut coeffs = vec![self.ctx.zero(); usize::from(self.degree_in(var)) + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e != 0) {
                return None;
            }
            coeffs[usize::from(m.0[var])] = *c;
        }
        Some(UPoly::new(&self.ctx, coeffs))
    }

    /// Exact division; fails with `NotDivisible` on a nonzero remainder.
    /// Reduction is by graded-lex leading terms.
    pub fn divide_exact(&self, den: &MPoly) -> Result<MPoly, PolyError> {
        self.same_ctx(den)?;
        let (lm, lc) = den.leading_term().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = self.ctx.inv(&lc)?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.ctx);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(&m) {
                return Err(PolyError::NotDivisible);
            }
            let qm = m.quotient(&lm);
            let qc = self.ctx.mul(&c, &lc_inv);
            quot.add_term(qm, qc);
            rem = rem.sub(&den.mul_term(&qm, &qc));
        }
        Ok(quot)
    }

    /// Uniformly random homogeneous polynomial of degree `d` (every monomial sampled).
    pub fn random_homogeneous<R: Rng>(ctx: &FieldCtx, d: u16, rng: &mut R) -> MPoly {
        let p = ctx.p();
        let k = ctx.k();
        MPoly::from_terms(
            ctx,
            monomials_of_degree(d).into_iter().map(|m| {
                let c: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
                (m, ctx.from_coeffs(&c))
            }),
        )
    }

    /// One term per line: `coeff e0 e1 e2 e3` (the text format read by [`parse_poly`]).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            let e = m.0;
            s.push_str(&format!(
                "{} {} {} {} {}\n",
                self.ctx.display(c),
                e[0],
                e[1],
                e[2],
                e[3]
            ));
        }
        s
    }
}

pub(crate) fn eval_terms(field: &FieldCtx, terms: &[(Mono, Fel)], point: &[Fel; NVARS]) -> Fel {
    let maxe: Vec<usize> = (0..NVARS)
        .map(|v| terms.iter().map(|(m, _)| usize::from(m.0[v])).max().unwrap_or(0))
        .collect();
    let powers: Vec<Vec<Fel>> = (0..NVARS)
        .map(|v| {
            let mut pw = vec![field.one()];
            for i in 0..maxe[v] {
                pw.push(field.mul(&pw[i], &point[v]));
            }
            pw
        })
        .collect();
    let mut acc = field.zero();
    for (m, c) in terms {
        let mut t = *c;
        for v in 0..NVARS {
            let e = usize::from(m.0[v]);
            if e > 0 {
                t = field.mul(&t, &powers[v][e]);
            }
        }
        acc = field.add(&acc, &t);
    }
    acc
}

/// All exponent vectors of total degree `d`, in increasing monomial order.
pub fn monomials_of_degree(d: u16) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push(Mono([a, b, c, d - a - b - c]));
            }
        }
    }
    out.sort();
    out
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            let cs = self.ctx.display(c);
            if vars.is_empty() {
                write!(f, "{cs}")?;
            } else if self.ctx.is_one(c) {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{cs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldCtx {
        FieldCtx::make(7, 1, 0).unwrap()
    }

    fn x(ctx: &FieldCtx, i: usize) -> MPoly {
        MPoly::var(ctx, i)
    }

    #[test]
    fn difference_of_squares() {
        let k = f7();
        let a = x(&k, 0).add(&x(&k, 1));
        let b = x(&k, 0).sub(&x(&k, 1));
        let want = MPoly::from_int_terms(&k, &[(1, [2, 0, 0, 0]), (-1, [0, 2, 0, 0])]);
        assert_eq!(a.mul(&b), want);
    }

    #[test]
    fn cube_of_monomial_and_zero_identity() {
        let k = f7();
        let s = MPoly::from_int_terms(&k, &[(1, [0, 1, 1, 1])]);
        assert_eq!(s.pow(3), MPoly::from_int_terms(&k, &[(1, [0, 3, 3, 3])]));
        assert_eq!(s.add(&MPoly::zero(&k)), s);
    }

    #[test]
    fn context_mismatch_reported() {
        let a = x(&f7(), 0);
        let b = x(&FieldCtx::make(11, 1, 0).unwrap(), 0);
        assert_eq!(a.arith(&b, PolyOp::Add).unwrap_err(), PolyError::ContextMismatch);
    }

    #[test]
    fn fermat_cubic_value() {
        let k = f7();
        let r = MPoly::from_int_terms(
            &k,
            &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0]), (1, [0, 0, 0, 3])],
        );
        let pt = [k.one(), k.one(), k.one(), k.zero()];
        assert_eq!(r.eval(&k, &pt).unwrap(), k.from_u64(3));
    }

    #[test]
    fn partial_derivative() {
        let k = f7();
        let g = MPoly::from_int_terms(&k, &[(1, [1, 1, 0, 1]), (-1, [0, 0, 3, 0])]);
        assert_eq!(g.diff(2), MPoly::from_int_terms(&k, &[(-3, [0, 0, 2, 0])]));
    }

    #[test]
    fn euler_identity_on_monomial() {
        let k = f7();
        let f = MPoly::from_int_terms(&k, &[(1, [2, 1, 0, 0])]);
        let mut lhs = MPoly::zero(&k);
        for i in 0..NVARS {
            lhs = lhs.add(&x(&k, i).mul(&f.diff(i)));
        }
        assert_eq!(lhs, f.scale(&k.from_u64(3)));
    }

    #[test]
    fn exact_division_cases() {
        let k = f7();
        let r = MPoly::from_int_terms(
            &k,
            &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0]), (1, [0, 0, 0, 3])],
        );
        let x03 = MPoly::from_int_terms(&k, &[(1, [3, 0, 0, 0])]);
        assert_eq!(r.mul(&x03).divide_exact(&r).unwrap(), x03);
        let num = MPoly::from_int_terms(&k, &[(1, [2, 0, 0, 0]), (1, [0, 2, 0, 0])]);
        assert_eq!(num.divide_exact(&x(&k, 2)).unwrap_err(), PolyError::NotDivisible);
        assert_eq!(
            num.divide_exact(&MPoly::zero(&k)).unwrap_err(),
            PolyError::DivisionByZero
        );
    }

    #[test]
    fn grlex_order_puts_x0_first() {
        let a = Mono([1, 0, 0, 0]);
        let b = Mono([0, 1, 0, 0]);
        let c = Mono([0, 0, 0, 2]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(0).len(), 1);
        assert_eq!(monomials_of_degree(3).len(), 20);
        assert_eq!(monomials_of_degree(6).len(), 84);
    }

    #[test]
    fn text_round_trip() {
        let k = f7();
        let f = MPoly::from_int_terms(&k, &[(5, [1, 1, 1, 1]), (3, [4, 0, 0, 0])]);
        let back = parse_poly(&f.to_text(), &k).unwrap();
        assert_eq!(back, f);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        fn f13() -> FieldCtx {
            FieldCtx::make(13, 1, 0).unwrap()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn euler_identity(d in 0u16..7, seed in any::<u64>()) {
                let k = f13();
                let f = MPoly::random_homogeneous(&k, d, &mut ChaCha8Rng::seed_from_u64(seed));
                let mut lhs = MPoly::zero(&k);
                for (i, g) in f.gradient().iter().enumerate() {
                    lhs = lhs.add(&MPoly::var(&k, i).mul(g));
                }
                prop_assert_eq!(lhs, f.scale(&k.from_u64(u64::from(d))));
            }

            #[test]
            fn exact_division_round_trip(da in 0u16..4, db in 0u16..4, seed in any::<u64>()) {
                let k = f13();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = MPoly::random_homogeneous(&k, da, &mut rng);
                let b = MPoly::random_homogeneous(&k, db, &mut rng);
                prop_assume!(!b.is_zero());
                prop_assert_eq!(a.mul(&b).divide_exact(&b).unwrap(), a.clone());
                let off = a.mul(&b).add(&MPoly::var(&k, 0).pow(u32::from(da + db)));
                if let Ok(q) = off.divide_exact(&b) {
                    prop_assert_eq!(q.mul(&b), off);
                }
            }
        }
    }
}
