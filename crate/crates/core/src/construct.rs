//! Surface families `s_1 ... s_k - s^3 = 0` (direct) and `(s_1 ... s_k - s^3) / r`
//! (residual), with their closed-form cusp counts.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ffield::{Fel, FieldCtx};
use crate::mpoly::{MPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("degree {0} is not divisible by 3")]
    DegreeNotDivisibleBy3(u32),
    #[error("parts sum to {got}, expected degree {expected}")]
    PartitionMismatch { expected: u32, got: u32 },
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("degree constraint violated: {0}")]
    DegreeConstraintViolated(String),
    #[error("lambda coefficients must be nonzero")]
    ZeroLambda,
    #[error("quotient does not match the expanded formula")]
    ExpansionMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Degrees `d_1, ..., d_k` in input order (the order fixes the block order of codes).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionType {
    parts: Vec<u32>,
}

impl PartitionType {
    pub fn new(parts: Vec<u32>) -> Result<Self, ConstructError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(ConstructError::BadPartition(format!("{parts:?}")));
        }
        Ok(PartitionType { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Compact label such as `1113`.
    pub fn label(&self) -> String {
        self.parts.iter().map(u32::to_string).collect()
    }
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for PartitionType {
    type Err = ConstructError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ConstructError::BadPartition(s.to_string()))?;
        PartitionType::new(parts)
    }
}

/// Index pairs `(i, j)`, `i < j`, in block order `12, 13, 23, 14, 24, 34, 15, ...`.
pub fn pairs(k: usize) -> Vec<(usize, usize)> {
    (1..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCounts {
    pub degree: u32,
    /// `((i, j), n_ij)` in block order, 0-based indices.
    pub pairs: Vec<((usize, usize), u64)>,
}

impl PairCounts {
    pub fn total(&self) -> u64 {
        self.pairs.iter().map(|p| p.1).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u64> {
        let key = (i.min(j), i.max(j));
        self.pairs.iter().find(|p| p.0 == key).map(|p| p.1)
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1 as usize).collect()
    }
}

/// `n_ij = d_i d_j d / 3`.
pub fn count_direct(d: u32, parts: &PartitionType) -> Result<PairCounts, ConstructError> {
    if d % 3 != 0 {
        return Err(ConstructError::DegreeNotDivisibleBy3(d));
    }
    if parts.degree() != d {
        return Err(ConstructError::PartitionMismatch {
            expected: d,
            got: parts.degree(),
        });
    }
    let p = parts.parts();
    let pairs = pairs(parts.k())
        .into_iter()
        .map(|(i, j)| ((i, j), u64::from(p[i] * p[j] * d / 3)))
        .collect();
    Ok(PairCounts { degree: d, pairs })
}

fn check_residual(c_parts: &[u32], b: u32) -> Result<(), ConstructError> {
    if c_parts.is_empty() || c_parts.contains(&0) || b == 0 {
        return Err(ConstructError::BadPartition(format!("c = {c_parts:?}, b = {b}")));
    }
    let c: u32 = c_parts.iter().sum();
    if let Some(ci) = c_parts.iter().find(|&&ci| 3 * ci < b) {
        return Err(ConstructError::DegreeConstraintViolated(format!(
            "d_i = {} < b = {b}",
            3 * ci
        )));
    }
    if c < b {
        return Err(ConstructError::DegreeConstraintViolated(format!("c = {c} < b = {b}")));
    }
    Ok(())
}

/// `d = 3c - b` and `n_ij = 3 c_i c_j (d - b)`.
pub fn count_residual(c_parts: &[u32], b: u32) -> Result<PairCounts, ConstructError> {
    check_residual(c_parts, b)?;
    let c: u32 = c_parts.iter().sum();
    let d = 3 * c - b;
    let pairs = pairs(c_parts.len())
        .into_iter()
        .map(|(i, j)| ((i, j), u64::from(3 * c_parts[i] * c_parts[j] * (d - b))))
        .collect();
    Ok(PairCounts { degree: d, pairs })
}

/// Intersection count of `S_i, S_j, S` split as `(bezout, off-R cusps, R-points)`;
/// each R-point counts with multiplicity 6.
pub fn residual_bezout_split(c_parts: &[u32], b: u32, i: usize, j: usize) -> (u64, u64, u64) {
    let c: u64 = c_parts.iter().map(|&x| u64::from(x)).sum();
    let (ci, cj) = (u64::from(c_parts[i]), u64::from(c_parts[j]));
    let bez = 9 * ci * cj * c;
    let r_points = ci * cj * u64::from(b);
    (bez, bez - 6 * r_points, r_points)
}

/// `floor(d (d - 1)^2 / 4)`.
pub fn miyaoka_bound(d: u32) -> u64 {
    let d = u64::from(d);
    d * (d - 1) * (d - 1) / 4
}

/// Published direct-construction counts for `d = 6`.
pub const DIRECT_TABLE_D6: &[(&[u32], u64)] = &[
    (&[1, 5], 10),
    (&[2, 4], 16),
    (&[3, 3], 18),
    (&[1, 1, 4], 18),
    (&[1, 2, 3], 22),
    (&[2, 2, 2], 24),
    (&[1, 1, 1, 3], 24),
    (&[1, 1, 2, 2], 26),
    (&[1, 1, 1, 1, 2], 28),
    (&[1, 1, 1, 1, 1, 1], 30),
];

/// Published direct-construction counts for `d = 9`.
pub const DIRECT_TABLE_D9: &[(&[u32], u64)] = &[
    (&[1, 8], 24),
    (&[2, 7], 42),
    (&[1, 1, 7], 45),
    (&[3, 6], 54),
    (&[4, 5], 60),
    (&[1, 2, 6], 60),
    (&[1, 1, 1, 6], 63),
    (&[1, 3, 5], 69),
    (&[1, 4, 4], 72),
    (&[2, 2, 5], 72),
    (&[1, 1, 2, 5], 75),
    (&[2, 3, 4], 78),
    (&[1, 1, 1, 1, 5], 78),
    (&[3, 3, 3], 81),
    (&[1, 1, 3, 4], 81),
    (&[1, 2, 2, 4], 84),
    (&[1, 2, 3, 3], 87),
    (&[1, 1, 1, 2, 4], 87),
    (&[2, 2, 2, 3], 90),
    (&[1, 1, 1, 3, 3], 90),
    (&[1, 1, 1, 1, 1, 4], 90),
    (&[1, 1, 1, 1, 2, 3], 96),
    (&[1, 1, 1, 1, 1, 1, 3], 99),
    (&[1, 1, 1, 1, 1, 1, 1, 2], 105),
    (&[1, 1, 1, 1, 1, 1, 1, 1, 1], 108),
];

/// Published residual rows: `(c_i, b, d, n_12, n_13, n_23)`.
pub struct ResidualRow {
    pub c_parts: &'static [u32],
    pub b: u32,
    pub d: u32,
    pub n: &'static [u64],
}

pub const RESIDUAL_TABLE: &[ResidualRow] = &[
    ResidualRow { c_parts: &[1, 1], b: 2, d: 4, n: &[6] },
    ResidualRow { c_parts: &[1, 1], b: 1, d: 5, n: &[12] },
    ResidualRow { c_parts: &[1, 2], b: 3, d: 6, n: &[18] },
    ResidualRow { c_parts: &[1, 2], b: 2, d: 7, n: &[30] },
    ResidualRow { c_parts: &[1, 2], b: 1, d: 8, n: &[42] },
    ResidualRow { c_parts: &[1, 1, 1], b: 3, d: 6, n: &[9, 9, 9] },
    ResidualRow { c_parts: &[1, 1, 1], b: 2, d: 7, n: &[15, 15, 15] },
    ResidualRow { c_parts: &[1, 1, 1], b: 1, d: 8, n: &[21, 21, 21] },
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecipeKind {
    Direct,
    Residual,
    Fermat,
}

impl fmt::Display for RecipeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RecipeKind::Direct => "direct",
            RecipeKind::Residual => "residual",
            RecipeKind::Fermat => "fermat",
        };
        write!(f, "{s}")
    }
}

/// Extra data of the residual construction: `s_i = r_i^3 + r t_i`, `s = prod r_i + r t`.
#[derive(Debug, Clone)]
pub struct ResidualData {
    pub b: u32,
    pub c_parts: Vec<u32>,
    pub r: MPoly,
    pub r_parts: Vec<MPoly>,
    pub t_parts: Vec<MPoly>,
    pub t: MPoly,
}

#[derive(Debug, Clone)]
pub struct SurfaceRecipe {
    pub kind: RecipeKind,
    pub ctx: FieldCtx,
    pub seed: u64,
    pub parts: PartitionType,
    /// `s_1, ..., s_k`
    pub components: Vec<MPoly>,
    /// `s`
    pub s: MPoly,
    pub f: MPoly,
    pub residual: Option<ResidualData>,
}

impl SurfaceRecipe {
    pub fn degree(&self) -> u32 {
        self.f.degree().unwrap_or(0)
    }

    /// Expected per-pair counts from the closed forms.
    pub fn expected_counts(&self) -> Result<PairCounts, ConstructError> {
        match &self.residual {
            Some(r) => count_residual(&r.c_parts, r.b),
            None => count_direct(self.parts.degree(), &self.parts),
        }
    }

    /// `key=value` lines describing the recipe.
    pub fn manifest(&self) -> String {
        let mut lines = vec![
            format!("kind={}", self.kind),
            format!("prime={}", self.ctx.p()),
            format!("seed={}", self.seed),
            format!("type={}", self.parts),
            format!("degree={}", self.degree()),
            format!("s_degree={}", self.s.degree().unwrap_or(0)),
        ];
        if let Some(r) = &self.residual {
            let c: Vec<String> = r.c_parts.iter().map(u32::to_string).collect();
            lines.push(format!("c={}", c.join(",")));
            lines.push(format!("b={}", r.b));
        }
        let mut files: Vec<String> = (1..=self.components.len()).map(|i| format!("s{i}.poly")).collect();
        files.push("s.poly".into());
        if self.residual.is_some() {
            files.push("r.poly".into());
        }
        files.push("f.poly".into());
        lines.push(format!("files={}", files.join(",")));
        lines.join("\n") + "\n"
    }

    /// `(file name, text)` for every polynomial named in the manifest.
    pub fn poly_files(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("s{}.poly", i + 1), p.to_text()))
            .collect();
        out.push(("s.poly".into(), self.s.to_text()));
        if let Some(r) = &self.residual {
            out.push(("r.poly".into(), r.r.to_text()));
        }
        out.push(("f.poly".into(), self.f.to_text()));
        out
    }
}

/// Parses `key=value` lines (blank lines and `#` comments skipped).
pub fn parse_manifest(text: &str) -> Vec<(String, String)> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random `s_1, ..., s_k, s` and `f = prod s_i - s^3`. Admissibility is checked separately.
pub fn build_direct(
    parts: &PartitionType,
    ctx: &FieldCtx,
    seed: u64,
) -> Result<SurfaceRecipe, ConstructError> {
    let d = parts.degree();
    if d % 3 != 0 {
        return Err(ConstructError::DegreeNotDivisibleBy3(d));
    }
    let mut rng = rng_for(seed);
    let components: Vec<MPoly> = parts
        .parts()
        .iter()
        .map(|&di| MPoly::random_homogeneous(ctx, di as u16, &mut rng))
        .collect();
    let s = MPoly::random_homogeneous(ctx, (d / 3) as u16, &mut rng);
    let f = MPoly::product(ctx, &components).sub(&s.pow(3));
    Ok(SurfaceRecipe {
        kind: RecipeKind::Direct,
        ctx: ctx.clone(),
        seed,
        parts: parts.clone(),
        components,
        s,
        f,
        residual: None,
    })
}

/// Residual construction with `deg r = b`, `deg r_i = c_i`.
pub fn build_residual(
    c_parts: &[u32],
    b: u32,
    ctx: &FieldCtx,
    seed: u64,
) -> Result<SurfaceRecipe, ConstructError> {
    check_residual(c_parts, b)?;
    let c: u32 = c_parts.iter().sum();
    let mut rng = rng_for(seed);
    let r = MPoly::random_homogeneous(ctx, b as u16, &mut rng);
    let r_parts: Vec<MPoly> = c_parts
        .iter()
        .map(|&ci| MPoly::random_homogeneous(ctx, ci as u16, &mut rng))
        .collect();
    let t_parts: Vec<MPoly> = c_parts
        .iter()
        .map(|&ci| MPoly::random_homogeneous(ctx, (3 * ci - b) as u16, &mut rng))
        .collect();
    let t = MPoly::random_homogeneous(ctx, (c - b) as u16, &mut rng);
    let data = ResidualData {
        b,
        c_parts: c_parts.to_vec(),
        r,
        r_parts,
        t_parts,
        t,
    };
    assemble_residual(ctx, seed, RecipeKind::Residual, data)
}

fn assemble_residual(
    ctx: &FieldCtx,
    seed: u64,
    kind: RecipeKind,
    data: ResidualData,
) -> Result<SurfaceRecipe, ConstructError> {
    let components: Vec<MPoly> = data
        .r_parts
        .iter()
        .zip(&data.t_parts)
        .map(|(ri, ti)| ri.pow(3).add(&data.r.mul(ti)))
        .collect();
    let s = MPoly::product(ctx, &data.r_parts).add(&data.r.mul(&data.t));
    let num = MPoly::product(ctx, &components).sub(&s.pow(3));
    let f = num.divide_exact(&data.r)?;
    let parts = PartitionType::new(data.c_parts.iter().map(|c| 3 * c).collect())?;
    Ok(SurfaceRecipe {
        kind,
        ctx: ctx.clone(),
        seed,
        parts,
        components,
        s,
        f,
        residual: Some(data),
    })
}

/// The Fermat example: `r = x0^3 + ... + x3^3`, `s_i = x_i^3 + lambda_i r`,
/// `s = x1 x2 x3`.
pub fn fermat_family(lambda: [Fel; 3], ctx: &FieldCtx) -> Result<SurfaceRecipe, ConstructError> {
    if lambda.iter().any(|l| ctx.is_zero(l)) {
        return Err(ConstructError::ZeroLambda);
    }
    let r = fermat_cubic(ctx);
    let x = |i: usize| MPoly::var(ctx, i);
    let data = ResidualData {
        b: 3,
        c_parts: vec![1, 1, 1],
        r,
        r_parts: (1..=3).map(x).collect(),
        t_parts: lambda.iter().map(|l| MPoly::constant(ctx, *l)).collect(),
        t: MPoly::zero(ctx),
    };
    let recipe = assemble_residual(ctx, 0, RecipeKind::Fermat, data)?;
    if recipe.f != fermat_expanded(lambda, ctx) {
        return Err(ConstructError::ExpansionMismatch);
    }
    Ok(recipe)
}

pub fn fermat_cubic(ctx: &FieldCtx) -> MPoly {
    MPoly::from_int_terms(
        ctx,
        &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0]), (1, [0, 0, 0, 3])],
    )
}

/// The expanded quotient
/// `l1 x2^3 x3^3 + l2 x1^3 x3^3 + l3 x1^3 x2^3 + (l1 l2 x3^3 + l1 l3 x2^3 + l2 l3 x1^3) r + l1 l2 l3 r^2`,
/// assembled term by term without any division.
pub fn fermat_expanded(lambda: [Fel; 3], ctx: &FieldCtx) -> MPoly {
    let [l1, l2, l3] = lambda;
    let cube = |i: usize| MPoly::var(ctx, i).pow(3);
    let r = fermat_cubic(ctx);
    let m = |a: &Fel, b: &Fel| ctx.mul(a, b);
    cube(2)
        .mul(&cube(3))
        .scale(&l1)
        .add(&cube(1).mul(&cube(3)).scale(&l2))
        .add(&cube(1).mul(&cube(2)).scale(&l3))
        .add(
            &cube(3)
                .scale(&m(&l1, &l2))
                .add(&cube(2).scale(&m(&l1, &l3)))
                .add(&cube(1).scale(&m(&l2, &l3)))
                .mul(&r),
        )
        .add(&r.pow(2).scale(&m(&m(&l1, &l2), &l3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> PartitionType {
        s.parse().unwrap()
    }

    #[test]
    fn direct_counts() {
        let c = count_direct(6, &t("1,2,3")).unwrap();
        let n: Vec<u64> = c.pairs.iter().map(|p| p.1).collect();
        assert_eq!(n, vec![4, 6, 12]);
        assert_eq!(c.total(), 22);
        assert_eq!(count_direct(9, &t("2,3,4")).unwrap().total(), 78);
        assert_eq!(count_direct(6, &t("6")).unwrap().total(), 0);
        assert_eq!(count_direct(6, &t("1,1,1,1,1,1")).unwrap().total(), 30);
        assert_eq!(
            count_direct(7, &t("3,4")),
            Err(ConstructError::DegreeNotDivisibleBy3(7))
        );
        assert!(matches!(
            count_direct(6, &t("1,2")),
            Err(ConstructError::PartitionMismatch { .. })
        ));
    }

    #[test]
    fn direct_tables() {
        for (d, table) in [(6, DIRECT_TABLE_D6), (9, DIRECT_TABLE_D9)] {
            for (parts, n) in table {
                let p = PartitionType::new(parts.to_vec()).unwrap();
                assert_eq!(count_direct(d, &p).unwrap().total(), *n, "type {p}");
            }
        }
        assert_eq!(DIRECT_TABLE_D6.len(), 10);
        assert_eq!(DIRECT_TABLE_D9.len(), 25);
    }

    #[test]
    fn residual_counts() {
        let c = count_residual(&[1, 1], 2).unwrap();
        assert_eq!((c.degree, c.total()), (4, 6));
        let c = count_residual(&[1, 2], 2).unwrap();
        assert_eq!((c.degree, c.total()), (7, 30));
        let c = count_residual(&[1, 1, 1], 1).unwrap();
        assert_eq!(c.degree, 8);
        assert!(c.pairs.iter().all(|p| p.1 == 21));
        assert!(matches!(
            count_residual(&[1, 1], 4),
            Err(ConstructError::DegreeConstraintViolated(_))
        ));
        assert!(matches!(
            count_residual(&[1, 1], 3),
            Err(ConstructError::DegreeConstraintViolated(_))
        ));
        for row in RESIDUAL_TABLE {
            let c = count_residual(row.c_parts, row.b).unwrap();
            assert_eq!(c.degree, row.d);
            let n: Vec<u64> = c.pairs.iter().map(|p| p.1).collect();
            assert_eq!(n, row.n);
        }
    }

    #[test]
    fn bezout_split_identity() {
        assert_eq!(residual_bezout_split(&[1, 1], 1, 0, 1), (18, 12, 1));
        assert_eq!(residual_bezout_split(&[1, 1, 1], 3, 0, 2), (27, 9, 3));
        assert_eq!(residual_bezout_split(&[1, 2], 3, 0, 1), (54, 18, 6));
        for row in RESIDUAL_TABLE {
            let counts = count_residual(row.c_parts, row.b).unwrap();
            for &((i, j), n) in &counts.pairs {
                let (bez, off, rp) = residual_bezout_split(row.c_parts, row.b, i, j);
                assert_eq!(off, n);
                assert_eq!(bez, n + 6 * rp);
            }
        }
    }

    #[test]
    fn miyaoka() {
        assert_eq!(miyaoka_bound(6), 37);
        assert_eq!(miyaoka_bound(3), 3);
        assert_eq!(miyaoka_bound(4), 9);
    }

    #[test]
    fn build_direct_degrees() {
        let k = FieldCtx::make(31, 1, 0).unwrap();
        let r = build_direct(&t("3,3"), &k, 1).unwrap();
        assert_eq!(r.degree(), 6);
        assert!(r.components.iter().all(|s| s.degree() == Some(3)));
        assert_eq!(r.s.degree(), Some(2));
        let r = build_direct(&t("1,1,1,1,1,1"), &k, 1).unwrap();
        assert_eq!(r.components.len(), 6);
        assert!(r.components.iter().all(|s| s.degree() == Some(1)));
        let r = build_direct(&t("1,5"), &k, 3).unwrap();
        assert_eq!(r.degree(), 6);
        assert_eq!(r.expected_counts().unwrap().total(), 10);
        // seeded and reproducible
        assert_eq!(build_direct(&t("1,5"), &k, 3).unwrap().f, r.f);
    }

    #[test]
    fn build_residual_identity() {
        let k = FieldCtx::make(31, 1, 0).unwrap();
        for (c, b, d) in [(vec![1, 1, 1], 3, 6), (vec![1, 1], 1, 5), (vec![1, 2], 2, 7)] {
            let rec = build_residual(&c, b, &k, 5).unwrap();
            assert_eq!(rec.degree(), d);
            let res = rec.residual.as_ref().unwrap();
            let lhs = rec.f.mul(&res.r);
            let rhs = MPoly::product(&k, &rec.components).sub(&rec.s.pow(3));
            assert_eq!(lhs, rhs);
        }
        assert!(matches!(
            build_residual(&[1, 1], 4, &k, 0),
            Err(ConstructError::DegreeConstraintViolated(_))
        ));
    }

    #[test]
    fn fermat_all_ones() {
        let k = FieldCtx::make(7, 1, 0).unwrap();
        let one = k.one();
        let rec = fermat_family([one, one, one], &k).unwrap();
        let r = fermat_cubic(&k);
        let c = |i: usize| MPoly::var(&k, i).pow(3);
        let want = c(2)
            .mul(&c(3))
            .add(&c(1).mul(&c(3)))
            .add(&c(1).mul(&c(2)))
            .add(&c(3).add(&c(2)).add(&c(1)).mul(&r))
            .add(&r.pow(2));
        assert_eq!(rec.f, want);
        assert_eq!(
            fermat_family([one, k.zero(), one], &k).unwrap_err(),
            ConstructError::ZeroLambda
        );
    }

    #[test]
    fn manifest_round_trip() {
        let k = FieldCtx::make(13, 1, 0).unwrap();
        let rec = build_residual(&[1, 1, 1], 3, &k, 2).unwrap();
        let m = parse_manifest(&rec.manifest());
        let get = |key: &str| m.iter().find(|(k, _)| k == key).map(|(_, v)| v.clone());
        assert_eq!(get("kind").as_deref(), Some("residual"));
        assert_eq!(get("degree").as_deref(), Some("6"));
        assert_eq!(get("c").as_deref(), Some("1,1,1"));
        assert_eq!(rec.poly_files().len(), 6);
        let files = rec.poly_files();
        let f_text = &files.last().unwrap().1;
        assert_eq!(crate::mpoly::parse_poly(f_text, &k).unwrap(), rec.f);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn fermat_quotient_matches_expansion(l1 in 1u64..31, l2 in 1u64..31, l3 in 1u64..31) {
            let k = FieldCtx::make(31, 1, 0).unwrap();
            let lam = [k.from_u64(l1), k.from_u64(l2), k.from_u64(l3)];
            let rec = fermat_family(lam, &k).unwrap();
            let res = rec.residual.as_ref().unwrap();
            prop_assert_eq!(rec.f.mul(&res.r), MPoly::product(&k, &rec.components).sub(&rec.s.pow(3)));
        }
    }
}
