//! Admissibility certificates: per-pair triple systems, A2 classification of
//! the solved points and a rational scan for stray singularities.

use std::fmt::Write as _;

use super::{
    classify_singularity, projective_point_count, scan_rational_singular, solve_triple,
    Classification, ProjPoint, SingularError, SolveOptions, TripleSolution,
};
use crate::construct::{residual_bezout_split, RecipeKind, SurfaceRecipe};
use crate::ffield::FieldCtx;
use crate::mpoly::MPoly;

/// One solved orbit of a pair system.
#[derive(Debug, Clone)]
pub struct CuspRecord {
    pub pair: (usize, usize),
    pub point: ProjPoint,
    /// Orbit size (field degree of the point).
    pub size: usize,
    pub multiplicity: u32,
    pub transversal: bool,
    /// Lies on the residual surface `r = 0` (not a cusp of the quotient).
    pub on_residual: bool,
    pub class: Classification,
}

impl CuspRecord {
    pub fn is_cusp(&self) -> bool {
        !self.on_residual
    }
}

#[derive(Debug, Clone)]
pub struct PairReport {
    pub pair: (usize, usize),
    /// Label of the system, e.g. `s1,s2,s` or `x1,s2,s3`.
    pub system: String,
    pub expected: u64,
    pub expected_residual: u64,
    /// Cusps found, counting each orbit with its size.
    pub found: u64,
    pub residual_points: u64,
    pub bezout: u32,
    pub unresolved: u32,
    pub attempts: u32,
    pub error: Option<String>,
    pub notes: Vec<String>,
}

impl PairReport {
    pub fn ok(&self) -> bool {
        self.error.is_none()
            && self.found == self.expected
            && self.residual_points == self.expected_residual
            && self.unresolved == 0
    }
}

#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub prime: u64,
    pub points_scanned: u64,
    pub singular: usize,
    pub off_cusp: Vec<ProjPoint>,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct AdmissibilityCertificate {
    pub kind: RecipeKind,
    pub prime: u64,
    pub seed: u64,
    pub type_label: String,
    pub ext_budget: usize,
    /// Sampling attempt that produced the recipe (1-based; set by the caller).
    pub attempt: u32,
    pub pairs: Vec<PairReport>,
    pub points: Vec<CuspRecord>,
    pub scan: ScanSummary,
    pub failures: Vec<String>,
}

impl AdmissibilityCertificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn cusps(&self) -> impl Iterator<Item = &CuspRecord> {
        self.points.iter().filter(|c| c.is_cusp())
    }

    /// Number of cusps over the algebraic closure that were resolved.
    pub fn cusp_count(&self) -> u64 {
        self.cusps().map(|c| c.size as u64).sum()
    }

    pub fn a2_count(&self) -> u64 {
        self.cusps()
            .filter(|c| c.class == Classification::A2)
            .map(|c| c.size as u64)
            .sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "certificate admissibility");
        let _ = writeln!(s, "kind={}", self.kind);
        let _ = writeln!(s, "prime={}", self.prime);
        let _ = writeln!(s, "seed={}", self.seed);
        let _ = writeln!(s, "type={}", self.type_label);
        let _ = writeln!(s, "ext_budget={}", self.ext_budget);
        let _ = writeln!(s, "attempt={}", self.attempt);
        for p in &self.pairs {
            let _ = write!(
                s,
                "pair {}{} system={} expected={} found={} residual_points={}/{} bezout={} unresolved={} attempts={}",
                p.pair.0 + 1,
                p.pair.1 + 1,
                p.system,
                p.expected,
                p.found,
                p.residual_points,
                p.expected_residual,
                p.bezout,
                p.unresolved,
                p.attempts
            );
            match &p.error {
                Some(e) => {
                    let _ = writeln!(s, " error={e}");
                }
                None => {
                    let _ = writeln!(s, " status={}", if p.ok() { "ok" } else { "mismatch" });
                }
            }
            for n in &p.notes {
                let _ = writeln!(s, "  note {n}");
            }
        }
        for c in &self.points {
            let _ = writeln!(
                s,
                "point pair={}{} coords={} degree={} mult={} transversal={} residual={} class={}{}",
                c.pair.0 + 1,
                c.pair.1 + 1,
                c.point,
                c.size,
                c.multiplicity,
                yn(c.transversal),
                yn(c.on_residual),
                c.class,
                field_suffix(&c.point.field)
            );
        }
        let _ = writeln!(
            s,
            "scan field=F_{} points={} singular={} off_cusp={}",
            self.scan.prime,
            self.scan.points_scanned,
            self.scan.singular,
            self.scan.off_cusp.len()
        );
        for q in &self.scan.off_cusp {
            let _ = writeln!(s, "  off_cusp {q}");
        }
        if let Some(e) = &self.scan.error {
            let _ = writeln!(s, "  scan_error {e}");
        }
        let _ = writeln!(s, "scan_bounds=rational points of P3 over F_{} only", self.scan.prime);
        let _ = writeln!(s, "cusps={}", self.cusp_count());
        let _ = writeln!(s, "a2={}", self.a2_count());
        for f in &self.failures {
            let _ = writeln!(s, "failure {f}");
        }
        let _ = writeln!(s, "result={}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// ` field=F_p[t]/(m)` for extension fields, empty for the prime field.
fn field_suffix(k: &FieldCtx) -> String {
    if k.is_prime_field() {
        return String::new();
    }
    let terms: Vec<String> = k
        .modulus()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| match (e, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".into(),
            (1, c) => format!("{c}t"),
            (e, 1) => format!("t^{e}"),
            (e, c) => format!("{c}t^{e}"),
        })
        .collect();
    format!(" field=F_{}[t]/({})", k.p(), terms.join("+"))
}

/// A triple system whose solutions off `r = 0` are expected cusps of `f`.
struct TripleSystem {
    pair: (usize, usize),
    label: String,
    polys: [MPoly; 3],
    expected: u64,
    expected_residual: u64,
}

fn pair_systems(recipe: &SurfaceRecipe) -> Result<Vec<TripleSystem>, String> {
    let counts = recipe.expected_counts().map_err(|e| e.to_string())?;
    let comps = &recipe.components;
    let mut out = Vec::new();
    match recipe.kind {
        RecipeKind::Fermat => {
            // s = x1 x2 x3; the cusps of pair (j, k) lie on the remaining plane x_i = 0.
            for &((j, k), _) in &counts.pairs {
                let i = 3 - j - k;
                out.push(TripleSystem {
                    pair: (j, k),
                    label: format!("x{},s{},s{}", i + 1, j + 1, k + 1),
                    polys: [MPoly::var(&recipe.ctx, i + 1), comps[j].clone(), comps[k].clone()],
                    expected: 9,
                    expected_residual: 0,
                });
            }
        }
        _ => {
            for &((i, j), n) in &counts.pairs {
                let expected_residual = match &recipe.residual {
                    Some(r) => residual_bezout_split(&r.c_parts, r.b, i, j).2,
                    None => 0,
                };
                out.push(TripleSystem {
                    pair: (i, j),
                    label: format!("s{},s{},s", i + 1, j + 1),
                    polys: [comps[i].clone(), comps[j].clone(), recipe.s.clone()],
                    expected: n,
                    expected_residual,
                });
            }
        }
    }
    Ok(out)
}

fn on_residual(recipe: &SurfaceRecipe, pt: &ProjPoint) -> Result<bool, SingularError> {
    match &recipe.residual {
        Some(r) if recipe.kind == RecipeKind::Residual => Ok(pt.field.is_zero(&pt.eval(&r.r)?)),
        _ => Ok(false),
    }
}

fn solve_system(
    recipe: &SurfaceRecipe,
    sys: &TripleSystem,
    opts: &SolveOptions,
    points: &mut Vec<CuspRecord>,
) -> PairReport {
    let mut report = PairReport {
        pair: sys.pair,
        system: sys.label.clone(),
        expected: sys.expected,
        expected_residual: sys.expected_residual,
        found: 0,
        residual_points: 0,
        bezout: 0,
        unresolved: 0,
        attempts: 0,
        error: None,
        notes: Vec::new(),
    };
    let [a, b, c] = &sys.polys;
    let sol = match solve_triple(a, b, c, opts) {
        Ok(s) => s,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.bezout = sol.bezout;
    report.unresolved = sol.unresolved;
    report.attempts = sol.attempts;
    report.notes = sol.notes.clone();
    for o in &sol.orbits {
        let res = match on_residual(recipe, &o.point) {
            Ok(r) => r,
            Err(e) => {
                report.error = Some(e.to_string());
                return report;
            }
        };
        let class = if res {
            Classification::Unclassified
        } else {
            classify_singularity(&recipe.f, &o.point).unwrap_or(Classification::Unclassified)
        };
        if res {
            report.residual_points += o.size as u64;
        } else {
            report.found += o.size as u64;
        }
        points.push(CuspRecord {
            pair: sys.pair,
            point: o.point.clone(),
            size: o.size,
            multiplicity: o.multiplicity,
            transversal: o.transversal,
            on_residual: res,
            class,
        });
    }
    report
}

/// Solves every pair system of the recipe, classifies the solutions on `f`
/// and scans `P^3(F_p)` for singular points outside the solved cusp set.
pub fn verify_admissible(recipe: &SurfaceRecipe, opts: &SolveOptions) -> AdmissibilityCertificate {
    let p = recipe.ctx.p();
    let mut cert = AdmissibilityCertificate {
        kind: recipe.kind.clone(),
        prime: p,
        seed: recipe.seed,
        type_label: recipe.parts.to_string(),
        ext_budget: opts.ext_budget,
        attempt: 1,
        pairs: Vec::new(),
        points: Vec::new(),
        scan: ScanSummary {
            prime: p,
            points_scanned: projective_point_count(p),
            singular: 0,
            off_cusp: Vec::new(),
            error: None,
        },
        failures: Vec::new(),
    };
    let systems = match pair_systems(recipe) {
        Ok(s) => s,
        Err(e) => {
            cert.failures.push(format!("recipe: {e}"));
            return cert;
        }
    };
    for sys in &systems {
        let rep = solve_system(recipe, sys, opts, &mut cert.points);
        cert.pairs.push(rep);
    }

    for rep in &cert.pairs {
        let name = format!("pair {}{}", rep.pair.0 + 1, rep.pair.1 + 1);
        if let Some(e) = &rep.error {
            cert.failures.push(format!("{name}: {e}"));
            continue;
        }
        if rep.unresolved > 0 {
            cert.failures
                .push(format!("{name}: {} solutions beyond the extension budget", rep.unresolved));
        }
        if rep.found != rep.expected {
            cert.failures
                .push(format!("{name}: found {} cusps, expected {}", rep.found, rep.expected));
        }
        if rep.residual_points != rep.expected_residual {
            cert.failures.push(format!(
                "{name}: found {} residual points, expected {}",
                rep.residual_points, rep.expected_residual
            ));
        }
    }
    for c in &cert.points {
        let name = format!("point {} of pair {}{}", c.point, c.pair.0 + 1, c.pair.1 + 1);
        if c.on_residual {
            if c.multiplicity != 6 {
                cert.failures
                    .push(format!("{name}: residual multiplicity {}, expected 6", c.multiplicity));
            }
            continue;
        }
        if !c.transversal {
            cert.failures.push(format!("{name}: not transversal"));
        }
        if c.class != Classification::A2 {
            cert.failures.push(format!("{name}: classified {}", c.class));
        }
    }

    match scan_rational_singular(&recipe.f) {
        Ok(found) => {
            cert.scan.singular = found.len();
            let rational_cusps: Vec<_> = cert
                .cusps()
                .filter(|c| c.size == 1)
                .filter_map(|c| c.point.rational_coords())
                .collect();
            cert.scan.off_cusp = found
                .into_iter()
                .filter(|q| !rational_cusps.contains(&q.rational_coords().expect("rational")))
                .collect();
            if !cert.scan.off_cusp.is_empty() {
                cert.failures.push(format!(
                    "scan: {} rational singular points off the cusp set",
                    cert.scan.off_cusp.len()
                ));
            }
        }
        Err(e) => {
            cert.scan.error = Some(e.to_string());
            cert.failures.push(format!("scan: {e}"));
        }
    }
    cert
}

/// Fermat-family certificate: the three coordinate-plane systems must carry
/// 9 transversal A2 points each and the rational scan must find nothing else.
pub fn verify_fermat(recipe: &SurfaceRecipe, opts: &SolveOptions) -> AdmissibilityCertificate {
    debug_assert_eq!(recipe.kind, RecipeKind::Fermat);
    verify_admissible(recipe, opts)
}

/// Multiplicity accounting of one pair of a residual recipe.
#[derive(Debug, Clone)]
pub struct BezoutReport {
    pub pair: (usize, usize),
    pub bezout: u64,
    /// Transversal solutions off `r = 0`.
    pub off_residual: u64,
    /// Solutions on `r = 0`, counted over the closure.
    pub residual_points: u64,
    pub residual_multiplicities: Vec<u32>,
    /// Multiplicities in the squarefree decomposition of the elimination image.
    pub squarefree_multiplicities: Vec<usize>,
    pub expected_off: u64,
    pub expected_residual: u64,
    pub unresolved: u32,
    pub solution: TripleSolution,
}

impl BezoutReport {
    /// `bezout = n_ij + 6 * (number of R-points)` with every term as predicted.
    pub fn consistent(&self) -> bool {
        self.unresolved == 0
            && self.off_residual == self.expected_off
            && self.residual_points == self.expected_residual
            && self.residual_multiplicities.iter().all(|&m| m == 6)
            && self.bezout == self.off_residual + 6 * self.residual_points
    }

    pub fn to_text(&self) -> String {
        format!(
            "pair {}{}: bezout={} = {} + 6*{} (expected {} + 6*{}) residual_mults={:?} squarefree_mults={:?} unresolved={} {}",
            self.pair.0 + 1,
            self.pair.1 + 1,
            self.bezout,
            self.off_residual,
            self.residual_points,
            self.expected_off,
            self.expected_residual,
            self.residual_multiplicities,
            self.squarefree_multiplicities,
            self.unresolved,
            if self.consistent() { "ok" } else { "MISMATCH" }
        )
    }
}

pub fn bezout_accounting(
    recipe: &SurfaceRecipe,
    pair: (usize, usize),
    opts: &SolveOptions,
) -> Result<BezoutReport, SingularError> {
    let data = recipe
        .residual
        .as_ref()
        .filter(|_| recipe.kind == RecipeKind::Residual)
        .ok_or(SingularError::NotResidual)?;
    let (i, j) = pair;
    let (bez, off, rpts) = residual_bezout_split(&data.c_parts, data.b, i, j);
    let sol = solve_triple(&recipe.components[i], &recipe.components[j], &recipe.s, opts)?;
    let mut report = BezoutReport {
        pair,
        bezout: u64::from(sol.bezout),
        off_residual: 0,
        residual_points: 0,
        residual_multiplicities: Vec::new(),
        squarefree_multiplicities: sol.squarefree_multiplicities(),
        expected_off: off,
        expected_residual: rpts,
        unresolved: sol.unresolved,
        solution: sol.clone(),
    };
    debug_assert_eq!(report.bezout, bez);
    for o in &sol.orbits {
        if o.point.field.is_zero(&o.point.eval(&data.r)?) {
            report.residual_points += o.size as u64;
            report.residual_multiplicities.push(o.multiplicity);
        } else if o.transversal {
            report.off_residual += o.size as u64;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_direct, build_residual, PartitionType};

    fn f31() -> FieldCtx {
        FieldCtx::make(31, 1, 0).unwrap()
    }

    #[test]
    fn quintic_residual_accounting() {
        let rec = build_residual(&[1, 1], 1, &f31(), 3).unwrap();
        let rep = bezout_accounting(&rec, (0, 1), &SolveOptions::default()).unwrap();
        assert_eq!(rep.bezout, 18);
        assert_eq!(rep.off_residual, 12);
        assert_eq!(rep.residual_points, 1);
        assert_eq!(rep.residual_multiplicities, vec![6]);
        assert!(rep.squarefree_multiplicities.contains(&6));
        assert!(rep.consistent(), "{}", rep.to_text());
    }

    #[test]
    fn type_33_certifies_18_cusps() {
        let parts = PartitionType::new(vec![3, 3]).unwrap();
        let mut passed = false;
        for seed in 0..4 {
            let rec = build_direct(&parts, &f31(), seed).unwrap();
            let cert = verify_admissible(&rec, &SolveOptions { seed, ..Default::default() });
            if cert.passed() {
                assert_eq!(cert.cusp_count(), 18);
                assert_eq!(cert.a2_count(), 18);
                passed = true;
                break;
            }
        }
        assert!(passed);
    }

    #[test]
    fn equal_components_fail() {
        let parts = PartitionType::new(vec![3, 3]).unwrap();
        let mut rec = build_direct(&parts, &f31(), 1).unwrap();
        rec.components[1] = rec.components[0].clone();
        rec.f = MPoly::product(&rec.ctx, &rec.components).sub(&rec.s.pow(3));
        let cert = verify_admissible(&rec, &SolveOptions::default());
        assert!(!cert.passed());
        assert!(cert.pairs[0].error.as_deref().unwrap().contains("zero-dimensional"));
        assert!(cert.to_text().contains("result=FAIL"));
    }
}
