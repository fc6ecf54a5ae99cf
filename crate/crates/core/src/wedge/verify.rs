//! Machine check that every vector outside `e ^ U` generates, under the
//! permutation action, a subspace containing a word of bad weight.

use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    all_perms, compose, coord, e_wedge_u, good_weight, transposition, u_pair, SigmaTable, WedgeSubspace,
    WedgeVec, DIM, N,
};
use crate::construct::PartitionType;
use crate::cuspcode::{block_pairing, involution_split, TWord, TypeCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    OrbitReduced,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "orbit-reduced" => Ok(Mode::OrbitReduced),
            _ => Err(format!("unknown mode {s:?} (expected exhaustive or orbit-reduced)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::OrbitReduced => "orbit-reduced",
        })
    }
}

/// Rungs of the witness ladder, in the order they are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    /// `v` itself has a bad weight.
    Own,
    /// `v - (i j) v` for a transposition.
    Step1,
    /// `v' +- (13)(24) v'`, `v' +- (15)(26) v'` with `v' = v + v12 u12 + v34 u34 + v56 u56`.
    Proof,
    /// Random `a v + b sigma v + c tau v`.
    Random,
    /// Exhaustive search of the invariant span of `v`.
    Span,
}

pub const STAGES: [Stage; 5] = [Stage::Own, Stage::Step1, Stage::Proof, Stage::Random, Stage::Span];

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Own => "a_own_weight",
            Stage::Step1 => "b_step1",
            Stage::Proof => "c_proof_combination",
            Stage::Random => "d_random",
            Stage::Span => "e_invariant_span",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub mode: Mode,
    /// 0 means the available parallelism.
    pub workers: usize,
    pub seed: u64,
    pub random_draws: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: Mode::OrbitReduced,
            workers: 0,
            seed: 0,
            random_draws: 200,
        }
    }
}

#[derive(Debug, Clone)]
pub struct WedgeReport {
    pub mode: Mode,
    pub seed: u64,
    pub workers: usize,
    /// Vectors of `Lambda^2(F_3^6)` covered (directly or through their orbit).
    pub vectors: u64,
    /// Vectors run through the witness ladder (orbit representatives in reduced mode).
    pub processed: u64,
    pub members: u64,
    pub member_weights: BTreeMap<u32, u64>,
    pub bad_members: Vec<WedgeVec>,
    pub stage_counts: [u64; 5],
    pub unresolved: Vec<WedgeVec>,
    pub elapsed: Duration,
}

impl WedgeReport {
    pub fn passed(&self) -> bool {
        self.unresolved.is_empty()
            && self.bad_members.is_empty()
            && self.members == 81
            && self.vectors == 3u64.pow(DIM as u32)
    }

    /// Stable text; wall-clock time is kept out.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "wedge verification");
        let _ = writeln!(s, "mode={}", self.mode);
        let _ = writeln!(s, "seed={}", self.seed);
        let _ = writeln!(s, "vectors={}", self.vectors);
        let _ = writeln!(s, "processed={}", self.processed);
        let _ = writeln!(s, "members={}", self.members);
        let mw: Vec<String> = self.member_weights.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        let _ = writeln!(s, "member_weights={}", mw.join(" "));
        let _ = writeln!(s, "bad_members={}", self.bad_members.len());
        for (st, c) in STAGES.iter().zip(self.stage_counts) {
            let _ = writeln!(s, "stage {st}={c}");
        }
        let _ = writeln!(s, "unresolved={}", self.unresolved.len());
        for v in &self.unresolved {
            let _ = writeln!(s, "  unresolved {v}");
        }
        let _ = writeln!(s, "result={}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

struct Ladder {
    members: HashSet<WedgeVec>,
    transpositions: Vec<SigmaTable>,
    proof_perms: [SigmaTable; 2],
    group: Vec<SigmaTable>,
    u12: WedgeVec,
    u34: WedgeVec,
    u56: WedgeVec,
    seed: u64,
    draws: u32,
}

fn bad(w: WedgeVec) -> bool {
    !good_weight(w.weight())
}

impl Ladder {
    fn new(seed: u64, draws: u32) -> Self {
        let mut transpositions = Vec::new();
        for j in 1..N {
            for i in 0..j {
                transpositions.push(SigmaTable::new(transposition(i, j)));
            }
        }
        Ladder {
            members: e_wedge_u().members().collect(),
            transpositions,
            proof_perms: [
                SigmaTable::new(compose(&transposition(0, 2), &transposition(1, 3))),
                SigmaTable::new(compose(&transposition(0, 4), &transposition(1, 5))),
            ],
            group: all_perms().into_iter().map(SigmaTable::new).collect(),
            u12: u_pair(0, 1),
            u34: u_pair(2, 3),
            u56: u_pair(4, 5),
            seed,
            draws,
        }
    }

    fn invariant_span(&self, v: WedgeVec) -> WedgeSubspace {
        let mut s = WedgeSubspace::span([]);
        for g in &self.group {
            s.insert(g.apply(v));
            if s.dim() == DIM {
                break;
            }
        }
        s
    }

    /// Stage at which a bad-weight word in the invariant span of `v` is found.
    fn witness(&self, v: WedgeVec) -> Option<Stage> {
        if bad(v) {
            return Some(Stage::Own);
        }
        if self.transpositions.iter().any(|t| bad(v.sub(t.apply(v)))) {
            return Some(Stage::Step1);
        }
        let mut span: Option<WedgeSubspace> = None;
        let vp = v
            .add(self.u12.scale(v.at(coord(0, 1))))
            .add(self.u34.scale(v.at(coord(2, 3))))
            .add(self.u56.scale(v.at(coord(4, 5))));
        for pi in &self.proof_perms {
            for w in [
                v.add(pi.apply(v)),
                v.sub(pi.apply(v)),
                vp.add(pi.apply(vp)),
                vp.sub(pi.apply(vp)),
            ] {
                if bad(w) {
                    let s = span.get_or_insert_with(|| self.invariant_span(v));
                    if s.contains(w) {
                        return Some(Stage::Proof);
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ u64::from(v.index()));
        for _ in 0..self.draws {
            let s = &self.group[rng.gen_range(0..self.group.len())];
            let t = &self.group[rng.gen_range(0..self.group.len())];
            let w = v
                .scale(rng.gen_range(0..3))
                .add(s.apply(v).scale(rng.gen_range(0..3)))
                .add(t.apply(v).scale(rng.gen_range(0..3)));
            if bad(w) {
                return Some(Stage::Random);
            }
        }
        let s = span.get_or_insert_with(|| self.invariant_span(v));
        if s.members().any(bad) {
            return Some(Stage::Span);
        }
        None
    }
}

#[derive(Default)]
struct Partial {
    vectors: u64,
    processed: u64,
    members: u64,
    member_weights: BTreeMap<u32, u64>,
    bad_members: Vec<WedgeVec>,
    stage_counts: [u64; 5],
    unresolved: Vec<WedgeVec>,
}

impl Partial {
    fn visit(&mut self, ladder: &Ladder, v: WedgeVec, covered: u64) {
        self.vectors += covered;
        if ladder.members.contains(&v) {
            return;
        }
        self.processed += 1;
        match ladder.witness(v) {
            Some(st) => self.stage_counts[st as usize] += 1,
            None => self.unresolved.push(v),
        }
    }

    fn merge(mut self, o: Partial) -> Partial {
        self.vectors += o.vectors;
        self.processed += o.processed;
        self.members += o.members;
        for (w, c) in o.member_weights {
            *self.member_weights.entry(w).or_default() += c;
        }
        self.bad_members.extend(o.bad_members);
        for (a, b) in self.stage_counts.iter_mut().zip(o.stage_counts) {
            *a += b;
        }
        self.unresolved.extend(o.unresolved);
        self
    }
}

fn orbit_representatives(group: &[SigmaTable]) -> Vec<(WedgeVec, u64)> {
    let total = 3usize.pow(DIM as u32);
    let mut seen = vec![0u64; total.div_ceil(64)];
    let mut reps = Vec::new();
    for idx in 0..total {
        if seen[idx / 64] >> (idx % 64) & 1 == 1 {
            continue;
        }
        let v = WedgeVec::from_index(idx as u32);
        let mut size = 0;
        for g in group {
            let w = g.apply(v);
            for x in [w, w.neg()] {
                let j = x.index() as usize;
                if seen[j / 64] >> (j % 64) & 1 == 0 {
                    seen[j / 64] |= 1 << (j % 64);
                    size += 1;
                }
            }
        }
        reps.push((v, size));
    }
    reps
}

/// Every vector of `Lambda^2(F_3^6)` outside `e ^ U` gets a bad-weight witness in
/// the subspace spanned by its permutation images; members of `e ^ U` must
/// have weights in `{0, 9, 12, 15}`.
pub fn verify_wedge(opts: &VerifyOptions) -> WedgeReport {
    let start = Instant::now();
    let workers = if opts.workers == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        opts.workers
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let ladder = Ladder::new(opts.seed, opts.random_draws);

    let mut part = pool.install(|| match opts.mode {
        Mode::Exhaustive => (0..3u32.pow(DIM as u32))
            .into_par_iter()
            .fold(Partial::default, |mut p, i| {
                p.visit(&ladder, WedgeVec::from_index(i), 1);
                p
            })
            .reduce(Partial::default, Partial::merge),
        Mode::OrbitReduced => {
            let reps = orbit_representatives(&ladder.group);
            reps.par_iter()
                .fold(Partial::default, |mut p, &(v, size)| {
                    p.visit(&ladder, v, size);
                    p
                })
                .reduce(Partial::default, Partial::merge)
        }
    });
    for m in &ladder.members {
        part.members += 1;
        *part.member_weights.entry(m.weight()).or_default() += 1;
        if !good_weight(m.weight()) {
            part.bad_members.push(*m);
        }
    }
    part.unresolved.sort();
    part.bad_members.sort();
    WedgeReport {
        mode: opts.mode,
        seed: opts.seed,
        workers,
        vectors: part.vectors,
        processed: part.processed,
        members: part.members,
        member_weights: part.member_weights,
        bad_members: part.bad_members,
        stage_counts: part.stage_counts,
        unresolved: part.unresolved,
        elapsed: start.elapsed(),
    }
}

/// For pairs `(i, j)` with `v_ij = 0`, the first difference `v - (i j) v` that is
/// nonzero of bad weight.
pub fn step1_witness(v: WedgeVec) -> Option<WedgeVec> {
    for j in 1..N {
        for i in 0..j {
            if v.at(coord(i, j)) != 0 {
                continue;
            }
            let w = v.sub(SigmaTable::new(transposition(i, j)).apply(v));
            if !w.is_zero() && bad(w) {
                return Some(w);
            }
        }
    }
    None
}

/// Consistency of `e ^ U` with the proper code of type 1^6: doubling each
/// coordinate onto its two-cusp block.
#[derive(Debug, Clone)]
pub struct BplusReport {
    pub doubled_dim: usize,
    pub proper_dim: usize,
    pub doubled_span_equals_proper: bool,
    pub doubled_weights: BTreeMap<usize, u64>,
    pub u12_is_w1_minus_w2: bool,
    pub c_plus_dim: usize,
    pub c_minus_dim: usize,
    pub extended_dim: usize,
}

impl BplusReport {
    pub fn passed(&self) -> bool {
        self.doubled_dim == 4
            && self.proper_dim == 4
            && self.doubled_span_equals_proper
            && self.doubled_weights.keys().all(|w| [0, 18, 24, 30].contains(w))
            && self.u12_is_w1_minus_w2
            && self.c_minus_dim == 0
            && self.c_plus_dim == self.proper_dim
            && self.extended_dim == 5
    }

    pub fn to_text(&self) -> String {
        let dw: Vec<String> = self.doubled_weights.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        format!(
            "doubled_dim={} proper_dim={} same_span={} doubled_weights={} u12=w1-w2:{} c_plus={} c_minus={} extended_dim={} result={}\n",
            self.doubled_dim,
            self.proper_dim,
            self.doubled_span_equals_proper,
            dw.join(" "),
            self.u12_is_w1_minus_w2,
            self.c_plus_dim,
            self.c_minus_dim,
            self.extended_dim,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn doubled(v: WedgeVec) -> TWord {
    let entries = v.coords().iter().flat_map(|&x| [x, x]).collect();
    TWord::new(None, entries)
}

pub fn bplus_bminus_check() -> BplusReport {
    let tc = TypeCode::direct(&PartitionType::new(vec![1; N]).expect("type")).expect("sextic type");
    let proper = tc.proper();
    let ewu = e_wedge_u();
    let gens: Vec<TWord> = ewu.basis().iter().map(|b| doubled(*b)).collect();
    let dcode = crate::cuspcode::code_span(&gens).expect("equal lengths");
    let mut doubled_weights = BTreeMap::new();
    for m in ewu.members() {
        *doubled_weights.entry(doubled(m).weight()).or_insert(0) += 1;
    }
    let w12 = tc.words[0].sub(&tc.words[1]);
    let u12_is_w1_minus_w2 = w12.i0 == Some(0) && w12.proper() == doubled(u_pair(0, 1));
    let pairing = block_pairing(&tc.layout).expect("blocks of two");
    let (plus, minus) = involution_split(&proper, &pairing).expect("invariant code");
    BplusReport {
        doubled_dim: dcode.dim(),
        proper_dim: proper.dim(),
        doubled_span_equals_proper: dcode.same_span(&proper),
        doubled_weights,
        u12_is_w1_minus_w2,
        c_plus_dim: plus.dim(),
        c_minus_dim: minus.dim(),
        extended_dim: tc.extended.dim(),
    }
}
