//! Ternary codes of cusp sets: the block-constant words of each partition
//! type, spans, proper subcodes, weight enumerators, the involution split,
//! the permutation action on parts and refinement embeddings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::construct::{count_direct, count_residual, ConstructError, PartitionType, PairCounts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error("word lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("code is not extended")]
    NotExtended,
    #[error("code dimension {0} too large to enumerate")]
    TooLarge(usize),
    #[error("bad pairing: {0}")]
    BadPairing(String),
    #[error("permutation does not preserve part degrees")]
    DegreeMismatchUnderPermutation,
    #[error("{fine} is not a one-step refinement of {coarse}")]
    NotASubPartition { coarse: String, fine: String },
}

fn add3(a: u8, b: u8) -> u8 {
    (a + b) % 3
}

fn neg3(a: u8) -> u8 {
    (3 - a) % 3
}

fn mul3(a: u8, b: u8) -> u8 {
    (a * b) % 3
}

/// Pair blocks `(i, j)`, `i < j`, in block order with their sizes and offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeLayout {
    pub degrees: Vec<u32>,
    pub blocks: Vec<((usize, usize), usize)>,
    offsets: Vec<usize>,
}

impl CodeLayout {
    pub fn from_counts(degrees: Vec<u32>, counts: &PairCounts) -> Self {
        let blocks: Vec<_> = counts.pairs.iter().map(|&(p, n)| (p, n as usize)).collect();
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut acc = 0;
        for (_, n) in &blocks {
            offsets.push(acc);
            acc += n;
        }
        CodeLayout {
            degrees,
            blocks,
            offsets,
        }
    }

    pub fn direct(parts: &PartitionType) -> Result<Self, CodeError> {
        let counts = count_direct(parts.degree(), parts)?;
        Ok(Self::from_counts(parts.parts().to_vec(), &counts))
    }

    /// Residual construction: parts of degree `3 c_i`, blocks from the residual counts.
    pub fn residual(c_parts: &[u32], b: u32) -> Result<Self, CodeError> {
        let counts = count_residual(c_parts, b)?;
        Ok(Self::from_counts(c_parts.iter().map(|c| 3 * c).collect(), &counts))
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn block_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.blocks.iter().position(|b| b.0 == key)
    }

    /// `(offset, size)` of block `(i, j)`.
    pub fn block(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        self.block_index(i, j).map(|b| (self.offsets[b], self.blocks[b].1))
    }

    pub fn header(&self) -> String {
        let cols: Vec<String> = self
            .blocks
            .iter()
            .map(|((i, j), n)| format!("{}{}:{}", i + 1, j + 1, n))
            .collect();
        format!("blocks {}", cols.join(" "))
    }
}

/// A word over F_3: cusp coordinates plus the optional leading coordinate `i0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TWord {
    pub i0: Option<u8>,
    pub entries: Vec<u8>,
}

impl TWord {
    pub fn new(i0: Option<u8>, entries: Vec<u8>) -> Self {
        TWord {
            i0: i0.map(|x| x % 3),
            entries: entries.into_iter().map(|x| x % 3).collect(),
        }
    }

    pub fn zero(len: usize, extended: bool) -> Self {
        TWord {
            i0: extended.then_some(0),
            entries: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_extended(&self) -> bool {
        self.i0.is_some()
    }

    /// Number of nonzero cusp coordinates (`i0` is not counted).
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&x| x != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.i0.unwrap_or(0) == 0 && self.weight() == 0
    }

    fn coords(&self) -> Vec<u8> {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.extend(self.i0);
        v.extend_from_slice(&self.entries);
        v
    }

    fn from_coords(extended: bool, v: &[u8]) -> Self {
        if extended {
            TWord {
                i0: Some(v[0]),
                entries: v[1..].to_vec(),
            }
        } else {
            TWord {
                i0: None,
                entries: v.to_vec(),
            }
        }
    }

    pub fn add(&self, other: &TWord) -> TWord {
        TWord {
            i0: self.i0.zip(other.i0).map(|(a, b)| add3(a, b)),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| add3(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u8) -> TWord {
        TWord {
            i0: self.i0.map(|a| mul3(a, c)),
            entries: self.entries.iter().map(|&a| mul3(a, c)).collect(),
        }
    }

    pub fn neg(&self) -> TWord {
        self.scale(2)
    }

    pub fn sub(&self, other: &TWord) -> TWord {
        self.add(&other.neg())
    }

    /// Drops `i0`.
    pub fn proper(&self) -> TWord {
        TWord {
            i0: None,
            entries: self.entries.clone(),
        }
    }

    pub fn permute(&self, perm: &[usize]) -> TWord {
        let mut entries = vec![0; self.len()];
        for (src, &dst) in perm.iter().enumerate() {
            entries[dst] = self.entries[src];
        }
        TWord {
            i0: self.i0,
            entries,
        }
    }

    /// One value per block if the word is constant on every block.
    pub fn block_values(&self, layout: &CodeLayout) -> Option<Vec<u8>> {
        let mut out = Vec::with_capacity(layout.blocks.len());
        for (b, (_, n)) in layout.blocks.iter().enumerate() {
            let s = &self.entries[layout.offsets[b]..layout.offsets[b] + n];
            let v = s.first().copied().unwrap_or(0);
            if s.iter().any(|&x| x != v) {
                return None;
            }
            out.push(v);
        }
        Some(out)
    }

    pub fn from_block_values(layout: &CodeLayout, i0: Option<u8>, values: &[u8]) -> TWord {
        let mut entries = Vec::with_capacity(layout.len());
        for ((_, n), &v) in layout.blocks.iter().zip(values) {
            entries.extend(std::iter::repeat(v % 3).take(*n));
        }
        TWord::new(i0, entries)
    }

    pub fn to_text(&self) -> String {
        self.coords()
            .iter()
            .map(u8::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Row-reduces over F_3 in place, returning pivot columns; zero rows are removed.
fn rref3(rows: &mut Vec<Vec<u8>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        // 1 and 2 are their own inverses mod 3
        let inv = rows[r][c];
        for x in rows[r].iter_mut() {
            *x = mul3(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = neg3(rows[i][c]);
                for j in 0..ncols {
                    let t = mul3(f, rows[r][j]);
                    rows[i][j] = add3(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A linear code over F_3 given by generators, with a reduced basis.
#[derive(Debug, Clone)]
pub struct TCode {
    pub gens: Vec<TWord>,
    pub len: usize,
    pub extended: bool,
    basis: Vec<TWord>,
    pivots: Vec<usize>,
}

/// Span of the generators; all must share length and extended flag.
pub fn code_span(gens: &[TWord]) -> Result<TCode, CodeError> {
    let (len, extended) = gens
        .first()
        .map_or((0, false), |g| (g.len(), g.is_extended()));
    for g in gens {
        if g.len() != len {
            return Err(CodeError::LengthMismatch(len, g.len()));
        }
        if g.is_extended() != extended {
            return Err(CodeError::LengthMismatch(len + usize::from(extended), len + usize::from(g.is_extended())));
        }
    }
    Ok(TCode::from_parts(gens.to_vec(), len, extended))
}

impl TCode {
    fn from_parts(gens: Vec<TWord>, len: usize, extended: bool) -> Self {
        let mut rows: Vec<Vec<u8>> = gens.iter().map(TWord::coords).collect();
        let pivots = rref3(&mut rows);
        let basis = rows.iter().map(|r| TWord::from_coords(extended, r)).collect();
        TCode {
            gens,
            len,
            extended,
            basis,
            pivots,
        }
    }

    pub fn empty(len: usize, extended: bool) -> Self {
        Self::from_parts(Vec::new(), len, extended)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[TWord] {
        &self.basis
    }

    pub fn contains(&self, w: &TWord) -> bool {
        if w.len() != self.len || w.is_extended() != self.extended {
            return false;
        }
        let mut v = w.coords();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                let bc = b.coords();
                for (x, y) in v.iter_mut().zip(bc) {
                    *x = add3(*x, mul3(neg3(c), y));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn is_subcode_of(&self, other: &TCode) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_span(&self, other: &TCode) -> bool {
        self.dim() == other.dim() && self.is_subcode_of(other)
    }

    /// The member with coefficient digits of `idx` in base 3 on the basis.
    pub fn member(&self, mut idx: u64) -> TWord {
        let mut w = TWord::zero(self.len, self.extended);
        for b in &self.basis {
            let c = (idx % 3) as u8;
            idx /= 3;
            if c != 0 {
                w = w.add(&b.scale(c));
            }
        }
        w
    }

    pub fn size(&self) -> u64 {
        3u64.pow(self.dim() as u32)
    }

    /// Weight distribution over all members (exhaustive, dimension at most 16).
    pub fn weight_enumerator(&self) -> Result<BTreeMap<usize, u64>, CodeError> {
        if self.dim() > 16 {
            return Err(CodeError::TooLarge(self.dim()));
        }
        let hist = (0..self.size())
            .into_par_iter()
            .fold(
                || vec![0u64; self.len + 1],
                |mut h, i| {
                    h[self.member(i).weight()] += 1;
                    h
                },
            )
            .reduce(
                || vec![0u64; self.len + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        Ok(hist
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .collect())
    }

    pub fn min_weight(&self) -> Result<Option<usize>, CodeError> {
        Ok(self.weight_enumerator()?.into_keys().find(|&w| w > 0))
    }

    pub fn to_text(&self, layout: Option<&CodeLayout>) -> String {
        let mut s = String::new();
        if let Some(l) = layout {
            let _ = writeln!(s, "{}", l.header());
        }
        for g in &self.gens {
            let _ = writeln!(s, "{}", g.to_text());
        }
        s
    }
}

/// Members of an extended code with `i0 = 0`, with `i0` dropped.
pub fn proper_subcode(e: &TCode) -> Result<TCode, CodeError> {
    if !e.extended {
        return Err(CodeError::NotExtended);
    }
    // In reduced form at most one basis row has a pivot at i0; the others have i0 = 0.
    let gens: Vec<TWord> = e
        .basis
        .iter()
        .zip(&e.pivots)
        .filter(|(_, &pc)| pc != 0)
        .map(|(b, _)| b.proper())
        .collect();
    Ok(TCode::from_parts(gens, e.len, false))
}

/// `w_i = (d_i mod 3 | -1 on blocks (j,i), j < i; +1 on blocks (i,j), j > i)`.
pub fn words_for_layout(layout: &CodeLayout) -> Vec<TWord> {
    (0..layout.k())
        .map(|i| {
            let values: Vec<u8> = layout
                .blocks
                .iter()
                .map(|&((a, b), _)| {
                    if a == i {
                        1
                    } else if b == i {
                        2
                    } else {
                        0
                    }
                })
                .collect();
            TWord::from_block_values(layout, Some((layout.degrees[i] % 3) as u8), &values)
        })
        .collect()
}

pub fn words_for_type(parts: &PartitionType, d: u32) -> Result<Vec<TWord>, CodeError> {
    if parts.degree() != d {
        return Err(ConstructError::PartitionMismatch {
            expected: d,
            got: parts.degree(),
        }
        .into());
    }
    Ok(words_for_layout(&CodeLayout::direct(parts)?))
}

/// Layout, generator words and extended code of a partition type.
#[derive(Debug, Clone)]
pub struct TypeCode {
    pub parts: PartitionType,
    pub layout: CodeLayout,
    pub words: Vec<TWord>,
    pub extended: TCode,
    /// The words are known to generate the whole extended code (sextics only).
    pub complete: bool,
}

impl TypeCode {
    pub fn direct(parts: &PartitionType) -> Result<Self, CodeError> {
        let layout = CodeLayout::direct(parts)?;
        let words = words_for_layout(&layout);
        let extended = code_span(&words)?;
        Ok(TypeCode {
            parts: parts.clone(),
            layout,
            words,
            extended,
            complete: parts.degree() == 6,
        })
    }

    pub fn residual(c_parts: &[u32], b: u32) -> Result<Self, CodeError> {
        let layout = CodeLayout::residual(c_parts, b)?;
        let words = words_for_layout(&layout);
        let extended = code_span(&words)?;
        let parts = PartitionType::new(layout.degrees.clone())?;
        Ok(TypeCode {
            parts,
            layout,
            words,
            extended,
            complete: false,
        })
    }

    pub fn proper(&self) -> TCode {
        proper_subcode(&self.extended).expect("extended")
    }

    pub fn report(&self) -> Result<String, CodeError> {
        let mut s = String::new();
        let proper = self.proper();
        let _ = writeln!(s, "type={}", self.parts);
        let _ = writeln!(s, "cusps={}", self.layout.len());
        let _ = writeln!(s, "{}", self.layout.header());
        for w in &self.words {
            let _ = writeln!(s, "{}", w.to_text());
        }
        let _ = writeln!(s, "extended_dim={}", self.extended.dim());
        let _ = writeln!(s, "proper_dim={}", proper.dim());
        let en = proper.weight_enumerator()?;
        let dist: Vec<String> = en.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        let _ = writeln!(s, "weights={}", dist.join(" "));
        match en.keys().find(|&&w| w > 0) {
            Some(w) => {
                let _ = writeln!(s, "min_weight={w}");
            }
            None => {
                let _ = writeln!(s, "min_weight=none");
            }
        }
        if !self.complete {
            let _ = writeln!(s, "note=generators only, completeness unproven");
        }
        Ok(s)
    }
}

/// Invariant and anti-invariant parts of a code under an involution of the
/// cusp positions.
pub fn involution_split(c: &TCode, pairing: &[usize]) -> Result<(TCode, TCode), CodeError> {
    if pairing.len() != c.len {
        return Err(CodeError::BadPairing(format!(
            "pairing of length {} for words of length {}",
            pairing.len(),
            c.len
        )));
    }
    for (i, &j) in pairing.iter().enumerate() {
        if j >= c.len || pairing[j] != i || j == i {
            return Err(CodeError::BadPairing(format!("position {i} is not swapped with a partner")));
        }
    }
    let images: Vec<TWord> = c.basis.iter().map(|b| b.permute(pairing)).collect();
    if !images.iter().all(|w| c.contains(w)) {
        return Err(CodeError::BadPairing("code is not invariant".into()));
    }
    let plus: Vec<TWord> = c.basis.iter().zip(&images).map(|(b, i)| b.add(i)).collect();
    let minus: Vec<TWord> = c.basis.iter().zip(&images).map(|(b, i)| b.sub(i)).collect();
    let plus = TCode::from_parts(plus, c.len, c.extended);
    let minus = TCode::from_parts(minus, c.len, c.extended);
    debug_assert_eq!(plus.dim() + minus.dim(), c.dim());
    Ok((plus, minus))
}

/// The involution exchanging the two cusps of every block of size 2.
pub fn block_pairing(layout: &CodeLayout) -> Result<Vec<usize>, CodeError> {
    let mut out = vec![0; layout.len()];
    for (b, &(_, n)) in layout.blocks.iter().enumerate() {
        if n != 2 {
            return Err(CodeError::BadPairing(format!("block of size {n}")));
        }
        let o = layout.offsets[b];
        out[o] = o + 1;
        out[o + 1] = o;
    }
    Ok(out)
}

/// Image of a word under a permutation `sigma` of the parts: block `(i,j)` goes to
/// `(sigma i, sigma j)`, with a sign change when the order flips.
pub fn sigma_word(w: &TWord, layout: &CodeLayout, sigma: &[usize]) -> Result<TWord, CodeError> {
    let k = layout.k();
    let mut seen = vec![false; k];
    if sigma.len() != k || sigma.iter().any(|&s| s >= k || std::mem::replace(&mut seen[s], true)) {
        return Err(CodeError::BadPairing(format!("{sigma:?} is not a permutation of {k} parts")));
    }
    if (0..k).any(|i| layout.degrees[sigma[i]] != layout.degrees[i]) {
        return Err(CodeError::DegreeMismatchUnderPermutation);
    }
    let mut entries = vec![0; w.len()];
    for (b, &((i, j), n)) in layout.blocks.iter().enumerate() {
        let (a, c) = (sigma[i], sigma[j]);
        let (dst, _) = layout.block(a, c).expect("block exists");
        let flip = a > c;
        for t in 0..n {
            let v = w.entries[layout.offsets[b] + t];
            entries[dst + t] = if flip { neg3(v) } else { v };
        }
    }
    Ok(TWord {
        i0: w.i0,
        entries,
    })
}

pub fn sigma_action(c: &TCode, layout: &CodeLayout, sigma: &[usize]) -> Result<TCode, CodeError> {
    let gens = c
        .gens
        .iter()
        .map(|g| sigma_word(g, layout, sigma))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TCode::from_parts(gens, c.len, c.extended))
}

/// How the parts of a coarse type map into a one-step refinement: part `split`
/// of the coarse type becomes fine parts `a` and `b`, every other coarse part
/// `i` becomes fine part `phi[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub phi: Vec<usize>,
    pub split: usize,
    pub a: usize,
    pub b: usize,
}

pub fn find_refinement(coarse: &PartitionType, fine: &PartitionType) -> Result<Refinement, CodeError> {
    let err = || CodeError::NotASubPartition {
        coarse: coarse.to_string(),
        fine: fine.to_string(),
    };
    let cp = coarse.parts();
    let fp = fine.parts();
    if fp.len() != cp.len() + 1 {
        return Err(err());
    }
    for m in 0..cp.len() {
        for da in 1..cp[m] {
            let db = cp[m] - da;
            let mut used = vec![false; fp.len()];
            let mut take = |deg: u32| -> Option<usize> {
                let i = (0..fp.len()).find(|&i| !used[i] && fp[i] == deg)?;
                used[i] = true;
                Some(i)
            };
            let Some(a) = take(da) else { continue };
            let Some(b) = take(db) else { continue };
            let mut phi = vec![usize::MAX; cp.len()];
            let mut ok = true;
            for i in (0..cp.len()).filter(|&i| i != m) {
                match take(cp[i]) {
                    Some(f) => phi[i] = f,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Ok(Refinement { phi, split: m, a, b });
            }
        }
    }
    Err(err())
}

/// Pushes a block-constant coarse word to the fine layout: block `(i, m)` goes to
/// both `(phi i, a)` and `(phi i, b)`, block `(a, b)` gets 0.
pub fn embed_word(
    w: &TWord,
    coarse: &CodeLayout,
    fine: &CodeLayout,
    r: &Refinement,
) -> Option<TWord> {
    let values = w.block_values(coarse)?;
    let mut fine_values = vec![0u8; fine.blocks.len()];
    let mut put = |x: usize, y: usize, v: u8| {
        let idx = fine.block_index(x, y).expect("fine block");
        fine_values[idx] = add3(fine_values[idx], if x < y { v } else { neg3(v) });
    };
    for (&((i, j), _), &v) in coarse.blocks.iter().zip(&values) {
        let img = |t: usize| if t == r.split { None } else { Some(r.phi[t]) };
        match (img(i), img(j)) {
            (Some(x), Some(y)) => put(x, y, v),
            (None, Some(y)) => {
                put(r.a, y, v);
                put(r.b, y, v);
            }
            (Some(x), None) => {
                put(x, r.a, v);
                put(x, r.b, v);
            }
            (None, None) => unreachable!("pairs have distinct parts"),
        }
    }
    Some(TWord::from_block_values(fine, w.i0, &fine_values))
}

#[derive(Debug, Clone)]
pub struct EmbedCheck {
    pub coarse: PartitionType,
    pub fine: PartitionType,
    pub refinement: Refinement,
    pub coarse_dim: usize,
    pub fine_dim: usize,
    pub image_dim: usize,
    pub image_in_fine: bool,
}

impl EmbedCheck {
    /// Injective image inside the fine code, with strictly larger fine dimension.
    pub fn strict(&self) -> bool {
        self.image_in_fine && self.image_dim == self.coarse_dim && self.fine_dim > self.coarse_dim
    }
}

pub fn refine_embed(coarse: &PartitionType, fine: &PartitionType) -> Result<EmbedCheck, CodeError> {
    let r = find_refinement(coarse, fine)?;
    let cc = TypeCode::direct(coarse)?;
    let fc = TypeCode::direct(fine)?;
    let image: Vec<TWord> = cc
        .extended
        .basis()
        .iter()
        .map(|w| embed_word(w, &cc.layout, &fc.layout, &r).expect("block-constant"))
        .collect();
    let image = TCode::from_parts(image, fc.layout.len(), true);
    Ok(EmbedCheck {
        coarse: coarse.clone(),
        fine: fine.clone(),
        refinement: r,
        coarse_dim: cc.extended.dim(),
        fine_dim: fc.extended.dim(),
        image_dim: image.dim(),
        image_in_fine: image.is_subcode_of(&fc.extended),
    })
}

/// Compact labels such as `1113`, one digit per part.
pub fn parse_compact(label: &str) -> Result<PartitionType, CodeError> {
    let parts = label
        .chars()
        .map(|c| c.to_digit(10).ok_or_else(|| ConstructError::BadPartition(label.into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PartitionType::new(parts)?)
}

/// Inclusions of extended codes of sextic types.
pub const LATTICE_EDGES: &[(&str, &str)] = &[
    ("33", "123"),
    ("15", "123"),
    ("15", "114"),
    ("24", "123"),
    ("24", "114"),
    ("24", "222"),
    ("123", "1113"),
    ("123", "1122"),
    ("114", "1113"),
    ("114", "1122"),
    ("222", "1122"),
    ("1113", "11112"),
    ("1122", "11112"),
    ("11112", "111111"),
];

/// Extended-code dimensions of the sextic types.
pub const LATTICE_DIMS: &[(&str, usize)] = &[
    ("33", 1),
    ("15", 1),
    ("24", 1),
    ("123", 2),
    ("114", 2),
    ("222", 2),
    ("1113", 3),
    ("1122", 3),
    ("11112", 4),
    ("111111", 5),
];

#[derive(Debug, Clone)]
pub struct LatticeReport {
    pub dims: Vec<(String, usize, usize)>,
    pub edges: Vec<EmbedCheck>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.dims.iter().all(|(_, got, want)| got == want) && self.edges.iter().all(EmbedCheck::strict)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (label, got, want) in &self.dims {
            let _ = writeln!(s, "dim {label} = {got} (expected {want})");
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "edge {} -> {}: {} -> {} image={} subcode={} strict={}",
                e.coarse.label(),
                e.fine.label(),
                e.coarse_dim,
                e.fine_dim,
                e.image_dim,
                e.image_in_fine,
                e.strict()
            );
        }
        let _ = writeln!(s, "result={}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

pub fn lattice_check() -> Result<LatticeReport, CodeError> {
    let mut dims = Vec::new();
    for &(label, want) in LATTICE_DIMS {
        let t = TypeCode::direct(&parse_compact(label)?)?;
        dims.push((label.to_string(), t.extended.dim(), want));
    }
    let edges = LATTICE_EDGES
        .iter()
        .map(|&(a, b)| refine_embed(&parse_compact(a)?, &parse_compact(b)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticeReport { dims, edges })
}

/// Published word table for the sextic types: `(type, [(i0, block values)])`,
/// block values in block order `12, 13, 23, 14, ...`.
pub const PUBLISHED_WORDS: &[(&str, &[(u8, &[u8])])] = &[
    ("15", &[(1, &[1])]),
    ("24", &[(2, &[1])]),
    ("33", &[(0, &[1])]),
    ("114", &[(1, &[1, 1, 0]), (1, &[2, 0, 1])]),
    ("123", &[(1, &[1, 1, 0]), (1, &[2, 0, 1])]),
    ("222", &[(1, &[1, 1, 0]), (1, &[2, 0, 1])]),
    ("1113", &[(1, &[1, 1, 0, 1, 0, 0]), (1, &[2, 0, 1, 0, 1, 0]), (1, &[0, 2, 2, 0, 0, 1])]),
    ("1122", &[(1, &[1, 1, 0, 1, 0, 0]), (1, &[2, 0, 1, 0, 1, 0]), (2, &[0, 2, 2, 0, 0, 1])]),
    (
        "11112",
        &[
            (1, &[1, 1, 0, 1, 0, 0, 1, 0, 0, 0]),
            (1, &[2, 0, 1, 0, 1, 0, 0, 1, 0, 0]),
            (1, &[0, 2, 2, 0, 0, 1, 0, 0, 1, 0]),
            (1, &[0, 0, 0, 2, 2, 2, 0, 0, 0, 1]),
        ],
    ),
    (
        "111111",
        &[
            (1, &[1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0]),
            (1, &[2, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0]),
            (1, &[0, 2, 2, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0]),
            (1, &[0, 0, 0, 2, 2, 2, 0, 0, 0, 1, 0, 0, 0, 1, 0]),
            (1, &[0, 0, 0, 0, 0, 0, 2, 2, 2, 2, 0, 0, 0, 0, 1]),
        ],
    ),
];

/// Types whose published `i0` entries disagree with `d_i mod 3` (the block
/// values agree): `(type, word index)`.
pub const PUBLISHED_I0_DISCREPANCIES: &[(&str, usize)] = &[("123", 1), ("222", 0), ("222", 1)];

/// The 27-cusp residual sextic (`c = 1,1,1`, `b = 3`): proper code of the three
/// generator words and a member of weight 27.
#[derive(Debug, Clone)]
pub struct Cusps27 {
    pub code: TypeCode,
    pub proper: TCode,
    pub weight27: TWord,
}

pub fn cusps27() -> Result<Cusps27, CodeError> {
    let code = TypeCode::residual(&[1, 1, 1], 3)?;
    let proper = code.proper();
    let w = &code.words;
    let weight27 = w[0].sub(&w[1]).proper();
    Ok(Cusps27 {
        code,
        proper,
        weight27,
    })
}

impl Cusps27 {
    pub fn to_text(&self) -> Result<String, CodeError> {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.code.layout.header());
        for w in &self.code.words[..2] {
            let bv = w.block_values(&self.code.layout).expect("block-constant");
            let _ = writeln!(s, "word {}", bv.iter().map(u8::to_string).collect::<Vec<_>>().join(" "));
        }
        let _ = writeln!(s, "proper_dim={}", self.proper.dim());
        let en = self.proper.weight_enumerator()?;
        let dist: Vec<String> = en.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        let _ = writeln!(s, "weights={}", dist.join(" "));
        let bv = TWord::new(Some(0), self.weight27.entries.clone())
            .block_values(&self.code.layout)
            .expect("block-constant");
        let _ = writeln!(
            s,
            "weight27_word={} weight={} member={}",
            bv.iter().map(u8::to_string).collect::<Vec<_>>().join(" "),
            self.weight27.weight(),
            self.proper.contains(&self.weight27)
        );
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(label: &str) -> TypeCode {
        TypeCode::direct(&parse_compact(label).unwrap()).unwrap()
    }

    #[test]
    fn published_table_block_values() {
        for &(label, rows) in PUBLISHED_WORDS {
            let tc = t(label);
            for (idx, &(i0, vals)) in rows.iter().enumerate() {
                let w = &tc.words[idx];
                assert_eq!(w.block_values(&tc.layout).unwrap(), vals, "{label} w{}", idx + 1);
                let disc = PUBLISHED_I0_DISCREPANCIES.contains(&(label, idx));
                assert_eq!(w.i0 == Some(i0), !disc, "{label} w{} i0", idx + 1);
            }
            // the listed words are independent
            let listed: Vec<TWord> = tc.words[..rows.len()].to_vec();
            assert_eq!(code_span(&listed).unwrap().dim(), rows.len());
        }
    }

    #[test]
    fn words_for_114() {
        let w = words_for_type(&parse_compact("114").unwrap(), 6).unwrap();
        let l = CodeLayout::direct(&parse_compact("114").unwrap()).unwrap();
        assert_eq!(l.blocks.iter().map(|b| b.1).collect::<Vec<_>>(), vec![2, 8, 8]);
        assert_eq!(w[0].i0, Some(1));
        assert_eq!(w[1].block_values(&l).unwrap(), vec![2, 0, 1]);
        assert!(matches!(
            words_for_type(&parse_compact("114").unwrap(), 9),
            Err(CodeError::Construct(ConstructError::PartitionMismatch { .. }))
        ));
    }

    #[test]
    fn small_spans() {
        let w = TWord::new(Some(1), vec![1, 2, 0]);
        assert_eq!(code_span(&[w.clone(), w.scale(2)]).unwrap().dim(), 1);
        assert_eq!(code_span(&[]).unwrap().dim(), 0);
        assert!(matches!(
            code_span(&[w, TWord::new(Some(1), vec![1])]),
            Err(CodeError::LengthMismatch(..))
        ));
        assert_eq!(t("1122").extended.dim(), 3);
        assert_eq!(t("111111").extended.dim(), 5);
    }

    #[test]
    fn proper_codes() {
        let c33 = t("33").proper();
        assert_eq!(c33.dim(), 1);
        assert_eq!(c33.weight_enumerator().unwrap(), BTreeMap::from([(0, 1), (18, 2)]));
        assert!(matches!(proper_subcode(&c33), Err(CodeError::NotExtended)));
        let c = t("111111").proper();
        assert_eq!(c.dim(), 4);
        // oracle: sum a_i w_i with sum a_i = 0 spans the differences w_i - w_j
        let tc = t("111111");
        let diffs: Vec<TWord> = (1..5).map(|i| tc.words[0].sub(&tc.words[i]).proper()).collect();
        assert!(code_span(&diffs).unwrap().same_span(&c));
        let en = c.weight_enumerator().unwrap();
        assert_eq!(en.keys().find(|&&w| w > 0), Some(&18));
        assert!(en.keys().all(|w| [0, 18, 24, 30].contains(w)));
        assert_eq!(en.values().sum::<u64>(), 81);
    }

    #[test]
    fn proper_min_weight_at_least_18_for_sextics() {
        for &(label, _) in LATTICE_DIMS {
            let c = t(label).proper();
            if let Some(w) = c.min_weight().unwrap() {
                assert!(w >= 18, "{label}: {w}");
            }
        }
    }

    #[test]
    fn involution_of_type_1_6() {
        let tc = t("111111");
        let c = tc.proper();
        let pairing = block_pairing(&tc.layout).unwrap();
        let (plus, minus) = involution_split(&c, &pairing).unwrap();
        assert_eq!((plus.dim(), minus.dim()), (4, 0));
        assert!(plus.same_span(&c));
        // an anti-invariant word spans a code with trivial invariant part
        let mut e = vec![0u8; 30];
        e[0] = 1;
        e[1] = 2;
        let anti = code_span(&[TWord::new(None, e)]).unwrap();
        let (p2, m2) = involution_split(&anti, &pairing).unwrap();
        assert_eq!((p2.dim(), m2.dim()), (0, 1));
        assert!(matches!(involution_split(&c, &[0; 30]), Err(CodeError::BadPairing(_))));
    }

    #[test]
    fn sigma_transposition_preserves_span() {
        let tc = t("111111");
        let img = sigma_action(&tc.extended, &tc.layout, &[1, 0, 2, 3, 4, 5]).unwrap();
        assert!(img.same_span(&tc.extended));
        let id = sigma_action(&tc.extended, &tc.layout, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(id.gens, tc.extended.gens);
        // sigma maps w_i to w_{sigma i}
        let w = sigma_word(&tc.words[0], &tc.layout, &[1, 0, 2, 3, 4, 5]).unwrap();
        assert_eq!(w, tc.words[1]);
        let t123 = t("123");
        assert_eq!(
            sigma_action(&t123.extended, &t123.layout, &[1, 0, 2]).unwrap_err(),
            CodeError::DegreeMismatchUnderPermutation
        );
    }

    #[test]
    fn refinement_examples() {
        let e = refine_embed(&parse_compact("33").unwrap(), &parse_compact("123").unwrap()).unwrap();
        assert_eq!((e.coarse_dim, e.fine_dim), (1, 2));
        assert!(e.strict());
        let e = refine_embed(&parse_compact("1113").unwrap(), &parse_compact("11112").unwrap()).unwrap();
        assert_eq!((e.coarse_dim, e.fine_dim), (3, 4));
        assert!(e.strict());
        assert!(matches!(
            refine_embed(&parse_compact("15").unwrap(), &parse_compact("24").unwrap()),
            Err(CodeError::NotASubPartition { .. })
        ));
    }

    #[test]
    fn lattice_passes() {
        let r = lattice_check().unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.edges.len(), 14);
    }

    #[test]
    fn separation_of_equal_cusp_counts() {
        for (a, b, n) in [("33", "114", 18), ("222", "1113", 24)] {
            let (ta, tb) = (t(a), t(b));
            assert_eq!(ta.layout.len(), n);
            assert_eq!(tb.layout.len(), n);
            assert_eq!(ta.extended.dim() + 1, tb.extended.dim());
        }
    }

    #[test]
    fn twenty_seven_cusps() {
        let c = cusps27().unwrap();
        assert_eq!(c.code.layout.len(), 27);
        assert_eq!(c.weight27.weight(), 27);
        assert!(c.proper.contains(&c.weight27));
        let l = &c.code.layout;
        assert_eq!(c.code.words[0].block_values(l).unwrap(), vec![1, 1, 0]);
        assert_eq!(c.code.words[1].block_values(l).unwrap(), vec![2, 0, 1]);
        // published order of blocks is 23, 13, 12: w1 = (0,1,1), w2 = (2,0,1) up to sign
        assert_eq!(c.proper.dim(), 2);
    }

    fn arb_type() -> impl Strategy<Value = PartitionType> {
        prop::sample::select(LATTICE_DIMS.to_vec())
            .prop_map(|(l, _)| parse_compact(l).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn proper_weights_divisible_by_three(parts in arb_type(), idx in any::<u64>()) {
            let c = TypeCode::direct(&parts).unwrap().proper();
            let w = c.member(idx % c.size());
            prop_assert_eq!(w.weight() % 3, 0);
        }

        #[test]
        fn sigma_is_a_weight_preserving_action(
            s1 in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
            s2 in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
            idx in any::<u64>(),
        ) {
            let tc = TypeCode::direct(&parse_compact("111111").unwrap()).unwrap();
            let w = tc.extended.member(idx % tc.extended.size());
            let a = sigma_word(&w, &tc.layout, &s1).unwrap();
            prop_assert_eq!(a.weight(), w.weight());
            prop_assert!(tc.extended.contains(&a));
            // composition: sigma2(sigma1 w) = (sigma2 o sigma1) w
            let comp: Vec<usize> = (0..6).map(|i| s2[s1[i]]).collect();
            let b = sigma_word(&a, &tc.layout, &s2).unwrap();
            prop_assert_eq!(b, sigma_word(&w, &tc.layout, &comp).unwrap());
        }
    }
}
