//! `Lambda^2(F_3^6)` as 15-coordinate ternary vectors, the words `u_i`, `u_{i,j}`,
//! the subspace `e ^ U` and the permutation action with orientation signs.

mod verify;

use std::fmt;

pub use verify::{
    bplus_bminus_check, verify_wedge, step1_witness, BplusReport, Mode, WedgeReport, Stage,
    VerifyOptions,
};

pub const N: usize = 6;
pub const DIM: usize = 15;
pub const GOOD_WEIGHTS: [u32; 4] = [0, 9, 12, 15];

pub fn good_weight(w: u32) -> bool {
    GOOD_WEIGHTS.contains(&w)
}

/// Coordinate index of `e_i ^ e_j`, `i < j`, in block order `12, 13, 23, 14, ...` (0-based).
pub const fn coord(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

/// The pair `(i, j)` at a coordinate index.
pub fn pair_of(c: usize) -> (usize, usize) {
    let mut j = 1;
    while coord(0, j + 1) <= c {
        j += 1;
    }
    (c - coord(0, j), j)
}

/// A vector of `Lambda^2(F_3^6)`: `plus` marks coordinates equal to 1, `minus`
/// those equal to 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WedgeVec {
    pub plus: u16,
    pub minus: u16,
}

impl WedgeVec {
    pub const ZERO: WedgeVec = WedgeVec { plus: 0, minus: 0 };

    pub fn from_coords(c: &[u8; DIM]) -> Self {
        let mut v = WedgeVec::ZERO;
        for (k, &x) in c.iter().enumerate() {
            match x % 3 {
                1 => v.plus |= 1 << k,
                2 => v.minus |= 1 << k,
                _ => {}
            }
        }
        v
    }

    pub fn coords(&self) -> [u8; DIM] {
        std::array::from_fn(|k| self.at(k))
    }

    pub fn at(&self, k: usize) -> u8 {
        if self.plus >> k & 1 == 1 {
            1
        } else if self.minus >> k & 1 == 1 {
            2
        } else {
            0
        }
    }

    /// Coefficient of `e_i ^ e_j` for any `i != j`.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        if i < j {
            self.at(coord(i, j))
        } else {
            (3 - self.at(coord(j, i))) % 3
        }
    }

    pub fn unit(i: usize, j: usize) -> Self {
        let mut c = [0u8; DIM];
        if i < j {
            c[coord(i, j)] = 1;
        } else {
            c[coord(j, i)] = 2;
        }
        WedgeVec::from_coords(&c)
    }

    /// Base-3 digits of `idx` as coordinates.
    pub fn from_index(mut idx: u32) -> Self {
        let mut v = WedgeVec::ZERO;
        for k in 0..DIM {
            match idx % 3 {
                1 => v.plus |= 1 << k,
                2 => v.minus |= 1 << k,
                _ => {}
            }
            idx /= 3;
        }
        v
    }

    pub fn index(&self) -> u32 {
        (0..DIM).rev().fold(0, |acc, k| acc * 3 + u32::from(self.at(k)))
    }

    pub fn weight(&self) -> u32 {
        (self.plus | self.minus).count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.plus | self.minus == 0
    }

    pub fn neg(self) -> Self {
        WedgeVec {
            plus: self.minus,
            minus: self.plus,
        }
    }

    pub fn add(self, o: Self) -> Self {
        let (x1, x2, y1, y2) = (self.plus, self.minus, o.plus, o.minus);
        let x0 = !(x1 | x2);
        let y0 = !(y1 | y2);
        WedgeVec {
            plus: (x1 & y0) | (x0 & y1) | (x2 & y2),
            minus: (x2 & y0) | (x0 & y2) | (x1 & y1),
        }
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    pub fn scale(self, c: u8) -> Self {
        match c % 3 {
            0 => WedgeVec::ZERO,
            1 => self,
            _ => self.neg(),
        }
    }
}

impl fmt::Display for WedgeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..DIM)
            .filter(|&k| self.at(k) != 0)
            .map(|k| {
                let (i, j) = pair_of(k);
                format!("{}{}:{}", i + 1, j + 1, self.at(k))
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" "))
        }
    }
}

impl fmt::Debug for WedgeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// `(u ^ v)_{ij} = u_i v_j - u_j v_i`.
pub fn wedge_of(u: &[u8; N], v: &[u8; N]) -> WedgeVec {
    let mut c = [0u8; DIM];
    for j in 1..N {
        for i in 0..j {
            let t = u32::from(u[i]) * u32::from(v[j]) + 2 * u32::from(u[j]) * u32::from(v[i]);
            c[coord(i, j)] = (t % 3) as u8;
        }
    }
    WedgeVec::from_coords(&c)
}

pub type Perm = [usize; N];

pub fn compose(s: &Perm, t: &Perm) -> Perm {
    std::array::from_fn(|i| s[t[i]])
}

pub fn transposition(i: usize, j: usize) -> Perm {
    let mut p: Perm = std::array::from_fn(|k| k);
    p.swap(i, j);
    p
}

/// All 720 permutations in lexicographic order.
pub fn all_perms() -> Vec<Perm> {
    let mut out = Vec::with_capacity(720);
    let mut p: Perm = std::array::from_fn(|k| k);
    loop {
        out.push(p);
        let Some(i) = (0..N - 1).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..N).rev().find(|&j| p[j] > p[i]).expect("successor");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// The action of a permutation on coordinates, precomputed as
/// `(target coordinate, sign flip)` per source coordinate.
#[derive(Clone, Copy, Debug)]
pub struct SigmaTable {
    pub perm: Perm,
    dst: [u8; DIM],
    flip: u16,
}

impl SigmaTable {
    pub fn new(perm: Perm) -> Self {
        let mut dst = [0u8; DIM];
        let mut flip = 0u16;
        for j in 1..N {
            for i in 0..j {
                let (a, b) = (perm[i], perm[j]);
                let k = coord(i, j);
                if a < b {
                    dst[k] = coord(a, b) as u8;
                } else {
                    dst[k] = coord(b, a) as u8;
                    flip |= 1 << k;
                }
            }
        }
        SigmaTable { perm, dst, flip }
    }

    pub fn apply(&self, v: WedgeVec) -> WedgeVec {
        // flipped coordinates swap sign
        let p = (v.plus & !self.flip) | (v.minus & self.flip);
        let m = (v.minus & !self.flip) | (v.plus & self.flip);
        let mut out = WedgeVec::ZERO;
        for k in 0..DIM {
            let d = self.dst[k];
            out.plus |= (p >> k & 1) << d;
            out.minus |= (m >> k & 1) << d;
        }
        out
    }
}

/// Coordinate `(i,j)` goes to `(sigma i, sigma j)` with a sign change if `sigma i > sigma j`.
pub fn sigma_on_wedge(sigma: &Perm, v: WedgeVec) -> WedgeVec {
    SigmaTable::new(*sigma).apply(v)
}

/// `e = e_1 + ... + e_6`.
pub const E: [u8; N] = [1; N];

pub fn basis_vec(i: usize) -> [u8; N] {
    let mut u = [0u8; N];
    u[i] = 1;
    u
}

/// `u_i = sum_k e_i ^ e_k` and `u_{i,j} = u_i - u_j = (e_i - e_j) ^ e` (0-based indices).
pub fn u_words() -> (Vec<WedgeVec>, Vec<((usize, usize), WedgeVec)>) {
    let u: Vec<WedgeVec> = (0..N).map(|i| wedge_of(&basis_vec(i), &E)).collect();
    let mut uij = Vec::new();
    for j in 1..N {
        for i in 0..j {
            uij.push(((i, j), u[i].sub(u[j])));
        }
    }
    (u, uij)
}

pub fn u_pair(i: usize, j: usize) -> WedgeVec {
    let (u, _) = u_words();
    u[i].sub(u[j])
}

/// A subspace of `Lambda^2(F_3^6)` in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeSubspace {
    basis: Vec<WedgeVec>,
    pivots: Vec<usize>,
}

impl WedgeSubspace {
    pub fn span<I: IntoIterator<Item = WedgeVec>>(gens: I) -> Self {
        let mut s = WedgeSubspace {
            basis: Vec::new(),
            pivots: Vec::new(),
        };
        for g in gens {
            s.insert(g);
        }
        s
    }

    fn reduce(&self, mut v: WedgeVec) -> WedgeVec {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v.at(p);
            if c != 0 {
                v = v.sub(b.scale(c));
            }
        }
        v
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn insert(&mut self, v: WedgeVec) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        let p = (0..DIM).find(|&k| r.at(k) != 0).expect("nonzero");
        let r = r.scale(r.at(p));
        for b in self.basis.iter_mut() {
            let c = b.at(p);
            if c != 0 {
                *b = b.sub(r.scale(c));
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.basis.insert(pos, r);
        self.pivots.insert(pos, p);
        true
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[WedgeVec] {
        &self.basis
    }

    pub fn contains(&self, v: WedgeVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn member(&self, mut idx: u32) -> WedgeVec {
        let mut w = WedgeVec::ZERO;
        for b in &self.basis {
            w = w.add(b.scale((idx % 3) as u8));
            idx /= 3;
        }
        w
    }

    pub fn members(&self) -> impl Iterator<Item = WedgeVec> + '_ {
        (0..3u32.pow(self.dim() as u32)).map(|i| self.member(i))
    }
}

/// Span of `u_{1,2}, u_{1,3}, u_{1,4}, u_{1,5}`.
pub fn e_wedge_u() -> WedgeSubspace {
    WedgeSubspace::span((1..5).map(|j| u_pair(0, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn coordinates_in_block_order() {
        assert_eq!(coord(0, 1), 0);
        assert_eq!(coord(1, 2), 2);
        assert_eq!(coord(4, 5), 14);
        for k in 0..DIM {
            let (i, j) = pair_of(k);
            assert_eq!(coord(i, j), k);
        }
    }

    #[test]
    fn wedge_examples() {
        let e12 = wedge_of(&basis_vec(0), &basis_vec(1));
        assert_eq!(e12, WedgeVec::unit(0, 1));
        assert_eq!(e12.weight(), 1);
        let u = [1, 2, 0, 1, 1, 0];
        assert!(wedge_of(&u, &u).is_zero());
        let d: [u8; N] = [1, 2, 0, 0, 0, 0];
        let u12 = wedge_of(&d, &E);
        assert_eq!(u12.weight(), 9);
        assert_eq!(u12.get(0, 1), 2);
        for k in 2..N {
            assert_eq!(u12.get(0, k), 1);
            assert_eq!(u12.get(1, k), 2);
        }
        assert_eq!(u12, u_pair(0, 1));
    }

    #[test]
    fn u_words_examples() {
        let (u, uij) = u_words();
        assert_eq!(u[0].weight(), 5);
        assert!((1..N).all(|k| u[0].get(0, k) == 1));
        assert_eq!(uij.len(), 15);
        assert_eq!(u_pair(0, 1).add(u_pair(1, 2)), u_pair(0, 2));
        let ewu = e_wedge_u();
        assert_eq!(ewu.dim(), 4);
        assert!(uij.iter().all(|(_, w)| ewu.contains(*w)));
        assert!(ewu.contains(u_pair(1, 4)));
        let weights: std::collections::BTreeSet<u32> = ewu.members().map(|m| m.weight()).collect();
        assert!(weights.iter().all(|&w| good_weight(w)));
        assert_eq!(ewu.members().count(), 81);
    }

    #[test]
    fn sigma_examples() {
        let e12 = WedgeVec::unit(0, 1);
        assert_eq!(sigma_on_wedge(&transposition(0, 1), e12), e12.scale(2));
        let a = 2;
        let v = wedge_of(&[1, 1, 0, 0, 0, 0], &[0, 0, 1, 1, 0, 0]).scale(a);
        let s = compose(&transposition(0, 2), &transposition(1, 3));
        assert_eq!(sigma_on_wedge(&s, v), v.neg());
        assert_eq!(all_perms().len(), 720);
    }

    #[test]
    fn e_wedge_u_is_invariant() {
        let ewu = e_wedge_u();
        for j in 1..N {
            for i in 0..j {
                let t = transposition(i, j);
                let img = WedgeSubspace::span(ewu.basis().iter().map(|b| sigma_on_wedge(&t, *b)));
                assert_eq!(img, ewu);
            }
        }
    }

    fn arb_vec() -> impl Strategy<Value = WedgeVec> {
        (0..3u32.pow(15)).prop_map(WedgeVec::from_index)
    }

    fn arb_perm() -> impl Strategy<Value = Perm> {
        Just((0..N).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| std::array::from_fn(|i| v[i]))
    }

    fn arb_f3n() -> impl Strategy<Value = [u8; N]> {
        prop::array::uniform6(0u8..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn index_roundtrip(v in arb_vec()) {
            prop_assert_eq!(WedgeVec::from_index(v.index()), v);
            prop_assert_eq!(WedgeVec::from_coords(&v.coords()), v);
        }

        #[test]
        fn addition_matches_coordinates(a in arb_vec(), b in arb_vec(), c in 0u8..3) {
            let s = a.add(b.scale(c));
            let want: [u8; DIM] = std::array::from_fn(|k| (a.at(k) + c * b.at(k)) % 3);
            prop_assert_eq!(s.coords(), want);
        }

        #[test]
        fn wedge_is_bilinear_and_alternating(u in arb_f3n(), v in arb_f3n(), w in arb_f3n(), c in 0u8..3) {
            prop_assert_eq!(wedge_of(&u, &v), wedge_of(&v, &u).neg());
            prop_assert!(wedge_of(&u, &u).is_zero());
            let vw: [u8; N] = std::array::from_fn(|i| (v[i] + c * w[i]) % 3);
            prop_assert_eq!(wedge_of(&u, &vw), wedge_of(&u, &v).add(wedge_of(&u, &w).scale(c)));
        }

        #[test]
        fn sigma_is_a_group_action(s in arb_perm(), t in arb_perm(), v in arb_vec()) {
            let st = compose(&s, &t);
            prop_assert_eq!(sigma_on_wedge(&st, v), sigma_on_wedge(&s, sigma_on_wedge(&t, v)));
            prop_assert_eq!(sigma_on_wedge(&s, v).weight(), v.weight());
        }

        #[test]
        fn sigma_commutes_with_wedge(s in arb_perm(), u in arb_f3n(), v in arb_f3n()) {
            let pu: [u8; N] = std::array::from_fn(|i| u[s.iter().position(|&x| x == i).unwrap()]);
            let pv: [u8; N] = std::array::from_fn(|i| v[s.iter().position(|&x| x == i).unwrap()]);
            prop_assert_eq!(sigma_on_wedge(&s, wedge_of(&u, &v)), wedge_of(&pu, &pv));
        }
    }
}
