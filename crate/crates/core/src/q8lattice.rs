//! The quaternion group `Q₈ ⊂ SL₂(𝔽₃)`, its image of the abelianized
//! commutator subgroup, the resulting 8-class decomposition of `ℤ² ≅ L₀`,
//! and shell counts of the E₈ lattice.
//!
//! Lattice points are kept in integer coordinates `(m, n) ↔ mω₁ + nω₂`;
//! [`SublatticeRealization::on_lattice`] maps them into the plane.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::Lattice;

type M3 = [[u8; 2]; 2];

/// Representatives of `q₁..q₈ = I, β, β², β³, βα, α³, αβ, α` mod 3.
const Q8_MATRICES: [M3; 8] = [
    [[1, 0], [0, 1]],
    [[1, 1], [1, 2]],
    [[2, 0], [0, 2]],
    [[2, 2], [2, 1]],
    [[1, 2], [2, 2]],
    [[0, 1], [2, 0]],
    [[2, 1], [1, 1]],
    [[0, 2], [1, 0]],
];

/// `(s_k, t_k)`: the smallest nonnegative exponents with `β^s (βα)^t = q_k`.
pub const CLASS_LABELS: [(u8, u8); 8] = [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (2, 1), (3, 1)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Q8Error {
    #[error("class index {0} outside 1..=8")]
    BadClassIndex(u8),
    #[error("shell {requested} exceeds the enumeration budget {budget}")]
    BudgetExceeded { requested: i64, budget: i64 },
}

fn mat_mul3(a: &M3, b: &M3) -> M3 {
    let mut c = [[0u8; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = ((a[i][0] as u32 * b[0][j] as u32 + a[i][1] as u32 * b[1][j] as u32) % 3) as u8;
        }
    }
    c
}

/// Element `q_k` of `Q₈`, `k ∈ 1..=8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Q8Elem(u8);

impl Q8Elem {
    pub const ALL: [Q8Elem; 8] = [Q8Elem(1), Q8Elem(2), Q8Elem(3), Q8Elem(4), Q8Elem(5), Q8Elem(6), Q8Elem(7), Q8Elem(8)];
    pub const IDENTITY: Q8Elem = Q8Elem(1);
    pub const MINUS_ONE: Q8Elem = Q8Elem(3);
    pub const BETA: Q8Elem = Q8Elem(2);
    pub const BETA_ALPHA: Q8Elem = Q8Elem(5);
    pub const ALPHA: Q8Elem = Q8Elem(8);

    pub fn new(k: u8) -> Result<Self, Q8Error> {
        if (1..=8).contains(&k) {
            Ok(Q8Elem(k))
        } else {
            Err(Q8Error::BadClassIndex(k))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn matrix(self) -> [[u8; 2]; 2] {
        Q8_MATRICES[self.0 as usize - 1]
    }

    pub fn from_matrix(m: &[[u8; 2]; 2]) -> Option<Self> {
        Q8_MATRICES.iter().position(|x| x == m).map(|i| Q8Elem(i as u8 + 1))
    }

    pub fn pow(self, k: u32) -> Self {
        (0..k).fold(Q8Elem::IDENTITY, |acc, _| q8_mul(acc, self))
    }

    pub fn inverse(self) -> Self {
        self.pow(3)
    }

    /// `σ q = (−I)·q`, i.e. `σ = (13)(24)(57)(68)`.
    pub fn sigma(self) -> Self {
        q8_mul(Q8Elem::MINUS_ONE, self)
    }
}

impl fmt::Display for Q8Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

pub fn q8_mul(a: Q8Elem, b: Q8Elem) -> Q8Elem {
    Q8Elem::from_matrix(&mat_mul3(&a.matrix(), &b.matrix())).expect("Q8 is closed under multiplication")
}

/// `β^m (βα)^n`, the image of `A^m B^n`.
pub fn r3_of_pair(m: i64, n: i64) -> Q8Elem {
    let a = Q8Elem::BETA.pow(m.rem_euclid(4) as u32);
    let b = Q8Elem::BETA_ALPHA.pow(n.rem_euclid(4) as u32);
    q8_mul(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecompClass {
    pub k: u8,
    /// `(s_k mod 4, t_k mod 2)`.
    pub label: (u8, u8),
}

impl DecompClass {
    pub fn new(k: u8) -> Result<Self, Q8Error> {
        Q8Elem::new(k)?;
        Ok(Self { k, label: CLASS_LABELS[k as usize - 1] })
    }

    pub fn q(self) -> Q8Elem {
        Q8Elem(self.k)
    }

    pub fn contains(self, m: i64, n: i64) -> bool {
        class_of_point(m, n) == self
    }
}

/// The class `k` with `(m, n) ≡ a_k` or `a_k + (2, 2)` mod 4.
pub fn class_of_point(m: i64, n: i64) -> DecompClass {
    let (mut m4, mut n4) = (m.rem_euclid(4), n.rem_euclid(4));
    if n4 >= 2 {
        m4 = (m4 + 2) % 4;
        n4 -= 2;
    }
    let k = (4 * n4 + m4 + 1) as u8;
    DecompClass { k, label: CLASS_LABELS[k as usize - 1] }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Style {
    I,
    II,
    III,
}

impl Style {
    pub const ALL: [Style; 3] = [Style::I, Style::II, Style::III];
}

impl std::str::FromStr for Style {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "I" | "i" | "1" => Ok(Style::I),
            "II" | "ii" | "2" => Ok(Style::II),
            "III" | "iii" | "3" => Ok(Style::III),
            _ => Err(format!("unknown style {s:?} (expected I, II or III)")),
        }
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Style::I => "I",
            Style::II => "II",
            Style::III => "III",
        })
    }
}

pub type IVec = [i64; 2];

fn add(a: IVec, b: IVec) -> IVec {
    [a[0] + b[0], a[1] + b[1]]
}

fn scale(c: i64, a: IVec) -> IVec {
    [c * a[0], c * a[1]]
}

/// `ã_k + Λ ∪ ã_k + h + Λ`, in `(ω₁, ω₂)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublatticeRealization {
    pub style: Style,
    pub k: u8,
    pub translate: IVec,
    pub basis: [IVec; 2],
    pub halfpoint: IVec,
}

/// `g = [[0,1],[-1,-1]]` acting on a basis pair.
pub fn g_on_basis(b: [IVec; 2]) -> [IVec; 2] {
    [b[1], add(scale(-1, b[0]), scale(-1, b[1]))]
}

pub fn realization(style: Style, k: u8) -> Result<SublatticeRealization, Q8Error> {
    let class = DecompClass::new(k)?;
    let translate = [class.label.0 as i64, class.label.1 as i64];
    let base: [IVec; 2] = [[4, 0], [0, 4]];
    let (basis, halfpoint) = match style {
        Style::I => (base, [2, 2]),
        Style::II => {
            let b = g_on_basis(base);
            (b, [b[1][0] / 2, b[1][1] / 2])
        }
        Style::III => {
            let b = g_on_basis(g_on_basis(base));
            (b, [b[0][0] / 2, b[0][1] / 2])
        }
    };
    Ok(SublatticeRealization { style, k, translate, basis, halfpoint })
}

impl SublatticeRealization {
    fn det(&self) -> i64 {
        self.basis[0][0] * self.basis[1][1] - self.basis[0][1] * self.basis[1][0]
    }

    /// Whether `p` lies in the basis lattice.
    pub fn in_basis_lattice(&self, p: IVec) -> bool {
        let d = self.det();
        let [[a, b], [c, e]] = self.basis;
        // p = x·basis0 + y·basis1
        let x = p[0] * e - p[1] * c;
        let y = a * p[1] - b * p[0];
        x % d == 0 && y % d == 0
    }

    /// Points of the realization inside `[-r, r]²`, by enumerating basis
    /// combinations.
    pub fn points_in_box(&self, r: i64) -> BTreeSet<IVec> {
        let span = r / 2 + 2;
        let mut out = BTreeSet::new();
        for origin in [self.translate, add(self.translate, self.halfpoint)] {
            for x in -span..=span {
                for y in -span..=span {
                    let p = add(origin, add(scale(x, self.basis[0]), scale(y, self.basis[1])));
                    if p[0].abs() <= r && p[1].abs() <= r {
                        out.insert(p);
                    }
                }
            }
        }
        out
    }

    /// The realization data mapped into the plane by `lattice`.
    pub fn on_lattice<T: crate::numeric::Real>(&self, lattice: &Lattice<T>) -> ComplexRealization<T> {
        let map = |p: IVec| lattice.point(p[0], p[1]);
        ComplexRealization {
            translate: map(self.translate),
            basis: (map(self.basis[0]), map(self.basis[1])),
            halfpoint: map(self.halfpoint),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRealization<T> {
    pub translate: Complex<T>,
    pub basis: (Complex<T>, Complex<T>),
    pub halfpoint: Complex<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub box_half_width: i64,
    /// Points of `[-B, B]²` not in exactly one class.
    pub partition_failures: Vec<IVec>,
    /// Points of the half-open box `[-B, B)²` per class.
    pub class_counts: [u64; 8],
    /// Residues `(m, n) mod 4` where `r3_of_pair` disagrees with the class pairing.
    pub pairing_failures: Vec<IVec>,
    /// Minimal nonnegative `(s, t)` found per class.
    pub minimal_labels: [(u8, u8); 8],
    /// `(style, k)` pairs whose point set differs from the class.
    pub style_failures: Vec<(Style, u8)>,
}

impl DecompositionReport {
    pub fn table_reproduced(&self) -> bool {
        self.minimal_labels == CLASS_LABELS
    }

    pub fn equal_density(&self) -> bool {
        self.class_counts.iter().all(|&c| c == self.class_counts[0])
    }

    pub fn passed(&self) -> bool {
        self.partition_failures.is_empty()
            && self.pairing_failures.is_empty()
            && self.style_failures.is_empty()
            && self.table_reproduced()
            && self.equal_density()
    }
}

pub const MIN_BOX: i64 = 8;

/// Checks the partition, the `σ`-pairing, the label table, and the three
/// realization styles on `[-B, B]²`.
pub fn verify_decomposition(box_half_width: i64) -> DecompositionReport {
    let b = box_half_width.max(MIN_BOX);
    let mut partition_failures = Vec::new();
    let mut class_counts = [0u64; 8];
    for m in -b..=b {
        for n in -b..=b {
            let hits = (1..=8u8).filter(|&k| in_class_pattern(k, m, n)).count();
            if hits != 1 {
                partition_failures.push([m, n]);
            }
            if m < b && n < b {
                class_counts[class_of_point(m, n).k as usize - 1] += 1;
            }
        }
    }

    // q_k on a_k + {0, (2,2)}, σ q_k on a_k + {(2,0), (0,2)}
    let mut pairing_failures = Vec::new();
    for m in 0..4 {
        for n in 0..4 {
            let q = r3_of_pair(m, n);
            let ok = (1..=8u8).any(|k| {
                let (s, t) = CLASS_LABELS[k as usize - 1];
                let (dm, dn) = ((m - s as i64).rem_euclid(4), (n - t as i64).rem_euclid(4));
                match (dm, dn) {
                    (0, 0) | (2, 2) => q == Q8Elem(k) && class_of_point(m, n).k == k,
                    (2, 0) | (0, 2) => q == Q8Elem(k).sigma(),
                    _ => false,
                }
            });
            let direct = r3_of_pair(m, n) == Q8Elem(class_of_point(m, n).k);
            if !ok || !direct {
                pairing_failures.push([m, n]);
            }
        }
    }

    let mut minimal_labels = [(u8::MAX, u8::MAX); 8];
    for t in 0..2u8 {
        for s in 0..4u8 {
            let k = r3_of_pair(s as i64, t as i64).index() as usize - 1;
            if minimal_labels[k] == (u8::MAX, u8::MAX) {
                minimal_labels[k] = (s, t);
            }
        }
    }

    let style_failures: Vec<(Style, u8)> = (1..=8u8)
        .into_par_iter()
        .flat_map_iter(|k| {
            let class: BTreeSet<IVec> =
                (-b..=b).flat_map(|m| (-b..=b).map(move |n| [m, n])).filter(|p| class_of_point(p[0], p[1]).k == k).collect();
            Style::ALL
                .into_iter()
                .filter(move |&s| realization(s, k).expect("valid k").points_in_box(b) != class)
                .map(move |s| (s, k))
                .collect::<Vec<_>>()
        })
        .collect();

    DecompositionReport { box_half_width: b, partition_failures, class_counts, pairing_failures, minimal_labels, style_failures }
}

fn in_class_pattern(k: u8, m: i64, n: i64) -> bool {
    let (s, t) = CLASS_LABELS[k as usize - 1];
    let d = ((m - s as i64).rem_euclid(4), (n - t as i64).rem_euclid(4));
    d == (0, 0) || d == (2, 2)
}

/// Enumeration budget for [`e8_count`].
pub const E8_BUDGET: i64 = 64;

/// Number of E₈ vectors of norm `2m`, `m = 0..=m_max`.
///
/// Counts `x ∈ ℤ⁸` and `x ∈ (ℤ+½)⁸` with `Σxᵢ` even, one coordinate at a
/// time with per-coordinate bound `√(2 m_max)`.
pub fn e8_count(m_max: i64) -> Result<Vec<u64>, Q8Error> {
    if !(0..=E8_BUDGET).contains(&m_max) {
        return Err(Q8Error::BudgetExceeded { requested: m_max, budget: E8_BUDGET });
    }
    // doubled coordinates y = 2x: y even (integer coset) or odd (half coset),
    // norm |y|² = 8m, and Σy ≡ 0 mod 4
    let cap = 8 * m_max as usize;
    let count_coset = |parity: i64| -> Vec<u64> {
        let bound = (cap as f64).sqrt().floor() as i64;
        let coords: Vec<(usize, usize)> = (-bound..=bound)
            .filter(|y| y.rem_euclid(2) == parity && (y * y) as usize <= cap)
            .map(|y| ((y * y) as usize, y.rem_euclid(4) as usize))
            .collect();
        // table[norm][sum mod 4]
        let mut table = vec![[0u64; 4]; cap + 1];
        table[0][0] = 1;
        for _ in 0..8 {
            let mut next = vec![[0u64; 4]; cap + 1];
            for (norm, row) in table.iter().enumerate() {
                for (r, &c) in row.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for &(sq, ym) in &coords {
                        if norm + sq <= cap {
                            next[norm + sq][(r + ym) % 4] += c;
                        }
                    }
                }
            }
            table = next;
        }
        (0..=m_max as usize).map(|m| table[8 * m][0]).collect()
    };
    let (int, half) = rayon::join(|| count_coset(0), || count_coset(1));
    Ok(int.iter().zip(&half).map(|(a, b)| a + b).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::coefficients::sigma;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn q(k: u8) -> Q8Elem {
        Q8Elem::new(k).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(q8_mul(q(1), q(5)), q(5));
        assert_eq!(q8_mul(q(2), q(2)), q(3));
        assert_eq!(q8_mul(q(8), q(2)), q(7));
    }

    #[test]
    fn group_axioms() {
        for a in Q8Elem::ALL {
            for b in Q8Elem::ALL {
                for c in Q8Elem::ALL {
                    assert_eq!(q8_mul(q8_mul(a, b), c), q8_mul(a, q8_mul(b, c)));
                }
            }
            assert_eq!(q8_mul(a, a.inverse()), Q8Elem::IDENTITY);
        }
        let (al, be) = (Q8Elem::ALPHA, Q8Elem::BETA);
        assert_eq!(al.pow(4), Q8Elem::IDENTITY);
        assert_eq!(al.pow(2), be.pow(2));
        assert_eq!(q8_mul(al, be), q8_mul(be, al.inverse()));
        assert_eq!(q8_mul(be, al), q(5));
        assert_eq!(al.pow(3), q(6));
        // -I is central
        assert!(Q8Elem::ALL.iter().all(|&x| q8_mul(x, Q8Elem::MINUS_ONE) == q8_mul(Q8Elem::MINUS_ONE, x)));
    }

    #[test]
    fn sigma_is_the_paired_permutation() {
        let images: Vec<u8> = Q8Elem::ALL.iter().map(|x| x.sigma().index()).collect();
        assert_eq!(images, vec![3, 4, 1, 2, 7, 8, 5, 6]);
    }

    #[test]
    fn images_of_generator_words() {
        assert_eq!(r3_of_pair(0, 0), q(1));
        assert_eq!(r3_of_pair(1, 0), q(2));
        assert_eq!(r3_of_pair(4, 0), q(1));
        assert_eq!(r3_of_pair(0, 1), q(5));
        assert_eq!(r3_of_pair(1, 1), q(6));
        assert_eq!(r3_of_pair(2, 1), q(7));
        assert_eq!(r3_of_pair(3, 1), q(8));
    }

    #[test]
    fn half_shift_pairs_with_sigma() {
        // (2,2) lies on the a_1 pattern; (2,0) and (0,2) carry σq_1
        assert_eq!(r3_of_pair(2, 2), q(1));
        assert_eq!(r3_of_pair(2, 0), q(1).sigma());
        assert_eq!(r3_of_pair(0, 2), q(1).sigma());
    }

    #[test]
    fn class_examples() {
        assert_eq!(class_of_point(0, 0).k, 1);
        assert_eq!(class_of_point(2, 2).k, 1);
        assert_eq!(class_of_point(5, 2).k, 4);
        assert_eq!(class_of_point(5, 2).label, (3, 0));
    }

    #[test]
    fn class_matches_brute_force_image() {
        for m in -12..12 {
            for n in -12..12 {
                assert_eq!(class_of_point(m, n).q(), r3_of_pair(m, n), "({m},{n})");
            }
        }
    }

    #[test]
    fn decomposition_box_40() {
        let r = verify_decomposition(40);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.class_counts, [800; 8]);
        assert_eq!(r.minimal_labels, CLASS_LABELS);
    }

    #[test]
    fn realization_shapes() {
        let r = realization(Style::I, 1).unwrap();
        assert_eq!(r.translate, [0, 0]);
        assert_eq!(r.halfpoint, [2, 2]);
        let ii = realization(Style::II, 3).unwrap();
        assert_eq!(ii.basis, [[0, 4], [-4, -4]]);
        assert_eq!(ii.halfpoint, [-2, -2]);
        assert_eq!(ii.basis, g_on_basis(realization(Style::I, 3).unwrap().basis));
        let iii = realization(Style::III, 3).unwrap();
        assert_eq!(iii.basis, [[-4, -4], [4, 0]]);
        assert_eq!(iii.halfpoint, [-2, -2]);
        assert_eq!(realization(Style::I, 0), Err(Q8Error::BadClassIndex(0)));
        assert_eq!(realization(Style::I, 9), Err(Q8Error::BadClassIndex(9)));
    }

    #[test]
    fn halfpoints_are_genuine_half_periods() {
        for s in Style::ALL {
            let r = realization(s, 1).unwrap();
            assert!(!r.in_basis_lattice(r.halfpoint));
            assert!(r.in_basis_lattice(scale(2, r.halfpoint)));
        }
    }

    #[test]
    fn styles_agree_on_class_three() {
        let sets: Vec<_> = Style::ALL.iter().map(|&s| realization(s, 3).unwrap().points_in_box(20)).collect();
        assert_eq!(sets[0], sets[1]);
        assert_eq!(sets[1], sets[2]);
    }

    #[test]
    fn stripped_union_is_the_index_eight_lattice() {
        // 4ℤ² ∪ (2,2)+4ℤ² = ℤ(4,0) + ℤ(2,2)
        let r = realization(Style::I, 1).unwrap();
        let b = 16;
        let from_realization = r.points_in_box(b);
        let mut direct = BTreeSet::new();
        for x in -b..=b {
            for y in -b..=b {
                let p = [4 * x + 2 * y, 2 * y];
                if p[0].abs() <= b && p[1].abs() <= b {
                    direct.insert(p);
                }
            }
        }
        assert_eq!(from_realization, direct);
    }

    #[test]
    fn e8_counts_match_divisor_sums() {
        let r = e8_count(20).unwrap();
        assert_eq!(r[0], 1);
        assert_eq!(r[1], 240);
        assert_eq!(r[2], 2160);
        for m in 1..=20u64 {
            assert_eq!(r[m as usize], (sigma(3, m) * 240u32).to_u64().unwrap());
        }
    }

    #[test]
    fn e8_count_against_naive_enumeration() {
        // independent brute force over the box of half-integers/integers
        let m_max = 2i64;
        let mut counts = vec![0u64; m_max as usize + 1];
        let range: Vec<i64> = (-4..=4).collect();
        let mut y = [0i64; 8];
        fn rec(i: usize, y: &mut [i64; 8], range: &[i64], counts: &mut [u64], m_max: i64) {
            if i == 8 {
                let par = y[0].rem_euclid(2);
                if y.iter().any(|v| v.rem_euclid(2) != par) {
                    return;
                }
                let norm: i64 = y.iter().map(|v| v * v).sum();
                let sum: i64 = y.iter().sum();
                if sum.rem_euclid(4) == 0 && norm % 8 == 0 && norm / 8 <= m_max {
                    counts[(norm / 8) as usize] += 1;
                }
                return;
            }
            for &v in range {
                y[i] = v;
                let partial: i64 = y[..=i].iter().map(|v| v * v).sum();
                if partial <= 8 * m_max {
                    rec(i + 1, y, range, counts, m_max);
                }
            }
        }
        rec(0, &mut y, &range, &mut counts, m_max);
        assert_eq!(counts, e8_count(m_max).unwrap());
    }

    #[test]
    fn budget() {
        assert!(e8_count(64).is_ok());
        assert_eq!(e8_count(65), Err(Q8Error::BudgetExceeded { requested: 65, budget: 64 }));
    }

    proptest! {
        #[test]
        fn classes_tile_the_plane(m in -1000i64..1000, n in -1000i64..1000) {
            let k = class_of_point(m, n).k;
            prop_assert_eq!((1..=8u8).filter(|&j| in_class_pattern(j, m, n)).count(), 1);
            prop_assert_eq!(class_of_point(m + 4, n).k, k);
            prop_assert_eq!(class_of_point(m + 2, n + 2).k, k);
            prop_assert_eq!(r3_of_pair(m, n).index(), k);
        }

        #[test]
        fn realizations_contain_exactly_their_class(k in 1u8..=8, m in -30i64..30, n in -30i64..30) {
            for s in Style::ALL {
                let r = realization(s, k).unwrap();
                let d = [m - r.translate[0], n - r.translate[1]];
                let inside = r.in_basis_lattice(d) || r.in_basis_lattice([d[0] - r.halfpoint[0], d[1] - r.halfpoint[1]]);
                prop_assert_eq!(inside, class_of_point(m, n).k == k);
            }
        }
    }
}
