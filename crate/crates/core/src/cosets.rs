//! Finite-index subgroups of `PSL₂(ℤ)`: membership, coset tables, the
//! Millington permutations of `S` and `g = ST`, and the genus and cusp data
//! they determine.
//!
//! Cosets are left cosets `xH`; a generator `γ` acts by `xH ↦ γxH`. With this
//! convention the labeling `{I, T, g², Tg², g, Tg}` reproduces the classical
//! cycle tables for `Γ′` and `Γ(2)`.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Float;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::q8lattice::Q8Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("inconsistent coset table: {0}")]
    InconsistentTable(String),
    #[error("labeling is not a transversal: {0}")]
    NotATransversal(String),
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),
}

/// Element of `PSL₂(ℤ)`; the first nonzero entry is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PSLMat {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl PSLMat {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, CosetError> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(CosetError::NotUnimodular(det));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    fn canonical(a: i64, b: i64, c: i64, d: i64) -> Self {
        let first = [a, b, c, d].into_iter().find(|&x| x != 0).unwrap_or(1);
        if first < 0 {
            Self { a: -a, b: -b, c: -c, d: -d }
        } else {
            Self { a, b, c, d }
        }
    }

    pub const fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    pub const fn s() -> Self {
        Self { a: 0, b: 1, c: -1, d: 0 }
    }

    pub const fn t() -> Self {
        Self { a: 1, b: 1, c: 0, d: 1 }
    }

    /// `g = ST`.
    pub fn g() -> Self {
        Self::s() * Self::t()
    }

    /// `a = TS`.
    pub fn a_elem() -> Self {
        Self::t() * Self::s()
    }

    /// `A = [S, T⁻¹] = [[1,1],[1,2]]`.
    pub const fn gen_a() -> Self {
        Self { a: 1, b: 1, c: 1, d: 2 }
    }

    /// `B = [S, T] = [[1,−1],[−1,2]]`.
    pub const fn gen_b() -> Self {
        Self { a: 1, b: -1, c: -1, d: 2 }
    }

    pub fn inv(self) -> Self {
        Self::canonical(self.d, -self.b, -self.c, self.a)
    }

    pub fn pow(self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self };
        (0..k.unsigned_abs()).fold(Self::identity(), |acc, _| acc * base)
    }

    pub fn trace_abs(self) -> i64 {
        (self.a + self.d).abs()
    }

    fn mod_p(self, p: i64) -> [[u8; 2]; 2] {
        let r = |x: i64| x.rem_euclid(p) as u8;
        [[r(self.a), r(self.b)], [r(self.c), r(self.d)]]
    }

    fn neg_mod_p(self, p: i64) -> [[u8; 2]; 2] {
        Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }.mod_p(p)
    }

    pub fn entries(self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }
}

impl Mul for PSLMat {
    type Output = PSLMat;
    fn mul(self, o: PSLMat) -> PSLMat {
        PSLMat::canonical(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl fmt::Display for PSLMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubgroupId {
    GammaPrime,
    Gamma2,
    GammaC,
    GammaNsPlus3,
}

impl SubgroupId {
    pub const ALL: [SubgroupId; 4] = [SubgroupId::GammaPrime, SubgroupId::Gamma2, SubgroupId::GammaC, SubgroupId::GammaNsPlus3];

    pub fn name(self) -> &'static str {
        match self {
            SubgroupId::GammaPrime => "gamma-prime",
            SubgroupId::Gamma2 => "gamma2",
            SubgroupId::GammaC => "gamma-c",
            SubgroupId::GammaNsPlus3 => "gamma-ns-plus3",
        }
    }
}

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubgroupId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SubgroupId::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown group {s:?} (expected gamma-prime, gamma2, gamma-c or gamma-ns-plus3)"))
    }
}

fn in_c3_mod2(m: PSLMat) -> bool {
    let r = m.mod_p(2);
    [PSLMat::identity(), PSLMat::g(), PSLMat::g() * PSLMat::g()].iter().any(|x| x.mod_p(2) == r)
}

fn in_q8_mod3(m: PSLMat) -> bool {
    Q8Elem::from_matrix(&m.mod_p(3)).is_some() || Q8Elem::from_matrix(&m.neg_mod_p(3)).is_some()
}

pub fn is_member(id: SubgroupId, m: PSLMat) -> bool {
    match id {
        SubgroupId::Gamma2 => m.mod_p(2) == PSLMat::identity().mod_p(2),
        SubgroupId::GammaC => in_c3_mod2(m),
        SubgroupId::GammaNsPlus3 => in_q8_mod3(m),
        SubgroupId::GammaPrime => in_c3_mod2(m) && in_q8_mod3(m),
    }
}

/// Whether `xH = yH`.
pub fn same_coset(id: SubgroupId, x: PSLMat, y: PSLMat) -> bool {
    is_member(id, x.inv() * y)
}

pub type Perm = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub group: SubgroupId,
    pub reps: Vec<PSLMat>,
    pub perm_s: Perm,
    pub perm_g: Perm,
    pub perm_t: Perm,
}

fn locate(id: SubgroupId, reps: &[PSLMat], x: PSLMat) -> Option<usize> {
    reps.iter().position(|&r| same_coset(id, r, x))
}

fn action(id: SubgroupId, reps: &[PSLMat], gamma: PSLMat) -> Option<Perm> {
    reps.iter().map(|&r| locate(id, reps, gamma * r)).collect()
}

/// Breadth-first closure of `{H}` under left multiplication by `S` and `T`.
pub fn coset_enumerate(id: SubgroupId) -> CosetTable {
    let mut reps = vec![PSLMat::identity()];
    let mut queue = VecDeque::from([PSLMat::identity()]);
    while let Some(x) = queue.pop_front() {
        for gen in [PSLMat::s(), PSLMat::t(), PSLMat::t().inv()] {
            let y = gen * x;
            if locate(id, &reps, y).is_none() {
                reps.push(y);
                queue.push_back(y);
            }
        }
        assert!(reps.len() <= 1024, "subgroup index too large");
    }
    table_for(id, reps).expect("enumerated cosets form a transversal")
}

fn table_for(id: SubgroupId, reps: Vec<PSLMat>) -> Result<CosetTable, CosetError> {
    let act = |g| action(id, &reps, g).ok_or_else(|| CosetError::NotATransversal("image coset missing".into()));
    let perm_s = act(PSLMat::s())?;
    let perm_g = act(PSLMat::g())?;
    let perm_t = act(PSLMat::t())?;
    Ok(CosetTable { group: id, reps, perm_s, perm_g, perm_t })
}

pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    // (p ∘ q)(i) = p(q(i))
    q.iter().map(|&i| p[i]).collect()
}

pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut c = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            c.push(j);
            j = p[j];
        }
        out.push(c);
    }
    out
}

/// Cycle notation with singletons omitted, e.g. `(03)(14)(25)`.
pub fn cycle_string(p: &[usize]) -> String {
    let s: String = cycles(p)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<String>()))
        .collect();
    if s.is_empty() {
        "()".into()
    } else {
        s
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub index: usize,
    pub genus: i64,
    pub e2: usize,
    pub e3: usize,
    pub cusp_widths: Vec<usize>,
}

/// Index, elliptic points, cusp widths and the Riemann–Hurwitz genus
/// `1 + n/12 − e₂/4 − e₃/3 − c/2`.
pub fn curve_data(t: &CosetTable) -> Result<CurveData, CosetError> {
    let n = t.reps.len();
    for (name, p) in [("S", &t.perm_s), ("g", &t.perm_g), ("T", &t.perm_t)] {
        if p.len() != n || !is_permutation(p) {
            return Err(CosetError::InconsistentTable(format!("perm_{name} is not a permutation of {n} cosets")));
        }
    }
    if compose(&t.perm_s, &t.perm_t) != t.perm_g {
        return Err(CosetError::InconsistentTable("perm_g differs from perm_S ∘ perm_T".into()));
    }
    let fixed = |p: &[usize]| p.iter().enumerate().filter(|&(i, &j)| i == j).count();
    let e2 = fixed(&t.perm_s);
    let e3 = fixed(&t.perm_g);
    let mut cusp_widths: Vec<usize> = cycles(&t.perm_t).iter().map(Vec::len).collect();
    cusp_widths.sort_unstable();
    // 12 g = 12 + n − 3 e2 − 4 e3 − 6 c
    let twelve_g = 12 + n as i64 - 3 * e2 as i64 - 4 * e3 as i64 - 6 * cusp_widths.len() as i64;
    if twelve_g % 12 != 0 || twelve_g < 0 {
        return Err(CosetError::InconsistentTable(format!("Riemann-Hurwitz gives genus {twelve_g}/12")));
    }
    Ok(CurveData { index: n, genus: twelve_g / 12, e2, e3, cusp_widths })
}

/// The labeling `{I, T, g², Tg², g, Tg} ↔ {0, …, 5}`.
pub fn standard_labeling() -> Vec<PSLMat> {
    let (t, g) = (PSLMat::t(), PSLMat::g());
    vec![PSLMat::identity(), t, g * g, t * g * g, g, t * g]
}

/// `(μ, σ)`: the actions of `S` and `g` on the cosets labeled by `labeling`.
pub fn millington_perms(id: SubgroupId, labeling: &[PSLMat]) -> Result<(Perm, Perm), CosetError> {
    let index = coset_enumerate(id).reps.len();
    if labeling.len() != index {
        return Err(CosetError::NotATransversal(format!("{} labels for index {index}", labeling.len())));
    }
    for (i, &x) in labeling.iter().enumerate() {
        if labeling[..i].iter().any(|&y| same_coset(id, x, y)) {
            return Err(CosetError::NotATransversal(format!("label {i} repeats an earlier coset")));
        }
    }
    let t = table_for(id, labeling.to_vec())?;
    Ok((t.perm_s, t.perm_g))
}

/// A permutation `π` with `π p_i π⁻¹ = q_i` for every pair, if one exists.
pub fn simultaneous_conjugator(ps: &[&[usize]], qs: &[&[usize]]) -> Option<Perm> {
    let n = ps.first()?.len();
    'start: for image0 in 0..n {
        let mut pi: Vec<Option<usize>> = vec![None; n];
        pi[0] = Some(image0);
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            let pi_i = pi[i].expect("assigned");
            for (p, q) in ps.iter().zip(qs) {
                // π(p(i)) = q(π(i))
                let (src, dst) = (p[i], q[pi_i]);
                match pi[src] {
                    Some(v) if v != dst => continue 'start,
                    Some(_) => {}
                    None => {
                        pi[src] = Some(dst);
                        stack.push(src);
                    }
                }
            }
        }
        let Some(pi): Option<Perm> = pi.into_iter().collect() else { continue };
        if is_permutation(&pi) {
            return Some(pi);
        }
    }
    None
}

/// `χ(T)^k = diag((−1)^k, ρ^k)`.
pub fn chi_rep<T: Float + num_traits::FloatConst>(k: i64) -> [[Complex<T>; 2]; 2] {
    let k = k.rem_euclid(6);
    let zero = Complex::new(T::zero(), T::zero());
    let sign = if k % 2 == 0 { T::one() } else { -T::one() };
    let three = T::one() + T::one() + T::one();
    let rho_k = Complex::from_polar(T::one(), T::TAU() * T::from(k).unwrap() / three);
    [[Complex::new(sign, T::zero()), zero], [zero, rho_k]]
}
