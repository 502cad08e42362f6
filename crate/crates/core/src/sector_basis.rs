//! The fixed-photon-number sector of the two-mode field.
//!
//! A Fock state `|n₁⟩_A|n₂⟩_B` is labelled `|j,m⟩` with `j = (n₁+n₂)/2` and
//! `m = (n₁−n₂)/2`. Both labels are half-integers, so they are stored doubled.
//! The two-photon generators `J₊ = a₁†² a₂²` and `J₋ = a₁² a₂†²` move `m` by
//! `±2` and never change `j`.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Half-integer pair `(j, m)`, stored as `(2j, 2m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JMIndex {
    two_j: u32,
    two_m: i32,
}

impl JMIndex {
    pub fn new(two_j: u32, two_m: i32) -> Result<Self> {
        if two_m.unsigned_abs() > two_j {
            return Err(Error::param(format!("|m| exceeds j: 2j={two_j}, 2m={two_m}")));
        }
        if (two_j as i64 - two_m as i64) % 2 != 0 {
            return Err(Error::param(format!(
                "j and m must differ by an integer: 2j={two_j}, 2m={two_m}"
            )));
        }
        Ok(JMIndex { two_j, two_m })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn two_m(&self) -> i32 {
        self.two_m
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn m(&self) -> f64 {
        self.two_m as f64 / 2.0
    }

    /// The label two steps up the ladder, if it stays inside `[−j, j]`.
    pub fn raised(&self) -> Option<JMIndex> {
        let two_m = self.two_m + 4;
        (two_m <= self.two_j as i32).then_some(JMIndex { two_j: self.two_j, two_m })
    }

    pub fn lowered(&self) -> Option<JMIndex> {
        let two_m = self.two_m - 4;
        (two_m >= -(self.two_j as i32)).then_some(JMIndex { two_j: self.two_j, two_m })
    }
}

/// Photon numbers of the two modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockPair {
    pub n1: u32,
    pub n2: u32,
}

impl FockPair {
    pub fn new(n1: u32, n2: u32) -> Self {
        FockPair { n1, n2 }
    }

    pub fn total(&self) -> u32 {
        self.n1 + self.n2
    }
}

/// Parity of `j − m`, i.e. of the mode-B occupation. Two-photon exchange
/// preserves it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u32) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `Δ_L`: 0 for even, 1 for odd.
    pub fn offset(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

pub fn jm_from_fock(pair: FockPair) -> JMIndex {
    JMIndex {
        two_j: pair.n1 + pair.n2,
        two_m: pair.n1 as i32 - pair.n2 as i32,
    }
}

pub fn fock_from_jm(idx: JMIndex) -> FockPair {
    let two_j = idx.two_j as i64;
    let two_m = idx.two_m as i64;
    FockPair {
        n1: ((two_j + two_m) / 2) as u32,
        n2: ((two_j - two_m) / 2) as u32,
    }
}

/// `|⟨j,m+2|J₊|j,m⟩|² = (j−m)(j+m+1)(j−m−1)(j+m+2)` as an exact integer.
pub fn ladder_plus_squared(idx: JMIndex) -> u128 {
    if idx.raised().is_none() {
        return 0;
    }
    let FockPair { n1, n2 } = fock_from_jm(idx);
    let (n1, n2) = (n1 as u128, n2 as u128);
    n2 * (n1 + 1) * (n2 - 1) * (n1 + 2)
}

/// `|⟨j,m−2|J₋|j,m⟩|² = (j+m)(j−m+1)(j+m−1)(j−m+2)` as an exact integer.
pub fn ladder_minus_squared(idx: JMIndex) -> u128 {
    if idx.lowered().is_none() {
        return 0;
    }
    let FockPair { n1, n2 } = fock_from_jm(idx);
    let (n1, n2) = (n1 as u128, n2 as u128);
    n1 * (n2 + 1) * (n1 - 1) * (n2 + 2)
}

/// Coefficient of `|j,m+2⟩` in `J₊|j,m⟩`; zero at the top of the ladder.
pub fn ladder_plus_element(idx: JMIndex) -> f64 {
    (ladder_plus_squared(idx) as f64).sqrt()
}

/// Coefficient of `|j,m−2⟩` in `J₋|j,m⟩`; zero at the bottom of the ladder.
pub fn ladder_minus_element(idx: JMIndex) -> f64 {
    (ladder_minus_squared(idx) as f64).sqrt()
}

/// Diagonal element `⟨n₁,n₂|[J₊,J₋]|n₁,n₂⟩`.
///
/// `J₊J₋` and `J₋J₊` are diagonal in the Fock basis with entries equal to
/// the squared ladder elements, so the defect is evaluated in exact integer
/// arithmetic and equals `2m(4j²+4j−2) − 8m³`.
pub fn higgs_commutator_defect(pair: FockPair) -> f64 {
    let idx = jm_from_fock(pair);
    let down_up = ladder_minus_squared(idx) as i128;
    let up_down = ladder_plus_squared(idx) as i128;
    (down_up - up_down) as f64
}

/// Closed form of [`higgs_commutator_defect`] in terms of `(j, m)`.
pub fn higgs_defect_closed_form(idx: JMIndex) -> f64 {
    let j = idx.j();
    let m = idx.m();
    2.0 * m * (4.0 * j * j + 4.0 * j - 2.0) - 8.0 * m * m * m
}

/// Eigenvalue `(r n₁ + s n₂)/(r+s)` of the conserved operator `R₀` of the
/// general `(r,s)` multi-photon model.
pub fn r0_eigenvalue(pair: FockPair, r: u32, s: u32) -> Result<Ratio<u64>> {
    if r == 0 || r > s {
        return Err(Error::param(format!("need 0 < r <= s, got r={r}, s={s}")));
    }
    let numer = r as u64 * pair.n1 as u64 + s as u64 * pair.n2 as u64;
    Ok(Ratio::new(numer, (r + s) as u64))
}

/// All `N+1` states of the sector with `N` photons, ordered `m = j, j−1, …, −j`.
///
/// Position `i` holds `|N−i⟩_A|i⟩_B`, so the parity of `i` is the parity of
/// the state's ladder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorBasis {
    total_photons: u32,
    states: Vec<JMIndex>,
    even: Vec<usize>,
    odd: Vec<usize>,
}

impl SectorBasis {
    pub fn new(total_photons: u32) -> Self {
        let states: Vec<JMIndex> = (0..=total_photons)
            .map(|i| jm_from_fock(FockPair::new(total_photons - i, i)))
            .collect();
        let even = (0..states.len()).step_by(2).collect();
        let odd = (1..states.len()).step_by(2).collect();
        SectorBasis { total_photons, states, even, odd }
    }

    pub fn total_photons(&self) -> u32 {
        self.total_photons
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[JMIndex] {
        &self.states
    }

    pub fn state(&self, i: usize) -> JMIndex {
        self.states[i]
    }

    pub fn fock(&self, i: usize) -> FockPair {
        fock_from_jm(self.states[i])
    }

    /// Position of a Fock pair in the sector, if it belongs to it.
    pub fn index_of(&self, pair: FockPair) -> Option<usize> {
        (pair.total() == self.total_photons).then_some(pair.n2 as usize)
    }

    /// Sector positions of one parity ladder, top rung first.
    pub fn ladder(&self, parity: Parity) -> &[usize] {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }
}
