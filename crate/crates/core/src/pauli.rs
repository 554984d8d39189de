//! Symbolic Pauli-string algebra, the four-element decoupling group and its
//! averaging map.
//!
//! Phases live in the cyclic group {+1, +i, -1, -i} and are tracked with
//! integer arithmetic. A string's letter `Y` is the Hermitian `sigma_y`; the
//! pulse written `Y = ZX = i sigma_y` carries its factor of `i` in the phase.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{FromPrimitive, Num};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// Largest register that can be turned into a dense matrix.
pub const MAX_QUBITS: usize = 8;

/// Power of `i`: the phase is `i^k` for `k` in `0..4`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    PlusOne = 0,
    PlusI = 1,
    MinusOne = 2,
    MinusI = 3,
}

impl Phase {
    pub fn from_power(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn power(self) -> i64 {
        self as i64
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase::from_power(self.power() + other.power())
    }

    pub fn conj(self) -> Phase {
        Phase::from_power(-self.power())
    }

    /// `Some(+1 | -1)` for real phases.
    pub fn real_sign(self) -> Option<i32> {
        match self {
            Phase::PlusOne => Some(1),
            Phase::MinusOne => Some(-1),
            _ => None,
        }
    }

    pub fn to_complex<T: Real>(self) -> Complex<T> {
        let (o, z) = (T::one(), T::zero());
        match self {
            Phase::PlusOne => Complex::new(o, z),
            Phase::PlusI => Complex::new(z, o),
            Phase::MinusOne => Complex::new(-o, z),
            Phase::MinusI => Complex::new(z, -o),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::PlusOne => "+",
            Phase::PlusI => "+i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    /// `self * other = i^k * letter`.
    pub fn mul(self, other: Letter) -> (Phase, Letter) {
        use Letter::*;
        match (self, other) {
            (I, b) => (Phase::PlusOne, b),
            (a, I) => (Phase::PlusOne, a),
            (a, b) if a == b => (Phase::PlusOne, I),
            (X, Y) => (Phase::PlusI, Z),
            (Y, Z) => (Phase::PlusI, X),
            (Z, X) => (Phase::PlusI, Y),
            (Y, X) => (Phase::MinusI, Z),
            (Z, Y) => (Phase::MinusI, X),
            (X, Z) => (Phase::MinusI, Y),
            _ => unreachable!(),
        }
    }

    pub fn anticommutes(self, other: Letter) -> bool {
        self != Letter::I && other != Letter::I && self != other
    }

    fn to_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// Phase times a tensor product of single-qubit Pauli letters, qubit 1 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    phase: Phase,
    letters: Vec<Letter>,
}

impl PauliString {
    pub fn new(phase: Phase, letters: Vec<Letter>) -> Self {
        assert!(!letters.is_empty(), "Pauli string needs at least one qubit");
        Self { phase, letters }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Phase::PlusOne, vec![Letter::I; n])
    }

    /// The same letter on every qubit.
    pub fn uniform(n: usize, letter: Letter) -> Self {
        Self::new(Phase::PlusOne, vec![letter; n])
    }

    /// Identity except for the listed `(qubit, letter)` pairs; qubits are 1-based.
    pub fn from_sparse(n: usize, ops: &[(usize, Letter)]) -> Self {
        let mut letters = vec![Letter::I; n];
        for &(q, l) in ops {
            assert!((1..=n).contains(&q), "qubit {q} outside 1..={n}");
            letters[q - 1] = l;
        }
        Self::new(Phase::PlusOne, letters)
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&l| l != Letter::I).count()
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.phase.conj(), self.letters.clone())
    }

    /// Appends `extra` identity factors on the right.
    pub fn padded(&self, extra: usize) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(std::iter::repeat_n(Letter::I, extra));
        Self::new(self.phase, letters)
    }

    /// Tensor product `self (x) other`.
    pub fn tensor(&self, other: &PauliString) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::new(self.phase.mul(other.phase), letters)
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::LengthMismatch {
                left: self.n_qubits(),
                right: other.n_qubits(),
            });
        }
        Ok(())
    }

    /// Exact product `self * other`.
    pub fn product(&self, other: &PauliString) -> Result<PauliString> {
        self.check_len(other)?;
        let mut phase = self.phase.mul(other.phase);
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (p, l) = a.mul(b);
                phase = phase.mul(p);
                l
            })
            .collect();
        Ok(PauliString::new(phase, letters))
    }

    /// Number of positions where the letters anticommute.
    pub fn anticommuting_positions(&self, other: &PauliString) -> Result<usize> {
        self.check_len(other)?;
        Ok(self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(&a, &b)| a.anticommutes(b))
            .count())
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        Ok(self.anticommuting_positions(other)? % 2 == 0)
    }

    /// Dense `2^n` matrix. Each column has exactly one nonzero entry.
    pub fn to_matrix<T: Real>(&self) -> Result<ComplexMatrix<T>> {
        let n = self.n_qubits();
        if n > MAX_QUBITS {
            return Err(Error::DimensionTooLarge {
                n_qubits: n,
                max: MAX_QUBITS,
            });
        }
        let dim = 1usize << n;
        let mut flip = 0usize;
        for (q, &l) in self.letters.iter().enumerate() {
            if matches!(l, Letter::X | Letter::Y) {
                flip |= 1 << (n - 1 - q);
            }
        }
        let mut m = ComplexMatrix::zeros(dim);
        for col in 0..dim {
            let mut power = self.phase.power();
            for (q, &l) in self.letters.iter().enumerate() {
                let bit = (col >> (n - 1 - q)) & 1;
                power += match (l, bit) {
                    // Y|0> = i|1>, Y|1> = -i|0>
                    (Letter::Y, 0) => 1,
                    (Letter::Y, _) => 3,
                    (Letter::Z, 1) => 2,
                    _ => 0,
                };
            }
            m[(col ^ flip, col)] = Phase::from_power(power).to_complex();
        }
        Ok(m)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase)?;
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses `+XIZY`, `-ZZ`, `+iY`, `-iXX`; a missing sign means `+`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::PlusI, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MinusI, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::PlusOne, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MinusOne, r)
        } else {
            (Phase::PlusOne, s)
        };
        let letters = rest
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(format!("bad Pauli letter {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string {s:?}")));
        }
        Ok(PauliString::new(phase, letters))
    }
}

pub fn pauli_product(a: &PauliString, b: &PauliString) -> Result<PauliString> {
    a.product(b)
}

pub fn commutes(a: &PauliString, b: &PauliString) -> Result<bool> {
    a.commutes(b)
}

/// Scalar type usable as a Pauli-sum coefficient: floats, or exact rationals.
pub trait Coefficient:
    Num + Clone + PartialEq + Neg<Output = Self> + FromPrimitive + fmt::Debug
{
}

impl<C> Coefficient for C where
    C: Num + Clone + PartialEq + Neg<Output = C> + FromPrimitive + fmt::Debug
{
}

/// Linear combination of Pauli strings with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum<C = f64> {
    n_qubits: usize,
    terms: Vec<(C, PauliString)>,
}

impl<C: Coefficient> PauliSum<C> {
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(n_qubits: usize, terms: Vec<(C, PauliString)>) -> Result<Self> {
        for (_, p) in &terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::LengthMismatch {
                    left: n_qubits,
                    right: p.n_qubits(),
                });
            }
        }
        Ok(Self { n_qubits, terms })
    }

    pub fn single(coefficient: C, string: PauliString) -> Self {
        Self {
            n_qubits: string.n_qubits(),
            terms: vec![(coefficient, string)],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(C, PauliString)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_zero())
    }

    pub fn push(&mut self, coefficient: C, string: PauliString) -> Result<()> {
        if string.n_qubits() != self.n_qubits {
            return Err(Error::LengthMismatch {
                left: self.n_qubits,
                right: string.n_qubits(),
            });
        }
        self.terms.push((coefficient, string));
        Ok(())
    }

    pub fn add(&self, other: &PauliSum<C>) -> Result<PauliSum<C>> {
        let mut out = self.clone();
        for (c, p) in &other.terms {
            out.push(c.clone(), p.clone())?;
        }
        Ok(out.simplified())
    }

    pub fn scaled(&self, s: &C) -> PauliSum<C> {
        Self {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone() * s.clone(), p.clone()))
                .collect(),
        }
    }

    /// Symbolic product of two sums.
    pub fn product(&self, other: &PauliSum<C>) -> Result<PauliSum<C>> {
        let mut out = PauliSum::zero(self.n_qubits);
        for (ca, pa) in &self.terms {
            for (cb, pb) in &other.terms {
                out.push(ca.clone() * cb.clone(), pa.product(pb)?)?;
            }
        }
        Ok(out.simplified())
    }

    /// Folds signs into coefficients (leaving phase `+1` or `+i`), merges equal strings and drops
    /// exact zeros. Terms keep first-appearance order.
    pub fn simplified(&self) -> PauliSum<C> {
        let mut merged: Vec<(C, PauliString)> = Vec::new();
        for (c, p) in &self.terms {
            let (c, p) = match p.phase() {
                Phase::MinusOne => (-c.clone(), p.clone().with_phase(Phase::PlusOne)),
                Phase::MinusI => (-c.clone(), p.clone().with_phase(Phase::PlusI)),
                _ => (c.clone(), p.clone()),
            };
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some((acc, _)) => *acc = acc.clone() + c,
                None => merged.push((c, p)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        Self {
            n_qubits: self.n_qubits,
            terms: merged,
        }
    }

    /// True when every term has a real phase, so the sum is Hermitian for
    /// real coefficients.
    pub fn has_real_phases(&self) -> bool {
        self.terms.iter().all(|(_, p)| p.phase().real_sign().is_some())
    }

    /// Every string in the sum commutes with `g`.
    pub fn commutes_with(&self, g: &PauliString) -> Result<bool> {
        for (_, p) in &self.terms {
            if !p.commutes(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Appends `extra` identity qubits on the right of every term.
    pub fn padded(&self, extra: usize) -> PauliSum<C> {
        Self {
            n_qubits: self.n_qubits + extra,
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.padded(extra)))
                .collect(),
        }
    }
}

impl<T: Real + Coefficient> PauliSum<T> {
    pub fn to_matrix(&self) -> Result<ComplexMatrix<T>> {
        if self.n_qubits > MAX_QUBITS {
            return Err(Error::DimensionTooLarge {
                n_qubits: self.n_qubits,
                max: MAX_QUBITS,
            });
        }
        let mut m = ComplexMatrix::zeros(1 << self.n_qubits);
        for (c, p) in &self.terms {
            let pm = p.to_matrix::<T>()?;
            m = &m + &pm.scale_real(*c);
        }
        Ok(m)
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for PauliSum<C> {
    /// `c1*+XXII + c2*-ZIZI`; the empty sum prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{p}")?;
        }
        Ok(())
    }
}

impl<C: Coefficient + FromStr> PauliSum<C> {
    /// Inverse of `Display`. A bare `0` needs the qubit count supplied.
    pub fn parse(text: &str, n_qubits: usize) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero(n_qubits));
        }
        let mut sum = Self::zero(n_qubits);
        for term in text.split(" + ") {
            let (c, p) = term
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("term {term:?} lacks '*'")))?;
            let c = c
                .trim()
                .parse::<C>()
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            sum.push(c, p.parse()?)?;
        }
        Ok(sum)
    }
}

/// The decoupling group `{I, X^n, Y^n, Z^n}` with `Y = ZX = i sigma_y`,
/// acting on the first `system_qubits` of an `n_qubits` register.
#[derive(Clone, Debug, PartialEq)]
pub struct DecouplingGroup {
    system_qubits: usize,
    elements: [PauliString; 4],
}

impl DecouplingGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::OddN(n));
        }
        if n < 2 {
            return Err(Error::NTooSmall { n, min: 2 });
        }
        if n > MAX_QUBITS {
            return Err(Error::DimensionTooLarge {
                n_qubits: n,
                max: MAX_QUBITS,
            });
        }
        let x = PauliString::uniform(n, Letter::X);
        let z = PauliString::uniform(n, Letter::Z);
        // (ZX)^n = (i sigma_y)^n
        let y = PauliString::uniform(n, Letter::Y).with_phase(Phase::from_power(n as i64));
        let g = Self {
            system_qubits: n,
            elements: [PauliString::identity(n), x, y, z],
        };
        debug_assert_eq!(g.elements[3].product(&g.elements[1]).ok().as_ref(), Some(&g.elements[2]));
        if !g.is_projectively_closed() {
            return Err(Error::InvalidParameter("decoupling group not closed".into()));
        }
        Ok(g)
    }

    /// Group on `system_qubits + extra` qubits acting trivially on the extras.
    pub fn extended(&self, extra: usize) -> Self {
        Self {
            system_qubits: self.system_qubits,
            elements: self.elements.clone().map(|g| g.padded(extra)),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.elements[0].n_qubits()
    }

    pub fn system_qubits(&self) -> usize {
        self.system_qubits
    }

    /// `[I, X^n, Y^n, Z^n]`.
    pub fn elements(&self) -> &[PauliString; 4] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Every pairwise product equals some element up to phase.
    pub fn is_projectively_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.elements.iter().all(|b| {
                a.product(b)
                    .map(|p| self.elements.iter().any(|g| g.letters() == p.letters()))
                    .unwrap_or(false)
            })
        })
    }

    /// Every pair of elements commutes.
    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| a.commutes(b).unwrap_or(false)))
    }

    /// Commutes with all four elements.
    pub fn in_commutant(&self, p: &PauliString) -> Result<bool> {
        for g in &self.elements {
            if !p.commutes(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn build_decoupling_group(n: usize) -> Result<DecouplingGroup> {
    DecouplingGroup::new(n)
}

/// `(1/|G|) sum_g g^dag h g`, evaluated symbolically.
///
/// Each conjugate `g^dag p g` is formed with exact phase products and must
/// reproduce the letters of `p` with a real sign; coefficients are multiplied
/// by the integer sign sum over four.
pub fn group_average<C: Coefficient>(h: &PauliSum<C>, g: &DecouplingGroup) -> Result<PauliSum<C>> {
    if h.n_qubits() != g.n_qubits() {
        return Err(Error::LengthMismatch {
            left: h.n_qubits(),
            right: g.n_qubits(),
        });
    }
    let order = C::from_usize(g.order()).expect("group order fits coefficient");
    let mut out = PauliSum::zero(h.n_qubits());
    for (c, p) in h.terms() {
        let mut sign_sum = 0i64;
        for e in g.elements() {
            let conj = e.adjoint().product(p)?.product(e)?;
            debug_assert_eq!(conj.letters(), p.letters());
            let ratio = conj.phase().mul(p.phase().conj());
            let sign = ratio
                .real_sign()
                .ok_or_else(|| Error::InvalidParameter(format!("conjugating {p} by {e} gave phase {ratio}")))?;
            sign_sum += sign as i64;
        }
        if sign_sum != 0 {
            let factor = C::from_i64(sign_sum).expect("small integer") / order.clone();
            out.push(c.clone() * factor, p.clone())?;
        }
    }
    Ok(out.simplified())
}

/// Two-body generators of the commutant used to build gate Hamiltonians:
/// `X_1 X_{j+1}` for `j = 1..=n-2`, then `Z_{j+1} Z_n` for the same `j`.
pub fn commutant_generators(n: usize) -> Result<Vec<PauliString>> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if n < 4 {
        return Err(Error::NTooSmall { n, min: 4 });
    }
    let xx = (1..=n - 2).map(|j| PauliString::from_sparse(n, &[(1, Letter::X), (j + 1, Letter::X)]));
    let zz = (1..=n - 2).map(|j| PauliString::from_sparse(n, &[(j + 1, Letter::Z), (n, Letter::Z)]));
    Ok(xx.chain(zz).collect())
}
