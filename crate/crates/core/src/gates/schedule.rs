//! Piecewise-constant gate schedules and their exact propagators.
//!
//! A segment stores a constant Hamiltonian shape together with its pulse
//! area `int J(t) dt`; only the area enters the propagator
//! `exp(-i * area * H)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{expm_auto, ComplexMatrix};
use crate::pauli::{Coefficient, DecouplingGroup, Letter, PauliString, PauliSum};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleSegment<T = f64> {
    hamiltonian: PauliSum<T>,
    area: T,
}

impl<T: Real + Coefficient> ScheduleSegment<T> {
    pub fn new(hamiltonian: PauliSum<T>, area: T) -> Result<Self> {
        if !hamiltonian.has_real_phases() {
            return Err(Error::NotHermitian { deviation: f64::NAN });
        }
        Ok(Self { hamiltonian, area })
    }

    pub fn hamiltonian(&self) -> &PauliSum<T> {
        &self.hamiltonian
    }

    pub fn area(&self) -> T {
        self.area
    }

    pub fn matrix(&self) -> Result<ComplexMatrix<T>> {
        self.hamiltonian.to_matrix()
    }

    /// Propagator after a fraction `f` of the segment's area.
    pub fn propagator(&self, fraction: T) -> Result<ComplexMatrix<T>> {
        let h = self.matrix()?;
        if self.hamiltonian.terms().is_empty() {
            return Ok(ComplexMatrix::identity(h.dim()));
        }
        expm_auto(&h, fraction * self.area)
    }
}

/// Which gate a schedule realizes, with its parameters. Indices are 1-based
/// logical qubit numbers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind<T = f64> {
    U1 { j: usize, theta: T },
    U2 { j: usize, theta: T },
    U3 { k: usize, l: usize, phi: T },
    /// Arbitrary segment list, e.g. loaded from a file.
    Custom,
}

impl<T> GateKind<T> {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::U1 { .. } => "u1",
            GateKind::U2 { .. } => "u2",
            GateKind::U3 { .. } => "u3",
            GateKind::Custom => "custom",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateSchedule<T = f64> {
    n_qubits: usize,
    kind: GateKind<T>,
    segments: Vec<ScheduleSegment<T>>,
}

impl<T: Real + Coefficient> GateSchedule<T> {
    pub fn new(n_qubits: usize, kind: GateKind<T>, segments: Vec<ScheduleSegment<T>>) -> Result<Self> {
        for seg in &segments {
            if seg.hamiltonian.n_qubits() != n_qubits {
                return Err(Error::LengthMismatch {
                    left: n_qubits,
                    right: seg.hamiltonian.n_qubits(),
                });
            }
        }
        let expected = match kind {
            GateKind::U1 { .. } | GateKind::U3 { .. } => Some(2),
            GateKind::U2 { .. } => Some(4),
            GateKind::Custom => None,
        };
        if let Some(count) = expected {
            if segments.len() != count {
                return Err(Error::InvalidParameter(format!(
                    "{} needs {count} segments, got {}",
                    kind.name(),
                    segments.len()
                )));
            }
        }
        Ok(Self {
            n_qubits,
            kind,
            segments,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn kind(&self) -> &GateKind<T> {
        &self.kind
    }

    pub fn segments(&self) -> &[ScheduleSegment<T>] {
        &self.segments
    }

    /// Every Hamiltonian term commutes with every group element.
    pub fn commutes_with_group(&self, g: &DecouplingGroup) -> Result<bool> {
        for seg in &self.segments {
            for e in g.elements() {
                if !seg.hamiltonian.commutes_with(e)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn check_target(n: usize, j: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if n < 4 {
        return Err(Error::NTooSmall { n, min: 4 });
    }
    if j == 0 || j > n - 2 {
        return Err(Error::IndexOutOfRange { index: j, max: n - 2 });
    }
    Ok(())
}

/// `sigma^x_1 sigma^x_{j+1}`.
pub fn xx_coupling(n: usize, j: usize) -> PauliString {
    PauliString::from_sparse(n, &[(1, Letter::X), (j + 1, Letter::X)])
}

/// `sigma^z_{a} sigma^z_{b}`.
pub fn zz_coupling(n: usize, a: usize, b: usize) -> PauliString {
    PauliString::from_sparse(n, &[(a, Letter::Z), (b, Letter::Z)])
}

fn h1<T: Real + Coefficient>(n: usize, j: usize) -> PauliSum<T> {
    PauliSum::single(T::one(), zz_coupling(n, j + 1, n))
}

fn h1_prime<T: Real + Coefficient>(n: usize, j: usize, theta: T) -> PauliSum<T> {
    PauliSum::from_terms(
        n,
        vec![
            (theta.cos(), zz_coupling(n, j + 1, n)),
            (theta.sin(), xx_coupling(n, j)),
        ],
    )
    .expect("terms sized to n")
}

/// `Z_{j+1} Z_n` then `cos(theta) Z_{j+1} Z_n + sin(theta) X_1 X_{j+1}`,
/// both with area pi/2. Realizes `exp(-i theta Y_L^(j))` up to phase.
pub fn schedule_u1<T: Real + Coefficient>(n: usize, j: usize, theta: T) -> Result<GateSchedule<T>> {
    check_target(n, j)?;
    let quarter = T::FRAC_PI_2();
    GateSchedule::new(
        n,
        GateKind::U1 { j, theta },
        vec![
            ScheduleSegment::new(h1(n, j), quarter)?,
            ScheduleSegment::new(h1_prime(n, j, theta), quarter)?,
        ],
    )
}

/// `X_1 X_{j+1}` at area -pi/4, the two U1 segments, then `X_1 X_{j+1}` at
/// area pi/4. Realizes `exp(-i theta Z_L^(j))` up to phase.
pub fn schedule_u2<T: Real + Coefficient>(n: usize, j: usize, theta: T) -> Result<GateSchedule<T>> {
    check_target(n, j)?;
    let xx = PauliSum::single(T::one(), xx_coupling(n, j));
    GateSchedule::new(
        n,
        GateKind::U2 { j, theta },
        vec![
            ScheduleSegment::new(xx.clone(), -T::FRAC_PI_4())?,
            ScheduleSegment::new(h1(n, j), T::FRAC_PI_2())?,
            ScheduleSegment::new(h1_prime(n, j, theta), T::FRAC_PI_2())?,
            ScheduleSegment::new(xx, T::FRAC_PI_4())?,
        ],
    )
}

/// `cos(phi) X_1 X_{k+1} - sin(phi) Z_{k+1} Z_{l+1}` then `X_1 X_{k+1}`, both
/// with area pi/2. Realizes `exp(i phi Y_L^(k) Z_L^(l))` up to phase.
pub fn schedule_u3<T: Real + Coefficient>(n: usize, k: usize, l: usize, phi: T) -> Result<GateSchedule<T>> {
    check_target(n, k)?;
    if k >= l || l > n - 2 {
        return Err(Error::BadIndices { k, l, max: n - 2 });
    }
    let first = PauliSum::from_terms(
        n,
        vec![
            (phi.cos(), xx_coupling(n, k)),
            (-phi.sin(), zz_coupling(n, k + 1, l + 1)),
        ],
    )?;
    let second = PauliSum::single(T::one(), xx_coupling(n, k));
    GateSchedule::new(
        n,
        GateKind::U3 { k, l, phi },
        vec![
            ScheduleSegment::new(first, T::FRAC_PI_2())?,
            ScheduleSegment::new(second, T::FRAC_PI_2())?,
        ],
    )
}

/// `prod_seg exp(-i area H_seg)`, earliest segment rightmost.
pub fn evolve_schedule<T: Real + Coefficient>(s: &GateSchedule<T>) -> Result<ComplexMatrix<T>> {
    let mut u = ComplexMatrix::identity(1 << s.n_qubits());
    for seg in s.segments() {
        u = &seg.propagator(T::one())? * &u;
    }
    Ok(u)
}

#[derive(Serialize, Deserialize)]
struct SegmentRecord {
    hamiltonian: String,
    area: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
enum KindRecord {
    U1 { j: usize, theta: f64 },
    U2 { j: usize, theta: f64 },
    U3 { k: usize, l: usize, phi: f64 },
    Custom,
}

#[derive(Serialize, Deserialize)]
struct ScheduleRecord {
    n_qubits: usize,
    kind: KindRecord,
    segments: Vec<SegmentRecord>,
}

impl GateSchedule<f64> {
    /// JSON with a `segments` list of `{hamiltonian, area}` entries, the
    /// Hamiltonian in Pauli-sum text form.
    pub fn to_json(&self) -> String {
        let kind = match self.kind {
            GateKind::U1 { j, theta } => KindRecord::U1 { j, theta },
            GateKind::U2 { j, theta } => KindRecord::U2 { j, theta },
            GateKind::U3 { k, l, phi } => KindRecord::U3 { k, l, phi },
            GateKind::Custom => KindRecord::Custom,
        };
        let record = ScheduleRecord {
            n_qubits: self.n_qubits,
            kind,
            segments: self
                .segments
                .iter()
                .map(|s| SegmentRecord {
                    hamiltonian: s.hamiltonian.to_string(),
                    area: s.area,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&record).expect("schedule serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: ScheduleRecord = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let kind = match record.kind {
            KindRecord::U1 { j, theta } => GateKind::U1 { j, theta },
            KindRecord::U2 { j, theta } => GateKind::U2 { j, theta },
            KindRecord::U3 { k, l, phi } => GateKind::U3 { k, l, phi },
            KindRecord::Custom => GateKind::Custom,
        };
        let segments = record
            .segments
            .iter()
            .map(|s| ScheduleSegment::new(PauliSum::parse(&s.hamiltonian, record.n_qubits)?, s.area))
            .collect::<Result<Vec<_>>>()?;
        GateSchedule::new(record.n_qubits, kind, segments)
    }
}
