//! Small dense complex linear algebra for one and two spin-1/2 particles.
//!
//! Two-particle objects use the basis ordering `(↑↑, ↑↓, ↓↑, ↓↓)`, i.e. the
//! row-major Kronecker convention with particle A as the most significant
//! index. Everything here is immutable once constructed.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for structural identities (Hermiticity, normalization, traces).
pub const STRUCTURAL_TOL: f64 = 1e-12;
/// Tolerance for validating user-supplied inputs such as directions and spinors.
pub const INPUT_TOL: f64 = 1e-9;
/// Most negative eigenvalue a density matrix may have.
pub const PSD_TOL: f64 = 1e-10;
/// Largest imaginary part an expectation of a Hermitian operator may carry.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Single-particle spinor `|↑⟩`.
pub const SPIN_UP: [Complex64; 2] = [ONE, ZERO];
/// Single-particle spinor `|↓⟩`.
pub const SPIN_DOWN: [Complex64; 2] = [ZERO, ONE];

/// A unit vector in ordinary three-space: a measurement axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    x: f64,
    y: f64,
    z: f64,
}

impl Direction {
    pub const X: Direction = Direction {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const Y: Direction = Direction {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const Z: Direction = Direction {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    /// Rejects vectors whose norm differs from 1 by more than [`INPUT_TOL`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > INPUT_TOL {
            return Err(Error::NotUnit { norm });
        }
        Ok(Direction { x, y, z })
    }

    /// Scales any finite non-zero vector onto the unit sphere.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::DegenerateVector);
        }
        Ok(Direction {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// Spherical coordinates: polar angle from +z, azimuth from +x (radians).
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Direction {
            x: st * cp,
            y: st * sp,
            z: ct,
        }
    }

    /// Direction in the xz-plane at `degrees` from +z towards +x.
    ///
    /// This is the convention used for every angle-specified direction.
    pub fn planar_degrees(degrees: f64) -> Self {
        let (s, c) = degrees.to_radians().sin_cos();
        Direction { x: s, y: 0.0, z: c }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Angle to `other` in radians, in `[0, π]`.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        self.dot(other).clamp(-1.0, 1.0).acos()
    }

    pub fn reversed(&self) -> Self {
        Direction {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::BadShape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(ComplexMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = ONE;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Panics if `(r, c)` is out of range.
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        self.entries[r * self.cols + c]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.entries[r * self.cols + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols))
            .map(|i| self.entries[i * self.cols + i])
            .sum()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * k).collect(),
        }
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<Self> {
        self.same_shape("add", other)?;
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<Self> {
        self.add(&other.scale(-ONE))
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.entries[r * self.cols + k];
                if lhs == ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out.entries[r * other.cols + c] += lhs * other.entries[k * other.cols + c];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "apply",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.entries[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(m, x)| m * x)
                    .sum()
            })
            .collect())
    }

    /// General Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.entries[r1 * self.cols + c1];
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let r = r1 * other.rows + r2;
                        let c = c1 * other.cols + c2;
                        out.entries[r * cols + c] = a * other.entries[r2 * other.cols + c2];
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        self.same_shape("max_abs_diff", other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise modulus of `M - M†`; infinite for non-square matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                let d = (self.entries[r * n + c] - self.entries[c * n + r].conj()).norm();
                dev = dev.max(d);
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    fn same_shape(&self, op: &'static str, other: &ComplexMatrix) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![ZERO, -I, I, ZERO]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![ONE, ZERO, ZERO, -ONE]).unwrap()
}

/// The spin operator `σ·d = d_x σ_x + d_y σ_y + d_z σ_z`.
pub fn pauli_dot(d: &Direction) -> ComplexMatrix {
    let (x, y, z) = (d.x, d.y, d.z);
    ComplexMatrix {
        rows: 2,
        cols: 2,
        entries: vec![
            Complex64::new(z, 0.0),
            Complex64::new(x, -y),
            Complex64::new(x, y),
            Complex64::new(-z, 0.0),
        ],
    }
}

/// Joint operator `mA ⊗ mB` on the two-particle space.
pub fn tensor(m_a: &ComplexMatrix, m_b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m_a.shape() != (2, 2) || m_b.shape() != (2, 2) {
        return Err(Error::DimensionMismatch {
            op: "tensor",
            left: m_a.shape(),
            right: m_b.shape(),
        });
    }
    Ok(m_a.kron(m_b))
}

/// `⟨u|M|v⟩` for single-particle spinors.
pub fn braket(u: &[Complex64; 2], m: &ComplexMatrix, v: &[Complex64; 2]) -> Complex64 {
    debug_assert_eq!(m.shape(), (2, 2));
    let e = &m.entries;
    let mv = [e[0] * v[0] + e[1] * v[1], e[2] * v[0] + e[3] * v[1]];
    u[0].conj() * mv[0] + u[1].conj() * mv[1]
}

fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// A normalized pure state of two spin-1/2 particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amplitudes: [Complex64; 4],
}

impl TwoQubitState {
    /// Requires `Σ|amplitude|² = 1` within [`STRUCTURAL_TOL`].
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        let n = norm_sq(&amplitudes);
        if !n.is_finite() || (n - 1.0).abs() > STRUCTURAL_TOL {
            return Err(Error::NotNormalized { norm_sq: n });
        }
        Ok(TwoQubitState { amplitudes })
    }

    /// Rescales any non-zero amplitude vector to unit norm.
    pub fn normalized(amplitudes: [Complex64; 4]) -> Result<Self> {
        let n = norm_sq(&amplitudes).sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::DegenerateVector);
        }
        Ok(TwoQubitState {
            amplitudes: amplitudes.map(|a| a / n),
        })
    }

    /// Computational basis state; `index` follows `(↑↑, ↑↓, ↓↑, ↓↓)`.
    pub fn basis(index: usize) -> Self {
        assert!(index < 4, "basis index {index} out of range");
        let mut amplitudes = [ZERO; 4];
        amplitudes[index] = ONE;
        TwoQubitState { amplitudes }
    }

    pub fn up_up() -> Self {
        Self::basis(0)
    }

    pub fn up_down() -> Self {
        Self::basis(1)
    }

    pub fn down_up() -> Self {
        Self::basis(2)
    }

    pub fn down_down() -> Self {
        Self::basis(3)
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    /// Exchanges the roles of particles A and B.
    pub fn swapped(&self) -> Self {
        let [a, b, c, d] = self.amplitudes;
        TwoQubitState {
            amplitudes: [a, c, b, d],
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &TwoQubitState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`; equals 1 iff the states agree up to a global phase.
    pub fn fidelity(&self, other: &TwoQubitState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `⟨Ψ|op|Ψ⟩` without validating `op`.
    pub(crate) fn contract(&self, op: &ComplexMatrix) -> Complex64 {
        debug_assert_eq!(op.shape(), (4, 4));
        let e = op.entries();
        let mut acc = ZERO;
        for r in 0..4 {
            let mut row = ZERO;
            for c in 0..4 {
                row += e[r * 4 + c] * self.amplitudes[c];
            }
            acc += self.amplitudes[r].conj() * row;
        }
        acc
    }
}

/// The singlet `(|↑↓⟩ − |↓↑⟩)/√2`.
pub fn singlet() -> TwoQubitState {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    TwoQubitState {
        amplitudes: [ZERO, h, -h, ZERO],
    }
}

/// `(|↑↑⟩ + |↓↓⟩)/√2`.
pub fn phi_plus() -> TwoQubitState {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    TwoQubitState {
        amplitudes: [h, ZERO, ZERO, h],
    }
}

/// `(|↑↑⟩ − |↓↓⟩)/√2`.
pub fn phi_minus() -> TwoQubitState {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    TwoQubitState {
        amplitudes: [h, ZERO, ZERO, -h],
    }
}

/// `(|↑↓⟩ + |↓↑⟩)/√2`.
pub fn psi_plus() -> TwoQubitState {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    TwoQubitState {
        amplitudes: [ZERO, h, h, ZERO],
    }
}

/// Names accepted by [`state_by_name`].
pub const STATE_NAMES: &[&str] = &[
    "singlet",
    "phi-plus",
    "phi-minus",
    "psi-plus",
    "up-up",
    "up-down",
    "down-up",
    "down-down",
];

pub fn state_by_name(name: &str) -> Result<TwoQubitState> {
    Ok(match name {
        "singlet" => singlet(),
        "phi-plus" => phi_plus(),
        "phi-minus" => phi_minus(),
        "psi-plus" => psi_plus(),
        "up-up" => TwoQubitState::up_up(),
        "up-down" => TwoQubitState::up_down(),
        "down-up" => TwoQubitState::down_up(),
        "down-down" => TwoQubitState::down_down(),
        other => {
            return Err(Error::UnknownName {
                kind: "state",
                name: other.into(),
                available: STATE_NAMES.iter().map(|s| s.to_string()).collect(),
            })
        }
    })
}

/// Non-entangled state `|χ_A⟩ ⊗ |χ_B⟩`. Both spinors must be normalized
/// within [`INPUT_TOL`].
pub fn product_state(chi_a: [Complex64; 2], chi_b: [Complex64; 2]) -> Result<TwoQubitState> {
    for chi in [&chi_a, &chi_b] {
        let n = norm_sq(chi);
        if !n.is_finite() || (n.sqrt() - 1.0).abs() > INPUT_TOL {
            return Err(Error::NotNormalized { norm_sq: n });
        }
    }
    TwoQubitState::normalized([
        chi_a[0] * chi_b[0],
        chi_a[0] * chi_b[1],
        chi_a[1] * chi_b[0],
        chi_a[1] * chi_b[1],
    ])
}

/// `⟨Ψ|op|Ψ⟩` for a Hermitian 4×4 operator.
pub fn expectation(state: &TwoQubitState, op: &ComplexMatrix) -> Result<f64> {
    if op.shape() != (4, 4) {
        return Err(Error::DimensionMismatch {
            op: "expectation",
            left: (4, 1),
            right: op.shape(),
        });
    }
    let deviation = op.hermitian_deviation();
    if deviation > STRUCTURAL_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let value = state.contract(op);
    if value.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::ImaginaryResidue {
            residue: value.im.abs(),
        });
    }
    Ok(value.re)
}

/// Hermitian, unit-trace, positive semidefinite 4×4 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity and trace to [`STRUCTURAL_TOL`] and positivity
    /// to [`PSD_TOL`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.shape() != (4, 4) {
            return Err(Error::InvalidDensity(format!(
                "expected 4x4, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix
            .entries()
            .iter()
            .any(|e| !e.re.is_finite() || !e.im.is_finite())
        {
            return Err(Error::InvalidDensity("non-finite entry".into()));
        }
        let dev = matrix.hermitian_deviation();
        if dev > STRUCTURAL_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {dev:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STRUCTURAL_TOL || tr.im.abs() > STRUCTURAL_TOL {
            return Err(Error::InvalidDensity(format!("trace is {tr}, not 1")));
        }
        let min_eig = min_eigenvalue_estimate(&matrix);
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue (about {min_eig:e})"
            )));
        }
        Ok(DensityMatrix { matrix })
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix {
            matrix: ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0)),
        }
    }

    /// Convex combination `Σ w_i |ψ_i⟩⟨ψ_i|`; weights must be non-negative
    /// and sum to 1.
    pub fn mixture(components: &[(f64, TwoQubitState)]) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidDensity("empty mixture".into()));
        }
        let mut m = ComplexMatrix::zeros(4, 4);
        let mut total = 0.0;
        for (w, psi) in components {
            if !(w.is_finite() && *w >= 0.0) {
                return Err(Error::InvalidDensity(format!("bad mixture weight {w}")));
            }
            total += w;
            m = m.add(&density_from_pure(psi).matrix.scale(Complex64::new(*w, 0.0)))?;
        }
        if (total - 1.0).abs() > STRUCTURAL_TOL {
            return Err(Error::InvalidDensity(format!(
                "mixture weights sum to {total}"
            )));
        }
        Self::new(m)
    }

    /// Werner state `p|singlet⟩⟨singlet| + (1 − p) I/4`, `p ∈ [0, 1]`.
    pub fn werner(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidDensity(format!(
                "Werner parameter {p} outside [0, 1]"
            )));
        }
        let m = density_from_pure(&singlet())
            .matrix
            .scale(Complex64::new(p, 0.0))
            .add(
                &Self::maximally_mixed()
                    .matrix
                    .scale(Complex64::new(1.0 - p, 0.0)),
            )?;
        Self::new(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `tr(ρ·op)` computed entrywise, no product matrix formed.
    pub fn trace_with(&self, op: &ComplexMatrix) -> Result<Complex64> {
        if op.shape() != (4, 4) {
            return Err(Error::DimensionMismatch {
                op: "trace_with",
                left: (4, 4),
                right: op.shape(),
            });
        }
        let rho = self.matrix.entries();
        let o = op.entries();
        let mut acc = ZERO;
        for r in 0..4 {
            for c in 0..4 {
                acc += rho[r * 4 + c] * o[c * 4 + r];
            }
        }
        Ok(acc)
    }

    /// Upper estimate of the smallest eigenvalue (see [`min_eigenvalue_estimate`]).
    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue_estimate(&self.matrix)
    }
}

/// `|Ψ⟩⟨Ψ|`.
pub fn density_from_pure(state: &TwoQubitState) -> DensityMatrix {
    let a = state.amplitudes();
    let mut entries = Vec::with_capacity(16);
    for r in 0..4 {
        for c in 0..4 {
            entries.push(a[r] * a[c].conj());
        }
    }
    DensityMatrix {
        matrix: ComplexMatrix {
            rows: 4,
            cols: 4,
            entries,
        },
    }
}

/// The 64 deterministic probe vectors `(1, iᵏ¹, iᵏ², iᵏ³)`.
fn probe_vectors() -> impl Iterator<Item = [Complex64; 4]> {
    let phase = |k: usize| I.powu((k % 4) as u32);
    (0..64).map(move |k| [ONE, phase(k), phase(k / 4), phase(k / 16)])
}

fn rayleigh(m: &ComplexMatrix, v: &[Complex64]) -> f64 {
    let mv = m.apply(v).expect("4-vector against 4x4");
    let num: Complex64 = v.iter().zip(&mv).map(|(x, y)| x.conj() * y).sum();
    num.re / norm_sq(v)
}

/// Smallest Rayleigh quotient of a Hermitian 4×4 matrix found over the probe
/// set and a shifted power iteration. Never below the true minimum
/// eigenvalue; converges to it for the power-iteration part.
pub fn min_eigenvalue_estimate(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut best = f64::INFINITY;
    for v in probe_vectors() {
        best = best.min(rayleigh(m, &v));
    }
    for k in 0..n {
        let mut e = vec![ZERO; n];
        e[k] = ONE;
        best = best.min(rayleigh(m, &e));
    }

    // Power iteration on (s·I − M), s a Gershgorin bound on the spectrum, so
    // the dominant eigenvector of the shifted matrix is M's lowest one.
    let shift = (0..n)
        .map(|r| (0..n).map(|c| m.get(r, c).norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let shifted = ComplexMatrix::identity(n)
        .scale(Complex64::new(shift, 0.0))
        .sub(m)
        .expect("square");
    for start in probe_vectors().step_by(21) {
        let mut v: Vec<Complex64> = start
            .iter()
            .enumerate()
            .map(|(i, c)| c * (1.0 + 0.1 * i as f64))
            .collect();
        for _ in 0..500 {
            let w = shifted.apply(&v).expect("square");
            let nrm = norm_sq(&w).sqrt();
            if nrm == 0.0 {
                break;
            }
            v = w.into_iter().map(|c| c / nrm).collect();
        }
        best = best.min(rayleigh(m, &v));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn pauli_dot_axes() {
        assert_eq!(pauli_dot(&Direction::Z), pauli_z());
        assert_eq!(pauli_dot(&Direction::X), pauli_x());
        assert_eq!(pauli_dot(&Direction::Y), pauli_y());
    }

    #[test]
    fn pauli_dot_diagonal_direction() {
        let d = Direction::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2).unwrap();
        let m = pauli_dot(&d);
        // hand evaluation of σx/√2 + σz/√2
        let expected = [FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2];
        for (got, want) in m.entries().iter().zip(expected) {
            assert_abs_diff_eq!(got.re, want, epsilon = 1e-15);
            assert_eq!(got.im, 0.0);
        }
        assert!(m.trace().norm() < 1e-12);
    }

    #[test]
    fn direction_validation() {
        assert!(Direction::new(1.0, 1.0, 0.0).is_err());
        assert!(Direction::new(1.0 + 1e-10, 0.0, 0.0).is_ok());
        assert_eq!(
            Direction::normalized(0.0, 0.0, 0.0),
            Err(Error::DegenerateVector)
        );
        assert!(Direction::normalized(f64::NAN, 0.0, 1.0).is_err());
        let d = Direction::normalized(3.0, 0.0, 4.0).unwrap();
        assert_abs_diff_eq!(d.x(), 0.6, epsilon = 1e-15);
        let p = Direction::planar_degrees(90.0);
        assert_abs_diff_eq!(p.x(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.z(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            Direction::Z
                .angle_to(&Direction::planar_degrees(60.0))
                .to_degrees(),
            60.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn tensor_identity_and_zz() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
        let zz = tensor(&pauli_z(), &pauli_z()).unwrap();
        let diag = ComplexMatrix::from_real(
            4,
            4,
            &[
                1., 0., 0., 0., 0., -1., 0., 0., 0., 0., -1., 0., 0., 0., 0., 1.,
            ],
        )
        .unwrap();
        assert_eq!(zz, diag);
    }

    #[test]
    fn tensor_x_z_by_index_formula() {
        let (x, z) = (pauli_x(), pauli_z());
        let t = tensor(&x, &z).unwrap();
        // (A⊗B)[2i+k][2j+l] = A[i][j]·B[k][l]
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        assert_eq!(t.get(2 * i + k, 2 * j + l), x.get(i, j) * z.get(k, l));
                    }
                }
            }
        }
        let nonzero: Vec<f64> = t
            .entries()
            .iter()
            .filter(|e| e.norm() > 0.0)
            .map(|e| e.re)
            .collect();
        assert_eq!(nonzero, vec![1.0, -1.0, 1.0, -1.0]);
        assert_eq!(t.get(0, 2), c(1.0));
        assert_eq!(t.get(1, 3), c(-1.0));
    }

    #[test]
    fn tensor_rejects_wrong_shapes() {
        let i4 = ComplexMatrix::identity(4);
        let err = tensor(&i4, &pauli_x()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { op: "tensor", .. }));
    }

    #[test]
    fn singlet_amplitudes() {
        let s = singlet();
        let a = s.amplitudes();
        assert_eq!(a[0], c(0.0));
        assert_eq!(a[1], c(std::f64::consts::FRAC_1_SQRT_2));
        assert_eq!(a[2], c(-std::f64::consts::FRAC_1_SQRT_2));
        assert_eq!(a[3], c(0.0));
        let n: f64 = a.iter().map(|x| x.norm_sqr()).sum();
        assert_abs_diff_eq!(n, 1.0, epsilon = 1e-15);
        let swapped = s.swapped();
        for (x, y) in swapped.amplitudes().iter().zip(a) {
            assert_eq!(*x, -*y);
        }
    }

    #[test]
    fn product_state_examples() {
        assert_eq!(
            product_state(SPIN_UP, SPIN_DOWN).unwrap(),
            TwoQubitState::up_down()
        );
        assert_eq!(
            product_state(SPIN_UP, SPIN_UP).unwrap(),
            TwoQubitState::up_up()
        );
        let plus = [c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)];
        let psi = product_state(plus, SPIN_UP).unwrap();
        let want = [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0];
        for (got, w) in psi.amplitudes().iter().zip(want) {
            assert_abs_diff_eq!(got.re, w, epsilon = 1e-15);
        }
        assert!(matches!(
            product_state([c(1.0), c(1.0)], SPIN_UP),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn expectation_examples() {
        let zz = tensor(&pauli_z(), &pauli_z()).unwrap();
        assert_abs_diff_eq!(
            expectation(&singlet(), &ComplexMatrix::identity(4)).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(expectation(&singlet(), &zz).unwrap(), -1.0, epsilon = 1e-15);
        assert_eq!(expectation(&TwoQubitState::up_down(), &zz).unwrap(), -1.0);
    }

    #[test]
    fn expectation_rejects_bad_operators() {
        let mut e = vec![ZERO; 16];
        e[1] = ONE;
        let upper = ComplexMatrix::new(4, 4, e).unwrap();
        assert!(matches!(
            expectation(&singlet(), &upper),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            expectation(&singlet(), &pauli_x()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn density_examples() {
        let rho = density_from_pure(&TwoQubitState::up_down());
        let mut want = ComplexMatrix::zeros(4, 4);
        want.entries[5] = ONE;
        assert_eq!(rho.matrix(), &want);

        // singlet projector via the tensor oracle: |Ψ⟩⟨Ψ| = column ⊗ row
        let s = singlet();
        let col = ComplexMatrix::new(4, 1, s.amplitudes().to_vec()).unwrap();
        let outer = col.matmul(&col.adjoint()).unwrap();
        let rho = density_from_pure(&s);
        assert!(rho.matrix().max_abs_diff(&outer).unwrap() < 1e-15);
        assert_abs_diff_eq!(rho.matrix().get(1, 1).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.matrix().get(2, 2).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.matrix().get(1, 2).re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.matrix().get(2, 1).re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.matrix().trace().re, 1.0, epsilon = 1e-15);
        let sq = rho.matrix().matmul(rho.matrix()).unwrap();
        assert!(sq.max_abs_diff(rho.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(4)).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::identity(2)).is_err());
        // unit trace, Hermitian, but eigenvalue −0.5
        let bad = ComplexMatrix::from_real(
            4,
            4,
            &[
                1.0, 0., 0., 0., 0., 0.5, 0., 0., 0., 0., -0.5, 0., 0., 0., 0., 0.,
            ],
        )
        .unwrap();
        let err = DensityMatrix::new(bad).unwrap_err();
        assert!(matches!(err, Error::InvalidDensity(_)), "{err}");
        // negative direction hidden off the diagonal: eigenvalues 0.5 ± 0.6
        let hidden = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.5, 0., 0., 0.6, 0., 0., 0., 0., 0., 0., 0., 0., 0.6, 0., 0., 0.5,
            ],
        )
        .unwrap();
        assert!(DensityMatrix::new(hidden).is_err());
        assert!(DensityMatrix::werner(0.3).is_ok());
        assert!(DensityMatrix::werner(1.5).is_err());
        let mixed = DensityMatrix::mixture(&[
            (0.5, TwoQubitState::up_down()),
            (0.5, TwoQubitState::down_up()),
        ])
        .unwrap();
        assert_abs_diff_eq!(mixed.min_eigenvalue(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn min_eigenvalue_matches_diagonal() {
        let m = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.4, 0., 0., 0., 0., 0.3, 0., 0., 0., 0., 0.2, 0., 0., 0., 0., 0.1,
            ],
        )
        .unwrap();
        assert_abs_diff_eq!(min_eigenvalue_estimate(&m), 0.1, epsilon = 1e-10);
    }

    #[test]
    fn braket_cross_terms() {
        let x = pauli_x();
        assert_eq!(braket(&SPIN_UP, &x, &SPIN_DOWN), ONE);
        assert_eq!(braket(&SPIN_UP, &x, &SPIN_UP), ZERO);
        let y = pauli_y();
        assert_eq!(braket(&SPIN_UP, &y, &SPIN_DOWN), -I);
        assert_eq!(braket(&SPIN_DOWN, &y, &SPIN_UP), I);
    }
}
