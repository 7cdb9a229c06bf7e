//! Fixed-size complex Hermitian algebra for two-qubit (4×4) and one-qubit
//! (2×2) operators.
//!
//! Product-basis ordering is `|++⟩, |+−⟩, |−+⟩, |−−⟩` along the helicity axis
//! `k`, with the top quark (subsystem A) in the first slot. The `(k, r, n)`
//! frame maps onto the usual Pauli labels as `σ_k = σ_z`, `σ_r = σ_x`,
//! `σ_n = σ_y`.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense square complex matrix, row-major.
pub type CMatrix<const N: usize> = [[Complex64; N]; N];

/// Symmetry violation above which a matrix is rejected as non-Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-9;
/// Allowed deviation of a density matrix trace from one.
pub const TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue still accepted (and clipped to zero) as roundoff.
pub const PSD_TOL: f64 = 1e-10;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 64;
const TIE_TOL: f64 = 1e-12;
const PHASE_PIVOT_TOL: f64 = 1e-12;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

pub fn zeros<const N: usize>() -> CMatrix<N> {
    [[C0; N]; N]
}

pub fn identity<const N: usize>() -> CMatrix<N> {
    let mut m = zeros::<N>();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C1;
    }
    m
}

pub fn matmul<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> CMatrix<N> {
    let mut out = zeros::<N>();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == C0 {
                continue;
            }
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint<const N: usize>(a: &CMatrix<N>) -> CMatrix<N> {
    let mut out = zeros::<N>();
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// Kronecker product of two single-qubit operators, `a` acting on the first slot.
pub fn kron(a: &CMatrix<2>, b: &CMatrix<2>) -> CMatrix<4> {
    let mut out = zeros::<4>();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn max_abs_diff<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

/// Pauli operators in the helicity `(k, r, n)` frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliBasis {
    pub identity2: CMatrix<2>,
    pub sigma_k: CMatrix<2>,
    pub sigma_r: CMatrix<2>,
    pub sigma_n: CMatrix<2>,
    pub ordering: BasisOrdering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisOrdering {
    /// `|++⟩, |+−⟩, |−+⟩, |−−⟩` along `k`, top quark first.
    HelicityTopFirst,
}

pub const PAULI: PauliBasis = PauliBasis {
    identity2: [[C1, C0], [C0, C1]],
    sigma_k: [[C1, C0], [C0, Complex64::new(-1.0, 0.0)]],
    sigma_r: [[C0, C1], [C1, C0]],
    sigma_n: [[C0, Complex64::new(0.0, -1.0)], [CI, C0]],
    ordering: BasisOrdering::HelicityTopFirst,
};

impl PauliBasis {
    /// `σ_k, σ_r, σ_n` in that order.
    pub fn sigmas(&self) -> [CMatrix<2>; 3] {
        [self.sigma_k, self.sigma_r, self.sigma_n]
    }
}

/// Complex Hermitian matrix of fixed dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix<const N: usize> {
    entries: CMatrix<N>,
}

pub type HermitianMatrix4 = HermitianMatrix<4>;
pub type HermitianMatrix2 = HermitianMatrix<2>;

impl<const N: usize> HermitianMatrix<N> {
    /// Validates Hermiticity to [`HERMITICITY_TOL`] and stores the exactly
    /// symmetrized matrix `(M + M†)/2`.
    pub fn new(entries: CMatrix<N>) -> Result<Self> {
        let max_asymmetry = max_abs_diff(&entries, &adjoint(&entries));
        if !(max_asymmetry <= HERMITICITY_TOL) {
            return Err(Error::NonHermitianInput { max_asymmetry });
        }
        Ok(Self::symmetrized(&entries))
    }

    fn symmetrized(entries: &CMatrix<N>) -> Self {
        let mut out = zeros::<N>();
        for i in 0..N {
            out[i][i] = Complex64::new(entries[i][i].re, 0.0);
            for j in (i + 1)..N {
                let z = (entries[i][j] + entries[j][i].conj()) * 0.5;
                out[i][j] = z;
                out[j][i] = z.conj();
            }
        }
        Self { entries: out }
    }

    pub fn from_real_diagonal(diag: [f64; N]) -> Self {
        let mut m = zeros::<N>();
        for i in 0..N {
            m[i][i] = Complex64::new(diag[i], 0.0);
        }
        Self { entries: m }
    }

    pub fn entries(&self) -> &CMatrix<N> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    pub fn trace(&self) -> f64 {
        (0..N).map(|i| self.entries[i][i].re).sum()
    }

    pub fn diagonal(&self) -> [f64; N] {
        std::array::from_fn(|i| self.entries[i][i].re)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.entries, &other.entries)
    }

    /// `U M U†` for a unitary `U`.
    pub fn conjugate_by(&self, unitary: &CMatrix<N>) -> Self {
        let m = matmul(&matmul(unitary, &self.entries), &adjoint(unitary));
        Self::symmetrized(&m)
    }

    /// Convex-style combination `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        let mut out = zeros::<N>();
        for i in 0..N {
            for j in 0..N {
                out[i][j] = self.entries[i][j] * a + other.entries[i][j] * b;
            }
        }
        Self { entries: out }
    }

    pub fn eigensystem(&self) -> EigenSystem<N> {
        hermitian_eigensystem(self)
    }
}

/// Eigenvalues in descending order with their orthonormal eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem<const N: usize> {
    pub eigenvalues: [f64; N],
    /// `eigenvectors[j]` pairs with `eigenvalues[j]`. Each vector is
    /// phase-normalized so its first non-negligible component is real positive.
    pub eigenvectors: [[Complex64; N]; N],
}

impl<const N: usize> EigenSystem<N> {
    /// `Σ λ_j v_j v_j†`.
    pub fn reconstruct(&self) -> CMatrix<N> {
        let mut out = zeros::<N>();
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..N {
                for j in 0..N {
                    out[i][j] += v[i] * v[j].conj() * *lambda;
                }
            }
        }
        out
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[N - 1]
    }
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Sweeps over all `(p, q)` pairs until the off-diagonal Frobenius norm falls
/// below `1e-14·max(1, ‖M‖_F)`. Each step first rotates the phase of `a_pq`
/// onto the real axis and then applies a real symmetric Schur rotation.
pub fn hermitian_eigensystem<const N: usize>(m: &HermitianMatrix<N>) -> EigenSystem<N> {
    let mut a = m.entries;
    let mut vecs = identity::<N>();
    let scale = frobenius(&a).max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                jacobi_rotate(&mut a, &mut vecs, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, [Complex64; N])> = (0..N)
        .map(|j| {
            let column: [Complex64; N] = std::array::from_fn(|i| vecs[i][j]);
            (a[j][j].re, phase_normalize(column))
        })
        .collect();
    sort_eigenpairs(&mut pairs);

    EigenSystem {
        eigenvalues: std::array::from_fn(|j| pairs[j].0),
        eigenvectors: std::array::from_fn(|j| pairs[j].1),
    }
}

fn frobenius<const N: usize>(a: &CMatrix<N>) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn off_diagonal_norm<const N: usize>(a: &CMatrix<N>) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                acc += a[i][j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi_rotate<const N: usize>(a: &mut CMatrix<N>, vecs: &mut CMatrix<N>, p: usize, q: usize) {
    let apq = a[p][q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let tau = (a[q][q].re - a[p][p].re) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + tau.hypot(1.0))
    } else {
        -1.0 / (-tau + tau.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    // Rotation V restricted to the (p, q) plane.
    let v_pp = Complex64::new(c, 0.0);
    let v_pq = Complex64::new(s, 0.0);
    let v_qp = -phase.conj() * s;
    let v_qq = phase.conj() * c;

    // A <- A V
    for row in a.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = x * v_pp + y * v_qp;
        row[q] = x * v_pq + y * v_qq;
    }
    // A <- V† A
    for k in 0..N {
        let (x, y) = (a[p][k], a[q][k]);
        a[p][k] = v_pp.conj() * x + v_qp.conj() * y;
        a[q][k] = v_pq.conj() * x + v_qq.conj() * y;
    }
    a[p][q] = C0;
    a[q][p] = C0;
    a[p][p].im = 0.0;
    a[q][q].im = 0.0;

    for row in vecs.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = x * v_pp + y * v_qp;
        row[q] = x * v_pq + y * v_qq;
    }
}

fn phase_normalize<const N: usize>(mut v: [Complex64; N]) -> [Complex64; N] {
    if let Some(pivot) = v.iter().copied().find(|z| z.norm() > PHASE_PIVOT_TOL) {
        let rot = pivot.conj() / pivot.norm();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
    v
}

fn vector_key_cmp<const N: usize>(a: &[Complex64; N], b: &[Complex64; N]) -> Ordering {
    // Descending lexicographic order on (re, im) of each component.
    for (x, y) in a.iter().zip(b) {
        let ord = y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

fn sort_eigenpairs<const N: usize>(pairs: &mut [(f64, [Complex64; N])]) {
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && (pairs[start].0 - pairs[end].0).abs() <= TIE_TOL {
            end += 1;
        }
        pairs[start..end].sort_by(|a, b| vector_key_cmp(&a.1, &b.1));
        start = end;
    }
}

/// Shannon entropy in bits of a spectrum, with eigenvalues at or below zero
/// contributing nothing.
pub fn entropy_bits(spectrum: &[f64]) -> f64 {
    let h: f64 = spectrum
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    h.max(0.0)
}

/// Unit-trace positive semidefinite Hermitian matrix together with its
/// spectrum (descending, unclipped).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<const N: usize> {
    matrix: HermitianMatrix<N>,
    spectrum: [f64; N],
}

/// Two-qubit state in the helicity product basis.
pub type SpinDensityMatrix = DensityMatrix<4>;

impl<const N: usize> DensityMatrix<N> {
    pub fn new(matrix: HermitianMatrix<N>) -> Result<Self> {
        let trace = matrix.trace();
        if !((trace - 1.0).abs() <= TRACE_TOL) {
            return Err(Error::NotADensityMatrix {
                reason: format!("trace {trace} differs from 1"),
            });
        }
        let spectrum = matrix.eigensystem().eigenvalues;
        if !(spectrum[N - 1] >= -PSD_TOL) {
            return Err(Error::NotADensityMatrix {
                reason: format!("eigenvalue {:e} below -{PSD_TOL:e}", spectrum[N - 1]),
            });
        }
        Ok(Self { matrix, spectrum })
    }

    /// Like [`DensityMatrix::new`] but reports a negative spectrum as
    /// [`Error::NotPsd`].
    pub(crate) fn new_psd_checked(matrix: HermitianMatrix<N>) -> Result<Self> {
        let trace = matrix.trace();
        if !((trace - 1.0).abs() <= TRACE_TOL) {
            return Err(Error::NotADensityMatrix {
                reason: format!("trace {trace} differs from 1"),
            });
        }
        let spectrum = matrix.eigensystem().eigenvalues;
        if !(spectrum[N - 1] >= -PSD_TOL) {
            return Err(Error::NotPsd {
                min_eigenvalue: spectrum[N - 1],
            });
        }
        Ok(Self { matrix, spectrum })
    }

    pub fn from_entries(entries: CMatrix<N>) -> Result<Self> {
        Self::new(HermitianMatrix::new(entries)?)
    }

    /// Constructor for matrices that are density matrices by construction
    /// (partial traces, dephasings, mixtures of valid states).
    pub(crate) fn from_trusted(matrix: HermitianMatrix<N>) -> Self {
        let spectrum = matrix.eigensystem().eigenvalues;
        debug_assert!((matrix.trace() - 1.0).abs() <= 1e-9);
        debug_assert!(spectrum[N - 1] >= -1e-9);
        Self { matrix, spectrum }
    }

    pub fn maximally_mixed() -> Self {
        let p = 1.0 / N as f64;
        Self {
            matrix: HermitianMatrix::from_real_diagonal([p; N]),
            spectrum: [p; N],
        }
    }

    pub fn from_diagonal(diag: [f64; N]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_diagonal(diag))
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn pure(psi: [Complex64; N]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::NotADensityMatrix {
                reason: "zero state vector".into(),
            });
        }
        let mut m = zeros::<N>();
        for i in 0..N {
            for j in 0..N {
                m[i][j] = psi[i] * psi[j].conj() / (norm * norm);
            }
        }
        Self::from_entries(m)
    }

    pub fn matrix(&self) -> &HermitianMatrix<N> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.get(i, j)
    }

    pub fn spectrum(&self) -> &[f64; N] {
        &self.spectrum
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum[N - 1]
    }

    /// `⟨ψ|ρ|ψ⟩` for a normalized `ψ`.
    pub fn expectation(&self, psi: &[Complex64; N]) -> f64 {
        let mut acc = C0;
        for i in 0..N {
            for j in 0..N {
                acc += psi[i].conj() * self.matrix.get(i, j) * psi[j];
            }
        }
        acc.re
    }

    /// `w·self + (1 − w)·other`.
    pub fn mix(&self, w: f64, other: &Self) -> Self {
        Self::from_trusted(self.matrix.combine(w, &other.matrix, 1.0 - w))
    }
}

impl SpinDensityMatrix {
    /// The antisymmetric maximally entangled state `(|+−⟩ − |−+⟩)/√2`.
    pub fn singlet() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::pure([C0, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), C0])
            .expect("singlet is a valid state")
    }
}

/// Von Neumann entropy `−Tr ρ log₂ ρ` in bits. Eigenvalues in `(−1e-10, 0]`
/// count as zero.
pub fn von_neumann_entropy<const N: usize>(rho: &DensityMatrix<N>) -> f64 {
    entropy_bits(rho.spectrum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    /// Top quark, first tensor slot.
    A,
    /// Antitop, second tensor slot.
    B,
}

/// Reduced state of the kept subsystem.
pub fn partial_trace(rho: &SpinDensityMatrix, keep: Subsystem) -> DensityMatrix<2> {
    let m = rho.matrix().entries();
    let mut out = zeros::<2>();
    for x in 0..2 {
        for y in 0..2 {
            out[x][y] = match keep {
                Subsystem::A => (0..2).map(|b| m[2 * x + b][2 * y + b]).sum(),
                Subsystem::B => (0..2).map(|a| m[2 * a + x][2 * a + y]).sum(),
            };
        }
    }
    DensityMatrix::from_trusted(HermitianMatrix::symmetrized(&out))
}

/// Complete dephasing in the computational (helicity) basis.
pub fn dephase_diagonal<const N: usize>(rho: &DensityMatrix<N>) -> DensityMatrix<N> {
    let diag = rho.matrix().diagonal();
    let mut spectrum = diag;
    spectrum.sort_by(|a, b| b.total_cmp(a));
    DensityMatrix {
        matrix: HermitianMatrix::from_real_diagonal(diag),
        spectrum,
    }
}

/// Direction in the `(k, r, n)` frame. Need not be normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub k: f64,
    pub r: f64,
    pub n: f64,
}

impl Axis {
    pub const K: Axis = Axis::new(1.0, 0.0, 0.0);
    pub const R: Axis = Axis::new(0.0, 1.0, 0.0);
    pub const N: Axis = Axis::new(0.0, 0.0, 1.0);

    pub const fn new(k: f64, r: f64, n: f64) -> Self {
        Self { k, r, n }
    }

    pub fn norm(&self) -> f64 {
        (self.k * self.k + self.r * self.r + self.n * self.n).sqrt()
    }

    pub fn unit(&self) -> Result<Axis> {
        let norm = self.norm();
        if !(norm >= 1e-12) {
            return Err(Error::ZeroAxis);
        }
        Ok(Axis::new(self.k / norm, self.r / norm, self.n / norm))
    }

    pub fn dot(&self, other: &Axis) -> f64 {
        self.k * other.k + self.r * other.r + self.n * other.n
    }

    /// `σ·â` for the normalized axis.
    pub fn spin_operator(&self) -> Result<CMatrix<2>> {
        let u = self.unit()?;
        let mut out = zeros::<2>();
        for (coef, sigma) in [u.k, u.r, u.n].into_iter().zip(PAULI.sigmas()) {
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] += sigma[i][j] * coef;
                }
            }
        }
        Ok(out)
    }

    /// Eigenprojectors `(I ± σ·â)/2`, `+` first.
    pub fn projectors(&self) -> Result<[CMatrix<2>; 2]> {
        let s = self.spin_operator()?;
        let half = |sign: f64| -> CMatrix<2> {
            std::array::from_fn(|i| {
                std::array::from_fn(|j| (PAULI.identity2[i][j] + s[i][j] * sign) * 0.5)
            })
        };
        Ok([half(1.0), half(-1.0)])
    }
}

/// Projective measurement of `σ·â` on subsystem A without reading the outcome:
/// `Σ_i (P_i ⊗ I) ρ (P_i ⊗ I)`.
pub fn local_dephase(rho: &SpinDensityMatrix, axis: Axis) -> Result<SpinDensityMatrix> {
    let mut acc = zeros::<4>();
    for p in axis.projectors()? {
        let lifted = kron(&p, &PAULI.identity2);
        let term = matmul(&matmul(&lifted, rho.matrix().entries()), &lifted);
        for i in 0..4 {
            for j in 0..4 {
                acc[i][j] += term[i][j];
            }
        }
    }
    Ok(DensityMatrix::from_trusted(HermitianMatrix::symmetrized(
        &acc,
    )))
}
