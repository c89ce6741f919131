//! Dense statevector simulator.
//!
//! Qubit 0 is the *most significant* index bit. That convention is fixed
//! globally so bit-strings (component 1 leftmost) and basis indices stay
//! aligned: the basis state `|b, x1..x4, w1..w4>` has index
//! `b x1 x2 x3 x4 w1 w2 w3 w4` read as a binary number.

use num_complex::Complex64;
use rand::Rng;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Dense simulation is capped at 24 qubits (256 MiB of amplitudes).
pub const MAX_QUBITS: usize = 24;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Gate IR shared with the circuit builder. Controls precede targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    S(usize),
    T(usize),
    /// Rotation about Z by the given angle.
    Rz(usize, f64),
    /// `Cx(control, target)`.
    Cx(usize, usize),
    Cz(usize, usize),
    /// `Ccx(control, control, target)`.
    Ccx(usize, usize, usize),
    Ccz(usize, usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) | Gate::S(q) | Gate::T(q) => {
                vec![q]
            }
            Gate::Rz(q, _) => vec![q],
            Gate::Cx(a, b) | Gate::Cz(a, b) => vec![a, b],
            Gate::Ccx(a, b, c) | Gate::Ccz(a, b, c) => vec![a, b, c],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::S(_) => "S",
            Gate::T(_) => "T",
            Gate::Rz(..) => "RZ",
            Gate::Cx(..) => "CX",
            Gate::Cz(..) => "CZ",
            Gate::Ccx(..) => "CCX",
            Gate::Ccz(..) => "CCZ",
        }
    }

    pub fn validate(&self, nqubits: usize) -> Result<()> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= nqubits {
                return Err(Error::Input(format!(
                    "gate {} addresses qubit {q} but the state has {nqubits}",
                    self.name()
                )));
            }
        }
        for i in 0..qs.len() {
            for j in i + 1..qs.len() {
                if qs[i] == qs[j] {
                    return Err(Error::Input(format!(
                        "gate {} repeats qubit {}",
                        self.name(),
                        qs[i]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A normalized complex amplitude vector over `2^nqubits` basis states.
#[derive(Debug, Clone)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

/// All basis states of `|0...0>` but the first have amplitude zero.
pub fn init_state(nqubits: usize) -> Result<StateVector> {
    basis_state(nqubits, 0)
}

/// The computational basis state with the given index.
pub fn basis_state(nqubits: usize, index: usize) -> Result<StateVector> {
    if nqubits == 0 || nqubits > MAX_QUBITS {
        return Err(Error::Config(format!(
            "qubit count {nqubits} outside 1..={MAX_QUBITS}"
        )));
    }
    if index >= 1 << nqubits {
        return Err(Error::Input(format!(
            "basis index {index} out of range for {nqubits} qubits"
        )));
    }
    let mut amps = vec![Complex64::ZERO; 1 << nqubits];
    amps[index] = Complex64::ONE;
    Ok(StateVector { n: nqubits, amps })
}

impl StateVector {
    pub fn nqubits(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Basis indices carrying more than `tol` probability.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.amps[i].norm_sqr() > tol)
            .collect()
    }

    fn qubit_mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    fn extract(&self, index: usize, qubits: &[usize]) -> u64 {
        qubits.iter().fold(0u64, |acc, &q| {
            (acc << 1) | ((index & self.qubit_mask(q) != 0) as u64)
        })
    }

    fn scatter(&self, value: u64, qubits: &[usize]) -> usize {
        let k = qubits.len();
        qubits.iter().enumerate().fold(0usize, |acc, (j, &q)| {
            if value >> (k - 1 - j) & 1 == 1 {
                acc | self.qubit_mask(q)
            } else {
                acc
            }
        })
    }

    fn check_register(&self, qubits: &[usize]) -> Result<()> {
        for &q in qubits {
            if q >= self.n {
                return Err(Error::Input(format!(
                    "qubit {q} out of range for a {}-qubit state",
                    self.n
                )));
            }
        }
        for i in 0..qubits.len() {
            for j in i + 1..qubits.len() {
                if qubits[i] == qubits[j] {
                    return Err(Error::Input(format!("register repeats qubit {}", qubits[i])));
                }
            }
        }
        Ok(())
    }
}

/// Applies one gate in place.
pub fn apply_gate(st: &mut StateVector, g: &Gate) -> Result<()> {
    g.validate(st.n)?;
    let dim = st.dim();
    match *g {
        Gate::H(q) => {
            let m = st.qubit_mask(q);
            for i in 0..dim {
                if i & m == 0 {
                    let (a, b) = (st.amps[i], st.amps[i | m]);
                    st.amps[i] = (a + b) * FRAC_1_SQRT_2;
                    st.amps[i | m] = (a - b) * FRAC_1_SQRT_2;
                }
            }
        }
        Gate::X(q) => {
            let m = st.qubit_mask(q);
            for i in 0..dim {
                if i & m == 0 {
                    st.amps.swap(i, i | m);
                }
            }
        }
        Gate::Y(q) => {
            let m = st.qubit_mask(q);
            for i in 0..dim {
                if i & m == 0 {
                    let (a, b) = (st.amps[i], st.amps[i | m]);
                    st.amps[i] = Complex64::new(b.im, -b.re); // -i * b
                    st.amps[i | m] = Complex64::new(-a.im, a.re); // i * a
                }
            }
        }
        Gate::Z(q) => {
            let m = st.qubit_mask(q);
            for i in 0..dim {
                if i & m != 0 {
                    st.amps[i] = -st.amps[i];
                }
            }
        }
        Gate::S(q) => {
            let m = st.qubit_mask(q);
            for i in 0..dim {
                if i & m != 0 {
                    let a = st.amps[i];
                    st.amps[i] = Complex64::new(-a.im, a.re);
                }
            }
        }
        Gate::T(q) => {
            let m = st.qubit_mask(q);
            let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
            for i in 0..dim {
                if i & m != 0 {
                    st.amps[i] *= phase;
                }
            }
        }
        Gate::Rz(q, angle) => {
            let m = st.qubit_mask(q);
            let lo = Complex64::from_polar(1.0, -angle / 2.0);
            let hi = Complex64::from_polar(1.0, angle / 2.0);
            for i in 0..dim {
                st.amps[i] *= if i & m == 0 { lo } else { hi };
            }
        }
        Gate::Cx(c, t) => {
            let mc = st.qubit_mask(c);
            let mt = st.qubit_mask(t);
            for i in 0..dim {
                if i & mc != 0 && i & mt == 0 {
                    st.amps.swap(i, i | mt);
                }
            }
        }
        Gate::Cz(a, b) => {
            let m = st.qubit_mask(a) | st.qubit_mask(b);
            for i in 0..dim {
                if i & m == m {
                    st.amps[i] = -st.amps[i];
                }
            }
        }
        Gate::Ccx(c1, c2, t) => {
            let mc = st.qubit_mask(c1) | st.qubit_mask(c2);
            let mt = st.qubit_mask(t);
            for i in 0..dim {
                if i & mc == mc && i & mt == 0 {
                    st.amps.swap(i, i | mt);
                }
            }
        }
        Gate::Ccz(a, b, c) => {
            let m = st.qubit_mask(a) | st.qubit_mask(b) | st.qubit_mask(c);
            for i in 0..dim {
                if i & m == m {
                    st.amps[i] = -st.amps[i];
                }
            }
        }
    }
    Ok(())
}

/// Flips the sign of every basis amplitude whose index satisfies the
/// predicate: `amp[i] <- (-1)^{pred(i)} amp[i]`.
pub fn apply_phase_oracle(st: &mut StateVector, pred: impl Fn(usize) -> bool) {
    for i in 0..st.dim() {
        if pred(i) {
            st.amps[i] = -st.amps[i];
        }
    }
}

/// Computes `fmap` from `inreg` into `outreg`: `|v>_in |u>_out` maps to
/// `|v>_in |u ^ fmap(v)>_out`. Register values pack the listed qubits most
/// significant first. Errors if the state has weight on `outreg != 0`
/// (beyond 1e-9), where the oracle would not act as a clean write.
pub fn apply_permutation_oracle(
    st: &mut StateVector,
    inreg: &[usize],
    outreg: &[usize],
    fmap: impl Fn(u64) -> u64,
) -> Result<()> {
    st.check_register(inreg)?;
    st.check_register(outreg)?;
    if inreg.iter().any(|q| outreg.contains(q)) {
        return Err(Error::Input("input and output registers overlap".into()));
    }
    let out_mask: usize = outreg.iter().map(|&q| st.qubit_mask(q)).sum();
    for i in 0..st.dim() {
        if i & out_mask != 0 && st.amps[i].norm_sqr() > 1e-18 {
            return Err(Error::Input(
                "output register carries amplitude; oracle expects |0...0>".into(),
            ));
        }
    }
    let out_width = outreg.len() as u32;
    let table: Vec<u64> = (0..1u64 << inreg.len())
        .map(|v| {
            let fv = fmap(v);
            debug_assert!(out_width == 64 || fv < 1u64 << out_width);
            fv
        })
        .collect();
    let mut next = vec![Complex64::ZERO; st.dim()];
    for i in 0..st.dim() {
        let v = st.extract(i, inreg);
        let j = i ^ st.scatter(table[v as usize], outreg);
        next[j] = st.amps[i];
    }
    st.amps = next;
    Ok(())
}

/// Samples the listed qubits in the computational basis per the Born rule,
/// collapses and renormalizes the state, and returns the observed bits in
/// register order.
pub fn measure(st: &mut StateVector, qubits: &[usize], rng: &mut impl Rng) -> Result<Bits> {
    st.check_register(qubits)?;
    let buckets = 1usize << qubits.len();
    let mut probs = vec![0.0f64; buckets];
    for i in 0..st.dim() {
        probs[st.extract(i, qubits) as usize] += st.amps[i].norm_sqr();
    }
    let total: f64 = probs.iter().sum();
    let r = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut outcome = buckets - 1;
    for (k, &p) in probs.iter().enumerate() {
        acc += p;
        if r < acc {
            outcome = k;
            break;
        }
    }
    // Walk back over zero-probability buckets in case of boundary rounding.
    while probs[outcome] == 0.0 && outcome > 0 {
        outcome -= 1;
    }
    let scale = 1.0 / probs[outcome].sqrt();
    for i in 0..st.dim() {
        if st.extract(i, qubits) as usize == outcome {
            st.amps[i] *= scale;
        } else {
            st.amps[i] = Complex64::ZERO;
        }
    }
    Ok(Bits::from_index(outcome as u64, qubits.len()))
}

/// Trajectory noise: each listed qubit independently suffers, with
/// probability `p`, a Pauli drawn uniformly from {I, X, Y, Z}. The draw
/// includes the identity so `p = 1` is the exactly depolarizing case:
/// every listed qubit ends maximally mixed.
pub fn apply_pauli_noise(
    st: &mut StateVector,
    p: f64,
    qubits: &[usize],
    rng: &mut impl Rng,
) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Input(format!("noise probability {p} outside [0, 1]")));
    }
    st.check_register(qubits)?;
    for &q in qubits {
        if rng.random::<f64>() < p {
            match rng.random_range(0..4u8) {
                0 => {}
                1 => apply_gate(st, &Gate::X(q))?,
                2 => apply_gate(st, &Gate::Y(q))?,
                _ => apply_gate(st, &Gate::Z(q))?,
            }
        }
    }
    Ok(())
}
