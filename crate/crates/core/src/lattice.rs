//! Exact arithmetic over `Z_q`, LWE instance management, the trapdoor
//! claw-free function `f(b, x) = round_msb(A*x + b*y mod q)`, trapdoor
//! inversion, and structural validity checks.
//!
//! Everything here is deliberately desk-scale: moduli are small powers of
//! two and exhaustive enumeration over `Z_q^n` is the ground truth whenever
//! `q^n <= 2^24`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Hard ceiling for exhaustive enumeration of `Z_q^n`.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 24;

/// Rejection-sampling budget for [`gen_instance`].
const GENERATION_BUDGET: usize = 100_000;

/// Bit layout used when a `Z_q^n` vector is flattened to a bit-string for
/// the hash and the equation check. `MsbFirst` writes each component
/// big-endian (the default); `LsbFirst` flips the bit order within each
/// component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XBitOrder {
    #[default]
    MsbFirst,
    LsbFirst,
}

/// A full secret-bearing LWE instance: the verifier's key material.
///
/// Invariants enforced on construction: `q` is a power of two, every entry
/// lies in `[0, q)`, and `y = A*s + e mod q` componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LweInstance {
    q: u32,
    a: Vec<Vec<u32>>,
    s: Vec<u32>,
    e: Vec<u32>,
    y: Vec<u32>,
}

/// The public part of an instance, safe to hand to a prover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Challenge {
    pub q: u32,
    pub m: usize,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<u32>>,
    pub y: Vec<u32>,
    pub hash_id: String,
}

/// The two preimages of `w`: `f(0, x0) = f(1, x1) = w` with
/// `x1 = x0 - s mod q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claw {
    pub x0: Vec<u32>,
    pub x1: Vec<u32>,
    pub w: Bits,
}

/// Outcome of [`validate_two_to_one`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Pass,
    /// `round_msb(A*x)` and `round_msb(A*x + e)` differ at `row` for this `x`.
    Fail { witness: Vec<u32>, row: usize },
}

impl Validity {
    pub fn is_pass(&self) -> bool {
        matches!(self, Validity::Pass)
    }
}

/// On-disk schema: q, A (row-major, m rows of n entries), s, e and an
/// optional y that is verified against `A*s + e` when present.
#[derive(Serialize, Deserialize)]
struct RawInstance {
    q: u32,
    #[serde(rename = "A")]
    a: Vec<Vec<u32>>,
    s: Vec<u32>,
    e: Vec<u32>,
    #[serde(default)]
    y: Option<Vec<u32>>,
}

impl LweInstance {
    /// Builds an instance, recomputing `y` and checking it against
    /// `expected_y` when given.
    pub fn new(
        q: u32,
        a: Vec<Vec<u32>>,
        s: Vec<u32>,
        e: Vec<u32>,
        expected_y: Option<&[u32]>,
    ) -> Result<Self> {
        check_modulus(q)?;
        let m = a.len();
        let n = s.len();
        if m == 0 || n == 0 {
            return Err(Error::Input("matrix must be nonempty".into()));
        }
        for row in &a {
            if row.len() != n {
                return Err(Error::Input(format!(
                    "matrix row has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        if e.len() != m {
            return Err(Error::Input(format!(
                "error vector has {} entries, expected {m}",
                e.len()
            )));
        }
        for &v in a.iter().flatten().chain(s.iter()).chain(e.iter()) {
            if v >= q {
                return Err(Error::Input(format!("entry {v} out of range [0, {q})")));
            }
        }
        let y = add_mod(&mat_vec_mod(&a, &s, q), &e, q);
        if let Some(expected) = expected_y {
            if expected != y.as_slice() {
                return Err(Error::Integrity(format!(
                    "stored y = {expected:?} but A*s + e = {y:?}"
                )));
            }
        }
        Ok(LweInstance { q, a, s, e, y })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Secret dimension `n`.
    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// Number of rows `m` (= bits of `w`).
    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.a
    }

    pub fn secret(&self) -> &[u32] {
        &self.s
    }

    pub fn error(&self) -> &[u32] {
        &self.e
    }

    pub fn y(&self) -> &[u32] {
        &self.y
    }

    /// Bits per `x` component (`log2 q`).
    pub fn bits_per_component(&self) -> usize {
        self.q.trailing_zeros() as usize
    }

    /// Number of bits in the flattened `x` encoding (`n * log2 q`).
    pub fn x_bits(&self) -> usize {
        self.n() * self.bits_per_component()
    }

    /// Strips the secret material, binding the hash in force by identifier.
    pub fn public_part(&self, hash_id: &str) -> Challenge {
        Challenge {
            q: self.q,
            m: self.m(),
            n: self.n(),
            a: self.a.clone(),
            y: self.y.clone(),
            hash_id: hash_id.to_string(),
        }
    }

    /// `f(b, x)` evaluated with the instance's own public data.
    pub fn tcf_eval(&self, b: bool, x: &[u32]) -> Result<Bits> {
        tcf_eval_parts(&self.a, &self.y, self.q, b, x)
    }

    pub fn to_json(&self) -> String {
        let raw = RawInstance {
            q: self.q,
            a: self.a.clone(),
            s: self.s.clone(),
            e: self.e.clone(),
            y: Some(self.y.clone()),
        };
        serde_json::to_string_pretty(&raw).expect("instance serialization cannot fail")
    }
}

impl Challenge {
    /// Bits per `x` component (`log2 q`).
    pub fn bits_per_component(&self) -> usize {
        self.q.trailing_zeros() as usize
    }

    /// Number of bits in the flattened `x` encoding.
    pub fn x_bits(&self) -> usize {
        self.n * self.bits_per_component()
    }
}

fn check_modulus(q: u32) -> Result<()> {
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::Config(format!("modulus {q} is not a power of two >= 2")));
    }
    Ok(())
}

/// Most significant bit of `v` as an element of `Z_q`: 1 iff `v >= q/2`.
pub fn round_msb(v: u32, q: u32) -> Result<bool> {
    check_modulus(q)?;
    if v >= q {
        return Err(Error::Input(format!("value {v} out of range [0, {q})")));
    }
    Ok(v >= q / 2)
}

fn mat_vec_mod(a: &[Vec<u32>], x: &[u32], q: u32) -> Vec<u32> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(0u64, |acc, (&aij, &xj)| acc + aij as u64 * xj as u64)
                .rem_euclid(q as u64) as u32
        })
        .collect()
}

fn add_mod(u: &[u32], v: &[u32], q: u32) -> Vec<u32> {
    u.iter().zip(v).map(|(&a, &b)| (a + b) % q).collect()
}

fn tcf_eval_parts(a: &[Vec<u32>], y: &[u32], q: u32, b: bool, x: &[u32]) -> Result<Bits> {
    check_modulus(q)?;
    if x.len() != a.first().map_or(0, Vec::len) {
        return Err(Error::Input(format!(
            "x has {} components, expected {}",
            x.len(),
            a.first().map_or(0, Vec::len)
        )));
    }
    for &v in x {
        if v >= q {
            return Err(Error::Input(format!("x entry {v} out of range [0, {q})")));
        }
    }
    let ax = mat_vec_mod(a, x, q);
    let shifted = if b { add_mod(&ax, y, q) } else { ax };
    shifted.iter().map(|&v| round_msb(v, q)).collect()
}

/// `f(b, x) = round_msb(A*x + b*y mod q)`, componentwise; component `i` of
/// the result is bit `i` of the output string.
pub fn tcf_eval(ch: &Challenge, b: bool, x: &[u32]) -> Result<Bits> {
    tcf_eval_parts(&ch.a, &ch.y, ch.q, b, x)
}

fn domain_size(q: u32, n: usize) -> Result<u64> {
    let bits = q.trailing_zeros() as u64 * n as u64;
    if bits > EXHAUSTIVE_LIMIT.trailing_zeros() as u64 {
        return Err(Error::DomainTooLarge(format!(
            "q^n = {q}^{n} exceeds 2^24; exhaustive checks are desk-scale only"
        )));
    }
    Ok(1u64 << bits)
}

/// The `i`-th vector of `Z_q^n` in lexicographic order (component 0 most
/// significant).
fn index_to_vec(mut i: u64, q: u32, n: usize) -> Vec<u32> {
    let mut x = vec![0u32; n];
    for slot in x.iter_mut().rev() {
        *slot = (i % q as u64) as u32;
        i /= q as u64;
    }
    x
}

/// Checks the perfect 2-to-1 condition: for every `x`,
/// `round_msb(A*x) = round_msb(A*x + e)` componentwise.
pub fn validate_two_to_one(inst: &LweInstance) -> Result<Validity> {
    let total = domain_size(inst.q, inst.n())?;
    for i in 0..total {
        let x = index_to_vec(i, inst.q, inst.n());
        let ax = mat_vec_mod(&inst.a, &x, inst.q);
        let ax_e = add_mod(&ax, &inst.e, inst.q);
        for (row, (&u, &v)) in ax.iter().zip(&ax_e).enumerate() {
            if round_msb(u, inst.q)? != round_msb(v, inst.q)? {
                return Ok(Validity::Fail { witness: x, row });
            }
        }
    }
    Ok(Validity::Pass)
}

/// Generates a fresh instance: `A` uniform over `Z_q^{m x n}`, `s` uniform
/// over `{0,1}^n \ {0}`, `e` entries uniform in `[0, error_bound]`,
/// rejection-sampled until [`validate_two_to_one`] passes. Deterministic in
/// `seed`.
pub fn gen_instance(
    n: usize,
    m: usize,
    q: u32,
    error_bound: u32,
    seed: u64,
) -> Result<LweInstance> {
    check_modulus(q)?;
    if n == 0 || m == 0 {
        return Err(Error::Config("n and m must be positive".into()));
    }
    if error_bound >= q / 2 {
        return Err(Error::Config(format!(
            "error bound {error_bound} must be below q/2 = {}",
            q / 2
        )));
    }
    domain_size(q, n)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_BUDGET {
        let a: Vec<Vec<u32>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(0..q)).collect())
            .collect();
        let s: Vec<u32> = loop {
            let s: Vec<u32> = (0..n).map(|_| rng.random_range(0..2u32)).collect();
            if s.iter().any(|&b| b != 0) {
                break s;
            }
        };
        let e: Vec<u32> = (0..m).map(|_| rng.random_range(0..=error_bound)).collect();
        let inst = LweInstance::new(q, a, s, e, None)?;
        if validate_two_to_one(&inst)?.is_pass() {
            return Ok(inst);
        }
    }
    Err(Error::Generation(format!(
        "no 2-to-1 instance found in {GENERATION_BUDGET} attempts \
         (n={n}, m={m}, q={q}, error_bound={error_bound}, seed={seed})"
    )))
}

/// Parses the JSON instance format, recomputing and checking `y`.
pub fn load_instance(text: &str) -> Result<LweInstance> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("instance file: {e}")))?;
    LweInstance::new(raw.q, raw.a, raw.s, raw.e, raw.y.as_deref())
}

/// The four bundled ground-truth instances (q = 4, n = 2, m = 4).
///
/// The secret is `s = (1, 0)` for all of them: it selects the first column
/// of `A`, which is the ordering under which `A*s + e` reproduces the stored
/// `y` vectors. The `y` check runs on every construction.
pub fn builtin(id: usize) -> Result<LweInstance> {
    #[rustfmt::skip]
    let table: [(&[[u32; 2]; 4], [u32; 4], [u32; 4]); 4] = [
        (&[[0, 2], [2, 0], [0, 1], [1, 2]], [0, 1, 0, 0], [0, 3, 0, 1]),
        (&[[0, 2], [2, 3], [3, 0], [2, 0]], [0, 0, 0, 1], [0, 2, 3, 3]),
        (&[[2, 0], [0, 3], [0, 2], [1, 1]], [1, 0, 1, 0], [3, 0, 1, 1]),
        (&[[0, 3], [1, 0], [3, 0], [0, 2]], [0, 0, 0, 1], [0, 1, 3, 1]),
    ];
    let (a, e, y) = table
        .get(id)
        .ok_or_else(|| Error::Input(format!("builtin instance id {id} out of range 0..=3")))?;
    LweInstance::new(
        4,
        a.iter().map(|row| row.to_vec()).collect(),
        vec![1, 0],
        e.to_vec(),
        Some(y),
    )
}

/// Total number of bundled instances.
pub const BUILTIN_COUNT: usize = 4;

/// Inverts `f` on `w` using the trapdoor: finds the unique `x0` with
/// `round_msb(A*x0) = w` and returns the claw `(x0, x1 = x0 - s mod q)`.
pub fn invert_trapdoor(inst: &LweInstance, w: &Bits) -> Result<Claw> {
    if w.len() != inst.m() {
        return Err(Error::Input(format!(
            "w has {} bits, expected {}",
            w.len(),
            inst.m()
        )));
    }
    let total = domain_size(inst.q, inst.n())?;
    let mut found: Option<Vec<u32>> = None;
    for i in 0..total {
        let x = index_to_vec(i, inst.q, inst.n());
        if inst.tcf_eval(false, &x)? == *w {
            if found.is_some() {
                return Err(Error::MalformedInstance(format!(
                    "branch 0 has multiple preimages of w = {w}"
                )));
            }
            found = Some(x);
        }
    }
    let x0 = found.ok_or(Error::NotInImage)?;
    let x1: Vec<u32> = x0
        .iter()
        .zip(inst.secret())
        .map(|(&x, &s)| (x + inst.q - s) % inst.q)
        .collect();
    debug_assert_eq!(inst.tcf_eval(true, &x1)?, *w);
    Ok(Claw {
        x0,
        x1,
        w: w.clone(),
    })
}

/// Exhaustively enumerates both preimage sets of `w` without any secrets.
/// Returns `(branch 0 preimages, branch 1 preimages)` in lexicographic
/// order.
pub fn brute_force_preimages(ch: &Challenge, w: &Bits) -> Result<(Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    if w.len() != ch.m {
        return Err(Error::Input(format!(
            "w has {} bits, expected {}",
            w.len(),
            ch.m
        )));
    }
    let total = domain_size(ch.q, ch.n)?;
    let mut zeros = Vec::new();
    let mut ones = Vec::new();
    for i in 0..total {
        let x = index_to_vec(i, ch.q, ch.n);
        if tcf_eval(ch, false, &x)? == *w {
            zeros.push(x.clone());
        }
        if tcf_eval(ch, true, &x)? == *w {
            ones.push(x);
        }
    }
    Ok((zeros, ones))
}

/// Flattens `x in Z_q^n` to bits, `log2 q` bits per component.
pub fn encode_x(x: &[u32], q: u32, order: XBitOrder) -> Bits {
    let width = q.trailing_zeros() as usize;
    let mut bits = Vec::with_capacity(x.len() * width);
    for &component in x {
        for i in 0..width {
            let shift = match order {
                XBitOrder::MsbFirst => width - 1 - i,
                XBitOrder::LsbFirst => i,
            };
            bits.push((component >> shift) & 1 == 1);
        }
    }
    Bits::new(bits)
}

/// Inverse of [`encode_x`].
pub fn decode_x(bits: &Bits, q: u32, n: usize, order: XBitOrder) -> Result<Vec<u32>> {
    let width = q.trailing_zeros() as usize;
    if bits.len() != n * width {
        return Err(Error::Input(format!(
            "{} bits cannot encode {n} components of {width} bits",
            bits.len()
        )));
    }
    Ok((0..n)
        .map(|c| {
            (0..width).fold(0u32, |acc, i| {
                let shift = match order {
                    XBitOrder::MsbFirst => width - 1 - i,
                    XBitOrder::LsbFirst => i,
                };
                acc | (bits[c * width + i] as u32) << shift
            })
        })
        .collect())
}

/// All vectors of `Z_q^n` in lexicographic order. Errors above the
/// exhaustive-enumeration guard.
pub fn enumerate_domain(q: u32, n: usize) -> Result<impl Iterator<Item = Vec<u32>>> {
    let total = domain_size(q, n)?;
    Ok((0..total).map(move |i| index_to_vec(i, q, n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent evaluator: plain modular arithmetic, no shared code path
    /// with `tcf_eval`.
    fn oracle_eval(a: &[Vec<u32>], y: &[u32], q: u32, b: bool, x: &[u32]) -> Bits {
        a.iter()
            .enumerate()
            .map(|(i, row)| {
                let mut acc: u64 = if b { y[i] as u64 } else { 0 };
                for (j, &aij) in row.iter().enumerate() {
                    acc += aij as u64 * x[j] as u64;
                }
                (acc % q as u64) as u32 * 2 >= q
            })
            .collect()
    }

    #[test]
    fn round_msb_examples() {
        assert!(!round_msb(0, 4).unwrap());
        assert!(round_msb(3, 4).unwrap());
        assert!(!round_msb(1, 4).unwrap());
        assert!(matches!(round_msb(0, 3), Err(Error::Config(_))));
        assert!(matches!(round_msb(4, 4), Err(Error::Input(_))));
    }

    #[test]
    fn round_msb_matches_doubling_rule() {
        for q in [2u32, 4, 8, 16, 64] {
            for v in 0..q {
                assert_eq!(round_msb(v, q).unwrap(), 2 * v >= q, "v={v} q={q}");
            }
        }
    }

    #[test]
    fn builtin_table_is_intact() {
        let inst = builtin(0).unwrap();
        assert_eq!(inst.matrix(), &[vec![0, 2], vec![2, 0], vec![0, 1], vec![1, 2]]);
        assert_eq!(inst.error(), &[0, 1, 0, 0]);
        assert_eq!(inst.y(), &[0, 3, 0, 1]);
        assert_eq!(builtin(1).unwrap().y(), &[0, 2, 3, 3]);
        assert_eq!(builtin(2).unwrap().y(), &[3, 0, 1, 1]);
        assert_eq!(builtin(3).unwrap().y(), &[0, 1, 3, 1]);
        assert!(builtin(4).is_err());
    }

    #[test]
    fn tcf_eval_examples_instance_0() {
        let ch = builtin(0).unwrap().public_part("paper-eq2");
        assert_eq!(tcf_eval(&ch, false, &[0, 0]).unwrap().to_string(), "0000");
        assert_eq!(tcf_eval(&ch, true, &[0, 0]).unwrap().to_string(), "0100");
        assert_eq!(tcf_eval(&ch, true, &[3, 0]).unwrap().to_string(), "0000");
        assert!(tcf_eval(&ch, false, &[0, 0, 0]).is_err());
        assert!(tcf_eval(&ch, false, &[4, 0]).is_err());
    }

    #[test]
    fn tcf_eval_matches_independent_oracle_on_all_inputs() {
        for id in 0..BUILTIN_COUNT {
            let inst = builtin(id).unwrap();
            let ch = inst.public_part("paper-eq2");
            for x in enumerate_domain(4, 2).unwrap() {
                for b in [false, true] {
                    assert_eq!(
                        tcf_eval(&ch, b, &x).unwrap(),
                        oracle_eval(inst.matrix(), inst.y(), 4, b, &x),
                        "instance {id}, b={b}, x={x:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn builtins_are_two_to_one() {
        for id in 0..BUILTIN_COUNT {
            assert!(validate_two_to_one(&builtin(id).unwrap()).unwrap().is_pass());
        }
    }

    #[test]
    fn oversized_error_fails_with_witness() {
        let inst = LweInstance::new(
            4,
            vec![vec![0, 2], vec![2, 0], vec![0, 1], vec![1, 2]],
            vec![1, 0],
            vec![2, 0, 0, 0],
            None,
        )
        .unwrap();
        match validate_two_to_one(&inst).unwrap() {
            Validity::Fail { witness, row } => {
                assert_eq!(row, 0);
                // Verify the witness actually witnesses the failure.
                let ax = mat_vec_mod(inst.matrix(), &witness, 4);
                let shifted = (ax[0] + inst.error()[0]) % 4;
                assert_ne!(round_msb(ax[0], 4).unwrap(), round_msb(shifted, 4).unwrap());
            }
            Validity::Pass => panic!("expected a validity failure"),
        }
    }

    #[test]
    fn claw_identity_holds_exhaustively() {
        for id in 0..BUILTIN_COUNT {
            let inst = builtin(id).unwrap();
            for x0 in enumerate_domain(4, 2).unwrap() {
                let x1: Vec<u32> = x0
                    .iter()
                    .zip(inst.secret())
                    .map(|(&x, &s)| (x + 4 - s) % 4)
                    .collect();
                assert_eq!(
                    inst.tcf_eval(false, &x0).unwrap(),
                    inst.tcf_eval(true, &x1).unwrap(),
                    "instance {id}, x0={x0:?}"
                );
            }
        }
    }

    #[test]
    fn invert_trapdoor_examples() {
        let inst = builtin(0).unwrap();
        let claw = invert_trapdoor(&inst, &"0000".parse().unwrap()).unwrap();
        assert_eq!(claw.x0, vec![0, 0]);
        assert_eq!(claw.x1, vec![3, 0]);
        let claw = invert_trapdoor(&inst, &"0100".parse().unwrap()).unwrap();
        assert_eq!(claw.x0, vec![1, 0]);
        assert_eq!(claw.x1, vec![0, 0]);
    }

    #[test]
    fn invert_matches_brute_force_on_every_image() {
        for id in 0..BUILTIN_COUNT {
            let inst = builtin(id).unwrap();
            let ch = inst.public_part("paper-eq2");
            for w_index in 0..16u64 {
                let w = Bits::from_index(w_index, 4);
                let (zeros, ones) = brute_force_preimages(&ch, &w).unwrap();
                assert_eq!(zeros.len(), 1, "instance {id}, w={w}");
                assert_eq!(ones.len(), 1, "instance {id}, w={w}");
                let claw = invert_trapdoor(&inst, &w).unwrap();
                assert_eq!(claw.x0, zeros[0]);
                assert_eq!(claw.x1, ones[0]);
            }
        }
    }

    #[test]
    fn unattained_image_is_not_in_image() {
        // First row of A and of e is all zeros, so component 1 of f is
        // always 0 and any w starting with 1 is unattained.
        let inst = LweInstance::new(
            4,
            vec![vec![0, 0], vec![2, 0], vec![0, 1], vec![1, 2]],
            vec![1, 0],
            vec![0, 0, 0, 0],
            None,
        )
        .unwrap();
        assert!(validate_two_to_one(&inst).unwrap().is_pass());
        match invert_trapdoor(&inst, &"1000".parse().unwrap()) {
            Err(Error::NotInImage) => {}
            other => panic!("expected NotInImage, got {other:?}"),
        }
    }

    #[test]
    fn colliding_branch_is_malformed() {
        let inst = LweInstance::new(
            4,
            vec![vec![0, 0]; 4],
            vec![1, 0],
            vec![0, 0, 0, 0],
            None,
        )
        .unwrap();
        match invert_trapdoor(&inst, &"0000".parse().unwrap()) {
            Err(Error::MalformedInstance(_)) => {}
            other => panic!("expected MalformedInstance, got {other:?}"),
        }
    }

    #[test]
    fn generation_is_deterministic_and_valid() {
        let a = gen_instance(2, 4, 4, 1, 7).unwrap();
        let b = gen_instance(2, 4, 4, 1, 7).unwrap();
        assert_eq!(a, b);
        assert!(validate_two_to_one(&a).unwrap().is_pass());
        assert!(a.secret().iter().all(|&s| s <= 1));
        assert!(a.secret().iter().any(|&s| s != 0));
        assert!(a.error().iter().all(|&e| e <= 1));
        assert_ne!(a, gen_instance(2, 4, 4, 1, 8).unwrap());
        assert!(matches!(gen_instance(2, 4, 3, 1, 7), Err(Error::Config(_))));
    }

    #[test]
    fn instance_json_round_trips() {
        let inst = builtin(2).unwrap();
        let text = inst.to_json();
        assert_eq!(load_instance(&text).unwrap(), inst);
    }

    #[test]
    fn tampered_y_is_an_integrity_error() {
        let text = r#"{"q":4,"A":[[0,2],[2,0],[0,1],[1,2]],"s":[1,0],"e":[0,1,0,0],"y":[0,3,0,2]}"#;
        assert!(matches!(load_instance(text), Err(Error::Integrity(_))));
    }

    #[test]
    fn challenge_serialization_carries_no_secrets() {
        let ch = builtin(0).unwrap().public_part("paper-eq2");
        let json = serde_json::to_string(&ch).unwrap();
        assert!(!json.contains("\"s\""), "secret key leaked: {json}");
        assert!(!json.contains("\"e\""), "error vector leaked: {json}");
        assert!(json.contains("\"A\""));
        assert!(json.contains("\"hash_id\""));
    }

    #[test]
    fn x_encoding_is_big_endian_per_component() {
        assert_eq!(encode_x(&[3, 0], 4, XBitOrder::MsbFirst).to_string(), "1100");
        assert_eq!(encode_x(&[1, 2], 4, XBitOrder::MsbFirst).to_string(), "0110");
        assert_eq!(encode_x(&[1, 2], 4, XBitOrder::LsbFirst).to_string(), "1001");
        for order in [XBitOrder::MsbFirst, XBitOrder::LsbFirst] {
            for x in enumerate_domain(4, 2).unwrap() {
                let bits = encode_x(&x, 4, order);
                assert_eq!(decode_x(&bits, 4, 2, order).unwrap(), x);
            }
        }
    }

    #[test]
    fn domain_guard_refuses_oversized_enumeration() {
        assert!(matches!(
            validate_two_to_one(
                &gen_instance(2, 4, 4, 1, 1).unwrap() // fine at q=4
            ),
            Ok(_)
        ));
        assert!(matches!(
            enumerate_domain(1 << 13, 2),
            Err(Error::DomainTooLarge(_))
        ));
    }
}
