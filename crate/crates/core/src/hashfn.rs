//! One-bit hash functions over the inputs `(b, x_1, ..., x_k)`.
//!
//! The concrete family is GF(2) multilinear polynomials: a hash is an
//! XOR-sum of monomials, each monomial the AND of a subset of the
//! variables. The built-in `paper-eq2` member is
//!
//! ```text
//! H(b, x) = b + x1 + b*x1 + x2*x3 + x1*x4 + x2*x3 + b*x3*x4
//! ```
//!
//! kept verbatim with its duplicated `x2*x3` term, which cancels under
//! GF(2) evaluation. A seeded PRF stands in for a random oracle, and
//! [`CountingOracle`] wraps it with the query accounting the classical
//! bound experiments rely on.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::qsim::Gate;

/// Reserved identifier for the built-in polynomial.
pub const DEFAULT_HASH_ID: &str = "paper-eq2";

const EQ2_TEXT: &str = "b + x1 + b*x1 + x2*x3 + x1*x4 + x2*x3 + b*x3*x4";

/// A product of variables out of `{b, x1, ..., xk}`, stored as a bitmask
/// (bit 0 = `b`, bit `i` = `x_i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u32);

impl Monomial {
    fn from_vars(uses_b: bool, xs: &[usize]) -> Self {
        let mut mask = uses_b as u32;
        for &i in xs {
            mask |= 1 << i;
        }
        Monomial(mask)
    }

    pub fn degree(&self) -> u32 {
        self.0.count_ones()
    }

    /// Variable indices in this monomial: 0 stands for `b`, `i >= 1` for `x_i`.
    pub fn variables(&self) -> Vec<usize> {
        (0..32).filter(|i| self.0 >> i & 1 == 1).collect()
    }

    fn eval(&self, b: bool, xbits: &Bits) -> bool {
        if self.0 & 1 == 1 && !b {
            return false;
        }
        for i in 1..=xbits.len() {
            if self.0 >> i & 1 == 1 && !xbits[i - 1] {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .variables()
            .iter()
            .map(|&v| if v == 0 { "b".to_string() } else { format!("x{v}") })
            .collect();
        write!(f, "{}", names.join("*"))
    }
}

/// A GF(2) polynomial over `(b, x_1, ..., x_k)`. The term list is kept
/// exactly as constructed; duplicated terms cancel only at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashPoly {
    k: usize,
    terms: Vec<Monomial>,
}

impl HashPoly {
    pub fn new(k: usize, terms: Vec<Monomial>) -> Result<Self> {
        for t in &terms {
            if let Some(&max_var) = t.variables().last() {
                if max_var > k {
                    return Err(Error::Input(format!(
                        "monomial {t} uses x{max_var} but k = {k}"
                    )));
                }
            }
        }
        Ok(HashPoly { k, terms })
    }

    /// Number of `x` bits.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    /// Terms with odd multiplicity, ordered by variable mask.
    pub fn surviving_terms(&self) -> Vec<Monomial> {
        let mut counts: BTreeMap<Monomial, usize> = BTreeMap::new();
        for &t in &self.terms {
            *counts.entry(t).or_default() += 1;
        }
        counts
            .into_iter()
            .filter(|&(_, c)| c % 2 == 1)
            .map(|(t, _)| t)
            .collect()
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return String::new();
        }
        self.terms
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for HashPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Parses a `+`-separated list of monomials over the tokens `b`,
/// `x1..x<k>`, e.g. `b + x1 + b*x1`. The term list is preserved verbatim,
/// including duplicates.
pub fn parse_poly(text: &str, k: usize) -> Result<HashPoly> {
    let mut terms = Vec::new();
    for raw_term in text.split('+') {
        let term = raw_term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty monomial in {text:?}")));
        }
        let mut uses_b = false;
        let mut xs = Vec::new();
        for factor in term.split('*') {
            let factor = factor.trim();
            match factor {
                "b" => uses_b = true,
                _ if factor.starts_with('x') => {
                    let idx: usize = factor[1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable token {factor:?}")))?;
                    if idx == 0 || idx > k {
                        return Err(Error::Parse(format!(
                            "variable {factor} out of range x1..x{k}"
                        )));
                    }
                    xs.push(idx);
                }
                other => {
                    return Err(Error::Parse(format!("unknown token {other:?}")));
                }
            }
        }
        terms.push(Monomial::from_vars(uses_b, &xs));
    }
    HashPoly::new(k, terms)
}

/// The built-in hash polynomial (`k = 4`).
pub fn eq2_poly() -> HashPoly {
    parse_poly(EQ2_TEXT, 4).expect("built-in polynomial parses")
}

/// XOR-sum of the monomials of `h` at `(b, xbits)`.
pub fn hash_eval(h: &HashPoly, b: bool, xbits: &Bits) -> Result<bool> {
    if xbits.len() != h.k {
        return Err(Error::Input(format!(
            "hash input has {} x-bits, expected {}",
            xbits.len(),
            h.k
        )));
    }
    Ok(h.terms.iter().fold(false, |acc, t| acc ^ t.eval(b, xbits)))
}

/// Phase-gate realization of `h`: one diagonal gate per surviving monomial
/// (degree 1 -> `Z`, 2 -> `CZ`, 3 -> `CCZ`), acting on qubit 0 for `b` and
/// qubit `i` for `x_i`. Applying the list to the basis state `|b, x>`
/// multiplies its amplitude by `(-1)^{H(b, x)}`.
pub fn phase_gate_list(h: &HashPoly) -> Result<Vec<Gate>> {
    let mut gates = Vec::new();
    for t in h.surviving_terms() {
        let vars = t.variables();
        let gate = match vars.as_slice() {
            [] => {
                return Err(Error::Config(
                    "constant monomial has no phase-gate realization".into(),
                ))
            }
            [a] => Gate::Z(*a),
            [a, b] => Gate::Cz(*a, *b),
            [a, b, c] => Gate::Ccz(*a, *b, *c),
            _ => {
                return Err(Error::Config(format!(
                    "monomial {t} has degree {} > 3; no gate synthesis for it",
                    t.degree()
                )))
            }
        };
        gates.push(gate);
    }
    Ok(gates)
}

/// One-bit hash interface shared by polynomials and oracle stand-ins.
pub trait HashFn {
    /// Number of `x` bits.
    fn k(&self) -> usize;
    fn eval(&self, b: bool, xbits: &Bits) -> Result<bool>;
}

impl HashFn for HashPoly {
    fn k(&self) -> usize {
        self.k
    }

    fn eval(&self, b: bool, xbits: &Bits) -> Result<bool> {
        hash_eval(self, b, xbits)
    }
}

/// Concatenates the branch bit and the `x` bits into one oracle input.
pub fn oracle_input(b: bool, xbits: &Bits) -> Bits {
    std::iter::once(b).chain(xbits.iter()).collect()
}

fn prf_bit(seed: u64, input: &Bits) -> Result<bool> {
    if input.len() > 128 {
        return Err(Error::Input(format!(
            "oracle input of {} bits exceeds the 128-bit PRF domain",
            input.len()
        )));
    }
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(input.len() as u64).to_le_bytes());
    let mut packed = [0u8; 16];
    for (i, bit) in input.iter().enumerate() {
        packed[i / 8] |= (bit as u8) << (i % 8);
    }
    key[16..32].copy_from_slice(&packed);
    Ok(ChaCha12Rng::from_seed(key).random::<u64>() & 1 == 1)
}

/// A deterministic stand-in for a uniformly random one-bit function,
/// keyed by a seed. Pure: evaluation performs no accounting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleHash {
    seed: u64,
    k: usize,
}

impl OracleHash {
    pub fn new(seed: u64, k: usize) -> Self {
        OracleHash { seed, k }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl HashFn for OracleHash {
    fn k(&self) -> usize {
        self.k
    }

    fn eval(&self, b: bool, xbits: &Bits) -> Result<bool> {
        if xbits.len() != self.k {
            return Err(Error::Input(format!(
                "oracle input has {} x-bits, expected {}",
                xbits.len(),
                self.k
            )));
        }
        prf_bit(self.seed, &oracle_input(b, xbits))
    }
}

/// Query-counting wrapper around [`OracleHash`]: logs every query and
/// enforces an optional budget of *distinct* inputs. One oracle per trial;
/// share across threads only with external synchronization.
#[derive(Debug, Clone)]
pub struct CountingOracle {
    function: OracleHash,
    log: Vec<Bits>,
    distinct: HashSet<Bits>,
    budget: Option<usize>,
}

impl CountingOracle {
    pub fn new(seed: u64, k: usize, budget: Option<usize>) -> Self {
        CountingOracle {
            function: OracleHash::new(seed, k),
            log: Vec::new(),
            distinct: HashSet::new(),
            budget,
        }
    }

    /// The underlying pure function, for a verifier that must evaluate the
    /// same oracle without touching the prover's accounting.
    pub fn function(&self) -> OracleHash {
        self.function
    }

    /// Queries the oracle on a raw input (branch bit included). Counts
    /// every call; a new distinct input past the budget is refused.
    pub fn query(&mut self, input: &Bits) -> Result<bool> {
        if !self.distinct.contains(input) {
            if let Some(budget) = self.budget {
                if self.distinct.len() >= budget {
                    return Err(Error::BudgetExhausted { budget });
                }
            }
            self.distinct.insert(input.clone());
        }
        self.log.push(input.clone());
        prf_bit(self.function.seed, input)
    }

    /// Total number of queries made (multiset size).
    pub fn query_count(&self) -> usize {
        self.log.len()
    }

    pub fn distinct_count(&self) -> usize {
        self.distinct.len()
    }

    pub fn log(&self) -> &[Bits] {
        &self.log
    }
}

/// Resolves a hash identifier against the registry:
///
/// * `paper-eq2` - the built-in polynomial (requires `k = 4`),
/// * `oracle:<seed>` - the seeded PRF oracle,
/// * `poly:<text>` - a polynomial in [`parse_poly`] syntax.
pub fn resolve_hash(hash_id: &str, k: usize) -> Result<Box<dyn HashFn + Send + Sync>> {
    if hash_id == DEFAULT_HASH_ID {
        if k != 4 {
            return Err(Error::Input(format!(
                "{DEFAULT_HASH_ID} is defined for k = 4, challenge has k = {k}"
            )));
        }
        return Ok(Box::new(eq2_poly()));
    }
    if let Some(seed_text) = hash_id.strip_prefix("oracle:") {
        let seed: u64 = seed_text
            .parse()
            .map_err(|_| Error::Parse(format!("bad oracle seed in hash id {hash_id:?}")))?;
        return Ok(Box::new(OracleHash::new(seed, k)));
    }
    if let Some(text) = hash_id.strip_prefix("poly:") {
        return Ok(Box::new(parse_poly(text, k)?));
    }
    Err(Error::UnknownHash(hash_id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Truth-table oracle: the seven terms written out longhand.
    fn eq2_oracle(b: bool, x: &Bits) -> bool {
        let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
        b ^ x1 ^ (b & x1) ^ (x2 & x3) ^ (x1 & x4) ^ (x2 & x3) ^ (b & x3 & x4)
    }

    #[test]
    fn eq2_has_seven_terms_and_five_survivors() {
        let h = eq2_poly();
        assert_eq!(h.terms().len(), 7);
        assert_eq!(h.surviving_terms().len(), 5);
    }

    #[test]
    fn hash_eval_examples() {
        let h = eq2_poly();
        assert!(!hash_eval(&h, false, &"0000".parse().unwrap()).unwrap());
        assert!(hash_eval(&h, true, &"0000".parse().unwrap()).unwrap());
        assert!(hash_eval(&h, true, &"1100".parse().unwrap()).unwrap());
        assert!(!hash_eval(&h, false, &"0110".parse().unwrap()).unwrap());
        assert!(hash_eval(&h, false, &"011".parse().unwrap()).is_err());
    }

    #[test]
    fn hash_eval_matches_truth_table_everywhere() {
        let h = eq2_poly();
        for v in 0..32u64 {
            let b = v >> 4 & 1 == 1;
            let x = Bits::from_index(v & 0xf, 4);
            assert_eq!(hash_eval(&h, b, &x).unwrap(), eq2_oracle(b, &x), "b={b} x={x}");
        }
    }

    #[test]
    fn parse_poly_rejects_bad_tokens() {
        assert!(parse_poly("b + x9", 4).is_err());
        assert!(parse_poly("b + + x1", 4).is_err());
        assert!(parse_poly("b + y1", 4).is_err());
        assert!(parse_poly("x0", 4).is_err());
        let single = parse_poly("b", 4).unwrap();
        assert_eq!(single.terms().len(), 1);
        assert!(hash_eval(&single, true, &"0000".parse().unwrap()).unwrap());
    }

    #[test]
    fn print_parse_round_trip_preserves_terms() {
        let h = eq2_poly();
        let text = h.to_text();
        let reparsed = parse_poly(&text, 4).unwrap();
        assert_eq!(reparsed.terms(), h.terms());
    }

    #[test]
    fn phase_gates_for_eq2() {
        let gates = phase_gate_list(&eq2_poly()).unwrap();
        assert_eq!(
            gates,
            vec![
                Gate::Z(0),
                Gate::Z(1),
                Gate::Cz(0, 1),
                Gate::Cz(1, 4),
                Gate::Ccz(0, 3, 4),
            ]
        );
        assert_eq!(phase_gate_list(&parse_poly("b", 4).unwrap()).unwrap(), vec![Gate::Z(0)]);
        assert!(phase_gate_list(&HashPoly::new(4, vec![]).unwrap())
            .unwrap()
            .is_empty());
        assert!(phase_gate_list(&parse_poly("x1*x2*x3*x4", 4).unwrap()).is_err());
    }

    #[test]
    fn oracle_is_deterministic_and_counts() {
        let mut o = CountingOracle::new(99, 4, None);
        let input: Bits = "10110".parse().unwrap();
        let first = o.query(&input).unwrap();
        let second = o.query(&input).unwrap();
        assert_eq!(first, second);
        assert_eq!(o.query_count(), 2);
        assert_eq!(o.distinct_count(), 1);
    }

    #[test]
    fn oracle_budget_counts_distinct_inputs() {
        let mut o = CountingOracle::new(3, 4, Some(32));
        for v in 0..32u64 {
            o.query(&Bits::from_index(v, 5)).unwrap();
        }
        // Re-querying a seen input is free.
        o.query(&Bits::from_index(0, 5)).unwrap();
        match o.query(&Bits::from_index(32, 6)) {
            Err(Error::BudgetExhausted { budget: 32 }) => {}
            other => panic!("expected BudgetExhausted, got {other:?}"),
        }
    }

    #[test]
    fn distinct_seeds_agree_about_half_the_time() {
        for (s1, s2) in [(0u64, 1u64), (17, 42), (1000, 1001)] {
            let a = OracleHash::new(s1, 4);
            let b = OracleHash::new(s2, 4);
            let mut agree = 0;
            for v in 0..32u64 {
                let bit = v >> 4 & 1 == 1;
                let x = Bits::from_index(v & 0xf, 4);
                if a.eval(bit, &x).unwrap() == b.eval(bit, &x).unwrap() {
                    agree += 1;
                }
            }
            // Binomial(32, 1/2) within 3 sigma: 16 +- 8.49.
            assert!((8..=24).contains(&agree), "seeds {s1}/{s2} agree on {agree}/32");
        }
    }

    #[test]
    fn oracle_values_do_not_depend_on_query_order() {
        let inputs: Vec<Bits> = (0..8u64).map(|v| Bits::from_index(v, 5)).collect();
        let mut forward = CountingOracle::new(7, 4, None);
        let mut backward = CountingOracle::new(7, 4, None);
        let a: Vec<bool> = inputs.iter().map(|i| forward.query(i).unwrap()).collect();
        let b: Vec<bool> = inputs
            .iter()
            .rev()
            .map(|i| backward.query(i).unwrap())
            .collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
    }

    #[test]
    fn registry_resolves_known_ids() {
        assert!(resolve_hash("paper-eq2", 4).is_ok());
        assert!(resolve_hash("paper-eq2", 2).is_err());
        assert!(resolve_hash("oracle:1234", 6).is_ok());
        let h = resolve_hash("poly:b + x1*x2", 2).unwrap();
        assert!(h.eval(false, &"11".parse().unwrap()).unwrap());
        assert!(matches!(resolve_hash("sha-256", 4), Err(Error::UnknownHash(_))));
        assert!(resolve_hash("oracle:notanumber", 4).is_err());
    }
}
