//! Markov bases of the non-pointed configuration `{1, -1}`.
//!
//! Here `I_A = <x1 x2 - 1>` and a set `{x1^a x2^a - 1 : a in S}` generates it
//! exactly when `gcd(S) = 1`. Pairwise coprime `q_1, ..., q_s` give the
//! minimal generating set `a_i = Q / q_i`, so Markov bases can be arbitrarily
//! large and of arbitrarily high degree while the circuits, the universal
//! Gröbner basis and the Graver basis stay `{x1 x2 - 1}`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::binomial::Binomial;
use crate::budget::Budget;
use crate::error::{Result, ToricError};
use crate::oracle::{self, VectorConfig};
use std::fmt::Write as _;

use crate::report::{emit_json, BasisKind, BasisReport, Engine, Format, SCHEMA_VERSION};

fn big_to_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn bigs_to_strings<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// The binomials `x1^a x2^a - 1` for each exponent `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentBinomialSet {
    #[serde(serialize_with = "bigs_to_strings")]
    exponents: Vec<BigUint>,
}

impl LaurentBinomialSet {
    pub fn new(exponents: Vec<BigUint>) -> Result<Self> {
        if exponents.iter().any(Zero::is_zero) {
            return Err(ToricError::InvalidParameter("exponents must be positive".into()));
        }
        let mut sorted = exponents.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(ToricError::InvalidParameter("exponents must be distinct".into()));
        }
        Ok(LaurentBinomialSet { exponents })
    }

    pub fn exponents(&self) -> &[BigUint] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Total degree `2a` of each binomial.
    pub fn degrees(&self) -> Vec<BigUint> {
        self.exponents.iter().map(|a| a * 2u32).collect()
    }

    pub fn max_degree(&self) -> BigUint {
        self.degrees().into_iter().max().unwrap_or_default()
    }

    /// Text form of each binomial, e.g. `e0^3*e1^3 - 1`.
    pub fn binomial_strings(&self) -> Vec<String> {
        self.exponents
            .iter()
            .map(|a| if a.is_one() { "e0*e1 - 1".to_string() } else { format!("e0^{a}*e1^{a} - 1") })
            .collect()
    }
}

/// `a_i = Q / q_i` with `Q = q_1 ... q_s`.
pub fn markov_from_coprimes(q: &[u64]) -> Result<LaurentBinomialSet> {
    if q.len() < 2 {
        return Err(ToricError::InvalidParameter("need at least two integers".into()));
    }
    if let Some(&bad) = q.iter().find(|&&x| x < 2) {
        return Err(ToricError::InvalidParameter(format!("{bad} is not greater than 1")));
    }
    for (i, &a) in q.iter().enumerate() {
        for &b in &q[i + 1..] {
            let g = a.gcd(&b);
            if g != 1 {
                return Err(ToricError::NotCoprime(a.to_string(), b.to_string(), g.to_string()));
            }
        }
    }
    let product: BigUint = q.iter().map(|&x| BigUint::from(x)).product();
    LaurentBinomialSet::new(q.iter().map(|&x| &product / x).collect())
}

/// Gcd witnesses for the Markov property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkovCertificate {
    /// gcd of all exponents; the set generates iff this is 1.
    #[serde(serialize_with = "big_to_string")]
    pub total_gcd: BigUint,
    /// gcd of all exponents but the i-th (0 for the empty set); the i-th
    /// binomial is needed iff this is not 1.
    #[serde(serialize_with = "bigs_to_strings")]
    pub leave_one_out: Vec<BigUint>,
    pub generates: bool,
    pub minimal: bool,
}

impl MarkovCertificate {
    pub fn is_markov(&self) -> bool {
        self.generates && self.minimal
    }
}

fn gcd_all<'a>(xs: impl Iterator<Item = &'a BigUint>) -> BigUint {
    xs.fold(BigUint::zero(), |g, x| g.gcd(x))
}

pub fn verify_markov(set: &LaurentBinomialSet) -> Result<MarkovCertificate> {
    if set.is_empty() {
        return Err(ToricError::EmptySet);
    }
    let total_gcd = gcd_all(set.exponents.iter());
    let leave_one_out: Vec<BigUint> = (0..set.len())
        .map(|i| gcd_all(set.exponents.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| a)))
        .collect();
    let generates = total_gcd.is_one();
    let minimal = leave_one_out.iter().all(|g| !g.is_one());
    Ok(MarkovCertificate { total_gcd, leave_one_out, generates, minimal })
}

/// The first `s` primes.
pub fn first_primes(s: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(s);
    let mut c = 2u64;
    while out.len() < s {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| !c.is_multiple_of(p)) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Circuits, universal Gröbner and Graver bases of `{1, -1}`.
#[derive(Debug, Clone, Serialize)]
pub struct LineBases {
    pub circuits: BasisReport,
    pub ugb: BasisReport,
    pub graver: BasisReport,
    pub pointed: bool,
}

pub fn line_config() -> VectorConfig {
    VectorConfig::new(vec![vec![1, -1]]).expect("valid matrix")
}

/// All three sets equal `{x1 x2 - 1}`, computed by the oracle. The lattice has
/// rank one, so the principal generator is also the only element of every
/// reduced Gröbner basis.
pub fn bases_of_line_config() -> Result<LineBases> {
    let a = line_config();
    let gr = oracle::graver(&a, Some(2), &Budget::unlimited())?;
    let circ = oracle::circuits(&a)?;
    let (_, kernel) = a.kernel()?;
    if kernel.len() != 1 {
        return Err(ToricError::Invariant("the line configuration has a rank-one lattice".into()));
    }
    let report = |kind, vs: &[Vec<i64>], truncated| {
        BasisReport::new(kind, Engine::Oracle, oracle::to_binomials(vs), truncated)
    };
    Ok(LineBases {
        circuits: report(BasisKind::Circuits, &circ, false),
        ugb: report(BasisKind::Ugb, &gr.elements, gr.truncated),
        graver: report(BasisKind::Graver, &gr.elements, gr.truncated),
        pointed: a.is_pointed(),
    })
}

/// Everything the `nonpointed` command prints for one tuple.
#[derive(Debug, Clone, Serialize)]
pub struct NonpointedReport {
    pub q: Vec<u64>,
    pub markov: LaurentBinomialSet,
    pub binomials: Vec<String>,
    #[serde(serialize_with = "bigs_to_strings")]
    pub degrees: Vec<BigUint>,
    pub size: usize,
    #[serde(serialize_with = "big_to_string")]
    pub max_degree: BigUint,
    pub certificate: MarkovCertificate,
    pub line: LineBases,
}

pub fn nonpointed_report(q: &[u64]) -> Result<NonpointedReport> {
    let markov = markov_from_coprimes(q)?;
    let certificate = verify_markov(&markov)?;
    Ok(NonpointedReport {
        q: q.to_vec(),
        binomials: markov.binomial_strings(),
        degrees: markov.degrees(),
        size: markov.len(),
        max_degree: markov.max_degree(),
        certificate,
        line: bases_of_line_config()?,
        markov,
    })
}

#[derive(Serialize)]
struct NonpointedDocument<'a> {
    schema_version: u32,
    #[serde(flatten)]
    report: &'a NonpointedReport,
}

/// The Markov basis, its size/degree table and the fixed bases of the line.
pub fn emit_nonpointed(r: &NonpointedReport, format: Format) -> String {
    let line = [&r.line.circuits, &r.line.ugb, &r.line.graver];
    match format {
        Format::Json => emit_json(&NonpointedDocument { schema_version: SCHEMA_VERSION, report: r }),
        Format::Csv => {
            let mut out = format!("basis,size,max_degree\nmarkov,{},{}\n", r.size, r.max_degree);
            for b in line {
                writeln!(out, "{},{},{}", b.kind.name(), b.size, b.max_degree).unwrap();
            }
            out
        }
        Format::Text => {
            let qs: Vec<String> = r.q.iter().map(u64::to_string).collect();
            let mut out = format!("Markov basis of {{1, -1}} from q = {}\n", qs.join(", "));
            for (b, d) in r.binomials.iter().zip(&r.degrees) {
                writeln!(out, "  {b}  (degree {d})").unwrap();
            }
            let verdict = if r.certificate.is_markov() { "minimal generating set" } else { "NOT a Markov basis" };
            writeln!(out, "size {}, max degree {}, {verdict}", r.size, r.max_degree).unwrap();
            for b in line {
                let elems: Vec<String> = b.elements.iter().map(ToString::to_string).collect();
                writeln!(out, "{}: {} (size {}, max degree {})", b.kind.name(), elems.join(", "), b.size, b.max_degree)
                    .unwrap();
            }
            out
        }
    }
}

/// `x1 x2 - 1` as a binomial in two variables.
pub fn line_generator() -> Binomial {
    Binomial::from_lattice(&[1, 1])
}
