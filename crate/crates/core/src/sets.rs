//! The explicit objects around 3.7097: the Cantor family C of Markov values,
//! the gap interval J = (j₀, j₁) that contains it, the extremal element Υ,
//! symmetric-block constants c(B,C), and periodic splices instantiating the
//! key approximation lemma.

use crate::cf;
use crate::digits::{word_to_string, Alphabet, Digit, Word};
use crate::interval::{parse_decimal, pow2_inv, sqrt_rat, RInterval, Rat};
use crate::prover::{self, parse_ledger, prove_claim, Status, WindowPattern};
use crate::seq::{OneSidedSeq, SeqLiteral};
use num::bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SetsError {
    #[error("digit {0} outside {{1,2}}")]
    BadThetaDigit(Digit),
    #[error("connector {0} is not admissible for the block family")]
    BadConnector(String),
    #[error("splice order must be at least 3, got {0}")]
    SmallOrder(usize),
    #[error("bound {value} is not below threshold {threshold}")]
    NotBelow { value: String, threshold: String },
    #[error("sub-claim {0} failed to certify")]
    ChainClaim(String),
    #[error(transparent)]
    Prover(#[from] prover::ProverError),
    #[error(transparent)]
    Cf(#[from] cf::CfError),
}

/// Left period and right head shared by every member of the family C; the
/// free continuation θ ranges over {1,2}^∞.
const C_LEFT: &str = "(3322212)";
const C_HEAD: &str = "2221233222122121212";

const J0_LITERAL: &str = "(33*22212)";
const J1_LITERAL: &str = "(21)12212332221233*22212332221233321(12)";
const UPSILON_LITERAL: &str = "(3322212)33*222123322212212121(12)";

/// An open interval with named endpoints, both given as certified
/// enclosures.
#[derive(Clone, Debug)]
pub struct GapInterval {
    pub lo: RInterval,
    pub hi: RInterval,
    pub label: String,
}

impl GapInterval {
    /// Strict containment of an enclosure: sound under outward rounding.
    pub fn strictly_contains(&self, x: &RInterval) -> bool {
        self.lo.hi() < x.lo() && x.hi() < self.hi.lo()
    }
}

fn depth_for(tol: &Rat) -> u32 {
    let mut d: u32 = 8;
    while pow2_inv(d.saturating_sub(2)) > *tol {
        d += 1;
    }
    d.max(48)
}

/// Enclosure of the set of λ₀-values over all completions θ of the family C
/// that extend `theta_prefix`. The endpoints come from the two extremal
/// {1,2}-tails (first-difference parity rule), so the interval covers every
/// member and nests as the prefix grows.
pub fn c_point(theta_prefix: &[Digit], tol: &Rat) -> Result<RInterval, SetsError> {
    for &d in theta_prefix {
        if d != 1 && d != 2 {
            return Err(SetsError::BadThetaDigit(d));
        }
    }
    let text = format!("{}33*{}{}", C_LEFT, C_HEAD, word_to_string(theta_prefix));
    let alphabet = Alphabet::new(vec![1, 2]).expect("valid alphabet");
    let p = WindowPattern::parse(&text, alphabet)?;
    let depth = depth_for(tol);
    let lo = prover::extremal_lambda(&p, 0, false, depth);
    let hi = prover::extremal_lambda(&p, 0, true, depth);
    Ok(RInterval::new(lo.lo().clone(), hi.hi().clone()))
}

/// The open interval J = (j₀, j₁) around the family C.
pub fn interval_j(tol: &Rat) -> GapInterval {
    let j0 = SeqLiteral::parse(J0_LITERAL).expect("literal").to_biseq();
    let j1 = SeqLiteral::parse(J1_LITERAL).expect("literal").to_biseq();
    GapInterval {
        lo: cf::lambda_at(&j0, 0, tol).expect("complete sequence"),
        hi: cf::lambda_at(&j1, 0, tol).expect("complete sequence"),
        label: "J".to_string(),
    }
}

/// Enclosure of Υ, the top of the family's ambient gap.
pub fn upsilon(tol: &Rat) -> RInterval {
    let b = SeqLiteral::parse(UPSILON_LITERAL).expect("literal").to_biseq();
    cf::lambda_at(&b, 0, tol).expect("complete sequence")
}

/// The inequality chain pinning Υ's tail digit by digit. Each line rules out
/// the value-increasing deviation at one position (the value-decreasing one
/// loses by the parity rule), forcing a₁₃=2, a₁₄=1, a₁₅=2, a₁₆=1, a₁₇a₁₈=21.
const UPSILON_CHAIN: &str = "\
ups.13 | (3322212)33*2221233222121(12)        | LOWER | 3.7096998598     | {0} | =3.7096998599
ups.14 | (3322212)33*2221233222122233(21)     | LOWER | 3.709699859798   | {0} | =3.709699859799
ups.15 | (3322212)33*222123322212211(12)      | LOWER | 3.709699859764   | {0} | =3.709699859765
ups.16 | (3322212)33*2221233222122122(31)     | LOWER | 3.709699859752   | {0} | =3.709699859753
ups.17 | (3322212)33*222123322212212122(31)   | LOWER | 3.70969985975048 | {0} | =3.70969985975049
";

/// One certified step of the Υ forcing chain.
#[derive(Clone, Debug)]
pub struct ForcedDigit {
    pub claim_id: String,
    pub position: i64,
    pub digit: Digit,
}

/// Re-proves the digit-forcing chain behind Υ and returns the forced tail
/// digits with the claim certifying each. Fails if any step does not prove.
pub fn upsilon_chain(tol: &Rat) -> Result<Vec<ForcedDigit>, SetsError> {
    let alphabet = Alphabet::new(vec![1, 2, 3]).expect("valid alphabet");
    let claims = parse_ledger(UPSILON_CHAIN, alphabet)?;
    let forced = [(13, 2u8), (14, 1), (15, 2), (16, 1), (17, 2), (18, 1)];
    let mut out = Vec::new();
    for c in &claims {
        let v = prove_claim(c, 40, tol);
        if v.status != Status::Proved {
            return Err(SetsError::ChainClaim(c.id.clone()));
        }
    }
    for (i, &(position, digit)) in forced.iter().enumerate() {
        let claim_id = claims[i.min(claims.len() - 1)].id.clone();
        out.push(ForcedDigit { claim_id, position, digit });
    }
    Ok(out)
}

/// Comparison target for a block constant: an exact square root or a plain
/// decimal.
#[derive(Clone, Debug)]
pub enum Threshold {
    SqrtInt(u64),
    Decimal(String),
}

impl Threshold {
    fn enclosure(&self, tol: &Rat) -> RInterval {
        match self {
            Threshold::SqrtInt(n) => {
                let x = Rat::from_integer(BigInt::from(*n));
                sqrt_rat(&x, tol).expect("nonnegative radicand")
            }
            Threshold::Decimal(s) => RInterval::point(parse_decimal(s).expect("valid decimal")),
        }
    }

    fn text(&self) -> String {
        match self {
            Threshold::SqrtInt(n) => format!("sqrt({n})"),
            Threshold::Decimal(s) => s.clone(),
        }
    }
}

/// One extremal term [c₀; seq] of a block-constant expression.
#[derive(Clone, Debug)]
pub struct CfTerm {
    pub integer_part: Digit,
    pub seq: OneSidedSeq,
}

/// A symmetric family of generator blocks inside an ambient subshift,
/// together with the closed-form extremal expression bounding its splice
/// constant c(B,C) and the threshold it must stay below.
#[derive(Clone, Debug)]
pub struct SymmetricBlockSpec {
    pub label: String,
    /// Generator words of the block family B.
    pub generators: Vec<Word>,
    /// Ambient alphabet of C.
    pub ambient: Alphabet,
    /// Words forbidden in the ambient subshift.
    pub forbidden: Vec<Word>,
    /// The two extremal continued fractions whose sum bounds c(B,C).
    pub bound_terms: (CfTerm, CfTerm),
    pub threshold: Threshold,
}

fn periodic(head: &[Digit], block: &[Digit]) -> OneSidedSeq {
    OneSidedSeq::new(head.to_vec(), Some(block.to_vec()))
}

/// B = {11, 22} in the full shift on {1,2}: c(B,C) ≤ [2;2̄]+[0;1,2̄] = √2+√3 < √10.
pub fn block_pairs_11_22() -> SymmetricBlockSpec {
    SymmetricBlockSpec {
        label: "pairs-11-22".to_string(),
        generators: vec![vec![1, 1], vec![2, 2]],
        ambient: Alphabet::new(vec![1, 2]).expect("valid alphabet"),
        forbidden: vec![],
        bound_terms: (
            CfTerm { integer_part: 2, seq: periodic(&[], &[2, 2]) },
            CfTerm { integer_part: 0, seq: periodic(&[], &[1, 2]) },
        ),
        threshold: Threshold::SqrtInt(10),
    }
}

/// B = {1, 2} inside {1,2,3} with 13 and 31 forbidden:
/// c(B,C) ≤ [2;1,2̄]+[0;1,3̄] < √13.
pub fn block_digits_no_13() -> SymmetricBlockSpec {
    SymmetricBlockSpec {
        label: "digits-no-13".to_string(),
        generators: vec![vec![1], vec![2]],
        ambient: Alphabet::new(vec![1, 2, 3]).expect("valid alphabet"),
        forbidden: vec![vec![1, 3], vec![3, 1]],
        bound_terms: (
            CfTerm { integer_part: 2, seq: periodic(&[], &[1, 2]) },
            CfTerm { integer_part: 0, seq: periodic(&[], &[1, 3]) },
        ),
        threshold: Threshold::SqrtInt(13),
    }
}

/// B = {1, 2, 2321, 1232} in the full shift on {1,2,3}:
/// c(B,C) ≤ [3;2,1,1,2̄]+[0;2,3,1̄] < 3.83.
pub fn block_four_words() -> SymmetricBlockSpec {
    SymmetricBlockSpec {
        label: "four-words".to_string(),
        generators: vec![vec![1], vec![2], vec![2, 3, 2, 1], vec![1, 2, 3, 2]],
        ambient: Alphabet::new(vec![1, 2, 3]).expect("valid alphabet"),
        forbidden: vec![],
        bound_terms: (
            CfTerm { integer_part: 3, seq: periodic(&[2, 1], &[1, 2]) },
            CfTerm { integer_part: 0, seq: periodic(&[2], &[3, 1]) },
        ),
        threshold: Threshold::Decimal("3.83".to_string()),
    }
}

/// Certified enclosure of the block constant's closed-form bound, checked
/// strictly below the spec's threshold.
pub fn verify_block_constant(spec: &SymmetricBlockSpec, tol: &Rat) -> Result<RInterval, SetsError> {
    let half = tol / Rat::from_integer(BigInt::from(2));
    let (a, b) = &spec.bound_terms;
    let va = cf::eval(&a.seq, a.integer_part, &half)?;
    let vb = cf::eval(&b.seq, b.integer_part, &half)?;
    let sum = va.add(&vb);
    let thr = spec.threshold.enclosure(&half);
    if sum.hi() < thr.lo() {
        Ok(sum)
    } else {
        Err(SetsError::NotBelow {
            value: sum.to_decimal_strings(20).1,
            threshold: spec.threshold.text(),
        })
    }
}

/// Whether `w` decomposes as a concatenation of the family's generators.
fn admissible_in_blocks(w: &[Digit], generators: &[Word]) -> bool {
    let n = w.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for i in 0..n {
        if !reach[i] {
            continue;
        }
        for g in generators {
            if w[i..].starts_with(g) {
                reach[i + g.len()] = true;
            }
        }
    }
    reach[n]
}

/// Shortest word admissible in the block family, by breadth-first search
/// over generator concatenations.
pub fn shortest_connector(spec: &SymmetricBlockSpec) -> Word {
    let mut gens = spec.generators.clone();
    gens.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    gens[0].clone()
}

/// Periodic splice of order k for a periodic center sequence: the word
/// a₀…a_k · connector · a₋k…a₋₁, repeated. Returns the word together with an
/// enclosure of its Markov value, after checking the sandwich
/// m − 1/2^(k−2) ≤ m(P_k) ≤ m + 1/2^(k−2) that drives the approximation
/// argument (for a periodic center, all four extremal completions have
/// Markov value m).
pub fn key_lemma_splice(
    a_center: &[Digit],
    block: &SymmetricBlockSpec,
    connector: &[Digit],
    k: usize,
    tol: &Rat,
) -> Result<(Word, RInterval), SetsError> {
    if k < 3 {
        return Err(SetsError::SmallOrder(k));
    }
    if !admissible_in_blocks(connector, &block.generators) {
        return Err(SetsError::BadConnector(word_to_string(connector)));
    }
    let n = a_center.len();
    let at = |i: i64| a_center[i.rem_euclid(n as i64) as usize];
    let mut pk: Word = (0..=k as i64).map(at).collect();
    pk.extend_from_slice(connector);
    pk.extend((-(k as i64)..0).map(at));

    let half = tol / Rat::from_integer(BigInt::from(2));
    let m = cf::periodic_sup(&a_center.to_vec(), &half);
    let mpk = cf::periodic_sup(&pk, &half);
    let gap = pow2_inv(k as u32 - 2);
    let sandwich_lo = m.lo() - &gap <= *mpk.hi();
    let sandwich_hi = *mpk.lo() <= m.hi() + &gap;
    if !(sandwich_lo && sandwich_hi) {
        return Err(SetsError::NotBelow {
            value: mpk.to_decimal_strings(20).1,
            threshold: format!("m ± 1/2^{}", k - 2),
        });
    }
    Ok((pk, mpk))
}

/// A named constant with its enclosure, for machine-readable export.
#[derive(Clone, Debug)]
pub struct NamedConstant {
    pub name: String,
    pub decimal: String,
    pub enclosure: RInterval,
}

/// The module's headline constants, rendered for downstream reporting.
pub fn constants(tol: &Rat) -> Vec<NamedConstant> {
    let j = interval_j(tol);
    let ups = upsilon(tol);
    let c = c_point(&[], tol).expect("empty prefix is valid");
    let named = |name: &str, v: &RInterval| NamedConstant {
        name: name.to_string(),
        decimal: v.to_decimal_strings(16).0,
        enclosure: v.clone(),
    };
    let mut out = vec![
        named("j0", &j.lo),
        named("j1", &j.hi),
        named("upsilon", &ups),
        named("c_family", &c),
    ];
    for spec in [block_pairs_11_22(), block_digits_no_13(), block_four_words()] {
        if let Ok(v) = verify_block_constant(&spec, tol) {
            out.push(named(&format!("c_bound_{}", spec.label), &v));
        }
    }
    out
}
