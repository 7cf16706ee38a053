//! Braid words in B_n: the defining relations, free reduction, and the
//! Markov-style moves (conjugation, commuting, stabilization).
//!
//! Words are read top to bottom: the leftmost letter is the topmost crossing
//! of the braid diagram. All values are immutable; every operation returns a
//! fresh word.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Exponent of a generator, or equivalently the handedness of a crossing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// Over/under choice shared by L-moves and braiding moves.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Over,
    Under,
}

/// One letter sigma_index^sign of a braid word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Self {
        Letter { index, sign }
    }

    /// From the signed-integer encoding: k > 0 is sigma_k, k < 0 is sigma_{-k}^-1.
    pub fn from_signed(k: i64) -> Option<Self> {
        match k {
            0 => None,
            k if k > 0 => Some(Letter::new(k as usize, Sign::Pos)),
            k => Some(Letter::new((-k) as usize, Sign::Neg)),
        }
    }

    pub fn to_signed(self) -> i64 {
        self.sign.as_i64() * self.index as i64
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.index, self.sign.flip())
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BraidError {
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("letter {letter} out of range for B_{strands}")]
    LetterOutOfRange { letter: i64, strands: usize },
    #[error("position {pos} out of range (limit {limit})")]
    PositionOutOfRange { pos: usize, limit: usize },
    #[error("generator index {index} out of range for B_{strands}")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("no {kind} match at position {pos}")]
    RelationMismatch { kind: &'static str, pos: usize },
    #[error("strand count must be positive")]
    ZeroStrands,
}

/// Element of B_n as a strand count plus a sequence of signed generator letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::ZeroStrands);
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(BraidError::LetterOutOfRange {
                    letter: l.to_signed(),
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Convenience constructor from signed integers, e.g. `[1, -2, 1]`.
    pub fn from_signed(strands: usize, signed: &[i64]) -> Result<Self, BraidError> {
        let mut letters = Vec::with_capacity(signed.len());
        for &k in signed {
            let l = Letter::from_signed(k).ok_or(BraidError::LetterOutOfRange {
                letter: 0,
                strands,
            })?;
            letters.push(l);
        }
        Self::new(strands, letters)
    }

    /// The identity braid in B_n.
    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed_letters(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    /// Concatenation of braids stacked top to bottom. No reduction is applied.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Group inverse: letters reversed with all signs negated.
    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Deletes adjacent cancelling pairs until none remain. The result is
    /// independent of deletion order.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last().is_some_and(|t| t.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: stack,
        }
    }

    /// Rewrites the three-letter window at `pos` by a braid relation, or the
    /// two-letter window for `FarCommute`. Only the matched window changes.
    pub fn apply_relation(
        &self,
        pos: usize,
        kind: RelationKind,
        direction: Direction,
    ) -> Result<BraidWord, BraidError> {
        match kind {
            RelationKind::YangBaxter => {
                if pos + 3 > self.letters.len() {
                    return Err(BraidError::PositionOutOfRange {
                        pos,
                        limit: self.letters.len().saturating_sub(3),
                    });
                }
                let w: [Letter; 3] = self.letters[pos..pos + 3].try_into().unwrap();
                let out = yang_baxter_rewrite(w, direction).ok_or(BraidError::RelationMismatch {
                    kind: "yang_baxter",
                    pos,
                })?;
                let mut letters = self.letters.clone();
                letters[pos..pos + 3].copy_from_slice(&out);
                Ok(BraidWord {
                    strands: self.strands,
                    letters,
                })
            }
            RelationKind::FarCommute => {
                if pos + 2 > self.letters.len() {
                    return Err(BraidError::PositionOutOfRange {
                        pos,
                        limit: self.letters.len().saturating_sub(2),
                    });
                }
                let (a, b) = (self.letters[pos], self.letters[pos + 1]);
                if a.index.abs_diff(b.index) <= 1 {
                    return Err(BraidError::RelationMismatch {
                        kind: "far_commute",
                        pos,
                    });
                }
                let mut letters = self.letters.clone();
                letters.swap(pos, pos + 1);
                Ok(BraidWord {
                    strands: self.strands,
                    letters,
                })
            }
        }
    }

    /// Underlying permutation: each sigma_i^{+-1} acts as the transposition
    /// (i, i+1), multiplied in letter order.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.strands).collect();
        // images[p-1] = where top position p ends up; walk each letter as a swap
        // of the strands currently at positions i, i+1.
        let mut pos_of: Vec<usize> = (0..self.strands).collect(); // strand -> position
        let mut at: Vec<usize> = (0..self.strands).collect(); // position -> strand
        for l in &self.letters {
            let i = l.index - 1;
            let (s, t) = (at[i], at[i + 1]);
            at.swap(i, i + 1);
            pos_of[s] = i + 1;
            pos_of[t] = i;
        }
        for p in 0..self.strands {
            images[p] = pos_of[p] + 1;
        }
        Permutation { images }
    }

    /// Sum of letter signs; the writhe of the closure diagram.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.as_i64()).sum()
    }

    /// Number of cycles of the underlying permutation, which is the component
    /// count of the closed-braid diagram.
    pub fn closure_components(&self) -> usize {
        self.permutation().cycle_count()
    }

    /// sigma_i^{-sign} . self . sigma_i^{sign}
    pub fn conjugate(&self, index: usize, sign: Sign) -> Result<BraidWord, BraidError> {
        if index == 0 || index >= self.strands {
            return Err(BraidError::GeneratorOutOfRange {
                index,
                strands: self.strands,
            });
        }
        let mut letters = Vec::with_capacity(self.letters.len() + 2);
        letters.push(Letter::new(index, sign.flip()));
        letters.extend_from_slice(&self.letters);
        letters.push(Letter::new(index, sign));
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Cyclic rotation moving the last `k` letters to the front.
    pub fn commute_rotate(&self, k: usize) -> Result<BraidWord, BraidError> {
        if k > self.letters.len() {
            return Err(BraidError::PositionOutOfRange {
                pos: k,
                limit: self.letters.len(),
            });
        }
        let cut = self.letters.len() - k;
        let mut letters = Vec::with_capacity(self.letters.len());
        letters.extend_from_slice(&self.letters[cut..]);
        letters.extend_from_slice(&self.letters[..cut]);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Insert sigma_n^sign at letter position `at`, moving to B_{n+1}. With
    /// `at == len()` this is bottom stabilization.
    pub fn stabilize(&self, at: usize, sign: Sign) -> Result<BraidWord, BraidError> {
        if at > self.letters.len() {
            return Err(BraidError::PositionOutOfRange {
                pos: at,
                limit: self.letters.len(),
            });
        }
        let mut letters = self.letters.clone();
        letters.insert(at, Letter::new(self.strands, sign));
        Ok(BraidWord {
            strands: self.strands + 1,
            letters,
        })
    }

    /// Map every index i to n - i. This is conjugation by the half twist
    /// (Delta sigma_i Delta^-1 = sigma_{n-i}), so the closure is unchanged.
    pub fn flip(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(self.strands - l.index, l.sign))
                .collect(),
        }
    }

    /// If sigma_{n-1} occurs exactly once (any sign, any position), remove it
    /// and drop to B_{n-1}. Positions other than the end are justified by
    /// commuting; this is a composite move.
    pub fn destabilize(&self) -> Option<BraidWord> {
        if self.strands < 2 {
            return None;
        }
        let top = self.strands - 1;
        let mut found = None;
        for (i, l) in self.letters.iter().enumerate() {
            if l.index == top {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        let at = found?;
        let mut letters = self.letters.clone();
        letters.remove(at);
        Some(BraidWord {
            strands: self.strands - 1,
            letters,
        })
    }
}

/// The two defining relation families of Eq.-style braid presentations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    YangBaxter,
    FarCommute,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

/// Signed Yang-Baxter rewrites. Each row is an identity in the braid group
/// derived from sigma_i sigma_{i+1} sigma_i = sigma_{i+1} sigma_i sigma_{i+1}:
/// a window (p, q, p) with |p - q| = 1 and signs matching the left column
/// rewrites to (q, p, q) with the right column's signs. Backward swaps the
/// roles of the columns. Rows 1-2 are self-paired; rows 3/4 and 5/6 are
/// mutually inverse, so both directions reach the same neighbours.
const YB_RULES: [([Sign; 3], [Sign; 3]); 6] = {
    use Sign::{Neg as N, Pos as P};
    [
        ([P, P, P], [P, P, P]),
        ([N, N, N], [N, N, N]),
        ([P, P, N], [N, P, P]),
        ([N, P, P], [P, P, N]),
        ([P, N, N], [N, N, P]),
        ([N, N, P], [P, N, N]),
    ]
};

fn yang_baxter_rewrite(w: [Letter; 3], direction: Direction) -> Option<[Letter; 3]> {
    let (p, q) = (w[0].index, w[1].index);
    if w[2].index != p || p.abs_diff(q) != 1 {
        return None;
    }
    let signs = [w[0].sign, w[1].sign, w[2].sign];
    for (lhs, rhs) in YB_RULES {
        let (pat, out) = match direction {
            Direction::Forward => (lhs, rhs),
            Direction::Backward => (rhs, lhs),
        };
        if signs == pat {
            return Some([
                Letter::new(q, out[0]),
                Letter::new(p, out[1]),
                Letter::new(q, out[2]),
            ]);
        }
    }
    None
}

/// Bijection on 1..n recording where each top position lands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of top position `p` (1-based).
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] - 1;
            }
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

// ---------------------------------------------------------------------------
// Text and JSON formats
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Braid {
        line: usize,
        #[source]
        source: BraidError,
    },
}

impl fmt::Display for BraidWord {
    /// Text format: `B<n>:` followed by the signed letters, e.g. `B3: 1 -2 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {}", l.to_signed())?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let syntax = |msg: String| ParseError::Syntax { line: 1, msg };
        let s = s.trim();
        let rest = s
            .strip_prefix('B')
            .ok_or_else(|| syntax("expected header `B<n>:`".into()))?;
        let (n_str, body) = rest
            .split_once(':')
            .ok_or_else(|| syntax("missing `:` after strand count".into()))?;
        let strands: usize = n_str
            .trim()
            .parse()
            .map_err(|_| syntax(format!("invalid strand count `{}`", n_str.trim())))?;
        let mut signed = Vec::new();
        for tok in body.split_whitespace() {
            let k: i64 = tok
                .parse()
                .map_err(|_| syntax(format!("invalid letter `{tok}`")))?;
            if k == 0 {
                return Err(syntax("letter 0 is not a generator".into()));
            }
            signed.push(k);
        }
        BraidWord::from_signed(strands, &signed).map_err(|source| ParseError::Braid { line: 1, source })
    }
}

#[derive(Serialize, Deserialize)]
struct BraidJson {
    strands: usize,
    letters: Vec<i64>,
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BraidJson {
            strands: self.strands,
            letters: self.signed_letters(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BraidJson::deserialize(deserializer)?;
        BraidWord::from_signed(raw.strands, &raw.letters).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn bw(strands: usize, letters: &[i64]) -> BraidWord {
        BraidWord::from_signed(strands, letters).unwrap()
    }

    #[test]
    fn compose_concatenates_without_reduction() {
        let e = BraidWord::identity(3);
        let s1 = bw(3, &[1]);
        assert_eq!(e.compose(&s1).unwrap(), s1);
        assert_eq!(bw(3, &[1]).compose(&bw(3, &[-2])).unwrap(), bw(3, &[1, -2]));
        assert_eq!(
            bw(3, &[1, 2]).compose(&bw(3, &[-2, -1])).unwrap(),
            bw(3, &[1, 2, -2, -1])
        );
        assert_eq!(
            bw(2, &[1]).compose(&bw(3, &[1])),
            Err(BraidError::StrandMismatch(2, 3))
        );
    }

    #[test]
    fn invert_reverses_and_negates() {
        assert_eq!(BraidWord::identity(2).invert(), BraidWord::identity(2));
        assert_eq!(bw(3, &[1, -2]).invert(), bw(3, &[2, -1]));
        assert_eq!(bw(2, &[1, 1]).invert(), bw(2, &[-1, -1]));
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(bw(2, &[1, -1]).free_reduce(), BraidWord::identity(2));
        assert_eq!(bw(3, &[-2, 1, -1, 2, 2]).free_reduce(), bw(3, &[2]));
        assert_eq!(bw(3, &[1, 2, 1]).free_reduce(), bw(3, &[1, 2, 1]));
    }

    /// Oracle for confluence: delete one cancelling pair at a time, in every
    /// possible order, and check all outcomes agree with `free_reduce`.
    fn reduce_all_orders(w: &BraidWord) -> std::collections::BTreeSet<BraidWord> {
        fn go(letters: &[Letter], strands: usize, out: &mut std::collections::BTreeSet<BraidWord>) {
            let mut any = false;
            for i in 0..letters.len().saturating_sub(1) {
                if letters[i].cancels(letters[i + 1]) {
                    any = true;
                    let mut next = letters.to_vec();
                    next.drain(i..i + 2);
                    go(&next, strands, out);
                }
            }
            if !any {
                out.insert(BraidWord::new(strands, letters.to_vec()).unwrap());
            }
        }
        let mut out = std::collections::BTreeSet::new();
        go(w.letters(), w.strands(), &mut out);
        out
    }

    #[test]
    fn free_reduce_is_confluent_and_idempotent() {
        let mut rng = crate::gen::SplitMix64::new(7);
        for _ in 0..200 {
            let w = crate::gen::random_word(&mut rng, 4, 8);
            let all = reduce_all_orders(&w);
            assert_eq!(all.len(), 1, "deletion orders disagree on {w}");
            let r = w.free_reduce();
            assert!(all.contains(&r));
            assert_eq!(r.free_reduce(), r);
        }
    }

    #[test]
    fn compose_with_inverse_reduces_to_identity() {
        let mut rng = crate::gen::SplitMix64::new(11);
        for _ in 0..500 {
            let w = crate::gen::random_word(&mut rng, 5, 12);
            let prod = w.compose(&w.invert()).unwrap();
            assert_eq!(prod.free_reduce(), BraidWord::identity(w.strands()));
        }
    }

    #[test]
    fn relation_examples() {
        let w = bw(3, &[1, 2, 1]);
        assert_eq!(
            w.apply_relation(0, RelationKind::YangBaxter, Direction::Forward)
                .unwrap(),
            bw(3, &[2, 1, 2])
        );
        let v = bw(4, &[1, 3]);
        assert_eq!(
            v.apply_relation(0, RelationKind::FarCommute, Direction::Forward)
                .unwrap(),
            bw(4, &[3, 1])
        );
        assert_eq!(
            bw(3, &[1, 2]).apply_relation(0, RelationKind::FarCommute, Direction::Forward),
            Err(BraidError::RelationMismatch {
                kind: "far_commute",
                pos: 0
            })
        );
    }

    #[test]
    fn signed_relation_variants_preserve_invariants() {
        use Direction::*;
        let words = [
            bw(3, &[1, 2, -1]),
            bw(3, &[-1, 2, 1]),
            bw(3, &[1, -2, -1]),
            bw(3, &[-1, -2, 1]),
            bw(3, &[-2, -1, -2]),
        ];
        for w in words {
            for dir in [Forward, Backward] {
                if let Ok(v) = w.apply_relation(0, RelationKind::YangBaxter, dir) {
                    assert_eq!(v.permutation(), w.permutation(), "{w} -> {v}");
                    assert_eq!(v.exponent_sum(), w.exponent_sum());
                    assert_eq!(v.closure_components(), w.closure_components());
                }
            }
        }
        // (+,+,-) forward must produce the derived form sigma_j^-1 sigma_i sigma_j
        assert_eq!(
            bw(3, &[1, 2, -1])
                .apply_relation(0, RelationKind::YangBaxter, Direction::Forward)
                .unwrap(),
            bw(3, &[-2, 1, 2])
        );
    }

    #[test]
    fn permutation_examples() {
        assert!(BraidWord::identity(3).permutation().is_identity());
        assert_eq!(bw(2, &[1]).permutation().images(), &[2, 1]);
        // (1 2) then (2 3) sends 1->3, 2->1, 3->2: one 3-cycle.
        let p = bw(3, &[1, 2]).permutation();
        assert_eq!(p.images(), &[3, 1, 2]);
        assert_eq!(p.cycle_count(), 1);
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(BraidWord::identity(1).exponent_sum(), 0);
        assert_eq!(bw(2, &[1, 1, 1]).exponent_sum(), 3);
        assert_eq!(bw(3, &[1, -2]).exponent_sum(), 0);
    }

    #[test]
    fn closure_component_examples() {
        assert_eq!(BraidWord::identity(3).closure_components(), 3);
        assert_eq!(bw(2, &[1]).closure_components(), 1);
        assert_eq!(bw(2, &[1, 1]).closure_components(), 2);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(
            BraidWord::identity(2)
                .conjugate(1, Sign::Pos)
                .unwrap()
                .free_reduce(),
            BraidWord::identity(2)
        );
        assert_eq!(bw(3, &[2]).conjugate(1, Sign::Pos).unwrap(), bw(3, &[-1, 2, 1]));
        assert!(bw(3, &[2]).conjugate(3, Sign::Pos).is_err());
        let mut rng = crate::gen::SplitMix64::new(3);
        for _ in 0..100 {
            let w = crate::gen::random_word(&mut rng, 4, 9);
            let i = 1 + (rng.next_below(3)) as usize;
            let s = rng.next_sign();
            let c = w.conjugate(i, s).unwrap();
            assert_eq!(c.exponent_sum(), w.exponent_sum());
            assert_eq!(c.closure_components(), w.closure_components());
        }
    }

    #[test]
    fn rotate_examples() {
        let w = bw(3, &[1, 2]);
        assert_eq!(w.commute_rotate(1).unwrap(), bw(3, &[2, 1]));
        assert_eq!(w.commute_rotate(0).unwrap(), w);
        assert_eq!(w.commute_rotate(2).unwrap(), w);
        assert!(w.commute_rotate(3).is_err());
    }

    #[test]
    fn stabilize_destabilize_examples() {
        let w = bw(2, &[1]).stabilize(1, Sign::Pos).unwrap();
        assert_eq!(w, bw(3, &[1, 2]));
        let u = BraidWord::identity(1).stabilize(0, Sign::Neg).unwrap();
        assert_eq!(u, bw(2, &[-1]));
        assert_eq!(u.closure_components(), 1);
        let v = bw(2, &[1, 1]).stabilize(1, Sign::Pos).unwrap();
        assert_eq!(v, bw(3, &[1, 2, 1]));
        assert_eq!(v.closure_components(), bw(2, &[1, 1]).closure_components());

        assert_eq!(bw(3, &[1, 2]).destabilize(), Some(bw(2, &[1])));
        assert_eq!(bw(3, &[2, 1, -2]).destabilize(), None);
        assert_eq!(bw(2, &[1]).destabilize(), Some(BraidWord::identity(1)));
        assert_eq!(BraidWord::identity(1).destabilize(), None);
    }

    #[test]
    fn stabilize_then_destabilize_roundtrips() {
        let mut rng = crate::gen::SplitMix64::new(23);
        for _ in 0..100 {
            let w = crate::gen::random_word(&mut rng, 4, 7);
            let at = (rng.next_below(w.len() as u64 + 1)) as usize;
            let s = rng.next_sign();
            let v = w.stabilize(at, s).unwrap();
            assert_eq!(v.destabilize(), Some(w.clone()));
        }
    }

    #[test]
    fn text_roundtrip() {
        let w = bw(3, &[1, -2, 1]);
        assert_eq!(w.to_string(), "B3: 1 -2 1");
        assert_eq!("B3: 1 -2 1".parse::<BraidWord>().unwrap(), w);
        assert_eq!("B3:".parse::<BraidWord>().unwrap(), BraidWord::identity(3));
        assert_eq!(BraidWord::identity(3).to_string(), "B3:");
        assert!("B0: 1".parse::<BraidWord>().is_err());
        assert!("B3: 0".parse::<BraidWord>().is_err());
        assert!("B3: 5".parse::<BraidWord>().is_err());
    }

    #[test]
    fn json_roundtrip() {
        let w = bw(3, &[1, -2, 1]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"strands":3,"letters":[1,-2,1]}"#);
        assert_eq!(serde_json::from_str::<BraidWord>(&s).unwrap(), w);
    }
}
