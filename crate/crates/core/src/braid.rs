//! Braid words, flat braid graphs, Markov moves and standard families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid needs at least one strand")]
    NoStrands,
    #[error("generator {letter} is out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("cannot parse braid letter {0:?}")]
    Parse(String),
}

/// A braid on `strands` strands; letter `i` is σ_i and `-i` is σ_i⁻¹.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureStats {
    pub writhe: i32,
    pub components: usize,
    /// `permutation[k]` is where the strand starting at position `k` ends.
    pub permutation: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parse whitespace- or comma-separated signed generator indices.
    pub fn parse(strands: usize, text: &str) -> Result<Self, BraidError> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i32>().map_err(|_| BraidError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, letters)
    }

    pub fn unknot() -> Self {
        BraidWord { strands: 1, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i32 {
        self.letters.iter().map(|l| l.signum()).sum()
    }

    pub fn permutation(&self) -> Vec<usize> {
        // pos[k] = current position of the strand that started at k
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[position] = strand
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn closure_stats(&self) -> ClosureStats {
        let permutation = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut components = 0;
        for s in 0..self.strands {
            if !seen[s] {
                components += 1;
                let mut k = s;
                while !seen[k] {
                    seen[k] = true;
                    k = permutation[k];
                }
            }
        }
        ClosureStats { writhe: self.writhe(), components, permutation }
    }

    pub fn is_knot(&self) -> bool {
        self.closure_stats().components == 1
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn mirror(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    /// Cancel adjacent `i, -i` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// σ_i⁻¹ · w · σ_i (as the letter sequence `-i, w, i`).
    pub fn conjugate(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.strands);
        let mut letters = vec![-(i as i32)];
        letters.extend_from_slice(&self.letters);
        letters.push(i as i32);
        BraidWord { strands: self.strands, letters }
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Append σ_n^{±1} on one extra strand.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        BraidWord { strands: self.strands + 1, letters }
    }

    /// Both stabilizations followed by the conjugates by each generator.
    pub fn markov_variants(&self) -> Vec<BraidWord> {
        let mut out = vec![self.stabilize(true), self.stabilize(false)];
        for i in 1..self.strands {
            out.push(self.conjugate(i));
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.strands, self.to_text())
    }
}

/// Text format: strand count followed by the letters.
impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut it = s.split_whitespace();
        let n = it.next().ok_or(BraidError::NoStrands)?;
        let n: usize = n.parse().map_err(|_| BraidError::Parse(n.to_string()))?;
        let rest: Vec<&str> = it.collect();
        BraidWord::parse(n, &rest.join(" "))
    }
}

/// (σ₁⋯σ_{n−1})^m on `n` strands.
pub fn torus_braid(n: usize, m: usize) -> BraidWord {
    assert!(n >= 1);
    let mut letters = Vec::with_capacity((n - 1) * m);
    for _ in 0..m {
        letters.extend(1..n as i32);
    }
    BraidWord { strands: n, letters }
}

pub fn full_twist(n: usize) -> BraidWord {
    torus_braid(n, n)
}

/// A product of elementary graphs D_•^{(i,i+1)}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlatGraph {
    strands: usize,
    dots: Vec<usize>,
}

impl FlatGraph {
    pub fn new(strands: usize, dots: Vec<usize>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &d in &dots {
            if d == 0 || d >= strands {
                return Err(BraidError::LetterOutOfRange { letter: d as i32, strands });
            }
        }
        Ok(FlatGraph { strands, dots })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn dots(&self) -> &[usize] {
        &self.dots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_stats() {
        let s = BraidWord::new(2, vec![1, 1, 1]).unwrap().closure_stats();
        assert_eq!((s.writhe, s.components), (3, 1));
    }

    #[test]
    fn identity_braid_stats() {
        let s = BraidWord::new(3, vec![]).unwrap().closure_stats();
        assert_eq!((s.writhe, s.components), (0, 3));
    }

    #[test]
    fn figure_eight_stats() {
        let s = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap().closure_stats();
        assert_eq!((s.writhe, s.components), (0, 1));
    }

    #[test]
    fn torus_family() {
        assert_eq!(torus_braid(2, 3).letters(), &[1, 1, 1]);
        assert!(torus_braid(3, 0).is_empty());
        assert_eq!(torus_braid(3, 4).letters(), &[1, 2, 1, 2, 1, 2, 1, 2]);
        assert_eq!(full_twist(3), torus_braid(3, 3));
    }

    #[test]
    fn markov_variants_of_trefoil() {
        let v = BraidWord::new(2, vec![1, 1, 1]).unwrap().markov_variants();
        assert!(v.contains(&BraidWord::new(3, vec![1, 1, 1, 2]).unwrap()));
        assert!(v.contains(&BraidWord::new(3, vec![1, 1, 1, -2]).unwrap()));
    }

    #[test]
    fn conjugation_reduces_back() {
        let w = BraidWord::new(2, vec![1]).unwrap();
        let c = w.conjugate(1);
        assert_eq!(c.letters(), &[-1, 1, 1]);
        assert_eq!(c.free_reduce(), w);
    }

    #[test]
    fn stabilizing_the_trivial_braid() {
        let v = BraidWord::unknot().markov_variants();
        assert_eq!(v, vec![BraidWord::new(2, vec![1]).unwrap(), BraidWord::new(2, vec![-1]).unwrap()]);
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(2, vec![0]).is_err());
        assert!(BraidWord::parse(3, "1 x").is_err());
        assert_eq!("3 1 -2".parse::<BraidWord>().unwrap().letters(), &[1, -2]);
    }
}
