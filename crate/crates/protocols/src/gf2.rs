//! Dense GF(2) vectors and a span solver for answering queries from
//! stored combinations.

use crate::combo::{SymbolId, XorCombo};

/// Bit-packed GF(2) vector of fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.words.len() * 64).filter(|&i| self.get(i))
    }
}

/// Index of `sym` in a flat `K * L` layout.
pub fn symbol_index(sym: SymbolId, message_len: u32) -> usize {
    (sym.message * message_len + sym.part) as usize
}

pub fn combo_bits(c: &XorCombo, messages: u32, message_len: u32) -> BitVec {
    let mut v = BitVec::zeros((messages * message_len) as usize);
    for s in c.symbols() {
        v.flip(symbol_index(*s, message_len));
    }
    v
}

/// Expresses targets as sums of a fixed list of generators.
#[derive(Debug, Clone)]
pub struct SpanSolver {
    generators: usize,
    /// Echelon rows: (pivot, vector, which generators sum to it).
    basis: Vec<(usize, BitVec, BitVec)>,
}

impl SpanSolver {
    pub fn new(generators: &[BitVec]) -> Self {
        let mut solver = Self {
            generators: generators.len(),
            basis: Vec::new(),
        };
        for (i, g) in generators.iter().enumerate() {
            let mut tag = BitVec::zeros(generators.len());
            tag.flip(i);
            let (rest, tag) = solver.reduce(g.clone(), tag);
            if let Some(p) = rest.leading() {
                solver.basis.push((p, rest, tag));
            }
        }
        solver
    }

    fn reduce(&self, mut v: BitVec, mut tag: BitVec) -> (BitVec, BitVec) {
        for (p, row, row_tag) in &self.basis {
            if v.get(*p) {
                v.xor_assign(row);
                tag.xor_assign(row_tag);
            }
        }
        (v, tag)
    }

    /// Indices of generators summing to `target`, or `None` if outside the span.
    pub fn solve(&self, target: &BitVec) -> Option<Vec<usize>> {
        let (rest, tag) = self.reduce(target.clone(), BitVec::zeros(self.generators));
        rest.is_zero().then(|| tag.ones().collect())
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}
