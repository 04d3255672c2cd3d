//! Message symbols and their XOR combinations.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

/// Symbol `part` of message `message`, both zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SymbolId {
    pub message: u32,
    pub part: u32,
}

impl SymbolId {
    pub fn new(message: u32, part: u32) -> Self {
        Self { message, part }
    }
}

/// The GF(2) sum of a set of symbols. The empty combo stands for "nothing".
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct XorCombo(BTreeSet<SymbolId>);

impl XorCombo {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(sym: SymbolId) -> Self {
        Self(BTreeSet::from([sym]))
    }

    /// Combination of part 0 of each listed message; repeated indices cancel.
    pub fn of_messages(messages: impl IntoIterator<Item = u32>) -> Self {
        messages
            .into_iter()
            .fold(Self::empty(), |acc, m| acc.xor(&Self::single(SymbolId::new(m, 0))))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &SymbolId> {
        self.0.iter()
    }

    pub fn contains(&self, sym: &SymbolId) -> bool {
        self.0.contains(sym)
    }

    pub fn xor(&self, other: &Self) -> Self {
        Self(self.0.symmetric_difference(&other.0).copied().collect())
    }

    pub fn xor_assign(&mut self, other: &Self) {
        for s in &other.0 {
            if !self.0.remove(s) {
                self.0.insert(*s);
            }
        }
    }

    /// Applies `f` to every symbol.
    pub fn map_symbols(&self, f: impl Fn(SymbolId) -> SymbolId) -> Self {
        self.0
            .iter()
            .fold(Self::empty(), |acc, s| acc.xor(&Self::single(f(*s))))
    }

    /// Renders as `a^b^c`; see [`SymbolNames`].
    pub fn render(&self, names: &SymbolNames) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        self.0.iter().map(|s| names.name(*s)).collect::<Vec<_>>().join("^")
    }
}

impl FromIterator<SymbolId> for XorCombo {
    fn from_iter<I: IntoIterator<Item = SymbolId>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Self::empty(), |acc, s| acc.xor(&Self::single(s)))
    }
}

/// Naming scheme for symbols in table dumps: letters `a..z` while `K <= 26`,
/// otherwise `W<k>`; a part suffix `_<p>` (one-based) when `L > 1`.
#[derive(Debug, Clone, Copy)]
pub struct SymbolNames {
    pub messages: u32,
    pub message_len: u32,
}

impl SymbolNames {
    pub fn name(&self, s: SymbolId) -> String {
        let base = if self.messages <= 26 {
            char::from(b'a' + s.message as u8).to_string()
        } else {
            format!("W{}", s.message + 1)
        };
        if self.message_len > 1 {
            format!("{base}_{}", s.part + 1)
        } else {
            base
        }
    }
}

impl fmt::Display for XorCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = SymbolNames {
            messages: self.0.iter().map(|s| s.message + 1).max().unwrap_or(0),
            message_len: self.0.iter().map(|s| s.part + 1).max().unwrap_or(1),
        };
        f.write_str(&self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_cancels() {
        let ab = XorCombo::of_messages([0, 1]);
        let ac = XorCombo::of_messages([0, 2]);
        assert_eq!(ab.xor(&ac), XorCombo::of_messages([1, 2]));
        assert!(ab.xor(&ab).is_empty());
        assert!(XorCombo::of_messages([3, 3]).is_empty());
    }

    #[test]
    fn rendering() {
        let names = SymbolNames { messages: 3, message_len: 1 };
        assert_eq!(XorCombo::of_messages([2, 0]).render(&names), "a^c");
        assert_eq!(XorCombo::empty().render(&names), "∅");
        let long = SymbolNames { messages: 30, message_len: 2 };
        assert_eq!(long.name(SymbolId::new(27, 1)), "W28_2");
    }
}
