//! Packed bit vector shared by the polynomial types.

/// Growable bit vector over `u64` words. Trailing zero words are always
/// trimmed, so structural equality is set equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(mut words: Vec<u64>) -> Self {
        trim(&mut words);
        Bits { words }
    }

    pub(crate) fn get(&self, idx: u64) -> bool {
        let w = (idx / 64) as usize;
        w < self.words.len() && (self.words[w] >> (idx % 64)) & 1 == 1
    }

    pub(crate) fn toggle(&mut self, idx: u64) {
        let w = (idx / 64) as usize;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (idx % 64);
        trim(&mut self.words);
    }

    pub(crate) fn xor_assign(&mut self, other: &Bits) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (dst, src) in self.words.iter_mut().zip(&other.words) {
            *dst ^= src;
        }
        trim(&mut self.words);
    }

    /// `self ^= src << shift`, without materialising the shifted copy.
    pub(crate) fn xor_shl_assign(&mut self, src: &Bits, shift: u64) {
        if src.words.is_empty() {
            return;
        }
        let ws = (shift / 64) as usize;
        let bs = (shift % 64) as u32;
        let need = src.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        if bs == 0 {
            for (i, &w) in src.words.iter().enumerate() {
                self.words[i + ws] ^= w;
            }
        } else {
            for (i, &w) in src.words.iter().enumerate() {
                self.words[i + ws] ^= w << bs;
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        trim(&mut self.words);
    }

    pub(crate) fn shl(&self, shift: u64) -> Bits {
        let mut out = Bits::default();
        out.xor_shl_assign(self, shift);
        out
    }

    pub(crate) fn highest(&self) -> Option<u64> {
        let last = *self.words.last()?;
        Some((self.words.len() as u64 - 1) * 64 + 63 - last.leading_zeros() as u64)
    }

    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Set bit positions in ascending order.
    pub(crate) fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            pos: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

pub(crate) struct Ones<'a> {
    words: &'a [u64],
    pos: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.cur == 0 {
            self.pos += 1;
            if self.pos >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.pos];
        }
        let tz = self.cur.trailing_zeros() as u64;
        self.cur &= self.cur - 1;
        Some(self.pos as u64 * 64 + tz)
    }
}
