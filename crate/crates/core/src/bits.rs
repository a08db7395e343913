//! Word-level helpers for fixed-width bit rows.

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[inline]
pub fn test(row: &[u64], i: usize) -> bool {
    row[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i >> 6] |= 1 << (i & 63);
}

#[inline]
pub fn clear(row: &mut [u64], i: usize) {
    row[i >> 6] &= !(1 << (i & 63));
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn is_empty(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

#[inline]
pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

#[inline]
pub fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

#[inline]
pub fn first(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Iterates the set bits of a row in increasing order.
pub fn ones(row: &[u64]) -> Ones<'_> {
    Ones {
        row,
        word: 0,
        cur: row.first().copied().unwrap_or(0),
    }
}

pub struct Ones<'a> {
    row: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * 64 + t);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.cur = self.row[self.word];
        }
    }
}

/// A row with the low `n` bits set.
pub fn full(n: usize) -> Vec<u64> {
    let mut row = vec![0u64; words_for(n)];
    for (i, w) in row.iter_mut().enumerate() {
        let lo = i * 64;
        if n >= lo + 64 {
            *w = u64::MAX;
        } else if n > lo {
            *w = (1u64 << (n - lo)) - 1;
        }
    }
    row
}
