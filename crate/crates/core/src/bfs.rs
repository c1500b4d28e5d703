//! Bit-parallel breadth-first search over a finite Abelian group.
//!
//! Elements are indexed mixed-radix with the last invariant factor varying
//! fastest. The last coordinate is stored as a bit row; a generator step
//! rotates every row and moves it to the row of `R + g_hi`.

use crate::groups::AbelianGroup;

const ROW_TABLE_CAP: usize = 1 << 24;

enum RowMaps {
    Single,
    Table(Vec<u32>),
    PerStep,
}

pub(crate) struct Engine {
    order: u64,
    row_len: usize,
    words: usize,
    rows: usize,
    row_radix: Vec<u64>,
    tail_mask: u64,
    maps: RowMaps,
}

pub(crate) enum RowMap {
    Identity,
    Table(usize),
    Owned(Vec<u32>),
}

pub(crate) struct Step {
    map: RowMap,
    shift: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Reached(u64),
    Stalled,
    Exceeded,
}

#[derive(Default)]
pub(crate) struct Scratch {
    visited: Vec<u64>,
    frontier: Vec<u64>,
    next: Vec<u64>,
}

impl Engine {
    pub fn new(group: &AbelianGroup) -> Self {
        let f = group.factors();
        let row_len = *f.last().unwrap() as usize;
        let words = row_len.div_ceil(64);
        let row_radix = f[..f.len() - 1].to_vec();
        let rows = row_radix.iter().product::<u64>() as usize;
        let bits = row_len % 64;
        let tail_mask = if bits == 0 { u64::MAX } else { (1u64 << bits) - 1 };
        let maps = if rows == 1 {
            RowMaps::Single
        } else if rows.saturating_mul(rows) <= ROW_TABLE_CAP {
            let mut table = vec![0u32; rows * rows];
            for a in 0..rows {
                let ca = decode(a, &row_radix);
                for r in 0..rows {
                    let cr = decode(r, &row_radix);
                    table[a * rows + r] = encode_sum(&ca, &cr, &row_radix) as u32;
                }
            }
            RowMaps::Table(table)
        } else {
            RowMaps::PerStep
        };
        Engine { order: group.order(), row_len, words, rows, row_radix, tail_mask, maps }
    }

    /// Step adding the element with the given reduced coordinates.
    pub fn step(&self, coords: &[u64]) -> Step {
        let (hi, last) = coords.split_at(coords.len() - 1);
        let shift = last[0] as usize;
        let map = match &self.maps {
            RowMaps::Single => RowMap::Identity,
            RowMaps::Table(_) => RowMap::Table(encode(hi, &self.row_radix)),
            RowMaps::PerStep => RowMap::Owned(
                (0..self.rows)
                    .map(|r| encode_sum(hi, &decode(r, &self.row_radix), &self.row_radix) as u32)
                    .collect(),
            ),
        };
        Step { map, shift }
    }

    /// Step adding the element with the given index.
    pub fn step_index(&self, index: usize) -> Step {
        let row = index / self.row_len;
        let shift = index % self.row_len;
        let map = match &self.maps {
            RowMaps::Single => RowMap::Identity,
            RowMaps::Table(_) => RowMap::Table(row),
            RowMaps::PerStep => {
                let hi = decode(row, &self.row_radix);
                RowMap::Owned(
                    (0..self.rows)
                        .map(|r| encode_sum(&hi, &decode(r, &self.row_radix), &self.row_radix) as u32)
                        .collect(),
                )
            }
        };
        Step { map, shift }
    }

    /// BFS from the identity. Stops after `limit` levels if given.
    pub fn run(
        &self,
        steps: &[Step],
        limit: Option<u64>,
        scratch: &mut Scratch,
        mut sizes: Option<&mut Vec<u64>>,
    ) -> Outcome {
        let len = self.rows * self.words;
        for buf in [&mut scratch.visited, &mut scratch.frontier, &mut scratch.next] {
            buf.clear();
            buf.resize(len, 0);
        }
        scratch.visited[0] = 1;
        scratch.frontier[0] = 1;
        let mut count = 1u64;
        let mut level = 0u64;
        if let Some(s) = sizes.as_deref_mut() {
            s.clear();
            s.push(1);
        }
        loop {
            if count == self.order {
                return Outcome::Reached(level);
            }
            if limit == Some(level) {
                return Outcome::Exceeded;
            }
            scratch.next.iter_mut().for_each(|w| *w = 0);
            for st in steps {
                self.apply(&scratch.frontier, &mut scratch.next, st);
            }
            let mut fresh = 0u64;
            for (n, v) in scratch.next.iter_mut().zip(scratch.visited.iter_mut()) {
                *n &= !*v;
                *v |= *n;
                fresh += n.count_ones() as u64;
            }
            if fresh == 0 {
                return Outcome::Stalled;
            }
            count += fresh;
            level += 1;
            if let Some(s) = sizes.as_deref_mut() {
                s.push(count);
            }
            std::mem::swap(&mut scratch.frontier, &mut scratch.next);
        }
    }

    fn apply(&self, src: &[u64], dst: &mut [u64], st: &Step) {
        let w = self.words;
        for r in 0..self.rows {
            let row = &src[r * w..(r + 1) * w];
            if row.iter().all(|&x| x == 0) {
                continue;
            }
            let target = match (&st.map, &self.maps) {
                (RowMap::Identity, _) => r,
                (RowMap::Table(a), RowMaps::Table(t)) => t[a * self.rows + r] as usize,
                (RowMap::Owned(m), _) => m[r] as usize,
                (RowMap::Table(_), _) => unreachable!("table step on engine without table"),
            };
            let out = &mut dst[target * w..(target + 1) * w];
            rotate_or(out, row, st.shift, self.row_len, self.tail_mask);
        }
    }
}

fn decode(mut index: usize, radix: &[u64]) -> Vec<u64> {
    let mut c = vec![0u64; radix.len()];
    for j in (0..radix.len()).rev() {
        c[j] = index as u64 % radix[j];
        index /= radix[j] as usize;
    }
    c
}

fn encode(c: &[u64], radix: &[u64]) -> usize {
    c.iter().zip(radix).fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
}

fn encode_sum(a: &[u64], b: &[u64], radix: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .zip(radix)
        .fold(0usize, |acc, ((&x, &y), &m)| acc * m as usize + ((x + y) % m) as usize)
}

/// `dst |= rot(src, s)` on an `m`-bit ring stored in whole words.
fn rotate_or(dst: &mut [u64], src: &[u64], s: usize, m: usize, tail_mask: u64) {
    let w = src.len();
    if s == 0 {
        for (d, x) in dst.iter_mut().zip(src) {
            *d |= *x;
        }
        return;
    }
    if w == 1 {
        let x = src[0];
        dst[0] |= ((x << s) | (x >> (m - s))) & tail_mask;
        return;
    }
    let (ws, bs) = (s / 64, s % 64);
    for i in ws..w {
        let mut v = src[i - ws] << bs;
        if bs > 0 && i > ws {
            v |= src[i - ws - 1] >> (64 - bs);
        }
        dst[i] |= v;
    }
    dst[w - 1] &= tail_mask;
    let t = m - s;
    let (wt, bt) = (t / 64, t % 64);
    for i in 0..w - wt {
        let mut v = src[i + wt] >> bt;
        if bt > 0 && i + wt + 1 < w {
            v |= src[i + wt + 1] << (64 - bt);
        }
        dst[i] |= v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_rot(bits: &[bool], s: usize) -> Vec<bool> {
        let m = bits.len();
        (0..m).map(|j| bits[(j + m - s) % m]).collect()
    }

    #[test]
    fn rotation_matches_naive() {
        for m in [1usize, 5, 63, 64, 65, 127, 128, 130, 200] {
            let words = m.div_ceil(64);
            let tail = if m % 64 == 0 { u64::MAX } else { (1u64 << (m % 64)) - 1 };
            let bits: Vec<bool> = (0..m).map(|j| (j * 7 + j / 3) % 5 < 2).collect();
            let mut src = vec![0u64; words];
            for (j, &b) in bits.iter().enumerate() {
                if b {
                    src[j / 64] |= 1 << (j % 64);
                }
            }
            for s in 0..m {
                let mut dst = vec![0u64; words];
                rotate_or(&mut dst, &src, s, m, tail);
                let want = naive_rot(&bits, s);
                for j in 0..m {
                    assert_eq!((dst[j / 64] >> (j % 64)) & 1 == 1, want[j], "m={m} s={s} j={j}");
                }
                assert_eq!(dst[words - 1] & !tail, 0);
            }
        }
    }
}
