use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::trees::{Letter, Word};

/// Descent set of a ribbon word: bit `i` is set when letter `i` is `-`.
pub fn descent_mask(w: &Word) -> u32 {
    w.letters()
        .iter()
        .enumerate()
        .filter(|(_, l)| **l == Letter::Minus)
        .fold(0, |m, (i, _)| m | (1 << i))
}

pub fn mask_word(mask: u32, len: usize) -> Word {
    Word((0..len).map(|i| if mask >> i & 1 == 1 { Letter::Minus } else { Letter::Plus }).collect())
}

fn composition(mask: u32, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut last = 0;
    for i in 1..n {
        if mask >> (i - 1) & 1 == 1 {
            parts.push(i - last);
            last = i;
        }
    }
    parts.push(n - last);
    parts
}

fn composition_mask(parts: &[usize]) -> u32 {
    let mut mask = 0;
    let mut acc = 0;
    for p in &parts[..parts.len() - 1] {
        acc += p;
        mask |= 1 << (acc - 1);
    }
    mask
}

/// How the cells of a contingency matrix are read into a composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadOrder {
    Rows,
    Columns,
}

/// Solomon's rule: the product of the complete functions `S^I` and `S^J`
/// is the sum over the integer matrices with row sums `I` and column
/// sums `J` of `S^K`, `K` the nonzero cells read in the given order.
pub fn compositions_product(i: &[usize], j: &[usize], order: ReadOrder) -> BTreeMap<Vec<usize>, i64> {
    let mut out = BTreeMap::new();
    let mut matrix = vec![vec![0usize; j.len()]; i.len()];
    let mut cols = j.to_vec();
    fill(i, 0, 0, &mut cols, &mut matrix, &mut |m| {
        let cells: Vec<usize> = match order {
            ReadOrder::Rows => m.iter().flatten().copied().filter(|&c| c > 0).collect(),
            ReadOrder::Columns => (0..j.len())
                .flat_map(|c| m.iter().map(move |row| row[c]))
                .filter(|&c| c > 0)
                .collect(),
        };
        *out.entry(cells).or_insert(0) += 1;
    });
    out
}

fn fill(
    rows: &[usize],
    r: usize,
    c: usize,
    cols: &mut [usize],
    m: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if r == rows.len() {
        if cols.iter().all(|&x| x == 0) {
            emit(m);
        }
        return;
    }
    let used: usize = m[r][..c].iter().sum();
    let left = rows[r] - used;
    if c + 1 == cols.len() {
        if left <= cols[c] {
            m[r][c] = left;
            cols[c] -= left;
            fill(rows, r + 1, 0, cols, m, emit);
            cols[c] += left;
            m[r][c] = 0;
        }
        return;
    }
    for v in 0..=left.min(cols[c]) {
        m[r][c] = v;
        cols[c] -= v;
        fill(rows, r, c + 1, cols, m, emit);
        cols[c] += v;
    }
    m[r][c] = 0;
}

/// Dense structure constants of the internal product on ribbons:
/// `table[a * size * size + b * size + c]` is the coefficient of `R_c` in
/// `R_a · R_b`.
pub(crate) struct RibbonTable {
    pub size: usize,
    pub entries: Vec<Vec<(u32, i64)>>,
}

pub(crate) const READ_ORDER: ReadOrder = ReadOrder::Columns;

pub(crate) fn ribbon_table(n: usize) -> Arc<RibbonTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<RibbonTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(build_table(n, READ_ORDER));
    cache.lock().unwrap().insert(n, t.clone());
    t
}

pub(crate) fn build_table(n: usize, order: ReadOrder) -> RibbonTable {
    let bits = n - 1;
    let size = 1usize << bits;
    let mut dense = vec![0i64; size * size * size];
    for a in 0..size {
        for b in 0..size {
            let prod = compositions_product(&composition(a as u32, n), &composition(b as u32, n), order);
            for (k, v) in prod {
                dense[(a * size + b) * size + composition_mask(&k) as usize] += v;
            }
        }
    }
    // S_F = sum of R_G over G ⊆ F: push each S coefficient to subsets
    for bit in 0..bits {
        for ab in 0..size * size {
            let row = &mut dense[ab * size..(ab + 1) * size];
            for f in 0..size {
                if f >> bit & 1 == 1 {
                    row[f & !(1 << bit)] += row[f];
                }
            }
        }
    }
    // R_D = signed sum of S_E over E ⊆ D, on both factors
    for bit in 0..bits {
        for a in 0..size {
            if a >> bit & 1 == 0 {
                continue;
            }
            let lower = a & !(1 << bit);
            for rest in 0..size * size {
                let hi = a * size * size + rest;
                let lo = lower * size * size + rest;
                dense[hi] -= dense[lo];
            }
        }
        for b in 0..size {
            if b >> bit & 1 == 0 {
                continue;
            }
            let lower = b & !(1 << bit);
            for a in 0..size {
                for c in 0..size {
                    let hi = (a * size + b) * size + c;
                    let lo = (a * size + lower) * size + c;
                    dense[hi] -= dense[lo];
                }
            }
        }
    }
    let entries = (0..size * size)
        .map(|ab| {
            (0..size)
                .filter_map(|c| {
                    let v = dense[ab * size + c];
                    (v != 0).then_some((c as u32, v))
                })
                .collect()
        })
        .collect();
    RibbonTable { size, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_and_compositions() {
        let w: Word = "-+++--+".parse().unwrap();
        assert_eq!(composition(descent_mask(&w), 8), vec![1, 4, 1, 2]);
        assert_eq!(composition_mask(&[1, 4, 1, 2]), descent_mask(&w));
        assert_eq!(mask_word(descent_mask(&w), 7), w);
    }

    #[test]
    fn matrix_count_is_multinomial_for_singletons() {
        // S^(n) is the unit of the internal product
        let p = compositions_product(&[4], &[1, 2, 1], ReadOrder::Rows);
        assert_eq!(p.len(), 1);
        assert_eq!(p[&vec![1, 2, 1]], 1);
        let q = compositions_product(&[1, 1], &[1, 1], ReadOrder::Rows);
        assert_eq!(q.values().sum::<i64>(), 2);
    }

    #[test]
    fn top_ribbon_is_the_unit() {
        // R_{(n)} = S^{(n)} is the identity permutation
        let t = build_table(4, READ_ORDER);
        for b in 0..t.size {
            assert_eq!(t.entries[b], vec![(b as u32, 1)]);
            assert_eq!(t.entries[b * t.size], vec![(b as u32, 1)]);
        }
    }
}
