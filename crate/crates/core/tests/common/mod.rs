#![allow(dead_code)]
//! Brute-force oracles written without the library's search code.

use std::collections::BTreeSet;

/// All words over `p` symbols of length `len`.
pub fn all_words(p: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..p as u8).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

fn avoids(w: &[u8], forbidden: &[Vec<u8>]) -> bool {
    forbidden.iter().all(|f| f.len() > w.len() || !w.windows(f.len()).any(|x| x == f.as_slice()))
}

/// Words of the shift of finite type: locally admissible and extendable by
/// `p^(M-1)` further symbols, which forces an infinite extension.
pub fn sft_words(p: usize, forbidden: &[Vec<u8>], len: usize) -> Vec<Vec<u8>> {
    let mem = forbidden.iter().map(Vec::len).max().unwrap_or(1);
    let extra = p.pow(mem.saturating_sub(1) as u32) + 1;
    fn extend(w: &mut Vec<u8>, left: usize, p: usize, forbidden: &[Vec<u8>], mem: usize) -> bool {
        if left == 0 {
            return true;
        }
        for c in 0..p as u8 {
            w.push(c);
            let tail_ok = avoids(&w[w.len().saturating_sub(mem)..], forbidden);
            if tail_ok && extend(w, left - 1, p, forbidden, mem) {
                w.pop();
                return true;
            }
            w.pop();
        }
        false
    }
    all_words(p, len)
        .into_iter()
        .filter(|w| avoids(w, forbidden) && extend(&mut w.clone(), extra, p, forbidden, mem))
        .collect()
}

fn matches_at(w: &[u8], pos: usize, base: &[u8]) -> bool {
    w.get(pos..pos + base.len()) == Some(base)
}

/// The literal definition: every nonempty `J ⊆ F` and every assignment of targets
/// to `J` is realised by some word in `words`.
pub fn literal_independent(words: &[Vec<u8>], targets: &[Vec<Vec<u8>>], f: &[u64]) -> bool {
    let k = targets.len();
    for mask in 1u32..(1 << f.len()) {
        let j: Vec<usize> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i] as usize).collect();
        let total = k.pow(j.len() as u32);
        for code in 0..total {
            let mut c = code;
            let assignment: Vec<usize> = j
                .iter()
                .map(|_| {
                    let t = c % k;
                    c /= k;
                    t
                })
                .collect();
            let ok = words.iter().any(|w| {
                j.iter()
                    .zip(&assignment)
                    .all(|(&pos, &t)| targets[t].iter().any(|b| matches_at(w, pos, b)))
            });
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Largest `G ⊆ [0,k)` on which single-symbol targets `0` and `1` take every pattern.
pub fn binary_profile(words: &[Vec<u8>], k: usize) -> usize {
    let mut best = 0;
    for mask in 0u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let patterns: BTreeSet<u32> = words
            .iter()
            .map(|w| {
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(0u32, |acc, i| acc << 1 | w[i] as u32)
            })
            .collect();
        if patterns.len() == 1 << size {
            best = size;
        }
    }
    best
}

/// Windows `w` of length `m` such that every past `u` of length `n` makes some
/// window of `u w` at position `i ≤ n` lie in `forbidden[i]`.
pub fn no_valid_past(p: usize, m: usize, forbidden: &[Vec<Vec<u8>>], n: usize) -> BTreeSet<Vec<u8>> {
    let pasts = all_words(p, n);
    all_words(p, m)
        .into_iter()
        .filter(|w| {
            pasts.iter().all(|u| {
                let mut x = u.clone();
                x.extend_from_slice(w);
                (0..=n).any(|i| forbidden.get(i).is_some_and(|a| a.iter().any(|f| f.as_slice() == &x[i..i + m])))
            })
        })
        .collect()
}

pub fn has_three_ap(set: &[u64]) -> bool {
    for (a, &x) in set.iter().enumerate() {
        for (b, &y) in set.iter().enumerate().skip(a + 1) {
            for &z in &set[b + 1..] {
                if x + z == 2 * y {
                    return true;
                }
            }
        }
    }
    false
}

/// `max_p |F ∩ (S + p)|` over every integer translate that can meet `F`.
pub fn max_translate_hits(f: &[u64], s: &[u64]) -> usize {
    let fset: BTreeSet<i64> = f.iter().map(|&x| x as i64).collect();
    let (fmax, smax) = (*f.last().unwrap_or(&0) as i64, *s.last().unwrap_or(&0) as i64);
    (-smax..=fmax)
        .map(|p| s.iter().filter(|&&x| fset.contains(&(x as i64 + p))).count())
        .max()
        .unwrap_or(0)
}
