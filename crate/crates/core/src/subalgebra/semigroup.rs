//! Additive subsemigroups of the nonnegative integers given by generators.

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_all(values: impl IntoIterator<Item = usize>) -> usize {
    values.into_iter().fold(0, gcd)
}

/// `reach[t]` is true iff `t` is a nonnegative combination of `gens`, for `t ≤ limit`.
pub fn reachable(gens: &[usize], limit: usize) -> Vec<bool> {
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for t in 1..=limit {
        reach[t] = gens.iter().any(|&d| d > 0 && d <= t && reach[t - d]);
    }
    reach
}

pub fn contains(gens: &[usize], value: usize) -> bool {
    reachable(gens, value)[value]
}

/// Writes `target` as a combination of `gens`, consuming as many copies of
/// the largest generator as still leave a representable remainder, then the
/// next largest, and so on. `reach` must cover `0..=target`.
///
/// Returns exponents aligned with `gens`.
pub fn factor_largest_first(gens: &[usize], target: usize, reach: &[bool]) -> Option<Vec<u32>> {
    if !reach[target] {
        return None;
    }
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by(|&a, &b| gens[b].cmp(&gens[a]));
    let mut exps = vec![0u32; gens.len()];
    let mut left = target;
    while left > 0 {
        let k = *order
            .iter()
            .find(|&&k| gens[k] <= left && reach[left - gens[k]])
            .expect("reachable value has a feasible generator");
        exps[k] += 1;
        left -= gens[k];
    }
    Some(exps)
}

/// Frobenius number of the semigroup generated by `gens` (whose gcd must be 1);
/// `-1` when the semigroup is all of ℕ.
pub fn frobenius(gens: &[usize]) -> isize {
    debug_assert_eq!(gcd_all(gens.iter().copied()), 1);
    let min = *gens.iter().min().expect("nonempty generator set");
    if min == 1 {
        return -1;
    }
    let max = *gens.iter().max().unwrap();
    // Schur: F ≤ (min - 1)(max - 1) - 1
    let limit = (min - 1) * (max - 1);
    let reach = reachable(gens, limit);
    (0..=limit).rev().find(|&t| !reach[t]).map_or(-1, |t| t as isize)
}

/// A binomial relation `Π b^lhs = Π b^rhs` in degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: usize,
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

/// All factorizations of `value` over `gens`, in lexicographic order.
pub fn factorizations(gens: &[usize], value: usize) -> Vec<Vec<u32>> {
    fn go(gens: &[usize], idx: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == gens.len() {
            if left.is_multiple_of(gens[idx]) {
                cur[idx] = (left / gens[idx]) as u32;
                out.push(cur.clone());
                cur[idx] = 0;
            }
            return;
        }
        for k in 0..=left / gens[idx] {
            cur[idx] = k as u32;
            go(gens, idx + 1, left - k * gens[idx], cur, out);
        }
        cur[idx] = 0;
    }
    let mut out = Vec::new();
    if gens.is_empty() {
        if value == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(gens, 0, value, &mut vec![0; gens.len()], &mut out);
    out
}

/// A generating set of the binomial relations among monomials in the generators.
///
/// For each degree `s`, factorizations sharing a generator are linked; one
/// relation is emitted per additional connected component. Components only
/// split at `s = w + n_i` with `w` in an Apéry set, so every such `s` is at
/// most `F + 2·max(gens)` (in units of the gcd), which bounds the scan.
pub fn presentation(gens: &[usize]) -> Vec<Relation> {
    if gens.len() < 2 {
        return Vec::new();
    }
    let g0 = gcd_all(gens.iter().copied());
    let scaled: Vec<usize> = gens.iter().map(|&d| d / g0).collect();
    let max = *scaled.iter().max().unwrap();
    let bound = frobenius(&scaled) + 2 * max as isize;
    let mut out = Vec::new();
    for s in 1..=bound.max(0) as usize {
        let facs = factorizations(&scaled, s);
        if facs.len() < 2 {
            continue;
        }
        let mut parent: Vec<usize> = (0..facs.len()).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for k in 0..scaled.len() {
            let mut first: Option<usize> = None;
            for (idx, fac) in facs.iter().enumerate() {
                if fac[k] == 0 {
                    continue;
                }
                match first {
                    None => first = Some(idx),
                    Some(r) => {
                        let (a, b) = (find(&mut parent, r), find(&mut parent, idx));
                        if a != b {
                            parent[b] = a;
                        }
                    }
                }
            }
        }
        let root0 = find(&mut parent, 0);
        let mut seen = vec![root0];
        for idx in 1..facs.len() {
            let root = find(&mut parent, idx);
            if !seen.contains(&root) {
                seen.push(root);
                out.push(Relation {
                    degree: s * g0,
                    lhs: facs[0].clone(),
                    rhs: facs[idx].clone(),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_by_dp() {
        let reach = reachable(&[2, 3], 10);
        let members: Vec<usize> = (0..=10).filter(|&t| reach[t]).collect();
        assert_eq!(members, vec![0, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        assert!(!contains(&[6, 4], 9));
        assert!(contains(&[6, 4], 10));
    }

    #[test]
    fn largest_first_backs_off_when_needed() {
        // 6 over {5, 3}: taking 5 leaves 1, which is not representable
        let gens = [5, 3];
        let reach = reachable(&gens, 6);
        assert_eq!(factor_largest_first(&gens, 6, &reach), Some(vec![0, 2]));
        let reach = reachable(&gens, 13);
        assert_eq!(factor_largest_first(&gens, 13, &reach), Some(vec![2, 1]));
        assert_eq!(factor_largest_first(&gens, 7, &reach), None);
    }

    #[test]
    fn frobenius_numbers() {
        assert_eq!(frobenius(&[2, 3]), 1);
        assert_eq!(frobenius(&[3, 5]), 7);
        assert_eq!(frobenius(&[4, 6, 13]), 15);
        assert_eq!(frobenius(&[1, 9]), -1);
    }

    #[test]
    fn two_generator_presentation() {
        let rels = presentation(&[2, 3]);
        assert_eq!(rels, vec![Relation { degree: 6, lhs: vec![0, 2], rhs: vec![3, 0] }]);
        let rels = presentation(&[4, 6]);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].degree, 12);
    }

    #[test]
    fn three_generator_presentation_has_expected_betti_degrees() {
        // <3, 4, 5> has three minimal relations, in degrees 8, 9 and 10
        let degrees: Vec<usize> = presentation(&[3, 4, 5]).iter().map(|r| r.degree).collect();
        assert_eq!(degrees, vec![8, 9, 10]);
    }
}
