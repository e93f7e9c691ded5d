//! Janet separation of variables into multiplicative and nonmultiplicative.

use crate::poly::Monomial;

/// Multiplicative variables of each monomial of a finite set, with `x_1`
/// the first entry of the precedence list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JanetPartition {
    nvars: usize,
    masks: Vec<u32>,
}

impl JanetPartition {
    /// Bit `v` of the mask is set when variable `v` is multiplicative.
    pub fn mask(&self, element: usize) -> u32 {
        self.masks[element]
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn is_multiplicative(&self, element: usize, var: usize) -> bool {
        self.masks[element] >> var & 1 == 1
    }

    pub fn multiplicative(&self, element: usize) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.is_multiplicative(element, v)).collect()
    }

    pub fn nonmultiplicative(&self, element: usize) -> Vec<usize> {
        (0..self.nvars).filter(|&v| !self.is_multiplicative(element, v)).collect()
    }
}

/// Janet partition of `lms` for the variable precedence `precedence`.
///
/// The monomials are sorted by their exponents read along the precedence;
/// a group sharing the first `i` exponents is then a contiguous run, and the
/// `(i+1)`-th variable is multiplicative exactly for the run members that
/// attain the run's maximal exponent in it.
pub fn janet_partition(lms: &[Monomial], precedence: &[usize]) -> JanetPartition {
    let nvars = precedence.len();
    assert!(nvars <= 32, "at most 32 variables supported");
    let mut idx: Vec<usize> = (0..lms.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ea, eb) = (lms[a].exponents(), lms[b].exponents());
        precedence
            .iter()
            .map(|&v| ea[v].cmp(&eb[v]))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut masks = vec![0u32; lms.len()];
    split(lms, precedence, &idx, 0, &mut masks);
    JanetPartition { nvars, masks }
}

fn split(lms: &[Monomial], precedence: &[usize], run: &[usize], level: usize, masks: &mut [u32]) {
    if level == precedence.len() || run.is_empty() {
        return;
    }
    let var = precedence[level];
    let max = lms[*run.last().unwrap()].exponent(var);
    let mut start = 0;
    while start < run.len() {
        let e = lms[run[start]].exponent(var);
        let mut end = start;
        while end < run.len() && lms[run[end]].exponent(var) == e {
            if e == max {
                masks[run[end]] |= 1 << var;
            }
            end += 1;
        }
        split(lms, precedence, &run[start..end], level + 1, masks);
        start = end;
    }
}

/// `lm | w` with every variable of `w / lm` multiplicative under `mask`.
#[inline]
pub fn janet_divides(lm: &Monomial, mask: u32, w: &Monomial) -> bool {
    lm.exponents()
        .iter()
        .zip(w.exponents())
        .enumerate()
        .all(|(v, (&a, &b))| a == b || (a < b && mask >> v & 1 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Literal reading of the definition: x_i is multiplicative for u iff
    // deg_i(u) is maximal among the monomials agreeing with u in
    // deg_1 .. deg_{i-1}.
    fn brute(lms: &[Monomial], precedence: &[usize]) -> Vec<Vec<bool>> {
        lms.iter()
            .map(|u| {
                (0..precedence.len())
                    .map(|i| {
                        let v = precedence[i];
                        let group = lms.iter().filter(|w| {
                            precedence[..i].iter().all(|&p| w.exponent(p) == u.exponent(p))
                        });
                        group.map(|w| w.exponent(v)).max().unwrap() == u.exponent(v)
                    })
                    .collect::<Vec<bool>>()
            })
            .map(|by_pos| {
                let mut by_var = vec![false; precedence.len()];
                for (i, &v) in precedence.iter().enumerate() {
                    by_var[v] = by_pos[i];
                }
                by_var
            })
            .collect()
    }

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.iter().copied())
    }

    fn check(lms: &[Monomial], precedence: &[usize]) {
        let p = janet_partition(lms, precedence);
        let b = brute(lms, precedence);
        for (k, row) in b.iter().enumerate() {
            for (v, &mult) in row.iter().enumerate() {
                assert_eq!(p.is_multiplicative(k, v), mult, "{:?} var {v}", lms[k]);
            }
        }
    }

    #[test]
    fn single_monomial_all_multiplicative() {
        let p = janet_partition(&[m(&[2, 1, 0])], &[0, 1, 2]);
        assert_eq!(p.multiplicative(0), vec![0, 1, 2]);
    }

    #[test]
    fn quadratic_staircase() {
        let lms = [m(&[2, 0]), m(&[1, 1]), m(&[0, 2])];
        let p = janet_partition(&lms, &[0, 1]);
        assert_eq!(p.multiplicative(0), vec![0, 1]);
        assert_eq!(p.multiplicative(1), vec![1]);
        assert_eq!(p.multiplicative(2), vec![1]);
        check(&lms, &[0, 1]);
    }

    #[test]
    fn same_group_smaller_second_degree() {
        let lms = [m(&[2, 1]), m(&[2, 0])];
        let p = janet_partition(&lms, &[0, 1]);
        assert_eq!(p.multiplicative(0), vec![0, 1]);
        assert_eq!(p.multiplicative(1), vec![0]);
        check(&lms, &[0, 1]);
    }

    #[test]
    fn matches_definition_on_a_mixed_set() {
        let lms = [
            m(&[1, 0, 2]),
            m(&[0, 3, 1]),
            m(&[1, 1, 0]),
            m(&[2, 0, 0]),
            m(&[0, 3, 0]),
            m(&[1, 0, 1]),
            m(&[0, 0, 4]),
        ];
        check(&lms, &[0, 1, 2]);
        check(&lms, &[2, 0, 1]);
        check(&lms, &[1, 2, 0]);
    }

    #[test]
    fn janet_divisibility_respects_mask() {
        let lm = m(&[1, 1]);
        assert!(janet_divides(&lm, 0b10, &m(&[1, 3])));
        assert!(!janet_divides(&lm, 0b10, &m(&[2, 1])));
        assert!(janet_divides(&lm, 0, &lm));
    }
}
