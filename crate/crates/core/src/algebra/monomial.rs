use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A monomial `x₁^m₁ ⋯ xₙ^mₙ`, stored as its exponent vector.
///
/// Ordering is graded lexicographic: lower total degree first, and within a
/// degree the monomial with the larger exponent on the earlier variable
/// comes first (`x² < xy < y²` in iteration order).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 4]>,
}

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = u32>) -> Self {
        Self {
            exps: exps.into_iter().collect(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    /// The monomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / x_i`, or `None` when `x_i` does not divide.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        Some(m)
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m
    }

    /// All monomials of exact degree `d` in `n` variables, in graded-lex order.
    pub fn all_of_degree(n: usize, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fill_degree(&mut cur, 0, d as u32, &mut out);
        out
    }

    /// Number of monomials of degree `d` in `n` variables: C(d+n-1, n-1).
    pub fn count_of_degree(n: usize, d: usize) -> usize {
        binomial(d + n - 1, n - 1)
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn fill_degree(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    let n = cur.len();
    if pos + 1 == n {
        cur[pos] = remaining;
        out.push(Monomial::new(cur.iter().copied()));
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill_degree(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.exps.as_slice())
    }
}
