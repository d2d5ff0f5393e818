use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};

/// An ordered sequence of positive parts.
///
/// Ordering is lexicographic on the parts, which is also the order in which
/// [`compositions_of`] yields them.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "composition parts must be positive, got {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `k`-th part, 1-based.
    pub fn part(&self, k: usize) -> Option<usize> {
        k.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    /// The `k`-th last part, `k >= 1`; `from_end(1)` is the last part.
    pub fn from_end(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.0.len() {
            None
        } else {
            Some(self.0[self.0.len() - k])
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Removes the `k`-th part (1-based).
    pub fn without(&self, k: usize) -> Self {
        let mut parts = self.0.clone();
        if k >= 1 && k <= parts.len() {
            parts.remove(k - 1);
        }
        Composition(parts)
    }

    /// Removes the `k`-th last part.
    pub fn without_from_end(&self, k: usize) -> Self {
        if k == 0 || k > self.0.len() {
            return self.clone();
        }
        self.without(self.0.len() + 1 - k)
    }

    pub fn reversed(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Composition) -> Self {
        Composition(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn push(&mut self, part: usize) {
        assert!(part > 0, "composition parts must be positive");
        self.0.push(part);
    }

    /// Prefix sums `0, i_1, i_1 + i_2, ..., |I|`.
    pub fn prefix_sums(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(0).chain(self.0.iter().scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        }))
    }

    pub fn rho(&self) -> Partition {
        rho(self)
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The partition formed by the parts of `comp`.
pub fn rho(comp: &Composition) -> Partition {
    Partition::from_parts(comp.0.clone())
}

/// `i_1 (i_2 - 1)(i_3 - 1) ... (i_l - 1)`, and 1 for the empty composition.
pub fn w_weight(comp: &Composition) -> i128 {
    match comp.0.split_first() {
        None => 1,
        Some((&head, tail)) => tail
            .iter()
            .fold(head as i128, |acc, &p| acc * (p as i128 - 1)),
    }
}

/// Smallest prefix sum of `comp` that is at least `a`. The empty prefix
/// counts, so any `a <= 0` gives 0.
pub fn sigma(comp: &Composition, a: i64) -> Result<usize> {
    if a <= 0 {
        return Ok(0);
    }
    comp.prefix_sums().find(|&s| s as i64 >= a).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "no prefix of {comp} reaches {a} (size {})",
            comp.size()
        ))
    })
}

/// The `a`-surplus `sigma(I, a) - a`.
pub fn surplus(comp: &Composition, a: i64) -> Result<i64> {
    Ok(sigma(comp, a)? as i64 - a)
}

/// All compositions of `n`, in lexicographic order of their parts.
///
/// `n = 0` yields the single empty composition.
pub fn compositions_of(n: usize) -> Compositions {
    Compositions {
        next: Some(vec![1; n]),
    }
}

pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        // successor: ..., a, b  ->  ..., a + 1, 1^(b - 1)
        if current.len() >= 2 {
            let mut succ = current.clone();
            let b = succ.pop().unwrap();
            *succ.last_mut().unwrap() += 1;
            succ.extend(std::iter::repeat_n(1, b - 1));
            self.next = Some(succ);
        }
        Some(Composition(current))
    }
}
