use std::cmp::Ordering;

/// Exponent vector of a single monomial, aligned with the owning
/// polynomial's variable list.
///
/// Monomials are compared in graded lexicographic order: total degree first,
/// then exponents position by position starting from the *last* variable.
/// Variable lists are kept sorted by name, so the last position is the
/// alphabetically greatest name; e.g. with variables `[k, n]` the monomial
/// `n` is greater than `k`, and `n - k` has leading coefficient `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
