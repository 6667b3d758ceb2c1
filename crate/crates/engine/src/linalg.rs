//! Exact linear algebra over polynomial entries.
//!
//! Linear systems arising from telescoping have coefficients in ℚ[n] (or
//! several parameters), and the solutions we want live in the fraction
//! field.  Forward elimination is done fraction-free in the Bareiss style —
//! every intermediate entry is a minor of the original matrix, so the
//! divisions are exact and coefficient growth stays polynomial — and only
//! the final back-substitution moves to `RatFunc`.
//!
//! The same kernel yields determinants (hence Sylvester resultants),
//! inhomogeneous solves, and nullspace bases.

use num_traits::{One, Signed, Zero};
use wz_algebra::{poly_gcd, MultiPoly, Rat, RatFunc};

/// Outcome of a fraction-free forward sweep.
struct Echelon {
    m: Vec<Vec<MultiPoly>>,
    /// Pivot column of each pivot row, in row order.
    pivots: Vec<usize>,
    /// Parity of the row swaps performed (+1 / −1).
    sign: i32,
}

/// Fraction-free row echelon form over the first `cols` columns.
/// Columns `>= cols` (e.g. an augmented right-hand side) are carried
/// through the row operations but never chosen as pivots.
fn echelon(mut m: Vec<Vec<MultiPoly>>, cols: usize) -> Echelon {
    let rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut sign = 1;
    let mut prev = MultiPoly::one();
    let mut row = 0usize;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if p != row {
            m.swap(p, row);
            sign = -sign;
        }
        for i in row + 1..rows {
            for j in col + 1..width {
                let num = &(&m[row][col] * &m[i][j]) - &(&m[i][col] * &m[row][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss minors divide exactly");
            }
            m[i][col] = MultiPoly::zero();
        }
        prev = m[row][col].clone();
        pivots.push(col);
        row += 1;
    }
    Echelon { m, pivots, sign }
}

/// Determinant of a square matrix of polynomials.
pub fn det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let e = echelon(m.to_vec(), n);
    if e.pivots.len() < n {
        return MultiPoly::zero();
    }
    let last = e.m[n - 1][e.pivots[n - 1]].clone();
    if e.sign < 0 {
        -last
    } else {
        last
    }
}

/// Solves `A·x = b` over the fraction field.  Returns `None` when the
/// system is inconsistent.  Under-determined systems are resolved
/// deterministically by setting every free variable to zero.
pub fn solve(a: &[Vec<MultiPoly>], b: &[MultiPoly]) -> Option<Vec<RatFunc>> {
    assert_eq!(a.len(), b.len(), "matrix and right-hand side row counts differ");
    let cols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<MultiPoly>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let e = echelon(aug, cols);
    // Any residual row is zero across the coefficient part; a nonzero
    // augmented entry there certifies inconsistency.
    for r in e.pivots.len()..e.m.len() {
        if !e.m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![RatFunc::zero(); cols];
    for (row, &pc) in e.pivots.iter().enumerate().rev() {
        let mut acc = RatFunc::from_poly(e.m[row][cols].clone());
        for (mj, xj) in e.m[row][pc + 1..cols].iter().zip(&x[pc + 1..]) {
            if !mj.is_zero() && !xj.is_zero() {
                acc = &acc - &(&RatFunc::from_poly(mj.clone()) * xj);
            }
        }
        x[pc] = &acc / &RatFunc::from_poly(e.m[row][pc].clone());
    }
    Some(x)
}

/// A basis of the right nullspace of `A`, one primitive polynomial vector
/// per free column (free columns ascending, so the basis is deterministic).
pub fn nullspace(a: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let cols = a.first().map_or(0, Vec::len);
    if a.is_empty() || cols == 0 {
        return Vec::new();
    }
    let e = echelon(a.to_vec(), cols);
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![RatFunc::zero(); cols];
        x[f] = RatFunc::one();
        for (row, &pc) in e.pivots.iter().enumerate().rev() {
            let mut acc = RatFunc::zero();
            for (mj, xj) in e.m[row][pc + 1..cols].iter().zip(&x[pc + 1..]) {
                if !mj.is_zero() && !xj.is_zero() {
                    acc = &acc + &(&RatFunc::from_poly(mj.clone()) * xj);
                }
            }
            x[pc] = &(-acc) / &RatFunc::from_poly(e.m[row][pc].clone());
        }
        basis.push(clear_to_primitive(&x));
    }
    basis
}

/// Clears denominators from a rational vector and strips the common
/// polynomial and rational content, normalizing the sign so the first
/// nonzero entry has a positive leading coefficient.
fn clear_to_primitive(x: &[RatFunc]) -> Vec<MultiPoly> {
    let mut den = MultiPoly::one();
    for xi in x {
        den = poly_lcm(&den, xi.den());
    }
    let mut v: Vec<MultiPoly> = x
        .iter()
        .map(|xi| {
            let scale = den.exact_div(xi.den()).expect("lcm is divisible by each denominator");
            xi.num() * &scale
        })
        .collect();
    // Polynomial content.
    let mut g = MultiPoly::zero();
    for e in v.iter().filter(|e| !e.is_zero()) {
        g = if g.is_zero() {
            e.clone()
        } else {
            poly_gcd(&g, e).expect("nonzero arguments")
        };
    }
    if !g.is_zero() && !g.is_constant() {
        for e in v.iter_mut() {
            *e = e.exact_div(&g).expect("content divides every entry");
        }
    }
    // Rational content: make all coefficients integers with overall gcd 1.
    let mut content: Option<Rat> = None;
    for e in v.iter().filter(|e| !e.is_zero()) {
        let (c, _) = e.int_primitive();
        let c = c.abs();
        content = Some(match content {
            None => c,
            Some(prev) => rat_gcd(&prev, &c),
        });
    }
    if let Some(c) = content {
        if !c.is_one() && !c.is_zero() {
            let inv = Rat::one() / c;
            for e in v.iter_mut() {
                *e = e.mul_rat(&inv);
            }
        }
    }
    if let Some(first) = v.iter().find(|e| !e.is_zero()) {
        if first.leading_coeff().is_negative() {
            for e in v.iter_mut() {
                *e = -e.clone();
            }
        }
    }
    v
}

/// One solution of `A·x = b` over the rationals (free variables zeroed),
/// or `None` when the system is inconsistent.  Plain Gauss–Jordan: the
/// matrices this serves are small and numerically exact.
pub(crate) fn solve_rat(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row_of_col = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = Rat::one() / a[row][col].clone();
        for entry in &mut a[row][col..] {
            *entry *= inv.clone();
        }
        b[row] *= inv;
        let pivot_vals = a[row][col..].to_vec();
        let pivot_b = b[row].clone();
        for r in 0..rows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut a[r][col], Rat::zero());
            for (entry, pv) in a[r][col + 1..].iter_mut().zip(&pivot_vals[1..]) {
                *entry -= factor.clone() * pv.clone();
            }
            b[r] -= factor * pivot_b.clone();
        }
        pivot_row_of_col[col] = Some(row);
        row += 1;
    }
    if b[row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (col, pivot) in pivot_row_of_col.into_iter().enumerate() {
        if let Some(r) = pivot {
            x[col] = b[r].clone();
        }
    }
    Some(x)
}

/// gcd of two nonnegative rationals: gcd of numerators over lcm of
/// denominators, so that both arguments are integer multiples of it.
pub(crate) fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    use num_integer::Integer;
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Rat::new(num, den)
}

/// Least common multiple, canonical up to the gcd normalization.
pub fn poly_lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let g = poly_gcd(a, b).expect("nonzero arguments");
    let q = a.exact_div(&g).expect("gcd divides");
    &q * b
}

/// Content of `p` viewed as a univariate polynomial in `var`: the gcd of
/// its coefficient polynomials.
pub fn content_in(p: &MultiPoly, var: &str) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c } else { poly_gcd(&g, &c).expect("nonzero arguments") };
    }
    g
}

/// Primitive part of `p` with respect to `var` (content divided out).
pub fn primitive_part_in(p: &MultiPoly, var: &str) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let c = content_in(p, var);
    if c.is_constant() {
        let (u, prim) = p.int_primitive();
        return if u.is_negative() { -prim } else { prim };
    }
    p.exact_div(&c).expect("content divides")
}

/// Sylvester resultant of `p` and `q` with respect to `var`.  The result
/// is a polynomial in the remaining variables; it vanishes exactly when
/// `p` and `q` share a root in `var` (over the algebraic closure of the
/// coefficient field).
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> MultiPoly {
    if p.is_zero() || q.is_zero() {
        return MultiPoly::zero();
    }
    let cp = p.coeffs_in(var);
    let cq = q.coeffs_in(var);
    let m = cp.len() - 1;
    let n = cq.len() - 1;
    if m == 0 && n == 0 {
        return MultiPoly::one();
    }
    if m == 0 {
        return cp[0].pow(n as u32);
    }
    if n == 0 {
        return cq[0].pow(m as u32);
    }
    // n rows of p's coefficients, m rows of q's, descending powers.
    let size = m + n;
    let mut s = vec![vec![MultiPoly::zero(); size]; size];
    for (row, srow) in s.iter_mut().enumerate().take(n) {
        for (i, c) in cp.iter().rev().enumerate() {
            srow[row + i] = c.clone();
        }
    }
    for (row, srow) in s.iter_mut().skip(n).enumerate() {
        for (i, c) in cq.iter().rev().enumerate() {
            srow[row + i] = c.clone();
        }
    }
    det(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wz_algebra::rat;

    fn n() -> MultiPoly {
        MultiPoly::var("n")
    }

    fn c(v: i64) -> MultiPoly {
        MultiPoly::from_int(v)
    }

    #[test]
    fn determinant_of_constant_matrix() {
        let m = vec![vec![c(1), c(2)], vec![c(3), c(4)]];
        assert_eq!(det(&m), c(-2));
    }

    #[test]
    fn determinant_with_parameter_entries() {
        // | n   1 |
        // | 1   n |  →  n² − 1
        let m = vec![vec![n(), c(1)], vec![c(1), n()]];
        let expect = &(&n() * &n()) - &c(1);
        assert_eq!(det(&m), expect);
    }

    #[test]
    fn determinant_of_singular_matrix_is_zero() {
        let m = vec![vec![n(), n()], vec![n(), n()]];
        assert!(det(&m).is_zero());
    }

    #[test]
    fn solve_recovers_cramer_solution() {
        // n·x + y = n² + 1, x + n·y = 2n  →  x = n·(n²−1)/(n²−1) = ...
        let a = vec![vec![n(), c(1)], vec![c(1), n()]];
        let b = vec![&(&n() * &n()) + &c(1), n().mul_rat(&rat(2, 1))];
        let x = solve(&a, &b).expect("consistent");
        // Check by substitution.
        let lhs0 = &(&RatFunc::from_poly(n()) * &x[0]) + &x[1];
        assert_eq!(lhs0, RatFunc::from_poly(b[0].clone()));
        let lhs1 = &x[0] + &(&RatFunc::from_poly(n()) * &x[1]);
        assert_eq!(lhs1, RatFunc::from_poly(b[1].clone()));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![vec![c(1), c(1)], vec![c(2), c(2)]];
        let b = vec![c(1), c(3)];
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn solve_underdetermined_zeroes_free_vars() {
        let a = vec![vec![c(1), c(1), c(1)]];
        let b = vec![c(5)];
        let x = solve(&a, &b).expect("consistent");
        assert_eq!(x[0], RatFunc::from_rat(rat(5, 1)));
        assert!(x[1].is_zero());
        assert!(x[2].is_zero());
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        // [n, n²] has nullspace spanned by (n, −1) — primitive form (n, −1).
        let a = vec![vec![n(), &n() * &n()]];
        let basis = nullspace(&a);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        // n·v0 + n²·v1 = 0
        let check = &(&n() * &v[0]) + &(&(&n() * &n()) * &v[1]);
        assert!(check.is_zero());
        // Primitive and sign-normalized: first entry has positive lead.
        assert!(!v[0].leading_coeff().is_negative());
    }

    #[test]
    fn nullspace_of_full_rank_matrix_is_empty() {
        let a = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        assert!(nullspace(&a).is_empty());
    }

    #[test]
    fn resultant_detects_common_root_shift() {
        // Res_k(k − n, k − n) = 0; Res_k(k, k − 1) = ±1.
        let k = MultiPoly::var("k");
        let p = &k - &n();
        assert!(resultant(&p, &p, "k").is_zero());
        let q = &k - &c(1);
        let r = resultant(&k, &q, "k");
        assert_eq!(r.as_constant().map(|c| c.clone() * c), Some(rat(1, 1)));
    }

    #[test]
    fn resultant_matches_quadratic_discriminant_shape() {
        // Res_k(k² − n, k) = (−n) up to sign: value of k²−n at k=0 times lc.
        let k = MultiPoly::var("k");
        let p = &(&k * &k) - &n();
        let r = resultant(&p, &k, "k");
        assert_eq!(r, -n());
    }

    #[test]
    fn primitive_part_strips_parameter_content() {
        // (n+1)·k + (n+1)  →  k + 1 after removing content n+1.
        let k = MultiPoly::var("k");
        let np1 = &n() + &c(1);
        let p = &(&np1 * &k) + &np1;
        assert_eq!(primitive_part_in(&p, "k"), &k + &c(1));
    }

    #[test]
    fn poly_lcm_of_coprime_is_product() {
        let k = MultiPoly::var("k");
        let a = &k + &c(1);
        let b = &k + &c(2);
        assert_eq!(poly_lcm(&a, &b), &a * &b);
    }
}
