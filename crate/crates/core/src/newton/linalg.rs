//! Small exact linear algebra over the integers and rationals, sized for
//! ambient dimension at most 4 or 5. Kernels and ranks are computed with
//! arbitrary-precision rationals and cleared to primitive integer vectors,
//! so overflow cannot occur.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| i128::from(x) * i128::from(y))
        .sum()
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divide by the gcd of the entries; the zero vector is left alone.
pub(crate) fn primitive(v: &[i128]) -> Vec<i128> {
    let g = v.iter().fold(0i128, |acc, &x| gcd(acc, x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|&x| x / g).collect()
    }
}

pub(crate) fn to_i64_vec(v: &[i128]) -> Vec<i64> {
    v.iter()
        .map(|&x| i64::try_from(x).expect("entry fits in i64 at desk scale"))
        .collect()
}

fn to_rational_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

/// Row echelon reduction in place; returns the pivot columns.
#[allow(clippy::needless_range_loop)]
fn echelon(mat: &mut [Vec<BigRational>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        let Some(p) = (row..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let pivot = mat[row][col].clone();
        for x in &mut mat[row] {
            *x /= &pivot;
        }
        for r in 0..mat.len() {
            if r != row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in 0..width {
                    let delta = &factor * &mat[row][c];
                    mat[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let width = rows[0].len();
    let mut mat = to_rational_rows(rows);
    echelon(&mut mat, width).len()
}

/// Primitive integer basis of the right kernel of the given rows.
pub(crate) fn kernel_basis(rows: &[Vec<i64>], width: usize) -> Vec<Vec<i128>> {
    let mut mat = to_rational_rows(rows);
    let pivots = echelon(&mut mat, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![BigRational::zero(); width];
        v[f] = BigRational::from_integer(BigInt::from(1));
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -mat[r][f].clone();
        }
        // clear denominators, then primitivize
        let lcm = v.iter().fold(BigInt::from(1), |acc, x| {
            num_integer::lcm(acc, x.denom().clone())
        });
        let ints: Vec<i128> = v
            .iter()
            .map(|x| {
                let scaled = x.numer() * &lcm / x.denom();
                i128::try_from(&scaled).expect("kernel entry fits i128")
            })
            .collect();
        basis.push(primitive(&ints));
    }
    basis
}

/// The kernel vector of a rank-(width-1) row set, primitive, or None when
/// the kernel is not one-dimensional.
pub(crate) fn kernel_vector(rows: &[Vec<i64>], width: usize) -> Option<Vec<i128>> {
    let basis = kernel_basis(rows, width);
    if basis.len() == 1 {
        Some(basis.into_iter().next().unwrap())
    } else {
        None
    }
}

/// All k-element index subsets of 0..n, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // advance to the next lexicographic subset
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}
