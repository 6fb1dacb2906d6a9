//! Row echelon forms with deterministic pivoting: the first row holding a
//! nonzero entry in the leftmost remaining column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Fp;

pub(crate) struct Echelon<E> {
    /// The nonzero rows, in echelon form.
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

/// Echelon form over `F_p` with every pivot scaled to 1.
pub(crate) fn fp_echelon(f: &Fp, mut m: Vec<Vec<u64>>, ncols: usize) -> Echelon<u64> {
    let p = f.p;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, i);
        let inv = f.inv(m[r][c]);
        for x in &mut m[r][c..] {
            *x = *x * inv % p;
        }
        let (top, bottom) = m.split_at_mut(r + 1);
        let piv = &top[r];
        for row in bottom.iter_mut() {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            let t = p - factor;
            for (x, y) in row[c..].iter_mut().zip(&piv[c..]) {
                *x = (*x + t * y) % p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

/// A basis of the right kernel, one vector per free column.
pub(crate) fn fp_kernel(f: &Fp, m: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
    let ech = fp_echelon(f, m, ncols);
    free_columns(&ech.pivots, ncols)
        .into_iter()
        .map(|free| {
            let mut x = vec![0u64; ncols];
            x[free] = 1;
            for (row, &pc) in ech.rows.iter().zip(&ech.pivots).rev() {
                let s = row[pc + 1..]
                    .iter()
                    .zip(&x[pc + 1..])
                    .fold(0u64, |acc, (a, b)| (acc + a * b) % f.p);
                x[pc] = (f.p - s) % f.p;
            }
            x
        })
        .collect()
}

/// Fraction-free (Bareiss) echelon form over the integers.
pub(crate) fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon<BigInt> {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, i);
        let (top, bottom) = m.split_at_mut(r + 1);
        let piv = &top[r];
        for row in bottom.iter_mut() {
            for j in c + 1..ncols {
                let v = &piv[c] * &row[j] - &row[c] * &piv[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = piv[c].clone();
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

/// A basis of the rational kernel, each vector scaled to coprime integers.
pub(crate) fn bareiss_kernel(m: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let ech = bareiss_echelon(m, ncols);
    free_columns(&ech.pivots, ncols)
        .into_iter()
        .map(|free| {
            let mut x = vec![BigRational::zero(); ncols];
            x[free] = BigRational::one();
            for (row, &pc) in ech.rows.iter().zip(&ech.pivots).rev() {
                let mut s = BigRational::zero();
                for (a, b) in row[pc + 1..].iter().zip(&x[pc + 1..]) {
                    if !a.is_zero() && !b.is_zero() {
                        s += BigRational::from(a.clone()) * b;
                    }
                }
                x[pc] = -s / BigRational::from(row[pc].clone());
            }
            primitive(&x)
        })
        .collect()
}

fn primitive(x: &[BigRational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

fn free_columns(pivots: &[usize], ncols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..ncols).filter(|&c| !is_pivot[c]).collect()
}
