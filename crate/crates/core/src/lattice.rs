//! Integer lattices: kernels of integer matrices and Hermite normal forms.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Brings `rows` to row echelon form using unimodular row operations applied
/// in lockstep to `companions`. Returns the number of nonzero rows, which are
/// moved to the top.
fn integer_echelon(rows: &mut [Vec<BigInt>], companions: &mut [Vec<BigInt>]) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        loop {
            // row with the smallest nonzero |entry| in column c
            let best = (r..nrows)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            companions.swap(r, best);
            let mut clean = true;
            for i in r + 1..nrows {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (pr, pc) = (rows[r].clone(), companions[r].clone());
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                for (x, y) in companions[i].iter_mut().zip(&pc) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if (r..nrows).any(|i| !rows[i][c].is_zero()) {
            r += 1;
        }
    }
    r
}

/// Basis of `{v ∈ Z^n : A v = 0}` for an `m × n` integer matrix given by rows.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    // row-reduce [A^T | I]; rows whose A^T part vanishes carry kernel vectors
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect();
    let mut comp: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|k| if k == j { BigInt::from(1) } else { BigInt::zero() }).collect())
        .collect();
    if a.is_empty() {
        return comp;
    }
    let rank = integer_echelon(&mut rows, &mut comp);
    comp.split_off(rank)
}

/// Row Hermite normal form of the lattice spanned by `gens`: pivots positive,
/// entries above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let mut rows = gens.to_vec();
    let mut dummy: Vec<Vec<BigInt>> = alloc::vec![Vec::new(); rows.len()];
    let rank = integer_echelon(&mut rows, &mut dummy);
    rows.truncate(rank);
    let mut pivots = Vec::with_capacity(rank);
    for row in rows.iter_mut() {
        let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        if row[p].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        pivots.push(p);
    }
    for k in 0..rank {
        let p = pivots[k];
        for i in 0..k {
            let q = rows[i][p].div_floor(&rows[k][p]);
            if !q.is_zero() {
                let pr = rows[k].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
        }
    }
    rows
}

/// Solves `v = Σ c_k basis_k` over the integers, if possible. `basis` must be
/// in Hermite normal form.
pub fn lattice_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let p = row.iter().position(|x| !x.is_zero())?;
        let (q, r) = rest[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in rest.iter_mut().zip(row) {
            *x -= &q * y;
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_single_row() {
        let k = integer_kernel(&[v(&[2, 4])], 2);
        assert_eq!(hermite_normal_form(&k), alloc::vec![v(&[2, -1])]);
    }

    #[test]
    fn kernel_with_congruence() {
        // -2(v1+v2+v3) = 0 and 3v1 + 2v2 + 2v3 + 4s = 0
        let a = [v(&[-2, -2, -2, 0]), v(&[3, 2, 2, 4])];
        let k = integer_kernel(&a, 4);
        let projected: Vec<Vec<BigInt>> = k.iter().map(|x| x[..3].to_vec()).collect();
        let h = hermite_normal_form(&projected);
        assert_eq!(h, alloc::vec![v(&[4, 0, -4]), v(&[0, 1, -1])]);
    }

    #[test]
    fn coordinates_round_trip() {
        let h = hermite_normal_form(&[v(&[4, 0, -4]), v(&[0, 1, -1])]);
        assert_eq!(lattice_coordinates(&h, &v(&[4, 3, -7])), Some(v(&[1, 3])));
        assert_eq!(lattice_coordinates(&h, &v(&[2, 0, -2])), None);
    }
}
