use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::InvariantError;
use crate::factorization::Factorization;
use crate::model::HomologyClass;
use crate::symplectic::{transvection_power, SpMatrix};

/// Meyer's signature cocycle τ(A, B).
pub fn meyer_cocycle(a: &SpMatrix, b: &SpMatrix) -> Result<i64, InvariantError> {
    if a.genus() != b.genus() {
        return Err(InvariantError::GenusMismatch(a.genus(), b.genus()));
    }
    if !a.is_symplectic() || !b.is_symplectic() {
        return Err(InvariantError::NotSymplectic);
    }
    Ok(tau(a, b))
}

/// Signature of the form `(x1 + y1)^T J (I - B) y2` (symmetrised) on
/// `{(x, y) : (A^-1 - I) x + (B - I) y = 0}`.
pub(crate) fn tau(a: &SpMatrix, b: &SpMatrix) -> i64 {
    let n = a.dim();
    if n == 0 {
        return 0;
    }
    let ainv = a.inverse();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row = Vec::with_capacity(2 * n);
            for c in 0..n {
                let mut v = q(ainv.get(r, c));
                if r == c {
                    v -= BigRational::one();
                }
                row.push(v);
            }
            for c in 0..n {
                let mut v = q(b.get(r, c));
                if r == c {
                    v -= BigRational::one();
                }
                row.push(v);
            }
            row
        })
        .collect();
    let basis = nullspace(&mut rows, 2 * n);
    if basis.is_empty() {
        return 0;
    }
    // (I - B) y and x + y for each basis vector
    let imb: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|z| {
            let y = &z[n..];
            (0..n)
                .map(|r| {
                    let by: BigInt = (0..n).map(|c| b.get(r, c) * &y[c]).sum();
                    &y[r] - by
                })
                .collect()
        })
        .collect();
    let sums: Vec<Vec<BigInt>> = basis.iter().map(|z| (0..n).map(|i| &z[i] + &z[n + i]).collect()).collect();
    let k = basis.len();
    let mut gram = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let v = crate::symplectic::pairing(&sums[i], &imb[j]) + crate::symplectic::pairing(&sums[j], &imb[i]);
            gram[i][j] = BigRational::from_integer(v);
        }
    }
    signature(gram)
}

/// Integer basis of the kernel of an m×cols rational matrix (rows consumed).
fn nullspace(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let is_pivot: Vec<bool> = (0..cols).map(|c| pivots.contains(&c)).collect();
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[i][free].clone();
        }
        // clear denominators; positive scaling keeps the signature
        let l = v.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
        out.push(v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect());
    }
    out
}

/// Signature of a symmetric rational matrix by congruence diagonalization.
pub(crate) fn signature(mut m: Vec<Vec<BigRational>>) -> i64 {
    let mut sig = 0;
    loop {
        let k = m.len();
        if k == 0 {
            return sig;
        }
        let p = match (0..k).find(|&i| !m[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let Some((i, j)) = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero())
                else {
                    return sig;
                };
                // e_i -> e_i + e_j makes the diagonal entry 2 m_ij
                let rj = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(&rj) {
                    *x += y;
                }
                for row in m.iter_mut() {
                    let y = row[j].clone();
                    row[i] += y;
                }
                i
            }
        };
        let d = m[p][p].clone();
        sig += if d.is_positive() { 1 } else { -1 };
        let prow = m[p].clone();
        let mut next = Vec::with_capacity(k - 1);
        for (r, row) in m.iter().enumerate() {
            if r == p {
                continue;
            }
            let f = &row[p] / &d;
            let new: Vec<BigRational> = (0..k)
                .filter(|&c| c != p)
                .map(|c| if f.is_zero() { row[c].clone() } else { &row[c] - &f * &prow[c] })
                .collect();
            next.push(new);
        }
        m = next;
    }
}

/// `-Σ_{k≥2} τ(prefix_{k-1}, letter_k) - s` where s counts separating letters.
pub fn signature_meyer(f: &Factorization) -> Result<i64, InvariantError> {
    if !f.target.is_identity() {
        return Err(InvariantError::UncappedTarget(f.target.clone()));
    }
    let g = f.genus();
    let mats: Vec<SpMatrix> = f.curves().map(|c| transvection_power(&c.homology, 1)).collect();
    let mut prefixes = Vec::with_capacity(mats.len());
    let mut p = SpMatrix::identity(g);
    for c in f.curves() {
        prefixes.push(p.clone());
        p.mul_transvection(&c.homology, 1);
    }
    // τ(prefix_0 = I, letter_1) = 0, so summing from the first letter is harmless
    let total: i64 = prefixes.par_iter().zip(mats.par_iter()).map(|(a, b)| tau(a, b)).sum();
    Ok(-total - f.separating_count() as i64)
}

/// Outcome of a randomized cocycle self-test.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleSelfTest {
    pub triples: usize,
    pub identity_violations: usize,
    pub cocycle_violations: usize,
    pub bound_violations: usize,
}

impl CocycleSelfTest {
    pub fn passed(&self) -> bool {
        self.identity_violations == 0 && self.cocycle_violations == 0 && self.bound_violations == 0
    }
}

fn random_element(rng: &mut ChaCha8Rng, pool: &[HomologyClass], g: usize) -> SpMatrix {
    let mut m = SpMatrix::identity(g);
    for _ in 0..rng.gen_range(1..=4) {
        let c = &pool[rng.gen_range(0..pool.len())];
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        m.mul_transvection(c, e);
    }
    m
}

/// Checks τ(I,B) = 0, the cocycle identity and |τ| ≤ 2g on random products
/// of transvections about classes drawn from `pool`.
pub fn meyer_self_test(pool: &[HomologyClass], triples: usize, seed: u64) -> CocycleSelfTest {
    assert!(!pool.is_empty(), "need at least one class");
    let g = pool[0].genus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<(SpMatrix, SpMatrix, SpMatrix)> = (0..triples)
        .map(|_| (random_element(&mut rng, pool, g), random_element(&mut rng, pool, g), random_element(&mut rng, pool, g)))
        .collect();
    let id = SpMatrix::identity(g);
    let bound = 2 * g as i64;
    inputs
        .par_iter()
        .map(|(a, b, c)| {
            let ab = tau(a, b);
            let abc = tau(&a.mul(b), c);
            let a_bc = tau(a, &b.mul(c));
            let bc = tau(b, c);
            let mut r = CocycleSelfTest { triples: 1, ..Default::default() };
            if tau(&id, b) != 0 || tau(a, &id) != 0 {
                r.identity_violations += 1;
            }
            if ab + abc != a_bc + bc {
                r.cocycle_violations += 1;
            }
            if [ab, abc, a_bc, bc].iter().any(|t| t.abs() > bound) {
                r.bound_violations += 1;
            }
            r
        })
        .reduce(CocycleSelfTest::default, |x, y| CocycleSelfTest {
            triples: x.triples + y.triples,
            identity_violations: x.identity_violations + y.identity_violations,
            cocycle_violations: x.cocycle_violations + y.cocycle_violations,
            bound_violations: x.bound_violations + y.bound_violations,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{ConstructionStep, Target};
    use crate::model::{Curve, Surface};
    use std::sync::Arc;

    fn rat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect()
    }

    #[test]
    fn signature_of_small_forms() {
        assert_eq!(signature(rat(&[&[1, 0], &[0, -1]])), 0);
        assert_eq!(signature(rat(&[&[0, 1], &[1, 0]])), 0);
        assert_eq!(signature(rat(&[&[2, 1], &[1, 2]])), 2);
        assert_eq!(signature(rat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(signature(rat(&[&[-1, 2, 0], &[2, -5, 0], &[0, 0, 0]])), -2);
    }

    fn chain(g: usize, classes: &[&[i64]], reps: usize) -> Factorization {
        let s = Surface::closed(g);
        let curves: Vec<Arc<Curve>> = classes
            .iter()
            .enumerate()
            .map(|(i, v)| Arc::new(Curve::new(format!("c{i}"), s, HomologyClass::from_i64(v))))
            .collect();
        let all = (0..reps).flat_map(|_| curves.iter().cloned()).collect();
        Factorization::new(s, all, Target::Identity, ConstructionStep::BaseRelator { name: "t".into(), decomposition: None })
            .unwrap()
    }

    #[test]
    fn torus_chain_signature() {
        // (t_a t_b)^6 = 1 on the torus: the elliptic surface E(1), σ = -8
        let f = chain(1, &[&[1, 0], &[0, 1]], 6);
        assert!(f.monodromy().is_identity());
        assert_eq!(signature_meyer(&f).unwrap(), -8);
    }

    #[test]
    fn genus_two_matsumoto_calibration() {
        let f = chain(2, &[&[0, 1, 0, 1], &[1, 1, 1, 1], &[1, 0, 1, 0], &[0, 0, 0, 0]], 2);
        assert!(f.monodromy().is_identity());
        assert_eq!(signature_meyer(&f).unwrap(), -4);
    }

    #[test]
    fn cocycle_basics() {
        let t = transvection_power(&HomologyClass::from_i64(&[1, 0]), 1);
        let id = SpMatrix::identity(1);
        assert_eq!(meyer_cocycle(&id, &t).unwrap(), 0);
        assert!(meyer_cocycle(&t, &SpMatrix::identity(2)).is_err());
        let pool = vec![HomologyClass::from_i64(&[1, 0]), HomologyClass::from_i64(&[0, 1]), HomologyClass::from_i64(&[1, 1])];
        let r = meyer_self_test(&pool, 200, 7);
        assert_eq!(r.triples, 200);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn uncapped_is_rejected() {
        let s = Surface::new(1, 1);
        let f = Factorization::new(s, vec![], Target::boundary(1, 1), ConstructionStep::BaseRelator { name: "t".into(), decomposition: None })
            .unwrap();
        assert!(matches!(signature_meyer(&f), Err(InvariantError::UncappedTarget(_))));
    }
}
