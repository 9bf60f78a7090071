#![allow(dead_code)]

use dual_ginv::matrix::{int, ratio, Rational, RealMatrix};
use dual_ginv::DualMatrix;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mat(rows: &[&[i64]]) -> RealMatrix {
    RealMatrix::from_i64(rows)
}

pub fn dm(std: &[&[i64]], dual: &[&[i64]]) -> DualMatrix {
    DualMatrix::new(mat(std), mat(dual)).unwrap()
}

pub fn dcol(std: &[i64], dual: &[i64]) -> DualMatrix {
    DualMatrix::new(RealMatrix::column_i64(std), RealMatrix::column_i64(dual)).unwrap()
}

/// Rational with `|numerator| ≤ 9` and `1 ≤ denominator ≤ 9`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn small_integer(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

#[derive(Clone, Copy, Debug)]
pub enum Shape {
    Dense,
    Sparse,
    /// Upper triangular with roughly half the diagonal zero.
    Triangular,
    /// Strictly upper triangular (nilpotent).
    Nilpotent,
}

pub fn random_real(rng: &mut ChaCha8Rng, n: usize, shape: Shape) -> RealMatrix {
    RealMatrix::from_fn(n, n, |i, j| {
        let keep = match shape {
            Shape::Dense => true,
            Shape::Sparse => rng.gen_bool(0.35),
            Shape::Triangular => j > i || (j == i && rng.gen_bool(0.5)),
            Shape::Nilpotent => j > i,
        };
        if keep {
            small_rational(rng)
        } else {
            Rational::zero()
        }
    })
}

/// Square dual matrix of size `1..=max_n` whose entries respect the small
/// numerator/denominator bound. Standard parts cycle through structures so
/// that higher appreciable indices occur.
pub fn random_dual(rng: &mut ChaCha8Rng, max_n: usize) -> DualMatrix {
    let n = rng.gen_range(1..=max_n);
    let std_shape = match rng.gen_range(0..4) {
        0 => Shape::Dense,
        1 => Shape::Sparse,
        2 => Shape::Triangular,
        _ => Shape::Nilpotent,
    };
    let dual_shape = if rng.gen_bool(0.5) {
        Shape::Dense
    } else {
        Shape::Sparse
    };
    DualMatrix::new(
        random_real(rng, n, std_shape),
        random_real(rng, n, dual_shape),
    )
    .unwrap()
}

/// Unit lower times unit upper triangular with small integer entries.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    let l = RealMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Greater => small_integer(rng, 2),
        std::cmp::Ordering::Less => int(0),
    });
    let u = RealMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Less => small_integer(rng, 2),
        std::cmp::Ordering::Greater => int(0),
    });
    &l * &u
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    loop {
        let m = random_real(rng, n, Shape::Dense);
        if m.rank() == n {
            return m;
        }
    }
}

/// `M = P · diag(C, 0) · P⁻¹`, so `ind(M) = 1` with `rank(M) = r`.
pub fn random_index_one_real(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    let r = rng.gen_range(0..=n);
    let p = random_unimodular(rng, n);
    let c = random_invertible(rng, r);
    let core = RealMatrix::block_diag(&c, &RealMatrix::zeros(n - r, n - r));
    &(&p * &core) * &p.inverse().unwrap()
}

/// `AInd = 1`. When `dgi_exists` the dual part is `MX + YM`, which kills the
/// group-inverse obstruction.
pub fn random_index_one_dual(rng: &mut ChaCha8Rng, max_n: usize, dgi_exists: bool) -> DualMatrix {
    let n = rng.gen_range(1..=max_n);
    let m = random_index_one_real(rng, n);
    let m0 = if dgi_exists {
        let x = random_real(rng, n, Shape::Sparse);
        let y = random_real(rng, n, Shape::Sparse);
        &(&m * &x) + &(&y * &m)
    } else {
        random_real(rng, n, Shape::Sparse)
    };
    DualMatrix::new(m, m0).unwrap()
}

pub fn random_dual_column(rng: &mut ChaCha8Rng, n: usize) -> DualMatrix {
    let s = RealMatrix::from_fn(n, 1, |_, _| small_rational(rng));
    let d = RealMatrix::from_fn(n, 1, |_, _| small_rational(rng));
    DualMatrix::new(s, d).unwrap()
}

/// `Σ_{i=1..t} M^{t−i} M₀ M^{i−1}` by direct summation.
pub fn oracle_power_dual_part(m: &RealMatrix, m0: &RealMatrix, t: usize) -> RealMatrix {
    let mut acc = RealMatrix::zeros(m.rows(), m.cols());
    for i in 1..=t {
        acc = &acc + &(&(&m.pow(t - i) * m0) * &m.pow(i - 1));
    }
    acc
}

/// Gauss–Jordan solve of `A x = b` on plain rational rows. Returns the
/// particular solution (free variables zero) and the nullity, or `None` when
/// inconsistent.
pub fn oracle_solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<(Vec<Rational>, usize)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        let Some(p) = (pr..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(pr, p);
        let inv = Rational::one() / aug[pr][c].clone();
        for v in aug[pr].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = aug[pr].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != pr && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * p);
                }
            }
        }
        pivots.push(c);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    if aug[pr..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some((x, cols - pivots.len()))
}

pub fn oracle_rank(m: &RealMatrix) -> usize {
    let rows: Vec<Vec<Rational>> = m.to_rows();
    let zeros = vec![Rational::zero(); m.rows()];
    let (_, nullity) = oracle_solve(&rows, &zeros).expect("homogeneous systems are consistent");
    m.cols() - nullity
}

/// Solves for `S` in the dual-part equations of the weak Drazin inverse with
/// the standard part fixed at `X = M^D`:
///
/// `M S M^t = K − M X K − M₀ X M^t`,
/// `S − X M S − S M X = X M₀ X`,
/// `M S − S M = X M₀ − M₀ X`,
///
/// by vectorizing each linear map over the basis `E_ij`. Returns `S` and the
/// nullity of the system.
pub fn oracle_weak_drazin_dual_part(
    m: &RealMatrix,
    m0: &RealMatrix,
    x: &RealMatrix,
    t: usize,
) -> Option<(RealMatrix, usize)> {
    let n = m.rows();
    let mt = m.pow(t);
    let k = oracle_power_dual_part(m, m0, t);
    let maps = |s: &RealMatrix| -> [RealMatrix; 3] {
        [
            &(m * s) * &mt,
            &(s - &(&(x * m) * s)) - &(&(s * m) * x),
            &(m * s) - &(s * m),
        ]
    };
    let rhs = [
        &(&k - &(&(m * x) * &k)) - &(&(m0 * x) * &mt),
        &(x * m0) * x,
        &(x * m0) - &(m0 * x),
    ];
    let unknowns = n * n;
    let mut a = vec![vec![Rational::zero(); unknowns]; 3 * unknowns];
    for col in 0..unknowns {
        let mut e = RealMatrix::zeros(n, n);
        e[(col / n, col % n)] = int(1);
        for (block, image) in maps(&e).iter().enumerate() {
            for (idx, v) in image.entries().enumerate() {
                a[block * unknowns + idx][col] = v.clone();
            }
        }
    }
    let b: Vec<Rational> = rhs.iter().flat_map(|r| r.entries().cloned()).collect();
    let (sol, nullity) = oracle_solve(&a, &b)?;
    Some((
        RealMatrix::from_fn(n, n, |i, j| sol[i * n + j].clone()),
        nullity,
    ))
}

pub fn e31() -> DualMatrix {
    dm(
        &[&[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 1, 0, 0], &[1, 0, 0, 0]],
        &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 0, 1], &[0, 1, 1, 0]],
    )
}

pub fn e32() -> DualMatrix {
    dm(
        &[
            &[4, 8, 12, 10],
            &[2, 8, 10, 8],
            &[0, -2, -2, 0],
            &[-2, -4, -6, -6],
        ],
        &[
            &[-4, 3, -3, 2],
            &[5, 4, 0, 2],
            &[-7, 7, 1, 0],
            &[2, -3, 2, 1],
        ],
    )
}

pub fn e41() -> DualMatrix {
    dm(&[&[1, 0], &[0, 0]], &[&[0, 0], &[1, 1]])
}

pub fn e43() -> DualMatrix {
    dm(&[&[1, 0], &[0, 0]], &[&[0, 1], &[1, 0]])
}

pub fn b42() -> DualMatrix {
    dcol(&[1, 0], &[0, 1])
}

/// Parses rows of rational strings, e.g. `&["48", "-55/4"]`.
pub fn qmat(rows: &[&[&str]]) -> RealMatrix {
    RealMatrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|s| dual_ginv::matrix::parse_rational(s).unwrap())
                    .collect()
            })
            .collect(),
    )
}
