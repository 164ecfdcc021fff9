use mop_core::exact::{rat, Rational};
use mop_core::families::{type1, type2, MultiIndex, WeightSystem};
use mop_core::oracle::{
    check_biorthogonality, check_type1_orthogonality, check_type2_orthogonality,
    oracle_solve_type1, oracle_solve_type2,
};

const ALPHAS: [(i64, i64); 3] = [(1, 2), (1, 3), (1, 5)];

fn indices(p: usize, max_total: u64, min_entry: u64) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![min_entry; p];
    loop {
        if cur.iter().sum::<u64>() <= max_total {
            out.push(MultiIndex::new(cur.clone()));
        }
        let mut q = 0;
        loop {
            if q == p {
                return out;
            }
            if cur[q] < max_total {
                cur[q] += 1;
                break;
            }
            cur[q] = min_entry;
            q += 1;
        }
    }
}

fn systems(p: usize, big_n: u64) -> Vec<WeightSystem> {
    let alpha: Vec<Rational> = ALPHAS[..p].iter().map(|&(a, b)| rat(a, b)).collect();
    let beta = rat(1, 4);
    vec![
        WeightSystem::laguerre(alpha.clone()).unwrap(),
        WeightSystem::jacobi_pineiro(alpha.clone(), beta.clone()).unwrap(),
        WeightSystem::hahn(alpha, beta, big_n).unwrap(),
    ]
}

#[test]
fn type2_matches_oracle() {
    for p in 1..=3 {
        for ws in systems(p, 5) {
            for n in indices(p, 4, 0) {
                let b = type2(&ws, &n).unwrap();
                let o = oracle_solve_type2(&ws, &n).unwrap();
                assert!(b.same_as(&o).unwrap(), "{ws} n={n}");
                assert!(check_type2_orthogonality(&ws, &n, &b).unwrap().pass(), "{ws} n={n}");
            }
        }
    }
}

#[test]
fn type1_matches_oracle() {
    for p in 1..=3 {
        for ws in systems(p, 5) {
            for n in indices(p, 4, 0).into_iter().filter(|n| n.total() > 0) {
                let a = type1(&ws, &n).unwrap();
                let o = oracle_solve_type1(&ws, &n).unwrap();
                assert!(a.same_as(&o).unwrap(), "{ws} n={n}");
                assert!(check_type1_orthogonality(&ws, &n, &a).unwrap().pass(), "{ws} n={n}");
            }
        }
    }
}

#[test]
fn hahn_lattice_sizes() {
    for big_n in 4..=8 {
        let ws = &systems(2, big_n)[2];
        for n in indices(2, 4, 1) {
            let a = type1(ws, &n).unwrap();
            assert!(a.same_as(&oracle_solve_type1(ws, &n).unwrap()).unwrap());
        }
    }
}

#[test]
fn biorthogonality_grid() {
    for ws in systems(2, 6) {
        for n in indices(2, 3, 0) {
            for m in indices(2, 4, 0).into_iter().filter(|m| m.total() > 0) {
                let covered = m.as_slice().iter().zip(n.as_slice()).all(|(a, b)| a <= b)
                    || m.total() > n.total();
                if covered {
                    assert!(check_biorthogonality(&ws, &n, &m).unwrap(), "{ws} n={n} m={m}");
                }
            }
        }
    }
}
