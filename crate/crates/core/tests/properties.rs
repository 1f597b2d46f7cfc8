use num_bigint::BigInt;
use omvar::arrangement::Arrangement;
use omvar::fixtures::random_arrangement;
use omvar::poly::{det_modp, det_symbolic, Matrix, MultiPoly, PolyMatrix, PrimeField};
use omvar::varchenko::{det_formula, expand_formula, varchenko, ElementOrder};
use omvar::{ElemSet, SignVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NVARS: usize = 3;

fn sign_vector(len: usize) -> impl Strategy<Value = SignVector> {
    proptest::collection::vec(0u8..3, len).prop_map(|v| {
        let s: String = v.iter().map(|&c| ['0', '+', '-'][c as usize]).collect();
        s.parse().unwrap()
    })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((proptest::collection::vec(0u8..3, NVARS), -5i64..=5), 0..5).prop_map(
        |terms| {
            terms.into_iter().fold(MultiPoly::zero(NVARS), |acc, (e, c)| {
                acc.checked_add(&MultiPoly::monomial(NVARS, e, c)).unwrap()
            })
        },
    )
}

fn point() -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(any::<u64>(), NVARS)
}

fn poly_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
    proptest::collection::vec(poly(), n * n).prop_map(move |entries| {
        Matrix::from_fn(n, n, |i, j| entries[i * n + j].clone())
    })
}

/// Determinant by permutation expansion.
fn leibniz(a: &PolyMatrix) -> MultiPoly {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..n {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = a.rows();
    let mut total = MultiPoly::zero(NVARS);
    for p in perms(n) {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = MultiPoly::constant(NVARS, if inversions % 2 == 0 { 1 } else { -1 });
        for (i, &j) in p.iter().enumerate() {
            term = term.checked_mul(a.get(i, j)).unwrap();
        }
        total = total.checked_add(&term).unwrap();
    }
    total
}

/// Region count from Whitney's formula: `(−1)^d Σ_S (−1)^{|S|} (−1)^{d − r(S)}`.
fn zaslavsky(arr: &Arrangement, dimension: usize) -> i64 {
    let sum: i64 = ElemSet::full(arr.len())
        .subsets()
        .map(|s| {
            let r = arr.rank_of(s);
            if (s.len() + dimension - r) % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .sum();
    if dimension % 2 == 0 {
        sum
    } else {
        -sum
    }
}

proptest! {
    #[test]
    fn composition_is_associative_and_idempotent(
        x in sign_vector(6), y in sign_vector(6), z in sign_vector(6)
    ) {
        let xy_z = x.compose(&y).unwrap().compose(&z).unwrap();
        let x_yz = x.compose(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(x.compose(&x).unwrap(), x);
        prop_assert_eq!(-x.compose(&y).unwrap(), (-x).compose(&-y).unwrap());
        prop_assert!(x.conforms_to(&x.compose(&y).unwrap()));
    }

    #[test]
    fn separator_symmetry(x in sign_vector(6), y in sign_vector(6)) {
        let s = x.separator(&y).unwrap();
        prop_assert_eq!(s, y.separator(&x).unwrap());
        prop_assert_eq!(s, (-x).separator(&-y).unwrap());
        prop_assert!(s.is_subset(x.support().intersection(y.support())));
        prop_assert_eq!(x.separator(&-x).unwrap(), x.support());
    }

    #[test]
    fn reorientation_is_an_involution(x in sign_vector(6), bits in 0u64..64) {
        let a = ElemSet::from_elems((0..6).filter(|i| bits >> i & 1 == 1));
        prop_assert_eq!(x.reorient(a).reorient(a), x);
        prop_assert_eq!(x.reorient(a).zero_set(), x.zero_set());
        let text = x.to_string();
        prop_assert_eq!(text.parse::<SignVector>().unwrap(), x);
    }

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.checked_add(&b).unwrap(), b.checked_add(&a).unwrap());
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.checked_mul(&MultiPoly::one(NVARS)).unwrap(), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(ab.div_exact(&b).unwrap(), Some(a));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), x in point()) {
        let f = PrimeField::default();
        let x: Vec<u64> = x.iter().map(|v| v % f.modulus()).collect();
        let (ea, eb) = (a.eval_modp(&f, &x).unwrap(), b.eval_modp(&f, &x).unwrap());
        prop_assert_eq!(a.checked_add(&b).unwrap().eval_modp(&f, &x).unwrap(), f.add(ea, eb));
        prop_assert_eq!(a.checked_mul(&b).unwrap().eval_modp(&f, &x).unwrap(), f.mul(ea, eb));
    }

    #[test]
    fn symbolic_det_matches_expansion_and_modp(a in poly_matrix(3), x in point()) {
        let det = det_symbolic(&a, 12).unwrap();
        prop_assert_eq!(&det, &leibniz(&a));
        let f = PrimeField::default();
        let x: Vec<u64> = x.iter().map(|v| v % f.modulus()).collect();
        prop_assert_eq!(det_modp(&a, &f, &x).unwrap(), det.eval_modp(&f, &x).unwrap());
    }

    #[test]
    fn random_arrangements_are_oriented_matroids(seed in any::<u64>(), d in 2usize..=4, n in 3usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arr = random_arrangement(&mut rng, d, n, 3);
        let m = arr.oriented_matroid().unwrap();
        prop_assert!(m.check_axioms().passed());
        let rank = arr.rank_of(ElemSet::full(n));
        prop_assert_eq!(m.topes().len() as i64, zaslavsky(&arr, rank));
    }

}

proptest! {
    // symbolic 12x12 determinants are slow in debug builds
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn varchenko_matrix_shape_and_formula(seed in any::<u64>(), d in 2usize..=3, n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_arrangement(&mut rng, d, n, 2).oriented_matroid().unwrap();
        let v = varchenko(&m).matrix;
        for i in 0..v.rows() {
            prop_assert!(v.get(i, i).is_one());
            for j in 0..i {
                prop_assert_eq!(v.get(i, j), v.get(j, i));
            }
        }
        prop_assume!(m.topes().len() <= 12);
        let terms = det_formula(&m, &ElementOrder::natural(n)).unwrap();
        let formula = expand_formula(terms.iter().map(|t| (t.zeros, t.exponent)), n).unwrap();
        prop_assert_eq!(&det_symbolic(&v, 12).unwrap(), &formula);
        prop_assert_eq!(formula.constant_term(), BigInt::from(1));
    }
}
