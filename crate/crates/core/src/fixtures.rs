//! Small named oriented matroids used throughout the tests and the CLI.
//!
//! * `F1`: one element, rank 1.
//! * `F2`: two coordinate lines in the plane (all nine sign vectors).
//! * `F3`: the lines `x = 0`, `y = 0`, `x + y = 0` (uniform `U(2,3)`).
//! * `F4`: the three coordinate planes in space (all 27 sign vectors).

use rand::Rng;

use crate::arrangement::Arrangement;
use crate::om::{GroundSet, OrientedMatroid};
use crate::sign::SignVector;

fn from_lines(lines: &[&str]) -> OrientedMatroid {
    let n = lines[0].len();
    OrientedMatroid::from_covectors(
        GroundSet::new(n).expect("fixture size"),
        lines.iter().map(|s| s.parse::<SignVector>().expect("fixture sign vector")),
    )
    .expect("fixture is an oriented matroid")
}

fn all_sign_vectors(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| ['0', '+', '-'].map(|c| format!("{p}{c}")))
            .collect();
    }
    out
}

pub fn f1() -> OrientedMatroid {
    from_lines(&["0", "+", "-"])
}

pub fn f2() -> OrientedMatroid {
    let v = all_sign_vectors(2);
    from_lines(&v.iter().map(String::as_str).collect::<Vec<_>>())
}

pub fn f3() -> OrientedMatroid {
    from_lines(&[
        "000", "0++", "0--", "+0+", "-0-", "+-0", "-+0", "+++", "---", "+-+", "+--", "-++",
        "-+-",
    ])
}

pub fn f4() -> OrientedMatroid {
    let v = all_sign_vectors(3);
    from_lines(&v.iter().map(String::as_str).collect::<Vec<_>>())
}

/// `len` random nonzero integer normals in `dimension` coordinates with
/// entries in `-bound..=bound`.
pub fn random_arrangement<R: Rng + ?Sized>(
    rng: &mut R,
    dimension: usize,
    len: usize,
    bound: i64,
) -> Arrangement {
    let rows: Vec<Vec<i64>> = (0..len)
        .map(|_| loop {
            let row: Vec<i64> = (0..dimension).map(|_| rng.gen_range(-bound..=bound)).collect();
            if row.iter().any(|&v| v != 0) {
                break row;
            }
        })
        .collect();
    Arrangement::from_integers(&rows).expect("nonzero rows")
}

/// Normal vectors of the arrangements behind `F2`, `F3`, `F4`, as integer rows.
pub fn f2_normals() -> Vec<Vec<i64>> {
    vec![vec![1, 0], vec![0, 1]]
}

pub fn f3_normals() -> Vec<Vec<i64>> {
    vec![vec![1, 0], vec![0, 1], vec![1, 1]]
}

pub fn f4_normals() -> Vec<Vec<i64>> {
    vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
}
