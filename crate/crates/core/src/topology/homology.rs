//! Simplicial complexes, order complexes and reduced integral homology.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poset::FinitePoset;
use super::TopologyError;

/// Default bound on the number of faces (including the empty face).
pub const DEFAULT_FACE_LIMIT: usize = 5000;

/// An abstract simplicial complex given by its facets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<usize>>,
}

/// `H̃_k ≅ ℤ^rank ⊕ ⊕ ℤ/t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub dim: isize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl SimplicialComplex {
    /// Drops facets contained in other facets; vertex lists are sorted.
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Self {
        let mut sets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        sets.sort();
        sets.dedup();
        let keep: Vec<Vec<usize>> = sets
            .iter()
            .filter(|f| {
                !sets
                    .iter()
                    .any(|g| g.len() > f.len() && f.iter().all(|v| g.binary_search(v).is_ok()))
            })
            .cloned()
            .collect();
        SimplicialComplex {
            vertices,
            facets: keep,
        }
    }

    /// Every face, grouped by dimension starting at the empty face.
    pub fn faces(&self, limit: usize) -> Result<Vec<Vec<Vec<usize>>>, TopologyError> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(Vec::new());
        for f in &self.facets {
            if f.len() >= 63 {
                return Err(TopologyError::SizeGuard {
                    size: usize::MAX,
                    limit,
                });
            }
            for mask in 1u64..(1 << f.len()) {
                let face: Vec<usize> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                seen.insert(face);
                if seen.len() > limit {
                    return Err(TopologyError::SizeGuard {
                        size: seen.len(),
                        limit,
                    });
                }
            }
        }
        let top = seen.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top + 1];
        for f in seen {
            by_dim[f.len()].push(f);
        }
        by_dim.iter_mut().for_each(|v| v.sort());
        Ok(by_dim)
    }

    pub fn reduced_homology(&self, limit: usize) -> Result<Vec<HomologyGroup>, TopologyError> {
        Ok(homology_from_faces(&self.faces(limit)?))
    }

    pub fn is_homology_contractible(&self, limit: usize) -> Result<bool, TopologyError> {
        Ok(self.reduced_homology(limit)?.iter().all(HomologyGroup::is_trivial))
    }

    /// `χ̃ = Σ_k (−1)^k f_k`, counting the empty face in dimension −1.
    pub fn reduced_euler_characteristic(&self, limit: usize) -> Result<i64, TopologyError> {
        Ok(euler(&self.faces(limit)?))
    }
}

/// Order complex of `p`; facets are the maximal chains.
pub fn order_complex(p: &FinitePoset) -> SimplicialComplex {
    let covers = p.cover_relations();
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); p.len()];
    for (a, b) in covers {
        up[a].push(b);
    }
    let mut facets = Vec::new();
    let mut stack: Vec<Vec<usize>> = p.minimal_elements().into_iter().map(|m| vec![m]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty chain");
        if up[last].is_empty() {
            facets.push(chain);
        } else {
            for &b in &up[last] {
                let mut c = chain.clone();
                c.push(b);
                stack.push(c);
            }
        }
    }
    SimplicialComplex::new(p.labels().to_vec(), facets)
}

/// All chains of `p` grouped by size, the empty chain included.
pub fn chains(p: &FinitePoset, limit: usize) -> Result<Vec<Vec<Vec<usize>>>, TopologyError> {
    let order = p.linear_extension();
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    let mut count = 1usize;
    let mut stack: Vec<Vec<usize>> = order.iter().map(|&v| vec![v]).collect();
    while let Some(chain) = stack.pop() {
        count += 1;
        if count > limit {
            return Err(TopologyError::SizeGuard { size: count, limit });
        }
        let last = *chain.last().expect("nonempty chain");
        for &c in &order {
            if p.lt(last, c) {
                let mut next = chain.clone();
                next.push(c);
                stack.push(next);
            }
        }
        if by_dim.len() <= chain.len() {
            by_dim.resize(chain.len() + 1, Vec::new());
        }
        let mut sorted = chain;
        sorted.sort_unstable();
        by_dim[sorted.len()].push(sorted);
    }
    by_dim.iter_mut().for_each(|v| v.sort());
    Ok(by_dim)
}

/// Reduced homology of the order complex, enumerating chains directly.
pub fn poset_homology(p: &FinitePoset, limit: usize) -> Result<Vec<HomologyGroup>, TopologyError> {
    Ok(homology_from_faces(&chains(p, limit)?))
}

pub fn poset_is_homology_contractible(p: &FinitePoset, limit: usize) -> Result<bool, TopologyError> {
    Ok(poset_homology(p, limit)?.iter().all(HomologyGroup::is_trivial))
}

fn euler(faces: &[Vec<Vec<usize>>]) -> i64 {
    faces
        .iter()
        .enumerate()
        .map(|(k, f)| if k % 2 == 1 { f.len() as i64 } else { -(f.len() as i64) })
        .sum()
}

/// `faces[k]` holds the faces with `k` vertices (dimension `k − 1`).
fn homology_from_faces(faces: &[Vec<Vec<usize>>]) -> Vec<HomologyGroup> {
    let index: Vec<HashMap<&Vec<usize>, usize>> = faces
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    // boundary[k]: C_k → C_{k−1} in vertex-count indexing, k ≥ 1
    let mut ranks = vec![0usize; faces.len() + 1];
    let mut torsion: Vec<Vec<BigInt>> = vec![Vec::new(); faces.len() + 1];
    for k in 1..faces.len() {
        let cols: Vec<Vec<(usize, i64)>> = faces[k]
            .iter()
            .map(|f| {
                (0..f.len())
                    .map(|i| {
                        let mut g = f.clone();
                        g.remove(i);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (index[k - 1][&g], sign)
                    })
                    .collect()
            })
            .collect();
        let (r, t) = smith(faces[k - 1].len(), cols);
        ranks[k] = r;
        torsion[k] = t;
    }
    (0..faces.len())
        .map(|k| HomologyGroup {
            dim: k as isize - 1,
            rank: faces[k].len() - ranks[k] - ranks[k + 1],
            torsion: torsion[k + 1].iter().map(BigInt::to_string).collect(),
        })
        .collect()
}

/// Rank and nontrivial invariant factors of an integer matrix given by
/// sparse columns. Unit pivots are eliminated sparsely; whatever is left
/// goes through a dense Smith normal form.
fn smith(nrows: usize, cols: Vec<Vec<(usize, i64)>>) -> (usize, Vec<BigInt>) {
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); nrows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols.len()];
    for (c, entries) in cols.into_iter().enumerate() {
        for (r, v) in entries {
            if v != 0 {
                rows[r].insert(c, v);
                col_rows[c].insert(r);
            }
        }
    }
    let mut active_rows: BTreeSet<usize> = (0..nrows).filter(|&r| !rows[r].is_empty()).collect();
    let mut rank = 0;
    'outer: loop {
        let pivot = active_rows.iter().find_map(|&r| {
            rows[r]
                .iter()
                .find(|(_, v)| v.abs() == 1)
                .map(|(&c, &v)| (r, c, v))
        });
        let Some((r, c, u)) = pivot else { break };
        let pivot_row = rows[r].clone();
        let others: Vec<usize> = col_rows[c].iter().copied().filter(|&r2| r2 != r).collect();
        let mut updates = Vec::with_capacity(others.len());
        for &r2 in &others {
            let factor = rows[r2][&c] * u;
            let mut row = rows[r2].clone();
            for (&j, &v) in &pivot_row {
                let Some(delta) = factor.checked_mul(v) else { break 'outer };
                let old = row.get(&j).copied().unwrap_or(0);
                let Some(new) = old.checked_sub(delta) else { break 'outer };
                if new == 0 {
                    row.remove(&j);
                } else {
                    row.insert(j, new);
                }
            }
            updates.push((r2, row));
        }
        for (r2, row) in updates {
            for &j in rows[r2].keys() {
                col_rows[j].remove(&r2);
            }
            for &j in row.keys() {
                col_rows[j].insert(r2);
            }
            if row.is_empty() {
                active_rows.remove(&r2);
            }
            rows[r2] = row;
        }
        for &j in rows[r].keys() {
            col_rows[j].remove(&r);
        }
        rows[r].clear();
        active_rows.remove(&r);
        rank += 1;
    }
    let live_rows: Vec<usize> = active_rows.into_iter().collect();
    if live_rows.is_empty() {
        return (rank, Vec::new());
    }
    let live_cols: Vec<usize> = live_rows
        .iter()
        .flat_map(|&r| rows[r].keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut dense: Vec<Vec<BigInt>> = live_rows
        .iter()
        .map(|&r| {
            live_cols
                .iter()
                .map(|c| BigInt::from(rows[r].get(c).copied().unwrap_or(0)))
                .collect()
        })
        .collect();
    let diag = dense_smith_diagonal(&mut dense);
    let mut factors = invariant_factors(diag);
    rank += factors.len();
    factors.retain(|d| !d.is_one());
    (rank, factors)
}

fn dense_smith_diagonal(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry in the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    for j in t..n {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    for i in t..m {
                        let v = &a[i][t] * &q;
                        a[i][j] -= v;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
    }
    diag
}

fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}
