#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use ksym_core::automorphism::CanonicalDecomposition;
use ksym_core::catalog::{lookup, CatalogEntry, Series, LISTED};
use ksym_core::{Exact, Matrix, Scalar};

/// Every listed catalog algebra, built once per test binary.
pub fn catalog() -> &'static [Arc<CatalogEntry<Exact>>] {
    static CELL: OnceLock<Vec<Arc<CatalogEntry<Exact>>>> = OnceLock::new();
    CELL.get_or_init(|| {
        LISTED
            .iter()
            .map(|n| Arc::new(lookup(n).unwrap()))
            .collect()
    })
}

pub fn entry(name: &str) -> Arc<CatalogEntry<Exact>> {
    catalog()
        .iter()
        .find(|e| e.short_name() == name)
        .cloned()
        .unwrap_or_else(|| Arc::new(lookup(name).unwrap()))
}

pub fn int(n: i64) -> Exact {
    Exact::from_i64(n)
}

/// `c · Re tr(XY)` on the defining matrices, with `c` the trace-form
/// constant of the series.
pub fn trace_form_killing(e: &CatalogEntry<Exact>) -> Matrix<Exact> {
    let n = e.n as i64;
    let c = match e.series {
        Series::Su | Series::SlReal => 2 * n,
        Series::So => n - 2,
        Series::Sp => 2 * n + 2,
    };
    let basis = e.realization.basis();
    let size = e.realization.matrix_size();
    Matrix::from_fn(basis.len(), basis.len(), |i, j| {
        let (x, y) = (&basis[i], &basis[j]);
        let mut acc = Exact::zero();
        for r in 0..size {
            for k in 0..size {
                acc = acc + &(x.re[(r, k)].clone() * &y.re[(k, r)])
                    - &(x.im[(r, k)].clone() * &y.im[(k, r)]);
            }
        }
        acc * &int(c)
    })
}

/// Basis of the antisymmetric forms on `m` that are `ad_h`-invariant,
/// `ν`-invariant and closed after zero extension to `g`.
pub fn invariant_closed_forms(d: &CanonicalDecomposition<Exact>) -> Vec<Matrix<Exact>> {
    let alg = d.algebra();
    let n = alg.dim();
    let k = d.m().dim();
    let ads: Vec<Matrix<Exact>> = d
        .h()
        .basis()
        .iter()
        .map(|t| d.ad_on_m(t).unwrap())
        .collect();
    let nu = d.nu_on_m().unwrap();
    let c = Matrix::from_columns(
        k,
        &(0..n)
            .map(|j| d.m_coordinates(&unit(n, j)).unwrap())
            .collect::<Vec<_>>(),
    );
    let brackets: Vec<Vec<Vec<Exact>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| alg.bracket(&unit(n, i), &unit(n, j)).unwrap())
                .collect()
        })
        .collect();

    let constraints = |omega: &Matrix<Exact>| -> Vec<Exact> {
        let mut out = Vec::new();
        for a in &ads {
            let lhs = a
                .transpose()
                .mul(omega)
                .unwrap()
                .add(&omega.mul(a).unwrap())
                .unwrap();
            out.extend(lhs.to_rows().into_iter().flatten());
        }
        let lhs = nu
            .transpose()
            .mul(omega)
            .unwrap()
            .mul(&nu)
            .unwrap()
            .sub(omega)
            .unwrap();
        out.extend(lhs.to_rows().into_iter().flatten());
        let w = c.transpose().mul(omega).unwrap().mul(&c).unwrap();
        let wv = |v: &[Exact], l: usize| -> Exact {
            v.iter()
                .enumerate()
                .fold(Exact::zero(), |acc, (p, x)| acc + &(x.clone() * &w[(p, l)]))
        };
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    out.push(
                        wv(&brackets[i][j], l) + &wv(&brackets[j][l], i) + &wv(&brackets[l][i], j),
                    );
                }
            }
        }
        out
    };

    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .collect();
    if pairs.is_empty() {
        return Vec::new();
    }
    let gens: Vec<Matrix<Exact>> = pairs
        .iter()
        .map(|&(a, b)| {
            Matrix::from_fn(k, k, |r, s| {
                if (r, s) == (a, b) {
                    int(1)
                } else if (r, s) == (b, a) {
                    int(-1)
                } else {
                    Exact::zero()
                }
            })
        })
        .collect();
    let cols: Vec<Vec<Exact>> = gens.iter().map(constraints).collect();
    let system = Matrix::from_columns(cols[0].len(), &cols);
    system
        .kernel(0.0)
        .into_iter()
        .map(|coef| {
            coef.iter()
                .zip(&gens)
                .fold(Matrix::zeros(k, k), |acc, (x, g)| {
                    acc.add(&g.scale(x)).unwrap()
                })
        })
        .collect()
}

/// Whether every combination of `forms` is degenerate.
///
/// `det(Σ c_i Ω_i)` has degree at most `k` in each `c_i`, so vanishing on the
/// grid `{0..k}^s` proves it vanishes identically. Returns `None` when the
/// grid exceeds `limit` points.
pub fn all_degenerate(forms: &[Matrix<Exact>], k: usize, limit: usize) -> Option<bool> {
    let s = forms.len();
    if k == 0 {
        return Some(false);
    }
    if s == 0 {
        return Some(true);
    }
    let side = k + 1;
    let total = side.checked_pow(s as u32)?;
    if total > limit {
        return None;
    }
    for idx in 0..total {
        let mut rem = idx;
        let mut acc = Matrix::zeros(k, k);
        for f in forms {
            let c = (rem % side) as i64;
            rem /= side;
            acc = acc.add(&f.scale(&int(c))).unwrap();
        }
        if acc.rank(0.0) == k {
            return Some(false);
        }
    }
    Some(true)
}

pub fn unit(n: usize, i: usize) -> Vec<Exact> {
    let mut v = vec![Exact::zero(); n];
    v[i] = int(1);
    v
}
