//! Small-rank instances of the classical rows of the 3-symmetric tables.
//!
//! Table 1 rows are torus automorphisms of the compact algebras. Table 2 rows
//! are duals of Table 1 instances under involutions commuting with `ν`, and
//! Table 3 keeps the rows whose involution is outer.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{build, inner_automorphism_from_torus, CMatrix, CatalogEntry, Series, TorusWeights};
use crate::algebra::LieAlgebra;
use crate::automorphism::{fitting_decomposition, make_automorphism, FiniteOrderAutomorphism};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::real_forms::{dual_real_form, killing_signature, make_involution_split};
use crate::scalar::Scalar;
use crate::symplectic::center_of_h;

const ORDER: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DualKind {
    /// Torus automorphism of a compact algebra.
    Compact,
    /// Dual under an inner involution.
    Inner,
    /// Dual under an outer involution.
    Outer,
    /// Dual of `g ⊕ g` under the swap: the realified complex algebra.
    Complex,
}

impl DualKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DualKind::Compact => "compact",
            DualKind::Inner => "inner",
            DualKind::Outer => "outer",
            DualKind::Complex => "complex",
        }
    }
}

impl fmt::Display for DualKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct TableRow<S> {
    pub table: u8,
    pub group: String,
    pub isotropy: String,
    /// Compact algebra the row comes from, e.g. `su(3)`.
    pub source: String,
    pub params: Vec<(&'static str, i64)>,
    pub construction: String,
    pub kind: DualKind,
    pub nu: FiniteOrderAutomorphism<S>,
    pub expected_symplectic: bool,
    /// `(positive, negative)` inertia of the Killing form.
    pub killing_signature: (usize, usize),
}

impl<S> TableRow<S> {
    pub fn params_string(&self) -> String {
        let parts: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{}={}", k, v))
            .collect();
        parts.join(",")
    }
}

struct Instance<S> {
    entry: Arc<CatalogEntry<S>>,
    /// Sizes of the weight groups (`a, b, c` for su, `a, rest` otherwise).
    groups: Vec<usize>,
    params: Vec<(&'static str, i64)>,
    group: String,
    isotropy: String,
    construction: String,
    nu: FiniteOrderAutomorphism<S>,
}

/// `name(p,q)` with `p ≥ q`, `name(p)` when `q = 0`, `None` when trivial.
fn indefinite(name: &str, p: usize, q: usize, trivial_below: usize) -> Option<String> {
    let (x, y) = (p.max(q), p.min(q));
    if x + y < trivial_below {
        None
    } else if y == 0 {
        Some(format!("{}({})", name, x))
    } else {
        Some(format!("{}({},{})", name, x, y))
    }
}

fn product(factors: Vec<Option<String>>) -> String {
    let parts: Vec<String> = factors.into_iter().flatten().collect();
    if parts.is_empty() {
        "{e}".to_string()
    } else {
        parts.join("×")
    }
}

/// `{f1×f2}/Z_k`, without the quotient when `k = 1` and without braces
/// around a single factor.
fn quotient(factors: Vec<Option<String>>, k: usize) -> String {
    let parts: Vec<String> = factors.into_iter().flatten().collect();
    match (parts.len(), k) {
        (1, 1) => parts[0].clone(),
        (_, 1) => format!("{{{}}}", product(parts.into_iter().map(Some).collect())),
        _ => format!(
            "{{{}}}/Z_{}",
            product(parts.into_iter().map(Some).collect()),
            k
        ),
    }
}

fn complex_factor(name: &str, n: usize, trivial_below: usize) -> Option<String> {
    (n >= trivial_below).then(|| format!("{}({},C)", name, n))
}

fn sign_run(size: usize, negatives: usize) -> impl Iterator<Item = i64> {
    (0..size).map(move |i| if i < negatives { -1 } else { 1 })
}

struct Cache<S> {
    entries: BTreeMap<(Series, usize), Arc<CatalogEntry<S>>>,
}

impl<S: Scalar> Cache<S> {
    fn get(&mut self, series: Series, n: usize) -> Result<Arc<CatalogEntry<S>>> {
        if let Some(e) = self.entries.get(&(series, n)) {
            return Ok(e.clone());
        }
        let e = Arc::new(build::<S>(series, n)?);
        self.entries.insert((series, n), e.clone());
        Ok(e)
    }
}

fn torus<S: Scalar>(
    entry: &CatalogEntry<S>,
    weights: &[i64],
) -> Result<FiniteOrderAutomorphism<S>> {
    let nu = inner_automorphism_from_torus(entry, &TorusWeights::raw(weights, ORDER))?;
    if nu.order() != ORDER {
        return Err(Error::WrongOrder {
            claimed: ORDER,
            actual: Some(nu.order()),
        });
    }
    Ok(nu)
}

fn weight_string(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("Ad(torus w=({}) mod {})", parts.join(","), ORDER)
}

fn compact_instances<S: Scalar>(cache: &mut Cache<S>, max_rank: usize) -> Result<Vec<Instance<S>>> {
    let mut out = Vec::new();
    // su(n), n = a + b + c.
    for n in 2..=max_rank + 1 {
        let entry = cache.get(Series::Su, n)?;
        for a in 0..=n {
            for b in a.max(1)..=n {
                if a + 2 * b > n {
                    break;
                }
                let c = n - a - b;
                let w: Vec<i64> = sign_free(a, 0)
                    .chain(sign_free(b, 1))
                    .chain(sign_free(c, 2))
                    .collect();
                out.push(Instance {
                    entry: entry.clone(),
                    groups: vec![a, b, c],
                    params: vec![("a", a as i64), ("b", b as i64), ("c", c as i64)],
                    group: format!("SU({})/Z_{}", n, n),
                    isotropy: format!(
                        "S{{{}}}/Z_{}",
                        product(vec![
                            indefinite("U", a, 0, 1),
                            indefinite("U", b, 0, 1),
                            indefinite("U", c, 0, 1)
                        ]),
                        n
                    ),
                    construction: weight_string(&w),
                    nu: torus(&entry, &w)?,
                });
            }
        }
    }
    // so(2n+1), sp(n), so(2n): `a` rotating slots of weight 1 first.
    let classical = [(Series::So, 1usize), (Series::Sp, 1), (Series::So, 3)];
    for (idx, &(series, lo)) in classical.iter().enumerate() {
        for r in lo..=max_rank {
            let n = match idx {
                0 => 2 * r + 1,
                1 => r,
                _ => 2 * r,
            };
            let entry = cache.get(series, n)?;
            for a in 1..=r {
                let w: Vec<i64> = sign_free(a, 1).chain(sign_free(r - a, 0)).collect();
                let (group, isotropy) = match idx {
                    0 => (
                        format!("SO({})", n),
                        product(vec![
                            indefinite("U", a, 0, 1),
                            indefinite("SO", n - 2 * a, 0, 2),
                        ]),
                    ),
                    1 => (
                        format!("Sp({})/Z_2", n),
                        format!(
                            "{{{}}}/Z_2",
                            product(vec![
                                indefinite("U", a, 0, 1),
                                indefinite("Sp", n - a, 0, 1)
                            ])
                        ),
                    ),
                    _ => (
                        format!("SO({})/Z_2", n),
                        format!(
                            "{{{}}}/Z_2",
                            product(vec![
                                indefinite("U", a, 0, 1),
                                indefinite("SO", n - 2 * a, 0, 2)
                            ])
                        ),
                    ),
                };
                let rest = if series == Series::Sp {
                    r - a
                } else {
                    n - 2 * a
                };
                out.push(Instance {
                    entry: entry.clone(),
                    groups: vec![a, rest],
                    params: vec![("a", a as i64)],
                    group,
                    isotropy,
                    construction: weight_string(&w),
                    nu: torus(&entry, &w)?,
                });
            }
        }
    }
    Ok(out)
}

fn sign_free(len: usize, value: i64) -> impl Iterator<Item = i64> {
    core::iter::repeat_n(value, len)
}

/// Keeps the first instance for each `(algebra, isotropy, dim h, dim Z(h))`.
fn dedupe_compact<S: Scalar>(instances: Vec<Instance<S>>) -> Result<Vec<Instance<S>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for inst in instances {
        let d = fitting_decomposition(&inst.nu)?;
        let key = (
            inst.entry.name.clone(),
            inst.isotropy.clone(),
            d.h().dim(),
            center_of_h(&d).dim(),
        );
        if seen.insert(key) {
            out.push(inst);
        }
    }
    Ok(out)
}

fn signature<S: Scalar>(alg: &LieAlgebra<S>) -> (usize, usize) {
    let i = killing_signature(alg);
    (i.positive, i.negative)
}

fn compact_row<S: Scalar>(inst: &Instance<S>) -> TableRow<S> {
    TableRow {
        table: 1,
        group: inst.group.clone(),
        isotropy: inst.isotropy.clone(),
        source: inst.entry.name.clone(),
        params: inst.params.clone(),
        construction: inst.construction.clone(),
        kind: DualKind::Compact,
        nu: inst.nu.clone(),
        expected_symplectic: true,
        killing_signature: signature(inst.nu.algebra()),
    }
}

/// Candidate involution of a Table 1 instance with display data.
struct Twist<S> {
    sigma: Matrix<S>,
    /// Involution acting on `nu`'s algebra; `None` means use `nu` itself.
    nu: Option<FiniteOrderAutomorphism<S>>,
    kind: DualKind,
    extra: Vec<(&'static str, i64)>,
    group: String,
    isotropy: String,
    name: String,
    table3: bool,
}

/// Sign patterns `k` with `0 ≤ k_i ≤ sizes_i`, excluding all-zero and
/// all-full, kept only if `k ≤ sizes − k` lexicographically.
fn flip_classes(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut k = vec![0usize; sizes.len()];
    loop {
        let flipped: Vec<usize> = sizes.iter().zip(&k).map(|(s, x)| s - x).collect();
        let trivial = k.iter().all(|&x| x == 0) || flipped.iter().all(|&x| x == 0);
        if !trivial && k <= flipped {
            out.push(k.clone());
        }
        let mut i = 0;
        loop {
            if i == k.len() {
                return out;
            }
            if k[i] < sizes[i] {
                k[i] += 1;
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

fn eps_string(eps: &[i64]) -> String {
    let parts: Vec<&str> = eps
        .iter()
        .map(|&x| if x < 0 { "-1" } else { "1" })
        .collect();
    parts.join(",")
}

fn twists<S: Scalar>(inst: &Instance<S>) -> Result<Vec<Twist<S>>> {
    let entry = &inst.entry;
    let n = entry.n;
    let mut out = Vec::new();
    match entry.series {
        Series::Su => {
            let sizes = &inst.groups;
            for k in flip_classes(sizes) {
                let eps: Vec<i64> = sizes
                    .iter()
                    .zip(&k)
                    .flat_map(|(&s, &x)| sign_run(s, x))
                    .collect();
                let q: usize = k.iter().sum();
                let factors = sizes
                    .iter()
                    .zip(&k)
                    .map(|(&s, &x)| indefinite("U", s - x, x, 1))
                    .collect::<Vec<_>>();
                out.push(Twist {
                    sigma: entry.sign_involution(&eps)?,
                    nu: None,
                    kind: DualKind::Inner,
                    extra: vec![("s", k[0] as i64), ("t", k[1] as i64), ("p", k[2] as i64)],
                    group: format!(
                        "{}/Z_{}",
                        indefinite("SU", n - q, q, 1).unwrap_or_default(),
                        n
                    ),
                    isotropy: format!("S{{{}}}/Z_{}", product(factors), n),
                    name: format!("Ad(diag({}))", eps_string(&eps)),
                    table3: false,
                });
            }
            let (a, b, c) = (sizes[0], sizes[1], sizes[2]);
            if b == c {
                // Real rotations realize the same ν and commute with X ↦ X̄.
                let g =
                    CMatrix::block_rotations(n, &vec![1; b], ORDER as i64).ok_or_else(|| {
                        Error::Inexact {
                            what: "rotation by 2π/3".into(),
                        }
                    })?;
                let nu =
                    make_automorphism(entry.algebra.clone(), entry.unitary_adjoint(&g)?, ORDER)?;
                let (group, isotropy) = if a == 0 {
                    (
                        format!("SL({},R)/Z_2", n),
                        quotient(vec![complex_factor("SL", b, 2), Some("T^1".into())], b),
                    )
                } else {
                    (
                        format!("SL({},R)", n),
                        format!("S{{GL({},C)×GL({},R)}}", b, a),
                    )
                };
                out.push(Twist {
                    sigma: entry.conjugation()?,
                    nu: Some(nu),
                    kind: DualKind::Outer,
                    extra: Vec::new(),
                    group,
                    isotropy,
                    name: "X -> conj(X), ν by real rotations".into(),
                    table3: a == 0,
                });
                if a == 0 && n >= 4 {
                    // ν = Ad(diag(ζ I, ζ² I)) commutes with X ↦ J X̄ J⁻¹.
                    out.push(Twist {
                        sigma: entry.quaternionic_conjugation()?,
                        nu: None,
                        kind: DualKind::Outer,
                        extra: Vec::new(),
                        group: format!("SL({},H)/Z_2", b),
                        isotropy: quotient(vec![complex_factor("SL", b, 2), Some("T^1".into())], b),
                        name: "X -> J conj(X) J^-1".into(),
                        table3: true,
                    });
                }
            }
        }
        Series::So => {
            let (a, rest) = (inst.groups[0], inst.groups[1]);
            let even = n.is_multiple_of(2);
            for k in flip_classes(&[a, rest]) {
                let (s, t) = (k[0], k[1]);
                let eps: Vec<i64> = sign_run(a, s)
                    .flat_map(|x| [x, x])
                    .chain(sign_run(rest, t))
                    .collect();
                let q = 2 * s + t;
                let body = product(vec![
                    indefinite("U", a - s, s, 1),
                    indefinite("SO", rest - t, t, 2),
                ]);
                let outer = even && t % 2 == 1;
                out.push(Twist {
                    sigma: entry.sign_involution(&eps)?,
                    nu: None,
                    kind: if outer {
                        DualKind::Outer
                    } else {
                        DualKind::Inner
                    },
                    extra: vec![("s", s as i64), ("t", t as i64)],
                    group: if even {
                        format!("{}/Z_2", indefinite("SO", n - q, q, 1).unwrap_or_default())
                    } else {
                        indefinite("SO", n - q, q, 1).unwrap_or_default()
                    },
                    isotropy: if even {
                        format!("{{{}}}/Z_2", body)
                    } else {
                        body
                    },
                    name: format!("Ad(diag({}))", eps_string(&eps)),
                    table3: outer,
                });
            }
            if even {
                for s in 0..=a / 2 {
                    let signs: Vec<i64> = sign_run(n / 2, s).collect();
                    let star = (rest >= 2).then(|| format!("SO*({})", rest));
                    out.push(Twist {
                        sigma: entry.block_unit_involution(&signs)?,
                        nu: None,
                        kind: DualKind::Inner,
                        extra: vec![("s", s as i64)],
                        group: format!("SO*({})/Z_2", n),
                        isotropy: format!(
                            "{{{}}}/Z_2",
                            product(vec![indefinite("U", a - s, s, 1), star])
                        ),
                        name: format!("Ad(diag(s_j J2)) s=({})", eps_string(&signs)),
                        table3: false,
                    });
                }
            }
        }
        Series::Sp => {
            let (a, rest) = (inst.groups[0], inst.groups[1]);
            for k in flip_classes(&[a, rest]) {
                let (s, t) = (k[0], k[1]);
                let eps: Vec<i64> = sign_run(a, s).chain(sign_run(rest, t)).collect();
                let q = s + t;
                out.push(Twist {
                    sigma: entry.sign_involution(&eps)?,
                    nu: None,
                    kind: DualKind::Inner,
                    extra: vec![("s", s as i64), ("t", t as i64)],
                    group: format!("{}/Z_2", indefinite("Sp", n - q, q, 1).unwrap_or_default()),
                    isotropy: format!(
                        "{{{}}}/Z_2",
                        product(vec![
                            indefinite("U", a - s, s, 1),
                            indefinite("Sp", rest - t, t, 1)
                        ])
                    ),
                    name: format!("Ad(diag(e,e)) e=({})", eps_string(&eps)),
                    table3: false,
                });
            }
            for s in 0..=a / 2 {
                let eps: Vec<i64> = sign_run(n, s).collect();
                let real = (rest >= 1).then(|| format!("Sp({},R)", rest));
                out.push(Twist {
                    sigma: entry.imaginary_sign_involution(&eps)?,
                    nu: None,
                    kind: DualKind::Inner,
                    extra: vec![("s", s as i64)],
                    group: format!("Sp({},R)/Z_2", n),
                    isotropy: format!(
                        "{{{}}}/Z_2",
                        product(vec![indefinite("U", a - s, s, 1), real])
                    ),
                    name: format!("Ad(diag(ie,-ie)) e=({})", eps_string(&eps)),
                    table3: false,
                });
            }
        }
        Series::SlReal => {}
    }
    Ok(out)
}

fn complex_names<S: Scalar>(inst: &Instance<S>) -> (String, String) {
    let n = inst.entry.n;
    let g = &inst.groups;
    match inst.entry.series {
        Series::Su => (
            format!("SL({},C)/Z_{}", n, n),
            format!(
                "S{{{}}}/Z_{}",
                product(g.iter().map(|&x| complex_factor("GL", x, 1)).collect()),
                n
            ),
        ),
        Series::So if n % 2 == 1 => (
            format!("SO({},C)", n),
            product(vec![
                complex_factor("GL", g[0], 1),
                complex_factor("SO", g[1], 2),
            ]),
        ),
        Series::So => (
            format!("SO({},C)/Z_2", n),
            format!(
                "{{{}}}/Z_2",
                product(vec![
                    complex_factor("GL", g[0], 1),
                    complex_factor("SO", g[1], 2)
                ])
            ),
        ),
        _ => (
            format!("Sp({},C)/Z_2", n),
            format!(
                "{{{}}}/Z_2",
                product(vec![
                    complex_factor("GL", g[0], 1),
                    complex_factor("Sp", g[1], 1)
                ])
            ),
        ),
    }
}

/// `g ⊕ g` with `ν ⊕ ν` and the swap.
fn doubled<S: Scalar>(
    nu: &FiniteOrderAutomorphism<S>,
) -> Result<(FiniteOrderAutomorphism<S>, Matrix<S>)> {
    let alg = nu.algebra();
    let d = alg.dim();
    let sum = Arc::new(LieAlgebra::direct_sum(&[alg.as_ref(), alg.as_ref()]));
    let m = Matrix::block_diag(&[nu.matrix(), nu.matrix()]);
    let nu2 = make_automorphism(sum, m, nu.order())?;
    let swap = Matrix::from_fn(2 * d, 2 * d, |r, c| {
        if (r + d) % (2 * d) == c {
            S::one()
        } else {
            S::zero()
        }
    });
    Ok((nu2, swap))
}

struct DualRow<S> {
    row: TableRow<S>,
    key: (String, String, [usize; 4], (usize, usize)),
    table3: bool,
}

fn dual_row<S: Scalar>(inst: &Instance<S>, tw: Twist<S>) -> Result<DualRow<S>> {
    let nu = tw.nu.as_ref().unwrap_or(&inst.nu);
    let split = make_involution_split(nu.algebra().clone(), Some(nu), tw.sigma)?;
    let refined = split.refined.as_ref().ok_or_else(|| {
        Error::invariant(format!(
            "{} does not commute with ν on {}",
            tw.name, inst.entry.name
        ))
    })?;
    let (h1, h2, m1, m2) = refined.dims();
    let rc = dual_real_form(&split)?;
    let dual_nu = rc
        .dual_nu
        .clone()
        .ok_or_else(|| Error::invariant("dual automorphism missing"))?;
    let sig = signature(&rc.dual);
    let mut params = inst.params.clone();
    params.extend(tw.extra);
    let construction = if tw.nu.is_some() {
        format!("dual of {} under {}", inst.entry.name, tw.name)
    } else {
        format!(
            "dual of {} {} under {}",
            inst.entry.name, inst.construction, tw.name
        )
    };
    let key = (tw.group.clone(), tw.isotropy.clone(), [h1, h2, m1, m2], sig);
    Ok(DualRow {
        row: TableRow {
            table: 2,
            group: tw.group,
            isotropy: tw.isotropy,
            source: inst.entry.name.clone(),
            params,
            construction,
            kind: tw.kind,
            nu: dual_nu,
            expected_symplectic: true,
            killing_signature: sig,
        },
        key,
        table3: tw.table3,
    })
}

fn dual_rows<S: Scalar>(instances: &[Instance<S>]) -> Result<Vec<DualRow<S>>> {
    let mut out = Vec::new();
    for inst in instances {
        for tw in twists(inst)? {
            out.push(dual_row(inst, tw)?);
        }
        let (nu2, swap) = doubled(&inst.nu)?;
        let (group, isotropy) = complex_names(inst);
        out.push(dual_row(
            inst,
            Twist {
                sigma: swap,
                nu: Some(nu2),
                kind: DualKind::Complex,
                extra: Vec::new(),
                group,
                isotropy,
                name: format!(
                    "swap on {}⊕{}, ν⊕ν with {}",
                    inst.entry.name, inst.entry.name, inst.construction
                ),
                table3: false,
            },
        )?);
    }
    Ok(out)
}

/// Rows of table 1, 2 or 3 whose compact algebra has rank at most
/// `max_rank` (1 to 3). Every classical row is symplectic, so
/// `expected_symplectic` is always true.
pub fn generate_table_rows<S: Scalar>(table: u8, max_rank: usize) -> Result<Vec<TableRow<S>>> {
    if !(1..=3).contains(&table) {
        return Err(Error::OutOfRange {
            what: "table",
            value: table as i64,
        });
    }
    if !(1..=3).contains(&max_rank) {
        return Err(Error::OutOfRange {
            what: "max_rank",
            value: max_rank as i64,
        });
    }
    let mut cache = Cache {
        entries: BTreeMap::new(),
    };
    let instances = dedupe_compact(compact_instances::<S>(&mut cache, max_rank)?)?;
    if table == 1 {
        return Ok(instances.iter().map(compact_row).collect());
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for dr in dual_rows(&instances)? {
        if table == 3 && !dr.table3 {
            continue;
        }
        if seen.insert(dr.key) {
            let mut row = dr.row;
            row.table = table;
            out.push(row);
        }
    }
    Ok(out)
}
