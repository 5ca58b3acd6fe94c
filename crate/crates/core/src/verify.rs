//! Self-check suites run by `gluecount verify`.
//!
//! Each suite cross-checks independent computation paths and reports the
//! first disagreement it finds.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{double_factorial_odd, ratio};
use crate::formula::count_closed;
use crate::gluing::{count_brute_many, fold_words, glue, DEFAULT_CAP};
use crate::hz::{
    catalan, gf_identity_check, hz_from_gluing_counts, hz_sum, hz_tanh, hz_toric, HzIndex,
};
use crate::recursion::{count_recursive, CountTable, SharedCountTable};
use crate::series::DEFAULT_ORDER;
use crate::{BigCount, Execution, Result, SurfaceSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} checks)", self.name, self.checked),
            Some(msg) => write!(f, "FAIL {} after {} checks: {msg}", self.name, self.checked),
        }
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checked: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn report(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            checked: self.checked,
            failure: self.failure,
        }
    }
}

/// The printed `ε_g(N)` table, rows `N = 1..5`.
pub const HZ_TABLE: [&[u64]; 5] = [&[1], &[2, 1], &[5, 10], &[14, 70, 21], &[42, 420, 483]];

/// Every signature `(g, ns)` with ordered `ns`, `g <= max_genus`,
/// `1 <= L <= max_holes`, `n_i <= max_n`, at least one edge.
pub fn ordered_signatures(
    max_genus: usize,
    max_holes: usize,
    max_n: usize,
) -> Vec<SurfaceSignature> {
    let mut out = Vec::new();
    for g in 0..=max_genus {
        for l in 1..=max_holes {
            let mut ns = vec![0; l];
            loop {
                if let Ok(sig) = SurfaceSignature::new(g, ns.clone()) {
                    out.push(sig);
                }
                // odometer
                let Some(pos) = ns.iter().rposition(|&n| n < max_n) else {
                    break;
                };
                ns[pos] += 1;
                ns[pos + 1..].iter_mut().for_each(|n| *n = 0);
            }
        }
    }
    out
}

/// Signatures with polygon size at most `max_size`.
pub fn signatures_up_to_size(max_size: usize) -> Vec<SurfaceSignature> {
    let max_holes = max_size / 2 + 1;
    let max_genus = (max_size + 1) / 4;
    ordered_signatures(max_genus, max_holes, max_size)
        .into_iter()
        .filter(|s| s.polygon_size() <= max_size)
        .collect()
}

pub fn hz_routes(max_n: usize) -> Result<SuiteReport> {
    let mut t = Tally::new("harer-zagier table and route agreement");
    for (row, values) in HZ_TABLE.iter().enumerate() {
        let n = row + 1;
        for g in 0..=3 {
            let expect = values.get(g).copied().unwrap_or(0);
            let idx = HzIndex::new(g, n);
            let got = [
                hz_sum(idx)?,
                hz_tanh(idx, DEFAULT_ORDER)?,
                hz_from_gluing_counts(idx)?,
            ];
            t.check(got.iter().all(|v| *v == expect), || {
                format!("ε_{g}({n}) = {expect} but routes give {got:?}")
            });
        }
    }
    for n in 0..=max_n {
        for g in 0..=n / 2 {
            let idx = HzIndex::new(g, n);
            let got = [
                hz_sum(idx)?,
                hz_tanh(idx, DEFAULT_ORDER)?,
                hz_from_gluing_counts(idx)?,
            ];
            t.check(got[0] == got[1] && got[1] == got[2], || {
                format!("routes disagree at g={g} N={n}: {got:?}")
            });
        }
    }
    Ok(t.report())
}

pub fn closed_vs_recursive(
    max_genus: usize,
    max_holes: usize,
    max_n: usize,
    exec: Execution,
) -> Result<SuiteReport> {
    let mut t = Tally::new("closed form vs recursion");
    let sigs = ordered_signatures(max_genus, max_holes, max_n);
    let memo = SharedCountTable::new(CountTable::new());
    let results = exec.map(&sigs, |sig| -> Result<(BigCount, BigCount)> {
        let mut handle = &memo;
        Ok((count_closed(sig)?, count_recursive(sig, &mut handle)?))
    });
    for (sig, r) in sigs.iter().zip(results) {
        let (closed, rec) = r?;
        t.check(closed == rec, || {
            format!("{sig}: closed {closed}, recursive {rec}")
        });
    }
    Ok(t.report())
}

pub fn brute_vs_closed(max_size: usize, exec: Execution) -> Result<SuiteReport> {
    let mut t = Tally::new("brute force vs closed form");
    let sigs = signatures_up_to_size(max_size);
    let brute = count_brute_many(&sigs, max_size.max(DEFAULT_CAP), exec)?;
    for (sig, b) in sigs.iter().zip(brute) {
        let closed = count_closed(sig)?;
        t.check(b == closed, || format!("{sig}: brute {b}, closed {closed}"));
    }
    Ok(t.report())
}

pub fn generating_function(order: usize) -> Result<SuiteReport> {
    let mut t = Tally::new("generating function identity");
    let report = gf_identity_check(order)?;
    t.check(report.holds, || {
        format!(
            "K={order}: first discrepancy at {:?}",
            report.first_discrepancy
        )
    });
    Ok(t.report())
}

fn product(ns: &[usize]) -> BigUint {
    ns.iter().map(|&n| BigUint::from(n)).product()
}

fn rising(from: usize, count: usize) -> BigUint {
    (from..from + count).map(BigUint::from).product()
}

/// Printed genus-0 polynomials, `L = 1..5`.
pub fn sphere_printed(ns: &[usize]) -> Option<BigUint> {
    let s: usize = ns.iter().sum();
    let l = ns.len();
    let tail = match l {
        1 => return Some(BigUint::from(1u32)),
        2 => BigUint::from(1u32),
        3 => rising(s + 3, 1),
        4 => rising(s + 4, 2),
        5 => rising(s + 5, 3),
        _ => return None,
    };
    Some(product(ns) * tail)
}

/// Printed genus-1 polynomials, `L = 1..4`.
pub fn torus_printed(ns: &[usize]) -> Option<BigUint> {
    let s: usize = ns.iter().sum();
    let sq: usize = ns.iter().map(|n| n * n).sum();
    let body = match ns.len() {
        1 => {
            let n = ns[0];
            BigUint::from(n) * rising(n + 1, 3)
        }
        2 => product(ns) * rising(s + 4, 2) * BigUint::from(sq + 3 * s + 4),
        3 => product(ns) * rising(s + 5, 3) * BigUint::from(sq + 3 * s + 6),
        4 => product(ns) * rising(s + 6, 4) * BigUint::from(sq + 3 * s + 8),
        _ => return None,
    };
    Some(body / BigUint::from(24u32))
}

/// General genus-0 expression `Π n (Σn + 2L - 3)! / (Σn + L - 1)!`.
fn sphere_general(ns: &[usize]) -> BigRational {
    let s: usize = ns.iter().sum();
    let l = ns.len();
    ratio(
        product(ns) * crate::exact::factorial(s + 2 * l - 3),
        crate::exact::factorial(s + l - 1),
    )
}

/// General genus-1 expression with bracket `Σ (n_k + 1)(n_k + 2) / 6`.
fn torus_general(ns: &[usize]) -> BigRational {
    let s: usize = ns.iter().sum();
    let l = ns.len();
    let bracket: BigUint = ns.iter().map(|&n| BigUint::from((n + 1) * (n + 2))).sum();
    ratio(
        product(ns) * crate::exact::factorial(s + 2 * l + 1) * bracket,
        BigUint::from(24u32) * crate::exact::factorial(s + l + 1),
    )
}

pub fn specializations() -> Result<SuiteReport> {
    let mut t = Tally::new("catalan, toric, sphere and torus specializations");
    for n in 1..=12 {
        let eps0 = hz_sum(HzIndex::new(0, n))?;
        t.check(eps0 == catalan(n), || {
            format!("ε_0({n}) = {eps0} is not Catalan")
        });
        let eps1 = hz_sum(HzIndex::new(1, n))?;
        let toric = hz_toric(n)?;
        t.check(eps1 == toric, || {
            format!("ε_1({n}) = {eps1}, toric {toric}")
        });
    }
    let as_rational = |c: &BigCount| ratio(c.as_biguint().clone(), BigUint::from(1u32));
    for sig in ordered_signatures(1, 5, 5) {
        let ns = sig.boundary_sizes();
        if ns.contains(&0) {
            continue;
        }
        let closed = count_closed(&sig)?;
        let sampled = ns.iter().all(|n| (1..=3).contains(n));
        match sig.genus() {
            0 => {
                let general = sphere_general(ns);
                t.check(as_rational(&closed) == general, || {
                    format!("{sig}: sphere expression {general}")
                });
                if sampled {
                    let printed = sphere_printed(ns).expect("L <= 5");
                    t.check(closed == BigCount::from(printed.clone()), || {
                        format!("{sig}: printed sphere polynomial {printed}")
                    });
                }
            }
            _ if ns.len() <= 4 => {
                let general = torus_general(ns);
                t.check(as_rational(&closed) == general, || {
                    format!("{sig}: torus expression {general}")
                });
                if sampled {
                    let printed = torus_printed(ns).expect("L <= 4");
                    t.check(closed == BigCount::from(printed.clone()), || {
                        format!("{sig}: printed torus polynomial {printed}")
                    });
                }
            }
            _ => {}
        }
    }
    Ok(t.report())
}

pub fn row_sums(max_n: usize) -> Result<SuiteReport> {
    let mut t = Tally::new("row sums equal (2N-1)!!");
    for n in 1..=max_n {
        let mut total = BigUint::zero();
        for g in 0..=n / 2 {
            total += hz_sum(HzIndex::new(g, n))?.into_biguint();
        }
        let expect = double_factorial_odd(n);
        t.check(total == expect, || {
            format!("N={n}: row sum {total}, (2N-1)!! = {expect}")
        });
    }
    Ok(t.report())
}

/// Gluing invariants (integral genus, boundary walk is a permutation,
/// signature reproduces the polygon size, rotation invariance) on every
/// raw word of every polygon up to `max_size` and every admissible number
/// of free labels.
pub fn enumerator_invariants(max_size: usize, exec: Execution) -> Result<SuiteReport> {
    let mut t = Tally::new("enumerator structural invariants");
    for size in 1..=max_size {
        for free in (size % 2..=size).step_by(2) {
            let labels: Vec<u16> = (1..=free as u16).collect();
            let parts = fold_words(
                size,
                &labels,
                exec,
                || (0usize, None::<String>),
                |acc, word| {
                    acc.0 += 1;
                    if acc.1.is_some() {
                        return Ok(());
                    }
                    let problem = match glue(word) {
                        Err(e) => Some(e.to_string()),
                        Ok(surface) => {
                            let shifted = glue(&word.rotated(1 + acc.0 % size.max(1)));
                            match shifted {
                                Ok(r)
                                    if r.genus == surface.genus
                                        && r.puncture_count == surface.puncture_count
                                        && r.boundary_cycles == surface.boundary_cycles =>
                                {
                                    None
                                }
                                Ok(_) => {
                                    Some(format!("{word}: rotation changes the glued surface"))
                                }
                                Err(e) => Some(e.to_string()),
                            }
                        }
                    };
                    acc.1 = problem;
                    Ok(())
                },
            )?;
            for (count, problem) in parts {
                t.checked += count;
                if t.failure.is_none() {
                    t.failure = problem;
                }
            }
        }
    }
    Ok(t.report())
}

/// Runs the suites for `level`, in order.
pub fn run(level: Level, exec: Execution) -> Result<Vec<SuiteReport>> {
    Ok(match level {
        Level::Quick => vec![
            hz_routes(8)?,
            closed_vs_recursive(2, 3, 4, exec)?,
            generating_function(8)?,
        ],
        Level::Full => vec![
            hz_routes(8)?,
            closed_vs_recursive(3, 4, 6, exec)?,
            brute_vs_closed(9, exec)?,
            generating_function(13)?,
            specializations()?,
            row_sums(10)?,
            enumerator_invariants(9, exec)?,
        ],
    })
}
