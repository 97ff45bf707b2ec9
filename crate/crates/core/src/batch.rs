//! Sweeps over many lattice indices, run sequentially or on the rayon pool.
//! Results always come back in input order.

use serde::Serialize;

use crate::arith::RingElement;
use crate::numeric::series::{verify_identity_auto, IdentityCheck};
use crate::oracle::{compare_with_triple, CurveId};
use crate::ramification::analyze;
use crate::triple::{canonical_indices, generate, to_transformation, Family, Transformation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the "parallel" feature.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Map f over items, preserving order.
pub fn map_ordered<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Every canonical (family, u) with norm up to max_norm.
pub fn indices(families: &[Family], max_norm: u64) -> Vec<(Family, RingElement)> {
    families.iter().flat_map(|&f| canonical_indices(f, max_norm).into_iter().map(move |u| (f, u))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureRecord {
    pub family: Family,
    pub u: String,
    pub norm: u64,
    pub class: String,
    pub map_degree: usize,
    pub error: Option<String>,
}

impl ClosureRecord {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.map_degree as u64 == self.norm
    }
}

/// Generate, check the class identity exactly, and compare the map degree
/// with the norm.
pub fn closure_sweep(exec: Execution, families: &[Family], max_norm: u64) -> Vec<ClosureRecord> {
    map_ordered(exec, &indices(families, max_norm), |(f, u)| {
        let mut rec = ClosureRecord {
            family: *f,
            u: u.to_string(),
            norm: u.norm_u64(),
            class: String::new(),
            map_degree: 0,
            error: None,
        };
        match generate(*f, u).and_then(|t| {
            rec.class = t.class.name().to_string();
            t.check()?;
            to_transformation(&t)
        }) {
            Ok(tr) => rec.map_degree = tr.degree(),
            Err(e) => rec.error = Some(e.to_string()),
        }
        rec
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRecord {
    pub family: Family,
    pub u: String,
    pub agrees: bool,
    pub error: Option<String>,
}

pub fn oracle_sweep(exec: Execution, families: &[Family], max_norm: u64) -> Vec<OracleRecord> {
    map_ordered(exec, &indices(families, max_norm), |(f, u)| {
        let r = compare_with_triple(CurveId::from_family(*f), u);
        OracleRecord {
            family: *f,
            u: u.to_string(),
            agrees: r.as_ref().is_ok_and(|a| a.agrees()),
            error: r.err().map(|e| e.to_string()),
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityRecord {
    pub label: String,
    pub degree: usize,
    pub check: Option<IdentityCheck>,
    pub error: Option<String>,
}

impl IdentityRecord {
    pub fn passes(&self, tol: f64) -> bool {
        self.check.as_ref().is_some_and(|c| c.passes(tol))
    }
}

/// verify_identity at the default branch-safe points for each labelled map.
pub fn identity_sweep(exec: Execution, maps: &[(String, Transformation)], prec: u32) -> Vec<IdentityRecord> {
    map_ordered(exec, maps, |(label, t)| {
        let r = verify_identity_auto(t, prec);
        IdentityRecord {
            label: label.clone(),
            degree: t.degree(),
            error: r.as_ref().err().map(|e| e.to_string()),
            check: r.ok(),
        }
    })
}

/// The transformations of every canonical index, labelled "family u".
pub fn transformations(exec: Execution, families: &[Family], max_norm: u64) -> crate::Result<Vec<(String, Transformation)>> {
    map_ordered(exec, &indices(families, max_norm), |(f, u)| {
        Ok((format!("{f} {u}"), to_transformation(&generate(*f, u)?)?))
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationRecord {
    pub label: String,
    pub notation: String,
    pub row: Option<&'static str>,
    pub matching_rows: usize,
    pub hurwitz: bool,
    pub error: Option<String>,
}

impl RamificationRecord {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.hurwitz && self.row.is_some()
    }
}

pub fn ramification_sweep(exec: Execution, maps: &[(String, Transformation)]) -> Vec<RamificationRecord> {
    map_ordered(exec, maps, |(label, t)| match analyze(t) {
        Ok(r) => RamificationRecord {
            label: label.clone(),
            matching_rows: crate::ramification::matching_rows(&r.pattern, &t.source.exponents(), &t.target.exponents())
                .len(),
            notation: r.notation,
            row: r.row,
            hurwitz: r.hurwitz,
            error: None,
        },
        Err(e) => RamificationRecord {
            label: label.clone(),
            notation: String::new(),
            row: None,
            matching_rows: 0,
            hurwitz: false,
            error: Some(e.to_string()),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let fams = [Family::E1, Family::E3];
        let a = closure_sweep(Execution::Sequential, &fams, 13);
        let b = closure_sweep(Execution::Parallel, &fams, 13);
        assert!(a.iter().all(ClosureRecord::ok));
        assert_eq!(
            a.iter().map(|r| (&r.u, r.map_degree)).collect::<Vec<_>>(),
            b.iter().map(|r| (&r.u, r.map_degree)).collect::<Vec<_>>()
        );
        let maps = transformations(Execution::Parallel, &[Family::E2], 7).unwrap();
        assert!(identity_sweep(Execution::Parallel, &maps, 30).iter().all(|r| r.passes(1e-20)));
        assert!(ramification_sweep(Execution::Sequential, &maps).iter().all(|r| r.ok() && r.matching_rows == 1));
        assert!(oracle_sweep(Execution::Parallel, &[Family::E2], 7).iter().all(|r| r.agrees));
    }
}
