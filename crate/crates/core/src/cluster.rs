//! Grouping of faulty classes by their exact set of error codes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::aggregate::ClassRecord;
use crate::catalog::ErrorCode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    /// Ascending.
    pub error_set: Vec<ErrorCode>,
    pub error_names: Vec<String>,
    /// Ascending.
    pub classes: Vec<String>,
}

/// One cluster per distinct error-code set. Display order of the codes in a
/// record does not matter.
pub fn cluster(records: &[ClassRecord]) -> Vec<Cluster> {
    let mut groups: BTreeMap<Vec<ErrorCode>, BTreeSet<&str>> = BTreeMap::new();
    for r in records {
        let key: BTreeSet<ErrorCode> = r.error_codes.iter().copied().collect();
        groups.entry(key.into_iter().collect()).or_default().insert(&r.class_name);
    }
    let mut clusters: Vec<Cluster> = groups
        .into_iter()
        .map(|(set, classes)| Cluster {
            error_names: set.iter().map(|c| c.name().to_string()).collect(),
            error_set: set,
            classes: classes.into_iter().map(str::to_string).collect(),
        })
        .collect();
    clusters.sort_by(|a, b| {
        (a.error_set.first(), a.error_set.len(), &a.error_set).cmp(&(
            b.error_set.first(),
            b.error_set.len(),
            &b.error_set,
        ))
    });
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(name: &str, codes: &[u8]) -> ClassRecord {
        ClassRecord {
            class_name: name.to_string(),
            file_path: format!("{name}.java"),
            error_codes: codes.iter().map(|&c| ErrorCode::try_from(c).unwrap()).collect(),
            findings: Vec::new(),
        }
    }

    #[test]
    fn set_semantics() {
        let clusters = cluster(&[record("X", &[1, 6]), record("Y", &[6, 1])]);
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].classes, ["X", "Y"]);
        assert_eq!(clusters[0].error_names, ["Lvalue required", "Undefined loop exception"]);
    }

    #[test]
    fn ordering_by_smallest_code_then_size() {
        let clusters = cluster(&[
            record("a", &[3]),
            record("b", &[1, 6, 5]),
            record("c", &[1, 4]),
            record("d", &[2, 5]),
            record("e", &[1, 6]),
            record("f", &[3, 4]),
            record("g", &[1]),
        ]);
        let sets: Vec<Vec<u8>> = clusters.iter().map(|c| c.error_set.iter().map(|e| e.code()).collect()).collect();
        assert_eq!(sets, vec![vec![1], vec![1, 4], vec![1, 6], vec![1, 5, 6], vec![2, 5], vec![3], vec![3, 4]]);
    }

    #[test]
    fn empty() {
        assert!(cluster(&[]).is_empty());
    }
}
