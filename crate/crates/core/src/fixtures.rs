//! Small worked modules used by the tests, the benchmarks and the command line.

use std::sync::Arc;

use crate::error::Result;
use crate::exactla::{Field, Mat};
use crate::poset::{BoundQuiver, Interval, Poset};
use crate::repmod::{IntervalFamily, ModRef, PersModule};

pub fn ladder(n: usize) -> Arc<BoundQuiver> {
    Arc::new(BoundQuiver::commutative_ladder(n).expect("n ≥ 2"))
}

/// The indecomposable non-interval CL₃ module with dimension vector `(1 2 1/0 1 1)`.
pub fn cl3_m45(field: Field) -> Result<ModRef> {
    let q = ladder(3);
    let dims = q.parse_ladder_dims("1 2 1/0 1 1")?;
    let m = PersModule::from_labelled_maps(
        q,
        field,
        dims,
        &[
            ("a1'", Mat::from_ints(field, &[&[1], &[0]])),
            ("b2", Mat::from_ints(field, &[&[0], &[1]])),
            ("a2'", Mat::from_ints(field, &[&[1, 1]])),
            ("a2", Mat::from_ints(field, &[&[1]])),
            ("b3", Mat::from_ints(field, &[&[1]])),
        ],
    )?;
    Ok(Arc::new(m))
}

/// The indecomposable CL₅ module with dimension vector `(0 0 1 2 1/0 0 0 1 1)`.
pub fn cl5_m(field: Field) -> Result<ModRef> {
    let q = ladder(5);
    let dims = q.parse_ladder_dims("0 0 1 2 1/0 0 0 1 1")?;
    let m = PersModule::from_labelled_maps(
        q,
        field,
        dims,
        &[
            ("a3'", Mat::from_ints(field, &[&[1], &[1]])),
            ("a4'", Mat::from_ints(field, &[&[0, 1]])),
            ("b4", Mat::from_ints(field, &[&[0], &[1]])),
            ("a4", Mat::from_ints(field, &[&[1]])),
            ("b5", Mat::from_ints(field, &[&[1]])),
        ],
    )?;
    Ok(Arc::new(m))
}

/// Interval of a ladder given as a 0/1 vector such as `"1 1 1/0 0 1"`.
pub fn ladder_interval(q: &BoundQuiver, text: &str) -> Interval {
    q.parse_ladder_interval(text).expect("fixture interval")
}

/// The poset `1 < 2 < 3`, `2 < 4`, drawn with `4` above `2`.
pub fn y_poset() -> Poset {
    let labels = ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect();
    Poset::from_relations(labels, &[(0, 1), (1, 2), (1, 3)]).expect("valid poset")
}

/// Vertex sets of the family for the Y-shaped poset: every interval except
/// the single points `{1}`, `{3}` and `{4}`.
pub fn y_family_sets() -> Vec<Vec<usize>> {
    let q = y_poset().hasse_quiver();
    crate::poset::enumerate_intervals(&q)
        .into_iter()
        .filter(|i| !matches!(i.vertices(), [0] | [2] | [3]))
        .map(|i| i.vertices().to_vec())
        .collect()
}

/// The family on the Y-shaped poset as an [`IntervalFamily`].
pub fn y_family(field: Field) -> Result<Arc<IntervalFamily>> {
    let q = Arc::new(y_poset().hasse_quiver());
    let ivs = y_family_sets().iter().map(|s| q.interval(s)).collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(IntervalFamily::new(q, field, ivs)?))
}

/// The indecomposable module `(1/1 2 1)` on the Y-shaped poset.
pub fn y_module(field: Field) -> Result<ModRef> {
    let q = Arc::new(y_poset().hasse_quiver());
    let m = PersModule::from_labelled_maps(
        q,
        field,
        vec![1, 2, 1, 1],
        &[
            ("1->2", Mat::from_ints(field, &[&[1], &[0]])),
            ("2->3", Mat::from_ints(field, &[&[1, 0]])),
            ("2->4", Mat::from_ints(field, &[&[1, -1]])),
        ],
    )?;
    Ok(Arc::new(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_dimensions() {
        let m = cl3_m45(Field::Rationals).unwrap();
        assert_eq!(m.dims(), &[0, 1, 1, 1, 2, 1]);
        let m = cl5_m(Field::Rationals).unwrap();
        assert_eq!(m.dims(), &[0, 0, 0, 1, 1, 0, 0, 1, 2, 1]);
    }

    #[test]
    fn y_family_has_eight_members() {
        assert_eq!(y_family_sets().len(), 8);
    }

    #[test]
    fn parse_ladder_forms_agree() {
        let q = ladder(3);
        assert_eq!(ladder_interval(&q, "1 1 1/0 0 1"), ladder_interval(&q, "(111/001)"));
        assert_eq!(q.render_interval(&ladder_interval(&q, "111/001")), "(1 1 1/0 0 1)");
        assert!(q.parse_ladder_interval("101/000").is_err());
    }
}
