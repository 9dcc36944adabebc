use num_bigint::BigInt;

use super::{run_cells, Grid, LawId, LawReport, Tally};
use crate::error::Result;
use crate::exact::{definition_row, series_coefficients, shortcut_row, theorem3_row};
use crate::params::Regime;

/// Exact checks of the order-(k+1) shortcut (`n >= 3`), the U/V convolution
/// (`q >= 3`, `n >= 1`) and the generating-function coefficients (`n >= 0`)
/// against the defining recurrence.
///
/// Returns reports for `identity-theorem2`, `identity-theorem3` and
/// `series-oracle`, in that order. Cells with `q < 3` contribute nothing to
/// the second.
pub fn check_identities(grid: &Grid) -> Result<Vec<LawReport>> {
    let laws = [
        LawId::IdentityTheorem2,
        LawId::IdentityTheorem3,
        LawId::SeriesOracle,
    ];
    run_cells(grid, laws, |params| {
        let mut tallies: [Tally; 3] = Default::default();
        let range = grid.n_range(params);
        if range.is_empty() {
            return Ok(tallies);
        }
        let n_max = *range.end();
        let exact = definition_row::<BigInt>(params, n_max)?;
        let value = |n: i64| exact.get(n).expect("row covers the grid");

        let shortcut = shortcut_row::<BigInt>(params, n_max)?;
        for n in range.clone().filter(|&n| n >= 3) {
            let got = shortcut.get(n).expect("row covers the grid");
            tallies[0].exact(params, n, got == value(n), || {
                format!("shortcut {got}, definition {}", value(n))
            });
        }

        if params.regime() == Regime::BoundsCertified && n_max >= 1 {
            let conv = theorem3_row::<BigInt>(params, n_max)?;
            for n in range.clone().filter(|&n| n >= 1) {
                let got = conv.get(n).expect("row covers the grid");
                tallies[1].exact(params, n, got == value(n), || {
                    format!("theorem3 {got}, definition {}", value(n))
                });
            }
        }

        if n_max >= 0 {
            let coeffs = series_coefficients::<BigInt>(params, n_max as usize + 1)?;
            for n in range.filter(|&n| n >= 0) {
                let got = &coeffs[n as usize];
                tallies[2].exact(params, n, got == value(n), || {
                    format!("series {got}, definition {}", value(n))
                });
            }
        }
        Ok(tallies)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lawcheck::Verdict;

    #[test]
    fn published_tables_grid() {
        let reports = check_identities(&Grid::new(vec![3, 4], 2..=5, 9)).unwrap();
        let ids: Vec<LawId> = reports.iter().map(|r| r.law_id).collect();
        assert_eq!(
            ids,
            [
                LawId::IdentityTheorem2,
                LawId::IdentityTheorem3,
                LawId::SeriesOracle
            ]
        );
        for r in &reports {
            assert_eq!(r.verdict, Verdict::Pass, "{}", r.law_id);
            assert!(r.bits_used.is_empty());
        }
        // 8 cells; shortcut covers n = 3..=9, theorem3 n = 1..=9, series n = 0..=9.
        assert_eq!(reports[0].comparisons, 8 * 7);
        assert_eq!(reports[1].comparisons, 8 * 9);
        assert_eq!(reports[2].comparisons, 8 * 10);
    }

    #[test]
    fn fibonacci_grid() {
        let reports = check_identities(&Grid::new(vec![1], 2..=2, 20)).unwrap();
        assert!(reports.iter().all(|r| r.passed()));
        assert_eq!(reports[1].comparisons, 0);
        assert_eq!(reports[0].comparisons, 18);
    }

    #[test]
    fn empty_grid() {
        for grid in [
            Grid::new(vec![], 2..=5, 9),
            Grid {
                k_min: 5,
                k_max: 4,
                ..Grid::new(vec![3], 2..=4, 9)
            },
            Grid::new(vec![3], 2..=4, -10),
        ] {
            let reports = check_identities(&grid).unwrap();
            assert!(reports
                .iter()
                .all(|r| r.passed() && r.witnesses.is_empty() && r.comparisons == 0));
        }
    }

    #[test]
    fn deterministic() {
        let grid = Grid::new(vec![2, 5], 2..=6, 40);
        assert_eq!(
            check_identities(&grid).unwrap(),
            check_identities(&grid).unwrap()
        );
    }
}
