//! Horizontal-vertical aggregate scores.
//!
//! A stage holds horizontal groups (values `H_i`, group sum `CH_j`) and
//! vertical groups (values `V_i`, group sum `CV_k`); the stage score is
//! `CHV = Σ_j CH_j + Σ_k CV_k` and the analysis total is `C = Σ CHV`.
//! Group counts and sizes are free — horizontal and vertical need not match.

use alloc::vec::Vec;

/// One comparison stage. Groups may be empty lists; values are opaque
/// user-supplied scores.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonStage {
    pub horizontal_groups: Vec<Vec<f64>>,
    pub vertical_groups: Vec<Vec<f64>>,
}

/// A multi-stage analysis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Analysis {
    pub stages: Vec<ComparisonStage>,
}

/// `Σ_j CH_j + Σ_k CV_k` for one stage.
pub fn stage_score(stage: &ComparisonStage) -> f64 {
    let sum = |groups: &[Vec<f64>]| groups.iter().map(|g| g.iter().sum::<f64>()).sum::<f64>();
    sum(&stage.horizontal_groups) + sum(&stage.vertical_groups)
}

/// Total `C` plus the per-stage scores it is summed from.
pub fn total_score(analysis: &Analysis) -> (f64, Vec<f64>) {
    let per_stage: Vec<f64> = analysis.stages.iter().map(stage_score).collect();
    (per_stage.iter().sum(), per_stage)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn empty_stage_scores_zero() {
        assert_eq!(stage_score(&ComparisonStage::default()), 0.0);
        assert_eq!(total_score(&Analysis::default()), (0.0, vec![]));
    }

    #[test]
    fn direct_summation_examples() {
        let stage = ComparisonStage {
            horizontal_groups: vec![vec![1.0, 2.0]],
            vertical_groups: vec![vec![4.0], vec![5.0]],
        };
        assert_eq!(stage_score(&stage), 12.0);
        let horizontal_only = ComparisonStage {
            horizontal_groups: vec![vec![1.0], vec![2.0], vec![3.0]],
            vertical_groups: vec![],
        };
        assert_eq!(stage_score(&horizontal_only), 6.0);
        let analysis = Analysis { stages: vec![stage, horizontal_only] };
        assert_eq!(total_score(&analysis), (18.0, vec![12.0, 6.0]));
    }

    #[test]
    fn permuting_stages_permutes_per_stage_and_keeps_total() {
        let a = ComparisonStage { horizontal_groups: vec![vec![1.5]], vertical_groups: vec![] };
        let b = ComparisonStage {
            horizontal_groups: vec![],
            vertical_groups: vec![vec![2.0, 3.0]],
        };
        let (c1, s1) = total_score(&Analysis { stages: vec![a.clone(), b.clone()] });
        let (c2, s2) = total_score(&Analysis { stages: vec![b, a] });
        assert_eq!(c1, c2);
        assert_eq!(s1, vec![s2[1], s2[0]]);
    }

    #[test]
    fn total_equals_flat_sum_and_scales_linearly() {
        let analysis = Analysis {
            stages: vec![
                ComparisonStage {
                    horizontal_groups: vec![vec![0.25, 1.0], vec![3.0]],
                    vertical_groups: vec![vec![2.0], vec![0.5, 0.5]],
                },
                ComparisonStage {
                    horizontal_groups: vec![],
                    vertical_groups: vec![vec![7.25]],
                },
            ],
        };
        let flat: f64 = analysis
            .stages
            .iter()
            .flat_map(|s| s.horizontal_groups.iter().chain(&s.vertical_groups))
            .flatten()
            .sum();
        let (c, _) = total_score(&analysis);
        assert!((c - flat).abs() < 1e-12);

        let scaled = Analysis {
            stages: analysis
                .stages
                .iter()
                .map(|s| ComparisonStage {
                    horizontal_groups: s
                        .horizontal_groups
                        .iter()
                        .map(|g| g.iter().map(|v| v * 3.0).collect())
                        .collect(),
                    vertical_groups: s
                        .vertical_groups
                        .iter()
                        .map(|g| g.iter().map(|v| v * 3.0).collect())
                        .collect(),
                })
                .collect(),
        };
        let (c3, _) = total_score(&scaled);
        assert!((c3 - 3.0 * c).abs() < 1e-12);
    }
}
