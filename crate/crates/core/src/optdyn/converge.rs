//! Convergence detection on recorded trajectories.

use crate::mat::linf_diff;

/// Least recorded index T such that every strictly later sample stays within
/// `eps` (strict, max norm) of sample T. A candidate must have at least one
/// later sample: the final point would otherwise qualify vacuously and every
/// trajectory, even an alternating one, would "converge" at its last entry.
pub fn detect_convergence(trajectory: &[Vec<f64>], eps: f64) -> Option<usize> {
    for t in 0..trajectory.len().saturating_sub(1) {
        let anchor = &trajectory[t];
        let settled = trajectory[t + 1..]
            .iter()
            .all(|later| later.len() == anchor.len() && linf_diff(later, anchor) < eps);
        if settled {
            return Some(t);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_decay_settles_once_the_tail_fits() {
        // 2^-t for t = 0..=10 and eps = 0.1: from index 4 on, everything
        // stays within 0.0625 < 0.1 of 2^-4; index 3 is ruled out by the
        // eventual gap |2^-inf - 2^-3| -> 0.125.
        let traj: Vec<Vec<f64>> = (0..=10).map(|t| vec![0.5f64.powi(t)]).collect();
        assert_eq!(detect_convergence(&traj, 0.1), Some(4));
    }

    #[test]
    fn alternating_trajectories_never_converge() {
        let traj: Vec<Vec<f64>> =
            (0..8).map(|t| vec![if t % 2 == 0 { 1.0 } else { -1.0 }]).collect();
        assert_eq!(detect_convergence(&traj, 0.5), None);
    }

    #[test]
    fn constant_trajectories_converge_immediately() {
        let traj = vec![vec![3.0, 4.0]; 5];
        assert_eq!(detect_convergence(&traj, 1e-9), Some(0));
    }

    #[test]
    fn single_points_and_empty_trajectories_are_undecidable() {
        assert_eq!(detect_convergence(&[], 1.0), None);
        assert_eq!(detect_convergence(&[vec![1.0]], 1.0), None);
    }

    #[test]
    fn the_bound_is_strict() {
        let traj = vec![vec![0.0], vec![1.0], vec![1.0]];
        // |1 - 1| = 0 < eps works from index 1; index 0 fails since |1-0|
        // is not < 1.
        assert_eq!(detect_convergence(&traj, 1.0), Some(1));
    }
}
