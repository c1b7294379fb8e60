//! Linear-programming predicates over halfspace systems, backed by `microlp`.

use microlp::{ComparisonOp, Error as LpError, OptimizationDirection, Problem, SolveOutcome};

use super::halfspace::{HRep, Halfspace};
use super::PolytopeError;

pub(crate) enum LpResult {
    Optimal(f64),
    Infeasible,
    Unbounded,
}

/// Maximize `objective·x` over `{x : h.normal·x <= h.offset + relax}`, with
/// `x` free and an optional extra cap `objective·x <= cap`.
pub(crate) fn maximize<'a>(
    objective: &[f64],
    halfspaces: impl IntoIterator<Item = &'a Halfspace>,
    relax: f64,
    cap: Option<f64>,
) -> Result<LpResult, PolytopeError> {
    Ok(match solve(objective, halfspaces, relax, cap)? {
        Ok((v, _)) => LpResult::Optimal(v),
        Err(r) => r,
    })
}

/// Maximizer of `objective·x` over the halfspaces; `Err` carries the
/// infeasible or unbounded outcome.
pub(crate) fn argmax<'a>(
    objective: &[f64],
    halfspaces: impl IntoIterator<Item = &'a Halfspace>,
) -> Result<Result<Vec<f64>, LpResult>, PolytopeError> {
    Ok(solve(objective, halfspaces, 0.0, None)?.map(|(_, x)| x))
}

type Solved = Result<(f64, Vec<f64>), LpResult>;

fn solve<'a>(
    objective: &[f64],
    halfspaces: impl IntoIterator<Item = &'a Halfspace>,
    relax: f64,
    cap: Option<f64>,
) -> Result<Solved, PolytopeError> {
    let mut problem = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = objective
        .iter()
        .map(|&c| problem.add_var(c, (f64::NEG_INFINITY, f64::INFINITY)))
        .collect();
    let terms = |coeffs: &[f64]| -> Vec<(microlp::Variable, f64)> {
        vars.iter()
            .zip(coeffs)
            .filter(|(_, c)| **c != 0.0)
            .map(|(v, c)| (*v, *c))
            .collect()
    };
    for h in halfspaces {
        problem.add_constraint(terms(h.normal()), ComparisonOp::Le, h.offset() + relax);
    }
    if let Some(cap) = cap {
        problem.add_constraint(terms(objective), ComparisonOp::Le, cap);
    }
    match problem.solve() {
        Ok(SolveOutcome::Solution(sol)) => Ok(Ok((sol.objective(), vars.iter().map(|&v| sol.var_value(v)).collect()))),
        Ok(SolveOutcome::Interrupted(_)) => Err(PolytopeError::Numerical("lp interrupted")),
        Err(LpError::Infeasible) => Ok(Err(LpResult::Infeasible)),
        Err(LpError::Unbounded) => Ok(Err(LpResult::Unbounded)),
        Err(_) => Err(PolytopeError::Numerical("lp solver failure")),
    }
}

/// Whether the system is feasible once every offset is relaxed by `eps`.
pub fn is_feasible(h: &HRep, eps: f64) -> Result<bool, PolytopeError> {
    let zero = vec![0.0; h.dim()];
    Ok(!matches!(
        maximize(&zero, h.halfspaces(), eps, None)?,
        LpResult::Infeasible
    ))
}

/// Drops every halfspace implied by the remaining ones.
///
/// Each halfspace is tested in order against the currently kept set by
/// maximizing its left-hand side subject to the others; it is redundant when
/// that maximum does not exceed its offset by more than eps.
pub fn remove_redundant(h: &HRep, eps: f64) -> Result<HRep, PolytopeError> {
    if !is_feasible(h, eps)? {
        return Err(PolytopeError::Empty);
    }
    let all = h.halfspaces();
    let mut keep = vec![true; all.len()];
    for i in 0..all.len() {
        let hi = &all[i];
        let others = all
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i && keep[*j])
            .map(|(_, x)| x);
        let tol = eps * (1.0 + hi.offset().abs());
        let redundant = match maximize(hi.normal(), others, 0.0, Some(hi.offset() + 1.0))? {
            LpResult::Optimal(v) => v <= hi.offset() + tol,
            LpResult::Infeasible => true,
            LpResult::Unbounded => false,
        };
        if redundant {
            keep[i] = false;
        }
    }
    let kept = all
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(x, _)| x.clone())
        .collect();
    HRep::new(h.dim(), kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_rows(d: usize, c: &[f64]) -> Vec<(Vec<f64>, f64)> {
        let mut rows = Vec::new();
        for i in 0..d {
            for s in [1.0, -1.0] {
                let mut n = vec![0.0; d];
                n[i] = s;
                rows.push((n, 1.0 + s * c[i]));
            }
        }
        rows
    }

    #[test]
    fn drops_looser_bound() {
        let h = HRep::from_rows(1, &[(vec![1.0], 1.0), (vec![1.0], 2.0), (vec![-1.0], 0.0)]).unwrap();
        let r = remove_redundant(&h, 1e-9).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.halfspaces()[0].offset(), 1.0);
        assert_eq!(r.halfspaces()[1].normal(), &[-1.0]);
    }

    #[test]
    fn irredundant_is_fixpoint() {
        let h = HRep::from_rows(3, &cube_rows(3, &[0.0; 3])).unwrap();
        assert_eq!(remove_redundant(&h, 1e-9).unwrap(), h);
    }

    #[test]
    fn stacked_duplicate_cubes_collapse_to_six() {
        // two identical cubes plus four repeated faces: 16 halfspaces
        let mut rows = cube_rows(3, &[0.0; 3]);
        rows.extend(cube_rows(3, &[0.0; 3]));
        rows.extend(cube_rows(3, &[0.0; 3]).into_iter().take(4));
        let h = HRep::from_rows(3, &rows).unwrap();
        assert_eq!(h.len(), 16);
        assert_eq!(remove_redundant(&h, 1e-9).unwrap().len(), 6);
    }

    #[test]
    fn infeasible_reports_empty() {
        let h = HRep::from_rows(1, &[(vec![1.0], 0.0), (vec![-1.0], -1.0)]).unwrap();
        assert!(matches!(remove_redundant(&h, 1e-9), Err(PolytopeError::Empty)));
    }

    #[test]
    fn touching_within_eps_is_feasible() {
        let h = HRep::from_rows(1, &[(vec![1.0], 1.0), (vec![-1.0], -1.0 - 1e-12)]).unwrap();
        assert!(is_feasible(&h, 1e-9).unwrap());
    }
}
