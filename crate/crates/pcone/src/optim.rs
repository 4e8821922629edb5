//! Derivative-free minimization: Nelder–Mead with a compass-search polish,
//! wrapped in a deterministic multi-start driver.
//!
//! The isomorphism-search objectives are piecewise-smooth maxima of hinge
//! defects, so gradients are unreliable at the kinks; a simplex search with
//! shrinking steps handles them well at the dimensions used here (<= 65
//! parameters). Budgets are counted in objective evaluations.
//!
//! Restarts are independent and merged by `(value, restart index)`; the
//! driver runs them sequentially so evaluation counts and early stopping are
//! reproducible byte for byte, but nothing in the restarts themselves
//! requires that order.

/// Outcome of one local search.
#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

/// Classic Nelder–Mead (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5) from `x0`, stopping on simplex collapse, on reaching
/// `stop_below`, or when `max_evals` objective evaluations are spent.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    initial_step: f64,
    max_evals: usize,
    stop_below: f64,
) -> MinimizeResult {
    let n = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += initial_step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = Vec::with_capacity(n + 1);
    for p in &simplex {
        values.push(eval(p, &mut evals));
    }

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];

        if values[best] <= stop_below || evals + 4 > max_evals {
            break;
        }
        let spread = values[worst] - values[best];
        let diam = simplex
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&simplex[best])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0_f64, f64::max)
            })
            .fold(0.0_f64, f64::max);
        if spread <= 1e-16 * (1.0 + values[best].abs()) && diam <= 1e-14 {
            break;
        }

        let mut centroid = vec![0.0; n];
        for &idx in order.iter().take(n) {
            for d in 0..n {
                centroid[d] += simplex[idx][d];
            }
        }
        for c in &mut centroid {
            *c /= n as f64;
        }

        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&simplex[worst])
            .map(|(c, w)| c + (c - w))
            .collect();
        let v_reflect = eval(&reflect, &mut evals);

        if v_reflect < values[best] {
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + 2.0 * (c - w))
                .collect();
            let v_expand = eval(&expand, &mut evals);
            if v_expand < v_reflect {
                simplex[worst] = expand;
                values[worst] = v_expand;
            } else {
                simplex[worst] = reflect;
                values[worst] = v_reflect;
            }
            continue;
        }
        if v_reflect < values[second_worst] {
            simplex[worst] = reflect;
            values[worst] = v_reflect;
            continue;
        }

        let contract: Vec<f64> = centroid
            .iter()
            .zip(&simplex[worst])
            .map(|(c, w)| c + 0.5 * (w - c))
            .collect();
        let v_contract = eval(&contract, &mut evals);
        if v_contract < values[worst] {
            simplex[worst] = contract;
            values[worst] = v_contract;
            continue;
        }

        // shrink toward the best vertex
        let best_point = simplex[best].clone();
        for idx in 0..=n {
            if idx == best {
                continue;
            }
            if evals >= max_evals {
                break;
            }
            for d in 0..n {
                simplex[idx][d] = best_point[d] + 0.5 * (simplex[idx][d] - best_point[d]);
            }
            let moved = simplex[idx].clone();
            values[idx] = eval(&moved, &mut evals);
        }
    }

    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    MinimizeResult {
        x: simplex[best].clone(),
        value: values[best],
        evals,
    }
}

/// Coordinate pattern search with halving steps, used to polish a candidate
/// minimum to high precision after Nelder–Mead stalls.
pub fn compass_polish<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    v0: f64,
    initial_step: f64,
    min_step: f64,
    max_evals: usize,
    stop_below: f64,
) -> MinimizeResult {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut v = v0;
    let mut step = initial_step;
    let mut evals = 0usize;
    while step >= min_step && evals + 2 * n <= max_evals && v > stop_below {
        let mut improved = false;
        for i in 0..n {
            for dir in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + dir * step;
                let cand = f(&x);
                evals += 1;
                if cand < v {
                    v = cand;
                    improved = true;
                } else {
                    x[i] = old;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    MinimizeResult { x, value: v, evals }
}

/// One configured restart: a start point plus the local-search step.
#[derive(Debug, Clone)]
pub struct Restart {
    pub start: Vec<f64>,
    pub initial_step: f64,
}

/// Multi-start minimization under a global evaluation budget.
///
/// Half the budget explores the restarts (evenly split); the other half
/// polishes the three best candidates with fresh Nelder–Mead runs and a
/// compass search each. Reaching `stop_below` short-circuits the remaining
/// work deterministically (pass 0.0, or any unattainable value, to disable).
pub fn multistart_minimize<F>(
    objective: F,
    restarts: &[Restart],
    budget: usize,
    stop_below: f64,
) -> MinimizeResult
where
    F: Fn(&[f64]) -> f64,
{
    assert!(!restarts.is_empty(), "need at least one restart");
    let explore_budget = budget / 2;
    let dim = restarts[0].start.len();
    let per_restart = (explore_budget / restarts.len()).max(dim + 8);
    let mut f = |x: &[f64]| objective(x);

    let mut stage1: Vec<(usize, MinimizeResult)> = Vec::with_capacity(restarts.len());
    let mut used = 0usize;
    for (idx, r) in restarts.iter().enumerate() {
        let res = nelder_mead(&mut f, &r.start, r.initial_step, per_restart, stop_below);
        used += res.evals;
        let hit = res.value <= stop_below;
        stage1.push((idx, res));
        if hit {
            break;
        }
    }

    stage1.sort_by(|(ia, ra), (ib, rb)| ra.value.total_cmp(&rb.value).then(ia.cmp(ib)));
    let mut best = stage1[0].1.clone();
    best.evals = used;
    if best.value <= stop_below {
        return best;
    }

    let polish_budget = budget.saturating_sub(used);
    let candidates: Vec<&MinimizeResult> = stage1
        .iter()
        .take(3)
        .map(|(_, r)| r)
        .filter(|r| r.value.is_finite())
        .collect();
    if polish_budget > 16 && !candidates.is_empty() {
        let per_candidate = polish_budget / candidates.len();
        for cand in candidates {
            let nm = nelder_mead(&mut f, &cand.x, 1e-3, per_candidate / 2, stop_below);
            used += nm.evals;
            let (seed_x, seed_v) = if nm.value < cand.value {
                (nm.x, nm.value)
            } else {
                (cand.x.clone(), cand.value)
            };
            let mut after_nm = seed_v;
            let mut after_x = seed_x;
            if after_nm > stop_below {
                let polished = compass_polish(
                    &mut f,
                    &after_x,
                    after_nm,
                    1e-4,
                    1e-14,
                    per_candidate - per_candidate / 2,
                    stop_below,
                );
                used += polished.evals;
                after_nm = polished.value;
                after_x = polished.x;
            }
            if after_nm < best.value {
                best = MinimizeResult {
                    x: after_x,
                    value: after_nm,
                    evals: 0,
                };
            }
            if best.value <= stop_below {
                break;
            }
        }
    }
    best.evals = used;
    best
}
