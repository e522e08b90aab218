//! Dormand-Prince 5(4) adaptive stepping for autonomous linear systems.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// Fifth-order weights equal the last row of A; these are 5th minus 4th.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `y' = f(y)` from `t0` to `t1` in place. `h0` seeds the step
/// size and is updated to the last accepted step for reuse.
pub fn dopri5<F>(f: F, y: &mut [f64], t0: f64, t1: f64, rtol: f64, atol: f64, h0: &mut f64) -> StepStats
where
    F: Fn(&[f64], &mut [f64]),
{
    let n = y.len();
    let mut stats = StepStats::default();
    if t1 <= t0 || n == 0 {
        return stats;
    }
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    let mut ynew = vec![0.0; n];
    f(y, &mut k[0]);
    let mut t = t0;
    let mut h = h0.min(t1 - t0).max(f64::MIN_POSITIVE);
    let mut last_accepted = h;
    while t < t1 {
        let finishing = t + h >= t1;
        if finishing {
            h = t1 - t;
        }
        for s in 1..7 {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += A[s][j] * kj[i];
                }
                tmp[i] = y[i] + h * acc;
            }
            f(&tmp, &mut k[s]);
        }
        // Stage 7 was evaluated at the 5th-order solution (FSAL).
        ynew.copy_from_slice(&tmp);
        let mut err = 0.0;
        for i in 0..n {
            let mut e = 0.0;
            for (s, ks) in k.iter().enumerate() {
                e += E[s] * ks[i];
            }
            let scale = atol + rtol * y[i].abs().max(ynew[i].abs());
            err += (h * e / scale).powi(2);
        }
        let err = (err / n as f64).sqrt();
        if err <= 1.0 {
            t = if finishing { t1 } else { t + h };
            y.copy_from_slice(&ynew);
            k.swap(0, 6);
            stats.accepted += 1;
            if !finishing {
                last_accepted = h;
            }
        } else {
            stats.rejected += 1;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= if err <= 1.0 { factor } else { factor.min(1.0) };
    }
    *h0 = last_accepted;
    stats
}
