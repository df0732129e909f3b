//! Float helpers that `core` does not provide without `std`.

/// Slack used when turning `fraction * n` into a whole count, so that
/// `2/9 * 9` lands on 2 rather than 3.
const COUNT_EPS: f64 = 1e-9;

pub(crate) fn ceil_count(x: f64) -> usize {
    let floor = x as usize;
    if x - floor as f64 > COUNT_EPS {
        floor + 1
    } else {
        floor
    }
}

/// Round half up; `x` must be non-negative.
pub(crate) fn round_half_up(x: f64) -> usize {
    (x + 0.5 + COUNT_EPS) as usize
}

pub(crate) fn abs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}
