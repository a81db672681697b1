//! Small one-dimensional search helpers shared by the zero finder and the
//! coefficient searches.

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`.
/// Returns `(x_min, f(x_min))`, stopping once the bracket is narrower
/// than `tol`.
pub fn golden_min<F, E>(mut a: f64, mut b: f64, tol: f64, mut f: F) -> Result<(f64, f64), E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut guard = 0;
    while (b - a).abs() > tol && guard < 200 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
        guard += 1;
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}

/// Bisection on a sign change of `f` between `a` and `b` (`f(a)` and `f(b)`
/// of opposite sign, or one of them zero). Returns the bracket midpoint once
/// the bracket is narrower than `tol`.
pub fn bisect<F, E>(mut a: f64, mut b: f64, tol: f64, mut f: F) -> Result<f64, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let mut fa = f(a)?;
    if fa == 0.0 {
        return Ok(a);
    }
    let mut guard = 0;
    while (b - a).abs() > tol && guard < 200 {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        guard += 1;
    }
    Ok(0.5 * (a + b))
}
