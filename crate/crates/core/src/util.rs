//! Shared integer and quadrature helpers.

use num_complex::Complex64;

/// Floor of the integer square root; panics on negative input.
pub fn isqrt_i128(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative number");
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    // correct the float estimate
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// True if `n` is a perfect square.
pub fn is_square_i128(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = isqrt_i128(n);
    r * r == n
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, u, v) with u*a + v*b = g >= 0.
pub fn xgcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// True if `n` has no square factor.
pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let n = n.unsigned_abs();
    if n % 4 == 0 {
        return false;
    }
    let mut m = n;
    while m % 2 == 0 {
        m /= 2;
    }
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 2;
    }
    true
}

/// Kronecker symbol (a|n), defined for all integers.
pub fn kronecker(a: i64, n: i64) -> i32 {
    let mut a = a;
    let mut n = n;
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // factor out 2s from n
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos % 2 == 1 {
        let am = a.rem_euclid(8);
        if am == 3 || am == 5 {
            result = -result;
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let nm = n.rem_euclid(8);
            if nm == 3 || nm == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Chebyshev initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j as f64 + 1.0) * x * p1 - j as f64 * p2) / (j as f64 + 1.0);
            }
            pp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
            let dx = p0 / pp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integrates `f` over [a, b] with composite Gauss–Legendre: `panels` panels
/// of `order` nodes each.
pub fn integrate_gl<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, order: usize, panels: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut s = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            s += w * f(mid + half * x);
        }
        total += s * half;
    }
    total
}

/// Complex-valued composite Gauss–Legendre.
pub fn integrate_gl_complex<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    order: usize,
    panels: usize,
) -> Complex64 {
    let (nodes, weights) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in nodes.iter().zip(&weights) {
            s += f(mid + half * x) * *w;
        }
        total += s * half;
    }
    total
}

/// Adaptive Simpson quadrature for real integrands.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(fa, fm, fb, b - a);
    rec(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

/// Adaptive Simpson quadrature for complex integrands.
pub fn adaptive_simpson_complex<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Complex64 {
    fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
        (fa + fm * 4.0 + fb) * (h / 6.0)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let flm = f(0.5 * (a + m));
        let frm = f(0.5 * (m + b));
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(fa, fm, fb, b - a);
    rec(f, a, b, fa, fm, fb, whole, tol, max_depth)
}
