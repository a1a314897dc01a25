#include "qlm/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace qlm {

Quadrature gauss_legendre(int n, double a, double b) {
    if (n < 1) throw NumericsError("gauss_legendre: n < 1");
    Quadrature q;
    q.x.resize(n);
    q.w.resize(n);
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        // Newton on P_n with the usual Chebyshev initial guess
        double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        q.x[i - 1] = xm - xl * z;
        q.x[n - i] = xm + xl * z;
        q.w[i - 1] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        q.w[n - i] = q.w[i - 1];
    }
    return q;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / double(n - 1);
    return v;
}

std::vector<double> logspace(double a, double b, int n) {
    if (a <= 0 || b <= 0) throw NumericsError("logspace: endpoints must be positive");
    std::vector<double> v(n);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i) v[i] = std::exp(la + (lb - la) * i / double(n - 1));
    v.front() = a;
    v.back() = b;
    return v;
}

std::vector<double> solve_tridiag(const std::vector<double>& a, const std::vector<double>& b,
                                  const std::vector<double>& c, std::vector<double> d) {
    const size_t n = b.size();
    std::vector<double> cp(n);
    cp[0] = c[0] / b[0];
    d[0] /= b[0];
    for (size_t i = 1; i < n; ++i) {
        const double m = b[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / m;
        d[i] = (d[i] - a[i] * d[i - 1]) / m;
    }
    for (size_t i = n - 1; i-- > 0;) d[i] -= cp[i] * d[i + 1];
    return d;
}

double brent(const std::function<double(double)>& f, double a, double b, double tol, int maxit) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if (fa * fb > 0) throw NumericsError("brent: root not bracketed");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < maxit; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q_, r_;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q_ = 1.0 - s;
            } else {
                const double q2 = fa / fc, r2 = fb / fc;
                p = s * (2.0 * xm * q2 * (q2 - r2) - (b - a) * (r2 - 1.0));
                q_ = (q2 - 1.0) * (r2 - 1.0) * (s - 1.0);
            }
            if (p > 0) q_ = -q_;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q_ - std::abs(tol1 * q_), std::abs(e * q_))) {
                e = d; d = p / q_;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a; fc = fa; d = b - a; e = d;
        }
    }
    return b;
}

std::vector<double> grid_deriv(const std::vector<double>& x, const std::vector<double>& f) {
    const size_t n = x.size();
    std::vector<double> d(n);
    for (size_t i = 0; i < n; ++i) {
        if (i == 0) {
            const double h1 = x[1] - x[0], h2 = x[2] - x[1];
            d[0] = (-(2 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] -
                    h1 / (h2 * (h1 + h2)) * f[2]);
        } else if (i == n - 1) {
            const double h1 = x[n - 2] - x[n - 3], h2 = x[n - 1] - x[n - 2];
            d[i] = (h2 / (h1 * (h1 + h2)) * f[n - 3] - (h1 + h2) / (h1 * h2) * f[n - 2] +
                    (h1 + 2 * h2) / (h2 * (h1 + h2)) * f[n - 1]);
        } else {
            const double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
            d[i] = (-h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] +
                    h1 / (h2 * (h1 + h2)) * f[i + 1]);
        }
    }
    return d;
}

std::vector<double> grid_deriv2(const std::vector<double>& x, const std::vector<double>& f) {
    const size_t n = x.size();
    std::vector<double> d(n);
    auto three = [&](size_t i0, size_t i) {
        const double h1 = x[i0 + 1] - x[i0], h2 = x[i0 + 2] - x[i0 + 1];
        (void)i;
        return 2.0 * (f[i0] * h2 - f[i0 + 1] * (h1 + h2) + f[i0 + 2] * h1) /
               (h1 * h2 * (h1 + h2));
    };
    for (size_t i = 0; i < n; ++i) {
        if (i == 0) d[i] = three(0, i);
        else if (i == n - 1) d[i] = three(n - 3, i);
        else d[i] = three(i - 1, i);
    }
    return d;
}

double grid_integral(const std::vector<double>& x, const std::vector<double>& f) {
    const size_t n = x.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * (f[0] + f[1]) * (x[1] - x[0]);
    return grid_cumint(x, f).back();
}

std::vector<double> grid_cumint(const std::vector<double>& x, const std::vector<double>& f) {
    // panel-wise quadratic: integral over [x_i, x_{i+1}] using (i-1, i, i+1) fit
    const size_t n = x.size();
    std::vector<double> F(n, 0.0);
    auto panel = [&](size_t a, size_t b, size_t c, double xl, double xr) {
        // integrate quadratic through (x[a],f[a]),(x[b],f[b]),(x[c],f[c]) over [xl,xr]
        const double xa = x[a], xb = x[b], xc = x[c];
        auto I = [&](double X) {
            // antiderivatives of Lagrange basis
            const double la = ((X - xb) * (X - xc));
            const double lb = ((X - xa) * (X - xc));
            const double lc = ((X - xa) * (X - xb));
            (void)la; (void)lb; (void)lc;
            auto cube = [](double u) { return u * u * u / 3.0; };
            auto quad = [](double u) { return u * u / 2.0; };
            const double A0 = cube(X) - (xb + xc) * quad(X) + xb * xc * X;
            const double B0 = cube(X) - (xa + xc) * quad(X) + xa * xc * X;
            const double C0 = cube(X) - (xa + xb) * quad(X) + xa * xb * X;
            return f[a] * A0 / ((xa - xb) * (xa - xc)) + f[b] * B0 / ((xb - xa) * (xb - xc)) +
                   f[c] * C0 / ((xc - xa) * (xc - xb));
        };
        return I(xr) - I(xl);
    };
    for (size_t i = 0; i + 1 < n; ++i) {
        size_t a = (i == 0) ? 0 : i - 1;
        size_t c = (i == 0) ? 2 : i + 1;
        size_t b = (i == 0) ? 1 : i;
        F[i + 1] = F[i] + panel(a, b, c, x[i], x[i + 1]);
    }
    return F;
}

double fd_deriv(const std::function<double(double)>& f, double x, double h) {
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12.0 * h);
}

namespace {
// Dormand-Prince 5(4) tableau
const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
const double a21 = 1.0 / 5;
const double a31 = 3.0 / 40, a32 = 9.0 / 40;
const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
             a54 = -212.0 / 729;
const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
             a65 = -5103.0 / 18656;
const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
             b6 = 11.0 / 84;
const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
             e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace

OdeResult ode_integrate(
    const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& rhs,
    double t0, const std::vector<double>& y0, const std::vector<double>& t_out, double rtol,
    double atol, const std::function<bool(double, const std::vector<double>&)>& stop) {
    OdeResult res;
    const size_t m = y0.size();
    const double dir = (t_out.back() >= t0) ? 1.0 : -1.0;
    std::vector<double> y = y0, k1(m), k2(m), k3(m), k4(m), k5(m), k6(m), k7(m), yt(m), ynew(m);
    double t = t0;
    double h = dir * std::max(1e-10, std::abs(t_out.back() - t0) * 1e-4);
    size_t iout = 0;
    rhs(t, y, k1);

    // emit any outputs exactly at t0
    while (iout < t_out.size() && t_out[iout] == t0) {
        res.t.push_back(t0);
        res.y.push_back(y);
        ++iout;
    }

    auto interp_push = [&](double tq, const std::vector<double>& ya, const std::vector<double>& yb,
                           double ta, double tb) {
        // linear-in-step Hermite would be nicer; cubic via k1/k7 (FSAL) endpoints
        const double th = (tq - ta) / (tb - ta);
        std::vector<double> yi(m);
        for (size_t i = 0; i < m; ++i) {
            const double d = tb - ta;
            const double f0 = k1[i] * d, f1 = k7[i] * d;
            const double a = ya[i], bq = f0, cq = 3 * (yb[i] - ya[i]) - 2 * f0 - f1,
                         dq = f0 + f1 - 2 * (yb[i] - ya[i]);
            yi[i] = a + bq * th + cq * th * th + dq * th * th * th;
        }
        res.t.push_back(tq);
        res.y.push_back(yi);
    };

    const int max_steps = 2000000;
    for (int step = 0; step < max_steps; ++step) {
        if (iout >= t_out.size()) break;
        if (dir * (t - t_out.back()) >= 0) break;
        if (dir * (t + h - t_out.back()) > 0) h = t_out.back() - t;

        for (size_t i = 0; i < m; ++i) yt[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, yt, k2);
        for (size_t i = 0; i < m; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, yt, k3);
        for (size_t i = 0; i < m; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, yt, k4);
        for (size_t i = 0; i < m; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, yt, k5);
        for (size_t i = 0; i < m; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, yt, k6);
        for (size_t i = 0; i < m; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, ynew, k7);

        double err = 0.0;
        for (size_t i = 0; i < m; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                   e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += sq(ei / sc);
        }
        err = std::sqrt(err / m);

        if (err <= 1.0) {
            const double tnew = t + h;
            while (iout < t_out.size() && dir * (t_out[iout] - t) > 0 &&
                   dir * (t_out[iout] - tnew) <= 0) {
                interp_push(t_out[iout], y, ynew, t, tnew);
                ++iout;
            }
            t = tnew;
            y = ynew;
            k1 = k7;  // FSAL
            if (stop && stop(t, y)) {
                res.stopped = true;
                res.t_stop = t;
                res.y_stop = y;
                return res;
            }
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
            throw NumericsError("ode_integrate: step size underflow");
    }
    if (iout < t_out.size()) throw NumericsError("ode_integrate: failed to reach all outputs");
    res.t_stop = t;
    res.y_stop = y;
    return res;
}

}  // namespace qlm
