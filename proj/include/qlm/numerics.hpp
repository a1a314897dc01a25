// Small numerical kernels shared across the toolkit: quadrature nodes,
// tridiagonal solves, root finding, adaptive ODE integration, grids.
#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlm {

// Gauss-Legendre nodes and weights on (a,b), nodes in increasing order.
struct Quadrature {
    std::vector<double> x;
    std::vector<double> w;
};
Quadrature gauss_legendre(int n, double a = -1.0, double b = 1.0);

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);  // geometric spacing

// Tridiagonal solve (Thomas): a=sub, b=diag, c=super. Overwrites nothing.
std::vector<double> solve_tridiag(const std::vector<double>& a,
                                  const std::vector<double>& b,
                                  const std::vector<double>& c,
                                  std::vector<double> d);

// Brent root bracketing solver on [a,b], f(a) f(b) <= 0.
double brent(const std::function<double(double)>& f, double a, double b,
             double tol = 1e-13, int maxit = 200);

// Derivatives of gridded data on a (possibly nonuniform) grid, 2nd order.
std::vector<double> grid_deriv(const std::vector<double>& x, const std::vector<double>& f);
std::vector<double> grid_deriv2(const std::vector<double>& x, const std::vector<double>& f);

// Integral over the full grid and cumulative integral from x[0]; locally
// quadratic (Simpson-type), assumes smooth integrand and spacing.
double grid_integral(const std::vector<double>& x, const std::vector<double>& f);
std::vector<double> grid_cumint(const std::vector<double>& x, const std::vector<double>& f);

// 5-point central difference of a callable, stepsize h scaled to |x|.
double fd_deriv(const std::function<double(double)>& f, double x, double h);

// Adaptive Dormand-Prince RK45 for small systems.
//   rhs(t, y, dydt);  integrates from t0 to t1 (t1 < t0 allowed).
// Returns solution sampled at t_out (must be monotone from t0 to t1).
// stop: optional; if it returns true the integration halts (event), and
// remaining outputs hold the last state.
struct OdeResult {
    std::vector<double> t;
    std::vector<std::vector<double>> y;  // y[i] = state at t[i]
    bool stopped = false;
    double t_stop = 0.0;
    std::vector<double> y_stop;
};
OdeResult ode_integrate(
    const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& rhs,
    double t0, const std::vector<double>& y0, const std::vector<double>& t_out,
    double rtol = 1e-10, double atol = 1e-12,
    const std::function<bool(double, const std::vector<double>&)>& stop = nullptr);

inline double sq(double x) { return x * x; }

struct NumericsError : std::runtime_error {
    explicit NumericsError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace qlm
