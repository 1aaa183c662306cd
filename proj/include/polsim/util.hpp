#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "polsim/errors.hpp"

namespace polsim {

// Sub-grid extremum from three points around index i of y defined on a
// uniform grid (x0 + i*h). Returns refined (x, y) of the parabola vertex.
struct ParabolicPoint {
    double x;
    double y;
};

inline ParabolicPoint parabolic_refine(double xi, double h, double ym, double y0, double yp) {
    const double d1 = (yp - ym) / 2.0;
    const double d2 = yp - 2.0 * y0 + ym;
    if (d2 == 0.0) return {xi, y0};
    return {xi - d1 / d2 * h, y0 - d1 * d1 / (2.0 * d2)};
}

// Index of the smallest interior value; throws if the minimum sits on the
// edge of the range (the caller's window is then too small).
inline int interior_argmin(const Eigen::VectorXd& y, const char* what = "surface") {
    int i;
    y.minCoeff(&i);
    if (i == 0 || i == y.size() - 1)
        throw window_error(std::string(what) + ": minimum at scan-window edge");
    return i;
}

// Golden-section minimization of a unimodal callable on [a, b].
inline double golden_minimize(const std::function<double(double)>& f, double a, double b,
                              double xtol = 1e-7) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

inline double trapezoid(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    double s = 0.0;
    for (int i = 0; i + 1 < x.size(); ++i)
        s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return s;
}

// Least-squares slope of log(y) vs log(x); both must be positive.
inline double loglog_slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw param_error("loglog_slope: need >= 2 points");
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        if (x[i] <= 0 || y[i] <= 0) throw param_error("loglog_slope: non-positive data");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Remove 2*pi jumps from a phase sequence (operates on 2*theta internally).
inline Eigen::VectorXd unwrap_angle(const Eigen::VectorXd& phi) {
    Eigen::VectorXd out = phi;
    constexpr double pi = 3.14159265358979323846;
    for (int i = 1; i < out.size(); ++i) {
        double d = out[i] - out[i - 1];
        while (d > pi) {
            out[i] -= 2 * pi;
            d = out[i] - out[i - 1];
        }
        while (d < -pi) {
            out[i] += 2 * pi;
            d = out[i] - out[i - 1];
        }
    }
    return out;
}

// Run f(i) for i in [0, n) on up to `workers` threads. Each task must touch
// only its own output slot. workers <= 1 runs inline.
inline void parallel_for(int n, const std::function<void(int)>& f, int workers) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    workers = std::min(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace polsim
