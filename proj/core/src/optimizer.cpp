#include "entroscope/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace entroscope {

namespace {

double clamp01(double z) { return std::clamp(z, 0.0, 1.0); }

// Dense symmetric inverse-Hessian approximation, identity-initialized.
class InverseHessian {
public:
    explicit InverseHessian(std::size_t n) : n_(n), h_(n * n, 0.0) { reset(); }

    void reset() {
        std::fill(h_.begin(), h_.end(), 0.0);
        for (std::size_t i = 0; i < n_; ++i) h_[i * n_ + i] = 1.0;
    }

    // d = -H g
    void descent_direction(std::span<const double> g, std::vector<double>& d) const {
        for (std::size_t i = 0; i < n_; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n_; ++j) acc += h_[i * n_ + j] * g[j];
            d[i] = -acc;
        }
    }

    // BFGS update with curvature guard; skipped when s.y is not positive
    // enough to keep H positive definite.
    void update(std::span<const double> s, std::span<const double> y) {
        double sy = 0.0, ss = 0.0, yy = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            sy += s[i] * y[i];
            ss += s[i] * s[i];
            yy += y[i] * y[i];
        }
        if (!(sy > 1e-12 * std::sqrt(ss * yy))) return;

        std::vector<double> hy(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n_; ++j) acc += h_[i * n_ + j] * y[j];
            hy[i] = acc;
        }
        double yhy = 0.0;
        for (std::size_t i = 0; i < n_; ++i) yhy += y[i] * hy[i];

        const double rho = 1.0 / sy;
        const double c = (1.0 + rho * yhy) * rho;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                h_[i * n_ + j] += c * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
            }
        }
    }

private:
    std::size_t n_;
    std::vector<double> h_;
};

}  // namespace

MinimizeResult minimize_box(const ObjectiveFn& f,
                            std::span<const double> lo,
                            std::span<const double> hi,
                            std::span<const double> x0,
                            const MinimizeOptions& options) {
    const std::size_t n = lo.size();
    if (hi.size() != n || x0.size() != n)
        throw std::invalid_argument("minimize_box: bound/start size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (!(lo[i] <= hi[i]))
            throw std::invalid_argument("minimize_box: lo > hi");

    MinimizeResult result;
    result.x.assign(x0.begin(), x0.end());

    // Work in scaled coordinates z in [0,1]; fixed coordinates stay at 0.
    std::vector<double> width(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        width[i] = hi[i] - lo[i];
        z[i] = width[i] > 0.0 ? clamp01((x0[i] - lo[i]) / width[i]) : 0.0;
    }

    int evaluations = 0;
    const auto unscale = [&](std::span<const double> zz, std::vector<double>& xx) {
        for (std::size_t i = 0; i < n; ++i) xx[i] = lo[i] + zz[i] * width[i];
    };
    std::vector<double> xbuf(n);
    const auto eval = [&](std::span<const double> zz) {
        unscale(zz, xbuf);
        ++evaluations;
        return f(xbuf);
    };

    const auto gradient = [&](std::span<const double> zz, std::vector<double>& g) {
        std::vector<double> probe(zz.begin(), zz.end());
        for (std::size_t i = 0; i < n; ++i) {
            if (width[i] <= 0.0) {
                g[i] = 0.0;
                continue;
            }
            const double step = options.fd_step;
            const double zp = std::min(1.0, zz[i] + step);
            const double zm = std::max(0.0, zz[i] - step);
            probe[i] = zp;
            const double fp = eval(probe);
            probe[i] = zm;
            const double fm = eval(probe);
            probe[i] = zz[i];
            g[i] = zp > zm ? (fp - fm) / (zp - zm) : 0.0;
        }
    };

    double fz = eval(z);
    std::vector<double> g(n), d(n), z_new(n), g_new(n), s(n), y(n);
    gradient(z, g);
    InverseHessian hessian(n);

    const auto projected_gradient_norm = [&](std::span<const double> zz,
                                             std::span<const double> gg) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // Gradient components pushing outward at an active bound do not
            // count: the box blocks that direction.
            double gi = gg[i];
            if (zz[i] <= 0.0 && gi > 0.0) gi = 0.0;
            if (zz[i] >= 1.0 && gi < 0.0) gi = 0.0;
            norm = std::max(norm, std::abs(gi));
        }
        return norm;
    };

    bool converged = projected_gradient_norm(z, g) <= options.g_tolerance;
    int iter = 0;
    int stall_count = 0;
    bool reset_since_fail = false;

    while (!converged && iter < options.max_iterations) {
        ++iter;
        hessian.descent_direction(g, d);

        // Backtracking line search on the projected path.
        const double g_dot_d = std::inner_product(g.begin(), g.end(), d.begin(), 0.0);
        double step = 1.0;
        double f_new = fz;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            for (std::size_t i = 0; i < n; ++i) z_new[i] = clamp01(z[i] + step * d[i]);
            f_new = eval(z_new);
            // Armijo on the projected step; fall back to plain decrease when
            // the direction sees the box boundary.
            double proj_decrease = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj_decrease += g[i] * (z_new[i] - z[i]);
            const double wanted = g_dot_d < 0.0 ? 1e-4 * proj_decrease : 0.0;
            if (f_new <= fz + wanted && f_new < fz) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }

        if (!accepted) {
            if (!reset_since_fail) {
                // Retry from a fresh quasi-Newton state once before giving up.
                hessian.reset();
                reset_since_fail = true;
                continue;
            }
            break;
        }
        reset_since_fail = false;

        gradient(z_new, g_new);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = z_new[i] - z[i];
            y[i] = g_new[i] - g[i];
        }
        hessian.update(s, y);

        const double decrease = fz - f_new;
        z = z_new;
        fz = f_new;
        g = g_new;

        if (projected_gradient_norm(z, g) <= options.g_tolerance) {
            converged = true;
            break;
        }
        if (decrease <= options.f_tolerance * (1.0 + std::abs(fz))) {
            if (++stall_count >= 2) {
                converged = true;
                break;
            }
        } else {
            stall_count = 0;
        }
    }

    unscale(z, result.x);
    result.fx = fz;
    result.converged = converged;
    result.iterations = iter;
    result.evaluations = evaluations;
    return result;
}

}  // namespace entroscope
