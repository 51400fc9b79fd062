#include "spb/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace spb {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 2) throw std::invalid_argument("gauss_legendre: need n >= 2");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

QuadratureGrid make_box_grid(int dim, double half_width, int n_per_dim) {
    if (dim < 1 || dim > 2) throw std::invalid_argument("make_box_grid: dim must be 1 or 2");
    if (n_per_dim < 2) throw std::invalid_argument("make_box_grid: need >= 2 nodes per dimension");
    std::vector<double> x, w;
    gauss_legendre(n_per_dim, x, w);

    QuadratureGrid g;
    g.dim = dim;
    if (dim == 1) {
        g.points = static_cast<std::size_t>(n_per_dim);
        g.nodes.resize(g.points);
        g.log_weights.resize(g.points);
        for (int i = 0; i < n_per_dim; ++i) {
            g.nodes[i] = half_width * x[i];
            g.log_weights[i] = std::log(half_width * w[i]);
        }
    } else {
        g.points = static_cast<std::size_t>(n_per_dim) * n_per_dim;
        g.nodes.resize(g.points * 2);
        g.log_weights.resize(g.points);
        std::size_t idx = 0;
        for (int i = 0; i < n_per_dim; ++i) {
            const double lw_i = std::log(half_width * w[i]);
            for (int j = 0; j < n_per_dim; ++j, ++idx) {
                g.nodes[2 * idx] = half_width * x[i];
                g.nodes[2 * idx + 1] = half_width * x[j];
                g.log_weights[idx] = lw_i + std::log(half_width * w[j]);
            }
        }
    }
    return g;
}

}  // namespace spb
