#pragma once

// Output-space integration grids for continuous-output channels.
// Tensor-product Gauss-Legendre on a truncated box: the box covers the
// constellation hull plus eight noise standard deviations, which keeps
// the truncated tail mass of every integrand used by the bounds below
// 1e-14 of the total.

#include <cstddef>
#include <vector>

namespace spb {

struct QuadratureGrid {
    int dim = 1;                     // output dimensions (1 or 2)
    std::size_t points = 0;          // node count = per_dim^dim
    std::vector<double> nodes;       // points * dim, row-major
    std::vector<double> log_weights; // points
    double certified_tol = 1e-10;    // relative error bound for Gaussian-type integrands
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Tensor grid on [-half_width, half_width]^dim with n nodes per dimension.
QuadratureGrid make_box_grid(int dim, double half_width, int n_per_dim);

}  // namespace spb
