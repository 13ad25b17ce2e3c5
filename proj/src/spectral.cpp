#include "groundstate/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace groundstate {

SpectralTransform::SpectralTransform(GridPtr grid) : grid_(std::move(grid)) {
    const int dim = grid_->dimension();
    const bool dirichlet = grid_->boundary() == Boundary::Dirichlet;
    axes_.resize(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
        Axis& ax = axes_[static_cast<std::size_t>(a)];
        const int n = grid_->nodes_per_axis()[static_cast<std::size_t>(a)];
        const int m = n - 1;
        const double L = grid_->domain().side_length(a);
        const double h = grid_->spacing()[static_cast<std::size_t>(a)];
        auto w = grid_->axis_weights(a);
        ax.n = n;
        ax.modes = dirichlet ? n - 2 : n;
        ax.slot0 = dirichlet ? 1 : 0;
        ax.eigenvalue.assign(static_cast<std::size_t>(ax.modes), 0.0);
        ax.fwd.assign(static_cast<std::size_t>(ax.modes) * n, 0.0);
        ax.inv.assign(static_cast<std::size_t>(n) * ax.modes, 0.0);
        for (int slot = 0; slot < ax.modes; ++slot) {
            const int k = dirichlet ? slot + 1 : slot;
            ax.eigenvalue[static_cast<std::size_t>(slot)] =
                (2.0 / (h * h)) * (1.0 - std::cos(k * std::numbers::pi / m));
            // Orthonormal 1D eigenvectors under the trapezoid inner product.
            double norm2;
            if (dirichlet) {
                norm2 = 0.5 * L;
            } else {
                norm2 = (k == 0 || k == m) ? L : 0.5 * L;
            }
            const double scale = 1.0 / std::sqrt(norm2);
            for (int j = 0; j < n; ++j) {
                const double theta = k * std::numbers::pi * j / m;
                const double phi = scale * (dirichlet ? std::sin(theta) : std::cos(theta));
                ax.fwd[static_cast<std::size_t>(slot) * n + j] = w[static_cast<std::size_t>(j)] * phi;
                ax.inv[static_cast<std::size_t>(j) * ax.modes + slot] = phi;
            }
        }
    }
}

int SpectralTransform::axis_mode_count(int axis) const {
    return axes_[static_cast<std::size_t>(axis)].modes;
}

int SpectralTransform::axis_slot(int axis, int k) const {
    return k - axes_[static_cast<std::size_t>(axis)].slot0;
}

double SpectralTransform::axis_eigenvalue(int axis, int k) const {
    const Axis& ax = axes_[static_cast<std::size_t>(axis)];
    return ax.eigenvalue[static_cast<std::size_t>(k - ax.slot0)];
}

// Contract one axis of the row-major tensor with the axis matrix. The data
// keeps the grid's full shape; Dirichlet coefficient slots beyond the mode
// count stay zero.
void SpectralTransform::apply_axis(std::vector<double>& data, int axis, bool forward_dir) const {
    const Axis& ax = axes_[static_cast<std::size_t>(axis)];
    const std::size_t n = static_cast<std::size_t>(ax.n);
    const std::size_t modes = static_cast<std::size_t>(ax.modes);
    const std::size_t inner = grid_->stride(axis);
    const std::size_t outer = data.size() / (n * inner);
    std::vector<double> line(n), out(n);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < inner; ++in) {
            const std::size_t base = o * n * inner + in;
            for (std::size_t j = 0; j < n; ++j) line[j] = data[base + j * inner];
            std::fill(out.begin(), out.end(), 0.0);
            if (forward_dir) {
                for (std::size_t k = 0; k < modes; ++k) {
                    double acc = 0.0;
                    const double* row = &ax.fwd[k * n];
                    for (std::size_t j = 0; j < n; ++j) acc += row[j] * line[j];
                    out[k] = acc;
                }
            } else {
                for (std::size_t j = 0; j < n; ++j) {
                    double acc = 0.0;
                    const double* row = &ax.inv[j * modes];
                    for (std::size_t k = 0; k < modes; ++k) acc += row[k] * line[k];
                    out[j] = acc;
                }
            }
            for (std::size_t j = 0; j < n; ++j) data[base + j * inner] = out[j];
        }
    }
}

std::vector<double> SpectralTransform::forward(const Field& f) const {
    if (!f.grid().same_grid(*grid_)) throw grid_mismatch_error("transform grid mismatch");
    std::vector<double> data(f.values().begin(), f.values().end());
    for (int a = 0; a < grid_->dimension(); ++a) apply_axis(data, a, true);
    return data;
}

Field SpectralTransform::inverse(const std::vector<double>& coeffs) const {
    std::vector<double> data = coeffs;
    for (int a = 0; a < grid_->dimension(); ++a) apply_axis(data, a, false);
    Field f(grid_);
    std::copy(data.begin(), data.end(), f.values().begin());
    return f;
}

double SpectralTransform::eigenvalue_at(std::size_t flat) const {
    double mu = 0.0;
    for (int a = 0; a < grid_->dimension(); ++a) {
        const Axis& ax = axes_[static_cast<std::size_t>(a)];
        const int slot = grid_->axis_index(flat, a);
        if (slot >= ax.modes) return std::numeric_limits<double>::infinity();
        mu += ax.eigenvalue[static_cast<std::size_t>(slot)];
    }
    return mu;
}

Field SpectralTransform::solve_shifted(const Field& f, double shift) const {
    if (!(shift > 0.0)) throw precondition_error("solve_shifted requires a positive shift");
    auto coeffs = forward(f);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double mu = eigenvalue_at(i);
        coeffs[i] = std::isfinite(mu) ? coeffs[i] / (mu + shift) : 0.0;
    }
    return inverse(coeffs);
}

Field SpectralTransform::eigenfield(const Mode& mode) const {
    std::vector<double> coeffs(grid_->node_count(), 0.0);
    std::size_t flat = 0;
    for (int a = 0; a < grid_->dimension(); ++a) {
        const int slot = axis_slot(a, mode.index[static_cast<std::size_t>(a)]);
        flat += static_cast<std::size_t>(slot) * grid_->stride(a);
    }
    coeffs[flat] = 1.0;
    return inverse(coeffs);
}

SpectralBasis::SpectralBasis(GridPtr grid, int count)
    : grid_(std::move(grid)), transform_(std::make_shared<SpectralTransform>(grid_)) {
    const int dim = grid_->dimension();
    capacity_ = 1;
    for (int a = 0; a < dim; ++a)
        capacity_ *= static_cast<std::size_t>(transform_->axis_mode_count(a));
    if (count < 1 || static_cast<std::size_t>(count) > capacity_)
        throw capacity_error("eigenbasis count exceeds the grid's mode capacity");

    std::vector<Mode> all;
    all.reserve(capacity_);
    std::array<int, max_dimension> idx{};
    const bool dirichlet = grid_->boundary() == Boundary::Dirichlet;
    const int base = dirichlet ? 1 : 0;
    // Enumerate all tensor modes; axis k runs over admissible 1D modes.
    std::function<void(int, double)> rec = [&](int axis, double mu) {
        if (axis == dim) {
            all.push_back(Mode{mu, idx});
            return;
        }
        const int m = transform_->axis_mode_count(axis);
        for (int s = 0; s < m; ++s) {
            idx[static_cast<std::size_t>(axis)] = base + s;
            rec(axis + 1, mu + transform_->axis_eigenvalue(axis, base + s));
        }
    };
    rec(0, 0.0);
    auto less = [](const Mode& a, const Mode& b) {
        if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
        return a.index < b.index;
    };
    std::sort(all.begin(), all.end(), less);
    modes_.assign(all.begin(), all.begin() + count);
}

SpectralBasis eigenbasis(GridPtr grid, int count) { return SpectralBasis(std::move(grid), count); }

SubspaceSplit::SubspaceSplit(const SpectralBasis& basis, double lambda)
    : lambda_(lambda), tol_zero_(1e-9 * (1.0 + std::abs(lambda))) {
    // The basis must reach past the resonance threshold, otherwise modes of
    // H~ could be missing beyond the truncation.
    if (static_cast<std::size_t>(basis.count()) < basis.capacity()) {
        const double top = basis.eigenvalue(basis.count() - 1);
        if (top + lambda <= tol_zero_)
            throw insufficient_basis_error(
                "basis truncated before covering all modes with mu + lambda <= 0");
    }
    for (int i = 0; i < basis.count(); ++i) {
        const double s = basis.eigenvalue(i) + lambda;
        if (s < -tol_zero_) {
            k_minus_.push_back(i);
        } else if (s <= tol_zero_) {
            k_zero_.push_back(i);
        } else {
            continue;
        }
        tilde_fields_.push_back(basis.eigenfield(i));
        tilde_eigenvalues_.push_back(basis.eigenvalue(i));
        tilde_zero_.push_back(s < -tol_zero_ ? 0 : 1);
    }
}

SubspaceSplit split(const SpectralBasis& basis, double lambda) {
    return SubspaceSplit(basis, lambda);
}

Field SubspaceSplit::project_tilde(const Field& f) const {
    Field out(f.grid_ptr());
    for (const Field& phi : tilde_fields_) axpy(out, l2_inner(f, phi), phi);
    return out;
}

Field SubspaceSplit::project_plus(const Field& f) const {
    Field out = f;
    for (const Field& phi : tilde_fields_) axpy(out, -l2_inner(f, phi), phi);
    return out;
}

Field precondition(const Field& f, double shift) {
    SpectralTransform t(f.grid_ptr());
    return t.solve_shifted(f, shift);
}

} // namespace groundstate
