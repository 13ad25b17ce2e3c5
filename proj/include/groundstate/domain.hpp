#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "groundstate/errors.hpp"

namespace groundstate {

enum class Boundary { Neumann, Dirichlet };

inline constexpr int max_dimension = 4;

/// Box domain: dimension, side lengths and the boundary condition.
///
/// The volume is the product of the side lengths and is the |Omega| that
/// enters every closed-form energy.
class DomainSpec {
public:
    DomainSpec(std::vector<double> side_lengths, Boundary boundary);

    int dimension() const { return static_cast<int>(sides_.size()); }
    std::span<const double> side_lengths() const { return sides_; }
    double side_length(int axis) const { return sides_[static_cast<std::size_t>(axis)]; }
    Boundary boundary() const { return boundary_; }
    double volume() const { return volume_; }

private:
    std::vector<double> sides_;
    Boundary boundary_;
    double volume_;
};

struct GridLimits {
    // Desk-scale memory guard for N=4; override to go larger.
    std::size_t max_nodes_4d = 33ull * 33 * 33 * 33;
};

/// Vertex-centered tensor-product grid with trapezoid quadrature weights.
///
/// Immutable after construction; share via shared_ptr. Node storage is
/// row-major with axis 0 slowest, which fixes the binary dump layout.
class Grid {
public:
    static std::shared_ptr<const Grid> create(DomainSpec domain,
                                              std::vector<int> nodes_per_axis,
                                              const GridLimits& limits = {});

    const DomainSpec& domain() const { return domain_; }
    int dimension() const { return domain_.dimension(); }
    Boundary boundary() const { return domain_.boundary(); }
    double volume() const { return domain_.volume(); }

    std::span<const int> nodes_per_axis() const { return nodes_; }
    std::span<const double> spacing() const { return spacing_; }
    double max_spacing() const;
    std::size_t node_count() const { return count_; }

    /// Full tensor trapezoid weight per node (h/2 at axis endpoints, h inside).
    std::span<const double> quad_weights() const { return weights_; }
    /// 1D trapezoid weights of one axis.
    std::span<const double> axis_weights(int axis) const { return axis_weights_[static_cast<std::size_t>(axis)]; }

    /// Flat-index stride of an axis (row-major, axis 0 slowest).
    std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }
    int axis_index(std::size_t flat, int axis) const {
        return static_cast<int>((flat / strides_[static_cast<std::size_t>(axis)])
                                % static_cast<std::size_t>(nodes_[static_cast<std::size_t>(axis)]));
    }
    double coordinate(std::size_t flat, int axis) const {
        return spacing_[static_cast<std::size_t>(axis)] * axis_index(flat, axis);
    }
    bool is_boundary_node(std::size_t flat) const;

    bool same_grid(const Grid& other) const { return this == &other; }

private:
    Grid(DomainSpec domain, std::vector<int> nodes);

    DomainSpec domain_;
    std::vector<int> nodes_;
    std::vector<double> spacing_;
    std::vector<std::size_t> strides_;
    std::vector<std::vector<double>> axis_weights_;
    std::vector<double> weights_;
    std::size_t count_ = 0;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Nodal scalar function on a grid. Value semantics: copying copies values,
/// the grid itself stays shared.
class Field {
public:
    explicit Field(GridPtr grid, double fill = 0.0);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    bool all_finite() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

/// A pair (u, v) of fields on one shared grid.
struct Pair {
    Field u;
    Field v;

    Pair(Field u_, Field v_);
    const Grid& grid() const { return u.grid(); }
};

// In-place field arithmetic.
void fill(Field& f, double value);
void scale(Field& f, double a);
void axpy(Field& y, double a, const Field& x); // y += a*x
Field sum_scaled(const Field& x, double a, const Field& y, double b); // a*x + b*y
double max_abs(const Field& f);
double max_value(const Field& f);
double min_value(const Field& f);

/// Quadrature sum of f. Sequential in index order for reproducibility.
double integrate(const Field& f);
/// (integral of |f|^p)^(1/p), p >= 1.
double lp_norm(const Field& f, double p);
/// integral of u^2 v^2.
double overlap(const Field& u, const Field& v);
/// Weighted L2 inner product.
double l2_inner(const Field& f, const Field& g);

void require_same_grid(const Field& f, const Field& g);

} // namespace groundstate
