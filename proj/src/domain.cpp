#include "groundstate/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace groundstate {

DomainSpec::DomainSpec(std::vector<double> side_lengths, Boundary boundary)
    : sides_(std::move(side_lengths)), boundary_(boundary) {
    if (sides_.empty() || sides_.size() > max_dimension)
        throw precondition_error("domain dimension must be between 1 and 4");
    volume_ = 1.0;
    for (double s : sides_) {
        if (!(s > 0.0) || !std::isfinite(s))
            throw precondition_error("side lengths must be positive and finite");
        volume_ *= s;
    }
}

Grid::Grid(DomainSpec domain, std::vector<int> nodes)
    : domain_(std::move(domain)), nodes_(std::move(nodes)) {
    const auto dim = static_cast<std::size_t>(domain_.dimension());
    spacing_.resize(dim);
    strides_.resize(dim);
    axis_weights_.resize(dim);
    count_ = 1;
    for (std::size_t a = 0; a < dim; ++a) {
        const int n = nodes_[a];
        const double L = domain_.side_length(static_cast<int>(a));
        const double h = L / (n - 1);
        spacing_[a] = h;
        auto& w = axis_weights_[a];
        w.assign(static_cast<std::size_t>(n), h);
        w.front() = 0.5 * h;
        w.back() = 0.5 * h;
        count_ *= static_cast<std::size_t>(n);
    }
    std::size_t s = 1;
    for (std::size_t a = dim; a-- > 0;) {
        strides_[a] = s;
        s *= static_cast<std::size_t>(nodes_[a]);
    }
    weights_.resize(count_);
    for (std::size_t i = 0; i < count_; ++i) {
        double w = 1.0;
        for (std::size_t a = 0; a < dim; ++a) {
            const auto j = (i / strides_[a]) % static_cast<std::size_t>(nodes_[a]);
            w *= axis_weights_[a][j];
        }
        weights_[i] = w;
    }
}

std::shared_ptr<const Grid> Grid::create(DomainSpec domain, std::vector<int> nodes_per_axis,
                                         const GridLimits& limits) {
    if (nodes_per_axis.size() != static_cast<std::size_t>(domain.dimension()))
        throw invalid_resolution_error("nodes_per_axis must list one count per axis");
    std::size_t count = 1;
    for (int n : nodes_per_axis) {
        if (n < 3)
            throw invalid_resolution_error("each axis needs at least 3 nodes");
        count *= static_cast<std::size_t>(n);
    }
    if (domain.dimension() == 4 && count > limits.max_nodes_4d)
        throw invalid_resolution_error("4D grid exceeds the configured node cap");
    return std::shared_ptr<const Grid>(new Grid(std::move(domain), std::move(nodes_per_axis)));
}

double Grid::max_spacing() const {
    return *std::max_element(spacing_.begin(), spacing_.end());
}

bool Grid::is_boundary_node(std::size_t flat) const {
    for (int a = 0; a < dimension(); ++a) {
        const int j = axis_index(flat, a);
        if (j == 0 || j == nodes_[static_cast<std::size_t>(a)] - 1) return true;
    }
    return false;
}

Field::Field(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->node_count(), fill) {}

bool Field::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

Pair::Pair(Field u_, Field v_) : u(std::move(u_)), v(std::move(v_)) {
    if (!u.grid().same_grid(v.grid()))
        throw grid_mismatch_error("pair components must share one grid");
}

void fill(Field& f, double value) {
    std::fill(f.values().begin(), f.values().end(), value);
}

void scale(Field& f, double a) {
    for (double& v : f.values()) v *= a;
}

void axpy(Field& y, double a, const Field& x) {
    require_same_grid(y, x);
    auto yv = y.values();
    auto xv = x.values();
    for (std::size_t i = 0; i < yv.size(); ++i) yv[i] += a * xv[i];
}

Field sum_scaled(const Field& x, double a, const Field& y, double b) {
    require_same_grid(x, y);
    Field out(x.grid_ptr());
    auto ov = out.values();
    auto xv = x.values();
    auto yv = y.values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = a * xv[i] + b * yv[i];
    return out;
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double max_value(const Field& f) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : f.values()) m = std::max(m, v);
    return m;
}

double min_value(const Field& f) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : f.values()) m = std::min(m, v);
    return m;
}

void require_same_grid(const Field& f, const Field& g) {
    if (!f.grid().same_grid(g.grid()))
        throw grid_mismatch_error("fields live on different grids");
}

double integrate(const Field& f) {
    auto w = f.grid().quad_weights();
    auto v = f.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += w[i] * v[i];
    return acc;
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw precondition_error("lp_norm requires p >= 1");
    auto w = f.grid().quad_weights();
    auto v = f.values();
    double acc = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < v.size(); ++i) acc += w[i] * v[i] * v[i];
    } else if (p == 4.0) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double s = v[i] * v[i];
            acc += w[i] * s * s;
        }
    } else {
        for (std::size_t i = 0; i < v.size(); ++i) acc += w[i] * std::pow(std::abs(v[i]), p);
    }
    return std::pow(acc, 1.0 / p);
}

double overlap(const Field& u, const Field& v) {
    require_same_grid(u, v);
    auto w = u.grid().quad_weights();
    auto a = u.values();
    auto b = v.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * ((a[i] * a[i]) * (b[i] * b[i]));
    return acc;
}

double l2_inner(const Field& f, const Field& g) {
    require_same_grid(f, g);
    auto w = f.grid().quad_weights();
    auto a = f.values();
    auto b = g.values();
    double acc = 0.0;
    // Group the commutative factor first so l2_inner(f,g) == l2_inner(g,f) bitwise.
    for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * (a[i] * b[i]);
    return acc;
}

} // namespace groundstate
