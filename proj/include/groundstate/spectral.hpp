#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "groundstate/domain.hpp"

namespace groundstate {

/// One tensor eigenmode of the discrete -Laplacian: per-axis mode numbers
/// and the eigenvalue (sum of the per-axis stencil symbols).
struct Mode {
    double eigenvalue;
    std::array<int, max_dimension> index; // unused axes stay 0
};

/// Separable transform between nodal values and eigenmode coefficients.
///
/// Per axis the modes are the discrete cosine family (Neumann, ghost
/// reflection) or the discrete sine family (Dirichlet, zero extension),
/// orthonormal under the trapezoid inner product. Applying forward then
/// inverse is the identity on the admissible space (all fields for
/// Neumann, boundary-vanishing fields for Dirichlet).
class SpectralTransform {
public:
    explicit SpectralTransform(GridPtr grid);

    const Grid& grid() const { return *grid_; }

    /// Coefficients c_k = <f, phi_k> laid out on the grid's index space.
    std::vector<double> forward(const Field& f) const;
    Field inverse(const std::vector<double>& coeffs) const;

    /// Eigenvalue of the mode sitting at a flat coefficient index.
    double eigenvalue_at(std::size_t flat) const;
    /// Axis stencil symbol for 1D mode k: (2/h^2)(1 - cos(k pi h / L)).
    double axis_eigenvalue(int axis, int k) const;
    /// Number of admissible modes on an axis (n for Neumann, n-2 for Dirichlet).
    int axis_mode_count(int axis) const;
    /// Slot on the coefficient grid that holds axis mode k.
    int axis_slot(int axis, int k) const;

    /// Exact solve of (-Laplacian + shift) g = f by diagonal division.
    Field solve_shifted(const Field& f, double shift) const;

    /// Materialize the orthonormal eigenfield of a tensor mode.
    Field eigenfield(const Mode& mode) const;

private:
    struct Axis {
        int n = 0;
        int modes = 0;
        int slot0 = 0;                 // first admissible slot (1 for Dirichlet)
        std::vector<double> eigenvalue; // per slot
        std::vector<double> fwd;        // modes x n, fwd[k*n+j] = w_j phi_k(x_j)
        std::vector<double> inv;        // n x modes, inv[j*modes+k] = phi_k(x_j)
    };

    void apply_axis(std::vector<double>& data, int axis, bool forward_dir) const;

    GridPtr grid_;
    std::vector<Axis> axes_;
};

/// Sorted tensor eigenpairs of the discrete -Laplacian with multiplicity.
class SpectralBasis {
public:
    SpectralBasis(GridPtr grid, int count);

    const Grid& grid() const { return *grid_; }
    Boundary boundary() const { return grid_->boundary(); }
    int count() const { return static_cast<int>(modes_.size()); }
    std::size_t capacity() const { return capacity_; }

    double eigenvalue(int i) const { return modes_[static_cast<std::size_t>(i)].eigenvalue; }
    const Mode& mode(int i) const { return modes_[static_cast<std::size_t>(i)]; }
    Field eigenfield(int i) const { return transform_->eigenfield(mode(i)); }

    const SpectralTransform& transform() const { return *transform_; }
    std::shared_ptr<const SpectralTransform> transform_ptr() const { return transform_; }

private:
    GridPtr grid_;
    std::shared_ptr<const SpectralTransform> transform_;
    std::vector<Mode> modes_;
    std::size_t capacity_ = 0;
};

SpectralBasis eigenbasis(GridPtr grid, int count);

/// Sign split of the quadratic form B(phi,phi,lambda) = mu_k + lambda over
/// the spectrum: K- (negative), K0 (resonant within tol_zero), K+ (rest).
class SubspaceSplit {
public:
    SubspaceSplit(const SpectralBasis& basis, double lambda);

    double lambda() const { return lambda_; }
    double tol_zero() const { return tol_zero_; }
    const std::vector<int>& k_minus() const { return k_minus_; }
    const std::vector<int>& k_zero() const { return k_zero_; }
    int dim_tilde() const { return static_cast<int>(tilde_fields_.size()); }
    bool resonant() const { return !k_zero_.empty(); }

    /// Orthonormal eigenfields spanning H~ = H- + H0.
    const std::vector<Field>& tilde_fields() const { return tilde_fields_; }
    /// 1 for K0 members (index into tilde_fields), else 0.
    const std::vector<char>& tilde_is_zero_mode() const { return tilde_zero_; }
    double tilde_eigenvalue(int i) const { return tilde_eigenvalues_[static_cast<std::size_t>(i)]; }

    Field project_tilde(const Field& f) const;
    Field project_plus(const Field& f) const;

private:
    double lambda_;
    double tol_zero_;
    std::vector<int> k_minus_;
    std::vector<int> k_zero_;
    std::vector<Field> tilde_fields_;
    std::vector<double> tilde_eigenvalues_;
    std::vector<char> tilde_zero_;
};

SubspaceSplit split(const SpectralBasis& basis, double lambda);

/// Sobolev-gradient preconditioner: exact spectral solve of
/// (-Laplacian + shift) g = f. Builds a transform on the fly; solvers cache
/// a SpectralTransform and call solve_shifted directly.
Field precondition(const Field& f, double shift);

} // namespace groundstate
