#pragma once

// Discretized L2[0,1]: uniform midpoint grid, rectangle-rule quadrature,
// kernel operators and the symmetric eigenproblem of covariance kernels.

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <vector>

namespace farch {

/// Uniform midpoint grid t_i = (i - 0.5) / M on (0,1), quadrature weight 1/M.
class Grid {
public:
    explicit Grid(std::size_t m);

    [[nodiscard]] std::size_t size() const noexcept { return m_; }
    [[nodiscard]] double weight() const noexcept { return 1.0 / static_cast<double>(m_); }
    /// Zero-based: point(0) = 0.5 / M.
    [[nodiscard]] double point(std::size_t i) const noexcept {
        return (static_cast<double>(i) + 0.5) / static_cast<double>(m_);
    }
    [[nodiscard]] std::vector<double> points() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t m_;
};

/// A real function on [0,1] sampled at the grid points.
class GridFunction {
public:
    GridFunction(Grid grid, Eigen::VectorXd values);

    static GridFunction constant(const Grid& grid, double value);
    static GridFunction from(const Grid& grid, const std::function<double(double)>& f);

    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
    [[nodiscard]] const Eigen::VectorXd& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return grid_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

private:
    Grid grid_;
    Eigen::VectorXd values_;
};

/// A real function on [0,1]^2; entry (i,j) holds k(t_i, s_j), the first
/// index being the output variable t of the integral operator.
class GridKernel {
public:
    GridKernel(Grid grid, Eigen::MatrixXd values);

    static GridKernel constant(const Grid& grid, double value);
    static GridKernel from(const Grid& grid, const std::function<double(double, double)>& k);

    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
    [[nodiscard]] const Eigen::MatrixXd& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return grid_.size(); }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    /// Exact (bitwise) symmetry of the stored matrix.
    [[nodiscard]] bool is_symmetric() const;

private:
    Grid grid_;
    Eigen::MatrixXd values_;
};

/// Eigenpairs of a symmetric kernel operator, eigenvalues descending.
/// Eigenfunctions are orthonormal under `inner_product`; their signs are
/// arbitrary.
class EigenSystem {
public:
    /// Ratio to the leading eigenvalue below which an eigenvalue is
    /// reported as numerically zero.
    static constexpr double kNumericalZero = 1e-12;

    EigenSystem(Grid grid, Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenfunctions);

    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }
    [[nodiscard]] const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
    [[nodiscard]] double eigenvalue(std::size_t j) const { return eigenvalues_[static_cast<Eigen::Index>(j)]; }
    /// Column j holds the grid values of eigenfunction j.
    [[nodiscard]] const Eigen::MatrixXd& eigenfunctions() const noexcept { return eigenfunctions_; }
    [[nodiscard]] GridFunction eigenfunction(std::size_t j) const;
    [[nodiscard]] bool is_numerically_zero(std::size_t j) const;

    /// Copy with eigenfunction j multiplied by signs[j] (each +1 or -1).
    [[nodiscard]] EigenSystem with_signs(const std::vector<int>& signs) const;

private:
    Grid grid_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenfunctions_;
};

[[nodiscard]] double inner_product(const GridFunction& f, const GridFunction& g);
[[nodiscard]] double l2_norm(const GridFunction& f);
[[nodiscard]] double sup_norm(const GridFunction& f);

/// (k f)(t_i) = (1/M) sum_j k(t_i, s_j) f(s_j).
[[nodiscard]] GridFunction apply_kernel(const GridKernel& k, const GridFunction& f);
[[nodiscard]] double hs_norm(const GridKernel& k);

/// Kernel with entry (i,j) = f(t_i) g(s_j).
[[nodiscard]] GridKernel tensor(const GridFunction& f, const GridFunction& g);

/// Eigendecomposition of the operator x -> apply_kernel(k, x). Requires
/// exact symmetry; use `symmetrized` first for kernels that carry rounding
/// asymmetry.
[[nodiscard]] EigenSystem eigh(const GridKernel& k);

[[nodiscard]] GridKernel symmetrized(const GridKernel& k);

// Pointwise helpers.
[[nodiscard]] GridFunction squared(const GridFunction& f);
[[nodiscard]] GridFunction operator+(const GridFunction& a, const GridFunction& b);
[[nodiscard]] GridFunction operator-(const GridFunction& a, const GridFunction& b);
[[nodiscard]] GridFunction operator*(double c, const GridFunction& f);
[[nodiscard]] GridKernel operator+(const GridKernel& a, const GridKernel& b);
[[nodiscard]] GridKernel operator-(const GridKernel& a, const GridKernel& b);
[[nodiscard]] GridKernel operator*(double c, const GridKernel& k);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace farch
