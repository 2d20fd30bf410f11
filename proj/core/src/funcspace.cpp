#include "farch/funcspace.hpp"

#include "farch/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace farch {

Grid::Grid(std::size_t m) : m_(m) {
    if (m < 2) {
        throw InvalidInput("grid needs at least 2 points, got " + std::to_string(m));
    }
}

std::vector<double> Grid::points() const {
    std::vector<double> out(m_);
    for (std::size_t i = 0; i < m_; ++i) out[i] = point(i);
    return out;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b)) {
        throw GridMismatch(std::string(where) + ": grid sizes " + std::to_string(a.size()) + " and " +
                           std::to_string(b.size()) + " differ");
    }
}

GridFunction::GridFunction(Grid grid, Eigen::VectorXd values) : grid_(grid), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.size()) != grid_.size()) {
        throw GridMismatch("function has " + std::to_string(values_.size()) + " values on a grid of " +
                           std::to_string(grid_.size()));
    }
    if (!values_.allFinite()) throw NumericalFailure("function values must be finite");
}

GridFunction GridFunction::constant(const Grid& grid, double value) {
    return GridFunction(grid, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(grid.size()), value));
}

GridFunction GridFunction::from(const Grid& grid, const std::function<double(double)>& f) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) v[static_cast<Eigen::Index>(i)] = f(grid.point(i));
    return GridFunction(grid, std::move(v));
}

GridKernel::GridKernel(Grid grid, Eigen::MatrixXd values) : grid_(grid), values_(std::move(values)) {
    const auto m = static_cast<Eigen::Index>(grid_.size());
    if (values_.rows() != m || values_.cols() != m) {
        throw GridMismatch("kernel is " + std::to_string(values_.rows()) + "x" + std::to_string(values_.cols()) +
                           " on a grid of " + std::to_string(m));
    }
    if (!values_.allFinite()) throw NumericalFailure("kernel values must be finite");
}

GridKernel GridKernel::constant(const Grid& grid, double value) {
    const auto m = static_cast<Eigen::Index>(grid.size());
    return GridKernel(grid, Eigen::MatrixXd::Constant(m, m, value));
}

GridKernel GridKernel::from(const Grid& grid, const std::function<double(double, double)>& k) {
    const auto m = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd v(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            v(i, j) = k(grid.point(static_cast<std::size_t>(i)), grid.point(static_cast<std::size_t>(j)));
        }
    }
    return GridKernel(grid, std::move(v));
}

bool GridKernel::is_symmetric() const {
    const auto m = values_.rows();
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i + 1; j < m; ++j) {
            if (values_(i, j) != values_(j, i)) return false;
        }
    }
    return true;
}

EigenSystem::EigenSystem(Grid grid, Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenfunctions)
    : grid_(grid), eigenvalues_(std::move(eigenvalues)), eigenfunctions_(std::move(eigenfunctions)) {
    if (static_cast<std::size_t>(eigenfunctions_.rows()) != grid_.size() ||
        eigenfunctions_.cols() != eigenvalues_.size()) {
        throw GridMismatch("eigen system dimensions do not match the grid");
    }
    for (Eigen::Index j = 1; j < eigenvalues_.size(); ++j) {
        if (eigenvalues_[j] > eigenvalues_[j - 1]) throw InvalidInput("eigenvalues must be non-increasing");
    }
}

GridFunction EigenSystem::eigenfunction(std::size_t j) const {
    return GridFunction(grid_, eigenfunctions_.col(static_cast<Eigen::Index>(j)));
}

bool EigenSystem::is_numerically_zero(std::size_t j) const {
    const double lead = eigenvalues_.size() > 0 ? eigenvalues_[0] : 0.0;
    if (lead <= 0.0) return true;
    return std::abs(eigenvalue(j)) <= kNumericalZero * lead;
}

EigenSystem EigenSystem::with_signs(const std::vector<int>& signs) const {
    if (signs.size() != size()) throw InvalidInput("one sign per eigenfunction required");
    Eigen::MatrixXd flipped = eigenfunctions_;
    for (std::size_t j = 0; j < signs.size(); ++j) {
        if (signs[j] == -1) {
            flipped.col(static_cast<Eigen::Index>(j)) = -flipped.col(static_cast<Eigen::Index>(j));
        } else if (signs[j] != 1) {
            throw InvalidInput("signs must be +1 or -1");
        }
    }
    return EigenSystem(grid_, eigenvalues_, std::move(flipped));
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f.grid(), g.grid(), "inner_product");
    return f.values().dot(g.values()) * f.grid().weight();
}

double l2_norm(const GridFunction& f) { return std::sqrt(inner_product(f, f)); }

double sup_norm(const GridFunction& f) { return f.values().cwiseAbs().maxCoeff(); }

GridFunction apply_kernel(const GridKernel& k, const GridFunction& f) {
    require_same_grid(k.grid(), f.grid(), "apply_kernel");
    return GridFunction(f.grid(), (k.values() * f.values()) * f.grid().weight());
}

double hs_norm(const GridKernel& k) { return std::sqrt(k.values().squaredNorm()) * k.grid().weight(); }

GridKernel tensor(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f.grid(), g.grid(), "tensor");
    return GridKernel(f.grid(), f.values() * g.values().transpose());
}

EigenSystem eigh(const GridKernel& k) {
    if (!k.is_symmetric()) throw NotSymmetric("eigh requires a symmetric kernel");
    const double w = k.grid().weight();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k.values() * w);
    if (solver.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver did not converge");

    // Eigen returns ascending order; flip to descending and rescale vectors so
    // that (1/M) sum e_i e_j = delta_ij.
    const Eigen::Index m = k.values().rows();
    Eigen::VectorXd values = solver.eigenvalues().reverse();
    Eigen::MatrixXd functions = solver.eigenvectors().rowwise().reverse() * std::sqrt(static_cast<double>(m));
    return EigenSystem(k.grid(), std::move(values), std::move(functions));
}

GridKernel symmetrized(const GridKernel& k) {
    const Eigen::MatrixXd& v = k.values();
    Eigen::MatrixXd out = v;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < v.cols(); ++j) {
            const double avg = 0.5 * (v(i, j) + v(j, i));
            out(i, j) = avg;
            out(j, i) = avg;
        }
    }
    return GridKernel(k.grid(), std::move(out));
}

GridFunction squared(const GridFunction& f) { return GridFunction(f.grid(), f.values().array().square().matrix()); }

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a.grid(), b.grid(), "operator+");
    return GridFunction(a.grid(), a.values() + b.values());
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a.grid(), b.grid(), "operator-");
    return GridFunction(a.grid(), a.values() - b.values());
}

GridFunction operator*(double c, const GridFunction& f) { return GridFunction(f.grid(), c * f.values()); }

GridKernel operator+(const GridKernel& a, const GridKernel& b) {
    require_same_grid(a.grid(), b.grid(), "operator+");
    return GridKernel(a.grid(), a.values() + b.values());
}

GridKernel operator-(const GridKernel& a, const GridKernel& b) {
    require_same_grid(a.grid(), b.grid(), "operator-");
    return GridKernel(a.grid(), a.values() - b.values());
}

GridKernel operator*(double c, const GridKernel& k) { return GridKernel(k.grid(), c * k.values()); }

}  // namespace farch
