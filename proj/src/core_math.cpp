#include "gpebo/core_math.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

namespace gpebo {

namespace {

void require_square(const Matrix& a, const char* who) {
    if (a.rows() != a.cols()) {
        throw DimensionError(std::string(who) + ": matrix is not square");
    }
    if (a.rows() > kMaxDim) {
        throw DimensionError(std::string(who) + ": matrix exceeds supported size");
    }
}

// Below this pivot ratio the LU route (det·A⁻¹) loses too much accuracy.
constexpr double kLuPivotRatio = 1e-6;

} // namespace

double determinant(const Matrix& a) {
    require_square(a, "determinant");
    if (a.rows() == 0) {
        return 1.0;
    }
    return Eigen::PartialPivLU<Matrix>(a).determinant();
}

Matrix adjugate(const Matrix& a) {
    require_square(a, "adjugate");
    const Eigen::Index n = a.rows();
    if (n == 0) {
        return Matrix(0, 0);
    }
    if (n == 1) {
        return Matrix::Ones(1, 1);
    }

    const Eigen::PartialPivLU<Matrix> lu(a);
    const auto diag = lu.matrixLU().diagonal().cwiseAbs();
    const double pmax = diag.maxCoeff();
    if (pmax > 0.0 && diag.minCoeff() > kLuPivotRatio * pmax) {
        return lu.determinant() * lu.inverse();
    }

    // A = U Σ Vᵀ  ⇒  adj(A) = det(U) det(V) · V adj(Σ) Uᵀ, adj(Σ)_ii = Π_{j≠i} σ_j.
    const Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector& s = svd.singularValues();
    Vector cof(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double p = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) {
                p *= s(j);
            }
        }
        cof(i) = p;
    }
    const double sign = Eigen::PartialPivLU<Matrix>(svd.matrixU()).determinant() *
                        Eigen::PartialPivLU<Matrix>(svd.matrixV()).determinant();
    return (sign > 0.0 ? 1.0 : -1.0) * (svd.matrixV() * cof.asDiagonal() * svd.matrixU().transpose());
}

int numerical_rank(const Matrix& a, double tol) {
    if (a.size() == 0) {
        return 0;
    }
    const Eigen::JacobiSVD<Matrix> svd(a);
    const Vector& s = svd.singularValues();
    const double smax = s(0);
    if (smax == 0.0) {
        return 0;
    }
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > tol * smax) {
            ++r;
        }
    }
    return r;
}

} // namespace gpebo
