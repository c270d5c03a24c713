#include "qsconc/linalg.hpp"

#include "qsconc/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace qsc {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::NonSquare, std::string(who) + " needs a square matrix, got " +
                                              std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
    }
}

void require_side(const ComplexMatrix& rho, DimPair dims, const char* who) {
    if (dims.dA < 1 || dims.dB < 1 || rho.rows() != rho.cols() || rho.rows() != dims.total()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(who) + ": matrix side " + std::to_string(rho.rows()) +
                        " does not match dims " + std::to_string(dims.dA) + "x" +
                        std::to_string(dims.dB));
    }
}

} // namespace

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    require_square(m, "hermitian_eigen");
    if (m.size() == 0) return {};
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTol) {
        throw Error(ErrorKind::NonHermitian,
                    "max |M - M^dagger| = " + std::to_string(defect) + " exceeds 1e-9");
    }
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NonFinite, "eigensolver did not converge");
    }
    // Eigen returns ascending order.
    const Eigen::Index n = sym.rows();
    HermitianEigen out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    std::vector<double> values = hermitian_eigen(m).values;
    for (double& v : values) {
        if (std::abs(v) < kEigenClamp) v = 0.0;
    }
    return values;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    if (m.size() == 0) return {};
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    const auto& sv = svd.singularValues();
    std::vector<double> out(sv.data(), sv.data() + sv.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double trace_norm(const ComplexMatrix& m) {
    const auto sv = singular_values(m);
    return std::accumulate(sv.begin(), sv.end(), 0.0);
}

double power_trace(const std::vector<double>& spectrum, double q) {
    double total = 0.0;
    for (double lambda : spectrum) {
        if (lambda > 0.0) total += std::pow(lambda, q);
    }
    return total;
}

double schatten_q_norm(const ComplexMatrix& m, double q) {
    if (!(q >= 1.0)) {
        throw Error(ErrorKind::RangeError, "Schatten norm needs q >= 1, got " + std::to_string(q));
    }
    const auto values = hermitian_eigenvalues(m);
    for (double v : values) {
        if (v < -kHermitianTol) {
            throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(v) + " < -1e-9");
        }
    }
    return std::pow(power_trace(values, q), 1.0 / q);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, DimPair dims, Keep keep) {
    require_side(rho, dims, "partial_trace");
    const int dA = dims.dA;
    const int dB = dims.dB;
    if (keep == Keep::A) {
        ComplexMatrix out = ComplexMatrix::Zero(dA, dA);
        for (int i = 0; i < dA; ++i)
            for (int k = 0; k < dA; ++k)
                for (int j = 0; j < dB; ++j) out(i, k) += rho(i * dB + j, k * dB + j);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dB, dB);
    for (int j = 0; j < dB; ++j)
        for (int l = 0; l < dB; ++l)
            for (int i = 0; i < dA; ++i) out(j, l) += rho(i * dB + j, i * dB + l);
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, DimPair dims) {
    require_side(rho, dims, "partial_transpose");
    const int dA = dims.dA;
    const int dB = dims.dB;
    ComplexMatrix out(rho.rows(), rho.cols());
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dA; ++k)
                for (int l = 0; l < dB; ++l)
                    out(k * dB + j, i * dB + l) = rho(i * dB + j, k * dB + l);
    return out;
}

ComplexMatrix realign(const ComplexMatrix& rho, DimPair dims) {
    require_side(rho, dims, "realign");
    const int dA = dims.dA;
    const int dB = dims.dB;
    ComplexMatrix out(dA * dA, dB * dB);
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dA; ++k)
                for (int l = 0; l < dB; ++l)
                    out(i * dA + k, j * dB + l) = rho(i * dB + j, k * dB + l);
    return out;
}

} // namespace qsc
