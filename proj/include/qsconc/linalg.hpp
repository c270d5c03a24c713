#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qsc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kEigenClamp = 1e-10;

/// Local dimensions of a bipartite operator; dA * dB is the side length it annotates.
struct DimPair {
    int dA = 0;
    int dB = 0;

    int total() const { return dA * dB; }
    int min() const { return dA < dB ? dA : dB; }
};

enum class Keep { A, B };

/// Largest entrywise |M - M^dagger|.
double hermiticity_defect(const ComplexMatrix& m);

/// Real eigenvalues of a Hermitian matrix, sorted descending.
/// The input is symmetrized as (M + M^dagger)/2 first; values with |x| < 1e-10 become 0.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Eigen-decomposition of a Hermitian matrix with eigenvalues descending and
/// eigenvectors in matching columns. No clamping is applied.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

std::vector<double> singular_values(const ComplexMatrix& m);

double trace_norm(const ComplexMatrix& m);

/// (sum_i lambda_i^q)^(1/q) over the eigenvalues of a PSD matrix, q >= 1.
double schatten_q_norm(const ComplexMatrix& m, double q);

/// Sum of lambda_i^q over a spectrum with the convention 0^q = 0.
double power_trace(const std::vector<double>& spectrum, double q);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& rho, DimPair dims, Keep keep);

/// rho_{ij,kl} |ij><kl|  ->  rho_{ij,kl} |kj><il|
ComplexMatrix partial_transpose(const ComplexMatrix& rho, DimPair dims);

/// rho_{ij,kl} |ij><kl|  ->  rho_{ij,kl} |ik><jl|, shape dA^2 x dB^2.
ComplexMatrix realign(const ComplexMatrix& rho, DimPair dims);

} // namespace qsc
