#include "qsconc/states.hpp"

#include "qsconc/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>

namespace qsc {

namespace {

void require_dims(const std::vector<int>& dims) {
    if (dims.empty()) throw Error(ErrorKind::DimensionMismatch, "empty dimension list");
    for (int d : dims) {
        if (d < 2) {
            throw Error(ErrorKind::DimensionMismatch,
                        "subsystem dimension " + std::to_string(d) + " < 2");
        }
    }
}

/// Validated, sorted copy of a bipartition side; `allow_all` admits the full set.
Cut normalized_cut(const Cut& side, int parties, bool allow_all) {
    Cut cut = side;
    std::sort(cut.begin(), cut.end());
    if (cut.empty()) throw Error(ErrorKind::NotBipartite, "empty side A");
    if (std::adjacent_find(cut.begin(), cut.end()) != cut.end()) {
        throw Error(ErrorKind::NotBipartite, "repeated subsystem index");
    }
    if (cut.front() < 0 || cut.back() >= parties) {
        throw Error(ErrorKind::NotBipartite, "subsystem index out of range");
    }
    if (!allow_all && static_cast<int>(cut.size()) == parties) {
        throw Error(ErrorKind::NotBipartite, "side B is empty");
    }
    return cut;
}

ComplexMatrix regroup(const PureState& psi, const Cut& sideA) {
    const int n = psi.parties();
    std::vector<bool> in_a(static_cast<std::size_t>(n), false);
    for (int k : sideA) in_a[static_cast<std::size_t>(k)] = true;

    int rows = 1;
    int cols = 1;
    for (int k = 0; k < n; ++k) (in_a[static_cast<std::size_t>(k)] ? rows : cols) *= psi.dims[static_cast<std::size_t>(k)];

    ComplexMatrix m(rows, cols);
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (int index = 0; index < psi.dimension(); ++index) {
        int rest = index;
        for (int k = n - 1; k >= 0; --k) {
            const int d = psi.dims[static_cast<std::size_t>(k)];
            digits[static_cast<std::size_t>(k)] = rest % d;
            rest /= d;
        }
        int r = 0;
        int c = 0;
        for (int k = 0; k < n; ++k) {
            const int d = psi.dims[static_cast<std::size_t>(k)];
            const int s = digits[static_cast<std::size_t>(k)];
            if (in_a[static_cast<std::size_t>(k)]) r = r * d + s;
            else c = c * d + s;
        }
        m(r, c) = psi.amplitudes(index);
    }
    return m;
}

ComplexVector normal_vector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

} // namespace

int total_dimension(const std::vector<int>& dims) {
    return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

PureState PureState::make(std::vector<int> dims, ComplexVector amplitudes) {
    require_dims(dims);
    if (amplitudes.size() != total_dimension(dims)) {
        throw Error(ErrorKind::DimensionMismatch,
                    "amplitude count " + std::to_string(amplitudes.size()) +
                        " != product of dims " + std::to_string(total_dimension(dims)));
    }
    const double norm2 = amplitudes.squaredNorm();
    if (!std::isfinite(norm2)) throw Error(ErrorKind::NonFinite, "non-finite amplitude");
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw Error(ErrorKind::NotNormalized,
                    "sum |alpha|^2 = " + std::to_string(norm2) + ", expected 1 within 1e-9");
    }
    return PureState{std::move(dims), std::move(amplitudes)};
}

DensityMatrix DensityMatrix::make(std::vector<int> dims, ComplexMatrix matrix) {
    require_dims(dims);
    const int n = total_dimension(dims);
    if (matrix.rows() != matrix.cols()) {
        throw Error(ErrorKind::NonSquare, "density matrix must be square");
    }
    if (matrix.rows() != n) {
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix side " + std::to_string(matrix.rows()) + " != product of dims " +
                        std::to_string(n));
    }
    if (!matrix.allFinite()) throw Error(ErrorKind::NonFinite, "non-finite matrix entry");
    const auto values = hermitian_eigenvalues(matrix); // throws NonHermitian
    if (values.back() < -kNormTol) {
        throw Error(ErrorKind::NotPSD,
                    "minimum eigenvalue " + std::to_string(values.back()) + " < -1e-9");
    }
    const double tr = matrix.trace().real();
    if (std::abs(tr - 1.0) > kNormTol) {
        throw Error(ErrorKind::NotNormalized, "trace " + std::to_string(tr) + " != 1 within 1e-9");
    }
    return DensityMatrix{std::move(dims), std::move(matrix)};
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix{psi.dims, psi.projector()};
}

DimPair DensityMatrix::bipartite() const {
    const int dA = dims.front();
    return DimPair{dA, dimension() / dA};
}

int SchmidtSpectrum::rank() const {
    return static_cast<int>(std::count_if(values.begin(), values.end(), [](double v) { return v > 0.0; }));
}

ComplexMatrix coefficient_matrix(const PureState& psi, const Cut& sideA) {
    return regroup(psi, normalized_cut(sideA, psi.parties(), false));
}

ComplexMatrix reduced_state(const PureState& psi, const Cut& keep) {
    const ComplexMatrix m = regroup(psi, normalized_cut(keep, psi.parties(), true));
    return m * m.adjoint();
}

SchmidtSpectrum schmidt(const PureState& psi, const Cut& sideA) {
    if (psi.parties() < 2) throw Error(ErrorKind::NotBipartite, "state has a single subsystem");
    const auto sv = singular_values(coefficient_matrix(psi, sideA));
    SchmidtSpectrum out;
    out.values.reserve(sv.size());
    for (double sigma : sv) {
        const double lambda = sigma * sigma;
        out.values.push_back(lambda < kEigenClamp ? 0.0 : lambda);
    }
    return out;
}

SchmidtSpectrum schmidt(const PureState& psi) {
    return schmidt(psi, Cut{0});
}

PureState max_entangled(int d) {
    if (d < 2) throw Error(ErrorKind::RangeError, "max_entangled needs d >= 2");
    ComplexVector v = ComplexVector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) v(i * d + i) = amp;
    return PureState{{d, d}, std::move(v)};
}

PureState basis_state(const std::vector<int>& dims, const std::vector<int>& digits) {
    require_dims(dims);
    if (digits.size() != dims.size()) {
        throw Error(ErrorKind::DimensionMismatch, "digit count must equal subsystem count");
    }
    int index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= dims[k]) {
            throw Error(ErrorKind::IndexOutOfRange, "basis digit out of range");
        }
        index = index * dims[k] + digits[k];
    }
    ComplexVector v = ComplexVector::Zero(total_dimension(dims));
    v(index) = 1.0;
    return PureState{dims, std::move(v)};
}

PureState ghz_state(int n) {
    if (n < 2) throw Error(ErrorKind::RangeError, "GHZ needs at least two qubits");
    const int dim = 1 << n;
    ComplexVector v = ComplexVector::Zero(dim);
    v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
    return PureState{std::vector<int>(static_cast<std::size_t>(n), 2), std::move(v)};
}

PureState w_state(int n) {
    if (n < 2) throw Error(ErrorKind::RangeError, "W state needs at least two qubits");
    ComplexVector v = ComplexVector::Zero(1 << n);
    for (int k = 0; k < n; ++k) v(1 << k) = 1.0 / std::sqrt(static_cast<double>(n));
    return PureState{std::vector<int>(static_cast<std::size_t>(n), 2), std::move(v)};
}

DensityMatrix isotropic(double fidelity, int d) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw Error(ErrorKind::RangeError, "fidelity must lie in [0,1]");
    }
    if (d < 2) throw Error(ErrorKind::RangeError, "isotropic state needs d >= 2");
    const int n = d * d;
    const ComplexMatrix proj = max_entangled(d).projector();
    const double noise = (1.0 - fidelity) / static_cast<double>(n - 1);
    ComplexMatrix rho = noise * (ComplexMatrix::Identity(n, n) - proj) + fidelity * proj;
    return DensityMatrix{{d, d}, std::move(rho)};
}

DensityMatrix werner(double w, int d) {
    if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorKind::RangeError, "w must lie in [0,1]");
    if (d < 2) throw Error(ErrorKind::RangeError, "Werner state needs d >= 2");
    const int n = d * d;
    const double sym = 2.0 * (1.0 - w) / (d * (d + 1.0));
    const double anti = 2.0 * w / (d * (d - 1.0));
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < d; ++i) rho(i * d + i, i * d + i) += sym;
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int k = i + 1; k < d; ++k) {
            ComplexVector plus = ComplexVector::Zero(n);
            ComplexVector minus = ComplexVector::Zero(n);
            plus(i * d + k) = r;
            plus(k * d + i) = r;
            minus(i * d + k) = r;
            minus(k * d + i) = -r;
            rho += sym * plus * plus.adjoint() + anti * minus * minus.adjoint();
        }
    }
    return DensityMatrix{{d, d}, std::move(rho)};
}

PureState gen_schmidt3(const GenSchmidt3& params) {
    double norm2 = 0.0;
    for (double l : params.lambda) {
        if (l < 0.0) throw Error(ErrorKind::RangeError, "generalized Schmidt amplitudes must be >= 0");
        norm2 += l * l;
    }
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw Error(ErrorKind::NotNormalized,
                    "sum lambda_i^2 = " + std::to_string(norm2) + ", expected 1 within 1e-9");
    }
    const auto& l = params.lambda;
    ComplexVector v = ComplexVector::Zero(8);
    v(0b000) = l[0];
    v(0b100) = l[1] * std::polar(1.0, params.phi);
    v(0b101) = l[2];
    v(0b110) = l[3];
    v(0b111) = l[4];
    return PureState{{2, 2, 2}, std::move(v)};
}

PureState haar_random_pure(const std::vector<int>& dims, std::uint64_t seed) {
    require_dims(dims);
    std::mt19937_64 rng(seed);
    ComplexVector v = normal_vector(rng, total_dimension(dims));
    v.normalize();
    return PureState{dims, std::move(v)};
}

DensityMatrix random_mixed(const std::vector<int>& dims, int rank, std::uint64_t seed) {
    require_dims(dims);
    const int n = total_dimension(dims);
    if (rank < 1 || rank > n) {
        throw Error(ErrorKind::RangeError, "rank must lie in [1, " + std::to_string(n) + "]");
    }
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> weights(static_cast<std::size_t>(rank));
    for (double& w : weights) w = expo(rng);
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);

    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < rank; ++i) {
        ComplexVector v = normal_vector(rng, n);
        v.normalize();
        rho += (weights[static_cast<std::size_t>(i)] / total) * v * v.adjoint();
    }
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    return DensityMatrix{dims, std::move(rho)};
}

ComplexMatrix haar_random_unitary(int d, std::uint64_t seed) {
    if (d < 1) throw Error(ErrorKind::RangeError, "unitary dimension must be >= 1");
    std::mt19937_64 rng(seed);
    ComplexMatrix g(d, d);
    for (int c = 0; c < d; ++c) g.col(c) = normal_vector(rng, d);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < d; ++c) {
        const Complex diag = r(c, c);
        const double mag = std::abs(diag);
        if (mag > 0.0) q.col(c) *= diag / mag;
    }
    return q;
}

double max_entangled_fidelity(const ComplexMatrix& rho, int d) {
    const ComplexVector psi = max_entangled(d).amplitudes;
    if (rho.rows() != psi.size() || rho.cols() != psi.size()) {
        throw Error(ErrorKind::DimensionMismatch, "operator side must be d^2");
    }
    return (psi.adjoint() * rho * psi)(0, 0).real();
}

double antisymmetric_weight(const ComplexMatrix& rho, int d) {
    if (rho.rows() != d * d || rho.cols() != d * d) {
        throw Error(ErrorKind::DimensionMismatch, "operator side must be d^2");
    }
    double total = 0.0;
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int k = i + 1; k < d; ++k) {
            ComplexVector minus = ComplexVector::Zero(d * d);
            minus(i * d + k) = r;
            minus(k * d + i) = -r;
            total += (minus.adjoint() * rho * minus)(0, 0).real();
        }
    }
    return total;
}

} // namespace qsc
