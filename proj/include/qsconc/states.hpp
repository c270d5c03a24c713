#pragma once

#include "qsconc/linalg.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace qsc {

inline constexpr double kNormTol = 1e-9;

/// Normalized amplitude vector over subsystems with local dimensions dims[0..n-1].
/// Basis order is row-major: subsystem 0 is the most significant digit.
struct PureState {
    std::vector<int> dims;
    ComplexVector amplitudes;

    /// Validates dims (each >= 2), length and normalization.
    static PureState make(std::vector<int> dims, ComplexVector amplitudes);

    int parties() const { return static_cast<int>(dims.size()); }
    int dimension() const { return static_cast<int>(amplitudes.size()); }
    ComplexMatrix projector() const { return amplitudes * amplitudes.adjoint(); }
};

/// Trace-one Hermitian PSD operator carrying its subsystem dimensions.
struct DensityMatrix {
    std::vector<int> dims;
    ComplexMatrix matrix;

    /// Validates side length, Hermiticity (1e-9), eigenvalues >= -1e-9 and unit trace.
    static DensityMatrix make(std::vector<int> dims, ComplexMatrix matrix);
    static DensityMatrix from_pure(const PureState& psi);

    int dimension() const { return static_cast<int>(matrix.rows()); }
    /// The state as A|B with A = subsystem 0 and B = everything else.
    DimPair bipartite() const;
};

struct SchmidtSpectrum {
    std::vector<double> values; // nonincreasing, sums to 1

    /// Number of strictly positive coefficients.
    int rank() const;
};

/// Amplitudes of the three-qubit generalized Schmidt form
///   l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>,  sum l_i^2 = 1.
struct GenSchmidt3 {
    std::array<double, 5> lambda{};
    double phi = 0.0;
};

/// Indices of the subsystems on side A of a bipartition.
using Cut = std::vector<int>;

/// Product of local dimensions.
int total_dimension(const std::vector<int>& dims);

/// Coefficient matrix of psi with rows indexed by the subsystems in sideA (in
/// ascending order) and columns by the remaining ones.
ComplexMatrix coefficient_matrix(const PureState& psi, const Cut& sideA);

/// Reduced density operator on the listed subsystems (any nonempty subset).
ComplexMatrix reduced_state(const PureState& psi, const Cut& keep);

SchmidtSpectrum schmidt(const PureState& psi, const Cut& sideA);
/// Subsystem 0 versus the rest.
SchmidtSpectrum schmidt(const PureState& psi);

PureState max_entangled(int d);
PureState basis_state(const std::vector<int>& dims, const std::vector<int>& digits);
PureState ghz_state(int n);
PureState w_state(int n);

DensityMatrix isotropic(double fidelity, int d);
DensityMatrix werner(double w, int d);
PureState gen_schmidt3(const GenSchmidt3& params);

/// Pure state drawn from the unitarily invariant measure; deterministic per seed.
PureState haar_random_pure(const std::vector<int>& dims, std::uint64_t seed);
/// sum_i p_i |psi_i><psi_i| with Haar psi_i and Dirichlet(1,...,1) weights.
DensityMatrix random_mixed(const std::vector<int>& dims, int rank, std::uint64_t seed);
/// Haar unitary via QR of a complex Ginibre matrix with the R-diagonal phases removed.
ComplexMatrix haar_random_unitary(int d, std::uint64_t seed);

/// <Psi+| rho |Psi+> for a d x d bipartite operator.
double max_entangled_fidelity(const ComplexMatrix& rho, int d);
/// tr(rho * sum_{i<k} |Phi-_ik><Phi-_ik|), the antisymmetric weight.
double antisymmetric_weight(const ComplexMatrix& rho, int d);

} // namespace qsc
