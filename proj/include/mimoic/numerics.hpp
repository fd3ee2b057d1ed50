#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace mimoic {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct EigenPair {
    double value = 0.0;
    ComplexVector vector;
};

namespace numerics {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTieTol = 1e-10;
inline constexpr double kPhaseFloor = 1e-12;

bool all_finite(const ComplexMatrix& m);

// Throws NonFinite / NonHermitian / DimensionMismatch. The symmetry tolerance
// is kHermitianTol scaled by max(1, max|m_ij|).
void require_hermitian(const ComplexMatrix& m);

// Rotates v so that its first component with modulus > kPhaseFloor is real and
// non-negative.
ComplexVector canonical_phase(ComplexVector v);

// Eigenpairs sorted by descending eigenvalue. Within a tied cluster
// (|l_p - l_q| <= kTieTol * ||m||) the basis is canonicalized: the first
// vector is the member of the eigenspace with maximal |first component|, the
// rest follow from the next coordinate axes by Gram-Schmidt.
std::vector<EigenPair> hermitian_eig(const ComplexMatrix& m);

ComplexVector dominant_eigvec(const ComplexMatrix& m);
ComplexVector least_eigvec(const ComplexMatrix& m);

enum class Extremal { Largest, Smallest };

// Orthonormal canonical basis (columns) of the tied eigenspace at the top or
// bottom of the spectrum. One column when the extremal eigenvalue is simple.
ComplexMatrix extremal_eigenspace(const ComplexMatrix& m, Extremal which);

// Solves m x = b for Hermitian positive definite m via Cholesky.
ComplexVector solve_hpd(const ComplexMatrix& m, const ComplexVector& b);

// Hermitian part (m + m^H) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

// x x^H, exactly Hermitian.
ComplexMatrix outer(const ComplexVector& x);

} // namespace numerics
} // namespace mimoic
