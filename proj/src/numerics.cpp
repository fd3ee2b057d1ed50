#include "mimoic/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "mimoic/errors.hpp"

namespace mimoic::numerics {

namespace {

void require_square(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionMismatch("matrix must be square and non-empty");
}

// Canonical orthonormal basis for span(basis): project successive coordinate
// axes onto the span and orthogonalize against previously accepted vectors.
ComplexMatrix canonical_basis(const ComplexMatrix& basis) {
    const Eigen::Index n = basis.rows();
    const Eigen::Index k = basis.cols();
    if (k == 1) {
        ComplexMatrix out(n, 1);
        out.col(0) = canonical_phase(basis.col(0));
        return out;
    }
    ComplexMatrix out(n, k);
    Eigen::Index filled = 0;
    for (Eigen::Index axis = 0; axis < n && filled < k; ++axis) {
        // basis * basis^H * e_axis
        ComplexVector cand = basis * basis.row(axis).adjoint();
        for (Eigen::Index q = 0; q < filled; ++q)
            cand -= out.col(q) * out.col(q).dot(cand);
        // second pass for numerical orthogonality
        for (Eigen::Index q = 0; q < filled; ++q)
            cand -= out.col(q) * out.col(q).dot(cand);
        const double norm = cand.norm();
        if (norm <= 1e-8)
            continue;
        out.col(filled++) = canonical_phase(cand / norm);
    }
    // Unreachable for an orthonormal input basis, kept for robustness.
    for (; filled < k; ++filled)
        out.col(filled) = canonical_phase(basis.col(filled));
    return out;
}

double spectral_scale(const RealVector& values) {
    return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
}

} // namespace

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag()))
                return false;
    return true;
}

void require_hermitian(const ComplexMatrix& m) {
    require_square(m);
    if (!all_finite(m))
        throw NonFinite("matrix has non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double tol = kHermitianTol * scale;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = r; c < m.cols(); ++c)
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol)
                throw NonHermitian("matrix is not Hermitian");
}

ComplexVector canonical_phase(ComplexVector v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mod = std::abs(v(i));
        if (mod > kPhaseFloor) {
            v *= std::conj(v(i)) / mod;
            v(i) = Complex(std::abs(v(i)), 0.0);
            break;
        }
    }
    return v;
}

std::vector<EigenPair> hermitian_eig(const ComplexMatrix& m) {
    require_hermitian(m);
    const Eigen::Index n = m.rows();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
    if (solver.info() != Eigen::Success)
        throw NumericsError("Hermitian eigensolver did not converge");

    // Eigen returns ascending order; flip to descending.
    const RealVector asc = solver.eigenvalues();
    const ComplexMatrix& vecs = solver.eigenvectors();
    RealVector values(n);
    ComplexMatrix vectors(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
        values(p) = asc(n - 1 - p);
        vectors.col(p) = vecs.col(n - 1 - p);
    }

    const double tie = kTieTol * spectral_scale(values);
    std::vector<EigenPair> pairs;
    pairs.reserve(static_cast<std::size_t>(n));
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && values(end - 1) - values(end) <= tie)
            ++end;
        const ComplexMatrix block = canonical_basis(vectors.middleCols(start, end - start));
        for (Eigen::Index q = 0; q < end - start; ++q)
            pairs.push_back({values(start + q), block.col(q)});
        start = end;
    }
    return pairs;
}

ComplexMatrix extremal_eigenspace(const ComplexMatrix& m, Extremal which) {
    const auto pairs = hermitian_eig(m);
    const double tie = kTieTol * std::max(std::abs(pairs.front().value), std::abs(pairs.back().value));
    std::vector<const EigenPair*> members;
    if (which == Extremal::Largest) {
        members.push_back(&pairs.front());
        for (std::size_t p = 1; p < pairs.size() && pairs[p - 1].value - pairs[p].value <= tie; ++p)
            members.push_back(&pairs[p]);
    } else {
        members.push_back(&pairs.back());
        for (std::size_t p = pairs.size() - 1; p > 0 && pairs[p - 1].value - pairs[p].value <= tie; --p)
            members.push_back(&pairs[p - 1]);
        std::reverse(members.begin(), members.end());
    }
    ComplexMatrix basis(m.rows(), static_cast<Eigen::Index>(members.size()));
    for (std::size_t q = 0; q < members.size(); ++q)
        basis.col(static_cast<Eigen::Index>(q)) = members[q]->vector;
    return canonical_basis(basis);
}

ComplexVector dominant_eigvec(const ComplexMatrix& m) {
    return extremal_eigenspace(m, Extremal::Largest).col(0);
}

ComplexVector least_eigvec(const ComplexMatrix& m) {
    return extremal_eigenspace(m, Extremal::Smallest).col(0);
}

ComplexVector solve_hpd(const ComplexMatrix& m, const ComplexVector& b) {
    require_square(m);
    if (b.size() != m.rows())
        throw DimensionMismatch("right-hand side length does not match matrix");
    if (!all_finite(m) || !all_finite(b))
        throw NonFinite("non-finite input to solve_hpd");
    Eigen::LLT<ComplexMatrix> llt(hermitian_part(m));
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("Cholesky pivot is not positive");
    return llt.solve(b);
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    return (m + m.adjoint()) * 0.5;
}

ComplexMatrix outer(const ComplexVector& x) {
    ComplexMatrix out(x.size(), x.size());
    for (Eigen::Index c = 0; c < x.size(); ++c) {
        out(c, c) = Complex(std::norm(x(c)), 0.0);
        for (Eigen::Index r = c + 1; r < x.size(); ++r) {
            out(r, c) = x(r) * std::conj(x(c));
            out(c, r) = std::conj(out(r, c));
        }
    }
    return out;
}

} // namespace mimoic::numerics
