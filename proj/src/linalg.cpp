#include "aep/linalg.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "aep/error.hpp"

namespace aep {

namespace pauli {

Operator identity(std::size_t dim) { return Operator::Identity(dim, dim); }

Operator x() {
    Operator m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Operator y() {
    Operator m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Operator z() {
    Operator m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace pauli

StateVector basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionMismatch("basis index out of range");
    }
    StateVector v = StateVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

StateVector normalized(const StateVector& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw NumericalError("cannot normalize a zero or non-finite vector");
    }
    return v / n;
}

Operator tensor(const Operator& a, const Operator& b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    StateVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

namespace {

double scale_of(const Operator& a) { return std::max(1.0, a.cwiseAbs().maxCoeff()); }

}  // namespace

bool is_hermitian(const Operator& a, double tol) {
    if (a.rows() != a.cols() || a.size() == 0) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale_of(a);
}

bool is_unitary(const Operator& a, double tol) {
    if (a.rows() != a.cols() || a.size() == 0) return false;
    const Operator id = Operator::Identity(a.rows(), a.cols());
    return (a.adjoint() * a - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_projector(const Operator& a, double tol) {
    if (!is_hermitian(a, tol)) return false;
    return (a * a - a).cwiseAbs().maxCoeff() <= tol;
}

double spectral_norm_hermitian(const Operator& h) {
    Eigen::SelfAdjointEigenSolver<Operator> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

EigenDecomposition eig_hermitian(const Operator& h, double tol) {
    if (!is_hermitian(h, tol)) {
        throw NotHermitian();
    }
    // Symmetrize so roundoff in the input does not leak into the solver.
    const Operator sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Operator expm_skew(const Operator& k, double tol) {
    const auto [values, vectors] = eig_hermitian(k, tol);
    Eigen::VectorXcd phases(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        phases(i) = std::polar(1.0, values(i));
    }
    return vectors * phases.asDiagonal() * vectors.adjoint();
}

Operator logm_unitary(const Operator& u, double tol) {
    if (!is_unitary(u, tol)) {
        throw NotUnitary();
    }
    // For a normal matrix the Schur form is diagonal and the Schur vectors
    // are an orthonormal eigenbasis, also within degenerate eigenspaces.
    Eigen::ComplexSchur<Operator> schur(u);
    if (schur.info() != Eigen::Success) {
        throw NumericalError("Schur decomposition did not converge");
    }
    const Operator& q = schur.matrixU();
    const Eigen::VectorXcd diag = schur.matrixT().diagonal();
    RealVector angles(diag.size());
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const double phi = std::arg(diag(i));
        if (std::numbers::pi - std::abs(phi) < 1e-12) {
            throw BranchAmbiguity();
        }
        angles(i) = phi;
    }
    Operator g = q * angles.cast<Complex>().asDiagonal() * q.adjoint();
    return 0.5 * (g + g.adjoint());
}

Operator partial_trace(const Operator& rho, const BipartiteSplit& split, Subsystem keep) {
    const auto da = static_cast<Eigen::Index>(split.dim_a);
    const auto db = static_cast<Eigen::Index>(split.dim_b);
    if (rho.rows() != rho.cols() || rho.rows() != da * db) {
        throw DimensionMismatch("operator dimension does not match the bipartite split");
    }
    if (keep == Subsystem::A) {
        Operator out = Operator::Zero(da, da);
        for (Eigen::Index i = 0; i < da; ++i)
            for (Eigen::Index j = 0; j < da; ++j)
                for (Eigen::Index k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
        return out;
    }
    Operator out = Operator::Zero(db, db);
    for (Eigen::Index i = 0; i < db; ++i)
        for (Eigen::Index j = 0; j < db; ++j)
            for (Eigen::Index k = 0; k < da; ++k) out(i, j) += rho(k * db + i, k * db + j);
    return out;
}

StateVector fix_phase(const StateVector& v) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        // Strict comparison with a small margin keeps ties on the first index.
        if (std::abs(v(i)) > best_abs + 1e-12) {
            best_abs = std::abs(v(i));
            best = i;
        }
    }
    if (best_abs <= 0.0) return v;
    return v * std::polar(1.0, -std::arg(v(best)));
}

}  // namespace aep
