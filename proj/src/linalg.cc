// Copyright 2026 The qswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qswitch/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "qswitch/rng.h"

namespace qswitch {

namespace {

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenMatrix to_eigen(const ComplexMatrix &m) {
    EigenMatrix e(m.rows(), m.cols());
    std::copy(m.entries().begin(), m.entries().end(), e.data());
    return e;
}

template <class Derived>
ComplexMatrix from_eigen(const Eigen::MatrixBase<Derived> &e) {
    ComplexMatrix m(e.rows(), e.cols());
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
        for (Eigen::Index c = 0; c < e.cols(); ++c) {
            m(r, c) = e(r, c);
        }
    }
    return m;
}

std::size_t count_nonzero(const ComplexMatrix &m) {
    return static_cast<std::size_t>(
        std::count_if(m.entries().begin(), m.entries().end(), [](Complex z) { return z != Complex{}; }));
}

// i-k-j product skipping zero entries of `a`.
ComplexMatrix matmul_skip_left(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix c(a.rows(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

void require_finite(std::span<const Complex> values, const char *what) {
    for (const Complex &z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ValidationError(fmt::format("{}: non-finite entry", what));
        }
    }
}

}  // namespace

SizeCapError::SizeCapError(std::size_t required, std::size_t cap, const std::string &advice)
    : std::length_error(fmt::format("tensor space of dimension {} exceeds the size cap {}{}{}", required, cap,
                                    advice.empty() ? "" : "; ", advice)),
      required_(required),
      cap_(cap) {}

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap, const std::string &advice) {
    std::size_t result = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base) {
            throw SizeCapError(std::numeric_limits<std::size_t>::max(), cap, advice);
        }
        result *= base;
    }
    if (result > cap) {
        throw SizeCapError(result, cap, advice);
    }
    return result;
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument(
            fmt::format("matrix {}x{} needs {} entries, got {}", rows, cols, rows * cols, entries_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> entries;
    entries.reserve(r * c);
    for (const auto &row : rows) {
        if (row.size() != c) {
            throw std::invalid_argument("ragged matrix rows");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix sum: shape mismatch");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix difference: shape mismatch");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
    for (auto &z : entries_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    return max_abs_diff(a.entries(), b.entries());
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("max_abs_diff: length mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument(
            fmt::format("matmul: dimension mismatch ({}x{} times {}x{})", a.rows(), a.cols(), b.rows(), b.cols()));
    }
    if (a.is_square() && b.is_square() && count_nonzero(b) < count_nonzero(a)) {
        // (AB) = (B^dagger A^dagger)^dagger puts the sparser factor on the left.
        return dagger(matmul_skip_left(dagger(b), dagger(a)));
    }
    return matmul_skip_left(a, b);
}

ComplexMatrix dagger(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            if (s == Complex{}) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

Complex trace(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw std::invalid_argument(fmt::format("trace of non-square {}x{} matrix", a.rows(), a.cols()));
    }
    Complex t{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        t += a(i, i);
    }
    return t;
}

std::vector<Complex> matvec(const ComplexMatrix &a, std::span<const Complex> v) {
    if (a.cols() != v.size()) {
        throw std::invalid_argument("matvec: dimension mismatch");
    }
    std::vector<Complex> out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const Complex x = a(r, c);
            if (x != Complex{}) {
                acc += x * v[c];
            }
        }
        out[r] = acc;
    }
    return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

ComplexMatrix outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t r = 0; r < v.size(); ++r) {
        for (std::size_t c = 0; c < v.size(); ++c) {
            m(r, c) = v[r] * std::conj(v[c]);
        }
    }
    return m;
}

std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const Complex &x : a) {
        for (const Complex &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

double unitarity_defect(const ComplexMatrix &m) {
    if (!m.is_square()) {
        return std::numeric_limits<double>::infinity();
    }
    return max_abs_diff(matmul(dagger(m), m), ComplexMatrix::identity(m.rows()));
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0) {
        throw ValidationError(fmt::format("unitary must be square and non-empty, got {}x{}", m_.rows(), m_.cols()));
    }
    require_finite(m_.entries(), "unitary");
    const double defect = unitarity_defect(m_);
    if (defect > kDerivedTolerance) {
        throw ValidationError(fmt::format("matrix is not unitary: ||U^dagger U - 1||_max = {:.3e} > {:.0e}", defect,
                                          kDerivedTolerance));
    }
}

UnitaryMatrix UnitaryMatrix::unchecked(ComplexMatrix m) { return UnitaryMatrix(std::move(m), NoCheck{}); }

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) { return unchecked(ComplexMatrix::identity(dim)); }

UnitaryMatrix UnitaryMatrix::adjoint() const { return unchecked(dagger(m_)); }

UnitaryMatrix operator*(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    return UnitaryMatrix::unchecked(matmul(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// States

PureState::PureState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        throw ValidationError("pure state must have dimension >= 1");
    }
    require_finite(amps_, "pure state");
    const double norm = std::sqrt(std::real(inner(amps_, amps_)));
    if (std::abs(norm - 1.0) > kInvariantTolerance) {
        throw ValidationError(
            fmt::format("pure state is not normalised: | ||psi|| - 1 | = {:.3e} > 1e-12", std::abs(norm - 1.0)));
    }
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
    if (amplitudes.empty()) {
        throw ValidationError("pure state must have dimension >= 1");
    }
    const double norm = std::sqrt(std::real(inner(amplitudes, amplitudes)));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ValidationError("cannot normalise a zero or non-finite vector");
    }
    for (auto &z : amplitudes) {
        z /= norm;
    }
    return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    std::vector<Complex> v(dim);
    v[k] = 1.0;
    return PureState(std::move(v), NoCheck{});
}

DensityMatrix PureState::density() const { return DensityMatrix::from_pure(*this); }

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0) {
        throw ValidationError(
            fmt::format("density matrix must be square and non-empty, got {}x{}", m_.rows(), m_.cols()));
    }
    require_finite(m_.entries(), "density matrix");
    const double herm = max_abs_diff(m_, dagger(m_));
    if (herm > kInvariantTolerance) {
        throw ValidationError(fmt::format("density matrix is not Hermitian: ||rho - rho^dagger||_max = {:.3e}", herm));
    }
    const double tr_err = std::abs(trace(m_) - Complex{1.0});
    if (tr_err > kInvariantTolerance) {
        throw ValidationError(fmt::format("density matrix trace is not 1: |Tr rho - 1| = {:.3e}", tr_err));
    }
    const double min_eig = eigh(m_).values.front();
    if (min_eig < -kDerivedTolerance) {
        throw ValidationError(
            fmt::format("density matrix is not positive semidefinite: smallest eigenvalue {:.3e}", min_eig));
    }
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) { return DensityMatrix(std::move(m), NoCheck{}); }

DensityMatrix DensityMatrix::from_pure(const PureState &psi) { return unchecked(outer(psi.amplitudes())); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return unchecked(Complex{1.0 / static_cast<double>(dim)} * ComplexMatrix::identity(dim));
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    double acc = 0.0;
    for (const Complex &z : m_.entries()) {
        acc += std::norm(z);
    }
    return acc;
}

PureState tensor(const PureState &a, const PureState &b) {
    return PureState(kron(a.amplitudes(), b.amplitudes()), PureState::NoCheck{});
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix::unchecked(tensor(a.matrix(), b.matrix()));
}

PureState apply(const UnitaryMatrix &u, const PureState &psi) {
    return PureState(matvec(u.matrix(), psi.amplitudes()), PureState::NoCheck{});
}

DensityMatrix conjugate(const UnitaryMatrix &u, const DensityMatrix &rho) {
    return DensityMatrix::unchecked(matmul(matmul(u.matrix(), rho.matrix()), dagger(u.matrix())));
}

// ---------------------------------------------------------------------------
// Eigen-backed routines

HermitianEigen eigh(const ComplexMatrix &h) {
    if (!h.is_square()) {
        throw std::invalid_argument("eigh: matrix must be square");
    }
    EigenMatrix e = to_eigen(h);
    const EigenMatrix herm = 0.5 * (e + e.adjoint());
    Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(herm);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigh: eigensolver did not converge");
    }
    HermitianEigen out{{}, from_eigen(solver.eigenvectors())};
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    return out;
}

Complex determinant(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("determinant of non-square matrix");
    }
    return to_eigen(m).partialPivLu().determinant();
}

// ---------------------------------------------------------------------------
// Random generation

namespace {

Complex complex_gaussian(Xoshiro256 &rng) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    return {re, im};
}

}  // namespace

PureState haar_random_state(uint64_t seed, std::size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("haar_random_state: dim must be >= 1");
    }
    Xoshiro256 rng(seed);
    std::vector<Complex> v(dim);
    for (auto &z : v) {
        z = complex_gaussian(rng);
    }
    return PureState::normalized(std::move(v));
}

UnitaryMatrix haar_random_unitary(uint64_t seed, std::size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("haar_random_unitary: dim must be >= 1");
    }
    Xoshiro256 rng(seed);
    EigenMatrix z(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            z(r, c) = complex_gaussian(rng);
        }
    }
    Eigen::HouseholderQR<EigenMatrix> qr(z);
    EigenMatrix q = qr.householderQ();
    const EigenMatrix &r = qr.matrixQR();
    for (std::size_t c = 0; c < dim; ++c) {
        const Complex rd = r(c, c);
        const double mag = std::abs(rd);
        const Complex phase = mag > 0.0 ? rd / mag : Complex{1.0};
        q.col(c) *= phase;
    }
    return UnitaryMatrix(from_eigen(q));
}

DensityMatrix random_density_matrix(uint64_t seed, std::size_t dim, std::size_t rank) {
    if (dim == 0 || rank == 0 || rank > dim) {
        throw std::invalid_argument("random_density_matrix: need 1 <= rank <= dim");
    }
    Xoshiro256 rng(seed);
    ComplexMatrix g(dim, rank);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < rank; ++c) {
            g(r, c) = complex_gaussian(rng);
        }
    }
    ComplexMatrix rho = matmul(g, dagger(g));
    rho = Complex{0.5} * (rho + dagger(rho));
    rho *= Complex{1.0 / std::real(trace(rho))};
    return DensityMatrix(std::move(rho));
}

}  // namespace qswitch
