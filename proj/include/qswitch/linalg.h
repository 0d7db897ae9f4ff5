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

/**
 * @file
 * Dense complex linear algebra: matrices, state vectors, density operators,
 * tensor products and seeded Haar sampling.
 *
 * Tensor index convention: the leftmost factor is the most significant, so
 * for dimensions (d1, d2) the composite index is i1 * d2 + i2.
 */

#ifndef QSWITCH_LINALG_H
#define QSWITCH_LINALG_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qswitch {

using Complex = std::complex<double>;

/// Tolerance for comparisons of derived quantities.
inline constexpr double kDerivedTolerance = 1e-10;
/// Tolerance for direct invariant checks (normalisation, hermiticity).
inline constexpr double kInvariantTolerance = 1e-12;
/// Largest tensor-space dimension any operation will materialise by default.
inline constexpr std::size_t kDefaultSizeCap = 4096;

/// Input rejected because it violates a documented invariant.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A requested tensor space exceeds the configured size cap.
class SizeCapError : public std::length_error {
  public:
    SizeCapError(std::size_t required, std::size_t cap, const std::string &advice = "");
    std::size_t required() const { return required_; }
    std::size_t cap() const { return cap_; }

  private:
    std::size_t required_;
    std::size_t cap_;
};

/// base^exp, throwing SizeCapError when the result exceeds `cap`.
std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap,
                          const std::string &advice = "");

class ComplexMatrix {
  public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Complex &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return entries_; }

    bool operator==(const ComplexMatrix &other) const = default;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex s);

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);

/// Matrix product. Structural zeros of the sparser operand are skipped, so
/// products involving permutation matrices cost O(n^2).
ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix dagger(const ComplexMatrix &a);
/// Kronecker product; `a` is the most significant factor.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
Complex trace(const ComplexMatrix &a);

std::vector<Complex> matvec(const ComplexMatrix &a, std::span<const Complex> v);
/// <a|b>, conjugate-linear in the first argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
/// |v><v|
ComplexMatrix outer(std::span<const Complex> v);
std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b);

/// max |(U^dagger U - 1)_{ij}|
double unitarity_defect(const ComplexMatrix &m);

class UnitaryMatrix {
  public:
    /// Throws ValidationError unless ||U^dagger U - 1||_max <= 1e-10.
    explicit UnitaryMatrix(ComplexMatrix m);
    /// For products of already validated unitaries.
    static UnitaryMatrix unchecked(ComplexMatrix m);
    static UnitaryMatrix identity(std::size_t dim);

    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix &matrix() const { return m_; }

    UnitaryMatrix adjoint() const;

    bool operator==(const UnitaryMatrix &other) const = default;

  private:
    struct NoCheck {};
    UnitaryMatrix(ComplexMatrix m, NoCheck) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

UnitaryMatrix operator*(const UnitaryMatrix &a, const UnitaryMatrix &b);

class DensityMatrix;

class PureState {
  public:
    /// Throws ValidationError unless | ||psi|| - 1 | <= 1e-12.
    explicit PureState(std::vector<Complex> amplitudes);
    static PureState normalized(std::vector<Complex> amplitudes);
    static PureState basis(std::size_t dim, std::size_t k);

    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }

    DensityMatrix density() const;

    bool operator==(const PureState &other) const = default;

  private:
    struct NoCheck {};
    PureState(std::vector<Complex> a, NoCheck) : amps_(std::move(a)) {}
    friend PureState tensor(const PureState &, const PureState &);
    friend PureState apply(const UnitaryMatrix &, const PureState &);
    std::vector<Complex> amps_;
};

class DensityMatrix {
  public:
    /// Validates hermiticity and trace (1e-12) and the smallest eigenvalue
    /// (>= -1e-10). Throws ValidationError naming the violated invariant.
    explicit DensityMatrix(ComplexMatrix m);
    /// For results of validity-preserving operations on valid states.
    static DensityMatrix unchecked(ComplexMatrix m);
    static DensityMatrix from_pure(const PureState &psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix &matrix() const { return m_; }
    double purity() const;

    bool operator==(const DensityMatrix &other) const = default;

  private:
    struct NoCheck {};
    DensityMatrix(ComplexMatrix m, NoCheck) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

PureState tensor(const PureState &a, const PureState &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);
PureState apply(const UnitaryMatrix &u, const PureState &psi);
/// U rho U^dagger
DensityMatrix conjugate(const UnitaryMatrix &u, const DensityMatrix &rho);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Eigendecomposition of the Hermitian part of `h`.
HermitianEigen eigh(const ComplexMatrix &h);
Complex determinant(const ComplexMatrix &m);

/// i.i.d. standard complex Gaussians, normalised. Deterministic in (seed, dim).
PureState haar_random_state(uint64_t seed, std::size_t dim);
/// QR of a complex Ginibre matrix with the phases of diag(R) divided out.
UnitaryMatrix haar_random_unitary(uint64_t seed, std::size_t dim);
/// G G^dagger / Tr(G G^dagger) for a dim x rank Ginibre matrix G.
DensityMatrix random_density_matrix(uint64_t seed, std::size_t dim, std::size_t rank);

}  // namespace qswitch

#endif  // QSWITCH_LINALG_H
