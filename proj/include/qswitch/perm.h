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
 * Exact symmetric-group arithmetic and the permutation families used by the
 * switch protocols.
 *
 * Elements are stored 0-based; every text form uses 1-based labels.
 * Composition is apply-right-first: compose(p, q)(x) = p(q(x)). Under this
 * convention the tensor-factor representation is a homomorphism,
 * perm_to_unitary(p o q) = perm_to_unitary(p) * perm_to_unitary(q), so a
 * product of permutations reads exactly like the matching operator product.
 */

#ifndef QSWITCH_PERM_H
#define QSWITCH_PERM_H

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qswitch/linalg.h"

namespace qswitch {

enum class Parity { kEven, kOdd };

std::string_view to_string(Parity p);

/// Disjoint cycles with 1-based labels, fixed points omitted. Canonical form
/// rotates each cycle to start at its minimum and sorts cycles by minimum.
using CycleNotation = std::vector<std::vector<int>>;

class Permutation {
  public:
    /// `images[i]` is the image of i (0-based). Throws unless a bijection.
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n);
    /// One-line notation with 1-based images, e.g. {3, 1, 2}.
    static Permutation from_one_line(const std::vector<int> &one_based);
    /// Cycles use 1-based labels; a cycle (a b c) maps a -> b -> c -> a.
    static Permutation from_cycles(int n, const CycleNotation &cycles);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i]; }
    const std::vector<int> &images() const { return images_; }
    bool is_identity() const;

    bool operator==(const Permutation &other) const = default;

  private:
    std::vector<int> images_;
};

Permutation compose(const Permutation &p, const Permutation &q);
Permutation inverse(const Permutation &p);
Parity parity(const Permutation &p);
Permutation power(const Permutation &p, int k);
CycleNotation cycles(const Permutation &p);
/// Number of cycles including fixed points.
int cycle_count(const Permutation &p);

/// "[3,1,2]"
std::string to_one_line_string(const Permutation &p);
/// "(1 3 2)", "()" for the identity.
std::string to_cycle_string(const Permutation &p);
Permutation parse_one_line(std::string_view text);
/// Parses "(1 3 2)(4 5)". `n` = 0 infers the size from the largest label.
Permutation parse_cycles(std::string_view text, int n = 0);

/// Left-shift n-cycle C_n: 1 -> n, k -> k-1. Its representation moves every
/// tensor factor one slot to the left.
Permutation cycle_shift(int n);
/// (1 2)(3 4)...
Permutation swap_layer_a(int n);
/// (2 3)(4 5)...
Permutation swap_layer_b(int n);

/// Labels a_j = P_n^{-1}(j), 1-based, for odd n >= 3 (n = 2k + 1). Generated
/// in blocks of four (s + 1, k + 1 - s, k + s + 2, 2k + 1 - s) for s = 0, 1,
/// ... and truncated once n labels exist.
std::vector<int> preprocess_labels(int n);
/// The preprocessing permutation P_n with P_n(a_j) = j.
Permutation preprocess_perm(int n);

/// Alternative odd-order pair with m = (n + 1) / 2:
///   A = (m m+1 ... n),  B = (1 m n)(2 n-1)(3 n-2)...(m-1 m+1).
std::pair<Permutation, Permutation> alt_family(int n);

/// A^{-1} B^{-1} A B, the permutation behind D(A, B) = A^dagger B^dagger A B.
Permutation commutator_dab(const Permutation &a, const Permutation &b);

/// Unique Q with Q(0) = 0 and Q^{-1} t Q = cycle_shift(n). Throws unless `t`
/// is an n-cycle.
Permutation conjugator_to_cycle_shift(const Permutation &t);

/// P^{-1} (A B A B) P == C_n for the swap-layer family and P = preprocess_perm(n).
bool verify_conjugacy(int n);

/// A B A^{-1} B^{-1} == (1 2 ... n) for the given pair. The increasing cycle
/// is inverse(cycle_shift(n)); this is the orientation that reproduces the
/// explicit n = 3 SWAP computation of the alternative family.
bool commutator_matches_cycle(const Permutation &a, const Permutation &b);
/// commutator_matches_cycle on alt_family(n).
bool verify_commutator_identity(int n);

/// Ordered slot pairs (i, j), 1-based, standing for <psi_{a_i}|psi_{a_j}>.
class PairSet {
  public:
    PairSet(std::vector<std::pair<int, int>> slot_pairs, std::vector<int> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    /// Sorted by first slot.
    const std::vector<std::pair<int, int>> &slot_pairs() const { return pairs_; }
    const std::vector<int> &labels() const { return labels_; }
    /// (a_i, a_j) for every slot pair.
    std::vector<std::pair<int, int>> label_pairs() const;
    bool contains(int i, int j) const;

    bool operator==(const PairSet &other) const = default;

  private:
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> labels_;
};

/// {(i, t^{-1}(i))} carrying `labels`. The product of <psi_{a_i}|psi_{a_j}>
/// over the set equals Tr(T (psi_{a_1} x ... x psi_{a_n})).
PairSet pairs_from_permutation(const Permutation &t, const std::vector<int> &labels);

/// Pair set of the swap-layer family at odd n: t = A B A B, labels from
/// preprocess_labels(n).
PairSet main_family_pairs(int n);

/// I_n -> I_{n+2} for the swap-layer family, odd n >= 5:
///   keep every pair, (n-2, n-1) -> (n-2, n+2), (n, n-3) -> (n, n+1),
///   add (n+1, n-3) and (n+2, n-1).
PairSet extend_pair_set(const PairSet &in);

/// Basis map of the tensor-factor representation on d^n multi-indices:
/// U |x> = |map[x]>, with output digit p(i) equal to input digit i.
std::vector<std::size_t> factor_index_map(const Permutation &p, std::size_t local_dim,
                                          std::size_t cap = kDefaultSizeCap);

/// Dense d^n x d^n representation: U (psi_1 x ... x psi_n) =
/// psi_{p^{-1}(1)} x ... x psi_{p^{-1}(n)}.
UnitaryMatrix perm_to_unitary(const Permutation &p, std::size_t local_dim, std::size_t cap = kDefaultSizeCap);

/// Exact determinant (+1 or -1) of perm_to_unitary(p, d), from the sign of
/// the induced permutation of multi-indices.
int unitary_determinant_sign(const Permutation &p, std::size_t local_dim, std::size_t cap = 1u << 24);

}  // namespace qswitch

#endif  // QSWITCH_PERM_H
