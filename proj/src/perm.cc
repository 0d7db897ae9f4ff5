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

#include "qswitch/perm.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

#include <fmt/format.h>

namespace qswitch {

std::string_view to_string(Parity p) { return p == Parity::kEven ? "even" : "odd"; }

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    if (n == 0) {
        throw std::invalid_argument("permutation must act on at least one element");
    }
    std::vector<bool> seen(n, false);
    for (int x : images_) {
        if (x < 0 || x >= n || seen[x]) {
            throw std::invalid_argument("permutation images are not a bijection");
        }
        seen[x] = true;
    }
}

Permutation Permutation::identity(int n) {
    if (n < 1) {
        throw std::invalid_argument("permutation size must be >= 1");
    }
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) {
        img[i] = i;
    }
    return Permutation(std::move(img));
}

Permutation Permutation::from_one_line(const std::vector<int> &one_based) {
    std::vector<int> img(one_based.size());
    std::transform(one_based.begin(), one_based.end(), img.begin(), [](int x) { return x - 1; });
    return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(int n, const CycleNotation &cycle_list) {
    std::vector<int> img = identity(n).images();
    std::vector<bool> used(n, false);
    for (const auto &cyc : cycle_list) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const int from = cyc[i] - 1;
            const int to = cyc[(i + 1) % cyc.size()] - 1;
            if (from < 0 || from >= n || to < 0 || to >= n) {
                throw std::invalid_argument(fmt::format("cycle label out of range 1..{}", n));
            }
            if (used[from]) {
                throw std::invalid_argument(fmt::format("label {} appears in more than one cycle position", from + 1));
            }
            used[from] = true;
            img[from] = to;
        }
    }
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i) {
        if (images_[i] != i) {
            return false;
        }
    }
    return true;
}

Permutation compose(const Permutation &p, const Permutation &q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument(fmt::format("compose: size mismatch ({} vs {})", p.size(), q.size()));
    }
    std::vector<int> img(p.size());
    for (int x = 0; x < p.size(); ++x) {
        img[x] = p(q(x));
    }
    return Permutation(std::move(img));
}

Permutation inverse(const Permutation &p) {
    std::vector<int> img(p.size());
    for (int x = 0; x < p.size(); ++x) {
        img[p(x)] = x;
    }
    return Permutation(std::move(img));
}

int cycle_count(const Permutation &p) {
    std::vector<bool> seen(p.size(), false);
    int count = 0;
    for (int i = 0; i < p.size(); ++i) {
        if (seen[i]) {
            continue;
        }
        ++count;
        for (int j = i; !seen[j]; j = p(j)) {
            seen[j] = true;
        }
    }
    return count;
}

Parity parity(const Permutation &p) { return (p.size() - cycle_count(p)) % 2 == 0 ? Parity::kEven : Parity::kOdd; }

Permutation power(const Permutation &p, int k) {
    Permutation base = k < 0 ? inverse(p) : p;
    Permutation out = Permutation::identity(p.size());
    for (int i = 0; i < std::abs(k); ++i) {
        out = compose(base, out);
    }
    return out;
}

CycleNotation cycles(const Permutation &p) {
    CycleNotation out;
    std::vector<bool> seen(p.size(), false);
    for (int i = 0; i < p.size(); ++i) {
        if (seen[i] || p(i) == i) {
            seen[i] = true;
            continue;
        }
        std::vector<int> cyc;
        for (int j = i; !seen[j]; j = p(j)) {
            seen[j] = true;
            cyc.push_back(j + 1);
        }
        out.push_back(std::move(cyc));
    }
    // Scanning i upwards already starts every cycle at its minimum.
    return out;
}

std::string to_one_line_string(const Permutation &p) {
    std::string out = "[";
    for (int i = 0; i < p.size(); ++i) {
        out += fmt::format("{}{}", i == 0 ? "" : ",", p(i) + 1);
    }
    return out + "]";
}

std::string to_cycle_string(const Permutation &p) {
    const CycleNotation cs = cycles(p);
    if (cs.empty()) {
        return "()";
    }
    std::string out;
    for (const auto &c : cs) {
        out += "(";
        for (std::size_t i = 0; i < c.size(); ++i) {
            out += fmt::format("{}{}", i == 0 ? "" : " ", c[i]);
        }
        out += ")";
    }
    return out;
}

namespace {

std::vector<int> parse_ints(std::string_view text, std::string_view separators) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (separators.find(text[i]) != std::string_view::npos || std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        int value = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec != std::errc{}) {
            throw std::invalid_argument(fmt::format("unexpected character '{}' at offset {}", text[i], i));
        }
        out.push_back(value);
        i = static_cast<std::size_t>(ptr - text.data());
    }
    return out;
}

}  // namespace

Permutation parse_one_line(std::string_view text) {
    const auto open = text.find('[');
    const auto close = text.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        throw std::invalid_argument(fmt::format("one-line notation must look like [3,1,2], got '{}'", text));
    }
    return Permutation::from_one_line(parse_ints(text.substr(open + 1, close - open - 1), ","));
}

Permutation parse_cycles(std::string_view text, int n) {
    CycleNotation cs;
    int max_label = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != '(') {
            throw std::invalid_argument(fmt::format("expected '(' at offset {} in '{}'", i, text));
        }
        const auto close = text.find(')', i);
        if (close == std::string_view::npos) {
            throw std::invalid_argument(fmt::format("unterminated cycle in '{}'", text));
        }
        std::vector<int> cyc = parse_ints(text.substr(i + 1, close - i - 1), ",");
        for (int x : cyc) {
            max_label = std::max(max_label, x);
        }
        if (!cyc.empty()) {
            cs.push_back(std::move(cyc));
        }
        i = close + 1;
    }
    const int size = n > 0 ? n : std::max(max_label, 1);
    return Permutation::from_cycles(size, cs);
}

// ---------------------------------------------------------------------------
// Families

Permutation cycle_shift(int n) {
    std::vector<int> img(n);
    for (int k = 0; k < n; ++k) {
        img[k] = (k + n - 1) % n;
    }
    return Permutation(std::move(img));
}

namespace {

Permutation adjacent_swaps(int n, int first) {
    std::vector<int> img = Permutation::identity(n).images();
    for (int i = first; i + 1 < n; i += 2) {
        std::swap(img[i], img[i + 1]);
    }
    return Permutation(std::move(img));
}

void require_odd_order(int n, const char *what) {
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument(fmt::format("{}: order must be odd and >= 3, got {}", what, n));
    }
}

}  // namespace

Permutation swap_layer_a(int n) { return adjacent_swaps(n, 0); }
Permutation swap_layer_b(int n) { return adjacent_swaps(n, 1); }

std::vector<int> preprocess_labels(int n) {
    require_odd_order(n, "preprocess_labels");
    const int k = (n - 1) / 2;
    std::vector<int> labels;
    labels.reserve(n);
    for (int s = 0; static_cast<int>(labels.size()) < n; ++s) {
        for (int value : {s + 1, k + 1 - s, k + s + 2, 2 * k + 1 - s}) {
            if (static_cast<int>(labels.size()) < n) {
                labels.push_back(value);
            }
        }
    }
    return labels;
}

Permutation preprocess_perm(int n) {
    const std::vector<int> labels = preprocess_labels(n);
    // a_j = P^{-1}(j), so P(a_j) = j.
    std::vector<int> img(n, -1);
    for (int j = 0; j < n; ++j) {
        img[labels[j] - 1] = j;
    }
    return Permutation(std::move(img));
}

std::pair<Permutation, Permutation> alt_family(int n) {
    require_odd_order(n, "alt_family");
    const int m = (n + 1) / 2;
    std::vector<int> a_cycle;
    for (int x = m; x <= n; ++x) {
        a_cycle.push_back(x);
    }
    CycleNotation b_cycles{{1, m, n}};
    for (int i = 2; i < m; ++i) {
        b_cycles.push_back({i, n + 1 - i});
    }
    return {Permutation::from_cycles(n, {a_cycle}), Permutation::from_cycles(n, b_cycles)};
}

Permutation commutator_dab(const Permutation &a, const Permutation &b) {
    return compose(inverse(a), compose(inverse(b), compose(a, b)));
}

Permutation conjugator_to_cycle_shift(const Permutation &t) {
    const int n = t.size();
    if (cycle_count(t) != 1) {
        throw std::invalid_argument(fmt::format("{} is not an {}-cycle", to_cycle_string(t), n));
    }
    // Q C Q^{-1} = t with Q(0) = 0 forces Q(C^k(0)) = t^k(0).
    const Permutation c = cycle_shift(n);
    std::vector<int> img(n);
    int x = 0;
    int y = 0;
    for (int step = 0; step < n; ++step) {
        img[x] = y;
        x = c(x);
        y = t(y);
    }
    return Permutation(std::move(img));
}

bool verify_conjugacy(int n) {
    require_odd_order(n, "verify_conjugacy");
    const Permutation a = swap_layer_a(n);
    const Permutation b = swap_layer_b(n);
    const Permutation p = preprocess_perm(n);
    const Permutation t = compose(a, compose(b, compose(a, b)));
    return compose(inverse(p), compose(t, p)) == cycle_shift(n);
}

bool commutator_matches_cycle(const Permutation &a, const Permutation &b) {
    const Permutation k = compose(a, compose(b, compose(inverse(a), inverse(b))));
    return k == inverse(cycle_shift(a.size()));
}

bool verify_commutator_identity(int n) {
    const auto [a, b] = alt_family(n);
    return commutator_matches_cycle(a, b);
}

// ---------------------------------------------------------------------------
// Pair sets

PairSet::PairSet(std::vector<std::pair<int, int>> slot_pairs, std::vector<int> labels)
    : pairs_(std::move(slot_pairs)), labels_(std::move(labels)) {
    const int n = static_cast<int>(labels_.size());
    if (static_cast<int>(pairs_.size()) != n) {
        throw std::invalid_argument(fmt::format("pair set needs exactly {} pairs, got {}", n, pairs_.size()));
    }
    std::sort(pairs_.begin(), pairs_.end());
    for (int i = 0; i < n; ++i) {
        const auto [first, second] = pairs_[i];
        if (first != i + 1 || second < 1 || second > n) {
            throw std::invalid_argument("pair set first components must be a permutation of 1..n");
        }
    }
}

std::vector<std::pair<int, int>> PairSet::label_pairs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(pairs_.size());
    for (const auto &[i, j] : pairs_) {
        out.emplace_back(labels_[i - 1], labels_[j - 1]);
    }
    return out;
}

bool PairSet::contains(int i, int j) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(i, j));
}

PairSet pairs_from_permutation(const Permutation &t, const std::vector<int> &labels) {
    if (static_cast<int>(labels.size()) != t.size()) {
        throw std::invalid_argument("pairs_from_permutation: labels length must equal permutation size");
    }
    const Permutation t_inv = inverse(t);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < t.size(); ++i) {
        pairs.emplace_back(i + 1, t_inv(i) + 1);
    }
    return PairSet(std::move(pairs), labels);
}

PairSet main_family_pairs(int n) {
    const Permutation a = swap_layer_a(n);
    const Permutation b = swap_layer_b(n);
    return pairs_from_permutation(compose(a, compose(b, compose(a, b))), preprocess_labels(n));
}

PairSet extend_pair_set(const PairSet &in) {
    const int n = in.size();
    if (n < 5 || n % 2 == 0) {
        throw std::invalid_argument(fmt::format("extend_pair_set needs an odd order >= 5, got {}", n));
    }
    if (!in.contains(n - 2, n - 1) || !in.contains(n, n - 3)) {
        throw std::invalid_argument(
            fmt::format("pair set lacks ({},{}) or ({},{}); not a swap-layer family set", n - 2, n - 1, n, n - 3));
    }
    std::vector<std::pair<int, int>> out;
    out.reserve(n + 2);
    for (const auto &pr : in.slot_pairs()) {
        if (pr == std::make_pair(n - 2, n - 1)) {
            out.emplace_back(n - 2, n + 2);
        } else if (pr == std::make_pair(n, n - 3)) {
            out.emplace_back(n, n + 1);
        } else {
            out.push_back(pr);
        }
    }
    out.emplace_back(n + 1, n - 3);
    out.emplace_back(n + 2, n - 1);
    return PairSet(std::move(out), preprocess_labels(n + 2));
}

// ---------------------------------------------------------------------------
// Tensor-factor representation

std::vector<std::size_t> factor_index_map(const Permutation &p, std::size_t local_dim, std::size_t cap) {
    if (local_dim == 0) {
        throw std::invalid_argument("local dimension must be >= 1");
    }
    const int n = p.size();
    const std::size_t total = checked_power(local_dim, n, cap);
    // weight[i] is the place value of slot i (slot 0 most significant).
    std::vector<std::size_t> weight(n);
    std::size_t w = 1;
    for (int i = n - 1; i >= 0; --i) {
        weight[i] = w;
        w *= local_dim;
    }
    std::vector<std::size_t> map(total);
    for (std::size_t x = 0; x < total; ++x) {
        std::size_t rest = x;
        std::size_t y = 0;
        for (int i = 0; i < n; ++i) {
            const std::size_t digit = rest / weight[i];
            rest %= weight[i];
            y += digit * weight[p(i)];
        }
        map[x] = y;
    }
    return map;
}

UnitaryMatrix perm_to_unitary(const Permutation &p, std::size_t local_dim, std::size_t cap) {
    const std::vector<std::size_t> map = factor_index_map(p, local_dim, cap);
    ComplexMatrix m(map.size(), map.size());
    for (std::size_t x = 0; x < map.size(); ++x) {
        m(map[x], x) = 1.0;
    }
    return UnitaryMatrix::unchecked(std::move(m));
}

int unitary_determinant_sign(const Permutation &p, std::size_t local_dim, std::size_t cap) {
    const std::vector<std::size_t> map = factor_index_map(p, local_dim, cap);
    std::vector<bool> seen(map.size(), false);
    std::size_t even_length_cycles = 0;
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (seen[i]) {
            continue;
        }
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = map[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) {
            ++even_length_cycles;
        }
    }
    return even_length_cycles % 2 == 0 ? 1 : -1;
}

}  // namespace qswitch
