#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace monicdyn {

/// Exponent vector (I_0, ..., I_n) of a monomial. Capacity is fixed; the
/// artifact works with at most kMaxVars variables.
class MultiIndex {
public:
  static constexpr int kMaxVars = 8;

  MultiIndex() = default;
  explicit MultiIndex(int nvars) : n_(static_cast<std::uint8_t>(nvars)) {
    if (nvars < 0 || nvars > kMaxVars)
      throw std::invalid_argument("MultiIndex: unsupported variable count");
  }
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(static_cast<int>(entries.size())) {
    int i = 0;
    for (int e : entries)
      set(i++, e);
  }
  static MultiIndex from(std::span<const int> entries) {
    MultiIndex m(static_cast<int>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i)
      m.set(static_cast<int>(i), entries[i]);
    return m;
  }

  int size() const { return n_; }
  int operator[](int i) const { return e_[i]; }
  void set(int i, int value) {
    if (value < 0 || value > 0xFFFF)
      throw std::out_of_range("MultiIndex: exponent out of range");
    e_[i] = static_cast<std::uint16_t>(value);
  }
  int total() const {
    int t = 0;
    for (int i = 0; i < n_; ++i)
      t += e_[i];
    return t;
  }
  /// Last entry: the grading weight I_N.
  int last() const { return e_[n_ - 1]; }

  MultiIndex operator+(const MultiIndex &o) const {
    assert(n_ == o.n_);
    MultiIndex r(n_);
    for (int i = 0; i < n_; ++i)
      r.e_[i] = static_cast<std::uint16_t>(e_[i] + o.e_[i]);
    return r;
  }
  bool divides(const MultiIndex &o) const {
    for (int i = 0; i < n_; ++i)
      if (e_[i] > o.e_[i])
        return false;
    return true;
  }
  /// Requires divides(o) to hold for the reverse: this / o.
  MultiIndex operator-(const MultiIndex &o) const {
    MultiIndex r(n_);
    for (int i = 0; i < n_; ++i) {
      assert(e_[i] >= o.e_[i]);
      r.e_[i] = static_cast<std::uint16_t>(e_[i] - o.e_[i]);
    }
    return r;
  }

  std::vector<int> to_vector() const { return {e_.begin(), e_.begin() + n_}; }

  friend bool operator==(const MultiIndex &a, const MultiIndex &b) {
    return a.n_ == b.n_ && std::equal(a.e_.begin(), a.e_.begin() + a.n_, b.e_.begin());
  }

  /// Graded lexicographic order with x_0 > x_1 > ... : true when a < b.
  friend bool grlex_less(const MultiIndex &a, const MultiIndex &b) {
    const int ta = a.total(), tb = b.total();
    if (ta != tb)
      return ta < tb;
    for (int i = 0; i < a.n_; ++i)
      if (a.e_[i] != b.e_[i])
        return a.e_[i] < b.e_[i];
    return false;
  }

private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

/// Orders monomials from largest to smallest (canonical listing order).
struct GrlexGreater {
  bool operator()(const MultiIndex &a, const MultiIndex &b) const { return grlex_less(b, a); }
};

/// All multi-indices in nvars variables of total degree exactly `degree`,
/// in canonical (descending grlex) order.
std::vector<MultiIndex> indices_of_degree(int nvars, int degree);

/// Ind*(N, d): |I| = d and 0 < I_N < d, with N + 1 entries.
std::vector<MultiIndex> ind_star(int N, int d);

long long binomial(int n, int k);

} // namespace monicdyn
