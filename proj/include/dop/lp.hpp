#pragma once

#include <cassert>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace dop {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status;
  Rat value;
  Vec x;
};

/*
 * Exact two-phase simplex for  max c.x  s.t.  A x = b, x >= 0.
 *
 * Dense rational tableau with Bland's rule, which terminates without any
 * anti-cycling tricks. Problem sizes here are tiny (cone membership and
 * relative-interior queries on a few dozen generators), so no effort goes
 * into sparsity or a revised formulation.
 */
class Simplex {
 public:
  Simplex(const Mat& a, const Vec& b) : m_(a.size()), n_(a[0].size()) {
    rows_.assign(m_, Vec(n_ + m_ + 1, 0));
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      bool neg = b[i] < 0;
      for (int j = 0; j < n_; ++j) rows_[i][j] = neg ? -a[i][j] : a[i][j];
      rows_[i][n_ + i] = 1;
      rows_[i].back() = neg ? -b[i] : b[i];
      basis_[i] = n_ + i;
    }
  }

  LpResult solve(const Vec& c) {
    // Phase 1: maximize minus the sum of artificials.
    Vec obj(n_ + m_ + 1, 0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j <= n_ + m_; ++j) obj[j] += rows_[i][j];
    for (int j = n_; j < n_ + m_; ++j) obj[j] -= 1;
    run(obj, n_ + m_);
    if (obj.back() != 0) return {LpStatus::infeasible, 0, {}};
    evict_artificials();

    // Phase 2 over the original columns only.
    Vec obj2(n_ + m_ + 1, 0);
    for (int j = 0; j < n_; ++j) obj2[j] = c[j];
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (basis_[i] >= n_) continue;
      Rat f = obj2[basis_[i]];
      if (f == 0) continue;
      for (int j = 0; j <= n_ + m_; ++j) obj2[j] -= f * rows_[i][j];
    }
    if (!run(obj2, n_)) return {LpStatus::unbounded, 0, {}};
    Vec x(n_, 0);
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i)
      if (basis_[i] < n_) x[basis_[i]] = rows_[i].back();
    return {LpStatus::optimal, -obj2.back(), std::move(x)};
  }

 private:
  // Pivots until no eligible column among [0, limit) improves. Returns false
  // on an unbounded ray. obj.back() tracks minus the objective value.
  bool run(Vec& obj, int limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j)
        if (obj[j] > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rat best = 0;
      for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rat ratio = rows_[i].back() / rows_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      Rat f = obj[enter];
      for (int j = 0; j <= n_ + m_; ++j) obj[j] -= f * rows_[leave][j];
    }
  }

  void pivot(int r, int c) {
    Rat inv = rows_[r][c];
    for (Rat& v : rows_[r]) v /= inv;
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      Rat f = rows_[i][c];
      for (int j = 0; j <= n_ + m_; ++j) rows_[i][j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  // After phase 1 an artificial may linger in the basis at value zero.
  // Pivot it out where possible; a row with no real-column support is a
  // redundant constraint and is dropped.
  void evict_artificials() {
    for (int i = static_cast<int>(rows_.size()) - 1; i >= 0; --i) {
      if (basis_[i] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j)
        if (rows_[i][j] != 0) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(i, col);
      } else {
        rows_.erase(rows_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
  }

  int m_, n_;
  Mat rows_;
  std::vector<int> basis_;
};

inline LpResult lp_max(const Mat& a, const Vec& b, const Vec& c) {
  assert(!a.empty());
  return Simplex(a, b).solve(c);
}

// Is there x >= 0 with A x = b?
inline bool lp_feasible(const Mat& a, const Vec& b) {
  if (a.empty()) return true;
  Vec c(a[0].size(), 0);
  return Simplex(a, b).solve(c).status == LpStatus::optimal;
}

}  // namespace dop
