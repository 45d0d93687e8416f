// SPDX-License-Identifier: Apache-2.0
#include "vhtk/linear.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "vhtk/error.hpp"

namespace vh {

namespace {

using RVec = std::vector<Rational>;

bool is_zero(const RVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

// Clears denominators and divides by the gcd of the entries.
std::vector<Integer> primitive(const RVec& x) {
  Integer l = 1;
  for (const auto& r : x) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(r)));
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& r : x) {
    const Integer v = Integer(boost::multiprecision::numerator(r)) * (l / Integer(boost::multiprecision::denominator(r)));
    out.push_back(v);
    g = boost::multiprecision::gcd(g, v);
  }
  if (g > 1)
    for (auto& v : out) v /= g;
  return out;
}

// Rows of [A; 1^T] with right-hand sides [0; 1].
std::vector<RVec> augmented(const IntMatrix& a, std::size_t n) {
  std::vector<RVec> rows;
  for (const auto& row : a) {
    if (row.size() != n) throw InvalidInput("linear system: row length mismatch");
    RVec r(n + 1);
    for (std::size_t j = 0; j < n; ++j) r[j] = Rational(row[j]);
    rows.push_back(std::move(r));
  }
  RVec ones(n + 1, Rational(1));
  rows.push_back(std::move(ones));
  return rows;
}

// Constraint sum coef[i] * y[i] + constant >= 0.
struct Ineq {
  RVec coef;
  Rational constant;
  friend bool operator<(const Ineq& a, const Ineq& b) { return std::tie(a.coef, a.constant) < std::tie(b.coef, b.constant); }
};

// Scales so the first nonzero coefficient has absolute value one.
Ineq normalised(Ineq q) {
  for (const auto& c : q.coef)
    if (c != 0) {
      const Rational s = c < 0 ? Rational(-c) : c;
      for (auto& d : q.coef) d /= s;
      q.constant /= s;
      return q;
    }
  return q;
}

std::optional<RVec> fourier_motzkin(const IntMatrix& a, std::size_t n) {
  auto rows = augmented(a, n);
  // Reduced row echelon form.
  std::vector<int> pivot_of_col(n, -1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][col];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = 0; j <= n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_of_col[col] = static_cast<int>(r);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rows[i][n] != 0) return std::nullopt;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (pivot_of_col[c] < 0) free_cols.push_back(c);
  const std::size_t f = free_cols.size();
  // Every variable is >= 0, written in the free variables y.
  std::set<Ineq> current;
  for (std::size_t c = 0; c < n; ++c) {
    Ineq q{RVec(f), Rational(0)};
    if (pivot_of_col[c] < 0) {
      q.coef[static_cast<std::size_t>(std::find(free_cols.begin(), free_cols.end(), c) - free_cols.begin())] = 1;
    } else {
      const auto& row = rows[static_cast<std::size_t>(pivot_of_col[c])];
      q.constant = row[n];
      for (std::size_t k = 0; k < f; ++k) q.coef[k] = -row[free_cols[k]];
    }
    current.insert(normalised(q));
  }
  // levels[k] holds the constraints on y[0..k] after eliminating y[k+1..].
  std::vector<std::vector<Ineq>> levels(f + 1);
  for (std::size_t k = f; k-- > 0;) {
    levels[k + 1].assign(current.begin(), current.end());
    std::vector<Ineq> pos, neg;
    std::set<Ineq> next;
    for (const auto& q : current) {
      if (q.coef[k] > 0) pos.push_back(q);
      else if (q.coef[k] < 0) neg.push_back(q);
      else next.insert(q);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Ineq s{RVec(f), Rational(0)};
        const Rational wp = -q.coef[k];
        const Rational wq = p.coef[k];
        for (std::size_t i = 0; i < f; ++i) s.coef[i] = wp * p.coef[i] + wq * q.coef[i];
        s.constant = wp * p.constant + wq * q.constant;
        s.coef[k] = 0;
        next.insert(normalised(s));
        if (next.size() > 200000) throw BoundExceeded("Fourier-Motzkin: too many constraints");
      }
    current = std::move(next);
  }
  for (const auto& q : current)
    if (q.constant < 0) return std::nullopt;
  RVec y(f, Rational(0));
  for (std::size_t k = 0; k < f; ++k) {
    std::optional<Rational> lo;
    for (const auto& q : levels[k + 1]) {
      if (q.coef[k] <= 0) continue;
      Rational rest = q.constant;
      for (std::size_t i = 0; i < k; ++i) rest += q.coef[i] * y[i];
      const Rational bound = -rest / q.coef[k];
      if (!lo || bound > *lo) lo = bound;
    }
    y[k] = lo.value_or(Rational(0));
  }
  RVec x(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (pivot_of_col[c] < 0) {
      x[c] = y[static_cast<std::size_t>(std::find(free_cols.begin(), free_cols.end(), c) - free_cols.begin())];
    } else {
      const auto& row = rows[static_cast<std::size_t>(pivot_of_col[c])];
      x[c] = row[n];
      for (std::size_t k = 0; k < f; ++k) x[c] -= row[free_cols[k]] * y[k];
    }
  }
  return x;
}

std::optional<RVec> simplex(const IntMatrix& a, std::size_t n) {
  const auto rows = augmented(a, n);
  const std::size_t m = rows.size();
  const std::size_t cols = n + m;  // originals then artificials
  std::vector<RVec> t(m, RVec(cols + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = rows[i][j];
    t[i][n + i] = 1;
    t[i][cols] = rows[i][n];
    basis[i] = n + i;
  }
  // Reduced costs of minimising the sum of artificials.
  RVec cost(cols + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) cost[j] -= t[i][j];
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;  // Bland: smallest index
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    VHTK_CHECK(leave < m, "phase-one simplex is bounded below");
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    const Rational f = cost[enter];
    for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  if (cost[cols] != 0) return std::nullopt;  // -(sum of artificials) at optimum
  RVec x(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][cols];
  return x;
}

IntegerSolution finish(const std::optional<RVec>& x, const IntMatrix& a, const char* method) {
  if (!x || is_zero(*x)) throw Infeasible("no nonzero nonnegative solution exists");
  IntegerSolution s{primitive(*x), method};
  for (const auto& v : s.weights) VHTK_CHECK(v >= 0, "negative weight in solution");
  VHTK_CHECK(satisfies(a, s.weights), std::string(method) + " solution fails substitution");
  return s;
}

}  // namespace

bool satisfies(const IntMatrix& a, const std::vector<Integer>& w) {
  for (const auto& row : a) {
    if (row.size() != w.size()) return false;
    Integer s = 0;
    for (std::size_t j = 0; j < w.size(); ++j) s += row[j] * w[j];
    if (s != 0) return false;
  }
  return true;
}

IntegerSolution solve_by_fourier_motzkin(const IntMatrix& a, std::size_t variables) {
  if (variables == 0) throw Infeasible("no variables");
  return finish(fourier_motzkin(a, variables), a, "fourier-motzkin");
}

IntegerSolution solve_by_simplex(const IntMatrix& a, std::size_t variables) {
  if (variables == 0) throw Infeasible("no variables");
  return finish(simplex(a, variables), a, "simplex");
}

IntegerSolution solve_nonnegative_integer(const IntMatrix& a, std::size_t variables, std::size_t fm_limit) {
  if (variables <= fm_limit) {
    try {
      return solve_by_fourier_motzkin(a, variables);
    } catch (const BoundExceeded&) {
    }
  }
  return solve_by_simplex(a, variables);
}

}  // namespace vh
