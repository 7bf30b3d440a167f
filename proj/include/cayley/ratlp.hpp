#pragma once

// Exact feasibility of homogeneous strict systems  M h > 0,  E h = 0.
//
// The solver runs phase 1 of a fraction-free simplex (Bland's rule) on the
// alternative system  y >= 0, sum(y) = 1, M^T y + E^T z = 0.  A zero optimum
// gives the multipliers (y, z) proving infeasibility; a positive optimum
// gives, through the final duals, heights h with M h >= opt > 0.

#include "cayley/common.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<BigInt>>;

class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Verdict : std::uint8_t { Regular, NonRegular };

inline const char* verdict_name(Verdict v) { return v == Verdict::Regular ? "REGULAR" : "NON_REGULAR"; }

/// Regular: `heights` solves the strict system. NonRegular: `multipliers`
/// (one per strict row, nonnegative, not all zero) and `eq_multipliers`
/// (one per equation) combine the rows to zero.
struct Certificate {
  Verdict verdict = Verdict::Regular;
  std::vector<BigInt> heights;
  std::vector<BigInt> multipliers;
  std::vector<BigInt> eq_multipliers;

  bool regular() const { return verdict == Verdict::Regular; }
};

/// Integer rows after clearing denominators row by row (positive factors).
inline IntMatrix clear_denominators(const RationalMatrix& m) {
  IntMatrix out;
  for (const auto& row : m) {
    BigInt l = 1;
    for (const Rational& q : row) l = boost::multiprecision::lcm(l, denominator(q));
    std::vector<BigInt> r;
    for (const Rational& q : row) r.push_back(numerator(q) * (l / denominator(q)));
    out.push_back(std::move(r));
  }
  return out;
}

inline bool check_heights(const IntMatrix& strict, const IntMatrix& equal, const std::vector<BigInt>& h) {
  auto dot = [&](const std::vector<BigInt>& row) {
    BigInt s = 0;
    for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * h[i];
    return s;
  };
  for (const auto& r : strict)
    if (r.size() != h.size() || dot(r) <= 0) return false;
  for (const auto& r : equal)
    if (r.size() != h.size() || dot(r) != 0) return false;
  return true;
}

inline bool check_multipliers(const IntMatrix& strict, const IntMatrix& equal, std::size_t vars,
                              const std::vector<BigInt>& y, const std::vector<BigInt>& z) {
  if (y.size() != strict.size() || z.size() != equal.size()) return false;
  BigInt total = 0;
  for (const BigInt& v : y) {
    if (v < 0) return false;
    total += v;
  }
  if (total <= 0) return false;
  for (std::size_t i = 0; i < vars; ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < strict.size(); ++j) s += y[j] * strict[j][i];
    for (std::size_t l = 0; l < equal.size(); ++l) s += z[l] * equal[l][i];
    if (s != 0) return false;
  }
  return true;
}

/// Substitutes the witness into the system.
inline bool verify_certificate(const Certificate& c, const IntMatrix& strict, const IntMatrix& equal,
                               std::size_t vars) {
  if (c.regular()) return c.heights.size() == vars && check_heights(strict, equal, c.heights);
  return check_multipliers(strict, equal, vars, c.multipliers, c.eq_multipliers);
}

namespace detail {

struct Overflow {};

inline std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Overflow{};
  return static_cast<std::int64_t>(v);
}

/// (x*a - y*b) / d, exact.
inline std::int64_t ff_update(std::int64_t x, std::int64_t a, std::int64_t y, std::int64_t b,
                              std::int64_t d) {
  const __int128 num = static_cast<__int128>(x) * a - static_cast<__int128>(y) * b;
  return narrow(num / d);
}
inline BigInt ff_update(const BigInt& x, const BigInt& a, const BigInt& y, const BigInt& b,
                        const BigInt& d) {
  return (x * a - y * b) / d;
}

/// a/b < c/d for b, d > 0.
inline bool ratio_less(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return static_cast<__int128>(a) * d < static_cast<__int128>(c) * b;
}
inline bool ratio_less(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
  return a * d < c * b;
}

inline std::int64_t to_int(const BigInt& v, std::int64_t*) {
  if (v > INT64_MAX || v < INT64_MIN) throw Overflow{};
  return static_cast<std::int64_t>(v);
}
inline BigInt to_int(const BigInt& v, BigInt*) { return v; }

template <class Int>
Certificate solve_alternative(const IntMatrix& strict, const IntMatrix& equal, std::size_t vars) {
  const std::size_t m = strict.size(), e = equal.size(), n = vars;
  const std::size_t rows = n + 1;
  const std::size_t art = m + 2 * e;  // first artificial column
  const std::size_t cols = art + rows;
  const std::size_t rhs = cols;
  std::vector<std::vector<Int>> t(rows + 1, std::vector<Int>(cols + 1, Int(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) t[i][j] = to_int(strict[j][i], static_cast<Int*>(nullptr));
    for (std::size_t l = 0; l < e; ++l) {
      t[i][m + 2 * l] = to_int(equal[l][i], static_cast<Int*>(nullptr));
      t[i][m + 2 * l + 1] = -t[i][m + 2 * l];
    }
  }
  for (std::size_t j = 0; j < m; ++j) t[n][j] = 1;
  t[n][rhs] = 1;
  for (std::size_t i = 0; i < rows; ++i) t[i][art + i] = 1;
  std::vector<Int>& obj = t[rows];
  for (std::size_t j = 0; j < art; ++j)
    for (std::size_t i = 0; i < rows; ++i) obj[j] -= t[i][j];
  obj[rhs] = -1;
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = art + i;
  Int d = 1;

  for (;;) {
    std::size_t q = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (obj[j] < 0) {
        q = j;
        break;
      }
    if (q == cols) break;
    std::size_t p = rows;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][q] <= 0) continue;
      if (p == rows || ratio_less(t[i][rhs], t[i][q], t[p][rhs], t[p][q]) ||
          (!ratio_less(t[p][rhs], t[p][q], t[i][rhs], t[i][q]) && basis[i] < basis[p]))
        p = i;
    }
    if (p == rows) throw std::logic_error("phase 1 cannot be unbounded");
    const Int a = t[p][q];
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == p) continue;
      const Int f = t[i][q];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] = ff_update(t[i][j], a, f, t[p][j], d);
    }
    d = a;
    basis[p] = q;
  }

  Certificate c;
  if (obj[rhs] == 0) {
    c.verdict = Verdict::NonRegular;
    c.multipliers.assign(m, 0);
    c.eq_multipliers.assign(e, 0);
    for (std::size_t i = 0; i < rows; ++i) {
      const std::size_t b = basis[i];
      const BigInt v(t[i][rhs]);
      if (b < m)
        c.multipliers[b] = v;
      else if (b < art)
        c.eq_multipliers[(b - m) / 2] += (b - m) % 2 ? BigInt(-v) : v;
    }
  } else {
    c.verdict = Verdict::Regular;
    for (std::size_t i = 0; i < n; ++i) c.heights.push_back(BigInt(obj[art + i]) - BigInt(d));
  }
  return c;
}

inline std::size_t width_of(const IntMatrix& strict, const IntMatrix& equal, std::optional<std::size_t> vars) {
  std::optional<std::size_t> w = vars;
  for (const IntMatrix* m : {&strict, &equal})
    for (const auto& row : *m) {
      if (w && row.size() != *w) throw ContractError("rows have different lengths");
      w = row.size();
    }
  return w.value_or(0);
}

}  // namespace detail

/// Decides M h > 0, E h = 0 exactly; the certificate is verified before
/// it is returned.
inline Certificate strict_feasible(const IntMatrix& strict, const IntMatrix& equal = {},
                                   std::optional<std::size_t> vars = {}) {
  const std::size_t n = detail::width_of(strict, equal, vars);
  Certificate c;
  try {
    c = detail::solve_alternative<std::int64_t>(strict, equal, n);
  } catch (const detail::Overflow&) {
    c = detail::solve_alternative<BigInt>(strict, equal, n);
  }
  if (!verify_certificate(c, strict, equal, n)) throw std::logic_error("simplex produced a bad certificate");
  return c;
}

inline Certificate strict_feasible(const RationalMatrix& strict, const RationalMatrix& equal = {},
                                   std::optional<std::size_t> vars = {}) {
  return strict_feasible(clear_denominators(strict), clear_denominators(equal), vars);
}

/// Inhomogeneous entry point: only b = 0 is accepted.
inline Certificate strict_feasible(const RationalMatrix& strict, const std::vector<Rational>& rhs) {
  if (rhs.size() != strict.size()) throw ContractError("right-hand side has the wrong length");
  for (const Rational& b : rhs)
    if (b != 0) throw ContractError("system must be homogeneous (M h > 0)");
  return strict_feasible(strict);
}

/// Heights rescaled so that min_j (M h)_j = 1, the Mh >= 1 form.
inline std::vector<Rational> normalized_heights(const Certificate& c, const IntMatrix& strict) {
  if (!c.regular()) throw DomainError("certificate has no heights");
  std::optional<BigInt> low;
  for (const auto& row : strict) {
    BigInt s = 0;
    for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * c.heights[i];
    if (!low || s < *low) low = s;
  }
  std::vector<Rational> out;
  for (const BigInt& h : c.heights) out.push_back(low ? Rational(h, *low) : Rational(h));
  return out;
}

inline std::string rational_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational parse_rational(std::string_view s) {
  try {
    return Rational(std::string(s));
  } catch (const std::exception&) {
    throw MalformedInput("not a rational: '" + std::string(s) + "'");
  }
}

/// {"verdict":..., "heights" | "multipliers" (+ "equation_multipliers")}
inline std::string certificate_json(const Certificate& c) {
  nlohmann::ordered_json doc;
  doc["verdict"] = verdict_name(c.verdict);
  auto list = [](const std::vector<BigInt>& v) {
    auto a = nlohmann::ordered_json::array();
    for (const BigInt& x : v) a.push_back(rational_string(Rational(x)));
    return a;
  };
  if (c.regular()) {
    doc["heights"] = list(c.heights);
  } else {
    doc["multipliers"] = list(c.multipliers);
    if (!c.eq_multipliers.empty()) doc["equation_multipliers"] = list(c.eq_multipliers);
  }
  return doc.dump();
}

}  // namespace cayley
