#pragma once

// Sparse multivariate integer forms over a fixed variable set. Used for the
// quaternary surface form (N = 4, variables x0..x3) and ternary plane-section
// forms (N = 3, variables s, t, r).

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "planesect/integers.hpp"

namespace planesect {

template <std::size_t N>
using Expo = std::array<int, N>;

/// Exponent-map polynomial with integer coefficients; no zero entries.
template <std::size_t N>
using MPoly = std::map<Expo<N>, Int>;

struct FormParseError : std::invalid_argument {
  explicit FormParseError(const std::string& what) : std::invalid_argument(what) {}
};

template <std::size_t N>
inline void mp_add_term(MPoly<N>& p, const Expo<N>& e, const Int& c) {
  if (c == 0) return;
  auto it = p.find(e);
  if (it == p.end()) {
    p.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

template <std::size_t N>
inline MPoly<N> mp_add(const MPoly<N>& a, const MPoly<N>& b) {
  MPoly<N> r = a;
  for (const auto& [e, c] : b) mp_add_term(r, e, c);
  return r;
}

template <std::size_t N>
inline MPoly<N> mp_scale(const MPoly<N>& a, const Int& k) {
  MPoly<N> r;
  if (k == 0) return r;
  for (const auto& [e, c] : a) r.emplace(e, Int(c * k));
  return r;
}

template <std::size_t N>
inline MPoly<N> mp_mul(const MPoly<N>& a, const MPoly<N>& b) {
  MPoly<N> r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Expo<N> e;
      for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
      mp_add_term(r, e, Int(ca * cb));
    }
  return r;
}

template <std::size_t N>
inline int mp_degree(const MPoly<N>& p) {
  int d = -1;
  for (const auto& [e, c] : p) {
    int t = 0;
    for (int k : e) t += k;
    if (t > d) d = t;
  }
  return d;
}

template <std::size_t N>
inline bool mp_homogeneous(const MPoly<N>& p) {
  int d = -1;
  for (const auto& [e, c] : p) {
    int t = 0;
    for (int k : e) t += k;
    if (d < 0) d = t;
    if (t != d) return false;
  }
  return true;
}

template <std::size_t N>
inline Int mp_content(const MPoly<N>& p) {
  Int g = 0;
  for (const auto& [e, c] : p) g = gcd_int(g, c);
  return g;
}

template <std::size_t N>
inline MPoly<N> mp_primitive(const MPoly<N>& p) {
  Int g = mp_content(p);
  if (g == 0 || g == 1) return p;
  MPoly<N> r;
  for (const auto& [e, c] : p) r.emplace(e, Int(c / g));
  return r;
}

template <std::size_t N>
inline MPoly<N> mp_derivative(const MPoly<N>& p, std::size_t var) {
  MPoly<N> r;
  for (const auto& [e, c] : p) {
    if (e[var] == 0) continue;
    Expo<N> d = e;
    d[var] -= 1;
    mp_add_term(r, d, Int(c * e[var]));
  }
  return r;
}

template <std::size_t N>
inline Int mp_eval(const MPoly<N>& p, const std::array<Int, N>& x) {
  Int total = 0;
  for (const auto& [e, c] : p) {
    Int t = c;
    for (std::size_t i = 0; i < N; ++i)
      if (e[i] > 0) t *= pow_int(x[i], static_cast<unsigned long>(e[i]));
    total += t;
  }
  return total;
}

/// Substitute x_i = sum_j coeffs[i][j] * y_j, turning an N-variate form into
/// an M-variate one.
template <std::size_t M, std::size_t N>
inline MPoly<M> mp_substitute(const MPoly<N>& p,
                              const std::array<std::array<Int, M>, N>& coeffs) {
  std::array<MPoly<M>, N> lin;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      Expo<M> e{};
      e[j] = 1;
      mp_add_term(lin[i], e, coeffs[i][j]);
    }
  MPoly<M> r;
  for (const auto& [e, c] : p) {
    MPoly<M> term;
    term.emplace(Expo<M>{}, c);
    for (std::size_t i = 0; i < N; ++i)
      for (int k = 0; k < e[i]; ++k) term = mp_mul(term, lin[i]);
    r = mp_add(r, term);
  }
  return r;
}

namespace detail_mp {

// Descending-lex term order for printing: leading monomial first.
template <std::size_t N>
inline std::vector<std::pair<Expo<N>, Int>> sorted_terms(const MPoly<N>& p) {
  std::vector<std::pair<Expo<N>, Int>> v(p.begin(), p.end());
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace detail_mp

template <std::size_t N>
inline std::string mp_to_string(const MPoly<N>& p, const std::array<std::string, N>& vars) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : detail_mp::sorted_terms(p)) {
    Int a = abs_int(c);
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t i = 0; i < N; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

/// Parse a sum of integer-coefficient monomials in the given variables.
/// Syntax: terms joined by + or -, each an optional integer coefficient and
/// factors `var^k` (k >= 1, `^1` optional) joined by optional `*`.
template <std::size_t N>
inline MPoly<N> mp_parse(const std::string& text, const std::array<std::string, N>& vars) {
  MPoly<N> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  auto match_var = [&](int& var) -> bool {
    for (std::size_t v = 0; v < N; ++v) {
      const std::string& name = vars[v];
      if (text.compare(i, name.size(), name) == 0) {
        // longest-match guard for prefixes (not needed for x0..x3 / s,t,r)
        var = static_cast<int>(v);
        i += name.size();
        return true;
      }
    }
    return false;
  };
  skip_ws();
  bool any = false;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (!any && text[i] == '+') throw FormParseError("unexpected leading +");
      if (any || text[i] == '-') {
        if (text[i] == '-') sign = -1;
        ++i;
        skip_ws();
      }
    } else if (any) {
      throw FormParseError("expected + or - between terms");
    }
    Int coeff = 1;
    Expo<N> e{};
    bool saw_factor = false;
    bool expect_factor = true;
    while (i < text.size()) {
      skip_ws();
      if (i >= text.size()) break;
      char ch = text[i];
      if (ch == '+' || ch == '-') break;
      if (ch == '*') {
        if (!saw_factor) throw FormParseError("unexpected *");
        ++i;
        expect_factor = true;
        continue;
      }
      if (ch >= '0' && ch <= '9') {
        if (saw_factor && !expect_factor)
          throw FormParseError("coefficient after variable factor");
        std::string num;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') num += text[i++];
        coeff *= Int(num);
        saw_factor = true;
        expect_factor = false;
        continue;
      }
      int var;
      if (match_var(var)) {
        int k = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          if (i >= text.size() || text[i] < '0' || text[i] > '9')
            throw FormParseError("expected exponent after ^");
          std::string num;
          while (i < text.size() && text[i] >= '0' && text[i] <= '9') num += text[i++];
          k = std::stoi(num);
          if (k < 1) throw FormParseError("exponent must be >= 1");
        }
        e[var] += k;
        saw_factor = true;
        expect_factor = false;
        continue;
      }
      throw FormParseError(std::string("unexpected character '") + ch + "'");
    }
    if (!saw_factor) throw FormParseError("empty term");
    mp_add_term(out, e, Int(sign) * coeff);
    any = true;
    skip_ws();
  }
  if (!any) throw FormParseError("empty expression");
  return out;
}

}  // namespace planesect
