#include "sqca/zmod.hpp"

#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace sqca::zmod {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

namespace {

std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_tuple(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_tuple(t1, t0 - q * t1);
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

void reduce_all(IMat& a, std::int64_t m) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = mod(a(i, j), m);
}

// rows i, k of x <- [[s, t], [p, q]] applied
void row_mix(IMat& x, Eigen::Index i, Eigen::Index k, std::int64_t s, std::int64_t t, std::int64_t p,
             std::int64_t q, std::int64_t m) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    std::int64_t a = x(i, j), b = x(k, j);
    x(i, j) = mod(s * a + t * b, m);
    x(k, j) = mod(p * a + q * b, m);
  }
}

void col_mix(IMat& x, Eigen::Index i, Eigen::Index k, std::int64_t s, std::int64_t t, std::int64_t p,
             std::int64_t q, std::int64_t m) {
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    std::int64_t a = x(r, i), b = x(r, k);
    x(r, i) = mod(s * a + t * b, m);
    x(r, k) = mod(p * a + q * b, m);
  }
}

std::int64_t unit_to_divisor(std::int64_t a, std::int64_t m) {
  // unit w with w*a = gcd(a,m) (mod m)
  std::int64_t d = gcd(a, m);
  std::int64_t md = m / d;
  std::int64_t w0 = 1;
  if (md > 1) {
    auto [g, s, t] = ext_gcd(mod(a / d, md), md);
    (void)g;
    (void)t;
    w0 = mod(s, md);
  }
  for (std::int64_t k = 0; k < d + 1; ++k) {
    std::int64_t w = w0 + k * md;
    if (gcd(w, m) == 1) return mod(w, m);
  }
  throw Error(Errc::NoConvergence, "no unit normalizing pivot");
}

}  // namespace

std::optional<std::int64_t> solve_scalar(std::int64_t a, std::int64_t b, std::int64_t m) {
  a = mod(a, m);
  b = mod(b, m);
  std::int64_t d = gcd(a, m);
  if (b % d != 0) return std::nullopt;
  std::int64_t md = m / d;
  if (md == 1) return 0;
  auto [g, s, t] = ext_gcd(a / d, md);
  (void)g;
  (void)t;
  return mod((b / d) * s, md);
}

Smith smith(const IMat& a0, std::int64_t m) {
  Smith s;
  s.m = m;
  IMat a = a0;
  reduce_all(a, m);
  const Eigen::Index r = a.rows(), c = a.cols();
  s.u = IMat::Identity(r, r);
  s.v = IMat::Identity(c, c);
  Eigen::Index t = 0;
  while (t < std::min(r, c)) {
    Eigen::Index bi = -1, bj = -1;
    std::int64_t best = m + 1;
    for (Eigen::Index j = t; j < c; ++j)
      for (Eigen::Index i = t; i < r; ++i)
        if (a(i, j) != 0) {
          std::int64_t g = gcd(a(i, j), m);
          if (g < best) {
            best = g;
            bi = i;
            bj = j;
          }
        }
    if (bi < 0) break;
    if (bi != t) {
      a.row(t).swap(a.row(bi));
      s.u.row(t).swap(s.u.row(bi));
    }
    if (bj != t) {
      a.col(t).swap(a.col(bj));
      s.v.col(t).swap(s.v.col(bj));
    }
    for (int guard = 0;; ++guard) {
      if (guard > 10000) throw Error(Errc::NoConvergence, "smith form");
      bool clean = true;
      for (Eigen::Index i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        clean = false;
        std::int64_t p = a(t, t), b = a(i, t);
        if (auto q = solve_scalar(p, b, m)) {
          row_mix(a, t, i, 1, 0, -*q, 1, m);
          row_mix(s.u, t, i, 1, 0, -*q, 1, m);
        } else {
          auto [g, x, y] = ext_gcd(p, b);
          row_mix(a, t, i, x, y, -b / g, p / g, m);
          row_mix(s.u, t, i, x, y, -b / g, p / g, m);
        }
      }
      for (Eigen::Index j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        clean = false;
        std::int64_t p = a(t, t), b = a(t, j);
        if (auto q = solve_scalar(p, b, m)) {
          col_mix(a, t, j, 1, 0, -*q, 1, m);
          col_mix(s.v, t, j, 1, 0, -*q, 1, m);
        } else {
          auto [g, x, y] = ext_gcd(p, b);
          col_mix(a, t, j, x, y, -b / g, p / g, m);
          col_mix(s.v, t, j, x, y, -b / g, p / g, m);
        }
      }
      if (clean) break;
    }
    ++t;
  }
  s.rank = t;
  s.d = a;
  return s;
}

std::optional<IMat> solve(const Smith& s, const IMat& b) {
  const std::int64_t m = s.m;
  IMat c = s.u * b;
  reduce_all(c, m);
  const Eigen::Index r = s.d.rows(), n = s.d.cols();
  IMat y = IMat::Zero(n, b.cols());
  for (Eigen::Index k = 0; k < b.cols(); ++k) {
    for (Eigen::Index i = 0; i < r; ++i) {
      if (i < s.rank) {
        auto q = solve_scalar(s.d(i, i), c(i, k), m);
        if (!q) return std::nullopt;
        y(i, k) = *q;
      } else if (c(i, k) != 0) {
        return std::nullopt;
      }
    }
  }
  IMat x = s.v * y;
  reduce_all(x, m);
  return x;
}

IMat kernel(const Smith& s) {
  const std::int64_t m = s.m;
  const Eigen::Index n = s.d.cols();
  std::vector<IMat> cols;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::int64_t f = 1;
    if (i < s.rank) f = m / gcd(s.d(i, i), m);
    if (f % m == 0) continue;
    IMat col = s.v.col(i) * f;
    reduce_all(col, m);
    cols.push_back(col);
  }
  IMat k(n, Eigen::Index(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) k.col(Eigen::Index(j)) = cols[j];
  return k;
}

namespace {

Howell echelon(IMat a, std::int64_t m) {
  reduce_all(a, m);
  Howell h;
  h.m = m;
  const Eigen::Index r = a.rows(), c = a.cols();
  Eigen::Index t = 0;
  for (Eigen::Index col = 0; col < c && t < r; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = t; i < r; ++i)
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != t) a.row(t).swap(a.row(piv));
    for (Eigen::Index i = t + 1; i < r; ++i) {
      if (a(i, col) == 0) continue;
      std::int64_t p = a(t, col), b = a(i, col);
      auto [g, x, y] = ext_gcd(p, b);
      row_mix(a, t, i, x, y, -b / g, p / g, m);
    }
    std::int64_t w = unit_to_divisor(a(t, col), m);
    for (Eigen::Index j = 0; j < c; ++j) a(t, j) = mod(a(t, j) * w, m);
    if (a(t, col) == 0) continue;
    h.pivots.push_back(col);
    ++t;
  }
  h.rows = a.topRows(t);
  for (Eigen::Index i = 0; i < t; ++i) {
    Eigen::Index col = h.pivots[std::size_t(i)];
    std::int64_t p = h.rows(i, col);
    for (Eigen::Index k = 0; k < i; ++k) {
      std::int64_t q = h.rows(k, col) / p;
      if (q != 0)
        for (Eigen::Index j = 0; j < c; ++j) h.rows(k, j) = mod(h.rows(k, j) - q * h.rows(i, j), m);
    }
  }
  return h;
}

}  // namespace

IMat reduce(const Howell& h, const IMat& v0) {
  IMat v = v0;
  reduce_all(v, h.m);
  for (std::size_t i = 0; i < h.pivots.size(); ++i) {
    Eigen::Index col = h.pivots[i];
    std::int64_t p = h.rows(Eigen::Index(i), col);
    std::int64_t q = v(0, col) / p;
    if (q != 0)
      for (Eigen::Index j = 0; j < v.cols(); ++j)
        v(0, j) = mod(v(0, j) - q * h.rows(Eigen::Index(i), j), h.m);
  }
  return v;
}

Howell howell(const IMat& generators, std::int64_t m) {
  IMat rows = generators;
  for (int guard = 0; guard < 10000; ++guard) {
    Howell h = echelon(rows, m);
    bool grown = false;
    for (Eigen::Index i = 0; i < h.rows.rows(); ++i) {
      std::int64_t p = h.rows(i, h.pivots[std::size_t(i)]);
      IMat w = h.rows.row(i) * (m / p);
      IMat rem = reduce(h, w);
      if (!rem.isZero()) {
        rows.resize(h.rows.rows() + 1, h.rows.cols());
        rows.topRows(h.rows.rows()) = h.rows;
        rows.bottomRows(1) = rem;
        grown = true;
        break;
      }
    }
    if (!grown) return h;
  }
  throw Error(Errc::NoConvergence, "howell form");
}

std::vector<IMat> span_elements(const IMat& gens, std::int64_t m, std::size_t cap) {
  auto key = [](const IMat& v) { return std::vector<std::int64_t>(v.data(), v.data() + v.size()); };
  std::vector<IMat> out;
  std::set<std::vector<std::int64_t>> seen;
  IMat zero = IMat::Zero(gens.rows(), 1);
  out.push_back(zero);
  seen.insert(key(zero));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Eigen::Index g = 0; g < gens.cols(); ++g) {
      IMat w = out[i] + gens.col(g);
      reduce_all(w, m);
      if (seen.insert(key(w)).second) {
        out.push_back(w);
        if (out.size() > cap) throw Error(Errc::TooLarge, "span exceeds cap");
      }
    }
  }
  return out;
}

}  // namespace sqca::zmod
