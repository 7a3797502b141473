#pragma once

#include "sqca/common.hpp"

#include <optional>

namespace sqca::zmod {

std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t gcd(std::int64_t a, std::int64_t b);
// a*x = b (mod m), if solvable
std::optional<std::int64_t> solve_scalar(std::int64_t a, std::int64_t b, std::int64_t m);

// u * a * v = d (mod m), u and v invertible mod m, d diagonal
struct Smith {
  IMat u, v, d;
  std::int64_t m = 1;
  Eigen::Index rank = 0;
};

Smith smith(const IMat& a, std::int64_t m);

std::optional<IMat> solve(const Smith& s, const IMat& b);
// generators of {x : a x = 0 mod m}, one per column
IMat kernel(const Smith& s);

// Howell form of the row span of a over Z_m
struct Howell {
  IMat rows;
  std::vector<Eigen::Index> pivots;
  std::int64_t m = 1;
};

Howell howell(const IMat& generators, std::int64_t m);
// canonical representative of v modulo the row span
IMat reduce(const Howell& h, const IMat& v);

// all elements of the subgroup of Z_m^n generated by the columns of gens
std::vector<IMat> span_elements(const IMat& gens, std::int64_t m, std::size_t cap);

}  // namespace sqca::zmod
