#pragma once

#include "sqca/qca.hpp"
#include "util.hpp"

namespace tu {

// qubit sites with a diagonal character action and a random grading
inline Site diagonal_site(const FiniteGroup& g, Rng& rng) {
  auto chars = enumerate_characters(g);
  std::uniform_int_distribution<std::size_t> pick(0, chars.size() - 1);
  const Vec& chi = chars[pick(rng)];
  Site s;
  s.grading.resize(2);
  s.grading << 1, (rng() % 2 ? -1 : 1);
  for (int a = 0; a < g.order; ++a) {
    Mat u = id(2);
    u(1, 1) = chi(a);
    s.rep.push_back(u);
  }
  return s;
}

inline Site flip_site() {
  Site s;
  s.grading.resize(2);
  s.grading << 1, -1;
  s.rep = {id(2), sx()};
  return s;
}

// a circuit window: qubits with random gradings and diagonal actions, or sigma_X flips for Z2
inline ChainWindow circuit_window(const FiniteGroup& g, Eigen::Index sites, Rng& rng, bool flip = false) {
  ChainWindow w;
  w.group = g;
  Site s = flip ? flip_site() : diagonal_site(g, rng);
  w.sites.assign(std::size_t(sites), s);
  return w;
}

}  // namespace tu
