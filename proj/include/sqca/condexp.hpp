#pragma once

#include "sqca/superalg.hpp"

namespace sqca {

struct TracialFrame {
  ChainEmbedding chain;
  AmbientSpace ambient;

  explicit TracialFrame(ChainEmbedding c) : chain(std::move(c)), ambient(chain.ambient()) {}
  double trace(const Mat& x) const { return x.trace().real() / double(ambient.dim()); }
  cplx ctrace(const Mat& x) const { return x.trace() / double(ambient.dim()); }
};

Mat cond_expect(const Mat& x, const std::vector<Eigen::Index>& region, const TracialFrame& frame);

// projection onto a fixed region, reusable across inputs
class RegionExpectation {
 public:
  RegionExpectation(const TracialFrame& frame, std::vector<Eigen::Index> region);
  Mat operator()(const Mat& x) const { return algebra_.project(x); }
  const GradedSubalgebra& algebra() const { return algebra_; }

 private:
  GradedSubalgebra algebra_;
};

}  // namespace sqca
