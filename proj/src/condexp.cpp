#include "sqca/condexp.hpp"

namespace sqca {

RegionExpectation::RegionExpectation(const TracialFrame& frame, std::vector<Eigen::Index> region)
    : algebra_(region_algebra(frame.chain, region)) {}

Mat cond_expect(const Mat& x, const std::vector<Eigen::Index>& region, const TracialFrame& frame) {
  if (x.rows() != frame.ambient.dim() || x.cols() != frame.ambient.dim())
    throw Error(Errc::DimensionMismatch, "cond_expect input");
  return RegionExpectation(frame, region)(x);
}

}  // namespace sqca
