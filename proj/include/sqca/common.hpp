#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqca {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class Errc {
  DimensionMismatch,
  InvalidInput,
  NotAssociative,
  NoIdentity,
  NoInverse,
  GroupTooLarge,
  SnapFailure,
  TooLarge,
  NoConvergence,
  NotCentralSimple,
  NotSemisimple,
  NoIntertwiner,
  AmbiguousKernel,
  ParityMismatch,
  SiteOutOfRange,
  RegionOutOfRange,
  ScalarExtractionFailure,
  NotEquivariant,
  NotInnerSuper,
  EmptyIntertwinerSpace,
  SingularY,
  FactorizationHypothesisViolated,
  InconsistentIndex,
  WindowMismatch,
  WindowTooSmall,
  NotARepresentation,
  NotProjective,
  NotNearestNeighbourAfterGrouping,
  BlockUnitaryNotEquivariant,
  IndexNotTrivial,
  IsomorphismNotFound,
  AmbientTooLarge,
  Unsupported,
  UnknownSuite,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }
  bool is_input_error() const;

 private:
  Errc code_;
};

struct Config {
  double tol_alg = 1e-9;
  double tol_snap = 1e-6;
  double tol_cocycle = 1e-9;
  int hom_cap = 24;
  int h2_group_cap = 8;
  int h2_modulus_cap = 4;
  long max_ambient = 4096;
};

Config& config();

using Rng = std::mt19937_64;

constexpr double kPi = 3.14159265358979323846;

}  // namespace sqca
