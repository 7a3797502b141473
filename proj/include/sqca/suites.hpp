#pragma once

#include "sqca/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sqca {

struct SuiteCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<SuiteCheck> checks;
  bool ok() const;
};

std::vector<std::string> suite_names();
// "all" runs every suite in order
std::vector<SuiteResult> run_suite(const std::string& name, std::uint64_t seed);
json suite_to_json(const SuiteResult& r);

// rational and radical systems with homogeneous projective actions
std::vector<GSystem> sample_gsystems(const FiniteGroup& g);
GSystem conjugate_gsystem(const GSystem& s, const Mat& u);
Mat random_even_unitary(const AmbientSpace& amb, Rng& rng);

// the qubit Paulis I, X, Z, XZ as a projective rep of Z2 x Z2
std::vector<Mat> pauli_rep();

struct ExampleProblem {
  std::string name;
  json problem;
};
std::vector<ExampleProblem> example_problems();

}  // namespace sqca
