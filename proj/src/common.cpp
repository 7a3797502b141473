#include "sqca/common.hpp"

#include <cstdlib>

namespace sqca {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::NoInverse: return "NoInverse";
    case Errc::GroupTooLarge: return "GroupTooLarge";
    case Errc::SnapFailure: return "SnapFailure";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NotCentralSimple: return "NotCentralSimple";
    case Errc::NotSemisimple: return "NotSemisimple";
    case Errc::NoIntertwiner: return "NoIntertwiner";
    case Errc::AmbiguousKernel: return "AmbiguousKernel";
    case Errc::ParityMismatch: return "ParityMismatch";
    case Errc::SiteOutOfRange: return "SiteOutOfRange";
    case Errc::RegionOutOfRange: return "RegionOutOfRange";
    case Errc::ScalarExtractionFailure: return "ScalarExtractionFailure";
    case Errc::NotEquivariant: return "NotEquivariant";
    case Errc::NotInnerSuper: return "NotInnerSuper";
    case Errc::EmptyIntertwinerSpace: return "EmptyIntertwinerSpace";
    case Errc::SingularY: return "SingularY";
    case Errc::FactorizationHypothesisViolated: return "FactorizationHypothesisViolated";
    case Errc::InconsistentIndex: return "InconsistentIndex";
    case Errc::WindowMismatch: return "WindowMismatch";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::NotARepresentation: return "NotARepresentation";
    case Errc::NotProjective: return "NotProjective";
    case Errc::NotNearestNeighbourAfterGrouping: return "NotNearestNeighbourAfterGrouping";
    case Errc::BlockUnitaryNotEquivariant: return "BlockUnitaryNotEquivariant";
    case Errc::IndexNotTrivial: return "IndexNotTrivial";
    case Errc::IsomorphismNotFound: return "IsomorphismNotFound";
    case Errc::AmbientTooLarge: return "AmbientTooLarge";
    case Errc::Unsupported: return "Unsupported";
    case Errc::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

bool Error::is_input_error() const {
  switch (code_) {
    case Errc::DimensionMismatch:
    case Errc::InvalidInput:
    case Errc::NotAssociative:
    case Errc::NoIdentity:
    case Errc::NoInverse:
    case Errc::GroupTooLarge:
    case Errc::TooLarge:
    case Errc::SiteOutOfRange:
    case Errc::RegionOutOfRange:
    case Errc::WindowMismatch:
    case Errc::WindowTooSmall:
    case Errc::NotARepresentation:
    case Errc::NotProjective:
    case Errc::AmbientTooLarge:
    case Errc::UnknownSuite:
      return true;
    default:
      return false;
  }
}

Config& config() {
  static Config cfg = [] {
    Config c;
    if (const char* s = std::getenv("SQCA_MAX_AMBIENT")) {
      char* end = nullptr;
      long v = std::strtol(s, &end, 10);
      if (end != s && v > 0) c.max_ambient = v;
    }
    return c;
  }();
  return cfg;
}

}  // namespace sqca
