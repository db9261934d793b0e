#include "tropbundle/error.hpp"

namespace tb {

const char* err_name(Err e) {
  switch (e) {
    case Err::None: return "None";
    case Err::Parse: return "Parse";
    case Err::InvalidInput: return "InvalidInput";
    case Err::ExchangeAxiomViolation: return "ExchangeAxiomViolation";
    case Err::LoopDetected: return "LoopDetected";
    case Err::EmptyBases: return "EmptyBases";
    case Err::NotABasis: return "NotABasis";
    case Err::ElementInBasis: return "ElementInBasis";
    case Err::NotAFlat: return "NotAFlat";
    case Err::RankMismatch: return "RankMismatch";
    case Err::NotInjective: return "NotInjective";
    case Err::NotAnExtension: return "NotAnExtension";
    case Err::NotBergman: return "NotBergman";
    case Err::NotNested: return "NotNested";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NonSmoothCone: return "NonSmoothCone";
    case Err::IncompleteFan: return "IncompleteFan";
    case Err::PointNotCovered: return "PointNotCovered";
    case Err::NonMaximalCone: return "NonMaximalCone";
    case Err::UnboundedPolyhedron: return "UnboundedPolyhedron";
    case Err::RowNotBergman: return "RowNotBergman";
    case Err::NoCommonApartment: return "NoCommonApartment";
    case Err::UnboundedSupport: return "UnboundedSupport";
    case Err::TooLarge: return "TooLarge";
    case Err::ConeImageNotContained: return "ConeImageNotContained";
    case Err::NotAWall: return "NotAWall";
    case Err::NotAmple: return "NotAmple";
    case Err::WrongFan: return "WrongFan";
    case Err::ScaleGuard: return "ScaleGuard";
  }
  return "Unknown";
}

static std::string format_what(Err code, const std::string& detail) {
  std::string s = err_name(code);
  if (!detail.empty()) {
    s += ": ";
    s += detail;
  }
  return s;
}

TbError::TbError(Err code, const std::string& detail)
    : std::runtime_error(format_what(code, detail)), code_(code), detail_(detail) {}

void fail(Err code, const std::string& detail) { throw TbError(code, detail); }

}  // namespace tb
