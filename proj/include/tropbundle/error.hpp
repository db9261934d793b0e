#pragma once

#include <stdexcept>
#include <string>

namespace tb {

enum class Err {
  None = 0,
  Parse,
  InvalidInput,
  ExchangeAxiomViolation,
  LoopDetected,
  EmptyBases,
  NotABasis,
  ElementInBasis,
  NotAFlat,
  RankMismatch,
  NotInjective,
  NotAnExtension,
  NotBergman,
  NotNested,
  DimensionMismatch,
  NonSmoothCone,
  IncompleteFan,
  PointNotCovered,
  NonMaximalCone,
  UnboundedPolyhedron,
  RowNotBergman,
  NoCommonApartment,
  UnboundedSupport,
  TooLarge,
  ConeImageNotContained,
  NotAWall,
  NotAmple,
  WrongFan,
  ScaleGuard,
};

const char* err_name(Err e);

// Domain error; `what()` is "<ErrName>: <detail>", detail optional.
class TbError : public std::runtime_error {
 public:
  TbError(Err code, const std::string& detail = "");
  Err code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  Err code_;
  std::string detail_;
};

[[noreturn]] void fail(Err code, const std::string& detail = "");

}  // namespace tb
