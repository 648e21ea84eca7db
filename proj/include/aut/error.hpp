#pragma once

#include <stdexcept>
#include <string>

namespace aut {

// Typed failure conditions surfaced by the library.  CLI maps these to
// exit code 2 (input/usage) while verification failures use exit code 1.
enum class Err {
  NotAPrimePower,
  FieldTooLarge,
  DivisionByZero,
  FieldMismatch,
  InvalidArgument,
  InvalidIndex,
  EmptySet,
  PartNotConvex,
  PartsOverlap,
  InvalidSpec,
  SingularCore,
  WindowNotStronglyConvex,
  ZeroScalar,
  ContextMismatch,
  NotUpperTriangular,
  SingularDiagonalBlock,
  RegionNotConvex,
  RegionNotNested,
  SingularInput,
  OrderBudgetExceeded,
  Overflow,
  UnsupportedSpec,
  HypothesisViolated,
  RegionTooSmall,
  WrongBaseShape,
  ParseError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NotAPrimePower: return "NotAPrimePower";
    case Err::FieldTooLarge: return "FieldTooLarge";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::InvalidArgument: return "InvalidArgument";
    case Err::InvalidIndex: return "InvalidIndex";
    case Err::EmptySet: return "EmptySet";
    case Err::PartNotConvex: return "PartNotConvex";
    case Err::PartsOverlap: return "PartsOverlap";
    case Err::InvalidSpec: return "InvalidSpec";
    case Err::SingularCore: return "SingularCore";
    case Err::WindowNotStronglyConvex: return "WindowNotStronglyConvex";
    case Err::ZeroScalar: return "ZeroScalar";
    case Err::ContextMismatch: return "ContextMismatch";
    case Err::NotUpperTriangular: return "NotUpperTriangular";
    case Err::SingularDiagonalBlock: return "SingularDiagonalBlock";
    case Err::RegionNotConvex: return "RegionNotConvex";
    case Err::RegionNotNested: return "RegionNotNested";
    case Err::SingularInput: return "SingularInput";
    case Err::OrderBudgetExceeded: return "OrderBudgetExceeded";
    case Err::Overflow: return "Overflow";
    case Err::UnsupportedSpec: return "UnsupportedSpec";
    case Err::HypothesisViolated: return "HypothesisViolated";
    case Err::RegionTooSmall: return "RegionTooSmall";
    case Err::WrongBaseShape: return "WrongBaseShape";
    case Err::ParseError: return "ParseError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& detail)
      : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace aut
