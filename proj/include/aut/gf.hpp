#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "aut/error.hpp"

namespace aut::gf {

// Exact arithmetic in GF(p^m) for prime powers q = p^m <= 2^16.
//
// Elements are packed as integers in [0, q): the coefficient vector of the
// residue polynomial read as a base-p number, constant term least
// significant.  That packing is also the canonical enumeration order, so 0
// comes first and 1 second.  The modulus is the lexicographically least
// monic irreducible polynomial of degree m over Z_p, comparing coefficient
// sequences from the constant term upward; two Field values with equal q are
// therefore identical.
class Field {
 public:
  static Field make(std::uint32_t q);

  std::uint32_t q() const;
  std::uint32_t p() const;
  std::uint32_t m() const;
  // m+1 coefficients, constant term first; empty when m == 1.
  const std::vector<std::uint16_t>& modulus() const;

  std::uint16_t add(std::uint16_t a, std::uint16_t b) const;
  std::uint16_t sub(std::uint16_t a, std::uint16_t b) const;
  std::uint16_t neg(std::uint16_t a) const;
  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const;
  std::uint16_t inv(std::uint16_t a) const;
  std::uint16_t div(std::uint16_t a, std::uint16_t b) const;
  std::uint16_t pow(std::uint16_t a, std::uint64_t e) const;

  // A fixed generator of the unit group.
  std::uint16_t primitive() const;

  // Validates v < q; used when ingesting literals.
  std::uint16_t element(std::uint64_t v) const;

  bool operator==(const Field& o) const { return q() == o.q(); }
  bool operator!=(const Field& o) const { return !(*this == o); }

 private:
  struct Impl;
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct FieldElem {
  Field field;
  std::uint16_t v = 0;

  bool operator==(const FieldElem& o) const { return field == o.field && v == o.v; }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }
};

enum class ArithOp { Add, Sub, Mul, Div, Inv, Neg };

FieldElem operator+(const FieldElem& a, const FieldElem& b);
FieldElem operator-(const FieldElem& a, const FieldElem& b);
FieldElem operator*(const FieldElem& a, const FieldElem& b);
FieldElem operator/(const FieldElem& a, const FieldElem& b);
FieldElem operator-(const FieldElem& a);
FieldElem inverse(const FieldElem& a);

// Binary ops use both arguments; Inv/Neg ignore b.
FieldElem arith(const FieldElem& a, const FieldElem& b, ArithOp op);

// All q elements exactly once in canonical order.
std::vector<FieldElem> enumerate(const Field& f);

}  // namespace aut::gf
