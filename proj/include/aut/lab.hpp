#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aut/gf.hpp"
#include "aut/matgroup.hpp"
#include "aut/preorder.hpp"
#include "aut/truncation.hpp"

namespace aut::lab {

// One configuration for a verification suite: a preorder, a field, a nested
// pair of finite convex regions, and the sampling parameters.
struct SuiteConfig {
  pre::PreorderSpec preorder = pre::PreorderSpec::plain(pre::Base::Z);
  gf::Field field = gf::Field::make(2);
  pre::IndexSet inner;
  pre::IndexSet outer;
  std::uint32_t trials = 20;
  std::uint64_t seed = 0;
  std::uint64_t max_order = trunc::kDefaultMaxOrder;
};

struct CaseRecord {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseRecord> cases;
  double runtime_ms = 0;  // not part of the printed lines; reports stay byte-identical

  std::size_t failures() const;
  bool pass() const { return failures() == 0; }
  // Per-case key=value lines plus the summary line.
  std::vector<std::string> lines() const;
};

// Topological-simplicity machinery at finite scale: normal closures of
// noncentral restrictions contain SL, the determinant-correcting SL-lift
// restricts back, and the order count closes the argument.  The finite
// simplicity hypothesis (n = 2 needs |F| > 3) is enforced: direct runs raise
// HypothesisViolated, matrix runs with allow_excluded report those
// combinations as excluded instead.
SuiteReport lab_simplicity_truncated(const SuiteConfig& cfg, bool allow_excluded = false);

// Centre at finite scale: within U over the outer region, only the scalars
// commute with a GL-generating family of restricted window elements.
SuiteReport lab_centre(const SuiteConfig& cfg);

// Quasicentre at finite scale: elements of U over the outer region that
// centralize the congruence family (identity on the inner window) restrict
// to scalars on the inner window.
SuiteReport lab_quasicentre(const SuiteConfig& cfg);

struct ExampleFamily {
  enum class Kind { H, L, B } kind = Kind::H;
  std::int64_t param = 0;  // n for L, k for B

  static ExampleFamily h() { return {Kind::H, 0}; }
  static ExampleFamily l(std::int64_t n) { return {Kind::L, n}; }
  static ExampleFamily b(std::int64_t k) { return {Kind::B, k}; }
};

// The C-stability example subgroups: H (first row, base N), L_n (above the
// n-th superdiagonal, base N), B_k (rows below k against columns above k,
// base Z).  Verifies the product law, abelianness, normality, and the
// centralizer contrast between H/B and L_n.
SuiteReport lab_example_subgroups(const SuiteConfig& cfg, const ExampleFamily& family);

// The finite-rank dense normal subgroup: conjugation preserves deviation
// rank, and the theta-lift of a restriction approximates any unit-scalar
// element inside the congruence subgroup.
SuiteReport lab_dense_normal(const SuiteConfig& cfg);

// Every suite applicable to the config's base shape.
std::vector<SuiteReport> run_all(const SuiteConfig& cfg);

}  // namespace aut::lab
