#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "aut/gf.hpp"
#include "aut/matrix.hpp"
#include "aut/preorder.hpp"
#include "aut/rng.hpp"

namespace aut::mat {

// Finite square matrix indexed by a set of preorder indices, rows and
// columns in canonical order.
struct FiniteMatrix {
  pre::IndexSet indices;
  Mat entries;

  bool operator==(const FiniteMatrix&) const = default;
};

// Restriction to a subset of the index set; RegionNotNested when sub is not
// contained in the matrix's indices.
FiniteMatrix restrict_to(const FiniteMatrix& f, const pre::IndexSet& sub);

struct Predicates {
  bool in_u = false;                // upper triangular w.r.t. the preorder
  bool in_u_star = false;           // identity + strictly upper deviation
  bool in_delta = false;            // supported on equivalence classes
  bool is_scalar = false;           // canonical window empty
  bool deviation_finite_rank = false;  // scalar 1, so deviation from I is windowed
};

struct DeviationRank {
  std::uint16_t scalar = 1;
  std::optional<std::uint32_t> rank;  // nullopt = infinite (scalar != 1)
};

enum class RandomProfile { General, Upper, Unitriangular, Diagonal };

// An element of AU_Lambda(F_q) of the form lambda*(identity) outside a
// finite strongly convex window, with an invertible core on the window.
// These elements form the computable dense subgroup: they contain the
// scalars, are closed under products and inverses, and approximate every
// group element in the entrywise topology.  Values are immutable and kept in
// canonical form: the window is the strongly-convex hull of the deviation
// support, so semantic equality is structural equality.
class WindowElement {
 public:
  static WindowElement make(const gf::Field& field, const pre::PreorderSpec& preorder,
                            std::uint16_t scalar, const pre::IndexSet& window, Mat core);
  static WindowElement identity(const gf::Field& field, const pre::PreorderSpec& preorder);
  static WindowElement scalar_matrix(const gf::Field& field, const pre::PreorderSpec& preorder,
                                     std::uint16_t scalar);
  // Element agreeing with f on its region and with the identity elsewhere.
  static WindowElement lift(const FiniteMatrix& f, const gf::Field& field,
                            const pre::PreorderSpec& preorder);
  static WindowElement random(const pre::PreorderSpec& preorder, const gf::Field& field,
                              const pre::IndexSet& window, RandomProfile profile,
                              std::uint64_t seed);
  static WindowElement random(const pre::PreorderSpec& preorder, const gf::Field& field,
                              const pre::IndexSet& window, RandomProfile profile, Rng& rng);

  const gf::Field& field() const { return field_; }
  const pre::PreorderSpec& preorder() const { return preorder_; }
  std::uint16_t scalar() const { return scalar_; }
  const pre::IndexSet& window() const { return window_; }
  const Mat& core() const { return core_; }

  std::uint16_t entry(pre::Index i, pre::Index j) const;

  WindowElement mul(const WindowElement& o) const;
  WindowElement inv() const;
  // The Neumann-series inverse for upper-triangular elements; must agree
  // with inv() exactly.
  WindowElement inv_triangular() const;
  // a = u * d with u unitriangular and d the class-block-diagonal part.
  std::pair<WindowElement, WindowElement> decompose() const;
  FiniteMatrix theta(const pre::IndexSet& region) const;
  Predicates predicates() const;
  bool in_congruence(const pre::IndexSet& region) const;
  bool projective_equal(const WindowElement& o) const;
  DeviationRank deviation_rank() const;
  WindowElement commutator(const WindowElement& o) const;  // [a,b] = a^-1 b^-1 a b
  WindowElement conjugate_by(const WindowElement& g) const;  // g^-1 a g

  std::string canonical_bytes() const;

  bool operator==(const WindowElement& o) const;
  bool operator!=(const WindowElement& o) const { return !(*this == o); }

 private:
  WindowElement(gf::Field field, pre::PreorderSpec preorder, std::uint16_t scalar,
                pre::IndexSet window, Mat core)
      : field_(std::move(field)),
        preorder_(std::move(preorder)),
        scalar_(scalar),
        window_(std::move(window)),
        core_(std::move(core)) {}

  static WindowElement canonical(gf::Field field, pre::PreorderSpec preorder,
                                 std::uint16_t scalar, pre::IndexSet window, Mat core);
  void require_context(const WindowElement& o) const;
  bool window_leq(std::size_t i, std::size_t j) const;

  gf::Field field_;
  pre::PreorderSpec preorder_;
  std::uint16_t scalar_;
  pre::IndexSet window_;
  Mat core_;
};

// I + c*e_{ij} as a window element (i != j).
WindowElement transvection(const gf::Field& field, const pre::PreorderSpec& preorder,
                           pre::Index i, pre::Index j, std::uint16_t c);
// Identity with a single diagonal entry replaced by a unit.
WindowElement diagonal_unit(const gf::Field& field, const pre::PreorderSpec& preorder,
                            pre::Index i, std::uint16_t unit);

}  // namespace aut::mat
