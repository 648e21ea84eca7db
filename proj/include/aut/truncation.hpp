#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "aut/gf.hpp"
#include "aut/matgroup.hpp"
#include "aut/matrix.hpp"
#include "aut/preorder.hpp"

namespace aut::trunc {

using mat::Mat;
using mat::MatHash;

// Group orders overflow 64 bits quickly; 128 bits cover every desk-scale
// region, with explicit overflow errors beyond.
using Count = unsigned __int128;

Count checked_mul(Count a, Count b);
Count checked_pow(Count base, std::uint64_t e);
std::string count_str(Count c);

constexpr std::uint64_t kDefaultMaxOrder = 1ull << 24;

// A finite convex region of a preorder over a fixed field, with the induced
// relation stored explicitly.
class Truncation {
 public:
  static Truncation make(const pre::PreorderSpec& preorder, const pre::IndexSet& region,
                         const gf::Field& field);

  const pre::PreorderSpec& preorder() const;
  const pre::IndexSet& region() const;
  const gf::Field& field() const;

  std::size_t size() const;
  bool leq(std::size_t i, std::size_t j) const;
  bool equiv(std::size_t i, std::size_t j) const { return leq(i, j) && leq(j, i); }
  // Equivalence classes of positions, canonical order.
  const std::vector<std::vector<std::uint32_t>>& classes() const;
  std::uint64_t strict_pair_count() const;

 private:
  struct Impl;
  explicit Truncation(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Deduplicated set of group elements over a truncation, keyed by the
// canonical byte encoding of the matrices; insertion order is the iteration
// order, so runs are reproducible.
class FiniteGroupSet {
 public:
  explicit FiniteGroupSet(Truncation ctx) : ctx_(std::move(ctx)) {}

  bool add(const Mat& m);
  bool contains(const Mat& m) const { return set_.contains(m); }
  std::size_t size() const { return order_.size(); }
  const Mat& member(std::size_t i) const { return *order_[i]; }
  const Truncation& context() const { return ctx_; }

  bool closed() const { return closed_; }
  void mark_closed() { closed_ = true; }

 private:
  Truncation ctx_;
  std::unordered_set<Mat, MatHash> set_;
  std::vector<const Mat*> order_;
  bool closed_ = false;
};

// |GL_n(q)| = prod_{i<n} (q^n - q^i).
Count gl_order(const gf::Field& f, std::uint32_t n);
// |U_region(q)| = prod over classes |GL_{n(k)}(q)| * q^(strict pairs).
Count order_U(const Truncation& t);
Count order_GL(const Truncation& t);

// All elements of U_region(q): class blocks from GL_{n(k)}, strict-pair
// entries free.  OrderBudgetExceeded when the order tops max_order.
void for_each_U(const Truncation& t, std::uint64_t max_order,
                const std::function<void(const Mat&)>& fn);
FiniteGroupSet enumerate_U(const Truncation& t, std::uint64_t max_order);

// Cached element list of GL_n(q); guarded by the same budget.
const std::vector<Mat>& gl_elements(const gf::Field& f, std::uint32_t n,
                                    std::uint64_t max_order);
// GL over the whole region as a closed set.
FiniteGroupSet enumerate_GL(const Truncation& t, std::uint64_t max_order);

// I + c*e_ij for all pairs and units; generates SL_n(q) for n >= 2.
std::vector<Mat> sl_generators(const gf::Field& f, std::uint32_t n);
// SL generators plus diag(primitive, 1, ..., 1); generates GL_n(q).
std::vector<Mat> gl_generators(const gf::Field& f, std::uint32_t n);

// Subgroup generated by breadth-first closure under right multiplication by
// the generators and their inverses.
FiniteGroupSet closure(const Truncation& t, const std::vector<Mat>& generators,
                       std::uint64_t max_order);

// Smallest subgroup containing g closed under products and conjugation by
// the ambient group (given as a closed enumerated set).
FiniteGroupSet normal_closure(const Truncation& t, const Mat& g, const FiniteGroupSet& ambient,
                              std::uint64_t max_order);
// Same, with the ambient group given by generators.
FiniteGroupSet normal_closure_by_generators(const Truncation& t, const Mat& g,
                                            const std::vector<Mat>& ambient_generators,
                                            std::uint64_t max_order);

// A small generating subset of a closed enumerated group, found greedily in
// insertion order.
std::vector<Mat> generating_subset(const FiniteGroupSet& group);

// Members of ambient commuting with every target.
FiniteGroupSet centralizer(const Truncation& t, const std::vector<Mat>& targets,
                           const FiniteGroupSet& ambient);

// s must be closed; true iff the det-1 members fill all of SL.
bool contains_SL(const Truncation& t, const FiniteGroupSet& s);

// Index of the congruence subgroup of the inner region: the size of the
// finite quotient through which U acts on the inner window.
Count index_congruence(const Truncation& outer, const pre::IndexSet& inner_region);

}  // namespace aut::trunc
