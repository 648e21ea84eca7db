#include "aut/truncation.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace aut::trunc {

Count checked_mul(Count a, Count b) {
  if (a != 0 && b > static_cast<Count>(-1) / a)
    fail(Err::Overflow, "group order exceeds 128-bit range");
  return a * b;
}

Count checked_pow(Count base, std::uint64_t e) {
  Count r = 1;
  while (e) {
    if (e & 1) r = checked_mul(r, base);
    e >>= 1;
    if (e) base = checked_mul(base, base);
  }
  return r;
}

std::string count_str(Count c) {
  if (c == 0) return "0";
  std::string out;
  while (c > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
    c /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- Truncation

struct Truncation::Impl {
  pre::PreorderSpec preorder = pre::PreorderSpec::plain(pre::Base::Z);
  pre::IndexSet region;
  gf::Field field = gf::Field::make(2);
  std::vector<std::uint8_t> rel;  // size() x size()
  std::vector<std::vector<std::uint32_t>> classes;
  std::uint64_t strict_pairs = 0;
};

Truncation Truncation::make(const pre::PreorderSpec& preorder, const pre::IndexSet& region,
                            const gf::Field& field) {
  if (!preorder.is_convex(region)) fail(Err::RegionNotConvex, "truncation region is not convex");
  auto impl = std::make_shared<Impl>();
  impl->preorder = preorder;
  impl->region = region;
  impl->field = field;
  const std::size_t n = region.size();
  impl->rel.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (preorder.leq(region[i], region[j])) impl->rel[i * n + j] = 1;

  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<std::uint32_t> cls;
    for (std::size_t j = 0; j < n; ++j)
      if (impl->rel[i * n + j] && impl->rel[j * n + i]) {
        cls.push_back(static_cast<std::uint32_t>(j));
        seen[j] = 1;
      }
    impl->classes.push_back(std::move(cls));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (impl->rel[i * n + j] && !impl->rel[j * n + i]) ++impl->strict_pairs;
  return Truncation(std::move(impl));
}

const pre::PreorderSpec& Truncation::preorder() const { return impl_->preorder; }
const pre::IndexSet& Truncation::region() const { return impl_->region; }
const gf::Field& Truncation::field() const { return impl_->field; }
std::size_t Truncation::size() const { return impl_->region.size(); }
bool Truncation::leq(std::size_t i, std::size_t j) const {
  return impl_->rel[i * impl_->region.size() + j];
}
const std::vector<std::vector<std::uint32_t>>& Truncation::classes() const {
  return impl_->classes;
}
std::uint64_t Truncation::strict_pair_count() const { return impl_->strict_pairs; }

// ------------------------------------------------------------ FiniteGroupSet

bool FiniteGroupSet::add(const Mat& m) {
  auto [it, fresh] = set_.insert(m);
  if (fresh) order_.push_back(&*it);
  return fresh;
}

// ------------------------------------------------------------------- orders

Count gl_order(const gf::Field& f, std::uint32_t n) {
  const Count q = f.q();
  const Count qn = checked_pow(q, n);
  Count r = 1;
  for (std::uint32_t i = 0; i < n; ++i)
    r = checked_mul(r, qn - checked_pow(q, i));
  return r;
}

Count order_U(const Truncation& t) {
  Count r = 1;
  for (const auto& cls : t.classes())
    r = checked_mul(r, gl_order(t.field(), static_cast<std::uint32_t>(cls.size())));
  return checked_mul(r, checked_pow(t.field().q(), t.strict_pair_count()));
}

Count order_GL(const Truncation& t) {
  return gl_order(t.field(), static_cast<std::uint32_t>(t.size()));
}

// ------------------------------------------------------------- enumeration

const std::vector<Mat>& gl_elements(const gf::Field& f, std::uint32_t n,
                                    std::uint64_t max_order) {
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Mat>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(f.q(), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  if (gl_order(f, n) > max_order)
    fail(Err::OrderBudgetExceeded,
         "|GL_" + std::to_string(n) + "(" + std::to_string(f.q()) + ")| = " +
             count_str(gl_order(f, n)) + " exceeds the budget " + std::to_string(max_order));

  std::vector<Mat> out;
  const std::uint64_t q = f.q();
  const std::uint32_t cells = n * n;
  std::vector<std::uint16_t> digits(cells, 0);
  while (true) {
    Mat m{n, std::vector<std::uint16_t>(digits.begin(), digits.end())};
    if (invertible(f, m)) out.push_back(std::move(m));
    std::uint32_t pos = 0;
    while (pos < cells) {
      if (++digits[pos] < q) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == cells) break;
  }
  return cache.emplace(key, std::move(out)).first->second;
}

void for_each_U(const Truncation& t, std::uint64_t max_order,
                const std::function<void(const Mat&)>& fn) {
  const Count total = order_U(t);
  if (total > max_order)
    fail(Err::OrderBudgetExceeded, "|U| = " + count_str(total) + " exceeds the budget " +
                                       std::to_string(max_order));
  const std::uint32_t n = static_cast<std::uint32_t>(t.size());
  const gf::Field& f = t.field();
  const std::uint64_t q = f.q();

  const auto& classes = t.classes();
  std::vector<const std::vector<Mat>*> block_lists;
  block_lists.reserve(classes.size());
  for (const auto& cls : classes)
    block_lists.push_back(&gl_elements(f, static_cast<std::uint32_t>(cls.size()), max_order));

  std::vector<std::pair<std::uint32_t, std::uint32_t>> strict;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (t.leq(i, j) && !t.leq(j, i)) strict.emplace_back(i, j);

  std::vector<std::size_t> block_pick(classes.size(), 0);
  std::vector<std::uint16_t> free_vals(strict.size(), 0);
  Mat m = Mat::zero(n);
  while (true) {
    std::fill(m.a.begin(), m.a.end(), 0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const auto& cls = classes[c];
      const Mat& block = (*block_lists[c])[block_pick[c]];
      for (std::size_t a = 0; a < cls.size(); ++a)
        for (std::size_t b = 0; b < cls.size(); ++b)
          m.at(cls[a], cls[b]) = block.at(static_cast<std::uint32_t>(a),
                                          static_cast<std::uint32_t>(b));
    }
    for (std::size_t s = 0; s < strict.size(); ++s)
      m.at(strict[s].first, strict[s].second) = free_vals[s];
    fn(m);

    // odometer: free entries first, then block choices
    std::size_t pos = 0;
    for (; pos < strict.size(); ++pos) {
      if (++free_vals[pos] < q) break;
      free_vals[pos] = 0;
    }
    if (pos < strict.size()) continue;
    std::size_t bc = 0;
    for (; bc < classes.size(); ++bc) {
      if (++block_pick[bc] < block_lists[bc]->size()) break;
      block_pick[bc] = 0;
    }
    if (bc == classes.size()) break;
  }
}

FiniteGroupSet enumerate_U(const Truncation& t, std::uint64_t max_order) {
  FiniteGroupSet out(t);
  for_each_U(t, max_order, [&out](const Mat& m) { out.add(m); });
  out.mark_closed();
  return out;
}

FiniteGroupSet enumerate_GL(const Truncation& t, std::uint64_t max_order) {
  FiniteGroupSet out(t);
  for (const Mat& m : gl_elements(t.field(), static_cast<std::uint32_t>(t.size()), max_order))
    out.add(m);
  out.mark_closed();
  return out;
}

// --------------------------------------------------------------- generators

std::vector<Mat> sl_generators(const gf::Field& f, std::uint32_t n) {
  std::vector<Mat> out;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::uint32_t c = 1; c < f.q(); ++c) {
        Mat m = Mat::identity(n);
        m.at(i, j) = static_cast<std::uint16_t>(c);
        out.push_back(std::move(m));
      }
    }
  return out;
}

std::vector<Mat> gl_generators(const gf::Field& f, std::uint32_t n) {
  std::vector<Mat> out = sl_generators(f, n);
  if (f.q() > 2 && n >= 1) {
    Mat d = Mat::identity(n);
    d.at(0, 0) = f.primitive();
    out.push_back(std::move(d));
  }
  if (out.empty()) out.push_back(Mat::identity(n));
  return out;
}

// ------------------------------------------------------------------ closure

namespace {

void require_budget(std::size_t size, std::uint64_t max_order) {
  if (size > max_order)
    fail(Err::OrderBudgetExceeded,
         "closure grew past the budget " + std::to_string(max_order));
}

// Breadth-first right-multiplication closure, extending `set` in place.
// `edges` must contain each generator and its inverse.
void close_under(FiniteGroupSet& set, const std::vector<Mat>& edges, std::uint64_t max_order,
                 std::size_t start_from) {
  const gf::Field& f = set.context().field();
  std::size_t head = start_from;
  while (head < set.size()) {
    const Mat current = set.member(head);
    ++head;
    for (const Mat& e : edges) {
      Mat next = mul(f, current, e);
      if (set.add(next)) require_budget(set.size(), max_order);
    }
  }
}

std::vector<Mat> with_inverses(const gf::Field& f, const std::vector<Mat>& gens) {
  std::vector<Mat> edges;
  edges.reserve(gens.size() * 2);
  for (const Mat& g : gens) {
    auto gi = inverse(f, g);
    if (!gi) fail(Err::SingularInput, "generator is singular");
    edges.push_back(g);
    if (*gi != g) edges.push_back(std::move(*gi));
  }
  return edges;
}

}  // namespace

FiniteGroupSet closure(const Truncation& t, const std::vector<Mat>& generators,
                       std::uint64_t max_order) {
  FiniteGroupSet out(t);
  out.add(Mat::identity(static_cast<std::uint32_t>(t.size())));
  close_under(out, with_inverses(t.field(), generators), max_order, 0);
  out.mark_closed();
  return out;
}

FiniteGroupSet normal_closure_by_generators(const Truncation& t, const Mat& g,
                                            const std::vector<Mat>& ambient_generators,
                                            std::uint64_t max_order) {
  const gf::Field& f = t.field();
  struct ConjGen {
    Mat x, xi;
  };
  std::vector<ConjGen> conj;
  for (const Mat& x : ambient_generators) {
    auto xi = inverse(f, x);
    if (!xi) fail(Err::SingularInput, "ambient generator is singular");
    conj.push_back({x, std::move(*xi)});
  }

  FiniteGroupSet set(t);
  set.add(Mat::identity(static_cast<std::uint32_t>(t.size())));
  std::vector<Mat> edges;

  // Orbit of g under conjugation by the ambient generators; every new orbit
  // member joins the subgroup generators and the closure is extended
  // incrementally.
  std::vector<Mat> orbit_queue{g};
  std::unordered_set<Mat, MatHash> orbit_seen{g};
  while (!orbit_queue.empty()) {
    if (orbit_seen.size() > max_order)
      fail(Err::OrderBudgetExceeded,
           "conjugation orbit grew past the budget " + std::to_string(max_order));
    Mat v = std::move(orbit_queue.back());
    orbit_queue.pop_back();
    if (!set.contains(v)) {
      const std::size_t before = set.size();
      auto vi = inverse(f, v);
      std::vector<Mat> new_edges{v};
      if (*vi != v) new_edges.push_back(std::move(*vi));
      // seed: all current members times the new generator
      for (std::size_t i = 0; i < before; ++i)
        for (const Mat& e : new_edges) {
          Mat next = mul(f, set.member(i), e);
          if (set.add(next)) require_budget(set.size(), max_order);
        }
      for (const Mat& e : new_edges) edges.push_back(e);
      close_under(set, edges, max_order, before);
    }
    for (const ConjGen& c : conj) {
      Mat w = mul(f, mul(f, c.xi, v), c.x);
      if (orbit_seen.insert(w).second) orbit_queue.push_back(std::move(w));
    }
  }
  set.mark_closed();
  return set;
}

std::vector<Mat> generating_subset(const FiniteGroupSet& group) {
  const Truncation& t = group.context();
  FiniteGroupSet span(t);
  span.add(Mat::identity(static_cast<std::uint32_t>(t.size())));
  std::vector<Mat> gens;
  std::vector<Mat> edges;
  for (std::size_t i = 0; i < group.size(); ++i) {
    const Mat& m = group.member(i);
    if (span.contains(m)) continue;
    gens.push_back(m);
    auto mi = inverse(t.field(), m);
    const std::size_t before = span.size();
    std::vector<Mat> new_edges{m};
    if (*mi != m) new_edges.push_back(std::move(*mi));
    for (std::size_t k = 0; k < before; ++k)
      for (const Mat& e : new_edges) span.add(mul(t.field(), span.member(k), e));
    for (const Mat& e : new_edges) edges.push_back(e);
    close_under(span, edges, ~0ull, before);
    if (span.size() == group.size()) break;
  }
  return gens;
}

FiniteGroupSet normal_closure(const Truncation& t, const Mat& g, const FiniteGroupSet& ambient,
                              std::uint64_t max_order) {
  if (!ambient.closed()) fail(Err::InvalidArgument, "ambient set must be closed");
  if (!ambient.contains(g)) fail(Err::InvalidArgument, "element lies outside the ambient group");
  return normal_closure_by_generators(t, g, generating_subset(ambient), max_order);
}

FiniteGroupSet centralizer(const Truncation& t, const std::vector<Mat>& targets,
                           const FiniteGroupSet& ambient) {
  const gf::Field& f = t.field();
  FiniteGroupSet out(t);
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    const Mat& m = ambient.member(i);
    bool commutes = true;
    for (const Mat& g : targets)
      if (mul(f, m, g) != mul(f, g, m)) {
        commutes = false;
        break;
      }
    if (commutes) out.add(m);
  }
  return out;
}

bool contains_SL(const Truncation& t, const FiniteGroupSet& s) {
  if (!s.closed()) fail(Err::InvalidArgument, "set must be closed");
  const Count sl = order_GL(t) / (t.field().q() - 1);
  Count det_one = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (det(t.field(), s.member(i)) == 1) ++det_one;
  return det_one == sl;
}

Count index_congruence(const Truncation& outer, const pre::IndexSet& inner_region) {
  if (!outer.preorder().is_convex(inner_region))
    fail(Err::RegionNotConvex, "inner region is not convex");
  if (!inner_region.subset_of(outer.region()))
    fail(Err::RegionNotNested, "inner region is not contained in the outer region");
  if (inner_region.empty()) return 1;
  return order_U(Truncation::make(outer.preorder(), inner_region, outer.field()));
}

}  // namespace aut::trunc
