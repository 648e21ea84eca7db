#include "aut/matgroup.hpp"

#include <algorithm>
#include <string>

namespace aut::mat {

namespace {

std::string idx_str(pre::Index i) {
  return std::to_string(i.block) + ":" + std::to_string(i.slot);
}

}  // namespace

FiniteMatrix restrict_to(const FiniteMatrix& f, const pre::IndexSet& sub) {
  if (!sub.subset_of(f.indices))
    fail(Err::RegionNotNested, "restriction target is not contained in the matrix region");
  std::vector<std::uint32_t> pos;
  pos.reserve(sub.size());
  for (pre::Index i : sub) pos.push_back(static_cast<std::uint32_t>(*f.indices.position_of(i)));
  return {sub, restrict_positions(f.entries, pos)};
}

// ------------------------------------------------------------ WindowElement

WindowElement WindowElement::make(const gf::Field& field, const pre::PreorderSpec& preorder,
                                  std::uint16_t scalar, const pre::IndexSet& window, Mat core) {
  if (scalar == 0 || scalar >= field.q()) fail(Err::ZeroScalar, "scalar must be a unit");
  for (pre::Index i : window) preorder.require_valid(i);
  if (!preorder.is_strongly_convex(window)) {
    std::string detail = "window {";
    for (std::size_t k = 0; k < window.size(); ++k)
      detail += (k ? ", " : "") + idx_str(window[k]);
    fail(Err::WindowNotStronglyConvex, detail + "} is not strongly convex");
  }
  if (core.n != window.size()) fail(Err::InvalidArgument, "core size does not match window");
  for (std::uint16_t v : core.a)
    if (v >= field.q()) fail(Err::InvalidArgument, "core entry out of field range");
  if (core.n > 0 && !invertible(field, core))
    fail(Err::SingularCore, "core on the window is singular");
  return canonical(field, preorder, scalar, window, std::move(core));
}

WindowElement WindowElement::canonical(gf::Field field, pre::PreorderSpec preorder,
                                       std::uint16_t scalar, pre::IndexSet window, Mat core) {
  // Deviation support: positions whose row or column differs from the
  // lambda*identity pattern.  The canonical window is its strongly convex
  // hull; everything outside it already acts as lambda*I.
  const std::size_t n = window.size();
  std::vector<std::uint8_t> deviates(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint16_t want = (i == j) ? scalar : 0;
      if (core.at(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)) != want) {
        deviates[i] = 1;
        deviates[j] = 1;
      }
    }
  std::vector<pre::Index> support;
  for (std::size_t i = 0; i < n; ++i)
    if (deviates[i]) support.push_back(window[i]);

  if (support.empty())
    return WindowElement(std::move(field), std::move(preorder), scalar, {}, Mat::zero(0));
  if (support.size() == n)
    return WindowElement(std::move(field), std::move(preorder), scalar, std::move(window),
                         std::move(core));

  pre::IndexSet trimmed = preorder.hull(pre::IndexSet::of(std::move(support)));
  std::vector<std::uint32_t> pos;
  pos.reserve(trimmed.size());
  for (pre::Index i : trimmed) pos.push_back(static_cast<std::uint32_t>(*window.position_of(i)));
  Mat small = restrict_positions(core, pos);
  return WindowElement(std::move(field), std::move(preorder), scalar, std::move(trimmed),
                       std::move(small));
}

WindowElement WindowElement::identity(const gf::Field& field, const pre::PreorderSpec& preorder) {
  return WindowElement(field, preorder, 1, {}, Mat::zero(0));
}

WindowElement WindowElement::scalar_matrix(const gf::Field& field,
                                           const pre::PreorderSpec& preorder,
                                           std::uint16_t scalar) {
  if (scalar == 0 || scalar >= field.q()) fail(Err::ZeroScalar, "scalar must be a unit");
  return WindowElement(field, preorder, scalar, {}, Mat::zero(0));
}

WindowElement WindowElement::lift(const FiniteMatrix& f, const gf::Field& field,
                                  const pre::PreorderSpec& preorder) {
  if (!preorder.is_convex(f.indices)) fail(Err::RegionNotConvex, "lift region is not convex");
  if (f.entries.n != f.indices.size()) fail(Err::InvalidArgument, "matrix does not fit region");
  if (f.indices.empty()) return identity(field, preorder);
  if (!invertible(field, f.entries)) fail(Err::SingularInput, "lifted matrix is singular");

  pre::IndexSet window = preorder.hull(f.indices);
  Mat core = Mat::identity(static_cast<std::uint32_t>(window.size()));
  for (std::size_t i = 0; i < f.indices.size(); ++i)
    for (std::size_t j = 0; j < f.indices.size(); ++j) {
      const std::size_t wi = *window.position_of(f.indices[i]);
      const std::size_t wj = *window.position_of(f.indices[j]);
      core.at(static_cast<std::uint32_t>(wi), static_cast<std::uint32_t>(wj)) =
          f.entries.at(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  return canonical(field, preorder, 1, std::move(window), std::move(core));
}

std::uint16_t WindowElement::entry(pre::Index i, pre::Index j) const {
  preorder_.require_valid(i);
  preorder_.require_valid(j);
  const auto pi = window_.position_of(i);
  const auto pj = window_.position_of(j);
  if (pi && pj) return core_.at(static_cast<std::uint32_t>(*pi), static_cast<std::uint32_t>(*pj));
  return i == j ? scalar_ : 0;
}

void WindowElement::require_context(const WindowElement& o) const {
  if (field_ != o.field_ || preorder_ != o.preorder_)
    fail(Err::ContextMismatch, "elements live over different fields or preorders");
}

bool WindowElement::window_leq(std::size_t i, std::size_t j) const {
  return preorder_.leq(window_[i], window_[j]);
}

WindowElement WindowElement::mul(const WindowElement& o) const {
  require_context(o);
  const std::uint16_t s = field_.mul(scalar_, o.scalar_);
  if (window_.empty() && o.window_.empty())
    return WindowElement(field_, preorder_, s, {}, Mat::zero(0));

  pre::IndexSet w = preorder_.hull(window_.unite(o.window_));
  const std::uint32_t n = static_cast<std::uint32_t>(w.size());
  Mat a = Mat::zero(n), b = Mat::zero(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      a.at(i, j) = entry(w[i], w[j]);
      b.at(i, j) = o.entry(w[i], w[j]);
    }
  return canonical(field_, preorder_, s, std::move(w), mat::mul(field_, a, b));
}

WindowElement WindowElement::inv() const {
  Mat ic = Mat::zero(0);
  if (core_.n > 0) ic = *inverse(field_, core_);
  return canonical(field_, preorder_, field_.inv(scalar_), window_, std::move(ic));
}

WindowElement WindowElement::inv_triangular() const {
  if (!predicates().in_u)
    fail(Err::NotUpperTriangular, "element is not upper triangular w.r.t. the preorder");
  Mat ic = Mat::zero(0);
  if (core_.n > 0)
    ic = triangular_inverse(field_, core_,
                            [this](std::uint32_t i, std::uint32_t j) { return window_leq(i, j); });
  return canonical(field_, preorder_, field_.inv(scalar_), window_, std::move(ic));
}

std::pair<WindowElement, WindowElement> WindowElement::decompose() const {
  if (!predicates().in_u)
    fail(Err::NotUpperTriangular, "decomposition requires an upper triangular element");
  const std::uint32_t n = core_.n;
  Mat dcore = Mat::zero(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (window_leq(i, j) && window_leq(j, i)) dcore.at(i, j) = core_.at(i, j);
  WindowElement d = canonical(field_, preorder_, scalar_, window_, std::move(dcore));
  WindowElement u = mul(d.inv());
  return {std::move(u), std::move(d)};
}

FiniteMatrix WindowElement::theta(const pre::IndexSet& region) const {
  if (!preorder_.is_convex(region)) fail(Err::RegionNotConvex, "theta region is not convex");
  const std::uint32_t n = static_cast<std::uint32_t>(region.size());
  Mat m = Mat::zero(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) m.at(i, j) = entry(region[i], region[j]);
  return {region, std::move(m)};
}

Predicates WindowElement::predicates() const {
  Predicates p;
  const std::uint32_t n = core_.n;
  p.in_u = true;
  p.in_u_star = (scalar_ == 1);
  p.in_delta = true;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      const std::uint16_t v = core_.at(i, j);
      const bool ij = window_leq(i, j), ji = window_leq(j, i);
      if (v != 0 && !ij) p.in_u = false;
      if (ji && v != (i == j ? 1 : 0)) p.in_u_star = false;
      if (!(ij && ji) && v != 0) p.in_delta = false;
    }
  p.is_scalar = window_.empty();
  p.deviation_finite_rank = (scalar_ == 1);
  return p;
}

bool WindowElement::in_congruence(const pre::IndexSet& region) const {
  if (!preorder_.is_convex(region)) fail(Err::RegionNotConvex, "congruence region is not convex");
  for (std::size_t i = 0; i < region.size(); ++i)
    for (std::size_t j = 0; j < region.size(); ++j)
      if (entry(region[i], region[j]) != (i == j ? 1 : 0)) return false;
  return true;
}

bool WindowElement::projective_equal(const WindowElement& o) const {
  require_context(o);
  return o.inv().mul(*this).predicates().is_scalar;
}

DeviationRank WindowElement::deviation_rank() const {
  DeviationRank r;
  r.scalar = scalar_;
  if (scalar_ != 1) return r;  // (scalar-1)*I off the window has infinite rank
  Mat dev = sub(field_, core_, Mat::identity(core_.n));
  r.rank = rank(field_, dev);
  return r;
}

WindowElement WindowElement::commutator(const WindowElement& o) const {
  return inv().mul(o.inv()).mul(*this).mul(o);
}

WindowElement WindowElement::conjugate_by(const WindowElement& g) const {
  return g.inv().mul(*this).mul(g);
}

std::string WindowElement::canonical_bytes() const {
  std::string out;
  const std::uint32_t q = field_.q();
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((q >> (8 * b)) & 0xff));
  out.push_back(static_cast<char>(preorder_.base()));
  const std::uint32_t wn = static_cast<std::uint32_t>(window_.size());
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((wn >> (8 * b)) & 0xff));
  for (pre::Index i : window_) {
    for (int b = 0; b < 8; ++b)
      out.push_back(static_cast<char>((static_cast<std::uint64_t>(i.block) >> (8 * b)) & 0xff));
    for (int b = 0; b < 4; ++b)
      out.push_back(static_cast<char>((static_cast<std::uint32_t>(i.slot) >> (8 * b)) & 0xff));
  }
  out.push_back(static_cast<char>(scalar_ & 0xff));
  out.push_back(static_cast<char>((scalar_ >> 8) & 0xff));
  out += mat::canonical_bytes(core_);
  return out;
}

bool WindowElement::operator==(const WindowElement& o) const {
  return field_ == o.field_ && preorder_ == o.preorder_ && scalar_ == o.scalar_ &&
         window_ == o.window_ && core_ == o.core_;
}

WindowElement WindowElement::random(const pre::PreorderSpec& preorder, const gf::Field& field,
                                    const pre::IndexSet& window, RandomProfile profile,
                                    std::uint64_t seed) {
  Rng rng(seed);
  return random(preorder, field, window, profile, rng);
}

WindowElement WindowElement::random(const pre::PreorderSpec& preorder, const gf::Field& field,
                                    const pre::IndexSet& window, RandomProfile profile, Rng& rng) {
  for (pre::Index i : window) preorder.require_valid(i);
  if (!preorder.is_strongly_convex(window))
    fail(Err::WindowNotStronglyConvex, "random window must be strongly convex");
  const std::uint32_t q = field.q();
  const std::uint32_t n = static_cast<std::uint32_t>(window.size());
  auto unit = [&]() { return static_cast<std::uint16_t>(1 + rng.below(q - 1)); };
  const std::uint16_t lam = (profile == RandomProfile::Unitriangular) ? 1 : unit();

  if (n == 0) return WindowElement(field, preorder, lam, {}, Mat::zero(0));

  auto leq = [&](std::uint32_t i, std::uint32_t j) { return preorder.leq(window[i], window[j]); };

  Mat core = Mat::zero(n);
  if (profile == RandomProfile::General) {
    do {
      for (auto& v : core.a) v = static_cast<std::uint16_t>(rng.below(q));
    } while (!invertible(field, core));
    return canonical(field, preorder, lam, window, std::move(core));
  }

  // class blocks first
  std::vector<std::uint8_t> seen(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<std::uint32_t> cls;
    for (std::uint32_t j = 0; j < n; ++j)
      if (leq(i, j) && leq(j, i)) {
        cls.push_back(j);
        seen[j] = 1;
      }
    const std::uint32_t m = static_cast<std::uint32_t>(cls.size());
    Mat block = Mat::identity(m);
    if (profile != RandomProfile::Unitriangular) {
      do {
        for (auto& v : block.a) v = static_cast<std::uint16_t>(rng.below(q));
      } while (!invertible(field, block));
    }
    for (std::uint32_t a = 0; a < m; ++a)
      for (std::uint32_t b = 0; b < m; ++b) core.at(cls[a], cls[b]) = block.at(a, b);
  }
  if (profile != RandomProfile::Diagonal) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (leq(i, j) && !leq(j, i)) core.at(i, j) = static_cast<std::uint16_t>(rng.below(q));
  }
  return canonical(field, preorder, lam, window, std::move(core));
}

WindowElement transvection(const gf::Field& field, const pre::PreorderSpec& preorder,
                           pre::Index i, pre::Index j, std::uint16_t c) {
  if (i == j) fail(Err::InvalidArgument, "transvection needs distinct indices");
  pre::IndexSet w = preorder.hull(pre::IndexSet::of({i, j}));
  Mat core = Mat::identity(static_cast<std::uint32_t>(w.size()));
  core.at(static_cast<std::uint32_t>(*w.position_of(i)),
          static_cast<std::uint32_t>(*w.position_of(j))) = c;
  return WindowElement::make(field, preorder, 1, w, std::move(core));
}

WindowElement diagonal_unit(const gf::Field& field, const pre::PreorderSpec& preorder,
                            pre::Index i, std::uint16_t unit) {
  pre::IndexSet w = preorder.hull(pre::IndexSet::of({i}));
  Mat core = Mat::identity(static_cast<std::uint32_t>(w.size()));
  core.at(static_cast<std::uint32_t>(*w.position_of(i)),
          static_cast<std::uint32_t>(*w.position_of(i))) = unit;
  return WindowElement::make(field, preorder, 1, w, std::move(core));
}

}  // namespace aut::mat
