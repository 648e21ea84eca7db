#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aut/error.hpp"
#include "aut/gf.hpp"

namespace aut::mat {

// Dense square matrix of packed field values.  The field travels separately;
// callers keep entry/field consistency.
struct Mat {
  std::uint32_t n = 0;
  std::vector<std::uint16_t> a;  // row-major, n*n entries

  static Mat zero(std::uint32_t n) { return {n, std::vector<std::uint16_t>(std::size_t(n) * n, 0)}; }
  static Mat identity(std::uint32_t n) {
    Mat m = zero(n);
    for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::uint16_t& at(std::uint32_t i, std::uint32_t j) { return a[std::size_t(i) * n + j]; }
  std::uint16_t at(std::uint32_t i, std::uint32_t j) const { return a[std::size_t(i) * n + j]; }

  bool operator==(const Mat&) const = default;
};

Mat mul(const gf::Field& f, const Mat& x, const Mat& y);
Mat add(const gf::Field& f, const Mat& x, const Mat& y);
Mat sub(const gf::Field& f, const Mat& x, const Mat& y);
bool is_zero(const Mat& x);

// Gauss-Jordan with first-nonzero pivoting; nullopt when singular.
std::optional<Mat> inverse(const gf::Field& f, Mat x);
bool invertible(const gf::Field& f, const Mat& x);

// Exact LU-style elimination; row swaps contribute a factor of -1.
std::uint16_t det(const gf::Field& f, Mat x);
std::uint32_t rank(const gf::Field& f, Mat x);

// Inverse of an upper-triangular matrix by the diagonal-part/Neumann-series
// route: with d the blockwise inverse of the diagonal part, d*x = I - s for
// strictly upper s, and x^-1 = (sum of s^k) * d.  The series terminates
// because s is nilpotent.  leq gives the preorder on row positions; equal
// positions (leq both ways) form the diagonal blocks.
//   NotUpperTriangular    when some entry violates the preorder,
//   SingularDiagonalBlock when a diagonal block has no inverse.
// s_out, when given, receives the strictly upper series seed.
Mat triangular_inverse(const gf::Field& f, const Mat& x,
                       const std::function<bool(std::uint32_t, std::uint32_t)>& leq,
                       Mat* s_out = nullptr);

// Submatrix on the given positions, in order.
Mat restrict_positions(const Mat& x, const std::vector<std::uint32_t>& pos);

// Dimensions then row-major entries, little-endian; the deduplication key.
std::string canonical_bytes(const Mat& x);
std::uint64_t fnv1a(const std::string& bytes);

struct MatHash {
  std::size_t operator()(const Mat& m) const {
    std::uint64_t h = 1469598103934665603ull;
    h = h * 1099511628211ull ^ m.n;
    for (std::uint16_t v : m.a) h = (h ^ v) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

// Basis of the solution space of a homogeneous linear system; each row of
// `rows` lists the coefficients of one equation over `unknowns` variables.
std::vector<std::vector<std::uint16_t>> nullspace(const gf::Field& f,
                                                  std::vector<std::vector<std::uint16_t>> rows,
                                                  std::size_t unknowns);

// Rank of a set of vectors.
std::uint32_t vectors_rank(const gf::Field& f, std::vector<std::vector<std::uint16_t>> vecs);

}  // namespace aut::mat
