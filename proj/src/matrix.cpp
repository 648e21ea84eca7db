#include "aut/matrix.hpp"

#include <algorithm>

namespace aut::mat {

Mat mul(const gf::Field& f, const Mat& x, const Mat& y) {
  if (x.n != y.n) fail(Err::InvalidArgument, "matrix size mismatch");
  const std::uint32_t n = x.n;
  Mat r = Mat::zero(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t k = 0; k < n; ++k) {
      const std::uint16_t xik = x.at(i, k);
      if (xik == 0) continue;
      for (std::uint32_t j = 0; j < n; ++j) {
        const std::uint16_t ykj = y.at(k, j);
        if (ykj == 0) continue;
        r.at(i, j) = f.add(r.at(i, j), f.mul(xik, ykj));
      }
    }
  return r;
}

Mat add(const gf::Field& f, const Mat& x, const Mat& y) {
  if (x.n != y.n) fail(Err::InvalidArgument, "matrix size mismatch");
  Mat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.add(r.a[i], y.a[i]);
  return r;
}

Mat sub(const gf::Field& f, const Mat& x, const Mat& y) {
  if (x.n != y.n) fail(Err::InvalidArgument, "matrix size mismatch");
  Mat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.sub(r.a[i], y.a[i]);
  return r;
}

bool is_zero(const Mat& x) {
  return std::all_of(x.a.begin(), x.a.end(), [](std::uint16_t v) { return v == 0; });
}

std::optional<Mat> inverse(const gf::Field& f, Mat x) {
  const std::uint32_t n = x.n;
  Mat inv = Mat::identity(n);
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t piv = col;
    while (piv < n && x.at(piv, col) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::uint32_t j = 0; j < n; ++j) {
        std::swap(x.at(piv, j), x.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    const std::uint16_t s = f.inv(x.at(col, col));
    for (std::uint32_t j = 0; j < n; ++j) {
      x.at(col, j) = f.mul(x.at(col, j), s);
      inv.at(col, j) = f.mul(inv.at(col, j), s);
    }
    for (std::uint32_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const std::uint16_t c = x.at(row, col);
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < n; ++j) {
        x.at(row, j) = f.sub(x.at(row, j), f.mul(c, x.at(col, j)));
        inv.at(row, j) = f.sub(inv.at(row, j), f.mul(c, inv.at(col, j)));
      }
    }
  }
  return inv;
}

bool invertible(const gf::Field& f, const Mat& x) { return det(f, x) != 0; }

std::uint16_t det(const gf::Field& f, Mat x) {
  const std::uint32_t n = x.n;
  std::uint16_t d = 1;
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t piv = col;
    while (piv < n && x.at(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::uint32_t j = col; j < n; ++j) std::swap(x.at(piv, j), x.at(col, j));
      d = f.neg(d);
    }
    const std::uint16_t pv = x.at(col, col);
    d = f.mul(d, pv);
    const std::uint16_t s = f.inv(pv);
    for (std::uint32_t row = col + 1; row < n; ++row) {
      const std::uint16_t c = x.at(row, col);
      if (c == 0) continue;
      const std::uint16_t factor = f.mul(c, s);
      for (std::uint32_t j = col; j < n; ++j)
        x.at(row, j) = f.sub(x.at(row, j), f.mul(factor, x.at(col, j)));
    }
  }
  return d;
}

std::uint32_t rank(const gf::Field& f, Mat x) {
  const std::uint32_t n = x.n;
  std::uint32_t r = 0;
  for (std::uint32_t col = 0; col < n && r < n; ++col) {
    std::uint32_t piv = r;
    while (piv < n && x.at(piv, col) == 0) ++piv;
    if (piv == n) continue;
    if (piv != r)
      for (std::uint32_t j = 0; j < n; ++j) std::swap(x.at(piv, j), x.at(r, j));
    const std::uint16_t s = f.inv(x.at(r, col));
    for (std::uint32_t row = r + 1; row < n; ++row) {
      const std::uint16_t c = x.at(row, col);
      if (c == 0) continue;
      const std::uint16_t factor = f.mul(c, s);
      for (std::uint32_t j = col; j < n; ++j)
        x.at(row, j) = f.sub(x.at(row, j), f.mul(factor, x.at(r, j)));
    }
    ++r;
  }
  return r;
}

Mat triangular_inverse(const gf::Field& f, const Mat& x,
                       const std::function<bool(std::uint32_t, std::uint32_t)>& leq,
                       Mat* s_out) {
  const std::uint32_t n = x.n;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (x.at(i, j) != 0 && !leq(i, j))
        fail(Err::NotUpperTriangular, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") violates the preorder");

  // diagonal blocks = equivalence classes of positions
  std::vector<std::int32_t> class_id(n, -1);
  std::vector<std::vector<std::uint32_t>> classes;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (class_id[i] >= 0) continue;
    std::vector<std::uint32_t> members;
    for (std::uint32_t j = 0; j < n; ++j)
      if (leq(i, j) && leq(j, i)) {
        members.push_back(j);
        class_id[j] = static_cast<std::int32_t>(classes.size());
      }
    classes.push_back(std::move(members));
  }

  Mat d = Mat::zero(n);
  for (const auto& cls : classes) {
    Mat block = restrict_positions(x, cls);
    auto binv = inverse(f, block);
    if (!binv)
      fail(Err::SingularDiagonalBlock,
           "diagonal block of size " + std::to_string(cls.size()) + " is singular");
    for (std::size_t a = 0; a < cls.size(); ++a)
      for (std::size_t b = 0; b < cls.size(); ++b)
        d.at(cls[a], cls[b]) = binv->at(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  }

  const Mat s = sub(f, Mat::identity(n), mul(f, d, x));
  if (s_out) *s_out = s;

  Mat series = Mat::identity(n);
  Mat term = Mat::identity(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    term = mul(f, term, s);
    if (is_zero(term)) break;
    series = add(f, series, term);
  }
  return mul(f, series, d);
}

Mat restrict_positions(const Mat& x, const std::vector<std::uint32_t>& pos) {
  Mat r = Mat::zero(static_cast<std::uint32_t>(pos.size()));
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j)
      r.at(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)) = x.at(pos[i], pos[j]);
  return r;
}

std::string canonical_bytes(const Mat& x) {
  std::string out;
  out.reserve(4 + 2 * x.a.size());
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((x.n >> (8 * b)) & 0xff));
  for (std::uint16_t v : x.a) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
  }
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) h = (h ^ c) * 1099511628211ull;
  return h;
}

std::vector<std::vector<std::uint16_t>> nullspace(const gf::Field& f,
                                                  std::vector<std::vector<std::uint16_t>> rows,
                                                  std::size_t unknowns) {
  // row-reduce the constraint matrix
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < unknowns && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const std::uint16_t s = f.inv(rows[r][col]);
    for (std::size_t j = col; j < unknowns; ++j) rows[r][j] = f.mul(rows[r][j], s);
    for (std::size_t row = 0; row < rows.size(); ++row) {
      if (row == r) continue;
      const std::uint16_t c = rows[row][col];
      if (c == 0) continue;
      for (std::size_t j = col; j < unknowns; ++j)
        rows[row][j] = f.sub(rows[row][j], f.mul(c, rows[r][j]));
    }
    pivot_col.push_back(col);
    ++r;
  }

  std::vector<std::uint8_t> is_pivot(unknowns, 0);
  for (std::size_t c : pivot_col) is_pivot[c] = 1;

  std::vector<std::vector<std::uint16_t>> basis;
  for (std::size_t free_col = 0; free_col < unknowns; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<std::uint16_t> v(unknowns, 0);
    v[free_col] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = f.neg(rows[i][free_col]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::uint32_t vectors_rank(const gf::Field& f, std::vector<std::vector<std::uint16_t>> vecs) {
  if (vecs.empty()) return 0;
  const std::size_t n = vecs[0].size();
  std::uint32_t r = 0;
  for (std::size_t col = 0; col < n && r < vecs.size(); ++col) {
    std::size_t piv = r;
    while (piv < vecs.size() && vecs[piv][col] == 0) ++piv;
    if (piv == vecs.size()) continue;
    std::swap(vecs[piv], vecs[r]);
    const std::uint16_t s = f.inv(vecs[r][col]);
    for (std::size_t j = col; j < n; ++j) vecs[r][j] = f.mul(vecs[r][j], s);
    for (std::size_t row = 0; row < vecs.size(); ++row) {
      if (row == r) continue;
      const std::uint16_t c = vecs[row][col];
      if (c == 0) continue;
      for (std::size_t j = col; j < n; ++j) vecs[row][j] = f.sub(vecs[row][j], f.mul(c, vecs[r][j]));
    }
    ++r;
  }
  return r;
}

}  // namespace aut::mat
