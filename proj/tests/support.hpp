#pragma once

// Test-only oracles, written independently of the library's numerics.

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "nyspca/mat.hpp"

namespace testing {

using nyspca::Mat;

inline Mat gaussian(std::size_t n, std::size_t p, unsigned long seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  Mat m(n, p);
  for (auto& v : m.values()) v = nd(gen);
  return m;
}

inline Mat naive_mul(const Mat& a, const Mat& b) {
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      long double s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<long double>(a(i, k)) * b(k, j);
      c(i, j) = static_cast<double>(s);
    }
  return c;
}

inline Mat naive_t(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline double fro(const Mat& a) {
  long double s = 0;
  for (double v : a.values()) s += static_cast<long double>(v) * v;
  return std::sqrt(static_cast<double>(s));
}

inline double max_diff(const Mat& a, const Mat& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix.
/// Returns eigenvalues (descending) and eigenvectors as columns.
inline std::pair<std::vector<double>, Mat> jacobi_eigen(Mat a) {
  const std::size_t n = a.rows();
  Mat v = Mat::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30 * std::max(1.0, fro(a) * fro(a))) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) > a(y, y); });
  std::vector<double> vals(n);
  Mat vecs(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    vals[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) vecs(i, k) = v(i, order[k]);
  }
  return {vals, vecs};
}

/// Gauss-Jordan inverse with partial pivoting.
inline Mat inverse(Mat a) {
  const std::size_t n = a.rows();
  Mat inv = Mat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a(c, k), a(piv, k));
      std::swap(inv(c, k), inv(piv, k));
    }
    const double d = a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) /= d;
      inv(c, k) /= d;
    }
    for (std::size_t r = 0; r < n; ++r)
      if (r != c) {
        const double f = a(r, c);
        for (std::size_t k = 0; k < n; ++k) {
          a(r, k) -= f * a(c, k);
          inv(r, k) -= f * inv(c, k);
        }
      }
  }
  return inv;
}

/// B (BᵀB)⁻¹ Bᵀ for full-column-rank B.
inline Mat explicit_projector(const Mat& b) {
  return naive_mul(naive_mul(b, inverse(naive_mul(naive_t(b), b))), naive_t(b));
}

inline double projector_distance(const Mat& b1, const Mat& b2) {
  const Mat p1 = explicit_projector(b1), p2 = explicit_projector(b2);
  Mat d(p1.rows(), p1.cols());
  for (std::size_t i = 0; i < d.size(); ++i) d.values()[i] = p1.values()[i] - p2.values()[i];
  return fro(d);
}

/// ‖QᵀQ − I‖_max.
inline double orthonormality_error(const Mat& q) {
  const Mat g = naive_mul(naive_t(q), q);
  double e = 0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) e = std::max(e, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return e;
}

inline Mat columns_of(const Mat& a, std::size_t k) {
  Mat out(a.rows(), k);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = a(i, j);
  return out;
}

/// Random rank-r n x p matrix G1 G2 with Gaussian factors.
inline Mat low_rank(std::size_t n, std::size_t p, std::size_t r, unsigned long seed) {
  return naive_mul(gaussian(n, r, seed), gaussian(r, p, seed + 7919));
}

/// Column-centered copy.
inline Mat centered(const Mat& x) {
  Mat out = x;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    long double s = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, j);
    const double m = static_cast<double>(s / x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out(i, j) -= m;
  }
  return out;
}

}  // namespace testing
