#include "nyspca/specapprox.hpp"

#include <cmath>
#include <string>

#include "nyspca/errors.hpp"
#include "nyspca/kernels.hpp"
#include "nyspca/matcore.hpp"

namespace nyspca {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::v_nys: return "v_nys";
    case Method::v_cs: return "v_cs";
    case Method::u_nys: return "u_nys";
    case Method::u_cs: return "u_cs";
    case Method::u_hat_nys: return "u_hat_nys";
    case Method::u_hat_cs: return "u_hat_cs";
    case Method::u_hat: return "u_hat";
  }
  return "?";
}

Method method_from_string(std::string_view tag) {
  for (Method m : kAllMethods)
    if (to_string(m) == tag) return m;
  throw InvalidParameter("unknown method tag '" + std::string(tag) + "'");
}

Target target_of(Method m) {
  return (m == Method::exact || m == Method::v_nys || m == Method::v_cs) ? Target::right
                                                                          : Target::left;
}

Axis sample_axis(Method m) {
  return (m == Method::u_nys || m == Method::u_cs) ? Axis::rows : Axis::columns;
}

Method reference_of(Method m) { return target_of(m) == Target::right ? Method::v_cs : Method::u_cs; }

namespace {

void require_axis(const Selection& sel, Axis axis, std::size_t q, const char* who) {
  if (sel.axis != axis)
    throw InvalidParameter(std::string(who) + ": selection is over " +
                           (sel.axis == Axis::columns ? "columns" : "rows") + ", expected " +
                           (axis == Axis::columns ? "columns" : "rows"));
  if (sel.q != q)
    throw InvalidParameter(std::string(who) + ": selection q = " + std::to_string(sel.q) +
                           ", expected " + std::to_string(q));
}

void require_rank(std::size_t rank, const char* who) {
  if (rank == 0) throw DegenerateSketch(std::string(who) + ": sampled block is numerically zero");
}

std::vector<double> reciprocal(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = 1.0 / v[i];
  return out;
}

std::vector<double> scaled(std::vector<double> v, double s) {
  for (double& e : v) e *= s;
  return v;
}

double ratio(std::size_t a, std::size_t b) { return static_cast<double>(a) / static_cast<double>(b); }

// X B Λ^{†/2} for the plug-in U estimators.
Basis plug_in(const Mat& x, const Basis& v, Method tag) {
  std::vector<double> roots(v.eigvals.size());
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = std::sqrt(v.eigvals[i]);
  const auto inv = pinv_diag(roots, default_tol_factor(x));
  Basis out;
  out.b = kernels::matmul(x, scale_columns(v.b, inv));
  out.eigvals = v.eigvals;
  out.orthonormal = false;
  out.method = tag;
  out.sel = v.sel;
  out.scale_applied = v.scale_applied;
  return out;
}

}  // namespace

Mat nystrom_matrix(const Mat& a, const Selection& sel) {
  const Blocks blocks = extract_blocks(a, sel);
  const Mat lcols = take_columns(a, sel.indices);
  const SymEig eig = nnd_eigen(blocks.a11);
  if (eig.values.empty()) return Mat(a.rows(), a.cols());
  const Mat m = kernels::matmul(lcols, eig.vectors);
  return kernels::matmul_nt(scale_columns(m, reciprocal(eig.values)), m);
}

Basis nystrom_eigpairs(const Mat& a, const Selection& sel) {
  const Blocks blocks = extract_blocks(a, sel);
  const SymEig eig = nnd_eigen(blocks.a11);
  require_rank(eig.values.size(), "nystrom_eigpairs");
  const Mat lcols = take_columns(a, sel.indices);
  const double q = static_cast<double>(a.rows());
  const double l = static_cast<double>(sel.l());
  Basis out;
  out.b = std::sqrt(l / q) * kernels::matmul(lcols, scale_columns(eig.vectors, reciprocal(eig.values)));
  out.eigvals = scaled(eig.values, q / l);
  out.orthonormal = false;
  out.method = Method::v_nys;
  out.sel = sel;
  out.scale_applied = true;
  return out;
}

Basis v_nys_space(const Mat& x, const Selection& sel) {
  require_axis(sel, Axis::columns, x.cols(), "v_nys_space");
  const double n = static_cast<double>(x.rows());
  const Mat x1 = subsample_columns(x, sel);
  const Mat s11 = (1.0 / n) * kernels::matmul_tn(x1, x1);
  const SymEig eig = nnd_eigen(s11);
  require_rank(eig.values.size(), "v_nys_space");
  const Mat ls = (1.0 / n) * kernels::matmul_tn(x, x1);
  Basis out;
  out.b = std::sqrt(ratio(sel.l(), x.cols())) *
          kernels::matmul(ls, scale_columns(eig.vectors, reciprocal(eig.values)));
  out.eigvals = scaled(eig.values, ratio(x.cols(), sel.l()));
  out.orthonormal = false;
  out.method = Method::v_nys;
  out.sel = sel;
  out.scale_applied = true;
  return out;
}

Basis v_nys_stable(const Mat& x, const Selection& sel) {
  require_axis(sel, Axis::columns, x.cols(), "v_nys_stable");
  const double n = static_cast<double>(x.rows());
  const Mat x1 = subsample_columns(x, sel);
  const Svd s = svd(x1);
  require_rank(s.rank, "v_nys_stable");
  Basis out;
  out.b = std::sqrt(ratio(sel.l(), x.cols())) * kernels::matmul_tn(x, scale_columns(s.u, reciprocal(s.sigma)));
  out.eigvals.resize(s.rank);
  for (std::size_t i = 0; i < s.rank; ++i)
    out.eigvals[i] = ratio(x.cols(), sel.l()) * s.sigma[i] * s.sigma[i] / n;
  out.orthonormal = false;
  out.method = Method::v_nys;
  out.sel = sel;
  out.scale_applied = true;
  return out;
}

Basis v_nys(const Mat& x, const Selection& sel, NystromRoute route) {
  return route == NystromRoute::space ? v_nys_space(x, sel) : v_nys_stable(x, sel);
}

Basis v_cs(const Mat& x, const Selection& sel) {
  require_axis(sel, Axis::columns, x.cols(), "v_cs");
  const double n = static_cast<double>(x.rows());
  const Mat x1 = subsample_columns(x, sel);
  const Mat ls = (1.0 / n) * kernels::matmul_tn(x, x1);
  Svd s = svd(ls);
  require_rank(s.rank, "v_cs");
  Basis out;
  out.b = std::move(s.u);
  out.eigvals = scaled(std::move(s.sigma), std::sqrt(ratio(x.cols(), sel.l())));
  out.orthonormal = true;
  out.method = Method::v_cs;
  out.sel = sel;
  out.scale_applied = true;
  return out;
}

Basis u_nys(const Mat& x, const Selection& sel) {
  require_axis(sel, Axis::rows, x.rows(), "u_nys");
  const Mat x1 = subsample_columns(x, sel);
  // eigenvectors of T11 = X1 X1ᵀ are U(X1); sign them as such
  const Svd s = svd_left_signed(x1);
  require_rank(s.rank, "u_nys");
  const double ln = ratio(sel.l(), x.rows());
  Basis out;
  out.b = std::sqrt(ln) * kernels::matmul(x, scale_columns(s.v, reciprocal(s.sigma)));
  out.eigvals.resize(s.rank);
  for (std::size_t i = 0; i < s.rank; ++i) out.eigvals[i] = s.sigma[i] * s.sigma[i] / ln;
  out.orthonormal = false;
  out.method = Method::u_nys;
  out.sel = sel;
  out.scale_applied = true;
  return out;
}

Basis u_cs(const Mat& x, const Selection& sel) {
  require_axis(sel, Axis::rows, x.rows(), "u_cs");
  const Mat x1 = subsample_columns(x, sel);
  Svd s = svd(kernels::matmul_nt(x, x1));
  require_rank(s.rank, "u_cs");
  Basis out;
  out.b = std::move(s.u);
  out.eigvals = scaled(std::move(s.sigma), std::sqrt(ratio(x.rows(), sel.l())));
  out.orthonormal = true;
  out.method = Method::u_cs;
  out.sel = sel;
  out.scale_applied = true;
  return out;
}

Basis u_hat_nys(const Mat& x, const Selection& sel, NystromRoute route) {
  return plug_in(x, v_nys(x, sel, route), Method::u_hat_nys);
}

Basis u_hat_cs(const Mat& x, const Selection& sel) {
  return plug_in(x, v_cs(x, sel), Method::u_hat_cs);
}

Basis u_hat(const Mat& x, const Selection& sel) {
  require_axis(sel, Axis::columns, x.cols(), "u_hat");
  const Mat x1 = subsample_columns(x, sel);
  Svd s = svd(x1);
  require_rank(s.rank, "u_hat");
  Basis out;
  out.b = std::move(s.u);
  out.eigvals.resize(s.rank);
  for (std::size_t i = 0; i < s.rank; ++i)
    out.eigvals[i] = s.sigma[i] * s.sigma[i] / static_cast<double>(x.rows());
  out.orthonormal = true;
  out.method = Method::u_hat;
  out.sel = sel;
  out.scale_applied = false;
  return out;
}

Basis truncate(const Basis& basis, std::size_t d) {
  if (d == 0 || d > basis.dim())
    throw InvalidParameter("truncate: d = " + std::to_string(d) + " outside [1, " +
                           std::to_string(basis.dim()) + "]");
  Basis out = basis;
  out.b = basis.b.leading_columns(d);
  if (!out.eigvals.empty()) out.eigvals.resize(d);
  return out;
}

Basis approximate(Method method, const Mat& x, const Selection& sel, NystromRoute route) {
  switch (method) {
    case Method::v_nys: return v_nys(x, sel, route);
    case Method::v_cs: return v_cs(x, sel);
    case Method::u_nys: return u_nys(x, sel);
    case Method::u_cs: return u_cs(x, sel);
    case Method::u_hat_nys: return u_hat_nys(x, sel, route);
    case Method::u_hat_cs: return u_hat_cs(x, sel);
    case Method::u_hat: return u_hat(x, sel);
    case Method::exact: break;
  }
  throw InvalidParameter("approximate: 'exact' is not a sketch method");
}

}  // namespace nyspca
