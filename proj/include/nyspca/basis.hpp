#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nyspca/mat.hpp"
#include "nyspca/sketch.hpp"

namespace nyspca {

/// The seven sketch-based approximations plus the exact oracle.
enum class Method { exact, v_nys, v_cs, u_nys, u_cs, u_hat_nys, u_hat_cs, u_hat };

inline constexpr Method kAllMethods[] = {Method::exact,  Method::v_nys,     Method::v_cs,
                                         Method::u_nys,  Method::u_cs,      Method::u_hat_nys,
                                         Method::u_hat_cs, Method::u_hat};

std::string_view to_string(Method m);
/// Throws InvalidParameter for unknown tags.
Method method_from_string(std::string_view tag);

/// Which singular subspace a method approximates.
enum class Target { right, left };
Target target_of(Method m);
/// Axis the method samples along (u_nys and u_cs sample rows).
Axis sample_axis(Method m);
/// Column-sampling method used as the reference for relative errors.
Method reference_of(Method m);

struct Basis {
  Mat b;                        // q x m
  std::vector<double> eigvals;  // empty when absent
  bool orthonormal = false;
  Method method = Method::exact;
  std::optional<Selection> sel;
  bool scale_applied = false;

  std::size_t dim() const noexcept { return b.cols(); }
  std::size_t ambient() const noexcept { return b.rows(); }
};

}  // namespace nyspca
