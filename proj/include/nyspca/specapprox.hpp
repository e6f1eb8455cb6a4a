#pragma once

// Nyström and column-sampling approximations.
//
// Notation: X is n x p (already centered), S = n⁻¹XᵀX, T = XXᵀ. For a column
// selection, x1 = X S (n x l) and L(S) = n⁻¹Xᵀx1 (p x l); for a row
// selection, X1 = Sᵀ X (l x p) and L(T) = X X1ᵀ (n x l). Every basis is
// returned in the original coordinate order. The √(l/q)-style scale factors
// are always applied (scale_applied = true on the Nyström bases); they do
// not change any span.

#include "nyspca/basis.hpp"
#include "nyspca/mat.hpp"
#include "nyspca/sketch.hpp"

namespace nyspca {

enum class NystromRoute { space, stable };

/// L(A) A11† L(A)ᵀ for symmetric nonnegative-definite A.
Mat nystrom_matrix(const Mat& a, const Selection& sel);

/// √(l/q) L(A) V(A11) Λ(A11)† with eigenvalues (q/l) Λ(A11).
Basis nystrom_eigpairs(const Mat& a, const Selection& sel);

/// V_nys through S11 = n⁻¹x1ᵀx1 (needs only l² extra storage).
Basis v_nys_space(const Mat& x, const Selection& sel);
/// V_nys through the SVD of x1: √(l/p) Xᵀ U(x1) Λ(x1)†.
Basis v_nys_stable(const Mat& x, const Selection& sel);
Basis v_nys(const Mat& x, const Selection& sel, NystromRoute route = NystromRoute::stable);

/// Left singular vectors of L(S).
Basis v_cs(const Mat& x, const Selection& sel);

/// Nyström on T with a row selection: √(l/n) X V(X1) Λ(X1)†.
Basis u_nys(const Mat& x, const Selection& sel);
/// Left singular vectors of L(T) = X X1ᵀ.
Basis u_cs(const Mat& x, const Selection& sel);

/// X V_nys Λ_nys^{†/2}.
Basis u_hat_nys(const Mat& x, const Selection& sel, NystromRoute route = NystromRoute::stable);
/// X V_cs Λ_cs^{†/2}.
Basis u_hat_cs(const Mat& x, const Selection& sel);
/// U(x1).
Basis u_hat(const Mat& x, const Selection& sel);

/// First d columns (and eigenvalues).
Basis truncate(const Basis& basis, std::size_t d);

/// Dispatches on the method tag; Method::exact is not a sketch method and
/// is rejected.
Basis approximate(Method method, const Mat& x, const Selection& sel,
                  NystromRoute route = NystromRoute::stable);

}  // namespace nyspca
