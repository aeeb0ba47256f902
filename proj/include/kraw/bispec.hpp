#ifndef KRAW_BISPEC_HPP
#define KRAW_BISPEC_HPP

// Difference operators on the simplex lattice {m in N0^d : |m| <= N} whose
// common eigenfunctions are the Krawtchouk polynomials: d operators in the
// variable m~ (eigenvalues m_i - N/(d+1)), d operators in the degree index m
// (eigenvalues m~_i - N/(d+1)), and the universal operator (eigenvalue -|m|).

#include "kraw/hyperg.hpp"
#include "kraw/report.hpp"

#include <string>
#include <vector>

namespace kraw {

/// c_0 + sum_l c_l x_l, evaluated at a lattice point x.
template <class T>
struct AffineForm {
  T constant{};
  std::vector<T> linear;

  T operator()(std::span<const int> x) const {
    T v = constant;
    for (std::size_t l = 0; l < linear.size(); ++l)
      if (x[l] != 0) v += linear[l] * T(x[l]);
    return v;
  }

  bool is_zero() const {
    if (constant != T(0)) return false;
    for (const auto& c : linear)
      if (c != T(0)) return false;
    return true;
  }

  AffineForm& operator+=(const AffineForm& o) {
    constant += o.constant;
    for (std::size_t l = 0; l < linear.size(); ++l) linear[l] += o.linear[l];
    return *this;
  }

  AffineForm& operator*=(const T& s) {
    constant *= s;
    for (auto& c : linear) c *= s;
    return *this;
  }

  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

template <class T>
struct StencilTerm {
  std::vector<int> shift;  ///< length d, entries in {-1, 0, 1}
  AffineForm<T> coeff;
};

enum class Eigenvalue {
  none,
  degree_component,   ///< m_i - N/(d+1), for operators in m~
  variable_component, ///< m~_i - N/(d+1), for operators in m
  minus_total_degree, ///< -|m|
};

/// (L F)(x) = sum over terms of coeff(x) F(x + shift).  The operator acts on
/// functions of the primed lattice coordinates x with |x| <= N.
template <class T>
struct DifferenceOperator {
  int d = 0;
  int N = 0;
  std::vector<StencilTerm<T>> terms;
  Eigenvalue eigen = Eigenvalue::none;
  int index = 0;  ///< i for the degree/variable component eigenvalues
  std::string name;

  /// Number of terms whose coefficient is not identically zero.
  std::size_t attained_terms() const;

  /// Coefficient attached to `shift`, zero form when absent.
  AffineForm<T> coefficient(const std::vector<int>& shift) const;
};

/// The operator in m~ from the H-side recurrence, 1 <= i <= d.
template <class T>
DifferenceOperator<T> operator_mtilde(const ParameterSet<T>& kappa, int N, int i);

/// The operator in m from the H~-side recurrence, 1 <= i <= d.
template <class T>
DifferenceOperator<T> operator_m(const ParameterSet<T>& kappa, int N, int i);

/// The universal operator in m~ with eigenvalue -|m|.  Depends only on p.
template <class T>
DifferenceOperator<T> operator_universal(const ParameterSet<T>& kappa, int N);

/// -(sum_i operator_mtilde(i)) - dN/(d+1) Id, collected term by term.  The
/// structural constraint nu P U P~ U^t = I makes this equal to the universal
/// operator coefficient for coefficient.
template <class T>
DifferenceOperator<T> summed_mtilde_operators(const ParameterSet<T>& kappa, int N);

template <class T>
using LatticeFunction = std::vector<T>;

/// Applies L to F (indexed like SimplexLattice(d, N)).  Throws std::logic_error
/// if a nonzero coefficient points outside the lattice.
template <class T>
LatticeFunction<T> apply(const DifferenceOperator<T>& op, const LatticeFunction<T>& f, const SimplexLattice& lattice);

/// Stencil size bound and boundary vanishing on every lattice face.
template <class T>
CheckReport check_stencil(const DifferenceOperator<T>& op, const SimplexLattice& lattice);

/// Eigen-equations of both operator families against a polynomial table.
template <class T>
CheckReport check_eigen(const PolynomialTable<T>& tab, double eps = kDefaultEps);

template <class T>
CheckReport check_eigen(const ParameterSet<T>& kappa, int N, double eps = kDefaultEps);

/// Universal operator: eigenvalue -|m| on every row of the table, plus the
/// coefficient-level identity with summed_mtilde_operators.
template <class T>
CheckReport check_universal(const PolynomialTable<T>& tab, double eps = kDefaultEps);

template <class T>
CheckReport check_universal(const ParameterSet<T>& kappa, int N, double eps = kDefaultEps);

/// L_i L_j = L_j L_i and M_i M_j = M_j M_i on the standard basis of
/// functions on the lattice.
template <class T>
CheckReport check_commute(const ParameterSet<T>& kappa, int N, double eps = kDefaultEps);

}  // namespace kraw

#endif  // KRAW_BISPEC_HPP
