#ifndef KRAW_KAPPA_HPP
#define KRAW_KAPPA_HPP

// The parameter space K_d: 4-tuples (nu, P, P~, U) with P, P~ diagonal,
// p_0 = p~_0 = 1/nu, a unit border on U, and nu P U P~ U^t = I.

#include "kraw/matrix.hpp"
#include "kraw/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kraw {

/// Unvalidated parameter data as read from a file or produced by a formula.
template <class T>
struct RawParameters {
  int d = 0;
  T nu{};
  std::vector<T> p;   ///< diagonal of P, length d+1
  std::vector<T> pt;  ///< diagonal of P~, length d+1
  Matrix<T> u;        ///< (d+1) x (d+1)
};

struct Violation {
  /// One of "dimension", "nu", "i", "ii", "iii", "nonzero", "sum".
  std::string condition;
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;

  std::string summary() const;
};

class InvalidParameters : public Error {
 public:
  explicit InvalidParameters(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

template <class T>
class ParameterSet;

template <class T>
struct Validated {
  std::optional<ParameterSet<T>> params;
  ValidationReport report;
};

template <class T>
Validated<T> validate(RawParameters<T> candidate, double eps = kDefaultEps);

namespace testing {
/// Wraps raw data without validation.  Only for detector-sanity tests.
template <class T>
ParameterSet<T> forge(RawParameters<T> raw);
}  // namespace testing

/// A point of K_d.  Instances only come out of validate(), so holders never
/// need to re-check the defining conditions.
template <class T>
class ParameterSet {
 public:
  int d() const { return raw_.d; }
  const T& nu() const { return raw_.nu; }
  const std::vector<T>& p() const { return raw_.p; }
  const std::vector<T>& pt() const { return raw_.pt; }
  const Matrix<T>& u() const { return raw_.u; }

  const T& p(int j) const { return raw_.p[static_cast<std::size_t>(j)]; }
  const T& pt(int j) const { return raw_.pt[static_cast<std::size_t>(j)]; }
  const T& u(int i, int j) const { return raw_.u(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }

  Matrix<T> P() const { return Matrix<T>::diagonal(raw_.p); }
  Matrix<T> Pt() const { return Matrix<T>::diagonal(raw_.pt); }

  const RawParameters<T>& raw() const { return raw_; }

  friend bool operator==(const ParameterSet& a, const ParameterSet& b) {
    return a.raw_.d == b.raw_.d && a.raw_.nu == b.raw_.nu && a.raw_.p == b.raw_.p &&
           a.raw_.pt == b.raw_.pt && a.raw_.u == b.raw_.u;
  }

 private:
  explicit ParameterSet(RawParameters<T> raw) : raw_(std::move(raw)) {}

  friend Validated<T> validate<T>(RawParameters<T>, double);
  friend ParameterSet testing::forge<T>(RawParameters<T>);

  RawParameters<T> raw_;
};

/// validate() that throws InvalidParameters instead of returning a report.
template <class T>
ParameterSet<T> make_parameter_set(RawParameters<T> candidate, double eps = kDefaultEps);

/// Griffiths' construction: Gram-Schmidt on e_1..e_d (index order) against
/// w_0 = (1,...,1) in the inner product a^t P b, each w_j scaled so its
/// 0-th coordinate is 1; then P~ = p_0 (U^t P U)^{-1} and nu = 1/p_0.
template <class T>
ParameterSet<T> griffiths_from_p(const std::vector<T>& p, double eps = kDefaultEps);

/// The bispectral involution (nu, P, P~, U) -> (nu, P~, P, U^t).
template <class T>
ParameterSet<T> involute(const ParameterSet<T>& kappa, double eps = kDefaultEps);

/// omega_{i,j} = 1 - u_{i,j} for 1 <= i,j <= d, as a d x d matrix.
template <class T>
Matrix<T> omega(const ParameterSet<T>& kappa);

/// Bivariate Hoare-Rahman family in four free parameters.
template <class T>
ParameterSet<T> family_hoare_rahman(const T& a1, const T& a2, const T& a3, const T& a4,
                                    double eps = kDefaultEps);

/// Milch family: P fixed, P~ and a lower-unitriangular-bordered U built from
/// partial sums of p.
template <class T>
ParameterSet<T> family_milch(const std::vector<T>& p, double eps = kDefaultEps);

/// Family with P = P~ built from powers of q and an anti-triangular U.
template <class T>
ParameterSet<T> family_ds(const T& q, int d, double eps = kDefaultEps);

/// Re-validates an exact parameter set in approximate arithmetic.
ParameterSet<Complex> approximate(const ParameterSet<Rational>& kappa, double eps = kDefaultEps);

}  // namespace kraw

#endif  // KRAW_KAPPA_HPP
