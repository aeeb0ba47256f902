#ifndef KRAW_SRC_CHECK_UTIL_HPP
#define KRAW_SRC_CHECK_UTIL_HPP

#include "kraw/matrix.hpp"
#include "kraw/numeric.hpp"
#include "kraw/report.hpp"

#include <string>
#include <utility>

namespace kraw::detail {

template <class T>
T from_integer(const Integer& x) {
  return ScalarTraits<T>::from_rational(Rational(x));
}

/// x^lambda = prod_j x_j^{lambda_j}.
template <class T>
T power(const std::vector<T>& x, const MultiIndex& lambda) {
  T r(1);
  for (std::size_t j = 0; j < lambda.size(); ++j)
    for (int k = 0; k < lambda[j]; ++k) r *= x[j];
  return r;
}

template <class T>
T power(const T& x, int k) {
  T r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

/// Compares got against want, records the residual and, on mismatch, a
/// failure message built lazily from `where`.
template <class T, class Where>
bool expect_equal(CheckReport& report, const T& got, const T& want, double eps, Where&& where) {
  using Tr = ScalarTraits<T>;
  report.record(Tr::residual(got, want));
  if (Tr::near(got, want, eps)) return true;
  report.fail(std::string(where()) + ": got " + Tr::str(got) + ", expected " + Tr::str(want));
  return false;
}

template <class T, class Where>
bool expect_matrix(CheckReport& report, const Matrix<T>& got, const Matrix<T>& want, double eps, Where&& where) {
  bool ok = true;
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j)
      ok &= expect_equal(report, got(i, j), want(i, j), eps, [&] {
        return std::string(where()) + " entry [" + std::to_string(i) + "][" + std::to_string(j) + "]";
      });
  return ok;
}

}  // namespace kraw::detail

#endif  // KRAW_SRC_CHECK_UTIL_HPP
