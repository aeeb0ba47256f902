#ifndef KRAW_NUMERIC_HPP
#define KRAW_NUMERIC_HPP

// Scalars and the combinatorial substrate: Pochhammer symbols, multinomials,
// simplex lattices and bounded-sum kernel matrices.

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>

#include <complex>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kraw {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Complex = std::complex<double>;

inline constexpr double kDefaultEps = 1e-10;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments of a library call was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses "a", "a/b" or a plain decimal such as "-0.125" into a canonical rational.
Rational parse_rational(std::string_view text);

/// Accepts anything parse_rational accepts, decimal floats with exponents,
/// and "x+yi" / "x-yi" as written by to_string(Complex).
Complex parse_complex(std::string_view text);

/// Lowest-terms "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& x);

/// Decimal with 17 significant digits; a nonzero imaginary part is appended as "+yi".
std::string to_string(const Complex& x);

/// Uniform interface over the two scalar fields.  In exact mode equality is
/// literal; in approximate mode two values are equal when their scaled
/// residual |a-b| / max(1, |a|, |b|) does not exceed eps.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "exact";

  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& x, double /*eps*/ = kDefaultEps) { return x == 0; }
  static double magnitude(const Rational& x) { return std::abs(static_cast<double>(x)); }
  static double residual(const Rational& a, const Rational& b) {
    if (a == b) return 0.0;
    return std::abs(static_cast<double>(a - b));
  }
  static bool near(const Rational& a, const Rational& b, double /*eps*/ = kDefaultEps) {
    return a == b;
  }
  static std::string str(const Rational& x) { return to_string(x); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "approx";

  static Complex from_rational(const Rational& r) { return {static_cast<double>(r), 0.0}; }
  static bool is_zero(const Complex& x, double eps = kDefaultEps) { return std::abs(x) <= eps; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static double residual(const Complex& a, const Complex& b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
  }
  static bool near(const Complex& a, const Complex& b, double eps = kDefaultEps) {
    return residual(a, b) <= eps;
  }
  static std::string str(const Complex& x) { return to_string(x); }
};

/// Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1.
template <class T>
T pochhammer(const T& a, int k) {
  if (k < 0) throw DomainError("pochhammer: negative length");
  T result(1);
  for (int i = 0; i < k; ++i) result *= a + T(i);
  return result;
}

Integer factorial(int n);

/// A point of N0^{d+1}; its degree is the sum of the parts.
struct MultiIndex {
  std::vector<int> parts;

  int degree() const;
  std::size_t size() const { return parts.size(); }
  int operator[](std::size_t i) const { return parts[i]; }

  /// Drops the 0-th coordinate: (w_0, w_1, ..., w_d) -> (w_1, ..., w_d).
  std::vector<int> primed() const { return {parts.begin() + 1, parts.end()}; }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Inverse of MultiIndex::primed: (m_1..m_d) -> (N - |m|, m_1, ..., m_d).
MultiIndex unprime(std::span<const int> m, int N);

std::string to_string(const MultiIndex& lambda);

/// N! / (lambda_0! ... lambda_d!).
Integer multinomial(int N, const MultiIndex& lambda);

/// lambda! = prod lambda_i!.
Integer multi_factorial(const MultiIndex& lambda);

/// Every lambda in N0^{d+1} with |lambda| = N, in graded-lexicographic order
/// (x_0 > x_1 > ... > x_d), so (N,0,...,0) comes first.
std::vector<MultiIndex> enumerate_lattice(int d, int N);

/// Binomial coefficient as a machine integer; used for table sizes.
std::size_t binomial(int n, int k);

/// The lattice {lambda : |lambda| = N} with rank lookup, shared by tables and
/// difference-operator function spaces.
class SimplexLattice {
 public:
  SimplexLattice(int d, int N);

  int dim() const { return d_; }
  int degree() const { return N_; }
  std::size_t size() const { return points_.size(); }
  const MultiIndex& operator[](std::size_t r) const { return points_[r]; }
  const std::vector<MultiIndex>& points() const { return points_; }

  /// Rank of lambda, or size() when lambda is not a lattice point.
  std::size_t rank(const MultiIndex& lambda) const;
  /// Rank of the point whose primed coordinates are m; size() if outside.
  std::size_t rank_primed(std::span<const int> m) const;
  bool contains_primed(std::span<const int> m) const { return rank_primed(m) != size(); }

 private:
  int d_;
  int N_;
  std::vector<MultiIndex> points_;
  std::map<std::vector<int>, std::size_t> primed_rank_;
};

/// A d x d nonnegative integer matrix with cached margins.
class KernelMatrix {
 public:
  explicit KernelMatrix(int d);

  int dim() const { return d_; }
  int operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * d_ + j)]; }
  void set(int i, int j, int value);

  int row_sum(int i) const { return row_sums_[static_cast<std::size_t>(i)]; }
  int col_sum(int j) const { return col_sums_[static_cast<std::size_t>(j)]; }
  int total() const { return total_; }

  friend bool operator==(const KernelMatrix&, const KernelMatrix&) = default;

 private:
  int d_;
  std::vector<int> entries_;
  std::vector<int> row_sums_;
  std::vector<int> col_sums_;
  int total_ = 0;
};

/// Visits every A in M_{d,N} with row i sum <= row_caps[i] and column j sum
/// <= col_caps[j].  Pruning happens during generation.
void for_each_kernel(int d, int N, std::span<const int> row_caps, std::span<const int> col_caps,
                     const std::function<void(const KernelMatrix&)>& visit);

std::vector<KernelMatrix> enumerate_kernels(int d, int N, std::span<const int> row_caps,
                                            std::span<const int> col_caps);

/// Runs body(i) for i in [0, n) on up to `threads` worker threads.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace kraw

#endif  // KRAW_NUMERIC_HPP
