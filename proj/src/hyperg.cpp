#include "kraw/hyperg.hpp"

#include "check_util.hpp"

namespace kraw {

void require_degree_point(int d, int N, std::span<const int> m, const char* what) {
  if (N < 0) throw DomainError("degree N must be nonnegative");
  if (m.size() != static_cast<std::size_t>(d))
    throw DomainError(std::string(what) + " has " + std::to_string(m.size()) + " entries, expected " +
                      std::to_string(d));
  int total = 0;
  for (int v : m) {
    if (v < 0) throw DomainError(std::string(what) + " has a negative entry");
    total += v;
  }
  if (total > N)
    throw DomainError(std::string(what) + " violates the degree bound: |" + what + "| = " + std::to_string(total) +
                      " > N = " + std::to_string(N));
}

template <class T>
T eval_hypergeometric(const ParameterSet<T>& kappa, int N, std::span<const int> m, std::span<const int> mt) {
  const int d = kappa.d();
  require_degree_point(d, N, m, "m");
  require_degree_point(d, N, mt, "mt");
  const auto ud = static_cast<std::size_t>(d);
  const Matrix<T> w = omega(kappa);

  // (-m_j)_k for k <= m_j, (-m~_i)_k for k <= m~_i, 1/(-N)_k for k <= N.
  auto rising_table = [](int top, int len) {
    std::vector<T> out(static_cast<std::size_t>(len + 1));
    out[0] = T(1);
    for (int k = 1; k <= len; ++k) out[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k - 1)] * T(-top + k - 1);
    return out;
  };
  std::vector<std::vector<T>> poch_m(ud);
  std::vector<std::vector<T>> poch_mt(ud);
  for (std::size_t j = 0; j < ud; ++j) {
    poch_m[j] = rising_table(m[j], m[j]);
    poch_mt[j] = rising_table(mt[j], mt[j]);
  }
  std::vector<T> inv_poch_n = rising_table(N, N);
  for (auto& v : inv_poch_n) v = T(1) / v;

  // omega_{i,j}^a / a! for a up to min(m~_i, m_j).
  std::vector<std::vector<T>> wpow(ud * ud);
  for (std::size_t i = 0; i < ud; ++i)
    for (std::size_t j = 0; j < ud; ++j) {
      const int cap = std::min(mt[i], m[j]);
      auto& row = wpow[i * ud + j];
      row.resize(static_cast<std::size_t>(cap + 1));
      row[0] = T(1);
      for (int a = 1; a <= cap; ++a) row[static_cast<std::size_t>(a)] = row[static_cast<std::size_t>(a - 1)] * w(i, j) / T(a);
    }

  T sum(0);
  for_each_kernel(d, N, mt, m, [&](const KernelMatrix& a) {
    T term = inv_poch_n[static_cast<std::size_t>(a.total())];
    for (int j = 0; j < d; ++j) term *= poch_m[static_cast<std::size_t>(j)][static_cast<std::size_t>(a.col_sum(j))];
    for (int i = 0; i < d; ++i) term *= poch_mt[static_cast<std::size_t>(i)][static_cast<std::size_t>(a.row_sum(i))];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (a(i, j) != 0) term *= wpow[static_cast<std::size_t>(i * d + j)][static_cast<std::size_t>(a(i, j))];
    sum += term;
  });
  return sum;
}

template <class T>
T eval_generating(const ParameterSet<T>& kappa, int N, std::span<const int> m, std::span<const int> mt) {
  const int d = kappa.d();
  require_degree_point(d, N, m, "m");
  require_degree_point(d, N, mt, "mt");
  const auto ud = static_cast<std::size_t>(d);

  // Coefficients live on the box 0 <= e <= m (mixed radix); anything outside
  // can never reach z^m because every factor only raises exponents.
  std::vector<std::size_t> stride(ud);
  std::size_t box = 1;
  for (std::size_t j = 0; j < ud; ++j) {
    stride[j] = box;
    box *= static_cast<std::size_t>(m[j] + 1);
  }
  std::vector<T> poly(box, T(0));
  poly[0] = T(1);
  std::vector<T> next(box);

  int mt0 = N;
  for (int v : mt) mt0 -= v;
  for (std::size_t i = 0; i <= ud; ++i) {
    const int exponent = i == 0 ? mt0 : mt[i - 1];
    std::vector<T> c(ud);
    for (std::size_t j = 0; j < ud; ++j) c[j] = kappa.u()(i, j + 1);
    for (int rep = 0; rep < exponent; ++rep) {
      next = poly;
      for (std::size_t idx = 0; idx < box; ++idx) {
        if (poly[idx] == T(0)) continue;
        std::size_t rest = idx;
        for (std::size_t j = 0; j < ud; ++j) {
          const auto digit = static_cast<int>(rest % static_cast<std::size_t>(m[j] + 1));
          rest /= static_cast<std::size_t>(m[j] + 1);
          if (digit < m[j]) next[idx + stride[j]] += c[j] * poly[idx];
        }
      }
      poly.swap(next);
    }
  }

  const T coeff = poly[box - 1];
  return coeff / detail::from_integer<T>(multinomial(N, unprime(m, N)));
}

template <class T>
PolynomialTable<T> table(const ParameterSet<T>& kappa, int N, unsigned threads) {
  if (N < 0) throw DomainError("table: N must be nonnegative");
  PolynomialTable<T> tab{kappa, N, enumerate_lattice(kappa.d(), N), {}};
  const std::size_t n = tab.lattice.size();
  tab.values = Matrix<T>(n, n);
  std::vector<std::vector<int>> primed(n);
  for (std::size_t r = 0; r < n; ++r) primed[r] = tab.lattice[r].primed();
  parallel_for(n, threads, [&](std::size_t r) {
    for (std::size_t c = 0; c < n; ++c) tab.values(r, c) = eval_hypergeometric(kappa, N, primed[r], primed[c]);
  });
  return tab;
}

template <class T>
CheckReport check_orthogonality(const PolynomialTable<T>& tab, double eps) {
  CheckReport report("orthogonality");
  const auto& kappa = tab.kappa;
  const int N = tab.N;
  const std::size_t n = tab.lattice.size();
  if (tab.values.rows() != n || tab.values.cols() != n) {
    report.fail("table has shape " + std::to_string(tab.values.rows()) + "x" + std::to_string(tab.values.cols()) +
                ", expected " + std::to_string(n) + "x" + std::to_string(n));
    return report;
  }

  const T nfact = detail::from_integer<T>(factorial(N));
  const T nu_n = detail::power(kappa.nu(), N);
  // weight_pt[n] = p~^n / n!, weight_p[n] = p^n / n!
  std::vector<T> weight_pt(n);
  std::vector<T> weight_p(n);
  for (std::size_t r = 0; r < n; ++r) {
    const T lf = detail::from_integer<T>(multi_factorial(tab.lattice[r]));
    weight_pt[r] = detail::power(kappa.pt(), tab.lattice[r]) / lf;
    weight_p[r] = detail::power(kappa.p(), tab.lattice[r]) / lf;
  }

  // Sum over the degree index n, for each pair of variables (n~, k~).
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      T lhs(0);
      for (std::size_t r = 0; r < n; ++r) lhs += tab.at(r, a) * tab.at(r, b) * weight_pt[r];
      lhs *= nfact;
      const T rhs = a == b ? T(1) / (weight_p[a] * nfact * nu_n) : T(0);
      detail::expect_equal(report, lhs, rhs, eps, [&] {
        return "sum over n, n~=" + to_string(tab.lattice[a]) + " k~=" + to_string(tab.lattice[b]);
      });
    }

  // Sum over the variable n~, for each pair of degree indices (n, k).
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      T lhs(0);
      for (std::size_t c = 0; c < n; ++c) lhs += tab.at(a, c) * tab.at(b, c) * weight_p[c];
      lhs *= nfact;
      const T rhs = a == b ? T(1) / (weight_pt[a] * nfact * nu_n) : T(0);
      detail::expect_equal(report, lhs, rhs, eps, [&] {
        return "sum over n~, n=" + to_string(tab.lattice[a]) + " k=" + to_string(tab.lattice[b]);
      });
    }
  return report;
}

template <class T>
CheckReport check_orthogonality(const ParameterSet<T>& kappa, int N, double eps) {
  return check_orthogonality(table(kappa, N), eps);
}

template <class T>
CheckReport check_duality(const ParameterSet<T>& kappa, int N, double eps, unsigned threads) {
  CheckReport report("duality");
  const auto direct = table(kappa, N, threads);
  const auto dual = table(involute(kappa, eps), N, threads);
  const std::size_t n = direct.lattice.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      detail::expect_equal(report, direct.at(r, c), dual.at(c, r), eps, [&] {
        return "P(" + to_string(direct.lattice[r]) + ", " + to_string(direct.lattice[c]) + ")";
      });
  return report;
}

#define KRAW_INSTANTIATE(T)                                                                               \
  template T eval_hypergeometric<T>(const ParameterSet<T>&, int, std::span<const int>, std::span<const int>); \
  template T eval_generating<T>(const ParameterSet<T>&, int, std::span<const int>, std::span<const int>);     \
  template PolynomialTable<T> table<T>(const ParameterSet<T>&, int, unsigned);                            \
  template CheckReport check_orthogonality<T>(const PolynomialTable<T>&, double);                         \
  template CheckReport check_orthogonality<T>(const ParameterSet<T>&, int, double);                       \
  template CheckReport check_duality<T>(const ParameterSet<T>&, int, double, unsigned);

KRAW_INSTANTIATE(Rational)
KRAW_INSTANTIATE(Complex)

}  // namespace kraw
