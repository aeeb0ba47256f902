#ifndef KRAW_HYPERG_HPP
#define KRAW_HYPERG_HPP

// Evaluation of the multivariate Krawtchouk polynomials P(m, m~) and the
// table-level orthogonality and duality checks.

#include "kraw/kappa.hpp"
#include "kraw/report.hpp"

#include <span>
#include <vector>

namespace kraw {

/// Gelfand hypergeometric sum over the kernel matrices A in M_{d,N},
/// pruned to row sums <= m~_i and column sums <= m_j.
template <class T>
T eval_hypergeometric(const ParameterSet<T>& kappa, int N, std::span<const int> m, std::span<const int> mt);

/// Coefficient of z^m in prod_{i=0}^d (1 + sum_j u_{i,j} z_j)^{m~_i},
/// divided by N!/(m_0! m!).
template <class T>
T eval_generating(const ParameterSet<T>& kappa, int N, std::span<const int> m, std::span<const int> mt);

/// Dense table of P(n', n~') over I x I in lattice order; rows are indexed
/// by n (degree index), columns by n~ (variable).
template <class T>
struct PolynomialTable {
  ParameterSet<T> kappa;
  int N = 0;
  std::vector<MultiIndex> lattice;
  Matrix<T> values;

  const T& at(std::size_t n, std::size_t nt) const { return values(n, nt); }
};

template <class T>
PolynomialTable<T> table(const ParameterSet<T>& kappa, int N, unsigned threads = 1);

/// Both orthogonality relations (sum over the degree index and sum over the
/// variable), with their right-hand normalisations.
template <class T>
CheckReport check_orthogonality(const PolynomialTable<T>& tab, double eps = kDefaultEps);

template <class T>
CheckReport check_orthogonality(const ParameterSet<T>& kappa, int N, double eps = kDefaultEps);

/// table(kappa, N) against the transpose of table(involute(kappa), N).
template <class T>
CheckReport check_duality(const ParameterSet<T>& kappa, int N, double eps = kDefaultEps, unsigned threads = 1);

/// Checks |m| <= N, m_j >= 0 and the size of m; throws DomainError otherwise.
void require_degree_point(int d, int N, std::span<const int> m, const char* what);

}  // namespace kraw

#endif  // KRAW_HYPERG_HPP
