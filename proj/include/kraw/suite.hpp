#ifndef KRAW_SUITE_HPP
#define KRAW_SUITE_HPP

// Named verification passes and the dispatcher used by the command line.

#include "kraw/hyperg.hpp"
#include "kraw/report.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace kraw {

/// All check names in the order the full suite runs them.
const std::vector<std::string>& check_names();

/// Splits a comma list of check names.  Empty or "full" selects every check;
/// duplicates are dropped.  Throws ParseError on an unknown name.
std::vector<std::string> parse_suite(std::string_view list);

/// Re-runs validation on the raw data of an already sealed parameter set.
template <class T>
CheckReport check_def11(const ParameterSet<T>& kappa, double eps = kDefaultEps);

/// eval_hypergeometric, eval_generating and pairing_eval agree on every pair.
template <class T>
CheckReport check_threeway(const ParameterSet<T>& kappa, int N, double eps = kDefaultEps, unsigned threads = 1);

template <class T>
struct SuiteOptions {
  double eps = kDefaultEps;
  unsigned threads = 1;
  /// When set, orthogonality, recurrence and universal read this table
  /// instead of evaluating the polynomials again.
  const PolynomialTable<T>* table = nullptr;
};

/// Runs one named check.  Throws ParseError for an unknown name.
template <class T>
CheckReport run_check(const std::string& name, const ParameterSet<T>& kappa, int N, const SuiteOptions<T>& options);

template <class T>
std::vector<CheckReport> run_suite(const std::vector<std::string>& names, const ParameterSet<T>& kappa, int N,
                                   const SuiteOptions<T>& options);

}  // namespace kraw

#endif  // KRAW_SUITE_HPP
