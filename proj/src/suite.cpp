#include "kraw/suite.hpp"

#include "kraw/bispec.hpp"
#include "kraw/liemod.hpp"

#include "check_util.hpp"

#include <algorithm>

namespace kraw {

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"def11",   "orthogonality", "duality", "recurrence",
                                                 "universal", "commute",     "lemma21", "lemma22",
                                                 "norms",   "adjacency",     "transition", "threeway"};
  return names;
}

std::vector<std::string> parse_suite(std::string_view list) {
  if (list.empty() || list == "full") return check_names();
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    std::string name(list.substr(start, comma - start));
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    if (name.empty()) throw ParseError("empty check name in suite list");
    const auto& known = check_names();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ParseError("unknown check '" + name + "'");
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    start = comma + 1;
  }
  return out;
}

template <class T>
CheckReport check_def11(const ParameterSet<T>& kappa, double eps) {
  CheckReport report("def11");
  const auto result = validate(kappa.raw(), eps);
  for (const auto& v : result.report.violations) report.fail("condition " + v.condition + ": " + v.detail);
  return report;
}

template <class T>
CheckReport check_threeway(const ParameterSet<T>& kappa, int N, double eps, unsigned threads) {
  CheckReport report("threeway");
  const SimplexLattice lattice(kappa.d(), N);
  const std::size_t n = lattice.size();
  Matrix<T> hyper(n, n);
  Matrix<T> gen(n, n);
  Matrix<T> pair(n, n);
  parallel_for(n, threads, [&](std::size_t r) {
    const auto m = lattice[r].primed();
    for (std::size_t c = 0; c < n; ++c) {
      const auto mt = lattice[c].primed();
      hyper(r, c) = eval_hypergeometric(kappa, N, m, mt);
      gen(r, c) = eval_generating(kappa, N, m, mt);
      pair(r, c) = pairing_eval(kappa, N, lattice[r], lattice[c]);
    }
  });
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      auto where = [&](const char* method) {
        return [&, method] {
          return std::string(method) + " at P(" + to_string(lattice[r]) + ", " + to_string(lattice[c]) + ")";
        };
      };
      detail::expect_equal(report, gen(r, c), hyper(r, c), eps, where("generating vs hypergeometric"));
      detail::expect_equal(report, pair(r, c), hyper(r, c), eps, where("pairing vs hypergeometric"));
    }
  return report;
}

template <class T>
CheckReport run_check(const std::string& name, const ParameterSet<T>& kappa, int N, const SuiteOptions<T>& o) {
  auto with_table = [&](auto&& fn) {
    if (o.table) return fn(*o.table);
    return fn(table(kappa, N, o.threads));
  };
  if (name == "def11") return check_def11(kappa, o.eps);
  if (name == "orthogonality")
    return with_table([&](const PolynomialTable<T>& t) { return check_orthogonality(t, o.eps); });
  if (name == "duality") return check_duality(kappa, N, o.eps, o.threads);
  if (name == "recurrence") return with_table([&](const PolynomialTable<T>& t) { return check_eigen(t, o.eps); });
  if (name == "universal") return with_table([&](const PolynomialTable<T>& t) { return check_universal(t, o.eps); });
  if (name == "commute") return check_commute(kappa, N, o.eps);
  if (name == "lemma21") return check_antiauto(kappa, o.eps);
  if (name == "lemma22") return check_generation(kappa, o.eps);
  if (name == "norms") {
    CheckReport r = check_dual_norms(kappa, N, o.eps);
    r.absorb(check_representation(kappa, N, 50, o.eps));
    return r;
  }
  if (name == "adjacency") return check_adjacency(kappa, N, o.eps);
  if (name == "transition") return check_transition(kappa, N, o.eps);
  if (name == "threeway") return check_threeway(kappa, N, o.eps, o.threads);
  throw ParseError("unknown check '" + name + "'");
}

template <class T>
std::vector<CheckReport> run_suite(const std::vector<std::string>& names, const ParameterSet<T>& kappa, int N,
                                   const SuiteOptions<T>& options) {
  std::vector<CheckReport> out;
  out.reserve(names.size());
  for (const auto& name : names) out.push_back(run_check(name, kappa, N, options));
  return out;
}

#define KRAW_INSTANTIATE(T)                                                                               \
  template CheckReport check_def11<T>(const ParameterSet<T>&, double);                                   \
  template CheckReport check_threeway<T>(const ParameterSet<T>&, int, double, unsigned);                 \
  template CheckReport run_check<T>(const std::string&, const ParameterSet<T>&, int, const SuiteOptions<T>&); \
  template std::vector<CheckReport> run_suite<T>(const std::vector<std::string>&, const ParameterSet<T>&, int, \
                                                 const SuiteOptions<T>&);

KRAW_INSTANTIATE(Rational)
KRAW_INSTANTIATE(Complex)

}  // namespace kraw
