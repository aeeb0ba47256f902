// Acceptance criteria 1-10.  Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.  Criteria 1-9 run in exact rational arithmetic with
// zero tolerance; criterion 10 runs in double precision with eps = 1e-10.

#include "kraw/bispec.hpp"
#include "kraw/liemod.hpp"
#include "kraw/suite.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using kraw::CheckReport;
using kraw::ParameterSet;
using kraw::Rational;

namespace {

// Pinned limits.
constexpr double kApproxTolerance = 1e-10;
constexpr double kLimitValiditySeconds = 1.0;
constexpr double kLimitThreewaySeconds = 60.0;
constexpr double kLimitLieSeconds = 30.0;

Rational r(long n, long d = 1) { return Rational(n, d); }

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<Rational> random_p(std::mt19937& rng, int d) {
  std::vector<Rational> w;
  Rational total = 0;
  for (int j = 0; j <= d; ++j) {
    w.push_back(Rational(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 6)));
    total += w.back();
  }
  for (auto& x : w) x /= total;
  return w;
}

struct Named {
  std::string name;
  ParameterSet<Rational> kappa;
};

/// Family representatives by dimension.  Hoare-Rahman exists only for d = 2.
std::vector<Named> representatives(int d) {
  switch (d) {
    case 1:
      return {{"griffiths(1/3,2/3)", kraw::griffiths_from_p(std::vector<Rational>{r(1, 3), r(2, 3)})},
              {"milch(2/5,3/5)", kraw::family_milch(std::vector<Rational>{r(2, 5), r(3, 5)})},
              {"ds(3,1)", kraw::family_ds(r(3), 1)}};
    case 2:
      return {{"hr(1,2,3,4)", kraw::family_hoare_rahman(r(1), r(2), r(3), r(4))},
              {"milch(1/2,1/4,1/4)", kraw::family_milch(std::vector<Rational>{r(1, 2), r(1, 4), r(1, 4)})},
              {"ds(2,2)", kraw::family_ds(r(2), 2)},
              {"griffiths(1/5,3/10,1/2)", kraw::griffiths_from_p(std::vector<Rational>{r(1, 5), r(3, 10), r(1, 2)})}};
    default:
      return {{"milch(1/2,1/6,1/6,1/6)", kraw::family_milch(std::vector<Rational>{r(1, 2), r(1, 6), r(1, 6), r(1, 6)})},
              {"ds(1/2,3)", kraw::family_ds(r(1, 2), 3)},
              {"griffiths(1/4,1/8,1/8,1/2)",
               kraw::griffiths_from_p(std::vector<Rational>{r(1, 4), r(1, 8), r(1, 8), r(1, 2)})}};
  }
}

/// Hoare-Rahman grids drawn from a fixed value list; combinations that divide
/// by zero raise DomainError and are counted separately.
struct HrGrid {
  std::vector<std::array<Rational, 4>> accepted;
  int rejected = 0;
};

HrGrid hr_grids(std::size_t want) {
  const std::vector<Rational> values = {r(1), r(2), r(3), r(5), r(1, 2), r(-1), r(2, 3), r(-3, 4)};
  HrGrid out;
  std::mt19937 rng(41);
  while (out.accepted.size() < want) {
    std::array<Rational, 4> g;
    for (auto& v : g) v = values[rng() % values.size()];
    try {
      (void)kraw::family_hoare_rahman(g[0], g[1], g[2], g[3]);
      out.accepted.push_back(g);
    } catch (const kraw::DomainError&) {
      ++out.rejected;
    }
  }
  return out;
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> problems;
  std::vector<std::string> info;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (problems.size() < 8) problems.push_back(what);
    }
  }

  void absorb(const CheckReport& rep, const std::string& where) {
    if (!rep.pass) {
      std::string first = rep.failures.empty() ? "" : ": " + rep.failures.front();
      require(false, where + " " + rep.check + first);
    }
  }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0)
    out.require(secs < limit_seconds, "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(limit_seconds) + " s");
  if (!out.pass) ++failures;

  std::printf("%s criterion %d: %s (%.3f s", out.pass ? "PASS" : "FAIL", id, title.c_str(), secs);
  if (limit_seconds > 0) std::printf(", limit %.0f s", limit_seconds);
  std::printf(")\n");
  for (const auto& s : out.info) std::printf("    %s\n", s.c_str());
  for (const auto& s : out.problems) std::printf("    failure: %s\n", s.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  const HrGrid hr = hr_grids(24);

  criterion(1, "parameter-set validity across families", kLimitValiditySeconds, [&](Outcome& o) {
    int count = 0;
    auto valid = [&](const ParameterSet<Rational>& k, const std::string& what) {
      o.require(kraw::validate(k.raw()).report.valid, what);
      ++count;
    };
    for (const auto& g : hr.accepted) valid(kraw::family_hoare_rahman(g[0], g[1], g[2], g[3]), "hoare-rahman grid");

    std::mt19937 rng(17);
    int milch = 0;
    for (int d = 2; d <= 3; ++d)
      for (int t = 0; t < 6; ++t, ++milch) valid(kraw::family_milch(random_p(rng, d)), "milch d=" + std::to_string(d));

    int ds = 0;
    for (const Rational& q : {r(2), r(3), r(1, 2), r(-1)})
      for (int d = 1; d <= 3; ++d, ++ds) valid(kraw::family_ds(q, d), "ds q=" + kraw::to_string(q) + " d=" + std::to_string(d));

    int griffiths = 0;
    for (int d = 1; d <= 3; ++d)
      for (int t = 0; t < 4; ++t, ++griffiths) valid(kraw::griffiths_from_p(random_p(rng, d)), "griffiths d=" + std::to_string(d));

    o.require(hr.accepted.size() >= 20 && milch >= 10 && griffiths >= 10, "sample counts");
    o.info.push_back("hoare-rahman grids " + std::to_string(hr.accepted.size()) + " (rejected as singular: " +
                     std::to_string(hr.rejected) + "), milch " + std::to_string(milch) + ", ds " + std::to_string(ds) +
                     ", griffiths " + std::to_string(griffiths) + "; total " + std::to_string(count));
  });

  criterion(2, "three-way evaluation agreement", kLimitThreewaySeconds, [&](Outcome& o) {
    std::size_t pairs = 0;
    for (int d = 1; d <= 3; ++d)
      for (const auto& rep : representatives(d))
        for (int N = 1; N <= (d == 3 ? 3 : 5); ++N) {
          o.absorb(kraw::check_threeway(rep.kappa, N, kraw::kDefaultEps, worker_threads()),
                   rep.name + " N=" + std::to_string(N));
          const std::size_t n = kraw::SimplexLattice(d, N).size();
          pairs += n * n;
        }
    o.info.push_back(std::to_string(pairs) + " (m, m~) pairs compared");
  });

  criterion(3, "orthogonality in both directions", 0, [&](Outcome& o) {
    for (int d = 1; d <= 3; ++d)
      for (const auto& rep : representatives(d))
        for (int N = 1; N <= (d == 3 ? 3 : 4); ++N)
          o.absorb(kraw::check_orthogonality(rep.kappa, N), rep.name + " N=" + std::to_string(N));

    // d = 1, p = (1/2, 1/2): sum_x C(N,x) 2^-N K_n(x) K_k(x) = delta_{nk} / C(N,n),
    // with K_n(x) taken from the library table and from the classical closed form.
    const auto half = kraw::griffiths_from_p(std::vector<Rational>{r(1, 2), r(1, 2)});
    for (int N = 1; N <= 4; ++N) {
      const auto tab = kraw::table(half, N);
      for (int n = 0; n <= N; ++n) {
        for (int x = 0; x <= N; ++x)
          o.require(tab.at(static_cast<std::size_t>(n), static_cast<std::size_t>(x)) ==
                        oracle::classical_krawtchouk(n, x, N, r(1, 2)),
                    "classical value N=" + std::to_string(N));
        for (int k = 0; k <= N; ++k) {
          Rational s = 0;
          for (int x = 0; x <= N; ++x)
            s += oracle::binom(N, x) / Rational(1 << N) * tab.at(static_cast<std::size_t>(n), static_cast<std::size_t>(x)) *
                 tab.at(static_cast<std::size_t>(k), static_cast<std::size_t>(x));
          o.require(s == (n == k ? 1 / oracle::binom(N, n) : Rational(0)), "classical orthogonality N=" + std::to_string(N));
        }
      }
    }
  });

  criterion(4, "bispectral recurrences", 0, [&](Outcome& o) {
    for (int d = 1; d <= 3; ++d)
      for (const auto& rep : representatives(d)) {
        std::string counts;
        for (int N = 1; N <= 4; ++N) {
          const auto report = kraw::check_eigen(rep.kappa, N);
          o.absorb(report, rep.name + " N=" + std::to_string(N));
          if (N == 4 && !report.notes.empty()) counts = report.notes.back();
        }
        o.info.push_back(rep.name + " N=4 " + counts);
      }
  });

  criterion(5, "universal equation and summed-recurrence identity", 0, [&](Outcome& o) {
    for (int d = 1; d <= 3; ++d)
      for (const auto& rep : representatives(d))
        for (int N = 1; N <= 4; ++N) o.absorb(kraw::check_universal(rep.kappa, N), rep.name + " N=" + std::to_string(N));

    // Coefficient-level identity for d = 2, term by term.
    for (const auto& rep : representatives(2))
      for (int N = 1; N <= 4; ++N) {
        const auto U = kraw::operator_universal(rep.kappa, N);
        const auto S = kraw::summed_mtilde_operators(rep.kappa, N);
        o.require(U.terms.size() == S.terms.size(), rep.name + " summed operator term count");
        for (const auto& t : U.terms)
          o.require(S.coefficient(t.shift) == t.coeff, rep.name + " summed coefficient");
      }
  });

  criterion(6, "commutativity of both operator families", 0, [&](Outcome& o) {
    for (int d = 2; d <= 3; ++d)
      for (const auto& rep : representatives(d))
        for (int N = 1; N <= 4; ++N) o.absorb(kraw::check_commute(rep.kappa, N), rep.name + " N=" + std::to_string(N));
  });

  criterion(7, "Lie structure suite", kLimitLieSeconds, [&](Outcome& o) {
    for (int d = 1; d <= 2; ++d)
      for (const auto& rep : representatives(d)) {
        o.absorb(kraw::check_antiauto(rep.kappa), rep.name);
        o.absorb(kraw::check_generation(rep.kappa), rep.name);
        for (int N = 1; N <= 3; ++N) {
          const std::string where = rep.name + " N=" + std::to_string(N);
          o.absorb(kraw::check_dual_norms(rep.kappa, N), where);
          o.absorb(kraw::check_representation(rep.kappa, N), where);
          o.absorb(kraw::check_adjacency(rep.kappa, N), where);
          o.absorb(kraw::check_transition(rep.kappa, N), where);
        }
      }
  });

  criterion(8, "duality under the bispectral involution", 0, [&](Outcome& o) {
    for (int d = 1; d <= 2; ++d)
      for (const auto& rep : representatives(d))
        for (int N = 1; N <= 4; ++N)
          o.absorb(kraw::check_duality(rep.kappa, N, kraw::kDefaultEps, worker_threads()), rep.name + " N=" + std::to_string(N));
    for (const auto& g : hr.accepted) {
      const auto k = kraw::family_hoare_rahman(g[0], g[1], g[2], g[3]);
      const auto swapped = kraw::family_hoare_rahman(g[0], g[2], g[1], g[3]);
      o.require(kraw::involute(k) == swapped, "hoare-rahman involution swaps the middle parameters");
    }
    o.info.push_back("hoare-rahman involution checked on " + std::to_string(hr.accepted.size()) + " grids");
  });

  criterion(9, "d = 1 degree-one closed form", 0, [&](Outcome& o) {
    std::mt19937 rng(9);
    int count = 0;
    for (int t = 0; t < 12; ++t) {
      const auto k = kraw::griffiths_from_p(random_p(rng, 1));
      const Rational w = 1 - k.u(1, 1);
      for (int N = 1; N <= 6; ++N)
        for (int x = 0; x <= N; ++x, ++count)
          o.require(kraw::eval_hypergeometric(k, N, std::vector<int>{1}, std::vector<int>{x}) == 1 - Rational(x) * w / N,
                    "p1=" + kraw::to_string(k.p(1)) + " N=" + std::to_string(N));
    }
    o.info.push_back(std::to_string(count) + " values compared");
  });

  criterion(10, "approximate mode residuals over criteria 2-4", 0, [&](Outcome& o) {
    double worst = 0.0;
    for (int d = 1; d <= 3; ++d)
      for (const auto& rep : representatives(d)) {
        const auto a = kraw::approximate(rep.kappa);
        for (int N = 1; N <= (d == 3 ? 3 : 5); ++N) {
          const std::string where = rep.name + " N=" + std::to_string(N);
          std::vector<CheckReport> reports{kraw::check_threeway(a, N, kApproxTolerance, worker_threads())};
          if (N <= 4 && (d < 3 || N <= 3)) reports.push_back(kraw::check_orthogonality(a, N, kApproxTolerance));
          if (N <= 4) reports.push_back(kraw::check_eigen(a, N, kApproxTolerance));
          for (const auto& rp : reports) {
            o.absorb(rp, where);
            worst = std::max(worst, rp.max_residual);
          }
        }
      }
    o.require(worst < kApproxTolerance, "max residual " + std::to_string(worst));
    std::ostringstream s;
    s << "max residual " << worst << " (tolerance " << kApproxTolerance << ")";
    o.info.push_back(s.str());
  });

  return failures == 0 ? 0 : 1;
}
