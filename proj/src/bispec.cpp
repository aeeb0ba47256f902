#include "kraw/bispec.hpp"

#include "check_util.hpp"

#include <map>
#include <stdexcept>

namespace kraw {

namespace {

template <class T>
using Tr = ScalarTraits<T>;

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

void require_component(int d, int i, const char* what) {
  if (i < 1 || i > d)
    throw DomainError(std::string(what) + ": index " + std::to_string(i) + " outside [1, " + std::to_string(d) + "]");
}

std::vector<int> unit_shift(int d, int plus, int minus) {
  std::vector<int> s(sz(d), 0);
  if (plus > 0) s[sz(plus - 1)] += 1;
  if (minus > 0) s[sz(minus - 1)] -= 1;
  return s;
}

template <class T>
AffineForm<T> zero_form(int d) {
  return {T(0), std::vector<T>(sz(d), T(0))};
}

/// c x_l
template <class T>
AffineForm<T> times_coordinate(int d, int l, const T& c) {
  auto f = zero_form<T>(d);
  f.linear[sz(l - 1)] = c;
  return f;
}

/// c (N - |x|)
template <class T>
AffineForm<T> times_slack(int d, int N, const T& c) {
  AffineForm<T> f{c * T(N), std::vector<T>(sz(d), -c)};
  return f;
}

/// Sum_j c_j (x_j - N/(d+1)), with c indexed 1..d.
template <class T>
AffineForm<T> centered(int d, int N, const std::vector<T>& c) {
  auto f = zero_form<T>(d);
  const T shift = T(N) / T(d + 1);
  for (int j = 1; j <= d; ++j) {
    f.linear[sz(j - 1)] = c[sz(j)];
    f.constant -= c[sz(j)] * shift;
  }
  return f;
}

/// Builds the common four-group stencil.  `down(l)` multiplies x_l for the
/// shift -v_l, `up(k)` multiplies (N - |x|) for +v_k, `cross(k, l)` multiplies
/// x_l for +v_k - v_l, and `diag` holds c_j for the centred diagonal.
template <class T, class Down, class Up, class Cross>
std::vector<StencilTerm<T>> four_group_stencil(int d, int N, Down&& down, Up&& up, const std::vector<T>& diag,
                                               Cross&& cross) {
  std::vector<StencilTerm<T>> terms;
  terms.push_back({std::vector<int>(sz(d), 0), centered<T>(d, N, diag)});
  for (int l = 1; l <= d; ++l) terms.push_back({unit_shift(d, 0, l), times_coordinate<T>(d, l, down(l))});
  for (int k = 1; k <= d; ++k) terms.push_back({unit_shift(d, k, 0), times_slack<T>(d, N, up(k))});
  for (int k = 1; k <= d; ++k)
    for (int l = 1; l <= d; ++l)
      if (k != l) terms.push_back({unit_shift(d, k, l), times_coordinate<T>(d, l, cross(k, l))});
  return terms;
}

std::string shift_label(const std::vector<int>& s) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(s[k]);
  }
  return out + ")";
}

std::string point_label(std::span<const int> x) {
  std::string out = "(";
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(x[k]);
  }
  return out + ")";
}

template <class T>
T eigenvalue_for(const DifferenceOperator<T>& op, std::span<const int> spectral) {
  switch (op.eigen) {
    case Eigenvalue::degree_component:
    case Eigenvalue::variable_component:
      return T(spectral[sz(op.index - 1)]) - T(op.N) / T(op.d + 1);
    case Eigenvalue::minus_total_degree: {
      int total = 0;
      for (int v : spectral) total += v;
      return T(-total);
    }
    case Eigenvalue::none:
      break;
  }
  throw std::logic_error("operator " + op.name + " has no eigenvalue attached");
}

}  // namespace

template <class T>
std::size_t DifferenceOperator<T>::attained_terms() const {
  std::size_t count = 0;
  for (const auto& t : terms)
    if (!t.coeff.is_zero()) ++count;
  return count;
}

template <class T>
AffineForm<T> DifferenceOperator<T>::coefficient(const std::vector<int>& shift) const {
  AffineForm<T> sum = zero_form<T>(d);
  for (const auto& t : terms)
    if (t.shift == shift) sum += t.coeff;
  return sum;
}

template <class T>
DifferenceOperator<T> operator_mtilde(const ParameterSet<T>& kappa, int N, int i) {
  const int d = kappa.d();
  require_component(d, i, "operator_mtilde");
  if (N < 0) throw DomainError("operator_mtilde: N must be nonnegative");
  const T& nu = kappa.nu();
  std::vector<T> diag(sz(d + 1), T(0));
  for (int j = 1; j <= d; ++j) diag[sz(j)] = kappa.pt(i) * (nu * kappa.p(j) * kappa.u(j, i) * kappa.u(j, i) - T(1));

  DifferenceOperator<T> op;
  op.d = d;
  op.N = N;
  op.eigen = Eigenvalue::degree_component;
  op.index = i;
  op.name = "L_" + std::to_string(i);
  op.terms = four_group_stencil<T>(
      d, N, [&](int l) { return kappa.pt(i) * kappa.u(l, i); },
      [&](int k) { return nu * kappa.pt(i) * kappa.p(k) * kappa.u(k, i); }, diag,
      [&](int k, int l) { return nu * kappa.pt(i) * kappa.p(k) * kappa.u(k, i) * kappa.u(l, i); });
  return op;
}

template <class T>
DifferenceOperator<T> operator_m(const ParameterSet<T>& kappa, int N, int i) {
  const int d = kappa.d();
  require_component(d, i, "operator_m");
  if (N < 0) throw DomainError("operator_m: N must be nonnegative");
  const T& nu = kappa.nu();
  std::vector<T> diag(sz(d + 1), T(0));
  for (int j = 1; j <= d; ++j) diag[sz(j)] = kappa.p(i) * (nu * kappa.pt(j) * kappa.u(i, j) * kappa.u(i, j) - T(1));

  DifferenceOperator<T> op;
  op.d = d;
  op.N = N;
  op.eigen = Eigenvalue::variable_component;
  op.index = i;
  op.name = "M_" + std::to_string(i);
  op.terms = four_group_stencil<T>(
      d, N, [&](int l) { return kappa.p(i) * kappa.u(i, l); },
      [&](int k) { return nu * kappa.p(i) * kappa.pt(k) * kappa.u(i, k); }, diag,
      [&](int k, int l) { return nu * kappa.p(i) * kappa.pt(k) * kappa.u(i, k) * kappa.u(i, l); });
  return op;
}

template <class T>
DifferenceOperator<T> operator_universal(const ParameterSet<T>& kappa, int N) {
  const int d = kappa.d();
  if (N < 0) throw DomainError("operator_universal: N must be nonnegative");
  const T& p0 = kappa.p(0);

  DifferenceOperator<T> op;
  op.d = d;
  op.N = N;
  op.eigen = Eigenvalue::minus_total_degree;
  op.name = "universal";

  // sum_j x_j p_j + p_0 (N - |x|) - N
  AffineForm<T> diag{p0 * T(N) - T(N), std::vector<T>(sz(d))};
  for (int j = 1; j <= d; ++j) diag.linear[sz(j - 1)] = kappa.p(j) - p0;
  op.terms.push_back({std::vector<int>(sz(d), 0), diag});
  for (int l = 1; l <= d; ++l) op.terms.push_back({unit_shift(d, 0, l), times_coordinate<T>(d, l, p0)});
  for (int l = 1; l <= d; ++l) op.terms.push_back({unit_shift(d, l, 0), times_slack<T>(d, N, kappa.p(l))});
  for (int k = 1; k <= d; ++k)
    for (int l = 1; l <= d; ++l)
      if (k != l) op.terms.push_back({unit_shift(d, k, l), times_coordinate<T>(d, l, kappa.p(k))});
  return op;
}

template <class T>
DifferenceOperator<T> summed_mtilde_operators(const ParameterSet<T>& kappa, int N) {
  const int d = kappa.d();
  std::map<std::vector<int>, AffineForm<T>> collected;
  std::vector<std::vector<int>> order;
  for (int i = 1; i <= d; ++i)
    for (const auto& t : operator_mtilde(kappa, N, i).terms) {
      auto [it, inserted] = collected.try_emplace(t.shift, zero_form<T>(d));
      if (inserted) order.push_back(t.shift);
      it->second += t.coeff;
    }

  DifferenceOperator<T> op;
  op.d = d;
  op.N = N;
  op.eigen = Eigenvalue::minus_total_degree;
  op.name = "-sum L_i - dN/(d+1)";
  for (const auto& shift : order) {
    AffineForm<T> c = collected.at(shift);
    c *= T(-1);
    if (std::all_of(shift.begin(), shift.end(), [](int s) { return s == 0; }))
      c.constant -= T(d) * T(N) / T(d + 1);
    op.terms.push_back({shift, std::move(c)});
  }
  return op;
}

template <class T>
LatticeFunction<T> apply(const DifferenceOperator<T>& op, const LatticeFunction<T>& f, const SimplexLattice& lattice) {
  if (lattice.dim() != op.d || lattice.degree() != op.N) throw DomainError("apply: lattice does not match operator");
  if (f.size() != lattice.size()) throw DomainError("apply: function size does not match lattice");
  LatticeFunction<T> out(lattice.size(), T(0));
  std::vector<int> target(sz(op.d));
  for (std::size_t r = 0; r < lattice.size(); ++r) {
    const std::vector<int> x = lattice[r].primed();
    T acc(0);
    for (const auto& t : op.terms) {
      const T c = t.coeff(x);
      if (c == T(0)) continue;
      for (std::size_t k = 0; k < x.size(); ++k) target[k] = x[k] + t.shift[k];
      const std::size_t s = lattice.rank_primed(target);
      if (s == lattice.size()) {
        if (!Tr<T>::exact && Tr<T>::is_zero(c)) continue;
        throw std::logic_error("apply: " + op.name + " reaches outside the lattice from " + point_label(x) +
                               " via shift " + shift_label(t.shift));
      }
      acc += c * f[s];
    }
    out[r] = acc;
  }
  return out;
}

template <class T>
CheckReport check_stencil(const DifferenceOperator<T>& op, const SimplexLattice& lattice) {
  CheckReport report("stencil " + op.name);
  const std::size_t bound = sz(op.d * op.d + op.d + 1);
  if (op.terms.size() > bound)
    report.fail(op.name + " has " + std::to_string(op.terms.size()) + " terms, bound is " + std::to_string(bound));
  std::vector<int> target(sz(op.d));
  for (std::size_t r = 0; r < lattice.size(); ++r) {
    const std::vector<int> x = lattice[r].primed();
    for (const auto& t : op.terms) {
      for (std::size_t k = 0; k < x.size(); ++k) target[k] = x[k] + t.shift[k];
      if (lattice.contains_primed(target)) continue;
      const T c = t.coeff(x);
      if (!Tr<T>::is_zero(c))
        report.fail(op.name + " boundary coefficient for shift " + shift_label(t.shift) + " at " + point_label(x) +
                    " is " + Tr<T>::str(c));
    }
  }
  return report;
}

template <class T>
CheckReport check_eigen(const PolynomialTable<T>& tab, double eps) {
  CheckReport report("recurrence");
  const auto& kappa = tab.kappa;
  const int d = kappa.d();
  const int N = tab.N;
  const SimplexLattice lattice(d, N);
  const std::size_t n = lattice.size();

  std::string counts;
  for (int i = 1; i <= d; ++i) {
    for (const auto& op : {operator_mtilde(kappa, N, i), operator_m(kappa, N, i)}) {
      report.absorb(check_stencil(op, lattice));
      if (!counts.empty()) counts += ", ";
      counts += op.name + "=" + std::to_string(op.attained_terms());

      const bool rows = op.eigen == Eigenvalue::degree_component;
      for (std::size_t a = 0; a < n; ++a) {
        LatticeFunction<T> f(n);
        for (std::size_t b = 0; b < n; ++b) f[b] = rows ? tab.at(a, b) : tab.at(b, a);
        const LatticeFunction<T> g = apply(op, f, lattice);
        const std::vector<int> spectral = lattice[a].primed();
        const T lambda = eigenvalue_for(op, spectral);
        for (std::size_t b = 0; b < n; ++b)
          detail::expect_equal(report, g[b], lambda * f[b], eps, [&] {
            const std::string fixed = rows ? "m=" : "m~=";
            const std::string moving = rows ? "m~=" : "m=";
            return op.name + " with " + fixed + point_label(spectral) + " at " + moving + point_label(lattice[b].primed());
          });
      }
    }
  }
  const auto dual = involute(kappa, eps);
  for (int i = 1; i <= d; ++i) {
    const auto direct = operator_m(kappa, N, i);
    const auto mirrored = operator_mtilde(dual, N, i);
    for (const auto& t : mirrored.terms) {
      const AffineForm<T> got = direct.coefficient(t.shift);
      detail::expect_equal(report, got.constant, t.coeff.constant, eps, [&] {
        return direct.name + " vs involuted L_" + std::to_string(i) + ", shift " + shift_label(t.shift) + ", constant";
      });
      for (std::size_t l = 0; l < got.linear.size(); ++l)
        detail::expect_equal(report, got.linear[l], t.coeff.linear[l], eps, [&] {
          return direct.name + " vs involuted L_" + std::to_string(i) + ", shift " + shift_label(t.shift) +
                 ", coefficient of x_" + std::to_string(l + 1);
        });
    }
  }
  report.notes.push_back("attained stencil terms (bound " + std::to_string(d * d + d + 1) + "): " + counts);
  return report;
}

template <class T>
CheckReport check_eigen(const ParameterSet<T>& kappa, int N, double eps) {
  return check_eigen(table(kappa, N), eps);
}

template <class T>
CheckReport check_universal(const PolynomialTable<T>& tab, double eps) {
  CheckReport report("universal");
  const auto& kappa = tab.kappa;
  const int N = tab.N;
  const SimplexLattice lattice(kappa.d(), N);
  const std::size_t n = lattice.size();

  const auto op = operator_universal(kappa, N);
  report.absorb(check_stencil(op, lattice));
  for (std::size_t a = 0; a < n; ++a) {
    LatticeFunction<T> f(n);
    for (std::size_t b = 0; b < n; ++b) f[b] = tab.at(a, b);
    const LatticeFunction<T> g = apply(op, f, lattice);
    const std::vector<int> m = lattice[a].primed();
    const T lambda = eigenvalue_for(op, m);
    for (std::size_t b = 0; b < n; ++b)
      detail::expect_equal(report, g[b], lambda * f[b], eps, [&] {
        return "universal with m=" + point_label(m) + " at m~=" + point_label(lattice[b].primed());
      });
  }

  const auto summed = summed_mtilde_operators(kappa, N);
  std::vector<std::vector<int>> shifts;
  for (const auto& t : op.terms) shifts.push_back(t.shift);
  for (const auto& t : summed.terms)
    if (std::find(shifts.begin(), shifts.end(), t.shift) == shifts.end()) shifts.push_back(t.shift);
  for (const auto& s : shifts) {
    const AffineForm<T> want = op.coefficient(s);
    const AffineForm<T> got = summed.coefficient(s);
    detail::expect_equal(report, got.constant, want.constant, eps,
                         [&] { return "summed recurrence, shift " + shift_label(s) + ", constant term"; });
    for (std::size_t l = 0; l < want.linear.size(); ++l)
      detail::expect_equal(report, got.linear[l], want.linear[l], eps, [&] {
        return "summed recurrence, shift " + shift_label(s) + ", coefficient of x_" + std::to_string(l + 1);
      });
  }
  return report;
}

template <class T>
CheckReport check_universal(const ParameterSet<T>& kappa, int N, double eps) {
  return check_universal(table(kappa, N), eps);
}

template <class T>
CheckReport check_commute(const ParameterSet<T>& kappa, int N, double eps) {
  CheckReport report("commute");
  const int d = kappa.d();
  const SimplexLattice lattice(d, N);
  const std::size_t n = lattice.size();
  if (d == 1) {
    report.notes.push_back("single generator per family; commutativity is vacuous");
    return report;
  }

  std::vector<DifferenceOperator<T>> ls;
  std::vector<DifferenceOperator<T>> ms;
  for (int i = 1; i <= d; ++i) {
    ls.push_back(operator_mtilde(kappa, N, i));
    ms.push_back(operator_m(kappa, N, i));
  }

  for (const auto* family : {&ls, &ms})
    for (std::size_t a = 0; a < family->size(); ++a)
      for (std::size_t b = a + 1; b < family->size(); ++b) {
        const auto& A = (*family)[a];
        const auto& B = (*family)[b];
        for (std::size_t r = 0; r < n; ++r) {
          LatticeFunction<T> e(n, T(0));
          e[r] = T(1);
          const auto ab = apply(A, apply(B, e, lattice), lattice);
          const auto ba = apply(B, apply(A, e, lattice), lattice);
          for (std::size_t s = 0; s < n; ++s)
            detail::expect_equal(report, ab[s], ba[s], eps, [&] {
              return A.name + B.name + " vs " + B.name + A.name + " on delta at " + point_label(lattice[r].primed()) +
                     ", evaluated at " + point_label(lattice[s].primed());
            });
        }
      }
  return report;
}

#define KRAW_INSTANTIATE(T)                                                                                  \
  template struct DifferenceOperator<T>;                                                                    \
  template DifferenceOperator<T> operator_mtilde<T>(const ParameterSet<T>&, int, int);                      \
  template DifferenceOperator<T> operator_m<T>(const ParameterSet<T>&, int, int);                           \
  template DifferenceOperator<T> operator_universal<T>(const ParameterSet<T>&, int);                        \
  template DifferenceOperator<T> summed_mtilde_operators<T>(const ParameterSet<T>&, int);                   \
  template LatticeFunction<T> apply<T>(const DifferenceOperator<T>&, const LatticeFunction<T>&,             \
                                       const SimplexLattice&);                                              \
  template CheckReport check_stencil<T>(const DifferenceOperator<T>&, const SimplexLattice&);               \
  template CheckReport check_eigen<T>(const PolynomialTable<T>&, double);                                   \
  template CheckReport check_eigen<T>(const ParameterSet<T>&, int, double);                                 \
  template CheckReport check_universal<T>(const PolynomialTable<T>&, double);                               \
  template CheckReport check_universal<T>(const ParameterSet<T>&, int, double);                             \
  template CheckReport check_commute<T>(const ParameterSet<T>&, int, double);

KRAW_INSTANTIATE(Rational)
KRAW_INSTANTIATE(Complex)

}  // namespace kraw
