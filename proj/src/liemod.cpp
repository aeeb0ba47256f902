#include "kraw/liemod.hpp"

#include "kraw/hyperg.hpp"

#include "check_util.hpp"

#include <random>

namespace kraw {

namespace {

template <class T>
using Tr = ScalarTraits<T>;

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

void require_index(int d, int i, int lo, const char* what) {
  if (i < lo || i > d)
    throw DomainError(std::string(what) + ": index " + std::to_string(i) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(d) + "]");
}

template <class T>
T weight(int lambda_i, int N, int d) {
  return T(lambda_i) - T(N) / T(d + 1);
}

/// Basis {phi_1..phi_d} followed by {e_{k,l} : k != l}, with labels.
template <class T>
std::vector<std::pair<std::string, Matrix<T>>> sl_basis(int d) {
  std::vector<std::pair<std::string, Matrix<T>>> out;
  for (int j = 1; j <= d; ++j) out.emplace_back("phi_" + std::to_string(j), basis_phi<T>(d, j));
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l)
      if (k != l) out.emplace_back("e_" + std::to_string(k) + std::to_string(l), basis_e<T>(d, k, l));
  return out;
}

}  // namespace

bool adjacent(const MultiIndex& lambda, const MultiIndex& mu) {
  if (lambda.size() != mu.size()) return false;
  int plus = 0;
  int minus = 0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    const int diff = lambda[k] - mu[k];
    if (diff == 1)
      ++plus;
    else if (diff == -1)
      ++minus;
    else if (diff != 0)
      return false;
  }
  return plus == 1 && minus == 1;
}

template <class T>
Matrix<T> basis_phi(int d, int i) {
  if (d < 1) throw DomainError("basis_phi: d must be positive");
  require_index(d, i, 0, "basis_phi");
  const auto n = sz(d + 1);
  if (i == 0) {
    Matrix<T> sum(n, n);
    for (int j = 1; j <= d; ++j) sum -= basis_phi<T>(d, j);
    return sum;
  }
  Matrix<T> phi = Matrix<T>::identity(n) * (T(-1) / T(d + 1));
  phi(sz(i), sz(i)) += T(1);
  return phi;
}

template <class T>
Matrix<T> basis_e(int d, int i, int j) {
  if (d < 1) throw DomainError("basis_e: d must be positive");
  require_index(d, i, 0, "basis_e");
  require_index(d, j, 0, "basis_e");
  if (i == j) throw DomainError("basis_e: i and j must differ");
  Matrix<T> e(sz(d + 1), sz(d + 1));
  e(sz(i), sz(j)) = T(1);
  return e;
}

template <class T>
Conjugator<T> conjugator(const ParameterSet<T>& kappa) {
  return {kappa.Pt() * kappa.u().transpose(), kappa.nu() * kappa.P() * kappa.u()};
}

template <class T>
Matrix<T> conjugate(const Conjugator<T>& c, const Matrix<T>& beta) {
  return c.r * beta * c.r_inv;
}

template <class T>
Matrix<T> dual_phi(const ParameterSet<T>& kappa, int i) {
  return conjugate(conjugator(kappa), basis_phi<T>(kappa.d(), i));
}

template <class T>
Matrix<T> dual_e(const ParameterSet<T>& kappa, int i, int j) {
  return conjugate(conjugator(kappa), basis_e<T>(kappa.d(), i, j));
}

template <class T>
Matrix<T> dual_phi_closed_form(const ParameterSet<T>& kappa, int i) {
  const int d = kappa.d();
  require_index(d, i, 1, "dual_phi_closed_form");
  const T& nu = kappa.nu();
  Matrix<T> out(sz(d + 1), sz(d + 1));
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l)
      if (k != l) out += (nu * kappa.p(i) * kappa.pt(k) * kappa.u(i, k) * kappa.u(i, l)) * basis_e<T>(d, k, l);
  for (int j = 1; j <= d; ++j)
    out += (kappa.p(i) * (nu * kappa.pt(j) * kappa.u(i, j) * kappa.u(i, j) - T(1))) * basis_phi<T>(d, j);
  return out;
}

template <class T>
Matrix<T> phi_from_dual_expansion(const ParameterSet<T>& kappa, int i) {
  const int d = kappa.d();
  require_index(d, i, 1, "phi_from_dual_expansion");
  const auto c = conjugator(kappa);
  const T& nu = kappa.nu();
  Matrix<T> out(sz(d + 1), sz(d + 1));
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l)
      if (k != l)
        out += (nu * kappa.pt(i) * kappa.p(k) * kappa.u(k, i) * kappa.u(l, i)) * conjugate(c, basis_e<T>(d, k, l));
  for (int j = 1; j <= d; ++j)
    out += (kappa.pt(i) * (nu * kappa.p(j) * kappa.u(j, i) * kappa.u(j, i) - T(1))) *
           conjugate(c, basis_phi<T>(d, j));
  return out;
}

template <class T>
Matrix<T> antiauto(const ParameterSet<T>& kappa, const Matrix<T>& beta) {
  const auto n = sz(kappa.d() + 1);
  if (beta.rows() != n || beta.cols() != n) throw DomainError("antiauto: matrix size does not match d");
  Matrix<T> out(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out(a, b) = kappa.pt()[a] * beta(b, a) / kappa.pt()[b];
  return out;
}

// ---------------------------------------------------------------------------
// HomogPoly

template <class T>
HomogPoly<T> HomogPoly<T>::monomial(const MultiIndex& lambda, T coeff) {
  HomogPoly f(static_cast<int>(lambda.size()) - 1, lambda.degree());
  f.add(lambda, coeff);
  return f;
}

template <class T>
T HomogPoly<T>::coefficient(const MultiIndex& lambda) const {
  const auto it = terms_.find(lambda);
  return it == terms_.end() ? T(0) : it->second;
}

template <class T>
void HomogPoly<T>::add(const MultiIndex& lambda, const T& coeff) {
  if (lambda.size() != sz(d_ + 1) || lambda.degree() != N_)
    throw DomainError("HomogPoly: monomial " + to_string(lambda) + " is not in the degree-" + std::to_string(N_) +
                      " lattice");
  if (coeff == T(0)) return;
  auto [it, inserted] = terms_.try_emplace(lambda, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == T(0)) terms_.erase(it);
  }
}

template <class T>
HomogPoly<T>& HomogPoly<T>::operator+=(const HomogPoly& o) {
  if (o.d_ != d_ || o.N_ != N_) throw DomainError("HomogPoly: degree mismatch in sum");
  for (const auto& [lambda, c] : o.terms_) add(lambda, c);
  return *this;
}

template <class T>
HomogPoly<T>& HomogPoly<T>::operator-=(const HomogPoly& o) {
  if (o.d_ != d_ || o.N_ != N_) throw DomainError("HomogPoly: degree mismatch in difference");
  for (const auto& [lambda, c] : o.terms_) add(lambda, -c);
  return *this;
}

template <class T>
HomogPoly<T>& HomogPoly<T>::operator*=(const T& s) {
  if (s == T(0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [lambda, c] : terms_) c *= s;
  return *this;
}

template <class T>
HomogPoly<T> HomogPoly<T>::multiply(const HomogPoly& a, const HomogPoly& b) {
  if (a.d_ != b.d_) throw DomainError("HomogPoly: variable count mismatch in product");
  HomogPoly out(a.d_, a.N_ + b.N_);
  MultiIndex sum{std::vector<int>(sz(a.d_ + 1))};
  for (const auto& [la, ca] : a.terms_)
    for (const auto& [lb, cb] : b.terms_) {
      for (std::size_t k = 0; k < sum.parts.size(); ++k) sum.parts[k] = la[k] + lb[k];
      out.add(sum, ca * cb);
    }
  return out;
}

template <class T>
bool near(const HomogPoly<T>& a, const HomogPoly<T>& b, double eps, double* residual) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) throw DomainError("HomogPoly: degree mismatch in comparison");
  double worst = 0.0;
  for (const auto& [lambda, c] : a.terms()) worst = std::max(worst, Tr<T>::residual(c, b.coefficient(lambda)));
  for (const auto& [lambda, c] : b.terms()) worst = std::max(worst, Tr<T>::residual(a.coefficient(lambda), c));
  if (residual) *residual = worst;
  if constexpr (Tr<T>::exact) return a == b;
  return worst <= eps;
}

template <class T>
HomogPoly<T> act(const Matrix<T>& beta, const HomogPoly<T>& f) {
  const auto n = sz(f.dim() + 1);
  if (beta.rows() != n || beta.cols() != n) throw DomainError("act: matrix size does not match the module");
  HomogPoly<T> out(f.dim(), f.degree());
  for (const auto& [lambda, c] : f.terms())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const T& b = beta(i, j);
        if (b == T(0) || lambda[j] == 0) continue;
        MultiIndex moved = lambda;
        moved.parts[j] -= 1;
        moved.parts[i] += 1;
        out.add(moved, b * c * T(lambda[j]));
      }
  return out;
}

template <class T>
HomogPoly<T> xtilde(const Conjugator<T>& c, int k) {
  const auto n = c.r.rows();
  HomogPoly<T> out(static_cast<int>(n) - 1, 1);
  for (std::size_t j = 0; j < n; ++j) {
    MultiIndex e{std::vector<int>(n, 0)};
    e.parts[j] = 1;
    out.add(e, c.r(j, sz(k)));
  }
  return out;
}

template <class T>
HomogPoly<T> xtilde_monomial(const ParameterSet<T>& kappa, int N, const MultiIndex& lambda) {
  const int d = kappa.d();
  if (lambda.size() != sz(d + 1) || lambda.degree() != N)
    throw DomainError("xtilde_monomial: " + to_string(lambda) + " is not in the degree-" + std::to_string(N) +
                      " lattice");
  const auto c = conjugator(kappa);
  HomogPoly<T> out = HomogPoly<T>::monomial(MultiIndex{std::vector<int>(sz(d + 1), 0)});
  for (int k = 0; k <= d; ++k) {
    const HomogPoly<T> form = xtilde(c, k);
    for (int e = 0; e < lambda[sz(k)]; ++e) out = out * form;
  }
  return out;
}

template <class T>
T bilinear(const ParameterSet<T>& kappa, int N, const HomogPoly<T>& f, const HomogPoly<T>& g) {
  if (f.degree() != N || g.degree() != N || f.dim() != kappa.d() || g.dim() != kappa.d())
    throw DomainError("bilinear: arguments must be homogeneous of degree " + std::to_string(N) + " in " +
                      std::to_string(kappa.d() + 1) + " variables");
  T sum(0);
  for (const auto& [lambda, c] : f.terms()) {
    const T other = g.coefficient(lambda);
    if (other == T(0)) continue;
    sum += c * other * detail::from_integer<T>(multi_factorial(lambda)) / detail::power(kappa.pt(), lambda);
  }
  return sum * detail::power(kappa.nu(), N);
}

template <class T>
T pairing_eval(const ParameterSet<T>& kappa, int N, const MultiIndex& n, const MultiIndex& nt) {
  const auto xn = HomogPoly<T>::monomial(n);
  if (xn.dim() != kappa.d() || n.degree() != N)
    throw DomainError("pairing_eval: " + to_string(n) + " is not in the degree-" + std::to_string(N) + " lattice");
  const T pairing = bilinear(kappa, N, xn, xtilde_monomial(kappa, N, nt));
  return pairing / (detail::power(kappa.nu(), N) * detail::from_integer<T>(factorial(N)));
}

template <class T>
DualBasis<T>::DualBasis(const ParameterSet<T>& kappa, int N) : lattice_(kappa.d(), N) {
  const std::size_t n = lattice_.size();
  Matrix<T> change(n, n);
  elements_.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    elements_.push_back(xtilde_monomial(kappa, N, lattice_[c]));
    for (const auto& [lambda, coeff] : elements_.back().terms()) change(lattice_.rank(lambda), c) = coeff;
  }
  auto inv = inverse(change);
  if (!inv) throw Error("DualBasis: the x~ monomials are linearly dependent");
  to_dual_ = std::move(*inv);
}

template <class T>
std::vector<T> DualBasis<T>::coordinates(const HomogPoly<T>& f) const {
  const std::size_t n = lattice_.size();
  std::vector<T> mono(n, T(0));
  for (const auto& [lambda, c] : f.terms()) mono[lattice_.rank(lambda)] = c;
  std::vector<T> out(n, T(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (mono[c] != T(0)) out[r] += to_dual_(r, c) * mono[c];
  return out;
}

// ---------------------------------------------------------------------------
// Checks

template <class T>
CheckReport check_antiauto(const ParameterSet<T>& kappa, double eps) {
  CheckReport report("lemma21");
  const int d = kappa.d();
  const auto c = conjugator(kappa);

  detail::expect_matrix(report, c.r * c.r_inv, Matrix<T>::identity(sz(d + 1)), eps, [] { return "R R^{-1}"; });

  for (int i = 1; i <= d; ++i) {
    const Matrix<T> phi = basis_phi<T>(d, i);
    const Matrix<T> dphi = conjugate(c, phi);
    const std::string si = std::to_string(i);
    detail::expect_matrix(report, antiauto(kappa, phi), phi, eps, [&] { return "a(phi_" + si + ")"; });
    detail::expect_matrix(report, antiauto(kappa, dphi), dphi, eps, [&] { return "a(phi~_" + si + ")"; });
    detail::expect_matrix(report, dphi, dual_phi_closed_form(kappa, i), eps,
                          [&] { return "phi~_" + si + " closed-form expansion"; });
    detail::expect_matrix(report, phi_from_dual_expansion(kappa, i), phi, eps,
                          [&] { return "phi_" + si + " expansion in the dual basis"; });
    detail::expect_equal(report, dphi.trace(), T(0), eps, [&] { return "trace(phi~_" + si + ")"; });
  }

  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) {
      if (i == j) continue;
      const std::string sij = std::to_string(i) + std::to_string(j);
      detail::expect_matrix(report, antiauto(kappa, basis_e<T>(d, i, j)),
                            (kappa.pt(j) / kappa.pt(i)) * basis_e<T>(d, j, i), eps, [&] { return "a(e_" + sij + ")"; });
      detail::expect_matrix(report, antiauto(kappa, conjugate(c, basis_e<T>(d, i, j))),
                            (kappa.p(j) / kappa.p(i)) * conjugate(c, basis_e<T>(d, j, i)), eps,
                            [&] { return "a(e~_" + sij + ")"; });
    }

  const auto basis = sl_basis<T>(d);
  for (const auto& [name, beta] : basis)
    detail::expect_matrix(report, antiauto(kappa, antiauto(kappa, beta)), beta, eps,
                          [&] { return "a(a(" + name + "))"; });
  for (const auto& [na, a] : basis)
    for (const auto& [nb, b] : basis)
      detail::expect_matrix(report, antiauto(kappa, a * b), antiauto(kappa, b) * antiauto(kappa, a), eps,
                            [&] { return "a(" + na + " " + nb + ") reversal"; });
  return report;
}

template <class T>
CheckReport check_generation(const ParameterSet<T>& kappa, double eps) {
  CheckReport report("lemma22");
  const int d = kappa.d();
  const Matrix<T> dphi0 = dual_phi(kappa, 0);

  Matrix<T> expected0(sz(d + 1), sz(d + 1));
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l) expected0(sz(k), sz(l)) = kappa.pt(k) - (k == l ? T(1) / T(d + 1) : T(0));
  detail::expect_matrix(report, dphi0, expected0, eps, [] { return "phi~_0 column form"; });
  Matrix<T> phi0 = Matrix<T>::identity(sz(d + 1)) * (T(-1) / T(d + 1));
  phi0(0, 0) += T(1);
  detail::expect_matrix(report, basis_phi<T>(d, 0), phi0, eps, [] { return "phi_0 = e_00 - I/(d+1)"; });

  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) {
      if (i == j) continue;
      const Matrix<T> pi = basis_phi<T>(d, i);
      const Matrix<T> pj = basis_phi<T>(d, j);
      const Matrix<T> inner = commutator(pj, dphi0);
      const Matrix<T> lhs =
          (commutator(pj, commutator(pi, inner)) - commutator(pi, inner)) * (T(1) / (T(2) * kappa.pt(i)));
      detail::expect_matrix(report, lhs, basis_e<T>(d, i, j), eps,
                            [&] { return "bracket identity for e_" + std::to_string(i) + std::to_string(j); });
    }
  return report;
}

template <class T>
CheckReport check_dual_norms(const ParameterSet<T>& kappa, int N, double eps) {
  CheckReport report("norms");
  const int d = kappa.d();
  const SimplexLattice lattice(d, N);
  const auto c = conjugator(kappa);

  std::vector<HomogPoly<T>> mono;
  std::vector<HomogPoly<T>> dual;
  for (const auto& lambda : lattice.points()) {
    mono.push_back(HomogPoly<T>::monomial(lambda));
    dual.push_back(xtilde_monomial(kappa, N, lambda));
  }

  auto expect_poly = [&](const HomogPoly<T>& got, const HomogPoly<T>& want, auto&& where) {
    double r = 0.0;
    const bool ok = near(got, want, eps, &r);
    report.record(r);
    if (!ok) report.fail(where());
  };

  // Weight equations for both bases.
  for (int i = 1; i <= d; ++i) {
    const Matrix<T> phi = basis_phi<T>(d, i);
    const Matrix<T> dphi = conjugate(c, phi);
    for (std::size_t r = 0; r < lattice.size(); ++r) {
      const T w = weight<T>(lattice[r][sz(i)], N, d);
      expect_poly(act(phi, mono[r]), w * mono[r],
                  [&] { return "phi_" + std::to_string(i) + " weight on x^" + to_string(lattice[r]); });
      expect_poly(act(dphi, dual[r]), w * dual[r],
                  [&] { return "phi~_" + std::to_string(i) + " weight on x~^" + to_string(lattice[r]); });
    }
  }

  // Adjointness over the full basis and all monomial pairs.
  for (const auto& [name, beta] : sl_basis<T>(d)) {
    const Matrix<T> abeta = antiauto(kappa, beta);
    std::vector<HomogPoly<T>> moved_left;
    std::vector<HomogPoly<T>> moved_right;
    for (const auto& f : mono) {
      moved_left.push_back(act(beta, f));
      moved_right.push_back(act(abeta, f));
    }
    for (std::size_t a = 0; a < lattice.size(); ++a)
      for (std::size_t b = 0; b < lattice.size(); ++b)
        detail::expect_equal(report, bilinear(kappa, N, moved_left[a], mono[b]),
                             bilinear(kappa, N, mono[a], moved_right[b]), eps, [&] {
                               return "adjointness for " + name + " on x^" + to_string(lattice[a]) + ", x^" +
                                      to_string(lattice[b]);
                             });
  }

  // Norms of the dual basis, each entry divided by the larger of the two
  // expected norms so that float cancellation is measured on the right scale.
  std::vector<T> norm(lattice.size());
  for (std::size_t a = 0; a < lattice.size(); ++a)
    norm[a] = detail::from_integer<T>(multi_factorial(lattice[a])) / detail::power(kappa.p(), lattice[a]);
  for (std::size_t a = 0; a < lattice.size(); ++a)
    for (std::size_t b = 0; b < lattice.size(); ++b) {
      const T& scale = ScalarTraits<T>::magnitude(norm[a]) >= ScalarTraits<T>::magnitude(norm[b]) ? norm[a] : norm[b];
      const T want = a == b ? T(1) : T(0);
      detail::expect_equal(report, bilinear(kappa, N, dual[a], dual[b]) / scale, want, eps, [&] {
        return "<x~^" + to_string(lattice[a]) + ", x~^" + to_string(lattice[b]) + "> / max norm";
      });
    }
  return report;
}

template <class T>
CheckReport check_representation(const ParameterSet<T>& kappa, int N, int samples, double eps) {
  CheckReport report("representation");
  const int d = kappa.d();
  const SimplexLattice lattice(d, N);
  const auto c = conjugator(kappa);

  auto basis = sl_basis<T>(d);
  const std::size_t plain = basis.size();
  for (std::size_t k = 0; k < plain; ++k) basis.emplace_back(basis[k].first + "~", conjugate(c, basis[k].second));

  std::mt19937 rng(20110902u);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<std::size_t> point(0, lattice.size() - 1);

  auto random_element = [&] {
    Matrix<T> m(sz(d + 1), sz(d + 1));
    for (int t = 0; t < 3; ++t) m += T(small(rng)) * basis[pick(rng)].second;
    return m;
  };
  auto random_poly = [&] {
    HomogPoly<T> f(d, N);
    for (int t = 0; t < 3; ++t) f.add(lattice[point(rng)], T(small(rng)));
    return f;
  };

  for (int s = 0; s < samples; ++s) {
    const Matrix<T> b = random_element();
    const Matrix<T> g = random_element();
    const HomogPoly<T> f = random_poly();
    const HomogPoly<T> lhs = act(commutator(b, g), f);
    const HomogPoly<T> rhs = act(b, act(g, f)) - act(g, act(b, f));
    double r = 0.0;
    const bool ok = near(lhs, rhs, eps, &r);
    report.record(r);
    if (!ok) report.fail("sample " + std::to_string(s) + ": act([b,c], f) differs from [act b, act c] f");
  }
  return report;
}

template <class T>
CheckReport check_adjacency(const ParameterSet<T>& kappa, int N, double eps) {
  CheckReport report("adjacency");
  const int d = kappa.d();
  const DualBasis<T> dual(kappa, N);
  const SimplexLattice& lattice = dual.lattice();
  const auto c = conjugator(kappa);
  const T& nu = kappa.nu();
  std::size_t widest = 0;

  auto in_stencil = [](const MultiIndex& lambda, const MultiIndex& mu) { return mu == lambda || adjacent(lambda, mu); };

  for (int i = 1; i <= d; ++i) {
    const Matrix<T> phi = basis_phi<T>(d, i);
    const Matrix<T> dphi = conjugate(c, phi);
    for (std::size_t r = 0; r < lattice.size(); ++r) {
      const MultiIndex& lambda = lattice[r];
      const std::string where = "i=" + std::to_string(i) + " lambda=" + to_string(lambda);

      // H~ acting on the monomial weight space V_lambda.
      const HomogPoly<T> moved = act(dphi, HomogPoly<T>::monomial(lambda));
      std::size_t support = 0;
      for (const auto& [mu, coeff] : moved.terms()) {
        if (ScalarTraits<T>::is_zero(coeff, eps)) continue;
        ++support;
        if (!in_stencil(lambda, mu))
          report.fail("phi~ on x^: " + where + " reaches non-adjacent " + to_string(mu));
      }
      T diag(0);
      for (int j = 1; j <= d; ++j)
        diag += kappa.p(i) * (nu * kappa.pt(j) * kappa.u(i, j) * kappa.u(i, j) - T(1)) * weight<T>(lambda[sz(j)], N, d);
      detail::expect_equal(report, moved.coefficient(lambda), diag, eps,
                           [&] { return "phi~ on x^: diagonal coefficient at " + where; });
      widest = std::max(widest, support);

      // H acting on the dual weight space V~_lambda, read in x~ coordinates.
      const std::vector<T> coords = dual.coordinates(act(phi, dual.element(r)));
      support = 0;
      for (std::size_t s = 0; s < coords.size(); ++s) {
        if (ScalarTraits<T>::is_zero(coords[s], eps)) continue;
        ++support;
        if (!in_stencil(lambda, lattice[s]))
          report.fail("phi on x~^: " + where + " reaches non-adjacent " + to_string(lattice[s]));
      }
      T ddiag(0);
      for (int j = 1; j <= d; ++j)
        ddiag += kappa.pt(i) * (nu * kappa.p(j) * kappa.u(j, i) * kappa.u(j, i) - T(1)) * weight<T>(lambda[sz(j)], N, d);
      detail::expect_equal(report, coords[r], ddiag, eps,
                           [&] { return "phi on x~^: diagonal coefficient at " + where; });
      widest = std::max(widest, support);
    }
  }
  report.notes.push_back("largest support " + std::to_string(widest) + " (bound " + std::to_string(1 + d * (d + 1)) +
                         ")");
  return report;
}

template <class T>
CheckReport check_transition(const ParameterSet<T>& kappa, int N, double eps) {
  CheckReport report("transition");
  const auto tab = table(kappa, N);
  const SimplexLattice lattice(kappa.d(), N);
  const std::size_t n = lattice.size();
  const T nfact = detail::from_integer<T>(factorial(N));

  std::vector<HomogPoly<T>> dual;
  for (const auto& lambda : lattice.points()) dual.push_back(xtilde_monomial(kappa, N, lambda));

  auto expect_poly = [&](const HomogPoly<T>& got, const HomogPoly<T>& want, const std::string& where) {
    double r = 0.0;
    const bool ok = near(got, want, eps, &r);
    report.record(r);
    if (!ok) report.fail(where);
  };

  for (std::size_t b = 0; b < n; ++b) {
    HomogPoly<T> rhs(kappa.d(), N);
    for (std::size_t a = 0; a < n; ++a) {
      const T coeff = nfact * tab.at(a, b) * detail::power(kappa.pt(), lattice[a]) /
                      detail::from_integer<T>(multi_factorial(lattice[a]));
      rhs.add(lattice[a], coeff);
    }
    expect_poly(dual[b], rhs, "x~^" + to_string(lattice[b]) + " in the monomial basis");
  }

  const T nu_n = detail::power(kappa.nu(), N);
  for (std::size_t a = 0; a < n; ++a) {
    HomogPoly<T> rhs(kappa.d(), N);
    for (std::size_t b = 0; b < n; ++b) {
      const T coeff = nfact * tab.at(a, b) * detail::power(kappa.p(), lattice[b]) /
                      detail::from_integer<T>(multi_factorial(lattice[b]));
      rhs += coeff * dual[b];
    }
    expect_poly(HomogPoly<T>::monomial(lattice[a], T(1) / nu_n), rhs,
                "x^" + to_string(lattice[a]) + " / nu^N in the x~ basis");
  }
  return report;
}

#define KRAW_INSTANTIATE(T)                                                                        \
  template Matrix<T> basis_phi<T>(int, int);                                                      \
  template Matrix<T> basis_e<T>(int, int, int);                                                   \
  template Conjugator<T> conjugator<T>(const ParameterSet<T>&);                                   \
  template Matrix<T> conjugate<T>(const Conjugator<T>&, const Matrix<T>&);                        \
  template Matrix<T> dual_phi<T>(const ParameterSet<T>&, int);                                    \
  template Matrix<T> dual_e<T>(const ParameterSet<T>&, int, int);                                 \
  template Matrix<T> dual_phi_closed_form<T>(const ParameterSet<T>&, int);                        \
  template Matrix<T> phi_from_dual_expansion<T>(const ParameterSet<T>&, int);                     \
  template Matrix<T> antiauto<T>(const ParameterSet<T>&, const Matrix<T>&);                       \
  template class HomogPoly<T>;                                                                    \
  template bool near<T>(const HomogPoly<T>&, const HomogPoly<T>&, double, double*);               \
  template HomogPoly<T> act<T>(const Matrix<T>&, const HomogPoly<T>&);                            \
  template HomogPoly<T> xtilde<T>(const Conjugator<T>&, int);                                     \
  template HomogPoly<T> xtilde_monomial<T>(const ParameterSet<T>&, int, const MultiIndex&);       \
  template T bilinear<T>(const ParameterSet<T>&, int, const HomogPoly<T>&, const HomogPoly<T>&);  \
  template T pairing_eval<T>(const ParameterSet<T>&, int, const MultiIndex&, const MultiIndex&);  \
  template class DualBasis<T>;                                                                    \
  template CheckReport check_antiauto<T>(const ParameterSet<T>&, double);                         \
  template CheckReport check_generation<T>(const ParameterSet<T>&, double);                       \
  template CheckReport check_dual_norms<T>(const ParameterSet<T>&, int, double);                  \
  template CheckReport check_representation<T>(const ParameterSet<T>&, int, int, double);         \
  template CheckReport check_adjacency<T>(const ParameterSet<T>&, int, double);                   \
  template CheckReport check_transition<T>(const ParameterSet<T>&, int, double);

KRAW_INSTANTIATE(Rational)
KRAW_INSTANTIATE(Complex)

}  // namespace kraw
