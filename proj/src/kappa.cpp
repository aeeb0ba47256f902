#include "kraw/kappa.hpp"

#include <sstream>

namespace kraw {

std::string ValidationReport::summary() const {
  if (valid) return "valid";
  std::ostringstream os;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k) os << "; ";
    os << "condition " << violations[k].condition << ": " << violations[k].detail;
  }
  return os.str();
}

InvalidParameters::InvalidParameters(ValidationReport report)
    : Error("invalid parameter set: " + report.summary()), report_(std::move(report)) {}

namespace {

template <class T>
using Tr = ScalarTraits<T>;

std::string at(std::size_t i) { return "[" + std::to_string(i) + "]"; }
std::string at(std::size_t i, std::size_t j) {
  return "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

template <class T>
Validated<T> validate(RawParameters<T> c, double eps) {
  ValidationReport report;
  auto fail = [&](std::string cond, std::string detail) {
    report.valid = false;
    report.violations.push_back({std::move(cond), std::move(detail)});
  };

  const auto n = static_cast<std::size_t>(c.d + 1);
  if (c.d < 1) fail("dimension", "d must be a positive integer, got " + std::to_string(c.d));
  if (c.d >= 1) {
    if (c.p.size() != n) fail("dimension", "p has " + std::to_string(c.p.size()) + " entries, expected " + std::to_string(n));
    if (c.pt.size() != n)
      fail("dimension", "pt has " + std::to_string(c.pt.size()) + " entries, expected " + std::to_string(n));
    if (c.u.rows() != n || c.u.cols() != n)
      fail("dimension", "u is " + std::to_string(c.u.rows()) + "x" + std::to_string(c.u.cols()) + ", expected " +
                            std::to_string(n) + "x" + std::to_string(n));
  }
  if (!report.valid) return {std::nullopt, std::move(report)};

  if (Tr<T>::is_zero(c.nu, eps)) {
    fail("nu", "nu must be nonzero");
    return {std::nullopt, std::move(report)};
  }

  const T inv_nu = T(1) / c.nu;
  if (!Tr<T>::near(c.p[0], inv_nu, eps))
    fail("i", "p[0] = " + Tr<T>::str(c.p[0]) + " differs from 1/nu = " + Tr<T>::str(inv_nu));
  if (!Tr<T>::near(c.pt[0], inv_nu, eps))
    fail("i", "pt[0] = " + Tr<T>::str(c.pt[0]) + " differs from 1/nu = " + Tr<T>::str(inv_nu));

  for (std::size_t j = 0; j < n; ++j) {
    if (Tr<T>::is_zero(c.p[j], eps)) fail("nonzero", "p" + at(j) + " is zero");
    if (Tr<T>::is_zero(c.pt[j], eps)) fail("nonzero", "pt" + at(j) + " is zero");
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (!Tr<T>::near(c.u(0, j), T(1), eps)) fail("ii", "u" + at(0, j) + " = " + Tr<T>::str(c.u(0, j)) + ", expected 1");
    if (j > 0 && !Tr<T>::near(c.u(j, 0), T(1), eps))
      fail("ii", "u" + at(j, 0) + " = " + Tr<T>::str(c.u(j, 0)) + ", expected 1");
  }

  const Matrix<T> lhs = c.nu * Matrix<T>::diagonal(c.p) * c.u * Matrix<T>::diagonal(c.pt) * c.u.transpose();
  const Matrix<T> id = Matrix<T>::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!Tr<T>::near(lhs(i, j), id(i, j), eps))
        fail("iii", "(nu P U P~ U^t)" + at(i, j) + " = " + Tr<T>::str(lhs(i, j)) + ", expected " +
                        Tr<T>::str(id(i, j)));

  T sp(0);
  T spt(0);
  for (std::size_t j = 0; j < n; ++j) {
    sp += c.p[j];
    spt += c.pt[j];
  }
  if (!Tr<T>::near(sp, T(1), eps)) fail("sum", "sum of p is " + Tr<T>::str(sp) + ", expected 1");
  if (!Tr<T>::near(spt, T(1), eps)) fail("sum", "sum of pt is " + Tr<T>::str(spt) + ", expected 1");

  if (!report.valid) return {std::nullopt, std::move(report)};
  return {ParameterSet<T>(std::move(c)), std::move(report)};
}

template <class T>
ParameterSet<T> testing::forge(RawParameters<T> raw) {
  return ParameterSet<T>(std::move(raw));
}

template <class T>
ParameterSet<T> make_parameter_set(RawParameters<T> candidate, double eps) {
  auto result = validate(std::move(candidate), eps);
  if (!result.params) throw InvalidParameters(std::move(result.report));
  return std::move(*result.params);
}

template <class T>
ParameterSet<T> griffiths_from_p(const std::vector<T>& p, double eps) {
  if (p.size() < 2) throw DomainError("griffiths: p needs at least two entries");
  const std::size_t n = p.size();
  T sum(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (Tr<T>::is_zero(p[j], eps)) throw DomainError("griffiths: p" + at(j) + " is zero");
    sum += p[j];
  }
  if (!Tr<T>::near(sum, T(1), eps)) throw DomainError("griffiths: p does not sum to 1");

  auto inner = [&](const std::vector<T>& a, const std::vector<T>& b) {
    T s(0);
    for (std::size_t k = 0; k < n; ++k) s += a[k] * p[k] * b[k];
    return s;
  };

  std::vector<std::vector<T>> w;
  std::vector<T> norms;
  w.push_back(std::vector<T>(n, T(1)));
  norms.push_back(inner(w[0], w[0]));
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<T> v(n, T(0));
    v[j] = T(1);
    for (std::size_t k = 0; k < w.size(); ++k) {
      const T coeff = inner(v, w[k]) / norms[k];
      for (std::size_t r = 0; r < n; ++r) v[r] -= coeff * w[k][r];
    }
    if (Tr<T>::is_zero(v[0], eps))
      throw DomainError("griffiths: Gram-Schmidt breakdown at j=" + std::to_string(j) +
                        " (0-th coordinate vanishes)");
    const T scale = T(1) / v[0];
    for (auto& x : v) x *= scale;
    const T norm = inner(v, v);
    if (Tr<T>::is_zero(norm, eps))
      throw DomainError("griffiths: Gram-Schmidt breakdown at j=" + std::to_string(j) + " (zero norm)");
    w.push_back(std::move(v));
    norms.push_back(norm);
  }

  RawParameters<T> raw;
  raw.d = static_cast<int>(n) - 1;
  raw.p = p;
  raw.u = Matrix<T>(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) raw.u(i, j) = w[j][i];
  // Q = U^t P U is diagonal with entries norms[j]; P~ = p_0 Q^{-1}.
  raw.pt.resize(n);
  for (std::size_t j = 0; j < n; ++j) raw.pt[j] = p[0] / norms[j];
  raw.nu = T(1) / p[0];
  return make_parameter_set(std::move(raw), eps);
}

template <class T>
ParameterSet<T> involute(const ParameterSet<T>& kappa, double eps) {
  RawParameters<T> raw;
  raw.d = kappa.d();
  raw.nu = kappa.nu();
  raw.p = kappa.pt();
  raw.pt = kappa.p();
  raw.u = kappa.u().transpose();
  return make_parameter_set(std::move(raw), eps);
}

template <class T>
Matrix<T> omega(const ParameterSet<T>& kappa) {
  const auto d = static_cast<std::size_t>(kappa.d());
  Matrix<T> w(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) w(i, j) = T(1) - kappa.u()(i + 1, j + 1);
  return w;
}

template <class T>
ParameterSet<T> family_hoare_rahman(const T& a1, const T& a2, const T& a3, const T& a4, double eps) {
  const T s = a1 + a2 + a3 + a4;
  const T s12 = a1 + a2;
  const T s13 = a1 + a3;
  const T s24 = a2 + a4;
  const T s34 = a3 + a4;
  const std::pair<const T*, const char*> factors[] = {
      {&a1, "p1"},        {&a2, "p2"},        {&a3, "p3"},        {&a4, "p4"},       {&s, "p1+p2+p3+p4"},
      {&s12, "p1+p2"},    {&s13, "p1+p3"},    {&s24, "p2+p4"},    {&s34, "p3+p4"},
  };
  for (const auto& [value, name] : factors)
    if (Tr<T>::is_zero(*value, eps))
      throw DomainError(std::string("hoare-rahman: forbidden parameters, factor ") + name + " vanishes");

  RawParameters<T> raw;
  raw.d = 2;
  raw.u = Matrix<T>(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    raw.u(0, j) = T(1);
    raw.u(j, 0) = T(1);
  }
  raw.u(1, 1) = T(1) - s12 * s13 / (a1 * s);
  raw.u(1, 2) = T(1) - s12 * s24 / (a2 * s);
  raw.u(2, 1) = T(1) - s13 * s34 / (a3 * s);
  raw.u(2, 2) = T(1) - s24 * s34 / (a4 * s);

  const T p1 = a1 * a2 * s / (s12 * s13 * s24);
  const T p2 = a3 * a4 * s / (s13 * s24 * s34);
  const T pt1 = a1 * a3 * s / (s12 * s13 * s34);
  const T pt2 = a2 * a4 * s / (s12 * s24 * s34);
  const T p0 = T(1) - p1 - p2;
  if (Tr<T>::is_zero(p0, eps)) throw DomainError("hoare-rahman: forbidden parameters, p0 = 1 - p1 - p2 vanishes");

  raw.p = {p0, p1, p2};
  raw.pt = {p0, pt1, pt2};
  raw.nu = T(1) / p0;
  return make_parameter_set(std::move(raw), eps);
}

template <class T>
ParameterSet<T> family_milch(const std::vector<T>& p, double eps) {
  if (p.size() < 2) throw DomainError("milch: p needs at least two entries");
  const std::size_t n = p.size();
  T sum(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (Tr<T>::is_zero(p[j], eps)) throw DomainError("milch: p" + at(j) + " is zero");
    sum += p[j];
  }
  if (!Tr<T>::near(sum, T(1), eps)) throw DomainError("milch: p does not sum to 1");

  // tail[k] = 1 - (p_1 + ... + p_k)
  std::vector<T> tail(n);
  tail[0] = T(1);
  for (std::size_t k = 1; k < n; ++k) {
    tail[k] = tail[k - 1] - p[k];
    if (Tr<T>::is_zero(tail[k], eps))
      throw DomainError("milch: partial sum 1 - (p1+...+p" + std::to_string(k) + ") vanishes");
  }

  RawParameters<T> raw;
  raw.d = static_cast<int>(n) - 1;
  raw.p = p;
  raw.pt.resize(n);
  raw.pt[0] = p[0];
  for (std::size_t k = 1; k < n; ++k) raw.pt[k] = p[k] * p[0] / (tail[k] * tail[k - 1]);
  raw.u = Matrix<T>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i < j)
        raw.u(i, j) = i == 0 ? T(1) : T(0);
      else if (i > j)
        raw.u(i, j) = T(1);
      else
        raw.u(i, j) = i == 0 ? T(1) : T(-tail[i] / p[i]);
    }
  raw.nu = T(1) / p[0];
  return make_parameter_set(std::move(raw), eps);
}

template <class T>
ParameterSet<T> family_ds(const T& q, int d, double eps) {
  if (d < 1) throw DomainError("ds: d must be positive");
  if (Tr<T>::is_zero(q, eps) || Tr<T>::is_zero(q - T(1), eps)) throw DomainError("ds: q must not be 0 or 1");
  const auto n = static_cast<std::size_t>(d + 1);

  auto qpow = [&](int e) {
    T r(1);
    const T base = e < 0 ? T(1) / q : q;
    for (int k = 0; k < std::abs(e); ++k) r *= base;
    return r;
  };

  RawParameters<T> raw;
  raw.d = d;
  raw.p.resize(n);
  raw.p[0] = qpow(-d);
  for (int k = 1; k <= d; ++k) raw.p[static_cast<std::size_t>(k)] = qpow(-d + k - 1) * (q - T(1));
  raw.pt = raw.p;
  raw.u = Matrix<T>(n, n);
  const T anti = T(1) / (T(1) - q);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      if (i + j <= d)
        raw.u(ui, uj) = T(1);
      else if (i + j == d + 1)
        raw.u(ui, uj) = anti;
      else
        raw.u(ui, uj) = T(0);
    }
  raw.nu = T(1) / raw.p[0];
  return make_parameter_set(std::move(raw), eps);
}

ParameterSet<Complex> approximate(const ParameterSet<Rational>& kappa, double eps) {
  using CT = ScalarTraits<Complex>;
  RawParameters<Complex> raw;
  raw.d = kappa.d();
  raw.nu = CT::from_rational(kappa.nu());
  for (const auto& v : kappa.p()) raw.p.push_back(CT::from_rational(v));
  for (const auto& v : kappa.pt()) raw.pt.push_back(CT::from_rational(v));
  const auto n = static_cast<std::size_t>(kappa.d() + 1);
  raw.u = Matrix<Complex>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) raw.u(i, j) = CT::from_rational(kappa.u()(i, j));
  return make_parameter_set(std::move(raw), eps);
}

#define KRAW_INSTANTIATE(T)                                                                         \
  template Validated<T> validate<T>(RawParameters<T>, double);                                      \
  template ParameterSet<T> testing::forge<T>(RawParameters<T>);                                     \
  template ParameterSet<T> make_parameter_set<T>(RawParameters<T>, double);                         \
  template ParameterSet<T> griffiths_from_p<T>(const std::vector<T>&, double);                      \
  template ParameterSet<T> involute<T>(const ParameterSet<T>&, double);                             \
  template Matrix<T> omega<T>(const ParameterSet<T>&);                                              \
  template ParameterSet<T> family_hoare_rahman<T>(const T&, const T&, const T&, const T&, double); \
  template ParameterSet<T> family_milch<T>(const std::vector<T>&, double);                          \
  template ParameterSet<T> family_ds<T>(const T&, int, double);

KRAW_INSTANTIATE(Rational)
KRAW_INSTANTIATE(Complex)

}  // namespace kraw
