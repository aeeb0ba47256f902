#include "io.hpp"

#include <string>

namespace kraw::io {

namespace {

[[noreturn]] void shape_error(const std::string& what) { throw ParseError(what); }

const Json& member(const Json& j, const char* key, const char* where) {
  if (!j.is_object()) shape_error(std::string(where) + " must be a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) shape_error(std::string(where) + " lacks key \"" + key + "\"");
  return *it;
}

int integer_from(const Json& j, const char* where) {
  if (!j.is_number_integer()) shape_error(std::string(where) + " must be an integer");
  return j.get<int>();
}

template <class T>
std::vector<T> vector_from(const Json& j, const char* where) {
  if (!j.is_array()) shape_error(std::string(where) + " must be an array");
  std::vector<T> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(scalar_from<T>(e, where));
  return out;
}

template <class T>
Matrix<T> matrix_from(const Json& j, const char* where) {
  if (!j.is_array()) shape_error(std::string(where) + " must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = vector_from<T>(j[i], where);
    if (row.size() != cols) shape_error(std::string(where) + " has rows of unequal length");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = row[c];
  }
  return m;
}

template <class T>
Json vector_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar(x));
  return a;
}

template <class T>
Json matrix_json(const Matrix<T>& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar(m(i, c)));
    a.push_back(std::move(row));
  }
  return a;
}

}  // namespace

template <>
Json scalar<Rational>(const Rational& x) {
  return to_string(x);
}

template <>
Json scalar<Complex>(const Complex& x) {
  return to_string(x);
}

template <>
Rational scalar_from<Rational>(const Json& j, const char* where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) shape_error(std::string(where) + ": expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    shape_error(std::string(where) + ": " + e.what());
  }
}

template <>
Complex scalar_from<Complex>(const Json& j, const char* where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_string()) shape_error(std::string(where) + ": expected a number string");
  try {
    return parse_complex(j.get<std::string>());
  } catch (const ParseError& e) {
    shape_error(std::string(where) + ": " + e.what());
  }
}

template <class T>
Json params(const RawParameters<T>& raw) {
  Json j;
  j["d"] = raw.d;
  j["nu"] = scalar(raw.nu);
  j["p"] = vector_json(raw.p);
  j["pt"] = vector_json(raw.pt);
  j["u"] = matrix_json(raw.u);
  return j;
}

template <class T>
RawParameters<T> raw_params_from(const Json& j) {
  RawParameters<T> raw;
  raw.d = integer_from(member(j, "d", "parameter set"), "d");
  raw.nu = scalar_from<T>(member(j, "nu", "parameter set"), "nu");
  raw.p = vector_from<T>(member(j, "p", "parameter set"), "p");
  raw.pt = vector_from<T>(member(j, "pt", "parameter set"), "pt");
  raw.u = matrix_from<T>(member(j, "u", "parameter set"), "u");
  return raw;
}

Json validation(const ValidationReport& report) {
  Json j;
  j["valid"] = report.valid;
  Json list = Json::array();
  for (const auto& v : report.violations) {
    Json e;
    e["condition"] = v.condition;
    e["detail"] = v.detail;
    list.push_back(std::move(e));
  }
  j["violations"] = std::move(list);
  return j;
}

template <class T>
Json table(const PolynomialTable<T>& tab) {
  Json j;
  j["kappa"] = params(tab.kappa);
  j["N"] = tab.N;
  j["order"] = "grlex";
  j["values"] = matrix_json(tab.values);
  return j;
}

template <class T>
PolynomialTable<T> table_from(const Json& j, double eps) {
  const auto raw = raw_params_from<T>(member(j, "kappa", "table"));
  const int N = integer_from(member(j, "N", "table"), "N");
  if (N < 0) shape_error("table: N must be nonnegative");
  const Json& order = member(j, "order", "table");
  if (!order.is_string() || order.get<std::string>() != "grlex")
    shape_error("table: unsupported lattice order " + order.dump());
  auto kappa = make_parameter_set(raw, eps);
  PolynomialTable<T> tab{kappa, N, enumerate_lattice(kappa.d(), N), {}};
  tab.values = matrix_from<T>(member(j, "values", "table"), "values");
  const std::size_t n = tab.lattice.size();
  if (tab.values.rows() != n || tab.values.cols() != n)
    shape_error("table: values must be " + std::to_string(n) + "x" + std::to_string(n) + " for d = " +
                std::to_string(kappa.d()) + ", N = " + std::to_string(N));
  return tab;
}

template <class T>
Json report(const CheckReport& r, const ParameterSet<T>& kappa, int N) {
  Json j;
  j["check"] = r.check;
  j["kappa"] = params(kappa);
  j["N"] = N;
  j["pass"] = r.pass;
  j["failures"] = r.failures;
  if (r.failure_count > r.failures.size()) j["failures_omitted"] = r.failure_count - r.failures.size();
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!ScalarTraits<T>::exact) j["max_residual"] = r.max_residual;
  return j;
}

template <class T>
Json suite(const std::vector<CheckReport>& reports, const ParameterSet<T>& kappa, int N) {
  Json j;
  bool pass = true;
  Json list = Json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass;
    list.push_back(report(r, kappa, N));
  }
  j["pass"] = pass;
  j["mode"] = ScalarTraits<T>::mode_name;
  j["checks"] = std::move(list);
  return j;
}

template <class T>
Json stencil(const DifferenceOperator<T>& op) {
  Json j;
  j["operator"] = op.name;
  j["d"] = op.d;
  j["N"] = op.N;
  Json terms = Json::array();
  for (const auto& t : op.terms) {
    Json term;
    term["shift"] = t.shift;
    Json coeff;
    coeff["constant"] = scalar(t.coeff.constant);
    coeff["linear"] = vector_json(t.coeff.linear);
    term["coeff"] = std::move(coeff);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  j["attained_terms"] = op.attained_terms();
  return j;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

#define KRAW_INSTANTIATE(T)                                                              \
  template Json params<T>(const RawParameters<T>&);                                      \
  template RawParameters<T> raw_params_from<T>(const Json&);                             \
  template Json table<T>(const PolynomialTable<T>&);                                     \
  template PolynomialTable<T> table_from<T>(const Json&, double);                        \
  template Json report<T>(const CheckReport&, const ParameterSet<T>&, int);              \
  template Json suite<T>(const std::vector<CheckReport>&, const ParameterSet<T>&, int); \
  template Json stencil<T>(const DifferenceOperator<T>&);

KRAW_INSTANTIATE(Rational)
KRAW_INSTANTIATE(Complex)

}  // namespace kraw::io
