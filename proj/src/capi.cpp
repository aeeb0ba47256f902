#include "kraw/kraw.h"

#include "kraw/liemod.hpp"
#include "kraw/suite.hpp"

#include "io.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <variant>

struct kraw_params {
  std::variant<kraw::ParameterSet<kraw::Rational>, kraw::ParameterSet<kraw::Complex>> kappa;
  kraw_options options;
};

namespace {

using kraw::Complex;
using kraw::ParameterSet;
using kraw::Rational;

thread_local std::string last_error;

kraw_options resolve(const kraw_options* options) {
  kraw_options o;
  kraw_options_init(&o);
  if (options) o = *options;
  if (o.threads == 0) o.threads = 1;
  return o;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* dump(const kraw::io::Json& j) { return duplicate(j.dump(2) + "\n"); }

/// Runs body, mapping library exceptions onto status codes.
template <class Body>
kraw_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const kraw::InvalidParameters& e) {
    last_error = e.what();
    return KRAW_INVALID_PARAMS;
  } catch (const kraw::ParseError& e) {
    last_error = e.what();
    return KRAW_PARSE_ERROR;
  } catch (const kraw::DomainError& e) {
    last_error = e.what();
    return KRAW_DOMAIN_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return KRAW_INTERNAL_ERROR;
  }
}

/// Family and Griffiths constructions report out-of-domain inputs as invalid
/// parameter sets.
template <class Body>
kraw_status construction(Body&& body) {
  return guarded([&] {
    try {
      return body();
    } catch (const kraw::DomainError& e) {
      throw kraw::InvalidParameters(kraw::ValidationReport{false, {{"domain", e.what()}}});
    }
  });
}

kraw_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return KRAW_DOMAIN_ERROR;
}

kraw_params* wrap(const ParameterSet<Rational>& exact, const kraw_options& o) {
  if (o.mode == KRAW_MODE_APPROX) return new kraw_params{kraw::approximate(exact, o.eps), o};
  return new kraw_params{exact, o};
}

std::vector<Rational> rationals(const char* const* values, std::size_t count) {
  std::vector<Rational> out;
  for (std::size_t k = 0; k < count; ++k) {
    if (!values[k]) throw kraw::ParseError("null scalar string");
    out.push_back(kraw::parse_rational(values[k]));
  }
  return out;
}

template <class F>
auto visit(const kraw_params* params, F&& f) {
  return std::visit(std::forward<F>(f), params->kappa);
}

}  // namespace

extern "C" {

void kraw_options_init(kraw_options* options) {
  if (!options) return;
  options->mode = KRAW_MODE_EXACT;
  options->eps = kraw::kDefaultEps;
  options->threads = 1;
}

const char* kraw_last_error(void) { return last_error.c_str(); }

void kraw_string_free(char* s) { std::free(s); }

const char* kraw_version(void) { return "1.0.0"; }

kraw_status kraw_params_from_json(const char* json, const kraw_options* options, kraw_params** out) {
  if (!json || !out) return null_argument("json/out");
  return guarded([&] {
    const kraw_options o = resolve(options);
    const auto doc = kraw::io::parse(json);
    if (o.mode == KRAW_MODE_APPROX)
      *out = new kraw_params{kraw::make_parameter_set(kraw::io::raw_params_from<Complex>(doc), o.eps), o};
    else
      *out = new kraw_params{kraw::make_parameter_set(kraw::io::raw_params_from<Rational>(doc), o.eps), o};
    return KRAW_OK;
  });
}

kraw_status kraw_params_to_json(const kraw_params* params, char** out) {
  if (!params || !out) return null_argument("params/out");
  return guarded([&] {
    *out = visit(params, [](const auto& k) { return dump(kraw::io::params(k)); });
    return KRAW_OK;
  });
}

void kraw_params_free(kraw_params* params) { delete params; }

int kraw_params_dim(const kraw_params* params) {
  return params ? visit(params, [](const auto& k) { return k.d(); }) : -1;
}

kraw_mode kraw_params_mode(const kraw_params* params) { return params ? params->options.mode : KRAW_MODE_EXACT; }

kraw_status kraw_params_validate_json(const char* json, const kraw_options* options, char** report) {
  if (!json || !report) return null_argument("json/report");
  return guarded([&] {
    const kraw_options o = resolve(options);
    const auto doc = kraw::io::parse(json);
    const kraw::ValidationReport r = o.mode == KRAW_MODE_APPROX
                                         ? kraw::validate(kraw::io::raw_params_from<Complex>(doc), o.eps).report
                                         : kraw::validate(kraw::io::raw_params_from<Rational>(doc), o.eps).report;
    *report = dump(kraw::io::validation(r));
    if (!r.valid) {
      last_error = "invalid parameter set: " + r.summary();
      return KRAW_INVALID_PARAMS;
    }
    return KRAW_OK;
  });
}

kraw_status kraw_params_griffiths(const char* const* p, size_t count, const kraw_options* options,
                                  kraw_params** out) {
  if (!p || !out) return null_argument("p/out");
  return construction([&] {
    const kraw_options o = resolve(options);
    *out = wrap(kraw::griffiths_from_p(rationals(p, count)), o);
    return KRAW_OK;
  });
}

kraw_status kraw_params_hoare_rahman(const char* const* pp4, const kraw_options* options, kraw_params** out) {
  if (!pp4 || !out) return null_argument("pp4/out");
  return construction([&] {
    const kraw_options o = resolve(options);
    const auto a = rationals(pp4, 4);
    *out = wrap(kraw::family_hoare_rahman(a[0], a[1], a[2], a[3]), o);
    return KRAW_OK;
  });
}

kraw_status kraw_params_milch(const char* const* p, size_t count, const kraw_options* options, kraw_params** out) {
  if (!p || !out) return null_argument("p/out");
  return construction([&] {
    const kraw_options o = resolve(options);
    *out = wrap(kraw::family_milch(rationals(p, count)), o);
    return KRAW_OK;
  });
}

kraw_status kraw_params_ds(const char* q, int d, const kraw_options* options, kraw_params** out) {
  if (!q || !out) return null_argument("q/out");
  return construction([&] {
    const kraw_options o = resolve(options);
    *out = wrap(kraw::family_ds(kraw::parse_rational(q), d), o);
    return KRAW_OK;
  });
}

kraw_status kraw_params_involute(const kraw_params* params, kraw_params** out) {
  if (!params || !out) return null_argument("params/out");
  return guarded([&] {
    const kraw_options o = params->options;
    *out = visit(params, [&](const auto& k) { return new kraw_params{kraw::involute(k, o.eps), o}; });
    return KRAW_OK;
  });
}

kraw_status kraw_eval(const kraw_params* params, int N, const int* m, const int* mt, size_t d, kraw_method method,
                      char** value) {
  if (!params || !m || !mt || !value) return null_argument("params/m/mt/value");
  return guarded([&] {
    *value = visit(params, [&](const auto& k) {
      if (static_cast<std::size_t>(k.d()) != d)
        throw kraw::DomainError("degree points have " + std::to_string(d) + " entries, parameter set has d = " +
                                std::to_string(k.d()));
      const std::vector<int> mv(m, m + d);
      const std::vector<int> mtv(mt, mt + d);
      switch (method) {
        case KRAW_METHOD_HYPERGEOMETRIC:
          return duplicate(kraw::to_string(kraw::eval_hypergeometric(k, N, mv, mtv)));
        case KRAW_METHOD_GENERATING:
          return duplicate(kraw::to_string(kraw::eval_generating(k, N, mv, mtv)));
        case KRAW_METHOD_PAIRING:
          kraw::require_degree_point(k.d(), N, mv, "m");
          kraw::require_degree_point(k.d(), N, mtv, "mt");
          return duplicate(
              kraw::to_string(kraw::pairing_eval(k, N, kraw::unprime(mv, N), kraw::unprime(mtv, N))));
      }
      throw kraw::DomainError("unknown evaluation method");
    });
    return KRAW_OK;
  });
}

kraw_status kraw_table_json(const kraw_params* params, int N, char** out) {
  if (!params || !out) return null_argument("params/out");
  return guarded([&] {
    *out = visit(params, [&](const auto& k) { return dump(kraw::io::table(kraw::table(k, N, params->options.threads))); });
    return KRAW_OK;
  });
}

kraw_status kraw_check(const kraw_params* params, int N, const char* suite, char** report) {
  if (!params || !report) return null_argument("params/report");
  return guarded([&] {
    if (N < 0) throw kraw::DomainError("N must be nonnegative");
    const auto names = kraw::parse_suite(suite ? suite : "");
    bool pass = true;
    *report = visit(params, [&](const auto& k) {
      using T = std::decay_t<decltype(k.nu())>;
      kraw::SuiteOptions<T> so;
      so.eps = params->options.eps;
      so.threads = params->options.threads;
      const auto reports = kraw::run_suite(names, k, N, so);
      for (const auto& r : reports) pass = pass && r.pass;
      return dump(kraw::io::suite(reports, k, N));
    });
    return pass ? KRAW_OK : KRAW_CHECK_FAILED;
  });
}

kraw_status kraw_check_table(const char* table_json, const char* suite, const kraw_options* options, char** report) {
  if (!table_json || !report) return null_argument("table_json/report");
  return guarded([&] {
    const kraw_options o = resolve(options);
    const auto names = kraw::parse_suite(suite ? suite : "");
    const auto doc = kraw::io::parse(table_json);
    bool pass = true;
    auto run = [&](auto tag) {
      using T = decltype(tag);
      const auto tab = kraw::io::table_from<T>(doc, o.eps);
      kraw::SuiteOptions<T> so;
      so.eps = o.eps;
      so.threads = o.threads;
      so.table = &tab;
      const auto reports = kraw::run_suite(names, tab.kappa, tab.N, so);
      for (const auto& r : reports) pass = pass && r.pass;
      return dump(kraw::io::suite(reports, tab.kappa, tab.N));
    };
    *report = o.mode == KRAW_MODE_APPROX ? run(Complex{}) : run(Rational{});
    return pass ? KRAW_OK : KRAW_CHECK_FAILED;
  });
}

kraw_status kraw_stencil_json(const kraw_params* params, int N, kraw_operator op, int i, char** out) {
  if (!params || !out) return null_argument("params/out");
  return guarded([&] {
    *out = visit(params, [&](const auto& k) {
      switch (op) {
        case KRAW_OPERATOR_MTILDE:
          return dump(kraw::io::stencil(kraw::operator_mtilde(k, N, i)));
        case KRAW_OPERATOR_M:
          return dump(kraw::io::stencil(kraw::operator_m(k, N, i)));
        case KRAW_OPERATOR_UNIVERSAL:
          return dump(kraw::io::stencil(kraw::operator_universal(k, N)));
      }
      throw kraw::DomainError("unknown operator");
    });
    return KRAW_OK;
  });
}

}  // extern "C"
