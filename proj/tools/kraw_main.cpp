// kraw: command-line front end over the C interface in kraw/kraw.h.

#include "kraw/kraw.h"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kInvalidParams = 3, kInternal = 4 };

struct CliError {
  int code;
  std::string message;
};

int exit_code(kraw_status s) {
  switch (s) {
    case KRAW_OK:
      return kOk;
    case KRAW_CHECK_FAILED:
      return kCheckFailed;
    case KRAW_PARSE_ERROR:
    case KRAW_DOMAIN_ERROR:
      return kUsage;
    case KRAW_INVALID_PARAMS:
      return kInvalidParams;
    case KRAW_INTERNAL_ERROR:
      break;
  }
  return kInternal;
}

/// Throws for any status other than OK and CHECK_FAILED.
kraw_status require(kraw_status s) {
  if (s == KRAW_OK || s == KRAW_CHECK_FAILED) return s;
  throw CliError{exit_code(s), kraw_last_error()};
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { kraw_string_free(s); }
};

struct ParamsDeleter {
  void operator()(kraw_params* p) const { kraw_params_free(p); }
};
using Params = std::unique_ptr<kraw_params, ParamsDeleter>;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kUsage, "cannot open '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<int> split_ints(const std::string& list, const char* what) {
  std::vector<int> out;
  for (const auto& item : split(list)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliError{kUsage, std::string("--") + what + ": '" + item + "' is not an integer"};
    }
  }
  return out;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

struct Global {
  std::string mode = "exact";
  double eps = 1e-10;
  std::optional<unsigned> threads;
  std::string out;

  kraw_options options() const {
    kraw_options o;
    kraw_options_init(&o);
    o.mode = mode == "approx" ? KRAW_MODE_APPROX : KRAW_MODE_EXACT;
    o.eps = eps;
    if (threads) {
      o.threads = *threads;
    } else if (const char* env = std::getenv("KRAW_THREADS")) {
      const std::string_view text(env);
      unsigned value = 0;
      const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
        throw CliError{kUsage, std::string("KRAW_THREADS='") + env + "' is not a thread count"};
      o.threads = value;
    }
    return o;
  }

  void emit(const char* text) const {
    if (out.empty() || out == "-") {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw CliError{kUsage, "cannot write '" + out + "'"};
    f << text;
  }
};

Params load_params(const std::string& path, const kraw_options& o) {
  kraw_params* p = nullptr;
  require(kraw_params_from_json(read_input(path).c_str(), &o, &p));
  return Params(p);
}

/// Takes ownership of *raw once the constructor call that filled it succeeded.
int emit_params(const Global& g, kraw_status s, kraw_params* const* raw) {
  require(s);
  Params p(*raw);
  OwnedString json;
  require(kraw_params_to_json(p.get(), &json.s));
  g.emit(json.s);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate Krawtchouk polynomials: parameter sets, evaluation and verification"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--mode", g.mode, "Scalar mode")->check(CLI::IsMember({"exact", "approx"}))->capture_default_str();
  app.add_option("--eps", g.eps, "Tolerance in approximate mode")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (fallback: KRAW_THREADS)");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");

  std::string kappa_path;
  std::string table_path;
  int N = -1;
  std::string m_list;
  std::string mt_list;
  std::string method = "hypergeometric";
  std::string suite = "full";
  std::string family;
  std::string pp_list;
  std::string p_list;
  std::string q;
  int d = 0;
  std::string op = "mtilde";
  int index = 1;

  auto* validate = app.add_subcommand("params-validate", "Check a parameter-set file against the defining conditions");
  validate->add_option("--kappa", kappa_path, "Parameter-set JSON ('-' for stdin)")->required();

  auto* griffiths = app.add_subcommand("params-griffiths", "Build a parameter set from a probability vector p");
  griffiths->add_option("--p", p_list, "Comma list p_0,...,p_d")->required();

  auto* fam = app.add_subcommand("params-family", "Build a member of a named family");
  fam->add_option("--family", family, "Family name")->required()->check(CLI::IsMember({"hr", "milch", "ds"}));
  fam->add_option("--pp", pp_list, "hr: four comma-separated parameters");
  fam->add_option("--p", p_list, "milch: comma list p_0,...,p_d");
  fam->add_option("--q", q, "ds: the parameter q");
  fam->add_option("--d", d, "ds: dimension");

  auto* inv = app.add_subcommand("params-involute", "Apply the bispectral involution");
  inv->add_option("--kappa", kappa_path, "Parameter-set JSON ('-' for stdin)")->required();

  auto* ev = app.add_subcommand("eval", "Evaluate one polynomial value P(m, mt)");
  ev->add_option("--kappa", kappa_path, "Parameter-set JSON ('-' for stdin)")->required();
  ev->add_option("--N", N, "Degree")->required();
  ev->add_option("--m", m_list, "Degree index, comma list of length d")->required();
  ev->add_option("--mt", mt_list, "Variable, comma list of length d")->required();
  ev->add_option("--method", method, "Evaluation route")
      ->check(CLI::IsMember({"hypergeometric", "generating", "pairing"}))
      ->capture_default_str();

  auto* tab = app.add_subcommand("table", "Write the full table of values over the lattice");
  tab->add_option("--kappa", kappa_path, "Parameter-set JSON ('-' for stdin)")->required();
  tab->add_option("--N", N, "Degree")->required();

  auto* chk = app.add_subcommand("check", "Run verification checks and print a JSON report");
  auto* chk_kappa = chk->add_option("--kappa", kappa_path, "Parameter-set JSON ('-' for stdin)");
  auto* chk_n = chk->add_option("--N", N, "Degree");
  auto* chk_table = chk->add_option("--table", table_path, "Table JSON; supplies kappa, N and the values");
  chk->add_option("--suite", suite, "Comma list of checks, or 'full'")->capture_default_str();
  chk_table->excludes(chk_kappa)->excludes(chk_n);
  chk_kappa->needs(chk_n);

  auto* st = app.add_subcommand("stencil", "Dump a difference operator as JSON");
  st->add_option("--kappa", kappa_path, "Parameter-set JSON ('-' for stdin)")->required();
  st->add_option("--N", N, "Degree")->required();
  st->add_option("--operator", op, "Which operator")
      ->check(CLI::IsMember({"mtilde", "m", "universal"}))
      ->capture_default_str();
  st->add_option("--i", index, "Component index 1..d")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const kraw_options o = g.options();

    if (*validate) {
      OwnedString report;
      const kraw_status s = kraw_params_validate_json(read_input(kappa_path).c_str(), &o, &report.s);
      if (report.s) g.emit(report.s);
      if (s != KRAW_OK && s != KRAW_INVALID_PARAMS) require(s);
      return exit_code(s);
    }

    if (*griffiths) {
      const auto p = split(p_list);
      const auto cp = c_strings(p);
      kraw_params* out = nullptr;
      return emit_params(g, kraw_params_griffiths(cp.data(), cp.size(), &o, &out), &out);
    }

    if (*fam) {
      kraw_params* out = nullptr;
      if (family == "hr") {
        const auto pp = split(pp_list);
        if (pp.size() != 4) throw CliError{kUsage, "--family hr needs --pp with four values"};
        const auto cp = c_strings(pp);
        return emit_params(g, kraw_params_hoare_rahman(cp.data(), &o, &out), &out);
      }
      if (family == "milch") {
        const auto p = split(p_list);
        if (p.empty()) throw CliError{kUsage, "--family milch needs --p"};
        const auto cp = c_strings(p);
        return emit_params(g, kraw_params_milch(cp.data(), cp.size(), &o, &out), &out);
      }
      if (q.empty() || d < 1) throw CliError{kUsage, "--family ds needs --q and --d >= 1"};
      return emit_params(g, kraw_params_ds(q.c_str(), d, &o, &out), &out);
    }

    if (*inv) {
      const Params p = load_params(kappa_path, o);
      kraw_params* out = nullptr;
      return emit_params(g, kraw_params_involute(p.get(), &out), &out);
    }

    if (*ev) {
      const Params p = load_params(kappa_path, o);
      const auto m = split_ints(m_list, "m");
      const auto mt = split_ints(mt_list, "mt");
      if (m.size() != mt.size()) throw CliError{kUsage, "--m and --mt must have the same length"};
      const kraw_method how = method == "generating" ? KRAW_METHOD_GENERATING
                              : method == "pairing"  ? KRAW_METHOD_PAIRING
                                                     : KRAW_METHOD_HYPERGEOMETRIC;
      OwnedString value;
      require(kraw_eval(p.get(), N, m.data(), mt.data(), m.size(), how, &value.s));
      const std::string line = std::string("\"") + value.s + "\"\n";
      g.emit(line.c_str());
      return kOk;
    }

    if (*tab) {
      const Params p = load_params(kappa_path, o);
      OwnedString json;
      require(kraw_table_json(p.get(), N, &json.s));
      g.emit(json.s);
      return kOk;
    }

    if (*chk) {
      OwnedString report;
      kraw_status s;
      if (!table_path.empty()) {
        s = require(kraw_check_table(read_input(table_path).c_str(), suite.c_str(), &o, &report.s));
      } else {
        if (kappa_path.empty()) throw CliError{kUsage, "check needs --kappa and --N, or --table"};
        const Params p = load_params(kappa_path, o);
        s = require(kraw_check(p.get(), N, suite.c_str(), &report.s));
      }
      g.emit(report.s);
      return exit_code(s);
    }

    if (*st) {
      const Params p = load_params(kappa_path, o);
      const kraw_operator which = op == "m"           ? KRAW_OPERATOR_M
                                  : op == "universal" ? KRAW_OPERATOR_UNIVERSAL
                                                      : KRAW_OPERATOR_MTILDE;
      OwnedString json;
      require(kraw_stencil_json(p.get(), N, which, index, &json.s));
      g.emit(json.s);
      return kOk;
    }
  } catch (const CliError& e) {
    std::cerr << "kraw: " << e.message << "\n";
    return e.code;
  }
  return kUsage;
}
