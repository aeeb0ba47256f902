#include "kraw/numeric.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <thread>

namespace kraw {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  const bool negative = s[0] == '-';
  if (s[0] == '+' || s[0] == '-') s.remove_prefix(1);
  // Leading zeros would select octal in the string constructor.
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  const Integer magnitude(std::string{s});
  return negative ? Integer(-magnitude) : magnitude;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
      negative = whole[0] == '-';
      whole.remove_prefix(1);
    }
    if (whole.empty() && frac.empty()) throw ParseError("malformed decimal '" + std::string(text) + "'");
    const std::string digits = std::string(whole) + std::string(frac);
    if (!is_integer_literal(digits)) throw ParseError("malformed decimal '" + std::string(text) + "'");
    Integer den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational value(parse_integer(digits), den);
    return negative ? Rational(-value) : value;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& x) {
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

double parse_double(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("malformed number '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");
  if (text.back() != 'i') {
    if (text.find_first_of("eE") == std::string_view::npos) {
      try {
        return {static_cast<double>(parse_rational(text)), 0.0};
      } catch (const ParseError&) {
      }
    }
    return {parse_double(text, whole), 0.0};
  }
  text.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = text.size(); k-- > 1;)
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string_view::npos) return {0.0, parse_double(text, whole)};
  return {parse_double(text.substr(0, split), whole), parse_double(text.substr(split), whole)};
}

std::string to_string(const Complex& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x.real());
  std::string out = buf;
  if (x.imag() != 0.0) {
    std::snprintf(buf, sizeof buf, "%+.17gi", x.imag());
    out += buf;
  }
  return out;
}

Integer factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int MultiIndex::degree() const {
  int s = 0;
  for (int v : parts) s += v;
  return s;
}

MultiIndex unprime(std::span<const int> m, int N) {
  MultiIndex lambda;
  lambda.parts.reserve(m.size() + 1);
  int rest = N;
  for (int v : m) rest -= v;
  lambda.parts.push_back(rest);
  lambda.parts.insert(lambda.parts.end(), m.begin(), m.end());
  return lambda;
}

std::string to_string(const MultiIndex& lambda) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < lambda.parts.size(); ++i) {
    if (i) os << ',';
    os << lambda.parts[i];
  }
  os << ')';
  return os.str();
}

Integer multi_factorial(const MultiIndex& lambda) {
  Integer f = 1;
  for (int v : lambda.parts) f *= factorial(v);
  return f;
}

Integer multinomial(int N, const MultiIndex& lambda) {
  for (int v : lambda.parts)
    if (v < 0) throw DomainError("multinomial: negative part in " + to_string(lambda));
  if (lambda.degree() != N)
    throw DomainError("multinomial: |" + to_string(lambda) + "| != " + std::to_string(N));
  return factorial(N) / multi_factorial(lambda);
}

namespace {

void lattice_rec(int remaining, std::size_t pos, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(MultiIndex{cur});
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    lattice_rec(remaining - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_lattice(int d, int N) {
  if (d < 1) throw DomainError("enumerate_lattice: d must be positive");
  if (N < 0) throw DomainError("enumerate_lattice: N must be nonnegative");
  std::vector<MultiIndex> out;
  out.reserve(binomial(N + d, d));
  std::vector<int> cur(static_cast<std::size_t>(d + 1), 0);
  lattice_rec(N, 0, cur, out);
  return out;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

SimplexLattice::SimplexLattice(int d, int N) : d_(d), N_(N), points_(enumerate_lattice(d, N)) {
  for (std::size_t r = 0; r < points_.size(); ++r) primed_rank_.emplace(points_[r].primed(), r);
}

std::size_t SimplexLattice::rank(const MultiIndex& lambda) const {
  if (lambda.size() != static_cast<std::size_t>(d_ + 1) || lambda.degree() != N_) return size();
  return rank_primed(std::span<const int>(lambda.parts).subspan(1));
}

std::size_t SimplexLattice::rank_primed(std::span<const int> m) const {
  const auto it = primed_rank_.find(std::vector<int>(m.begin(), m.end()));
  return it == primed_rank_.end() ? size() : it->second;
}

KernelMatrix::KernelMatrix(int d)
    : d_(d),
      entries_(static_cast<std::size_t>(d * d), 0),
      row_sums_(static_cast<std::size_t>(d), 0),
      col_sums_(static_cast<std::size_t>(d), 0) {}

void KernelMatrix::set(int i, int j, int value) {
  int& slot = entries_[static_cast<std::size_t>(i * d_ + j)];
  const int delta = value - slot;
  slot = value;
  row_sums_[static_cast<std::size_t>(i)] += delta;
  col_sums_[static_cast<std::size_t>(j)] += delta;
  total_ += delta;
}

namespace {

struct KernelWalker {
  int d;
  std::vector<int> row_left;
  std::vector<int> col_left;
  int total_left;
  KernelMatrix current;
  const std::function<void(const KernelMatrix&)>& visit;

  void step(int pos) {
    if (pos == d * d) {
      visit(current);
      return;
    }
    const int i = pos / d;
    const int j = pos % d;
    const auto ui = static_cast<std::size_t>(i);
    const auto uj = static_cast<std::size_t>(j);
    const int cap = std::min({row_left[ui], col_left[uj], total_left});
    for (int a = 0; a <= cap; ++a) {
      current.set(i, j, a);
      row_left[ui] -= a;
      col_left[uj] -= a;
      total_left -= a;
      step(pos + 1);
      row_left[ui] += a;
      col_left[uj] += a;
      total_left += a;
    }
    current.set(i, j, 0);
  }
};

}  // namespace

void for_each_kernel(int d, int N, std::span<const int> row_caps, std::span<const int> col_caps,
                     const std::function<void(const KernelMatrix&)>& visit) {
  if (d < 1) throw DomainError("enumerate_kernels: d must be positive");
  if (row_caps.size() != static_cast<std::size_t>(d) || col_caps.size() != static_cast<std::size_t>(d))
    throw DomainError("enumerate_kernels: caps must have d entries");
  for (int c : row_caps)
    if (c < 0) throw DomainError("enumerate_kernels: negative row cap");
  for (int c : col_caps)
    if (c < 0) throw DomainError("enumerate_kernels: negative column cap");
  if (N < 0) throw DomainError("enumerate_kernels: negative N");

  KernelWalker walker{d,
                      {row_caps.begin(), row_caps.end()},
                      {col_caps.begin(), col_caps.end()},
                      N,
                      KernelMatrix(d),
                      visit};
  walker.step(0);
}

std::vector<KernelMatrix> enumerate_kernels(int d, int N, std::span<const int> row_caps,
                                            std::span<const int> col_caps) {
  std::vector<KernelMatrix> out;
  for_each_kernel(d, N, row_caps, col_caps, [&](const KernelMatrix& a) { out.push_back(a); });
  return out;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace kraw
