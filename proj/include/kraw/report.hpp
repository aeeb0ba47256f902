#ifndef KRAW_REPORT_HPP
#define KRAW_REPORT_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace kraw {

/// Outcome of one verification pass.  Failures are human-readable and name
/// the offending indices; only the first kMaxFailures are kept.
struct CheckReport {
  static constexpr std::size_t kMaxFailures = 64;

  std::string check;
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::size_t failure_count = 0;
  double max_residual = 0.0;

  explicit CheckReport(std::string name = {}) : check(std::move(name)) {}

  void fail(std::string what) {
    pass = false;
    ++failure_count;
    if (failures.size() < kMaxFailures) failures.push_back(std::move(what));
  }

  void record(double residual) {
    if (residual > max_residual) max_residual = residual;
  }

  /// Folds another report's outcome into this one, prefixing its messages.
  void absorb(const CheckReport& other) {
    for (const auto& f : other.failures) fail(other.check + ": " + f);
    failure_count += other.failure_count - other.failures.size();
    for (const auto& n : other.notes) notes.push_back(other.check + ": " + n);
    record(other.max_residual);
    if (!other.pass) pass = false;
  }
};

}  // namespace kraw

#endif  // KRAW_REPORT_HPP
