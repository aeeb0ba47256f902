#ifndef KRAW_SRC_IO_HPP
#define KRAW_SRC_IO_HPP

// JSON readers and writers for parameter sets, tables, check reports and
// stencils.  Writers use a fixed key order; readers throw ParseError on any
// shape mismatch.

#include "kraw/bispec.hpp"
#include "kraw/hyperg.hpp"
#include "kraw/kappa.hpp"
#include "kraw/report.hpp"

#include <json.hpp>

#include <vector>

namespace kraw::io {

using Json = nlohmann::ordered_json;

template <class T>
Json scalar(const T& x);

template <class T>
T scalar_from(const Json& j, const char* where);

template <class T>
Json params(const RawParameters<T>& raw);

template <class T>
Json params(const ParameterSet<T>& kappa) {
  return params(kappa.raw());
}

template <class T>
RawParameters<T> raw_params_from(const Json& j);

Json validation(const ValidationReport& report);

template <class T>
Json table(const PolynomialTable<T>& tab);

/// Reads and validates the embedded parameter set, then checks that the
/// values form a square array over the lattice.
template <class T>
PolynomialTable<T> table_from(const Json& j, double eps);

template <class T>
Json report(const CheckReport& r, const ParameterSet<T>& kappa, int N);

template <class T>
Json suite(const std::vector<CheckReport>& reports, const ParameterSet<T>& kappa, int N);

template <class T>
Json stencil(const DifferenceOperator<T>& op);

/// Parses text, turning library exceptions into ParseError.
Json parse(const std::string& text);

}  // namespace kraw::io

#endif  // KRAW_SRC_IO_HPP
