#pragma once

#include <map>
#include <string>
#include <vector>

#include "gefp/scalar.hpp"

namespace gefp {

/// A computed quantity plus enough context to reproduce it.
template <Scalar S>
struct CorrelationResult {
  S value;
  std::string quantity;  // "gefp", "partition", "H", ...
  std::string engine;
  std::string backend = backend_name<S>();
  int n = 0;
  std::vector<int> r;
  std::map<std::string, std::string> parameters;
  unsigned precision_bits = 0;  // 0 for the exact backend
};

template <Scalar S>
CorrelationResult<S> make_result(S value, std::string quantity, std::string engine, int n,
                                 std::vector<int> r = {}) {
  CorrelationResult<S> res;
  res.value = std::move(value);
  res.quantity = std::move(quantity);
  res.engine = std::move(engine);
  res.n = n;
  res.r = std::move(r);
  if constexpr (!is_exact_v<S>) res.precision_bits = working_precision_bits();
  return res;
}

}  // namespace gefp
