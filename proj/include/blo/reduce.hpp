#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <string>
#include <vector>

#include "blo/types.hpp"

namespace blo {

/// Runs fn(i) for i < count across threads. The exception raised at the
/// lowest index (if any) is rethrown after the loop.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct ArgMax {
  double value = 0.0;
  std::size_t index = 0;
};

/// Evaluates fn(i) into indexed slots, then scans them in order: the largest
/// value wins, ties go to the lowest index.
template <class Fn>
ArgMax parallel_argmax(std::size_t count, const char* op, Fn&& fn) {
  if (count == 0) throw DomainError(std::string(op) + ": nothing to maximise over");
  std::vector<double> slots(count);
  parallel_for(count, [&](std::size_t i) { slots[i] = fn(i); });
  ArgMax best{slots[0], 0};
  for (std::size_t i = 0; i < count; ++i) {
    if (std::isnan(slots[i])) throw NumericError(op, "NaN at index " + std::to_string(i));
    if (slots[i] > best.value) best = {slots[i], i};
  }
  return best;
}

}  // namespace blo
