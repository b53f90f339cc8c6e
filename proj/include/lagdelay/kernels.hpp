// Trial-level parallel execution and deterministic moment accumulation.
// Work is split into a fixed number of index chunks that are combined in
// chunk order, so results are bitwise identical for any thread count and
// for the serial reference path.
#pragma once

#include <lagdelay/types.hpp>

#include <exception>
#include <stdexcept>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lagdelay {

enum class ExecMode { Serial, Parallel };

namespace detail {

constexpr int kChunks = 64;

inline long chunk_begin(long n, int c) {
  return (n * c) / kChunks;
}

// Rethrows the first captured exception in chunk order so failure reporting
// does not depend on thread scheduling.
inline void rethrow_first(std::vector<std::exception_ptr>& errors) {
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace detail

/// Runs body(index) for index = 0..n-1. Iterations must be independent;
/// each writes only its own slot of any shared output.
template <typename Body>
void for_each_index(long n, ExecMode mode, Body&& body) {
  if (n < 0) {
    throw std::invalid_argument("for_each_index: negative count");
  }
  if (mode == ExecMode::Serial) {
    for (long i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(detail::kChunks);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < detail::kChunks; ++c) {
    try {
      const long end = detail::chunk_begin(n, c + 1);
      for (long i = detail::chunk_begin(n, c); i < end; ++i) {
        body(i);
      }
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  detail::rethrow_first(errors);
}

/// Streaming first and second moments of a vector-valued sample.
struct Moments {
  long count = 0;
  Vector sum;
  Matrix outer;  ///< sum of x x^T

  Vector mean() const;
  /// Unbiased sample covariance.
  Matrix covariance() const;
};

/// Accumulates moments of fill(i) over i = 0..n-1 without retaining the
/// samples. fill must write a dim-long vector and be safe to call
/// concurrently for distinct i.
template <typename Fill>
Moments accumulate_moments(long n, int dim, ExecMode mode, Fill&& fill) {
  if (n < 1 || dim < 1) {
    throw std::invalid_argument("accumulate_moments: empty sample");
  }
  std::vector<Moments> parts(detail::kChunks);

  auto run_chunk = [&](int c) {
    Moments& part = parts[c];
    part.sum = Vector::Zero(dim);
    part.outer = Matrix::Zero(dim, dim);
    Vector x(dim);
    const long end = detail::chunk_begin(n, c + 1);
    for (long i = detail::chunk_begin(n, c); i < end; ++i) {
      fill(i, x);
      part.sum += x;
      part.outer.selfadjointView<Eigen::Lower>().rankUpdate(x);
      ++part.count;
    }
  };

  if (mode == ExecMode::Serial) {
    for (int c = 0; c < detail::kChunks; ++c) {
      run_chunk(c);
    }
  } else {
    std::vector<std::exception_ptr> errors(detail::kChunks);
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < detail::kChunks; ++c) {
      try {
        run_chunk(c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
    detail::rethrow_first(errors);
  }

  Moments total;
  total.sum = Vector::Zero(dim);
  total.outer = Matrix::Zero(dim, dim);
  for (const Moments& part : parts) {
    total.count += part.count;
    total.sum += part.sum;
    total.outer += part.outer;
  }
  total.outer.triangularView<Eigen::Upper>() =
      total.outer.transpose().triangularView<Eigen::Upper>();
  return total;
}

}  // namespace lagdelay
