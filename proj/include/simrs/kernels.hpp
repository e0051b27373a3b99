#pragma once

#include <functional>
#include <span>

#include "simrs/types.hpp"

// Hot loops of the simulator. Each kernel has a plain serial reference
// (naive loops, kept for tests and the benchmark baseline) and an optimized
// version that splits work across OpenMP threads.
namespace simrs::kernels {

enum class Exec {
  serial,     // optimized code, one thread
  parallel,   // optimized code, OpenMP team
  automatic,  // parallel only for large problems outside an existing parallel region
};

// True when `exec` resolves to a parallel launch for `work` complex MACs.
bool use_parallel(Exec exec, double work);

// Cascade M <- Q; for l = L..1: M <- M diag(exp(j theta_l)); if l > 1: M <- M W_l.
// `angles` is L x U; `inter_layer[i]` holds W_{i+2}.
CMatrix cascade_reference(const CMatrix& q, const RMatrix& angles,
                          std::span<const CMatrix> inter_layer);
CMatrix cascade(const CMatrix& q, const RMatrix& angles, std::span<const CMatrix> inter_layer,
                Exec exec);

using CoefficientFn = std::function<cplx(std::size_t row, std::size_t col)>;

// rows x cols matrix filled entry by entry from `fn`.
CMatrix fill_reference(std::size_t rows, std::size_t cols, const CoefficientFn& fn);
CMatrix fill(std::size_t rows, std::size_t cols, const CoefficientFn& fn, Exec exec);

// Per-stream received powers |H_eff(k, i)|^2.
RMatrix stream_gains(const CMatrix& end_to_end);

}  // namespace simrs::kernels
