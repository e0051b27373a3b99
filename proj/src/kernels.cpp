#include "simrs/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace simrs::kernels {

namespace {

constexpr double kParallelWork = 1 << 18;

void check_cascade_shapes(const CMatrix& q, const RMatrix& angles,
                          std::span<const CMatrix> inter_layer) {
  const auto layers = static_cast<std::size_t>(angles.rows());
  if (layers == 0) throw std::invalid_argument("cascade: no layers");
  if (inter_layer.size() + 1 != layers)
    throw std::invalid_argument("cascade: phase layers and inter-layer matrices disagree");
  if (q.cols() != angles.cols()) throw std::invalid_argument("cascade: Q columns != U");
  for (const auto& w : inter_layer)
    if (w.rows() != angles.cols() || w.cols() != angles.cols())
      throw std::invalid_argument("cascade: inter-layer matrix is not U x U");
}

// Column u of m times exp(j angles(layer, u)), with the complex product written out
// so it does not go through the inf/nan-checking library routine.
void apply_phases(CMatrix& m, const RMatrix& angles, Eigen::Index layer) {
  for (Eigen::Index u = 0; u < m.cols(); ++u) {
    const double c = std::cos(angles(layer, u)), s = std::sin(angles(layer, u));
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      const double re = m(k, u).real(), im = m(k, u).imag();
      m(k, u) = cplx(re * c - im * s, re * s + im * c);
    }
  }
}

}  // namespace

bool use_parallel(Exec exec, double work) {
  switch (exec) {
    case Exec::serial:
      return false;
    case Exec::parallel:
      return true;
    case Exec::automatic:
      return work >= kParallelWork && !omp_in_parallel() && omp_get_max_threads() > 1;
  }
  return false;
}

CMatrix cascade_reference(const CMatrix& q, const RMatrix& angles,
                          std::span<const CMatrix> inter_layer) {
  check_cascade_shapes(q, angles, inter_layer);
  const Eigen::Index k_rows = q.rows();
  const Eigen::Index u_dim = q.cols();
  CMatrix m = q;
  for (Eigen::Index l = angles.rows() - 1; l >= 0; --l) {
    for (Eigen::Index k = 0; k < k_rows; ++k)
      for (Eigen::Index u = 0; u < u_dim; ++u) m(k, u) *= std::polar(1.0, angles(l, u));
    if (l == 0) break;
    const CMatrix& w = inter_layer[static_cast<std::size_t>(l - 1)];
    CMatrix next = CMatrix::Zero(k_rows, u_dim);
    for (Eigen::Index k = 0; k < k_rows; ++k)
      for (Eigen::Index j = 0; j < u_dim; ++j) {
        cplx acc{0.0, 0.0};
        for (Eigen::Index u = 0; u < u_dim; ++u) acc += m(k, u) * w(u, j);
        next(k, j) = acc;
      }
    m = std::move(next);
  }
  return m;
}

CMatrix cascade(const CMatrix& q, const RMatrix& angles, std::span<const CMatrix> inter_layer,
                Exec exec) {
  check_cascade_shapes(q, angles, inter_layer);
  const Eigen::Index u_dim = q.cols();
  const double work = static_cast<double>(q.rows()) * static_cast<double>(u_dim) *
                      static_cast<double>(u_dim) * static_cast<double>(inter_layer.size());
  const bool par = use_parallel(exec, work);

  CMatrix m = q;
  CMatrix next(q.rows(), u_dim);
  for (Eigen::Index l = angles.rows() - 1; l >= 0; --l) {
    apply_phases(m, angles, l);
    if (l == 0) break;
    const CMatrix& w = inter_layer[static_cast<std::size_t>(l - 1)];
    if (par) {
#pragma omp parallel
      {
        const int nth = omp_get_num_threads();
        const int tid = omp_get_thread_num();
        const Eigen::Index chunk = (u_dim + nth - 1) / nth;
        const Eigen::Index begin = std::min<Eigen::Index>(u_dim, tid * chunk);
        const Eigen::Index count = std::min<Eigen::Index>(u_dim - begin, chunk);
        if (count > 0) next.middleCols(begin, count).noalias() = m * w.middleCols(begin, count);
      }
    } else {
      next.noalias() = m * w;
    }
    m.swap(next);
  }
  return m;
}

CMatrix fill_reference(std::size_t rows, std::size_t cols, const CoefficientFn& fn) {
  CMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = fn(r, c);
  return out;
}

CMatrix fill(std::size_t rows, std::size_t cols, const CoefficientFn& fn, Exec exec) {
  const auto total = static_cast<std::int64_t>(rows * cols);
  if (!use_parallel(exec, 32.0 * static_cast<double>(total))) return fill_reference(rows, cols, fn);
  CMatrix out(rows, cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto c = static_cast<std::size_t>(i) / rows;
    const auto r = static_cast<std::size_t>(i) % rows;
    out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = fn(r, c);
  }
  return out;
}

RMatrix stream_gains(const CMatrix& end_to_end) { return end_to_end.cwiseAbs2(); }

}  // namespace simrs::kernels
