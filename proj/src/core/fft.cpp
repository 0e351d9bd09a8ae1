#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <utility>

#include "error.hpp"

namespace wwbnf {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

RealFft::RealFft(int m) : m_(m) {
  require(m >= 2 && m % 2 == 0, "real FFT size must be even");
  real_ = fftw_alloc_real(static_cast<std::size_t>(m));
  auto* spec = fftw_alloc_complex(static_cast<std::size_t>(half()));
  spec_ = spec;
  std::lock_guard lock(planner_mutex());
  fwd_ = fftw_plan_dft_r2c_1d(m, real_, spec, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_c2r_1d(m, spec, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() { release(); }

RealFft::RealFft(RealFft&& o) noexcept
    : m_(std::exchange(o.m_, 0)),
      real_(std::exchange(o.real_, nullptr)),
      spec_(std::exchange(o.spec_, nullptr)),
      fwd_(std::exchange(o.fwd_, nullptr)),
      bwd_(std::exchange(o.bwd_, nullptr)) {}

RealFft& RealFft::operator=(RealFft&& o) noexcept {
  if (this != &o) {
    release();
    m_ = std::exchange(o.m_, 0);
    real_ = std::exchange(o.real_, nullptr);
    spec_ = std::exchange(o.spec_, nullptr);
    fwd_ = std::exchange(o.fwd_, nullptr);
    bwd_ = std::exchange(o.bwd_, nullptr);
  }
  return *this;
}

void RealFft::release() noexcept {
  std::lock_guard lock(planner_mutex());
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  if (real_) fftw_free(real_);
  if (spec_) fftw_free(spec_);
  fwd_ = bwd_ = nullptr;
  real_ = nullptr;
  spec_ = nullptr;
}

void RealFft::forward(std::span<const double> in, std::span<cplx> out) {
  std::copy(in.begin(), in.begin() + m_, real_);
  fftw_execute(static_cast<fftw_plan>(fwd_));
  std::memcpy(out.data(), spec_, sizeof(cplx) * static_cast<std::size_t>(half()));
}

void RealFft::backward(std::span<const cplx> in, std::span<double> out) {
  // c2r destroys its input, so it always runs on the private buffer.
  std::memcpy(spec_, in.data(), sizeof(cplx) * static_cast<std::size_t>(half()));
  fftw_execute(static_cast<fftw_plan>(bwd_));
  std::copy(real_, real_ + m_, out.begin());
}

ComplexFft::ComplexFft(int m) : m_(m) {
  require(m >= 1, "complex FFT size must be positive");
  auto* in = fftw_alloc_complex(static_cast<std::size_t>(m));
  auto* out = fftw_alloc_complex(static_cast<std::size_t>(m));
  in_ = in;
  out_ = out;
  std::lock_guard lock(planner_mutex());
  fwd_ = fftw_plan_dft_1d(m, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_1d(m, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
}

ComplexFft::~ComplexFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  fftw_free(in_);
  fftw_free(out_);
}

void ComplexFft::forward(std::span<const cplx> in, std::span<cplx> out) {
  std::memcpy(in_, in.data(), sizeof(cplx) * static_cast<std::size_t>(m_));
  fftw_execute(static_cast<fftw_plan>(fwd_));
  std::memcpy(out.data(), out_, sizeof(cplx) * static_cast<std::size_t>(m_));
}

void ComplexFft::backward(std::span<const cplx> in, std::span<cplx> out) {
  std::memcpy(in_, in.data(), sizeof(cplx) * static_cast<std::size_t>(m_));
  fftw_execute(static_cast<fftw_plan>(bwd_));
  std::memcpy(out.data(), out_, sizeof(cplx) * static_cast<std::size_t>(m_));
}

}  // namespace wwbnf
