#pragma once

// Thin RAII wrappers over FFTW plans. Each object owns its buffers and plans,
// so one instance per run or per thread; only plan creation is serialized.

#include <complex>
#include <span>
#include <vector>

namespace wwbnf {

using cplx = std::complex<double>;

/// Real <-> half-complex transform of size M (unnormalized, FFTW sign convention).
class RealFft {
 public:
  explicit RealFft(int m);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;

  int size() const noexcept { return m_; }
  int half() const noexcept { return m_ / 2 + 1; }

  /// out[k] = sum_m in[m] e^{-2 pi i k m / M}, k = 0..M/2.
  void forward(std::span<const double> in, std::span<cplx> out);
  /// out[m] = sum_k in[k] e^{2 pi i k m / M} over the full Hermitian spectrum.
  void backward(std::span<const cplx> in, std::span<double> out);

 private:
  void release() noexcept;
  int m_ = 0;
  double* real_ = nullptr;
  void* spec_ = nullptr;
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

/// Complex <-> complex transform of size M (unnormalized).
class ComplexFft {
 public:
  explicit ComplexFft(int m);
  ~ComplexFft();
  ComplexFft(const ComplexFft&) = delete;
  ComplexFft& operator=(const ComplexFft&) = delete;

  int size() const noexcept { return m_; }
  void forward(std::span<const cplx> in, std::span<cplx> out);
  void backward(std::span<const cplx> in, std::span<cplx> out);

 private:
  int m_ = 0;
  void* in_ = nullptr;
  void* out_ = nullptr;
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

bool is_power_of_two(int m);

}  // namespace wwbnf
