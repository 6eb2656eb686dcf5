// Discrete convolution against a kernel sampled on a uniform grid.
//
// Everything here computes the Toeplitz product
//
//     out_i = sum_j row[|i-j|] w_j,      row[d] = J(d * dx),
//
// where w already carries quadrature weights, so the result approximates
// int J(x_i - y) u(y) dy. Three interchangeable backends:
//
//   direct  distance-major O(n^2) summation; neighbor pairs are added before
//           multiplying, which makes mirror-symmetric inputs produce
//           bit-exactly mirror-symmetric outputs
//   banded  the same loop truncated at the kernel support (exact, and
//           bit-identical to direct, for compactly supported kernels)
//   fft     circulant embedding of the Toeplitz matrix, FFTW under the hood;
//           O(n log n), with roundoff at the 1e-13 level instead of exactness
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include "nlfront/kernels.hpp"

namespace nlfront::conv {

enum class Backend { automatic, direct, banded, fft };

Backend backend_from_name(const std::string& name);  // throws ValidationError
std::string backend_name(Backend b);

namespace detail {
// FFTW state for one padded size P: cached kernel spectra are handled by the
// GridConvolver; this owns the buffers and plans.
struct FftwState;
}

class GridConvolver {
public:
    GridConvolver(kernels::Kernel kernel, double dx, Backend backend = Backend::automatic);
    ~GridConvolver();
    GridConvolver(GridConvolver&&) noexcept;
    GridConvolver& operator=(GridConvolver&&) noexcept;
    GridConvolver(const GridConvolver&) = delete;
    GridConvolver& operator=(const GridConvolver&) = delete;

    // out is resized to w.size()
    void apply(const std::vector<double>& w, std::vector<double>& out);

    // the backend that would run for a problem of size n
    Backend effective_backend(std::size_t n) const;

    const kernels::Kernel& kernel() const { return kernel_; }
    double dx() const { return dx_; }

private:
    void ensure_row(std::size_t upto);
    void apply_dense(const std::vector<double>& w, std::vector<double>& out,
                     std::size_t band) const;
    void apply_fft(const std::vector<double>& w, std::vector<double>& out);

    kernels::Kernel kernel_;
    double dx_ = 0.0;
    Backend backend_ = Backend::automatic;
    std::size_t band_ = 0;  // row cutoff for compact kernels (row is 0 beyond)
    std::vector<double> row_;
    std::unique_ptr<detail::FftwState> fftw_;
    std::map<std::size_t, std::vector<double>> spectra_;  // P -> packed r2c spectrum
};

}  // namespace nlfront::conv
