#include "nlfront/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>

#include "nlfront/errors.hpp"

namespace nlfront::conv {

namespace {
// FFTW's planner mutates global state; serialize plan creation/destruction.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}
}  // namespace

namespace detail {
struct FftwState {
    std::size_t P = 0;
    double* real = nullptr;          // length P
    fftw_complex* freq = nullptr;    // length P/2 + 1
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    void reset(std::size_t new_P) {
        if (new_P == P) return;
        release();
        std::lock_guard<std::mutex> lock(planner_mutex());
        P = new_P;
        real = fftw_alloc_real(P);
        freq = fftw_alloc_complex(P / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(P), real, freq, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(P), freq, real, FFTW_ESTIMATE);
        if (!fwd || !bwd) throw SolverAbort("FFTW plan creation failed");
    }

    void release() {
        if (P == 0) return;
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(freq);
        P = 0;
        real = nullptr;
        freq = nullptr;
        fwd = nullptr;
        bwd = nullptr;
    }

    ~FftwState() { release(); }
};
}  // namespace detail

Backend backend_from_name(const std::string& name) {
    if (name == "auto") return Backend::automatic;
    if (name == "direct") return Backend::direct;
    if (name == "banded") return Backend::banded;
    if (name == "fft") return Backend::fft;
    throw ValidationError("convolution.backend: unknown backend '" + name +
                          "' (expected auto, direct, banded or fft)");
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::automatic: return "auto";
        case Backend::direct: return "direct";
        case Backend::banded: return "banded";
        case Backend::fft: return "fft";
    }
    return "auto";
}

GridConvolver::GridConvolver(kernels::Kernel kernel, double dx, Backend backend)
    : kernel_(std::move(kernel)), dx_(dx), backend_(backend) {
    if (!(dx > 0.0) || !std::isfinite(dx))
        throw ValidationError("convolution: dx must be positive and finite");
    if (kernel_.compact_support())
        band_ = static_cast<std::size_t>(std::ceil(kernel_.support_radius() / dx_));
    if (backend_ == Backend::banded && !kernel_.compact_support())
        throw ValidationError(
            "convolution.backend: banded requires a compactly supported kernel");
}

GridConvolver::~GridConvolver() = default;
GridConvolver::GridConvolver(GridConvolver&&) noexcept = default;
GridConvolver& GridConvolver::operator=(GridConvolver&&) noexcept = default;

Backend GridConvolver::effective_backend(std::size_t n) const {
    if (backend_ != Backend::automatic) return backend_;
    if (kernel_.compact_support()) return Backend::banded;
    return n <= 1024 ? Backend::direct : Backend::fft;
}

void GridConvolver::ensure_row(std::size_t upto) {
    while (row_.size() < upto) row_.push_back(kernel_(static_cast<double>(row_.size()) * dx_));
}

// Distance-major accumulation. For each offset d the two mirror neighbors are
// combined *before* the multiply, so that reversing w reverses out bit for bit
// (every partial sum sees the same operands in the same order).
void GridConvolver::apply_dense(const std::vector<double>& w, std::vector<double>& out,
                                std::size_t band) const {
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = row_[0] * w[i];
    for (std::size_t d = 1; d <= band; ++d) {
        const double K = row_[d];
        if (K == 0.0) continue;
        const std::size_t mid_end = n > d ? n - d : 0;
        for (std::size_t i = d; i < mid_end; ++i) out[i] += K * (w[i - d] + w[i + d]);
        // one-sided fringes: i < d has no left neighbor, i >= n-d no right one
        const std::size_t left_end = std::min(d, mid_end);
        for (std::size_t i = 0; i < left_end; ++i) out[i] += K * w[i + d];
        for (std::size_t i = std::max(d, mid_end); i < n; ++i) out[i] += K * w[i - d];
    }
}

void GridConvolver::apply_fft(const std::vector<double>& w, std::vector<double>& out) {
    const std::size_t n = w.size();
    const std::size_t P = next_pow2(std::max<std::size_t>(2 * n, 16));
    if (!fftw_) fftw_ = std::make_unique<detail::FftwState>();
    fftw_->reset(P);

    // kernel spectrum for this padded size, computed once and reused
    auto it = spectra_.find(P);
    if (it == spectra_.end()) {
        ensure_row(P / 2 + 1);
        for (std::size_t p = 0; p <= P / 2; ++p) fftw_->real[p] = row_[p];
        for (std::size_t p = P / 2 + 1; p < P; ++p) fftw_->real[p] = row_[P - p];
        fftw_execute(fftw_->fwd);
        std::vector<double> packed(2 * (P / 2 + 1));
        for (std::size_t k = 0; k <= P / 2; ++k) {
            packed[2 * k] = fftw_->freq[k][0];
            packed[2 * k + 1] = fftw_->freq[k][1];
        }
        it = spectra_.emplace(P, std::move(packed)).first;
    }
    const std::vector<double>& spec = it->second;

    std::memcpy(fftw_->real, w.data(), n * sizeof(double));
    std::memset(fftw_->real + n, 0, (P - n) * sizeof(double));
    fftw_execute(fftw_->fwd);
    const double scale = 1.0 / static_cast<double>(P);
    for (std::size_t k = 0; k <= P / 2; ++k) {
        const double wr = fftw_->freq[k][0], wi = fftw_->freq[k][1];
        const double kr = spec[2 * k], ki = spec[2 * k + 1];
        fftw_->freq[k][0] = scale * (wr * kr - wi * ki);
        fftw_->freq[k][1] = scale * (wr * ki + wi * kr);
    }
    fftw_execute(fftw_->bwd);
    std::memcpy(out.data(), fftw_->real, n * sizeof(double));
}

void GridConvolver::apply(const std::vector<double>& w, std::vector<double>& out) {
    const std::size_t n = w.size();
    out.resize(n);
    if (n == 0) return;
    switch (effective_backend(n)) {
        case Backend::banded:
            ensure_row(std::min(band_, n - 1) + 1);
            apply_dense(w, out, std::min(band_, n - 1));
            break;
        case Backend::fft:
            apply_fft(w, out);
            break;
        default:
            ensure_row(n);
            apply_dense(w, out, n - 1);
            break;
    }
}

}  // namespace nlfront::conv
