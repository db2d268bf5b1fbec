#include "gowers/dft.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "gowers/summation.hpp"

namespace gowers {

BluesteinPlan::BluesteinPlan(std::uint64_t p) : n_(static_cast<std::size_t>(p)) {
    m_ = std::bit_ceil(2 * n_ - 1);
    const std::uint64_t two_p = 2 * p;
    chirp_.resize(n_);
    for (std::uint64_t k = 0; k < p; ++k) chirp_[k] = unit_root(mul_mod(k, k, two_p), two_p);

    twiddle_.resize(m_ / 2);
    for (std::size_t k = 0; k < m_ / 2; ++k) twiddle_[k] = std::conj(unit_root(k, m_));

    const int bits = std::countr_zero(m_);
    bitrev_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < bits; ++b) {
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
        }
        bitrev_[i] = r;
    }

    chirp_hat_.assign(m_, cplx{});
    chirp_hat_[0] = chirp_[0];
    for (std::size_t k = 1; k < n_; ++k) {
        chirp_hat_[k] = chirp_[k];
        chirp_hat_[m_ - k] = chirp_[k];
    }
    fft(chirp_hat_, false);
}

void BluesteinPlan::fft(std::vector<cplx>& a, bool inverse) const {
    for (std::size_t i = 0; i < m_; ++i) {
        if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
    }
    for (std::size_t len = 2; len <= m_; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = m_ / len;
        for (std::size_t start = 0; start < m_; start += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const cplx w = inverse ? std::conj(twiddle_[j * stride]) : twiddle_[j * stride];
                const cplx u = a[start + j];
                const cplx v = a[start + j + half] * w;
                a[start + j] = u + v;
                a[start + j + half] = u - v;
            }
        }
    }
}

void BluesteinPlan::forward(std::span<const cplx> in, std::span<cplx> out) const {
    std::vector<cplx> work(m_, cplx{});
    for (std::size_t k = 0; k < n_; ++k) work[k] = in[k] * std::conj(chirp_[k]);
    fft(work, false);
    for (std::size_t k = 0; k < m_; ++k) work[k] *= chirp_hat_[k];
    fft(work, true);
    const double scale = 1.0 / static_cast<double>(m_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = work[k] * scale * std::conj(chirp_[k]);
}

namespace {

void check_length(std::span<const cplx> v, const PrimeField& field) {
    if (v.size() != field.p()) {
        throw std::invalid_argument("dft: vector length " + std::to_string(v.size()) + " does not match p = " +
                                    std::to_string(field.p()));
    }
}

}  // namespace

ComplexVector dft(std::span<const cplx> v, const PrimeField& field) {
    check_length(v, field);
    ComplexVector out(v.size());
    field.dft_plan().forward(v, out);
    const double scale = 1.0 / static_cast<double>(field.p());
    for (cplx& z : out) z *= scale;
    return out;
}

ComplexVector dft_direct(std::span<const cplx> v, const PrimeField& field) {
    check_length(v, field);
    const std::uint64_t p = field.p();
    ComplexVector out(p);
    ComplexVector terms(p);
    for (std::uint64_t t = 0; t < p; ++t) {
        for (std::uint64_t x = 0; x < p; ++x) terms[x] = v[x] * std::conj(field.character(field.mul(x, t)));
        out[t] = pairwise_sum(std::span<const cplx>(terms)) / static_cast<double>(p);
    }
    return out;
}

ComplexVector idft(std::span<const cplx> v_hat, const PrimeField& field) {
    check_length(v_hat, field);
    ComplexVector conj_in(v_hat.size());
    for (std::size_t i = 0; i < v_hat.size(); ++i) conj_in[i] = std::conj(v_hat[i]);
    ComplexVector out(v_hat.size());
    field.dft_plan().forward(conj_in, out);
    for (cplx& z : out) z = std::conj(z);
    return out;
}

}  // namespace gowers
