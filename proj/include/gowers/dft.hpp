#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gowers/modp.hpp"

namespace gowers {

/// Chirp-z (Bluestein) embedding of a length-p DFT into a power-of-two
/// cyclic convolution. Built once per field.
class BluesteinPlan {
public:
    explicit BluesteinPlan(std::uint64_t p);

    std::size_t length() const noexcept { return n_; }
    std::size_t fft_length() const noexcept { return m_; }

    /// Unnormalized forward transform X(k) = sum_n x(n) exp(-2 pi i n k / p).
    void forward(std::span<const cplx> in, std::span<cplx> out) const;

private:
    void fft(std::vector<cplx>& a, bool inverse) const;

    std::size_t n_;
    std::size_t m_;
    std::vector<cplx> chirp_;        // exp(i pi n^2 / p), n < p
    std::vector<cplx> chirp_hat_;    // FFT of the wrapped chirp filter
    std::vector<cplx> twiddle_;      // exp(-2 pi i k / m), k < m/2
    std::vector<std::size_t> bitrev_;
};

/// v_hat(t) = (1/p) sum_x v(x) e(-x t / p), O(p log p).
/// Throws std::invalid_argument on length mismatch.
ComplexVector dft(std::span<const cplx> v, const PrimeField& field);

/// Same transform by the O(p^2) definition, using the field's character table.
ComplexVector dft_direct(std::span<const cplx> v, const PrimeField& field);

/// v(x) = sum_t v_hat(t) e(x t / p); inverse of dft.
ComplexVector idft(std::span<const cplx> v_hat, const PrimeField& field);

}  // namespace gowers
